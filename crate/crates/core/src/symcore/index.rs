//! Index quadruples and the antisymmetric pair-slot bases.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Dimension used by every Petrov-facing feature.
pub const DIM: usize = 4;

/// Letters for indices 0..4 in rendered output (`i k l m`).
pub const INDEX_LETTERS: [char; 4] = ['i', 'k', 'l', 'm'];

/// A single tensor index, validated against its dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TensorIndex {
    value: usize,
    dim: usize,
}

impl TensorIndex {
    pub fn new(value: usize, dim: usize) -> Option<Self> {
        (value < dim).then_some(Self { value, dim })
    }

    pub fn value(self) -> usize {
        self.value
    }

    pub fn dim(self) -> usize {
        self.dim
    }

    pub fn from_letter(c: char) -> Option<Self> {
        INDEX_LETTERS
            .iter()
            .position(|&l| l == c)
            .map(|value| Self { value, dim: DIM })
    }
}

/// Ordered 4-tuple of indices. Repeats are allowed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IndexQuad(pub [usize; 4]);

impl IndexQuad {
    pub const fn new(a: usize, b: usize, c: usize, d: usize) -> Self {
        Self([a, b, c, d])
    }

    pub fn in_range(&self, n: usize) -> bool {
        self.0.iter().all(|&i| i < n)
    }

    /// True when either antisymmetric pair repeats an index.
    pub fn is_degenerate(&self) -> bool {
        let [a, b, c, d] = self.0;
        a == b || c == d
    }

    pub fn swap_first(self) -> Self {
        let [a, b, c, d] = self.0;
        Self([b, a, c, d])
    }

    pub fn swap_second(self) -> Self {
        let [a, b, c, d] = self.0;
        Self([a, b, d, c])
    }

    pub fn swap_blocks(self) -> Self {
        let [a, b, c, d] = self.0;
        Self([c, d, a, b])
    }

    /// The three quads of the cyclic sum over the last three slots:
    /// `(a,b,c,d)`, `(a,c,d,b)`, `(a,d,b,c)`.
    pub fn cyclic_triple(self) -> [Self; 3] {
        let [a, b, c, d] = self.0;
        [Self([a, b, c, d]), Self([a, c, d, b]), Self([a, d, b, c])]
    }

    /// Every quad in `0..n`, lexicographic.
    pub fn all(n: usize) -> impl Iterator<Item = Self> {
        (0..n * n * n * n).map(move |k| Self([k / (n * n * n), (k / (n * n)) % n, (k / n) % n, k % n]))
    }
}

impl fmt::Display for IndexQuad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.0;
        write!(f, "{a}{b}{c}{d}")
    }
}

/// Ordering of the antisymmetric index pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PairBasis {
    /// `01 02 03 12 13 23` (and lexicographic pairs for any `n`).
    #[default]
    Lex,
    /// `01 02 03 23 31 12`, only defined for `n == 4`.
    Duad,
}

const DUAD_PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (2, 3), (3, 1), (1, 2)];

impl PairBasis {
    /// Oriented pairs of this basis, in slot order.
    pub fn pairs(self, n: usize) -> Vec<(usize, usize)> {
        match self {
            PairBasis::Lex => (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect(),
            PairBasis::Duad => {
                assert_eq!(n, DIM, "duad basis is only defined in four dimensions");
                DUAD_PAIRS.to_vec()
            }
        }
    }
}

/// Position of an ordered index pair within a pair basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PairSlot {
    pub slot: usize,
    pub sign: i8,
    pub basis: PairBasis,
}

impl PairSlot {
    /// Slot of `(a, b)` in dimension `n`; `None` for the degenerate `a == b`.
    pub fn lookup(a: usize, b: usize, n: usize, basis: PairBasis) -> Option<Self> {
        if a == b {
            return None;
        }
        debug_assert!(a < n && b < n);
        match basis {
            PairBasis::Lex => {
                let (lo, hi, sign) = if a < b { (a, b, 1) } else { (b, a, -1) };
                // pairs starting below `lo` come first
                let before = lo * (2 * n - lo - 1) / 2;
                Some(Self {
                    slot: before + (hi - lo - 1),
                    sign,
                    basis,
                })
            }
            PairBasis::Duad => DUAD_PAIRS.iter().enumerate().find_map(|(slot, &(p, q))| {
                if (p, q) == (a, b) {
                    Some(Self { slot, sign: 1, basis })
                } else if (q, p) == (a, b) {
                    Some(Self { slot, sign: -1, basis })
                } else {
                    None
                }
            }),
        }
    }
}

/// Four-dimensional slot lookup.
pub fn pair_slot(a: usize, b: usize, basis: PairBasis) -> Option<PairSlot> {
    PairSlot::lookup(a, b, DIM, basis)
}

/// Number of independent antisymmetric pairs, `n(n-1)/2`.
pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}
