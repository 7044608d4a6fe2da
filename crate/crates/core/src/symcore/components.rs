//! Pair-slot storage of a curvature-type tensor.
//!
//! A tensor with the two pair antisymmetries and block symmetry is fully
//! described by a symmetric `P x P` matrix over the lexicographic pair slots,
//! `P = n(n-1)/2`. Every raw component `R_abcd` is read back through the slot
//! signs of `(a,b)` and `(c,d)`.

use std::sync::OnceLock;

use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::index::{pair_count, IndexQuad, PairBasis, PairSlot, DIM};
use super::SymError;
use crate::exact::RationalMatrix;

/// Default absolute tolerance for duplicate entries on ingestion.
pub const DEFAULT_INGEST_TOL: f64 = 1e-12;

/// Frame metric `diag(-1, +1, +1, +1)` used for raising indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct FrameMetric;

impl FrameMetric {
    /// Diagonal entry `eta^{aa}` (equal to `eta_{aa}`).
    pub fn eta(self, a: usize) -> f64 {
        if a == 0 {
            -1.0
        } else {
            1.0
        }
    }

    /// Factor picked up when raising both indices of the pair `(a, b)`.
    pub fn pair_factor(self, a: usize, b: usize) -> f64 {
        self.eta(a) * self.eta(b)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RiemannComponents {
    n: usize,
    /// Symmetric `P x P`, row-major, lexicographic pair slots.
    m: Vec<f64>,
    bianchi_enforced: bool,
}

impl RiemannComponents {
    pub fn zero(n: usize) -> Self {
        let p = pair_count(n);
        Self {
            n,
            m: vec![0.0; p * p],
            bianchi_enforced: true,
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn pairs(&self) -> usize {
        pair_count(self.n)
    }

    pub fn is_bianchi_enforced(&self) -> bool {
        self.bianchi_enforced
    }

    /// Slot-matrix entry in the lexicographic basis.
    pub fn slot_entry(&self, i: usize, j: usize) -> f64 {
        self.m[i * self.pairs() + j]
    }

    fn set_slot(&mut self, i: usize, j: usize, v: f64) {
        let p = self.pairs();
        self.m[i * p + j] = v;
        self.m[j * p + i] = v;
    }

    /// Upper-triangle slot entries `(I, J)`, `I <= J`, row-major.
    pub fn upper_entries(&self) -> Vec<f64> {
        let p = self.pairs();
        (0..p)
            .flat_map(|i| (i..p).map(move |j| (i, j)))
            .map(|(i, j)| self.slot_entry(i, j))
            .collect()
    }

    pub fn from_upper_entries(n: usize, upper: &[f64]) -> Self {
        let mut r = Self::zero(n);
        let p = r.pairs();
        assert_eq!(upper.len(), p * (p + 1) / 2, "wrong number of upper entries");
        let mut it = upper.iter();
        for i in 0..p {
            for j in i..p {
                r.set_slot(i, j, *it.next().unwrap());
            }
        }
        r.bianchi_enforced = r.bianchi_residual() == 0.0;
        r
    }

    /// Writes one component and its symmetry mates. Panics on a degenerate quad.
    pub fn with_component(mut self, q: IndexQuad, value: f64) -> Self {
        let [a, b, c, d] = q.0;
        let s1 = PairSlot::lookup(a, b, self.n, PairBasis::Lex).expect("degenerate first pair");
        let s2 = PairSlot::lookup(c, d, self.n, PairBasis::Lex).expect("degenerate second pair");
        let sign = f64::from(s1.sign * s2.sign);
        self.set_slot(s1.slot, s2.slot, sign * value);
        self.bianchi_enforced = self.bianchi_residual() == 0.0;
        self
    }

    /// Builds the store from raw components. Unlisted components are zero.
    pub fn from_component_list(n: usize, entries: &[(IndexQuad, f64)], tol: f64) -> Result<Self, SymError> {
        let mut r = Self::zero(n);
        let p = r.pairs();
        let mut written = vec![false; p * p];
        for &(q, value) in entries {
            if !q.in_range(n) {
                return Err(SymError::IndexOutOfRange { quad: q, n });
            }
            if !value.is_finite() {
                return Err(SymError::NonFinite { quad: q });
            }
            let [a, b, c, d] = q.0;
            let (Some(s1), Some(s2)) = (
                PairSlot::lookup(a, b, n, PairBasis::Lex),
                PairSlot::lookup(c, d, n, PairBasis::Lex),
            ) else {
                if value != 0.0 {
                    return Err(SymError::DegenerateNonzero { quad: q, value });
                }
                continue;
            };
            let v = f64::from(s1.sign * s2.sign) * value;
            let (i, j) = (s1.slot.min(s2.slot), s1.slot.max(s2.slot));
            if written[i * p + j] {
                let existing = r.slot_entry(i, j);
                if (existing - v).abs() > tol {
                    return Err(SymError::ConflictingEntry {
                        quad: q,
                        existing,
                        incoming: v,
                    });
                }
            } else {
                written[i * p + j] = true;
                r.set_slot(i, j, v);
            }
        }
        r.bianchi_enforced = r.bianchi_residual() == 0.0;
        Ok(r)
    }

    /// Every nonzero raw component, lexicographic by quad.
    pub fn to_component_list(&self) -> Vec<(IndexQuad, f64)> {
        IndexQuad::all(self.n)
            .map(|q| (q, self.get(q)))
            .filter(|&(_, v)| v != 0.0)
            .collect()
    }

    /// `R_abcd`, zero exactly when a pair repeats an index.
    pub fn get(&self, q: IndexQuad) -> f64 {
        let [a, b, c, d] = q.0;
        match (
            PairSlot::lookup(a, b, self.n, PairBasis::Lex),
            PairSlot::lookup(c, d, self.n, PairBasis::Lex),
        ) {
            (Some(s1), Some(s2)) => f64::from(s1.sign * s2.sign) * self.slot_entry(s1.slot, s2.slot),
            _ => 0.0,
        }
    }

    /// `R_abcd + R_acdb + R_adbc`.
    pub fn cyclic_sum(&self, q: IndexQuad) -> f64 {
        q.cyclic_triple().iter().map(|&t| self.get(t)).sum()
    }

    /// `(R_abcd - R_abdc) / 2`.
    pub fn antisym_pair(&self, q: IndexQuad) -> f64 {
        0.5 * (self.get(q) - self.get(q.swap_second()))
    }

    /// Cyclic symmetrization over the last three indices, `cyclic_sum / 3!`.
    pub fn cyclic_symmetrization(&self, q: IndexQuad) -> f64 {
        self.cyclic_sum(q) / 6.0
    }

    /// Largest `|cyclic_sum|` over all quads.
    pub fn bianchi_residual(&self) -> f64 {
        bianchi_triples(self.n)
            .map(|[x, y, z]| (self.slot_entry(x.0, x.1) - self.slot_entry(y.0, y.1) + self.slot_entry(z.0, z.1)).abs())
            .fold(0.0, f64::max)
    }

    /// Orthogonal projection onto the cyclic-identity subspace.
    ///
    /// Only quads with four distinct indices carry a nontrivial constraint,
    /// one per 4-subset `a<b<c<d`: `M[ab][cd] - M[ac][bd] + M[ad][bc] = 0`.
    /// Distinct subsets touch disjoint upper-triangle entries, so each
    /// constraint is projected out independently.
    pub fn project_bianchi(&self) -> Self {
        let mut r = self.clone();
        if self.bianchi_enforced {
            return r;
        }
        for [x, y, z] in bianchi_triples(self.n) {
            let (vx, vy, vz) = (r.slot_entry(x.0, x.1), r.slot_entry(y.0, y.1), r.slot_entry(z.0, z.1));
            let t = (vx - vy + vz) / 3.0;
            // residuals at rounding level are left alone so projection is idempotent
            let floor = 4.0 * f64::EPSILON * vx.abs().max(vy.abs()).max(vz.abs());
            if t.abs() > floor {
                r.set_slot(x.0, x.1, vx - t);
                r.set_slot(y.0, y.1, vy + t);
                r.set_slot(z.0, z.1, vz - t);
            }
        }
        r.bianchi_enforced = true;
        r
    }

    /// `R_XY = sum_a eta^{aa} R_{aXaY}`.
    pub fn ricci(&self, x: usize, y: usize) -> f64 {
        let g = FrameMetric;
        (0..self.n)
            .map(|a| g.eta(a) * self.get(IndexQuad::new(a, x, a, y)))
            .sum()
    }

    pub fn ricci_residual(&self) -> f64 {
        (0..self.n)
            .flat_map(|x| (0..self.n).map(move |y| (x, y)))
            .map(|(x, y)| self.ricci(x, y).abs())
            .fold(0.0, f64::max)
    }

    /// Covariant `P x P` matrix in the requested basis, rows as vectors.
    pub fn covariant_matrix(&self, basis: PairBasis) -> Vec<Vec<f64>> {
        let pairs = basis.pairs(self.n);
        pairs
            .iter()
            .map(|&(a, b)| {
                pairs
                    .iter()
                    .map(|&(c, d)| self.get(IndexQuad::new(a, b, c, d)))
                    .collect()
            })
            .collect()
    }

    /// Deterministic four-dimensional sample with the cyclic identity imposed.
    ///
    /// With `ricci_flat`, the sample lies in the ten-dimensional sector where
    /// every Ricci contraction vanishes.
    pub fn random(seed: u64, ricci_flat: bool) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        if ricci_flat {
            let basis = ricci_flat_basis();
            let mut upper = vec![0.0; basis[0].len()];
            for v in basis {
                let c: f64 = rng.gen_range(-1.0..1.0);
                for (u, b) in upper.iter_mut().zip(v) {
                    *u += c * b;
                }
            }
            let mut r = Self::from_upper_entries(DIM, &upper);
            r.bianchi_enforced = true;
            r
        } else {
            let p = pair_count(DIM);
            let upper: Vec<f64> = (0..p * (p + 1) / 2).map(|_| rng.gen_range(-1.0..1.0)).collect();
            Self::from_upper_entries(DIM, &upper).project_bianchi()
        }
    }
}

/// Slot pairs `(ab,cd)`, `(ac,bd)`, `(ad,bc)` for each 4-subset `a<b<c<d`.
fn bianchi_triples(n: usize) -> impl Iterator<Item = [(usize, usize); 3]> {
    let slot = move |a, b| PairSlot::lookup(a, b, n, PairBasis::Lex).unwrap().slot;
    (0..n).flat_map(move |a| {
        (a + 1..n).flat_map(move |b| {
            (b + 1..n).flat_map(move |c| {
                (c + 1..n).map(move |d| {
                    [
                        (slot(a, b), slot(c, d)),
                        (slot(a, c), slot(b, d)),
                        (slot(a, d), slot(b, c)),
                    ]
                })
            })
        })
    })
}

/// Basis of the four-dimensional Ricci-flat sector in upper-entry coordinates.
///
/// Computed once by exact elimination over the 21 upper slot entries with the
/// cyclic constraint and the ten symmetric Ricci contractions stacked as rows.
pub fn ricci_flat_basis() -> &'static [Vec<f64>] {
    static BASIS: OnceLock<Vec<Vec<f64>>> = OnceLock::new();
    BASIS.get_or_init(|| {
        let constraints = ricci_flat_constraints();
        constraints
            .nullspace()
            .into_iter()
            .map(|v| v.iter().map(|x| x.to_f64().unwrap()).collect())
            .collect()
    })
}

/// Rows: one cyclic constraint, then `R_XY` for `X <= Y`, over upper entries.
pub(crate) fn ricci_flat_constraints() -> RationalMatrix {
    let p = pair_count(DIM);
    let width = p * (p + 1) / 2;
    let unit = |k: usize| {
        let mut e = vec![0.0; width];
        e[k] = 1.0;
        RiemannComponents::from_upper_entries(DIM, &e)
    };
    let units: Vec<RiemannComponents> = (0..width).map(unit).collect();
    let mut rows: Vec<Vec<i64>> = Vec::new();
    let q = IndexQuad::new(0, 1, 2, 3);
    rows.push(units.iter().map(|u| u.cyclic_sum(q) as i64).collect());
    for x in 0..DIM {
        for y in x..DIM {
            rows.push(units.iter().map(|u| u.ricci(x, y) as i64).collect());
        }
    }
    RationalMatrix::from_rows(&rows)
}
