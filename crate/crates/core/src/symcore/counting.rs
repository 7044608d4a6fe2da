//! Component-counting formulas and the exact dimension oracle.

use num_rational::Rational64;
use num_traits::{One, Zero};

use super::index::{pair_count, IndexQuad};
use crate::exact::RationalMatrix;

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// `n^2 (n^2 - 1) / 12`.
pub fn independent_component_count(n: u64) -> u64 {
    n * n * (n * n).saturating_sub(1) / 12
}

/// `C(n,2) + 3 C(n,3) + 2 C(n,4)`, the orbit-type count of the same quantity.
pub fn orbit_type_count(n: u64) -> u64 {
    binomial(n, 2) + 3 * binomial(n, 3) + 2 * binomial(n, 4)
}

/// `P(P+1)/2 - C(n, r)` with `P = n(n-1)/2`, for `r` cyclically permuting indices.
///
/// Returns `None` when `r > n` or the subtraction would go negative.
pub fn generalized_count(n: u64, r: u64) -> Option<u64> {
    if r > n {
        return None;
    }
    let p = pair_count(n as usize) as u64;
    (p * (p + 1) / 2).checked_sub(binomial(n, r))
}

/// Dimension of the space of rank-4 coefficient arrays obeying pair
/// antisymmetry, block symmetry and the cyclic identity, by exact rank over
/// all `n^4` raw components.
pub fn symmetry_space_dimension_oracle(n: usize) -> usize {
    let width = n.pow(4);
    let col = |q: IndexQuad| {
        let [a, b, c, d] = q.0;
        ((a * n + b) * n + c) * n + d
    };
    let mut m = RationalMatrix::zeros(0, width);
    let one = Rational64::one();
    let mut push = |terms: &[(IndexQuad, i64)]| {
        let mut row = vec![Rational64::zero(); width];
        for &(q, s) in terms {
            row[col(q)] += one * s;
        }
        if row.iter().any(|x| !x.is_zero()) {
            m.push_row(&row);
        }
    };
    for q in IndexQuad::all(n) {
        push(&[(q, 1), (q.swap_first(), 1)]);
        push(&[(q, 1), (q.swap_second(), 1)]);
        push(&[(q, 1), (q.swap_blocks(), -1)]);
        let [x, y, z] = q.cyclic_triple();
        push(&[(x, 1), (y, 1), (z, 1)]);
    }
    width - m.rank()
}
