//! Independent reference computations for 3x3 complex matrices: the
//! characteristic polynomial by permutation expansion, Durand-Kerner roots,
//! and ranks by Gaussian elimination.

#![allow(dead_code, clippy::needless_range_loop)]

use curvgraph::petrov::{CMat3, PetrovType};
use num_complex::Complex64 as C;

pub fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

pub fn real_diag(d: [f64; 3]) -> CMat3 {
    let mut m = [[c(0.0, 0.0); 3]; 3];
    for k in 0..3 {
        m[k][k] = c(d[k], 0.0);
    }
    m
}

pub struct Fixture {
    pub name: &'static str,
    pub matrix: CMat3,
    pub expected: PetrovType,
    pub eigenvalues: [C; 3],
}

pub fn petrov_fixtures() -> Vec<Fixture> {
    let z = c(0.0, 0.0);
    let one = c(1.0, 0.0);
    let i = c(0.0, 1.0);
    vec![
        Fixture {
            name: "zero",
            matrix: [[z; 3]; 3],
            expected: PetrovType::O,
            eigenvalues: [z; 3],
        },
        Fixture {
            name: "diag(-2,1,1)",
            matrix: real_diag([-2.0, 1.0, 1.0]),
            expected: PetrovType::D,
            eigenvalues: [c(-2.0, 0.0), one, one],
        },
        Fixture {
            name: "diag(1,2,-3)",
            matrix: real_diag([1.0, 2.0, -3.0]),
            expected: PetrovType::I,
            eigenvalues: [one, c(2.0, 0.0), c(-3.0, 0.0)],
        },
        Fixture {
            name: "null",
            matrix: [[one, i, z], [i, -one, z], [z, z, z]],
            expected: PetrovType::N,
            eigenvalues: [z; 3],
        },
        Fixture {
            name: "double-defective",
            matrix: [[c(2.0, 0.0), i, z], [i, z, z], [z, z, c(-2.0, 0.0)]],
            expected: PetrovType::II,
            eigenvalues: [one, one, c(-2.0, 0.0)],
        },
        Fixture {
            name: "triple-defective",
            matrix: [[z, one, z], [one, z, i], [z, i, z]],
            expected: PetrovType::III,
            eigenvalues: [z; 3],
        },
    ]
}

pub fn mul(a: &CMat3, b: &CMat3) -> CMat3 {
    let mut out = [[c(0.0, 0.0); 3]; 3];
    for r in 0..3 {
        for col in 0..3 {
            out[r][col] = (0..3).map(|k| a[r][k] * b[k][col]).sum();
        }
    }
    out
}

pub fn shift(a: &CMat3, lambda: C) -> CMat3 {
    let mut out = *a;
    for k in 0..3 {
        out[k][k] -= lambda;
    }
    out
}

/// Rank by partial-pivot elimination; pivots below `tol` count as zero.
pub fn rank(m: &CMat3, tol: f64) -> usize {
    let mut a = *m;
    let mut rank = 0;
    for col in 0..3 {
        let Some(p) = (rank..3).max_by(|&x, &y| a[x][col].norm().total_cmp(&a[y][col].norm())) else {
            break;
        };
        if a[p][col].norm() <= tol {
            continue;
        }
        a.swap(rank, p);
        for r in rank + 1..3 {
            let f = a[r][col] / a[rank][col];
            for k in col..3 {
                let v = a[rank][k];
                a[r][k] -= f * v;
            }
        }
        rank += 1;
    }
    rank
}

/// Sizes of the Jordan blocks for `lambda`, from ranks of powers of `W - λI`.
pub fn jordan_blocks(w: &CMat3, lambda: C, tol: f64) -> Vec<usize> {
    let n = shift(w, lambda);
    let mut ranks = vec![3];
    let mut p = n;
    for _ in 0..3 {
        ranks.push(rank(&p, tol));
        p = mul(&p, &n);
    }
    // number of blocks of size >= k is r_{k-1} - r_k
    let ge: Vec<usize> = (1..=3).map(|k| ranks[k - 1] - ranks[k]).collect();
    let mut blocks = Vec::new();
    for k in 1..=3 {
        let next = if k < 3 { ge[k] } else { 0 };
        for _ in 0..ge[k - 1] - next {
            blocks.push(k);
        }
    }
    blocks.sort_unstable_by(|a, b| b.cmp(a));
    blocks
}

type Poly = Vec<C>;

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![c(0.0, 0.0); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Coefficients of `det(xI - W)`, lowest degree first, from the Leibniz sum.
pub fn charpoly(w: &CMat3) -> [C; 4] {
    const PERMS: [([usize; 3], f64); 6] = [
        ([0, 1, 2], 1.0),
        ([1, 2, 0], 1.0),
        ([2, 0, 1], 1.0),
        ([0, 2, 1], -1.0),
        ([2, 1, 0], -1.0),
        ([1, 0, 2], -1.0),
    ];
    let mut acc = [c(0.0, 0.0); 4];
    for (p, s) in PERMS {
        let mut term: Poly = vec![c(s, 0.0)];
        for (r, &col) in p.iter().enumerate() {
            let entry: Poly = if r == col {
                vec![-w[r][col], c(1.0, 0.0)]
            } else {
                vec![-w[r][col]]
            };
            term = poly_mul(&term, &entry);
        }
        for (k, t) in term.into_iter().enumerate() {
            acc[k] += t;
        }
    }
    acc
}

pub fn poly_from_roots(r: &[C; 3]) -> [C; 4] {
    let mut p: Poly = vec![c(1.0, 0.0)];
    for &x in r {
        p = poly_mul(&p, &vec![-x, c(1.0, 0.0)]);
    }
    [p[0], p[1], p[2], p[3]]
}

/// Durand-Kerner iteration on a monic cubic.
pub fn durand_kerner(p: &[C; 4]) -> [C; 3] {
    let eval = |x: C| ((p[3] * x + p[2]) * x + p[1]) * x + p[0];
    let seed = c(0.4, 0.9);
    let mut z = [c(1.0, 0.0), seed, seed * seed];
    for _ in 0..500 {
        let prev = z;
        for k in 0..3 {
            let denom: C = (0..3).filter(|&j| j != k).map(|j| z[k] - z[j]).product();
            z[k] -= eval(z[k]) / denom;
        }
        if (0..3).all(|k| (z[k] - prev[k]).norm() < 1e-15) {
            break;
        }
    }
    z
}

/// Largest distance from any root in `a` to its nearest partner in `b`.
pub fn root_set_distance(a: &[C; 3], b: &[C; 3]) -> f64 {
    let one_way = |x: &[C; 3], y: &[C; 3]| {
        x.iter()
            .map(|p| y.iter().map(|q| (p - q).norm()).fold(f64::INFINITY, f64::min))
            .fold(0.0, f64::max)
    };
    one_way(a, b).max(one_way(b, a))
}

pub fn max_coeff_diff(a: &[C; 4], b: &[C; 4]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}
