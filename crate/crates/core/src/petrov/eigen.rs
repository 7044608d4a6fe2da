//! Closed-form eigenstructure of a complex symmetric traceless 3x3 matrix.
//!
//! The matrix is normalized to unit Frobenius norm before any decision, so
//! every threshold below is relative and invariant under complex scaling and
//! real orthogonal congruence. Coincidence of eigenvalues is decided on the
//! invariants (`p`, `q`, and the cubic discriminant) rather than on computed
//! roots: a defective double root is only resolved to about `sqrt(eps)` by
//! Cardano, which would otherwise split it.

use std::fmt;

use num_complex::Complex64;
use serde::Serialize;

use super::{CMat3, OmegaMatrix, PetrovError};

pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum PetrovType {
    I,
    II,
    D,
    III,
    N,
    O,
}

impl fmt::Display for PetrovType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            PetrovType::I => "I",
            PetrovType::II => "II",
            PetrovType::D => "D",
            PetrovType::III => "III",
            PetrovType::N => "N",
            PetrovType::O => "O",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EigenvalueClass {
    Distinct,
    Double,
    Triple,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DistinctEigenvalue {
    pub value: Complex64,
    pub algebraic: u8,
    pub geometric: u8,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EigenSolution {
    pub eigenvalues: [Complex64; 3],
    pub distinct: Vec<DistinctEigenvalue>,
    pub class: EigenvalueClass,
    /// Smallest `k` with `W^k ≈ 0`, reported when all eigenvalues vanish.
    pub nilpotency_degree: Option<u8>,
    pub norm: f64,
}

impl EigenSolution {
    pub fn geometric_multiplicities(&self) -> Vec<u8> {
        self.distinct.iter().map(|d| d.geometric).collect()
    }
}

type C = Complex64;

fn czero() -> C {
    C::new(0.0, 0.0)
}

fn frobenius(m: &CMat3) -> f64 {
    m.iter().flatten().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

fn max_abs(m: &CMat3) -> f64 {
    m.iter().flatten().map(|x| x.norm()).fold(0.0, f64::max)
}

fn matmul(a: &CMat3, b: &CMat3) -> CMat3 {
    std::array::from_fn(|i| std::array::from_fn(|j| (0..3).map(|k| a[i][k] * b[k][j]).sum()))
}

fn shifted(m: &CMat3, lambda: C) -> CMat3 {
    let mut out = *m;
    for (i, row) in out.iter_mut().enumerate() {
        row[i] -= lambda;
    }
    out
}

fn det(m: &CMat3) -> C {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Rank by Gaussian elimination with full (modulus) pivoting; pivots at or
/// below `threshold` count as zero.
pub(crate) fn numerical_rank(m: &CMat3, threshold: f64) -> usize {
    let mut a = *m;
    let mut rows = [0usize, 1, 2];
    let mut cols = [0usize, 1, 2];
    for step in 0..3 {
        let mut best = (step, step, 0.0);
        for (ri, &r) in rows.iter().enumerate().skip(step) {
            for (ci, &c) in cols.iter().enumerate().skip(step) {
                let v = a[r][c].norm();
                if v > best.2 {
                    best = (ri, ci, v);
                }
            }
        }
        if best.2 <= threshold {
            return step;
        }
        rows.swap(step, best.0);
        cols.swap(step, best.1);
        let (pr, pc) = (rows[step], cols[step]);
        let pivot = a[pr][pc];
        for &r in &rows[step + 1..] {
            let f = a[r][pc] / pivot;
            for &c in &cols[step..] {
                let v = a[pr][c];
                a[r][c] -= f * v;
            }
        }
    }
    3
}

/// Roots of `t^3 + p t + q` by Cardano with complex cube roots, each
/// refined by one Newton step.
fn depressed_cubic_roots(p: C, q: C) -> [C; 3] {
    let disc = (q / 2.0).powu(2) + (p / 3.0).powu(3);
    let sq = disc.sqrt();
    let (a, b) = (-q / 2.0 + sq, -q / 2.0 - sq);
    let u3 = if a.norm() >= b.norm() { a } else { b };
    let u = if u3.norm() == 0.0 { czero() } else { u3.powf(1.0 / 3.0) };
    let v = if u.norm() == 0.0 { czero() } else { -p / (u * 3.0) };
    let w = C::new(-0.5, 3f64.sqrt() / 2.0);
    let w2 = w.conj();
    [u + v, w * u + w2 * v, w2 * u + w * v].map(|t| {
        let f = t * t * t + p * t + q;
        let df = t * t * 3.0 + p;
        if df.norm() > 1e-8 {
            t - f / df
        } else {
            t
        }
    })
}

/// Eigenvalues and eigenvector counts of a symmetric traceless `W`.
pub fn eigen(w: &OmegaMatrix, tol: f64) -> Result<EigenSolution, PetrovError> {
    let m = &w.entries;
    let norm = frobenius(m);
    let scale = norm.max(1.0);
    let asym = w.asymmetry();
    if asym > tol * scale {
        return Err(PetrovError::NotSymmetric(asym));
    }
    let tr = w.trace();
    if tr.norm() > tol * scale {
        return Err(PetrovError::NotTraceless(tr.norm()));
    }

    if norm <= tol {
        return Ok(EigenSolution {
            eigenvalues: [czero(); 3],
            distinct: vec![DistinctEigenvalue {
                value: czero(),
                algebraic: 3,
                geometric: 3,
            }],
            class: EigenvalueClass::Triple,
            nilpotency_degree: Some(1),
            norm,
        });
    }

    // Unit-norm, exactly traceless copy.
    let mean = tr / 3.0;
    let b: CMat3 = shifted(m, mean).map(|row| row.map(|x| x / norm));
    let b2 = matmul(&b, &b);
    let tr_b2: C = (0..3).map(|i| b2[i][i]).sum();
    let p = -tr_b2 / 2.0;
    let q = -det(&b);
    let discriminant = -(p.powu(3) * 4.0 + q.powu(2) * 27.0);

    let unscale = |t: C| t * norm + mean;
    let geometric = |lambda: C| (3 - numerical_rank(&shifted(&b, lambda), tol)) as u8;

    if p.norm() <= tol && q.norm() <= tol {
        let degree = if max_abs(&b) <= tol {
            1
        } else if max_abs(&b2) <= tol {
            2
        } else {
            // b^3 = -p b - q I, so it vanishes along with the invariants
            3
        };
        let zero = unscale(czero());
        return Ok(EigenSolution {
            eigenvalues: [zero; 3],
            distinct: vec![DistinctEigenvalue {
                value: zero,
                algebraic: 3,
                geometric: geometric(czero()),
            }],
            class: EigenvalueClass::Triple,
            nilpotency_degree: Some(degree),
            norm,
        });
    }

    if discriminant.norm() <= tol {
        // t^3 + p t + q = (t - d)^2 (t + 2d) with d = -3q / (2p)
        let d = -q * 3.0 / (p * 2.0);
        let s = -d * 2.0;
        return Ok(EigenSolution {
            eigenvalues: [unscale(d), unscale(d), unscale(s)],
            distinct: vec![
                DistinctEigenvalue {
                    value: unscale(d),
                    algebraic: 2,
                    geometric: geometric(d),
                },
                DistinctEigenvalue {
                    value: unscale(s),
                    algebraic: 1,
                    geometric: 1,
                },
            ],
            class: EigenvalueClass::Double,
            nilpotency_degree: None,
            norm,
        });
    }

    let roots = depressed_cubic_roots(p, q).map(unscale);
    Ok(EigenSolution {
        eigenvalues: roots,
        distinct: roots
            .iter()
            .map(|&value| DistinctEigenvalue {
                value,
                algebraic: 1,
                geometric: 1,
            })
            .collect(),
        class: EigenvalueClass::Distinct,
        nilpotency_degree: None,
        norm,
    })
}

/// Petrov type from eigenvalue coincidence and eigenvector count.
pub fn classify(w: &OmegaMatrix, tol: f64) -> Result<PetrovType, PetrovError> {
    let sol = eigen(w, tol)?;
    Ok(type_of(&sol))
}

pub(crate) fn type_of(sol: &EigenSolution) -> PetrovType {
    match sol.class {
        EigenvalueClass::Distinct => PetrovType::I,
        EigenvalueClass::Double => {
            if sol.distinct[0].geometric >= 2 {
                PetrovType::D
            } else {
                PetrovType::II
            }
        }
        EigenvalueClass::Triple => match sol.nilpotency_degree {
            Some(1) => PetrovType::O,
            Some(2) => PetrovType::N,
            _ => PetrovType::III,
        },
    }
}
