//! The 6x6 duad matrix of a four-dimensional curvature tensor, its 3x3
//! blocks, the Ψ/Σ/Λ contractions, and classification of Ω = Ψ + iΣ.

mod eigen;

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

pub use eigen::{classify, eigen, EigenSolution, EigenvalueClass, PetrovType, DEFAULT_TOL};

use crate::fuzzy::levi_civita;
use crate::symcore::{FrameMetric, IndexQuad, PairBasis, RiemannComponents, DIM};

pub type Mat3 = [[f64; 3]; 3];
pub type CMat3 = [[Complex64; 3]; 3];

/// Symmetry and trace checks use this absolute bound.
pub const BLOCK_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PetrovError {
    #[error("Petrov features need a four-dimensional tensor, got n = {0}")]
    Dimension(usize),
    #[error("lower-left block deviates from -B^T by {0:e}")]
    BlockInconsistency(f64),
    #[error("matrix is not symmetric (deviation {0:e})")]
    NotSymmetric(f64),
    #[error("matrix is not traceless (|trace| = {0:e})")]
    NotTraceless(f64),
}

fn check_dim(r: &RiemannComponents) -> Result<(), PetrovError> {
    if r.dim() == DIM {
        Ok(())
    } else {
        Err(PetrovError::Dimension(r.dim()))
    }
}

/// Mixed components `M^I_K` over duads `01 02 03 23 31 12`, upper duad raised.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SixMatrix {
    pub entries: [[f64; 6]; 6],
}

pub fn assemble_six_matrix(r: &RiemannComponents) -> Result<SixMatrix, PetrovError> {
    check_dim(r)?;
    let g = FrameMetric;
    let duads = PairBasis::Duad.pairs(DIM);
    let mut entries = [[0.0; 6]; 6];
    for (i, &(a, b)) in duads.iter().enumerate() {
        for (k, &(c, d)) in duads.iter().enumerate() {
            entries[i][k] = g.pair_factor(a, b) * r.get(IndexQuad::new(a, b, c, d));
        }
    }
    Ok(SixMatrix { entries })
}

impl SixMatrix {
    pub fn from_entries(entries: [[f64; 6]; 6]) -> Self {
        Self { entries }
    }

    fn block(&self, row: usize, col: usize) -> Mat3 {
        std::array::from_fn(|i| std::array::from_fn(|j| self.entries[row + i][col + j]))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Blocks {
    pub a: Mat3,
    pub b: Mat3,
    pub c: Mat3,
}

/// Splits into `[[A, B], [-B^T, C]]`, checking the lower-left block.
pub fn blocks(s: &SixMatrix) -> Result<Blocks, PetrovError> {
    let a = s.block(0, 0);
    let b = s.block(0, 3);
    let c = s.block(3, 3);
    let lower = s.block(3, 0);
    let dev = (0..3)
        .flat_map(|i| (0..3).map(move |j| (i, j)))
        .map(|(i, j)| (lower[i][j] + b[j][i]).abs())
        .fold(0.0, f64::max);
    if dev > BLOCK_TOL {
        return Err(PetrovError::BlockInconsistency(dev));
    }
    Ok(Blocks { a, b, c })
}

/// `R^{01}_{23} + R^{02}_{31} + R^{03}_{12}`.
pub fn trace_b(s: &SixMatrix) -> f64 {
    (0..3).map(|i| s.entries[i][i + 3]).sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum MatrixRole {
    Psi,
    Sigma,
    Lambda,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThreeMatrix {
    pub role: MatrixRole,
    pub entries: Mat3,
}

impl ThreeMatrix {
    pub fn asymmetry(&self) -> f64 {
        max_abs_by(|i, j| self.entries[i][j] - self.entries[j][i])
    }

    pub fn trace(&self) -> f64 {
        (0..3).map(|i| self.entries[i][i]).sum()
    }
}

fn max_abs_by(f: impl Fn(usize, usize) -> f64) -> f64 {
    (0..3)
        .flat_map(|i| (0..3).map(move |j| (i, j)))
        .map(|(i, j)| f(i, j).abs())
        .fold(0.0, f64::max)
}

/// Spatial Levi-Civita symbol over `{1, 2, 3}`.
fn eps3(a: usize, b: usize, c: usize) -> f64 {
    f64::from(levi_civita(a, b, c).expect("spatial indices").as_i8())
}

const SPATIAL: [usize; 3] = [1, 2, 3];

/// `Ψ_αβ = R_0α0β`.
pub fn psi(r: &RiemannComponents) -> Result<ThreeMatrix, PetrovError> {
    check_dim(r)?;
    let entries = std::array::from_fn(|i| std::array::from_fn(|j| r.get(IndexQuad::new(0, SPATIAL[i], 0, SPATIAL[j]))));
    Ok(ThreeMatrix {
        role: MatrixRole::Psi,
        entries,
    })
}

/// `Σ_αβ = ½ ε_αγδ R^γδ_0β`, summed over all spatial `γ, δ`.
pub fn sigma(r: &RiemannComponents) -> Result<ThreeMatrix, PetrovError> {
    check_dim(r)?;
    let g = FrameMetric;
    let entries = std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let (alpha, beta) = (SPATIAL[i], SPATIAL[j]);
            let mut sum = 0.0;
            for gamma in SPATIAL {
                for delta in SPATIAL {
                    let e = eps3(alpha, gamma, delta);
                    if e != 0.0 {
                        sum += e * g.pair_factor(gamma, delta) * r.get(IndexQuad::new(gamma, delta, 0, beta));
                    }
                }
            }
            0.5 * sum
        })
    });
    Ok(ThreeMatrix {
        role: MatrixRole::Sigma,
        entries,
    })
}

/// `Λ_αβ = ¼ ε_αγδ ε_βμν R^γδμν`, summed over all spatial indices.
pub fn lambda_mat(r: &RiemannComponents) -> Result<ThreeMatrix, PetrovError> {
    check_dim(r)?;
    let g = FrameMetric;
    let entries = std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let (alpha, beta) = (SPATIAL[i], SPATIAL[j]);
            let mut sum = 0.0;
            for gamma in SPATIAL {
                for delta in SPATIAL {
                    let e1 = eps3(alpha, gamma, delta);
                    if e1 == 0.0 {
                        continue;
                    }
                    for mu in SPATIAL {
                        for nu in SPATIAL {
                            let e2 = eps3(beta, mu, nu);
                            if e2 == 0.0 {
                                continue;
                            }
                            let raise = g.pair_factor(gamma, delta) * g.pair_factor(mu, nu);
                            sum += e1 * e2 * raise * r.get(IndexQuad::new(gamma, delta, mu, nu));
                        }
                    }
                }
            }
            0.25 * sum
        })
    });
    Ok(ThreeMatrix {
        role: MatrixRole::Lambda,
        entries,
    })
}

/// Complex symmetric 3x3 matrix `Ω = Ψ + iΣ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OmegaMatrix {
    pub entries: CMat3,
}

impl OmegaMatrix {
    pub fn new(entries: CMat3) -> Self {
        Self { entries }
    }

    pub fn from_real(m: Mat3) -> Self {
        Self::new(m.map(|row| row.map(|x| Complex64::new(x, 0.0))))
    }

    pub fn zero() -> Self {
        Self::from_real([[0.0; 3]; 3])
    }

    pub fn trace(&self) -> Complex64 {
        (0..3).map(|i| self.entries[i][i]).sum()
    }

    pub fn asymmetry(&self) -> f64 {
        (0..3)
            .flat_map(|i| (0..3).map(move |j| (i, j)))
            .map(|(i, j)| (self.entries[i][j] - self.entries[j][i]).norm())
            .fold(0.0, f64::max)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self::new(self.entries.map(|row| row.map(|x| x * c)))
    }

    /// `Q^T W Q` for a real matrix `Q`.
    pub fn congruence(&self, q: &Mat3) -> Self {
        let mut out = [[Complex64::new(0.0, 0.0); 3]; 3];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                for k in 0..3 {
                    for l in 0..3 {
                        *x += q[k][i] * self.entries[k][l] * q[l][j];
                    }
                }
            }
        }
        Self::new(out)
    }
}

pub fn omega(r: &RiemannComponents) -> Result<OmegaMatrix, PetrovError> {
    let p = psi(r)?;
    let s = sigma(r)?;
    Ok(OmegaMatrix::new(std::array::from_fn(|i| {
        std::array::from_fn(|j| Complex64::new(p.entries[i][j], s.entries[i][j]))
    })))
}

/// Magnitudes of the Ricci-flat relations `tr Ψ = 0`, `Σ = Σ^T`, `Ψ = -Λ`,
/// `tr Ω = 0`, plus the largest Ricci contraction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RicciFlatResiduals {
    pub trace_psi: f64,
    pub sigma_asymmetry: f64,
    pub psi_plus_lambda: f64,
    pub trace_omega: f64,
    pub ricci_max: f64,
}

impl RicciFlatResiduals {
    pub fn max(&self) -> f64 {
        [
            self.trace_psi,
            self.sigma_asymmetry,
            self.psi_plus_lambda,
            self.trace_omega,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

pub fn ricci_flat_residuals(r: &RiemannComponents) -> Result<RicciFlatResiduals, PetrovError> {
    let p = psi(r)?;
    let s = sigma(r)?;
    let l = lambda_mat(r)?;
    Ok(RicciFlatResiduals {
        trace_psi: p.trace().abs(),
        sigma_asymmetry: s.asymmetry(),
        psi_plus_lambda: max_abs_by(|i, j| p.entries[i][j] + l.entries[i][j]),
        trace_omega: omega(r)?.trace().norm(),
        ricci_max: r.ricci_residual(),
    })
}
