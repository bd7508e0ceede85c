//! The probability-dependent linear transform between shaped and unshaped
//! alphabets.
//!
//! Given bit probabilities `b`, the transform maps an alphabet `X` to
//! `X̊ = G D^{1/2} X`, where `D = diag(P)` holds the product-form symbol
//! probabilities and `G` collects the coefficients
//!
//! ```text
//! γ_{i,j} = Π_k [ (−1)^{n̄_{i,k} n_{j,k}} √P_{C_k}(0) + (−1)^{n_{i,k} n̄_{j,k}} √P_{C_k}(1) ]
//! ```
//!
//! `G` is orthogonal up to scale (`Gᵀ G = M·I`), so the transform inverts as
//! `X = (1/M) D^{−1/2} Gᵀ X̊`. For uniform bits it reduces to the identity.
//! The composition with the Hadamard transform is captured by an upper
//! triangular matrix `T` with `S̃ = T X̃` whenever `S = X̊`; both `T` and its
//! inverse have closed-form entries built from the per-bit factors `ψ_i`.

use crate::constellation::{nbc_bit, BitProbabilities};
use crate::error::Error;
use crate::{Matrix, Result};

/// Single transform coefficient `γ_{i,j}`. Per bit position the factor is
/// `√P_k(0) + √P_k(1)` when the label bits agree, and `±(√P_k(1) − √P_k(0))`
/// when they differ (sign from which side holds the one-bit).
pub fn gamma_coeff(b: &BitProbabilities, i: usize, j: usize) -> f64 {
    let mut prod = 1.0;
    for k in 0..b.m() {
        let a = b.p0(k as usize).sqrt();
        let c = (1.0 - b.p0(k as usize)).sqrt();
        let (ni, nj) = (nbc_bit(i, k), nbc_bit(j, k));
        let sign_a = if (1 - ni) & nj == 1 { -1.0 } else { 1.0 };
        let sign_c = if ni & (1 - nj) == 1 { -1.0 } else { 1.0 };
        prod *= sign_a * a + sign_c * c;
    }
    prod
}

/// The `M × M` coefficient matrix `G` together with the generating bit
/// probabilities.
#[derive(Debug, Clone, PartialEq)]
pub struct GammaMatrix {
    entries: Matrix,
    b: BitProbabilities,
}

impl GammaMatrix {
    pub fn entries(&self) -> &Matrix {
        &self.entries
    }

    #[inline]
    pub fn g(&self, i: usize, j: usize) -> f64 {
        self.entries[i][j]
    }

    pub fn bits(&self) -> &BitProbabilities {
        &self.b
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }
}

/// Materialize `G` for the given bit probabilities.
pub fn gamma(b: &BitProbabilities) -> GammaMatrix {
    let size = 1usize << b.m();
    let entries = (0..size)
        .map(|i| (0..size).map(|j| gamma_coeff(b, i, j)).collect())
        .collect();
    GammaMatrix {
        entries,
        b: b.clone(),
    }
}

fn check_rows(x: &Matrix, b: &BitProbabilities, context: &str) -> Result<()> {
    if x.len() != 1usize << b.m() {
        return Err(Error::DimensionMismatch {
            context: format!(
                "{context}: matrix has {} rows, bit probabilities imply {}",
                x.len(),
                1usize << b.m()
            ),
        });
    }
    Ok(())
}

/// Forward transform `x̊_i = Σ_j x_j γ_{i,j} √P_j` of an NBC-ordered matrix.
pub fn forward(x: &Matrix, b: &BitProbabilities) -> Result<Matrix> {
    check_rows(x, b, "forward transform")?;
    let size = x.len();
    let dim = x[0].len();
    let probs = crate::constellation::symbol_distribution(b);
    let weighted: Matrix = (0..size)
        .map(|j| {
            let w = probs.p(j).sqrt();
            x[j].iter().map(|&v| v * w).collect()
        })
        .collect();
    let mut out = vec![vec![0.0; dim]; size];
    for i in 0..size {
        for j in 0..size {
            let g = gamma_coeff(b, i, j);
            for d in 0..dim {
                out[i][d] += g * weighted[j][d];
            }
        }
    }
    Ok(out)
}

/// Inverse transform `x_j = (1/(M √P_j)) Σ_i x̊_i γ_{i,j}`.
pub fn inverse(xo: &Matrix, b: &BitProbabilities) -> Result<Matrix> {
    check_rows(xo, b, "inverse transform")?;
    let size = xo.len();
    let dim = xo[0].len();
    let probs = crate::constellation::symbol_distribution(b);
    let mut out = vec![vec![0.0; dim]; size];
    for j in 0..size {
        for i in 0..size {
            let g = gamma_coeff(b, i, j);
            for d in 0..dim {
                out[j][d] += g * xo[i][d];
            }
        }
        let scale = 1.0 / (size as f64 * probs.p(j).sqrt());
        for v in &mut out[j] {
            *v *= scale;
        }
    }
    Ok(out)
}

/// Per-row factors `ψ_i = Π_{k: n_{i,k}=1} 2√(P_{C_k}(0) P_{C_k}(1))`, with
/// the empty product equal to 1. Always in (0, 1].
pub fn psi(b: &BitProbabilities) -> Vec<f64> {
    let size = 1usize << b.m();
    (0..size)
        .map(|i| {
            (0..b.m())
                .filter(|&k| nbc_bit(i, k) == 1)
                .map(|k| 2.0 * (b.p0(k as usize) * (1.0 - b.p0(k as usize))).sqrt())
                .product()
        })
        .collect()
}

/// The upper triangular matrix relating the Hadamard transforms of an
/// alphabet and its probability transform: `S̃ = T X̃` and `X̃ = T⁻¹ S̃`.
#[derive(Debug, Clone, PartialEq)]
pub struct TMatrix {
    t: Matrix,
    t_inv: Matrix,
    psi: Vec<f64>,
}

impl TMatrix {
    pub fn t(&self) -> &Matrix {
        &self.t
    }

    pub fn t_inv(&self) -> &Matrix {
        &self.t_inv
    }

    pub fn psi(&self) -> &[f64] {
        &self.psi
    }

    /// `T` applied to an `M × N` matrix (typically a Hadamard transform).
    pub fn apply(&self, xt: &Matrix) -> Result<Matrix> {
        mat_apply(&self.t, xt)
    }

    /// `T⁻¹` applied to an `M × N` matrix.
    pub fn apply_inverse(&self, st: &Matrix) -> Result<Matrix> {
        mat_apply(&self.t_inv, st)
    }
}

fn mat_apply(a: &Matrix, x: &Matrix) -> Result<Matrix> {
    if a.len() != x.len() {
        return Err(Error::DimensionMismatch {
            context: format!("T is {0}×{0}, operand has {1} rows", a.len(), x.len()),
        });
    }
    let dim = x[0].len();
    Ok((0..a.len())
        .map(|i| {
            (0..dim)
                .map(|d| (0..x.len()).map(|j| a[i][j] * x[j][d]).sum())
                .collect()
        })
        .collect())
}

/// Build `T` and `T⁻¹` from their closed-form entries:
/// `T[i][j] = ψ_i Π_{k: n_{j,k}≠n_{i,k}} (P_{C_k}(0) − P_{C_k}(n_{j,k}))` and
/// `T⁻¹[i][j] = (1/ψ_j) Π_{k: n_{j,k}≠n_{i,k}} (P_{C_k}(n_{j,k}) − P_{C_k}(0))`.
/// Entries vanish unless `i`'s bits are a subset of `j`'s, so both matrices
/// are upper triangular.
pub fn t_matrix(b: &BitProbabilities) -> TMatrix {
    let size = 1usize << b.m();
    let psi = psi(b);
    let mut t = vec![vec![0.0; size]; size];
    let mut t_inv = vec![vec![0.0; size]; size];
    for i in 0..size {
        for j in 0..size {
            let mut fwd = 1.0;
            let mut inv = 1.0;
            for k in 0..b.m() {
                let (ni, nj) = (nbc_bit(i, k), nbc_bit(j, k));
                if ni != nj {
                    let diff = b.p0(k as usize) - b.p(k as usize, nj);
                    fwd *= diff;
                    inv *= -diff;
                }
            }
            t[i][j] = psi[i] * fwd;
            t_inv[i][j] = inv / psi[j];
        }
    }
    TMatrix { t, t_inv, psi }
}
