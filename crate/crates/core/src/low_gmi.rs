//! Closed-form low-GMI parameters `(μ, Es, α)`: the constellation mean, the
//! average symbol energy, and the slope of the BICM-GMI at SNR = 0 in bits
//! per channel use per unit SNR.
//!
//! Four routes are provided and must agree: the uniform-distribution sum
//! form, its Hadamard-transform form, the nonuniform double sum, and the
//! reduction of the nonuniform case to the uniform one through the
//! probability transform. The transform route is the canonical entry point
//! ([`params_via_transform`], used by [`Constellation`] and the CLI); the
//! double sum is kept as a verification path.

use serde::Serialize;

use crate::constellation::{nbc_bit, BitProbabilities, Constellation};
use crate::error::Error;
use crate::{hadamard, transform, Matrix, Result, LOG2_E};

/// Low-GMI parameter triple. `alpha` never exceeds log₂e (the Shannon
/// limit restated as a slope bound).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LowGmiParams {
    /// Constellation mean, in signal-space units.
    pub mu: Vec<f64>,
    /// Average symbol energy `E[‖X‖²]`.
    pub es: f64,
    /// GMI slope at SNR → 0, bits per channel use per unit SNR.
    pub alpha: f64,
}

impl LowGmiParams {
    /// `10·log10(1/α)`, the low-SNR Eb/N0 endpoint in dB; −1.59 dB when the
    /// constellation is first-order optimal.
    pub fn alpha_inv_db(&self) -> f64 {
        10.0 * (1.0 / self.alpha).log10()
    }

    pub fn mean_norm(&self) -> f64 {
        self.mu.iter().map(|v| v * v).sum::<f64>().sqrt()
    }
}

fn weighted_mean_energy(x: &Matrix, probs: &[f64]) -> (Vec<f64>, f64) {
    let dim = x[0].len();
    let mut mu = vec![0.0; dim];
    let mut es = 0.0;
    for (row, &p) in x.iter().zip(probs) {
        for d in 0..dim {
            mu[d] += p * row[d];
        }
        es += p * row.iter().map(|v| v * v).sum::<f64>();
    }
    (mu, es)
}

/// Parameters of `[X, U_m]`:
/// `α = (log₂e)/(M² Es) Σ_k ‖Σ_i (−1)^{n_{i,k}} x_i‖²` with NBC row order.
pub fn params_uniform(x: &Matrix) -> Result<LowGmiParams> {
    let m = crate::constellation::checked_log2(x.len())?;
    let size = x.len();
    let dim = x[0].len();
    let uniform = vec![1.0 / size as f64; size];
    let (mu, es) = weighted_mean_energy(x, &uniform);
    if es == 0.0 {
        return Err(Error::ZeroEnergy);
    }
    let mut sum = 0.0;
    for k in 0..m {
        let mut acc = vec![0.0; dim];
        for (i, row) in x.iter().enumerate() {
            let sign = if nbc_bit(i, k) == 0 { 1.0 } else { -1.0 };
            for d in 0..dim {
                acc[d] += sign * row[d];
            }
        }
        sum += acc.iter().map(|v| v * v).sum::<f64>();
    }
    let alpha = LOG2_E * sum / ((size * size) as f64 * es);
    Ok(LowGmiParams { mu, es, alpha })
}

/// Same parameters from the Hadamard transform of the alphabet:
/// `μ = x̃_0`, `Es = Σ_i ‖x̃_i‖²`, `α = (log₂e/Es) Σ_k ‖x̃_{2^k}‖²`.
pub fn params_ht(x: &Matrix) -> Result<LowGmiParams> {
    let m = crate::constellation::checked_log2(x.len())?;
    let xt = hadamard::ht(x)?;
    let mu = xt[0].clone();
    let es: f64 = xt.iter().map(|row| row.iter().map(|v| v * v).sum::<f64>()).sum();
    if es == 0.0 {
        return Err(Error::ZeroEnergy);
    }
    let sum: f64 = (0..m)
        .map(|k| xt[1 << k].iter().map(|v| v * v).sum::<f64>())
        .sum();
    Ok(LowGmiParams {
        mu,
        es,
        alpha: LOG2_E * sum / es,
    })
}

/// Parameters of `[X, P]` by the nonuniform double sum:
/// `α = (log₂e/Es) Σ_i Σ_j P_i P_j ⟨x_i, x_j⟩
///      Σ_k (−1)^{n_{i,k}+n_{j,k}} P_{C_k}(n̄_{i,k})/P_{C_k}(n_{j,k})`.
pub fn params(x: &Matrix, b: &BitProbabilities) -> Result<LowGmiParams> {
    let m = crate::constellation::checked_log2(x.len())?;
    if m != b.m() {
        return Err(Error::DimensionMismatch {
            context: format!("alphabet m = {m}, bit probabilities m = {}", b.m()),
        });
    }
    let size = x.len();
    let probs = crate::constellation::symbol_distribution(b);
    let (mu, es) = weighted_mean_energy(x, probs.probs());
    if es == 0.0 {
        return Err(Error::ZeroEnergy);
    }
    let mut acc = 0.0;
    for i in 0..size {
        for j in 0..size {
            let inner: f64 = x[i].iter().zip(&x[j]).map(|(a, c)| a * c).sum();
            if inner == 0.0 {
                continue;
            }
            let mut ksum = 0.0;
            for k in 0..m {
                let (ni, nj) = (nbc_bit(i, k), nbc_bit(j, k));
                let sign = if (ni + nj) % 2 == 0 { 1.0 } else { -1.0 };
                ksum += sign * b.p(k as usize, 1 - ni) / b.p(k as usize, nj);
            }
            acc += probs.p(i) * probs.p(j) * inner * ksum;
        }
    }
    Ok(LowGmiParams {
        mu,
        es,
        alpha: LOG2_E * acc / es,
    })
}

/// Parameters of `[X, P]` as the uniform parameters of the transformed
/// alphabet `[X̊, U_m]`. Canonical route.
pub fn params_via_transform(x: &Matrix, b: &BitProbabilities) -> Result<LowGmiParams> {
    params_uniform(&transform::forward(x, b)?)
}

/// Third independent route for the slope: the bracketed three-term norm
/// expression
/// `α = (log₂e/2Es) Σ_k [ ‖Σ_i (−1)^{n_{i,k}} P_i x_i / √P_{C_k}(n_{i,k})‖²
///      + ‖Σ_i P_i x_i / √P_{C_k}(n_{i,k})‖² − 2‖μ‖² ]`.
pub fn alpha_proof_form(x: &Matrix, b: &BitProbabilities) -> Result<f64> {
    let m = crate::constellation::checked_log2(x.len())?;
    if m != b.m() {
        return Err(Error::DimensionMismatch {
            context: format!("alphabet m = {m}, bit probabilities m = {}", b.m()),
        });
    }
    let dim = x[0].len();
    let probs = crate::constellation::symbol_distribution(b);
    let (mu, es) = weighted_mean_energy(x, probs.probs());
    if es == 0.0 {
        return Err(Error::ZeroEnergy);
    }
    let mu_sq: f64 = mu.iter().map(|v| v * v).sum();
    let mut sum = 0.0;
    for k in 0..m {
        let mut signed = vec![0.0; dim];
        let mut plain = vec![0.0; dim];
        for (i, row) in x.iter().enumerate() {
            let ni = nbc_bit(i, k);
            let w = probs.p(i) / b.p(k as usize, ni).sqrt();
            let sign = if ni == 0 { 1.0 } else { -1.0 };
            for d in 0..dim {
                signed[d] += sign * w * row[d];
                plain[d] += w * row[d];
            }
        }
        sum += signed.iter().map(|v| v * v).sum::<f64>()
            + plain.iter().map(|v| v * v).sum::<f64>()
            - 2.0 * mu_sq;
    }
    Ok(LOG2_E * sum / (2.0 * es))
}

/// Slope of the CM-MI at SNR → 0: `log₂e · (1 − ‖μ‖²/Es)`. Always at least
/// the BICM slope.
pub fn cm_alpha(x: &Matrix, b: &BitProbabilities) -> Result<f64> {
    let p = params(x, b)?;
    let mu_sq: f64 = p.mu.iter().map(|v| v * v).sum();
    Ok(LOG2_E * (1.0 - mu_sq / p.es))
}

impl Constellation {
    /// Low-GMI parameters of this constellation, honoring its labeling
    /// (normalizes to the NBC, then takes the transform route).
    pub fn low_gmi_params(&self) -> Result<LowGmiParams> {
        let n = self.normalize_to_nbc();
        params_via_transform(n.alphabet().points(), n.bits())
    }

    /// CM-MI slope at SNR → 0.
    pub fn cm_alpha(&self) -> Result<f64> {
        let n = self.normalize_to_nbc();
        cm_alpha(n.alphabet().points(), n.bits())
    }
}
