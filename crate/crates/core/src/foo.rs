//! First-order optimality (FOO): tests for whether a constellation attains
//! the −1.59 dB limit (α = log₂e), and constructions that produce FOO
//! alphabets.
//!
//! With the NBC fixed, an alphabet with uniform bits is FOO exactly when its
//! Hadamard transform is supported on the power-of-two rows
//! `{1, 2, 4, ..., M/2}` — a zero-mean linear projection of a hypercube.
//! With shaped bits the support set additionally admits row 0, and the
//! probability-weighted mean must vanish instead.

use serde::Serialize;

use crate::constellation::{nbc_bit, BitProbabilities};
use crate::error::Error;
use crate::{hadamard, low_gmi, Matrix, Result, LOG2_E};

/// Default relative tolerance for HT-coefficient nullity and mean nullity.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Outcome of a FOO test. `residual` is the energy fraction carried by the
/// HT rows that must vanish, so near-FOO constellations can be ranked rather
/// than just rejected.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FooReport {
    pub is_foo: bool,
    /// Norm of the (probability-weighted) constellation mean.
    pub mean_norm: f64,
    /// `Σ ‖x̃_j‖² / Es` over the rows required to vanish.
    pub residual: f64,
    /// `log₂e − α`.
    pub alpha_gap: f64,
}

fn norm_sq(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum()
}

/// Rows of the HT that may be nonzero for an FOO constellation:
/// powers of two, plus row 0 when the distribution handles the mean.
fn support_violations(xt: &Matrix, include_zero_row: bool, threshold: f64) -> (f64, bool) {
    let mut residual = 0.0;
    let mut ok = true;
    for (j, row) in xt.iter().enumerate() {
        let exempt = j.is_power_of_two() || (j == 0 && !include_zero_row);
        if exempt {
            continue;
        }
        let nsq = norm_sq(row);
        residual += nsq;
        if nsq.sqrt() > threshold {
            ok = false;
        }
    }
    (residual, ok)
}

/// FOO test for `[X, U_m]`: every HT row outside `{1, 2, ..., M/2}` — row 0
/// included — must vanish. `tol` is relative to `√Es`.
pub fn is_foo_uniform(x: &Matrix, tol: f64) -> Result<FooReport> {
    crate::constellation::checked_log2(x.len())?;
    let xt = hadamard::ht(x)?;
    let es: f64 = xt.iter().map(|row| norm_sq(row)).sum();
    if es == 0.0 {
        return Err(Error::ZeroEnergy);
    }
    let threshold = tol * es.sqrt();
    let (raw_residual, ok) = support_violations(&xt, true, threshold);
    let params = low_gmi::params_ht(x)?;
    Ok(FooReport {
        is_foo: ok,
        mean_norm: norm_sq(&xt[0]).sqrt(),
        residual: raw_residual / es,
        alpha_gap: LOG2_E - params.alpha,
    })
}

/// FOO test for `[X, P]`: zero mean and HT support confined to
/// `{0} ∪ {1, 2, ..., M/2}`. Cross-checked against the equivalent
/// HT-coefficient condition (see [`foo_ht_condition`]) in the test suites.
pub fn is_foo(x: &Matrix, b: &BitProbabilities, tol: f64) -> Result<FooReport> {
    let params = low_gmi::params(x, b)?;
    let xt = hadamard::ht(x)?;
    let es = params.es;
    let threshold = tol * es.sqrt();
    let (raw_residual, support_ok) = support_violations(&xt, false, threshold);
    let mean_norm = params.mean_norm();
    Ok(FooReport {
        is_foo: support_ok && mean_norm <= threshold,
        mean_norm,
        residual: raw_residual / es,
        alpha_gap: LOG2_E - params.alpha,
    })
}

/// The HT-coefficient form of the nonuniform FOO condition:
/// `x̃_0 = Σ_k x̃_{2^k} (P_{C_k}(1) − P_{C_k}(0))` together with the support
/// condition. Returns the same verdict as [`is_foo`].
pub fn foo_ht_condition(x: &Matrix, b: &BitProbabilities, tol: f64) -> Result<bool> {
    let m = crate::constellation::checked_log2(x.len())?;
    if m != b.m() {
        return Err(Error::DimensionMismatch {
            context: format!("alphabet m = {m}, bit probabilities m = {}", b.m()),
        });
    }
    let xt = hadamard::ht(x)?;
    let es: f64 = crate::constellation::symbol_distribution(b)
        .probs()
        .iter()
        .zip(x)
        .map(|(&p, row)| p * norm_sq(row))
        .sum();
    if es == 0.0 {
        return Err(Error::ZeroEnergy);
    }
    let threshold = tol * es.sqrt();
    let (_, support_ok) = support_violations(&xt, false, threshold);

    let dim = x[0].len();
    let mut combo = vec![0.0; dim];
    for k in 0..m {
        let w = b.p(k as usize, 1) - b.p(k as usize, 0);
        for d in 0..dim {
            combo[d] += w * xt[1 << k][d];
        }
    }
    let gap: f64 = (0..dim)
        .map(|d| (xt[0][d] - combo[d]).powi(2))
        .sum::<f64>()
        .sqrt();
    Ok(support_ok && gap <= threshold)
}

/// Subtract the probability-weighted mean from every symbol. A projected
/// hypercube becomes FOO for `b` after this translation.
pub fn translate_to_zero_mean(x: &Matrix, b: &BitProbabilities) -> Result<Matrix> {
    let params = low_gmi::params(x, b)?;
    Ok(x.iter()
        .map(|row| row.iter().zip(&params.mu).map(|(v, m)| v - m).collect())
        .collect())
}

/// Alphabet `x_i = Σ_k (−1)^{n̄_{i,k}} v_k` from `m` generator rows,
/// translated to zero mean for `b`. Its HT is supported on
/// `{0} ∪ {1, 2, ..., M/2}` by construction, so the result is FOO for the
/// supplied distribution.
pub fn hypercube_projection(v: &Matrix, b: &BitProbabilities) -> Result<Matrix> {
    let m = b.m();
    if v.len() != m as usize {
        return Err(Error::DimensionMismatch {
            context: format!(
                "hypercube projection needs {m} generator rows, got {}",
                v.len()
            ),
        });
    }
    let dim = v[0].len();
    if v.iter().any(|row| row.len() != dim) {
        return Err(Error::DimensionMismatch {
            context: "generator rows differ in length".into(),
        });
    }
    let size = 1usize << m;
    let x: Matrix = (0..size)
        .map(|i| {
            (0..dim)
                .map(|d| {
                    (0..m)
                        .map(|k| {
                            let sign = if nbc_bit(i, k) == 1 { 1.0 } else { -1.0 };
                            sign * v[k as usize][d]
                        })
                        .sum()
                })
                .collect()
        })
        .collect();
    translate_to_zero_mean(&x, b)
}

/// Closed-form mean of the 8-AMPM alphabet under bit probabilities `b`:
/// `[1 + 2(P_{C_1}(0) − P_{C_0}(0) − P_{C_2}(0)), 2(P_{C_0}(0) − P_{C_2}(0))]`.
/// Zero exactly when `P_{C_0}(0) = P_{C_2}(0) = P_{C_1}(0)/2 + 1/4`.
pub fn ampm_mean(b: &BitProbabilities) -> Result<[f64; 2]> {
    if b.m() != 3 {
        return Err(Error::DimensionMismatch {
            context: format!("8-AMPM mean needs m = 3, got {}", b.m()),
        });
    }
    let (p0, p1, p2) = (b.p0(0), b.p0(1), b.p0(2));
    Ok([1.0 + 2.0 * (p1 - p0 - p2), 2.0 * (p0 - p2)])
}
