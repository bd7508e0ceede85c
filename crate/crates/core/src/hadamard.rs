//! Walsh–Hadamard transform of alphabets, with coefficients
//! `h_{i,j} = (−1)^{popcount(i AND j)}` and the `1/M`-forward, unit-inverse
//! scaling. Row 0 of the forward transform is the uniformly weighted mean of
//! the alphabet.

use crate::constellation::checked_log2;
use crate::{Matrix, Result};

/// Hadamard coefficient `h_{i,j} = Π_k (−1)^{n_{i,k} n_{j,k}}`, symmetric.
#[inline]
pub fn h_coeff(i: usize, j: usize) -> f64 {
    if (i & j).count_ones() % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Forward transform: `x̃_i = (1/M) Σ_j x_j h_{i,j}`.
pub fn ht(x: &Matrix) -> Result<Matrix> {
    checked_log2(x.len())?;
    let m = x.len() as f64;
    let mut out = x.clone();
    fwht_rows(&mut out);
    for row in &mut out {
        for v in row {
            *v /= m;
        }
    }
    Ok(out)
}

/// Inverse transform: `x_j = Σ_i x̃_i h_{i,j}`, no scale factor.
pub fn iht(xt: &Matrix) -> Result<Matrix> {
    checked_log2(xt.len())?;
    let mut out = xt.clone();
    fwht_rows(&mut out);
    Ok(out)
}

/// In-place unnormalized butterfly over the row index, applied per column.
fn fwht_rows(rows: &mut Matrix) {
    let n = rows.len();
    let mut half = 1;
    while half < n {
        let mut start = 0;
        while start < n {
            for i in start..start + half {
                for d in 0..rows[i].len() {
                    let a = rows[i][d];
                    let b = rows[i + half][d];
                    rows[i][d] = a + b;
                    rows[i + half][d] = a - b;
                }
            }
            start += half * 2;
        }
        half *= 2;
    }
}
