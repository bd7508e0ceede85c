//! Catalog of reference alphabets. All entries are returned NBC-normalized:
//! row `i` of the alphabet is the symbol labeled `i`.
//!
//! Gray-labeled entries reproduce the standard printed forms: the Gray PAM
//! family reflects on the most significant bit (so 8-PAM reads
//! `[-7, 7, -1, 1, -5, 5, -3, 3]`), while square QAM is the coordinate-wise
//! product of Gray PAMs reflected on the least significant bit of each
//! coordinate pair (so the Gray 4-PAM line reads `[-3, -1, 3, 1]`). The two
//! conventions differ only by a permutation of bit positions, but the bit
//! probabilities attach to fixed positions, so both forms are pinned here.

use std::str::FromStr;

use crate::constellation::{Alphabet, BitProbabilities, Constellation, LabelingKind};
use crate::error::Error;
use crate::{Matrix, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// Equally spaced amplitudes `[-(M-1), -(M-3), ..., M-1]`.
    Pam,
    /// Square QAM, the coordinate-wise product of two PAM lines (even `m`).
    QamSquare,
    /// Points on the unit circle at angles `2πj/M + π/M`.
    Psk,
    /// The 8-point AMPM alphabet, a projected 3-cube in two dimensions.
    Ampm8,
    /// Star 8-QAM: a unit square inside an axis-aligned ring of radius 1+√3.
    Star8Qam,
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pam" => Ok(Family::Pam),
            "qam_square" | "qam" => Ok(Family::QamSquare),
            "psk" => Ok(Family::Psk),
            "ampm8" => Ok(Family::Ampm8),
            "star8qam" => Ok(Family::Star8Qam),
            _ => Err(Error::UnknownCatalogName { name: s.into() }),
        }
    }
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Pam => "pam",
            Family::QamSquare => "qam_square",
            Family::Psk => "psk",
            Family::Ampm8 => "ampm8",
            Family::Star8Qam => "star8qam",
        }
    }
}

/// Gray sequence `g(t) = t ^ (t >> 1)`.
fn gray(t: usize) -> usize {
    t ^ (t >> 1)
}

/// `g(t)` with its `m` bits reversed (reflection on the most significant
/// column instead of the least significant one).
fn gray_msb(t: usize, m: u32) -> usize {
    let g = gray(t);
    (0..m).fold(0, |acc, k| acc | (((g >> k) & 1) << (m - 1 - k)))
}

/// Ascending PAM amplitudes for `q` points.
fn pam_points(q: usize) -> Vec<f64> {
    (0..q).map(|t| (2 * t) as f64 - (q - 1) as f64).collect()
}

/// NBC-ordered PAM line: position `t` carries label `label_of(t)`.
fn pam_line(m: u32, label_of: impl Fn(usize) -> usize) -> Vec<f64> {
    let q = 1usize << m;
    let pts = pam_points(q);
    let mut line = vec![0.0; q];
    for (t, &p) in pts.iter().enumerate() {
        line[label_of(t)] = p;
    }
    line
}

fn pam(m: u32, labeling: LabelingKind) -> Matrix {
    let line = match labeling {
        LabelingKind::Nbc => pam_line(m, |t| t),
        _ => pam_line(m, |t| gray_msb(t, m)),
    };
    line.into_iter().map(|v| vec![v]).collect()
}

fn qam_square(m: u32, labeling: LabelingKind) -> Matrix {
    let half = m / 2;
    let q = 1usize << half;
    let line = match labeling {
        LabelingKind::Nbc => pam_line(half, |t| t),
        _ => pam_line(half, gray),
    };
    (0..1usize << m)
        .map(|i| vec![line[i & (q - 1)], line[(i >> half) & (q - 1)]])
        .collect()
}

fn psk(m: u32, labeling: LabelingKind) -> Matrix {
    let size = 1usize << m;
    let mut rows = vec![Vec::new(); size];
    for t in 0..size {
        let theta = 2.0 * std::f64::consts::PI * t as f64 / size as f64
            + std::f64::consts::PI / size as f64;
        let label = match labeling {
            LabelingKind::Nbc => t,
            _ => gray_msb(t, m),
        };
        rows[label] = vec![theta.cos(), theta.sin()];
    }
    rows
}

fn ampm8() -> Matrix {
    [
        [-1.0, 0.0],
        [1.0, -2.0],
        [-3.0, 0.0],
        [-1.0, -2.0],
        [1.0, 2.0],
        [3.0, 0.0],
        [-1.0, 2.0],
        [1.0, 0.0],
    ]
    .iter()
    .map(|r| r.to_vec())
    .collect()
}

fn star8qam() -> Matrix {
    // Gray-labeled rings: bits 0-1 select the position within a ring, bit 2
    // selects inner square vs outer ring. Adjacent outer points sit at the
    // distance of the inner square's side.
    let d = 1.0 + 3.0f64.sqrt();
    vec![
        vec![1.0, 1.0],
        vec![-1.0, 1.0],
        vec![1.0, -1.0],
        vec![-1.0, -1.0],
        vec![d, 0.0],
        vec![0.0, d],
        vec![0.0, -d],
        vec![-d, 0.0],
    ]
}

/// Build a catalog constellation with `m` bits per symbol. Bit probabilities
/// default to uniform. The result is NBC-labeled.
pub fn catalog(
    family: Family,
    m: u32,
    labeling: LabelingKind,
    bits: Option<BitProbabilities>,
) -> Result<Constellation> {
    if m == 0 {
        return Err(Error::ZeroBitCount);
    }
    let unsupported = || Error::UnsupportedCatalogSize {
        name: family.name().into(),
        m,
    };
    let fixed_labeling = || Error::InvalidLabeling {
        context: format!("{} is defined with its natural labeling only", family.name()),
    };
    let points = match family {
        Family::Pam => pam(m, labeling),
        Family::QamSquare => {
            if m % 2 != 0 {
                return Err(unsupported());
            }
            qam_square(m, labeling)
        }
        Family::Psk => psk(m, labeling),
        Family::Ampm8 => {
            if m != 3 {
                return Err(unsupported());
            }
            if labeling != LabelingKind::Nbc {
                return Err(fixed_labeling());
            }
            ampm8()
        }
        Family::Star8Qam => {
            if m != 3 {
                return Err(unsupported());
            }
            if labeling != LabelingKind::Nbc {
                return Err(fixed_labeling());
            }
            star8qam()
        }
    };
    let bits = match bits {
        Some(b) => {
            if b.m() != m {
                return Err(Error::DimensionMismatch {
                    context: format!("catalog m = {m}, bit probabilities m = {}", b.m()),
                });
            }
            b
        }
        None => BitProbabilities::uniform(m),
    };
    Constellation::nbc(Alphabet::new(points)?, bits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn scalar_points(c: &Constellation) -> Vec<f64> {
        c.alphabet().points().iter().map(|p| p[0]).collect()
    }

    #[test]
    fn pam_nbc_is_ascending() {
        let c = catalog(Family::Pam, 2, LabelingKind::Nbc, None).unwrap();
        assert_eq!(scalar_points(&c), vec![-3.0, -1.0, 1.0, 3.0]);
        let c = catalog(Family::Pam, 3, LabelingKind::Nbc, None).unwrap();
        assert_eq!(
            scalar_points(&c),
            vec![-7.0, -5.0, -3.0, -1.0, 1.0, 3.0, 5.0, 7.0]
        );
    }

    #[test]
    fn pam8_gray_printed_form() {
        let c = catalog(Family::Pam, 3, LabelingKind::Brgc, None).unwrap();
        assert_eq!(
            scalar_points(&c),
            vec![-7.0, 7.0, -1.0, 1.0, -5.0, 5.0, -3.0, 3.0]
        );
    }

    #[test]
    fn qam16_gray_rows_are_gray_pam_lines() {
        let c = catalog(Family::QamSquare, 4, LabelingKind::Brgc, None).unwrap();
        let line = [-3.0, -1.0, 3.0, 1.0];
        for i in 0..16 {
            assert_eq!(c.alphabet().points()[i][0], line[i & 3]);
            assert_eq!(c.alphabet().points()[i][1], line[(i >> 2) & 3]);
        }
        assert!(catalog(Family::QamSquare, 3, LabelingKind::Nbc, None).is_err());
    }

    #[test]
    fn psk_first_symbol() {
        let c = catalog(Family::Psk, 3, LabelingKind::Nbc, None).unwrap();
        let x0 = &c.alphabet().points()[0];
        let th = std::f64::consts::PI / 8.0;
        assert_abs_diff_eq!(x0[0], th.cos(), epsilon = 1e-15);
        assert_abs_diff_eq!(x0[1], th.sin(), epsilon = 1e-15);
    }

    #[test]
    fn ampm8_printed_matrix() {
        let c = catalog(Family::Ampm8, 3, LabelingKind::Nbc, None).unwrap();
        let expected = [
            (-1.0, 0.0),
            (1.0, -2.0),
            (-3.0, 0.0),
            (-1.0, -2.0),
            (1.0, 2.0),
            (3.0, 0.0),
            (-1.0, 2.0),
            (1.0, 0.0),
        ];
        for (row, &(x, y)) in c.alphabet().points().iter().zip(&expected) {
            assert_eq!(row[0], x);
            assert_eq!(row[1], y);
        }
        assert!(catalog(Family::Ampm8, 4, LabelingKind::Nbc, None).is_err());
    }

    #[test]
    fn star8qam_ring_structure() {
        let c = catalog(Family::Star8Qam, 3, LabelingKind::Nbc, None).unwrap();
        let d = 1.0 + 3.0f64.sqrt();
        for i in 0..4 {
            let r: f64 = c.alphabet().points()[i].iter().map(|v| v * v).sum();
            assert_abs_diff_eq!(r, 2.0, epsilon = 1e-12);
        }
        for i in 4..8 {
            let r: f64 = c.alphabet().points()[i].iter().map(|v| v * v).sum();
            assert_abs_diff_eq!(r, d * d, epsilon = 1e-12);
        }
    }

    #[test]
    fn name_parsing() {
        assert_eq!("pam".parse::<Family>().unwrap(), Family::Pam);
        assert_eq!("qam_square".parse::<Family>().unwrap(), Family::QamSquare);
        assert!("pam16".parse::<Family>().is_err());
    }

    #[test]
    fn bits_length_checked() {
        let b = BitProbabilities::new(vec![0.3, 0.4]).unwrap();
        assert!(catalog(Family::Pam, 3, LabelingKind::Nbc, Some(b)).is_err());
    }
}
