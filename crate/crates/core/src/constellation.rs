//! Core constellation types: alphabets, bit probabilities, product-form
//! symbol distributions, binary labelings, and normalization to the natural
//! binary code (NBC).
//!
//! Row `i` of an NBC-ordered alphabet holds the symbol whose label is the
//! base-2 expansion of `i` with the least significant bit in column 0, so
//! `n_{2^l, k} = [k = l]` and `n_{i⊕j, k} = n_{i,k} ⊕ n_{j,k}`.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::{Matrix, Result};

/// Bit `k` of the NBC codeword of label `i` (LSB at `k = 0`).
#[inline]
pub fn nbc_bit(i: usize, k: u32) -> u8 {
    ((i >> k) & 1) as u8
}

/// `log2(M)` for a power-of-two row count, or an error.
pub(crate) fn checked_log2(rows: usize) -> Result<u32> {
    if rows >= 2 && rows.is_power_of_two() {
        Ok(rows.trailing_zeros())
    } else {
        Err(Error::NotPowerOfTwoRows { rows })
    }
}

/// An input alphabet: `M = 2^m` symbol vectors in `R^N`, dimensionless.
#[derive(Debug, Clone, PartialEq)]
pub struct Alphabet {
    points: Matrix,
    m: u32,
}

impl Alphabet {
    pub fn new(points: Matrix) -> Result<Self> {
        let m = checked_log2(points.len())?;
        let dim = points[0].len();
        if dim == 0 {
            return Err(Error::DimensionMismatch {
                context: "alphabet points must have at least one coordinate".into(),
            });
        }
        for (i, p) in points.iter().enumerate() {
            if p.len() != dim {
                return Err(Error::DimensionMismatch {
                    context: format!("row {i} has {} coordinates, row 0 has {dim}", p.len()),
                });
            }
            if p.iter().any(|v| !v.is_finite()) {
                return Err(Error::NonFinite {
                    context: format!("alphabet row {i}"),
                });
            }
        }
        Ok(Self { points, m })
    }

    /// One-dimensional alphabet from a list of scalars.
    pub fn from_scalars(points: &[f64]) -> Result<Self> {
        Self::new(points.iter().map(|&x| vec![x]).collect())
    }

    /// Bits per symbol.
    pub fn m(&self) -> u32 {
        self.m
    }

    /// Number of symbols `M = 2^m`.
    pub fn size(&self) -> usize {
        self.points.len()
    }

    /// Signal-space dimension `N`.
    pub fn dim(&self) -> usize {
        self.points[0].len()
    }

    pub fn points(&self) -> &Matrix {
        &self.points
    }

    pub fn into_points(self) -> Matrix {
        self.points
    }
}

/// Per-bit probabilities of a zero bit: `b[k] = P_{C_k}(0)`, each strictly
/// inside (0, 1). Together with a labeling these induce the product-form
/// symbol distribution.
#[derive(Debug, Clone, PartialEq)]
pub struct BitProbabilities {
    b: Vec<f64>,
}

impl BitProbabilities {
    pub fn new(b: Vec<f64>) -> Result<Self> {
        if b.is_empty() {
            return Err(Error::ZeroBitCount);
        }
        for (k, &p) in b.iter().enumerate() {
            if !(p.is_finite() && p > 0.0 && p < 1.0) {
                return Err(Error::DegenerateBitProbability { index: k, value: p });
            }
        }
        Ok(Self { b })
    }

    /// `[1/2, ..., 1/2]`, the uniform distribution `U_m`.
    pub fn uniform(m: u32) -> Self {
        Self {
            b: vec![0.5; m as usize],
        }
    }

    pub fn m(&self) -> u32 {
        self.b.len() as u32
    }

    /// `P_{C_k}(0)`.
    #[inline]
    pub fn p0(&self, k: usize) -> f64 {
        self.b[k]
    }

    /// `P_{C_k}(u)` for a bit value `u`.
    #[inline]
    pub fn p(&self, k: usize, u: u8) -> f64 {
        if u == 0 {
            self.b[k]
        } else {
            1.0 - self.b[k]
        }
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.b
    }

    pub fn is_uniform(&self) -> bool {
        self.b.iter().all(|&p| p == 0.5)
    }
}

/// Product-form symbol distribution `P_i = Π_k P_{C_k}(n_{i,k})`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymbolDistribution {
    p: Vec<f64>,
}

impl SymbolDistribution {
    pub fn probs(&self) -> &[f64] {
        &self.p
    }

    #[inline]
    pub fn p(&self, i: usize) -> f64 {
        self.p[i]
    }

    pub fn len(&self) -> usize {
        self.p.len()
    }

    pub fn is_empty(&self) -> bool {
        self.p.is_empty()
    }

    /// Entropy `H(P) = −Σ P_i log2 P_i` in bits, the GMI ceiling of the
    /// symbol-wise channel.
    pub fn entropy_bits(&self) -> f64 {
        -self.p.iter().map(|&p| p * p.log2()).sum::<f64>()
    }
}

/// Symbol distribution of an NBC-labeled constellation.
pub fn symbol_distribution(b: &BitProbabilities) -> SymbolDistribution {
    let m = b.m();
    let labels: Vec<u32> = (0..1u32 << m).collect();
    symbol_distribution_for_labels(b, &labels)
}

/// Symbol distribution with an explicit codeword per row: row `t` carries the
/// codeword of `labels[t]`.
pub(crate) fn symbol_distribution_for_labels(
    b: &BitProbabilities,
    labels: &[u32],
) -> SymbolDistribution {
    let m = b.m();
    let p = labels
        .iter()
        .map(|&ell| (0..m).map(|k| b.p(k as usize, nbc_bit(ell as usize, k))).product())
        .collect();
    SymbolDistribution { p }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LabelingKind {
    Nbc,
    Brgc,
    Explicit,
}

/// A binary labeling: row `t` is the codeword of the symbol stored in row `t`
/// of the alphabet. Rows are stored as label integers (LSB = column 0); with
/// all `M = 2^m` rows distinct they always form a permutation of `0..M`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labeling {
    labels: Vec<u32>,
    kind: LabelingKind,
}

impl Labeling {
    /// Natural binary code: row `i` is the base-2 expansion of `i`.
    pub fn nbc(m: u32) -> Result<Self> {
        if m == 0 {
            return Err(Error::ZeroBitCount);
        }
        Ok(Self {
            labels: (0..1u32 << m).collect(),
            kind: LabelingKind::Nbc,
        })
    }

    /// Binary reflected Gray code, generated by reflect-and-prefix on the
    /// most significant column: row `t` is the codeword of `t ^ (t >> 1)`.
    pub fn brgc(m: u32) -> Result<Self> {
        if m == 0 {
            return Err(Error::ZeroBitCount);
        }
        Ok(Self {
            labels: (0..1u32 << m).map(|t| t ^ (t >> 1)).collect(),
            kind: LabelingKind::Brgc,
        })
    }

    /// Labeling from explicit binary rows (column `k` = bit `k`).
    pub fn from_rows(rows: &[Vec<u8>]) -> Result<Self> {
        let m = checked_log2(rows.len())?;
        let mut labels = Vec::with_capacity(rows.len());
        for (t, row) in rows.iter().enumerate() {
            if row.len() != m as usize {
                return Err(Error::InvalidLabeling {
                    context: format!("row {t} has {} bits, expected {m}", row.len()),
                });
            }
            let mut ell = 0u32;
            for (k, &bit) in row.iter().enumerate() {
                if bit > 1 {
                    return Err(Error::InvalidLabeling {
                        context: format!("row {t} contains a non-binary entry"),
                    });
                }
                ell |= u32::from(bit) << k;
            }
            labels.push(ell);
        }
        Self::from_labels(labels, LabelingKind::Explicit)
    }

    /// Labeling from label integers per row.
    pub fn from_labels(labels: Vec<u32>, kind: LabelingKind) -> Result<Self> {
        let m = checked_log2(labels.len())?;
        let mut seen = vec![false; labels.len()];
        for &ell in &labels {
            if ell >= (1u32 << m) || seen[ell as usize] {
                return Err(Error::InvalidLabeling {
                    context: "rows are not a permutation of the NBC codewords".into(),
                });
            }
            seen[ell as usize] = true;
        }
        Ok(Self { labels, kind })
    }

    pub fn m(&self) -> u32 {
        self.labels.len().trailing_zeros()
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn kind(&self) -> LabelingKind {
        self.kind
    }

    /// Label integer of row `t`.
    #[inline]
    pub fn label(&self, t: usize) -> u32 {
        self.labels[t]
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    /// Bit `k` of row `t`'s codeword.
    #[inline]
    pub fn bit(&self, t: usize, k: u32) -> u8 {
        nbc_bit(self.labels[t] as usize, k)
    }

    /// The labeling as an `M × m` binary matrix.
    pub fn rows(&self) -> Vec<Vec<u8>> {
        let m = self.m();
        self.labels
            .iter()
            .map(|&ell| (0..m).map(|k| nbc_bit(ell as usize, k)).collect())
            .collect()
    }

    pub fn is_nbc(&self) -> bool {
        self.labels.iter().enumerate().all(|(t, &ell)| ell == t as u32)
    }
}

/// A constellation: alphabet, bit probabilities, and labeling, with
/// consistent dimensions. Operations that assume the NBC act on
/// [`Constellation::normalize_to_nbc`]'s output.
#[derive(Debug, Clone, PartialEq)]
pub struct Constellation {
    alphabet: Alphabet,
    bits: BitProbabilities,
    labeling: Labeling,
}

impl Constellation {
    pub fn new(alphabet: Alphabet, bits: BitProbabilities, labeling: Labeling) -> Result<Self> {
        if bits.m() != alphabet.m() || labeling.m() != alphabet.m() {
            return Err(Error::DimensionMismatch {
                context: format!(
                    "alphabet m = {}, bit probabilities m = {}, labeling m = {}",
                    alphabet.m(),
                    bits.m(),
                    labeling.m()
                ),
            });
        }
        Ok(Self {
            alphabet,
            bits,
            labeling,
        })
    }

    /// NBC-labeled constellation (row order = label order).
    pub fn nbc(alphabet: Alphabet, bits: BitProbabilities) -> Result<Self> {
        let labeling = Labeling::nbc(alphabet.m())?;
        Self::new(alphabet, bits, labeling)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn bits(&self) -> &BitProbabilities {
        &self.bits
    }

    pub fn labeling(&self) -> &Labeling {
        &self.labeling
    }

    pub fn m(&self) -> u32 {
        self.alphabet.m()
    }

    pub fn size(&self) -> usize {
        self.alphabet.size()
    }

    pub fn dim(&self) -> usize {
        self.alphabet.dim()
    }

    /// Product-form symbol probabilities, row by row: row `t` gets
    /// `Π_k P_{C_k}(c_{t,k})` with `c_t` its own codeword.
    pub fn symbol_probs(&self) -> SymbolDistribution {
        symbol_distribution_for_labels(&self.bits, self.labeling.labels())
    }

    /// The equivalent NBC-labeled constellation: the permutation taking the
    /// labeling to the NBC is applied jointly to alphabet rows, labeling
    /// rows, and (implicitly) symbol probabilities. Low-GMI parameters and
    /// GMI are unchanged.
    pub fn normalize_to_nbc(&self) -> Constellation {
        if self.labeling.is_nbc() {
            return self.clone();
        }
        let size = self.size();
        let mut points = vec![Vec::new(); size];
        for t in 0..size {
            points[self.labeling.label(t) as usize] = self.alphabet.points()[t].clone();
        }
        Constellation {
            alphabet: Alphabet {
                points,
                m: self.alphabet.m(),
            },
            bits: self.bits.clone(),
            labeling: Labeling::nbc(self.m()).expect("m >= 1"),
        }
    }
}
