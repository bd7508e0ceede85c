//! JSON document format for constellations.
//!
//! ```json
//! {
//!   "m": 2,
//!   "n": 1,
//!   "points": [[-3.0], [-1.0], [1.0], [3.0]],
//!   "bit_probs": [0.35, 0.5],
//!   "labeling": "nbc"
//! }
//! ```
//!
//! `labeling` is `"nbc"`, `"brgc"`, or an explicit M×m binary matrix (column
//! `k` = bit `k`); row `t` of `points` carries row `t` of the labeling.
//! Documents written by this crate are always normalized first, so their row
//! order is label-integer order and the labeling reads `"nbc"`.

use serde::{Deserialize, Serialize};

use crate::constellation::{Alphabet, BitProbabilities, Constellation, Labeling};
use crate::error::Error;
use crate::{Matrix, Result};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConstellationDoc {
    pub m: u32,
    pub n: usize,
    pub points: Matrix,
    pub bit_probs: Vec<f64>,
    pub labeling: LabelingField,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LabelingField {
    Named(String),
    Rows(Vec<Vec<u8>>),
}

impl ConstellationDoc {
    pub fn from_constellation(c: &Constellation) -> Self {
        let n = c.normalize_to_nbc();
        Self {
            m: n.m(),
            n: n.dim(),
            points: n.alphabet().points().clone(),
            bit_probs: n.bits().as_slice().to_vec(),
            labeling: LabelingField::Named("nbc".into()),
        }
    }

    pub fn to_constellation(&self) -> Result<Constellation> {
        let alphabet = Alphabet::new(self.points.clone())?;
        if alphabet.m() != self.m {
            return Err(Error::DimensionMismatch {
                context: format!(
                    "document says m = {}, points imply m = {}",
                    self.m,
                    alphabet.m()
                ),
            });
        }
        if alphabet.dim() != self.n {
            return Err(Error::DimensionMismatch {
                context: format!(
                    "document says n = {}, points imply n = {}",
                    self.n,
                    alphabet.dim()
                ),
            });
        }
        let bits = BitProbabilities::new(self.bit_probs.clone())?;
        let labeling = match &self.labeling {
            LabelingField::Named(name) => match name.as_str() {
                "nbc" => Labeling::nbc(self.m)?,
                "brgc" => Labeling::brgc(self.m)?,
                other => {
                    return Err(Error::InvalidLabeling {
                        context: format!("unknown labeling name {other:?}"),
                    })
                }
            },
            LabelingField::Rows(rows) => Labeling::from_rows(rows)?,
        };
        Constellation::new(alphabet, bits, labeling)
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::MalformedDocument {
            context: e.to_string(),
        })
    }
}
