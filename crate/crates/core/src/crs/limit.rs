use serde::{Deserialize, Serialize};

use super::param::{divides, CrsParam};
use crate::error::{Error, Result};
use crate::finab::{FinAbGroup, PrimePower};

/// Long-run behaviour of the first coordinate `n_i` of a parameter sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NTrend {
    Diverges,
    Constant(u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MaxOrderTrend {
    Bounded,
    Diverges,
}

/// Eventual shape of a sequence `(n_i, [F_i])`: either `n_i` diverges, or it
/// is eventually `n` and `F_i ≅ F ⊕ ⊕_j (Z/q_j^{t_j})^{m_j(i)}` with every
/// `m_j(i) → ∞`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceDescriptor {
    pub n_trend: NTrend,
    pub stable_part: FinAbGroup,
    pub growing_blocks: Vec<PrimePower>,
    pub maxorder_trend: MaxOrderTrend,
}

#[derive(Serialize, Deserialize)]
struct DescriptorDoc {
    n_trend: NTrend,
    #[serde(default)]
    stable_part: Option<String>,
    #[serde(default)]
    growing_blocks: Vec<u64>,
    #[serde(default = "bounded")]
    maxorder_trend: MaxOrderTrend,
}

fn bounded() -> MaxOrderTrend {
    MaxOrderTrend::Bounded
}

impl SequenceDescriptor {
    pub fn diverging() -> Self {
        Self {
            n_trend: NTrend::Diverges,
            stable_part: FinAbGroup::trivial(),
            growing_blocks: Vec::new(),
            maxorder_trend: MaxOrderTrend::Bounded,
        }
    }

    pub fn stable(n: u64, stable_part: FinAbGroup, growing_blocks: Vec<PrimePower>) -> Self {
        Self {
            n_trend: NTrend::Constant(n),
            stable_part,
            growing_blocks,
            maxorder_trend: MaxOrderTrend::Bounded,
        }
    }

    /// Parses `{"n_trend": "diverges" | {"constant": n}, "stable_part": "Z/3",
    /// "growing_blocks": [2, 4], "maxorder_trend": "bounded" | "diverges"}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: DescriptorDoc =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("sequence descriptor: {e}")))?;
        let stable_part = match doc.stable_part {
            Some(s) => s.parse()?,
            None => FinAbGroup::trivial(),
        };
        let growing_blocks = doc
            .growing_blocks
            .into_iter()
            .map(PrimePower::from_value)
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            n_trend: doc.n_trend,
            stable_part,
            growing_blocks,
            maxorder_trend: doc.maxorder_trend,
        })
    }

    pub fn to_json(&self) -> String {
        let doc = DescriptorDoc {
            n_trend: self.n_trend,
            stable_part: Some(self.stable_part.to_string()),
            growing_blocks: self.growing_blocks.iter().map(|b| b.value()).collect(),
            maxorder_trend: self.maxorder_trend,
        };
        serde_json::to_string(&doc).expect("plain data serializes")
    }
}

/// Parameter of the weak* limit on the untwisted group (ambient `n = 0`).
///
/// Summands of `F` killed by the limiting `m` are absorbed into `Ann(m·A)`
/// and dropped so that the result is a valid parameter.
pub fn classify_limit(seq: &SequenceDescriptor) -> CrsParam {
    let delta = || CrsParam::new(0, 0, FinAbGroup::trivial()).expect("(0, trivial) is valid");
    let n = match seq.n_trend {
        NTrend::Diverges => return delta(),
        NTrend::Constant(n) => n,
    };
    if seq.maxorder_trend == MaxOrderTrend::Diverges {
        return delta();
    }
    let m = seq
        .growing_blocks
        .iter()
        .fold(n, |acc, b| if acc == 0 { 0 } else { num_integer::lcm(acc, b.value()) });
    let kept: Vec<PrimePower> = seq
        .stable_part
        .summands()
        .iter()
        .copied()
        .filter(|s| m != 0 && !divides(s.value(), m))
        .collect();
    CrsParam::new(0, m, FinAbGroup::from_prime_powers(kept)).expect("limit parameter is valid")
}
