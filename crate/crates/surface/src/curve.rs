use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Isotopy class of an essential curve, held as its normal coordinates on the
/// standard triangulation. Ordering is lexicographic on the weights.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CurveClass {
    weights: Vec<u32>,
}

impl CurveClass {
    /// Wraps weights without validation; use [`crate::Surface::curve`] for
    /// checked construction.
    pub(crate) fn from_weights_unchecked(weights: Vec<u32>) -> Self {
        CurveClass { weights }
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn max_weight(&self) -> u32 {
        self.weights.iter().copied().max().unwrap_or(0)
    }

    pub fn total_weight(&self) -> u32 {
        self.weights.iter().sum()
    }
}

impl fmt::Display for CurveClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "c[")?;
        for (i, w) in self.weights.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{w}")?;
        }
        write!(f, "]")
    }
}

/// Peripheral status of a traced connected component.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CurveStatus {
    Essential,
    VertexLinking(u32),
}

/// Components of a traced weight vector with multiplicities.
pub type MultiCurve = BTreeMap<Vec<u32>, u32>;
