//! Touching patches, the `C^k` sets, gaps, simple decompositions and the
//! partition sequences built from them.
//!
//! Every set handled here is a finite union of cylinders. Interval traces
//! `[Ψ_u(0), Ψ_v(1)] ∩ T` are expanded exactly with
//! [`range_cover`](crate::ifscore::range_cover), so no piece is ever stored
//! as a bare interval.
//!
//! The `C^k` construction assumes `ρ_1 ≥ ρ_n`. Systems with `ρ_1 < ρ_n`
//! are rejected with [`PatchError::Orientation`]; run them on
//! [`Ifs::mirror`](crate::ifscore::Ifs::mirror) instead.

mod efamily;
mod gaps;
mod measure;
mod partition;
mod patch;

use crate::exactnum::NumError;
use crate::ifscore::SpecError;

pub use efamily::{e_family, e_family_levels, e_set};
pub use gaps::{gap_partition, gaps, Gap};
pub use measure::{equal_ratio_measure, measure, measure_left, measure_right, FormalMeasure, Poly};
pub use partition::{
    partition_levels, partition_s, partition_t, simple_decomposition, Partition, PartitionLevel,
};
pub use patch::{c_family, c_set, delta, left_patch, right_patch, tau, CSet};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum PatchError {
    #[error("ρ_1 < ρ_n; use the mirrored system")]
    Orientation,
    #[error("letter {0} is not a touching letter")]
    NotTouching(usize),
    #[error("level {k} exceeds the depth cap {cap}")]
    DepthCap { k: usize, cap: usize },
    #[error("gaps of length at least the threshold lie deeper than {0} levels below the set")]
    GapDepth(usize),
    #[error("marked set {index}: {reason}")]
    Marked { index: usize, reason: String },
    #[error("system shape mismatch: {0}")]
    Shape(String),
    #[error("empty set")]
    Empty,
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error(transparent)]
    Num(#[from] NumError),
}

/// Knobs shared by the partition constructions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatchConfig {
    /// The touching letter the `C^k` sets sit on; `None` picks `min Σ_T`.
    pub i0: Option<usize>,
    /// Largest partition level that may be built.
    pub depth_cap: usize,
    /// How many levels below a set the gap search may descend.
    pub gap_depth: usize,
}

impl Default for PatchConfig {
    fn default() -> Self {
        PatchConfig {
            i0: None,
            depth_cap: 8,
            gap_depth: 40,
        }
    }
}

impl PatchConfig {
    pub(crate) fn resolve_i0(&self, ifs: &crate::ifscore::Ifs) -> Result<usize, PatchError> {
        match self.i0 {
            Some(i) if ifs.ts.is_touching(i) => Ok(i),
            Some(i) => Err(PatchError::NotTouching(i)),
            None => ifs
                .ts
                .sigma_t
                .iter()
                .next()
                .copied()
                .ok_or(PatchError::NotTouching(0)),
        }
    }
}
