//! Paths, branch cuts and phase continuation.

mod branch;
mod path;
mod phase;

pub use branch::{branch_power, integer_exponent, power_with_phase, BranchConfig, Cut, CutShape, SideHint, SidePhases};
pub use path::{Path, Segment, CONTINUITY_TOL};
pub use phase::{phase_continue, PhaseTrack};

pub(crate) use path::Local;
