//! Collision-free motion planning for one and two robots moving on interval,
//! circle and lollipop tracks, together with an independent discretized
//! homology oracle that verifies the instruction-count claims behind the
//! planners (number of continuity domains per track).
//!
//! The two-robot lollipop planner works in configuration space: it retracts
//! states onto the half-unit-separation skeleton, routes along the skeleton
//! with a counterclockwise tie-break, and plays the goal retraction backwards.

pub mod skeleton;
pub mod spaces;

pub use skeleton::{ConfigState, SkeletonGraph, SkeletonPoint};
pub use spaces::{PhysPoint, SpaceKind};
