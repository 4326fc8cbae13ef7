pub mod boxes;
pub mod fiber;
pub mod group_algebra;
pub mod matrix;
pub mod urns;

/// Upper bound on the order of explicitly generated groups.
pub const GROUP_CAP: usize = 10_000;
