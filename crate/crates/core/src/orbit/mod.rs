//! Isometries of the finite models, group closure and orbits.

pub mod group;
pub mod isometry;
pub mod orbits;

pub use group::{group_closure, GroupElement, GroupSpec, Permutation};
pub use isometry::FiberPermIsometry;
pub use orbits::{orbit, orbit_diameter, ORBIT_TOL};
