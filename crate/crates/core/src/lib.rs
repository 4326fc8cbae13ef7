//! Common fixed points of finite isometry groups on sup-norm spaces.
//!
//! The crate works in two concrete spaces: real `ℓ∞^n`, where admissible sets
//! are boxes and the contraction `A ↦ H(A)` is computed exactly, and
//! `ℓ∞(Γ, R^k)` for finite `Γ`, where fixed points come from fiberwise
//! smallest-enclosing-ball centers of orbits. On top of this sits a solver
//! for witnesses `T` of inner derivations `δ(g) = T g − g̃ T` of finite
//! unitary groups, plus the finite group-algebra analog.

pub mod derivation;
pub mod error;
pub mod families;
pub mod fixed_point;
pub mod geometry;
pub mod orbit;
pub mod rng;

pub use error::{Error, Result};
pub use fixed_point::{
    iterate_box, orbit_center_fixed_point, residual, BoxIteration, CenterFixedPoint, IterationTrace,
    Termination, TraceStep, DEFAULT_MAX_ITER, DEFAULT_TOL,
};
pub use geometry::{
    box_a, box_center, box_h, cloud_diameter, seb_center, sup_distance, urns_center,
    verify_urns_certificate, Admissible, PointCloud, SpaceDescriptor, SupBox, SupPoint,
};
pub use orbit::{group_closure, orbit_diameter, FiberPermIsometry, GroupElement, GroupSpec, Permutation};
pub use rng::SeededRng;
