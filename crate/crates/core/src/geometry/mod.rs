//! Geometry of real `ℓ∞^n` and of `ℓ∞(Γ, R^k)` with finite `Γ`.

pub mod boxes;
pub mod point;
pub mod seb;
pub mod urns;

pub use boxes::{box_a, box_center, box_h, Admissible, SupBox};
pub use point::{cloud_diameter, fiber_distance, fiber_norm, sup_distance, PointCloud, SupPoint};
pub use seb::{seb_center, seb_center_with, SebBall, SebMethod, SebOptions};
pub use urns::{
    check_urns_certificate, urns_center, urns_center_with, verify_urns_certificate,
    CertificateCheck, SpaceDescriptor, SpaceKind, UrnsCenter, BOX_CONSTANT, FIBER_CONSTANT,
};
