//! Exact-decision predicates and primitive constructions.

mod behind;
mod construct;
pub(crate) mod exact;
mod predicates;

pub use behind::segment_behind;
pub use construct::{circumsphere, orthosphere, power_distance, ConstructError, Sphere};
pub use predicates::{
    in_sphere, in_sphere_perturbed, orient3d, orient3d_perturbed, power_in_sphere,
    power_in_sphere_perturbed,
};

pub(crate) use behind::seg_tri_intersect;
pub(crate) use predicates::orient2d_coords;
