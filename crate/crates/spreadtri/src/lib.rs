//! 3D Delaunay and regular triangulations built on exact predicates, together
//! with the measurement machinery needed to exercise their complexity at desk
//! scale: spread and order-k spread, an octree well-separated pair
//! decomposition, depth-order verification, and a family of extremal point-set
//! generators.

pub mod geom;
pub mod point;
pub mod tri;

pub use point::{Point3, Segment, Sign, WeightedPoint};
