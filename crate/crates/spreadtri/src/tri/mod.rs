//! Incremental 3D Delaunay and regular triangulations, a brute-force oracle,
//! complexity statistics, crossing-edge analysis, and affine weight
//! transport.

mod brute;
mod build;
mod mesh;

pub use brute::{verify_delaunay_bruteforce, verify_regular_bruteforce, BruteError, BRUTE_FORCE_MAX};
pub use build::{build_delaunay, build_regular, BuildError};
pub use mesh::{stats, ComplexityStats, Tet, TetMesh, BOUNDARY};
