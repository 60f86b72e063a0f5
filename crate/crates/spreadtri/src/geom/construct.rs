//! Approximate primitive constructions.
//!
//! Unlike the predicates, these return floating-point values and make no
//! exactness promise. Nothing combinatorial may be decided from them.

use thiserror::Error;

use crate::point::{Point3, Sign, WeightedPoint};

use super::predicates::orient3d;

/// A sphere as center plus signed squared radius. Negative squared radii
/// arise as orthospheres of weighted inputs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sphere {
    pub center: Point3,
    pub sq_radius: f64,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructError {
    #[error("degenerate input: the four points are coplanar")]
    DegenerateInput,
}

/// Sphere through four non-coplanar points.
pub fn circumsphere(a: &Point3, b: &Point3, c: &Point3, d: &Point3) -> Result<Sphere, ConstructError> {
    orthosphere(
        &WeightedPoint::unweighted(*a),
        &WeightedPoint::unweighted(*b),
        &WeightedPoint::unweighted(*c),
        &WeightedPoint::unweighted(*d),
    )
}

/// Sphere orthogonal, in the squared sense `|zp|^2 = sq_radius + w(p)`, to
/// four balls with non-coplanar centers. With zero weights this is the
/// circumsphere.
pub fn orthosphere(
    a: &WeightedPoint,
    b: &WeightedPoint,
    c: &WeightedPoint,
    d: &WeightedPoint,
) -> Result<Sphere, ConstructError> {
    if orient3d(&a.point, &b.point, &c.point, &d.point) == Sign::Zero {
        return Err(ConstructError::DegenerateInput);
    }

    // 2 (p - a) . z = (|p|^2 - w_p) - (|a|^2 - w_a) for p in {b, c, d}.
    let lift = |p: &WeightedPoint| {
        p.point.x * p.point.x + p.point.y * p.point.y + p.point.z * p.point.z - p.weight
    };
    let row = |p: &WeightedPoint| {
        [
            2.0 * (p.point.x - a.point.x),
            2.0 * (p.point.y - a.point.y),
            2.0 * (p.point.z - a.point.z),
            lift(p) - lift(a),
        ]
    };
    let m = [row(b), row(c), row(d)];

    let det3 = |c0: usize, c1: usize, c2: usize| {
        m[0][c0] * (m[1][c1] * m[2][c2] - m[1][c2] * m[2][c1])
            - m[0][c1] * (m[1][c0] * m[2][c2] - m[1][c2] * m[2][c0])
            + m[0][c2] * (m[1][c0] * m[2][c1] - m[1][c1] * m[2][c0])
    };
    let den = det3(0, 1, 2);
    let zx = det3(3, 1, 2) / den;
    let zy = det3(0, 3, 2) / den;
    let zz = det3(0, 1, 3) / den;

    let dx = zx - a.point.x;
    let dy = zy - a.point.y;
    let dz = zz - a.point.z;
    Ok(Sphere {
        center: Point3::new(zx, zy, zz, u32::MAX),
        sq_radius: dx * dx + dy * dy + dz * dz - a.weight,
    })
}

/// Power distance `|x - center|^2 - sq_radius`.
pub fn power_distance(x: &Point3, s: &Sphere) -> f64 {
    x.dist_sq(&s.center) - s.sq_radius
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: f64, y: f64, z: f64, id: u32) -> Point3 {
        Point3::new(x, y, z, id)
    }

    #[test]
    fn circumsphere_of_alternating_cube_corners() {
        let s = circumsphere(
            &p(0., 0., 0., 0),
            &p(1., 1., 0., 1),
            &p(1., 0., 1., 2),
            &p(0., 1., 1., 3),
        )
        .unwrap();
        assert_eq!(s.center.coords(), [0.5, 0.5, 0.5]);
        assert_eq!(s.sq_radius, 0.75);
    }

    #[test]
    fn circumsphere_rejects_coplanar_input() {
        let r = circumsphere(
            &p(0., 0., 0., 0),
            &p(1., 0., 0., 1),
            &p(0., 1., 0., 2),
            &p(1., 1., 0., 3),
        );
        assert_eq!(r, Err(ConstructError::DegenerateInput));
    }

    #[test]
    fn orthosphere_uniform_weight_shifts_sq_radius() {
        let w = 0.3;
        let s = orthosphere(
            &WeightedPoint::new(p(0., 0., 0., 0), w),
            &WeightedPoint::new(p(1., 1., 0., 1), w),
            &WeightedPoint::new(p(1., 0., 1., 2), w),
            &WeightedPoint::new(p(0., 1., 1., 3), w),
        )
        .unwrap();
        assert!((s.center.x - 0.5).abs() < 1e-12);
        assert!((s.center.y - 0.5).abs() < 1e-12);
        assert!((s.center.z - 0.5).abs() < 1e-12);
        assert!((s.sq_radius - (0.75 - w)).abs() < 1e-12);
    }

    #[test]
    fn power_distance_examples() {
        let unit = Sphere {
            center: p(0., 0., 0., u32::MAX),
            sq_radius: 1.0,
        };
        assert_eq!(power_distance(&p(1., 0., 0., 0), &unit), 0.0);
        assert_eq!(power_distance(&p(0., 0., 0., 0), &unit), -1.0);
        assert_eq!(power_distance(&p(2., 0., 0., 0), &unit), 3.0);
    }
}
