//! Exact-decision geometric predicates.
//!
//! Each predicate evaluates a floating-point filter first: the determinant is
//! computed in doubles together with a running magnitude (the "permanent" of
//! the same expression), and the sign is trusted only when the value clears a
//! forward-error bound. Otherwise the call falls through to exact bignum
//! arithmetic in [`super::exact`]. Constructions elsewhere are approximate;
//! only these predicates make combinatorial decisions.
//!
//! The `*_perturbed` variants never return [`Sign::Zero`]: exact ties are
//! broken by the id-keyed symbolic perturbation described in `exact`, so
//! callers that build triangulations see a simple, consistent general-position
//! world. The raw variants report honest zeros.

use crate::point::{Point3, Sign, WeightedPoint};

use super::exact;

const EPS: f64 = f64::EPSILON / 2.0;

// Forward-error coefficients, conservative versions of the classic adaptive-
// predicate stage-A bounds (extra margin covers the weighted lifted terms).
fn orient3d_bound() -> f64 {
    4.0 * (7.0 + 56.0 * EPS) * EPS
}

fn power_bound() -> f64 {
    8.0 * (16.0 + 224.0 * EPS) * EPS
}

/// Sign of the signed volume of tetrahedron `(a, b, c, d)`.
pub fn orient3d(a: &Point3, b: &Point3, c: &Point3, d: &Point3) -> Sign {
    let ux = b.x - a.x;
    let uy = b.y - a.y;
    let uz = b.z - a.z;
    let vx = c.x - a.x;
    let vy = c.y - a.y;
    let vz = c.z - a.z;
    let wx = d.x - a.x;
    let wy = d.y - a.y;
    let wz = d.z - a.z;

    let det = ux * (vy * wz - vz * wy) + uy * (vz * wx - vx * wz) + uz * (vx * wy - vy * wx);
    let perm = ux.abs() * ((vy * wz).abs() + (vz * wy).abs())
        + uy.abs() * ((vz * wx).abs() + (vx * wz).abs())
        + uz.abs() * ((vx * wy).abs() + (vy * wx).abs());
    let bound = orient3d_bound() * perm;
    if det > bound {
        return Sign::Positive;
    }
    if det < -bound {
        return Sign::Negative;
    }
    exact::orient3d_sign(a.coords(), b.coords(), c.coords(), d.coords())
}

/// Like [`orient3d`] but resolves exact ties by symbolic perturbation;
/// never returns `Zero` when the four ids are distinct.
pub fn orient3d_perturbed(a: &Point3, b: &Point3, c: &Point3, d: &Point3) -> Sign {
    let s = orient3d(a, b, c, d);
    if s != Sign::Zero {
        return s;
    }
    exact::orient3d_perturbed_sign(
        (a.coords(), a.id),
        (b.coords(), b.id),
        (c.coords(), c.id),
        (d.coords(), d.id),
    )
}

fn power_filter(pts: &[[f64; 3]; 5], wts: &[f64; 5]) -> Option<Sign> {
    let mut d = [[0.0f64; 3]; 4];
    let mut lift = [0.0f64; 4];
    let mut lift_mag = [0.0f64; 4];
    for i in 0..4 {
        for k in 0..3 {
            d[i][k] = pts[i][k] - pts[4][k];
        }
        let sq = d[i][0] * d[i][0] + d[i][1] * d[i][1] + d[i][2] * d[i][2];
        lift[i] = sq - wts[i] + wts[4];
        lift_mag[i] = sq + wts[i].abs() + wts[4].abs();
    }

    let minor = |r: [usize; 3]| -> (f64, f64) {
        let [i, j, k] = r;
        let det = d[i][0] * (d[j][1] * d[k][2] - d[j][2] * d[k][1])
            + d[i][1] * (d[j][2] * d[k][0] - d[j][0] * d[k][2])
            + d[i][2] * (d[j][0] * d[k][1] - d[j][1] * d[k][0]);
        let perm = d[i][0].abs() * ((d[j][1] * d[k][2]).abs() + (d[j][2] * d[k][1]).abs())
            + d[i][1].abs() * ((d[j][2] * d[k][0]).abs() + (d[j][0] * d[k][2]).abs())
            + d[i][2].abs() * ((d[j][0] * d[k][1]).abs() + (d[j][1] * d[k][0]).abs());
        (det, perm)
    };

    let (ma, pa) = minor([1, 2, 3]);
    let (mb, pb) = minor([0, 2, 3]);
    let (mc, pc) = minor([0, 1, 3]);
    let (md, pd) = minor([0, 1, 2]);

    let det = -lift[0] * ma + lift[1] * mb - lift[2] * mc + lift[3] * md;
    let perm = lift_mag[0] * pa + lift_mag[1] * pb + lift_mag[2] * pc + lift_mag[3] * pd;
    let bound = power_bound() * perm;
    if det > bound {
        Some(Sign::Positive)
    } else if det < -bound {
        Some(Sign::Negative)
    } else {
        None
    }
}

fn gather(
    a: &WeightedPoint,
    b: &WeightedPoint,
    c: &WeightedPoint,
    d: &WeightedPoint,
    e: &WeightedPoint,
) -> ([[f64; 3]; 5], [u32; 5], [f64; 5]) {
    let pts = [
        a.point.coords(),
        b.point.coords(),
        c.point.coords(),
        d.point.coords(),
        e.point.coords(),
    ];
    let ids = [a.point.id, b.point.id, c.point.id, d.point.id, e.point.id];
    let wts = [a.weight, b.weight, c.weight, d.weight, e.weight];
    (pts, ids, wts)
}

/// Weighted in-sphere test. With `orient3d(a,b,c,d) = Positive`, returns
/// `Positive` iff ball `e` is closer than orthogonal to the orthosphere of
/// `a..d` (it conflicts), `Negative` iff further than orthogonal, and `Zero`
/// iff the five balls admit a common orthosphere. Orthogonality is the
/// squared form `|pq|^2 = w(p) + w(q)`. Reduces to [`in_sphere`] when all
/// weights vanish.
pub fn power_in_sphere(
    a: &WeightedPoint,
    b: &WeightedPoint,
    c: &WeightedPoint,
    d: &WeightedPoint,
    e: &WeightedPoint,
) -> Sign {
    let (pts, _, wts) = gather(a, b, c, d, e);
    if let Some(s) = power_filter(&pts, &wts) {
        return s.flip();
    }
    exact::power_det_sign(&pts, &wts).flip()
}

/// Tie-free variant of [`power_in_sphere`].
pub fn power_in_sphere_perturbed(
    a: &WeightedPoint,
    b: &WeightedPoint,
    c: &WeightedPoint,
    d: &WeightedPoint,
    e: &WeightedPoint,
) -> Sign {
    let (pts, ids, wts) = gather(a, b, c, d, e);
    if let Some(s) = power_filter(&pts, &wts) {
        return s.flip();
    }
    let raw = exact::power_det_sign(&pts, &wts);
    if raw != Sign::Zero {
        return raw.flip();
    }
    exact::power_det_perturbed_sign(&pts, &ids, &wts).flip()
}

/// Unweighted in-sphere test: with `orient3d(a,b,c,d) = Positive`, `Positive`
/// iff `e` lies strictly inside the circumsphere of `(a,b,c,d)`.
pub fn in_sphere(a: &Point3, b: &Point3, c: &Point3, d: &Point3, e: &Point3) -> Sign {
    power_in_sphere(
        &WeightedPoint::unweighted(*a),
        &WeightedPoint::unweighted(*b),
        &WeightedPoint::unweighted(*c),
        &WeightedPoint::unweighted(*d),
        &WeightedPoint::unweighted(*e),
    )
}

/// Tie-free variant of [`in_sphere`].
pub fn in_sphere_perturbed(a: &Point3, b: &Point3, c: &Point3, d: &Point3, e: &Point3) -> Sign {
    power_in_sphere_perturbed(
        &WeightedPoint::unweighted(*a),
        &WeightedPoint::unweighted(*b),
        &WeightedPoint::unweighted(*c),
        &WeightedPoint::unweighted(*d),
        &WeightedPoint::unweighted(*e),
    )
}

/// Exact 2D orientation of three points given by planar coordinates.
pub(crate) fn orient2d_coords(a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> Sign {
    let det = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
    let perm = ((b[0] - a[0]) * (c[1] - a[1])).abs() + ((b[1] - a[1]) * (c[0] - a[0])).abs();
    let bound = 4.0 * (3.0 + 16.0 * EPS) * EPS * perm;
    if det > bound {
        return Sign::Positive;
    }
    if det < -bound {
        return Sign::Negative;
    }
    exact::orient2d_sign(a, b, c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: f64, y: f64, z: f64, id: u32) -> Point3 {
        Point3::new(x, y, z, id)
    }

    #[test]
    fn orient3d_unit_tetrahedron() {
        let a = p(0., 0., 0., 0);
        let b = p(1., 0., 0., 1);
        let c = p(0., 1., 0., 2);
        let d = p(0., 0., 1., 3);
        assert_eq!(orient3d(&a, &b, &c, &d), Sign::Positive);
        assert_eq!(orient3d(&b, &a, &c, &d), Sign::Negative);
        assert_eq!(orient3d(&a, &b, &d, &c), Sign::Negative);
    }

    #[test]
    fn orient3d_coplanar_is_zero() {
        let a = p(0., 0., 0., 0);
        let b = p(1., 0., 0., 1);
        let c = p(0., 1., 0., 2);
        let d = p(1., 1., 0., 3);
        assert_eq!(orient3d(&a, &b, &c, &d), Sign::Zero);
    }

    #[test]
    fn in_sphere_unit_tetrahedron() {
        let a = p(0., 0., 0., 0);
        let b = p(1., 0., 0., 1);
        let c = p(0., 1., 0., 2);
        let d = p(0., 0., 1., 3);
        let center = p(0.5, 0.5, 0.5, 4);
        let far = p(100., 100., 100., 5);
        assert_eq!(in_sphere(&a, &b, &c, &d, &center), Sign::Positive);
        assert_eq!(in_sphere(&a, &b, &c, &d, &far), Sign::Negative);
    }

    #[test]
    fn in_sphere_cospherical_cube_corners() {
        // Alternating cube corners and a fifth corner all lie on the sphere
        // about (1/2, 1/2, 1/2).
        let a = p(0., 0., 0., 0);
        let b = p(1., 1., 0., 1);
        let c = p(1., 0., 1., 2);
        let d = p(0., 1., 1., 3);
        let e = p(1., 0., 0., 4);
        // (a, c, b, d) is the positively oriented order.
        assert_eq!(orient3d(&a, &c, &b, &d), Sign::Positive);
        assert_eq!(in_sphere(&a, &c, &b, &d, &e), Sign::Zero);
        let s = in_sphere_perturbed(&a, &c, &b, &d, &e);
        assert_ne!(s, Sign::Zero);
    }
}
