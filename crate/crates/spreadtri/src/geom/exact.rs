//! Exact integer fallback arithmetic for the geometric predicates.
//!
//! Every coordinate is an IEEE double, hence a dyadic rational. Scaling a
//! predicate's operands by a common power of two turns its determinant into
//! an integer expression whose sign can be evaluated with bignum arithmetic;
//! the scale is chosen per call from the operand exponents so the integers
//! stay as small as the inputs allow.
//!
//! Degeneracies are resolved by a simulation-of-simplicity style perturbation
//! keyed on point ids: point `i` moves to `p_i + t * (l_i, l_i^2, l_i^3)` with
//! `l_i = id_i` and `t` an infinitesimal. The perturbed predicate value is a
//! univariate polynomial in `t`; its sign near zero is the sign of the lowest
//! nonvanishing coefficient. The leading coefficient is a generalized
//! Vandermonde determinant in the distinct `l_i`, so the scan always
//! terminates with a nonzero sign. Because the scheme is realized by an
//! actual point configuration for small `t > 0`, all perturbed predicates are
//! mutually consistent.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::point::Sign;

/// Decompose a finite double into `(m, e)` with value `m * 2^e`.
fn decompose(v: f64) -> (i64, i64) {
    if v == 0.0 {
        return (0, 0);
    }
    let bits = v.to_bits();
    let negative = bits >> 63 == 1;
    let exp_bits = ((bits >> 52) & 0x7ff) as i64;
    let frac = (bits & ((1u64 << 52) - 1)) as i64;
    let (m, e) = if exp_bits == 0 {
        (frac, -1074)
    } else {
        (frac | (1i64 << 52), exp_bits - 1075)
    };
    (if negative { -m } else { m }, e)
}

fn sign_of(v: &BigInt) -> Sign {
    if v.is_positive() {
        Sign::Positive
    } else if v.is_negative() {
        Sign::Negative
    } else {
        Sign::Zero
    }
}

/// Common scale exponent `s` so that every `x * 2^s` is an integer.
fn coord_scale(vals: &[f64]) -> i64 {
    let mut s = 0i64;
    for &v in vals {
        let (m, e) = decompose(v);
        if m != 0 {
            s = s.max(-e);
        }
    }
    s
}

fn scaled(v: f64, s: i64) -> BigInt {
    let (m, e) = decompose(v);
    if m == 0 {
        return BigInt::zero();
    }
    let shift = e + s;
    debug_assert!(shift >= 0, "scale exponent too small");
    BigInt::from(m) << shift
}

fn det2(a: &BigInt, b: &BigInt, c: &BigInt, d: &BigInt) -> BigInt {
    a * d - b * c
}

fn det3(m: &[[BigInt; 3]; 3]) -> BigInt {
    &m[0][0] * det2(&m[1][1], &m[1][2], &m[2][1], &m[2][2])
        - &m[0][1] * det2(&m[1][0], &m[1][2], &m[2][0], &m[2][2])
        + &m[0][2] * det2(&m[1][0], &m[1][1], &m[2][0], &m[2][1])
}

// ---------------------------------------------------------------------------
// Raw (unperturbed) exact signs
// ---------------------------------------------------------------------------

/// Exact sign of `det3(b - a, c - a, d - a)`.
pub fn orient3d_sign(a: [f64; 3], b: [f64; 3], c: [f64; 3], d: [f64; 3]) -> Sign {
    let mut vals = [0.0; 12];
    vals[0..3].copy_from_slice(&a);
    vals[3..6].copy_from_slice(&b);
    vals[6..9].copy_from_slice(&c);
    vals[9..12].copy_from_slice(&d);
    let s = coord_scale(&vals);
    let p = |p: [f64; 3]| [scaled(p[0], s), scaled(p[1], s), scaled(p[2], s)];
    let (pa, pb, pc, pd) = (p(a), p(b), p(c), p(d));
    let row = |u: &[BigInt; 3]| [&u[0] - &pa[0], &u[1] - &pa[1], &u[2] - &pa[2]];
    let m = [row(&pb), row(&pc), row(&pd)];
    sign_of(&det3(&m))
}

/// Exact sign of the 2x2 determinant `det(b - a, c - a)` in the plane.
pub fn orient2d_sign(a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> Sign {
    let vals = [a[0], a[1], b[0], b[1], c[0], c[1]];
    let s = coord_scale(&vals);
    let ux = scaled(b[0], s) - scaled(a[0], s);
    let uy = scaled(b[1], s) - scaled(a[1], s);
    let vx = scaled(c[0], s) - scaled(a[0], s);
    let vy = scaled(c[1], s) - scaled(a[1], s);
    sign_of(&(ux * vy - uy * vx))
}

/// Exact sign of the lifted 4x4 power determinant, rows `a..d` translated by
/// `e`: columns are `p - e` and `|p - e|^2 - w_p + w_e`. Equal to the
/// untranslated 5x5 lifted determinant.
pub fn power_det_sign(pts: &[[f64; 3]; 5], wts: &[f64; 5]) -> Sign {
    let mut coords = Vec::with_capacity(15);
    for p in pts {
        coords.extend_from_slice(p);
    }
    let sc = coord_scale(&coords);
    let sw = wts
        .iter()
        .map(|&w| {
            let (m, e) = decompose(w);
            if m == 0 {
                0
            } else {
                // weight scale is 2*sc, so require 2*sc >= -e
                (-e + 1) / 2
            }
        })
        .max()
        .unwrap();
    let s = sc.max(sw);

    let p: Vec<[BigInt; 3]> = pts
        .iter()
        .map(|q| [scaled(q[0], s), scaled(q[1], s), scaled(q[2], s)])
        .collect();
    let w: Vec<BigInt> = wts.iter().map(|&q| scaled(q, 2 * s)).collect();

    let mut rows: Vec<([BigInt; 3], BigInt)> = Vec::with_capacity(4);
    for i in 0..4 {
        let d = [&p[i][0] - &p[4][0], &p[i][1] - &p[4][1], &p[i][2] - &p[4][2]];
        let lift = &d[0] * &d[0] + &d[1] * &d[1] + &d[2] * &d[2] - &w[i] + &w[4];
        rows.push((d, lift));
    }
    sign_of(&power_det4(&rows))
}

fn power_det4(rows: &[([BigInt; 3], BigInt)]) -> BigInt {
    let xyz = |skip: usize| -> [[BigInt; 3]; 3] {
        let mut out: Vec<[BigInt; 3]> = Vec::with_capacity(3);
        for (i, (d, _)) in rows.iter().enumerate() {
            if i != skip {
                out.push(d.clone());
            }
        }
        out.try_into().unwrap()
    };
    let m_a = det3(&xyz(0));
    let m_b = det3(&xyz(1));
    let m_c = det3(&xyz(2));
    let m_d = det3(&xyz(3));
    -&rows[0].1 * m_a + &rows[1].1 * m_b - &rows[2].1 * m_c + &rows[3].1 * m_d
}

// ---------------------------------------------------------------------------
// Perturbed signs (polynomials in the infinitesimal t)
// ---------------------------------------------------------------------------

type Poly = Vec<BigInt>;

fn padd(a: &Poly, b: &Poly) -> Poly {
    let n = a.len().max(b.len());
    let mut out = vec![BigInt::zero(); n];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] += c;
    }
    out
}

fn psub(a: &Poly, b: &Poly) -> Poly {
    let n = a.len().max(b.len());
    let mut out = vec![BigInt::zero(); n];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    out
}

fn pmul(a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        for (j, cb) in b.iter().enumerate() {
            if !cb.is_zero() {
                out[i + j] += ca * cb;
            }
        }
    }
    out
}

fn det3p(m: &[[Poly; 3]; 3]) -> Poly {
    let c0 = psub(&pmul(&m[1][1], &m[2][2]), &pmul(&m[1][2], &m[2][1]));
    let c1 = psub(&pmul(&m[1][0], &m[2][2]), &pmul(&m[1][2], &m[2][0]));
    let c2 = psub(&pmul(&m[1][0], &m[2][1]), &pmul(&m[1][1], &m[2][0]));
    psub(&padd(&pmul(&m[0][0], &c0), &pmul(&m[0][2], &c2)), &pmul(&m[0][1], &c1))
}

/// Perturbation direction for a point id: `(l, l^2, l^3)` with `l = id`.
fn direction(id: u32) -> [BigInt; 3] {
    let l = BigInt::from(id);
    let l2 = &l * &l;
    let l3 = &l2 * &l;
    [l, l2, l3]
}

fn first_nonzero_sign(poly: &Poly, skip_constant: bool) -> Option<Sign> {
    let start = usize::from(skip_constant);
    debug_assert!(!skip_constant || poly[0].is_zero());
    poly[start..].iter().map(sign_of).find(|s| *s != Sign::Zero)
}

/// Perturbed orientation: never `Zero` for four points with distinct ids.
pub fn orient3d_perturbed_sign(
    a: ([f64; 3], u32),
    b: ([f64; 3], u32),
    c: ([f64; 3], u32),
    d: ([f64; 3], u32),
) -> Sign {
    let mut vals = Vec::with_capacity(12);
    for p in [&a.0, &b.0, &c.0, &d.0] {
        vals.extend_from_slice(p);
    }
    let s = coord_scale(&vals);
    let pt = |p: &([f64; 3], u32)| {
        (
            [scaled(p.0[0], s), scaled(p.0[1], s), scaled(p.0[2], s)],
            direction(p.1),
        )
    };
    let (pa, pb, pc, pd) = (pt(&a), pt(&b), pt(&c), pt(&d));
    let row = |u: &([BigInt; 3], [BigInt; 3])| -> [Poly; 3] {
        [0, 1, 2].map(|k| vec![&u.0[k] - &pa.0[k], &u.1[k] - &pa.1[k]])
    };
    let m = [row(&pb), row(&pc), row(&pd)];
    let det = det3p(&m);
    first_nonzero_sign(&det, false).expect("perturbation ids must be distinct")
}

/// Perturbed lifted power determinant sign; never `Zero` for distinct ids.
/// Same row/column convention as [`power_det_sign`].
pub fn power_det_perturbed_sign(pts: &[[f64; 3]; 5], ids: &[u32; 5], wts: &[f64; 5]) -> Sign {
    let mut coords = Vec::with_capacity(15);
    for p in pts {
        coords.extend_from_slice(p);
    }
    let sc = coord_scale(&coords);
    let sw = wts
        .iter()
        .map(|&w| {
            let (m, e) = decompose(w);
            if m == 0 {
                0
            } else {
                (-e + 1) / 2
            }
        })
        .max()
        .unwrap();
    let s = sc.max(sw);

    let p: Vec<[BigInt; 3]> = pts
        .iter()
        .map(|q| [scaled(q[0], s), scaled(q[1], s), scaled(q[2], s)])
        .collect();
    let w: Vec<BigInt> = wts.iter().map(|&q| scaled(q, 2 * s)).collect();
    let v: Vec<[BigInt; 3]> = ids.iter().map(|&id| direction(id)).collect();

    // Row for point i translated by point 4: coordinates are degree-1
    // polynomials, the lifted entry |D(t)|^2 - dw is degree 2.
    let mut rows: Vec<([Poly; 3], Poly)> = Vec::with_capacity(4);
    for i in 0..4 {
        let d: [BigInt; 3] = [0, 1, 2].map(|k| &p[i][k] - &p[4][k]);
        let vd: [BigInt; 3] = [0, 1, 2].map(|k| &v[i][k] - &v[4][k]);
        let mut l0 = -&w[i] + &w[4];
        let mut l1 = BigInt::zero();
        let mut l2 = BigInt::zero();
        for k in 0..3 {
            l0 += &d[k] * &d[k];
            l1 += 2 * (&d[k] * &vd[k]);
            l2 += &vd[k] * &vd[k];
        }
        let coord = [0, 1, 2].map(|k| vec![d[k].clone(), vd[k].clone()]);
        rows.push((coord, vec![l0, l1, l2]));
    }

    let xyz = |skip: usize| -> [[Poly; 3]; 3] {
        let mut out: Vec<[Poly; 3]> = Vec::with_capacity(3);
        for (i, (c, _)) in rows.iter().enumerate() {
            if i != skip {
                out.push(c.clone());
            }
        }
        out.try_into().unwrap()
    };
    let m_a = det3p(&xyz(0));
    let m_b = det3p(&xyz(1));
    let m_c = det3p(&xyz(2));
    let m_d = det3p(&xyz(3));
    let det = padd(
        &psub(&pmul(&rows[1].1, &m_b), &pmul(&rows[0].1, &m_a)),
        &psub(&pmul(&rows[3].1, &m_d), &pmul(&rows[2].1, &m_c)),
    );
    first_nonzero_sign(&det, false).expect("perturbation ids must be distinct")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decompose_round_trips() {
        for v in [0.0, 1.0, -1.5, 0.1, 3.25e-300, -7.0e200, f64::MIN_POSITIVE / 4.0] {
            let (m, e) = decompose(v);
            assert_eq!(m as f64 * 2f64.powi(e as i32), v);
        }
    }

    #[test]
    fn orient_sign_matches_f64_on_easy_input() {
        let s = orient3d_sign([0., 0., 0.], [1., 0., 0.], [0., 1., 0.], [0., 0., 1.]);
        assert_eq!(s, Sign::Positive);
        let s = orient3d_sign([0., 0., 0.], [1., 0., 0.], [0., 1., 0.], [1., 1., 0.]);
        assert_eq!(s, Sign::Zero);
    }

    #[test]
    fn perturbed_orientation_resolves_coplanar_points() {
        // Four coplanar points: the raw sign vanishes, the perturbed one
        // is nonzero and flips under transposition.
        let a = ([0., 0., 0.], 0);
        let b = ([1., 0., 0.], 1);
        let c = ([0., 1., 0.], 2);
        let d = ([1., 1., 0.], 3);
        let s = orient3d_perturbed_sign(a, b, c, d);
        assert_ne!(s, Sign::Zero);
        assert_eq!(orient3d_perturbed_sign(b, a, c, d), s.flip());
    }

    #[test]
    fn perturbed_power_det_resolves_cospherical_points() {
        // Five corners of the unit cube share a circumsphere.
        let pts = [
            [0., 0., 0.],
            [1., 0., 1.],
            [1., 1., 0.],
            [0., 1., 1.],
            [1., 0., 0.],
        ];
        let ids = [0, 1, 2, 3, 4];
        let wts = [0.0; 5];
        assert_eq!(power_det_sign(&pts, &wts), Sign::Zero);
        let s = power_det_perturbed_sign(&pts, &ids, &wts);
        assert_ne!(s, Sign::Zero);
        // Swapping two rows flips the determinant.
        let pts2 = [pts[1], pts[0], pts[2], pts[3], pts[4]];
        let ids2 = [1, 0, 2, 3, 4];
        assert_eq!(power_det_perturbed_sign(&pts2, &ids2, &wts), s.flip());
    }
}
