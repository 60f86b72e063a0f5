//! Brute-force triangulation oracles: enumerate every 4-tuple and keep the
//! ones whose circumsphere (orthosphere) is empty under the perturbation
//! order. Quintic cost, so capped at 40 points. Deliberately independent of
//! the incremental machinery; the two must agree exactly.

use std::collections::{BTreeSet, HashMap};
use std::time::Instant;

use thiserror::Error;

use super::build::{canonical_even, validate_input, BuildError};
use super::mesh::{Tet, TetMesh, BOUNDARY};
use crate::geom::{orient3d_perturbed, power_in_sphere_perturbed};
use crate::point::{Point3, Sign, WeightedPoint};

pub const BRUTE_FORCE_MAX: usize = 40;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BruteError {
    #[error("brute-force oracle is capped at {BRUTE_FORCE_MAX} points, got {n}")]
    TooLarge { n: usize },
    #[error(transparent)]
    Invalid(#[from] BuildError),
}

/// Delaunay triangulation by exhaustive empty-circumsphere enumeration.
/// The `seed` parameter mirrors the incremental builder's signature; the
/// perturbation order is keyed on point ids, so the result is seed-free.
pub fn verify_delaunay_bruteforce(points: &[Point3], _seed: u64) -> Result<TetMesh, BruteError> {
    let wpts: Vec<WeightedPoint> = points.iter().map(|p| WeightedPoint::unweighted(*p)).collect();
    brute_impl(wpts, false)
}

/// Regular-triangulation counterpart: every 4-tuple with an orthosphere
/// further than orthogonal from all other balls.
pub fn verify_regular_bruteforce(points: &[WeightedPoint], _seed: u64) -> Result<TetMesh, BruteError> {
    brute_impl(points.to_vec(), true)
}

fn brute_impl(pts: Vec<WeightedPoint>, weighted: bool) -> Result<TetMesh, BruteError> {
    let n = pts.len();
    if n > BRUTE_FORCE_MAX {
        return Err(BruteError::TooLarge { n });
    }
    validate_input(&pts, weighted)?;
    let start = Instant::now();

    if n < 4 {
        return Ok(TetMesh {
            vertices: pts,
            weighted,
            tets: Vec::new(),
            redundant: BTreeSet::new(),
            build_time: start.elapsed(),
        });
    }

    let mut kept: Vec<[u32; 4]> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                'tuple: for l in k + 1..n {
                    let mut verts = [i as u32, j as u32, k as u32, l as u32];
                    if orient3d_perturbed(
                        &pts[i].point,
                        &pts[j].point,
                        &pts[k].point,
                        &pts[l].point,
                    ) == Sign::Negative
                    {
                        verts.swap(2, 3);
                    }
                    let [a, b, c, d] = verts.map(|v| pts[v as usize]);
                    for m in 0..n {
                        if m == i || m == j || m == k || m == l {
                            continue;
                        }
                        if power_in_sphere_perturbed(&a, &b, &c, &d, &pts[m]) == Sign::Positive {
                            continue 'tuple;
                        }
                    }
                    kept.push(verts);
                }
            }
        }
    }

    // Canonicalize, sort, and derive adjacency from shared faces.
    let mut canon: Vec<[u32; 4]> = kept
        .into_iter()
        .map(|v| canonical_even(v, [BOUNDARY; 4]).0)
        .collect();
    canon.sort_unstable();
    let mut tets: Vec<Tet> = canon
        .iter()
        .map(|&verts| Tet {
            verts,
            neighbors: [BOUNDARY; 4],
        })
        .collect();
    let mut face_map: HashMap<[u32; 3], (usize, usize)> = HashMap::new();
    for ti in 0..tets.len() {
        for slot in 0..4 {
            let mut f: Vec<u32> = (0..4)
                .filter(|&s| s != slot)
                .map(|s| tets[ti].verts[s])
                .collect();
            f.sort_unstable();
            let key = [f[0], f[1], f[2]];
            if let Some((tj, sj)) = face_map.insert(key, (ti, slot)) {
                tets[ti].neighbors[slot] = tj as u32;
                tets[tj].neighbors[sj] = ti as u32;
            }
        }
    }

    let mut used = vec![false; n];
    for t in &tets {
        for v in t.verts {
            used[v as usize] = true;
        }
    }
    let redundant: BTreeSet<u32> = (0..n as u32).filter(|&v| !used[v as usize]).collect();

    Ok(TetMesh {
        vertices: pts,
        weighted,
        tets,
        redundant,
        build_time: start.elapsed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tri::build::{build_delaunay, build_regular};

    fn p(x: f64, y: f64, z: f64, id: u32) -> Point3 {
        Point3::new(x, y, z, id)
    }

    #[test]
    fn four_points_give_the_single_tet() {
        let pts = vec![
            p(0., 0., 0., 0),
            p(1., 0., 0., 1),
            p(0., 1., 0., 2),
            p(0., 0., 1., 3),
        ];
        let mesh = verify_delaunay_bruteforce(&pts, 0).unwrap();
        assert_eq!(mesh.tets.len(), 1);
        mesh.validate().unwrap();
    }

    #[test]
    fn five_point_star_matches_in_sphere_signs() {
        // Four spread-out points with a fifth inside the circumsphere: the
        // inner point splits the tet into a star.
        let pts = vec![
            p(0., 0., 0., 0),
            p(4., 0., 0., 1),
            p(0., 4., 0., 2),
            p(0., 0., 4., 3),
            p(1., 1., 1., 4),
        ];
        let mesh = verify_delaunay_bruteforce(&pts, 0).unwrap();
        assert!(mesh.tets.len() == 4, "inner point stars the tet into 4");
        mesh.validate().unwrap();
        mesh.verify_empty_spheres().unwrap();
    }

    #[test]
    fn too_large_input_is_rejected() {
        let pts: Vec<Point3> = (0..41).map(|i| p(i as f64, 0., 0., i)).collect();
        assert!(matches!(
            verify_delaunay_bruteforce(&pts, 0),
            Err(BruteError::TooLarge { n: 41 })
        ));
    }

    #[test]
    fn oracle_matches_incremental_on_exact_cube() {
        let pts: Vec<Point3> = (0..8)
            .map(|i| {
                p(
                    (i & 1) as f64,
                    ((i >> 1) & 1) as f64,
                    ((i >> 2) & 1) as f64,
                    i,
                )
            })
            .collect();
        let oracle = verify_delaunay_bruteforce(&pts, 3).unwrap();
        let built = build_delaunay(&pts, 3).unwrap();
        assert!(
            oracle.same_complex(&built),
            "oracle {} tets vs built {} tets",
            oracle.tets.len(),
            built.tets.len()
        );
        oracle.validate().unwrap();
        oracle.verify_empty_spheres().unwrap();
    }

    #[test]
    fn weighted_oracle_matches_incremental() {
        let pts: Vec<WeightedPoint> = (0..9)
            .map(|i| {
                let f = i as f64 + 1.0;
                WeightedPoint::new(
                    p((f * 1.37).sin() * 2.0, (f * 2.19).cos() * 2.0, (f * 0.71).sin() * 2.0, i),
                    (f * 3.7).sin() * 0.5,
                )
            })
            .collect();
        let oracle = verify_regular_bruteforce(&pts, 1).unwrap();
        let built = build_regular(&pts, 1).unwrap();
        assert!(oracle.same_complex(&built));
    }
}
