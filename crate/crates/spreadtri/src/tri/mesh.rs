//! The triangulation complex and its derived counts.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Duration;

use crate::geom::{orient3d_perturbed, power_in_sphere_perturbed};
use crate::point::{Point3, Sign, WeightedPoint};

/// Neighbor sentinel for hull faces.
pub const BOUNDARY: u32 = u32::MAX;

/// One tetrahedron: vertex ids in positive orientation (under the
/// perturbation order) and the neighbor opposite each vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Tet {
    pub verts: [u32; 4],
    pub neighbors: [u32; 4],
}

/// A finished triangulation. Tetrahedra are stored in a canonical order
/// (sorted by vertex set, each in its lexicographically smallest even
/// permutation), so two meshes over the same vertex list are combinatorially
/// equal iff their `tets` and `redundant` fields are equal.
#[derive(Debug, Clone)]
pub struct TetMesh {
    pub vertices: Vec<WeightedPoint>,
    /// False when the mesh was built as an unweighted Delaunay triangulation.
    pub weighted: bool,
    pub tets: Vec<Tet>,
    /// Weighted points whose power cell is empty under the perturbation
    /// order. Retained in `vertices` so ids stay stable.
    pub redundant: BTreeSet<u32>,
    pub build_time: Duration,
}

/// Complexity counts of a mesh, the quantities the experiments measure.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexityStats {
    pub n: usize,
    pub n_redundant: usize,
    pub edges: usize,
    pub triangles: usize,
    pub tets: usize,
    pub max_degree: usize,
    pub degree_histogram: BTreeMap<usize, usize>,
    pub build_millis: f64,
}

impl TetMesh {
    pub fn point(&self, id: u32) -> &Point3 {
        &self.vertices[id as usize].point
    }

    pub fn weighted_point(&self, id: u32) -> &WeightedPoint {
        &self.vertices[id as usize]
    }

    pub fn non_redundant_ids(&self) -> Vec<u32> {
        (0..self.vertices.len() as u32)
            .filter(|id| !self.redundant.contains(id))
            .collect()
    }

    /// Undirected edge set. Complexes too small to carry tetrahedra fall back
    /// to the perturbed-limit hull complex: a segment for two vertices, a
    /// triangle for three.
    pub fn edges(&self) -> BTreeSet<(u32, u32)> {
        let mut edges = BTreeSet::new();
        if self.tets.is_empty() {
            let ids = self.non_redundant_ids();
            for i in 0..ids.len() {
                for j in i + 1..ids.len() {
                    edges.insert((ids[i], ids[j]));
                }
            }
            return edges;
        }
        for t in &self.tets {
            for i in 0..4 {
                for j in i + 1..4 {
                    let (a, b) = (t.verts[i].min(t.verts[j]), t.verts[i].max(t.verts[j]));
                    edges.insert((a, b));
                }
            }
        }
        edges
    }

    /// Undirected triangle set, one sorted triple per face.
    pub fn triangles(&self) -> BTreeSet<[u32; 3]> {
        let mut tris = BTreeSet::new();
        if self.tets.is_empty() {
            let ids = self.non_redundant_ids();
            if ids.len() == 3 {
                let mut t = [ids[0], ids[1], ids[2]];
                t.sort_unstable();
                tris.insert(t);
            }
            return tris;
        }
        for t in &self.tets {
            for skip in 0..4 {
                let mut f: Vec<u32> = (0..4).filter(|&k| k != skip).map(|k| t.verts[k]).collect();
                f.sort_unstable();
                tris.insert([f[0], f[1], f[2]]);
            }
        }
        tris
    }

    /// True when the two meshes have the same tetrahedra and redundant set.
    pub fn same_complex(&self, other: &TetMesh) -> bool {
        self.redundant == other.redundant
            && self.tets.len() == other.tets.len()
            && self
                .tets
                .iter()
                .zip(&other.tets)
                .all(|(a, b)| a.verts == b.verts)
    }

    /// Structural validation: orientation, neighbor symmetry, face sharing,
    /// and the Euler relation. Used by tests and the brute-force oracle.
    pub fn validate(&self) -> Result<(), String> {
        for (ti, t) in self.tets.iter().enumerate() {
            let [a, b, c, d] = t.verts.map(|v| *self.point(v));
            if orient3d_perturbed(&a, &b, &c, &d) != Sign::Positive {
                return Err(format!("tet {ti} is not positively oriented"));
            }
        }

        // Every interior triangle is shared by exactly two tets and the
        // neighbor pointers agree with the shared faces.
        let mut face_map: BTreeMap<[u32; 3], Vec<(usize, usize)>> = BTreeMap::new();
        for (ti, t) in self.tets.iter().enumerate() {
            for skip in 0..4 {
                let mut f: Vec<u32> = (0..4).filter(|&k| k != skip).map(|k| t.verts[k]).collect();
                f.sort_unstable();
                face_map.entry([f[0], f[1], f[2]]).or_default().push((ti, skip));
            }
        }
        for (face, owners) in &face_map {
            match owners.len() {
                1 => {
                    let (ti, slot) = owners[0];
                    if self.tets[ti].neighbors[slot] != BOUNDARY {
                        return Err(format!("hull face {face:?} has a neighbor pointer"));
                    }
                }
                2 => {
                    let (ti, si) = owners[0];
                    let (tj, sj) = owners[1];
                    if self.tets[ti].neighbors[si] != tj as u32
                        || self.tets[tj].neighbors[sj] != ti as u32
                    {
                        return Err(format!("face {face:?} has asymmetric neighbors"));
                    }
                }
                k => return Err(format!("face {face:?} shared by {k} tets")),
            }
        }

        // Non-redundant vertices all appear in some tet when tets exist.
        if !self.tets.is_empty() {
            let mut seen = vec![false; self.vertices.len()];
            for t in &self.tets {
                for v in t.verts {
                    seen[v as usize] = true;
                }
            }
            for id in 0..self.vertices.len() as u32 {
                let in_tet = seen[id as usize];
                let redundant = self.redundant.contains(&id);
                if in_tet == redundant {
                    return Err(format!("vertex {id}: in_tet={in_tet} redundant={redundant}"));
                }
            }
        }

        let s = stats(self);
        let n_active = (s.n - s.n_redundant) as i64;
        if n_active - s.edges as i64 + s.triangles as i64 - s.tets as i64 != 1 {
            return Err("Euler relation violated".into());
        }
        Ok(())
    }

    /// Assert the empty-orthosphere property against every vertex, under the
    /// perturbation order. Quadratic; meant for verification runs.
    pub fn verify_empty_spheres(&self) -> Result<(), String> {
        for (ti, t) in self.tets.iter().enumerate() {
            let [a, b, c, d] = t.verts.map(|v| *self.weighted_point(v));
            for id in 0..self.vertices.len() as u32 {
                if t.verts.contains(&id) {
                    continue;
                }
                let e = self.weighted_point(id);
                if power_in_sphere_perturbed(&a, &b, &c, &d, e) == Sign::Positive {
                    return Err(format!("vertex {id} conflicts with tet {ti}"));
                }
            }
        }
        Ok(())
    }
}

/// Exact counts by set enumeration, with the counting relations asserted.
pub fn stats(mesh: &TetMesh) -> ComplexityStats {
    let edges = mesh.edges();
    let triangles = mesh.triangles();
    let n = mesh.vertices.len();
    let n_redundant = mesh.redundant.len();
    let n_active = n - n_redundant;

    let mut degree = vec![0usize; n];
    for &(a, b) in &edges {
        degree[a as usize] += 1;
        degree[b as usize] += 1;
    }
    let mut degree_histogram = BTreeMap::new();
    for &d in &degree {
        *degree_histogram.entry(d).or_insert(0usize) += 1;
    }
    let max_degree = degree.iter().copied().max().unwrap_or(0);

    let s = ComplexityStats {
        n,
        n_redundant,
        edges: edges.len(),
        triangles: triangles.len(),
        tets: mesh.tets.len(),
        max_degree,
        degree_histogram,
        build_millis: mesh.build_time.as_secs_f64() * 1e3,
    };

    assert_eq!(
        n_active as i64 - s.edges as i64 + s.triangles as i64 - s.tets as i64,
        1,
        "Euler relation must hold"
    );
    if s.tets > 0 {
        // The planar-link bounds only apply to full-dimensional complexes.
        assert!(s.triangles <= 2 * s.edges - 2 * n_active);
        assert!(s.tets <= s.edges - n_active);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wp(x: f64, y: f64, z: f64, id: u32) -> WeightedPoint {
        WeightedPoint::unweighted(Point3::new(x, y, z, id))
    }

    fn single_tet_mesh() -> TetMesh {
        TetMesh {
            vertices: vec![
                wp(0., 0., 0., 0),
                wp(1., 0., 0., 1),
                wp(0., 1., 0., 2),
                wp(0., 0., 1., 3),
            ],
            weighted: false,
            tets: vec![Tet {
                verts: [0, 1, 2, 3],
                neighbors: [BOUNDARY; 4],
            }],
            redundant: BTreeSet::new(),
            build_time: Duration::ZERO,
        }
    }

    #[test]
    fn single_tet_counts() {
        let s = stats(&single_tet_mesh());
        assert_eq!((s.n, s.edges, s.triangles, s.tets), (4, 6, 4, 1));
        assert_eq!(s.max_degree, 3);
    }

    #[test]
    fn two_tets_sharing_a_face() {
        // Second tet glued across face {1,2,3}.
        let mut mesh = single_tet_mesh();
        mesh.vertices.push(wp(1., 1., 1., 4));
        // Face {1,2,3} is opposite vertex 0 in tet 0, opposite vertex 4 in tet 1.
        mesh.tets = vec![
            Tet {
                verts: [0, 1, 2, 3],
                neighbors: [1, BOUNDARY, BOUNDARY, BOUNDARY],
            },
            Tet {
                verts: [1, 2, 3, 4],
                neighbors: [BOUNDARY, BOUNDARY, BOUNDARY, 0],
            },
        ];
        let s = stats(&mesh);
        assert_eq!((s.n, s.edges, s.triangles, s.tets), (5, 9, 7, 2));
        mesh.validate().unwrap();
    }

    #[test]
    fn degenerate_small_complexes() {
        let mut mesh = single_tet_mesh();
        mesh.vertices.truncate(2);
        mesh.tets.clear();
        let s = stats(&mesh);
        assert_eq!((s.n, s.edges, s.triangles, s.tets), (2, 1, 0, 0));

        mesh.vertices = vec![wp(0., 0., 0., 0), wp(1., 0., 0., 1), wp(3., 0., 0., 2)];
        let s = stats(&mesh);
        assert_eq!((s.n, s.edges, s.triangles, s.tets), (3, 3, 1, 0));
    }
}
