//! Randomized incremental construction of Delaunay and regular
//! triangulations.
//!
//! The triangulation is maintained over the convex hull with a symbolic
//! infinite vertex: every hull facet is shared with an infinite tetrahedron,
//! so point location and cavity flooding never special-case the boundary.
//! All combinatorial decisions go through the perturbed predicates, so the
//! algorithm runs in a consistent general-position world no matter how
//! degenerate the input is; the built complex is the triangulation of that
//! perturbed configuration.
//!
//! Point location is a remembering stochastic walk from the last tetrahedron
//! created, with a linear conflict scan as a safety net. Insertion is the
//! usual conflict-cavity retriangulation. A weighted point whose located
//! tetrahedron it does not conflict with is redundant and skipped; vertices
//! stranded by a cavity (all incident tetrahedra destroyed) become redundant
//! as well.

use std::collections::{BTreeSet, HashMap};
use std::time::Instant;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use super::mesh::{Tet, TetMesh, BOUNDARY};
use crate::geom::{orient3d_perturbed, power_in_sphere_perturbed};
use crate::point::{Point3, Sign, WeightedPoint};

pub(crate) const INF: u32 = u32::MAX;

/// Face opposite each vertex slot, oriented outward for a positively
/// oriented tetrahedron.
pub(crate) const FACES: [[usize; 3]; 4] = [[1, 2, 3], [0, 3, 2], [0, 1, 3], [0, 2, 1]];

/// The twelve even permutations of four slots, used to canonicalize
/// tetrahedra without flipping their orientation.
pub(crate) const EVEN_PERMS: [[usize; 4]; 12] = [
    [0, 1, 2, 3],
    [0, 2, 3, 1],
    [0, 3, 1, 2],
    [1, 0, 3, 2],
    [1, 2, 0, 3],
    [1, 3, 2, 0],
    [2, 0, 1, 3],
    [2, 1, 3, 0],
    [2, 3, 0, 1],
    [3, 0, 2, 1],
    [3, 1, 0, 2],
    [3, 2, 1, 0],
];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BuildError {
    #[error("input is empty")]
    Empty,
    #[error("points {a} and {b} are exact duplicates")]
    DuplicatePoint { a: u32, b: u32 },
    #[error("point at index {index} has a non-finite coordinate or weight")]
    NonFinite { index: usize },
    #[error("point ids are not unique (id {id} repeats)")]
    DuplicateId { id: u32 },
}

/// Delaunay triangulation of `points`; the insertion order is the
/// seed-determined uniform random permutation.
pub fn build_delaunay(points: &[Point3], seed: u64) -> Result<TetMesh, BuildError> {
    let wpts: Vec<WeightedPoint> = points.iter().map(|p| WeightedPoint::unweighted(*p)).collect();
    build_impl(wpts, false, seed)
}

/// Regular triangulation of weighted `points`. With all weights zero this
/// reproduces [`build_delaunay`] tet for tet.
pub fn build_regular(points: &[WeightedPoint], seed: u64) -> Result<TetMesh, BuildError> {
    build_impl(points.to_vec(), true, seed)
}

pub(crate) fn validate_input(pts: &[WeightedPoint], weighted: bool) -> Result<(), BuildError> {
    if pts.is_empty() {
        return Err(BuildError::Empty);
    }
    for (index, p) in pts.iter().enumerate() {
        if !p.point.is_finite() || !p.weight.is_finite() {
            return Err(BuildError::NonFinite { index });
        }
    }
    let mut ids: Vec<u32> = pts.iter().map(|p| p.point.id).collect();
    ids.sort_unstable();
    if let Some(w) = ids.windows(2).find(|w| w[0] == w[1]) {
        return Err(BuildError::DuplicateId { id: w[0] });
    }
    // Exact duplicates: same coordinates, and for regular inputs also the
    // same weight. Near-duplicates are legal.
    let mut order: Vec<usize> = (0..pts.len()).collect();
    let key = |i: usize| {
        let p = &pts[i];
        (
            p.point.x,
            p.point.y,
            p.point.z,
            if weighted { p.weight } else { 0.0 },
        )
    };
    order.sort_by(|&a, &b| key(a).partial_cmp(&key(b)).unwrap());
    for w in order.windows(2) {
        let (i, j) = (w[0], w[1]);
        let (p, q) = (&pts[i], &pts[j]);
        if p.point.same_position(&q.point) && (!weighted || p.weight == q.weight) {
            return Err(BuildError::DuplicatePoint {
                a: pts[i.min(j)].point.id,
                b: pts[i.max(j)].point.id,
            });
        }
    }
    Ok(())
}

/// Seed-determined uniform permutation of `0..n` (Fisher-Yates over a
/// ChaCha8 stream keyed by the little-endian seed).
pub(crate) fn insertion_order(n: usize, seed: u64) -> Vec<u32> {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    let mut rng = ChaCha8Rng::from_seed(key);
    let mut order: Vec<u32> = (0..n as u32).collect();
    for i in (1..n).rev() {
        let j = (rng.next_u64() % (i as u64 + 1)) as usize;
        order.swap(i, j);
    }
    order
}

fn build_impl(pts: Vec<WeightedPoint>, weighted: bool, seed: u64) -> Result<TetMesh, BuildError> {
    validate_input(&pts, weighted)?;
    let start = Instant::now();
    let n = pts.len();

    if n < 4 {
        // Too few points to carry tetrahedra: the perturbed-limit complex is
        // the full simplex on the vertices, with nothing redundant.
        return Ok(TetMesh {
            vertices: pts,
            weighted,
            tets: Vec::new(),
            redundant: BTreeSet::new(),
            build_time: start.elapsed(),
        });
    }

    let order = insertion_order(n, seed);
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8] = 1; // separate stream for the walk's face shuffling
    let mut builder = Builder {
        pts: &pts,
        tets: Vec::with_capacity(8 * n),
        free: Vec::new(),
        stamp: Vec::new(),
        epoch: 1,
        incident: vec![0u32; n],
        redundant: BTreeSet::new(),
        rng: ChaCha8Rng::from_seed(key),
        last_finite: 0,
        alive: 0,
        face_map: HashMap::new(),
    };

    builder.init(&order);
    for &pid in &order[4..] {
        builder.insert(pid);
    }

    let mesh = builder.finish(weighted, start);
    Ok(mesh)
}

#[derive(Debug, Clone, Copy)]
struct BTet {
    verts: [u32; 4],
    neighbors: [u32; 4],
    alive: bool,
}

struct Builder<'a> {
    pts: &'a [WeightedPoint],
    tets: Vec<BTet>,
    free: Vec<u32>,
    stamp: Vec<u64>,
    epoch: u64,
    incident: Vec<u32>,
    redundant: BTreeSet<u32>,
    rng: ChaCha8Rng,
    last_finite: u32,
    alive: usize,
    face_map: HashMap<[u32; 3], (u32, usize)>,
}

impl<'a> Builder<'a> {
    fn wp(&self, id: u32) -> &WeightedPoint {
        &self.pts[id as usize]
    }

    fn pt(&self, id: u32) -> &Point3 {
        &self.pts[id as usize].point
    }

    fn is_infinite(&self, tid: u32) -> bool {
        self.tets[tid as usize].verts[3] == INF
    }

    fn conflicts(&self, tid: u32, p: &WeightedPoint) -> bool {
        let t = &self.tets[tid as usize];
        if t.verts[3] == INF {
            orient3d_perturbed(
                self.pt(t.verts[0]),
                self.pt(t.verts[1]),
                self.pt(t.verts[2]),
                &p.point,
            ) == Sign::Positive
        } else {
            power_in_sphere_perturbed(
                self.wp(t.verts[0]),
                self.wp(t.verts[1]),
                self.wp(t.verts[2]),
                self.wp(t.verts[3]),
                p,
            ) == Sign::Positive
        }
    }

    fn create(&mut self, verts: [u32; 4], neighbors: [u32; 4]) -> u32 {
        let tet = BTet {
            verts,
            neighbors,
            alive: true,
        };
        self.alive += 1;
        for v in verts {
            if v != INF {
                self.incident[v as usize] += 1;
            }
        }
        if let Some(tid) = self.free.pop() {
            self.tets[tid as usize] = tet;
            self.stamp[tid as usize] = 0;
            tid
        } else {
            self.tets.push(tet);
            self.stamp.push(0);
            (self.tets.len() - 1) as u32
        }
    }

    fn kill(&mut self, tid: u32) {
        let t = self.tets[tid as usize];
        debug_assert!(t.alive);
        self.tets[tid as usize].alive = false;
        self.alive -= 1;
        for v in t.verts {
            if v != INF {
                self.incident[v as usize] -= 1;
            }
        }
        self.free.push(tid);
    }

    fn init(&mut self, order: &[u32]) {
        let mut q = [order[0], order[1], order[2], order[3]];
        if orient3d_perturbed(self.pt(q[0]), self.pt(q[1]), self.pt(q[2]), self.pt(q[3]))
            == Sign::Negative
        {
            q.swap(2, 3);
        }
        let finite = self.create([q[0], q[1], q[2], q[3]], [BOUNDARY; 4]);
        let mut infs = [0u32; 4];
        for (i, face) in FACES.iter().enumerate() {
            let f = face.map(|s| q[s]);
            infs[i] = self.create([f[0], f[1], f[2], INF], [BOUNDARY; 4]);
        }
        // Link everything through a local face map.
        let mut map: HashMap<[u32; 3], (u32, usize)> = HashMap::new();
        for tid in std::iter::once(finite).chain(infs) {
            for fi in 0..4 {
                let key = self.face_key(tid, fi);
                if let Some((other, os)) = map.insert(key, (tid, fi)) {
                    self.tets[tid as usize].neighbors[fi] = other;
                    self.tets[other as usize].neighbors[os] = tid;
                }
            }
        }
        self.last_finite = finite;
    }

    fn face_key(&self, tid: u32, fi: usize) -> [u32; 3] {
        let t = &self.tets[tid as usize];
        let mut f = FACES[fi].map(|s| t.verts[s]);
        f.sort_unstable();
        f
    }

    /// Walk toward `p` and return some tetrahedron in conflict with it, or
    /// `None` when `p` is redundant.
    fn locate(&mut self, p: &WeightedPoint) -> Option<u32> {
        let mut cur = self.last_finite;
        if !self.tets[cur as usize].alive || self.is_infinite(cur) {
            cur = (0..self.tets.len() as u32)
                .find(|&tid| self.tets[tid as usize].alive && !self.is_infinite(tid))
                .expect("a finite tetrahedron always survives");
        }
        let mut prev = BOUNDARY;
        let cap = 4 * self.alive + 64;
        for _ in 0..cap {
            if self.is_infinite(cur) {
                // We stepped outside the hull, which is itself the conflict
                // certificate for this infinite tetrahedron.
                debug_assert!(self.conflicts(cur, p));
                return Some(cur);
            }
            let t = self.tets[cur as usize];
            let offset = (self.rng.next_u32() & 3) as usize;
            let mut stepped = false;
            for k in 0..4 {
                let fi = (k + offset) & 3;
                let nb = t.neighbors[fi];
                if nb == prev {
                    continue;
                }
                let f = FACES[fi].map(|s| t.verts[s]);
                if orient3d_perturbed(self.pt(f[0]), self.pt(f[1]), self.pt(f[2]), &p.point)
                    == Sign::Positive
                {
                    prev = cur;
                    cur = nb;
                    stepped = true;
                    break;
                }
            }
            if !stepped {
                return if self.conflicts(cur, p) { Some(cur) } else { None };
            }
        }
        // Safety net: the stochastic walk gave up, scan for a conflict.
        (0..self.tets.len() as u32)
            .find(|&tid| self.tets[tid as usize].alive && self.conflicts(tid, p))
    }

    fn insert(&mut self, pid: u32) {
        let p = *self.wp(pid);
        let Some(seed_tet) = self.locate(&p) else {
            self.redundant.insert(pid);
            return;
        };

        // Flood the conflict region. Stamps: epoch = in cavity,
        // epoch + 1 = tested and out.
        self.epoch += 2;
        let epoch = self.epoch;
        let mut cavity = vec![seed_tet];
        self.stamp[seed_tet as usize] = epoch;
        let mut i = 0;
        while i < cavity.len() {
            let t = self.tets[cavity[i] as usize];
            for nb in t.neighbors {
                let s = self.stamp[nb as usize];
                if s >= epoch {
                    continue;
                }
                if self.conflicts(nb, &p) {
                    self.stamp[nb as usize] = epoch;
                    cavity.push(nb);
                } else {
                    self.stamp[nb as usize] = epoch + 1;
                }
            }
            i += 1;
        }

        // Vertices possibly stranded by the cavity.
        let mut touched: Vec<u32> = Vec::new();
        for &ct in &cavity {
            for v in self.tets[ct as usize].verts {
                if v != INF {
                    touched.push(v);
                }
            }
        }

        // Star the new point onto every boundary face.
        self.face_map.clear();
        let mut first_finite_new = BOUNDARY;
        for ci in 0..cavity.len() {
            let ct = cavity[ci];
            for fi in 0..4 {
                let nb = self.tets[ct as usize].neighbors[fi];
                if self.stamp[nb as usize] == epoch {
                    continue; // internal cavity face
                }
                let t = self.tets[ct as usize];
                let f = FACES[fi].map(|s| t.verts[s]);
                // The face is outward from the cavity tet; flipping it makes
                // the new tetrahedron positively oriented around `pid`.
                let mut verts = [f[0], f[2], f[1], pid];
                normalize_inf(&mut verts);
                let nt = self.create(verts, [BOUNDARY; 4]);
                if verts[3] != INF && first_finite_new == BOUNDARY {
                    first_finite_new = nt;
                }

                // Link across the base face to the surviving neighbor.
                let pslot = verts.iter().position(|&v| v == pid).unwrap();
                self.tets[nt as usize].neighbors[pslot] = nb;
                let ns = self.tets[nb as usize]
                    .neighbors
                    .iter()
                    .position(|&x| x == ct)
                    .unwrap();
                self.tets[nb as usize].neighbors[ns] = nt;

                // Link the faces containing `pid` among the new tets.
                for fj in 0..4 {
                    if fj == pslot {
                        continue;
                    }
                    let key = self.face_key(nt, fj);
                    match self.face_map.remove(&key) {
                        Some((other, os)) => {
                            self.tets[nt as usize].neighbors[fj] = other;
                            self.tets[other as usize].neighbors[os] = nt;
                        }
                        None => {
                            self.face_map.insert(key, (nt, fj));
                        }
                    }
                }
            }
        }
        debug_assert!(self.face_map.is_empty(), "unmatched new faces");
        debug_assert_ne!(first_finite_new, BOUNDARY, "insertion created no finite tet");

        for &ct in &cavity {
            self.kill(ct);
        }
        touched.sort_unstable();
        touched.dedup();
        for v in touched {
            if self.incident[v as usize] == 0 {
                self.redundant.insert(v);
            }
        }
        self.last_finite = first_finite_new;
    }

    fn finish(self, weighted: bool, start: Instant) -> TetMesh {
        let mut canon: Vec<([u32; 4], [u32; 4], u32)> = Vec::with_capacity(self.alive);
        for (tid, t) in self.tets.iter().enumerate() {
            if !t.alive || t.verts[3] == INF {
                continue;
            }
            let (verts, neighbors) = canonical_even(t.verts, t.neighbors);
            canon.push((verts, neighbors, tid as u32));
        }
        canon.sort_unstable_by_key(|c| c.0);
        let mut remap: HashMap<u32, u32> = HashMap::with_capacity(canon.len());
        for (new_id, c) in canon.iter().enumerate() {
            remap.insert(c.2, new_id as u32);
        }
        let tets: Vec<Tet> = canon
            .iter()
            .map(|(verts, neighbors, _)| Tet {
                verts: *verts,
                neighbors: neighbors.map(|nb| {
                    if nb == BOUNDARY || self.tets[nb as usize].verts[3] == INF {
                        BOUNDARY
                    } else {
                        remap[&nb]
                    }
                }),
            })
            .collect();

        TetMesh {
            vertices: self.pts.to_vec(),
            weighted,
            tets,
            redundant: self.redundant,
            build_time: start.elapsed(),
        }
    }
}

/// Move the infinite vertex to slot 3 with an even (orientation-preserving)
/// permutation.
fn normalize_inf(v: &mut [u32; 4]) {
    if let Some(k) = v.iter().position(|&x| x == INF) {
        if k != 3 {
            v.swap(k, 3);
            let (a, b) = match k {
                0 => (1, 2),
                1 => (0, 2),
                _ => (0, 1),
            };
            v.swap(a, b);
        }
    }
}

/// Lexicographically smallest even permutation of the tetrahedron, with
/// neighbors carried along.
pub(crate) fn canonical_even(verts: [u32; 4], neighbors: [u32; 4]) -> ([u32; 4], [u32; 4]) {
    let mut best = (verts, neighbors);
    for perm in &EVEN_PERMS[1..] {
        let v = perm.map(|i| verts[i]);
        if v < best.0 {
            best = (v, perm.map(|i| neighbors[i]));
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: f64, y: f64, z: f64, id: u32) -> Point3 {
        Point3::new(x, y, z, id)
    }

    #[test]
    fn four_points_make_one_tet() {
        let pts = vec![
            p(0., 0., 0., 0),
            p(1., 0., 0., 1),
            p(0., 1., 0., 2),
            p(0., 0., 1., 3),
        ];
        let mesh = build_delaunay(&pts, 7).unwrap();
        assert_eq!(mesh.tets.len(), 1);
        assert_eq!(mesh.edges().len(), 6);
        assert_eq!(mesh.triangles().len(), 4);
        mesh.validate().unwrap();
    }

    #[test]
    fn cube_corners_triangulate_cleanly() {
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
        for seed in 0..8 {
            let mesh = build_delaunay(&pts, seed).unwrap();
            assert!(
                mesh.tets.len() == 5 || mesh.tets.len() == 6,
                "cube must give 5 or 6 tets, got {}",
                mesh.tets.len()
            );
            mesh.validate().unwrap();
            mesh.verify_empty_spheres().unwrap();
        }
    }

    #[test]
    fn duplicate_points_are_rejected() {
        let pts = vec![
            p(0., 0., 0., 0),
            p(1., 0., 0., 1),
            p(1., 0., 0., 2),
            p(0., 0., 1., 3),
        ];
        assert_eq!(
            build_delaunay(&pts, 0).map(|_| ()),
            Err(BuildError::DuplicatePoint { a: 1, b: 2 })
        );
    }

    #[test]
    fn small_inputs_build_degenerate_complexes() {
        let mesh = build_delaunay(&[p(0., 0., 0., 0), p(1., 0., 0., 1)], 0).unwrap();
        assert_eq!(mesh.tets.len(), 0);
        assert_eq!(mesh.edges().len(), 1);
    }

    #[test]
    fn seeds_give_identical_complexes_on_generic_input() {
        // Insertion-order independence: the perturbed triangulation is
        // unique, so different seeds must agree.
        let pts: Vec<Point3> = (0..30)
            .map(|i| {
                let f = i as f64;
                p(
                    (f * 0.7345).sin() * 3.0,
                    (f * 1.912).cos() * 2.0,
                    (f * 0.413).sin() + 0.1 * f,
                    i,
                )
            })
            .collect();
        let m1 = build_delaunay(&pts, 1).unwrap();
        let m2 = build_delaunay(&pts, 99).unwrap();
        assert!(m1.same_complex(&m2));
        m1.validate().unwrap();
    }

    #[test]
    fn zero_weights_reduce_to_delaunay() {
        let pts: Vec<Point3> = (0..25)
            .map(|i| {
                let f = i as f64 + 1.0;
                p((f * 1.37).sin(), (f * 2.19).cos(), (f * 0.71).sin(), i)
            })
            .collect();
        let wpts: Vec<WeightedPoint> = pts.iter().map(|q| WeightedPoint::unweighted(*q)).collect();
        let md = build_delaunay(&pts, 5).unwrap();
        let mr = build_regular(&wpts, 5).unwrap();
        assert!(md.same_complex(&mr));
    }
}
