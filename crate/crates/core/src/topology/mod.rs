//! Ordered Δ-complex triangulations of closed oriented 3-manifolds.
//!
//! Simplices carry intrinsic local vertex orders, so complexes with a single vertex (or
//! repeated vertices inside a simplex) are representable. A tetrahedron lists its edges in
//! the slots (01),(02),(03),(12),(13),(23) and its faces in the slots (123),(023),(013),(012).

mod builtin;
mod io;
mod moves;

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::category::{edge_slot, TET_EDGES};
use crate::error::{Error, Result};
use crate::report::{Check, ValidationReport};

pub use builtin::{builtin_manifold, surface_times_circle, BUILTIN_NAMES};
pub use io::TRIANGULATION_FORMAT;
pub use moves::{random_pachner_walk, random_pachner_walk_trace, MoveKind, MoveSpec, WalkOptions};

/// Positions of the tetrahedron's vertices that survive in face slot `k` (slot `k` omits `k`).
pub const FACE_POSITIONS: [[usize; 3]; 4] = [[1, 2, 3], [0, 2, 3], [0, 1, 3], [0, 1, 2]];

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Edge {
    /// `(tail, head)` in the edge's local order.
    pub ends: [usize; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Triangle {
    pub vertices: [usize; 3],
    /// Edges (01), (02), (12).
    pub edges: [usize; 3],
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Tetrahedron {
    pub vertices: [usize; 4],
    pub edges: [usize; 6],
    pub faces: [usize; 4],
    pub sign: i8,
}

impl Tetrahedron {
    /// Orientation induced on face slot `k`.
    pub fn face_sign(&self, k: usize) -> i8 {
        if k.is_multiple_of(2) {
            self.sign
        } else {
            -self.sign
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DeltaComplex {
    num_vertices: usize,
    edges: Vec<Edge>,
    triangles: Vec<Triangle>,
    tets: Vec<Tetrahedron>,
}

impl DeltaComplex {
    /// Assembles a complex from its full skeleton. Only index ranges and signs are checked
    /// here; everything else is left to [`DeltaComplex::validate`].
    pub fn new(num_vertices: usize, edges: Vec<Edge>, triangles: Vec<Triangle>, tets: Vec<Tetrahedron>) -> Result<Self> {
        let range = |what, index: usize, size: usize| {
            if index < size {
                Ok(())
            } else {
                Err(Error::OutOfRange { what, index, size })
            }
        };
        for e in &edges {
            for &v in &e.ends {
                range("vertex", v, num_vertices)?;
            }
        }
        for t in &triangles {
            for &v in &t.vertices {
                range("vertex", v, num_vertices)?;
            }
            for &e in &t.edges {
                range("edge", e, edges.len())?;
            }
        }
        for (id, t) in tets.iter().enumerate() {
            for &v in &t.vertices {
                range("vertex", v, num_vertices)?;
            }
            for &e in &t.edges {
                range("edge", e, edges.len())?;
            }
            for &f in &t.faces {
                range("triangle", f, triangles.len())?;
            }
            if t.sign != 1 && t.sign != -1 {
                return Err(Error::invalid(format!("tetrahedron {id} has sign {}", t.sign)));
            }
        }
        Ok(DeltaComplex { num_vertices, edges, triangles, tets })
    }

    /// The empty complex.
    pub fn empty() -> Self {
        DeltaComplex { num_vertices: 0, edges: Vec::new(), triangles: Vec::new(), tets: Vec::new() }
    }

    /// Builds a complex from tetrahedra given by strictly increasing vertex tuples, merging
    /// edges and triangles with equal vertex tuples.
    pub fn from_ordered_tetra_list(num_vertices: usize, tets: &[([usize; 4], i8)]) -> Result<Self> {
        use std::collections::HashMap;
        let mut edge_ids: HashMap<[usize; 2], usize> = HashMap::new();
        let mut tri_ids: HashMap<[usize; 3], usize> = HashMap::new();
        let mut edges = Vec::new();
        let mut triangles: Vec<Triangle> = Vec::new();
        let mut out = Vec::with_capacity(tets.len());
        for (id, &(v, sign)) in tets.iter().enumerate() {
            if !v.windows(2).all(|w| w[0] < w[1]) {
                return Err(Error::invalid(format!("tetrahedron {id} {v:?} is not strictly increasing")));
            }
            if let Some(&bad) = v.iter().find(|&&x| x >= num_vertices) {
                return Err(Error::OutOfRange { what: "vertex", index: bad, size: num_vertices });
            }
            let mut edge = |a: usize, b: usize| {
                *edge_ids.entry([a, b]).or_insert_with(|| {
                    edges.push(Edge { ends: [a, b] });
                    edges.len() - 1
                })
            };
            let te: [usize; 6] = TET_EDGES.map(|(i, j)| edge(v[i], v[j]));
            let faces = FACE_POSITIONS.map(|[a, b, c]| {
                *tri_ids.entry([v[a], v[b], v[c]]).or_insert_with(|| {
                    triangles.push(Triangle {
                        vertices: [v[a], v[b], v[c]],
                        edges: [te[edge_slot(a, b)], te[edge_slot(a, c)], te[edge_slot(b, c)]],
                    });
                    triangles.len() - 1
                })
            });
            out.push(Tetrahedron { vertices: v, edges: te, faces, sign });
        }
        DeltaComplex::new(num_vertices, edges, triangles, out)
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn triangles(&self) -> &[Triangle] {
        &self.triangles
    }

    pub fn tets(&self) -> &[Tetrahedron] {
        &self.tets
    }

    /// `(V, E, F, T)`.
    pub fn counts(&self) -> [usize; 4] {
        [self.num_vertices, self.edges.len(), self.triangles.len(), self.tets.len()]
    }

    pub fn euler_characteristic(&self) -> i64 {
        let [v, e, f, t] = self.counts().map(|x| x as i64);
        v - e + f - t
    }

    /// Every `(tet, face slot)` where each triangle occurs.
    pub fn triangle_incidences(&self) -> Vec<Vec<(usize, usize)>> {
        let mut out = vec![Vec::new(); self.triangles.len()];
        for (t, tet) in self.tets.iter().enumerate() {
            for (k, &f) in tet.faces.iter().enumerate() {
                out[f].push((t, k));
            }
        }
        out
    }

    /// Every `(tet, edge slot)` where each edge occurs.
    pub fn edge_incidences(&self) -> Vec<Vec<(usize, usize)>> {
        let mut out = vec![Vec::new(); self.edges.len()];
        for (t, tet) in self.tets.iter().enumerate() {
            for (s, &e) in tet.edges.iter().enumerate() {
                out[e].push((t, s));
            }
        }
        out
    }

    /// Every `(tet, position)` where each vertex occurs.
    pub fn vertex_incidences(&self) -> Vec<Vec<(usize, usize)>> {
        let mut out = vec![Vec::new(); self.num_vertices];
        for (t, tet) in self.tets.iter().enumerate() {
            for (p, &v) in tet.vertices.iter().enumerate() {
                out[v].push((t, p));
            }
        }
        out
    }

    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        report.push(Check::from_failure("incidence", self.incidence_violation()));
        let inc = self.triangle_incidences();
        let closed = inc
            .iter()
            .enumerate()
            .filter(|(_, o)| o.len() != 2)
            .map(|(f, o)| format!("triangle {f} has {} incidences", o.len()))
            .collect::<Vec<_>>();
        report.push(Check::from_failure("closedness", summarize(closed)));
        let oriented = inc
            .iter()
            .enumerate()
            .filter(|(_, o)| o.len() == 2)
            .filter(|(_, o)| self.tets[o[0].0].face_sign(o[0].1) == self.tets[o[1].0].face_sign(o[1].1))
            .map(|(f, o)| format!("triangle {f} has equal induced signs in tetrahedra {} and {}", o[0].0, o[1].0))
            .collect::<Vec<_>>();
        report.push(Check::from_failure("orientation", summarize(oriented)));
        report.push(Check::from_failure("connectivity", self.connectivity_violation(&inc)));
        report
    }

    fn incidence_violation(&self) -> Option<String> {
        for (id, e) in self.triangles.iter().enumerate() {
            let [v0, v1, v2] = e.vertices;
            for (slot, want) in [[v0, v1], [v0, v2], [v1, v2]].into_iter().enumerate() {
                if self.edges[e.edges[slot]].ends != want {
                    return Some(format!("triangle {id}: edge {} does not run {:?}", e.edges[slot], want));
                }
            }
        }
        for (id, t) in self.tets.iter().enumerate() {
            for (slot, (i, j)) in TET_EDGES.iter().enumerate() {
                if self.edges[t.edges[slot]].ends != [t.vertices[*i], t.vertices[*j]] {
                    return Some(format!("tetrahedron {id}: edge slot {i}{j} holds edge {} with the wrong ends", t.edges[slot]));
                }
            }
            for (k, pos) in FACE_POSITIONS.iter().enumerate() {
                let tri = &self.triangles[t.faces[k]];
                let verts = pos.map(|p| t.vertices[p]);
                let edges = [
                    t.edges[edge_slot(pos[0], pos[1])],
                    t.edges[edge_slot(pos[0], pos[2])],
                    t.edges[edge_slot(pos[1], pos[2])],
                ];
                if tri.vertices != verts || tri.edges != edges {
                    return Some(format!("tetrahedron {id}: face slot {k} does not match triangle {}", t.faces[k]));
                }
            }
        }
        let mut used_v = vec![false; self.num_vertices];
        let mut used_e = vec![false; self.edges.len()];
        let mut used_f = vec![false; self.triangles.len()];
        for t in &self.tets {
            t.vertices.iter().for_each(|&v| used_v[v] = true);
            t.edges.iter().for_each(|&e| used_e[e] = true);
            t.faces.iter().for_each(|&f| used_f[f] = true);
        }
        if let Some(v) = used_v.iter().position(|u| !u) {
            return Some(format!("vertex {v} lies in no tetrahedron"));
        }
        if let Some(e) = used_e.iter().position(|u| !u) {
            return Some(format!("edge {e} lies in no tetrahedron"));
        }
        if let Some(f) = used_f.iter().position(|u| !u) {
            return Some(format!("triangle {f} lies in no tetrahedron"));
        }
        None
    }

    fn connectivity_violation(&self, inc: &[Vec<(usize, usize)>]) -> Option<String> {
        if self.tets.is_empty() {
            return None;
        }
        let mut seen = vec![false; self.tets.len()];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(t) = queue.pop_front() {
            for &f in &self.tets[t].faces {
                for &(u, _) in &inc[f] {
                    if !seen[u] {
                        seen[u] = true;
                        queue.push_back(u);
                    }
                }
            }
        }
        seen.iter().position(|s| !s).map(|t| format!("tetrahedron {t} is not connected to tetrahedron 0"))
    }

    /// Renames vertex `v` to `perm[v]`, re-sorting every simplex into the new global order and
    /// flipping tetrahedron signs by the parity of the sort.
    pub fn relabel_vertices(&self, perm: &[usize]) -> Result<Self> {
        let n = self.num_vertices;
        let mut seen = vec![false; n];
        if perm.len() != n || !perm.iter().all(|&p| p < n && !std::mem::replace(&mut seen[p], true)) {
            return Err(Error::invalid(format!("not a permutation of 0..{n}")));
        }
        let distinct = |vs: &[usize]| vs.iter().enumerate().all(|(i, a)| vs[..i].iter().all(|b| b != a));
        let edges = self
            .edges
            .iter()
            .enumerate()
            .map(|(id, e)| {
                if !distinct(&e.ends) {
                    return Err(Error::invalid(format!("edge {id} has a repeated vertex")));
                }
                let mut ends = e.ends.map(|v| perm[v]);
                ends.sort_unstable();
                Ok(Edge { ends })
            })
            .collect::<Result<Vec<_>>>()?;
        let triangles = self
            .triangles
            .iter()
            .enumerate()
            .map(|(id, t)| {
                if !distinct(&t.vertices) {
                    return Err(Error::invalid(format!("triangle {id} has a repeated vertex")));
                }
                let mut order = [0, 1, 2];
                order.sort_by_key(|&p| perm[t.vertices[p]]);
                let slot = |a: usize, b: usize| {
                    let (a, b) = (a.min(b), a.max(b));
                    t.edges[if a == 0 { b - 1 } else { 2 }]
                };
                Ok(Triangle {
                    vertices: order.map(|p| perm[t.vertices[p]]),
                    edges: [slot(order[0], order[1]), slot(order[0], order[2]), slot(order[1], order[2])],
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let tets = self
            .tets
            .iter()
            .enumerate()
            .map(|(id, t)| {
                if !distinct(&t.vertices) {
                    return Err(Error::invalid(format!("tetrahedron {id} has a repeated vertex")));
                }
                let mut order = [0, 1, 2, 3];
                order.sort_by_key(|&p| perm[t.vertices[p]]);
                let inversions = (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j))).filter(|&(i, j)| order[i] > order[j]).count();
                Ok(Tetrahedron {
                    vertices: order.map(|p| perm[t.vertices[p]]),
                    edges: TET_EDGES.map(|(i, j)| t.edges[edge_slot(order[i].min(order[j]), order[i].max(order[j]))]),
                    faces: order.map(|p| t.faces[p]),
                    sign: if inversions % 2 == 0 { t.sign } else { -t.sign },
                })
            })
            .collect::<Result<Vec<_>>>()?;
        DeltaComplex::new(n, edges, triangles, tets)
    }

    /// A signature of the face pairing that is equal exactly for complexes related by an
    /// orientation-preserving isomorphism, ignoring the local vertex orders. For every start
    /// tetrahedron and labelling of its corners, the gluings are walked breadth-first and the
    /// lexicographically least encoding is kept. Entries are, per tetrahedron and corner label
    /// `k`, the neighbor across the face opposite `k`, where the four labels go, and the
    /// orientation in label order.
    pub fn canonical_form(&self) -> Vec<(usize, [u8; 4], i8)> {
        use itertools::Itertools;
        let inc = self.triangle_incidences();
        let across = |t: usize, k: usize| -> (usize, usize) {
            let f = self.tets[t].faces[k];
            inc[f].iter().copied().find(|&o| o != (t, k)).unwrap_or((t, k))
        };
        let parity = |p: &[u8; 4]| {
            let inv = (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
            if inv % 2 == 0 { 1 } else { -1 }
        };
        let n = self.tets.len();
        let mut best: Option<Vec<(usize, [u8; 4], i8)>> = None;
        for start in 0..n {
            for perm in (0..4u8).permutations(4) {
                // labels[t][position] = corner label
                let mut labels: Vec<Option<[u8; 4]>> = vec![None; n];
                let mut index = vec![usize::MAX; n];
                labels[start] = Some([perm[0], perm[1], perm[2], perm[3]]);
                index[start] = 0;
                let mut order = vec![start];
                let mut code = Vec::with_capacity(4 * n);
                let mut i = 0;
                let mut worse = false;
                while i < order.len() && !worse {
                    let t = order[i];
                    i += 1;
                    let lt = labels[t].expect("labelled on discovery");
                    for k in 0..4u8 {
                        let p = lt.iter().position(|&l| l == k).expect("bijective labels");
                        let (u, q) = across(t, p);
                        let mut lu = [u8::MAX; 4];
                        for (&a, &b) in FACE_POSITIONS[p].iter().zip(&FACE_POSITIONS[q]) {
                            lu[b] = lt[a];
                        }
                        lu[q] = k;
                        if labels[u].is_none() {
                            labels[u] = Some(lu);
                            index[u] = order.len();
                            order.push(u);
                        }
                        let known = labels[u].expect("just set");
                        // where each of t's labels lands among u's labels
                        let mut image = [0u8; 4];
                        for (pos, &l) in lt.iter().enumerate() {
                            let target = if pos == p { q } else { FACE_POSITIONS[q][FACE_POSITIONS[p].iter().position(|&x| x == pos).expect("face position")] };
                            image[l as usize] = known[target];
                        }
                        code.push((index[u], image, self.tets[t].sign * parity(&lt)));
                        if let Some(b) = &best {
                            if code[..] > b[..code.len()] {
                                worse = true;
                                break;
                            }
                        }
                    }
                }
                if !worse && best.as_ref().is_none_or(|b| code < *b) {
                    best = Some(code);
                }
            }
        }
        best.unwrap_or_default()
    }
}

fn summarize(mut problems: Vec<String>) -> Option<String> {
    match problems.len() {
        0 => None,
        1 => problems.pop(),
        n => Some(format!("{} ({n} violations)", problems.swap_remove(0))),
    }
}

/// Validates `k`; see [`DeltaComplex::validate`].
pub fn validate_complex(k: &DeltaComplex) -> ValidationReport {
    k.validate()
}
