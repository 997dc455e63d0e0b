//! Pachner moves. Every move replaces some facets of a 4-simplex with five corners by the
//! complementary facets, so all four are handled by one routine once the old tetrahedra
//! have been matched to corners.

use std::collections::HashMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;
use serde::{Deserialize, Serialize};

use super::{DeltaComplex, Edge, Tetrahedron, Triangle, FACE_POSITIONS};
use crate::category::{edge_slot, TET_EDGES};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MoveKind {
    #[serde(rename = "1-4")]
    OneFour,
    #[serde(rename = "2-3")]
    TwoThree,
    #[serde(rename = "3-2")]
    ThreeTwo,
    #[serde(rename = "4-1")]
    FourOne,
}

impl MoveKind {
    pub const ALL: [MoveKind; 4] = [MoveKind::OneFour, MoveKind::TwoThree, MoveKind::ThreeTwo, MoveKind::FourOne];

    /// Change in `(V, E, F, T)`.
    pub fn signature(self) -> [i64; 4] {
        match self {
            MoveKind::OneFour => [1, 4, 6, 3],
            MoveKind::TwoThree => [0, 1, 2, 1],
            MoveKind::ThreeTwo => [0, -1, -2, -1],
            MoveKind::FourOne => [-1, -4, -6, -3],
        }
    }

    pub fn inverse(self) -> MoveKind {
        match self {
            MoveKind::OneFour => MoveKind::FourOne,
            MoveKind::TwoThree => MoveKind::ThreeTwo,
            MoveKind::ThreeTwo => MoveKind::TwoThree,
            MoveKind::FourOne => MoveKind::OneFour,
        }
    }

    fn shrinks(self) -> bool {
        matches!(self, MoveKind::ThreeTwo | MoveKind::FourOne)
    }
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MoveKind::OneFour => "1-4",
            MoveKind::TwoThree => "2-3",
            MoveKind::ThreeTwo => "3-2",
            MoveKind::FourOne => "4-1",
        })
    }
}

/// A move and its target: a tetrahedron (1-4), triangle (2-3), edge (3-2) or vertex (4-1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MoveSpec {
    pub kind: MoveKind,
    pub target: usize,
}

/// Old tetrahedra of a move with the corner assigned to each of their positions.
struct Region {
    old: Vec<(usize, [usize; 4])>,
}

fn not_applicable(kind: MoveKind, reason: impl Into<String>) -> Error {
    Error::MoveNotApplicable { kind: kind.to_string(), reason: reason.into() }
}

impl DeltaComplex {
    fn region(&self, m: MoveSpec) -> Result<Region> {
        let fail = |r: String| not_applicable(m.kind, r);
        let old = match m.kind {
            MoveKind::OneFour => {
                if m.target >= self.tets.len() {
                    return Err(fail(format!("no tetrahedron {}", m.target)));
                }
                vec![(m.target, [0, 1, 2, 3])]
            }
            MoveKind::TwoThree => {
                if m.target >= self.triangles.len() {
                    return Err(fail(format!("no triangle {}", m.target)));
                }
                let occ: Vec<(usize, usize)> = self
                    .tets
                    .iter()
                    .enumerate()
                    .flat_map(|(t, tet)| tet.faces.iter().enumerate().filter(|(_, &f)| f == m.target).map(move |(k, _)| (t, k)))
                    .collect();
                if occ.len() != 2 || occ[0].0 == occ[1].0 {
                    return Err(fail(format!("triangle {} is not shared by two distinct tetrahedra", m.target)));
                }
                occ.iter()
                    .zip([3, 4])
                    .map(|(&(t, k), apex)| {
                        let mut corners = [0; 4];
                        for (c, &p) in FACE_POSITIONS[k].iter().enumerate() {
                            corners[p] = c;
                        }
                        corners[k] = apex;
                        (t, corners)
                    })
                    .collect()
            }
            MoveKind::ThreeTwo => {
                if m.target >= self.edges.len() {
                    return Err(fail(format!("no edge {}", m.target)));
                }
                let occ: Vec<(usize, usize)> = self
                    .tets
                    .iter()
                    .enumerate()
                    .flat_map(|(t, tet)| tet.edges.iter().enumerate().filter(|(_, &e)| e == m.target).map(move |(s, _)| (t, s)))
                    .collect();
                if occ.len() != 3 || occ[0].0 == occ[1].0 || occ[0].0 == occ[2].0 || occ[1].0 == occ[2].0 {
                    return Err(fail(format!("edge {} does not have degree 3 in distinct tetrahedra", m.target)));
                }
                let mut tri_corner: Vec<usize> = Vec::new();
                let mut corner_of = |f: usize| match tri_corner.iter().position(|&x| x == f) {
                    Some(i) => i + 2,
                    None => {
                        tri_corner.push(f);
                        tri_corner.len() + 1
                    }
                };
                let mut old = Vec::with_capacity(3);
                for &(t, s) in &occ {
                    let (i, j) = TET_EDGES[s];
                    let others: Vec<usize> = (0..4).filter(|&p| p != i && p != j).collect();
                    let (p, q) = (others[0], others[1]);
                    let mut corners = [0; 4];
                    corners[i] = 0;
                    corners[j] = 1;
                    corners[p] = corner_of(self.tets[t].faces[q]);
                    corners[q] = corner_of(self.tets[t].faces[p]);
                    old.push((t, corners));
                }
                if tri_corner.len() != 3 {
                    return Err(fail(format!("the triangles around edge {} do not form a 3-cycle", m.target)));
                }
                old
            }
            MoveKind::FourOne => {
                if m.target >= self.num_vertices {
                    return Err(fail(format!("no vertex {}", m.target)));
                }
                let occ: Vec<(usize, usize)> = self
                    .tets
                    .iter()
                    .enumerate()
                    .flat_map(|(t, tet)| tet.vertices.iter().enumerate().filter(|(_, &v)| v == m.target).map(move |(p, _)| (t, p)))
                    .collect();
                let distinct = occ.iter().enumerate().all(|(i, a)| occ[..i].iter().all(|b| b.0 != a.0));
                if occ.len() != 4 || !distinct {
                    return Err(fail(format!("vertex {} does not have degree 4 in distinct tetrahedra", m.target)));
                }
                let mut edge_corner: Vec<usize> = Vec::new();
                let mut old = Vec::with_capacity(4);
                for &(t, pos) in &occ {
                    let mut corners = [4; 4];
                    for p in (0..4).filter(|&p| p != pos) {
                        let e = self.tets[t].edges[edge_slot(p.min(pos), p.max(pos))];
                        corners[p] = match edge_corner.iter().position(|&x| x == e) {
                            Some(i) => i,
                            None => {
                                edge_corner.push(e);
                                edge_corner.len() - 1
                            }
                        };
                    }
                    old.push((t, corners));
                }
                if edge_corner.len() != 4 {
                    return Err(fail(format!("the star of vertex {} is not a 4-simplex boundary", m.target)));
                }
                old
            }
        };
        Ok(Region { old })
    }

    /// Whether `m` can be applied.
    pub fn is_applicable(&self, m: MoveSpec) -> bool {
        self.region(m).and_then(|r| self.replace(m.kind, &r)).is_ok()
    }

    pub fn pachner_move(&self, m: MoveSpec) -> Result<DeltaComplex> {
        let region = self.region(m)?;
        self.replace(m.kind, &region)
    }

    /// All applicable moves, ordered by kind and then target.
    pub fn applicable_moves(&self) -> Vec<MoveSpec> {
        let mut out = Vec::new();
        for kind in MoveKind::ALL {
            let n = match kind {
                MoveKind::OneFour => self.tets.len(),
                MoveKind::TwoThree => self.triangles.len(),
                MoveKind::ThreeTwo => self.edges.len(),
                MoveKind::FourOne => self.num_vertices,
            };
            out.extend((0..n).map(|target| MoveSpec { kind, target }).filter(|&m| self.is_applicable(m)));
        }
        out
    }

    fn replace(&self, kind: MoveKind, region: &Region) -> Result<DeltaComplex> {
        let fail = |r: String| not_applicable(kind, r);
        let mut is_old_facet = [false; 5];
        for &(t, c) in &region.old {
            let mut seen = [false; 5];
            for &x in &c {
                if std::mem::replace(&mut seen[x], true) {
                    return Err(fail(format!("tetrahedron {t} meets the region twice at one corner")));
                }
            }
            let omitted = (0..5).find(|&x| !seen[x]).expect("five corners, four used");
            if std::mem::replace(&mut is_old_facet[omitted], true) {
                return Err(fail("two old tetrahedra occupy the same facet".into()));
            }
        }

        // Global vertex of each corner.
        let mut vertex: [Option<usize>; 5] = [None; 5];
        for &(t, c) in &region.old {
            for p in 0..4 {
                let v = self.tets[t].vertices[p];
                match vertex[c[p]] {
                    Some(w) if w != v => return Err(fail(format!("corner {} is both vertex {w} and {v}", c[p]))),
                    _ => vertex[c[p]] = Some(v),
                }
            }
        }

        // Rank corners by a topological sort of the old local orders.
        let mut before = [[false; 5]; 5];
        for &(_, c) in &region.old {
            for p in 0..3 {
                before[c[p]][c[p + 1]] = true;
            }
        }
        let mut rank = [usize::MAX; 5];
        let mut order = Vec::with_capacity(5);
        while order.len() < 5 {
            let next = (0..5)
                .filter(|&x| rank[x] == usize::MAX && (0..5).all(|y| !before[y][x] || rank[y] != usize::MAX))
                .min_by_key(|&x| (vertex[x].unwrap_or(usize::MAX), x))
                .ok_or_else(|| fail("local orders of the old tetrahedra are cyclic".into()))?;
            rank[next] = order.len();
            order.push(next);
        }

        let sigma = {
            let signs: Vec<i8> = region
                .old
                .iter()
                .map(|&(t, c)| {
                    let omitted = (0..5).find(|x| !c.contains(x)).expect("omitted corner");
                    self.tets[t].sign * if rank[omitted] % 2 == 0 { 1 } else { -1 }
                })
                .collect();
            if signs.iter().any(|&s| s != signs[0]) {
                return Err(fail("old tetrahedra are not coherently oriented".into()));
            }
            signs[0]
        };

        // Existing edge and triangle of each corner pair / triple (keyed by corners in rank order).
        let mut pair: HashMap<[usize; 2], usize> = HashMap::new();
        let mut triple: HashMap<[usize; 3], usize> = HashMap::new();
        for &(t, c) in &region.old {
            let tet = &self.tets[t];
            for (s, &(i, j)) in TET_EDGES.iter().enumerate() {
                if *pair.entry([c[i], c[j]]).or_insert(tet.edges[s]) != tet.edges[s] {
                    return Err(fail(format!("corners {}{} carry two different edges", c[i], c[j])));
                }
            }
            for (k, &[a, b, d]) in FACE_POSITIONS.iter().enumerate() {
                if *triple.entry([c[a], c[b], c[d]]).or_insert(tet.faces[k]) != tet.faces[k] {
                    return Err(fail(format!("corners {}{}{} carry two different triangles", c[a], c[b], c[d])));
                }
            }
        }

        // A simplex is interior to the old (new) side when every facet containing it is old (new).
        let status = |s: &[usize]| -> Option<bool> {
            let containing: Vec<bool> = (0..5).filter(|x| !s.contains(x)).map(|x| is_old_facet[x]).collect();
            if containing.iter().all(|&o| o) {
                Some(true)
            } else if containing.iter().all(|&o| !o) {
                Some(false)
            } else {
                None
            }
        };
        let sorted = |mut s: Vec<usize>| {
            s.sort_by_key(|&x| rank[x]);
            s
        };
        let old_tets: Vec<usize> = region.old.iter().map(|r| r.0).collect();
        let outside = self.tets.iter().enumerate().filter(|(t, _)| !old_tets.contains(t)).map(|(_, tet)| tet);

        let mut removed_vertices = Vec::new();
        let mut removed_edges = Vec::new();
        let mut removed_triangles = Vec::new();
        let mut new_vertex = [None; 5];
        for x in 0..5 {
            match status(&[x]) {
                Some(true) => {
                    let v = vertex[x].expect("interior corner lies in an old tetrahedron");
                    if (0..5).any(|y| y != x && vertex[y] == Some(v)) {
                        return Err(fail(format!("vertex {v} occurs at several corners")));
                    }
                    removed_vertices.push(v);
                }
                Some(false) => new_vertex[x] = Some(self.num_vertices),
                None => {}
            }
        }
        for a in 0..5 {
            for b in a + 1..5 {
                if status(&[a, b]) == Some(true) {
                    let s = sorted(vec![a, b]);
                    let e = pair[&[s[0], s[1]]];
                    if pair.iter().filter(|(_, &v)| v == e).count() > 1 {
                        return Err(fail(format!("edge {e} occurs at several corner pairs")));
                    }
                    removed_edges.push(e);
                }
                for c in b + 1..5 {
                    if status(&[a, b, c]) == Some(true) {
                        let s = sorted(vec![a, b, c]);
                        let f = triple[&[s[0], s[1], s[2]]];
                        if triple.iter().filter(|(_, &v)| v == f).count() > 1 {
                            return Err(fail(format!("triangle {f} occurs at several corner triples")));
                        }
                        removed_triangles.push(f);
                    }
                }
            }
        }
        for tet in outside {
            if let Some(v) = tet.vertices.iter().find(|v| removed_vertices.contains(v)) {
                return Err(fail(format!("vertex {v} lies outside the region")));
            }
            if let Some(e) = tet.edges.iter().find(|e| removed_edges.contains(e)) {
                return Err(fail(format!("edge {e} lies outside the region")));
            }
            if let Some(f) = tet.faces.iter().find(|f| removed_triangles.contains(f)) {
                return Err(fail(format!("triangle {f} lies outside the region")));
            }
        }

        for x in 0..5 {
            if let Some(v) = new_vertex[x] {
                vertex[x] = Some(v);
            }
        }
        let vertex = vertex.map(|v| v.expect("every corner has a vertex"));
        let mut edges = self.edges.clone();
        let mut triangles = self.triangles.clone();
        for &a in &order {
            for &b in &order[rank[a] + 1..] {
                if status(&[a, b]) == Some(false) {
                    pair.insert([a, b], edges.len());
                    edges.push(Edge { ends: [vertex[a], vertex[b]] });
                }
            }
        }
        for (i, &a) in order.iter().enumerate() {
            for (j, &b) in order.iter().enumerate().skip(i + 1) {
                for &c in &order[j + 1..] {
                    if status(&[a, b, c]) == Some(false) {
                        triple.insert([a, b, c], triangles.len());
                        triangles.push(Triangle {
                            vertices: [vertex[a], vertex[b], vertex[c]],
                            edges: [pair[&[a, b]], pair[&[a, c]], pair[&[b, c]]],
                        });
                    }
                }
            }
        }
        let mut tets: Vec<Tetrahedron> =
            self.tets.iter().enumerate().filter(|(t, _)| !old_tets.contains(t)).map(|(_, t)| t.clone()).collect();
        for omitted in (0..5).filter(|&x| !is_old_facet[x]) {
            let c: Vec<usize> = order.iter().copied().filter(|&x| x != omitted).collect();
            tets.push(Tetrahedron {
                vertices: [0, 1, 2, 3].map(|p| vertex[c[p]]),
                edges: TET_EDGES.map(|(i, j)| pair[&[c[i], c[j]]]),
                faces: FACE_POSITIONS.map(|[a, b, d]| triple[&[c[a], c[b], c[d]]]),
                sign: if rank[omitted] % 2 == 0 { -sigma } else { sigma },
            });
        }
        let num_vertices = self.num_vertices + new_vertex.iter().flatten().count();
        compact(num_vertices, edges, triangles, tets, &removed_vertices, &removed_edges, &removed_triangles)
    }
}

fn compact(
    num_vertices: usize,
    edges: Vec<Edge>,
    triangles: Vec<Triangle>,
    mut tets: Vec<Tetrahedron>,
    removed_vertices: &[usize],
    removed_edges: &[usize],
    removed_triangles: &[usize],
) -> Result<DeltaComplex> {
    fn remap(n: usize, removed: &[usize]) -> Vec<usize> {
        let mut next = 0;
        (0..n)
            .map(|i| {
                if removed.contains(&i) {
                    usize::MAX
                } else {
                    next += 1;
                    next - 1
                }
            })
            .collect()
    }
    let vmap = remap(num_vertices, removed_vertices);
    let emap = remap(edges.len(), removed_edges);
    let fmap = remap(triangles.len(), removed_triangles);
    let edges = edges
        .into_iter()
        .enumerate()
        .filter(|(i, _)| emap[*i] != usize::MAX)
        .map(|(_, e)| Edge { ends: e.ends.map(|v| vmap[v]) })
        .collect();
    let triangles = triangles
        .into_iter()
        .enumerate()
        .filter(|(i, _)| fmap[*i] != usize::MAX)
        .map(|(_, t)| Triangle { vertices: t.vertices.map(|v| vmap[v]), edges: t.edges.map(|e| emap[e]) })
        .collect();
    for t in &mut tets {
        t.vertices = t.vertices.map(|v| vmap[v]);
        t.edges = t.edges.map(|e| emap[e]);
        t.faces = t.faces.map(|f| fmap[f]);
    }
    DeltaComplex::new(num_vertices - removed_vertices.len(), edges, triangles, tets)
}

#[derive(Clone, Copy, Debug)]
#[derive(Default)]
pub struct WalkOptions {
    /// Once a step would push the tetrahedron count above this, only moves that stay within
    /// it are drawn (shrinking moves if none do). `None` means the start count plus ten.
    pub cap: Option<usize>,
}


/// Applies `steps` uniformly drawn applicable moves, seeded by `seed` through SplitMix64.
pub fn random_pachner_walk(k: &DeltaComplex, steps: usize, seed: u64) -> DeltaComplex {
    random_pachner_walk_trace(k, steps, seed, WalkOptions::default())
        .pop()
        .map(|(_, c)| c)
        .unwrap_or_else(|| k.clone())
}

/// Like [`random_pachner_walk`], returning every move with the complex it produced.
pub fn random_pachner_walk_trace(k: &DeltaComplex, steps: usize, seed: u64, opts: WalkOptions) -> Vec<(MoveSpec, DeltaComplex)> {
    let cap = opts.cap.unwrap_or(k.tets().len() + 10);
    let mut rng = SplitMix64::seed_from_u64(seed);
    let mut current = k.clone();
    let mut out = Vec::with_capacity(steps);
    for _ in 0..steps {
        let moves = current.applicable_moves();
        let t = current.tets().len() as i64;
        let within: Vec<MoveSpec> = moves.iter().copied().filter(|m| t + m.kind.signature()[3] <= cap as i64).collect();
        let shrinking: Vec<MoveSpec> = moves.iter().copied().filter(|m| m.kind.shrinks()).collect();
        let pool = if !within.is_empty() {
            within
        } else if !shrinking.is_empty() {
            shrinking
        } else {
            moves
        };
        let Some(&m) = pool.get(rng.gen_range(0..pool.len().max(1))) else { break };
        current = current.pachner_move(m).expect("drawn from applicable moves");
        out.push((m, current.clone()));
    }
    out
}
