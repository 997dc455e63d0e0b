use std::collections::HashMap;

use super::{DeltaComplex, Edge, Tetrahedron, Triangle, FACE_POSITIONS};
use crate::category::{edge_slot, TET_EDGES};
use crate::error::{Error, Result};

/// Names accepted by [`builtin_manifold`]. `surface_times_circle:s2:<m>` is accepted too.
pub const BUILTIN_NAMES: [&str; 5] = ["s3_two_tets", "s3_boundary_4simplex", "t3_one_vertex", "s2xs1", "empty"];

/// Ordered triangles and signs of ∂Δ³.
const SPHERE: [([usize; 3], i8); 4] = [([1, 2, 3], 1), ([0, 2, 3], -1), ([0, 1, 3], 1), ([0, 1, 2], -1)];

pub fn builtin_manifold(name: &str) -> Result<DeltaComplex> {
    match name {
        "s3_two_tets" => DeltaComplex::from_ordered_tetra_list(4, &[([0, 1, 2, 3], 1), ([0, 1, 2, 3], -1)]),
        "s3_boundary_4simplex" => {
            let facets: Vec<_> = (0..5)
                .map(|k| {
                    let mut v = [0; 4];
                    let mut it = (0..5).filter(|&x| x != k);
                    v.iter_mut().for_each(|s| *s = it.next().expect("four vertices"));
                    (v, if k % 2 == 0 { 1 } else { -1 })
                })
                .collect();
            DeltaComplex::from_ordered_tetra_list(5, &facets)
        }
        "t3_one_vertex" => Ok(t3_one_vertex()),
        "s2xs1" => surface_times_circle(4, &SPHERE, 3),
        "empty" => Ok(DeltaComplex::empty()),
        _ => {
            let parts: Vec<&str> = name.split(':').collect();
            match parts.as_slice() {
                ["surface_times_circle", "s2", m] => {
                    let m = m.parse().map_err(|_| Error::invalid(format!("bad circle length `{m}`")))?;
                    surface_times_circle(4, &SPHERE, m)
                }
                ["surface_times_circle", s, _] => Err(Error::invalid(format!("unknown surface `{s}`"))),
                _ => Err(Error::invalid(format!("unknown builtin manifold `{name}`"))),
            }
        }
    }
}

/// The cube `[0,1]³` with opposite faces identified, cut into the six Kuhn simplices
/// `0 → e_π1 → e_π1+e_π2 → (1,1,1)`. One vertex, seven edges.
fn t3_one_vertex() -> DeltaComplex {
    let mut edges = Vec::new();
    let mut edge_of: HashMap<u8, usize> = HashMap::new();
    let mut triangles = Vec::new();
    let mut tri_of: HashMap<(u8, u8), usize> = HashMap::new();
    let mut tets = Vec::new();
    let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    for p in perms {
        let inversions = (0..3).flat_map(|i| (i + 1..3).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
        // corner bitmasks of the Kuhn path
        let pts = [0u8, 1 << p[0], (1 << p[0]) | (1 << p[1]), 7];
        let mut edge = |i: usize, j: usize| {
            let d = pts[j] ^ pts[i];
            *edge_of.entry(d).or_insert_with(|| {
                edges.push(Edge { ends: [0, 0] });
                edges.len() - 1
            })
        };
        let te = TET_EDGES.map(|(i, j)| edge(i, j));
        let faces = FACE_POSITIONS.map(|[a, b, c]| {
            let key = (pts[b] ^ pts[a], pts[c] ^ pts[b]);
            *tri_of.entry(key).or_insert_with(|| {
                triangles.push(Triangle {
                    vertices: [0; 3],
                    edges: [te[edge_slot(a, b)], te[edge_slot(a, c)], te[edge_slot(b, c)]],
                });
                triangles.len() - 1
            })
        });
        tets.push(Tetrahedron { vertices: [0; 4], edges: te, faces, sign: if inversions % 2 == 0 { 1 } else { -1 } });
    }
    DeltaComplex::new(1, edges, triangles, tets).expect("indices in range")
}

/// Triangulates `S × S¹` for a closed oriented surface `S` given by ordered triangles with
/// signs, using `m ≥ 3` circle segments and three staircase tetrahedra per prism.
pub fn surface_times_circle(surface_vertices: usize, triangles: &[([usize; 3], i8)], m: usize) -> Result<DeltaComplex> {
    if m < 3 {
        return Err(Error::invalid(format!("circle needs at least 3 segments, got {m}")));
    }
    let id = |s: usize, t: usize| s * m + t;
    let mut tets = Vec::with_capacity(3 * m * triangles.len());
    for &([a, b, c], sign) in triangles {
        for t in 0..m {
            // The closing segment runs against the circle's direction.
            let (lo, hi, dir) = if t + 1 < m { (t, t + 1, 1) } else { (0, m - 1, -1) };
            let s = sign * dir;
            tets.push(([id(a, lo), id(b, lo), id(c, lo), id(c, hi)], s));
            tets.push(([id(a, lo), id(b, lo), id(b, hi), id(c, hi)], -s));
            tets.push(([id(a, lo), id(a, hi), id(b, hi), id(c, hi)], s));
        }
    }
    DeltaComplex::from_ordered_tetra_list(surface_vertices * m, &tets)
}
