use std::time::Instant;

use num_complex::Complex64;

use super::{check_complex, PartitionResult, Sum};
use crate::algebra::{GcgData, Phase};
use crate::error::{Error, Result};
use crate::topology::DeltaComplex;

/// `|G|^{-|T⁰|} Σ Π_tets a(g_01, g_12, g_23)_{f⁰(v_0)}^{ε}` over admissible pairs `(f⁰, g)`:
/// `f⁰(head) = φ(ḡ_e, f⁰(tail))` on every edge and `g_02 = g_01 g_12` on every triangle.
pub fn invariant_pointed(gcg: &GcgData, k: &DeltaComplex) -> Result<PartitionResult> {
    let start = Instant::now();
    let report = gcg.check_cocycles(1e-9);
    if let Some(c) = report.failures().next() {
        return Err(Error::Validation { check: c.name.clone(), detail: c.detail.clone().unwrap_or_default() });
    }
    check_complex(k)?;
    let mut search = Search::new(gcg, k);
    search.vertex(0);
    let value = search.sum.value() * (gcg.group().order() as f64).powi(-(k.num_vertices() as i32));
    Ok(PartitionResult {
        value,
        colorings_visited: search.visited,
        colorings_contributing: search.contributing,
        seconds: start.elapsed().as_secs_f64(),
    })
}

/// Either an exact phase or, for general associator tables, a complex number.
#[derive(Clone, Copy)]
enum Weight {
    Phase(Phase),
    Complex(Complex64),
}

impl Weight {
    fn mul(self, gcg: &GcgData, g: [usize; 3], chi: usize, sign: i8) -> Weight {
        match (self, gcg.associator_phase(g[0], g[1], g[2], chi)) {
            (Weight::Phase(p), Some(q)) => Weight::Phase(if sign > 0 { p + q } else { p - q }),
            (w, _) => {
                let z = gcg.associator(g[0], g[1], g[2], chi);
                let z = if sign > 0 { z } else { z.inv() };
                Weight::Complex(w.value() * z)
            }
        }
    }

    fn value(self) -> Complex64 {
        match self {
            Weight::Phase(p) => p.to_complex(),
            Weight::Complex(z) => z,
        }
    }
}

struct Search<'a> {
    gcg: &'a GcgData,
    k: &'a DeltaComplex,
    /// Triangles and tetrahedra closed by each edge.
    triangles_at: Vec<Vec<[usize; 3]>>,
    tets_at: Vec<Vec<usize>>,
    f0: Vec<usize>,
    g: Vec<usize>,
    sum: Sum,
    visited: u64,
    contributing: u64,
    paths: Vec<Vec<(usize, bool)>>,
}

impl<'a> Search<'a> {
    fn new(gcg: &'a GcgData, k: &'a DeltaComplex) -> Self {
        let mut triangles_at = vec![Vec::new(); k.edges().len()];
        let mut tets_at = vec![Vec::new(); k.edges().len()];
        for t in k.triangles() {
            let [e01, e02, e12] = t.edges;
            triangles_at[e01.max(e02).max(e12)].push([e01, e12, e02]);
        }
        for (i, t) in k.tets().iter().enumerate() {
            tets_at[*t.edges.iter().max().expect("six edges")].push(i);
        }
        Search {
            gcg,
            k,
            triangles_at,
            tets_at,
            f0: vec![0; k.num_vertices()],
            g: vec![0; k.edges().len()],
            sum: Sum::default(),
            visited: 0,
            contributing: 0,
            paths: spanning_paths(k),
        }
    }

    fn vertex(&mut self, v: usize) {
        self.visited += 1;
        if v == self.k.num_vertices() {
            self.edge(0, Weight::Phase(Phase::ZERO));
            return;
        }
        for chi in 0..self.gcg.num_chars() {
            self.f0[v] = chi;
            self.vertex(v + 1);
        }
    }

    fn edge(&mut self, e: usize, w: Weight) {
        self.visited += 1;
        if e == self.k.edges().len() {
            debug_assert!(self.path_transport_holds());
            self.sum.add(w.value());
            self.contributing += 1;
            return;
        }
        let [tail, head] = self.k.edges()[e].ends;
        let group = self.gcg.group();
        'g: for h in 0..group.order() {
            if self.gcg.phi_index(group.inv(h), self.f0[tail]) != self.f0[head] {
                continue;
            }
            self.g[e] = h;
            for &[e01, e12, e02] in &self.triangles_at[e] {
                if self.g[e02] != group.mul(self.g[e01], self.g[e12]) {
                    continue 'g;
                }
            }
            let mut next = w;
            for &t in &self.tets_at[e] {
                let tet = &self.k.tets()[t];
                let gs = [tet.edges[0], tet.edges[3], tet.edges[5]].map(|i| self.g[i]);
                next = next.mul(self.gcg, gs, self.f0[tet.vertices[0]], tet.sign);
            }
            self.edge(e + 1, next);
        }
    }

    /// On a connected complex every `f⁰(v)` is `f⁰(v₀)` transported along a path.
    fn path_transport_holds(&self) -> bool {
        let group = self.gcg.group();
        self.paths.iter().enumerate().all(|(v, path)| {
            let mut h = group.identity();
            for &(e, forward) in path {
                let ge = self.g[e];
                h = if forward { group.mul(group.inv(ge), h) } else { group.mul(ge, h) };
            }
            self.gcg.phi_index(h, self.f0[0]) == self.f0[v]
        })
    }
}

/// For each vertex, a path of `(edge, traversed tail→head)` from vertex 0 in a BFS tree.
fn spanning_paths(k: &DeltaComplex) -> Vec<Vec<(usize, bool)>> {
    let n = k.num_vertices();
    let mut paths: Vec<Option<Vec<(usize, bool)>>> = vec![None; n];
    if n == 0 {
        return Vec::new();
    }
    paths[0] = Some(Vec::new());
    let mut queue = std::collections::VecDeque::from([0]);
    while let Some(v) = queue.pop_front() {
        for (e, edge) in k.edges().iter().enumerate() {
            let [a, b] = edge.ends;
            for (from, to, forward) in [(a, b, true), (b, a, false)] {
                if from == v && paths[to].is_none() {
                    let mut p = paths[v].clone().expect("visited");
                    p.push((e, forward));
                    paths[to] = Some(p);
                    queue.push_back(to);
                }
            }
        }
    }
    paths.into_iter().map(Option::unwrap_or_default).collect()
}
