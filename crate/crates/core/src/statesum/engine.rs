use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::Instant;

use num_complex::Complex64;
use rayon::prelude::*;

use super::{check_complex, Coloring, InvariantOptions, PartitionResult, Sum};
use crate::category::{LabelId, Sign, SmfcData, TetKey};
use crate::error::{Error, Result};
use crate::topology::DeltaComplex;

const DENSE_AMPLITUDES: usize = 1 << 20;
const DENSE_FUSION: usize = 1 << 24;
const FRONTIER: usize = 256;
const FLUSH: u64 = 1 << 12;

struct EdgeStep {
    tail: usize,
    head: usize,
    /// Triangles completed by this edge, as edge ids `(01, 12, 02)`.
    triangles: Vec<[usize; 3]>,
    /// Tetrahedra completed by this edge: edge ids in key order and the sign.
    tets: Vec<([usize; 6], Sign)>,
}

struct Plan<'a> {
    cat: &'a SmfcData,
    nv: usize,
    edges: Vec<EdgeStep>,
    nlabels: usize,
    dense_admissible: Option<Vec<bool>>,
    dense_amplitudes: Option<(Vec<Complex64>, Vec<Complex64>)>,
    inv_theta_unit: bool,
}

#[derive(Clone)]
struct Node {
    step: usize,
    f0: Vec<usize>,
    f1: Vec<LabelId>,
    weight: Complex64,
}

struct Guard<'a> {
    limit: Option<u64>,
    visited: &'a AtomicU64,
    abort: &'a AtomicBool,
}

#[derive(Default)]
struct Tally {
    sum: Sum,
    visited: u64,
    pending: u64,
    contributing: u64,
}

impl Tally {
    fn visit(&mut self, guard: &Guard) -> bool {
        self.visited += 1;
        self.pending += 1;
        if self.pending >= FLUSH {
            let total = guard.visited.fetch_add(self.pending, Ordering::Relaxed) + self.pending;
            self.pending = 0;
            if guard.limit.is_some_and(|l| total > l) {
                guard.abort.store(true, Ordering::Relaxed);
            }
        }
        !guard.abort.load(Ordering::Relaxed)
    }
}

impl<'a> Plan<'a> {
    fn new(cat: &'a SmfcData, k: &DeltaComplex) -> Plan<'a> {
        let mut edges: Vec<EdgeStep> = k
            .edges()
            .iter()
            .map(|e| EdgeStep { tail: e.ends[0], head: e.ends[1], triangles: Vec::new(), tets: Vec::new() })
            .collect();
        for t in k.triangles() {
            let [e01, e02, e12] = t.edges;
            edges[e01.max(e02).max(e12)].triangles.push([e01, e12, e02]);
        }
        for t in k.tets() {
            let last = *t.edges.iter().max().expect("six edges");
            edges[last].tets.push((t.edges, Sign::from_orientation(t.sign)));
        }
        let n = cat.labels().len();
        let dense_admissible = (n.pow(3) <= DENSE_FUSION).then(|| {
            let mut v = vec![false; n.pow(3)];
            for &[a, b, c] in cat.fusion() {
                v[(a as usize * n + b as usize) * n + c as usize] = true;
            }
            v
        });
        let dense_amplitudes = (n.checked_pow(6).is_some_and(|x| x <= DENSE_AMPLITUDES)).then(|| {
            let mut plus = vec![Complex64::new(0.0, 0.0); n.pow(6)];
            let mut minus = plus.clone();
            for key in cat.colorable_keys() {
                let i = key.iter().fold(0, |acc, &x| acc * n + x as usize);
                plus[i] = cat.amplitude(&key, Sign::Plus).expect("colorable");
                minus[i] = cat.amplitude(&key, Sign::Minus).expect("colorable");
            }
            (plus, minus)
        });
        Plan {
            cat,
            nv: k.num_vertices(),
            edges,
            nlabels: n,
            dense_admissible,
            dense_amplitudes,
            inv_theta_unit: cat.theta_convention() == crate::category::ThetaConvention::Unit,
        }
    }

    fn total_steps(&self) -> usize {
        self.nv + self.edges.len()
    }

    #[inline]
    fn admissible(&self, a: LabelId, b: LabelId, c: LabelId) -> bool {
        match &self.dense_admissible {
            Some(v) => v[(a as usize * self.nlabels + b as usize) * self.nlabels + c as usize],
            None => self.cat.admissible(a, b, c),
        }
    }

    #[inline]
    fn amplitude(&self, key: &TetKey, sign: Sign) -> Complex64 {
        match &self.dense_amplitudes {
            Some((plus, minus)) => {
                let i = key.iter().fold(0, |acc, &x| acc * self.nlabels + x as usize);
                match sign {
                    Sign::Plus => plus[i],
                    Sign::Minus => minus[i],
                }
            }
            None => self.cat.amplitude(key, sign).expect("tetrahedron faces checked before lookup"),
        }
    }

    /// Calls `visit(weight)` for every admissible choice at `step`, with the choice written into
    /// `f0`/`f1`.
    #[inline]
    fn extend(&self, step: usize, f0: &mut [usize], f1: &mut [LabelId], weight: Complex64, mut visit: impl FnMut(&mut [usize], &mut [LabelId], Complex64)) {
        if step < self.nv {
            for i in 0..self.cat.num_sectors() {
                f0[step] = i;
                visit(f0, f1, weight);
            }
            return;
        }
        let e = step - self.nv;
        let es = &self.edges[e];
        'labels: for &x in self.cat.sector(f0[es.tail], f0[es.head]) {
            f1[e] = x;
            let mut w = weight * self.cat.dim(x);
            for &[a, b, c] in &es.triangles {
                let (a, b, c) = (f1[a], f1[b], f1[c]);
                if !self.admissible(a, b, c) {
                    continue 'labels;
                }
                if !self.inv_theta_unit {
                    w /= self.cat.theta(a, b, c);
                }
            }
            for (edges, sign) in &es.tets {
                let key = edges.map(|i| f1[i]);
                w *= self.amplitude(&key, *sign);
            }
            visit(f0, f1, w);
        }
    }

    fn dfs(&self, step: usize, f0: &mut [usize], f1: &mut [LabelId], weight: Complex64, tally: &mut Tally, guard: &Guard) {
        if !tally.visit(guard) {
            return;
        }
        if step == self.total_steps() {
            tally.sum.add(weight);
            tally.contributing += 1;
            return;
        }
        self.extend(step, f0, f1, weight, |f0, f1, w| self.dfs(step + 1, f0, f1, w, tally, guard));
    }

    /// Expands the search tree breadth-first until it has at least `FRONTIER` nodes or is
    /// exhausted. Depends only on the inputs, so the reduction order is fixed.
    fn frontier(&self, tally: &mut Tally, guard: &Guard) -> Vec<Node> {
        let root = Node { step: 0, f0: vec![0; self.nv], f1: vec![0; self.edges.len()], weight: Complex64::new(1.0, 0.0) };
        let mut level = vec![root];
        while level.len() < FRONTIER && level.iter().any(|n| n.step < self.total_steps()) {
            let mut next = Vec::new();
            for mut node in level {
                if node.step == self.total_steps() {
                    next.push(node);
                    continue;
                }
                tally.visit(guard);
                let step = node.step;
                self.extend(step, &mut node.f0, &mut node.f1, node.weight, |f0, f1, w| {
                    next.push(Node { step: step + 1, f0: f0.to_vec(), f1: f1.to_vec(), weight: w });
                });
            }
            level = next;
        }
        level
    }
}

fn prepare<'a>(cat: &'a SmfcData, k: &DeltaComplex) -> Result<Plan<'a>> {
    let dims = cat.dims_report();
    if !dims.special {
        return Err(Error::NotSpecial(dims.rows));
    }
    check_complex(k)?;
    Ok(Plan::new(cat, k))
}

/// Evaluates the state sum of `cat` on `k`. The category is assumed to pass
/// [`crate::category::validate_category`]; specialness and the complex are checked here.
pub fn invariant(cat: &SmfcData, k: &DeltaComplex, opts: &InvariantOptions) -> Result<PartitionResult> {
    let start = Instant::now();
    let plan = prepare(cat, k)?;
    let visited = AtomicU64::new(0);
    let abort = AtomicBool::new(false);
    let guard = Guard { limit: opts.max_nodes, visited: &visited, abort: &abort };
    let mut head = Tally::default();
    let frontier = plan.frontier(&mut head, &guard);
    let run = || {
        frontier
            .par_iter()
            .map(|node| {
                let mut tally = Tally::default();
                let (mut f0, mut f1) = (node.f0.clone(), node.f1.clone());
                plan.dfs(node.step, &mut f0, &mut f1, node.weight, &mut tally, &guard);
                tally
            })
            .collect::<Vec<Tally>>()
    };
    let parts = match opts.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::invalid(format!("thread pool: {e}")))?
            .install(run),
        None => run(),
    };
    if abort.load(Ordering::Relaxed) {
        return Err(Error::SizeGuard(format!("more than {} search nodes", opts.max_nodes.unwrap_or_default())));
    }
    let mut sum = Sum::default();
    let mut visited = head.visited;
    let mut contributing = 0;
    for p in &parts {
        sum.add(p.sum.value());
        visited += p.visited;
        contributing += p.contributing;
    }
    if opts.max_nodes.is_some_and(|limit| visited > limit) {
        return Err(Error::SizeGuard(format!("more than {} search nodes", opts.max_nodes.unwrap_or_default())));
    }
    let k_dim = cat.dims_report().k.expect("special");
    let value = sum.value() * k_dim.powi(-(plan.nv as i32));
    Ok(PartitionResult { value, colorings_visited: visited, colorings_contributing: contributing, seconds: start.elapsed().as_secs_f64() })
}

/// Streams every contributing coloring with its unnormalized weight (without `K^{-|T⁰|}`),
/// in depth-first order: vertices by index, then edges by id.
pub fn for_each_coloring(cat: &SmfcData, k: &DeltaComplex, mut f: impl FnMut(&Coloring, Complex64)) -> Result<()> {
    let plan = prepare(cat, k)?;
    fn walk(plan: &Plan, step: usize, f0: &mut [usize], f1: &mut [LabelId], w: Complex64, f: &mut dyn FnMut(&Coloring, Complex64)) {
        if step == plan.total_steps() {
            f(&Coloring { f0: f0.to_vec(), f1: f1.to_vec() }, w);
            return;
        }
        plan.extend(step, f0, f1, w, |f0, f1, w| walk(plan, step + 1, f0, f1, w, f));
    }
    let (mut f0, mut f1) = (vec![0; plan.nv], vec![0; plan.edges.len()]);
    walk(&plan, 0, &mut f0, &mut f1, Complex64::new(1.0, 0.0), &mut f);
    Ok(())
}

/// Number of contributing colorings.
pub fn enumerate_colorings(cat: &SmfcData, k: &DeltaComplex) -> Result<u64> {
    let mut n = 0;
    for_each_coloring(cat, k, |_, _| n += 1)?;
    Ok(n)
}
