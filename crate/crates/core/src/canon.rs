//! Canonical forms by individualization and equitable refinement.
//!
//! The canonical form of a graph is the relabeling whose row-major upper
//! triangle adjacency bit-string is lexicographically smallest among all
//! leaves of the search tree. The tree branches only inside cells of the
//! degree-refined equitable partition, and every choice made while
//! refining depends on isomorphism-invariant data, so isomorphic graphs
//! yield identical canonical forms. Automorphisms found at leaves prune
//! children that lie in a common orbit of the pointwise stabilizer of the
//! current individualized vertices.

use std::collections::HashSet;

use crate::error::GraphError;
use crate::graph::Graph;

/// Default largest order accepted by [`canonical_form`].
pub const DEFAULT_CANONICAL_BOUND: usize = 12;

/// Refines `cells` to the coarsest equitable partition below it.
///
/// Cells split into fragments ordered by their neighbour-count signature,
/// which keeps the procedure label-invariant.
pub fn refine_equitable(g: &Graph, cells: &mut Vec<Vec<usize>>) {
    let n = g.n();
    let mut cell_of = vec![0usize; n];
    loop {
        for (i, cell) in cells.iter().enumerate() {
            for &v in cell {
                cell_of[v] = i;
            }
        }
        let mut next: Vec<Vec<usize>> = Vec::with_capacity(cells.len());
        for cell in cells.iter() {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<(usize, usize)>, usize)> = cell
                .iter()
                .map(|&v| (signature(g, v, &cell_of), v))
                .collect();
            keyed.sort();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    next.push(keyed[start..i].iter().map(|&(_, v)| v).collect());
                    start = i;
                }
            }
        }
        let stable = next.len() == cells.len();
        *cells = next;
        if stable {
            return;
        }
    }
}

// Sorted (cell, count) pairs for the neighbours of `v`.
fn signature(g: &Graph, v: usize, cell_of: &[usize]) -> Vec<(usize, usize)> {
    let mut hits: Vec<usize> = g.neighbors(v).iter().map(|&u| cell_of[u]).collect();
    hits.sort_unstable();
    let mut sig: Vec<(usize, usize)> = Vec::new();
    for c in hits {
        match sig.last_mut() {
            Some((last, count)) if *last == c => *count += 1,
            _ => sig.push((c, 1)),
        }
    }
    sig
}

/// Result of a canonical labeling search.
#[derive(Debug, Clone)]
pub struct CanonicalLabeling {
    /// Packed upper-triangle bit-string of the canonical graph.
    pub key: Vec<u64>,
    /// Canonical labeling `v -> label`.
    pub labeling: Vec<usize>,
    /// Automorphisms `v -> image` generating the automorphism group.
    pub generators: Vec<Vec<usize>>,
}

impl CanonicalLabeling {
    pub fn first(&self) -> &[usize] {
        &self.labeling
    }

    /// Every element of the automorphism group, by closure over the
    /// generators. Only practical for small groups.
    pub fn automorphisms(&self) -> Vec<Vec<usize>> {
        let n = self.labeling.len();
        let id: Vec<usize> = (0..n).collect();
        let mut seen: HashSet<Vec<usize>> = HashSet::from([id.clone()]);
        let mut queue = vec![id];
        while let Some(p) = queue.pop() {
            for gen in &self.generators {
                let next: Vec<usize> = p.iter().map(|&x| gen[x]).collect();
                if seen.insert(next.clone()) {
                    queue.push(next);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// All labelings achieving the canonical key: the canonical labeling
    /// composed with each automorphism.
    pub fn all_labelings(&self) -> Vec<Vec<usize>> {
        self.automorphisms()
            .into_iter()
            .map(|a| a.iter().map(|&v| self.labeling[v]).collect())
            .collect()
    }

    /// Orbit representative for every vertex under the automorphism group.
    pub fn vertex_orbits(&self) -> Vec<usize> {
        let mut uf: Vec<usize> = (0..self.labeling.len()).collect();
        for gen in &self.generators {
            for (v, &w) in gen.iter().enumerate() {
                union(&mut uf, v, w);
            }
        }
        (0..uf.len()).map(|v| find(&mut uf, v)).collect()
    }
}

fn find(uf: &mut [usize], mut v: usize) -> usize {
    while uf[v] != v {
        uf[v] = uf[uf[v]];
        v = uf[v];
    }
    v
}

fn union(uf: &mut [usize], a: usize, b: usize) {
    let (ra, rb) = (find(uf, a), find(uf, b));
    if ra != rb {
        uf[ra.max(rb)] = ra.min(rb);
    }
}

struct Search<'a> {
    g: &'a Graph,
    first: Option<(Vec<u64>, Vec<usize>)>,
    best: Option<(Vec<u64>, Vec<usize>)>,
    generators: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn leaf(&mut self, order: Vec<usize>) {
        let key = pack_key(self.g, &order);
        let Some((first_key, first_order)) = &self.first else {
            self.best = Some((key.clone(), order.clone()));
            self.first = Some((key, order));
            return;
        };
        if &key == first_key {
            self.record(first_order.clone(), &order);
            return;
        }
        let (best_key, best_order) = self.best.as_ref().expect("set with first");
        match key.cmp(best_key) {
            std::cmp::Ordering::Less => self.best = Some((key, order)),
            std::cmp::Ordering::Equal => self.record(best_order.clone(), &order),
            std::cmp::Ordering::Greater => {}
        }
    }

    // The automorphism mapping the leaf `from` onto the leaf `to`.
    fn record(&mut self, from: Vec<usize>, to: &[usize]) {
        let mut perm = vec![0; from.len()];
        for (&a, &b) in from.iter().zip(to) {
            perm[a] = b;
        }
        if perm.iter().enumerate().any(|(i, &p)| i != p) {
            self.generators.push(perm);
        }
    }

    fn run(&mut self, cells: Vec<Vec<usize>>, fixed: &mut Vec<usize>) {
        let target = cells
            .iter()
            .enumerate()
            .filter(|(_, c)| c.len() > 1)
            .min_by_key(|(i, c)| (c.len(), *i))
            .map(|(i, _)| i);
        let Some(t) = target else {
            self.leaf(cells.iter().map(|c| c[0]).collect());
            return;
        };
        let mut tried: Vec<usize> = Vec::new();
        for &v in &cells[t] {
            if !tried.is_empty() && self.equivalent_to_tried(fixed, &tried, v) {
                continue;
            }
            tried.push(v);
            let mut next = Vec::with_capacity(cells.len() + 1);
            next.extend_from_slice(&cells[..t]);
            next.push(vec![v]);
            next.push(cells[t].iter().copied().filter(|&u| u != v).collect());
            next.extend_from_slice(&cells[t + 1..]);
            refine_equitable(self.g, &mut next);
            fixed.push(v);
            self.run(next, fixed);
            fixed.pop();
        }
    }

    // Whether a known automorphism fixing `fixed` pointwise maps `v` into
    // the orbit of an already explored child.
    fn equivalent_to_tried(&self, fixed: &[usize], tried: &[usize], v: usize) -> bool {
        let mut uf: Vec<usize> = (0..self.g.n()).collect();
        let mut any = false;
        for gen in &self.generators {
            if fixed.iter().all(|&f| gen[f] == f) {
                any = true;
                for (a, &b) in gen.iter().enumerate() {
                    union(&mut uf, a, b);
                }
            }
        }
        if !any {
            return false;
        }
        let rv = find(&mut uf, v);
        tried.iter().any(|&u| find(&mut uf, u) == rv)
    }
}

/// Runs the search with no order bound.
pub fn canonical_labeling(g: &Graph) -> CanonicalLabeling {
    let n = g.n();
    if n == 0 {
        return CanonicalLabeling {
            key: Vec::new(),
            labeling: Vec::new(),
            generators: Vec::new(),
        };
    }
    let mut cells = vec![(0..n).collect::<Vec<_>>()];
    refine_equitable(g, &mut cells);
    let mut search = Search {
        g,
        first: None,
        best: None,
        generators: Vec::new(),
    };
    search.run(cells, &mut Vec::new());
    let (key, order) = search.best.expect("search visits at least one leaf");
    let mut labeling = vec![0; n];
    for (label, &v) in order.iter().enumerate() {
        labeling[v] = label;
    }
    CanonicalLabeling {
        key,
        labeling,
        generators: search.generators,
    }
}

// Bit (i, j), i < j in row-major order, is set when order[i] ~ order[j].
// The first pair occupies the most significant bit of word 0.
fn pack_key(g: &Graph, order: &[usize]) -> Vec<u64> {
    let n = order.len();
    let pairs = n * (n.saturating_sub(1)) / 2;
    let mut words = vec![0u64; pairs.div_ceil(64).max(1)];
    let mut idx = 0;
    for i in 0..n {
        for j in i + 1..n {
            if g.has_edge(order[i], order[j]) {
                words[idx / 64] |= 1 << (63 - idx % 64);
            }
            idx += 1;
        }
    }
    words
}

/// Canonical form with the default order bound.
pub fn canonical_form(g: &Graph) -> Result<Graph, GraphError> {
    canonical_form_bounded(g, DEFAULT_CANONICAL_BOUND)
}

pub fn canonical_form_bounded(g: &Graph, bound: usize) -> Result<Graph, GraphError> {
    if g.n() > bound {
        return Err(GraphError::CanonicalBound { n: g.n(), bound });
    }
    let lab = canonical_labeling(g);
    Ok(g.relabel(lab.first()))
}

pub fn is_isomorphic(a: &Graph, b: &Graph, bound: usize) -> Result<bool, GraphError> {
    if a.n() != b.n() || a.m() != b.m() {
        return Ok(false);
    }
    let mut da = a.degrees();
    let mut db = b.degrees();
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return Ok(false);
    }
    Ok(canonical_form_bounded(a, bound)? == canonical_form_bounded(b, bound)?)
}
