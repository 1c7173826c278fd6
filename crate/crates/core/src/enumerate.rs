//! Isomorph-free generation of graphs without isolated vertices, by edge
//! count, using canonical augmentation.
//!
//! A child is obtained from a canonical parent by adding one edge: between
//! two existing vertices, from an existing vertex to one new vertex, or
//! between two new vertices. The child is kept iff the added edge lies in
//! the automorphism orbit of its canonical deletion edge, the last edge of
//! its canonical form. Every class then has exactly one parent class, so
//! duplicates can only arise from a single parent and are removed locally.

use std::collections::BTreeSet;
use std::fmt;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::canon::{canonical_form_bounded, canonical_labeling};
use crate::certificate::{Certificate, CertificateBuilder};
use crate::error::{EnumerateError, Error};
use crate::families::{build_family, delta_equality_catalog};
use crate::graph::{structural_profile, Graph};
use crate::graph6::{decode_graph6, encode_graph6};
use crate::spectral::{q_index, DEFAULT_TOL};

/// Largest edge count accepted.
pub const MAX_M: usize = 10;
/// Largest vertex bound accepted.
pub const MAX_N: usize = 12;
/// Graphs within this distance of the maximum count as maximizers.
pub const ARGMAX_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Filter {
    TwoLeavesFree,
    LeafFree,
    All,
}

impl Filter {
    pub fn accepts(self, g: &Graph) -> bool {
        let p = structural_profile(g);
        match self {
            Filter::TwoLeavesFree => p.is_two_leaves_free(),
            Filter::LeafFree => p.is_leaf_free(),
            Filter::All => true,
        }
    }

    pub fn slug(self) -> &'static str {
        match self {
            Filter::TwoLeavesFree => "two-leaves-free",
            Filter::LeafFree => "leaf-free",
            Filter::All => "all",
        }
    }
}

impl fmt::Display for Filter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.slug())
    }
}

impl FromStr for Filter {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "two-leaves-free" | "2-leaves-free" => Ok(Filter::TwoLeavesFree),
            "leaf-free" => Ok(Filter::LeafFree),
            "all" => Ok(Filter::All),
            other => Err(format!(
                "unknown filter {other:?}; expected two-leaves-free, leaf-free or all"
            )),
        }
    }
}

/// `min(m + 1, 12)`.
pub fn default_max_n(m: usize) -> usize {
    (m + 1).min(MAX_N)
}

fn check_caps(m: usize, max_n: usize) -> Result<(), EnumerateError> {
    if m > MAX_M {
        return Err(EnumerateError::EdgeCap { m, cap: MAX_M });
    }
    if max_n > MAX_N {
        return Err(EnumerateError::VertexCap { max_n, cap: MAX_N });
    }
    Ok(())
}

// Children of a canonical parent accepted by the canonical deletion rule,
// returned in canonical form.
fn children(parent: &Graph, max_n: usize) -> Vec<Graph> {
    let n = parent.n();
    let mut moves: Vec<(usize, usize, usize)> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if !parent.has_edge(i, j) {
                moves.push((i, j, 0));
            }
        }
    }
    if n < max_n {
        moves.extend((0..n).map(|i| (i, n, 1)));
    }
    if n + 2 <= max_n {
        moves.push((n, n + 1, 2));
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for (a, b, extra) in moves {
        let base = parent.add_isolated(extra);
        let child = base
            .with_edits(&[], &[(a, b)])
            .expect("move adds a non-edge");
        let lab = canonical_labeling(&child);
        let canon = child.relabel(lab.first());
        let last = canon.edges().last().expect("child has an edge");
        let mut inverse = vec![0; child.n()];
        for (v, &l) in lab.first().iter().enumerate() {
            inverse[l] = v;
        }
        let accepted = edge_orbit(&lab.generators, (inverse[last.0], inverse[last.1]))
            .contains(&(a.min(b), a.max(b)));
        if accepted && seen.insert(lab.key) {
            out.push(canon);
        }
    }
    out
}

// Orbit of an edge under the group generated by `generators`.
fn edge_orbit(generators: &[Vec<usize>], e: (usize, usize)) -> BTreeSet<(usize, usize)> {
    let e = (e.0.min(e.1), e.0.max(e.1));
    let mut orbit = BTreeSet::from([e]);
    let mut stack = vec![e];
    while let Some((x, y)) = stack.pop() {
        for g in generators {
            let (p, q) = (g[x], g[y]);
            let img = (p.min(q), p.max(q));
            if orbit.insert(img) {
                stack.push(img);
            }
        }
    }
    orbit
}

/// One canonical representative per isomorphism class of graphs with `m`
/// edges, no isolated vertices and at most `max_n` vertices, passing
/// `filter`, sorted by graph6.
pub fn enumerate_graphs(
    m: usize,
    max_n: usize,
    filter: Filter,
) -> Result<Vec<Graph>, EnumerateError> {
    check_caps(m, max_n)?;
    let mut level = vec![Graph::empty(0)];
    for _ in 0..m {
        let mut next: Vec<Graph> = level
            .par_iter()
            .flat_map_iter(|p| children(p, max_n))
            .collect();
        next.sort_by_cached_key(adjacency_key);
        level = next;
    }
    let mut out: Vec<(String, Graph)> = level
        .into_par_iter()
        .filter(|g| filter.accepts(g))
        .map(|g| (encode_graph6(&g).expect("small graph"), g))
        .collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out.into_iter().map(|(_, g)| g).collect())
}

// (n, edge list) as a total order key for deterministic level order.
fn adjacency_key(g: &Graph) -> (usize, Vec<(usize, usize)>) {
    (g.n(), g.edges().collect())
}

fn cache_path(dir: &Path, m: usize, max_n: usize, filter: Filter) -> PathBuf {
    dir.join(format!("enum_m{m}_n{max_n}_{}.jsonl", filter.slug()))
}

#[derive(Serialize, Deserialize)]
struct CacheLine {
    graph6: String,
}

/// [`enumerate_graphs`] backed by a JSON-lines cache in `dir`.
pub fn enumerate_cached(
    m: usize,
    max_n: usize,
    filter: Filter,
    dir: &Path,
) -> Result<Vec<Graph>, Error> {
    check_caps(m, max_n)?;
    let path = cache_path(dir, m, max_n, filter);
    let io = |source: std::io::Error| Error::Io {
        path: path.display().to_string(),
        source,
    };
    if path.exists() {
        let text = fs::read_to_string(&path).map_err(io)?;
        let mut out = Vec::new();
        for line in text.lines().filter(|l| !l.trim().is_empty()) {
            let entry: CacheLine = serde_json::from_str(line)?;
            out.push(decode_graph6(&entry.graph6).map_err(EnumerateError::from)?);
        }
        return Ok(out);
    }
    let graphs = enumerate_graphs(m, max_n, filter)?;
    fs::create_dir_all(dir).map_err(|source| Error::Io {
        path: dir.display().to_string(),
        source,
    })?;
    let mut buf = Vec::new();
    for g in &graphs {
        let line = CacheLine {
            graph6: encode_graph6(g).map_err(EnumerateError::from)?,
        };
        serde_json::to_writer(&mut buf, &line)?;
        buf.push(b'\n');
    }
    let mut f = fs::File::create(&path).map_err(io)?;
    f.write_all(&buf).map_err(io)?;
    Ok(graphs)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchResult {
    pub m: usize,
    pub max_n: usize,
    pub filter: Filter,
    pub graph_count: usize,
    pub max_q: f64,
    /// graph6 strings of every class within [`ARGMAX_TOL`] of `max_q`, sorted.
    pub argmax: Vec<String>,
    /// Whether some maximizer is disconnected.
    pub disconnected_in_argmax: bool,
    pub runtime_ms: u64,
}

fn q_of(g: &Graph) -> Result<f64, EnumerateError> {
    if g.n() == 0 {
        return Ok(0.0);
    }
    Ok(q_index(g, DEFAULT_TOL)?.q)
}

/// Q-index of every enumerated class, in enumeration order.
pub fn q_values(graphs: &[Graph]) -> Result<Vec<f64>, EnumerateError> {
    graphs.par_iter().map(q_of).collect()
}

/// Exhaustive maximization of `q` over the enumerated classes.
pub fn extremal_search(
    m: usize,
    max_n: usize,
    filter: Filter,
) -> Result<SearchResult, EnumerateError> {
    let start = Instant::now();
    let graphs = enumerate_graphs(m, max_n, filter)?;
    let mut res = search_over(m, max_n, filter, &graphs)?;
    res.runtime_ms = start.elapsed().as_millis() as u64;
    Ok(res)
}

/// Maximization over a precomputed enumeration.
pub fn search_over(
    m: usize,
    max_n: usize,
    filter: Filter,
    graphs: &[Graph],
) -> Result<SearchResult, EnumerateError> {
    let start = Instant::now();
    let qs = q_values(graphs)?;
    let max_q = qs.iter().copied().fold(0.0, f64::max);
    let mut argmax = Vec::new();
    let mut disconnected = false;
    for (g, &q) in graphs.iter().zip(&qs) {
        if q >= max_q - ARGMAX_TOL {
            argmax.push(encode_graph6(g)?);
            disconnected |= !g.is_connected();
        }
    }
    argmax.sort();
    Ok(SearchResult {
        m,
        max_n,
        filter,
        graph_count: graphs.len(),
        max_q,
        argmax,
        disconnected_in_argmax: disconnected,
        runtime_ms: start.elapsed().as_millis() as u64,
    })
}

/// `⌊(2m+1)/3⌋`.
pub fn delta_bound(m: usize) -> usize {
    (2 * m + 1) / 3
}

/// Maximum-degree bound over every 2-leaves-free class with `m` edges, plus
/// a comparison of the equality cases with the stated catalog at
/// `k = ⌊m/3⌋`.
///
/// A 2-leaves-free graph without isolated vertices has `2m ≥ 2(n − 1) + 1`,
/// so `n ≤ m` and the default vertex bound `m + 1` is exhaustive.
pub fn verify_delta_bound(m: usize, max_n: Option<usize>) -> Result<Vec<Certificate>, Error> {
    let max_n = max_n.unwrap_or_else(|| default_max_n(m));
    let graphs = enumerate_graphs(m, max_n, Filter::TwoLeavesFree)?;
    let bound = delta_bound(m);
    let exhaustive = max_n >= m;

    let mut cert =
        CertificateBuilder::assertion(format!("delta_bound.m{m}"), "max degree <= floor((2m+1)/3)")
            .param("m", m)
            .param("max_n", max_n)
            .param("filter", Filter::TwoLeavesFree)
            .param("exhaustive", exhaustive);
    let mut achievers = BTreeSet::new();
    let mut worst = 0;
    let mut violators = Vec::new();
    for g in &graphs {
        let d = g.max_degree();
        worst = worst.max(d);
        let code = encode_graph6(g).map_err(EnumerateError::from)?;
        if d > bound {
            violators.push(code.clone());
        }
        if d == bound {
            achievers.insert(code);
        }
    }
    cert.push(
        format!("m={m}"),
        json!({ "m": m, "max_n": max_n }),
        json!({
            "classes": graphs.len(),
            "bound": bound,
            "largest_max_degree": worst,
            "violators": violators,
        }),
        Some(0.0),
        violators.is_empty() && !graphs.is_empty(),
    );

    let (k, catalog) = delta_equality_catalog(m as i64);
    let mut expected = BTreeSet::new();
    let mut listed = Vec::new();
    for fam in catalog {
        let entry = if k < fam.min_k() {
            json!({ "family": fam.name(), "k": k, "skipped": format!("requires k >= {}", fam.min_k()) })
        } else {
            let inst = build_family(fam, k)?;
            let size_matches = inst.graph.m() == m;
            let code = if inst.graph.n() <= MAX_N {
                Some(
                    encode_graph6(&canonical_form_bounded(&inst.graph, MAX_N)?)
                        .map_err(EnumerateError::from)?,
                )
            } else {
                None
            };
            if size_matches {
                if let Some(c) = &code {
                    expected.insert(c.clone());
                }
            }
            json!({ "family": fam.name(), "k": k, "m": inst.graph.m(), "size_matches": size_matches, "graph6": code })
        };
        listed.push(entry);
    }
    let missing: Vec<&String> = expected.difference(&achievers).collect();
    let extra: Vec<&String> = achievers.difference(&expected).collect();
    let equal =
        missing.is_empty() && extra.is_empty() && listed.iter().all(|e| e["size_matches"] != false);
    let claim = format!("delta_equality.m{m}");
    let anchor = "equality cases of max degree = floor((2m+1)/3)";
    let mut cmp = if equal {
        CertificateBuilder::assertion(claim, anchor)
    } else {
        CertificateBuilder::report(claim, anchor)
    }
    .param("m", m)
    .param("k", k)
    .param("max_n", max_n);
    cmp.push(
        format!("m={m}"),
        json!({ "m": m, "k": k }),
        json!({
            "achievers": achievers,
            "catalog": listed,
            "missing_from_search": missing,
            "not_in_catalog": extra,
        }),
        None,
        equal,
    );
    Ok(vec![cert.finish(), cmp.finish()])
}
