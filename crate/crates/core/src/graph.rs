//! Immutable simple undirected graphs on dense vertex ids `0..n`.
//!
//! Every composite operation (union, join, edge edits) returns a new graph
//! with a deterministic labeling, so all downstream computations are
//! reproducible.

use std::collections::BTreeSet;
use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use crate::error::GraphError;

/// A simple undirected graph. Isolated vertices are allowed and counted in `n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    // sorted, duplicate-free neighbour lists
    adj: Vec<Vec<usize>>,
    m: usize,
}

impl Graph {
    /// Builds a graph from an edge list, rejecting loops, duplicates and
    /// out-of-range endpoints.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![Vec::new(); n];
        let mut m = 0;
        for (u, v) in edges {
            if u >= n {
                return Err(GraphError::VertexOutOfRange { vertex: u, n });
            }
            if v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: v, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
            m += 1;
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                let (a, b) = (u.min(w[0]), u.max(w[0]));
                return Err(GraphError::DuplicateEdge(a, b));
            }
        }
        Ok(Graph { adj, m })
    }

    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            m: 0,
        }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Returns `G - remove + add`. Removed edges must exist and added edges
    /// must be absent (after the removals), so the result stays simple.
    pub fn with_edits(
        &self,
        remove: &[(usize, usize)],
        add: &[(usize, usize)],
    ) -> Result<Graph, GraphError> {
        let mut set: BTreeSet<(usize, usize)> = self.edges().collect();
        for &(u, v) in remove {
            if !set.remove(&(u.min(v), u.max(v))) {
                return Err(GraphError::MissingEdge(u.min(v), u.max(v)));
            }
        }
        for &(u, v) in add {
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if !set.insert((u.min(v), u.max(v))) {
                return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
            }
        }
        Graph::from_edges(self.n(), set)
    }

    /// Appends `count` isolated vertices with ids `n..n+count`.
    pub fn add_isolated(&self, count: usize) -> Graph {
        let mut adj = self.adj.clone();
        adj.extend(std::iter::repeat_with(Vec::new).take(count));
        Graph { adj, m: self.m }
    }

    /// Relabels vertex `v` to `perm[v]`. `perm` must be a permutation of `0..n`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        debug_assert_eq!(perm.len(), self.n());
        let edges = self.edges().map(|(u, v)| (perm[u], perm[v]));
        Graph::from_edges(self.n(), edges)
            .expect("relabeling by a permutation preserves simplicity")
    }

    /// Subgraph induced by `vertices`; vertex `vertices[i]` becomes `i`.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let edges = self
            .edges()
            .filter(|&(u, v)| index[u] != usize::MAX && index[v] != usize::MAX)
            .map(|(u, v)| (index[u], index[v]));
        Graph::from_edges(vertices.len(), edges).expect("induced subgraph of a simple graph")
    }

    /// Drops isolated vertices, keeping the relative order of the rest.
    pub fn without_isolated(&self) -> Graph {
        let keep: Vec<usize> = (0..self.n()).filter(|&v| self.degree(v) > 0).collect();
        self.induced(&keep)
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut head = 0;
            while head < comp.len() {
                let u = comp[head];
                head += 1;
                for &v in &self.adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || self.components().len() == 1
    }

    /// Row bitsets of the adjacency matrix. Only valid for `n <= 64`.
    pub fn adjacency_bits(&self) -> Vec<u64> {
        assert!(self.n() <= 64, "adjacency bitsets need n <= 64");
        self.adj
            .iter()
            .map(|list| list.iter().fold(0u64, |acc, &v| acc | (1 << v)))
            .collect()
    }

    /// Graphviz rendering; labels are the vertex ids.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph G {\n");
        for v in 0..self.n() {
            let _ = writeln!(s, "  {v};");
        }
        for (u, v) in self.edges() {
            let _ = writeln!(s, "  {u} -- {v};");
        }
        s.push_str("}\n");
        s
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.n())?;
        for (i, (u, v)) in self.edges().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{u}-{v}")?;
        }
        f.write_str("])")
    }
}

/// Named primitive graphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Primitive {
    /// `P_n`, order `n >= 1`.
    Path(usize),
    /// `C_n`, order `n >= 3`.
    Cycle(usize),
    /// `S_n = K_{1,n-1}`, order `n >= 1`; vertex 0 is the centre.
    Star(usize),
    /// `D_{a,b}`: centres 0 and 1 carrying `a` and `b` pendant vertices.
    DoubleStar(usize, usize),
    /// `S_n^+`: `K_{1,n-1}` plus the edge between leaves 1 and 2, `n >= 3`.
    StarPlus(usize),
    /// `n` isolated vertices.
    Edgeless(usize),
}

impl Primitive {
    pub fn build(self) -> Result<Graph, GraphError> {
        let param = |kind, constraint, got: String| GraphError::Parameter {
            kind,
            constraint,
            got,
        };
        match self {
            Primitive::Path(n) => {
                if n < 1 {
                    return Err(param("PATH", "order n >= 1", n.to_string()));
                }
                Graph::from_edges(n, (1..n).map(|i| (i - 1, i)))
            }
            Primitive::Cycle(n) => {
                if n < 3 {
                    return Err(param("CYCLE", "order n >= 3", n.to_string()));
                }
                Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
            }
            Primitive::Star(n) => {
                if n < 1 {
                    return Err(param("STAR", "order n >= 1", n.to_string()));
                }
                Graph::from_edges(n, (1..n).map(|i| (0, i)))
            }
            Primitive::DoubleStar(a, b) => {
                if a < 1 || b < 1 {
                    return Err(param(
                        "DOUBLE_STAR",
                        "a >= 1 and b >= 1",
                        format!("({a}, {b})"),
                    ));
                }
                let edges = std::iter::once((0, 1))
                    .chain((0..a).map(|i| (0, 2 + i)))
                    .chain((0..b).map(|i| (1, 2 + a + i)));
                Graph::from_edges(a + b + 2, edges)
            }
            Primitive::StarPlus(n) => {
                if n < 3 {
                    return Err(param("STAR_PLUS", "order n >= 3", n.to_string()));
                }
                Graph::from_edges(n, (1..n).map(|i| (0, i)).chain(std::iter::once((1, 2))))
            }
            Primitive::Edgeless(n) => Ok(Graph::empty(n)),
        }
    }
}

/// Convenience wrapper around [`Primitive::build`].
pub fn build_primitive(kind: Primitive) -> Result<Graph, GraphError> {
    kind.build()
}

/// Vertex-disjoint union with multiplicities; blocks appear in argument order.
pub fn disjoint_union(gs: &[Graph], multiplicities: &[usize]) -> Result<Graph, GraphError> {
    if gs.len() != multiplicities.len() {
        return Err(GraphError::MultiplicityLength {
            expected: gs.len(),
            got: multiplicities.len(),
        });
    }
    let n: usize = gs.iter().zip(multiplicities).map(|(g, &c)| g.n() * c).sum();
    let mut edges = Vec::new();
    let mut offset = 0;
    for (g, &count) in gs.iter().zip(multiplicities) {
        for _ in 0..count {
            edges.extend(g.edges().map(|(u, v)| (u + offset, v + offset)));
            offset += g.n();
        }
    }
    Graph::from_edges(n, edges)
}

/// Union of the given blocks, each taken once.
pub fn union_of(gs: &[Graph]) -> Graph {
    disjoint_union(gs, &vec![1; gs.len()]).expect("one multiplicity per block")
}

/// `G ∨ H`: the `g` block takes ids `0..n_g`, then `h`.
pub fn join(g: &Graph, h: &Graph) -> Graph {
    let ng = g.n();
    let edges = g
        .edges()
        .chain(h.edges().map(|(u, v)| (u + ng, v + ng)))
        .chain((0..ng).flat_map(|u| (0..h.n()).map(move |v| (u, v + ng))));
    Graph::from_edges(ng + h.n(), edges).expect("join of simple graphs is simple")
}

/// `K_1 ∨ H` with the apex as vertex 0.
pub fn cone(h: &Graph) -> Graph {
    join(&Graph::empty(1), h)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructuralProfile {
    /// Non-increasing.
    pub degree_sequence: Vec<usize>,
    pub max_degree: usize,
    pub min_degree: usize,
    pub pendant_count: usize,
    pub isolated_count: usize,
    pub component_count: usize,
}

impl StructuralProfile {
    pub fn is_two_leaves_free(&self) -> bool {
        self.pendant_count <= 1
    }

    pub fn is_leaf_free(&self) -> bool {
        self.pendant_count == 0
    }
}

pub fn structural_profile(g: &Graph) -> StructuralProfile {
    let mut degree_sequence = g.degrees();
    degree_sequence.sort_unstable_by(|a, b| b.cmp(a));
    StructuralProfile {
        max_degree: degree_sequence.first().copied().unwrap_or(0),
        min_degree: degree_sequence.last().copied().unwrap_or(0),
        pendant_count: degree_sequence.iter().filter(|&&d| d == 1).count(),
        isolated_count: degree_sequence.iter().filter(|&&d| d == 0).count(),
        component_count: g.components().len(),
        degree_sequence,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(kind: Primitive) -> Graph {
        kind.build().unwrap()
    }

    #[test]
    fn primitives() {
        let c3 = p(Primitive::Cycle(3));
        assert_eq!(c3.m(), 3);
        assert!(c3.degrees().iter().all(|&d| d == 2));

        let s5 = structural_profile(&p(Primitive::Star(5)));
        assert_eq!(s5.degree_sequence, vec![4, 1, 1, 1, 1]);

        let paw = p(Primitive::StarPlus(4));
        assert_eq!(paw.m(), 4);
        assert_eq!(structural_profile(&paw).degree_sequence, vec![3, 2, 2, 1]);

        let d = p(Primitive::DoubleStar(2, 3));
        assert_eq!((d.n(), d.m()), (7, 6));
        assert_eq!(p(Primitive::Path(1)).m(), 0);
        assert_eq!(p(Primitive::Star(1)).n(), 1);
    }

    #[test]
    fn primitive_domain_errors() {
        for bad in [
            Primitive::Cycle(2),
            Primitive::StarPlus(2),
            Primitive::Star(0),
            Primitive::Path(0),
            Primitive::DoubleStar(0, 3),
        ] {
            let err = bad.build().unwrap_err();
            assert!(matches!(err, GraphError::Parameter { .. }), "{bad:?}");
        }
        let msg = Primitive::Cycle(2).build().unwrap_err().to_string();
        assert!(msg.contains("n >= 3"), "{msg}");
    }

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(Graph::from_edges(2, [(0, 0)]), Err(GraphError::SelfLoop(0)));
        assert_eq!(
            Graph::from_edges(3, [(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(0, 1))
        );
        assert!(matches!(
            Graph::from_edges(2, [(0, 2)]),
            Err(GraphError::VertexOutOfRange { vertex: 2, n: 2 })
        ));
    }

    #[test]
    fn unions() {
        let p2 = p(Primitive::Path(2));
        let three = disjoint_union(std::slice::from_ref(&p2), &[3]).unwrap();
        assert_eq!((three.n(), three.m()), (6, 3));
        assert!(three.degrees().iter().all(|&d| d == 1));

        let mixed = disjoint_union(
            &[p2, p(Primitive::Star(3)), p(Primitive::Path(1))],
            &[2, 1, 1],
        )
        .unwrap();
        assert_eq!((mixed.n(), mixed.m()), (8, 4));

        let c3 = p(Primitive::Cycle(3));
        let same = disjoint_union(&[c3.clone(), p(Primitive::Path(1))], &[1, 0]).unwrap();
        assert_eq!(same, c3);
        assert!(disjoint_union(&[c3], &[]).is_err());
    }

    #[test]
    fn joins() {
        let p2 = p(Primitive::Path(2));
        let wheelish = cone(&disjoint_union(std::slice::from_ref(&p2), &[2]).unwrap());
        assert_eq!((wheelish.n(), wheelish.m()), (5, 6));
        assert_eq!(wheelish.degree(0), 4);

        let h = disjoint_union(&[p2, p(Primitive::Path(1))], &[2, 1]).unwrap();
        let g = cone(&h);
        // 2k+1 apex edges plus k matching edges, k = 2
        assert_eq!((g.n(), g.m(), g.max_degree()), (6, 7, 5));

        let k4 = cone(&p(Primitive::Cycle(3)));
        assert_eq!(k4.m(), 6);
        assert!(k4.degrees().iter().all(|&d| d == 3));
    }

    #[test]
    fn profiles() {
        let p4 = structural_profile(&p(Primitive::Path(4)));
        assert_eq!(p4.pendant_count, 2);
        assert!(!p4.is_two_leaves_free());

        let h = disjoint_union(&[p(Primitive::Path(2)), p(Primitive::Path(1))], &[2, 1]).unwrap();
        let prof = structural_profile(&cone(&h));
        assert_eq!(prof.pendant_count, 1);
        assert!(prof.is_two_leaves_free());
        assert!(!prof.is_leaf_free());

        let c7 = structural_profile(&p(Primitive::Cycle(7)));
        assert!(c7.is_leaf_free());
        assert_eq!((c7.max_degree, c7.min_degree), (2, 2));

        let iso = structural_profile(&Graph::empty(3));
        assert_eq!((iso.isolated_count, iso.component_count), (3, 3));
    }

    #[test]
    fn edits_and_components() {
        let p4 = p(Primitive::Path(4));
        let star = p4.with_edits(&[(2, 3)], &[(1, 3)]).unwrap();
        assert_eq!(star.degree(1), 3);
        assert!(p4.with_edits(&[(0, 2)], &[]).is_err());
        assert!(p4.with_edits(&[], &[(0, 1)]).is_err());

        let g = disjoint_union(&[p(Primitive::Path(2))], &[2])
            .unwrap()
            .add_isolated(1);
        assert_eq!(g.components(), vec![vec![0, 1], vec![2, 3], vec![4]]);
        assert!(!g.is_connected());
        assert_eq!(g.without_isolated().n(), 4);
        assert!(g.to_dot().contains("2 -- 3"));
    }

    proptest::proptest! {
        #[test]
        fn join_edge_count(a in 0usize..7, b in 0usize..7, ea in proptest::collection::vec((0usize..7, 0usize..7), 0..10)) {
            let edges: BTreeSet<(usize, usize)> = ea.into_iter()
                .filter(|&(u, v)| u != v && u < a && v < a)
                .map(|(u, v)| (u.min(v), u.max(v)))
                .collect();
            let g = Graph::from_edges(a, edges).unwrap();
            let h = p(Primitive::Path(b.max(1)));
            let j = join(&g, &h);
            proptest::prop_assert_eq!(j.m(), g.m() + h.m() + g.n() * h.n());
            let prof = structural_profile(&j);
            proptest::prop_assert_eq!(prof.degree_sequence.iter().sum::<usize>(), 2 * j.m());
        }
    }
}
