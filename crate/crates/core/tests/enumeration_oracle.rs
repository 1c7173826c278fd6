use std::collections::BTreeSet;

use qindex::canon::canonical_form;
use qindex::enumerate::{enumerate_graphs, extremal_search, Filter};
use qindex::families::ALL_FAMILIES;
use qindex::graph6::encode_graph6;
use qindex::Graph;

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

// Isomorphism classes of graphs on exactly `n` vertices, none isolated,
// with `m` edges, keyed by the smallest relabeled edge list.
fn brute_classes(n: usize, m: usize, filter: Filter) -> BTreeSet<Vec<(usize, usize)>> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let perms = permutations(n);
    let mut classes = BTreeSet::new();
    for mask in 0u32..(1 << pairs.len()) {
        if mask.count_ones() as usize != m {
            continue;
        }
        let edges: Vec<(usize, usize)> = (0..pairs.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| pairs[i])
            .collect();
        let g = Graph::from_edges(n, edges.clone()).unwrap();
        if (0..n).any(|v| g.degree(v) == 0) || !filter.accepts(&g) {
            continue;
        }
        let key = perms
            .iter()
            .map(|p| {
                let mut e: Vec<(usize, usize)> = edges
                    .iter()
                    .map(|&(a, b)| (p[a].min(p[b]), p[a].max(p[b])))
                    .collect();
                e.sort_unstable();
                e
            })
            .min()
            .unwrap();
        classes.insert(key);
    }
    classes
}

#[test]
fn counts_match_brute_force_up_to_six_vertices() {
    for filter in [Filter::All, Filter::TwoLeavesFree, Filter::LeafFree] {
        for m in 1..=6 {
            let expected: usize = (2..=6).map(|n| brute_classes(n, m, filter).len()).sum();
            let got = enumerate_graphs(m, 6, filter).unwrap();
            assert_eq!(got.len(), expected, "m={m} filter={filter:?}");
        }
    }
}

#[test]
fn no_duplicate_classes() {
    for m in 1..=9 {
        let graphs = enumerate_graphs(m, (m + 1).min(10), Filter::All).unwrap();
        let forms: BTreeSet<String> = graphs
            .iter()
            .map(|g| encode_graph6(&canonical_form(g).unwrap()).unwrap())
            .collect();
        assert_eq!(forms.len(), graphs.len(), "m={m}");
        assert!(graphs
            .iter()
            .all(|g| g.m() == m && (0..g.n()).all(|v| g.degree(v) > 0)));
    }
}

#[test]
fn two_leaves_free_family_instances_are_enumerated() {
    for m in [6usize, 7, 8] {
        let listed: BTreeSet<String> = enumerate_graphs(m, m + 1, Filter::TwoLeavesFree)
            .unwrap()
            .iter()
            .map(|g| encode_graph6(g).unwrap())
            .collect();
        let mut found = 0;
        for id in ALL_FAMILIES {
            for k in id.min_k()..=4 {
                let Ok(inst) = id.build(k) else { continue };
                let g = &inst.graph;
                let tlf = (0..g.n()).filter(|&v| g.degree(v) == 1).count() <= 1;
                if g.m() != m || g.n() > m + 1 || !tlf {
                    continue;
                }
                let code = encode_graph6(&canonical_form(g).unwrap()).unwrap();
                assert!(
                    listed.contains(&code),
                    "{} k={k} missing at m={m}",
                    id.name()
                );
                found += 1;
            }
        }
        assert!(found > 0, "no family instance of size {m}");
    }
}

#[test]
fn maximum_grows_with_size() {
    let maxima: Vec<f64> = (3..=9)
        .map(|m| {
            extremal_search(m, m + 1, Filter::TwoLeavesFree)
                .unwrap()
                .max_q
        })
        .collect();
    assert!(maxima.windows(2).all(|w| w[1] > w[0]), "{maxima:?}");
    // K_3 at m = 3
    assert!((maxima[0] - 4.0).abs() < 1e-12);
}

#[test]
fn generated_graphs_pass_their_filter() {
    for filter in [Filter::TwoLeavesFree, Filter::LeafFree] {
        for m in 3..=8 {
            assert!(enumerate_graphs(m, m + 1, filter)
                .unwrap()
                .iter()
                .all(|g| filter.accepts(g)));
        }
    }
}
