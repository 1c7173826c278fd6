//! Q-index, Perron vectors, degree bounds and edge rotation.
//!
//! The Q-index is computed per connected component by power iteration on
//! `Q = D + A` from the all-ones vector. Every returned value carries its
//! residual `‖Qx − qx‖∞`, so the result is checkable independently of the
//! method. When power iteration stalls the component is handed to a dense
//! symmetric eigensolver and the residual is recomputed.

use nalgebra::{DMatrix, SymmetricEigen};
use num_rational::Ratio;
use serde::Serialize;

use crate::error::SpectralError;
use crate::graph::Graph;

/// Smallest accepted tolerance.
pub const MIN_TOL: f64 = 1e-12;
/// Tolerance used by the verification suites.
pub const DEFAULT_TOL: f64 = 1e-11;
/// Margin separating a strict inequality from roundoff.
pub const STRICT_MARGIN: f64 = 1e-12;
/// Largest residual any returned result may carry.
pub const RESIDUAL_CONTRACT: f64 = 1e-8;

/// Perron entries closer than this count as equal.
pub const PERRON_TIE_TOL: f64 = 1e-10;

const MAX_ITERATIONS: usize = 200_000;
const DENSE_FALLBACK_MAX_N: usize = 2_000;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QSpectrumResult {
    pub q: f64,
    /// Unit vector, positive on the first component attaining `q`, zero elsewhere.
    pub perron: Vec<f64>,
    pub residual: f64,
    /// Q-index of each component, in the order of [`Graph::components`].
    pub component_q: Vec<f64>,
}

fn q_matvec(g: &Graph, verts: &[usize], local: &[usize], x: &[f64], y: &mut [f64]) {
    for (i, &v) in verts.iter().enumerate() {
        let nb = g.neighbors(v);
        let s: f64 = nb.iter().map(|&u| x[local[u]]).sum();
        y[i] = nb.len() as f64 * x[i] + s;
    }
}

fn inf_norm_residual(g: &Graph, verts: &[usize], local: &[usize], x: &[f64], q: f64) -> f64 {
    let mut y = vec![0.0; x.len()];
    q_matvec(g, verts, local, x, &mut y);
    y.iter()
        .zip(x)
        .map(|(a, b)| (a - q * b).abs())
        .fold(0.0, f64::max)
}

struct Dominant {
    q: f64,
    x: Vec<f64>,
    residual: f64,
}

// Largest eigenpair of Q restricted to one component (at least one edge).
fn component_dominant(
    g: &Graph,
    verts: &[usize],
    local: &[usize],
    tol: f64,
) -> Result<Dominant, SpectralError> {
    let n = verts.len();
    let mut x = vec![1.0 / (n as f64).sqrt(); n];
    let mut y = vec![0.0; n];
    let mut best = (f64::INFINITY, 0.0, x.clone());
    for _ in 0..MAX_ITERATIONS {
        q_matvec(g, verts, local, &x, &mut y);
        let q = x.iter().zip(&y).map(|(a, b)| a * b).sum::<f64>();
        let residual = y
            .iter()
            .zip(&x)
            .map(|(a, b)| (a - q * b).abs())
            .fold(0.0, f64::max);
        if residual < best.0 {
            best = (residual, q, x.clone());
        }
        let floor = 64.0 * f64::EPSILON * q.max(1.0);
        if residual <= tol.max(floor) {
            return Ok(Dominant { q, x, residual });
        }
        let norm = y.iter().map(|v| v * v).sum::<f64>().sqrt();
        for (xi, yi) in x.iter_mut().zip(&y) {
            *xi = yi / norm;
        }
    }
    if n <= DENSE_FALLBACK_MAX_N {
        let mut m = DMatrix::<f64>::zeros(n, n);
        for (i, &v) in verts.iter().enumerate() {
            m[(i, i)] = g.degree(v) as f64;
            for &u in g.neighbors(v) {
                m[(i, local[u])] = 1.0;
            }
        }
        let eig = SymmetricEigen::new(m);
        let (idx, &lam) = eig
            .eigenvalues
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .expect("non-empty component");
        let mut v: Vec<f64> = eig.eigenvectors.column(idx).iter().copied().collect();
        if v.iter().sum::<f64>() < 0.0 {
            v.iter_mut().for_each(|e| *e = -*e);
        }
        let r = inf_norm_residual(g, verts, local, &v, lam);
        if r <= RESIDUAL_CONTRACT {
            return Ok(Dominant {
                q: lam,
                x: v,
                residual: r,
            });
        }
    }
    Err(SpectralError::NonConvergence {
        residual: best.0,
        iterations: MAX_ITERATIONS,
        best_q: best.1,
        best_vector: best.2,
    })
}

/// Q-index of `g` with the per-component breakdown.
pub fn q_index(g: &Graph, tol: f64) -> Result<QSpectrumResult, SpectralError> {
    let n = g.n();
    if n == 0 {
        return Err(SpectralError::Empty);
    }
    if tol.is_nan() || tol < MIN_TOL {
        return Err(SpectralError::Tolerance(tol));
    }
    let comps = g.components();
    let mut local = vec![0usize; n];
    let mut component_q = Vec::with_capacity(comps.len());
    let mut best: Option<(usize, Dominant)> = None;
    for (ci, verts) in comps.iter().enumerate() {
        for (i, &v) in verts.iter().enumerate() {
            local[v] = i;
        }
        let dom = if verts.len() == 1 {
            Dominant {
                q: 0.0,
                x: vec![1.0],
                residual: 0.0,
            }
        } else {
            component_dominant(g, verts, &local, tol)?
        };
        component_q.push(dom.q);
        if best.as_ref().is_none_or(|(_, b)| dom.q > b.q) {
            best = Some((ci, dom));
        }
    }
    let (ci, dom) = best.expect("at least one component");
    let mut perron = vec![0.0; n];
    for (i, &v) in comps[ci].iter().enumerate() {
        perron[v] = dom.x[i];
    }
    Ok(QSpectrumResult {
        q: dom.q,
        perron,
        residual: dom.residual,
        component_q,
    })
}

/// Q-index at [`DEFAULT_TOL`].
pub fn q_value(g: &Graph) -> Result<f64, SpectralError> {
    Ok(q_index(g, DEFAULT_TOL)?.q)
}

/// Positive unit eigenvector for `q(g)` of a connected graph.
pub fn perron_vector(g: &Graph) -> Result<Vec<f64>, SpectralError> {
    if g.n() < 2 {
        return Err(SpectralError::TooSmall(2));
    }
    if !g.is_connected() {
        return Err(SpectralError::Disconnected);
    }
    Ok(q_index(g, DEFAULT_TOL)?.perron)
}

/// `Σ_{ij ∈ E} (x_i + x_j)²`.
pub fn perron_identity(g: &Graph, x: &[f64]) -> f64 {
    g.edges().map(|(i, j)| (x[i] + x[j]).powi(2)).sum()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexBound {
    pub v: usize,
    pub degree: usize,
    /// Average degree of the neighbours of `v`.
    pub avg_neighbor_degree: Ratio<i64>,
    pub d_plus_m: Ratio<i64>,
    pub two_m_over_d_ok: bool,
    pub half_degree_ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeBoundReport {
    /// One record per non-isolated vertex.
    pub records: Vec<VertexBound>,
    pub max_d_plus_m: Ratio<i64>,
    pub lemma24_ok: bool,
}

/// Exact `d(v) + m(v)` upper bound for `q` and both average-degree bounds
/// `m(v) ≤ 2m/d(v) − 1` and `m(v) ≤ m/d(v) + (d(v) − 1)/2`.
pub fn degree_bound_report(g: &Graph) -> Result<DegreeBoundReport, SpectralError> {
    if g.m() == 0 {
        return Err(SpectralError::Edgeless);
    }
    let m = g.m() as i64;
    let mut records = Vec::new();
    for v in 0..g.n() {
        let d = g.degree(v) as i64;
        if d == 0 {
            continue;
        }
        let sum: i64 = g.neighbors(v).iter().map(|&u| g.degree(u) as i64).sum();
        let mv = Ratio::new(sum, d);
        let b1 = Ratio::new(2 * m, d) - 1;
        let b2 = Ratio::new(m, d) + Ratio::new(d - 1, 2);
        records.push(VertexBound {
            v,
            degree: d as usize,
            avg_neighbor_degree: mv,
            d_plus_m: mv + d,
            two_m_over_d_ok: mv <= b1,
            half_degree_ok: mv <= b2,
        });
    }
    let max_d_plus_m = records
        .iter()
        .map(|r| r.d_plus_m)
        .max()
        .expect("an edge exists");
    let lemma24_ok = records
        .iter()
        .all(|r| r.two_m_over_d_ok && r.half_degree_ok);
    Ok(DegreeBoundReport {
        records,
        max_d_plus_m,
        lemma24_ok,
    })
}

/// Replaces each edge `wv`, `w ∈ moved`, by `wu`.
pub fn rotate_edges(
    g: &Graph,
    u: usize,
    v: usize,
    moved: &[usize],
) -> Result<Graph, SpectralError> {
    let n = g.n();
    for x in [u, v].into_iter().chain(moved.iter().copied()) {
        if x >= n {
            return Err(SpectralError::Rotation {
                vertex: x,
                reason: "vertex out of range",
            });
        }
    }
    if u == v {
        return Err(SpectralError::Rotation {
            vertex: u,
            reason: "u and v must differ",
        });
    }
    if !g.is_connected() {
        return Err(SpectralError::Disconnected);
    }
    let mut remove = Vec::with_capacity(moved.len());
    let mut add = Vec::with_capacity(moved.len());
    for (i, &w) in moved.iter().enumerate() {
        if moved[..i].contains(&w) {
            return Err(SpectralError::Rotation {
                vertex: w,
                reason: "vertex listed twice",
            });
        }
        if w == u {
            return Err(SpectralError::Rotation {
                vertex: w,
                reason: "moved vertex equals u",
            });
        }
        if !g.has_edge(w, v) {
            return Err(SpectralError::Rotation {
                vertex: w,
                reason: "moved vertex is not a neighbour of v",
            });
        }
        if g.has_edge(w, u) {
            return Err(SpectralError::Rotation {
                vertex: w,
                reason: "moved vertex is already a neighbour of u",
            });
        }
        remove.push((w, v));
        add.push((w, u));
    }
    Ok(g.with_edits(&remove, &add)?)
}

/// True iff rotating towards the vertex with the larger Perron entry
/// strictly raises the Q-index.
pub fn check_rotation_monotonicity(
    g: &Graph,
    u: usize,
    v: usize,
    moved: &[usize],
) -> Result<bool, SpectralError> {
    let rotated = rotate_edges(g, u, v, moved)?;
    let x = perron_vector(g)?;
    // equal entries from symmetric vertices may differ by roundoff
    if x[u] < x[v] - PERRON_TIE_TOL {
        return Err(SpectralError::Rotation {
            vertex: u,
            reason: "Perron entry at u is below the entry at v",
        });
    }
    if !rotated.is_connected() {
        return Err(SpectralError::Disconnected);
    }
    Ok(q_value(&rotated)? > q_value(g)? + STRICT_MARGIN)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cone, disjoint_union, Primitive};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn prim(p: Primitive) -> Graph {
        p.build().unwrap()
    }

    fn kp2_p1(k: usize) -> Graph {
        let h = disjoint_union(
            &[prim(Primitive::Path(2)), prim(Primitive::Path(1))],
            &[k, 1],
        )
        .unwrap();
        cone(&h)
    }

    #[test]
    fn known_values() {
        assert!((q_value(&prim(Primitive::Cycle(5))).unwrap() - 4.0).abs() < 1e-10);
        assert!((q_value(&prim(Primitive::Star(5))).unwrap() - 5.0).abs() < 1e-10);
        let q = q_value(&kp2_p1(2)).unwrap();
        assert!((q - (7.0 + 33f64.sqrt()) / 2.0).abs() < 1e-9);
        assert!((q - 6.372_281_3).abs() < 1e-7);
        assert!((q_value(&cone(&prim(Primitive::Cycle(3)))).unwrap() - 6.0).abs() < 1e-10);
    }

    #[test]
    fn disconnected_takes_the_max() {
        let g = disjoint_union(
            &[
                prim(Primitive::Cycle(3)),
                prim(Primitive::Star(5)),
                prim(Primitive::Edgeless(1)),
            ],
            &[1, 1, 1],
        )
        .unwrap();
        let r = q_index(&g, 1e-12).unwrap();
        assert_eq!(r.component_q.len(), 3);
        assert!((r.q - 5.0).abs() < 1e-10);
        assert_eq!(r.component_q[2], 0.0);
        assert!(r.perron[..3].iter().all(|&x| x == 0.0));
        assert!(r.perron[3..8].iter().all(|&x| x > 0.0));
        assert!(q_value(&Graph::empty(3)).unwrap() == 0.0);
    }

    #[test]
    fn errors() {
        assert_eq!(q_index(&Graph::empty(0), 1e-10), Err(SpectralError::Empty));
        assert_eq!(
            q_index(&Graph::empty(1), 1e-13),
            Err(SpectralError::Tolerance(1e-13))
        );
        let two = disjoint_union(&[prim(Primitive::Path(2))], &[2]).unwrap();
        assert_eq!(perron_vector(&two), Err(SpectralError::Disconnected));
        assert_eq!(
            degree_bound_report(&Graph::empty(3)),
            Err(SpectralError::Edgeless)
        );
    }

    #[test]
    fn perron_examples() {
        let x = perron_vector(&prim(Primitive::Path(2))).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((x[0] - h).abs() < 1e-10 && (x[1] - h).abs() < 1e-10);

        let x = perron_vector(&prim(Primitive::Star(4))).unwrap();
        assert!(x[0] > x[1]);
        assert!((x[1] - x[2]).abs() < 1e-10 && (x[2] - x[3]).abs() < 1e-10);

        let x = perron_vector(&kp2_p1(2)).unwrap();
        for v in 2..5 {
            assert!((x[1] - x[v]).abs() < 1e-10);
        }
        assert!(x.iter().all(|&e| e > 0.0));
        let norm: f64 = x.iter().map(|e| e * e).sum();
        assert!((norm - 1.0).abs() < 1e-12);
    }

    #[test]
    fn degree_bound_examples() {
        let r = degree_bound_report(&prim(Primitive::Cycle(6))).unwrap();
        assert_eq!(r.max_d_plus_m, Ratio::from_integer(4));
        assert!(r.lemma24_ok);

        let r = degree_bound_report(&prim(Primitive::Star(5))).unwrap();
        assert_eq!(r.records[0].avg_neighbor_degree, Ratio::from_integer(1));
        assert_eq!(r.records[1].avg_neighbor_degree, Ratio::from_integer(4));
        assert_eq!(r.max_d_plus_m, Ratio::from_integer(5));

        let paw = prim(Primitive::StarPlus(4));
        let r = degree_bound_report(&paw).unwrap();
        let bound = *r.max_d_plus_m.numer() as f64 / *r.max_d_plus_m.denom() as f64;
        assert!(q_value(&paw).unwrap() < bound - 1e-6);
    }

    #[test]
    fn rotation_examples() {
        // a-b-c-d, move d from c to b
        let p4 = prim(Primitive::Path(4));
        let r = rotate_edges(&p4, 1, 2, &[3]).unwrap();
        assert_eq!(r.degrees(), vec![1, 3, 1, 1]);
        assert_eq!(rotate_edges(&p4, 1, 2, &[]).unwrap(), p4);
        assert!(matches!(
            rotate_edges(&p4, 1, 2, &[1]),
            Err(SpectralError::Rotation { vertex: 1, .. })
        ));
        assert!(matches!(
            rotate_edges(&p4, 1, 2, &[0]),
            Err(SpectralError::Rotation { vertex: 0, .. })
        ));
    }

    fn random_connected(rng: &mut ChaCha8Rng, n: usize) -> Graph {
        loop {
            let p = rng.gen_range(0.25..0.8);
            let edges: Vec<(usize, usize)> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .filter(|_| rng.gen_bool(p))
                .collect();
            let g = Graph::from_edges(n, edges).unwrap();
            if g.is_connected() {
                return g;
            }
        }
    }

    #[test]
    fn dense_oracle_agrees() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let n = rng.gen_range(2..=12);
            let g = random_connected(&mut rng, n);
            let mut m = DMatrix::<f64>::zeros(n, n);
            for v in 0..n {
                m[(v, v)] = g.degree(v) as f64;
                for &u in g.neighbors(v) {
                    m[(v, u)] = 1.0;
                }
            }
            let top = SymmetricEigen::new(m)
                .eigenvalues
                .iter()
                .copied()
                .fold(f64::MIN, f64::max);
            let r = q_index(&g, 1e-12).unwrap();
            assert!((r.q - top).abs() < 1e-9);
            assert!(r.residual <= RESIDUAL_CONTRACT);
        }
    }

    proptest! {
        #[test]
        fn perron_identity_holds(seed in any::<u64>(), n in 2usize..=10) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = random_connected(&mut rng, n);
            let r = q_index(&g, 1e-12).unwrap();
            prop_assert!((perron_identity(&g, &r.perron) - r.q).abs() <= 1e-8);
            prop_assert!(r.perron.iter().all(|&e| e > 0.0));
        }

        #[test]
        fn cone_raises_q(seed in any::<u64>(), n in 1usize..=9) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let edges: Vec<(usize, usize)> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .filter(|_| rng.gen_bool(0.4))
                .collect();
            let g = Graph::from_edges(n, edges).unwrap();
            prop_assert!(q_value(&cone(&g)).unwrap() > q_value(&g).unwrap() + STRICT_MARGIN);
        }

        #[test]
        fn lemma24_is_exact(seed in any::<u64>(), n in 2usize..=10) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = random_connected(&mut rng, n);
            let r = degree_bound_report(&g).unwrap();
            prop_assert!(r.lemma24_ok);
            let bound = *r.max_d_plus_m.numer() as f64 / *r.max_d_plus_m.denom() as f64;
            prop_assert!(q_value(&g).unwrap() <= bound + 1e-9);
        }
    }
}
