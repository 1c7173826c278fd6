//! Verification suites producing certificate arrays.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use crate::canon::canonical_form_bounded;
use crate::certificate::{num, Certificate, CertificateBuilder, Tolerances};
use crate::enumerate::{
    default_max_n, enumerate_graphs, search_over, verify_delta_bound, Filter, MAX_N,
};
use crate::error::Error;
use crate::exactpoly::paper::{verify_paper_polynomial, ALL_POLYNOMIALS};
use crate::exactpoly::quotient::{symbolic_quotient, template_min_k};
use crate::exactpoly::sturm::{cauchy_bound, count_roots, from_integers, sturm_chain};
use crate::exactpoly::{charpoly, largest_real_root};
use crate::families::{
    build_family, closed_form_q, predicted_extremal, FamilyId, PREDICTION_MIN_M,
};
use crate::graph::Graph;
use crate::graph6::encode_graph6;
use crate::spectral::{
    check_rotation_monotonicity, degree_bound_report, perron_identity, perron_vector, q_index,
    q_value, DEFAULT_TOL,
};
use crate::surgery::{
    chain_values, ordering_chains, run_surgery, surgery_inequalities, InequalityChain,
    ALL_SURGERIES,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Lemmas,
    Polynomials,
    Theorem12,
    DeltaBound,
    All,
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Lemmas => "lemmas",
            Suite::Polynomials => "polynomials",
            Suite::Theorem12 => "theorem12",
            Suite::DeltaBound => "delta-bound",
            Suite::All => "all",
        })
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "lemmas" => Ok(Suite::Lemmas),
            "polynomials" => Ok(Suite::Polynomials),
            "theorem12" => Ok(Suite::Theorem12),
            "delta-bound" => Ok(Suite::DeltaBound),
            "all" => Ok(Suite::All),
            other => Err(format!("unknown suite {other:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteParams {
    pub k_min: i64,
    pub k_max: i64,
    pub m_max: usize,
    /// Vertex bound for enumerations; `None` uses the default `min(m+1, 12)`.
    pub max_n: Option<usize>,
    pub tol: Tolerances,
    /// Seed for the randomized property checks.
    pub seed: u64,
}

impl Default for SuiteParams {
    fn default() -> Self {
        SuiteParams {
            k_min: 3,
            k_max: 40,
            m_max: 9,
            max_n: None,
            tol: Tolerances::default(),
            seed: 20,
        }
    }
}

pub fn run_suite(suite: Suite, p: &SuiteParams) -> Result<Vec<Certificate>, Error> {
    let mut certs = match suite {
        Suite::Lemmas => lemmas(p)?,
        Suite::Polynomials => polynomials(p)?,
        Suite::Theorem12 => theorem12(p)?,
        Suite::DeltaBound => delta_bound(p)?,
        Suite::All => {
            let mut out = lemmas(p)?;
            out.extend(polynomials(p)?);
            out.extend(theorem12(p)?);
            out.extend(delta_bound(p)?);
            out
        }
    };
    let tol = serde_json::to_value(p.tol)?;
    for c in &mut certs {
        c.parameters
            .entry("tolerances".into())
            .or_insert_with(|| tol.clone());
    }
    Ok(certs)
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Lower bound asserted for a family: `(claim, anchor, family, bound(k))`.
type LowerBound = (&'static str, &'static str, FamilyId, fn(i64) -> BigRational);

pub fn lower_bounds() -> Vec<LowerBound> {
    vec![
        ("bound.s3p1", "q > 2k+1+2/(2k-1)", FamilyId::K1vS3P1, |k| {
            rat(2 * k + 1, 1) + rat(2, 2 * k - 1)
        }),
        ("bound.kp2p1", "q > 2k+2", FamilyId::K1vKP2P1, |k| {
            rat(2 * k + 2, 1)
        }),
        ("bound.s4p1", "q > 2k+2+1/k", FamilyId::K1vS4P1, |k| {
            rat(2 * k + 2, 1) + rat(1, k)
        }),
        ("bound.kp2s3", "q > 2k+2+1/k", FamilyId::K1vKP2S3, |k| {
            rat(2 * k + 2, 1) + rat(1, k)
        }),
    ]
}

/// Strict lower bound check: numeric gap and, where a quotient template
/// exists, an exact Sturm count of quotient roots above the bound.
pub fn check_lower_bound(
    lb: &LowerBound,
    k_min: i64,
    k_max: i64,
    tol: &Tolerances,
) -> Result<Certificate, Error> {
    let (claim, anchor, fam, bound) = lb;
    let derived = charpoly(&symbolic_quotient(*fam)?)?;
    let k_lo = k_min.max(fam.min_k()).max(2);
    let rows: Vec<_> = (k_lo..=k_max)
        .into_par_iter()
        .map(|k| -> Result<_, Error> {
            let q = q_value(&build_family(*fam, k)?.graph)?;
            let b = bound(k);
            let bf = num_traits::ToPrimitive::to_f64(&b).expect("finite");
            let exact = (k >= template_min_k(*fam)).then(|| {
                let poly = from_integers(&derived.at_k(k));
                let chain = sturm_chain(&poly);
                count_roots(&chain, &b, &cauchy_bound(&poly)) >= 1
            });
            Ok((k, q, bf, exact))
        })
        .collect::<Result<_, _>>()?;
    let mut c = CertificateBuilder::assertion(*claim, format!("{anchor} for {}", fam.formula()))
        .param("family", fam.name())
        .param("k_min", k_lo)
        .param("k_max", k_max)
        .tolerances(tol);
    for (k, q, b, exact) in rows {
        let gap = q - b;
        let ok = gap > tol.gap && exact.unwrap_or(true);
        c.push(
            format!("k={k}"),
            json!({ "k": k }),
            json!({ "q": num(q), "bound": num(b), "gap": num(gap), "exact_root_above_bound": exact }),
            Some(tol.gap),
            ok,
        );
    }
    Ok(c.finish())
}

/// Each consecutive inequality of the chain with gap above `tol.gap`.
pub fn check_chain(
    ch: &InequalityChain,
    k_min: i64,
    k_max: i64,
    tol: &Tolerances,
) -> Result<Certificate, Error> {
    let k_lo = k_min.max(ch.min_k);
    let rows: Vec<_> = (k_lo..=k_max)
        .into_par_iter()
        .map(|k| chain_values(&ch.chain, k).map(|(qs, gap)| (k, qs, gap)))
        .collect::<Result<_, _>>()?;
    let mut c = CertificateBuilder::assertion(ch.claim_id, ch.anchor())
        .param(
            "families",
            ch.chain.iter().map(|f| f.name()).collect::<Vec<_>>(),
        )
        .param("k_min", k_lo)
        .param("k_max", k_max)
        .tolerances(tol);
    for (k, qs, gap) in rows {
        c.push(
            format!("k={k}"),
            json!({ "k": k }),
            json!({ "q": qs.iter().map(|&q| num(q)).collect::<Vec<_>>(), "min_gap": num(gap) }),
            Some(tol.gap),
            gap > tol.gap,
        );
    }
    Ok(c.finish())
}

/// Random connected graph on `n` vertices with edge probability drawn per graph.
pub fn random_connected(rng: &mut ChaCha8Rng, n: usize) -> Graph {
    loop {
        let p = rng.gen_range(0.25..0.8);
        let edges: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|_| rng.gen_bool(p))
            .collect();
        let g = Graph::from_edges(n, edges).expect("simple by construction");
        if g.is_connected() {
            return g;
        }
    }
}

/// Perron identity on random connected graphs.
pub fn perron_identity_check(
    seed: u64,
    count: usize,
    tol: &Tolerances,
) -> Result<Certificate, Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut c = CertificateBuilder::assertion(
        "property.perron_identity",
        "q = sum over edges (x_i + x_j)^2",
    )
    .param("seed", seed)
    .param("count", count)
    .tolerances(tol);
    for i in 0..count {
        let n = rng.gen_range(2..=10);
        let g = random_connected(&mut rng, n);
        let r = q_index(&g, DEFAULT_TOL)?;
        let s = perron_identity(&g, &r.perron);
        let diff = (s - r.q).abs();
        c.push(
            format!("graph {i}"),
            json!({ "graph6": encode_graph6(&g)? }),
            json!({ "q": num(r.q), "sum": num(s), "abs_diff": num(diff), "residual": num(r.residual) }),
            Some(tol.residual),
            diff <= tol.residual && r.residual <= tol.residual,
        );
    }
    Ok(c.finish())
}

/// `q(H) < q(G)` for random proper connected subgraphs `H` of connected `G`.
pub fn subgraph_monotonicity_check(
    seed: u64,
    count: usize,
    tol: &Tolerances,
) -> Result<Certificate, Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut c = CertificateBuilder::assertion(
        "property.subgraph_monotonicity",
        "q(H) < q(G) for proper subgraphs H",
    )
    .param("seed", seed)
    .param("count", count)
    .param("margin", 1e-10)
    .tolerances(tol);
    let mut done = 0;
    while done < count {
        let n = rng.gen_range(3..=9);
        let g = random_connected(&mut rng, n);
        let mut edges: Vec<(usize, usize)> = g.edges().collect();
        edges.shuffle(&mut rng);
        let drop = rng.gen_range(1..=3.min(edges.len() - 1));
        let h = g.with_edits(&edges[..drop], &[])?.without_isolated();
        if h.m() == 0 || !h.is_connected() {
            continue;
        }
        let (qg, qh) = (q_value(&g)?, q_value(&h)?);
        c.push(
            format!("pair {done}"),
            json!({ "g": encode_graph6(&g)?, "h": encode_graph6(&h)? }),
            json!({ "q_g": num(qg), "q_h": num(qh) }),
            Some(1e-10),
            qh < qg - 1e-10,
        );
        done += 1;
    }
    Ok(c.finish())
}

/// Edge rotation towards a vertex with a Perron entry at least as large
/// strictly increases `q`: random valid instances.
pub fn rotation_check(seed: u64, count: usize) -> Result<Certificate, Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut c = CertificateBuilder::assertion(
        "property.rotation_random",
        "x_u >= x_v implies q(G) < q(G')",
    )
    .param("seed", seed)
    .param("count", count);
    let mut done = 0;
    while done < count {
        let n = rng.gen_range(3..=8);
        let g = random_connected(&mut rng, n);
        let x = perron_vector(&g)?;
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u == v || x[u] < x[v] {
            continue;
        }
        let cand: Vec<usize> = g
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&w| w != u && !g.has_edge(w, u))
            .collect();
        if cand.is_empty() {
            continue;
        }
        let take = rng.gen_range(1..=cand.len());
        let moved: Vec<usize> = cand.choose_multiple(&mut rng, take).copied().collect();
        let rotated = crate::spectral::rotate_edges(&g, u, v, &moved)?;
        if !rotated.is_connected() {
            continue;
        }
        let ok = check_rotation_monotonicity(&g, u, v, &moved)?;
        c.push(
            format!("instance {done}"),
            json!({ "graph6": encode_graph6(&g)?, "u": u, "v": v, "moved": moved }),
            json!({ "q": num(q_value(&g)?), "q_rotated": num(q_value(&rotated)?) }),
            Some(crate::spectral::STRICT_MARGIN),
            ok,
        );
        done += 1;
    }
    Ok(c.finish())
}

/// Degree-based upper bound and the exact average-degree bounds on every
/// enumerated graph with `1..=m_max` edges.
pub fn degree_bounds_on_enumeration(
    m_max: usize,
    max_n: Option<usize>,
) -> Result<Certificate, Error> {
    let mut c = CertificateBuilder::assertion(
        "property.degree_bounds",
        "q <= max(d(v)+m(v)); m(v) <= 2m/d(v)-1; m(v) <= m/d(v)+(d(v)-1)/2",
    )
    .param("m_max", m_max)
    .param("filter", Filter::All);
    for m in 1..=m_max {
        let n_cap = max_n.unwrap_or_else(|| default_max_n(m));
        let graphs = enumerate_graphs(m, n_cap, Filter::All)?;
        let rows: Vec<(bool, bool, f64)> = graphs
            .par_iter()
            .map(|g| -> Result<_, Error> {
                let rep = degree_bound_report(g)?;
                let b = num_traits::ToPrimitive::to_f64(&rep.max_d_plus_m).expect("finite");
                let q = q_value(g)?;
                Ok((rep.lemma24_ok, q <= b + 1e-9, b - q))
            })
            .collect::<Result<_, _>>()?;
        let l24 = rows.iter().all(|r| r.0);
        let l23 = rows.iter().all(|r| r.1);
        let slack = rows.iter().map(|r| r.2).fold(f64::INFINITY, f64::min);
        c.push(
            format!("m={m}"),
            json!({ "m": m, "max_n": n_cap }),
            json!({ "graphs": graphs.len(), "average_degree_bounds": l24, "upper_bound": l23, "min_slack": num(slack) }),
            Some(1e-9),
            l24 && l23,
        );
    }
    Ok(c.finish())
}

fn lemmas(p: &SuiteParams) -> Result<Vec<Certificate>, Error> {
    let mut out = Vec::new();
    for lb in lower_bounds() {
        out.push(check_lower_bound(&lb, p.k_min, p.k_max, &p.tol)?);
    }
    for ch in ordering_chains() {
        out.push(check_chain(&ch, p.k_min, p.k_max, &p.tol)?);
    }
    for ch in surgery_inequalities() {
        out.push(check_chain(&ch, p.k_min, p.k_max, &p.tol)?);
    }
    for s in ALL_SURGERIES {
        let mut c = CertificateBuilder::assertion(
            format!("surgery.construct.{}", s.name()),
            format!(
                "{} -> {}",
                s.families().0.formula(),
                s.families().1.formula()
            ),
        );
        for k in s.min_k()..s.min_k() + 6 {
            let o = run_surgery(s, k)?;
            let ok = o.isomorphic_to_target && o.rotation_increases.unwrap_or(true);
            c.push(
                format!("k={k}"),
                json!({ "k": k }),
                serde_json::to_value(&o)?,
                None,
                ok,
            );
        }
        out.push(c.finish());
    }
    out.push(perron_identity_check(p.seed, 100, &p.tol)?);
    out.push(subgraph_monotonicity_check(p.seed + 1, 100, &p.tol)?);
    out.push(rotation_check(p.seed + 2, 50)?);
    out.push(degree_bounds_on_enumeration(p.m_max.min(9), p.max_n)?);
    Ok(out)
}

fn polynomials(p: &SuiteParams) -> Result<Vec<Certificate>, Error> {
    let mut out = Vec::new();
    for poly in ALL_POLYNOMIALS {
        let k_lo = p.k_min.max(poly.family().min_k());
        out.extend(verify_paper_polynomial(poly, k_lo, p.k_max, &p.tol)?);
    }
    Ok(out)
}

/// Closed form against the computed Q-index.
pub fn check_closed_form(
    fam: FamilyId,
    claim: &str,
    k_min: i64,
    k_max: i64,
    tol: &Tolerances,
) -> Result<Certificate, Error> {
    let k_lo = k_min.max(fam.min_k());
    let rows: Vec<_> = (k_lo..=k_max)
        .into_par_iter()
        .map(|k| -> Result<_, Error> {
            let cf = closed_form_q(fam, k)?.expect("family has a closed form");
            let r = q_index(&build_family(fam, k)?.graph, DEFAULT_TOL)?;
            Ok((k, cf, r.q, r.residual))
        })
        .collect::<Result<_, _>>()?;
    let anchor = closed_form_q(fam, fam.min_k())?.map(|_| match fam {
        FamilyId::K1vKP2P1 => "q = (2k+3+sqrt(4k^2+4k+9))/2",
        _ => "q = (2k+3+sqrt(4k^2-4k+9))/2",
    });
    let mut c = CertificateBuilder::assertion(claim, anchor.unwrap_or_default())
        .param("family", fam.name())
        .param("k_min", k_lo)
        .param("k_max", k_max)
        .tolerances(tol);
    for (k, cf, q, res) in rows {
        let diff = (cf.value() - q).abs();
        c.push(
            format!("k={k}"),
            json!({ "k": k }),
            json!({ "closed_form": cf.to_string(), "value": num(cf.value()), "q": num(q), "abs_diff": num(diff), "residual": num(res) }),
            Some(tol.residual),
            diff <= tol.residual && res <= tol.residual,
        );
    }
    Ok(c.finish())
}

/// Exhaustive maximizers for sizes `6..=m_max`, compared with the
/// residue-class prediction. Always reported: the sizes lie below the
/// range where the prediction is proven.
pub fn desk_searches(m_max: usize, max_n: Option<usize>) -> Result<Vec<Certificate>, Error> {
    let mut out = Vec::new();
    for m in 6..=m_max {
        let n_cap = max_n.unwrap_or_else(|| default_max_n(m));
        let graphs = enumerate_graphs(m, n_cap, Filter::TwoLeavesFree)?;
        let res = search_over(m, n_cap, Filter::TwoLeavesFree, &graphs)?;
        let pred = predicted_extremal(m as i64);
        let predicted = match build_family(pred.family, pred.k) {
            Ok(inst) if inst.graph.m() == m && inst.graph.n() <= MAX_N => {
                let q = q_value(&inst.graph)?;
                let code = encode_graph6(&canonical_form_bounded(&inst.graph, MAX_N)?)?;
                json!({ "family": pred.family.name(), "k": pred.k, "graph6": code, "q": num(q),
                        "in_argmax": res.argmax.contains(&code) })
            }
            Ok(inst) => {
                json!({ "family": pred.family.name(), "k": pred.k, "m": inst.graph.m(), "unavailable": "size or order mismatch" })
            }
            Err(e) => {
                json!({ "family": pred.family.name(), "k": pred.k, "unavailable": e.to_string() })
            }
        };
        let matches = predicted["in_argmax"] == true;
        let mut c = CertificateBuilder::report(
            format!("search.m{m}"),
            "argmax of q over 2-leaves-free graphs of size m versus the residue-class family",
        )
        .param("m", m)
        .param("max_n", n_cap)
        .param("hypothesis_min_m", PREDICTION_MIN_M);
        c.push(
            format!("m={m}"),
            json!({ "m": m, "filter": Filter::TwoLeavesFree }),
            json!({
                "graph_count": res.graph_count,
                "max_q": num(res.max_q),
                "argmax": res.argmax,
                "disconnected_in_argmax": res.disconnected_in_argmax,
                "predicted": predicted,
                "warning": pred.warning,
            }),
            Some(crate::enumerate::ARGMAX_TOL),
            matches,
        );
        out.push(c.finish());
    }
    Ok(out)
}

/// The predicted families at sizes where the prediction applies: right
/// residue class, 2-leaves-free, and above the competing residue families.
pub fn prediction_consistency(k_min: i64, k_max: i64) -> Result<Certificate, Error> {
    let mut c = CertificateBuilder::assertion(
        "prediction.families",
        "m = 3k, 3k+1, 3k+2 map to the stated families",
    );
    let m_lo = (3 * k_min).max(PREDICTION_MIN_M);
    for m in m_lo..=3 * k_max + 2 {
        let pred = predicted_extremal(m);
        let inst = build_family(pred.family, pred.k)?;
        let prof = crate::graph::structural_profile(&inst.graph);
        let ok = inst.graph.m() as i64 == m && prof.is_two_leaves_free() && pred.warning.is_none();
        c.push(
            format!("m={m}"),
            json!({ "m": m }),
            json!({ "family": pred.family.name(), "k": pred.k, "edges": inst.graph.m(), "pendants": prof.pendant_count }),
            None,
            ok,
        );
    }
    Ok(c.param("k_min", k_min).param("k_max", k_max).finish())
}

fn theorem12(p: &SuiteParams) -> Result<Vec<Certificate>, Error> {
    let mut out = vec![
        check_closed_form(
            FamilyId::K1vKP2P1,
            "closed_form.k1_kp2_p1",
            p.k_min.max(2),
            p.k_max,
            &p.tol,
        )?,
        check_closed_form(
            FamilyId::K1vKP2,
            "closed_form.k1_kp2",
            p.k_min.max(2),
            p.k_max,
            &p.tol,
        )?,
        prediction_consistency(p.k_min, p.k_max)?,
    ];
    // the quintic families, by their quotient root
    for fam in [FamilyId::K1vS3P1, FamilyId::K1vS4P1] {
        let derived = charpoly(&symbolic_quotient(fam)?)?;
        let mut c = CertificateBuilder::assertion(
            format!("quotient_root.{}", fam.name()),
            format!("largest root of det(xI - B) = q({})", fam.formula()),
        )
        .param("polynomial", derived.to_string())
        .tolerances(&p.tol);
        for k in p.k_min.max(template_min_k(fam))..=p.k_max {
            let r = largest_real_root(&derived, k, crate::exactpoly::paper::ROOT_TOL)?;
            let q = q_value(&build_family(fam, k)?.graph)?;
            c.push(
                format!("k={k}"),
                json!({ "k": k }),
                json!({ "root": num(r), "q": num(q) }),
                Some(p.tol.root),
                (r - q).abs() <= p.tol.root,
            );
        }
        out.push(c.finish());
    }
    out.extend(desk_searches(p.m_max, p.max_n)?);
    Ok(out)
}

fn delta_bound(p: &SuiteParams) -> Result<Vec<Certificate>, Error> {
    let mut out = Vec::new();
    for m in 3..=p.m_max {
        out.extend(verify_delta_bound(m, p.max_n)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificate::Status;

    #[test]
    fn suite_names() {
        for s in [
            Suite::Lemmas,
            Suite::Polynomials,
            Suite::Theorem12,
            Suite::DeltaBound,
            Suite::All,
        ] {
            assert_eq!(s.to_string().parse::<Suite>().unwrap(), s);
        }
    }

    #[test]
    fn bounds_pass_on_a_short_range() {
        for lb in lower_bounds() {
            let c = check_lower_bound(&lb, 2, 12, &Tolerances::default()).unwrap();
            assert_eq!(c.status, Status::Pass, "{}", c.claim_id);
        }
    }

    #[test]
    fn closed_forms_pass() {
        let c = check_closed_form(FamilyId::K1vKP2P1, "cf", 2, 15, &Tolerances::default()).unwrap();
        assert_eq!(c.status, Status::Pass);
    }
}
