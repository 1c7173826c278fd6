//! Acceptance criteria, one test per criterion. Each prints a single
//! `criterion N ...: PASS|FAIL` line before asserting.

use std::time::{Duration, Instant};

use qindex::certificate::{Certificate, Status, Tolerances};
use qindex::enumerate::verify_delta_bound;
use qindex::exactpoly::largest_real_root;
use qindex::exactpoly::paper::{symbolic_check, PaperPolynomial, ROOT_TOL};
use qindex::families::{build_family, FamilyId};
use qindex::spectral::q_value;
use qindex::suites::{
    check_chain, check_closed_form, check_lower_bound, degree_bounds_on_enumeration, desk_searches,
    lower_bounds, perron_identity_check, rotation_check, subgraph_monotonicity_check,
};
use qindex::surgery::{ordering_chains, run_surgery, surgery_inequalities, Surgery};

fn verdict(label: &str, ok: bool, detail: String) {
    println!("{label}: {} ({detail})", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "{label} failed: {detail}");
}

fn failing(certs: &[Certificate]) -> Vec<String> {
    certs
        .iter()
        .filter(|c| c.status == Status::Fail)
        .map(|c| c.claim_id.clone())
        .collect()
}

fn within(start: Instant, limit: u64) -> (bool, Duration) {
    let t = start.elapsed();
    (t < Duration::from_secs(limit), t)
}

#[test]
fn criterion_1_closed_forms() {
    let start = Instant::now();
    let tol = Tolerances::default();
    let certs = vec![
        check_closed_form(FamilyId::K1vKP2P1, "closed_form.k1_kp2_p1", 2, 100, &tol).unwrap(),
        check_closed_form(FamilyId::K1vKP2, "closed_form.k1_kp2", 2, 100, &tol).unwrap(),
    ];
    let worst = certs
        .iter()
        .flat_map(|c| &c.evidence)
        .map(|e| e.computed["abs_diff"].as_f64().unwrap())
        .fold(0.0, f64::max);
    let (fast, t) = within(start, 30);
    let fails = failing(&certs);
    verdict(
        "criterion 1 closed-form agreement k=2..100, tol 1e-8",
        fails.is_empty() && fast && worst <= 1e-8,
        format!("max |diff| = {worst:.3e}, {t:.2?}, failing {fails:?}"),
    );
}

fn symbolic(label: &str, p: PaperPolynomial) {
    let (derived, equal) = symbolic_check(p).unwrap();
    verdict(
        label,
        equal,
        format!("printed {} / derived {}", p.polynomial(), derived),
    );
}

#[test]
fn criterion_2a_l2_charpoly() {
    symbolic(
        "criterion 2a L2 template charpoly, exact",
        PaperPolynomial::FL2,
    );
}

#[test]
fn criterion_2b_kp2p1_charpoly() {
    symbolic(
        "criterion 2b K1v(kP2+P1) template charpoly, exact",
        PaperPolynomial::GKP2P1,
    );
}

#[test]
fn criterion_2c_f1_charpoly() {
    symbolic(
        "criterion 2c S3P1 five-cell template charpoly = f1, exact",
        PaperPolynomial::F1S3P1,
    );
}

// Largest roots of `polys` and the Q-index of `fam`, pairwise within 1e-7, k = 6..40.
fn cross(label: &str, polys: &[PaperPolynomial], fam: FamilyId) {
    let start = Instant::now();
    let mut worst = 0.0f64;
    let mut at = 0;
    for k in 6..=40 {
        let mut vals: Vec<f64> = polys
            .iter()
            .map(|p| largest_real_root(&p.polynomial(), k, ROOT_TOL).unwrap())
            .collect();
        vals.push(q_value(&build_family(fam, k).unwrap().graph).unwrap());
        for i in 0..vals.len() {
            for j in i + 1..vals.len() {
                let d = (vals[i] - vals[j]).abs();
                if d > worst {
                    worst = d;
                    at = k;
                }
            }
        }
    }
    let (fast, t) = within(start, 120);
    verdict(
        label,
        worst <= 1e-7 && fast,
        format!("max pairwise diff {worst:.3e} at k={at}, {t:.2?}"),
    );
}

#[test]
fn criterion_3a_gamma_f1_s3p1() {
    cross(
        "criterion 3a gamma root, f1 root, q(S3P1) agree k=6..40, tol 1e-7",
        &[PaperPolynomial::Gamma, PaperPolynomial::F1S3P1],
        FamilyId::K1vS3P1,
    );
}

#[test]
fn criterion_3b_xi_s4p1() {
    cross(
        "criterion 3b xi root, q(S4P1) agree k=6..40, tol 1e-7",
        &[PaperPolynomial::Xi],
        FamilyId::K1vS4P1,
    );
}

#[test]
fn criterion_3c_alpha() {
    cross(
        "criterion 3c alpha root, q(family) agree k=6..40, tol 1e-7",
        &[PaperPolynomial::Alpha],
        PaperPolynomial::Alpha.family(),
    );
}

#[test]
fn criterion_3d_beta() {
    cross(
        "criterion 3d beta root, q(family) agree k=6..40, tol 1e-7",
        &[PaperPolynomial::Beta],
        PaperPolynomial::Beta.family(),
    );
}

#[test]
fn criterion_4_bounds() {
    let tol = Tolerances::default();
    let certs: Vec<Certificate> = lower_bounds()
        .iter()
        .map(|lb| check_lower_bound(lb, 2, 200, &tol).unwrap())
        .collect();
    let min_gap = certs
        .iter()
        .flat_map(|c| &c.evidence)
        .map(|e| e.computed["gap"].as_f64().unwrap())
        .fold(f64::INFINITY, f64::min);
    let fails = failing(&certs);
    verdict(
        "criterion 4 lower bounds k=2..200, margin 1e-9 and exact Sturm count",
        fails.is_empty(),
        format!("min gap {min_gap:.3e}, failing {fails:?}"),
    );
}

fn chains_min_gap(certs: &[Certificate]) -> f64 {
    certs
        .iter()
        .flat_map(|c| &c.evidence)
        .map(|e| e.computed["min_gap"].as_f64().unwrap())
        .fold(f64::INFINITY, f64::min)
}

#[test]
fn criterion_5_ordering_chain() {
    let tol = Tolerances::default();
    let certs: Vec<Certificate> = ordering_chains()
        .iter()
        .map(|ch| check_chain(ch, 5, 60, &tol).unwrap())
        .collect();
    let fails = failing(&certs);
    verdict(
        "criterion 5 ordering chain k=5..60, gap 1e-9",
        fails.is_empty(),
        format!("min gap {:.3e}, failing {fails:?}", chains_min_gap(&certs)),
    );
}

#[test]
fn criterion_6_delta_bound() {
    let start = Instant::now();
    let mut certs = Vec::new();
    for m in 3..=9 {
        certs.extend(verify_delta_bound(m, None).unwrap());
    }
    let bound_ok = certs
        .iter()
        .filter(|c| c.claim_id.starts_with("delta_bound."))
        .all(|c| c.status == Status::Pass);
    let reported: Vec<_> = certs
        .iter()
        .filter(|c| c.status == Status::Reported)
        .map(|c| c.claim_id.clone())
        .collect();
    let fails = failing(&certs);
    let (fast, t) = within(start, 180);
    verdict(
        "criterion 6 max degree bound m=3..9 exhaustive",
        bound_ok && fails.is_empty() && fast,
        format!("{t:.2?}, reported {reported:?}, failing {fails:?}"),
    );
}

#[test]
fn criterion_7_property_suites() {
    let tol = Tolerances::default();
    let mut certs = vec![
        perron_identity_check(20, 100, &tol).unwrap(),
        subgraph_monotonicity_check(21, 100, &tol).unwrap(),
        rotation_check(22, 50).unwrap(),
        degree_bounds_on_enumeration(9, None).unwrap(),
    ];
    let instances = [(Surgery::G1Rotation, 3), (Surgery::G2Rotation, 4)];
    let paper_ok = instances.iter().all(|&(s, k)| {
        let o = run_surgery(s, k).unwrap();
        o.rotation_increases == Some(true) && o.q_after > o.q_before
    });
    certs.retain(|c| c.status != Status::Pass);
    verdict(
        "criterion 7 property suites",
        certs.is_empty() && paper_ok,
        format!(
            "rotation instances {}, failing {:?}",
            if paper_ok { "ok" } else { "bad" },
            certs.iter().map(|c| &c.claim_id).collect::<Vec<_>>()
        ),
    );
}

#[test]
fn criterion_8_surgery_inequalities() {
    let tol = Tolerances::default();
    let certs: Vec<Certificate> = surgery_inequalities()
        .iter()
        .map(|ch| check_chain(ch, ch.min_k, 60, &tol).unwrap())
        .collect();
    let fails = failing(&certs);
    verdict(
        "criterion 8 surgery inequalities from their thresholds to k=60, gap 1e-9",
        fails.is_empty(),
        format!("min gap {:.3e}, failing {fails:?}", chains_min_gap(&certs)),
    );
}

#[test]
fn criterion_9_desk_searches() {
    let certs = desk_searches(9, None).unwrap();
    let mut lines = Vec::new();
    for c in &certs {
        let e = &c.evidence[0].computed;
        lines.push(format!(
            "{}: max_q {} argmax {} predicted {} {}",
            c.claim_id,
            e["max_q"],
            e["argmax"],
            e["predicted"]["family"],
            if c.evidence[0].ok {
                "match"
            } else {
                "mismatch"
            }
        ));
    }
    let recorded = certs.len() == 4
        && certs.iter().all(|c| {
            c.status == Status::Reported
                && !c.evidence[0].computed["argmax"]
                    .as_array()
                    .unwrap()
                    .is_empty()
        });
    verdict(
        "criterion 9 desk-scale searches m=6..9 recorded",
        recorded,
        lines.join("; "),
    );
}
