use nalgebra::DMatrix;
use qindex::exactpoly::charpoly;
use qindex::exactpoly::inertia::quotient_spectrum_containment;
use qindex::exactpoly::matrix::MAX_CHARPOLY_DIM;
use qindex::exactpoly::quotient::{
    coarsest_equitable, quotient_q, symbolic_quotient, template_min_k, trivial_partition,
    TEMPLATE_FAMILIES,
};
use qindex::exactpoly::sturm::real_roots;
use qindex::families::build_family;
use qindex::suites::random_connected;
use qindex::Graph;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn dense_spectrum(g: &Graph) -> Vec<f64> {
    let n = g.n();
    let mut q = DMatrix::<f64>::zeros(n, n);
    for v in 0..n {
        q[(v, v)] = g.degree(v) as f64;
        for &u in g.neighbors(v) {
            q[(v, u)] = 1.0;
        }
    }
    let mut ev: Vec<f64> = q.symmetric_eigen().eigenvalues.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

fn near(spec: &[f64], x: f64) -> bool {
    spec.iter().any(|&e| (e - x).abs() < 1e-8)
}

#[test]
fn template_roots_are_eigenvalues() {
    for id in TEMPLATE_FAMILIES {
        let p = charpoly(&symbolic_quotient(id).unwrap()).unwrap();
        for k in template_min_k(id)..template_min_k(id) + 6 {
            let g = build_family(id, k).unwrap().graph;
            let spec = dense_spectrum(&g);
            let roots = real_roots(&p, k, 1e-12).unwrap();
            assert!(roots.iter().all(|&r| near(&spec, r)), "{} k={k}", id.name());
            let top = roots.last().unwrap();
            assert!(
                (top - spec.last().unwrap()).abs() < 1e-8,
                "{} k={k}",
                id.name()
            );
        }
    }
}

#[test]
fn random_equitable_quotients_embed() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut checked = 0;
    while checked < 60 {
        let n = 4 + checked % 6;
        let g = random_connected(&mut rng, n);
        let part = coarsest_equitable(&g, &trivial_partition(&g));
        if part.len() > MAX_CHARPOLY_DIM {
            continue;
        }
        let b = quotient_q(&g, &part).unwrap();
        let report = quotient_spectrum_containment(&g, &b, 1e-9);
        assert!(report.all_contained(), "{g:?}");
        let spec = dense_spectrum(&g);
        assert!(report.quotient_roots.iter().all(|&r| near(&spec, r)));
        assert!((report.max_root().unwrap() - spec.last().unwrap()).abs() < 1e-8);
        checked += 1;
    }
}
