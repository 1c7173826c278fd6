use qindex::certificate::{Certificate, Status};
use qindex::suites::{run_suite, Suite, SuiteParams};
use serde_json::Value;

fn small() -> SuiteParams {
    SuiteParams {
        k_min: 3,
        k_max: 8,
        m_max: 6,
        ..SuiteParams::default()
    }
}

fn evidence(certs: &[Certificate]) -> Vec<Value> {
    certs
        .iter()
        .map(|c| serde_json::to_value(&c.evidence).unwrap())
        .collect()
}

#[test]
fn reruns_give_identical_evidence() {
    for suite in [
        Suite::Lemmas,
        Suite::Polynomials,
        Suite::Theorem12,
        Suite::DeltaBound,
    ] {
        let a = run_suite(suite, &small()).unwrap();
        let b = run_suite(suite, &small()).unwrap();
        assert_eq!(evidence(&a), evidence(&b), "{suite}");
        let ids: Vec<_> = a.iter().map(|c| &c.claim_id).collect();
        assert_eq!(ids, b.iter().map(|c| &c.claim_id).collect::<Vec<_>>());
    }
}

#[test]
fn certificates_match_the_schema_shape() {
    let schema: Value =
        serde_json::from_str(include_str!("../../../docs/certificate.schema.json")).unwrap();
    let required: Vec<&str> = schema["items"]["required"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap())
        .collect();
    let ev_required: Vec<&str> = schema["items"]["properties"]["evidence"]["items"]["required"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap())
        .collect();
    let certs = serde_json::to_value(run_suite(Suite::All, &small()).unwrap()).unwrap();
    for c in certs.as_array().unwrap() {
        for key in &required {
            assert!(c.get(key).is_some(), "missing {key} in {}", c["claim_id"]);
        }
        assert!(["PASS", "FAIL", "REPORTED"].contains(&c["status"].as_str().unwrap()));
        for e in c["evidence"].as_array().unwrap() {
            for key in &ev_required {
                assert!(
                    e.get(key).is_some(),
                    "missing evidence {key} in {}",
                    c["claim_id"]
                );
            }
        }
    }
}

#[test]
fn pass_requires_every_record_ok() {
    let certs = run_suite(Suite::All, &small()).unwrap();
    for c in &certs {
        if c.status == Status::Pass {
            assert!(
                !c.evidence.is_empty() && c.evidence.iter().all(|e| e.ok),
                "{}",
                c.claim_id
            );
        }
    }
    let reported: Vec<_> = certs
        .iter()
        .filter(|c| c.status == Status::Reported)
        .map(|c| c.claim_id.as_str())
        .collect();
    assert!(reported.contains(&"charpoly.gamma") && reported.contains(&"charpoly.xi"));
    assert!(reported.iter().any(|id| id.starts_with("search.m")));
}
