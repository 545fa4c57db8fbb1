use std::collections::BTreeMap;

use horochow::catalog::{builtin, builtin_document, families, load_spec, run_suite, to_json, CatalogError, SuiteOptions, Variety};
use horochow::{Status, Q};

fn data_file(name: &str) -> String {
    std::fs::read_to_string(format!("{}/data/{name}.json", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

#[test]
fn builtins_match_data_files() {
    for name in ["g2", "spin7"] {
        assert_eq!(builtin_document(name).unwrap(), data_file(name));
    }
}

#[test]
fn dimensions_and_indices() {
    let g2 = builtin("g2").unwrap();
    assert_eq!((g2.dimension, g2.index), (7, 4));
    let spin7 = builtin("spin7").unwrap();
    assert_eq!((spin7.dimension, spin7.index), (9, 7));
    assert_eq!(spin7.relations.classical, ["t^2 - 6*h^3*t + h^6", "6*h^4*t - h^7"]);
}

#[test]
fn f4_is_not_shipped() {
    assert_eq!(builtin("f4"), Err(CatalogError::UnknownVariety("f4".into())));
    let f4 = families().into_iter().find(|f| f.group == "F4").unwrap();
    assert_eq!(f4.builtin, None);
    assert_eq!(families().len(), 5);
}

#[test]
fn round_trip() {
    for name in ["g2", "spin7"] {
        let spec = builtin(name).unwrap();
        assert_eq!(load_spec(&to_json(&spec)).unwrap(), spec);
    }
}

#[test]
fn rejects_wrong_q_degree() {
    let mut spec = builtin("g2").unwrap();
    spec.generators.iter_mut().find(|g| g.name == "q").unwrap().degree = 3;
    let err = load_spec(&to_json(&spec)).unwrap_err();
    assert!(matches!(err, CatalogError::InvariantViolation(ref m) if m.contains("index")), "{err}");
}

#[test]
fn rejects_seed_of_wrong_degree() {
    let mut spec = builtin("g2").unwrap();
    spec.seeds.insert("s2".into(), "h^3".into());
    assert!(matches!(load_spec(&to_json(&spec)), Err(CatalogError::InvariantViolation(_))));
}

#[test]
fn rejects_dangling_symbols() {
    let mut spec = builtin("spin7").unwrap();
    spec.golden.tables[0].entries[0].rhs = "t10".into();
    let err = load_spec(&to_json(&spec)).unwrap_err();
    assert!(err.to_string().contains("t10"), "{err}");
}

#[test]
fn rejects_malformed_documents() {
    assert!(matches!(load_spec("{"), Err(CatalogError::Schema(_))));
    assert!(matches!(load_spec("{\"name\": \"x\"}"), Err(CatalogError::Schema(_))));
    let doc = data_file("g2").replacen("\"name\": \"g2\"", "\"name\": \"g2\", \"extra\": 1", 1);
    assert!(matches!(load_spec(&doc), Err(CatalogError::Schema(_))));
}

#[test]
fn full_suites_pass_and_are_deterministic() {
    for name in ["g2", "spin7"] {
        let spec = builtin(name).unwrap();
        let a = run_suite(&spec, SuiteOptions::all());
        let failures: Vec<String> = a.failures().map(|c| c.to_string()).collect();
        assert!(failures.is_empty(), "{failures:#?}");
        assert_eq!(a.to_json(), run_suite(&spec, SuiteOptions::all()).to_json());
    }
}

#[test]
fn g2_suite_has_enough_checks() {
    let report = run_suite(&builtin("g2").unwrap(), SuiteOptions::all());
    assert!(report.len() >= 60, "{}", report.len());
    let class = report.get("g2.fundamental_class.class").unwrap();
    assert_eq!(class.summary, "[X] = 2σ[4,1] + 2σ[3,2]");
}

#[test]
fn spin7_classical_lines() {
    let report = run_suite(&builtin("spin7").unwrap(), SuiteOptions::classical());
    let lines: Vec<String> = report.checks().iter().map(|c| c.to_string()).collect();
    assert!(lines.contains(&"PASS spin7.relation.htau2 hτ²=0".to_string()));
    assert!(report.get("spin7.spinor.relation.vanishes").unwrap().passed());
    assert!(report.get("spin7.quantum.corrections").is_none());
}

#[test]
fn broken_golden_entry_is_reported_not_fatal() {
    let mut spec = builtin("g2").unwrap();
    spec.golden.tables[0].entries[0].rhs = "3*s4".into();
    let report = run_suite(&spec, SuiteOptions::classical());
    let failed: Vec<&str> = report.failures().map(|c| c.id.as_str()).collect();
    assert_eq!(failed.len(), 1, "{failed:?}");
    assert_eq!(report.failures().next().unwrap().status, Status::Fail);
    assert!(report.len() > 50);
}

#[test]
fn unbuildable_ring_becomes_an_error_check() {
    let mut spec = builtin("g2").unwrap();
    spec.relations.classical.pop();
    let report = run_suite(&spec, SuiteOptions::classical());
    assert!(report.checks().iter().any(|c| c.status == Status::Error));
}

// maximal chains from each vertex up to the point class, counted with multiplicities
fn chain_counts(spec: &horochow::VarietySpec) -> BTreeMap<String, Q> {
    let mut by_degree: Vec<&horochow::hasse::Vertex> = spec.hasse.vertices.iter().collect();
    by_degree.sort_by_key(|v| std::cmp::Reverse(v.degree));
    let mut count: BTreeMap<String, Q> = BTreeMap::new();
    for v in by_degree {
        let out: Vec<_> = spec.hasse.edges.iter().filter(|e| e.from == v.id).collect();
        let n = if out.is_empty() { Q::from_integer(1.into()) } else { out.iter().map(|e| &count[&e.to] * &e.mult).sum() };
        count.insert(v.id.clone(), n);
    }
    count
}

#[test]
fn degrees_agree_with_chain_counts() {
    for name in ["g2", "spin7"] {
        let spec = builtin(name).unwrap();
        let counts = chain_counts(&spec);
        let v = Variety::new(spec.clone()).unwrap();
        let m = v.model(false).unwrap();
        let (paths, ring) = horochow::catalog::degrees(&v, &m).unwrap();
        for (i, vert) in v.diagram().vertices().iter().enumerate() {
            assert_eq!(paths[i], ring[i], "{name} {}", vert.id);
            assert_eq!(paths[i], counts[&vert.id], "{name} {}", vert.id);
        }
    }
}
