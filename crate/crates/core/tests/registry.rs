use hooktree::verify::{run, Identity, Status};
use hooktree::Error;

#[test]
fn every_identity_passes_on_its_default_grid() {
    for id in Identity::ALL {
        let report = run(id, &id.default_grid()).unwrap();
        assert!(report.all_passed(), "{}: {}", id, report.to_json());
        assert!(report.cells.iter().all(|c| c.witnesses.is_empty()));
        assert_eq!(report.passed, report.cells.len());
    }
}

#[test]
fn reports_are_sorted_and_deterministic() {
    let id = Identity::SplitRoundtrip;
    let a = run(id, &id.default_grid()).unwrap();
    let b = run(id, &id.default_grid()).unwrap();
    let params: Vec<_> = a.cells.iter().map(|c| c.params.clone()).collect();
    let mut sorted = params.clone();
    sorted.sort();
    assert_eq!(params, sorted);
    assert_eq!(a.cells, b.cells);
}

#[test]
fn cap_aborts_instead_of_truncating() {
    let mut grid = Identity::KmCount.default_grid();
    grid.cap = 50;
    assert!(matches!(run(Identity::KmCount, &grid), Err(Error::CapExceeded { .. })));
}

#[test]
fn report_json_shape() {
    let mut grid = Identity::Postnikov.default_grid();
    grid.ns = vec![3];
    let report = run(Identity::Postnikov, &grid).unwrap();
    let v: serde_json::Value = serde_json::from_str(&report.to_json()).unwrap();
    assert_eq!(v["identity"], "postnikov");
    assert_eq!(v["grid"]["ns"], serde_json::json!([3]));
    assert_eq!(v["cells"][0]["status"], "pass");
    assert_eq!(report.cells[0].status, Status::Pass);
}
