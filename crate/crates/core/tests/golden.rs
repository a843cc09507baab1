//! Cone reports checked against stored output of `flagcone cone verify`.

use flagcone::cone::verify_rank;
use serde_json::Value;

fn golden(rank: usize) -> Value {
    let path = format!("{}/tests/golden/cone_rank{rank}.json", env!("CARGO_MANIFEST_DIR"));
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn small_rank_reports_are_stable() {
    for rank in 4..=6 {
        assert_eq!(verify_rank(rank).unwrap().to_json(), golden(rank), "rank {rank}");
    }
}

#[test]
fn rank_seven_report_is_stable() {
    let report = verify_rank(7).unwrap();
    assert_eq!(report.to_json(), golden(7));
}
