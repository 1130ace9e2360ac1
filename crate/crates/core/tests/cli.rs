mod common;

use common::{fixture, opineq};
use opineq::claims::{evaluate, ClaimId, Instance, StepTrace, TermBreakdown};
use opineq::harness::CampaignReport;

fn path(name: &str) -> String {
    fixture(name).to_str().unwrap().to_string()
}

fn stdout(o: &std::process::Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn check_jensen_fixture_holds_with_zero_gap() {
    let o = opineq(&["check", "--claim", "THM1", "--instance", &path("jensen_dim2.json"), "--json"], None);
    assert_eq!(o.status.code(), Some(0));
    let b: TermBreakdown = serde_json::from_str(&stdout(&o)).unwrap();
    // <A^2 x,x> = 2, <Ax,x> = 1, |A - 1| = I
    assert!((b.lhs - 2.0).abs() < 1e-12);
    assert!((b.rhs - 2.0).abs() < 1e-12);
    assert!(b.gap.abs() < 1e-12);
}

#[test]
fn check_witness_matches_golden_output() {
    let o = opineq(&["check", "--instance", &path("witness_thm21.json"), "--pretty"], None);
    assert_eq!(o.status.code(), Some(1));
    let golden = std::fs::read_to_string(fixture("golden/witness_thm21.check.json")).unwrap();
    assert_eq!(stdout(&o), golden);
}

#[test]
fn check_error_codes() {
    assert_eq!(opineq(&["check", "--instance", "/no/such/file.json"], None).status.code(), Some(2));
    let bad_claim = opineq(&["check", "--claim", "THM9", "--instance", &path("witness_thm21.json")], None);
    assert_eq!(bad_claim.status.code(), Some(2));
    let hyp = opineq(&["check", "--instance", &path("trace_not_superquadratic.json")], None);
    assert_eq!(hyp.status.code(), Some(3));
    let dir = tempfile::tempdir().unwrap();
    let junk = dir.path().join("junk.json");
    std::fs::write(&junk, "{not json").unwrap();
    assert_eq!(opineq(&["check", "--instance", junk.to_str().unwrap()], None).status.code(), Some(2));
}

#[test]
fn trace_commands() {
    let o = opineq(&["trace", "--instance", &path("witness_thm21.json")], None);
    assert_eq!(o.status.code(), Some(1));
    let table = stdout(&o);
    let row = table.lines().find(|l| l.starts_with("minC-2.8")).unwrap();
    assert!(row.contains("-3.333333333333333e-1"), "{row}");

    let o = opineq(&["trace", "--instance", &path("trace_symmetric.json"), "--json"], None);
    assert_eq!(o.status.code(), Some(0));
    let t: StepTrace = serde_json::from_str(&stdout(&o)).unwrap();
    for s in t.steps.iter().filter(|s| s.is_min_c()) {
        assert!(s.dropped.unwrap().abs() < 1e-12, "{}", s.label);
    }

    let o = opineq(&["trace", "--instance", &path("trace_not_superquadratic.json")], None);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn campaign_exit_codes_and_summary() {
    let o = opineq(&["campaign", "--claim", "PRP3", "--trials", "1000", "--seed", "42"], None);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("claim=PRP3 trials=1000 violations=0 worst_gap="));

    let o = opineq(&["campaign", "--claim", "THM2.1", "--trials", "1000", "--dims", "1,2", "--f", "pow:2", "--seed", "42"], None);
    assert_eq!(o.status.code(), Some(1));
    let line = stdout(&o);
    let v: usize = line.split("violations=").nth(1).unwrap().split(' ').next().unwrap().parse().unwrap();
    assert!(v >= 1);

    assert_eq!(opineq(&["campaign", "--claim", "THM1", "--trials", "0"], None).status.code(), Some(2));
    assert_eq!(opineq(&["campaign", "--claim", "THM1", "--map", "teleport"], None).status.code(), Some(2));
    assert_eq!(opineq(&["campaign", "--claim", "THM1", "--interval", "3,1"], None).status.code(), Some(2));
    assert_eq!(opineq(&["campaign", "--claim", "THM1", "--trials", "5"], Some(0)).status.code(), Some(2));
}

#[test]
fn campaign_outputs_round_trip_and_are_seed_stable() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str, threads: usize| {
        let out = dir.path().join(format!("{name}.json"));
        let csv = dir.path().join(format!("{name}.csv"));
        let o = opineq(
            &[
                "campaign", "--claim", "THM3", "--trials", "200", "--dims", "1,3", "--map", "pinching,random_kraus(2)", "--f",
                "abs,exp", "--interval", "-2,2", "--seed", "7", "--out", out.to_str().unwrap(), "--csv", csv.to_str().unwrap(),
            ],
            Some(threads),
        );
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
        (std::fs::read_to_string(out).unwrap(), std::fs::read_to_string(csv).unwrap())
    };
    let (json_a, csv_a) = run("a", 1);
    let (json_b, csv_b) = run("b", 3);
    assert_eq!(json_a, json_b);
    assert_eq!(csv_a, csv_b);
    let report = CampaignReport::from_json(&json_a).unwrap();
    assert_eq!(report.to_json_pretty().unwrap() + "\n", json_a);
    assert_eq!(csv_a.lines().count(), 201);
    assert_eq!(csv_a.lines().next(), Some("trial,gap,hypothesis_ok"));

    // the echoed config is itself a valid --config input
    let cfg_path = dir.path().join("cfg.json");
    std::fs::write(&cfg_path, serde_json::to_string(&report.config).unwrap()).unwrap();
    let again = dir.path().join("again.json");
    let o = opineq(&["campaign", "--config", cfg_path.to_str().unwrap(), "--out", again.to_str().unwrap()], Some(2));
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(again).unwrap(), json_a);
}

#[test]
fn search_commands() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("refined.json");
    let o = opineq(
        &["search", "--claim", "THM2.1", "--start", &path("witness_thm21.json"), "--budget", "500", "--seed", "3", "--out", out.to_str().unwrap()],
        None,
    );
    assert_eq!(o.status.code(), Some(1));
    let refined = Instance::load(&out).unwrap();
    assert!(evaluate(ClaimId::Thm21, &refined).unwrap().gap <= -4.0 / 9.0 + 1e-12);

    let out = dir.path().join("prp1.json");
    let o = opineq(
        &["search", "--claim", "PRP1", "--start", &path("prp1_start.json"), "--budget", "2000", "--seed", "3", "--out", out.to_str().unwrap()],
        None,
    );
    assert_eq!(o.status.code(), Some(0));
    let refined = Instance::load(&out).unwrap();
    let gap = evaluate(ClaimId::Prp1, &refined).unwrap().gap;
    assert!(gap >= -1e-8, "{gap}");

    let hyp = opineq(&["search", "--claim", "THM2.1", "--start", &path("trace_not_superquadratic.json")], None);
    assert_eq!(hyp.status.code(), Some(3));
}

#[test]
fn list_claims_prints_eighteen_rows() {
    let o = opineq(&["list-claims"], None);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 18);
    let o = opineq(&["list-claims", "--json"], None);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 18);
}
