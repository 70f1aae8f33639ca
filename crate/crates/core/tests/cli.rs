use std::process::Command;

use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let o = Command::new(env!("CARGO_BIN_EXE_spinor-moments"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        o.status.code().unwrap_or(-1),
        String::from_utf8(o.stdout).unwrap(),
        String::from_utf8(o.stderr).unwrap(),
    )
}

fn records(stdout: &str) -> Vec<Value> {
    stdout.lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn json_record_shape() {
    let (code, out, _) = run(&["kloosterman", "--q", "1,0,1", "--t", "1,0,1", "--c", "3,0;0,3"]);
    assert_eq!(code, 0);
    let r = &records(&out)[0];
    assert_eq!(r["op"], "kloosterman");
    assert_eq!(r["method"], "brute");
    assert_eq!(r["params"]["c"], "3,0;0,3");
    assert!((r["value"]["re"].as_f64().unwrap() - 15.0).abs() < 1e-9);
    assert!(r["terms"].as_u64().unwrap() > 0);
}

#[test]
fn weight_reports_tail_bound() {
    let (code, out, _) = run(&["weight", "--x", "0.5"]);
    assert_eq!(code, 0);
    let r = &records(&out)[0];
    assert!(r["tail_bound"].as_f64().unwrap() < 1e-12);
    assert_eq!(r["params"]["damping"], "1-s^2");
}

#[test]
fn format_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_spinor-moments"))
        .env("SPINOR_FORMAT", "csv")
        .args(["gauss", "--a", "1", "--b", "0", "--c", "5"])
        .output()
        .unwrap();
    let out = String::from_utf8(o.stdout).unwrap();
    assert!(out.starts_with("op,params,re,im,terms,method,tail_bound\n"), "{out}");
}

#[test]
fn fit_csv_has_sample_table() {
    let (code, out, _) = run(&["--format", "csv", "fit", "--q1", "1", "--q2", "1", "--ns", "100,1000,10000,100000"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "n,log_n,residue,fitted");
    assert_eq!(lines.len(), 5);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&["kloosterman", "--q", "1,0", "--t", "1,0,1", "--c", "3,0;0,3"]).0, 2);
    // singular modulus is an input error, not a crash
    let (code, _, err) = run(&["kloosterman", "--q", "1,0,1", "--t", "1,0,1", "--c", "1,2;2,4"]);
    assert_eq!(code, 2);
    assert!(err.contains("error"));
    // factored route needs a modulus prime to N
    assert_eq!(run(&["kloosterman", "--q", "1,0,1", "--t", "1,0,1", "--c", "3,0;0,1", "--method", "factored", "--n", "3"]).0, 2);
}

#[test]
fn verify_passes_for_every_module() {
    for m in ["matcore", "sp4", "expsums", "kernels", "lfun", "petersson"] {
        let (code, out, _) = run(&["verify", "--module", m]);
        assert_eq!(code, 0, "{m}: {out}");
        assert!(records(&out).iter().all(|r| r["detail"]["passed"] == true));
    }
}
