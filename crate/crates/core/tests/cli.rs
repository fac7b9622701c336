use std::process::{Command, Output};

fn latzeta(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_latzeta")).args(args).output().expect("spawn latzeta")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn rows(o: &Output) -> Vec<Vec<String>> {
    stdout(o).lines().skip(1).map(|l| l.split(',').map(str::to_string).collect()).collect()
}

// 7/4 ζ(3)
const SEVEN_FOURTHS_ZETA3: f64 = 1.75 * 1.202_056_903_159_594_2;

#[test]
fn energy_at_half_is_scaled_zeta() {
    for delta in ["0.5", "2", "1/2"] {
        let o = latzeta(&["energy", "--s", "3", "--delta", delta]);
        assert!(o.status.success());
        let out = stdout(&o);
        let mut lines = out.lines();
        assert_eq!(
            lines.next().unwrap(),
            "s_re,s_im,delta,value_re,value_im,error_estimate,factorized_re,factorized_im"
        );
        let r: Vec<&str> = lines.next().unwrap().split(',').collect();
        let v: f64 = r[3].parse().unwrap();
        assert_eq!(r[3], "2.10359958053");
        assert!((v - SEVEN_FOURTHS_ZETA3).abs() < 1e-11);
        assert_eq!(r[6], r[3]);
    }
}

#[test]
fn precision_controls_digits() {
    let o = latzeta(&["--precision", "5", "energy", "--s", "3", "--delta", "0.5"]);
    assert_eq!(rows(&o)[0][3], "2.1036");
    let o = latzeta(&["energy", "--s", "3", "--delta", "0.5", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["special_delta"], "OneHalf");
    assert!((v["value"][0].as_f64().unwrap() - SEVEN_FOURTHS_ZETA3).abs() < 1e-11);
}

#[test]
fn exit_codes() {
    assert_eq!(latzeta(&["energy", "--s", "1.0000001", "--delta", "0.5"]).status.code(), Some(3));
    assert_eq!(latzeta(&["energy", "--s", "2", "--delta", "0"]).status.code(), Some(2));
    assert_eq!(latzeta(&["energy", "--s", "2+xi", "--delta", "0.5"]).status.code(), Some(2));
    assert_eq!(latzeta(&["scan", "--delta", "0.5", "--window", "1,0,0,1"]).status.code(), Some(2));
    assert_eq!(latzeta(&["sweep", "--step", "0.05"]).status.code(), Some(2));
    let o = latzeta(&["asymptotics", "--k", "0", "--eps", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("epsilon"));
}

#[test]
fn scan_at_one_fifth() {
    let o = latzeta(&["scan", "--delta", "1/5", "--window", "-1,2,0,5"]);
    assert!(o.status.success());
    let found = rows(&o).iter().any(|r| {
        let (x, y): (f64, f64) = (r[1].parse().unwrap(), r[2].parse().unwrap());
        (x - 0.635084).abs() < 5e-6 && (y - 1.07885).abs() < 5e-6 && r[3] == "off_critical"
    });
    assert!(found, "{}", stdout(&o));
}

#[test]
fn scan_near_one_third_is_critical() {
    let o = latzeta(&["scan", "--delta", "0.3333333333", "--window", "-1,2,0,12"]);
    let r = rows(&o);
    assert!(!r.is_empty());
    assert!(r.iter().all(|r| r[3] == "critical"), "{}", stdout(&o));
}

#[test]
fn empty_window_writes_header_only() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let o = latzeta(&["scan", "--delta", "0.5", "--window", "3,4,0,1", "--out", d]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(dir.path().join("zeros.csv")).unwrap();
    assert_eq!(text, "delta,rho_x,rho_y,kind,residual\n");
}

#[test]
fn trace_writes_branch_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let o = latzeta(&["trace", "--s", "0.5+14.1347i", "--to", "0.3", "--out", d]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = std::fs::read_to_string(dir.path().join("branch_000.csv")).unwrap();
    let deltas: Vec<f64> = csv.lines().skip(1).map(|l| l.split(',').nth(3).unwrap().parse().unwrap()).collect();
    assert_eq!(deltas.first(), Some(&0.3));
    assert_eq!(deltas.last(), Some(&0.5));
    assert!(deltas.windows(2).all(|w| w[0] < w[1]));
    let m: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("manifest.json")).unwrap()).unwrap();
    assert_eq!(m["branches"][0]["file"], "branch_000.csv");
    assert_eq!(m["branches"][0]["seed"]["rho_y"].as_f64().unwrap(), 14.1347251417);
}

#[test]
fn sweep_manifest_lists_branches() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let o = latzeta(&["sweep", "--range", "0.3,0.9", "--out", d]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let m: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("manifest.json")).unwrap()).unwrap();
    let branches = m["branches"].as_array().unwrap();
    assert_eq!(branches.len(), 6);
    let standard = branches.iter().filter(|b| b["branch_kind"] == "standard").count();
    assert_eq!(standard, 3);
    for b in branches {
        let file = b["file"].as_str().unwrap();
        let text = std::fs::read_to_string(dir.path().join(file)).unwrap();
        assert_eq!(text.lines().count() - 1, b["samples"].as_u64().unwrap() as usize);
    }
}

#[test]
fn asymptotics_table() {
    let o = latzeta(&["asymptotics", "--k", "0", "--eps", "0.02,0.01,0.005"]);
    assert!(o.status.success());
    let r = rows(&o);
    assert_eq!(r.len(), 3);
    let last = &r[2];
    let (m, p): (f64, f64) = (last[3].parse().unwrap(), last[5].parse().unwrap());
    assert!((m / p - 1.0).abs() < 0.1);
    let slope: f64 = last[6].parse().unwrap();
    assert!((3.02..=3.32).contains(&slope));
}

#[test]
fn validate_passes() {
    let o = latzeta(&["validate"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["suites"].as_array().unwrap().len(), 3);
}
