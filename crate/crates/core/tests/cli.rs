use std::process::{Command, Output};

use fmzv::identities::{parse_csv_record, Report};

fn fmzv(args: &[&str], env_cache: Option<&std::path::Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_fmzv"));
    cmd.args(args).env_remove("FMZV_CACHE");
    if let Some(c) = env_cache {
        cmd.env("FMZV_CACHE", c);
    }
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn json_and_csv_carry_the_same_rows() {
    for suite in ["depth2", "sumformula", "lemmas"] {
        let base = ["verify", "--suite", suite, "--kmax", "6", "--wmax", "6", "--primes", "5..80"];
        let json = fmzv(&[&["--format", "json"][..], &base].concat(), None);
        let csv = fmzv(&[&["--format", "csv"][..], &base].concat(), None);
        assert!(json.status.success() && csv.status.success());
        let report: Report = serde_json::from_str(&stdout(&json)).unwrap();
        let text = stdout(&csv);
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("case,prime,lhs,rhs,pass"));
        let rows: Vec<Vec<String>> = lines.map(parse_csv_record).collect();
        assert_eq!(rows.len(), report.cases.len());
        for (row, case) in rows.iter().zip(&report.cases) {
            let prime = case.prime.map(|p| p.to_string()).unwrap_or_default();
            assert_eq!(row, &[case.case.clone(), prime, case.lhs.clone(), case.rhs.clone(), case.pass.to_string()]);
        }
    }
}

#[test]
fn compute_formats_agree() {
    let args = ["compute", "--variant", "euler", "--index", "1,2", "--signs", "-,+", "--primes", "5..60"];
    let json: serde_json::Value = serde_json::from_str(&stdout(&fmzv(&[&["--format", "json"][..], &args].concat(), None))).unwrap();
    let csv = stdout(&fmzv(&[&["--format", "csv"][..], &args].concat(), None));
    let from_json: Vec<String> = json["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| format!("{},{}", r["prime"], r["residue"]))
        .collect();
    let from_csv: Vec<String> = csv.lines().skip(1).map(String::from).collect();
    assert_eq!(from_json, from_csv);
}

#[test]
fn cache_from_environment_and_flag() {
    let dir = tempfile::tempdir().unwrap();
    let env_path = dir.path().join("env.csv");
    let flag_path = dir.path().join("flag.csv");
    let args = ["compute", "--index", "1,2", "--primes", "5..30"];
    assert!(fmzv(&args, Some(&env_path)).status.success());
    assert!(env_path.exists());
    // the flag wins over the environment
    let with_flag = [&args[..], &["--cache", flag_path.to_str().unwrap()]].concat();
    assert!(fmzv(&with_flag, Some(&env_path)).status.success());
    let env_lines = std::fs::read_to_string(&env_path).unwrap().lines().count();
    let flag_lines = std::fs::read_to_string(&flag_path).unwrap().lines().count();
    assert_eq!(env_lines, flag_lines);
    let info = fmzv(&["cache", "info"], Some(&env_path));
    assert!(stdout(&info).contains(&format!("{env_lines} entries")));
}

#[test]
fn corrupted_cache_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.csv");
    assert!(fmzv(&["compute", "--index", "3", "--primes", "5..20"], Some(&path)).status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    let tampered: String = text
        .lines()
        .enumerate()
        .map(|(i, l)| {
            if i == 0 {
                let (head, v) = l.rsplit_once(',').unwrap();
                format!("{head},{}\n", (v.parse::<u64>().unwrap() + 1) % 5)
            } else {
                format!("{l}\n")
            }
        })
        .collect();
    std::fs::write(&path, tampered).unwrap();
    assert_eq!(fmzv(&["cache", "verify"], Some(&path)).status.code(), Some(1));
    std::fs::write(&path, "zeta2,1,,7\n").unwrap();
    assert_eq!(fmzv(&["cache", "info"], Some(&path)).status.code(), Some(1));
}

#[test]
fn exit_codes() {
    assert_eq!(fmzv(&["verify", "--suite", "twos", "--rmax", "4", "--primes", "5..60"], None).status.code(), Some(0));
    assert_eq!(fmzv(&["verify", "--suite", "unknown"], None).status.code(), Some(2));
    assert_eq!(fmzv(&["compute", "--variant", "euler", "--index", "1,2"], None).status.code(), Some(2));
    assert_eq!(fmzv(&["discover", "--target", "3", "--basis", "odd", "--weight", "3"], None).status.code(), Some(2));
    assert_eq!(fmzv(&["discover", "--target", "3", "--basis", "1,2;2,1"], None).status.code(), Some(3));
    assert_eq!(fmzv(&["--help"], None).status.code(), Some(0));
}

#[test]
fn dims_and_discover_outputs() {
    let d = stdout(&fmzv(&["--format", "json", "dims", "--weight", "5"], None));
    let v: serde_json::Value = serde_json::from_str(&d).unwrap();
    assert_eq!(v["dimension"], 5);
    assert_eq!(v["conjectured"], 5);
    let e = stdout(&fmzv(&["--format", "json", "discover", "--target", "1,2", "--basis", "odd", "--primes", "7..199"], None));
    let v: serde_json::Value = serde_json::from_str(&e).unwrap();
    assert_eq!(v["status"], "stable");
    assert_eq!(v["coefficients"], serde_json::json!(["-3/4", "0"]));
}
