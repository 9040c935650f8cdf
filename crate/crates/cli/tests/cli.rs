use serde_json::Value;
use std::path::PathBuf;
use std::process::{Command, Output};

fn dbscale(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dbscale")).args(args).output().expect("binary runs")
}

fn dbscale_env(args: &[&str], threads: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dbscale"))
        .args(args)
        .env("DBSCALE_THREADS", threads)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    r.records().map(|rec| rec.unwrap().iter().map(str::to_string).collect()).collect()
}

fn strip_timings(mut v: Value) -> Value {
    for rec in v["records"].as_array_mut().unwrap() {
        rec.as_object_mut().unwrap().remove("runtime_ms");
    }
    v
}

fn tmp(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("dbscale-cli-{}-{name}", std::process::id()))
}

#[test]
fn spectrum_of_sine() {
    let o = dbscale(&["spectrum", "--a", "3.14159265", "--gamma", "0", "--window", "-2.5", "2.5", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("gamma,index,zero\n"));
    let zeros: Vec<f64> = csv_rows(&text).iter().map(|r| r[2].parse().unwrap()).collect();
    assert_eq!(zeros.len(), 5);
    for (x, k) in zeros.iter().zip(-2..=2) {
        assert!((x - k as f64).abs() < 1e-8, "{x}");
    }
}

#[test]
fn spectrum_over_several_gammas_json() {
    let o = dbscale(&["spectrum", "--gammas", "0,1.5707963267948966", "--window", "-1.2", "1.2"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let s = v["spectra"].as_array().unwrap();
    assert_eq!(s.len(), 2);
    assert_eq!(s[0]["zeros"].as_array().unwrap().len(), 3);
    let halves: Vec<f64> = s[1]["zeros"].as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect();
    assert_eq!(halves.len(), 2);
    assert!((halves[0] + 0.5).abs() < 1e-12 && (halves[1] - 0.5).abs() < 1e-12);
}

#[test]
fn verify_default_example_passes() {
    let o = dbscale(&["verify", "--a", "3.14159265", "--gamma", "0.785398"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    for key in ["config", "records", "summary"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    assert_eq!(v["summary"]["all_pass"], Value::Bool(true));
    for rec in v["records"].as_array().unwrap() {
        assert_eq!(rec["pass"], Value::Bool(true), "{rec}");
        for key in ["check_id", "params", "max_abs_err", "tol", "runtime_ms"] {
            assert!(rec.get(key).is_some(), "{key}");
        }
    }
}

#[test]
fn verify_unreachable_tolerance_exits_one() {
    let o = dbscale(&["verify", "--tol", "1e-30"]);
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["summary"]["all_pass"], Value::Bool(false));
}

#[test]
fn verify_is_deterministic() {
    let args = ["verify", "--only", "c01,c03,c05,c10,c11", "--seed", "7"];
    let a = dbscale_env(&args, "1");
    let b = dbscale(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(b.status.code(), Some(0));
    let va = strip_timings(serde_json::from_str(&stdout(&a)).unwrap());
    let vb = strip_timings(serde_json::from_str(&stdout(&b)).unwrap());
    assert_eq!(serde_json::to_string(&va).unwrap(), serde_json::to_string(&vb).unwrap());
    let other = strip_timings(serde_json::from_str(&stdout(&dbscale(&["verify", "--only", "c01", "--seed", "8"]))).unwrap());
    let same = strip_timings(serde_json::from_str(&stdout(&dbscale(&["verify", "--only", "c01", "--seed", "7"]))).unwrap());
    assert_ne!(other["records"][0]["max_abs_err"], same["records"][0]["max_abs_err"]);
}

#[test]
fn verify_csv_to_file() {
    let path = tmp("verify.csv");
    let o = dbscale(&["verify", "--only", "c03", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    assert!(text.starts_with("check_id,max_abs_err,tol,pass,runtime_ms,params\n"));
    let rows = csv_rows(&text);
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0][0], "c03.s_beta");
    assert!(rows[0][1].contains('e'));
    assert_eq!(rows[0][3], "true");
}

#[test]
fn config_errors_exit_two() {
    for args in [
        vec!["verify", "--tol", "0"],
        vec!["verify", "--a", "-1"],
        vec!["verify", "--grid-n", "2"],
        vec!["spectrum", "--window", "3", "1"],
        vec!["verify", "--only", "c99"],
        vec!["krein", "--gamma", "1.5707963267948966"],
        vec!["qfunc", "--im", "0"],
        vec!["norms", "--count", "0"],
        vec!["verify", "--format", "xml"],
        vec!["frobnicate"],
    ] {
        let o = dbscale(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
    let o = dbscale_env(&["verify", "--only", "c01"], "zero");
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn kernel_routes_agree() {
    let o = dbscale(&["kernel", "--grid-n", "9", "--w", "0.3", "-0.4", "--gamma", "1.1", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = csv_rows(&stdout(&o));
    assert_eq!(rows.len(), 9);
    for r in rows {
        let v: Vec<f64> = r.iter().map(|x| x.parse().unwrap()).collect();
        let scale = 1.0 + v[1].hypot(v[2]);
        assert!((v[1] - v[3]).abs() < 1e-10 * scale && (v[2] - v[4]).abs() < 1e-10 * scale);
    }
}

#[test]
fn qfunc_forms_agree() {
    let o = dbscale(&["qfunc", "--grid-n", "7", "--im", "0.6", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = csv_rows(&stdout(&o));
    assert_eq!(rows.len(), 7);
    for r in rows {
        let diff: f64 = r[6].parse().unwrap();
        let im_q: f64 = r[5].parse().unwrap();
        assert!(diff < 1e-9 && im_q > 0.0);
    }
}

#[test]
fn krein_report() {
    let o = dbscale(&["krein", "--window", "-2", "2", "--grid-n", "9"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let k = &v["krein"];
    assert!(k["max_err"].as_f64().unwrap() <= 1e-9);
    assert!(k["lambda_err"].as_f64().unwrap() <= 1e-10);
    assert!((k["lambda"].as_f64().unwrap() - std::f64::consts::PI).abs() < 1e-12);
}

#[test]
fn counterexample_report() {
    let o = dbscale(&["counterexample", "--a", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let r = &v["counterexample"];
    let exact = 2f64.sinh();
    assert!((r["norm_phi_prime_sq"].as_f64().unwrap() - exact).abs() <= 1e-8 * exact);
    assert!(r["zero_residual"].as_f64().unwrap() <= 1e-12);
    assert!(r["relative_gap"].as_f64().unwrap() > 0.01);
}

#[test]
fn norms_table() {
    let o = dbscale(&["norms", "--count", "4", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = csv_rows(&stdout(&o));
    assert_eq!(rows.len(), 4);
    for r in rows {
        let v: Vec<f64> = r[1..].iter().map(|x| x.parse().unwrap()).collect();
        let (norm, plus2, plus_f, mf, m2) = (v[0], v[1], v[2], v[3], v[4]);
        assert!(norm <= plus2 * (1.0 + 1e-12));
        assert!((plus2 - plus_f).abs() <= 1e-7 * plus2);
        assert!(mf <= norm * (1.0 + 1e-9) && m2 <= norm * (1.0 + 1e-9));
    }
}
