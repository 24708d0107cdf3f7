use std::path::PathBuf;
use std::process::{Command, Output};

const SMALL: [&str; 6] = ["--nx", "41", "--ny", "41", "--euler-n", "200"];

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_soliton")).args(args).output().expect("binary runs")
}

fn tmp(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name)
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("json on stdout")
}

#[test]
fn k_out_of_range_is_a_config_error() {
    let o = bin(&["surface", "--formula", "st", "--k", "5"]);
    assert_eq!(o.status.code(), Some(2));
    let e = stderr(&o);
    assert_eq!(e.lines().count(), 1, "{e}");
    assert!(e.contains("out of range"));
}

#[test]
fn unknown_flags_and_values_exit_2_with_one_line() {
    for args in [
        vec!["surface", "--bogus"],
        vec!["surface", "--formula", "torus"],
        vec!["surface", "--format", "stl"],
        vec!["curvature", "--format", "obj"],
        vec!["surface", "--nx", "1"],
        vec!["verify", "--tol", "-1"],
        vec!["gauge", "--at", "1+"],
        vec!["euler", "--radius", "0"],
        vec!["surface", "--model", "cpn"],
    ] {
        let o = bin(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert_eq!(stderr(&o).lines().count(), 1, "{args:?}: {}", stderr(&o));
    }
}

#[test]
fn help_exits_zero() {
    for sub in ["surface", "verify", "curvature", "gauge", "euler"] {
        let o = bin(&[sub, "--help"]);
        assert_eq!(o.status.code(), Some(0));
        assert!(String::from_utf8_lossy(&o.stdout).contains("--"));
    }
}

#[test]
fn unwritable_output_is_an_io_error() {
    let o = bin(&["surface", "--nx", "5", "--ny", "5", "-o", "/nonexistent/dir/a.obj"]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn obj_mesh_written() {
    let p = tmp("cli_st.obj");
    let o = bin(&["surface", "--formula", "st", "--k", "0", "--t", "0.5", "--nx", "11", "--ny", "11", "--format", "obj", "-o"]);
    assert_eq!(o.status.code(), Some(2), "missing -o value");
    let o = bin(&["surface", "--formula", "st", "--nx", "11", "--ny", "11", "-o", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = std::fs::read_to_string(&p).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("v ")).count(), 121);
    assert_eq!(text.lines().filter(|l| l.starts_with("f ")).count(), 200);
    assert!(o.stdout.is_empty());
}

#[test]
fn stdout_only_with_dash() {
    let o = bin(&["surface", "--formula", "fg", "--nx", "5", "--ny", "5", "--format", "json", "-o", "-"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["vertices"].as_array().unwrap().len(), 25);
    assert_eq!(v["meta"]["family"], "fg");
}

#[test]
fn every_formula_samples() {
    for f in ["st", "cd", "g", "c", "fg", "gwfi"] {
        let o = bin(&["surface", "--formula", f, "--nx", "7", "--ny", "7", "--format", "csv", "-o", "-"]);
        assert_eq!(o.status.code(), Some(0), "{f}: {}", stderr(&o));
        assert!(String::from_utf8_lossy(&o.stdout).lines().count() > 1);
    }
}

#[test]
fn gauge_mapping_consistency() {
    let o = bin(&["gauge", "--at", "1+1i", "--t", "1", "-o", "-"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v = json(&o);
    let p = &v[0];
    for key in ["S_st", "S_fg", "S_g", "S_c"] {
        assert!(p["gauges"][key]["re"].is_array(), "{key}");
    }
    assert!(p["m"]["re"].is_array() && p["m_inverse"]["im"].is_array());
    let res = p["residuals"].as_object().unwrap();
    assert!(res["mapping_gauge"].as_f64().unwrap() < 1e-9);
    for (k, r) in res {
        assert!(r.as_f64().unwrap() < 1e-8, "{k}");
    }
}

#[test]
fn curvature_summary_for_st_at_unit_t() {
    let p = tmp("cli_curv.csv");
    let o = bin(&["curvature", "--formula", "st", "--t", "1", "--nx", "21", "--ny", "21", "-o", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&p).unwrap();
    assert_eq!(text.lines().next(), Some("x,y,K,H"));
    assert_eq!(text.lines().count(), 1 + 441);
    assert!(stderr(&o).starts_with("K mean=4e0"), "{}", stderr(&o));

    let o = bin(&["curvature", "--formula", "st", "--t", "1", "--nx", "21", "--ny", "21", "--format", "json", "-o", "-"]);
    let v = json(&o);
    assert!((v["gaussian"]["mean"].as_f64().unwrap() - 4.0).abs() < 1e-6);
    assert!(v["gaussian"]["std"].as_f64().unwrap() < 1e-7);
    assert!((v["mean"]["mean"].as_f64().unwrap() - 4.0).abs() < 1e-6);
}

#[test]
fn euler_estimate_with_bound() {
    let o = bin(&["euler", "--k", "1", "--radius", "50", "--n", "200", "-o", "-"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let (chi, bound) = (v["chi"].as_f64().unwrap(), v["error_bound"].as_f64().unwrap());
    assert!((chi - 2.0).abs() < 0.01);
    assert!(bound > 0.0 && bound < 0.05);
    assert!((chi - 2.0).abs() <= bound * 3.0);
}

#[test]
fn verify_exit_codes() {
    let run = |extra: &[&str], name: &str| {
        let p = tmp(name);
        let mut args = vec!["verify"];
        args.extend(SMALL);
        args.extend(extra);
        args.extend(["-o", p.to_str().unwrap()]);
        let o = bin(&args);
        let report: serde_json::Value = serde_json::from_slice(&std::fs::read(&p).unwrap()).unwrap();
        (o.status.code(), report)
    };
    let (c7, r7) = run(&["--seed", "7"], "v7.json");
    let (c8, _) = run(&["--seed", "8"], "v8.json");
    assert_eq!(c7, Some(0));
    assert_eq!(c7, c8);
    let st = r7["checks"].as_array().unwrap().iter().find(|c| c["name"] == "curvature.st.k0.t1.K").unwrap();
    assert_eq!(st["pass"], true);

    let (c, r) = run(&["--tol", "1e-15"], "vtight.json");
    assert_eq!(c, Some(1));
    let fd_failed = r["checks"].as_array().unwrap().iter().any(|c| {
        c["name"].as_str().unwrap().starts_with("fd.") && c["pass"] == false && c["gating"] == true
    });
    assert!(fd_failed);
}
