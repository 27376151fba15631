use std::process::{Command, Output};

fn nboson(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nboson"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Drops the wall-time columns, the only nondeterministic fields.
fn without_timings(csv: &str) -> Vec<String> {
    csv.lines()
        .map(|l| l.split(',').take(17).collect::<Vec<_>>().join(","))
        .collect()
}

#[test]
fn bounds_csv_has_header_and_values() {
    let o = nboson(&["bounds", "--mu", "1", "--nu", "2.5"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.ends_with('\n') && !text.contains('\r'));
    let lines: Vec<_> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].starts_with("n,m,a,v,mu,nu,lambda,shape,e_k,"));
    let fields: Vec<_> = lines[1].split(',').collect();
    assert_eq!(fields.len(), lines[0].split(',').count());
    let e_k: f64 = fields[8].parse().unwrap();
    assert!((e_k - 0.580890).abs() < 5e-5);
}

#[test]
fn physical_inputs_scale_to_dimensionless() {
    let a = nboson(&["bounds", "--N", "2", "--m", "1", "--a", "1", "--v", "2"]);
    let b = nboson(&["bounds", "--mu", "1", "--nu", "1", "--lambda", "0.5"]);
    assert_eq!(a.status.code(), Some(0));
    let (a, b) = (without_timings(&stdout(&a)), without_timings(&stdout(&b)));
    // identical apart from the leading physical columns
    let strip = |l: &String| l.splitn(5, ',').nth(4).unwrap().to_string();
    assert_eq!(strip(&a[1]), strip(&b[1]));
    assert!(a[1].starts_with("2,1,1,2,"));
}

#[test]
fn json_round_trips() {
    let o = nboson(&["bounds", "--mu", "1", "--nu", "5.8", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["e_k"]["value"], serde_json::Value::Null);
    assert_eq!(v["e_k"]["reason"], "supercritical");
    let again: serde_json::Value = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
    assert_eq!(again, v);
    assert!((v["e_g"]["value"].as_f64().unwrap() + 0.904766).abs() < 5e-5);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["bounds", "--mu", "1"][..],
        &["bounds", "--mu", "1", "--nu", "1", "--N", "3"],
        &["bounds", "--mu", "1", "--nu", "1", "--shape", "cube"],
        &["sweep", "--nu-min", "1", "--nu-max", "2", "--steps", "1"],
        &["jacobi-check", "--n-max", "1"],
        &["nonsense"],
    ] {
        let o = nboson(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(o.stdout.is_empty(), "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn config_supplies_defaults_and_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "# weak coupling\nmu = 1\nnu = 0.6  # below threshold\n").unwrap();
    let cfg = cfg.to_str().unwrap();

    let from_file = without_timings(&stdout(&nboson(&["bounds", "--config", cfg])));
    assert!(from_file[1].contains(",1,0.6,1,exp,,,no-root,"), "{}", from_file[1]);

    let overridden = nboson(&["bounds", "--config", cfg, "--nu", "2.5"]);
    assert_eq!(overridden.status.code(), Some(0));
    assert!(stdout(&overridden).contains(",1,2.5,1,exp,0.58089"));

    std::fs::write(dir.path().join("bad.cfg"), "mu 1\n").unwrap();
    let bad = nboson(&["bounds", "--config", dir.path().join("bad.cfg").to_str().unwrap()]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn out_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.csv");
    let o = nboson(&[
        "sweep",
        "--nu-min",
        "1",
        "--nu-max",
        "2",
        "--steps",
        "3",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<_> = text.lines().collect();
    assert_eq!(lines[0], "nu,e_k,e_g,e_2g");
    assert_eq!(lines.len(), 4);
    assert!(lines[1].starts_with("1,0.98038"));
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
}

#[test]
fn sweep_leaves_absent_values_blank() {
    let o = nboson(&[
        "sweep", "--nu-min", "0.6", "--nu-max", "0.8", "--steps", "2", "--jobs", "2",
    ]);
    let text = stdout(&o);
    let row = text.lines().nth(1).unwrap();
    assert!(row.starts_with("0.6,,,0.99320"), "{row}");
}

#[test]
fn curves_mark_existence() {
    let o = nboson(&["curves", "--nu-list", "1,2", "--steps", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("kind,param,e,value,exists\n"));
    assert!(text.contains("F,1,-1.5,0,false\n"));
    assert!(text.contains("F,2,1.5,-1.37609"));
    assert!(text.contains("parabola,1,0,-1,\n"));
}

#[test]
fn critical_couplings() {
    let nc = nboson(&["critical", "--mu", "1", "--which", "nc"]);
    assert_eq!(nc.status.code(), Some(0));
    assert!(stdout(&nc).contains("nu_c=0.673049"));

    let ns = nboson(&["critical", "--mu", "1", "--which", "ns", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&ns.stdout).unwrap();
    let nu = v["nu"].as_f64().unwrap();
    assert!(nu > 5.67 && nu < 5.80);
    let nv = v["n_max_times_v"].as_f64().unwrap();
    assert!((11.0..=11.8).contains(&nv));
}

#[test]
fn jacobi_check_passes() {
    let o = nboson(&["jacobi-check", "--n-max", "40"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value =
        serde_json::from_slice(&nboson(&["jacobi-check", "--n-max", "12", "--json"]).stdout).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["rows"].as_array().unwrap().len(), 11);
}
