use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fracpseudo"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn parse_csv(out: &Output) -> (Vec<String>, Vec<Vec<String>>) {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let mut r = csv::Reader::from_reader(out.stdout.as_slice());
    let header = r.headers().unwrap().iter().map(str::to_string).collect();
    let rows = r
        .records()
        .map(|rec| rec.unwrap().iter().map(str::to_string).collect())
        .collect();
    (header, rows)
}

fn column(rows: &[Vec<String>], i: usize) -> Vec<f64> {
    rows.iter().map(|r| r[i].parse().unwrap()).collect()
}

#[test]
fn quartic_density_has_negative_lobes() {
    let out = run(&["density", "--gamma", "4", "--t", "1", "--xmin", "-10", "--xmax", "10", "--n", "401"]);
    let (header, rows) = parse_csv(&out);
    assert_eq!(header, ["x", "t", "value"]);
    assert_eq!(rows.len(), 401);
    let v = column(&rows, 2);
    assert!(v.iter().any(|&y| y < 0.0));
    // full-precision scientific notation
    assert!(rows[0][2].contains('e'));
}

#[test]
fn converge_column_decreases() {
    let out = run(&["converge", "--family", "even", "--beta", "0.5", "--k", "1", "--gammas", "0.5,0.1,0.02"]);
    let (header, rows) = parse_csv(&out);
    assert_eq!(header, ["gamma", "sup_error"]);
    let e = column(&rows, 1);
    assert_eq!(e.len(), 3);
    assert!(e.windows(2).all(|p| p[1] < p[0]), "{e:?}");
}

#[test]
fn theta_outside_window_exits_with_two() {
    let out = run(&["cf", "--family", "feller", "--theta", "0.9", "--beta", "0.5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("-beta < theta < beta"));
    let out = run(&["density", "--theta", "0.9", "--beta", "0.5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn other_invalid_parameters_exit_with_two() {
    assert_eq!(run(&["density", "--gamma", "-1"]).status.code(), Some(2));
    assert_eq!(run(&["converge", "--gammas", "0.1,0.2"]).status.code(), Some(2));
    assert_eq!(run(&["sojourn", "--beta", "1.5"]).status.code(), Some(2));
    assert_eq!(run(&["density", "--out", "/nonexistent/dir/x.csv"]).status.code(), Some(2));
}

#[test]
fn output_is_byte_identical() {
    let args = ["mc", "--family", "odd_pq", "--xi", "0.5,1.5", "--samples", "30000", "--seed", "7"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let c = Command::new(env!("CARGO_BIN_EXE_fracpseudo"))
        .args(args)
        .env("FRACPSEUDO_THREADS", "3")
        .output()
        .unwrap();
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn mc_schema() {
    let (header, rows) = parse_csv(&run(&["mc", "--xi", "1", "--samples", "10000", "--seed", "3"]));
    assert_eq!(header, ["xi", "re", "im", "stderr", "n", "seed"]);
    assert_eq!(rows[0][4], "10000");
    assert_eq!(rows[0][5], "3");
}

#[test]
fn json_round_trips_against_csv() {
    let args = ["sojourn", "--beta", "0.4", "--parity", "even", "--n", "7"];
    let (header, rows) = parse_csv(&run(&args));
    assert_eq!(header, ["x", "t", "value"]);
    let mut jargs = args.to_vec();
    jargs.extend(["--format", "json"]);
    let out = run(&jargs);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let meta = &doc["meta"];
    assert_eq!(meta["version"], "0.1.0");
    assert_eq!(meta["params"]["beta"], 0.4);
    assert!((meta["errors"]["mass"].as_f64().unwrap() - 1.0).abs() < 1e-6);
    let jrows = doc["rows"].as_array().unwrap();
    assert_eq!(jrows.len(), rows.len());
    for (j, c) in jrows.iter().zip(&rows) {
        for (k, name) in header.iter().enumerate() {
            let from_csv: f64 = c[k].parse().unwrap();
            assert_eq!(j[name].as_f64().unwrap(), from_csv);
        }
    }
}

#[test]
fn feller_default_theta_is_echoed() {
    let out = run(&["converge", "--family", "feller", "--gammas", "0.1", "--format", "json"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["meta"]["params"]["model"]["theta"], 0.25);
}

#[test]
fn every_command_runs() {
    for args in [
        vec!["cf", "--family", "odd_pq", "--scale", "0.1", "--xi-n", "5"],
        vec!["symbols", "--gamma", "2.5", "--theta", "0.3", "--xi-n", "5"],
        vec!["residual", "--family", "odd_pq", "--beta", "0.6", "--p", "0.7"],
        vec!["sojourn", "--closed", "--n", "5"],
        vec!["specfun", "--function", "ml", "--nu", "0.5", "--mu", "1", "--n", "5"],
        vec!["specfun", "--function", "stable", "--beta", "0.3", "--xmin", "0.1", "--xmax", "5", "--n", "5"],
        vec!["density", "--family", "feller", "--parity", "even", "--theta", "-0.2", "--n", "5"],
    ] {
        let out = run(&args);
        assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
}
