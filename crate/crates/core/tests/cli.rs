use std::process::{Command, Output};

use h2delta_core::cli::{ASYMPTOTICS_HEADER, CURVE_HEADER, EQUILIBRIUM_HEADER};

fn h2delta(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_h2delta"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn parse_csv(text: &str) -> (Vec<String>, Vec<Vec<Option<f64>>>) {
    let mut lines = text.lines();
    let header = lines.next().unwrap().split(',').map(str::to_owned).collect();
    let rows = lines
        .map(|l| l.split(',').map(|s| if s.is_empty() { None } else { Some(s.parse().unwrap()) }).collect())
        .collect();
    (header, rows)
}

#[test]
fn curve_columns_are_ordered() {
    let out = h2delta(&["curve", "--epsilon", "0.1", "--n", "6", "--with-exact"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let (header, rows) = parse_csv(std::str::from_utf8(&out.stdout).unwrap());
    assert_eq!(header, CURVE_HEADER);
    assert_eq!(rows.len(), 6);
    for r in &rows {
        let v: Vec<f64> = r.iter().map(|x| x.unwrap()).collect();
        let (e_ub, e_ni, e_exact, one) = (v[3], v[4], v[5], v[9]);
        assert!(one >= e_ub && e_ub >= e_exact - 5e-3 && e_exact >= e_ni - 5e-3, "a = {}", v[0]);
    }
    // molecular columns add eps / 2a, infinite at the origin
    assert_eq!(rows[0][6], Some(f64::INFINITY));
    let last = &rows[5];
    assert!((last[6].unwrap() - last[3].unwrap() - 0.05).abs() < 1e-12);
}

#[test]
fn curve_without_solver_leaves_exact_columns_empty() {
    let out = h2delta(&["curve", "--L", "10", "--n", "3"]);
    assert!(out.status.success());
    let (_, rows) = parse_csv(std::str::from_utf8(&out.stdout).unwrap());
    assert!(rows.iter().all(|r| r[5].is_none() && r[8].is_none()));
}

#[test]
fn curve_locates_maximum_of_j() {
    let out = h2delta(&["curve", "--epsilon", "0", "--n", "1001"]);
    let (_, rows) = parse_csv(std::str::from_utf8(&out.stdout).unwrap());
    let best = rows
        .iter()
        .max_by(|x, y| x[1].unwrap().total_cmp(&y[1].unwrap()))
        .unwrap();
    assert!((best[0].unwrap() - 0.254).abs() <= 2e-3);
    assert!((best[1].unwrap() - 0.297).abs() <= 2e-3);
}

#[test]
fn curve_output_is_bit_stable() {
    let args = ["curve", "--B", "1e4", "--n", "5", "--a-max", "0.5", "--with-exact"];
    assert_eq!(h2delta(&args).stdout, h2delta(&args).stdout);
}

#[test]
fn configuration_errors_exit_with_code_two() {
    let cases: [&[&str]; 4] = [
        &["curve", "--epsilon", "0.1", "--a-min", "0.5", "--a-max", "0.5"],
        &["curve", "--epsilon", "0.1", "--L", "10"],
        &["curve"],
        &["groundstate", "--a", "-1"],
    ];
    for args in cases {
        assert_eq!(h2delta(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn unbound_field_exits_with_code_four() {
    let out = h2delta(&["equilibrium", "--Z", "1", "--epsilon", "0.5"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn equilibrium_appends_csv_rows() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("eq.csv");
    let p = path.to_str().unwrap();
    let out = h2delta(&["equilibrium", "--L", "10", "--out", p]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&path).unwrap();
    let (header, rows) = parse_csv(&text);
    assert_eq!(header, EQUILIBRIUM_HEADER);
    assert_eq!(rows.len(), 1);
    let r: Vec<f64> = rows[0].iter().map(|x| x.unwrap()).collect();
    assert_eq!(r[1], 0.1);
    assert!((r[3] - 0.0907).abs() < 1e-3, "a_eq = {}", r[3]);
    assert!(r[4] < -1.0);
}

#[test]
fn asymptotics_upper_bound_sweep() {
    let out = h2delta(&["asymptotics", "--Z", "2", "--eps-min", "1e-6", "--eps-max", "1e-3", "--ub-only"]);
    assert!(out.status.success());
    let (header, rows) = parse_csv(std::str::from_utf8(&out.stdout).unwrap());
    assert_eq!(header, ASYMPTOTICS_HEADER);
    assert_eq!(rows.len(), 6);
    for r in &rows {
        assert!(r[2].is_none());
        assert!((r[3].unwrap() - 0.1826).abs() < 0.01);
    }
}

#[test]
fn groundstate_dump_writes_grid() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("psi.csv");
    let out = h2delta(&["groundstate", "--a", "0.3", "--h", "0.2", "--box", "10", "--dump", path.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("box,h,a_snapped,Z,energy\n"));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("e'(a) FH"));
}

#[test]
fn units_worked_example() {
    let out = h2delta(&["units", "--L", "10", "--a", "0.09073", "--energy", "-1.77094"]);
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("epsilon  = 0.1"));
    assert!(stdout.contains("R        = 9.6"), "{stdout}");
}
