//! End-to-end tests of the `riccati` binary: exit codes, the CSV and JSON
//! schemas, number formatting, and bit-for-bit reproducibility.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_riccati"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    let mut lines = text.lines();
    let header = lines.next().unwrap();
    assert_eq!(header, "x,z_linearized,z_direct,q,p,flag");
    lines
        .map(|l| l.split(',').map(|s| s.to_string()).collect())
        .collect()
}

#[test]
fn solve_tanh_csv_final_row() {
    let out = run(&[
        "solve", "--a", "1", "--f", "1", "--x0", "0", "--z0", "0", "--x-end", "2", "--method",
        "both", "--format", "csv",
    ]);
    assert!(out.status.success());
    let rows = csv_rows(&stdout(&out));
    let last = rows.last().unwrap();
    let reference = 2.0_f64.tanh();
    let z_lin: f64 = last[1].parse().unwrap();
    let z_dir: f64 = last[2].parse().unwrap();
    assert!((z_lin - reference).abs() <= 1e-8);
    assert!((z_dir - reference).abs() <= 1e-8);
    assert_eq!(last[5], "ok");
}

#[test]
fn closed_form_corollary4_matches_inverse_x() {
    let out = run(&[
        "closed-form",
        "--family",
        "corollary4",
        "--c",
        "2",
        "--k1",
        "1",
        "--k2",
        "0",
        "--x0",
        "1",
        "--x-end",
        "3",
    ]);
    assert!(out.status.success());
    for row in csv_rows(&stdout(&out)) {
        let x: f64 = row[0].parse().unwrap();
        let z: f64 = row[1].parse().unwrap();
        assert!((z - 1.0 / x).abs() <= 1e-12 / x, "x = {x}");
    }
}

#[test]
fn f_zero_routes_to_closed_form_with_notice() {
    let out = run(&[
        "solve", "--a", "1", "--f", "0", "--x0", "0", "--z0", "-1", "--x-end", "2",
    ]);
    assert!(out.status.success());
    let notice = String::from_utf8(out.stderr.clone()).unwrap();
    assert!(notice.contains("identically zero"), "notice: {notice}");
    assert!(notice.contains("K = 1"));
    let rows = csv_rows(&stdout(&out));
    // closed form continues past the pole at x = 1
    let past: Vec<_> = rows
        .iter()
        .filter(|r| r[0].parse::<f64>().unwrap() > 1.5)
        .collect();
    assert!(!past.is_empty());
    for row in past {
        let x: f64 = row[0].parse().unwrap();
        let z: f64 = row[1].parse().unwrap();
        assert!((z - 1.0 / (x - 1.0)).abs() <= 1e-9);
    }
}

#[test]
fn exit_codes() {
    // 1: expression parse error, named flag and span
    let out = run(&[
        "solve", "--a", "1", "--f", "exp(", "--x0", "0", "--z0", "0", "--x-end", "1",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr.clone()).unwrap();
    assert!(err.contains("--f"), "stderr: {err}");

    // 1: usage error (unknown flag)
    let out = run(&["solve", "--nope"]);
    assert_eq!(out.status.code(), Some(1));

    // 2: verification failure, artifact still emitted
    let out = run(&[
        "verify",
        "--a",
        "1",
        "--f",
        "1",
        "--x0",
        "0",
        "--z0",
        "0",
        "--x-end",
        "2",
        "--comparison-tol",
        "1e-18",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let text = stdout(&out);
    assert!(text.contains("\"verification\""));
    assert!(text.contains("\"pass\": false"));

    // 3: solver abort (zero of a inside the interval)
    let out = run(&[
        "solve", "--a", "x", "--f", "1", "--x0", "-1", "--z0", "0", "--x-end", "1",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8(out.stderr.clone()).unwrap();
    assert!(err.contains("zero"), "stderr: {err}");

    // 0: verify passes at default tolerances
    let out = run(&[
        "verify", "--a", "1", "--f", "1", "--x0", "0", "--z0", "0", "--x-end", "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn csv_and_json_carry_identical_numbers() {
    let args_base = [
        "solve", "--a", "1", "--f", "exp(x)", "--x0", "0", "--z0", "1", "--x-end", "1",
        "--method", "both",
    ];
    let csv_out = run(&[&args_base[..], &["--format", "csv"]].concat());
    let json_out = run(&[&args_base[..], &["--format", "json"]].concat());
    assert!(csv_out.status.success() && json_out.status.success());

    let csv_text = stdout(&csv_out);
    let rows = csv_rows(&csv_text);

    let doc: serde_json::Value = serde_json::from_str(&stdout(&json_out)).unwrap();
    let traj = doc["trajectory"].as_array().unwrap();
    assert_eq!(rows.len(), traj.len());
    for (row, rec) in rows.iter().zip(traj.iter()) {
        for (col, key) in [
            (0, "x"),
            (1, "z_linearized"),
            (2, "z_direct"),
            (3, "q"),
            (4, "p"),
        ] {
            let csv_val = &row[col];
            let json_val = &rec[key];
            match (csv_val.is_empty(), json_val.is_null()) {
                (true, true) => {}
                (false, false) => {
                    let a: f64 = csv_val.parse().unwrap();
                    let b = json_val.as_f64().unwrap();
                    assert_eq!(a.to_bits(), b.to_bits(), "{key} differs: {csv_val} vs {json_val}");
                }
                _ => panic!("{key}: presence differs between CSV and JSON"),
            }
        }
        assert_eq!(row[5], rec["flag"].as_str().unwrap());
    }

    // 17 significant digits in the CSV body
    for row in &rows {
        for cell in &row[..5] {
            if !cell.is_empty() {
                let mantissa = cell.trim_start_matches('-');
                let digits: String = mantissa
                    .chars()
                    .take_while(|c| *c != 'e')
                    .filter(|c| c.is_ascii_digit())
                    .collect();
                assert_eq!(digits.len(), 17, "cell {cell} is not 17 significant digits");
            }
        }
    }
}

#[test]
fn runs_are_bit_for_bit_reproducible() {
    let args = [
        "solve", "--a", "x^2", "--f", "1", "--x0", "0.5", "--z0", "0.3", "--x-end", "2",
        "--method", "both", "--format", "json",
    ];
    let first = run(&args);
    let second = run(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn json_report_shape() {
    let out = run(&[
        "verify", "--a", "1", "--f", "1", "--x0", "0", "--z0", "-2", "--x-end", "2",
    ]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    for key in ["spec", "trajectory", "poles", "verification", "version"] {
        assert!(doc.get(key).is_some(), "missing {key}");
    }
    // z(0) = -2 has a pole at ln(3)/2 and a paired blow-up
    let poles = doc["poles"].as_array().unwrap();
    assert_eq!(poles.len(), 1);
    assert!((poles[0].as_f64().unwrap() - 0.5 * 3.0_f64.ln()).abs() < 1e-8);
    let pairs = doc["verification"]["pole_agreement"].as_array().unwrap();
    assert_eq!(pairs.len(), 1);
    assert!(pairs[0]["gap"].as_f64().unwrap() <= 1e-3);
}

#[test]
fn families_list_subcommand() {
    let out = run(&["families-list"]);
    assert!(out.status.success());
    let text = stdout(&out);
    for tag in ["note-f-zero", "example1", "corollary3", "corollary4"] {
        assert!(text.contains(tag), "missing {tag}");
    }
    let out = run(&["families-list", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["families"].as_array().unwrap().len(), 6);
}

#[test]
fn backward_solve_works() {
    let out = run(&[
        "solve", "--a", "1", "--f", "1", "--x0", "2", "--z0", "0.96402758007581688",
        "--x-end", "0", "--method", "direct",
    ]);
    assert!(out.status.success());
    let rows = csv_rows(&stdout(&out));
    // ascending x, first row is x = 0 with z ≈ 0
    let first = rows.first().unwrap();
    assert_eq!(first[0].parse::<f64>().unwrap(), 0.0);
    assert!(first[2].parse::<f64>().unwrap().abs() < 1e-7);
}
