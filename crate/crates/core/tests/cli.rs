use std::f64::consts::PI;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lissajous3"))
        .args(args)
        .env("LISSAJOUS3_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn last_field(csv: &str, column: &str) -> f64 {
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let idx = header.iter().position(|h| *h == column).unwrap();
    lines
        .last()
        .unwrap()
        .split(',')
        .nth(idx)
        .unwrap()
        .parse()
        .unwrap()
}

#[test]
fn triple_reports_counts() {
    let text = stdout(&["triple", "--n", "100"]);
    assert!(text.starts_with("7550 7600 7651\n"));
    assert!(text.contains("nodes_lobatto=765102"));
    assert!(text.contains("dim=176851"));
}

#[test]
fn cubature_and_cc_constants() {
    let v = last_field(&stdout(&["cubature", "--n", "4", "--fn", "const"]), "value");
    assert!((v - PI.powi(3)).abs() < 1e-12);
    let v = last_field(
        &stdout(&["cc", "--n", "8", "--density", "lebesgue", "--fn", "const"]),
        "value",
    );
    assert!((v - 8.0).abs() < 1e-10);
}

#[test]
fn conjecture_holds() {
    assert!(stdout(&["conjecture", "--n", "2"]).starts_with("holds"));
}

#[test]
fn usage_errors_exit_with_2() {
    for args in [
        &["triple", "--n", "0"][..],
        &["hyper", "--n-from", "5", "--n-to", "3"],
        &["hyper", "--n", "3", "--fn", "nope"],
        &["extract", "--n", "3", "--method", "lu"],
        &["hyper", "--n", "3", "--fn", "f1", "--c", "-1"],
        &["resonance", "--freqs", "1,2", "--budget", "3"],
        &["bogus"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn numerical_refusal_exits_with_1() {
    let out = run(&["conjecture", "--n", "8"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn hyper_table_layout() {
    let text = stdout(&[
        "hyper", "--n-from", "2", "--n-to", "4", "--fn", "pow", "--k", "1",
    ]);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,l2_rel,linf_rel,coeff_count");
    assert_eq!(lines.len(), 4);
    assert!(lines[1].ends_with(",10"));
    assert!(last_field(&text, "linf_rel") < 1e-12);
    let timed = stdout(&["hyper", "--n", "3", "--timing"]);
    assert!(timed.starts_with("n,l2_rel,linf_rel,coeff_count,wall_ms\n"));
}

#[test]
fn custom_polynomial_is_reproduced() {
    let text = stdout(&[
        "hyper",
        "--n",
        "5",
        "--fn",
        "custom-cheb",
        "--k",
        "5",
        "--seed",
        "4",
    ]);
    assert!(last_field(&text, "linf_rel") < 1e-12);
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let mut files = Vec::new();
    for round in 0..2 {
        let nodes = dir.path().join(format!("dlp{round}.txt"));
        let table = dir.path().join(format!("hyper{round}.csv"));
        let leb = dir.path().join(format!("leb{round}.csv"));
        stdout(&[
            "extract",
            "--n",
            "4",
            "--method",
            "dlp",
            "--out",
            nodes.to_str().unwrap(),
        ]);
        stdout(&[
            "hyper",
            "--n-from",
            "2",
            "--n-to",
            "6",
            "--out",
            table.to_str().unwrap(),
        ]);
        stdout(&[
            "lebesgue",
            "--n-from",
            "1",
            "--n-to",
            "3",
            "--out",
            leb.to_str().unwrap(),
        ]);
        files.push([nodes.clone(), nodes.with_extension("idx"), table, leb]);
    }
    for (a, b) in files[0].iter().zip(&files[1]) {
        assert_eq!(
            std::fs::read(a).unwrap(),
            std::fs::read(b).unwrap(),
            "{a:?}"
        );
    }
    let nodes = std::fs::read_to_string(&files[0][0]).unwrap();
    let points = lissajous3::io::parse_nodes(&nodes).unwrap();
    let idx =
        lissajous3::io::parse_indices(&std::fs::read_to_string(&files[0][1]).unwrap()).unwrap();
    assert_eq!(points.len(), 35);
    assert_eq!(idx.len(), 35);
    let lattice = lissajous3::Lattice::new(4, lissajous3::Variant::Lobatto).unwrap();
    for (i, p) in idx.iter().zip(&points) {
        assert_eq!(lattice.nodes[*i], *p);
    }
}

#[test]
fn lebesgue_table_reports_both_methods() {
    let text = stdout(&["lebesgue", "--n", "3"]);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,method,lambda,dim,n2");
    assert!(lines[1].starts_with("3,afp,"));
    assert!(lines[2].starts_with("3,dlp,"));
    assert!(lines[2].ends_with(",20,9"));
}

#[test]
fn nested_interpolation_table() {
    let text = stdout(&[
        "interp", "--n-from", "1", "--n-to", "4", "--method", "dlp", "--nested", "--fn", "pow",
        "--k", "1",
    ]);
    assert_eq!(text.lines().count(), 5);
    assert!(last_field(&text, "linf_rel") < 1e-10);
}

#[test]
fn siegel_and_resonance() {
    assert_eq!(
        stdout(&["siegel", "--a", "1,2,3", "--n", "2"]),
        "bound=3 witness=2,-1,0 l1=3\n"
    );
    let text = stdout(&["resonance", "--freqs", "4,5,7", "--budget", "6"]);
    assert!(text.contains("l1=5"));
    assert!(text.contains("max_exactness_degree=4"));
}
