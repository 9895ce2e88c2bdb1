use std::io::Write;
use std::process::{Command, Output};

fn rtinv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rtinv"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

/// The value in `column` of the first data row whose first cell is `key`.
fn cell(out: &str, key: &str, column: usize) -> String {
    out.lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| l.split_whitespace().collect::<Vec<_>>())
        .find(|cells| cells.first() == Some(&key))
        .unwrap_or_else(|| panic!("no row {key} in\n{out}"))[column]
        .to_string()
}

#[test]
fn check_passes_for_a1_level_4() {
    let out = rtinv(&["--group", "A1", "--level", "4", "--cmd", "check"]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = stdout(&out);
    assert!(text.starts_with("# rtinv "));
    assert!(text.contains("# group A1 level 4 cmd check"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn fiber_link_counts_a1_fusion_multiplicity() {
    let out = rtinv(&[
        "--group", "A1", "--level", "5", "--cmd", "fiber", "--color", "1", "--color", "1",
        "--color", "2",
    ]);
    assert!(out.status.success());
    assert_eq!(cell(&stdout(&out), "0", 2), "1+0i");
}

#[test]
fn rosso_jones_agrees_with_surgery_at_large_level() {
    let out = rtinv(&[
        "--group",
        "A1",
        "--level",
        "40",
        "--cmd",
        "rosso-jones",
        "--p",
        "2",
        "--q",
        "3",
        "--color",
        "1",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let residual: f64 = cell(&text, "residual", 2).parse().unwrap();
    assert!(residual < 1e-7, "residual {residual}");
    assert_eq!(cell(&text, "precondition", 2), "true");
}

#[test]
fn output_is_identical_across_thread_counts() {
    let base = [
        "--group", "A2", "--level", "6", "--cmd", "smatrix", "--format", "csv",
    ];
    let seq = rtinv(&[&base[..], &["--threads", "1"]].concat());
    let par = rtinv(&[&base[..], &["--threads", "4"]].concat());
    assert!(seq.status.success() && par.status.success());
    assert_eq!(seq.stdout, par.stdout);
}

#[test]
fn csv_quotes_multi_coordinate_labels() {
    let out = rtinv(&[
        "--group", "A2", "--level", "4", "--cmd", "smatrix", "--format", "csv",
    ]);
    let text = stdout(&out);
    let mut rows = text.lines().filter(|l| !l.starts_with('#'));
    assert_eq!(rows.next(), Some("i,j,lambda,mu,s"));
    assert!(rows.next().unwrap().starts_with("0,0,\"(0,0)\",\"(0,0)\","));
}

#[test]
fn configuration_errors_exit_with_2() {
    for args in [
        &["--group", "A0", "--level", "4", "--cmd", "smatrix"][..],
        &["--group", "A1", "--level", "2", "--cmd", "smatrix"],
        &[
            "--group", "A1", "--level", "4", "--cmd", "fiber", "--color", "7",
        ],
        &[
            "--group", "A2", "--level", "4", "--cmd", "fiber", "--color", "1",
        ],
        &[
            "--group",
            "A1",
            "--level",
            "9",
            "--cmd",
            "torus-knot",
            "--p",
            "2",
            "--q",
            "4",
            "--color",
            "1",
        ],
        &["--group", "A1", "--level", "4", "--cmd", "shadow"],
        &["--group", "A1", "--level", "4", "--cmd", "nonsense"],
    ] {
        let out = rtinv(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn weyl_cap_rejection_exits_with_3() {
    let out = rtinv(&[
        "--group",
        "B3",
        "--level",
        "8",
        "--cmd",
        "smatrix",
        "--weyl-cap",
        "10",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap"));
}

#[test]
fn term_budget_rejection_exits_with_3() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(
        file,
        "genus=0\nloop a parent=outer winding=1 color=1 plus=inner"
    )
    .unwrap();
    let path = file.path().to_str().unwrap();
    let out = rtinv(&[
        "--group",
        "A1",
        "--level",
        "9",
        "--cmd",
        "shadow",
        "--link",
        path,
        "--term-budget",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn impossible_tolerances_exit_with_4() {
    let out = rtinv(&[
        "--group",
        "A1",
        "--level",
        "5",
        "--cmd",
        "check",
        "--tolerance-scale",
        "1e-300",
    ]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("identity failed"));
}

fn shadow_of_single_loop(winding: i64, method: &str) -> String {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(
        file,
        "# a single loop\ngenus=0\nloop a parent=outer winding={winding} color=1 plus=inner"
    )
    .unwrap();
    let path = file.path().to_str().unwrap();
    let out = rtinv(&[
        "--group", "A1", "--level", "5", "--cmd", "shadow", "--link", path, "--method", method,
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    cell(&stdout(&out), "0", 4)
}

#[test]
fn contractible_loop_on_sphere_gives_quantum_dimension() {
    let d = 2.0 * (std::f64::consts::PI / 5.0).cos();
    for method in ["enumerate", "contract"] {
        let value = shadow_of_single_loop(0, method);
        let re: f64 = value.split('+').next().unwrap().parse().unwrap();
        assert!((re - d).abs() < 1e-10, "{value} vs {d}");
        assert!(value.ends_with("+0i"));
    }
}

#[test]
fn single_fiber_on_sphere_vanishes() {
    for method in ["enumerate", "contract"] {
        assert_eq!(shadow_of_single_loop(1, method), "0+0i");
    }
}

#[test]
fn malformed_link_file_exits_with_2() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(
        file,
        "genus=0\nloop a parent=outer winding=x color=1 plus=inner"
    )
    .unwrap();
    let out = rtinv(&[
        "--group",
        "A1",
        "--level",
        "5",
        "--cmd",
        "shadow",
        "--link",
        file.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn verlinde_dimension_of_torus_counts_labels() {
    let out = rtinv(&[
        "--group",
        "A2",
        "--level",
        "5",
        "--cmd",
        "verlinde-dim",
        "--genus",
        "1",
    ]);
    assert!(out.status.success());
    assert_eq!(cell(&stdout(&out), "1", 1), "6");
}
