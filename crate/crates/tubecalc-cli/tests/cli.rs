use std::path::PathBuf;
use std::process::{Command, Output};

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn fixture(name: &str) -> String {
    root().join("fixtures").join(name).to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tubecalc")).args(args).output().expect("run tubecalc")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

/// Parses `a`, `bi`, `a+bi` or `a-bi` as printed by the float backend.
fn parse_complex(s: &str) -> (f64, f64) {
    let Some(body) = s.strip_suffix('i') else { return (s.parse().unwrap(), 0.0) };
    let split = body
        .char_indices()
        .skip(1)
        .filter(|&(i, c)| (c == '+' || c == '-') && !body[..i].ends_with(['e', 'E']))
        .map(|(i, _)| i)
        .last();
    match split {
        Some(i) => (body[..i].parse().unwrap(), body[i..].parse().unwrap()),
        None => (0.0, body.parse().unwrap()),
    }
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(root().join("fixtures/golden").join(name)).unwrap()
}

fn golden_rows(text: &str, matrix: &str) -> String {
    let mut lines = text.lines();
    let header = lines.next().unwrap();
    std::iter::once(header).chain(lines.filter(|l| l.starts_with(&format!("{matrix},")))).map(|l| format!("{l}\n")).collect()
}

#[test]
fn validate_reports_each_check() {
    let o = run(&["validate", &fixture("fib.json")]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.lines().any(|l| l.starts_with("pentagon: PASS (max residual")), "{text}");
}

#[test]
fn corrupted_f_symbol_exits_with_three() {
    let o = run(&["validate", &fixture("negative/fib_bad_f.json")]);
    assert_eq!(code(&o), 3);
    let line = stdout(&o).lines().find(|l| l.starts_with("pentagon:")).unwrap().to_string();
    assert!(line.contains("FAIL"));
    let residual: f64 = line.split("max residual ").nth(1).unwrap().split(')').next().unwrap().parse().unwrap();
    assert!(residual > 0.1);
    assert_eq!(code(&run(&["tube", &fixture("negative/fib_bad_f.json")])), 3);
}

#[test]
fn corrupted_half_braiding_exits_with_four() {
    let o = run(&["center", &fixture("vecz2.json"), "--fixture", &fixture("negative/center_vecz2_bad_sigma.json")]);
    assert_eq!(code(&o), 4);
    assert!(stdout(&o).contains("NOT identified"));
}

#[test]
fn center_comparison_of_the_toric_code() {
    let o = run(&["center", &fixture("vecz2.json"), "--fixture", &fixture("center_vecz2.json"), "--backend", "exact"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("simple entries biject onto simple modules: true"));
}

#[test]
fn irreps_of_the_toric_code() {
    let o = run(&["irreps", &fixture("vecz2.json"), "--seed", "7", "--backend", "exact"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let twists: Vec<&str> =
        text.lines().filter_map(|l| l.split("twist ").nth(1)).map(|r| r.split(',').next().unwrap()).collect();
    assert_eq!(twists, ["1", "1", "1", "-1"], "{text}");
}

#[test]
fn exact_modular_csv_matches_the_golden_files() {
    let o = run(&["modular", &fixture("vecz2.json"), "--format", "csv", "--backend", "exact"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert_eq!(golden_rows(&text, "S"), golden("toric_S.csv"));
    assert_eq!(golden_rows(&text, "T"), golden("toric_T.csv"));
}

#[test]
fn float_modular_csv_matches_the_golden_files() {
    let o = run(&["modular", &fixture("vecz2.json"), "--format", "csv"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    for (matrix, file) in [("S", "toric_S.csv"), ("T", "toric_T.csv")] {
        let got = golden_rows(&text, matrix);
        let want = golden(file);
        assert_eq!(got.lines().count(), want.lines().count());
        for (g, w) in got.lines().zip(want.lines()).skip(1) {
            let (gv, wv) = (g.rsplit(',').next().unwrap(), w.rsplit(',').next().unwrap());
            let (re, im) = parse_complex(gv);
            let exact = match wv.split_once('/') {
                Some((n, d)) => n.parse::<f64>().unwrap() / d.parse::<f64>().unwrap(),
                None => wv.parse().unwrap(),
            };
            assert!((re - exact).abs() <= 1e-15 && im.abs() <= 1e-15, "{g} vs {w}");
        }
    }
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["irreps", "fixtures/fib.json", "--format", "json"],
        vec!["modular", "fixtures/fib.json", "--format", "csv"],
        vec!["fuse", "fixtures/fib.json", "--left", "3", "--right", "3"],
    ] {
        let args: Vec<String> =
            args.iter().map(|a| if a.starts_with("fixtures/") { fixture(&a[9..]) } else { a.to_string() }).collect();
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let (a, b) = (run(&args), run(&args));
        assert_eq!(code(&a), 0);
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn json_output_is_valid() {
    for cmd in ["info", "tube", "irreps", "modular", "validate"] {
        let o = run(&[cmd, &fixture("semion.json"), "--format", "json", "--backend", "exact"]);
        assert_eq!(code(&o), 0, "{cmd}");
        serde_json::from_slice::<serde_json::Value>(&o.stdout).unwrap_or_else(|e| panic!("{cmd}: {e}"));
    }
}

#[test]
fn fuse_decomposes_the_fibonacci_square() {
    let o = run(&["fuse", &fixture("fib.json"), "--left", "3", "--right", "3", "--format", "csv"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "simple,multiplicity\n0,1\n1,1\n2,1\n3,1\n");
}

#[test]
fn bad_arguments_exit_with_two() {
    assert_eq!(code(&run(&["tube", &fixture("vecz2.json"), "--bogus"])), 2);
    assert_eq!(code(&run(&["tube", &fixture("vecz2.json"), "--tol", "0"])), 2);
    assert_eq!(code(&run(&["tube", &fixture("vecz2.json"), "--precision", "8"])), 2);
    assert_eq!(code(&run(&["fuse", &fixture("vecz2.json"), "--left", "9", "--right", "0"])), 2);
}

#[test]
fn load_failures_exit_with_three() {
    let o = run(&["info", "no_such_file.json"]);
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("no_such_file.json"));
    assert_eq!(code(&run(&["info", &fixture("fib.json"), "--backend", "exact"])), 3);
}

#[test]
fn fixtures_resolve_through_the_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_tubecalc"))
        .args(["tube", "semion.json"])
        .env("TUBECALC_FIXTURES", root().join("fixtures"))
        .current_dir(std::env::temp_dir())
        .output()
        .unwrap();
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn selftest_passes_on_exact_fixtures() {
    for name in ["vecz2.json", "semion.json", "m2.json"] {
        let o = run(&["selftest", &fixture(name), "--backend", "exact"]);
        assert_eq!(code(&o), 0, "{name}\n{}", stdout(&o));
        assert!(stdout(&o).contains(", 0 failed"));
    }
}

#[test]
fn complex_parser_handles_exponents() {
    assert_eq!(parse_complex("5e-1"), (0.5, 0.0));
    assert_eq!(parse_complex("-2e+0+5e-1i"), (-2.0, 0.5));
    assert_eq!(parse_complex("1e-3-2e+1i"), (0.001, -20.0));
    assert_eq!(parse_complex("-5e-1i"), (0.0, -0.5));
}
