//! Acceptance run: prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::path::PathBuf;
use std::process::Command;
use std::sync::Arc;
use std::time::Instant;

use tubecalc::category::CategorySpec;
use tubecalc::center::{compare, CenterFixture};
use tubecalc::monoidal::modular_data;
use tubecalc::rep::{decompose, hom, regular};
use tubecalc::suite::{run, SuiteOptions, SuiteReport};
use tubecalc::tube::TubeAlgebra;
use tubecalc::{Cyclotomic, MpComplex, Scalar, TolerancePolicy};

const TOL: f64 = 1e-15;
const FIXTURES: [&str; 4] = ["vecz2", "fib", "m2", "semion"];

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn fixture(name: &str) -> PathBuf {
    root().join("fixtures").join(name)
}

fn pol() -> TolerancePolicy {
    TolerancePolicy::uniform(TOL).unwrap()
}

fn tube<S: Scalar>(name: &str) -> TubeAlgebra<S> {
    let spec = CategorySpec::<S>::load_path(fixture(&format!("{name}.json"))).unwrap();
    TubeAlgebra::build(Arc::new(spec), pol())
}

fn cli(args: &[&str]) -> (i32, String) {
    let o = Command::new(env!("CARGO_BIN_EXE_tubecalc")).args(args).output().expect("run tubecalc");
    (o.status.code().unwrap_or(-1), String::from_utf8_lossy(&o.stdout).into_owned())
}

fn path(name: &str) -> String {
    fixture(name).to_string_lossy().into_owned()
}

struct Verdict {
    ok: bool,
    detail: String,
}

impl Verdict {
    fn new() -> Self {
        Self { ok: true, detail: String::new() }
    }

    fn check(&mut self, ok: bool, note: impl Into<String>) {
        self.ok &= ok;
        if !self.detail.is_empty() {
            self.detail.push_str("; ");
        }
        let note = note.into();
        if ok {
            self.detail.push_str(&note);
        } else {
            self.detail.push_str(&format!("FAILED {note}"));
        }
    }
}

fn structural_dimensions() -> Verdict {
    let mut v = Verdict::new();
    for (name, want) in [("vecz2", 4), ("fib", 7), ("m2", 4)] {
        let start = Instant::now();
        let dim = tube::<MpComplex>(name).dim();
        let secs = start.elapsed().as_secs_f64();
        v.check(dim == want && secs < 1.0, format!("{name} dim {dim} in {secs:.3} s"));
    }
    v
}

fn regular_decomposition() -> Verdict {
    let mut v = Verdict::new();
    for (name, want) in [("vecz2", vec![1, 1, 1, 1]), ("fib", vec![1, 1, 1, 2]), ("m2", vec![2])] {
        let start = Instant::now();
        let t = tube::<MpComplex>(name);
        let r = regular(&t).unwrap();
        let a = decompose(&t, &r, 0).unwrap();
        let secs = start.elapsed().as_secs_f64();
        let dims: Vec<usize> = a.iter().map(|s| s.rep.total_dim()).collect();
        let squares: usize = dims.iter().map(|d| d * d).sum();
        let again = decompose(&t, &r, 0).unwrap();
        let same = a.iter().zip(&again).all(|(x, y)| x.rep.actions() == y.rep.actions());
        let other = decompose(&t, &r, 1).unwrap();
        let stable = a.len() == other.len()
            && a.iter().zip(&other).all(|(x, y)| {
                x.rep.dims() == y.rep.dims() && hom(&x.rep, &y.rep, &pol()).len() == 1
            });
        v.check(
            dims == want && squares == t.dim() && same && stable && secs < 5.0,
            format!("{name} dims {dims:?}, sum of squares {squares}, deterministic {same}, seed-stable {stable}, {secs:.3} s"),
        );
    }
    v
}

fn suites() -> (Vec<(&'static str, SuiteReport)>, f64) {
    let start = Instant::now();
    let mut out = Vec::new();
    for name in FIXTURES {
        let t = tube::<MpComplex>(name);
        let mut centers = Vec::new();
        let center = fixture(&format!("center_{name}.json"));
        if center.exists() {
            centers.push((format!("center_{name}"), CenterFixture::load(&center).unwrap()));
        }
        out.push((name, run(&t, &SuiteOptions::default(), &centers).unwrap()));
    }
    (out, start.elapsed().as_secs_f64())
}

const AXIOM_CHECKS: [(&str, &str); 17] = [
    ("homspace", "rotation periodicity"),
    ("homspace", "dual basis delta"),
    ("homspace", "dominance"),
    ("homspace", "base change"),
    ("homspace", "star (i)"),
    ("homspace", "star (ii)"),
    ("homspace", "star (iii)"),
    ("homspace", "star (iv)"),
    ("tube_algebra", "welding associativity"),
    ("tube_algebra", "epsilon symmetry"),
    ("tube_algebra", "epsilon nondegeneracy"),
    ("monoidal", "pentagon"),
    ("monoidal", "triangle"),
    ("monoidal", "hexagons"),
    ("monoidal", "ribbon"),
    ("category", "pentagon"),
    ("monoidal", "associator inverse"),
];

const RELATION_CHECKS: [&str; 3] = ["relation closure", "canonical form coset", "dimension triangle"];

fn axiom_suites(reports: &[(&str, SuiteReport)], secs: f64) -> Verdict {
    let mut v = Verdict::new();
    for (name, report) in reports {
        let mut worst = 0.0f64;
        let mut missing = Vec::new();
        for (module, check) in AXIOM_CHECKS {
            match report.check(module, check) {
                Some(c) if c.passed => worst = worst.max(c.max_residual),
                Some(c) => missing.push(format!("{module}/{check} residual {:e}", c.max_residual)),
                None => missing.push(format!("{module}/{check} absent")),
            }
        }
        let failed: Vec<String> =
            report.checks().filter(|(_, c)| !c.passed).map(|(m, c)| format!("{m}/{}", c.name)).collect();
        missing.extend(failed);
        let mut note = format!("{name} {} checks, worst {worst:.1e}", report.checks().count());
        if !missing.is_empty() {
            note.push_str(&format!(" ({})", missing.join(", ")));
        }
        v.check(missing.is_empty(), note);
    }
    v.check(secs < 120.0, format!("total {secs:.1} s"));
    v
}

fn relation_span(reports: &[(&str, SuiteReport)]) -> Verdict {
    let mut v = Verdict::new();
    for (name, report) in reports {
        let ok = RELATION_CHECKS.iter().all(|c| report.check("monoidal", c).is_some_and(|c| c.passed));
        v.check(ok, format!("{name} closure, coset and dimension triangle"));
    }
    v
}

fn golden_rows(text: &str, matrix: &str) -> String {
    let mut lines = text.lines();
    let header = lines.next().unwrap_or_default();
    std::iter::once(header)
        .chain(lines.filter(|l| l.starts_with(&format!("{matrix},"))))
        .map(|l| format!("{l}\n"))
        .collect()
}

fn modular() -> Verdict {
    let mut v = Verdict::new();
    let golden = |f: &str| std::fs::read_to_string(fixture("golden").join(f)).unwrap();
    let (code, text) = cli(&["modular", &path("vecz2.json"), "--format", "csv", "--backend", "exact"]);
    let exact = code == 0
        && golden_rows(&text, "S") == golden("toric_S.csv")
        && golden_rows(&text, "T") == golden("toric_T.csv");
    v.check(exact, "exact toric S and T equal the golden files byte for byte");

    let t = tube::<MpComplex>("vecz2");
    let data = modular_data(&t, &decompose(&t, &regular(&t).unwrap(), 0).unwrap()).unwrap();
    let mut err = 0.0f64;
    for (matrix, file) in [(&data.s, "toric_S.csv"), (&data.t, "toric_T.csv")] {
        for line in golden(file).lines().skip(1) {
            let f: Vec<&str> = line.split(',').collect();
            let (i, j): (usize, usize) = (f[1].parse().unwrap(), f[2].parse().unwrap());
            let want = match f[3].split_once('/') {
                Some((n, d)) => n.parse::<f64>().unwrap() / d.parse::<f64>().unwrap(),
                None => f[3].parse().unwrap(),
            };
            err = err.max((matrix[(i, j)].to_c64() - want).norm());
        }
    }
    v.check(err <= TOL, format!("float toric S and T within {err:.1e} of the golden files"));
    let toric_verlinde = data.verlinde_residual();

    let t = tube::<MpComplex>("fib");
    let data = modular_data(&t, &decompose(&t, &regular(&t).unwrap(), 0).unwrap()).unwrap();
    let angle = 4.0 * std::f64::consts::PI / 5.0;
    let want = [0.0, angle, -angle, 0.0];
    let twist_err = (0..4)
        .map(|i| {
            let z = data.t[(i, i)].to_c64();
            (z.re - want[i].cos()).hypot(z.im - want[i].sin())
        })
        .fold(0.0f64, f64::max);
    v.check(twist_err <= TOL, format!("Fibonacci twists 1, e^(±4πi/5), 1 within {twist_err:.1e}"));
    let fib_verlinde = data.verlinde_residual();
    v.check(
        toric_verlinde <= TOL && fib_verlinde <= TOL,
        format!("Verlinde residual {toric_verlinde:.1e} (toric), {fib_verlinde:.1e} (Fibonacci)"),
    );
    v
}

fn center() -> Verdict {
    let mut v = Verdict::new();
    let fixture = CenterFixture::load(fixture("center_vecz2.json")).unwrap();
    for exact in [true, false] {
        let (bijective, psi, invertible, square) = if exact {
            let t = tube::<Cyclotomic>("vecz2");
            let r = compare(&t, &decompose(&t, &regular(&t).unwrap(), 0).unwrap(), &fixture).unwrap();
            summarize(&r)
        } else {
            let t = tube::<MpComplex>("vecz2");
            let r = compare(&t, &decompose(&t, &regular(&t).unwrap(), 0).unwrap(), &fixture).unwrap();
            summarize(&r)
        };
        let backend = if exact { "exact" } else { "float" };
        v.check(
            bijective && invertible && psi <= TOL && square <= TOL,
            format!("{backend}: bijection {bijective}, Psi invertible {invertible}, intertwiner {psi:.1e}, braiding square {square:.1e}"),
        );
    }
    v
}

fn summarize(r: &tubecalc::center::CenterReport) -> (bool, f64, bool, f64) {
    let psi = r.pairs.iter().map(|p| p.psi_intertwiner_residual).fold(0.0, f64::max);
    let square = r.pairs.iter().map(|p| p.braiding_square_residual).fold(0.0, f64::max);
    let identified = r.entries.iter().all(|e| e.identified);
    (r.bijective && identified, psi, r.pairs.iter().all(|p| p.psi_invertible), square)
}

fn negative_controls() -> Verdict {
    let mut v = Verdict::new();
    let (code, text) = cli(&["validate", &path("negative/fib_bad_f.json")]);
    let residual: f64 = text
        .lines()
        .find(|l| l.starts_with("pentagon:"))
        .and_then(|l| l.split("max residual ").nth(1))
        .and_then(|r| r.split(')').next())
        .and_then(|r| r.parse().ok())
        .unwrap_or(0.0);
    v.check(code == 3 && residual > 0.1, format!("corrupted F: pentagon residual {residual:.2}, exit {code}"));
    let (code, text) =
        cli(&["center", &path("vecz2.json"), "--fixture", &path("negative/center_vecz2_bad_sigma.json")]);
    let flagged = text.contains("NOT identified");
    v.check(code == 4 && flagged, format!("corrupted sigma: module law failure reported {flagged}, exit {code}"));
    v
}

fn main() {
    let mut all = true;
    let mut report = |n: usize, title: &str, v: Verdict| {
        all &= v.ok;
        println!("criterion {n} {title}: {} ({})", if v.ok { "PASS" } else { "FAIL" }, v.detail);
    };
    report(1, "structural dimensions", structural_dimensions());
    report(2, "regular decomposition", regular_decomposition());
    let (reports, secs) = suites();
    report(3, "axiom suites at 1e-15", axiom_suites(&reports, secs));
    report(4, "relation span and canonical form", relation_span(&reports));
    report(5, "modular data", modular());
    report(6, "center comparison", center());
    report(7, "negative controls", negative_controls());
    if !all {
        std::process::exit(1);
    }
}
