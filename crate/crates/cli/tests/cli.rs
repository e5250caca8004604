use covers_cli::run;
use std::path::PathBuf;

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("covers").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn validate_cycle() {
    let (code, out, _) = call(&["validate", &fixture("cycle3.quad")]);
    assert_eq!(code, 0, "{}", out);
    assert!(out.contains("verdict: PASS"));
}

#[test]
fn validate_exit_codes_follow_verdicts() {
    for name in ["power2.quad", "power3.quad", "power4.quad", "power5.quad", "cosine.quad", "gaussian.quad", "chebyshev3.quad"] {
        assert_eq!(call(&["validate", &fixture(name)]).0, 0, "{}", name);
    }
    assert_eq!(call(&["validate", &fixture("exp.quad")]).0, 1);
    assert_eq!(call(&["validate", "--admissible", &fixture("exp.quad")]).0, 0);
    let dir: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "fixtures", "mutants"].iter().collect();
    let mut n = 0;
    for entry in std::fs::read_dir(dir).unwrap() {
        let p = entry.unwrap().path();
        let (code, out, _) = call(&["validate", p.to_str().unwrap()]);
        assert_eq!(code, 1, "{}: {}", p.display(), out);
        assert!(out.contains("verdict: FAIL"));
        n += 1;
    }
    assert_eq!(n, 12);
}

#[test]
fn approx_writes_next_to_input() {
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("exp.quad");
    std::fs::copy(fixture("exp.quad"), &src).unwrap();
    let (code, out, err) = call(&["approx", "--n", "3", src.to_str().unwrap()]);
    assert_eq!(code, 0, "{}{}", out, err);
    assert!(out.contains("degree: 7"));
    let written = dir.path().join("exp.n3.quad");
    assert!(written.exists());
    let q = covers::format::read_quad(&written).unwrap();
    assert_eq!(q.gamma.core_vertices.len(), 7);
    assert_eq!(call(&["validate", written.to_str().unwrap()]).0, 0);
}

#[test]
fn unknown_subcommand_is_usage() {
    let (code, _, err) = call(&["frobnicate"]);
    assert_eq!(code, 2);
    assert!(err.contains("Usage"));
    assert_eq!(call(&["member", &fixture("exp.quad"), "--word", "q1"]).0, 2);
    assert_eq!(call(&["numlift", "bogus(z)"]).0, 2);
}

#[test]
fn missing_file_is_an_input_error() {
    let (code, _, err) = call(&["validate", "/nonexistent/x.quad"]);
    assert_eq!(code, 1);
    assert!(err.contains("error:"));
}

#[test]
fn portraits() {
    let (_, out, _) = call(&["portrait", &fixture("cosine.quad")]);
    assert_eq!(out, "arrow: a1 -> a2 weight 1\narrow: a2 -> a3 weight 2\narrow: a3 -> a2 weight 1\nsingular: a1 a3\n");
    let (_, out, _) = call(&["portrait", &fixture("gaussian.quad")]);
    assert_eq!(out, "arrow: a1 -> a1 weight 1\narrow: a2 -> a2 weight 2\narrow: a3 -> a1 weight 1\nsingular: a2 a3\n");
}

#[test]
fn words() {
    let q = fixture("power4.quad");
    assert_eq!(call(&["member", &q, "--word", "x1^8"]).0, 0);
    assert_eq!(call(&["member", &q, "--word", "x1^-6"]).0, 1);
    let (code, out, _) = call(&["lift", &fixture("cosine.quad"), "--word", "x3 x3"]);
    assert_eq!(code, 0);
    assert!(out.contains("closed: yes"));
    let (_, out, _) = call(&["class", &fixture("cosine.quad"), "--word", "x3 x3"]);
    assert_eq!(out.trim(), "class: y2");
    assert_eq!(call(&["class", &fixture("cosine.quad"), "--word", "x3"]).0, 1);
}

#[test]
fn converge_exp() {
    let (code, out, _) = call(&["converge", &fixture("exp.quad"), "--radius", "5", "--max-n", "8"]);
    assert_eq!(code, 0);
    assert!(out.contains("N: 3\n"), "{}", out);
}

#[test]
fn isotopy_and_embedding() {
    let p3 = fixture("power3.quad");
    assert_eq!(call(&["isotopic", &p3, &p3, "--root2", "2"]).0, 0);
    assert_eq!(call(&["isotopic", &p3, &fixture("power4.quad")]).0, 1);
    let (code, out, _) = call(&["embed", &p3, &fixture("exp.quad")]);
    assert_eq!(code, 1);
    assert!(out.contains("embeds: no"));
}

#[test]
fn numerics() {
    let (code, out, _) = call(&["numlift", "pow(add(1, div(z, 8)), 8)"]);
    assert_eq!(code, 0);
    assert!(out.contains("closure-degree: 8"));
    let (code, out, _) = call(&["teich-bound", "1", "2"]);
    assert_eq!(code, 0);
    let b: f64 = out.trim().strip_prefix("bound: ").unwrap().parse().unwrap();
    assert!((b - 3f64.ln()).abs() < 1e-12);
    assert_eq!(call(&["teich-bound", "2", "2"]).0, 1);
    let (code, out, _) =
        call(&["verify-num", "exp(z)", "--seq", "pow(add(1, div(z, {n})), {n})", "--ns", "16,32,64", "--radius", "4"]);
    assert_eq!(code, 0, "{}", out);
    let c = (2.0 / std::f64::consts::PI).acos();
    let g = format!("scale(div(pi, 2), cos(add(z, {})))", c);
    let (code, out, _) = call(&["verify-num", &g, "--seq", "pow(add(1, div(z, {n})), {n})", "--ns", "16,32", "--radius", "2"]);
    assert_eq!(code, 1);
    assert!(out.contains("witness: x1"));
}

#[test]
fn reconstruct_cubic() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.quad");
    let (code, out, _) = call(&["reconstruct", "sub(pow(z, 3), mul(3, z))", "--marked", "-2,0 2,0", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0, "{}", out);
    assert!(out.contains("vertices: 3\nedges: 6\n"));
    assert_eq!(call(&["validate", path.to_str().unwrap()]).0, 0);
}

#[test]
fn render_is_deterministic() {
    let a = call(&["render", &fixture("cycle3.quad")]).1;
    let b = call(&["render", &fixture("cycle3.quad")]).1;
    assert_eq!(a, b);
    assert!(a.starts_with("<?xml"));
    let ball = call(&["render", &fixture("exp.quad"), "--radius", "2"]).1;
    assert_eq!(ball.matches("class=\"vertex\"").count(), 5);
    let dot = call(&["render", &fixture("cycle3.quad"), "--format", "dot"]).1;
    assert_eq!(dot.matches(" -> ").count(), 3);
}

#[test]
fn fixture_files_are_canonical() {
    let dir: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "fixtures"].iter().collect();
    let mut paths: Vec<PathBuf> = std::fs::read_dir(&dir).unwrap().map(|e| e.unwrap().path()).collect();
    paths.extend(std::fs::read_dir(dir.join("mutants")).unwrap().map(|e| e.unwrap().path()));
    for p in paths.into_iter().filter(|p| p.extension().map_or(false, |e| e == "quad")) {
        let text = std::fs::read_to_string(&p).unwrap();
        let q = covers::format::parse_quad(&text).unwrap();
        assert_eq!(covers::format::serialize_quad(&q), text, "{}", p.display());
    }
    for name in ["power3", "exp", "cosine", "gaussian", "g2-marked-crowded"] {
        let (code, out, _) = call(&["fixture", name]);
        assert_eq!(code, 0);
        let file = if name.starts_with("g2-") { format!("mutants/{}.quad", name) } else { format!("{}.quad", name) };
        assert_eq!(out, std::fs::read_to_string(fixture(&file)).unwrap(), "{}", name);
    }
}
