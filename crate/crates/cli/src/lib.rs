//! Command-line front end. `run` parses arguments, writes a key: value
//! report to `out` and diagnostics to `err`, and returns the exit code:
//! 0 for success or PASS, 1 for a failed check or invalid input, 2 for
//! usage errors.

use clap::{Parser, Subcommand, ValueEnum};
use covers::approx::{approximate, check_comb_convergence, degree_report, rooted_embed, DegreeRow};
use covers::fixtures;
use covers::format::{read_quad, serialize_quad, write_quad};
use covers::lift::{dyn_equivalent, isotopic, lift_class, lift_word, member};
use covers::numlift::{
    build_quadruple_numeric, closure_degree, lift_path_numeric, teich_bound, verify_numeric_convergence, ClosureDegree, Expr,
    LiftOptions, PlanePath, VerifyOptions,
};
use covers::quad::{portrait, validate_admissible, validate_dynamic, CoverView, MarkedSet, Quadruple, Rose};
use covers::geom::Point;
use covers::render;
use covers::word::Word;
use num_complex::Complex64;
use std::io::Write;
use std::path::{Path, PathBuf};

#[derive(Parser, Debug)]
#[command(name = "covers", about = "Combinatorial and numerical models of entire maps", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Svg,
    Dot,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Check admissibility and dynamic admissibility.
    Validate {
        file: PathBuf,
        /// Only require admissibility.
        #[arg(long)]
        admissible: bool,
    },
    /// List the faces of Γ up to translation.
    Faces { file: PathBuf },
    /// Print the marked portrait.
    Portrait { file: PathBuf },
    /// Degree table of an approximant.
    Degree {
        limit: PathBuf,
        /// Approximant to identify; defaults to approximating with `--n`.
        approx: Option<PathBuf>,
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
    /// Build the n-th polynomial approximant.
    Approx {
        file: PathBuf,
        #[arg(long)]
        n: usize,
        /// Output path; defaults to `<stem>.n<N>.quad` beside the input.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rooted embedding of a finite graph into a quadruple's graph.
    Embed {
        small: PathBuf,
        host: PathBuf,
        /// Root in the host.
        #[arg(long, default_value_t = 0)]
        root: usize,
    },
    /// Combinatorial convergence of the approximants.
    Converge {
        file: PathBuf,
        #[arg(long)]
        radius: usize,
        /// Largest approximant index used.
        #[arg(long, default_value_t = 12)]
        max_n: usize,
    },
    /// Whether a word lifts to a closed loop.
    Member {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        #[arg(long, default_value_t = 0)]
        root: usize,
    },
    /// Vertex sequence of a lifted word.
    Lift {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        #[arg(long, default_value_t = 0)]
        root: usize,
    },
    /// Homotopy class rel A of a closed lift, as a crossing word.
    Class {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        #[arg(long, default_value_t = 0)]
        root: usize,
    },
    /// Isotopy of two finite coverings.
    Isotopic {
        first: PathBuf,
        second: PathBuf,
        #[arg(long, default_value_t = 0)]
        root: usize,
        #[arg(long, default_value_t = 0)]
        root2: usize,
        /// Connecting y-word.
        #[arg(long, default_value = "")]
        conj: String,
    },
    /// Lift a circle under a map by continuation.
    Numlift {
        map: String,
        #[arg(long, allow_hyphen_values = true, default_value = "0,0")]
        z0: String,
        /// Center of the circle; the base point is f(z0).
        #[arg(long, allow_hyphen_values = true, default_value = "0,0")]
        center: String,
        #[arg(long, default_value_t = 256)]
        samples: usize,
        #[arg(long, default_value_t = 64)]
        max_k: usize,
        /// Newton tolerance.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Quadruple of a polynomial from numerical preimages of a rose.
    Reconstruct {
        map: String,
        /// Marked points, e.g. "-2,0 2,0".
        #[arg(long, allow_hyphen_values = true)]
        marked: String,
        #[arg(long, allow_hyphen_values = true)]
        center: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Numerical convergence of a sequence of maps.
    VerifyNum {
        target: String,
        /// Template with `{n}` for the sequence index.
        #[arg(long)]
        seq: String,
        /// Comma-separated indices.
        #[arg(long)]
        ns: String,
        #[arg(long, allow_hyphen_values = true, default_value = "0,0")]
        z0: String,
        #[arg(long, allow_hyphen_values = true, default_value = "0,0")]
        center: String,
        #[arg(long)]
        radius: usize,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Teichmüller distance bound log((1 + r/R)/(1 - r/R)).
    TeichBound {
        r: f64,
        big_r: f64,
    },
    /// Print a built-in quadruple: power<d>, exp, cosine, gaussian,
    /// chebyshev3, or a mutant name.
    Fixture { name: String },
    /// SVG or DOT drawing.
    Render {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Svg)]
        format: Format,
        /// Ball radius for infinite graphs.
        #[arg(long)]
        radius: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum Failure {
    Usage(String),
    Input(String),
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Input(e.to_string())
    }
}

type Res = Result<bool, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn complex(s: &str) -> Result<Complex64, Failure> {
    let (a, b) = s.split_once(',').unwrap_or((s, "0"));
    match (a.trim().parse::<f64>(), b.trim().parse::<f64>()) {
        (Ok(x), Ok(y)) => Ok(Complex64::new(x, y)),
        _ => Err(usage(format!("bad complex number '{}', expected x,y", s))),
    }
}

fn word(s: &str) -> Result<Word, Failure> {
    Word::parse(s, 'x').map_err(usage)
}

fn expr(s: &str) -> Result<Expr, Failure> {
    Expr::parse(s).map_err(|e| usage(e.to_string()))
}

fn lift_options(tol: Option<f64>) -> LiftOptions {
    let mut o = LiftOptions::default();
    if let Some(t) = tol {
        o.newton_tol = t;
    }
    o
}

fn degree_rows(out: &mut dyn Write, q: &Quadruple, rows: &[DegreeRow]) -> std::io::Result<()> {
    writeln!(out, "label vertices limit case marked")?;
    for r in rows {
        let m = r.marked.map_or("-".to_string(), |i| q.marked.names[i].clone());
        writeln!(out, "x{} {} {} {} {}", r.label + 1, r.vertices, r.limit, r.case, m)?;
    }
    Ok(())
}

fn default_out(input: &Path, n: usize) -> PathBuf {
    let stem = input.file_stem().map_or("quad".into(), |s| s.to_string_lossy().into_owned());
    input.with_file_name(format!("{}.n{}.quad", stem, n))
}

fn fixture(name: &str) -> Option<Quadruple> {
    if let Some(d) = name.strip_prefix("power").and_then(|d| d.parse::<usize>().ok()) {
        return (1..=12).contains(&d).then(|| fixtures::power_map(d));
    }
    match name {
        "exp" => Some(fixtures::exp_chain()),
        "cosine" => Some(fixtures::cosine()),
        "gaussian" => Some(fixtures::gaussian()),
        "chebyshev3" => Some(fixtures::chebyshev3()),
        _ => fixtures::mutants().into_iter().find(|m| m.name == name).map(|m| m.quad),
    }
}

fn exec(cmd: Cmd, out: &mut dyn Write) -> Res {
    match cmd {
        Cmd::Validate { file, admissible } => {
            let q = read_quad(&file)?;
            let a = validate_admissible(&q);
            let d = validate_dynamic(&q);
            writeln!(out, "file: {}", file.display())?;
            writeln!(out, "petals: {}", q.m())?;
            writeln!(out, "finite: {}", yes(q.is_finite()))?;
            writeln!(out, "admissible: {}", yes(a.ok()))?;
            writeln!(out, "dynamic: {}", yes(d.ok()))?;
            for v in &d.violations {
                writeln!(out, "violation: {}", v)?;
            }
            let ok = if admissible { a.ok() } else { d.ok() };
            writeln!(out, "verdict: {}", if ok { "PASS" } else { "FAIL" })?;
            Ok(ok)
        }
        Cmd::Faces { file } => {
            let q = read_quad(&file)?;
            let mut view = CoverView::new(&q.gamma, q.m(), if q.is_finite() { 0 } else { 4 })?;
            let faces = view.representative_faces()?;
            writeln!(out, "faces: {}", faces.len())?;
            writeln!(out, "face label bounded vertices")?;
            for (i, f) in faces.iter().enumerate() {
                writeln!(out, "{} {} {} {}", i, f.label, yes(f.bounded), f.vertices)?;
            }
            Ok(true)
        }
        Cmd::Portrait { file } => {
            let q = read_quad(&file)?;
            write!(out, "{}", portrait(&q)?.render(&q.marked.names))?;
            Ok(true)
        }
        Cmd::Degree { limit, approx, n } => {
            let q = read_quad(&limit)?;
            let rows = match approx {
                Some(p) => degree_report(&q, &read_quad(p)?)?,
                None => approximate(&q, n)?.table,
            };
            degree_rows(out, &q, &rows)?;
            Ok(true)
        }
        Cmd::Approx { file, n, out: path } => {
            let q = read_quad(&file)?;
            let r = approximate(&q, n)?;
            let path = path.unwrap_or_else(|| default_out(&file, n));
            write_quad(&path, &r.quad)?;
            writeln!(out, "n: {}", n)?;
            writeln!(out, "degree: {}", r.degree())?;
            writeln!(out, "closed-faces: {}", r.chains.len())?;
            writeln!(out, "threshold-reached: {}", yes(r.threshold_reached))?;
            writeln!(out, "dynamic: {}", yes(r.is_dynamic()))?;
            for v in &r.validation.violations {
                writeln!(out, "violation: {}", v)?;
            }
            degree_rows(out, &q, &r.table)?;
            writeln!(out, "wrote: {}", path.display())?;
            Ok(r.is_dynamic())
        }
        Cmd::Embed { small, host, root } => {
            let k = read_quad(&small)?;
            if !k.is_finite() {
                return Err(Failure::Input("the embedded graph must be finite".into()));
            }
            let h = read_quad(&host)?;
            let kg = k.gamma.expand(0)?.graph;
            match rooted_embed(&kg, &h, k.gamma.basepoint, root) {
                Ok(e) => {
                    let vs: Vec<String> = e.vertex.iter().map(|v| v.to_string()).collect();
                    writeln!(out, "embeds: yes")?;
                    writeln!(out, "vertex-map: {}", vs.join(" "))?;
                    Ok(true)
                }
                Err(m) => {
                    writeln!(out, "embeds: no")?;
                    writeln!(out, "mismatch: {}", m)?;
                    Ok(false)
                }
            }
        }
        Cmd::Converge { file, radius, max_n } => {
            let q = read_quad(&file)?;
            let seq = (0..=max_n).map(|n| approximate(&q, n).map(|r| (n, r.quad))).collect::<Result<Vec<_>, _>>()?;
            let rep = check_comb_convergence(&q, &seq, radius)?;
            writeln!(out, "radius: {}", radius)?;
            for ((n, _), f) in seq.iter().zip(&rep.failures) {
                match f {
                    Some(f) => writeln!(out, "n {}: {}", n, f)?,
                    None => writeln!(out, "n {}: agree", n)?,
                }
            }
            match rep.n {
                Some(n) => writeln!(out, "N: {}", n)?,
                None => writeln!(out, "witness: {}", rep.witness().map_or("-".to_string(), |f| f.to_string()))?,
            }
            writeln!(out, "verdict: {}", if rep.pass() { "PASS" } else { "FAIL" })?;
            Ok(rep.pass())
        }
        Cmd::Member { file, word: w, root } => {
            let q = read_quad(&file)?;
            let b = member(&q, root, &word(&w)?)?;
            writeln!(out, "member: {}", yes(b))?;
            Ok(b)
        }
        Cmd::Lift { file, word: w, root } => {
            let q = read_quad(&file)?;
            let l = lift_word(&q, root, &word(&w)?)?;
            let vs: Vec<String> = l.vertices.iter().map(|v| v.to_string()).collect();
            writeln!(out, "vertices: {}", vs.join(" "))?;
            writeln!(out, "end: {}", l.end())?;
            writeln!(out, "closed: {}", yes(l.is_closed()))?;
            Ok(true)
        }
        Cmd::Class { file, word: w, root } => {
            let q = read_quad(&file)?;
            let c = lift_class(&q, root, &word(&w)?)?;
            writeln!(out, "class: {}", c.display('y'))?;
            Ok(true)
        }
        Cmd::Isotopic { first, second, root, root2, conj } => {
            let (a, b) = (read_quad(&first)?, read_quad(&second)?);
            let p = Word::parse(&conj, 'y').map_err(usage)?;
            let r = isotopic(&a, root, &b, root2, &p)?;
            writeln!(out, "isotopic: {}", yes(r.ok()))?;
            if let Some(w) = &r.subgroup_witness {
                writeln!(out, "subgroup-witness: {}", w.display('x'))?;
            }
            if let Some(w) = &r.class_witness {
                writeln!(out, "class-witness: {}", w.display('x'))?;
            }
            match dyn_equivalent(&a, &b)? {
                Some(v) => writeln!(out, "dyn-equivalent: yes (root {})", v)?,
                None => writeln!(out, "dyn-equivalent: no")?,
            }
            Ok(r.ok())
        }
        Cmd::Numlift { map, z0, center, samples, max_k, tol } => {
            let f = expr(&map)?;
            let z0 = complex(&z0)?;
            let w0 = f.eval(z0)?;
            let gamma = PlanePath::circle(complex(&center)?, w0, samples.max(3));
            let opt = lift_options(tol);
            let p = lift_path_numeric(&f, &gamma, z0, &opt)?;
            writeln!(out, "start: {} {}", p.start().re, p.start().im)?;
            writeln!(out, "end: {} {}", p.end().re, p.end().im)?;
            writeln!(out, "closed: {}", yes(p.closed))?;
            writeln!(out, "samples: {}", p.z.len())?;
            writeln!(out, "rejected-steps: {}", p.rejected_steps)?;
            match closure_degree(&f, &gamma, z0, max_k, &opt)? {
                ClosureDegree::Closed(k) => writeln!(out, "closure-degree: {}", k)?,
                ClosureDegree::Exceeds(k) => writeln!(out, "closure-degree: > {}", k)?,
            }
            Ok(true)
        }
        Cmd::Reconstruct { map, marked, center, out: path } => {
            let f = expr(&map)?;
            let pts =
                marked.split_whitespace().map(|s| complex(s).map(Point::from_complex)).collect::<Result<Vec<_>, _>>()?;
            let a = MarkedSet::new(pts);
            let c = match center {
                Some(c) => Point::from_complex(complex(&c)?),
                None => Rose::default_center(&a),
            };
            let rose = Rose::around(&a, c)?;
            let q = build_quadruple_numeric(&f, &a, &rose, &LiftOptions::default())?;
            let g = q.gamma.expand(0)?.graph;
            let ok = validate_admissible(&q).ok();
            writeln!(out, "vertices: {}", g.vertex_count())?;
            writeln!(out, "edges: {}", g.edge_count())?;
            writeln!(out, "admissible: {}", yes(ok))?;
            if let Some(p) = path {
                write_quad(&p, &q)?;
                writeln!(out, "wrote: {}", p.display())?;
            }
            Ok(ok)
        }
        Cmd::VerifyNum { target, seq, ns, z0, center, radius, tol } => {
            let g = expr(&target)?;
            if !seq.contains("{n}") {
                return Err(usage("--seq needs a {n} placeholder"));
            }
            let mut fs = Vec::new();
            for s in ns.split(',') {
                let n: usize = s.trim().parse().map_err(|_| usage(format!("bad index '{}'", s)))?;
                fs.push((n, expr(&seq.replace("{n}", &n.to_string()))?));
            }
            let z0 = complex(&z0)?;
            let w0 = g.eval(z0)?;
            let petals = vec![PlanePath::circle(complex(&center)?, w0, 256)];
            let mut opt = VerifyOptions::default();
            if let Some(t) = tol {
                opt.tol = t;
            }
            let r = verify_numeric_convergence(&fs, &g, z0, w0, &petals, radius, &opt)?;
            writeln!(out, "radius: {}", r.radius)?;
            writeln!(out, "words: {}", r.words_checked)?;
            for ((n, d), (_, prof)) in r.deriv_diffs.iter().zip(&r.profile) {
                writeln!(out, "n {}: deriv-diff {:.3e} sup-distance {:.3e}", n, d, prof.iter().cloned().fold(0.0, f64::max))?;
            }
            writeln!(out, "derivatives: {}", if r.deriv_ok { "converge" } else { "do not converge" })?;
            match (&r.witness, r.n) {
                (Some(w), _) => writeln!(out, "witness: {}", w.display('x'))?,
                (None, Some(n)) => writeln!(out, "N: {}", n)?,
                (None, None) => {}
            }
            writeln!(out, "verdict: {}", if r.pass() { "PASS" } else { "FAIL" })?;
            Ok(r.pass())
        }
        Cmd::Fixture { name } => {
            let q = fixture(&name).ok_or_else(|| usage(format!("unknown fixture '{}'", name)))?;
            out.write_all(serialize_quad(&q).as_bytes())?;
            Ok(true)
        }
        Cmd::TeichBound { r, big_r } => {
            writeln!(out, "bound: {}", teich_bound(r, big_r)?)?;
            Ok(true)
        }
        Cmd::Render { file, format, radius, out: path } => {
            let q = read_quad(&file)?;
            let g = render::drawn_graph(&q, radius)?;
            let text = match format {
                Format::Svg => render::svg(&q, &g)?,
                Format::Dot => render::dot(&g),
            };
            match path {
                Some(p) => {
                    std::fs::write(&p, text).map_err(|e| Failure::Input(format!("{}: {}", p.display(), e)))?;
                    writeln!(out, "wrote: {}", p.display())?;
                }
                None => out.write_all(text.as_bytes())?,
            }
            Ok(true)
        }
    }
}

/// Runs one command; `args` includes the program name.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 { write!(out, "{}", e) } else { write!(err, "{}", e) };
            return code;
        }
    };
    match exec(cli.cmd, out) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "error: {}", m);
            2
        }
        Err(Failure::Input(m)) => {
            let _ = writeln!(err, "error: {}", m);
            1
        }
    }
}
