//! The `.quad` text format.
//!
//! ```text
//! MARKED
//! POINT <id> <x> <y> [name]
//! ROSE
//! CENTER <x> <y>
//! PETAL <label> <marked-id> [x y]...
//! GRAPH
//! VERTEX <id> <x> <y>
//! EDGE <id> <tail> <head> <label|-> [x y]...
//! ROT <vertex-id> <token>...
//! BASEPOINT <vertex-id>
//! CELL <id> <dx> <dy>
//! VERTEX <id> <x> <y>
//! EDGE <id> <tail> <head> <label|-> [x y]...
//! ROT0 <vertex-id> <token>...
//! ROT <vertex-id> <token>...
//! META
//! PARABOLIC finite | unknown | declared <note>
//! ```
//!
//! Ids are arbitrary integers and are renumbered densely in increasing order;
//! petal labels are numbered from 1. Core edge ends are `v` or `cell.v`
//! (a rep-0 cell vertex); cell edge ends are `v` or `^v` (previous
//! repetition). Rotation tokens are `e+` / `e-` for the forward / backward
//! half of core edge `e`, and `Le±` / `Ne±` for cell edge `e` of the same /
//! next repetition. Lines starting with `#` are comments.

use crate::error::FormatError;
use crate::geom::Point;
use crate::planar::{Cell, CellEdge, CellEnd, CoreEdge, CoreEnd, GraphGenerator, RotToken};
use crate::quad::{MarkedSet, Parabolicity, Petal, Quadruple, Rose};
use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::path::Path;

fn err(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Syntax { line, msg: msg.into() }
}

#[derive(Clone, Copy)]
enum Tok {
    Core(i64, bool),
    Local(i64, bool),
    Next(i64, bool),
}

#[derive(Clone, Copy)]
enum End {
    Plain(i64),
    Cell(i64, i64),
    Prev(i64),
}

struct RawEdge {
    line: usize,
    tail: End,
    head: End,
    label: Option<i64>,
    path: Vec<Point>,
}

#[derive(Default)]
struct RawGraph {
    vertices: BTreeMap<i64, Point>,
    edges: BTreeMap<i64, RawEdge>,
    rot: BTreeMap<i64, (usize, Vec<Tok>)>,
    rot0: BTreeMap<i64, (usize, Vec<Tok>)>,
}

struct RawCell {
    line: usize,
    displacement: Point,
    graph: RawGraph,
}

#[derive(Clone, Copy, PartialEq)]
enum Section {
    None,
    Marked,
    Rose,
    Graph,
    Cell(i64),
    Meta,
}

struct Fields<'a> {
    line: usize,
    it: std::iter::Peekable<std::str::SplitWhitespace<'a>>,
}

impl<'a> Fields<'a> {
    fn word(&mut self, what: &str) -> Result<&'a str, FormatError> {
        self.it.next().ok_or_else(|| err(self.line, format!("missing {}", what)))
    }

    fn int(&mut self, what: &str) -> Result<i64, FormatError> {
        let w = self.word(what)?;
        w.parse().map_err(|_| err(self.line, format!("bad {} '{}'", what, w)))
    }

    fn float(&mut self, what: &str) -> Result<f64, FormatError> {
        let w = self.word(what)?;
        match w.parse::<f64>() {
            Ok(x) if x.is_finite() => Ok(x),
            _ => Err(err(self.line, format!("bad {} '{}'", what, w))),
        }
    }

    fn point(&mut self) -> Result<Point, FormatError> {
        Ok(Point::new(self.float("x")?, self.float("y")?))
    }

    fn polyline(&mut self) -> Result<Vec<Point>, FormatError> {
        let mut out = Vec::new();
        while self.it.peek().is_some() {
            out.push(self.point()?);
        }
        Ok(out)
    }

    fn done(&mut self) -> Result<(), FormatError> {
        match self.it.next() {
            Some(w) => Err(err(self.line, format!("unexpected '{}'", w))),
            None => Ok(()),
        }
    }

    fn rest(self) -> Vec<&'a str> {
        self.it.collect()
    }
}

fn parse_label(line: usize, w: &str) -> Result<Option<i64>, FormatError> {
    if w == "-" {
        return Ok(None);
    }
    w.parse().map(Some).map_err(|_| err(line, format!("bad petal label '{}'", w)))
}

fn parse_tok(line: usize, w: &str) -> Result<Tok, FormatError> {
    let (body, fwd) = match w.as_bytes().last() {
        Some(b'+') => (&w[..w.len() - 1], true),
        Some(b'-') => (&w[..w.len() - 1], false),
        _ => return Err(err(line, format!("rotation token '{}' lacks a direction", w))),
    };
    let bad = || err(line, format!("bad rotation token '{}'", w));
    let num = |s: &str| s.parse::<i64>().map_err(|_| bad());
    Ok(match body.as_bytes().first() {
        Some(b'L') => Tok::Local(num(&body[1..])?, fwd),
        Some(b'N') => Tok::Next(num(&body[1..])?, fwd),
        _ => Tok::Core(num(body)?, fwd),
    })
}

fn parse_end(line: usize, w: &str, in_cell: bool) -> Result<End, FormatError> {
    let bad = || err(line, format!("bad edge end '{}'", w));
    if in_cell {
        if let Some(v) = w.strip_prefix('^') {
            return v.parse().map(End::Prev).map_err(|_| bad());
        }
    } else if let Some((c, v)) = w.split_once('.') {
        return Ok(End::Cell(c.parse().map_err(|_| bad())?, v.parse().map_err(|_| bad())?));
    }
    w.parse().map(End::Plain).map_err(|_| bad())
}

/// Dense index of each id, in increasing id order.
fn dense<T>(m: &BTreeMap<i64, T>) -> HashMap<i64, usize> {
    m.keys().enumerate().map(|(i, &k)| (k, i)).collect()
}

fn insert<T>(m: &mut BTreeMap<i64, T>, id: i64, v: T, line: usize, what: &str) -> Result<(), FormatError> {
    if m.insert(id, v).is_some() {
        return Err(err(line, format!("duplicate {} id {}", what, id)));
    }
    Ok(())
}

const RECORDS: [&str; 10] = ["POINT", "CENTER", "PETAL", "VERTEX", "EDGE", "ROT", "ROT0", "BASEPOINT", "PARABOLIC", "CELL"];

pub fn parse_quad(text: &str) -> Result<Quadruple, FormatError> {
    let mut section = Section::None;
    let mut seen: Vec<(&str, usize)> = Vec::new();
    let mut marked: BTreeMap<i64, (Point, Option<String>)> = BTreeMap::new();
    let mut center: Option<Point> = None;
    let mut petals: BTreeMap<i64, (usize, i64, Vec<Point>)> = BTreeMap::new();
    let mut core = RawGraph::default();
    let mut cells: BTreeMap<i64, RawCell> = BTreeMap::new();
    let mut basepoint: Option<(usize, i64)> = None;
    let mut parabolic: Option<Parabolicity> = None;

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut f = Fields { line, it: trimmed.split_whitespace().peekable() };
        let key = f.word("keyword")?;
        match key {
            "MARKED" | "ROSE" | "GRAPH" | "META" => {
                f.done()?;
                if seen.iter().any(|s| s.0 == key) {
                    return Err(err(line, format!("section {} repeated", key)));
                }
                seen.push((key, line));
                section = match key {
                    "MARKED" => Section::Marked,
                    "ROSE" => Section::Rose,
                    "GRAPH" => Section::Graph,
                    _ => Section::Meta,
                };
                continue;
            }
            "CELL" if matches!(section, Section::Graph | Section::Cell(_)) => {
                let id = f.int("cell id")?;
                let displacement = f.point()?;
                f.done()?;
                insert(&mut cells, id, RawCell { line, displacement, graph: RawGraph::default() }, line, "cell")?;
                section = Section::Cell(id);
                continue;
            }
            _ => {}
        }
        match (section, key) {
            (Section::None, _) => return Err(err(line, format!("'{}' outside any section", key))),
            (Section::Marked, "POINT") => {
                let id = f.int("point id")?;
                let p = f.point()?;
                let name = f.rest().join(" ");
                insert(&mut marked, id, (p, (!name.is_empty()).then_some(name)), line, "marked point")?;
            }
            (Section::Rose, "CENTER") => {
                if center.is_some() {
                    return Err(err(line, "second CENTER"));
                }
                center = Some(f.point()?);
                f.done()?;
            }
            (Section::Rose, "PETAL") => {
                let j = f.int("petal label")?;
                let a = f.int("marked id")?;
                let path = f.polyline()?;
                insert(&mut petals, j, (line, a, path), line, "petal")?;
            }
            (Section::Graph | Section::Cell(_), "VERTEX" | "EDGE" | "ROT" | "ROT0") => {
                let in_cell = matches!(section, Section::Cell(_));
                let g = match section {
                    Section::Cell(c) => &mut cells.get_mut(&c).expect("current cell").graph,
                    _ => &mut core,
                };
                match key {
                    "VERTEX" => {
                        let id = f.int("vertex id")?;
                        let p = f.point()?;
                        f.done()?;
                        insert(&mut g.vertices, id, p, line, "vertex")?;
                    }
                    "EDGE" => {
                        let id = f.int("edge id")?;
                        let tail = parse_end(line, f.word("tail")?, in_cell)?;
                        let head = parse_end(line, f.word("head")?, in_cell)?;
                        let label = parse_label(line, f.word("petal label")?)?;
                        let path = f.polyline()?;
                        insert(&mut g.edges, id, RawEdge { line, tail, head, label, path }, line, "edge")?;
                    }
                    _ => {
                        if key == "ROT0" && !in_cell {
                            return Err(err(line, "ROT0 outside a CELL"));
                        }
                        let v = f.int("vertex id")?;
                        let toks = f.rest().into_iter().map(|w| parse_tok(line, w)).collect::<Result<Vec<_>, _>>()?;
                        let m = if key == "ROT0" { &mut g.rot0 } else { &mut g.rot };
                        insert(m, v, (line, toks), line, "rotation")?;
                    }
                }
            }
            (Section::Graph, "BASEPOINT") => {
                if basepoint.is_some() {
                    return Err(err(line, "second BASEPOINT"));
                }
                basepoint = Some((line, f.int("vertex id")?));
                f.done()?;
            }
            (Section::Meta, "PARABOLIC") => {
                let kind = f.word("parabolicity")?;
                parabolic = Some(match kind {
                    "finite" => Parabolicity::Finite,
                    "unknown" => Parabolicity::Unknown,
                    "declared" => Parabolicity::Declared(f.rest().join(" ")),
                    other => return Err(err(line, format!("unknown parabolicity '{}'", other))),
                });
            }
            (_, k) if !RECORDS.contains(&k) && k.chars().all(|c| c.is_ascii_uppercase()) => {
                return Err(err(line, format!("unknown section {}", k)));
            }
            (_, k) => return Err(err(line, format!("'{}' not allowed here", k))),
        }
    }

    let header = |name: &str| seen.iter().find(|s| s.0 == name).map(|s| s.1);
    for s in ["MARKED", "ROSE", "GRAPH"] {
        if header(s).is_none() {
            return Err(err(text.lines().count().max(1), format!("missing section {}", s)));
        }
    }
    let (rose_line, graph_line) = (header("ROSE").unwrap_or(1), header("GRAPH").unwrap_or(1));

    let mindex = dense(&marked);
    let points: Vec<Point> = marked.values().map(|m| m.0).collect();
    let names: Vec<String> =
        marked.values().enumerate().map(|(i, m)| m.1.clone().unwrap_or_else(|| format!("a{}", i + 1))).collect();
    let center = center.ok_or_else(|| err(rose_line, "ROSE has no CENTER"))?;
    let pindex = dense(&petals);
    let mut rose = Rose { center, petals: Vec::new() };
    for (line, a, path) in petals.values() {
        let marked = *mindex.get(a).ok_or_else(|| err(*line, format!("petal refers to unknown marked point {}", a)))?;
        rose.petals.push(Petal { marked, path: path.clone() });
    }
    let label = |e: &RawEdge| -> Result<Option<usize>, FormatError> {
        e.label
            .map(|l| pindex.get(&l).copied().ok_or_else(|| err(e.line, format!("unknown petal label {}", l))))
            .transpose()
    };

    let vindex = dense(&core.vertices);
    let eindex = dense(&core.edges);
    let cindex = dense(&cells);
    let cell_vindex: Vec<HashMap<i64, usize>> = cells.values().map(|c| dense(&c.graph.vertices)).collect();
    let cell_eindex: Vec<HashMap<i64, usize>> = cells.values().map(|c| dense(&c.graph.edges)).collect();

    let mut core_edges = Vec::new();
    for e in core.edges.values() {
        let end = |x: End| -> Result<CoreEnd, FormatError> {
            match x {
                End::Plain(v) => vindex.get(&v).map(|&v| CoreEnd::Core(v)).ok_or_else(|| err(e.line, format!("edge refers to unknown vertex {}", v))),
                End::Cell(c, v) => {
                    let ci = *cindex.get(&c).ok_or_else(|| err(e.line, format!("edge refers to unknown cell {}", c)))?;
                    let vi = *cell_vindex[ci].get(&v).ok_or_else(|| err(e.line, format!("edge refers to unknown vertex {}.{}", c, v)))?;
                    Ok(CoreEnd::Cell { cell: ci, v: vi })
                }
                End::Prev(_) => unreachable!("core ends never parse as previous-rep"),
            }
        };
        core_edges.push(CoreEdge { tail: end(e.tail)?, head: end(e.head)?, label: label(e)?, path: e.path.clone() });
    }

    let tokens = |line: usize, toks: &[Tok], cell: Option<usize>| -> Result<Vec<RotToken>, FormatError> {
        toks.iter()
            .map(|t| {
                let find = |m: &HashMap<i64, usize>, e: i64| m.get(&e).copied().ok_or_else(|| err(line, format!("rotation names unknown edge {}", e)));
                Ok(match (*t, cell) {
                    (Tok::Core(e, f), _) => RotToken::Core(find(&eindex, e)?, f),
                    (Tok::Local(e, f), Some(c)) => RotToken::Local(find(&cell_eindex[c], e)?, f),
                    (Tok::Next(e, f), Some(c)) => RotToken::Next(find(&cell_eindex[c], e)?, f),
                    _ => return Err(err(line, "cell rotation token in a core rotation")),
                })
            })
            .collect()
    };
    let rotations = |m: &BTreeMap<i64, (usize, Vec<Tok>)>, vi: &HashMap<i64, usize>, cell: Option<usize>, what: &str| -> Result<Vec<Vec<RotToken>>, FormatError> {
        let mut out = vec![None; vi.len()];
        for (v, (line, toks)) in m {
            let i = *vi.get(v).ok_or_else(|| err(*line, format!("rotation at unknown vertex {}", v)))?;
            out[i] = Some(tokens(*line, toks, cell)?);
        }
        out.into_iter()
            .enumerate()
            .map(|(i, r)| r.ok_or_else(|| err(0, format!("{} vertex {} has no rotation", what, i))))
            .collect()
    };
    let core_rot = rotations(&core.rot, &vindex, None, "core").map_err(|e| relocate(e, graph_line))?;

    let mut gcells = Vec::new();
    for (ci, c) in cells.values().enumerate() {
        let mut edges = Vec::new();
        for e in c.graph.edges.values() {
            let end = |x: End| -> Result<CellEnd, FormatError> {
                let (v, prev) = match x {
                    End::Plain(v) => (v, false),
                    End::Prev(v) => (v, true),
                    End::Cell(..) => unreachable!("cell ends never parse as cell.v"),
                };
                let v = *cell_vindex[ci].get(&v).ok_or_else(|| err(e.line, format!("edge refers to unknown vertex {}", v)))?;
                Ok(if prev { CellEnd::Prev(v) } else { CellEnd::Local(v) })
            };
            edges.push(CellEdge { tail: end(e.tail)?, head: end(e.head)?, label: label(e)?, path: e.path.clone() });
        }
        let what = format!("cell {}", ci);
        let rot0 = rotations(&c.graph.rot0, &cell_vindex[ci], Some(ci), &what).map_err(|e| relocate(e, c.line))?;
        let rot = rotations(&c.graph.rot, &cell_vindex[ci], Some(ci), &what).map_err(|e| relocate(e, c.line))?;
        gcells.push(Cell { displacement: c.displacement, vertices: c.graph.vertices.values().copied().collect(), edges, rot0, rot });
    }

    let basepoint = match basepoint {
        Some((line, v)) => *vindex.get(&v).ok_or_else(|| err(line, format!("unknown basepoint {}", v)))?,
        None => 0,
    };
    let gamma = GraphGenerator { core_vertices: core.vertices.values().copied().collect(), core_edges, core_rot, cells: gcells, basepoint };
    gamma.check()?;
    let parabolic = parabolic.unwrap_or(if gamma.is_finite() { Parabolicity::Finite } else { Parabolicity::Unknown });
    Ok(Quadruple { marked: MarkedSet::named(points, names), rose, gamma, parabolic })
}

/// Errors without a line of their own are reported at the owning block.
fn relocate(e: FormatError, line: usize) -> FormatError {
    match e {
        FormatError::Syntax { line: 0, msg } => FormatError::Syntax { line, msg },
        e => e,
    }
}

pub fn read_quad(path: impl AsRef<Path>) -> Result<Quadruple, FormatError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| FormatError::Io(format!("{}: {}", path.display(), e)))?;
    parse_quad(&text)
}

pub fn write_quad(path: impl AsRef<Path>, q: &Quadruple) -> Result<(), FormatError> {
    let path = path.as_ref();
    std::fs::write(path, serialize_quad(q)).map_err(|e| FormatError::Io(format!("{}: {}", path.display(), e)))
}

fn push_points(s: &mut String, pts: &[Point]) {
    for p in pts {
        let _ = write!(s, " {} {}", p.x, p.y);
    }
}

fn label_str(l: Option<usize>) -> String {
    l.map_or_else(|| "-".to_string(), |j| (j + 1).to_string())
}

fn tok_str(t: &RotToken) -> String {
    let (pre, e, f) = match *t {
        RotToken::Core(e, f) => ("", e, f),
        RotToken::Local(e, f) => ("L", e, f),
        RotToken::Next(e, f) => ("N", e, f),
    };
    format!("{}{}{}", pre, e, if f { '+' } else { '-' })
}

fn push_rot(s: &mut String, key: &str, rot: &[Vec<RotToken>]) {
    for (v, r) in rot.iter().enumerate() {
        let _ = write!(s, "{} {}", key, v);
        for t in r {
            let _ = write!(s, " {}", tok_str(t));
        }
        s.push('\n');
    }
}

/// Canonical text: fixed section order, dense ids, shortest round-trip floats.
pub fn serialize_quad(q: &Quadruple) -> String {
    let mut s = String::from("MARKED\n");
    for (i, p) in q.marked.points.iter().enumerate() {
        let _ = write!(s, "POINT {} {} {}", i, p.x, p.y);
        match q.marked.names.get(i) {
            Some(n) if !n.trim().is_empty() => {
                let _ = writeln!(s, " {}", n.split_whitespace().collect::<Vec<_>>().join(" "));
            }
            _ => s.push('\n'),
        }
    }
    let _ = writeln!(s, "ROSE\nCENTER {} {}", q.rose.center.x, q.rose.center.y);
    for (j, p) in q.rose.petals.iter().enumerate() {
        let _ = write!(s, "PETAL {} {}", j + 1, p.marked);
        push_points(&mut s, &p.path);
        s.push('\n');
    }
    let g = &q.gamma;
    s.push_str("GRAPH\n");
    let _ = writeln!(s, "BASEPOINT {}", g.basepoint);
    for (i, p) in g.core_vertices.iter().enumerate() {
        let _ = writeln!(s, "VERTEX {} {} {}", i, p.x, p.y);
    }
    let core_end = |e: CoreEnd| match e {
        CoreEnd::Core(v) => v.to_string(),
        CoreEnd::Cell { cell, v } => format!("{}.{}", cell, v),
    };
    for (i, e) in g.core_edges.iter().enumerate() {
        let _ = write!(s, "EDGE {} {} {} {}", i, core_end(e.tail), core_end(e.head), label_str(e.label));
        push_points(&mut s, &e.path);
        s.push('\n');
    }
    push_rot(&mut s, "ROT", &g.core_rot);
    let cell_end = |e: CellEnd| match e {
        CellEnd::Local(v) => v.to_string(),
        CellEnd::Prev(v) => format!("^{}", v),
    };
    for (c, cell) in g.cells.iter().enumerate() {
        let _ = writeln!(s, "CELL {} {} {}", c, cell.displacement.x, cell.displacement.y);
        for (i, p) in cell.vertices.iter().enumerate() {
            let _ = writeln!(s, "VERTEX {} {} {}", i, p.x, p.y);
        }
        for (i, e) in cell.edges.iter().enumerate() {
            let _ = write!(s, "EDGE {} {} {} {}", i, cell_end(e.tail), cell_end(e.head), label_str(e.label));
            push_points(&mut s, &e.path);
            s.push('\n');
        }
        push_rot(&mut s, "ROT0", &cell.rot0);
        push_rot(&mut s, "ROT", &cell.rot);
    }
    s.push_str("META\n");
    match &q.parabolic {
        Parabolicity::Finite => s.push_str("PARABOLIC finite\n"),
        Parabolicity::Unknown => s.push_str("PARABOLIC unknown\n"),
        Parabolicity::Declared(note) => {
            let _ = writeln!(s, "PARABOLIC declared {}", note.split_whitespace().collect::<Vec<_>>().join(" "));
        }
    }
    s
}
