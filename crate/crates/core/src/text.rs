//! Plain-text formats for embedded graphs, multigraphs, flows and colorings.
//!
//! Every format is line based; `#` starts a comment and blank lines are
//! ignored. Ids must be dense, starting at 0.
//!
//! ```text
//! graph theta
//! vertex 0: 1 3 5
//! vertex 1: 0 2 4
//! edge 0: 0 1
//! edge 1: 2 3
//! edge 2: 4 5
//! ```
//!
//! Dart labels in a graph file are arbitrary integers; the first label of an
//! edge line is its head end. Writers use the canonical labels `2e` (head)
//! and `2e+1` (tail) and start each rotation at its smallest dart.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::coloring::{Color, ColoringError, ColoringKind, EdgeColoring};
use crate::dihedral::{AlgebraError, DihedralElement, GroupContext};
use crate::flow::{FlowAssignment, FlowError};
use crate::graph::{EmbeddedGraph, GraphError, Multigraph};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing header line `{0} <name> ...`")]
    MissingHeader(&'static str),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Flow(#[from] FlowError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
}

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        message: message.into(),
    }
}

/// Non-empty lines with comments removed, numbered from 1.
fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

fn number<T: std::str::FromStr>(line: usize, s: &str, what: &str) -> Result<T, ParseError> {
    s.parse()
        .map_err(|_| syntax(line, format!("expected {what}, found {s:?}")))
}

/// Split `"<keyword> <id>: rest"` into the id and the rest.
fn keyed<'a>(line: usize, l: &'a str, keyword: &str) -> Result<(usize, &'a str), ParseError> {
    let (head, rest) = l
        .split_once(':')
        .ok_or_else(|| syntax(line, format!("expected `{keyword} <id>: ...`")))?;
    let id = head
        .strip_prefix(keyword)
        .ok_or_else(|| syntax(line, format!("expected `{keyword}`")))?
        .trim();
    Ok((number(line, id, "an id")?, rest))
}

/// Header `<keyword> <name> [key=value ...]`, returning the name and the pairs.
fn header<'a>(
    all: &mut impl Iterator<Item = (usize, &'a str)>,
    keyword: &'static str,
) -> Result<(usize, String, BTreeMap<&'a str, &'a str>), ParseError> {
    let (line, l) = all.next().ok_or(ParseError::MissingHeader(keyword))?;
    let mut words = l.split_whitespace();
    if words.next() != Some(keyword) {
        return Err(syntax(line, format!("expected `{keyword} <name>`")));
    }
    let name = words
        .next()
        .ok_or_else(|| syntax(line, "missing name"))?
        .to_string();
    let mut pairs = BTreeMap::new();
    for w in words {
        let (k, v) = w
            .split_once('=')
            .ok_or_else(|| syntax(line, format!("expected key=value, found {w:?}")))?;
        pairs.insert(k, v);
    }
    Ok((line, name, pairs))
}

/// Check that `ids` are exactly `0..ids.len()` and return them in order.
fn dense<T>(mut items: Vec<(usize, usize, T)>, what: &str) -> Result<Vec<(usize, T)>, ParseError> {
    items.sort_by_key(|&(id, line, _)| (id, line));
    let mut out = Vec::with_capacity(items.len());
    for (i, (id, line, item)) in items.into_iter().enumerate() {
        if id != i {
            return Err(syntax(
                line,
                if id < i {
                    format!("{what} {id} listed twice")
                } else {
                    format!("{what} ids skip {i}")
                },
            ));
        }
        out.push((line, item));
    }
    Ok(out)
}

pub fn parse_graph(text: &str) -> Result<EmbeddedGraph, ParseError> {
    let mut all = lines(text);
    let (_, name, _) = header(&mut all, "graph")?;
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    for (line, l) in all {
        if l.starts_with("vertex") {
            let (id, rest) = keyed(line, l, "vertex")?;
            let labels = rest
                .split_whitespace()
                .map(|w| number::<i64>(line, w, "a dart label"))
                .collect::<Result<Vec<_>, _>>()?;
            vertices.push((id, line, labels));
        } else if l.starts_with("edge") {
            let (id, rest) = keyed(line, l, "edge")?;
            let labels = rest
                .split_whitespace()
                .map(|w| number::<i64>(line, w, "a dart label"))
                .collect::<Result<Vec<_>, _>>()?;
            let [head, tail] = labels[..] else {
                return Err(syntax(line, "an edge has exactly two darts"));
            };
            edges.push((id, line, (head, tail)));
        } else {
            return Err(syntax(line, format!("unexpected line {l:?}")));
        }
    }
    let vertices = dense(vertices, "vertex")?;
    let edges = dense(edges, "edge")?;
    let mut dart_of = BTreeMap::new();
    for (e, &(line, (head, tail))) in edges.iter().enumerate() {
        for (label, dart) in [(head, 2 * e), (tail, 2 * e + 1)] {
            if dart_of.insert(label, (dart, false)).is_some() {
                return Err(syntax(
                    line,
                    format!("dart {label} belongs to two edge ends"),
                ));
            }
        }
    }
    let mut rotations = Vec::with_capacity(vertices.len());
    for (line, labels) in vertices {
        let mut rot = Vec::with_capacity(labels.len());
        for label in labels {
            let slot = dart_of
                .get_mut(&label)
                .ok_or_else(|| syntax(line, format!("dart {label} is not on any edge")))?;
            if std::mem::replace(&mut slot.1, true) {
                return Err(syntax(line, format!("dart {label} placed twice")));
            }
            rot.push(slot.0);
        }
        rotations.push(rot);
    }
    if let Some((label, _)) = dart_of.iter().find(|(_, &(_, placed))| !placed) {
        return Err(syntax(0, format!("dart {label} is at no vertex")));
    }
    Ok(EmbeddedGraph::from_rotations(name, rotations)?)
}

pub fn write_graph(g: &EmbeddedGraph) -> String {
    let mut out = format!("graph {}\n", g.name());
    for (v, rot) in g.rotations().iter().enumerate() {
        let darts: Vec<String> = rot.iter().map(ToString::to_string).collect();
        writeln!(out, "vertex {v}: {}", darts.join(" ")).unwrap();
    }
    for e in 0..g.edge_count() {
        writeln!(out, "edge {e}: {} {}", 2 * e, 2 * e + 1).unwrap();
    }
    out
}

/// `multigraph <name>`, `vertices <n>`, then `edge <eid>: <tail> <head>`.
pub fn parse_multigraph(text: &str) -> Result<(String, Multigraph), ParseError> {
    let mut all = lines(text);
    let (line, name, _) = header(&mut all, "multigraph")?;
    let mut count = None;
    let mut edges = Vec::new();
    for (line, l) in all {
        if let Some(n) = l.strip_prefix("vertices") {
            count = Some(number::<usize>(line, n.trim(), "a vertex count")?);
        } else if l.starts_with("edge") {
            let (id, rest) = keyed(line, l, "edge")?;
            let ends: Vec<&str> = rest.split_whitespace().collect();
            let [t, h] = ends[..] else {
                return Err(syntax(line, "expected `edge <eid>: <tail> <head>`"));
            };
            edges.push((
                id,
                line,
                (number(line, t, "a vertex")?, number(line, h, "a vertex")?),
            ));
        } else {
            return Err(syntax(line, format!("unexpected line {l:?}")));
        }
    }
    let count = count.ok_or_else(|| syntax(line, "missing `vertices <n>`"))?;
    let edges = dense(edges, "edge")?.into_iter().map(|(_, e)| e).collect();
    Ok((name, Multigraph::new(count, edges)?))
}

pub fn write_multigraph(name: &str, g: &Multigraph) -> String {
    let mut out = format!("multigraph {name}\nvertices {}\n", g.vertex_count);
    for (e, (t, h)) in g.edges.iter().enumerate() {
        writeln!(out, "edge {e}: {t} {h}").unwrap();
    }
    out
}

/// Either format: an embedded graph yields its underlying multigraph.
pub fn parse_any_multigraph(text: &str) -> Result<(String, Multigraph), ParseError> {
    match lines(text).next() {
        Some((_, l)) if l.starts_with("graph") => {
            let g = parse_graph(text)?;
            Ok((g.name().to_string(), g.underlying()))
        }
        _ => parse_multigraph(text),
    }
}

/// `flow <name> ctx=<ctx>` then `<eid> <element>` in the reference orientation.
pub fn parse_flow(text: &str) -> Result<(String, FlowAssignment), ParseError> {
    let mut all = lines(text);
    let (line, name, pairs) = header(&mut all, "flow")?;
    let ctx: GroupContext = pairs
        .get("ctx")
        .ok_or_else(|| syntax(line, "missing ctx=<context>"))?
        .parse()?;
    let mut values = Vec::new();
    for (line, l) in all {
        let words: Vec<&str> = l.split_whitespace().collect();
        let [e, x] = words[..] else {
            return Err(syntax(line, "expected `<eid> <element>`"));
        };
        let x: DihedralElement = x.parse()?;
        if !ctx.contains(x) {
            return Err(syntax(line, format!("{x} is not an element of {ctx}")));
        }
        values.push((number(line, e, "an edge id")?, line, x));
    }
    let values = dense(values, "edge")?.into_iter().map(|(_, x)| x).collect();
    Ok((name, FlowAssignment::new(ctx, values)?))
}

pub fn write_flow(name: &str, f: &FlowAssignment) -> String {
    let f = f.normalized();
    let mut out = format!("flow {name} ctx={}\n", f.ctx());
    for (e, x) in f.values().iter().enumerate() {
        writeln!(out, "{e} {x}").unwrap();
    }
    out
}

/// `coloring <name> kind=<proper3|special4>` then `<eid> <color>`.
pub fn parse_coloring(text: &str) -> Result<(String, EdgeColoring), ParseError> {
    let mut all = lines(text);
    let (line, name, pairs) = header(&mut all, "coloring")?;
    let kind: ColoringKind = pairs
        .get("kind")
        .ok_or_else(|| syntax(line, "missing kind=<proper3|special4>"))?
        .parse()?;
    let mut colors = Vec::new();
    for (line, l) in all {
        let words: Vec<&str> = l.split_whitespace().collect();
        let [e, c] = words[..] else {
            return Err(syntax(line, "expected `<eid> <color>`"));
        };
        colors.push((
            number(line, e, "an edge id")?,
            line,
            number::<Color>(line, c, "a color")?,
        ));
    }
    let colors = dense(colors, "edge")?.into_iter().map(|(_, c)| c).collect();
    Ok((name, EdgeColoring::new(kind, colors)?))
}

pub fn write_coloring(name: &str, c: &EdgeColoring) -> String {
    let mut out = format!("coloring {name} kind={}\n", c.kind);
    for (e, k) in c.colors.iter().enumerate() {
        writeln!(out, "{e} {k}").unwrap();
    }
    out
}
