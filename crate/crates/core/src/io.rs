//! Text exchange formats.
//!
//! Step graphon (`.sg`):
//!
//! ```text
//! blocks 2
//! measures 1/2 1/2
//! 0/1 1/1
//! 1/1 0/1
//! ```
//!
//! Graph (`.graph`): `vertices n` followed by one `u v` edge per line,
//! 0-indexed. Blank lines and lines starting with `#` are ignored in both.

use crate::error::{Error, Result};
use crate::graph::FiniteGraph;
use crate::graphon::StepGraphon;
use crate::rational::{fmt_fraction, parse_rational, Rational};

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Content lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| {
            let t = l.trim();
            !t.is_empty() && !t.starts_with('#')
        })
}

/// Whitespace-separated tokens with 1-based column numbers.
fn tokens(line: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((s + 1, &line[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out.into_iter()
}

fn keyword_line<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
    keyword: &str,
    last_line: usize,
) -> Result<(usize, Vec<(usize, &'a str)>)> {
    let (no, line) = lines
        .next()
        .ok_or_else(|| parse_err(last_line + 1, 1, format!("expected `{keyword}` line")))?;
    let mut toks: Vec<_> = tokens(line).collect();
    match toks.first() {
        Some(&(_, k)) if k == keyword => {}
        Some(&(col, k)) => return Err(parse_err(no, col, format!("expected `{keyword}`, found `{k}`"))),
        None => return Err(parse_err(no, 1, format!("expected `{keyword}`"))),
    }
    toks.remove(0);
    Ok((no, toks))
}

fn parse_count(no: usize, toks: &[(usize, &str)], what: &str) -> Result<usize> {
    match toks {
        [(col, t)] => t
            .parse::<usize>()
            .map_err(|_| parse_err(no, *col, format!("invalid {what} `{t}`"))),
        [] => Err(parse_err(no, 1, format!("missing {what}"))),
        [_, (col, t), ..] => Err(parse_err(no, *col, format!("unexpected token `{t}`"))),
    }
}

fn parse_row(no: usize, toks: &[(usize, &str)], m: usize) -> Result<Vec<Rational>> {
    if toks.len() != m {
        let col = toks.get(m).map(|t| t.0).unwrap_or(1);
        return Err(parse_err(no, col, format!("expected {m} values, found {}", toks.len())));
    }
    toks.iter()
        .map(|&(col, t)| {
            parse_rational(t).ok_or_else(|| parse_err(no, col, format!("invalid rational `{t}`")))
        })
        .collect()
}

pub fn parse_graphon(text: &str) -> Result<StepGraphon> {
    let mut lines = content_lines(text);
    let (no, toks) = keyword_line(&mut lines, "blocks", 0)?;
    let m = parse_count(no, &toks, "block count")?;
    if m == 0 {
        return Err(parse_err(no, toks[0].0, "block count must be positive"));
    }
    let (no, toks) = keyword_line(&mut lines, "measures", no)?;
    let measures = parse_row(no, &toks, m)?;
    let mut values = Vec::with_capacity(m);
    let mut last = no;
    for r in 0..m {
        let (no, line) = lines
            .next()
            .ok_or_else(|| parse_err(last + 1, 1, format!("missing value row {r}")))?;
        let toks: Vec<_> = tokens(line).collect();
        values.push(parse_row(no, &toks, m)?);
        last = no;
    }
    if let Some((no, _)) = lines.next() {
        return Err(parse_err(no, 1, "trailing content after value matrix"));
    }
    StepGraphon::new(measures, values)
}

pub fn write_graphon(w: &StepGraphon) -> String {
    let mut out = format!("blocks {}\nmeasures", w.blocks());
    for m in w.measures() {
        out.push(' ');
        out.push_str(&fmt_fraction(m));
    }
    out.push('\n');
    for row in w.values() {
        let cells: Vec<String> = row.iter().map(fmt_fraction).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

pub fn parse_graph(text: &str) -> Result<FiniteGraph> {
    let mut lines = content_lines(text);
    let (no, toks) = keyword_line(&mut lines, "vertices", 0)?;
    let n = parse_count(no, &toks, "vertex count")?;
    let mut edges = Vec::new();
    for (no, line) in lines {
        let toks: Vec<_> = tokens(line).collect();
        if toks.len() != 2 {
            let col = toks.get(2).map(|t| t.0).unwrap_or(1);
            return Err(parse_err(no, col, "expected an edge `u v`"));
        }
        let mut ends = [0usize; 2];
        for (k, &(col, t)) in toks.iter().enumerate() {
            let v: usize = t
                .parse()
                .map_err(|_| parse_err(no, col, format!("invalid vertex `{t}`")))?;
            if v >= n {
                return Err(parse_err(no, col, format!("vertex {v} out of range")));
            }
            ends[k] = v;
        }
        if ends[0] == ends[1] {
            return Err(parse_err(no, toks[1].0, "loops are not allowed"));
        }
        edges.push((ends[0], ends[1]));
    }
    FiniteGraph::new(n, edges)
}

pub fn write_graph(g: &FiniteGraph) -> String {
    let mut out = format!("vertices {}\n", g.vertex_count());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}
