//! Line-oriented text formats.
//!
//! `happygraph v1`:
//!
//! ```text
//! n m k
//! w_1 ... w_n          (integers, decimals or p/q)
//! c_1 ... c_n          (0 = uncolored, 1..k = label)
//! u v                  (m lines, 1-based endpoints)
//! ```
//!
//! `happyhyper v1`:
//!
//! ```text
//! n m k
//! t_1 ... t_k          (1-based terminals)
//! weight size v_1 ... v_size    (m lines)
//! ```
//!
//! Everything after a `#` is ignored. The writers put a `# happygraph v1`
//! (or `# happyhyper v1`) comment on the first line.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::generators::Hypergraph;
use crate::instance::{validate_instance, Instance, RawInstance};
use crate::rational::{format_rational, parse_rational, Rational};

pub const GRAPH_TAG: &str = "happygraph v1";
pub const HYPER_TAG: &str = "happyhyper v1";

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
    last: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Self { inner: text.lines().enumerate(), last: 0 }
    }

    fn next_tokens(&mut self, what: &str) -> Result<(usize, Vec<&'a str>)> {
        for (idx, line) in self.inner.by_ref() {
            let content = line.split('#').next().unwrap_or("").trim();
            self.last = idx + 1;
            if !content.is_empty() {
                return Ok((idx + 1, content.split_whitespace().collect()));
            }
        }
        Err(Error::Parse { line: self.last + 1, msg: format!("unexpected end of input, expected {what}") })
    }

    fn finish(&mut self) -> Result<()> {
        for (idx, line) in self.inner.by_ref() {
            if !line.split('#').next().unwrap_or("").trim().is_empty() {
                return Err(Error::Parse { line: idx + 1, msg: "trailing content".into() });
            }
        }
        Ok(())
    }
}

fn parse_usize(token: &str, line: usize, what: &str) -> Result<usize> {
    token
        .parse()
        .map_err(|_| Error::Parse { line, msg: format!("expected {what}, found '{token}'") })
}

fn expect_len(tokens: &[&str], len: usize, line: usize, what: &str) -> Result<()> {
    if tokens.len() != len {
        return Err(Error::Parse {
            line,
            msg: format!("expected {len} {what}, found {}", tokens.len()),
        });
    }
    Ok(())
}

fn vertex_index(token: &str, n: usize, line: usize) -> Result<usize> {
    let v = parse_usize(token, line, "vertex index")?;
    if v == 0 || v > n {
        return Err(Error::Parse { line, msg: format!("vertex {v} outside 1..{n}") });
    }
    Ok(v - 1)
}

fn parse_weight(token: &str, line: usize) -> Result<Rational> {
    parse_rational(token)
        .ok_or_else(|| Error::Parse { line, msg: format!("bad rational '{token}'") })
}

/// Parses a `happygraph v1` document and validates the instance.
pub fn parse_instance(text: &str) -> Result<Instance> {
    let mut lines = Lines::new(text);
    let (line, header) = lines.next_tokens("header 'n m k'")?;
    expect_len(&header, 3, line, "header fields")?;
    let n = parse_usize(header[0], line, "vertex count")?;
    let m = parse_usize(header[1], line, "edge count")?;
    let k = parse_usize(header[2], line, "label count")?;

    let (line, tokens) = lines.next_tokens("weight line")?;
    expect_len(&tokens, n, line, "weights")?;
    let weights = tokens.iter().map(|t| parse_weight(t, line)).collect::<Result<Vec<_>>>()?;

    let (line, tokens) = lines.next_tokens("pre-color line")?;
    expect_len(&tokens, n, line, "pre-color codes")?;
    let mut precolor = Vec::with_capacity(n);
    for token in tokens {
        let code = parse_usize(token, line, "pre-color code")?;
        if code > k {
            return Err(Error::Parse { line, msg: format!("pre-color {code} exceeds k = {k}") });
        }
        precolor.push(code.checked_sub(1));
    }

    let mut edges = Vec::with_capacity(m);
    for _ in 0..m {
        let (line, tokens) = lines.next_tokens("edge line")?;
        expect_len(&tokens, 2, line, "endpoints")?;
        edges.push((vertex_index(tokens[0], n, line)?, vertex_index(tokens[1], n, line)?));
    }
    lines.finish()?;
    validate_instance(RawInstance { num_vertices: n, edges, weights, num_labels: k, precolor })
}

pub fn write_instance(inst: &Instance) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# {GRAPH_TAG}");
    let _ = writeln!(out, "{} {} {}", inst.num_vertices(), inst.num_edges(), inst.num_labels());
    let weights: Vec<String> = inst.weights().iter().map(format_rational).collect();
    let _ = writeln!(out, "{}", weights.join(" "));
    let codes: Vec<String> =
        inst.precolor().iter().map(|c| c.map_or(0, |c| c + 1).to_string()).collect();
    let _ = writeln!(out, "{}", codes.join(" "));
    for &(u, v) in inst.edges() {
        let _ = writeln!(out, "{} {}", u + 1, v + 1);
    }
    out
}

/// Parses a `happyhyper v1` document.
pub fn parse_hypergraph(text: &str) -> Result<Hypergraph> {
    let mut lines = Lines::new(text);
    let (line, header) = lines.next_tokens("header 'n m k'")?;
    expect_len(&header, 3, line, "header fields")?;
    let n = parse_usize(header[0], line, "vertex count")?;
    let m = parse_usize(header[1], line, "hyperedge count")?;
    let k = parse_usize(header[2], line, "terminal count")?;

    let (line, tokens) = lines.next_tokens("terminal line")?;
    expect_len(&tokens, k, line, "terminals")?;
    let terminals =
        tokens.iter().map(|t| vertex_index(t, n, line)).collect::<Result<Vec<_>>>()?;

    let mut hyperedges = Vec::with_capacity(m);
    for _ in 0..m {
        let (line, tokens) = lines.next_tokens("hyperedge line")?;
        if tokens.len() < 2 {
            return Err(Error::Parse { line, msg: "hyperedge needs 'weight size members…'".into() });
        }
        let weight = parse_weight(tokens[0], line)?;
        let size = parse_usize(tokens[1], line, "hyperedge size")?;
        expect_len(&tokens[2..], size, line, "hyperedge members")?;
        let members =
            tokens[2..].iter().map(|t| vertex_index(t, n, line)).collect::<Result<Vec<_>>>()?;
        hyperedges.push((members, weight));
    }
    lines.finish()?;
    Hypergraph::new(n, hyperedges, terminals)
}

pub fn write_hypergraph(h: &Hypergraph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# {HYPER_TAG}");
    let _ = writeln!(out, "{} {} {}", h.num_vertices(), h.num_hyperedges(), h.terminals().len());
    let terminals: Vec<String> = h.terminals().iter().map(|t| (t + 1).to_string()).collect();
    let _ = writeln!(out, "{}", terminals.join(" "));
    for edge in h.hyperedges() {
        let mut line = format!("{} {}", format_rational(&edge.weight), edge.members.len());
        for v in &edge.members {
            let _ = write!(line, " {}", v + 1);
        }
        let _ = writeln!(out, "{line}");
    }
    out
}
