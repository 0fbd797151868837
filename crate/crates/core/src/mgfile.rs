//! The `.mg` text format.
//!
//! ```text
//! # C'_3 with a pendant vertex
//! n 4
//! 0 -> 1
//! 1 -- 2
//! 0 -- 2
//! 0 -- 3
//! ```
//!
//! `u -- v` is an undirected edge, `u -> v` an arc. Indices are 0-based and
//! `#` starts a comment. [`to_mg`] writes edges in the graph's canonical
//! order, so `to_mg(&parse_mg(&to_mg(g))?) == to_mg(g)` byte for byte.

use crate::error::{Error, Result};
use crate::graph::{EdgeKind, MixedGraph};

pub fn parse_mg(text: &str) -> Result<MixedGraph> {
    let mut order: Option<usize> = None;
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: &str| Error::Parse { line: line_no, msg: msg.to_string() };
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens.as_slice() {
            ["n", count] => {
                if order.is_some() {
                    return Err(err("order given twice"));
                }
                order = Some(count.parse().map_err(|_| err("bad vertex count"))?);
            }
            [u, op, v] => {
                if order.is_none() {
                    return Err(err("edge before `n <order>` line"));
                }
                let kind = match *op {
                    "--" => EdgeKind::Undirected,
                    "->" => EdgeKind::Arc,
                    _ => return Err(err("expected `--` or `->`")),
                };
                let u: usize = u.parse().map_err(|_| err("bad vertex index"))?;
                let v: usize = v.parse().map_err(|_| err("bad vertex index"))?;
                edges.push((u, v, kind));
            }
            _ => return Err(err("unrecognised line")),
        }
    }
    let order = order.ok_or(Error::Parse { line: 0, msg: "missing `n <order>` line".into() })?;
    MixedGraph::build(order, &edges)
}

pub fn to_mg(g: &MixedGraph) -> String {
    let mut out = format!("n {}\n", g.order());
    for e in g.edges() {
        let op = match e.kind {
            EdgeKind::Undirected => "--",
            EdgeKind::Arc => "->",
        };
        out.push_str(&format!("{} {} {}\n", e.u, op, e.v));
    }
    out
}
