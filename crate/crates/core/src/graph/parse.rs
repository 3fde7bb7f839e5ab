//! DIMACS edge-list reader and the companion weight-file reader.
//!
//! Instances use 1-indexed vertices on disk; everything returned here is
//! 0-indexed.

use std::collections::BTreeSet;

use super::{GraphError, RawGraph, Weight};

/// Parses a DIMACS `.col` edge list.
///
/// Accepts `c` comment lines, a single `p edge <n> <m>` (or `p col`) header and
/// `e <u> <v>` lines. Duplicate edges and both orientations collapse into one
/// undirected edge. The `m` field of the header is informational only.
pub fn parse_col(text: &str) -> Result<RawGraph, GraphError> {
    let mut n: Option<usize> = None;
    let mut edges = BTreeSet::new();

    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let mut tokens = line.split_whitespace();
        let Some(tag) = tokens.next() else { continue };
        match tag {
            "c" => continue,
            "p" => {
                if n.is_some() {
                    return Err(GraphError::parse(line_no, "duplicate problem line"));
                }
                match tokens.next() {
                    Some("edge") | Some("col") | Some("edges") => {}
                    _ => return Err(GraphError::parse(line_no, "expected `p edge <n> <m>`")),
                }
                let count = parse_usize(tokens.next(), line_no)?;
                // edge count is not trusted; many published files get it wrong
                parse_usize(tokens.next(), line_no)?;
                n = Some(count);
            }
            "e" => {
                let Some(count) = n else {
                    return Err(GraphError::parse(line_no, "edge before problem line"));
                };
                let u = parse_usize(tokens.next(), line_no)?;
                let v = parse_usize(tokens.next(), line_no)?;
                if u == 0 || v == 0 || u > count || v > count {
                    return Err(GraphError::parse(line_no, "endpoint out of range"));
                }
                if u == v {
                    return Err(GraphError::parse(line_no, "self-loop"));
                }
                let (a, b) = if u < v { (u - 1, v - 1) } else { (v - 1, u - 1) };
                edges.insert((a, b));
            }
            other => {
                return Err(GraphError::parse(
                    line_no,
                    format!("unexpected line tag `{other}`"),
                ))
            }
        }
    }

    let n = n.ok_or(GraphError::MissingProblemLine)?;
    Ok(RawGraph {
        n,
        edges: edges.into_iter().collect(),
    })
}

/// Parses a weight file: line `i` holds the weight of vertex `i`.
/// Blank lines are ignored.
pub fn parse_weights(text: &str, n: usize) -> Result<Vec<Weight>, GraphError> {
    let mut weights = Vec::with_capacity(n);
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let token = line.trim();
        if token.is_empty() {
            continue;
        }
        let value: i64 = token.parse().map_err(|_| {
            GraphError::weight(line_no, format!("non-integer weight `{token}`"))
        })?;
        if value <= 0 {
            return Err(GraphError::weight(line_no, "non-positive weight"));
        }
        weights.push(value as Weight);
    }
    if weights.len() != n {
        return Err(GraphError::WeightCount {
            expected: n,
            got: weights.len(),
        });
    }
    Ok(weights)
}

fn parse_usize(token: Option<&str>, line: usize) -> Result<usize, GraphError> {
    let token = token.ok_or_else(|| GraphError::parse(line, "missing integer"))?;
    token
        .parse()
        .map_err(|_| GraphError::parse(line, format!("non-integer token `{token}`")))
}
