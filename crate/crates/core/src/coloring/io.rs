//! Text format for complete solutions:
//!
//! ```text
//! score 8
//! 1 1
//! 2 2
//! 3 1
//! ```
//!
//! One `<vertex> <color>` line per vertex, both 1-indexed.

use std::fmt::Write as _;

use thiserror::Error;

use super::Score;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolutionError {
    #[error("{msg}, line {line}")]
    Format { line: usize, msg: String },
    #[error("missing `score` header")]
    MissingScore,
    #[error("vertex {0} has no color")]
    MissingVertex(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionFile {
    /// Score claimed by the header.
    pub score: Score,
    /// 0-based colors indexed by 0-based vertex.
    pub colors: Vec<usize>,
}

pub fn write_solution(colors: &[usize], score: Score) -> String {
    let mut out = format!("score {score}\n");
    for (v, c) in colors.iter().enumerate() {
        let _ = writeln!(out, "{} {}", v + 1, c + 1);
    }
    out
}

pub fn parse_solution(text: &str, n: usize) -> Result<SolutionFile, SolutionError> {
    let err = |line: usize, msg: &str| SolutionError::Format {
        line,
        msg: msg.to_string(),
    };
    let mut score = None;
    let mut colors: Vec<Option<usize>> = vec![None; n];
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens.as_slice() {
            [] => continue,
            ["score", value] => {
                if score.is_some() {
                    return Err(err(line_no, "duplicate score header"));
                }
                score = Some(
                    value
                        .parse::<Score>()
                        .map_err(|_| err(line_no, "non-integer score"))?,
                );
            }
            [vertex, color] => {
                let vertex: usize = vertex
                    .parse()
                    .map_err(|_| err(line_no, "non-integer vertex"))?;
                let color: usize = color
                    .parse()
                    .map_err(|_| err(line_no, "non-integer color"))?;
                if vertex == 0 || vertex > n {
                    return Err(err(line_no, "vertex out of range"));
                }
                if color == 0 {
                    return Err(err(line_no, "colors start at 1"));
                }
                if colors[vertex - 1].replace(color - 1).is_some() {
                    return Err(err(line_no, "vertex listed twice"));
                }
            }
            _ => return Err(err(line_no, "expected `<vertex> <color>`")),
        }
    }
    let score = score.ok_or(SolutionError::MissingScore)?;
    let colors = colors
        .into_iter()
        .enumerate()
        .map(|(v, c)| c.ok_or(SolutionError::MissingVertex(v + 1)))
        .collect::<Result<_, _>>()?;
    Ok(SolutionFile { score, colors })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = write_solution(&[0, 1, 0], 8);
        assert_eq!(text, "score 8\n1 1\n2 2\n3 1\n");
        let parsed = parse_solution(&text, 3).unwrap();
        assert_eq!(parsed.score, 8);
        assert_eq!(parsed.colors, [0, 1, 0]);
    }

    #[test]
    fn errors_carry_lines() {
        assert_eq!(
            parse_solution("score 3\n1 1\n4 1", 3).unwrap_err().to_string(),
            "vertex out of range, line 3"
        );
        assert_eq!(
            parse_solution("1 1", 1).unwrap_err(),
            SolutionError::MissingScore
        );
        assert_eq!(
            parse_solution("score 1\n1 1", 2).unwrap_err(),
            SolutionError::MissingVertex(2)
        );
        assert!(parse_solution("score 1\n1 1\n1 2", 1).is_err());
    }
}
