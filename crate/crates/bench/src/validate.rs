//! Re-checking an exported solution against its instance.

use std::fmt;

use wvcp::coloring::{check_coloring, parse_solution, SolutionError, Violation};
use wvcp::{Score, WeightedGraph};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Report {
    Ok { score: Score },
    Format(SolutionError),
    Illegal(Violation),
    ScoreMismatch { claimed: Score, actual: Score },
}

impl Report {
    pub fn is_ok(&self) -> bool {
        matches!(self, Report::Ok { .. })
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Report::Ok { score } => write!(f, "ok: legal coloring, score {score}"),
            Report::Format(e) => write!(f, "format error: {e}"),
            Report::Illegal(v) => write!(f, "violation: {v}"),
            Report::ScoreMismatch { claimed, actual } => {
                write!(f, "score mismatch: header says {claimed}, recomputed {actual}")
            }
        }
    }
}

pub fn validate_solution(g: &WeightedGraph, text: &str) -> Report {
    let file = match parse_solution(text, g.n()) {
        Ok(f) => f,
        Err(e) => return Report::Format(e),
    };
    match check_coloring(g, &file.colors) {
        Err(v) => Report::Illegal(v),
        Ok(actual) if actual != file.score => Report::ScoreMismatch {
            claimed: file.score,
            actual,
        },
        Ok(score) => Report::Ok { score },
    }
}
