use serde_json::Value;
use wvcp_web::{exact_json, generate_json, solve_json};

const TRIANGLE_PLUS: &str = "p edge 4 4\ne 1 2\ne 2 3\ne 1 3\ne 3 4\n";
const WEIGHTS: &str = "5\n3\n2\n4\n";

fn parse(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

#[test]
fn solve_returns_colors_for_every_vertex() {
    let out = parse(&solve_json(TRIANGLE_PLUS, WEIGHTS, "mcts-greedy-random", 1, 0.0, 1.0).unwrap());
    // {0,3} {1} {2}: 5 + 3 + 2
    assert_eq!(out["score"], 10);
    assert_eq!(out["proven_optimal"], true);
    assert_eq!(out["colors"].as_array().unwrap().len(), 4);
    assert_eq!(out["graph"]["n"], 4);
    assert_eq!(out["graph"]["edges"].as_array().unwrap().len(), 4);
    assert!(!out["trace"].as_array().unwrap().is_empty());
}

#[test]
fn exact_matches_solve() {
    let exact = parse(&exact_json(TRIANGLE_PLUS, WEIGHTS).unwrap());
    assert_eq!(exact["score"], 10);
    let big = "p edge 15 0\n";
    let w = "1\n".repeat(15);
    assert!(exact_json(big, &w).unwrap_err().contains("15"));
}

#[test]
fn errors_are_messages() {
    assert!(solve_json(TRIANGLE_PLUS, "5\n3\n", "greedy", 1, 1.0, 1.0)
        .unwrap_err()
        .starts_with("weights:"));
    assert!(solve_json(TRIANGLE_PLUS, WEIGHTS, "nope", 1, 1.0, 1.0)
        .unwrap_err()
        .contains("unknown method"));
}

#[test]
fn generated_instance_round_trips() {
    let gen = parse(&generate_json(30, 0.3, 20, 7).unwrap());
    let col = gen["col"].as_str().unwrap();
    let weights = gen["weights"].as_str().unwrap();
    assert_eq!(gen["points"].as_array().unwrap().len(), 30);
    let out = parse(&solve_json(col, weights, "greedy", 1, 1.0, 1.0).unwrap());
    assert_eq!(out["graph"]["n"], 30);
    assert_eq!(generate_json(30, 0.3, 20, 7).unwrap(), generate_json(30, 0.3, 20, 7).unwrap());
    assert!(generate_json(0, 0.3, 20, 7).is_err());
}
