mod common;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use common::{score_from_scratch, shipped_instances};
use wvcp_bench::instance::load_instance;

fn wvcp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wvcp"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn instance(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("instances").join(format!("{name}.col"))
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn solve_exports_a_valid_solution_and_trace() {
    let dir = tempfile::tempdir().unwrap();
    let sol = dir.path().join("out/sol.txt");
    let trace = dir.path().join("trace.csv");
    let inst = instance("myciel4");
    let o = wvcp(&[
        "solve", s(&inst), "--method", "mcts-greedy", "--seed", "4", "--time-limit", "0.3",
        "--export-solution", s(&sol), "--trace", s(&trace),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(
        lines.next().unwrap(),
        "instance,method,seed,best_score,time_to_best_s,total_time_s,proven_optimal,iterations"
    );
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(&row[..3], ["myciel4", "mcts-greedy", "4"]);
    for t in &row[4..6] {
        assert_eq!(t.split('.').nth(1).map(str::len), Some(2), "two decimals: {t}");
    }

    let text = fs::read_to_string(&sol).unwrap();
    assert_eq!(text.lines().next().unwrap(), format!("score {}", row[3]));
    let g = load_instance(&inst, None).unwrap();
    let colors: Vec<usize> = text
        .lines()
        .skip(1)
        .map(|l| l.split_whitespace().nth(1).unwrap().parse::<usize>().unwrap() - 1)
        .collect();
    assert_eq!(score_from_scratch(&g, &colors).to_string(), row[3]);

    let trace = fs::read_to_string(&trace).unwrap();
    assert!(trace.starts_with("time_s,score\n"));
    assert_eq!(trace.lines().last().unwrap().split(',').nth(1), Some(row[3]));

    let o = wvcp(&["validate", s(&inst), s(&sol)]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("ok"));
}

#[test]
fn validate_reports_tampering() {
    let dir = tempfile::tempdir().unwrap();
    let inst = instance("myciel3");
    let sol = dir.path().join("sol.txt");
    let o = wvcp(&["solve", s(&inst), "--method", "greedy", "--export-solution", s(&sol)]);
    assert!(o.status.success());
    let good = fs::read_to_string(&sol).unwrap();

    // myciel3 has edge 1-2: give both the same color
    let c1 = good.lines().nth(1).unwrap().split_whitespace().nth(1).unwrap().to_string();
    let tampered: String = good
        .lines()
        .map(|l| if l.starts_with("2 ") { format!("2 {c1}\n") } else { format!("{l}\n") })
        .collect();
    fs::write(&sol, tampered).unwrap();
    let o = wvcp(&["validate", s(&inst), s(&sol)]);
    assert!(!o.status.success());
    assert!(stdout(&o).contains("edge (1, 2)"), "{}", stdout(&o));

    let wrong_score = good.replacen("score ", "score 1", 1);
    fs::write(&sol, wrong_score).unwrap();
    let o = wvcp(&["validate", s(&inst), s(&sol)]);
    assert!(!o.status.success());
    assert!(stdout(&o).starts_with("score mismatch"));

    fs::write(&sol, "score 3\n1 1\nbogus\n").unwrap();
    let o = wvcp(&["validate", s(&inst), s(&sol)]);
    assert!(!o.status.success());
    assert!(stdout(&o).contains("line 3"), "{}", stdout(&o));
}

#[test]
fn weights_override_and_missing_weights() {
    let dir = tempfile::tempdir().unwrap();
    let col = dir.path().join("tri.col");
    fs::write(&col, "p edge 3 3\ne 1 2\ne 2 3\ne 1 3\n").unwrap();
    let o = wvcp(&["solve", s(&col), "--method", "greedy"]);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("tri.col.w"));

    let w = dir.path().join("custom.txt");
    fs::write(&w, "5\n3\n2\n").unwrap();
    let o = wvcp(&["solve", s(&col), "--weights", s(&w), "--method", "mcts-greedy", "--time-limit", "0"]);
    assert!(o.status.success());
    assert!(stdout(&o).lines().nth(1).unwrap().starts_with("tri,mcts-greedy,1,10,"));
}

#[test]
fn oracle_agrees_with_exhaustive_mcts() {
    let inst = instance("myciel3");
    let o = wvcp(&["oracle", s(&inst)]);
    assert!(o.status.success());
    let optimum: String = stdout(&o).split_whitespace().nth(2).unwrap().to_string();
    let o = wvcp(&["solve", s(&inst), "--method", "mcts-random", "--time-limit", "0", "--no-reduction"]);
    let row = stdout(&o);
    let fields: Vec<&str> = row.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(fields[3], optimum);
    assert_eq!(fields[6], "true");

    let o = wvcp(&["oracle", s(&instance("queen5_5")), "--cap", "10"]);
    assert!(!o.status.success());
}

#[test]
fn bench_writes_rows_and_aggregates() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("exp.cfg");
    fs::write(
        &cfg,
        format!(
            "instances = {}, {}, missing.col\nmethod = mcts-greedy-random\nseeds = 1-3\n\
             time_limit = 0.2\nvirtual_tick = 0.001\noutput = runs.csv\naggregate = table.csv\n",
            s(&instance("queen5_5")),
            s(&instance("rand30_3"))
        ),
    )
    .unwrap();
    let o = wvcp(&["bench", "--config", s(&cfg)]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(String::from_utf8_lossy(&o.stderr).contains("missing"));

    let runs = fs::read_to_string(dir.path().join("runs.csv")).unwrap();
    let rows: Vec<Vec<&str>> = runs.lines().skip(1).map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 9);
    assert!(rows[6..].iter().all(|r| r[3] == "failed"));

    let table = fs::read_to_string(dir.path().join("table.csv")).unwrap();
    let mut lines = table.lines();
    assert_eq!(lines.next().unwrap(), "instance,method,best,avg,t_best_avg,proven_optimal_any");
    let agg: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(agg.len(), 3);
    // recompute from the per-run rows
    for a in &agg[..2] {
        let mine: Vec<&Vec<&str>> = rows.iter().filter(|r| r[0] == a[0]).collect();
        let scores: Vec<u64> = mine.iter().map(|r| r[3].parse().unwrap()).collect();
        let best = scores.iter().min().unwrap();
        let avg = scores.iter().sum::<u64>() as f64 / scores.len() as f64;
        assert_eq!(a[2], best.to_string());
        assert_eq!(a[3], format!("{avg:.2}"));
        let any = mine.iter().any(|r| r[6] == "true");
        assert_eq!(a[5], any.to_string());
    }
    assert_eq!(agg[2][..4], ["missing", "mcts-greedy-random", "", ""]);

    // same config again: byte-identical
    fs::rename(dir.path().join("runs.csv"), dir.path().join("first.csv")).unwrap();
    assert!(wvcp(&["bench", "--config", s(&cfg)]).status.success());
    assert_eq!(
        fs::read(dir.path().join("first.csv")).unwrap(),
        fs::read(dir.path().join("runs.csv")).unwrap()
    );
}

#[test]
fn sweep_emits_one_row_per_coefficient() {
    let inst = instance("myciel3");
    let o = wvcp(&[
        "sweep", s(&inst), "--coefs", "0,0.5,1,1.5,2", "--seeds", "1-4", "--time-limit", "0",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next().unwrap(), "c,runs,min,q1,median,q3,max,mean");
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 5);
    // tiny graph: every coefficient exhausts the tree and finds the same optimum
    let mins: Vec<&str> = rows.iter().map(|r| r.split(',').nth(2).unwrap()).collect();
    assert!(mins.iter().all(|m| *m == mins[0]));
    let maxes: Vec<&str> = rows.iter().map(|r| r.split(',').nth(6).unwrap()).collect();
    assert_eq!(mins, maxes);
}

#[test]
fn shipped_instances_parse() {
    let files = shipped_instances();
    assert!(files.len() >= 10);
    for f in files {
        let g = load_instance(&f, None).unwrap();
        assert!(g.n() > 0 && g.edge_count() > 0, "{}", f.display());
    }
}

#[test]
fn unknown_method_is_rejected() {
    let o = wvcp(&["solve", s(&instance("myciel3")), "--method", "mcts"]);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown method"));
}
