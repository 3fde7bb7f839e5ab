//! Flat `key = value` experiment files. Keys mirror the `solve` flags:
//!
//! ```text
//! # three instances, 20 seeds each
//! instances = data/p41.col, data/p42.col, data/r28.col
//! method = mcts-greedy
//! seeds = 1-20
//! time_limit = 120
//! coef = 1.0
//! its_iterations = 500
//! reduction = on
//! output = runs.csv
//! aggregate = table.csv
//! ```
//!
//! Relative paths resolve against the directory holding the file.

use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use wvcp::run::Method;

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub instances: Vec<PathBuf>,
    pub methods: Vec<Method>,
    pub seeds: Vec<u64>,
    /// Seconds; `0` means no limit.
    pub time_limit: f64,
    pub coefficient: f64,
    pub its_iterations: usize,
    pub max_iterations: u64,
    pub reduction: bool,
    /// Worker threads; `0` lets the pool decide.
    pub threads: usize,
    /// Seconds per clock reading for a deterministic virtual clock.
    pub virtual_tick: Option<f64>,
    pub output: Option<PathBuf>,
    pub aggregate: Option<PathBuf>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            instances: Vec::new(),
            methods: vec![Method::Mcts(wvcp::mcts::Simulation::GreedyRandom)],
            seeds: (1..=20).collect(),
            time_limit: 3600.0,
            coefficient: 1.0,
            its_iterations: 500,
            max_iterations: 0,
            reduction: true,
            threads: 0,
            virtual_tick: None,
            output: None,
            aggregate: None,
        }
    }
}

/// `"1-20"`, `"3"`, `"1,5,9-12"`.
pub fn parse_seeds(s: &str) -> Result<Vec<u64>> {
    let mut seeds = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        match part.split_once('-') {
            Some((a, b)) => {
                let a: u64 = a.trim().parse().with_context(|| format!("bad seed {a:?}"))?;
                let b: u64 = b.trim().parse().with_context(|| format!("bad seed {b:?}"))?;
                if a > b {
                    bail!("empty seed range {part}");
                }
                seeds.extend(a..=b);
            }
            None => seeds.push(part.parse().with_context(|| format!("bad seed {part:?}"))?),
        }
    }
    if seeds.is_empty() {
        bail!("no seeds given");
    }
    Ok(seeds)
}

pub fn parse_bool(s: &str) -> Result<bool> {
    match s {
        "1" | "true" | "on" | "yes" => Ok(true),
        "0" | "false" | "off" | "no" => Ok(false),
        _ => Err(anyhow!("expected on/off, got {s:?}")),
    }
}

pub fn parse_list<T: std::str::FromStr>(s: &str) -> Result<Vec<T>>
where
    T::Err: std::error::Error + Send + Sync + 'static,
{
    s.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| p.parse::<T>().with_context(|| format!("bad value {p:?}")))
        .collect()
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let base = path.parent().unwrap_or(Path::new("."));
        Self::parse(&text, base).with_context(|| format!("in {}", path.display()))
    }

    pub fn parse(text: &str, base: &Path) -> Result<Self> {
        let mut cfg = ExperimentConfig::default();
        let resolve = |p: &str| {
            let p = Path::new(p);
            if p.is_absolute() {
                p.to_path_buf()
            } else {
                base.join(p)
            }
        };
        for (idx, line) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| anyhow!("expected key = value, line {line_no}"))?;
            let (key, value) = (key.trim(), value.trim());
            let set = |cfg: &mut ExperimentConfig| -> Result<()> {
                match key {
                    "instances" | "instance" => {
                        cfg.instances = value
                            .split(',')
                            .map(str::trim)
                            .filter(|p| !p.is_empty())
                            .map(resolve)
                            .collect()
                    }
                    "method" | "methods" => cfg.methods = parse_list(value)?,
                    "seeds" | "seed" => cfg.seeds = parse_seeds(value)?,
                    "time_limit" | "time-limit" => cfg.time_limit = value.parse()?,
                    "coef" | "c" | "coefficient" => cfg.coefficient = value.parse()?,
                    "its_iterations" | "its-iterations" => cfg.its_iterations = value.parse()?,
                    "max_iterations" | "max-iterations" => cfg.max_iterations = value.parse()?,
                    "reduction" => cfg.reduction = parse_bool(value)?,
                    "no_reduction" | "no-reduction" => cfg.reduction = !parse_bool(value)?,
                    "threads" => cfg.threads = value.parse()?,
                    "virtual_tick" | "virtual-tick" => cfg.virtual_tick = Some(value.parse()?),
                    "output" => cfg.output = Some(resolve(value)),
                    "aggregate" => cfg.aggregate = Some(resolve(value)),
                    _ => bail!("unknown key {key:?}"),
                }
                Ok(())
            };
            set(&mut cfg).with_context(|| format!("line {line_no}"))?;
        }
        if cfg.instances.is_empty() {
            bail!("no instances listed");
        }
        if cfg.methods.is_empty() {
            bail!("no method given");
        }
        Ok(cfg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use wvcp::mcts::Simulation;

    #[test]
    fn seeds() {
        assert_eq!(parse_seeds("1-3").unwrap(), [1, 2, 3]);
        assert_eq!(parse_seeds("7, 2-3").unwrap(), [7, 2, 3]);
        assert!(parse_seeds("3-1").is_err());
        assert!(parse_seeds("").is_err());
    }

    #[test]
    fn full_file() {
        let text = "\
# comment
instances = a.col, /abs/b.col
methods = greedy, mcts-its
seeds = 1-2
time_limit = 5  # trailing
coef = 0.5
reduction = off
output = out/runs.csv
";
        let cfg = ExperimentConfig::parse(text, Path::new("/base")).unwrap();
        assert_eq!(cfg.instances, [PathBuf::from("/base/a.col"), PathBuf::from("/abs/b.col")]);
        assert_eq!(cfg.methods, [Method::Greedy, Method::Mcts(Simulation::Its)]);
        assert_eq!(cfg.seeds, [1, 2]);
        assert_eq!(cfg.time_limit, 5.0);
        assert_eq!(cfg.coefficient, 0.5);
        assert!(!cfg.reduction);
        assert_eq!(cfg.its_iterations, 500);
        assert_eq!(cfg.output, Some(PathBuf::from("/base/out/runs.csv")));
    }

    #[test]
    fn errors_name_the_line() {
        let err = ExperimentConfig::parse("instances = a.col\nbogus = 1\n", Path::new(".")).unwrap_err();
        assert_eq!(format!("{err:#}"), "line 2: unknown key \"bogus\"");
        let err = ExperimentConfig::parse("instances = a.col\nmethod = mcts\n", Path::new(".")).unwrap_err();
        assert!(format!("{err:#}").starts_with("line 2: bad value \"mcts\""));
        assert!(ExperimentConfig::parse("seeds = 1\n", Path::new(".")).is_err());
    }
}
