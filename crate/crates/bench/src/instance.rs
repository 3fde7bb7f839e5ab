//! Loading `.col` graphs and their weight files.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use wvcp::graph::{parse_col, parse_weights};
use wvcp::WeightedGraph;

/// `<instance>.w`, e.g. `p41.col` -> `p41.col.w`.
pub fn default_weights_path(instance: &Path) -> PathBuf {
    let mut s = instance.as_os_str().to_owned();
    s.push(".w");
    PathBuf::from(s)
}

/// File name without a trailing `.col`.
pub fn instance_name(instance: &Path) -> String {
    let file = instance
        .file_name()
        .map(|f| f.to_string_lossy().into_owned())
        .unwrap_or_else(|| instance.display().to_string());
    file.strip_suffix(".col").map(str::to_string).unwrap_or(file)
}

pub fn load_instance(instance: &Path, weights: Option<&Path>) -> Result<WeightedGraph> {
    let weights = weights.map_or_else(|| default_weights_path(instance), Path::to_path_buf);
    let col = fs::read_to_string(instance)
        .with_context(|| format!("reading {}", instance.display()))?;
    let raw = parse_col(&col).with_context(|| format!("parsing {}", instance.display()))?;
    let w = fs::read_to_string(&weights)
        .with_context(|| format!("reading {}", weights.display()))?;
    let w = parse_weights(&w, raw.n).with_context(|| format!("parsing {}", weights.display()))?;
    let g = WeightedGraph::build(&raw, w)?;
    Ok(g.with_name(instance_name(instance)))
}
