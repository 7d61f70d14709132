//! Windowed maximum-empty-subset search and residue verifications for
//! congruence sets.

mod engine;
mod pentagon;
mod residue;

use std::path::PathBuf;
use std::sync::Mutex;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analysis::{is_empty_in, AnalysisError};
use crate::geometry::Point;
use crate::lattice::{enumerate_window, LatticeError, LatticeSpec, Window};

use engine::{OrientTable, PartitionResult, Problem, Qualifier};

pub use pentagon::{classify_pentagons, pentagon_exponents, PentagonClassification};
pub use residue::{residue_multiplicity_search, residue_pigeonhole_check, MultiplicityReport, PigeonholeReport};

pub const DEFAULT_SIZE_CAP: usize = 12;
pub const DEFAULT_NODE_BUDGET: u64 = 1_000_000_000;
/// Planar windows above this size would need an orientation table of over 100 MB.
pub const MAX_PLANAR_POINTS: usize = 450;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SearchError {
    #[error("invalid search request: {0}")]
    Invalid(String),
    #[error("witness failed independent re-verification: {0}")]
    Invariant(String),
    #[error("checkpoint: {0}")]
    Checkpoint(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
}

#[derive(Clone, Debug)]
pub struct SearchOptions {
    pub size_cap: usize,
    pub target: Option<usize>,
    pub node_budget: u64,
    /// Worker threads; 1 runs on the calling thread.
    pub workers: usize,
    /// Completed partitions are recorded here and skipped on a rerun.
    pub checkpoint: Option<PathBuf>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { size_cap: DEFAULT_SIZE_CAP, target: None, node_budget: DEFAULT_NODE_BUDGET, workers: 1, checkpoint: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub lattice: LatticeSpec,
    pub window: Window,
    pub window_points: usize,
    pub size_cap: usize,
    pub target: Option<usize>,
    pub max_empty_size: usize,
    pub witness: Vec<Point>,
    pub exhaustive: bool,
    pub nodes_explored: u64,
    pub wall_budget_hit: bool,
    /// Entry `k` counts the empty subsets of size `k` that were visited.
    pub empty_sets_by_size: Vec<u64>,
}

struct Merged {
    nodes: u64,
    histogram: Vec<u64>,
    best: Vec<usize>,
    qualified: Option<Vec<usize>>,
    collected: Vec<Vec<usize>>,
    cap_blocked: bool,
    target_hit: bool,
    budget_hit: bool,
}

#[derive(Serialize, Deserialize)]
struct Checkpoint {
    kind: String,
    lattice: LatticeSpec,
    window: Window,
    size_cap: usize,
    target: Option<usize>,
    partitions: Vec<PartitionResult>,
}

/// Runs every anchor partition and merges them in anchor order, so the
/// outcome is the one a serial run with the same budget would produce.
fn run_search(
    l: &LatticeSpec,
    w: &Window,
    points: &[Point],
    opts: &SearchOptions,
    kind: &str,
    qualify: Option<&Qualifier>,
    collect_size: Option<usize>,
) -> Result<Merged, SearchError> {
    if opts.size_cap == 0 {
        return Err(SearchError::Invalid("size cap must be at least 1".into()));
    }
    let planar = l.dim() == 2;
    if planar && points.len() > MAX_PLANAR_POINTS {
        return Err(SearchError::Invalid(format!(
            "window has {} points; planar search supports at most {MAX_PLANAR_POINTS}",
            points.len()
        )));
    }
    let problem = Problem { points, size_cap: opts.size_cap, target: opts.target, qualify, collect_size };
    let table = planar.then(|| OrientTable::new(points));
    let run = |anchor: usize, budget: u64| match &table {
        Some(t) => engine::run_planar(&problem, t, anchor, budget),
        None => engine::run_generic(&problem, anchor, budget),
    };

    let mut done: Vec<Option<PartitionResult>> = vec![None; points.len()];
    let store = match &opts.checkpoint {
        Some(path) => {
            if let Some(cp) = load_checkpoint(path)? {
                if cp.kind != kind || cp.lattice != *l || cp.window != *w || cp.size_cap != opts.size_cap || cp.target != opts.target {
                    return Err(SearchError::Checkpoint(format!("{} belongs to a different search", path.display())));
                }
                for p in cp.partitions {
                    let slot = p.anchor;
                    if slot < done.len() {
                        done[slot] = Some(p);
                    }
                }
            }
            Some(Mutex::new(Checkpoint {
                kind: kind.to_string(),
                lattice: l.clone(),
                window: w.clone(),
                size_cap: opts.size_cap,
                target: opts.target,
                partitions: done.iter().flatten().cloned().collect(),
            }))
        }
        None => None,
    };
    let pending: Vec<usize> = (0..points.len()).filter(|&i| done[i].is_none()).collect();
    let record = |r: &PartitionResult| -> Result<(), SearchError> {
        if let (Some(store), Some(path)) = (&store, &opts.checkpoint) {
            if !r.budget_hit {
                let mut cp = store.lock().expect("checkpoint lock");
                cp.partitions.push(r.clone());
                cp.partitions.sort_by_key(|p| p.anchor);
                save_checkpoint(path, &cp)?;
            }
        }
        Ok(())
    };
    let work = |anchor: usize| -> Result<PartitionResult, SearchError> {
        let r = run(anchor, opts.node_budget);
        record(&r)?;
        Ok(r)
    };
    let fresh: Vec<PartitionResult> = if opts.workers <= 1 {
        pending.iter().map(|&a| work(a)).collect::<Result<_, _>>()?
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.workers)
            .build()
            .map_err(|e| SearchError::Invalid(format!("thread pool: {e}")))?;
        pool.install(|| pending.par_iter().map(|&a| work(a)).collect::<Result<_, _>>())?
    };
    for r in fresh {
        let slot = r.anchor;
        done[slot] = Some(r);
    }

    let mut m = Merged {
        nodes: 0,
        histogram: vec![0; opts.size_cap + 1],
        best: Vec::new(),
        qualified: None,
        collected: Vec::new(),
        cap_blocked: false,
        target_hit: false,
        budget_hit: false,
    };
    m.histogram[0] = 1;
    for (anchor, slot) in done.into_iter().enumerate() {
        let mut r = slot.expect("every partition ran");
        let remaining = opts.node_budget - m.nodes;
        if r.nodes > remaining || (r.budget_hit && remaining < opts.node_budget) {
            r = run(anchor, remaining);
        }
        m.nodes += r.nodes;
        for (h, x) in m.histogram.iter_mut().zip(&r.histogram) {
            *h += x;
        }
        if r.best.len() > m.best.len() || (r.best.len() == m.best.len() && r.best < m.best) {
            m.best = r.best;
        }
        if let Some(q) = r.qualified {
            if m.qualified.as_ref().is_none_or(|cur| q < *cur) {
                m.qualified = Some(q);
            }
        }
        m.collected.extend(r.collected);
        m.cap_blocked |= r.cap_blocked;
        if r.target_hit || r.budget_hit {
            m.target_hit = r.target_hit;
            m.budget_hit = r.budget_hit;
            break;
        }
    }
    m.collected.sort();
    Ok(m)
}

fn load_checkpoint(path: &PathBuf) -> Result<Option<Checkpoint>, SearchError> {
    match std::fs::read_to_string(path) {
        Ok(text) => serde_json::from_str(&text)
            .map(Some)
            .map_err(|e| SearchError::Checkpoint(format!("{}: {e}", path.display()))),
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(None),
        Err(e) => Err(SearchError::Checkpoint(format!("{}: {e}", path.display()))),
    }
}

fn save_checkpoint(path: &PathBuf, cp: &Checkpoint) -> Result<(), SearchError> {
    let tmp = path.with_extension("tmp");
    let text = serde_json::to_string(cp).expect("checkpoint serializes");
    std::fs::write(&tmp, text)
        .and_then(|_| std::fs::rename(&tmp, path))
        .map_err(|e| SearchError::Checkpoint(format!("{}: {e}", path.display())))
}

fn window_points(l: &LatticeSpec, w: &Window) -> Result<Vec<Point>, SearchError> {
    let pts = enumerate_window(l, w)?;
    if pts.is_empty() {
        return Err(SearchError::Invalid("window contains no lattice points".into()));
    }
    Ok(pts)
}

fn pick(points: &[Point], idx: &[usize]) -> Vec<Point> {
    idx.iter().map(|&i| points[i].clone()).collect()
}

fn reverify(l: &LatticeSpec, witness: &[Point]) -> Result<(), SearchError> {
    if witness.is_empty() {
        return Ok(());
    }
    let v = is_empty_in(witness, l)?;
    if !v.empty {
        let w: Vec<String> = witness.iter().map(Point::to_string).collect();
        return Err(SearchError::Invariant(format!(
            "{} contains {}",
            w.join(" "),
            v.witness.map(|p| p.to_string()).unwrap_or_default()
        )));
    }
    Ok(())
}

/// Largest empty subset of the lattice points in `w`.
///
/// Windows are boxes (or exponent boxes), so the hull of any subset meets
/// the lattice only inside the window, and emptiness relative to the window
/// is emptiness relative to the lattice.
pub fn max_empty_subset(l: &LatticeSpec, w: &Window, opts: &SearchOptions) -> Result<SearchReport, SearchError> {
    let points = window_points(l, w)?;
    let m = run_search(l, w, &points, opts, "max-empty", None, None)?;
    let witness = pick(&points, &m.best);
    reverify(l, &witness)?;
    Ok(SearchReport {
        lattice: l.clone(),
        window: w.clone(),
        window_points: points.len(),
        size_cap: opts.size_cap,
        target: opts.target,
        max_empty_size: witness.len(),
        witness,
        exhaustive: !(m.cap_blocked || m.target_hit || m.budget_hit),
        nodes_explored: m.nodes,
        wall_budget_hit: m.budget_hit,
        empty_sets_by_size: m.histogram,
    })
}

/// Every empty subset of exactly `k` window points, each sorted, in lexicographic order.
pub fn empty_subsets_of_size(l: &LatticeSpec, w: &Window, k: usize, opts: &SearchOptions) -> Result<(Vec<Vec<Point>>, bool), SearchError> {
    if k == 0 || k > opts.size_cap {
        return Err(SearchError::Invalid(format!("size {k} outside 1..={}", opts.size_cap)));
    }
    let points = window_points(l, w)?;
    let opts = SearchOptions { target: None, checkpoint: None, ..opts.clone() };
    let m = run_search(l, w, &points, &opts, "subsets", None, Some(k))?;
    let sets: Vec<Vec<Point>> = m.collected.iter().map(|s| pick(&points, s)).collect();
    Ok((sets, !m.budget_hit))
}
