//! `search`, `construct` and `analyze`.

use std::path::PathBuf;

use serde_json::{json, Value};

use helly_core::analysis::{
    directional_width, hollow_to_empty_traced, is_empty_in, is_hollow, lattice_width_search, longest_segment,
};
use helly_core::constructions::{
    ball_polytope, box_polytope, dilated_simplex, fibonacci_polygon, fibonacci_syndetic, hollow_cross,
    hyperbola_polytope, lattice_point_count, mod3_octagon,
};
use helly_core::geometry::{Point, VPolytope};
use helly_core::lattice::{points_in_polytope, LatticeSpec};
use helly_core::search::{max_empty_subset, SearchOptions};

use crate::defaults::DEFAULT_WIDTH_RADIUS;
use crate::params::{parse_box_window, parse_exp_window, parse_lattice, parse_scalar, read_json_arg};
use crate::{CliError, Format, Outcome};

pub struct SearchArgs {
    pub lattice: String,
    pub window: Option<String>,
    pub expwindow: Option<String>,
    pub cap: usize,
    pub target: Option<usize>,
    pub node_budget: u64,
    pub workers: usize,
    pub checkpoint: Option<PathBuf>,
    pub format: Format,
}

pub fn search(a: &SearchArgs) -> Result<Outcome, CliError> {
    let l = parse_lattice(&a.lattice)?;
    let w = match (&a.window, &a.expwindow) {
        (Some(s), None) => parse_box_window(s, l.dim())?,
        (None, Some(s)) => parse_exp_window(s, l.dim())?,
        _ => return Err(CliError::Usage("give exactly one of --window and --expwindow".into())),
    };
    let opts = SearchOptions {
        size_cap: a.cap,
        target: a.target,
        node_budget: a.node_budget,
        workers: a.workers,
        checkpoint: a.checkpoint.clone(),
    };
    let r = max_empty_subset(&l, &w, &opts).map_err(|e| match e {
        helly_core::search::SearchError::Invalid(_) | helly_core::search::SearchError::Lattice(_) => {
            CliError::Usage(e.to_string())
        }
        other => CliError::Failure(other.to_string()),
    })?;
    let stdout = match a.format {
        Format::Json => serde_json::to_string_pretty(&r).expect("report serializes") + "\n",
        Format::Csv => {
            let mut s = String::from("size,empty_sets\n");
            for (k, c) in r.empty_sets_by_size.iter().enumerate().skip(1) {
                s.push_str(&format!("{k},{c}\n"));
            }
            s
        }
    };
    Ok(Outcome { stdout, stderr: String::new(), code: if r.wall_budget_hit { 2 } else { 0 } })
}

pub struct ConstructArgs {
    pub name: String,
    pub alpha: Option<String>,
    pub d: Option<usize>,
    pub k: Option<i64>,
    pub n: Option<usize>,
    pub verify: bool,
}

fn need<T: Copy>(v: Option<T>, flag: &str, name: &str) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::Usage(format!("construct {name} needs --{flag}")))
}

fn usage<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Usage(e.to_string())
}

fn failure<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Failure(e.to_string())
}

/// Self-checks of a construction: (name, ok, detail).
type SelfCheck = (String, bool, String);

pub fn construct(a: &ConstructArgs) -> Result<Outcome, CliError> {
    let name = a.name.as_str();
    let mut checks: Vec<SelfCheck> = Vec::new();
    let (poly, lattice): (VPolytope, LatticeSpec) = match name {
        "hyperbola" => {
            let alpha = parse_scalar(a.alpha.as_deref().ok_or_else(|| usage("construct hyperbola needs --alpha"))?)?;
            let d = need(a.d, "d", name)?;
            let k = need(a.k, "k", name)?;
            let k = u32::try_from(k).map_err(|_| usage("k must be non-negative"))?;
            let h = hyperbola_polytope(&alpha, d, k).map_err(usage)?;
            let expected = helly_core::arith::binomial(k as u64 + d as u64 - 1, d as u64 - 1);
            checks.push((
                "vertex count".into(),
                expected == h.polytope.vertices().len().into(),
                format!("{} vertices, binomial {expected}", h.polytope.vertices().len()),
            ));
            checks.push(("sufficient condition".into(), true, format!("holds: {}", h.condition_holds)));
            (h.polytope, LatticeSpec::exponential(alpha, d).map_err(usage)?)
        }
        "fibonacci-polygon" => {
            let n = need(a.n, "n", name)?;
            let fp = fibonacci_polygon(n).map_err(usage)?;
            checks.push(("identities".into(), true, format!("{} gaps, {} slopes checked", fp.gaps.len(), fp.slopes.len())));
            (VPolytope::from_points(&fp.points).map_err(failure)?, LatticeSpec::integer(2).map_err(failure)?)
        }
        "fibonacci-syndetic" => {
            let n = need(a.n, "n", name)?;
            let s = fibonacci_syndetic(n).map_err(usage)?;
            checks.push(("2-syndetic".into(), s.syndetic, format!("excluded {:?}", s.excluded)));
            (s.polygon_prefix, s.a_window)
        }
        "mod3-octagon" => {
            let p = mod3_octagon();
            checks.push(("vertex count".into(), p.vertices().len() == 8, format!("{} vertices", p.vertices().len())));
            (p, LatticeSpec::congruence(&[0, 1], 3, 2).map_err(failure)?)
        }
        "hollow-cross" => {
            let d = need(a.d, "d", name)?;
            let p = hollow_cross(d).map_err(usage)?;
            let zd = LatticeSpec::integer(d).map_err(failure)?;
            let h = is_hollow(&p, &zd).map_err(failure)?;
            checks.push(("hollow".into(), h.empty, format!("{} points checked", h.points_checked)));
            checks.push(("simplicial".into(), p.is_simplicial(), String::new()));
            checks.push(("vertex count".into(), p.vertices().len() == 2 * d, format!("{}", p.vertices().len())));
            return finish(p, None, checks, a.verify);
        }
        "box" => {
            let (k, d) = (need(a.k, "k", name)?, need(a.d, "d", name)?);
            let p = box_polytope(k, d).map_err(usage)?;
            if a.verify {
                let count = lattice_point_count(&p).map_err(failure)?;
                let expect = u32::try_from(d).ok().and_then(|d| (k as u64).checked_pow(d));
                checks.push(("lattice points".into(), Some(count) == expect, format!("{count}")));
            }
            return finish(p, None, checks, a.verify);
        }
        "ball" => {
            let (k, d) = (need(a.k, "k", name)?, need(a.d, "d", name)?);
            let p = ball_polytope(k, d).map_err(usage)?;
            if a.verify {
                let s = longest_segment(&p).map_err(failure)?;
                checks.push(("longest segment below k".into(), (s.length as i64) < k, format!("{}", s.length)));
            }
            return finish(p, None, checks, a.verify);
        }
        "dilated-simplex" => {
            let d = need(a.d, "d", name)?;
            let p = dilated_simplex(d).map_err(usage)?;
            if a.verify {
                let zd = LatticeSpec::integer(d).map_err(failure)?;
                checks.push(("hollow".into(), is_hollow(&p, &zd).map_err(failure)?.empty, String::new()));
            }
            return finish(p, None, checks, a.verify);
        }
        other => return Err(CliError::Usage(format!("unknown construction {other:?}"))),
    };
    finish(poly, Some(lattice), checks, a.verify)
}

fn finish(poly: VPolytope, lattice: Option<LatticeSpec>, mut checks: Vec<SelfCheck>, verify: bool) -> Result<Outcome, CliError> {
    let stdout = serde_json::to_string_pretty(&poly).expect("polytope serializes") + "\n";
    if !verify {
        return Ok(Outcome { stdout, stderr: String::new(), code: 0 });
    }
    if let Some(l) = lattice {
        let v = is_empty_in(poly.vertices(), &l).map_err(failure)?;
        checks.push(("empty".into(), v.empty, format!("in {}", l.to_json())));
    }
    let mut stderr = String::new();
    let mut ok = true;
    for (name, good, detail) in &checks {
        ok &= good;
        stderr.push_str(&format!("{} {name} {detail}\n", if *good { "pass" } else { "FAIL" }));
    }
    Ok(Outcome { stdout, stderr, code: if ok { 0 } else { 1 } })
}

pub struct AnalyzeArgs {
    pub op: String,
    pub input: String,
    pub lattice: Option<String>,
    pub radius: Option<u32>,
    pub direction: Option<String>,
}

/// Accepts a polytope document or a bare list of points; integers may be
/// given as JSON numbers.
fn read_points(arg: &str) -> Result<Vec<Point>, CliError> {
    let text = read_json_arg(arg)?;
    let v: Value = serde_json::from_str(&text).map_err(|e| usage(format!("invalid JSON: {e}")))?;
    let list = match &v {
        Value::Array(_) => v.clone(),
        Value::Object(o) => o.get("vertices").cloned().ok_or_else(|| usage("object has no \"vertices\""))?,
        _ => return Err(usage("expected a polytope or a list of points")),
    };
    let Value::Array(rows) = list else { return Err(usage("vertices must be a list")) };
    let mut pts = Vec::with_capacity(rows.len());
    for row in rows {
        let Value::Array(cs) = row else { return Err(usage("each point must be a list of coordinates")) };
        let coords = cs
            .iter()
            .map(|c| match c {
                Value::String(s) => parse_scalar(s),
                Value::Number(n) => parse_scalar(&n.to_string()),
                _ => Err(usage("coordinates must be strings or numbers")),
            })
            .collect::<Result<Vec<_>, _>>()?;
        pts.push(Point::new(coords).map_err(usage)?);
    }
    if pts.is_empty() {
        return Err(usage("no points given"));
    }
    Ok(pts)
}

pub fn analyze(a: &AnalyzeArgs) -> Result<Outcome, CliError> {
    let pts = read_points(&a.input)?;
    let d = pts[0].dim();
    let lattice = match &a.lattice {
        Some(s) => parse_lattice(s)?,
        None => LatticeSpec::integer(d).map_err(usage)?,
    };
    let poly = || VPolytope::from_points(&pts).map_err(usage);
    let value: Value = match a.op.as_str() {
        "empty" => json!(is_empty_in(&pts, &lattice).map_err(usage)?),
        "hollow" => json!(is_hollow(&poly()?, &lattice).map_err(usage)?),
        "points" => json!(points_in_polytope(&lattice, &poly()?).map_err(usage)?),
        "reduce" => json!(hollow_to_empty_traced(&poly()?).map_err(usage)?),
        "width" => json!(lattice_width_search(&poly()?, a.radius.unwrap_or(DEFAULT_WIDTH_RADIUS)).map_err(usage)?),
        "dirwidth" => {
            let dir = a.direction.as_deref().ok_or_else(|| usage("dirwidth needs --direction"))?;
            let v: Vec<i64> = dir
                .split(',')
                .map(|s| s.trim().parse().map_err(|_| usage(format!("bad direction entry {s:?}"))))
                .collect::<Result<_, _>>()?;
            json!({"direction": v, "width": directional_width(&poly()?, &v).map_err(usage)?})
        }
        "segment" => json!(longest_segment(&poly()?).map_err(usage)?),
        other => return Err(usage(format!("unknown analysis {other:?}"))),
    };
    Ok(Outcome { stdout: serde_json::to_string_pretty(&value).expect("json value") + "\n", stderr: String::new(), code: 0 })
}
