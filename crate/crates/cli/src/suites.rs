//! Verification suites. Each returns a list of checks; witnesses produced by
//! searches or constructions are re-checked with `is_empty_in`.

use std::collections::BTreeMap;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use helly_core::analysis::{
    hollow_to_empty_traced, is_empty_in, is_hollow, lattice_width_search, longest_segment,
};
use helly_core::arith::{binomial, ceil_log, least_prime_factor, ExactScalar};
use helly_core::constructions::{
    ball_polytope, box_polytope, dilated_simplex, fibonacci_polygon, fibonacci_syndetic, hollow_cross,
    hyperbola_polytope, lattice_point_count, mod3_octagon, FibonacciContext,
};
use helly_core::geometry::{Point, VPolytope};
use helly_core::lattice::{LatticeSpec, Window};
use helly_core::search::{
    classify_pentagons, empty_subsets_of_size, max_empty_subset, residue_multiplicity_search,
    residue_pigeonhole_check, SearchOptions, SearchReport,
};

use crate::params::{parse_box_window, parse_scalar, Params};
use crate::report::{Check, Status, SuiteResult};
use crate::CliError;

#[derive(Clone, Debug)]
pub struct RunContext {
    pub workers: usize,
    pub node_budget: u64,
}

impl RunContext {
    fn opts(&self, size_cap: usize, target: Option<usize>) -> SearchOptions {
        SearchOptions { size_cap, target, node_budget: self.node_budget, workers: self.workers, ..SearchOptions::default() }
    }
}

pub fn run_verify(suite: &str, overrides: &BTreeMap<String, String>, ctx: &RunContext) -> Result<SuiteResult, CliError> {
    let params = Params::for_suite(suite, overrides)?;
    let start = Instant::now();
    let checks = match suite {
        "thm1-bound" => thm1_bound(&params, ctx)?,
        "explat-window" => explat_window(&params, ctx)?,
        "thm2-hyperbola" => thm2_hyperbola(&params, ctx)?,
        "fib-syndetic" => fib_syndetic(&params)?,
        "thm3-pigeonhole" => thm3_pigeonhole(&params)?,
        "prop-mod3" => prop_mod3(&params, ctx)?,
        "hol-cross" => hol_cross(&params)?,
        "hol-reduction" => hol_reduction(&params)?,
        "seg-box" => seg_box(&params)?,
        "seg-ball" => seg_ball(&params)?,
        "width-simplex" => width_simplex(&params)?,
        other => return Err(CliError::Usage(format!("unknown suite {other:?}"))),
    };
    Ok(SuiteResult::new(suite, params.values().clone(), checks, start.elapsed()))
}

fn fail<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Failure(e.to_string())
}

fn points_json(ps: &[Point]) -> Value {
    Value::from(ps.iter().map(|p| p.to_string()).collect::<Vec<_>>())
}

/// Search-side status: a hit budget can only make a check inconclusive.
fn search_status(ok: bool, report: &SearchReport) -> Status {
    if ok {
        Status::Pass
    } else if report.wall_budget_hit {
        Status::Inconclusive
    } else {
        Status::Fail
    }
}

fn reverify(name: &str, witness: &[Point], l: &LatticeSpec) -> Result<Check, CliError> {
    let v = is_empty_in(witness, l).map_err(fail)?;
    let hull = VPolytope::from_points(witness).map_err(fail)?;
    let convex = hull.vertices().len() == witness.len();
    Ok(Check::new(
        name,
        v.empty && convex,
        json!({"witness": points_json(witness), "empty": v.empty, "convex_position": convex,
               "points_checked": v.points_checked, "offending_point": v.witness.map(|p| p.to_string())}),
    ))
}

pub fn thm1_bound_value(alpha: &ExactScalar) -> Result<i64, CliError> {
    let one = ExactScalar::one();
    if *alpha <= one {
        return Err(CliError::Usage(format!("alpha {alpha} must exceed 1")));
    }
    let ratio = alpha / &(alpha - &one);
    Ok(2 * ceil_log(alpha, &ratio).map_err(fail)? + 3)
}

fn thm1_bound(p: &Params, ctx: &RunContext) -> Result<Vec<Check>, CliError> {
    let alphas = p.scalar_list("alphas")?;
    let expected: Vec<i64> = p.list("expected")?;
    if alphas.len() != expected.len() {
        return Err(CliError::Usage("alphas and expected differ in length".into()));
    }
    let mut checks = Vec::new();
    for (a, e) in alphas.iter().zip(&expected) {
        let b = thm1_bound_value(a)?;
        checks.push(Check::new(format!("bound alpha={a}"), b == *e, json!({"alpha": a, "bound": b, "expected": e})));
    }
    let calphas = p.scalar_list("consistency-alphas")?;
    let his: Vec<i64> = p.list("consistency-hi")?;
    if calphas.len() != his.len() {
        return Err(CliError::Usage("consistency-alphas and consistency-hi differ in length".into()));
    }
    for (a, hi) in calphas.iter().zip(&his) {
        let bound = thm1_bound_value(a)?;
        let l = LatticeSpec::exponential(a.clone(), 2).map_err(|e| CliError::Usage(e.to_string()))?;
        let w = Window::exponent_cube(0, *hi, 2);
        let cap = bound as usize + 1;
        let r = max_empty_subset(&l, &w, &ctx.opts(cap, None)).map_err(fail)?;
        let ok = r.max_empty_size as i64 <= bound && !r.wall_budget_hit;
        checks.push(Check {
            name: format!("window max below bound alpha={a} window=[0,{hi}]^2"),
            status: search_status(ok, &r),
            evidence: json!({"bound": bound, "max_empty_size": r.max_empty_size, "exhaustive": r.exhaustive,
                             "nodes_explored": r.nodes_explored, "witness": points_json(&r.witness)}),
        });
        checks.push(reverify(&format!("witness re-verified alpha={a}"), &r.witness, &l)?);
    }
    Ok(checks)
}

fn explat_window(p: &Params, ctx: &RunContext) -> Result<Vec<Check>, CliError> {
    let alpha = p.scalar("alpha")?;
    let hi = p.int("hi")?;
    let expected = p.uint("expected")?;
    let cap = p.uint("cap")?;
    let mut checks = Vec::new();

    let l = LatticeSpec::exponential(alpha.clone(), 2).map_err(|e| CliError::Usage(e.to_string()))?;
    let w = Window::exponent_cube(0, hi, 2);
    let r = max_empty_subset(&l, &w, &ctx.opts(cap, None)).map_err(fail)?;
    checks.push(Check {
        name: "max empty size".into(),
        status: search_status(r.max_empty_size == expected && r.exhaustive, &r),
        evidence: json!({"lattice": l, "window": w, "max_empty_size": r.max_empty_size, "expected": expected,
                         "exhaustive": r.exhaustive, "nodes_explored": r.nodes_explored,
                         "empty_sets_by_size": r.empty_sets_by_size}),
    });
    checks.push(reverify("witness re-verified", &r.witness, &l)?);

    if alpha >= ExactScalar::from_int(2) && r.max_empty_size >= 5 {
        let (pents, complete) = empty_subsets_of_size(&l, &w, 5, &ctx.opts(cap, None)).map_err(fail)?;
        let mut all_empty = true;
        for pent in &pents {
            all_empty &= is_empty_in(pent, &l).map_err(fail)?.empty;
        }
        let cls = classify_pentagons(&l, &pents).map_err(fail)?;
        let status = if !complete {
            Status::Inconclusive
        } else {
            Status::from_bool(cls.all_match && all_empty)
        };
        checks.push(Check {
            name: "empty pentagons match template".into(),
            status,
            evidence: json!({"template": "{(p,q),(r,s),(r-1,q-1),(p+1,q),(r,s+1)}, p<r, q>s",
                             "pentagons": cls.total, "matching": cls.matching, "all_reverified_empty": all_empty,
                             "complete": complete, "non_matching_exponents": cls.non_matching}),
        });
    }

    let ghi = p.int("golden-hi")?;
    let gexp = p.uint("golden-expected")?;
    let g = LatticeSpec::exponential(ExactScalar::golden_ratio(), 2).map_err(fail)?;
    let gw = Window::exponent_cube(0, ghi, 2);
    let gr = max_empty_subset(&g, &gw, &ctx.opts(cap, None)).map_err(fail)?;
    checks.push(Check::new(
        "golden witness found",
        gr.max_empty_size >= gexp,
        json!({"lattice": g, "window": gw, "witness_size": gr.max_empty_size, "expected": gexp}),
    ));
    checks.push(reverify("golden witness re-verified", &gr.witness, &g)?);
    checks.push(Check {
        name: "golden no larger empty set".into(),
        status: search_status(gr.exhaustive && gr.max_empty_size == gexp, &gr),
        evidence: json!({"max_empty_size": gr.max_empty_size, "exhaustive": gr.exhaustive,
                         "nodes_explored": gr.nodes_explored, "empty_sets_by_size": gr.empty_sets_by_size}),
    });
    Ok(checks)
}

fn thm2_hyperbola(p: &Params, ctx: &RunContext) -> Result<Vec<Check>, CliError> {
    let mut instances: Vec<(ExactScalar, usize, u32)> = Vec::new();
    let single = ["alpha", "d", "k"].map(|k| p.is_set(k));
    if single.iter().any(|&s| s) {
        if !single.iter().all(|&s| s) {
            return Err(CliError::Usage("alpha, d and k must be given together".into()));
        }
        instances.push((p.scalar("alpha")?, p.uint("d")?, p.uint("k")? as u32));
    } else {
        for t in p.raw("instances").split(',').filter(|s| !s.is_empty()) {
            let parts: Vec<&str> = t.split(':').collect();
            let bad = || CliError::Usage(format!("instance {t:?} is not alpha:d:k"));
            if parts.len() != 3 {
                return Err(bad());
            }
            let alpha = parse_scalar(parts[0])?;
            let d = parts[1].parse().map_err(|_| bad())?;
            let k = parts[2].parse().map_err(|_| bad())?;
            instances.push((alpha, d, k));
        }
    }
    let max_points = p.uint("search-max-points")?;
    let mut checks = Vec::new();
    for (alpha, d, k) in instances {
        let tag = format!("alpha={alpha} d={d} k={k}");
        let h = hyperbola_polytope(&alpha, d, k).map_err(|e| CliError::Usage(e.to_string()))?;
        let l = LatticeSpec::exponential(alpha.clone(), d).map_err(fail)?;
        let expected = binomial((k as u64) + d as u64 - 1, d as u64 - 1);
        let count = h.polytope.vertices().len();
        let v = is_empty_in(h.polytope.vertices(), &l).map_err(fail)?;
        checks.push(Check::new(
            format!("hyperbola {tag}"),
            expected == count.into() && v.empty,
            json!({"vertices": count, "expected_vertices": expected.to_string(), "empty": v.empty,
                   "points_checked": v.points_checked, "condition_holds": h.condition_holds,
                   "exponents": h.exponents}),
        ));
        let window_points = (k as usize + 1).checked_pow(d as u32).unwrap_or(usize::MAX);
        if window_points <= max_points {
            let w = Window::exponent_cube(0, k as i64, d);
            let r = max_empty_subset(&l, &w, &ctx.opts(count.max(1), Some(count))).map_err(fail)?;
            checks.push(Check {
                name: format!("window search reaches {count} {tag}"),
                status: search_status(r.max_empty_size >= count, &r),
                evidence: json!({"window": w, "max_empty_size": r.max_empty_size, "nodes_explored": r.nodes_explored}),
            });
            checks.push(reverify(&format!("search witness re-verified {tag}"), &r.witness, &l)?);
        }
    }
    Ok(checks)
}

fn fib_syndetic(p: &Params) -> Result<Vec<Check>, CliError> {
    let imax = p.uint("imax")?;
    let n = p.uint("n")?;
    if imax < 2 {
        return Err(CliError::Usage("imax must be at least 2".into()));
    }
    let mut fc = FibonacciContext::new();
    let mut checks = Vec::new();

    let one = ExactScalar::one();
    let two = ExactScalar::from_int(2);
    let mut bad_gaps = Vec::new();
    for i in 1..=imax {
        let gap = fc.vertical_gap(i);
        let rhs = &one - &(&two * &fc.psi.pow(2 * i as u32));
        if gap != rhs || !gap.is_positive() || gap >= one {
            bad_gaps.push(i);
        }
    }
    checks.push(Check::new(
        "vertical distance identity",
        bad_gaps.is_empty(),
        json!({"imax": imax, "identity": "2 phi F_2i - (2 F_2i+1 - 1) = 1 - 2 psi^2i in (0,1)", "failing_i": bad_gaps,
               "gap_at_imax": fc.vertical_gap(imax)}),
    ));

    let binet_ok = fc.check_identities(2 * imax as u32 + 2).is_ok();
    checks.push(Check::new("Binet formula", binet_ok, json!({"up_to": 2 * imax + 2})));

    match fibonacci_polygon(imax + 1) {
        Ok(poly) => {
            let mut ok = poly.slopes.windows(2).all(|w| w[1] < w[0]);
            for (j, s) in poly.slopes.iter().enumerate() {
                let i = j + 1;
                let expect = ExactScalar::from_bigint(-(fc.fib(2 * i + 2) * 2u32)) / ExactScalar::from_bigint(fc.fib(2 * i + 1));
                ok &= *s == expect;
            }
            checks.push(Check::new(
                "slopes -2F_2i+2/F_2i+1 strictly decrease",
                ok,
                json!({"slopes": poly.slopes}),
            ));
        }
        Err(e) => checks.push(Check::new("slopes -2F_2i+2/F_2i+1 strictly decrease", false, json!({"error": e.to_string()}))),
    }

    match fibonacci_syndetic(n) {
        Ok(s) => {
            let (lo, hi) = match &s.a_window {
                LatticeSpec::Explicit { window, .. } => *window,
                _ => return Err(CliError::Failure("syndetic set is not explicit".into())),
            };
            let excluded_ok = s.excluded.windows(2).all(|w| w[1] - w[0] >= 2)
                && s.excluded.iter().all(|&y| lo < y && y < hi);
            checks.push(Check::new(
                format!("A is 2-syndetic on [{lo},{hi}]"),
                s.syndetic && excluded_ok,
                json!({"window": [lo, hi], "excluded": s.excluded}),
            ));
            checks.push(reverify(&format!("prefix hull empty in AxA n={n}"), s.polygon_prefix.vertices(), &s.a_window)?);
        }
        Err(e) => checks.push(Check::new(format!("A is 2-syndetic n={n}"), false, json!({"error": e.to_string()}))),
    }
    Ok(checks)
}

fn thm3_pigeonhole(p: &Params) -> Result<Vec<Check>, CliError> {
    let mmax = p.uint("mmax")? as u64;
    let dmax = p.uint("dmax")?;
    let mut checks = Vec::new();
    for m in (2..=mmax).filter(|&m| least_prime_factor(m) == m) {
        let mut instances = 0u64;
        let mut evaluations = 0u64;
        let mut failures = Vec::new();
        for mask in 1u64..(1 << m) {
            let s: Vec<u64> = (0..m).filter(|r| mask >> r & 1 == 1).collect();
            let k = s.len() as u64;
            for d in 1..=dmax {
                // d < (m-1)/(m-k), or S = Z/m
                if k < m && (d as u64) * (m - k) >= m - 1 {
                    continue;
                }
                let r = residue_pigeonhole_check(&s, m, d).map_err(fail)?;
                instances += 1;
                evaluations += r.evaluations;
                if !r.verified || !r.condition_holds {
                    failures.push(json!({"residues": s, "d": d, "condition_holds": r.condition_holds,
                                         "counterexample": r.counterexample}));
                }
            }
        }
        checks.push(Check::new(
            format!("pigeonhole m={m}"),
            failures.is_empty(),
            json!({"modulus": m, "dmax": dmax, "instances": instances, "evaluations": evaluations, "failures": failures}),
        ));
    }
    let r = residue_pigeonhole_check(&[0, 1], 3, 2).map_err(fail)?;
    checks.push(Check::new(
        "pigeonhole fails for S={0,1} m=3 d=2",
        !r.verified && r.counterexample.is_some(),
        json!({"condition_holds": r.condition_holds, "verified": r.verified, "counterexample": r.counterexample}),
    ));
    Ok(checks)
}

fn prop_mod3(p: &Params, ctx: &RunContext) -> Result<Vec<Check>, CliError> {
    let w = parse_box_window(p.raw("window"), 2)?;
    let cap = p.uint("cap")?;
    let l = LatticeSpec::congruence(&[0, 1], 3, 2).map_err(fail)?;
    let oct = mod3_octagon();
    let mut checks = Vec::new();

    let in_a = oct
        .vertices()
        .iter()
        .all(|v| v.coords().iter().all(|c| c.to_i64().is_some_and(|x| x.rem_euclid(3) <= 1)));
    let mut c = reverify("octagon empty", oct.vertices(), &l)?;
    if oct.vertices().len() != 8 || !in_a {
        c.status = Status::Fail;
    }
    c.evidence["vertex_count"] = json!(oct.vertices().len());
    c.evidence["coordinates_in_A"] = json!(in_a);
    checks.push(c);

    let m3 = residue_multiplicity_search(&l, &w, &[0, 0], 3, &ctx.opts(cap, None)).map_err(fail)?;
    checks.push(Check {
        name: "no empty set with three points of residue (0,0)".into(),
        status: if m3.budget_hit {
            Status::Inconclusive
        } else {
            Status::from_bool(m3.witness.is_none() && m3.exhaustive)
        },
        evidence: json!({"window": w, "witness": m3.witness.as_deref().map(points_json),
                         "exhaustive": m3.exhaustive, "nodes_explored": m3.nodes_explored}),
    });

    let m2 = residue_multiplicity_search(&l, &w, &[0, 0], 2, &ctx.opts(cap, None)).map_err(fail)?;
    match &m2.witness {
        Some(wit) => {
            let mut c = reverify("empty set with two points of residue (0,0)", wit, &l)?;
            let hits = wit
                .iter()
                .filter(|p| p.coords().iter().all(|c| c.to_i64().is_some_and(|x| x.rem_euclid(3) == 0)))
                .count();
            if hits < 2 {
                c.status = Status::Fail;
            }
            c.evidence["residue_hits"] = json!(hits);
            checks.push(c);
        }
        None => checks.push(Check {
            name: "empty set with two points of residue (0,0)".into(),
            status: if m2.budget_hit { Status::Inconclusive } else { Status::Fail },
            evidence: json!({"exhaustive": m2.exhaustive, "nodes_explored": m2.nodes_explored}),
        }),
    }

    let r = max_empty_subset(&l, &w, &ctx.opts(cap, None)).map_err(fail)?;
    checks.push(Check {
        name: "window maximum is 8".into(),
        status: search_status(r.max_empty_size == 8 && r.exhaustive, &r),
        evidence: json!({"window": w, "max_empty_size": r.max_empty_size, "exhaustive": r.exhaustive,
                         "nodes_explored": r.nodes_explored, "empty_sets_by_size": r.empty_sets_by_size}),
    });
    checks.push(reverify("window witness re-verified", &r.witness, &l)?);
    Ok(checks)
}

fn hol_cross(p: &Params) -> Result<Vec<Check>, CliError> {
    let dmin = p.uint("dmin")?.max(2);
    let dmax = p.uint("dmax")?;
    let mut checks = Vec::new();
    for d in dmin..=dmax {
        let poly = hollow_cross(d).map_err(|e| CliError::Usage(e.to_string()))?;
        let zd = LatticeSpec::integer(d).map_err(fail)?;
        let hollow = is_hollow(&poly, &zd).map_err(fail)?;
        let simplicial = poly.is_simplicial();
        let on_planes = poly.vertices().iter().all(|v| {
            let s = v.coords().iter().fold(ExactScalar::zero(), |acc, c| acc + c);
            s.is_zero() || s == ExactScalar::one()
        });
        let count = poly.vertices().len();
        checks.push(Check::new(
            format!("cross d={d}"),
            count == 2 * d && hollow.empty && simplicial && on_planes,
            json!({"vertices": count, "hollow": hollow.empty, "interior_point": hollow.witness.map(|p| p.to_string()),
                   "simplicial": simplicial, "on_two_hyperplanes": on_planes, "facets": poly.facets().len()}),
        ));
    }
    Ok(checks)
}

/// Random full-dimensional, simplicial, hollow lattice polytopes. Points come
/// from a random sub-box with one thin axis, so most draws are hollow.
pub fn random_hollow_simplicial(rng: &mut ChaCha8Rng, d: usize, range: i64) -> VPolytope {
    let zd = LatticeSpec::integer(d).expect("positive dimension");
    loop {
        let thin = rng.gen_range(0..d);
        let bounds: Vec<(i64, i64)> = (0..d)
            .map(|i| {
                let width = if i == thin { rng.gen_range(1..=2) } else { rng.gen_range(1..=2 * range) };
                let lo = rng.gen_range(-range..=range - width);
                (lo, lo + width)
            })
            .collect();
        let n = rng.gen_range(d + 1..=d + 4);
        let pts: Vec<Point> = (0..n)
            .map(|_| Point::from_ints(&bounds.iter().map(|&(lo, hi)| rng.gen_range(lo..=hi)).collect::<Vec<_>>()))
            .collect();
        let Ok(poly) = VPolytope::from_points(&pts) else { continue };
        if !poly.is_full_dimensional() || !poly.is_simplicial() {
            continue;
        }
        if is_hollow(&poly, &zd).map(|v| v.empty).unwrap_or(false) {
            return poly;
        }
    }
}

fn hol_reduction(p: &Params) -> Result<Vec<Check>, CliError> {
    let count = p.uint("count")?;
    let dims: Vec<usize> = p.list("dims")?;
    let range = p.int("range")?;
    let seed: u64 = p.raw("seed").parse().map_err(|_| CliError::Usage("seed must be an unsigned integer".into()))?;
    if dims.is_empty() || range < 1 {
        return Err(CliError::Usage("need at least one dimension and range >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::new();
    for (idx, &d) in dims.iter().enumerate() {
        let share = count / dims.len() + usize::from(idx < count % dims.len());
        let zd = LatticeSpec::integer(d).map_err(|e| CliError::Usage(e.to_string()))?;
        let mut failures = Vec::new();
        let mut total_swaps = 0usize;
        let mut rejected = 0usize;
        let mut nonsimplicial_outputs = 0usize;
        let mut vertex_hist: BTreeMap<usize, usize> = BTreeMap::new();
        for i in 0..share {
            let poly = random_hollow_simplicial(&mut rng, d, range);
            let n = poly.vertices().len();
            *vertex_hist.entry(n).or_default() += 1;
            let input = points_json(poly.vertices());
            match hollow_to_empty_traced(&poly) {
                Ok(red) => {
                    total_swaps += red.swaps.len();
                    rejected += red.swaps.iter().map(|s| s.rejected).sum::<usize>();
                    let out = &red.polytope;
                    nonsimplicial_outputs += usize::from(!out.is_simplicial());
                    let empty = is_empty_in(out.vertices(), &zd).map_err(fail)?.empty;
                    let same = out.vertices().len() == n;
                    let bounded = out.vertices().len() <= 1 << d;
                    if !(empty && same && bounded) {
                        failures.push(json!({"index": i, "input": input, "output": points_json(out.vertices()),
                                             "empty": empty, "same_vertex_count": same}));
                    }
                }
                Err(e) => failures.push(json!({"index": i, "input": input, "error": e.to_string()})),
            }
        }
        checks.push(Check::new(
            format!("reduction d={d}"),
            failures.is_empty(),
            json!({"polytopes": share, "seed": seed, "swaps": total_swaps, "rejected_candidate_swaps": rejected,
                   "nonsimplicial_outputs": nonsimplicial_outputs,
                   "vertex_counts": vertex_hist, "failures": failures}),
        ));
    }
    Ok(checks)
}

fn seg_box(p: &Params) -> Result<Vec<Check>, CliError> {
    let kmax = p.int("kmax")?;
    let dmax = p.uint("dmax")?;
    let mut rows = Vec::new();
    let mut ok = true;
    for d in 1..=dmax {
        for k in 1..=kmax {
            let poly = box_polytope(k, d).map_err(|e| CliError::Usage(e.to_string()))?;
            let count = lattice_point_count(&poly).map_err(fail)?;
            let seg = longest_segment(&poly).map_err(fail)?.length;
            let good = count == (k as u64).pow(d as u32) && seg == (k - 1) as u64;
            ok &= good;
            rows.push(json!({"k": k, "d": d, "lattice_points": count, "longest_segment": seg, "ok": good}));
        }
    }
    Ok(vec![Check::new("box counts and segments", ok, Value::from(rows))])
}

/// Least-squares slope of `ys` against `xs`.
pub fn ls_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

fn seg_ball(p: &Params) -> Result<Vec<Check>, CliError> {
    let ks: Vec<i64> = p.list("ks")?;
    let slope_ks: Vec<i64> = p.list("slope-ks")?;
    let (lo, hi) = (p.float("slope-min")?, p.float("slope-max")?);
    let mut checks = Vec::new();
    let mut rows = Vec::new();
    let mut ok = true;
    for &k in &ks {
        let poly = ball_polytope(k, 2).map_err(|e| CliError::Usage(e.to_string()))?;
        let seg = longest_segment(&poly).map_err(fail)?;
        let good = (seg.length as i64) < k;
        ok &= good;
        rows.push(json!({"k": k, "longest_segment": seg.length, "vertices": poly.vertices().len(),
                         "witness": seg.witness.map(|(a, b)| [a.to_string(), b.to_string()])}));
    }
    checks.push(Check::new("ball segments at most k-1", ok, Value::from(rows)));

    if slope_ks.len() < 2 {
        return Err(CliError::Usage("slope-ks needs at least two values".into()));
    }
    let mut counts = Vec::new();
    for &k in &slope_ks {
        counts.push(ball_polytope(k, 2).map_err(|e| CliError::Usage(e.to_string()))?.vertices().len());
    }
    let xs: Vec<f64> = slope_ks.iter().map(|&k| (k as f64).ln()).collect();
    let ys: Vec<f64> = counts.iter().map(|&c| (c as f64).ln()).collect();
    let slope = ls_slope(&xs, &ys);
    checks.push(Check::new(
        "vertex growth slope",
        (lo..=hi).contains(&slope),
        json!({"ks": slope_ks, "vertex_counts": counts, "slope": format!("{slope:.4}"), "accepted": [lo, hi]}),
    ));
    Ok(checks)
}

fn width_simplex(p: &Params) -> Result<Vec<Check>, CliError> {
    let ds: Vec<usize> = p.list("ds")?;
    let radius = p.uint("radius")? as u32;
    let mut checks = Vec::new();
    for d in ds {
        let poly = dilated_simplex(d).map_err(|e| CliError::Usage(e.to_string()))?;
        let w = lattice_width_search(&poly, radius).map_err(fail)?;
        let zd = LatticeSpec::integer(d).map_err(fail)?;
        let hollow = is_hollow(&poly, &zd).map_err(fail)?;
        checks.push(Check::new(
            format!("width d={d}"),
            w.width == ExactScalar::from_int(d as i64) && hollow.empty,
            json!({"width": w.width, "direction": w.direction, "certified_radius": w.certified_radius,
                   "hollow": hollow.empty}),
        ));
    }
    Ok(checks)
}
