//! Emptiness, hollowness, the hollow-to-empty swap reduction, lattice width
//! and longest lattice segments.

use serde::{Deserialize, Serialize};

use crate::arith::{gcd_vector, ExactScalar};
use crate::geometry::{GeometryError, Point, PointClass, VPolytope};
use crate::lattice::{membership, points_in_polytope, LatticeError, LatticeSpec, PointLabel};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AnalysisError {
    #[error("point {0} is not in the lattice")]
    NotInLattice(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmptinessVerdict {
    pub empty: bool,
    /// Lexicographically least offending point, if any.
    pub witness: Option<Point>,
    pub points_checked: u64,
}

/// Whether `conv(t)` meets the lattice only in vertices of `conv(t)`.
pub fn is_empty_in(t: &[Point], l: &LatticeSpec) -> Result<EmptinessVerdict, AnalysisError> {
    for x in t {
        if !membership(l, x)? {
            return Err(AnalysisError::NotInLattice(x.to_string()));
        }
    }
    let hull = VPolytope::from_points(t)?;
    let pts = points_in_polytope(l, &hull)?;
    let witness = pts.iter().find(|c| c.class != PointLabel::Vertex).map(|c| c.point.clone());
    Ok(EmptinessVerdict { empty: witness.is_none(), witness, points_checked: pts.len() as u64 })
}

/// Whether no lattice point lies in the interior of `p`.
pub fn is_hollow(p: &VPolytope, l: &LatticeSpec) -> Result<EmptinessVerdict, AnalysisError> {
    let pts = points_in_polytope(l, p)?;
    let witness = pts.iter().find(|c| c.class == PointLabel::Interior).map(|c| c.point.clone());
    Ok(EmptinessVerdict { empty: witness.is_none(), witness, points_checked: pts.len() as u64 })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Swap {
    pub removed: Point,
    pub added: Point,
    /// Non-vertex boundary lattice points before the swap.
    pub boundary_before: usize,
    /// Candidate swaps passed over before this one.
    #[serde(default)]
    pub rejected: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Reduction {
    pub polytope: VPolytope,
    pub swaps: Vec<Swap>,
}

pub fn hollow_to_empty(p: &VPolytope) -> Result<VPolytope, AnalysisError> {
    Ok(hollow_to_empty_traced(p)?.polytope)
}

/// Repeatedly trades a vertex `y` of the minimal face of a non-vertex
/// boundary point `x` for `x`, until the polytope is empty. Pairs are tried
/// in lexicographic order of `x`, then `y`. A swap is valid when the result
/// keeps the vertex count, has strictly fewer non-vertex points, and is
/// simplicial or already empty; a state with no valid swap is backed out of.
/// The last polytope need not be simplicial.
pub fn hollow_to_empty_traced(p: &VPolytope) -> Result<Reduction, AnalysisError> {
    let d = p.dim();
    let zd = LatticeSpec::integer(d)?;
    if !p.is_full_dimensional() {
        return Err(AnalysisError::Precondition("polytope is not full-dimensional".into()));
    }
    if !p.is_lattice_polytope() {
        return Err(AnalysisError::Precondition("polytope has non-integral vertices".into()));
    }
    if !p.is_simplicial() {
        return Err(AnalysisError::Precondition("polytope is not simplicial".into()));
    }
    if let Some(w) = is_hollow(p, &zd)?.witness {
        return Err(AnalysisError::Precondition(format!("polytope is not hollow: {w} is interior")));
    }

    let n_vertices = p.vertices().len();
    let mut search = SwapSearch { zd, n_vertices, states: 0, dead_end: None };
    let mut swaps = Vec::new();
    let boundary = non_vertex_points(p, &search.zd)?;
    let Some(current) = search.descend(p, &boundary, &mut swaps)? else {
        return Err(AnalysisError::InvariantViolation(search.dead_end.unwrap_or_default()));
    };
    if n_vertices > 1 << d {
        return Err(AnalysisError::InvariantViolation(format!(
            "empty lattice polytope with {n_vertices} vertices exceeds 2^{d}"
        )));
    }
    Ok(Reduction { polytope: current, swaps })
}

const MAX_SWAP_STATES: usize = 10_000;

struct SwapSearch {
    zd: LatticeSpec,
    n_vertices: usize,
    states: usize,
    /// Diagnostic for the first state with no valid swap.
    dead_end: Option<String>,
}

impl SwapSearch {
    /// Depth-first over valid swaps in lexicographic order; `None` if every
    /// sequence from `current` gets stuck.
    fn descend(&mut self, current: &VPolytope, boundary: &[Point], swaps: &mut Vec<Swap>) -> Result<Option<VPolytope>, AnalysisError> {
        if boundary.is_empty() {
            return Ok(Some(current.clone()));
        }
        self.states += 1;
        if self.states > MAX_SWAP_STATES {
            return Err(AnalysisError::InvariantViolation(format!("no reduction found within {MAX_SWAP_STATES} states")));
        }
        let mut rejected = Vec::new();
        for x in boundary {
            let PointClass::Boundary { minimal_face } = current.classify(x) else {
                return Err(AnalysisError::InvariantViolation(format!("{x} was listed as boundary but is not")));
            };
            for &yi in &minimal_face {
                let y = &current.vertices()[yi];
                let mut next: Vec<Point> = current.vertices().iter().filter(|v| *v != y).cloned().collect();
                next.push(x.clone());
                let q = VPolytope::from_points(&next)?;
                if !q.is_full_dimensional() || q.vertices().len() != self.n_vertices {
                    rejected.push(format!("{y} -> {x}: vertex count changed to {}", q.vertices().len()));
                    continue;
                }
                let q_boundary = non_vertex_points(&q, &self.zd)?;
                if q_boundary.len() >= boundary.len() {
                    rejected.push(format!(
                        "{y} -> {x}: non-vertex lattice points went from {} to {}",
                        boundary.len(),
                        q_boundary.len()
                    ));
                    continue;
                }
                if !q_boundary.is_empty() && !q.is_simplicial() {
                    rejected.push(format!("{y} -> {x}: result is not simplicial"));
                    continue;
                }
                swaps.push(Swap { removed: y.clone(), added: x.clone(), boundary_before: boundary.len(), rejected: rejected.len() });
                if let Some(done) = self.descend(&q, &q_boundary, swaps)? {
                    return Ok(Some(done));
                }
                swaps.pop();
                rejected.push(format!("{y} -> {x}: every continuation gets stuck"));
            }
        }
        if self.dead_end.is_none() {
            self.dead_end =
                Some(format!("no valid swap on vertices {}: {}", fmt_points(current.vertices()), rejected.join("; ")));
        }
        Ok(None)
    }
}

fn non_vertex_points(p: &VPolytope, zd: &LatticeSpec) -> Result<Vec<Point>, AnalysisError> {
    Ok(points_in_polytope(zd, p)?.into_iter().filter(|c| c.class != PointLabel::Vertex).map(|c| c.point).collect())
}

fn fmt_points(pts: &[Point]) -> String {
    pts.iter().map(Point::to_string).collect::<Vec<_>>().join(" ")
}

/// `max⟨x, v⟩ − min⟨x, v⟩` over the vertices of `p`.
pub fn directional_width(p: &VPolytope, v: &[i64]) -> Result<ExactScalar, AnalysisError> {
    if v.len() != p.dim() {
        return Err(AnalysisError::Precondition(format!("direction has {} entries, polytope dimension {}", v.len(), p.dim())));
    }
    if v.iter().all(|&x| x == 0) {
        return Err(AnalysisError::Precondition("direction is the zero vector".into()));
    }
    let dir: Vec<ExactScalar> = v.iter().map(|&x| ExactScalar::from_int(x)).collect();
    let mut vals = p.vertices().iter().map(|x| x.dot(&dir));
    let first = vals.next().expect("nonempty polytope");
    let (lo, hi) = vals.fold((first.clone(), first), |(lo, hi), x| {
        if x < lo {
            (x, hi)
        } else if x > hi {
            (lo, x)
        } else {
            (lo, hi)
        }
    });
    Ok(hi - lo)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WidthResult {
    pub direction: Vec<i64>,
    pub width: ExactScalar,
    /// The width is minimal over primitive directions with max-norm at most this.
    pub certified_radius: u32,
}

/// Minimum directional width over primitive integer directions with
/// `‖v‖∞ ≤ radius` and first nonzero entry positive. Among directions of
/// equal width the smallest ℓ1 norm wins, then the lexicographically
/// greatest vector, so `e_1` precedes `e_2`.
pub fn lattice_width_search(p: &VPolytope, radius: u32) -> Result<WidthResult, AnalysisError> {
    if radius == 0 {
        return Err(AnalysisError::Precondition("radius must be at least 1".into()));
    }
    let d = p.dim();
    let r = radius as i64;
    let mut best: Option<(ExactScalar, Vec<i64>)> = None;
    let mut v = vec![-r; d];
    loop {
        let canonical = v.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0);
        if canonical && gcd_vector(&v) == 1 {
            let w = directional_width(p, &v)?;
            let better = best.as_ref().is_none_or(|(bw, bv)| {
                w.cmp(bw).then_with(|| l1(&v).cmp(&l1(bv))).then_with(|| bv.cmp(&v)).is_lt()
            });
            if better {
                best = Some((w, v.clone()));
            }
        }
        let Some(pos) = (0..d).rev().find(|&i| v[i] < r) else { break };
        v[pos] += 1;
        for x in v.iter_mut().skip(pos + 1) {
            *x = -r;
        }
    }
    let (width, direction) = best.expect("e_d is always a candidate");
    Ok(WidthResult { direction, width, certified_radius: radius })
}

fn l1(v: &[i64]) -> u64 {
    v.iter().map(|x| x.unsigned_abs()).sum()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LongestSegment {
    pub length: u64,
    pub witness: Option<(Point, Point)>,
}

/// Longest lattice segment with both endpoints lattice points of `p`.
pub fn longest_segment(p: &VPolytope) -> Result<LongestSegment, AnalysisError> {
    if !p.is_lattice_polytope() {
        return Err(AnalysisError::Precondition("polytope has non-integral vertices".into()));
    }
    let zd = LatticeSpec::integer(p.dim())?;
    let pts: Vec<Point> = points_in_polytope(&zd, p)?.into_iter().map(|c| c.point).collect();
    let ints: Vec<Vec<i64>> = pts
        .iter()
        .map(|x| x.to_i64s().ok_or_else(|| AnalysisError::Precondition(format!("{x} exceeds i64"))))
        .collect::<Result<_, _>>()?;
    let mut best = LongestSegment { length: 0, witness: None };
    let mut diff = vec![0i64; p.dim()];
    for i in 0..ints.len() {
        for j in i + 1..ints.len() {
            for (k, dk) in diff.iter_mut().enumerate() {
                *dk = ints[j][k] - ints[i][k];
            }
            let g = gcd_vector(&diff);
            if g > best.length {
                best = LongestSegment { length: g, witness: Some((pts[i].clone(), pts[j].clone())) };
            }
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Point {
        Point::from_ints(c)
    }

    fn poly(v: &[&[i64]]) -> VPolytope {
        VPolytope::from_points(&v.iter().map(|c| p(c)).collect::<Vec<_>>()).unwrap()
    }

    fn cube(d: usize) -> Vec<Point> {
        (0..1u32 << d).map(|m| p(&(0..d).map(|i| ((m >> i) & 1) as i64).collect::<Vec<_>>())).collect()
    }

    #[test]
    fn emptiness_examples() {
        for d in 1..=4 {
            assert!(is_empty_in(&cube(d), &LatticeSpec::integer(d).unwrap()).unwrap().empty);
        }
        let v = is_empty_in(&[p(&[0, 0]), p(&[2, 0]), p(&[0, 1])], &LatticeSpec::integer(2).unwrap()).unwrap();
        assert!(!v.empty);
        assert_eq!(v.witness, Some(p(&[1, 0])));
        let e2 = LatticeSpec::exponential(ExactScalar::from_int(2), 2).unwrap();
        assert!(is_empty_in(&[p(&[1, 4]), p(&[2, 2]), p(&[4, 1])], &e2).unwrap().empty);
        assert!(matches!(is_empty_in(&[p(&[3, 1])], &e2), Err(AnalysisError::NotInLattice(_))));
    }

    #[test]
    fn collinear_sets() {
        let z2 = LatticeSpec::integer(2).unwrap();
        assert!(is_empty_in(&[p(&[0, 0]), p(&[1, 1])], &z2).unwrap().empty);
        let v = is_empty_in(&[p(&[0, 0]), p(&[2, 2])], &z2).unwrap();
        assert_eq!(v.witness, Some(p(&[1, 1])));
        let v = is_empty_in(&[p(&[0, 0]), p(&[1, 1]), p(&[2, 2])], &z2).unwrap();
        assert_eq!(v.witness, Some(p(&[1, 1])));
    }

    #[test]
    fn hollowness_examples() {
        let z2 = LatticeSpec::integer(2).unwrap();
        assert!(is_hollow(&poly(&[&[0, 0], &[1, 0], &[0, 5], &[1, 5]]), &z2).unwrap().empty);
        let v = is_hollow(&poly(&[&[0, 0], &[3, 0], &[0, 3]]), &z2).unwrap();
        assert_eq!(v.witness, Some(p(&[1, 1])));
    }

    #[test]
    fn reduction_examples() {
        let r = hollow_to_empty_traced(&poly(&[&[0, 0], &[2, 0], &[0, 1]])).unwrap();
        assert_eq!(r.polytope, poly(&[&[1, 0], &[2, 0], &[0, 1]]));
        assert_eq!(r.swaps.len(), 1);
        let unit = poly(&[&[0, 0], &[1, 0], &[0, 1]]);
        assert_eq!(hollow_to_empty(&unit).unwrap(), unit);
        let r = hollow_to_empty_traced(&poly(&[&[0, 0], &[3, 0], &[0, 1]])).unwrap();
        assert_eq!(r.swaps.len(), 2);
        assert_eq!(r.polytope.vertices().len(), 3);
        assert!(is_empty_in(r.polytope.vertices(), &LatticeSpec::integer(2).unwrap()).unwrap().empty);
    }

    #[test]
    fn reduction_preconditions() {
        let fat = poly(&[&[0, 0], &[3, 0], &[0, 3]]);
        assert!(matches!(hollow_to_empty(&fat), Err(AnalysisError::Precondition(_))));
        let cube3 = VPolytope::from_points(&cube(3)).unwrap();
        assert!(matches!(hollow_to_empty(&cube3), Err(AnalysisError::Precondition(_))));
        let strip = poly(&[&[0, 0], &[2, 0], &[0, 1], &[2, 1]]);
        let r = hollow_to_empty_traced(&strip).unwrap();
        assert_eq!(r.polytope.vertices().len(), 4);
        assert!(is_empty_in(r.polytope.vertices(), &LatticeSpec::integer(2).unwrap()).unwrap().empty);
    }

    #[test]
    fn last_swap_may_lose_simpliciality() {
        // (-3,0,3) is the only non-vertex point; both swaps create the facet
        // (-3,-2,2) (-3,0,3) (-2,-4,2) (-2,-2,3).
        let c = poly(&[&[-3, -2, 2], &[-3, -1, 3], &[-3, 1, 3], &[-2, -4, 2], &[-2, -2, 3]]);
        assert!(c.is_simplicial());
        let r = hollow_to_empty_traced(&c).unwrap();
        assert_eq!(r.swaps.len(), 1);
        assert_eq!(r.swaps[0].added, p(&[-3, 0, 3]));
        assert_eq!(r.polytope.vertices().len(), 5);
        assert!(!r.polytope.is_simplicial());
        assert!(is_empty_in(r.polytope.vertices(), &LatticeSpec::integer(3).unwrap()).unwrap().empty);
    }

    #[test]
    fn widths() {
        let t = poly(&[&[0, 0], &[2, 0], &[0, 2]]);
        assert_eq!(directional_width(&t, &[1, 0]).unwrap(), ExactScalar::from_int(2));
        assert_eq!(directional_width(&t, &[1, 1]).unwrap(), ExactScalar::from_int(2));
        assert!(directional_width(&t, &[0, 0]).is_err());
        let c = VPolytope::from_points(&cube(3)).unwrap();
        assert_eq!(directional_width(&c, &[1, 1, 1]).unwrap(), ExactScalar::from_int(3));

        assert_eq!(lattice_width_search(&t, 2).unwrap().width, ExactScalar::from_int(2));
        let sq = VPolytope::from_points(&cube(2)).unwrap();
        let w = lattice_width_search(&sq, 1).unwrap();
        assert_eq!((w.direction, w.width), (vec![1, 0], ExactScalar::from_int(1)));
        let s3 = poly(&[&[0, 0, 0], &[3, 0, 0], &[0, 3, 0], &[0, 0, 3]]);
        assert_eq!(lattice_width_search(&s3, 2).unwrap().width, ExactScalar::from_int(3));
    }

    #[test]
    fn segments() {
        let b = poly(&[&[1, 1], &[3, 1], &[1, 3], &[3, 3]]);
        let s = longest_segment(&b).unwrap();
        assert_eq!(s.length, 2);
        assert_eq!(s.witness, Some((p(&[1, 1]), p(&[1, 3]))));
        assert_eq!(longest_segment(&VPolytope::from_points(&cube(2)).unwrap()).unwrap().length, 1);
        let dot = poly(&[&[1, 1]]);
        assert_eq!(longest_segment(&dot).unwrap(), LongestSegment { length: 0, witness: None });
    }
}
