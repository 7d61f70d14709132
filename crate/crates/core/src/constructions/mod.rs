//! Explicit point sets and polytopes, generated exactly.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::analysis::{is_empty_in, AnalysisError};
use crate::arith::{binomial, ExactScalar};
use crate::geometry::{GeometryError, Point, VPolytope};
use crate::lattice::{points_in_polytope, LatticeError, LatticeSpec, PointLabel};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConstructionError {
    #[error("invalid parameters: {0}")]
    Invalid(String),
    #[error("construction invariant failed: {0}")]
    Invariant(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
}

fn invariant(ok: bool, what: impl FnOnce() -> String) -> Result<(), ConstructionError> {
    if ok {
        Ok(())
    } else {
        Err(ConstructionError::Invariant(what()))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct HyperbolaPolytope {
    pub alpha: ExactScalar,
    pub d: usize,
    pub k: u32,
    pub polytope: VPolytope,
    /// Exponent vectors of the vertices, in vertex order.
    pub exponents: Vec<Vec<u32>>,
    /// `d·α^((k+1)/d) ≥ α^k + d − 1`, the sufficient condition for emptiness.
    pub condition_holds: bool,
}

/// Points `(α^{n_1}, …, α^{n_d})` with `Σ n_i = k`, all on `∏ x_i = α^k`.
pub fn hyperbola_polytope(alpha: &ExactScalar, d: usize, k: u32) -> Result<HyperbolaPolytope, ConstructionError> {
    if *alpha <= ExactScalar::one() || d < 2 || k < 1 {
        return Err(ConstructionError::Invalid(format!("need alpha > 1, d >= 2, k >= 1 (got {alpha}, {d}, {k})")));
    }
    let mut exps: Vec<Vec<u32>> = Vec::new();
    compositions(k, d, &mut Vec::new(), &mut exps);
    let points: Vec<Point> = exps
        .iter()
        .map(|e| Point::new(e.iter().map(|&n| alpha.pow(n)).collect()))
        .collect::<Result<_, _>>()?;
    let polytope = VPolytope::from_points(&points)?;
    let expected = binomial(k as u64 + d as u64 - 1, d as u64 - 1);
    invariant(BigInt::from(polytope.vertices().len()) == BigInt::from(expected.clone()), || {
        format!("{} vertices, expected {expected}", polytope.vertices().len())
    })?;
    let exponents = polytope
        .vertices()
        .iter()
        .map(|v| exps[points.iter().position(|p| p == v).expect("vertex comes from input")].clone())
        .collect();

    // d^d·α^{k+1} ≥ (α^k + d − 1)^d, both sides positive.
    let dd = ExactScalar::from_int(d as i64);
    let lhs = dd.pow(d as u32) * alpha.pow(k + 1);
    let rhs = (alpha.pow(k) + ExactScalar::from_int(d as i64 - 1)).pow(d as u32);
    Ok(HyperbolaPolytope { alpha: alpha.clone(), d, k, polytope, exponents, condition_holds: lhs >= rhs })
}

fn compositions(k: u32, parts: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if parts == 1 {
        prefix.push(k);
        out.push(prefix.clone());
        prefix.pop();
        return;
    }
    for first in 0..=k {
        prefix.push(first);
        compositions(k - first, parts - 1, prefix, out);
        prefix.pop();
    }
}

/// Fibonacci numbers and the golden ratio and its conjugate in ℚ(√5).
#[derive(Clone, Debug)]
pub struct FibonacciContext {
    pub phi: ExactScalar,
    pub psi: ExactScalar,
    fib: Vec<BigInt>,
}

impl Default for FibonacciContext {
    fn default() -> Self {
        Self::new()
    }
}

impl FibonacciContext {
    pub fn new() -> Self {
        let phi = ExactScalar::golden_ratio();
        let psi = ExactScalar::one() - &phi;
        FibonacciContext { phi, psi, fib: vec![BigInt::zero(), BigInt::one()] }
    }

    pub fn fib(&mut self, n: usize) -> BigInt {
        while self.fib.len() <= n {
            let k = self.fib.len();
            let next = &self.fib[k - 1] + &self.fib[k - 2];
            self.fib.push(next);
        }
        self.fib[n].clone()
    }

    /// `(φ^n − ψ^n) / (φ − ψ)`, which must equal `F_n`.
    pub fn binet(&self, n: u32) -> ExactScalar {
        (self.phi.pow(n) - self.psi.pow(n)) / (&self.phi - &self.psi)
    }

    /// `φψ = −1`, `φ + ψ = 1` and Binet's formula for `F_0..=F_n`.
    pub fn check_identities(&mut self, n: u32) -> Result<(), ConstructionError> {
        invariant(&self.phi * &self.psi == ExactScalar::from_int(-1), || "phi*psi != -1".into())?;
        invariant(&self.phi + &self.psi == ExactScalar::one(), || "phi+psi != 1".into())?;
        for i in 0..=n {
            let f = ExactScalar::from_bigint(self.fib(i as usize));
            invariant(self.binet(i) == f, || format!("Binet's formula fails at n = {i}"))?;
        }
        Ok(())
    }

    /// `2φ·F_{2i} − (2F_{2i+1} − 1)`: how far `p_i` lies below `y = −2φx`.
    pub fn vertical_gap(&mut self, i: usize) -> ExactScalar {
        let two = ExactScalar::from_int(2);
        let f2i = ExactScalar::from_bigint(self.fib(2 * i));
        let f2i1 = ExactScalar::from_bigint(self.fib(2 * i + 1));
        &two * &self.phi * f2i - (&two * f2i1 - ExactScalar::one())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FibonacciPolygon {
    pub points: Vec<Point>,
    /// `slope(p_i, p_{i+1})` for consecutive points.
    pub slopes: Vec<ExactScalar>,
    /// `1 − 2ψ^{2i}` for each point.
    pub gaps: Vec<ExactScalar>,
}

/// `p_i = (−F_{2i}, 2F_{2i+1} − 1)` for `i = 1..=n`, with the slope and
/// distance identities checked exactly.
pub fn fibonacci_polygon(n: usize) -> Result<FibonacciPolygon, ConstructionError> {
    if n < 1 {
        return Err(ConstructionError::Invalid("need at least one point".into()));
    }
    let mut ctx = FibonacciContext::new();
    let two = BigInt::from(2);
    let mut points = Vec::with_capacity(n);
    let mut gaps = Vec::with_capacity(n);
    for i in 1..=n {
        let x = -ctx.fib(2 * i);
        let y = &two * ctx.fib(2 * i + 1) - BigInt::one();
        points.push(Point::new(vec![ExactScalar::from_bigint(x), ExactScalar::from_bigint(y)])?);
        let gap = ctx.vertical_gap(i);
        let expect = ExactScalar::one() - ExactScalar::from_int(2) * ctx.psi.pow(2 * i as u32);
        invariant(gap == expect, || format!("vertical gap of p_{i} is {gap}, expected {expect}"))?;
        invariant(gap.is_positive() && gap < ExactScalar::one(), || format!("gap {gap} of p_{i} is outside (0, 1)"))?;
        gaps.push(gap);
    }
    let mut slopes: Vec<ExactScalar> = Vec::with_capacity(n.saturating_sub(1));
    for i in 1..n {
        let (p, q) = (&points[i - 1], &points[i]);
        let slope = (q.coord(1) - p.coord(1)) / (q.coord(0) - p.coord(0));
        let expect = ExactScalar::from_bigint(-&two * ctx.fib(2 * i + 2)) / ExactScalar::from_bigint(ctx.fib(2 * i + 1));
        invariant(slope == expect, || format!("slope(p_{i}, p_{}) is {slope}, expected {expect}", i + 1))?;
        if let Some(prev) = slopes.last() {
            invariant(slope < *prev, || format!("slopes do not decrease at p_{i}"))?;
        }
        slopes.push(slope);
    }
    Ok(FibonacciPolygon { points, slopes, gaps })
}

#[derive(Clone, Debug, Serialize)]
pub struct FibonacciSyndetic {
    /// `A` materialized on its window, as an explicit product set in the plane.
    pub a_window: LatticeSpec,
    pub polygon_prefix: VPolytope,
    /// y-coordinates of the non-vertex lattice points of the prefix hull.
    pub excluded: Vec<i64>,
    pub syndetic: bool,
    pub prefix_empty: bool,
}

/// The 2-syndetic set `A` for the first `n` Fibonacci points. Its window
/// spans every coordinate of the prefix hull, so the negative x-range is
/// covered too; only y-values of non-vertex lattice points are removed.
pub fn fibonacci_syndetic(n: usize) -> Result<FibonacciSyndetic, ConstructionError> {
    if n < 3 {
        return Err(ConstructionError::Invalid("need at least three points".into()));
    }
    let poly = fibonacci_polygon(n)?;
    let hull = VPolytope::from_points(&poly.points)?;
    invariant(hull.vertices().len() == n, || format!("only {} of {n} points are hull vertices", hull.vertices().len()))?;
    let to_i64 = |c: &ExactScalar| c.to_i64().ok_or_else(|| ConstructionError::Invalid("coordinates exceed i64".into()));
    let mut lo = i64::MAX;
    let mut hi = i64::MIN;
    for v in hull.vertices() {
        for c in v.coords() {
            let c = to_i64(c)?;
            lo = lo.min(c);
            hi = hi.max(c);
        }
    }
    let z2 = LatticeSpec::integer(2)?;
    let mut excluded: Vec<i64> = points_in_polytope(&z2, &hull)?
        .into_iter()
        .filter(|c| c.class != PointLabel::Vertex)
        .map(|c| to_i64(c.point.coord(1)))
        .collect::<Result<_, _>>()?;
    let before = excluded.len();
    excluded.sort_unstable();
    excluded.dedup();
    invariant(excluded.len() == before, || "two lattice points of the hull share a y-coordinate".into())?;
    for v in hull.vertices() {
        let y = to_i64(v.coord(1))?;
        invariant(excluded.binary_search(&y).is_err(), || format!("vertex y-coordinate {y} was removed"))?;
    }
    let base: Vec<i64> = (lo..=hi).filter(|y| excluded.binary_search(y).is_err()).collect();
    let syndetic = excluded.windows(2).all(|w| w[1] - w[0] >= 2)
        && excluded.first().is_none_or(|&y| y > lo)
        && excluded.last().is_none_or(|&y| y < hi);
    invariant(syndetic, || "A misses two consecutive integers".into())?;
    let a_window = LatticeSpec::explicit(base, (lo, hi), 2)?;
    let verdict = is_empty_in(hull.vertices(), &a_window)?;
    invariant(verdict.empty, || format!("prefix hull is not empty in AxA: {:?}", verdict.witness.map(|p| p.to_string())))?;
    Ok(FibonacciSyndetic { a_window, polygon_prefix: hull, excluded, syndetic, prefix_empty: verdict.empty })
}

pub const MOD3_OCTAGON: [[i64; 2]; 8] = [[0, 0], [1, 0], [3, 1], [6, 3], [7, 4], [6, 4], [4, 3], [1, 1]];

/// The eight-vertex empty polygon in `({0,1} + 3ℤ)²`.
pub fn mod3_octagon() -> VPolytope {
    let pts: Vec<Point> = MOD3_OCTAGON.iter().map(|c| Point::from_ints(c)).collect();
    VPolytope::from_points(&pts).expect("fixed octagon")
}

/// `{e_i} ∪ {e_1 − e_i}` for `i = 1..=d`; the second family contains the origin.
pub fn hollow_cross(d: usize) -> Result<VPolytope, ConstructionError> {
    if d < 2 {
        return Err(ConstructionError::Invalid("need d >= 2".into()));
    }
    let mut pts = Vec::with_capacity(2 * d);
    for i in 0..d {
        let mut e = vec![0i64; d];
        e[i] = 1;
        pts.push(Point::from_ints(&e));
        let mut f = vec![0i64; d];
        f[0] += 1;
        f[i] -= 1;
        pts.push(Point::from_ints(&f));
    }
    Ok(VPolytope::from_points(&pts)?)
}

/// `[1, k]^d`; a single point when `k = 1`.
pub fn box_polytope(k: i64, d: usize) -> Result<VPolytope, ConstructionError> {
    if k < 1 || d < 1 {
        return Err(ConstructionError::Invalid("need k >= 1 and d >= 1".into()));
    }
    let corners: Vec<Point> = (0..1u64 << d)
        .map(|m| Point::from_ints(&(0..d).map(|i| if (m >> i) & 1 == 1 { k } else { 1 }).collect::<Vec<_>>()))
        .collect();
    Ok(VPolytope::from_points(&corners)?)
}

/// Hull of the lattice points with `Σ x_i² ≤ ((k−1)/2)²`. Only the two
/// extreme points of each lattice line parallel to the last axis are kept,
/// which does not change the hull.
pub fn ball_polytope(k: i64, d: usize) -> Result<VPolytope, ConstructionError> {
    if k < 2 || d < 2 {
        return Err(ConstructionError::Invalid("need k >= 2 and d >= 2".into()));
    }
    let r2 = (k - 1) * (k - 1); // compare 4·Σx² with (k−1)²
    let r = (k - 1) / 2;
    let mut pts = Vec::new();
    let mut head = vec![-r; d - 1];
    loop {
        let s: i64 = head.iter().map(|x| 4 * x * x).sum();
        if s <= r2 {
            let mut t = 0i64;
            while 4 * (t + 1) * (t + 1) + s <= r2 {
                t += 1;
            }
            for last in [-t, t] {
                let mut c = head.clone();
                c.push(last);
                pts.push(Point::from_ints(&c));
            }
        }
        let Some(pos) = (0..d - 1).rev().find(|&i| head[i] < r) else { break };
        head[pos] += 1;
        for x in head.iter_mut().skip(pos + 1) {
            *x = -r;
        }
    }
    Ok(VPolytope::from_points(&pts)?)
}

/// `conv(0, d·e_1, …, d·e_d)`.
pub fn dilated_simplex(d: usize) -> Result<VPolytope, ConstructionError> {
    if d < 1 {
        return Err(ConstructionError::Invalid("need d >= 1".into()));
    }
    let mut pts = vec![Point::origin(d)];
    for i in 0..d {
        let mut e = vec![0i64; d];
        e[i] = d as i64;
        pts.push(Point::from_ints(&e));
    }
    Ok(VPolytope::from_points(&pts)?)
}

/// Lattice points of a lattice polytope, counted exactly.
pub fn lattice_point_count(p: &VPolytope) -> Result<u64, ConstructionError> {
    let zd = LatticeSpec::integer(p.dim())?;
    Ok(points_in_polytope(&zd, p)?.len() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{is_hollow, lattice_width_search, longest_segment};
    use crate::geometry::orientation;
    use crate::lattice::membership;

    fn p(c: &[i64]) -> Point {
        Point::from_ints(c)
    }

    fn s(x: &str) -> ExactScalar {
        x.parse().unwrap()
    }

    #[test]
    fn hyperbola_examples() {
        let h = hyperbola_polytope(&s("2"), 2, 2).unwrap();
        assert_eq!(h.polytope.vertices(), &[p(&[1, 4]), p(&[2, 2]), p(&[4, 1])]);
        assert!(h.condition_holds);
        let h = hyperbola_polytope(&s("101/100"), 2, 10).unwrap();
        assert_eq!(h.polytope.vertices().len(), 11);
        assert!(h.condition_holds);
        let h = hyperbola_polytope(&s("5/4"), 3, 2).unwrap();
        assert_eq!(h.polytope.vertices().len(), 6);
        assert!(h.condition_holds);
        assert!(!hyperbola_polytope(&s("3"), 2, 3).unwrap().condition_holds);
    }

    #[test]
    fn hyperbola_counts() {
        for d in 2..=4 {
            for k in 1..=6 {
                let h = hyperbola_polytope(&s("2"), d, k).unwrap();
                assert_eq!(BigInt::from(h.polytope.vertices().len()), BigInt::from(binomial((k as usize + d - 1) as u64, d as u64 - 1)));
            }
        }
    }

    #[test]
    fn fibonacci_points() {
        let f = fibonacci_polygon(3).unwrap();
        assert_eq!(f.points, vec![p(&[-1, 3]), p(&[-3, 9]), p(&[-8, 25])]);
        assert_eq!(f.slopes[0], s("-3"));
        let mut ctx = FibonacciContext::new();
        ctx.check_identities(40).unwrap();
        assert!(fibonacci_polygon(20).is_ok());
    }

    #[test]
    fn fibonacci_set() {
        let f = fibonacci_syndetic(3).unwrap();
        for y in [3, 9, 25] {
            assert!(membership(&f.a_window, &p(&[y, y])).unwrap());
        }
        assert!(f.syndetic && f.prefix_empty);
        assert!(fibonacci_syndetic(6).unwrap().prefix_empty);
    }

    #[test]
    fn octagon() {
        let o = mod3_octagon();
        assert_eq!(o.vertices().len(), 8);
        let a = LatticeSpec::congruence(&[0, 1], 3, 2).unwrap();
        assert!(is_empty_in(o.vertices(), &a).unwrap().empty);
        let ring: Vec<Point> = MOD3_OCTAGON.iter().map(|c| p(c)).collect();
        for i in 0..8 {
            let t = [ring[i].clone(), ring[(i + 1) % 8].clone(), ring[(i + 2) % 8].clone()];
            assert_eq!(orientation(&t).unwrap(), crate::geometry::Sign::Positive);
        }
    }

    #[test]
    fn crosses() {
        let c = hollow_cross(2).unwrap();
        assert_eq!(c.vertices(), &[p(&[0, 0]), p(&[0, 1]), p(&[1, -1]), p(&[1, 0])]);
        for d in 2..=5 {
            let c = hollow_cross(d).unwrap();
            assert_eq!(c.vertices().len(), 2 * d);
            assert!(c.is_simplicial());
            assert!(is_hollow(&c, &LatticeSpec::integer(d).unwrap()).unwrap().empty);
        }
    }

    #[test]
    fn boxes_and_balls() {
        let b = box_polytope(3, 2).unwrap();
        assert_eq!(lattice_point_count(&b).unwrap(), 9);
        assert_eq!(longest_segment(&b).unwrap().length, 2);
        let dot = box_polytope(1, 3).unwrap();
        assert_eq!(lattice_point_count(&dot).unwrap(), 1);
        let ball = ball_polytope(5, 2).unwrap();
        assert_eq!(ball.vertices(), &[p(&[-2, 0]), p(&[0, -2]), p(&[0, 2]), p(&[2, 0])]);
        assert_eq!(lattice_point_count(&ball).unwrap(), 13);
        assert!(longest_segment(&ball).unwrap().length <= 4);
        assert_eq!(ball_polytope(2, 2).unwrap().vertices(), &[p(&[0, 0])]);
        assert_eq!(ball_polytope(5, 3).unwrap().vertices().len(), 14);
    }

    #[test]
    fn simplices() {
        let t = dilated_simplex(2).unwrap();
        assert_eq!(t.vertices(), &[p(&[0, 0]), p(&[0, 2]), p(&[2, 0])]);
        assert!(is_hollow(&t, &LatticeSpec::integer(2).unwrap()).unwrap().empty);
        assert_eq!(lattice_width_search(&t, 2).unwrap().width, s("2"));
        assert_eq!(lattice_width_search(&dilated_simplex(3).unwrap(), 2).unwrap().width, s("3"));
    }
}
