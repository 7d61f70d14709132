//! Point-set oracles: membership and finite window enumeration for ℤ^d,
//! exponential lattices, congruence products and explicit product sets.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{ceil_log, ArithError, ExactScalar};
use crate::geometry::{GeometryError, Point, PointClass, VPolytope};

pub const DEFAULT_ENUM_BUDGET: u64 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LatticeError {
    #[error("invalid lattice: {0}")]
    InvalidSpec(String),
    #[error("invalid window: {0}")]
    InvalidWindow(String),
    #[error("point {point} has dimension {found}, lattice has dimension {expected}")]
    DimensionMismatch { point: String, expected: usize, found: usize },
    #[error("{0} lies outside the window on which the explicit set is defined")]
    OutsideWindow(String),
    #[error("window holds {count} candidate points, above the budget {budget}")]
    WindowTooLarge { count: String, budget: u64 },
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// A discrete product set `S^d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawSpec", into = "RawSpec")]
pub enum LatticeSpec {
    Integer { d: usize },
    /// `{α^n : n ≥ 0}^d`.
    Exponential { alpha: ExactScalar, d: usize },
    /// `(residues + modulus·ℤ)^d`.
    Congruence { residues: Vec<u64>, modulus: u64, d: usize },
    /// `base^d`, known only on `window`; asking about anything outside is an error.
    Explicit { base: Vec<i64>, window: (i64, i64), d: usize },
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum RawSpec {
    Integer { d: usize },
    Exponential { alpha: ExactScalar, d: usize },
    Congruence { residues: Vec<u64>, modulus: u64, d: usize },
    Explicit { base: Vec<i64>, window: (i64, i64), d: usize },
}

impl TryFrom<RawSpec> for LatticeSpec {
    type Error = LatticeError;
    fn try_from(raw: RawSpec) -> Result<Self, LatticeError> {
        match raw {
            RawSpec::Integer { d } => LatticeSpec::integer(d),
            RawSpec::Exponential { alpha, d } => LatticeSpec::exponential(alpha, d),
            RawSpec::Congruence { residues, modulus, d } => LatticeSpec::congruence(&residues, modulus, d),
            RawSpec::Explicit { base, window, d } => LatticeSpec::explicit(base, window, d),
        }
    }
}

impl From<LatticeSpec> for RawSpec {
    fn from(l: LatticeSpec) -> Self {
        match l {
            LatticeSpec::Integer { d } => RawSpec::Integer { d },
            LatticeSpec::Exponential { alpha, d } => RawSpec::Exponential { alpha, d },
            LatticeSpec::Congruence { residues, modulus, d } => RawSpec::Congruence { residues, modulus, d },
            LatticeSpec::Explicit { base, window, d } => RawSpec::Explicit { base, window, d },
        }
    }
}

fn check_dim(d: usize) -> Result<(), LatticeError> {
    if d == 0 {
        return Err(LatticeError::InvalidSpec("dimension must be at least 1".into()));
    }
    Ok(())
}

impl LatticeSpec {
    pub fn integer(d: usize) -> Result<Self, LatticeError> {
        check_dim(d)?;
        Ok(LatticeSpec::Integer { d })
    }

    pub fn exponential(alpha: ExactScalar, d: usize) -> Result<Self, LatticeError> {
        check_dim(d)?;
        if alpha <= ExactScalar::one() {
            return Err(LatticeError::InvalidSpec(format!("alpha {alpha} must exceed 1")));
        }
        Ok(LatticeSpec::Exponential { alpha, d })
    }

    /// Residues are reduced mod `modulus`, sorted and deduplicated.
    pub fn congruence(residues: &[u64], modulus: u64, d: usize) -> Result<Self, LatticeError> {
        check_dim(d)?;
        if modulus < 2 {
            return Err(LatticeError::InvalidSpec(format!("modulus {modulus} must be at least 2")));
        }
        let mut r: Vec<u64> = residues.iter().map(|x| x % modulus).collect();
        r.sort_unstable();
        r.dedup();
        if r.is_empty() {
            return Err(LatticeError::InvalidSpec("residue set is empty".into()));
        }
        Ok(LatticeSpec::Congruence { residues: r, modulus, d })
    }

    /// Entries of `base` outside `window` are dropped.
    pub fn explicit(mut base: Vec<i64>, window: (i64, i64), d: usize) -> Result<Self, LatticeError> {
        check_dim(d)?;
        if window.0 > window.1 {
            return Err(LatticeError::InvalidSpec(format!("empty window [{}, {}]", window.0, window.1)));
        }
        base.retain(|x| (window.0..=window.1).contains(x));
        base.sort_unstable();
        base.dedup();
        Ok(LatticeSpec::Explicit { base, window, d })
    }

    pub fn dim(&self) -> usize {
        match self {
            LatticeSpec::Integer { d }
            | LatticeSpec::Exponential { d, .. }
            | LatticeSpec::Congruence { d, .. }
            | LatticeSpec::Explicit { d, .. } => *d,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("lattice specs serialize")
    }

    /// Whether a single coordinate value belongs to the base set.
    pub fn contains_coordinate(&self, c: &ExactScalar) -> Result<bool, LatticeError> {
        Ok(match self {
            LatticeSpec::Integer { .. } => c.is_integer(),
            LatticeSpec::Exponential { alpha, .. } => is_power_of(alpha, c)?,
            LatticeSpec::Congruence { residues, modulus, .. } => match c.as_integer() {
                Some(n) => residues.contains(&residue(n, *modulus)),
                None => false,
            },
            LatticeSpec::Explicit { base, window, .. } => {
                if c < &ExactScalar::from_int(window.0) || c > &ExactScalar::from_int(window.1) {
                    return Err(LatticeError::OutsideWindow(c.to_string()));
                }
                match c.to_i64() {
                    Some(n) => base.binary_search(&n).is_ok(),
                    None => false,
                }
            }
        })
    }

    /// Base-set values in `[lo, hi]`, ascending.
    fn axis_values(&self, lo: &ExactScalar, hi: &ExactScalar, budget: u64) -> Result<Vec<ExactScalar>, LatticeError> {
        if lo > hi {
            return Ok(Vec::new());
        }
        match self {
            LatticeSpec::Exponential { alpha, .. } => {
                if hi < &ExactScalar::one() {
                    return Ok(Vec::new());
                }
                let start = if lo <= &ExactScalar::one() { 0 } else { ceil_log(alpha, lo)? };
                let mut out = Vec::new();
                let mut v = alpha.pow(start as u32);
                while &v <= hi {
                    out.push(v.clone());
                    if out.len() as u64 > budget {
                        return Err(too_large(BigInt::from(out.len()), budget));
                    }
                    v = &v * alpha;
                }
                Ok(out)
            }
            _ => {
                let (a, b) = (lo.ceil(), hi.floor());
                if a > b {
                    return Ok(Vec::new());
                }
                let span = &b - &a + BigInt::one();
                if span > BigInt::from(budget) {
                    return Err(too_large(span, budget));
                }
                if let LatticeSpec::Explicit { base, window, .. } = self {
                    if a < BigInt::from(window.0) || b > BigInt::from(window.1) {
                        return Err(LatticeError::OutsideWindow(format!("[{a}, {b}]")));
                    }
                    let (a, b) = (a.to_i64().unwrap(), b.to_i64().unwrap());
                    return Ok(base.iter().filter(|x| (a..=b).contains(x)).map(|&x| ExactScalar::from_int(x)).collect());
                }
                let a = a.to_i64().ok_or_else(|| too_large(span.clone(), budget))?;
                let b = b.to_i64().ok_or_else(|| too_large(span.clone(), budget))?;
                let keep = |n: i64| match self {
                    LatticeSpec::Congruence { residues, modulus, .. } => {
                        residues.contains(&(n.rem_euclid(*modulus as i64) as u64))
                    }
                    _ => true,
                };
                Ok((a..=b).filter(|&n| keep(n)).map(ExactScalar::from_int).collect())
            }
        }
    }

    /// Residue modulus for congruence-type reasoning: `m` for congruence
    /// products, 1 for ℤ^d, `None` otherwise.
    pub fn modulus(&self) -> Option<u64> {
        match self {
            LatticeSpec::Integer { .. } => Some(1),
            LatticeSpec::Congruence { modulus, .. } => Some(*modulus),
            _ => None,
        }
    }
}

fn residue(n: &BigInt, m: u64) -> u64 {
    let r = n % BigInt::from(m);
    let r = if r < BigInt::zero() { r + BigInt::from(m) } else { r };
    r.to_u64().unwrap()
}

fn too_large(count: BigInt, budget: u64) -> LatticeError {
    LatticeError::WindowTooLarge { count: count.to_string(), budget }
}

/// `c = α^n` for some `n ≥ 0`.
fn is_power_of(alpha: &ExactScalar, c: &ExactScalar) -> Result<bool, LatticeError> {
    if c < &ExactScalar::one() {
        return Ok(false);
    }
    let t = ceil_log(alpha, c)?;
    Ok(alpha.pow(t as u32) == *c)
}

/// Finite truncation of a lattice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Window {
    /// Closed coordinate intervals, one per axis.
    Box { bounds: Vec<(ExactScalar, ExactScalar)> },
    /// Exponent intervals `[n_min, n_max]` for an exponential lattice.
    Exponent { bounds: Vec<(i64, i64)> },
}

impl Window {
    pub fn int_box(bounds: &[(i64, i64)]) -> Self {
        Window::Box {
            bounds: bounds.iter().map(|&(a, b)| (ExactScalar::from_int(a), ExactScalar::from_int(b))).collect(),
        }
    }

    pub fn cube(lo: i64, hi: i64, d: usize) -> Self {
        Self::int_box(&vec![(lo, hi); d])
    }

    pub fn exponent_cube(lo: i64, hi: i64, d: usize) -> Self {
        Window::Exponent { bounds: vec![(lo, hi); d] }
    }

    pub fn dim(&self) -> usize {
        match self {
            Window::Box { bounds } => bounds.len(),
            Window::Exponent { bounds } => bounds.len(),
        }
    }

    fn validate(&self, l: &LatticeSpec) -> Result<(), LatticeError> {
        if self.dim() != l.dim() {
            return Err(LatticeError::InvalidWindow(format!(
                "window has {} axes, lattice has dimension {}",
                self.dim(),
                l.dim()
            )));
        }
        match self {
            Window::Box { bounds } => {
                if bounds.iter().any(|(a, b)| a > b) {
                    return Err(LatticeError::InvalidWindow("an interval is empty".into()));
                }
            }
            Window::Exponent { bounds } => {
                if !matches!(l, LatticeSpec::Exponential { .. }) {
                    return Err(LatticeError::InvalidWindow("exponent windows need an exponential lattice".into()));
                }
                if bounds.iter().any(|(a, b)| a > b || *b < 0) {
                    return Err(LatticeError::InvalidWindow("an exponent interval is empty".into()));
                }
            }
        }
        Ok(())
    }
}

/// Exact membership of `x` in the lattice.
pub fn membership(l: &LatticeSpec, x: &Point) -> Result<bool, LatticeError> {
    if x.dim() != l.dim() {
        return Err(LatticeError::DimensionMismatch { point: x.to_string(), expected: l.dim(), found: x.dim() });
    }
    for c in x.coords() {
        if !l.contains_coordinate(c)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn enumerate_window(l: &LatticeSpec, w: &Window) -> Result<Vec<Point>, LatticeError> {
    enumerate_window_budget(l, w, DEFAULT_ENUM_BUDGET)
}

/// All lattice points in the window, lexicographically sorted.
pub fn enumerate_window_budget(l: &LatticeSpec, w: &Window, budget: u64) -> Result<Vec<Point>, LatticeError> {
    w.validate(l)?;
    let axes: Vec<Vec<ExactScalar>> = match w {
        Window::Box { bounds } => {
            bounds.iter().map(|(a, b)| l.axis_values(a, b, budget)).collect::<Result<_, _>>()?
        }
        Window::Exponent { bounds } => {
            let LatticeSpec::Exponential { alpha, .. } = l else { unreachable!("validated") };
            bounds
                .iter()
                .map(|&(a, b)| {
                    let a = a.max(0);
                    if (b - a + 1) as u64 > budget {
                        return Err(too_large(BigInt::from(b - a + 1), budget));
                    }
                    Ok((a..=b).map(|n| alpha.pow(n as u32)).collect())
                })
                .collect::<Result<_, _>>()?
        }
    };
    let total = axes.iter().fold(BigInt::one(), |acc, a| acc * BigInt::from(a.len()));
    if total > BigInt::from(budget) {
        return Err(too_large(total, budget));
    }
    Ok(cartesian(&axes))
}

fn cartesian(axes: &[Vec<ExactScalar>]) -> Vec<Point> {
    if axes.iter().any(Vec::is_empty) {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut idx = vec![0usize; axes.len()];
    loop {
        out.push(Point::new(idx.iter().zip(axes).map(|(&i, a)| a[i].clone()).collect()).expect("single field per axis"));
        let Some(pos) = (0..axes.len()).rev().find(|&k| idx[k] + 1 < axes[k].len()) else {
            return out;
        };
        idx[pos] += 1;
        for i in idx.iter_mut().skip(pos + 1) {
            *i = 0;
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PointLabel {
    Vertex,
    Boundary,
    Interior,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifiedPoint {
    pub point: Point,
    pub class: PointLabel,
}

pub fn points_in_polytope(l: &LatticeSpec, p: &VPolytope) -> Result<Vec<ClassifiedPoint>, LatticeError> {
    points_in_polytope_budget(l, p, DEFAULT_ENUM_BUDGET)
}

/// Lattice points of `p`, found by scanning its bounding box, in lexicographic order.
///
/// For a polytope that is not full-dimensional, points of its relative
/// interior are labelled `boundary`.
pub fn points_in_polytope_budget(l: &LatticeSpec, p: &VPolytope, budget: u64) -> Result<Vec<ClassifiedPoint>, LatticeError> {
    if p.dim() != l.dim() {
        return Err(LatticeError::InvalidWindow(format!(
            "polytope has dimension {}, lattice has dimension {}",
            p.dim(),
            l.dim()
        )));
    }
    let window = Window::Box { bounds: p.bounding_box() };
    let mut out = Vec::new();
    for x in enumerate_window_budget(l, &window, budget)? {
        let class = match p.classify(&x) {
            PointClass::Exterior => continue,
            PointClass::Interior => PointLabel::Interior,
            PointClass::Boundary { minimal_face } => {
                if minimal_face.len() == 1 && p.vertices()[minimal_face[0]] == x {
                    PointLabel::Vertex
                } else {
                    PointLabel::Boundary
                }
            }
        };
        out.push(ClassifiedPoint { point: x, class });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Point {
        Point::from_ints(c)
    }

    fn s(x: &str) -> ExactScalar {
        x.parse().unwrap()
    }

    fn ints(pts: &[Point]) -> Vec<Vec<i64>> {
        pts.iter().map(|q| q.to_i64s().unwrap()).collect()
    }

    #[test]
    fn membership_examples() {
        let z2 = LatticeSpec::integer(2).unwrap();
        assert!(membership(&z2, &p(&[3, -7])).unwrap());
        let e2 = LatticeSpec::exponential(s("2"), 2).unwrap();
        assert!(membership(&e2, &p(&[4, 1])).unwrap());
        assert!(!membership(&e2, &p(&[3, 1])).unwrap());
        assert!(!membership(&e2, &Point::new(vec![s("1/2"), s("1")]).unwrap()).unwrap());
        let a = LatticeSpec::congruence(&[0, 1], 3, 2).unwrap();
        assert!(membership(&a, &p(&[6, 4])).unwrap());
        assert!(membership(&a, &p(&[-2, -3])).unwrap());
        assert!(!membership(&a, &p(&[2, 4])).unwrap());
        assert!(matches!(membership(&z2, &p(&[1])), Err(LatticeError::DimensionMismatch { .. })));
    }

    #[test]
    fn golden_membership() {
        let phi = ExactScalar::golden_ratio();
        let l = LatticeSpec::exponential(phi.clone(), 1).unwrap();
        let x = Point::new(vec![phi.pow(5)]).unwrap();
        assert!(membership(&l, &x).unwrap());
        assert!(!membership(&l, &p(&[2])).unwrap());
    }

    #[test]
    fn explicit_window_is_enforced() {
        let l = LatticeSpec::explicit(vec![5, 1, 3, 3, 9], (0, 6), 1).unwrap();
        assert_eq!(l, LatticeSpec::Explicit { base: vec![1, 3, 5], window: (0, 6), d: 1 });
        assert!(membership(&l, &p(&[3])).unwrap());
        assert!(!membership(&l, &p(&[4])).unwrap());
        assert!(matches!(membership(&l, &p(&[7])), Err(LatticeError::OutsideWindow(_))));
        assert!(matches!(enumerate_window(&l, &Window::cube(-1, 3, 1)), Err(LatticeError::OutsideWindow(_))));
    }

    #[test]
    fn enumeration_examples() {
        let z1 = LatticeSpec::integer(1).unwrap();
        assert_eq!(ints(&enumerate_window(&z1, &Window::cube(0, 3, 1)).unwrap()), vec![vec![0], vec![1], vec![2], vec![3]]);
        let e1 = LatticeSpec::exponential(s("2"), 1).unwrap();
        assert_eq!(ints(&enumerate_window(&e1, &Window::cube(1, 10, 1)).unwrap()), vec![vec![1], vec![2], vec![4], vec![8]]);
        let a1 = LatticeSpec::congruence(&[0, 1], 3, 1).unwrap();
        assert_eq!(ints(&enumerate_window(&a1, &Window::cube(0, 5, 1)).unwrap()), vec![vec![0], vec![1], vec![3], vec![4]]);
    }

    #[test]
    fn exponent_window_matches_box() {
        let l = LatticeSpec::exponential(s("3/2"), 2).unwrap();
        let by_exp = enumerate_window(&l, &Window::exponent_cube(0, 4, 2)).unwrap();
        assert_eq!(by_exp.len(), 25);
        let hi = s("3/2").pow(4);
        let by_box = enumerate_window(&l, &Window::Box { bounds: vec![(s("1"), hi.clone()), (s("1"), hi)] }).unwrap();
        assert_eq!(by_exp, by_box);
        assert!(matches!(
            enumerate_window(&LatticeSpec::integer(2).unwrap(), &Window::exponent_cube(0, 1, 2)),
            Err(LatticeError::InvalidWindow(_))
        ));
    }

    #[test]
    fn budget_guard() {
        let z3 = LatticeSpec::integer(3).unwrap();
        let e = enumerate_window_budget(&z3, &Window::cube(0, 99, 3), 999_999).unwrap_err();
        assert_eq!(e, LatticeError::WindowTooLarge { count: "1000000".into(), budget: 999_999 });
        assert!(enumerate_window(&z3, &Window::cube(0, 1_000_000, 3)).is_err());
    }

    #[test]
    fn points_in_triangles() {
        let z2 = LatticeSpec::integer(2).unwrap();
        let t = VPolytope::from_points(&[p(&[0, 0]), p(&[2, 0]), p(&[0, 1])]).unwrap();
        let pts = points_in_polytope(&z2, &t).unwrap();
        assert_eq!(pts.len(), 4);
        assert_eq!(pts.iter().filter(|c| c.class == PointLabel::Vertex).count(), 3);
        assert!(pts.contains(&ClassifiedPoint { point: p(&[1, 0]), class: PointLabel::Boundary }));
        let big = VPolytope::from_points(&[p(&[0, 0]), p(&[3, 0]), p(&[0, 3])]).unwrap();
        let pts = points_in_polytope(&z2, &big).unwrap();
        assert!(pts.contains(&ClassifiedPoint { point: p(&[1, 1]), class: PointLabel::Interior }));
    }

    #[test]
    fn cube_points_are_vertices() {
        for d in 1..=4 {
            let corners: Vec<Point> = (0..1u32 << d)
                .map(|m| p(&(0..d).map(|i| ((m >> i) & 1) as i64).collect::<Vec<_>>()))
                .collect();
            let cube = VPolytope::from_points(&corners).unwrap();
            let pts = points_in_polytope(&LatticeSpec::integer(d).unwrap(), &cube).unwrap();
            assert_eq!(pts.len(), 1 << d);
            assert!(pts.iter().all(|c| c.class == PointLabel::Vertex));
        }
    }

    #[test]
    fn spec_json() {
        let l: LatticeSpec = serde_json::from_str(r#"{"kind":"exponential","alpha":"2","d":2}"#).unwrap();
        assert_eq!(l, LatticeSpec::exponential(s("2"), 2).unwrap());
        let c: LatticeSpec = serde_json::from_str(r#"{"kind":"congruence","residues":[4,0,1],"modulus":3,"d":2}"#).unwrap();
        assert_eq!(c.to_json(), r#"{"kind":"congruence","residues":[0,1],"modulus":3,"d":2}"#);
        assert!(serde_json::from_str::<LatticeSpec>(r#"{"kind":"exponential","alpha":"1","d":2}"#).is_err());
        assert!(serde_json::from_str::<LatticeSpec>(r#"{"kind":"integer","d":0}"#).is_err());
        assert!(serde_json::from_str::<LatticeSpec>(r#"{"kind":"torus","d":2}"#).is_err());
        let w = Window::cube(0, 1, 2);
        let back: Window = serde_json::from_str(&serde_json::to_string(&w).unwrap()).unwrap();
        assert_eq!(back, w);
    }
}
