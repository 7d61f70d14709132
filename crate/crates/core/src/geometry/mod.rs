//! Points, orientation tests and convex hulls with exact arithmetic.

mod hull;
pub(crate) mod linalg;
mod point;

use crate::arith::ArithError;

pub use hull::{Facet, PointClass, VPolytope, DEFAULT_MAX_HULL_DIM};
pub(crate) use hull::for_each_combination;
pub use point::Point;
pub(crate) use point::common_shape;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeometryError {
    #[error("points need at least one coordinate")]
    EmptyPoint,
    #[error("no points given")]
    NoPoints,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("points are not full-dimensional (affine dimension {affine_dim})")]
    LowerDimensional { affine_dim: usize },
    #[error("dimension {dim} exceeds the hull limit {cap}")]
    DimensionTooHigh { dim: usize, cap: usize },
    #[error("orientation needs {expected} points, got {found}")]
    WrongPointCount { expected: usize, found: usize },
    #[error(transparent)]
    Arith(#[from] ArithError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    fn from_i8(s: i8) -> Self {
        match s {
            s if s < 0 => Sign::Negative,
            0 => Sign::Zero,
            _ => Sign::Positive,
        }
    }
}

/// Sign of `det[p_1 − p_0, …, p_d − p_0]` for `d + 1` points of ℝ^d.
pub fn orientation(points: &[Point]) -> Result<Sign, GeometryError> {
    let (dim, _) = common_shape(points)?;
    if points.len() != dim + 1 {
        return Err(GeometryError::WrongPointCount { expected: dim + 1, found: points.len() });
    }
    let refs: Vec<&Point> = points.iter().collect();
    Ok(Sign::from_i8(orientation_sign(&refs)))
}

pub(crate) fn orientation_sign(points: &[&Point]) -> i8 {
    let rows: Vec<_> = points[1..].iter().map(|p| p.sub(points[0])).collect();
    linalg::sign(&linalg::determinant(rows))
}

/// Hull of a full-dimensional point set in dimension at most [`DEFAULT_MAX_HULL_DIM`].
pub fn convex_hull(points: &[Point]) -> Result<VPolytope, GeometryError> {
    convex_hull_capped(points, DEFAULT_MAX_HULL_DIM)
}

pub fn convex_hull_capped(points: &[Point], max_dim: usize) -> Result<VPolytope, GeometryError> {
    let (dim, _) = common_shape(points)?;
    if dim > max_dim {
        return Err(GeometryError::DimensionTooHigh { dim, cap: max_dim });
    }
    let p = VPolytope::from_points(points)?;
    if !p.is_full_dimensional() {
        return Err(GeometryError::LowerDimensional { affine_dim: p.affine_dim() });
    }
    Ok(p)
}

pub fn classify_point(p: &VPolytope, x: &Point) -> PointClass {
    p.classify(x)
}

pub fn is_simplicial(p: &VPolytope) -> bool {
    p.is_simplicial()
}

/// No `d + 1` of the points lie on a common hyperplane.
pub fn is_general_position(points: &[Point]) -> bool {
    let Some(first) = points.first() else { return true };
    let d = first.dim();
    let mut ok = true;
    for_each_combination(points.len(), d + 1, |c| {
        if ok {
            let refs: Vec<&Point> = c.iter().map(|&i| &points[i]).collect();
            ok = orientation_sign(&refs) != 0;
        }
    });
    ok
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Point {
        Point::from_ints(c)
    }

    #[test]
    fn orientation_examples() {
        assert_eq!(orientation(&[p(&[0, 0]), p(&[1, 0]), p(&[0, 1])]).unwrap(), Sign::Positive);
        assert_eq!(orientation(&[p(&[0, 0]), p(&[0, 1]), p(&[1, 0])]).unwrap(), Sign::Negative);
        assert_eq!(orientation(&[p(&[0, 0]), p(&[1, 1]), p(&[2, 2])]).unwrap(), Sign::Zero);
        assert!(matches!(orientation(&[p(&[0, 0]), p(&[1, 1])]), Err(GeometryError::WrongPointCount { .. })));
    }

    #[test]
    fn strict_hull_rejects_flat_input() {
        let e = convex_hull(&[p(&[0, 0, 0]), p(&[1, 0, 0]), p(&[0, 1, 0])]).unwrap_err();
        assert_eq!(e, GeometryError::LowerDimensional { affine_dim: 2 });
        assert!(matches!(convex_hull(&[p(&[0; 7])]), Err(GeometryError::DimensionTooHigh { .. })));
        assert!(matches!(convex_hull(&[p(&[0, 0]), p(&[0, 0, 0])]), Err(GeometryError::DimensionMismatch { .. })));
        assert_eq!(convex_hull(&[]), Err(GeometryError::NoPoints));
    }

    #[test]
    fn general_position() {
        assert!(is_general_position(&[p(&[0, 0]), p(&[1, 0]), p(&[0, 1]), p(&[2, 3])]));
        assert!(!is_general_position(&[p(&[0, 0]), p(&[1, 0]), p(&[2, 0])]));
    }
}
