use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{ExactScalar, Field};

use super::GeometryError;

/// A point of ℝ^d with exact coordinates, ordered lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Point {
    coords: Vec<ExactScalar>,
}

impl Point {
    pub fn new(coords: Vec<ExactScalar>) -> Result<Self, GeometryError> {
        if coords.is_empty() {
            return Err(GeometryError::EmptyPoint);
        }
        coords
            .iter()
            .try_fold(Field::Rational, |f, c| f.join(c.field()))?;
        Ok(Self { coords })
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        assert!(!coords.is_empty(), "points need at least one coordinate");
        Self { coords: coords.iter().map(|&c| ExactScalar::from_int(c)).collect() }
    }

    pub fn origin(dim: usize) -> Self {
        Self::from_ints(&vec![0; dim])
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[ExactScalar] {
        &self.coords
    }

    pub fn coord(&self, axis: usize) -> &ExactScalar {
        &self.coords[axis]
    }

    pub fn field(&self) -> Field {
        self.coords
            .iter()
            .fold(Field::Rational, |f, c| f.join(c.field()).expect("validated on construction"))
    }

    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(ExactScalar::is_integer)
    }

    /// Integer coordinates, if every coordinate is an integer fitting `i64`.
    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        self.coords.iter().map(ExactScalar::to_i64).collect()
    }

    pub fn sub(&self, other: &Point) -> Vec<ExactScalar> {
        self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect()
    }

    pub fn dot(&self, v: &[ExactScalar]) -> ExactScalar {
        dot(&self.coords, v)
    }
}

pub(crate) fn dot(a: &[ExactScalar], b: &[ExactScalar]) -> ExactScalar {
    a.iter()
        .zip(b)
        .fold(ExactScalar::zero(), |acc, (x, y)| {
            if x.is_zero() || y.is_zero() {
                acc
            } else {
                acc + x * y
            }
        })
}

impl PartialOrd for Point {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Point {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.coords.iter().zip(&other.coords) {
            match a.cmp(b) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        self.coords.len().cmp(&other.coords.len())
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Common field and dimension of a nonempty point list.
pub(crate) fn common_shape(points: &[Point]) -> Result<(usize, Field), GeometryError> {
    let first = points.first().ok_or(GeometryError::NoPoints)?;
    let dim = first.dim();
    let mut field = Field::Rational;
    for p in points {
        if p.dim() != dim {
            return Err(GeometryError::DimensionMismatch { expected: dim, found: p.dim() });
        }
        field = field.join(p.field())?;
    }
    Ok((dim, field))
}
