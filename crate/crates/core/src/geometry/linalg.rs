//! Exact Gaussian elimination over [`ExactScalar`].

use std::cmp::Ordering;

use crate::arith::ExactScalar;

/// Determinant of a square matrix given as rows.
pub(crate) fn determinant(mut rows: Vec<Vec<ExactScalar>>) -> ExactScalar {
    let n = rows.len();
    let mut det = ExactScalar::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !rows[r][col].is_zero()) else {
            return ExactScalar::zero();
        };
        if pivot != col {
            rows.swap(pivot, col);
            det = -det;
        }
        let p = rows[col][col].clone();
        det = &det * &p;
        for r in col + 1..n {
            if rows[r][col].is_zero() {
                continue;
            }
            let factor = &rows[r][col] / &p;
            for c in col..n {
                let v = &rows[col][c] * &factor;
                rows[r][c] = &rows[r][c] - &v;
            }
        }
    }
    det
}

pub(crate) fn sign(x: &ExactScalar) -> i8 {
    match x.signum() {
        Ordering::Less => -1,
        Ordering::Equal => 0,
        Ordering::Greater => 1,
    }
}

/// Reduced row echelon form of a set of row vectors.
#[derive(Clone, Debug)]
pub(crate) struct Echelon {
    /// Nonzero rows; row `i` has a 1 in column `pivots[i]` and zeros in every other pivot column.
    pub rows: Vec<Vec<ExactScalar>>,
    pub pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(width: usize) -> Self {
        let _ = width;
        Self { rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Residual of `v` after eliminating the current pivots.
    pub fn reduce(&self, v: &[ExactScalar]) -> Vec<ExactScalar> {
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x = &*x - &(r * &f);
                }
            }
        }
        v
    }

    /// Adds `v` if it is independent of the current rows; reports whether it was.
    pub fn insert(&mut self, v: &[ExactScalar]) -> bool {
        let mut v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].recip().expect("nonzero pivot");
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        for row in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (x, y) in row.iter_mut().zip(&v) {
                if !y.is_zero() {
                    *x = &*x - &(y * &f);
                }
            }
        }
        self.rows.push(v);
        self.pivots.push(p);
        true
    }
}

/// A nonzero vector orthogonal to every given row, when the rows span a
/// hyperplane (rank = width − 1); `None` otherwise.
pub(crate) fn normal_vector(rows: &[Vec<ExactScalar>], width: usize) -> Option<Vec<ExactScalar>> {
    let mut ech = Echelon::new(width);
    for r in rows {
        ech.insert(r);
    }
    if ech.rank() + 1 != width {
        return None;
    }
    let free = (0..width).find(|c| !ech.pivots.contains(c))?;
    let mut n = vec![ExactScalar::zero(); width];
    n[free] = ExactScalar::one();
    for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
        n[p] = -&row[free];
    }
    Some(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Vec<Vec<ExactScalar>> {
        rows.iter().map(|r| r.iter().map(|&x| ExactScalar::from_int(x)).collect()).collect()
    }

    #[test]
    fn determinants() {
        assert_eq!(determinant(m(&[&[1, 0], &[0, 1]])), ExactScalar::from_int(1));
        assert_eq!(determinant(m(&[&[0, 1], &[1, 0]])), ExactScalar::from_int(-1));
        assert_eq!(determinant(m(&[&[2, 0, 1], &[1, 3, 2], &[1, 1, 1]])), ExactScalar::from_int(0));
        assert_eq!(determinant(m(&[&[2, 0, 1], &[1, 3, 2], &[1, 1, 2]])), ExactScalar::from_int(6));
    }

    #[test]
    fn normal_of_plane() {
        let rows = m(&[&[1, 0, 0], &[0, 1, 0]]);
        let n = normal_vector(&rows, 3).unwrap();
        assert_eq!(n, m(&[&[0, 0, 1]])[0]);
        assert!(normal_vector(&m(&[&[1, 1, 0], &[2, 2, 0]]), 3).is_none());
    }

    #[test]
    fn echelon_rank() {
        let mut e = Echelon::new(3);
        assert!(e.insert(&m(&[&[1, 2, 3]])[0]));
        assert!(!e.insert(&m(&[&[2, 4, 6]])[0]));
        assert!(e.insert(&m(&[&[0, 1, 1]])[0]));
        assert_eq!(e.rank(), 2);
        assert!(e.reduce(&m(&[&[1, 3, 4]])[0]).iter().all(ExactScalar::is_zero));
    }
}
