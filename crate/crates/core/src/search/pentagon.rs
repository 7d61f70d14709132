use serde::{Deserialize, Serialize};

use crate::analysis::{is_empty_in, AnalysisError};
use crate::arith::{ceil_log, ExactScalar};
use crate::geometry::{Point, VPolytope};
use crate::lattice::LatticeSpec;

use super::SearchError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PentagonClassification {
    pub all_match: bool,
    pub total: usize,
    pub matching: usize,
    /// Exponent vectors of the pentagons that fit no labelling of the template.
    pub non_matching: Vec<Vec<(i64, i64)>>,
}

/// Exponent vectors `(n, m)` with `x = (α^n, α^m)`, sorted.
pub fn pentagon_exponents(alpha: &ExactScalar, pentagon: &[Point]) -> Result<Vec<(i64, i64)>, SearchError> {
    let exp = |c: &ExactScalar| -> Result<i64, SearchError> {
        let t = ceil_log(alpha, c).map_err(|e| SearchError::Invalid(e.to_string()))?;
        if t < 0 || alpha.pow(t as u32) != *c {
            return Err(SearchError::Invalid(format!("{c} is not a power of {alpha}")));
        }
        Ok(t)
    };
    let mut out = pentagon
        .iter()
        .map(|p| Ok((exp(p.coord(0))?, exp(p.coord(1))?)))
        .collect::<Result<Vec<_>, SearchError>>()?;
    out.sort_unstable();
    Ok(out)
}

/// Whether the exponent set equals
/// `{(p,q), (r,s), (r−1,q−1), (p+1,q), (r,s+1)}` for some `p < r`, `q > s`.
fn matches_template(ex: &[(i64, i64)]) -> bool {
    ex.iter().any(|&(p, q)| {
        ex.iter().any(|&(r, s)| {
            if p >= r || q <= s {
                return false;
            }
            let mut t = vec![(p, q), (r, s), (r - 1, q - 1), (p + 1, q), (r, s + 1)];
            t.sort_unstable();
            t == ex
        })
    })
}

/// Checks every given empty pentagon of `L_2(α)`, `α ≥ 2`, against the template.
pub fn classify_pentagons(l: &LatticeSpec, pentagons: &[Vec<Point>]) -> Result<PentagonClassification, SearchError> {
    let LatticeSpec::Exponential { alpha, d: 2 } = l else {
        return Err(SearchError::Invalid("pentagon classification needs a planar exponential lattice".into()));
    };
    if *alpha < ExactScalar::from_int(2) {
        return Err(SearchError::Invalid(format!("alpha {alpha} is below 2")));
    }
    let mut out = PentagonClassification { all_match: true, total: 0, matching: 0, non_matching: Vec::new() };
    for pent in pentagons {
        let label = || pent.iter().map(Point::to_string).collect::<Vec<_>>().join(" ");
        if pent.len() != 5 || VPolytope::from_points(pent).map_err(AnalysisError::from)?.vertices().len() != 5 {
            return Err(SearchError::Invalid(format!("{} is not a convex pentagon", label())));
        }
        if !is_empty_in(pent, l)?.empty {
            return Err(SearchError::Invalid(format!("{} is not empty", label())));
        }
        let ex = pentagon_exponents(alpha, pent)?;
        out.total += 1;
        if matches_template(&ex) {
            out.matching += 1;
        } else {
            out.all_match = false;
            out.non_matching.push(ex);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pent(ex: &[(u32, u32)]) -> Vec<Point> {
        let two = ExactScalar::from_int(2);
        ex.iter().map(|&(a, b)| Point::new(vec![two.pow(a), two.pow(b)]).unwrap()).collect()
    }

    #[test]
    fn template_example() {
        let l = LatticeSpec::exponential(ExactScalar::from_int(2), 2).unwrap();
        let c = classify_pentagons(&l, &[pent(&[(0, 3), (3, 0), (2, 2), (1, 3), (3, 1)])]).unwrap();
        assert!(c.all_match);
        assert_eq!(c.matching, 1);
    }

    #[test]
    fn rejects_non_pentagons() {
        let l = LatticeSpec::exponential(ExactScalar::from_int(2), 2).unwrap();
        let bad = pent(&[(0, 0), (1, 0), (0, 1), (1, 1), (2, 2)]);
        assert!(matches!(classify_pentagons(&l, &[bad]), Err(SearchError::Invalid(_))));
        let z = LatticeSpec::integer(2).unwrap();
        assert!(classify_pentagons(&z, &[]).is_err());
    }

    #[test]
    fn off_template_pentagon() {
        let l = LatticeSpec::exponential(ExactScalar::from_int(2), 2).unwrap();
        let c = classify_pentagons(&l, &[pent(&[(0, 0), (0, 1), (1, 2), (1, 3), (2, 4)])]).unwrap();
        assert!(!c.all_match);
        assert_eq!(c.non_matching, vec![vec![(0, 0), (0, 1), (1, 2), (1, 3), (2, 4)]]);
    }
}
