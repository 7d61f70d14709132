use serde::{Deserialize, Serialize};

use crate::arith::least_prime_factor;
use crate::geometry::Point;
use crate::lattice::{LatticeSpec, Window};

use super::{pick, reverify, run_search, window_points, SearchError, SearchOptions};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PigeonholeReport {
    pub residues: Vec<u64>,
    pub modulus: u64,
    pub d: usize,
    /// `d < p(m−1) / (m(m−k))` with `p` the least prime factor of `m`, `k = |S|`.
    pub condition_holds: bool,
    pub verified: bool,
    /// First `(u, w)` in lexicographic order with no valid step `i`.
    pub counterexample: Option<(Vec<u64>, Vec<u64>)>,
    pub evaluations: u64,
}

/// Checks that for all `u ∈ S^d` and `w ∈ (ℤ/m)^d` some `i ∈ {1, …, m−1}`
/// puts every coordinate of `u + i·w` back in `S` modulo `m`.
pub fn residue_pigeonhole_check(residues: &[u64], modulus: u64, d: usize) -> Result<PigeonholeReport, SearchError> {
    if modulus < 2 || d == 0 {
        return Err(SearchError::Invalid("need modulus >= 2 and d >= 1".into()));
    }
    let mut s: Vec<u64> = residues.iter().map(|r| r % modulus).collect();
    s.sort_unstable();
    s.dedup();
    if s.is_empty() {
        return Err(SearchError::Invalid("residue set is empty".into()));
    }
    let k = s.len() as u128;
    let m = modulus as u128;
    let p = least_prime_factor(modulus) as u128;
    let condition_holds = k == m || (d as u128) * m * (m - k) < p * (m - 1);

    let mut in_s = vec![false; modulus as usize];
    for &r in &s {
        in_s[r as usize] = true;
    }
    let mut evaluations = 0u64;
    let mut counterexample = None;
    let mut u_idx = vec![0usize; d];
    'outer: loop {
        let u: Vec<u64> = u_idx.iter().map(|&i| s[i]).collect();
        let mut w = vec![0u64; d];
        loop {
            let ok = (1..modulus).any(|i| {
                evaluations += 1;
                u.iter().zip(&w).all(|(&a, &b)| in_s[((a + i * b) % modulus) as usize])
            });
            if !ok {
                counterexample = Some((u.clone(), w.clone()));
                break 'outer;
            }
            if !odometer(&mut w, modulus) {
                break;
            }
        }
        let Some(pos) = (0..d).rev().find(|&i| u_idx[i] + 1 < s.len()) else { break };
        u_idx[pos] += 1;
        for x in u_idx.iter_mut().skip(pos + 1) {
            *x = 0;
        }
    }
    Ok(PigeonholeReport {
        residues: s,
        modulus,
        d,
        condition_holds,
        verified: counterexample.is_none(),
        counterexample,
        evaluations,
    })
}

fn odometer(v: &mut [u64], base: u64) -> bool {
    for x in v.iter_mut().rev() {
        *x += 1;
        if *x < base {
            return true;
        }
        *x = 0;
    }
    false
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplicityReport {
    pub lattice: LatticeSpec,
    pub window: Window,
    pub residue: Vec<u64>,
    pub multiplicity: usize,
    /// Lexicographically least qualifying empty set.
    pub witness: Option<Vec<Point>>,
    pub exhaustive: bool,
    pub nodes_explored: u64,
    pub budget_hit: bool,
}

/// Looks for an empty set in the window with at least `multiplicity`
/// points congruent to `residue` modulo the lattice's modulus.
pub fn residue_multiplicity_search(
    l: &LatticeSpec,
    w: &Window,
    residue: &[u64],
    multiplicity: usize,
    opts: &SearchOptions,
) -> Result<MultiplicityReport, SearchError> {
    let modulus = l.modulus().ok_or_else(|| SearchError::Invalid("lattice has no residue structure".into()))?;
    if residue.len() != l.dim() {
        return Err(SearchError::Invalid(format!("residue has {} entries, lattice dimension {}", residue.len(), l.dim())));
    }
    if let LatticeSpec::Congruence { residues, .. } = l {
        if let Some(r) = residue.iter().find(|r| !residues.contains(r)) {
            return Err(SearchError::Invalid(format!("residue entry {r} is not in the residue set")));
        }
    } else if residue.iter().any(|&r| r >= modulus) {
        return Err(SearchError::Invalid(format!("residue entries must be below {modulus}")));
    }
    let points = window_points(l, w)?;
    let hits: Vec<bool> = points
        .iter()
        .map(|p| {
            let c = p.to_i64s().expect("congruence lattices are integral");
            c.iter().zip(residue).all(|(&x, &r)| x.rem_euclid(modulus as i64) as u64 == r)
        })
        .collect();
    let qualify = |set: &[usize]| set.iter().filter(|&&i| hits[i]).count() >= multiplicity;
    let opts = SearchOptions { target: None, ..opts.clone() };
    let m = run_search(l, w, &points, &opts, "multiplicity", Some(&qualify), None)?;
    let witness = m.qualified.map(|q| pick(&points, &q));
    if let Some(wit) = &witness {
        reverify(l, wit)?;
    }
    Ok(MultiplicityReport {
        lattice: l.clone(),
        window: w.clone(),
        residue: residue.to_vec(),
        multiplicity,
        witness,
        exhaustive: !(m.cap_blocked || m.budget_hit),
        nodes_explored: m.nodes,
        budget_hit: m.budget_hit,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pigeonhole_examples() {
        let r = residue_pigeonhole_check(&[0, 1], 3, 1).unwrap();
        assert!(r.condition_holds && r.verified);
        let r = residue_pigeonhole_check(&[0, 1, 2, 3], 5, 3).unwrap();
        assert!(r.condition_holds && r.verified);
        let r = residue_pigeonhole_check(&[0, 1], 3, 2).unwrap();
        assert!(!r.condition_holds && !r.verified);
        assert_eq!(r.counterexample, Some((vec![0, 0], vec![1, 2])));
    }

    #[test]
    fn pigeonhole_evaluation_count() {
        // Every (u, w) needs at least one evaluation and at most m − 1.
        let r = residue_pigeonhole_check(&[0, 1], 3, 1).unwrap();
        assert!(r.evaluations >= 6 && r.evaluations <= 12);
    }

    #[test]
    fn trivial_integer_guard() {
        let l = LatticeSpec::integer(1).unwrap();
        let r = residue_multiplicity_search(&l, &Window::cube(0, 3, 1), &[0], 1, &SearchOptions::default()).unwrap();
        assert_eq!(r.witness, Some(vec![Point::from_ints(&[0])]));
        assert!(r.exhaustive);
    }

    #[test]
    fn mod3_multiplicities() {
        let l = LatticeSpec::congruence(&[0, 1], 3, 2).unwrap();
        let w = Window::cube(-1, 8, 2);
        let two = residue_multiplicity_search(&l, &w, &[0, 0], 2, &SearchOptions::default()).unwrap();
        let expect: Vec<Point> = [[0, 0], [0, 1], [1, 1], [1, 3], [3, 4], [3, 6]].iter().map(|c| Point::from_ints(c)).collect();
        assert_eq!(two.witness, Some(expect));
        let three = residue_multiplicity_search(&l, &w, &[0, 0], 3, &SearchOptions::default()).unwrap();
        assert_eq!(three.witness, None);
        assert!(three.exhaustive);
        assert!(residue_multiplicity_search(&l, &w, &[2, 0], 1, &SearchOptions::default()).is_err());
    }
}
