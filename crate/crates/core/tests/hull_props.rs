use helly_core::arith::ExactScalar;
use helly_core::geometry::{is_general_position, PointClass, Point, VPolytope};
use num_rational::Ratio;
use proptest::prelude::*;

type Q = Ratio<i128>;

/// Solves `a·λ = b` for a full-column-rank system; `None` if inconsistent.
fn solve(mut a: Vec<Vec<Q>>, mut b: Vec<Q>) -> Option<Vec<Q>> {
    let (rows, cols) = (a.len(), a[0].len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| a[i][c] != Q::from(0)) else { return None };
        a.swap(r, p);
        b.swap(r, p);
        for i in 0..rows {
            if i != r && a[i][c] != Q::from(0) {
                let f = a[i][c] / a[r][c];
                for k in 0..cols {
                    let v = a[r][k] * f;
                    a[i][k] -= v;
                }
                let v = b[r] * f;
                b[i] -= v;
            }
        }
        pivots.push(c);
        r += 1;
    }
    if b[r..].iter().any(|x| *x != Q::from(0)) {
        return None;
    }
    Some((0..cols).map(|c| b[c] / a[c][c]).collect())
}

fn in_hull_of(x: &[i64], others: &[Vec<i64>]) -> bool {
    let d = x.len();
    let n = others.len();
    for k in 1..=(d + 1).min(n) {
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            let t0 = &others[idx[0]];
            let a: Vec<Vec<Q>> = (0..d)
                .map(|row| idx[1..].iter().map(|&j| Q::from((others[j][row] - t0[row]) as i128)).collect())
                .collect();
            let b: Vec<Q> = (0..d).map(|row| Q::from((x[row] - t0[row]) as i128)).collect();
            let hit = if k == 1 {
                b.iter().all(|v| *v == Q::from(0))
            } else {
                solve(a, b).is_some_and(|l| {
                    l.iter().all(|v| *v >= Q::from(0)) && l.iter().copied().sum::<Q>() <= Q::from(1)
                })
            };
            if hit {
                return true;
            }
            let Some(pos) = (0..k).rev().find(|&i| idx[i] != i + n - k) else { break };
            idx[pos] += 1;
            for j in pos + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    false
}

fn point_sets() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (2usize..=4).prop_flat_map(|d| prop::collection::vec(prop::collection::vec(-5i64..=5, d), d + 1..=10))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn vertices_are_exactly_the_extreme_points(raw in point_sets()) {
        let mut raw = raw;
        raw.sort();
        raw.dedup();
        let pts: Vec<Point> = raw.iter().map(|c| Point::from_ints(c)).collect();
        let p = VPolytope::from_points(&pts).unwrap();
        for (i, x) in raw.iter().enumerate() {
            let others: Vec<Vec<i64>> = raw.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, c)| c.clone()).collect();
            let extreme = !in_hull_of(x, &others);
            prop_assert_eq!(p.vertex_index(&pts[i]).is_some(), extreme, "point {:?}", x);
        }
        for f in p.facets() {
            for q in &pts {
                prop_assert!(!f.slack(q).is_positive());
            }
            prop_assert!(f.incident_vertices.len() >= p.dim());
        }
        for x in &pts {
            prop_assert_ne!(p.classify(x), PointClass::Exterior);
        }
    }

    #[test]
    fn general_position_hulls_are_simplicial(raw in point_sets()) {
        let pts: Vec<Point> = raw.iter().map(|c| Point::from_ints(c)).collect();
        prop_assume!(is_general_position(&pts));
        let p = VPolytope::from_points(&pts).unwrap();
        prop_assert!(p.is_simplicial());
    }

    #[test]
    fn classification_matches_barycentric_oracle(raw in point_sets(), probe in prop::collection::vec(-6i64..=6, 4)) {
        let pts: Vec<Point> = raw.iter().map(|c| Point::from_ints(c)).collect();
        let p = VPolytope::from_points(&pts).unwrap();
        let x: Vec<i64> = probe[..p.dim()].to_vec();
        let inside = in_hull_of(&x, &raw);
        prop_assert_eq!(p.classify(&Point::from_ints(&x)) != PointClass::Exterior, inside);
    }
}

#[test]
fn octahedron_facets() {
    let mut pts = Vec::new();
    for i in 0..3 {
        for s in [-1, 1] {
            let mut c = vec![0; 3];
            c[i] = s;
            pts.push(Point::from_ints(&c));
        }
    }
    pts.push(Point::origin(3));
    let p = VPolytope::from_points(&pts).unwrap();
    assert_eq!(p.vertices().len(), 6);
    assert_eq!(p.facets().len(), 8);
    assert!(p.is_simplicial());
    assert_eq!(p.classify(&Point::origin(3)), PointClass::Interior);
    let mid = Point::new(vec![ExactScalar::ratio(1, 2), ExactScalar::ratio(1, 2), ExactScalar::zero()]).unwrap();
    assert!(matches!(p.classify(&mid), PointClass::Boundary { minimal_face } if minimal_face.len() == 2));
}

#[test]
fn golden_triangle_hull() {
    let phi = ExactScalar::golden_ratio();
    let pts = vec![
        Point::new(vec![ExactScalar::zero(), ExactScalar::zero()]).unwrap(),
        Point::new(vec![phi.clone(), ExactScalar::zero()]).unwrap(),
        Point::new(vec![ExactScalar::one(), phi.clone()]).unwrap(),
        Point::new(vec![ExactScalar::one(), ExactScalar::one()]).unwrap(),
    ];
    let p = VPolytope::from_points(&pts).unwrap();
    assert_eq!(p.vertices().len(), 3);
    assert_eq!(p.classify(&pts[3]), PointClass::Interior);
}
