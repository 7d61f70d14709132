//! Window searches checked against values from an independent brute-force
//! enumeration of all subsets.

use helly_core::arith::ExactScalar;
use helly_core::geometry::Point;
use helly_core::lattice::{LatticeSpec, Window};
use helly_core::search::{max_empty_subset, SearchOptions};

fn pts(c: &[[i64; 2]]) -> Vec<Point> {
    c.iter().map(|x| Point::from_ints(x)).collect()
}

#[test]
fn mod3_window() {
    let l = LatticeSpec::congruence(&[0, 1], 3, 2).unwrap();
    let r = max_empty_subset(&l, &Window::cube(-1, 8, 2), &SearchOptions::default()).unwrap();
    assert_eq!(r.window_points, 36);
    assert_eq!(r.max_empty_size, 8);
    assert!(r.exhaustive);
    assert_eq!(r.witness, pts(&[[0, 0], [0, 1], [1, 1], [1, 3], [3, 4], [3, 6], [4, 6], [4, 7]]));
    assert_eq!(&r.empty_sets_by_size[..10], &[1, 36, 458, 1004, 909, 496, 224, 64, 8, 0]);
}

#[test]
fn golden_window() {
    let phi = ExactScalar::golden_ratio();
    let l = LatticeSpec::exponential(phi.clone(), 2).unwrap();
    let r = max_empty_subset(&l, &Window::exponent_cube(0, 7, 2), &SearchOptions::default()).unwrap();
    assert_eq!(r.max_empty_size, 7);
    assert!(r.exhaustive);
    let exps = [(0, 4), (1, 4), (3, 3), (4, 2), (4, 3), (5, 0), (5, 1)];
    let expect: Vec<Point> = exps.iter().map(|&(a, b)| Point::new(vec![phi.pow(a), phi.pow(b)]).unwrap()).collect();
    assert_eq!(r.witness, expect);
    assert_eq!(&r.empty_sets_by_size[..9], &[1, 64, 1544, 3730, 3459, 1638, 512, 84, 0]);
}

#[test]
fn rational_bases_stay_below_bound() {
    let cases = [("3/2", 6, 7), ("5/4", 5, 8)];
    for (alpha, hi, expect) in cases {
        let l = LatticeSpec::exponential(alpha.parse().unwrap(), 2).unwrap();
        let r = max_empty_subset(&l, &Window::exponent_cube(0, hi, 2), &SearchOptions::default()).unwrap();
        assert_eq!(r.max_empty_size, expect, "alpha {alpha}");
        assert!(r.exhaustive);
    }
}

#[test]
fn workers_do_not_change_reports() {
    let l = LatticeSpec::congruence(&[0, 1], 3, 2).unwrap();
    let w = Window::cube(-1, 8, 2);
    let serial = max_empty_subset(&l, &w, &SearchOptions::default()).unwrap();
    let parallel = max_empty_subset(&l, &w, &SearchOptions { workers: 4, ..Default::default() }).unwrap();
    assert_eq!(serde_json::to_string(&serial).unwrap(), serde_json::to_string(&parallel).unwrap());
}

#[test]
fn enlarging_the_window_never_shrinks_the_maximum() {
    let l = LatticeSpec::integer(2).unwrap();
    let mut last = 0;
    for hi in 1..=4 {
        let r = max_empty_subset(&l, &Window::cube(0, hi, 2), &SearchOptions::default()).unwrap();
        assert!(r.max_empty_size >= last);
        assert!(r.max_empty_size <= 4);
        last = r.max_empty_size;
    }
}
