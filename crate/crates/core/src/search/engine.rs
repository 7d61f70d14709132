//! Depth-first enumeration of empty subsets of a finite, box-closed point
//! list. Every node of the search tree is one empty set, visited once.

use serde::{Deserialize, Serialize};

use crate::arith::ExactScalar;
use crate::geometry::{orientation_sign, Point, PointClass, VPolytope};

/// What one partition of the search tree produced.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub(crate) struct PartitionResult {
    pub anchor: usize,
    pub nodes: u64,
    /// `histogram[k]` counts empty sets of size `k`.
    pub histogram: Vec<u64>,
    /// Lexicographically least set among the largest found.
    pub best: Vec<usize>,
    pub qualified: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub collected: Vec<Vec<usize>>,
    pub cap_blocked: bool,
    pub target_hit: bool,
    pub budget_hit: bool,
}

pub(crate) type Qualifier<'a> = dyn Fn(&[usize]) -> bool + Sync + 'a;

pub(crate) struct Problem<'a> {
    pub points: &'a [Point],
    pub size_cap: usize,
    pub target: Option<usize>,
    pub qualify: Option<&'a Qualifier<'a>>,
    pub collect_size: Option<usize>,
}

pub(crate) const PROGRESS_EVERY: u64 = 10_000_000;

struct Acc<'p, 'a> {
    problem: &'p Problem<'a>,
    budget: u64,
    r: PartitionResult,
}

impl<'p, 'a> Acc<'p, 'a> {
    fn new(problem: &'p Problem<'a>, anchor: usize, budget: u64) -> Self {
        Acc {
            problem,
            budget,
            r: PartitionResult {
                anchor,
                nodes: 0,
                histogram: vec![0; problem.size_cap + 1],
                best: Vec::new(),
                qualified: None,
                collected: Vec::new(),
                cap_blocked: false,
                target_hit: false,
                budget_hit: false,
            },
        }
    }

    /// Records an empty set; `true` means stop the partition.
    fn visit(&mut self, set: &[usize]) -> bool {
        if self.r.nodes >= self.budget {
            self.r.budget_hit = true;
            return true;
        }
        self.r.nodes += 1;
        if self.r.nodes.is_multiple_of(PROGRESS_EVERY) {
            log::info!("partition {}: {} nodes", self.r.anchor, self.r.nodes);
        }
        let mut sorted = set.to_vec();
        sorted.sort_unstable();
        self.r.histogram[sorted.len()] += 1;
        if sorted.len() > self.r.best.len() || (sorted.len() == self.r.best.len() && sorted < self.r.best) {
            self.r.best = sorted.clone();
        }
        if let Some(q) = self.problem.qualify {
            if self.r.qualified.as_ref().is_none_or(|cur| sorted < *cur) && q(&sorted) {
                self.r.qualified = Some(sorted.clone());
            }
        }
        if self.problem.collect_size == Some(sorted.len()) {
            self.r.collected.push(sorted.clone());
        }
        if self.problem.target.is_some_and(|t| sorted.len() >= t) {
            self.r.target_hit = true;
            return true;
        }
        false
    }
}

/// Orientation signs of all ordered triples of a planar point list.
pub(crate) struct OrientTable {
    n: usize,
    signs: Vec<i8>,
}

impl OrientTable {
    pub fn new(points: &[Point]) -> Self {
        let n = points.len();
        let small: Option<Vec<(i128, i128)>> = points
            .iter()
            .map(|p| match p.to_i64s() {
                Some(c) if c.iter().all(|x| x.unsigned_abs() < 1 << 40) => Some((c[0] as i128, c[1] as i128)),
                _ => None,
            })
            .collect();
        let mut signs = vec![0i8; n * n * n];
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let s = match &small {
                        Some(c) => {
                            let (o, a, b) = (c[i], c[j], c[k]);
                            ((a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)).signum() as i8
                        }
                        None => orientation_sign(&[&points[i], &points[j], &points[k]]),
                    };
                    for (x, y, z, sign) in
                        [(i, j, k, s), (j, k, i, s), (k, i, j, s), (j, i, k, -s), (i, k, j, -s), (k, j, i, -s)]
                    {
                        signs[(x * n + y) * n + z] = sign;
                    }
                }
            }
        }
        OrientTable { n, signs }
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize, c: usize) -> i8 {
        self.signs[(a * self.n + b) * self.n + c]
    }
}

/// Planar engine. Each convex polygon is built from its lexicographically
/// least vertex `a` as a chain of left turns through candidates sorted by
/// angle around `a`; the polygon is empty iff every fan triangle
/// `(a, c_i, c_{i+1})` holds no other point.
pub(crate) fn run_planar(problem: &Problem, table: &OrientTable, anchor: usize, budget: u64) -> PartitionResult {
    let a = anchor;
    let n = problem.points.len();
    let mut order: Vec<usize> = (a + 1..n).collect();
    order.sort_by(|&b, &c| match table.get(a, b, c) {
        1 => std::cmp::Ordering::Less,
        -1 => std::cmp::Ordering::Greater,
        _ => b.cmp(&c),
    });
    let m = order.len();
    let mut ctx = Planar { table, a, order, tri: vec![-1; m * m], acc: Acc::new(problem, anchor, budget) };

    if ctx.acc.visit(&[a]) {
        return ctx.acc.r;
    }
    if problem.size_cap < 2 {
        ctx.acc.r.cap_blocked = m > 0;
        return ctx.acc.r;
    }
    let mut chain = vec![a];
    for i in 0..m {
        let c = ctx.order[i];
        if !ctx.segment_empty(c) {
            continue;
        }
        chain.push(c);
        if ctx.acc.visit(&chain) || ctx.extend(&mut chain, i) {
            return ctx.acc.r;
        }
        chain.pop();
    }
    ctx.acc.r
}

struct Planar<'t, 'p, 'a> {
    table: &'t OrientTable,
    a: usize,
    order: Vec<usize>,
    /// Memoized closed emptiness of fan triangles, by angular positions.
    tri: Vec<i8>,
    acc: Acc<'p, 'a>,
}

impl Planar<'_, '_, '_> {
    fn segment_empty(&self, c: usize) -> bool {
        (self.a + 1..c).all(|p| self.table.get(self.a, c, p) != 0)
    }

    fn triangle_empty(&mut self, i: usize, j: usize) -> bool {
        let m = self.order.len();
        let slot = i * m + j;
        if self.tri[slot] < 0 {
            let (a, b, c) = (self.a, self.order[i], self.order[j]);
            let t = self.table;
            let hit = self.order.iter().any(|&p| {
                p != b && p != c && t.get(a, b, p) >= 0 && t.get(b, c, p) >= 0 && t.get(c, a, p) >= 0
            });
            self.tri[slot] = (!hit) as i8;
        }
        self.tri[slot] == 1
    }

    fn can_extend(&mut self, prev: usize, cur: usize, pos: usize) -> bool {
        (pos + 1..self.order.len()).any(|j| {
            let next = self.order[j];
            self.table.get(self.a, cur, next) > 0 && self.table.get(prev, cur, next) > 0 && self.triangle_empty(pos, j)
        })
    }

    /// Extends a chain ending at angular position `pos`; `true` means stop.
    fn extend(&mut self, chain: &mut Vec<usize>, pos: usize) -> bool {
        let cur = chain[chain.len() - 1];
        let prev = chain[chain.len() - 2];
        if chain.len() >= self.acc.problem.size_cap {
            if !self.acc.r.cap_blocked && self.can_extend(prev, cur, pos) {
                self.acc.r.cap_blocked = true;
            }
            return false;
        }
        for j in pos + 1..self.order.len() {
            let next = self.order[j];
            if self.table.get(self.a, cur, next) <= 0 || self.table.get(prev, cur, next) <= 0 {
                continue;
            }
            if !self.triangle_empty(pos, j) {
                continue;
            }
            chain.push(next);
            if self.acc.visit(chain) || self.extend(chain, j) {
                return true;
            }
            chain.pop();
        }
        false
    }
}

/// Any-dimension engine: subsets grown in increasing index order, each
/// tested against every window point in its bounding box.
pub(crate) fn run_generic(problem: &Problem, anchor: usize, budget: u64) -> PartitionResult {
    let mut acc = Acc::new(problem, anchor, budget);
    let mut set = vec![anchor];
    if !acc.visit(&set) {
        generic_extend(problem, &mut acc, &mut set);
    }
    acc.r
}

fn generic_extend(problem: &Problem, acc: &mut Acc, set: &mut Vec<usize>) -> bool {
    let last = *set.last().unwrap();
    let at_cap = set.len() >= problem.size_cap;
    for j in last + 1..problem.points.len() {
        set.push(j);
        let ok = subset_empty(problem.points, set);
        if ok && at_cap {
            acc.r.cap_blocked = true;
            set.pop();
            return false;
        }
        if ok && (acc.visit(set) || generic_extend(problem, acc, set)) {
            return true;
        }
        set.pop();
    }
    false
}

fn subset_empty(points: &[Point], set: &[usize]) -> bool {
    let chosen: Vec<Point> = set.iter().map(|&i| points[i].clone()).collect();
    let hull = VPolytope::from_points(&chosen).expect("nonempty set of equal-dimension points");
    if hull.vertices().len() != set.len() {
        return false;
    }
    let bbox = hull.bounding_box();
    let in_box = |p: &Point| p.coords().iter().zip(&bbox).all(|(c, (lo, hi)): (&ExactScalar, _)| c >= lo && c <= hi);
    points
        .iter()
        .enumerate()
        .filter(|(i, p)| !set.contains(i) && in_box(p))
        .all(|(_, p)| hull.classify(p) == PointClass::Exterior)
}
