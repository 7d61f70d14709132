use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{ExactScalar, Field, Rational};

use super::linalg::{normal_vector, Echelon};
use super::point::{common_shape, Point};
use super::{orientation_sign, GeometryError};

pub const DEFAULT_MAX_HULL_DIM: usize = 6;

/// A facet inequality `⟨normal, x⟩ ≤ offset` with the vertices attaining equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facet {
    pub normal: Vec<ExactScalar>,
    pub offset: ExactScalar,
    /// Indices into the owning polytope's vertex list, ascending.
    pub incident_vertices: Vec<usize>,
}

impl Facet {
    /// `⟨normal, x⟩ − offset`: negative inside, zero on the hyperplane.
    pub fn slack(&self, x: &Point) -> ExactScalar {
        x.dot(&self.normal) - &self.offset
    }
}

/// Where a point sits relative to a polytope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PointClass {
    Exterior,
    Interior,
    /// On the boundary; `minimal_face` lists the vertices spanning the
    /// smallest face containing the point.
    Boundary { minimal_face: Vec<usize> },
}

/// A convex polytope given by its vertices, with derived facets.
///
/// Vertices are deduplicated, sorted lexicographically and are exactly the
/// extreme points. Polytopes that are not full-dimensional are kept in an
/// affine frame: their facets live in the projected coordinates of the
/// frame, and [`VPolytope::facets`] is empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VPolytope {
    dim: usize,
    vertices: Vec<Point>,
    facets: Vec<Facet>,
    frame: Option<Box<Frame>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Frame {
    origin: Point,
    basis: EchelonRows,
    /// Polytope of the projected vertices; `None` for a single point.
    inner: Option<VPolytope>,
    /// Inner vertex index → outer vertex index.
    inner_to_outer: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct EchelonRows {
    rows: Vec<Vec<ExactScalar>>,
    pivots: Vec<usize>,
}

impl EchelonRows {
    fn echelon(&self) -> Echelon {
        Echelon { rows: self.rows.clone(), pivots: self.pivots.clone() }
    }

    fn project(&self, x: &Point) -> Point {
        Point::new(self.pivots.iter().map(|&p| x.coord(p).clone()).collect()).expect("fields already validated")
    }
}

impl VPolytope {
    /// Hull of any nonempty finite point set, of any affine dimension.
    pub fn from_points(points: &[Point]) -> Result<Self, GeometryError> {
        let (dim, _) = common_shape(points)?;
        let mut pts = points.to_vec();
        pts.sort();
        pts.dedup();

        let mut ech = Echelon::new(dim);
        for p in &pts[1..] {
            ech.insert(&p.sub(&pts[0]));
            if ech.rank() == dim {
                break;
            }
        }
        if ech.rank() == dim {
            let (vertices, facets) = full_hull(&pts);
            return Ok(Self { dim, vertices, facets, frame: None });
        }

        let basis = EchelonRows { rows: ech.rows, pivots: ech.pivots };
        if basis.rows.is_empty() {
            return Ok(Self {
                dim,
                vertices: vec![pts[0].clone()],
                facets: Vec::new(),
                frame: Some(Box::new(Frame { origin: pts[0].clone(), basis, inner: None, inner_to_outer: vec![0] })),
            });
        }
        let projected: Vec<Point> = pts.iter().map(|p| basis.project(p)).collect();
        let inner = Self::from_points(&projected)?;
        debug_assert!(inner.frame.is_none());
        let mut vertices: Vec<Point> = inner
            .vertices
            .iter()
            .map(|v| pts[projected.iter().position(|q| q == v).expect("projected vertex")].clone())
            .collect();
        let mut order: Vec<usize> = (0..vertices.len()).collect();
        order.sort_by(|&a, &b| vertices[a].cmp(&vertices[b]));
        let mut inner_to_outer = vec![0; order.len()];
        for (outer, &inner_idx) in order.iter().enumerate() {
            inner_to_outer[inner_idx] = outer;
        }
        vertices.sort();
        Ok(Self {
            dim,
            vertices,
            facets: Vec::new(),
            frame: Some(Box::new(Frame { origin: pts[0].clone(), basis, inner: Some(inner), inner_to_outer })),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn affine_dim(&self) -> usize {
        match &self.frame {
            None => self.dim,
            Some(f) => f.basis.rows.len(),
        }
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.frame.is_none()
    }

    pub fn field(&self) -> Field {
        self.vertices.iter().fold(Field::Rational, |f, v| f.join(v.field()).expect("validated"))
    }

    pub fn is_lattice_polytope(&self) -> bool {
        self.vertices.iter().all(Point::is_integral)
    }

    /// Per-axis `[min, max]` over the vertices.
    pub fn bounding_box(&self) -> Vec<(ExactScalar, ExactScalar)> {
        (0..self.dim)
            .map(|axis| {
                let mut it = self.vertices.iter().map(|v| v.coord(axis));
                let first = it.next().expect("nonempty");
                let (lo, hi) = it.fold((first, first), |(lo, hi), c| (lo.min(c), hi.max(c)));
                (lo.clone(), hi.clone())
            })
            .collect()
    }

    pub fn vertex_index(&self, x: &Point) -> Option<usize> {
        self.vertices.binary_search(x).ok()
    }

    pub fn classify(&self, x: &Point) -> PointClass {
        assert_eq!(x.dim(), self.dim, "point dimension does not match polytope");
        let Some(frame) = &self.frame else {
            return classify_full(&self.facets, x);
        };
        let residual = frame.basis.echelon().reduce(&x.sub(&frame.origin));
        if !residual.iter().all(ExactScalar::is_zero) {
            return PointClass::Exterior;
        }
        match &frame.inner {
            None => PointClass::Boundary { minimal_face: vec![0] },
            Some(inner) => match inner.classify(&frame.basis.project(x)) {
                PointClass::Exterior => PointClass::Exterior,
                PointClass::Interior => PointClass::Boundary { minimal_face: (0..self.vertices.len()).collect() },
                PointClass::Boundary { minimal_face } => {
                    let mut face: Vec<usize> = minimal_face.iter().map(|&i| frame.inner_to_outer[i]).collect();
                    face.sort_unstable();
                    PointClass::Boundary { minimal_face: face }
                }
            },
        }
    }

    /// Every facet has exactly `dim` vertices (measured in the affine hull
    /// for lower-dimensional polytopes).
    pub fn is_simplicial(&self) -> bool {
        match &self.frame {
            None => self.facets.iter().all(|f| f.incident_vertices.len() == self.dim),
            Some(frame) => frame.inner.as_ref().is_none_or(VPolytope::is_simplicial),
        }
    }
}

fn classify_full(facets: &[Facet], x: &Point) -> PointClass {
    let mut on: Vec<&Facet> = Vec::new();
    for f in facets {
        match f.slack(x).signum() {
            Ordering::Greater => return PointClass::Exterior,
            Ordering::Equal => on.push(f),
            Ordering::Less => {}
        }
    }
    let Some((first, rest)) = on.split_first() else {
        return PointClass::Interior;
    };
    let mut face = first.incident_vertices.clone();
    for f in rest {
        face.retain(|v| f.incident_vertices.binary_search(v).is_ok());
    }
    PointClass::Boundary { minimal_face: face }
}

/// Full-dimensional hull of distinct sorted points.
fn full_hull(pts: &[Point]) -> (Vec<Point>, Vec<Facet>) {
    match pts[0].dim() {
        1 => hull_1d(pts),
        2 => hull_2d(pts),
        _ => hull_incremental(pts),
    }
}

fn hull_1d(pts: &[Point]) -> (Vec<Point>, Vec<Facet>) {
    let lo = pts.first().unwrap().clone();
    let hi = pts.last().unwrap().clone();
    let facets = vec![
        Facet { normal: vec![ExactScalar::from_int(-1)], offset: -lo.coord(0), incident_vertices: vec![0] },
        Facet { normal: vec![ExactScalar::one()], offset: hi.coord(0).clone(), incident_vertices: vec![1] },
    ];
    (vec![lo, hi], facets)
}

/// Andrew's monotone chain; collinear boundary points are dropped.
fn hull_2d(pts: &[Point]) -> (Vec<Point>, Vec<Facet>) {
    let turn = |o: &Point, a: &Point, b: &Point| orientation_sign(&[o, a, b]);
    let mut lower: Vec<&Point> = Vec::new();
    for p in pts {
        while lower.len() >= 2 && turn(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<&Point> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && turn(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    let ring: Vec<&Point> = lower.into_iter().chain(upper).collect();

    let mut vertices: Vec<Point> = ring.iter().map(|&p| p.clone()).collect();
    vertices.sort();
    let idx = |p: &Point| vertices.binary_search(p).unwrap();
    let mut facets: Vec<Facet> = (0..ring.len())
        .map(|i| {
            let (u, v) = (ring[i], ring[(i + 1) % ring.len()]);
            let normal = canonical_normal(vec![v.coord(1) - u.coord(1), u.coord(0) - v.coord(0)]);
            let offset = u.dot(&normal);
            let mut inc = vec![idx(u), idx(v)];
            inc.sort_unstable();
            Facet { normal, offset, incident_vertices: inc }
        })
        .collect();
    facets.sort_by(|a, b| a.incident_vertices.cmp(&b.incident_vertices));
    (vertices, facets)
}

struct WorkFacet {
    normal: Vec<ExactScalar>,
    offset: ExactScalar,
    /// Indices into `pts`.
    incident: Vec<usize>,
}

/// Beneath-beyond insertion in canonical point order. Facets are kept as
/// full hyperplanes with all incident vertices, so coplanar pieces are
/// merged by construction. New facets through an inserted point are cones
/// over ridges shared by a visible and a hidden facet.
fn hull_incremental(pts: &[Point]) -> (Vec<Point>, Vec<Facet>) {
    let dim = pts[0].dim();
    let mut simplex = vec![0usize];
    let mut ech = Echelon::new(dim);
    for (i, p) in pts.iter().enumerate().skip(1) {
        if ech.insert(&p.sub(&pts[0])) {
            simplex.push(i);
            if simplex.len() == dim + 1 {
                break;
            }
        }
    }

    let mut verts: Vec<usize> = simplex.clone();
    let mut facets: Vec<WorkFacet> = Vec::new();
    for skip in 0..simplex.len() {
        let others: Vec<usize> = simplex.iter().copied().filter(|&i| i != simplex[skip]).collect();
        let rows: Vec<Vec<ExactScalar>> = others[1..].iter().map(|&i| pts[i].sub(&pts[others[0]])).collect();
        let n = normal_vector(&rows, dim).expect("simplex facets span hyperplanes");
        let mut f = oriented_facet(n, &pts[others[0]], &pts[simplex[skip]]);
        f.incident = others;
        facets.push(f);
    }

    for i in 0..pts.len() {
        if verts.contains(&i) {
            continue;
        }
        let p = &pts[i];
        let visible: Vec<bool> = facets.iter().map(|f| (p.dot(&f.normal) - &f.offset).is_positive()).collect();
        if !visible.iter().any(|&v| v) {
            continue;
        }
        let mut seen = Vec::new();
        let mut next = Vec::new();
        for (f, &vis) in facets.into_iter().zip(&visible) {
            if vis {
                seen.push(f);
            } else {
                next.push(f);
            }
        }
        let mut fresh: Vec<WorkFacet> = Vec::new();
        for f in &seen {
            for g in &next {
                let ridge: Vec<usize> = f.incident.iter().copied().filter(|v| g.incident.contains(v)).collect();
                if ridge.len() + 1 < dim {
                    continue;
                }
                let rows: Vec<Vec<ExactScalar>> = ridge.iter().map(|&v| pts[v].sub(p)).collect();
                let Some(n) = normal_vector(&rows, dim) else { continue };
                let offset = p.dot(&n);
                let mut pos = false;
                let mut neg = false;
                for &v in &verts {
                    match (pts[v].dot(&n) - &offset).signum() {
                        Ordering::Greater => pos = true,
                        Ordering::Less => neg = true,
                        Ordering::Equal => {}
                    }
                    if pos && neg {
                        break;
                    }
                }
                if pos && neg {
                    continue;
                }
                let n = if pos { n.into_iter().map(|x| -x).collect() } else { n };
                let normal = canonical_normal(n);
                if next.iter().chain(&fresh).any(|h| h.normal == normal) {
                    continue;
                }
                let offset = p.dot(&normal);
                fresh.push(WorkFacet { normal, offset, incident: Vec::new() });
            }
        }
        next.extend(fresh);
        facets = next;
        verts.push(i);

        for f in facets.iter_mut() {
            f.incident = verts.iter().copied().filter(|&v| pts[v].dot(&f.normal) == f.offset).collect();
        }
        verts.retain(|&v| {
            let mut e = Echelon::new(dim);
            for f in facets.iter().filter(|f| f.incident.contains(&v)) {
                e.insert(&f.normal);
                if e.rank() == dim {
                    return true;
                }
            }
            false
        });
        for f in facets.iter_mut() {
            f.incident.retain(|v| verts.contains(v));
        }
    }

    verts.sort_unstable();
    let vertices: Vec<Point> = verts.iter().map(|&v| pts[v].clone()).collect();
    let mut out: Vec<Facet> = facets
        .into_iter()
        .map(|f| {
            let mut inc: Vec<usize> = f.incident.iter().map(|v| verts.binary_search(v).unwrap()).collect();
            inc.sort_unstable();
            Facet { normal: f.normal, offset: f.offset, incident_vertices: inc }
        })
        .collect();
    out.sort_by(|a, b| a.incident_vertices.cmp(&b.incident_vertices).then_with(|| a.normal.cmp(&b.normal)));
    (vertices, out)
}

fn oriented_facet(n: Vec<ExactScalar>, on: &Point, beneath: &Point) -> WorkFacet {
    let offset = on.dot(&n);
    let n = if (beneath.dot(&n) - &offset).is_positive() { n.into_iter().map(|x| -x).collect() } else { n };
    let normal = canonical_normal(n);
    let offset = on.dot(&normal);
    WorkFacet { normal, offset, incident: Vec::new() }
}

/// Positive rescaling of a normal: primitive integer vector when every
/// entry is rational, otherwise leading nonzero entry of absolute value 1.
fn canonical_normal(n: Vec<ExactScalar>) -> Vec<ExactScalar> {
    if n.iter().all(|x| x.as_rational().is_some()) {
        let rats: Vec<&Rational> = n.iter().map(|x| x.as_rational().unwrap()).collect();
        let lcm = rats.iter().fold(BigInt::one(), |l, r| l.lcm(r.denom()));
        let ints: Vec<BigInt> = rats.iter().map(|r| (*r * Rational::from_integer(lcm.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        if g.is_zero() {
            return n;
        }
        return ints.into_iter().map(|x| ExactScalar::from_bigint(x / &g)).collect();
    }
    let lead = n.iter().find(|x| !x.is_zero()).expect("nonzero normal").abs();
    n.iter().map(|x| x / &lead).collect()
}

pub(crate) fn for_each_combination(n: usize, r: usize, mut f: impl FnMut(&[usize])) {
    if r > n {
        return;
    }
    let mut idx: Vec<usize> = (0..r).collect();
    loop {
        f(&idx);
        let Some(pos) = (0..r).rev().find(|&i| idx[i] != i + n - r) else {
            return;
        };
        idx[pos] += 1;
        for j in pos + 1..r {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Serialized form; facets are recomputed on load.
#[derive(Serialize, Deserialize)]
pub(crate) struct PolytopeJson {
    pub dim: usize,
    pub scalar: String,
    pub vertices: Vec<Point>,
}

impl Serialize for VPolytope {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        PolytopeJson { dim: self.dim, scalar: self.field().tag(), vertices: self.vertices.clone() }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for VPolytope {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let raw = PolytopeJson::deserialize(deserializer)?;
        let tag = Field::parse_tag(&raw.scalar).map_err(D::Error::custom)?;
        let p = VPolytope::from_points(&raw.vertices).map_err(D::Error::custom)?;
        if p.dim != raw.dim {
            return Err(D::Error::custom(format!("dim {} does not match vertex length {}", raw.dim, p.dim)));
        }
        if tag.join(p.field()).map_err(D::Error::custom)? != tag {
            return Err(D::Error::custom(format!("vertices do not fit scalar field {}", raw.scalar)));
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[&[i64]]) -> Vec<Point> {
        v.iter().map(|c| Point::from_ints(c)).collect()
    }

    fn cube(d: usize) -> Vec<Point> {
        (0..1u32 << d).map(|m| Point::from_ints(&(0..d).map(|i| ((m >> i) & 1) as i64).collect::<Vec<_>>())).collect()
    }

    #[test]
    fn square_drops_interior_point() {
        let mut input = pts(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        input.push(Point::new(vec![ExactScalar::ratio(1, 2), ExactScalar::ratio(1, 2)]).unwrap());
        let p = VPolytope::from_points(&input).unwrap();
        assert_eq!(p.vertices().len(), 4);
        assert_eq!(p.facets().len(), 4);
    }

    #[test]
    fn cube_has_six_square_facets() {
        let p = VPolytope::from_points(&cube(3)).unwrap();
        assert_eq!(p.vertices().len(), 8);
        assert_eq!(p.facets().len(), 6);
        assert!(p.facets().iter().all(|f| f.incident_vertices.len() == 4));
        assert!(!p.is_simplicial());
    }

    #[test]
    fn hypercubes_up_to_dim_five() {
        for d in 1..=5 {
            let p = VPolytope::from_points(&cube(d)).unwrap();
            assert_eq!(p.vertices().len(), 1 << d);
            assert_eq!(p.facets().len(), 2 * d);
        }
    }

    #[test]
    fn collinear_points_in_plane() {
        let p = VPolytope::from_points(&pts(&[&[0, 0], &[1, 1], &[2, 2], &[3, 3]])).unwrap();
        assert_eq!(p.affine_dim(), 1);
        assert_eq!(p.vertices(), &pts(&[&[0, 0], &[3, 3]])[..]);
        assert_eq!(p.classify(&Point::from_ints(&[1, 1])), PointClass::Boundary { minimal_face: vec![0, 1] });
        assert_eq!(p.classify(&Point::from_ints(&[3, 3])), PointClass::Boundary { minimal_face: vec![1] });
        assert_eq!(p.classify(&Point::from_ints(&[4, 4])), PointClass::Exterior);
        assert_eq!(p.classify(&Point::from_ints(&[1, 2])), PointClass::Exterior);
    }

    #[test]
    fn degenerate_vertex_order_is_lexicographic() {
        // Segment whose projection reverses the order of its endpoints is impossible
        // (projection keeps a pivot axis), but a planar polygon in 3-space must still
        // report lexicographically sorted vertices.
        let p = VPolytope::from_points(&pts(&[&[0, 2, 1], &[1, 0, 1], &[0, 0, 1], &[2, 2, 1]])).unwrap();
        assert_eq!(p.affine_dim(), 2);
        let mut sorted = p.vertices().to_vec();
        sorted.sort();
        assert_eq!(p.vertices(), &sorted[..]);
        assert_eq!(p.classify(&Point::from_ints(&[0, 1, 1])), PointClass::Boundary { minimal_face: vec![0, 1] });
    }

    #[test]
    fn single_point() {
        let p = VPolytope::from_points(&pts(&[&[1, 1, 1], &[1, 1, 1]])).unwrap();
        assert_eq!(p.affine_dim(), 0);
        assert_eq!(p.classify(&Point::from_ints(&[1, 1, 1])), PointClass::Boundary { minimal_face: vec![0] });
        assert_eq!(p.classify(&Point::from_ints(&[1, 1, 2])), PointClass::Exterior);
    }

    #[test]
    fn combinations_enumerate_all() {
        let mut seen = Vec::new();
        for_each_combination(4, 2, |c| seen.push(c.to_vec()));
        assert_eq!(seen.len(), 6);
        assert_eq!(seen[0], vec![0, 1]);
        assert_eq!(seen[5], vec![2, 3]);
        let mut count = 0;
        for_each_combination(3, 0, |_| count += 1);
        assert_eq!(count, 1);
    }

    #[test]
    fn json_round_trip() {
        let p = VPolytope::from_points(&cube(2)).unwrap();
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, r#"{"dim":2,"scalar":"rational","vertices":[["0","0"],["0","1"],["1","0"],["1","1"]]}"#);
        let back: VPolytope = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p);
        assert!(serde_json::from_str::<VPolytope>(r#"{"dim":3,"scalar":"rational","vertices":[["0","0"]]}"#).is_err());
        assert!(serde_json::from_str::<VPolytope>(r#"{"dim":1,"scalar":"quad:2","vertices":[["sqrt(3)"]]}"#).is_err());
    }
}
