//! Planar primitives: points, circles, annuli, point sets, and the
//! tolerance-aware predicates the rest of the crate builds on.
//!
//! All coordinates are finite scalars. Geometric predicates take an absolute
//! tolerance; [`crate::num::DEFAULT_TOL`] is the conventional value.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;

use crate::curves::PolygonalJordanCurve;
use crate::error::{Error, Result};
use crate::num::{cst, Real};

/// A point of the plane with finite coordinates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PlanePoint<T> {
    pub x: T,
    pub y: T,
}

impl<T: Real> PlanePoint<T> {
    #[inline]
    pub fn new(x: T, y: T) -> Self {
        debug_assert!(x.is_finite() && y.is_finite(), "non-finite coordinate");
        Self { x, y }
    }

    pub fn try_new(x: T, y: T) -> Result<Self> {
        if x.is_finite() && y.is_finite() {
            Ok(Self { x, y })
        } else {
            Err(Error::InvalidParameter("non-finite coordinate".into()))
        }
    }

    #[inline]
    pub fn dist2(self, other: Self) -> T {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        dx * dx + dy * dy
    }

    #[inline]
    pub fn dist(self, other: Self) -> T {
        self.dist2(other).sqrt()
    }

    #[inline]
    pub fn dot(self, other: Self) -> T {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the cross product, i.e. the signed parallelogram area.
    #[inline]
    pub fn perp(self, other: Self) -> T {
        self.x * other.y - self.y * other.x
    }

    #[inline]
    pub fn norm2(self) -> T {
        self.dot(self)
    }

    #[inline]
    pub fn norm(self) -> T {
        self.norm2().sqrt()
    }

    #[inline]
    pub fn scale(self, s: T) -> Self {
        Self {
            x: self.x * s,
            y: self.y * s,
        }
    }

    #[inline]
    pub fn lerp(self, other: Self, t: T) -> Self {
        Self {
            x: self.x + (other.x - self.x) * t,
            y: self.y + (other.y - self.y) * t,
        }
    }

    #[inline]
    pub fn to_complex(self) -> Complex<T> {
        Complex::new(self.x, self.y)
    }

    #[inline]
    pub fn from_complex(z: Complex<T>) -> Self {
        Self::new(z.re, z.im)
    }
}

impl<T: Real> Add for PlanePoint<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self {
            x: self.x + rhs.x,
            y: self.y + rhs.y,
        }
    }
}

impl<T: Real> Sub for PlanePoint<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self {
            x: self.x - rhs.x,
            y: self.y - rhs.y,
        }
    }
}

impl<T: Real> Neg for PlanePoint<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            x: -self.x,
            y: -self.y,
        }
    }
}

impl<T: Real> Mul<T> for PlanePoint<T> {
    type Output = Self;
    fn mul(self, rhs: T) -> Self {
        self.scale(rhs)
    }
}

/// Circle with a strictly positive radius.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CircleSpec<T> {
    pub center: PlanePoint<T>,
    pub radius: T,
}

impl<T: Real> CircleSpec<T> {
    pub fn try_new(center: PlanePoint<T>, radius: T) -> Result<Self> {
        if radius.is_finite() && radius > T::zero() {
            Ok(Self { center, radius })
        } else {
            Err(Error::InvalidParameter(
                "circle radius must be positive and finite".into(),
            ))
        }
    }

    #[inline]
    pub fn point_at(self, theta: T) -> PlanePoint<T> {
        PlanePoint::new(
            self.center.x + self.radius * theta.cos(),
            self.center.y + self.radius * theta.sin(),
        )
    }

    /// Signed distance convention: negative inside, zero on the circle.
    #[inline]
    pub fn signed_distance(self, p: PlanePoint<T>) -> T {
        p.dist(self.center) - self.radius
    }
}

/// Round annulus `inner < |z - center| < outer`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AnnulusSpec<T> {
    pub center: PlanePoint<T>,
    pub inner: T,
    pub outer: T,
}

impl<T: Real> AnnulusSpec<T> {
    pub fn try_new(center: PlanePoint<T>, inner: T, outer: T) -> Result<Self> {
        if inner.is_finite() && outer.is_finite() && T::zero() < inner && inner < outer {
            Ok(Self {
                center,
                inner,
                outer,
            })
        } else {
            Err(Error::InvalidParameter(
                "annulus radii must satisfy 0 < inner < outer < infinity".into(),
            ))
        }
    }
}

/// Finite list of plane points. May be empty; operations that cannot accept
/// an empty set say so individually.
#[derive(Clone, Debug, Default)]
pub struct PointSet<T> {
    points: Vec<PlanePoint<T>>,
}

impl<T: Real> PointSet<T> {
    pub fn try_new(points: Vec<PlanePoint<T>>) -> Result<Self> {
        for p in &points {
            if !(p.x.is_finite() && p.y.is_finite()) {
                return Err(Error::InvalidParameter("non-finite coordinate".into()));
            }
        }
        Ok(Self { points })
    }

    /// `n + 1` evenly spaced samples of the segment `[a, b]`, endpoints included.
    pub fn sample_segment(a: PlanePoint<T>, b: PlanePoint<T>, n: usize) -> Self {
        assert!(n >= 1);
        let points = (0..=n)
            .map(|i| a.lerp(b, cst::<T>(i as f64) / cst::<T>(n as f64)))
            .collect();
        Self { points }
    }

    pub fn as_slice(&self) -> &[PlanePoint<T>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

impl<T> std::ops::Deref for PointSet<T> {
    type Target = [PlanePoint<T>];
    fn deref(&self) -> &[PlanePoint<T>] {
        &self.points
    }
}

/// Convex hull by monotone chain; output is counterclockwise with no three
/// collinear vertices. Duplicates are fine.
pub fn convex_hull<T: Real>(points: &[PlanePoint<T>]) -> Vec<PlanePoint<T>> {
    let mut pts: Vec<PlanePoint<T>> = points.to_vec();
    pts.sort_by(|a, b| {
        a.x.partial_cmp(&b.x)
            .unwrap()
            .then(a.y.partial_cmp(&b.y).unwrap())
    });
    pts.dedup_by(|a, b| a == b);
    let n = pts.len();
    if n <= 2 {
        return pts;
    }
    let mut hull: Vec<PlanePoint<T>> = Vec::with_capacity(2 * n);
    for &p in pts.iter().chain(pts.iter().rev().skip(1)) {
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            if (b - a).perp(p - a) <= T::zero() {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    hull.pop();
    hull
}

/// Exact diameter of a convex polygon via rotating calipers.
fn hull_diameter<T: Real>(hull: &[PlanePoint<T>]) -> T {
    let h = hull.len();
    match h {
        0 => T::zero(),
        1 => T::zero(),
        2 => hull[0].dist(hull[1]),
        _ => {
            let mut best = T::zero();
            let mut j = 1usize;
            for i in 0..h {
                let ni = (i + 1) % h;
                let edge = hull[ni] - hull[i];
                loop {
                    let nj = (j + 1) % h;
                    if edge.perp(hull[nj] - hull[i]).abs() > edge.perp(hull[j] - hull[i]).abs() {
                        j = nj;
                    } else {
                        break;
                    }
                }
                best = best.max(hull[i].dist(hull[j])).max(hull[ni].dist(hull[j]));
            }
            best
        }
    }
}

/// Largest pairwise distance of a point set.
///
/// Exact over the input points: small sets go pairwise, large ones through the
/// convex hull (the diameter of a set equals the diameter of its hull).
pub fn set_diameter<T: Real>(set: &[PlanePoint<T>]) -> Result<T> {
    if set.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    Ok(diameter_of_points(set))
}

pub(crate) fn diameter_of_points<T: Real>(set: &[PlanePoint<T>]) -> T {
    if set.len() <= 256 {
        brute_diameter(set)
    } else {
        hull_diameter(&convex_hull(set))
    }
}

fn brute_diameter<T: Real>(set: &[PlanePoint<T>]) -> T {
    let mut best2 = T::zero();
    for i in 0..set.len() {
        for j in (i + 1)..set.len() {
            best2 = best2.max(set[i].dist2(set[j]));
        }
    }
    best2.sqrt()
}

/// Smallest distance between two point sets, `inf { |x - y| }`.
pub fn d_inf<T: Real>(xs: &[PlanePoint<T>], ys: &[PlanePoint<T>]) -> Result<T> {
    if xs.is_empty() || ys.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut best2 = T::infinity();
    for &x in xs {
        for &y in ys {
            best2 = best2.min(x.dist2(y));
        }
    }
    Ok(best2.sqrt())
}

/// Where a point sits relative to a Jordan curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PointLocation {
    Inside,
    Outside,
    Boundary,
}

/// Distance from `p` to the segment `[a, b]`.
pub fn point_segment_distance<T: Real>(p: PlanePoint<T>, a: PlanePoint<T>, b: PlanePoint<T>) -> T {
    let ab = b - a;
    let len2 = ab.norm2();
    if len2 == T::zero() {
        return p.dist(a);
    }
    let t = ((p - a).dot(ab) / len2).max(T::zero()).min(T::one());
    p.dist(a.lerp(b, t))
}

/// Distance from `p` to the closed polygonal loop through `ring`.
pub fn point_ring_distance<T: Real>(p: PlanePoint<T>, ring: &[PlanePoint<T>]) -> T {
    let n = ring.len();
    let mut best = T::infinity();
    for i in 0..n {
        best = best.min(point_segment_distance(p, ring[i], ring[(i + 1) % n]));
    }
    best
}

pub(crate) fn winding_number<T: Real>(p: PlanePoint<T>, ring: &[PlanePoint<T>]) -> i32 {
    let n = ring.len();
    let mut winding = 0i32;
    for i in 0..n {
        let a = ring[i];
        let b = ring[(i + 1) % n];
        if a.y <= p.y {
            if b.y > p.y && (b - a).perp(p - a) > T::zero() {
                winding += 1;
            }
        } else if b.y <= p.y && (b - a).perp(p - a) < T::zero() {
            winding -= 1;
        }
    }
    winding
}

/// Classifies `z` against the curve: within `tol` of the boundary, strictly
/// inside, or strictly outside. Winding-number based, so the classification
/// matches the region the curve actually encloses.
pub fn point_in_polygon<T: Real>(
    z: PlanePoint<T>,
    curve: &PolygonalJordanCurve<T>,
    tol: T,
) -> PointLocation {
    let ring = curve.vertices();
    if point_ring_distance(z, ring) <= tol {
        PointLocation::Boundary
    } else if winding_number(z, ring) != 0 {
        PointLocation::Inside
    } else {
        PointLocation::Outside
    }
}

/// A circle/polygon crossing, located both on the curve and in the plane.
/// Tangential contacts are kept but flagged; they do not count toward
/// crossing parity.
#[derive(Clone, Copy, Debug)]
pub struct CircleCrossing<T> {
    pub at: crate::curves::CurvePoint<T>,
    pub point: PlanePoint<T>,
    pub tangential: bool,
}

/// All crossings of a circle with the edges of a polygonal Jordan curve,
/// in traversal order of the curve.
pub fn circle_polygon_intersection<T: Real>(
    circle: &CircleSpec<T>,
    curve: &PolygonalJordanCurve<T>,
) -> Vec<CircleCrossing<T>> {
    let tol: T = cst(crate::num::DEFAULT_TOL);
    let ring = curve.vertices();
    let n = ring.len();
    let mut out: Vec<CircleCrossing<T>> = Vec::new();
    for i in 0..n {
        let a = ring[i];
        let b = ring[(i + 1) % n];
        let d = b - a;
        let f = a - circle.center;
        let qa = d.norm2();
        if qa == T::zero() {
            continue;
        }
        let qb = cst::<T>(2.0) * d.dot(f);
        let qc = f.norm2() - circle.radius * circle.radius;
        let disc = qb * qb - cst::<T>(4.0) * qa * qc;
        // disc = 4*qa*(R^2 - dist^2), so |R - dist| <= tol maps to this band.
        let band = cst::<T>(8.0) * qa * circle.radius * tol;
        let edge_len = qa.sqrt();
        let teps = tol / edge_len;
        let mut push = |t: T, tangential: bool| {
            if t < -teps || t > T::one() + teps {
                return;
            }
            let t = t.max(T::zero()).min(T::one());
            let point = a.lerp(b, t);
            out.push(CircleCrossing {
                at: crate::curves::CurvePoint::new(i, t),
                point,
                tangential,
            });
        };
        if disc.abs() <= band {
            push(-qb / (cst::<T>(2.0) * qa), true);
        } else if disc > T::zero() {
            let root = disc.sqrt();
            push((-qb - root) / (cst::<T>(2.0) * qa), false);
            push((-qb + root) / (cst::<T>(2.0) * qa), false);
        }
    }
    out.sort_by(|p, q| {
        p.at.edge_index
            .cmp(&q.at.edge_index)
            .then(p.at.t.partial_cmp(&q.at.t).unwrap())
    });
    dedupe_crossings(&mut out, tol);
    out
}

/// Drops crossings that coincide in the plane with their cyclic predecessor;
/// shared polygon vertices otherwise report twice.
fn dedupe_crossings<T: Real>(out: &mut Vec<CircleCrossing<T>>, tol: T) {
    if out.len() < 2 {
        return;
    }
    let mut kept: Vec<CircleCrossing<T>> = Vec::with_capacity(out.len());
    for c in out.iter() {
        if let Some(last) = kept.last() {
            if last.point.dist(c.point) <= tol {
                continue;
            }
        }
        kept.push(*c);
    }
    if kept.len() >= 2 {
        let first = kept[0];
        let last = *kept.last().unwrap();
        if first.point.dist(last.point) <= tol {
            kept.pop();
        }
    }
    *out = kept;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::PolygonalJordanCurve;

    fn p(x: f64, y: f64) -> PlanePoint<f64> {
        PlanePoint::new(x, y)
    }

    fn unit_square() -> PolygonalJordanCurve<f64> {
        PolygonalJordanCurve::try_new(vec![p(0., 0.), p(1., 0.), p(1., 1.), p(0., 1.)]).unwrap()
    }

    #[test]
    fn diameter_of_singleton_is_zero() {
        assert_eq!(set_diameter(&[p(2., 2.)]).unwrap(), 0.0);
    }

    #[test]
    fn diameter_of_pair() {
        assert_eq!(set_diameter(&[p(0., 0.), p(3., 4.)]).unwrap(), 5.0);
    }

    #[test]
    fn diameter_of_square_corners_is_diagonal() {
        let d = set_diameter(&[p(0., 0.), p(1., 0.), p(1., 1.), p(0., 1.)]).unwrap();
        assert!((d - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn diameter_of_empty_set_errors() {
        assert!(matches!(
            set_diameter::<f64>(&[]),
            Err(Error::EmptyPointSet)
        ));
    }

    #[test]
    fn hull_path_matches_brute_force() {
        // Deterministic scattered cloud, large enough to take the hull path.
        let mut pts = Vec::new();
        let mut state = 1u64;
        for _ in 0..600 {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            let x = ((state >> 11) as f64 / (1u64 << 53) as f64) * 4.0 - 2.0;
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            let y = ((state >> 11) as f64 / (1u64 << 53) as f64) * 4.0 - 2.0;
            pts.push(p(x, y));
        }
        let exact = brute_diameter(&pts);
        let fast = set_diameter(&pts).unwrap();
        assert!((exact - fast).abs() < 1e-12, "hull {fast} vs brute {exact}");
    }

    #[test]
    fn d_inf_of_touching_sets_is_zero() {
        let a = [p(0., 0.), p(1., 0.)];
        let b = [p(1., 0.), p(2., 0.)];
        assert_eq!(d_inf(&a, &b).unwrap(), 0.0);
    }

    #[test]
    fn d_inf_of_sampled_real_segments() {
        let e = std::f64::consts::E;
        let xs = PointSet::sample_segment(p(1., 0.), p(e, 0.), 4096);
        let ys = PointSet::sample_segment(p(-e, 0.), p(-1., 0.), 4096);
        let d = d_inf(&xs, &ys).unwrap();
        assert!((d - 2.0).abs() < 1e-9, "{d}");
    }

    #[test]
    fn d_inf_empty_errors() {
        assert!(matches!(
            d_inf::<f64>(&[], &[p(0., 0.)]),
            Err(Error::EmptyInput)
        ));
    }

    #[test]
    fn point_in_unit_square() {
        let sq = unit_square();
        let tol = 1e-9;
        assert_eq!(
            point_in_polygon(p(0.5, 0.5), &sq, tol),
            PointLocation::Inside
        );
        assert_eq!(
            point_in_polygon(p(1.5, 0.5), &sq, tol),
            PointLocation::Outside
        );
        assert_eq!(
            point_in_polygon(p(1.0, 0.5), &sq, tol),
            PointLocation::Boundary
        );
        assert_eq!(
            point_in_polygon(p(1.0 + 1e-10, 0.5), &sq, tol),
            PointLocation::Boundary
        );
        assert_eq!(
            point_in_polygon(p(0.0, 0.0), &sq, tol),
            PointLocation::Boundary
        );
    }

    #[test]
    fn winding_orientation_independent_classification() {
        let cw = PolygonalJordanCurve::try_new(vec![p(0., 0.), p(0., 1.), p(1., 1.), p(1., 0.)])
            .unwrap();
        assert_eq!(
            point_in_polygon(p(0.5, 0.5), &cw, 1e-9),
            PointLocation::Inside
        );
    }

    #[test]
    fn circle_crosses_unit_square_twice() {
        let sq = unit_square();
        let c = CircleSpec::try_new(p(0.5, 0.0), 0.25).unwrap();
        let xs = circle_polygon_intersection(&c, &sq);
        let transversal: Vec<_> = xs.iter().filter(|c| !c.tangential).collect();
        assert_eq!(transversal.len(), 2);
        assert!((transversal[0].point.x - 0.25).abs() < 1e-9);
        assert!((transversal[1].point.x - 0.75).abs() < 1e-9);
        assert!(transversal.iter().all(|c| c.point.y.abs() < 1e-9));
    }

    #[test]
    fn circle_at_square_vertex_reports_both_incident_edges() {
        let sq = unit_square();
        let c = CircleSpec::try_new(p(0., 0.), 0.1).unwrap();
        let xs = circle_polygon_intersection(&c, &sq);
        assert_eq!(xs.len(), 2, "{xs:?}");
        for x in &xs {
            assert!((x.point.dist(p(0., 0.)) - 0.1).abs() < 1e-9);
        }
        assert!(xs
            .iter()
            .any(|x| x.point.y.abs() < 1e-12 && (x.point.x - 0.1).abs() < 1e-9));
        assert!(xs
            .iter()
            .any(|x| x.point.x.abs() < 1e-12 && (x.point.y - 0.1).abs() < 1e-9));
    }

    #[test]
    fn tangent_contact_is_flagged() {
        let sq = unit_square();
        // Touches the bottom edge from below at (0.5, 0).
        let c = CircleSpec::try_new(p(0.5, -0.25), 0.25).unwrap();
        let xs = circle_polygon_intersection(&c, &sq);
        assert_eq!(xs.len(), 1);
        assert!(xs[0].tangential);
        assert!(xs[0].point.dist(p(0.5, 0.0)) < 1e-6);
    }

    #[test]
    fn crossing_points_lie_on_both_loci() {
        let sq = unit_square();
        let c = CircleSpec::try_new(p(0.2, 0.3), 0.45).unwrap();
        for x in circle_polygon_intersection(&c, &sq) {
            assert!(c.signed_distance(x.point).abs() <= 1e-9);
            assert!(point_ring_distance(x.point, sq.vertices()) <= 1e-9);
        }
    }
}
