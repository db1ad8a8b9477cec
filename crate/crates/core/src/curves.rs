//! Polygonal Jordan curves and sub-arcs.
//!
//! Curves here are closed simple polylines; the continuum objects they stand
//! in for are recovered only in the limit of fine traces, so every consumer
//! states its own sampling resolution.

use std::collections::hash_map::Entry;
use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{point_segment_distance, PlanePoint};
use crate::maps::MapSpec;
use crate::num::{cst, Real};

/// A position on a polygonal curve: a point at parameter `t` along edge
/// `edge_index`. `(i, 1)` and `(i + 1, 0)` denote the same plane point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CurvePoint<T> {
    pub edge_index: usize,
    pub t: T,
}

impl<T: Real> CurvePoint<T> {
    pub fn new(edge_index: usize, t: T) -> Self {
        debug_assert!(t >= T::zero() && t <= T::one());
        Self { edge_index, t }
    }

    /// Lexicographic order by `(edge_index, t)`; used for deterministic
    /// tie-breaking of reported witnesses.
    pub fn lex_cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.edge_index
            .cmp(&other.edge_index)
            .then(self.t.partial_cmp(&other.t).unwrap())
    }
}

/// Closed simple polygon, stored counterclockwise.
#[derive(Clone, Debug)]
pub struct PolygonalJordanCurve<T> {
    vertices: Vec<PlanePoint<T>>,
    /// prefix[i] = arclength from vertex 0 to vertex i; prefix[n] = perimeter.
    prefix: Vec<T>,
}

impl<T: Real> PolygonalJordanCurve<T> {
    /// Validates and normalizes a vertex loop: at least three vertices, all
    /// finite, consecutive vertices distinct, no self-intersections.
    /// Clockwise input is reversed so the stored loop is counterclockwise.
    pub fn try_new(mut vertices: Vec<PlanePoint<T>>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::NotJordan("fewer than three vertices".into()));
        }
        for v in &vertices {
            if !(v.x.is_finite() && v.y.is_finite()) {
                return Err(Error::NotJordan("non-finite vertex".into()));
            }
        }
        let n = vertices.len();
        for i in 0..n {
            if vertices[i] == vertices[(i + 1) % n] {
                return Err(Error::NotJordan("repeated consecutive vertex".into()));
            }
        }
        if signed_area(&vertices) < T::zero() {
            vertices.reverse();
        }
        if let Some((i, j)) = find_self_intersection(&vertices) {
            return Err(Error::NotJordan(format!("edges {i} and {j} intersect")));
        }
        let mut prefix = Vec::with_capacity(n + 1);
        let mut acc = T::zero();
        prefix.push(acc);
        for i in 0..n {
            acc += vertices[i].dist(vertices[(i + 1) % n]);
            prefix.push(acc);
        }
        Ok(Self { vertices, prefix })
    }

    pub fn vertices(&self) -> &[PlanePoint<T>] {
        &self.vertices
    }

    /// Rigid translation. Simplicity and orientation are translation
    /// invariants, so this skips revalidation; arclengths are recomputed to
    /// absorb rounding of the shifted vertices. Used to move far-from-origin
    /// geometry into a frame where cell-sized coordinates stay accurate.
    pub fn translated(&self, by: PlanePoint<T>) -> Self {
        let vertices: Vec<_> = self.vertices.iter().map(|&v| v + by).collect();
        let n = vertices.len();
        let mut prefix = Vec::with_capacity(n + 1);
        let mut acc = T::zero();
        prefix.push(acc);
        for i in 0..n {
            acc += vertices[i].dist(vertices[(i + 1) % n]);
            prefix.push(acc);
        }
        Self { vertices, prefix }
    }

    pub fn num_edges(&self) -> usize {
        self.vertices.len()
    }

    pub fn perimeter(&self) -> T {
        *self.prefix.last().unwrap()
    }

    pub fn edge(&self, i: usize) -> (PlanePoint<T>, PlanePoint<T>) {
        let n = self.vertices.len();
        (self.vertices[i % n], self.vertices[(i + 1) % n])
    }

    pub fn edge_length(&self, i: usize) -> T {
        self.prefix[i + 1] - self.prefix[i]
    }

    /// Signed area of the stored loop (positive, since storage is CCW).
    pub fn area(&self) -> T {
        signed_area(&self.vertices)
    }

    pub fn bbox(&self) -> (PlanePoint<T>, PlanePoint<T>) {
        let mut lo = self.vertices[0];
        let mut hi = self.vertices[0];
        for v in &self.vertices {
            lo.x = lo.x.min(v.x);
            lo.y = lo.y.min(v.y);
            hi.x = hi.x.max(v.x);
            hi.y = hi.y.max(v.y);
        }
        (lo, hi)
    }

    pub fn point_at(&self, cp: CurvePoint<T>) -> PlanePoint<T> {
        let (a, b) = self.edge(cp.edge_index);
        a.lerp(b, cp.t)
    }

    /// Arclength position of a curve point in `[0, perimeter)`.
    pub fn arc_position(&self, cp: CurvePoint<T>) -> T {
        let s = self.prefix[cp.edge_index] + self.edge_length(cp.edge_index) * cp.t;
        if s >= self.perimeter() {
            s - self.perimeter()
        } else {
            s
        }
    }

    /// Curve point at arclength position `s` (taken mod perimeter).
    pub fn at_arc_position(&self, s: T) -> CurvePoint<T> {
        let total = self.perimeter();
        let mut s = s % total;
        if s < T::zero() {
            s += total;
        }
        // Binary search for the edge containing s.
        let mut lo = 0usize;
        let mut hi = self.vertices.len();
        while lo + 1 < hi {
            let mid = (lo + hi) / 2;
            if self.prefix[mid] <= s {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let len = self.edge_length(lo);
        let t = ((s - self.prefix[lo]) / len).max(T::zero()).min(T::one());
        CurvePoint::new(lo, t)
    }

    /// Nearest point of the curve to `p`, with its distance.
    pub fn nearest_point(&self, p: PlanePoint<T>) -> (CurvePoint<T>, T) {
        let n = self.vertices.len();
        let mut best = (CurvePoint::new(0, T::zero()), T::infinity());
        for i in 0..n {
            let (a, b) = self.edge(i);
            let ab = b - a;
            let len2 = ab.norm2();
            let t = ((p - a).dot(ab) / len2).max(T::zero()).min(T::one());
            let d = p.dist(a.lerp(b, t));
            if d < best.1 {
                best = (CurvePoint::new(i, t), d);
            }
        }
        best
    }

    /// Unit normal pointing into the enclosed region. At a vertex (`t = 0`)
    /// the two incident edge normals are bisected.
    pub fn inward_normal(&self, cp: CurvePoint<T>) -> PlanePoint<T> {
        let n = self.vertices.len();
        let edge_normal = |i: usize| {
            let (a, b) = self.edge(i);
            let d = b - a;
            let len = d.norm();
            PlanePoint::new(-d.y / len, d.x / len)
        };
        let mut normal = edge_normal(cp.edge_index);
        if cp.t == T::zero() {
            let prev = edge_normal((cp.edge_index + n - 1) % n);
            normal = normal + prev;
            let len = normal.norm();
            if len > T::zero() {
                normal = normal.scale(T::one() / len);
            }
        }
        normal
    }

    /// `m = ceil(resolution * perimeter)` samples at uniform arclength
    /// spacing, starting at vertex 0. `resolution` is samples per unit of
    /// perimeter.
    pub fn sample_uniform(&self, resolution: usize) -> Vec<CurveSample<T>> {
        let total = self.perimeter();
        let m = (cst::<T>(resolution as f64) * total)
            .ceil()
            .to_usize()
            .unwrap()
            .max(1);
        let step = total / cst::<T>(m as f64);
        let mut out = Vec::with_capacity(m);
        let mut edge = 0usize;
        for j in 0..m {
            let s = step * cst::<T>(j as f64);
            while edge + 1 < self.prefix.len() - 1 && self.prefix[edge + 1] <= s {
                edge += 1;
            }
            let len = self.edge_length(edge);
            let t = ((s - self.prefix[edge]) / len).min(T::one());
            let at = CurvePoint::new(edge, t);
            out.push(CurveSample {
                at,
                pos: self.point_at(at),
                s,
            });
        }
        out
    }
}

/// A uniform-perimeter sample: curve coordinates, plane position, and
/// arclength parameter.
#[derive(Clone, Copy, Debug)]
pub struct CurveSample<T> {
    pub at: CurvePoint<T>,
    pub pos: PlanePoint<T>,
    pub s: T,
}

/// The two polylines a pair of curve points splits a Jordan curve into.
/// Both arcs run forward along the curve and include `p` and `q`.
#[derive(Clone, Debug)]
pub struct SubarcPair<T> {
    pub arc1: Vec<PlanePoint<T>>,
    pub arc2: Vec<PlanePoint<T>>,
}

/// Splits the curve at two distinct points. `arc1` runs from `p` forward to
/// `q`, `arc2` from `q` forward back to `p`.
pub fn split_at<T: Real>(
    curve: &PolygonalJordanCurve<T>,
    p: CurvePoint<T>,
    q: CurvePoint<T>,
) -> Result<SubarcPair<T>> {
    let pp = curve.point_at(p);
    let qq = curve.point_at(q);
    if pp == qq {
        return Err(Error::DegenerateSplit);
    }
    let arc1 = collect_arc(curve, p, q);
    let arc2 = collect_arc(curve, q, p);
    Ok(SubarcPair { arc1, arc2 })
}

fn collect_arc<T: Real>(
    curve: &PolygonalJordanCurve<T>,
    from: CurvePoint<T>,
    to: CurvePoint<T>,
) -> Vec<PlanePoint<T>> {
    let n = curve.num_edges();
    let total = curve.perimeter();
    let s_from = curve.arc_position(from);
    let mut s_to = curve.arc_position(to);
    if s_to <= s_from {
        s_to += total;
    }
    let mut out = vec![curve.point_at(from)];
    // Vertices strictly between the two arc positions, in traversal order.
    let mut k = from.edge_index + 1;
    loop {
        let base = curve.prefix[k % n] + if k >= n { total } else { T::zero() };
        if base >= s_to {
            break;
        }
        if base > s_from {
            out.push(curve.vertices()[k % n]);
        }
        k += 1;
        if k > from.edge_index + n {
            break;
        }
    }
    out.push(curve.point_at(to));
    out
}

/// Largest pairwise distance over the polyline's vertex set.
pub fn subarc_diameter<T: Real>(arc: &[PlanePoint<T>]) -> Result<T> {
    if arc.is_empty() {
        return Err(Error::EmptyArc);
    }
    Ok(crate::geom::diameter_of_points(arc))
}

/// Total length of an open polyline.
pub fn polyline_length<T: Real>(arc: &[PlanePoint<T>]) -> T {
    let mut acc = T::zero();
    for w in arc.windows(2) {
        acc += w[0].dist(w[1]);
    }
    acc
}

/// Traces the boundary of a catalog map's image domain: the image of the
/// `n`-th roots of unity under the disk-to-domain evaluator, as a Jordan
/// curve.
pub fn trace_map_boundary<T: Real>(map: &MapSpec<T>, n: usize) -> Result<PolygonalJordanCurve<T>> {
    if n < 16 {
        return Err(Error::InvalidParameter("trace needs n >= 16".into()));
    }
    let tau: T = cst::<T>(2.0) * T::PI();
    let mut vertices = Vec::with_capacity(n);
    for j in 0..n {
        let theta = tau * cst::<T>(j as f64) / cst::<T>(n as f64);
        let w = num_complex::Complex::new(theta.cos(), theta.sin());
        let z = map.eval_inverse(w)?;
        vertices.push(PlanePoint::new(z.re, z.im));
    }
    PolygonalJordanCurve::try_new(vertices).map_err(|_| Error::SelfIntersectingTrace)
}

fn signed_area<T: Real>(vertices: &[PlanePoint<T>]) -> T {
    let n = vertices.len();
    let mut acc = T::zero();
    for i in 0..n {
        let a = vertices[i];
        let b = vertices[(i + 1) % n];
        acc += a.perp(b);
    }
    acc / cst::<T>(2.0)
}

/// Returns an offending pair of non-adjacent edges if the loop self-intersects.
///
/// Edges are binned into a uniform spatial hash so near-circular traces with
/// tens of thousands of edges stay close to linear time.
fn find_self_intersection<T: Real>(vertices: &[PlanePoint<T>]) -> Option<(usize, usize)> {
    let n = vertices.len();
    let mut lo = vertices[0];
    let mut hi = vertices[0];
    let mut total_len = T::zero();
    for i in 0..n {
        let v = vertices[i];
        lo.x = lo.x.min(v.x);
        lo.y = lo.y.min(v.y);
        hi.x = hi.x.max(v.x);
        hi.y = hi.y.max(v.y);
        total_len += v.dist(vertices[(i + 1) % n]);
    }
    let span = (hi.x - lo.x).max(hi.y - lo.y).max(T::min_positive_value());
    let avg_edge = total_len / cst::<T>(n as f64);
    let cell = avg_edge.max(span / cst::<T>(1024.0));
    let touch_tol = span * cst::<T>(1e-12);

    let key = |x: T, y: T| -> (i64, i64) {
        (
            ((x - lo.x) / cell).floor().to_i64().unwrap_or(0),
            ((y - lo.y) / cell).floor().to_i64().unwrap_or(0),
        )
    };
    let mut grid: HashMap<(i64, i64), Vec<u32>> = HashMap::new();
    let mut candidates: Vec<(u32, u32)> = Vec::new();
    for i in 0..n {
        let a = vertices[i];
        let b = vertices[(i + 1) % n];
        let (ix0, iy0) = key(a.x.min(b.x), a.y.min(b.y));
        let (ix1, iy1) = key(a.x.max(b.x), a.y.max(b.y));
        for ix in ix0..=ix1 {
            for iy in iy0..=iy1 {
                match grid.entry((ix, iy)) {
                    Entry::Occupied(mut e) => {
                        for &j in e.get().iter() {
                            candidates.push((j, i as u32));
                        }
                        e.get_mut().push(i as u32);
                    }
                    Entry::Vacant(e) => {
                        e.insert(vec![i as u32]);
                    }
                }
            }
        }
    }
    candidates.sort_unstable();
    candidates.dedup();
    for (j, i) in candidates {
        let (i, j) = (i as usize, j as usize);
        let adjacent = (i + 1) % n == j || (j + 1) % n == i;
        if adjacent {
            continue;
        }
        let (a, b) = (vertices[i], vertices[(i + 1) % n]);
        let (c, d) = (vertices[j], vertices[(j + 1) % n]);
        if segments_touch(a, b, c, d, touch_tol) {
            return Some((i.min(j), i.max(j)));
        }
    }
    None
}

fn segments_touch<T: Real>(
    a: PlanePoint<T>,
    b: PlanePoint<T>,
    c: PlanePoint<T>,
    d: PlanePoint<T>,
    tol: T,
) -> bool {
    let d1 = (b - a).perp(c - a);
    let d2 = (b - a).perp(d - a);
    let d3 = (d - c).perp(a - c);
    let d4 = (d - c).perp(b - c);
    if ((d1 > T::zero() && d2 < T::zero()) || (d1 < T::zero() && d2 > T::zero()))
        && ((d3 > T::zero() && d4 < T::zero()) || (d3 < T::zero() && d4 > T::zero()))
    {
        return true;
    }
    let near = point_segment_distance(c, a, b)
        .min(point_segment_distance(d, a, b))
        .min(point_segment_distance(a, c, d))
        .min(point_segment_distance(b, c, d));
    near <= tol
}

/// Wire form of a polygon domain: `{"type": "polygon", "vertices": [[x, y], ...]}`.
#[derive(Serialize, Deserialize)]
pub struct PolygonWire {
    #[serde(rename = "type")]
    pub kind: String,
    pub vertices: Vec<[f64; 2]>,
}

pub fn polygon_from_json(s: &str) -> Result<PolygonalJordanCurve<f64>> {
    let wire: PolygonWire = serde_json::from_str(s)?;
    if wire.kind != "polygon" {
        return Err(Error::InvalidParameter(format!(
            "expected type \"polygon\", got \"{}\"",
            wire.kind
        )));
    }
    let vertices = wire
        .vertices
        .iter()
        .map(|v| PlanePoint::new(v[0], v[1]))
        .collect();
    PolygonalJordanCurve::try_new(vertices)
}

pub fn polygon_to_json(curve: &PolygonalJordanCurve<f64>) -> String {
    let wire = PolygonWire {
        kind: "polygon".into(),
        vertices: curve.vertices().iter().map(|p| [p.x, p.y]).collect(),
    };
    serde_json::to_string(&wire).expect("polygon serialization cannot fail")
}
