//! Connected components of a Jordan domain cut by disks, crosscuts, and
//! circles: the piece of D_r(zeta0) ∩ D whose closure contains zeta0, the two
//! sides of a crosscut, and the arcs a separating circle cuts out of D.
//!
//! Everything here is flood fill on a uniform grid. Cells the boundary or the
//! cut passes through are blocked, so distinct components never touch through
//! a shared boundary cell, and "reaches a landmark" means the component has a
//! member cell within a small Chebyshev ball of it.

use crate::curves::{split_at, CurvePoint, PolygonalJordanCurve};
use crate::error::{Error, Result};
use crate::geom::{
    circle_polygon_intersection, point_in_polygon, CircleSpec, PlanePoint, PointLocation,
};
use crate::num::{cst, Real};
use crate::raster::{
    block_curve, block_polyline, component_mask, connected_components, fill_disk,
    fill_polygon_interior, flood_fill, GridSpec, Mask,
};

/// A landmark counts as reached when a member cell center is within this many
/// cells of it (Chebyshev). The curve's blocked band is one cell wide, so the
/// nearest member center can legitimately sit two cells away from a boundary
/// landmark; 2.5 adds half a cell of headroom without reaching across the
/// band to the far side.
const REACH_CELLS: f64 = 2.5;

/// Seed offsets along the inward normal, in cells. Small offsets can land in
/// the blocked band near corners; the ladder retries further in.
const SEED_OFFSETS: std::ops::RangeInclusive<usize> = 2..=8;

#[derive(Clone, Debug)]
pub struct JordanDomain<T> {
    pub boundary: PolygonalJordanCurve<T>,
}

impl<T: Real> JordanDomain<T> {
    pub fn new(boundary: PolygonalJordanCurve<T>) -> Self {
        Self { boundary }
    }

    pub fn area(&self) -> T {
        self.boundary.area()
    }
}

/// One connected component of a cut-up domain, as grid cells.
#[derive(Clone, Debug)]
pub struct ComponentRegion<T> {
    pub grid: GridSpec<T>,
    pub mask: Mask,
    pub area_estimate: T,
    /// The landmarks (as curve points of the domain boundary) this
    /// component's closure reaches.
    pub boundary_touch: Vec<CurvePoint<T>>,
}

impl<T: Real> ComponentRegion<T> {
    fn from_mask(grid: GridSpec<T>, mask: Mask, boundary_touch: Vec<CurvePoint<T>>) -> Self {
        let area_estimate = cst::<T>(mask.count() as f64) * grid.cell_area();
        Self {
            grid,
            mask,
            area_estimate,
            boundary_touch,
        }
    }

    /// Chebyshev distance from the member cells to `p`, in cell units.
    pub fn reach_to(&self, p: PlanePoint<T>) -> T {
        self.mask.min_chebyshev_to(&self.grid, p)
    }

    pub fn contains(&self, p: PlanePoint<T>) -> bool {
        self.grid
            .index_of(p)
            .is_some_and(|(ix, iy)| self.mask.get(ix, iy))
    }
}

fn validate_on_curve<T: Real>(curve: &PolygonalJordanCurve<T>, cp: CurvePoint<T>) -> Result<()> {
    if cp.edge_index >= curve.num_edges() || cp.t < T::zero() || cp.t > T::one() {
        return Err(Error::InvalidParameter(
            "curve point outside the vertex loop".into(),
        ));
    }
    Ok(())
}

/// Rasterizes D_r(zeta0) ∩ D in a frame centered at zeta0 and returns the
/// free mask plus the grid. The local frame keeps cell-sized coordinates
/// accurate even when the domain lives far from the origin.
fn rasterize_disk_cut<T: Real>(
    domain: &JordanDomain<T>,
    zeta_pt: PlanePoint<T>,
    r: T,
    grid_n: usize,
) -> Result<(GridSpec<T>, Mask, PolygonalJordanCurve<T>)> {
    let local = domain
        .boundary
        .translated(PlanePoint::new(-zeta_pt.x, -zeta_pt.y));
    let grid = GridSpec::centered_square(PlanePoint::new(T::zero(), T::zero()), r, grid_n)?;
    let disk = CircleSpec::try_new(PlanePoint::new(T::zero(), T::zero()), r)?;
    let mut free = fill_disk(&grid, disk);
    free.intersect_with(&fill_polygon_interior(&grid, &local));
    free.subtract(&block_curve(&grid, &local));
    Ok((grid, free, local))
}

fn shift_origin<T: Real>(grid: &GridSpec<T>, by: PlanePoint<T>) -> GridSpec<T> {
    GridSpec::new(grid.origin + by, grid.cell, grid.nx, grid.ny).unwrap()
}

/// The connected component of D_r(zeta0) ∩ D whose closure contains zeta0.
///
/// Seeds a flood fill a couple of cells along the inward normal at zeta0,
/// retrying deeper when the seed lands outside the free region, and then
/// verifies the component actually reaches zeta0.
pub fn boundary_component<T: Real>(
    domain: &JordanDomain<T>,
    zeta0: CurvePoint<T>,
    r: T,
    grid_n: usize,
) -> Result<ComponentRegion<T>> {
    validate_on_curve(&domain.boundary, zeta0)?;
    if !(r > T::zero()) || !r.is_finite() {
        return Err(Error::InvalidParameter(
            "disk radius must be positive".into(),
        ));
    }
    if grid_n < 128 {
        return Err(Error::InvalidParameter(
            "grid_n must be at least 128".into(),
        ));
    }
    let zeta_pt = domain.boundary.point_at(zeta0);
    let (grid, free, local) = rasterize_disk_cut(domain, zeta_pt, r, grid_n)?;

    let normal = local.inward_normal(zeta0);
    let origin_pt = PlanePoint::new(T::zero(), T::zero());
    let mut seed = None;
    for offset in SEED_OFFSETS {
        let p = origin_pt + normal.scale(grid.cell * cst::<T>(offset as f64));
        if let Some((ix, iy)) = grid.index_of(p) {
            if free.get(ix, iy) {
                seed = Some((ix, iy));
                break;
            }
        }
    }
    let Some(seed) = seed else {
        return Err(Error::CannotSeed);
    };
    let mask = flood_fill(&free, seed);
    if mask.min_chebyshev_to(&grid, origin_pt) > cst::<T>(REACH_CELLS) {
        return Err(Error::ComponentDoesNotReach);
    }
    Ok(ComponentRegion::from_mask(
        shift_origin(&grid, zeta_pt),
        mask,
        vec![zeta0],
    ))
}

/// Every connected component of D_r(zeta0) ∩ D, plus which of them reach
/// zeta0. Exactly one should; callers assert that.
pub struct DiskCutCensus<T> {
    pub components: Vec<ComponentRegion<T>>,
    /// Indices into `components` whose closure reaches zeta0.
    pub reaching: Vec<usize>,
}

pub fn disk_cut_census<T: Real>(
    domain: &JordanDomain<T>,
    zeta0: CurvePoint<T>,
    r: T,
    grid_n: usize,
) -> Result<DiskCutCensus<T>> {
    validate_on_curve(&domain.boundary, zeta0)?;
    if !(r > T::zero()) || !r.is_finite() {
        return Err(Error::InvalidParameter(
            "disk radius must be positive".into(),
        ));
    }
    if grid_n < 128 {
        return Err(Error::InvalidParameter(
            "grid_n must be at least 128".into(),
        ));
    }
    let zeta_pt = domain.boundary.point_at(zeta0);
    let (grid, free, _) = rasterize_disk_cut(domain, zeta_pt, r, grid_n)?;
    let (labels, count) = connected_components(&free);
    let origin_pt = PlanePoint::new(T::zero(), T::zero());
    let global = shift_origin(&grid, zeta_pt);
    let mut components = Vec::with_capacity(count);
    let mut reaching = Vec::new();
    for id in 1..=count as u32 {
        let mask = component_mask(&labels, grid.nx, grid.ny, id);
        let touches = mask.min_chebyshev_to(&grid, origin_pt) <= cst::<T>(REACH_CELLS);
        let touch = if touches { vec![zeta0] } else { Vec::new() };
        if touches {
            reaching.push(components.len());
        }
        components.push(ComponentRegion::from_mask(global.clone(), mask, touch));
    }
    Ok(DiskCutCensus {
        components,
        reaching,
    })
}

fn segments_properly_cross<T: Real>(
    a: PlanePoint<T>,
    b: PlanePoint<T>,
    c: PlanePoint<T>,
    d: PlanePoint<T>,
) -> bool {
    let d1 = (b - a).perp(c - a);
    let d2 = (b - a).perp(d - a);
    let d3 = (d - c).perp(a - c);
    let d4 = (d - c).perp(b - c);
    ((d1 > T::zero() && d2 < T::zero()) || (d1 < T::zero() && d2 > T::zero()))
        && ((d3 > T::zero() && d4 < T::zero()) || (d3 < T::zero() && d4 > T::zero()))
}

/// The two sides a crosscut divides a Jordan domain into. The first region is
/// on the left of the crosscut's direction of travel at its midpoint.
///
/// The crosscut is a simple polyline whose endpoints lie on the boundary and
/// whose interior stays strictly inside the domain.
pub fn crosscut_sides<T: Real>(
    domain: &JordanDomain<T>,
    alpha: &[PlanePoint<T>],
    grid_n: usize,
) -> Result<(ComponentRegion<T>, ComponentRegion<T>)> {
    if alpha.len() < 2 {
        return Err(Error::NotACrosscut);
    }
    if grid_n < 128 {
        return Err(Error::InvalidParameter(
            "grid_n must be at least 128".into(),
        ));
    }
    let curve = &domain.boundary;
    let (lo, hi) = curve.bbox();
    let scale = (hi.x - lo.x).max(hi.y - lo.y);
    let on_tol = scale * cst::<T>(1e-9);

    let (first, last) = (alpha[0], *alpha.last().unwrap());
    for endpoint in [first, last] {
        if curve.nearest_point(endpoint).1 > on_tol {
            return Err(Error::NotACrosscut);
        }
    }
    // Interior probes: every vertex strictly between the endpoints, and every
    // segment midpoint, must be inside the domain.
    let mut probes: Vec<PlanePoint<T>> = alpha[1..alpha.len() - 1].to_vec();
    for w in alpha.windows(2) {
        probes.push(w[0].lerp(w[1], cst::<T>(0.5)));
    }
    for p in probes {
        if point_in_polygon(p, curve, on_tol) != PointLocation::Inside {
            return Err(Error::NotACrosscut);
        }
    }
    // Simplicity of the polyline itself.
    for i in 0..alpha.len() - 1 {
        for j in i + 2..alpha.len() - 1 {
            if segments_properly_cross(alpha[i], alpha[i + 1], alpha[j], alpha[j + 1]) {
                return Err(Error::NotACrosscut);
            }
        }
    }

    let grid = GridSpec::covering(lo, hi, grid_n)?;
    let mut free = fill_polygon_interior(&grid, curve);
    free.subtract(&block_curve(&grid, curve));
    free.subtract(&block_polyline(&grid, alpha));

    // Seed both sides from the crosscut's arclength midpoint.
    let mut acc = T::zero();
    let lengths: Vec<T> = alpha.windows(2).map(|w| w[0].dist(w[1])).collect();
    let total: T = lengths.iter().fold(T::zero(), |a, &b| a + b);
    let half = total * cst::<T>(0.5);
    let mut mid = first;
    let mut dir = alpha[1] - alpha[0];
    for (i, &len) in lengths.iter().enumerate() {
        if acc + len >= half {
            let t = (half - acc) / len;
            mid = alpha[i].lerp(alpha[i + 1], t);
            dir = alpha[i + 1] - alpha[i];
            break;
        }
        acc += len;
    }
    let dlen = dir.norm();
    let left = PlanePoint::new(-dir.y / dlen, dir.x / dlen);

    let seed_side = |sign: T| -> Result<(usize, usize)> {
        for offset in SEED_OFFSETS {
            let p = mid + left.scale(sign * grid.cell * cst::<T>(offset as f64));
            if let Some((ix, iy)) = grid.index_of(p) {
                if free.get(ix, iy) {
                    return Ok((ix, iy));
                }
            }
        }
        Err(Error::CannotSeed)
    };
    let seed_l = seed_side(T::one())?;
    let seed_r = seed_side(-T::one())?;
    let mask_l = flood_fill(&free, seed_l);
    if mask_l.get(seed_r.0, seed_r.1) {
        return Err(Error::InvalidParameter(
            "crosscut does not separate at this grid resolution".into(),
        ));
    }
    let mask_r = flood_fill(&free, seed_r);

    let endpoints = [curve.nearest_point(first).0, curve.nearest_point(last).0];
    let touch = |mask: &Mask| -> Vec<CurvePoint<T>> {
        endpoints
            .iter()
            .copied()
            .filter(|&cp| mask.min_chebyshev_to(&grid, curve.point_at(cp)) <= cst::<T>(REACH_CELLS))
            .collect()
    };
    let touch_l = touch(&mask_l);
    let touch_r = touch(&mask_r);
    Ok((
        ComponentRegion::from_mask(grid.clone(), mask_l, touch_l),
        ComponentRegion::from_mask(grid, mask_r, touch_r),
    ))
}

/// Which of the two boundary subarcs (split at the marked pair) a point
/// belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubarcId {
    First,
    Second,
}

/// One connected arc of C ∩ D, with its endpoints located on the domain
/// boundary and labeled by subarc.
#[derive(Clone, Copy, Debug)]
pub struct CircleCutArc<T> {
    /// Angles on the cutting circle; the arc runs counterclockwise from
    /// `start_angle` to `end_angle` (which may exceed pi).
    pub start_angle: T,
    pub end_angle: T,
    pub start: PlanePoint<T>,
    pub end: PlanePoint<T>,
    pub start_on: SubarcId,
    pub end_on: SubarcId,
}

impl<T> CircleCutArc<T> {
    /// True when the arc's endpoints land on different subarcs.
    pub fn carries_both(&self) -> bool {
        self.start_on != self.end_on
    }
}

/// The connected arcs of C ∩ D for a circle separating two marked boundary
/// points, each endpoint labeled by the subarc of the boundary it lies on.
pub fn circle_cut_components<T: Real>(
    domain: &JordanDomain<T>,
    circle: &CircleSpec<T>,
    p_mark: CurvePoint<T>,
    q_mark: CurvePoint<T>,
) -> Result<Vec<CircleCutArc<T>>> {
    let curve = &domain.boundary;
    validate_on_curve(curve, p_mark)?;
    validate_on_curve(curve, q_mark)?;
    let p_pt = curve.point_at(p_mark);
    let q_pt = curve.point_at(q_mark);
    let sp = circle.signed_distance(p_pt);
    let sq = circle.signed_distance(q_pt);
    let separates = (sp < T::zero() && sq > T::zero()) || (sp > T::zero() && sq < T::zero());
    if !separates {
        return Err(Error::CircleDoesNotSeparate);
    }
    split_at(curve, p_mark, q_mark)?;

    let crossings: Vec<_> = circle_polygon_intersection(circle, curve)
        .into_iter()
        .filter(|c| !c.tangential)
        .collect();
    if crossings.len() < 2 {
        return Err(Error::CircleDoesNotSeparate);
    }

    // Subarc membership by cyclic arclength: positions in [s_p, s_q) are on
    // the first subarc, the rest on the second.
    let total = curve.perimeter();
    let s_p = curve.arc_position(p_mark);
    let s_q = curve.arc_position(q_mark);
    let label = |cp: CurvePoint<T>| -> SubarcId {
        let rel = |s: T| {
            let mut d = s - s_p;
            if d < T::zero() {
                d += total;
            }
            d
        };
        let gap = rel(s_q);
        if rel(curve.arc_position(cp)) < gap {
            SubarcId::First
        } else {
            SubarcId::Second
        }
    };

    let mut marks: Vec<(T, PlanePoint<T>, SubarcId)> = crossings
        .iter()
        .map(|c| {
            let d = c.point - circle.center;
            (d.y.atan2(d.x), c.point, label(c.at))
        })
        .collect();
    marks.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    marks.dedup_by(|a, b| (a.0 - b.0).abs() < cst::<T>(1e-12));
    if marks.len() < 2 {
        return Err(Error::CircleDoesNotSeparate);
    }

    let tau = T::PI() + T::PI();
    let m = marks.len();
    let mut arcs = Vec::new();
    for i in 0..m {
        let (a0, p0, l0) = marks[i];
        let (mut a1, p1, l1) = marks[(i + 1) % m];
        if a1 <= a0 {
            a1 += tau;
        }
        let mid = circle.point_at((a0 + a1) * cst::<T>(0.5));
        if point_in_polygon(mid, curve, T::zero()) == PointLocation::Inside {
            arcs.push(CircleCutArc {
                start_angle: a0,
                end_angle: a1,
                start: p0,
                end: p1,
                start_on: l0,
                end_on: l1,
            });
        }
    }
    if arcs.is_empty() {
        return Err(Error::CircleDoesNotSeparate);
    }
    Ok(arcs)
}
