//! Uniform grids, region masks, scanline rasterization, and flood fills.
//!
//! Regions are represented by cell-center membership on a uniform grid.
//! Curves are burned into a grid as "blocked" cells via exact segment
//! traversal, so that a 4-connected flood fill can never step across a
//! rasterized curve.

use crate::curves::PolygonalJordanCurve;
use crate::error::{Error, Result};
use crate::geom::{CircleSpec, PlanePoint};
use crate::num::{cst, Real};

/// A uniform cell grid: `nx * ny` cells of side `cell`, lower-left corner at
/// `origin`. Cell `(ix, iy)` covers `origin + [ix, ix+1) x [iy, iy+1) * cell`.
#[derive(Clone, Copy, Debug)]
pub struct GridSpec<T> {
    pub origin: PlanePoint<T>,
    pub cell: T,
    pub nx: usize,
    pub ny: usize,
}

impl<T: Real> GridSpec<T> {
    pub fn new(origin: PlanePoint<T>, cell: T, nx: usize, ny: usize) -> Result<Self> {
        if !(cell > T::zero() && cell.is_finite()) || nx == 0 || ny == 0 {
            return Err(Error::InvalidParameter(
                "grid must have positive cell size and extent".into(),
            ));
        }
        Ok(Self {
            origin,
            cell,
            nx,
            ny,
        })
    }

    /// Square grid of `n x n` cells covering the square of half-width `half`
    /// around `center`.
    pub fn centered_square(center: PlanePoint<T>, half: T, n: usize) -> Result<Self> {
        if !(half > T::zero() && half.is_finite()) {
            return Err(Error::InvalidParameter(
                "grid half-extent must be positive".into(),
            ));
        }
        let origin = PlanePoint::new(center.x - half, center.y - half);
        let cell = (half + half) / cst::<T>(n as f64);
        Self::new(origin, cell, n, n)
    }

    /// Rectangular grid covering `[lo, hi]` with `nx` columns; the cell size
    /// is set by the width and `ny` by the aspect ratio.
    pub fn covering(lo: PlanePoint<T>, hi: PlanePoint<T>, nx: usize) -> Result<Self> {
        let w = hi.x - lo.x;
        let h = hi.y - lo.y;
        if !(w > T::zero() && h > T::zero()) {
            return Err(Error::InvalidParameter(
                "grid bounds must be non-degenerate".into(),
            ));
        }
        let cell = w / cst::<T>(nx as f64);
        let ny = (h / cell).ceil().to_usize().unwrap_or(1).max(1);
        Self::new(lo, cell, nx, ny)
    }

    pub fn cell_center(&self, ix: usize, iy: usize) -> PlanePoint<T> {
        let half = cst::<T>(0.5);
        PlanePoint::new(
            self.origin.x + self.cell * (cst::<T>(ix as f64) + half),
            self.origin.y + self.cell * (cst::<T>(iy as f64) + half),
        )
    }

    /// Grid index of the cell containing `p`, if in bounds.
    pub fn index_of(&self, p: PlanePoint<T>) -> Option<(usize, usize)> {
        let fx = ((p.x - self.origin.x) / self.cell).floor();
        let fy = ((p.y - self.origin.y) / self.cell).floor();
        let ix = fx.to_isize()?;
        let iy = fy.to_isize()?;
        if ix < 0 || iy < 0 || ix as usize >= self.nx || iy as usize >= self.ny {
            return None;
        }
        Some((ix as usize, iy as usize))
    }

    pub fn cell_area(&self) -> T {
        self.cell * self.cell
    }

    fn x_max(&self) -> T {
        self.origin.x + self.cell * cst::<T>(self.nx as f64)
    }

    fn y_max(&self) -> T {
        self.origin.y + self.cell * cst::<T>(self.ny as f64)
    }
}

/// Bit mask over a grid's cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mask {
    pub nx: usize,
    pub ny: usize,
    bits: Vec<bool>,
}

impl Mask {
    pub fn empty(nx: usize, ny: usize) -> Self {
        Self {
            nx,
            ny,
            bits: vec![false; nx * ny],
        }
    }

    #[inline]
    pub fn get(&self, ix: usize, iy: usize) -> bool {
        self.bits[iy * self.nx + ix]
    }

    #[inline]
    pub fn set(&mut self, ix: usize, iy: usize, v: bool) {
        self.bits[iy * self.nx + ix] = v;
    }

    pub fn count(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn any(&self) -> bool {
        self.bits.iter().any(|&b| b)
    }

    /// self &= other
    pub fn intersect_with(&mut self, other: &Mask) {
        assert_eq!(self.bits.len(), other.bits.len());
        for (a, &b) in self.bits.iter_mut().zip(&other.bits) {
            *a = *a && b;
        }
    }

    /// self &= !other
    pub fn subtract(&mut self, other: &Mask) {
        assert_eq!(self.bits.len(), other.bits.len());
        for (a, &b) in self.bits.iter_mut().zip(&other.bits) {
            *a = *a && !b;
        }
    }

    pub fn iter_set(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let nx = self.nx;
        self.bits
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(move |(k, _)| (k % nx, k / nx))
    }

    /// Member cells with a non-member 4-neighbor or lying on the grid edge.
    pub fn boundary_cells(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (ix, iy) in self.iter_set() {
            let edge = ix == 0 || iy == 0 || ix + 1 == self.nx || iy + 1 == self.ny;
            if edge
                || !self.get(ix - 1, iy)
                || !self.get(ix + 1, iy)
                || !self.get(ix, iy - 1)
                || !self.get(ix, iy + 1)
            {
                out.push((ix, iy));
            }
        }
        out
    }

    /// Smallest Chebyshev distance from a member cell center to `p`,
    /// in units of the cell size. Infinity for an empty mask.
    pub fn min_chebyshev_to<T: Real>(&self, grid: &GridSpec<T>, p: PlanePoint<T>) -> T {
        let mut best = T::infinity();
        for (ix, iy) in self.iter_set() {
            let c = grid.cell_center(ix, iy);
            let d = (c.x - p.x).abs().max((c.y - p.y).abs());
            if d < best {
                best = d;
            }
        }
        best / grid.cell
    }
}

/// Scanline fill of a simple polygon: a cell is a member iff its center lies
/// inside the curve (even-odd rule on the row through the center).
pub fn fill_polygon_interior<T: Real>(grid: &GridSpec<T>, curve: &PolygonalJordanCurve<T>) -> Mask {
    let mut mask = Mask::empty(grid.nx, grid.ny);
    let verts = curve.vertices();
    let n = verts.len();
    let half = cst::<T>(0.5);
    let mut crossings: Vec<T> = Vec::new();
    for iy in 0..grid.ny {
        let y = grid.origin.y + grid.cell * (cst::<T>(iy as f64) + half);
        crossings.clear();
        for i in 0..n {
            let a = verts[i];
            let b = verts[(i + 1) % n];
            // Half-open rule [min, max) keeps vertex hits unambiguous.
            if (a.y <= y && y < b.y) || (b.y <= y && y < a.y) {
                crossings.push(a.x + (y - a.y) * (b.x - a.x) / (b.y - a.y));
            }
        }
        crossings.sort_by(|u, v| u.partial_cmp(v).unwrap());
        for pair in crossings.chunks_exact(2) {
            fill_row_between(&mut mask, grid, iy, pair[0], pair[1]);
        }
    }
    mask
}

/// Cell-center membership in the closed disk.
pub fn fill_disk<T: Real>(grid: &GridSpec<T>, circle: CircleSpec<T>) -> Mask {
    let mut mask = Mask::empty(grid.nx, grid.ny);
    let half = cst::<T>(0.5);
    let r2 = circle.radius * circle.radius;
    for iy in 0..grid.ny {
        let y = grid.origin.y + grid.cell * (cst::<T>(iy as f64) + half);
        let dy = y - circle.center.y;
        let rem = r2 - dy * dy;
        if rem < T::zero() {
            continue;
        }
        let hw = rem.sqrt();
        fill_row_between(
            &mut mask,
            grid,
            iy,
            circle.center.x - hw,
            circle.center.x + hw,
        );
    }
    mask
}

/// Marks cells of row `iy` whose centers have x strictly inside `(x0, x1)`.
fn fill_row_between<T: Real>(mask: &mut Mask, grid: &GridSpec<T>, iy: usize, x0: T, x1: T) {
    let half = cst::<T>(0.5);
    let lo = (x0 - grid.origin.x) / grid.cell - half;
    let hi = (x1 - grid.origin.x) / grid.cell - half;
    let start = lo
        .floor()
        .to_isize()
        .unwrap_or(isize::MAX)
        .saturating_add(1)
        .max(0) as usize;
    let end = hi.ceil().to_isize().unwrap_or(-1);
    if end < 0 {
        return;
    }
    let end = (end as usize).min(grid.nx);
    for ix in start..end {
        let cx = grid.origin.x + grid.cell * (cst::<T>(ix as f64) + half);
        if cx > x0 && cx < x1 {
            mask.set(ix, iy, true);
        }
    }
}

/// Marks every cell a segment passes through (exact voxel traversal). The
/// segment is clipped to the grid first, so arbitrarily long edges cost only
/// their in-grid portion.
pub fn block_segment<T: Real>(
    mask: &mut Mask,
    grid: &GridSpec<T>,
    a: PlanePoint<T>,
    b: PlanePoint<T>,
) {
    let margin = grid.cell * cst::<T>(0.5);
    let (lo, hi) = (
        PlanePoint::new(grid.origin.x - margin, grid.origin.y - margin),
        PlanePoint::new(grid.x_max() + margin, grid.y_max() + margin),
    );
    let Some((t0, t1)) = clip_segment(a, b, lo, hi) else {
        return;
    };
    let p0 = a.lerp(b, t0);
    let p1 = a.lerp(b, t1);
    // Amanatides-Woo traversal in grid coordinates.
    let gx0 = (p0.x - grid.origin.x) / grid.cell;
    let gy0 = (p0.y - grid.origin.y) / grid.cell;
    let gx1 = (p1.x - grid.origin.x) / grid.cell;
    let gy1 = (p1.y - grid.origin.y) / grid.cell;
    let dx = gx1 - gx0;
    let dy = gy1 - gy0;
    let mut ix = gx0.floor().to_isize().unwrap_or(0);
    let mut iy = gy0.floor().to_isize().unwrap_or(0);
    let ix_end = gx1.floor().to_isize().unwrap_or(0);
    let iy_end = gy1.floor().to_isize().unwrap_or(0);
    let step_x: isize = if dx > T::zero() { 1 } else { -1 };
    let step_y: isize = if dy > T::zero() { 1 } else { -1 };
    let inv_dx = if dx == T::zero() {
        T::infinity()
    } else {
        (T::one() / dx).abs()
    };
    let inv_dy = if dy == T::zero() {
        T::infinity()
    } else {
        (T::one() / dy).abs()
    };
    let next_x = if dx > T::zero() {
        cst::<T>(ix as f64) + T::one() - gx0
    } else {
        gx0 - cst::<T>(ix as f64)
    };
    let next_y = if dy > T::zero() {
        cst::<T>(iy as f64) + T::one() - gy0
    } else {
        gy0 - cst::<T>(iy as f64)
    };
    let mut t_max_x = next_x * inv_dx;
    let mut t_max_y = next_y * inv_dy;
    let budget = 4 * (grid.nx + grid.ny) + 8;
    let mark = |ix: isize, iy: isize, m: &mut Mask| {
        if ix >= 0 && iy >= 0 && (ix as usize) < grid.nx && (iy as usize) < grid.ny {
            m.set(ix as usize, iy as usize, true);
        }
    };
    mark(ix, iy, mask);
    for _ in 0..budget {
        if ix == ix_end && iy == iy_end {
            break;
        }
        if t_max_x < t_max_y {
            t_max_x += inv_dx;
            ix += step_x;
        } else {
            t_max_y += inv_dy;
            iy += step_y;
        }
        mark(ix, iy, mask);
    }
}

/// Burns every edge of the curve into a blocked-cell mask.
pub fn block_curve<T: Real>(grid: &GridSpec<T>, curve: &PolygonalJordanCurve<T>) -> Mask {
    let mut mask = Mask::empty(grid.nx, grid.ny);
    for i in 0..curve.num_edges() {
        let (a, b) = curve.edge(i);
        block_segment(&mut mask, grid, a, b);
    }
    mask
}

/// Burns an open polyline into a blocked-cell mask.
pub fn block_polyline<T: Real>(grid: &GridSpec<T>, pts: &[PlanePoint<T>]) -> Mask {
    let mut mask = Mask::empty(grid.nx, grid.ny);
    for w in pts.windows(2) {
        block_segment(&mut mask, grid, w[0], w[1]);
    }
    mask
}

/// Liang-Barsky: parameter range of `[a, b]` inside the rectangle, if any.
fn clip_segment<T: Real>(
    a: PlanePoint<T>,
    b: PlanePoint<T>,
    lo: PlanePoint<T>,
    hi: PlanePoint<T>,
) -> Option<(T, T)> {
    let mut t0 = T::zero();
    let mut t1 = T::one();
    let d = b - a;
    let checks = [
        (-d.x, a.x - lo.x),
        (d.x, hi.x - a.x),
        (-d.y, a.y - lo.y),
        (d.y, hi.y - a.y),
    ];
    for (p, q) in checks {
        if p == T::zero() {
            if q < T::zero() {
                return None;
            }
        } else {
            let r = q / p;
            if p < T::zero() {
                if r > t1 {
                    return None;
                }
                t0 = t0.max(r);
            } else {
                if r < t0 {
                    return None;
                }
                t1 = t1.min(r);
            }
        }
    }
    (t0 <= t1).then_some((t0, t1))
}

/// 4-connected flood fill of `free` from `seed`; returns the reached mask.
pub fn flood_fill(free: &Mask, seed: (usize, usize)) -> Mask {
    let mut out = Mask::empty(free.nx, free.ny);
    if !free.get(seed.0, seed.1) {
        return out;
    }
    let mut queue = std::collections::VecDeque::new();
    out.set(seed.0, seed.1, true);
    queue.push_back(seed);
    while let Some((ix, iy)) = queue.pop_front() {
        let visit = |jx: usize,
                     jy: usize,
                     out: &mut Mask,
                     queue: &mut std::collections::VecDeque<(usize, usize)>| {
            if free.get(jx, jy) && !out.get(jx, jy) {
                out.set(jx, jy, true);
                queue.push_back((jx, jy));
            }
        };
        if ix > 0 {
            visit(ix - 1, iy, &mut out, &mut queue);
        }
        if ix + 1 < free.nx {
            visit(ix + 1, iy, &mut out, &mut queue);
        }
        if iy > 0 {
            visit(ix, iy - 1, &mut out, &mut queue);
        }
        if iy + 1 < free.ny {
            visit(ix, iy + 1, &mut out, &mut queue);
        }
    }
    out
}

/// 4-connected component labels over `free`: `labels[k] = 0` for non-members,
/// `1..=count` for members, assigned in row-major discovery order.
pub fn connected_components(free: &Mask) -> (Vec<u32>, usize) {
    let mut labels = vec![0u32; free.nx * free.ny];
    let mut next = 0u32;
    let mut queue = std::collections::VecDeque::new();
    for iy in 0..free.ny {
        for ix in 0..free.nx {
            if !free.get(ix, iy) || labels[iy * free.nx + ix] != 0 {
                continue;
            }
            next += 1;
            labels[iy * free.nx + ix] = next;
            queue.push_back((ix, iy));
            while let Some((cx, cy)) = queue.pop_front() {
                let visit =
                    |jx: usize,
                     jy: usize,
                     labels: &mut Vec<u32>,
                     queue: &mut std::collections::VecDeque<(usize, usize)>| {
                        let k = jy * free.nx + jx;
                        if free.get(jx, jy) && labels[k] == 0 {
                            labels[k] = next;
                            queue.push_back((jx, jy));
                        }
                    };
                if cx > 0 {
                    visit(cx - 1, cy, &mut labels, &mut queue);
                }
                if cx + 1 < free.nx {
                    visit(cx + 1, cy, &mut labels, &mut queue);
                }
                if cy > 0 {
                    visit(cx, cy - 1, &mut labels, &mut queue);
                }
                if cy + 1 < free.ny {
                    visit(cx, cy + 1, &mut labels, &mut queue);
                }
            }
        }
    }
    (labels, next as usize)
}

/// Extracts one labeled component as a mask.
pub fn component_mask(labels: &[u32], nx: usize, ny: usize, label: u32) -> Mask {
    let mut mask = Mask::empty(nx, ny);
    for iy in 0..ny {
        for ix in 0..nx {
            if labels[iy * nx + ix] == label {
                mask.set(ix, iy, true);
            }
        }
    }
    mask
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::PolygonalJordanCurve;

    fn unit_square() -> PolygonalJordanCurve<f64> {
        PolygonalJordanCurve::try_new(vec![
            PlanePoint::new(0.0, 0.0),
            PlanePoint::new(1.0, 0.0),
            PlanePoint::new(1.0, 1.0),
            PlanePoint::new(0.0, 1.0),
        ])
        .unwrap()
    }

    #[test]
    fn disk_fill_area_converges() {
        let grid = GridSpec::centered_square(PlanePoint::new(0.0, 0.0), 1.0, 512).unwrap();
        let circle = CircleSpec::try_new(PlanePoint::new(0.0, 0.0), 0.8).unwrap();
        let mask = fill_disk(&grid, circle);
        let area = mask.count() as f64 * grid.cell_area();
        let exact = std::f64::consts::PI * 0.64;
        assert!(
            (area - exact).abs() / exact < 0.01,
            "area {area} vs {exact}"
        );
    }

    #[test]
    fn polygon_fill_matches_square_area() {
        let grid = GridSpec::centered_square(PlanePoint::new(0.5, 0.5), 0.75, 256).unwrap();
        let mask = fill_polygon_interior(&grid, &unit_square());
        let area = mask.count() as f64 * grid.cell_area();
        assert!((area - 1.0).abs() < 0.02, "area {area}");
    }

    #[test]
    fn polygon_fill_respects_concavity() {
        // L-shape: the notch [0.5,1]x[0.5,1] is outside.
        let ell = PolygonalJordanCurve::try_new(vec![
            PlanePoint::new(0.0, 0.0),
            PlanePoint::new(1.0, 0.0),
            PlanePoint::new(1.0, 0.5),
            PlanePoint::new(0.5, 0.5),
            PlanePoint::new(0.5, 1.0),
            PlanePoint::new(0.0, 1.0),
        ])
        .unwrap();
        let grid = GridSpec::centered_square(PlanePoint::new(0.5, 0.5), 0.75, 256).unwrap();
        let mask = fill_polygon_interior(&grid, &ell);
        let (ix, iy) = grid.index_of(PlanePoint::new(0.75, 0.75)).unwrap();
        assert!(!mask.get(ix, iy));
        let (ix, iy) = grid.index_of(PlanePoint::new(0.25, 0.25)).unwrap();
        assert!(mask.get(ix, iy));
        let area = mask.count() as f64 * grid.cell_area();
        assert!((area - 0.75).abs() < 0.02, "area {area}");
    }

    #[test]
    fn blocked_diagonal_separates_square() {
        let grid = GridSpec::centered_square(PlanePoint::new(0.5, 0.5), 0.5, 128).unwrap();
        let mut free = Mask::empty(grid.nx, grid.ny);
        for iy in 0..grid.ny {
            for ix in 0..grid.nx {
                free.set(ix, iy, true);
            }
        }
        let mut wall = Mask::empty(grid.nx, grid.ny);
        block_segment(
            &mut wall,
            &grid,
            PlanePoint::new(-0.5, -0.5),
            PlanePoint::new(1.5, 1.5),
        );
        free.subtract(&wall);
        let below = flood_fill(&free, grid.index_of(PlanePoint::new(0.8, 0.2)).unwrap());
        let above_seed = grid.index_of(PlanePoint::new(0.2, 0.8)).unwrap();
        assert!(free.get(above_seed.0, above_seed.1));
        assert!(
            !below.get(above_seed.0, above_seed.1),
            "flood leaked across the wall"
        );
        let (_, count) = connected_components(&free);
        assert_eq!(count, 2);
    }

    #[test]
    fn clipped_far_segment_blocks_nothing() {
        let grid = GridSpec::centered_square(PlanePoint::new(0.0, 0.0), 1.0, 64).unwrap();
        let mut wall = Mask::empty(grid.nx, grid.ny);
        block_segment(
            &mut wall,
            &grid,
            PlanePoint::new(5.0, -100.0),
            PlanePoint::new(5.0, 100.0),
        );
        assert!(!wall.any());
    }

    #[test]
    fn long_segment_blocks_only_in_grid_portion() {
        let grid = GridSpec::centered_square(PlanePoint::new(0.0, 0.0), 1.0, 64).unwrap();
        let mut wall = Mask::empty(grid.nx, grid.ny);
        block_segment(
            &mut wall,
            &grid,
            PlanePoint::new(-1e9, 0.3),
            PlanePoint::new(1e9, 0.3),
        );
        // The horizontal wall crosses the full row of cells containing y=0.3.
        let (_, iy) = grid.index_of(PlanePoint::new(0.0, 0.3)).unwrap();
        for ix in 0..grid.nx {
            assert!(wall.get(ix, iy));
        }
        assert!(wall.count() <= 2 * grid.nx);
    }

    #[test]
    fn components_of_separated_blobs() {
        let grid = GridSpec::centered_square(PlanePoint::new(0.0, 0.0), 2.0, 128).unwrap();
        let mut free = fill_disk(
            &grid,
            CircleSpec::try_new(PlanePoint::new(-1.0, 0.0), 0.5).unwrap(),
        );
        let right = fill_disk(
            &grid,
            CircleSpec::try_new(PlanePoint::new(1.0, 0.0), 0.5).unwrap(),
        );
        for (ix, iy) in right.iter_set() {
            free.set(ix, iy, true);
        }
        let (labels, count) = connected_components(&free);
        assert_eq!(count, 2);
        let m1 = component_mask(&labels, grid.nx, grid.ny, 1);
        let m2 = component_mask(&labels, grid.nx, grid.ny, 2);
        assert_eq!(m1.count() + m2.count(), free.count());
    }

    #[test]
    fn boundary_cells_of_disk_form_thin_ring() {
        let grid = GridSpec::centered_square(PlanePoint::new(0.0, 0.0), 1.0, 256).unwrap();
        let mask = fill_disk(
            &grid,
            CircleSpec::try_new(PlanePoint::new(0.0, 0.0), 0.7).unwrap(),
        );
        let ring = mask.boundary_cells();
        // Ring length ~ perimeter / cell = 2*pi*0.7 / (2/256) ~ 563.
        assert!(ring.len() > 400 && ring.len() < 900, "ring {}", ring.len());
        for &(ix, iy) in &ring {
            let d: f64 = grid.cell_center(ix, iy).norm();
            assert!((d - 0.7).abs() < 3.0 * grid.cell);
        }
    }

    #[test]
    fn chebyshev_reach_measures_cells() {
        let grid = GridSpec::centered_square(PlanePoint::new(0.0, 0.0), 1.0, 64).unwrap();
        let mut mask = Mask::empty(grid.nx, grid.ny);
        mask.set(32, 32, true);
        let c = grid.cell_center(32, 32);
        assert!(mask.min_chebyshev_to(&grid, c) < 1e-9);
        let far = PlanePoint::new(c.x + 10.0 * grid.cell, c.y);
        let reach: f64 = mask.min_chebyshev_to(&grid, far);
        assert!((reach - 10.0).abs() < 1e-9);
    }
}
