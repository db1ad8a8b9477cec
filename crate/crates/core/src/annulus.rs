//! Extremal length of annuli, polar separations, and the length-area check.
//!
//! The extremal length of the family of curves separating the two boundary
//! circles of an annulus has the closed form 2*pi / ln(R/r). A polar
//! separation of a region inside the annulus is a pair of disjoint sets that
//! every intermediate circle connects through the region; for any such pair
//! and any conformal map, the squared gap of the images over the image area
//! is bounded by the extremal length.

use crate::error::{Error, Result};
use crate::geom::{d_inf, AnnulusSpec, PlanePoint, PointSet};
use crate::maps::MapSpec;
use crate::num::{cst, Real};
use crate::raster::{GridSpec, Mask};

/// 2*pi / ln(R/r), natural logarithm.
pub fn extremal_length<T: Real>(a: &AnnulusSpec<T>) -> T {
    let two_pi = T::PI() + T::PI();
    two_pi / (a.outer / a.inner).ln()
}

/// A candidate pair of disjoint sets for a polar separation.
#[derive(Clone, Debug)]
pub struct PolarSeparationCandidate<T> {
    pub e: PointSet<T>,
    pub f: PointSet<T>,
}

impl<T: Real> PolarSeparationCandidate<T> {
    pub fn try_new(e: PointSet<T>, f: PointSet<T>) -> Result<Self> {
        if d_inf(e.as_slice(), f.as_slice())? <= T::zero() {
            return Err(Error::CandidateSetsIntersect);
        }
        Ok(Self { e, f })
    }
}

/// A region given by cell-center membership on a grid, with a grid-count
/// area estimate and its standard error (half the boundary band).
#[derive(Clone, Debug)]
pub struct RegionSample<T> {
    pub grid: GridSpec<T>,
    pub mask: Mask,
    pub area_estimate: T,
    pub area_std_error: T,
}

impl<T: Real> RegionSample<T> {
    pub fn from_mask(grid: GridSpec<T>, mask: Mask) -> Self {
        let area_estimate = cst::<T>(mask.count() as f64) * grid.cell_area();
        let area_std_error =
            cst::<T>(mask.boundary_cells().len() as f64) * grid.cell_area() * cst::<T>(0.5);
        Self {
            grid,
            mask,
            area_estimate,
            area_std_error,
        }
    }

    pub fn from_predicate(grid: GridSpec<T>, pred: impl Fn(PlanePoint<T>) -> bool) -> Self {
        let mut mask = Mask::empty(grid.nx, grid.ny);
        for iy in 0..grid.ny {
            for ix in 0..grid.nx {
                if pred(grid.cell_center(ix, iy)) {
                    mask.set(ix, iy, true);
                }
            }
        }
        Self::from_mask(grid, mask)
    }

    pub fn contains(&self, p: PlanePoint<T>) -> bool {
        self.grid
            .index_of(p)
            .is_some_and(|(ix, iy)| self.mask.get(ix, iy))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SeparationCheck<T> {
    Pass,
    FailingRadius(T),
}

impl<T> SeparationCheck<T> {
    pub fn is_pass(&self) -> bool {
        matches!(self, SeparationCheck::Pass)
    }
}

/// Checks the polar-separation property on sampled intermediate circles:
/// each circle, intersected with the region, must have an angular component
/// whose closure comes within a grid cell of both candidate sets. Radii are
/// geometrically spaced; the smallest failing one is reported.
pub fn is_polar_separation<T: Real>(
    a: &AnnulusSpec<T>,
    omega: &RegionSample<T>,
    cand: &PolarSeparationCandidate<T>,
    n_circles: usize,
    res: usize,
) -> Result<SeparationCheck<T>> {
    if n_circles < 8 {
        return Err(Error::InvalidParameter(
            "need at least 8 intermediate circles".into(),
        ));
    }
    if res < 256 {
        return Err(Error::InvalidParameter(
            "need at least 256 points per circle".into(),
        ));
    }
    if d_inf(cand.e.as_slice(), cand.f.as_slice())? <= T::zero() {
        return Err(Error::CandidateSetsIntersect);
    }
    let slack = omega.grid.cell * cst::<T>(1.5);
    for (ix, iy) in omega.mask.iter_set() {
        let d = omega.grid.cell_center(ix, iy).dist(a.center);
        if d < a.inner - slack || d > a.outer + slack {
            return Err(Error::InvalidParameter(
                "region extends outside the annulus".into(),
            ));
        }
    }

    let log_step = (a.outer / a.inner).ln() / cst::<T>(n_circles as f64 + 1.0);
    let dtheta = (T::PI() + T::PI()) / cst::<T>(res as f64);
    for i in 0..n_circles {
        let rho = a.inner * (log_step * cst::<T>(i as f64 + 1.0)).exp();
        // Reach tolerance: a cell of grid slack plus a step of circle slack,
        // doubled to cover the candidate sets' own sampling.
        let tol = (omega.grid.cell + rho * dtheta) * cst::<T>(2.0);
        if !circle_connects(a.center, rho, omega, cand, res, tol) {
            return Ok(SeparationCheck::FailingRadius(rho));
        }
    }
    Ok(SeparationCheck::Pass)
}

/// True when some angular component of the circle's in-region samples comes
/// within `tol` of both candidate sets.
fn circle_connects<T: Real>(
    center: PlanePoint<T>,
    rho: T,
    omega: &RegionSample<T>,
    cand: &PolarSeparationCandidate<T>,
    res: usize,
    tol: T,
) -> bool {
    let dtheta = (T::PI() + T::PI()) / cst::<T>(res as f64);
    let member: Vec<bool> = (0..res)
        .map(|j| {
            let theta = dtheta * cst::<T>(j as f64);
            let p = PlanePoint::new(center.x + rho * theta.cos(), center.y + rho * theta.sin());
            omega.contains(p)
        })
        .collect();
    let point = |j: usize| {
        let theta = dtheta * cst::<T>(j as f64);
        PlanePoint::new(center.x + rho * theta.cos(), center.y + rho * theta.sin())
    };
    let near = |j: usize, set: &PointSet<T>| {
        let p = point(j);
        set.as_slice().iter().any(|&q| p.dist(q) <= tol)
    };

    if member.iter().all(|&b| b) {
        // One cyclic component: the whole circle.
        let hits_e = (0..res).any(|j| near(j, &cand.e));
        let hits_f = (0..res).any(|j| near(j, &cand.f));
        return hits_e && hits_f;
    }
    // Walk cyclic runs of member samples, starting after a non-member.
    let start = member.iter().position(|&b| !b).unwrap();
    let mut j = 0usize;
    while j < res {
        let idx = (start + j) % res;
        if !member[idx] {
            j += 1;
            continue;
        }
        let mut hits_e = false;
        let mut hits_f = false;
        while j < res && member[(start + j) % res] {
            let cur = (start + j) % res;
            hits_e = hits_e || near(cur, &cand.e);
            hits_f = hits_f || near(cur, &cand.f);
            j += 1;
        }
        if hits_e && hits_f {
            return true;
        }
    }
    false
}

/// Outcome of the length-area comparison for one region, candidate pair, and
/// conformal map.
#[derive(Clone, Copy, Debug)]
pub struct LengthAreaReport<T> {
    pub lambda: T,
    pub ratio: T,
    pub holds: bool,
    pub image_gap: T,
    pub image_area: T,
}

/// Compares d(map E, map F)^2 / Area(map Omega) against the extremal length,
/// with a 3-sigma slack on the propagated area error. The map is evaluated by
/// its defining formula; the caller owns the guarantee that the region stays
/// inside the map's conformal locus.
pub fn length_area_check<T: Real>(
    a: &AnnulusSpec<T>,
    omega: &RegionSample<T>,
    cand: &PolarSeparationCandidate<T>,
    map: &MapSpec<T>,
) -> Result<LengthAreaReport<T>> {
    let push = |pts: &PointSet<T>| -> Vec<PlanePoint<T>> {
        pts.as_slice()
            .iter()
            .map(|p| PlanePoint::from_complex(map.eval_inverse_unchecked(p.to_complex())))
            .collect()
    };
    let image_gap = d_inf(&push(&cand.e), &push(&cand.f))?;

    // Conformal area: sum of |psi'|^2 over member cells.
    let cell_area = omega.grid.cell_area();
    let mut image_area = T::zero();
    for (ix, iy) in omega.mask.iter_set() {
        let w = omega.grid.cell_center(ix, iy).to_complex();
        let j = map.derivative_inverse(w).norm_sqr();
        image_area += j * cell_area;
    }
    if !(image_area > T::zero()) {
        return Err(Error::DegenerateRegion);
    }
    let mut band = T::zero();
    for (ix, iy) in omega.mask.boundary_cells() {
        let w = omega.grid.cell_center(ix, iy).to_complex();
        band += map.derivative_inverse(w).norm_sqr() * cell_area;
    }
    let area_err = band * cst::<T>(0.5);

    let lambda = extremal_length(a);
    let ratio = image_gap * image_gap / image_area;
    let ratio_err = image_gap * image_gap * area_err / (image_area * image_area);
    let holds = lambda >= ratio - cst::<T>(3.0) * ratio_err;
    Ok(LengthAreaReport {
        lambda,
        ratio,
        holds,
        image_gap,
        image_area,
    })
}

/// The standard worked instance: upper half of the annulus r=1, R=e around
/// the origin, with the candidate sets sampled on the two real-axis segments.
pub fn half_annulus_instance(
    grid_n: usize,
    seg_samples: usize,
) -> (
    AnnulusSpec<f64>,
    RegionSample<f64>,
    PolarSeparationCandidate<f64>,
) {
    let e = std::f64::consts::E;
    let a = AnnulusSpec::try_new(PlanePoint::new(0.0, 0.0), 1.0, e).unwrap();
    let grid = GridSpec::new(
        PlanePoint::new(-e, 0.0),
        2.0 * e / grid_n as f64,
        grid_n,
        grid_n / 2 + 1,
    )
    .unwrap();
    let omega = RegionSample::from_predicate(grid, |p| {
        let d = p.norm();
        p.y > 0.0 && d > 1.0 && d < e
    });
    let set_e = PointSet::sample_segment(
        PlanePoint::new(1.0, 0.0),
        PlanePoint::new(e, 0.0),
        seg_samples,
    );
    let set_f = PointSet::sample_segment(
        PlanePoint::new(-e, 0.0),
        PlanePoint::new(-1.0, 0.0),
        seg_samples,
    );
    let cand = PolarSeparationCandidate::try_new(set_e, set_f).unwrap();
    (a, omega, cand)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn closed_form_values() {
        let e = std::f64::consts::E;
        let o = PlanePoint::new(0.0, 0.0);
        let a1 = AnnulusSpec::try_new(o, 1.0, e).unwrap();
        assert_relative_eq!(
            extremal_length(&a1),
            2.0 * std::f64::consts::PI,
            max_relative = 1e-12
        );
        let a2 = AnnulusSpec::try_new(o, 1.0, (2.0 * std::f64::consts::PI).exp()).unwrap();
        assert_relative_eq!(extremal_length(&a2), 1.0, max_relative = 1e-12);
        let a3 = AnnulusSpec::try_new(o, 2.0, 2.0 * e * e).unwrap();
        assert_relative_eq!(
            extremal_length(&a3),
            std::f64::consts::PI,
            max_relative = 1e-12
        );
    }

    #[test]
    fn thicker_annulus_has_smaller_extremal_length() {
        let o = PlanePoint::new(0.0, 0.0);
        let base = extremal_length(&AnnulusSpec::try_new(o, 1.0, 2.0).unwrap());
        assert!(extremal_length(&AnnulusSpec::try_new(o, 1.0, 3.0).unwrap()) < base);
        assert!(extremal_length(&AnnulusSpec::try_new(o, 1.2, 2.0).unwrap()) > base);
    }

    #[test]
    fn half_annulus_is_a_polar_separation() {
        let (a, omega, cand) = half_annulus_instance(512, 400);
        let out = is_polar_separation(&a, &omega, &cand, 12, 1024).unwrap();
        assert!(out.is_pass());
        // The definition is symmetric in the two sets.
        let swapped = PolarSeparationCandidate::try_new(cand.f.clone(), cand.e.clone()).unwrap();
        let out = is_polar_separation(&a, &omega, &swapped, 12, 1024).unwrap();
        assert!(out.is_pass());
    }

    #[test]
    fn outer_arcs_only_fail_every_circle() {
        let e = std::f64::consts::E;
        let o = PlanePoint::new(0.0, 0.0);
        let a = AnnulusSpec::try_new(o, 1.0, e).unwrap();
        let grid = GridSpec::centered_square(o, e, 512).unwrap();
        let omega = RegionSample::from_predicate(grid, |p| {
            let d = p.norm();
            d > 1.0 && d < e
        });
        // Two disjoint arcs of the outer circle only.
        let arc = |t0: f64, t1: f64| {
            let pts: Vec<_> = (0..200)
                .map(|i| {
                    let t = t0 + (t1 - t0) * i as f64 / 199.0;
                    PlanePoint::new(0.999 * e * t.cos(), 0.999 * e * t.sin())
                })
                .collect();
            PointSet::try_new(pts).unwrap()
        };
        let cand = PolarSeparationCandidate::try_new(arc(0.0, 1.0), arc(2.0, 3.0)).unwrap();
        let out = is_polar_separation(&a, &omega, &cand, 8, 512).unwrap();
        match out {
            SeparationCheck::FailingRadius(rho) => {
                // First failure is the smallest sampled radius.
                let expected = (std::f64::consts::E as f64).powf(1.0 / 9.0);
                assert_relative_eq!(rho, expected, max_relative = 1e-9);
            }
            SeparationCheck::Pass => panic!("outer-arc candidate cannot pass"),
        }
    }

    #[test]
    fn intersecting_candidates_are_rejected() {
        let shared = PointSet::try_new(vec![PlanePoint::new(1.5, 0.0)]).unwrap();
        assert!(matches!(
            PolarSeparationCandidate::try_new(shared.clone(), shared),
            Err(Error::CandidateSetsIntersect)
        ));
    }

    #[test]
    fn half_annulus_length_area_identity_map() {
        let e = std::f64::consts::E;
        let (a, omega, cand) = half_annulus_instance(1024, 600);
        let report = length_area_check(&a, &omega, &cand, &MapSpec::Identity).unwrap();
        assert!(report.holds);
        assert_relative_eq!(report.image_gap, 2.0, max_relative = 1e-9);
        let expected = 8.0 / (std::f64::consts::PI * (e * e - 1.0));
        assert_relative_eq!(report.ratio, expected, max_relative = 0.02);
    }

    #[test]
    fn half_annulus_length_area_under_mobius() {
        let (a, omega, cand) = half_annulus_instance(1024, 600);
        let map = MapSpec::mobius(num_complex::Complex::new(0.3, 0.0)).unwrap();
        let report = length_area_check(&a, &omega, &cand, &map).unwrap();
        assert!(
            report.holds,
            "ratio {} vs lambda {}",
            report.ratio, report.lambda
        );
        // The map fixes -1 and 1, which realize the image gap.
        assert_relative_eq!(report.image_gap, 2.0, max_relative = 1e-9);
    }

    #[test]
    fn thin_strip_flags_contrapositive() {
        // A thin strip has a small area but the same endpoint gap, pushing
        // the ratio far above the extremal length.
        let e = std::f64::consts::E;
        let o = PlanePoint::new(0.0, 0.0);
        let a = AnnulusSpec::try_new(o, 1.0, e).unwrap();
        let grid = GridSpec::new(PlanePoint::new(-e, 0.0), 2.0 * e / 1024.0, 1024, 16).unwrap();
        let omega = RegionSample::from_predicate(grid, |p| {
            let d = p.norm();
            p.y > 0.0 && p.y < 0.02 && d > 1.0 && d < e
        });
        let set_e =
            PointSet::sample_segment(PlanePoint::new(1.0, 0.01), PlanePoint::new(e, 0.01), 200);
        let set_f =
            PointSet::sample_segment(PlanePoint::new(-e, 0.01), PlanePoint::new(-1.0, 0.01), 200);
        let cand = PolarSeparationCandidate::try_new(set_e, set_f).unwrap();
        let report = length_area_check(&a, &omega, &cand, &MapSpec::Identity).unwrap();
        assert!(!report.holds);
        assert!(report.ratio > report.lambda);
    }
}
