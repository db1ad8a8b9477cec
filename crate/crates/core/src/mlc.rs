//! Moduli of local connectivity for Jordan curves.
//!
//! A table `g` is a modulus for a curve when any two curve points at distance
//! at most `2^-g(k)` are joined by a subarc of diameter below `2^-k`. The
//! checker here is sampled, not certified: pairs are drawn from a uniform
//! perimeter grid, so a pass means "not falsified at this resolution".

use serde::{Deserialize, Serialize};

use crate::curves::{split_at, subarc_diameter, CurvePoint, CurveSample, PolygonalJordanCurve};
use crate::error::{Error, Result};
use crate::geom::{CircleSpec, PlanePoint};
use crate::num::{cst, Real};
use crate::raster::{block_curve, fill_disk, flood_fill, GridSpec};

/// Hard ceiling for the estimator's search over g.
const G_SEARCH_MAX: u32 = 64;

/// Strictness slack: "diameter smaller than 2^-k" is enforced as
/// diameter <= 2^-k - 2^-40-ish absolute.
const STRICT_SLACK: f64 = 1e-12;

/// The modulus table k -> g(k) for k = 0..=kmax, optionally extendable
/// past kmax by the linear rule g(k) = k + pad.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MLCTable {
    g: Vec<u32>,
    extension_pad: Option<u32>,
}

impl MLCTable {
    pub fn try_new(g: Vec<u32>) -> Result<Self> {
        if g.is_empty() {
            return Err(Error::InvalidParameter("table must cover k = 0".into()));
        }
        Ok(Self {
            g,
            extension_pad: None,
        })
    }

    /// Declares the linear extension rule g(k) = k + pad for k > kmax.
    pub fn with_extension_pad(mut self, pad: u32) -> Self {
        self.extension_pad = Some(pad);
        self
    }

    pub fn kmax(&self) -> u32 {
        (self.g.len() - 1) as u32
    }

    pub fn entries(&self) -> &[u32] {
        &self.g
    }

    pub fn extension_pad(&self) -> Option<u32> {
        self.extension_pad
    }

    /// Table value at k, using the declared extension rule past kmax.
    pub fn value(&self, k: i64) -> Result<u32> {
        if k < 0 {
            return Err(Error::TableDoesNotCover);
        }
        if (k as usize) < self.g.len() {
            return Ok(self.g[k as usize]);
        }
        match self.extension_pad {
            Some(pad) => u32::try_from(k)
                .ok()
                .and_then(|k| k.checked_add(pad))
                .ok_or(Error::TableDoesNotCover),
            None => Err(Error::TableDoesNotCover),
        }
    }

    /// g(k+1) >= g(k) everywhere.
    pub fn is_increasing(&self) -> bool {
        self.g.windows(2).all(|w| w[1] >= w[0])
    }

    /// Replaces each entry with the running maximum.
    pub fn monotonized(mut self) -> Self {
        for i in 1..self.g.len() {
            self.g[i] = self.g[i].max(self.g[i - 1]);
        }
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&MLCTableWire::from(self)).unwrap()
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let wire: MLCTableWire = serde_json::from_str(s)?;
        if wire.g.len() != wire.kmax as usize + 1 {
            return Err(Error::InvalidParameter(
                "kmax inconsistent with table length".into(),
            ));
        }
        let mut table = Self::try_new(wire.g)?;
        table.extension_pad = wire.extension_pad;
        Ok(table)
    }
}

#[derive(Serialize, Deserialize)]
struct MLCTableWire {
    kmax: u32,
    g: Vec<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    extension_pad: Option<u32>,
}

impl From<&MLCTable> for MLCTableWire {
    fn from(t: &MLCTable) -> Self {
        Self {
            kmax: t.kmax(),
            g: t.g.clone(),
            extension_pad: t.extension_pad,
        }
    }
}

/// A sampled pair that falsifies the table at level k: the points are close
/// but every connecting subarc is fat.
#[derive(Clone, Debug)]
pub struct MLCWitness<T> {
    pub p: CurvePoint<T>,
    pub q: CurvePoint<T>,
    pub k: u32,
    pub pair_distance: T,
    pub best_arc_diameter: T,
}

#[derive(Clone, Debug)]
pub enum MLCCheck<T> {
    Pass,
    Witness(MLCWitness<T>),
}

impl<T> MLCCheck<T> {
    pub fn is_pass(&self) -> bool {
        matches!(self, MLCCheck::Pass)
    }

    pub fn witness(&self) -> Option<&MLCWitness<T>> {
        match self {
            MLCCheck::Pass => None,
            MLCCheck::Witness(w) => Some(w),
        }
    }
}

/// Checks the table at level k against sampled curve pairs. `resolution` is
/// samples per unit of perimeter. On failure returns the witness whose `p`
/// (then `q`) comes first in curve order.
pub fn check_mlc<T: Real>(
    curve: &PolygonalJordanCurve<T>,
    table: &MLCTable,
    k: u32,
    resolution: u32,
) -> Result<MLCCheck<T>> {
    if k > table.kmax() {
        return Err(Error::KOutOfRange);
    }
    if resolution < 64 {
        return Err(Error::InvalidParameter(
            "resolution must be at least 64".into(),
        ));
    }
    let g = table.value(k as i64)?;
    let samples = curve.sample_uniform(resolution as usize);
    Ok(scan_pairs(curve, &samples, k, g))
}

/// Pair scan shared by the checker and the estimator. Passes when every
/// sampled pair with 0 < d <= 2^-g has a connecting subarc of diameter
/// <= 2^-k - slack.
fn scan_pairs<T: Real>(
    curve: &PolygonalJordanCurve<T>,
    samples: &[CurveSample<T>],
    k: u32,
    g: u32,
) -> MLCCheck<T> {
    let d_thr = cst::<T>(-(g as f64)).exp2();
    let diam_limit = cst::<T>(-(k as f64)).exp2() - cst::<T>(STRICT_SLACK);
    let total = curve.perimeter();
    let m = samples.len();
    let spacing = total / cst::<T>(m as f64);
    // Hash cell stays bounded below by the sample spacing so the index range
    // cannot blow up for tiny thresholds.
    let cell = (d_thr * cst::<T>(0.5)).max(spacing * cst::<T>(0.25));
    let window = (d_thr / cell).ceil().to_i64().unwrap_or(1).max(1);
    let key = |p: PlanePoint<T>| -> (i64, i64) {
        (
            (p.x / cell).floor().to_i64().unwrap_or(0),
            (p.y / cell).floor().to_i64().unwrap_or(0),
        )
    };
    let mut buckets: std::collections::HashMap<(i64, i64), Vec<u32>> =
        std::collections::HashMap::new();
    for (i, s) in samples.iter().enumerate() {
        buckets.entry(key(s.pos)).or_default().push(i as u32);
    }
    let d_thr2 = d_thr * d_thr;
    for i in 0..m {
        let si = &samples[i];
        let (kx, ky) = key(si.pos);
        // Smallest violating partner for this i, if any.
        let mut best_j: Option<(usize, T)> = None;
        for ox in -window..=window {
            for oy in -window..=window {
                let Some(bucket) = buckets.get(&(kx + ox, ky + oy)) else {
                    continue;
                };
                for &ju in bucket {
                    let j = ju as usize;
                    if j <= i {
                        continue;
                    }
                    if let Some((bj, _)) = best_j {
                        if j >= bj {
                            continue;
                        }
                    }
                    let sj = &samples[j];
                    // A short connecting arc bounds its own diameter.
                    let ds = (sj.s - si.s).abs();
                    let arc = ds.min(total - ds);
                    if arc <= diam_limit {
                        continue;
                    }
                    let d2 = si.pos.dist2(sj.pos);
                    if d2 > d_thr2 || d2 <= T::zero() {
                        continue;
                    }
                    let Ok(arcs) = split_at(curve, si.at, sj.at) else {
                        continue; // coincident plane points: pair excluded by d > 0
                    };
                    if !diameter_exceeds(&arcs.arc1, diam_limit)
                        || !diameter_exceeds(&arcs.arc2, diam_limit)
                    {
                        continue;
                    }
                    best_j = Some((j, d2.sqrt()));
                }
            }
        }
        if let Some((j, dist)) = best_j {
            let arcs = split_at(curve, si.at, samples[j].at).unwrap();
            let diam = diameter_floor(&arcs.arc1).min(diameter_floor(&arcs.arc2));
            return MLCCheck::Witness(MLCWitness {
                p: si.at,
                q: samples[j].at,
                k,
                pair_distance: dist,
                best_arc_diameter: diam,
            });
        }
    }
    MLCCheck::Pass
}

/// Whether a polyline's diameter exceeds `limit`, decided from its extent box
/// where possible: the larger box side is a lower bound on the diameter and
/// the box diagonal an upper bound. Only the in-between case pays for the
/// exact pairwise scan, and such arcs are confined to a box of side `limit`.
fn diameter_exceeds<T: Real>(arc: &[PlanePoint<T>], limit: T) -> bool {
    let (w, h) = extent(arc);
    if w.max(h) > limit {
        return true;
    }
    if (w * w + h * h).sqrt() <= limit {
        return false;
    }
    subarc_diameter(arc).unwrap() > limit
}

fn extent<T: Real>(arc: &[PlanePoint<T>]) -> (T, T) {
    let mut lo = arc[0];
    let mut hi = arc[0];
    for p in arc {
        lo.x = lo.x.min(p.x);
        lo.y = lo.y.min(p.y);
        hi.x = hi.x.max(p.x);
        hi.y = hi.y.max(p.y);
    }
    (hi.x - lo.x, hi.y - lo.y)
}

/// A lower bound on the arc's diameter for witness reporting: the exact value
/// for modest arcs, otherwise the max of the extent-box side and a strided
/// pairwise scan. The pass/fail decision never consumes this number.
fn diameter_floor<T: Real>(arc: &[PlanePoint<T>]) -> T {
    const EXACT_CAP: usize = 4096;
    if arc.len() <= EXACT_CAP {
        return subarc_diameter(arc).unwrap();
    }
    let (w, h) = extent(arc);
    let stride = arc.len().div_ceil(EXACT_CAP);
    let thinned: Vec<_> = arc.iter().copied().step_by(stride).collect();
    subarc_diameter(&thinned).unwrap().max(w.max(h))
}

/// Smallest g (searched upward from `g_floor`) whose level-k check passes at
/// the given resolution.
pub fn smallest_passing_g<T: Real>(
    curve: &PolygonalJordanCurve<T>,
    k: u32,
    resolution: u32,
    g_floor: u32,
) -> Result<u32> {
    if resolution < 64 {
        return Err(Error::InvalidParameter(
            "resolution must be at least 64".into(),
        ));
    }
    let samples = curve.sample_uniform(resolution as usize);
    for g in g_floor..=G_SEARCH_MAX {
        if scan_pairs(curve, &samples, k, g).is_pass() {
            return Ok(g);
        }
    }
    Err(Error::NotLocallyConnected)
}

/// Estimates a modulus table by search: per level the smallest passing g,
/// then a +1 safety pad against sampling optimism, then monotonization.
pub fn estimate_mlc<T: Real>(
    curve: &PolygonalJordanCurve<T>,
    kmax: u32,
    resolution: u32,
) -> Result<MLCTable> {
    let mut raw = Vec::with_capacity(kmax as usize + 1);
    let mut floor = 0u32;
    for k in 0..=kmax {
        // The passing set only shrinks as k grows, so the scan resumes at the
        // previous level's answer.
        let g = smallest_passing_g(curve, k, resolution, floor)?;
        raw.push(g + 1);
        floor = g;
    }
    Ok(MLCTable::try_new(raw)?.monotonized())
}

/// Checks, by flood fill, that a near-boundary point's component of
/// `disk - curve` has the marked curve point on its boundary. The numeric
/// hypotheses are enforced up front; the return value is the grid verdict.
pub fn verify_membership_theorem<T: Real>(
    curve: &PolygonalJordanCurve<T>,
    table: &MLCTable,
    disk: CircleSpec<T>,
    z0: PlanePoint<T>,
    zeta0: CurvePoint<T>,
    k: u32,
    grid_n: usize,
) -> Result<bool> {
    if k > table.kmax() {
        return Err(Error::KOutOfRange);
    }
    if grid_n < 128 {
        return Err(Error::InvalidParameter(
            "grid_n must be at least 128".into(),
        ));
    }
    let g = table.value(k as i64)?;
    let zeta_pt = curve.point_at(zeta0);
    let d_zeta = disk.radius - zeta_pt.dist(disk.center);
    if !(d_zeta > T::zero()) {
        return Err(Error::HypothesesNotMet(
            "marked point not inside the open disk".into(),
        ));
    }
    let d_z0 = disk.radius - z0.dist(disk.center);
    if !(d_z0 > T::zero()) {
        return Err(Error::HypothesesNotMet(
            "z0 not inside the open disk".into(),
        ));
    }
    let (_, off_curve) = curve.nearest_point(z0);
    if !(off_curve > T::zero()) {
        return Err(Error::HypothesesNotMet("z0 lies on the curve".into()));
    }
    let pow_g = cst::<T>(-(g as f64)).exp2();
    if !(z0.dist(zeta_pt) < pow_g) {
        return Err(Error::HypothesesNotMet(
            "|z0 - zeta0| not below 2^-g(k)".into(),
        ));
    }
    let budget = cst::<T>(-(k as f64)).exp2() + pow_g;
    if !(budget <= d_zeta.max(d_z0)) {
        return Err(Error::HypothesesNotMet(
            "2^-k + 2^-g(k) exceeds both distances to the disk boundary".into(),
        ));
    }

    let grid = GridSpec::centered_square(disk.center, disk.radius, grid_n)?;
    let mut free = fill_disk(&grid, disk);
    free.subtract(&block_curve(&grid, curve));
    let seed = grid.index_of(z0).ok_or(Error::CannotSeed)?;
    if !free.get(seed.0, seed.1) {
        return Err(Error::CannotSeed);
    }
    let component = flood_fill(&free, seed);
    // "Reaches zeta0" up to the one-cell curve band burned out of the grid.
    Ok(component.min_chebyshev_to(&grid, zeta_pt) <= cst::<T>(2.5))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::trace_map_boundary;
    use crate::maps::MapSpec;

    fn circle_curve(n: usize) -> PolygonalJordanCurve<f64> {
        trace_map_boundary(&MapSpec::<f64>::Identity, n).unwrap()
    }

    fn unit_square() -> PolygonalJordanCurve<f64> {
        PolygonalJordanCurve::try_new(vec![
            PlanePoint::new(0.0, 0.0),
            PlanePoint::new(1.0, 0.0),
            PlanePoint::new(1.0, 1.0),
            PlanePoint::new(0.0, 1.0),
        ])
        .unwrap()
    }

    // Two unit squares joined by a neck of width 2^-5.
    fn corridor() -> PolygonalJordanCurve<f64> {
        let lo = 0.5 - 0.015625;
        let hi = 0.5 + 0.015625;
        PolygonalJordanCurve::try_new(vec![
            PlanePoint::new(-1.5, 0.0),
            PlanePoint::new(-0.5, 0.0),
            PlanePoint::new(-0.5, lo),
            PlanePoint::new(0.5, lo),
            PlanePoint::new(0.5, 0.0),
            PlanePoint::new(1.5, 0.0),
            PlanePoint::new(1.5, 1.0),
            PlanePoint::new(0.5, 1.0),
            PlanePoint::new(0.5, hi),
            PlanePoint::new(-0.5, hi),
            PlanePoint::new(-0.5, 1.0),
            PlanePoint::new(-1.5, 1.0),
        ])
        .unwrap()
    }

    fn shifted_table(kmax: u32, pad: u32) -> MLCTable {
        MLCTable::try_new((0..=kmax).map(|k| k + pad).collect()).unwrap()
    }

    #[test]
    fn table_json_round_trip() {
        let t = shifted_table(4, 1).with_extension_pad(1);
        let s = t.to_json();
        assert!(s.contains("\"kmax\":4"));
        let back = MLCTable::from_json(&s).unwrap();
        assert_eq!(back, t);
        // Extension rule applies past kmax only.
        assert_eq!(back.value(4).unwrap(), 5);
        assert_eq!(back.value(9).unwrap(), 10);
        let bare = MLCTable::from_json(r#"{"kmax":1,"g":[1,2]}"#).unwrap();
        assert!(bare.value(5).is_err());
        assert!(MLCTable::from_json(r#"{"kmax":3,"g":[1,2]}"#).is_err());
    }

    #[test]
    fn monotonize_takes_running_max() {
        let t = MLCTable::try_new(vec![3, 2, 5, 4]).unwrap().monotonized();
        assert_eq!(t.entries(), &[3, 3, 5, 5]);
        assert!(t.is_increasing());
    }

    #[test]
    fn circle_passes_chord_table() {
        let curve = circle_curve(4096);
        let table = shifted_table(8, 1);
        for k in [1u32, 3, 5] {
            let out = check_mlc(&curve, &table, k, 256).unwrap();
            assert!(out.is_pass(), "k={k}");
        }
    }

    #[test]
    fn k_outside_table_is_an_error() {
        let curve = circle_curve(256);
        let table = shifted_table(2, 1);
        assert!(matches!(
            check_mlc(&curve, &table, 3, 256),
            Err(Error::KOutOfRange)
        ));
    }

    #[test]
    fn corridor_witness_straddles_the_neck() {
        let curve = corridor();
        let table = shifted_table(4, 1);
        let out = check_mlc(&curve, &table, 1, 512).unwrap();
        let w = out
            .witness()
            .expect("corridor must falsify g = k + 1 at k = 1");
        assert!(w.pair_distance > 0.0 && w.pair_distance <= 0.25);
        assert!(w.best_arc_diameter > 0.5);
        // The pair is lexicographically first: re-running returns the same one.
        let again = check_mlc(&curve, &table, 1, 512).unwrap();
        let w2 = again.witness().unwrap();
        assert_eq!(w.p.edge_index, w2.p.edge_index);
        assert_eq!(w.q.edge_index, w2.q.edge_index);
    }

    #[test]
    fn square_estimate_stays_at_most_two_over() {
        let table = estimate_mlc(&unit_square(), 4, 256).unwrap();
        assert!(table.is_increasing());
        for (k, &g) in table.entries().iter().enumerate() {
            // +2 = at most one over the chord bound plus the safety pad.
            assert!(g <= k as u32 + 2, "g({k}) = {g}");
        }
    }

    #[test]
    fn circle_estimate_respects_chord_bound() {
        let table = estimate_mlc(&circle_curve(2048), 4, 256).unwrap();
        assert!(table.is_increasing());
        for (k, &g) in table.entries().iter().enumerate() {
            assert!(g <= k as u32 + 2, "g({k}) = {g}");
        }
    }

    #[test]
    fn corridor_estimate_sees_the_neck() {
        let table = estimate_mlc(&corridor(), 2, 512).unwrap();
        assert!(
            table.value(1).unwrap() >= 5,
            "g(1) = {}",
            table.value(1).unwrap()
        );
    }

    #[test]
    fn estimator_monotone_in_table_order() {
        // A passing check keeps passing when g grows (threshold shrinks).
        let curve = corridor();
        let g1 = smallest_passing_g(&curve, 1, 512, 0).unwrap();
        let fat = MLCTable::try_new(vec![g1 + 1; 2]).unwrap();
        assert!(check_mlc(&curve, &fat, 1, 512).unwrap().is_pass());
    }

    #[test]
    fn membership_holds_on_circle_instance() {
        let curve = circle_curve(4096);
        let table = shifted_table(8, 1);
        let disk = CircleSpec::try_new(PlanePoint::new(1.0, 0.0), 0.3).unwrap();
        let z0 = PlanePoint::new(1.0 - 2f64.powi(-8), 0.0);
        let zeta0 = CurvePoint::new(0, 0.0);
        let ok = verify_membership_theorem(&curve, &table, disk, z0, zeta0, 6, 512).unwrap();
        assert!(ok);
    }

    #[test]
    fn membership_rejects_distant_z0() {
        let curve = circle_curve(4096);
        let table = shifted_table(8, 1);
        let disk = CircleSpec::try_new(PlanePoint::new(1.0, 0.0), 0.3).unwrap();
        let z0 = PlanePoint::new(1.0 - 4.0 * 2f64.powi(-7), 0.0);
        let zeta0 = CurvePoint::new(0, 0.0);
        let err = verify_membership_theorem(&curve, &table, disk, z0, zeta0, 6, 512).unwrap_err();
        assert!(matches!(err, Error::HypothesesNotMet(_)), "{err}");
    }

    #[test]
    fn membership_holds_on_square_edge_midpoint() {
        let curve = unit_square();
        let table = shifted_table(8, 1);
        let disk = CircleSpec::try_new(PlanePoint::new(0.5, 0.0), 0.3).unwrap();
        let z0 = PlanePoint::new(0.5, 2f64.powi(-8));
        let zeta0 = CurvePoint::new(0, 0.5);
        let ok = verify_membership_theorem(&curve, &table, disk, z0, zeta0, 6, 512).unwrap();
        assert!(ok);
    }
}
