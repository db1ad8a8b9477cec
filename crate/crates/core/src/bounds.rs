//! Quantitative bounds in log2 scale: the annulus diameter bound, the
//! threshold radius from the exponential-times-distance formula, and the
//! derived neighborhood size delta = 2^-k + 2^-g(k).
//!
//! The threshold values routinely sit far below 2^-1000, so everything is
//! carried as a base-2 logarithm. The exponent inside the defining formula is
//! also re-expressed in base 2: with x = 8*pi^2/((l^2-eps^2) ln 2) + log2 min(...)
//! and k = 2 - floor(x), the sum 2^-k + 2^-g(k) stays strictly below 2^x for
//! any table with g(k) > k, which is what makes delta a sound choice.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::maps::{min_inverse_distance, MapSpec};
use crate::mlc::MLCTable;
use crate::num::{cst, Real};

/// A nonnegative quantity stored as its base-2 logarithm, with exact zero as
/// a separate state. Sums are computed from the larger exponent so values
/// like 2^-600 + 2^-900 come out exact to double precision.
#[derive(Clone, Copy, Debug)]
pub struct Log2Real<T> {
    log2: T,
    zero: bool,
}

impl<T: Real> Log2Real<T> {
    pub fn zero() -> Self {
        Self {
            log2: T::neg_infinity(),
            zero: true,
        }
    }

    pub fn from_log2(log2: T) -> Self {
        Self { log2, zero: false }
    }

    pub fn from_value(v: T) -> Result<Self> {
        if v < T::zero() || !v.is_finite() {
            return Err(Error::InvalidParameter(
                "log-scale values must be >= 0".into(),
            ));
        }
        if v == T::zero() {
            Ok(Self::zero())
        } else {
            Ok(Self::from_log2(v.log2()))
        }
    }

    pub fn is_zero(&self) -> bool {
        self.zero
    }

    /// The exponent; negative infinity for zero.
    pub fn log2_value(&self) -> T {
        self.log2
    }

    /// The plain value when it is representable. Everything below 2^-1000 is
    /// reported as unrepresentable rather than silently flushed to zero.
    pub fn to_plain(&self) -> Option<T> {
        if self.zero {
            Some(T::zero())
        } else if self.log2 > cst::<T>(-1000.0) {
            Some(self.log2.exp2())
        } else {
            None
        }
    }

    pub fn add(self, other: Self) -> Self {
        if self.zero {
            return other;
        }
        if other.zero {
            return self;
        }
        let (hi, lo) = if self.log2 >= other.log2 {
            (self.log2, other.log2)
        } else {
            (other.log2, self.log2)
        };
        // log2(2^hi + 2^lo) = hi + log2(1 + 2^(lo-hi)); the difference term
        // underflows harmlessly to 0 when the summands are far apart.
        let bump = (lo - hi).exp2().ln_1p() / T::LN_2();
        Self::from_log2(hi + bump)
    }

    pub fn mul(self, other: Self) -> Self {
        if self.zero || other.zero {
            return Self::zero();
        }
        Self::from_log2(self.log2 + other.log2)
    }

    /// Multiplication by 2^shift.
    pub fn shift(self, shift: T) -> Self {
        if self.zero {
            self
        } else {
            Self::from_log2(self.log2 + shift)
        }
    }
}

impl<T: Real> PartialEq for Log2Real<T> {
    fn eq(&self, other: &Self) -> bool {
        match (self.zero, other.zero) {
            (true, true) => true,
            (false, false) => self.log2 == other.log2,
            _ => false,
        }
    }
}

impl<T: Real> PartialOrd for Log2Real<T> {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        match (self.zero, other.zero) {
            (true, true) => Some(std::cmp::Ordering::Equal),
            (true, false) => Some(std::cmp::Ordering::Less),
            (false, true) => Some(std::cmp::Ordering::Greater),
            (false, false) => self.log2.partial_cmp(&other.log2),
        }
    }
}

/// A boundary point of a catalog map's image domain together with the target
/// oscillation eps.
#[derive(Clone, Debug)]
pub struct BoundQuery<T> {
    pub map: MapSpec<T>,
    pub zeta0: Complex<T>,
    pub eps: T,
}

/// Diameter bound for the image of the separated boundary piece: with
/// l = 1 - sqrt(r^2 - pi*lambda), returns sqrt(l^2 + 4*pi*lambda).
///
/// `r` is the radius of the disk the annulus separates the center from, so
/// it lives in (0, 1]; the bound is only informative when pi*lambda <= r^2.
pub fn thm32_diameter_bound<T: Real>(lambda: T, r: T) -> Result<T> {
    if !(lambda > T::zero()) || !lambda.is_finite() {
        return Err(Error::InvalidParameter("lambda must be positive".into()));
    }
    if !(r > T::zero()) || r > T::one() {
        return Err(Error::InvalidParameter("radius must lie in (0, 1]".into()));
    }
    let pl = T::PI() * lambda;
    if r * r < pl {
        return Err(Error::AnnulusTooThin);
    }
    let l = T::one() - (r * r - pl).sqrt();
    Ok((l * l + cst::<T>(4.0) * pl).sqrt())
}

/// The radius of the shrunken sub-disk paired with gap parameter `l`.
pub fn rho_of<T: Real>(l: T, eps: T) -> T {
    let one_m = T::one() - l;
    (one_m * one_m + (eps * eps - l * l) / cst::<T>(4.0)).sqrt()
}

/// log2 of exp(8 pi^2 / (l^2 - eps^2)) * min |zeta0 - psi(w)| over |w| <= rho(l),
/// or None where the formula degenerates (rho at or past the unit circle, so
/// the min is zero and the product with it).
fn log2_f<T: Real>(q: &BoundQuery<T>, l: T, res: usize) -> Option<T> {
    if !(l > T::zero() && l < q.eps) {
        return None;
    }
    let rho = rho_of(l, q.eps);
    if rho >= T::one() - cst::<T>(1e-12) {
        return None;
    }
    let min_d = min_inverse_distance(&q.map, q.zeta0, rho, res).ok()?;
    if !(min_d > T::zero()) {
        return None;
    }
    let eight_pi2 = cst::<T>(8.0) * T::PI() * T::PI();
    Some(eight_pi2 / ((l * l - q.eps * q.eps) * T::LN_2()) + min_d.log2())
}

#[derive(Clone, Copy, Debug)]
pub struct ThresholdReport<T> {
    pub threshold: Log2Real<T>,
    pub l_star: T,
}

/// Maximizes the threshold formula over the gap parameter: a uniform grid on
/// (0, eps), then golden-section refinement in the bracket around the best
/// grid point. Any value at or below the true supremum is a sound radius, so
/// grid-level accuracy is about tightness, not correctness.
pub fn eqn1_threshold<T: Real>(
    q: &BoundQuery<T>,
    l_grid: usize,
    res: usize,
) -> Result<ThresholdReport<T>> {
    if !(q.eps > T::zero() && q.eps < T::one()) {
        return Err(Error::UnsupportedEpsilon);
    }
    if l_grid < 64 {
        return Err(Error::InvalidParameter("l_grid must be at least 64".into()));
    }
    let step = q.eps / cst::<T>(l_grid as f64 + 1.0);
    let mut best: Option<(T, T)> = None; // (log2 F, l), first (smallest-l) max wins
    for i in 1..=l_grid {
        let l = step * cst::<T>(i as f64);
        if let Some(v) = log2_f(q, l, res) {
            if best.map_or(true, |(bv, _)| v > bv) {
                best = Some((v, l));
            }
        }
    }
    let Some((grid_v, grid_l)) = best else {
        return Err(Error::InvalidParameter(
            "no admissible gap parameter on the grid".into(),
        ));
    };

    // Golden-section around the best bracket; inadmissible probes count as
    // minus infinity, which steers the search back inside.
    let eval = |l: T| log2_f(q, l, res).unwrap_or_else(T::neg_infinity);
    let golden: T = cst::<T>(0.618_033_988_749_894_9);
    let mut a = (grid_l - step).max(step * cst::<T>(1e-6));
    let mut b = (grid_l + step).min(q.eps * (T::one() - cst::<T>(1e-12)));
    let mut c = b - golden * (b - a);
    let mut d = a + golden * (b - a);
    let mut fc = eval(c);
    let mut fd = eval(d);
    for _ in 0..120 {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - golden * (b - a);
            fc = eval(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + golden * (b - a);
            fd = eval(d);
        }
    }
    let mid = (a + b) * cst::<T>(0.5);
    let refined = eval(mid);
    let (x, l_star) = if refined > grid_v {
        (refined, mid)
    } else {
        (grid_v, grid_l)
    };
    Ok(ThresholdReport {
        threshold: Log2Real::from_log2(x),
        l_star,
    })
}

/// The neighborhood exponent k = 2 - floor(x), where x is the log2-scale
/// threshold maximum.
pub fn k_of<T: Real>(q: &BoundQuery<T>, l_grid: usize, res: usize) -> Result<i64> {
    let report = eqn1_threshold(q, l_grid, res)?;
    let x = report.threshold.log2_value();
    let floor = x
        .floor()
        .to_i64()
        .ok_or_else(|| Error::InvalidParameter("threshold exponent out of integer range".into()))?;
    Ok(2 - floor)
}

/// The full derivation: k from the threshold, g(k) from the table, and
/// delta = 2^-k + 2^-g(k), checked against the threshold before returning.
#[derive(Clone, Copy, Debug)]
pub struct DeltaResult<T> {
    pub k: i64,
    pub delta: Log2Real<T>,
    pub threshold: Log2Real<T>,
    pub l_star: T,
    pub g_used: u32,
}

pub fn delta_of<T: Real>(
    q: &BoundQuery<T>,
    table: &MLCTable,
    l_grid: usize,
    res: usize,
) -> Result<DeltaResult<T>> {
    let report = eqn1_threshold(q, l_grid, res)?;
    let x = report.threshold.log2_value();
    let floor = x
        .floor()
        .to_i64()
        .ok_or_else(|| Error::InvalidParameter("threshold exponent out of integer range".into()))?;
    let k = 2 - floor;
    let g = table.value(k)?;
    let delta =
        Log2Real::from_log2(cst::<T>(-(k as f64))).add(Log2Real::from_log2(cst::<T>(-(g as f64))));
    if !(delta < report.threshold) {
        return Err(Error::SoundnessViolation);
    }
    Ok(DeltaResult {
        k,
        delta,
        threshold: report.threshold,
        l_star: report.l_star,
        g_used: g,
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct DeltaResultWire {
    k: i64,
    log2_delta: f64,
    log2_threshold: f64,
    l_star: f64,
    g_used: u32,
}

impl DeltaResult<f64> {
    pub fn to_json(&self) -> String {
        let wire = DeltaResultWire {
            k: self.k,
            log2_delta: self.delta.log2_value(),
            log2_threshold: self.threshold.log2_value(),
            l_star: self.l_star,
            g_used: self.g_used,
        };
        serde_json::to_string_pretty(&wire).unwrap()
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let wire: DeltaResultWire = serde_json::from_str(s)?;
        Ok(DeltaResult {
            k: wire.k,
            delta: Log2Real::from_log2(wire.log2_delta),
            threshold: Log2Real::from_log2(wire.log2_threshold),
            l_star: wire.l_star,
            g_used: wire.g_used,
        })
    }
}
