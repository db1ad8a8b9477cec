//! Catalog of conformal maps between the open unit disk and simple image
//! domains, with closed-form evaluators in both directions.
//!
//! `eval_inverse` is the disk-to-domain direction (the Riemann map inverse),
//! `eval_forward` the domain-to-disk direction. Every catalog member is
//! univalent on the closed disk, so forward evaluation can pick roots by
//! membership in the closed disk.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::num::{cst, Real};

/// Closed-disk membership tolerance for evaluators.
const DISK_TOL: f64 = 1e-12;

#[inline]
fn cone<T: Real>() -> Complex<T> {
    Complex::new(T::one(), T::zero())
}

/// A disk-to-domain conformal map in closed form.
#[derive(Clone, Debug, PartialEq)]
pub enum MapSpec<T> {
    /// The identity; the image domain is the unit disk itself.
    Identity,
    /// Disk automorphism `w -> (w + a) / (1 + conj(a) w)`, `|a| < 1`.
    Mobius { a: Complex<T> },
    /// `w -> w + c w^2`, univalent on the closed disk for `|c| <= 1/2`.
    Quad { c: Complex<T> },
    /// `w -> scale * inner(w) + shift` with `scale > 0`.
    Affine {
        scale: T,
        shift: Complex<T>,
        inner: Box<MapSpec<T>>,
    },
}

impl<T: Real> MapSpec<T> {
    pub fn mobius(a: Complex<T>) -> Result<Self> {
        if a.norm() < T::one() {
            Ok(Self::Mobius { a })
        } else {
            Err(Error::InvalidParameter(
                "mobius parameter needs |a| < 1".into(),
            ))
        }
    }

    pub fn quad(c: Complex<T>) -> Result<Self> {
        if c.norm() <= cst::<T>(0.5) {
            Ok(Self::Quad { c })
        } else {
            Err(Error::InvalidParameter(
                "quadratic parameter needs |c| <= 1/2".into(),
            ))
        }
    }

    pub fn affine(scale: T, shift: Complex<T>, inner: MapSpec<T>) -> Result<Self> {
        if scale.is_finite() && scale > T::zero() {
            Ok(Self::Affine {
                scale,
                shift,
                inner: Box::new(inner),
            })
        } else {
            Err(Error::InvalidParameter(
                "affine scale must be positive".into(),
            ))
        }
    }

    /// Disk-to-domain evaluation; `w` must lie in the closed unit disk.
    pub fn eval_inverse(&self, w: Complex<T>) -> Result<Complex<T>> {
        if w.norm() > T::one() + cst(DISK_TOL) {
            return Err(Error::OutsideClosedDisk);
        }
        Ok(self.eval_inverse_unchecked(w))
    }

    /// The same formula with no disk membership check. Useful when a catalog
    /// map is applied to a region it is conformal on that is not inside the
    /// disk; the caller owns that hypothesis.
    pub fn eval_inverse_unchecked(&self, w: Complex<T>) -> Complex<T> {
        match self {
            Self::Identity => w,
            Self::Mobius { a } => (w + a) / (cone::<T>() + a.conj() * w),
            Self::Quad { c } => w + c * w * w,
            Self::Affine {
                scale,
                shift,
                inner,
            } => inner.eval_inverse_unchecked(w) * Complex::new(*scale, T::zero()) + shift,
        }
    }

    /// Complex derivative of the disk-to-domain evaluator.
    pub fn derivative_inverse(&self, w: Complex<T>) -> Complex<T> {
        match self {
            Self::Identity => cone::<T>(),
            Self::Mobius { a } => {
                let den = cone::<T>() + a.conj() * w;
                (cone::<T>() - Complex::new(a.norm_sqr(), T::zero())) / (den * den)
            }
            Self::Quad { c } => cone::<T>() + (c + c) * w,
            Self::Affine { scale, inner, .. } => {
                inner.derivative_inverse(w) * Complex::new(*scale, T::zero())
            }
        }
    }

    /// Domain-to-disk evaluation. Errors when `z` has no preimage in the
    /// closed unit disk.
    pub fn eval_forward(&self, z: Complex<T>) -> Result<Complex<T>> {
        let tol: T = cst(DISK_TOL);
        match self {
            Self::Identity => {
                if z.norm() <= T::one() + tol {
                    Ok(z)
                } else {
                    Err(Error::NotInDomain)
                }
            }
            Self::Mobius { a } => {
                let w = (z - a) / (cone::<T>() - a.conj() * z);
                if w.norm() <= T::one() + tol {
                    Ok(w)
                } else {
                    Err(Error::NotInDomain)
                }
            }
            Self::Quad { c } => quad_forward(*c, z, tol),
            Self::Affine {
                scale,
                shift,
                inner,
            } => inner.eval_forward((z - shift) / Complex::new(*scale, T::zero())),
        }
    }
}

/// Inverts `w + c w^2 = z` on the closed disk.
///
/// For small `|c|` the closed form loses all precision, so a few Newton steps
/// from `w = z` are used instead; the map is a perturbation of the identity
/// there and Newton converges immediately. Branch choice elsewhere follows
/// continuity from `c = 0`: the quadratic-formula root that degenerates to
/// `z` as `c` shrinks.
fn quad_forward<T: Real>(c: Complex<T>, z: Complex<T>, tol: T) -> Result<Complex<T>> {
    let small = cst::<T>(1e-8);
    let mut candidates: Vec<Complex<T>> = Vec::with_capacity(2);
    if c.norm() < small {
        let mut w = z;
        for _ in 0..4 {
            let f = w + c * w * w - z;
            let fp = cone::<T>() + (c + c) * w;
            w = w - f / fp;
        }
        candidates.push(w);
    } else {
        let four = Complex::new(cst::<T>(4.0), T::zero());
        let s = (cone::<T>() + four * c * z).sqrt();
        let two_c = c + c;
        candidates.push((s - cone::<T>()) / two_c);
        candidates.push((-s - cone::<T>()) / two_c);
    }
    candidates
        .into_iter()
        .filter(|w| w.norm() <= T::one() + tol)
        .min_by(|u, v| u.norm().partial_cmp(&v.norm()).unwrap())
        .ok_or(Error::NotInDomain)
}

/// Forward and inverse evaluators of one catalog map, bundled with boundary
/// trace access.
#[derive(Clone, Debug)]
pub struct ConformalPair<T> {
    map: MapSpec<T>,
}

impl<T: Real> ConformalPair<T> {
    pub fn new(map: MapSpec<T>) -> Self {
        Self { map }
    }

    pub fn map(&self) -> &MapSpec<T> {
        &self.map
    }

    pub fn forward(&self, z: Complex<T>) -> Result<Complex<T>> {
        self.map.eval_forward(z)
    }

    pub fn inverse(&self, w: Complex<T>) -> Result<Complex<T>> {
        self.map.eval_inverse(w)
    }

    pub fn boundary_trace(&self, n: usize) -> Result<crate::curves::PolygonalJordanCurve<T>> {
        crate::curves::trace_map_boundary(&self.map, n)
    }
}

/// Minimum of `|zeta0 - psi(w)|` over the circle `|w| = rho`.
///
/// For a boundary point `zeta0` the integrand is the modulus of a function
/// holomorphic and zero-free on the closed sub-disk, so the minimum over
/// `|w| <= rho` is attained on the circle; a circle scan of `res` points
/// followed by local ternary refinement recovers it to well under `1e-8`.
pub fn min_inverse_distance<T: Real>(
    map: &MapSpec<T>,
    zeta0: Complex<T>,
    rho: T,
    res: usize,
) -> Result<T> {
    if !(rho > T::zero() && rho < T::one()) {
        return Err(Error::InvalidParameter("rho must lie in (0, 1)".into()));
    }
    if res < 64 {
        return Err(Error::InvalidParameter(
            "circle scan needs res >= 64".into(),
        ));
    }
    let f = |theta: T| -> T {
        let w = Complex::new(rho * theta.cos(), rho * theta.sin());
        (zeta0 - map.eval_inverse_unchecked(w)).norm()
    };
    let tau: T = cst::<T>(2.0) * T::PI();
    let step = tau / cst::<T>(res as f64);
    let mut best_j = 0usize;
    let mut best = T::infinity();
    for j in 0..res {
        let v = f(step * cst::<T>(j as f64));
        if v < best {
            best = v;
            best_j = j;
        }
    }
    // Ternary refinement in the two-step bracket around the best scan point.
    let mut lo = step * (cst::<T>(best_j as f64) - T::one());
    let mut hi = step * (cst::<T>(best_j as f64) + T::one());
    for _ in 0..200 {
        if hi - lo < cst::<T>(1e-14) {
            break;
        }
        let third = (hi - lo) / cst::<T>(3.0);
        let m1 = lo + third;
        let m2 = hi - third;
        if f(m1) <= f(m2) {
            hi = m2;
        } else {
            lo = m1;
        }
    }
    let refined = f((lo + hi) / cst::<T>(2.0));
    Ok(best.min(refined))
}

/// Wire form of a map:
/// `{"kind": "mobius", "a": [re, im]}` and friends.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MapWire {
    Identity,
    Mobius {
        a: [f64; 2],
    },
    Quad {
        c: [f64; 2],
    },
    Affine {
        scale: f64,
        shift: [f64; 2],
        inner: Box<MapWire>,
    },
}

impl MapWire {
    pub fn to_spec(&self) -> Result<MapSpec<f64>> {
        match self {
            MapWire::Identity => Ok(MapSpec::Identity),
            MapWire::Mobius { a } => MapSpec::mobius(Complex::new(a[0], a[1])),
            MapWire::Quad { c } => MapSpec::quad(Complex::new(c[0], c[1])),
            MapWire::Affine {
                scale,
                shift,
                inner,
            } => MapSpec::affine(*scale, Complex::new(shift[0], shift[1]), inner.to_spec()?),
        }
    }

    pub fn from_spec(spec: &MapSpec<f64>) -> Self {
        match spec {
            MapSpec::Identity => MapWire::Identity,
            MapSpec::Mobius { a } => MapWire::Mobius { a: [a.re, a.im] },
            MapSpec::Quad { c } => MapWire::Quad { c: [c.re, c.im] },
            MapSpec::Affine {
                scale,
                shift,
                inner,
            } => MapWire::Affine {
                scale: *scale,
                shift: [shift.re, shift.im],
                inner: Box::new(MapWire::from_spec(inner)),
            },
        }
    }
}

pub fn map_from_json(s: &str) -> Result<MapSpec<f64>> {
    let wire: MapWire = serde_json::from_str(s)?;
    wire.to_spec()
}

pub fn map_to_json(spec: &MapSpec<f64>) -> String {
    serde_json::to_string(&MapWire::from_spec(spec)).expect("map serialization cannot fail")
}
