//! Quantitative boundary behavior of conformal maps onto the unit disk.
//!
//! The crate measures how well-behaved a Jordan domain's boundary is (moduli
//! of local connectivity), applies extremal-length estimates to annuli and
//! separating circles, and turns those into fully explicit epsilon/delta
//! continuity data for the boundary extension of the domain's Riemann map.
//! Scales involved are astronomically small, so bound arithmetic lives in
//! base-2 logarithmic form.
//!
//! Everything numeric is generic over the scalar (see [`num::Real`]); the
//! aliases at the crate root fix `f64`, which is what the verification
//! harness and the CLI use.

pub mod annulus;
pub mod bounds;
pub mod components;
pub mod curves;
pub mod error;
pub mod geom;
pub mod harness;
pub mod maps;
pub mod mlc;
pub mod num;
pub mod raster;
pub mod suite;

pub use error::{Error, Result};

/// `f64` plane point.
pub type Point = geom::PlanePoint<f64>;
/// `f64` circle.
pub type Circle = geom::CircleSpec<f64>;
/// `f64` annulus.
pub type Annulus = geom::AnnulusSpec<f64>;
/// `f64` point set.
pub type Points = geom::PointSet<f64>;
/// `f64` Jordan curve.
pub type Curve = curves::PolygonalJordanCurve<f64>;
/// `f64` curve position.
pub type CurvePos = curves::CurvePoint<f64>;
/// `f64` catalog map.
pub type DiskMap = maps::MapSpec<f64>;
