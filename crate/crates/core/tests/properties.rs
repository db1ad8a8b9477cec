//! Randomized invariants for the geometric and numeric kernels.

use num_complex::Complex;
use proptest::prelude::*;

use diskbound_core::annulus::extremal_length;
use diskbound_core::bounds::Log2Real;
use diskbound_core::curves::{
    polygon_from_json, polygon_to_json, polyline_length, split_at, subarc_diameter,
    trace_map_boundary, CurvePoint, PolygonalJordanCurve,
};
use diskbound_core::geom::{
    circle_polygon_intersection, convex_hull, point_in_polygon, set_diameter, AnnulusSpec,
    CircleSpec, PlanePoint, PointLocation,
};
use diskbound_core::maps::{min_inverse_distance, MapSpec};
use diskbound_core::mlc::MLCTable;

fn finite_pt() -> impl Strategy<Value = PlanePoint<f64>> {
    (-50.0f64..50.0, -50.0f64..50.0).prop_map(|(x, y)| PlanePoint::new(x, y))
}

/// A simple closed curve from the convex hull of scattered points, plus two
/// distinct positions on it.
fn hull_curve_with_marks(
) -> impl Strategy<Value = (PolygonalJordanCurve<f64>, CurvePoint<f64>, CurvePoint<f64>)> {
    (
        proptest::collection::vec(finite_pt(), 8..24),
        0.0f64..1.0,
        0.0f64..1.0,
    )
        .prop_filter_map("degenerate hull or coincident marks", |(pts, u, v)| {
            let hull = convex_hull(&pts);
            if hull.len() < 4 {
                return None;
            }
            let curve = PolygonalJordanCurve::try_new(hull).ok()?;
            let total = curve.perimeter();
            let p = curve.at_arc_position(u * total);
            let q = curve.at_arc_position(v * total);
            if curve.point_at(p).dist(curve.point_at(q)) < 1e-7 * total {
                return None;
            }
            Some((curve, p, q))
        })
}

proptest! {
    #[test]
    fn diameter_is_rigid_motion_invariant(
        pts in proptest::collection::vec(finite_pt(), 2..40),
        angle in 0.0f64..std::f64::consts::TAU,
        dx in -1e3f64..1e3,
        dy in -1e3f64..1e3,
    ) {
        let moved: Vec<_> = pts
            .iter()
            .map(|p| {
                let (s, c) = angle.sin_cos();
                PlanePoint::new(c * p.x - s * p.y + dx, s * p.x + c * p.y + dy)
            })
            .collect();
        let d0 = set_diameter(&pts).unwrap();
        let d1 = set_diameter(&moved).unwrap();
        prop_assert!((d0 - d1).abs() <= 1e-9 * (1.0 + d0));
    }

    #[test]
    fn diameter_dominates_every_pair(
        pts in proptest::collection::vec(finite_pt(), 2..40),
        i in any::<prop::sample::Index>(),
        j in any::<prop::sample::Index>(),
    ) {
        let d = set_diameter(&pts).unwrap();
        let a = pts[i.index(pts.len())];
        let b = pts[j.index(pts.len())];
        prop_assert!(a.dist(b) <= d * (1.0 + 1e-12));
    }

    #[test]
    fn split_arcs_partition_the_perimeter((curve, p, q) in hull_curve_with_marks()) {
        let arcs = split_at(&curve, p, q).unwrap();
        let total = polyline_length(&arcs.arc1) + polyline_length(&arcs.arc2);
        prop_assert!((total - curve.perimeter()).abs() <= 1e-9 * curve.perimeter());
    }

    #[test]
    fn each_subarc_spans_its_endpoints((curve, p, q) in hull_curve_with_marks()) {
        let chord = curve.point_at(p).dist(curve.point_at(q));
        let arcs = split_at(&curve, p, q).unwrap();
        for arc in [&arcs.arc1, &arcs.arc2] {
            prop_assert!(subarc_diameter(arc).unwrap() >= chord * (1.0 - 1e-12));
        }
    }

    #[test]
    fn extremal_length_is_scale_free_and_monotone(
        r in 0.01f64..100.0,
        ratio in 1.001f64..500.0,
        bump in 1.001f64..10.0,
        scale in 0.001f64..1000.0,
    ) {
        let o = PlanePoint::new(0.0, 0.0);
        let lam = extremal_length(&AnnulusSpec::try_new(o, r, r * ratio).unwrap());
        let scaled =
            extremal_length(&AnnulusSpec::try_new(o, scale * r, scale * r * ratio).unwrap());
        prop_assert!((lam - scaled).abs() <= 1e-9 * lam);
        let wider =
            extremal_length(&AnnulusSpec::try_new(o, r, r * ratio * bump).unwrap());
        prop_assert!(wider < lam);
    }

    #[test]
    fn mobius_round_trips_on_the_disk(
        ax in -0.9f64..0.9,
        ay in -0.9f64..0.9,
        wr in 0.0f64..0.999,
        wt in 0.0f64..std::f64::consts::TAU,
    ) {
        let a = Complex::new(ax, ay);
        prop_assume!(a.norm() < 0.9);
        let map = MapSpec::mobius(a).unwrap();
        let w = Complex::from_polar(wr, wt);
        let z = map.eval_inverse(w).unwrap();
        let back = map.eval_forward(z).unwrap();
        prop_assert!((back - w).norm() <= 1e-9);
    }

    #[test]
    fn quad_round_trips_on_the_disk(
        cx in -0.25f64..0.25,
        cy in -0.25f64..0.25,
        wr in 0.0f64..0.999,
        wt in 0.0f64..std::f64::consts::TAU,
    ) {
        let c = Complex::new(cx, cy);
        prop_assume!(c.norm() <= 0.25 && c.norm() > 1e-9);
        let map = MapSpec::quad(c).unwrap();
        let w = Complex::from_polar(wr, wt);
        let z = map.eval_inverse(w).unwrap();
        let back = map.eval_forward(z).unwrap();
        prop_assert!((back - w).norm() <= 1e-9);
    }

    #[test]
    fn hull_centroid_lies_inside(pts in proptest::collection::vec(finite_pt(), 6..30)) {
        let hull = convex_hull(&pts);
        prop_assume!(hull.len() >= 4);
        let curve = PolygonalJordanCurve::try_new(hull).unwrap();
        let n = curve.vertices().len() as f64;
        let cx = curve.vertices().iter().map(|p| p.x).sum::<f64>() / n;
        let cy = curve.vertices().iter().map(|p| p.y).sum::<f64>() / n;
        let loc = point_in_polygon(PlanePoint::new(cx, cy), &curve, 1e-9);
        prop_assert_eq!(loc, PointLocation::Inside);
    }

    #[test]
    fn clean_circle_crossings_come_in_pairs(
        (curve, _, _) in hull_curve_with_marks(),
        u in 0.05f64..0.95,
        radius_frac in 0.05f64..2.0,
    ) {
        let center = curve.point_at(curve.at_arc_position(u * curve.perimeter()));
        let (lo, hi) = curve.bbox();
        let radius = radius_frac * 0.25 * (hi.x - lo.x + hi.y - lo.y);
        prop_assume!(radius > 1e-9);
        let circle = CircleSpec::try_new(center, radius).unwrap();
        let crossings = circle_polygon_intersection(&circle, &curve);
        prop_assume!(crossings.iter().all(|c| !c.tangential));
        prop_assert_eq!(crossings.len() % 2, 0);
    }

    #[test]
    fn traced_boundaries_are_simple_curves(
        ax in -0.6f64..0.6,
        ay in -0.6f64..0.6,
        n in 16usize..256,
    ) {
        let a = Complex::new(ax, ay);
        prop_assume!(a.norm() < 0.6);
        let map = MapSpec::mobius(a).unwrap();
        // try_new inside the tracer rejects self-intersecting polylines, so
        // success is the property.
        let curve = trace_map_boundary(&map, n).unwrap();
        prop_assert_eq!(curve.vertices().len(), n);
    }

    #[test]
    fn polygon_json_round_trips((curve, _, _) in hull_curve_with_marks()) {
        let text = polygon_to_json(&curve);
        let back = polygon_from_json(&text).unwrap();
        prop_assert_eq!(back.vertices().len(), curve.vertices().len());
        for (a, b) in back.vertices().iter().zip(curve.vertices()) {
            prop_assert_eq!(a.x, b.x);
            prop_assert_eq!(a.y, b.y);
        }
    }

    #[test]
    fn log_scale_arithmetic_matches_plain(
        a in 1e-6f64..1e6,
        b in 1e-6f64..1e6,
    ) {
        let la = Log2Real::from_value(a).unwrap();
        let lb = Log2Real::from_value(b).unwrap();
        let sum = la.add(lb).to_plain().unwrap();
        let prod = la.mul(lb).to_plain().unwrap();
        prop_assert!((sum - (a + b)).abs() <= 1e-9 * (a + b));
        prop_assert!((prod - a * b).abs() <= 1e-9 * (a * b));
        prop_assert_eq!(la < lb, a < b);
        let swapped = lb.add(la).to_plain().unwrap();
        prop_assert!((sum - swapped).abs() <= 1e-12 * sum);
    }

    #[test]
    fn table_json_round_trips(
        increments in proptest::collection::vec(0u32..3, 1..12),
        base in 0u32..4,
        pad in proptest::option::of(0u32..5),
    ) {
        let mut g = vec![base];
        for inc in increments {
            g.push(g.last().unwrap() + inc);
        }
        let mut table = MLCTable::try_new(g).unwrap();
        if let Some(p) = pad {
            table = table.with_extension_pad(p);
        }
        let back = MLCTable::from_json(&table.to_json()).unwrap();
        prop_assert_eq!(back.entries(), table.entries());
        prop_assert_eq!(back.extension_pad(), table.extension_pad());
    }
}

#[test]
fn inverse_image_distance_shrinks_as_the_disk_grows() {
    // Deterministic sweep: the image of the rho-disk only grows with rho, so
    // the boundary-point distance to it can only shrink.
    let maps = [
        MapSpec::mobius(Complex::new(0.5, 0.0)).unwrap(),
        MapSpec::quad(Complex::new(0.25, 0.0)).unwrap(),
    ];
    for map in maps {
        let zeta0 = map.eval_inverse_unchecked(Complex::new(1.0, 0.0));
        let mut prev = f64::INFINITY;
        for i in 1..=18 {
            let rho = i as f64 / 20.0;
            let d = min_inverse_distance(&map, zeta0, rho, 1024).unwrap();
            assert!(d > 0.0);
            assert!(d <= prev * (1.0 + 1e-6), "rho={rho}: {d} vs {prev}");
            prev = d;
        }
    }
}
