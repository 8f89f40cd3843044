use std::f64::consts::PI;

use outage_core::geometry::{
    inside_arc_measure, pdf_disk_closed_form, pdf_fig2_v2_closed_form, pdf_regular_polygon_center,
};
use outage_core::quadrature::{integrate_partitioned, QuadConfig};
use outage_core::{DistanceProfile, Point, ReferencePoint, Region};
use proptest::prelude::*;

fn total_mass(p: &DistanceProfile) -> f64 {
    let cfg = QuadConfig::new(1e-12, 1e-15);
    integrate_partitioned(|r| p.pdf(r), &p.partition(), &cfg).unwrap().value
}

fn radii(upper: f64, n: usize) -> impl Iterator<Item = f64> {
    (1..=n).map(move |k| upper * (k as f64 - 0.37) / n as f64)
}

#[test]
fn disk_matches_closed_form() {
    let w = 100.0;
    let region = Region::disk(Point::default(), w).unwrap();
    for d in [0.0, 30.0, 100.0] {
        let y0 = ReferencePoint::disk_offset(&region, d).unwrap();
        let p = outage_core::geometry::distance_profile(&region, &y0).unwrap();
        for r in radii(w + d, 50) {
            let want = pdf_disk_closed_form(w, d, r).unwrap();
            assert!((p.pdf(r) - want).abs() <= 1e-9, "d = {d}, r = {r}");
        }
        assert!((total_mass(&p) - 1.0).abs() <= 1e-8, "d = {d}");
    }
}

#[test]
fn disk_second_branch_is_derivative_of_lens_area() {
    let region = Region::disk(Point::default(), 100.0).unwrap();
    let p = DistanceProfile::new(&region, Point::new(30.0, 0.0)).unwrap();
    let h = 1e-4;
    let numeric = (p.cdf(90.0 + h) - p.cdf(90.0 - h)) / (2.0 * h);
    let closed = pdf_disk_closed_form(100.0, 30.0, 90.0).unwrap();
    assert!((numeric - closed).abs() <= 1e-8, "{numeric} vs {closed}");
}

#[test]
fn disk_edge_receiver_small_radius() {
    let region = Region::disk(Point::default(), 100.0).unwrap();
    let y0 = Point::new(100.0, 0.0);
    for r in [1e-6, 1e-3, 0.5] {
        let theta = inside_arc_measure(&region, y0, r).unwrap();
        let via_theta = r * theta / region.area();
        let closed = pdf_disk_closed_form(100.0, 100.0, r).unwrap();
        assert!((via_theta - closed).abs() <= 1e-10);
    }
}

#[test]
fn hexagon_center_matches_closed_form() {
    let w = 100.0;
    let region = Region::regular_polygon(6, w, Point::default()).unwrap();
    let p = DistanceProfile::new(&region, Point::default()).unwrap();
    for r in radii(w, 50).chain([95.0]) {
        let want = pdf_regular_polygon_center(6, w, r).unwrap();
        assert!((p.pdf(r) - want).abs() <= 1e-9, "r = {r}");
    }
    assert_eq!(p.pdf(100.5), 0.0);
    assert!((total_mass(&p) - 1.0).abs() <= 1e-8);
}

#[test]
fn every_regular_polygon_center_matches() {
    for l in 3..=9 {
        let region = Region::regular_polygon(l, 80.0, Point::default()).unwrap();
        let p = DistanceProfile::new(&region, Point::default()).unwrap();
        for r in radii(80.0, 50) {
            let want = pdf_regular_polygon_center(l, 80.0, r).unwrap();
            assert!((p.pdf(r) - want).abs() <= 1e-9, "L = {l}, r = {r}");
        }
    }
}

#[test]
fn fig2_vertex_matches_closed_form() {
    let w = 100.0;
    let region = Region::fig2(w).unwrap();
    let y0 = ReferencePoint::vertex(&region, 1).unwrap();
    let p = outage_core::geometry::distance_profile(&region, &y0).unwrap();
    let s3w = 3f64.sqrt() * w;
    for r in radii(2.0 * w, 50).chain((1..=5).map(|k| s3w + 5.0 * k as f64)) {
        let want = pdf_fig2_v2_closed_form(w, r);
        assert!((p.pdf(r) - want).abs() <= 1e-9, "r = {r}");
    }
    for r in [10.0, 100.0, 170.0] {
        assert!((inside_arc_measure(&region, y0.location(), r).unwrap() - PI / 4.0).abs() < 1e-14);
    }
    assert_eq!(inside_arc_measure(&region, y0.location(), 200.5).unwrap(), 0.0);
    assert!((p.r_max() - 2.0 * w).abs() < 1e-12);
    assert!((total_mass(&p) - 1.0).abs() <= 1e-8);
}

#[test]
fn bc_decomposition_agrees_on_reference_cases() {
    let fig2 = Region::fig2(100.0).unwrap();
    let hex = Region::regular_polygon(6, 100.0, Point::default()).unwrap();
    let mid_s2 = ReferencePoint::edge_midpoint(&fig2, 1).unwrap().location();
    let cases = [
        (fig2.clone(), Point::new(3f64.sqrt() * 100.0, 0.0)),
        (fig2.clone(), mid_s2),
        (fig2.clone(), Point::new(33.43, 80.70)),
        (fig2, Point::new(0.0, 0.0)),
        (hex.clone(), Point::default()),
        (hex, Point::new(20.0, -35.0)),
    ];
    for (region, y0) in cases {
        let p = DistanceProfile::new(&region, y0).unwrap();
        let mut checked = 0;
        for r in radii(p.r_max(), 200) {
            if let Some(bc) = p.pdf_bc_decomposition(r) {
                assert!((bc - p.pdf(r)).abs() <= 1e-12, "y0 = {y0:?}, r = {r}");
                checked += 1;
            }
        }
        assert!(checked > 100, "y0 = {y0:?}: only {checked} radii admissible");
    }
    // From V2 the decomposition holds on both pieces of the closed form.
    let fig2 = Region::fig2(100.0).unwrap();
    let p = DistanceProfile::new(&fig2, Point::new(3f64.sqrt() * 100.0, 0.0)).unwrap();
    for r in [50.0, 150.0, 175.0, 190.0, 199.0] {
        let bc = p.pdf_bc_decomposition(r).expect("admissible radius");
        assert!((bc - pdf_fig2_v2_closed_form(100.0, r)).abs() <= 1e-12);
    }
    assert!(p.pdf_bc_decomposition(165.0).is_none());
}

#[test]
fn cdf_endpoints() {
    let region = Region::fig2(100.0).unwrap();
    let p = DistanceProfile::new(&region, Point::new(40.0, 40.0)).unwrap();
    assert_eq!(p.cdf(0.0), 0.0);
    assert!((p.cdf(p.r_max() * (1.0 - 1e-15)) - 1.0).abs() <= 1e-9);
    assert_eq!(p.cdf(p.r_max() + 1.0), 1.0);
}

/// Random strictly convex polygon: points on an ellipse at sorted angles.
fn polygon_strategy() -> impl Strategy<Value = Region> {
    (
        prop::collection::vec(0.0f64..1.0, 3..10),
        10.0f64..200.0,
        0.3f64..1.0,
        -PI..PI,
    )
        .prop_filter_map("degenerate polygon", |(mut u, a, ratio, tilt)| {
            u.sort_by(|x, y| x.partial_cmp(y).unwrap());
            u.dedup_by(|x, y| (*x - *y).abs() < 0.02);
            if u.len() < 3 || (u[0] + 1.0 - u[u.len() - 1]) < 0.02 {
                return None;
            }
            let (c, s) = (tilt.cos(), tilt.sin());
            let pts = u
                .iter()
                .map(|&t| {
                    let phi = 2.0 * PI * t;
                    let (x, y) = (a * phi.cos(), a * ratio * phi.sin());
                    Point::new(c * x - s * y, s * x + c * y)
                })
                .collect();
            Region::polygon(pts).ok()
        })
}

fn region_strategy() -> impl Strategy<Value = Region> {
    prop_oneof![
        polygon_strategy(),
        (3usize..10, 5.0f64..150.0).prop_map(|(l, w)| Region::regular_polygon(
            l,
            w,
            Point::new(3.0, -7.0)
        )
        .unwrap()),
        (1.0f64..200.0).prop_map(|w| Region::disk(Point::new(-2.0, 5.0), w).unwrap()),
    ]
}

/// Interior point, boundary point or vertex, selected by `mode`.
fn receiver(region: &Region, mode: u8, w: &[f64]) -> Point {
    match region {
        Region::Disk { center, radius } => {
            let d = if mode == 0 { *radius } else { radius * w[0] };
            let phi = 2.0 * PI * w[1];
            *center + Point::new(phi.cos(), phi.sin()) * d
        }
        Region::Polygon(poly) => {
            let v = poly.vertices();
            match mode {
                0 => v[(w[0] * v.len() as f64) as usize % v.len()],
                1 => {
                    let i = (w[0] * v.len() as f64) as usize % v.len();
                    v[i] + (v[(i + 1) % v.len()] - v[i]) * w[1]
                }
                _ => {
                    let total: f64 = w.iter().take(v.len()).sum::<f64>() + 1e-9;
                    v.iter().zip(w).fold(Point::default(), |acc, (p, &wi)| acc + *p * (wi / total))
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn profiles_are_normalized(
        region in region_strategy(),
        mode in 0u8..4,
        w in prop::collection::vec(0.0f64..1.0, 10),
    ) {
        let y0 = receiver(&region, mode, &w);
        let p = DistanceProfile::new(&region, y0).unwrap();
        let mass = total_mass(&p);
        prop_assert!((mass - 1.0).abs() <= 1e-8, "mass {}", mass);
        prop_assert!((p.cdf(p.r_max()) - 1.0).abs() <= 1e-9);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn cdf_derivative_is_pdf(
        region in region_strategy(),
        mode in 0u8..4,
        w in prop::collection::vec(0.0f64..1.0, 10),
        frac in prop::collection::vec(0.01f64..0.99, 8),
    ) {
        let y0 = receiver(&region, mode, &w);
        let p = DistanceProfile::new(&region, y0).unwrap();
        let scale = region.scale();
        let h = 1e-5 * scale;
        let peak = (1..400)
            .map(|k| p.pdf(p.r_max() * k as f64 / 400.0))
            .fold(0.0f64, f64::max);
        let mut previous = 0.0;
        for &f in &frac {
            let r = f * p.r_max();
            // stay clear of the square-root kinks at breakpoints
            if p.breakpoints().iter().any(|&b| (b - r).abs() < 1e-2 * scale) {
                continue;
            }
            let numeric = (p.cdf(r + h) - p.cdf(r - h)) / (2.0 * h);
            prop_assert!((numeric - p.pdf(r)).abs() <= 1e-6 * peak,
                "r = {}: {} vs {}", r, numeric, p.pdf(r));
            previous = f64::max(previous, p.cdf(r));
        }
        prop_assert!(previous <= 1.0);
    }

    #[test]
    fn cdf_is_monotone(
        region in region_strategy(),
        mode in 0u8..4,
        w in prop::collection::vec(0.0f64..1.0, 10),
    ) {
        let y0 = receiver(&region, mode, &w);
        let p = DistanceProfile::new(&region, y0).unwrap();
        let mut last = 0.0;
        for k in 0..=300 {
            let c = p.cdf(p.r_max() * k as f64 / 300.0);
            prop_assert!(c + 1e-15 >= last);
            last = c;
        }
    }

    #[test]
    fn polygon_bc_decomposition_matches_arcs(
        region in polygon_strategy(),
        mode in 0u8..4,
        w in prop::collection::vec(0.0f64..1.0, 10),
    ) {
        let y0 = receiver(&region, mode, &w);
        let p = DistanceProfile::new(&region, y0).unwrap();
        for k in 1..100 {
            let r = p.r_max() * k as f64 / 100.0;
            let Some(bc) = p.pdf_bc_decomposition(r) else { continue };
            prop_assert!((bc - p.pdf(r)).abs() <= 1e-9 * p.pdf(r).max(1.0 / region.scale()),
                "r = {}: {} vs {}", r, bc, p.pdf(r));
        }
    }
}
