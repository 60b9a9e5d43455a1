//! Closed-form values and brute-force oracles for the geometric kernels.

use std::f64::consts::PI;

use shapeorbit::convex::generators::{
    make_apex_over_chord, make_ball_polygon, make_cap, make_random_body, make_regular_simplex, make_segment,
};
use shapeorbit::hausdorff::{hausdorff_2d_exact, hausdorff_nd_bounds};
use shapeorbit::{circumball, diameter, inradius, pseudometric, width_2d, Body, MetricOptions, Vector};

fn brute_width(pts: &[Vector]) -> f64 {
    // minimal width is attained orthogonal to an edge direction of the hull
    let mut best = f64::INFINITY;
    for i in 0..pts.len() {
        for j in 0..pts.len() {
            if i == j {
                continue;
            }
            let n = (pts[j] - pts[i]).normalized().perp();
            let proj: Vec<f64> = pts.iter().map(|p| p.dot(&n)).collect();
            let spread = proj.iter().copied().fold(f64::NEG_INFINITY, f64::max)
                - proj.iter().copied().fold(f64::INFINITY, f64::min);
            best = best.min(spread);
        }
    }
    best
}

#[test]
fn equilateral_triangle_functionals() {
    let s = 2.5;
    let pts = [
        Vector::new2(0.0, 0.0),
        Vector::new2(s, 0.0),
        Vector::new2(s / 2.0, s * 3f64.sqrt() / 2.0),
    ];
    let t = Body::polytope(&pts).unwrap();
    assert!((circumball(&t).radius - s / 3f64.sqrt()).abs() < 1e-12);
    assert!((inradius(&t).unwrap().radius - s / (2.0 * 3f64.sqrt())).abs() < 1e-12);
    assert!((diameter(&t) - s).abs() < 1e-12);
    assert!((width_2d(&t).unwrap() - s * 3f64.sqrt() / 2.0).abs() < 1e-12);
}

#[test]
fn unit_triangle_ratios() {
    let t = make_regular_simplex(2, 1.0).unwrap();
    assert!((diameter(&t) - 3f64.sqrt()).abs() < 1e-12);
    assert!((inradius(&t).unwrap().radius - 0.5).abs() < 1e-12);
}

#[test]
fn regular_polygon_inradius() {
    for m in [8, 9, 30] {
        let p = make_ball_polygon(m).unwrap();
        assert!((inradius(&p).unwrap().radius - (PI / m as f64).cos()).abs() < 1e-12);
    }
}

#[test]
fn width_matches_brute_force() {
    for seed in 0..40 {
        let b = make_random_body(seed, 3 + (seed as usize % 9)).unwrap();
        let w = width_2d(&b).unwrap();
        assert!((w - brute_width(b.core_points())).abs() < 1e-12, "seed {seed}");
    }
}

#[test]
fn ball_polygon_hausdorff_error() {
    let ball = Body::ball(Vector::zeros(2), 1.0).unwrap();
    for m in [8, 64, 256] {
        let p = make_ball_polygon(m).unwrap();
        let d = hausdorff_2d_exact(&p, &ball).unwrap().upper;
        assert!(d <= 1.0 - (PI / m as f64).cos() + 1e-12);
        assert!(d <= p.approx_error() + 1e-12);
    }
}

#[test]
fn sampled_bounds_bracket_exact() {
    for seed in 0..20 {
        let a = make_random_body(seed, 6).unwrap();
        let b = make_random_body(seed + 1000, 9).unwrap();
        let exact = hausdorff_2d_exact(&a, &b).unwrap().upper;
        let s = hausdorff_nd_bounds(&a, &b, 512).unwrap();
        assert!(s.lower <= exact + 1e-12 && exact <= s.upper + 1e-12);
    }
}

#[test]
fn segment_against_ball_is_one() {
    let ball = Body::ball(Vector::zeros(2), 1.0).unwrap();
    let r = pseudometric(&make_segment(), &ball, &MetricOptions::default()).unwrap();
    assert!((r.value - 1.0).abs() < 1e-9);
}

#[test]
fn metric_is_below_one_for_planar_bodies() {
    for seed in 0..10 {
        let a = make_random_body(seed, 5).unwrap();
        let b = make_random_body(seed + 50, 11).unwrap();
        let r = pseudometric(&a, &b, &MetricOptions::default()).unwrap();
        assert!(r.value < 1.0);
    }
}

#[test]
fn cap_and_apex_against_ball() {
    let ball = Body::ball(Vector::zeros(2), 1.0).unwrap();
    let cap = make_cap(Vector::new2(0.0, 0.4), 256).unwrap();
    let r = pseudometric(&cap, &ball, &MetricOptions::default()).unwrap();
    assert!(r.lower() <= 0.6 && 0.6 <= r.upper());
    // the apex body is farthest from the ball at the chord midpoint
    let t = 0.3;
    let k = make_apex_over_chord(t).unwrap();
    let r = pseudometric(&k, &ball, &MetricOptions::default()).unwrap();
    let chord_mid_gap = 1.0 - t;
    assert!((r.value - chord_mid_gap).abs() < 1e-3, "{}", r.value);
}

#[test]
fn spatial_simplex_functionals() {
    let t = make_regular_simplex(3, 2.0).unwrap();
    let cb = circumball(&t);
    assert!((cb.radius - 2.0).abs() < 1e-12);
    assert!((diameter(&t) - 2.0 * (8.0f64 / 3.0).sqrt()).abs() < 1e-12);
    assert!((inradius(&t).unwrap().radius - 2.0 / 3.0).abs() < 1e-12);
}
