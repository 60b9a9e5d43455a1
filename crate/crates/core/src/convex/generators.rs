//! Deterministic test bodies: regular simplices, circle-inscribed polygon
//! approximations of caps, balls and the Reuleaux triangle, and seeded
//! random polygons.
//!
//! Polygonal stand-ins for smooth bodies are inscribed, so every vertex lies
//! on the true boundary and the stored `approx_error` bounds the Hausdorff
//! distance to the true body. All of them have the unit ball as circumball.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use rand::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;

use crate::convex::body::{Body, HalfSpace, Polytope};
use crate::convex::normalize::normalize;
use crate::convex::similarity::Similarity;
use crate::convex::vector::{Orthogonal, Vector};
use crate::error::{Error, Result};

pub const MIN_ARC_VERTICES: usize = 8;

fn check_m(m: usize) -> Result<()> {
    if m < MIN_ARC_VERTICES {
        return Err(Error::BadParameter(format!(
            "arc resolution m must be at least {MIN_ARC_VERTICES}, got {m}"
        )));
    }
    Ok(())
}

/// Regular n-simplex (n = 2, 3) inscribed in the sphere of radius
/// `circumradius` about the origin. The 3D simplex carries its facets.
pub fn make_regular_simplex(n: usize, circumradius: f64) -> Result<Body> {
    if !(circumradius > 0.0) || !circumradius.is_finite() {
        return Err(Error::BadParameter("circumradius must be positive".into()));
    }
    match n {
        2 => {
            let pts: Vec<Vector> = (0..3)
                .map(|k| Vector::polar(FRAC_PI_2 + k as f64 * TAU / 3.0) * circumradius)
                .collect();
            Body::polytope(&pts)
        }
        3 => {
            let s = circumradius / 3f64.sqrt();
            let pts = [
                Vector::new3(s, s, s),
                Vector::new3(s, -s, -s),
                Vector::new3(-s, s, -s),
                Vector::new3(-s, -s, s),
            ];
            let hrep = pts
                .iter()
                .map(|p| HalfSpace::new(-*p, circumradius * circumradius / 3.0))
                .collect::<Result<Vec<_>>>()?;
            Ok(Polytope::with_hrep(&pts, hrep)?.into())
        }
        d => Err(Error::UnsupportedDimension(d)),
    }
}

/// Inscribed polygon for the cap `{x : uᵀx <= ‖u‖²} ∩ B`, 0 < ‖u‖ < 1, with
/// `m` segments along the circular arc.
pub fn make_cap(u: Vector, m: usize) -> Result<Body> {
    check_m(m)?;
    if u.dim() != 2 {
        return Err(Error::UnsupportedDimension(u.dim()));
    }
    let a = u.norm();
    if !(a > 0.0 && a < 1.0) {
        return Err(Error::BadParameter("cap needs 0 < |u| < 1".into()));
    }
    let base = u.y().atan2(u.x());
    let half = a.acos();
    let span = TAU - 2.0 * half;
    let step = span / m as f64;
    let pts: Vec<Vector> = (0..=m)
        .map(|k| Vector::polar(base + half + k as f64 * step))
        .collect();
    Ok(Body::polytope(&pts)?.with_approx_error(1.0 - (step / 2.0).cos()))
}

/// Inscribed polygon for the Reuleaux triangle built on the regular triangle
/// with unit circumradius (its diameter-preserving completion). Each of the
/// three arcs gets ⌈m/3⌉ segments.
pub fn make_reuleaux_triangle(m: usize) -> Result<Body> {
    check_m(m)?;
    let per_arc = m.div_ceil(3);
    let width = 3f64.sqrt();
    let corners: Vec<Vector> = (0..3)
        .map(|k| Vector::polar(FRAC_PI_2 + k as f64 * TAU / 3.0))
        .collect();
    let mut pts = Vec::with_capacity(3 * per_arc);
    for k in 0..3 {
        let c = corners[k];
        let p = corners[(k + 1) % 3];
        let start = (p - c).y().atan2((p - c).x());
        for j in 0..=per_arc {
            let ang = start + (PI / 3.0) * j as f64 / per_arc as f64;
            pts.push(c + Vector::polar(ang) * width);
        }
    }
    let err = width * (1.0 - (PI / (6.0 * per_arc as f64)).cos());
    Ok(Body::polytope(&pts)?.with_approx_error(err))
}

/// The segment [(−1, 0), (1, 0)].
pub fn make_segment() -> Body {
    Body::polytope(&[Vector::new2(-1.0, 0.0), Vector::new2(1.0, 0.0)])
        .expect("segment is non-degenerate")
}

/// Regular m-gon inscribed in the unit circle.
pub fn make_ball_polygon(m: usize) -> Result<Body> {
    check_m(m)?;
    let pts: Vec<Vector> = (0..m)
        .map(|k| Vector::polar(TAU * k as f64 / m as f64))
        .collect();
    Ok(Body::polytope(&pts)?.with_approx_error(1.0 - (PI / m as f64).cos()))
}

/// `conv({e₂, (±√(1−t²), −t)})`: an apex on the circle over a chord at
/// height −t, 0 <= t < 1.
pub fn make_apex_over_chord(t: f64) -> Result<Body> {
    if !(0.0..1.0).contains(&t) {
        return Err(Error::BadParameter("chord height must be in [0, 1)".into()));
    }
    let c = (1.0 - t * t).sqrt();
    Body::polytope(&[
        Vector::new2(0.0, 1.0),
        Vector::new2(-c, -t),
        Vector::new2(c, -t),
    ])
}

/// Parameters and bodies of the refined-inradius extremal construction in
/// the plane: `outer = {x₂ <= s} ∩ B` and `inner = conv(±e₁, disk(−t·e₂, 1 − t))`.
#[derive(Debug, Clone)]
pub struct RefinedPair {
    pub t: f64,
    pub s: f64,
    pub outer: Body,
    pub inner: Body,
}

/// Builds the pair for a given `t`, with `s` fixed by requiring the segment
/// from −t·e₂ to the cap corner q = (√(1−s²), s) to be orthogonal to [p, e₁],
/// where p is where that segment leaves the disk. `s` is found by bisection.
pub fn make_refined_pair(t: f64, m: usize) -> Result<RefinedPair> {
    check_m(m)?;
    if !(t > 0.0 && t < 0.5) {
        return Err(Error::BadParameter("t must be in (0, 1/2)".into()));
    }
    let g = |s: f64| {
        let d = Vector::new2((1.0 - s * s).sqrt(), s + t);
        let p = Vector::new2(0.0, -t) + d * ((1.0 - t) / d.norm());
        (Vector::new2(1.0, 0.0) - p).dot(&d)
    };
    // g changes sign once on (0, 1): scan for the bracket, then bisect
    let grid: Vec<f64> = (1..1000).map(|i| i as f64 / 1000.0).collect();
    let (mut lo, mut hi) = grid
        .windows(2)
        .map(|w| (w[0], w[1]))
        .find(|&(a, b)| g(a) * g(b) <= 0.0)
        .ok_or_else(|| Error::BadParameter(format!("no orthogonal configuration for t = {t}")))?;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if g(lo) * g(mid) <= 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let s = 0.5 * (lo + hi);
    if 1.0 - 2.0 * t > s {
        return Err(Error::BadParameter(format!("inner body leaves the cap for t = {t}")));
    }
    let outer = make_cap(Vector::new2(0.0, s), m)?;
    let rad = 1.0 - t;
    let mut pts: Vec<Vector> = (0..m)
        .map(|k| Vector::new2(0.0, -t) + Vector::polar(-FRAC_PI_2 + TAU * k as f64 / m as f64) * rad)
        .collect();
    pts.push(Vector::new2(1.0, 0.0));
    pts.push(Vector::new2(-1.0, 0.0));
    let inner = Body::polytope(&pts)?.with_approx_error(rad * (1.0 - (PI / m as f64).cos()));
    Ok(RefinedPair { t, s, outer, inner })
}

/// Seeded random polygon: hull of `vertex_count` uniform points in the unit
/// disk, normalized so its circumball is the unit ball.
pub fn make_random_body(seed: u64, vertex_count: usize) -> Result<Body> {
    if vertex_count < 2 {
        return Err(Error::BadParameter("need at least two points".into()));
    }
    let mut rng = SplitMix64::seed_from_u64(seed);
    let pts: Vec<Vector> = (0..vertex_count).map(|_| uniform_in_disk(&mut rng)).collect();
    let body = Body::polytope(&pts)?;
    Ok(normalize(&body)?.0.into_body())
}

/// Seeded random 3D vertex cloud: uniform points in the unit ball (not normalized).
pub fn make_random_cloud_3d(seed: u64, count: usize) -> Result<Body> {
    if count < 2 {
        return Err(Error::BadParameter("need at least two points".into()));
    }
    let mut rng = SplitMix64::seed_from_u64(seed);
    let pts: Vec<Vector> = (0..count).map(|_| uniform_in_ball3(&mut rng)).collect();
    Body::polytope(&pts)
}

pub fn uniform_in_disk<R: Rng>(rng: &mut R) -> Vector {
    let r = rng.random::<f64>().sqrt();
    Vector::polar(TAU * rng.random::<f64>()) * r
}

pub fn uniform_in_ball3<R: Rng>(rng: &mut R) -> Vector {
    loop {
        let p = Vector::new3(
            2.0 * rng.random::<f64>() - 1.0,
            2.0 * rng.random::<f64>() - 1.0,
            2.0 * rng.random::<f64>() - 1.0,
        );
        if p.norm_squared() <= 1.0 {
            return p;
        }
    }
}

/// Uniformly random element of O(n): a random rotation, composed with a
/// reflection half of the time.
pub fn random_orthogonal<R: Rng>(rng: &mut R, dim: usize) -> Orthogonal {
    let rot = if dim == 2 {
        Orthogonal::rotation2(TAU * rng.random::<f64>())
    } else {
        let q = loop {
            let q: [f64; 4] = std::array::from_fn(|_| 2.0 * rng.random::<f64>() - 1.0);
            let n2: f64 = q.iter().map(|c| c * c).sum();
            if n2 > 1e-6 && n2 <= 1.0 {
                break q;
            }
        };
        Orthogonal::from_quaternion(q)
    };
    if rng.random::<bool>() {
        rot.compose(&Orthogonal::reflection(dim))
    } else {
        rot
    }
}

/// Random similarity with log-uniform scale in `[scale_lo, scale_hi]` and
/// translation uniform in the cube of half-width `shift`.
pub fn random_similarity<R: Rng>(
    rng: &mut R,
    dim: usize,
    scale_lo: f64,
    scale_hi: f64,
    shift: f64,
) -> Similarity {
    let scale = (scale_lo.ln() + rng.random::<f64>() * (scale_hi.ln() - scale_lo.ln())).exp();
    let orthogonal = random_orthogonal(rng, dim);
    let mut translation = Vector::zeros(dim);
    for i in 0..dim {
        translation[i] = shift * (2.0 * rng.random::<f64>() - 1.0);
    }
    Similarity {
        scale,
        orthogonal,
        translation,
    }
}
