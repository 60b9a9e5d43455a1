//! Minimum enclosing ball (circumball) via Welzl's move-to-front algorithm.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_xoshiro::SplitMix64;
use serde::Serialize;

use crate::convex::body::{Body, Shape};
use crate::convex::vector::Vector;
use crate::error::{Error, Result};
use crate::optim::lp::convex_combination;
use crate::tolerance::GEOMETRY_TOL;

/// Smallest enclosing ball with a touching certificate: the center is a
/// convex combination of `support_points`, all of which lie on the sphere.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Circumball {
    pub center: Vector,
    pub radius: f64,
    pub support_points: Vec<Vector>,
}

/// Default shuffle seed for the randomized incremental construction.
pub const DEFAULT_MEB_SEED: u64 = 0;

/// Circumball of a body. Balls are handled analytically; for `P ⊕ rB` the
/// circumball of `P` is inflated by `r`.
pub fn circumball(body: &Body) -> Circumball {
    match body.shape() {
        Shape::Ball { center, radius } => {
            let e = Vector::unit(center.dim(), 0);
            Circumball {
                center: *center,
                radius: *radius,
                support_points: vec![*center + e * *radius, *center - e * *radius],
            }
        }
        Shape::Polytope(p) => enclosing_ball(p.vertices(), DEFAULT_MEB_SEED),
        Shape::Rounded { core, radius } => {
            let cb = enclosing_ball(core.vertices(), DEFAULT_MEB_SEED);
            let support_points = cb
                .support_points
                .iter()
                .map(|p| *p + (*p - cb.center).normalized() * *radius)
                .collect();
            Circumball {
                center: cb.center,
                radius: cb.radius + radius,
                support_points,
            }
        }
    }
}

#[derive(Clone)]
struct Sphere {
    center: Vector,
    radius_sq: f64,
}

impl Sphere {
    fn empty(dim: usize) -> Self {
        Self {
            center: Vector::zeros(dim),
            radius_sq: -1.0,
        }
    }

    fn contains(&self, p: &Vector) -> bool {
        let d = (*p - self.center).norm_squared();
        d <= self.radius_sq * (1.0 + 1e-13) + 1e-28
    }
}

/// Sphere through `support` with center in their affine hull.
fn circumsphere(support: &[Vector], dim: usize) -> Sphere {
    match support.len() {
        0 => Sphere::empty(dim),
        1 => Sphere {
            center: support[0],
            radius_sq: 0.0,
        },
        k => {
            let p0 = support[0];
            let d: Vec<Vector> = support[1..].iter().map(|p| *p - p0).collect();
            let m = k - 1;
            let mut a = [[0.0f64; 4]; 3];
            for i in 0..m {
                for j in 0..m {
                    a[i][j] = d[i].dot(&d[j]);
                }
                a[i][m] = 0.5 * d[i].norm_squared();
            }
            match solve_small(&mut a, m) {
                Some(lambda) => {
                    let mut c = p0;
                    for i in 0..m {
                        c += d[i] * lambda[i];
                    }
                    let r2 = support.iter().map(|p| (*p - c).norm_squared()).fold(0.0, f64::max);
                    Sphere {
                        center: c,
                        radius_sq: r2,
                    }
                }
                None => {
                    // affinely dependent support: fall back to the widest pair
                    let mut best = (0, 0, -1.0);
                    for i in 0..k {
                        for j in i + 1..k {
                            let dd = (support[i] - support[j]).norm_squared();
                            if dd > best.2 {
                                best = (i, j, dd);
                            }
                        }
                    }
                    Sphere {
                        center: (support[best.0] + support[best.1]) * 0.5,
                        radius_sq: best.2 / 4.0,
                    }
                }
            }
        }
    }
}

/// Gaussian elimination with partial pivoting on an m×(m+1) augmented block.
fn solve_small(a: &mut [[f64; 4]; 3], m: usize) -> Option<[f64; 3]> {
    let scale = (0..m).map(|i| a[i][i].abs()).fold(0.0, f64::max);
    for col in 0..m {
        let piv = (col..m).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[piv][col].abs() <= 1e-14 * scale {
            return None;
        }
        a.swap(col, piv);
        for r in 0..m {
            if r != col {
                let f = a[r][col] / a[col][col];
                for c in col..=m {
                    a[r][c] -= f * a[col][c];
                }
            }
        }
    }
    let mut x = [0.0; 3];
    for i in 0..m {
        x[i] = a[i][m] / a[i][i];
    }
    Some(x)
}

struct Welzl {
    dim: usize,
    support: Vec<Vector>,
    best: Sphere,
    best_support: Vec<Vector>,
}

impl Welzl {
    fn run(&mut self, pts: &mut Vec<Vector>, end: usize) {
        self.best = circumsphere(&self.support, self.dim);
        self.best_support = self.support.clone();
        if self.support.len() == self.dim + 1 {
            return;
        }
        let mut i = 0;
        while i < end {
            if !self.best.contains(&pts[i]) {
                let p = pts[i];
                self.support.push(p);
                self.run(pts, i);
                self.support.pop();
                // move to front
                pts[..=i].rotate_right(1);
            }
            i += 1;
        }
    }
}

/// Minimum enclosing ball of a finite point set (deterministic for a given
/// shuffle seed). Support points form a Carathéodory certificate of size at
/// most `dim + 1`.
pub fn enclosing_ball(points: &[Vector], seed: u64) -> Circumball {
    assert!(!points.is_empty(), "enclosing ball of empty set");
    let dim = points[0].dim();
    let mut pts = points.to_vec();
    pts.shuffle(&mut SplitMix64::seed_from_u64(seed));
    let mut w = Welzl {
        dim,
        support: Vec::with_capacity(dim + 1),
        best: Sphere::empty(dim),
        best_support: Vec::new(),
    };
    let n = pts.len();
    w.run(&mut pts, n);
    let center = w.best.center;
    let radius = w.best.radius_sq.max(0.0).sqrt();
    let support_points = certificate(points, &center, radius).unwrap_or(w.best_support);
    Circumball {
        center,
        radius,
        support_points,
    }
}

/// Picks at most dim+1 points on the sphere whose hull contains the center.
fn certificate(points: &[Vector], center: &Vector, radius: f64) -> Option<Vec<Vector>> {
    let on_sphere: Vec<Vector> = points
        .iter()
        .filter(|p| p.dist(center) >= radius - GEOMETRY_TOL)
        .copied()
        .collect();
    if on_sphere.len() == 1 {
        return Some(on_sphere);
    }
    let rel: Vec<Vec<f64>> = on_sphere
        .iter()
        .map(|p| (*p - *center).as_slice().to_vec())
        .collect();
    let (lambda, _) = convex_combination(&rel, &vec![0.0; center.dim()]).ok()?;
    Some(
        on_sphere
            .iter()
            .zip(&lambda)
            .filter(|(_, &l)| l > 1e-12)
            .map(|(p, _)| *p)
            .collect(),
    )
}

/// Residual of the circumball certificate: ‖Σλ_i (p_i − c)/R‖_∞ for the best
/// convex weights, plus the largest distance of a support point from the
/// sphere. Both are ≤ 1e-9 for a valid certificate.
pub fn certificate_residual(ball: &Circumball) -> Result<(f64, f64)> {
    if ball.support_points.is_empty() {
        return Err(Error::NumericalFailure("empty circumball certificate".into()));
    }
    let rel: Vec<Vec<f64>> = ball
        .support_points
        .iter()
        .map(|p| ((*p - ball.center) * (1.0 / ball.radius)).as_slice().to_vec())
        .collect();
    let (_, residual) = convex_combination(&rel, &vec![0.0; ball.center.dim()])?;
    let sphere = ball
        .support_points
        .iter()
        .map(|p| (p.dist(&ball.center) - ball.radius).abs())
        .fold(0.0, f64::max);
    Ok((residual, sphere))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diamond() {
        let pts = [
            Vector::new2(1.0, 0.0),
            Vector::new2(-1.0, 0.0),
            Vector::new2(0.0, 1.0),
            Vector::new2(0.0, -1.0),
        ];
        let b = enclosing_ball(&pts, 0);
        assert!(b.center.norm() < 1e-15);
        assert!((b.radius - 1.0).abs() < 1e-15);
        let (res, sph) = certificate_residual(&b).unwrap();
        assert!(res < 1e-9 && sph < 1e-9);
        assert!(b.support_points.len() <= 3);
    }

    #[test]
    fn segment_midpoint() {
        let b = enclosing_ball(&[Vector::new2(0.0, 0.0), Vector::new2(2.0, 0.0)], 0);
        assert!(b.center.max_abs_diff(&Vector::new2(1.0, 0.0)) < 1e-15);
        assert!((b.radius - 1.0).abs() < 1e-15);
    }

    #[test]
    fn equilateral_triangle() {
        let s = 2.0;
        let pts = [
            Vector::new2(0.0, 0.0),
            Vector::new2(s, 0.0),
            Vector::new2(s / 2.0, s * 3f64.sqrt() / 2.0),
        ];
        let b = enclosing_ball(&pts, 0);
        assert!((b.radius - s / 3f64.sqrt()).abs() < 1e-14);
        assert_eq!(b.support_points.len(), 3);
    }

    #[test]
    fn obtuse_triangle_uses_long_edge() {
        let pts = [
            Vector::new2(0.0, 0.0),
            Vector::new2(4.0, 0.0),
            Vector::new2(2.0, 0.5),
        ];
        let b = enclosing_ball(&pts, 0);
        assert!((b.radius - 2.0).abs() < 1e-14);
        assert_eq!(b.support_points.len(), 2);
    }

    #[test]
    fn regular_tetrahedron() {
        let pts = [
            Vector::new3(1.0, 1.0, 1.0),
            Vector::new3(1.0, -1.0, -1.0),
            Vector::new3(-1.0, 1.0, -1.0),
            Vector::new3(-1.0, -1.0, 1.0),
        ];
        let b = enclosing_ball(&pts, 7);
        assert!((b.radius - 3f64.sqrt()).abs() < 1e-14);
        assert!(b.center.norm() < 1e-14);
    }

    #[test]
    fn rounded_inflates() {
        use crate::convex::body::Polytope;
        let core = Polytope::from_points(&[Vector::new2(-1.0, 0.0), Vector::new2(1.0, 0.0)]).unwrap();
        let b = circumball(&Body::rounded(core, 0.5).unwrap());
        assert!((b.radius - 1.5).abs() < 1e-15);
        let (res, sph) = certificate_residual(&b).unwrap();
        assert!(res < 1e-9 && sph < 1e-9);
    }
}
