//! Covering search over SO(3).
//!
//! The grid is a cubed hypersphere: unit quaternions are split into four cells
//! by their dominant component (q and −q are the same rotation, so that
//! component is taken positive), and each cell is the gnomonic image of a
//! k×k×k grid of cell centers in [−1, 1]³. Tangent-space neighbours are at most
//! √3/k apart, gnomonic projection from the tangent space at distance 1 does
//! not increase lengths, and the rotation angle is twice the quaternion
//! angle, so every rotation is within 2√3/k of a grid rotation.

use crate::convex::vector::Orthogonal;
use crate::error::{Error, Result};
use crate::optim::CertifiedMinimum;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct So3Options {
    /// Target covering radius (rotation angle, radians).
    pub delta: f64,
    /// Coordinate-descent step at which refinement stops.
    pub local_tol: f64,
    /// Evaluation cap; the grid is coarsened to fit.
    pub max_evals: usize,
}

impl Default for So3Options {
    fn default() -> Self {
        Self {
            delta: 0.25,
            local_tol: 1e-4,
            max_evals: 2_000_000,
        }
    }
}

/// Points per axis needed for covering radius `delta`.
pub fn cells_per_axis(delta: f64) -> usize {
    (2.0 * 3f64.sqrt() / delta).ceil().max(1.0) as usize
}

/// Covering radius guaranteed by `k` points per axis.
pub fn covering_radius(k: usize) -> f64 {
    2.0 * 3f64.sqrt() / k as f64
}

/// The 4k³ grid quaternions `[w, x, y, z]`, normalized, in a fixed order.
pub fn quaternion_grid(k: usize) -> Vec<[f64; 4]> {
    let coords: Vec<f64> = (0..k).map(|i| -1.0 + (2 * i + 1) as f64 / k as f64).collect();
    let mut out = Vec::with_capacity(4 * k * k * k);
    for cell in 0..4 {
        for &a in &coords {
            for &b in &coords {
                for &c in &coords {
                    let mut t = [0.0; 4];
                    let mut rest = [a, b, c].into_iter();
                    for (axis, slot) in t.iter_mut().enumerate() {
                        *slot = if axis == cell { 1.0 } else { rest.next().unwrap() };
                    }
                    let n = t.iter().map(|v| v * v).sum::<f64>().sqrt();
                    out.push(t.map(|v| v / n));
                }
            }
        }
    }
    out
}

fn axis_rotation(axis: usize, angle: f64) -> Orthogonal {
    let (s, c) = (0.5 * angle).sin_cos();
    let mut q = [c, 0.0, 0.0, 0.0];
    q[axis + 1] = s;
    Orthogonal::from_quaternion(q)
}

/// Minimizes a function on SO(3) that is 1-Lipschitz in the rotation angle
/// distance. `f` returns an enclosure `(lo, hi)` of the true value, so it can
/// be an inexact evaluation. The returned value is the smallest `hi` seen and
/// the global minimum is at least `min_grid(lo) − covering radius`.
pub fn so3_cover_minimize_bracketed<F>(mut f: F, opts: &So3Options) -> Result<CertifiedMinimum<Orthogonal>>
where
    F: FnMut(&Orthogonal) -> (f64, f64),
{
    if !(opts.delta > 0.0) || !(opts.local_tol > 0.0) {
        return Err(Error::BadParameter("delta and local_tol must be positive".into()));
    }
    let mut k = cells_per_axis(opts.delta);
    let mut converged = true;
    while 4 * k * k * k > opts.max_evals && k > 1 {
        k -= 1;
        converged = false;
    }
    let delta = covering_radius(k);
    let mut evaluations = 0usize;
    let mut eval = |r: &Orthogonal| -> Result<(f64, f64)> {
        let (lo, hi) = f(r);
        if lo.is_nan() || hi.is_nan() {
            return Err(Error::NumericalFailure("objective is NaN on SO(3)".into()));
        }
        Ok((lo, hi))
    };

    let mut grid_lower = f64::INFINITY;
    let mut best = f64::INFINITY;
    let mut best_r = Orthogonal::identity(3);
    for q in quaternion_grid(k) {
        let r = Orthogonal::from_quaternion(q);
        let (lo, hi) = eval(&r)?;
        evaluations += 1;
        grid_lower = grid_lower.min(lo);
        if hi < best {
            best = hi;
            best_r = r;
        }
    }

    let mut step = delta;
    while step >= opts.local_tol && evaluations < opts.max_evals {
        let mut improved = false;
        for axis in 0..3 {
            for sign in [1.0, -1.0] {
                let cand = best_r.compose(&axis_rotation(axis, sign * step));
                let (_, hi) = eval(&cand)?;
                evaluations += 1;
                if hi < best {
                    best = hi;
                    best_r = cand;
                    improved = true;
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }

    let lower = grid_lower - delta;
    Ok(CertifiedMinimum {
        argmin: best_r,
        value: best,
        gap: (best - lower).max(0.0),
        evaluations,
        converged,
    })
}

/// [`so3_cover_minimize_bracketed`] for exactly evaluated objectives.
pub fn so3_cover_minimize<F>(mut f: F, opts: &So3Options) -> Result<CertifiedMinimum<Orthogonal>>
where
    F: FnMut(&Orthogonal) -> f64,
{
    so3_cover_minimize_bracketed(
        |r| {
            let v = f(r);
            (v, v)
        },
        opts,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_xoshiro::SplitMix64;

    fn quat_angle(a: &[f64; 4], b: &[f64; 4]) -> f64 {
        let d: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
        2.0 * d.abs().min(1.0).acos()
    }

    #[test]
    fn grid_size_and_unit_norm() {
        let g = quaternion_grid(5);
        assert_eq!(g.len(), 500);
        for q in &g {
            let n: f64 = q.iter().map(|v| v * v).sum();
            assert!((n - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn covering_radius_holds_on_random_rotations() {
        let k = 6;
        let g = quaternion_grid(k);
        let mut rng = SplitMix64::seed_from_u64(3);
        let mut worst: f64 = 0.0;
        for _ in 0..2000 {
            let q: [f64; 4] = std::array::from_fn(|_| rng.random::<f64>() * 2.0 - 1.0);
            let n = q.iter().map(|v| v * v).sum::<f64>().sqrt();
            let q = q.map(|v| v / n);
            let d = g.iter().map(|p| quat_angle(p, &q)).fold(f64::INFINITY, f64::min);
            worst = worst.max(d);
        }
        assert!(worst <= covering_radius(k), "{worst} > {}", covering_radius(k));
    }

    #[test]
    fn constant_objective_is_exact() {
        let m = so3_cover_minimize(|_| 0.7, &So3Options { delta: 1.0, ..Default::default() }).unwrap();
        assert_eq!(m.value, 0.7);
        assert!(m.gap <= covering_radius(cells_per_axis(1.0)) + 1e-15);
    }

    #[test]
    fn distance_to_identity() {
        let delta = 0.3;
        let m = so3_cover_minimize(|r| r.rotation_angle(), &So3Options { delta, ..Default::default() }).unwrap();
        assert!(m.value <= delta);
        assert!(m.lower() <= 0.0);
        assert!(m.converged);
    }

    #[test]
    fn budget_coarsens_grid() {
        let opts = So3Options { delta: 0.05, local_tol: 1e-2, max_evals: 1000 };
        let m = so3_cover_minimize(|r| r.rotation_angle(), &opts).unwrap();
        assert!(!m.converged);
        assert!(m.lower() <= 0.0);
    }
}
