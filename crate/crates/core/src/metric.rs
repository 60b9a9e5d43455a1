//! The similarity-invariant pseudometric ⊙(K, L) = min over g ∈ O(n) of
//! d_H(ϱK, g·ϱL).
//!
//! Both normalized bodies sit in the unit ball, so rotating one of them by an
//! angle δ moves every support value by at most δ and the Hausdorff profile is
//! 1-Lipschitz in the rotation angle. In the plane each O(2) component is a
//! circle of angles and Piyavskii–Shubert certifies the minimum; in space the
//! SO(3) covering search does.

use std::f64::consts::TAU;

use serde::Serialize;

use crate::convex::body::Body;
use crate::convex::normalize::{normalize, NormalizedBody};
use crate::convex::similarity::Similarity;
use crate::convex::vector::Orthogonal;
use crate::error::{Error, Result};
use crate::hausdorff::{hausdorff_bounds_with, hausdorff_fans, sphere_cover, Fan};
use crate::optim::lipschitz::{default_budget, lipschitz_minimize_1d};
use crate::optim::so3::{so3_cover_minimize_bracketed, So3Options};
use crate::optim::CertifiedMinimum;

pub const DEFAULT_TOL: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricOptions {
    /// Target optimality gap for the planar search.
    pub tol: f64,
    /// Evaluation cap per O(2) component; `None` picks twice the worst case.
    pub max_evals: Option<usize>,
    /// Rotation search settings in space.
    pub so3: So3Options,
    /// Subdivision level of the direction cover for spatial Hausdorff bounds.
    pub sphere_level: usize,
}

impl Default for MetricOptions {
    fn default() -> Self {
        Self {
            tol: DEFAULT_TOL,
            max_evals: None,
            so3: So3Options::default(),
            sphere_level: 3,
        }
    }
}

impl MetricOptions {
    pub fn with_tol(tol: f64) -> Self {
        Self {
            tol,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct OrbitMetricResult {
    /// Attained d_H at `optimal_g`; an upper bound on ⊙ of the inputs as given.
    pub value: f64,
    /// Optimization gap: ⊙ of the inputs as given is at least `value − gap`.
    pub gap: f64,
    /// Summed Hausdorff error of the inputs against the bodies they stand for.
    pub approx_error: f64,
    pub optimal_g: Orthogonal,
    pub evaluations: usize,
    pub converged: bool,
    #[serde(skip)]
    pub inputs_normalized: (NormalizedBody, NormalizedBody),
}

impl OrbitMetricResult {
    /// Certified lower end for the represented bodies.
    pub fn lower(&self) -> f64 {
        (self.value - self.gap - self.approx_error).max(0.0)
    }

    /// Certified upper end for the represented bodies.
    pub fn upper(&self) -> f64 {
        self.value + self.approx_error
    }
}

/// ⊙(K, L): normalizes both bodies, then minimizes over O(n).
pub fn pseudometric(k: &Body, l: &Body, opts: &MetricOptions) -> Result<OrbitMetricResult> {
    if k.dim() != l.dim() {
        return Err(Error::DimensionMismatch(k.dim(), l.dim()));
    }
    let (a, _) = normalize(k)?;
    let (b, _) = normalize(l)?;
    orbit_distance_normalized(&a, &b, opts)
}

/// min over g ∈ O(n) of d_H(A, gB) for already normalized inputs.
pub fn orbit_distance_normalized(
    a: &NormalizedBody,
    b: &NormalizedBody,
    opts: &MetricOptions,
) -> Result<OrbitMetricResult> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch(a.dim(), b.dim()));
    }
    if !(opts.tol > 0.0) {
        return Err(Error::BadParameter("tol must be positive".into()));
    }
    let (ka, kb) = (a.body(), b.body());
    let reflection = Orthogonal::reflection(a.dim());
    let (best, other, evaluations) = match a.dim() {
        2 => {
            let lip = ka.support_lipschitz().max(kb.support_lipschitz()).max(1e-12);
            let budget = opts.max_evals.unwrap_or_else(|| default_budget(0.0, TAU, lip, opts.tol));
            let fa = Fan::new(ka)?;
            let reflected = Similarity::from_orthogonal(reflection).apply(kb)?;
            let mut runs = Vec::with_capacity(2);
            for (fb, tail) in [(Fan::new(kb)?, None), (Fan::new(&reflected)?, Some(reflection))] {
                let mut scratch = Fan::default();
                let m = lipschitz_minimize_1d(
                    |theta| {
                        fb.rotate_into(theta, &mut scratch);
                        hausdorff_fans(&fa, &scratch).0
                    },
                    0.0,
                    TAU,
                    lip,
                    opts.tol,
                    budget,
                )?;
                let rot = Orthogonal::rotation2(m.argmin);
                let g = match tail {
                    Some(s) => rot.compose(&s),
                    None => rot,
                };
                runs.push(CertifiedMinimum {
                    argmin: g,
                    value: m.value,
                    gap: m.gap,
                    evaluations: m.evaluations,
                    converged: m.converged,
                });
            }
            merge(runs)
        }
        3 => {
            let cover = sphere_cover(opts.sphere_level);
            let mut runs = Vec::with_capacity(2);
            for tail in [Orthogonal::identity(3), reflection] {
                let mut failure = None;
                let m = so3_cover_minimize_bracketed(
                    |r| {
                        let g = r.compose(&tail);
                        match hausdorff_bounds_with(ka, kb, Some(&g), cover) {
                            Ok(h) => (h.lower, h.upper),
                            Err(e) => {
                                failure = Some(e);
                                (f64::NAN, f64::NAN)
                            }
                        }
                    },
                    &opts.so3,
                );
                if let Some(e) = failure {
                    return Err(e);
                }
                let m = m?;
                runs.push(CertifiedMinimum {
                    argmin: m.argmin.compose(&tail),
                    ..m
                });
            }
            merge(runs)
        }
        d => return Err(Error::UnsupportedDimension(d)),
    };
    let lower = best.lower().min(other.lower());
    Ok(OrbitMetricResult {
        value: best.value,
        gap: (best.value - lower).max(0.0),
        approx_error: ka.approx_error() + kb.approx_error(),
        optimal_g: best.argmin,
        evaluations,
        converged: best.converged && other.converged,
        inputs_normalized: (a.clone(), b.clone()),
    })
}

/// Picks the smaller value; ties keep the rotation component.
fn merge(
    mut runs: Vec<CertifiedMinimum<Orthogonal>>,
) -> (CertifiedMinimum<Orthogonal>, CertifiedMinimum<Orthogonal>, usize) {
    let evaluations = runs.iter().map(|r| r.evaluations).sum();
    let second = runs.pop().expect("two components");
    let first = runs.pop().expect("two components");
    if second.value < first.value {
        (second, first, evaluations)
    } else {
        (first, second, evaluations)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convex::generators::{
        make_ball_polygon, make_cap, make_random_body, make_regular_simplex, make_reuleaux_triangle, make_segment,
    };
    use crate::convex::vector::Vector;
    use crate::hausdorff::hausdorff_2d_exact;

    #[test]
    fn same_body_is_zero() {
        let k = make_random_body(3, 10).unwrap();
        let r = pseudometric(&k, &k, &MetricOptions::default()).unwrap();
        assert!(r.value <= 1e-4);
        assert!(r.converged);
    }

    #[test]
    fn similar_copy_is_zero() {
        let k = make_random_body(4, 12).unwrap();
        let g = Similarity::new(3.5, Orthogonal::rotation2(2.1).compose(&Orthogonal::reflection(2)), Vector::new2(4.0, -1.0))
            .unwrap();
        let gk = g.apply(&k).unwrap();
        let r = pseudometric(&k, &gk, &MetricOptions::default()).unwrap();
        assert!(r.value <= 1e-4, "{}", r.value);
        assert!(r.optimal_g.det() < 0.0);
    }

    #[test]
    fn segment_vs_ball() {
        let r = pseudometric(&make_segment(), &make_ball_polygon(64).unwrap(), &MetricOptions::default()).unwrap();
        // the 64-gon sits up to 1 − cos(π/64) inside the ball
        assert!(r.lower() <= 1.0 && 1.0 <= r.upper() + 1e-12);
        assert!((r.value - (std::f64::consts::PI / 64.0).cos()).abs() < 1e-4);
    }

    #[test]
    fn cap_vs_ball() {
        let cap = make_cap(Vector::new2(0.5, 0.0), 128).unwrap();
        let ball = Body::ball(Vector::zeros(2), 1.0).unwrap();
        let r = pseudometric(&cap, &ball, &MetricOptions::default()).unwrap();
        assert!((r.value - 0.5).abs() < 1e-3);
    }

    #[test]
    fn triangle_vs_reuleaux() {
        let t = make_regular_simplex(2, 1.0).unwrap();
        let rt = make_reuleaux_triangle(96).unwrap();
        let r = pseudometric(&t, &rt, &MetricOptions::default()).unwrap();
        let target = 3f64.sqrt() - 1.5;
        assert!(r.lower() - 1e-12 <= target && target <= r.upper() + 1e-12, "{r:?}");
    }

    #[test]
    fn value_is_attained_by_witness() {
        let a = make_random_body(8, 9).unwrap();
        let b = make_random_body(9, 9).unwrap();
        let r = pseudometric(&a, &b, &MetricOptions::default()).unwrap();
        let gb = Similarity::from_orthogonal(r.optimal_g).apply(r.inputs_normalized.1.body()).unwrap();
        let d = hausdorff_2d_exact(r.inputs_normalized.0.body(), &gb).unwrap().upper;
        assert!((d - r.value).abs() < 1e-12);
        assert!(r.gap <= 1e-4);
    }

    #[test]
    fn dimension_mismatch() {
        let a = make_segment();
        let b = Body::ball(Vector::zeros(3), 1.0).unwrap();
        assert_eq!(pseudometric(&a, &b, &MetricOptions::default()).unwrap_err(), Error::DimensionMismatch(2, 3));
    }

    #[test]
    fn spatial_rotated_copy() {
        let t = make_regular_simplex(3, 1.0).unwrap();
        let g = Orthogonal::from_quaternion([0.9, 0.2, -0.3, 0.1]);
        let gt = Similarity::from_orthogonal(g).apply(&t).unwrap();
        let opts = MetricOptions {
            so3: So3Options { delta: 0.5, local_tol: 1e-3, ..Default::default() },
            sphere_level: 2,
            ..Default::default()
        };
        let r = pseudometric(&t, &gt, &opts).unwrap();
        assert!(r.lower() <= 0.0 + 1e-15);
        let slack = 2.0 * crate::hausdorff::sphere_cover(2).covering_radius;
        assert!(r.value <= 0.5 + slack, "{}", r.value);
    }
}
