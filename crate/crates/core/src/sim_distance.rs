//! Multiplicative Banach–Mazur-type distances d_G(K, L) = inf{α ≥ 1 :
//! K ⊆ φL ⊆ αK + z, φ ∈ G} for G = Dil⁺ (positive homotheties with
//! translations) and G = Sim(2).
//!
//! For a fixed linear part the containments are linear in (λ, u, α, z):
//! K ⊆ λL' + u iff h_K(a) <= λb + a·u for every facet row (a, b) of L', and
//! λL' + u ⊆ αK + z iff λh_{L'}(c) + c·u <= αd + c·z for every facet row
//! (c, d) of K. Both bodies are first moved to their unit circumball so the
//! LP is well scaled, and the witness is mapped back afterwards.

use std::f64::consts::TAU;

use serde::Serialize;

use crate::convex::body::{Body, HalfSpace, Polytope};
use crate::convex::circumball::circumball;
use crate::convex::functionals::inradius;
use crate::convex::similarity::Similarity;
use crate::convex::vector::{Orthogonal, Vector};
use crate::error::{Error, Result};
use crate::optim::lp::{lp_solve, LinearProgram, LpStatus};

pub const DEFAULT_ANGLE_TOL: f64 = 1e-2;
pub const WITNESS_TOL: f64 = 1e-8;
const LAMBDA_FLOOR: f64 = 1e-9;
const GOLDEN_TOL: f64 = 1e-10;
const REFINED_MINIMA: usize = 3;

/// A feasible point of the containment program: K ⊆ λσL + u ⊆ αK + z.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SimWitness {
    pub lambda: f64,
    pub sigma: Orthogonal,
    pub u: Vector,
    pub alpha: f64,
    pub z: Vector,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SimMode {
    /// Exact up to the LP solver.
    Certified { gap: f64 },
    /// Upper bound from an angle search with the given grid step.
    Heuristic { angle_step: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SimDistanceResult {
    pub value: f64,
    pub mode: SimMode,
    pub witness: SimWitness,
    /// Smallest α over the grid angles alone (before refinement).
    pub grid_value: f64,
    pub lp_solves: usize,
}

/// A planar polytope moved to its unit circumball, with its facet rows and
/// an inscribed disk (used to build a strictly feasible start).
#[derive(Debug, Clone)]
struct Prepared {
    verts: Vec<Vector>,
    rows: Vec<HalfSpace>,
    center: Vector,
    radius: f64,
    in_center: Vector,
    in_radius: f64,
}

impl Prepared {
    fn new(body: &Body) -> Result<Self> {
        let p = full_polygon(body)?;
        let cb = circumball(body);
        let inv = 1.0 / cb.radius;
        let verts: Vec<Vector> = p.vertices().iter().map(|v| (*v - cb.center) * inv).collect();
        let poly = Polytope::from_points(&verts)?;
        let rows = poly.halfspaces()?;
        let inc = inradius(&Body::from(poly))?;
        if !(inc.radius > 0.0) {
            return Err(Error::BadParameter(
                "containment distances need full-dimensional bodies".into(),
            ));
        }
        Ok(Self {
            verts,
            rows,
            center: cb.center,
            radius: cb.radius,
            in_center: inc.center,
            in_radius: inc.radius,
        })
    }

    fn support(&self, u: &Vector) -> f64 {
        self.verts.iter().map(|v| v.dot(u)).fold(f64::NEG_INFINITY, f64::max)
    }
}

fn full_polygon(body: &Body) -> Result<&Polytope> {
    if body.dim() != 2 {
        return Err(Error::UnsupportedDimension(body.dim()));
    }
    match body.as_polytope() {
        Some(p) if p.vertices().len() >= 3 => Ok(p),
        Some(_) => Err(Error::BadParameter(
            "containment distances need full-dimensional bodies".into(),
        )),
        None => Err(Error::BadParameter(
            "containment distances need polygon inputs".into(),
        )),
    }
}

/// Normalized-frame solution (λ', u', α, z').
#[derive(Debug, Clone, Copy)]
struct Slice {
    lambda: f64,
    u: Vector,
    alpha: f64,
    z: Vector,
}

/// Solves the containment LP for K̂ and σL̂ (both in their unit-circumball frame).
///
/// The LP is posed around a strictly feasible point x₀ so every row has a
/// positive right-hand side and no phase-1 search is needed: with disks
/// c_L + r_L·B ⊆ L̂ and c_K + r_K·B ⊆ K̂, λ₀ = 1.5/r_L and u₀ = −λ₀σc_L put
/// B(0, 1.5) inside λ₀σL̂ + u₀, and that image lies in B(0, ρ) with
/// ρ = λ₀(1 + |c_L|), so α₀ = 1.5ρ/r_K and z₀ = −α₀c_K finish the point.
fn solve_slice(k: &Prepared, l: &Prepared, sigma: &Orthogonal) -> Result<Slice> {
    let st = sigma.transpose();
    let lambda0 = 1.5 / l.in_radius;
    let u0 = -(sigma.apply(&l.in_center) * lambda0);
    let alpha0 = 1.5 * lambda0 * (1.0 + l.in_center.norm()) / k.in_radius;
    let z0 = -(k.in_center * alpha0);
    let x0 = [lambda0, u0.x(), u0.y(), alpha0, z0.x(), z0.y()];
    let mut lp = LinearProgram::new(vec![0.0, 0.0, 0.0, -1.0, 0.0, 0.0]);
    let mut push = |row: Vec<f64>, rhs: f64| {
        let at_x0: f64 = row.iter().zip(&x0).map(|(a, x)| a * x).sum();
        lp.constraint(row, rhs - at_x0);
    };
    for h in &l.rows {
        // rotation about the origin keeps the offset
        let a = sigma.apply(&h.normal);
        push(vec![-h.offset, -a.x(), -a.y(), 0.0, 0.0, 0.0], -k.support(&a));
    }
    for h in &k.rows {
        let c = h.normal;
        let hl = l.support(&st.apply(&c));
        push(vec![hl, c.x(), c.y(), -h.offset, -c.x(), -c.y()], 0.0);
    }
    push(vec![-1.0, 0.0, 0.0, 0.0, 0.0, 0.0], -LAMBDA_FLOOR);
    let sol = lp_solve(&lp)?;
    match sol.status {
        LpStatus::Optimal => {
            let x: Vec<f64> = sol.x.iter().zip(&x0).map(|(y, x)| x + y).collect();
            Ok(Slice {
                lambda: x[0],
                u: Vector::new2(x[1], x[2]),
                alpha: x[3],
                z: Vector::new2(x[4], x[5]),
            })
        }
        LpStatus::Infeasible => Err(Error::Infeasible),
        LpStatus::Unbounded => Err(Error::Unbounded),
    }
}

/// Maps a normalized-frame slice back to the original bodies.
fn to_witness(k: &Prepared, l: &Prepared, sigma: &Orthogonal, s: &Slice) -> SimWitness {
    let lambda = k.radius * s.lambda / l.radius;
    let u = -(sigma.apply(&l.center) * lambda) + s.u * k.radius + k.center;
    let z = s.z * k.radius + k.center - k.center * s.alpha;
    SimWitness {
        lambda,
        sigma: *sigma,
        u,
        alpha: s.alpha,
        z,
    }
}

/// Largest violation of K ⊆ λσL + u ⊆ αK + z, relative to K's circumradius.
/// Uses the vertex and edge descriptions directly, not the LP.
pub fn witness_violation(k: &Body, l: &Body, w: &SimWitness) -> Result<f64> {
    let kp = full_polygon(k)?;
    let lp = full_polygon(l)?;
    let g = Similarity::new(w.lambda, w.sigma, w.u)?;
    let image = g.apply(l)?;
    let image_poly = image.as_polytope().expect("image of a polygon");
    let scale = circumball(k).radius;
    let mut worst: f64 = 0.0;
    for h in image_poly.halfspaces()? {
        for v in kp.vertices() {
            worst = worst.max(-h.slack(v));
        }
    }
    let outer = Similarity::new(w.alpha, Orthogonal::identity(2), w.z)?.apply(k)?;
    let outer_rows = outer.as_polytope().expect("image of a polygon").halfspaces()?;
    debug_assert_eq!(image_poly.vertices().len(), lp.vertices().len());
    for h in &outer_rows {
        for v in image_poly.vertices() {
            worst = worst.max(-h.slack(v));
        }
    }
    Ok(worst / scale)
}

fn checked(k: &Body, l: &Body, w: SimWitness) -> Result<SimWitness> {
    let v = witness_violation(k, l, &w)?;
    if v > WITNESS_TOL {
        return Err(Error::NumericalFailure(format!(
            "containment witness violated by {v:e}"
        )));
    }
    Ok(w)
}

/// Fixed-rotation slice: the best (α, λ, u, z) with K ⊆ λσL + u ⊆ αK + z.
pub fn containment_lp(k: &Body, l: &Body, sigma: &Orthogonal) -> Result<SimWitness> {
    let (pk, pl) = (Prepared::new(k)?, Prepared::new(l)?);
    let s = solve_slice(&pk, &pl, sigma)?;
    checked(k, l, to_witness(&pk, &pl, sigma, &s))
}

/// d_Dil⁺(K, L): a single containment LP with σ = I.
pub fn d_dil(k: &Body, l: &Body) -> Result<SimDistanceResult> {
    let w = containment_lp(k, l, &Orthogonal::identity(2))?;
    Ok(SimDistanceResult {
        value: w.alpha,
        mode: SimMode::Certified { gap: 0.0 },
        witness: w,
        grid_value: w.alpha,
        lp_solves: 1,
    })
}

/// d_Sim(K, L): angle grid with step `angle_tol` on both O(2) components,
/// then golden-section refinement around the best grid minima. The value is
/// a sound upper bound (its witness is checked).
pub fn d_sim(k: &Body, l: &Body, angle_tol: f64) -> Result<SimDistanceResult> {
    if !(angle_tol > 0.0) || angle_tol > 1.0 {
        return Err(Error::BadParameter("angle_tol must be in (0, 1]".into()));
    }
    let (pk, pl) = (Prepared::new(k)?, Prepared::new(l)?);
    let n = (TAU / angle_tol).ceil() as usize;
    let step = TAU / n as f64;
    let mut lp_solves = 0usize;
    let mut best: Option<(f64, Orthogonal, Slice)> = None;
    let mut grid_value = f64::INFINITY;
    for tail in [Orthogonal::identity(2), Orthogonal::reflection(2)] {
        let sigma_at = |theta: f64| Orthogonal::rotation2(theta).compose(&tail);
        let mut alphas = Vec::with_capacity(n);
        for i in 0..n {
            let s = solve_slice(&pk, &pl, &sigma_at(i as f64 * step))?;
            lp_solves += 1;
            alphas.push(s.alpha);
            consider(&mut best, s, sigma_at(i as f64 * step));
        }
        grid_value = grid_value.min(alphas.iter().copied().fold(f64::INFINITY, f64::min));
        for i in local_minima(&alphas, REFINED_MINIMA) {
            let centre = i as f64 * step;
            let mut f = |theta: f64| -> Result<f64> {
                let s = solve_slice(&pk, &pl, &sigma_at(theta))?;
                lp_solves += 1;
                consider(&mut best, s, sigma_at(theta));
                Ok(s.alpha)
            };
            golden_section(&mut f, centre - step, centre + step, GOLDEN_TOL)?;
        }
    }
    let (_, sigma, s) = best.expect("grid is nonempty");
    let w = checked(k, l, to_witness(&pk, &pl, &sigma, &s))?;
    Ok(SimDistanceResult {
        value: w.alpha,
        mode: SimMode::Heuristic { angle_step: step },
        witness: w,
        grid_value,
        lp_solves,
    })
}

fn consider(best: &mut Option<(f64, Orthogonal, Slice)>, s: Slice, sigma: Orthogonal) {
    if best.as_ref().is_none_or(|b| s.alpha < b.0) {
        *best = Some((s.alpha, sigma, s));
    }
}

/// Indices of the `count` lowest cyclic local minima.
fn local_minima(v: &[f64], count: usize) -> Vec<usize> {
    let n = v.len();
    let mut idx: Vec<usize> = (0..n)
        .filter(|&i| v[i] <= v[(i + n - 1) % n] && v[i] <= v[(i + 1) % n])
        .collect();
    idx.sort_by(|&a, &b| v[a].total_cmp(&v[b]).then(a.cmp(&b)));
    idx.truncate(count);
    idx
}

fn golden_section<F: FnMut(f64) -> Result<f64>>(f: &mut F, mut a: f64, mut b: f64, tol: f64) -> Result<()> {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - r * (b - a);
    let mut x2 = a + r * (b - a);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    while b - a > tol {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - r * (b - a);
            f1 = f(x1)?;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + r * (b - a);
            f2 = f(x2)?;
        }
    }
    Ok(())
}

/// ρ_G = ln d_G, the additive form of the multiplicative distance.
pub fn rho_g(d: &SimDistanceResult) -> f64 {
    debug_assert!(d.value >= 1.0 - 1e-9);
    d.value.ln()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convex::generators::{make_random_body, make_segment};

    fn square(half: f64) -> Body {
        Body::polytope(&[
            Vector::new2(-half, -half),
            Vector::new2(half, -half),
            Vector::new2(half, half),
            Vector::new2(-half, half),
        ])
        .unwrap()
    }

    fn diamond() -> Body {
        let s = 2f64.sqrt();
        Body::polytope(&[
            Vector::new2(s, 0.0),
            Vector::new2(0.0, s),
            Vector::new2(-s, 0.0),
            Vector::new2(0.0, -s),
        ])
        .unwrap()
    }

    #[test]
    fn identical_bodies() {
        let k = make_random_body(3, 10).unwrap();
        let w = containment_lp(&k, &k, &Orthogonal::identity(2)).unwrap();
        assert!((w.alpha - 1.0).abs() < 1e-9);
        assert!((w.lambda - 1.0).abs() < 1e-9);
    }

    #[test]
    fn scaled_square() {
        let r = d_dil(&square(1.0), &square(3.0)).unwrap();
        assert!((r.value - 1.0).abs() < 1e-9);
        assert!((r.witness.lambda - 1.0 / 3.0).abs() < 1e-9);
    }

    #[test]
    fn square_vs_rotated_square() {
        let r = d_dil(&square(1.0), &diamond()).unwrap();
        assert!((r.value - 2.0).abs() < 1e-8, "{}", r.value);
        assert!(witness_violation(&square(1.0), &diamond(), &r.witness).unwrap() <= WITNESS_TOL);
    }

    #[test]
    fn sim_recovers_rotation() {
        let r = d_sim(&square(1.0), &diamond(), DEFAULT_ANGLE_TOL).unwrap();
        assert!((r.value - 1.0).abs() < 1e-6, "{}", r.value);
        assert!((rho_g(&r)).abs() < 1e-6);
    }

    #[test]
    fn sim_of_similar_copy() {
        let k = make_random_body(11, 9).unwrap();
        let g = Similarity::new(0.3, Orthogonal::rotation2(1.234).compose(&Orthogonal::reflection(2)), Vector::new2(5.0, 2.0))
            .unwrap();
        let r = d_sim(&k, &g.apply(&k).unwrap(), DEFAULT_ANGLE_TOL).unwrap();
        assert!((r.value - 1.0).abs() < 1e-6, "{}", r.value);
    }

    #[test]
    fn sim_below_dil() {
        for s in 0..5u64 {
            let k = make_random_body(s, 8).unwrap();
            let l = make_random_body(s + 50, 8).unwrap();
            let ds = d_sim(&k, &l, 0.05).unwrap();
            let dd = d_dil(&k, &l).unwrap();
            assert!(ds.value <= dd.value + 1e-8);
            assert!(ds.value >= 1.0);
        }
    }

    #[test]
    fn segment_rejected() {
        assert!(matches!(d_dil(&make_segment(), &square(1.0)), Err(Error::BadParameter(_))));
    }

    #[test]
    fn rho_of_e_is_one() {
        let mut r = d_dil(&square(1.0), &square(1.0)).unwrap();
        r.value = std::f64::consts::E;
        assert!((rho_g(&r) - 1.0).abs() < 1e-15);
    }
}
