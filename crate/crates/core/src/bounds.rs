//! Closed-form upper bounds on ⊙ in terms of the radii functionals of the
//! normalized bodies, and a checker that runs all of them against a
//! certified ⊙ interval.

use serde::Serialize;

use crate::convex::body::Body;
use crate::convex::circumball::circumball;
use crate::convex::functionals::{diameter, inradius, width_2d};
use crate::convex::normalize::normalize;
use crate::error::{Error, Result};
use crate::metric::{orbit_distance_normalized, MetricOptions, OrbitMetricResult};
use crate::tolerance::GEOMETRY_TOL;

/// Slack on functional values when comparing against a bound.
pub const FUNCTIONAL_TOL: f64 = 1e-9;
/// How close D must be to the Jung constant for a body to count as extremal.
pub const JUNG_EXTREMAL_TOL: f64 = 1e-6;
const DIAMETER_GATE_SLACK: f64 = 1e-12;

/// Radii functionals of ϱ(K). `circumradius` is 1 by construction; the
/// original circumradius and inradius are kept for the R/r ratio.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FunctionalProfile {
    pub dim: usize,
    /// None when the body has no facet description (3D point clouds).
    pub inradius: Option<f64>,
    pub circumradius: f64,
    pub diameter: f64,
    /// Minimal width, planar bodies only.
    pub width: Option<f64>,
    pub original_circumradius: f64,
    pub approx_error: f64,
}

impl FunctionalProfile {
    pub fn new(body: &Body) -> Result<Self> {
        let original_circumradius = circumball(body).radius;
        let (nb, _) = normalize(body)?;
        let b = nb.body();
        let inradius = match inradius(b) {
            Ok(inc) => Some(inc.radius),
            Err(Error::MissingHRep) => None,
            Err(e) => return Err(e),
        };
        let width = if b.dim() == 2 { Some(width_2d(b)?) } else { None };
        Ok(Self {
            dim: b.dim(),
            inradius,
            circumradius: circumball(b).radius,
            diameter: diameter(b),
            width,
            original_circumradius,
            approx_error: b.approx_error(),
        })
    }

    /// The diagram point f(K) = (r(ϱK), D(ϱK)).
    pub fn diagram_point(&self) -> Option<(f64, f64)> {
        self.inradius.map(|r| (r, self.diameter))
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.inradius.is_some_and(|r| r > GEOMETRY_TOL)
    }

    /// Inradius when the body is full-dimensional.
    fn r(&self) -> Option<f64> {
        self.inradius.filter(|r| *r > GEOMETRY_TOL)
    }

    /// √(2(n+1)/n)·R ≤ D·(1 + 1e-9).
    pub fn jung_holds(&self) -> bool {
        jung_constant(self.dim) * self.circumradius <= self.diameter * (1.0 + 1e-9)
    }

    pub fn is_jung_extremal(&self) -> bool {
        (self.diameter - jung_constant(self.dim) * self.circumradius).abs() <= JUNG_EXTREMAL_TOL
    }
}

/// Smallest possible D/R in dimension n: √(2(n+1)/n).
pub fn jung_constant(n: usize) -> f64 {
    let n = n as f64;
    (2.0 * (n + 1.0) / n).sqrt()
}

pub fn bound_trivial() -> f64 {
    1.0
}

pub fn bound_inradius_simple(pk: &FunctionalProfile, pl: &FunctionalProfile) -> Option<f64> {
    let (rk, rl) = (pk.r()?, pl.r()?);
    Some(2.0 * (1.0 - rk).max(1.0 - rl))
}

fn diameter_expr(d: f64, n: usize) -> f64 {
    let n = n as f64;
    1.0 - (1.0 - (n - 1.0) / (2.0 * n) * d * d).max(0.0).sqrt()
}

/// Applicable only when both diameters are below √(2n/(n−1)).
pub fn bound_diameter(pk: &FunctionalProfile, pl: &FunctionalProfile) -> Option<f64> {
    let n = pk.dim;
    let gate = (2.0 * n as f64 / (n as f64 - 1.0)).sqrt() - DIAMETER_GATE_SLACK;
    if pk.diameter < gate && pl.diameter < gate {
        Some(diameter_expr(pk.diameter, n).max(diameter_expr(pl.diameter, n)))
    } else {
        None
    }
}

pub fn bound_jung_extremal(n: usize) -> f64 {
    jung_constant(n) - 1.0 / n as f64 - 1.0
}

fn refined_expr(rk: f64, rl: f64) -> f64 {
    ((1.0 - rl + rk).powi(2) + 1.0 - rk * rk).sqrt() - rl
}

fn refined_sym(rk: f64, rl: f64) -> f64 {
    refined_expr(rk, rl).max(refined_expr(rl, rk))
}

pub fn bound_inradius_refined(pk: &FunctionalProfile, pl: &FunctionalProfile) -> Option<f64> {
    Some(refined_sym(pk.r()?, pl.r()?))
}

/// Bound in terms of diagram points p = f(K), q = f(L). The diameter branch
/// only enters when both diameters are at most √(n/(2(n−1))).
pub fn bound_diagram(p: (f64, f64), q: (f64, f64), n: usize) -> Result<f64> {
    let slack = FUNCTIONAL_TOL;
    for (r, d) in [p, q] {
        if !(-slack..=1.0 + slack).contains(&r) || !(-slack..=2.0 + slack).contains(&d) {
            return Err(Error::BadParameter(format!("diagram point ({r}, {d}) outside [0,1]x[0,2]")));
        }
    }
    let refined = refined_sym(p.0, q.0);
    let nf = n as f64;
    let threshold = (nf / (2.0 * (nf - 1.0))).sqrt();
    if p.1 <= threshold && q.1 <= threshold {
        Ok(refined.min(diameter_expr(p.1, n).max(diameter_expr(q.1, n))))
    } else {
        Ok(refined)
    }
}

/// Bound for two bodies whose normalized inradii are both at least 1 − ε.
pub fn bound_ball_stability(eps: f64) -> Result<f64> {
    if !(eps >= 0.0) {
        return Err(Error::BadParameter("epsilon must be nonnegative".into()));
    }
    Ok((1.0 + 4.0 * eps).sqrt() + eps - 1.0)
}

/// Interval for d_Sim from a ⊙ interval: (⊙₋ + 1, (1 + ⊙₊R_K/r_K)(1 + ⊙₊R_L/r_L)).
/// Ratios are read off the normalized profiles (R = 1).
pub fn sim_sandwich(
    metric: (f64, f64),
    pk: &FunctionalProfile,
    pl: &FunctionalProfile,
) -> Option<(f64, f64)> {
    let (rk, rl) = (pk.r()?, pl.r()?);
    let (lo, hi) = metric;
    Some((
        lo + 1.0,
        (1.0 + pk.circumradius / rk * hi) * (1.0 + pl.circumradius / rl * hi),
    ))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundEntry {
    pub bound_name: &'static str,
    pub applicable: bool,
    pub bound: Option<f64>,
    pub metric_lower: f64,
    pub metric_upper: f64,
    /// bound − ⊙ upper end.
    pub slack: Option<f64>,
    /// None for inapplicable bounds.
    pub pass: Option<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct JungCheck {
    pub ratio: f64,
    pub holds: bool,
    pub extremal: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    pub metric: OrbitMetricResult,
    pub metric_lower: f64,
    pub metric_upper: f64,
    /// Slack added to every bound before comparing.
    pub tolerance: f64,
    pub profiles: (FunctionalProfile, FunctionalProfile),
    pub jung: (JungCheck, JungCheck),
    pub entries: Vec<BoundEntry>,
}

impl BoundReport {
    /// All applicable bounds pass and Jung's inequality holds for both bodies.
    pub fn all_pass(&self) -> bool {
        self.jung.0.holds && self.jung.1.holds && self.entries.iter().all(|e| e.pass != Some(false))
    }

    pub fn failures(&self) -> impl Iterator<Item = &BoundEntry> {
        self.entries.iter().filter(|e| e.pass == Some(false))
    }

    pub fn entry(&self, name: &str) -> Option<&BoundEntry> {
        self.entries.iter().find(|e| e.bound_name == name)
    }
}

fn jung_check(p: &FunctionalProfile) -> JungCheck {
    JungCheck {
        ratio: p.diameter / p.circumradius,
        holds: p.jung_holds(),
        extremal: p.is_jung_extremal(),
    }
}

/// Computes ⊙(K, L) and evaluates every bound against it.
pub fn check_all(k: &Body, l: &Body, opts: &MetricOptions) -> Result<BoundReport> {
    if k.dim() != l.dim() {
        return Err(Error::DimensionMismatch(k.dim(), l.dim()));
    }
    let pk = FunctionalProfile::new(k)?;
    let pl = FunctionalProfile::new(l)?;
    let (a, _) = normalize(k)?;
    let (b, _) = normalize(l)?;
    let metric = orbit_distance_normalized(&a, &b, opts)?;
    let n = pk.dim;
    let (lo, hi) = (metric.lower(), metric.upper());
    let tolerance = FUNCTIONAL_TOL + pk.approx_error + pl.approx_error;

    let jung_ok = pk.is_jung_extremal() && pl.is_jung_extremal();
    let eps = match (pk.r(), pl.r()) {
        (Some(rk), Some(rl)) => Some(1.0 - rk.min(rl)),
        _ => None,
    };
    let diagram = match (pk.diagram_point(), pl.diagram_point()) {
        (Some(p), Some(q)) if pk.is_full_dimensional() && pl.is_full_dimensional() => {
            Some(bound_diagram(p, q, n)?)
        }
        _ => None,
    };
    let candidates: [(&'static str, Option<f64>); 7] = [
        ("trivial", Some(bound_trivial())),
        ("inradius_simple", bound_inradius_simple(&pk, &pl)),
        ("diameter", bound_diameter(&pk, &pl)),
        ("jung_extremal", jung_ok.then(|| bound_jung_extremal(n))),
        ("inradius_refined", bound_inradius_refined(&pk, &pl)),
        ("diagram", diagram),
        ("ball_stability", eps.map(bound_ball_stability).transpose()?),
    ];
    let entries = candidates
        .into_iter()
        .map(|(name, bound)| BoundEntry {
            bound_name: name,
            applicable: bound.is_some(),
            bound,
            metric_lower: lo,
            metric_upper: hi,
            slack: bound.map(|b| b - hi),
            pass: bound.map(|b| lo <= b + tolerance),
        })
        .collect();
    Ok(BoundReport {
        metric_lower: lo,
        metric_upper: hi,
        tolerance,
        jung: (jung_check(&pk), jung_check(&pl)),
        profiles: (pk, pl),
        entries,
        metric,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convex::generators::{
        make_apex_over_chord, make_ball_polygon, make_cap, make_random_body, make_refined_pair,
        make_regular_simplex, make_reuleaux_triangle,
    };
    use crate::convex::vector::Vector;
    use crate::metric::pseudometric;

    fn profile(r: f64, d: f64) -> FunctionalProfile {
        FunctionalProfile {
            dim: 2,
            inradius: Some(r),
            circumradius: 1.0,
            diameter: d,
            width: None,
            original_circumradius: 1.0,
            approx_error: 0.0,
        }
    }

    #[test]
    fn closed_forms() {
        assert_eq!(bound_trivial(), 1.0);
        assert!((bound_jung_extremal(2) - (3f64.sqrt() - 1.5)).abs() < 1e-15);
        assert_eq!(bound_ball_stability(0.0).unwrap(), 0.0);
        assert!((bound_ball_stability(0.25).unwrap() - (2f64.sqrt() - 0.75)).abs() < 1e-15);
        let ball = profile(1.0, 2.0);
        assert_eq!(bound_inradius_simple(&ball, &ball), Some(0.0));
        assert_eq!(bound_inradius_refined(&ball, &ball), Some(0.0));
        let t = profile(0.5, 3f64.sqrt());
        assert!((bound_diameter(&t, &t).unwrap() - 0.5).abs() < 1e-15);
        assert!(bound_diameter(&t, &profile(1.0, 2.0)).is_none());
        assert!(bound_diameter(&profile(0.5, 1e-8), &profile(0.5, 1e-8)).unwrap() < 1e-15);
    }

    #[test]
    fn diameter_gate_is_strict() {
        let p = profile(0.5, 2.0 - 1e-13);
        assert!(bound_diameter(&p, &p).is_none());
        let q = profile(0.5, 2.0 - 1e-11);
        assert!(bound_diameter(&q, &q).is_some());
    }

    #[test]
    fn diagram_composes_parents() {
        assert_eq!(bound_diagram((1.0, 2.0), (1.0, 2.0), 2).unwrap(), 0.0);
        let (p, q) = ((0.4, 1.8), (0.7, 1.9));
        let direct = bound_inradius_refined(&profile(p.0, p.1), &profile(q.0, q.1)).unwrap();
        assert_eq!(bound_diagram(p, q, 2).unwrap(), direct);
        // small diameters switch on the other branch
        let (p, q) = ((0.1, 0.5), (0.2, 0.6));
        let dia = bound_diameter(&profile(p.0, p.1), &profile(q.0, q.1)).unwrap();
        assert_eq!(bound_diagram(p, q, 2).unwrap(), refined_sym(0.1, 0.2).min(dia));
        assert!(bound_diagram((1.5, 1.0), q, 2).is_err());
        assert!(bound_diagram((0.5, 2.0 + 1e-15), q, 2).is_ok());
    }

    #[test]
    fn sandwich_identity() {
        let p = profile(0.6, 1.9);
        assert_eq!(sim_sandwich((0.0, 0.0), &p, &p), Some((1.0, 1.0)));
        assert!(sim_sandwich((0.0, 0.0), &p, &profile(0.0, 2.0)).is_none());
    }

    #[test]
    fn cap_equality_for_simple_bound() {
        let cap = make_cap(Vector::new2(0.5, 0.0), 256).unwrap();
        let ball = Body::ball(Vector::zeros(2), 1.0).unwrap();
        let rep = check_all(&cap, &ball, &MetricOptions::default()).unwrap();
        let e = rep.entry("inradius_simple").unwrap();
        assert!((e.bound.unwrap() - 0.5).abs() < 1e-3);
        assert!((rep.metric.value - 0.5).abs() < 1e-3);
        assert!(rep.all_pass());
    }

    #[test]
    fn triangle_reuleaux_report() {
        let t = make_regular_simplex(2, 1.0).unwrap();
        let rt = make_reuleaux_triangle(256).unwrap();
        let rep = check_all(&t, &rt, &MetricOptions::default()).unwrap();
        assert!(rep.all_pass());
        let j = rep.entry("jung_extremal").unwrap();
        assert!(j.applicable);
        assert!(j.slack.unwrap().abs() < 3e-3, "{j:?}");
        assert_eq!(rep.entry("trivial").unwrap().pass, Some(true));
        assert!(rep.jung.0.extremal && rep.jung.1.extremal);
    }

    #[test]
    fn balls_give_zero() {
        let b = Body::ball(Vector::zeros(2), 2.0).unwrap();
        let rep = check_all(&b, &b, &MetricOptions::default()).unwrap();
        assert!(rep.all_pass());
        for name in ["inradius_simple", "inradius_refined", "diagram", "ball_stability"] {
            assert_eq!(rep.entry(name).unwrap().bound, Some(0.0), "{name}");
        }
    }

    #[test]
    fn apex_body_vs_ball_has_no_diameter_bound() {
        // D(B) = 2 sits on the gate, so the diameter bound never applies against the ball
        let k = make_apex_over_chord(0.5).unwrap();
        let rep = check_all(&k, &make_ball_polygon(256).unwrap(), &MetricOptions::default()).unwrap();
        assert!(!rep.entry("diameter").unwrap().applicable);
        assert!(rep.all_pass());
    }

    #[test]
    fn refined_pair_is_dominated_but_not_attained() {
        for t in [0.2, 0.3, 0.4] {
            let pair = make_refined_pair(t, 256).unwrap();
            let s = pair.s;
            let rep = check_all(&pair.outer, &pair.inner, &MetricOptions::default()).unwrap();
            assert!(rep.all_pass());
            let bound = rep.entry("inradius_refined").unwrap().bound.unwrap();
            // distance from the cap corner to the inner body
            let corner = (1.0 + 2.0 * s * t + t * t).sqrt() - 1.0 + t;
            let m = pseudometric(&pair.outer, &pair.inner, &MetricOptions::default()).unwrap();
            assert!(m.lower() <= corner + 1e-9, "t={t}: {} vs corner {corner}", m.lower());
            assert!(bound - corner > 5e-3, "t={t}: bound {bound} corner {corner}");
        }
    }

    #[test]
    fn random_pairs_pass() {
        for seed in 0..6 {
            let a = make_random_body(100 + seed, 7).unwrap();
            let b = make_random_body(200 + seed, 9).unwrap();
            let rep = check_all(&a, &b, &MetricOptions::default()).unwrap();
            assert!(rep.all_pass(), "{:?}", rep.failures().collect::<Vec<_>>());
            assert!(rep.metric.upper() <= 1.0 + rep.metric.gap);
        }
    }
}
