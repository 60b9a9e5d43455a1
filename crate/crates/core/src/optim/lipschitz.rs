//! Piyavskii–Shubert global minimization of a Lipschitz function on an interval.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::optim::CertifiedMinimum;

/// One sawtooth tooth: the interval between two evaluated points.
#[derive(Debug, Clone, Copy)]
struct Tooth {
    lower: f64,
    x1: f64,
    f1: f64,
    x2: f64,
    f2: f64,
}

impl PartialEq for Tooth {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Tooth {}

impl PartialOrd for Tooth {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Tooth {
    // min-heap on the lower bound; ties go to the leftmost interval
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .lower
            .total_cmp(&self.lower)
            .then_with(|| other.x1.total_cmp(&self.x1))
    }
}

fn tooth(x1: f64, f1: f64, x2: f64, f2: f64, l: f64) -> Tooth {
    Tooth {
        lower: 0.5 * (f1 + f2) - 0.5 * l * (x2 - x1),
        x1,
        f1,
        x2,
        f2,
    }
}

/// Default evaluation budget: twice the worst-case count for the sawtooth
/// to close, plus slack.
pub fn default_budget(a: f64, b: f64, lipschitz: f64, tol: f64) -> usize {
    let n = (lipschitz * (b - a) / tol).ceil();
    if n.is_finite() && n < 1e8 {
        2 * n as usize + 64
    } else {
        200_000_000
    }
}

/// Minimizes `f` on `[a, b]` given a Lipschitz constant. Stops once the best
/// value is within `tol` of the sawtooth lower envelope, or when `max_evals`
/// evaluations are spent (then `converged` is false and the gap is whatever
/// the envelope certifies). Ties keep the smallest argument.
pub fn lipschitz_minimize_1d<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    lipschitz: f64,
    tol: f64,
    max_evals: usize,
) -> Result<CertifiedMinimum<f64>> {
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(Error::BadParameter(format!("bad interval [{a}, {b}]")));
    }
    if !(lipschitz > 0.0) || !(tol > 0.0) {
        return Err(Error::BadParameter("Lipschitz constant and tol must be positive".into()));
    }
    let mut eval = |x: f64| -> Result<f64> {
        let v = f(x);
        if v.is_nan() {
            return Err(Error::NumericalFailure(format!("objective is NaN at {x}")));
        }
        Ok(v)
    };
    let fa = eval(a)?;
    let fb = eval(b)?;
    let mut evaluations = 2;
    let (mut best_x, mut best) = if fb < fa { (b, fb) } else { (a, fa) };
    let mut heap = BinaryHeap::new();
    heap.push(tooth(a, fa, b, fb, lipschitz));
    loop {
        let top = *heap.peek().expect("heap never empties");
        if best - top.lower <= tol || evaluations >= max_evals.max(2) {
            return Ok(CertifiedMinimum {
                argmin: best_x,
                value: best,
                gap: (best - top.lower).max(0.0),
                evaluations,
                converged: best - top.lower <= tol,
            });
        }
        heap.pop();
        let mid = 0.5 * (top.x1 + top.x2) + (top.f1 - top.f2) / (2.0 * lipschitz);
        let x = mid.clamp(top.x1, top.x2);
        let fx = eval(x)?;
        evaluations += 1;
        if fx < best || (fx == best && x < best_x) {
            best = fx;
            best_x = x;
        }
        heap.push(tooth(top.x1, top.f1, x, fx, lipschitz));
        heap.push(tooth(x, fx, top.x2, top.f2, lipschitz));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{PI, TAU};

    #[test]
    fn abs_kink() {
        let m = lipschitz_minimize_1d(|x| (x - 1.0).abs(), 0.0, 2.0, 1.0, 1e-6, 1_000_000).unwrap();
        assert!(m.converged);
        assert!((m.argmin - 1.0).abs() < 1e-6);
        assert!(m.value < 1e-6);
        assert!(m.gap <= 1e-6);
    }

    #[test]
    fn sine() {
        let m = lipschitz_minimize_1d(f64::sin, 0.0, TAU, 1.0, 1e-6, 1_000_000).unwrap();
        assert!((m.value + 1.0).abs() <= 1e-6);
        assert!((m.argmin - 1.5 * PI).abs() < 2e-3);
    }

    #[test]
    fn constant_needs_full_grid_and_is_exact() {
        let m = lipschitz_minimize_1d(|_| 0.5, 0.0, 1.0, 1.0, 1e-3, 100_000).unwrap();
        assert_eq!(m.value, 0.5);
        assert_eq!(m.argmin, 0.0);
        assert!(m.evaluations <= 1000 + 10);
    }

    #[test]
    fn budget_exhaustion_reports_honest_gap() {
        let m = lipschitz_minimize_1d(|x| (5.0 * x).sin(), 0.0, 10.0, 5.0, 1e-9, 50).unwrap();
        assert!(!m.converged);
        assert_eq!(m.evaluations, 50);
        assert!(m.lower() <= -1.0 + 1e-12);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(lipschitz_minimize_1d(|x| x, 1.0, 0.0, 1.0, 1e-3, 10).is_err());
        assert!(lipschitz_minimize_1d(|x| x, 0.0, 1.0, 0.0, 1e-3, 10).is_err());
        assert!(lipschitz_minimize_1d(|_| f64::NAN, 0.0, 1.0, 1.0, 1e-3, 10).is_err());
    }
}
