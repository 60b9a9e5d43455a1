//! Numerical kernels: dense LP, 1D Lipschitz minimization, SO(3) covering search.

pub mod lipschitz;
pub mod lp;
pub mod so3;

/// A minimum with a guarantee: the true global minimum lies in
/// `[value - gap, value]`.
#[derive(Debug, Clone, PartialEq)]
pub struct CertifiedMinimum<T> {
    pub argmin: T,
    pub value: f64,
    pub gap: f64,
    pub evaluations: usize,
    /// False when the evaluation budget ran out before `gap <= tol`.
    pub converged: bool,
}

impl<T> CertifiedMinimum<T> {
    pub fn lower(&self) -> f64 {
        self.value - self.gap
    }
}
