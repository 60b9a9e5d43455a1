//! Numerical tolerances shared by the geometry kernels.

/// Absolute tolerance for containment and certificate checks.
pub const GEOMETRY_TOL: f64 = 1e-9;

/// Points closer than this are merged before hull construction.
pub const DEDUP_TOL: f64 = 1e-12;

/// Tolerances used by the kernels. `Default` gives the documented values;
/// callers can override either one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub geometry: f64,
    pub dedup: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            geometry: GEOMETRY_TOL,
            dedup: DEDUP_TOL,
        }
    }
}
