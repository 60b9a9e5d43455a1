//! Similarity-invariant shape distances between convex bodies in the plane
//! and in space.
//!
//! Bodies are compared after moving each onto its unit circumball; the
//! pseudometric [`metric::pseudometric`] then minimizes the Hausdorff distance
//! over all orthogonal maps. Alongside it live the radii functionals, the
//! Banach–Mazur-type distances d_Dil⁺ and d_Sim, and closed-form upper bounds
//! on the pseudometric.

pub mod bounds;
pub mod convex;
pub mod error;
pub mod hausdorff;
pub mod io;
pub mod metric;
pub mod optim;
pub mod sim_distance;
pub mod tolerance;

pub use bounds::{check_all, BoundReport, FunctionalProfile};
pub use convex::body::{Body, HalfSpace, Polytope, Shape};
pub use convex::circumball::{circumball, Circumball};
pub use convex::functionals::{diameter, inradius, width_2d, Incircle};
pub use convex::normalize::{normalize, NormalizedBody};
pub use convex::similarity::Similarity;
pub use convex::vector::{Orthogonal, Vector};
pub use error::{Error, Result};
pub use hausdorff::HausdorffResult;
pub use metric::{pseudometric, MetricOptions, OrbitMetricResult};
pub use sim_distance::{d_dil, d_sim, SimDistanceResult};
