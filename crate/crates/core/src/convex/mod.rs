//! Bodies, similarities and the classical radii functionals.

pub mod body;
pub mod circumball;
pub mod functionals;
pub mod generators;
pub mod hull;
pub mod normalize;
pub mod similarity;
pub mod vector;
