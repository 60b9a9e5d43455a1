//! The normalization retraction A ↦ (A − č(A)) / R(A) onto bodies whose
//! circumball is the unit ball.

use crate::convex::body::Body;
use crate::convex::circumball::circumball;
use crate::convex::similarity::Similarity;
use crate::convex::vector::Orthogonal;
use crate::error::{Error, Result};
use crate::tolerance::GEOMETRY_TOL;

/// A body whose circumball is the unit ball centered at the origin.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizedBody {
    body: Body,
}

impl NormalizedBody {
    /// Certifies that `body` is already normalized.
    pub fn new(body: Body) -> Result<Self> {
        let cb = circumball(&body);
        if (cb.radius - 1.0).abs() > GEOMETRY_TOL || cb.center.norm() > GEOMETRY_TOL {
            return Err(Error::NotNormalized);
        }
        Ok(Self { body })
    }

    pub fn body(&self) -> &Body {
        &self.body
    }

    pub fn into_body(self) -> Body {
        self.body
    }

    pub fn dim(&self) -> usize {
        self.body.dim()
    }
}

/// Returns the normalized body and the similarity `g` with `g(body)` equal to it.
pub fn normalize(body: &Body) -> Result<(NormalizedBody, Similarity)> {
    let cb = circumball(body);
    if !(cb.radius > 0.0) {
        return Err(Error::DegenerateInput("zero circumradius".into()));
    }
    let dim = body.dim();
    let scale = 1.0 / cb.radius;
    let g = Similarity::new(scale, Orthogonal::identity(dim), -(cb.center * scale))?;
    let image = g.apply(body)?;
    let check = circumball(&image);
    if (check.radius - 1.0).abs() > GEOMETRY_TOL || check.center.norm() > GEOMETRY_TOL {
        return Err(Error::NumericalFailure(
            "normalized body has non-unit circumball".into(),
        ));
    }
    Ok((NormalizedBody { body: image }, g))
}
