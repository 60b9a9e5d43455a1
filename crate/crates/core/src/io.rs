//! JSON body format.
//!
//! ```json
//! {"dim": 2, "kind": "polytope", "vertices": [[0, 0], [1, 0], [0, 1]]}
//! {"dim": 3, "kind": "polytope", "vertices": [...], "hrep": [{"a": [0, 0, -1], "b": 0}, ...]}
//! {"dim": 2, "kind": "ball", "center": [0, 0], "radius": 1}
//! {"dim": 2, "kind": "rounded", "vertices": [[-1, 0], [1, 0]], "radius": 0.5}
//! ```
//!
//! `approx_error` is optional on every kind.

use serde::{Deserialize, Serialize};

use crate::convex::body::{Body, HalfSpace, Polytope, Shape};
use crate::convex::vector::Vector;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HalfSpaceJson {
    pub a: Vec<f64>,
    pub b: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum BodyKind {
    Polytope {
        vertices: Vec<Vec<f64>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        hrep: Option<Vec<HalfSpaceJson>>,
    },
    Ball {
        center: Vec<f64>,
        radius: f64,
    },
    Rounded {
        vertices: Vec<Vec<f64>>,
        radius: f64,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BodyJson {
    pub dim: usize,
    #[serde(flatten)]
    pub kind: BodyKind,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub approx_error: f64,
}

fn is_zero(x: &f64) -> bool {
    *x == 0.0
}

fn vector(dim: usize, coords: &[f64]) -> Result<Vector> {
    if coords.len() != dim {
        return Err(Error::Parse(format!("expected {dim} coordinates, got {}", coords.len())));
    }
    if coords.iter().any(|c| !c.is_finite()) {
        return Err(Error::Parse("non-finite coordinate".into()));
    }
    Vector::from_slice(coords)
}

fn vectors(dim: usize, rows: &[Vec<f64>]) -> Result<Vec<Vector>> {
    rows.iter().map(|r| vector(dim, r)).collect()
}

fn finite(name: &str, x: f64) -> Result<f64> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(Error::Parse(format!("{name} is not finite")))
    }
}

impl BodyJson {
    pub fn to_body(&self) -> Result<Body> {
        if !(2..=3).contains(&self.dim) {
            return Err(Error::UnsupportedDimension(self.dim));
        }
        let err = finite("approx_error", self.approx_error)?;
        if err < 0.0 {
            return Err(Error::Parse("approx_error must be nonnegative".into()));
        }
        let body = match &self.kind {
            BodyKind::Polytope { vertices, hrep } => {
                let pts = vectors(self.dim, vertices)?;
                match hrep {
                    Some(rows) => {
                        let hs = rows
                            .iter()
                            .map(|h| HalfSpace::new(vector(self.dim, &h.a)?, finite("b", h.b)?))
                            .collect::<Result<Vec<_>>>()?;
                        Polytope::with_hrep(&pts, hs)?.into()
                    }
                    None => Body::polytope(&pts)?,
                }
            }
            BodyKind::Ball { center, radius } => Body::ball(vector(self.dim, center)?, finite("radius", *radius)?)?,
            BodyKind::Rounded { vertices, radius } => {
                let core = Polytope::from_points(&vectors(self.dim, vertices)?)?;
                Body::rounded(core, finite("radius", *radius)?)?
            }
        };
        Ok(body.with_approx_error(err))
    }

    pub fn from_body(body: &Body) -> Self {
        let rows = |p: &Polytope| p.vertices().iter().map(|v| v.as_slice().to_vec()).collect();
        let kind = match body.shape() {
            Shape::Polytope(p) => BodyKind::Polytope {
                vertices: rows(p),
                hrep: p.explicit_hrep().map(|hs| {
                    hs.iter()
                        .map(|h| HalfSpaceJson {
                            a: h.normal.as_slice().to_vec(),
                            b: h.offset,
                        })
                        .collect()
                }),
            },
            Shape::Ball { center, radius } => BodyKind::Ball {
                center: center.as_slice().to_vec(),
                radius: *radius,
            },
            Shape::Rounded { core, radius } => BodyKind::Rounded {
                vertices: rows(core),
                radius: *radius,
            },
        };
        Self {
            dim: body.dim(),
            kind,
            approx_error: body.approx_error(),
        }
    }
}

pub fn body_from_json(text: &str) -> Result<Body> {
    let parsed: BodyJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    parsed.to_body()
}

pub fn body_to_json(body: &Body) -> String {
    serde_json::to_string_pretty(&BodyJson::from_body(body)).expect("body JSON is always serializable")
}
