//! Similarities x ↦ u + λσx and their action on bodies.

use serde::Serialize;

use crate::convex::body::{Body, HalfSpace, Polytope, Shape};
use crate::convex::vector::{Orthogonal, Vector};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Similarity {
    pub scale: f64,
    pub orthogonal: Orthogonal,
    pub translation: Vector,
}

impl Similarity {
    pub fn identity(dim: usize) -> Self {
        Self {
            scale: 1.0,
            orthogonal: Orthogonal::identity(dim),
            translation: Vector::zeros(dim),
        }
    }

    pub fn new(scale: f64, orthogonal: Orthogonal, translation: Vector) -> Result<Self> {
        if !(scale > 0.0) || !scale.is_finite() {
            return Err(Error::BadParameter("similarity scale must be positive".into()));
        }
        if orthogonal.dim() != translation.dim() {
            return Err(Error::DimensionMismatch(orthogonal.dim(), translation.dim()));
        }
        if orthogonal.orthogonality_defect() > 1e-12 {
            return Err(Error::BadParameter("similarity linear part is not orthogonal".into()));
        }
        Ok(Self {
            scale,
            orthogonal,
            translation,
        })
    }

    pub fn from_orthogonal(orthogonal: Orthogonal) -> Self {
        Self {
            scale: 1.0,
            orthogonal,
            translation: Vector::zeros(orthogonal.dim()),
        }
    }

    pub fn dim(&self) -> usize {
        self.orthogonal.dim()
    }

    #[inline]
    pub fn apply_point(&self, x: &Vector) -> Vector {
        self.translation + self.orthogonal.apply(x) * self.scale
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Similarity) -> Similarity {
        Similarity {
            scale: self.scale * other.scale,
            orthogonal: self.orthogonal.compose(&other.orthogonal),
            translation: self.apply_point(&other.translation),
        }
    }

    pub fn inverse(&self) -> Similarity {
        let t = self.orthogonal.transpose();
        let inv_scale = 1.0 / self.scale;
        Similarity {
            scale: inv_scale,
            orthogonal: t,
            translation: -(t.apply(&self.translation) * inv_scale),
        }
    }

    pub fn apply(&self, body: &Body) -> Result<Body> {
        apply_similarity(self, body)
    }
}

fn map_polytope(g: &Similarity, p: &Polytope) -> Polytope {
    let mut vertices: Vec<Vector> = p.vertices().iter().map(|v| g.apply_point(v)).collect();
    if p.dim() == 2 && g.orthogonal.det() < 0.0 {
        // reflections reverse orientation
        vertices.reverse();
    }
    let hrep = p.explicit_hrep().map(|rows| {
        rows.iter()
            .map(|h| {
                let normal = g.orthogonal.apply(&h.normal);
                HalfSpace {
                    normal,
                    offset: g.scale * h.offset + normal.dot(&g.translation),
                }
            })
            .collect()
    });
    Polytope::from_raw(vertices, hrep)
}

/// The image `gA = {g(a) : a ∈ A}`.
pub fn apply_similarity(g: &Similarity, body: &Body) -> Result<Body> {
    if g.dim() != body.dim() {
        return Err(Error::DimensionMismatch(g.dim(), body.dim()));
    }
    let shape = match body.shape() {
        Shape::Polytope(p) => Shape::Polytope(map_polytope(g, p)),
        Shape::Ball { center, radius } => Shape::Ball {
            center: g.apply_point(center),
            radius: g.scale * radius,
        },
        Shape::Rounded { core, radius } => Shape::Rounded {
            core: map_polytope(g, core),
            radius: g.scale * radius,
        },
    };
    Ok(Body::from_shape(shape, g.scale * body.approx_error()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_leaves_body_unchanged() {
        let b = Body::polytope(&[
            Vector::new2(0.0, 0.0),
            Vector::new2(1.0, 0.0),
            Vector::new2(0.3, 0.8),
        ])
        .unwrap();
        assert_eq!(Similarity::identity(2).apply(&b).unwrap(), b);
    }

    #[test]
    fn scaling_a_ball() {
        let g = Similarity::new(2.0, Orthogonal::identity(2), Vector::zeros(2)).unwrap();
        let b = g.apply(&Body::ball(Vector::zeros(2), 1.0).unwrap()).unwrap();
        assert_eq!(b, Body::ball(Vector::zeros(2), 2.0).unwrap());
    }

    #[test]
    fn inverse_round_trip() {
        let g = Similarity::new(
            3.5,
            Orthogonal::rotation2(1.1).compose(&Orthogonal::reflection(2)),
            Vector::new2(0.4, -2.0),
        )
        .unwrap();
        let x = Vector::new2(0.7, 0.1);
        let y = g.inverse().apply_point(&g.apply_point(&x));
        assert!(y.max_abs_diff(&x) < 1e-14);
        let id = g.compose(&g.inverse());
        assert!(id.translation.norm() < 1e-14 && (id.scale - 1.0).abs() < 1e-15);
    }

    #[test]
    fn reflection_keeps_ccw() {
        let b = Body::polytope(&[
            Vector::new2(0.0, 0.0),
            Vector::new2(1.0, 0.0),
            Vector::new2(0.0, 1.0),
        ])
        .unwrap();
        let g = Similarity::from_orthogonal(Orthogonal::reflection(2));
        let r = g.apply(&b).unwrap();
        let v = r.core_points();
        assert!((v[1] - v[0]).cross2(&(v[2] - v[1])) > 0.0);
    }

    #[test]
    fn rejects_bad_scale() {
        assert!(Similarity::new(0.0, Orthogonal::identity(2), Vector::zeros(2)).is_err());
        assert!(Similarity::new(1.0, Orthogonal::identity(3), Vector::zeros(2)).is_err());
    }
}
