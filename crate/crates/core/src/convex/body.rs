//! Body representations: vertex polytopes, balls, and polytope ⊕ ball.

use crate::convex::hull::{extreme_points_3d, hull_vertices_2d};
use crate::convex::vector::Vector;
use crate::error::{Error, Result};
use crate::tolerance::{Tolerances, GEOMETRY_TOL};

/// Closed halfspace `{x : normal · x <= offset}` with a unit normal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfSpace {
    pub normal: Vector,
    pub offset: f64,
}

impl HalfSpace {
    /// Normalizes `normal` to unit length.
    pub fn new(normal: Vector, offset: f64) -> Result<Self> {
        let n = normal.norm();
        if !(n > 0.0) || !offset.is_finite() {
            return Err(Error::BadParameter("halfspace normal must be nonzero".into()));
        }
        Ok(Self {
            normal: normal * (1.0 / n),
            offset: offset / n,
        })
    }

    #[inline]
    pub fn slack(&self, p: &Vector) -> f64 {
        self.offset - self.normal.dot(p)
    }
}

/// Convex hull of finitely many points, stored as its minimal vertex list.
///
/// In the plane the vertices are counter-clockwise with no three consecutive
/// collinear; a segment is stored as its two endpoints. In space the vertex
/// order is arbitrary and a facet description may be attached.
#[derive(Debug, Clone, PartialEq)]
pub struct Polytope {
    vertices: Vec<Vector>,
    hrep: Option<Vec<HalfSpace>>,
}

impl Polytope {
    /// Hull of `points` (2D or 3D).
    pub fn from_points(points: &[Vector]) -> Result<Self> {
        Self::from_points_with(points, &Tolerances::default())
    }

    pub fn from_points_with(points: &[Vector], tol: &Tolerances) -> Result<Self> {
        let dim = common_dim(points)?;
        let vertices = if dim == 2 {
            hull_vertices_2d(points, tol.dedup)?
        } else {
            extreme_points_3d(points, tol.dedup)?
        };
        Ok(Self { vertices, hrep: None })
    }

    /// 3D polytope with a caller-supplied facet description. Every vertex
    /// must satisfy every halfspace within the geometry tolerance.
    pub fn with_hrep(points: &[Vector], hrep: Vec<HalfSpace>) -> Result<Self> {
        let mut p = Self::from_points(points)?;
        if p.dim() != 3 {
            return Err(Error::BadParameter(
                "explicit hrep is only accepted for 3D polytopes".into(),
            ));
        }
        if hrep.is_empty() || hrep.iter().any(|h| h.normal.dim() != 3) {
            return Err(Error::BadParameter("hrep rows must be 3D".into()));
        }
        for h in &hrep {
            for v in &p.vertices {
                if h.slack(v) < -GEOMETRY_TOL {
                    return Err(Error::BadParameter("vertex violates hrep row".into()));
                }
            }
        }
        p.hrep = Some(hrep);
        Ok(p)
    }

    /// Trusted constructor for vertex lists that are already minimal and
    /// oriented (similarity images of valid polytopes).
    pub(crate) fn from_raw(vertices: Vec<Vector>, hrep: Option<Vec<HalfSpace>>) -> Self {
        Self { vertices, hrep }
    }

    pub fn dim(&self) -> usize {
        self.vertices[0].dim()
    }

    pub fn vertices(&self) -> &[Vector] {
        &self.vertices
    }

    pub fn is_segment(&self) -> bool {
        self.vertices.len() == 2
    }

    /// Caller-supplied facets (3D only).
    pub fn explicit_hrep(&self) -> Option<&[HalfSpace]> {
        self.hrep.as_deref()
    }

    /// Facet halfspaces. In 2D these are derived from the CCW edges (a
    /// segment yields two opposite side rows plus two end caps); in 3D the
    /// stored rows are returned.
    pub fn halfspaces(&self) -> Result<Vec<HalfSpace>> {
        if self.dim() == 3 {
            return self.hrep.clone().ok_or(Error::MissingHRep);
        }
        let v = &self.vertices;
        if v.len() == 2 {
            let d = (v[1] - v[0]).normalized();
            let side = d.perp();
            return Ok(vec![
                HalfSpace { normal: -side, offset: -side.dot(&v[0]) },
                HalfSpace { normal: side, offset: side.dot(&v[0]) },
                HalfSpace { normal: d, offset: d.dot(&v[1]) },
                HalfSpace { normal: -d, offset: -d.dot(&v[0]) },
            ]);
        }
        Ok((0..v.len())
            .map(|i| {
                let a = v[i];
                let b = v[(i + 1) % v.len()];
                // outward normal of a CCW edge
                let n = Vector::new2(b.y() - a.y(), a.x() - b.x()).normalized();
                HalfSpace { normal: n, offset: n.dot(&a) }
            })
            .collect())
    }

    pub fn support(&self, u: &Vector) -> (f64, Vector) {
        let mut best = f64::NEG_INFINITY;
        let mut arg = self.vertices[0];
        for v in &self.vertices {
            let s = v.dot(u);
            if s > best {
                best = s;
                arg = *v;
            }
        }
        (best, arg)
    }

    /// Largest vertex norm, the Lipschitz constant of the support function.
    pub fn max_norm(&self) -> f64 {
        self.vertices.iter().map(Vector::norm).fold(0.0, f64::max)
    }
}

fn common_dim(points: &[Vector]) -> Result<usize> {
    let Some(first) = points.first() else {
        return Err(Error::DegenerateInput("empty point set".into()));
    };
    let dim = first.dim();
    if let Some(p) = points.iter().find(|p| p.dim() != dim) {
        return Err(Error::DimensionMismatch(dim, p.dim()));
    }
    if points.iter().any(|p| p.as_slice().iter().any(|c| !c.is_finite())) {
        return Err(Error::Parse("non-finite coordinate".into()));
    }
    Ok(dim)
}

#[derive(Debug, Clone, PartialEq)]
pub enum Shape {
    Polytope(Polytope),
    Ball { center: Vector, radius: f64 },
    /// Minkowski sum `core ⊕ radius·B`.
    Rounded { core: Polytope, radius: f64 },
}

/// A non-degenerate compact convex set in R² or R³.
///
/// `approx_error` is a bound on the Hausdorff distance between this body and
/// the (possibly smooth) set it stands for; zero for exact inputs. It is
/// carried through similarities and added to metric uncertainty downstream.
#[derive(Debug, Clone, PartialEq)]
pub struct Body {
    shape: Shape,
    approx_error: f64,
}

impl Body {
    pub fn polytope(points: &[Vector]) -> Result<Self> {
        Ok(Polytope::from_points(points)?.into())
    }

    pub fn ball(center: Vector, radius: f64) -> Result<Self> {
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(Error::BadParameter("ball radius must be positive".into()));
        }
        Ok(Self {
            shape: Shape::Ball { center, radius },
            approx_error: 0.0,
        })
    }

    pub fn rounded(core: Polytope, radius: f64) -> Result<Self> {
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(Error::BadParameter("rounding radius must be positive".into()));
        }
        Ok(Self {
            shape: Shape::Rounded { core, radius },
            approx_error: 0.0,
        })
    }

    pub(crate) fn from_shape(shape: Shape, approx_error: f64) -> Self {
        Self { shape, approx_error }
    }

    pub fn with_approx_error(mut self, err: f64) -> Self {
        self.approx_error = err.max(0.0);
        self
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn approx_error(&self) -> f64 {
        self.approx_error
    }

    pub fn dim(&self) -> usize {
        match &self.shape {
            Shape::Polytope(p) | Shape::Rounded { core: p, .. } => p.dim(),
            Shape::Ball { center, .. } => center.dim(),
        }
    }

    /// Points whose hull, inflated by [`Body::rounding_radius`], is the body.
    pub fn core_points(&self) -> &[Vector] {
        match &self.shape {
            Shape::Polytope(p) | Shape::Rounded { core: p, .. } => p.vertices(),
            Shape::Ball { center, .. } => std::slice::from_ref(center),
        }
    }

    pub fn rounding_radius(&self) -> f64 {
        match &self.shape {
            Shape::Polytope(_) => 0.0,
            Shape::Ball { radius, .. } | Shape::Rounded { radius, .. } => *radius,
        }
    }

    pub fn as_polytope(&self) -> Option<&Polytope> {
        match &self.shape {
            Shape::Polytope(p) => Some(p),
            _ => None,
        }
    }

    /// True when the body has nonempty interior.
    pub fn is_full_dimensional(&self) -> bool {
        match &self.shape {
            Shape::Polytope(p) => {
                if p.dim() == 2 {
                    p.vertices().len() >= 3
                } else {
                    is_spatially_full(p.vertices())
                }
            }
            _ => true,
        }
    }

    /// Support function h(u) = max over the body of u·x, with a maximizer.
    /// `u` must be a unit vector.
    pub fn support(&self, u: &Vector) -> (f64, Vector) {
        debug_assert!((u.norm() - 1.0).abs() < 1e-9, "support direction must be unit");
        match &self.shape {
            Shape::Polytope(p) => p.support(u),
            Shape::Ball { center, radius } => (center.dot(u) + radius, *center + *u * *radius),
            Shape::Rounded { core, radius } => {
                let (h, w) = core.support(u);
                (h + radius, w + *u * *radius)
            }
        }
    }

    /// Lipschitz constant of the support function on the sphere.
    pub fn support_lipschitz(&self) -> f64 {
        self.core_points().iter().map(Vector::norm).fold(0.0, f64::max)
    }

    /// Whether `p` lies in the body, up to `tol`. Needs an hrep in 3D.
    pub fn contains(&self, p: &Vector, tol: f64) -> Result<bool> {
        match &self.shape {
            Shape::Ball { center, radius } => Ok(p.dist(center) <= radius + tol),
            Shape::Polytope(poly) => Ok(poly.halfspaces()?.iter().all(|h| h.slack(p) >= -tol)),
            Shape::Rounded { core, radius } => {
                let d = distance_to_polytope_2d(core, p)?;
                Ok(d <= radius + tol)
            }
        }
    }
}

impl From<Polytope> for Body {
    fn from(p: Polytope) -> Self {
        Self {
            shape: Shape::Polytope(p),
            approx_error: 0.0,
        }
    }
}

fn is_spatially_full(v: &[Vector]) -> bool {
    if v.len() < 4 {
        return false;
    }
    let scale = v.iter().map(|p| p.dist(&v[0])).fold(0.0, f64::max);
    for i in 1..v.len() {
        for j in i + 1..v.len() {
            let n = (v[i] - v[0]).cross3(&(v[j] - v[0]));
            if n.norm() <= 1e-12 * scale * scale {
                continue;
            }
            let n = n.normalized();
            if v.iter().any(|p| n.dot(&(*p - v[0])).abs() > 1e-12 * scale) {
                return true;
            }
        }
    }
    false
}

/// Euclidean distance from `p` to a planar polytope (0 inside).
fn distance_to_polytope_2d(core: &Polytope, p: &Vector) -> Result<f64> {
    if core.dim() != 2 {
        return Err(Error::UnsupportedDimension(core.dim()));
    }
    let v = core.vertices();
    if v.len() >= 3 && core.halfspaces()?.iter().all(|h| h.slack(p) >= 0.0) {
        return Ok(0.0);
    }
    let n = v.len();
    let edges = if n == 2 { 1 } else { n };
    Ok((0..edges)
        .map(|i| segment_distance(p, &v[i], &v[(i + 1) % n]))
        .fold(f64::INFINITY, f64::min))
}

fn segment_distance(p: &Vector, a: &Vector, b: &Vector) -> f64 {
    let ab = *b - *a;
    let t = ((*p - *a).dot(&ab) / ab.norm_squared()).clamp(0.0, 1.0);
    p.dist(&(*a + ab * t))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> Body {
        Body::polytope(&[
            Vector::new2(-1.0, -1.0),
            Vector::new2(1.0, -1.0),
            Vector::new2(1.0, 1.0),
            Vector::new2(-1.0, 1.0),
        ])
        .unwrap()
    }

    #[test]
    fn support_of_unit_ball() {
        let b = Body::ball(Vector::zeros(2), 1.0).unwrap();
        let (h, w) = b.support(&Vector::new2(1.0, 0.0));
        assert_eq!(h, 1.0);
        assert_eq!(w, Vector::new2(1.0, 0.0));
    }

    #[test]
    fn support_of_square_diagonal() {
        let s = 0.5f64.sqrt();
        let (h, w) = square().support(&Vector::new2(s, s));
        assert!((h - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(w, Vector::new2(1.0, 1.0));
    }

    #[test]
    fn rounded_support_adds_radius() {
        let core = Polytope::from_points(&[Vector::new2(0.0, 0.0), Vector::new2(1.0, 0.0)]).unwrap();
        let b = Body::rounded(core, 0.5).unwrap();
        let (h, _) = b.support(&Vector::new2(0.0, 1.0));
        assert!((h - 0.5).abs() < 1e-15);
        assert!(b.contains(&Vector::new2(0.5, 0.49), 0.0).unwrap());
        assert!(!b.contains(&Vector::new2(1.6, 0.0), 0.0).unwrap());
    }

    #[test]
    fn square_halfspaces_are_outward() {
        let hs = square().as_polytope().unwrap().halfspaces().unwrap();
        assert_eq!(hs.len(), 4);
        for h in hs {
            assert!((h.offset - 1.0).abs() < 1e-15);
            assert!(h.slack(&Vector::zeros(2)) > 0.0);
        }
    }

    #[test]
    fn bad_radius_rejected() {
        assert!(Body::ball(Vector::zeros(2), 0.0).is_err());
        assert!(Body::ball(Vector::zeros(2), f64::NAN).is_err());
    }

    #[test]
    fn missing_hrep_in_3d() {
        let pts = [
            Vector::new3(0.0, 0.0, 0.0),
            Vector::new3(1.0, 0.0, 0.0),
            Vector::new3(0.0, 1.0, 0.0),
            Vector::new3(0.0, 0.0, 1.0),
        ];
        let p = Polytope::from_points(&pts).unwrap();
        assert_eq!(p.halfspaces(), Err(Error::MissingHRep));
        assert!(Body::from(p).is_full_dimensional());
    }
}
