//! Diameter, inradius and minimal width.

use serde::Serialize;

use crate::convex::body::{Body, HalfSpace, Polytope, Shape};
use crate::convex::vector::Vector;
use crate::error::{Error, Result};
use crate::optim::lp::{convex_combination, lp_solve, LinearProgram, LpStatus};
use crate::tolerance::GEOMETRY_TOL;

/// Largest inscribed ball with the active supporting halfspaces.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Incircle {
    pub center: Vector,
    pub radius: f64,
    pub touching_normals: Vec<Vector>,
}

/// Largest pairwise distance (O(V²) scan).
pub fn diameter(body: &Body) -> f64 {
    let pts = body.core_points();
    let mut best: f64 = 0.0;
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            best = best.max((pts[i] - pts[j]).norm_squared());
        }
    }
    best.sqrt() + 2.0 * body.rounding_radius()
}

/// Inradius via the LP `max t s.t. a_j·c + t <= b_j` over the facet rows.
pub fn inradius(body: &Body) -> Result<Incircle> {
    match body.shape() {
        Shape::Ball { center, radius } => {
            let e = Vector::unit(center.dim(), 0);
            Ok(Incircle {
                center: *center,
                radius: *radius,
                touching_normals: vec![e, -e],
            })
        }
        Shape::Polytope(p) => polytope_inradius(p),
        Shape::Rounded { core, radius } => {
            let mut inc = polytope_inradius(core)?;
            if inc.touching_normals.is_empty() {
                // segment core: the two sides touch
                let v = core.vertices();
                let side = (v[1] - v[0]).normalized().perp();
                inc.touching_normals = vec![side, -side];
            }
            inc.radius += radius;
            Ok(inc)
        }
    }
}

fn polytope_inradius(p: &Polytope) -> Result<Incircle> {
    let v = p.vertices();
    if p.dim() == 2 && v.len() == 2 {
        return Ok(Incircle {
            center: (v[0] + v[1]) * 0.5,
            radius: 0.0,
            touching_normals: Vec::new(),
        });
    }
    let rows = p.halfspaces()?;
    incircle_lp(&rows, p.vertices())
}

fn incircle_lp(rows: &[HalfSpace], vertices: &[Vector]) -> Result<Incircle> {
    let dim = vertices[0].dim();
    // pose the LP around the vertex centroid so every row starts feasible
    let mut origin = Vector::zeros(dim);
    for v in vertices {
        origin += *v;
    }
    let origin = origin * (1.0 / vertices.len() as f64);
    let mut objective = vec![0.0; dim + 1];
    objective[dim] = 1.0;
    let mut lp = LinearProgram::new(objective);
    for h in rows {
        let mut r: Vec<f64> = h.normal.as_slice().to_vec();
        r.push(1.0);
        lp.constraint(r, h.slack(&origin));
    }
    lp.bound(dim, 0.0, f64::INFINITY);
    let sol = lp_solve(&lp)?;
    if sol.status != LpStatus::Optimal {
        return Err(Error::NumericalFailure(format!("inradius LP {:?}", sol.status)));
    }
    let center = Vector::from_slice(&sol.x[..dim])? + origin;
    let radius = sol.x[dim].max(0.0);
    let touching_normals: Vec<Vector> = rows
        .iter()
        .filter(|h| h.slack(&center) - radius <= GEOMETRY_TOL)
        .map(|h| h.normal)
        .collect();
    let normals: Vec<Vec<f64>> = touching_normals.iter().map(|n| n.as_slice().to_vec()).collect();
    if normals.is_empty() {
        return Err(Error::NumericalFailure("inradius has no active constraint".into()));
    }
    let (_, residual) = convex_combination(&normals, &vec![0.0; dim])?;
    if residual > GEOMETRY_TOL {
        return Err(Error::NumericalFailure(format!(
            "incircle certificate residual {residual:e}"
        )));
    }
    Ok(Incircle {
        center,
        radius,
        touching_normals,
    })
}

/// Minimal width of a planar body by rotating calipers over the edge normals.
pub fn width_2d(body: &Body) -> Result<f64> {
    if body.dim() != 2 {
        return Err(Error::UnsupportedDimension(body.dim()));
    }
    let r = body.rounding_radius();
    let pts = body.core_points();
    if pts.len() <= 2 {
        return Ok(2.0 * r);
    }
    let n = pts.len();
    let mut j = 0usize;
    let mut best = f64::INFINITY;
    for i in 0..n {
        let a = pts[i];
        let b = pts[(i + 1) % n];
        let e = b - a;
        let len = e.norm();
        // distance from the edge line, measured inward
        let depth = |k: usize| e.cross2(&(pts[k % n] - a)) / len;
        if i == 0 {
            j = 1;
        }
        while depth(j + 1) >= depth(j) {
            j += 1;
        }
        best = best.min(depth(j));
    }
    Ok(best + 2.0 * r)
}
