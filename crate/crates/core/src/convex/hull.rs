//! Planar convex hull (monotone chain) and a 3D extreme-point filter.

use crate::convex::body::Polytope;
use crate::convex::vector::Vector;
use crate::error::{Error, Result};
use crate::optim::lp::convex_combination;
use crate::tolerance::DEDUP_TOL;

/// Convex hull of planar points as a minimal CCW polytope. Collinear input
/// yields the segment between the two extreme points.
pub fn convex_hull_2d(points: &[Vector]) -> Result<Polytope> {
    if points.iter().any(|p| p.dim() != 2) {
        return Err(Error::UnsupportedDimension(3));
    }
    Ok(Polytope::from_raw(hull_vertices_2d(points, DEDUP_TOL)?, None))
}

fn dedup_sorted(points: &[Vector], dedup: f64) -> Vec<Vector> {
    let mut pts: Vec<Vector> = points.to_vec();
    pts.sort_by(|a, b| {
        a.as_slice()
            .iter()
            .zip(b.as_slice())
            .map(|(x, y)| x.total_cmp(y))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let mut out: Vec<Vector> = Vec::with_capacity(pts.len());
    for p in pts {
        if out.iter().rev().take(4).all(|q| q.dist(&p) > dedup) {
            out.push(p);
        }
    }
    out
}

pub(crate) fn hull_vertices_2d(points: &[Vector], dedup: f64) -> Result<Vec<Vector>> {
    let pts = dedup_sorted(points, dedup);
    if pts.len() < 2 {
        return Err(Error::DegenerateInput("all points coincide".into()));
    }
    let scale = pts.iter().map(|p| p.dist(&pts[0])).fold(0.0, f64::max);
    // Turns smaller than this are treated as straight.
    let eps = 1e-14 * scale * scale;
    let turn = |o: &Vector, a: &Vector, b: &Vector| (*a - *o).cross2(&(*b - *o));

    let mut hull: Vec<Vector> = Vec::with_capacity(2 * pts.len());
    for p in pts.iter() {
        while hull.len() >= 2 && turn(&hull[hull.len() - 2], &hull[hull.len() - 1], p) <= eps {
            hull.pop();
        }
        hull.push(*p);
    }
    let lower_len = hull.len() + 1;
    for p in pts.iter().rev().skip(1) {
        while hull.len() >= lower_len
            && turn(&hull[hull.len() - 2], &hull[hull.len() - 1], p) <= eps
        {
            hull.pop();
        }
        hull.push(*p);
    }
    hull.pop();
    if hull.len() < 2 {
        return Err(Error::DegenerateInput("all points coincide".into()));
    }
    Ok(hull)
}

/// Drops every point that is a convex combination of the remaining ones.
pub(crate) fn extreme_points_3d(points: &[Vector], dedup: f64) -> Result<Vec<Vector>> {
    let mut pts = dedup_sorted(points, dedup);
    if pts.len() < 2 {
        return Err(Error::DegenerateInput("all points coincide".into()));
    }
    let scale = pts.iter().map(|p| p.dist(&pts[0])).fold(0.0, f64::max);
    let mut i = 0;
    while i < pts.len() && pts.len() > 2 {
        let others: Vec<Vec<f64>> = pts
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, p)| p.as_slice().to_vec())
            .collect();
        let (_, residual) = convex_combination(&others, pts[i].as_slice())?;
        if residual <= 1e-12 * scale {
            pts.remove(i);
        } else {
            i += 1;
        }
    }
    Ok(pts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: f64, y: f64) -> Vector {
        Vector::new2(x, y)
    }

    #[test]
    fn interior_point_removed() {
        let h = convex_hull_2d(&[v(0.0, 0.0), v(1.0, 0.0), v(0.0, 1.0), v(0.2, 0.2)]).unwrap();
        assert_eq!(h.vertices(), &[v(0.0, 0.0), v(1.0, 0.0), v(0.0, 1.0)]);
    }

    #[test]
    fn collinear_gives_segment() {
        let h = convex_hull_2d(&[v(0.0, 0.0), v(2.0, 0.0), v(1.0, 0.0)]).unwrap();
        assert_eq!(h.vertices(), &[v(0.0, 0.0), v(2.0, 0.0)]);
    }

    #[test]
    fn coincident_points_rejected() {
        let err = convex_hull_2d(&[v(1.0, 1.0), v(1.0, 1.0 + 1e-14)]).unwrap_err();
        assert!(matches!(err, Error::DegenerateInput(_)));
    }

    #[test]
    fn ccw_and_no_collinear_triples() {
        let pts = [
            v(0.0, 0.0),
            v(1.0, 0.0),
            v(2.0, 0.0),
            v(2.0, 1.0),
            v(2.0, 2.0),
            v(0.0, 2.0),
            v(1.0, 1.0),
        ];
        let h = convex_hull_2d(&pts).unwrap();
        assert_eq!(h.vertices().len(), 4);
        let vs = h.vertices();
        for i in 0..vs.len() {
            let (a, b, c) = (vs[i], vs[(i + 1) % 4], vs[(i + 2) % 4]);
            assert!((b - a).cross2(&(c - b)) > 0.0);
        }
    }

    #[test]
    fn cube_with_center() {
        let mut pts = Vec::new();
        for i in 0..8 {
            pts.push(Vector::new3(
                (i & 1) as f64,
                ((i >> 1) & 1) as f64,
                ((i >> 2) & 1) as f64,
            ));
        }
        pts.push(Vector::new3(0.5, 0.5, 0.5));
        pts.push(Vector::new3(0.5, 0.0, 0.0));
        let e = extreme_points_3d(&pts, 1e-12).unwrap();
        assert_eq!(e.len(), 8);
    }
}
