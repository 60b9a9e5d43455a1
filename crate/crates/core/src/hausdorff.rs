//! Hausdorff distance of convex bodies through d_H = sup_u |h_K(u) − h_L(u)|.
//!
//! In the plane the support functions are piecewise sinusoids, so merging
//! the two normal fans gives arcs on which h_K − h_L = d·u + c in closed
//! form and the supremum is exact. In space the sup is sampled on a
//! direction cover and bracketed with the support-function Lipschitz bound.

use std::f64::consts::{FRAC_PI_2, TAU};
use std::sync::OnceLock;

use serde::Serialize;

use crate::convex::body::{Body, Shape};
use crate::convex::vector::{Orthogonal, Vector};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HausdorffResult {
    pub lower: f64,
    pub upper: f64,
    pub witness_direction: Vector,
}

/// Normal fan of a planar body: `verts[i]` maximizes u·x for direction
/// angles from `starts[i]` up to the next start (cyclically).
#[derive(Debug, Clone, Default)]
pub struct Fan {
    starts: Vec<f64>,
    dirs: Vec<Vector>,
    verts: Vec<Vector>,
    radius: f64,
}

impl Fan {
    pub fn new(body: &Body) -> Result<Self> {
        if body.dim() != 2 {
            return Err(Error::UnsupportedDimension(body.dim()));
        }
        let radius = body.rounding_radius();
        let v = body.core_points();
        if v.len() == 1 {
            return Ok(Self {
                starts: vec![0.0],
                dirs: vec![Vector::new2(1.0, 0.0)],
                verts: vec![v[0]],
                radius,
            });
        }
        let n = v.len();
        let mut entries: Vec<(f64, Vector)> = (0..n)
            .map(|i| {
                let e = v[(i + 1) % n] - v[i];
                // outward normal of a CCW edge is (dy, −dx)
                let ang = (-e.x()).atan2(e.y()).rem_euclid(TAU);
                (ang, v[(i + 1) % n])
            })
            .collect();
        entries.sort_by(|a, b| a.0.total_cmp(&b.0));
        Ok(Self {
            starts: entries.iter().map(|e| e.0).collect(),
            dirs: entries.iter().map(|e| Vector::polar(e.0)).collect(),
            verts: entries.iter().map(|e| e.1).collect(),
            radius,
        })
    }

    pub fn len(&self) -> usize {
        self.starts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.starts.is_empty()
    }

    /// Writes the fan of the body rotated by `theta` into `out`, reusing its buffers.
    pub fn rotate_into(&self, theta: f64, out: &mut Fan) {
        let theta = theta.rem_euclid(TAU);
        let rot = Orthogonal::rotation2(theta);
        let n = self.len();
        let split = self.starts.partition_point(|s| s + theta < TAU);
        out.starts.clear();
        out.dirs.clear();
        out.verts.clear();
        out.radius = self.radius;
        for i in (split..n).chain(0..split) {
            let s = self.starts[i] + theta;
            out.starts.push(if i >= split { (s - TAU).max(0.0) } else { s });
            out.dirs.push(rot.apply(&self.dirs[i]));
            out.verts.push(rot.apply(&self.verts[i]));
        }
    }

    pub fn rotated(&self, theta: f64) -> Fan {
        let mut out = Fan::default();
        self.rotate_into(theta, &mut out);
        out
    }
}

const QUADRANTS: [Vector; 4] = [
    Vector::new2(1.0, 0.0),
    Vector::new2(0.0, 1.0),
    Vector::new2(-1.0, 0.0),
    Vector::new2(0.0, -1.0),
];

/// sup over unit u of |h_a(u) − h_b(u)| with a maximizing direction.
pub fn hausdorff_fans(a: &Fan, b: &Fan) -> (f64, Vector) {
    let c = a.radius - b.radius;
    let (na, nb) = (a.len(), b.len());
    // the cone containing angle 0 is the one that started last
    let mut va = a.verts[na - 1];
    let mut vb = b.verts[nb - 1];
    let (mut ia, mut ib, mut iq) = (0usize, 0usize, 1usize);
    let mut t = 0.0f64;
    let mut u0 = QUADRANTS[0];
    let mut best = -1.0f64;
    let mut best_u = u0;
    // advance past events sitting exactly at 0
    while ia < na && a.starts[ia] <= 0.0 {
        va = a.verts[ia];
        ia += 1;
    }
    while ib < nb && b.starts[ib] <= 0.0 {
        vb = b.verts[ib];
        ib += 1;
    }
    loop {
        let sa = if ia < na { a.starts[ia] } else { TAU };
        let sb = if ib < nb { b.starts[ib] } else { TAU };
        let sq = if iq < 4 { iq as f64 * FRAC_PI_2 } else { TAU };
        let next = sa.min(sb).min(sq);
        let u1 = if next == sa && ia < na {
            a.dirs[ia]
        } else if next == sb && ib < nb {
            b.dirs[ib]
        } else if iq < 4 {
            QUADRANTS[iq]
        } else {
            QUADRANTS[0]
        };
        if next > t {
            let d = va - vb;
            let g0 = d.dot(&u0) + c;
            if g0.abs() > best {
                best = g0.abs();
                best_u = u0;
            }
            // stationary points ±d/|d| if they fall inside the arc (< π/2 wide)
            let dn = d.norm();
            if dn > 0.0 {
                let inside = |w: &Vector| u0.cross2(w) >= 0.0 && w.cross2(&u1) >= 0.0;
                if inside(&d) && dn + c > best {
                    best = dn + c;
                    best_u = d * (1.0 / dn);
                }
                let m = -d;
                if inside(&m) && (c - dn).abs() > best {
                    best = (c - dn).abs();
                    best_u = m * (1.0 / dn);
                }
            }
        }
        if next >= TAU {
            break;
        }
        t = next;
        u0 = u1;
        while ia < na && a.starts[ia] <= t {
            va = a.verts[ia];
            ia += 1;
        }
        while ib < nb && b.starts[ib] <= t {
            vb = b.verts[ib];
            ib += 1;
        }
        while iq < 4 && (iq as f64 * FRAC_PI_2) <= t {
            iq += 1;
        }
    }
    (best.max(0.0), best_u)
}

/// Exact planar Hausdorff distance.
pub fn hausdorff_2d_exact(k: &Body, l: &Body) -> Result<HausdorffResult> {
    if k.dim() != l.dim() {
        return Err(Error::DimensionMismatch(k.dim(), l.dim()));
    }
    let (value, u) = hausdorff_fans(&Fan::new(k)?, &Fan::new(l)?);
    Ok(HausdorffResult {
        lower: value,
        upper: value,
        witness_direction: u,
    })
}

/// Finite set of unit directions and its covering radius measured as chord
/// length: every unit vector is within `covering_radius` of some direction.
#[derive(Debug, Clone)]
pub struct SphereCover {
    pub directions: Vec<Vector>,
    pub covering_radius: f64,
}

/// `m` equally spaced directions on the circle.
pub fn circle_cover(m: usize) -> SphereCover {
    let m = m.max(3);
    SphereCover {
        directions: (0..m).map(|k| Vector::polar(TAU * k as f64 / m as f64)).collect(),
        covering_radius: 2.0 * (std::f64::consts::PI / (2.0 * m as f64)).sin(),
    }
}

pub const MAX_SPHERE_LEVEL: usize = 6;

/// Vertices of the `level`-times subdivided octahedron: 4·4^level + 2 directions.
pub fn octahedral_cover(level: usize) -> SphereCover {
    let mut verts: Vec<Vector> = vec![
        Vector::new3(1.0, 0.0, 0.0),
        Vector::new3(-1.0, 0.0, 0.0),
        Vector::new3(0.0, 1.0, 0.0),
        Vector::new3(0.0, -1.0, 0.0),
        Vector::new3(0.0, 0.0, 1.0),
        Vector::new3(0.0, 0.0, -1.0),
    ];
    let mut faces: Vec<[usize; 3]> = vec![
        [0, 2, 4],
        [2, 1, 4],
        [1, 3, 4],
        [3, 0, 4],
        [2, 0, 5],
        [1, 2, 5],
        [3, 1, 5],
        [0, 3, 5],
    ];
    for _ in 0..level {
        let mut mids = std::collections::HashMap::new();
        let mut mid = |i: usize, j: usize, verts: &mut Vec<Vector>| -> usize {
            *mids.entry((i.min(j), i.max(j))).or_insert_with(|| {
                verts.push((verts[i] + verts[j]).normalized());
                verts.len() - 1
            })
        };
        let mut next = Vec::with_capacity(faces.len() * 4);
        for [a, b, c] in faces {
            let ab = mid(a, b, &mut verts);
            let bc = mid(b, c, &mut verts);
            let ca = mid(c, a, &mut verts);
            next.extend([[a, ab, ca], [ab, b, bc], [ca, bc, c], [ab, bc, ca]]);
        }
        faces = next;
    }
    let covering_radius = faces
        .iter()
        .map(|f| triangle_covering_radius(&verts[f[0]], &verts[f[1]], &verts[f[2]]))
        .fold(0.0, f64::max);
    SphereCover {
        directions: verts,
        covering_radius,
    }
}

/// Largest chord distance from a point of the spherical triangle to its
/// nearest corner. The maximum of the nearest-site distance over the triangle
/// sits at the circumcenter (when inside) or where a bisector meets an edge.
fn triangle_covering_radius(a: &Vector, b: &Vector, c: &Vector) -> f64 {
    let pts = [*a, *b, *c];
    let nearest = |x: &Vector| pts.iter().map(|p| p.dist(x)).fold(f64::INFINITY, f64::min);
    let orient = a.dot(&b.cross3(c)).signum();
    let inside = |x: &Vector| {
        orient * x.dot(&a.cross3(b)) >= -1e-15
            && orient * x.dot(&b.cross3(c)) >= -1e-15
            && orient * x.dot(&c.cross3(a)) >= -1e-15
    };
    let mut worst: f64 = 0.0;
    let mut cc = (*b - *a).cross3(&(*c - *a)).normalized();
    if cc.dot(&(*a + *b + *c)) < 0.0 {
        cc = -cc;
    }
    if inside(&cc) {
        worst = worst.max(nearest(&cc));
    }
    for (i, j) in [(0, 1), (1, 2), (2, 0)] {
        let n = pts[i] - pts[j];
        for (p, q) in [(a, b), (b, c), (c, a)] {
            let den = (*p - *q).dot(&n);
            if den.abs() < 1e-300 {
                continue;
            }
            let s = p.dot(&n) / den;
            if (0.0..=1.0).contains(&s) {
                let x = (*p * (1.0 - s) + *q * s).normalized();
                worst = worst.max(nearest(&x));
            }
        }
    }
    // small outward rounding so the bound stays rigorous
    worst * (1.0 + 1e-12)
}

/// Cached [`octahedral_cover`] for levels up to [`MAX_SPHERE_LEVEL`].
pub fn sphere_cover(level: usize) -> &'static SphereCover {
    static CACHE: [OnceLock<SphereCover>; MAX_SPHERE_LEVEL + 1] =
        [const { OnceLock::new() }; MAX_SPHERE_LEVEL + 1];
    let level = level.min(MAX_SPHERE_LEVEL);
    CACHE[level].get_or_init(|| octahedral_cover(level))
}

/// Smallest cached sphere cover with at least `m` directions.
pub fn sphere_cover_with_at_least(m: usize) -> &'static SphereCover {
    let level = (0..=MAX_SPHERE_LEVEL)
        .find(|&l| 4 * 4usize.pow(l as u32) + 2 >= m)
        .unwrap_or(MAX_SPHERE_LEVEL);
    sphere_cover(level)
}

/// Bracket of d_H(K, σL) from a direction cover, with σ applied to L
/// implicitly (h_{σL}(u) = h_L(σᵀu)).
pub fn hausdorff_bounds_with(
    k: &Body,
    l: &Body,
    sigma: Option<&Orthogonal>,
    cover: &SphereCover,
) -> Result<HausdorffResult> {
    if k.dim() != l.dim() {
        return Err(Error::DimensionMismatch(k.dim(), l.dim()));
    }
    if cover.directions.first().map(|d| d.dim()) != Some(k.dim()) {
        return Err(Error::DimensionMismatch(k.dim(), cover.directions.first().map_or(0, |d| d.dim())));
    }
    let st = sigma.map(Orthogonal::transpose);
    let mut best = -1.0f64;
    let mut best_u = cover.directions[0];
    for u in &cover.directions {
        let hk = support_value(k, u);
        let hl = match &st {
            Some(t) => support_value(l, &t.apply(u)),
            None => support_value(l, u),
        };
        let d = (hk - hl).abs();
        if d > best {
            best = d;
            best_u = *u;
        }
    }
    let lip = k.support_lipschitz() + l.support_lipschitz();
    Ok(HausdorffResult {
        lower: best,
        upper: best + lip * cover.covering_radius,
        witness_direction: best_u,
    })
}

#[inline]
fn support_value(body: &Body, u: &Vector) -> f64 {
    match body.shape() {
        Shape::Polytope(p) => p.vertices().iter().map(|v| v.dot(u)).fold(f64::NEG_INFINITY, f64::max),
        _ => body.support(u).0,
    }
}

/// Sampled two-sided bounds from about `m` covering directions (2D or 3D).
pub fn hausdorff_nd_bounds(k: &Body, l: &Body, m: usize) -> Result<HausdorffResult> {
    match k.dim() {
        2 => hausdorff_bounds_with(k, l, None, &circle_cover(m)),
        3 => hausdorff_bounds_with(k, l, None, sphere_cover_with_at_least(m)),
        d => Err(Error::UnsupportedDimension(d)),
    }
}
