//! Fixed-capacity Euclidean vectors and orthogonal matrices for n ∈ {2, 3}.

use std::fmt;
use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A point or direction in R² or R³.
///
/// Storage is a fixed `[f64; 3]`; coordinates beyond `dim` are kept at zero so
/// that component-wise arithmetic never needs to look at the dimension.
#[derive(Clone, Copy, PartialEq)]
pub struct Vector {
    c: [f64; 3],
    dim: u8,
}

impl Vector {
    pub const fn new2(x: f64, y: f64) -> Self {
        Self { c: [x, y, 0.0], dim: 2 }
    }

    pub const fn new3(x: f64, y: f64, z: f64) -> Self {
        Self { c: [x, y, z], dim: 3 }
    }

    pub fn zeros(dim: usize) -> Self {
        assert!(dim == 2 || dim == 3, "dimension {dim} not supported");
        Self { c: [0.0; 3], dim: dim as u8 }
    }

    /// The canonical basis vector e^(axis+1).
    pub fn unit(dim: usize, axis: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.c[axis] = 1.0;
        v
    }

    pub fn from_slice(coords: &[f64]) -> Result<Self> {
        match coords.len() {
            2 | 3 => {}
            d => return Err(Error::UnsupportedDimension(d)),
        }
        if coords.iter().any(|x| !x.is_finite()) {
            return Err(Error::Parse("non-finite coordinate".into()));
        }
        let mut v = Self::zeros(coords.len());
        v.c[..coords.len()].copy_from_slice(coords);
        Ok(v)
    }

    /// Unit vector at angle `theta` in the plane.
    pub fn polar(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Self::new2(c, s)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    #[inline]
    pub fn x(&self) -> f64 {
        self.c[0]
    }

    #[inline]
    pub fn y(&self) -> f64 {
        self.c[1]
    }

    #[inline]
    pub fn z(&self) -> f64 {
        self.c[2]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.c[..self.dim()]
    }

    #[inline]
    pub fn dot(&self, other: &Vector) -> f64 {
        self.c[0] * other.c[0] + self.c[1] * other.c[1] + self.c[2] * other.c[2]
    }

    #[inline]
    pub fn norm_squared(&self) -> f64 {
        self.dot(self)
    }

    #[inline]
    pub fn norm(&self) -> f64 {
        self.norm_squared().sqrt()
    }

    pub fn normalized(&self) -> Vector {
        *self * (1.0 / self.norm())
    }

    #[inline]
    pub fn dist(&self, other: &Vector) -> f64 {
        (*self - *other).norm()
    }

    /// z-component of the planar cross product.
    #[inline]
    pub fn cross2(&self, other: &Vector) -> f64 {
        self.c[0] * other.c[1] - self.c[1] * other.c[0]
    }

    pub fn cross3(&self, o: &Vector) -> Vector {
        Vector::new3(
            self.c[1] * o.c[2] - self.c[2] * o.c[1],
            self.c[2] * o.c[0] - self.c[0] * o.c[2],
            self.c[0] * o.c[1] - self.c[1] * o.c[0],
        )
    }

    /// Counter-clockwise quarter turn (planar).
    #[inline]
    pub fn perp(&self) -> Vector {
        Vector::new2(-self.c[1], self.c[0])
    }

    pub fn max_abs_diff(&self, other: &Vector) -> f64 {
        (0..3)
            .map(|i| (self.c[i] - other.c[i]).abs())
            .fold(0.0, f64::max)
    }
}

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.as_slice()).finish()
    }
}

impl Index<usize> for Vector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.c[i]
    }
}

impl IndexMut<usize> for Vector {
    fn index_mut(&mut self, i: usize) -> &mut f64 {
        &mut self.c[i]
    }
}

impl Add for Vector {
    type Output = Vector;
    #[inline]
    fn add(self, o: Vector) -> Vector {
        Vector {
            c: [self.c[0] + o.c[0], self.c[1] + o.c[1], self.c[2] + o.c[2]],
            dim: self.dim,
        }
    }
}

impl AddAssign for Vector {
    fn add_assign(&mut self, o: Vector) {
        *self = *self + o;
    }
}

impl Sub for Vector {
    type Output = Vector;
    #[inline]
    fn sub(self, o: Vector) -> Vector {
        Vector {
            c: [self.c[0] - o.c[0], self.c[1] - o.c[1], self.c[2] - o.c[2]],
            dim: self.dim,
        }
    }
}

impl Mul<f64> for Vector {
    type Output = Vector;
    #[inline]
    fn mul(self, s: f64) -> Vector {
        Vector {
            c: [self.c[0] * s, self.c[1] * s, self.c[2] * s],
            dim: self.dim,
        }
    }
}

impl Neg for Vector {
    type Output = Vector;
    fn neg(self) -> Vector {
        self * -1.0
    }
}

impl Serialize for Vector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.as_slice().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Vector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let coords = Vec::<f64>::deserialize(d)?;
        Vector::from_slice(&coords).map_err(serde::de::Error::custom)
    }
}

/// An orthogonal n×n matrix (σᵀσ = I), stored row-major in a 3×3 block.
#[derive(Clone, Copy, PartialEq)]
pub struct Orthogonal {
    m: [[f64; 3]; 3],
    dim: u8,
}

impl Orthogonal {
    pub fn identity(dim: usize) -> Self {
        let mut m = [[0.0; 3]; 3];
        for (i, row) in m.iter_mut().enumerate().take(dim) {
            row[i] = 1.0;
        }
        Self { m, dim: dim as u8 }
    }

    /// Planar rotation by `theta` (counter-clockwise).
    pub fn rotation2(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Self {
            m: [[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 0.0]],
            dim: 2,
        }
    }

    /// Reflection flipping the last coordinate.
    pub fn reflection(dim: usize) -> Self {
        let mut r = Self::identity(dim);
        r.m[dim - 1][dim - 1] = -1.0;
        r
    }

    /// Rotation matrix of a (not necessarily normalized) quaternion `w + xi + yj + zk`.
    pub fn from_quaternion(q: [f64; 4]) -> Self {
        let n = (q[0] * q[0] + q[1] * q[1] + q[2] * q[2] + q[3] * q[3]).sqrt();
        let [w, x, y, z] = q.map(|c| c / n);
        Self {
            m: [
                [
                    1.0 - 2.0 * (y * y + z * z),
                    2.0 * (x * y - w * z),
                    2.0 * (x * z + w * y),
                ],
                [
                    2.0 * (x * y + w * z),
                    1.0 - 2.0 * (x * x + z * z),
                    2.0 * (y * z - w * x),
                ],
                [
                    2.0 * (x * z - w * y),
                    2.0 * (y * z + w * x),
                    1.0 - 2.0 * (x * x + y * y),
                ],
            ],
            dim: 3,
        }
    }

    /// Builds from row-major entries, checking orthogonality to `tol`.
    pub fn from_rows(rows: &[Vec<f64>], tol: f64) -> Result<Self> {
        let dim = rows.len();
        if !(dim == 2 || dim == 3) || rows.iter().any(|r| r.len() != dim) {
            return Err(Error::BadParameter("orthogonal matrix must be 2x2 or 3x3".into()));
        }
        let mut m = [[0.0; 3]; 3];
        for (i, r) in rows.iter().enumerate() {
            m[i][..dim].copy_from_slice(r);
        }
        let o = Self { m, dim: dim as u8 };
        if o.orthogonality_defect() > tol {
            return Err(Error::BadParameter("matrix is not orthogonal".into()));
        }
        Ok(o)
    }

    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.m[i][j]
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        let d = self.dim();
        self.m[..d].iter().map(|r| r[..d].to_vec()).collect()
    }

    #[inline]
    pub fn apply(&self, v: &Vector) -> Vector {
        let m = &self.m;
        let mut out = Vector::zeros(self.dim());
        for i in 0..self.dim() {
            out[i] = m[i][0] * v[0] + m[i][1] * v[1] + m[i][2] * v[2];
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut t = *self;
        for i in 0..3 {
            for j in 0..3 {
                t.m[i][j] = self.m[j][i];
            }
        }
        t
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Orthogonal) -> Self {
        let mut out = [[0.0; 3]; 3];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                *e = (0..3).map(|k| self.m[i][k] * other.m[k][j]).sum();
            }
        }
        Self { m: out, dim: self.dim }
    }

    pub fn det(&self) -> f64 {
        let m = &self.m;
        if self.dim == 2 {
            m[0][0] * m[1][1] - m[0][1] * m[1][0]
        } else {
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        }
    }

    /// max |σᵀσ − I| entry.
    pub fn orthogonality_defect(&self) -> f64 {
        let p = self.transpose().compose(self);
        let d = self.dim();
        let mut worst: f64 = 0.0;
        for i in 0..d {
            for j in 0..d {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((p.m[i][j] - target).abs());
            }
        }
        worst
    }

    /// Rotation angle of the proper part: arccos((tr − 1)/2) in 3D, |θ| in 2D.
    pub fn rotation_angle(&self) -> f64 {
        let p = if self.det() < 0.0 {
            self.compose(&Orthogonal::reflection(self.dim()))
        } else {
            *self
        };
        if self.dim == 2 {
            p.m[1][0].atan2(p.m[0][0]).abs()
        } else {
            let tr = p.m[0][0] + p.m[1][1] + p.m[2][2];
            ((tr - 1.0) / 2.0).clamp(-1.0, 1.0).acos()
        }
    }
}

impl fmt::Debug for Orthogonal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows()).finish()
    }
}

impl Serialize for Orthogonal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows().serialize(s)
    }
}
