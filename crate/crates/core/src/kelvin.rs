//! Kelvin-notation storage for plane tensors.
//!
//! A symmetric 2nd-rank tensor `L` is stored as `(L11, L22, √2 L12)` and a
//! 4th-rank tensor `T` with minor symmetries as the 3×3 matrix
//!
//! ```text
//! | T1111      T1122      √2 T1112 |
//! | T2211      T2222      √2 T2212 |
//! | √2 T1211   √2 T1222   2  T1212 |
//! ```
//!
//! With these factors the contraction of tensors is the ordinary matrix
//! product, inverse and transpose included, so every formula of the laminate
//! theory can be written directly on the 3×3 matrices.

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub(crate) const SQRT2: f64 = std::f64::consts::SQRT_2;

/// Relative determinant threshold used by the closed-form 3×3 inversions.
const DET_EPS: f64 = 1e-30;

/// Symmetric 3-vector for a symmetric plane 2nd-rank tensor.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct KelvinVec {
    pub v1: f64,
    pub v2: f64,
    pub v6: f64,
}

impl KelvinVec {
    pub const ZERO: KelvinVec = KelvinVec {
        v1: 0.0,
        v2: 0.0,
        v6: 0.0,
    };

    pub const fn new(v1: f64, v2: f64, v6: f64) -> Self {
        Self { v1, v2, v6 }
    }

    /// Builds the vector from tensor components, applying the √2 factor.
    pub fn from_tensor(l11: f64, l22: f64, l12: f64) -> Self {
        Self::new(l11, l22, SQRT2 * l12)
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.v1, self.v2, self.v6]
    }

    pub fn from_array(a: [f64; 3]) -> Self {
        Self::new(a[0], a[1], a[2])
    }

    pub fn dot(self, other: KelvinVec) -> f64 {
        self.v1 * other.v1 + self.v2 * other.v2 + self.v6 * other.v6
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn max_abs(self) -> f64 {
        self.v1.abs().max(self.v2.abs()).max(self.v6.abs())
    }

    /// Components of the tensor rotated by `delta` (counter-clockwise).
    pub fn rotated(self, delta: f64) -> Self {
        rotation(delta).mul_vec(self)
    }
}

impl Add for KelvinVec {
    type Output = KelvinVec;
    fn add(self, o: KelvinVec) -> KelvinVec {
        KelvinVec::new(self.v1 + o.v1, self.v2 + o.v2, self.v6 + o.v6)
    }
}

impl Sub for KelvinVec {
    type Output = KelvinVec;
    fn sub(self, o: KelvinVec) -> KelvinVec {
        KelvinVec::new(self.v1 - o.v1, self.v2 - o.v2, self.v6 - o.v6)
    }
}

impl Neg for KelvinVec {
    type Output = KelvinVec;
    fn neg(self) -> KelvinVec {
        KelvinVec::new(-self.v1, -self.v2, -self.v6)
    }
}

impl Mul<f64> for KelvinVec {
    type Output = KelvinVec;
    fn mul(self, s: f64) -> KelvinVec {
        KelvinVec::new(self.v1 * s, self.v2 * s, self.v6 * s)
    }
}

impl Mul<KelvinVec> for f64 {
    type Output = KelvinVec;
    fn mul(self, v: KelvinVec) -> KelvinVec {
        v * self
    }
}

/// Symmetric Kelvin matrix of a 4th-rank plane tensor with major symmetry.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct KelvinMat {
    pub m11: f64,
    pub m12: f64,
    pub m16: f64,
    pub m22: f64,
    pub m26: f64,
    pub m66: f64,
}

impl KelvinMat {
    pub const ZERO: KelvinMat = KelvinMat {
        m11: 0.0,
        m12: 0.0,
        m16: 0.0,
        m22: 0.0,
        m26: 0.0,
        m66: 0.0,
    };

    pub const fn new(m11: f64, m12: f64, m16: f64, m22: f64, m26: f64, m66: f64) -> Self {
        Self {
            m11,
            m12,
            m16,
            m22,
            m26,
            m66,
        }
    }

    pub fn identity() -> Self {
        Self::new(1.0, 0.0, 0.0, 1.0, 0.0, 1.0)
    }

    pub fn to_array(self) -> [[f64; 3]; 3] {
        [
            [self.m11, self.m12, self.m16],
            [self.m12, self.m22, self.m26],
            [self.m16, self.m26, self.m66],
        ]
    }

    /// Symmetric part of a general 3×3 array.
    pub fn from_array_sym(a: [[f64; 3]; 3]) -> Self {
        Self::new(
            a[0][0],
            0.5 * (a[0][1] + a[1][0]),
            0.5 * (a[0][2] + a[2][0]),
            a[1][1],
            0.5 * (a[1][2] + a[2][1]),
            a[2][2],
        )
    }

    pub fn as_general(self) -> KelvinMatAsym {
        KelvinMatAsym::from_array(self.to_array())
    }

    pub fn mul_vec(self, v: KelvinVec) -> KelvinVec {
        self.as_general().mul_vec(v)
    }

    pub fn max_abs(self) -> f64 {
        self.as_general().max_abs()
    }

    pub fn det(self) -> f64 {
        self.as_general().det()
    }

    pub fn inverse(self) -> Result<KelvinMat> {
        self.as_general()
            .inverse()
            .map(|m| KelvinMat::from_array_sym(m.to_array()))
    }

    /// Leading principal minors all positive.
    pub fn is_positive_definite(self) -> bool {
        let m1 = self.m11;
        let m2 = self.m11 * self.m22 - self.m12 * self.m12;
        m1 > 0.0 && m2 > 0.0 && self.det() > 0.0
    }

    /// Components of the tensor rotated by `delta` (counter-clockwise),
    /// computed as `R M Rᵀ` with the orthogonal Kelvin rotation matrix.
    pub fn rotated(self, delta: f64) -> Self {
        let r = rotation(delta);
        KelvinMat::from_array_sym((r * self.as_general() * r.transpose()).to_array())
    }
}

impl Add for KelvinMat {
    type Output = KelvinMat;
    fn add(self, o: KelvinMat) -> KelvinMat {
        KelvinMat::new(
            self.m11 + o.m11,
            self.m12 + o.m12,
            self.m16 + o.m16,
            self.m22 + o.m22,
            self.m26 + o.m26,
            self.m66 + o.m66,
        )
    }
}

impl Sub for KelvinMat {
    type Output = KelvinMat;
    fn sub(self, o: KelvinMat) -> KelvinMat {
        self + (-o)
    }
}

impl Neg for KelvinMat {
    type Output = KelvinMat;
    fn neg(self) -> KelvinMat {
        self * -1.0
    }
}

impl Mul<f64> for KelvinMat {
    type Output = KelvinMat;
    fn mul(self, s: f64) -> KelvinMat {
        KelvinMat::new(
            self.m11 * s,
            self.m12 * s,
            self.m16 * s,
            self.m22 * s,
            self.m26 * s,
            self.m66 * s,
        )
    }
}

impl Mul<KelvinMat> for f64 {
    type Output = KelvinMat;
    fn mul(self, m: KelvinMat) -> KelvinMat {
        m * self
    }
}

/// General Kelvin matrix: nine independent entries, minor symmetries only.
///
/// Used for the compliance coupling tensor and for intermediate products.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct KelvinMatAsym {
    pub m11: f64,
    pub m12: f64,
    pub m16: f64,
    pub m21: f64,
    pub m22: f64,
    pub m26: f64,
    pub m61: f64,
    pub m62: f64,
    pub m66: f64,
}

impl KelvinMatAsym {
    pub fn from_array(a: [[f64; 3]; 3]) -> Self {
        Self {
            m11: a[0][0],
            m12: a[0][1],
            m16: a[0][2],
            m21: a[1][0],
            m22: a[1][1],
            m26: a[1][2],
            m61: a[2][0],
            m62: a[2][1],
            m66: a[2][2],
        }
    }

    pub fn to_array(self) -> [[f64; 3]; 3] {
        [
            [self.m11, self.m12, self.m16],
            [self.m21, self.m22, self.m26],
            [self.m61, self.m62, self.m66],
        ]
    }

    pub fn zero() -> Self {
        Self::from_array([[0.0; 3]; 3])
    }

    pub fn transpose(self) -> Self {
        let a = self.to_array();
        Self::from_array(std::array::from_fn(|i| std::array::from_fn(|j| a[j][i])))
    }

    pub fn mul_vec(self, v: KelvinVec) -> KelvinVec {
        let a = self.to_array();
        let x = v.to_array();
        KelvinVec::from_array(std::array::from_fn(|i| {
            (0..3).map(|k| a[i][k] * x[k]).sum()
        }))
    }

    pub fn scale(self, s: f64) -> Self {
        let a = self.to_array();
        Self::from_array(a.map(|row| row.map(|x| x * s)))
    }

    pub fn max_abs(self) -> f64 {
        self.to_array()
            .iter()
            .flatten()
            .fold(0.0_f64, |m, x| m.max(x.abs()))
    }

    pub fn det(self) -> f64 {
        let a = self.to_array();
        a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
            - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
            + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
    }

    /// Closed-form adjugate inverse; fails when `|det| <= 1e-30 · scale³`.
    pub fn inverse(self) -> Result<KelvinMatAsym> {
        let a = self.to_array();
        let scale = self.max_abs();
        let det = self.det();
        if !(det.abs() > DET_EPS * scale * scale * scale) || !det.is_finite() {
            return Err(Error::SingularMatrix { size: 3 });
        }
        let cof = |r0: usize, r1: usize, c0: usize, c1: usize| {
            a[r0][c0] * a[r1][c1] - a[r0][c1] * a[r1][c0]
        };
        let adj = [
            [cof(1, 2, 1, 2), -cof(0, 2, 1, 2), cof(0, 1, 1, 2)],
            [-cof(1, 2, 0, 2), cof(0, 2, 0, 2), -cof(0, 1, 0, 2)],
            [cof(1, 2, 0, 1), -cof(0, 2, 0, 1), cof(0, 1, 0, 1)],
        ];
        Ok(Self::from_array(adj.map(|row| row.map(|x| x / det))))
    }

    /// True when the matrix equals its transpose to `tol` relative.
    pub fn is_major_symmetric(self, tol: f64) -> bool {
        let d = (self - self.transpose()).max_abs();
        d <= tol * self.max_abs().max(f64::MIN_POSITIVE)
    }
}

impl Add for KelvinMatAsym {
    type Output = KelvinMatAsym;
    fn add(self, o: KelvinMatAsym) -> KelvinMatAsym {
        let (a, b) = (self.to_array(), o.to_array());
        Self::from_array(std::array::from_fn(|i| {
            std::array::from_fn(|j| a[i][j] + b[i][j])
        }))
    }
}

impl Sub for KelvinMatAsym {
    type Output = KelvinMatAsym;
    fn sub(self, o: KelvinMatAsym) -> KelvinMatAsym {
        self + o.scale(-1.0)
    }
}

/// Matrix product.
impl Mul for KelvinMatAsym {
    type Output = KelvinMatAsym;
    fn mul(self, o: KelvinMatAsym) -> KelvinMatAsym {
        let (a, b) = (self.to_array(), o.to_array());
        Self::from_array(std::array::from_fn(|i| {
            std::array::from_fn(|j| (0..3).map(|k| a[i][k] * b[k][j]).sum())
        }))
    }
}

impl From<KelvinMat> for KelvinMatAsym {
    fn from(m: KelvinMat) -> Self {
        m.as_general()
    }
}

/// `sin_cos` that returns exact values on whole quarter turns, so that
/// ply angles like 90° give clean zeros.
pub fn sin_cos(x: f64) -> (f64, f64) {
    let q = x / std::f64::consts::FRAC_PI_2;
    let k = q.round();
    if (q - k).abs() < 1e-12 {
        match (k as i64).rem_euclid(4) {
            0 => (0.0, 1.0),
            1 => (1.0, 0.0),
            2 => (0.0, -1.0),
            _ => (-1.0, 0.0),
        }
    } else {
        x.sin_cos()
    }
}

/// Kelvin rotation matrix for a counter-clockwise rotation by `delta`.
///
/// It is orthogonal, so a 4th-rank tensor transforms as `R M Rᵀ`.
pub fn rotation(delta: f64) -> KelvinMatAsym {
    let (s, c) = sin_cos(delta);
    KelvinMatAsym::from_array([
        [c * c, s * s, -SQRT2 * c * s],
        [s * s, c * c, SQRT2 * c * s],
        [SQRT2 * c * s, -SQRT2 * c * s, c * c - s * s],
    ])
}

/// Largest entrywise difference, relative to the larger of the two scales.
pub fn rel_diff_mat(a: KelvinMatAsym, b: KelvinMatAsym) -> f64 {
    let scale = a.max_abs().max(b.max_abs());
    if scale == 0.0 {
        return 0.0;
    }
    (a - b).max_abs() / scale
}

pub fn rel_diff_vec(a: KelvinVec, b: KelvinVec) -> f64 {
    let scale = a.max_abs().max(b.max_abs());
    if scale == 0.0 {
        return 0.0;
    }
    (a - b).max_abs() / scale
}
