//! Fixed-shape 2x2 complex matrices.
//!
//! Inverses are only ever taken of SL(2,C) elements, so [`Mat2::inverse`] is
//! the adjugate guarded by a unimodularity check rather than a general
//! division.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// A 2x2 complex matrix `[[a, b], [c, d]]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "[[C64; 2]; 2]", into = "[[C64; 2]; 2]")]
pub struct Mat2 {
    pub a: C64,
    pub b: C64,
    pub c: C64,
    pub d: C64,
}

impl From<[[C64; 2]; 2]> for Mat2 {
    fn from(rows: [[C64; 2]; 2]) -> Self {
        Self::new(rows[0][0], rows[0][1], rows[1][0], rows[1][1])
    }
}

impl From<Mat2> for [[C64; 2]; 2] {
    fn from(m: Mat2) -> Self {
        [[m.a, m.b], [m.c, m.d]]
    }
}

impl Mat2 {
    pub const fn new(a: C64, b: C64, c: C64, d: C64) -> Self {
        Self { a, b, c, d }
    }

    /// Builds a matrix from real entries.
    pub fn real(a: f64, b: f64, c: f64, d: f64) -> Self {
        Self::new(a.into(), b.into(), c.into(), d.into())
    }

    pub fn identity() -> Self {
        Self::real(1.0, 0.0, 0.0, 1.0)
    }

    pub fn zero() -> Self {
        Self::real(0.0, 0.0, 0.0, 0.0)
    }

    pub fn scalar(s: C64) -> Self {
        Self::new(s, C64::new(0.0, 0.0), C64::new(0.0, 0.0), s)
    }

    pub fn trace(&self) -> C64 {
        self.a + self.d
    }

    pub fn det(&self) -> C64 {
        self.a * self.d - self.b * self.c
    }

    /// `tr(m) e - m`.
    pub fn adjugate(&self) -> Self {
        Self::new(self.d, -self.b, -self.c, self.a)
    }

    pub fn scale(&self, s: C64) -> Self {
        Self::new(self.a * s, self.b * s, self.c * s, self.d * s)
    }

    /// Distance of the determinant from 1.
    pub fn det_deviation(&self) -> f64 {
        (self.det() - 1.0).norm()
    }

    /// Inverse of a unimodular matrix.
    pub fn inverse(&self, eq_tol: f64) -> Result<Self> {
        let deviation = self.det_deviation();
        if deviation > eq_tol {
            return Err(Error::NonUnimodular { deviation });
        }
        Ok(self.adjugate())
    }

    /// `m n m^-1 n^-1` for unimodular `m`, `n`.
    pub fn commutator(&self, other: &Self, eq_tol: f64) -> Result<Self> {
        let mi = self.inverse(eq_tol)?;
        let ni = other.inverse(eq_tol)?;
        Ok(*self * *other * mi * ni)
    }

    /// Entrywise maximum of complex absolute values.
    pub fn max_norm(&self) -> f64 {
        self.a
            .norm()
            .max(self.b.norm())
            .max(self.c.norm())
            .max(self.d.norm())
    }

    pub fn entries(&self) -> [C64; 4] {
        [self.a, self.b, self.c, self.d]
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, o: Mat2) -> Mat2 {
        Mat2::new(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, o: Mat2) -> Mat2 {
        Mat2::new(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)
    }
}

impl Neg for Mat2 {
    type Output = Mat2;
    fn neg(self) -> Mat2 {
        Mat2::new(-self.a, -self.b, -self.c, -self.d)
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, o: Mat2) -> Mat2 {
        Mat2::new(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )
    }
}

impl Mul<C64> for Mat2 {
    type Output = Mat2;
    fn mul(self, s: C64) -> Mat2 {
        self.scale(s)
    }
}

/// Residuals of the three determinant identities for arbitrary 2x2 matrices:
///
/// 1. `mn + nm - tr(m) n - tr(n) m + tr(m n*) e = 0`
/// 2. `det(m + n) - det(m) - det(n) - tr(m n*) = 0`
/// 3. `det(e + m) - 1 - det(m) - tr(m) = 0`
pub fn lemma_det_residuals(m: &Mat2, n: &Mat2) -> [f64; 3] {
    let cross = (*m * n.adjugate()).trace();
    let first = *m * *n + *n * *m - n.scale(m.trace()) - m.scale(n.trace()) + Mat2::scalar(cross);
    let second = (*m + *n).det() - m.det() - n.det() - cross;
    let third = (Mat2::identity() + *m).det() - 1.0 - m.det() - m.trace();
    [first.max_norm(), second.norm(), third.norm()]
}

/// Trace of the commutator of a pair with traces `t1`, `t2` and `t12 = tr(x1 x2)`.
pub fn trace_commutator(t1: C64, t2: C64, t12: C64) -> C64 {
    t12 * t12 - t1 * t2 * t12 + t1 * t1 + t2 * t2 - 2.0
}
