//! Real quaternions and complex quaternions (biquaternions).
//!
//! Storage is always the coefficient list on the basis `{1, e1, e2, e3}` with
//! `e_i^2 = -1` and `e1 e2 = e3` cyclically. The imaginary unit `i` of the
//! complex coefficients commutes with every basis element, so a biquaternion
//! can equally be read as `u + i v` with `u`, `v` real quaternions, or as a
//! scalar part plus a vector part. Both readings are views over the same four
//! complex numbers.

use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub, SubAssign};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Below this norm `exp_pure` switches to the series of `sin|q|/|q|`.
const EXP_SERIES_THRESHOLD: f64 = 1e-12;

/// Hamilton product of two coefficient lists.
///
/// Shared by the real and the complex-coefficient products so that both use
/// the same table and the same summation order.
#[inline]
pub(crate) fn hamilton<T>(a: [T; 4], b: [T; 4]) -> [T; 4]
where
    T: Copy + Add<Output = T> + Sub<Output = T> + Mul<Output = T>,
{
    [
        a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
        a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
        a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
        a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0],
    ]
}

/// Real quaternion `w0 + w1 e1 + w2 e2 + w3 e3`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Quaternion(pub [f64; 4]);

impl Quaternion {
    pub const ZERO: Self = Self([0.0; 4]);
    pub const ONE: Self = Self([1.0, 0.0, 0.0, 0.0]);
    pub const E1: Self = Self([0.0, 1.0, 0.0, 0.0]);
    pub const E2: Self = Self([0.0, 0.0, 1.0, 0.0]);
    pub const E3: Self = Self([0.0, 0.0, 0.0, 1.0]);

    #[inline]
    pub fn new(w0: f64, w1: f64, w2: f64, w3: f64) -> Self {
        Self([w0, w1, w2, w3])
    }

    /// Pure vector quaternion from a 3-vector.
    #[inline]
    pub fn pure(v: [f64; 3]) -> Self {
        Self([0.0, v[0], v[1], v[2]])
    }

    #[inline]
    pub fn scalar(&self) -> f64 {
        self.0[0]
    }

    #[inline]
    pub fn vector(&self) -> [f64; 3] {
        [self.0[1], self.0[2], self.0[3]]
    }

    /// Negates the vector part.
    #[inline]
    pub fn conj(&self) -> Self {
        Self([self.0[0], -self.0[1], -self.0[2], -self.0[3]])
    }

    #[inline]
    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(|x| x * x).sum()
    }

    #[inline]
    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    #[inline]
    pub fn is_pure(&self) -> bool {
        self.0[0] == 0.0
    }

    #[inline]
    pub fn scale(&self, s: f64) -> Self {
        Self(self.0.map(|x| x * s))
    }

    /// Quaternionic exponential of a pure vector: `cos|q| + (q/|q|) sin|q|`.
    ///
    /// Returns a domain error if the scalar part is nonzero.
    pub fn exp_pure(&self) -> Result<Self> {
        if !self.is_pure() {
            return Err(Error::Domain(format!(
                "exp_pure requires a pure vector argument, scalar part is {}",
                self.0[0]
            )));
        }
        Ok(exp_vector(self.vector()))
    }
}

/// `exp(v)` for the pure quaternion with vector part `v`; always a unit quaternion.
#[inline]
pub fn exp_vector(v: [f64; 3]) -> Quaternion {
    let theta = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    let (cos, sinc) = if theta < EXP_SERIES_THRESHOLD {
        (1.0 - 0.5 * theta * theta, 1.0 - theta * theta / 6.0)
    } else {
        let (s, c) = theta.sin_cos();
        (c, s / theta)
    };
    Quaternion([cos, sinc * v[0], sinc * v[1], sinc * v[2]])
}

impl Add for Quaternion {
    type Output = Self;
    #[inline]
    fn add(self, rhs: Self) -> Self {
        Self([
            self.0[0] + rhs.0[0],
            self.0[1] + rhs.0[1],
            self.0[2] + rhs.0[2],
            self.0[3] + rhs.0[3],
        ])
    }
}

impl Sub for Quaternion {
    type Output = Self;
    #[inline]
    fn sub(self, rhs: Self) -> Self {
        Self([
            self.0[0] - rhs.0[0],
            self.0[1] - rhs.0[1],
            self.0[2] - rhs.0[2],
            self.0[3] - rhs.0[3],
        ])
    }
}

impl Neg for Quaternion {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self(self.0.map(|x| -x))
    }
}

impl Mul for Quaternion {
    type Output = Self;
    #[inline]
    fn mul(self, rhs: Self) -> Self {
        Self(hamilton(self.0, rhs.0))
    }
}

impl Mul<f64> for Quaternion {
    type Output = Self;
    #[inline]
    fn mul(self, rhs: f64) -> Self {
        self.scale(rhs)
    }
}

/// Left action of a real quaternion on a biquaternion.
impl Mul<Biquaternion> for Quaternion {
    type Output = Biquaternion;
    #[inline]
    fn mul(self, rhs: Biquaternion) -> Biquaternion {
        Biquaternion::from(self) * rhs
    }
}

/// Which conjugation to apply to a biquaternion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Conjugation {
    /// Negate the vector part (of both `u` and `v`).
    Quaternionic,
    /// Complex-conjugate all four coefficients.
    Complex,
}

/// Quaternion with complex coefficients on the basis `{1, e1, e2, e3}`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Biquaternion(pub [Complex64; 4]);

/// All four projections of a biquaternion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Decomposition {
    /// Component-wise real part `u`.
    pub re: Quaternion,
    /// Component-wise imaginary part `v`.
    pub im: Quaternion,
    /// Scalar part `u0 + i v0`.
    pub scalar: Complex64,
    /// Vector part `u_vec + i v_vec`, with zero scalar coefficient.
    pub vector: Biquaternion,
}

const CZERO: Complex64 = Complex64::new(0.0, 0.0);

impl Biquaternion {
    pub const ZERO: Self = Self([CZERO; 4]);
    pub const ONE: Self = Self([Complex64::new(1.0, 0.0), CZERO, CZERO, CZERO]);

    #[inline]
    pub fn new(c0: Complex64, c1: Complex64, c2: Complex64, c3: Complex64) -> Self {
        Self([c0, c1, c2, c3])
    }

    /// `u + i v`.
    #[inline]
    pub fn from_parts(u: Quaternion, v: Quaternion) -> Self {
        Self(std::array::from_fn(|k| Complex64::new(u.0[k], v.0[k])))
    }

    #[inline]
    pub fn from_scalar(s: Complex64) -> Self {
        Self([s, CZERO, CZERO, CZERO])
    }

    #[inline]
    pub fn from_vector(v: [Complex64; 3]) -> Self {
        Self([CZERO, v[0], v[1], v[2]])
    }

    /// Pure vector with real coefficients.
    #[inline]
    pub fn real_vector(v: [f64; 3]) -> Self {
        Self::from_vector(v.map(|x| Complex64::new(x, 0.0)))
    }

    #[inline]
    pub fn re(&self) -> Quaternion {
        Quaternion(self.0.map(|c| c.re))
    }

    #[inline]
    pub fn im(&self) -> Quaternion {
        Quaternion(self.0.map(|c| c.im))
    }

    /// `Sc(w) = u0 + i v0`.
    #[inline]
    pub fn sc(&self) -> Complex64 {
        self.0[0]
    }

    /// `Vec(w) = u_vec + i v_vec`.
    #[inline]
    pub fn vec_part(&self) -> Self {
        Self([CZERO, self.0[1], self.0[2], self.0[3]])
    }

    #[inline]
    pub fn vector(&self) -> [Complex64; 3] {
        [self.0[1], self.0[2], self.0[3]]
    }

    pub fn decompose(&self) -> Decomposition {
        Decomposition {
            re: self.re(),
            im: self.im(),
            scalar: self.sc(),
            vector: self.vec_part(),
        }
    }

    pub fn conjugate(&self, kind: Conjugation) -> Self {
        match kind {
            Conjugation::Quaternionic => Self([self.0[0], -self.0[1], -self.0[2], -self.0[3]]),
            Conjugation::Complex => Self(self.0.map(|c| c.conj())),
        }
    }

    /// Sum of squared moduli of the four coefficients.
    #[inline]
    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(|c| c.norm_sqr()).sum()
    }

    #[inline]
    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Largest coefficient modulus.
    #[inline]
    pub fn max_abs(&self) -> f64 {
        self.0.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    #[inline]
    pub fn scale(&self, s: Complex64) -> Self {
        Self(self.0.map(|c| c * s))
    }

    #[inline]
    pub fn scale_re(&self, s: f64) -> Self {
        Self(self.0.map(|c| c * s))
    }

    /// Multiplication by the commuting imaginary unit.
    #[inline]
    pub fn mul_i(&self) -> Self {
        Self(self.0.map(|c| Complex64::new(-c.im, c.re)))
    }

    /// Product through the split `(u1 + i v1)(u2 + i v2) = u1u2 - v1v2 + i(u1v2 + v1u2)`.
    pub fn mul_split(&self, rhs: &Self) -> Self {
        let (u1, v1) = (self.re(), self.im());
        let (u2, v2) = (rhs.re(), rhs.im());
        Self::from_parts(u1 * u2 - v1 * v2, u1 * v2 + v1 * u2)
    }

    /// Product as a Hamilton product over complex coefficients.
    #[inline]
    pub fn mul_complex(&self, rhs: &Self) -> Self {
        Self(hamilton(self.0, rhs.0))
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|c| c.re.is_finite() && c.im.is_finite())
    }
}

impl From<Quaternion> for Biquaternion {
    #[inline]
    fn from(q: Quaternion) -> Self {
        Self(q.0.map(|x| Complex64::new(x, 0.0)))
    }
}

impl Index<usize> for Biquaternion {
    type Output = Complex64;
    #[inline]
    fn index(&self, k: usize) -> &Complex64 {
        &self.0[k]
    }
}

impl IndexMut<usize> for Biquaternion {
    #[inline]
    fn index_mut(&mut self, k: usize) -> &mut Complex64 {
        &mut self.0[k]
    }
}

impl Add for Biquaternion {
    type Output = Self;
    #[inline]
    fn add(self, rhs: Self) -> Self {
        Self(std::array::from_fn(|k| self.0[k] + rhs.0[k]))
    }
}

impl AddAssign for Biquaternion {
    #[inline]
    fn add_assign(&mut self, rhs: Self) {
        for k in 0..4 {
            self.0[k] += rhs.0[k];
        }
    }
}

impl Sub for Biquaternion {
    type Output = Self;
    #[inline]
    fn sub(self, rhs: Self) -> Self {
        Self(std::array::from_fn(|k| self.0[k] - rhs.0[k]))
    }
}

impl SubAssign for Biquaternion {
    #[inline]
    fn sub_assign(&mut self, rhs: Self) {
        for k in 0..4 {
            self.0[k] -= rhs.0[k];
        }
    }
}

impl Neg for Biquaternion {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self(self.0.map(|c| -c))
    }
}

impl Mul for Biquaternion {
    type Output = Self;
    #[inline]
    fn mul(self, rhs: Self) -> Self {
        self.mul_split(&rhs)
    }
}

impl Mul<Complex64> for Biquaternion {
    type Output = Self;
    #[inline]
    fn mul(self, rhs: Complex64) -> Self {
        self.scale(rhs)
    }
}

impl Mul<f64> for Biquaternion {
    type Output = Self;
    #[inline]
    fn mul(self, rhs: f64) -> Self {
        self.scale_re(rhs)
    }
}
