//! Exact integer primitives: gcd conventions, extended Euclid, perfect
//! squares and integer 3-vectors.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// Nonnegative gcd with `gcd(0, x) = |x|` and `gcd(0, 0) = 0`.
pub fn gcd_nonneg(x: &BigInt, y: &BigInt) -> BigInt {
    x.gcd(y)
}

/// Result of the extended Euclidean algorithm: `p·x + q·y = g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bezout {
    pub g: BigInt,
    pub p: BigInt,
    pub q: BigInt,
}

/// Extended Euclid on `(|x|, |y|)` with signs folded back into the
/// coefficients afterwards, so the output only depends on the input.
pub fn extended_gcd(x: &BigInt, y: &BigInt) -> Result<Bezout> {
    if x.is_zero() && y.is_zero() {
        return Err(Error::DegenerateBezout);
    }
    let (mut old_r, mut r) = (x.abs(), y.abs());
    let (mut old_s, mut s) = (BigInt::from(1), BigInt::zero());
    let (mut old_t, mut t) = (BigInt::zero(), BigInt::from(1));
    while !r.is_zero() {
        let quotient = &old_r / &r;
        let next_r = &old_r - &quotient * &r;
        old_r = std::mem::replace(&mut r, next_r);
        let next_s = &old_s - &quotient * &s;
        old_s = std::mem::replace(&mut s, next_s);
        let next_t = &old_t - &quotient * &t;
        old_t = std::mem::replace(&mut t, next_t);
    }
    if x.is_negative() {
        old_s = -old_s;
    }
    if y.is_negative() {
        old_t = -old_t;
    }
    Ok(Bezout {
        g: old_r,
        p: old_s,
        q: old_t,
    })
}

/// Exact square root: `Some(s)` with `s² = x` if `x` is a perfect square.
pub fn sqrt_exact(x: &BigInt) -> Result<Option<BigInt>> {
    if x.is_negative() {
        return Err(Error::NegativeSqrt(x.clone()));
    }
    let s = x.sqrt();
    Ok((&s * &s == *x).then_some(s))
}

/// Exact quotient `x / y`, or `None` when `y` is zero or does not divide `x`.
pub fn div_exact(x: &BigInt, y: &BigInt) -> Option<BigInt> {
    if y.is_zero() {
        return None;
    }
    let (q, r) = x.div_rem(y);
    r.is_zero().then_some(q)
}

/// Integer vector in ℤ³.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vec3 {
    pub x: BigInt,
    pub y: BigInt,
    pub z: BigInt,
}

impl Vec3 {
    pub fn new(x: impl Into<BigInt>, y: impl Into<BigInt>, z: impl Into<BigInt>) -> Self {
        Vec3 {
            x: x.into(),
            y: y.into(),
            z: z.into(),
        }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_array([x, y, z]: [BigInt; 3]) -> Self {
        Vec3 { x, y, z }
    }

    pub fn components(&self) -> [&BigInt; 3] {
        [&self.x, &self.y, &self.z]
    }

    pub fn into_array(self) -> [BigInt; 3] {
        [self.x, self.y, self.z]
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }

    pub fn dot(&self, other: &Vec3) -> BigInt {
        &self.x * &other.x + &self.y * &other.y + &self.z * &other.z
    }

    pub fn cross(&self, other: &Vec3) -> Vec3 {
        Vec3 {
            x: &self.y * &other.z - &self.z * &other.y,
            y: &self.z * &other.x - &self.x * &other.z,
            z: &self.x * &other.y - &self.y * &other.x,
        }
    }

    pub fn norm2(&self) -> BigInt {
        self.dot(self)
    }

    pub fn scale(&self, k: &BigInt) -> Vec3 {
        Vec3 {
            x: &self.x * k,
            y: &self.y * k,
            z: &self.z * k,
        }
    }

    /// Componentwise exact division; `None` if any component is not divisible.
    pub fn div_exact(&self, k: &BigInt) -> Option<Vec3> {
        Some(Vec3 {
            x: div_exact(&self.x, k)?,
            y: div_exact(&self.y, k)?,
            z: div_exact(&self.z, k)?,
        })
    }
}

impl fmt::Display for Vec3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

impl Add for &Vec3 {
    type Output = Vec3;
    fn add(self, rhs: &Vec3) -> Vec3 {
        Vec3 {
            x: &self.x + &rhs.x,
            y: &self.y + &rhs.y,
            z: &self.z + &rhs.z,
        }
    }
}

impl Sub for &Vec3 {
    type Output = Vec3;
    fn sub(self, rhs: &Vec3) -> Vec3 {
        Vec3 {
            x: &self.x - &rhs.x,
            y: &self.y - &rhs.y,
            z: &self.z - &rhs.z,
        }
    }
}

impl Neg for &Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3 {
            x: -&self.x,
            y: -&self.y,
            z: -&self.z,
        }
    }
}

impl Mul<&Vec3> for &BigInt {
    type Output = Vec3;
    fn mul(self, rhs: &Vec3) -> Vec3 {
        rhs.scale(self)
    }
}

impl Mul<&Vec3> for i64 {
    type Output = Vec3;
    fn mul(self, rhs: &Vec3) -> Vec3 {
        rhs.scale(&BigInt::from(self))
    }
}
