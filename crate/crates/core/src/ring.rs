//! Exact arithmetic in the ring ℤ[√2].
//!
//! Elements are stored as `unit + root·√2`. The coefficient type is pluggable:
//! `i64` is the fast path and reports overflow as [`Error::Overflow`] instead of
//! wrapping; [`BigInt`] never overflows.

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Integer coefficient backend for [`RootTwo`].
pub trait Coeff: Clone + Eq + Hash + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn try_add(&self, other: &Self) -> Result<Self>;
    fn try_sub(&self, other: &Self) -> Result<Self>;
    fn try_mul(&self, other: &Self) -> Result<Self>;
    fn try_neg(&self) -> Result<Self>;
    /// Exact halving; `None` if odd.
    fn half(&self) -> Option<Self>;
    /// Least non-negative residue modulo `n`.
    fn residue(&self, n: u32) -> u32;
    fn to_f64(&self) -> f64;
    fn to_big(&self) -> BigInt;
}

impl Coeff for i64 {
    fn zero() -> Self {
        0
    }
    fn from_i64(v: i64) -> Self {
        v
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn try_add(&self, other: &Self) -> Result<Self> {
        self.checked_add(*other).ok_or(Error::Overflow)
    }
    fn try_sub(&self, other: &Self) -> Result<Self> {
        self.checked_sub(*other).ok_or(Error::Overflow)
    }
    fn try_mul(&self, other: &Self) -> Result<Self> {
        self.checked_mul(*other).ok_or(Error::Overflow)
    }
    fn try_neg(&self) -> Result<Self> {
        self.checked_neg().ok_or(Error::Overflow)
    }
    fn half(&self) -> Option<Self> {
        (self % 2 == 0).then_some(self / 2)
    }
    fn residue(&self, n: u32) -> u32 {
        self.rem_euclid(n as i64) as u32
    }
    fn to_f64(&self) -> f64 {
        *self as f64
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Coeff for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn try_add(&self, other: &Self) -> Result<Self> {
        Ok(self + other)
    }
    fn try_sub(&self, other: &Self) -> Result<Self> {
        Ok(self - other)
    }
    fn try_mul(&self, other: &Self) -> Result<Self> {
        Ok(self * other)
    }
    fn try_neg(&self) -> Result<Self> {
        Ok(-self)
    }
    fn half(&self) -> Option<Self> {
        let two = BigInt::from(2);
        Zero::is_zero(&(self % &two)).then(|| self / &two)
    }
    fn residue(&self, n: u32) -> u32 {
        let n = BigInt::from(n);
        let r = ((self % &n) + &n) % &n;
        r.to_u32().expect("residue fits in u32")
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

/// An element `unit + root·√2` of ℤ[√2].
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct RootTwo<C> {
    pub unit: C,
    pub root: C,
}

/// ℤ[√2] over checked 64-bit integers.
pub type RootTwoInt = RootTwo<i64>;
/// ℤ[√2] over arbitrary-precision integers.
pub type RootTwoBig = RootTwo<BigInt>;

impl<C: Coeff> RootTwo<C> {
    pub fn new(unit: C, root: C) -> Self {
        RootTwo { unit, root }
    }

    pub fn zero() -> Self {
        RootTwo::new(C::zero(), C::zero())
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(v: i64) -> Self {
        RootTwo::new(C::from_i64(v), C::zero())
    }

    pub fn sqrt2() -> Self {
        RootTwo::new(C::zero(), C::from_i64(1))
    }

    /// `√2^n`.
    pub fn sqrt2_pow(n: u32) -> Result<Self> {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = acc.mul_sqrt2()?;
        }
        Ok(acc)
    }

    pub fn is_zero(&self) -> bool {
        self.unit.is_zero() && self.root.is_zero()
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        Ok(RootTwo::new(self.unit.try_add(&other.unit)?, self.root.try_add(&other.root)?))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        Ok(RootTwo::new(self.unit.try_sub(&other.unit)?, self.root.try_sub(&other.root)?))
    }

    pub fn checked_neg(&self) -> Result<Self> {
        Ok(RootTwo::new(self.unit.try_neg()?, self.root.try_neg()?))
    }

    /// `(a+b√2)(c+d√2) = (ac+2bd) + (ad+bc)√2`.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let ac = self.unit.try_mul(&other.unit)?;
        let bd = self.root.try_mul(&other.root)?;
        let ad = self.unit.try_mul(&other.root)?;
        let bc = self.root.try_mul(&other.unit)?;
        Ok(RootTwo::new(ac.try_add(&bd)?.try_add(&bd)?, ad.try_add(&bc)?))
    }

    /// `√2·(a+b√2) = 2b + a√2`.
    pub fn mul_sqrt2(&self) -> Result<Self> {
        Ok(RootTwo::new(self.root.try_add(&self.root)?, self.unit.clone()))
    }

    /// Exact division by √2, if `self ∈ √2·ℤ[√2]`.
    pub fn div_sqrt2(&self) -> Option<Self> {
        let half = self.unit.half()?;
        Some(RootTwo::new(self.root.clone(), half))
    }

    /// Field norm `a² − 2b²`.
    pub fn norm(&self) -> Result<C> {
        let a2 = self.unit.try_mul(&self.unit)?;
        let b2 = self.root.try_mul(&self.root)?;
        a2.try_sub(&b2.try_add(&b2)?)
    }

    /// Componentwise reduction to the least non-negative representatives
    /// modulo `n ∈ {2, 4}`.
    pub fn reduce_mod(&self, n: u32) -> Result<Self> {
        if n != 2 && n != 4 {
            return Err(Error::UnsupportedModulus(n));
        }
        Ok(RootTwo::new(C::from_i64(self.unit.residue(n) as i64), C::from_i64(self.root.residue(n) as i64)))
    }

    pub fn to_f64(&self) -> f64 {
        self.unit.to_f64() + self.root.to_f64() * std::f64::consts::SQRT_2
    }

    pub fn to_big(&self) -> RootTwoBig {
        RootTwo::new(self.unit.to_big(), self.root.to_big())
    }
}

impl RootTwoBig {
    /// Narrow to the 64-bit representation, if both parts fit.
    pub fn to_i64(&self) -> Option<RootTwoInt> {
        Some(RootTwo::new(self.unit.to_i64()?, self.root.to_i64()?))
    }
}

impl<C: Coeff> fmt::Display for RootTwo<C> {
    /// Renders as `a+b√2` / `a-b√2`, e.g. `-3+2√2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.root.is_negative() {
            let b = self.root.try_neg().map_err(|_| fmt::Error)?;
            write!(f, "{}-{}√2", self.unit, b)
        } else {
            write!(f, "{}+{}√2", self.unit, self.root)
        }
    }
}

// Operator impls panic on overflow; use the `checked_*` methods where overflow
// must be recoverable.
impl<C: Coeff> Add for RootTwo<C> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.checked_add(&rhs).expect("ℤ[√2] overflow in add")
    }
}

impl<C: Coeff> Sub for RootTwo<C> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.checked_sub(&rhs).expect("ℤ[√2] overflow in sub")
    }
}

impl<C: Coeff> Mul for RootTwo<C> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.checked_mul(&rhs).expect("ℤ[√2] overflow in mul")
    }
}

impl<C: Coeff> Neg for RootTwo<C> {
    type Output = Self;
    fn neg(self) -> Self {
        self.checked_neg().expect("ℤ[√2] overflow in neg")
    }
}
