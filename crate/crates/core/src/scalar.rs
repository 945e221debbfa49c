//! Scalar abstractions shared by the matrix and polynomial code.
//!
//! Everything exact in this crate runs over [`num_bigint::BigInt`] or
//! [`num_rational::BigRational`], but the linear algebra only asks for the
//! operations it really uses, so the same code also runs over `i64`, `f64`
//! and over polynomial rings (used for resultants).

use std::fmt::Debug;
use std::ops::{Div, Neg, Sub};

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

/// A commutative ring with identity.
pub trait Ring: Clone + Debug + PartialEq + Zero + One + Sub<Output = Self> + Neg<Output = Self> {}

impl<T> Ring for T where T: Clone + Debug + PartialEq + Zero + One + Sub<Output = Self> + Neg<Output = Self> {}

/// An ordered field. Exact only for rational types; `f64` is accepted so the
/// same routines can serve numeric diagnostics.
pub trait Field: Ring + Div<Output = Self> + PartialOrd + Signed {}

impl<T> Field for T where T: Ring + Div<Output = T> + PartialOrd + Signed {}

/// Ring elements that embed the integers.
pub trait FromInteger: Ring {
    fn from_bigint(n: &BigInt) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_bigint(&BigInt::from(n))
    }
}

impl FromInteger for BigInt {
    fn from_bigint(n: &BigInt) -> Self {
        n.clone()
    }
}

impl FromInteger for Ratio<BigInt> {
    fn from_bigint(n: &BigInt) -> Self {
        Ratio::from_integer(n.clone())
    }
}

impl FromInteger for i64 {
    fn from_bigint(n: &BigInt) -> Self {
        i64::try_from(n).expect("integer does not fit in i64")
    }

    fn from_i64(n: i64) -> Self {
        n
    }
}

impl FromInteger for f64 {
    fn from_bigint(n: &BigInt) -> Self {
        num_traits::ToPrimitive::to_f64(n).unwrap_or(f64::NAN)
    }

    fn from_i64(n: i64) -> Self {
        n as f64
    }
}

/// Lossy conversion used for diagnostics and numeric bounds.
pub trait ToF64 {
    fn to_f64_lossy(&self) -> f64;
}

impl ToF64 for BigInt {
    fn to_f64_lossy(&self) -> f64 {
        num_traits::ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

impl ToF64 for Ratio<BigInt> {
    fn to_f64_lossy(&self) -> f64 {
        num_traits::ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

impl ToF64 for i64 {
    fn to_f64_lossy(&self) -> f64 {
        *self as f64
    }
}

impl ToF64 for f64 {
    fn to_f64_lossy(&self) -> f64 {
        *self
    }
}
