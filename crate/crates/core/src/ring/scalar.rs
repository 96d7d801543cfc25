//! Integer scalars that can carry polynomial coefficients.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

/// Integer type usable as a coefficient of [`LaurentPolynomial`] and
/// [`DeltaPolynomial`].
///
/// Anything that is a signed Euclidean integer qualifies; `BigInt` is the
/// default because Gram determinants and triangular solves outgrow machine
/// words, but `i64`/`i128` are handy for quick experiments.
///
/// [`LaurentPolynomial`]: super::LaurentPolynomial
/// [`DeltaPolynomial`]: super::DeltaPolynomial
pub trait Coefficient:
    Clone
    + Debug
    + Display
    + Eq
    + Ord
    + Hash
    + Send
    + Sync
    + Signed
    + Integer
    + FromPrimitive
    + ToPrimitive
    + 'static
{
    /// Decimal rendering used by the JSON encoders.
    fn to_decimal(&self) -> String {
        self.to_string()
    }

    fn from_decimal(s: &str) -> Option<Self>;

    /// `self * other` without consuming either operand.
    fn mul_ref(&self, other: &Self) -> Self {
        self.clone() * other.clone()
    }

    /// `self += other`.
    fn add_assign_ref(&mut self, other: &Self) {
        *self = self.clone() + other.clone();
    }

    /// `self -= other`.
    fn sub_assign_ref(&mut self, other: &Self) {
        *self = self.clone() - other.clone();
    }

    /// `self += a * b`.
    fn add_product(&mut self, a: &Self, b: &Self) {
        self.add_assign_ref(&a.mul_ref(b));
    }
}

impl Coefficient for BigInt {
    fn from_decimal(s: &str) -> Option<Self> {
        s.parse().ok()
    }

    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }

    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }

    fn sub_assign_ref(&mut self, other: &Self) {
        *self -= other;
    }
}

macro_rules! machine_coefficient {
    ($($t:ty)*) => ($(
        impl Coefficient for $t {
            fn from_decimal(s: &str) -> Option<Self> {
                s.parse().ok()
            }
        }
    )*)
}

machine_coefficient!(i32 i64 i128);
