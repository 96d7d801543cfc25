//! The bar-fixed subring `Z[δ]` of `Z[v, v^-1]`, with `δ = v + v^-1`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Coefficient, LaurentPolynomial, RingError};

/// A polynomial in `δ`; index `k` of the coefficient vector is the coefficient of `δ^k`.
/// The last stored coefficient is always nonzero.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DeltaPolynomial<C> {
    coeffs: Vec<C>,
}

impl<C: Coefficient> DeltaPolynomial<C> {
    pub fn from_coeffs(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(
            coeffs
                .iter()
                .map(|&c| C::from_i64(c).expect("coefficient out of range"))
                .collect(),
        )
    }

    /// `δ`.
    pub fn delta() -> Self {
        Self::from_coeffs(vec![C::zero(), C::one()])
    }

    pub fn delta_pow(k: usize) -> Self {
        let mut coeffs = vec![C::zero(); k + 1];
        coeffs[k] = C::one();
        Self { coeffs }
    }

    pub fn constant(c: C) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    /// Degree in `δ`; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Evaluates at an integer value of `δ` (Horner).
    pub fn evaluate(&self, delta: &C) -> C {
        self.coeffs
            .iter()
            .rev()
            .fold(C::zero(), |acc, c| acc * delta.clone() + c.clone())
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|d| d.clone() * c.clone()).collect())
    }

    /// Substitutes `δ = v + v^-1`.
    pub fn embed(&self) -> LaurentPolynomial<C> {
        let delta = LaurentPolynomial::from_terms([(1, C::one()), (-1, C::one())]);
        self.coeffs.iter().rev().fold(LaurentPolynomial::zero(), |acc, c| {
            &(&acc * &delta) + &LaurentPolynomial::constant(c.clone())
        })
    }

    /// Inverse of [`embed`](Self::embed): peels off the top symmetric term `c·δ^k` until
    /// nothing is left.
    pub fn retract(a: &LaurentPolynomial<C>) -> Result<Self, RingError> {
        if !a.is_bar_symmetric() {
            return Err(RingError::NotBarSymmetric(a.to_string()));
        }
        let mut rest = a.clone();
        let top = a.max_exponent().unwrap_or(0);
        if top < 0 {
            return Err(RingError::NotInDeltaSubring(a.to_string()));
        }
        let mut coeffs = vec![C::zero(); top as usize + 1];
        while let Some(k) = rest.max_exponent() {
            if k < 0 || !rest.is_bar_symmetric() {
                return Err(RingError::NotInDeltaSubring(a.to_string()));
            }
            let c = rest.coefficient(k);
            let peel = Self::delta_pow(k as usize).scale(&c).embed();
            rest = &rest - &peel;
            coeffs[k as usize] = c;
        }
        Ok(Self::from_coeffs(coeffs))
    }

    /// Exact quotient in `Z[δ]`, or `None` if the division leaves a remainder.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let n = self.coeffs.len();
        let d = divisor.coeffs.len();
        if n < d {
            return None;
        }
        let lead = divisor.coeffs[d - 1].clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![C::zero(); n - d + 1];
        for i in (0..=n - d).rev() {
            let top = rem[i + d - 1].clone();
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(&lead);
            if !r.is_zero() {
                return None;
            }
            for (j, c) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = rem[i + j].clone() - q.clone() * c.clone();
            }
            quot[i] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::from_coeffs(quot))
    }

    pub fn weight(&self) -> usize {
        self.coeffs.len() * 4
            + self
                .coeffs
                .iter()
                .map(|c| c.abs().to_f64().map_or(64, |x| x.log2().ceil().max(0.0) as usize))
                .sum::<usize>()
    }
}

impl<C: Coefficient> Zero for DeltaPolynomial<C> {
    fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<C: Coefficient> One for DeltaPolynomial<C> {
    fn one() -> Self {
        Self::constant(C::one())
    }
}

impl<C: Coefficient> Add<&DeltaPolynomial<C>> for &DeltaPolynomial<C> {
    type Output = DeltaPolynomial<C>;
    fn add(self, rhs: &DeltaPolynomial<C>) -> DeltaPolynomial<C> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        DeltaPolynomial::from_coeffs(
            (0..n)
                .map(|i| {
                    let a = self.coeffs.get(i).cloned().unwrap_or_else(C::zero);
                    let b = rhs.coeffs.get(i).cloned().unwrap_or_else(C::zero);
                    a + b
                })
                .collect(),
        )
    }
}

impl<C: Coefficient> Sub<&DeltaPolynomial<C>> for &DeltaPolynomial<C> {
    type Output = DeltaPolynomial<C>;
    fn sub(self, rhs: &DeltaPolynomial<C>) -> DeltaPolynomial<C> {
        self + &(-rhs)
    }
}

impl<C: Coefficient> Mul<&DeltaPolynomial<C>> for &DeltaPolynomial<C> {
    type Output = DeltaPolynomial<C>;
    fn mul(self, rhs: &DeltaPolynomial<C>) -> DeltaPolynomial<C> {
        if self.is_zero() || rhs.is_zero() {
            return DeltaPolynomial::zero();
        }
        let mut out = vec![C::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        DeltaPolynomial::from_coeffs(out)
    }
}

impl<C: Coefficient> Neg for &DeltaPolynomial<C> {
    type Output = DeltaPolynomial<C>;
    fn neg(self) -> DeltaPolynomial<C> {
        DeltaPolynomial {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

impl<C: Coefficient> Neg for DeltaPolynomial<C> {
    type Output = DeltaPolynomial<C>;
    fn neg(self) -> DeltaPolynomial<C> {
        -&self
    }
}

impl<C: Coefficient> Add for DeltaPolynomial<C> {
    type Output = DeltaPolynomial<C>;
    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl<C: Coefficient> Sub for DeltaPolynomial<C> {
    type Output = DeltaPolynomial<C>;
    fn sub(self, rhs: Self) -> Self {
        &self - &rhs
    }
}

impl<C: Coefficient> Mul for DeltaPolynomial<C> {
    type Output = DeltaPolynomial<C>;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl<C: Coefficient> fmt::Display for DeltaPolynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            if !mag.is_one() || k == 0 {
                write!(f, "{}", mag)?;
            }
            match k {
                0 => {}
                1 => write!(f, "δ")?,
                _ => write!(f, "δ^{}", k)?,
            }
        }
        Ok(())
    }
}

impl<C: Coefficient> fmt::Debug for DeltaPolynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D({})", self)
    }
}

/// Encodes as an integer array indexed by degree; zero is `[]`.
impl<C: Coefficient> Serialize for DeltaPolynomial<C> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.coeffs.iter().map(super::json_integer))
    }
}

impl<'de, C: Coefficient> Deserialize<'de> for DeltaPolynomial<C> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw: Vec<serde_json::Number> = Vec::deserialize(deserializer)?;
        let coeffs = raw
            .iter()
            .map(|n| {
                C::from_decimal(&n.to_string())
                    .ok_or_else(|| serde::de::Error::custom(format!("bad coefficient {n}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::from_coeffs(coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{DeltaPoly, LaurentPoly};

    fn lp(terms: &[(i32, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().map(|&(e, c)| (e, c.into())))
    }

    #[test]
    fn embed_examples() {
        assert_eq!(DeltaPoly::delta().embed(), lp(&[(1, 1), (-1, 1)]));
        assert_eq!(DeltaPoly::one().embed(), LaurentPoly::one());
        assert_eq!(DeltaPoly::delta_pow(2).embed(), lp(&[(2, 1), (0, 2), (-2, 1)]));
    }

    #[test]
    fn retract_examples() {
        assert_eq!(DeltaPoly::retract(&lp(&[(1, 1), (-1, 1)])).unwrap(), DeltaPoly::delta());
        assert_eq!(
            DeltaPoly::retract(&lp(&[(2, 1), (0, 1), (-2, 1)])).unwrap(),
            DeltaPoly::from_i64s(&[-1, 0, 1])
        );
        assert!(matches!(
            DeltaPoly::retract(&lp(&[(1, 1)])),
            Err(RingError::NotBarSymmetric(_))
        ));
        assert_eq!(DeltaPoly::retract(&LaurentPoly::zero()).unwrap(), DeltaPoly::zero());
    }

    #[test]
    fn canonical_trailing_zeros() {
        let p = DeltaPoly::from_i64s(&[1, 2, 0, 0]);
        assert_eq!(p.coeffs().len(), 2);
        assert_eq!(p - DeltaPoly::from_i64s(&[1, 2]), DeltaPoly::zero());
    }

    #[test]
    fn evaluation_and_division() {
        let g = DeltaPoly::from_i64s(&[-1, 0, 1]);
        assert_eq!(g.evaluate(&1.into()), 0.into());
        assert_eq!(g.evaluate(&2.into()), 3.into());
        let q = g.exact_div(&DeltaPoly::from_i64s(&[1, 1])).unwrap();
        assert_eq!(q, DeltaPoly::from_i64s(&[-1, 1]));
        assert_eq!(g.exact_div(&DeltaPoly::delta()), None);
    }

    #[test]
    fn json_shape() {
        let p = DeltaPoly::from_i64s(&[0, 1]);
        assert_eq!(serde_json::to_string(&p).unwrap(), "[0,1]");
        assert_eq!(serde_json::to_string(&DeltaPoly::zero()).unwrap(), "[]");
        let back: DeltaPoly = serde_json::from_str("[-1,0,1]").unwrap();
        assert_eq!(back, DeltaPoly::from_i64s(&[-1, 0, 1]));
    }

    #[test]
    fn display() {
        assert_eq!(DeltaPoly::from_i64s(&[-1, 0, 1]).to_string(), "δ^2 - 1");
        assert_eq!(DeltaPoly::delta().to_string(), "δ");
    }
}
