//! Laurent polynomials in `v` with integer coefficients, `Z[v, v^-1]`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Zero};
use serde::de::{self, MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::Coefficient;

/// An element of `Z[v, v^-1]`.
///
/// Stored as exponent/coefficient pairs sorted by strictly increasing exponent
/// with every coefficient nonzero, so structural equality is equality of
/// polynomials. Zero is the empty term list.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPolynomial<C> {
    terms: Vec<(i32, C)>,
}

impl<C: Coefficient> LaurentPolynomial<C> {
    /// Builds a polynomial from arbitrary (possibly repeated, possibly zero) terms.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i32, C)>,
    {
        let mut raw: Vec<(i32, C)> = terms.into_iter().collect();
        raw.sort_by_key(|(e, _)| *e);
        let mut out: Vec<(i32, C)> = Vec::with_capacity(raw.len());
        for (e, c) in raw {
            match out.last_mut() {
                Some((last, acc)) if *last == e => acc.add_assign_ref(&c),
                _ => out.push((e, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Self { terms: out }
    }

    pub fn monomial(exponent: i32, coeff: C) -> Self {
        if coeff.is_zero() {
            Self::zero()
        } else {
            Self {
                terms: vec![(exponent, coeff)],
            }
        }
    }

    /// The indeterminate `v^k`.
    pub fn v_pow(exponent: i32) -> Self {
        Self::monomial(exponent, C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(0, c)
    }

    pub fn from_i64(c: i64) -> Self {
        Self::constant(C::from_i64(c).expect("coefficient type cannot hold i64 value"))
    }

    pub fn terms(&self) -> &[(i32, C)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exponent: i32) -> C {
        match self.terms.binary_search_by_key(&exponent, |(e, _)| *e) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => C::zero(),
        }
    }

    pub fn min_exponent(&self) -> Option<i32> {
        self.terms.first().map(|(e, _)| *e)
    }

    pub fn max_exponent(&self) -> Option<i32> {
        self.terms.last().map(|(e, _)| *e)
    }

    /// The value at `v = point` in `Z/pZ`, for a prime `p < 2^32` not dividing `point`.
    pub fn evaluate_mod(&self, point: u64, p: u64) -> u64 {
        let modulus = C::from_u64(p).expect("modulus fits the coefficient type");
        let inverse = pow_mod(point % p, p - 2, p);
        self.terms.iter().fold(0, |acc, (e, c)| {
            let base = if *e >= 0 { point % p } else { inverse };
            let power = pow_mod(base, e.unsigned_abs() as u64, p);
            let residue = c.mod_floor(&modulus).to_u64().expect("residue fits u64");
            (acc + residue * power % p) % p
        })
    }

    /// The bar involution `v -> v^-1`.
    pub fn bar(&self) -> Self {
        Self {
            terms: self.terms.iter().rev().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    pub fn is_bar_symmetric(&self) -> bool {
        let n = self.terms.len();
        (0..n).all(|i| {
            let (e, c) = &self.terms[i];
            let (f, d) = &self.terms[n - 1 - i];
            *e == -*f && c == d
        })
    }

    /// True when `bar(self) == -self`.
    pub fn is_bar_antisymmetric(&self) -> bool {
        let n = self.terms.len();
        (0..n).all(|i| {
            let (e, c) = &self.terms[i];
            let (f, d) = &self.terms[n - 1 - i];
            *e == -*f && *c == -d.clone()
        })
    }

    /// Terms with exponent strictly greater than zero.
    pub fn positive_part(&self) -> Self {
        Self {
            terms: self.terms.iter().filter(|(e, _)| *e > 0).cloned().collect(),
        }
    }

    /// Terms with exponent strictly less than zero.
    pub fn negative_part(&self) -> Self {
        Self {
            terms: self.terms.iter().filter(|(e, _)| *e < 0).cloned().collect(),
        }
    }

    /// Multiplies by `v^k`.
    pub fn shift(&self, k: i32) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, d)| (*e, d.mul_ref(c))).collect(),
        }
    }

    /// If `self = sign * v^k` returns `(sign, k)` with `sign` in `{1, -1}`.
    pub fn as_unit(&self) -> Option<(i8, i32)> {
        match self.terms.as_slice() {
            [(e, c)] if c.is_one() => Some((1, *e)),
            [(e, c)] if (-c.clone()).is_one() => Some((-1, *e)),
            _ => None,
        }
    }

    pub fn is_unit(&self) -> bool {
        self.as_unit().is_some()
    }

    /// Exact quotient in `Z[v, v^-1]`, or `None` when `divisor` does not divide `self`.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if let Some((sign, k)) = divisor.as_unit() {
            let q = self.shift(-k);
            return Some(if sign < 0 { -q } else { q });
        }
        let a0 = self.min_exponent().unwrap();
        let b0 = divisor.min_exponent().unwrap();
        let mut rem = dense(self);
        let den = dense(divisor);
        if rem.len() < den.len() {
            return None;
        }
        let lead = den.last().unwrap().clone();
        let qlen = rem.len() - den.len() + 1;
        let mut quot = vec![C::zero(); qlen];
        for i in (0..qlen).rev() {
            let top = rem[i + den.len() - 1].clone();
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(&lead);
            if !r.is_zero() {
                return None;
            }
            for (j, d) in den.iter().enumerate() {
                if !d.is_zero() {
                    rem[i + j].sub_assign_ref(&q.mul_ref(d));
                }
            }
            quot[i] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        let shift = a0 - b0;
        Some(Self::from_terms(
            quot.into_iter()
                .enumerate()
                .map(|(i, c)| (i as i32 + shift, c)),
        ))
    }

    /// Size measure used to prefer small pivots during elimination.
    pub fn weight(&self) -> usize {
        match (self.min_exponent(), self.max_exponent()) {
            (Some(lo), Some(hi)) => {
                let bits: u64 = self
                    .terms
                    .iter()
                    .map(|(_, c)| c.abs().to_f64().map_or(64, |x| x.log2().ceil().max(0.0) as u64))
                    .sum();
                (hi - lo) as usize * 8 + self.terms.len() * 4 + bits as usize
            }
            _ => 0,
        }
    }
}

fn dense<C: Coefficient>(p: &LaurentPolynomial<C>) -> Vec<C> {
    let lo = p.min_exponent().unwrap_or(0);
    let hi = p.max_exponent().unwrap_or(-1);
    let mut out = vec![C::zero(); (hi - lo + 1).max(0) as usize];
    for (e, c) in &p.terms {
        out[(e - lo) as usize] = c.clone();
    }
    out
}

fn merge<C: Coefficient>(
    a: &[(i32, C)],
    b: &[(i32, C)],
    negate_b: bool,
) -> LaurentPolynomial<C> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let fix = |c: &C| if negate_b { -c.clone() } else { c.clone() };
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, fix(&b[j].1)));
            j += 1;
        } else {
            let mut s = a[i].1.clone();
            if negate_b {
                s.sub_assign_ref(&b[j].1);
            } else {
                s.add_assign_ref(&b[j].1);
            }
            if !s.is_zero() {
                out.push((a[i].0, s));
            }
            i += 1;
            j += 1;
        }
    }
    LaurentPolynomial { terms: out }
}

impl<C: Coefficient> Zero for LaurentPolynomial<C> {
    fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<C: Coefficient> One for LaurentPolynomial<C> {
    fn one() -> Self {
        Self::constant(C::one())
    }
}

impl<C: Coefficient> Add<&LaurentPolynomial<C>> for &LaurentPolynomial<C> {
    type Output = LaurentPolynomial<C>;
    fn add(self, rhs: &LaurentPolynomial<C>) -> LaurentPolynomial<C> {
        merge(&self.terms, &rhs.terms, false)
    }
}

impl<C: Coefficient> Sub<&LaurentPolynomial<C>> for &LaurentPolynomial<C> {
    type Output = LaurentPolynomial<C>;
    fn sub(self, rhs: &LaurentPolynomial<C>) -> LaurentPolynomial<C> {
        merge(&self.terms, &rhs.terms, true)
    }
}

impl<C: Coefficient> Mul<&LaurentPolynomial<C>> for &LaurentPolynomial<C> {
    type Output = LaurentPolynomial<C>;
    fn mul(self, rhs: &LaurentPolynomial<C>) -> LaurentPolynomial<C> {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPolynomial::zero();
        }
        if self.terms.len() == 1 {
            let (e, c) = &self.terms[0];
            return rhs.scale(c).shift(*e);
        }
        if rhs.terms.len() == 1 {
            let (e, c) = &rhs.terms[0];
            return self.scale(c).shift(*e);
        }
        let lo = self.terms[0].0 + rhs.terms[0].0;
        let hi = self.terms.last().unwrap().0 + rhs.terms.last().unwrap().0;
        let mut acc = vec![C::zero(); (hi - lo + 1) as usize];
        for (e, c) in &self.terms {
            for (f, d) in &rhs.terms {
                let slot = &mut acc[(e + f - lo) as usize];
                slot.add_product(c, d);
            }
        }
        LaurentPolynomial {
            terms: acc
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i as i32 + lo, c))
                .collect(),
        }
    }
}

impl<C: Coefficient> Neg for &LaurentPolynomial<C> {
    type Output = LaurentPolynomial<C>;
    fn neg(self) -> LaurentPolynomial<C> {
        LaurentPolynomial {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<C: Coefficient> $tr<LaurentPolynomial<C>> for LaurentPolynomial<C> {
            type Output = LaurentPolynomial<C>;
            fn $m(self, rhs: LaurentPolynomial<C>) -> LaurentPolynomial<C> {
                (&self).$m(&rhs)
            }
        }
        impl<C: Coefficient> $tr<&LaurentPolynomial<C>> for LaurentPolynomial<C> {
            type Output = LaurentPolynomial<C>;
            fn $m(self, rhs: &LaurentPolynomial<C>) -> LaurentPolynomial<C> {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<C: Coefficient> Neg for LaurentPolynomial<C> {
    type Output = LaurentPolynomial<C>;
    fn neg(self) -> LaurentPolynomial<C> {
        -&self
    }
}

impl<C: Coefficient> AddAssign<&LaurentPolynomial<C>> for LaurentPolynomial<C> {
    fn add_assign(&mut self, rhs: &LaurentPolynomial<C>) {
        *self = &*self + rhs;
    }
}

impl<C: Coefficient> SubAssign<&LaurentPolynomial<C>> for LaurentPolynomial<C> {
    fn sub_assign(&mut self, rhs: &LaurentPolynomial<C>) {
        *self = &*self - rhs;
    }
}

impl<C: Coefficient> fmt::Display for LaurentPolynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let show_mag = !mag.is_one() || *e == 0;
            if show_mag {
                write!(f, "{}", mag)?;
            }
            match *e {
                0 => {}
                1 => write!(f, "v")?,
                k => write!(f, "v^{}", k)?,
            }
        }
        Ok(())
    }
}

impl<C: Coefficient> fmt::Debug for LaurentPolynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L({})", self)
    }
}

/// Encodes as `{"-1": 1, "1": 1}` with keys in ascending numeric order.
impl<C: Coefficient> Serialize for LaurentPolynomial<C> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.terms.len()))?;
        for (e, c) in &self.terms {
            map.serialize_entry(&e.to_string(), &super::json_integer(c))?;
        }
        map.end()
    }
}

impl<'de, C: Coefficient> Deserialize<'de> for LaurentPolynomial<C> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct LpVisitor<C>(std::marker::PhantomData<C>);

        impl<'de, C: Coefficient> Visitor<'de> for LpVisitor<C> {
            type Value = LaurentPolynomial<C>;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "an object mapping decimal exponents to integer coefficients")
            }

            fn visit_map<A: MapAccess<'de>>(self, mut access: A) -> Result<Self::Value, A::Error> {
                let mut terms = Vec::new();
                while let Some((k, val)) = access.next_entry::<String, serde_json::Number>()? {
                    let e: i32 = k
                        .parse()
                        .map_err(|_| de::Error::custom(format!("bad exponent key {k:?}")))?;
                    let c = C::from_decimal(&val.to_string())
                        .ok_or_else(|| de::Error::custom(format!("bad coefficient {val}")))?;
                    terms.push((e, c));
                }
                Ok(LaurentPolynomial::from_terms(terms))
            }
        }

        deserializer.deserialize_map(LpVisitor(std::marker::PhantomData))
    }
}

/// `[n]_v = (v^n - v^-n) / (v - v^-1)`.
pub fn quantum_int<C: Coefficient>(n: i64) -> LaurentPolynomial<C> {
    let k = n.unsigned_abs() as i32;
    let p = LaurentPolynomial::from_terms((0..k).map(|j| (k - 1 - 2 * j, C::one())));
    if n < 0 {
        -p
    } else {
        p
    }
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut out = 1 % p;
    while exp > 0 {
        if exp & 1 == 1 {
            out = out * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::LaurentPoly;

    fn lp(terms: &[(i32, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().map(|&(e, c)| (e, c.into())))
    }

    #[test]
    fn addition_examples() {
        assert_eq!(lp(&[(1, 1)]) + lp(&[(-1, 1)]), lp(&[(-1, 1), (1, 1)]));
        let p = lp(&[(3, 2), (-2, -5)]);
        assert_eq!(&p + &LaurentPoly::zero(), p);
        let cancel = lp(&[(1, 1), (0, -1)]) + lp(&[(0, 1), (1, -1)]);
        assert!(cancel.is_zero());
        assert!(cancel.terms().is_empty());
    }

    #[test]
    fn multiplication_examples() {
        let d = lp(&[(1, 1), (-1, 1)]);
        assert_eq!(&d * &d, lp(&[(2, 1), (0, 2), (-2, 1)]));
        let p = lp(&[(4, -3), (0, 7)]);
        assert_eq!(&p * &LaurentPoly::one(), p);
        let m = lp(&[(1, 1), (-1, -1)]);
        assert_eq!(&m * &d, lp(&[(2, 1), (-2, -1)]));
    }

    #[test]
    fn bar_examples() {
        assert_eq!(lp(&[(1, 1)]).bar(), lp(&[(-1, 1)]));
        let d = lp(&[(1, 1), (-1, 1)]);
        assert_eq!(d.bar(), d);
        assert_eq!(lp(&[(2, 3), (-1, -1)]).bar(), lp(&[(-2, 3), (1, -1)]));
        assert!(d.is_bar_symmetric());
        assert!(!lp(&[(1, 1)]).is_bar_symmetric());
        assert!(LaurentPoly::zero().is_bar_symmetric());
    }

    #[test]
    fn quantum_integers() {
        assert_eq!(quantum_int::<num_bigint::BigInt>(1), LaurentPoly::one());
        assert_eq!(quantum_int::<num_bigint::BigInt>(2), lp(&[(1, 1), (-1, 1)]));
        assert!(quantum_int::<num_bigint::BigInt>(0).is_zero());
        assert_eq!(quantum_int::<num_bigint::BigInt>(-3), -quantum_int::<num_bigint::BigInt>(3));
    }

    #[test]
    fn exact_division() {
        let d = lp(&[(1, 1), (-1, 1)]);
        let p = lp(&[(3, 2), (1, -1), (-2, 4)]);
        assert_eq!((&p * &d).exact_div(&d), Some(p.clone()));
        assert_eq!(lp(&[(0, 1)]).exact_div(&d), None);
        assert_eq!(lp(&[(0, 3)]).exact_div(&lp(&[(0, 2)])), None);
        assert_eq!(p.exact_div(&lp(&[(2, -1)])), Some(-p.shift(-2)));
    }

    #[test]
    fn json_keys_sorted_numerically() {
        let p = lp(&[(10, 1), (2, -1), (-1, 1)]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"-1":1,"2":-1,"10":1}"#);
        let back: LaurentPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn display() {
        assert_eq!(lp(&[(2, 1), (0, 2), (-2, 1)]).to_string(), "v^2 + 2 + v^-2");
        assert_eq!(lp(&[(1, -1)]).to_string(), "-v");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
    }
}
