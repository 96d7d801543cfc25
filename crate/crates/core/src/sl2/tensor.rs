use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::Sl2Error;
use crate::LaurentPoly;

/// Longest supported tensor string.
pub const MAX_LENGTH: usize = 30;

/// A standard basis index `a ∈ {0,1}^n` of `V^{⊗n}`; `0` is the highest-weight factor `x_0`.
/// Position `i` (from the left) is stored in bit `n - 1 - i`, so code order is string order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightString {
    len: u8,
    code: u32,
}

impl WeightString {
    pub fn new(len: usize, code: u32) -> Self {
        assert!(len <= MAX_LENGTH, "tensor length {len} exceeds {MAX_LENGTH}");
        assert!(code >> len == 0, "code {code} too large for length {len}");
        Self { len: len as u8, code }
    }

    pub fn empty() -> Self {
        Self::new(0, 0)
    }

    pub fn from_bits(bits: &[u8]) -> Self {
        let code = bits.iter().fold(0u32, |acc, &b| (acc << 1) | u32::from(b & 1));
        Self::new(bits.len(), code)
    }

    /// All strings of length `n` in increasing string order.
    pub fn all(n: usize) -> impl Iterator<Item = WeightString> {
        (0..(1u32 << n)).map(move |c| WeightString::new(n, c))
    }

    /// All strings of length `n` and weight `w`, in increasing string order.
    pub fn of_weight(n: usize, w: i32) -> Vec<WeightString> {
        Self::all(n).filter(|s| s.weight() == w).collect()
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn code(&self) -> u32 {
        self.code
    }

    pub fn bit(&self, i: usize) -> u8 {
        debug_assert!(i < self.len());
        ((self.code >> (self.len() - 1 - i)) & 1) as u8
    }

    pub fn bits(&self) -> Vec<u8> {
        (0..self.len()).map(|i| self.bit(i)).collect()
    }

    pub fn with_bit(&self, i: usize, b: u8) -> Self {
        let mask = 1u32 << (self.len() - 1 - i);
        let code = if b == 1 { self.code | mask } else { self.code & !mask };
        Self { len: self.len, code }
    }

    pub fn ones(&self) -> usize {
        self.code.count_ones() as usize
    }

    /// `n - 2·#1`.
    pub fn weight(&self) -> i32 {
        self.len() as i32 - 2 * self.ones() as i32
    }

    /// Sum of the positions holding a `1`; the bar involution only lowers it.
    pub fn key(&self) -> usize {
        (0..self.len()).filter(|&i| self.bit(i) == 1).sum()
    }

    /// The first `k` letters.
    pub fn prefix(&self, k: usize) -> Self {
        Self::new(k, self.code >> (self.len() - k))
    }

    /// The letters from position `k` on.
    pub fn suffix(&self, k: usize) -> Self {
        let rest = self.len() - k;
        let mask = if rest == 0 { 0 } else { u32::MAX >> (32 - rest) };
        Self::new(rest, self.code & mask)
    }

    pub fn concat(&self, other: &Self) -> Self {
        Self::new(self.len() + other.len(), (self.code << other.len) | other.code)
    }

    pub fn push(&self, b: u8) -> Self {
        self.concat(&Self::from_bits(&[b]))
    }

    pub fn reversed(&self) -> Self {
        let mut bits = self.bits();
        bits.reverse();
        Self::from_bits(&bits)
    }
}

impl fmt::Display for WeightString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len() {
            write!(f, "{}", self.bit(i))?;
        }
        Ok(())
    }
}

impl fmt::Debug for WeightString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{self}")
    }
}

impl FromStr for WeightString {
    type Err = Sl2Error;
    fn from_str(s: &str) -> Result<Self, Sl2Error> {
        if s.len() > MAX_LENGTH {
            return Err(Sl2Error::InvalidString(s.to_string()));
        }
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                _ => Err(Sl2Error::InvalidString(s.to_string())),
            })
            .collect::<Result<Vec<u8>, _>>()?;
        Ok(Self::from_bits(&bits))
    }
}

impl Serialize for WeightString {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for WeightString {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// An element of `V^{⊗n}` with coefficients in `Z[v, v^-1]`.
#[derive(Clone, PartialEq, Eq, Serialize)]
pub struct TensorVector {
    n: usize,
    #[serde(rename = "terms")]
    coeffs: BTreeMap<WeightString, LaurentPoly>,
}

impl TensorVector {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn basis(s: WeightString) -> Self {
        Self::from_term(s, LaurentPoly::one())
    }

    pub fn from_term(s: WeightString, c: LaurentPoly) -> Self {
        let mut out = Self::zero(s.len());
        out.add_term(s, c);
        out
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (WeightString, LaurentPoly)>) -> Self {
        let mut out = Self::zero(n);
        for (s, c) in terms {
            out.add_term(s, c);
        }
        out
    }

    /// Tensor length `n`, not the number of terms.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&WeightString, &LaurentPoly)> {
        self.coeffs.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = WeightString> + '_ {
        self.coeffs.keys().copied()
    }

    pub fn coefficient(&self, s: &WeightString) -> LaurentPoly {
        self.coeffs.get(s).cloned().unwrap_or_else(LaurentPoly::zero)
    }

    /// `self += f·other`, in place.
    pub fn add_scaled(&mut self, other: &TensorVector, f: &LaurentPoly) {
        for (s, c) in &other.coeffs {
            self.add_term(*s, c * f);
        }
    }

    pub fn add_term(&mut self, s: WeightString, c: LaurentPoly) {
        assert_eq!(s.len(), self.n, "string length mismatch");
        if c.is_zero() {
            return;
        }
        match self.coeffs.get_mut(&s) {
            Some(x) => {
                *x += &c;
                if x.is_zero() {
                    self.coeffs.remove(&s);
                }
            }
            None => {
                self.coeffs.insert(s, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (s, c) in &other.coeffs {
            out.add_term(*s, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-LaurentPoly::one()))
    }

    pub fn scale(&self, f: &LaurentPoly) -> Self {
        let mut out = Self::zero(self.n);
        for (s, c) in &self.coeffs {
            out.add_term(*s, c * f);
        }
        out
    }

    /// Applies the bar involution to every coefficient (not the involution `Ψ`).
    pub fn bar_coefficients(&self) -> Self {
        Self::from_terms(self.n, self.coeffs.iter().map(|(s, c)| (*s, c.bar())))
    }

    pub fn tensor(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.n + other.n);
        for (s, a) in &self.coeffs {
            for (t, b) in &other.coeffs {
                out.add_term(s.concat(t), a * b);
            }
        }
        out
    }

    /// The exact quotient `self / f` when every coefficient is divisible.
    pub fn exact_div(&self, f: &LaurentPoly) -> Option<Self> {
        let mut out = Self::zero(self.n);
        for (s, c) in &self.coeffs {
            out.add_term(*s, c.exact_div(f)?);
        }
        Some(out)
    }

    /// `Some(u)` with `self == u · other` for a unit `u = ±v^k`.
    pub fn unit_ratio(&self, other: &Self) -> Option<LaurentPoly> {
        let (s, c) = self.coeffs.iter().next()?;
        let u = c.exact_div(&other.coeffs.get(s)?.clone())?;
        if !u.is_unit() || &other.scale(&u) != self {
            return None;
        }
        Some(u)
    }
}

impl fmt::Debug for TensorVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, (s, c)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c}){s:?}")?;
        }
        Ok(())
    }
}

fn wt_prefix(s: &WeightString, i: usize) -> i32 {
    s.prefix(i).weight()
}

/// `E` on `V^{⊗n}` through `Δ(E) = E ⊗ 1 + K^{-1} ⊗ E`: the factor at position `i` is raised
/// and the factors before it contribute `v^{-wt(prefix)}`.
pub fn act_e(x: &TensorVector) -> TensorVector {
    let mut out = TensorVector::zero(x.len());
    for (s, c) in x.terms() {
        for i in 0..s.len() {
            if s.bit(i) == 1 {
                out.add_term(s.with_bit(i, 0), c.shift(-wt_prefix(s, i)));
            }
        }
    }
    out
}

/// `F` on `V^{⊗n}` through `Δ(F) = F ⊗ K + 1 ⊗ F`: the factor at position `i` is lowered and
/// the factors after it contribute `v^{wt(suffix)}`.
pub fn act_f(x: &TensorVector) -> TensorVector {
    let mut out = TensorVector::zero(x.len());
    for (s, c) in x.terms() {
        for i in 0..s.len() {
            if s.bit(i) == 0 {
                out.add_term(s.with_bit(i, 1), c.shift(s.suffix(i + 1).weight()));
            }
        }
    }
    out
}

/// `K^power`, acting on `x_a` by `v^{power · wt(a)}`.
pub fn act_k(x: &TensorVector, power: i32) -> TensorVector {
    TensorVector::from_terms(x.len(), x.terms().map(|(s, c)| (*s, c.shift(power * s.weight()))))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ws(s: &str) -> WeightString {
        s.parse().unwrap()
    }

    #[test]
    fn strings() {
        let s = ws("0110");
        assert_eq!(s.to_string(), "0110");
        assert_eq!(s.weight(), 0);
        assert_eq!(s.key(), 3);
        assert_eq!(s.prefix(2), ws("01"));
        assert_eq!(s.suffix(1), ws("110"));
        assert_eq!(s.suffix(4), WeightString::empty());
        assert_eq!(ws("01").concat(&ws("10")), s);
        assert_eq!(ws("0111").reversed(), ws("1110"));
        assert_eq!(WeightString::of_weight(4, 0).len(), 6);
        assert!("012".parse::<WeightString>().is_err());
        assert_eq!(serde_json::to_string(&s).unwrap(), "\"0110\"");
    }

    #[test]
    fn single_factor_action() {
        let x0 = TensorVector::basis(ws("0"));
        let x1 = TensorVector::basis(ws("1"));
        assert_eq!(act_e(&x1), x0);
        assert!(act_e(&x0).is_zero());
        assert_eq!(act_f(&x0), x1);
        assert!(act_f(&x1).is_zero());
        assert_eq!(act_k(&x0, 1), x0.scale(&LaurentPoly::v_pow(1)));
        assert_eq!(act_k(&x1, 1), x1.scale(&LaurentPoly::v_pow(-1)));
    }

    #[test]
    fn examples() {
        assert!(act_e(&TensorVector::basis(ws("00"))).is_zero());
        let x01 = TensorVector::basis(ws("01"));
        assert_eq!(act_k(&x01, 1), x01);
    }
}
