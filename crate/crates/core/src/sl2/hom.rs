use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use super::canonical::BasedModuleData;
use super::invariants::{cup_coefficients, dual_canonical_invariants, invariant_dimension};
use super::tensor::{act_e, act_f, act_k, TensorVector, WeightString};
use super::Sl2Error;
use crate::LaurentPoly;

/// A `Z[v, v^-1]`-linear map `V^{⊗n} -> V^{⊗m}` that preserves weights, stored sparsely as
/// `(source string, target string) -> coefficient`.
#[derive(Clone, PartialEq, Eq)]
pub struct Sl2Map {
    n: usize,
    m: usize,
    entries: BTreeMap<(WeightString, WeightString), LaurentPoly>,
}

impl Sl2Map {
    pub fn zero(n: usize, m: usize) -> Self {
        Self {
            n,
            m,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut out = Self::zero(n, n);
        for s in WeightString::all(n) {
            out.add_entry(s, s, LaurentPoly::one());
        }
        out
    }

    /// The map sending `x_s` to `images[s]`.
    pub fn from_images(n: usize, m: usize, images: impl IntoIterator<Item = (WeightString, TensorVector)>) -> Self {
        let mut out = Self::zero(n, m);
        for (s, y) in images {
            for (t, c) in y.terms() {
                out.add_entry(s, *t, c.clone());
            }
        }
        out
    }

    fn add_entry(&mut self, s: WeightString, t: WeightString, c: LaurentPoly) {
        assert_eq!((s.len(), t.len()), (self.n, self.m), "entry shape mismatch");
        assert_eq!(s.weight(), t.weight(), "maps must preserve weight");
        if c.is_zero() {
            return;
        }
        let key = (s, t);
        match self.entries.get_mut(&key) {
            Some(x) => {
                *x += &c;
                if x.is_zero() {
                    self.entries.remove(&key);
                }
            }
            None => {
                self.entries.insert(key, c);
            }
        }
    }

    pub fn source(&self) -> usize {
        self.n
    }

    pub fn target(&self) -> usize {
        self.m
    }

    pub fn entry(&self, s: &WeightString, t: &WeightString) -> LaurentPoly {
        self.entries.get(&(*s, *t)).cloned().unwrap_or_else(LaurentPoly::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(WeightString, WeightString), &LaurentPoly)> {
        self.entries.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// The image of `x_s`.
    pub fn image(&self, s: &WeightString) -> TensorVector {
        let lo = (*s, WeightString::new(self.m, 0));
        let mut out = TensorVector::zero(self.m);
        for ((_, t), c) in self.entries.range(lo..).take_while(|((x, _), _)| x == s) {
            out.add_term(*t, c.clone());
        }
        out
    }

    pub fn apply(&self, x: &TensorVector) -> TensorVector {
        let mut out = TensorVector::zero(self.m);
        for (s, c) in x.terms() {
            out.add_scaled(&self.image(s), c);
        }
        out
    }

    /// `self` first, then `next`.
    pub fn compose(&self, next: &Sl2Map) -> Sl2Map {
        assert_eq!(self.m, next.n, "object mismatch");
        let mut out = Sl2Map::zero(self.n, next.m);
        let mut rows: BTreeMap<WeightString, Vec<(WeightString, &LaurentPoly)>> = BTreeMap::new();
        for ((t, u), c) in &next.entries {
            rows.entry(*t).or_default().push((*u, c));
        }
        for ((s, t), a) in &self.entries {
            if let Some(row) = rows.get(t) {
                for (u, b) in row {
                    out.add_entry(*s, *u, a * *b);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Sl2Map) -> Sl2Map {
        let mut out = self.clone();
        for ((s, t), c) in &other.entries {
            out.add_entry(*s, *t, c.clone());
        }
        out
    }

    pub fn scale(&self, f: &LaurentPoly) -> Sl2Map {
        let mut out = Sl2Map::zero(self.n, self.m);
        for ((s, t), c) in &self.entries {
            out.add_entry(*s, *t, c * f);
        }
        out
    }

    /// The anti-involution: reverse every string, transpose, and bar every coefficient.
    pub fn star(&self) -> Sl2Map {
        let mut out = Sl2Map::zero(self.m, self.n);
        for ((s, t), c) in &self.entries {
            out.add_entry(t.reversed(), s.reversed(), c.bar());
        }
        out
    }

    /// Commutes with `E`, `F` and `K` on every standard basis vector.
    pub fn is_equivariant(&self) -> bool {
        WeightString::all(self.n).all(|s| {
            let x = TensorVector::basis(s);
            let gx = self.image(&s);
            self.apply(&act_e(&x)) == act_e(&gx)
                && self.apply(&act_f(&x)) == act_f(&gx)
                && self.apply(&act_k(&x, 1)) == act_k(&gx, 1)
        })
    }
}

impl fmt::Debug for Sl2Map {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}->{}]", self.n, self.m)?;
        for ((s, t), c) in &self.entries {
            write!(f, " {s}->{t}:({c})")?;
        }
        Ok(())
    }
}

#[derive(Serialize)]
struct RawEntry<'a> {
    source: WeightString,
    target: WeightString,
    coeff: &'a LaurentPoly,
}

impl Serialize for Sl2Map {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let entries: Vec<RawEntry> = self
            .entries
            .iter()
            .map(|((s, t), c)| RawEntry {
                source: *s,
                target: *t,
                coeff: c,
            })
            .collect();
        let mut st = serializer.serialize_struct("Sl2Map", 3)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("m", &self.m)?;
        st.serialize_field("entries", &entries)?;
        st.end()
    }
}

/// Bends an invariant `w` of `V^{⊗(n+m)}` into a map `V^{⊗n} -> V^{⊗m}` by capping the first
/// `n` factors of `w` against the source with nested caps (source position `i` meets factor
/// `n - 1 - i`), using the cup coefficients as the cap pairing.
pub fn bend(w: &TensorVector, n: usize, m: usize) -> Result<Sl2Map, Sl2Error> {
    assert_eq!(w.len(), n + m, "invariant length mismatch");
    let cap = cup_coefficients()?;
    let mut out = Sl2Map::zero(n, m);
    for s in WeightString::all(n) {
        for (st, c) in w.terms() {
            let (sp, t) = (st.prefix(n), st.suffix(n));
            let mut k = c.clone();
            for i in 0..n {
                k = &k * &cap[s.bit(i) as usize][sp.bit(n - 1 - i) as usize];
                if k.is_zero() {
                    break;
                }
            }
            if !k.is_zero() {
                out.add_entry(s, t, k);
            }
        }
    }
    Ok(out)
}

/// A basis of `Hom(V^{⊗a}, V^{⊗b})`: the dual canonical invariants of `V^{⊗(a+b)}`, bent.
/// Every map is checked to be equivariant, and their number to be the dimension of the
/// invariants.
pub fn hom_space_basis(data: &BasedModuleData, a: usize, b: usize) -> Result<Vec<(WeightString, Sl2Map)>, Sl2Error> {
    assert_eq!(data.n, a + b, "based module has the wrong length");
    let duals = dual_canonical_invariants(data)?;
    let dimension = invariant_dimension(data.n, duals.len());
    if duals.len() != dimension {
        return Err(Sl2Error::DegeneratePairing(format!(
            "{} dual canonical invariants for an invariant space of dimension {dimension}",
            duals.len()
        )));
    }
    let mut out = Vec::new();
    for (s, w) in duals {
        let g = bend(&w, a, b)?;
        if !g.is_equivariant() {
            return Err(Sl2Error::Convention(format!("bent invariant {s} is not equivariant")));
        }
        out.push((s, g));
    }
    Ok(out)
}
