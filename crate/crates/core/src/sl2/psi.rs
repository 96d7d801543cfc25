use num_traits::Zero;

use super::tensor::{act_e, act_f, TensorVector, WeightString};
use super::Sl2Error;
use crate::LaurentPoly;

/// The coefficient `c` of `Θ = 1 + c·F ⊗ E` on `V ⊗ V`.
///
/// `F^k ⊗ E^k` vanishes on `V ⊗ V` for `k >= 2`, so `c` is the only unknown. It is determined
/// by asking the candidate `Ψ(x_01) = x_01 + c·x_10` to commute with `E`, and the answer is
/// then checked to make `Ψ` an involution on `V ⊗ V` (which needs `bar(c) = -c`).
pub fn quasi_r_coefficient() -> Result<LaurentPoly, Sl2Error> {
    let x01 = TensorVector::basis("01".parse()?);
    let x10 = TensorVector::basis("10".parse()?);
    let top: WeightString = "00".parse()?;
    let e01 = act_e(&x01).coefficient(&top);
    let e10 = act_e(&x10).coefficient(&top);
    // Ψ(E x01) = bar(e01) x00 must equal E(x01 + c x10) = (e01 + c e10) x00
    let c = (&e01.bar() - &e01)
        .exact_div(&e10)
        .ok_or_else(|| Sl2Error::Convention("quasi-R coefficient is not a Laurent polynomial".into()))?;
    if !(&c + &c.bar()).is_zero() {
        return Err(Sl2Error::Convention(format!("Θ coefficient {c} does not give an involution")));
    }
    Ok(c)
}

/// The involution `Ψ` on `V^{⊗n}`, stored as the images of the standard basis.
///
/// `Ψ(x_a ⊗ x_b) = Θ(Ψ(x_a) ⊗ x_b)` for a word `a` and a single letter `b`, where `F` acts on
/// the first `n - 1` factors through the iterated coproduct and `E` on the last factor.
#[derive(Clone, Debug)]
pub struct BarInvolution {
    n: usize,
    images: Vec<TensorVector>,
}

impl BarInvolution {
    pub fn new(n: usize) -> Result<Self, Sl2Error> {
        let c = quasi_r_coefficient()?;
        let mut images = vec![TensorVector::basis(WeightString::empty())];
        let x0 = TensorVector::basis(WeightString::from_bits(&[0]));
        for len in 1..=n {
            let mut next = Vec::with_capacity(1 << len);
            for s in WeightString::all(len) {
                let head = &images[s.prefix(len - 1).code() as usize];
                let last = s.suffix(len - 1);
                let mut image = head.tensor(&TensorVector::basis(last));
                if last.bit(0) == 1 {
                    image = image.add(&act_f(head).scale(&c).tensor(&x0));
                }
                next.push(image);
            }
            images = next;
        }
        Ok(Self { n, images })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// `Ψ(x_s)`.
    pub fn image(&self, s: WeightString) -> &TensorVector {
        &self.images[s.code() as usize]
    }

    /// `Ψ(Σ f_s x_s) = Σ bar(f_s) Ψ(x_s)`.
    pub fn apply(&self, x: &TensorVector) -> TensorVector {
        let mut out = TensorVector::zero(self.n);
        for (s, c) in x.terms() {
            out.add_scaled(self.image(*s), &c.bar());
        }
        out
    }

    /// Checks that `Ψ(x_a) - x_a` only involves strings of strictly smaller key.
    pub fn check_triangular(&self) -> Result<(), Sl2Error> {
        for s in WeightString::all(self.n) {
            for t in self.image(s).support() {
                if t != s && t.key() >= s.key() {
                    return Err(Sl2Error::Triangularity {
                        string: s.to_string(),
                        detail: format!("Ψ(x_{s}) involves x_{t}"),
                    });
                }
            }
            if self.image(s).coefficient(&s) != LaurentPoly::from_i64(1) {
                return Err(Sl2Error::Triangularity {
                    string: s.to_string(),
                    detail: "diagonal coefficient is not 1".into(),
                });
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sl2::tensor::act_k;

    #[test]
    fn coefficient_is_v_minus_inverse() {
        let c = quasi_r_coefficient().unwrap();
        assert_eq!(c, &LaurentPoly::v_pow(1) - &LaurentPoly::v_pow(-1));
    }

    #[test]
    fn psi_is_an_equivariant_involution() {
        for n in 0..=5 {
            let psi = BarInvolution::new(n).unwrap();
            psi.check_triangular().unwrap();
            for s in WeightString::all(n) {
                let x = TensorVector::basis(s);
                assert_eq!(psi.apply(&psi.apply(&x)), x, "Ψ² at {s}");
                assert_eq!(psi.apply(&act_e(&x)), act_e(&psi.apply(&x)));
                assert_eq!(psi.apply(&act_f(&x)), act_f(&psi.apply(&x)));
                assert_eq!(psi.apply(&act_k(&x, 1)), act_k(&psi.apply(&x), -1));
            }
        }
    }

    #[test]
    fn examples() {
        let psi = BarInvolution::new(2).unwrap();
        let x01 = TensorVector::basis("01".parse().unwrap());
        let x10 = TensorVector::basis("10".parse().unwrap());
        let c = quasi_r_coefficient().unwrap();
        assert_eq!(psi.apply(&x01), x01.add(&x10.scale(&c)));
        let top = TensorVector::basis("0000".parse().unwrap());
        assert_eq!(BarInvolution::new(4).unwrap().apply(&top), top);
    }
}
