use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;
use serde::Serialize;
use serde_json::json;

use super::canonical::{canonical_basis_by_tensoring, lo_of, partition_label, BasedModuleData};
use super::hom::{bend, Sl2Map};
use super::invariants::{dual_canonical_invariants, invariant_dimension};
use super::tensor::WeightString;
use super::Sl2Error;
use crate::cellular::{CellDatum, Poset};
use crate::{Label, LaurentPoly};

/// `|(B ⋄ B')[0]| = Σ_μ |B[μ]^{lo}|·|B'[μ]^{hi}|` for one pair of tensor lengths.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountingCheck {
    pub n: usize,
    pub m: usize,
    pub b0: usize,
    pub sum: usize,
    pub holds: bool,
}

/// The cell datum on `V^{⊗n}`, `0 <= n <= max_n`: `K(n, λ) = B_n[λ]^{hi}` and `C(S, T)` is
/// the bent dual canonical invariant of `V^{⊗(n+m)}` whose leading string is `lo(S)·T`.
pub struct Sl2CellDatum {
    max_n: usize,
    poset: Poset,
    cells: HashMap<(usize, Label), Vec<WeightString>>,
    maps: HashMap<(usize, usize), BTreeMap<WeightString, Sl2Map>>,
    coordinates: HashMap<(usize, usize), HashMap<(WeightString, WeightString), usize>>,
    ambient: HashMap<usize, usize>,
    counting: Vec<CountingCheck>,
    bases: Vec<BasedModuleData>,
}

/// Builds the datum with the increasing order on labels.
pub fn build_sl2_cell_datum(max_n: usize) -> Result<Sl2CellDatum, Sl2Error> {
    let order: Vec<Label> = (0..=max_n).collect();
    Sl2CellDatum::with_poset(max_n, Poset::chain(&order))
}

impl Sl2CellDatum {
    pub fn with_poset(max_n: usize, poset: Poset) -> Result<Self, Sl2Error> {
        let bases = (0..=2 * max_n)
            .map(canonical_basis_by_tensoring)
            .collect::<Result<Vec<_>, _>>()?;
        let mut cells = HashMap::new();
        for n in 0..=max_n {
            for lambda in 0..=max_n {
                let k: Vec<WeightString> = bases[n]
                    .elements
                    .iter()
                    .filter(|e| e.lambda == lambda && e.hi)
                    .map(|e| e.leading)
                    .collect();
                cells.insert((n, lambda), k);
            }
        }
        let mut ambient = HashMap::new();
        let mut duals = HashMap::new();
        for (total, data) in bases.iter().enumerate() {
            let known = if total % 2 == 0 {
                let d = dual_canonical_invariants(data)?;
                let k = d.len();
                duals.insert(total, d);
                k
            } else {
                0
            };
            ambient.insert(total, invariant_dimension(total, known));
        }
        let mut maps = HashMap::new();
        let mut coordinates = HashMap::new();
        let mut counting = Vec::new();
        for n in 0..=max_n {
            for m in 0..=max_n {
                let pairs: HashMap<(WeightString, WeightString), usize> = WeightString::all(n)
                    .flat_map(|s| WeightString::all(m).filter(move |t| t.weight() == s.weight()).map(move |t| (s, t)))
                    .enumerate()
                    .map(|(i, p)| (p, i))
                    .collect();
                coordinates.insert((n, m), pairs);
                let mut bent = BTreeMap::new();
                if (n + m) % 2 == 0 {
                    for (a, w) in &duals[&(n + m)] {
                        let (first, second) = (a.prefix(n), a.suffix(n));
                        let (l1, l2) = (partition_label(&first), partition_label(&second));
                        if !(l1.lo && l2.hi && l1.lambda == l2.lambda && lo_of(&first) == first) {
                            return Err(Sl2Error::Labelling(
                                json!({
                                    "n": n, "m": m, "element": a,
                                    "first": { "block": first, "lambda": l1.lambda, "lo": l1.lo },
                                    "second": { "block": second, "lambda": l2.lambda, "hi": l2.hi },
                                })
                                .to_string(),
                            ));
                        }
                        bent.insert(*a, bend(w, n, m)?);
                    }
                }
                let sum = (0..=max_n)
                    .map(|mu| {
                        let lo = bases[n].elements.iter().filter(|e| e.lambda == mu && e.lo).count();
                        let hi = bases[m].elements.iter().filter(|e| e.lambda == mu && e.hi).count();
                        lo * hi
                    })
                    .sum();
                let b0 = bases[n + m].elements.iter().filter(|e| e.lambda == 0).count();
                counting.push(CountingCheck {
                    n,
                    m,
                    b0,
                    sum,
                    holds: b0 == sum,
                });
                maps.insert((n, m), bent);
            }
        }
        Ok(Self {
            max_n,
            poset,
            cells,
            maps,
            coordinates,
            ambient,
            counting,
            bases,
        })
    }

    pub fn max_n(&self) -> usize {
        self.max_n
    }

    pub fn counting_checks(&self) -> &[CountingCheck] {
        &self.counting
    }

    /// The canonical basis of `V^{⊗n}` for `n <= 2·max_n`.
    pub fn based_module(&self, n: usize) -> &BasedModuleData {
        &self.bases[n]
    }

    /// The Hom-space basis in `Hom(V^{⊗n}, V^{⊗m})`, keyed by the leading string in
    /// `B_{n+m}[0]`.
    pub fn hom_maps(&self, n: usize, m: usize) -> &BTreeMap<WeightString, Sl2Map> {
        &self.maps[&(n, m)]
    }
}

impl CellDatum for Sl2CellDatum {
    type Index = WeightString;
    type Morphism = Sl2Map;
    type Scalar = LaurentPoly;

    fn name(&self) -> String {
        format!("sl2 canonical basis (n <= {})", self.max_n)
    }

    fn objects(&self) -> Vec<usize> {
        (0..=self.max_n).collect()
    }

    fn poset(&self) -> &Poset {
        &self.poset
    }

    fn cells(&self, n: usize, label: Label) -> Vec<WeightString> {
        self.cells.get(&(n, label)).cloned().unwrap_or_default()
    }

    fn cell_morphism(&self, _label: Label, s: &WeightString, t: &WeightString) -> Sl2Map {
        let key = lo_of(s).concat(t);
        self.maps[&(s.len(), t.len())][&key].clone()
    }

    fn compose(&self, first: &Sl2Map, then: &Sl2Map) -> Sl2Map {
        first.compose(then)
    }

    fn star(&self, f: &Sl2Map) -> Sl2Map {
        f.star()
    }

    fn ambient_dimension(&self, n: usize, m: usize) -> usize {
        self.ambient[&(n + m)]
    }

    fn coordinates(&self, f: &Sl2Map, n: usize, m: usize) -> Vec<LaurentPoly> {
        let index = &self.coordinates[&(n, m)];
        let mut out = vec![LaurentPoly::zero(); index.len()];
        for ((s, t), c) in f.entries() {
            out[index[&(*s, *t)]] = c.clone();
        }
        out
    }
}
