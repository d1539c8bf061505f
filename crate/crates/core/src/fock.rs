//! Truncated Fock space vectors and the bar involution.
//!
//! A vector is a finite combination of ordered wedges that all share the same
//! truncation length `r` and total charge. Bar acts on a frozen wedge by
//! reversing its first `r` factors, multiplying by `(-q)^{κ(d)} q^{-κ(c)}` and
//! straightening.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::combinatorics::{
    decode, encode, minimal_truncation, Ambient, BlockSpec, MultiCharge, MultiPartition,
    OrderedWedge, Partition,
};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::wedge::{bar_word_memo, InsertMemo};

/// The number of stored factors used for every wedge of a block.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TruncationPolicy {
    pub r: usize,
}

/// Default truncation: the smallest multiple of `nℓ` that is at least
/// `ℓ (N + max s - min s + 1)`, raised (to the next multiple of `nℓ`) if some
/// wedge of the block needs more.
pub fn choose_truncation(spec: &BlockSpec) -> Result<TruncationPolicy> {
    let l = spec.level();
    let period = spec.n * l;
    let spread = (spec.charge.max_charge() - spec.charge.min_charge()) as usize;
    let mut r = round_up(l * (spec.size + spread + 1), period);
    let needed = MultiPartition::all_of(spec.size, l)
        .iter()
        .map(|lam| minimal_truncation(lam, &spec.charge, spec.n))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .max()
        .unwrap_or(0);
    if needed > r {
        r = round_up(needed, period);
    }
    Ok(TruncationPolicy { r })
}

/// The smallest truncation that is valid for every wedge of the block.
pub fn minimal_block_truncation(spec: &BlockSpec) -> Result<usize> {
    Ok(MultiPartition::all_of(spec.size, spec.level())
        .iter()
        .map(|lam| minimal_truncation(lam, &spec.charge, spec.n))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .max()
        .unwrap_or(0))
}

fn round_up(x: usize, m: usize) -> usize {
    x.div_ceil(m) * m
}

/// A finite combination of `|λ; s⟩` inside one block, stored by index lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FockVector {
    pub spec: BlockSpec,
    pub r: usize,
    terms: BTreeMap<Vec<i64>, LaurentPoly>,
}

impl FockVector {
    pub fn zero(spec: BlockSpec, r: usize) -> Self {
        Self {
            spec,
            r,
            terms: BTreeMap::new(),
        }
    }

    /// The basis vector `|λ; s⟩`.
    pub fn basis(spec: &BlockSpec, lambda: &MultiPartition, r: usize) -> Result<Self> {
        if lambda.size() != spec.size {
            return Err(Error::InvalidParameter(format!(
                "{lambda} has size {} but the block has size {}",
                lambda.size(),
                spec.size
            )));
        }
        let w = encode(lambda, &spec.charge, spec.n, r)?;
        let mut v = Self::zero(spec.clone(), r);
        v.terms.insert(w.indices, LaurentPoly::one());
        Ok(v)
    }

    pub fn add_term(&mut self, indices: Vec<i64>, coeff: &LaurentPoly) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(indices.clone()).or_default();
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&indices);
        }
    }

    pub fn add_multipartition(
        &mut self,
        lambda: &MultiPartition,
        coeff: &LaurentPoly,
    ) -> Result<()> {
        let w = encode(lambda, &self.spec.charge, self.spec.n, self.r)?;
        self.add_term(w.indices, coeff);
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn wedge_terms(&self) -> impl Iterator<Item = (&Vec<i64>, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn coeff_of_wedge(&self, indices: &[i64]) -> LaurentPoly {
        self.terms.get(indices).cloned().unwrap_or_default()
    }

    pub fn coeff(&self, lambda: &MultiPartition) -> Result<LaurentPoly> {
        let w = encode(lambda, &self.spec.charge, self.spec.n, self.r)?;
        Ok(self.coeff_of_wedge(&w.indices))
    }

    /// Terms labelled by multipartitions.
    pub fn by_multipartition(&self) -> Result<BTreeMap<MultiPartition, LaurentPoly>> {
        let charge = self.spec.charge.total();
        self.terms
            .iter()
            .map(|(k, c)| {
                let (lam, s) = decode(
                    &OrderedWedge {
                        indices: k.clone(),
                        charge,
                    },
                    self.spec.n,
                    self.spec.level(),
                )?;
                if s != self.spec.charge {
                    return Err(Error::Engine(format!(
                        "term {k:?} left the block {}",
                        self.spec
                    )));
                }
                Ok((lam, c.clone()))
            })
            .collect()
    }

    /// Re-expresses the vector with a different truncation.
    pub fn with_truncation(&self, r: usize) -> Result<Self> {
        let charge = self.spec.charge.total();
        let mut out = Self::zero(self.spec.clone(), r);
        for (k, c) in &self.terms {
            let w = OrderedWedge {
                indices: k.clone(),
                charge,
            }
            .with_len(r)?;
            if !w.is_frozen() {
                return Err(Error::Truncation {
                    r,
                    detail: format!("{k:?} is not frozen at length {r}"),
                });
            }
            out.add_term(w.indices, c);
        }
        Ok(out)
    }

    pub fn scaled(&self, c: &LaurentPoly) -> Self {
        let mut out = Self::zero(self.spec.clone(), self.r);
        for (k, v) in &self.terms {
            out.add_term(k.clone(), &(v * c));
        }
        out
    }

    pub fn add_vector(&mut self, other: &FockVector) -> Result<()> {
        if other.spec != self.spec || other.r != self.r {
            return Err(Error::InvalidParameter(
                "vectors live in different blocks".into(),
            ));
        }
        for (k, c) in &other.terms {
            self.add_term(k.clone(), c);
        }
        Ok(())
    }

    pub fn to_json(&self) -> Result<Value> {
        let terms: Vec<Value> = self
            .by_multipartition()?
            .into_iter()
            .map(|(lam, c)| json!({ "multipartition": lam, "coeff": c.to_json() }))
            .collect();
        Ok(json!({ "block": block_json(&self.spec), "terms": terms }))
    }
}

pub(crate) fn block_json(spec: &BlockSpec) -> Value {
    json!({ "n": spec.n, "level": spec.level(), "charge": spec.charge, "size": spec.size })
}

fn check_frozen(indices: &[i64], charge: i64) -> Result<()> {
    let w = OrderedWedge {
        indices: indices.to_vec(),
        charge,
    };
    w.validate()?;
    if !w.is_frozen() {
        return Err(Error::Truncation {
            r: indices.len(),
            detail: format!("{indices:?} does not end in the consecutive tail"),
        });
    }
    Ok(())
}

/// `bar(|k⟩)` for a single frozen ordered wedge, with the same truncation.
pub fn bar_basis_wedge(
    indices: &[i64],
    charge: i64,
    memo: &mut InsertMemo,
) -> Result<BTreeMap<Vec<i64>, LaurentPoly>> {
    check_frozen(indices, charge)?;
    Ok(bar_word_memo(indices, memo).into_terms())
}

/// The bar involution, extended semilinearly (`q ↦ q^{-1}` on coefficients).
pub fn bar_vector(v: &FockVector) -> Result<FockVector> {
    let amb = v.spec.ambient();
    let charge = v.spec.charge.total();
    let parts: Vec<(LaurentPoly, BTreeMap<Vec<i64>, LaurentPoly>)> = v
        .terms
        .par_iter()
        .map_init(
            || InsertMemo::new(amb),
            |memo, (k, c)| Ok((c.bar(), bar_basis_wedge(k, charge, memo)?)),
        )
        .collect::<Result<_>>()?;
    let mut out = FockVector::zero(v.spec.clone(), v.r);
    for (c, expansion) in parts {
        for (k, a) in expansion {
            out.add_term(k, &(&a * &c));
        }
    }
    Ok(out)
}

/// `bar(|λ; s⟩)` for every `λ` of the block, in the order given, computed
/// with truncation `r`.
pub fn bar_rows(spec: &BlockSpec, lambdas: &[MultiPartition], r: usize) -> Result<Vec<FockVector>> {
    let amb = spec.ambient();
    let charge = spec.charge.total();
    lambdas
        .par_iter()
        .map_init(
            || InsertMemo::new(amb),
            |memo, lam| {
                let w = encode(lam, &spec.charge, spec.n, r)?;
                let mut v = FockVector::zero(spec.clone(), r);
                for (k, c) in bar_basis_wedge(&w.indices, charge, memo)? {
                    v.add_term(k, &c);
                }
                Ok(v)
            },
        )
        .collect()
}

/// Relabels a level-`ℓ` index whose component is not `j` to level `ℓ-1`.
fn drop_component(k: i64, j: usize, amb: &Ambient, lower: &Ambient) -> Result<i64> {
    let mut t = amb.split(k);
    if t.d as usize > j {
        t.d -= 1;
    }
    lower.join(t)
}

/// `ǔ`: the factors of `w` outside component `j`, in their original order and
/// still labelled at level `ℓ`.
pub fn check_vector_raw(w: &[i64], j: usize, amb: &Ambient) -> Result<Vec<i64>> {
    if j == 0 || j > amb.level {
        return Err(Error::OutOfRange(format!(
            "component {j} of level {}",
            amb.level
        )));
    }
    Ok(w.iter()
        .copied()
        .filter(|&k| amb.split(k).d as usize != j)
        .collect())
}

/// `ǔ` relabelled as a word of level `ℓ-1`.
pub fn check_vector(w: &[i64], j: usize, amb: &Ambient) -> Result<Vec<i64>> {
    if amb.level < 2 {
        return Err(Error::Precondition(
            "removing a component needs level at least 2".into(),
        ));
    }
    let lower = Ambient::new(amb.n, amb.level - 1)?;
    check_vector_raw(w, j, amb)?
        .into_iter()
        .map(|k| drop_component(k, j, amb, &lower))
        .collect()
}

/// The first `depth` factors of `λ^[j] = u_{s_j+λ_1}^{(j)} ∧ u_{s_j+λ_2-1}^{(j)} ∧ ...`
/// as raw indices.
pub fn partition_column(
    j: usize,
    lambda: &Partition,
    s: &MultiCharge,
    depth: usize,
    amb: &Ambient,
) -> Result<Vec<i64>> {
    if j == 0 || j > amb.level || s.level() != amb.level {
        return Err(Error::OutOfRange(format!(
            "component {j} of level {}",
            amb.level
        )));
    }
    Ok((1..=depth)
        .map(|a| amb.global(s.get(j) + lambda.part(a) as i64 - a as i64 + 1, j))
        .collect())
}

/// The first `depth` factors of `∅^[j]`.
pub fn empty_column(j: usize, s: &MultiCharge, depth: usize, amb: &Ambient) -> Result<Vec<i64>> {
    partition_column(j, &Partition::empty(), s, depth, amb)
}
