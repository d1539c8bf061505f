//! Level reduction for decomposition matrices.
//!
//! When one charge component `s_j` is far above the others (sufficiently
//! large) or far below them (sufficiently small), `Δ^ε` of level `ℓ` agrees
//! entry by entry with `Δ^ε` of level `ℓ - 1` obtained by deleting the `j`-th
//! component. The checkers here recompute both sides from scratch and report
//! every compared entry. The quotient space gives a second route to the
//! small-charge case.

use std::collections::BTreeMap;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canonical::{decompose, BarMatrix, BlockCache, DecompMatrix, Sign};
use crate::combinatorics::{
    decode, enumerate_block, BlockSpec, MultiCharge, MultiPartition, OrderedWedge,
};
use crate::error::{Error, Result};
use crate::fock::{bar_rows, choose_truncation, FockVector};
use crate::laurent::LaurentPoly;

fn check_component(s: &MultiCharge, j: usize) -> Result<()> {
    if j == 0 || j > s.level() {
        return Err(Error::OutOfRange(format!(
            "component {j} of level {}",
            s.level()
        )));
    }
    Ok(())
}

/// `s_j - s_i >= λ^{(i)}_1` for every `i`, including `i = j` (so `λ^{(j)}`
/// must be empty).
pub fn is_sufficiently_large(s: &MultiCharge, j: usize, lambda: &MultiPartition) -> Result<bool> {
    check_component(s, j)?;
    if lambda.level() != s.level() {
        return Err(Error::InvalidParameter(format!(
            "{lambda} does not have level {}",
            s.level()
        )));
    }
    Ok((1..=s.level()).all(|i| s.get(j) - s.get(i) >= lambda.component(i).part(1) as i64))
}

/// `s_i - s_j >= N` for every `i ≠ j`.
pub fn is_sufficiently_small(s: &MultiCharge, j: usize, size: usize) -> Result<bool> {
    check_component(s, j)?;
    Ok((1..=s.level())
        .filter(|&i| i != j)
        .all(|i| s.get(i) - s.get(j) >= size as i64))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConditionKind {
    SufficientlyLarge,
    SufficientlySmall,
}

/// What the condition is measured against: a multipartition for the large
/// case, a size bound for the small case.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    Multipartition(MultiPartition),
    Size(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChargeCondition {
    pub j: usize,
    pub kind: ConditionKind,
    pub witness: Witness,
}

impl ChargeCondition {
    pub fn holds(&self, s: &MultiCharge) -> Result<bool> {
        match (&self.kind, &self.witness) {
            (ConditionKind::SufficientlyLarge, Witness::Multipartition(l)) => {
                is_sufficiently_large(s, self.j, l)
            }
            (ConditionKind::SufficientlySmall, Witness::Size(n)) => {
                is_sufficiently_small(s, self.j, *n)
            }
            (ConditionKind::SufficientlyLarge, Witness::Size(_)) => Err(Error::InvalidParameter(
                "the large condition needs a multipartition".into(),
            )),
            (ConditionKind::SufficientlySmall, Witness::Multipartition(l)) => {
                is_sufficiently_small(s, self.j, l.size())
            }
        }
    }
}

/// Deletes component `j` of a multipartition.
pub fn omit_partition(lambda: &MultiPartition, j: usize) -> Result<MultiPartition> {
    lambda.omit(j)
}

/// Deletes component `j` of a multicharge.
pub fn omit_charge(s: &MultiCharge, j: usize) -> Result<MultiCharge> {
    s.omit(j)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Theorem {
    A,
    B,
}

/// The parameters of one check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseInfo {
    pub n: usize,
    #[serde(rename = "ℓ")]
    pub level: usize,
    pub s: MultiCharge,
    #[serde(rename = "N")]
    pub size: usize,
    pub j: usize,
    pub sign: Sign,
}

impl CaseInfo {
    pub fn spec(&self) -> Result<BlockSpec> {
        BlockSpec::new(self.n, self.s.clone(), self.size)
    }
}

/// One compared entry: `lhs` at level `ℓ`, `rhs` at level `ℓ - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Comparison {
    #[serde(rename = "λ")]
    pub lambda: MultiPartition,
    #[serde(rename = "μ")]
    pub mu: MultiPartition,
    pub lhs: LaurentPoly,
    pub rhs: LaurentPoly,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub theorem: Theorem,
    pub case: CaseInfo,
    pub comparisons: Vec<Comparison>,
    /// Rows (theorem A) or columns (theorem B) that met the charge condition.
    pub qualifying: usize,
    pub seed: Option<u64>,
    pub r_used: usize,
    pub r_lower: usize,
    /// Wall-clock seconds. This is the only field that varies between
    /// identical runs.
    pub elapsed: f64,
}

impl TheoremReport {
    pub fn passed(&self) -> bool {
        self.comparisons.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Comparison> {
        self.comparisons.iter().filter(|c| !c.pass)
    }
}

/// How the truncation of each block is chosen by the checkers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Truncation {
    /// [`choose_truncation`] for each block.
    #[default]
    Default,
    /// The same fixed `r` for the level-`ℓ` block; the level-`ℓ-1` block uses
    /// its default.
    Fixed(usize),
}

fn level_matrices(
    spec: &BlockSpec,
    j: usize,
    sign: Sign,
    trunc: Truncation,
    cache: &BlockCache,
) -> Result<(DecompMatrix, usize, MultiCharge)> {
    if spec.level() < 2 {
        return Err(Error::Precondition("level reduction needs ℓ >= 2".into()));
    }
    check_component(&spec.charge, j)?;
    let r = match trunc {
        Truncation::Default => choose_truncation(spec)?.r,
        Truncation::Fixed(r) => r,
    };
    let upper = cache.decomposition(spec, sign, Some(r))?;
    Ok((upper, r, spec.charge.omit(j)?))
}

/// Lower-level matrices for every size that can occur, built lazily.
struct LowerLevel<'a> {
    n: usize,
    charge: MultiCharge,
    sign: Sign,
    cache: &'a BlockCache,
    blocks: BTreeMap<usize, DecompMatrix>,
    r_max: usize,
}

impl<'a> LowerLevel<'a> {
    fn entry(&mut self, lambda: &MultiPartition, mu: &MultiPartition) -> Result<LaurentPoly> {
        if lambda.size() != mu.size() {
            return Ok(LaurentPoly::zero());
        }
        let size = lambda.size();
        if !self.blocks.contains_key(&size) {
            let spec = BlockSpec::new(self.n, self.charge.clone(), size)?;
            let r = choose_truncation(&spec)?.r;
            self.r_max = self.r_max.max(r);
            let m = self.cache.decomposition(&spec, self.sign, Some(r))?;
            self.blocks.insert(size, m);
        }
        Ok(self.blocks[&size].get(lambda, mu))
    }
}

/// Checks `Δ^ε_{λ,μ;s} = Δ^ε_{λ̌,μ̌;š}` for every `λ` of the block such that
/// `s_j` is sufficiently large for `λ`, and every `μ` where either side is
/// nonzero.
pub fn check_theorem_a(spec: &BlockSpec, j: usize, sign: Sign) -> Result<TheoremReport> {
    check_theorem_a_with(spec, j, sign, Truncation::Default, &BlockCache::new())
}

pub fn check_theorem_a_with(
    spec: &BlockSpec,
    j: usize,
    sign: Sign,
    trunc: Truncation,
    cache: &BlockCache,
) -> Result<TheoremReport> {
    let start = Instant::now();
    let (upper, r, lower_charge) = level_matrices(spec, j, sign, trunc, cache)?;
    let mut lower = LowerLevel {
        n: spec.n,
        charge: lower_charge,
        sign,
        cache,
        blocks: BTreeMap::new(),
        r_max: 0,
    };
    let mut comparisons = Vec::new();
    let mut qualifying = 0;
    for lambda in upper.order() {
        if !is_sufficiently_large(&spec.charge, j, lambda)? {
            continue;
        }
        qualifying += 1;
        let lc = lambda.omit(j)?;
        for mu in upper.order() {
            let lhs = upper.get(lambda, mu);
            let rhs = lower.entry(&lc, &mu.omit(j)?)?;
            if lhs.is_zero() && rhs.is_zero() {
                continue;
            }
            comparisons.push(Comparison {
                lambda: lambda.clone(),
                mu: mu.clone(),
                pass: lhs == rhs,
                lhs,
                rhs,
            });
        }
    }
    Ok(TheoremReport {
        theorem: Theorem::A,
        case: case_info(spec, j, sign),
        comparisons,
        qualifying,
        seed: None,
        r_used: r,
        r_lower: lower.r_max,
        elapsed: start.elapsed().as_secs_f64(),
    })
}

/// Checks `Δ^ε_{λ,μ;s} = Δ^ε_{λ̌,μ̌;š}` for every `μ` with `μ^{(j)} = ∅` such
/// that `s_j` is sufficiently small for `|μ|`, and every `λ` where either
/// side is nonzero.
pub fn check_theorem_b(spec: &BlockSpec, j: usize, sign: Sign) -> Result<TheoremReport> {
    check_theorem_b_with(spec, j, sign, Truncation::Default, &BlockCache::new())
}

pub fn check_theorem_b_with(
    spec: &BlockSpec,
    j: usize,
    sign: Sign,
    trunc: Truncation,
    cache: &BlockCache,
) -> Result<TheoremReport> {
    let start = Instant::now();
    let (upper, r, lower_charge) = level_matrices(spec, j, sign, trunc, cache)?;
    let mut lower = LowerLevel {
        n: spec.n,
        charge: lower_charge,
        sign,
        cache,
        blocks: BTreeMap::new(),
        r_max: 0,
    };
    let mut comparisons = Vec::new();
    let mut qualifying = 0;
    if is_sufficiently_small(&spec.charge, j, spec.size)? {
        for mu in upper.order() {
            if !mu.component(j).is_empty() {
                continue;
            }
            qualifying += 1;
            let mc = mu.omit(j)?;
            for lambda in upper.order() {
                let lhs = upper.get(lambda, mu);
                let rhs = lower.entry(&lambda.omit(j)?, &mc)?;
                if lhs.is_zero() && rhs.is_zero() {
                    continue;
                }
                comparisons.push(Comparison {
                    lambda: lambda.clone(),
                    mu: mu.clone(),
                    pass: lhs == rhs,
                    lhs,
                    rhs,
                });
            }
        }
    }
    Ok(TheoremReport {
        theorem: Theorem::B,
        case: case_info(spec, j, sign),
        comparisons,
        qualifying,
        seed: None,
        r_used: r,
        r_lower: lower.r_max,
        elapsed: start.elapsed().as_secs_f64(),
    })
}

fn case_info(spec: &BlockSpec, j: usize, sign: Sign) -> CaseInfo {
    CaseInfo {
        n: spec.n,
        level: spec.level(),
        s: spec.charge.clone(),
        size: spec.size,
        j,
        sign,
    }
}

/// The span of `|λ; s⟩` with `λ^{(j)} = ∅` and `|λ| <= N`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientSpace {
    pub n: usize,
    pub charge: MultiCharge,
    pub j: usize,
    pub bound: usize,
}

impl QuotientSpace {
    pub fn new(n: usize, charge: MultiCharge, j: usize, bound: usize) -> Result<Self> {
        check_component(&charge, j)?;
        BlockSpec::new(n, charge.clone(), 0)?;
        Ok(Self {
            n,
            charge,
            j,
            bound,
        })
    }

    pub fn contains(&self, lambda: &MultiPartition) -> bool {
        lambda.component(self.j).is_empty() && lambda.size() <= self.bound
    }

    /// The transported bar involution is only defined when `s_j` is
    /// sufficiently small for `N`.
    pub fn is_well_posed(&self) -> Result<bool> {
        is_sufficiently_small(&self.charge, self.j, self.bound)
    }

    fn block(&self, size: usize) -> Result<BlockSpec> {
        BlockSpec::new(self.n, self.charge.clone(), size)
    }

    fn labels(&self, size: usize) -> Result<Vec<MultiPartition>> {
        Ok(enumerate_block(&self.block(size)?)?
            .into_iter()
            .filter(|l| self.contains(l))
            .collect())
    }
}

/// `π`: keeps the terms `|λ; s⟩` with `λ^{(j)} = ∅` and `|λ| <= N`.
pub fn project_quotient(v: &FockVector, q: &QuotientSpace) -> Result<FockVector> {
    if v.spec.n != q.n || v.spec.charge != q.charge {
        return Err(Error::InvalidParameter(
            "vector and quotient live over different charges".into(),
        ));
    }
    let mut out = FockVector::zero(v.spec.clone(), v.r);
    if v.spec.size > q.bound {
        return Ok(out);
    }
    let charge = v.spec.charge.total();
    for (k, c) in v.wedge_terms() {
        let (lam, _) = decode(
            &OrderedWedge {
                indices: k.clone(),
                charge,
            },
            v.spec.n,
            v.spec.level(),
        )?;
        if q.contains(&lam) {
            out.add_term(k.clone(), c);
        }
    }
    Ok(out)
}

/// `Δ̃^ε` of the quotient, one matrix per size `0..=N`. Each is produced by
/// the triangular solve on the bar matrix `π(bar |λ; s⟩)` restricted to the
/// quotient labels.
pub fn quotient_canonical_basis(q: &QuotientSpace, sign: Sign) -> Result<Vec<DecompMatrix>> {
    if !q.is_well_posed()? {
        return Err(Error::Precondition(format!(
            "s_{} is not sufficiently small for N = {}",
            q.j, q.bound
        )));
    }
    (0..=q.bound)
        .map(|size| decompose(&quotient_bar_matrix(q, size)?, sign))
        .collect()
}

/// The bar matrix of the quotient in size `size`.
pub fn quotient_bar_matrix(q: &QuotientSpace, size: usize) -> Result<BarMatrix> {
    let spec = q.block(size)?;
    let r = choose_truncation(&spec)?.r;
    let labels = q.labels(size)?;
    let rows = bar_rows(&spec, &labels, r)?;
    BarMatrix::from_rows(spec, r, labels, &rows, true)
}

/// Whether `π(bar v)` depends only on `π(v)`: every `|λ; s⟩` with
/// `λ^{(j)} ≠ ∅` and `|λ| <= N` must satisfy `π(bar |λ; s⟩) = 0`.
pub fn quotient_bar_well_defined(q: &QuotientSpace) -> Result<bool> {
    let cache = BlockCache::new();
    for size in 0..=q.bound {
        if !kernel_is_stable(q, &*cache.bar_matrix(&q.block(size)?, None)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `π(bar |λ⟩) = 0` for every row `λ` of a full bar matrix that `π` kills.
fn kernel_is_stable(q: &QuotientSpace, full: &BarMatrix) -> bool {
    let order = full.order();
    (0..full.len())
        .filter(|&i| !q.contains(&order[i]))
        .all(|i| full.row(i).all(|(j, _)| !q.contains(&order[j])))
}

/// Outcome of comparing the quotient matrices with the full ones.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuotientReport {
    pub quotient: QuotientSpace,
    pub sign: Sign,
    pub comparisons: Vec<Comparison>,
    pub well_defined: bool,
}

impl QuotientReport {
    pub fn passed(&self) -> bool {
        self.well_defined && self.comparisons.iter().all(|c| c.pass)
    }
}

/// Compares `Δ̃^ε` with the restriction of the full `Δ^ε` (lhs: full,
/// rhs: quotient) on every pair of quotient labels of equal size.
pub fn check_quotient(q: &QuotientSpace, sign: Sign, cache: &BlockCache) -> Result<QuotientReport> {
    let tilde = quotient_canonical_basis(q, sign)?;
    let mut comparisons = Vec::new();
    let mut well_defined = true;
    for (size, qm) in tilde.iter().enumerate() {
        let full_bar = cache.bar_matrix(&q.block(size)?, None)?;
        well_defined &= kernel_is_stable(q, &full_bar);
        let full = decompose(&full_bar, sign)?;
        for lambda in qm.order() {
            for mu in qm.order() {
                let lhs = full.get(lambda, mu);
                let rhs = qm.get(lambda, mu);
                if lhs.is_zero() && rhs.is_zero() {
                    continue;
                }
                comparisons.push(Comparison {
                    lambda: lambda.clone(),
                    mu: mu.clone(),
                    pass: lhs == rhs,
                    lhs,
                    rhs,
                });
            }
        }
    }
    Ok(QuotientReport {
        quotient: q.clone(),
        sign,
        comparisons,
        well_defined,
    })
}

/// Parameter ranges for randomized campaigns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CampaignConfig {
    pub ns: Vec<usize>,
    pub levels: Vec<usize>,
    pub max_size: usize,
    /// Charges are first drawn from `[-N - spread, N + spread]`.
    pub spread: i64,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        Self {
            ns: vec![2, 3],
            levels: vec![2, 3],
            max_size: 5,
            spread: 3,
        }
    }
}

/// Draws one case. Charges come from `[-N - spread, N + spread]^ℓ`; then
/// `s_j` is moved so that the condition for `theorem` holds for some
/// multipartition of the block (A: `s_j = max_{i≠j} s_i + t` with
/// `1 <= t <= N`; B: `s_j = min_{i≠j} s_i - N - t` with `0 <= t <= 2`).
pub fn sample_case(theorem: Theorem, cfg: &CampaignConfig, rng: &mut impl Rng) -> CaseInfo {
    let n = cfg.ns[rng.gen_range(0..cfg.ns.len())];
    let level = cfg.levels[rng.gen_range(0..cfg.levels.len())];
    let size = rng.gen_range(1..=cfg.max_size.max(1));
    let bound = size as i64 + cfg.spread;
    let mut s: Vec<i64> = (0..level).map(|_| rng.gen_range(-bound..=bound)).collect();
    let j = rng.gen_range(1..=level);
    let others = s
        .iter()
        .enumerate()
        .filter(|&(i, _)| i + 1 != j)
        .map(|(_, &v)| v);
    s[j - 1] = match theorem {
        Theorem::A => others.max().unwrap_or(0) + rng.gen_range(1..=size as i64),
        Theorem::B => others.min().unwrap_or(0) - size as i64 - rng.gen_range(0..=2),
    };
    let sign = if rng.gen_bool(0.5) {
        Sign::Plus
    } else {
        Sign::Minus
    };
    CaseInfo {
        n,
        level,
        s: MultiCharge::new(s).expect("sampled charge has positive level"),
        size,
        j,
        sign,
    }
}

/// Samples `count` cases from one seeded generator and checks them in
/// parallel. Each report records the campaign seed.
pub fn run_campaign(
    theorem: Theorem,
    count: usize,
    seed: u64,
    cfg: &CampaignConfig,
) -> Result<Vec<TheoremReport>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cases: Vec<CaseInfo> = (0..count)
        .map(|_| sample_case(theorem, cfg, &mut rng))
        .collect();
    cases
        .par_iter()
        .map(|case| {
            let spec = case.spec()?;
            let cache = BlockCache::new();
            let mut report = match theorem {
                Theorem::A => {
                    check_theorem_a_with(&spec, case.j, case.sign, Truncation::Default, &cache)?
                }
                Theorem::B => {
                    check_theorem_b_with(&spec, case.j, case.sign, Truncation::Default, &cache)?
                }
            };
            report.seed = Some(seed);
            Ok(report)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mc(s: &[i64]) -> MultiCharge {
        MultiCharge::new(s.to_vec()).unwrap()
    }

    fn mp(parts: &[&[u32]]) -> MultiPartition {
        MultiPartition::from_parts(parts.iter().map(|p| p.to_vec()).collect()).unwrap()
    }

    #[test]
    fn large_condition() {
        assert!(is_sufficiently_large(&mc(&[3, -3]), 1, &mp(&[&[], &[6]])).unwrap());
        assert!(!is_sufficiently_large(&mc(&[0, 0]), 1, &mp(&[&[1], &[]])).unwrap());
        assert!(is_sufficiently_large(&mc(&[2, 5, 1]), 2, &MultiPartition::empty(3)).unwrap());
        assert!(is_sufficiently_large(&mc(&[0]), 2, &MultiPartition::empty(1)).is_err());
    }

    #[test]
    fn small_condition() {
        assert!(is_sufficiently_small(&mc(&[3, -3]), 2, 6).unwrap());
        assert!(!is_sufficiently_small(&mc(&[3, -3]), 2, 7).unwrap());
        assert!(is_sufficiently_small(&mc(&[-4]), 1, 100).unwrap());
        assert!(!is_sufficiently_small(&mc(&[0, 0]), 2, 1).unwrap());
    }

    #[test]
    fn condition_record() {
        let c = ChargeCondition {
            j: 2,
            kind: ConditionKind::SufficientlySmall,
            witness: Witness::Size(6),
        };
        assert!(c.holds(&mc(&[3, -3])).unwrap());
    }

    #[test]
    fn omission() {
        assert_eq!(omit_partition(&mp(&[&[], &[6]]), 1).unwrap(), mp(&[&[6]]));
        assert_eq!(omit_charge(&mc(&[3, -3]), 1).unwrap(), mc(&[-3]));
        assert_eq!(
            omit_partition(&MultiPartition::empty(3), 2).unwrap(),
            MultiPartition::empty(2)
        );
        assert!(omit_charge(&mc(&[1]), 1).is_err());
    }

    #[test]
    fn theorem_a_small_block() {
        let spec = BlockSpec::new(2, mc(&[3, -1]), 2).unwrap();
        for sign in [Sign::Plus, Sign::Minus] {
            let rep = check_theorem_a(&spec, 1, sign).unwrap();
            assert!(rep.qualifying > 0);
            assert!(rep.passed(), "{:?}", rep.failures().collect::<Vec<_>>());
        }
    }

    #[test]
    fn theorem_b_small_block() {
        let spec = BlockSpec::new(2, mc(&[2, -1]), 3).unwrap();
        for sign in [Sign::Plus, Sign::Minus] {
            let rep = check_theorem_b(&spec, 2, sign).unwrap();
            assert!(rep.qualifying > 0);
            assert!(rep.passed(), "{:?}", rep.failures().collect::<Vec<_>>());
        }
    }

    #[test]
    fn quotient_needs_small_charge() {
        let q = QuotientSpace::new(2, mc(&[0, 0]), 2, 1).unwrap();
        assert!(quotient_canonical_basis(&q, Sign::Plus).is_err());
    }

    #[test]
    fn quotient_of_size_zero_is_identity() {
        let q = QuotientSpace::new(2, mc(&[2, 0]), 2, 0).unwrap();
        let m = quotient_canonical_basis(&q, Sign::Minus).unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(m[0].len(), 1);
    }

    #[test]
    fn sampled_cases_qualify() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let cfg = CampaignConfig::default();
        for _ in 0..200 {
            let a = sample_case(Theorem::A, &cfg, &mut rng);
            let lam = {
                // All boxes in one non-j component as a single column.
                let mut parts = vec![Vec::new(); a.level];
                parts[if a.j == 1 { 1 } else { 0 }] = vec![1; a.size];
                MultiPartition::from_parts(parts).unwrap()
            };
            assert!(is_sufficiently_large(&a.s, a.j, &lam).unwrap());
            let b = sample_case(Theorem::B, &cfg, &mut rng);
            assert!(is_sufficiently_small(&b.s, b.j, b.size).unwrap());
        }
    }
}
