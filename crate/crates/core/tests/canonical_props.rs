mod common;

use common::mc;
use proptest::prelude::*;
use qfock::canonical::{bar_matrix, decompose, verify_canonical, BlockCache, Sign};
use qfock::combinatorics::{dominates, enumerate_block, index_dominates};
use qfock::fock::{bar_vector, choose_truncation, FockVector};
use qfock::theorems::{
    is_sufficiently_large, is_sufficiently_small, project_quotient, quotient_bar_well_defined,
    quotient_canonical_basis, QuotientSpace,
};
use qfock::{BlockSpec, MultiPartition};

fn block() -> impl Strategy<Value = BlockSpec> {
    (2usize..=3, 1usize..=3)
        .prop_flat_map(|(n, l)| (Just(n), prop::collection::vec(-3i64..=3, l), 0usize..=3))
        .prop_map(|(n, s, size)| BlockSpec::new(n, mc(&s), size).unwrap())
}

fn sign() -> impl Strategy<Value = Sign> {
    prop_oneof![Just(Sign::Plus), Just(Sign::Minus)]
}

/// A linear extension of the index order, with ties broken by `picks`.
fn random_extension(spec: &BlockSpec, picks: &[usize]) -> Vec<MultiPartition> {
    let mut left = enumerate_block(spec).unwrap();
    let mut out = Vec::with_capacity(left.len());
    let mut step = 0;
    while !left.is_empty() {
        let maximal: Vec<usize> = (0..left.len())
            .filter(|&i| {
                !(0..left.len()).any(|k| {
                    k != i && index_dominates(&left[k], &left[i], &spec.charge, spec.n).unwrap()
                })
            })
            .collect();
        let pick = maximal[picks[step % picks.len()] % maximal.len()];
        out.push(left.remove(pick));
        step += 1;
    }
    out
}

fn pairs(order: &[MultiPartition]) -> impl Iterator<Item = (&MultiPartition, &MultiPartition)> {
    order
        .iter()
        .flat_map(move |l| order.iter().map(move |m| (l, m)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn decomposition_is_canonical(spec in block(), sign in sign()) {
        let barm = bar_matrix(&spec, None).unwrap();
        let m = decompose(&barm, sign).unwrap();
        let report = verify_canonical(&m, &barm).unwrap();
        prop_assert!(report.passed(), "{:?}", report.failures().collect::<Vec<_>>());
    }

    /// The solve gives the same matrix for every linear extension.
    #[test]
    fn independent_of_linear_extension(
        spec in block(),
        sign in sign(),
        picks in prop::collection::vec(0usize..8, 1..6),
    ) {
        let barm = bar_matrix(&spec, None).unwrap();
        let base = decompose(&barm, sign).unwrap();
        let order = random_extension(&spec, &picks);
        let other = decompose(&barm.reordered(order).unwrap(), sign).unwrap();
        for (l, m) in pairs(base.order()) {
            prop_assert_eq!(base.get(l, m), other.get(l, m));
        }
    }

    /// If `s_j` is sufficiently large for `λ` and `λ >= μ` in the dominance
    /// order, then `μ^{(j)} = ∅` and `s_j` is sufficiently large for `μ`.
    #[test]
    fn largeness_passes_down(spec in block(), j in 1usize..=3) {
        prop_assume!(j <= spec.level());
        let order = enumerate_block(&spec).unwrap();
        for (l, m) in pairs(&order) {
            if is_sufficiently_large(&spec.charge, j, l).unwrap()
                && dominates(l, m, &spec.charge, spec.n).unwrap()
            {
                prop_assert!(m.component(j).is_empty(), "{} >= {}", l, m);
                prop_assert!(is_sufficiently_large(&spec.charge, j, m).unwrap());
            }
        }
    }

    /// If `s_j` is sufficiently small, `λ >= μ` in the dominance order and
    /// `μ^{(j)} = ∅`, then `λ^{(j)} = ∅`.
    #[test]
    fn smallness_pulls_up(spec in block(), j in 1usize..=3) {
        prop_assume!(j <= spec.level());
        prop_assume!(is_sufficiently_small(&spec.charge, j, spec.size).unwrap());
        let order = enumerate_block(&spec).unwrap();
        for (l, m) in pairs(&order) {
            if m.component(j).is_empty() && dominates(l, m, &spec.charge, spec.n).unwrap() {
                prop_assert!(l.component(j).is_empty(), "{} >= {}", l, m);
            }
        }
    }

    /// The same support statements hold on the decomposition matrix, whose
    /// triangularity is with respect to the index order. The index order alone
    /// does not imply them: `(∅, (1)) >= ((1), ∅)` there for `s = (1, 0)`.
    #[test]
    fn support_of_decomposition(spec in block(), sign in sign(), j in 1usize..=3) {
        prop_assume!(j <= spec.level());
        let m = BlockCache::new().decomposition(&spec, sign, None).unwrap();
        let small = is_sufficiently_small(&spec.charge, j, spec.size).unwrap();
        for (l, mu, _) in m.entries() {
            if is_sufficiently_large(&spec.charge, j, l).unwrap() {
                prop_assert!(mu.component(j).is_empty());
            }
            if small && mu.component(j).is_empty() {
                prop_assert!(l.component(j).is_empty());
            }
        }
    }
}

/// Charges with `s_j` sufficiently small for the bound.
fn quotients() -> Vec<QuotientSpace> {
    [
        (2, vec![3, -3], 2, 3),
        (2, vec![2, 0, -2], 3, 2),
        (3, vec![1, -2], 2, 3),
        (2, vec![0, -4, 1], 2, 2),
    ]
    .into_iter()
    .map(|(n, s, j, bound)| {
        let q = QuotientSpace::new(n, mc(&s), j, bound).unwrap();
        assert!(q.is_well_posed().unwrap());
        q
    })
    .collect()
}

#[test]
fn projection_is_idempotent() {
    for q in quotients() {
        for size in 0..=q.bound {
            let spec = BlockSpec::new(q.n, q.charge.clone(), size).unwrap();
            let r = choose_truncation(&spec).unwrap().r;
            for lam in enumerate_block(&spec).unwrap() {
                let v = bar_vector(&FockVector::basis(&spec, &lam, r).unwrap()).unwrap();
                let once = project_quotient(&v, &q).unwrap();
                assert_eq!(project_quotient(&once, &q).unwrap(), once);
                if q.contains(&lam) {
                    assert!(once.coeff(&lam).unwrap().is_one());
                }
            }
        }
    }
}

#[test]
fn quotient_bar_is_well_defined() {
    for q in quotients() {
        assert!(quotient_bar_well_defined(&q).unwrap(), "{q:?}");
    }
}

/// `Δ̃` in a given size does not depend on the bound `N`.
#[test]
fn quotient_matrices_independent_of_bound() {
    for q in quotients() {
        let small = QuotientSpace::new(q.n, q.charge.clone(), q.j, q.bound - 1).unwrap();
        for sign in [Sign::Plus, Sign::Minus] {
            let a = quotient_canonical_basis(&small, sign).unwrap();
            let b = quotient_canonical_basis(&q, sign).unwrap();
            for (ma, mb) in a.iter().zip(&b) {
                assert_eq!(ma.order(), mb.order());
                for (l, m) in pairs(ma.order()) {
                    assert_eq!(ma.get(l, m), mb.get(l, m));
                }
            }
        }
    }
}
