mod common;

use common::poly;
use proptest::prelude::*;
use qfock::wedge::{
    append_factor, bar_word_direct, bar_word_memo, bar_word_right, disorder, insert_factor, kappa,
    normal_order_with, rewrite_inversion, xi, InsertMemo,
};
use qfock::{normal_order, Ambient, LaurentPoly, Strategy as Order, WedgeExpansion};

fn amb(n: usize, l: usize) -> Ambient {
    Ambient::new(n, l).unwrap()
}

fn expand(w: &[i64], a: &Ambient) -> WedgeExpansion {
    normal_order([(w.to_vec(), LaurentPoly::one())], a)
}

fn q_pow(e: i64) -> LaurentPoly {
    LaurentPoly::monomial(e as i32, 1)
}

fn scaled(e: &WedgeExpansion, c: &LaurentPoly) -> WedgeExpansion {
    let mut out = WedgeExpansion::new();
    for (w, a) in e.iter() {
        out.add(w.clone(), &(a * c));
    }
    out
}

fn sum(a: &WedgeExpansion, b: &WedgeExpansion) -> WedgeExpansion {
    let mut out = a.clone();
    for (w, c) in b.iter() {
        out.add(w.clone(), c);
    }
    out
}

fn ambient_strategy() -> impl Strategy<Value = Ambient> {
    (2usize..=3, 1usize..=3).prop_map(|(n, l)| amb(n, l))
}

/// Sector-`d` factors `u_{top}^{(d)} ∧ u_{top-1}^{(d)} ∧ ... ` of the given
/// length, as raw indices.
fn column(a: &Ambient, d: usize, top: i64, len: usize) -> Vec<i64> {
    (0..len as i64).map(|i| a.global(top - i, d)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn strategies_agree(a in ambient_strategy(), w in prop::collection::vec(-8i64..8, 1..=5)) {
        let left = normal_order_with([(w.clone(), LaurentPoly::one())], &a, Order::Leftmost);
        let right = normal_order_with([(w.clone(), LaurentPoly::one())], &a, Order::Rightmost);
        prop_assert_eq!(left, right);
    }

    #[test]
    fn sum_and_range_preserved(a in ambient_strategy(), w in prop::collection::vec(-8i64..8, 1..=5)) {
        let total: i64 = w.iter().sum();
        let (lo, hi) = (*w.iter().min().unwrap(), *w.iter().max().unwrap());
        for (v, _) in expand(&w, &a).iter() {
            prop_assert_eq!(v.iter().sum::<i64>(), total);
            prop_assert!(v.iter().all(|&k| lo <= k && k <= hi));
            prop_assert!(v.windows(2).all(|p| p[0] > p[1]));
        }
    }

    #[test]
    fn rewrite_swaps_c_parts(a in ambient_strategy(), x in -20i64..20, gap in 1i64..20) {
        let y = x + gap;
        let (cx, cy) = (a.split(x).c, a.split(y).c);
        for t in rewrite_inversion(x, y, &a) {
            // Correction pairs are not necessarily ordered, but stay in [x, y].
            prop_assert!([t.left, t.right].iter().all(|&k| x <= k && k <= y));
            prop_assert_eq!(t.left + t.right, x + y);
            let mut got = [a.split(t.left).c, a.split(t.right).c];
            let mut want = [cx, cy];
            got.sort_unstable();
            want.sort_unstable();
            prop_assert_eq!(got, want);
        }
    }

    #[test]
    fn rewrite_lowers_disorder(
        a in ambient_strategy(),
        w in prop::collection::vec(-8i64..8, 2..=6),
        pick in any::<prop::sample::Index>(),
    ) {
        let inversions: Vec<usize> = (0..w.len() - 1).filter(|&i| w[i] < w[i + 1]).collect();
        prop_assume!(!inversions.is_empty());
        let i = inversions[pick.index(inversions.len())];
        for t in rewrite_inversion(w[i], w[i + 1], &a) {
            let mut v = w.clone();
            v[i] = t.left;
            v[i + 1] = t.right;
            prop_assert!(disorder(&v) < disorder(&w), "{:?} -> {:?}", w, v);
        }
    }

    #[test]
    fn run_followed_by_member_vanishes(
        a in ambient_strategy(),
        t in -10i64..10,
        len in 1i64..5,
        off in 0i64..5,
        front in prop::collection::vec(11i64..30, 0..3),
    ) {
        let m = t + off % len;
        let mut head: Vec<i64> = front;
        head.sort_unstable_by(|x, y| y.cmp(x));
        head.dedup();
        let run: Vec<i64> = (t..t + len).rev().collect();
        let mut tail_case = head.clone();
        tail_case.extend(&run);
        tail_case.push(m);
        prop_assert!(expand(&tail_case, &a).is_empty());
        let mut front_case = vec![m];
        front_case.extend(&run);
        prop_assert!(expand(&front_case, &a).is_empty());
    }

    #[test]
    fn insert_and_append_match_normal_order(
        a in ambient_strategy(),
        mut w in prop::collection::btree_set(-12i64..12, 0..6),
        x in -14i64..14,
    ) {
        let w: Vec<i64> = std::mem::take(&mut w).into_iter().rev().collect();
        let mut memo = InsertMemo::new(a);
        let mut front = vec![x];
        front.extend(&w);
        prop_assert_eq!(insert_factor(x, &w, &mut memo), expand(&front, &a));
        let mut back = w.clone();
        back.push(x);
        prop_assert_eq!(append_factor(&w, x, &mut memo), expand(&back, &a));
    }

    #[test]
    fn bar_builders_agree(
        a in ambient_strategy(),
        top in prop::collection::btree_set(-3i64..8, 0..4),
        charge in -6i64..-3,
        tail in 1usize..4,
    ) {
        // A frozen word: arbitrary factors above a consecutive run ending the word.
        let mut word: Vec<i64> = top.into_iter().rev().collect();
        word.extend((0..tail as i64).map(|i| charge - i));
        let mut memo = InsertMemo::new(a);
        let left = bar_word_memo(&word, &mut memo);
        let right = bar_word_right(&word, &mut InsertMemo::new(a));
        let direct = bar_word_direct(&word, &a, Order::Leftmost);
        prop_assert_eq!(&left, &right);
        prop_assert_eq!(&left, &direct);
    }

    /// A factor directly above a sector column commutes past it with a power
    /// of `q` counted by `ξ`.
    #[test]
    fn factor_passes_column_below(
        n in 2usize..=3,
        l in 2usize..=3,
        i in 1usize..=3,
        j in 1usize..=3,
        label in -6i64..6,
        t in 0usize..=4,
    ) {
        prop_assume!(i <= l && j <= l && i != j);
        let a = amb(n, l);
        let x = a.global(label, i);
        // Largest sector-j index below x.
        let k = (1..=a.period()).map(|s| x - s).find(|&y| a.split(y).d as usize == j).unwrap();
        let (_, kb) = a.sector_of(k);
        let col = column(&a, j, kb, t + 1);
        let mut ordered = vec![x];
        ordered.extend(&col);
        let mut swapped = col.clone();
        swapped.push(x);
        let e = xi(&col, &[x], &a).unwrap();
        prop_assert_eq!(expand(&swapped, &a), scaled(&expand(&ordered, &a), &q_pow(e)));
    }

    #[test]
    fn factor_passes_column_above(
        n in 2usize..=3,
        l in 2usize..=3,
        i in 1usize..=3,
        j in 1usize..=3,
        label in -6i64..6,
        t in 0usize..=4,
    ) {
        prop_assume!(i <= l && j <= l && i != j);
        let a = amb(n, l);
        let x = a.global(label, i);
        // Smallest sector-j index above x.
        let g = (1..=a.period()).map(|s| x + s).find(|&y| a.split(y).d as usize == j).unwrap();
        let (_, gb) = a.sector_of(g);
        let col = column(&a, j, gb + t as i64, t + 1);
        let mut front = vec![x];
        front.extend(&col);
        let mut ordered = col.clone();
        ordered.push(x);
        let e = xi(&[x], &col, &a).unwrap();
        prop_assert_eq!(expand(&front, &a), scaled(&expand(&ordered, &a), &q_pow(e)));
    }

    /// A word of other sectors moves past a vacuum column with
    /// `q^{ξ(u, ∅) - ξ(∅, u)}` when every factor sits next to the column.
    #[test]
    fn word_passes_vacuum_column(
        n in 2usize..=3,
        l in 2usize..=3,
        j in 1usize..=3,
        sj in -3i64..3,
        depth in 1usize..=5,
        picks in prop::collection::vec((1usize..=3, 0i64..40), 1..=3),
    ) {
        prop_assume!(j <= l);
        let a = amb(n, l);
        let col = column(&a, j, sj, depth + 1);
        let (lo, hi) = (*col.last().unwrap(), col[0]);
        let mut u = Vec::new();
        for (d, off) in picks {
            prop_assume!(d <= l && d != j);
            // Factors of sector d whose next sector-j index above lies in the column.
            let cands: Vec<i64> = (lo - a.period()..hi)
                .filter(|&y| a.split(y).d as usize == d)
                .filter(|&y| {
                    let h = (1..=a.period()).map(|s| y + s).find(|&z| a.split(z).d as usize == j).unwrap();
                    lo <= h && h <= hi
                })
                .collect();
            prop_assume!(!cands.is_empty());
            u.push(cands[off as usize % cands.len()]);
        }
        let mut left = u.clone();
        left.extend(&col);
        let mut right = col.clone();
        right.extend(&u);
        let e = xi(&u, &col, &a).unwrap() - xi(&col, &u, &a).unwrap();
        prop_assert_eq!(expand(&left, &a), scaled(&expand(&right, &a), &q_pow(e)));
    }
}

#[test]
fn three_factor_recursion() {
    // u_{-1} ∧ u_{-2} ∧ u_4 = q u_{-1} ∧ u_4 ∧ u_{-2} + (q^2 - 1) u_{-1} ∧ u_2 ∧ u_0.
    let a = amb(2, 2);
    let lhs = expand(&[-1, -2, 4], &a);
    let rhs = sum(
        &scaled(&expand(&[-1, 4, -2], &a), &poly("q")),
        &scaled(&expand(&[-1, 2, 0], &a), &poly("q^2 - 1")),
    );
    assert_eq!(lhs, rhs);
    assert!(!lhs.is_empty());
}

#[test]
fn ordered_word_is_fixed() {
    let a = amb(3, 2);
    let w = vec![9, 4, 1, -3];
    assert_eq!(
        expand(&w, &a),
        WedgeExpansion::single(w.clone(), LaurentPoly::one())
    );
}

#[test]
fn separated_repeat_need_not_vanish() {
    // Only adjacent repeats are zero on sight; u_0 ∧ u_3 ∧ u_0 survives.
    let a = amb(2, 1);
    assert!(!expand(&[0, 3, 0], &a).is_empty());
    assert!(expand(&[5, 5], &a).is_empty());
}

#[test]
fn kappa_examples() {
    assert_eq!(kappa(&[1, 2, 1]), 1);
    assert_eq!(kappa(&[4, -1, 7]), 0);
    assert_eq!(kappa(&[3; 6]), 15);
}

#[test]
fn xi_examples() {
    let a = amb(2, 3);
    // No shared c coordinate: 1 has c = 1, 4 has c = 2.
    assert_eq!(xi(&[1], &[4], &a).unwrap(), 0);
    // Same c, the u factor is smaller.
    assert_eq!(xi(&[-3], &[1], &a).unwrap(), 1);
}

#[test]
fn disorder_counts_weighted_inversions() {
    assert_eq!(disorder(&[3, 2, 1]), 0);
    assert_eq!(disorder(&[1, 3]), 2);
    assert_eq!(disorder(&[1, 2, 4]), 1 + 3 + 2);
    assert_eq!(disorder(&[0]), 0);
}
