//! Straightening of semi-infinite q-wedges.
//!
//! A word `u_{k_1} ∧ ... ∧ u_{k_r}` is stored as its index list. Normal
//! ordering repeatedly rewrites an adjacent pair `u_a ∧ u_b` with `a < b` by
//! the two-term straightening rule. Every such rewrite replaces position `i`
//! by a strictly larger index and leaves the prefix untouched, so words can be
//! processed in increasing lexicographic order: when a word is taken from the
//! queue, every word that can still contribute to it has already been
//! expanded and its coefficient is final.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashSet};
use std::sync::Arc;

use rustc_hash::FxHashMap;
use serde::Serialize;

use crate::combinatorics::Ambient;
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;

/// One monomial `±q^e` of a rule coefficient.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Monomial {
    pub exp: i32,
    pub negative: bool,
}

impl Monomial {
    pub fn to_poly(self) -> LaurentPoly {
        LaurentPoly::monomial(self.exp, if self.negative { -1 } else { 1 })
    }
}

/// One output term of the straightening rule: `coeff · u_left ∧ u_right`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleTerm {
    pub left: i64,
    pub right: i64,
    pub coeff: Vec<Monomial>,
}

impl RuleTerm {
    pub fn coeff_poly(&self) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for m in &self.coeff {
            p += &m.to_poly();
        }
        p
    }
}

/// One application of the straightening rule to `u_left ∧ u_right` with
/// `left < right`. The output pairs need not be ordered themselves.
pub fn rewrite_inversion(left: i64, right: i64, amb: &Ambient) -> Vec<RuleTerm> {
    debug_assert!(left < right);
    let (k2, k1) = (left, right);
    let t1 = amb.split(k1);
    let t2 = amb.split(k2);
    let (c1, d1, m1) = (t1.c, t1.d, t1.m);
    let (c2, d2, m2) = (t2.c, t2.d, t2.m);
    debug_assert!(m1 <= m2);

    let same_d = d1 == d2;
    let base_exp: i32 = if same_d { -1 } else { 0 };
    let base_neg = same_d;
    let alpha: i32 = if c1 == c2 { 1 } else { 0 };

    let mut out = Vec::new();
    out.push(RuleTerm {
        left: k1,
        right: k2,
        coeff: vec![Monomial {
            exp: base_exp + alpha,
            negative: base_neg,
        }],
    });
    // With m1 = m2 the range below is empty except when d1 > d2 and
    // c1 > c2, where the single j = 0 term survives.
    let beta = if c1 > c2 { 0 } else { 1 };
    let gamma = if d1 > d2 { 0 } else { 1 };
    let span = m2 - m1;
    let period = amb.period();
    let coeff = vec![
        Monomial {
            exp: base_exp + 1,
            negative: base_neg,
        },
        Monomial {
            exp: base_exp - 1,
            negative: !base_neg,
        },
    ];
    for j in beta..=span - gamma {
        out.push(RuleTerm {
            left: k1 - c1 + c2 - period * j,
            right: k2 + c1 - c2 + period * j,
            coeff: coeff.clone(),
        });
    }
    out
}

/// Which inversion normal ordering rewrites first. The result does not depend
/// on the choice.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Strategy {
    #[default]
    Leftmost,
    Rightmost,
}

/// A finite combination of ordered words.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WedgeExpansion {
    terms: BTreeMap<Vec<i64>, LaurentPoly>,
}

impl WedgeExpansion {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(word: Vec<i64>, coeff: LaurentPoly) -> Self {
        let mut e = Self::new();
        e.add(word, &coeff);
        e
    }

    pub fn add(&mut self, word: Vec<i64>, coeff: &LaurentPoly) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(word) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(coeff.clone());
            }
        }
    }

    pub fn get(&self, word: &[i64]) -> LaurentPoly {
        self.terms.get(word).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in descending lexicographic order of the words.
    pub fn iter(&self) -> impl Iterator<Item = (&Vec<i64>, &LaurentPoly)> {
        self.terms.iter().rev()
    }

    pub fn into_terms(self) -> BTreeMap<Vec<i64>, LaurentPoly> {
        self.terms
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Term {
            indices: Vec<i64>,
            coeff: serde_json::Value,
        }
        let v: Vec<Term> = self
            .iter()
            .map(|(w, c)| Term {
                indices: w.clone(),
                coeff: c.to_json(),
            })
            .collect();
        serde_json::to_value(v).expect("serializable")
    }
}

impl FromIterator<(Vec<i64>, LaurentPoly)> for WedgeExpansion {
    fn from_iter<I: IntoIterator<Item = (Vec<i64>, LaurentPoly)>>(iter: I) -> Self {
        let mut e = Self::new();
        for (w, c) in iter {
            e.add(w, &c);
        }
        e
    }
}

fn strictly_decreasing(w: &[i64]) -> bool {
    w.windows(2).all(|p| p[0] > p[1])
}

/// `D(w) = Σ_{i<j} max(w_j - w_i, 0)`. Every rewrite strictly lowers it, so
/// normal ordering terminates: the swapped term loses one inversion and the
/// other terms replace a pair by values strictly inside it with the same sum.
pub fn disorder(w: &[i64]) -> i64 {
    let mut total = 0;
    for (i, &a) in w.iter().enumerate() {
        for &b in &w[i + 1..] {
            total += (b - a).max(0);
        }
    }
    total
}

fn find_rewrite(w: &[i64], strategy: Strategy) -> Option<usize> {
    match strategy {
        Strategy::Leftmost => (0..w.len().saturating_sub(1)).find(|&i| w[i] <= w[i + 1]),
        Strategy::Rightmost => (0..w.len().saturating_sub(1))
            .rev()
            .find(|&i| w[i] <= w[i + 1]),
    }
}

/// Expresses a combination of arbitrary finite words as a combination of
/// strictly decreasing words of the same length.
pub fn normal_order<I>(input: I, amb: &Ambient) -> WedgeExpansion
where
    I: IntoIterator<Item = (Vec<i64>, LaurentPoly)>,
{
    normal_order_with(input, amb, Strategy::Leftmost)
}

/// [`normal_order`] with an explicit choice of which inversion to rewrite.
/// Only adjacent equal indices are dropped: a word such as `u_0 ∧ u_3 ∧ u_0`
/// is not zero in general.
pub fn normal_order_with<I>(input: I, amb: &Ambient, strategy: Strategy) -> WedgeExpansion
where
    I: IntoIterator<Item = (Vec<i64>, LaurentPoly)>,
{
    let mut queue: BTreeMap<Vec<i64>, LaurentPoly> = BTreeMap::new();
    for (w, c) in input {
        if !c.is_zero() {
            *queue.entry(w).or_default() += &c;
        }
    }
    let mut out = BTreeMap::new();
    while let Some((w, c)) = queue.pop_first() {
        if c.is_zero() {
            continue;
        }
        let Some(i) = find_rewrite(&w, strategy) else {
            out.insert(w, c);
            continue;
        };
        if w[i] == w[i + 1] {
            continue;
        }
        for term in rewrite_inversion(w[i], w[i + 1], amb) {
            let mut nw = w.clone();
            nw[i] = term.left;
            nw[i + 1] = term.right;
            debug_assert!(disorder(&nw) < disorder(&w));
            let slot = queue.entry(nw).or_default();
            for m in &term.coeff {
                slot.add_shifted(&c, m.exp, m.negative);
            }
        }
    }
    debug_assert!(out.keys().all(|w| strictly_decreasing(w)));
    WedgeExpansion { terms: out }
}

/// Normal form of `u_a ∧ u_b`.
pub fn straighten_pair(a: i64, b: i64, amb: &Ambient) -> WedgeExpansion {
    normal_order([(vec![a, b], LaurentPoly::one())], amb)
}

/// Number of pairs `i < j` with `x_i = x_j`.
pub fn kappa(xs: &[i64]) -> i64 {
    let mut counts: BTreeMap<i64, i64> = BTreeMap::new();
    for &x in xs {
        *counts.entry(x).or_default() += 1;
    }
    counts.values().map(|&m| m * (m - 1) / 2).sum()
}

/// `ξ(u, v)`: the number of pairs (factor of `u`, factor of `v`) with the same
/// `c` coordinate where the `u` factor has the smaller index. The two words
/// must involve disjoint sets of `d` coordinates.
pub fn xi(u: &[i64], v: &[i64], amb: &Ambient) -> Result<i64> {
    let du: HashSet<i64> = u.iter().map(|&k| amb.split(k).d).collect();
    if v.iter().any(|&k| du.contains(&amb.split(k).d)) {
        return Err(Error::Precondition(
            "ξ needs factors from disjoint sets of components".into(),
        ));
    }
    let mut count = 0;
    for &a in u {
        let ca = amb.split(a).c;
        for &b in v {
            if amb.split(b).c == ca && a < b {
                count += 1;
            }
        }
    }
    Ok(count)
}

fn bar_prefactor(word: &[i64], amb: &Ambient) -> LaurentPoly {
    let ds: Vec<i64> = word.iter().map(|&k| amb.split(k).d).collect();
    let cs: Vec<i64> = word.iter().map(|&k| amb.split(k).c).collect();
    let kd = kappa(&ds);
    let kc = kappa(&cs);
    LaurentPoly::monomial((kd - kc) as i32, if kd % 2 == 0 { 1 } else { -1 })
}

type Terms = Vec<(Vec<i64>, LaurentPoly)>;

/// Cache for [`insert_factor`]. Entries depend only on `(n, ℓ)`, so one memo
/// can serve every word of a block.
#[derive(Debug)]
pub struct InsertMemo {
    amb: Ambient,
    map: FxHashMap<i64, FxHashMap<Vec<i64>, Arc<Terms>>>,
    amap: FxHashMap<i64, FxHashMap<Vec<i64>, Arc<Terms>>>,
    len: usize,
}

impl InsertMemo {
    pub fn new(amb: Ambient) -> Self {
        Self {
            amb,
            map: FxHashMap::default(),
            amap: FxHashMap::default(),
            len: 0,
        }
    }

    pub fn ambient(&self) -> &Ambient {
        &self.amb
    }

    /// Number of cached subproblems.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }
}

/// Length of the longest prefix `w_1, w_1 - 1, w_1 - 2, ...` of `w`.
fn consecutive_prefix(w: &[i64]) -> usize {
    let mut len = 1;
    while len < w.len() && w[len] == w[0] - len as i64 {
        len += 1;
    }
    len
}

enum Inserted {
    Zero,
    /// `x` already sits in front: the word `x, w` with coefficient 1.
    Front,
    Terms(Arc<Terms>),
}

fn prepend(x: i64, w: &[i64]) -> Vec<i64> {
    let mut v = Vec::with_capacity(w.len() + 1);
    v.push(x);
    v.extend_from_slice(w);
    v
}

fn insert(x: i64, w: &[i64], memo: &mut InsertMemo) -> Inserted {
    if w.is_empty() || x > w[0] {
        return Inserted::Front;
    }
    // u_x ∧ u_k ∧ u_{k-1} ∧ ... ∧ u_t vanishes for k >= x >= t.
    if x > w[0] - consecutive_prefix(w) as i64 {
        return Inserted::Zero;
    }
    if let Some(e) = memo.map.get(&x).and_then(|m| m.get(w)) {
        return Inserted::Terms(e.clone());
    }
    let amb = memo.amb;
    let mut acc: FxHashMap<Vec<i64>, LaurentPoly> = FxHashMap::default();
    let rest = &w[1..];
    for term in rewrite_inversion(x, w[0], &amb) {
        if term.left == w[0] && term.right == x {
            let mut add = |v: &[i64], c: &LaurentPoly| {
                let slot = acc.entry(prepend(w[0], v)).or_default();
                for m in &term.coeff {
                    slot.add_shifted(c, m.exp, m.negative);
                }
            };
            match insert(x, rest, memo) {
                Inserted::Zero => {}
                Inserted::Front => add(&prepend(x, rest), &LaurentPoly::one()),
                Inserted::Terms(t) => {
                    for (v, c) in t.iter() {
                        add(v, c);
                    }
                }
            }
        } else {
            let inner: Vec<(Vec<i64>, LaurentPoly)> = match insert(term.right, rest, memo) {
                Inserted::Zero => continue,
                Inserted::Front => vec![(prepend(term.right, rest), LaurentPoly::one())],
                Inserted::Terms(t) => t.to_vec(),
            };
            for (v, c) in &inner {
                let mut add = |u: Vec<i64>, c2: &LaurentPoly| {
                    let prod = if c2.is_one() { c.clone() } else { c * c2 };
                    let slot = acc.entry(u).or_default();
                    for m in &term.coeff {
                        slot.add_shifted(&prod, m.exp, m.negative);
                    }
                };
                match insert(term.left, v, memo) {
                    Inserted::Zero => {}
                    Inserted::Front => add(prepend(term.left, v), &LaurentPoly::one()),
                    Inserted::Terms(t) => {
                        for (u, c2) in t.iter() {
                            add(u.clone(), c2);
                        }
                    }
                }
            }
        }
    }
    let out: Terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    let out = Arc::new(out);
    memo.map
        .entry(x)
        .or_default()
        .insert(w.to_vec(), out.clone());
    memo.len += 1;
    Inserted::Terms(out)
}

/// Length of the longest suffix `..., w_t + 2, w_t + 1, w_t` of `w`.
fn consecutive_suffix(w: &[i64]) -> usize {
    let last = w[w.len() - 1];
    let mut len = 1;
    while len < w.len() && w[w.len() - 1 - len] == last + len as i64 {
        len += 1;
    }
    len
}

fn push(w: &[i64], x: i64) -> Vec<i64> {
    let mut v = Vec::with_capacity(w.len() + 1);
    v.extend_from_slice(w);
    v.push(x);
    v
}

/// Mirror image of [`insert`]: the normal form of `w ∧ u_x`.
fn append(x: i64, w: &[i64], memo: &mut InsertMemo) -> Inserted {
    let Some(&last) = w.last() else {
        return Inserted::Front;
    };
    if x < last {
        return Inserted::Front;
    }
    // u_k ∧ ... ∧ u_{t+1} ∧ u_t ∧ u_x vanishes for k >= x >= t.
    if x < last + consecutive_suffix(w) as i64 {
        return Inserted::Zero;
    }
    // Factors above `x` are never touched.
    let head = w.partition_point(|&v| v > x);
    if head > 0 {
        return match append(x, &w[head..], memo) {
            Inserted::Terms(t) => Inserted::Terms(Arc::new(
                t.iter()
                    .map(|(v, c)| {
                        let mut u = Vec::with_capacity(head + v.len());
                        u.extend_from_slice(&w[..head]);
                        u.extend_from_slice(v);
                        (u, c.clone())
                    })
                    .collect(),
            )),
            other => other,
        };
    }
    if let Some(e) = memo.amap.get(&x).and_then(|m| m.get(w)) {
        return Inserted::Terms(e.clone());
    }
    let amb = memo.amb;
    let mut acc: FxHashMap<Vec<i64>, LaurentPoly> = FxHashMap::default();
    let init = &w[..w.len() - 1];
    for term in rewrite_inversion(last, x, &amb) {
        if term.left == x && term.right == last {
            // Everything `x` turns into stays above `last`.
            let mut add = |v: &[i64], c: &LaurentPoly| {
                let slot = acc.entry(push(v, last)).or_default();
                for m in &term.coeff {
                    slot.add_shifted(c, m.exp, m.negative);
                }
            };
            match append(x, init, memo) {
                Inserted::Zero => {}
                Inserted::Front => add(&push(init, x), &LaurentPoly::one()),
                Inserted::Terms(t) => {
                    for (v, c) in t.iter() {
                        add(v, c);
                    }
                }
            }
        } else {
            let inner: Vec<(Vec<i64>, LaurentPoly)> = match append(term.left, init, memo) {
                Inserted::Zero => continue,
                Inserted::Front => vec![(push(init, term.left), LaurentPoly::one())],
                Inserted::Terms(t) => t.to_vec(),
            };
            for (v, c) in &inner {
                let mut add = |u: Vec<i64>, c2: &LaurentPoly| {
                    let prod = if c2.is_one() { c.clone() } else { c * c2 };
                    let slot = acc.entry(u).or_default();
                    for m in &term.coeff {
                        slot.add_shifted(&prod, m.exp, m.negative);
                    }
                };
                match append(term.right, v, memo) {
                    Inserted::Zero => {}
                    Inserted::Front => add(push(v, term.right), &LaurentPoly::one()),
                    Inserted::Terms(t) => {
                        for (u, c2) in t.iter() {
                            add(u.clone(), c2);
                        }
                    }
                }
            }
        }
    }
    let out: Terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    let out = Arc::new(out);
    memo.amap
        .entry(x)
        .or_default()
        .insert(w.to_vec(), out.clone());
    memo.len += 1;
    Inserted::Terms(out)
}

/// Normal form of `u_{w_1} ∧ ... ∧ u_{w_t} ∧ u_x` for a strictly decreasing
/// `w`.
pub fn append_factor(w: &[i64], x: i64, memo: &mut InsertMemo) -> WedgeExpansion {
    debug_assert!(strictly_decreasing(w));
    match append(x, w, memo) {
        Inserted::Zero => WedgeExpansion::new(),
        Inserted::Front => WedgeExpansion::single(push(w, x), LaurentPoly::one()),
        Inserted::Terms(t) => t.iter().cloned().collect(),
    }
}

/// Normal form of `u_x ∧ u_{w_1} ∧ ... ∧ u_{w_t}` for a strictly decreasing
/// `w`.
///
/// If `x < w_1`, the pair `u_x ∧ u_{w_1}` is rewritten. The leading term
/// `u_{w_1} ∧ u_x` leaves `w_1` in front of everything that `x` can turn into,
/// and every correction `u_a ∧ u_b` is inserted as `a` into the normal form of
/// `b` inserted into the rest.
pub fn insert_factor(x: i64, w: &[i64], memo: &mut InsertMemo) -> WedgeExpansion {
    debug_assert!(strictly_decreasing(w));
    match insert(x, w, memo) {
        Inserted::Zero => WedgeExpansion::new(),
        Inserted::Front => WedgeExpansion::single(prepend(x, w), LaurentPoly::one()),
        Inserted::Terms(t) => t.iter().cloned().collect(),
    }
}

/// `bar(u_{k_1} ∧ ... ∧ u_{k_r} ∧ tail)` for a frozen ordered word: the
/// prefactor `(-q)^{κ(d)} q^{-κ(c)}` times the normal form of the reversed
/// word, with the same tail. Coefficients of the input are not involved; the
/// caller applies `q ↦ q^{-1}` to them.
pub fn bar_word(word: &[i64], amb: &Ambient) -> WedgeExpansion {
    bar_word_memo(word, &mut InsertMemo::new(*amb))
}

/// [`bar_word`] with a caller-provided memo.
///
/// The reversed word `u_{k_r} ∧ ... ∧ u_{k_1}` is built from the left, so the
/// partial results keep the consecutive tail intact and stay small.
pub fn bar_word_memo(word: &[i64], memo: &mut InsertMemo) -> WedgeExpansion {
    let pre = bar_prefactor(word, &memo.amb);
    let mut acc: BTreeMap<Vec<i64>, LaurentPoly> = BTreeMap::new();
    acc.insert(Vec::new(), pre);
    for &k in word.iter().rev() {
        let mut next: BTreeMap<Vec<i64>, LaurentPoly> = BTreeMap::new();
        for (w, c) in &acc {
            match append(k, w, memo) {
                Inserted::Zero => {}
                Inserted::Front => *next.entry(push(w, k)).or_default() += c,
                Inserted::Terms(t) => {
                    for (u, c2) in t.iter() {
                        *next.entry(u.clone()).or_default() += &(c2 * c);
                    }
                }
            }
        }
        next.retain(|_, c| !c.is_zero());
        acc = next;
    }
    WedgeExpansion { terms: acc }
}

/// [`bar_word`] with the reversed word `u_{k_r} ∧ ... ∧ u_{k_1}` built from
/// the right: each new factor is inserted in front of the normal form obtained
/// so far. The partial results are not frozen and spread widely, so this is
/// slower than [`bar_word_memo`] on wide blocks.
pub fn bar_word_right(word: &[i64], memo: &mut InsertMemo) -> WedgeExpansion {
    let pre = bar_prefactor(word, &memo.amb);
    let mut acc: BTreeMap<Vec<i64>, LaurentPoly> = BTreeMap::new();
    acc.insert(Vec::new(), pre);
    for &k in word {
        let mut next: BTreeMap<Vec<i64>, LaurentPoly> = BTreeMap::new();
        for (w, c) in &acc {
            match insert(k, w, memo) {
                Inserted::Zero => {}
                Inserted::Front => *next.entry(prepend(k, w)).or_default() += c,
                Inserted::Terms(t) => {
                    for (u, c2) in t.iter() {
                        *next.entry(u.clone()).or_default() += &(c2 * c);
                    }
                }
            }
        }
        next.retain(|_, c| !c.is_zero());
        acc = next;
    }
    WedgeExpansion { terms: acc }
}

/// [`bar_word`] computed by straightening the whole reversed word with the
/// rewriting queue. Much slower on long words.
pub fn bar_word_direct(word: &[i64], amb: &Ambient, strategy: Strategy) -> WedgeExpansion {
    let mut rev = word.to_vec();
    rev.reverse();
    normal_order_with([(rev, bar_prefactor(word, amb))], amb, strategy)
}
