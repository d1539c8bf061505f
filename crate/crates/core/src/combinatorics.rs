//! Partitions, multipartitions and multicharges, the `(c, d, m)` coordinates
//! of a wedge index, the `(λ, s) <-> k` bijection and two partial orders on a
//! block: the dominance order on shifted parts and the index order on wedges,
//! for which the bar involution is unitriangular.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A partition: non-increasing positive parts. The empty partition is `∅`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    /// Trailing zeros are stripped; anything else that is not non-increasing
    /// is rejected.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) || parts.contains(&0) {
            return Err(Error::InvalidParameter(format!(
                "partition parts must be non-increasing and positive: {parts:?}"
            )));
        }
        Ok(Self(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// `λ_a` with 1-based `a`, zero past the length.
    pub fn part(&self, a: usize) -> u32 {
        if a == 0 {
            return 0;
        }
        self.0.get(a - 1).copied().unwrap_or(0)
    }

    pub fn size(&self) -> usize {
        self.0.iter().map(|&p| p as usize).sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// All partitions of `n`, in reverse lexicographic order (`(n)` first).
    pub fn all_of(n: usize) -> Vec<Partition> {
        fn rec(rem: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if rem == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for p in (1..=rem.min(max)).rev() {
                cur.push(p);
                rec(rem - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n as u32, n as u32, &mut Vec::new(), &mut out);
        out
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("∅");
        }
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// An `ℓ`-tuple of partitions. Serialized as an array of arrays of integers.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiPartition(Vec<Partition>);

impl MultiPartition {
    pub fn new(components: Vec<Partition>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::InvalidParameter("level must be at least 1".into()));
        }
        Ok(Self(components))
    }

    pub fn empty(level: usize) -> Self {
        Self(vec![Partition::empty(); level.max(1)])
    }

    /// Convenience constructor from raw part lists.
    pub fn from_parts(parts: Vec<Vec<u32>>) -> Result<Self> {
        Self::new(
            parts
                .into_iter()
                .map(Partition::new)
                .collect::<Result<_>>()?,
        )
    }

    pub fn level(&self) -> usize {
        self.0.len()
    }

    /// Component `d`, 1-based.
    pub fn component(&self, d: usize) -> &Partition {
        &self.0[d - 1]
    }

    pub fn components(&self) -> &[Partition] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().map(Partition::size).sum()
    }

    /// The tuple with component `j` (1-based) removed.
    pub fn omit(&self, j: usize) -> Result<Self> {
        if self.level() < 2 {
            return Err(Error::Precondition(
                "cannot omit a component at level 1".into(),
            ));
        }
        if j == 0 || j > self.level() {
            return Err(Error::OutOfRange(format!(
                "component {j} of level {}",
                self.level()
            )));
        }
        let mut c = self.0.clone();
        c.remove(j - 1);
        Ok(Self(c))
    }

    /// All `level`-multipartitions of total size `size`, unordered beyond
    /// determinism.
    pub fn all_of(size: usize, level: usize) -> Vec<MultiPartition> {
        fn rec(rem: usize, slots: usize, cur: &mut Vec<Partition>, out: &mut Vec<MultiPartition>) {
            if slots == 1 {
                for p in Partition::all_of(rem) {
                    cur.push(p);
                    out.push(MultiPartition(cur.clone()));
                    cur.pop();
                }
                return;
            }
            for here in (0..=rem).rev() {
                for p in Partition::all_of(here) {
                    cur.push(p);
                    rec(rem - here, slots - 1, cur, out);
                    cur.pop();
                }
            }
        }
        let mut out = Vec::new();
        rec(size, level.max(1), &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for MultiPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let comps: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", comps.join(", "))
    }
}

/// Multicharge `s = (s_1, ..., s_ℓ)`. Serialized as an array of integers.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiCharge(Vec<i64>);

impl MultiCharge {
    pub fn new(charges: Vec<i64>) -> Result<Self> {
        if charges.is_empty() {
            return Err(Error::InvalidParameter(
                "multicharge must have at least one entry".into(),
            ));
        }
        Ok(Self(charges))
    }

    pub fn level(&self) -> usize {
        self.0.len()
    }

    /// `s_d`, 1-based.
    pub fn get(&self, d: usize) -> i64 {
        self.0[d - 1]
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn max_charge(&self) -> i64 {
        *self.0.iter().max().unwrap()
    }

    pub fn min_charge(&self) -> i64 {
        *self.0.iter().min().unwrap()
    }

    pub fn omit(&self, j: usize) -> Result<Self> {
        if self.level() < 2 {
            return Err(Error::Precondition(
                "cannot omit a component at level 1".into(),
            ));
        }
        if j == 0 || j > self.level() {
            return Err(Error::OutOfRange(format!(
                "component {j} of level {}",
                self.level()
            )));
        }
        let mut c = self.0.clone();
        c.remove(j - 1);
        Ok(Self(c))
    }

    /// Canonical text form `3,-3`.
    pub fn to_key(&self) -> String {
        self.0
            .iter()
            .map(|s| s.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl fmt::Display for MultiCharge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_key())
    }
}

/// The coordinates `k = c + n(d-1) - nℓm` with `1 <= c <= n`, `1 <= d <= ℓ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TripleCoord {
    pub c: i64,
    pub d: i64,
    pub m: i64,
}

impl TripleCoord {
    /// The sector label `c - n m`.
    pub fn sector_label(&self, n: usize) -> i64 {
        self.c - n as i64 * self.m
    }
}

/// `(n, ℓ)`: the two parameters the straightening rules depend on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Ambient {
    pub n: usize,
    pub level: usize,
}

impl Ambient {
    pub fn new(n: usize, level: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParameter(format!("n must be >= 2, got {n}")));
        }
        if level < 1 {
            return Err(Error::InvalidParameter("level must be >= 1".into()));
        }
        Ok(Self { n, level })
    }

    pub fn period(&self) -> i64 {
        (self.n * self.level) as i64
    }

    #[inline]
    pub fn split(&self, k: i64) -> TripleCoord {
        let n = self.n as i64;
        let t = (k - 1).rem_euclid(self.period());
        let m = -(k - 1 - t) / self.period();
        TripleCoord {
            c: t % n + 1,
            d: t / n + 1,
            m,
        }
    }

    pub fn join(&self, t: TripleCoord) -> Result<i64> {
        let n = self.n as i64;
        if !(1..=n).contains(&t.c) {
            return Err(Error::OutOfRange(format!("c = {} not in [1, {n}]", t.c)));
        }
        if !(1..=self.level as i64).contains(&t.d) {
            return Err(Error::OutOfRange(format!(
                "d = {} not in [1, {}]",
                t.d, self.level
            )));
        }
        Ok(t.c + n * (t.d - 1) - self.period() * t.m)
    }

    /// Global index of the bead labelled `b` (`= c - n m`) in sector `d`.
    #[inline]
    pub fn global(&self, b: i64, d: usize) -> i64 {
        let n = self.n as i64;
        let c = (b - 1).rem_euclid(n) + 1;
        let m = (c - b) / n;
        c + n * (d as i64 - 1) - self.period() * m
    }

    /// `(sector d, label c - n m)` of a global index.
    #[inline]
    pub fn sector_of(&self, k: i64) -> (usize, i64) {
        let t = self.split(k);
        (t.d as usize, t.sector_label(self.n))
    }
}

/// `split_index(k, n, ℓ)`.
pub fn split_index(k: i64, n: usize, level: usize) -> Result<TripleCoord> {
    Ok(Ambient::new(n, level)?.split(k))
}

/// `join_index(t, n, ℓ)`.
pub fn join_index(t: TripleCoord, n: usize, level: usize) -> Result<i64> {
    Ambient::new(n, level)?.join(t)
}

/// A strictly decreasing truncated index sequence `k_1 > ... > k_r`, continued
/// implicitly by `k_t = s - t + 1` for `t > r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OrderedWedge {
    pub indices: Vec<i64>,
    /// Total charge `s`.
    pub charge: i64,
}

impl OrderedWedge {
    pub fn new(indices: Vec<i64>, charge: i64) -> Result<Self> {
        let w = Self { indices, charge };
        w.validate()?;
        Ok(w)
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    /// Strictly decreasing, and the last stored index sits above the implicit
    /// tail.
    pub fn validate(&self) -> Result<()> {
        if self.indices.windows(2).any(|w| w[0] <= w[1]) {
            return Err(Error::MalformedWedge(format!(
                "indices not strictly decreasing: {:?}",
                self.indices
            )));
        }
        let r = self.indices.len() as i64;
        if let Some(&last) = self.indices.last() {
            if last <= self.charge - r {
                return Err(Error::MalformedWedge(format!(
                    "k_r = {last} collides with the tail starting at {}",
                    self.charge - r
                )));
            }
        }
        Ok(())
    }

    /// `k_r = s - r + 1`: the stored part may be used as a truncation.
    pub fn is_frozen(&self) -> bool {
        match self.indices.last() {
            None => true,
            Some(&last) => last == self.charge - self.indices.len() as i64 + 1,
        }
    }

    /// Extends (or shrinks, if the dropped part is tail) to length `r`.
    pub fn with_len(&self, r: usize) -> Result<Self> {
        let mut idx = self.indices.clone();
        if r >= idx.len() {
            for t in idx.len() + 1..=r {
                idx.push(self.charge - t as i64 + 1);
            }
        } else {
            for t in r + 1..=idx.len() {
                if idx[t - 1] != self.charge - t as i64 + 1 {
                    return Err(Error::Truncation {
                        r,
                        detail: format!("position {t} is not part of the consecutive tail"),
                    });
                }
            }
            idx.truncate(r);
        }
        Ok(Self {
            indices: idx,
            charge: self.charge,
        })
    }

    /// The shortest frozen truncation: every stored index above the lowest
    /// hole, plus the first tail index (none at all for a consecutive wedge).
    pub fn minimal_len(&self) -> usize {
        let mut r = self.indices.len();
        while r > 0 && self.indices[r - 1] == self.charge - r as i64 + 1 {
            r -= 1;
        }
        if r == 0 {
            0
        } else {
            r + 1
        }
    }
}

/// Smallest `r` such that `|λ; s⟩` is frozen past position `r`.
pub fn minimal_truncation(lambda: &MultiPartition, s: &MultiCharge, n: usize) -> Result<usize> {
    let amb = Ambient::new(n, s.level())?;
    check_shape(lambda, s)?;
    let above = beads_above_floor(lambda, s, &amb, lowest_hole(lambda, s, &amb)).len();
    Ok(if above == 0 { 0 } else { above + 1 })
}

fn check_shape(lambda: &MultiPartition, s: &MultiCharge) -> Result<()> {
    if lambda.level() != s.level() {
        return Err(Error::InvalidParameter(format!(
            "multipartition has level {} but multicharge has level {}",
            lambda.level(),
            s.level()
        )));
    }
    Ok(())
}

/// β^(d) labels for positions `a = 1..=len` plus enough of the tail.
fn beta_labels(p: &Partition, sd: i64, count: usize) -> impl Iterator<Item = i64> + '_ {
    (1..=count).map(move |a| p.part(a) as i64 + sd - a as i64 + 1)
}

/// Global index of the lowest absent position.
fn lowest_hole(lambda: &MultiPartition, s: &MultiCharge, amb: &Ambient) -> i64 {
    let mut low: Option<i64> = None;
    for d in 1..=amb.level {
        let p = lambda.component(d);
        // Holes of sector d lie at labels between the last part and the tail;
        // the lowest one is just above the tail.
        let len = p.len();
        let tail_top = s.get(d) - len as i64; // label of bead a = len+1
        let beads: BTreeSet<i64> = beta_labels(p, s.get(d), len).collect();
        let mut b = tail_top + 1;
        while beads.contains(&b) {
            b += 1;
        }
        let g = amb.global(b, d);
        low = Some(low.map_or(g, |x: i64| x.min(g)));
    }
    low.unwrap()
}

fn beads_above_floor(
    lambda: &MultiPartition,
    s: &MultiCharge,
    amb: &Ambient,
    floor: i64,
) -> Vec<i64> {
    let mut out = Vec::new();
    for d in 1..=amb.level {
        let p = lambda.component(d);
        let mut a = 1usize;
        loop {
            let b = p.part(a) as i64 + s.get(d) - a as i64 + 1;
            let g = amb.global(b, d);
            if g <= floor {
                break;
            }
            out.push(g);
            a += 1;
        }
    }
    out.sort_unstable_by(|x, y| y.cmp(x));
    out
}

/// `encode(λ, s, n, r)`: the first `r` indices of `|λ; s⟩`.
pub fn encode(
    lambda: &MultiPartition,
    s: &MultiCharge,
    n: usize,
    r: usize,
) -> Result<OrderedWedge> {
    let amb = Ambient::new(n, s.level())?;
    check_shape(lambda, s)?;
    let total = s.total();
    // Collect every bead above a floor safely below position r.
    let floor = (total - r as i64 + 1).min(lowest_hole(lambda, s, &amb)) - 1;
    let beads = beads_above_floor(lambda, s, &amb, floor);
    if beads.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Engine(format!(
            "duplicate bead index while encoding {lambda}"
        )));
    }
    // Everything strictly above `floor` is now listed; positions past the
    // listed ones are consecutive down from floor.
    let wedge = OrderedWedge {
        indices: beads,
        charge: total,
    };
    let min = wedge.minimal_len();
    if r < min {
        return Err(Error::Truncation {
            r,
            detail: format!("|{lambda}; {s}⟩ needs at least {min} stored factors"),
        });
    }
    wedge.with_len(r)
}

/// `decode(w, n, ℓ)`: recovers `(λ, s)` from a truncated ordered wedge.
pub fn decode(w: &OrderedWedge, n: usize, level: usize) -> Result<(MultiPartition, MultiCharge)> {
    let amb = Ambient::new(n, level)?;
    w.validate()?;
    let r = w.indices.len() as i64;
    // Every index below k_{r+1} = s - r is present.
    let first_tail = w.charge - r;
    let mut labels: Vec<Vec<i64>> = vec![Vec::new(); level];
    for &k in &w.indices {
        let (d, b) = amb.sector_of(k);
        labels[d - 1].push(b);
    }
    let mut parts = Vec::with_capacity(level);
    let mut charges = Vec::with_capacity(level);
    for d in 1..=level {
        // Highest tail label in sector d: the largest b whose global index is
        // at most first_tail.
        let (_, b_hi) = amb.sector_of(first_tail);
        let mut top = b_hi + 2 * n as i64;
        while amb.global(top, d) > first_tail {
            top -= 1;
        }
        let listed = &labels[d - 1];
        let count = listed.len() as i64;
        let sd = top + count;
        let mut p = Vec::with_capacity(listed.len());
        for (a, &b) in listed.iter().enumerate() {
            let part = b - sd + a as i64;
            if part < 0 {
                return Err(Error::MalformedWedge(format!(
                    "negative part while decoding {:?}",
                    w.indices
                )));
            }
            p.push(part as u32);
        }
        parts.push(Partition::new(p)?);
        charges.push(sd);
    }
    Ok((MultiPartition(parts), MultiCharge(charges)))
}

/// Outcome of comparing two charged multipartitions in the dominance order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Dominance {
    Greater,
    Less,
    Equal,
    Incomparable,
}

fn padded_shifted(
    lambda: &MultiPartition,
    mu: &MultiPartition,
    s: &MultiCharge,
) -> (Vec<i64>, Vec<i64>) {
    let mut a = Vec::new();
    let mut b = Vec::new();
    for d in 1..=s.level() {
        let (l, m) = (lambda.component(d), mu.component(d));
        let len = l.len().max(m.len());
        for i in 1..=len {
            a.push(l.part(i) as i64 + s.get(d));
            b.push(m.part(i) as i64 + s.get(d));
        }
    }
    a.sort_unstable_by(|x, y| y.cmp(x));
    b.sort_unstable_by(|x, y| y.cmp(x));
    (a, b)
}

/// `Some(Greater)` if every partial sum of `a` is `>=` that of `b`, etc.
fn partial_sum_cmp(a: &[i64], b: &[i64]) -> Dominance {
    let (mut sa, mut sb) = (0i64, 0i64);
    let (mut ge, mut le) = (true, true);
    for i in 0..a.len().max(b.len()) {
        sa += a.get(i).copied().unwrap_or(0);
        sb += b.get(i).copied().unwrap_or(0);
        ge &= sa >= sb;
        le &= sa <= sb;
    }
    match (ge, le) {
        (true, true) => Dominance::Equal,
        (true, false) => Dominance::Greater,
        (false, true) => Dominance::Less,
        (false, false) => Dominance::Incomparable,
    }
}

/// Compares `|λ; s⟩` with `|μ; s⟩`. Returns `Incomparable` when the sizes
/// differ.
pub fn compare_dominance(
    lambda: &MultiPartition,
    mu: &MultiPartition,
    s: &MultiCharge,
    n: usize,
) -> Result<Dominance> {
    check_shape(lambda, s)?;
    check_shape(mu, s)?;
    if lambda.size() != mu.size() {
        return Ok(Dominance::Incomparable);
    }
    if lambda == mu {
        return Ok(Dominance::Equal);
    }
    let (lt, mt) = padded_shifted(lambda, mu, s);
    if lt != mt {
        return Ok(partial_sum_cmp(&lt, &mt));
    }
    let r = minimal_truncation(lambda, s, n)?.max(minimal_truncation(mu, s, n)?);
    let k = encode(lambda, s, n, r)?;
    let g = encode(mu, s, n, r)?;
    Ok(partial_sum_cmp(&k.indices, &g.indices))
}

/// `λ >= μ` in the dominance order.
pub fn dominates(
    lambda: &MultiPartition,
    mu: &MultiPartition,
    s: &MultiCharge,
    n: usize,
) -> Result<bool> {
    Ok(matches!(
        compare_dominance(lambda, mu, s, n)?,
        Dominance::Greater | Dominance::Equal
    ))
}

/// `(n, ℓ, s, N)`: the finite set `{ |λ; s⟩ : |λ| = N }`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BlockSpec {
    pub n: usize,
    pub charge: MultiCharge,
    pub size: usize,
}

impl BlockSpec {
    pub fn new(n: usize, charge: MultiCharge, size: usize) -> Result<Self> {
        Ambient::new(n, charge.level())?;
        Ok(Self { n, charge, size })
    }

    pub fn level(&self) -> usize {
        self.charge.level()
    }

    pub fn ambient(&self) -> Ambient {
        Ambient {
            n: self.n,
            level: self.charge.level(),
        }
    }

    /// Canonical key, e.g. `n2-l2-s3,-3-N6`.
    pub fn key(&self) -> String {
        format!(
            "n{}-l{}-s{}-N{}",
            self.n,
            self.level(),
            self.charge.to_key(),
            self.size
        )
    }
}

impl fmt::Display for BlockSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.key())
    }
}

fn partial_sums(w: &[i64]) -> Vec<i64> {
    w.iter()
        .scan(0i64, |acc, &k| {
            *acc += k;
            Some(*acc)
        })
        .collect()
}

/// Compares `|λ; s⟩ = u_{k_1} ∧ ...` with `|μ; s⟩ = u_{g_1} ∧ ...` by the
/// partial sums `k_1 + ... + k_j` against `g_1 + ... + g_j`. Both wedges are
/// truncated at a common length; the comparison does not depend on which.
///
/// The bar matrix and both decomposition matrices are unitriangular for this
/// order. They are not always unitriangular for [`compare_dominance`]: with
/// `n = 2`, `s = (1, -1)`, `bar |((1,1),(1))⟩` has a nonzero coefficient on
/// `|((1,1,1),∅)⟩`, which is strictly larger in dominance.
pub fn compare_index_order(
    lambda: &MultiPartition,
    mu: &MultiPartition,
    s: &MultiCharge,
    n: usize,
) -> Result<Dominance> {
    check_shape(lambda, s)?;
    check_shape(mu, s)?;
    if lambda.size() != mu.size() {
        return Ok(Dominance::Incomparable);
    }
    let r = minimal_truncation(lambda, s, n)?.max(minimal_truncation(mu, s, n)?);
    let k = encode(lambda, s, n, r)?;
    let g = encode(mu, s, n, r)?;
    Ok(partial_sum_cmp(&k.indices, &g.indices))
}

/// `λ >= μ` in the index order of [`compare_index_order`].
pub fn index_dominates(
    lambda: &MultiPartition,
    mu: &MultiPartition,
    s: &MultiCharge,
    n: usize,
) -> Result<bool> {
    Ok(matches!(
        compare_index_order(lambda, mu, s, n)?,
        Dominance::Greater | Dominance::Equal
    ))
}

/// `enumerate_block`: every multipartition of the block, larger elements of
/// the index order first.
///
/// Sorting by the sequence of partial sums `k_1, k_1 + k_2, ...`,
/// lexicographically descending, is a linear extension of the index order,
/// and distinct wedges have distinct sequences, so the result is
/// deterministic.
pub fn enumerate_block(spec: &BlockSpec) -> Result<Vec<MultiPartition>> {
    let items = MultiPartition::all_of(spec.size, spec.level());
    let r = items
        .iter()
        .map(|l| minimal_truncation(l, &spec.charge, spec.n))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .max()
        .unwrap_or(0);
    let mut keyed: Vec<(Vec<i64>, MultiPartition)> = items
        .into_iter()
        .map(|l| {
            Ok((
                partial_sums(&encode(&l, &spec.charge, spec.n, r)?.indices),
                l,
            ))
        })
        .collect::<Result<_>>()?;
    keyed.sort_by(|a, b| b.0.cmp(&a.0));
    Ok(keyed.into_iter().map(|(_, l)| l).collect())
}

/// Text rendering of the `nℓ`-runner abacus, first with global position
/// labels and then with the per-sector labels `c - n m`. Beads are shown in
/// brackets.
pub fn render_abacus(w: &OrderedWedge, n: usize, level: usize) -> Result<String> {
    let amb = Ambient::new(n, level)?;
    w.validate()?;
    let p = amb.period();
    let beads: BTreeSet<i64> = w.indices.iter().copied().collect();
    let tail_start = w.charge - w.indices.len() as i64;
    let is_bead = |k: i64| k <= tail_start || beads.contains(&k);
    let top = w
        .indices
        .first()
        .copied()
        .unwrap_or(tail_start)
        .max(tail_start);
    let m_min = amb.split(top).m.min(0);
    let m_max = amb.split(tail_start).m + 1;

    let width = {
        let lo = 1 - p * m_max;
        let hi = p - p * m_min;
        lo.to_string().len().max(hi.to_string().len()) + 2
    };
    let mut out = String::new();
    for labelling in ["global", "sector"] {
        out.push_str(&format!("[{labelling} labels]\n"));
        for d in 1..=level {
            let head = format!("d={d}");
            out.push_str(&format!("{:<w$}", head, w = width * n + 1));
            if d < level {
                out.push('|');
            }
        }
        out.push('\n');
        for m in (m_min..=m_max).rev() {
            for d in 1..=level {
                for c in 1..=n as i64 {
                    let k = c + n as i64 * (d as i64 - 1) - p * m;
                    let label = if labelling == "global" {
                        k
                    } else {
                        c - n as i64 * m
                    };
                    let cell = if is_bead(k) {
                        format!("[{label}]")
                    } else {
                        format!(" {label} ")
                    };
                    out.push_str(&format!("{cell:>width$}"));
                }
                out.push(' ');
                if d < level {
                    out.push('|');
                }
            }
            out.push_str(&format!("  m={m}\n"));
        }
    }
    Ok(out)
}
