//! Canonical bases `G±(λ; s)` and the decomposition matrices `Δ±(q)`.
//!
//! Rows of the bar matrix and of `Δ` are indexed by positions in a linear
//! extension of the index order (largest first), so both matrices are upper
//! unitriangular in index form.
//!
//! For `G⁺(λ) = Σ_μ Δ_{λμ} |μ⟩`, bar-invariance says
//! `Δ_{λμ} - bar(Δ_{λμ}) = Σ_{λ ≥ ν > μ} bar(Δ_{λν}) a_{νμ}`. The right side
//! only involves columns already solved, and since `Δ_{λμ} ∈ qZ[q]` the entry
//! is the positive part of that right side (negative part for `G⁻`).

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::combinatorics::{encode, enumerate_block, index_dominates, BlockSpec, MultiPartition};
use crate::error::{Error, Result};
use crate::fock::{bar_rows, block_json, choose_truncation, FockVector};
use crate::laurent::LaurentPoly;

/// Which canonical basis: `G⁺` (off-diagonal entries in `qZ[q]`) or `G⁻`
/// (off-diagonal entries in `q⁻¹Z[q⁻¹]`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// Whether an off-diagonal entry lies in the allowed lattice part.
    pub fn admits(self, p: &LaurentPoly) -> bool {
        match self {
            Sign::Plus => p.in_positive_part(),
            Sign::Minus => p.in_negative_part(),
        }
    }

    fn project(self, p: &LaurentPoly) -> LaurentPoly {
        match self {
            Sign::Plus => p.positive_part(),
            Sign::Minus => p.negative_part(),
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "plus",
            Sign::Minus => "minus",
        })
    }
}

impl FromStr for Sign {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plus" | "+" => Ok(Sign::Plus),
            "minus" | "-" => Ok(Sign::Minus),
            _ => Err(Error::Parse(format!(
                "sign must be plus or minus, got {s:?}"
            ))),
        }
    }
}

type SparseRow = BTreeMap<usize, LaurentPoly>;

/// `a_{λμ}` with `bar(|λ; s⟩) = Σ_μ a_{λμ} |μ; s⟩`, on a fixed list of labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BarMatrix {
    pub spec: BlockSpec,
    pub r: usize,
    order: Vec<MultiPartition>,
    index: HashMap<MultiPartition, usize>,
    rows: Vec<SparseRow>,
}

impl BarMatrix {
    /// Builds the matrix from bar images of `order[i]`. Terms outside `order`
    /// are an engine error unless `drop_outside` is set, in which case they
    /// are discarded (this is the projection used by the quotient space).
    pub fn from_rows(
        spec: BlockSpec,
        r: usize,
        order: Vec<MultiPartition>,
        rows: &[FockVector],
        drop_outside: bool,
    ) -> Result<Self> {
        let index: HashMap<MultiPartition, usize> = order
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, l)| (l, i))
            .collect();
        let by_wedge: HashMap<Vec<i64>, usize> = order
            .iter()
            .enumerate()
            .map(|(i, l)| Ok((encode(l, &spec.charge, spec.n, r)?.indices, i)))
            .collect::<Result<_>>()?;
        let mut sparse = Vec::with_capacity(rows.len());
        for (i, v) in rows.iter().enumerate() {
            let mut row = SparseRow::new();
            for (k, c) in v.wedge_terms() {
                match by_wedge.get(k) {
                    Some(&j) => {
                        row.insert(j, c.clone());
                    }
                    None if drop_outside => {}
                    None => {
                        return Err(Error::Engine(format!(
                            "bar of {} produced {k:?}, which is not in the block",
                            order[i]
                        )))
                    }
                }
            }
            sparse.push(row);
        }
        Ok(Self {
            spec,
            r,
            order,
            index,
            rows: sparse,
        })
    }

    pub fn order(&self) -> &[MultiPartition] {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn position(&self, lambda: &MultiPartition) -> Option<usize> {
        self.index.get(lambda).copied()
    }

    pub fn entry(&self, lambda: &MultiPartition, mu: &MultiPartition) -> LaurentPoly {
        match (self.position(lambda), self.position(mu)) {
            (Some(i), Some(j)) => self.rows[i].get(&j).cloned().unwrap_or_default(),
            _ => LaurentPoly::zero(),
        }
    }

    /// Nonzero entries of row `i` as `(column, a_{ij})`.
    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, &LaurentPoly)> {
        self.rows[i].iter().map(|(j, c)| (*j, c))
    }

    /// Row `i` as a Fock vector.
    pub fn row_vector(&self, i: usize) -> Result<FockVector> {
        let mut v = FockVector::zero(self.spec.clone(), self.r);
        for (j, c) in &self.rows[i] {
            v.add_multipartition(&self.order[*j], c)?;
        }
        Ok(v)
    }

    /// The same matrix with rows and columns permuted into `order`, which
    /// must list the same labels.
    pub fn reordered(&self, order: Vec<MultiPartition>) -> Result<Self> {
        if order.len() != self.order.len() {
            return Err(Error::InvalidParameter(
                "reordering must keep the label set".into(),
            ));
        }
        let perm: Vec<usize> = order
            .iter()
            .map(|l| {
                self.position(l).ok_or_else(|| {
                    Error::InvalidParameter(format!("{l} is not a label of this matrix"))
                })
            })
            .collect::<Result<_>>()?;
        let mut inverse = vec![0; perm.len()];
        for (new, &old) in perm.iter().enumerate() {
            inverse[old] = new;
        }
        let rows = perm
            .iter()
            .map(|&old| {
                self.rows[old]
                    .iter()
                    .map(|(j, c)| (inverse[*j], c.clone()))
                    .collect()
            })
            .collect();
        let index = order
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, l)| (l, i))
            .collect();
        Ok(Self {
            spec: self.spec.clone(),
            r: self.r,
            order,
            index,
            rows,
        })
    }

    /// Nonzero entries of `bar(A) A - I`, as `(row, column, value)`. Empty
    /// exactly when bar is an involution on the span of the labels.
    pub fn involution_defect(&self) -> Vec<(usize, usize, LaurentPoly)> {
        let mut out = Vec::new();
        for i in 0..self.len() {
            let mut acc = SparseRow::new();
            for (k, a) in &self.rows[i] {
                let ab = a.bar();
                for (j, b) in &self.rows[*k] {
                    *acc.entry(*j).or_default() += &(&ab * b);
                }
            }
            *acc.entry(i).or_default() -= &LaurentPoly::one();
            out.extend(
                acc.into_iter()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(j, c)| (i, j, c)),
            );
        }
        out
    }

    /// Violations of unitriangularity: a diagonal entry other than 1, or a
    /// nonzero `a_{λμ}` with `λ ≱ μ`.
    pub fn triangularity_violations(&self) -> Result<Vec<(usize, usize)>> {
        let mut bad = Vec::new();
        for i in 0..self.len() {
            if !self.rows[i].get(&i).is_some_and(LaurentPoly::is_one) {
                bad.push((i, i));
            }
            for &j in self.rows[i].keys() {
                if j != i
                    && !index_dominates(
                        &self.order[i],
                        &self.order[j],
                        &self.spec.charge,
                        self.spec.n,
                    )?
                {
                    bad.push((i, j));
                }
            }
        }
        Ok(bad)
    }
}

/// Bar matrix of a whole block with truncation `r` (the default policy if
/// `None`), rows in `enumerate_block` order.
pub fn bar_matrix(spec: &BlockSpec, r: Option<usize>) -> Result<BarMatrix> {
    let r = match r {
        Some(r) => r,
        None => choose_truncation(spec)?.r,
    };
    let order = enumerate_block(spec)?;
    let rows = bar_rows(spec, &order, r)?;
    BarMatrix::from_rows(spec.clone(), r, order, &rows, false)
}

/// `Δ^±_{λμ}`, rows indexed by the canonical-basis label `λ`, columns by the
/// standard-basis label `μ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompMatrix {
    pub spec: BlockSpec,
    pub sign: Sign,
    order: Vec<MultiPartition>,
    index: HashMap<MultiPartition, usize>,
    rows: Vec<SparseRow>,
}

impl DecompMatrix {
    pub fn order(&self) -> &[MultiPartition] {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn position(&self, lambda: &MultiPartition) -> Option<usize> {
        self.index.get(lambda).copied()
    }

    /// `Δ_{λμ}`; zero when either label is outside the matrix.
    pub fn get(&self, lambda: &MultiPartition, mu: &MultiPartition) -> LaurentPoly {
        match (self.position(lambda), self.position(mu)) {
            (Some(i), Some(j)) => self.rows[i].get(&j).cloned().unwrap_or_default(),
            _ => LaurentPoly::zero(),
        }
    }

    /// Nonzero entries of row `λ` as `(μ, Δ_{λμ})`.
    pub fn row(&self, lambda: &MultiPartition) -> Option<Vec<(MultiPartition, LaurentPoly)>> {
        let i = self.position(lambda)?;
        Some(
            self.rows[i]
                .iter()
                .map(|(j, c)| (self.order[*j].clone(), c.clone()))
                .collect(),
        )
    }

    /// All nonzero entries as `(λ, μ, Δ_{λμ})` in row order.
    pub fn entries(
        &self,
    ) -> impl Iterator<Item = (&MultiPartition, &MultiPartition, &LaurentPoly)> {
        self.rows.iter().enumerate().flat_map(move |(i, row)| {
            row.iter()
                .map(move |(j, c)| (&self.order[i], &self.order[*j], c))
        })
    }

    /// Overwrites one entry. Used to probe the verifier.
    pub fn set(
        &mut self,
        lambda: &MultiPartition,
        mu: &MultiPartition,
        value: LaurentPoly,
    ) -> Result<()> {
        let (i, j) = match (self.position(lambda), self.position(mu)) {
            (Some(i), Some(j)) => (i, j),
            _ => {
                return Err(Error::InvalidParameter(format!(
                    "({lambda}, {mu}) is not an entry"
                )))
            }
        };
        if value.is_zero() {
            self.rows[i].remove(&j);
        } else {
            self.rows[i].insert(j, value);
        }
        Ok(())
    }

    /// The canonical basis vector `G(λ)` as a Fock vector with truncation `r`.
    pub fn basis_vector(&self, lambda: &MultiPartition, r: usize) -> Result<FockVector> {
        let i = self
            .position(lambda)
            .ok_or_else(|| Error::InvalidParameter(format!("{lambda} is not a row label")))?;
        let mut v = FockVector::zero(self.spec.clone(), r);
        for (j, c) in &self.rows[i] {
            v.add_multipartition(&self.order[*j], c)?;
        }
        Ok(v)
    }

    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> = self
            .rows
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().map(move |(j, c)| json!([i, j, c.to_json()])))
            .collect();
        json!({
            "block": block_json(&self.spec),
            "sign": self.sign,
            "order": self.order,
            "entries": entries,
        })
    }

    /// Inverse of [`DecompMatrix::to_json`].
    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |what: &str| Error::Parse(format!("decomposition matrix: {what}"));
        let block = v.get("block").ok_or_else(|| bad("missing block"))?;
        let n = block
            .get("n")
            .and_then(Value::as_u64)
            .ok_or_else(|| bad("block.n"))?;
        let size = block
            .get("size")
            .and_then(Value::as_u64)
            .ok_or_else(|| bad("block.size"))?;
        let charge = serde_json::from_value(block.get("charge").cloned().unwrap_or(Value::Null))
            .map_err(|e| bad(&format!("block.charge: {e}")))?;
        let spec = BlockSpec::new(n as usize, charge, size as usize)?;
        let sign: Sign = serde_json::from_value(v.get("sign").cloned().unwrap_or(Value::Null))
            .map_err(|e| bad(&format!("sign: {e}")))?;
        let order: Vec<MultiPartition> =
            serde_json::from_value(v.get("order").cloned().unwrap_or(Value::Null))
                .map_err(|e| bad(&format!("order: {e}")))?;
        let index: HashMap<MultiPartition, usize> = order
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        if index.len() != order.len() {
            return Err(bad("repeated label in order"));
        }
        let mut rows = vec![SparseRow::new(); order.len()];
        let entries = v
            .get("entries")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("entries"))?;
        for e in entries {
            let (i, j, c) = match e.as_array().map(Vec::as_slice) {
                Some([i, j, c]) => (i.as_u64(), j.as_u64(), LaurentPoly::from_json(c)?),
                _ => return Err(bad("entry is not [i, j, coeff]")),
            };
            let (i, j) = match (i, j) {
                (Some(i), Some(j)) if (i as usize) < order.len() && (j as usize) < order.len() => {
                    (i as usize, j as usize)
                }
                _ => return Err(bad("entry position out of range")),
            };
            if !c.is_zero() {
                rows[i].insert(j, c);
            }
        }
        Ok(DecompMatrix {
            spec,
            sign,
            order,
            index,
            rows,
        })
    }

    /// One line per nonzero entry: `lambda;mu;coeff`, with a header.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("lambda;mu;coeff\n");
        for (l, m, c) in self.entries() {
            out.push_str(&format!("{l};{m};{c}\n"));
        }
        out
    }

    /// Dense LaTeX tabular, zeros shown as `\cdot`.
    pub fn to_latex(&self) -> String {
        let b = self.len();
        let mut out = format!("\\begin{{tabular}}{{l|{}}}\n", "c".repeat(b));
        let header: Vec<String> = self
            .order
            .iter()
            .map(|m| format!("${}$", latex_label(m)))
            .collect();
        out.push_str(&format!(" & {} \\\\\n\\hline\n", header.join(" & ")));
        for (i, row) in self.rows.iter().enumerate() {
            let cells: Vec<String> = (0..b)
                .map(|j| match row.get(&j) {
                    Some(c) => format!("${}$", latex_poly(c)),
                    None => "$\\cdot$".to_string(),
                })
                .collect();
            out.push_str(&format!(
                "${}$ & {} \\\\\n",
                latex_label(&self.order[i]),
                cells.join(" & ")
            ));
        }
        out.push_str("\\end{tabular}\n");
        out
    }
}

fn latex_label(m: &MultiPartition) -> String {
    let comps: Vec<String> = m
        .components()
        .iter()
        .map(|p| {
            if p.is_empty() {
                "\\emptyset".to_string()
            } else {
                format!(
                    "({})",
                    p.parts()
                        .iter()
                        .map(u32::to_string)
                        .collect::<Vec<_>>()
                        .join(",")
                )
            }
        })
        .collect();
    format!("({})", comps.join(","))
}

fn latex_poly(p: &LaurentPoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (e, c)) in p.terms().enumerate() {
        let negative = *c < dashu_int::IBig::ZERO;
        let mag = if negative { -c.clone() } else { c.clone() };
        out.push_str(match (i, negative) {
            (0, true) => "-",
            (0, false) => "",
            (_, true) => " - ",
            (_, false) => " + ",
        });
        let coeff = if mag.is_one() && e != 0 {
            String::new()
        } else {
            mag.to_string()
        };
        match e {
            0 => out.push_str(&coeff),
            1 => out.push_str(&format!("{coeff}q")),
            _ => out.push_str(&format!("{coeff}q^{{{e}}}")),
        }
    }
    out
}

/// Runs the triangular solve on a bar matrix. The matrix order must be a
/// linear extension of its support: `a_{ij} ≠ 0` only for `i <= j`.
pub fn decompose(barm: &BarMatrix, sign: Sign) -> Result<DecompMatrix> {
    let b = barm.len();
    for i in 0..b {
        if let Some((&j, _)) = barm.rows[i].iter().next() {
            if j < i {
                return Err(Error::Precondition(format!(
                    "row order is not compatible with the bar matrix: a({}, {}) ≠ 0",
                    barm.order[i], barm.order[j]
                )));
            }
        }
        if !barm.rows[i].get(&i).is_some_and(LaurentPoly::is_one) {
            return Err(Error::Engine(format!(
                "diagonal bar entry at {} is not 1",
                barm.order[i]
            )));
        }
    }
    let mut rows = Vec::with_capacity(b);
    for i in 0..b {
        let mut row = SparseRow::new();
        row.insert(i, LaurentPoly::one());
        // rhs[j] accumulates Σ_{ν solved} bar(Δ_{iν}) a_{νj}, minus the a_{jj} part.
        let mut rhs: BTreeMap<usize, LaurentPoly> = BTreeMap::new();
        for (&j, a) in barm.rows[i].iter().skip(1) {
            rhs.insert(j, a.clone());
        }
        while let Some((j, r)) = rhs.pop_first() {
            if r.is_zero() {
                continue;
            }
            if !(r.bar() + r.clone()).is_zero() {
                return Err(Error::Engine(format!(
                    "right side {r} at ({}, {}) is not antisymmetric under bar",
                    barm.order[i], barm.order[j]
                )));
            }
            let d = sign.project(&r);
            if d.is_zero() {
                continue;
            }
            let db = d.bar();
            for (&k, a) in barm.rows[j].iter().skip(1) {
                *rhs.entry(k).or_default() += &(&db * a);
            }
            row.insert(j, d);
        }
        rows.push(row);
    }
    Ok(DecompMatrix {
        spec: barm.spec.clone(),
        sign,
        order: barm.order.clone(),
        index: barm.index.clone(),
        rows,
    })
}

/// `Δ^±` for a block, with the default truncation.
pub fn canonical_basis(spec: &BlockSpec, sign: Sign) -> Result<DecompMatrix> {
    decompose(&bar_matrix(spec, None)?, sign)
}

/// The unique bar-symmetric polynomial `γ` with `b - γ` in the allowed part
/// (`qZ[q]` for plus, `q⁻¹Z[q⁻¹]` for minus): for plus,
/// `γ = a_0 + Σ_{i<0} a_i (q^i + q^{-i})`.
pub fn correction_polynomial(b: &LaurentPoly, sign: Sign) -> LaurentPoly {
    let keep = match sign {
        Sign::Plus => b
            .terms()
            .filter(|(e, _)| *e <= 0)
            .map(|(e, c)| (e, c.clone()))
            .collect::<Vec<_>>(),
        Sign::Minus => b
            .terms()
            .filter(|(e, _)| *e >= 0)
            .map(|(e, c)| (e, c.clone()))
            .collect(),
    };
    let mut out = LaurentPoly::zero();
    for (e, c) in keep {
        let m = LaurentPoly::monomial(e, c);
        out += &m;
        if e != 0 {
            out += &m.bar();
        }
    }
    out
}

/// Outcome of [`verify_canonical`] for one row.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RowCheck {
    pub lambda: MultiPartition,
    pub bar_invariant: bool,
    pub lattice: bool,
    pub unitriangular: bool,
}

impl RowCheck {
    pub fn passed(&self) -> bool {
        self.bar_invariant && self.lattice && self.unitriangular
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CanonicalReport {
    pub rows: Vec<RowCheck>,
}

impl CanonicalReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(RowCheck::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &RowCheck> {
        self.rows.iter().filter(|r| !r.passed())
    }
}

/// Re-checks a decomposition matrix against a bar matrix of the same labels:
/// each `G(λ)` is expanded through the bar matrix and compared with itself,
/// off-diagonal entries are tested against the lattice, and the support is
/// tested against dominance.
pub fn verify_canonical(matrix: &DecompMatrix, barm: &BarMatrix) -> Result<CanonicalReport> {
    if matrix.spec != barm.spec || matrix.order.len() != barm.order.len() {
        return Err(Error::Precondition(
            "matrices belong to different blocks".into(),
        ));
    }
    let mut rows = Vec::with_capacity(matrix.len());
    for (i, lambda) in matrix.order.iter().enumerate() {
        let mut image: BTreeMap<&MultiPartition, LaurentPoly> = BTreeMap::new();
        for (j, c) in &matrix.rows[i] {
            let bi = barm.position(&matrix.order[*j]).ok_or_else(|| {
                Error::Precondition(format!(
                    "{} is missing from the bar matrix",
                    matrix.order[*j]
                ))
            })?;
            let cb = c.bar();
            for (k, a) in barm.row(bi) {
                *image.entry(&barm.order[k]).or_default() += &(&cb * a);
            }
        }
        image.retain(|_, c| !c.is_zero());
        let own: BTreeMap<&MultiPartition, LaurentPoly> = matrix.rows[i]
            .iter()
            .map(|(j, c)| (&matrix.order[*j], c.clone()))
            .collect();
        let bar_invariant = image == own;

        let mut lattice = matrix.rows[i].get(&i).is_some_and(LaurentPoly::is_one);
        let mut unitriangular = lattice;
        for (j, c) in &matrix.rows[i] {
            if *j == i {
                continue;
            }
            lattice &= matrix.sign.admits(c);
            unitriangular &= index_dominates(
                lambda,
                &matrix.order[*j],
                &matrix.spec.charge,
                matrix.spec.n,
            )?;
        }
        rows.push(RowCheck {
            lambda: lambda.clone(),
            bar_invariant,
            lattice,
            unitriangular,
        });
    }
    Ok(CanonicalReport { rows })
}

/// In-memory cache of bar matrices keyed by block and truncation. Concurrent
/// callers may compute the same entry twice; the first stored value wins and
/// both are identical.
#[derive(Default)]
pub struct BlockCache {
    bars: Mutex<HashMap<(BlockSpec, usize), Arc<BarMatrix>>>,
}

impl BlockCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn bar_matrix(&self, spec: &BlockSpec, r: Option<usize>) -> Result<Arc<BarMatrix>> {
        let r = match r {
            Some(r) => r,
            None => choose_truncation(spec)?.r,
        };
        let key = (spec.clone(), r);
        if let Some(m) = self.bars.lock().expect("cache lock").get(&key) {
            return Ok(m.clone());
        }
        let m = Arc::new(bar_matrix(spec, Some(r))?);
        Ok(self
            .bars
            .lock()
            .expect("cache lock")
            .entry(key)
            .or_insert(m)
            .clone())
    }

    pub fn insert(&self, m: BarMatrix) -> Arc<BarMatrix> {
        let key = (m.spec.clone(), m.r);
        self.bars
            .lock()
            .expect("cache lock")
            .entry(key)
            .or_insert(Arc::new(m))
            .clone()
    }

    pub fn decomposition(
        &self,
        spec: &BlockSpec,
        sign: Sign,
        r: Option<usize>,
    ) -> Result<DecompMatrix> {
        decompose(&*self.bar_matrix(spec, r)?, sign)
    }

    pub fn len(&self) -> usize {
        self.bars.lock().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}
