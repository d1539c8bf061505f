//! Helpers shared by the integration tests: a dense linear-algebra oracle for
//! decomposition matrices and a few constructors.

#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use qfock::canonical::{BarMatrix, Sign};
use qfock::{LaurentPoly, MultiCharge, MultiPartition};

pub fn mc(s: &[i64]) -> MultiCharge {
    MultiCharge::new(s.to_vec()).unwrap()
}

pub fn mp(parts: &[&[u32]]) -> MultiPartition {
    MultiPartition::from_parts(parts.iter().map(|p| p.to_vec()).collect()).unwrap()
}

pub fn poly(s: &str) -> LaurentPoly {
    s.parse().unwrap()
}

fn to_big(c: &dashu_int::IBig) -> BigInt {
    c.to_string().parse().unwrap()
}

/// Solves for the canonical basis without using any order on the labels.
///
/// Every off-diagonal entry of row `i` is an unknown polynomial
/// `Σ_{e=1..D} x_e q^{±e}`; bar-invariance of `Σ_μ Δ_{iμ} |μ⟩` is a linear
/// system over `Q` in the `x`, which is solved by dense Gaussian elimination.
/// Returns `None` if some row has no solution or more than one.
pub fn dense_decomposition(
    a: &BarMatrix,
    sign: Sign,
    degree: i32,
) -> Option<Vec<BTreeMap<usize, LaurentPoly>>> {
    let b = a.len();
    let dense: Vec<Vec<LaurentPoly>> = (0..b)
        .map(|i| {
            let mut row = vec![LaurentPoly::zero(); b];
            for (j, c) in a.row(i) {
                row[j] = c.clone();
            }
            row
        })
        .collect();
    let exps: Vec<i32> = match sign {
        Sign::Plus => (1..=degree).collect(),
        Sign::Minus => (1..=degree).map(|e| -e).collect(),
    };
    let mut out = Vec::with_capacity(b);
    for i in 0..b {
        let others: Vec<usize> = (0..b).filter(|&j| j != i).collect();
        // Unknown (t, e) -> column t * D + e.
        let nvar = others.len() * exps.len();
        let mut sys = System {
            nvar,
            eqs: BTreeMap::new(),
        };
        for nu in 0..b {
            // Σ_μ bar(Δ_{iμ}) a_{μν} - Δ_{iν} = 0, with Δ_{ii} = 1.
            for (p, c) in dense[i][nu].terms() {
                sys.eq(nu, p).1 += BigRational::from(to_big(c));
            }
            if nu == i {
                sys.eq(nu, 0).1 -= BigRational::one();
            }
            for (t, &mu) in others.iter().enumerate() {
                for (ei, &e) in exps.iter().enumerate() {
                    let col = t * exps.len() + ei;
                    for (p, c) in dense[mu][nu].terms() {
                        sys.eq(nu, p - e).0[col] += BigRational::from(to_big(c));
                    }
                    if mu == nu {
                        sys.eq(nu, e).0[col] -= BigRational::one();
                    }
                }
            }
        }
        let rows: Vec<(Vec<BigRational>, BigRational)> =
            sys.eqs.into_values().map(|(lhs, k)| (lhs, -k)).collect();
        let x = solve_unique(rows, nvar)?;
        let mut row = BTreeMap::new();
        row.insert(i, LaurentPoly::one());
        for (t, &mu) in others.iter().enumerate() {
            let mut p = LaurentPoly::zero();
            for (ei, &e) in exps.iter().enumerate() {
                let v = &x[t * exps.len() + ei];
                if !v.is_integer() {
                    return None;
                }
                let c: i64 = v.to_integer().try_into().ok()?;
                p += &LaurentPoly::monomial(e, c);
            }
            if !p.is_zero() {
                row.insert(mu, p);
            }
        }
        out.push(row);
    }
    Some(out)
}

/// Linear equations keyed by `(ν, power of q)`: coefficients of the
/// unknowns and a constant term.
struct System {
    nvar: usize,
    eqs: BTreeMap<(usize, i32), (Vec<BigRational>, BigRational)>,
}

impl System {
    fn eq(&mut self, nu: usize, p: i32) -> &mut (Vec<BigRational>, BigRational) {
        let nvar = self.nvar;
        self.eqs
            .entry((nu, p))
            .or_insert_with(|| (vec![BigRational::zero(); nvar], BigRational::zero()))
    }
}

/// Gaussian elimination on `rows` (`lhs · x = rhs`). `None` unless the system
/// is consistent with full column rank.
fn solve_unique(
    mut rows: Vec<(Vec<BigRational>, BigRational)>,
    nvar: usize,
) -> Option<Vec<BigRational>> {
    let mut r = 0;
    for col in 0..nvar {
        let p = (r..rows.len()).find(|&k| !rows[k].0[col].is_zero())?;
        rows.swap(r, p);
        let inv = rows[r].0[col].recip();
        for v in rows[r].0.iter_mut() {
            *v = &*v * &inv;
        }
        rows[r].1 = &rows[r].1 * &inv;
        let (pivot_lhs, pivot_rhs) = rows[r].clone();
        for k in 0..rows.len() {
            if k != r && !rows[k].0[col].is_zero() {
                let f = rows[k].0[col].clone();
                for (v, pv) in rows[k].0.iter_mut().zip(&pivot_lhs) {
                    *v -= &f * pv;
                }
                rows[k].1 -= &f * &pivot_rhs;
            }
        }
        r += 1;
    }
    if rows[r..].iter().any(|(_, k)| !k.is_zero()) {
        return None;
    }
    Some(rows[..nvar].iter().map(|(_, k)| k.clone()).collect())
}

/// `max |exponent|` over all entries of a bar matrix.
pub fn max_degree(a: &BarMatrix) -> i32 {
    (0..a.len())
        .flat_map(|i| {
            a.row(i)
                .map(|(_, c)| c.terms().map(|(e, _)| e.abs()).max().unwrap_or(0))
                .collect::<Vec<_>>()
        })
        .max()
        .unwrap_or(0)
}
