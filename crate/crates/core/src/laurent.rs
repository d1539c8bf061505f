//! Laurent polynomials in one variable `q` with arbitrary-precision integer
//! coefficients.
//!
//! Everything in the Fock-space engine lives in `Z[q, q^-1]`: the
//! straightening coefficients, the bar-involution prefactors and the
//! q-decomposition numbers. Division never happens, so there is no rational
//! arithmetic here.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use dashu_int::IBig;
use serde_json::Value;
use smallvec::{smallvec, SmallVec};

use crate::error::{Error, Result};

/// Sparse Laurent polynomial, stored as `(exponent, coefficient)` pairs sorted
/// by exponent with no zero coefficient.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: Terms,
}

type Terms = SmallVec<[(i32, IBig); 4]>;

impl LaurentPoly {
    pub fn zero() -> Self {
        Self {
            terms: Terms::new(),
        }
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    /// `q` itself.
    pub fn q() -> Self {
        Self::monomial(1, 1)
    }

    /// `coeff * q^exp`.
    pub fn monomial(exp: i32, coeff: impl Into<IBig>) -> Self {
        let c = coeff.into();
        if c.is_zero() {
            Self::zero()
        } else {
            Self {
                terms: smallvec![(exp, c)],
            }
        }
    }

    /// Builds a polynomial from arbitrary `(exponent, coefficient)` pairs;
    /// repeated exponents are summed and zeros dropped.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i32, C)>,
        C: Into<IBig>,
    {
        let mut raw: Vec<(i32, IBig)> = terms.into_iter().map(|(e, c)| (e, c.into())).collect();
        raw.sort_by_key(|(e, _)| *e);
        let mut out = Terms::with_capacity(raw.len());
        for (e, c) in raw {
            match out.last_mut() {
                Some((le, lc)) if *le == e => *lc += c,
                _ => out.push((e, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Self { terms: out }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    /// Iterates over `(exponent, coefficient)` in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i32, &IBig)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: i32) -> IBig {
        match self.terms.binary_search_by_key(&exp, |(e, _)| *e) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => IBig::ZERO,
        }
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.terms.first().map(|(e, _)| *e)
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.terms.last().map(|(e, _)| *e)
    }

    /// The image under `q -> q^-1`.
    pub fn bar(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .rev()
                .map(|(e, c)| (-e, c.clone()))
                .collect(),
        }
    }

    /// Multiplies by `q^by`.
    pub fn shift(&self, by: i32) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e + by, c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, k: &IBig) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, c)| (*e, c * k)).collect(),
        }
    }

    /// All exponents are `>= 1` (the zero polynomial qualifies).
    pub fn in_positive_part(&self) -> bool {
        self.min_exp().is_none_or(|e| e >= 1)
    }

    /// All exponents are `<= -1` (the zero polynomial qualifies).
    pub fn in_negative_part(&self) -> bool {
        self.max_exp().is_none_or(|e| e <= -1)
    }

    /// Fixed by `bar`.
    pub fn is_bar_symmetric(&self) -> bool {
        self.terms.len() == self.bar().terms.len() && *self == self.bar()
    }

    /// Terms with exponent `> 0`.
    pub fn positive_part(&self) -> Self {
        Self {
            terms: self.terms.iter().filter(|(e, _)| *e > 0).cloned().collect(),
        }
    }

    /// Terms with exponent `< 0`.
    pub fn negative_part(&self) -> Self {
        Self {
            terms: self.terms.iter().filter(|(e, _)| *e < 0).cloned().collect(),
        }
    }

    /// `self += sign * q^shift * other` without intermediate allocation of the
    /// shifted copy.
    pub fn add_shifted(&mut self, other: &LaurentPoly, shift: i32, negate: bool) {
        if other.is_zero() {
            return;
        }
        if self.is_zero() {
            self.terms = other
                .terms
                .iter()
                .map(|(e, c)| (e + shift, if negate { -c.clone() } else { c.clone() }))
                .collect();
            return;
        }
        let mut out = Terms::with_capacity(self.terms.len() + other.terms.len());
        let mut a = std::mem::take(&mut self.terms).into_iter().peekable();
        let mut b = other.terms.iter().peekable();
        loop {
            let ord = match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => Ordering::Less,
                (None, Some(_)) => Ordering::Greater,
                (Some((ea, _)), Some((eb, _))) => ea.cmp(&(eb + shift)),
            };
            match ord {
                Ordering::Less => out.push(a.next().unwrap()),
                Ordering::Greater => {
                    let (eb, cb) = b.next().unwrap();
                    out.push((eb + shift, if negate { -cb.clone() } else { cb.clone() }));
                }
                Ordering::Equal => {
                    let (ea, ca) = a.next().unwrap();
                    let (_, cb) = b.next().unwrap();
                    let c = if negate { ca - cb } else { ca + cb };
                    if !c.is_zero() {
                        out.push((ea, c));
                    }
                }
            }
        }
        self.terms = out;
    }

    /// Human-readable form with ascending exponents, e.g. `-q^-1 + 2*q^3`.
    pub fn to_human(&self) -> String {
        self.to_string()
    }

    /// JSON form: an array of `[exponent, coefficient]` pairs sorted by
    /// exponent. Coefficients outside the `i64` range are emitted as decimal
    /// strings.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(e, c)| {
                    let cv = match i64::try_from(c) {
                        Ok(v) => Value::from(v),
                        Err(_) => Value::String(c.to_string()),
                    };
                    Value::Array(vec![Value::from(*e), cv])
                })
                .collect(),
        )
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |msg: &str| Error::Parse(format!("laurent JSON: {msg}"));
        let arr = v.as_array().ok_or_else(|| bad("expected an array"))?;
        let mut terms = Vec::with_capacity(arr.len());
        for pair in arr {
            let p = pair
                .as_array()
                .ok_or_else(|| bad("expected [exp, coeff]"))?;
            if p.len() != 2 {
                return Err(bad("expected [exp, coeff]"));
            }
            let e = p[0]
                .as_i64()
                .and_then(|e| i32::try_from(e).ok())
                .ok_or_else(|| bad("exponent must be an integer"))?;
            let c: IBig = match &p[1] {
                Value::Number(num) => num
                    .as_i64()
                    .map(IBig::from)
                    .ok_or_else(|| bad("coefficient must be an integer"))?,
                Value::String(s) => s.parse().map_err(|_| bad("bad coefficient string"))?,
                _ => return Err(bad("coefficient must be an integer")),
            };
            terms.push((e, c));
        }
        Ok(Self::from_terms(terms))
    }
}

impl serde::Serialize for LaurentPoly {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}

impl<'de> serde::Deserialize<'de> for LaurentPoly {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let v = Value::deserialize(deserializer)?;
        Self::from_json(&v).map_err(serde::de::Error::custom)
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::monomial(0, c)
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        self.add_shifted(rhs, 0, false);
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        self.add_shifted(rhs, 0, true);
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self -= &rhs;
        self
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        // Dense accumulation over the exponent window is cheaper than
        // repeated sparse merges for the small degrees that occur here.
        let lo = self.terms[0].0 + rhs.terms[0].0;
        let hi = self.terms[self.terms.len() - 1].0 + rhs.terms[rhs.terms.len() - 1].0;
        let mut acc = vec![IBig::ZERO; (hi - lo + 1) as usize];
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                acc[(ea + eb - lo) as usize] += ca * cb;
            }
        }
        LaurentPoly {
            terms: acc
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (lo + i as i32, c))
                .collect(),
        }
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let negative = *c < IBig::ZERO;
            let mag = if negative { -c.clone() } else { c.clone() };
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let unit = mag.is_one();
            match *e {
                0 => write!(f, "{mag}")?,
                1 if unit => f.write_str("q")?,
                1 => write!(f, "{mag}*q")?,
                _ if unit => write!(f, "q^{e}")?,
                _ => write!(f, "{mag}*q^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;

    /// Parses the human form. Accepts `q`, `q^e`, `c*q^e`, `c*q`, `c`, with
    /// terms separated by `+`/`-`; whitespace is ignored.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("cannot parse Laurent polynomial {s:?}"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad());
        }
        // Split at +/- that are not part of an exponent (i.e. not after '^').
        let mut pieces: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut neg = false;
        let mut prev: Option<char> = None;
        for ch in compact.chars() {
            if (ch == '+' || ch == '-') && prev != Some('^') {
                if !cur.is_empty() {
                    pieces.push((neg, std::mem::take(&mut cur)));
                } else if prev.is_some() && prev != Some('+') && prev != Some('-') {
                    return Err(bad());
                }
                neg = ch == '-';
            } else {
                cur.push(ch);
            }
            prev = Some(ch);
        }
        if cur.is_empty() {
            return Err(bad());
        }
        pieces.push((neg, cur));

        let mut terms: Vec<(i32, IBig)> = Vec::new();
        for (neg, body) in pieces {
            let (coeff_str, var_str) = match body.find('q') {
                None => (body.as_str(), None),
                Some(pos) => {
                    let (c, v) = body.split_at(pos);
                    let c = c.strip_suffix('*').unwrap_or(c);
                    if c.is_empty() && body[..pos].ends_with('*') {
                        return Err(bad());
                    }
                    (c, Some(v))
                }
            };
            let mut coeff: IBig = if coeff_str.is_empty() {
                IBig::ONE
            } else {
                coeff_str.parse().map_err(|_| bad())?
            };
            if neg {
                coeff = -coeff;
            }
            let exp = match var_str {
                None => 0,
                Some("q") => 1,
                Some(v) => v
                    .strip_prefix("q^")
                    .and_then(|e| e.parse::<i32>().ok())
                    .ok_or_else(bad)?,
            };
            terms.push((exp, coeff));
        }
        Ok(Self::from_terms(terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn add_cancels() {
        assert_eq!(&p("q - q^-1") + &p("q^-1"), p("q"));
        assert_eq!(&LaurentPoly::zero() + &p("3*q^2 - 1"), p("3*q^2 - 1"));
        assert_eq!(&p("q^2 - 1") + &p("1"), p("q^2"));
    }

    #[test]
    fn mul_examples() {
        assert_eq!(&p("q - q^-1") * &p("q + q^-1"), p("q^2 - q^-2"));
        assert_eq!(&LaurentPoly::one() * &p("2*q^3 - q"), p("2*q^3 - q"));
        assert_eq!(&p("-q") * &p("-q"), p("q^2"));
    }

    #[test]
    fn bar_examples() {
        assert_eq!(p("q^2 - 1").bar(), p("q^-2 - 1"));
        assert_eq!(p("q - q^-1").bar(), p("q^-1 - q"));
        assert_eq!(p("5").bar(), p("5"));
    }

    #[test]
    fn lattice_parts() {
        assert!(p("q + 3*q^2").in_positive_part());
        assert!(p("-q^-1").in_negative_part());
        assert!(!p("-q^-1").in_positive_part());
        assert!(LaurentPoly::zero().in_positive_part());
        assert!(LaurentPoly::zero().in_negative_part());
        assert!(!p("1 + q").in_positive_part());
    }

    #[test]
    fn human_format() {
        assert_eq!(p("2*q^3 - q^-1").to_string(), "-q^-1 + 2*q^3");
        assert_eq!(p("q - q^-1").to_string(), "-q^-1 + q");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert_eq!(p("-1").to_string(), "-1");
        assert_eq!(p("q^2-1").to_string(), "-1 + q^2");
        assert!("q^".parse::<LaurentPoly>().is_err());
        assert!("".parse::<LaurentPoly>().is_err());
        assert!("2**q".parse::<LaurentPoly>().is_err());
    }

    #[test]
    fn json_format() {
        let v = p("-q^-1 + 2*q^3").to_json();
        assert_eq!(v.to_string(), "[[-1,-1],[3,2]]");
        assert_eq!(LaurentPoly::from_json(&v).unwrap(), p("-q^-1 + 2*q^3"));
        let big: IBig = "123456789012345678901234567890".parse().unwrap();
        let poly = LaurentPoly::monomial(4, big);
        assert_eq!(LaurentPoly::from_json(&poly.to_json()).unwrap(), poly);
        assert!(LaurentPoly::from_json(&serde_json::json!([[1]])).is_err());
    }

    #[test]
    fn coefficients_do_not_overflow() {
        let mut x = p("2*q + 3");
        for _ in 0..8 {
            x = &x * &x;
        }
        let top = x.coeff(256);
        assert_eq!(top, IBig::from(2u8).pow(256));
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        proptest::collection::vec((-6i32..=6, -4i64..=4), 0..6).prop_map(LaurentPoly::from_terms)
    }

    proptest! {
        #[test]
        fn bar_is_ring_involution(a in arb_poly(), b in arb_poly()) {
            prop_assert_eq!(a.bar().bar(), a.clone());
            prop_assert_eq!((&a * &b).bar(), &a.bar() * &b.bar());
            prop_assert_eq!((&a + &b).bar(), &a.bar() + &b.bar());
        }

        #[test]
        fn canonical_form_has_no_zeros(a in arb_poly(), b in arb_poly()) {
            for v in [&a + &b, &a * &b, &a - &a, &a - &b] {
                prop_assert!(v.terms().all(|(_, c)| !c.is_zero()));
            }
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn human_and_json_roundtrip(a in arb_poly()) {
            prop_assert_eq!(a.to_string().parse::<LaurentPoly>().unwrap(), a.clone());
            prop_assert_eq!(LaurentPoly::from_json(&a.to_json()).unwrap(), a);
        }

        #[test]
        fn add_shifted_matches_mul(a in arb_poly(), b in arb_poly(), s in -3i32..=3) {
            let mut x = a.clone();
            x.add_shifted(&b, s, true);
            prop_assert_eq!(x, &a - &(&b * &LaurentPoly::monomial(s, 1)));
        }
    }
}
