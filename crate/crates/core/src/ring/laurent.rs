use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// One signed monomial `coeff * p^p * t^t`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub coeff: BigInt,
    pub p: i32,
    pub t: i32,
}

/// Element of `Z[p^±1, t^±1]`.
///
/// Terms are kept sorted lexicographically by `(p, t)` exponent with no zero
/// coefficients and no repeated exponent pairs, so structural equality is
/// polynomial equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: Vec<Term>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(1, 0, 0)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: impl Into<BigInt>, p: i32, t: i32) -> Self {
        let coeff = c.into();
        if coeff.is_zero() {
            return Self::zero();
        }
        Self {
            terms: vec![Term { coeff, p, t }],
        }
    }

    /// The variable `p`.
    pub fn p() -> Self {
        Self::monomial(1, 1, 0)
    }

    /// The variable `t`.
    pub fn t() -> Self {
        Self::monomial(1, 0, 1)
    }

    /// `p^e`, `e` may be negative.
    pub fn p_pow(e: i32) -> Self {
        Self::monomial(1, e, 0)
    }

    pub fn t_pow(e: i32) -> Self {
        Self::monomial(1, 0, e)
    }

    /// Builds a polynomial from arbitrary `(coeff, p, t)` triples, merging
    /// duplicates and dropping zeros.
    pub fn from_terms<I, C>(iter: I) -> Self
    where
        I: IntoIterator<Item = (C, i32, i32)>,
        C: Into<BigInt>,
    {
        let mut acc: BTreeMap<(i32, i32), BigInt> = BTreeMap::new();
        for (c, p, t) in iter {
            *acc.entry((p, t)).or_default() += c.into();
        }
        Self::from_map(acc)
    }

    fn from_map(acc: BTreeMap<(i32, i32), BigInt>) -> Self {
        let terms = acc
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|((p, t), coeff)| Term { coeff, p, t })
            .collect();
        Self { terms }
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms[0].p == 0
            && self.terms[0].t == 0
            && self.terms[0].coeff.is_one()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Returns `(coeff, p, t)` when the polynomial is a single term.
    pub fn as_monomial(&self) -> Option<(&BigInt, i32, i32)> {
        match self.terms.as_slice() {
            [t] => Some((&t.coeff, t.p, t.t)),
            _ => None,
        }
    }

    /// True for `±p^a t^b`, the units of the ring.
    pub fn is_unit(&self) -> bool {
        matches!(self.as_monomial(), Some((c, _, _)) if c.abs().is_one())
    }

    /// Coefficient of `p^p t^t`.
    pub fn coeff(&self, p: i32, t: i32) -> BigInt {
        self.terms
            .binary_search_by(|term| (term.p, term.t).cmp(&(p, t)))
            .map(|i| self.terms[i].coeff.clone())
            .unwrap_or_default()
    }

    /// Leading term in the canonical order (largest `(p, t)`).
    pub fn leading(&self) -> Option<&Term> {
        self.terms.last()
    }

    pub fn min_exponents(&self) -> Option<(i32, i32)> {
        let p = self.terms.iter().map(|t| t.p).min()?;
        let t = self.terms.iter().map(|t| t.t).min()?;
        Some((p, t))
    }

    pub fn max_exponents(&self) -> Option<(i32, i32)> {
        let p = self.terms.iter().map(|t| t.p).max()?;
        let t = self.terms.iter().map(|t| t.t).max()?;
        Some((p, t))
    }

    pub fn depends_on_p(&self) -> bool {
        self.terms.iter().any(|t| t.p != 0)
    }

    pub fn depends_on_t(&self) -> bool {
        self.terms.iter().any(|t| t.t != 0)
    }

    /// Multiplies by `c * p^dp * t^dt`.
    pub fn mul_monomial(&self, c: &BigInt, dp: i32, dt: i32) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let terms = self
            .terms
            .iter()
            .map(|term| Term {
                coeff: &term.coeff * c,
                p: term.p + dp,
                t: term.t + dt,
            })
            .collect();
        Self { terms }
    }

    pub fn shift(&self, dp: i32, dt: i32) -> Self {
        self.mul_monomial(&BigInt::one(), dp, dt)
    }

    pub fn scale(&self, c: impl Into<BigInt>) -> Self {
        self.mul_monomial(&c.into(), 0, 0)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Integer power allowing negative exponents for units.
    pub fn pow_signed(&self, e: i32) -> Result<Self> {
        if e >= 0 {
            return Ok(self.pow(e as u32));
        }
        match self.as_monomial() {
            Some((c, p, t)) if c.abs().is_one() => {
                let k = -e;
                let sign = if c.is_negative() && k % 2 == 1 { -1 } else { 1 };
                Ok(Self::monomial(sign, -p * k, -t * k))
            }
            _ => Err(Error::NotDivisible {
                dividend: "1".into(),
                divisor: self.to_string(),
            }),
        }
    }

    /// Content: gcd of the integer coefficients, positive.
    pub fn content(&self) -> BigInt {
        self.terms
            .iter()
            .fold(BigInt::zero(), |g, t| g.gcd(&t.coeff))
    }

    /// Specializes `t = 1`.
    pub fn at_t_one(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|t| (t.coeff.clone(), t.p, 0)))
    }

    /// Specializes `p = 1`.
    pub fn at_p_one(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|t| (t.coeff.clone(), 0, t.t)))
    }

    /// Applies `t -> t^-1`.
    pub fn invert_t(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|t| (t.coeff.clone(), t.p, -t.t)))
    }

    /// Value at `p = 1, t = 1`.
    pub fn sum_of_coefficients(&self) -> BigInt {
        self.terms.iter().map(|t| &t.coeff).sum()
    }

    /// Exact quotient in `Z[p^±1, t^±1]`.
    pub fn exact_divide(&self, divisor: &Self) -> Result<Self> {
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let not_divisible = || Error::NotDivisible {
            dividend: self.to_string(),
            divisor: divisor.to_string(),
        };
        if let Some((c, dp, dt)) = divisor.as_monomial() {
            let mut terms = Vec::with_capacity(self.terms.len());
            for term in &self.terms {
                let (q, r) = term.coeff.div_rem(c);
                if !r.is_zero() {
                    return Err(not_divisible());
                }
                terms.push(Term {
                    coeff: q,
                    p: term.p - dp,
                    t: term.t - dt,
                });
            }
            return Ok(Self { terms });
        }
        // Strip monomial content from both sides; the quotient of the
        // remaining ordinary polynomials is then an ordinary polynomial.
        let (ap, at) = self.min_exponents().expect("nonzero");
        let (bp, bt) = divisor.min_exponents().expect("nonzero");
        let mut rem = self.shift(-ap, -at);
        let b = divisor.shift(-bp, -bt);
        let lb = b.leading().expect("nonzero").clone();
        let mut quotient: Vec<Term> = Vec::new();
        while let Some(lr) = rem.leading() {
            if lr.p < lb.p || lr.t < lb.t {
                return Err(not_divisible());
            }
            let (q, r) = lr.coeff.div_rem(&lb.coeff);
            if !r.is_zero() {
                return Err(not_divisible());
            }
            let (dp, dt) = (lr.p - lb.p, lr.t - lb.t);
            rem = &rem - &b.mul_monomial(&q, dp, dt);
            quotient.push(Term {
                coeff: q,
                p: dp,
                t: dt,
            });
        }
        quotient.reverse();
        Ok(Self { terms: quotient }.shift(ap - bp, at - bt))
    }

    /// Text form with terms in descending `t`-degree, used for one-variable
    /// knot polynomials (`t - 1 + t^-1`).
    pub fn to_string_descending(&self) -> String {
        let mut terms = self.terms.clone();
        terms.sort_by_key(|x| std::cmp::Reverse((x.t, x.p)));
        format_terms(&terms)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("serializable")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        Self::deserialize(value).map_err(|e| Error::Parse(e.to_string()))
    }
}

fn format_monomial(p: i32, t: i32) -> String {
    let mut parts = Vec::new();
    for (name, e) in [("t", t), ("p", p)] {
        match e {
            0 => {}
            1 => parts.push(name.to_string()),
            _ => parts.push(format!("{name}^{e}")),
        }
    }
    parts.join("*")
}

fn format_terms(terms: &[Term]) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, term) in terms.iter().enumerate() {
        let neg = term.coeff.is_negative();
        let mag = term.coeff.abs();
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let mono = format_monomial(term.p, term.t);
        if mono.is_empty() {
            out.push_str(&mag.to_string());
        } else if mag.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{mag}*{mono}"));
        }
    }
    out
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_terms(&self.terms))
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;

    /// Parses the text form, e.g. `1 - t - t*p + t^2*p` or `-3*p^-1*t`.
    fn from_str(s: &str) -> Result<Self> {
        let src: String = s
            .replace('−', "-")
            .chars()
            .filter(|c| !c.is_whitespace())
            .collect();
        if src.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let bytes = src.as_bytes();
        let mut pos = 0;
        let mut terms = Vec::new();
        let err = |msg: &str, pos: usize| Error::Parse(format!("{msg} at byte {pos} of {s:?}"));
        while pos < bytes.len() {
            let mut sign = 1i32;
            if bytes[pos] == b'+' || bytes[pos] == b'-' {
                if bytes[pos] == b'-' {
                    sign = -1;
                }
                pos += 1;
            } else if pos != 0 {
                return Err(err("expected '+' or '-'", pos));
            }
            let mut coeff = BigInt::from(sign);
            let (mut ep, mut et) = (0i32, 0i32);
            let mut first = true;
            loop {
                if !first {
                    if pos < bytes.len() && bytes[pos] == b'*' {
                        pos += 1;
                    } else {
                        break;
                    }
                }
                first = false;
                if pos >= bytes.len() {
                    return Err(err("unexpected end", pos));
                }
                match bytes[pos] {
                    b'0'..=b'9' => {
                        let start = pos;
                        while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                            pos += 1;
                        }
                        coeff *= BigInt::from_str(&src[start..pos])
                            .map_err(|_| err("bad integer", start))?;
                    }
                    v @ (b'p' | b't') => {
                        pos += 1;
                        let mut e = 1i32;
                        if pos < bytes.len() && bytes[pos] == b'^' {
                            pos += 1;
                            let start = pos;
                            if pos < bytes.len() && bytes[pos] == b'-' {
                                pos += 1;
                            }
                            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                                pos += 1;
                            }
                            e = src[start..pos]
                                .parse()
                                .map_err(|_| err("bad exponent", start))?;
                        }
                        if v == b'p' {
                            ep += e;
                        } else {
                            et += e;
                        }
                    }
                    _ => return Err(err("unexpected character", pos)),
                }
            }
            terms.push((coeff, ep, et));
        }
        Ok(Self::from_terms(terms))
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for term in &self.terms {
            match term.coeff.to_i64() {
                Some(c) => seq.serialize_element(&(c, term.p, term.t))?,
                None => seq.serialize_element(&(term.coeff.to_string(), term.p, term.t))?,
            }
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw: Vec<(serde_json::Value, i32, i32)> = Vec::deserialize(deserializer)?;
        let mut terms = Vec::with_capacity(raw.len());
        for (c, p, t) in raw {
            let coeff = match c {
                serde_json::Value::Number(n) => n
                    .as_i64()
                    .map(BigInt::from)
                    .ok_or_else(|| D::Error::custom("coefficient must be an integer"))?,
                serde_json::Value::String(s) => BigInt::from_str(&s).map_err(D::Error::custom)?,
                _ => return Err(D::Error::custom("coefficient must be an integer")),
            };
            terms.push((coeff, p, t));
        }
        Ok(Self::from_terms(terms))
    }
}

fn merge(a: &[Term], b: &[Term], negate_b: bool) -> Vec<Term> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ord = match (a.get(i), b.get(j)) {
            (Some(x), Some(y)) => (x.p, x.t).cmp(&(y.p, y.t)),
            (Some(_), None) => std::cmp::Ordering::Less,
            (None, _) => std::cmp::Ordering::Greater,
        };
        match ord {
            std::cmp::Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                let mut term = b[j].clone();
                if negate_b {
                    term.coeff = -term.coeff;
                }
                out.push(term);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                let c = if negate_b {
                    &a[i].coeff - &b[j].coeff
                } else {
                    &a[i].coeff + &b[j].coeff
                };
                if !c.is_zero() {
                    out.push(Term {
                        coeff: c,
                        p: a[i].p,
                        t: a[i].t,
                    });
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        LaurentPoly {
            terms: merge(&self.terms, &rhs.terms, false),
        }
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        LaurentPoly {
            terms: merge(&self.terms, &rhs.terms, true),
        }
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        if let Some((c, p, t)) = rhs.as_monomial() {
            return self.mul_monomial(c, p, t);
        }
        if let Some((c, p, t)) = self.as_monomial() {
            return rhs.mul_monomial(c, p, t);
        }
        let mut acc: BTreeMap<(i32, i32), BigInt> = BTreeMap::new();
        for a in &self.terms {
            for b in &rhs.terms {
                *acc.entry((a.p + b.p, a.t + b.t)).or_default() += &a.coeff * &b.coeff;
            }
        }
        LaurentPoly::from_map(acc)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: -&t.coeff,
                    p: t.p,
                    t: t.t,
                })
                .collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(mut self) -> LaurentPoly {
        for t in &mut self.terms {
            t.coeff = -std::mem::take(&mut t.coeff);
        }
        self
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$method(rhs)
            }
        }
        impl $tr<LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        self.terms = merge(&self.terms, &rhs.terms, false);
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        self.terms = merge(&self.terms, &rhs.terms, true);
    }
}

impl MulAssign<&LaurentPoly> for LaurentPoly {
    fn mul_assign(&mut self, rhs: &LaurentPoly) {
        *self = &*self * rhs;
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

impl std::iter::Sum for LaurentPoly {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |acc, x| &acc + &x)
    }
}

impl std::iter::Product for LaurentPoly {
    fn product<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::one(), |acc, x| &acc * &x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn canonical_order_and_display() {
        let x = lp("t^2*p - t*p - t + 1");
        assert_eq!(x.to_string(), "1 - t - t*p + t^2*p");
        assert_eq!(lp("0").to_string(), "0");
        assert_eq!(lp("-3*p^-1*t").to_string(), "-3*t*p^-1");
        assert_eq!(lp("t^-1 - 1 + t").to_string_descending(), "t - 1 + t^-1");
    }

    #[test]
    fn parse_accepts_unicode_minus() {
        assert_eq!(lp("1 − t"), &LaurentPoly::one() - &LaurentPoly::t());
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!("1 + x".parse::<LaurentPoly>().is_err());
        assert!("".parse::<LaurentPoly>().is_err());
        assert!("1 +".parse::<LaurentPoly>().is_err());
    }

    #[test]
    fn zero_is_empty() {
        let x = lp("1 + p");
        assert!((&x - &x).is_zero());
        assert!((&x - &x).terms().is_empty());
    }

    #[test]
    fn exact_division_examples() {
        assert_eq!(
            lp("1 - p^2").exact_divide(&lp("1 - p")).unwrap(),
            lp("1 + p")
        );
        assert_eq!(
            LaurentPoly::zero().exact_divide(&lp("1 - p")).unwrap(),
            LaurentPoly::zero()
        );
        let num = &lp("1 - t") * &lp("1 - t*p");
        assert_eq!(num.exact_divide(&lp("1 - t")).unwrap(), lp("1 - t*p"));
        assert_eq!(
            lp("p^-2 - 1").exact_divide(&lp("p^-1 - 1")).unwrap(),
            lp("p^-1 + 1")
        );
    }

    #[test]
    fn exact_division_failures() {
        assert!(lp("1").exact_divide(&lp("1 - p")).is_err());
        assert!(lp("1 + p").exact_divide(&lp("2")).is_err());
        assert_eq!(
            lp("1").exact_divide(&LaurentPoly::zero()),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn json_form() {
        let x = lp("1 - t - t*p + t^2*p");
        assert_eq!(
            x.to_json().to_string(),
            "[[1,0,0],[-1,0,1],[-1,1,1],[1,1,2]]"
        );
        assert_eq!(LaurentPoly::from_json(&x.to_json()).unwrap(), x);
    }

    #[test]
    fn signed_powers_of_units() {
        assert_eq!(lp("-t").pow_signed(-1).unwrap(), lp("-t^-1"));
        assert_eq!(lp("-t").pow_signed(-2).unwrap(), lp("t^-2"));
        assert!(lp("1 - t").pow_signed(-1).is_err());
    }
}
