//! Sparse multivariate polynomials with exact coefficients.
//!
//! Variables are `t1, …, tn`; variable `i` (0-based) prints as `t{i+1}`, so
//! edge id `e` of a graph corresponds to `t{e+1}`. Terms are kept in a
//! `BTreeMap` under graded lexicographic order and printed highest first.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact coefficient ring.
pub trait Coeff:
    Clone
    + Eq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + FromStr
    + Send
    + Sync
{
    /// `self / other` when the quotient lies in the ring.
    fn exact_div(&self, other: &Self) -> Option<Self>;
    fn to_f64(&self) -> f64;
    fn is_negative(&self) -> bool;
}

impl Coeff for BigInt {
    fn exact_div(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return None;
        }
        let (q, r) = self.div_rem(other);
        r.is_zero().then_some(q)
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
}

impl Coeff for BigRational {
    fn exact_div(&self, other: &Self) -> Option<Self> {
        (!other.is_zero()).then(|| self / other)
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
}

/// Exponent vector. Ordered by total degree, then lexicographically with
/// larger exponents of earlier variables ranking higher.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` if every exponent stays non-negative.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Outcome of a homogeneity test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Homogeneity {
    Zero,
    Degree(u32),
    Inhomogeneous,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial<C: Coeff> {
    nvars: usize,
    terms: BTreeMap<Monomial, C>,
}

pub type IntPoly = Polynomial<BigInt>;
pub type RatPoly = Polynomial<BigRational>;

impl<C: Coeff> Polynomial<C> {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: C) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, C::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::var(nvars, i), C::one());
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, C)>) -> Result<Self> {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            if m.0.len() != nvars {
                return Err(Error::Parse(format!(
                    "exponent vector of length {} for {nvars} variables",
                    m.0.len()
                )));
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
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

    /// Terms in increasing monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &C)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().clone() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn homogeneity(&self) -> Homogeneity {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => Homogeneity::Zero,
            Some(d) if degs.all(|e| e == d) => Homogeneity::Degree(d),
            Some(_) => Homogeneity::Inhomogeneous,
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut p = Self::zero(self.nvars);
        for (m, a) in &self.terms {
            p.add_term(m.clone(), a.clone() * c.clone());
        }
        p
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(self.nvars), |acc, _| &acc * self)
    }

    /// Exact division; fails if `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        let Some((lm, lc)) = divisor.leading_term() else {
            return Err(Error::InexactDivision("division by zero polynomial".into()));
        };
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut rem = self.clone();
        let mut quot = Self::zero(self.nvars);
        while let Some((m, c)) = rem.leading_term() {
            let qm = m.div(&lm).ok_or_else(|| {
                Error::InexactDivision("leading monomial not divisible".into())
            })?;
            let qc = c.exact_div(&lc).ok_or_else(|| {
                Error::InexactDivision("leading coefficient not divisible".into())
            })?;
            let step = Polynomial::from_terms(self.nvars, [(qm, qc)])?;
            rem = &rem - &(&step * divisor);
            quot = &quot + &step;
        }
        Ok(quot)
    }

    /// Coefficients as strings paired with exponent vectors, highest term first.
    pub fn to_term_list(&self) -> Vec<Term> {
        self.terms
            .iter()
            .rev()
            .map(|(m, c)| Term {
                coeff: c.to_string(),
                exponents: m.0.clone(),
            })
            .collect()
    }

    pub fn from_term_list(nvars: usize, list: &[Term]) -> Result<Self> {
        let mut terms = Vec::with_capacity(list.len());
        for t in list {
            let c = t
                .coeff
                .parse::<C>()
                .map_err(|_| Error::Parse(format!("bad coefficient {:?}", t.coeff)))?;
            terms.push((Monomial(t.exponents.clone()), c));
        }
        Self::from_terms(nvars, terms)
    }

    pub fn eval_f64(&self, x: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                m.0.iter()
                    .zip(x)
                    .fold(c.to_f64(), |acc, (&e, &xi)| acc * xi.powi(e as i32))
            })
            .sum()
    }

    /// Replace variable `i` by `value`; the variable count is unchanged.
    pub fn substitute(&self, i: usize, value: &C) -> Self {
        let mut p = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            let k = std::mem::replace(&mut e[i], 0);
            let mut f = c.clone();
            for _ in 0..k {
                f = f * value.clone();
            }
            p.add_term(Monomial(e), f);
        }
        p
    }

    /// Parse text such as `t1*t2 - 3*t3^2 + 1` over `nvars` variables.
    pub fn parse(text: &str, nvars: usize) -> Result<Self> {
        let mut p = Self::zero(nvars);
        for (sign, body) in split_signed_terms(text)? {
            let mut coeff = C::one();
            let mut exps = vec![0u32; nvars];
            for factor in body.split('*').map(str::trim) {
                if factor.is_empty() {
                    return Err(Error::Parse(format!("empty factor in {body:?}")));
                }
                if let Some(rest) = factor.strip_prefix('t') {
                    let (idx, pow) = match rest.split_once('^') {
                        Some((i, k)) => (i, k.trim().parse::<u32>().ok()),
                        None => (rest, Some(1)),
                    };
                    let idx: usize = idx
                        .trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad variable {factor:?}")))?;
                    let pow = pow.ok_or_else(|| Error::Parse(format!("bad power {factor:?}")))?;
                    if idx == 0 || idx > nvars {
                        return Err(Error::Parse(format!(
                            "variable {factor:?} outside t1..t{nvars}"
                        )));
                    }
                    exps[idx - 1] += pow;
                } else {
                    let c = factor
                        .parse::<C>()
                        .map_err(|_| Error::Parse(format!("bad coefficient {factor:?}")))?;
                    coeff = coeff * c;
                }
            }
            if sign < 0 {
                coeff = -coeff;
            }
            p.add_term(Monomial(exps), coeff);
        }
        Ok(p)
    }
}

/// Number of variables referenced by `text`: the largest `t` index.
pub fn max_variable_index(text: &str) -> usize {
    let b = text.as_bytes();
    let mut best = 0;
    let mut i = 0;
    while i < b.len() {
        if b[i] == b't' {
            let start = i + 1;
            let mut j = start;
            while j < b.len() && b[j].is_ascii_digit() {
                j += 1;
            }
            if let Ok(k) = text[start..j].parse::<usize>() {
                best = best.max(k);
            }
            i = j.max(i + 1);
        } else {
            i += 1;
        }
    }
    best
}

fn split_signed_terms(text: &str) -> Result<Vec<(i8, &str)>> {
    let text = text.trim();
    if text.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut out = Vec::new();
    let mut sign = 1i8;
    let mut start = 0;
    let bytes = text.as_bytes();
    let mut expect_term = true;
    for (i, &ch) in bytes.iter().enumerate() {
        if ch == b'+' || ch == b'-' {
            if expect_term {
                if ch == b'-' {
                    sign = -sign;
                }
                start = i + 1;
                continue;
            }
            out.push((sign, text[start..i].trim()));
            sign = if ch == b'-' { -1 } else { 1 };
            start = i + 1;
            expect_term = true;
        } else if !ch.is_ascii_whitespace() {
            expect_term = false;
        }
    }
    let last = text[start..].trim();
    if last.is_empty() {
        return Err(Error::Parse("dangling sign".into()));
    }
    out.push((sign, last));
    if out == [(1, "0")] {
        return Ok(Vec::new());
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub coeff: String,
    pub exponents: Vec<u32>,
}

impl IntPoly {
    /// Residue of every coefficient modulo `q` together with the exponent
    /// vectors, for fast finite-field evaluation.
    pub fn reduce_mod(&self, q: u64) -> Vec<(u64, Vec<u32>)> {
        let qb = BigInt::from(q);
        self.terms
            .iter()
            .filter_map(|(m, c)| {
                let r = c.mod_floor(&qb).to_u64().expect("residue fits");
                (r != 0).then(|| (r, m.0.clone()))
            })
            .collect()
    }

    pub fn to_rational(&self) -> RatPoly {
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), BigRational::from_integer(c.clone())))
                .collect(),
        }
    }
}

impl RatPoly {
    /// Multiply by the least common denominator and return the integer
    /// polynomial together with that multiplier.
    pub fn clear_denominators(&self) -> (IntPoly, BigInt) {
        let lcm = self
            .terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), (c * BigRational::from_integer(lcm.clone())).to_integer()))
            .collect();
        (
            Polynomial {
                nvars: self.nvars,
                terms,
            },
            lcm,
        )
    }
}

impl<C: Coeff> fmt::Display for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c.clone() } else { c.clone() };
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mut parts: Vec<String> = Vec::new();
            let constant = m.degree() == 0;
            if !abs.is_one() || constant {
                parts.push(abs.to_string());
            }
            for (v, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => parts.push(format!("t{}", v + 1)),
                    _ => parts.push(format!("t{}^{e}", v + 1)),
                }
            }
            f.write_str(&parts.join("*"))?;
        }
        Ok(())
    }
}

impl<C: Coeff> Add for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn add(self, rhs: &Polynomial<C>) -> Polynomial<C> {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut p = self.clone();
        for (m, c) in &rhs.terms {
            p.add_term(m.clone(), c.clone());
        }
        p
    }
}

impl<C: Coeff> Sub for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn sub(self, rhs: &Polynomial<C>) -> Polynomial<C> {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut p = self.clone();
        for (m, c) in &rhs.terms {
            p.add_term(m.clone(), -c.clone());
        }
        p
    }
}

impl<C: Coeff> Mul for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn mul(self, rhs: &Polynomial<C>) -> Polynomial<C> {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut p = Polynomial::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                p.add_term(ma.mul(mb), ca.clone() * cb.clone());
            }
        }
        p
    }
}

impl<C: Coeff> Neg for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn neg(self) -> Polynomial<C> {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str, n: usize) -> IntPoly {
        IntPoly::parse(s, n).unwrap()
    }

    #[test]
    fn display_order() {
        let q = p("t2*t3 + t1*t3 + t1*t2", 3);
        assert_eq!(q.to_string(), "t1*t2 + t1*t3 + t2*t3");
        assert_eq!(p("1 - t1^2 + 3*t2", 2).to_string(), "-t1^2 + 3*t2 + 1");
        assert_eq!(p("0", 2).to_string(), "0");
        assert_eq!(p("-2", 1).to_string(), "-2");
    }

    #[test]
    fn parse_errors() {
        assert!(IntPoly::parse("t4", 3).is_err());
        assert!(IntPoly::parse("t1 +", 3).is_err());
        assert!(IntPoly::parse("", 3).is_err());
        assert!(IntPoly::parse("t1**t2", 3).is_err());
        assert_eq!(max_variable_index("t1*t12 + t3"), 12);
    }

    #[test]
    fn rational_coefficients() {
        let r = RatPoly::parse("3/2*t1 + 1/3", 1).unwrap();
        assert_eq!(r.to_string(), "3/2*t1 + 1/3");
        let (i, d) = r.clear_denominators();
        assert_eq!(i.to_string(), "9*t1 + 2");
        assert_eq!(d, BigInt::from(6));
    }

    #[test]
    fn homogeneity() {
        assert_eq!(p("t1 + t1*t2", 2).homogeneity(), Homogeneity::Inhomogeneous);
        assert_eq!(p("t1*t2 + t2^2", 2).homogeneity(), Homogeneity::Degree(2));
        assert_eq!(p("0", 2).homogeneity(), Homogeneity::Zero);
    }

    #[test]
    fn exact_division() {
        let a = p("t1 + t2", 2);
        let b = p("t1 - t2 + 3", 2);
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&a).unwrap(), b);
        assert!(p("t1*t2 + 1", 2).div_exact(&a).is_err());
        assert!(p("2*t1", 2).div_exact(&p("3*t1", 2)).is_err());
    }

    #[test]
    fn term_list_round_trip() {
        let q = p("t1*t2 - 4*t3^2", 3);
        let list = q.to_term_list();
        assert_eq!(list[0].exponents, vec![1, 1, 0]);
        assert_eq!(IntPoly::from_term_list(3, &list).unwrap(), q);
    }

    fn arb_poly() -> impl Strategy<Value = IntPoly> {
        prop::collection::vec((prop::collection::vec(0u32..3, 3), -5i64..6), 0..6).prop_map(|ts| {
            IntPoly::from_terms(3, ts.into_iter().map(|(e, c)| (Monomial(e), BigInt::from(c))))
                .unwrap()
        })
    }

    proptest! {
        #[test]
        fn display_parse_round_trip(a in arb_poly()) {
            prop_assert_eq!(IntPoly::parse(&a.to_string(), 3).unwrap(), a);
        }

        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn division_inverts_multiplication(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!b.is_zero());
            prop_assert_eq!((&a * &b).div_exact(&b).unwrap(), a);
        }

        #[test]
        fn evaluation_is_a_homomorphism(a in arb_poly(), b in arb_poly(), x in prop::collection::vec(-2i32..3, 3)) {
            let x: Vec<f64> = x.into_iter().map(f64::from).collect();
            let lhs = (&a * &b).eval_f64(&x);
            prop_assert!((lhs - a.eval_f64(&x) * b.eval_f64(&x)).abs() < 1e-6);
        }
    }
}
