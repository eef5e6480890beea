//! Truncated Laurent series in z with exact rational coefficients.
//!
//! A series knows every coefficient with exponent below `order`; `None` means
//! it is an exact Laurent polynomial. Arithmetic propagates the smallest
//! order, and reading a coefficient past it is an error.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::ser::{Serialize, SerializeMap, Serializer};

use crate::error::{Error, Result};

pub const DEFAULT_POLAR_DEPTH: u32 = 12;
pub const DEFAULT_ORDER: u32 = 12;

/// Allowed exponent range [−polar_depth, order].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Window {
    pub polar_depth: u32,
    pub order: u32,
}

impl Default for Window {
    fn default() -> Self {
        Window {
            polar_depth: DEFAULT_POLAR_DEPTH,
            order: DEFAULT_ORDER,
        }
    }
}

impl Window {
    pub fn new(polar_depth: u32, order: u32) -> Self {
        Window { polar_depth, order }
    }

    /// Reject poles deeper than the window and cap the precision at z^order.
    pub fn fit(&self, s: LaurentSeries) -> Result<LaurentSeries> {
        if let Some(v) = s.valuation() {
            if v < -(self.polar_depth as i32) {
                return Err(Error::Truncation(format!(
                    "pole of order {} exceeds polar depth {}",
                    -v, self.polar_depth
                )));
            }
        }
        let cap = self.order as i32 + 1;
        if s.is_exact() && s.coeffs.keys().next_back().is_none_or(|&k| k < cap) {
            return Ok(s);
        }
        Ok(s.truncate(cap))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LaurentSeries {
    coeffs: BTreeMap<i32, BigRational>,
    order: Option<i32>,
}

fn min_order(a: Option<i32>, b: Option<i32>) -> Option<i32> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl LaurentSeries {
    pub fn zero() -> Self {
        LaurentSeries::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(c, 0)
    }

    /// c·z^k, exact.
    pub fn monomial(c: BigRational, k: i32) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(k, c);
        }
        LaurentSeries { coeffs, order: None }
    }

    /// Exact series from (exponent, coefficient) pairs; repeated exponents add.
    pub fn from_terms(terms: impl IntoIterator<Item = (i32, BigRational)>) -> Self {
        let mut s = LaurentSeries::zero();
        for (k, c) in terms {
            s.add_term(k, c);
        }
        s
    }

    /// Series with small integer coefficients, handy in tests.
    pub fn from_ints(terms: &[(i32, i64)]) -> Self {
        Self::from_terms(terms.iter().map(|&(k, c)| (k, BigRational::from_integer(c.into()))))
    }

    fn add_term(&mut self, k: i32, c: BigRational) {
        if self.order.is_some_and(|o| k >= o) || c.is_zero() {
            return;
        }
        let e = self.coeffs.entry(k).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&k);
        }
    }

    /// Known up to O(z^order); `None` when exact.
    pub fn order(&self) -> Option<i32> {
        self.order
    }

    pub fn is_exact(&self) -> bool {
        self.order.is_none()
    }

    /// Drop every term with exponent ≥ `order`.
    pub fn truncate(mut self, order: i32) -> Self {
        let order = min_order(self.order, Some(order)).expect("some");
        self.coeffs.retain(|&k, _| k < order);
        self.order = Some(order);
        self
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<i32> {
        self.coeffs.keys().next().copied()
    }

    /// Valuation, or the order for a series with no known terms.
    fn effective_valuation(&self) -> Option<i32> {
        self.valuation().or(self.order)
    }

    /// Coefficient of z^k; errors past the known precision.
    pub fn coeff(&self, k: i32) -> Result<BigRational> {
        if let Some(o) = self.order {
            if k >= o {
                return Err(Error::Truncation(format!("coefficient of z^{k} unknown beyond O(z^{o})")));
            }
        }
        Ok(self.coeffs.get(&k).cloned().unwrap_or_else(BigRational::zero))
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &BigRational)> {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Projection onto the polar part.
    pub fn polar_part(&self) -> Self {
        let coeffs: BTreeMap<_, _> = self.coeffs.range(..0).map(|(k, c)| (*k, c.clone())).collect();
        let order = self.order.filter(|&o| o <= 0);
        LaurentSeries { coeffs, order }
    }

    /// (id − T): terms with exponent ≥ 0.
    pub fn regular_part(&self) -> Self {
        LaurentSeries {
            coeffs: self.coeffs.range(0..).map(|(k, c)| (*k, c.clone())).collect(),
            order: self.order,
        }
    }

    pub fn has_polar_part(&self) -> bool {
        self.coeffs.range(..0).next().is_some()
    }

    pub fn has_regular_part(&self) -> bool {
        self.coeffs.range(0..).next().is_some()
    }

    /// Value at z = 0 of a series without poles.
    pub fn value_at_zero(&self) -> Result<BigRational> {
        if self.has_polar_part() {
            return Err(Error::Unsupported("series has a pole at z = 0".into()));
        }
        self.coeff(0)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return LaurentSeries {
                coeffs: BTreeMap::new(),
                order: None,
            };
        }
        LaurentSeries {
            coeffs: self.coeffs.iter().map(|(k, x)| (*k, x * c)).collect(),
            order: self.order,
        }
    }

    /// Multiply by z^k.
    pub fn shift(&self, k: i32) -> Self {
        LaurentSeries {
            coeffs: self.coeffs.iter().map(|(e, c)| (e + k, c.clone())).collect(),
            order: self.order.map(|o| o + k),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(LaurentSeries::one(), |acc, _| &acc * self)
    }

    /// exp(a·z) to O(z^order).
    pub fn exp_linear(a: &BigRational, order: u32) -> Self {
        let mut s = LaurentSeries::zero();
        let mut term = BigRational::one();
        for k in 0..order as i32 {
            s.add_term(k, term.clone());
            term = term * a / BigRational::from_integer(BigInt::from(k + 1));
        }
        s.truncate(order as i32)
    }

    /// Agreement of all coefficients below z^upto; errors if either side is
    /// not known that far.
    pub fn agrees_to(&self, other: &Self, upto: i32) -> Result<bool> {
        for s in [self, other] {
            if s.order.is_some_and(|o| o < upto) {
                return Err(Error::Truncation(format!(
                    "cannot compare to O(z^{upto}); a series is only known to O(z^{})",
                    s.order.expect("some")
                )));
            }
        }
        let a = self.coeffs.range(..upto);
        let b = other.coeffs.range(..upto);
        Ok(a.eq(b))
    }

    /// Equality on the common known range.
    pub fn agrees(&self, other: &Self) -> bool {
        match min_order(self.order, other.order) {
            None => self.coeffs == other.coeffs,
            Some(o) => self.coeffs.range(..o).eq(other.coeffs.range(..o)),
        }
    }
}

impl Add for &LaurentSeries {
    type Output = LaurentSeries;
    fn add(self, rhs: &LaurentSeries) -> LaurentSeries {
        let order = min_order(self.order, rhs.order);
        let mut out = LaurentSeries {
            coeffs: BTreeMap::new(),
            order,
        };
        for (k, c) in self.coeffs.iter().chain(&rhs.coeffs) {
            out.add_term(*k, c.clone());
        }
        out
    }
}

impl Sub for &LaurentSeries {
    type Output = LaurentSeries;
    fn sub(self, rhs: &LaurentSeries) -> LaurentSeries {
        self + &(-rhs)
    }
}

impl Neg for &LaurentSeries {
    type Output = LaurentSeries;
    fn neg(self) -> LaurentSeries {
        LaurentSeries {
            coeffs: self.coeffs.iter().map(|(k, c)| (*k, -c)).collect(),
            order: self.order,
        }
    }
}

impl Mul for &LaurentSeries {
    type Output = LaurentSeries;
    fn mul(self, rhs: &LaurentSeries) -> LaurentSeries {
        if (self.is_zero() && self.is_exact()) || (rhs.is_zero() && rhs.is_exact()) {
            return LaurentSeries::zero();
        }
        // Unknown terms of one factor meet the lowest known term of the other.
        let order = min_order(
            self.order.map(|o| o + rhs.effective_valuation().unwrap_or(0)),
            rhs.order.map(|o| o + self.effective_valuation().unwrap_or(0)),
        );
        let mut out = LaurentSeries {
            coeffs: BTreeMap::new(),
            order,
        };
        for (a, x) in &self.coeffs {
            for (b, y) in &rhs.coeffs {
                out.add_term(a + b, x * y);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentSeries {
            type Output = LaurentSeries;
            fn $m(self, rhs: LaurentSeries) -> LaurentSeries {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

fn fmt_rational(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for LaurentSeries {
    /// Lowest exponent first: "3*z^-2 + 1 + z + O(z^12)".
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in &self.coeffs {
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let mono = match k {
                0 => String::new(),
                1 => "z".to_string(),
                k => format!("z^{k}"),
            };
            match (a.is_one(), mono.is_empty()) {
                (true, true) => write!(f, "1")?,
                (true, false) => write!(f, "{mono}")?,
                (false, true) => write!(f, "{}", fmt_rational(&a))?,
                (false, false) => write!(f, "{}*{mono}", fmt_rational(&a))?,
            }
        }
        if let Some(o) = self.order {
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "O(z^{o})")?;
        } else if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Serialize for LaurentSeries {
    /// {"order": n|null, "coeffs": {"-2": "3", "0": "1/2"}}
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        struct Coeffs<'a>(&'a BTreeMap<i32, BigRational>);
        impl Serialize for Coeffs<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                let mut m = s.serialize_map(Some(self.0.len()))?;
                for (k, c) in self.0 {
                    m.serialize_entry(&k.to_string(), &fmt_rational(c))?;
                }
                m.end()
            }
        }
        let mut m = s.serialize_map(Some(2))?;
        m.serialize_entry("order", &self.order)?;
        m.serialize_entry("coeffs", &Coeffs(&self.coeffs))?;
        m.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn projection_examples() {
        let s = LaurentSeries::from_ints(&[(-2, 3), (0, 1), (1, 1)]);
        assert_eq!(s.polar_part(), LaurentSeries::from_ints(&[(-2, 3)]));
        assert!(LaurentSeries::from_ints(&[(0, 4), (3, 1)]).polar_part().is_zero());
        assert_eq!(&s.polar_part() + &s.regular_part(), s);
    }

    #[test]
    fn truncation_is_tracked() {
        let a = LaurentSeries::from_ints(&[(-1, 1), (0, 2)]).truncate(2);
        let b = LaurentSeries::from_ints(&[(-1, 1)]);
        let p = &a * &b;
        assert_eq!(p.order(), Some(1));
        assert_eq!(p.coeff(-2).unwrap(), r(1, 1));
        assert!(p.coeff(1).is_err());
        assert!(a.agrees_to(&b, 5).is_err());
        assert!(!a.agrees_to(&b, 1).unwrap());
    }

    #[test]
    fn window_rejects_deep_poles() {
        let w = Window::new(2, 4);
        assert!(w.fit(LaurentSeries::from_ints(&[(-3, 1)])).is_err());
        let s = w.fit(LaurentSeries::from_ints(&[(-2, 1), (7, 1)])).unwrap();
        assert_eq!(s.order(), Some(5));
        assert_eq!(s.to_string(), "z^-2 + O(z^5)");
    }

    #[test]
    fn exp_series() {
        let e = LaurentSeries::exp_linear(&r(2, 1), 4);
        assert_eq!(e.to_string(), "1 + 2*z + 2*z^2 + 4/3*z^3 + O(z^4)");
        let back = &e * &LaurentSeries::exp_linear(&r(-2, 1), 4);
        assert!(back.agrees_to(&LaurentSeries::one(), 4).unwrap());
    }

    #[test]
    fn display_and_json() {
        let s = LaurentSeries::from_terms([(-1, r(-1, 2)), (0, r(1, 1))]);
        assert_eq!(s.to_string(), "-1/2*z^-1 + 1");
        assert_eq!(LaurentSeries::zero().to_string(), "0");
        let j = serde_json::to_string(&s).unwrap();
        assert_eq!(j, r#"{"order":null,"coeffs":{"-1":"-1/2","0":"1"}}"#);
    }

    fn series() -> impl Strategy<Value = LaurentSeries> {
        (proptest::collection::vec((-4i32..4, -9i64..10, 1i64..5), 0..6), proptest::option::of(1i32..6)).prop_map(
            |(terms, order)| {
                let s = LaurentSeries::from_terms(terms.into_iter().map(|(k, n, d)| (k, r(n, d))));
                match order {
                    Some(o) => s.truncate(o),
                    None => s,
                }
            },
        )
    }

    proptest! {
        #[test]
        fn rota_baxter_weight_minus_one(x in series(), y in series()) {
            let t = |s: &LaurentSeries| s.polar_part();
            let lhs = &(&t(&x) * &t(&y)) + &t(&(&x * &y));
            let rhs = &t(&(&x * &t(&y))) + &t(&(&t(&x) * &y));
            prop_assert!(lhs.agrees(&rhs));
        }

        #[test]
        fn multiplication_commutes_and_distributes(x in series(), y in series(), w in series()) {
            prop_assert!((&x * &y).agrees(&(&y * &x)));
            let l = &x * &(&y + &w);
            let r = &(&x * &y) + &(&x * &w);
            prop_assert!(l.agrees(&r));
        }
    }
}
