//! Laurent polynomials in the Lefschetz class 𝕃.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};

use crate::error::{Error, Result};

/// Element of ℤ[𝕃, 𝕃⁻¹]; results handed to callers are normally honest
/// polynomials, negative powers only appear in intermediate steps.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ClassPoly {
    coeffs: BTreeMap<i32, BigInt>,
}

impl ClassPoly {
    pub fn zero() -> Self {
        ClassPoly::default()
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    /// c·𝕃^k
    pub fn monomial(c: impl Into<BigInt>, k: i32) -> Self {
        let mut p = ClassPoly::zero();
        p.add_term(k, c.into());
        p
    }

    /// 𝕃
    pub fn lefschetz() -> Self {
        Self::monomial(1, 1)
    }

    /// 𝕋 = 𝕃 − 1, the class of the multiplicative group.
    pub fn torus() -> Self {
        &Self::lefschetz() - &Self::one()
    }

    /// [ℙ^k] = 1 + 𝕃 + … + 𝕃^k, and 0 for k < 0.
    pub fn projective_space(k: i32) -> Self {
        let mut p = ClassPoly::zero();
        for i in 0..=k {
            p.add_term(i, BigInt::one());
        }
        p
    }

    pub fn from_coeffs(coeffs: impl IntoIterator<Item = (i32, BigInt)>) -> Self {
        let mut p = ClassPoly::zero();
        for (k, c) in coeffs {
            p.add_term(k, c);
        }
        p
    }

    fn add_term(&mut self, k: i32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let e = self.coeffs.entry(k).or_insert_with(BigInt::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&k);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, k: i32) -> BigInt {
        self.coeffs.get(&k).cloned().unwrap_or_default()
    }

    /// (exponent, coefficient) in increasing exponent.
    pub fn terms(&self) -> impl Iterator<Item = (i32, &BigInt)> {
        self.coeffs.iter().map(|(&k, c)| (k, c))
    }

    pub fn degree(&self) -> Option<i32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn min_exponent(&self) -> Option<i32> {
        self.coeffs.keys().next().copied()
    }

    pub fn is_polynomial(&self) -> bool {
        self.min_exponent().is_none_or(|k| k >= 0)
    }

    /// Error unless there are no negative powers of 𝕃.
    pub fn require_polynomial(self) -> Result<Self> {
        if self.is_polynomial() {
            Ok(self)
        } else {
            Err(Error::Internal(format!("class {self} has negative powers of L")))
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| &acc * self)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|(&k, a)| (k, a * c)))
    }

    /// Multiply by 𝕃^k.
    pub fn shift(&self, k: i32) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|(&e, c)| (e + k, c.clone())))
    }

    /// Value at 𝕃 = x (exact; negative powers give rationals).
    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .map(|(&k, c)| BigRational::from_integer(c.clone()) * Pow::pow(x, k))
            .sum()
    }

    /// Value at 𝕃 = q for an honest polynomial.
    pub fn eval(&self, q: &BigInt) -> Result<BigInt> {
        if !self.is_polynomial() {
            return Err(Error::Internal(format!("cannot evaluate Laurent class {self} in Z")));
        }
        Ok(self
            .coeffs
            .iter()
            .map(|(&k, c)| c * Pow::pow(q, k as u32))
            .sum())
    }

    pub fn eval_u64(&self, q: u64) -> Result<BigInt> {
        self.eval(&BigInt::from(q))
    }

    /// Value at 𝕃 = 1, the Euler characteristic of a Tate class.
    pub fn euler_characteristic(&self) -> BigInt {
        self.coeffs.values().sum()
    }

    /// Exact quotient in ℤ[𝕃, 𝕃⁻¹]; fails if a nonzero remainder is left.
    pub fn div_exact(&self, d: &ClassPoly) -> Result<ClassPoly> {
        let (Some(dlo), Some(dhi)) = (d.min_exponent(), d.degree()) else {
            return Err(Error::InexactDivision("division by zero class".into()));
        };
        let Some(lo) = self.min_exponent() else {
            return Ok(ClassPoly::zero());
        };
        // Long division from the top with both sides shifted to start at 𝕃^0.
        let mut rem = self.shift(-lo);
        let den = d.shift(-dlo);
        let lead = den.coeff(dhi - dlo);
        let dd = dhi - dlo;
        let mut quot = ClassPoly::zero();
        while let Some(top) = rem.degree() {
            if top < dd {
                return Err(Error::InexactDivision(format!("{self} / {d} leaves remainder {rem}")));
            }
            let (qc, r) = rem.coeff(top).div_rem(&lead);
            if !r.is_zero() {
                return Err(Error::InexactDivision(format!(
                    "{self} / {d}: coefficient not divisible"
                )));
            }
            let step = ClassPoly::monomial(qc, top - dd);
            rem = &rem - &(&step * &den);
            quot = &quot + &step;
        }
        Ok(quot.shift(lo - dlo))
    }
}

impl fmt::Display for ClassPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        for (i, (&k, c)) in self.coeffs.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if neg {
                f.write_str("-")?;
            } else if i > 0 {
                f.write_str("+")?;
            }
            let unit = abs.is_one();
            match k {
                0 => write!(f, "{abs}")?,
                1 if unit => f.write_str("L")?,
                1 => write!(f, "{abs}*L")?,
                _ if unit => write!(f, "L^{k}")?,
                _ => write!(f, "{abs}*L^{k}")?,
            }
        }
        Ok(())
    }
}

impl Add for &ClassPoly {
    type Output = ClassPoly;
    fn add(self, rhs: &ClassPoly) -> ClassPoly {
        let mut p = self.clone();
        for (&k, c) in &rhs.coeffs {
            p.add_term(k, c.clone());
        }
        p
    }
}

impl Sub for &ClassPoly {
    type Output = ClassPoly;
    fn sub(self, rhs: &ClassPoly) -> ClassPoly {
        let mut p = self.clone();
        for (&k, c) in &rhs.coeffs {
            p.add_term(k, -c.clone());
        }
        p
    }
}

impl Mul for &ClassPoly {
    type Output = ClassPoly;
    fn mul(self, rhs: &ClassPoly) -> ClassPoly {
        let mut p = ClassPoly::zero();
        for (&a, ca) in &self.coeffs {
            for (&b, cb) in &rhs.coeffs {
                p.add_term(a + b, ca * cb);
            }
        }
        p
    }
}

impl Neg for &ClassPoly {
    type Output = ClassPoly;
    fn neg(self) -> ClassPoly {
        ClassPoly::from_coeffs(self.coeffs.iter().map(|(&k, c)| (k, -c.clone())))
    }
}

fn minus_one_pow(n: i64) -> BigInt {
    if n.rem_euclid(2) == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// [X_{Γn}] = (𝕃ⁿ−1)/(𝕃−1) − ((𝕃−1)ⁿ − (−1)ⁿ)/𝕃 − n(𝕃−1)^{n−2} for the
/// banana graph with n parallel edges.
pub fn banana_class(n: u32) -> Result<ClassPoly> {
    if n < 2 {
        return Err(Error::InvalidGraph(format!("banana graph needs n >= 2, got {n}")));
    }
    let l = ClassPoly::lefschetz();
    let t = ClassPoly::torus();
    let proj = (&l.pow(n) - &ClassPoly::one()).div_exact(&t)?;
    let middle = (&t.pow(n) - &ClassPoly::constant(minus_one_pow(n.into()))).div_exact(&l)?;
    let last = t.pow(n - 2).scale(&BigInt::from(n));
    (&(&proj - &middle) - &last).require_polynomial()
}

/// [X̂] = (𝕃 − 1)[X] + 1 for the affine cone over a projective class.
pub fn affine_cone_class(projective: &ClassPoly) -> ClassPoly {
    &(&ClassPoly::torus() * projective) + &ClassPoly::one()
}

/// Classes of the pieces used in the banana derivation: the coordinate
/// simplex Σ_n ⊂ ℙ^{n−1}, its singular locus S_n, and the complement of Σ_n
/// in the hyperplane t1+…+tn = 0.
pub mod simplex {
    use super::*;

    /// [Σ_n] = [ℙ^{n−1}] − 𝕋^{n−1}
    pub fn sigma(n: u32) -> ClassPoly {
        &ClassPoly::projective_space(n as i32 - 1) - &ClassPoly::torus().pow(n - 1)
    }

    /// [S_n] = [Σ_n] − n𝕋^{n−2}
    pub fn singular_locus(n: u32) -> ClassPoly {
        &sigma(n) - &ClassPoly::torus().pow(n - 2).scale(&BigInt::from(n))
    }

    /// [L ∖ Σ_n] = (𝕋^{n−1} − (−1)^{n−1})/𝕃
    pub fn hyperplane_complement(n: u32) -> Result<ClassPoly> {
        (&ClassPoly::torus().pow(n - 1) - &ClassPoly::constant(minus_one_pow(i64::from(n) - 1)))
            .div_exact(&ClassPoly::lefschetz())
    }
}
