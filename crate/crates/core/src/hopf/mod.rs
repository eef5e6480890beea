//! Connected graded Hopf algebras, characters into Laurent series and their
//! Birkhoff factorization.
//!
//! The algorithms here only need a basis with a product, a coproduct and a
//! grading, so the same code serves graphs and words.

pub mod bphz;
pub mod character;
pub mod graphs;
pub mod shuffle;

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::Result;
use crate::series::{LaurentSeries, Window};

pub use bphz::{bphz, BphzResult};
pub use character::{GraphCharacter, ToyCharacter};
pub use graphs::{GraphHopf, GraphMonomial, Grading};
pub use shuffle::{ShuffleHopf, Word};

/// Finite integer linear combination of basis elements.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Lin<B: Ord>(BTreeMap<B, BigInt>);

impl<B: Ord + Clone> Lin<B> {
    pub fn zero() -> Self {
        Lin(BTreeMap::new())
    }

    pub fn basis(b: B) -> Self {
        let mut l = Lin::zero();
        l.add_term(b, BigInt::one());
        l
    }

    pub fn add_term(&mut self, b: B, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let e = self.0.entry(b.clone()).or_insert_with(BigInt::zero);
        *e += c;
        if e.is_zero() {
            self.0.remove(&b);
        }
    }

    pub fn add_assign(&mut self, other: &Lin<B>, scale: &BigInt) {
        for (b, c) in &other.0 {
            self.add_term(b.clone(), c * scale);
        }
    }

    pub fn coeff(&self, b: &B) -> BigInt {
        self.0.get(b).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&B, &BigInt)> {
        self.0.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn map_basis<C: Ord + Clone>(&self, f: impl Fn(&B) -> C) -> Lin<C> {
        let mut out = Lin::zero();
        for (b, c) in &self.0 {
            out.add_term(f(b), c.clone());
        }
        out
    }
}

impl<B: Ord + Clone + fmt::Display> fmt::Display for Lin<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        for (i, (b, c)) in self.0.iter().enumerate() {
            let neg = c < &BigInt::zero();
            if i > 0 {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            } else if neg {
                write!(f, "-")?;
            }
            let a = if neg { -c } else { c.clone() };
            if a.is_one() {
                write!(f, "{b}")?;
            } else {
                write!(f, "{a}*{b}")?;
            }
        }
        Ok(())
    }
}

/// A connected graded Hopf algebra presented on a basis containing the unit.
pub trait ConnectedHopf {
    type Basis: Clone + Ord + fmt::Debug;

    fn unit(&self) -> Self::Basis;

    fn degree(&self, b: &Self::Basis) -> usize;

    fn product(&self, a: &Self::Basis, b: &Self::Basis) -> Result<Lin<Self::Basis>>;

    /// Full coproduct, including b⊗1 and 1⊗b.
    fn coproduct(&self, b: &Self::Basis) -> Result<Lin<(Self::Basis, Self::Basis)>>;

    fn is_unit(&self, b: &Self::Basis) -> bool {
        *b == self.unit()
    }

    /// Coproduct without the two primitive terms.
    fn reduced_coproduct(&self, b: &Self::Basis) -> Result<Lin<(Self::Basis, Self::Basis)>> {
        let full = self.coproduct(b)?;
        let mut out = Lin::zero();
        for ((l, r), c) in full.iter() {
            if !self.is_unit(l) && !self.is_unit(r) {
                out.add_term((l.clone(), r.clone()), c.clone());
            }
        }
        Ok(out)
    }

    fn counit(&self, x: &Lin<Self::Basis>) -> BigInt {
        x.coeff(&self.unit())
    }
}

pub type Tensor<B> = Lin<(B, B)>;

pub fn multiply<H: ConnectedHopf>(h: &H, x: &Lin<H::Basis>, y: &Lin<H::Basis>) -> Result<Lin<H::Basis>> {
    let mut out = Lin::zero();
    for (a, ca) in x.iter() {
        for (b, cb) in y.iter() {
            out.add_assign(&h.product(a, b)?, &(ca * cb));
        }
    }
    Ok(out)
}

pub fn coproduct<H: ConnectedHopf>(h: &H, x: &Lin<H::Basis>) -> Result<Tensor<H::Basis>> {
    let mut out = Lin::zero();
    for (b, c) in x.iter() {
        out.add_assign(&h.coproduct(b)?, c);
    }
    Ok(out)
}

/// (Δ⊗id)Δ(b) and (id⊗Δ)Δ(b).
pub fn coassociativity_sides<H: ConnectedHopf>(
    h: &H,
    b: &H::Basis,
) -> Result<(Lin<(H::Basis, H::Basis, H::Basis)>, Lin<(H::Basis, H::Basis, H::Basis)>)> {
    let d = h.coproduct(b)?;
    let mut left = Lin::zero();
    let mut right = Lin::zero();
    for ((x, y), c) in d.iter() {
        for ((x1, x2), c1) in h.coproduct(x)?.iter() {
            left.add_term((x1.clone(), x2.clone(), y.clone()), c * c1);
        }
        for ((y1, y2), c2) in h.coproduct(y)?.iter() {
            right.add_term((x.clone(), y1.clone(), y2.clone()), c * c2);
        }
    }
    Ok((left, right))
}

/// Antipode with a memo table over basis elements.
pub struct Antipode<'a, H: ConnectedHopf> {
    hopf: &'a H,
    memo: RefCell<BTreeMap<H::Basis, Lin<H::Basis>>>,
}

impl<'a, H: ConnectedHopf> Antipode<'a, H> {
    pub fn new(hopf: &'a H) -> Self {
        Antipode {
            hopf,
            memo: RefCell::new(BTreeMap::new()),
        }
    }

    /// S(1) = 1, S(b) = −b − Σ S(b′)·b″ over the reduced coproduct.
    pub fn basis(&self, b: &H::Basis) -> Result<Lin<H::Basis>> {
        if let Some(s) = self.memo.borrow().get(b) {
            return Ok(s.clone());
        }
        let h = self.hopf;
        let out = if h.is_unit(b) {
            Lin::basis(b.clone())
        } else {
            let mut acc = Lin::zero();
            acc.add_term(b.clone(), -BigInt::one());
            for ((l, r), c) in h.reduced_coproduct(b)?.iter() {
                let sl = self.basis(l)?;
                let prod = multiply(h, &sl, &Lin::basis(r.clone()))?;
                acc.add_assign(&prod, &-c);
            }
            acc
        };
        self.memo.borrow_mut().insert(b.clone(), out.clone());
        Ok(out)
    }

    pub fn apply(&self, x: &Lin<H::Basis>) -> Result<Lin<H::Basis>> {
        let mut out = Lin::zero();
        for (b, c) in x.iter() {
            out.add_assign(&self.basis(b)?, c);
        }
        Ok(out)
    }
}

/// m(S⊗id)Δ(x) and m(id⊗S)Δ(x); both equal ε(x)·1 in a Hopf algebra.
pub fn antipode_sides<H: ConnectedHopf>(h: &H, x: &Lin<H::Basis>) -> Result<(Lin<H::Basis>, Lin<H::Basis>)> {
    let s = Antipode::new(h);
    let mut left = Lin::zero();
    let mut right = Lin::zero();
    for ((a, b), c) in coproduct(h, x)?.iter() {
        left.add_assign(&multiply(h, &s.basis(a)?, &Lin::basis(b.clone()))?, c);
        right.add_assign(&multiply(h, &Lin::basis(a.clone()), &s.basis(b)?)?, c);
    }
    Ok((left, right))
}

/// A linear map from the Hopf algebra to Laurent series, given on basis
/// elements. Characters are the multiplicative ones.
pub trait SeriesMap<B> {
    fn eval(&self, b: &B) -> Result<LaurentSeries>;
}

impl<B, F: Fn(&B) -> Result<LaurentSeries>> SeriesMap<B> for F {
    fn eval(&self, b: &B) -> Result<LaurentSeries> {
        self(b)
    }
}

pub fn eval_lin<B: Ord + Clone, M: SeriesMap<B> + ?Sized>(m: &M, x: &Lin<B>) -> Result<LaurentSeries> {
    let mut acc = LaurentSeries::zero();
    for (b, c) in x.iter() {
        acc = &acc + &m.eval(b)?.scale(&BigRational::from_integer(c.clone()));
    }
    Ok(acc)
}

/// The convolution unit u∘ε.
pub fn counit_map<H: ConnectedHopf>(h: &H) -> impl Fn(&H::Basis) -> Result<LaurentSeries> + '_ {
    move |b| {
        Ok(if h.is_unit(b) {
            LaurentSeries::one()
        } else {
            LaurentSeries::zero()
        })
    }
}

/// (φ⋆ψ)(x) = Σ φ(x₍₁₎)ψ(x₍₂₎) over the full coproduct.
pub fn convolution<H, F, G>(h: &H, phi: &F, psi: &G, x: &Lin<H::Basis>) -> Result<LaurentSeries>
where
    H: ConnectedHopf,
    F: SeriesMap<H::Basis> + ?Sized,
    G: SeriesMap<H::Basis> + ?Sized,
{
    let mut acc = LaurentSeries::zero();
    for ((a, b), c) in coproduct(h, x)?.iter() {
        let term = &phi.eval(a)? * &psi.eval(b)?;
        acc = &acc + &term.scale(&BigRational::from_integer(c.clone()));
    }
    Ok(acc)
}

/// φ = φ₋^{⋆−1} ⋆ φ₊ computed by the recursion
/// φ̄(x) = φ(x) + Σ φ₋(x′)φ(x″), φ₋ = −T(φ̄), φ₊ = (id − T)(φ̄).
pub struct Birkhoff<'a, H: ConnectedHopf, C: SeriesMap<H::Basis> + ?Sized> {
    hopf: &'a H,
    phi: &'a C,
    window: Window,
    memo: RefCell<BTreeMap<H::Basis, (LaurentSeries, LaurentSeries)>>,
}

impl<'a, H: ConnectedHopf, C: SeriesMap<H::Basis> + ?Sized> Birkhoff<'a, H, C> {
    pub fn new(hopf: &'a H, phi: &'a C, window: Window) -> Self {
        Birkhoff {
            hopf,
            phi,
            window,
            memo: RefCell::new(BTreeMap::new()),
        }
    }

    /// (prepared φ̄(b), φ₋(b)).
    fn solve(&self, b: &H::Basis) -> Result<(LaurentSeries, LaurentSeries)> {
        if let Some(v) = self.memo.borrow().get(b) {
            return Ok(v.clone());
        }
        let h = self.hopf;
        let out = if h.is_unit(b) {
            (LaurentSeries::one(), LaurentSeries::one())
        } else {
            let mut bar = self.window.fit(self.phi.eval(b)?)?;
            for ((l, r), c) in h.reduced_coproduct(b)?.iter() {
                let (_, minus) = self.solve(l)?;
                let term = &minus * &self.phi.eval(r)?;
                bar = &bar + &term.scale(&BigRational::from_integer(c.clone()));
            }
            let bar = self.window.fit(bar)?;
            let minus = -&bar.polar_part();
            (bar, minus)
        };
        self.memo.borrow_mut().insert(b.clone(), out.clone());
        Ok(out)
    }

    /// φ̄(b): φ(b) with the counterterms of all subobjects added.
    pub fn prepared(&self, b: &H::Basis) -> Result<LaurentSeries> {
        Ok(self.solve(b)?.0)
    }

    pub fn minus(&self, b: &H::Basis) -> Result<LaurentSeries> {
        Ok(self.solve(b)?.1)
    }

    pub fn plus(&self, b: &H::Basis) -> Result<LaurentSeries> {
        let (bar, _) = self.solve(b)?;
        Ok(if self.hopf.is_unit(b) {
            bar
        } else {
            bar.regular_part()
        })
    }

    pub fn minus_lin(&self, x: &Lin<H::Basis>) -> Result<LaurentSeries> {
        eval_lin(&|b: &H::Basis| self.minus(b), x)
    }

    pub fn plus_lin(&self, x: &Lin<H::Basis>) -> Result<LaurentSeries> {
        eval_lin(&|b: &H::Basis| self.plus(b), x)
    }

    /// φ₋^{⋆−1} = φ₋∘S.
    pub fn minus_inverse(&self, b: &H::Basis) -> Result<LaurentSeries> {
        let s = Antipode::new(self.hopf).basis(b)?;
        self.minus_lin(&s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::graph::Theory;

    #[test]
    fn lin_cancels() {
        let mut l = Lin::basis(3u32);
        l.add_term(3, BigInt::from(-1));
        assert!(l.is_zero());
        l.add_term(1, BigInt::from(2));
        l.add_term(2, BigInt::from(-1));
        assert_eq!(l.to_string(), "2*1 - 2");
    }

    #[test]
    fn primitive_split() {
        let h = GraphHopf::new(Theory::phi4());
        let x = GraphMonomial::generator(h.generator(&fixtures::phi4_bubble()).unwrap());
        let phi = |b: &GraphMonomial| {
            Ok(if b.is_unit() {
                LaurentSeries::one()
            } else {
                LaurentSeries::from_ints(&[(-1, 5), (0, 7)])
            })
        };
        let bk = Birkhoff::new(&h, &phi, Window::default());
        assert_eq!(bk.minus(&x).unwrap(), LaurentSeries::from_ints(&[(-1, -5)]));
        assert_eq!(bk.plus(&x).unwrap(), LaurentSeries::from_ints(&[(0, 7)]));
        let regular = |b: &GraphMonomial| {
            Ok(if b.is_unit() {
                LaurentSeries::one()
            } else {
                LaurentSeries::from_ints(&[(0, 2), (1, 1)])
            })
        };
        let bk = Birkhoff::new(&h, &regular, Window::default());
        assert!(bk.minus(&x).unwrap().is_zero());
        assert_eq!(bk.plus(&x).unwrap(), regular(&x).unwrap());
    }

    #[test]
    fn nested_double_bubble() {
        let h = GraphHopf::new(Theory::phi4());
        let x = GraphMonomial::generator(h.generator(&fixtures::double_bubble()).unwrap());
        let phi = GraphCharacter::new("nested:c=1".parse().unwrap(), Window::default());
        let bk = Birkhoff::new(&h, &phi, Window::default());
        assert_eq!(bk.minus(&x).unwrap().to_string(), "1/2*z^-2");
        assert!(bk.plus(&x).unwrap().is_zero());
    }

    #[test]
    fn factorization_reconstructs_and_matches_bphz() {
        let th = Theory::phi4();
        let h = GraphHopf::new(th.clone());
        for spec in ["nested:c=2", "scaled:c=1,logmu=1/3", "seeded:seed=5"] {
            let phi = GraphCharacter::new(spec.parse().unwrap(), Window::default());
            let bk = Birkhoff::new(&h, &phi, Window::default());
            for (name, g) in fixtures::hopf_corpus(&th) {
                let x = Lin::basis(GraphMonomial::generator(h.generator(&g).unwrap()));
                let minus_inv = |b: &GraphMonomial| bk.minus_inverse(b);
                let plus = |b: &GraphMonomial| bk.plus(b);
                let rebuilt = convolution(&h, &minus_inv, &plus, &x).unwrap();
                assert!(rebuilt.agrees(&eval_lin(&phi, &x).unwrap()), "{spec} {name}");
                let direct = bphz(&th, &phi, &g).unwrap();
                assert_eq!(direct.renormalized, bk.plus_lin(&x).unwrap(), "{spec} {name}");
                assert_eq!(direct.counterterm, bk.minus_lin(&x).unwrap(), "{spec} {name}");
            }
        }
    }
}
