//! Counterterms as time-ordered exponentials in the free graded Lie algebra
//! with one generator per degree, represented by words in its enveloping
//! algebra.
//!
//! Sign convention: [`gamma_minus`] stores d_n(β) with γ₋ = 1 + Σ d_n/zⁿ.
//! The characters built from β in [`beta_to_character`] use the frame
//! exp(−(1/z)∫…), i.e. d_n(−β), whose 1/z term is −d₁. Under the
//! deconcatenation coproduct the convolution φ₋^{⋆−1}⋆φ₊ reads words in the
//! opposite time order, so those characters carry the coefficient of the
//! reversed word; with the forward order φ₋ would depend on μ.

use std::collections::BTreeMap;
use std::num::NonZeroUsize;

use gauss_quad::GaussLegendre;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hopf::shuffle::shuffle;
use crate::hopf::{Birkhoff, ShuffleHopf, Word};
use crate::series::{LaurentSeries, Window};

/// Π_j 1/(k1+…+kj): the integral of Π e^{−s_j k_j} over s1 ≥ … ≥ sn ≥ 0.
pub fn iterated_integral_coeff(word: &Word) -> BigRational {
    let mut partial = 0i64;
    let mut den = BigInt::one();
    for &k in &word.0 {
        partial += i64::from(k);
        den *= partial;
    }
    BigRational::new(BigInt::one(), den)
}

/// Numerical value of the same iterated integral by nested Gauss–Legendre
/// quadrature in the original variables; s1 ∈ [0, ∞) is mapped from [0, 1).
pub fn iterated_integral_quadrature(word: &Word, nodes: usize) -> Result<f64> {
    if word.is_empty() {
        return Ok(1.0);
    }
    if word.len() > 4 {
        return Err(Error::budget(word.len(), 4, "quadrature is meant for short words"));
    }
    let gl = GaussLegendre::new(NonZeroUsize::new(nodes.max(2)).expect("nonzero"));
    let ks: Vec<f64> = word.0.iter().map(|&k| f64::from(k)).collect();
    // Inner integrals over s_{j+1} ∈ [0, s_j].
    fn inner(gl: &GaussLegendre, ks: &[f64], upper: f64) -> f64 {
        match ks.split_first() {
            None => 1.0,
            Some((&k, rest)) => gl.integrate(0.0, upper, |s| (-k * s).exp() * inner(gl, rest, s)),
        }
    }
    let (&k1, rest) = ks.split_first().expect("nonempty");
    // Panels in y concentrate nodes where the mapped integrand lives.
    let edges = [0.0, 0.1, 0.25, 0.45, 0.65, 0.8, 0.9, 0.97, 1.0];
    let mut total = 0.0;
    for w in edges.windows(2) {
        total += gl.integrate(w[0], w[1], |y| {
            if y >= 1.0 {
                return 0.0;
            }
            let s = y / (1.0 - y);
            (-k1 * s).exp() * inner(&gl, rest, s) / ((1.0 - y) * (1.0 - y))
        });
    }
    Ok(total)
}

/// Rational weights β_k for k = 1..=N.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BetaElement {
    #[serde(serialize_with = "ser_rationals")]
    pub components: Vec<BigRational>,
}

fn ser_rationals<S: serde::Serializer>(v: &[BigRational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(fmt_rational))
}

pub fn fmt_rational(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl BetaElement {
    pub fn new(components: Vec<BigRational>) -> Self {
        BetaElement { components }
    }

    pub fn from_ints(v: &[i64]) -> Self {
        BetaElement::new(v.iter().map(|&x| BigRational::from_integer(x.into())).collect())
    }

    /// β_k = 1 for every k ≤ n.
    pub fn all_ones(n: usize) -> Self {
        BetaElement::new(vec![BigRational::one(); n])
    }

    pub fn component(&self, k: u32) -> BigRational {
        self.components
            .get(k as usize - 1)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Zero::is_zero)
    }

    pub fn negated(&self) -> Self {
        BetaElement::new(self.components.iter().map(|c| -c).collect())
    }

    /// Π β_{k_j} for a word.
    pub fn weight_of(&self, w: &Word) -> BigRational {
        w.0.iter().fold(BigRational::one(), |acc, &k| acc * self.component(k))
    }
}

/// Word coefficients up to a weight bound; the word (k1…kn) stands for
/// β_{k1}⋯β_{kn}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieSeries {
    pub truncation: u32,
    pub coeffs: BTreeMap<Word, BigRational>,
}

impl LieSeries {
    pub fn coeff(&self, w: &Word) -> Result<BigRational> {
        if w.weight() > self.truncation {
            return Err(Error::Truncation(format!(
                "word {w} has weight above the truncation {}",
                self.truncation
            )));
        }
        Ok(self.coeffs.get(w).cloned().unwrap_or_else(BigRational::zero))
    }

    /// The words of length n, i.e. the coefficient d_n of z^{−n}.
    pub fn d(&self, n: usize) -> BTreeMap<Word, BigRational> {
        self.coeffs
            .iter()
            .filter(|(w, _)| w.len() == n)
            .map(|(w, c)| (w.clone(), c.clone()))
            .collect()
    }

    /// χ(u ш v) = χ(u)χ(v) whenever the weights fit the truncation.
    pub fn is_group_like(&self) -> Result<bool> {
        let words: Vec<Word> = std::iter::once(Word::empty())
            .chain(Word::up_to_weight(self.truncation))
            .collect();
        for u in &words {
            for v in &words {
                if u.weight() + v.weight() > self.truncation {
                    continue;
                }
                let mut lhs = BigRational::zero();
                for (w, c) in shuffle(u, v).iter() {
                    lhs += self.coeff(w)? * BigRational::from_integer(c.clone());
                }
                if lhs != self.coeff(u)? * self.coeff(v)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Serializable table word → "num/den".
    pub fn table(&self) -> BTreeMap<String, String> {
        self.coeffs
            .iter()
            .map(|(w, c)| (w.to_string(), fmt_rational(c)))
            .collect()
    }
}

/// γ₋ = 1 + Σ_n d_n(β)/zⁿ with d_n = Σ_{|w|=n} Π β_{k_j} · Π 1/(partial sums).
pub fn gamma_minus(beta: &BetaElement, truncation: u32) -> Result<LieSeries> {
    if truncation == 0 {
        return Err(Error::Dimension("truncation must be at least 1".into()));
    }
    let mut coeffs = BTreeMap::new();
    coeffs.insert(Word::empty(), BigRational::one());
    for w in Word::up_to_weight(truncation) {
        let c = beta.weight_of(&w) * iterated_integral_coeff(&w);
        if !c.is_zero() {
            coeffs.insert(w, c);
        }
    }
    Ok(LieSeries { truncation, coeffs })
}

/// One coefficient of γ_U(z, v): c · v^{v_power} / z^{z_power}.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FrameEntry {
    #[serde(serialize_with = "ser_word")]
    pub word: Word,
    pub v_power: u32,
    pub z_power: usize,
    #[serde(serialize_with = "ser_rational")]
    pub coeff: BigRational,
}

fn ser_word<S: serde::Serializer>(w: &Word, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(w.0.iter())
}

fn ser_rational<S: serde::Serializer>(c: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(&fmt_rational(c))
}

/// Coefficients of the universal singular frame on every word of weight ≤ N.
pub fn universal_singular_frame(truncation: u32) -> Result<Vec<FrameEntry>> {
    if truncation == 0 {
        return Err(Error::Dimension("truncation must be at least 1".into()));
    }
    Ok(Word::up_to_weight(truncation)
        .into_iter()
        .map(|w| FrameEntry {
            v_power: w.weight(),
            z_power: w.len(),
            coeff: iterated_integral_coeff(&w),
            word: w,
        })
        .collect())
}

/// The frame at a rational v, as a word series with coefficients of z^{−n}.
pub fn universal_frame_at(truncation: u32, v: &BigRational) -> Result<LieSeries> {
    let mut coeffs = BTreeMap::new();
    coeffs.insert(Word::empty(), BigRational::one());
    for e in universal_singular_frame(truncation)? {
        let c = &e.coeff * v.pow(e.v_power as i32);
        if !c.is_zero() {
            coeffs.insert(e.word, c);
        }
    }
    Ok(LieSeries { truncation, coeffs })
}

/// Polar counterterm used to build test characters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Counterterm {
    /// The time-ordered exponential exp(−(1/z)∫θ_{−s}β ds), read with the
    /// latest time on the right.
    TimeOrdered,
    /// exp(−β/z), which ignores the grading; μ-dependent once two
    /// degrees are present.
    PlainExponential,
}

/// Characters of the shuffle algebra built from β, up to a weight bound.
#[derive(Clone, Debug)]
pub struct BetaCharacter {
    pub beta: BetaElement,
    pub truncation: u32,
    pub counterterm: Counterterm,
    /// log μ.
    pub log_mu: BigRational,
    pub window: Window,
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, k| a * k)
}

impl BetaCharacter {
    fn check(&self, w: &Word) -> Result<()> {
        if w.weight() > self.truncation {
            return Err(Error::Truncation(format!(
                "word {w} exceeds the truncation degree {}",
                self.truncation
            )));
        }
        Ok(())
    }

    /// The polar counterterm γ₋(w) as an exact series.
    pub fn counterterm(&self, w: &Word) -> Result<LaurentSeries> {
        self.check(w)?;
        let n = w.len();
        let sign = if n.is_multiple_of(2) { BigRational::one() } else { -BigRational::one() };
        let c = match self.counterterm {
            Counterterm::TimeOrdered => iterated_integral_coeff(&w.reversed()),
            Counterterm::PlainExponential => BigRational::new(BigInt::one(), factorial(n)),
        };
        Ok(LaurentSeries::monomial(sign * c * self.beta.weight_of(w), -(n as i32)))
    }

    /// A fixed regular character exp(z Σ_k e_k/(k+1)).
    fn regular(w: &Word) -> LaurentSeries {
        let c = w
            .0
            .iter()
            .fold(BigRational::one(), |acc, &k| acc * BigRational::new(1.into(), (k + 1).into()));
        LaurentSeries::monomial(c / BigRational::from_integer(factorial(w.len())), w.len() as i32)
    }

    /// φ_μ(w) = μ^{z·|w|}·(γ₋^{−1} ⋆ γ_reg)(w), with |w| the weight.
    pub fn value(&self, w: &Word) -> Result<LaurentSeries> {
        self.check(w)?;
        let mut conv = LaurentSeries::zero();
        for i in 0..=w.len() {
            let left = Word(w.0[..i].to_vec());
            let right = Word(w.0[i..].to_vec());
            // γ₋^{−1} = γ₋∘S with S(u) = (−1)^{|u|} reversed(u).
            let mut inv = self.counterterm(&left.reversed())?;
            if left.len() % 2 == 1 {
                inv = -&inv;
            }
            conv = &conv + &(&inv * &Self::regular(&right));
        }
        let terms = self.window.order + 2 * self.truncation + 1;
        let a = &self.log_mu * BigRational::from_integer(w.weight().into());
        self.window.fit(&LaurentSeries::exp_linear(&a, terms) * &conv)
    }

    pub fn rescaled(&self, t: &BigRational) -> Self {
        BetaCharacter {
            log_mu: &self.log_mu + t,
            ..self.clone()
        }
    }
}

impl crate::hopf::SeriesMap<Word> for BetaCharacter {
    fn eval(&self, b: &Word) -> Result<LaurentSeries> {
        self.value(b)
    }
}

/// The character of the shuffle algebra attached to β at μ = 1, whose
/// Birkhoff negative part is the time-ordered counterterm.
pub fn beta_to_character(beta: &BetaElement, truncation: u32) -> Result<BetaCharacter> {
    if beta.components.len() > truncation as usize {
        return Err(Error::Dimension(format!(
            "β has {} components but the truncation degree is {truncation}",
            beta.components.len()
        )));
    }
    if truncation == 0 {
        return Err(Error::Dimension("truncation must be at least 1".into()));
    }
    Ok(BetaCharacter {
        beta: beta.clone(),
        truncation,
        counterterm: Counterterm::TimeOrdered,
        log_mu: BigRational::zero(),
        window: Window::new(truncation.max(1), truncation),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScalingReport {
    /// φ₋ agrees at μ and e^t μ on every word.
    pub mu_independent: bool,
    /// φ_{e^t μ} = θ_{tz}φ_μ termwise.
    pub scaling_identity: bool,
    /// φ₋ equals the polar counterterm the character was built from.
    pub matches_counterterm: bool,
    pub passes: bool,
    pub words_checked: usize,
}

/// Birkhoff negative parts of a β-character at μ and at e^t μ, compared
/// word by word through weight `order`.
pub fn scaling_check_with(
    beta: &BetaElement,
    t: &BigRational,
    order: u32,
    counterterm: Counterterm,
) -> Result<ScalingReport> {
    let mut phi = beta_to_character(beta, order)?;
    phi.counterterm = counterterm;
    let shifted = phi.rescaled(t);
    let h = ShuffleHopf;
    let b0 = Birkhoff::new(&h, &phi, phi.window);
    let b1 = Birkhoff::new(&h, &shifted, phi.window);
    let words = Word::up_to_weight(order);
    let mut mu_independent = true;
    let mut scaling_identity = true;
    let mut matches_counterterm = true;
    for w in &words {
        let m0 = b0.minus(w)?;
        let m1 = b1.minus(w)?;
        // Every polar coefficient must be known before comparing.
        mu_independent &= m0.agrees_to(&m1, 0)?;
        matches_counterterm &= m0.agrees_to(&phi.counterterm(w)?, 0)?;
        let a = t * BigRational::from_integer(w.weight().into());
        let theta = &LaurentSeries::exp_linear(&a, phi.window.order + 2 * order + 1) * &phi.value(w)?;
        let lhs = shifted.value(w)?;
        let upto = lhs.order().unwrap_or(0).min(theta.order().unwrap_or(0)).min(phi.window.order as i32);
        scaling_identity &= lhs.agrees_to(&theta, upto)?;
    }
    Ok(ScalingReport {
        mu_independent,
        scaling_identity,
        matches_counterterm,
        passes: mu_independent && scaling_identity,
        words_checked: words.len(),
    })
}

pub fn scaling_check(beta: &BetaElement, t: &BigRational, order: u32) -> Result<ScalingReport> {
    scaling_check_with(beta, t, order, Counterterm::TimeOrdered)
}

/// φ₋ on every word of weight ≤ N, from the Birkhoff recursion.
pub fn birkhoff_minus_table(phi: &BetaCharacter) -> Result<BTreeMap<Word, LaurentSeries>> {
    let h = ShuffleHopf;
    let b = Birkhoff::new(&h, phi, phi.window);
    let mut out = BTreeMap::new();
    for w in Word::up_to_weight(phi.truncation) {
        out.insert(w.clone(), b.minus(&w)?);
    }
    Ok(out)
}

/// Relative distance, for the quadrature comparisons.
pub fn relative_error(exact: &BigRational, approx: f64) -> f64 {
    let e = exact.numer().to_string().parse::<f64>().unwrap_or(f64::NAN)
        / exact.denom().to_string().parse::<f64>().unwrap_or(f64::NAN);
    ((approx - e) / e).abs()
}

/// Σ over words of coefficient · (linear functional), used by the bridge
/// tests to sum a degree's words.
pub fn word_sum(coeffs: &BTreeMap<Word, BigRational>, f: impl Fn(&Word) -> BigRational) -> BigRational {
    coeffs.iter().fold(BigRational::zero(), |acc, (w, c)| acc + c * f(w))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn closed_forms() {
        assert_eq!(iterated_integral_coeff(&Word(vec![3])), r(1, 3));
        assert_eq!(iterated_integral_coeff(&Word(vec![1, 1])), r(1, 2));
        assert_eq!(iterated_integral_coeff(&Word(vec![2, 3])), r(1, 10));
        assert_eq!(iterated_integral_coeff(&Word::empty()), r(1, 1));
    }

    #[test]
    fn quadrature_oracle() {
        for w in [Word(vec![1]), Word(vec![1, 1]), Word(vec![2, 3]), Word(vec![1, 4, 2])] {
            let q = iterated_integral_quadrature(&w, 24).unwrap();
            assert!(relative_error(&iterated_integral_coeff(&w), q) < 1e-6, "{w}: {q}");
        }
    }

    #[test]
    fn gamma_minus_examples() {
        let g = gamma_minus(&BetaElement::from_ints(&[1]), 3).unwrap();
        assert_eq!(g.coeff(&Word(vec![1, 1])).unwrap(), r(1, 2));
        assert_eq!(g.d(2).len(), 1);
        let zero = gamma_minus(&BetaElement::from_ints(&[0, 0]), 3).unwrap();
        assert_eq!(zero.coeffs.len(), 1);
        assert!(g.coeff(&Word(vec![4])).is_err());
        for n in 1..=4 {
            let beta = BetaElement::new((1..=n).map(|k| r(k as i64, 3)).collect());
            assert!(gamma_minus(&beta, n).unwrap().is_group_like().unwrap());
        }
        let mut broken = gamma_minus(&BetaElement::from_ints(&[1, 1]), 3).unwrap();
        broken.coeffs.insert(Word(vec![1, 1]), r(1, 3));
        assert!(!broken.is_group_like().unwrap());
    }

    #[test]
    fn frame_examples() {
        let f = universal_singular_frame(2).unwrap();
        let e = f.iter().find(|e| e.word == Word(vec![1])).unwrap();
        assert_eq!((e.v_power, e.z_power, e.coeff.clone()), (1, 1, r(1, 1)));
        let e = f.iter().find(|e| e.word == Word(vec![1, 1])).unwrap();
        assert_eq!((e.v_power, e.z_power, e.coeff.clone()), (2, 2, r(1, 2)));
        let at0 = universal_frame_at(3, &r(0, 1)).unwrap();
        assert_eq!(at0.coeffs.len(), 1);
        let at1 = universal_frame_at(4, &r(1, 1)).unwrap();
        assert_eq!(at1, gamma_minus(&BetaElement::all_ones(4), 4).unwrap());
    }

    #[test]
    fn bridge() {
        // Degree-one generator only: φ₋((1)) = −β₁/z.
        let phi = beta_to_character(&BetaElement::from_ints(&[3]), 2).unwrap();
        let table = birkhoff_minus_table(&phi).unwrap();
        assert_eq!(table[&Word(vec![1])], LaurentSeries::monomial(r(-3, 1), -1));
        // Two degrees at N = 2: the 1/z² part over the words of length 2 is d₂.
        let beta = BetaElement::from_ints(&[2, 5]);
        let phi = beta_to_character(&beta, 2).unwrap();
        let table = birkhoff_minus_table(&phi).unwrap();
        let d2 = gamma_minus(&beta, 2).unwrap().d(2);
        for (w, c) in &d2 {
            assert_eq!(&table[w].coeff(-2).unwrap(), c);
        }
        // From weight 3 on, words with distinct letters meet the reversed
        // coefficient: (1,2) carries 1/(2·3), not 1/(1·3).
        let beta = BetaElement::from_ints(&[1, 1]);
        let table = birkhoff_minus_table(&beta_to_character(&beta, 3).unwrap()).unwrap();
        let d2 = gamma_minus(&beta, 3).unwrap().d(2);
        for (w, c) in &d2 {
            assert_eq!(&table[&w.reversed()].coeff(-2).unwrap(), c);
        }
        assert_eq!(table[&Word(vec![1, 2])].coeff(-2).unwrap(), r(1, 6));
        let zero = beta_to_character(&BetaElement::from_ints(&[0]), 2).unwrap();
        assert!(birkhoff_minus_table(&zero).unwrap().values().all(LaurentSeries::is_zero));
        assert!(beta_to_character(&BetaElement::from_ints(&[1, 1, 1]), 2).is_err());
    }

    #[test]
    fn scaling() {
        let b1 = BetaElement::from_ints(&[1]);
        assert!(scaling_check(&b1, &r(1, 1), 4).unwrap().passes);
        assert!(scaling_check(&b1, &r(0, 1), 4).unwrap().passes);
        let two = BetaElement::from_ints(&[1, 2]);
        let report = scaling_check(&two, &r(1, 2), 4).unwrap();
        assert!(report.passes && report.matches_counterterm, "{report:?}");
        let fake = scaling_check_with(&two, &r(1, 2), 4, Counterterm::PlainExponential).unwrap();
        assert!(!fake.mu_independent);
        assert!(!fake.passes);
    }
}
