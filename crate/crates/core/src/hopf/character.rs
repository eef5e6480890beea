//! Toy characters on the graph Hopf algebra.
//!
//! A character is fixed by its values on generators and extended
//! multiplicatively to monomials.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::graphs::{loop_number, GraphMonomial};
use super::SeriesMap;
use crate::error::{Error, Result};
use crate::graph::CanonicalGraph;
use crate::series::{LaurentSeries, Window};

#[derive(Clone, Debug, PartialEq)]
pub enum ToyCharacter {
    /// Γ ↦ (c/z)^ℓ / ℓ! with ℓ the loop number.
    Nested { c: BigRational },
    /// The nested family times (μ^z)^ℓ, with log μ given as a rational.
    Scaled { c: BigRational, log_mu: BigRational },
    /// Pseudo-random rational Laurent polynomials, one per graph class.
    Seeded { seed: u64 },
}

impl FromStr for ToyCharacter {
    type Err = Error;

    /// `nested:c=1`, `scaled:c=1,logmu=1/2`, `seeded:seed=7`.
    fn from_str(s: &str) -> Result<Self> {
        let (kind, args) = s.split_once(':').unwrap_or((s, ""));
        let mut c = BigRational::one();
        let mut log_mu = BigRational::zero();
        let mut seed = 0u64;
        for kv in args.split(',').filter(|a| !a.is_empty()) {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value in {kv:?}")))?;
            let rational = || {
                v.trim()
                    .parse::<BigRational>()
                    .map_err(|_| Error::Parse(format!("bad rational {v:?}")))
            };
            match k.trim() {
                "c" => c = rational()?,
                "logmu" => log_mu = rational()?,
                "seed" => seed = v.trim().parse().map_err(|_| Error::Parse(format!("bad seed {v:?}")))?,
                other => return Err(Error::Parse(format!("unknown character parameter {other:?}"))),
            }
        }
        match kind {
            "nested" => Ok(ToyCharacter::Nested { c }),
            "scaled" => Ok(ToyCharacter::Scaled { c, log_mu }),
            "seeded" => Ok(ToyCharacter::Seeded { seed }),
            _ => Err(Error::Parse(format!("unknown character {kind:?}"))),
        }
    }
}

/// A toy character evaluated inside a Laurent window.
#[derive(Clone, Debug)]
pub struct GraphCharacter {
    pub toy: ToyCharacter,
    pub window: Window,
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, k| a * k)
}

fn fnv1a(bytes: &[u8]) -> u64 {
    bytes
        .iter()
        .fold(0xcbf2_9ce4_8422_2325u64, |h, &b| (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3))
}

impl GraphCharacter {
    pub fn new(toy: ToyCharacter, window: Window) -> Self {
        GraphCharacter { toy, window }
    }

    /// The same family at scale log μ + t.
    pub fn rescaled(&self, t: &BigRational) -> Result<Self> {
        match &self.toy {
            ToyCharacter::Scaled { c, log_mu } => Ok(GraphCharacter::new(
                ToyCharacter::Scaled {
                    c: c.clone(),
                    log_mu: log_mu + t,
                },
                self.window,
            )),
            ToyCharacter::Nested { c } => Ok(GraphCharacter::new(
                ToyCharacter::Scaled {
                    c: c.clone(),
                    log_mu: t.clone(),
                },
                self.window,
            )),
            ToyCharacter::Seeded { .. } => Err(Error::Unsupported("seeded characters have no scale".into())),
        }
    }

    pub fn on_generator(&self, g: &CanonicalGraph) -> Result<LaurentSeries> {
        let ell = loop_number(g);
        let nested = |c: &BigRational| {
            let v = c.pow(ell as i32) / BigRational::from_integer(factorial(ell));
            LaurentSeries::monomial(v, -(ell as i32))
        };
        let s = match &self.toy {
            ToyCharacter::Nested { c } => nested(c),
            ToyCharacter::Scaled { c, log_mu } => {
                let a = log_mu * BigRational::from_integer(ell.into());
                let terms = self.window.order + self.window.polar_depth + 1;
                &LaurentSeries::exp_linear(&a, terms) * &nested(c)
            }
            ToyCharacter::Seeded { seed } => {
                let key = fnv1a(g.to_string().as_bytes());
                let mut rng = ChaCha8Rng::seed_from_u64(seed ^ key);
                LaurentSeries::from_terms((-(ell as i32)..=2).map(|k| {
                    let n: i64 = rng.gen_range(-5..=5);
                    let d: i64 = rng.gen_range(1..=4);
                    (k, BigRational::new(n.into(), d.into()))
                }))
            }
        };
        self.window.fit(s)
    }
}

impl SeriesMap<GraphMonomial> for GraphCharacter {
    fn eval(&self, b: &GraphMonomial) -> Result<LaurentSeries> {
        let mut acc = LaurentSeries::one();
        for g in b.factors() {
            acc = self.window.fit(&acc * &self.on_generator(g)?)?;
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::graph::canonical_form;

    #[test]
    fn parse_specs() {
        assert_eq!(
            "nested:c=2".parse::<ToyCharacter>().unwrap(),
            ToyCharacter::Nested { c: BigRational::from_integer(2.into()) }
        );
        let s: ToyCharacter = "scaled:c=1,logmu=1/2".parse().unwrap();
        assert!(matches!(s, ToyCharacter::Scaled { .. }));
        assert_eq!("seeded:seed=9".parse::<ToyCharacter>().unwrap(), ToyCharacter::Seeded { seed: 9 });
        assert!("nested:x=1".parse::<ToyCharacter>().is_err());
        assert!("other".parse::<ToyCharacter>().is_err());
    }

    #[test]
    fn nested_values() {
        let ch = GraphCharacter::new("nested:c=3".parse().unwrap(), Window::default());
        let eye = canonical_form(&fixtures::double_bubble()).unwrap();
        assert_eq!(ch.on_generator(&eye).unwrap().to_string(), "9/2*z^-2");
        let seeded = GraphCharacter::new(ToyCharacter::Seeded { seed: 1 }, Window::default());
        assert_eq!(seeded.on_generator(&eye).unwrap(), seeded.on_generator(&eye).unwrap());
    }
}
