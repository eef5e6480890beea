//! Direct BPHZ recursion on graphs, independent of the coproduct code:
//! R̄(Γ) = φ(Γ) + Σ_γ C(γ)·φ(Γ/γ), C = −T(R̄), R = R̄ + C.

use std::collections::BTreeMap;

use serde::Serialize;

use super::character::GraphCharacter;
use crate::error::{Error, Result};
use crate::graph::{canonical_form, quotient, subdivergences, CanonicalGraph, Graph, Theory};
use crate::series::LaurentSeries;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BphzResult {
    pub prepared: LaurentSeries,
    pub counterterm: LaurentSeries,
    pub renormalized: LaurentSeries,
}

struct Session<'a> {
    theory: &'a Theory,
    phi: &'a GraphCharacter,
    memo: BTreeMap<CanonicalGraph, BphzResult>,
}

impl Session<'_> {
    fn run(&mut self, g: &Graph) -> Result<BphzResult> {
        let key = canonical_form(g)?;
        if let Some(r) = self.memo.get(&key) {
            return Ok(r.clone());
        }
        let w = self.phi.window;
        let mut prepared = self.phi.on_generator(&key)?;
        for sub in subdivergences(g, self.theory)? {
            let mut c = LaurentSeries::one();
            for part in sub.component_graphs(g) {
                c = w.fit(&c * &self.run(&part)?.counterterm)?;
            }
            let q = canonical_form(&quotient(g, &sub)?)?;
            prepared = &prepared + &(&c * &self.phi.on_generator(&q)?);
        }
        let prepared = w.fit(prepared)?;
        let counterterm = -&prepared.polar_part();
        let renormalized = &prepared + &counterterm;
        let r = BphzResult {
            prepared,
            counterterm,
            renormalized,
        };
        self.memo.insert(key, r.clone());
        Ok(r)
    }
}

/// Prepared value, counterterm and renormalized value of a 1PI graph.
pub fn bphz(theory: &Theory, phi: &GraphCharacter, g: &Graph) -> Result<BphzResult> {
    g.validate(theory)?;
    if !g.is_1pi()? {
        return Err(Error::InvalidGraph("BPHZ needs a 1PI graph".into()));
    }
    Session {
        theory,
        phi,
        memo: BTreeMap::new(),
    }
    .run(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::series::Window;

    fn nested(c: i64) -> GraphCharacter {
        GraphCharacter::new(format!("nested:c={c}").parse().unwrap(), Window::default())
    }

    #[test]
    fn primitive_graph() {
        let r = bphz(&Theory::phi4(), &nested(2), &fixtures::phi4_bubble()).unwrap();
        assert_eq!(r.prepared.to_string(), "2*z^-1");
        assert_eq!(r.counterterm.to_string(), "-2*z^-1");
        assert!(r.renormalized.is_zero());
    }

    #[test]
    fn double_bubble_values() {
        // R̄ = c²/(2z²) − c²/z² and C = c²/(2z²) at c = 3.
        let r = bphz(&Theory::phi4(), &nested(3), &fixtures::double_bubble()).unwrap();
        assert_eq!(r.prepared.to_string(), "-9/2*z^-2");
        assert_eq!(r.counterterm.to_string(), "9/2*z^-2");
    }
}
