//! The Hopf algebra of 1PI graphs: free commutative on isomorphism classes,
//! with Δ(Γ) = Γ⊗1 + 1⊗Γ + Σ_γ γ⊗Γ/γ over subdivergences.

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use super::{ConnectedHopf, Lin, Tensor};
use crate::error::{Error, Result};
use crate::graph::{canonical_form, quotient, subdivergences, CanonicalGraph, Graph, Theory};

/// What the degree of a generator counts.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Grading {
    #[default]
    Loops,
    InternalEdges,
}

/// A commutative monomial in graph classes, kept sorted; empty is the unit.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GraphMonomial(Vec<CanonicalGraph>);

impl GraphMonomial {
    pub fn unit() -> Self {
        GraphMonomial(Vec::new())
    }

    pub fn generator(g: CanonicalGraph) -> Self {
        GraphMonomial(vec![g])
    }

    pub fn from_factors(mut gens: Vec<CanonicalGraph>) -> Self {
        gens.sort();
        GraphMonomial(gens)
    }

    pub fn factors(&self) -> &[CanonicalGraph] {
        &self.0
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn times(&self, other: &GraphMonomial) -> GraphMonomial {
        let mut v = self.0.clone();
        v.extend(other.0.iter().cloned());
        GraphMonomial::from_factors(v)
    }
}

impl fmt::Display for GraphMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, g) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "·")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

pub fn loop_number(g: &CanonicalGraph) -> usize {
    // Generators are connected.
    g.edges.len() + 1 - g.vertices
}

type GeneratorCoproduct = Vec<(GraphMonomial, CanonicalGraph, BigInt)>;

pub struct GraphHopf {
    theory: Theory,
    grading: Grading,
    cache: RefCell<BTreeMap<CanonicalGraph, GeneratorCoproduct>>,
}

impl GraphHopf {
    pub fn new(theory: Theory) -> Self {
        GraphHopf::with_grading(theory, Grading::Loops)
    }

    pub fn with_grading(theory: Theory, grading: Grading) -> Self {
        GraphHopf {
            theory,
            grading,
            cache: RefCell::new(BTreeMap::new()),
        }
    }

    pub fn theory(&self) -> &Theory {
        &self.theory
    }

    /// Canonical class of a connected 1PI graph of the theory.
    pub fn generator(&self, g: &Graph) -> Result<CanonicalGraph> {
        g.validate(&self.theory)?;
        if !g.is_1pi()? {
            return Err(Error::InvalidGraph("Hopf generators must be 1PI".into()));
        }
        if g.loop_number() == 0 {
            return Err(Error::InvalidGraph("Hopf generators need at least one loop".into()));
        }
        canonical_form(g)
    }

    pub fn element(&self, g: &Graph) -> Result<Lin<GraphMonomial>> {
        Ok(Lin::basis(GraphMonomial::generator(self.generator(g)?)))
    }

    /// Product of generators as a basis monomial.
    pub fn monomial(&self, gs: &[&Graph]) -> Result<GraphMonomial> {
        let gens = gs.iter().map(|g| self.generator(g)).collect::<Result<Vec<_>>>()?;
        Ok(GraphMonomial::from_factors(gens))
    }

    pub fn generator_degree(&self, g: &CanonicalGraph) -> usize {
        match self.grading {
            Grading::Loops => loop_number(g),
            Grading::InternalEdges => g.edges.len(),
        }
    }

    /// Σ_γ γ⊗Γ/γ for one generator, with γ split into its components.
    pub fn subdivergence_terms(&self, g: &CanonicalGraph) -> Result<GeneratorCoproduct> {
        if let Some(t) = self.cache.borrow().get(g) {
            return Ok(t.clone());
        }
        let graph = g.to_graph();
        let mut acc: BTreeMap<(GraphMonomial, CanonicalGraph), BigInt> = BTreeMap::new();
        for sub in subdivergences(&graph, &self.theory)? {
            let parts = sub
                .component_graphs(&graph)
                .iter()
                .map(canonical_form)
                .collect::<Result<Vec<_>>>()?;
            let q = canonical_form(&quotient(&graph, &sub)?)?;
            *acc.entry((GraphMonomial::from_factors(parts), q)).or_default() += 1;
        }
        let out: GeneratorCoproduct = acc.into_iter().map(|((m, q), c)| (m, q, c)).collect();
        self.cache.borrow_mut().insert(g.clone(), out.clone());
        Ok(out)
    }

    fn generator_coproduct(&self, g: &CanonicalGraph) -> Result<Tensor<GraphMonomial>> {
        let gm = GraphMonomial::generator(g.clone());
        let mut t = Lin::zero();
        t.add_term((gm.clone(), GraphMonomial::unit()), BigInt::one());
        t.add_term((GraphMonomial::unit(), gm), BigInt::one());
        for (m, q, c) in self.subdivergence_terms(g)? {
            t.add_term((m, GraphMonomial::generator(q)), c);
        }
        Ok(t)
    }
}

impl ConnectedHopf for GraphHopf {
    type Basis = GraphMonomial;

    fn unit(&self) -> GraphMonomial {
        GraphMonomial::unit()
    }

    fn degree(&self, b: &GraphMonomial) -> usize {
        b.0.iter().map(|g| self.generator_degree(g)).sum()
    }

    fn product(&self, a: &GraphMonomial, b: &GraphMonomial) -> Result<Lin<GraphMonomial>> {
        Ok(Lin::basis(a.times(b)))
    }

    fn coproduct(&self, b: &GraphMonomial) -> Result<Tensor<GraphMonomial>> {
        let mut acc = Lin::basis((GraphMonomial::unit(), GraphMonomial::unit()));
        for g in &b.0 {
            let dg = self.generator_coproduct(g)?;
            let mut next = Lin::zero();
            for ((l1, r1), c1) in acc.iter() {
                for ((l2, r2), c2) in dg.iter() {
                    next.add_term((l1.times(l2), r1.times(r2)), c1 * c2);
                }
            }
            acc = next;
        }
        Ok(acc)
    }
}
