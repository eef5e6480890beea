//! Weighted sums S_N = Σ [X_Γ]·N!/#Aut(Γ) over vacuum graphs with N vertices,
//! tested for polynomiality in q by interpolation.
//!
//! A polynomial fit through finitely many primes is evidence, not proof: the
//! verdict only says the counts at the supplied primes are consistent with a
//! polynomial of the expected degree.

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::class::ClassPoly;
use super::count::{projective_point_count, PrimeField};
use crate::error::{Error, Result};
use crate::graph::{automorphism_count, canonical_form, CanonicalGraph, Graph, Theory};
use crate::symanzik::psi_spanning_trees;

/// Largest vertex count for the vacuum-graph enumeration.
pub const MAX_SUM_VERTICES: usize = 4;

/// Connected vacuum multigraphs (looping edges allowed) with `n` vertices and
/// legal valences, one per isomorphism class.
pub fn vacuum_graphs(n: usize, th: &Theory) -> Result<Vec<Graph>> {
    if n == 0 || n > MAX_SUM_VERTICES {
        return Err(Error::budget(
            format!("{n} vertices"),
            MAX_SUM_VERTICES,
            "graph sums are enumerated for 1 to 4 vertices",
        ));
    }
    let max_val = *th.valences().iter().next_back().expect("nonempty") as usize;
    let mut slots: Vec<(usize, usize)> = (0..n).map(|v| (v, v)).collect();
    for u in 0..n {
        for v in u + 1..n {
            slots.push((u, v));
        }
    }
    let mut seen: BTreeSet<CanonicalGraph> = BTreeSet::new();
    let mut out = Vec::new();
    let mut mult = vec![0usize; slots.len()];
    let mut deg = vec![0usize; n];
    let mut emit = |mult: &[usize]| -> Result<()> {
        let mut edges = Vec::new();
        for (&(u, v), &k) in slots.iter().zip(mult) {
            edges.extend(std::iter::repeat_n((u, v), k));
        }
        let g = Graph::new(n, edges, Vec::new())?;
        if !g.is_connected() || g.validate(th).is_err() {
            return Ok(());
        }
        if seen.insert(canonical_form(&g)?) {
            out.push(g);
        }
        Ok(())
    };
    fn rec(
        i: usize,
        slots: &[(usize, usize)],
        max_val: usize,
        mult: &mut [usize],
        deg: &mut [usize],
        emit: &mut dyn FnMut(&[usize]) -> Result<()>,
    ) -> Result<()> {
        if i == slots.len() {
            return emit(mult);
        }
        let (u, v) = slots[i];
        let mut k = 0;
        loop {
            let (du, dv) = if u == v { (2 * k, 0) } else { (k, k) };
            if deg[u] + du > max_val || deg[v] + dv > max_val {
                break;
            }
            deg[u] += du;
            deg[v] += dv;
            mult[i] = k;
            rec(i + 1, slots, max_val, mult, deg, emit)?;
            deg[u] -= du;
            deg[v] -= dv;
            k += 1;
        }
        mult[i] = 0;
        Ok(())
    }
    rec(0, &slots, max_val, &mut mult, &mut deg, &mut emit)?;
    Ok(out)
}

fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |a, k| a * k)
}

/// Result of fitting the weighted counts by a polynomial in q.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum GraphSumVerdict {
    /// numerator(q)/denominator matched every supplied prime.
    Polynomial {
        #[serde(serialize_with = "ser_display")]
        numerator: ClassPoly,
        #[serde(serialize_with = "ser_display")]
        denominator: BigInt,
    },
    NonPolynomial,
}

fn ser_display<T: std::fmt::Display, S: serde::Serializer>(x: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(x)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GraphSumReport {
    pub graphs: usize,
    pub degree_bound: usize,
    /// (q, exact weighted count) per prime.
    #[serde(serialize_with = "ser_values")]
    pub values: Vec<(u64, BigRational)>,
    #[serde(flatten)]
    pub verdict: GraphSumVerdict,
}

fn ser_values<S: serde::Serializer>(v: &[(u64, BigRational)], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for (q, x) in v {
        seq.serialize_element(&(q, x.to_string()))?;
    }
    seq.end()
}

/// S_N for the vacuum graphs of a theory.
pub fn graph_sum_class(n: usize, th: &Theory, primes: &[u64]) -> Result<GraphSumReport> {
    let family = vacuum_graphs(n, th)?;
    graph_sum_over(&family, n, primes)
}

/// Σ_Γ #X_Γ(𝔽_q)·N!/#Aut(Γ) over an explicit family, then fit in q.
pub fn graph_sum_over(family: &[Graph], n: usize, primes: &[u64]) -> Result<GraphSumReport> {
    let fields = primes
        .iter()
        .map(|&q| PrimeField::new(q))
        .collect::<Result<Vec<_>>>()?;
    let degree_bound = family
        .iter()
        .map(|g| g.edge_count().saturating_sub(2))
        .max()
        .unwrap_or(0);
    if !family.is_empty() && fields.len() < degree_bound + 2 {
        return Err(Error::Dimension(format!(
            "need at least {} primes to fit and check degree {degree_bound}",
            degree_bound + 2
        )));
    }
    let nfact = BigInt::from(factorial(n));
    let mut weighted = Vec::with_capacity(family.len());
    for g in family {
        let aut = BigInt::from(automorphism_count(g)?);
        weighted.push((psi_spanning_trees(g)?, BigRational::new(nfact.clone(), aut)));
    }
    let mut values = Vec::with_capacity(fields.len());
    for f in &fields {
        let mut total = BigRational::zero();
        for (psi, w) in &weighted {
            total += w * BigRational::from_integer(projective_point_count(psi, *f)?.into());
        }
        values.push((f.q(), total));
    }
    let verdict = if family.is_empty() {
        GraphSumVerdict::Polynomial {
            numerator: ClassPoly::zero(),
            denominator: BigInt::one(),
        }
    } else {
        fit(&values, degree_bound)
    };
    Ok(GraphSumReport {
        graphs: family.len(),
        degree_bound,
        values,
        verdict,
    })
}

/// Interpolate through the first d+1 points and check the rest.
fn fit(values: &[(u64, BigRational)], d: usize) -> GraphSumVerdict {
    let pts: Vec<(BigRational, BigRational)> = values
        .iter()
        .map(|(q, y)| (BigRational::from_integer((*q).into()), y.clone()))
        .collect();
    let coeffs = lagrange(&pts[..=d]);
    let eval = |x: &BigRational| {
        coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    };
    if pts[d + 1..].iter().any(|(x, y)| eval(x) != *y) {
        return GraphSumVerdict::NonPolynomial;
    }
    let den = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let numerator = ClassPoly::from_coeffs(coeffs.iter().enumerate().map(|(k, c)| {
        (k as i32, (c * BigRational::from_integer(den.clone())).to_integer())
    }));
    GraphSumVerdict::Polynomial {
        numerator,
        denominator: den,
    }
}

/// Coefficients (constant first) of the interpolating polynomial.
fn lagrange(pts: &[(BigRational, BigRational)]) -> Vec<BigRational> {
    let n = pts.len();
    let mut out = vec![BigRational::zero(); n];
    for (i, (xi, yi)) in pts.iter().enumerate() {
        // Basis polynomial Π_{j≠i} (x − x_j)/(x_i − x_j).
        let mut basis = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for (j, (xj, _)) in pts.iter().enumerate() {
            if i == j {
                continue;
            }
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (k, c) in basis.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * xj;
            }
            basis = next;
            denom *= xi - xj;
        }
        let scale = yi / denom;
        for (k, c) in basis.iter().enumerate() {
            out[k] += c * &scale;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::make_banana;
    use crate::motive::class::banana_class;

    #[test]
    fn phi4_two_vertices() {
        let gs = vacuum_graphs(2, &Theory::phi4()).unwrap();
        assert_eq!(gs.len(), 2);
        let r = graph_sum_class(2, &Theory::phi4(), &[2, 3, 5, 7, 11]).unwrap();
        assert_eq!(r.degree_bound, 2);
        assert!(matches!(r.verdict, GraphSumVerdict::Polynomial { .. }));
    }

    #[test]
    fn phi3_two_vertices() {
        // Theta graph and the dumbbell.
        let gs = vacuum_graphs(2, &Theory::phi3()).unwrap();
        assert_eq!(gs.len(), 2);
    }

    #[test]
    fn banana_family() {
        for n in 2..=4usize {
            let fam = [make_banana(n).unwrap()];
            let r = graph_sum_over(&fam, 2, &[2, 3, 5, 7, 11]).unwrap();
            let nf: BigInt = (1..=n).product::<usize>().into();
            match r.verdict {
                GraphSumVerdict::Polynomial { numerator, denominator } => {
                    let expected = banana_class(n as u32).unwrap();
                    assert_eq!(&numerator.scale(&nf), &expected.scale(&denominator));
                }
                GraphSumVerdict::NonPolynomial => panic!("banana family must fit"),
            }
        }
    }

    #[test]
    fn empty_family() {
        let r = graph_sum_over(&[], 3, &[2, 3]).unwrap();
        assert_eq!(
            r.verdict,
            GraphSumVerdict::Polynomial { numerator: ClassPoly::zero(), denominator: BigInt::one() }
        );
    }

    #[test]
    fn too_few_primes() {
        assert!(graph_sum_class(2, &Theory::phi4(), &[2, 3, 5]).is_err());
    }

    #[test]
    fn interpolation_rejects_non_polynomial_data() {
        let vals: Vec<(u64, BigRational)> = [(2u64, 1i64), (3, 2), (5, 3), (7, 100)]
            .iter()
            .map(|&(q, y)| (q, BigRational::from_integer(y.into())))
            .collect();
        assert_eq!(fit(&vals, 2), GraphSumVerdict::NonPolynomial);
    }
}
