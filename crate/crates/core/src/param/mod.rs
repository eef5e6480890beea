//! Momentum-space and parametric Feynman integrands, DimReg Gaussians and
//! numerical evaluation over the simplex.
//!
//! The simplex σ_n = {t ≥ 0, Σ t = 1} carries the measure dt_1⋯dt_{n−1} of
//! its projection onto the first n−1 coordinates, so vol σ_n = 1/(n−1)!.
//! Parametric integrands are P^a / Ψ^b with a = −n + Dℓ/2 and
//! b = −n + (ℓ+1)D/2, and the overall factor Γ(n − Dℓ/2)/(4π)^{ℓD/2} is kept
//! separately.

mod gamma;
mod master;
mod simplex;

use std::fmt;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

pub use gamma::{gamma_laurent, gamma_value, hurwitz_zeta, is_gamma_pole, FloatLaurent, GammaLaurent, EULER_GAMMA};
pub use master::{
    eval_master_two_loop, master_factors, master_laurent, residue_by_differences, GammaFactor, MasterEval,
    PoleReport,
};
pub use simplex::{
    feynman_trick_check, integrate_simplex, integrate_simplex_fn, simplex_quadrature, FeynmanTrick, Precision,
    SimplexEstimate,
};

use crate::error::{Error, Result};
use crate::graph::{Graph, IncidenceMatrix, LoopBasis};
use crate::poly::{Coeff, IntPoly, Polynomial, RatPoly};
use crate::symanzik::{psi_spanning_trees, second_symanzik, Momenta};

/// ∫ e^{−λ t²} d^z t = π^{z/2} λ^{−z/2}, continued to complex z.
pub fn dimreg_gaussian(lambda: f64, z: Complex64) -> Result<Complex64> {
    if !(lambda > 0.0) {
        return Err(Error::Dimension(format!("Gaussian width must be positive, got {lambda}")));
    }
    let log = (std::f64::consts::PI.ln() - lambda.ln()) * 0.5;
    Ok((z * log).exp())
}

/// One propagator 1/(k_e² + m²) with k_e written in loop and leg momenta.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Propagator {
    pub edge: usize,
    /// Coefficients of k_1, …, k_ℓ.
    pub loops: Vec<i32>,
    /// Coefficients of the incoming leg momenta, indexed by leg id.
    pub legs: Vec<i32>,
    pub mass2: f64,
    pub label: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MomentumIntegrand {
    pub propagators: Vec<Propagator>,
    /// One row per vertex: ε_{e,v} over edges.
    pub delta_rows: Vec<Vec<i8>>,
    pub loops: usize,
    pub momenta: Vec<Vec<String>>,
}

fn leg_name(legs: usize, i: usize) -> String {
    if legs == 2 {
        "p".into()
    } else {
        format!("p{}", i + 1)
    }
}

fn momentum_label(loops: &[i32], legs: &[i32]) -> String {
    // The last leg is eliminated by conservation.
    let mut parts: Vec<(i32, String)> = loops
        .iter()
        .enumerate()
        .map(|(j, &c)| (c, format!("k{}", j + 1)))
        .collect();
    if let Some((&last, rest)) = legs.split_last() {
        for (i, &c) in rest.iter().enumerate() {
            parts.push((c - last, leg_name(legs.len(), i)));
        }
    }
    let mut out = String::new();
    for (c, name) in parts.into_iter().filter(|(c, _)| *c != 0) {
        let mag = if c.abs() == 1 { name } else { format!("{}{}", c.abs(), name) };
        match (out.is_empty(), c < 0) {
            (true, false) => out = mag,
            (true, true) => out = format!("-{mag}"),
            (false, false) => out = format!("{out} + {mag}"),
            (false, true) => out = format!("{out} - {mag}"),
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

/// Momentum routing for `g`: chords carry the loop momenta and tree edges the
/// rest, with legs injecting their momenta into their vertices.
pub fn momentum_integrand(g: &Graph, p: &Momenta, m: f64) -> Result<MomentumIntegrand> {
    let p = Momenta::new(g, p.p.clone())?;
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let basis = LoopBasis::dfs(g);
    let ell = basis.loop_count();
    let nlegs = g.legs().len();
    let mut propagators = Vec::with_capacity(g.edge_count());
    for (id, e) in g.edges().iter().enumerate() {
        let loops: Vec<i32> = basis.eta[id].iter().map(|&x| i32::from(x)).collect();
        let mut legs = vec![0i32; nlegs];
        if basis.tree_edges.contains(&id) {
            let mut dsu = crate::graph::Dsu::new(g.vertex_count());
            for &t in basis.tree_edges.iter().filter(|&&t| t != id) {
                dsu.union(g.edge(t).source, g.edge(t).target);
            }
            let side = dsu.find(e.source);
            for (leg, &v) in g.legs().iter().enumerate() {
                if dsu.find(v) == side {
                    legs[leg] = 1;
                }
            }
        }
        let label = momentum_label(&loops, &legs);
        propagators.push(Propagator {
            edge: id,
            loops,
            legs,
            mass2: m * m,
            label,
        });
    }
    let inc = IncidenceMatrix::of(g);
    let delta_rows = (0..g.vertex_count())
        .map(|v| inc.eps.iter().map(|row| row[v]).collect())
        .collect();
    let momenta = p.p.iter().map(|v| v.iter().map(|x| x.to_string()).collect()).collect();
    Ok(MomentumIntegrand {
        propagators,
        delta_rows,
        loops: ell,
        momenta,
    })
}

impl MomentumIntegrand {
    /// Propagator labels up to sign, with multiplicities.
    pub fn grouped(&self) -> Vec<(String, usize, f64)> {
        let mut out: Vec<(Vec<i32>, String, usize, f64)> = Vec::new();
        for pr in &self.propagators {
            let mut key: Vec<i32> = pr.loops.iter().chain(&pr.legs).copied().collect();
            let mut label = pr.label.clone();
            if key.iter().find(|&&c| c != 0).is_some_and(|&c| c < 0) {
                key.iter_mut().for_each(|c| *c = -*c);
                let loops: Vec<i32> = pr.loops.iter().map(|c| -c).collect();
                let legs: Vec<i32> = pr.legs.iter().map(|c| -c).collect();
                label = momentum_label(&loops, &legs);
            }
            match out.iter_mut().find(|(k, _, _, m)| *k == key && *m == pr.mass2) {
                Some(entry) => entry.2 += 1,
                None => out.push((key, label, 1, pr.mass2)),
            }
        }
        out.into_iter().map(|(_, l, n, m)| (l, n, m)).collect()
    }

    /// Check Σ_e ε_{e,v} k_e + (momentum entering at v) = 0 at every vertex.
    pub fn conserves(&self, g: &Graph) -> bool {
        let ell = self.loops;
        let nlegs = g.legs().len();
        self.delta_rows.iter().enumerate().all(|(v, row)| {
            let mut total = vec![0i32; ell + nlegs];
            for (e, &eps) in row.iter().enumerate() {
                let pr = &self.propagators[e];
                for (j, c) in pr.loops.iter().chain(&pr.legs).enumerate() {
                    total[j] += i32::from(eps) * c;
                }
            }
            for (leg, &w) in g.legs().iter().enumerate() {
                if w == v {
                    total[ell + leg] += 1;
                }
            }
            // The leg momenta sum to zero, so only differences matter.
            let legs = &total[ell..];
            total[..ell].iter().all(|&c| c == 0) && legs.windows(2).all(|w| w[0] == w[1])
        })
    }
}

impl fmt::Display for MomentumIntegrand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let factors: Vec<String> = self
            .grouped()
            .into_iter()
            .map(|(label, n, m2)| {
                let simple = !label.contains(' ');
                match (m2 > 0.0, simple) {
                    (true, _) if n == 1 => format!("(({label})^2 + {m2})"),
                    (true, _) => format!("(({label})^2 + {m2})^{n}"),
                    (false, true) => format!("{label}^{}", 2 * n),
                    (false, false) => format!("({label})^{}", 2 * n),
                }
            })
            .collect();
        write!(f, "1/({})", factors.join(" "))
    }
}

/// A polynomial with coefficients converted to f64 for fast evaluation.
#[derive(Clone, Debug, PartialEq)]
pub struct FloatPoly {
    pub terms: Vec<(Vec<u32>, f64)>,
}

impl FloatPoly {
    pub fn from_poly<C: Coeff>(p: &Polynomial<C>, scale: f64) -> Self {
        FloatPoly {
            terms: p.terms().map(|(m, c)| (m.0.clone(), c.to_f64() * scale)).collect(),
        }
    }

    pub fn eval(&self, t: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| e.iter().zip(t).fold(*c, |acc, (&k, &x)| acc * x.powi(k as i32)))
            .sum()
    }

    /// Lowest power of t_i over all terms.
    pub fn order_in(&self, i: usize) -> u32 {
        self.terms.iter().map(|(e, _)| e[i]).min().unwrap_or(0)
    }
}

/// The numerator polynomial: P from cut sets, or the constant m² when p = 0.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Numerator {
    Massless { p: String },
    MassConstant { m2: f64 },
}

#[derive(Clone, Debug, Serialize)]
pub struct ParametricIntegrand {
    pub psi: String,
    pub numerator: Numerator,
    pub edges: usize,
    pub loops: usize,
    pub d: f64,
    /// Power of P.
    pub p_exponent: f64,
    /// Power of Ψ in the denominator.
    pub psi_exponent: f64,
    /// Argument of the Γ in front, n − Dℓ/2.
    pub gamma_argument: f64,
    /// Γ(n − Dℓ/2)/(4π)^{ℓD/2}, absent when the Γ sits on a pole.
    pub prefactor: Option<f64>,
    pub prefactor_divergent: bool,
    /// μ^{−zℓ} for a DimReg shift, 1 otherwise.
    pub mu_factor: f64,
    #[serde(skip)]
    psi_f: FloatPoly,
    #[serde(skip)]
    p_f: Option<FloatPoly>,
    #[serde(skip)]
    m2: f64,
}

fn momenta_vanish(p: &Momenta) -> bool {
    p.p.iter().flatten().all(Zero::is_zero)
}

impl ParametricIntegrand {
    fn assemble(psi: &IntPoly, num: Option<(&RatPoly, f64)>, m2: f64, n: usize, ell: usize, d: f64) -> Result<Self> {
        if !(d.is_finite() && d > 0.0) {
            return Err(Error::Dimension(format!("dimension must be positive, got {d}")));
        }
        let nf = n as f64;
        let lf = ell as f64;
        let gamma_argument = nf - d * lf / 2.0;
        let divergent = is_gamma_pole(gamma_argument);
        let prefactor = if divergent {
            None
        } else {
            Some(gamma_value(gamma_argument)? / (4.0 * std::f64::consts::PI).powf(lf * d / 2.0))
        };
        let (numerator, p_f) = match num {
            Some((p, scale)) => (
                Numerator::Massless {
                    p: if scale == 1.0 {
                        p.to_string()
                    } else {
                        format!("{scale}*({p})")
                    },
                },
                Some(FloatPoly::from_poly(p, scale)),
            ),
            None => (Numerator::MassConstant { m2 }, None),
        };
        Ok(ParametricIntegrand {
            psi: psi.to_string(),
            numerator,
            edges: n,
            loops: ell,
            d,
            p_exponent: -nf + d * lf / 2.0,
            psi_exponent: -nf + (lf + 1.0) * d / 2.0,
            gamma_argument,
            prefactor,
            prefactor_divergent: divergent,
            mu_factor: 1.0,
            psi_f: FloatPoly::from_poly(psi, 1.0),
            p_f,
            m2,
        })
    }

    /// P^a / Ψ^b at a point of the simplex.
    pub fn eval(&self, t: &[f64]) -> f64 {
        let psi = self.psi_f.eval(t);
        let p = match &self.p_f {
            Some(p) => p.eval(t),
            None => self.m2,
        };
        p.powf(self.p_exponent) / psi.powf(self.psi_exponent)
    }

    /// Exponent of t_i near t_i = 0, from the lowest powers in P and Ψ.
    pub fn endpoint_orders(&self) -> Vec<f64> {
        (0..self.edges)
            .map(|i| {
                let op = self.p_f.as_ref().map_or(0, |p| p.order_in(i)) as f64;
                let os = self.psi_f.order_in(i) as f64;
                self.p_exponent * op - self.psi_exponent * os
            })
            .collect()
    }

    /// The same integrand in dimension D + z, with the factor μ^{−zℓ}.
    pub fn dimreg(&self, z: f64, mu: f64) -> Result<Self> {
        if !(mu > 0.0) {
            return Err(Error::Dimension(format!("scale μ must be positive, got {mu}")));
        }
        let d = self.d + z;
        let nf = self.edges as f64;
        let lf = self.loops as f64;
        let gamma_argument = nf - d * lf / 2.0;
        let divergent = is_gamma_pole(gamma_argument);
        let prefactor = if divergent {
            None
        } else {
            Some(gamma_value(gamma_argument)? / (4.0 * std::f64::consts::PI).powf(lf * d / 2.0))
        };
        Ok(ParametricIntegrand {
            d,
            p_exponent: -nf + d * lf / 2.0,
            psi_exponent: -nf + (lf + 1.0) * d / 2.0,
            gamma_argument,
            prefactor,
            prefactor_divergent: divergent,
            mu_factor: mu.powf(-z * lf),
            ..self.clone()
        })
    }

    /// Closed form of the simplex integral where one is known: the one-loop
    /// two-edge bubble.
    pub fn exact_if_known(&self) -> Option<f64> {
        if self.edges != 2 || self.loops != 1 {
            return None;
        }
        let a = self.p_exponent;
        match &self.p_f {
            // P = s·t1·t2 and Ψ = t1 + t2 = 1 on the simplex.
            Some(p) => {
                let s = p.eval(&[1.0, 1.0]);
                let beta = gamma_value(a + 1.0).ok()?.powi(2) / gamma_value(2.0 * a + 2.0).ok()?;
                Some(s.powf(a) * beta)
            }
            None => Some(self.m2.powf(a)),
        }
    }
}

/// Parametric integrand for general Euclidean momenta.
///
/// Massless (m = 0) uses P from the cut sets; m > 0 needs all momenta zero
/// and replaces P by m². Anything else is unsupported.
pub fn build_parametric(g: &Graph, p: &Momenta, d: f64, m: f64) -> Result<ParametricIntegrand> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if m < 0.0 || !m.is_finite() {
        return Err(Error::Dimension(format!("mass must be non-negative, got {m}")));
    }
    let psi = psi_spanning_trees(g)?;
    let n = g.edge_count();
    let ell = g.loop_number();
    if ell == 0 {
        return Err(Error::Unsupported("tree graphs have no parametric integral".into()));
    }
    let p = Momenta::new(g, p.p.clone())?;
    if m > 0.0 {
        if !momenta_vanish(&p) {
            return Err(Error::Unsupported(
                "massive propagators with nonzero external momenta".into(),
            ));
        }
        return ParametricIntegrand::assemble(&psi, None, m * m, n, ell, d);
    }
    let poly = second_symanzik(g, &p)?;
    if poly.is_zero() {
        return Err(Error::Momentum("massless integrand with vanishing P".into()));
    }
    ParametricIntegrand::assemble(&psi, Some((&poly, 1.0)), 0.0, n, ell, d)
}

/// `g` with two legs, attaching them to the first and last vertex when it
/// has none.
pub fn with_two_point_legs(g: &Graph) -> Result<Graph> {
    match g.legs().len() {
        2 => Ok(g.clone()),
        0 => {
            let pairs = g.edges().iter().map(|e| (e.source, e.target)).collect();
            Graph::new(g.vertex_count(), pairs, vec![0, g.vertex_count() - 1])
        }
        k => Err(Error::Momentum(format!("two-point kinematics needs two legs, found {k}"))),
    }
}

/// Two-point kinematics with p² = `p2` (massless) or p = 0 (massive).
pub fn build_parametric_two_point(g: &Graph, p2: f64, d: f64, m: f64) -> Result<ParametricIntegrand> {
    let g = with_two_point_legs(g)?;
    if m > 0.0 {
        if p2 != 0.0 {
            return Err(Error::Unsupported(
                "massive propagators with nonzero external momenta".into(),
            ));
        }
        let zero = vec![vec![BigRational::zero()]; 2];
        return build_parametric(&g, &Momenta::new(&g, zero)?, d, m);
    }
    if !(p2 > 0.0) {
        return Err(Error::Momentum(format!("p² must be positive for massless kinematics, got {p2}")));
    }
    if g.loop_number() == 0 {
        return Err(Error::Unsupported("tree graphs have no parametric integral".into()));
    }
    let unit = second_symanzik(&g, &Momenta::unit_two_point(&g)?)?;
    let psi = psi_spanning_trees(&g)?;
    ParametricIntegrand::assemble(&psi, Some((&unit, p2)), 0.0, g.edge_count(), g.loop_number(), d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::graph::make_banana;
    use approx::assert_relative_eq;
    use num_traits::One;

    #[test]
    fn gaussian() {
        let one = dimreg_gaussian(std::f64::consts::PI, Complex64::new(1.0, 0.0)).unwrap();
        assert_relative_eq!(one.re, 1.0, max_relative = 1e-15);
        let pi = dimreg_gaussian(1.0, Complex64::new(2.0, 0.0)).unwrap();
        assert_relative_eq!(pi.re, std::f64::consts::PI, max_relative = 1e-15);
        // Product of one-dimensional Gaussians at integer z, continued.
        let z = 3.9;
        let v = dimreg_gaussian(2.0, Complex64::new(z, 0.0)).unwrap();
        assert_relative_eq!(v.re, (std::f64::consts::PI / 2.0).powf(z / 2.0), max_relative = 1e-14);
        let four = dimreg_gaussian(2.0, Complex64::new(4.0, 0.0)).unwrap();
        let one_d = (std::f64::consts::PI / 2.0).sqrt();
        assert_relative_eq!(four.re, one_d.powi(4), max_relative = 1e-14);
        assert!(dimreg_gaussian(0.0, Complex64::new(1.0, 0.0)).is_err());
        assert!(dimreg_gaussian(-1.0, Complex64::new(1.0, 0.0)).is_err());
        // log is affine in z.
        let l = |z: f64| dimreg_gaussian(3.0, Complex64::new(z, 0.5)).unwrap().ln();
        let lhs = l(1.0) + l(3.0);
        let rhs = l(2.0) * 2.0;
        assert!((lhs - rhs).norm() < 1e-13);
    }

    #[test]
    fn bubble_propagators() {
        let g = with_two_point_legs(&make_banana(2).unwrap()).unwrap();
        let mi = momentum_integrand(&g, &Momenta::unit_two_point(&g).unwrap(), 0.0).unwrap();
        assert_eq!(mi.propagators.len(), 2);
        assert_eq!(mi.delta_rows.len(), 2);
        assert_eq!(mi.loops, 1);
        assert!(mi.conserves(&g));
        assert_eq!(mi.delta_rows, {
            let inc = IncidenceMatrix::of(&g);
            (0..2).map(|v| inc.eps.iter().map(|r| r[v]).collect::<Vec<_>>()).collect::<Vec<_>>()
        });
    }

    #[test]
    fn two_loop_integrand() {
        let g = fixtures::two_loop();
        let mi = momentum_integrand(&g, &Momenta::unit_two_point(&g).unwrap(), 0.0).unwrap();
        assert_eq!(mi.propagators.len(), 5);
        assert!(mi.conserves(&g));
        // Up to a shift of loop momenta: k twice, then k − p, k + ℓ and ℓ.
        let groups = mi.grouped();
        assert_eq!(groups.len(), 4);
        assert_eq!(groups.iter().filter(|(_, n, _)| *n == 2).count(), 1);
        let loops_of = |e: usize| mi.propagators[e].loops.clone();
        let legs_of = |e: usize| mi.propagators[e].legs.clone();
        // Edges 0 and 1 are in series, edge 2 sits beside them across a leg.
        assert_eq!(mi.propagators[0].label, mi.propagators[1].label);
        assert_eq!(loops_of(0), loops_of(2));
        assert_ne!(legs_of(0), legs_of(2));
        let both = |e: usize| loops_of(e).iter().filter(|&&c| c != 0).count();
        assert_eq!((both(3).max(both(4)), both(3).min(both(4))), (2, 1));
        assert!(mi.to_string().contains("^4"), "{mi}");
    }

    #[test]
    fn massive_zero_momenta() {
        let g = fixtures::sunset();
        let zero = Momenta::new(&g, vec![vec![BigRational::zero(); 4]; 2]).unwrap();
        let mi = momentum_integrand(&g, &zero, 2.0).unwrap();
        assert!(mi.propagators.iter().all(|p| p.mass2 == 4.0));
        let bad = Momenta::new(&g, vec![vec![BigRational::one()], vec![BigRational::one()]]);
        assert!(bad.is_err());
    }

    #[test]
    fn exponents() {
        let g = make_banana(2).unwrap();
        let at4 = build_parametric_two_point(&g, 1.0, 4.0, 0.0).unwrap();
        assert_eq!(at4.p_exponent, 0.0);
        assert_eq!(at4.psi_exponent, 2.0);
        assert!(at4.prefactor_divergent);
        assert!(at4.prefactor.is_none());
        let at3 = build_parametric_two_point(&g, 1.0, 3.0, 0.0).unwrap();
        assert_eq!(at3.p_exponent, -0.5);
        assert_eq!(at3.psi_exponent, 1.0);
        assert_eq!(at3.gamma_argument, 0.5);
        let expect = std::f64::consts::PI.sqrt() / (4.0 * std::f64::consts::PI).powf(1.5);
        assert_relative_eq!(at3.prefactor.unwrap(), expect, max_relative = 1e-14);
        assert_eq!(at3.endpoint_orders(), vec![-0.5, -0.5]);
        // D + z shifts every exponent.
        let shifted = at4.dimreg(-1.0, 2.0).unwrap();
        assert_eq!(shifted.p_exponent, at3.p_exponent);
        assert_eq!(shifted.psi_exponent, at3.psi_exponent);
        assert_eq!(shifted.mu_factor, 2.0);
        assert_eq!(shifted.prefactor, at3.prefactor);
        assert_relative_eq!(at3.exact_if_known().unwrap(), std::f64::consts::PI, max_relative = 1e-14);
    }

    #[test]
    fn mixed_case_is_unsupported() {
        let g = make_banana(2).unwrap();
        let err = build_parametric_two_point(&g, 1.0, 3.0, 1.0).unwrap_err();
        assert_eq!(err.kind(), "unsupported");
        let gl = with_two_point_legs(&g).unwrap();
        let err = build_parametric(&gl, &Momenta::unit_two_point(&gl).unwrap(), 3.0, 1.0).unwrap_err();
        assert_eq!(err.kind(), "unsupported");
        let massive = build_parametric_two_point(&g, 0.0, 3.0, 1.0).unwrap();
        assert_eq!(massive.numerator, Numerator::MassConstant { m2: 1.0 });
        assert_eq!(massive.exact_if_known(), Some(1.0));
    }
}
