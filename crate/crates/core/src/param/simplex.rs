//! Monte Carlo and tensor Gauss–Legendre integration over σ_n.

use std::num::NonZeroUsize;

use gauss_quad::GaussLegendre;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Dirichlet, Distribution};
use rayon::prelude::*;
use serde::Serialize;
use statrs::function::gamma::ln_gamma;

use super::ParametricIntegrand;
use crate::error::{Error, Result};

const CHUNK: u64 = 1 << 14;

/// Sample budget, seed and optional relative accuracy target.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Precision {
    pub samples: u64,
    pub seed: u64,
    pub target_rel: Option<f64>,
}

impl Precision {
    pub fn samples(samples: u64) -> Self {
        Precision {
            samples,
            seed: 0x5eed,
            target_rel: None,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_target(mut self, rel: f64) -> Self {
        self.target_rel = Some(rel);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SimplexEstimate {
    pub estimate: f64,
    pub stderr: f64,
    pub samples: u64,
    pub seed: u64,
    /// Dirichlet parameters of the sampling density.
    pub alphas: Vec<f64>,
}

impl SimplexEstimate {
    pub fn within(&self, exact: f64, sigmas: f64) -> bool {
        (self.estimate - exact).abs() <= sigmas * self.stderr + 1e-12 * exact.abs()
    }
}

/// Neumaier-compensated running sums of w and w².
#[derive(Clone, Copy, Default)]
struct Moments {
    s: f64,
    cs: f64,
    q: f64,
    cq: f64,
    n: u64,
}

fn neumaier(sum: &mut f64, comp: &mut f64, x: f64) {
    let t = *sum + x;
    if sum.abs() >= x.abs() {
        *comp += (*sum - t) + x;
    } else {
        *comp += (x - t) + *sum;
    }
    *sum = t;
}

impl Moments {
    fn push(&mut self, w: f64) {
        neumaier(&mut self.s, &mut self.cs, w);
        neumaier(&mut self.q, &mut self.cq, w * w);
        self.n += 1;
    }

    fn merge(mut self, o: Moments) -> Moments {
        neumaier(&mut self.s, &mut self.cs, o.s + o.cs);
        neumaier(&mut self.q, &mut self.cq, o.q + o.cq);
        self.n += o.n;
        self
    }
}

/// Dirichlet importance sampling of ∫_{σ_n} f.
///
/// `orders[i]` is the exponent e_i of t_i in f near t_i = 0. The sampler is
/// uniform in directions where f is bounded and uses α_i = (e_i + 1)/2
/// otherwise, so the weight still vanishes like t_i^{(e_i+1)/2} and the
/// variance stays finite for e_i > −1.
/// Chunks draw from separate ChaCha streams so the result does not depend on
/// the number of threads.
pub fn integrate_simplex_fn<F>(n: usize, orders: &[f64], f: F, precision: Precision) -> Result<SimplexEstimate>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    if n == 0 || orders.len() != n {
        return Err(Error::Dimension(format!("{} endpoint orders for a simplex in {n} variables", orders.len())));
    }
    if let Some((i, e)) = orders.iter().enumerate().find(|(_, &e)| e <= -1.0) {
        return Err(Error::NotConverged(format!(
            "integrand behaves like t{}^{e} at the boundary and is not integrable",
            i + 1
        )));
    }
    if precision.samples < 2 {
        return Err(Error::budget(precision.samples, 2, "use at least two samples"));
    }
    if n == 1 {
        return Ok(SimplexEstimate {
            estimate: f(&[1.0]),
            stderr: 0.0,
            samples: precision.samples,
            seed: precision.seed,
            alphas: vec![1.0],
        });
    }
    let alphas: Vec<f64> = orders.iter().map(|&e| if e >= 0.0 { 1.0 } else { (e + 1.0) / 2.0 }).collect();
    let dir = Dirichlet::new(&alphas).map_err(|e| Error::Internal(format!("Dirichlet parameters: {e}")))?;
    let log_norm = ln_gamma(alphas.iter().sum()) - alphas.iter().map(|&a| ln_gamma(a)).sum::<f64>();
    let chunks = precision.samples.div_ceil(CHUNK);
    let parts: Vec<Moments> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(precision.seed);
            rng.set_stream(c);
            let count = CHUNK.min(precision.samples - c * CHUNK);
            let mut m = Moments::default();
            let mut drawn = 0;
            while drawn < count {
                let t: Vec<f64> = dir.sample(&mut rng);
                if t.iter().any(|&x| x <= 0.0) {
                    continue;
                }
                let log_pdf = log_norm + t.iter().zip(&alphas).map(|(x, a)| (a - 1.0) * x.ln()).sum::<f64>();
                m.push(f(&t) / log_pdf.exp());
                drawn += 1;
            }
            m
        })
        .collect();
    let total = parts.into_iter().fold(Moments::default(), Moments::merge);
    let nf = total.n as f64;
    let mean = (total.s + total.cs) / nf;
    let var = ((total.q + total.cq) / nf - mean * mean).max(0.0) * nf / (nf - 1.0);
    let stderr = (var / nf).sqrt();
    if !mean.is_finite() || !stderr.is_finite() {
        return Err(Error::NotConverged("non-finite sample values".into()));
    }
    if let Some(rel) = precision.target_rel {
        if stderr > rel * mean.abs() {
            return Err(Error::NotConverged(format!(
                "relative error {:.3e} above target {rel:.1e} after {} samples",
                stderr / mean.abs(),
                total.n
            )));
        }
    }
    Ok(SimplexEstimate {
        estimate: mean,
        stderr,
        samples: total.n,
        seed: precision.seed,
        alphas,
    })
}

/// ∫_{σ_n} P^a / Ψ^b ω_n, without the Γ prefactor.
pub fn integrate_simplex(pi: &ParametricIntegrand, precision: Precision) -> Result<SimplexEstimate> {
    integrate_simplex_fn(pi.edges, &pi.endpoint_orders(), |t| pi.eval(t), precision)
}

/// Tensor Gauss–Legendre on σ_n through t_i = u_i Π_{j<i}(1 − u_j).
pub fn simplex_quadrature(n: usize, nodes: usize, f: &dyn Fn(&[f64]) -> f64) -> f64 {
    fn go(gl: &GaussLegendre, n: usize, t: Vec<f64>, rest: f64, f: &dyn Fn(&[f64]) -> f64) -> f64 {
        if t.len() + 1 == n {
            let mut t = t;
            t.push(rest);
            return f(&t);
        }
        gl.integrate(0.0, 1.0, |u| {
            let mut next = t.clone();
            next.push(u * rest);
            rest * go(gl, n, next, rest * (1.0 - u), f)
        })
    }
    if n == 0 {
        return 0.0;
    }
    let gl = GaussLegendre::new(NonZeroUsize::new(nodes.max(2)).expect("nonzero"));
    go(&gl, n, Vec::with_capacity(n), 1.0, f)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FeynmanTrick {
    pub lhs: f64,
    pub rhs: f64,
    pub agree: bool,
}

/// 1/(q_1⋯q_n) against (n−1)! ∫_{σ_n} (Σ t_i q_i)^{−n}.
pub fn feynman_trick_check(q: &[BigRational]) -> Result<FeynmanTrick> {
    let qs: Vec<f64> = q.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect();
    if qs.is_empty() || qs.iter().any(|&x| !(x > 0.0)) {
        return Err(Error::Dimension("Feynman trick needs positive denominators".into()));
    }
    let n = qs.len();
    let lhs = 1.0 / qs.iter().product::<f64>();
    let fact: f64 = (1..n).map(|k| k as f64).product();
    let nodes = if n <= 4 { 40 } else { 16 };
    let integral = simplex_quadrature(n, nodes, &|t| {
        let s: f64 = t.iter().zip(&qs).map(|(a, b)| a * b).sum();
        s.powi(-(n as i32))
    });
    let rhs = fact * integral;
    Ok(FeynmanTrick {
        lhs,
        rhs,
        agree: ((lhs - rhs) / lhs).abs() < 1e-8,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::make_banana;
    use crate::param::build_parametric_two_point;
    use approx::assert_relative_eq;
    use num_traits::FromPrimitive;
    use rand::Rng;

    fn r(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn volume() {
        for n in 1..=5 {
            let fact: f64 = (1..n).map(|k| k as f64).product();
            assert_relative_eq!(simplex_quadrature(n, 8, &|_| 1.0), 1.0 / fact, max_relative = 1e-13);
            let mc = integrate_simplex_fn(n, &vec![0.0; n], |_| 1.0, Precision::samples(4000)).unwrap();
            assert_relative_eq!(mc.estimate, 1.0 / fact, max_relative = 1e-12);
        }
    }

    #[test]
    fn feynman_trick() {
        let one = feynman_trick_check(&[r(1, 1), r(1, 1)]).unwrap();
        assert!(one.agree);
        assert_relative_eq!(one.rhs, 1.0, max_relative = 1e-12);
        let half = feynman_trick_check(&[r(1, 1), r(2, 1)]).unwrap();
        assert_relative_eq!(half.rhs, 0.5, max_relative = 1e-12);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..5 {
            let q: Vec<BigRational> = (0..3).map(|_| r(rng.gen_range(1..20), rng.gen_range(1..9))).collect();
            let c = feynman_trick_check(&q).unwrap();
            assert!(c.agree, "{q:?}: {c:?}");
        }
        assert!(feynman_trick_check(&[r(1, 1), r(-1, 1)]).is_err());
        assert!(feynman_trick_check(&[BigRational::from_f64(0.0).unwrap()]).is_err());
    }

    #[test]
    fn deterministic_across_thread_counts() {
        let pi = build_parametric_two_point(&make_banana(2).unwrap(), 1.0, 3.0, 0.0).unwrap();
        let p = Precision::samples(50_000).with_seed(11);
        let a = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap().install(|| integrate_simplex(&pi, p));
        let b = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap().install(|| integrate_simplex(&pi, p));
        assert_eq!(a.unwrap(), b.unwrap());
    }

    #[test]
    fn bubble_matches_beta() {
        let g = make_banana(2).unwrap();
        let pi = build_parametric_two_point(&g, 1.0, 3.0, 0.0).unwrap();
        let est = integrate_simplex(&pi, Precision::samples(200_000)).unwrap();
        assert!(est.within(std::f64::consts::PI, 3.0), "{est:?}");
        let p2 = build_parametric_two_point(&g, 2.0, 3.0, 0.0).unwrap();
        let est2 = integrate_simplex(&p2, Precision::samples(200_000)).unwrap();
        assert!(est2.within(p2.exact_if_known().unwrap(), 3.0), "{est2:?}");
    }

    #[test]
    fn divergent_and_unconverged() {
        let g = make_banana(2).unwrap();
        // D = 2: t^{−1} at both ends.
        let pi = build_parametric_two_point(&g, 1.0, 2.0, 0.0).unwrap();
        assert_eq!(integrate_simplex(&pi, Precision::samples(100)).unwrap_err().kind(), "not_converged");
        let pi = build_parametric_two_point(&g, 1.0, 3.0, 0.0).unwrap();
        let err = integrate_simplex(&pi, Precision::samples(100).with_target(1e-9)).unwrap_err();
        assert!(err.is_budget());
    }
}
