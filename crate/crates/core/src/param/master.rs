//! Closed form of the two-loop self-energy with a doubled propagator,
//!
//! f(D, p²) = (4π)^{−D} Γ(2−D/2) Γ(D/2−1)³ Γ(5−D) Γ(D−4)
//!            / (Γ(D−2) Γ(4−D/2) Γ(3D/2−5)) · (p²)^{D−5},
//!
//! its pole structure and its Laurent expansion in z at D = D₀ − z.

use serde::Serialize;
use statrs::function::gamma::gamma;

use super::gamma::{gamma_laurent, is_gamma_pole, FloatLaurent};
use crate::error::{Error, Result};

/// Γ(c0 + c1·D)^power, in the numerator or the denominator.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GammaFactor {
    pub label: &'static str,
    pub c0: f64,
    pub c1: f64,
    pub power: u32,
    pub numerator: bool,
}

impl GammaFactor {
    pub fn argument(&self, d: f64) -> f64 {
        self.c0 + self.c1 * d
    }
}

pub fn master_factors() -> Vec<GammaFactor> {
    let f = |label, c0, c1, power, numerator| GammaFactor {
        label,
        c0,
        c1,
        power,
        numerator,
    };
    vec![
        f("Γ(2−D/2)", 2.0, -0.5, 1, true),
        f("Γ(D/2−1)", -1.0, 0.5, 3, true),
        f("Γ(5−D)", 5.0, -1.0, 1, true),
        f("Γ(D−4)", -4.0, 1.0, 1, true),
        f("Γ(D−2)", -2.0, 1.0, 1, false),
        f("Γ(4−D/2)", 4.0, -0.5, 1, false),
        f("Γ(3D/2−5)", -5.0, 1.5, 1, false),
    ]
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PoleReport {
    pub d: f64,
    /// Numerator factors sitting on a pole of Γ.
    pub poles: Vec<&'static str>,
    /// Denominator factors sitting on a pole of Γ, giving zeros.
    pub zeros: Vec<&'static str>,
    /// Net pole order in D.
    pub order: i32,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MasterEval {
    Finite { value: f64 },
    Pole(PoleReport),
}

fn check_p2(p2: f64) -> Result<()> {
    if !(p2 > 0.0 && p2.is_finite()) {
        return Err(Error::Momentum(format!("p² must be positive, got {p2}")));
    }
    Ok(())
}

fn raw_value(d: f64, p2: f64) -> f64 {
    let mut v = (4.0 * std::f64::consts::PI).powf(-d) * p2.powf(d - 5.0);
    for f in master_factors() {
        let g = gamma(f.argument(d)).powi(f.power as i32);
        if f.numerator {
            v *= g;
        } else {
            v /= g;
        }
    }
    v
}

/// Value of the closed form, or a report naming the singular Γ factors.
pub fn eval_master_two_loop(d: f64, p2: f64) -> Result<MasterEval> {
    check_p2(p2)?;
    if !d.is_finite() {
        return Err(Error::Dimension(format!("dimension {d} is not finite")));
    }
    let mut poles = Vec::new();
    let mut zeros = Vec::new();
    let mut order = 0i32;
    for f in master_factors() {
        if is_gamma_pole(f.argument(d)) {
            if f.numerator {
                poles.push(f.label);
                order += f.power as i32;
            } else {
                zeros.push(f.label);
                order -= f.power as i32;
            }
        }
    }
    if poles.is_empty() && zeros.is_empty() {
        return Ok(MasterEval::Finite { value: raw_value(d, p2) });
    }
    Ok(MasterEval::Pole(PoleReport { d, poles, zeros, order }))
}

/// Laurent expansion of f(D₀ − z, p²) in z through z^order.
pub fn master_laurent(d0: f64, p2: f64, order: usize) -> Result<FloatLaurent> {
    check_p2(p2)?;
    let extra = 2 * master_factors().len();
    let len = order + extra + 2;
    let mut acc = FloatLaurent::exp_linear((4.0 * std::f64::consts::PI).ln() - p2.ln(), len)
        .mul(&FloatLaurent::constant((4.0 * std::f64::consts::PI).powf(-d0) * p2.powf(d0 - 5.0), len));
    for f in master_factors() {
        // Γ(a − c1·z) with a the argument at D₀.
        let g = gamma_laurent(f.argument(d0), order + extra)?.series.rescale(-f.c1);
        let g = if f.numerator { g } else { g.recip()? };
        for _ in 0..f.power {
            acc = acc.mul(&g);
        }
    }
    let keep = (order as i32 - acc.val + 1).max(0) as usize;
    if acc.coeffs.len() < keep {
        return Err(Error::Internal("Laurent expansion lost precision".into()));
    }
    acc.coeffs.truncate(keep);
    Ok(acc)
}

/// Leading two Laurent coefficients of f(D₀ − z) for a pole of order k,
/// from g(z) = z^k f(D₀ − z): g(0) and g'(0) by Richardson-extrapolated
/// central differences with step h.
pub fn residue_by_differences(d0: f64, p2: f64, k: u32, h: f64) -> Result<[f64; 2]> {
    check_p2(p2)?;
    let g = |z: f64| z.powi(k as i32) * raw_value(d0 - z, p2);
    let mean = |h: f64| (g(h) + g(-h)) / 2.0;
    let slope = |h: f64| (g(h) - g(-h)) / (2.0 * h);
    let rich = |a: &dyn Fn(f64) -> f64| (4.0 * a(h / 2.0) - a(h)) / 3.0;
    let out = [rich(&mean), rich(&slope)];
    if out.iter().any(|x| !x.is_finite()) {
        return Err(Error::NotConverged(format!("finite differences at step {h} are not finite")));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn pole_at_four() {
        let MasterEval::Pole(r) = eval_master_two_loop(4.0, 1.0).unwrap() else {
            panic!("expected a pole");
        };
        assert!(r.poles.contains(&"Γ(D−4)"));
        assert!(r.poles.contains(&"Γ(2−D/2)"));
        assert!(r.zeros.is_empty());
        assert_eq!(r.order, 2);
        assert!(eval_master_two_loop(4.0, 0.0).is_err());
    }

    #[test]
    fn finite_and_scaling() {
        let MasterEval::Finite { value } = eval_master_two_loop(4.5, 1.0).unwrap() else {
            panic!("expected a value");
        };
        // Pinned from the first evaluation of the closed form.
        assert_relative_eq!(value, -1.155_277_207_092_479_2e-4, max_relative = 1e-12);
        let MasterEval::Finite { value: v2 } = eval_master_two_loop(4.5, 2.0).unwrap() else {
            panic!("expected a value");
        };
        assert_relative_eq!(v2 / value, 2f64.powf(-0.5), max_relative = 1e-14);
    }

    #[test]
    fn laurent_matches_differences() {
        let s = master_laurent(4.0, 1.0, 1).unwrap();
        assert_eq!(s.val, -2);
        let [c2, c1] = residue_by_differences(4.0, 1.0, 2, 1e-3).unwrap();
        assert_relative_eq!(s.coeff(-2), c2, max_relative = 1e-6);
        assert_relative_eq!(s.coeff(-1), c1, max_relative = 1e-6);
        // Regular point: the expansion reproduces the value and the slope.
        let r = master_laurent(4.5, 1.0, 2).unwrap();
        let [v, dv] = residue_by_differences(4.5, 1.0, 0, 1e-3).unwrap();
        assert_relative_eq!(r.coeff(0), v, max_relative = 1e-9);
        assert_relative_eq!(r.coeff(1), dv, max_relative = 1e-6);
    }
}
