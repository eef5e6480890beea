//! Laurent expansions of Γ and truncated floating-point Laurent series.

use serde::Serialize;
use statrs::function::gamma::{digamma, gamma, ln_gamma};

use crate::error::{Error, Result};

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Σ c_j x^j for j from `val` to `val + coeffs.len() − 1`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FloatLaurent {
    pub val: i32,
    pub coeffs: Vec<f64>,
}

impl FloatLaurent {
    pub fn constant(c: f64, len: usize) -> Self {
        let mut coeffs = vec![0.0; len.max(1)];
        coeffs[0] = c;
        FloatLaurent { val: 0, coeffs }
    }

    /// Coefficient of x^j, zero outside the stored range below the top.
    pub fn coeff(&self, j: i32) -> f64 {
        let i = j - self.val;
        if i < 0 {
            return 0.0;
        }
        self.coeffs.get(i as usize).copied().unwrap_or(0.0)
    }

    /// Highest exponent known (exclusive bound is this plus one).
    pub fn top(&self) -> i32 {
        self.val + self.coeffs.len() as i32 - 1
    }

    /// Product, keeping terms up to the lower known top.
    pub fn mul(&self, other: &FloatLaurent) -> FloatLaurent {
        let val = self.val + other.val;
        let top = (self.top() + other.val).min(other.top() + self.val);
        let len = (top - val + 1).max(0) as usize;
        let mut coeffs = vec![0.0; len];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j < len {
                    coeffs[i + j] += a * b;
                }
            }
        }
        FloatLaurent { val, coeffs }
    }

    /// Reciprocal of a series whose leading coefficient is nonzero.
    pub fn recip(&self) -> Result<FloatLaurent> {
        let a0 = self.coeffs.first().copied().unwrap_or(0.0);
        if a0 == 0.0 {
            return Err(Error::Unsupported("reciprocal of a series with zero leading term".into()));
        }
        let n = self.coeffs.len();
        let mut b = vec![0.0; n];
        b[0] = 1.0 / a0;
        for k in 1..n {
            let s: f64 = (1..=k).map(|i| self.coeffs[i] * b[k - i]).sum();
            b[k] = -s / a0;
        }
        Ok(FloatLaurent {
            val: -self.val,
            coeffs: b,
        })
    }

    /// Substitute x → s·x.
    pub fn rescale(&self, s: f64) -> FloatLaurent {
        FloatLaurent {
            val: self.val,
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| c * s.powi(self.val + i as i32))
                .collect(),
        }
    }

    /// exp(a·x) up to x^{len−1}.
    pub fn exp_linear(a: f64, len: usize) -> FloatLaurent {
        let mut coeffs = Vec::with_capacity(len);
        let mut term = 1.0;
        for k in 0..len {
            coeffs.push(term);
            term *= a / (k + 1) as f64;
        }
        FloatLaurent { val: 0, coeffs }
    }

    fn exp_series(s: &[f64]) -> Vec<f64> {
        // exp of a power series with s[0] = 0: n e_n = Σ k s_k e_{n−k}.
        let n = s.len();
        let mut e = vec![0.0; n];
        e[0] = 1.0;
        for m in 1..n {
            let acc: f64 = (1..=m).map(|k| k as f64 * s[k] * e[m - k]).sum();
            e[m] = acc / m as f64;
        }
        e
    }
}

/// Hurwitz ζ(s, a) for integer s ≥ 2 and a ≥ 1 by Euler–Maclaurin.
pub fn hurwitz_zeta(s: u32, a: f64) -> f64 {
    const B2K: [f64; 7] = [
        1.0 / 6.0,
        -1.0 / 30.0,
        1.0 / 42.0,
        -1.0 / 30.0,
        5.0 / 66.0,
        -691.0 / 2730.0,
        7.0 / 6.0,
    ];
    let n = 12;
    let s_f = f64::from(s);
    let mut sum: f64 = (0..n).map(|k| (a + k as f64).powf(-s_f)).sum();
    let x = a + n as f64;
    sum += x.powf(1.0 - s_f) / (s_f - 1.0) + 0.5 * x.powf(-s_f);
    // Rising factorial s(s+1)…(s+2k−2) / (2k)!.
    let mut rising = s_f;
    let mut fact = 2.0;
    let mut xp = x.powf(-s_f - 1.0);
    for (k, b) in B2K.iter().enumerate() {
        sum += b / fact * rising * xp;
        let k2 = 2.0 * (k as f64 + 1.0);
        rising *= (s_f + k2 - 1.0) * (s_f + k2);
        fact *= (k2 + 1.0) * (k2 + 2.0);
        xp /= x * x;
    }
    sum
}

/// Γ(b + x) as a power series in x for b ≥ 1, through x^{len−1}.
fn gamma_taylor(b: f64, len: usize) -> Vec<f64> {
    // ln Γ(b + x) = ln Γ(b) + ψ(b) x + Σ_{k≥2} (−1)^k ζ(k, b) x^k / k.
    let mut s = vec![0.0; len.max(2)];
    s[1] = digamma(b);
    for (k, sk) in s.iter_mut().enumerate().skip(2) {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        *sk = sign * hurwitz_zeta(k as u32, b) / k as f64;
    }
    let g0 = ln_gamma(b).exp();
    let mut e = FloatLaurent::exp_series(&s);
    e.truncate(len);
    e.iter_mut().for_each(|c| *c *= g0);
    e
}

/// Laurent coefficients of Γ(w) at w = a, from (w−a)^{−1} when a is a pole.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GammaLaurent {
    pub a: f64,
    pub pole: bool,
    pub series: FloatLaurent,
}

impl GammaLaurent {
    pub fn residue(&self) -> f64 {
        self.series.coeff(-1)
    }
}

/// Is `a` one of 0, −1, −2, …?
pub fn is_gamma_pole(a: f64) -> bool {
    a <= 0.0 && a == a.round()
}

/// Γ(a + x) expanded to x^order by shifting a up with the recurrence.
pub fn gamma_laurent(a: f64, order: usize) -> Result<GammaLaurent> {
    if !a.is_finite() {
        return Err(Error::Dimension(format!("expansion point {a} is not finite")));
    }
    let len = order + 2;
    // Γ(a + x) = Γ(a + m + x) / Π_{i<m} (a + i + x).
    let m = if a >= 1.0 { 0 } else { (1.0 - a).ceil() as usize };
    let mut series = FloatLaurent {
        val: 0,
        coeffs: gamma_taylor(a + m as f64, len + 1),
    };
    let mut pole = false;
    for i in 0..m {
        let c = a + i as f64;
        let factor = if c.abs() < 1e-300 || (is_gamma_pole(a) && i as f64 == -a) {
            pole = true;
            FloatLaurent {
                val: -1,
                coeffs: vec![1.0; 1].into_iter().chain(std::iter::repeat_n(0.0, len + 1)).collect(),
            }
        } else {
            let lin = FloatLaurent {
                val: 0,
                coeffs: [c, 1.0].into_iter().chain(std::iter::repeat_n(0.0, len)).collect(),
            };
            lin.recip()?
        };
        series = series.mul(&factor);
    }
    let top = order as i32;
    let keep = (top - series.val + 1).max(0) as usize;
    series.coeffs.truncate(keep);
    Ok(GammaLaurent { a, pole, series })
}

/// Γ at a real point, with poles reported as errors.
pub fn gamma_value(x: f64) -> Result<f64> {
    if is_gamma_pole(x) {
        return Err(Error::Dimension(format!("Γ has a pole at {x}")));
    }
    Ok(gamma(x))
}
