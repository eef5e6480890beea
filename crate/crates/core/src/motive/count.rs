//! Brute-force point counts over prime fields.
//!
//! Every count enumerates the affine space in fixed-size blocks spread over
//! the rayon pool; block results are integers, so the total does not depend
//! on the number of threads.

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::poly::IntPoly;
use crate::symanzik::psi_spanning_forests;

/// Default limit on the number of enumerated points.
pub const DEFAULT_BUDGET: u64 = 1_000_000_000;

const BLOCK: u64 = 1 << 14;

/// The field 𝔽_q for a prime q ≤ 2³¹.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    q: u64,
}

impl PrimeField {
    pub fn new(q: u64) -> Result<Self> {
        if !(2..=1 << 31).contains(&q) || !is_prime(q) {
            return Err(Error::InvalidTheory(format!("{q} is not a prime at most 2^31")));
        }
        Ok(PrimeField { q })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.q
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.q - b) % self.q
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.q
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1 % self.q;
        a %= self.q;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(!a.is_multiple_of(self.q));
        self.pow(a, self.q - 2)
    }

    pub fn from_i64(&self, a: i64) -> u64 {
        a.rem_euclid(self.q as i64) as u64
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// q^n if it fits under `budget`.
pub fn checked_space(q: u64, n: usize, budget: u64) -> Result<u64> {
    let mut size: u64 = 1;
    for _ in 0..n {
        size = match size.checked_mul(q) {
            Some(s) if s <= budget => s,
            _ => {
                return Err(Error::budget(
                    format!("{q}^{n} points"),
                    budget,
                    "lower q or use a smaller graph",
                ))
            }
        };
    }
    Ok(size)
}

/// Polynomial reduced mod q, ready for repeated evaluation.
#[derive(Clone, Debug)]
struct ModPoly {
    field: PrimeField,
    terms: Vec<(u64, Vec<(usize, u32)>)>,
}

impl ModPoly {
    fn new(p: &IntPoly, field: PrimeField) -> Self {
        let terms = p
            .reduce_mod(field.q())
            .into_iter()
            .map(|(c, e)| {
                let vars = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &k)| k > 0)
                    .map(|(i, &k)| (i, k))
                    .collect();
                (c, vars)
            })
            .collect();
        ModPoly { field, terms }
    }

    fn eval(&self, x: &[u64]) -> u64 {
        let f = self.field;
        let mut acc = 0;
        for (c, vars) in &self.terms {
            let mut t = *c;
            for &(i, k) in vars {
                for _ in 0..k {
                    t = f.mul(t, x[i]);
                }
            }
            acc = f.add(acc, t);
        }
        acc
    }

    /// Split as a·x_v + b where no term has x_v to a higher power.
    fn split_linear(&self, v: usize) -> Option<(ModPoly, ModPoly)> {
        let mut a = Vec::new();
        let mut b = Vec::new();
        for (c, vars) in &self.terms {
            match vars.iter().find(|(i, _)| *i == v) {
                None => b.push((*c, vars.clone())),
                Some(&(_, 1)) => a.push((*c, vars.iter().copied().filter(|(i, _)| *i != v).collect())),
                Some(_) => return None,
            }
        }
        Some((
            ModPoly {
                field: self.field,
                terms: a,
            },
            ModPoly {
                field: self.field,
                terms: b,
            },
        ))
    }
}

/// Sum `f(point)` over 𝔽_q^n (points with coordinates in `lo..q`).
fn sum_over_space<F>(q: u64, n: usize, lo: u64, budget: u64, f: F) -> Result<u64>
where
    F: Fn(&[u64]) -> u64 + Sync,
{
    let base = q - lo;
    let size = checked_space(base, n, budget)?;
    let blocks = size.div_ceil(BLOCK);
    Ok((0..blocks)
        .into_par_iter()
        .map(|b| {
            let start = b * BLOCK;
            let end = (start + BLOCK).min(size);
            let mut x = vec![0u64; n];
            let mut r = start;
            for xi in x.iter_mut() {
                *xi = lo + r % base;
                r /= base;
            }
            let mut acc = 0u64;
            for _ in start..end {
                acc += f(&x);
                for xi in x.iter_mut() {
                    *xi += 1;
                    if *xi < q {
                        break;
                    }
                    *xi = lo;
                }
            }
            acc
        })
        .sum())
}

/// Zeros in 𝔽_q^n (or in the torus (𝔽_q^×)^n when `torus` is set).
///
/// When some variable occurs at most linearly, only the other n − 1
/// coordinates are enumerated and the count along that line is solved for.
fn count_zeros(poly: &IntPoly, field: PrimeField, torus: bool, budget: u64) -> Result<u64> {
    let q = field.q();
    let n = poly.nvars();
    let mp = ModPoly::new(poly, field);
    let lo = u64::from(torus);
    if n == 0 {
        return Ok(u64::from(mp.eval(&[]) == 0));
    }
    let linear = (0..n).rev().find_map(|v| mp.split_linear(v).map(|ab| (v, ab)));
    match linear {
        Some((v, (a, b))) => {
            let line = q - lo;
            sum_over_space(q, n - 1, lo, budget, |y| {
                let mut x = Vec::with_capacity(n);
                x.extend_from_slice(&y[..v]);
                x.push(0);
                x.extend_from_slice(&y[v..]);
                let (av, bv) = (a.eval(&x), b.eval(&x));
                if av != 0 {
                    // Unique root −b/a; in the torus it must be nonzero.
                    u64::from(!torus || bv != 0)
                } else if bv == 0 {
                    line
                } else {
                    0
                }
            })
        }
        None => sum_over_space(q, n, lo, budget, |x| u64::from(mp.eval(x) == 0)),
    }
}

/// #{t ∈ 𝔽_qⁿ : poly(t) = 0}.
pub fn point_count_hypersurface(poly: &IntPoly, field: PrimeField) -> Result<u64> {
    point_count_with_budget(poly, field, DEFAULT_BUDGET)
}

pub fn point_count_with_budget(poly: &IntPoly, field: PrimeField, budget: u64) -> Result<u64> {
    checked_space(field.q(), poly.nvars(), budget)?;
    count_zeros(poly, field, false, budget)
}

/// Zeros with every coordinate nonzero.
pub fn torus_point_count(poly: &IntPoly, field: PrimeField) -> Result<u64> {
    checked_space(field.q() - 1, poly.nvars(), DEFAULT_BUDGET)?;
    count_zeros(poly, field, true, DEFAULT_BUDGET)
}

/// Points of the projective hypersurface of a homogeneous polynomial:
/// (#affine zeros − 1)/(q − 1).
pub fn projective_point_count(poly: &IntPoly, field: PrimeField) -> Result<u64> {
    let affine = point_count_hypersurface(poly, field)?;
    let q = field.q();
    if affine == 0 {
        return Ok(0);
    }
    if (affine - 1) % (q - 1) != 0 {
        return Err(Error::Unsupported(
            "projective count needs a homogeneous polynomial".into(),
        ));
    }
    Ok((affine - 1) / (q - 1))
}

/// Points of 𝔸ⁿ ∖ X̂_Γ, the inverse propagator of the motivic Feynman rule,
/// with n the number of internal edges.
pub fn motivic_feynman_rule(g: &Graph, field: PrimeField) -> Result<BigInt> {
    let psi = psi_spanning_forests(g)?;
    let total = checked_space(field.q(), g.edge_count(), DEFAULT_BUDGET)?;
    let zeros = point_count_hypersurface(&psi, field)?;
    Ok(BigInt::from(total - zeros))
}

/// q^n as a big integer.
pub fn field_power(field: PrimeField, n: usize) -> BigInt {
    num_traits::pow(BigInt::from(field.q()), n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{disjoint_union, make_banana, make_cycle};
    use crate::motive::class::{affine_cone_class, banana_class};
    use crate::symanzik::psi_spanning_trees;

    fn f(q: u64) -> PrimeField {
        PrimeField::new(q).unwrap()
    }

    #[test]
    fn primes() {
        assert!(PrimeField::new(4).is_err());
        assert!(PrimeField::new(1).is_err());
        assert_eq!(f(7).inv(3), 5);
    }

    #[test]
    fn trivial_counts() {
        let zero = IntPoly::zero(3);
        assert_eq!(point_count_hypersurface(&zero, f(3)).unwrap(), 27);
        let t1 = IntPoly::var(3, 0);
        assert_eq!(point_count_hypersurface(&t1, f(5)).unwrap(), 25);
        let sq = IntPoly::parse("t1^2 + 1", 1).unwrap();
        assert_eq!(point_count_hypersurface(&sq, f(5)).unwrap(), 2);
        assert_eq!(point_count_hypersurface(&sq, f(7)).unwrap(), 0);
    }

    #[test]
    fn banana_three_over_f2() {
        let psi = psi_spanning_trees(&make_banana(3).unwrap()).unwrap();
        assert_eq!(point_count_hypersurface(&psi, f(2)).unwrap(), 4);
        let g = make_banana(3).unwrap();
        assert_eq!(motivic_feynman_rule(&g, f(2)).unwrap(), BigInt::from(4));
        assert_eq!(projective_point_count(&psi, f(5)).unwrap(), 6);
    }

    #[test]
    fn banana_classes_match_counts() {
        for n in 2..=5u32 {
            let psi = psi_spanning_trees(&make_banana(n as usize).unwrap()).unwrap();
            let cone = affine_cone_class(&banana_class(n).unwrap());
            for q in [2u64, 3, 5, 7] {
                let count = point_count_hypersurface(&psi, f(q)).unwrap();
                assert_eq!(BigInt::from(count), cone.eval_u64(q).unwrap(), "n={n} q={q}");
            }
        }
    }

    #[test]
    fn tree_never_vanishes() {
        let tree = Graph::new(3, vec![(0, 1), (1, 2)], vec![]).unwrap();
        assert_eq!(motivic_feynman_rule(&tree, f(3)).unwrap(), BigInt::from(9));
    }

    #[test]
    fn multiplicative_over_unions() {
        let a = make_banana(3).unwrap();
        let b = make_cycle(3).unwrap();
        let u = disjoint_union(&a, &b);
        for q in [2, 3, 5] {
            assert_eq!(
                motivic_feynman_rule(&u, f(q)).unwrap(),
                motivic_feynman_rule(&a, f(q)).unwrap() * motivic_feynman_rule(&b, f(q)).unwrap()
            );
        }
    }

    #[test]
    fn brute_force_agrees_with_line_solving() {
        let p = IntPoly::parse("t1*t2 + t2*t3 + 2*t1*t3 + t3", 3).unwrap();
        let field = f(5);
        let mp = ModPoly::new(&p, field);
        let direct = sum_over_space(5, 3, 0, DEFAULT_BUDGET, |x| u64::from(mp.eval(x) == 0)).unwrap();
        assert_eq!(point_count_hypersurface(&p, field).unwrap(), direct);
        let direct_t = sum_over_space(5, 3, 1, DEFAULT_BUDGET, |x| u64::from(mp.eval(x) == 0)).unwrap();
        assert_eq!(torus_point_count(&p, field).unwrap(), direct_t);
    }

    #[test]
    fn budget_is_enforced() {
        let p = IntPoly::zero(10);
        let err = point_count_hypersurface(&p, f(11)).unwrap_err();
        assert!(err.is_budget());
    }
}
