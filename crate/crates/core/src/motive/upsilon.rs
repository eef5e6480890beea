//! The linear map Υ: 𝔸ⁿ → 𝔸^{ℓ²}, determinant hypersurfaces and the strata
//! of the divisor Σ_{ℓ,g}.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::count::{checked_space, field_power, PrimeField, DEFAULT_BUDGET};
use super::linalg::{determinant, nullspace};
use crate::error::{Error, Result};
use crate::graph::{Graph, LoopBasis};
use crate::poly::IntPoly;
use crate::symanzik::{bareiss_determinant, graph_matrix};

/// Υ(t) = Σ_i t_i η_i η_iᵀ, stored as one symmetric ℓ×ℓ matrix per edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UpsilonMap {
    pub ell: usize,
    pub edge_matrices: Vec<Vec<Vec<i64>>>,
}

impl UpsilonMap {
    pub fn new(g: &Graph, basis: &LoopBasis) -> Result<Self> {
        if let Some(e) = g.first_looping_edge() {
            return Err(Error::LoopingEdge(e));
        }
        let ell = basis.loop_count();
        let edge_matrices = basis
            .eta
            .iter()
            .map(|row| {
                (0..ell)
                    .map(|k| (0..ell).map(|r| i64::from(row[k]) * i64::from(row[r])).collect())
                    .collect()
            })
            .collect();
        Ok(UpsilonMap { ell, edge_matrices })
    }

    /// The ℓ² × n matrix of the linear map (entry (k,r) flattened row-major).
    pub fn linear_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.edge_matrices.len();
        let mut out = vec![vec![0; n]; self.ell * self.ell];
        for (i, m) in self.edge_matrices.iter().enumerate() {
            for k in 0..self.ell {
                for r in 0..self.ell {
                    out[k * self.ell + r][i] = m[k][r];
                }
            }
        }
        out
    }

    /// Rank over ℚ; equal to n exactly when Υ is injective.
    pub fn rank(&self) -> usize {
        rational_rank(&self.linear_matrix())
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.edge_matrices.len()
    }

    /// det Υ(t) as a polynomial in the edge variables.
    pub fn determinant(&self, g: &Graph, basis: &LoopBasis) -> Result<IntPoly> {
        bareiss_determinant(graph_matrix(g, basis)?, g.edge_count())
    }
}

fn rational_rank(m: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
        .collect();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let pivot = a[rank][c].clone();
        for i in rank + 1..rows {
            if !a[i][c].is_zero() {
                let k = &a[i][c] / &pivot;
                for j in c..cols {
                    let sub = &k * &a[rank][j];
                    a[i][j] -= sub;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Number of singular ℓ×ℓ matrices over 𝔽_q: q^{ℓ²} − Π_{k<ℓ}(q^ℓ − q^k).
pub fn det_hypersurface_count(ell: usize, field: PrimeField) -> BigInt {
    let total = field_power(field, ell * ell);
    let ql = field_power(field, ell);
    let invertible = (0..ell).fold(BigInt::one(), |acc, k| acc * (&ql - field_power(field, k)));
    total - invertible
}

/// Same count by enumerating every matrix.
pub fn det_hypersurface_bruteforce(ell: usize, field: PrimeField) -> Result<u64> {
    let full: Vec<Vec<u64>> = (0..ell * ell)
        .map(|i| {
            let mut v = vec![0; ell * ell];
            v[i] = 1;
            v
        })
        .collect();
    Ok(checked_space(field.q(), ell * ell, DEFAULT_BUDGET)? - count_nonsingular(ell, field, &full)?)
}

/// A linear component of Σ_{ℓ,g}; indices are 1-based as in x_{ij}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StratumComponent {
    /// x_{ij} = 0 for 1 ≤ i < j ≤ f − 1.
    OffDiagonal { i: usize, j: usize },
    /// x_{i1} + … + x_{i,f−1} = 0 for 1 ≤ i ≤ f − 1.
    RowSum { i: usize },
}

/// Number of faces f = ℓ − 2g + 1.
pub fn face_count(ell: usize, genus: usize) -> Result<usize> {
    if 2 * genus > ell || ell == 0 {
        return Err(Error::Dimension(format!("no faces for loops {ell}, genus {genus}")));
    }
    Ok(ell - 2 * genus + 1)
}

/// All C(f, 2) components: off-diagonal ones first, then row sums.
pub fn stratum_components(ell: usize, genus: usize) -> Result<Vec<StratumComponent>> {
    let f = face_count(ell, genus)?;
    let mut out = Vec::new();
    for i in 1..f {
        for j in i + 1..f {
            out.push(StratumComponent::OffDiagonal { i, j });
        }
    }
    for i in 1..f {
        out.push(StratumComponent::RowSum { i });
    }
    Ok(out)
}

/// #((∩_{c ∈ I} L_c) ∖ D̂_ℓ)(𝔽_q), enumerating only the linear subspace.
pub fn divisor_stratum_count(
    ell: usize,
    genus: usize,
    subset: &[StratumComponent],
    field: PrimeField,
) -> Result<u64> {
    let f = face_count(ell, genus)?;
    let n = ell * ell;
    let idx = |i: usize, j: usize| (i - 1) * ell + (j - 1);
    let mut eqs = Vec::new();
    for c in subset {
        let mut row = vec![0u64; n];
        match *c {
            StratumComponent::OffDiagonal { i, j } => {
                if !(1 <= i && i < j && j < f) {
                    return Err(Error::Dimension(format!("no component x_{i}{j} for f = {f}")));
                }
                row[idx(i, j)] = 1;
            }
            StratumComponent::RowSum { i } => {
                if !(1 <= i && i < f) {
                    return Err(Error::Dimension(format!("no row-sum component {i} for f = {f}")));
                }
                for j in 1..f {
                    row[idx(i, j)] = 1;
                }
            }
        }
        eqs.push(row);
    }
    let basis = if eqs.is_empty() {
        (0..n)
            .map(|i| {
                let mut v = vec![0; n];
                v[i] = 1;
                v
            })
            .collect()
    } else {
        nullspace(field, &eqs, n)
    };
    count_nonsingular(ell, field, &basis)
}

/// Nonsingular matrices in the span of `basis` (vectors of length ℓ²).
fn count_nonsingular(ell: usize, field: PrimeField, basis: &[Vec<u64>]) -> Result<u64> {
    let q = field.q();
    let dim = basis.len();
    let size = checked_space(q, dim, DEFAULT_BUDGET)?;
    let mut coeffs = vec![0u64; dim];
    let mut count = 0;
    for _ in 0..size {
        let mut m = vec![vec![0u64; ell]; ell];
        for (c, b) in coeffs.iter().zip(basis) {
            if *c == 0 {
                continue;
            }
            for (pos, &x) in b.iter().enumerate() {
                let cell = &mut m[pos / ell][pos % ell];
                *cell = field.add(*cell, field.mul(*c, x));
            }
        }
        if determinant(field, &m) != 0 {
            count += 1;
        }
        for c in coeffs.iter_mut() {
            *c += 1;
            if *c < q {
                break;
            }
            *c = 0;
        }
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_banana, make_wheel};
    use crate::symanzik::psi_spanning_trees;

    fn f(q: u64) -> PrimeField {
        PrimeField::new(q).unwrap()
    }

    #[test]
    fn upsilon_examples() {
        let b2 = make_banana(2).unwrap();
        let basis = LoopBasis::dfs(&b2);
        let u = UpsilonMap::new(&b2, &basis).unwrap();
        assert_eq!(u.determinant(&b2, &basis).unwrap().to_string(), "t1 + t2");
        let k4 = make_wheel(3).unwrap();
        let basis = LoopBasis::dfs(&k4);
        let u = UpsilonMap::new(&k4, &basis).unwrap();
        assert_eq!(u.ell, 3);
        assert_eq!(u.determinant(&k4, &basis).unwrap(), psi_spanning_trees(&k4).unwrap());
        assert!(u.is_injective());
        let b3 = make_banana(3).unwrap();
        assert!(UpsilonMap::new(&b3, &LoopBasis::dfs(&b3)).unwrap().is_injective());
        let tad = Graph::new(1, vec![(0, 0)], vec![]).unwrap();
        assert!(UpsilonMap::new(&tad, &LoopBasis::dfs(&tad)).is_err());
    }

    #[test]
    fn determinant_counts() {
        assert_eq!(det_hypersurface_count(1, f(7)), BigInt::from(1));
        assert_eq!(det_hypersurface_count(2, f(2)), BigInt::from(10));
        assert_eq!(det_hypersurface_count(2, f(3)), BigInt::from(33));
        assert_eq!(det_hypersurface_bruteforce(2, f(2)).unwrap(), 10);
        assert_eq!(det_hypersurface_bruteforce(2, f(3)).unwrap(), 33);
        assert_eq!(det_hypersurface_bruteforce(3, f(2)).unwrap(), 512 - 168);
    }

    #[test]
    fn strata() {
        let comps = stratum_components(2, 0).unwrap();
        assert_eq!(comps.len(), 3);
        assert_eq!(divisor_stratum_count(2, 0, &[], f(2)).unwrap(), 6);
        // x_12 = 0 leaves lower-triangular matrices: nonsingular iff x11 x22 ≠ 0.
        let x12 = [StratumComponent::OffDiagonal { i: 1, j: 2 }];
        assert_eq!(divisor_stratum_count(2, 0, &x12, f(2)).unwrap(), 2);
        assert_eq!(divisor_stratum_count(2, 0, &x12, f(3)).unwrap(), 12);
        // All three equations together force the first row to vanish.
        assert_eq!(divisor_stratum_count(2, 0, &comps, f(3)).unwrap(), 0);
        assert!(divisor_stratum_count(2, 0, &[StratumComponent::RowSum { i: 3 }], f(2)).is_err());
    }
}
