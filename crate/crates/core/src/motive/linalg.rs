//! Linear algebra over 𝔽_p for subspace families.

use super::count::PrimeField;
use crate::error::{Error, Result};

/// Row-reduce in place; returns pivot columns.
pub fn row_reduce(f: PrimeField, m: &mut [Vec<u64>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, p);
        let inv = f.inv(m[r][c]);
        for x in m[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        for i in 0..rows {
            if i != r && m[i][c] != 0 {
                let k = m[i][c];
                for j in 0..cols {
                    let sub = f.mul(k, m[r][j]);
                    m[i][j] = f.sub(m[i][j], sub);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(f: PrimeField, vectors: &[Vec<u64>]) -> usize {
    let mut m = vectors.to_vec();
    row_reduce(f, &mut m).len()
}

/// Basis of {x : A x = 0} for `a` given as rows of length `n`.
pub fn nullspace(f: PrimeField, a: &[Vec<u64>], n: usize) -> Vec<Vec<u64>> {
    let mut m = a.to_vec();
    let pivots = row_reduce(f, &mut m);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0u64; n];
            v[fc] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.sub(0, m[r][fc]);
            }
            v
        })
        .collect()
}

/// Basis of V ∩ W for subspaces given by spanning vectors.
pub fn intersect(f: PrimeField, v: &[Vec<u64>], w: &[Vec<u64>], n: usize) -> Vec<Vec<u64>> {
    let v = basis_of(f, v);
    let w = basis_of(f, w);
    // Solve Σ a_i v_i − Σ b_j w_j = 0 and map the a-part back.
    let k = v.len() + w.len();
    let rows: Vec<Vec<u64>> = (0..n)
        .map(|c| {
            v.iter()
                .map(|x| x[c])
                .chain(w.iter().map(|x| f.sub(0, x[c])))
                .collect()
        })
        .collect();
    let sols = nullspace(f, &rows, k);
    let mut out: Vec<Vec<u64>> = sols
        .iter()
        .map(|s| {
            let mut x = vec![0u64; n];
            for (i, vi) in v.iter().enumerate() {
                for c in 0..n {
                    x[c] = f.add(x[c], f.mul(s[i], vi[c]));
                }
            }
            x
        })
        .collect();
    out = basis_of(f, &out);
    out
}

/// A reduced basis of the span.
pub fn basis_of(f: PrimeField, vectors: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let mut m = vectors.to_vec();
    let r = row_reduce(f, &mut m).len();
    m.truncate(r);
    m
}

/// Determinant of a square matrix.
pub fn determinant(f: PrimeField, m: &[Vec<u64>]) -> u64 {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = 1u64;
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| a[i][c] != 0) else {
            return 0;
        };
        if p != c {
            a.swap(p, c);
            det = f.sub(0, det);
        }
        det = f.mul(det, a[c][c]);
        let inv = f.inv(a[c][c]);
        for i in c + 1..n {
            if a[i][c] != 0 {
                let k = f.mul(a[i][c], inv);
                for j in c..n {
                    let sub = f.mul(k, a[c][j]);
                    a[i][j] = f.sub(a[i][j], sub);
                }
            }
        }
    }
    det
}

/// Subspaces V_k ⊆ 𝔽_q^n, each given by an independent basis.
#[derive(Clone, Debug)]
pub struct SubspaceFamily {
    pub field: PrimeField,
    pub ambient: usize,
    pub bases: Vec<Vec<Vec<u64>>>,
}

impl SubspaceFamily {
    pub fn new(field: PrimeField, ambient: usize, bases: Vec<Vec<Vec<u64>>>) -> Result<Self> {
        let q = field.q();
        for (k, b) in bases.iter().enumerate() {
            if b.iter().any(|v| v.len() != ambient || v.iter().any(|&x| x >= q)) {
                return Err(Error::Dimension(format!("subspace {k} has malformed vectors")));
            }
            if rank(field, b) != b.len() {
                return Err(Error::Dimension(format!("basis of subspace {k} is dependent")));
            }
        }
        Ok(SubspaceFamily {
            field,
            ambient,
            bases,
        })
    }

    pub fn len(&self) -> usize {
        self.bases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bases.is_empty()
    }

    pub fn dim(&self, i: usize) -> usize {
        self.bases[i].len()
    }

    /// dim of the intersection of the listed subspaces.
    pub fn intersection_dim(&self, idx: &[usize]) -> usize {
        let Some((&first, rest)) = idx.split_first() else {
            return self.ambient;
        };
        let mut acc = self.bases[first].clone();
        for &i in rest {
            acc = intersect(self.field, &acc, &self.bases[i], self.ambient);
        }
        acc.len()
    }

    /// dim of the sum of the listed subspaces.
    pub fn span_dim(&self, idx: &[usize]) -> usize {
        let all: Vec<Vec<u64>> = idx.iter().flat_map(|&i| self.bases[i].clone()).collect();
        rank(self.field, &all)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nullspace_and_intersection() {
        let f = PrimeField::new(3).unwrap();
        let a = vec![vec![1, 1, 0]];
        let ns = nullspace(f, &a, 3);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert_eq!(f.add(v[0], v[1]), 0);
        }
        let plane1 = vec![vec![1, 0, 0], vec![0, 1, 0]];
        let plane2 = vec![vec![0, 1, 0], vec![0, 0, 1]];
        assert_eq!(intersect(f, &plane1, &plane2, 3), vec![vec![0, 1, 0]]);
    }

    #[test]
    fn determinants() {
        let f = PrimeField::new(5).unwrap();
        assert_eq!(determinant(f, &[vec![1, 2], vec![3, 4]]), f.from_i64(-2));
        assert_eq!(determinant(f, &[vec![0, 1], vec![1, 0]]), 4);
        assert_eq!(determinant(f, &[vec![1, 2], vec![2, 4]]), 0);
    }

    #[test]
    fn family_dims() {
        let f = PrimeField::new(2).unwrap();
        let fam = SubspaceFamily::new(
            f,
            3,
            vec![vec![vec![1, 0, 0]], vec![vec![0, 1, 0]], vec![vec![1, 1, 0]]],
        )
        .unwrap();
        assert_eq!(fam.intersection_dim(&[0, 1]), 0);
        assert_eq!(fam.span_dim(&[0, 1, 2]), 2);
        assert!(SubspaceFamily::new(f, 2, vec![vec![vec![1, 1], vec![1, 1]]]).is_err());
    }
}
