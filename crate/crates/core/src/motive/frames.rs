//! Manifolds of frames: tuples (v1, …, vk) with v_i ∈ V_i linearly independent.

use super::class::ClassPoly;
use super::count::checked_space;
use super::linalg::{row_reduce, SubspaceFamily};
use crate::error::{Error, Result};

fn l(k: i64) -> Result<ClassPoly> {
    let k = i32::try_from(k).map_err(|_| Error::Dimension(format!("exponent {k} too large")))?;
    Ok(ClassPoly::monomial(1, k))
}

/// Class of the two-subspace frame manifold,
/// 𝕃^{d1+d2} − 𝕃^{d1} − 𝕃^{d2} − 𝕃^{d12+1} + 𝕃^{d12} + 𝕃.
pub fn frame_class_2(d1: u32, d2: u32, d12: u32) -> Result<ClassPoly> {
    if d12 > d1.min(d2) {
        return Err(Error::Dimension(format!(
            "intersection dimension {d12} exceeds min({d1}, {d2})"
        )));
    }
    let (d1, d2, d12) = (i64::from(d1), i64::from(d2), i64::from(d12));
    let mut c = l(d1 + d2)?;
    c = &c - &l(d1)?;
    c = &c - &l(d2)?;
    c = &c - &l(d12 + 1)?;
    c = &c + &l(d12)?;
    Ok(&c + &l(1)?)
}

/// Dimensions describing three subspaces: d_i, d_ij, d_123 and D = dim(V1+V2+V3).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ThreeSubspaceDims {
    pub d1: u32,
    pub d2: u32,
    pub d3: u32,
    pub d12: u32,
    pub d13: u32,
    pub d23: u32,
    pub d123: u32,
    pub span: u32,
}

impl ThreeSubspaceDims {
    pub fn of(fam: &SubspaceFamily) -> Result<Self> {
        if fam.len() != 3 {
            return Err(Error::Dimension(format!("expected 3 subspaces, got {}", fam.len())));
        }
        let d = |idx: &[usize]| fam.intersection_dim(idx) as u32;
        Ok(ThreeSubspaceDims {
            d1: d(&[0]),
            d2: d(&[1]),
            d3: d(&[2]),
            d12: d(&[0, 1]),
            d13: d(&[0, 2]),
            d23: d(&[1, 2]),
            d123: d(&[0, 1, 2]),
            span: fam.span_dim(&[0, 1, 2]) as u32,
        })
    }

    fn validate(&self) -> Result<()> {
        let s = self;
        let ok = s.d123 <= s.d12.min(s.d13).min(s.d23)
            && s.d12 <= s.d1.min(s.d2)
            && s.d13 <= s.d1.min(s.d3)
            && s.d23 <= s.d2.min(s.d3)
            && s.d1.max(s.d2).max(s.d3) <= s.span
            && s.d1 + s.d2 - s.d12 <= s.span
            && s.d1 + s.d3 - s.d13 <= s.span
            && s.d2 + s.d3 - s.d23 <= s.span
            && s.span <= s.d1 + s.d2 + s.d3;
        if ok {
            Ok(())
        } else {
            Err(Error::Dimension(format!("inconsistent subspace dimensions {s:?}")))
        }
    }
}

/// Class of the three-subspace frame manifold:
///
/// A − 𝕋·Σ − 𝕋²(𝕃^{d1+d2+d3−D} − 𝕃^{d123+1}) − 𝕋³
///
/// with A = Π(𝕃^{di} − 1) and Σ = Σ_{i} (𝕃^{di} − 𝕃)(𝕃^{djk} − 1) over
/// {i, j, k} = {1, 2, 3}.
pub fn frame_class_3(dims: &ThreeSubspaceDims) -> Result<ClassPoly> {
    dims.validate()?;
    let one = ClassPoly::one();
    let t = ClassPoly::torus();
    let d = |x: u32| i64::from(x);
    let mut a = one.clone();
    for di in [dims.d1, dims.d2, dims.d3] {
        a = &a * &(&l(d(di))? - &one);
    }
    let mut sigma = ClassPoly::zero();
    for (di, djk) in [(dims.d1, dims.d23), (dims.d2, dims.d13), (dims.d3, dims.d12)] {
        sigma = &sigma + &(&(&l(d(di))? - &l(1)?) * &(&l(d(djk))? - &one));
    }
    let inner = &l(d(dims.d1) + d(dims.d2) + d(dims.d3) - d(dims.span))? - &l(d(dims.d123) + 1)?;
    let mut c = &a - &(&t * &sigma);
    c = &c - &(&t.pow(2) * &inner);
    c = &c - &t.pow(3);
    c.require_polynomial()
}

/// Count independent tuples (v_1, …, v_k), v_i ∈ V_i, by enumeration.
pub fn frame_count_bruteforce(fam: &SubspaceFamily) -> Result<u64> {
    let q = fam.field.q();
    let total_dim: usize = (0..fam.len()).map(|i| fam.dim(i)).sum();
    checked_space(q, total_dim, super::count::DEFAULT_BUDGET)?;
    let mut chosen: Vec<Vec<u64>> = Vec::new();
    Ok(extend(fam, 0, &mut chosen))
}

fn extend(fam: &SubspaceFamily, k: usize, chosen: &mut Vec<Vec<u64>>) -> u64 {
    if k == fam.len() {
        return 1;
    }
    let f = fam.field;
    let q = f.q();
    let basis = &fam.bases[k];
    let d = basis.len();
    let mut coeffs = vec![0u64; d];
    let mut count = 0;
    loop {
        let mut v = vec![0u64; fam.ambient];
        for (c, b) in coeffs.iter().zip(basis) {
            for (x, &bi) in v.iter_mut().zip(b) {
                *x = f.add(*x, f.mul(*c, bi));
            }
        }
        chosen.push(v);
        let mut m = chosen.clone();
        if row_reduce(f, &mut m).len() == chosen.len() {
            count += extend(fam, k + 1, chosen);
        }
        chosen.pop();
        // Next coefficient vector.
        let mut i = 0;
        loop {
            if i == d {
                return count;
            }
            coeffs[i] += 1;
            if coeffs[i] < q {
                break;
            }
            coeffs[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::motive::count::PrimeField;
    use num_bigint::BigInt;

    fn fam(q: u64, n: usize, bases: Vec<Vec<Vec<u64>>>) -> SubspaceFamily {
        SubspaceFamily::new(PrimeField::new(q).unwrap(), n, bases).unwrap()
    }

    #[test]
    fn two_subspace_examples() {
        let t = ClassPoly::torus();
        assert_eq!(frame_class_2(1, 1, 0).unwrap(), t.pow(2));
        assert!(frame_class_2(1, 1, 1).unwrap().is_zero());
        assert!(frame_class_2(1, 1, 2).is_err());
        // A plane and a line inside it over 𝔽_3.
        let f = fam(3, 3, vec![vec![vec![1, 0, 0], vec![0, 1, 0]], vec![vec![1, 1, 0]]]);
        let brute = frame_count_bruteforce(&f).unwrap();
        assert_eq!(BigInt::from(brute), frame_class_2(2, 1, 1).unwrap().eval_u64(3).unwrap());
    }

    #[test]
    fn brute_force_examples() {
        assert_eq!(frame_count_bruteforce(&fam(5, 3, vec![vec![vec![1, 2, 0], vec![0, 0, 1]]])).unwrap(), 24);
        let line = vec![vec![1, 1]];
        assert_eq!(frame_count_bruteforce(&fam(3, 2, vec![line.clone(), line])).unwrap(), 0);
        let f = fam(5, 2, vec![vec![vec![1, 0]], vec![vec![0, 1]]]);
        assert_eq!(frame_count_bruteforce(&f).unwrap(), 16);
    }

    #[test]
    fn three_lines() {
        let general = ThreeSubspaceDims { d1: 1, d2: 1, d3: 1, d12: 0, d13: 0, d23: 0, d123: 0, span: 3 };
        assert_eq!(frame_class_3(&general).unwrap(), ClassPoly::torus().pow(3));
        let coplanar = ThreeSubspaceDims { span: 2, ..general };
        assert!(frame_class_3(&coplanar).unwrap().is_zero());
        let same = ThreeSubspaceDims { d12: 1, d13: 1, d23: 1, d123: 1, span: 1, ..general };
        assert!(frame_class_3(&same).unwrap().is_zero());
        for q in [2u64, 3] {
            let f = fam(q, 3, vec![vec![vec![1, 0, 0]], vec![vec![0, 1, 0]], vec![vec![0, 0, 1]]]);
            let dims = ThreeSubspaceDims::of(&f).unwrap();
            assert_eq!(dims, general);
            assert_eq!(
                BigInt::from(frame_count_bruteforce(&f).unwrap()),
                frame_class_3(&dims).unwrap().eval_u64(q).unwrap()
            );
        }
    }

    #[test]
    fn inconsistent_dims() {
        let bad = ThreeSubspaceDims { d1: 1, d2: 1, d3: 1, d12: 0, d13: 0, d23: 0, d123: 0, span: 4 };
        assert!(frame_class_3(&bad).is_err());
    }
}
