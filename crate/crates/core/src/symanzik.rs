//! First and second Symanzik polynomials.
//!
//! Ψ is computed two ways, as a spanning-tree sum and as det M_Γ for a loop
//! basis, and the two are cross-checked in the tests. Edge id `e` is the
//! variable `t{e+1}`.

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use crate::error::{Error, Result};
use crate::graph::{Dsu, Graph, LoopBasis};
use crate::poly::{IntPoly, Monomial, Polynomial, RatPoly};

/// Edge subsets of size `k` containing no cycle, as sorted id lists.
fn acyclic_subsets(g: &Graph, k: usize) -> Vec<Vec<usize>> {
    let usable: Vec<usize> = (0..g.edge_count())
        .filter(|&e| !g.edge(e).is_loop())
        .collect();
    usable
        .into_iter()
        .combinations(k)
        .filter(|set| {
            let mut dsu = Dsu::new(g.vertex_count());
            set.iter().all(|&e| {
                let ed = g.edge(e);
                dsu.union(ed.source, ed.target)
            })
        })
        .collect()
}

/// Monomial Π_{e ∉ set} t_e.
fn complement_monomial(m: usize, set: &[usize]) -> Monomial {
    let mut exps = vec![1u32; m];
    for &e in set {
        exps[e] = 0;
    }
    Monomial(exps)
}

/// Ψ_Γ = Σ_T Π_{e∉T} t_e over spanning trees.
pub fn psi_spanning_trees(g: &Graph) -> Result<IntPoly> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    psi_spanning_forests(g)
}

/// Sum over maximal spanning forests; equals the product of Ψ over the
/// connected components, so it is multiplicative under disjoint union.
pub fn psi_spanning_forests(g: &Graph) -> Result<IntPoly> {
    let m = g.edge_count();
    let k = g.vertex_count() - g.component_count();
    let mut p = IntPoly::zero(m);
    for forest in acyclic_subsets(g, k) {
        p.add_term(complement_monomial(m, &forest), BigInt::one());
    }
    Ok(p)
}

/// (M_Γ)_{kr} = Σ_i t_i η_{ik} η_{ir}.
pub fn graph_matrix(g: &Graph, basis: &LoopBasis) -> Result<Vec<Vec<IntPoly>>> {
    if basis.eta.len() != g.edge_count() {
        return Err(Error::InvalidGraph(format!(
            "loop basis has {} rows for {} edges",
            basis.eta.len(),
            g.edge_count()
        )));
    }
    let m = g.edge_count();
    let b = basis.loop_count();
    let mut mat = vec![vec![IntPoly::zero(m); b]; b];
    for (i, row) in basis.eta.iter().enumerate() {
        for k in 0..b {
            for r in 0..b {
                let c = i64::from(row[k]) * i64::from(row[r]);
                if c != 0 {
                    mat[k][r].add_term(Monomial::var(m, i), BigInt::from(c));
                }
            }
        }
    }
    Ok(mat)
}

/// Fraction-free determinant over the integer polynomial ring.
pub fn bareiss_determinant(mut a: Vec<Vec<IntPoly>>, nvars: usize) -> Result<IntPoly> {
    let n = a.len();
    if n == 0 {
        return Ok(IntPoly::one(nvars));
    }
    let mut negate = false;
    let mut prev = IntPoly::one(nvars);
    for i in 0..n - 1 {
        if a[i][i].is_zero() {
            match (i + 1..n).find(|&r| !a[r][i].is_zero()) {
                Some(r) => {
                    a.swap(i, r);
                    negate = !negate;
                }
                None => return Ok(IntPoly::zero(nvars)),
            }
        }
        for j in i + 1..n {
            for l in i + 1..n {
                let num = &(&a[j][l] * &a[i][i]) - &(&a[j][i] * &a[i][l]);
                a[j][l] = num.div_exact(&prev)?;
            }
        }
        prev = a[i][i].clone();
    }
    let det = a[n - 1][n - 1].clone();
    Ok(if negate { -&det } else { det })
}

/// Ψ_Γ = det M_Γ for the given loop basis.
pub fn psi_determinant(g: &Graph, basis: &LoopBasis) -> Result<IntPoly> {
    bareiss_determinant(graph_matrix(g, basis)?, g.edge_count())
}

/// Euclidean external momenta indexed by leg id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Momenta {
    pub p: Vec<Vec<BigRational>>,
}

impl Momenta {
    /// Validate shape and momentum conservation against `g`.
    pub fn new(g: &Graph, p: Vec<Vec<BigRational>>) -> Result<Self> {
        if p.len() != g.legs().len() {
            return Err(Error::Momentum(format!(
                "{} momenta for {} external legs",
                p.len(),
                g.legs().len()
            )));
        }
        let d = p.first().map_or(0, Vec::len);
        if p.iter().any(|v| v.len() != d) {
            return Err(Error::Momentum("momentum vectors differ in length".into()));
        }
        for c in 0..d {
            let total: BigRational = p.iter().map(|v| v[c].clone()).sum();
            if !total.is_zero() {
                return Err(Error::Momentum(format!(
                    "momentum not conserved: component {c} sums to {total}"
                )));
            }
        }
        Ok(Momenta { p })
    }

    /// Legs 0 and 1 carry (1, 0, …) and (−1, 0, …), all others zero.
    pub fn unit_two_point(g: &Graph) -> Result<Self> {
        if g.legs().len() < 2 {
            return Err(Error::Momentum("needs at least two external legs".into()));
        }
        let mut p = vec![vec![BigRational::zero()]; g.legs().len()];
        p[0][0] = BigRational::one();
        p[1][0] = -BigRational::one();
        Momenta::new(g, p)
    }

    /// Total momentum entering each vertex.
    fn at_vertices(&self, g: &Graph) -> Vec<Vec<BigRational>> {
        let d = self.p.first().map_or(0, Vec::len);
        let mut pv = vec![vec![BigRational::zero(); d]; g.vertex_count()];
        for (leg, &v) in g.legs().iter().enumerate() {
            for c in 0..d {
                pv[v][c] += &self.p[leg][c];
            }
        }
        pv
    }
}

/// P_Γ(t, p) = Σ_F s_F Π_{e∉F} t_e over spanning 2-forests F = T₁ ⊔ T₂, with
/// s_F the squared momentum flowing from T₁ into T₂.
pub fn second_symanzik(g: &Graph, p: &Momenta) -> Result<RatPoly> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let p = Momenta::new(g, p.p.clone())?;
    let m = g.edge_count();
    let n = g.vertex_count();
    let pv = p.at_vertices(g);
    let d = pv.first().map_or(0, Vec::len);
    let mut poly = RatPoly::zero(m);
    if n < 2 {
        return Ok(poly);
    }
    for forest in acyclic_subsets(g, n - 2) {
        let mut dsu = Dsu::new(n);
        for &e in &forest {
            dsu.union(g.edge(e).source, g.edge(e).target);
        }
        let side = dsu.find(0);
        let mut flow = vec![BigRational::zero(); d];
        for v in 0..n {
            if dsu.find(v) == side {
                for c in 0..d {
                    flow[c] += &pv[v][c];
                }
            }
        }
        let s: BigRational = flow.iter().map(|x| x * x).sum();
        poly.add_term(complement_monomial(m, &forest), s);
    }
    Ok(poly)
}

/// P_Γ for the two-point function with p² = `p2`.
pub fn second_symanzik_two_point(g: &Graph, p2: &BigRational) -> Result<RatPoly> {
    if g.legs().len() != 2 {
        return Err(Error::Momentum(format!(
            "two-point kinematics needs exactly two legs, found {}",
            g.legs().len()
        )));
    }
    Ok(second_symanzik(g, &Momenta::unit_two_point(g)?)?.scale(p2))
}

/// Check Ψ_Γ(t) = (Π_e t_e) Ψ_{Γ∨}(1/t) with edges matched by id.
pub fn cremona_check(g: &Graph, dual: &Graph) -> Result<bool> {
    if g.edge_count() != dual.edge_count() {
        return Err(Error::InvalidGraph(format!(
            "edge counts differ: {} vs {}",
            g.edge_count(),
            dual.edge_count()
        )));
    }
    let m = g.edge_count();
    let psi = psi_spanning_trees(g)?;
    let psi_dual = psi_spanning_trees(dual)?;
    // Multiply both sides by t^k, k the largest exponent of each variable in
    // Ψ_{Γ∨}, so that every term is a polynomial.
    let mut k = vec![0u32; m];
    for (mono, _) in psi_dual.terms() {
        for (ki, &e) in k.iter_mut().zip(&mono.0) {
            *ki = (*ki).max(e);
        }
    }
    let lhs = psi.mul_monomial(&Monomial(k.clone()));
    let mut rhs = IntPoly::zero(m);
    for (mono, c) in psi_dual.terms() {
        let exps = mono.0.iter().zip(&k).map(|(&e, &ki)| 1 + ki - e).collect();
        rhs.add_term(Monomial(exps), c.clone());
    }
    Ok(lhs == rhs)
}

/// Evaluate an integer polynomial at rational points.
pub fn eval_rational(p: &IntPoly, x: &[BigRational]) -> BigRational {
    let mut total = BigRational::zero();
    for (m, c) in p.terms() {
        let mut term = BigRational::from_integer(c.clone());
        for (&e, xi) in m.0.iter().zip(x) {
            for _ in 0..e {
                term *= xi;
            }
        }
        total += term;
    }
    total
}

/// Rename variables: variable `i` of `p` becomes variable `map[i]` of a
/// polynomial in `nvars` variables.
pub fn relabel_variables<C: crate::poly::Coeff>(
    p: &Polynomial<C>,
    map: &[usize],
    nvars: usize,
) -> Polynomial<C> {
    let mut out = Polynomial::zero(nvars);
    for (m, c) in p.terms() {
        let mut e = vec![0u32; nvars];
        for (i, &k) in m.0.iter().enumerate() {
            e[map[i]] += k;
        }
        out.add_term(Monomial(e), c.clone());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{disjoint_union, make_banana, make_cycle, make_wheel};
    use crate::poly::Homogeneity;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn psi_examples() {
        let tree = Graph::new(3, vec![(0, 1), (1, 2)], vec![]).unwrap();
        assert_eq!(psi_spanning_trees(&tree).unwrap().to_string(), "1");
        assert_eq!(
            psi_spanning_trees(&make_banana(3).unwrap()).unwrap().to_string(),
            "t1*t2 + t1*t3 + t2*t3"
        );
        assert_eq!(
            psi_spanning_trees(&make_cycle(3).unwrap()).unwrap().to_string(),
            "t1 + t2 + t3"
        );
        let two = disjoint_union(&make_banana(2).unwrap(), &make_banana(2).unwrap());
        assert_eq!(psi_spanning_trees(&two), Err(Error::Disconnected));
    }

    #[test]
    fn determinant_examples() {
        let b2 = make_banana(2).unwrap();
        let det = psi_determinant(&b2, &LoopBasis::dfs(&b2)).unwrap();
        assert_eq!(det.to_string(), "t1 + t2");
        let k4 = make_wheel(3).unwrap();
        let psi = psi_spanning_trees(&k4).unwrap();
        assert_eq!(psi.len(), 16);
        assert_eq!(psi_determinant(&k4, &LoopBasis::dfs(&k4)).unwrap(), psi);
        let tree = Graph::new(2, vec![(0, 1)], vec![]).unwrap();
        assert_eq!(psi_determinant(&tree, &LoopBasis::dfs(&tree)).unwrap().to_string(), "1");
    }

    #[test]
    fn second_symanzik_examples() {
        let g = Graph::new(2, vec![(0, 1), (0, 1)], vec![0, 1]).unwrap();
        let p = Momenta::new(&g, vec![vec![q(3)], vec![q(-3)]]).unwrap();
        let poly = second_symanzik(&g, &p).unwrap();
        assert_eq!(poly.to_string(), "9*t1*t2");
        assert_eq!(poly.homogeneity(), Homogeneity::Degree(2));
        let zero = Momenta::new(&g, vec![vec![q(0)], vec![q(0)]]).unwrap();
        assert!(second_symanzik(&g, &zero).unwrap().is_zero());
        assert!(Momenta::new(&g, vec![vec![q(1)], vec![q(1)]]).is_err());
    }

    #[test]
    fn triangle_second_symanzik() {
        // Legs with momenta p1, p2, p3 at vertices 0, 1, 2 of the triangle.
        let g = Graph::new(3, vec![(0, 1), (1, 2), (2, 0)], vec![0, 1, 2]).unwrap();
        let p = Momenta::new(&g, vec![vec![q(1), q(0)], vec![q(0), q(2)], vec![q(-1), q(-2)]])
            .unwrap();
        let poly = second_symanzik(&g, &p).unwrap();
        // Isolated vertex v cuts the two edges at v: s = p_v².
        assert_eq!(poly.to_string(), "4*t1*t2 + t1*t3 + 5*t2*t3");
    }

    #[test]
    fn cremona_examples() {
        for n in 2..7 {
            let banana = make_banana(n).unwrap();
            let polygon = if n == 2 { make_banana(2).unwrap() } else { make_cycle(n).unwrap() };
            assert!(cremona_check(&banana, &polygon).unwrap());
        }
        let tri = make_cycle(3).unwrap();
        assert!(cremona_check(&tri, &make_banana(3).unwrap()).unwrap());
        assert!(!cremona_check(&tri, &tri).unwrap());
        assert!(cremona_check(&tri, &make_banana(4).unwrap()).is_err());
    }
}
