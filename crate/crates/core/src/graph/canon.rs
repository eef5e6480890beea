//! Canonical labelling and automorphism counting for small graphs.
//!
//! Both run over vertex permutations that preserve a cheap invariant
//! (legs, looping edges, valence, sorted neighbour valences), so they are
//! exact but only meant for graphs with a handful of vertices.

use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;

use super::{Edge, Graph};
use crate::error::{Error, Result};

/// Vertex bound for the exhaustive searches.
pub const MAX_VERTICES: usize = 10;

/// Isomorphism-class representative of an unoriented graph with legs.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CanonicalGraph {
    pub vertices: usize,
    /// Sorted `(min, max)` endpoint pairs.
    pub edges: Vec<(usize, usize)>,
    /// Sorted leg attachment vertices.
    pub legs: Vec<usize>,
}

impl CanonicalGraph {
    pub fn to_graph(&self) -> Graph {
        Graph::from_parts(
            self.vertices,
            self.edges.iter().map(|&(a, b)| Edge::new(a, b)).collect(),
            self.legs.clone(),
        )
    }
}

impl fmt::Display for CanonicalGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}[", self.vertices)?;
        for (i, (a, b)) in self.edges.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}-{b}")?;
        }
        f.write_str("]")?;
        if !self.legs.is_empty() {
            f.write_str("{")?;
            for (i, v) in self.legs.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{v}")?;
            }
            f.write_str("}")?;
        }
        Ok(())
    }
}

fn invariants(g: &Graph) -> Vec<(usize, usize, u32, Vec<u32>)> {
    let n = g.vertex_count();
    let mut loops = vec![0usize; n];
    let mut nbr: Vec<Vec<u32>> = vec![Vec::new(); n];
    for e in g.edges() {
        if e.is_loop() {
            loops[e.source] += 1;
        } else {
            nbr[e.source].push(g.valence(e.target));
            nbr[e.target].push(g.valence(e.source));
        }
    }
    (0..n)
        .map(|v| {
            let mut nb = std::mem::take(&mut nbr[v]);
            nb.sort_unstable();
            (g.legs_at(v), loops[v], g.valence(v), nb)
        })
        .collect()
}

/// Calls `visit(perm)` for every vertex permutation preserving the invariant
/// classes, where `perm[old] = new` and class blocks occupy consecutive new ids.
fn for_each_class_perm(g: &Graph, mut visit: impl FnMut(&[usize])) {
    let inv = invariants(g);
    let n = g.vertex_count();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| inv[a].cmp(&inv[b]));
    // New position range allowed for each vertex.
    let mut slot_of = vec![(0usize, 0usize); n];
    let mut i = 0;
    while i < n {
        let mut j = i;
        while j < n && inv[order[j]] == inv[order[i]] {
            j += 1;
        }
        for &v in &order[i..j] {
            slot_of[v] = (i, j);
        }
        i = j;
    }
    let mut perm = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn rec(
        v: usize,
        n: usize,
        slot_of: &[(usize, usize)],
        perm: &mut Vec<usize>,
        used: &mut Vec<bool>,
        visit: &mut dyn FnMut(&[usize]),
    ) {
        if v == n {
            visit(perm);
            return;
        }
        let (lo, hi) = slot_of[v];
        for p in lo..hi {
            if !used[p] {
                used[p] = true;
                perm[v] = p;
                rec(v + 1, n, slot_of, perm, used, visit);
                used[p] = false;
            }
        }
    }
    rec(0, n, &slot_of, &mut perm, &mut used, &mut visit);
}

fn image(g: &Graph, perm: &[usize]) -> (Vec<(usize, usize)>, Vec<usize>) {
    let mut edges: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .map(|e| {
            let (a, b) = (perm[e.source], perm[e.target]);
            (a.min(b), a.max(b))
        })
        .collect();
    edges.sort_unstable();
    let mut legs: Vec<usize> = g.legs().iter().map(|&v| perm[v]).collect();
    legs.sort_unstable();
    (edges, legs)
}

fn check_size(g: &Graph) -> Result<()> {
    if g.vertex_count() > MAX_VERTICES {
        return Err(Error::budget(
            format!("{} vertices", g.vertex_count()),
            MAX_VERTICES,
            "exhaustive symmetry search is limited to small graphs",
        ));
    }
    Ok(())
}

/// Canonical representative: the lexicographically smallest relabelled
/// (legs, edges) over invariant-preserving vertex permutations.
pub fn canonical_form(g: &Graph) -> Result<CanonicalGraph> {
    check_size(g)?;
    let mut best: Option<(Vec<usize>, Vec<(usize, usize)>)> = None;
    for_each_class_perm(g, |perm| {
        let (edges, legs) = image(g, perm);
        let cand = (legs, edges);
        if best.as_ref().is_none_or(|b| cand < *b) {
            best = Some(cand);
        }
    });
    let (legs, edges) = best.unwrap_or_default();
    Ok(CanonicalGraph {
        vertices: g.vertex_count(),
        edges,
        legs,
    })
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> Result<bool> {
    if a.vertex_count() != b.vertex_count()
        || a.edge_count() != b.edge_count()
        || a.legs().len() != b.legs().len()
    {
        return Ok(false);
    }
    Ok(canonical_form(a)? == canonical_form(b)?)
}

fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

/// Order of the symmetry group acting on vertices, half-edges and legs.
///
/// Counts structure-preserving vertex permutations, then multiplies by the
/// permutations of parallel edges, of looping edges with their flips, and of
/// legs sharing a vertex.
pub fn automorphism_count(g: &Graph) -> Result<BigUint> {
    check_size(g)?;
    // Permutations sharing an image with the first one form a coset of the
    // vertex automorphism group.
    let mut reference = None;
    let mut vertex_perms = 0u64;
    for_each_class_perm(g, |perm| {
        let img = image(g, perm);
        match &reference {
            None => {
                reference = Some(img);
                vertex_perms = 1;
            }
            Some(r) if *r == img => vertex_perms += 1,
            Some(_) => {}
        }
    });
    let (edges, legs) = reference.unwrap_or_default();
    let mut total = BigUint::from(vertex_perms);
    for group in edges.chunk_by(|a, b| a == b) {
        let (a, b) = group[0];
        total *= factorial(group.len());
        if a == b {
            total <<= group.len();
        }
    }
    for group in legs.chunk_by(|a, b| a == b) {
        total *= factorial(group.len());
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_banana, make_cycle, make_wheel};

    #[test]
    fn small_counts() {
        let tadpole = Graph::new(1, vec![(0, 0)], vec![]).unwrap();
        assert_eq!(automorphism_count(&tadpole).unwrap(), 2u32.into());
        assert_eq!(automorphism_count(&make_banana(2).unwrap()).unwrap(), 4u32.into());
        assert_eq!(automorphism_count(&make_cycle(3).unwrap()).unwrap(), 6u32.into());
        assert_eq!(automorphism_count(&make_wheel(3).unwrap()).unwrap(), 24u32.into());
        assert_eq!(automorphism_count(&make_banana(3).unwrap()).unwrap(), 12u32.into());
        let figure_eight = Graph::new(1, vec![(0, 0), (0, 0)], vec![]).unwrap();
        assert_eq!(automorphism_count(&figure_eight).unwrap(), 8u32.into());
    }

    #[test]
    fn legs_break_symmetry() {
        let g = Graph::new(2, vec![(0, 1), (0, 1)], vec![0]).unwrap();
        assert_eq!(automorphism_count(&g).unwrap(), 2u32.into());
        let g = Graph::new(2, vec![(0, 1), (0, 1)], vec![0, 0, 1, 1]).unwrap();
        assert_eq!(automorphism_count(&g).unwrap(), 16u32.into());
    }

    #[test]
    fn canonical_form_ignores_labels() {
        let a = Graph::new(3, vec![(0, 1), (1, 2), (2, 0), (1, 2)], vec![0, 0]).unwrap();
        let b = Graph::new(3, vec![(2, 0), (0, 1), (1, 2), (0, 2)], vec![1, 1]).unwrap();
        assert!(is_isomorphic(&a, &b).unwrap());
        let c = Graph::new(3, vec![(2, 0), (0, 1), (1, 2), (0, 2)], vec![0, 0]).unwrap();
        assert!(!is_isomorphic(&a, &c).unwrap());
    }

    #[test]
    fn size_bound() {
        let big = make_cycle(11).unwrap();
        assert!(automorphism_count(&big).unwrap_err().is_budget());
    }
}
