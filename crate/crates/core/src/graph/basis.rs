//! Incidence matrices and fundamental-cycle loop bases.

use serde::Serialize;

use super::{Dsu, Graph};
use crate::error::{Error, Result};

/// ε_{e,v}: +1 at the target of edge e, −1 at its source, zero rows for looping edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IncidenceMatrix {
    pub eps: Vec<Vec<i8>>,
}

impl IncidenceMatrix {
    pub fn of(g: &Graph) -> Self {
        let eps = g
            .edges()
            .iter()
            .map(|e| {
                let mut row = vec![0i8; g.vertex_count()];
                if !e.is_loop() {
                    row[e.target] = 1;
                    row[e.source] = -1;
                }
                row
            })
            .collect();
        IncidenceMatrix { eps }
    }

    pub fn rows(&self) -> usize {
        self.eps.len()
    }
}

/// Signed fundamental cycles of a spanning forest.
///
/// Column `k` belongs to the `k`-th non-tree edge in increasing edge id; the
/// cycle runs along that edge in its own direction and returns through the
/// forest, so the non-tree edge always has coefficient +1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LoopBasis {
    /// Rows indexed by edge id, columns by loop.
    pub eta: Vec<Vec<i8>>,
    pub tree_edges: Vec<usize>,
    pub chords: Vec<usize>,
}

impl LoopBasis {
    /// Basis from the depth-first spanning forest: search starts at the lowest
    /// unvisited vertex and scans incident edges in increasing id.
    pub fn dfs(g: &Graph) -> Self {
        let adj = g.adjacency();
        let n = g.vertex_count();
        let mut visited = vec![false; n];
        let mut tree = Vec::new();
        for root in 0..n {
            if visited[root] {
                continue;
            }
            visited[root] = true;
            // Stack of (vertex, next adjacency position).
            let mut stack = vec![(root, 0usize)];
            while let Some(&mut (v, ref mut pos)) = stack.last_mut() {
                if *pos == adj[v].len() {
                    stack.pop();
                    continue;
                }
                let id = adj[v][*pos];
                *pos += 1;
                let w = g.edge(id).other(v);
                if !visited[w] {
                    visited[w] = true;
                    tree.push(id);
                    stack.push((w, 0));
                }
            }
        }
        tree.sort_unstable();
        Self::from_tree(g, &tree).expect("depth-first forest is spanning")
    }

    /// Basis from a spanning forest obtained greedily by scanning edges in
    /// `order` (Kruskal with the given priority).
    pub fn from_edge_order(g: &Graph, order: &[usize]) -> Result<Self> {
        let mut dsu = Dsu::new(g.vertex_count());
        let mut tree = Vec::new();
        for &id in order {
            if id >= g.edge_count() {
                return Err(Error::InvalidGraph(format!("edge id {id} out of range")));
            }
            let e = g.edge(id);
            if dsu.union(e.source, e.target) {
                tree.push(id);
            }
        }
        tree.sort_unstable();
        Self::from_tree(g, &tree)
    }

    /// Basis from an explicit spanning forest.
    pub fn from_tree(g: &Graph, tree_edges: &[usize]) -> Result<Self> {
        let n = g.vertex_count();
        let m = g.edge_count();
        let mut in_tree = vec![false; m];
        let mut dsu = Dsu::new(n);
        for &id in tree_edges {
            if id >= m || in_tree[id] {
                return Err(Error::InvalidGraph(format!("bad tree edge {id}")));
            }
            in_tree[id] = true;
            let e = g.edge(id);
            if !dsu.union(e.source, e.target) {
                return Err(Error::InvalidGraph("tree edges contain a cycle".into()));
            }
        }
        if tree_edges.len() + g.component_count() != n {
            return Err(Error::InvalidGraph("tree edges do not span the graph".into()));
        }

        // Root every tree component and record parent edges and depths.
        let mut tree_adj = vec![Vec::new(); n];
        for &id in tree_edges {
            let e = g.edge(id);
            tree_adj[e.source].push(id);
            tree_adj[e.target].push(id);
        }
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
        let mut depth = vec![usize::MAX; n];
        for root in 0..n {
            if depth[root] != usize::MAX {
                continue;
            }
            depth[root] = 0;
            let mut stack = vec![root];
            while let Some(v) = stack.pop() {
                for &id in &tree_adj[v] {
                    let w = g.edge(id).other(v);
                    if depth[w] == usize::MAX {
                        depth[w] = depth[v] + 1;
                        parent[w] = Some((v, id));
                        stack.push(w);
                    }
                }
            }
        }

        let chords: Vec<usize> = (0..m).filter(|&i| !in_tree[i]).collect();
        let mut eta = vec![vec![0i8; chords.len()]; m];
        for (k, &c) in chords.iter().enumerate() {
            let e = g.edge(c);
            eta[c][k] = 1;
            if e.is_loop() {
                continue;
            }
            // Walk from the chord's target back to its source through the tree.
            let (mut a, mut b) = (e.target, e.source);
            let mut tail = Vec::new();
            while a != b {
                if depth[a] >= depth[b] {
                    let (p, id) = parent[a].expect("non-root has a parent");
                    // Traversing a -> p.
                    eta[id][k] = if g.edge(id).source == a { 1 } else { -1 };
                    a = p;
                } else {
                    let (p, id) = parent[b].expect("non-root has a parent");
                    // Traversed later as p -> b.
                    tail.push((id, p));
                    b = p;
                }
            }
            for (id, from) in tail {
                eta[id][k] = if g.edge(id).source == from { 1 } else { -1 };
            }
        }
        Ok(LoopBasis {
            eta,
            tree_edges: tree_edges.to_vec(),
            chords,
        })
    }

    pub fn loop_count(&self) -> usize {
        self.chords.len()
    }

    pub fn column(&self, k: usize) -> Vec<i8> {
        self.eta.iter().map(|row| row[k]).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_banana, make_cycle, make_wheel};

    fn cycle_condition(g: &Graph, b: &LoopBasis) -> bool {
        let inc = IncidenceMatrix::of(g);
        (0..b.loop_count()).all(|k| {
            (0..g.vertex_count()).all(|v| {
                (0..g.edge_count())
                    .map(|e| i32::from(b.eta[e][k]) * i32::from(inc.eps[e][v]))
                    .sum::<i32>()
                    == 0
            })
        })
    }

    #[test]
    fn incidence_rows() {
        let g = Graph::new(2, vec![(0, 1)], vec![]).unwrap();
        assert_eq!(IncidenceMatrix::of(&g).eps, vec![vec![-1, 1]]);
        let l = Graph::new(1, vec![(0, 0)], vec![]).unwrap();
        assert_eq!(IncidenceMatrix::of(&l).eps, vec![vec![0]]);
        let b = make_banana(2).unwrap();
        let inc = IncidenceMatrix::of(&b);
        assert_eq!(inc.eps[0], inc.eps[1]);
    }

    #[test]
    fn tree_has_no_loops() {
        let g = Graph::new(3, vec![(0, 1), (1, 2)], vec![]).unwrap();
        let b = LoopBasis::dfs(&g);
        assert_eq!(b.loop_count(), 0);
        assert_eq!(b.tree_edges, vec![0, 1]);
    }

    #[test]
    fn banana_bases() {
        let b2 = LoopBasis::dfs(&make_banana(2).unwrap());
        assert_eq!(b2.column(0), vec![-1, 1]);
        let flipped = make_banana(2).unwrap().reoriented(&[true, false]);
        assert_eq!(LoopBasis::dfs(&flipped).column(0), vec![1, 1]);
        let b3 = LoopBasis::dfs(&make_banana(3).unwrap());
        assert_eq!(b3.loop_count(), 2);
        assert_eq!(b3.tree_edges, vec![0]);
        assert_eq!(b3.column(0), vec![-1, 1, 0]);
        assert_eq!(b3.column(1), vec![-1, 0, 1]);
    }

    #[test]
    fn cycle_condition_holds() {
        for g in [
            make_banana(4).unwrap(),
            make_cycle(5).unwrap(),
            make_wheel(3).unwrap(),
            make_wheel(4).unwrap().reoriented(&[true, false, true, true, false]),
        ] {
            let b = LoopBasis::dfs(&g);
            assert_eq!(b.loop_count(), g.loop_number());
            assert!(cycle_condition(&g, &b));
            let rev: Vec<usize> = (0..g.edge_count()).rev().collect();
            let b = LoopBasis::from_edge_order(&g, &rev).unwrap();
            assert!(cycle_condition(&g, &b));
        }
    }

    #[test]
    fn looping_edge_column() {
        let g = Graph::new(2, vec![(0, 1), (1, 1), (0, 1)], vec![]).unwrap();
        let b = LoopBasis::dfs(&g);
        assert_eq!(b.chords, vec![1, 2]);
        assert_eq!(b.column(0), vec![0, 1, 0]);
    }

    #[test]
    fn rejects_non_spanning_tree() {
        let g = make_cycle(3).unwrap();
        assert!(LoopBasis::from_tree(&g, &[0]).is_err());
        assert!(LoopBasis::from_tree(&g, &[0, 1, 2]).is_err());
    }
}
