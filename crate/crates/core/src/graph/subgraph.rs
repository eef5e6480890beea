//! Subdivergences and quotient graphs.

use serde::Serialize;

use super::{Dsu, Edge, Graph, Theory};
use crate::error::{Error, Result};

/// Largest edge count for which all edge subsets are enumerated.
pub const MAX_SUBSET_EDGES: usize = 22;

/// A proper set of internal edges of a parent graph whose connected
/// components are each 1PI with at least one loop.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Subgraph {
    /// Sorted edge ids in the parent graph.
    pub edges: Vec<usize>,
    /// Edge ids of each connected component, ordered by smallest edge id.
    pub components: Vec<Vec<usize>>,
}

impl Subgraph {
    /// Validate the structural conditions: nonempty, proper, every component
    /// 1PI with b1 ≥ 1.
    pub fn new(g: &Graph, edges: &[usize]) -> Result<Self> {
        let mut edges = edges.to_vec();
        edges.sort_unstable();
        edges.dedup();
        if edges.is_empty() {
            return Err(Error::InvalidSubgraph("empty edge set".into()));
        }
        if let Some(&e) = edges.iter().find(|&&e| e >= g.edge_count()) {
            return Err(Error::InvalidSubgraph(format!("edge {e} out of range")));
        }
        if edges.len() == g.edge_count() {
            return Err(Error::InvalidSubgraph("subgraph must be proper".into()));
        }
        let components = edge_components(g, &edges);
        for comp in &components {
            let piece = induced(g, comp, &edges);
            if piece.loop_number() == 0 || !piece.is_1pi()? {
                return Err(Error::InvalidSubgraph(format!(
                    "component {comp:?} is not 1PI with a loop"
                )));
            }
        }
        Ok(Subgraph { edges, components })
    }

    pub fn loop_number(&self, g: &Graph) -> usize {
        self.components
            .iter()
            .map(|c| induced(g, c, &self.edges).loop_number())
            .sum()
    }

    /// Each component as a standalone graph with inherited external legs.
    pub fn component_graphs(&self, g: &Graph) -> Vec<Graph> {
        self.components
            .iter()
            .map(|c| induced(g, c, &self.edges))
            .collect()
    }
}

/// Group `edges` into connected components, each sorted, ordered by minimum id.
fn edge_components(g: &Graph, edges: &[usize]) -> Vec<Vec<usize>> {
    let mut dsu = Dsu::new(g.vertex_count());
    for &id in edges {
        let e = g.edge(id);
        dsu.union(e.source, e.target);
    }
    let mut comps: Vec<(usize, Vec<usize>)> = Vec::new();
    for &id in edges {
        let r = dsu.find(g.edge(id).source);
        match comps.iter_mut().find(|(root, _)| *root == r) {
            Some((_, c)) => c.push(id),
            None => comps.push((r, vec![id])),
        }
    }
    comps.into_iter().map(|(_, c)| c).collect()
}

/// Graph spanned by `comp` with legs inherited from the parent: every parent
/// leg at a covered vertex plus one leg per incidence of an edge outside
/// `all_sub_edges`.
fn induced(g: &Graph, comp: &[usize], all_sub_edges: &[usize]) -> Graph {
    let mut verts: Vec<usize> = comp
        .iter()
        .flat_map(|&id| [g.edge(id).source, g.edge(id).target])
        .collect();
    verts.sort_unstable();
    verts.dedup();
    let idx = |v: usize| verts.binary_search(&v).expect("covered vertex");
    let edges = comp
        .iter()
        .map(|&id| {
            let e = g.edge(id);
            Edge::new(idx(e.source), idx(e.target))
        })
        .collect();
    let mut legs: Vec<usize> = g
        .legs()
        .iter()
        .filter(|v| verts.binary_search(v).is_ok())
        .map(|&v| idx(v))
        .collect();
    for (id, e) in g.edges().iter().enumerate() {
        if all_sub_edges.binary_search(&id).is_ok() {
            continue;
        }
        for end in [e.source, e.target] {
            if let Ok(i) = verts.binary_search(&end) {
                legs.push(i);
            }
        }
    }
    legs.sort_unstable();
    Graph::from_parts(verts.len(), edges, legs)
}

/// Contract every component of `gamma` to a single vertex.
///
/// Vertices of the quotient are numbered by first appearance when scanning the
/// parent vertices in order; surviving edges keep their relative order.
pub fn quotient(g: &Graph, gamma: &Subgraph) -> Result<Graph> {
    let checked = Subgraph::new(g, &gamma.edges)?;
    if checked.components != gamma.components {
        return Err(Error::InvalidSubgraph("component data does not match edges".into()));
    }
    let mut dsu = Dsu::new(g.vertex_count());
    for &id in &gamma.edges {
        let e = g.edge(id);
        dsu.union(e.source, e.target);
    }
    let mut class_id = vec![usize::MAX; g.vertex_count()];
    let mut map = vec![0; g.vertex_count()];
    let mut next = 0;
    for v in 0..g.vertex_count() {
        let r = dsu.find(v);
        if class_id[r] == usize::MAX {
            class_id[r] = next;
            next += 1;
        }
        map[v] = class_id[r];
    }
    let edges = g
        .edges()
        .iter()
        .enumerate()
        .filter(|(id, _)| gamma.edges.binary_search(id).is_err())
        .map(|(_, e)| Edge::new(map[e.source], map[e.target]))
        .collect();
    let legs = g.legs().iter().map(|&v| map[v]).collect();
    Ok(Graph::from_parts(next, edges, legs))
}

/// All subdivergences of a 1PI graph, sorted by (edge count, edge ids).
///
/// A subdivergence is a proper edge subset whose components are 1PI with a
/// loop and whose quotient is again a graph of the theory. Quotients with a
/// looping edge are only admitted when the theory has mass insertions.
pub fn subdivergences(g: &Graph, th: &Theory) -> Result<Vec<Subgraph>> {
    let m = g.edge_count();
    if m > MAX_SUBSET_EDGES {
        return Err(Error::budget(
            format!("2^{m} edge subsets"),
            format!("2^{MAX_SUBSET_EDGES}"),
            "use a graph with fewer internal edges",
        ));
    }
    let mut out = Vec::new();
    for mask in 1u64..(1u64 << m) - 1 {
        let edges: Vec<usize> = (0..m).filter(|&i| mask >> i & 1 == 1).collect();
        let Ok(sub) = Subgraph::new(g, &edges) else {
            continue;
        };
        let q = quotient(g, &sub)?;
        if q.validate(th).is_err() {
            continue;
        }
        if q.has_looping_edges() && !th.mass_insertions() {
            continue;
        }
        out.push(sub);
    }
    out.sort_by(|a, b| (a.edges.len(), &a.edges).cmp(&(b.edges.len(), &b.edges)));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::make_banana;

    /// φ⁴ eye graph: a one-loop bubble inserted into a vertex of another.
    fn eye() -> Graph {
        Graph::new(3, vec![(0, 1), (0, 2), (1, 2), (1, 2)], vec![0, 0, 1, 2]).unwrap()
    }

    #[test]
    fn primitive_graphs_have_none() {
        let bubble = Graph::new(2, vec![(0, 1), (0, 1)], vec![0, 0, 1, 1]).unwrap();
        assert!(subdivergences(&bubble, &Theory::phi4()).unwrap().is_empty());
        let b2 = Graph::new(2, vec![(0, 1), (0, 1)], vec![0, 1]).unwrap();
        assert!(subdivergences(&b2, &Theory::phi3()).unwrap().is_empty());
    }

    #[test]
    fn eye_graph_has_one() {
        let g = eye();
        let subs = subdivergences(&g, &Theory::phi4()).unwrap();
        assert_eq!(subs.len(), 1);
        assert_eq!(subs[0].edges, vec![2, 3]);
        let q = quotient(&g, &subs[0]).unwrap();
        assert_eq!(q.vertex_count(), 2);
        assert_eq!(q.edge_count(), 2);
        assert_eq!(q.loop_number(), 1);
        assert!(q.validate(&Theory::phi4()).is_ok());
        let pieces = subs[0].component_graphs(&g);
        assert_eq!(pieces[0].legs().len(), 4);
        assert_eq!(g.loop_number(), subs[0].loop_number(&g) + q.loop_number());
    }

    #[test]
    fn whole_graph_is_not_proper() {
        let g = eye();
        assert!(Subgraph::new(&g, &[0, 1, 2, 3]).is_err());
        assert!(Subgraph::new(&g, &[]).is_err());
        assert!(Subgraph::new(&g, &[0]).is_err());
    }

    #[test]
    fn looping_quotient_needs_mass_insertions() {
        // Three-banana in φ⁴ with one leg at each end: contracting two
        // parallel edges leaves a looping edge.
        let g = Graph::new(2, vec![(0, 1), (0, 1), (0, 1)], vec![0, 1]).unwrap();
        assert!(subdivergences(&g, &Theory::phi4()).unwrap().is_empty());
        let th = Theory::phi4().with_mass_insertions(true);
        let subs = subdivergences(&g, &th).unwrap();
        assert_eq!(subs.len(), 3);
        assert!(quotient(&g, &subs[0]).unwrap().has_looping_edges());
    }

    #[test]
    fn banana_vacuum_is_unaffected() {
        let g = make_banana(2).unwrap();
        assert!(subdivergences(&g, &Theory::phi3()).unwrap().is_empty());
    }
}
