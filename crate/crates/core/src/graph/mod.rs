//! Feynman graphs with internal edges, external legs and theory constraints.
//!
//! A [`Graph`] is an immutable multigraph: vertices are `0..vertex_count`,
//! internal edges are indexed by their position in the edge list (the edge id)
//! and carry an orientation `source -> target`, and every external leg is
//! attached to exactly one vertex. Looping edges (`source == target`) are
//! allowed; the operations that cannot handle them say so.

mod basis;
mod canon;
mod io;
mod subgraph;

pub use basis::{IncidenceMatrix, LoopBasis};
pub use canon::{automorphism_count, canonical_form, is_isomorphic, CanonicalGraph};
pub use io::{GraphFile, TheorySpec};
pub use subgraph::{quotient, subdivergences, Subgraph};

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Interaction content of a scalar theory: which vertex valences are legal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Theory {
    valences: BTreeSet<u32>,
    spacetime_dim: u32,
    mass_insertions: bool,
}

impl Theory {
    pub fn new(valences: impl IntoIterator<Item = u32>, spacetime_dim: u32) -> Result<Self> {
        let valences: BTreeSet<u32> = valences.into_iter().collect();
        if valences.is_empty() {
            return Err(Error::InvalidTheory("no interaction valences".into()));
        }
        if let Some(v) = valences.iter().find(|&&v| v < 3) {
            return Err(Error::InvalidTheory(format!(
                "interaction monomials have degree at least three, got {v}"
            )));
        }
        if spacetime_dim == 0 {
            return Err(Error::InvalidTheory("spacetime dimension must be positive".into()));
        }
        Ok(Theory {
            valences,
            spacetime_dim,
            mass_insertions: false,
        })
    }

    /// Cubic theory in six dimensions.
    pub fn phi3() -> Self {
        Theory::new([3], 6).expect("valid theory")
    }

    /// Quartic theory in four dimensions.
    pub fn phi4() -> Self {
        Theory::new([4], 4).expect("valid theory")
    }

    /// Permit 2-valent mass-insertion vertices. This also makes quotients with
    /// looping edges legal.
    pub fn with_mass_insertions(mut self, on: bool) -> Self {
        self.mass_insertions = on;
        self
    }

    pub fn valences(&self) -> &BTreeSet<u32> {
        &self.valences
    }

    pub fn spacetime_dim(&self) -> u32 {
        self.spacetime_dim
    }

    pub fn mass_insertions(&self) -> bool {
        self.mass_insertions
    }

    pub fn allows_valence(&self, v: u32) -> bool {
        self.valences.contains(&v) || (self.mass_insertions && v == 2)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge {
    pub source: usize,
    pub target: usize,
}

impl Edge {
    pub fn new(source: usize, target: usize) -> Self {
        Edge { source, target }
    }

    pub fn is_loop(&self) -> bool {
        self.source == self.target
    }

    pub fn other(&self, v: usize) -> usize {
        if v == self.source {
            self.target
        } else {
            self.source
        }
    }

    pub fn touches(&self, v: usize) -> bool {
        self.source == v || self.target == v
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    vertices: usize,
    edges: Vec<Edge>,
    legs: Vec<usize>,
}

/// Union-find over vertex indices.
#[derive(Clone, Debug)]
pub(crate) struct Dsu {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl Dsu {
    pub(crate) fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false if `a` and `b` were already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
        true
    }
}

impl Graph {
    /// Build a graph from endpoint pairs (edge order defines edge ids) and the
    /// vertex of each external leg.
    pub fn new(vertices: usize, edges: Vec<(usize, usize)>, legs: Vec<usize>) -> Result<Self> {
        for (id, &(s, t)) in edges.iter().enumerate() {
            if s >= vertices || t >= vertices {
                return Err(Error::InvalidGraph(format!(
                    "edge {id} = ({s},{t}) references a vertex outside 0..{vertices}"
                )));
            }
        }
        if let Some(&v) = legs.iter().find(|&&v| v >= vertices) {
            return Err(Error::InvalidGraph(format!(
                "external leg attached to missing vertex {v}"
            )));
        }
        Ok(Graph {
            vertices,
            edges: edges.into_iter().map(|(s, t)| Edge::new(s, t)).collect(),
            legs,
        })
    }

    pub(crate) fn from_parts(vertices: usize, edges: Vec<Edge>, legs: Vec<usize>) -> Self {
        debug_assert!(edges.iter().all(|e| e.source < vertices && e.target < vertices));
        debug_assert!(legs.iter().all(|&v| v < vertices));
        Graph {
            vertices,
            edges,
            legs,
        }
    }

    /// The graph with no vertices.
    pub fn empty() -> Self {
        Graph {
            vertices: 0,
            edges: Vec::new(),
            legs: Vec::new(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> Edge {
        self.edges[id]
    }

    /// Vertex of each external leg, indexed by leg id.
    pub fn legs(&self) -> &[usize] {
        &self.legs
    }

    pub fn legs_at(&self, v: usize) -> usize {
        self.legs.iter().filter(|&&w| w == v).count()
    }

    /// Internal incidences (looping edges counted twice) plus external legs.
    pub fn valence(&self, v: usize) -> u32 {
        let internal: usize = self
            .edges
            .iter()
            .map(|e| usize::from(e.source == v) + usize::from(e.target == v))
            .sum();
        (internal + self.legs_at(v)) as u32
    }

    pub fn has_looping_edges(&self) -> bool {
        self.edges.iter().any(Edge::is_loop)
    }

    pub fn first_looping_edge(&self) -> Option<usize> {
        self.edges.iter().position(Edge::is_loop)
    }

    /// Check every vertex valence against the theory.
    pub fn validate(&self, theory: &Theory) -> Result<()> {
        for v in 0..self.vertices {
            let val = self.valence(v);
            if !theory.allows_valence(val) {
                return Err(Error::InvalidGraph(format!(
                    "vertex {v} has valence {val}, allowed {:?}",
                    theory.valences()
                )));
            }
        }
        Ok(())
    }

    /// Component label for every vertex, labels numbered by first appearance.
    pub fn component_labels(&self) -> (usize, Vec<usize>) {
        self.component_labels_without(&[])
    }

    pub(crate) fn component_labels_without(&self, removed: &[usize]) -> (usize, Vec<usize>) {
        let mut dsu = Dsu::new(self.vertices);
        for (id, e) in self.edges.iter().enumerate() {
            if !removed.contains(&id) {
                dsu.union(e.source, e.target);
            }
        }
        let mut label = vec![usize::MAX; self.vertices];
        let mut root_label = vec![usize::MAX; self.vertices];
        let mut count = 0;
        for v in 0..self.vertices {
            let r = dsu.find(v);
            if root_label[r] == usize::MAX {
                root_label[r] = count;
                count += 1;
            }
            label[v] = root_label[r];
        }
        (count, label)
    }

    pub fn component_count(&self) -> usize {
        self.component_labels().0
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    /// First Betti number: edges - vertices + components.
    pub fn loop_number(&self) -> usize {
        self.edges.len() + self.component_count() - self.vertices
    }

    /// 1PI: connected and no single internal edge is a bridge.
    pub fn is_1pi(&self) -> Result<bool> {
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok((0..self.edges.len()).all(|e| self.component_labels_without(&[e]).0 == 1))
    }

    /// True iff no set of at most two internal edges disconnects the graph.
    pub fn is_3_edge_connected(&self) -> Result<bool> {
        if let Some(e) = self.first_looping_edge() {
            return Err(Error::LoopingEdge(e));
        }
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        let n = self.edges.len();
        for a in 0..n {
            if self.component_labels_without(&[a]).0 > 1 {
                return Ok(false);
            }
            for b in a + 1..n {
                if self.component_labels_without(&[a, b]).0 > 1 {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Same graph with selected edges reversed.
    pub fn reoriented(&self, flip: &[bool]) -> Graph {
        let edges = self
            .edges
            .iter()
            .zip(flip.iter().chain(std::iter::repeat(&false)))
            .map(|(e, &f)| if f { Edge::new(e.target, e.source) } else { *e })
            .collect();
        Graph::from_parts(self.vertices, edges, self.legs.clone())
    }

    /// Relabel vertices by `vertex_map[old] = new` and reorder edges so that
    /// new edge `i` is old edge `edge_order[i]`.
    pub fn relabeled(&self, vertex_map: &[usize], edge_order: &[usize]) -> Result<Graph> {
        if vertex_map.len() != self.vertices || edge_order.len() != self.edges.len() {
            return Err(Error::InvalidGraph("relabeling has the wrong size".into()));
        }
        let mut seen_v = vec![false; self.vertices];
        for &v in vertex_map {
            if v >= self.vertices || std::mem::replace(&mut seen_v[v], true) {
                return Err(Error::InvalidGraph("vertex map is not a permutation".into()));
            }
        }
        let mut seen_e = vec![false; self.edges.len()];
        for &e in edge_order {
            if e >= self.edges.len() || std::mem::replace(&mut seen_e[e], true) {
                return Err(Error::InvalidGraph("edge order is not a permutation".into()));
            }
        }
        let edges = edge_order
            .iter()
            .map(|&i| {
                let e = self.edges[i];
                Edge::new(vertex_map[e.source], vertex_map[e.target])
            })
            .collect();
        let legs = self.legs.iter().map(|&v| vertex_map[v]).collect();
        Ok(Graph::from_parts(self.vertices, edges, legs))
    }

    /// Remove edge `id`; remaining edges keep their relative order.
    pub fn delete_edge(&self, id: usize) -> Graph {
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != id)
            .map(|(_, e)| *e)
            .collect();
        Graph::from_parts(self.vertices, edges, self.legs.clone())
    }

    /// Contract a non-looping edge, merging its endpoints into the lower index.
    pub fn contract_edge(&self, id: usize) -> Result<Graph> {
        let e = self.edges[id];
        if e.is_loop() {
            return Err(Error::LoopingEdge(id));
        }
        let (keep, gone) = (e.source.min(e.target), e.source.max(e.target));
        let map = |v: usize| {
            let v = if v == gone { keep } else { v };
            if v > gone {
                v - 1
            } else {
                v
            }
        };
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != id)
            .map(|(_, e)| Edge::new(map(e.source), map(e.target)))
            .collect();
        let legs = self.legs.iter().map(|&v| map(v)).collect();
        Ok(Graph::from_parts(self.vertices - 1, edges, legs))
    }

    /// Incident edge ids of each vertex in increasing id order (looping edges once).
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertices];
        for (id, e) in self.edges.iter().enumerate() {
            adj[e.source].push(id);
            if !e.is_loop() {
                adj[e.target].push(id);
            }
        }
        adj
    }
}

/// Disjoint union; vertex, edge and leg ids of `b` are shifted past those of `a`.
pub fn disjoint_union(a: &Graph, b: &Graph) -> Graph {
    let off = a.vertices;
    let mut edges = a.edges.clone();
    edges.extend(
        b.edges
            .iter()
            .map(|e| Edge::new(e.source + off, e.target + off)),
    );
    let mut legs = a.legs.clone();
    legs.extend(b.legs.iter().map(|v| v + off));
    Graph::from_parts(a.vertices + b.vertices, edges, legs)
}

/// Two vertices joined by `n` parallel edges.
pub fn make_banana(n: usize) -> Result<Graph> {
    if n < 2 {
        return Err(Error::InvalidGraph(format!("banana graph needs n >= 2, got {n}")));
    }
    Graph::new(2, vec![(0, 1); n], Vec::new())
}

/// Polygon with `n` vertices; edge `i` runs `i -> i+1 (mod n)`.
pub fn make_cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidGraph(format!("cycle graph needs n >= 3, got {n}")));
    }
    Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)).collect(), Vec::new())
}

/// Rim cycle on `0..n` followed by spokes `i -> n` to the hub.
pub fn make_wheel(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidGraph(format!("wheel graph needs n >= 3, got {n}")));
    }
    let mut edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    edges.extend((0..n).map(|i| (i, n)));
    Graph::new(n + 1, edges, Vec::new())
}
