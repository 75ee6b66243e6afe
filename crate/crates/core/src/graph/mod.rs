//! Simple undirected graphs, Cayley and bi-Cayley constructions, and exports.
//!
//! Bi-Cayley vertices follow one fixed indexing: `(g, 1)` is vertex `g` and
//! `(g, 2)` is vertex `|G| + g`. Every certificate in the crate uses it.

mod export;

pub use export::{from_graph6, parse_edge_list, to_dot, to_edge_list, to_graph6, GraphFormat};

use std::collections::VecDeque;

use crate::group::{ElemSet, GroupTable};
use crate::{Error, Result};

/// Which side of a bi-Cayley graph a vertex lies on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Part {
    One,
    Two,
}

#[derive(Clone, Debug)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    parts: Option<Vec<Part>>,
    names: Vec<String>,
    /// Edges `(min, max)` in first-insertion order, used by the edge-list export.
    insertion: Vec<(usize, usize)>,
}

/// Graphs compare by adjacency and part labels; names and edge order are cosmetic.
impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.adj == other.adj && self.parts == other.parts
    }
}

impl Eq for Graph {}

impl Graph {
    /// Builds a graph from an edge list. Loops are rejected, repeated edges merged.
    pub fn from_edges(vcount: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut adj = vec![Vec::new(); vcount];
        let mut insertion = Vec::new();
        for (u, v) in edges {
            if u >= vcount || v >= vcount {
                return Err(Error::InvalidGraph(format!("edge {u}-{v} out of range")));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("loop at vertex {u}")));
            }
            adj[u].push(v);
            adj[v].push(u);
            insertion.push((u.min(v), u.max(v)));
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        let mut seen = std::collections::HashSet::new();
        insertion.retain(|e| seen.insert(*e));
        Ok(Graph {
            adj,
            parts: None,
            names: (0..vcount).map(|v| v.to_string()).collect(),
            insertion,
        })
    }

    pub fn empty(vcount: usize) -> Self {
        Graph::from_edges(vcount, []).expect("edgeless graph")
    }

    pub fn with_names(mut self, names: Vec<String>) -> Self {
        assert_eq!(names.len(), self.vcount());
        self.names = names;
        self
    }

    /// Attaches part labels; fails if an edge lies inside one part.
    pub fn with_parts(mut self, parts: Vec<Part>) -> Result<Self> {
        assert_eq!(parts.len(), self.vcount());
        for (u, v) in self.edges() {
            if parts[u] == parts[v] {
                return Err(Error::InvalidGraph(format!("edge {u}-{v} inside one part")));
            }
        }
        self.parts = Some(parts);
        Ok(self)
    }

    pub fn vcount(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn part(&self, v: usize) -> Option<Part> {
        self.parts.as_ref().map(|p| p[v])
    }

    pub fn parts(&self) -> Option<&[Part]> {
        self.parts.as_deref()
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    /// Edges `(u, v)` with `u < v`, ordered by `v` then `u` (the graph6 bit order).
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for v in 0..self.vcount() {
            for &u in &self.adj[v] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Edges `(u, v)` with `u < v` in the order they were first supplied.
    pub fn edges_in_insertion_order(&self) -> &[(usize, usize)] {
        &self.insertion
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.vcount()).map(|v| self.degree(v)).collect();
        d.sort_unstable();
        d
    }

    /// Connected components, each sorted, listed by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vcount();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// The subgraph induced on `vertices`, relabelled `0..k` in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut pos = vec![usize::MAX; self.vcount()];
        for (i, &v) in vertices.iter().enumerate() {
            pos[v] = i;
        }
        let mut adj = vec![Vec::new(); vertices.len()];
        for (i, &v) in vertices.iter().enumerate() {
            for &w in &self.adj[v] {
                if pos[w] != usize::MAX {
                    adj[i].push(pos[w]);
                }
            }
            adj[i].sort_unstable();
        }
        let insertion = self
            .insertion
            .iter()
            .filter(|&&(u, v)| pos[u] != usize::MAX && pos[v] != usize::MAX)
            .map(|&(u, v)| (pos[u].min(pos[v]), pos[u].max(pos[v])))
            .collect();
        Graph {
            adj,
            parts: self.parts.as_ref().map(|p| vertices.iter().map(|&v| p[v]).collect()),
            names: vertices.iter().map(|&v| self.names[v].clone()).collect(),
            insertion,
        }
    }

    /// Checks the structural invariants: no loops, no repeated neighbours,
    /// symmetric adjacency, and part labels respected by every edge.
    pub fn check_invariants(&self) -> Result<()> {
        for (v, list) in self.adj.iter().enumerate() {
            if list.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::InvalidGraph(format!("neighbours of {v} not strictly sorted")));
            }
            for &w in list {
                if w == v {
                    return Err(Error::InvalidGraph(format!("loop at {v}")));
                }
                if !self.has_edge(w, v) {
                    return Err(Error::InvalidGraph(format!("edge {v}-{w} not symmetric")));
                }
                if let Some(p) = &self.parts {
                    if p[v] == p[w] {
                        return Err(Error::InvalidGraph(format!("edge {v}-{w} inside one part")));
                    }
                }
            }
        }
        Ok(())
    }

    /// Dense 0/1 adjacency matrix.
    pub fn adjacency_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.vcount();
        let mut m = vec![vec![0i64; n]; n];
        for (v, list) in self.adj.iter().enumerate() {
            for &w in list {
                m[v][w] = 1;
            }
        }
        m
    }
}

/// `Cay(G, S)`: vertex `g` is joined to `sg` for each `s ∈ S`.
///
/// `S` must be inverse-closed and must not contain the identity.
pub fn cayley_graph(g: &GroupTable, s: &ElemSet) -> Result<Graph> {
    if s.contains_identity() {
        return Err(Error::IdentityInSet);
    }
    if !s.is_symmetric() {
        return Err(Error::AsymmetricSet);
    }
    // Connection-set element outermost, so Cay(ℤn, {±1}) lists its cycle in order.
    let edges = s.iter().flat_map(|t| g.elements().map(move |x| (x, g.mul(t, x))));
    let graph = Graph::from_edges(g.order(), edges)?;
    Ok(graph.with_names(g.names().to_vec()))
}

/// `BCay(G, S)`: vertex `(g, 1)` is joined to `(sg, 2)` for each `s ∈ S`.
/// `S` may be any subset, including empty, asymmetric, or containing `1`.
pub fn bicayley_graph(g: &GroupTable, s: &ElemSet) -> Graph {
    let n = g.order();
    let edges = s.iter().flat_map(|t| g.elements().map(move |x| (x, n + g.mul(t, x))));
    let names = (0..2 * n)
        .map(|v| format!("({},{})", g.name(v % n), v / n + 1))
        .collect();
    let parts = (0..2 * n).map(|v| if v < n { Part::One } else { Part::Two }).collect();
    Graph::from_edges(2 * n, edges)
        .and_then(|gr| gr.with_names(names).with_parts(parts))
        .expect("bi-Cayley edges always join the two parts")
}

/// How `BCay(G, S)` splits into components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionReport {
    /// `⟨SS^{-1}⟩`.
    pub subgroup: ElemSet,
    pub component_count: usize,
    pub component_sizes: Vec<usize>,
}

/// `BCay(G, S)` is `|G|/|H|` copies of `BCay(H, S)` with `H = ⟨SS^{-1}⟩`.
/// The predicted count is checked against a traversal of the built graph.
pub fn bcay_decomposition(g: &GroupTable, s: &ElemSet) -> Result<DecompositionReport> {
    if s.is_empty() {
        return Err(Error::EmptySet);
    }
    let h = g.difference_subgroup(s);
    let predicted = g.order() / h.len();
    let comps = bicayley_graph(g, s).components();
    let mut sizes: Vec<usize> = comps.iter().map(Vec::len).collect();
    sizes.sort_unstable();
    if comps.len() != predicted || sizes.iter().any(|&k| k != 2 * h.len()) {
        return Err(Error::Invariant(format!(
            "BCay has {} components of sizes {sizes:?}, expected {predicted} of size {}",
            comps.len(),
            2 * h.len()
        )));
    }
    Ok(DecompositionReport {
        subgroup: h,
        component_count: predicted,
        component_sizes: sizes,
    })
}
