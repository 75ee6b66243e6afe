//! Graph automorphism groups by a stabiliser chain: at each level the orbit
//! of the chosen base point is found by searching for automorphisms that map
//! it to each candidate, pruning candidates already reachable through the
//! generators found so far (or already known to be unreachable).

use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;

use super::search::{degree_colouring, individualise, refine, search, target_cell, Colouring, NodeCounter};
use crate::graph::Graph;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphAutReport {
    /// `|Aut(Γ)|`, exact.
    pub group_order: BigUint,
    /// Generators, each a vertex permutation given as an image list.
    pub generators: Vec<Vec<usize>>,
    /// `|Aut(Γ)_v|` for each vertex `v`.
    pub stabilizer_orders: Vec<BigUint>,
    /// Orbits of `Aut(Γ)` on vertices, each sorted, listed by smallest vertex.
    pub orbits: Vec<Vec<usize>>,
    /// Search nodes used.
    pub nodes: u64,
}

impl GraphAutReport {
    pub fn orbit_of(&self, v: usize) -> &[usize] {
        self.orbits
            .iter()
            .find(|o| o.binary_search(&v).is_ok())
            .expect("every vertex lies in an orbit")
    }
}

/// Closure of `seeds` under `gens`, as a membership mask.
fn closure(n: usize, seeds: &[usize], gens: &[Vec<usize>]) -> Vec<bool> {
    let mut seen = vec![false; n];
    let mut stack: Vec<usize> = Vec::new();
    for &s in seeds {
        if !seen[s] {
            seen[s] = true;
            stack.push(s);
        }
    }
    while let Some(x) = stack.pop() {
        for g in gens {
            let y = g[x];
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    seen
}

struct Chain<'a> {
    g: &'a Graph,
    gens: Vec<Vec<usize>>,
    nodes: NodeCounter,
}

impl Chain<'_> {
    /// Order of the subgroup fixing every point individualised in `c`.
    fn stabiliser_order(&mut self, mut c: Colouring) -> Result<BigUint, ()> {
        let g = self.g;
        let mut c_copy = c.clone();
        refine(g, g, &mut c, &mut c_copy);
        let Some(cell) = target_cell(&c) else {
            return Ok(BigUint::one());
        };
        let n = g.vcount();
        let v = (0..n).find(|&v| c[v] == cell).expect("non-empty cell");
        let first_gen = self.gens.len();
        let (cv, _) = individualise(&c, &c, v, v);
        let below = self.stabiliser_order(cv.clone())?;

        // Generators found so far that fix this level's base: those found in
        // the deeper recursion, which all fix the points individualised in `c`.
        let mut level_gens: Vec<Vec<usize>> = self.gens[first_gen..].to_vec();
        let mut orbit = closure(n, &[v], &level_gens);
        let mut excluded = vec![false; n];
        for w in 0..n {
            if c[w] != cell || orbit[w] || excluded[w] {
                continue;
            }
            let (a, b) = individualise(&c, &c, v, w);
            match search(g, g, a, b, &mut self.nodes) {
                Err(_) => return Err(()),
                Ok(Some(m)) => {
                    level_gens.push(m.clone());
                    self.gens.push(m);
                    orbit = closure(n, &[v], &level_gens);
                }
                Ok(None) => {
                    let unreachable = closure(n, &[w], &level_gens);
                    for (x, e) in excluded.iter_mut().enumerate() {
                        *e |= unreachable[x];
                    }
                }
            }
        }
        let size = orbit.iter().filter(|&&b| b).count();
        Ok(below * BigUint::from(size))
    }
}

/// `Aut(Γ)` with exact order, generators, orbits and vertex stabiliser orders.
pub fn graph_automorphisms(g: &Graph) -> Result<GraphAutReport> {
    graph_automorphisms_with_budget(g, super::DEFAULT_NODE_BUDGET)
}

pub fn graph_automorphisms_with_budget(g: &Graph, budget: u64) -> Result<GraphAutReport> {
    let n = g.vcount();
    let mut chain = Chain {
        g,
        gens: Vec::new(),
        nodes: NodeCounter::new(budget),
    };
    let order = chain
        .stabiliser_order(degree_colouring(g))
        .map_err(|_| Error::BudgetExceeded { budget })?;
    let gens = chain.gens;

    let mut assigned = vec![false; n];
    let mut orbits = Vec::new();
    for v in 0..n {
        if assigned[v] {
            continue;
        }
        let mask = closure(n, &[v], &gens);
        let orbit: Vec<usize> = (0..n).filter(|&x| mask[x]).collect();
        for &x in &orbit {
            assigned[x] = true;
        }
        orbits.push(orbit);
    }
    let mut stabilizer_orders = vec![BigUint::one(); n];
    for orbit in &orbits {
        let s = &order / BigUint::from(orbit.len());
        for &x in orbit {
            stabilizer_orders[x] = s.clone();
        }
    }
    Ok(GraphAutReport {
        group_order: order,
        generators: gens,
        stabilizer_orders,
        orbits,
        nodes: chain.nodes.used,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order(g: &Graph) -> u64 {
        graph_automorphisms(g).unwrap().group_order.try_into().unwrap()
    }

    #[test]
    fn small_orders() {
        let c5 = Graph::from_edges(5, (0..5).map(|i| (i, (i + 1) % 5))).unwrap();
        assert_eq!(order(&c5), 10);
        let c4 = Graph::from_edges(4, (0..4).map(|i| (i, (i + 1) % 4))).unwrap();
        assert_eq!(order(&c4), 8);
        assert_eq!(order(&Graph::empty(6)), 720);
        assert_eq!(order(&Graph::empty(0)), 1);
        let k33 = Graph::from_edges(6, (0..3).flat_map(|i| (3..6).map(move |j| (i, j)))).unwrap();
        assert_eq!(order(&k33), 72);
        let path = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(order(&path), 2);
    }

    #[test]
    fn petersen() {
        let outer = (0..5).map(|i| (i, (i + 1) % 5));
        let spokes = (0..5).map(|i| (i, i + 5));
        let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
        let g = Graph::from_edges(10, outer.chain(spokes).chain(inner)).unwrap();
        let r = graph_automorphisms(&g).unwrap();
        assert_eq!(r.group_order, BigUint::from(120u32));
        assert_eq!(r.orbits.len(), 1);
        assert!(r.stabilizer_orders.iter().all(|s| *s == BigUint::from(12u32)));
    }

    #[test]
    fn generators_preserve_edges() {
        let g = Graph::from_edges(7, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 6), (6, 3)]).unwrap();
        let r = graph_automorphisms(&g).unwrap();
        assert_eq!(r.group_order, BigUint::from(48u32));
        for p in &r.generators {
            for (u, v) in g.edges() {
                assert!(g.has_edge(p[u], p[v]));
            }
        }
    }
}
