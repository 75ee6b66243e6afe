//! Joint colour refinement of two graphs and individualisation–refinement
//! backtracking. Colours are shared between the two graphs: a colour id means
//! the same refined signature on both sides, so a discrete colouring pairs
//! vertices directly.

use crate::graph::Graph;

pub(crate) type Colouring = Vec<u32>;

/// Counts search nodes against a budget shared by all searches of one query.
#[derive(Debug)]
pub(crate) struct NodeCounter {
    pub used: u64,
    pub budget: u64,
}

#[derive(Debug)]
pub(crate) struct OutOfBudget;

impl NodeCounter {
    pub fn new(budget: u64) -> Self {
        NodeCounter { used: 0, budget }
    }

    fn tick(&mut self) -> Result<(), OutOfBudget> {
        self.used += 1;
        if self.used > self.budget {
            Err(OutOfBudget)
        } else {
            Ok(())
        }
    }
}

pub(crate) fn degree_colouring(g: &Graph) -> Colouring {
    (0..g.vcount()).map(|v| g.degree(v) as u32).collect()
}

/// Refines both colourings to the coarsest equitable refinement, renumbering
/// colours by sorted signature so that ids stay comparable across the graphs.
/// Returns false as soon as the colour histograms differ.
pub(crate) fn refine(g1: &Graph, g2: &Graph, c1: &mut Colouring, c2: &mut Colouring) -> bool {
    let n = c1.len();
    if n != c2.len() {
        return false;
    }
    let mut count = usize::MAX;
    loop {
        let signature = |g: &Graph, c: &[u32], v: usize| {
            let mut nb: Vec<u32> = g.neighbors(v).iter().map(|&w| c[w]).collect();
            nb.sort_unstable();
            (c[v], nb)
        };
        let s1: Vec<(u32, Vec<u32>)> = (0..n).map(|v| signature(g1, c1, v)).collect();
        let s2: Vec<(u32, Vec<u32>)> = (0..n).map(|v| signature(g2, c2, v)).collect();
        let mut all: Vec<&(u32, Vec<u32>)> = s1.iter().chain(&s2).collect();
        all.sort_unstable();
        all.dedup();
        let id = |s: &(u32, Vec<u32>)| all.binary_search(&s).expect("signature present") as u32;
        let mut h1 = vec![0usize; all.len()];
        let mut h2 = vec![0usize; all.len()];
        for v in 0..n {
            c1[v] = id(&s1[v]);
            c2[v] = id(&s2[v]);
            h1[c1[v] as usize] += 1;
            h2[c2[v] as usize] += 1;
        }
        if h1 != h2 {
            return false;
        }
        if all.len() == count {
            return true;
        }
        count = all.len();
    }
}

/// The smallest non-singleton colour class (lowest colour on ties), if any.
pub(crate) fn target_cell(c: &[u32]) -> Option<u32> {
    let k = c.iter().copied().max().map_or(0, |m| m as usize + 1);
    let mut sizes = vec![0usize; k];
    for &x in c {
        sizes[x as usize] += 1;
    }
    (0..k).filter(|&i| sizes[i] > 1).min_by_key(|&i| (sizes[i], i)).map(|i| i as u32)
}

/// Gives `v` in the first colouring and `w` in the second a fresh shared colour.
pub(crate) fn individualise(c1: &[u32], c2: &[u32], v: usize, w: usize) -> (Colouring, Colouring) {
    let fresh = c1.iter().copied().max().unwrap_or(0) + 1;
    let mut d1 = c1.to_vec();
    let mut d2 = c2.to_vec();
    d1[v] = fresh;
    d2[w] = fresh;
    (d1, d2)
}

fn maps_edges(g1: &Graph, g2: &Graph, mapping: &[usize]) -> bool {
    g1.edge_count() == g2.edge_count()
        && (0..g1.vcount()).all(|u| g1.neighbors(u).iter().all(|&v| g2.has_edge(mapping[u], mapping[v])))
}

/// Searches for an isomorphism respecting the given colourings.
pub(crate) fn search(
    g1: &Graph,
    g2: &Graph,
    mut c1: Colouring,
    mut c2: Colouring,
    nodes: &mut NodeCounter,
) -> Result<Option<Vec<usize>>, OutOfBudget> {
    nodes.tick()?;
    if !refine(g1, g2, &mut c1, &mut c2) {
        return Ok(None);
    }
    let n = c1.len();
    match target_cell(&c1) {
        None => {
            let mut by_colour = vec![0usize; n];
            for (w, &c) in c2.iter().enumerate() {
                by_colour[c as usize] = w;
            }
            let mapping: Vec<usize> = c1.iter().map(|&c| by_colour[c as usize]).collect();
            Ok(maps_edges(g1, g2, &mapping).then_some(mapping))
        }
        Some(cell) => {
            let v = (0..n).find(|&v| c1[v] == cell).expect("cell is non-empty");
            for w in (0..n).filter(|&w| c2[w] == cell) {
                let (d1, d2) = individualise(&c1, &c2, v, w);
                if let Some(m) = search(g1, g2, d1, d2, nodes)? {
                    return Ok(Some(m));
                }
            }
            Ok(None)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn classes(c: &[u32]) -> usize {
        let mut seen: Vec<u32> = c.to_vec();
        seen.sort_unstable();
        seen.dedup();
        seen.len()
    }

    #[test]
    fn refinement_separates_path_ends() {
        let p = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let mut c1 = degree_colouring(&p);
        let mut c2 = c1.clone();
        assert!(refine(&p, &p, &mut c1, &mut c2));
        assert_eq!(classes(&c1), 2);
        assert_eq!(c1[0], c1[3]);
        assert_ne!(c1[0], c1[1]);
    }

    #[test]
    fn histogram_mismatch() {
        let p = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let star = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let mut c1 = degree_colouring(&p);
        let mut c2 = degree_colouring(&star);
        assert!(!refine(&p, &star, &mut c1, &mut c2));
    }

    #[test]
    fn budget_is_enforced() {
        let g = Graph::empty(6);
        let mut nodes = NodeCounter::new(3);
        let r = search(&g, &g, degree_colouring(&g), degree_colouring(&g), &mut nodes);
        assert!(r.is_err());
    }
}
