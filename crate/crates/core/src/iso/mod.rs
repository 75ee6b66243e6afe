//! Graph isomorphism with self-verifying certificates, invariant fingerprints,
//! and automorphism groups.
//!
//! The search is colour refinement plus individualisation with backtracking.
//! Refinement starts from vertex degrees only; bi-Cayley part labels are not
//! used as colours because an isomorphism between bi-Cayley graphs may
//! exchange the two parts.

mod automorphisms;
mod search;

pub use automorphisms::{graph_automorphisms, graph_automorphisms_with_budget, GraphAutReport};

use std::fmt;

use serde::Serialize;

use crate::graph::{bicayley_graph, Graph};
use crate::group::{Automorphism, Element, ElemSet, GroupTable};
use crate::spectra::charpoly_mod;
use crate::{Error, Result};
use search::{degree_colouring, search as backtrack, NodeCounter};

/// Default search-node budget for one isomorphism or automorphism query.
pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

/// A vertex bijection `Γ1 → Γ2`: vertex `v` maps to `mapping[v]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct IsoCertificate {
    mapping: Vec<usize>,
}

impl IsoCertificate {
    /// Wraps an image list; fails unless it is a permutation of `0..n`.
    pub fn new(mapping: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; mapping.len()];
        for &x in &mapping {
            if x >= mapping.len() || std::mem::replace(&mut seen[x], true) {
                return Err(Error::InvalidGraph("certificate is not a bijection".into()));
            }
        }
        Ok(IsoCertificate { mapping })
    }

    pub fn identity(n: usize) -> Self {
        IsoCertificate { mapping: (0..n).collect() }
    }

    pub fn mapping(&self) -> &[usize] {
        &self.mapping
    }

    pub fn apply(&self, v: usize) -> usize {
        self.mapping[v]
    }

    /// Checks, independently of any search, that the map is a bijection and
    /// that `{u,v} ∈ E(Γ1) ⇔ {f(u),f(v)} ∈ E(Γ2)`.
    pub fn verify(&self, g1: &Graph, g2: &Graph) -> bool {
        let n = g1.vcount();
        if g2.vcount() != n || self.mapping.len() != n {
            return false;
        }
        let mut hit = vec![false; n];
        for &x in &self.mapping {
            if x >= n || hit[x] {
                return false;
            }
            hit[x] = true;
        }
        // Edge counts agree and every edge maps to an edge: the map is then a
        // bijection on edges, so non-edges map to non-edges as well.
        g1.edge_count() == g2.edge_count()
            && g1
                .edges()
                .into_iter()
                .all(|(u, v)| g2.has_edge(self.mapping[u], self.mapping[v]))
    }

    pub fn inverse(&self) -> IsoCertificate {
        let mut inv = vec![0; self.mapping.len()];
        for (v, &w) in self.mapping.iter().enumerate() {
            inv[w] = v;
        }
        IsoCertificate { mapping: inv }
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &IsoCertificate) -> IsoCertificate {
        IsoCertificate {
            mapping: self.mapping.iter().map(|&w| next.mapping[w]).collect(),
        }
    }

    /// Certificate file form: one image per line.
    pub fn to_text(&self) -> String {
        let mut s: String = self.mapping.iter().map(|w| format!("{w}\n")).collect();
        if s.is_empty() {
            s.push('\n');
        }
        s
    }

    /// Parses whitespace-separated images.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut offset = 0;
        let mut mapping = Vec::new();
        for tok in text.split_whitespace() {
            let at = text[offset..].find(tok).map_or(offset, |i| offset + i);
            offset = at + tok.len();
            mapping.push(
                tok.parse()
                    .map_err(|_| Error::parse(at, tok, "expected a vertex index"))?,
            );
        }
        Self::new(mapping)
    }
}

impl fmt::Display for IsoCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.mapping.iter().map(|w| w.to_string()).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

/// Outcome of an isomorphism query. Running out of budget is reported as
/// such and never as non-isomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoOutcome {
    Isomorphic(IsoCertificate),
    NotIsomorphic,
    BudgetExceeded { budget: u64, nodes: u64 },
}

impl IsoOutcome {
    pub fn certificate(&self) -> Option<&IsoCertificate> {
        match self {
            IsoOutcome::Isomorphic(c) => Some(c),
            _ => None,
        }
    }

    pub fn is_isomorphic(&self) -> bool {
        matches!(self, IsoOutcome::Isomorphic(_))
    }

    /// `Ok(Some(cert))`, `Ok(None)`, or the budget error.
    pub fn into_result(self) -> Result<Option<IsoCertificate>> {
        match self {
            IsoOutcome::Isomorphic(c) => Ok(Some(c)),
            IsoOutcome::NotIsomorphic => Ok(None),
            IsoOutcome::BudgetExceeded { budget, .. } => Err(Error::BudgetExceeded { budget }),
        }
    }
}

/// Modulus for the characteristic-polynomial component of fingerprints.
const FINGERPRINT_PRIME: u64 = (1 << 61) - 1;

/// Isomorphism invariants: equal fingerprints are necessary for isomorphism.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Fingerprint {
    pub vcount: usize,
    pub edge_count: usize,
    pub degrees: Vec<usize>,
    pub component_sizes: Vec<usize>,
    /// Characteristic polynomial of the adjacency matrix modulo `2^61 − 1`,
    /// low degree first. Empty above 256 vertices.
    pub char_poly_mod: Vec<u64>,
}

pub fn fingerprint(g: &Graph) -> Fingerprint {
    let mut component_sizes: Vec<usize> = g.components().iter().map(Vec::len).collect();
    component_sizes.sort_unstable();
    let char_poly_mod = if g.vcount() <= crate::spectra::MAX_SPECTRUM_VERTICES {
        charpoly_mod(&g.adjacency_matrix(), FINGERPRINT_PRIME)
    } else {
        Vec::new()
    };
    Fingerprint {
        vcount: g.vcount(),
        edge_count: g.edge_count(),
        degrees: g.degree_sequence(),
        component_sizes,
        char_poly_mod,
    }
}

/// Cheap invariants used to pair components: no spectral part.
fn quick_invariant(g: &Graph) -> (usize, usize, Vec<usize>) {
    (g.vcount(), g.edge_count(), g.degree_sequence())
}

fn connected_search(g1: &Graph, g2: &Graph, nodes: &mut NodeCounter) -> std::result::Result<Option<Vec<usize>>, ()> {
    if quick_invariant(g1) != quick_invariant(g2) {
        return Ok(None);
    }
    backtrack(g1, g2, degree_colouring(g1), degree_colouring(g2), nodes).map_err(|_| ())
}

fn find(g1: &Graph, g2: &Graph, nodes: &mut NodeCounter) -> std::result::Result<Option<Vec<usize>>, ()> {
    let n = g1.vcount();
    if n != g2.vcount() || g1.edge_count() != g2.edge_count() || g1.degree_sequence() != g2.degree_sequence() {
        return Ok(None);
    }
    let comps1 = g1.components();
    let comps2 = g2.components();
    if comps1.len() != comps2.len() {
        return Ok(None);
    }
    if comps1.len() <= 1 {
        return connected_search(g1, g2, nodes);
    }
    // Pair components greedily: isomorphism is transitive, so matching a
    // component with the first isomorphic partner never loses a solution.
    let subs2: Vec<Graph> = comps2.iter().map(|c| g2.induced(c)).collect();
    let keys2: Vec<_> = subs2.iter().map(quick_invariant).collect();
    let mut used = vec![false; comps2.len()];
    let mut mapping = vec![usize::MAX; n];
    for c1 in &comps1 {
        let sub1 = g1.induced(c1);
        let key1 = quick_invariant(&sub1);
        let mut matched = false;
        for j in 0..comps2.len() {
            if used[j] || keys2[j] != key1 {
                continue;
            }
            if let Some(m) = connected_search(&sub1, &subs2[j], nodes)? {
                for (i, &v) in c1.iter().enumerate() {
                    mapping[v] = comps2[j][m[i]];
                }
                used[j] = true;
                matched = true;
                break;
            }
        }
        if !matched {
            return Ok(None);
        }
    }
    Ok(Some(mapping))
}

pub fn are_isomorphic(g1: &Graph, g2: &Graph) -> IsoOutcome {
    are_isomorphic_with_budget(g1, g2, DEFAULT_NODE_BUDGET)
}

/// Decides `Γ1 ≅ Γ2`. A returned certificate has been verified by
/// [`IsoCertificate::verify`].
pub fn are_isomorphic_with_budget(g1: &Graph, g2: &Graph, budget: u64) -> IsoOutcome {
    let mut nodes = NodeCounter::new(budget);
    match find(g1, g2, &mut nodes) {
        Err(()) => IsoOutcome::BudgetExceeded {
            budget,
            nodes: nodes.used,
        },
        Ok(None) => IsoOutcome::NotIsomorphic,
        Ok(Some(mapping)) => {
            let cert = IsoCertificate { mapping };
            assert!(cert.verify(g1, g2), "isomorphism search returned an invalid map");
            IsoOutcome::Isomorphic(cert)
        }
    }
}

/// The map `(g,1) ↔ (g,2)`, an isomorphism `BCay(G,S) → BCay(G,S^{-1})`.
pub fn part_swap_iso(g: &GroupTable, s: &ElemSet) -> Result<IsoCertificate> {
    let n = g.order();
    let cert = IsoCertificate {
        mapping: (0..2 * n).map(|v| (v + n) % (2 * n)).collect(),
    };
    let source = bicayley_graph(g, s);
    let target = bicayley_graph(g, &g.inverse_set(s));
    if !cert.verify(&source, &target) {
        return Err(Error::Invariant("part swap is not an isomorphism".into()));
    }
    Ok(cert)
}

/// The map `(x,1) ↦ (x^α,1)`, `(y,2) ↦ (g·y^α,2)`, an isomorphism
/// `BCay(G,S) → BCay(G,gS^α)`. Not verified here.
pub fn bci_isomorphism(group: &GroupTable, g: Element, alpha: &Automorphism) -> IsoCertificate {
    let n = group.order();
    let mapping = (0..2 * n)
        .map(|v| {
            if v < n {
                alpha.apply(v)
            } else {
                n + group.mul(g, alpha.apply(v - n))
            }
        })
        .collect();
    IsoCertificate { mapping }
}

/// The map `x ↦ x^α`, an isomorphism `Cay(G,S) → Cay(G,S^α)`. Not verified here.
pub fn ci_isomorphism(alpha: &Automorphism) -> IsoCertificate {
    IsoCertificate {
        mapping: alpha.images().to_vec(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::cayley_graph;
    use itertools::Itertools;

    fn brute_force(g1: &Graph, g2: &Graph) -> bool {
        let n = g1.vcount();
        n == g2.vcount()
            && g1.edge_count() == g2.edge_count()
            && (0..n).permutations(n).any(|p| IsoCertificate { mapping: p }.verify(g1, g2))
    }

    fn graph_from_mask(n: usize, mask: u32) -> Graph {
        let pairs: Vec<(usize, usize)> = (0..n).tuple_combinations().collect();
        Graph::from_edges(n, pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e)).unwrap()
    }

    #[test]
    fn agrees_with_brute_force_on_five_vertices() {
        // All 1024 labelled graphs on 5 vertices against a sample of partners.
        let graphs: Vec<Graph> = (0..1024).map(|m| graph_from_mask(5, m)).collect();
        for (i, g1) in graphs.iter().enumerate().step_by(7) {
            for g2 in graphs.iter().skip(i % 13).step_by(29) {
                let out = are_isomorphic(g1, g2);
                assert_eq!(out.is_isomorphic(), brute_force(g1, g2));
            }
        }
    }

    #[test]
    fn d8_witness_graphs() {
        let d8 = GroupTable::dihedral(4).unwrap();
        let a = bicayley_graph(&d8, &d8.parse_set("1,a2").unwrap());
        let b = bicayley_graph(&d8, &d8.parse_set("1,b").unwrap());
        let cert = are_isomorphic(&a, &b).certificate().cloned().unwrap();
        assert!(cert.verify(&a, &b));
        assert!(cert.inverse().verify(&b, &a));
        assert_eq!(cert.then(&cert.inverse()), IsoCertificate::identity(16));
    }

    #[test]
    fn d10_orbit_sets_are_distinct() {
        let d10 = GroupTable::dihedral(5).unwrap();
        let g2 = bicayley_graph(&d10, &d10.parse_set("1,a,a2,b").unwrap());
        let g3 = bicayley_graph(&d10, &d10.parse_set("1,a,b,ab").unwrap());
        assert_eq!(are_isomorphic(&g2, &g3), IsoOutcome::NotIsomorphic);
        assert_ne!(fingerprint(&g2), fingerprint(&g3));
        assert_eq!(fingerprint(&g2), fingerprint(&g2.clone()));
    }

    #[test]
    fn self_isomorphism_and_paths() {
        let c4 = Graph::from_edges(4, (0..4).map(|i| (i, (i + 1) % 4))).unwrap();
        let p4 = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_ne!(fingerprint(&c4), fingerprint(&p4));
        assert_eq!(are_isomorphic(&c4, &c4).certificate(), Some(&IsoCertificate::identity(4)));
    }

    #[test]
    fn part_swap_and_translation_maps() {
        let z5 = GroupTable::cyclic(5).unwrap();
        let cert = part_swap_iso(&z5, &z5.set([1])).unwrap();
        let g = bicayley_graph(&z5, &z5.set([1]));
        assert!(cert.verify(&g, &bicayley_graph(&z5, &z5.set([4]))));
        // For symmetric S the swap is an automorphism.
        let s = z5.set([1, 4]);
        let g = bicayley_graph(&z5, &s);
        assert!(part_swap_iso(&z5, &s).unwrap().verify(&g, &g));

        let d10 = GroupTable::dihedral(5).unwrap();
        let auts = d10.automorphisms(1000).unwrap();
        let s = d10.parse_set("1,a,b,a2b").unwrap();
        for alpha in auts.iter() {
            for x in d10.elements() {
                let t = d10.translate(x, &d10.apply_aut(alpha, &s));
                let cert = bci_isomorphism(&d10, x, alpha);
                assert!(cert.verify(&bicayley_graph(&d10, &s), &bicayley_graph(&d10, &t)));
            }
        }
        let sym = d10.parse_set("a,a4,b").unwrap();
        for alpha in auts.iter() {
            let cert = ci_isomorphism(alpha);
            let t = d10.apply_aut(alpha, &sym);
            assert!(cert.verify(&cayley_graph(&d10, &sym).unwrap(), &cayley_graph(&d10, &t).unwrap()));
        }
    }

    #[test]
    fn budget_outcome_is_distinct() {
        let k = Graph::from_edges(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        let c6 = Graph::from_edges(6, (0..6).map(|i| (i, (i + 1) % 6))).unwrap();
        assert!(matches!(
            are_isomorphic_with_budget(&c6, &c6, 1),
            IsoOutcome::BudgetExceeded { .. }
        ));
        assert_eq!(are_isomorphic(&k, &c6), IsoOutcome::NotIsomorphic);
    }

    #[test]
    fn certificate_text() {
        let c = IsoCertificate::new(vec![2, 0, 1]).unwrap();
        assert_eq!(c.to_text(), "2\n0\n1\n");
        assert_eq!(IsoCertificate::from_text("2 0\n1").unwrap(), c);
        assert!(IsoCertificate::from_text("0 0").is_err());
        assert!(IsoCertificate::from_text("0 x").is_err());
    }
}
