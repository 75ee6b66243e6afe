//! Instance checks of structural statements about (bi-)Cayley graphs:
//! BCI ⇒ CI certificate extraction, complement duality, stabiliser orders,
//! the valency-p structure over ℤ_2p, and characteristic-subgroup inheritance.

use num_bigint::BigUint;
use num_traits::Zero;
use serde::Serialize;

use super::{group_property, is_bci_graph, Limits};
use crate::equiv::{bci_search, canonical_rep, ci_equivalent, subset_orbits_with, Action, EquivCertificate, OrbitOptions};
use crate::graph::{bicayley_graph, cayley_graph, Graph};
use crate::group::{Automorphism, ElemSet, GroupContext, GroupTable};
use crate::iso::{are_isomorphic_with_budget, fingerprint, graph_automorphisms_with_budget, Fingerprint};
use crate::{Error, Result};

/// How [`extract_ci_from_bci`] obtained its automorphism.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExtractRoute {
    /// `g = 1`: the certificate's `α` already satisfies `S = T^α`.
    Direct,
    /// `|S| = 1`: `α` works because `s₀ = s₀^{-1} = t₀^α`.
    BaseCase,
    /// The induction went through and produced `α`.
    Recursion,
    /// A recursion step did not hold; `α` was found by direct search.
    Fallback,
    /// No automorphism maps `T` onto `S`.
    Failed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Extraction {
    pub alpha: Option<Automorphism>,
    pub route: ExtractRoute,
    /// The first recursion step that failed, if any.
    pub mismatch: Option<String>,
}

/// Follows the induction that turns a BCI certificate for `S∪{1}`, `T∪{1}`
/// into an automorphism with `S = T^α`:
/// with `s_n = g` and `t_n` the element with `g·t_n^α = 1`, it recurses on
/// `S₀ = S∖{s_n^{-1}}`, `T₀ = T∖{t_n}`, requiring `S₀∪{1} = g(T₀∪{1})^α`.
/// Any step that does not hold is recorded and the automorphism is then
/// found by direct search over `Aut(G)`.
pub fn extract_ci_from_bci(ctx: &GroupContext, s: &ElemSet, t: &ElemSet, cert: &EquivCertificate) -> Result<Extraction> {
    let g = ctx.group();
    for (name, x) in [("S", s), ("T", t)] {
        if x.contains_identity() || !x.is_symmetric() {
            return Err(Error::Hypothesis(format!("{name} must be symmetric and identity-free")));
        }
    }
    let s1 = g.union_set(s, &g.set([0]));
    let t1 = g.union_set(t, &g.set([0]));
    if cert.kind() != Action::Bci || cert.apply(g, &t1) != s1 {
        return Err(Error::Hypothesis("certificate must satisfy S∪{1} = g(T∪{1})^α".into()));
    }
    let gg = cert.g().unwrap_or(0);
    let alpha = cert.alpha();
    let top = if gg == 0 {
        ExtractRoute::Direct
    } else if s.len() == 1 {
        ExtractRoute::BaseCase
    } else {
        ExtractRoute::Recursion
    };
    match recurse(g, s.clone(), t.clone(), gg, alpha) {
        Ok(()) => Ok(Extraction {
            alpha: Some(alpha.clone()),
            route: top,
            mismatch: None,
        }),
        Err(mismatch) => {
            let found = ci_equivalent(ctx, t, s).map(|c| c.alpha().clone());
            Ok(Extraction {
                route: if found.is_some() {
                    ExtractRoute::Fallback
                } else {
                    ExtractRoute::Failed
                },
                alpha: found,
                mismatch: Some(mismatch),
            })
        }
    }
}

/// One level of the induction; `Ok` means `S = T^α` was established.
fn recurse(g: &GroupTable, s: ElemSet, t: ElemSet, gg: usize, alpha: &Automorphism) -> std::result::Result<(), String> {
    let fmt = |x: &ElemSet| format!("{{{}}}", g.format_set(x));
    if gg == 0 || s.is_empty() {
        return if g.apply_aut(alpha, &t) == s {
            Ok(())
        } else {
            Err(format!("T^α ≠ S for S={}, T={}", fmt(&s), fmt(&t)))
        };
    }
    if s.len() == 1 {
        let (s0, t0) = (s.members()[0], t.members()[0]);
        let ok = gg == s0 && g.mul(gg, alpha.apply(t0)) == 0 && alpha.apply(t0) == s0;
        return if ok {
            Ok(())
        } else {
            Err(format!("base case fails for S={}, T={}", fmt(&s), fmt(&t)))
        };
    }
    if !s.contains(gg) {
        return Err(format!("g={} is not in S={}", g.literal(gg), fmt(&s)));
    }
    let t_n = alpha.inverse().apply(g.inv(gg));
    if !t.contains(t_n) {
        return Err(format!("t_n={} is not in T={}", g.literal(t_n), fmt(&t)));
    }
    let s0 = g.set(s.iter().filter(|&x| x != g.inv(gg)));
    let t0 = g.set(t.iter().filter(|&x| x != t_n));
    let claimed = g.union_set(&s0, &g.set([0]));
    let computed = g.translate(gg, &g.apply_aut(alpha, &g.union_set(&t0, &g.set([0]))));
    if claimed != computed {
        return Err(format!(
            "step |S|={}: S₀∪{{1}} = {} but g(T₀∪{{1}})^α = {}",
            s.len(),
            fmt(&claimed),
            fmt(&computed)
        ));
    }
    recurse(g, s0, t0, gg, alpha)?;
    if g.apply_aut(alpha, &t) == s {
        Ok(())
    } else {
        Err(format!("conclusion S = T^α fails for S={}", fmt(&s)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CrosscheckAnomaly {
    /// `Cay(G,S) ≅ Cay(G,T)` but `BCay(G,S∪{1}) ≇ BCay(G,T∪{1})`.
    AugmentedNotIsomorphic { s: String, t: String },
    /// The group is BCI but no `(g,α)` relates the augmented sets.
    MissingBciCertificate { s: String, t: String },
    /// The group is BCI, a BCI certificate exists, but no `α` with `T^α = S` does.
    ExtractionFailed { s: String, t: String },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RouteCounts {
    pub direct: u64,
    pub base_case: u64,
    pub recursion: u64,
    pub fallback: u64,
    pub failed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrosscheckReport {
    pub group: String,
    pub group_is_bci: bool,
    /// Symmetric identity-free subsets examined.
    pub sets: usize,
    /// Ordered pairs `S ≠ T` with `Cay(G,S) ≅ Cay(G,T)`.
    pub cay_isomorphic_pairs: u64,
    /// Pairs whose augmented sets have a BCI certificate.
    pub bci_certified_pairs: u64,
    pub routes: RouteCounts,
    /// One example of a failed recursion step, if any occurred.
    pub sample_mismatch: Option<String>,
    pub anomalies: Vec<CrosscheckAnomaly>,
    /// In a non-BCI group: pairs with `S∪{1} = g(T∪{1})^α` but no `α'` with
    /// `T^{α'} = S`. Not a contradiction of any claim about BCI groups, but
    /// shows the induction step needs the BCI hypothesis.
    pub unextractable_pairs: Vec<(String, String)>,
}

/// Groups `items` into isomorphism classes of their graphs.
fn iso_classes(graphs: &[Graph], limits: &Limits) -> Result<Vec<Vec<usize>>> {
    let fps: Vec<Fingerprint> = graphs.iter().map(fingerprint).collect();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for i in 0..graphs.len() {
        let mut placed = false;
        for class in classes.iter_mut() {
            let r = class[0];
            if fps[r] == fps[i]
                && are_isomorphic_with_budget(&graphs[r], &graphs[i], limits.node_budget)
                    .into_result()?
                    .is_some()
            {
                class.push(i);
                placed = true;
                break;
            }
        }
        if !placed {
            classes.push(vec![i]);
        }
    }
    Ok(classes)
}

/// For every ordered pair of symmetric identity-free sets with isomorphic
/// Cayley graphs: checks `BCay(G,S∪{1}) ≅ BCay(G,T∪{1})`, and, where a BCI
/// certificate for the augmented sets exists, extracts `α` with `T^α = S`.
pub fn bci_ci_crosscheck(ctx: &GroupContext, limits: &Limits) -> Result<CrosscheckReport> {
    let g = ctx.group();
    let n = g.order();
    if n > 16 {
        return Err(Error::SizeCap {
            count: 1u128 << n,
            cap: 1 << 16,
        });
    }
    let group_is_bci = group_property(ctx, Action::Bci, None, limits)?.holds;
    let sets: Vec<ElemSet> = (0u128..1 << n)
        .map(|m| g.set_from_mask(m))
        .filter(|s| !s.contains_identity() && s.is_symmetric())
        .collect();
    let cays: Vec<Graph> = sets.iter().map(|s| cayley_graph(g, s)).collect::<Result<_>>()?;
    let classes = iso_classes(&cays, limits)?;

    let mut report = CrosscheckReport {
        group: ctx.descriptor(),
        group_is_bci,
        sets: sets.len(),
        cay_isomorphic_pairs: 0,
        bci_certified_pairs: 0,
        routes: RouteCounts::default(),
        sample_mismatch: None,
        anomalies: Vec::new(),
        unextractable_pairs: Vec::new(),
    };
    let one = g.set([0]);
    for class in &classes {
        for &i in class {
            for &j in class {
                if i == j {
                    continue;
                }
                report.cay_isomorphic_pairs += 1;
                let (s, t) = (&sets[i], &sets[j]);
                let (s1, t1) = (g.union_set(s, &one), g.union_set(t, &one));
                let names = || (g.format_set(s), g.format_set(t));
                let iso = are_isomorphic_with_budget(&bicayley_graph(g, &s1), &bicayley_graph(g, &t1), limits.node_budget)
                    .into_result()?;
                if iso.is_none() {
                    let (s, t) = names();
                    report.anomalies.push(CrosscheckAnomaly::AugmentedNotIsomorphic { s, t });
                    continue;
                }
                // A certificate carrying T∪{1} onto S∪{1}.
                let Some(cert) = bci_search(ctx, &t1, &s1).certificate else {
                    if group_is_bci {
                        let (s, t) = names();
                        report.anomalies.push(CrosscheckAnomaly::MissingBciCertificate { s, t });
                    }
                    continue;
                };
                report.bci_certified_pairs += 1;
                let ex = extract_ci_from_bci(ctx, s, t, &cert)?;
                let counter = match ex.route {
                    ExtractRoute::Direct => &mut report.routes.direct,
                    ExtractRoute::BaseCase => &mut report.routes.base_case,
                    ExtractRoute::Recursion => &mut report.routes.recursion,
                    ExtractRoute::Fallback => &mut report.routes.fallback,
                    ExtractRoute::Failed => &mut report.routes.failed,
                };
                *counter += 1;
                if report.sample_mismatch.is_none() {
                    report.sample_mismatch = ex.mismatch.clone();
                }
                let ok = ex.alpha.as_ref().is_some_and(|a| g.apply_aut(a, t) == *s);
                if !ok {
                    let (s, t) = names();
                    if group_is_bci {
                        report.anomalies.push(CrosscheckAnomaly::ExtractionFailed { s, t });
                    } else {
                        report.unextractable_pairs.push((s, t));
                    }
                }
            }
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualityReport {
    pub set: String,
    pub complement: String,
    pub set_holds: bool,
    pub complement_holds: bool,
}

impl DualityReport {
    pub fn agrees(&self) -> bool {
        self.set_holds == self.complement_holds
    }
}

/// `BCay(G,S)` is a BCI-graph exactly when `BCay(G,G∖S)` is.
pub fn complement_duality_check(ctx: &GroupContext, s: &ElemSet, limits: &Limits) -> Result<DualityReport> {
    let c = ctx.complement_set(s);
    Ok(DualityReport {
        set: ctx.format_set(s),
        complement: ctx.format_set(&c),
        set_holds: is_bci_graph(ctx, s, limits)?.holds,
        complement_holds: is_bci_graph(ctx, &c, limits)?.holds,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilizerReport {
    pub group: String,
    pub p: usize,
    /// Connected bi-Cayley graphs with `|S| < p` examined (one per BCI orbit).
    pub graphs_checked: usize,
    /// Connection sets with a vertex stabiliser of order divisible by `p`.
    pub violations: Vec<String>,
}

impl StabilizerReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// For connected `BCay(G,S)` with `|S| < p`, no vertex stabiliser of the
/// automorphism group has order divisible by the prime `p`.
pub fn stabilizer_prime_check(ctx: &GroupContext, p: usize, limits: &Limits) -> Result<StabilizerReport> {
    let g = ctx.group();
    let mut report = StabilizerReport {
        group: ctx.descriptor(),
        p,
        graphs_checked: 0,
        violations: Vec::new(),
    };
    let opts = OrbitOptions {
        cayley_domain: false,
        cap: limits.subset_cap,
    };
    let prime = BigUint::from(p);
    for k in 1..p.min(g.order() + 1) {
        for s in subset_orbits_with(ctx, k, Action::Bci, opts)?.reps {
            let graph = bicayley_graph(g, &s);
            if !graph.is_connected() {
                continue;
            }
            report.graphs_checked += 1;
            let aut = graph_automorphisms_with_budget(&graph, limits.node_budget)?;
            if aut.stabilizer_orders.iter().any(|o| (o % &prime).is_zero()) {
                report.violations.push(g.format_set(&s));
            }
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Z2pEntry {
    /// Canonical representative of a BCI orbit of `p`-subsets.
    pub set: String,
    pub orbit_size: u64,
    /// `|Aut(BCay(G,S))_{(1,1)}|`.
    pub stabilizer_order: BigUint,
    pub divisible_by_p: bool,
    /// The orbit is that of `⟨g²⟩` (equivalently of `⟨g²⟩g`).
    pub even_subgroup_or_coset: bool,
    /// BCI-graph verdict, computed when `p` divides the stabiliser order.
    pub bci_graph: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Z2pReport {
    pub p: usize,
    pub entries: Vec<Z2pEntry>,
}

impl Z2pReport {
    /// Every representative with stabiliser order divisible by `p` is
    /// `⟨g²⟩` or `⟨g²⟩g` and its bi-Cayley graph is a BCI-graph.
    pub fn holds(&self) -> bool {
        self.entries
            .iter()
            .filter(|e| e.divisible_by_p)
            .all(|e| e.even_subgroup_or_coset && e.bci_graph == Some(true))
    }

    pub fn violations(&self) -> Vec<&Z2pEntry> {
        self.entries
            .iter()
            .filter(|e| e.divisible_by_p && !(e.even_subgroup_or_coset && e.bci_graph == Some(true)))
            .collect()
    }
}

/// Over `ℤ_2p` with `|S| = p`: if `p` divides the stabiliser of `(1,1)` in
/// `Aut(BCay(G,S))`, then `S` is `⟨g²⟩` or `⟨g²⟩g`, and the graph is a BCI-graph.
///
/// Both the stabiliser order at `(1,1)` and the conclusion are constant on
/// BCI orbits (the maps `(x,1) ↦ (x^α,1)`, `(y,2) ↦ (g·y^α,2)` fix `(1,1)`,
/// and the orbit of `⟨g²⟩` is `{⟨g²⟩, ⟨g²⟩g}`), so one set per orbit suffices.
pub fn z2p_structure_check(p: usize, limits: &Limits) -> Result<Z2pReport> {
    if ![3, 5, 7].contains(&p) {
        return Err(Error::Hypothesis(format!("p must be 3, 5 or 7, got {p}")));
    }
    let ctx = GroupContext::new(GroupTable::cyclic(2 * p)?)?;
    let g = ctx.group();
    let evens = g.set((0..2 * p).step_by(2));
    let even_rep = canonical_rep(&ctx, &evens, Action::Bci);
    let opts = OrbitOptions {
        cayley_domain: false,
        cap: limits.subset_cap,
    };
    let orbits = subset_orbits_with(&ctx, p, Action::Bci, opts)?;
    let prime = BigUint::from(p);
    let mut entries = Vec::new();
    for (s, &size) in orbits.reps.iter().zip(&orbits.orbit_sizes) {
        let aut = graph_automorphisms_with_budget(&bicayley_graph(g, s), limits.node_budget)?;
        let stab = aut.stabilizer_orders[0].clone();
        let divisible = (&stab % &prime).is_zero();
        let bci_graph = if divisible {
            Some(is_bci_graph(&ctx, s, limits)?.holds)
        } else {
            None
        };
        entries.push(Z2pEntry {
            set: g.format_set(s),
            orbit_size: size,
            stabilizer_order: stab,
            divisible_by_p: divisible,
            even_subgroup_or_coset: *s == even_rep,
            bci_graph,
        });
    }
    Ok(Z2pReport { p, entries })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharacteristicEntry {
    pub subgroup: String,
    pub order: usize,
    pub bci: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharacteristicReport {
    pub group: String,
    pub group_is_bci: bool,
    pub subgroups: Vec<CharacteristicEntry>,
}

impl CharacteristicReport {
    /// A BCI group has only BCI characteristic subgroups.
    pub fn holds(&self) -> bool {
        !self.group_is_bci || self.subgroups.iter().all(|e| e.bci)
    }
}

/// Computes the BCI verdict of every characteristic subgroup of `G`.
pub fn characteristic_inheritance_check(ctx: &GroupContext, limits: &Limits) -> Result<CharacteristicReport> {
    let g = ctx.group();
    let group_is_bci = group_property(ctx, Action::Bci, None, limits)?.holds;
    let mut subgroups = Vec::new();
    for h in g.all_subgroups() {
        if !g.is_characteristic(&h, ctx.auts())? {
            continue;
        }
        let sub = GroupContext::new(g.subgroup_table(&h)?)?;
        subgroups.push(CharacteristicEntry {
            subgroup: g.format_set(&h),
            order: h.len(),
            bci: group_property(&sub, Action::Bci, None, limits)?.holds,
        });
    }
    Ok(CharacteristicReport {
        group: ctx.descriptor(),
        group_is_bci,
        subgroups,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(desc: &str) -> GroupContext {
        GroupContext::from_descriptor(desc).unwrap()
    }

    #[test]
    fn extraction_direct_and_base_case() {
        let z10 = ctx("cyclic:10");
        let s = z10.set([5]);
        // S∪{1} = {0,5} = 5·{0,5}: g = s₀ = 5, α = id.
        let cert = bci_search(&z10, &z10.set([0, 5]), &z10.set([0, 5])).certificate.unwrap();
        let ex = extract_ci_from_bci(&z10, &s, &s, &cert).unwrap();
        assert_eq!(ex.route, ExtractRoute::Direct);
        let id = Automorphism::identity(10);
        let cert = EquivCertificate::new(&z10, Action::Bci, Some(5), id, &z10.set([0, 5]), &z10.set([0, 5])).unwrap();
        let ex = extract_ci_from_bci(&z10, &s, &s, &cert).unwrap();
        assert_eq!(ex.route, ExtractRoute::BaseCase);
        assert!(ex.alpha.unwrap().is_identity());
    }

    #[test]
    fn extraction_over_z10() {
        let z10 = ctx("cyclic:10");
        let s = z10.set([1, 9]);
        let t = z10.set([3, 7]);
        let s1 = z10.set([0, 1, 9]);
        let t1 = z10.set([0, 3, 7]);
        let cert = bci_search(&z10, &t1, &s1).certificate.unwrap();
        let ex = extract_ci_from_bci(&z10, &s, &t, &cert).unwrap();
        let alpha = ex.alpha.unwrap();
        assert_eq!(z10.apply_aut(&alpha, &t), s);
        assert!(matches!(alpha.apply(1), 3 | 7));
    }

    #[test]
    fn extraction_rejects_bad_input() {
        let z10 = ctx("cyclic:10");
        let cert = bci_search(&z10, &z10.set([0, 1, 9]), &z10.set([0, 1, 9])).certificate.unwrap();
        assert!(extract_ci_from_bci(&z10, &z10.set([1]), &z10.set([1, 9]), &cert).is_err());
    }

    #[test]
    fn crosscheck_small_cyclic() {
        let limits = Limits::default();
        for desc in ["cyclic:6", "cyclic:8"] {
            let r = bci_ci_crosscheck(&ctx(desc), &limits).unwrap();
            assert!(r.anomalies.is_empty(), "{desc}: {:?}", r.anomalies);
        }
    }

    #[test]
    fn extraction_needs_the_bci_hypothesis() {
        // In D8, {1,a2,b} = b{1,b,a2b}, yet a2 is central so no automorphism
        // carries {b,a2b} onto {a2,b}.
        let d8 = ctx("dihedral:4");
        let s = d8.parse_set("a2,b").unwrap();
        let t = d8.parse_set("b,a2b").unwrap();
        let cert = bci_search(&d8, &d8.parse_set("1,b,a2b").unwrap(), &d8.parse_set("1,a2,b").unwrap())
            .certificate
            .unwrap();
        let ex = extract_ci_from_bci(&d8, &s, &t, &cert).unwrap();
        assert_eq!(ex.route, ExtractRoute::Failed);
        let r = bci_ci_crosscheck(&d8, &Limits::default()).unwrap();
        assert!(!r.group_is_bci && r.anomalies.is_empty());
        assert!(r.unextractable_pairs.contains(&("a2,b".into(), "b,a2b".into())));
    }

    #[test]
    fn duality_trivial_cases() {
        let limits = Limits::default();
        let d8 = ctx("dihedral:4");
        let r = complement_duality_check(&d8, &d8.empty_set(), &limits).unwrap();
        assert!(r.set_holds && r.complement_holds);
        let r = complement_duality_check(&d8, &d8.parse_set("1,a2").unwrap(), &limits).unwrap();
        assert!(!r.set_holds && !r.complement_holds);
    }

    #[test]
    fn stabilizers_over_z6() {
        let r = stabilizer_prime_check(&ctx("cyclic:6"), 3, &Limits::default()).unwrap();
        assert!(r.graphs_checked > 0);
        assert!(r.holds(), "{:?}", r.violations);
    }

    #[test]
    fn characteristic_subgroups_of_d10() {
        let r = characteristic_inheritance_check(&ctx("dihedral:5"), &Limits::default()).unwrap();
        assert!(r.group_is_bci);
        // {1}, ⟨a⟩ and D10 itself.
        assert_eq!(r.subgroups.iter().map(|e| e.order).collect::<Vec<_>>(), vec![1, 5, 10]);
        assert!(r.holds());
    }
}
