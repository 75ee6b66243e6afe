//! Exhaustive verdicts: is a (bi-)Cayley graph a (B)CI-graph, is a group an
//! m-(B)CI-group. All enumeration runs over orbit representatives, which is
//! sound because both properties are constant on orbits.

mod battery;
mod checks;

pub use battery::{small_group_battery, BatteryGroup};
pub use checks::{
    bci_ci_crosscheck, characteristic_inheritance_check, complement_duality_check, extract_ci_from_bci,
    stabilizer_prime_check, z2p_structure_check, CharacteristicReport, CrosscheckAnomaly, CrosscheckReport,
    CharacteristicEntry, DualityReport, ExtractRoute, Extraction, RouteCounts, StabilizerReport, Z2pEntry, Z2pReport,
};

use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicU64, Ordering};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::equiv::{bci_search, canonical_rep, ci_equivalent, subset_orbits_with, Action, OrbitOptions, DEFAULT_SUBSET_CAP};
use crate::graph::{bicayley_graph, cayley_graph, Graph};
use crate::group::{ElemSet, GroupContext};
use crate::iso::{are_isomorphic_with_budget, fingerprint, IsoCertificate, IsoOutcome, DEFAULT_NODE_BUDGET};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Property {
    CiGraph,
    BciGraph,
    MCi,
    MBci,
    Ci,
    Bci,
}

impl Property {
    pub fn action(self) -> Action {
        match self {
            Property::CiGraph | Property::MCi | Property::Ci => Action::Ci,
            Property::BciGraph | Property::MBci | Property::Bci => Action::Bci,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Property::CiGraph => "ci-graph",
            Property::BciGraph => "bci-graph",
            Property::MCi => "m-ci",
            Property::MBci => "m-bci",
            Property::Ci => "ci",
            Property::Bci => "bci",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Property {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [
            Property::CiGraph,
            Property::BciGraph,
            Property::MCi,
            Property::MBci,
            Property::Ci,
            Property::Bci,
        ]
        .into_iter()
        .find(|p| p.as_str() == s)
        .ok_or_else(|| Error::parse(0, s, "unknown property"))
    }
}

/// Resource limits for exhaustive runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of `k`-subsets enumerated for any one size.
    pub subset_cap: u64,
    /// Search-node budget per isomorphism query.
    pub node_budget: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            subset_cap: DEFAULT_SUBSET_CAP,
            node_budget: DEFAULT_NODE_BUDGET,
        }
    }
}

/// `(S, T)` with isomorphic graphs but inequivalent connection sets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub s: ElemSet,
    pub t: ElemSet,
    pub s_literal: String,
    pub t_literal: String,
    /// Isomorphism from the graph of `S` to the graph of `T`.
    pub iso: IsoCertificate,
    /// Size of the exhausted equivalence search space: `|G|·|Aut(G)|` pairs
    /// `(g, α)` for BCI, `|Aut(G)|` automorphisms for CI.
    pub pairs_examined: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Stats {
    /// Orbit representatives whose graphs were built and compared.
    pub orbits_examined: u64,
    /// Orbits in the enumerated space.
    pub orbit_count: u64,
    /// Subsets covered by those orbits.
    pub subsets_covered: u64,
    pub iso_calls: u64,
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub group: String,
    pub order: usize,
    pub set: Option<String>,
    pub property: Property,
    pub valency: Option<usize>,
    pub holds: bool,
    pub witness: Option<Witness>,
    pub stats: Stats,
}

impl Verdict {
    /// Re-checks a witness from scratch: the certificate must be a valid
    /// isomorphism and the equivalence search must come up empty.
    pub fn reverify(&self, ctx: &GroupContext) -> bool {
        let Some(w) = &self.witness else {
            return self.holds;
        };
        if self.holds {
            return false;
        }
        let action = self.property.action();
        let (Ok(a), Ok(b)) = (build_graph(ctx, &w.s, action), build_graph(ctx, &w.t, action)) else {
            return false;
        };
        if !w.iso.verify(&a, &b) {
            return false;
        }
        match action {
            Action::Bci => bci_search(ctx, &w.s, &w.t).certificate.is_none(),
            Action::Ci => ci_equivalent(ctx, &w.s, &w.t).is_none(),
        }
    }

    pub fn summary(&self) -> String {
        let mut s = format!("{} {}", self.group, self.property);
        if let Some(m) = self.valency {
            s += &format!(" (valency ≤ {m})");
        }
        if let Some(set) = &self.set {
            s += &format!(" S={{{set}}}");
        }
        s += &format!(": holds={}", self.holds);
        if let Some(w) = &self.witness {
            s += &format!(", witness ({{{}}},{{{}}})", w.s_literal, w.t_literal);
        }
        s
    }
}

pub(crate) fn build_graph(ctx: &GroupContext, s: &ElemSet, action: Action) -> Result<Graph> {
    match action {
        Action::Bci => Ok(bicayley_graph(ctx, s)),
        Action::Ci => cayley_graph(ctx, s),
    }
}

fn equivalence_space(ctx: &GroupContext, action: Action) -> u64 {
    let auts = ctx.auts().order() as u64;
    match action {
        Action::Bci => auts * ctx.order() as u64,
        Action::Ci => auts,
    }
}

fn orbit_options(action: Action, limits: &Limits) -> OrbitOptions {
    OrbitOptions {
        cayley_domain: action == Action::Ci,
        cap: limits.subset_cap,
    }
}

/// Tests the candidate pairs in order and returns the first isomorphic one.
/// A budget failure before the first hit is an error: the answer would depend on it.
fn first_isomorphic(
    graphs: &[Graph],
    pairs: &[(usize, usize)],
    limits: &Limits,
    calls: &AtomicU64,
) -> Result<Option<(usize, usize, IsoCertificate)>> {
    let found = pairs.par_iter().find_map_first(|&(i, j)| {
        calls.fetch_add(1, Ordering::Relaxed);
        match are_isomorphic_with_budget(&graphs[i], &graphs[j], limits.node_budget) {
            IsoOutcome::Isomorphic(c) => Some(Ok((i, j, c))),
            IsoOutcome::NotIsomorphic => None,
            IsoOutcome::BudgetExceeded { budget, .. } => Some(Err(Error::BudgetExceeded { budget })),
        }
    });
    found.transpose()
}

fn fingerprint_pairs(graphs: &[Graph], anchor: Option<usize>) -> Vec<(usize, usize)> {
    let fps: Vec<_> = graphs.par_iter().map(fingerprint).collect();
    let n = graphs.len();
    match anchor {
        Some(i) => (0..n).filter(|&j| j != i && fps[j] == fps[i]).map(|j| (i, j)).collect(),
        None => (0..n)
            .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
            .filter(|&(i, j)| fps[i] == fps[j])
            .collect(),
    }
}

fn make_witness(ctx: &GroupContext, s: &ElemSet, t: &ElemSet, iso: IsoCertificate, action: Action) -> Result<Witness> {
    // Distinct orbits guarantee inequivalence; the search is still run so the
    // witness records an exhausted space rather than an inference.
    let exhausted = match action {
        Action::Bci => {
            let r = bci_search(ctx, s, t);
            (r.certificate.is_none(), r.pairs_examined)
        }
        Action::Ci => (ci_equivalent(ctx, s, t).is_none(), ctx.auts().order() as u64),
    };
    if !exhausted.0 {
        return Err(Error::Invariant("witness sets from distinct orbits are equivalent".into()));
    }
    Ok(Witness {
        s: s.clone(),
        t: t.clone(),
        s_literal: ctx.format_set(s),
        t_literal: ctx.format_set(t),
        iso,
        pairs_examined: exhausted.1,
    })
}

/// Is `BCay(G,S)` a BCI-graph?
pub fn is_bci_graph(ctx: &GroupContext, s: &ElemSet, limits: &Limits) -> Result<Verdict> {
    graph_verdict(ctx, s, Action::Bci, limits)
}

/// Is `Cay(G,S)` a CI-graph? `S` must be symmetric and identity-free.
pub fn is_ci_graph(ctx: &GroupContext, s: &ElemSet, limits: &Limits) -> Result<Verdict> {
    if s.contains_identity() || !s.is_symmetric() {
        return Err(Error::Hypothesis(
            "a CI-graph verdict needs a symmetric, identity-free connection set".into(),
        ));
    }
    graph_verdict(ctx, s, Action::Ci, limits)
}

fn graph_verdict(ctx: &GroupContext, s: &ElemSet, action: Action, limits: &Limits) -> Result<Verdict> {
    let start = Instant::now();
    let orbits = subset_orbits_with(ctx, s.len(), action, orbit_options(action, limits))?;
    let own = canonical_rep(ctx, s, action);
    let i = orbits
        .reps
        .iter()
        .position(|r| *r == own)
        .ok_or_else(|| Error::Invariant("canonical representative missing from orbit list".into()))?;
    let mut graphs: Vec<Graph> = orbits
        .reps
        .par_iter()
        .map(|r| build_graph(ctx, r, action))
        .collect::<Result<_>>()?;
    graphs[i] = build_graph(ctx, s, action)?;
    let pairs = fingerprint_pairs(&graphs, Some(i));
    let calls = AtomicU64::new(0);
    let hit = first_isomorphic(&graphs, &pairs, limits, &calls)?;
    let witness = match hit {
        Some((_, j, iso)) => Some(make_witness(ctx, s, &orbits.reps[j], iso, action)?),
        None => None,
    };
    Ok(Verdict {
        group: ctx.descriptor(),
        order: ctx.order(),
        set: Some(ctx.format_set(s)),
        property: match action {
            Action::Bci => Property::BciGraph,
            Action::Ci => Property::CiGraph,
        },
        valency: Some(s.len()),
        holds: witness.is_none(),
        witness,
        stats: Stats {
            orbits_examined: orbits.reps.len() as u64,
            orbit_count: orbits.reps.len() as u64,
            subsets_covered: orbits.orbit_sizes.iter().sum(),
            iso_calls: calls.into_inner(),
            elapsed_ms: start.elapsed().as_millis() as u64,
        },
    })
}

/// Is `G` an m-(B)CI-group (all valencies up to `max_valency`, default `|G|`)?
/// Stops at the first size with a witness; within a size the witness is the
/// first representative, in canonical order, with an isomorphic partner.
pub fn group_property(ctx: &GroupContext, action: Action, max_valency: Option<usize>, limits: &Limits) -> Result<Verdict> {
    let start = Instant::now();
    let n = ctx.order();
    let m = max_valency.unwrap_or(n).min(n);
    let calls = AtomicU64::new(0);
    let mut stats = Stats::default();
    let mut witness = None;
    for k in 0..=m {
        let orbits = subset_orbits_with(ctx, k, action, orbit_options(action, limits))?;
        stats.orbit_count += orbits.reps.len() as u64;
        stats.orbits_examined += orbits.reps.len() as u64;
        stats.subsets_covered += orbits.orbit_sizes.iter().sum::<u64>();
        let graphs: Vec<Graph> = orbits
            .reps
            .par_iter()
            .map(|r| build_graph(ctx, r, action))
            .collect::<Result<_>>()?;
        let pairs = fingerprint_pairs(&graphs, None);
        if let Some((i, j, iso)) = first_isomorphic(&graphs, &pairs, limits, &calls)? {
            witness = Some(make_witness(ctx, &orbits.reps[i], &orbits.reps[j], iso, action)?);
            break;
        }
    }
    stats.iso_calls = calls.into_inner();
    stats.elapsed_ms = start.elapsed().as_millis() as u64;
    let property = match (action, max_valency) {
        (Action::Bci, None) => Property::Bci,
        (Action::Ci, None) => Property::Ci,
        (Action::Bci, Some(_)) => Property::MBci,
        (Action::Ci, Some(_)) => Property::MCi,
    };
    Ok(Verdict {
        group: ctx.descriptor(),
        order: n,
        set: None,
        property,
        valency: max_valency,
        holds: witness.is_none(),
        witness,
        stats,
    })
}

/// Cross-validation mode without orbit reduction: every pair of subsets of
/// equal size is examined directly. Only for very small groups.
pub fn group_property_raw(ctx: &GroupContext, action: Action, max_valency: Option<usize>, limits: &Limits) -> Result<bool> {
    let n = ctx.order();
    if n > 8 {
        return Err(Error::SizeCap {
            count: 1u128 << n,
            cap: 1 << 8,
        });
    }
    let m = max_valency.unwrap_or(n).min(n);
    let domain: Vec<ElemSet> = (0u128..1 << n)
        .map(|mask| ctx.set_from_mask(mask))
        .filter(|s| s.len() <= m)
        .filter(|s| action == Action::Bci || (!s.contains_identity() && s.is_symmetric()))
        .collect();
    let graphs: Vec<Graph> = domain.iter().map(|s| build_graph(ctx, s, action)).collect::<Result<_>>()?;
    for i in 0..domain.len() {
        for j in i + 1..domain.len() {
            if domain[i].len() != domain[j].len() {
                continue;
            }
            let iso = are_isomorphic_with_budget(&graphs[i], &graphs[j], limits.node_budget).into_result()?;
            let equivalent = match action {
                Action::Bci => bci_search(ctx, &domain[i], &domain[j]).certificate.is_some(),
                Action::Ci => ci_equivalent(ctx, &domain[i], &domain[j]).is_some(),
            };
            if iso.is_some() && !equivalent {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Number of orbits in the space a verdict covers, computed independently
/// of the verdict run.
pub fn orbit_space_size(ctx: &GroupContext, action: Action, max_valency: Option<usize>, limits: &Limits) -> Result<u64> {
    let m = max_valency.unwrap_or(ctx.order()).min(ctx.order());
    let mut total = 0;
    for k in 0..=m {
        total += subset_orbits_with(ctx, k, action, orbit_options(action, limits))?.reps.len() as u64;
    }
    Ok(total)
}

/// Equivalence search space size, as recorded in witnesses.
pub fn equivalence_space_size(ctx: &GroupContext, action: Action) -> u64 {
    equivalence_space(ctx, action)
}
