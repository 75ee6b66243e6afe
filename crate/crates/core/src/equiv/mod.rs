//! CI-equivalence (`T = S^α`) and BCI-equivalence (`T = gS^α`) of connection
//! sets, with certificates, canonical representatives and subset orbits.

mod orbits;

pub use orbits::{subset_orbits, subset_orbits_with, OrbitOptions, OrbitReps, DEFAULT_SUBSET_CAP};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::group::{Automorphism, Element, ElemSet, GroupContext, GroupTable};
use crate::{Error, Result};

/// The two equivalences on connection sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Action {
    /// `S ~ S^α` for `α ∈ Aut(G)`.
    Ci,
    /// `S ~ gS^α` for `g ∈ G`, `α ∈ Aut(G)`.
    Bci,
}

impl FromStr for Action {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ci" => Ok(Action::Ci),
            "bci" => Ok(Action::Bci),
            other => Err(Error::parse(0, other, "expected ci or bci")),
        }
    }
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Action::Ci => "ci",
            Action::Bci => "bci",
        })
    }
}

/// A witness that `T` is equivalent to `S`: `T = S^α` (CI) or `T = gS^α` (BCI).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivCertificate {
    kind: Action,
    alpha: Automorphism,
    g: Option<Element>,
}

impl EquivCertificate {
    /// Builds a certificate and checks that it carries `s` onto `t`.
    pub fn new(group: &GroupTable, kind: Action, g: Option<Element>, alpha: Automorphism, s: &ElemSet, t: &ElemSet) -> Result<Self> {
        if (kind == Action::Bci) != g.is_some() {
            return Err(Error::Hypothesis("a BCI certificate carries g, a CI certificate does not".into()));
        }
        let cert = EquivCertificate { kind, alpha, g };
        if cert.apply(group, s) != *t {
            return Err(Error::Hypothesis(format!(
                "certificate does not map {} onto {}",
                group.format_set(s),
                group.format_set(t)
            )));
        }
        Ok(cert)
    }

    fn unchecked(kind: Action, g: Option<Element>, alpha: Automorphism) -> Self {
        EquivCertificate { kind, alpha, g }
    }

    pub fn kind(&self) -> Action {
        self.kind
    }

    pub fn alpha(&self) -> &Automorphism {
        &self.alpha
    }

    pub fn g(&self) -> Option<Element> {
        self.g
    }

    /// `S^α` or `gS^α`.
    pub fn apply(&self, group: &GroupTable, s: &ElemSet) -> ElemSet {
        let image = group.apply_aut(&self.alpha, s);
        match self.g {
            Some(g) => group.translate(g, &image),
            None => image,
        }
    }

    /// `self` followed by `next`: if `T = g₁S^{α₁}` and `U = g₂T^{α₂}` then
    /// `U = g₂g₁^{α₂} S^{α₁α₂}`.
    pub fn then(&self, group: &GroupTable, next: &EquivCertificate) -> EquivCertificate {
        let alpha = self.alpha.then(&next.alpha);
        let g = match (self.g, next.g) {
            (None, None) => None,
            (g1, g2) => {
                let g1 = next.alpha.apply(g1.unwrap_or(0));
                Some(group.mul(g2.unwrap_or(0), g1))
            }
        };
        let kind = if g.is_some() { Action::Bci } else { Action::Ci };
        EquivCertificate::unchecked(kind, g, alpha)
    }

    /// If `T = gS^α` then `S = (g^{-1})^{α^{-1}} T^{α^{-1}}`.
    pub fn inverse(&self, group: &GroupTable) -> EquivCertificate {
        let alpha = self.alpha.inverse();
        let g = self.g.map(|g| alpha.apply(group.inv(g)));
        EquivCertificate::unchecked(self.kind, g, alpha)
    }

    pub fn describe(&self, group: &GroupTable) -> String {
        let images: Vec<&str> = group
            .greedy_generators()
            .into_iter()
            .map(|x| group.literal(self.alpha.apply(x)))
            .collect();
        let gens: Vec<&str> = group.greedy_generators().into_iter().map(|x| group.literal(x)).collect();
        let alpha = gens
            .iter()
            .zip(&images)
            .map(|(x, y)| format!("{x}↦{y}"))
            .collect::<Vec<_>>()
            .join(", ");
        match self.g {
            Some(g) => format!("g={}, α: {alpha}", group.literal(g)),
            None => format!("α: {alpha}"),
        }
    }
}

/// Result of an exhaustive BCI search, with the number of `(g, α)` pairs tried.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BciSearch {
    pub certificate: Option<EquivCertificate>,
    pub pairs_examined: u64,
}

/// First `α` in automorphism order with `S^α = T`.
pub fn ci_equivalent(ctx: &GroupContext, s: &ElemSet, t: &ElemSet) -> Option<EquivCertificate> {
    if s.len() != t.len() || s.contains_identity() != t.contains_identity() {
        return None;
    }
    let g = ctx.group();
    ctx.auts()
        .iter()
        .find(|alpha| g.apply_aut(alpha, s) == *t)
        .map(|alpha| EquivCertificate::unchecked(Action::Ci, None, alpha.clone()))
}

/// First `(g, α)`, `α` outer and `g` inner, with `gS^α = T`.
pub fn bci_equivalent(ctx: &GroupContext, s: &ElemSet, t: &ElemSet) -> Option<EquivCertificate> {
    bci_search(ctx, s, t).certificate
}

/// [`bci_equivalent`] with the count of pairs examined.
pub fn bci_search(ctx: &GroupContext, s: &ElemSet, t: &ElemSet) -> BciSearch {
    if s.len() != t.len() {
        return BciSearch {
            certificate: None,
            pairs_examined: 0,
        };
    }
    let g = ctx.group();
    let target = t.mask();
    let mut pairs = 0u64;
    for alpha in ctx.auts().iter() {
        let image = g.apply_aut(alpha, s);
        for x in g.elements() {
            pairs += 1;
            let mask = image.iter().fold(0u128, |m, y| m | 1u128 << g.mul(x, y));
            if mask == target {
                return BciSearch {
                    certificate: Some(EquivCertificate::unchecked(Action::Bci, Some(x), alpha.clone())),
                    pairs_examined: pairs,
                };
            }
        }
    }
    BciSearch {
        certificate: None,
        pairs_examined: pairs,
    }
}

/// Lexicographically least member of the orbit of `S`.
pub fn canonical_rep(ctx: &GroupContext, s: &ElemSet, action: Action) -> ElemSet {
    let g = ctx.group();
    let mut best = s.clone();
    for alpha in ctx.auts().iter() {
        let image = g.apply_aut(alpha, s);
        match action {
            Action::Ci => best = best.min(image),
            Action::Bci => {
                for x in g.elements() {
                    best = best.min(g.translate(x, &image));
                }
            }
        }
    }
    best
}
