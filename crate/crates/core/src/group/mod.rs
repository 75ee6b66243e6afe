//! Finite groups as explicit multiplication tables.

mod aut;
mod build;
mod descriptor;
mod literal;
mod perm;
mod set;
mod table;

pub use aut::{AutGroup, Automorphism, DEFAULT_AUT_CAP};
pub use build::DEFAULT_CLOSURE_CAP;
pub use perm::Permutation;
pub use set::ElemSet;
pub use table::{Element, GroupKind, GroupTable, ASSOCIATIVITY_CHECK_LIMIT};

use crate::Result;

/// A group together with its automorphism group, computed once and shared
/// by the equivalence and verdict engines.
#[derive(Clone, Debug)]
pub struct GroupContext {
    group: GroupTable,
    auts: AutGroup,
}

impl GroupContext {
    pub fn new(group: GroupTable) -> Result<Self> {
        Self::with_aut_cap(group, DEFAULT_AUT_CAP)
    }

    pub fn with_aut_cap(group: GroupTable, aut_cap: usize) -> Result<Self> {
        let auts = group.automorphisms(aut_cap)?;
        Ok(GroupContext { group, auts })
    }

    pub fn from_descriptor(descriptor: &str) -> Result<Self> {
        Self::new(GroupTable::from_descriptor(descriptor)?)
    }

    pub fn group(&self) -> &GroupTable {
        &self.group
    }

    pub fn auts(&self) -> &AutGroup {
        &self.auts
    }
}

impl std::ops::Deref for GroupContext {
    type Target = GroupTable;

    fn deref(&self) -> &GroupTable {
        &self.group
    }
}
