use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::{Automorphism, Element, GroupTable};

/// A subset of a group, kept as a sorted list of element indices.
///
/// The flags describe the set relative to the table it was built against.
/// Ordering is lexicographic on the sorted members, which is the canonical
/// subset order used for orbit representatives.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ElemSet {
    members: Vec<Element>,
    is_symmetric: bool,
    contains_identity: bool,
}

impl ElemSet {
    pub fn members(&self) -> &[Element] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: Element) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    /// `S = S^{-1}`.
    pub fn is_symmetric(&self) -> bool {
        self.is_symmetric
    }

    pub fn contains_identity(&self) -> bool {
        self.contains_identity
    }

    pub fn iter(&self) -> impl Iterator<Item = Element> + '_ {
        self.members.iter().copied()
    }

    /// Bitmask of the members. Only valid for groups of order at most 128.
    pub fn mask(&self) -> u128 {
        self.members.iter().fold(0u128, |m, &x| m | (1u128 << x))
    }

    pub fn is_subset(&self, other: &ElemSet) -> bool {
        self.members.iter().all(|&x| other.contains(x))
    }
}

impl GroupTable {
    /// Builds a set from element indices, dropping duplicates.
    ///
    /// # Panics
    /// If an index is not an element of this group.
    pub fn set(&self, members: impl IntoIterator<Item = Element>) -> ElemSet {
        let mut members: Vec<Element> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        if let Some(&last) = members.last() {
            assert!(last < self.order(), "element {last} out of range for order {}", self.order());
        }
        let is_symmetric = members.iter().all(|&x| members.binary_search(&self.inv(x)).is_ok());
        let contains_identity = members.first() == Some(&0);
        ElemSet {
            members,
            is_symmetric,
            contains_identity,
        }
    }

    pub fn set_from_mask(&self, mask: u128) -> ElemSet {
        self.set((0..self.order().min(128)).filter(|&i| mask >> i & 1 == 1))
    }

    pub fn full_set(&self) -> ElemSet {
        self.set(self.elements())
    }

    pub fn empty_set(&self) -> ElemSet {
        self.set(std::iter::empty())
    }

    /// The smallest subgroup containing `x`.
    pub fn subgroup_generated(&self, x: &ElemSet) -> ElemSet {
        let mut inside = vec![false; self.order()];
        inside[0] = true;
        let mut queue = VecDeque::from([0]);
        while let Some(y) = queue.pop_front() {
            for s in x.iter() {
                let z = self.mul(y, s);
                if !inside[z] {
                    inside[z] = true;
                    queue.push_back(z);
                }
            }
        }
        self.set(self.elements().filter(|&i| inside[i]))
    }

    pub fn is_subgroup(&self, h: &ElemSet) -> bool {
        h.contains(0)
            && h.iter().all(|x| h.contains(self.inv(x)) && h.iter().all(|y| h.contains(self.mul(x, y))))
    }

    /// `ST = {st : s ∈ S, t ∈ T}`.
    pub fn product_set(&self, s: &ElemSet, t: &ElemSet) -> ElemSet {
        self.set(s.iter().flat_map(|x| t.iter().map(move |y| self.mul(x, y))))
    }

    pub fn inverse_set(&self, s: &ElemSet) -> ElemSet {
        self.set(s.iter().map(|x| self.inv(x)))
    }

    /// Left translate `gS`.
    pub fn translate(&self, g: Element, s: &ElemSet) -> ElemSet {
        self.set(s.iter().map(|x| self.mul(g, x)))
    }

    /// Image `S^α`.
    pub fn apply_aut(&self, alpha: &Automorphism, s: &ElemSet) -> ElemSet {
        self.set(s.iter().map(|x| alpha.apply(x)))
    }

    /// `G ∖ S`.
    pub fn complement_set(&self, s: &ElemSet) -> ElemSet {
        self.set(self.elements().filter(|&x| !s.contains(x)))
    }

    pub fn union_set(&self, s: &ElemSet, t: &ElemSet) -> ElemSet {
        self.set(s.iter().chain(t.iter()))
    }

    /// `⟨SS^{-1}⟩`, the subgroup whose cosets index the components of `BCay(G, S)`.
    pub fn difference_subgroup(&self, s: &ElemSet) -> ElemSet {
        self.subgroup_generated(&self.product_set(s, &self.inverse_set(s)))
    }

    /// Every subgroup, found as joins of cyclic subgroups, in canonical order.
    pub fn all_subgroups(&self) -> Vec<ElemSet> {
        let mut found: Vec<ElemSet> = self
            .elements()
            .map(|x| self.subgroup_generated(&self.set([x])))
            .collect();
        found.sort();
        found.dedup();
        let cyclic = found.clone();
        let mut frontier = found.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for h in &frontier {
                for c in &cyclic {
                    if c.is_subset(h) {
                        continue;
                    }
                    let joined = self.subgroup_generated(&self.union_set(h, c));
                    if let Err(pos) = found.binary_search(&joined) {
                        found.insert(pos, joined.clone());
                        next.push(joined);
                    }
                }
            }
            frontier = next;
        }
        found
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_follow_members() {
        let z10 = GroupTable::cyclic(10).unwrap();
        let s = z10.set([1, 9]);
        assert!(s.is_symmetric() && !s.contains_identity());
        let t = z10.set([0, 3]);
        assert!(!t.is_symmetric() && t.contains_identity());
        assert_eq!(z10.inverse_set(&z10.set([1, 3])), z10.set([9, 7]));
    }

    #[test]
    fn generated_subgroups() {
        let z10 = GroupTable::cyclic(10).unwrap();
        assert_eq!(z10.subgroup_generated(&z10.set([2])), z10.set([0, 2, 4, 6, 8]));
        assert_eq!(z10.subgroup_generated(&z10.empty_set()), z10.set([0]));
        let d8 = GroupTable::dihedral(4).unwrap();
        assert_eq!(d8.subgroup_generated(&d8.set([4])), d8.set([0, 4]));
        let d10 = GroupTable::dihedral(5).unwrap();
        assert_eq!(d10.subgroup_generated(&d10.set([1, 5])), d10.full_set());
    }

    #[test]
    fn translations_and_products() {
        let d8 = GroupTable::dihedral(4).unwrap();
        let s = d8.set([0, 4]);
        assert_eq!(d8.translate(2, &s), d8.set([2, 6]));
        assert_eq!(d8.product_set(&s, &d8.inverse_set(&s)), s);
        assert_eq!(d8.complement_set(&s).len(), 6);
    }

    #[test]
    fn subgroup_lattice_sizes() {
        let d8 = GroupTable::dihedral(4).unwrap();
        assert_eq!(d8.all_subgroups().len(), 10);
        let z12 = GroupTable::cyclic(12).unwrap();
        assert_eq!(z12.all_subgroups().len(), 6);
    }
}
