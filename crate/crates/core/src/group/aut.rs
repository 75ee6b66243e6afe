//! Automorphisms and isomorphisms of group tables.
//!
//! Both searches assign images to a small generating set and extend the
//! assignment breadth first over the Cayley graph of the generators,
//! rejecting a branch as soon as the partial map stops being an injective
//! homomorphism on the subgroup built so far.

use std::collections::{HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::{Element, ElemSet, GroupTable};
use crate::{Error, Result};

/// Default cap on the number of automorphisms enumerated.
pub const DEFAULT_AUT_CAP: usize = 100_000;

/// A group automorphism, stored as the image of every element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Automorphism {
    perm: Vec<Element>,
}

impl Automorphism {
    pub fn identity(order: usize) -> Self {
        Automorphism {
            perm: (0..order).collect(),
        }
    }

    /// Checks that `images` is a bijection preserving the multiplication of `g`.
    pub fn from_images(g: &GroupTable, images: Vec<Element>) -> Result<Self> {
        let alpha = Automorphism { perm: images };
        if alpha.perm.len() != g.order() || !alpha.is_automorphism_of(g) {
            return Err(Error::Hypothesis("map is not an automorphism".into()));
        }
        Ok(alpha)
    }

    #[inline]
    pub fn apply(&self, x: Element) -> Element {
        self.perm[x]
    }

    pub fn images(&self) -> &[Element] {
        &self.perm
    }

    /// Applies `self` first, then `other`.
    pub fn then(&self, other: &Automorphism) -> Automorphism {
        Automorphism {
            perm: self.perm.iter().map(|&x| other.perm[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Automorphism {
        let mut perm = vec![0; self.perm.len()];
        for (i, &x) in self.perm.iter().enumerate() {
            perm[x] = i;
        }
        Automorphism { perm }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// Full check: bijective, fixes the identity, preserves every product.
    pub fn is_automorphism_of(&self, g: &GroupTable) -> bool {
        let n = g.order();
        let mut seen = vec![false; n];
        for &x in &self.perm {
            if x >= n || seen[x] {
                return false;
            }
            seen[x] = true;
        }
        self.perm[0] == 0
            && (0..n).all(|x| (0..n).all(|y| self.perm[g.mul(x, y)] == g.mul(self.perm[x], self.perm[y])))
    }
}

/// The automorphism group, listed in lexicographic order of the image lists.
/// The identity is always first.
#[derive(Clone, Debug)]
pub struct AutGroup {
    elements: Vec<Automorphism>,
}

impl AutGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Automorphism] {
        &self.elements
    }

    pub fn iter(&self) -> impl Iterator<Item = &Automorphism> {
        self.elements.iter()
    }

    pub fn contains(&self, alpha: &Automorphism) -> bool {
        self.elements.binary_search(alpha).is_ok()
    }

    /// A small generating set, chosen greedily in list order.
    pub fn generators(&self) -> Vec<Automorphism> {
        let mut gens: Vec<Automorphism> = Vec::new();
        let mut closure: HashSet<Automorphism> = HashSet::new();
        if let Some(id) = self.elements.first() {
            closure.insert(id.clone());
        }
        for alpha in &self.elements {
            if closure.len() == self.elements.len() {
                break;
            }
            if closure.contains(alpha) {
                continue;
            }
            gens.push(alpha.clone());
            let mut queue: VecDeque<Automorphism> = closure.iter().cloned().collect();
            while let Some(x) = queue.pop_front() {
                for g in &gens {
                    let y = x.then(g);
                    if closure.insert(y.clone()) {
                        queue.push_back(y);
                    }
                }
            }
        }
        gens
    }
}

impl GroupTable {
    /// A generating set built greedily: repeatedly add the element of largest
    /// order (lowest index on ties) not yet in the generated subgroup.
    pub fn greedy_generators(&self) -> Vec<Element> {
        let mut candidates: Vec<Element> = self.elements().skip(1).collect();
        candidates.sort_by_key(|&x| (std::cmp::Reverse(self.element_order(x)), x));
        let mut gens = Vec::new();
        let mut h = self.set([0]);
        for x in candidates {
            if h.len() == self.order() {
                break;
            }
            if !h.contains(x) {
                gens.push(x);
                h = self.subgroup_generated(&self.set(gens.iter().copied()));
            }
        }
        gens
    }

    /// Every automorphism, in lexicographic order.
    pub fn automorphisms(&self, cap: usize) -> Result<AutGroup> {
        let gens = self.greedy_generators();
        let mut found = Vec::new();
        let mut overflow = false;
        hom_search(self, self, &gens, &mut |map| {
            if found.len() == cap {
                overflow = true;
                return false;
            }
            found.push(Automorphism { perm: map.to_vec() });
            true
        });
        if overflow {
            return Err(Error::AutCapExceeded { cap });
        }
        found.sort();
        Ok(AutGroup { elements: found })
    }

    /// An isomorphism `self → other` as an image list, if one exists.
    pub fn isomorphism_to(&self, other: &GroupTable) -> Option<Vec<Element>> {
        if self.order() != other.order() {
            return None;
        }
        let mut src_orders: Vec<usize> = self.elements().map(|x| self.element_order(x)).collect();
        let mut dst_orders: Vec<usize> = other.elements().map(|x| other.element_order(x)).collect();
        src_orders.sort_unstable();
        dst_orders.sort_unstable();
        if src_orders != dst_orders {
            return None;
        }
        let gens = self.greedy_generators();
        let mut result = None;
        hom_search(self, other, &gens, &mut |map| {
            result = Some(map.to_vec());
            false
        });
        result
    }

    /// `H^α = H` for every automorphism `α`.
    pub fn is_characteristic(&self, h: &ElemSet, auts: &AutGroup) -> Result<bool> {
        if !self.is_subgroup(h) {
            return Err(Error::NotASubgroup);
        }
        Ok(auts.iter().all(|a| self.apply_aut(a, h) == *h))
    }
}

/// Enumerates injective homomorphisms `src → dst` determined by the images of
/// `gens`, which must generate `src`. `visit` returns `false` to stop.
fn hom_search(
    src: &GroupTable,
    dst: &GroupTable,
    gens: &[Element],
    visit: &mut dyn FnMut(&[Element]) -> bool,
) {
    let mut map = vec![usize::MAX; src.order()];
    let mut used = vec![false; dst.order()];
    map[0] = 0;
    used[0] = true;
    let mut images = Vec::with_capacity(gens.len());
    extend(src, dst, gens, &mut images, &mut map, &mut used, visit);
}

fn extend(
    src: &GroupTable,
    dst: &GroupTable,
    gens: &[Element],
    images: &mut Vec<Element>,
    map: &mut [Element],
    used: &mut [bool],
    visit: &mut dyn FnMut(&[Element]) -> bool,
) -> bool {
    let depth = images.len();
    if depth == gens.len() {
        return visit(map);
    }
    let g = gens[depth];
    let order = src.element_order(g);
    for y in dst.elements() {
        if used[y] || dst.element_order(y) != order {
            continue;
        }
        images.push(y);
        let mut next_map = map.to_vec();
        let mut next_used = used.to_vec();
        if close_map(src, dst, gens, images, &mut next_map, &mut next_used)
            && !extend(src, dst, gens, images, &mut next_map, &mut next_used, visit)
        {
            return false;
        }
        images.pop();
    }
    true
}

/// Propagates the generator images through the subgroup they generate,
/// failing on any inconsistency or collision.
fn close_map(
    src: &GroupTable,
    dst: &GroupTable,
    gens: &[Element],
    images: &[Element],
    map: &mut [Element],
    used: &mut [bool],
) -> bool {
    let mut queue: VecDeque<Element> = src.elements().filter(|&x| map[x] != usize::MAX).collect();
    while let Some(x) = queue.pop_front() {
        for (i, &img) in images.iter().enumerate() {
            let z = src.mul(x, gens[i]);
            let fz = dst.mul(map[x], img);
            if map[z] != usize::MAX {
                if map[z] != fz {
                    return false;
                }
            } else {
                if used[fz] {
                    return false;
                }
                map[z] = fz;
                used[fz] = true;
                queue.push_back(z);
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Permutation;

    #[test]
    fn cyclic_automorphism_counts() {
        assert_eq!(GroupTable::cyclic(10).unwrap().automorphisms(DEFAULT_AUT_CAP).unwrap().order(), 4);
        assert_eq!(GroupTable::cyclic(8).unwrap().automorphisms(DEFAULT_AUT_CAP).unwrap().order(), 4);
        assert_eq!(GroupTable::cyclic(1).unwrap().automorphisms(DEFAULT_AUT_CAP).unwrap().order(), 1);
    }

    #[test]
    fn d10_automorphisms_have_the_affine_form() {
        let d10 = GroupTable::dihedral(5).unwrap();
        let auts = d10.automorphisms(DEFAULT_AUT_CAP).unwrap();
        assert_eq!(auts.order(), 20);
        assert!(auts.elements()[0].is_identity());
        // a ↦ a^s, b ↦ a^{-l} b with 1 ≤ s ≤ 4, 0 ≤ l ≤ 4
        let mut seen = HashSet::new();
        for alpha in auts.iter() {
            let s = alpha.apply(1);
            assert!((1..5).contains(&s));
            let b_img = alpha.apply(5);
            assert!(b_img >= 5);
            let l = (5 - (b_img - 5)) % 5;
            seen.insert((s, l));
        }
        assert_eq!(seen.len(), 20);
    }

    #[test]
    fn a5_has_120_automorphisms() {
        let a = Permutation::parse("(1 2 3)", Some(5)).unwrap();
        let b = Permutation::parse("(1 2 3 4 5)", None).unwrap();
        let a5 = GroupTable::perm_closure(&[a, b], 360).unwrap();
        let auts = a5.automorphisms(DEFAULT_AUT_CAP).unwrap();
        assert_eq!(auts.order(), 120);
        assert!(auts.iter().all(|a| a.is_automorphism_of(&a5)));
    }

    #[test]
    fn cap_is_reported() {
        let z2 = GroupTable::cyclic(2).unwrap();
        let v8 = GroupTable::direct_product(&z2, &GroupTable::direct_product(&z2, &z2).unwrap()).unwrap();
        assert!(matches!(v8.automorphisms(100), Err(Error::AutCapExceeded { cap: 100 })));
        assert_eq!(v8.automorphisms(DEFAULT_AUT_CAP).unwrap().order(), 168);
    }

    #[test]
    fn generators_regenerate_the_group() {
        let d8 = GroupTable::dihedral(4).unwrap();
        let auts = d8.automorphisms(DEFAULT_AUT_CAP).unwrap();
        let gens = auts.generators();
        assert!(gens.len() <= 3);
        let mut closure = HashSet::from([Automorphism::identity(8)]);
        let mut queue = VecDeque::from([Automorphism::identity(8)]);
        while let Some(x) = queue.pop_front() {
            for g in &gens {
                let y = x.then(g);
                if closure.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        assert_eq!(closure.len(), auts.order());
    }

    #[test]
    fn characteristic_subgroups() {
        let d10 = GroupTable::dihedral(5).unwrap();
        let auts = d10.automorphisms(DEFAULT_AUT_CAP).unwrap();
        let rotations = d10.subgroup_generated(&d10.set([1]));
        assert!(d10.is_characteristic(&rotations, &auts).unwrap());
        assert!(!d10.is_characteristic(&d10.set([0, 5]), &auts).unwrap());
        assert!(matches!(d10.is_characteristic(&d10.set([1]), &auts), Err(Error::NotASubgroup)));

        let v4 = GroupTable::dihedral(2).unwrap();
        let auts = v4.automorphisms(DEFAULT_AUT_CAP).unwrap();
        for x in 1..4 {
            assert!(!v4.is_characteristic(&v4.set([0, x]), &auts).unwrap());
        }
    }
}
