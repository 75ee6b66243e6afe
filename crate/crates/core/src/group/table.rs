use std::fmt;

use num_integer::Integer;

use super::Permutation;
use crate::{Error, Result};

/// Index of a group element inside its [`GroupTable`]. The identity is always `0`.
pub type Element = usize;

/// Orders up to this bound get the exhaustive associativity check on construction.
pub const ASSOCIATIVITY_CHECK_LIMIT: usize = 128;

/// How a group table was built. Its `Display` form is the group descriptor
/// accepted by [`GroupTable::from_descriptor`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupKind {
    Cyclic(usize),
    /// Dihedral group of order `2n`, stored by `n`.
    Dihedral(usize),
    PermClosure(Vec<Permutation>),
    DirectProduct(Box<GroupKind>, Box<GroupKind>),
    /// `Z_n ⋉ M` with the inversion action (even `n`) or `m ↦ m^ell` (`n = 3`).
    SemidirectE { n: usize, m: Box<GroupKind>, ell: usize },
    /// A subgroup carried over from an ambient table, by element indices.
    Subgroup { parent: Box<GroupKind>, members: Vec<Element> },
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupKind::Cyclic(n) => write!(f, "cyclic:{n}"),
            GroupKind::Dihedral(n) => write!(f, "dihedral:{n}"),
            GroupKind::PermClosure(gens) => {
                f.write_str("perm:")?;
                for (i, g) in gens.iter().enumerate() {
                    if i > 0 {
                        f.write_str(";")?;
                    }
                    write!(f, "{g}")?;
                }
                Ok(())
            }
            GroupKind::DirectProduct(a, b) => write!(f, "prod:{a}x{b}"),
            GroupKind::SemidirectE { n, m, .. } => write!(f, "E:{n},{m}"),
            GroupKind::Subgroup { parent, members } => {
                let list: Vec<String> = members.iter().map(|m| m.to_string()).collect();
                write!(f, "sub:{parent}@{}", list.join(","))
            }
        }
    }
}

/// A finite group given by its complete multiplication table.
#[derive(Clone, Debug)]
pub struct GroupTable {
    order: usize,
    mul: Vec<Element>,
    inv: Vec<Element>,
    names: Vec<String>,
    literals: Vec<String>,
    kind: GroupKind,
    pub(super) perms: Option<Vec<Permutation>>,
}

impl PartialEq for GroupTable {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.mul == other.mul
    }
}

impl Eq for GroupTable {}

impl GroupTable {
    /// Assembles a table and checks the group axioms.
    ///
    /// `mul` is row-major with `mul[x * order + y] = x·y`. Element `0` must be
    /// the identity. `literals` are the tokens accepted by set literals and
    /// must be unique.
    pub fn from_parts(
        mul: Vec<Element>,
        names: Vec<String>,
        literals: Vec<String>,
        kind: GroupKind,
        perms: Option<Vec<Permutation>>,
    ) -> Result<Self> {
        let order = names.len();
        if order == 0 {
            return Err(Error::InvalidTable("empty group".into()));
        }
        if mul.len() != order * order || literals.len() != order {
            return Err(Error::InvalidTable("table dimensions disagree".into()));
        }
        let mut inv = vec![usize::MAX; order];
        for x in 0..order {
            for y in 0..order {
                if mul[x * order + y] == 0 {
                    inv[x] = y;
                }
            }
        }
        let table = GroupTable {
            order,
            mul,
            inv,
            names,
            literals,
            kind,
            perms,
        };
        table.validate()?;
        Ok(table)
    }

    /// Re-checks every table invariant: Latin square, identity at index 0,
    /// inverses, and associativity for orders up to
    /// [`ASSOCIATIVITY_CHECK_LIMIT`].
    pub fn validate(&self) -> Result<()> {
        let n = self.order;
        let bad = |msg: String| Err(Error::InvalidTable(msg));
        for x in 0..n {
            let mut row = vec![false; n];
            let mut col = vec![false; n];
            for y in 0..n {
                let r = self.mul[x * n + y];
                let c = self.mul[y * n + x];
                if r >= n || c >= n || row[r] || col[c] {
                    return bad(format!("row or column {x} is not a permutation"));
                }
                row[r] = true;
                col[c] = true;
            }
            if self.mul(0, x) != x || self.mul(x, 0) != x {
                return bad("element 0 is not the identity".into());
            }
            if self.inv[x] >= n || self.mul(x, self.inv[x]) != 0 {
                return bad(format!("element {x} has no inverse"));
            }
        }
        if n <= ASSOCIATIVITY_CHECK_LIMIT {
            for x in 0..n {
                for y in 0..n {
                    let xy = self.mul(x, y);
                    for z in 0..n {
                        if self.mul(xy, z) != self.mul(x, self.mul(y, z)) {
                            return bad(format!("({x}·{y})·{z} ≠ {x}·({y}·{z})"));
                        }
                    }
                }
            }
        }
        let mut lits: Vec<&str> = self.literals.iter().map(String::as_str).collect();
        lits.sort_unstable();
        if lits.windows(2).any(|w| w[0] == w[1]) {
            return bad("element literals are not unique".into());
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> Element {
        0
    }

    #[inline]
    pub fn mul(&self, x: Element, y: Element) -> Element {
        self.mul[x * self.order + y]
    }

    #[inline]
    pub fn inv(&self, x: Element) -> Element {
        self.inv[x]
    }

    pub fn elements(&self) -> std::ops::Range<Element> {
        0..self.order
    }

    pub fn name(&self, x: Element) -> &str {
        &self.names[x]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// The token for `x` in set literals.
    pub fn literal(&self, x: Element) -> &str {
        &self.literals[x]
    }

    pub fn literals(&self) -> &[String] {
        &self.literals
    }

    pub fn kind(&self) -> &GroupKind {
        &self.kind
    }

    pub fn descriptor(&self) -> String {
        self.kind.to_string()
    }

    /// The concrete permutation for `x` when the group was built by closure.
    pub fn permutation(&self, x: Element) -> Option<&Permutation> {
        self.perms.as_ref().map(|p| &p[x])
    }

    pub fn pow(&self, x: Element, mut k: usize) -> Element {
        let mut acc = 0;
        let mut base = x;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn element_order(&self, x: Element) -> usize {
        let mut y = x;
        let mut k = 1;
        while y != 0 {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> usize {
        self.elements().map(|x| self.element_order(x)).fold(1, |a, b| a.lcm(&b))
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|x| (x + 1..self.order).all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    pub fn center(&self) -> Vec<Element> {
        self.elements()
            .filter(|&x| self.elements().all(|y| self.mul(x, y) == self.mul(y, x)))
            .collect()
    }

    /// The multiplication table as nested rows.
    pub fn rows(&self) -> Vec<Vec<Element>> {
        self.mul.chunks(self.order).map(<[Element]>::to_vec).collect()
    }
}
