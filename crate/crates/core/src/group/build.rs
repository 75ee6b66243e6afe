//! Group constructors.

use std::collections::HashMap;
use std::collections::VecDeque;

use num_integer::Integer;

use super::{Element, ElemSet, GroupKind, GroupTable, Permutation};
use crate::{Error, Result};

/// Default cap on the order of a permutation closure.
pub const DEFAULT_CLOSURE_CAP: usize = 360;

fn power_name(base: &str, i: usize) -> String {
    match i {
        0 => "1".to_string(),
        1 => base.to_string(),
        _ => format!("{base}^{i}"),
    }
}

impl GroupTable {
    /// The cyclic group `Z_n`. Element `i` is `a^i`; its literal is the residue `i`.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidTable("cyclic group of order 0".into()));
        }
        let mul = (0..n).flat_map(|x| (0..n).map(move |y| (x + y) % n)).collect();
        let names = (0..n).map(|i| power_name("a", i)).collect();
        let literals = (0..n).map(|i| i.to_string()).collect();
        GroupTable::from_parts(mul, names, literals, GroupKind::Cyclic(n), None)
    }

    /// The dihedral group `D_2n = <a, b | a^n = b^2 = (ab)^2 = 1>` of order `2n`.
    ///
    /// Index `i < n` is `a^i` and index `n + i` is `a^i b`.
    pub fn dihedral(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidTable(format!("dihedral group needs n >= 2, got {n}")));
        }
        let order = 2 * n;
        let split = |x: usize| (x % n, x / n);
        let mut mul = Vec::with_capacity(order * order);
        for x in 0..order {
            let (i, e) = split(x);
            for y in 0..order {
                let (j, f) = split(y);
                // a^i b^e a^j b^f = a^(i ± j) b^(e+f), since b a b = a^-1
                let k = if e == 0 { (i + j) % n } else { (i + n - j) % n };
                mul.push(k + n * ((e + f) % 2));
            }
        }
        let mut names = Vec::with_capacity(order);
        let mut literals = Vec::with_capacity(order);
        for x in 0..order {
            let (i, e) = split(x);
            let (name, lit) = match (i, e) {
                (0, 0) => ("1".to_string(), "1".to_string()),
                (0, _) => ("b".to_string(), "b".to_string()),
                (1, 0) => ("a".to_string(), "a".to_string()),
                (1, _) => ("ab".to_string(), "ab".to_string()),
                (_, 0) => (format!("a^{i}"), format!("a{i}")),
                (_, _) => (format!("a^{i}b"), format!("a{i}b")),
            };
            names.push(name);
            literals.push(lit);
        }
        GroupTable::from_parts(mul, names, literals, GroupKind::Dihedral(n), None)
    }

    /// Closes a set of permutations under composition, breadth first from the
    /// identity. Fails once more than `cap` elements have been generated.
    ///
    /// The product `x·y` applies `x` first, then `y`.
    pub fn perm_closure(generators: &[Permutation], cap: usize) -> Result<Self> {
        let degree = generators.iter().map(Permutation::degree).max().unwrap_or(0);
        let gens: Vec<Permutation> = generators.iter().map(|g| g.padded(degree)).collect();
        let mut elements = vec![Permutation::identity(degree)];
        let mut index: HashMap<Permutation, usize> = HashMap::new();
        index.insert(elements[0].clone(), 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for g in &gens {
                let y = elements[x].then(g);
                if !index.contains_key(&y) {
                    if elements.len() == cap {
                        return Err(Error::OrderCapExceeded { cap });
                    }
                    index.insert(y.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(y);
                }
            }
        }
        let order = elements.len();
        let mut mul = Vec::with_capacity(order * order);
        for x in &elements {
            for y in &elements {
                mul.push(index[&x.then(y)]);
            }
        }
        let names: Vec<String> = elements
            .iter()
            .map(|p| if p.is_identity() { "1".to_string() } else { p.to_string() })
            .collect();
        GroupTable::from_parts(
            mul,
            names.clone(),
            names,
            GroupKind::PermClosure(generators.to_vec()),
            Some(elements),
        )
    }

    /// `G × H`, with `(x, y)` stored at index `x·|H| + y`.
    pub fn direct_product(g: &GroupTable, h: &GroupTable) -> Result<Self> {
        let (m, n) = (g.order(), h.order());
        let order = m * n;
        let mut mul = Vec::with_capacity(order * order);
        for x in 0..order {
            for y in 0..order {
                mul.push(g.mul(x / n, y / n) * n + h.mul(x % n, y % n));
            }
        }
        let names = (0..order)
            .map(|x| format!("({},{})", g.name(x / n), h.name(x % n)))
            .collect();
        let literals = (0..order)
            .map(|x| format!("{}|{}", g.literal(x / n), h.literal(x % n)))
            .collect();
        let kind = GroupKind::DirectProduct(Box::new(g.kind().clone()), Box::new(h.kind().clone()));
        GroupTable::from_parts(mul, names, literals, kind, None)
    }

    /// The semidirect product `E(n, M) = Z_n ⋉ M`.
    ///
    /// `M` must be abelian with square-free exponent and order coprime to
    /// `n ∈ {2, 3, 4, 8}`. The generator `c` of `Z_n` acts by inversion when
    /// `n` is even and by `m ↦ m^ℓ` when `n = 3`, where `ℓ > 1` is the least
    /// integer with `ℓ³ ≡ 1` and `gcd(ℓ(ℓ−1), exp M) = 1`.
    ///
    /// Element `m·c^i` is stored at index `i·|M| + m`.
    pub fn semidirect_e(n: usize, m: &GroupTable) -> Result<Self> {
        let fail = |condition: String| Err(Error::EPrecondition { n, condition });
        if ![2, 3, 4, 8].contains(&n) {
            return fail("n must be one of 2, 3, 4, 8".into());
        }
        if !m.is_abelian() {
            return fail("M must be abelian".into());
        }
        let exp = m.exponent();
        if !is_square_free(exp) {
            return fail(format!(
                "every Sylow subgroup of M must be elementary abelian (exp M = {exp})"
            ));
        }
        if n.gcd(&m.order()) != 1 {
            return fail(format!("gcd(n, |M|) = gcd({n}, {}) must be 1", m.order()));
        }
        let ell = if n == 3 {
            match smallest_ell(exp) {
                Some(l) => l,
                None => {
                    return fail(format!(
                        "no ℓ with ℓ³ ≡ 1 (mod {exp}) and gcd(ℓ(ℓ−1), {exp}) = 1"
                    ))
                }
            }
        } else {
            exp.saturating_sub(1).max(1)
        };
        let act = |x: Element| if n == 3 { m.pow(x, ell) } else { m.inv(x) };
        // act_pow[i][x] = φ^i(x)
        let mut act_pow = vec![m.elements().collect::<Vec<_>>()];
        for i in 1..n {
            let prev = &act_pow[i - 1];
            act_pow.push(prev.iter().map(|&x| act(x)).collect());
        }
        let k = m.order();
        let order = n * k;
        let mut mul = Vec::with_capacity(order * order);
        for x in 0..order {
            let (i, mx) = (x / k, x % k);
            for y in 0..order {
                let (j, my) = (y / k, y % k);
                // (mx c^i)(my c^j) = mx φ^i(my) c^(i+j)
                let part = m.mul(mx, act_pow[i][my]);
                mul.push(((i + j) % n) * k + part);
            }
        }
        let names = (0..order)
            .map(|x| {
                let (i, mx) = (x / k, x % k);
                match (i, mx) {
                    (0, _) => m.name(mx).to_string(),
                    (_, 0) => power_name("c", i),
                    _ => format!("{}{}", m.name(mx), power_name("c", i)),
                }
            })
            .collect();
        let literals = (0..order)
            .map(|x| {
                let (i, mx) = (x / k, x % k);
                if i == 0 {
                    m.literal(mx).to_string()
                } else {
                    format!("{}c{i}", m.literal(mx))
                }
            })
            .collect();
        let kind = GroupKind::SemidirectE {
            n,
            m: Box::new(m.kind().clone()),
            ell,
        };
        GroupTable::from_parts(mul, names, literals, kind, None)
    }

    /// The subgroup `H` as a table of its own, keeping element names.
    /// Index `i` of the result is the `i`-th smallest member of `H`.
    pub fn subgroup_table(&self, h: &ElemSet) -> Result<Self> {
        if !self.is_subgroup(h) {
            return Err(Error::NotASubgroup);
        }
        let members = h.members();
        let pos: HashMap<Element, usize> = members.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let mut mul = Vec::with_capacity(members.len() * members.len());
        for &x in members {
            for &y in members {
                mul.push(pos[&self.mul(x, y)]);
            }
        }
        let names = members.iter().map(|&x| self.name(x).to_string()).collect();
        let literals = members.iter().map(|&x| self.literal(x).to_string()).collect();
        let perms = self
            .perms
            .as_ref()
            .map(|p| members.iter().map(|&x| p[x].clone()).collect());
        let kind = GroupKind::Subgroup {
            parent: Box::new(self.kind().clone()),
            members: members.to_vec(),
        };
        GroupTable::from_parts(mul, names, literals, kind, perms)
    }
}

fn is_square_free(mut n: usize) -> bool {
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p * p) {
            return false;
        }
        if n.is_multiple_of(p) {
            n /= p;
        }
        p += 1;
    }
    true
}

fn smallest_ell(exp: usize) -> Option<usize> {
    if exp == 1 {
        return Some(2);
    }
    (2..exp).find(|&l| l.pow(3) % exp == 1 && (l * (l - 1)).gcd(&exp) == 1)
}
