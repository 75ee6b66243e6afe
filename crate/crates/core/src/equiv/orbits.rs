//! Orbits of `Aut(G)` (CI) or of the maps `S ↦ gS^α` (BCI) on `k`-subsets.
//!
//! Every `k`-subset is identified with its rank in lexicographic order of
//! sorted index sequences. A union–find over ranks is seeded with one edge per
//! subset and generator move (left translation by a generator of `G`, or a
//! generator of `Aut(G)`); union by minimum makes each root the
//! lexicographically least member of its orbit.

use serde::Serialize;

use super::Action;
use crate::group::{ElemSet, GroupContext, GroupTable};
use crate::{Error, Result};

/// Default cap on the number of `k`-subsets enumerated.
pub const DEFAULT_SUBSET_CAP: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OrbitOptions {
    /// Keep only symmetric, identity-free subsets (the Cayley domain).
    pub cayley_domain: bool,
    pub cap: u64,
}

impl Default for OrbitOptions {
    fn default() -> Self {
        OrbitOptions {
            cayley_domain: false,
            cap: DEFAULT_SUBSET_CAP,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitReps {
    pub action: Action,
    pub k: usize,
    /// Orbit minima, in increasing order.
    pub reps: Vec<ElemSet>,
    pub orbit_sizes: Vec<u64>,
    /// Number of subsets in the enumerated domain.
    pub subsets: u64,
}

/// Binomial coefficients `C(n, r)` for `n ≤ 128`, saturating.
struct Binomials {
    table: Vec<Vec<u128>>,
}

impl Binomials {
    fn new(n: usize) -> Self {
        let mut table = vec![vec![0u128; n + 2]; n + 2];
        for i in 0..=n + 1 {
            table[i][0] = 1;
            for j in 1..=i {
                table[i][j] = table[i - 1][j - 1].saturating_add(table[i - 1][j]);
            }
        }
        Binomials { table }
    }

    fn c(&self, n: usize, r: usize) -> u128 {
        if r > n {
            0
        } else {
            self.table[n][r]
        }
    }
}

struct Ranker {
    n: usize,
    k: usize,
    binom: Binomials,
}

impl Ranker {
    /// Lexicographic rank of a sorted `k`-subset of `0..n`.
    fn rank(&self, members: &[usize]) -> u64 {
        let mut r = 0u128;
        let mut next = 0;
        for (i, &c) in members.iter().enumerate() {
            // Subsets agreeing so far but with a smaller element at position i:
            // Σ_{j=next}^{c-1} C(n-1-j, k-1-i) = C(n-next, k-i) − C(n-c, k-i).
            r += self.binom.c(self.n - next, self.k - i) - self.binom.c(self.n - c, self.k - i);
            next = c + 1;
        }
        r as u64
    }

    fn unrank(&self, mut r: u64, out: &mut Vec<usize>) {
        out.clear();
        let mut x = 0;
        for i in 0..self.k {
            loop {
                let block = self.binom.c(self.n - 1 - x, self.k - 1 - i) as u64;
                if r < block {
                    break;
                }
                r -= block;
                x += 1;
            }
            out.push(x);
            x += 1;
        }
    }
}

struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n as u32).collect(),
        }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        let mut root = x;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        while self.parent[x as usize] != root {
            let next = self.parent[x as usize];
            self.parent[x as usize] = root;
            x = next;
        }
        root
    }

    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi as usize] = lo;
        }
    }
}

fn in_cayley_domain(g: &GroupTable, members: &[usize]) -> bool {
    members.iter().all(|&x| x != 0 && members.binary_search(&g.inv(x)).is_ok())
}

pub fn subset_orbits(ctx: &GroupContext, k: usize, action: Action) -> Result<OrbitReps> {
    subset_orbits_with(ctx, k, action, OrbitOptions::default())
}

pub fn subset_orbits_with(ctx: &GroupContext, k: usize, action: Action, opts: OrbitOptions) -> Result<OrbitReps> {
    let g = ctx.group();
    let n = g.order();
    if n > 128 {
        return Err(Error::OrderCapExceeded { cap: 128 });
    }
    if k > n {
        return Err(Error::Hypothesis(format!("k = {k} exceeds the group order {n}")));
    }
    let ranker = Ranker {
        n,
        k,
        binom: Binomials::new(n),
    };
    let total = ranker.binom.c(n, k);
    if total > opts.cap as u128 || total > u32::MAX as u128 {
        return Err(Error::SizeCap {
            count: total,
            cap: opts.cap,
        });
    }
    let total = total as usize;

    let translations: Vec<usize> = match action {
        Action::Bci => g.greedy_generators(),
        Action::Ci => Vec::new(),
    };
    let aut_gens = ctx.auts().generators();

    let mut uf = UnionFind::new(total);
    let mut members = Vec::with_capacity(k);
    let mut image = Vec::with_capacity(k);
    for r in 0..total {
        ranker.unrank(r as u64, &mut members);
        for &t in &translations {
            image.clear();
            image.extend(members.iter().map(|&x| g.mul(t, x)));
            image.sort_unstable();
            uf.union(r as u32, ranker.rank(&image) as u32);
        }
        for alpha in &aut_gens {
            image.clear();
            image.extend(members.iter().map(|&x| alpha.apply(x)));
            image.sort_unstable();
            uf.union(r as u32, ranker.rank(&image) as u32);
        }
    }

    let mut sizes = vec![0u64; total];
    let mut subsets = 0u64;
    for r in 0..total {
        if opts.cayley_domain {
            ranker.unrank(r as u64, &mut members);
            if !in_cayley_domain(g, &members) {
                continue;
            }
        }
        subsets += 1;
        let root = uf.find(r as u32) as usize;
        sizes[root] += 1;
    }
    let mut reps = Vec::new();
    let mut orbit_sizes = Vec::new();
    for (r, &size) in sizes.iter().enumerate() {
        if size > 0 {
            ranker.unrank(r as u64, &mut members);
            reps.push(g.set(members.iter().copied()));
            orbit_sizes.push(size);
        }
    }
    Ok(OrbitReps {
        action,
        k,
        reps,
        orbit_sizes,
        subsets,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equiv::{bci_equivalent, ci_equivalent};
    use itertools::Itertools;

    #[test]
    fn rank_round_trip() {
        let ranker = Ranker {
            n: 7,
            k: 3,
            binom: Binomials::new(7),
        };
        let mut buf = Vec::new();
        for (i, combo) in (0..7).combinations(3).enumerate() {
            assert_eq!(ranker.rank(&combo), i as u64);
            ranker.unrank(i as u64, &mut buf);
            assert_eq!(buf, combo);
        }
    }

    #[test]
    fn empty_and_full() {
        let ctx = GroupContext::from_descriptor("dihedral:4").unwrap();
        for action in [Action::Ci, Action::Bci] {
            let o = subset_orbits(&ctx, 0, action).unwrap();
            assert_eq!(o.reps, vec![ctx.empty_set()]);
            let o = subset_orbits(&ctx, 8, action).unwrap();
            assert_eq!(o.reps, vec![ctx.full_set()]);
        }
    }

    /// Partition by pairwise equivalence tests, as an independent oracle.
    fn brute_partition(ctx: &GroupContext, k: usize, action: Action) -> Vec<Vec<ElemSet>> {
        let mut classes: Vec<Vec<ElemSet>> = Vec::new();
        for combo in (0..ctx.order()).combinations(k) {
            let s = ctx.set(combo);
            let equivalent = |t: &ElemSet| match action {
                Action::Ci => ci_equivalent(ctx, t, &s).is_some(),
                Action::Bci => bci_equivalent(ctx, t, &s).is_some(),
            };
            match classes.iter_mut().find(|c| equivalent(&c[0])) {
                Some(c) => c.push(s),
                None => classes.push(vec![s]),
            }
        }
        classes
    }

    #[test]
    fn matches_pairwise_partition() {
        for desc in ["cyclic:6", "dihedral:3", "prod:cyclic:2xcyclic:4", "dihedral:4"] {
            let ctx = GroupContext::from_descriptor(desc).unwrap();
            for k in 0..=4 {
                for action in [Action::Ci, Action::Bci] {
                    let o = subset_orbits(&ctx, k, action).unwrap();
                    let classes = brute_partition(&ctx, k, action);
                    assert_eq!(o.reps.len(), classes.len(), "{desc} k={k} {action}");
                    let mut mins: Vec<ElemSet> = classes.iter().map(|c| c.iter().min().unwrap().clone()).collect();
                    mins.sort();
                    assert_eq!(o.reps, mins);
                    let mut sizes: Vec<u64> = classes.iter().map(|c| c.len() as u64).collect();
                    let mut got = o.orbit_sizes.clone();
                    sizes.sort();
                    got.sort();
                    assert_eq!(got, sizes);
                }
            }
        }
    }

    #[test]
    fn cayley_domain_counts() {
        let ctx = GroupContext::from_descriptor("cyclic:8").unwrap();
        let opts = OrbitOptions {
            cayley_domain: true,
            ..OrbitOptions::default()
        };
        // Symmetric identity-free 2-subsets of Z8: {1,7}, {3,5}, {2,6}.
        let o = subset_orbits_with(&ctx, 2, Action::Ci, opts).unwrap();
        assert_eq!(o.subsets, 3);
        assert_eq!(o.orbit_sizes.iter().sum::<u64>(), 3);
        assert_eq!(o.reps.len(), 2);
    }

    #[test]
    fn size_cap() {
        let ctx = GroupContext::from_descriptor("cyclic:40").unwrap();
        let opts = OrbitOptions {
            cap: 1000,
            ..OrbitOptions::default()
        };
        assert!(matches!(
            subset_orbits_with(&ctx, 5, Action::Bci, opts),
            Err(Error::SizeCap { .. })
        ));
    }
}
