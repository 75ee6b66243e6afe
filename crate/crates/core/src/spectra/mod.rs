//! Adjacency spectra. Integer eigenvalues and their multiplicities are exact:
//! they come from the integer characteristic polynomial, never from floating
//! point. The symmetric eigensolver supplies the full numeric spectrum and a
//! cross-check.

mod exact;

pub use exact::{characteristic_polynomial, divide_by_linear, exact_rank, root_multiplicity};
pub(crate) use exact::charpoly_mod;

use nalgebra::DMatrix;
use num_bigint::BigInt;

use crate::graph::Graph;
use crate::{Error, Result};

/// Largest graph accepted by the spectral operations.
pub const MAX_SPECTRUM_VERTICES: usize = 256;

/// Tolerance used to snap numeric eigenvalues onto integers.
pub const INTEGRALITY_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    /// Exact integer eigenvalues with multiplicities, largest value first.
    pub integer_eigenvalues: Vec<(i64, usize)>,
    /// Number of eigenvalues (with multiplicity) that are not integers.
    pub residual_count: usize,
    /// All eigenvalues from the symmetric eigensolver, ascending.
    pub numeric: Vec<f64>,
    pub tolerance: f64,
    /// Exact `det(xI − A)`, low degree first.
    pub char_poly: Vec<BigInt>,
}

impl Spectrum {
    pub fn multiplicity(&self, value: i64) -> usize {
        self.integer_eigenvalues
            .iter()
            .find(|&&(v, _)| v == value)
            .map_or(0, |&(_, m)| m)
    }

    /// True when every eigenvalue is an integer.
    pub fn is_integral(&self) -> bool {
        self.residual_count == 0
    }

    /// True when the spectrum is entirely integral and equals `expected`
    /// (value, multiplicity) as a multiset.
    pub fn equals_integral(&self, expected: &[(i64, usize)]) -> bool {
        let mut want: Vec<(i64, usize)> = expected.iter().copied().filter(|&(_, m)| m > 0).collect();
        want.sort_unstable_by_key(|&(v, _)| std::cmp::Reverse(v));
        self.is_integral() && self.integer_eigenvalues == want
    }

    /// The integer eigenvalues of `expected` all occur with exactly the given
    /// multiplicities, and no other integer eigenvalue occurs.
    pub fn integer_part_equals(&self, expected: &[(i64, usize)]) -> bool {
        let mut want: Vec<(i64, usize)> = expected.iter().copied().filter(|&(_, m)| m > 0).collect();
        want.sort_unstable_by_key(|&(v, _)| std::cmp::Reverse(v));
        self.integer_eigenvalues == want
    }

    /// The number of numeric eigenvalues within tolerance of each exact integer
    /// eigenvalue matches its exact multiplicity, and the numeric residue
    /// matches `residual_count`.
    pub fn numeric_agrees(&self) -> bool {
        let near = |v: i64| {
            self.numeric
                .iter()
                .filter(|&&x| (x - v as f64).abs() <= self.tolerance.max(1e-6))
                .count()
        };
        let snapped: usize = self.integer_eigenvalues.iter().map(|&(v, _)| near(v)).sum();
        self.integer_eigenvalues.iter().all(|&(v, m)| near(v) == m)
            && self.numeric.len() - snapped == self.residual_count
    }

    /// `λ` and `−λ` occur with equal multiplicity (exactly for integers,
    /// within tolerance for the numeric list).
    pub fn is_symmetric_about_zero(&self) -> bool {
        let exact = self
            .integer_eigenvalues
            .iter()
            .all(|&(v, m)| self.multiplicity(-v) == m);
        let n = self.numeric.len();
        let numeric = (0..n).all(|i| (self.numeric[i] + self.numeric[n - 1 - i]).abs() <= 1e-6);
        exact && numeric
    }

    /// The integer eigenvalues in a form such as `±5, (±1)^[5], 0^[8]`.
    pub fn describe_integer_part(&self) -> String {
        let mut parts = Vec::new();
        for &(v, m) in &self.integer_eigenvalues {
            if v < 0 && self.multiplicity(-v) == m {
                continue;
            }
            let label = if v > 0 && self.multiplicity(-v) == m {
                format!("±{v}")
            } else {
                v.to_string()
            };
            parts.push(if m == 1 {
                label
            } else if label.starts_with('±') {
                format!("({label})^[{m}]")
            } else {
                format!("{label}^[{m}]")
            });
        }
        parts.join(", ")
    }

    /// [`Self::describe_integer_part`] followed by the non-integer count.
    pub fn describe(&self) -> String {
        match self.residual_count {
            0 => self.describe_integer_part(),
            r => format!("{}, {r} non-integer", self.describe_integer_part()),
        }
    }
}

fn check_size(g: &Graph) -> Result<()> {
    if g.vcount() > MAX_SPECTRUM_VERTICES {
        return Err(Error::SizeCap {
            count: g.vcount() as u128,
            cap: MAX_SPECTRUM_VERTICES as u64,
        });
    }
    Ok(())
}

/// Exact characteristic polynomial of the adjacency matrix.
pub fn graph_char_poly(g: &Graph) -> Result<Vec<BigInt>> {
    check_size(g)?;
    Ok(characteristic_polynomial(&g.adjacency_matrix()))
}

/// Numeric eigenvalues of the adjacency matrix, ascending.
pub fn numeric_eigenvalues(g: &Graph) -> Vec<f64> {
    let n = g.vcount();
    if n == 0 {
        return Vec::new();
    }
    let m = DMatrix::from_fn(n, n, |i, j| if g.has_edge(i, j) { 1.0 } else { 0.0 });
    let mut eig: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
    eig.sort_by(f64::total_cmp);
    eig
}

pub fn adjacency_spectrum(g: &Graph) -> Result<Spectrum> {
    let char_poly = graph_char_poly(g)?;
    let numeric = numeric_eigenvalues(g);
    // Every eigenvalue lies in [−Δ, Δ]; each integer there is tested exactly.
    let max_deg = (0..g.vcount()).map(|v| g.degree(v)).max().unwrap_or(0) as i64;
    let mut integer_eigenvalues = Vec::new();
    let mut remaining = char_poly.clone();
    for v in (-max_deg..=max_deg).rev() {
        let mut m = 0;
        while let Some(q) = divide_by_linear(&remaining, v) {
            remaining = q;
            m += 1;
        }
        if m > 0 {
            integer_eigenvalues.push((v, m));
        }
    }
    let found: usize = integer_eigenvalues.iter().map(|&(_, m)| m).sum();
    Ok(Spectrum {
        integer_eigenvalues,
        residual_count: g.vcount() - found,
        numeric,
        tolerance: INTEGRALITY_TOLERANCE,
        char_poly,
    })
}

/// Dimension of the adjacency kernel, by exact rank.
pub fn zero_multiplicity(g: &Graph) -> Result<usize> {
    check_size(g)?;
    Ok(g.vcount() - exact_rank(&g.adjacency_matrix()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::bicayley_graph;
    use crate::group::GroupTable;

    #[test]
    fn cycle_spectra() {
        let c4 = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let s = adjacency_spectrum(&c4).unwrap();
        assert!(s.equals_integral(&[(2, 1), (0, 2), (-2, 1)]));
        assert!(s.numeric_agrees() && s.is_symmetric_about_zero());
        assert_eq!(zero_multiplicity(&c4).unwrap(), 2);

        let c5 = Graph::from_edges(5, (0..5).map(|i| (i, (i + 1) % 5))).unwrap();
        let s = adjacency_spectrum(&c5).unwrap();
        assert_eq!(s.integer_eigenvalues, vec![(2, 1)]);
        assert_eq!(s.residual_count, 4);
        assert!(s.numeric_agrees());
    }

    #[test]
    fn matching_is_invertible() {
        let m = Graph::from_edges(6, [(0, 1), (2, 3), (4, 5)]).unwrap();
        assert_eq!(zero_multiplicity(&m).unwrap(), 0);
    }

    #[test]
    fn d10_bicayley_zero_multiplicities() {
        let d10 = GroupTable::dihedral(5).unwrap();
        for (lit, zeros) in [("1,a,a2,b", 0), ("1,a,b,ab", 10), ("1,a,b,a2b", 2)] {
            let g = bicayley_graph(&d10, &d10.parse_set(lit).unwrap());
            assert_eq!(zero_multiplicity(&g).unwrap(), zeros, "{lit}");
            let s = adjacency_spectrum(&g).unwrap();
            assert_eq!(s.multiplicity(0), zeros, "{lit}");
            assert!(s.numeric_agrees(), "{lit}");
        }
    }

    #[test]
    fn size_cap() {
        assert!(matches!(
            zero_multiplicity(&Graph::empty(257)),
            Err(Error::SizeCap { .. })
        ));
    }
}
