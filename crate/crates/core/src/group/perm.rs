//! Permutations of `0..degree`, with 1-based cycle notation for input and output.

use std::fmt;

use crate::{Error, Result};

/// A permutation stored as its image list: point `i` goes to `images[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &x in &images {
            if x >= images.len() || seen[x] {
                return Err(Error::InvalidPermutation(format!("{images:?} is not a bijection")));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation of `0..degree` from 0-based cycles.
    pub fn from_cycles(cycles: &[Vec<usize>], degree: usize) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (i, &p) in cycle.iter().enumerate() {
                if p >= degree {
                    return Err(Error::InvalidPermutation(format!("point {} exceeds degree {degree}", p + 1)));
                }
                if touched[p] {
                    return Err(Error::InvalidPermutation(format!("point {} repeated", p + 1)));
                }
                touched[p] = true;
                images[p] = cycle[(i + 1) % cycle.len()];
            }
        }
        Ok(Permutation { images })
    }

    /// Parses 1-based cycle notation such as `(1 2 3)(4 5)`. The empty string
    /// and `()` both denote the identity.
    pub fn parse(text: &str, degree: Option<usize>) -> Result<Self> {
        let cycles = parse_cycles(text)?;
        let max_point = cycles.iter().flatten().map(|&p| p + 1).max().unwrap_or(0);
        let degree = match degree {
            Some(d) if d < max_point => {
                return Err(Error::InvalidPermutation(format!(
                    "point {max_point} exceeds degree {d}"
                )))
            }
            Some(d) => d,
            None => max_point,
        };
        Permutation::from_cycles(&cycles, degree)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, point: usize) -> usize {
        self.images[point]
    }

    /// The product that applies `self` first and `other` second.
    pub fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self.images.iter().map(|&x| other.images[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x] = i;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// Extends the permutation to a larger degree by fixing the new points.
    pub fn padded(&self, degree: usize) -> Permutation {
        let mut images = self.images.clone();
        images.extend(self.degree()..degree.max(self.degree()));
        Permutation { images }
    }

    /// Non-trivial cycles, each starting at its smallest point, 0-based.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.images[start];
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            out.push(cycle);
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for cycle in cycles {
            f.write_str("(")?;
            for (i, p) in cycle.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", p + 1)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// Parses 1-based cycle notation into 0-based cycles.
pub(crate) fn parse_cycles(text: &str) -> Result<Vec<Vec<usize>>> {
    let mut cycles = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        match bytes[i] {
            b' ' | b'\t' => i += 1,
            b'(' => {
                let close = text[i..]
                    .find(')')
                    .map(|off| i + off)
                    .ok_or_else(|| Error::parse(i, &text[i..], "unclosed cycle"))?;
                let inner = &text[i + 1..close];
                let mut cycle = Vec::new();
                for tok in inner.split([' ', ',']).filter(|t| !t.is_empty()) {
                    let p: usize = tok
                        .parse()
                        .map_err(|_| Error::parse(i, tok, "expected a positive point number"))?;
                    if p == 0 {
                        return Err(Error::parse(i, tok, "points are numbered from 1"));
                    }
                    cycle.push(p - 1);
                }
                if cycle.len() > 1 {
                    cycles.push(cycle);
                }
                i = close + 1;
            }
            _ => return Err(Error::parse(i, &text[i..i + 1], "expected `(`")),
        }
    }
    Ok(cycles)
}
