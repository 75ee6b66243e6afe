//! Group descriptors: `cyclic:<n>`, `dihedral:<n>`, `perm:<cycles;cycles>`,
//! `E:<n>,<desc>`, `prod:<desc>x<desc>`.

use super::{GroupTable, Permutation, DEFAULT_CLOSURE_CAP};
use crate::{Error, Result};

impl GroupTable {
    pub fn from_descriptor(descriptor: &str) -> Result<Self> {
        Self::from_descriptor_with_cap(descriptor, DEFAULT_CLOSURE_CAP)
    }

    /// Parses a descriptor; `closure_cap` bounds any permutation closure.
    pub fn from_descriptor_with_cap(descriptor: &str, closure_cap: usize) -> Result<Self> {
        let text = descriptor.trim();
        let err = |message: &str| Error::Descriptor {
            descriptor: text.to_string(),
            message: message.to_string(),
        };
        let (head, body) = text.split_once(':').ok_or_else(|| err("expected `<kind>:<arguments>`"))?;
        let number = |s: &str| s.trim().parse::<usize>().map_err(|_| err("expected a positive integer"));
        match head.trim() {
            "cyclic" => {
                let n = number(body)?;
                if n == 0 {
                    return Err(err("order must be positive"));
                }
                GroupTable::cyclic(n)
            }
            "dihedral" => {
                let n = number(body)?;
                if n < 2 {
                    return Err(err("dihedral:<n> needs n >= 2"));
                }
                GroupTable::dihedral(n)
            }
            "perm" => {
                let mut gens = Vec::new();
                for part in body.split(';') {
                    let part = part.trim();
                    if part.is_empty() {
                        continue;
                    }
                    gens.push(Permutation::parse(part, None)?);
                }
                GroupTable::perm_closure(&gens, closure_cap)
            }
            "E" => {
                let (n, m) = body.split_once(',').ok_or_else(|| err("expected `E:<n>,<M-descriptor>`"))?;
                let m = GroupTable::from_descriptor_with_cap(m, closure_cap)?;
                GroupTable::semidirect_e(number(n)?, &m)
            }
            "prod" => {
                // The left factor may itself contain `x` only inside a nested
                // product, so try each split point in turn.
                let mut last_err = err("expected `prod:<desc>x<desc>`");
                for (pos, _) in body.match_indices('x') {
                    let (left, right) = (&body[..pos], &body[pos + 1..]);
                    match (
                        GroupTable::from_descriptor_with_cap(left, closure_cap),
                        GroupTable::from_descriptor_with_cap(right, closure_cap),
                    ) {
                        (Ok(g), Ok(h)) => return GroupTable::direct_product(&g, &h),
                        (Err(e), _) | (_, Err(e)) => last_err = e,
                    }
                }
                Err(last_err)
            }
            _ => Err(err("unknown group kind")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn descriptors_round_trip() {
        for d in [
            "cyclic:6",
            "dihedral:5",
            "perm:(1 2 3);(1 2 3 4 5)",
            "E:3,cyclic:7",
            "prod:cyclic:2xcyclic:6",
            "prod:prod:cyclic:2xcyclic:2xcyclic:3",
        ] {
            let g = GroupTable::from_descriptor(d).unwrap();
            assert_eq!(g.descriptor(), d);
            assert_eq!(GroupTable::from_descriptor(&g.descriptor()).unwrap(), g);
        }
    }

    #[test]
    fn orders() {
        assert_eq!(GroupTable::from_descriptor("perm:(1 2 3);(1 2 3 4 5)").unwrap().order(), 60);
        assert_eq!(GroupTable::from_descriptor("perm:").unwrap().order(), 1);
        assert_eq!(GroupTable::from_descriptor("E:4,cyclic:3").unwrap().order(), 12);
    }

    #[test]
    fn bad_descriptors() {
        for d in ["cyclic", "cyclic:0", "dihedral:1", "torus:3", "prod:cyclic:2", "E:5,cyclic:3", "perm:(1 2"] {
            assert!(GroupTable::from_descriptor(d).is_err(), "{d}");
        }
    }
}
