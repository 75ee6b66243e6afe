//! Element and set literals.
//!
//! Elements are written as `1` or `e` (identity), `a<i>` / `a<i>b` in cyclic
//! and dihedral groups, residues in cyclic groups, cycle notation such as
//! `(1 2 3)(4 5)` in permutation groups, or `#<index>` in any group. Every
//! element also answers to its canonical literal, [`GroupTable::literal`].
//! A set literal is a comma-separated list of elements; `{}` is the empty set.

use super::{Element, ElemSet, GroupKind, GroupTable, Permutation};
use crate::{Error, Result};

impl GroupTable {
    /// Parses one element token. `position` is only used for error reporting.
    pub fn parse_element_at(&self, token: &str, position: usize) -> Result<Element> {
        let tok = token.trim();
        if let Some(x) = self.literals().iter().position(|l| l == tok) {
            return Ok(x);
        }
        let unknown = || Error::parse(position, tok, "unknown element");
        if let Some(idx) = tok.strip_prefix('#') {
            return match idx.parse::<usize>() {
                Ok(i) if i < self.order() => Ok(i),
                _ => Err(Error::parse(position, tok, "element index out of range")),
            };
        }
        if tok == "e" || tok == "1" {
            return Ok(0);
        }
        if tok.starts_with('(') {
            let perms = match self.permutation(0) {
                Some(p) => p.degree(),
                None => return Err(Error::parse(position, tok, "cycle notation needs a permutation group")),
            };
            let p = Permutation::parse(tok, Some(perms)).map_err(|_| unknown())?;
            return self
                .elements()
                .find(|&x| self.permutation(x) == Some(&p))
                .ok_or_else(|| Error::parse(position, tok, "permutation is not in the group"));
        }
        let norm: String = tok.chars().filter(|c| *c != '^' && !c.is_whitespace()).collect();
        if let Some(x) = self.literals().iter().position(|l| *l == norm) {
            return Ok(x);
        }
        match self.kind() {
            GroupKind::Cyclic(n) => {
                if let Some((i, false)) = power_form(&norm) {
                    return Ok(i % n);
                }
            }
            GroupKind::Dihedral(n) => {
                if let Some((i, refl)) = power_form(&norm) {
                    return Ok(i % n + if refl { *n } else { 0 });
                }
            }
            _ => {}
        }
        Err(unknown())
    }

    pub fn parse_element(&self, token: &str) -> Result<Element> {
        self.parse_element_at(token, 0)
    }

    /// Parses a comma-separated set literal.
    pub fn parse_set(&self, literal: &str) -> Result<ElemSet> {
        let mut text = literal.trim();
        let mut offset = literal.len() - literal.trim_start().len();
        if text.starts_with('{') && text.ends_with('}') {
            text = &text[1..text.len() - 1];
            offset += 1;
        }
        if text.trim().is_empty() {
            return Ok(self.empty_set());
        }
        let mut members = Vec::new();
        let mut depth = 0i32;
        let mut start = 0;
        for (i, c) in text.char_indices().chain(std::iter::once((text.len(), ','))) {
            match c {
                '(' => depth += 1,
                ')' => depth -= 1,
                ',' if depth == 0 => {
                    let token = &text[start..i];
                    if token.trim().is_empty() {
                        return Err(Error::parse(offset + start, token, "empty element"));
                    }
                    members.push(self.parse_element_at(token, offset + start)?);
                    start = i + 1;
                }
                _ => {}
            }
        }
        Ok(self.set(members))
    }

    /// The canonical literal for `s`: member literals in index order.
    pub fn format_set(&self, s: &ElemSet) -> String {
        if s.is_empty() {
            return "{}".to_string();
        }
        s.iter().map(|x| self.literal(x)).collect::<Vec<_>>().join(",")
    }

    /// Display form using element names, e.g. `{1, a^2, b}`.
    pub fn display_set(&self, s: &ElemSet) -> String {
        let names: Vec<&str> = s.iter().map(|x| self.name(x)).collect();
        format!("{{{}}}", names.join(", "))
    }
}

/// Splits `a<i>` / `a<i>b` / `b` into the exponent and a reflection flag.
fn power_form(s: &str) -> Option<(usize, bool)> {
    if s == "b" {
        return Some((0, true));
    }
    let rest = s.strip_prefix('a')?;
    let (digits, refl) = match rest.strip_suffix('b') {
        Some(d) => (d, true),
        None => (rest, false),
    };
    let i = if digits.is_empty() { 1 } else { digits.parse().ok()? };
    Some((i, refl))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dihedral_literals() {
        let d10 = GroupTable::dihedral(5).unwrap();
        let s = d10.parse_set("1,a,a2,b").unwrap();
        assert_eq!(s.members(), &[0, 1, 2, 5]);
        assert_eq!(d10.format_set(&s), "1,a,a2,b");
        assert_eq!(d10.parse_set("{e, a^2, a^2b, a7}").unwrap().members(), &[0, 2, 7]);
        assert_eq!(d10.display_set(&s), "{1, a, a^2, b}");
    }

    #[test]
    fn cyclic_residues() {
        let z6 = GroupTable::cyclic(6).unwrap();
        assert_eq!(z6.parse_set("0").unwrap().members(), &[0]);
        assert_eq!(z6.parse_set("1,a2,a^3,#5").unwrap().members(), &[1, 2, 3, 5]);
        assert_eq!(z6.parse_set("{}").unwrap().len(), 0);
        assert_eq!(z6.format_set(&z6.empty_set()), "{}");
    }

    #[test]
    fn permutation_literals() {
        let a5 = GroupTable::from_descriptor("perm:(1 2 3);(1 2 3 4 5)").unwrap();
        let s = a5.parse_set("(1 2 3),(1 2 3 4 5)").unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(a5.format_set(&s), "(1 2 3),(1 2 3 4 5)");
        assert!(a5.parse_set("(1 2)").is_err());
        assert_eq!(a5.parse_set("1").unwrap().members(), &[0]);
    }

    #[test]
    fn errors_carry_the_token() {
        let d8 = GroupTable::dihedral(4).unwrap();
        match d8.parse_set("1,q,b") {
            Err(Error::Parse { position, token, .. }) => {
                assert_eq!(token, "q");
                assert_eq!(position, 2);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(d8.parse_set("1,,b").is_err());
        assert!(d8.parse_set("#8").is_err());
    }

    #[test]
    fn product_literals() {
        let g = GroupTable::from_descriptor("prod:cyclic:2xcyclic:3").unwrap();
        let s = g.parse_set("0|1,1|2").unwrap();
        assert_eq!(g.format_set(&s), "0|1,1|2");
        assert_eq!(g.parse_set("e").unwrap().members(), &[0]);
    }
}
