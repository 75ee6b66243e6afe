use std::fmt::Write as _;
use std::str::FromStr;

use super::{Graph, Part};
use crate::{Error, Result};

/// Largest vertex count expressible by the one- and four-byte graph6 size fields.
const GRAPH6_MAX: usize = 258_047;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFormat {
    Graph6,
    Dot,
    EdgeList,
}

impl FromStr for GraphFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "graph6" | "g6" => Ok(GraphFormat::Graph6),
            "dot" => Ok(GraphFormat::Dot),
            "edge-list" | "edges" => Ok(GraphFormat::EdgeList),
            other => Err(Error::parse(0, other, "expected graph6, dot or edge-list")),
        }
    }
}

impl GraphFormat {
    pub fn render(self, g: &Graph) -> Result<String> {
        match self {
            GraphFormat::Graph6 => to_graph6(g),
            GraphFormat::Dot => Ok(to_dot(g)),
            GraphFormat::EdgeList => Ok(to_edge_list(g)),
        }
    }
}

/// Standard graph6: size field, then the upper triangle column by column,
/// six bits per byte, each byte offset by 63.
pub fn to_graph6(g: &Graph) -> Result<String> {
    let n = g.vcount();
    if n > GRAPH6_MAX {
        return Err(Error::OversizeForFormat {
            vcount: n,
            format: "graph6",
        });
    }
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut nbits = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            nbits += 1;
            if nbits == 6 {
                out.push(acc + 63);
                acc = 0;
                nbits = 0;
            }
        }
    }
    if nbits > 0 {
        out.push((acc << (6 - nbits)) + 63);
    }
    Ok(String::from_utf8(out).expect("graph6 bytes are printable ASCII"))
}

pub fn from_graph6(text: &str) -> Result<Graph> {
    let text = text.trim();
    let text = text.strip_prefix(">>graph6<<").unwrap_or(text);
    let bytes = text.as_bytes();
    let bad = |pos: usize, msg: &str| Error::parse(pos, text, msg);
    if bytes.iter().any(|&b| !(63..=126).contains(&b)) {
        return Err(bad(0, "graph6 bytes must lie in 63..=126"));
    }
    let (n, mut pos) = match bytes.first() {
        None => return Err(bad(0, "empty graph6 string")),
        Some(126) => {
            if bytes.len() < 4 || bytes[1] == 126 {
                return Err(bad(0, "unsupported graph6 size field"));
            }
            let n = bytes[1..4].iter().fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
            (n, 4)
        }
        Some(&b) => ((b - 63) as usize, 1),
    };
    let needed = (n * n.saturating_sub(1) / 2).div_ceil(6);
    if bytes.len() - pos != needed {
        return Err(bad(pos, "graph6 body has the wrong length"));
    }
    let mut edges = Vec::new();
    let mut bit = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = bytes[pos + bit / 6] - 63;
            if byte >> (5 - bit % 6) & 1 == 1 {
                edges.push((i, j));
            }
            bit += 1;
        }
    }
    pos += needed;
    debug_assert_eq!(pos, bytes.len());
    Graph::from_edges(n, edges)
}

/// Graphviz DOT. Bi-Cayley parts are drawn as circles (part 1) and boxes (part 2).
pub fn to_dot(g: &Graph) -> String {
    let mut s = String::from("graph G {\n");
    for v in 0..g.vcount() {
        let shape = match g.part(v) {
            Some(Part::One) => ", shape=circle",
            Some(Part::Two) => ", shape=box",
            None => "",
        };
        let _ = writeln!(s, "  {v} [label=\"{}\"{shape}];", g.name(v).replace('"', "\\\""));
    }
    for (u, v) in g.edges() {
        let _ = writeln!(s, "  {u} -- {v};");
    }
    s.push_str("}\n");
    s
}

/// One `u v` line per edge (smaller endpoint first) in construction order,
/// without a trailing newline.
pub fn to_edge_list(g: &Graph) -> String {
    g.edges_in_insertion_order()
        .iter()
        .map(|(u, v)| format!("{u} {v}"))
        .collect::<Vec<_>>()
        .join("\n")
}

/// Parses whitespace-separated vertex pairs. Without `vcount`, the graph has
/// one vertex more than the largest index mentioned. Lines starting with `#`
/// are ignored.
pub fn parse_edge_list(text: &str, vcount: Option<usize>) -> Result<Graph> {
    let mut edges = Vec::new();
    let mut offset = 0;
    for line in text.lines() {
        let body = line.trim();
        if !body.is_empty() && !body.starts_with('#') {
            let nums: Vec<&str> = body.split_whitespace().collect();
            if nums.len() != 2 {
                return Err(Error::parse(offset, line, "expected two vertex indices"));
            }
            let parse = |t: &str| t.parse::<usize>().map_err(|_| Error::parse(offset, t, "expected a vertex index"));
            edges.push((parse(nums[0])?, parse(nums[1])?));
        }
        offset += line.len() + 1;
    }
    let n = vcount.unwrap_or_else(|| edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0));
    Graph::from_edges(n, edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[test]
    fn graph6_reference_strings() {
        // Strings produced by networkx's graph6 writer.
        assert_eq!(to_graph6(&cycle(4)).unwrap(), "Cl");
        assert_eq!(to_graph6(&cycle(5)).unwrap(), "Dhc");
        assert_eq!(to_graph6(&Graph::empty(1)).unwrap(), "@");
        assert_eq!(to_graph6(&Graph::empty(0)).unwrap(), "?");
        let k63 = Graph::from_edges(63, (0..63).flat_map(|j| (0..j).map(move |i| (i, j)))).unwrap();
        let s = to_graph6(&k63).unwrap();
        assert!(s.starts_with("~??~"));
        assert_eq!(from_graph6(&s).unwrap(), k63);
    }

    #[test]
    fn graph6_decode() {
        let g = from_graph6("Cl").unwrap();
        assert_eq!(g, cycle(4));
        assert!(from_graph6("C").is_err());
        assert!(from_graph6("").is_err());
    }

    #[test]
    fn edge_list_and_dot() {
        assert_eq!(to_edge_list(&cycle(5)), "0 1\n1 2\n2 3\n3 4\n0 4");
        let z5 = crate::group::GroupTable::cyclic(5).unwrap();
        let c5 = crate::graph::cayley_graph(&z5, &z5.set([1, 4])).unwrap();
        assert_eq!(to_edge_list(&c5), "0 1\n1 2\n2 3\n3 4\n0 4");
        assert_eq!(parse_edge_list("0 1\n1 2\n2 3\n3 4\n0 4", None).unwrap(), cycle(5));
        assert_eq!(parse_edge_list("# nothing", Some(3)).unwrap().vcount(), 3);
        assert!(parse_edge_list("0 1 2", None).is_err());
        let dot = to_dot(&cycle(3));
        assert!(dot.contains("0 -- 1;") && dot.starts_with("graph G {"));
    }
}
