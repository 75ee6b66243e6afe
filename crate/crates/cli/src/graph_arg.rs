//! Graph specifications: `bi:<group>@<set>`, `cay:<group>@<set>`,
//! `g6:<graph6>`, or a path to a graph6 or edge-list file.

use std::path::Path;

use bicayley::graph::{bicayley_graph, cayley_graph, from_graph6, parse_edge_list, Graph};
use bicayley::group::GroupContext;
use bicayley::{Error, Result};

pub fn parse_graph_arg(arg: &str) -> Result<Graph> {
    if let Some(rest) = arg.strip_prefix("bi:") {
        let (ctx, set) = group_and_set(arg, rest)?;
        return Ok(bicayley_graph(&ctx, &set));
    }
    if let Some(rest) = arg.strip_prefix("cay:") {
        let (ctx, set) = group_and_set(arg, rest)?;
        return cayley_graph(&ctx, &set);
    }
    if let Some(g6) = arg.strip_prefix("g6:") {
        return from_graph6(g6);
    }
    let text = std::fs::read_to_string(Path::new(arg))?;
    let trimmed = text.trim();
    let is_graph6 = !trimmed.contains(char::is_whitespace) && !trimmed.is_empty();
    if is_graph6 {
        from_graph6(trimmed)
    } else {
        parse_edge_list(&text, None)
    }
}

fn group_and_set(arg: &str, rest: &str) -> Result<(GroupContext, bicayley::group::ElemSet)> {
    let (group, set) = rest.rsplit_once('@').ok_or_else(|| Error::Descriptor {
        descriptor: arg.to_string(),
        message: "expected <group>@<set>".into(),
    })?;
    let ctx = GroupContext::from_descriptor(group)?;
    let s = ctx.parse_set(set)?;
    Ok((ctx, s))
}
