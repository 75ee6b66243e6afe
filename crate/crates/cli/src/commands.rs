use std::fmt::Write as _;

use serde_json::json;

use bicayley::atlas::{repro, run_atlas, AtlasJob, AtlasRecord, REPRO_CASES};
use bicayley::equiv::{bci_search, ci_equivalent, subset_orbits_with, Action, OrbitOptions};
use bicayley::graph::{bicayley_graph, cayley_graph, to_dot, to_edge_list, to_graph6, Graph};
use bicayley::group::{ElemSet, GroupContext};
use bicayley::iso::{are_isomorphic_with_budget, IsoOutcome};
use bicayley::spectra::{adjacency_spectrum, zero_multiplicity};
use bicayley::verify::{
    bci_ci_crosscheck, complement_duality_check, group_property, is_bci_graph, is_ci_graph, small_group_battery,
    Limits, Property, Verdict,
};
use bicayley::{Error, Result};

use crate::graph_arg::parse_graph_arg;
use crate::*;

pub fn run(cli: &Cli) -> Result<u8> {
    let limits = Limits {
        node_budget: cli.budget,
        ..Limits::default()
    };
    let records = cli.format == OutputFormat::Records;
    match &cli.command {
        Command::Group(a) => group(a, records),
        Command::Graph(GraphCommand::Build(a)) => graph_build(a),
        Command::Iso(a) => iso(a, &limits, records),
        Command::Equiv(a) => equiv(a, records),
        Command::Orbits(a) => orbits(a, &limits, records),
        Command::Spectrum(a) => spectrum(a, records),
        Command::Verify(v) => verify(v, &limits, records),
        Command::Repro(a) => repro_cmd(a, &limits, records),
        Command::Atlas(a) => atlas(a, &limits, records),
    }
}

fn group(a: &GroupArgs, records: bool) -> Result<u8> {
    let ctx = GroupContext::from_descriptor(&a.group)?;
    let elements: Vec<_> = ctx
        .elements()
        .map(|x| json!({ "name": ctx.name(x), "order": ctx.element_order(x) }))
        .collect();
    if records {
        let mut v = json!({
            "group": ctx.descriptor(),
            "order": ctx.order(),
            "abelian": ctx.is_abelian(),
            "exponent": ctx.exponent(),
            "center_order": ctx.center().len(),
            "aut_order": ctx.auts().order(),
            "elements": elements,
        });
        if a.table {
            v["table"] = json!(ctx.rows());
        }
        println!("{v}");
        return Ok(EXIT_OK);
    }
    println!("group {} (order {})", ctx.descriptor(), ctx.order());
    println!(
        "abelian: {}, exponent: {}, |Z(G)| = {}, |Aut(G)| = {}",
        ctx.is_abelian(),
        ctx.exponent(),
        ctx.center().len(),
        ctx.auts().order()
    );
    let listing: Vec<String> = ctx
        .elements()
        .map(|x| format!("{}[{}]", ctx.name(x), ctx.element_order(x)))
        .collect();
    println!("elements [order]: {}", listing.join(" "));
    if a.table {
        for row in ctx.rows() {
            let names: Vec<&str> = row.iter().map(|&x| ctx.name(x)).collect();
            println!("{}", names.join("\t"));
        }
    }
    Ok(EXIT_OK)
}

fn build(ctx: &GroupContext, set: &ElemSet, cay: bool) -> Result<Graph> {
    if cay {
        cayley_graph(ctx, set)
    } else {
        Ok(bicayley_graph(ctx, set))
    }
}

fn graph_build(a: &GraphBuildArgs) -> Result<u8> {
    let ctx = GroupContext::from_descriptor(&a.group)?;
    let set = ctx.parse_set(&a.set)?;
    let g = build(&ctx, &set, a.cay)?;
    let mut text = match a.format {
        GraphFormatArg::Graph6 => to_graph6(&g)?,
        GraphFormatArg::Dot => to_dot(&g),
        GraphFormatArg::EdgeList => to_edge_list(&g),
    };
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match &a.out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(EXIT_OK)
}

fn iso(a: &IsoArgs, limits: &Limits, records: bool) -> Result<u8> {
    let g1 = parse_graph_arg(&a.left)?;
    let g2 = parse_graph_arg(&a.right)?;
    let outcome = are_isomorphic_with_budget(&g1, &g2, limits.node_budget);
    let (label, code) = match &outcome {
        IsoOutcome::Isomorphic(_) => ("isomorphic", EXIT_OK),
        IsoOutcome::NotIsomorphic => ("not isomorphic", EXIT_FAIL),
        IsoOutcome::BudgetExceeded { .. } => ("budget exceeded", EXIT_CAP),
    };
    let cert = outcome.certificate();
    if let (Some(c), Some(path)) = (cert, &a.cert_out) {
        std::fs::write(path, c.to_text())?;
    }
    if records {
        println!(
            "{}",
            json!({ "outcome": label, "mapping": cert.map(|c| c.mapping().to_vec()) })
        );
    } else {
        println!("{label}");
        if let Some(c) = cert {
            println!("certificate: {}", c);
        }
        if let IsoOutcome::BudgetExceeded { budget, nodes } = outcome {
            println!("{nodes} search nodes used of budget {budget}");
        }
    }
    Ok(code)
}

fn equiv(a: &EquivArgs, records: bool) -> Result<u8> {
    let ctx = GroupContext::from_descriptor(&a.group)?;
    let s = ctx.parse_set(&a.left)?;
    let t = ctx.parse_set(&a.right)?;
    let (cert, examined) = match Action::from(a.action) {
        Action::Ci => (ci_equivalent(&ctx, &s, &t), ctx.auts().order() as u64),
        Action::Bci => {
            let r = bci_search(&ctx, &s, &t);
            (r.certificate, r.pairs_examined)
        }
    };
    if records {
        println!(
            "{}",
            json!({
                "equivalent": cert.is_some(),
                "certificate": cert.as_ref().map(|c| c.describe(&ctx)),
                "examined": examined,
            })
        );
    } else {
        match &cert {
            Some(c) => println!("equivalent: {}", c.describe(&ctx)),
            None => println!("not equivalent ({examined} candidates examined)"),
        }
    }
    Ok(if cert.is_some() { EXIT_OK } else { EXIT_FAIL })
}

fn orbits(a: &OrbitsArgs, limits: &Limits, records: bool) -> Result<u8> {
    let ctx = GroupContext::from_descriptor(&a.group)?;
    let opts = OrbitOptions {
        cayley_domain: a.cayley_domain,
        cap: limits.subset_cap,
    };
    let o = subset_orbits_with(&ctx, a.k, a.action.into(), opts)?;
    let literals: Vec<String> = o.reps.iter().map(|s| ctx.format_set(s)).collect();
    if let Some(path) = &a.out {
        let mut text = String::new();
        for l in &literals {
            text += l;
            text.push('\n');
        }
        std::fs::write(path, text)?;
    }
    if records {
        println!(
            "{}",
            json!({
                "group": ctx.descriptor(),
                "action": o.action,
                "k": o.k,
                "subsets": o.subsets,
                "reps": literals,
                "orbit_sizes": o.orbit_sizes,
            })
        );
    } else {
        println!(
            "{} {}-subsets of {} under {}: {} orbits",
            o.subsets,
            o.k,
            ctx.descriptor(),
            o.action,
            o.reps.len()
        );
        for (l, size) in literals.iter().zip(&o.orbit_sizes) {
            println!("{{{l}}}\t{size}");
        }
    }
    Ok(EXIT_OK)
}

fn spectrum(a: &SpectrumArgs, records: bool) -> Result<u8> {
    let ctx = GroupContext::from_descriptor(&a.group)?;
    let set = ctx.parse_set(&a.set)?;
    let g = build(&ctx, &set, a.cay)?;
    let sp = adjacency_spectrum(&g)?;
    let zero = zero_multiplicity(&g)?;
    // Non-integer eigenvalues grouped by value.
    let mut residual: Vec<(f64, usize)> = Vec::new();
    let integers: Vec<f64> = sp
        .integer_eigenvalues
        .iter()
        .flat_map(|&(v, m)| std::iter::repeat_n(v as f64, m))
        .collect();
    let mut used = vec![false; integers.len()];
    for &x in &sp.numeric {
        if let Some(i) = (0..integers.len()).find(|&i| !used[i] && (integers[i] - x).abs() < 1e-6) {
            used[i] = true;
            continue;
        }
        match residual.last_mut() {
            Some((v, m)) if (*v - x).abs() < 1e-6 => *m += 1,
            _ => residual.push((x, 1)),
        }
    }
    if records {
        println!(
            "{}",
            json!({
                "group": ctx.descriptor(),
                "set": ctx.format_set(&set),
                "integer_eigenvalues": sp.integer_eigenvalues,
                "non_integer": residual,
                "zero_multiplicity": zero,
                "char_poly": sp.char_poly.iter().map(ToString::to_string).collect::<Vec<_>>(),
            })
        );
        return Ok(EXIT_OK);
    }
    let mut out = String::new();
    match a.format {
        TableFormat::Table => {
            let _ = writeln!(out, "{:>14}  {:>5}  kind", "eigenvalue", "mult");
            for &(v, m) in &sp.integer_eigenvalues {
                let _ = writeln!(out, "{v:>14}  {m:>5}  exact");
            }
            for &(v, m) in &residual {
                let _ = writeln!(out, "{v:>14.9}  {m:>5}  numeric");
            }
            let _ = writeln!(out, "integer part: {}", sp.describe_integer_part());
            let _ = writeln!(out, "zero multiplicity (exact rank): {zero}");
        }
        TableFormat::Csv => {
            let _ = writeln!(out, "eigenvalue,multiplicity,kind");
            for &(v, m) in &sp.integer_eigenvalues {
                let _ = writeln!(out, "{v},{m},exact");
            }
            for &(v, m) in &residual {
                let _ = writeln!(out, "{v:.12},{m},numeric");
            }
        }
    }
    print!("{out}");
    Ok(EXIT_OK)
}

fn print_verdict(v: &Verdict, records: bool) {
    if records {
        println!("{}", AtlasRecord::from_verdict(v).to_line());
        return;
    }
    println!("{}", v.summary());
    if let Some(w) = &v.witness {
        println!(
            "  graphs isomorphic (certificate verified); {} equivalence candidates exhausted",
            w.pairs_examined
        );
    }
    println!(
        "  orbits examined {} of {}, subsets covered {}, iso calls {}, {} ms",
        v.stats.orbits_examined, v.stats.orbit_count, v.stats.subsets_covered, v.stats.iso_calls, v.stats.elapsed_ms
    );
}

fn verdict_code(v: &Verdict) -> u8 {
    if v.holds {
        EXIT_OK
    } else {
        EXIT_FAIL
    }
}

fn verify(v: &VerifyCommand, limits: &Limits, records: bool) -> Result<u8> {
    match v {
        VerifyCommand::Graph(a) => {
            let ctx = GroupContext::from_descriptor(&a.group)?;
            let s = ctx.parse_set(&a.set)?;
            let verdict = match Action::from(a.property) {
                Action::Bci => is_bci_graph(&ctx, &s, limits)?,
                Action::Ci => is_ci_graph(&ctx, &s, limits)?,
            };
            print_verdict(&verdict, records);
            Ok(verdict_code(&verdict))
        }
        VerifyCommand::Group(a) => {
            let ctx = GroupContext::from_descriptor(&a.group)?;
            let verdict = group_property(&ctx, a.property.into(), a.max_valency, limits)?;
            print_verdict(&verdict, records);
            Ok(verdict_code(&verdict))
        }
        VerifyCommand::Duality(a) => {
            let ctx = GroupContext::from_descriptor(&a.group)?;
            let s = ctx.parse_set(&a.set)?;
            let r = complement_duality_check(&ctx, &s, limits)?;
            if records {
                println!("{}", json!({ "report": r, "agrees": r.agrees() }));
            } else {
                println!(
                    "S={{{}}}: bci-graph {}; G∖S={{{}}}: bci-graph {}; agree: {}",
                    r.set,
                    r.set_holds,
                    r.complement,
                    r.complement_holds,
                    r.agrees()
                );
            }
            Ok(if r.agrees() { EXIT_OK } else { EXIT_FAIL })
        }
        VerifyCommand::Crosscheck(a) => {
            let ctx = GroupContext::from_descriptor(&a.group)?;
            let r = bci_ci_crosscheck(&ctx, limits)?;
            if records {
                println!("{}", serde_json::to_string(&r)?);
            } else {
                println!(
                    "{}: bci={}, {} symmetric sets, {} Cay-isomorphic pairs, {} with BCI certificates",
                    r.group, r.group_is_bci, r.sets, r.cay_isomorphic_pairs, r.bci_certified_pairs
                );
                println!(
                    "  extraction routes: direct {}, base case {}, recursion {}, fallback {}, failed {}",
                    r.routes.direct, r.routes.base_case, r.routes.recursion, r.routes.fallback, r.routes.failed
                );
                if let Some(m) = &r.sample_mismatch {
                    println!("  first recursion mismatch: {m}");
                }
                if !r.unextractable_pairs.is_empty() {
                    println!(
                        "  {} pairs with a BCI certificate but no automorphism (group is not BCI)",
                        r.unextractable_pairs.len()
                    );
                }
                println!("  anomalies: {}", r.anomalies.len());
                for an in &r.anomalies {
                    println!("    {an:?}");
                }
            }
            Ok(if r.anomalies.is_empty() { EXIT_OK } else { EXIT_FAIL })
        }
    }
}

fn repro_cmd(a: &ReproArgs, limits: &Limits, records: bool) -> Result<u8> {
    let cases: Vec<&str> = if a.case == "all" {
        REPRO_CASES.to_vec()
    } else {
        vec![a.case.as_str()]
    };
    let mut code = EXIT_OK;
    for case in cases {
        let report = repro(case, Some(a.p), limits)?;
        if records {
            println!("{}", serde_json::to_string(&report)?);
        } else {
            println!("{report}");
        }
        if !report.matches() {
            code = EXIT_FAIL;
        }
    }
    Ok(code)
}

fn atlas(a: &AtlasArgs, limits: &Limits, records: bool) -> Result<u8> {
    let mut descriptors = a.group.clone();
    if let Some(n) = a.max_order {
        if n > 12 {
            return Err(Error::Hypothesis("--max-order covers groups of order at most 12".into()));
        }
        descriptors.extend(small_group_battery(n).into_iter().map(|g| g.descriptor.to_string()));
    }
    if descriptors.is_empty() {
        return Err(Error::Hypothesis("give --group or --max-order".into()));
    }
    let property = match (Action::from(a.property), a.max_valency) {
        (Action::Ci, None) => Property::Ci,
        (Action::Ci, Some(_)) => Property::MCi,
        (Action::Bci, None) => Property::Bci,
        (Action::Bci, Some(_)) => Property::MBci,
    };
    let jobs: Vec<AtlasJob> = descriptors
        .into_iter()
        .map(|descriptor| AtlasJob {
            descriptor,
            property,
            valency: a.max_valency,
        })
        .collect();
    let summary = run_atlas(&jobs, limits, &a.out)?;
    let wanted: std::collections::HashSet<&str> = jobs.iter().map(|j| j.descriptor.as_str()).collect();
    let shown = summary
        .records
        .iter()
        .filter(|r| wanted.contains(r.group.as_str()) && r.property == property && r.valency == a.max_valency);
    if records {
        for r in shown {
            println!("{}", r.to_line());
        }
    } else {
        println!("{:<42} {:>5}  {:<6} {:<6} witness", "group", "order", "prop", "holds");
        for r in shown {
            let holds = match (r.holds, &r.error) {
                (Some(h), _) => h.to_string(),
                (None, Some(_)) => "cap".into(),
                (None, None) => "?".into(),
            };
            let witness = r
                .witness
                .as_ref()
                .map(|w| format!("{{{}}} / {{{}}}", w.s, w.t))
                .unwrap_or_default();
            println!("{:<42} {:>5}  {:<6} {:<6} {}", r.group, r.order, r.property, holds, witness);
        }
        println!(
            "{} computed, {} already recorded in {}",
            summary.computed,
            summary.skipped,
            a.out.display()
        );
    }
    Ok(EXIT_OK)
}
