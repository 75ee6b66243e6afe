use bicayley::graph::{bcay_decomposition, bicayley_graph, cayley_graph, Graph};
use bicayley::group::{GroupContext, GroupTable};
use bicayley::iso::{bci_isomorphism, IsoCertificate};
use bicayley::verify::small_group_battery;

fn battery(max_order: usize) -> Vec<GroupContext> {
    small_group_battery(max_order)
        .into_iter()
        .map(|g| GroupContext::from_descriptor(g.descriptor).unwrap())
        .collect()
}

/// Vertex counts per component, by breadth-first search written out here
/// rather than taken from the library.
fn bfs_component_count(g: &Graph) -> usize {
    let mut seen = vec![false; g.vcount()];
    let mut count = 0;
    for start in 0..g.vcount() {
        if seen[start] {
            continue;
        }
        count += 1;
        let mut queue = vec![start];
        seen[start] = true;
        while let Some(v) = queue.pop() {
            for &u in g.neighbors(v) {
                if !seen[u] {
                    seen[u] = true;
                    queue.push(u);
                }
            }
        }
    }
    count
}

#[test]
fn component_count_is_index_of_generated_subgroup() {
    // |components of BCay(G,S)| = |G| / |⟨SS^{-1}⟩| for every nonempty S.
    for ctx in battery(12) {
        let n = ctx.order();
        for mask in 1u128..(1 << n) {
            let s = ctx.set_from_mask(mask);
            let h = ctx.subgroup_generated(&ctx.product_set(&s, &ctx.inverse_set(&s)));
            let g = bicayley_graph(&ctx, &s);
            assert_eq!(bfs_component_count(&g), n / h.len(), "{} S={{{}}}", ctx.descriptor(), ctx.format_set(&s));
            let report = bcay_decomposition(&ctx, &s).unwrap();
            assert_eq!(report.component_count, n / h.len());
            assert!(report.component_sizes.iter().all(|&c| c == 2 * h.len()));
        }
    }
}

#[test]
fn bicayley_shape() {
    for ctx in battery(8) {
        let n = ctx.order();
        for mask in 0u128..(1 << n) {
            let s = ctx.set_from_mask(mask);
            let g = bicayley_graph(&ctx, &s);
            g.check_invariants().unwrap();
            assert_eq!(g.vcount(), 2 * n);
            assert_eq!(g.edge_count(), n * s.len());
            assert!((0..2 * n).all(|v| g.degree(v) == s.len()));
        }
    }
}

fn right_translation(ctx: &GroupContext, h: usize, bipartite: bool) -> IsoCertificate {
    let n = ctx.order();
    let copies = if bipartite { 2 } else { 1 };
    let mapping = (0..copies * n).map(|v| (v / n) * n + ctx.mul(v % n, h)).collect();
    IsoCertificate::new(mapping).unwrap()
}

#[test]
fn right_translations_are_automorphisms() {
    let descs = ["cyclic:12", "dihedral:5", "dihedral:6", "perm:(1 2 3);(1 2)(3 4)", "E:3,cyclic:7"];
    for d in descs {
        let ctx = GroupContext::from_descriptor(d).unwrap();
        let n = ctx.order();
        assert!(n <= 21);
        // A spread of connection sets, including asymmetric ones.
        for seed in 0..12u128 {
            let mask = (seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) >> 7) & ((1u128 << n) - 1);
            let s = ctx.set_from_mask(mask);
            let b = bicayley_graph(&ctx, &s);
            let sym = ctx.set(s.iter().filter(|&x| x != 0).chain(s.iter().filter(|&x| x != 0).map(|x| ctx.inv(x))));
            let c = cayley_graph(&ctx, &sym).unwrap();
            for h in ctx.elements() {
                assert!(right_translation(&ctx, h, true).verify(&b, &b));
                assert!(right_translation(&ctx, h, false).verify(&c, &c));
            }
            // Translations act transitively on Cay(G,S), hence it is vertex-transitive.
            let orbit: std::collections::BTreeSet<usize> =
                ctx.elements().map(|h| right_translation(&ctx, h, false).apply(0)).collect();
            assert_eq!(orbit.len(), n);
        }
    }
}

#[test]
fn bci_maps_are_isomorphisms() {
    // (x,1) ↦ (x^α,1), (y,2) ↦ (g·y^α,2) carries BCay(G,S) onto BCay(G,gS^α).
    for ctx in battery(12) {
        let n = ctx.order();
        let sets = [0b1011u128, 0b110_0101, (1 << n) - 2, 1]
            .map(|m| ctx.set_from_mask(m & ((1u128 << n) - 1)));
        for s in &sets {
            let from = bicayley_graph(&ctx, s);
            for alpha in ctx.auts().iter() {
                for g in ctx.elements() {
                    let t = ctx.translate(g, &ctx.apply_aut(alpha, s));
                    let cert = bci_isomorphism(&ctx, g, alpha);
                    assert!(cert.verify(&from, &bicayley_graph(&ctx, &t)), "{}", ctx.descriptor());
                }
            }
        }
    }
}

#[test]
fn cayley_examples() {
    let z8 = GroupTable::cyclic(8).unwrap();
    assert_eq!(cayley_graph(&z8, &z8.set([4])).unwrap().edge_count(), 4);
    let d10 = GroupContext::from_descriptor("dihedral:5").unwrap();
    let refl = d10.parse_set("b,ab,a2b,a3b,a4b").unwrap();
    let k55 = cayley_graph(&d10, &refl).unwrap();
    assert_eq!(k55.edge_count(), 25);
    assert!((0..5).all(|r| (5..10).all(|f| k55.has_edge(r, f))));
    assert!(cayley_graph(&z8, &z8.set([0, 4])).is_err());
    assert!(cayley_graph(&z8, &z8.set([1])).is_err());
}
