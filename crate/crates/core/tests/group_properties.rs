use proptest::prelude::*;

use bicayley::group::{GroupContext, GroupTable};
use bicayley::verify::small_group_battery;

fn all_tables() -> Vec<GroupTable> {
    let mut out: Vec<GroupTable> = small_group_battery(12)
        .into_iter()
        .map(|g| GroupTable::from_descriptor(g.descriptor).unwrap())
        .collect();
    for d in ["E:3,cyclic:7", "E:4,cyclic:5", "E:8,cyclic:3", "perm:(1 2 3);(1 2 3 4 5)", "dihedral:9"] {
        out.push(GroupTable::from_descriptor(d).unwrap());
    }
    out
}

/// Latin square, identity, inverses and associativity, checked directly on the rows.
fn assert_group_axioms(g: &GroupTable) {
    let n = g.order();
    let rows = g.rows();
    for x in 0..n {
        let mut row: Vec<usize> = rows[x].clone();
        row.sort_unstable();
        assert_eq!(row, (0..n).collect::<Vec<_>>());
        let mut col: Vec<usize> = (0..n).map(|y| rows[y][x]).collect();
        col.sort_unstable();
        assert_eq!(col, (0..n).collect::<Vec<_>>());
        assert_eq!(rows[0][x], x);
        assert_eq!(rows[x][0], x);
        assert_eq!(rows[x][g.inv(x)], 0);
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                assert_eq!(rows[rows[x][y]][z], rows[x][rows[y][z]]);
            }
        }
    }
}

#[test]
fn constructors_give_groups() {
    for g in all_tables() {
        assert_group_axioms(&g);
    }
}

#[test]
fn automorphism_groups_are_closed() {
    for g in all_tables().into_iter().filter(|g| g.order() <= 21) {
        let ctx = GroupContext::new(g).unwrap();
        let auts = ctx.auts();
        for a in auts.iter() {
            assert!(a.is_automorphism_of(&ctx));
            assert!(auts.contains(&a.inverse()));
            for b in auts.iter() {
                assert!(auts.contains(&a.then(b)));
            }
        }
    }
}

#[test]
fn a5_automorphisms() {
    let ctx = GroupContext::from_descriptor("perm:(1 2 3);(1 2 3 4 5)").unwrap();
    assert_eq!(ctx.order(), 60);
    assert_eq!(ctx.auts().order(), 120);
    // Each automorphism preserves every product.
    for a in ctx.auts().iter() {
        for x in ctx.elements() {
            for y in ctx.elements() {
                assert_eq!(a.apply(ctx.mul(x, y)), ctx.mul(a.apply(x), a.apply(y)));
            }
        }
    }
}

#[test]
fn e2_is_dihedral() {
    for n in [3, 5, 7, 15] {
        let e = GroupTable::from_descriptor(&format!("E:2,cyclic:{n}")).unwrap();
        let d = GroupTable::dihedral(n).unwrap();
        let map = e.isomorphism_to(&d).expect("isomorphic");
        for x in e.elements() {
            for y in e.elements() {
                assert_eq!(map[e.mul(x, y)], d.mul(map[x], map[y]));
            }
        }
    }
}

proptest! {
    #[test]
    fn generated_subgroups_are_idempotent_and_monotone(mask in 0u128..(1 << 12), extra in 0u128..(1 << 12)) {
        for desc in ["dihedral:6", "perm:(1 2 3);(1 2)(3 4)", "E:4,cyclic:3"] {
            let g = GroupTable::from_descriptor(desc).unwrap();
            let x = g.set_from_mask(mask);
            let y = g.set_from_mask(mask | extra);
            let hx = g.subgroup_generated(&x);
            prop_assert!(g.is_subgroup(&hx));
            prop_assert!(x.is_subset(&hx));
            prop_assert_eq!(&g.subgroup_generated(&hx), &hx);
            prop_assert!(hx.is_subset(&g.subgroup_generated(&y)));
        }
    }

    #[test]
    fn translations_and_automorphisms_preserve_size(mask in 0u128..(1 << 10), g in 0usize..10, a in 0usize..20) {
        let ctx = GroupContext::from_descriptor("dihedral:5").unwrap();
        let s = ctx.set_from_mask(mask);
        let alpha = &ctx.auts().elements()[a];
        prop_assert_eq!(ctx.translate(g, &ctx.apply_aut(alpha, &s)).len(), s.len());
    }

    #[test]
    fn set_literals_round_trip(mask in 0u128..(1 << 12)) {
        for desc in ["dihedral:6", "cyclic:12", "prod:cyclic:2xcyclic:6", "perm:(1 2 3);(1 2)(3 4)"] {
            let ctx = GroupContext::from_descriptor(desc).unwrap();
            let s = ctx.set_from_mask(mask);
            prop_assert_eq!(ctx.parse_set(&ctx.format_set(&s)).unwrap(), s);
        }
    }
}
