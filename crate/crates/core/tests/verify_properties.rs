use bicayley::equiv::{subset_orbits, Action};
use bicayley::group::GroupContext;
use bicayley::verify::*;

fn ctx(d: &str) -> GroupContext {
    GroupContext::from_descriptor(d).unwrap()
}

#[test]
fn verdicts_are_sound() {
    let limits = Limits::default();
    for entry in small_group_battery(10) {
        let c = ctx(entry.descriptor);
        for action in [Action::Ci, Action::Bci] {
            let v = group_property(&c, action, None, &limits).unwrap();
            if v.holds {
                assert!(v.witness.is_none());
                assert_eq!(v.stats.orbits_examined, v.stats.orbit_count, "{}", entry.name);
                assert_eq!(v.stats.orbit_count, orbit_space_size(&c, action, None, &limits).unwrap());
            } else {
                assert!(v.reverify(&c), "{} {action}", entry.name);
            }
            if c.order() <= 6 {
                assert_eq!(group_property_raw(&c, action, None, &limits).unwrap(), v.holds);
            }
        }
    }
}

#[test]
fn bci_groups_are_ci_groups() {
    let limits = Limits::default();
    for entry in small_group_battery(10) {
        let c = ctx(entry.descriptor);
        if group_property(&c, Action::Bci, None, &limits).unwrap().holds {
            assert!(group_property(&c, Action::Ci, None, &limits).unwrap().holds, "{}", entry.name);
        }
    }
}

#[test]
fn graph_verdict_examples() {
    let limits = Limits::default();
    let d8 = ctx("dihedral:4");
    let v = is_bci_graph(&d8, &d8.parse_set("1,a2").unwrap(), &limits).unwrap();
    assert!(!v.holds);
    assert_eq!(v.witness.as_ref().unwrap().t_literal, "1,b");
    for d in ["dihedral:4", "cyclic:6", "dihedral:5"] {
        let c = ctx(d);
        assert!(is_bci_graph(&c, &c.full_set(), &limits).unwrap().holds);
        assert!(is_ci_graph(&c, &c.empty_set(), &limits).unwrap().holds);
    }
    let z5 = ctx("cyclic:5");
    assert!(is_bci_graph(&z5, &z5.set([0, 1]), &limits).unwrap().holds);
    assert!(is_ci_graph(&z5, &z5.set([1, 4]), &limits).unwrap().holds);
    let z8 = ctx("cyclic:8");
    assert!(is_ci_graph(&z8, &z8.set([1, 7]), &limits).unwrap().holds);
    assert!(is_ci_graph(&z8, &z8.set([1]), &limits).is_err());
}

#[test]
fn stabilizer_orders_avoid_large_primes() {
    let limits = Limits::default();
    for (d, p) in [("cyclic:6", 3), ("cyclic:10", 5), ("cyclic:14", 7), ("dihedral:5", 5)] {
        let r = stabilizer_prime_check(&ctx(d), p, &limits).unwrap();
        assert!(r.graphs_checked > 0);
        assert!(r.holds(), "{d}: {:?}", r.violations);
    }
}

#[test]
fn valency_p_structure_over_z2p() {
    let limits = Limits::default();
    for p in [3, 5] {
        let r = z2p_structure_check(p, &limits).unwrap();
        assert!(r.holds(), "p={p}: {:?}", r.violations());
        let flagged: Vec<&str> = r.entries.iter().filter(|e| e.divisible_by_p).map(|e| e.set.as_str()).collect();
        assert_eq!(flagged.len(), 1);
        // The only flagged orbit is {⟨g²⟩, ⟨g²⟩g}: it has size 2 and contains the evens.
        let e = r.entries.iter().find(|e| e.divisible_by_p).unwrap();
        assert_eq!(e.orbit_size, 2);
        let evens: Vec<String> = (0..p).map(|i| (2 * i).to_string()).collect();
        assert_eq!(e.set, evens.join(","));
    }
    assert!(z2p_structure_check(11, &limits).is_err());
}

#[test]
fn complement_duality_over_orbit_representatives() {
    let limits = Limits::default();
    for d in ["dihedral:4", "dihedral:5"] {
        let c = ctx(d);
        for k in 0..=c.order() {
            for s in subset_orbits(&c, k, Action::Bci).unwrap().reps {
                let r = complement_duality_check(&c, &s, &limits).unwrap();
                assert!(r.agrees(), "{d} {{{}}}", r.set);
            }
        }
    }
}

#[test]
fn characteristic_subgroups_of_bci_groups_are_bci() {
    let limits = Limits::default();
    let mut checked = 0;
    for entry in small_group_battery(12) {
        let c = ctx(entry.descriptor);
        let r = characteristic_inheritance_check(&c, &limits).unwrap();
        if r.group_is_bci {
            checked += 1;
            assert!(r.holds(), "{}: {:?}", entry.name, r.subgroups);
        }
    }
    assert!(checked >= 10);
}

#[test]
fn crosscheck_has_no_anomalies_on_bci_groups() {
    let limits = Limits::default();
    for d in ["cyclic:6", "cyclic:8", "dihedral:5"] {
        let r = bci_ci_crosscheck(&ctx(d), &limits).unwrap();
        assert!(r.anomalies.is_empty(), "{d}: {:?}", r.anomalies);
        assert_eq!(r.routes.recursion, 0);
    }
}
