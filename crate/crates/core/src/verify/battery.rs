/// One isomorphism class of small groups, with a constructor descriptor.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BatteryGroup {
    pub name: &'static str,
    pub descriptor: &'static str,
    pub order: usize,
}

const BATTERY: &[BatteryGroup] = &[
    BatteryGroup { name: "1", descriptor: "cyclic:1", order: 1 },
    BatteryGroup { name: "Z2", descriptor: "cyclic:2", order: 2 },
    BatteryGroup { name: "Z3", descriptor: "cyclic:3", order: 3 },
    BatteryGroup { name: "Z4", descriptor: "cyclic:4", order: 4 },
    BatteryGroup { name: "Z2^2", descriptor: "prod:cyclic:2xcyclic:2", order: 4 },
    BatteryGroup { name: "Z5", descriptor: "cyclic:5", order: 5 },
    BatteryGroup { name: "Z6", descriptor: "cyclic:6", order: 6 },
    BatteryGroup { name: "D6", descriptor: "dihedral:3", order: 6 },
    BatteryGroup { name: "Z7", descriptor: "cyclic:7", order: 7 },
    BatteryGroup { name: "Z8", descriptor: "cyclic:8", order: 8 },
    BatteryGroup { name: "Z2xZ4", descriptor: "prod:cyclic:2xcyclic:4", order: 8 },
    BatteryGroup { name: "Z2^3", descriptor: "prod:cyclic:2xprod:cyclic:2xcyclic:2", order: 8 },
    BatteryGroup { name: "D8", descriptor: "dihedral:4", order: 8 },
    BatteryGroup {
        name: "Q8",
        descriptor: "perm:(1 2 4 7)(3 6 8 5);(1 3 4 8)(2 5 7 6)",
        order: 8,
    },
    BatteryGroup { name: "Z9", descriptor: "cyclic:9", order: 9 },
    BatteryGroup { name: "Z3^2", descriptor: "prod:cyclic:3xcyclic:3", order: 9 },
    BatteryGroup { name: "Z10", descriptor: "cyclic:10", order: 10 },
    BatteryGroup { name: "D10", descriptor: "dihedral:5", order: 10 },
    BatteryGroup { name: "Z11", descriptor: "cyclic:11", order: 11 },
    BatteryGroup { name: "Z12", descriptor: "cyclic:12", order: 12 },
    BatteryGroup { name: "Z2xZ6", descriptor: "prod:cyclic:2xcyclic:6", order: 12 },
    BatteryGroup { name: "D12", descriptor: "dihedral:6", order: 12 },
    BatteryGroup { name: "A4", descriptor: "perm:(1 2 3);(1 2)(3 4)", order: 12 },
    BatteryGroup { name: "Dic12", descriptor: "E:4,cyclic:3", order: 12 },
];

/// One group per isomorphism class for every order up to `max_order` (at most 12).
pub fn small_group_battery(max_order: usize) -> Vec<BatteryGroup> {
    BATTERY.iter().copied().filter(|g| g.order <= max_order).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupTable;

    #[test]
    fn descriptors_build_with_the_stated_order() {
        for g in small_group_battery(12) {
            let t = GroupTable::from_descriptor(g.descriptor).unwrap();
            assert_eq!(t.order(), g.order, "{}", g.name);
        }
    }

    #[test]
    fn classes_are_distinct() {
        // Pairwise non-isomorphic within each order.
        let groups: Vec<(BatteryGroup, GroupTable)> = small_group_battery(12)
            .into_iter()
            .map(|g| (g, GroupTable::from_descriptor(g.descriptor).unwrap()))
            .collect();
        for (i, (a, ta)) in groups.iter().enumerate() {
            for (b, tb) in &groups[i + 1..] {
                if a.order == b.order {
                    assert!(ta.isomorphism_to(tb).is_none(), "{} ≅ {}", a.name, b.name);
                }
            }
        }
        // Known counts of groups of each order up to 12.
        let counts: Vec<usize> = (1..=12).map(|n| small_group_battery(n).len() - small_group_battery(n - 1).len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5]);
    }

    #[test]
    fn quaternion_structure() {
        let q8 = GroupTable::from_descriptor(BATTERY[13].descriptor).unwrap();
        assert!(!q8.is_abelian());
        assert_eq!(q8.elements().filter(|&x| q8.element_order(x) == 2).count(), 1);
        assert_eq!(q8.elements().filter(|&x| q8.element_order(x) == 4).count(), 6);
    }
}
