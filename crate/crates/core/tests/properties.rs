use proptest::prelude::*;

use caylab::cayley::{build_cayley, find_twins, ConnectionSet};
use caylab::corpus::{atoms, in_scope, set_from_mask};
use caylab::groups::{unique_subgroup_of_order, AbelianGroup};
use caylab::stability::{analyze, brute_stability, criterion_2pe};

fn cyclic_set(n: usize, mask: u64) -> (AbelianGroup, ConnectionSet) {
    let g = AbelianGroup::cyclic(n).unwrap();
    let atoms = atoms(&g);
    let s = set_from_mask(&g, &atoms, mask & ((1 << atoms.len()) - 1));
    (g, s)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cover_order_at_least_doubles(n in prop::sample::select(vec![10usize, 14, 18, 22, 26, 50]), mask in any::<u64>()) {
        let (g, s) = cyclic_set(n, mask);
        prop_assume!(in_scope(&g, &s));
        let r = brute_stability(&g, &s).unwrap();
        prop_assert!(r.dc_aut_order >= &r.aut_order * 2u32);
        let report = analyze(&g, &s).unwrap();
        prop_assert!(report.agreement);
    }

    /// Twins always destabilize a connected non-bipartite graph.
    #[test]
    fn twins_imply_unstable(n in 5usize..30, mask in any::<u64>()) {
        let (g, s) = cyclic_set(n, mask);
        prop_assume!(in_scope(&g, &s));
        if find_twins(&build_cayley(&g, &s)).is_some() {
            prop_assert!(!brute_stability(&g, &s).unwrap().stable);
        }
    }

    /// Making `S ∩ H_0` a union of cosets of the order-p subgroup forces
    /// instability when `e > 1`.
    #[test]
    fn coset_unions_are_unstable(n in prop::sample::select(vec![18usize, 50, 54]), mask in any::<u64>()) {
        let (g, s) = cyclic_set(n, mask);
        let p = if n == 50 { 5 } else { 3 };
        let l = unique_subgroup_of_order(&g, p).unwrap();
        let mut elems: Vec<usize> = Vec::new();
        for &x in s.elements() {
            if x % 2 == 1 {
                elems.push(x);
            } else {
                elems.extend(l.elements().iter().map(|&y| (x + y) % n).filter(|&z| !l.contains(z)));
            }
        }
        elems.sort_unstable();
        elems.dedup();
        let t = ConnectionSet::new(&g, &elems).unwrap();
        prop_assume!(in_scope(&g, &t));
        prop_assert!(criterion_2pe(&g, &t).unwrap().cond1.holds);
        prop_assert!(!brute_stability(&g, &t).unwrap().stable);
    }
}
