//! Enumeration and seeded sampling of connection sets.
//!
//! A set is a bitmask over the atoms of the group: inverse pairs `{x, -x}`
//! and involutions `{x}`, ordered by least element.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cayley::{build_cayley, graph_properties, ConnectionSet};
use crate::error::{Error, Result};
use crate::groups::{gcd, AbelianGroup};

/// Largest atom count handled by [`all_sets`].
pub const ENUMERATION_ATOM_CAP: usize = 24;
/// Largest atom count handled by [`sample_sets`].
pub const SAMPLING_ATOM_CAP: usize = 62;
/// Below this many masks, sampling shuffles the full mask range.
const SHUFFLE_LIMIT: u64 = 1 << 20;

pub fn atoms(g: &AbelianGroup) -> Vec<Vec<usize>> {
    (1..g.order())
        .filter_map(|x| {
            let y = g.neg(x);
            match x.cmp(&y) {
                std::cmp::Ordering::Less => Some(vec![x, y]),
                std::cmp::Ordering::Equal => Some(vec![x]),
                std::cmp::Ordering::Greater => None,
            }
        })
        .collect()
}

pub fn set_from_mask(g: &AbelianGroup, atoms: &[Vec<usize>], mask: u64) -> ConnectionSet {
    let mut elems: Vec<usize> = Vec::new();
    for (i, atom) in atoms.iter().enumerate() {
        if mask >> i & 1 == 1 {
            elems.extend(atom);
        }
    }
    ConnectionSet::new(g, &elems).expect("unions of atoms are connection sets")
}

/// Connected and non-bipartite.
pub fn in_scope(g: &AbelianGroup, s: &ConnectionSet) -> bool {
    let p = graph_properties(&build_cayley(g, s));
    p.connected && !p.bipartite
}

/// Every connection set, in mask order.
pub fn all_sets(g: &AbelianGroup) -> Result<Vec<ConnectionSet>> {
    let atoms = atoms(g);
    if atoms.len() > ENUMERATION_ATOM_CAP {
        return Err(Error::SizeCap(format!("{} atoms exceed the enumeration cap {ENUMERATION_ATOM_CAP}", atoms.len())));
    }
    Ok((0..1u64 << atoms.len()).map(|m| set_from_mask(g, &atoms, m)).collect())
}

/// Every connected non-bipartite connection set, in mask order.
pub fn connected_sets(g: &AbelianGroup) -> Result<Vec<ConnectionSet>> {
    Ok(all_sets(g)?.into_iter().filter(|s| in_scope(g, s)).collect())
}

/// `k` distinct connected non-bipartite sets drawn without replacement
/// from a seeded stream, returned in mask order. Fewer come back only when
/// the group has fewer.
pub fn sample_sets(g: &AbelianGroup, k: usize, seed: u64) -> Result<Vec<ConnectionSet>> {
    let atoms = atoms(g);
    if atoms.len() > SAMPLING_ATOM_CAP {
        return Err(Error::SizeCap(format!("{} atoms exceed the sampling cap {SAMPLING_ATOM_CAP}", atoms.len())));
    }
    let total = 1u64 << atoms.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut picked: Vec<u64> = Vec::with_capacity(k);
    let accept = |m: u64, picked: &mut Vec<u64>| {
        if in_scope(g, &set_from_mask(g, &atoms, m)) {
            picked.push(m);
        }
        picked.len() >= k
    };
    if total <= SHUFFLE_LIMIT {
        let mut masks: Vec<u64> = (0..total).collect();
        masks.shuffle(&mut rng);
        for m in masks {
            if accept(m, &mut picked) {
                break;
            }
        }
    } else {
        let mut seen = HashSet::new();
        while picked.len() < k && (seen.len() as u64) < total {
            let m = rng.gen_range(0..total);
            if seen.insert(m) && accept(m, &mut picked) {
                break;
            }
        }
    }
    picked.sort_unstable();
    Ok(picked.into_iter().map(|m| set_from_mask(g, &atoms, m)).collect())
}

/// Keeps the sets that are lexicographically least among their images
/// under `x -> mx`, `m` a unit modulo the exponent.
pub fn dedupe_by_units(g: &AbelianGroup, sets: Vec<ConnectionSet>) -> Vec<ConnectionSet> {
    let exp = g.exponent();
    let units: Vec<i64> = (2..exp).filter(|&m| gcd(m as u64, exp as u64) == 1).map(|m| m as i64).collect();
    sets.into_iter()
        .filter(|s| {
            units.iter().all(|&m| {
                let mut image: Vec<usize> = s.elements().iter().map(|&x| g.mul(m, x)).collect();
                image.sort_unstable();
                image.as_slice() >= s.elements()
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: usize) -> AbelianGroup {
        AbelianGroup::cyclic(n).unwrap()
    }

    #[test]
    fn atom_counts() {
        assert_eq!(atoms(&z(18)).len(), 9);
        assert_eq!(all_sets(&z(18)).unwrap().len(), 512);
        assert_eq!(all_sets(&z(10)).unwrap().len(), 32);
        assert_eq!(all_sets(&z(14)).unwrap().len(), 128);
        let g: AbelianGroup = "Z3xZ3".parse().unwrap();
        assert_eq!(all_sets(&g).unwrap().len(), 16);
    }

    #[test]
    fn scope_filter() {
        let g = z(6);
        let sets = connected_sets(&g).unwrap();
        assert!(sets.iter().all(|s| in_scope(&g, s)));
        let lists: Vec<&[usize]> = sets.iter().map(|s| s.elements()).collect();
        assert!(lists.contains(&[1, 2, 3, 4, 5].as_slice()));
        assert!(!lists.contains(&[1, 5].as_slice()));
    }

    #[test]
    fn sampling_is_seeded_and_distinct() {
        let g = z(54);
        let a = sample_sets(&g, 40, 7).unwrap();
        let b = sample_sets(&g, 40, 7).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 40);
        let distinct: HashSet<Vec<usize>> = a.iter().map(|s| s.elements().to_vec()).collect();
        assert_eq!(distinct.len(), 40);
        assert_ne!(sample_sets(&g, 40, 8).unwrap(), a);
        assert_eq!(sample_sets(&z(10), 1000, 1).unwrap().len(), connected_sets(&z(10)).unwrap().len());
    }

    #[test]
    fn dedupe_keeps_one_per_orbit() {
        let g = z(7);
        let kept = dedupe_by_units(&g, all_sets(&g).unwrap());
        let lists: Vec<&[usize]> = kept.iter().map(|s| s.elements()).collect();
        assert_eq!(lists, vec![&[][..], &[1, 6][..], &[1, 2, 5, 6][..], &[1, 2, 3, 4, 5, 6][..]]);
    }
}
