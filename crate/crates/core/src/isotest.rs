//! Isomorphism of circulants of order `2p^e` by keys and generalized
//! multipliers, checked against graph search.

use fixedbitset::FixedBitSet;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cayley::{build_cayley, ConnectionSet, Graph};
use crate::corpus::{all_sets, atoms, set_from_mask};
use crate::error::{Error, Result};
use crate::keys::{
    key_of_set, multipliers_for_key, phi_map, GeneralizedMultiplier, PhiReading, PrimaryKey, TwicePrimePower,
};
use crate::par::Exec;
use crate::permgroup;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoResult {
    pub isomorphic: bool,
    /// First multiplier `m` in canonical order with `S^φ_m = S'`.
    pub witness: Option<GeneralizedMultiplier>,
    pub key_s: Option<PrimaryKey>,
    pub key_s2: Option<PrimaryKey>,
}

/// Decides `Cay(H, S) ≅ Cay(H, S')`: equal keys and a multiplier of that key
/// carrying `S` onto `S'`.
pub fn muzychuk_iso(h: &TwicePrimePower, s: &ConnectionSet, s2: &ConnectionSet) -> Result<IsoResult> {
    muzychuk_iso_with(h, s, s2, PhiReading::Crt)
}

pub fn muzychuk_iso_with(
    h: &TwicePrimePower,
    s: &ConnectionSet,
    s2: &ConnectionSet,
    reading: PhiReading,
) -> Result<IsoResult> {
    let n = h.order();
    if s.members().len() != n || s2.members().len() != n {
        return Err(Error::GroupMismatch);
    }
    if s.is_empty() || s2.is_empty() {
        // the empty set has no key; the graphs are edgeless
        let iso = s.len() == s2.len();
        return Ok(IsoResult {
            isomorphic: iso,
            witness: iso.then(|| GeneralizedMultiplier::identity(h.p, h.e)),
            key_s: None,
            key_s2: None,
        });
    }
    let k1 = key_of_set(h, s.members())?;
    let k2 = key_of_set(h, s2.members())?;
    let mut result = IsoResult { isomorphic: false, witness: None, key_s: Some(k1.clone()), key_s2: Some(k2.clone()) };
    if k1 != k2 || s.len() != s2.len() {
        return Ok(result);
    }
    for m in multipliers_for_key(h.p, h.e, &k1) {
        let phi = phi_map(h, &m, reading)?;
        if s.elements().iter().all(|&x| s2.contains(phi.apply(x))) {
            result.isomorphic = true;
            result.witness = Some(m);
            break;
        }
    }
    Ok(result)
}

/// `S^φ_m` as a set.
pub fn apply_multiplier(h: &TwicePrimePower, s: &FixedBitSet, m: &GeneralizedMultiplier) -> Result<FixedBitSet> {
    let phi = phi_map(h, m, PhiReading::Crt)?;
    let mut out = h.group.empty_set();
    for x in s.ones() {
        out.insert(phi.apply(x));
    }
    Ok(out)
}

/// An explicit isomorphism found by graph search, re-verified edge by edge.
pub fn brute_force_iso(g1: &Graph, g2: &Graph) -> Result<Option<Vec<usize>>> {
    let found = permgroup::brute_force_iso(g1, g2)?;
    if let Some(map) = &found {
        let ok = g1.edge_count() == g2.edge_count() && g1.edges().all(|(u, v)| g2.has_edge(map[u], map[v]));
        assert!(ok, "search returned a non-isomorphism");
    }
    Ok(found)
}

/// [`brute_force_iso`] on the two Cayley graphs.
pub fn oracle_iso(h: &TwicePrimePower, s: &ConnectionSet, s2: &ConnectionSet) -> Result<Option<Vec<usize>>> {
    brute_force_iso(&build_cayley(&h.group, s), &build_cayley(&h.group, s2))
}

/// A pair on which the key/multiplier test and graph search disagree.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct IsoDisagreement {
    pub set: Vec<usize>,
    pub set2: Vec<usize>,
    pub muzychuk: bool,
    pub search: bool,
}

/// Every ordered pair of connection sets of equal size, in mask order.
pub fn iso_pairs_exhaustive(h: &TwicePrimePower) -> Result<Vec<(ConnectionSet, ConnectionSet)>> {
    let sets = all_sets(&h.group)?;
    let mut pairs = Vec::new();
    for s in &sets {
        for s2 in sets.iter().filter(|s2| s2.len() == s.len()) {
            pairs.push((s.clone(), s2.clone()));
        }
    }
    Ok(pairs)
}

/// `k` seeded pairs, cycling through three kinds: a random set against a
/// random set of equal size, `(S, S^φ)` for a random multiplier fitting the
/// key of `S`, and `(S, S + b)` with `b ∉ S`.
pub fn iso_pairs_sampled(h: &TwicePrimePower, k: usize, seed: u64) -> Result<Vec<(ConnectionSet, ConnectionSet)>> {
    let g = &h.group;
    let atoms = atoms(g);
    let (pairs_idx, invol_idx): (Vec<usize>, Vec<usize>) = (0..atoms.len()).partition(|&i| atoms[i].len() == 2);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let b = h.b();
    let random_set = |rng: &mut ChaCha8Rng, npairs: Option<usize>, invol: Option<bool>| {
        let mut chosen: Vec<usize> = match npairs {
            Some(j) => pairs_idx.choose_multiple(rng, j).copied().collect(),
            None => pairs_idx.iter().copied().filter(|_| rng.gen_bool(0.5)).collect(),
        };
        let with_b = invol.unwrap_or_else(|| rng.gen_bool(0.5));
        if with_b {
            chosen.extend(&invol_idx);
        }
        let mask = chosen.iter().fold(0u64, |m, &i| m | 1 << i);
        set_from_mask(g, &atoms, mask)
    };
    let mut out = Vec::with_capacity(k);
    while out.len() < k {
        let kind = out.len() % 3;
        let s = random_set(&mut rng, None, (kind == 2).then_some(false));
        if s.is_empty() {
            continue;
        }
        let s2 = match kind {
            0 => {
                let j = s.elements().iter().filter(|&&x| g.neg(x) != x).count() / 2;
                random_set(&mut rng, Some(j), Some(s.contains(b)))
            }
            1 => {
                let key = key_of_set(h, s.members())?;
                let ms = multipliers_for_key(h.p, h.e, &key);
                let m = ms.choose(&mut rng).expect("the identity always fits");
                ConnectionSet::from_bitset(g, apply_multiplier(h, s.members(), m)?)?
            }
            _ => ConnectionSet::from_bitset(g, g.translate(s.members(), b))?,
        };
        out.push((s, s2));
    }
    Ok(out)
}

/// Runs both deciders on every pair; returns the disagreements, sorted.
pub fn audit_iso_pairs(
    h: &TwicePrimePower,
    pairs: &[(ConnectionSet, ConnectionSet)],
    reading: PhiReading,
    exec: &Exec,
) -> Result<Vec<IsoDisagreement>> {
    let results = exec.map(pairs, |(s, s2)| -> Result<Option<IsoDisagreement>> {
        let muzychuk = muzychuk_iso_with(h, s, s2, reading)?.isomorphic;
        let search = oracle_iso(h, s, s2)?.is_some();
        Ok((muzychuk != search).then(|| IsoDisagreement {
            set: s.elements().to_vec(),
            set2: s2.elements().to_vec(),
            muzychuk,
            search,
        }))
    });
    let mut out: Vec<IsoDisagreement> = results.into_iter().filter_map(|r| r.transpose()).collect::<Result<_>>()?;
    out.sort();
    Ok(out)
}
