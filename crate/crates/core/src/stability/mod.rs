//! Stability of `Cay(H, S)`: brute-force ground truth, the S-ring witness
//! over `H x Z2`, and the closed-form criterion for cyclic `H` of order
//! `2p^e`.
//!
//! Elements of `G = H x Z2` are indexed as `2h + t`, so `a` is `1` and `H`
//! sits at the even indices.

pub mod audit;

use std::fmt;

use fixedbitset::FixedBitSet;
use num_bigint::BigUint;
use serde::{Serialize, Serializer};

use crate::cayley::{build_cayley, double_cover, graph_properties, ConnectionSet, Graph, GraphProperties};
use crate::error::{Error, Result};
use crate::groups::{unique_subgroup_of_order, AbelianGroup};
use crate::isotest::muzychuk_iso_with;
use crate::keys::{GeneralizedMultiplier, PhiReading, TwicePrimePower};
use crate::permgroup::{automorphism_group_with, PermGroup, SearchOptions};
use crate::sring::{radical, transitivity_module, translations, SRing};

pub const OUT_OF_SCOPE: &str = "out of scope (trivially unstable)";

/// Brute-force orders for a connected non-bipartite `Cay(H, S)`.
#[derive(Clone, Debug)]
pub struct BruteStability {
    pub cover: AbelianGroup,
    pub aut_order: BigUint,
    pub dc_aut_order: BigUint,
    pub stable: bool,
    /// `Aut(Cay(H x Z2, Sa))`, with `0` as first base point.
    pub dc_group: PermGroup,
}

impl BruteStability {
    pub fn witness(&self) -> Result<SringWitness> {
        let ring = transitivity_module(&self.cover, &self.dc_group)?;
        let mut orbit_of_a: Vec<usize> = ring.class_containing(1).ones().collect();
        orbit_of_a.sort_unstable();
        Ok(SringWitness { ring, orbit_of_a })
    }
}

/// The transitivity module of `Aut(Cay(H x Z2, Sa))` and the class of `a`.
#[derive(Clone, Debug)]
pub struct SringWitness {
    pub ring: SRing,
    /// Indices in `H x Z2`.
    pub orbit_of_a: Vec<usize>,
}

impl SringWitness {
    pub fn a_is_fixed(&self) -> bool {
        self.orbit_of_a == [1]
    }
}

fn scope(h: &AbelianGroup, s: &ConnectionSet) -> Result<(Graph, GraphProperties)> {
    if s.members().len() != h.order() {
        return Err(Error::GroupMismatch);
    }
    let graph = build_cayley(h, s);
    let props = graph_properties(&graph);
    Ok((graph, props))
}

fn in_scope(props: &GraphProperties) -> Result<()> {
    if !props.connected || props.bipartite {
        return Err(Error::OutOfScope(OUT_OF_SCOPE.into()));
    }
    Ok(())
}

pub fn brute_stability(h: &AbelianGroup, s: &ConnectionSet) -> Result<BruteStability> {
    let (graph, props) = scope(h, s)?;
    in_scope(&props)?;
    let seeds = translations(h);
    let opts = SearchOptions { seeds: &seeds, first_point: Some(0), ..Default::default() };
    let aut = automorphism_group_with(&graph, &opts)?;
    let (cover, _, dc) = double_cover(h, s);
    let seeds = translations(&cover);
    let opts = SearchOptions { seeds: &seeds, first_point: Some(0), ..Default::default() };
    let dc_aut = automorphism_group_with(&dc, &opts)?;
    let aut_order = aut.order();
    let dc_aut_order = dc_aut.order();
    let stable = dc_aut_order == &aut_order * 2u32;
    Ok(BruteStability { cover, aut_order, dc_aut_order, stable, dc_group: dc_aut.group })
}

pub fn sring_witness(h: &AbelianGroup, s: &ConnectionSet) -> Result<SringWitness> {
    brute_stability(h, s)?.witness()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cond1 {
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_h: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cond2 {
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "display_opt")]
    pub witness_multiplier: Option<GeneralizedMultiplier>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Criterion {
    pub applicable: bool,
    pub cond1: Cond1,
    pub cond2: Cond2,
}

impl Criterion {
    pub fn not_applicable() -> Self {
        Criterion {
            applicable: false,
            cond1: Cond1 { holds: false, witness_h: None },
            cond2: Cond2 { holds: false, witness_multiplier: None },
        }
    }

    pub fn unstable(&self) -> bool {
        self.cond1.holds || self.cond2.holds
    }
}

/// `S ∩ H_0` has a non-trivial radical (needs `e > 1`), or
/// `Cay(H, S) ≅ Cay(H, S + b)` with `b ∉ S`.
pub fn criterion_2pe(h: &AbelianGroup, s: &ConnectionSet) -> Result<Criterion> {
    criterion_2pe_with(h, s, PhiReading::Crt)
}

pub fn criterion_2pe_with(h: &AbelianGroup, s: &ConnectionSet, reading: PhiReading) -> Result<Criterion> {
    let ctx = TwicePrimePower::new(h)?;
    let (_, props) = scope(h, s)?;
    in_scope(&props)?;
    let mut s0 = h.empty_set();
    for &x in s.elements() {
        if ctx.in_h0(x) {
            s0.insert(x);
        }
    }
    let witness_h = if ctx.e < 2 {
        None
    } else if s0.is_clear() {
        (0..h.order()).find(|&x| x != 0 && ctx.in_h0(x))
    } else {
        radical(h, &s0)?.elements().iter().copied().filter(|&x| x != 0).min()
    };
    let cond1 = Cond1 { holds: witness_h.is_some(), witness_h };
    let b = ctx.b();
    let cond2 = if s.contains(b) {
        Cond2 { holds: false, witness_multiplier: None }
    } else {
        let shifted = ConnectionSet::from_bitset(h, h.translate(s.members(), b))?;
        let r = muzychuk_iso_with(&ctx, s, &shifted, reading)?;
        Cond2 { holds: r.isomorphic, witness_multiplier: r.witness }
    };
    Ok(Criterion { applicable: true, cond1, cond2 })
}

pub fn criterion_applies(h: &AbelianGroup) -> bool {
    h.is_cyclic() && TwicePrimePower::new(h).is_ok()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilityReport {
    pub group: String,
    pub set: Vec<usize>,
    pub connected: bool,
    pub bipartite: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scope: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "display_opt")]
    pub aut_order: Option<BigUint>,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "display_opt")]
    pub dc_aut_order: Option<BigUint>,
    pub stable: bool,
    /// Elements `h` of `H` with `ha` in the class of `a`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_orbit_of_a: Option<Vec<usize>>,
    pub criterion: Criterion,
    pub agreement: bool,
}

impl StabilityReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

/// Full report. Disconnected and bipartite inputs get a report marked out
/// of scope with `stable = false` and no orders.
pub fn analyze(h: &AbelianGroup, s: &ConnectionSet) -> Result<StabilityReport> {
    analyze_with(h, s, PhiReading::Crt)
}

pub fn analyze_with(h: &AbelianGroup, s: &ConnectionSet, reading: PhiReading) -> Result<StabilityReport> {
    let (_, props) = scope(h, s)?;
    let mut report = StabilityReport {
        group: h.to_string(),
        set: s.elements().to_vec(),
        connected: props.connected,
        bipartite: props.bipartite,
        scope: None,
        aut_order: None,
        dc_aut_order: None,
        stable: false,
        witness_orbit_of_a: None,
        criterion: Criterion::not_applicable(),
        agreement: true,
    };
    if in_scope(&props).is_err() {
        report.scope = Some(OUT_OF_SCOPE.into());
        return Ok(report);
    }
    let brute = brute_stability(h, s)?;
    let witness = brute.witness()?;
    report.witness_orbit_of_a = Some(witness.orbit_of_a.iter().map(|x| x / 2).collect());
    report.stable = brute.stable;
    report.aut_order = Some(brute.aut_order);
    report.dc_aut_order = Some(brute.dc_aut_order);
    if criterion_applies(h) {
        report.criterion = criterion_2pe_with(h, s, reading)?;
        report.agreement = report.criterion.unstable() != report.stable;
    }
    Ok(report)
}

/// `H` as a subgroup of `H x Z2` (the even indices).
pub fn embedded_h(cover: &AbelianGroup) -> FixedBitSet {
    let mut set = cover.empty_set();
    for x in (0..cover.order()).step_by(2) {
        set.insert(x);
    }
    set
}

/// The involution of a cyclic group of even order.
pub fn involution(h: &AbelianGroup) -> Result<usize> {
    let sub = unique_subgroup_of_order(h, 2)?;
    Ok(sub.elements().iter().copied().find(|&x| x != 0).expect("order 2"))
}

fn display_opt<T: fmt::Display, S: Serializer>(v: &Option<T>, ser: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(x) => ser.collect_str(x),
        None => ser.serialize_none(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: usize) -> AbelianGroup {
        AbelianGroup::cyclic(n).unwrap()
    }

    fn cs(g: &AbelianGroup, xs: &[usize]) -> ConnectionSet {
        ConnectionSet::new(g, xs).unwrap()
    }

    #[test]
    fn brute_examples() {
        let g = z(3);
        let r = brute_stability(&g, &cs(&g, &[1, 2])).unwrap();
        assert!(r.stable);
        assert_eq!((r.aut_order, r.dc_aut_order), (6u32.into(), 12u32.into()));
        let g = z(6);
        let r = brute_stability(&g, &cs(&g, &[1, 2, 3, 4, 5])).unwrap();
        assert!(r.stable);
        assert_eq!((r.aut_order, r.dc_aut_order), (720u32.into(), 1440u32.into()));
        let g = z(18);
        let r = brute_stability(&g, &cs(&g, &[2, 4, 8, 9, 10, 14, 16])).unwrap();
        assert!(!r.stable);
        assert!(r.dc_aut_order > &r.aut_order * 2u32);
    }

    #[test]
    fn scope_is_enforced() {
        let g = z(6);
        assert!(matches!(brute_stability(&g, &cs(&g, &[1, 5])), Err(Error::OutOfScope(_))));
        assert!(matches!(brute_stability(&g, &cs(&g, &[2, 4])), Err(Error::OutOfScope(_))));
        let r = analyze(&g, &cs(&g, &[2, 4])).unwrap();
        assert_eq!(r.scope.as_deref(), Some(OUT_OF_SCOPE));
        assert!(!r.stable && r.agreement);
    }

    #[test]
    fn witness_examples() {
        let g = z(3);
        assert!(sring_witness(&g, &cs(&g, &[1, 2])).unwrap().a_is_fixed());
        let g = z(9);
        let w = sring_witness(&g, &cs(&g, &[1, 2, 4, 5, 7, 8])).unwrap();
        assert!(!w.a_is_fixed());
        let h = embedded_h(w.ring.group());
        assert!(w.ring.is_a_set(&h));
        let g = z(18);
        assert!(!sring_witness(&g, &cs(&g, &[2, 4, 8, 9, 10, 14, 16])).unwrap().a_is_fixed());
    }

    #[test]
    fn criterion_examples() {
        let g = z(18);
        let c = criterion_2pe(&g, &cs(&g, &[2, 4, 8, 9, 10, 14, 16])).unwrap();
        assert_eq!(c.cond1, Cond1 { holds: true, witness_h: Some(6) });
        assert!(c.unstable());
        let g = z(6);
        let c = criterion_2pe(&g, &cs(&g, &[1, 2, 3, 4, 5])).unwrap();
        assert!(!c.cond1.holds && !c.cond2.holds);
        let g = z(10);
        let c = criterion_2pe(&g, &cs(&g, &[2, 4, 5, 6, 8])).unwrap();
        assert!(!c.unstable());
        assert!(matches!(criterion_2pe(&z(12), &cs(&z(12), &[1, 11])), Err(Error::WrongOrder(12))));
    }

    #[test]
    fn report_json() {
        let g = z(18);
        let r = analyze(&g, &cs(&g, &[2, 4, 8, 9, 10, 14, 16])).unwrap();
        let json = r.to_json();
        assert!(json.starts_with(
            r#"{"group":"Z18","set":[2,4,8,9,10,14,16],"connected":true,"bipartite":false,"aut_order":""#
        ));
        assert!(json.contains(r#""stable":false"#));
        assert!(json.contains(r#""cond1":{"holds":true,"witness_h":6}"#));
        assert!(json.ends_with(r#""agreement":true}"#));
    }
}
