//! Structural audits over a corpus of connection sets.
//!
//! Every instance is analysed independently; violations are data and come
//! back sorted by instance.

use std::fmt;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use super::{brute_stability, criterion_2pe, criterion_applies, embedded_h, involution, SringWitness};
use crate::cayley::{build_cayley, find_twins, graph_properties, ConnectionSet};
use crate::error::Result;
use crate::groups::{factorize, gcd, AbelianGroup, Subgroup};
use crate::par::Exec;
use crate::sring::{a_subgroups, coset_constancy_violation, is_generalized_wreath, lower_p, power_map, radical, SRing};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    /// Brute instability iff the class of `a` is not `{a}`; `H` and `Sa`
    /// are unions of classes; `|Aut(Γ x K2)| >= 2|Aut(Γ)|`.
    Equivalence,
    /// Odd `H`, class of `a` not `{a}`: the ring is an `H/L`-wreath product
    /// for some `L ≠ 1`.
    Wreath,
    /// Odd `H`: unstable instances have twins.
    Twins,
    /// `H ≅ Z_2n`, `n > 1` odd, class of `a` not `{a}`: `{a, ab}` is a class
    /// or `V = ∩ rad(X ∩ H_0a)` is non-trivial.
    PairOrRadical,
    /// `H ≅ Z_2n`, `n > 1` odd: the class `T` of `a` is `La`, `La ∪ Lab` or
    /// `Ma ∪ (M \ L)ab` with `1 ≤ L < M ≤ H_0`.
    ClassShape,
    /// `H ≅ Z_2p^e`: the criterion agrees with brute force.
    Criterion,
    /// Ring axioms, power-map and `X^[p]` closure, coset constancy.
    Axioms,
}

impl Check {
    pub const ALL: [Check; 7] = [
        Check::Equivalence,
        Check::Wreath,
        Check::Twins,
        Check::PairOrRadical,
        Check::ClassShape,
        Check::Criterion,
        Check::Axioms,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Check::Equivalence => "equivalence",
            Check::Wreath => "wreath",
            Check::Twins => "twins",
            Check::PairOrRadical => "pair_or_radical",
            Check::ClassShape => "class_shape",
            Check::Criterion => "criterion",
            Check::Axioms => "axioms",
        }
    }

    pub fn applies_to(&self, h: &AbelianGroup) -> bool {
        match self {
            Check::Equivalence | Check::Axioms => true,
            Check::Wreath | Check::Twins => h.order() % 2 == 1,
            Check::PairOrRadical | Check::ClassShape => twice_odd(h).is_some(),
            Check::Criterion => criterion_applies(h),
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct AuditViolation {
    pub group: String,
    pub set: Vec<usize>,
    pub check: Check,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceAudit {
    pub in_scope: bool,
    pub unstable: bool,
    /// Whether the class of `a` differs from `{a}`.
    pub a_moves: bool,
    pub violations: Vec<AuditViolation>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AuditOutcome {
    /// In-scope instances audited.
    pub instances: usize,
    pub unstable: usize,
    pub violations: Vec<AuditViolation>,
}

/// `n` for `H ≅ Z_2n` with `n > 1` odd.
fn twice_odd(h: &AbelianGroup) -> Option<usize> {
    let n = h.order() / 2;
    (h.is_cyclic() && h.order().is_multiple_of(2) && n % 2 == 1 && n > 1).then_some(n)
}

pub fn audit_instance(h: &AbelianGroup, s: &ConnectionSet, checks: &[Check]) -> Result<InstanceAudit> {
    let props = graph_properties(&build_cayley(h, s));
    if !props.connected || props.bipartite {
        return Ok(InstanceAudit { in_scope: false, unstable: true, a_moves: false, violations: Vec::new() });
    }
    let brute = brute_stability(h, s)?;
    let witness = brute.witness()?;
    let a_moves = !witness.a_is_fixed();
    let mut violations = Vec::new();
    let mut flag = |check: Check, detail: String| {
        violations.push(AuditViolation { group: h.to_string(), set: s.elements().to_vec(), check, detail });
    };
    for &check in checks.iter().filter(|c| c.applies_to(h)) {
        match check {
            Check::Equivalence => {
                if brute.stable == a_moves {
                    flag(check, format!("stable={} but class of a = {:?}", brute.stable, witness.orbit_of_a));
                }
                if brute.dc_aut_order < &brute.aut_order * 2u32 {
                    flag(check, format!("|Aut(dc)| = {} < 2 |Aut| = {}", brute.dc_aut_order, &brute.aut_order * 2u32));
                }
                let ring = &witness.ring;
                let sa = ring.group().set_from(&s.elements().iter().map(|x| 2 * x + 1).collect::<Vec<_>>())?;
                if !ring.is_a_set(&embedded_h(ring.group())) || !ring.is_a_set(&sa) {
                    flag(check, "H or Sa is not a union of classes".into());
                }
            }
            Check::Wreath => {
                if a_moves && !has_wreath_witness(&witness.ring)? {
                    flag(check, "no L ≠ 1 with an H/L-wreath decomposition".into());
                }
            }
            Check::Twins => {
                if !brute.stable && find_twins(&build_cayley(h, s)).is_none() {
                    flag(check, "unstable without twins".into());
                }
            }
            Check::PairOrRadical => {
                if a_moves {
                    let n = twice_odd(h).expect("applies_to");
                    if let Some(detail) = pair_or_radical(h, n, &witness)? {
                        flag(check, detail);
                    }
                }
            }
            Check::ClassShape => {
                let n = twice_odd(h).expect("applies_to");
                if let Some(detail) = class_shape(h, n, &witness)? {
                    flag(check, detail);
                }
            }
            Check::Criterion => {
                let c = criterion_2pe(h, s)?;
                if c.unstable() == brute.stable {
                    flag(check, format!("criterion unstable={} but brute stable={}", c.unstable(), brute.stable));
                }
            }
            Check::Axioms => {
                if let Some(detail) = axiom_violation(&witness.ring)? {
                    flag(check, detail);
                }
            }
        }
    }
    Ok(InstanceAudit { in_scope: true, unstable: !brute.stable, a_moves, violations })
}

/// Runs [`audit_instance`] over `sets`; out-of-scope sets are skipped.
pub fn audit_theorems(h: &AbelianGroup, sets: &[ConnectionSet], checks: &[Check], exec: &Exec) -> Result<AuditOutcome> {
    let results = exec.map(sets, |s| audit_instance(h, s, checks));
    let mut out = AuditOutcome::default();
    for r in results {
        let r = r?;
        if !r.in_scope {
            continue;
        }
        out.instances += 1;
        out.unstable += r.unstable as usize;
        out.violations.extend(r.violations);
    }
    out.violations.sort();
    Ok(out)
}

fn has_wreath_witness(ring: &SRing) -> Result<bool> {
    let g = ring.group();
    let h = Subgroup::from_set(g, &embedded_h(g))?;
    for l in a_subgroups(ring).all {
        if l.is_trivial() || !l.is_subgroup_of(&h) {
            continue;
        }
        if is_generalized_wreath(ring, &h, &l)?.holds {
            return Ok(true);
        }
    }
    Ok(false)
}

/// `H_0` of `H ≅ Z_2n` as indices of `H`.
fn h0_members(h: &AbelianGroup, n: usize) -> Vec<usize> {
    (0..h.order()).filter(|&x| h.mul(n as i64, x) == 0).collect()
}

fn pair_or_radical(h: &AbelianGroup, n: usize, w: &SringWitness) -> Result<Option<String>> {
    let ring = &w.ring;
    let g = ring.group();
    let b = involution(h)?;
    if w.orbit_of_a == [1, 2 * b + 1] {
        return Ok(None);
    }
    let mut h0a = g.empty_set();
    for x in h0_members(h, n) {
        h0a.insert(2 * x + 1);
    }
    let mut v = Subgroup::whole(g);
    for class in ring.classes() {
        let mut part = class.clone();
        part.intersect_with(&h0a);
        if part.is_clear() {
            continue;
        }
        v = v.intersect(g, &radical(g, &part)?);
    }
    Ok(v.is_trivial().then(|| format!("class of a = {:?} and V = 1", w.orbit_of_a)))
}

fn subgroup_of(h: &AbelianGroup, set: &FixedBitSet) -> Option<Subgroup> {
    set.contains(0).then(|| Subgroup::from_set(h, set).ok()).flatten()
}

fn class_shape(h: &AbelianGroup, n: usize, w: &SringWitness) -> Result<Option<String>> {
    let b = involution(h)?;
    let in_h0 = |x: usize| h.mul(n as i64, x) == 0;
    let mut ta = h.empty_set();
    let mut tab = h.empty_set();
    let mut stray = false;
    for &y in &w.orbit_of_a {
        if y % 2 == 0 {
            stray = true;
            continue;
        }
        let x = y / 2;
        if in_h0(x) {
            ta.insert(x);
        } else {
            tab.insert(h.sub(x, b));
        }
    }
    let fits = !stray
        && match subgroup_of(h, &ta) {
            None => false,
            Some(_) if tab.is_clear() || tab == ta => true,
            Some(m) => {
                let mut l = m.members().clone();
                l.difference_with(&tab);
                tab.is_subset(m.members()) && subgroup_of(h, &l).is_some_and(|l| l.order() < m.order())
            }
        };
    Ok((!fits).then(|| format!("class of a = {:?} has none of the three shapes", w.orbit_of_a)))
}

/// Ring axioms, power-map closure, `X^[p]` closure and coset constancy.
pub fn axiom_violation(ring: &SRing) -> Result<Option<String>> {
    let g = ring.group();
    if let Some(v) = ring.check() {
        return Ok(Some(format!("ring axiom {:?} fails on classes {:?}", v.axiom, v.classes)));
    }
    let order = g.order() as u64;
    let exp = g.exponent() as i64;
    for m in (2..exp).filter(|&m| gcd(m as u64, order) == 1) {
        for (i, c) in ring.classes().iter().enumerate() {
            let image = power_map(g, c, m);
            if ring.class_containing(image.minimum().expect("classes are non-empty")) != &image {
                return Ok(Some(format!("X^({m}) is not a class for class {i}")));
            }
        }
    }
    for (p, _) in factorize(order) {
        for (i, c) in ring.classes().iter().enumerate() {
            if !ring.is_a_set(&lower_p(g, c, p)?) {
                return Ok(Some(format!("X^[{p}] is not a union of classes for class {i}")));
            }
        }
    }
    if let Some((k, i)) = coset_constancy_violation(ring) {
        return Ok(Some(format!("coset counts vary for subgroup {:?} and class {i}", k.elements())));
    }
    Ok(None)
}
