//! S-systems over cyclic p-groups (p odd) and the S-rings they determine,
//! plus an exhaustive S-ring enumerator for very small groups.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::groups::{divisors, factorize, is_prime, AbelianGroup, CyclicView, GROUP_SIZE_CAP};
use crate::sring::SRing;

/// Largest group order accepted by [`brute_force_srings`].
pub const BRUTE_FORCE_CAP: usize = 10;

/// `(d_1, …, d_e; Π)` with `Π` an interval partition of `{1, …, e}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SSystem {
    pub p: u64,
    pub e: u32,
    pub d: Vec<u64>,
    /// Inclusive 1-based intervals in increasing order.
    pub intervals: Vec<(u32, u32)>,
}

impl SSystem {
    /// The system with every interval a singleton.
    pub fn discrete(p: u64, d: Vec<u64>) -> Self {
        let e = d.len() as u32;
        SSystem { p, e, d, intervals: (1..=e).map(|i| (i, i)).collect() }
    }

    fn is_singleton(&self, i: u32) -> bool {
        self.intervals.iter().any(|&(a, b)| a == i && b == i)
    }
}

impl fmt::Display for SSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d: Vec<String> = self.d.iter().map(u64::to_string).collect();
        let pi: Vec<String> = self
            .intervals
            .iter()
            .map(|&(a, b)| format!("{{{}}}", (a..=b).map(|i| i.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "({};{})", d.join(","), pi.join(""))
    }
}

fn p_part(n: u64, p: u64) -> u64 {
    let mut m = n;
    let mut part = 1;
    while m.is_multiple_of(p) {
        m /= p;
        part *= p;
    }
    part
}

fn pow(p: u64, k: u32) -> u64 {
    p.pow(k)
}

/// `None` when valid; otherwise the number of the failing condition, with 0
/// for malformed data (a `d_i` that is not a divisor, or a bad partition).
///
/// Conditions 1 to 3 are the classical ones. Condition 4 asks that a singleton `{i}`
/// directly after a merged interval has `(d_i)_p = p^(i-1)`; without it the
/// partition can fail closure (e.g. `(2,6,6;{1,2}{3})` over `Z27`).
pub fn validate_ssystem(s: &SSystem) -> Result<Option<u8>> {
    let p = s.p;
    if p.is_multiple_of(2) || !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    let e = s.e;
    if e == 0 || s.d.len() != e as usize {
        return Ok(Some(0));
    }
    let mut next = 1;
    for &(a, b) in &s.intervals {
        if a != next || b < a {
            return Ok(Some(0));
        }
        next = b + 1;
    }
    if next != e + 1 {
        return Ok(Some(0));
    }
    let full = |i: u32| pow(p, i - 1) * (p - 1);
    for i in 1..=e {
        let di = s.d[i as usize - 1];
        if di == 0 || full(i) % di != 0 {
            return Ok(Some(0));
        }
    }
    for &(a, b) in &s.intervals {
        if b > a && (a..=b).any(|i| s.d[i as usize - 1] != full(i)) {
            return Ok(Some(1));
        }
    }
    for i in 2..=e {
        let (prev, cur) = (s.d[i as usize - 2], s.d[i as usize - 1]);
        if p_part(prev, p) > p_part(cur, p) {
            return Ok(Some(2));
        }
    }
    for i in 2..=e {
        let (prev, cur) = (s.d[i as usize - 2], s.d[i as usize - 1]);
        let cp = p_part(cur, p);
        if cp < pow(p, i - 1) && prev / p_part(prev, p) != cur / cp {
            return Ok(Some(3));
        }
    }
    for w in s.intervals.windows(2) {
        let ((a, b), (c, d)) = (w[0], w[1]);
        if b > a && c == d && p_part(s.d[c as usize - 1], p) != pow(p, c - 1) {
            return Ok(Some(4));
        }
    }
    Ok(None)
}

/// Smallest primitive root modulo `p^i`.
pub fn primitive_root(p: u64, i: u32) -> u64 {
    let m = pow(p, i);
    let phi = pow(p, i - 1) * (p - 1);
    let prime_factors: Vec<u64> = crate::groups::factorize(phi).into_iter().map(|(q, _)| q).collect();
    (2..m)
        .find(|&g| crate::groups::gcd(g, m) == 1 && prime_factors.iter().all(|&q| mod_pow(g, phi / q, m) != 1))
        .expect("cyclic unit group has a generator")
}

pub(crate) fn mod_pow(base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    let mut b = base % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc
}

/// Elements of the subgroup of order `d` in `(Z/p^i)^*`.
pub fn unit_subgroup(p: u64, i: u32, d: u64) -> Vec<u64> {
    let m = pow(p, i);
    let phi = pow(p, i - 1) * (p - 1);
    let t = mod_pow(primitive_root(p, i), phi / d, m);
    let mut out = Vec::with_capacity(d as usize);
    let mut x = 1;
    for _ in 0..d {
        out.push(x);
        x = x * t % m;
    }
    out.sort_unstable();
    out
}

/// The partition `Δ` determined by `s`, over the cyclic group `g` of order
/// `p^e`.
pub fn build_ssystem_partition(g: &AbelianGroup, s: &SSystem) -> Result<SRing> {
    if let Some(c) = validate_ssystem(s)? {
        return Err(Error::InvalidSSystem(c));
    }
    let pe = pow(s.p, s.e);
    if g.order() as u64 != pe {
        return Err(Error::WrongOrder(g.order()));
    }
    let view = CyclicView::new(g)?;
    // residues of order p^i are the multiples of p^(e-i) not divisible by p^(e-i+1)
    let layer = |i: u32| -> Vec<u64> {
        let step = pow(s.p, s.e - i);
        (1..pow(s.p, i)).filter(|u| u % s.p != 0).map(|u| u * step).collect()
    };
    let mut parts: Vec<Vec<u64>> = vec![vec![0]];
    for &(a, b) in &s.intervals {
        if b > a {
            parts.push((a..=b).flat_map(layer).collect());
            continue;
        }
        let i = a;
        let k = unit_subgroup(s.p, i, s.d[i as usize - 1]);
        let mut seen = std::collections::HashSet::new();
        for x in layer(i) {
            if seen.contains(&x) {
                continue;
            }
            let orbit: Vec<u64> = k.iter().map(|&t| t * x % pe).collect();
            seen.extend(orbit.iter().copied());
            parts.push(orbit);
        }
    }
    let sets = parts
        .iter()
        .map(|p| g.set_from(&p.iter().map(|&r| view.from_residue[r as usize]).collect::<Vec<_>>()))
        .collect::<Result<Vec<_>>>()?;
    SRing::from_partition(g, sets)
}

fn compositions(e: u32) -> Vec<Vec<(u32, u32)>> {
    if e == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for last in 1..=e {
        for mut head in compositions(e - last) {
            head.push((e - last + 1, e));
            out.push(head);
        }
    }
    out.sort();
    out
}

/// Every valid S-system with respect to `p^e`, sorted.
pub fn enumerate_ssystems(p: u64, e: u32) -> Result<Vec<SSystem>> {
    if p.is_multiple_of(2) || !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    if e == 0 || p.checked_pow(e).is_none_or(|q| q > GROUP_SIZE_CAP as u64) {
        return Err(Error::SizeCap(format!("{p}^{e}")));
    }
    let choices: Vec<Vec<u64>> = (1..=e).map(|i| divisors(pow(p, i - 1) * (p - 1))).collect();
    fn fill(s: &mut SSystem, choices: &[Vec<u64>], level: usize, out: &mut Vec<SSystem>) -> Result<()> {
        if level == choices.len() {
            if validate_ssystem(s)?.is_none() {
                out.push(s.clone());
            }
            return Ok(());
        }
        let i = level as u32 + 1;
        let full = pow(s.p, i - 1) * (s.p - 1);
        let singleton = s.is_singleton(i);
        for &c in &choices[level] {
            if singleton || c == full {
                s.d[level] = c;
                fill(s, choices, level + 1, out)?;
            }
        }
        Ok(())
    }
    let mut out = Vec::new();
    for intervals in compositions(e) {
        let mut s = SSystem { p, e, d: vec![0; e as usize], intervals };
        fill(&mut s, &choices, 0, &mut out)?;
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Every S-ring over `g`, by exhaustive search over set partitions of the
/// non-identity elements. Sorted by class lists.
pub fn brute_force_srings(g: &AbelianGroup) -> Result<Vec<SRing>> {
    let n = g.order();
    if n > BRUTE_FORCE_CAP {
        return Err(Error::SizeCap(format!("|G| = {n} > {BRUTE_FORCE_CAP}")));
    }
    let rest: Vec<usize> = (1..n).collect();
    let mut label = vec![0usize; rest.len()];
    let mut found = Vec::new();
    fn walk(g: &AbelianGroup, rest: &[usize], label: &mut Vec<usize>, pos: usize, used: usize, out: &mut Vec<SRing>) {
        if pos == rest.len() {
            let mut parts: Vec<Vec<usize>> = vec![vec![0]];
            parts.extend((0..used).map(|_| Vec::new()));
            for (i, &x) in rest.iter().enumerate() {
                parts[label[i] + 1].push(x);
            }
            let ring = SRing::from_lists(g, &parts).expect("restricted growth strings give partitions");
            if ring.check().is_none() {
                out.push(ring);
            }
            return;
        }
        for c in 0..=used {
            label[pos] = c;
            // a class and its negative have the same size; prune once the
            // negative of a finished prefix cannot be matched
            if inverse_consistent(g, rest, label, pos) {
                walk(g, rest, label, pos + 1, used.max(c + 1), out);
            }
        }
    }
    walk(g, &rest, &mut label, 0, 0, &mut found);
    found.sort_by_key(|a| a.class_lists());
    Ok(found)
}

/// S-system partitions against the brute-force S-rings of `Z_{p^e}`.
#[derive(Clone, Debug)]
pub struct SystemComparison {
    pub brute: Vec<SRing>,
    pub systems: Vec<(SSystem, SRing)>,
    pub only_brute: Vec<Vec<Vec<usize>>>,
    pub only_systems: Vec<Vec<Vec<usize>>>,
}

impl SystemComparison {
    pub fn agrees(&self) -> bool {
        self.only_brute.is_empty() && self.only_systems.is_empty()
    }
}

/// `(p, e)` for a cyclic group of odd prime-power order.
pub fn odd_prime_power(g: &AbelianGroup) -> Option<(u64, u32)> {
    match factorize(g.order() as u64).as_slice() {
        [(p, e)] if *p % 2 == 1 && g.is_cyclic() => Some((*p, *e)),
        _ => None,
    }
}

pub fn compare_with_brute_force(g: &AbelianGroup) -> Result<SystemComparison> {
    let (p, e) = odd_prime_power(g).ok_or_else(|| Error::Precondition(format!("{g} is not a cyclic odd p-group")))?;
    let brute = brute_force_srings(g)?;
    let systems = enumerate_ssystems(p, e)?
        .into_iter()
        .map(|s| build_ssystem_partition(g, &s).map(|a| (s, a)))
        .collect::<Result<Vec<_>>>()?;
    let from_brute: BTreeSet<Vec<Vec<usize>>> = brute.iter().map(SRing::class_lists).collect();
    let from_systems: BTreeSet<Vec<Vec<usize>>> = systems.iter().map(|(_, a)| a.class_lists()).collect();
    Ok(SystemComparison {
        only_brute: from_brute.difference(&from_systems).cloned().collect(),
        only_systems: from_systems.difference(&from_brute).cloned().collect(),
        brute,
        systems,
    })
}

/// For labelled `x` and `y` with `-x`, `-y` also labelled: `x ~ y` iff `-x ~ -y`.
fn inverse_consistent(g: &AbelianGroup, rest: &[usize], label: &[usize], pos: usize) -> bool {
    let x = rest[pos];
    let nx = g.neg(x);
    let idx = |v: usize| v - 1;
    if idx(nx) > pos {
        return true;
    }
    (0..=pos).all(|j| {
        let y = rest[j];
        let ny = g.neg(y);
        if idx(ny) > pos {
            return true;
        }
        (label[pos] == label[j]) == (label[idx(nx)] == label[idx(ny)])
    })
}
