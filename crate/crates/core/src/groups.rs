//! Finite abelian groups presented as products of cyclic factors.
//!
//! Elements are canonical mixed-radix indices in `[0, order)`, the last factor
//! varying fastest. The identity is index 0. Coordinate vectors are derived
//! views only.

use std::fmt;
use std::str::FromStr;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

/// Default cap on the order of a constructed group.
pub const GROUP_SIZE_CAP: usize = 1 << 20;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    factors: Vec<usize>,
    strides: Vec<usize>,
    order: usize,
}

impl AbelianGroup {
    pub fn new(factors: &[usize]) -> Result<Self> {
        Self::with_cap(factors, GROUP_SIZE_CAP)
    }

    pub fn with_cap(factors: &[usize], cap: usize) -> Result<Self> {
        let mut order: usize = 1;
        for &f in factors {
            if f < 2 {
                return Err(Error::InvalidFactor(f));
            }
            order = order.checked_mul(f).filter(|&o| o <= cap).ok_or(Error::GroupTooLarge { cap })?;
        }
        let mut strides = vec![1; factors.len()];
        for j in (0..factors.len().saturating_sub(1)).rev() {
            strides[j] = strides[j + 1] * factors[j + 1];
        }
        Ok(AbelianGroup { factors: factors.to_vec(), strides, order })
    }

    /// The cyclic group `Z_n`.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 1 {
            return Ok(Self::trivial());
        }
        Self::new(&[n])
    }

    pub fn trivial() -> Self {
        AbelianGroup { factors: Vec::new(), strides: Vec::new(), order: 1 }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn factors(&self) -> &[usize] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn contains(&self, x: usize) -> bool {
        x < self.order
    }

    pub fn coords(&self, x: usize) -> Vec<usize> {
        self.factors.iter().zip(&self.strides).map(|(&f, &s)| (x / s) % f).collect()
    }

    pub fn index(&self, coords: &[usize]) -> usize {
        debug_assert_eq!(coords.len(), self.factors.len());
        coords.iter().zip(&self.factors).zip(&self.strides).map(|((&c, &f), &s)| (c % f) * s).sum()
    }

    pub fn add(&self, x: usize, y: usize) -> usize {
        let mut out = 0;
        for (&f, &s) in self.factors.iter().zip(&self.strides) {
            let c = ((x / s) % f + (y / s) % f) % f;
            out += c * s;
        }
        out
    }

    pub fn neg(&self, x: usize) -> usize {
        let mut out = 0;
        for (&f, &s) in self.factors.iter().zip(&self.strides) {
            let c = (x / s) % f;
            out += ((f - c) % f) * s;
        }
        out
    }

    pub fn sub(&self, x: usize, y: usize) -> usize {
        self.add(x, self.neg(y))
    }

    /// `k * x` for any integer `k`.
    pub fn mul(&self, k: i64, x: usize) -> usize {
        let mut out = 0;
        for (&f, &s) in self.factors.iter().zip(&self.strides) {
            let c = (x / s) % f;
            let v = (k.rem_euclid(f as i64) as u128 * c as u128 % f as u128) as usize;
            out += v * s;
        }
        out
    }

    /// Least `k >= 1` with `k * x = 0`.
    pub fn element_order(&self, x: usize) -> usize {
        self.factors
            .iter()
            .zip(&self.strides)
            .map(|(&f, &s)| f / gcd(((x / s) % f) as u64, f as u64) as usize)
            .fold(1, lcm_usize)
    }

    /// Exponent of the group (lcm of the factors).
    pub fn exponent(&self) -> usize {
        self.factors.iter().copied().fold(1, lcm_usize)
    }

    pub fn is_cyclic(&self) -> bool {
        self.exponent() == self.order
    }

    /// Smallest-index element of maximal order when the group is cyclic.
    pub fn cyclic_generator(&self) -> Option<usize> {
        if !self.is_cyclic() {
            return None;
        }
        (0..self.order).find(|&x| self.element_order(x) == self.order)
    }

    /// Generators `e_j` of the cyclic factors.
    pub fn basis(&self) -> Vec<usize> {
        self.strides.clone()
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn empty_set(&self) -> FixedBitSet {
        FixedBitSet::with_capacity(self.order)
    }

    pub fn set_from(&self, elems: &[usize]) -> Result<FixedBitSet> {
        let mut set = self.empty_set();
        for &x in elems {
            if x >= self.order {
                return Err(Error::ElementOutOfRange(x));
            }
            set.insert(x);
        }
        Ok(set)
    }

    /// `X + g`.
    pub fn translate(&self, set: &FixedBitSet, g: usize) -> FixedBitSet {
        let mut out = self.empty_set();
        for x in set.ones() {
            out.insert(self.add(x, g));
        }
        out
    }

    /// `{ -x : x in X }`.
    pub fn negate_set(&self, set: &FixedBitSet) -> FixedBitSet {
        let mut out = self.empty_set();
        for x in set.ones() {
            out.insert(self.neg(x));
        }
        out
    }

    /// `{ m x : x in X }`.
    pub fn scale_set(&self, set: &FixedBitSet, m: i64) -> FixedBitSet {
        let mut out = self.empty_set();
        for x in set.ones() {
            out.insert(self.mul(m, x));
        }
        out
    }

    /// Every subgroup, sorted by order then by member list.
    pub fn all_subgroups(&self) -> Vec<Subgroup> {
        let mut found: Vec<Subgroup> = vec![Subgroup::trivial(self)];
        let cyclic: Vec<Subgroup> = self.elements().map(|x| subgroup_generated(self, &[x])).collect();
        let mut frontier = found.clone();
        while let Some(h) = frontier.pop() {
            for c in &cyclic {
                if c.is_subgroup_of(&h) {
                    continue;
                }
                let joined = h.join(self, c);
                if !found.contains(&joined) {
                    found.push(joined.clone());
                    frontier.push(joined);
                }
            }
        }
        found.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.elements().cmp(b.elements())));
        found
    }
}

impl fmt::Debug for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "Z1");
        }
        let parts: Vec<String> = self.factors.iter().map(|n| format!("Z{n}")).collect();
        write!(f, "{}", parts.join("x"))
    }
}

impl FromStr for AbelianGroup {
    type Err = Error;

    /// Accepts `Z18`, `3x9`, `Z3xZ3` (case-insensitive).
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::BadGroupSpec(s.to_string());
        let lower = s.trim().to_ascii_lowercase();
        if lower.is_empty() {
            return Err(bad());
        }
        let mut factors = Vec::new();
        for part in lower.split('x') {
            let digits = part.trim().trim_start_matches('z');
            let n: usize = digits.parse().map_err(|_| bad())?;
            if n == 1 {
                continue;
            }
            factors.push(n);
        }
        AbelianGroup::new(&factors)
    }
}

/// A subgroup, stored with its full member bitset.
#[derive(Clone, Debug)]
pub struct Subgroup {
    parent_order: usize,
    members: FixedBitSet,
    elements: Vec<usize>,
    generators: Vec<usize>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.parent_order == other.parent_order && self.elements == other.elements
    }
}

impl Eq for Subgroup {}

impl std::hash::Hash for Subgroup {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.elements.hash(state);
    }
}

impl Subgroup {
    pub fn trivial(g: &AbelianGroup) -> Self {
        let mut members = g.empty_set();
        members.insert(0);
        Subgroup { parent_order: g.order(), members, elements: vec![0], generators: Vec::new() }
    }

    pub fn whole(g: &AbelianGroup) -> Self {
        let mut members = g.empty_set();
        members.insert_range(..);
        Subgroup { parent_order: g.order(), members, elements: g.elements().collect(), generators: g.basis() }
    }

    /// Validates that `set` is a subgroup of `g`.
    pub fn from_set(g: &AbelianGroup, set: &FixedBitSet) -> Result<Self> {
        if set.len() != g.order() || !set.contains(0) {
            return Err(Error::NotSubgroup);
        }
        for x in set.ones() {
            for y in set.ones() {
                if !set.contains(g.sub(x, y)) {
                    return Err(Error::NotSubgroup);
                }
            }
        }
        let elements: Vec<usize> = set.ones().collect();
        let generators = minimal_generators(g, &elements);
        Ok(Subgroup { parent_order: g.order(), members: set.clone(), elements, generators })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn parent_order(&self) -> usize {
        self.parent_order
    }

    pub fn contains(&self, x: usize) -> bool {
        x < self.parent_order && self.members.contains(x)
    }

    pub fn members(&self) -> &FixedBitSet {
        &self.members
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.elements.len() == self.parent_order
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn intersect(&self, g: &AbelianGroup, other: &Subgroup) -> Subgroup {
        let mut set = self.members.clone();
        set.intersect_with(&other.members);
        let elements: Vec<usize> = set.ones().collect();
        let generators = minimal_generators(g, &elements);
        Subgroup { parent_order: self.parent_order, members: set, elements, generators }
    }

    /// `<self ∪ other>`.
    pub fn join(&self, g: &AbelianGroup, other: &Subgroup) -> Subgroup {
        let gens: Vec<usize> = self.generators.iter().chain(&other.generators).copied().collect();
        subgroup_generated(g, &gens)
    }
}

fn minimal_generators(g: &AbelianGroup, elements: &[usize]) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut span = Subgroup::trivial(g);
    for &x in elements {
        if !span.contains(x) {
            gens.push(x);
            span = closure(g, &gens);
        }
    }
    gens
}

fn closure(g: &AbelianGroup, gens: &[usize]) -> Subgroup {
    let mut members = g.empty_set();
    members.insert(0);
    let mut stack = vec![0];
    while let Some(x) = stack.pop() {
        for &s in gens {
            let y = g.add(x, s);
            if !members.contains(y) {
                members.insert(y);
                stack.push(y);
            }
        }
    }
    let elements: Vec<usize> = members.ones().collect();
    Subgroup { parent_order: g.order(), members, elements, generators: gens.to_vec() }
}

/// `<X>`; the empty set generates the trivial subgroup.
pub fn subgroup_generated(g: &AbelianGroup, xs: &[usize]) -> Subgroup {
    let gens: Vec<usize> = xs.iter().copied().filter(|&x| x != 0).collect();
    let mut sub = closure(g, &gens);
    sub.generators = minimal_generators(g, &gens);
    sub
}

pub fn subgroup_generated_by_set(g: &AbelianGroup, set: &FixedBitSet) -> Subgroup {
    let xs: Vec<usize> = set.ones().collect();
    subgroup_generated(g, &xs)
}

/// The unique subgroup of order `d` of a cyclic group.
pub fn unique_subgroup_of_order(g: &AbelianGroup, d: usize) -> Result<Subgroup> {
    if !g.is_cyclic() {
        return Err(Error::NotCyclic);
    }
    if d == 0 || !g.order().is_multiple_of(d) {
        return Err(Error::NotDivisor { divisor: d, order: g.order() });
    }
    let mut set = g.empty_set();
    for x in g.elements() {
        if g.mul(d as i64, x) == 0 {
            set.insert(x);
        }
    }
    Subgroup::from_set(g, &set)
}

/// A subquotient `upper / lower` realized as a concrete [`AbelianGroup`].
///
/// `project[x]` is the index in `group` of the coset `x + lower`, for every
/// `x` in `upper` (and `usize::MAX` outside it). `lift[q]` is a fixed coset
/// representative.
#[derive(Clone, Debug)]
pub struct Section {
    pub group: AbelianGroup,
    pub project: Vec<usize>,
    pub lift: Vec<usize>,
}

impl Section {
    pub fn new(g: &AbelianGroup, upper: &Subgroup, lower: &Subgroup) -> Result<Self> {
        if !lower.is_subgroup_of(upper) {
            return Err(Error::NotSubgroup);
        }
        // Greedy basis: each pick has maximal order modulo the span so far and
        // meets that span trivially, so the span stays a direct summand.
        let mut span = lower.clone();
        let mut basis: Vec<(usize, usize)> = Vec::new();
        while span.order() < upper.order() {
            let mut best: Option<(usize, usize)> = None;
            for &h in upper.elements() {
                if span.contains(h) {
                    continue;
                }
                let ord_span = relative_order(g, h, &span);
                if best.is_some_and(|(_, o)| o >= ord_span) {
                    continue;
                }
                if relative_order(g, h, lower) == ord_span {
                    best = Some((h, ord_span));
                }
            }
            let (h, ord) = best.expect("direct summand complement always exists");
            basis.push((h, ord));
            span = span.join(g, &subgroup_generated(g, &[h]));
        }
        let factors: Vec<usize> = basis.iter().map(|&(_, o)| o).collect();
        let group = AbelianGroup::new(&factors)?;
        let mut project = vec![usize::MAX; g.order()];
        let mut lift = vec![0; group.order()];
        for q in group.elements() {
            let coords = group.coords(q);
            let mut rep = 0;
            for (&(h, _), &c) in basis.iter().zip(&coords) {
                rep = g.add(rep, g.mul(c as i64, h));
            }
            lift[q] = rep;
            for &l in lower.elements() {
                project[g.add(rep, l)] = q;
            }
        }
        Ok(Section { group, project, lift })
    }

    pub fn project_set(&self, set: &FixedBitSet) -> FixedBitSet {
        let mut out = self.group.empty_set();
        for x in set.ones() {
            out.insert(self.project[x]);
        }
        out
    }
}

fn relative_order(g: &AbelianGroup, h: usize, sub: &Subgroup) -> usize {
    let mut k = 1;
    let mut acc = h;
    while !sub.contains(acc) {
        acc = g.add(acc, h);
        k += 1;
    }
    k
}

/// `G / L` with its projection.
pub fn quotient_group(g: &AbelianGroup, l: &Subgroup) -> Result<Section> {
    if l.parent_order() != g.order() {
        return Err(Error::GroupMismatch);
    }
    Section::new(g, &Subgroup::whole(g), l)
}

/// Isomorphism of a cyclic group with `Z_n` through its smallest generator.
#[derive(Clone, Debug)]
pub struct CyclicView {
    pub n: usize,
    pub to_residue: Vec<usize>,
    pub from_residue: Vec<usize>,
}

impl CyclicView {
    pub fn new(g: &AbelianGroup) -> Result<Self> {
        let gen = g.cyclic_generator().ok_or(Error::NotCyclic)?;
        let n = g.order();
        let mut to_residue = vec![0; n];
        let mut from_residue = vec![0; n];
        let mut x = 0;
        for (r, slot) in from_residue.iter_mut().enumerate() {
            to_residue[x] = r;
            *slot = x;
            x = g.add(x, gen);
        }
        Ok(CyclicView { n, to_residue, from_residue })
    }
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn lcm_usize(a: usize, b: usize) -> usize {
    a / gcd(a as u64, b as u64) as usize * b
}

/// Multiplicative order of `j` modulo `i`.
pub fn mult_order(j: u64, i: u64) -> Result<u64> {
    if i == 0 || gcd(j, i) != 1 {
        return Err(Error::NotCoprime(j, i));
    }
    if i == 1 {
        return Ok(1);
    }
    let j = j % i;
    let mut acc = j;
    let mut k = 1;
    while acc != 1 {
        acc = (acc as u128 * j as u128 % i as u128) as u64;
        k += 1;
    }
    Ok(k)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorization as `(p, exponent)` pairs, ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// Decomposes `n = 2 p^e` with `p` an odd prime.
pub fn twice_odd_prime_power(n: usize) -> Option<(u64, u32)> {
    if !n.is_multiple_of(2) || n < 6 {
        return None;
    }
    match factorize((n / 2) as u64).as_slice() {
        [(p, e)] if *p > 2 => Some((*p, *e)),
        _ => None,
    }
}
