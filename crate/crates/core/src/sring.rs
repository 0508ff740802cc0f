//! Schur rings over finite abelian groups, stored as partitions into basic
//! sets, and the operations on them: intersection, radicals, A-subgroups,
//! power maps, quotients, induced subrings and the two product tests.

use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::groups::{quotient_group, subgroup_generated_by_set, AbelianGroup, Section, Subgroup};
use crate::permgroup::{PermGroup, Permutation, UnionFind};

/// Which axiom a candidate partition breaks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axiom {
    /// `{0}` is not a class.
    Identity,
    /// The negative of a class is not a class.
    Inverse,
    /// Some structure coefficient is not constant on a class.
    Closure,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub axiom: Axiom,
    /// Class ids involved (`X`, `Y` for closure; `X` twice otherwise).
    pub classes: (usize, usize),
    /// The class of the product on which the coefficient varies.
    pub target: Option<usize>,
}

/// A Schur ring, or a candidate partition before verification.
#[derive(Clone, PartialEq, Eq)]
pub struct SRing {
    group: AbelianGroup,
    class_of: Vec<usize>,
    classes: Vec<FixedBitSet>,
}

impl SRing {
    /// Canonicalizes a partition of `g` without checking the S-ring axioms.
    pub fn from_partition(g: &AbelianGroup, parts: Vec<FixedBitSet>) -> Result<Self> {
        let n = g.order();
        let mut class_of = vec![usize::MAX; n];
        let mut parts: Vec<FixedBitSet> = parts;
        for p in &parts {
            if p.len() != n {
                return Err(Error::GroupMismatch);
            }
            if p.is_clear() {
                return Err(Error::NotPartition("empty class".into()));
            }
        }
        parts.sort_by_key(|p| p.minimum().unwrap());
        for (i, p) in parts.iter().enumerate() {
            for x in p.ones() {
                if class_of[x] != usize::MAX {
                    return Err(Error::NotPartition(format!("element {x} in two classes")));
                }
                class_of[x] = i;
            }
        }
        if let Some(x) = class_of.iter().position(|&c| c == usize::MAX) {
            return Err(Error::NotPartition(format!("element {x} not covered")));
        }
        Ok(SRing { group: g.clone(), class_of, classes: parts })
    }

    pub fn from_lists(g: &AbelianGroup, parts: &[Vec<usize>]) -> Result<Self> {
        let sets = parts.iter().map(|p| g.set_from(p)).collect::<Result<Vec<_>>>()?;
        Self::from_partition(g, sets)
    }

    /// Like [`SRing::from_partition`] but rejects partitions that are not
    /// S-rings.
    pub fn new(g: &AbelianGroup, parts: Vec<FixedBitSet>) -> Result<Self> {
        let a = Self::from_partition(g, parts)?;
        match a.check() {
            None => Ok(a),
            Some(v) => Err(Error::Precondition(format!("not an S-ring: {v:?}"))),
        }
    }

    /// All singletons.
    pub fn full_group_ring(g: &AbelianGroup) -> Self {
        let parts = g
            .elements()
            .map(|x| {
                let mut s = g.empty_set();
                s.insert(x);
                s
            })
            .collect();
        Self::from_partition(g, parts).expect("singletons partition the group")
    }

    /// `{0}` and everything else.
    pub fn rank_two(g: &AbelianGroup) -> Self {
        let mut zero = g.empty_set();
        zero.insert(0);
        let mut rest = g.empty_set();
        rest.insert_range(1..g.order());
        let parts = if g.order() == 1 { vec![zero] } else { vec![zero, rest] };
        Self::from_partition(g, parts).expect("two-class partition")
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn rank(&self) -> usize {
        self.classes.len()
    }

    pub fn classes(&self) -> &[FixedBitSet] {
        &self.classes
    }

    pub fn class(&self, i: usize) -> &FixedBitSet {
        &self.classes[i]
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    pub fn class_containing(&self, x: usize) -> &FixedBitSet {
        &self.classes[self.class_of[x]]
    }

    pub fn class_lists(&self) -> Vec<Vec<usize>> {
        self.classes.iter().map(|c| c.ones().collect()).collect()
    }

    /// Whether `set` is a union of classes.
    pub fn is_a_set(&self, set: &FixedBitSet) -> bool {
        set.ones().all(|x| self.classes[self.class_of[x]].is_subset(set))
    }

    pub fn is_a_subgroup(&self, sub: &Subgroup) -> bool {
        sub.parent_order() == self.group.order() && self.is_a_set(sub.members())
    }

    /// First axiom violation, if any.
    pub fn check(&self) -> Option<Violation> {
        let g = &self.group;
        let zero = self.class_of[0];
        if self.classes[zero].count_ones(..) != 1 {
            return Some(Violation { axiom: Axiom::Identity, classes: (zero, zero), target: None });
        }
        for (i, c) in self.classes.iter().enumerate() {
            let neg = g.negate_set(c);
            let j = self.class_of[neg.minimum().unwrap()];
            if self.classes[j] != neg {
                return Some(Violation { axiom: Axiom::Inverse, classes: (i, i), target: None });
            }
        }
        let lists = self.class_lists();
        let mut count = vec![0usize; g.order()];
        let mut coef = vec![usize::MAX; self.rank()];
        for (i, x) in lists.iter().enumerate() {
            for (j, y) in lists.iter().enumerate().skip(i) {
                count.iter_mut().for_each(|c| *c = 0);
                for &a in x {
                    for &b in y {
                        count[g.add(a, b)] += 1;
                    }
                }
                coef.iter_mut().for_each(|c| *c = usize::MAX);
                for z in g.elements() {
                    let k = self.class_of[z];
                    if coef[k] == usize::MAX {
                        coef[k] = count[z];
                    } else if coef[k] != count[z] {
                        return Some(Violation { axiom: Axiom::Closure, classes: (i, j), target: Some(k) });
                    }
                }
            }
        }
        None
    }

    /// One class per line, elements ascending, classes by least element.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for c in &self.classes {
            let line: Vec<String> = c.ones().map(|x| x.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }
}

impl fmt::Debug for SRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SRing<{}>{:?}", self.group, self.class_lists())
    }
}

/// Checks a candidate partition; `Ok(None)` means every axiom holds.
pub fn verify_sring(g: &AbelianGroup, parts: &[Vec<usize>]) -> Result<Option<Violation>> {
    Ok(SRing::from_lists(g, parts)?.check())
}

/// Right translation by `t` as a permutation of the group.
pub fn translation(g: &AbelianGroup, t: usize) -> Permutation {
    Permutation::from_images(g.elements().map(|x| g.add(x, t)).collect()).expect("translation is a bijection")
}

/// Generators of the right regular representation.
pub fn translations(g: &AbelianGroup) -> Vec<Permutation> {
    g.basis().into_iter().map(|t| translation(g, t)).collect()
}

/// The S-ring whose classes are the orbits of the stabilizer of 0 in `p`.
pub fn transitivity_module(g: &AbelianGroup, p: &PermGroup) -> Result<SRing> {
    if p.degree() != g.order() {
        return Err(Error::GroupMismatch);
    }
    if !translations(g).iter().all(|t| p.contains(t)) {
        return Err(Error::MissingTranslations);
    }
    let stab = p.point_stabilizer(0);
    let parts = stab.orbits().into_iter().map(|o| g.set_from(&o)).collect::<Result<Vec<_>>>()?;
    SRing::from_partition(g, parts)
}

/// The finest partition whose classes are unions of classes of both rings.
pub fn intersect_srings(a: &SRing, b: &SRing) -> Result<SRing> {
    if a.group != b.group {
        return Err(Error::GroupMismatch);
    }
    let g = &a.group;
    let mut uf = UnionFind::new(g.order());
    for c in a.classes.iter().chain(&b.classes) {
        let first = c.minimum().unwrap();
        for x in c.ones() {
            uf.union(first, x);
        }
    }
    let parts = uf.classes().iter().map(|c| g.set_from(c)).collect::<Result<Vec<_>>>()?;
    SRing::from_partition(g, parts)
}

/// `{h : X + h = X}`.
pub fn radical(g: &AbelianGroup, x: &FixedBitSet) -> Result<Subgroup> {
    let Some(first) = x.minimum() else {
        return Err(Error::EmptySet);
    };
    let mut set = g.empty_set();
    for y in x.ones() {
        let h = g.sub(y, first);
        if g.translate(x, h) == *x {
            set.insert(h);
        }
    }
    Subgroup::from_set(g, &set)
}

#[derive(Clone, Debug)]
pub struct ASubgroups {
    /// Sorted by order, then by members.
    pub all: Vec<Subgroup>,
    /// The largest A-subgroup of odd order.
    pub largest_odd: Subgroup,
    /// The least A-subgroup of even order, when the even ones meet in one.
    pub least_even: Option<Subgroup>,
}

/// All subgroups that are unions of classes.
pub fn a_subgroups(a: &SRing) -> ASubgroups {
    let g = &a.group;
    let mut all: Vec<Subgroup> = vec![Subgroup::trivial(g)];
    for c in &a.classes {
        let h = subgroup_generated_by_set(g, c);
        if !all.contains(&h) {
            all.push(h);
        }
    }
    let mut i = 0;
    while i < all.len() {
        for j in 0..i {
            for h in [all[i].join(g, &all[j]), all[i].intersect(g, &all[j])] {
                if !all.contains(&h) {
                    all.push(h);
                }
            }
        }
        i += 1;
    }
    all.retain(|h| a.is_a_subgroup(h));
    all.sort_by(|x, y| x.order().cmp(&y.order()).then_with(|| x.elements().cmp(y.elements())));
    let largest_odd = all.iter().filter(|h| h.order() % 2 == 1).fold(Subgroup::trivial(g), |acc, h| acc.join(g, h));
    let least_even = all
        .iter()
        .filter(|h| h.order() % 2 == 0)
        .cloned()
        .reduce(|acc, h| acc.intersect(g, &h))
        .filter(|q| q.order() % 2 == 0);
    ASubgroups { all, largest_odd, least_even }
}

/// `X^(m) = {m x : x in X}`.
pub fn power_map(g: &AbelianGroup, x: &FixedBitSet, m: i64) -> FixedBitSet {
    g.scale_set(x, m)
}

/// `X^[p] = {p x : x in X, |X ∩ (x + Ω)| ≢ 0 mod p}` with `Ω = {y : p y = 0}`.
pub fn lower_p(g: &AbelianGroup, x: &FixedBitSet, p: u64) -> Result<FixedBitSet> {
    if p < 2 || !(g.order() as u64).is_multiple_of(p) {
        return Err(Error::PrimeNotDivisor(p));
    }
    let omega: Vec<usize> = g.elements().filter(|&y| g.mul(p as i64, y) == 0).collect();
    let mut out = g.empty_set();
    for y in x.ones() {
        let hits = omega.iter().filter(|&&w| x.contains(g.add(y, w))).count();
        if !(hits as u64).is_multiple_of(p) {
            out.insert(g.mul(p as i64, y));
        }
    }
    Ok(out)
}

/// An S-ring over a section of the ambient group, with the section data
/// needed to move between the two.
#[derive(Clone, Debug)]
pub struct SectionRing {
    pub ring: SRing,
    pub section: Section,
}

impl SectionRing {
    /// Classes as sets of ambient representatives (`section.lift`).
    pub fn lifted_classes(&self) -> Vec<Vec<usize>> {
        self.ring
            .classes()
            .iter()
            .map(|c| {
                let mut v: Vec<usize> = c.ones().map(|q| self.section.lift[q]).collect();
                v.sort_unstable();
                v
            })
            .collect()
    }
}

/// `A_{G/L}`: classes `X/L` over `G/L`.
pub fn quotient_sring(a: &SRing, l: &Subgroup) -> Result<SectionRing> {
    if !a.is_a_subgroup(l) {
        return Err(Error::NotRingSubgroup);
    }
    let section = quotient_group(&a.group, l)?;
    let ring = project_classes(&section, a.classes.iter())?;
    Ok(SectionRing { ring, section })
}

/// `A_U`: the classes inside `U`, as an S-ring over `U`.
pub fn induced_subring(a: &SRing, u: &Subgroup) -> Result<SectionRing> {
    if !a.is_a_subgroup(u) {
        return Err(Error::NotRingSubgroup);
    }
    let section = Section::new(&a.group, u, &Subgroup::trivial(&a.group))?;
    let ring = project_classes(&section, a.classes.iter().filter(|c| c.is_subset(u.members())))?;
    Ok(SectionRing { ring, section })
}

fn project_classes<'a>(section: &Section, classes: impl Iterator<Item = &'a FixedBitSet>) -> Result<SRing> {
    let mut parts: Vec<FixedBitSet> = Vec::new();
    for c in classes {
        let p = section.project_set(c);
        if !parts.contains(&p) {
            parts.push(p);
        }
    }
    SRing::from_partition(&section.group, parts)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WreathCheck {
    pub holds: bool,
    /// `L ≠ 1` and `U ≠ G`.
    pub nontrivial: bool,
}

/// Whether every class outside `U` is a union of `L`-cosets.
pub fn is_generalized_wreath(a: &SRing, u: &Subgroup, l: &Subgroup) -> Result<WreathCheck> {
    if !a.is_a_subgroup(u) || !a.is_a_subgroup(l) {
        return Err(Error::NotRingSubgroup);
    }
    if !l.is_subgroup_of(u) {
        return Err(Error::Precondition("L is not contained in U".into()));
    }
    let g = &a.group;
    let holds = a
        .classes
        .iter()
        .filter(|c| !c.is_subset(u.members()))
        .all(|c| l.generators().iter().all(|&h| g.translate(c, h) == *c));
    Ok(WreathCheck { holds, nontrivial: !l.is_trivial() && !u.is_whole() })
}

/// Star-product test for `V` and `W`: classes inside `W \ V` are unions of
/// `(V ∩ W)`-cosets, and each class outside `V ∪ W` is a sumset `Y + Z` of a
/// class inside `V` and a class inside `W`.
pub fn is_star(a: &SRing, v: &Subgroup, w: &Subgroup) -> Result<bool> {
    if !a.is_a_subgroup(v) || !a.is_a_subgroup(w) {
        return Err(Error::NotRingSubgroup);
    }
    let g = &a.group;
    let vw = v.intersect(g, w);
    let in_v: Vec<&FixedBitSet> = a.classes.iter().filter(|c| c.is_subset(v.members())).collect();
    let in_w: Vec<&FixedBitSet> = a.classes.iter().filter(|c| c.is_subset(w.members())).collect();
    for c in &a.classes {
        let inside_v = c.is_subset(v.members());
        let inside_w = c.is_subset(w.members());
        if inside_w && !inside_v {
            if !vw.generators().iter().all(|&h| g.translate(c, h) == *c) {
                return Ok(false);
            }
        } else if !inside_v && !inside_w {
            let size = c.count_ones(..);
            let factors = in_v.iter().any(|y| {
                in_w.iter().any(|z| {
                    let (ny, nz) = (y.count_ones(..), z.count_ones(..));
                    ny * nz >= size && ny.max(nz) <= size && sumset(g, y, z) == *c
                })
            });
            if !factors {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub fn sumset(g: &AbelianGroup, x: &FixedBitSet, y: &FixedBitSet) -> FixedBitSet {
    let mut out = g.empty_set();
    for a in x.ones() {
        for b in y.ones() {
            out.insert(g.add(a, b));
        }
    }
    out
}

/// A pair `(A-subgroup, class)` where `|(K + x) ∩ X|` is not constant over
/// the cosets `K + x` meeting `X`.
pub fn coset_constancy_violation(a: &SRing) -> Option<(Subgroup, usize)> {
    let g = &a.group;
    for k in a_subgroups(a).all {
        for (i, c) in a.classes.iter().enumerate() {
            let mut seen: Option<usize> = None;
            for x in c.ones() {
                let hits = k.elements().iter().filter(|&&h| c.contains(g.add(x, h))).count();
                if *seen.get_or_insert(hits) != hits {
                    return Some((k.clone(), i));
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::{build_cayley, ConnectionSet};
    use crate::permgroup::automorphism_group;

    fn z(n: usize) -> AbelianGroup {
        AbelianGroup::cyclic(n).unwrap()
    }

    fn set(g: &AbelianGroup, xs: &[usize]) -> FixedBitSet {
        g.set_from(xs).unwrap()
    }

    fn ring(g: &AbelianGroup, parts: &[&[usize]]) -> SRing {
        let parts: Vec<Vec<usize>> = parts.iter().map(|p| p.to_vec()).collect();
        SRing::from_lists(g, &parts).unwrap()
    }

    fn c9_rank5() -> SRing {
        ring(&z(9), &[&[0], &[1, 8], &[2, 7], &[3, 6], &[4, 5]])
    }

    fn sub(g: &AbelianGroup, xs: &[usize]) -> Subgroup {
        Subgroup::from_set(g, &set(g, xs)).unwrap()
    }

    #[test]
    fn verify_examples() {
        let g = z(9);
        assert!(SRing::full_group_ring(&g).check().is_none());
        assert!(SRing::rank_two(&g).check().is_none());
        let g5 = z(5);
        let v = verify_sring(&g5, &[vec![0], vec![1, 2], vec![3, 4]]).unwrap().unwrap();
        // {1,2}·{1,2} = 2 + 2·3 + 4
        assert_eq!(v.axiom, Axiom::Closure);
        assert_eq!(v.classes, (1, 1));
        assert!(matches!(verify_sring(&g5, &[vec![0], vec![1, 2]]), Err(Error::NotPartition(_))));
    }

    #[test]
    fn transitivity_module_examples() {
        let g = z(9);
        let c9 = build_cayley(&g, &ConnectionSet::new(&g, &[1, 8]).unwrap());
        let a = transitivity_module(&g, &automorphism_group(&c9).unwrap()).unwrap();
        assert_eq!(a, c9_rank5());
        let regular = PermGroup::from_generators(9, &translations(&g));
        assert_eq!(transitivity_module(&g, &regular).unwrap(), SRing::full_group_ring(&g));
        let g18 = z(18);
        let c18 = build_cayley(&g18, &ConnectionSet::new(&g18, &[1, 17]).unwrap());
        let a = transitivity_module(&g18, &automorphism_group(&c18).unwrap()).unwrap();
        assert_eq!(a.rank(), 10);
        assert!(a.check().is_none());
        assert_eq!(a.class_lists()[9], vec![9]);
        let not_regular = PermGroup::from_generators(9, &[]);
        assert_eq!(transitivity_module(&g, &not_regular), Err(Error::MissingTranslations));
    }

    #[test]
    fn intersection_examples() {
        let g = z(9);
        let a = c9_rank5();
        assert_eq!(intersect_srings(&a, &a).unwrap(), a);
        assert_eq!(intersect_srings(&SRing::full_group_ring(&g), &a).unwrap(), a);
        let b = ring(&g, &[&[0], &[3, 6], &[1, 2, 4, 5, 7, 8]]);
        let c = intersect_srings(&a, &b).unwrap();
        assert_eq!(c, b);
        assert!(c.check().is_none());
        assert_eq!(intersect_srings(&a, &SRing::full_group_ring(&z(3))), Err(Error::GroupMismatch));
    }

    #[test]
    fn radical_examples() {
        let g = z(9);
        assert_eq!(radical(&g, &set(&g, &[1, 4, 7])).unwrap().elements(), &[0, 3, 6]);
        assert_eq!(radical(&g, &set(&g, &[0, 3, 6])).unwrap().elements(), &[0, 3, 6]);
        assert_eq!(radical(&g, &set(&g, &[1])).unwrap().elements(), &[0]);
        assert_eq!(radical(&g, &g.empty_set()), Err(Error::EmptySet));
    }

    #[test]
    fn a_subgroup_examples() {
        let g = z(9);
        let orders = |a: &SRing| a_subgroups(a).all.iter().map(Subgroup::order).collect::<Vec<_>>();
        assert_eq!(orders(&SRing::rank_two(&g)), vec![1, 9]);
        assert_eq!(orders(&c9_rank5()), vec![1, 3, 9]);
        let g18 = z(18);
        let full = a_subgroups(&SRing::full_group_ring(&g18));
        assert_eq!(full.all.len(), 6);
        assert_eq!(full.least_even.unwrap().elements(), &[0, 9]);
        assert_eq!(full.largest_odd.order(), 9);
        // oracle: filter every subgroup
        for a in [c9_rank5(), SRing::rank_two(&g), ring(&g, &[&[0], &[3, 6], &[1, 2, 4, 5, 7, 8]])] {
            let expect: Vec<Subgroup> = g.all_subgroups().into_iter().filter(|h| a.is_a_subgroup(h)).collect();
            assert_eq!(a_subgroups(&a).all, expect);
        }
    }

    #[test]
    fn power_and_lower_examples() {
        let g = z(9);
        assert_eq!(power_map(&g, &set(&g, &[1, 4, 7]), 2), set(&g, &[2, 5, 8]));
        assert_eq!(power_map(&g, &set(&g, &[1, 4, 7]), 1), set(&g, &[1, 4, 7]));
        let g18 = z(18);
        assert_eq!(power_map(&g18, &set(&g18, &[1, 17]), 5), set(&g18, &[5, 13]));
        assert_eq!(lower_p(&g, &set(&g, &[1]), 3).unwrap(), set(&g, &[3]));
        assert_eq!(lower_p(&g, &set(&g, &[1, 4, 7]), 3).unwrap(), g.empty_set());
        assert_eq!(lower_p(&g, &set(&g, &[3]), 3).unwrap(), set(&g, &[0]));
        assert_eq!(lower_p(&g, &set(&g, &[3]), 5), Err(Error::PrimeNotDivisor(5)));
    }

    #[test]
    fn quotient_and_induced_examples() {
        let g = z(9);
        let a = c9_rank5();
        let l = sub(&g, &[0, 3, 6]);
        let q = quotient_sring(&a, &l).unwrap();
        assert_eq!(q.ring.group().order(), 3);
        assert_eq!(q.ring.class_lists(), vec![vec![0], vec![1, 2]]);
        assert!(q.ring.check().is_none());
        let q1 = quotient_sring(&a, &Subgroup::trivial(&g)).unwrap();
        assert_eq!(q1.lifted_classes(), a.class_lists());
        let qf = quotient_sring(&SRing::full_group_ring(&g), &l).unwrap();
        assert_eq!(qf.ring, SRing::full_group_ring(qf.ring.group()));
        let ind = induced_subring(&a, &l).unwrap();
        assert_eq!(ind.lifted_classes(), vec![vec![0], vec![3, 6]]);
        assert_eq!(induced_subring(&a, &Subgroup::trivial(&g)).unwrap().ring.rank(), 1);
        assert_eq!(induced_subring(&a, &Subgroup::whole(&g)).unwrap().lifted_classes(), a.class_lists());
        let not_a = sub(&z(9), &[0, 3, 6]);
        assert!(quotient_sring(&SRing::rank_two(&g), &not_a).is_err());
    }

    #[test]
    fn wreath_examples() {
        let g = z(9);
        let l = sub(&g, &[0, 3, 6]);
        let a = ring(&g, &[&[0], &[3], &[6], &[1, 4, 7], &[2, 5, 8]]);
        assert!(a.check().is_none());
        let w = is_generalized_wreath(&a, &l, &l).unwrap();
        assert!(w.holds && w.nontrivial);
        let whole = Subgroup::whole(&g);
        assert!(is_generalized_wreath(&a, &whole, &l).unwrap().holds);
        assert!(!is_generalized_wreath(&c9_rank5(), &l, &l).unwrap().holds);
    }

    #[test]
    fn star_examples() {
        let g = z(18);
        let full = SRing::full_group_ring(&g);
        let v = sub(&g, &[0, 9]);
        let w = sub(&g, &(0..18).step_by(2).collect::<Vec<_>>());
        assert!(is_star(&full, &v, &w).unwrap());
        let whole = Subgroup::whole(&g);
        assert!(is_star(&full, &whole, &whole).unwrap());
        // rank two over Z9 is not a star product of its trivial subgroups
        let g9 = z(9);
        let t = Subgroup::trivial(&g9);
        assert!(!is_star(&SRing::rank_two(&g9), &t, &t).unwrap());
    }

    #[test]
    fn eq_constancy_on_examples() {
        assert!(coset_constancy_violation(&c9_rank5()).is_none());
        let g = z(9);
        assert!(coset_constancy_violation(&ring(&g, &[&[0], &[3], &[6], &[1, 4, 7], &[2, 5, 8]])).is_none());
    }
}
