//! Primary keys, key partitions and generalized multipliers for cyclic groups
//! of order `2p^e`.
//!
//! Elements of `H ≅ Z_{2p^e}` are handled as residues through a
//! [`CyclicView`]; `H_0` is the set of even residues and `b = p^e`.

use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::groups::{gcd, twice_odd_prime_power, AbelianGroup, CyclicView};
use crate::permgroup::Permutation;

/// A cyclic group of order `2p^e` together with its residue coordinates.
#[derive(Clone, Debug)]
pub struct TwicePrimePower {
    pub group: AbelianGroup,
    pub view: CyclicView,
    pub p: u64,
    pub e: u32,
}

impl TwicePrimePower {
    pub fn new(g: &AbelianGroup) -> Result<Self> {
        let (p, e) = twice_odd_prime_power(g.order()).ok_or(Error::WrongOrder(g.order()))?;
        let view = CyclicView::new(g)?;
        Ok(TwicePrimePower { group: g.clone(), view, p, e })
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    /// `p^e`.
    pub fn pe(&self) -> usize {
        self.p.pow(self.e) as usize
    }

    /// The involution `b`.
    pub fn b(&self) -> usize {
        self.view.from_residue[self.pe()]
    }

    pub fn residue(&self, x: usize) -> usize {
        self.view.to_residue[x]
    }

    pub fn element(&self, r: usize) -> usize {
        self.view.from_residue[r % self.order()]
    }

    /// Whether `x` lies in `H_0`, the subgroup of order `p^e`.
    pub fn in_h0(&self, x: usize) -> bool {
        self.residue(x).is_multiple_of(2)
    }

    /// `i` with `p^i` the p-part of the order of `x`.
    pub fn level(&self, x: usize) -> u32 {
        let mut o = self.group.element_order(x) as u64;
        let mut i = 0;
        while o.is_multiple_of(self.p) {
            o /= self.p;
            i += 1;
        }
        i
    }

    /// Residues of the subgroup `P_k` of order `p^k`.
    pub fn p_subgroup(&self, k: u32) -> Vec<usize> {
        let step = 2 * self.p.pow(self.e - k) as usize;
        (0..self.p.pow(k) as usize).map(|j| self.element(j * step)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimaryKey {
    pub p: u64,
    pub k: Vec<u32>,
}

impl PrimaryKey {
    pub fn new(p: u64, k: Vec<u32>) -> Result<Self> {
        let key = PrimaryKey { p, k };
        if !key.is_valid() {
            return Err(Error::Precondition(format!("{key} is not a primary key")));
        }
        Ok(key)
    }

    fn is_valid(&self) -> bool {
        !self.k.is_empty()
            && self.k.iter().enumerate().all(|(i, &k)| k as usize <= i)
            && self.k.windows(2).all(|w| w[0] <= w[1])
    }

    pub fn e(&self) -> u32 {
        self.k.len() as u32
    }

    pub fn join(&self, other: &PrimaryKey) -> PrimaryKey {
        PrimaryKey { p: self.p, k: self.k.iter().zip(&other.k).map(|(&a, &b)| a.max(b)).collect() }
    }

    pub fn meet(&self, other: &PrimaryKey) -> PrimaryKey {
        PrimaryKey { p: self.p, k: self.k.iter().zip(&other.k).map(|(&a, &b)| a.min(b)).collect() }
    }

    pub fn le(&self, other: &PrimaryKey) -> bool {
        self.k.iter().zip(&other.k).all(|(a, b)| a <= b)
    }
}

impl fmt::Display for PrimaryKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, self.k.iter())
    }
}

fn write_tuple<T: fmt::Display>(f: &mut fmt::Formatter<'_>, items: impl Iterator<Item = T>) -> fmt::Result {
    let parts: Vec<String> = items.map(|x| x.to_string()).collect();
    write!(f, "({})", parts.join(","))
}

/// Every primary key for `p^e`, in lexicographic order.
pub fn key_lattice(p: u64, e: u32) -> Vec<PrimaryKey> {
    let mut out: Vec<Vec<u32>> = vec![Vec::new()];
    for i in 0..e {
        out = out
            .into_iter()
            .flat_map(|k| {
                let lo = k.last().copied().unwrap_or(0);
                (lo..=i).map(move |v| {
                    let mut next = k.clone();
                    next.push(v);
                    next
                })
            })
            .collect();
    }
    out.into_iter().map(|k| PrimaryKey { p, k }).collect()
}

/// `Π(k)`: `{0}`, `{b}` and the cosets `P_{k_i} + x` for `x` at level `i`,
/// as a list of classes sorted by least element.
pub fn key_partition(h: &TwicePrimePower, key: &PrimaryKey) -> Result<Vec<Vec<usize>>> {
    if key.p != h.p || key.e() != h.e {
        return Err(Error::WrongOrder(h.order()));
    }
    let mut class_of = vec![usize::MAX; h.order()];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let g = &h.group;
    let subgroups: Vec<Vec<usize>> = (0..=h.e).map(|k| h.p_subgroup(k)).collect();
    for x in g.elements() {
        if class_of[x] != usize::MAX {
            continue;
        }
        let i = h.level(x);
        let members: Vec<usize> = if i == 0 {
            vec![x]
        } else {
            let mut c: Vec<usize> = subgroups[key.k[i as usize - 1] as usize].iter().map(|&y| g.add(x, y)).collect();
            c.sort_unstable();
            c
        };
        for &y in &members {
            class_of[y] = classes.len();
        }
        classes.push(members);
    }
    Ok(classes)
}

/// The greatest key `k` for which `s` is a union of `Π(k)`-classes.
pub fn key_of_set(h: &TwicePrimePower, s: &FixedBitSet) -> Result<PrimaryKey> {
    if s.is_clear() {
        return Err(Error::EmptySet);
    }
    let g = &h.group;
    let e = h.e as usize;
    let mut c = vec![0u32; e];
    for i in 1..=e {
        let slice: Vec<usize> = s.ones().filter(|&x| h.level(x) as usize == i).collect();
        let mut best = 0;
        for k in 1..i as u32 {
            let gen = h.p_subgroup(k).into_iter().find(|&y| g.element_order(y) == h.p.pow(k) as usize);
            let closed = gen.is_none_or(|y| slice.iter().all(|&x| s.contains(g.add(x, y))));
            if !closed {
                break;
            }
            best = k;
        }
        c[i - 1] = best;
    }
    let mut k = c.clone();
    for i in (0..e.saturating_sub(1)).rev() {
        k[i] = k[i].min(k[i + 1]);
    }
    Ok(PrimaryKey { p: h.p, k })
}

/// A generalized multiplier `(m_1, …, m_e)`; only `m_i mod p^i` matters.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GeneralizedMultiplier {
    pub p: u64,
    pub m: Vec<u64>,
}

impl GeneralizedMultiplier {
    pub fn new(p: u64, m: Vec<u64>) -> Result<Self> {
        if let Some(&bad) = m.iter().find(|&&x| x == 0 || gcd(x, p) != 1) {
            return Err(Error::NotCoprime(bad, p));
        }
        Ok(GeneralizedMultiplier { p, m })
    }

    pub fn identity(p: u64, e: u32) -> Self {
        GeneralizedMultiplier { p, m: vec![1; e as usize] }
    }

    pub fn e(&self) -> u32 {
        self.m.len() as u32
    }

    /// `m_i mod p^i`.
    pub fn effective(&self) -> Vec<u64> {
        self.m.iter().enumerate().map(|(i, &x)| x % self.p.pow(i as u32 + 1)).collect()
    }

    /// Entries replaced by the odd representative of `m_i mod p^i` in `[1, 2p^i)`.
    pub fn odd_representatives(&self) -> GeneralizedMultiplier {
        let m = self
            .effective()
            .into_iter()
            .enumerate()
            .map(|(i, r)| if r % 2 == 1 { r } else { r + self.p.pow(i as u32 + 1) })
            .collect();
        GeneralizedMultiplier { p: self.p, m }
    }

    pub fn is_odd(&self) -> bool {
        self.m.iter().all(|x| x % 2 == 1)
    }

    /// Membership in `Z**(k)`: `m_i ≡ m_{i-1} (mod p^(i-1-k_i))`.
    pub fn fits(&self, key: &PrimaryKey) -> bool {
        (2..=self.m.len()).all(|i| {
            let modulus = self.p.pow(i as u32 - 1 - key.k[i - 1]);
            self.m[i - 1] % modulus == self.m[i - 2] % modulus
        })
    }
}

impl fmt::Display for GeneralizedMultiplier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, self.m.iter())
    }
}

/// `x^f = Σ m_{e-i} x_i p^i mod p^e` over the p-adic digits of `x`.
pub fn digit_map(p: u64, e: u32, m: &GeneralizedMultiplier, x: u64) -> u64 {
    let pe = p.pow(e);
    let mut rest = x % pe;
    let mut out = 0u64;
    let mut place = 1u64;
    for i in 0..e {
        let digit = rest % p;
        rest /= p;
        let mi = m.m[(e - 1 - i) as usize] % pe;
        out = (out + mi * digit % pe * place) % pe;
        place *= p;
    }
    out
}

/// How `φ` treats the coset `H_0 b`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PhiReading {
    /// `2x + p^e ↦ 2f(x) + p^e`: the digit map on the `p^e` coordinate,
    /// identity on the 2-coordinate.
    #[default]
    Crt,
    /// `2x + 1 ↦ 2f(x) + 1`, the literal printed form. Kept for comparison.
    Literal,
}

/// `φ_m` as a permutation of `H`. All entries of `m` must be odd.
pub fn phi_map(h: &TwicePrimePower, m: &GeneralizedMultiplier, reading: PhiReading) -> Result<Permutation> {
    if m.e() != h.e || m.p != h.p {
        return Err(Error::WrongOrder(h.order()));
    }
    if let Some(&even) = m.m.iter().find(|&&x| x % 2 == 0) {
        return Err(Error::EvenMultiplier(even));
    }
    let n = h.order();
    let pe = h.pe();
    let f: Vec<usize> = (0..pe as u64).map(|x| digit_map(h.p, h.e, m, x) as usize).collect();
    let shift = match reading {
        PhiReading::Crt => pe,
        PhiReading::Literal => 1,
    };
    let mut residue_image = vec![0usize; n];
    for x in 0..pe {
        residue_image[2 * x] = 2 * f[x];
        residue_image[(2 * x + shift) % n] = (2 * f[x] + shift) % n;
    }
    let images = (0..n).map(|v| h.element(residue_image[h.residue(v)])).collect();
    Ok(Permutation::from_images(images).expect("φ is a bijection"))
}

/// All of `Z**(k)` up to `m_i mod p^i`, as odd representatives, sorted by
/// `(m_e, …, m_1)`.
pub fn multipliers_for_key(p: u64, e: u32, key: &PrimaryKey) -> Vec<GeneralizedMultiplier> {
    let mut partial: Vec<Vec<u64>> = vec![Vec::new()];
    for i in 1..=e {
        let modulus = p.pow(i);
        partial = partial
            .into_iter()
            .flat_map(|prefix| {
                let link = if i == 1 { 1 } else { p.pow(i - 1 - key.k[i as usize - 1]) };
                (1..modulus)
                    .filter(move |r| r % p != 0)
                    .filter(|r| i == 1 || r % link == prefix[i as usize - 2] % link)
                    .map(|r| {
                        let mut next = prefix.clone();
                        next.push(r);
                        next
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
    }
    let mut out: Vec<GeneralizedMultiplier> =
        partial.into_iter().map(|m| GeneralizedMultiplier { p, m }.odd_representatives()).collect();
    out.sort_by(|a, b| a.m.iter().rev().cmp(b.m.iter().rev()));
    out
}

/// A class `X` of `Π(k)` and a multiplier with `X^φ ≠ X^(m_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiViolation {
    pub key: PrimaryKey,
    pub multiplier: GeneralizedMultiplier,
    pub class: Vec<usize>,
}

/// Checks `X^φ = X^(m_i)`, with `p^i` the p-part of `|<X>|`, for every key,
/// every multiplier of that key and every class. Returns the number of
/// checks and the failures.
pub fn audit_phi_on_classes(h: &TwicePrimePower, reading: PhiReading) -> Result<(usize, Vec<PhiViolation>)> {
    let g = &h.group;
    let mut checks = 0;
    let mut bad = Vec::new();
    for key in key_lattice(h.p, h.e) {
        let classes = key_partition(h, &key)?;
        for m in multipliers_for_key(h.p, h.e, &key) {
            let phi = phi_map(h, &m, reading)?;
            for c in &classes {
                checks += 1;
                let i = h.level(c[0]) as usize;
                let mut image: Vec<usize> = c.iter().map(|&x| phi.apply(x)).collect();
                let mut scaled: Vec<usize> =
                    if i == 0 { c.clone() } else { c.iter().map(|&x| g.mul(m.m[i - 1] as i64, x)).collect() };
                image.sort_unstable();
                scaled.sort_unstable();
                if image != scaled {
                    bad.push(PhiViolation { key: key.clone(), multiplier: m.clone(), class: c.clone() });
                }
            }
        }
    }
    Ok((checks, bad))
}
