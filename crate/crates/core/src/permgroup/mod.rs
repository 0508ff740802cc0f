//! Permutations, permutation groups with a base and strong generating set,
//! and graph automorphism search.

mod search;

use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub use search::{
    automorphism_group, automorphism_group_with, brute_force_iso, AutomorphismSearch, SearchOptions, VERTEX_CAP,
};

/// A permutation of `[0, n)`; `images[x]` is the image of `x`.
///
/// Products read left to right: `a.then(&b)` maps `x` to `b(a(x))`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Option<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &y in &images {
            if y >= n || std::mem::replace(&mut seen[y], true) {
                return None;
            }
        }
        Some(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation { images: self.images.iter().map(|&y| other.images[y]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.images.len()];
        for (x, &y) in self.images.iter().enumerate() {
            inv[y] = x;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(x, &y)| x == y)
    }

    pub fn fixes(&self, x: usize) -> bool {
        self.images[x] == x
    }

    pub fn first_moved(&self) -> Option<usize> {
        self.images.iter().enumerate().find(|(x, &y)| *x != y).map(|(x, _)| x)
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut any = false;
        for start in 0..n {
            if seen[start] || self.images[start] == start {
                continue;
            }
            any = true;
            write!(f, "(")?;
            let mut x = start;
            let mut first = true;
            while !seen[x] {
                seen[x] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
                first = false;
                x = self.images[x];
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
struct Level {
    point: usize,
    gens: Vec<usize>,
    orbit: Vec<usize>,
    transversal: Vec<Option<Permutation>>,
}

/// A permutation group stored as a stabilizer chain.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    strong: Vec<Permutation>,
    levels: Vec<Level>,
}

impl PermGroup {
    pub fn trivial(degree: usize) -> Self {
        PermGroup { degree, strong: Vec::new(), levels: Vec::new() }
    }

    /// Deterministic Schreier-Sims with base points chosen in ascending order.
    pub fn from_generators(degree: usize, gens: &[Permutation]) -> Self {
        Self::schreier_sims(degree, gens, &[])
    }

    /// Deterministic Schreier-Sims whose base starts with `prefix`.
    pub fn schreier_sims(degree: usize, gens: &[Permutation], prefix: &[usize]) -> Self {
        let mut g = Self::init(degree, gens, prefix);
        let mut i = g.levels.len() as isize - 1;
        while i >= 0 {
            let lvl = i as usize;
            match g.find_schreier_residue(lvl) {
                Some((res, j)) => {
                    g.add_strong(res, j);
                    i = j.min(g.levels.len() - 1) as isize;
                }
                None => i -= 1,
            }
        }
        g
    }

    /// Schreier-Sims that stops once the chain reaches a known group order.
    /// Random elements come from a seeded product-replacement generator, so
    /// the result is reproducible.
    pub fn with_known_order(degree: usize, gens: &[Permutation], prefix: &[usize], order: &BigUint) -> Self {
        let mut g = Self::init(degree, gens, prefix);
        if g.strong.is_empty() {
            return g;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let mut pool: Vec<Permutation> = g.strong.clone();
        while pool.len() < 10 {
            let k = pool.len() % g.strong.len();
            pool.push(g.strong[k].clone());
        }
        let mut acc = Permutation::identity(degree);
        let step = |pool: &mut Vec<Permutation>, acc: &mut Permutation, rng: &mut ChaCha8Rng| {
            let a = rng.gen_range(0..pool.len());
            let mut b = rng.gen_range(0..pool.len() - 1);
            if b >= a {
                b += 1;
            }
            pool[a] = if rng.gen::<bool>() { pool[a].then(&pool[b]) } else { pool[a].then(&pool[b].inverse()) };
            *acc = acc.then(&pool[a]);
        };
        for _ in 0..60 {
            step(&mut pool, &mut acc, &mut rng);
        }
        while &g.order() < order {
            step(&mut pool, &mut acc, &mut rng);
            let (res, j) = g.sift(&acc, 0);
            if !res.is_identity() {
                g.add_strong(res, j);
            }
        }
        g
    }

    /// Trusts that `strong` is a strong generating set relative to `base`.
    pub fn from_bsgs(degree: usize, base: &[usize], strong: Vec<Permutation>) -> Self {
        let mut g = PermGroup { degree, strong, levels: Vec::new() };
        for &b in base {
            g.levels.push(Level { point: b, gens: Vec::new(), orbit: Vec::new(), transversal: Vec::new() });
        }
        g.rebuild_levels(0..g.levels.len());
        g
    }

    fn init(degree: usize, gens: &[Permutation], prefix: &[usize]) -> Self {
        let mut strong: Vec<Permutation> = Vec::new();
        for s in gens {
            assert_eq!(s.degree(), degree);
            if !s.is_identity() && !strong.contains(s) {
                strong.push(s.clone());
            }
        }
        let mut base: Vec<usize> = prefix.to_vec();
        for s in &strong {
            if base.iter().all(|&b| s.fixes(b)) {
                base.push(s.first_moved().unwrap());
            }
        }
        PermGroup::from_bsgs(degree, &base, strong)
    }

    fn rebuild_levels(&mut self, range: std::ops::Range<usize>) {
        for i in range {
            let gens: Vec<usize> = (0..self.strong.len())
                .filter(|&k| self.levels[..i].iter().all(|l| self.strong[k].fixes(l.point)))
                .collect();
            let point = self.levels[i].point;
            let mut transversal: Vec<Option<Permutation>> = vec![None; self.degree];
            transversal[point] = Some(Permutation::identity(self.degree));
            let mut orbit = vec![point];
            let mut head = 0;
            while head < orbit.len() {
                let w = orbit[head];
                head += 1;
                for &k in &gens {
                    let y = self.strong[k].apply(w);
                    if transversal[y].is_none() {
                        transversal[y] = Some(transversal[w].as_ref().unwrap().then(&self.strong[k]));
                        orbit.push(y);
                    }
                }
            }
            self.levels[i] = Level { point, gens, orbit, transversal };
        }
    }

    fn add_strong(&mut self, res: Permutation, level: usize) {
        let mut j = level;
        if j == self.levels.len() {
            let p = res.first_moved().expect("nontrivial residue");
            self.levels.push(Level { point: p, gens: Vec::new(), orbit: Vec::new(), transversal: Vec::new() });
            j = self.levels.len() - 1;
        }
        self.strong.push(res);
        self.rebuild_levels(0..j + 1);
    }

    fn find_schreier_residue(&self, i: usize) -> Option<(Permutation, usize)> {
        let level = &self.levels[i];
        for &beta in &level.orbit {
            let ub = level.transversal[beta].as_ref().unwrap();
            for &k in &level.gens {
                let s = &self.strong[k];
                let y = s.apply(beta);
                let uy = level.transversal[y].as_ref().unwrap();
                let h = ub.then(s).then(&uy.inverse());
                if h.is_identity() {
                    continue;
                }
                let (res, j) = self.sift(&h, i + 1);
                if !res.is_identity() {
                    return Some((res, j));
                }
            }
        }
        None
    }

    /// Strips `g` through the chain from level `from`; returns the residue
    /// and the level where stripping stopped.
    fn sift(&self, g: &Permutation, from: usize) -> (Permutation, usize) {
        let mut h = g.clone();
        for (j, level) in self.levels.iter().enumerate().skip(from) {
            let beta = h.apply(level.point);
            match &level.transversal[beta] {
                Some(u) => h = h.then(&u.inverse()),
                None => return (h, j),
            }
        }
        (h, self.levels.len())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.strong
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.point).collect()
    }

    /// Fundamental orbit lengths along the base.
    pub fn transversal_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn order(&self) -> BigUint {
        self.levels.iter().fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && self.sift(g, 0).0.is_identity()
    }

    /// Some element mapping the first base point to `w`, if one exists.
    pub fn transversal_element(&self, w: usize) -> Option<&Permutation> {
        self.levels.first().and_then(|l| l.transversal[w].as_ref())
    }

    pub fn point_stabilizer(&self, v: usize) -> PermGroup {
        let chain = match self.levels.first() {
            None => return PermGroup::trivial(self.degree),
            Some(l) if l.point == v => self.clone(),
            Some(_) => PermGroup::with_known_order(self.degree, &self.strong, &[v], &self.order()),
        };
        chain.drop_first_level()
    }

    fn drop_first_level(&self) -> PermGroup {
        let Some(first) = self.levels.first() else {
            return self.clone();
        };
        let keep: Vec<usize> = (0..self.strong.len()).filter(|&k| self.strong[k].fixes(first.point)).collect();
        let strong: Vec<Permutation> = keep.iter().map(|&k| self.strong[k].clone()).collect();
        let base: Vec<usize> = self.levels[1..].iter().map(|l| l.point).collect();
        PermGroup::from_bsgs(self.degree, &base, strong)
    }

    /// Orbit partition of `[0, degree)`, each orbit sorted, orbits sorted by
    /// least element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        orbits_of(self.degree, &self.strong)
    }

    pub fn orbit_of(&self, v: usize) -> Vec<usize> {
        self.orbits().into_iter().find(|o| o.contains(&v)).unwrap_or_else(|| vec![v])
    }
}

pub(crate) fn orbits_of(degree: usize, gens: &[Permutation]) -> Vec<Vec<usize>> {
    let mut uf = UnionFind::new(degree);
    for g in gens {
        for x in 0..degree {
            uf.union(x, g.apply(x));
        }
    }
    uf.classes()
}

#[derive(Clone, Debug)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), size: vec![1; n] }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns the new root.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> usize {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return ra;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        ra
    }

    pub(crate) fn set_size(&mut self, x: usize) -> usize {
        let r = self.find(x);
        self.size[r]
    }

    pub(crate) fn classes(&mut self) -> Vec<Vec<usize>> {
        let n = self.parent.len();
        let mut by_root: Vec<Vec<usize>> = vec![Vec::new(); n];
        for x in 0..n {
            let r = self.find(x);
            by_root[r].push(x);
        }
        let mut out: Vec<Vec<usize>> = by_root.into_iter().filter(|c| !c.is_empty()).collect();
        out.sort_by_key(|c| c[0]);
        out
    }
}
