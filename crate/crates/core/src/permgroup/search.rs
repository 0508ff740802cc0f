//! Individualization-refinement search for graph automorphisms.
//!
//! The first path through the search tree fixes a base. Walking that path
//! bottom-up, each level tries every vertex of the target cell not already
//! known to lie in the base point's orbit, looking for a leaf equivalent to
//! the first leaf. Found automorphisms form a strong generating set relative
//! to the base, so the group order is the product of the orbit lengths.

use std::collections::VecDeque;

use num_bigint::BigUint;

use super::{orbits_of, PermGroup, Permutation, UnionFind};
use crate::cayley::Graph;
use crate::error::{Error, Result};

/// Default cap on the number of vertices handed to the search.
pub const VERTEX_CAP: usize = 128;

#[derive(Clone, Debug, Default)]
pub struct SearchOptions<'a> {
    /// Vertex colours that automorphisms must preserve.
    pub colors: Option<&'a [usize]>,
    /// Automorphisms already known (e.g. translations); invalid ones are dropped.
    pub seeds: &'a [Permutation],
    /// Individualize this vertex first when its cell is non-trivial.
    pub first_point: Option<usize>,
    pub vertex_cap: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct AutomorphismSearch {
    pub group: PermGroup,
    pub base: Vec<usize>,
    pub orbit_sizes: Vec<usize>,
    pub nodes: usize,
}

impl AutomorphismSearch {
    pub fn order(&self) -> BigUint {
        self.orbit_sizes.iter().fold(BigUint::from(1u32), |acc, &s| acc * BigUint::from(s))
    }
}

pub fn automorphism_group(graph: &Graph) -> Result<PermGroup> {
    Ok(automorphism_group_with(graph, &SearchOptions::default())?.group)
}

pub fn automorphism_group_with(graph: &Graph, opts: &SearchOptions<'_>) -> Result<AutomorphismSearch> {
    let n = graph.n();
    let cap = opts.vertex_cap.unwrap_or(VERTEX_CAP);
    if n > cap {
        return Err(Error::VertexCapExceeded { n, cap });
    }
    let colors: Vec<usize> = match opts.colors {
        Some(c) => c.to_vec(),
        None => vec![0; n],
    };
    let mut search = Search::new(graph, colors);
    search.gens = opts
        .seeds
        .iter()
        .filter(|p| p.degree() == n && !p.is_identity() && search.is_automorphism(p))
        .cloned()
        .collect();
    search.first_path(opts.first_point);
    let orbit_sizes = search.complete_levels();
    let base = search.base.clone();
    let group = PermGroup::from_bsgs(n, &base, search.gens.clone());
    debug_assert_eq!(group.transversal_sizes(), orbit_sizes);
    Ok(AutomorphismSearch { group, base, orbit_sizes, nodes: search.nodes })
}

/// An explicit isomorphism `Γ1 → Γ2` (`map[v]` is the image of `v`), if any.
///
/// Both graphs are hung under a private apex vertex; an automorphism of the
/// joined graph swapping the two apexes restricts to an isomorphism.
pub fn brute_force_iso(g1: &Graph, g2: &Graph) -> Result<Option<Vec<usize>>> {
    let n = g1.n();
    let cap = VERTEX_CAP;
    if 2 * n + 2 > cap || g2.n() > n {
        if g1.n() != g2.n() {
            return Ok(None);
        }
        return Err(Error::VertexCapExceeded { n: 2 * n + 2, cap });
    }
    if g2.n() != n || g1.edge_count() != g2.edge_count() {
        return Ok(None);
    }
    let mut degs1: Vec<usize> = (0..n).map(|v| g1.degree(v)).collect();
    let mut degs2: Vec<usize> = (0..n).map(|v| g2.degree(v)).collect();
    degs1.sort_unstable();
    degs2.sort_unstable();
    if degs1 != degs2 {
        return Ok(None);
    }
    let (r1, r2) = (2 * n, 2 * n + 1);
    let mut edges: Vec<(usize, usize)> = g1.edges().collect();
    edges.extend(g2.edges().map(|(u, v)| (u + n, v + n)));
    edges.extend((0..n).map(|v| (v, r1)));
    edges.extend((0..n).map(|v| (v + n, r2)));
    let joined = Graph::from_edges(2 * n + 2, edges);
    let mut colors = vec![0; 2 * n + 2];
    colors[r1] = 1;
    colors[r2] = 1;
    let opts =
        SearchOptions { colors: Some(&colors), first_point: Some(r1), vertex_cap: Some(cap), ..Default::default() };
    let found = automorphism_group_with(&joined, &opts)?;
    if found.base.first() != Some(&r1) {
        return Ok(None);
    }
    let Some(swap) = found.group.transversal_element(r2) else {
        return Ok(None);
    };
    let map: Vec<usize> = (0..n).map(|v| swap.apply(v) - n).collect();
    debug_assert!(g1.edges().all(|(u, v)| g2.has_edge(map[u], map[v])));
    Ok(Some(map))
}

/// Ordered partition of the vertex set.
#[derive(Clone, Debug)]
struct Partition {
    lab: Vec<usize>,
    pos: Vec<usize>,
    cell: Vec<usize>,
    len: Vec<usize>,
    cells: usize,
}

impl Partition {
    fn from_colors(colors: &[usize]) -> Self {
        let n = colors.len();
        let mut lab: Vec<usize> = (0..n).collect();
        lab.sort_by_key(|&v| (colors[v], v));
        let mut pos = vec![0; n];
        let mut cell = vec![0; n];
        let mut len = vec![0; n];
        let mut cells = 0;
        let mut start = 0;
        for i in 0..n {
            pos[lab[i]] = i;
            if i > 0 && colors[lab[i]] != colors[lab[i - 1]] {
                len[start] = i - start;
                start = i;
                cells += 1;
            }
            cell[lab[i]] = start;
        }
        if n > 0 {
            len[start] = n - start;
            cells += 1;
        }
        Partition { lab, pos, cell, len, cells }
    }

    fn n(&self) -> usize {
        self.lab.len()
    }

    fn is_discrete(&self) -> bool {
        self.cells == self.n()
    }

    fn starts(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.cells);
        let mut s = 0;
        while s < self.n() {
            out.push(s);
            s += self.len[s];
        }
        out
    }

    fn cell_members(&self, start: usize) -> &[usize] {
        &self.lab[start..start + self.len[start]]
    }

    /// First non-singleton cell of minimum size.
    fn target_cell(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        let mut s = 0;
        while s < self.n() {
            let l = self.len[s];
            if l > 1 && best.is_none_or(|b| l < self.len[b]) {
                best = Some(s);
            }
            s += l;
        }
        best
    }

    /// Splits `v` off the front of its cell; returns the singleton's start.
    fn individualize(&mut self, v: usize) -> usize {
        let s = self.cell[v];
        let l = self.len[s];
        debug_assert!(l > 1);
        let p = self.pos[v];
        let u = self.lab[s];
        self.lab.swap(s, p);
        self.pos[u] = p;
        self.pos[v] = s;
        self.len[s] = 1;
        self.len[s + 1] = l - 1;
        for i in s + 1..s + l {
            self.cell[self.lab[i]] = s + 1;
        }
        self.cells += 1;
        s
    }
}

#[inline]
fn mix(h: u64, x: u64) -> u64 {
    let mut z = h ^ x.wrapping_add(0x9e37_79b9_7f4a_7c15).wrapping_add(h << 6).wrapping_add(h >> 2);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

struct Search<'g> {
    graph: &'g Graph,
    colors: Vec<usize>,
    /// Partition and refinement trace at each depth of the first path.
    path: Vec<(Partition, u64)>,
    /// Target cell start at each non-leaf depth of the first path.
    targets: Vec<usize>,
    base: Vec<usize>,
    leaf: Vec<usize>,
    gens: Vec<Permutation>,
    counts: Vec<usize>,
    nodes: usize,
}

impl<'g> Search<'g> {
    fn new(graph: &'g Graph, colors: Vec<usize>) -> Self {
        let n = graph.n();
        Search {
            graph,
            colors,
            path: Vec::new(),
            targets: Vec::new(),
            base: Vec::new(),
            leaf: Vec::new(),
            gens: Vec::new(),
            counts: vec![0; n],
            nodes: 0,
        }
    }

    /// Equitable refinement from the given splitter cells. The returned trace
    /// depends only on label-invariant data.
    fn refine(&mut self, p: &mut Partition, splitters: &[usize]) -> u64 {
        let n = p.n();
        let mut trace: u64 = 0x1234_5678;
        let mut queue: VecDeque<usize> = splitters.iter().copied().collect();
        let mut queued = vec![false; n];
        for &s in splitters {
            queued[s] = true;
        }
        while let Some(w) = queue.pop_front() {
            queued[w] = false;
            if p.is_discrete() {
                break;
            }
            for i in w..w + p.len[w] {
                let v = p.lab[i];
                for &u in self.graph.neighbors(v) {
                    self.counts[u] += 1;
                }
            }
            let mut s = 0;
            while s < n {
                let l = p.len[s];
                if l > 1 {
                    let first = self.counts[p.lab[s]];
                    if p.lab[s + 1..s + l].iter().any(|&v| self.counts[v] != first) {
                        let counts = &self.counts;
                        p.lab[s..s + l].sort_by_key(|&v| counts[v]);
                        let mut frags: Vec<(usize, usize)> = Vec::new();
                        let mut fs = s;
                        for i in s..s + l {
                            let v = p.lab[i];
                            p.pos[v] = i;
                            if i > s && counts[v] != counts[p.lab[i - 1]] {
                                frags.push((fs, i - fs));
                                fs = i;
                            }
                        }
                        frags.push((fs, s + l - fs));
                        trace = mix(trace, (s as u64) << 20 | frags.len() as u64);
                        for &(fs, fl) in &frags {
                            p.len[fs] = fl;
                            for i in fs..fs + fl {
                                p.cell[p.lab[i]] = fs;
                            }
                            trace = mix(trace, (counts[p.lab[fs]] as u64) << 32 | fl as u64);
                        }
                        p.cells += frags.len() - 1;
                        if queued[s] {
                            for &(fs, _) in &frags[1..] {
                                queued[fs] = true;
                                queue.push_back(fs);
                            }
                        } else {
                            let largest = frags
                                .iter()
                                .enumerate()
                                .max_by(|a, b| a.1 .1.cmp(&b.1 .1).then(b.0.cmp(&a.0)))
                                .map(|(k, _)| k)
                                .unwrap();
                            for (k, &(fs, _)) in frags.iter().enumerate() {
                                if k != largest {
                                    queued[fs] = true;
                                    queue.push_back(fs);
                                }
                            }
                        }
                    }
                }
                s += l;
            }
            self.counts.iter_mut().for_each(|c| *c = 0);
            trace = mix(trace, (w as u64) << 32 | p.cells as u64);
        }
        trace
    }

    fn first_path(&mut self, first_point: Option<usize>) {
        let mut part = Partition::from_colors(&self.colors);
        let starts = part.starts();
        let trace = self.refine(&mut part, &starts);
        self.path.push((part, trace));
        loop {
            let part = &self.path.last().unwrap().0;
            let depth = self.path.len() - 1;
            let forced = first_point.filter(|_| depth == 0).map(|v| part.cell[v]).filter(|&s| part.len[s] > 1);
            let Some(target) = forced.or_else(|| part.target_cell()) else {
                self.leaf = part.lab.clone();
                break;
            };
            let v = match forced {
                Some(_) => first_point.unwrap(),
                None => part.lab[target],
            };
            let mut child = part.clone();
            let s = child.individualize(v);
            let t = self.refine(&mut child, &[s]);
            self.targets.push(target);
            self.base.push(v);
            self.path.push((child, t));
        }
    }

    /// Processes base levels bottom-up and returns the fundamental orbit
    /// lengths.
    fn complete_levels(&mut self) -> Vec<usize> {
        let depth = self.base.len();
        let n = self.graph.n();
        let mut sizes = vec![1; depth];
        for i in (0..depth).rev() {
            let b = self.base[i];
            let prefix = self.base[..i].to_vec();
            let mut uf = UnionFind::new(n);
            for g in self.gens.iter().filter(|g| prefix.iter().all(|&x| g.fixes(x))) {
                for x in 0..n {
                    uf.union(x, g.apply(x));
                }
            }
            let mut failed = vec![false; n];
            let cell: Vec<usize> = {
                let part = &self.path[i].0;
                let mut c = part.cell_members(self.targets[i]).to_vec();
                c.sort_unstable();
                c
            };
            for &w in &cell {
                let (rw, rb) = (uf.find(w), uf.find(b));
                if rw == rb || failed[rw] {
                    continue;
                }
                let mut child = self.path[i].0.clone();
                let s = child.individualize(w);
                let t = self.refine(&mut child, &[s]);
                let mut seq = prefix.clone();
                seq.push(w);
                let found = if self.matches(&child, t, i + 1) { self.descend(child, i + 1, &mut seq) } else { None };
                match found {
                    Some(g) => {
                        for x in 0..n {
                            uf.union(x, g.apply(x));
                        }
                        self.gens.push(g);
                    }
                    None => {
                        failed[rw] = true;
                    }
                }
                for x in 0..n {
                    if failed[x] {
                        let r = uf.find(x);
                        failed[r] = true;
                    }
                }
            }
            sizes[i] = uf.set_size(b);
        }
        sizes
    }

    fn matches(&self, part: &Partition, trace: u64, depth: usize) -> bool {
        let (ref_part, ref_trace) = &self.path[depth];
        trace == *ref_trace && part.cells == ref_part.cells
    }

    /// Depth-first search below `part` for a leaf equivalent to the first leaf.
    fn descend(&mut self, part: Partition, depth: usize, seq: &mut Vec<usize>) -> Option<Permutation> {
        self.nodes += 1;
        if part.is_discrete() || depth == self.base.len() {
            if !part.is_discrete() {
                return None;
            }
            let mut images = vec![0; part.n()];
            for (p, &v) in self.leaf.iter().enumerate() {
                images[v] = part.lab[p];
            }
            let g = Permutation { images };
            return self.is_automorphism(&g).then_some(g);
        }
        let target = self.targets[depth];
        if part.len[target] <= 1 {
            return None;
        }
        let mut cand = part.cell_members(target).to_vec();
        cand.sort_unstable();
        let stab: Vec<Permutation> = self.gens.iter().filter(|g| seq.iter().all(|&x| g.fixes(x))).cloned().collect();
        let mut tried = vec![false; part.n()];
        let orbit_rep: Vec<usize> = {
            let mut rep = (0..part.n()).collect::<Vec<_>>();
            for orbit in orbits_of(part.n(), &stab) {
                for &x in &orbit {
                    rep[x] = orbit[0];
                }
            }
            rep
        };
        for u in cand {
            let r = orbit_rep[u];
            if std::mem::replace(&mut tried[r], true) {
                continue;
            }
            let mut child = part.clone();
            let s = child.individualize(u);
            let t = self.refine(&mut child, &[s]);
            if !self.matches(&child, t, depth + 1) {
                continue;
            }
            seq.push(u);
            let found = self.descend(child, depth + 1, seq);
            seq.pop();
            if found.is_some() {
                return found;
            }
        }
        None
    }

    fn is_automorphism(&self, g: &Permutation) -> bool {
        let n = self.graph.n();
        (0..n).all(|u| {
            let gu = g.apply(u);
            self.colors[gu] == self.colors[u]
                && self.graph.degree(gu) == self.graph.degree(u)
                && self.graph.neighbors(u).iter().all(|&v| self.graph.has_edge(gu, g.apply(v)))
        })
    }
}
