//! Connection sets, Cayley graphs and the canonical double cover.

use std::collections::VecDeque;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::groups::AbelianGroup;

/// An inverse-closed subset of `H \ {0}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConnectionSet {
    members: FixedBitSet,
    elements: Vec<usize>,
}

impl ConnectionSet {
    pub fn new(g: &AbelianGroup, elems: &[usize]) -> Result<Self> {
        let members = g.set_from(elems)?;
        Self::from_bitset(g, members)
    }

    pub fn from_bitset(g: &AbelianGroup, members: FixedBitSet) -> Result<Self> {
        if members.len() != g.order() {
            return Err(Error::GroupMismatch);
        }
        if members.contains(0) {
            return Err(Error::IdentityInSet);
        }
        for x in members.ones() {
            let inv = g.neg(x);
            if !members.contains(inv) {
                return Err(Error::NotInverseClosed { element: x, inverse: inv });
            }
        }
        let elements = members.ones().collect();
        Ok(ConnectionSet { members, elements })
    }

    pub fn members(&self) -> &FixedBitSet {
        &self.members
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.contains(x)
    }
}

/// Alias matching the operation name used by callers.
pub fn make_connection_set(g: &AbelianGroup, elems: &[usize]) -> Result<ConnectionSet> {
    ConnectionSet::new(g, elems)
}

/// A simple undirected graph with bitset adjacency rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<FixedBitSet>,
    nbrs: Vec<Vec<usize>>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph { adj: vec![FixedBitSet::with_capacity(n); n], nbrs: vec![Vec::new(); n] }
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut adj = vec![FixedBitSet::with_capacity(n); n];
        for (u, v) in edges {
            assert!(u != v, "self-loop at {u}");
            adj[u].insert(v);
            adj[v].insert(u);
        }
        let nbrs = adj.iter().map(|row| row.ones().collect()).collect();
        Graph { adj, nbrs }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.nbrs[v]
    }

    pub fn row(&self, v: usize) -> &FixedBitSet {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.nbrs[v].len()
    }

    pub fn edge_count(&self) -> usize {
        self.nbrs.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.nbrs.iter().enumerate().flat_map(|(u, ns)| ns.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    /// Disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.n();
        let edges = self.edges().chain(other.edges().map(|(u, v)| (u + shift, v + shift)));
        Graph::from_edges(self.n() + other.n(), edges.collect::<Vec<_>>())
    }
}

/// `Cay(G, S)`: `x ~ x + s` for every `s` in `S`.
pub fn build_cayley(g: &AbelianGroup, s: &ConnectionSet) -> Graph {
    let mut edges = Vec::with_capacity(g.order() * s.len() / 2);
    for x in g.elements() {
        for &t in s.elements() {
            let y = g.add(x, t);
            if x < y {
                edges.push((x, y));
            }
        }
    }
    Graph::from_edges(g.order(), edges)
}

/// The group `H x Z2` with `a = (0, 1)` at index 1 and `H` embedded at the
/// even indices (`h` maps to `2h`).
pub fn extend_by_z2(h: &AbelianGroup) -> AbelianGroup {
    let mut factors = h.factors().to_vec();
    factors.push(2);
    AbelianGroup::new(&factors).expect("H x Z2 within cap")
}

/// `Sa = S x {1}` as a connection set of `H x Z2`.
pub fn lift_connection_set(h: &AbelianGroup, g: &AbelianGroup, s: &ConnectionSet) -> ConnectionSet {
    debug_assert_eq!(g.order(), 2 * h.order());
    let elems: Vec<usize> = s.elements().iter().map(|&x| 2 * x + 1).collect();
    ConnectionSet::new(g, &elems).expect("Sa is inverse-closed whenever S is")
}

/// Returns `(H x Z2, Sa, Cay(H x Z2, Sa))`.
pub fn double_cover(h: &AbelianGroup, s: &ConnectionSet) -> (AbelianGroup, ConnectionSet, Graph) {
    let g = extend_by_z2(h);
    let sa = lift_connection_set(h, &g, s);
    let graph = build_cayley(&g, &sa);
    (g, sa, graph)
}

/// Textbook `Γ x K2` on vertices `(v, i)` numbered `2v + i`.
pub fn canonical_double_cover(gamma: &Graph) -> Graph {
    let mut edges = Vec::new();
    for (u, v) in gamma.edges() {
        edges.push((2 * u, 2 * v + 1));
        edges.push((2 * u + 1, 2 * v));
    }
    Graph::from_edges(2 * gamma.n(), edges)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GraphProperties {
    pub connected: bool,
    pub bipartite: bool,
}

pub fn graph_properties(graph: &Graph) -> GraphProperties {
    let n = graph.n();
    if n == 0 {
        return GraphProperties { connected: true, bipartite: true };
    }
    let mut color = vec![u8::MAX; n];
    let mut bipartite = true;
    let mut components = 0;
    for start in 0..n {
        if color[start] != u8::MAX {
            continue;
        }
        components += 1;
        color[start] = 0;
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for &v in graph.neighbors(u) {
                if color[v] == u8::MAX {
                    color[v] = 1 - color[u];
                    queue.push_back(v);
                } else if color[v] == color[u] {
                    bipartite = false;
                }
            }
        }
    }
    GraphProperties { connected: components == 1, bipartite }
}

/// Some pair `u < v` with equal open neighbourhoods, smallest first.
pub fn find_twins(graph: &Graph) -> Option<(usize, usize)> {
    let n = graph.n();
    (0..n).find_map(|u| ((u + 1)..n).find(|&v| graph.row(u) == graph.row(v)).map(|v| (u, v)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: usize) -> AbelianGroup {
        AbelianGroup::cyclic(n).unwrap()
    }

    fn cset(g: &AbelianGroup, xs: &[usize]) -> ConnectionSet {
        ConnectionSet::new(g, xs).unwrap()
    }

    #[test]
    fn connection_set_validation() {
        let g = z(18);
        assert!(ConnectionSet::new(&g, &[2, 4, 8, 9, 10, 14, 16]).is_ok());
        assert_eq!(ConnectionSet::new(&g, &[0, 1]), Err(Error::IdentityInSet));
        assert_eq!(ConnectionSet::new(&g, &[1]), Err(Error::NotInverseClosed { element: 1, inverse: 17 }));
    }

    #[test]
    fn cayley_examples() {
        let g3 = z(3);
        let k3 = build_cayley(&g3, &cset(&g3, &[1, 2]));
        assert_eq!(k3.edge_count(), 3);
        let g18 = z(18);
        let c18 = build_cayley(&g18, &cset(&g18, &[1, 17]));
        assert!((0..18).all(|v| c18.degree(v) == 2 && c18.has_edge(v, (v + 1) % 18)));
        let g6 = z(6);
        let k6 = build_cayley(&g6, &cset(&g6, &[1, 2, 3, 4, 5]));
        assert_eq!(k6.edge_count(), 15);
    }

    #[test]
    fn double_cover_matches_textbook() {
        for (n, s) in [(3, vec![1, 2]), (6, vec![1, 2, 3, 4, 5]), (18, vec![2, 4, 8, 9, 10, 14, 16])] {
            let h = z(n);
            let s = cset(&h, &s);
            let gamma = build_cayley(&h, &s);
            let (_, _, dc) = double_cover(&h, &s);
            assert_eq!(dc, canonical_double_cover(&gamma));
            assert_eq!(dc.edge_count(), 2 * gamma.edge_count());
            assert!(graph_properties(&dc).bipartite);
        }
        // K3 x K2 = C6
        let h = z(3);
        let (_, _, dc) = double_cover(&h, &cset(&h, &[1, 2]));
        let p = graph_properties(&dc);
        assert!(p.connected && (0..6).all(|v| dc.degree(v) == 2));
        // K6 x K2 = K66 minus a perfect matching
        let h = z(6);
        let (_, _, dc) = double_cover(&h, &cset(&h, &[1, 2, 3, 4, 5]));
        for u in 0..6 {
            for v in 0..6 {
                assert_eq!(dc.has_edge(2 * u, 2 * v + 1), u != v);
            }
        }
    }

    #[test]
    fn properties_examples() {
        let g = z(18);
        let c18 = build_cayley(&g, &cset(&g, &[1, 17]));
        assert_eq!(graph_properties(&c18), GraphProperties { connected: true, bipartite: true });
        let p = graph_properties(&build_cayley(&g, &cset(&g, &[2, 16])));
        assert!(!p.connected);
        let p = graph_properties(&build_cayley(&g, &cset(&g, &[2, 4, 8, 9, 10, 14, 16])));
        assert_eq!(p, GraphProperties { connected: true, bipartite: false });
    }

    #[test]
    fn twins_examples() {
        let g = z(9);
        let gamma = build_cayley(&g, &cset(&g, &[1, 2, 4, 5, 7, 8]));
        assert_eq!(find_twins(&gamma), Some((0, 3)));
        let g3 = z(3);
        assert_eq!(find_twins(&build_cayley(&g3, &cset(&g3, &[1, 2]))), None);
        let g18 = z(18);
        assert_eq!(find_twins(&build_cayley(&g18, &cset(&g18, &[1, 17]))), None);
    }

    /// Cross-checks on Z_n for small twice-odd n: bipartite iff S avoids the
    /// index-2 subgroup, and twins x, y iff S + (x - y) = S.
    #[test]
    fn cayley_predicates_exhaustive() {
        for n in [6usize, 10, 14, 18] {
            let g = z(n);
            let atoms: Vec<Vec<usize>> =
                (1..=n / 2).map(|x| if 2 * x == n { vec![x] } else { vec![x, n - x] }).collect();
            for mask in 1u32..(1 << atoms.len()) {
                let elems: Vec<usize> =
                    atoms.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).flat_map(|(_, a)| a.clone()).collect();
                let s = cset(&g, &elems);
                let gamma = build_cayley(&g, &s);
                let p = graph_properties(&gamma);
                if p.connected {
                    let meets_even = elems.iter().any(|x| x % 2 == 0);
                    assert_eq!(p.bipartite, !meets_even, "n={n} S={elems:?}");
                }
                let shift_twin = (1..n).find(|&d| g.translate(s.members(), d) == *s.members());
                assert_eq!(find_twins(&gamma).map(|(u, v)| v - u).is_some(), shift_twin.is_some());
            }
        }
    }
}
