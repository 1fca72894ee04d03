//! Finite simple graphs and the graph algebra.
//!
//! Vertices are the indices `0..n`. Adjacency rows are [`VertexSet`] bitsets, kept
//! symmetric and loop-free by every constructor in this module.
//!
//! Product vertices use a mixed-radix encoding with the leftmost factor most
//! significant: in `G ⊠ H` the pair `(g, h)` is vertex `g * |H| + h`, and in
//! `G^⊠n` the tuple `(g_1, .., g_n)` is `((g_1 * m + g_2) * m + ..) + g_n`.

mod independence;
mod io;
mod ops;

pub use independence::{
    is_independent_set, max_independent_set, product_independent_set, IndependentSet,
    SearchBudget, DEFAULT_NODE_BUDGET,
};
pub use io::{from_graph6, to_graph6, EdgeListJson};
pub use ops::{complement, disjoint_union, induced_subgraph, join, power, strong_product};

use crate::bitset::VertexSet;
use crate::error::{Error, Result};

/// Anything that can answer adjacency queries on `0..order()`.
///
/// Implemented by concrete [`Graph`]s and by lazily evaluated strong powers, so
/// certificates on huge products can be checked without materializing them.
pub trait Adjacency: Sync {
    fn order(&self) -> usize;
    fn adjacent(&self, u: usize, v: usize) -> bool;
}

#[derive(Clone)]
pub struct Graph {
    adj: Vec<VertexSet>,
    label: Option<String>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.adj == other.adj
    }
}

impl Eq for Graph {}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("label", &self.label)
            .field("n", &self.order())
            .field("edges", &self.edge_count())
            .finish()
    }
}

impl Graph {
    /// The edgeless graph `E_n`.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![VertexSet::empty(n); n],
            label: None,
        }
    }

    /// The complete graph `K_n`.
    pub fn complete(n: usize) -> Self {
        let adj = (0..n)
            .map(|v| {
                let mut row = VertexSet::full(n);
                row.remove(v);
                row
            })
            .collect();
        Graph { adj, label: None }
    }

    /// The cycle `C_n` (requires `n >= 3`).
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::invalid(format!("cycle needs at least 3 vertices, got {n}")));
        }
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges)
    }

    /// Builds a graph from an edge list. Rejects loops and out-of-range endpoints;
    /// duplicate edges are merged.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::invalid(format!("edge ({u},{v}) out of range for n={n}")));
            }
            if u == v {
                return Err(Error::invalid(format!("self-loop at vertex {u}")));
            }
            g.adj[u].insert(v);
            g.adj[v].insert(u);
        }
        Ok(g)
    }

    pub(crate) fn from_rows(adj: Vec<VertexSet>) -> Self {
        debug_assert!(adj.iter().enumerate().all(|(v, row)| !row.contains(v)));
        Graph { adj, label: None }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(VertexSet::count).sum::<usize>() / 2
    }

    pub fn is_edgeless(&self) -> bool {
        self.adj.iter().all(VertexSet::is_empty)
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.order())
            .flat_map(|u| self.adj[u].iter().filter(move |&v| v > u).map(move |v| (u, v)))
            .collect()
    }

    /// Checks loop-freeness and symmetry. Always true for graphs built through this crate.
    pub fn check_invariants(&self) -> bool {
        let n = self.order();
        (0..n).all(|u| {
            !self.adj[u].contains(u) && self.adj[u].iter().all(|v| v < n && self.adj[v].contains(u))
        })
    }

    /// Rotation `i ↦ i + 1 (mod n)` preserves adjacency.
    pub fn is_rotation_invariant(&self) -> bool {
        let n = self.order();
        (0..n).all(|u| {
            self.adj[u]
                .iter()
                .all(|v| self.is_adjacent((u + 1) % n, (v + 1) % n))
        })
    }
}

impl Adjacency for Graph {
    fn order(&self) -> usize {
        Graph::order(self)
    }

    #[inline]
    fn adjacent(&self, u: usize, v: usize) -> bool {
        self.is_adjacent(u, v)
    }
}

impl<A: Adjacency + ?Sized> Adjacency for &A {
    fn order(&self) -> usize {
        (**self).order()
    }

    fn adjacent(&self, u: usize, v: usize) -> bool {
        (**self).adjacent(u, v)
    }
}

/// The fraction graph `E_{p/q}`: vertices `Z_p`, with `i ~ j` iff `i != j` and the
/// circular distance between them is less than `q`.
///
/// `(p, q)` is kept as given; `E_{10/4}` and `E_{5/2}` are different graphs.
pub fn fraction_graph(p: u64, q: u64) -> Result<Graph> {
    if p == 0 || q == 0 {
        return Err(Error::invalid(format!("fraction graph needs positive p, q; got {p}/{q}")));
    }
    if p < 2 * q {
        return Err(Error::invalid(format!("fraction graph needs p/q >= 2; got {p}/{q}")));
    }
    let n = usize::try_from(p).map_err(|_| Error::invalid("p too large"))?;
    let q = q as usize;
    let adj = (0..n)
        .map(|i| {
            let mut row = VertexSet::empty(n);
            for d in 1..q {
                row.insert((i + d) % n);
                row.insert((i + n - d) % n);
            }
            row
        })
        .collect();
    Ok(Graph::from_rows(adj).with_label(format!("E_{{{p}/{q}}}")))
}

/// Circular distance `|i - j|_p`.
#[inline]
pub fn circular_distance(i: u64, j: u64, p: u64) -> u64 {
    let d = i.abs_diff(j) % p;
    d.min(p - d)
}

/// A strong product `F_1 ⊠ .. ⊠ F_k` evaluated lazily, using the same mixed-radix
/// vertex encoding as [`strong_product`] and [`power`].
#[derive(Debug, Clone)]
pub struct StrongProduct<'a> {
    factors: Vec<&'a Graph>,
    order: usize,
}

impl<'a> StrongProduct<'a> {
    pub fn new(factors: Vec<&'a Graph>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::invalid("strong product of zero factors"));
        }
        let order = factors
            .iter()
            .try_fold(1usize, |acc, g| acc.checked_mul(g.order()))
            .ok_or_else(|| Error::invalid("product order overflows usize"))?;
        Ok(StrongProduct { factors, order })
    }

    pub fn power(base: &'a Graph, exponent: usize) -> Result<Self> {
        if exponent == 0 {
            return Err(Error::invalid("power exponent must be positive"));
        }
        Self::new(vec![base; exponent])
    }

    pub fn factors(&self) -> &[&'a Graph] {
        &self.factors
    }

    /// Splits a vertex index into factor coordinates, leftmost first.
    pub fn decode(&self, mut v: usize) -> Vec<usize> {
        let mut coords = vec![0; self.factors.len()];
        for (slot, g) in coords.iter_mut().zip(&self.factors).rev() {
            *slot = v % g.order();
            v /= g.order();
        }
        coords
    }

    pub fn encode(&self, coords: &[usize]) -> usize {
        coords
            .iter()
            .zip(&self.factors)
            .fold(0, |acc, (&c, g)| acc * g.order() + c)
    }
}

impl Adjacency for StrongProduct<'_> {
    fn order(&self) -> usize {
        self.order
    }

    fn adjacent(&self, mut u: usize, mut v: usize) -> bool {
        if u == v {
            return false;
        }
        for g in self.factors.iter().rev() {
            let m = g.order();
            let (a, b) = (u % m, v % m);
            if a != b && !g.is_adjacent(a, b) {
                return false;
            }
            u /= m;
            v /= m;
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fraction_graph_examples() {
        let e5 = fraction_graph(5, 1).unwrap();
        assert!(e5.is_edgeless());
        assert_eq!(e5, Graph::empty(5));

        let c5 = fraction_graph(5, 2).unwrap();
        assert_eq!(c5, Graph::cycle(5).unwrap());

        // enumerate all pairs against the definition
        let g = fraction_graph(7, 3).unwrap();
        for i in 0..7usize {
            for j in 0..7usize {
                let d = (i as i64 - j as i64).rem_euclid(7) as usize;
                let circ = d.min(7 - d);
                let expected = i != j && (circ == 1 || circ == 2);
                assert_eq!(g.is_adjacent(i, j), expected, "pair ({i},{j})");
            }
        }
    }

    #[test]
    fn fraction_graph_rejects_below_two() {
        assert!(fraction_graph(5, 3).is_err());
        assert!(fraction_graph(3, 2).is_err());
        assert!(fraction_graph(0, 1).is_err());
        assert!(fraction_graph(4, 0).is_err());
        assert!(fraction_graph(4, 2).is_ok());
    }

    #[test]
    fn fraction_graphs_are_circulant() {
        for p in 2..=14u64 {
            for q in 1..=p / 2 {
                let g = fraction_graph(p, q).unwrap();
                assert!(g.is_rotation_invariant(), "E_{p}/{q}");
                assert!(g.check_invariants());
            }
        }
    }

    #[test]
    fn no_reduction_of_fraction() {
        let a = fraction_graph(10, 4).unwrap();
        let b = fraction_graph(5, 2).unwrap();
        assert_ne!(a.order(), b.order());
    }

    #[test]
    fn from_edges_rejects_loops() {
        assert!(Graph::from_edges(3, &[(1, 1)]).is_err());
        assert!(Graph::from_edges(3, &[(0, 3)]).is_err());
    }

    #[test]
    fn lazy_product_matches_materialized() {
        let c5 = Graph::cycle(5).unwrap();
        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let lazy = StrongProduct::new(vec![&c5, &p3, &c5]).unwrap();
        let real = strong_product(&strong_product(&c5, &p3), &c5);
        assert_eq!(lazy.order(), real.order());
        for u in 0..real.order() {
            for v in 0..real.order() {
                assert_eq!(lazy.adjacent(u, v), real.is_adjacent(u, v));
            }
            assert_eq!(lazy.encode(&lazy.decode(u)), u);
        }
    }
}
