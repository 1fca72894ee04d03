//! Maximum independent sets by branch and bound.
//!
//! Branching picks the vertex of maximum degree in the remaining candidate
//! subgraph (lowest index on ties) and tries "take it" before "drop it". The
//! bound is a greedy clique cover of the candidates: an independent set meets
//! each clique at most once. Isolated and pendant vertices are always taken,
//! which never loses optimality.

use super::{Adjacency, Graph};
use crate::bitset::VertexSet;
use crate::error::{Error, Result};

pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    pub nodes: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            nodes: DEFAULT_NODE_BUDGET,
        }
    }
}

impl SearchBudget {
    pub fn new(nodes: u64) -> Self {
        SearchBudget { nodes }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndependentSet {
    /// Sorted ascending.
    pub vertices: Vec<usize>,
    /// Search nodes expanded.
    pub nodes: u64,
}

impl IndependentSet {
    pub fn size(&self) -> usize {
        self.vertices.len()
    }
}

struct Search<'g> {
    g: &'g Graph,
    best: Vec<usize>,
    current: Vec<usize>,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    fn clique_cover_size(&self, cand: &VertexSet) -> usize {
        // each entry: vertices adjacent to every member of the clique so far
        let mut commons: Vec<VertexSet> = Vec::new();
        for v in cand.iter() {
            match commons.iter_mut().find(|c| c.contains(v)) {
                Some(c) => c.intersect_with(self.g.neighbors(v)),
                None => commons.push(self.g.neighbors(v).intersection(cand)),
            }
        }
        commons.len()
    }

    fn run(&mut self, mut cand: VertexSet) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExhausted {
                what: "independence number",
                budget: self.budget,
            });
        }
        let mark = self.current.len();

        // forced moves: degree 0 or 1 inside the candidate set
        loop {
            let forced = cand
                .iter()
                .find(|&v| self.g.neighbors(v).intersection_count(&cand) <= 1);
            let Some(v) = forced else { break };
            self.current.push(v);
            cand.remove(v);
            cand.difference_with(self.g.neighbors(v));
        }

        if cand.is_empty() {
            if self.current.len() > self.best.len() {
                self.best = self.current.clone();
            }
        } else if self.current.len() + self.clique_cover_size(&cand) > self.best.len() {
            let mut pivot = usize::MAX;
            let mut pivot_deg = 0;
            for v in cand.iter() {
                let d = self.g.neighbors(v).intersection_count(&cand);
                if pivot == usize::MAX || d > pivot_deg {
                    pivot = v;
                    pivot_deg = d;
                }
            }

            let mut take = cand.clone();
            take.remove(pivot);
            take.difference_with(self.g.neighbors(pivot));
            self.current.push(pivot);
            self.run(take)?;
            self.current.pop();

            cand.remove(pivot);
            self.run(cand)?;
        }

        self.current.truncate(mark);
        Ok(())
    }
}

/// Exact maximum independent set. Budget exhaustion is an error, never a
/// smaller answer.
pub fn max_independent_set(g: &Graph, budget: SearchBudget) -> Result<IndependentSet> {
    let mut search = Search {
        g,
        best: Vec::new(),
        current: Vec::new(),
        nodes: 0,
        budget: budget.nodes,
    };
    search.run(VertexSet::full(g.order()))?;
    let mut vertices = search.best;
    vertices.sort_unstable();
    Ok(IndependentSet {
        vertices,
        nodes: search.nodes,
    })
}

/// True iff `set` is a set of distinct, pairwise non-adjacent vertices of `g`.
pub fn is_independent_set<A: Adjacency + ?Sized>(g: &A, set: &[usize]) -> bool {
    let n = g.order();
    if set.iter().any(|&v| v >= n) {
        return false;
    }
    set.iter().enumerate().all(|(i, &u)| {
        set[i + 1..]
            .iter()
            .all(|&v| u != v && !g.adjacent(u, v))
    })
}

/// `S_1 × S_2` as vertices of `G_1 ⊠ G_2`, where `G_2` has `order2` vertices.
/// Independent when both factors are.
pub fn product_independent_set(s1: &[usize], s2: &[usize], order2: usize) -> Vec<usize> {
    let mut out: Vec<usize> = s1
        .iter()
        .flat_map(|&a| s2.iter().map(move |&b| a * order2 + b))
        .collect();
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{fraction_graph, power, StrongProduct};

    #[test]
    fn small_values() {
        let c5 = Graph::cycle(5).unwrap();
        assert_eq!(max_independent_set(&c5, SearchBudget::default()).unwrap().size(), 2);
        assert_eq!(max_independent_set(&Graph::empty(0), SearchBudget::default()).unwrap().size(), 0);
        assert_eq!(max_independent_set(&Graph::empty(7), SearchBudget::default()).unwrap().size(), 7);
        assert_eq!(max_independent_set(&Graph::complete(7), SearchBudget::default()).unwrap().size(), 1);
    }

    #[test]
    fn c5_squared() {
        let g = power(&Graph::cycle(5).unwrap(), 2).unwrap();
        let s = max_independent_set(&g, SearchBudget::default()).unwrap();
        assert_eq!(s.size(), 5);
        assert!(is_independent_set(&g, &s.vertices));
    }

    #[test]
    fn budget_is_loud() {
        let g = power(&Graph::cycle(5).unwrap(), 2).unwrap();
        let err = max_independent_set(&g, SearchBudget::new(1)).unwrap_err();
        assert!(err.is_budget());
    }

    #[test]
    fn independent_set_checks() {
        let c5 = Graph::cycle(5).unwrap();
        assert!(is_independent_set(&c5, &[0, 2]));
        assert!(!is_independent_set(&c5, &[0, 1]));
        assert!(!is_independent_set(&c5, &[0, 0]));
        assert!(!is_independent_set(&c5, &[7]));
    }

    #[test]
    fn product_of_independent_sets() {
        let c25 = power(&Graph::cycle(5).unwrap(), 2).unwrap();
        let s = max_independent_set(&c25, SearchBudget::default()).unwrap().vertices;
        let big = product_independent_set(&s, &s, 25);
        assert_eq!(big.len(), 25);
        let c5_4 = StrongProduct::new(vec![&c25, &c25]).unwrap();
        assert!(is_independent_set(&c5_4, &big));
        let materialized = power(&Graph::cycle(5).unwrap(), 4).unwrap();
        assert!(is_independent_set(&materialized, &big));
    }

    #[test]
    fn fraction_graph_alpha() {
        // α(E_{p/q}) = floor(p/q)
        for p in 2..=12u64 {
            for q in 1..=p / 2 {
                let g = fraction_graph(p, q).unwrap();
                let a = max_independent_set(&g, SearchBudget::default()).unwrap().size();
                assert_eq!(a as u64, p / q, "E_{p}/{q}");
            }
        }
    }
}
