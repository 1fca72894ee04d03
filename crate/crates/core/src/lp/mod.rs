//! Exact linear programming and the fractional clique covering number.

mod cliques;
mod simplex;

pub use cliques::{maximal_cliques, DEFAULT_CLIQUE_BUDGET};
pub use simplex::{rational_simplex, Constraint, LinearProgram, LpSolution, Relation, Sense};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::bitset::VertexSet;
use crate::graph::{induced_subgraph, Graph};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedClique {
    pub vertices: Vec<usize>,
    pub weight: Rational,
}

/// An optimal fractional clique cover. Only cliques of positive weight are listed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverSolution {
    pub value: Rational,
    pub cliques: Vec<WeightedClique>,
}

impl CoverSolution {
    /// Checks the cover invariants against `g`: each listed set is a clique with
    /// non-negative weight, each vertex is covered with total weight at least one,
    /// and `value` is the total weight.
    pub fn is_valid_for(&self, g: &Graph) -> bool {
        let n = g.order();
        let mut covered = vec![Rational::zero(); n];
        for c in &self.cliques {
            if c.weight.is_negative() || c.vertices.iter().any(|&v| v >= n) {
                return false;
            }
            let is_clique = c.vertices.iter().enumerate().all(|(i, &a)| {
                c.vertices[i + 1..].iter().all(|&b| a != b && g.is_adjacent(a, b))
            });
            if !is_clique {
                return false;
            }
            for &v in &c.vertices {
                covered[v] = &covered[v] + &c.weight;
            }
        }
        let total: Rational = self.cliques.iter().map(|c| c.weight.clone()).sum();
        covered.iter().all(|w| *w >= Rational::one()) && total == self.value
    }
}

/// χ̄_f(G): minimize the total weight on cliques such that every vertex is
/// covered with weight at least one.
///
/// The value is additive over connected components and is the maximum over the
/// parts of a join (components of the complement), so the graph is split along
/// both before any linear program is solved. On the remaining pieces only
/// maximal cliques are used as columns: weight on any clique can be moved to a
/// maximal clique containing it without changing the objective or reducing any
/// vertex's coverage, so the optimum is unchanged.
pub fn fractional_clique_cover(g: &Graph, clique_budget: usize) -> Result<CoverSolution> {
    let cover = decomposed_cover(g, clique_budget)?;
    if !cover.is_valid_for(g) {
        return Err(Error::Invariant("fractional clique cover failed validation".into()));
    }
    Ok(cover)
}

/// Vertex sets of the connected components of `g`, or of its complement.
fn components(g: &Graph, complemented: bool) -> Vec<Vec<usize>> {
    let n = g.order();
    let mut unseen = VertexSet::full(n);
    let mut out = Vec::new();
    while let Some(start) = unseen.first() {
        unseen.remove(start);
        let mut comp = vec![start];
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            let mut next = unseen.clone();
            if complemented {
                next.difference_with(g.neighbors(v));
            } else {
                next.intersect_with(g.neighbors(v));
            }
            for w in next.iter() {
                unseen.remove(w);
                comp.push(w);
                stack.push(w);
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

fn decomposed_cover(g: &Graph, clique_budget: usize) -> Result<CoverSolution> {
    if g.order() == 0 {
        return Ok(CoverSolution {
            value: Rational::zero(),
            cliques: Vec::new(),
        });
    }
    let parts = components(g, false);
    if parts.len() > 1 {
        let mut value = Rational::zero();
        let mut cliques = Vec::new();
        for part in parts {
            let sub = decomposed_cover(&induced_subgraph(g, &part)?, clique_budget)?;
            value = &value + &sub.value;
            cliques.extend(relabel(sub.cliques, &part));
        }
        return Ok(CoverSolution { value, cliques });
    }
    let parts = components(g, true);
    if parts.len() > 1 {
        let mut acc = CoverSolution {
            value: Rational::zero(),
            cliques: Vec::new(),
        };
        for part in parts {
            let sub = decomposed_cover(&induced_subgraph(g, &part)?, clique_budget)?;
            let sub = CoverSolution {
                value: sub.value,
                cliques: relabel(sub.cliques, &part),
            };
            acc = overlay(acc, sub);
        }
        return Ok(acc);
    }
    lp_cover(g, clique_budget)
}

fn relabel(cliques: Vec<WeightedClique>, part: &[usize]) -> Vec<WeightedClique> {
    cliques
        .into_iter()
        .map(|c| WeightedClique {
            vertices: c.vertices.iter().map(|&v| part[v]).collect(),
            weight: c.weight,
        })
        .collect()
}

/// Cover of the join of two vertex-disjoint, fully adjacent parts: lay both
/// weight lists along a line from zero and unite the cliques over each overlap.
fn overlay(a: CoverSolution, b: CoverSolution) -> CoverSolution {
    let value = a.value.clone().max(b.value.clone());
    let mut out = Vec::new();
    let mut ia = a.cliques.into_iter().peekable();
    let mut ib = b.cliques.into_iter().peekable();
    let mut left_a = ia.peek().map(|c| c.weight.clone());
    let mut left_b = ib.peek().map(|c| c.weight.clone());
    loop {
        match (left_a.clone(), left_b.clone()) {
            (None, None) => break,
            (Some(wa), None) => {
                let c = ia.next().expect("peeked");
                out.push(WeightedClique { vertices: c.vertices, weight: wa });
                left_a = ia.peek().map(|c| c.weight.clone());
            }
            (None, Some(wb)) => {
                let c = ib.next().expect("peeked");
                out.push(WeightedClique { vertices: c.vertices, weight: wb });
                left_b = ib.peek().map(|c| c.weight.clone());
            }
            (Some(wa), Some(wb)) => {
                let piece = wa.clone().min(wb.clone());
                let mut vertices: Vec<usize> = ia.peek().expect("peeked").vertices.clone();
                vertices.extend(&ib.peek().expect("peeked").vertices);
                vertices.sort_unstable();
                out.push(WeightedClique {
                    vertices,
                    weight: piece.clone(),
                });
                left_a = Some(&wa - &piece);
                left_b = Some(&wb - &piece);
                if left_a.as_ref().is_some_and(Rational::is_zero) {
                    ia.next();
                    left_a = ia.peek().map(|c| c.weight.clone());
                }
                if left_b.as_ref().is_some_and(Rational::is_zero) {
                    ib.next();
                    left_b = ib.peek().map(|c| c.weight.clone());
                }
            }
        }
    }
    CoverSolution { value, cliques: out }
}

fn lp_cover(g: &Graph, clique_budget: usize) -> Result<CoverSolution> {
    let cliques = maximal_cliques(g, clique_budget)?;
    let n = g.order();
    let mut lp = LinearProgram::minimize(vec![Rational::one(); cliques.len()]);
    for v in 0..n {
        let row = cliques
            .iter()
            .map(|c| {
                if c.binary_search(&v).is_ok() {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            })
            .collect();
        lp = lp.constrain(row, Relation::Ge, Rational::one());
    }
    let sol = rational_simplex(&lp)?;
    Ok(CoverSolution {
        value: sol.value,
        cliques: cliques
            .into_iter()
            .zip(sol.x)
            .filter(|(_, w)| w.is_positive())
            .map(|(vertices, weight)| WeightedClique { vertices, weight })
            .collect(),
    })
}

/// The plain linear program over all maximal cliques, without decomposition.
pub fn fractional_clique_cover_direct(g: &Graph, clique_budget: usize) -> Result<CoverSolution> {
    let cover = lp_cover(g, clique_budget)?;
    if !cover.is_valid_for(g) {
        return Err(Error::Invariant("fractional clique cover failed validation".into()));
    }
    Ok(cover)
}

pub fn fractional_clique_cover_number(g: &Graph) -> Result<Rational> {
    Ok(fractional_clique_cover(g, DEFAULT_CLIQUE_BUDGET)?.value)
}
