//! Backtracking search for homomorphisms between complements, with forward
//! checking on target domains.

use super::VertexMap;
use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::graph::{complement, max_independent_set, Graph, SearchBudget, DEFAULT_NODE_BUDGET};

pub const DEFAULT_MATERIALIZE_CAP: u64 = 5000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Node budget for backtracking and independence searches.
    pub budget: u64,
    /// Largest graph order that may be materialized.
    pub materialize_cap: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: DEFAULT_NODE_BUDGET,
            materialize_cap: DEFAULT_MATERIALIZE_CAP,
        }
    }
}

/// A verified cohomomorphism `g → h` if one exists.
///
/// When `g` is edgeless the question is whether `h` has an independent set of
/// size `|g|`, answered by the exact independence search. Otherwise the source
/// vertex with the fewest remaining candidate images is assigned next (lowest
/// index on ties), trying images in ascending order.
pub fn find_cohomomorphism(g: &Graph, h: &Graph, opts: &SearchOptions) -> Result<Option<VertexMap>> {
    let n = g.order();
    if n == 0 {
        return Ok(Some(VertexMap(Vec::new())));
    }
    if g.is_edgeless() {
        let set = max_independent_set(h, SearchBudget::new(opts.budget))?;
        if set.size() < n {
            return Ok(None);
        }
        return Ok(Some(VertexMap(set.vertices[..n].to_vec())));
    }

    let gc = complement(g);
    let hc = complement(h);
    let m = h.order();
    let mut search = Backtrack {
        gc: &gc,
        hc: &hc,
        assignment: vec![usize::MAX; n],
        nodes: 0,
        budget: opts.budget,
    };
    let domains = vec![VertexSet::full(m); n];
    let found = search.run(domains, n)?;
    if !found {
        return Ok(None);
    }
    let map = VertexMap(search.assignment);
    if !super::verify_cohomomorphism(g, h, &map) {
        return Err(Error::Invariant("search produced an invalid cohomomorphism".into()));
    }
    Ok(Some(map))
}

struct Backtrack<'a> {
    gc: &'a Graph,
    hc: &'a Graph,
    assignment: Vec<usize>,
    nodes: u64,
    budget: u64,
}

impl Backtrack<'_> {
    fn run(&mut self, domains: Vec<VertexSet>, remaining: usize) -> Result<bool> {
        if remaining == 0 {
            return Ok(true);
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExhausted {
                what: "cohomomorphism search",
                budget: self.budget,
            });
        }

        let mut pick = None;
        let mut best = usize::MAX;
        for (v, dom) in domains.iter().enumerate() {
            if self.assignment[v] == usize::MAX {
                let size = dom.count();
                if size < best {
                    best = size;
                    pick = Some(v);
                }
            }
        }
        let u = pick.expect("an unassigned vertex remains");
        if best == 0 {
            return Ok(false);
        }

        for t in domains[u].iter() {
            let mut next = domains.clone();
            let mut wiped = false;
            for w in self.gc.neighbors(u).iter() {
                if self.assignment[w] == usize::MAX {
                    next[w].intersect_with(self.hc.neighbors(t));
                    if next[w].is_empty() {
                        wiped = true;
                        break;
                    }
                }
            }
            if wiped {
                continue;
            }
            self.assignment[u] = t;
            if self.run(next, remaining - 1)? {
                return Ok(true);
            }
            self.assignment[u] = usize::MAX;
        }
        Ok(false)
    }
}
