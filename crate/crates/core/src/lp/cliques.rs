use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::graph::Graph;

pub const DEFAULT_CLIQUE_BUDGET: usize = 1_000_000;

/// All inclusion-maximal cliques, each sorted ascending, the list sorted
/// lexicographically. Bron–Kerbosch with Tomita pivoting; fails loudly once more
/// than `budget` cliques have been found.
pub fn maximal_cliques(g: &Graph, budget: usize) -> Result<Vec<Vec<usize>>> {
    let n = g.order();
    let mut out = Vec::new();
    if n == 0 {
        return Ok(out);
    }
    let mut r = Vec::new();
    expand(g, &mut r, VertexSet::full(n), VertexSet::empty(n), &mut out, budget)?;
    for c in out.iter_mut() {
        c.sort_unstable();
    }
    out.sort();
    Ok(out)
}

fn expand(
    g: &Graph,
    r: &mut Vec<usize>,
    mut p: VertexSet,
    mut x: VertexSet,
    out: &mut Vec<Vec<usize>>,
    budget: usize,
) -> Result<()> {
    if p.is_empty() {
        if x.is_empty() {
            if out.len() >= budget {
                return Err(Error::BudgetExhausted {
                    what: "maximal clique enumeration",
                    budget: budget as u64,
                });
            }
            out.push(r.clone());
        }
        return Ok(());
    }
    let pivot = p
        .iter()
        .chain(x.iter())
        .max_by_key(|&u| (g.neighbors(u).intersection_count(&p), std::cmp::Reverse(u)))
        .expect("p is non-empty");
    let branch = p.difference(g.neighbors(pivot));
    for v in branch.iter() {
        r.push(v);
        expand(
            g,
            r,
            p.intersection(g.neighbors(v)),
            x.intersection(g.neighbors(v)),
            out,
            budget,
        )?;
        r.pop();
        p.remove(v);
        x.insert(v);
    }
    Ok(())
}
