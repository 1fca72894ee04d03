use super::Graph;
use crate::bitset::VertexSet;
use crate::error::{Error, Result};

/// `G ⊠ H`: `(g, h) ~ (g', h')` iff the pairs differ and each coordinate is equal or adjacent.
pub fn strong_product(g: &Graph, h: &Graph) -> Graph {
    let (m, k) = (g.order(), h.order());
    let n = m * k;
    let closed = |graph: &Graph, v: usize| {
        let mut row = graph.neighbors(v).clone();
        row.insert(v);
        row
    };
    let h_closed: Vec<Vec<usize>> = (0..k).map(|b| closed(h, b).to_vec()).collect();
    let adj = (0..n)
        .map(|v| {
            let (a, b) = (v / k, v % k);
            let mut row = VertexSet::empty(n);
            for a2 in closed(g, a).iter() {
                for &b2 in &h_closed[b] {
                    row.insert(a2 * k + b2);
                }
            }
            row.remove(v);
            row
        })
        .collect();
    Graph::from_rows(adj)
}

/// `G ⊔ H`, with the vertices of `G` first.
pub fn disjoint_union(g: &Graph, h: &Graph) -> Graph {
    let (m, n) = (g.order(), g.order() + h.order());
    let adj = (0..n)
        .map(|v| {
            if v < m {
                VertexSet::from_iter(n, g.neighbors(v).iter())
            } else {
                VertexSet::from_iter(n, h.neighbors(v - m).iter().map(|u| u + m))
            }
        })
        .collect();
    Graph::from_rows(adj)
}

pub fn complement(g: &Graph) -> Graph {
    let adj = (0..g.order())
        .map(|v| {
            let mut row = g.neighbors(v).complement();
            row.remove(v);
            row
        })
        .collect();
    Graph::from_rows(adj)
}

/// `G + H`: the disjoint union plus every edge between the two parts.
pub fn join(g: &Graph, h: &Graph) -> Graph {
    let (m, n) = (g.order(), g.order() + h.order());
    let adj = (0..n)
        .map(|v| {
            if v < m {
                let mut row = VertexSet::from_iter(n, g.neighbors(v).iter());
                for u in m..n {
                    row.insert(u);
                }
                row
            } else {
                let mut row = VertexSet::from_iter(n, h.neighbors(v - m).iter().map(|u| u + m));
                for u in 0..m {
                    row.insert(u);
                }
                row
            }
        })
        .collect();
    Graph::from_rows(adj)
}

/// `G^⊠n` for `n >= 1`, folding left so the first factor is most significant.
pub fn power(g: &Graph, n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::invalid("graph power exponent must be positive"));
    }
    let mut acc = g.clone();
    for _ in 1..n {
        acc = strong_product(&acc, g);
    }
    acc.label = None;
    Ok(acc)
}

/// Subgraph induced on `vertices`; the new indices follow ascending order of the
/// originals. Duplicates are ignored.
pub fn induced_subgraph(g: &Graph, vertices: &[usize]) -> Result<Graph> {
    let mut keep: Vec<usize> = vertices.to_vec();
    keep.sort_unstable();
    keep.dedup();
    if let Some(&bad) = keep.iter().find(|&&v| v >= g.order()) {
        return Err(Error::invalid(format!("vertex {bad} not in graph of order {}", g.order())));
    }
    let n = keep.len();
    let adj = keep
        .iter()
        .map(|&v| VertexSet::from_iter(n, (0..n).filter(|&j| g.is_adjacent(v, keep[j]))))
        .collect();
    Ok(Graph::from_rows(adj))
}
