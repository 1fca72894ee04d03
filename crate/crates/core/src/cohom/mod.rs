//! Cohomomorphisms: maps sending distinct non-adjacent vertices to distinct
//! non-adjacent vertices, i.e. homomorphisms between complements.

mod probe;
mod search;

pub use probe::{power_relation_probe, power_relation_probe_factored, PowerProbe, ProbeCertificate, ProbeOptions};
pub use search::{find_cohomomorphism, SearchOptions};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::graph::{circular_distance, fraction_graph, to_graph6, Adjacency, Graph};

/// A total assignment of source vertex indices to target vertex indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexMap(pub Vec<usize>);

impl VertexMap {
    pub fn identity(n: usize) -> Self {
        VertexMap((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn image(&self, v: usize) -> usize {
        self.0[v]
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &VertexMap) -> VertexMap {
        VertexMap(self.0.iter().map(|&t| other.0[t]).collect())
    }

    pub fn to_json(&self, source: &Graph, target: &Graph) -> VertexMapJson {
        VertexMapJson {
            source: to_graph6(source),
            target: to_graph6(target),
            map: self.0.clone(),
        }
    }
}

/// `{source: graph6, target: graph6, map: [t_0, t_1, ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexMapJson {
    pub source: String,
    pub target: String,
    pub map: Vec<usize>,
}

/// True iff every distinct non-adjacent source pair lands on a distinct
/// non-adjacent target pair.
pub fn verify_cohomomorphism<S, T>(source: &S, target: &T, map: &VertexMap) -> bool
where
    S: Adjacency + ?Sized,
    T: Adjacency + ?Sized,
{
    verify_cohomomorphism_with(Execution::default(), source, target, map)
}

pub fn verify_cohomomorphism_with<S, T>(exec: Execution, source: &S, target: &T, map: &VertexMap) -> bool
where
    S: Adjacency + ?Sized,
    T: Adjacency + ?Sized,
{
    let n = source.order();
    let m = target.order();
    if map.len() != n || map.0.iter().any(|&t| t >= m) {
        return false;
    }
    exec.all_range(n, |u| {
        let fu = map.0[u];
        (u + 1..n).all(|v| {
            if source.adjacent(u, v) {
                return true;
            }
            let fv = map.0[v];
            fu != fv && !target.adjacent(fu, fv)
        })
    })
}

/// `E_{p/q}` answered from the circular-distance rule, without materializing rows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FractionAdjacency {
    pub p: u64,
    pub q: u64,
}

impl FractionAdjacency {
    pub fn new(p: u64, q: u64) -> Result<Self> {
        if p == 0 || q == 0 || p < 2 * q {
            return Err(Error::invalid(format!("fraction graph needs p/q >= 2; got {p}/{q}")));
        }
        Ok(FractionAdjacency { p, q })
    }
}

impl Adjacency for FractionAdjacency {
    fn order(&self) -> usize {
        self.p as usize
    }

    fn adjacent(&self, u: usize, v: usize) -> bool {
        u != v && circular_distance(u as u64, v as u64, self.p) < self.q
    }
}

/// How a circular map was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CircularRule {
    Identity,
    Floor,
    Search,
}

/// `i ↦ floor(i r / p)`.
pub fn floor_map(p: u64, r: u64) -> VertexMap {
    VertexMap(
        (0..p)
            .map(|i| ((i as u128 * r as u128) / p as u128) as usize)
            .collect(),
    )
}

/// A verified cohomomorphism `E_{p/q} → E_{r/s}` when `p/q <= r/s`, absent otherwise.
///
/// The candidate is `i ↦ floor(i r / p)`; it is verified before being returned
/// and, should verification ever fail, replaced by the result of an exhaustive
/// search. Sizes above `cap` vertices are rejected.
pub fn circular_map(p: u64, q: u64, r: u64, s: u64, opts: &SearchOptions) -> Result<Option<(VertexMap, CircularRule)>> {
    let src = FractionAdjacency::new(p, q)?;
    let tgt = FractionAdjacency::new(r, s)?;
    if (p as u128) * (s as u128) > (r as u128) * (q as u128) {
        return Ok(None);
    }
    for size in [p, r] {
        if size > opts.materialize_cap {
            return Err(Error::CapExceeded {
                what: "circular map",
                size: size as u128,
                cap: opts.materialize_cap,
            });
        }
    }
    if (p, q) == (r, s) {
        return Ok(Some((VertexMap::identity(p as usize), CircularRule::Identity)));
    }
    let candidate = floor_map(p, r);
    if verify_cohomomorphism(&src, &tgt, &candidate) {
        return Ok(Some((candidate, CircularRule::Floor)));
    }
    let g = fraction_graph(p, q)?;
    let h = fraction_graph(r, s)?;
    Ok(find_cohomomorphism(&g, &h, opts)?.map(|m| (m, CircularRule::Search)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verify_examples() {
        let c5 = Graph::cycle(5).unwrap();
        assert!(verify_cohomomorphism(&c5, &c5, &VertexMap::identity(5)));
        let e2 = Graph::empty(2);
        assert!(!verify_cohomomorphism(&e2, &c5, &VertexMap(vec![3, 3])));
        let src = fraction_graph(5, 2).unwrap();
        let tgt = fraction_graph(10, 4).unwrap();
        let doubling = VertexMap((0..5).map(|i| 2 * i % 10).collect());
        assert!(verify_cohomomorphism(&src, &tgt, &doubling));
        // wrong length or out-of-range images
        assert!(!verify_cohomomorphism(&src, &tgt, &VertexMap(vec![0, 2])));
        assert!(!verify_cohomomorphism(&src, &tgt, &VertexMap(vec![0, 2, 4, 6, 10])));
    }

    #[test]
    fn lazy_fraction_adjacency_matches() {
        for p in 2..=13u64 {
            for q in 1..=p / 2 {
                let lazy = FractionAdjacency::new(p, q).unwrap();
                let g = fraction_graph(p, q).unwrap();
                for u in 0..p as usize {
                    for v in 0..p as usize {
                        assert_eq!(lazy.adjacent(u, v), g.is_adjacent(u, v));
                    }
                }
            }
        }
    }

    #[test]
    fn circular_examples() {
        let opts = SearchOptions::default();
        let (m, rule) = circular_map(5, 2, 5, 2, &opts).unwrap().unwrap();
        assert_eq!((m, rule), (VertexMap::identity(5), CircularRule::Identity));
        let (m, rule) = circular_map(5, 2, 10, 4, &opts).unwrap().unwrap();
        assert_eq!(m, VertexMap(vec![0, 2, 4, 6, 8]));
        assert_eq!(rule, CircularRule::Floor);
        let (m, _) = circular_map(5, 2, 8, 3, &opts).unwrap().unwrap();
        assert!(verify_cohomomorphism(
            &fraction_graph(5, 2).unwrap(),
            &fraction_graph(8, 3).unwrap(),
            &m
        ));
        assert!(circular_map(5, 2, 7, 3, &opts).unwrap().is_none());
        assert!(circular_map(5, 3, 7, 3, &opts).is_err());
    }

    #[test]
    fn floor_rule_always_verifies_on_small_fractions() {
        for p in 2..=20u64 {
            for q in 1..=p / 2 {
                for r in 2..=20u64 {
                    for s in 1..=r / 2 {
                        if p * s <= r * q {
                            let m = floor_map(p, r);
                            let src = FractionAdjacency::new(p, q).unwrap();
                            let tgt = FractionAdjacency::new(r, s).unwrap();
                            assert!(verify_cohomomorphism(&src, &tgt, &m), "{p}/{q} -> {r}/{s}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn map_json() {
        let c5 = Graph::cycle(5).unwrap();
        let j = VertexMap::identity(5).to_json(&c5, &c5);
        assert_eq!(
            serde_json::to_string(&j).unwrap(),
            r#"{"source":"Dhc","target":"Dhc","map":[0,1,2,3,4]}"#
        );
    }
}
