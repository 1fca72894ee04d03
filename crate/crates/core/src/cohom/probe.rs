//! Bounded probes of `H^⊠n → G^⊠(n+k)`.
//!
//! For edgeless `H` the target needs an independent set of size `|H|^n`. Such
//! sets are assembled as products of exact maximum independent sets of small
//! powers of the base graph, picking the split of the exponent that gives the
//! largest product, and then checked pairwise on the lazily evaluated power.

use super::{find_cohomomorphism, verify_cohomomorphism, SearchOptions, VertexMap};
use crate::error::{Error, Result};
use crate::graph::{
    is_independent_set, max_independent_set, power, product_independent_set, Graph, SearchBudget,
    StrongProduct,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProbeOptions {
    pub search: SearchOptions,
    /// Largest power of the base graph whose independence number is computed exactly.
    pub exact_alpha_cap: u64,
    /// Largest independent set assembled and checked pairwise.
    pub certificate_cap: u64,
}

impl Default for ProbeOptions {
    fn default() -> Self {
        ProbeOptions {
            search: SearchOptions::default(),
            exact_alpha_cap: 64,
            certificate_cap: 20_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProbeCertificate {
    /// Source and target powers coincide.
    Identity,
    /// Independent set in the target power whose first `|H|^n` entries are the
    /// images of the edgeless source.
    IndependentSet { vertices: Vec<usize>, factors: Vec<usize> },
    /// Explicit map found by search on materialized powers.
    Map(VertexMap),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerProbe {
    pub k: usize,
    pub certificate: ProbeCertificate,
}

/// Smallest `k <= k_max` for which a verified cohomomorphism `h^⊠n → g^⊠(n+k)` is
/// found; `None` when no `k` in range could be certified.
pub fn power_relation_probe(h: &Graph, g: &Graph, n: usize, k_max: usize, opts: &ProbeOptions) -> Result<Option<PowerProbe>> {
    power_relation_probe_factored(h, g, 1, n, k_max, opts)
}

/// As [`power_relation_probe`], with the target given as `base^⊠exponent`. Knowing
/// the factorization lets independent sets be assembled from small powers of `base`.
pub fn power_relation_probe_factored(
    h: &Graph,
    base: &Graph,
    exponent: usize,
    n: usize,
    k_max: usize,
    opts: &ProbeOptions,
) -> Result<Option<PowerProbe>> {
    if n == 0 || exponent == 0 {
        return Err(Error::invalid("probe exponents must be positive"));
    }
    let mut alpha_sets: Vec<Vec<usize>> = Vec::new();
    for k in 0..=k_max {
        let target_exp = exponent * (n + k);
        if k == 0 && exponent == 1 && h == base {
            return Ok(Some(PowerProbe {
                k,
                certificate: ProbeCertificate::Identity,
            }));
        }
        let found = if h.is_edgeless() {
            edgeless_probe(h.order(), n, base, target_exp, &mut alpha_sets, opts)?
        } else {
            general_probe(h, n, base, target_exp, opts)?
        };
        if let Some(certificate) = found {
            return Ok(Some(PowerProbe { k, certificate }));
        }
    }
    Ok(None)
}

/// Fills `alpha_sets[j - 1]` with a maximum independent set of `base^⊠j` for every
/// `j` up to the largest power allowed by the cap (always at least `j = 1`).
fn ensure_alpha_sets(base: &Graph, alpha_sets: &mut Vec<Vec<usize>>, opts: &ProbeOptions) -> Result<()> {
    if !alpha_sets.is_empty() {
        return Ok(());
    }
    let budget = SearchBudget::new(opts.search.budget);
    alpha_sets.push(max_independent_set(base, budget)?.vertices);
    let mut j = 2;
    loop {
        let order = (base.order() as u128).checked_pow(j as u32);
        match order {
            Some(o) if o <= opts.exact_alpha_cap as u128 && base.order() > 1 => {
                let g = power(base, j)?;
                alpha_sets.push(max_independent_set(&g, budget)?.vertices);
                j += 1;
            }
            _ => break,
        }
    }
    Ok(())
}

/// Split of `m` into parts `<= alpha_sets.len()` maximizing the product of set sizes.
fn best_split(m: usize, sizes: &[u128]) -> (u128, Vec<usize>) {
    let mut best: Vec<(u128, Vec<usize>)> = vec![(1, Vec::new())];
    for total in 1..=m {
        let mut choice: (u128, Vec<usize>) = (0, Vec::new());
        for (idx, &size) in sizes.iter().enumerate() {
            let part = idx + 1;
            if part > total {
                break;
            }
            let (prev, ref parts) = best[total - part];
            let value = prev.saturating_mul(size);
            if value > choice.0 {
                let mut p = parts.clone();
                p.push(part);
                choice = (value, p);
            }
        }
        best.push(choice);
    }
    best.swap_remove(m)
}

fn edgeless_probe(
    h_order: usize,
    n: usize,
    base: &Graph,
    target_exp: usize,
    alpha_sets: &mut Vec<Vec<usize>>,
    opts: &ProbeOptions,
) -> Result<Option<ProbeCertificate>> {
    let needed = (h_order as u128)
        .checked_pow(n as u32)
        .ok_or_else(|| Error::invalid("source power overflows"))?;
    if needed > opts.certificate_cap as u128 {
        return Err(Error::CapExceeded {
            what: "independent-set certificate",
            size: needed,
            cap: opts.certificate_cap,
        });
    }
    ensure_alpha_sets(base, alpha_sets, opts)?;
    let sizes: Vec<u128> = alpha_sets.iter().map(|s| s.len() as u128).collect();
    let (size, mut parts) = best_split(target_exp, &sizes);
    if size < needed {
        return Ok(None);
    }
    // larger blocks first; any order gives a valid set, this one is canonical
    parts.sort_unstable_by(|a, b| b.cmp(a));

    let mut set = vec![0usize];
    for &part in &parts {
        let block_order = base.order().pow(part as u32);
        set = product_independent_set(&set, &alpha_sets[part - 1], block_order);
    }
    let target = StrongProduct::power(base, target_exp)?;
    let images = VertexMap(set[..needed as usize].to_vec());
    let source = Graph::empty(needed as usize);
    if !is_independent_set(&target, &set) || !verify_cohomomorphism(&source, &target, &images) {
        return Err(Error::Invariant("assembled independent set failed verification".into()));
    }
    Ok(Some(ProbeCertificate::IndependentSet {
        vertices: set,
        factors: parts,
    }))
}

fn general_probe(h: &Graph, n: usize, base: &Graph, target_exp: usize, opts: &ProbeOptions) -> Result<Option<ProbeCertificate>> {
    let cap = opts.search.materialize_cap as u128;
    let src_order = (h.order() as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    let tgt_order = (base.order() as u128).checked_pow(target_exp as u32).unwrap_or(u128::MAX);
    for (what, size) in [("probe source power", src_order), ("probe target power", tgt_order)] {
        if size > cap {
            return Err(Error::CapExceeded {
                what,
                size,
                cap: opts.search.materialize_cap,
            });
        }
    }
    let src = power(h, n)?;
    let tgt = power(base, target_exp)?;
    Ok(find_cohomomorphism(&src, &tgt, &opts.search)?.map(ProbeCertificate::Map))
}
