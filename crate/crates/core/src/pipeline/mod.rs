//! From a finite preorder to graph expressions with per-pair certificates.
//!
//! Elements become antichain families of words, words become lines from a line
//! table, and each word `w` becomes `G_w = E_{a_w} ⊠ g ⊔ E_{b_w}`; a family is
//! the join of its words' graphs. For every ordered pair of elements the report
//! carries either an explicit cohomomorphism (built summand by summand from
//! fraction-graph maps) or a witness value at which the target's line envelope
//! is strictly below one of the source's lines.

mod demos;
mod verify;
mod xif;

pub use demos::{demo_antichain, demo_counterexample, AntichainDemo, CounterexampleDemo, ModelWitness};
pub use verify::{verify_certificate, verify_report, verify_report_with, VerificationFailure, VerificationOutcome};
pub use xif::{dyadic_approach, xif_derivation, DerivationRule, DerivationTree};

use std::collections::BTreeMap;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::cohom::{
    circular_map, find_cohomomorphism, floor_map, verify_cohomomorphism, CircularRule, SearchOptions, VertexMap,
};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::graph::{from_graph6, max_independent_set, to_graph6, Graph, SearchBudget, DEFAULT_NODE_BUDGET};
use crate::lp::fractional_clique_cover_number;
use crate::lines::{build_line_table, LineSeeds, LineTable};
use crate::rational::Rational;
use crate::spectral::{eval_spectral, materialize, GraphExpr};
use crate::words::{encode_finite_preorder, family_leq, word_leq, AntichainFamily, FinitePreorder, PreorderJson, Word};

pub const DEFAULT_ELEMENT_CAP: usize = 8;
pub const DEFAULT_CONFIRM_CAP: u64 = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PipelineConfig {
    pub seeds: LineSeeds,
    /// Table depth; defaults to the longest word of the encoding.
    pub depth: Option<usize>,
    pub element_cap: usize,
    pub materialize_cap: u64,
    pub budget: u64,
    /// Search for (and expect not to find) a map on tiny negative pairs.
    pub confirm_negative: bool,
    /// Largest `|G_A| + |G_B|` for which negative confirmation runs.
    pub confirm_cap: u64,
    pub generator: Graph,
    pub exec: Execution,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            seeds: LineSeeds::default(),
            depth: None,
            element_cap: DEFAULT_ELEMENT_CAP,
            materialize_cap: crate::cohom::SearchOptions::default().materialize_cap,
            budget: DEFAULT_NODE_BUDGET,
            confirm_negative: false,
            confirm_cap: DEFAULT_CONFIRM_CAP,
            generator: Graph::cycle(5).expect("C5"),
            exec: Execution::default(),
        }
    }
}

impl PipelineConfig {
    pub fn search_options(&self) -> SearchOptions {
        SearchOptions {
            budget: self.budget,
            materialize_cap: self.materialize_cap,
        }
    }

    pub fn echo(&self, depth: usize) -> ConfigEcho {
        ConfigEcho {
            interval: [self.seeds.s.clone(), self.seeds.t.clone()],
            seeds: SeedEcho {
                a: self.seeds.a.clone(),
                b: self.seeds.b.clone(),
                r: self.seeds.r.clone(),
            },
            depth,
            element_cap: self.element_cap,
            materialize_cap: self.materialize_cap,
            budget: self.budget,
            confirm_negative: self.confirm_negative,
            confirm_cap: self.confirm_cap,
            generator: to_graph6(&self.generator),
        }
    }

    pub fn from_echo(echo: &ConfigEcho) -> Result<Self> {
        Ok(PipelineConfig {
            seeds: LineSeeds {
                s: echo.interval[0].clone(),
                t: echo.interval[1].clone(),
                a: echo.seeds.a.clone(),
                b: echo.seeds.b.clone(),
                r: echo.seeds.r.clone(),
            },
            depth: Some(echo.depth),
            element_cap: echo.element_cap,
            materialize_cap: echo.materialize_cap,
            budget: echo.budget,
            confirm_negative: echo.confirm_negative,
            confirm_cap: echo.confirm_cap,
            generator: from_graph6(&echo.generator)?,
            exec: Execution::default(),
        })
    }

    pub fn validate(&self) -> Result<()> {
        self.seeds.validate()?;
        if self.element_cap == 0 || self.materialize_cap == 0 || self.budget == 0 {
            return Err(Error::invalid("caps and budgets must be positive"));
        }
        if self.generator.order() == 0 {
            return Err(Error::invalid("generator must have at least one vertex"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedEcho {
    pub a: Rational,
    pub b: Rational,
    pub r: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub interval: [Rational; 2],
    pub seeds: SeedEcho,
    pub depth: usize,
    pub element_cap: usize,
    pub materialize_cap: u64,
    pub budget: u64,
    pub confirm_negative: bool,
    pub confirm_cap: u64,
    /// graph6 of the generator.
    pub generator: String,
}

/// One fraction-graph map `E_from → E_to` used inside a positive certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CircularStep {
    pub from: Rational,
    pub to: Rational,
    pub rule: CircularRule,
    /// Whether the map was checked pairwise; large steps rely on the floor rule alone.
    pub verified: bool,
    /// Present only for maps found by search; identity and floor maps are implied.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub map: Option<VertexMap>,
}

impl CircularStep {
    /// The explicit vertex map, for steps small enough to spell out.
    pub fn vertex_map(&self) -> Result<VertexMap> {
        let (p, _) = fraction_parts(&self.from)?;
        let (r, _) = fraction_parts(&self.to)?;
        Ok(match self.rule {
            CircularRule::Identity => VertexMap::identity(p as usize),
            CircularRule::Floor => floor_map(p, r),
            CircularRule::Search => self
                .map
                .clone()
                .ok_or_else(|| Error::invalid("search step without a stored map"))?,
        })
    }
}

/// `G_source → G_target` as the product of a map on the scaled part, the
/// generator identity, and a map on the constant part.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummandMap {
    pub source: Word,
    pub target: Word,
    pub scaled: CircularStep,
    pub constant: CircularStep,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaterializedMap {
    pub source_order: usize,
    pub target_order: usize,
    pub map: VertexMap,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    Positive {
        summands: Vec<SummandMap>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        materialized: Option<MaterializedMap>,
    },
    Negative {
        witness: Word,
        r: Rational,
        lhs: Rational,
        rhs: Rational,
        /// `Some(true)` when an exhaustive search on the materializations found no map.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        confirmed: Option<bool>,
    },
}

impl Certificate {
    pub fn is_positive(&self) -> bool {
        matches!(self, Certificate::Positive { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairCertificate {
    pub x: String,
    pub y: String,
    pub certificate: Certificate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingReport {
    pub preorder: PreorderJson,
    pub config: ConfigEcho,
    /// Aligned with `preorder.elements`.
    pub families: Vec<AntichainFamily>,
    pub table: LineTable,
    pub words: BTreeMap<Word, GraphExpr>,
    /// Aligned with `preorder.elements`.
    pub expressions: Vec<GraphExpr>,
    /// Ordered pairs of distinct elements, in index order.
    pub certificates: Vec<PairCertificate>,
}

impl EmbeddingReport {
    pub fn positive_count(&self) -> usize {
        self.certificates.iter().filter(|c| c.certificate.is_positive()).count()
    }

    pub fn negative_count(&self) -> usize {
        self.certificates.len() - self.positive_count()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

fn fraction_parts(x: &Rational) -> Result<(u64, u64)> {
    x.to_u64_parts()
        .ok_or_else(|| Error::invalid(format!("fraction {x} does not fit machine integers")))
}

/// `E_{a_w} ⊠ g ⊔ E_{b_w}`.
pub fn build_word_graph(w: &Word, tbl: &LineTable) -> Result<GraphExpr> {
    let e = tbl.get(w).ok_or_else(|| Error::MissingWord(w.to_string()))?;
    GraphExpr::line_graph(&e.line.a, &e.line.b)
}

/// Join of the word graphs of `a`, in shortlex order.
pub fn build_family_graph(a: &AntichainFamily, tbl: &LineTable) -> Result<GraphExpr> {
    GraphExpr::join_all(a.words().map(|w| build_word_graph(w, tbl)).collect::<Result<Vec<_>>>()?)
}

/// The map `E_from → E_to`, verified pairwise when both sides fit under `cap`.
fn circular_step(from: &Rational, to: &Rational, opts: &SearchOptions) -> Result<CircularStep> {
    if from > to {
        return Err(Error::Invariant(format!("summand step {from} -> {to} decreases")));
    }
    let step = |rule, verified, map| CircularStep {
        from: from.clone(),
        to: to.clone(),
        rule,
        verified,
        map,
    };
    if from == to {
        return Ok(step(CircularRule::Identity, true, None));
    }
    let (Some((p, q)), Some((r, s))) = (from.to_u64_parts(), to.to_u64_parts()) else {
        return Ok(step(CircularRule::Floor, false, None));
    };
    if p > opts.materialize_cap || r > opts.materialize_cap {
        return Ok(step(CircularRule::Floor, false, None));
    }
    let (m, rule) = circular_map(p, q, r, s, opts)?.ok_or_else(|| Error::Invariant(format!("no map E_{from} -> E_{to}")))?;
    Ok(step(rule, true, (rule == CircularRule::Search).then_some(m)))
}

/// Vertex offsets of each summand of a family graph, and the sizes of its two parts.
struct SummandLayout {
    offset: usize,
    scaled: usize,
}

fn layout(a: &AntichainFamily, tbl: &LineTable, m: usize) -> Result<(Vec<SummandLayout>, usize)> {
    let mut offset = 0;
    let mut out = Vec::new();
    for w in a.words() {
        let e = tbl.get(w).ok_or_else(|| Error::MissingWord(w.to_string()))?;
        let (pa, _) = fraction_parts(&e.line.a)?;
        let (pb, _) = fraction_parts(&e.line.b)?;
        let scaled = pa as usize * m;
        out.push(SummandLayout { offset, scaled });
        offset += scaled + pb as usize;
    }
    Ok((out, offset))
}

/// Assembles the map `G_A → G_B` from per-summand steps.
pub(crate) fn compose_family_map(
    a: &AntichainFamily,
    b: &AntichainFamily,
    summands: &[SummandMap],
    tbl: &LineTable,
    m: usize,
) -> Result<MaterializedMap> {
    let (src, src_order) = layout(a, tbl, m)?;
    let (tgt, tgt_order) = layout(b, tbl, m)?;
    let target_index: BTreeMap<&Word, usize> = b.words().enumerate().map(|(i, w)| (w, i)).collect();
    let mut map = vec![0usize; src_order];
    for (s, sm) in src.iter().zip(summands) {
        let t = &tgt[*target_index
            .get(&sm.target)
            .ok_or_else(|| Error::invalid(format!("target word '{}' not in family", sm.target)))?];
        let phi = sm.scaled.vertex_map()?;
        let psi = sm.constant.vertex_map()?;
        for (i, &fi) in phi.0.iter().enumerate() {
            for c in 0..m {
                map[s.offset + i * m + c] = t.offset + fi * m + c;
            }
        }
        for (j, &fj) in psi.0.iter().enumerate() {
            map[s.offset + s.scaled + j] = t.offset + t.scaled + fj;
        }
    }
    Ok(MaterializedMap {
        source_order: src_order,
        target_order: tgt_order,
        map: VertexMap(map),
    })
}

/// Certificate for `G_A` versus `G_B`: positive iff `A ≤ B`.
pub fn certify_families(a: &AntichainFamily, b: &AntichainFamily, tbl: &LineTable, cfg: &PipelineConfig) -> Result<Certificate> {
    let opts = cfg.search_options();
    let ga = build_family_graph(a, tbl)?;
    let gb = build_family_graph(b, tbl)?;
    let m = cfg.generator.order();

    if family_leq(a, b) {
        let summands = a
            .words()
            .map(|u| {
                let v = b
                    .words()
                    .find(|v| word_leq(u, v))
                    .expect("family order gives a word above each source word");
                let (eu, ev) = (&tbl.entries[u], &tbl.entries[v]);
                Ok(SummandMap {
                    source: u.clone(),
                    target: v.clone(),
                    scaled: circular_step(&eu.line.a, &ev.line.a, &opts)?,
                    constant: circular_step(&eu.line.b, &ev.line.b, &opts)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let total = ga.order(m) + gb.order(m);
        let materialized = if total <= cfg.materialize_cap.into() {
            let mm = compose_family_map(a, b, &summands, tbl, m)?;
            let src = materialize(&ga, &cfg.generator, cfg.materialize_cap)?;
            let tgt = materialize(&gb, &cfg.generator, cfg.materialize_cap)?;
            if !crate::cohom::verify_cohomomorphism_with(cfg.exec, &src, &tgt, &mm.map) {
                return Err(Error::Invariant("composed family map failed verification".into()));
            }
            Some(mm)
        } else {
            None
        };
        return Ok(Certificate::Positive { summands, materialized });
    }

    let witness = a
        .words()
        .find(|u| !b.words().any(|v| word_leq(u, v)))
        .ok_or_else(|| Error::Invariant("no witness word for a non-relation".into()))?
        .clone();
    let r = tbl.entries[&witness].r.clone();
    let lhs = tbl.entries[&witness].line.eval(&r);
    let rhs = b
        .words()
        .map(|v| tbl.entries[v].line.eval(&r))
        .max()
        .ok_or_else(|| Error::invalid("empty target family"))?;
    if lhs <= rhs {
        return Err(Error::Invariant(format!("witness '{witness}' does not separate: {lhs} <= {rhs}")));
    }
    if eval_spectral(&gb, &r) != rhs || eval_spectral(&ga, &r) < lhs {
        return Err(Error::Invariant("family expressions disagree with their lines".into()));
    }
    let confirmed = if cfg.confirm_negative && ga.order(m) + gb.order(m) <= cfg.confirm_cap.into() {
        let src = materialize(&ga, &cfg.generator, cfg.materialize_cap)?;
        let tgt = materialize(&gb, &cfg.generator, cfg.materialize_cap)?;
        if !confirm_no_map(&src, &tgt, &opts)? {
            return Err(Error::Invariant("a map exists for a pair certified negative".into()));
        }
        Some(true)
    } else {
        None
    };
    Ok(Certificate::Negative {
        witness,
        r,
        lhs,
        rhs,
        confirmed,
    })
}

/// True when no cohomomorphism `src → tgt` exists. Independence number and
/// fractional clique cover number are monotone under cohomomorphisms, so either
/// one dropping settles the question; otherwise an exhaustive search decides.
pub fn confirm_no_map(src: &Graph, tgt: &Graph, opts: &SearchOptions) -> Result<bool> {
    let budget = SearchBudget::new(opts.budget);
    if max_independent_set(src, budget)?.size() > max_independent_set(tgt, budget)?.size() {
        return Ok(true);
    }
    if fractional_clique_cover_number(src)? > fractional_clique_cover_number(tgt)? {
        return Ok(true);
    }
    match find_cohomomorphism(src, tgt, opts)? {
        Some(m) => Ok(!verify_cohomomorphism(src, tgt, &m)),
        None => Ok(true),
    }
}

/// Builds and certifies the embedding of `p`.
pub fn embed_preorder(p: &FinitePreorder, cfg: &PipelineConfig) -> Result<EmbeddingReport> {
    cfg.validate()?;
    let n = p.len();
    if n == 0 {
        return Err(Error::invalid("preorder has no elements"));
    }
    if n > cfg.element_cap {
        return Err(Error::CapExceeded {
            what: "preorder elements",
            size: n as u128,
            cap: cfg.element_cap as u64,
        });
    }
    let families = encode_finite_preorder(p);
    let needed = families.iter().map(AntichainFamily::max_len).max().unwrap_or(0);
    let depth = match cfg.depth {
        Some(d) if d < needed => {
            return Err(Error::invalid(format!("depth {d} is below the encoding length {needed}")));
        }
        Some(d) => d,
        None => needed,
    };
    let table = build_line_table(depth, &cfg.seeds)?;

    let mut words = BTreeMap::new();
    for f in &families {
        for w in f.words() {
            words.insert(w.clone(), build_word_graph(w, &table)?);
        }
    }
    let expressions = families
        .iter()
        .map(|f| build_family_graph(f, &table))
        .collect::<Result<Vec<_>>>()?;

    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).filter(|(x, y)| x != y).collect();
    let certificates = cfg
        .exec
        .map(&pairs, |&(x, y)| {
            let certificate = certify_families(&families[x], &families[y], &table, cfg)?;
            if certificate.is_positive() != p.leq(x, y) {
                return Err(Error::Invariant(format!(
                    "certificate polarity for ({}, {}) disagrees with the input",
                    p.elements()[x],
                    p.elements()[y]
                )));
            }
            Ok(PairCertificate {
                x: p.elements()[x].clone(),
                y: p.elements()[y].clone(),
                certificate,
            })
        })
        .into_iter()
        .collect::<Result<Vec<_>>>()?;

    Ok(EmbeddingReport {
        preorder: p.to_json(),
        config: cfg.echo(depth),
        families,
        table,
        words,
        expressions,
        certificates,
    })
}

/// Vertex count of `e` over `generator`, saturating.
pub fn expression_order(e: &GraphExpr, generator: &Graph) -> u128 {
    e.order(generator.order()).to_u128().unwrap_or(u128::MAX)
}
