//! Independent re-checking of an [`EmbeddingReport`] from its serialized content.

use serde::{Deserialize, Serialize};

use super::{
    build_family_graph, build_word_graph, compose_family_map, confirm_no_map, Certificate, CircularStep, EmbeddingReport, PipelineConfig,
};
use crate::cohom::{verify_cohomomorphism, verify_cohomomorphism_with, CircularRule, FractionAdjacency};
use crate::exec::Execution;
use crate::lines::{verify_line_table_with, LineTable};
use crate::spectral::{eval_spectral, materialize, GraphExpr};
use crate::words::{encode_finite_preorder, word_leq, AntichainFamily, FinitePreorder};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationFailure {
    /// The offending ordered pair, or `None` for report-wide problems.
    pub pair: Option<[String; 2]>,
    pub reason: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationOutcome {
    pub pairs_checked: usize,
    pub positive: usize,
    pub negative: usize,
    pub steps_checked: usize,
    /// Fraction-graph steps too large to check pairwise.
    pub steps_unchecked: usize,
    pub materialized_checked: usize,
    pub negatives_confirmed: usize,
    pub failures: Vec<VerificationFailure>,
}

impl VerificationOutcome {
    pub fn is_ok(&self) -> bool {
        self.failures.is_empty()
    }

    fn fail(&mut self, pair: Option<[String; 2]>, reason: impl Into<String>) {
        self.failures.push(VerificationFailure {
            pair,
            reason: reason.into(),
        });
    }
}

/// Counts gathered while checking a single certificate.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CertificateStats {
    pub steps_checked: usize,
    pub steps_unchecked: usize,
    pub materialized_checked: usize,
    pub negative_confirmed: bool,
}

pub fn verify_report(rep: &EmbeddingReport) -> VerificationOutcome {
    verify_report_with(Execution::default(), rep)
}

pub fn verify_report_with(exec: Execution, rep: &EmbeddingReport) -> VerificationOutcome {
    let mut out = VerificationOutcome::default();
    let cfg = match PipelineConfig::from_echo(&rep.config).and_then(|c| c.validate().map(|_| c)) {
        Ok(c) => PipelineConfig { exec, ..c },
        Err(e) => {
            out.fail(None, format!("config: {e}"));
            return out;
        }
    };
    let preorder = match FinitePreorder::from_json(&rep.preorder) {
        Ok(p) => p,
        Err(e) => {
            out.fail(None, format!("preorder: {e}"));
            return out;
        }
    };
    let n = preorder.len();
    if encode_finite_preorder(&preorder) != rep.families {
        out.fail(None, "element families differ from the encoding of the preorder");
        return out;
    }

    let tbl = &rep.table;
    if tbl.interval != rep.config.interval {
        out.fail(None, "line table interval differs from the configured interval");
    }
    let violations = verify_line_table_with(exec, tbl).violations;
    for v in violations.iter().take(10) {
        out.fail(None, format!("line table: {v}"));
    }
    if violations.len() > 10 {
        out.fail(None, format!("line table: {} further violations", violations.len() - 10));
    }

    let mut exprs_ok = true;
    for f in &rep.families {
        for w in f.words() {
            match build_word_graph(w, tbl) {
                Ok(e) if rep.words.get(w) == Some(&e) => {}
                Ok(_) => {
                    out.fail(None, format!("expression for word '{w}' does not match its line"));
                    exprs_ok = false;
                }
                Err(e) => {
                    out.fail(None, format!("word '{w}': {e}"));
                    exprs_ok = false;
                }
            }
        }
    }
    if rep.words.len() != rep.families.iter().flat_map(AntichainFamily::words).collect::<std::collections::BTreeSet<_>>().len() {
        out.fail(None, "word expression list has extra entries");
    }
    if rep.expressions.len() != n {
        out.fail(None, "expression list length differs from element count");
        exprs_ok = false;
    } else {
        for (i, f) in rep.families.iter().enumerate() {
            if build_family_graph(f, tbl).ok().as_ref() != Some(&rep.expressions[i]) {
                out.fail(None, format!("family expression for {:?} does not match", preorder.elements()[i]));
                exprs_ok = false;
            }
        }
    }
    if !exprs_ok {
        return out;
    }

    let expected: Vec<(usize, usize)> = (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).filter(|(x, y)| x != y).collect();
    if rep.certificates.len() != expected.len() {
        out.fail(
            None,
            format!("expected {} certificates, found {}", expected.len(), rep.certificates.len()),
        );
    }
    let names = preorder.elements();
    let results = exec.map(&expected, |&(x, y)| {
        let pair = [names[x].clone(), names[y].clone()];
        let Some(pc) = rep
            .certificates
            .iter()
            .find(|c| c.x == names[x] && c.y == names[y])
        else {
            return (pair, Err("missing certificate".to_string()));
        };
        if pc.certificate.is_positive() != preorder.leq(x, y) {
            return (pair, Err("certificate polarity contradicts the preorder".to_string()));
        }
        let res = verify_certificate(
            &rep.families[x],
            &rep.families[y],
            &rep.expressions[x],
            &rep.expressions[y],
            tbl,
            &cfg,
            &pc.certificate,
        );
        (pair, res)
    });
    let order_ok = rep
        .certificates
        .iter()
        .zip(&expected)
        .all(|(c, &(x, y))| c.x == names[x] && c.y == names[y]);
    if !order_ok {
        out.fail(None, "certificates are not in pair order");
    }

    for ((pair, res), &(x, y)) in results.into_iter().zip(&expected) {
        out.pairs_checked += 1;
        match res {
            Ok(stats) => {
                if preorder.leq(x, y) {
                    out.positive += 1;
                } else {
                    out.negative += 1;
                }
                out.steps_checked += stats.steps_checked;
                out.steps_unchecked += stats.steps_unchecked;
                out.materialized_checked += stats.materialized_checked;
                out.negatives_confirmed += usize::from(stats.negative_confirmed);
            }
            Err(reason) => out.fail(Some(pair), reason),
        }
    }
    out
}

fn check_step(step: &CircularStep, from: &crate::Rational, to: &crate::Rational, cap: u64, stats: &mut CertificateStats) -> Result<(), String> {
    if &step.from != from || &step.to != to {
        return Err(format!("step {} -> {} does not match the table ({from} -> {to})", step.from, step.to));
    }
    if from > to {
        return Err(format!("step {from} -> {to} decreases"));
    }
    if step.rule == CircularRule::Identity {
        if from != to {
            return Err(format!("identity step between distinct fractions {from} and {to}"));
        }
        stats.steps_checked += 1;
        return Ok(());
    }
    let sizes = from.to_u64_parts().zip(to.to_u64_parts());
    match sizes {
        Some(((p, q), (r, s))) if p <= cap && r <= cap => {
            let src = FractionAdjacency::new(p, q).map_err(|e| e.to_string())?;
            let tgt = FractionAdjacency::new(r, s).map_err(|e| e.to_string())?;
            let map = step.vertex_map().map_err(|e| e.to_string())?;
            if !verify_cohomomorphism(&src, &tgt, &map) {
                return Err(format!("step map E_{from} -> E_{to} is not a cohomomorphism"));
            }
            stats.steps_checked += 1;
        }
        _ if step.rule == CircularRule::Search => {
            return Err(format!("searched step E_{from} -> E_{to} exceeds the cap"));
        }
        _ => stats.steps_unchecked += 1,
    }
    Ok(())
}

/// Re-checks one certificate for `G_A` versus `G_B`, returning a reason on failure.
pub fn verify_certificate(
    a: &AntichainFamily,
    b: &AntichainFamily,
    ga: &GraphExpr,
    gb: &GraphExpr,
    tbl: &LineTable,
    cfg: &PipelineConfig,
    cert: &Certificate,
) -> Result<CertificateStats, String> {
    let mut stats = CertificateStats::default();
    let m = cfg.generator.order();
    let entry = |w: &crate::words::Word| tbl.get(w).ok_or_else(|| format!("word '{w}' missing from the table"));
    match cert {
        Certificate::Positive { summands, materialized } => {
            if summands.len() != a.len() || !summands.iter().zip(a.words()).all(|(s, w)| &s.source == w) {
                return Err("summand sources do not list the source family in order".into());
            }
            for sm in summands {
                if !b.contains(&sm.target) {
                    return Err(format!("summand target '{}' is not in the target family", sm.target));
                }
                if !word_leq(&sm.source, &sm.target) {
                    return Err(format!("summand '{}' is not below its target '{}'", sm.source, sm.target));
                }
                let (es, et) = (entry(&sm.source)?, entry(&sm.target)?);
                check_step(&sm.scaled, &es.line.a, &et.line.a, cfg.materialize_cap, &mut stats)
                    .map_err(|e| format!("summand '{}': {e}", sm.source))?;
                check_step(&sm.constant, &es.line.b, &et.line.b, cfg.materialize_cap, &mut stats)
                    .map_err(|e| format!("summand '{}': {e}", sm.source))?;
            }
            if let Some(mm) = materialized {
                let src = materialize(ga, &cfg.generator, cfg.materialize_cap).map_err(|e| format!("source: {e}"))?;
                let tgt = materialize(gb, &cfg.generator, cfg.materialize_cap).map_err(|e| format!("target: {e}"))?;
                if mm.source_order != src.order() || mm.target_order != tgt.order() {
                    return Err("materialized map orders do not match the graphs".into());
                }
                if !verify_cohomomorphism_with(cfg.exec, &src, &tgt, &mm.map) {
                    return Err("materialized map is not a cohomomorphism".into());
                }
                let composed = compose_family_map(a, b, summands, tbl, m).map_err(|e| e.to_string())?;
                if composed.map != mm.map {
                    return Err("materialized map differs from the composition of its summands".into());
                }
                stats.materialized_checked += 1;
            }
        }
        Certificate::Negative {
            witness,
            r,
            lhs,
            rhs,
            confirmed,
        } => {
            if !a.contains(witness) {
                return Err(format!("witness '{witness}' is not in the source family"));
            }
            let ew = entry(witness)?;
            if &ew.r != r {
                return Err(format!("witness value {r} differs from the table's {}", ew.r));
            }
            let l = ew.line.eval(r);
            if &l != lhs {
                return Err(format!("lhs {lhs} differs from the recomputed {l}"));
            }
            let best = b
                .words()
                .map(|v| entry(v).map(|e| e.line.eval(r)))
                .collect::<Result<Vec<_>, _>>()?
                .into_iter()
                .max()
                .ok_or("empty target family")?;
            if &best != rhs {
                return Err(format!("rhs {rhs} differs from the recomputed {best}"));
            }
            if lhs <= rhs {
                return Err(format!("witness inequality fails: {lhs} <= {rhs}"));
            }
            if eval_spectral(gb, r) != *rhs || eval_spectral(ga, r) < *lhs {
                return Err("family expressions disagree with the witness values".into());
            }
            if *confirmed == Some(true) {
                let src = materialize(ga, &cfg.generator, cfg.materialize_cap).map_err(|e| format!("source: {e}"))?;
                let tgt = materialize(gb, &cfg.generator, cfg.materialize_cap).map_err(|e| format!("target: {e}"))?;
                match confirm_no_map(&src, &tgt, &cfg.search_options()) {
                    Ok(true) => stats.negative_confirmed = true,
                    Ok(false) => return Err("search found a map for a negative pair".into()),
                    Err(e) => return Err(format!("confirmation search: {e}")),
                }
            }
        }
    }
    Ok(stats)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pipeline::embed_preorder;
    use crate::Rational;

    #[test]
    fn fresh_reports_verify() {
        let rep = embed_preorder(&FinitePreorder::chain(3), &PipelineConfig::default()).unwrap();
        let out = verify_report(&rep);
        assert!(out.is_ok(), "{:?}", out.failures);
        assert_eq!((out.positive, out.negative), (3, 3));
        assert_eq!(out, verify_report_with(Execution::Sequential, &rep));
    }

    #[test]
    fn tampered_negative_is_pinpointed() {
        let mut rep = embed_preorder(&FinitePreorder::chain(3), &PipelineConfig::default()).unwrap();
        let idx = rep
            .certificates
            .iter()
            .position(|c| !c.certificate.is_positive())
            .unwrap();
        if let Certificate::Negative { rhs, .. } = &mut rep.certificates[idx].certificate {
            *rhs = &*rhs + &Rational::new(1, 1000);
        }
        let out = verify_report(&rep);
        assert_eq!(out.failures.len(), 1);
        let pc = &rep.certificates[idx];
        assert_eq!(out.failures[0].pair, Some([pc.x.clone(), pc.y.clone()]));
    }

    #[test]
    fn tampered_materialized_map_is_caught() {
        let rep0 = embed_preorder(&FinitePreorder::chain(2), &PipelineConfig::default()).unwrap();
        let mut rep = rep0.clone();
        let idx = rep.certificates.iter().position(|c| c.certificate.is_positive()).unwrap();
        if let Certificate::Positive { materialized: Some(mm), .. } = &mut rep.certificates[idx].certificate {
            mm.map.0[1] = mm.map.0[0];
        } else {
            panic!("chain of two should materialize");
        }
        let out = verify_report(&rep);
        assert_eq!(out.failures.len(), 1);
        assert!(out.failures[0].pair.is_some());
    }

    #[test]
    fn json_round_trip_gives_identical_outcome() {
        let rep = embed_preorder(&FinitePreorder::chain(3), &PipelineConfig::default()).unwrap();
        let text = rep.to_json();
        let back = EmbeddingReport::from_json(&text).unwrap();
        assert_eq!(back, rep);
        assert_eq!(back.to_json(), text);
        assert_eq!(
            serde_json::to_string(&verify_report(&back)).unwrap(),
            serde_json::to_string(&verify_report(&rep)).unwrap()
        );
    }

    #[test]
    fn structural_tampering() {
        let rep = embed_preorder(&FinitePreorder::chain(3), &PipelineConfig::default()).unwrap();
        let mut flipped = rep.clone();
        flipped.preorder.leq.clear();
        assert!(!verify_report(&flipped).is_ok());
        let mut dropped = rep.clone();
        dropped.certificates.pop();
        let out = verify_report(&dropped);
        assert!(out.failures.iter().any(|f| f.pair.is_none()));
        assert!(out.failures.iter().any(|f| f.pair.is_some()));
        let mut bent = rep;
        let w = bent.table.entries.keys().last().unwrap().clone();
        bent.table.entries.get_mut(&w).unwrap().line.a = Rational::new(9, 1);
        assert!(!verify_report(&bent).is_ok());
    }
}
