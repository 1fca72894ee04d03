//! Acceptance run: one PASS/FAIL line per criterion, each against its time limit.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cohomorder::cohom::{find_cohomomorphism, power_relation_probe_factored, verify_cohomomorphism, ProbeCertificate, ProbeOptions, SearchOptions};
use cohomorder::graph::{fraction_graph, max_independent_set, power, Graph, SearchBudget, StrongProduct};
use cohomorder::lines::{build_line_table, ordering_polynomials, verify_line_table, LineSeeds};
use cohomorder::lp::fractional_clique_cover_number;
use cohomorder::pipeline::{
    certify_families, demo_counterexample, dyadic_approach, embed_preorder, expression_order, verify_report, xif_derivation,
    Certificate, PipelineConfig,
};
use cohomorder::spectral::{eval_spectral, materialize, GraphExpr};
use cohomorder::words::{AntichainFamily, FinitePreorder, Word};
use cohomorder::Rational;

type Check = std::result::Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Check);

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn fractions(max_p: u64) -> Vec<(u64, u64)> {
    (2..=max_p).flat_map(|p| (1..=p / 2).map(move |q| (p, q))).collect()
}

fn normalization() -> Check {
    let mut n = 0;
    for (p, d) in fractions(12) {
        let g = fraction_graph(p, d).map_err(|e| e.to_string())?;
        let v = fractional_clique_cover_number(&g).map_err(|e| e.to_string())?;
        ensure(v == Rational::new(p, d), || format!("E_{p}/{d}: got {v}"))?;
        n += 1;
    }
    Ok(format!("{n} fraction graphs"))
}

fn shannon_anchor() -> Check {
    let c5 = Graph::cycle(5).unwrap();
    let budget = SearchBudget::new(u64::MAX);
    let a2 = max_independent_set(&power(&c5, 2).unwrap(), budget).map_err(|e| e.to_string())?;
    let a3 = max_independent_set(&power(&c5, 3).unwrap(), budget).map_err(|e| e.to_string())?;
    ensure(a2.size() == 5 && a3.size() == 10, || format!("alpha = {}, {}", a2.size(), a3.size()))?;
    Ok("alpha(C5^2) = 5, alpha(C5^3) = 10".into())
}

fn fraction_order() -> Check {
    let fr = fractions(9);
    let graphs: Vec<Graph> = fr.iter().map(|&(p, d)| fraction_graph(p, d).unwrap()).collect();
    let opts = SearchOptions::default();
    let mut found = 0;
    for (i, &(p, d)) in fr.iter().enumerate() {
        for (j, &(r, s)) in fr.iter().enumerate() {
            let m = find_cohomomorphism(&graphs[i], &graphs[j], &opts).map_err(|e| e.to_string())?;
            let expect = p * s <= r * d;
            ensure(m.is_some() == expect, || format!("E_{p}/{d} -> E_{r}/{s}: found {}", m.is_some()))?;
            if let Some(m) = m {
                ensure(verify_cohomomorphism(&graphs[i], &graphs[j], &m), || format!("bad map {p}/{d} -> {r}/{s}"))?;
                found += 1;
            }
        }
    }
    Ok(format!("{} ordered pairs, {found} maps", fr.len() * fr.len()))
}

fn c5_adjacent(u: usize, v: usize) -> bool {
    let d = (u + 5 - v) % 5;
    d == 1 || d == 4
}

fn asymptotic_gap() -> Check {
    let c5 = Graph::cycle(5).unwrap();
    let c5_3 = power(&c5, 3).unwrap();
    let e11 = Graph::empty(11);
    let direct = find_cohomomorphism(&e11, &c5_3, &SearchOptions::default()).map_err(|e| e.to_string())?;
    ensure(direct.is_none(), || "E_11 -> C5^3 found".into())?;
    let probe = power_relation_probe_factored(&e11, &c5, 3, 2, 0, &ProbeOptions::default())
        .map_err(|e| e.to_string())?
        .ok_or("probe found nothing")?;
    ensure(probe.k == 0, || format!("k = {}", probe.k))?;
    let ProbeCertificate::IndependentSet { vertices, .. } = probe.certificate else {
        return Err("probe certificate is not an independent set".into());
    };
    ensure(vertices.len() == 125, || format!("set of size {}", vertices.len()))?;
    // pairwise check with coordinates decoded independently
    let coords = |mut v: usize| {
        let mut c = [0usize; 6];
        for slot in c.iter_mut().rev() {
            *slot = v % 5;
            v /= 5;
        }
        c
    };
    let sp = StrongProduct::power(&c5, 6).unwrap();
    for (i, &u) in vertices.iter().enumerate() {
        ensure(u < 15625 && sp.decode(u) == coords(u), || format!("vertex {u} out of range"))?;
        for &v in &vertices[..i] {
            let (cu, cv) = (coords(u), coords(v));
            let adjacent = u == v || cu.iter().zip(&cv).all(|(a, b)| a == b || c5_adjacent(*a, *b));
            ensure(!adjacent, || format!("{u} and {v} adjacent"))?;
        }
    }
    Ok("E_11 not below C5^3; 125-vertex independent set in C5^6 checked".into())
}

fn line_table_invariants() -> Check {
    let t = build_line_table(5, &LineSeeds::default()).map_err(|e| e.to_string())?;
    let r = verify_line_table(&t);
    ensure(r.pairs_checked == 3969 && r.violations.is_empty(), || {
        format!("{} pairs, {} violations", r.pairs_checked, r.violations.len())
    })?;
    Ok(format!("63 words, 3969 pairs, largest denominator {} bits", r.max_denominator_bits))
}

fn pipeline() -> Check {
    let p = FinitePreorder::power_set(3);
    let rep = embed_preorder(&p, &PipelineConfig::default()).map_err(|e| e.to_string())?;
    ensure(rep.positive_count() == 19 && rep.negative_count() == 37, || {
        format!("{} positive, {} negative", rep.positive_count(), rep.negative_count())
    })?;
    let name = |s: &str| p.elements().iter().position(|e| e == s).unwrap();
    for c in &rep.certificates {
        let subset = p.leq(name(&c.x), name(&c.y));
        ensure(c.certificate.is_positive() == subset, || format!("polarity of ({}, {})", c.x, c.y))?;
    }
    let out = verify_report(&rep);
    ensure(out.is_ok(), || format!("{} verification failures", out.failures.len()))?;
    Ok(format!("19 positive, 37 negative, {} steps checked", out.steps_checked))
}

fn counterexample() -> Check {
    let d = demo_counterexample().map_err(|e| e.to_string())?;
    ensure(d.crossing == q(7, 3), || format!("crossing at {}", d.crossing))?;
    ensure(d.interval == [q(9, 4), q(5, 2)], || "interval".into())?;
    ensure(d.is_certified(), || "demo does not re-verify".into())?;
    Ok("pairwise incomparable; H1+H2 dominated by H1+H3 on [9/4, 5/2]; crossing 7/3".into())
}

fn ordering() -> Check {
    let points: Vec<Rational> = (1..=6).map(|k| q(9, 4) + q(k, 28)).collect();
    let polys = ordering_polynomials(3, &points, (&q(9, 4), &q(5, 2))).map_err(|e| e.to_string())?;
    let two = Rational::from(2);
    ensure(polys.iter().all(|p| p.coefficients().iter().all(|c| *c >= two)), || "coefficient below 2".into())?;
    let mut seen = std::collections::BTreeSet::new();
    for x in &points {
        let vals: Vec<Rational> = polys.iter().map(|p| p.eval(x)).collect();
        let mut order: Vec<usize> = (0..3).collect();
        order.sort_by(|&i, &j| vals[j].cmp(&vals[i]));
        ensure(vals.iter().collect::<std::collections::BTreeSet<_>>().len() == 3, || format!("tie at {x}"))?;
        seen.insert(order);
    }
    ensure(seen.len() == 6, || format!("{} orderings", seen.len()))?;
    Ok("6 orderings at 6 points, all coefficients >= 2".into())
}

fn xif() -> Check {
    let mut trees = 0;
    for n in 1..=6 {
        let p = 1u64 << n;
        for d in 1..=p / 2 {
            let t = xif_derivation(p, d).map_err(|e| format!("{p}/{d}: {e}"))?;
            ensure(t.validate().is_ok() && t.leaves_are_base(), || format!("{p}/{d}"))?;
            trees += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..50 {
        let d: u64 = rng.gen_range(1..=30);
        let p: u64 = 2 * d + rng.gen_range(0..=60);
        let eps = q(1, rng.gen_range(1..=1000));
        let (n, dq) = dyadic_approach(p, d, &eps).map_err(|e| e.to_string())?;
        let target = Rational::new(p, d);
        let value = Rational::from(BigInt::from(1) << n) / Rational::from(dq.clone());
        ensure(value <= target && &target - &value <= eps, || format!("{p}/{d} eps {eps}: {value}"))?;
        ensure(dq <= BigInt::from(1) << (n - 1), || format!("{p}/{d}: q' too large"))?;
        for m in 1..n {
            let two_m = BigInt::from(1) << m;
            let best = (Rational::from(&two_m * BigInt::from(d)) / Rational::from(p as i64)).ceil();
            ensure(Rational::from(two_m) / Rational::from(best) < &target - &eps, || format!("{p}/{d}: n not minimal"))?;
        }
    }
    Ok(format!("{trees} derivations, 50 dyadic post-conditions"))
}

fn random_expr(rng: &mut ChaCha8Rng, depth: u32) -> GraphExpr {
    if depth == 0 || rng.gen_bool(0.3) {
        return if rng.gen_bool(0.3) {
            GraphExpr::Generator
        } else {
            let d: u64 = rng.gen_range(1..=4);
            GraphExpr::fraction(2 * d + rng.gen_range(0..6), d).unwrap()
        };
    }
    let a = random_expr(rng, depth - 1);
    match rng.gen_range(0..4) {
        0 => GraphExpr::product(a, random_expr(rng, depth - 1)),
        1 => GraphExpr::union(a, random_expr(rng, depth - 1)),
        2 => GraphExpr::join(a, random_expr(rng, depth - 1)),
        _ => GraphExpr::power(a, rng.gen_range(1..=3)).unwrap(),
    }
}

fn spectral() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..200 {
        let (a, b) = (random_expr(&mut rng, 3), random_expr(&mut rng, 3));
        let r = q(9, 4) + q(rng.gen_range(0..=100), 400);
        let (va, vb) = (eval_spectral(&a, &r), eval_spectral(&b, &r));
        ensure(eval_spectral(&GraphExpr::product(a.clone(), b.clone()), &r) == &va * &vb, || format!("product {a}, {b}"))?;
        ensure(eval_spectral(&GraphExpr::union(a.clone(), b.clone()), &r) == &va + &vb, || format!("union {a}, {b}"))?;
        ensure(eval_spectral(&GraphExpr::join(a.clone(), b.clone()), &r) == va.max(vb), || format!("join {a}, {b}"))?;
    }

    let c5 = Graph::cycle(5).unwrap();
    let small = |e: &GraphExpr| expression_order(e, &c5) <= 200;
    let mut corpus: Vec<(GraphExpr, GraphExpr)> = Vec::new();

    let opts = SearchOptions::default();
    for (p, d) in fractions(9) {
        for (r, s) in fractions(9) {
            let (x, y) = (fraction_graph(p, d).unwrap(), fraction_graph(r, s).unwrap());
            if find_cohomomorphism(&x, &y, &opts).map_err(|e| e.to_string())?.is_some() {
                corpus.push((GraphExpr::fraction(p, d).unwrap(), GraphExpr::fraction(r, s).unwrap()));
            }
        }
    }

    let cfg = PipelineConfig::default();
    let table = build_line_table(2, &LineSeeds::default()).map_err(|e| e.to_string())?;
    let words = Word::all_up_to(2);
    let mut families: Vec<AntichainFamily> = words.iter().map(|w| AntichainFamily::new([w.clone()]).unwrap()).collect();
    for (i, v) in words.iter().enumerate() {
        for w in &words[i + 1..] {
            if let Ok(f) = AntichainFamily::new([v.clone(), w.clone()]) {
                families.push(f);
            }
        }
    }
    let mut materialized = 0;
    for a in &families {
        for b in &families {
            let ga = cohomorder::pipeline::build_family_graph(a, &table).map_err(|e| e.to_string())?;
            let gb = cohomorder::pipeline::build_family_graph(b, &table).map_err(|e| e.to_string())?;
            if a == b || !small(&ga) || !small(&gb) {
                continue;
            }
            if let Certificate::Positive { materialized: m, .. } = certify_families(a, b, &table, &cfg).map_err(|e| e.to_string())? {
                if let Some(m) = m {
                    let (sa, sb) = (materialize(&ga, &c5, 200).unwrap(), materialize(&gb, &c5, 200).unwrap());
                    ensure(verify_cohomomorphism(&sa, &sb, &m.map), || {
                        format!("materialized map {ga} -> {gb}")
                    })?;
                    materialized += 1;
                }
                corpus.push((ga, gb));
            }
        }
    }

    for p in [FinitePreorder::chain(2), FinitePreorder::chain(3), FinitePreorder::power_set(2)] {
        for depth in [None, Some(1), Some(2)] {
            let cfg = PipelineConfig { depth, ..PipelineConfig::default() };
            let Ok(rep) = embed_preorder(&p, &cfg) else { continue };
            let idx = |s: &str| p.elements().iter().position(|e| e == s).unwrap();
            for c in rep.certificates.iter().filter(|c| c.certificate.is_positive()) {
                let (x, y) = (&rep.expressions[idx(&c.x)], &rep.expressions[idx(&c.y)]);
                if small(x) && small(y) {
                    corpus.push((x.clone(), y.clone()));
                }
            }
        }
    }

    let grid: Vec<Rational> = (0..50).map(|k| q(9, 4) + q(k, 196)).collect();
    for (x, y) in &corpus {
        for r in &grid {
            let (vx, vy) = (eval_spectral(x, r), eval_spectral(y, r));
            ensure(vx <= vy, || format!("{x} -> {y} at {r}: {vx} > {vy}"))?;
        }
    }
    ensure(materialized > 0, || "no materialized pipeline maps in the corpus".into())?;
    Ok(format!("200 axiom triples; monotone on {} positive pairs ({materialized} with checked maps) at 50 points", corpus.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("fraction-graph normalization", Duration::from_secs(10), normalization),
        ("shannon-capacity anchor", Duration::from_secs(60), shannon_anchor),
        ("fraction-graph order", Duration::from_secs(300), fraction_order),
        ("asymptotic gap", Duration::from_secs(60), asymptotic_gap),
        ("line-table invariants", Duration::from_secs(30), line_table_invariants),
        ("main pipeline", Duration::from_secs(120), pipeline),
        ("counterexample", Duration::from_secs(1), counterexample),
        ("ordering polynomials", Duration::from_secs(1), ordering),
        ("derivation engine", Duration::from_secs(5), xif),
        ("spectral axioms", Duration::from_secs(120), spectral),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let took = start.elapsed();
        let verdict = match result {
            Ok(detail) if took <= *limit => Ok(detail),
            Ok(detail) => Err(format!("{detail}; took {took:.2?} over limit {limit:?}")),
            Err(e) => Err(e),
        };
        match verdict {
            Ok(detail) => println!("PASS {:>2} {name} ({took:.2?}): {detail}", i + 1),
            Err(e) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({took:.2?}): {e}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
