//! Rational lines indexed by binary words, with witness points separating them.
//!
//! A table assigns each word `w` a line `ℓ_w(x) = a_w x + b_w` and a witness
//! `r_w` in an open interval `(s, t)` such that lines grow along `≤_W` and every
//! `v ≰_W w` is separated at `r_v`. The table is grown from a seed line in
//! shortlex order, one sibling pair per parent, by perturbing the parent's
//! coefficients and splitting its witness.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::poly::RationalPolynomial;
use crate::rational::Rational;
use crate::words::{word_leq, Word};

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Line {
    pub a: Rational,
    pub b: Rational,
}

impl Line {
    pub fn new(a: Rational, b: Rational) -> Self {
        Line { a, b }
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        &(&self.a * x) + &self.b
    }

    /// Abscissa where the two lines meet; `None` for parallel lines.
    pub fn intersection(&self, other: &Line) -> Option<Rational> {
        let da = &self.a - &other.a;
        if da.is_zero() {
            return None;
        }
        Some(&(&other.b - &self.b) / &da)
    }

    pub fn to_polynomial(&self) -> RationalPolynomial {
        RationalPolynomial::linear(self.a.clone(), self.b.clone())
    }
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})x + {}", self.a, self.b)
    }
}

impl fmt::Debug for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineEntry {
    #[serde(flatten)]
    pub line: Line,
    pub r: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineTable {
    pub interval: [Rational; 2],
    pub entries: BTreeMap<Word, LineEntry>,
}

impl LineTable {
    /// A table with the given entries and no validation; see [`verify_line_table`].
    pub fn from_entries(s: Rational, t: Rational, entries: BTreeMap<Word, LineEntry>) -> Self {
        LineTable {
            interval: [s, t],
            entries,
        }
    }

    pub fn s(&self) -> &Rational {
        &self.interval[0]
    }

    pub fn t(&self) -> &Rational {
        &self.interval[1]
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, w: &Word) -> Option<&LineEntry> {
        self.entries.get(w)
    }

    pub fn depth(&self) -> usize {
        self.entries.keys().map(Word::len).max().unwrap_or(0)
    }

    pub fn max_denominator_bits(&self) -> u64 {
        self.entries
            .values()
            .flat_map(|e| [&e.line.a, &e.line.b, &e.r])
            .map(Rational::denom_bits)
            .max()
            .unwrap_or(0)
    }
}

/// Interval and seed line for [`build_line_table`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineSeeds {
    pub s: Rational,
    pub t: Rational,
    pub a: Rational,
    pub b: Rational,
    pub r: Rational,
}

impl Default for LineSeeds {
    fn default() -> Self {
        LineSeeds {
            s: Rational::new(9, 4),
            t: Rational::new(5, 2),
            a: Rational::from(4),
            b: Rational::from(4),
            r: Rational::new(7, 3),
        }
    }
}

impl LineSeeds {
    pub fn validate(&self) -> Result<()> {
        let one = Rational::one();
        let two = Rational::from(2);
        if self.s < one || self.s >= self.t {
            return Err(Error::invalid(format!("interval needs 1 <= s < t; got ({}, {})", self.s, self.t)));
        }
        if self.a <= two || self.b <= two {
            return Err(Error::invalid(format!("seed coefficients must exceed 2; got a={}, b={}", self.a, self.b)));
        }
        if self.r <= self.s || self.r >= self.t || self.r <= one {
            return Err(Error::invalid(format!("seed witness {} must lie strictly inside the interval", self.r)));
        }
        Ok(())
    }
}

pub const DEFAULT_HALVING_CAP: u32 = 512;

/// Builds the table for all words of length `<= depth`.
pub fn build_line_table(depth: usize, seeds: &LineSeeds) -> Result<LineTable> {
    build_line_table_capped(depth, seeds, DEFAULT_HALVING_CAP)
}

struct Built {
    word: Word,
    line: Line,
    r: Rational,
    /// `ℓ(r)`, cached.
    peak: Rational,
}

/// As [`build_line_table`], with an explicit cap on halvings per step.
pub fn build_line_table_capped(depth: usize, seeds: &LineSeeds, halving_cap: u32) -> Result<LineTable> {
    seeds.validate()?;
    let two = Rational::from(2);
    let half = Rational::new(1, 2);
    let seed_line = Line::new(seeds.a.clone(), seeds.b.clone());
    let mut built = vec![Built {
        word: Word::empty(),
        peak: seed_line.eval(&seeds.r),
        line: seed_line,
        r: seeds.r.clone(),
    }];

    let mut level_start = 0;
    for _ in 0..depth {
        let level_end = built.len();
        for parent_idx in level_start..level_end {
            let u = built[parent_idx].word.clone();
            let lu = built[parent_idx].line.clone();
            let ru = built[parent_idx].r.clone();
            let mu = ru.recip();
            let one_minus_mu = &Rational::one() - &mu;

            // perturbation size
            let mut eps = half.clone();
            let mut rounds = 0;
            let (l0, l1) = loop {
                let l0 = Line::new(&lu.a - &(&one_minus_mu * &eps), &lu.b - &(&two * &eps));
                let l1 = Line::new(&lu.a - &eps, &lu.b - &eps);
                let coeffs_ok = [&l0.a, &l0.b, &l1.a, &l1.b].iter().all(|c| **c > two);
                let ok = coeffs_ok
                    && built.iter().all(|v| {
                        let below_v = word_leq(&v.word, &u) || (l0.eval(&v.r) < v.peak && l1.eval(&v.r) < v.peak);
                        let above_v = word_leq(&u, &v.word) || {
                            let lv = v.line.eval(&ru);
                            l0.eval(&ru) > lv && l1.eval(&ru) > lv
                        };
                        below_v && above_v
                    });
                if ok {
                    break (l0, l1);
                }
                rounds += 1;
                if rounds > halving_cap {
                    return Err(Error::Invariant(format!("perturbation search for word '{u}' did not settle")));
                }
                eps = &eps * &half;
            };

            // witness split
            let mut delta = &(seeds.t.clone() - &ru) * &half;
            let mut rounds = 0;
            let (r0, r1) = loop {
                let r0 = &ru + &delta;
                let r1 = &ru - &delta;
                let inside = r1 > seeds.s && r0 < seeds.t;
                let ok = inside && {
                    let p0 = l0.eval(&r0);
                    let p1 = l1.eval(&r1);
                    p0 > l1.eval(&r0)
                        && p1 > l0.eval(&r1)
                        && built
                            .iter()
                            .filter(|v| !word_leq(&u, &v.word))
                            .all(|v| p0 > v.line.eval(&r0) && p1 > v.line.eval(&r1))
                };
                if ok {
                    break (r0, r1);
                }
                rounds += 1;
                if rounds > halving_cap {
                    return Err(Error::Invariant(format!("witness split for word '{u}' did not settle")));
                }
                delta = &delta * &half;
            };

            for (bit, line, r) in [(false, l0, r0), (true, l1, r1)] {
                built.push(Built {
                    word: u.child(bit),
                    peak: line.eval(&r),
                    line,
                    r,
                });
            }
        }
        level_start = level_end;
    }

    let entries = built
        .into_iter()
        .map(|b| (b.word, LineEntry { line: b.line, r: b.r }))
        .collect();
    let table = LineTable::from_entries(seeds.s.clone(), seeds.t.clone(), entries);
    let report = verify_line_table(&table);
    if let Some(v) = report.violations.first() {
        return Err(Error::Invariant(format!(
            "built table violates its invariants ({} violations, first: {v})",
            report.violations.len()
        )));
    }
    Ok(table)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    /// `1 <= s < t` fails.
    Interval,
    /// Witness outside `(s, t)`.
    Witness,
    /// A coefficient is not above 2.
    Coefficient,
    /// `v <_W w` without `a_v < a_w` and `b_v < b_w`.
    Monotone,
    /// `v ≰_W w` without `ℓ_v(r_v) > ℓ_w(r_v)`.
    Separation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineViolation {
    pub kind: ViolationKind,
    pub v: Option<Word>,
    pub w: Option<Word>,
}

impl fmt::Display for LineViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.kind)?;
        match (&self.v, &self.w) {
            (Some(v), Some(w)) => write!(f, " at ('{v}', '{w}')"),
            (Some(v), None) => write!(f, " at '{v}'"),
            _ => Ok(()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineTableReport {
    pub entries: usize,
    pub pairs_checked: u64,
    pub max_denominator_bits: u64,
    pub violations: Vec<LineViolation>,
}

impl LineTableReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn verify_line_table(tbl: &LineTable) -> LineTableReport {
    verify_line_table_with(Execution::default(), tbl)
}

/// Checks every entry and every ordered pair of entries, listing all violations
/// in shortlex pair order.
pub fn verify_line_table_with(exec: Execution, tbl: &LineTable) -> LineTableReport {
    let mut violations = Vec::new();
    let (s, t) = (tbl.s(), tbl.t());
    if *s < Rational::one() || s >= t {
        violations.push(LineViolation {
            kind: ViolationKind::Interval,
            v: None,
            w: None,
        });
    }
    let items: Vec<(&Word, &LineEntry)> = tbl.entries.iter().collect();
    let two = Rational::from(2);
    for (w, e) in &items {
        if e.r <= *s || e.r >= *t {
            violations.push(LineViolation {
                kind: ViolationKind::Witness,
                v: Some((*w).clone()),
                w: None,
            });
        }
        if e.line.a <= two || e.line.b <= two {
            violations.push(LineViolation {
                kind: ViolationKind::Coefficient,
                v: Some((*w).clone()),
                w: None,
            });
        }
    }
    let peaks: Vec<Rational> = exec.map(&items, |(_, e)| e.line.eval(&e.r));
    let pairwise = exec.flat_map_range(items.len(), |i| {
        let (v, ev) = items[i];
        let mut out = Vec::new();
        for (w, ew) in &items {
            if v == *w {
                continue;
            }
            let kind = if word_leq(v, w) {
                (ev.line.a >= ew.line.a || ev.line.b >= ew.line.b).then_some(ViolationKind::Monotone)
            } else {
                (peaks[i] <= ew.line.eval(&ev.r)).then_some(ViolationKind::Separation)
            };
            if let Some(kind) = kind {
                out.push(LineViolation {
                    kind,
                    v: Some(v.clone()),
                    w: Some((*w).clone()),
                });
            }
        }
        out
    });
    violations.extend(pairwise);
    LineTableReport {
        entries: items.len(),
        pairs_checked: (items.len() as u64) * (items.len() as u64),
        max_denominator_bits: tbl.max_denominator_bits(),
        violations,
    }
}

/// Lines `ℓ_n(x) = ((2rn + sn - s)/(rn)) x + (2n + 1)/n` for `n = 1..=n_max`, all
/// passing through `(r/s, 2r/s + 3)` with slopes increasing in `n`.
pub fn antichain_lines(n_max: usize, r: u64, s: u64) -> Result<Vec<Line>> {
    if n_max == 0 || r == 0 || s == 0 {
        return Err(Error::invalid("antichain lines need positive n_max, r and s"));
    }
    let (r, s) = (r as i64, s as i64);
    Ok((1..=n_max as i64)
        .map(|n| {
            let slope = Rational::new(2 * r * n + s * n - s, r * n);
            let intercept = Rational::new(2 * n + 1, n);
            Line::new(slope, intercept)
        })
        .collect())
}

/// All permutations of `0..n` in lexicographic order.
pub fn lexicographic_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        out.push(perm.clone());
        // next permutation
        let Some(i) = (1..perm.len()).rev().find(|&i| perm[i - 1] < perm[i]) else {
            return out;
        };
        let j = (i..perm.len()).rev().find(|&j| perm[j] > perm[i - 1]).expect("successor exists");
        perm.swap(i - 1, j);
        perm[i..].reverse();
    }
}

/// Polynomials `p_0..p_{n-1}` with coefficients at least 2 realizing every ordering:
/// at the `k`-th smallest point, the values decrease along the `k`-th permutation
/// of `0..n` in lexicographic order.
pub fn ordering_polynomials(n: usize, points: &[Rational], interval: (&Rational, &Rational)) -> Result<Vec<RationalPolynomial>> {
    if n == 0 {
        return Err(Error::invalid("ordering polynomials need n >= 1"));
    }
    let perms = lexicographic_permutations(n);
    if points.len() != perms.len() {
        return Err(Error::invalid(format!("need {} points for n = {n}; got {}", perms.len(), points.len())));
    }
    let mut sorted = points.to_vec();
    sorted.sort();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::invalid("ordering points must be distinct"));
    }
    if let Some(x) = sorted.iter().find(|x| *x < interval.0 || *x > interval.1) {
        return Err(Error::invalid(format!("point {x} lies outside [{}, {}]", interval.0, interval.1)));
    }

    let polys = (0..n)
        .map(|i| {
            let nodes: Vec<(Rational, Rational)> = sorted
                .iter()
                .zip(&perms)
                .map(|(x, sigma)| {
                    let pos = sigma.iter().position(|&e| e == i).expect("permutation covers every element");
                    (x.clone(), Rational::from((n - pos) as i64))
                })
                .collect();
            RationalPolynomial::interpolate(&nodes)
        })
        .collect::<Result<Vec<_>>>()?;

    let len = perms.len();
    let min = polys
        .iter()
        .flat_map(|p| p.coefficients().iter())
        .min()
        .cloned()
        .unwrap_or_else(Rational::zero);
    let shift = (&Rational::from(2) - &min).ceil();
    let shift = RationalPolynomial::new(vec![Rational::from(shift); len]);
    Ok(polys.iter().map(|p| p.add(&shift)).collect())
}

/// `ℓ1 = 6x + 7`, `ℓ2 = 3x + 14`, `ℓ3 = 21`.
pub fn counterexample_lines() -> (Line, Line, Line) {
    (
        Line::new(Rational::from(6), Rational::from(7)),
        Line::new(Rational::from(3), Rational::from(14)),
        Line::new(Rational::zero(), Rational::from(21)),
    )
}
