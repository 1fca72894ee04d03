//! Expressions as maxima of polynomials in the generator value, and exact
//! comparison of upper envelopes of lines.
//!
//! All values involved are non-negative, so products and sums distribute over
//! maxima and every expression equals the maximum of finitely many polynomials.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::GraphExpr;
use crate::error::{Error, Result};
use crate::poly::RationalPolynomial;
use crate::rational::Rational;

pub const DEFAULT_POLY_BUDGET: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaxPolyForm {
    members: BTreeSet<RationalPolynomial>,
}

impl MaxPolyForm {
    pub fn new(members: impl IntoIterator<Item = RationalPolynomial>) -> Result<Self> {
        let members: BTreeSet<_> = members.into_iter().map(RationalPolynomial::trimmed).collect();
        if members.is_empty() {
            return Err(Error::invalid("max-form needs at least one polynomial"));
        }
        Ok(MaxPolyForm { members })
    }

    pub fn members(&self) -> impl Iterator<Item = &RationalPolynomial> + '_ {
        self.members.iter()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn max_degree(&self) -> usize {
        self.members.iter().map(RationalPolynomial::effective_degree).max().unwrap_or(0)
    }

    pub fn eval(&self, r: &Rational) -> Rational {
        self.members
            .iter()
            .map(|p| p.eval(r))
            .max()
            .expect("max-form is non-empty")
    }

    fn combine(&self, other: &Self, budget: usize, f: impl Fn(&RationalPolynomial, &RationalPolynomial) -> RationalPolynomial) -> Result<Self> {
        let size = self.members.len().saturating_mul(other.members.len());
        if size > budget {
            return Err(Error::CapExceeded {
                what: "max-form members",
                size: size as u128,
                cap: budget as u64,
            });
        }
        let mut out = BTreeSet::new();
        for p in &self.members {
            for q in &other.members {
                out.insert(f(p, q).trimmed());
            }
        }
        Ok(MaxPolyForm { members: out })
    }
}

pub fn to_max_poly(e: &GraphExpr) -> Result<MaxPolyForm> {
    to_max_poly_bounded(e, DEFAULT_POLY_BUDGET)
}

/// As [`to_max_poly`], failing when an intermediate form would exceed `budget` members.
pub fn to_max_poly_bounded(e: &GraphExpr, budget: usize) -> Result<MaxPolyForm> {
    Ok(match e {
        GraphExpr::Fraction { p, q } => MaxPolyForm::new([RationalPolynomial::constant(Rational::from(
            num_rational::BigRational::new(p.clone(), q.clone()),
        ))])?,
        GraphExpr::Generator => MaxPolyForm::new([RationalPolynomial::x()])?,
        GraphExpr::Product(a, b) => {
            to_max_poly_bounded(a, budget)?.combine(&to_max_poly_bounded(b, budget)?, budget, |p, q| p.mul(q))?
        }
        GraphExpr::Union(a, b) => {
            to_max_poly_bounded(a, budget)?.combine(&to_max_poly_bounded(b, budget)?, budget, |p, q| p.add(q))?
        }
        GraphExpr::Join(a, b) => {
            let mut m = to_max_poly_bounded(a, budget)?;
            m.members.extend(to_max_poly_bounded(b, budget)?.members);
            if m.members.len() > budget {
                return Err(Error::CapExceeded {
                    what: "max-form members",
                    size: m.members.len() as u128,
                    cap: budget as u64,
                });
            }
            m
        }
        GraphExpr::Power(a, n) => {
            let base = to_max_poly_bounded(a, budget)?;
            let mut acc = base.clone();
            for _ in 1..*n {
                acc = acc.combine(&base, budget, |p, q| p.mul(q))?;
            }
            acc
        }
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum EnvelopeVerdict {
    Dominated,
    /// A point where the left envelope is strictly larger.
    Counterexample { r: Rational, lhs: Rational, rhs: Rational },
}

impl EnvelopeVerdict {
    pub fn is_dominated(&self) -> bool {
        matches!(self, EnvelopeVerdict::Dominated)
    }
}

/// Decides `max P <= max Q` on the closed interval `[s, t]` for forms made of lines.
///
/// The difference of two upper envelopes is piecewise linear with breakpoints
/// among the pairwise intersections of all member lines, so it suffices to
/// compare at those intersections inside the interval and at both endpoints.
/// Points are examined in ascending order; the first failure is returned.
pub fn envelope_leq(p: &MaxPolyForm, q: &MaxPolyForm, s: &Rational, t: &Rational) -> Result<EnvelopeVerdict> {
    if s > t {
        return Err(Error::invalid(format!("empty interval [{s}, {t}]")));
    }
    if p.max_degree() > 1 || q.max_degree() > 1 {
        return Err(Error::invalid("envelope comparison supports lines only"));
    }
    let lines: Vec<(Rational, Rational)> = p
        .members()
        .chain(q.members())
        .map(|m| {
            let c = m.coefficients();
            (c.get(1).cloned().unwrap_or_else(Rational::zero), c[0].clone())
        })
        .collect();
    let mut points: BTreeSet<Rational> = BTreeSet::new();
    points.insert(s.clone());
    points.insert(t.clone());
    for (i, (a1, b1)) in lines.iter().enumerate() {
        for (a2, b2) in &lines[i + 1..] {
            let da = a1 - a2;
            if da.is_zero() {
                continue;
            }
            let x = &(b2 - b1) / &da;
            if &x >= s && &x <= t {
                points.insert(x);
            }
        }
    }
    for r in points {
        let (lhs, rhs) = (p.eval(&r), q.eval(&r));
        if lhs > rhs {
            return Ok(EnvelopeVerdict::Counterexample { r, lhs, rhs });
        }
    }
    Ok(EnvelopeVerdict::Dominated)
}
