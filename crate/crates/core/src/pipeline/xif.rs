//! Derivation trees for the value of the projective-rank complement on dyadic
//! fraction graphs `E_{2^n/q}`, and dyadic approximation from below.

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DerivationRule {
    /// `q = 1`: the value of an edgeless graph.
    Base,
    /// `q` even: `E_{p/q}` and `E_{(p/2)/(q/2)}` share their value.
    Halve,
    /// `q` odd, `2 <= q <= p/2 - 1`: squeezed between `E_{p/(q-1)}` and `E_{p/(q+1)}`.
    OddSplit,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivationTree {
    pub p: u64,
    pub q: u64,
    pub rule: DerivationRule,
    pub value: Rational,
    pub children: Vec<DerivationTree>,
}

fn is_power_of_two(p: u64) -> bool {
    p >= 2 && p.is_power_of_two()
}

/// Derivation of `p/q` for `p = 2^n`, `n >= 1`, and `1 <= q <= p/2`.
pub fn xif_derivation(p: u64, q: u64) -> Result<DerivationTree> {
    if !is_power_of_two(p) {
        return Err(Error::invalid(format!("{p} is not a power of two (at least 2)")));
    }
    if q == 0 || q > p / 2 {
        return Err(Error::invalid(format!("q = {q} out of range 1..={}", p / 2)));
    }
    let tree = derive(p, q);
    tree.validate()?;
    Ok(tree)
}

fn derive(p: u64, q: u64) -> DerivationTree {
    let (rule, children) = if q == 1 {
        (DerivationRule::Base, Vec::new())
    } else if q.is_multiple_of(2) {
        (DerivationRule::Halve, vec![derive(p / 2, q / 2)])
    } else {
        (DerivationRule::OddSplit, vec![derive(p, q - 1), derive(p, q + 1)])
    };
    DerivationTree {
        p,
        q,
        rule,
        value: Rational::new(p, q),
        children,
    }
}

impl DerivationTree {
    /// Checks every rule's side conditions, child shapes, and claimed values.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Invariant(format!("node ({}, {}): {msg}", self.p, self.q)));
        if self.q == 0 || self.value != Rational::new(self.p, self.q) {
            return bad(format!("claimed value {} is not p/q", self.value));
        }
        let shape: Vec<(u64, u64)> = self.children.iter().map(|c| (c.p, c.q)).collect();
        match self.rule {
            DerivationRule::Base => {
                if self.q != 1 || !shape.is_empty() {
                    return bad("base rule needs q = 1 and no children".into());
                }
            }
            DerivationRule::Halve => {
                if !self.q.is_multiple_of(2) || !self.p.is_multiple_of(2) || shape != [(self.p / 2, self.q / 2)] {
                    return bad("halve rule needs even p, q and the single child (p/2, q/2)".into());
                }
            }
            DerivationRule::OddSplit => {
                let in_range = self.q >= 2 && 2 * self.q + 2 <= self.p;
                if self.q.is_multiple_of(2) || !in_range || shape != [(self.p, self.q - 1), (self.p, self.q + 1)] {
                    return bad("odd split needs odd q with 2 <= q <= p/2 - 1 and children (p, q-1), (p, q+1)".into());
                }
            }
        }
        self.children.iter().try_for_each(DerivationTree::validate)
    }

    pub fn node_count(&self) -> usize {
        1 + self.children.iter().map(DerivationTree::node_count).sum::<usize>()
    }

    pub fn leaves_are_base(&self) -> bool {
        if self.children.is_empty() {
            self.rule == DerivationRule::Base
        } else {
            self.children.iter().all(DerivationTree::leaves_are_base)
        }
    }

    fn render(&self, f: &mut fmt::Formatter<'_>, depth: usize) -> fmt::Result {
        let rule = match self.rule {
            DerivationRule::Base => "base",
            DerivationRule::Halve => "halve",
            DerivationRule::OddSplit => "odd-split",
        };
        writeln!(f, "{:indent$}E_{{{}/{}}} = {}  [{rule}]", "", self.p, self.q, self.value, indent = 2 * depth)?;
        self.children.iter().try_for_each(|c| c.render(f, depth + 1))
    }
}

impl fmt::Display for DerivationTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.render(f, 0)
    }
}

/// Smallest `n` for which some `q' <= 2^(n-1)` gives `p/q - eps <= 2^n/q' <= p/q`,
/// together with the largest such value's denominator `q'`.
pub fn dyadic_approach(p: u64, q: u64, eps: &Rational) -> Result<(u32, BigInt)> {
    if q == 0 || p < 2 * q {
        return Err(Error::invalid(format!("need p/q >= 2; got {p}/{q}")));
    }
    if !eps.is_positive() {
        return Err(Error::invalid("eps must be positive"));
    }
    let target = Rational::new(p, q);
    let floor = &target - eps;
    let mut two_n = BigInt::from(1);
    for n in 1u32.. {
        two_n *= 2;
        // smallest q' with 2^n / q' <= p / q
        let qp = Rational::from(&two_n * BigInt::from(q)) / Rational::from(p as i64);
        let qp = qp.ceil();
        let value = Rational::from(two_n.clone()) / Rational::from(qp.clone());
        if value >= floor {
            return Ok((n, qp));
        }
    }
    unreachable!("the dyadic values converge to p/q")
}
