//! Small fixed constructions: three pairwise incomparable graphs whose joins
//! are nonetheless comparable, and an antichain of graphs whose lines all pass
//! through one point.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{to_graph6, Graph};
use crate::lines::{antichain_lines, counterexample_lines, Line};
use crate::rational::Rational;
use crate::spectral::{envelope_leq, eval_spectral, to_max_poly, EnvelopeVerdict, GraphExpr};

pub const ANTICHAIN_DEMO_CAP: usize = 64;

/// Evidence that `x ⋠ y` in the model: at `r`, `x` evaluates to `lhs > rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelWitness {
    pub x: String,
    pub y: String,
    pub r: Rational,
    pub lhs: Rational,
    pub rhs: Rational,
}

impl ModelWitness {
    /// First point in `points` separating `ex` from `ey`.
    fn find(x: &str, y: &str, ex: &GraphExpr, ey: &GraphExpr, points: &[Rational]) -> Result<Self> {
        points
            .iter()
            .find_map(|r| {
                let (lhs, rhs) = (eval_spectral(ex, r), eval_spectral(ey, r));
                (lhs > rhs).then(|| ModelWitness {
                    x: x.to_string(),
                    y: y.to_string(),
                    r: r.clone(),
                    lhs,
                    rhs,
                })
            })
            .ok_or_else(|| Error::Invariant(format!("no separating point for {x} against {y}")))
    }

    /// Recomputes both sides and checks strictness.
    pub fn holds(&self, ex: &GraphExpr, ey: &GraphExpr) -> bool {
        eval_spectral(ex, &self.r) == self.lhs && eval_spectral(ey, &self.r) == self.rhs && self.lhs > self.rhs
    }
}

fn pairwise_witnesses(names: &[String], exprs: &[GraphExpr], points: &[Rational]) -> Result<Vec<ModelWitness>> {
    let mut out = Vec::new();
    for (i, ex) in exprs.iter().enumerate() {
        for (j, ey) in exprs.iter().enumerate() {
            if i != j {
                out.push(ModelWitness::find(&names[i], &names[j], ex, ey, points)?);
            }
        }
    }
    Ok(out)
}

fn line_expr(l: &Line) -> Result<GraphExpr> {
    if l.a.is_zero() {
        GraphExpr::from_rational(&l.b)
    } else {
        GraphExpr::line_graph(&l.a, &l.b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CounterexampleDemo {
    pub generator: String,
    pub interval: [Rational; 2],
    pub names: Vec<String>,
    pub expressions: Vec<GraphExpr>,
    pub lines: Vec<Line>,
    /// Where the first two lines cross, and their common value there.
    pub crossing: Rational,
    pub crossing_value: Rational,
    /// One witness per ordered pair, taken left or right of the crossing.
    pub witnesses: Vec<ModelWitness>,
    pub left_join: GraphExpr,
    pub right_join: GraphExpr,
    /// Envelope of `H1 + H2` against `H1 + H3`.
    pub dominance: EnvelopeVerdict,
    /// The reverse comparison, which fails.
    pub reverse: EnvelopeVerdict,
}

impl CounterexampleDemo {
    /// Re-evaluates every claim of the demo.
    pub fn is_certified(&self) -> bool {
        let index = |n: &str| self.names.iter().position(|m| m == n);
        let witnesses_ok = self.witnesses.len() == 6
            && self.witnesses.iter().all(|w| match (index(&w.x), index(&w.y)) {
                (Some(i), Some(j)) => w.holds(&self.expressions[i], &self.expressions[j]),
                _ => false,
            });
        let crossing_ok = self.lines[0].intersection(&self.lines[1]).as_ref() == Some(&self.crossing)
            && self.lines[0].eval(&self.crossing) == self.crossing_value
            && self.lines[1].eval(&self.crossing) == self.crossing_value;
        witnesses_ok && crossing_ok && self.dominance.is_dominated() && !self.reverse.is_dominated()
    }
}

/// `H1 = E_6 ⊠ g ⊔ E_7`, `H2 = E_3 ⊠ g ⊔ E_14`, `H3 = E_21` over `C5`.
pub fn demo_counterexample() -> Result<CounterexampleDemo> {
    let (s, t) = (Rational::new(9, 4), Rational::new(5, 2));
    let (l1, l2, l3) = counterexample_lines();
    let lines = vec![l1, l2, l3];
    let names: Vec<String> = ["H1", "H2", "H3"].iter().map(|s| s.to_string()).collect();
    let expressions = lines.iter().map(line_expr).collect::<Result<Vec<_>>>()?;
    let crossing = lines[0]
        .intersection(&lines[1])
        .ok_or_else(|| Error::Invariant("counterexample lines are parallel".into()))?;
    let crossing_value = lines[0].eval(&crossing);
    let points = [s.clone(), Rational::new(12, 5)];
    let witnesses = pairwise_witnesses(&names, &expressions, &points)?;
    let left_join = GraphExpr::join(expressions[0].clone(), expressions[1].clone());
    let right_join = GraphExpr::join(expressions[0].clone(), expressions[2].clone());
    let (pl, pr) = (to_max_poly(&left_join)?, to_max_poly(&right_join)?);
    Ok(CounterexampleDemo {
        generator: to_graph6(&Graph::cycle(5)?),
        dominance: envelope_leq(&pl, &pr, &s, &t)?,
        reverse: envelope_leq(&pr, &pl, &s, &t)?,
        interval: [s, t],
        names,
        expressions,
        lines,
        crossing,
        crossing_value,
        witnesses,
        left_join,
        right_join,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AntichainDemo {
    pub generator: String,
    pub n: usize,
    /// The common crossing point `r/s` and the common value there.
    pub crossing: Rational,
    pub crossing_value: Rational,
    pub names: Vec<String>,
    pub lines: Vec<Line>,
    pub expressions: Vec<GraphExpr>,
    pub witnesses: Vec<ModelWitness>,
}

impl AntichainDemo {
    pub fn is_certified(&self) -> bool {
        let two = Rational::from(2);
        let lines_ok = self.lines.iter().all(|l| {
            l.a >= two && l.b >= two && l.eval(&self.crossing) == self.crossing_value
        });
        let index = |n: &str| self.names.iter().position(|m| m == n);
        let witnesses_ok = self.witnesses.len() == self.n * (self.n - 1)
            && self.witnesses.iter().all(|w| match (index(&w.x), index(&w.y)) {
                (Some(i), Some(j)) => w.holds(&self.expressions[i], &self.expressions[j]),
                _ => false,
            });
        lines_ok && witnesses_ok
    }
}

/// `H_1..H_n` from lines through `(7/3, 23/3)`, separated at `9/4` and `12/5`.
pub fn demo_antichain(n: usize) -> Result<AntichainDemo> {
    if n == 0 || n > ANTICHAIN_DEMO_CAP {
        return Err(Error::invalid(format!("antichain size must be in 1..={ANTICHAIN_DEMO_CAP}")));
    }
    let (r, s) = (7u64, 3u64);
    let lines = antichain_lines(n, r, s)?;
    let crossing = Rational::new(r, s);
    let crossing_value = &(&Rational::from(2) * &crossing) + &Rational::from(3);
    let names: Vec<String> = (1..=n).map(|i| format!("H{i}")).collect();
    let expressions = lines.iter().map(line_expr).collect::<Result<Vec<_>>>()?;
    let points = [Rational::new(9, 4), Rational::new(12, 5)];
    let witnesses = pairwise_witnesses(&names, &expressions, &points)?;
    Ok(AntichainDemo {
        generator: to_graph6(&Graph::cycle(5)?),
        n,
        crossing,
        crossing_value,
        names,
        lines,
        expressions,
        witnesses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn counterexample_demo() {
        let d = demo_counterexample().unwrap();
        assert!(d.is_certified());
        assert_eq!(d.expressions[0].to_string(), "F(6/1) * g | F(7/1)");
        assert_eq!(d.expressions[1].to_string(), "F(3/1) * g | F(14/1)");
        assert_eq!(d.expressions[2].to_string(), "F(21/1)");
        assert_eq!(d.crossing, q(7, 3));
        assert_eq!(d.crossing_value, q(21, 1));
        let w13 = d.witnesses.iter().find(|w| w.x == "H1" && w.y == "H3").unwrap();
        assert_eq!((w13.r.clone(), w13.lhs.clone(), w13.rhs.clone()), (q(12, 5), q(107, 5), q(21, 1)));
        for w in &d.witnesses {
            assert!(w.lhs > w.rhs);
        }
    }

    #[test]
    fn antichain_demo() {
        let d = demo_antichain(2).unwrap();
        assert!(d.is_certified());
        assert_eq!(d.witnesses.len(), 2);
        assert_eq!(d.crossing_value, q(23, 3));
        for n in 1..=10 {
            assert!(demo_antichain(n).unwrap().is_certified());
        }
        assert!(demo_antichain(0).is_err());
    }
}
