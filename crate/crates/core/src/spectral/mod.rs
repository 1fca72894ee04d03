//! Symbolic graph expressions over fraction graphs and a single generator, and
//! the one-parameter family of graph values they induce.
//!
//! A value assignment sends `E_{p/q}` to `p/q` and the generator to `r`, is
//! multiplicative on strong products, additive on disjoint unions and takes the
//! maximum on joins. Expressions can also be materialized into concrete graphs.

mod envelope;
mod parse;

pub use envelope::{envelope_leq, to_max_poly, to_max_poly_bounded, EnvelopeVerdict, MaxPolyForm, DEFAULT_POLY_BUDGET};

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{disjoint_union, fraction_graph, join, power, strong_product, Graph};
use crate::rational::Rational;

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum GraphExpr {
    /// `E_{p/q}`, kept exactly as written (not reduced).
    Fraction { p: BigInt, q: BigInt },
    Generator,
    Product(Box<GraphExpr>, Box<GraphExpr>),
    Union(Box<GraphExpr>, Box<GraphExpr>),
    Join(Box<GraphExpr>, Box<GraphExpr>),
    Power(Box<GraphExpr>, u32),
}

impl GraphExpr {
    pub fn fraction(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Result<Self> {
        let (p, q) = (p.into(), q.into());
        if q <= BigInt::zero() || p < &q * 2 {
            return Err(Error::invalid(format!("fraction atom needs q > 0 and p/q >= 2; got {p}/{q}")));
        }
        Ok(GraphExpr::Fraction { p, q })
    }

    /// `E_{p/q}` for the reduced form of `x`.
    pub fn from_rational(x: &Rational) -> Result<Self> {
        Self::fraction(x.numer().clone(), x.denom().clone())
    }

    pub fn edgeless(n: u64) -> Result<Self> {
        Self::fraction(n, 1)
    }

    pub fn generator() -> Self {
        GraphExpr::Generator
    }

    pub fn product(a: GraphExpr, b: GraphExpr) -> Self {
        GraphExpr::Product(Box::new(a), Box::new(b))
    }

    pub fn union(a: GraphExpr, b: GraphExpr) -> Self {
        GraphExpr::Union(Box::new(a), Box::new(b))
    }

    pub fn join(a: GraphExpr, b: GraphExpr) -> Self {
        GraphExpr::Join(Box::new(a), Box::new(b))
    }

    pub fn power(a: GraphExpr, n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("expression power must be at least 1"));
        }
        Ok(GraphExpr::Power(Box::new(a), n))
    }

    /// Left-nested join of the given expressions, in order.
    pub fn join_all(parts: impl IntoIterator<Item = GraphExpr>) -> Result<Self> {
        parts
            .into_iter()
            .reduce(GraphExpr::join)
            .ok_or_else(|| Error::invalid("join of no expressions"))
    }

    /// `E_a ⊠ g ⊔ E_b`.
    pub fn line_graph(a: &Rational, b: &Rational) -> Result<Self> {
        Ok(Self::union(
            Self::product(Self::from_rational(a)?, Self::Generator),
            Self::from_rational(b)?,
        ))
    }

    /// Checks atoms and exponents.
    pub fn validate(&self) -> Result<()> {
        match self {
            GraphExpr::Fraction { p, q } => Self::fraction(p.clone(), q.clone()).map(|_| ()),
            GraphExpr::Generator => Ok(()),
            GraphExpr::Product(a, b) | GraphExpr::Union(a, b) | GraphExpr::Join(a, b) => {
                a.validate()?;
                b.validate()
            }
            GraphExpr::Power(a, n) => {
                if *n == 0 {
                    return Err(Error::invalid("expression power must be at least 1"));
                }
                a.validate()
            }
        }
    }

    pub fn uses_generator(&self) -> bool {
        match self {
            GraphExpr::Fraction { .. } => false,
            GraphExpr::Generator => true,
            GraphExpr::Product(a, b) | GraphExpr::Union(a, b) | GraphExpr::Join(a, b) => {
                a.uses_generator() || b.uses_generator()
            }
            GraphExpr::Power(a, _) => a.uses_generator(),
        }
    }

    /// Vertex count of the materialization for a generator of the given order.
    pub fn order(&self, generator_order: usize) -> BigInt {
        match self {
            GraphExpr::Fraction { p, .. } => p.clone(),
            GraphExpr::Generator => BigInt::from(generator_order),
            GraphExpr::Product(a, b) => a.order(generator_order) * b.order(generator_order),
            GraphExpr::Union(a, b) | GraphExpr::Join(a, b) => a.order(generator_order) + b.order(generator_order),
            GraphExpr::Power(a, n) => num_traits::pow(a.order(generator_order), *n as usize),
        }
    }
}

/// Value of `e` when the generator takes value `r`.
pub fn eval_spectral(e: &GraphExpr, r: &Rational) -> Rational {
    match e {
        GraphExpr::Fraction { p, q } => Rational::from(num_rational::BigRational::new(p.clone(), q.clone())),
        GraphExpr::Generator => r.clone(),
        GraphExpr::Product(a, b) => eval_spectral(a, r) * eval_spectral(b, r),
        GraphExpr::Union(a, b) => eval_spectral(a, r) + eval_spectral(b, r),
        GraphExpr::Join(a, b) => eval_spectral(a, r).max(eval_spectral(b, r)),
        GraphExpr::Power(a, n) => eval_spectral(a, r).pow(*n),
    }
}

/// Builds the concrete graph, substituting `generator`; rejects results above `cap` vertices.
pub fn materialize(e: &GraphExpr, generator: &Graph, cap: u64) -> Result<Graph> {
    e.validate()?;
    let order = e.order(generator.order());
    if order > BigInt::from(cap) {
        return Err(Error::CapExceeded {
            what: "materialization",
            size: order.to_u128().unwrap_or(u128::MAX),
            cap,
        });
    }
    build(e, generator)
}

fn build(e: &GraphExpr, generator: &Graph) -> Result<Graph> {
    Ok(match e {
        GraphExpr::Fraction { p, q } => {
            let p = p.to_u64().ok_or_else(|| Error::invalid("fraction atom too large"))?;
            let q = q.to_u64().ok_or_else(|| Error::invalid("fraction atom too large"))?;
            fraction_graph(p, q)?
        }
        GraphExpr::Generator => generator.clone(),
        GraphExpr::Product(a, b) => strong_product(&build(a, generator)?, &build(b, generator)?),
        GraphExpr::Union(a, b) => disjoint_union(&build(a, generator)?, &build(b, generator)?),
        GraphExpr::Join(a, b) => join(&build(a, generator)?, &build(b, generator)?),
        GraphExpr::Power(a, n) => power(&build(a, generator)?, *n as usize)?,
    })
}

impl fmt::Display for GraphExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        parse::write_expr(f, self, 0)
    }
}

impl fmt::Debug for GraphExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for GraphExpr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse::parse_expr(s)
    }
}

impl Serialize for GraphExpr {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for GraphExpr {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
