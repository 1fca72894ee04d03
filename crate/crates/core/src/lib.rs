//! Constructive embeddings of finite preorders into the asymptotic graph
//! cohomomorphism order, with exact, re-checkable certificates.

pub mod bitset;
pub mod cohom;
pub mod error;
pub mod exec;
pub mod graph;
pub mod lines;
pub mod lp;
pub mod pipeline;
pub mod poly;
pub mod rational;
pub mod spectral;
pub mod words;

pub use error::{Error, Result};
pub use exec::Execution;
pub use graph::Graph;
pub use rational::Rational;
