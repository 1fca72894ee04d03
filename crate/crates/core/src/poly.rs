//! Univariate polynomials with exact rational coefficients.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Coefficients are stored constant term first.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RationalPolynomial {
    coefficients: Vec<Rational>,
}

impl RationalPolynomial {
    pub fn new(coefficients: Vec<Rational>) -> Self {
        RationalPolynomial { coefficients }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `slope * x + intercept`.
    pub fn linear(slope: Rational, intercept: Rational) -> Self {
        Self::new(vec![intercept, slope])
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::new(vec![Rational::zero(), Rational::one()])
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }

    /// `len - 1`; the stored length, not the position of the last non-zero term.
    pub fn degree(&self) -> usize {
        self.coefficients.len().saturating_sub(1)
    }

    /// Degree after dropping trailing zero coefficients (zero polynomial: 0).
    pub fn effective_degree(&self) -> usize {
        self.coefficients
            .iter()
            .rposition(|c| !c.is_zero())
            .unwrap_or(0)
    }

    /// Drops trailing zero coefficients, keeping at least the constant term.
    pub fn trimmed(mut self) -> Self {
        while self.coefficients.len() > 1 && self.coefficients.last().is_some_and(Rational::is_zero) {
            self.coefficients.pop();
        }
        if self.coefficients.is_empty() {
            self.coefficients.push(Rational::zero());
        }
        self
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coefficients
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| &(&acc * x) + c)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coefficients.len().max(other.coefficients.len());
        let zero = Rational::zero();
        Self::new(
            (0..n)
                .map(|i| {
                    self.coefficients.get(i).unwrap_or(&zero) + other.coefficients.get(i).unwrap_or(&zero)
                })
                .collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.coefficients.is_empty() || other.coefficients.is_empty() {
            return Self::new(Vec::new());
        }
        let mut out = vec![Rational::zero(); self.coefficients.len() + other.coefficients.len() - 1];
        for (i, a) in self.coefficients.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coefficients.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coefficients.iter().map(|a| a * c).collect())
    }

    /// Pads with zero coefficients up to `len` terms.
    pub fn padded(mut self, len: usize) -> Self {
        while self.coefficients.len() < len {
            self.coefficients.push(Rational::zero());
        }
        self
    }

    /// The unique polynomial of degree `< points.len()` through `(x_k, y_k)`.
    pub fn interpolate(points: &[(Rational, Rational)]) -> Result<Self> {
        for (i, (xi, _)) in points.iter().enumerate() {
            if points[..i].iter().any(|(xj, _)| xj == xi) {
                return Err(Error::invalid(format!("duplicate interpolation node {xi}")));
            }
        }
        let mut acc = Self::new(vec![Rational::zero(); points.len().max(1)]);
        for (j, (xj, yj)) in points.iter().enumerate() {
            let mut basis = Self::constant(Rational::one());
            let mut denom = Rational::one();
            for (m, (xm, _)) in points.iter().enumerate() {
                if m != j {
                    basis = basis.mul(&Self::linear(Rational::one(), -xm));
                    denom = &denom * &(xj - xm);
                }
            }
            acc = acc.add(&basis.scale(&(yj / &denom)));
        }
        Ok(acc.padded(points.len().max(1)))
    }
}

impl fmt::Display for RationalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coefficients
            .iter()
            .enumerate()
            .filter(|(i, c)| !c.is_zero() || (*i == 0 && self.coefficients.len() == 1))
            .map(|(i, c)| match i {
                0 => format!("{c}"),
                1 => format!("({c})x"),
                _ => format!("({c})x^{i}"),
            })
            .collect();
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}

impl fmt::Debug for RationalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn eval_and_arith() {
        let p = RationalPolynomial::new(vec![q(1, 1), q(2, 1), q(3, 1)]);
        assert_eq!(p.eval(&q(2, 1)), q(17, 1));
        assert_eq!(p.degree(), 2);
        let l = RationalPolynomial::linear(q(6, 1), q(7, 1));
        assert_eq!(l.eval(&q(7, 3)), q(21, 1));
        assert_eq!(l.mul(&l).eval(&q(1, 1)), q(169, 1));
        assert_eq!(l.add(&p).eval(&q(0, 1)), q(8, 1));
        assert_eq!(RationalPolynomial::new(vec![q(1, 1), q(0, 1)]).trimmed().degree(), 0);
    }

    #[test]
    fn interpolation_hits_nodes() {
        let pts = vec![(q(9, 4), q(3, 1)), (q(7, 3), q(1, 1)), (q(12, 5), q(2, 1)), (q(5, 2), q(-4, 1))];
        let p = RationalPolynomial::interpolate(&pts).unwrap();
        assert_eq!(p.degree(), 3);
        for (x, y) in &pts {
            assert_eq!(&p.eval(x), y);
        }
        assert!(RationalPolynomial::interpolate(&[(q(1, 1), q(1, 1)), (q(1, 1), q(2, 1))]).is_err());
    }
}
