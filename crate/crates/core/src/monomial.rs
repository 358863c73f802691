//! Monomials as exponent vectors.
//!
//! A monomial `x_1^{a_1} ... x_n^{a_n}` is stored as the vector
//! `(a_1, ..., a_n)`. Divisibility is the componentwise order, the least
//! common multiple is the componentwise maximum and the greatest common
//! divisor is the componentwise minimum.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A monomial in `n` variables, identified with its exponent vector.
///
/// The canonical order on monomials used throughout the crate is graded
/// lexicographic: first by total degree, then lexicographically on the
/// exponent vector. [`Ord`] implements exactly that order.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Monomial {
    exps: Vec<u64>,
}

impl Monomial {
    pub fn new(exps: Vec<u64>) -> Self {
        Monomial { exps }
    }

    /// The monomial 1 in `n` variables (the all-zero exponent vector).
    pub fn one(n: usize) -> Self {
        Monomial { exps: vec![0; n] }
    }

    /// The single variable `x_i` (0-based index) in `n` variables.
    pub fn variable(i: usize, n: usize) -> Result<Self> {
        if i >= n {
            return Err(Error::VariableOutOfRange { index: i, n });
        }
        let mut exps = vec![0; n];
        exps[i] = 1;
        Ok(Monomial { exps })
    }

    pub fn n_vars(&self) -> usize {
        self.exps.len()
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exps
    }

    pub fn exponent(&self, i: usize) -> u64 {
        self.exps[i]
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn is_squarefree(&self) -> bool {
        self.exps.iter().all(|&e| e <= 1)
    }

    /// Total degree, the sum of all exponents.
    pub fn degree(&self) -> u64 {
        self.exps
            .iter()
            .try_fold(0u64, |acc, &e| acc.checked_add(e))
            .expect("monomial degree overflows u64")
    }

    /// Indices of the variables that divide this monomial.
    pub fn support(&self) -> Vec<usize> {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
            .collect()
    }

    fn check_same_ambient(&self, other: &Monomial) -> Result<()> {
        if self.n_vars() != other.n_vars() {
            Err(Error::DimensionMismatch(self.n_vars(), other.n_vars()))
        } else {
            Ok(())
        }
    }

    /// Componentwise maximum.
    pub fn lcm(&self, other: &Monomial) -> Result<Monomial> {
        self.check_same_ambient(other)?;
        Ok(Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(&a, &b)| a.max(b))
                .collect(),
        })
    }

    /// Componentwise minimum.
    pub fn gcd(&self, other: &Monomial) -> Result<Monomial> {
        self.check_same_ambient(other)?;
        Ok(Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(&a, &b)| a.min(b))
                .collect(),
        })
    }

    /// Whether `self` divides `other`, i.e. the exponent vector of `self` is
    /// componentwise below the one of `other`.
    pub fn divides(&self, other: &Monomial) -> Result<bool> {
        self.check_same_ambient(other)?;
        Ok(self.exps.iter().zip(&other.exps).all(|(&a, &b)| a <= b))
    }

    pub fn mul(&self, other: &Monomial) -> Result<Monomial> {
        self.check_same_ambient(other)?;
        Ok(Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(&a, &b)| a.checked_add(b).expect("monomial exponent overflows u64"))
                .collect(),
        })
    }

    /// Exact quotient `self / other`, or `None` when `other` does not divide
    /// `self`.
    pub fn divide(&self, other: &Monomial) -> Result<Option<Monomial>> {
        if !other.divides(self)? {
            return Ok(None);
        }
        Ok(Some(Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(&a, &b)| a - b)
                .collect(),
        }))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x^{:?}", self.exps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u64]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn lcm_is_componentwise_max() {
        // lcm(x^2, xy) = x^2 y
        assert_eq!(m(&[2, 0]).lcm(&m(&[1, 1])).unwrap(), m(&[2, 1]));
        // lcm(x1 x2, x2 x3) = x1 x2 x3
        assert_eq!(m(&[1, 1, 0]).lcm(&m(&[0, 1, 1])).unwrap(), m(&[1, 1, 1]));
    }

    #[test]
    fn gcd_is_componentwise_min() {
        assert_eq!(m(&[2, 0]).gcd(&m(&[1, 1])).unwrap(), m(&[1, 0]));
    }

    #[test]
    fn divides_is_componentwise_comparison() {
        assert!(m(&[1, 1]).divides(&m(&[2, 2])).unwrap());
        assert!(!m(&[2, 0]).divides(&m(&[1, 1])).unwrap());
    }

    #[test]
    fn mismatched_ambient_is_an_error() {
        assert!(matches!(
            m(&[1]).lcm(&m(&[1, 0])),
            Err(Error::DimensionMismatch(1, 2))
        ));
    }

    #[test]
    fn degree_support_squarefree() {
        let u = m(&[2, 0, 1]);
        assert_eq!(u.degree(), 3);
        assert_eq!(u.support(), vec![0, 2]);
        assert!(!u.is_squarefree());
        assert!(m(&[1, 0, 1]).is_squarefree());
        assert!(Monomial::one(3).is_one());
    }

    #[test]
    fn graded_lex_order() {
        // degree first, then lexicographic on the vector
        assert!(m(&[0, 2]) < m(&[1, 1]));
        assert!(m(&[1, 1]) < m(&[2, 0]));
        assert!(m(&[2, 0]) < m(&[2, 1]));
    }

    #[test]
    fn divide_inverse_of_mul() {
        let u = m(&[1, 2]);
        let v = m(&[0, 1]);
        assert_eq!(u.mul(&v).unwrap().divide(&v).unwrap(), Some(u.clone()));
        assert_eq!(m(&[2, 0]).divide(&m(&[1, 1])).unwrap(), None);
    }
}
