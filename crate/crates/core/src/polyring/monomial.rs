//! Exponent vectors ordered by graded lexicographic order.

use std::cmp::Ordering;

/// A monomial `x_0^{e_0} ⋯ x_{n-1}^{e_{n-1}}`, stored as its exponent vector.
///
/// Ordering is graded lex: total degree first, then lexicographic on the
/// exponent vector, so that `x^2 > x*y > y^2 > x > y > 1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    /// Wraps an exponent vector.
    #[must_use]
    pub fn new(exponents: Vec<u32>) -> Self {
        Self(exponents)
    }

    /// The monomial `1` in `arity` variables.
    #[must_use]
    pub fn one(arity: usize) -> Self {
        Self(vec![0; arity])
    }

    /// Number of variables.
    #[must_use]
    pub fn arity(&self) -> usize {
        self.0.len()
    }

    /// The exponent vector.
    #[must_use]
    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    /// Exponent of `x_i`.
    #[must_use]
    pub fn exponent(&self, i: usize) -> u32 {
        self.0[i]
    }

    /// Copy with the exponent of `x_i` replaced.
    #[must_use]
    pub fn with_exponent(&self, i: usize, e: u32) -> Self {
        let mut v = self.0.clone();
        v[i] = e;
        Self(v)
    }

    /// Total degree.
    #[must_use]
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Whether this is the monomial `1`.
    #[must_use]
    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Product of two monomials of equal arity.
    #[must_use]
    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.arity(), other.arity());
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_lex_order() {
        let mut v = [
            Monomial::new(vec![0, 1]),
            Monomial::new(vec![2, 0]),
            Monomial::new(vec![0, 0]),
            Monomial::new(vec![1, 1]),
            Monomial::new(vec![1, 0]),
            Monomial::new(vec![0, 2]),
        ];
        v.sort();
        let e: Vec<_> = v.iter().map(|m| m.exponents().to_vec()).collect();
        assert_eq!(e, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![0, 2], vec![1, 1], vec![2, 0]]);
    }
}
