use std::collections::BTreeMap;
use std::ops::{AddAssign, Mul};

use num_bigint::BigInt;

use crate::exactnum::{binomial, Rational};

/// Polynomial in two variables `m`, `n`; `terms[(i, j)]` is the coefficient
/// of `m^i n^j`. Zero coefficients are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BivariatePoly {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl BivariatePoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(coeff: Rational, i: u32, j: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(i, j, coeff);
        p
    }

    /// `m^e + n^e` (which is `2` when `e = 0`).
    pub fn power_sum(e: u32) -> Self {
        let mut p = Self::monomial(Rational::one(), e, 0);
        p.add_term(0, e, Rational::one());
        p
    }

    /// `(m + n)^k` by the binomial theorem.
    pub fn binomial_power(k: u32) -> Self {
        let mut p = Self::zero();
        for i in 0..=k {
            p.add_term(i, k - i, Rational::from_integer(binomial(k as usize, i as usize)));
        }
        p
    }

    pub fn add_term(&mut self, i: u32, j: u32, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry((i, j)).or_insert_with(Rational::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn coeff(&self, i: u32, j: u32) -> Rational {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_symmetric(&self) -> bool {
        self.terms.iter().all(|(&(i, j), c)| self.terms.get(&(j, i)) == Some(c))
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &Rational)> {
        self.terms.iter().map(|(&k, v)| (k, v))
    }

    pub fn eval(&self, m: &BigInt, n: &BigInt) -> Rational {
        self.terms
            .iter()
            .map(|(&(i, j), c)| c * Rational::from_integer(m.pow(i) * n.pow(j)))
            .sum()
    }

    /// Adds `coeff * m^a n^a (m+n)^b`, expanded.
    pub fn add_block(&mut self, coeff: &Rational, a: u32, b: u32) {
        if coeff.is_zero() {
            return;
        }
        for i in 0..=b {
            let c = coeff * Rational::from_integer(binomial(b as usize, i as usize));
            self.add_term(a + i, a + b - i, c);
        }
    }
}

impl AddAssign<&BivariatePoly> for BivariatePoly {
    fn add_assign(&mut self, rhs: &BivariatePoly) {
        for (&(i, j), c) in &rhs.terms {
            self.add_term(i, j, c.clone());
        }
    }
}

impl Mul for &BivariatePoly {
    type Output = BivariatePoly;

    fn mul(self, rhs: &BivariatePoly) -> BivariatePoly {
        let mut out = BivariatePoly::zero();
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &rhs.terms {
                out.add_term(i1 + i2, j1 + j2, c1 * c2);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn block_matches_product() {
        // m^2 n^2 (m+n)^3 both ways
        let mut direct = BivariatePoly::zero();
        direct.add_block(&Rational::from(3), 2, 3);
        let product = &BivariatePoly::monomial(Rational::from(3), 2, 2) * &BivariatePoly::binomial_power(3);
        assert_eq!(direct, product);
        assert!(direct.is_symmetric());
    }

    #[test]
    fn cancellation_removes_terms() {
        let mut p = BivariatePoly::power_sum(3);
        p.add_term(3, 0, Rational::from(-1));
        p.add_term(0, 3, Rational::from(-1));
        assert!(p.is_zero());
        assert_eq!(BivariatePoly::power_sum(0).coeff(0, 0), Rational::from(2));
    }
}
