//! Bernoulli numbers, ζ at non-positive integers, generalized binomial
//! coefficients and Faulhaber power-sum polynomials.

use std::sync::{LazyLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::Rational;

static BERNOULLI: LazyLock<RwLock<Vec<Rational>>> =
    LazyLock::new(|| RwLock::new(vec![Rational::one()]));

/// Bernoulli number `B_n` with the convention `B_1 = -1/2`.
///
/// Computed from `sum_{k=0}^{n} C(n+1, k) B_k = 0` and memoized.
pub fn bernoulli(n: usize) -> Rational {
    if let Some(b) = BERNOULLI.read().expect("bernoulli cache poisoned").get(n) {
        return b.clone();
    }
    let mut cache = BERNOULLI.write().expect("bernoulli cache poisoned");
    while cache.len() <= n {
        let k = cache.len();
        // Row k+1 of Pascal's triangle, accumulated term by term.
        let mut binom = BigInt::one();
        let mut acc = Rational::zero();
        for (j, b) in cache.iter().enumerate() {
            if !b.is_zero() {
                acc += Rational::from_integer(binom.clone()) * b;
            }
            binom = binom * (k + 1 - j) / (j + 1);
        }
        let bk = -acc / Rational::from_integer(BigInt::from(k + 1));
        cache.push(bk);
    }
    cache[n].clone()
}

/// Riemann ζ(−k) for `k >= 0`: `ζ(0) = −1/2`, otherwise `−B_{k+1}/(k+1)`.
pub fn zeta_neg(k: usize) -> Rational {
    if k == 0 {
        return Rational::frac(-1, 2);
    }
    -bernoulli(k + 1) / Rational::from_integer(BigInt::from(k + 1))
}

/// `x (x−1) ⋯ (x−k+1) / k!` for rational `x`.
pub fn gen_binomial(x: &Rational, k: usize) -> Rational {
    let mut acc = Rational::one();
    let mut factor = x.clone();
    for i in 1..=k {
        acc = acc * &factor / Rational::from_integer(BigInt::from(i));
        factor -= Rational::one();
    }
    acc
}

/// Ordinary binomial coefficient `C(n, k)` as a big integer.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `sum_{m=1}^{n-1} m^c` as a polynomial in `n` of degree `c + 1`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FaulhaberPoly {
    pub c: usize,
    /// `coeffs[k]` multiplies `n^k`.
    pub coeffs: Vec<Rational>,
}

impl FaulhaberPoly {
    pub fn degree(&self) -> usize {
        self.c + 1
    }

    pub fn eval(&self, n: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, a| acc * n + a)
    }

    /// Evaluates at a non-negative integer; the result is always an integer.
    pub fn eval_integer(&self, n: &BigInt) -> BigInt {
        let v = self.eval(&Rational::from_integer(n.clone()));
        debug_assert!(v.is_integer());
        v.numer().clone()
    }
}

/// Faulhaber's formula with `B_1 = −1/2`:
/// `sum_{m=0}^{n-1} m^c = 1/(c+1) sum_{j=0}^{c} C(c+1, j) B_j n^{c+1-j}`.
/// For `c = 0` the `m = 0` term (`0^0 = 1`) is removed.
pub fn faulhaber(c: usize) -> FaulhaberPoly {
    let mut coeffs = vec![Rational::zero(); c + 2];
    let scale = Rational::from_integer(BigInt::from(c + 1));
    for j in 0..=c {
        let b = bernoulli(j);
        if b.is_zero() {
            continue;
        }
        coeffs[c + 1 - j] = Rational::from_integer(binomial(c + 1, j)) * b / &scale;
    }
    if c == 0 {
        coeffs[0] -= Rational::one();
    }
    FaulhaberPoly { c, coeffs }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Independent oracle: B_n via the Akiyama–Tanigawa algorithm, which
    /// yields B_1 = +1/2; sign-adjusted below.
    fn bernoulli_akiyama_tanigawa(n: usize) -> Rational {
        let mut a: Vec<Rational> = Vec::with_capacity(n + 1);
        for m in 0..=n {
            a.push(Rational::frac(1, m as i64 + 1));
            for j in (1..=m).rev() {
                a[j - 1] = Rational::from(j as i64) * (&a[j - 1] - &a[j]);
            }
        }
        if n == 1 {
            -a[0].clone()
        } else {
            a[0].clone()
        }
    }

    fn power_sum(c: u32, n: u64) -> BigInt {
        (1..n).map(|m| BigInt::from(m).pow(c)).sum()
    }

    #[test]
    fn bernoulli_examples() {
        assert_eq!(bernoulli(0), Rational::one());
        assert_eq!(bernoulli(1), Rational::frac(-1, 2));
        assert_eq!(bernoulli(2), Rational::frac(1, 6));
        assert_eq!(bernoulli(12), Rational::frac(-691, 2730));
        assert_eq!(bernoulli(16), Rational::frac(-3617, 510));
    }

    #[test]
    fn bernoulli_matches_independent_algorithm() {
        for n in 0..=40 {
            assert_eq!(bernoulli(n), bernoulli_akiyama_tanigawa(n), "B_{n}");
        }
    }

    #[test]
    fn odd_bernoulli_vanish() {
        for n in 0..60 {
            assert!(bernoulli(2 * n + 3).is_zero());
        }
    }

    #[test]
    fn zeta_neg_examples() {
        assert_eq!(zeta_neg(0), Rational::frac(-1, 2));
        assert_eq!(zeta_neg(1), Rational::frac(-1, 12));
        assert_eq!(zeta_neg(3), Rational::frac(1, 120));
        assert_eq!(zeta_neg(4), Rational::zero());
        assert_eq!(zeta_neg(11), Rational::frac(691, 32760));
        for k in 1..40 {
            assert!(zeta_neg(2 * k).is_zero());
            assert!(!zeta_neg(2 * k - 1).is_zero());
        }
    }

    #[test]
    fn gen_binomial_examples() {
        assert_eq!(gen_binomial(&Rational::from(-2), 1), Rational::from(-2));
        assert_eq!(gen_binomial(&Rational::from(-3), 2), Rational::from(6));
        assert_eq!(gen_binomial(&Rational::from(-1), 7), Rational::from(-1));
        assert_eq!(gen_binomial(&Rational::frac(1, 2), 0), Rational::one());
        for m in 0..10 {
            assert_eq!(gen_binomial(&Rational::from(-1), 2 * m + 1), Rational::from(-1));
        }
        assert_eq!(gen_binomial(&Rational::from(10), 3), Rational::from_integer(binomial(10, 3)));
    }

    #[test]
    fn faulhaber_examples() {
        let f1 = faulhaber(1);
        assert_eq!(f1.coeffs, vec![Rational::zero(), Rational::frac(-1, 2), Rational::frac(1, 2)]);
        let f2 = faulhaber(2);
        assert_eq!(
            f2.coeffs,
            vec![Rational::zero(), Rational::frac(1, 6), Rational::frac(-1, 2), Rational::frac(1, 3)]
        );
        let f3 = faulhaber(3);
        assert_eq!(
            f3.coeffs,
            vec![
                Rational::zero(),
                Rational::zero(),
                Rational::frac(1, 4),
                Rational::frac(-1, 2),
                Rational::frac(1, 4)
            ]
        );
        assert_eq!(faulhaber(0).coeffs, vec![Rational::from(-1), Rational::one()]);
        for c in [2u32, 3] {
            let f = faulhaber(c as usize);
            for n in 1..=20u64 {
                assert_eq!(f.eval_integer(&BigInt::from(n)), power_sum(c, n));
            }
        }
    }

    #[test]
    fn faulhaber_matches_brute_force() {
        for c in 0..=30usize {
            let f = faulhaber(c);
            assert_eq!(f.coeffs[c + 1], Rational::frac(1, c as i64 + 1));
            assert_eq!(f.eval(&Rational::one()), Rational::zero());
            assert_eq!(f.eval(&Rational::from(2)), Rational::one());
            for n in u64::from(c == 0)..=50 {
                assert_eq!(f.eval_integer(&BigInt::from(n)), power_sum(c as u32, n), "c={c} n={n}");
            }
        }
    }

    proptest! {
        #[test]
        fn gen_binomial_pascal_rule(p in -200i64..200, q in 1i64..50, k in 1usize..=20) {
            let x = Rational::frac(p, q);
            let x1 = &x - Rational::one();
            prop_assert_eq!(
                gen_binomial(&x, k),
                gen_binomial(&x1, k) + gen_binomial(&x1, k - 1)
            );
        }
    }
}
