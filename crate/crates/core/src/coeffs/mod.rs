//! The integer coefficient matrix `A = (a_{c,d})` and its odd/even row
//! submatrices.
//!
//! Row `r` of `A` decomposes `m^{r-1} + n^{r-1}` over the blocks
//! `m^{d-1} n^{d-1} (m+n)^{r-2d+1}`. Row 1 carries the halved constant
//! `(m^0 + n^0)/2 = 1`, which is why the first entry of the even-index
//! zeta vector is `ζ(0,s)/2`.

mod bivariate;
mod matrix;

use std::sync::{LazyLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

pub use bivariate::BivariatePoly;
pub use matrix::{CoeffMatrix, ShapeTag};

use crate::error::{invalid, Error, Result};
use crate::exactnum::Rational;
use crate::report::VerificationReport;

// rows[r-1] holds a_{r,1..=len}; entries past `len` are zero.
static A_ROWS: LazyLock<RwLock<Vec<Vec<BigInt>>>> = LazyLock::new(|| {
    let one = || BigInt::one();
    RwLock::new(vec![
        vec![one()],
        vec![one()],
        vec![one(), BigInt::from(-2)],
    ])
});

fn ensure_rows(r: usize) {
    if A_ROWS.read().expect("coefficient cache poisoned").len() >= r {
        return;
    }
    let mut rows = A_ROWS.write().expect("coefficient cache poisoned");
    while rows.len() < r {
        let next = rows.len() + 1;
        let prev = &rows[next - 2];
        let prev2 = &rows[next - 3];
        let len = next.div_ceil(2);
        let mut row = Vec::with_capacity(len);
        row.push(BigInt::one());
        // a_{r,e} = a_{r-1,e} - a_{r-2,e-1}
        for e in 2..=len {
            let up = prev.get(e - 1).cloned().unwrap_or_default();
            let diag = prev2.get(e - 2).cloned().unwrap_or_default();
            row.push(up - diag);
        }
        rows.push(row);
    }
}

/// `a_{r,1..=cols}` as integers.
pub fn coeff_row(r: usize, cols: usize) -> Vec<BigInt> {
    assert!(r >= 1, "rows are 1-based");
    ensure_rows(r);
    let rows = A_ROWS.read().expect("coefficient cache poisoned");
    let row = &rows[r - 1];
    (0..cols).map(|d| row.get(d).cloned().unwrap_or_else(BigInt::zero)).collect()
}

/// The entry `a_{c,d}` (both indices 1-based).
pub fn coeff_a(c: usize, d: usize) -> Result<Rational> {
    if c == 0 || d == 0 {
        return Err(invalid("coeff_a", format!("indices are 1-based, got ({c}, {d})")));
    }
    Ok(Rational::from_integer(coeff_row(c, d).pop().expect("d >= 1")))
}

/// `⌊N/2⌋`, the half-size used for a given `N`.
pub fn half_size(n: usize) -> usize {
    n / 2
}

/// The `2N' x N'` matrix `(a_{c,d})` with `N' = ⌊N/2⌋`.
pub fn build_matrix_a(n: usize) -> Result<CoeffMatrix> {
    if n < 2 {
        return Err(invalid("build_matrix_A", format!("N must be at least 2, got {n}")));
    }
    Ok(build_matrix_a_half(half_size(n)))
}

/// `A` for an explicit half-size `N' >= 1`.
pub fn build_matrix_a_half(nprime: usize) -> CoeffMatrix {
    let rows: Vec<Vec<Rational>> = (1..=2 * nprime)
        .map(|r| coeff_row(r, nprime).into_iter().map(Rational::from_integer).collect())
        .collect();
    CoeffMatrix::from_rows(rows).expect("rows have uniform length")
}

/// Splits `A` into the odd-row block `A1` and even-row block `A2`, both
/// validated lower triangular with nonzero diagonals.
pub fn split_a1_a2(a: &CoeffMatrix) -> Result<(CoeffMatrix, CoeffMatrix)> {
    if a.rows() != 2 * a.cols() {
        return Err(Error::DimensionMismatch(format!(
            "A must be 2N' x N', got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    let n = a.cols();
    let a1 = CoeffMatrix::from_fn(n, n, |i, j| a.get(2 * i, j).clone());
    let a2 = CoeffMatrix::from_fn(n, n, |i, j| a.get(2 * i + 1, j).clone());
    Ok((a1.into_lower_triangular()?, a2.into_lower_triangular()?))
}

/// `(a_{e+1,1}, ..., a_{e+1,N'})`: the coefficients with
/// `m^e + n^e = sum_d a_{e+1,d} m^{d-1} n^{d-1} (m+n)^{e-2d+2}` for `e >= 1`.
pub fn power_sum_decomposition(e: usize, nprime: usize) -> Result<Vec<Rational>> {
    if nprime == 0 || e + 1 > 2 * nprime {
        return Err(invalid(
            "power_sum_decomposition",
            format!("need e + 1 <= 2N', got e = {e}, N' = {nprime}"),
        ));
    }
    Ok(coeff_row(e + 1, nprime).into_iter().map(Rational::from_integer).collect())
}

/// Expands `sum_d a_{e+1,d} m^{d-1} n^{d-1} (m+n)^{e-2d+2}` symbolically.
pub fn expand_power_sum_row(e: usize) -> std::result::Result<BivariatePoly, String> {
    let row = coeff_row(e + 1, (e + 2) / 2 + 1);
    let mut poly = BivariatePoly::zero();
    for (idx, a) in row.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let d = idx + 1;
        let exp = e as i64 - 2 * d as i64 + 2;
        if exp < 0 {
            return Err(format!("e = {e}: a_{{{},{d}}} = {a} multiplies a negative power", e + 1));
        }
        poly.add_block(&Rational::from_integer(a.clone()), (d - 1) as u32, exp as u32);
    }
    Ok(poly)
}

/// Checks the power-sum identity for every `0 <= e <= e_max` by exact
/// bivariate expansion. For `e = 0` the target is the halved constant 1.
pub fn verify_power_sum_identity(e_max: usize) -> VerificationReport {
    ensure_rows(e_max + 1);
    let outcomes: Vec<Option<String>> = (0..=e_max)
        .into_par_iter()
        .map(|e| {
            let expanded = match expand_power_sum_row(e) {
                Ok(p) => p,
                Err(msg) => return Some(msg),
            };
            let target = if e == 0 {
                BivariatePoly::monomial(Rational::one(), 0, 0)
            } else {
                BivariatePoly::power_sum(e as u32)
            };
            (expanded != target).then(|| format!("e = {e}: expansion differs from m^{e} + n^{e}"))
        })
        .collect();
    let mut report = VerificationReport::new(format!("power-sum identity, e <= {e_max}"));
    for outcome in outcomes {
        report.record(outcome.is_none(), || outcome.clone().unwrap_or_default());
    }
    report
}

/// Coefficients `(a_{c+1,d}/2)_d` expressing the `c`-th entry of the
/// stacked zeta vector over `T(-d+1, -d+1; s+2d-2)`.
///
/// The entry is `ζ(-c, s+c)` for `c >= 1` and `ζ(0,s)/2` for `c = 0`.
pub fn tornheim_decomposition(c: usize, nprime: usize) -> Result<Vec<Rational>> {
    if nprime == 0 || c + 1 > 2 * nprime {
        return Err(invalid(
            "tornheim_decomposition",
            format!("need c + 1 <= 2N', got c = {c}, N' = {nprime}"),
        ));
    }
    let half = Rational::frac(1, 2);
    Ok(power_sum_decomposition(c, nprime)?
        .into_iter()
        .map(|a| a * &half)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn r(n: i64) -> Rational {
        Rational::from(n)
    }

    #[test]
    fn recurrence_entries() {
        assert_eq!(coeff_a(3, 2).unwrap(), r(-2));
        assert_eq!(coeff_a(7, 3).unwrap(), r(9));
        assert_eq!(coeff_a(12, 5).unwrap(), r(55));
        assert_eq!(coeff_a(1, 4).unwrap(), r(0));
        assert_eq!(coeff_a(3, 3).unwrap(), r(0));
        assert!(coeff_a(0, 1).is_err());
    }

    #[test]
    fn small_and_odd_sizes() {
        let a2 = build_matrix_a(2).unwrap();
        assert_eq!(a2, CoeffMatrix::from_rows(vec![vec![r(1)], vec![r(1)]]).unwrap());
        assert_eq!(build_matrix_a(13).unwrap(), build_matrix_a(12).unwrap());
        assert!(build_matrix_a(1).is_err());
        assert!(build_matrix_a(0).is_err());
    }

    #[test]
    fn structural_invariants() {
        for nprime in 1..=60 {
            let a = build_matrix_a_half(nprime);
            for c in 0..2 * nprime {
                assert_eq!(a.get(c, 0), &r(1));
            }
            for d in 1..nprime {
                assert!(a.get(0, d).is_zero() && a.get(1, d).is_zero());
            }
            let (a1, a2) = split_a1_a2(&a).unwrap();
            for i in 0..nprime {
                let expect1 = if i == 0 { 1 } else if i % 2 == 1 { -2 } else { 2 };
                let sign = if i % 2 == 0 { 1 } else { -1 };
                assert_eq!(a1.get(i, i), &r(expect1));
                assert_eq!(a2.get(i, i), &r(sign * (2 * i as i64 + 1)));
            }
            if nprime > 1 {
                assert_eq!(build_matrix_a_half(nprime + 1).top_left(2 * nprime, nprime), a);
            }
        }
    }

    #[test]
    fn decomposition_examples() {
        let pad = |v: &[i64], n: usize| {
            let mut out: Vec<Rational> = v.iter().map(|&x| r(x)).collect();
            out.resize(n, Rational::zero());
            out
        };
        assert_eq!(power_sum_decomposition(2, 6).unwrap(), pad(&[1, -2], 6));
        assert_eq!(power_sum_decomposition(4, 6).unwrap(), pad(&[1, -4, 2], 6));
        assert_eq!(power_sum_decomposition(1, 6).unwrap(), pad(&[1], 6));
        assert!(power_sum_decomposition(12, 6).is_err());

        let t0 = tornheim_decomposition(0, 6).unwrap();
        assert_eq!(t0[0], Rational::frac(1, 2));
        assert!(t0[1..].iter().all(Rational::is_zero));
        let t2 = tornheim_decomposition(2, 6).unwrap();
        assert_eq!(&t2[..2], &[Rational::frac(1, 2), r(-1)]);
        let t11 = tornheim_decomposition(11, 6).unwrap();
        let expect: Vec<Rational> = ["1/2", "-11/2", "22", "-77/2", "55/2", "-11/2"]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect();
        assert_eq!(t11, expect);
    }

    #[test]
    fn power_sum_identity_small() {
        assert!(verify_power_sum_identity(2).passed());
        let rep = verify_power_sum_identity(11);
        assert!(rep.passed(), "{rep}");
        assert_eq!(rep.checked, 12);
    }

    #[test]
    fn decomposition_evaluates_exactly() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(0x5eed);
        let nprime = 31;
        for e in 1..=60usize {
            let coeffs = power_sum_decomposition(e, nprime).unwrap();
            for _ in 0..50 {
                let m = BigInt::from(rng.gen_range(1..=1000u32));
                let n = BigInt::from(rng.gen_range(1..=1000u32));
                let s = &m + &n;
                let mut acc = BigInt::zero();
                for (idx, a) in coeffs.iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    let exp = (e + 2 - 2 * (idx + 1)) as u32;
                    acc += a.numer() * (&m * &n).pow(idx as u32) * s.pow(exp);
                }
                assert_eq!(acc, m.pow(e as u32) + n.pow(e as u32), "e={e}");
            }
        }
    }
}
