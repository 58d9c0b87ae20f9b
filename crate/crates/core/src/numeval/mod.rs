//! Direct summation of `ζ(−c, s+c)` and `T(−a, −a; s+2a)` in the region of
//! absolute convergence, with rigorous truncation bounds.
//!
//! Inner sums are exact big integers converted to `f64` once per outer
//! term. The outer range is cut into fixed-size chunks that are summed
//! (possibly in parallel) with compensated summation and reduced in chunk
//! order, so results do not depend on the thread count.

mod riemann;

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

pub use riemann::zeta_ref;

use crate::coeffs::tornheim_decomposition;
use crate::error::{invalid, Error, Result};
use crate::exactnum::{binomial, faulhaber, Rational};
use crate::relations::{basis_representation, relation_family, Provenance, RelationVector};

/// Evaluation points must satisfy `Re(s) > CONVERGENCE_MARGIN`.
pub const CONVERGENCE_MARGIN: f64 = 2.1;
pub const MIN_CUTOFF: u64 = 10;
const CHUNK: u64 = 4096;
const TAIL_SLACK: f64 = 1.0 + 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumericResult {
    pub value: Complex64,
    pub tail_bound: f64,
    pub terms_used: u64,
}

impl Serialize for NumericResult {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("NumericResult", 3)?;
        st.serialize_field("value", &[self.value.re, self.value.im])?;
        st.serialize_field("tail_bound", &self.tail_bound)?;
        st.serialize_field("terms", &self.terms_used)?;
        st.end()
    }
}

fn check_point(op: &'static str, s: Complex64, cutoff: u64) -> Result<()> {
    if s.re.partial_cmp(&CONVERGENCE_MARGIN) != Some(std::cmp::Ordering::Greater) || !s.im.is_finite() {
        return Err(Error::ConvergenceMargin {
            re: s.re,
            margin: CONVERGENCE_MARGIN,
        });
    }
    if cutoff < MIN_CUTOFF {
        return Err(invalid(op, format!("cutoff must be at least {MIN_CUTOFF}, got {cutoff}")));
    }
    Ok(())
}

/// `∫_K^∞ x^{1−σ} dx = K^{2−σ}/(σ−2)`.
fn integral_tail(sigma: f64, cutoff: u64) -> f64 {
    (cutoff as f64).powf(2.0 - sigma) / (sigma - 2.0)
}

/// Truncation bound for `ζ(−c, s+c)` cut at `n <= cutoff`, from
/// `Σ_{m<n} m^c <= n^{c+1}/(c+1)`.
pub fn ez_tail_bound(c: usize, sigma: f64, cutoff: u64) -> f64 {
    integral_tail(sigma, cutoff) / (c as f64 + 1.0) * TAIL_SLACK
}

/// Truncation bound for `T(−a, −a; s+2a)`, from
/// `Σ_{m<N} m^a (N−m)^a <= N^{2a+1}/4^a`.
pub fn tornheim_tail_bound(a: usize, sigma: f64, cutoff: u64) -> f64 {
    integral_tail(sigma, cutoff) / 4f64.powi(a as i32) * TAIL_SLACK
}

/// Neumaier-compensated complex accumulator.
#[derive(Default, Clone, Copy)]
struct Compensated {
    sum: Complex64,
    comp: Complex64,
}

impl Compensated {
    fn add(&mut self, x: Complex64) {
        fn step(sum: &mut f64, comp: &mut f64, x: f64) {
            let t = *sum + x;
            if sum.abs() >= x.abs() {
                *comp += (*sum - t) + x;
            } else {
                *comp += (x - t) + *sum;
            }
            *sum = t;
        }
        step(&mut self.sum.re, &mut self.comp.re, x.re);
        step(&mut self.sum.im, &mut self.comp.im, x.im);
    }

    fn total(&self) -> Complex64 {
        self.sum + self.comp
    }
}

/// `weight · n^{−w}` for an exact integer weight.
fn weighted_power(weight: &BigInt, n: u64, w: Complex64) -> Complex64 {
    if weight.is_zero() {
        return Complex64::zero();
    }
    let ln_n = (n as f64).ln();
    let phase = Complex64::from_polar(1.0, -w.im * ln_n);
    let mag = (-w.re * ln_n).exp();
    if let Some(wf) = weight.to_f64().filter(|x| x.is_finite() && x.abs() < 1e300) {
        if mag > 1e-300 {
            return phase * (wf * mag);
        }
    }
    // Out of f64 range: combine in the log domain.
    let bits = weight.bits();
    let shift = bits.saturating_sub(64);
    let top = (weight >> shift).to_f64().expect("64-bit value");
    let ln_abs = top.abs().ln() + shift as f64 * std::f64::consts::LN_2;
    phase * (ln_abs - w.re * ln_n).exp().copysign(top)
}

fn chunks(cutoff: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    let mut start = 2;
    while start <= cutoff {
        let end = (start + CHUNK - 1).min(cutoff);
        out.push((start, end));
        start = end + 1;
    }
    out
}

fn reduce(parts: Vec<Compensated>) -> Complex64 {
    let mut acc = Compensated::default();
    for p in parts {
        acc.add(p.sum);
        acc.add(p.comp);
    }
    acc.total()
}

/// `Σ_{n=2}^{cutoff} S_c(n) n^{−s−c}` with `S_c(n) = Σ_{m<n} m^c`.
pub fn eval_ez_double(c: usize, s: Complex64, cutoff: u64) -> Result<NumericResult> {
    check_point("eval_ez_double", s, cutoff)?;
    let poly = faulhaber(c);
    let w = s + c as f64;
    let parts: Vec<Compensated> = chunks(cutoff)
        .into_par_iter()
        .map(|(start, end)| {
            let mut acc = Compensated::default();
            let mut power_sum = poly.eval_integer(&BigInt::from(start));
            for n in start..=end {
                acc.add(weighted_power(&power_sum, n, w));
                power_sum += BigInt::from(n).pow(c as u32);
            }
            acc
        })
        .collect();
    Ok(NumericResult {
        value: reduce(parts),
        tail_bound: ez_tail_bound(c, s.re, cutoff),
        terms_used: cutoff - 1,
    })
}

/// `Σ_{m=1}^{N−1} m^a (N−m)^a`, exactly, from power sums.
pub fn tornheim_inner(a: usize, big_n: u64) -> BigInt {
    let sums: Vec<BigInt> = (a..=2 * a).map(|k| faulhaber(k).eval_integer(&BigInt::from(big_n))).collect();
    convolution_from_power_sums(a, big_n, &sums)
}

// sums[i] = S_{a+i}(N)
fn convolution_from_power_sums(a: usize, big_n: u64, sums: &[BigInt]) -> BigInt {
    let n = BigInt::from(big_n);
    let mut acc = BigInt::zero();
    let mut n_pow = BigInt::one(); // N^{a-i}, built from i = a downwards
    for i in (0..=a).rev() {
        let term = binomial(a, i) * &n_pow * &sums[i];
        if i % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
        n_pow *= &n;
    }
    acc
}

/// `Σ_{N=2}^{cutoff} (Σ_{m=1}^{N−1} m^a (N−m)^a) N^{−s−2a}`.
pub fn eval_tornheim(a: usize, s: Complex64, cutoff: u64) -> Result<NumericResult> {
    check_point("eval_tornheim", s, cutoff)?;
    let polys: Vec<_> = (a..=2 * a).map(faulhaber).collect();
    let w = s + 2.0 * a as f64;
    let parts: Vec<Compensated> = chunks(cutoff)
        .into_par_iter()
        .map(|(start, end)| {
            let mut acc = Compensated::default();
            let mut sums: Vec<BigInt> = polys.iter().map(|p| p.eval_integer(&BigInt::from(start))).collect();
            for big_n in start..=end {
                let conv = convolution_from_power_sums(a, big_n, &sums);
                acc.add(weighted_power(&conv, big_n, w));
                let base = BigInt::from(big_n);
                let mut p = base.pow(a as u32);
                for s_k in sums.iter_mut() {
                    *s_k += &p;
                    p *= &base;
                }
            }
            acc
        })
        .collect();
    Ok(NumericResult {
        value: reduce(parts),
        tail_bound: tornheim_tail_bound(a, s.re, cutoff),
        terms_used: cutoff - 1,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct ResidualLine {
    pub label: String,
    pub residual: f64,
    pub bound: f64,
}

/// Outcome of [`numeric_verify`].
#[derive(Debug, Clone, Serialize)]
pub struct NumericReport {
    pub s: [f64; 2],
    pub cutoff: u64,
    pub tol: f64,
    pub bound: f64,
    pub max_residual: f64,
    pub lines: Vec<ResidualLine>,
}

impl NumericReport {
    pub fn passed(&self) -> bool {
        self.max_residual <= self.tol
    }
}

impl fmt::Display for NumericReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:<40} {:>12} {:>12}", "check", "|residual|", "tail bound")?;
        for line in &self.lines {
            writeln!(f, "{:<40} {:>12.3e} {:>12.3e}", line.label, line.residual, line.bound)?;
        }
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(
            f,
            "{status} numeric check at s = {}{:+}i, cutoff {}: max |residual| {:.3e}, tol {:.1e}",
            self.s[0], self.s[1], self.cutoff, self.max_residual, self.tol
        )
    }
}

/// A linear combination over the stacked zeta vector and the Tornheim
/// values `T(−d+1, −d+1; s+2d−2)`.
struct Combination {
    label: String,
    zeta: Vec<Rational>,
    tornheim: Vec<Rational>,
}

fn slot_weight(c: usize, coeff: &Rational) -> f64 {
    let w = coeff.to_f64();
    if c == 0 {
        w / 2.0
    } else {
        w
    }
}

/// Evaluates every relation of `relation_family(N)`, every basis
/// representation with `2m+1 <= N`, and every row of the Tornheim
/// decomposition at `s`, and compares the largest residual with `tol`.
pub fn numeric_verify(n: usize, s: Complex64, cutoff: u64, tol: f64) -> Result<NumericReport> {
    check_point("numeric_verify", s, cutoff)?;
    let family = relation_family(n)?;
    let nprime = family.len();
    let width = 2 * nprime;

    let mut combos: Vec<Combination> = family
        .into_iter()
        .enumerate()
        .map(|(i, r)| Combination {
            label: format!("relation row {}", i + 1),
            zeta: r.coeffs,
            tornheim: Vec::new(),
        })
        .collect();
    for m in 0..=(n - 1) / 2 {
        let rel = RelationVector::from_representation(&basis_representation(m), Provenance::MatrixPath);
        combos.push(Combination {
            label: format!("representation zeta(-{},s+{})", 2 * m + 1, 2 * m + 1),
            zeta: rel.coeffs,
            tornheim: Vec::new(),
        });
    }
    for c in 0..width {
        let mut zeta = vec![Rational::zero(); c + 1];
        zeta[c] = Rational::one();
        let tornheim = tornheim_decomposition(c, nprime)?.into_iter().map(|x| -x).collect();
        let label = if c == 0 { "tornheim zeta(0,s)/2".to_string() } else { format!("tornheim zeta(-{c},s+{c})") };
        combos.push(Combination { label, zeta, tornheim });
    }

    let ez_tails: Vec<f64> = (0..width).map(|c| ez_tail_bound(c, s.re, cutoff)).collect();
    let t_tails: Vec<f64> = (0..nprime).map(|a| tornheim_tail_bound(a, s.re, cutoff)).collect();
    let bounds: Vec<f64> = combos
        .iter()
        .map(|cb| {
            let z: f64 = cb.zeta.iter().enumerate().map(|(c, x)| slot_weight(c, x).abs() * ez_tails[c]).sum();
            let t: f64 = cb.tornheim.iter().enumerate().map(|(a, x)| x.to_f64().abs() * t_tails[a]).sum();
            z + t
        })
        .collect();
    let bound = bounds.iter().cloned().fold(0.0, f64::max);
    if tol < bound {
        return Err(Error::ToleranceTooSmall { tol, bound });
    }

    let ez: Vec<Complex64> = (0..width)
        .map(|c| eval_ez_double(c, s, cutoff).map(|r| r.value))
        .collect::<Result<_>>()?;
    let torn: Vec<Complex64> = (0..nprime)
        .map(|a| eval_tornheim(a, s, cutoff).map(|r| r.value))
        .collect::<Result<_>>()?;

    let lines: Vec<ResidualLine> = combos
        .iter()
        .zip(&bounds)
        .map(|(cb, &b)| {
            let mut acc = Compensated::default();
            for (c, x) in cb.zeta.iter().enumerate() {
                if !x.is_zero() {
                    acc.add(ez[c] * slot_weight(c, x));
                }
            }
            for (a, x) in cb.tornheim.iter().enumerate() {
                if !x.is_zero() {
                    acc.add(torn[a] * x.to_f64());
                }
            }
            ResidualLine {
                label: cb.label.clone(),
                residual: acc.total().norm(),
                bound: b,
            }
        })
        .collect();
    let max_residual = lines.iter().map(|l| l.residual).fold(0.0, f64::max);
    Ok(NumericReport {
        s: [s.re, s.im],
        cutoff,
        tol,
        bound,
        max_residual,
        lines,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::zeta_shift_expansion;

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn oracle(c: usize, s: Complex64) -> Complex64 {
        zeta_shift_expansion(c)
            .q
            .iter()
            .enumerate()
            .map(|(j, q)| zeta_ref(s + (j as f64 - 1.0)) * q.to_f64())
            .sum()
    }

    #[test]
    fn ez_closed_form_at_five() {
        let r = eval_ez_double(0, re(5.0), 100_000).unwrap();
        let expect = zeta_ref(re(4.0)) - zeta_ref(re(5.0));
        assert!((r.value - expect).norm() < 1e-10);
        assert!((r.value.re - 0.045_395_478_6).abs() < 1e-10);
        assert!(r.tail_bound < 1e-15);
        assert_eq!(r.terms_used, 99_999);
        let half = eval_ez_double(1, re(5.0), 100_000).unwrap();
        assert!((half.value * 2.0 - r.value).norm() < 1e-12);
    }

    #[test]
    fn ez_matches_shift_expansion() {
        let r = eval_ez_double(2, re(6.0), 10_000).unwrap();
        let expect = (zeta_ref(re(5.0)) * 2.0 - zeta_ref(re(6.0)) * 3.0 + zeta_ref(re(7.0))) / 6.0;
        assert!((r.value - expect).norm() <= r.tail_bound + 1e-12);
        for c in 0..=12 {
            for s in [re(4.0), re(5.0), re(6.0), Complex64::new(4.0, 3.0)] {
                let r = eval_ez_double(c, s, 20_000).unwrap();
                let diff = (r.value - oracle(c, s)).norm();
                assert!(diff < r.tail_bound + 1e-12, "c={c} s={s}: {diff:e} vs {:e}", r.tail_bound);
            }
        }
    }

    #[test]
    fn precondition_checks() {
        assert!(matches!(eval_ez_double(0, re(2.1), 100), Err(Error::ConvergenceMargin { .. })));
        assert!(matches!(eval_tornheim(0, re(2.05), 100), Err(Error::ConvergenceMargin { .. })));
        assert!(eval_ez_double(0, re(5.0), 9).is_err());
        assert!(eval_ez_double(0, re(f64::NAN), 100).is_err());
    }

    #[test]
    fn tornheim_examples() {
        let t = eval_tornheim(0, re(5.0), 20_000).unwrap();
        let z = eval_ez_double(0, re(5.0), 20_000).unwrap();
        assert!((t.value - z.value).norm() < 1e-14);
        let s = re(6.0);
        let t0 = eval_tornheim(0, s, 10_000).unwrap();
        let t1 = eval_tornheim(1, s, 10_000).unwrap();
        let z2 = eval_ez_double(2, s, 10_000).unwrap();
        let residual = (z2.value - (t0.value * 0.5 - t1.value)).norm();
        assert!(residual < z2.tail_bound + 0.5 * t0.tail_bound + t1.tail_bound);
        let c = eval_tornheim(0, Complex64::new(3.0, 4.0), 1_000).unwrap();
        assert!(c.value.norm().is_finite() && c.tail_bound.is_finite());
    }

    #[test]
    fn tornheim_inner_symmetry() {
        for a in 0..=6usize {
            for big_n in 2..=40u64 {
                let direct: BigInt = (1..big_n)
                    .map(|m| BigInt::from(m).pow(a as u32) * BigInt::from(big_n - m).pow(a as u32))
                    .sum();
                let half: BigInt = (1..=(big_n - 1) / 2)
                    .map(|m| BigInt::from(m).pow(a as u32) * BigInt::from(big_n - m).pow(a as u32))
                    .sum();
                let middle = if big_n % 2 == 0 { BigInt::from(big_n / 2).pow(2 * a as u32) } else { BigInt::zero() };
                assert_eq!(direct, half * 2 + middle);
                assert_eq!(tornheim_inner(a, big_n), direct);
            }
        }
    }

    #[test]
    fn doubling_cutoff() {
        for (c, s) in [(0usize, re(4.0)), (3, re(5.0)), (5, Complex64::new(4.0, 3.0))] {
            let a = eval_ez_double(c, s, 5_000).unwrap();
            let b = eval_ez_double(c, s, 10_000).unwrap();
            assert!(b.tail_bound <= a.tail_bound);
            assert!((a.value - b.value).norm() <= a.tail_bound);
        }
        let a = eval_tornheim(2, re(4.5), 5_000).unwrap();
        let b = eval_tornheim(2, re(4.5), 10_000).unwrap();
        assert!((a.value - b.value).norm() <= a.tail_bound);
    }

    #[test]
    fn huge_weights_use_log_path() {
        let w = BigInt::from(10).pow(400);
        let v = weighted_power(&w, 10, Complex64::new(401.0, 0.0));
        assert!((v.re - 0.1).abs() < 1e-12);
    }

    #[test]
    fn numeric_verify_small() {
        let rep = numeric_verify(2, re(5.0), 20_000, 1e-9).unwrap();
        assert!(rep.passed(), "{rep}");
        assert!(rep.lines[0].residual < 1e-10);
        assert!(matches!(numeric_verify(12, re(2.05), 1000, 1e-6), Err(Error::ConvergenceMargin { .. })));
        assert!(matches!(numeric_verify(4, re(5.0), 100, 1e-12), Err(Error::ToleranceTooSmall { .. })));
    }
}
