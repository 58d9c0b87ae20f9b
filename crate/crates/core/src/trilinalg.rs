//! Exact lower-triangular linear algebra.
//!
//! Two inversion routes are provided and kept independent of each other:
//! forward substitution ([`invert_forward`], the default) and the entrywise
//! cofactor formula `a'_{i,j} = (-1)^{i-j} D_{i,j} / (a_{j,j} ⋯ a_{i,i})`
//! ([`invert_cofactor`]), where `D_{i,j}` is the minor on rows `j+1..=i`
//! and columns `j..=i-1`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::coeffs::{CoeffMatrix, ShapeTag};
use crate::error::{invalid, Error, Result};
use crate::exactnum::Rational;

/// Inverse of a lower-triangular matrix by forward substitution.
///
/// Each row is first scaled to integers. Column `j` of the inverse is then
/// solved for `y_i = x_i · b_{j,j} ⋯ b_{i,i}`, which stays integral, so the
/// only rational reduction is one division per entry.
pub fn invert_forward(m: &CoeffMatrix) -> Result<CoeffMatrix> {
    m.check_lower_triangular()?;
    let n = m.rows();
    for d in m.diagonal() {
        d.recip()?;
    }
    let (row_scale, b) = integer_rows(m);
    let columns: Vec<Vec<Rational>> = (0..n)
        .into_par_iter()
        .map(|j| {
            let mut y: Vec<BigInt> = Vec::with_capacity(n - j);
            y.push(BigInt::one());
            let mut diag_product = b[j][j].clone();
            let mut col = vec![Rational::new(row_scale[j].clone(), diag_product.clone()).expect("nonzero diagonal")];
            for i in j + 1..n {
                let mut h = &b[i][j] * &y[0];
                for k in j + 1..i {
                    h *= &b[k][k];
                    let a = &b[i][k];
                    if !a.is_zero() {
                        h += a * &y[k - j];
                    }
                }
                h = -h;
                diag_product *= &b[i][i];
                col.push(Rational::new(&h * &row_scale[j], diag_product.clone()).expect("nonzero diagonal"));
                y.push(h);
            }
            col
        })
        .collect();
    let inv = CoeffMatrix::from_fn(n, n, |i, j| if i >= j { columns[j][i - j].clone() } else { Rational::zero() });
    Ok(inv.with_shape_unchecked(ShapeTag::LowerTriangular))
}

/// Inverse of a lower-triangular matrix from the cofactor formula.
///
/// Rows are scaled to integers first. For a fixed column `j` the minors
/// `D_{j+1,j}, D_{j+2,j}, …` are the leading principal minors of one lower
/// Hessenberg block, so Laplace expansion along the last row yields all of
/// them in a single division-free pass.
pub fn invert_cofactor(m: &CoeffMatrix) -> Result<CoeffMatrix> {
    m.check_lower_triangular()?;
    let n = m.rows();
    for d in m.diagonal() {
        d.recip()?;
    }
    let (scale, b) = integer_rows(m);
    let columns: Vec<Vec<Rational>> = (0..n)
        .into_par_iter()
        .map(|j| {
            let minors = hessenberg_minors(&b, j);
            let mut diag_product = BigInt::one();
            (j..n)
                .map(|i| {
                    diag_product *= &b[i][i];
                    let d = if (i - j) % 2 == 0 { minors[i - j].clone() } else { -&minors[i - j] };
                    Rational::new(d * &scale[j], diag_product.clone()).expect("nonzero diagonal")
                })
                .collect()
        })
        .collect();
    let inv = CoeffMatrix::from_fn(n, n, |i, j| if i >= j { columns[j][i - j].clone() } else { Rational::zero() });
    Ok(inv.with_shape_unchecked(ShapeTag::LowerTriangular))
}

/// Row denominators cleared: returns `(L, B)` with `B[i] = L_i · m[i][..=i]`.
fn integer_rows(m: &CoeffMatrix) -> (Vec<BigInt>, Vec<Vec<BigInt>>) {
    let scale: Vec<BigInt> = (0..m.rows())
        .map(|i| m.row(i)[..=i].iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom())))
        .collect();
    let b = (0..m.rows())
        .map(|i| m.row(i)[..=i].iter().map(|x| x.numer() * (&scale[i] / x.denom())).collect())
        .collect();
    (scale, b)
}

/// `f[r] = D_{j+r, j}` (0-based `j`, `f[0] = 1`) for the integer lower-triangular `b`.
///
/// The block `H` has `H[t][s] = b[j+t][j+s-1]` for `1 <= t, s <= r`, with
/// superdiagonal `H[t][t+1] = b[j+t][j+t]`, and
/// `f_r = Σ_s (-1)^{r-s} H[r][s] f_{s-1} Π_{t=s}^{r-1} H[t][t+1]`.
fn hessenberg_minors(b: &[Vec<BigInt>], j: usize) -> Vec<BigInt> {
    let n = b.len();
    let mut f = Vec::with_capacity(n - j);
    f.push(BigInt::one());
    for r in 1..n - j {
        let row = &b[j + r];
        let mut acc = &row[j] * &f[0];
        for s in 2..=r {
            acc *= &b[j + s - 1][j + s - 1];
            acc = -acc;
            let h = &row[j + s - 1];
            if !h.is_zero() {
                acc += h * &f[s - 1];
            }
        }
        f.push(acc);
    }
    f
}

/// `D_{i,j}` for 1-based `i > j`.
pub fn det_dij(m: &CoeffMatrix, i: usize, j: usize) -> Result<Rational> {
    if j == 0 || i <= j || i > m.rows() {
        return Err(invalid(
            "det_Dij",
            format!("need 1 <= j < i <= {}, got i = {i}, j = {j}", m.rows()),
        ));
    }
    m.check_lower_triangular()?;
    Ok(minor_determinant(m, i - 1, j - 1))
}

/// Determinant of the minor on rows `j+1..=i`, columns `j..=i-1`
/// (0-based) of a lower-triangular `m`.
///
/// The block is lower Hessenberg, so its transpose is upper Hessenberg and
/// each elimination step touches a single row.
fn minor_determinant(m: &CoeffMatrix, i: usize, j: usize) -> Rational {
    let k = i - j;
    if k == 1 {
        return m.get(i, j).clone();
    }
    // t[r][c] = block[c][r] = m[j+1+c][j+r]; nonzero only for c >= r - 1.
    let mut t: Vec<Vec<Rational>> = (0..k)
        .map(|r| (0..k).map(|c| m.get(j + 1 + c, j + r).clone()).collect())
        .collect();
    let mut det = Rational::one();
    for col in 0..k {
        if col + 1 < k && !t[col + 1][col].is_zero() {
            if t[col][col].is_zero() {
                t.swap(col, col + 1);
                det = -det;
            } else {
                let factor = &t[col + 1][col] / &t[col][col];
                let (upper, lower) = t.split_at_mut(col + 1);
                let (pivot_row, target) = (&upper[col], &mut lower[0]);
                for c in col..k {
                    if !pivot_row[c].is_zero() {
                        let delta = &factor * &pivot_row[c];
                        target[c] -= delta;
                    }
                }
            }
        }
        if t[col][col].is_zero() {
            return Rational::zero();
        }
        det *= &t[col][col];
    }
    det
}

/// Determinant of a square rational matrix by Bareiss fraction-free
/// elimination over the integers, with row pivoting.
pub fn bareiss_determinant(rows: &[Vec<Rational>]) -> Result<Rational> {
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(Error::DimensionMismatch("determinant needs a square matrix".into()));
    }
    if n == 0 {
        return Ok(Rational::one());
    }
    // Clear denominators row by row; det(M) = det(scaled) / prod(scales).
    let mut scale = BigInt::one();
    let mut a: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            scale *= &l;
            row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(p) => {
                    a.swap(k, p);
                    sign = -sign;
                }
                None => return Ok(Rational::zero()),
            }
        }
        for r in k + 1..n {
            for c in k + 1..n {
                let num = &a[k][k] * &a[r][c] - &a[r][k] * &a[k][c];
                a[r][c] = num / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let det = sign * &a[n - 1][n - 1];
    Rational::new(det, scale)
}

/// Exact product `p · q`; lower-triangular inputs give a tagged
/// lower-triangular output.
pub fn mat_mul(p: &CoeffMatrix, q: &CoeffMatrix) -> Result<CoeffMatrix> {
    if p.cols() != q.rows() {
        return Err(Error::DimensionMismatch(format!(
            "cannot multiply {}x{} by {}x{}",
            p.rows(),
            p.cols(),
            q.rows(),
            q.cols()
        )));
    }
    let both_lower = p.shape() == ShapeTag::LowerTriangular && q.shape() == ShapeTag::LowerTriangular;
    // Rows of p and columns of q are scaled to integers so each entry is an
    // exact integer dot product followed by a single reduction.
    let row_scale: Vec<BigInt> =
        (0..p.rows()).map(|i| p.row(i).iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))).collect();
    let col_scale: Vec<BigInt> = (0..q.cols())
        .map(|j| (0..q.rows()).fold(BigInt::one(), |acc, k| acc.lcm(q.get(k, j).denom())))
        .collect();
    let pi: Vec<Vec<BigInt>> = (0..p.rows())
        .map(|i| p.row(i).iter().map(|x| x.numer() * (&row_scale[i] / x.denom())).collect())
        .collect();
    let qj: Vec<Vec<BigInt>> = (0..q.cols())
        .map(|j| (0..q.rows()).map(|k| q.get(k, j).numer() * (&col_scale[j] / q.get(k, j).denom())).collect())
        .collect();
    let rows: Vec<Vec<Rational>> = (0..p.rows())
        .into_par_iter()
        .map(|i| {
            (0..q.cols())
                .map(|j| {
                    let (lo, hi) = if both_lower { (j, i + 1) } else { (0, p.cols()) };
                    let mut acc = BigInt::zero();
                    for k in lo..hi {
                        if !pi[i][k].is_zero() && !qj[j][k].is_zero() {
                            acc += &pi[i][k] * &qj[j][k];
                        }
                    }
                    Rational::new(acc, &row_scale[i] * &col_scale[j]).expect("positive scales")
                })
                .collect()
        })
        .collect();
    let product = CoeffMatrix::from_rows(rows)?;
    Ok(if both_lower {
        product.with_shape_unchecked(ShapeTag::LowerTriangular)
    } else {
        product
    })
}

pub fn row_sums(m: &CoeffMatrix) -> Vec<Rational> {
    (0..m.rows()).map(|i| m.row(i).iter().sum()).collect()
}

/// True when every entry of `m` is an exact identity entry.
pub fn is_identity(m: &CoeffMatrix) -> bool {
    m.is_square()
        && (0..m.rows()).all(|i| {
            (0..m.cols()).all(|j| {
                let x = m.get(i, j);
                if i == j {
                    x.is_one()
                } else {
                    x.is_zero()
                }
            })
        })
}

/// Largest absolute numerator or denominator in `m`, in bits.
pub fn max_entry_bits(m: &CoeffMatrix) -> u64 {
    (0..m.rows())
        .flat_map(|i| m.row(i).iter())
        .map(|x| x.numer().abs().bits().max(x.denom().bits()))
        .max()
        .unwrap_or(0)
}
