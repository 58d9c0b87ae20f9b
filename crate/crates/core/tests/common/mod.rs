#![allow(dead_code)]

use ezbasis::coeffs::CoeffMatrix;
use ezbasis::Rational;

pub fn q(s: &str) -> Rational {
    s.parse().unwrap_or_else(|e| panic!("bad rational {s:?}: {e}"))
}

pub fn mat(rows: &[&[&str]]) -> CoeffMatrix {
    CoeffMatrix::from_rows(rows.iter().map(|r| r.iter().map(|x| q(x)).collect()).collect()).unwrap()
}

pub const A_N12: [[&str; 6]; 12] = [
    ["1", "0", "0", "0", "0", "0"],
    ["1", "0", "0", "0", "0", "0"],
    ["1", "-2", "0", "0", "0", "0"],
    ["1", "-3", "0", "0", "0", "0"],
    ["1", "-4", "2", "0", "0", "0"],
    ["1", "-5", "5", "0", "0", "0"],
    ["1", "-6", "9", "-2", "0", "0"],
    ["1", "-7", "14", "-7", "0", "0"],
    ["1", "-8", "20", "-16", "2", "0"],
    ["1", "-9", "27", "-30", "9", "0"],
    ["1", "-10", "35", "-50", "25", "-2"],
    ["1", "-11", "44", "-77", "55", "-11"],
];

pub const A1_INV_N12: [[&str; 6]; 6] = [
    ["1", "0", "0", "0", "0", "0"],
    ["1/2", "-1/2", "0", "0", "0", "0"],
    ["1/2", "-1", "1/2", "0", "0", "0"],
    ["5/4", "-3", "9/4", "-1/2", "0", "0"],
    ["13/2", "-16", "13", "-4", "1/2", "0"],
    ["227/4", "-140", "115", "-75/2", "25/4", "-1/2"],
];

pub const A2_INV_N12: [[&str; 6]; 6] = [
    ["1", "0", "0", "0", "0", "0"],
    ["1/3", "-1/3", "0", "0", "0", "0"],
    ["2/15", "-1/3", "1/5", "0", "0", "0"],
    ["8/105", "-1/3", "2/5", "-1/7", "0", "0"],
    ["8/105", "-4/9", "11/15", "-10/21", "1/9", "0"],
    ["32/231", "-8/9", "5/3", "-29/21", "5/9", "-1/11"],
];

pub fn golden_matrix<const C: usize>(rows: &[[&str; C]]) -> CoeffMatrix {
    mat(&rows.iter().map(|r| &r[..]).collect::<Vec<_>>())
}

/// Coefficients of ζ(−2m−1, s+2m+1) on ζ(−2k, s+2k), listed from k = m down to k = 0.
pub const REPRESENTATIONS: [&[&str]; 8] = [
    &["1/2"],
    &["3/2", "-1/4"],
    &["5/2", "-5/2", "1/2"],
    &["7/2", "-35/4", "21/2", "-17/8"],
    &["9/2", "-21", "63", "-153/2", "31/2"],
    &["11/2", "-165/4", "231", "-2805/4", "1705/2", "-691/4"],
    &["13/2", "-143/2", "1287/2", "-7293/2", "22165/2", "-26949/2", "5461/2"],
    &["15/2", "-455/4", "3003/2", "-109395/8", "155155/2", "-943215/4", "573405/2", "-929569/16"],
];

/// Coefficients in ascending index order, as stored in `BasisRepresentation::gamma`.
pub fn golden_gamma(m: usize) -> Vec<Rational> {
    REPRESENTATIONS[m].iter().rev().map(|x| q(x)).collect()
}

pub const LATEX_M5: &str = r"\zeta(-11, s + 11)
  &= 11 \zeta(-10, s + 10)/2 - 165 \zeta(-8, s + 8)/4 +231 \zeta(-6, s + 6) \\
  &\quad - 2805 \zeta(-4, s + 4)/4 +1705 \zeta(-2, s + 2)/2 - 691 \zeta(0, s )/4";

pub fn strip_ws(s: &str) -> String {
    s.chars().filter(|c| !c.is_whitespace()).collect()
}
