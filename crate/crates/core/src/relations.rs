//! Linear relations among `ζ(−c, s+c)` and their expression over the
//! even-index basis.

use std::fmt;

use serde::ser::SerializeMap;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::analytic::{pole_table, PoleTable};
use crate::coeffs::{build_matrix_a_half, split_a1_a2};
use crate::error::{Error, Result};
use crate::exactnum::Rational;
use crate::trilinalg::{invert_forward, mat_mul};

/// One of the functions `ζ(−c, s+c)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasisElement {
    pub c: usize,
}

impl BasisElement {
    pub fn latex(&self) -> String {
        if self.c == 0 {
            "\\zeta(0, s)".to_string()
        } else {
            format!("\\zeta(-{c}, s + {c})", c = self.c)
        }
    }
}

impl fmt::Display for BasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c == 0 {
            write!(f, "zeta(0,s)")
        } else {
            write!(f, "zeta(-{c},s+{c})", c = self.c)
        }
    }
}

impl Serialize for BasisElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Dimension of the span of `ζ(−c, s+c)`, `0 <= c <= N`.
pub fn dimension(n: usize) -> usize {
    n / 2 + 1
}

/// The even-index basis `ζ(−c, s+c)`, `c` even, `0 <= c <= N`.
pub fn basis_list(n: usize) -> Vec<BasisElement> {
    (0..=n).step_by(2).map(|c| BasisElement { c }).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    MatrixPath,
    ResiduePath,
}

/// Coefficients of a vanishing combination over
/// `(ζ(0,s)/2, ζ(−1,s+1), ζ(−2,s+2), …)`; index `c` is the `ζ(−c, s+c)`
/// slot, except index 0 which is `ζ(0,s)/2`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RelationVector {
    pub coeffs: Vec<Rational>,
    pub provenance: Provenance,
}

impl RelationVector {
    /// Label of slot `c`.
    pub fn symbol(c: usize) -> String {
        if c == 0 {
            "zeta(0,s)/2".to_string()
        } else {
            BasisElement { c }.to_string()
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    /// The relation `ζ(−2m−1) − Σ γ_{2k} ζ(−2k) − γ_0 ζ(0,s) = 0` in slot form.
    pub fn from_representation(rep: &BasisRepresentation, provenance: Provenance) -> Self {
        let m = rep.m;
        let mut coeffs = vec![Rational::zero(); 2 * m + 2];
        coeffs[2 * m + 1] = Rational::one();
        for (k, g) in rep.gamma.iter().enumerate() {
            coeffs[2 * k] = if k == 0 { -(g * Rational::from(2)) } else { -g.clone() };
        }
        RelationVector { coeffs, provenance }
    }
}

impl fmt::Display for RelationVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("({c})*{}", Self::symbol(i)))
            .collect();
        write!(f, "{} = 0", terms.join(" + "))
    }
}

/// `ζ(−2m−1, s+2m+1) = γ_0 ζ(0,s) + Σ_{k=1}^{m} γ_{2k} ζ(−2k, s+2k)`;
/// `gamma[k]` holds `γ_{2k}`.
#[derive(Debug, Clone, PartialEq)]
pub struct BasisRepresentation {
    pub m: usize,
    pub gamma: Vec<Rational>,
}

impl BasisRepresentation {
    pub fn target(&self) -> BasisElement {
        BasisElement { c: 2 * self.m + 1 }
    }

    /// Coefficient of `ζ(−2k, s+2k)`.
    pub fn gamma_2k(&self, k: usize) -> &Rational {
        &self.gamma[k]
    }

    /// Annihilator form `0 = ζ(−2m−1) + Σ c_{2k} ζ(−2k) + c_0 ζ(0,s)/2`:
    /// returns `(c_0, c_2, …, c_{2m})` with `c_{2k} = −γ_{2k}`, `c_0 = −2γ_0`.
    pub fn annihilator_coeffs(&self) -> Vec<Rational> {
        self.gamma
            .iter()
            .enumerate()
            .map(|(k, g)| if k == 0 { -(g * Rational::from(2)) } else { -g.clone() })
            .collect()
    }

    /// `2γ_0 + Σ_{k>=1} γ_{2k}`, which equals 1 for every valid representation.
    pub fn residue_weight_sum(&self) -> Rational {
        self.gamma
            .iter()
            .enumerate()
            .map(|(k, g)| if k == 0 { g * Rational::from(2) } else { g.clone() })
            .sum()
    }
}

impl Serialize for BasisRepresentation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        struct Coeffs<'a>(&'a [Rational]);
        impl Serialize for Coeffs<'_> {
            fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
                let mut map = serializer.serialize_map(Some(self.0.len()))?;
                for (k, g) in self.0.iter().enumerate() {
                    map.serialize_entry(&(2 * k).to_string(), g)?;
                }
                map.end()
            }
        }
        let mut map = serializer.serialize_map(Some(2))?;
        map.serialize_entry("target", &self.target())?;
        map.serialize_entry("coeffs", &Coeffs(&self.gamma))?;
        map.end()
    }
}

impl<'de> Deserialize<'de> for BasisRepresentation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            target: String,
            coeffs: std::collections::BTreeMap<String, Rational>,
        }
        let raw = Raw::deserialize(deserializer)?;
        let c: usize = raw
            .target
            .strip_prefix("zeta(-")
            .and_then(|rest| rest.split(',').next())
            .and_then(|digits| digits.parse().ok())
            .filter(|c| c % 2 == 1)
            .ok_or_else(|| D::Error::custom(format!("bad target {:?}", raw.target)))?;
        let m = (c - 1) / 2;
        let gamma = (0..=m)
            .map(|k| {
                raw.coeffs
                    .get(&(2 * k).to_string())
                    .cloned()
                    .ok_or_else(|| D::Error::custom(format!("missing coefficient {}", 2 * k)))
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        if raw.coeffs.len() != m + 1 {
            return Err(D::Error::custom("unexpected coefficient keys"));
        }
        Ok(BasisRepresentation { m, gamma })
    }
}

/// Number of odd-index functions `ζ(−1), ζ(−3), …` with index at most `N`.
fn odd_count(n: usize) -> usize {
    n.div_ceil(2)
}

/// All relations read off row by row from `A1⁻¹ z1 − A2⁻¹ z2 = 0`.
///
/// The matrices are sized so every odd-index function up to `ζ(−N, s+N)`
/// is covered: `⌊N/2⌋` rows for even `N`, one more for odd `N`.
pub fn relation_family(n: usize) -> Result<Vec<RelationVector>> {
    if n < 2 {
        return Err(crate::error::invalid("relation_family", format!("N must be at least 2, got {n}")));
    }
    Ok(relation_family_half(odd_count(n)))
}

/// Relations for an explicit half-size `N'`.
pub fn relation_family_half(nprime: usize) -> Vec<RelationVector> {
    let (a1, a2) = split_a1_a2(&build_matrix_a_half(nprime)).expect("A1, A2 are triangular");
    let inv1 = invert_forward(&a1).expect("A1 is invertible");
    let inv2 = invert_forward(&a2).expect("A2 is invertible");
    (0..nprime)
        .map(|i| {
            let mut coeffs = vec![Rational::zero(); 2 * nprime];
            for j in 0..=i {
                coeffs[2 * j] = inv1.get(i, j).clone();
                coeffs[2 * j + 1] = -inv2.get(i, j);
            }
            RelationVector {
                coeffs,
                provenance: Provenance::MatrixPath,
            }
        })
        .collect()
}

/// Row `m+1` of `A2·A1⁻¹`, with the `ζ(0,s)/2` slot folded into `γ_0`.
pub fn basis_representation(m: usize) -> BasisRepresentation {
    basis_representation_with(m, m + 1).expect("N' = m + 1 is large enough")
}

/// Same as [`basis_representation`] with matrices of half-size `nprime`.
pub fn basis_representation_with(m: usize, nprime: usize) -> Result<BasisRepresentation> {
    if nprime < m + 1 {
        return Err(crate::error::invalid(
            "basis_representation",
            format!("N' = {nprime} is too small for m = {m}"),
        ));
    }
    let (a1, a2) = split_a1_a2(&build_matrix_a_half(nprime))?;
    let ratio = mat_mul(&a2, &invert_forward(&a1)?)?;
    let mut gamma: Vec<Rational> = ratio.row(m)[..=m].to_vec();
    gamma[0] = &gamma[0] / Rational::from(2);
    Ok(BasisRepresentation { m, gamma })
}

/// Residue of `ζ(−n, s+n)` at `s = location`, zero where it is analytic.
fn residue_at(tables: &[PoleTable], n: usize, location: i64) -> Rational {
    tables[n].residue_at(location).cloned().unwrap_or_else(Rational::zero)
}

/// The basis coefficients recovered by matching residues pole by pole.
///
/// The relation `ζ(−2m−1) − Σ_k γ_{2k} ζ(−2k) − γ_0 ζ(0,s)` must have zero
/// residue everywhere. At `s = −2l` only `ζ(−2k)` with `k > l` contribute,
/// so walking `l = m−1, …, 0` fixes `γ_{2l+2}` one at a time. The `s = 1`
/// residues then fix `γ_0`, and the `s = 2` residues are checked as an
/// extra consistency condition.
pub fn residue_system_representation(m: usize) -> Result<BasisRepresentation> {
    let mut gamma = vec![Rational::zero(); m + 1];
    let target = 2 * m + 1;
    let tables: Vec<PoleTable> = (0..=target.max(2)).map(pole_table).collect();
    let residue_at = |n: usize, location: i64| residue_at(&tables, n, location);
    for level in (0..m).rev() {
        let location = -2 * level as i64;
        let mut rhs = residue_at(target, location);
        for (k, g) in gamma.iter().enumerate().skip(level + 2) {
            rhs -= g * residue_at(2 * k, location);
        }
        let pivot = residue_at(2 * level + 2, location);
        gamma[level + 1] = rhs.checked_div(&pivot).map_err(|_| {
            Error::Verification(format!("residue system for m = {m} is singular at s = {location}"))
        })?;
    }

    // s = 1: residue −1/2 for every n >= 1 and −1 for ζ(0,s).
    let tail: Rational = gamma[1..].iter().sum();
    let r1 = |n: usize| residue_at(n, 1);
    gamma[0] = (r1(target) - &tail * r1(2)) / r1(0);

    // s = 2: residue 1/(n+1).
    let mut s2 = residue_at(target, 2) - &gamma[0] * residue_at(0, 2);
    for (k, g) in gamma.iter().enumerate().skip(1) {
        s2 -= g * residue_at(2 * k, 2);
    }
    if !s2.is_zero() {
        return Err(Error::Verification(format!(
            "residue system for m = {m} leaves residue {s2} at s = 2"
        )));
    }
    Ok(BasisRepresentation { m, gamma })
}
