//! Poles and residues of `ζ(−n, s+n)`, and the exact expansion of each
//! such function over shifted Riemann zeta functions `ζ(s+j−1)`.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{invalid, Error, Result};
use crate::exactnum::{faulhaber, gen_binomial, zeta_neg, Rational};
use crate::relations::{basis_representation, relation_family, Provenance, RelationVector};
use crate::report::VerificationReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PoleSource {
    /// `s = 2`, residue `1/(n+1)`.
    SEqTwo,
    /// `s = 1`, residue `ζ(0)` (doubled for `n = 0`).
    SEqOne,
    /// `s = −2k`, residue `binom(2k−n, 2k+1) ζ(−2k−1)`.
    SEqMinusTwoK(usize),
}

impl PoleSource {
    fn for_location(location: i64) -> Self {
        match location {
            2 => PoleSource::SEqTwo,
            1 => PoleSource::SEqOne,
            s => PoleSource::SEqMinusTwoK((-s / 2) as usize),
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            PoleSource::SEqTwo => "s_eq_2",
            PoleSource::SEqOne => "s_eq_1",
            PoleSource::SEqMinusTwoK(_) => "s_eq_minus_2k",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PoleRecord {
    pub location: i64,
    pub residue: Rational,
    pub source: PoleSource,
}

impl PoleRecord {
    /// Symbolic form of the residue for the table of `ζ(−n, s+n)`.
    pub fn annotation(&self, n: usize) -> String {
        match self.source {
            PoleSource::SEqTwo => format!("1/{}", n + 1),
            PoleSource::SEqOne if n == 0 => "2 zeta(0)".to_string(),
            PoleSource::SEqOne => "zeta(0)".to_string(),
            PoleSource::SEqMinusTwoK(k) => {
                format!("binom({}, {}) zeta({})", 2 * k as i64 - n as i64, 2 * k + 1, -(2 * k as i64) - 1)
            }
        }
    }
}

impl Serialize for PoleRecord {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("PoleRecord", 2)?;
        s.serialize_field("s", &self.location)?;
        s.serialize_field("residue", &self.residue)?;
        s.end()
    }
}

/// Poles of `ζ(−n, s+n)`, sorted by descending location.
#[derive(Debug, Clone, PartialEq)]
pub struct PoleTable {
    pub n: usize,
    pub records: Vec<PoleRecord>,
}

impl PoleTable {
    pub fn residue_at(&self, location: i64) -> Option<&Rational> {
        self.records.iter().find(|r| r.location == location).map(|r| &r.residue)
    }

    pub fn locations(&self) -> Vec<i64> {
        self.records.iter().map(|r| r.location).collect()
    }
}

impl Serialize for PoleTable {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("PoleTable", 2)?;
        s.serialize_field("n", &self.n)?;
        s.serialize_field("poles", &self.records)?;
        s.end()
    }
}

fn record(location: i64, residue: Rational) -> PoleRecord {
    PoleRecord {
        location,
        residue,
        source: PoleSource::for_location(location),
    }
}

/// Pole locations and exact residues of `ζ(−n, s+n)`.
pub fn pole_table(n: usize) -> PoleTable {
    let mut records = vec![record(2, Rational::frac(1, n as i64 + 1))];
    if n == 0 {
        records.push(record(1, zeta_neg(0) * Rational::from(2)));
    } else {
        records.push(record(1, zeta_neg(0)));
    }
    for k in 0..n / 2 {
        let upper = Rational::from(2 * k as i64 - n as i64);
        let residue = gen_binomial(&upper, 2 * k + 1) * zeta_neg(2 * k + 1);
        records.push(record(-2 * k as i64, residue));
    }
    PoleTable { n, records }
}

/// `ζ(−c, s+c) = Σ_{j=0}^{c} q_j ζ(s+j−1)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ZetaShiftExpansion {
    pub c: usize,
    pub q: Vec<Rational>,
}

impl ZetaShiftExpansion {
    /// Human-readable form, e.g. `1/4*zeta(s-1) - 1/2*zeta(s) + 1/4*zeta(s+1)`.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (j, q) in self.q.iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            let arg = match j {
                0 => "s-1".to_string(),
                1 => "s".to_string(),
                _ => format!("s+{}", j - 1),
            };
            let sign = match (out.is_empty(), q.is_negative()) {
                (true, false) => "",
                (true, true) => "-",
                (false, false) => " + ",
                (false, true) => " - ",
            };
            out.push_str(&format!("{sign}{}*zeta({arg})", q.abs()));
        }
        out
    }
}

/// Substitutes Faulhaber's polynomial into `Σ_{n>=2} (Σ_{m<n} m^c) n^{−s−c}`.
pub fn zeta_shift_expansion(c: usize) -> ZetaShiftExpansion {
    let poly = faulhaber(c);
    let q = (0..=c + 1).map(|j| poly.coeffs[c + 1 - j].clone()).collect();
    ZetaShiftExpansion { c, q }
}

/// Pole table read off the ζ-shift expansion: `q_j ζ(s+j−1)` has a simple
/// pole at `s = 2 − j` with residue `q_j`.
pub fn residues_from_expansion(c: usize) -> PoleTable {
    let exp = zeta_shift_expansion(c);
    let records = exp
        .q
        .iter()
        .enumerate()
        .filter(|(_, q)| !q.is_zero())
        .map(|(j, q)| record(2 - j as i64, q.clone()))
        .collect();
    PoleTable { n: c, records }
}

/// Compares [`residues_from_expansion`] with [`pole_table`] for `c <= c_max`.
pub fn verify_pole_catalog(c_max: usize) -> VerificationReport {
    let mut report = VerificationReport::new(format!("pole catalog, c <= {c_max}"));
    for c in 0..=c_max {
        let closed = pole_table(c);
        let oracle = residues_from_expansion(c);
        report.record(closed == oracle, || {
            format!("c = {c}: formula {:?} vs expansion {:?}", closed.records, oracle.records)
        });
    }
    report
}

/// Total ζ-shift coefficient vector of a slot-form relation.
pub fn collapse_relation(rel: &RelationVector) -> Vec<Rational> {
    let mut total = vec![Rational::zero(); rel.coeffs.len() + 1];
    for (c, coeff) in rel.coeffs.iter().enumerate() {
        if coeff.is_zero() {
            continue;
        }
        let weight = if c == 0 { coeff / Rational::from(2) } else { coeff.clone() };
        for (j, q) in zeta_shift_expansion(c).q.iter().enumerate() {
            total[j] += &weight * q;
        }
    }
    total
}

/// Substitutes the ζ-shift expansion into every relation of
/// `relation_family(N)` and every basis representation with `2m+1 <= N`,
/// and checks that each collapses to the zero vector.
pub fn verify_relations_exact(n: usize) -> Result<VerificationReport> {
    if n < 2 {
        return Err(invalid("verify_relations_exact", format!("N must be at least 2, got {n}")));
    }
    let mut report = VerificationReport::new(format!("exact relation collapse, N = {n}"));
    let family = relation_family(n)?;
    let reps = (0..=(n - 1) / 2).map(|m| {
        (
            format!("representation m = {m}"),
            RelationVector::from_representation(&basis_representation(m), Provenance::MatrixPath),
        )
    });
    let rows = family.into_iter().enumerate().map(|(i, r)| (format!("relation row {}", i + 1), r));
    for (label, rel) in rows.chain(reps) {
        let residual = collapse_relation(&rel);
        let bad: Vec<String> = residual
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(j, x)| format!("j = {j}: {x}"))
            .collect();
        report.record(bad.is_empty(), || format!("{label}: nonzero zeta(s+j-1) coefficients {}", bad.join(", ")));
    }
    Ok(report)
}

/// The pole of `ζ(−2m, s+2m)` at `s = 2 − 2m`, after checking that no
/// `ζ(−c, s+c)` with `c < 2m` has a pole there.
pub fn independence_witness(m: usize) -> Result<PoleRecord> {
    if m == 0 {
        return Err(invalid("independence_witness", "m must be positive"));
    }
    let location = 2 - 2 * m as i64;
    let table = pole_table(2 * m);
    let rec = table
        .records
        .iter()
        .find(|r| r.location == location)
        .cloned()
        .ok_or_else(|| Error::Verification(format!("zeta(-{}, s+{}) has no pole at s = {location}", 2 * m, 2 * m)))?;
    if rec.residue.is_zero() {
        return Err(Error::Verification(format!("witness residue at s = {location} vanishes")));
    }
    if let Some(c) = (0..2 * m).find(|&c| pole_table(c).residue_at(location).is_some()) {
        return Err(Error::Verification(format!(
            "zeta(-{c}, s+{c}) also has a pole at s = {location}"
        )));
    }
    Ok(rec)
}
