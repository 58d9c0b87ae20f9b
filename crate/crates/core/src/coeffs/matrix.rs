use std::fmt;

use serde::de::Error as _;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactnum::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShapeTag {
    General,
    LowerTriangular,
}

/// Dense row-major matrix of exact rationals.
///
/// A `LowerTriangular` tag is only ever attached after checking that every
/// entry above the diagonal is zero and every diagonal entry is nonzero.
#[derive(Clone)]
pub struct CoeffMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
    shape: ShapeTag,
}

impl CoeffMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CoeffMatrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
            shape: ShapeTag::General,
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m.shape = ShapeTag::LowerTriangular;
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some((i, row)) = rows.iter().enumerate().find(|(_, row)| row.len() != c) {
            return Err(Error::DimensionMismatch(format!(
                "row {i} has {} entries, expected {c}",
                row.len()
            )));
        }
        Ok(CoeffMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
            shape: ShapeTag::General,
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        CoeffMatrix {
            rows,
            cols,
            entries,
            shape: ShapeTag::General,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn shape(&self) -> ShapeTag {
        self.shape
    }

    /// Zero-based entry access.
    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    /// Sets an entry and drops any shape claim.
    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        self.entries[i * self.cols + j] = value;
        self.shape = ShapeTag::General;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn diagonal(&self) -> Vec<Rational> {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).collect()
    }

    /// Checks the lower-triangular invariant without touching the tag.
    pub fn check_lower_triangular(&self) -> Result<()> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "triangular matrix must be square, got {}x{}",
                self.rows, self.cols
            )));
        }
        for i in 0..self.rows {
            for j in i + 1..self.cols {
                if !self.get(i, j).is_zero() {
                    return Err(Error::NotLowerTriangular { row: i, col: j });
                }
            }
            if self.get(i, i).is_zero() {
                return Err(Error::SingularMatrix(i));
            }
        }
        Ok(())
    }

    /// Validates and tags the matrix as lower triangular.
    pub fn into_lower_triangular(mut self) -> Result<Self> {
        self.check_lower_triangular()?;
        self.shape = ShapeTag::LowerTriangular;
        Ok(self)
    }

    pub(crate) fn with_shape_unchecked(mut self, shape: ShapeTag) -> Self {
        self.shape = shape;
        self
    }

    /// Top-left `rows x cols` block.
    pub fn top_left(&self, rows: usize, cols: usize) -> CoeffMatrix {
        CoeffMatrix::from_fn(rows, cols, |i, j| self.get(i, j).clone())
    }
}

/// Equality is on dimensions and entries; the shape tag is a validated
/// property of the entries, not extra data.
impl PartialEq for CoeffMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.entries == other.entries
    }
}

impl Eq for CoeffMatrix {}

impl fmt::Debug for CoeffMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CoeffMatrix {}x{} ({:?})", self.rows, self.cols, self.shape)?;
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(Rational::to_string).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

impl Serialize for CoeffMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("CoeffMatrix", 3)?;
        s.serialize_field("rows", &self.rows)?;
        s.serialize_field("cols", &self.cols)?;
        s.serialize_field("entries", &self.row_vecs())?;
        s.end()
    }
}

impl<'de> Deserialize<'de> for CoeffMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            rows: usize,
            cols: usize,
            entries: Vec<Vec<Rational>>,
        }
        let raw = Raw::deserialize(deserializer)?;
        let m = CoeffMatrix::from_rows(raw.entries).map_err(D::Error::custom)?;
        if raw.rows == 0 && m.rows == 0 {
            return Ok(CoeffMatrix::zeros(0, raw.cols));
        }
        if m.rows != raw.rows || m.cols != raw.cols {
            return Err(D::Error::custom(format!(
                "declared {}x{} but entries are {}x{}",
                raw.rows, raw.cols, m.rows, m.cols
            )));
        }
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangular_validation() {
        let ok = CoeffMatrix::from_rows(vec![
            vec![Rational::one(), Rational::zero()],
            vec![Rational::from(3), Rational::from(-2)],
        ])
        .unwrap();
        assert_eq!(ok.into_lower_triangular().unwrap().shape(), ShapeTag::LowerTriangular);

        let upper = CoeffMatrix::from_rows(vec![
            vec![Rational::one(), Rational::one()],
            vec![Rational::zero(), Rational::one()],
        ])
        .unwrap();
        assert_eq!(
            upper.into_lower_triangular().unwrap_err(),
            Error::NotLowerTriangular { row: 0, col: 1 }
        );

        let singular = CoeffMatrix::from_rows(vec![
            vec![Rational::one(), Rational::zero()],
            vec![Rational::one(), Rational::zero()],
        ])
        .unwrap();
        assert_eq!(singular.into_lower_triangular().unwrap_err(), Error::SingularMatrix(1));
    }

    #[test]
    fn ragged_rows_rejected() {
        let err = CoeffMatrix::from_rows(vec![vec![Rational::one()], vec![]]).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch(_)));
    }

    #[test]
    fn json_layout() {
        let m = CoeffMatrix::from_rows(vec![
            vec![Rational::one(), Rational::zero()],
            vec![Rational::frac(1, 2), Rational::frac(-1, 2)],
        ])
        .unwrap();
        let json = serde_json::to_string(&m).unwrap();
        assert_eq!(json, r#"{"rows":2,"cols":2,"entries":[["1","0"],["1/2","-1/2"]]}"#);
        let back: CoeffMatrix = serde_json::from_str(&json).unwrap();
        assert_eq!(back, m);
        assert!(serde_json::from_str::<CoeffMatrix>(r#"{"rows":3,"cols":2,"entries":[["1","0"]]}"#).is_err());
    }
}
