//! The JSON exchange format for almost-complex structures.
//!
//! A file holds either `"matrix"`, the rows of `J` as exact real scalars, or
//! `"coframe"`, `n` complex 1-forms spanning `Λ^{1,0}` given as coefficient
//! vectors on `e^1..e^m`. Scalars are strings such as `"-1/2"`, `"1/2+3/4i"`
//! or `"2-√3"`.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::acs::AlmostComplexStructure;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{parse_gaussian_surd, Gaussian, Rational, Scalar, Surd};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coframe: Option<Vec<Vec<String>>>,
}

/// A parsed structure, kept rational whenever no surd occurs.
#[derive(Clone, Debug)]
pub enum ExactStructure {
    Rational(AlmostComplexStructure<Rational>),
    Surd(AlmostComplexStructure<Surd>),
}

impl ExactStructure {
    pub fn dim(&self) -> usize {
        match self {
            ExactStructure::Rational(j) => j.dim(),
            ExactStructure::Surd(j) => j.dim(),
        }
    }
}

fn parse_error(message: String) -> Error {
    Error::Parse { pos: 0, message }
}

fn parse_rows(rows: &[Vec<String>]) -> Result<Vec<Vec<Gaussian<Surd>>>> {
    rows.iter()
        .map(|row| row.iter().map(|s| parse_gaussian_surd(s)).collect())
        .collect()
}

impl JFile {
    pub fn from_json(text: &str) -> Result<JFile> {
        serde_json::from_str(text).map_err(|e| parse_error(format!("J file: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn structure(&self) -> Result<ExactStructure> {
        let j = match (&self.matrix, &self.coframe) {
            (Some(rows), None) => {
                let entries = parse_rows(rows)?;
                let m = entries.len();
                if entries.iter().any(|r| r.len() != m) {
                    return Err(parse_error("J matrix must be square".into()));
                }
                if entries.iter().flatten().any(|z| !z.im.is_zero()) {
                    return Err(Error::NotReal);
                }
                let real = Matrix::from_rows(entries.into_iter().map(|r| r.into_iter().map(|z| z.re).collect()).collect());
                AlmostComplexStructure::from_matrix(real)?
            }
            (None, Some(rows)) => {
                let entries = parse_rows(rows)?;
                let m = 2 * entries.len();
                if let Some(bad) = entries.iter().find(|r| r.len() != m) {
                    return Err(Error::DimensionMismatch {
                        expected: m,
                        found: bad.len(),
                    });
                }
                AlmostComplexStructure::from_coframe(entries)?
            }
            _ => return Err(parse_error("J file needs exactly one of `matrix` or `coframe`".into())),
        };
        Ok(match j.to_rational() {
            Some(r) => ExactStructure::Rational(r),
            None => ExactStructure::Surd(j),
        })
    }

    pub fn from_coframe<R: Scalar>(j: &AlmostComplexStructure<R>) -> JFile {
        JFile {
            matrix: None,
            coframe: Some(
                j.coframe()
                    .iter()
                    .map(|row| row.iter().map(|z| z.to_string()).collect())
                    .collect(),
            ),
        }
    }

    pub fn from_matrix<R: Scalar>(j: &AlmostComplexStructure<R>) -> JFile {
        JFile {
            matrix: Some(
                j.matrix()
                    .to_rows()
                    .iter()
                    .map(|row| row.iter().map(|x| x.to_string()).collect())
                    .collect(),
            ),
            coframe: None,
        }
    }
}

pub fn parse_j_file(text: &str) -> Result<ExactStructure> {
    JFile::from_json(text)?.structure()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coframe_round_trip() {
        let text = r#"{"coframe": [["1","i","0","0","0","0"],["0","0","1","i","0","0"],["0","0","0","0","1","i"]]}"#;
        let ExactStructure::Rational(j) = parse_j_file(text).unwrap() else {
            panic!("expected rational structure");
        };
        assert_eq!(j.matrix(), AlmostComplexStructure::<Rational>::standard(6).unwrap().matrix());
        let again = JFile::from_coframe(&j).structure().unwrap();
        let ExactStructure::Rational(k) = again else { panic!() };
        assert_eq!(k.matrix(), j.matrix());
        let via_matrix = JFile::from_matrix(&j).structure().unwrap();
        let ExactStructure::Rational(k) = via_matrix else { panic!() };
        assert_eq!(k.matrix(), j.matrix());
    }

    #[test]
    fn surd_coframe_stays_surd() {
        let text = r#"{"coframe": [["1","√2*i","0","0"],["0","0","1","i"]]}"#;
        assert!(matches!(parse_j_file(text).unwrap(), ExactStructure::Surd(_)));
    }

    #[test]
    fn rejects_bad_files() {
        assert!(parse_j_file("{}").is_err());
        assert!(parse_j_file(r#"{"matrix": [["0","i"],["1","0"]]}"#).is_err());
        assert!(parse_j_file(r#"{"coframe": [["1","1"]]}"#).is_err());
        assert!(parse_j_file(r#"{"coframe": [["1","i"]], "extra": 1}"#).is_err());
    }
}
