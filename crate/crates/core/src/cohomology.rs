//! Chevalley–Eilenberg cohomology.

use serde::Serialize;

use crate::algebra::LieAlgebraSpec;
use crate::error::{Error, Result};
use crate::exterior::{Form, Monomial};
use crate::linalg::{rational_rank, Matrix};
use crate::scalar::Rational;

/// The matrices of `d: Λ^k → Λ^(k+1)` in the canonical monomial bases.
#[derive(Clone, Debug)]
pub struct CochainComplex {
    pub dim: usize,
    pub bases: Vec<Vec<Monomial>>,
    /// `matrices[k]` has `C(m,k+1)` rows and `C(m,k)` columns.
    pub matrices: Vec<Matrix<Rational>>,
}

impl CochainComplex {
    pub fn build(spec: &LieAlgebraSpec) -> Result<Self> {
        spec.require_lie()?;
        let m = spec.dim();
        let bases: Vec<Vec<Monomial>> = (0..=m).map(|k| Monomial::all(m, k)).collect();
        let matrices = (0..m)
            .map(|k| {
                let cols: Vec<Vec<Rational>> = bases[k]
                    .iter()
                    .map(|&mon| {
                        let f = Form::monomial(m, mon, Rational::from_integer(1.into()));
                        spec.differential(&f).to_vector(&bases[k + 1])
                    })
                    .collect();
                Matrix::from_columns(&cols)
            })
            .collect();
        Ok(CochainComplex {
            dim: m,
            bases,
            matrices,
        })
    }

    /// Exact ranks of `d_0 .. d_(m-1)`.
    pub fn ranks(&self) -> Vec<usize> {
        self.matrices.iter().map(rational_rank).collect()
    }

    pub fn betti(&self) -> BettiVector {
        let ranks = self.ranks();
        let m = self.dim;
        BettiVector(
            (0..=m)
                .map(|k| {
                    let out = if k < m { ranks[k] } else { 0 };
                    let inc = if k > 0 { ranks[k - 1] } else { 0 };
                    self.bases[k].len() - out - inc
                })
                .collect(),
        )
    }
}

pub fn build_complex(spec: &LieAlgebraSpec) -> Result<CochainComplex> {
    CochainComplex::build(spec)
}

/// `b_0, ..., b_m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiVector(pub Vec<usize>);

impl BettiVector {
    pub fn get(&self, k: usize) -> usize {
        self.0[k]
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.0
            .iter()
            .enumerate()
            .map(|(k, &b)| if k % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum()
    }
}

pub fn betti(spec: &LieAlgebraSpec) -> Result<BettiVector> {
    Ok(CochainComplex::build(spec)?.betti())
}

/// Rank of `d: g* → Λ²g*`.
pub fn rank_d1(spec: &LieAlgebraSpec) -> Result<usize> {
    Ok(rational_rank(&CochainComplex::build(spec)?.matrices[1]))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConsistencyReport {
    pub betti: Vec<usize>,
    /// `b_3 = 2(b_2 - b_1 + 1)`.
    pub b3_formula: bool,
    /// `b_i >= 2` for `1 <= i <= 5`.
    pub dixmier: bool,
    /// Alternating sum of Betti numbers vanishes.
    pub euler: bool,
    /// Informational only: `b_0 = b_6 = 1` always fails the bound.
    pub dixmier_at_endpoints: bool,
}

impl ConsistencyReport {
    pub fn passed(&self) -> bool {
        self.b3_formula && self.dixmier && self.euler
    }
}

pub fn consistency_report(spec: &LieAlgebraSpec) -> Result<ConsistencyReport> {
    if spec.dim() != 6 {
        return Err(Error::DimensionMismatch {
            expected: 6,
            found: spec.dim(),
        });
    }
    let b = betti(spec)?;
    let v = &b.0;
    Ok(ConsistencyReport {
        b3_formula: v[3] as i64 == 2 * (v[2] as i64 - v[1] as i64 + 1),
        dixmier: (1..=5).all(|i| v[i] >= 2),
        euler: b.euler_characteristic() == 0,
        dixmier_at_endpoints: v[0] >= 2 && v[6] >= 2,
        betti: b.0,
    })
}
