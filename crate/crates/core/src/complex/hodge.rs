use num_traits::One;
use serde::Serialize;

use super::acs::{require_integrable, AlmostComplexStructure};
use crate::algebra::LieAlgebraSpec;
use crate::error::{Error, Result};
use crate::exterior::Form;
use crate::linalg::Matrix;
use crate::scalar::{Gaussian, Scalar};

/// Dimensions `h^{p,q}` of Dolbeault cohomology of the Lie algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HodgeNumbers {
    pub n: usize,
    /// `h[p][q]`.
    pub h: Vec<Vec<usize>>,
}

impl HodgeNumbers {
    pub fn get(&self, p: usize, q: usize) -> usize {
        self.h[p][q]
    }
}

/// Matrix of `∂̄: Λ^{p,q} → Λ^{p,q+1}` in frame monomial bases.
fn dbar_matrix<R: Scalar>(
    frame: &super::acs::Frame<R>,
    images: &[Form<Gaussian<R>>],
    p: usize,
    q: usize,
) -> Matrix<Gaussian<R>> {
    let m = 2 * frame.n;
    let source = frame.basis(p, q);
    let target = frame.basis(p, q + 1);
    let cols: Vec<Vec<Gaussian<R>>> = source
        .iter()
        .map(|&mon| {
            let f = Form::monomial(m, mon, Gaussian::one());
            let df = frame.differential(images, &f);
            frame.component(&df, p, q + 1).to_vector(&target)
        })
        .collect();
    if cols.is_empty() {
        Matrix::zeros(target.len(), 0)
    } else {
        Matrix::from_columns(&cols)
    }
}

pub fn hodge_numbers<R: Scalar>(spec: &LieAlgebraSpec, j: &AlmostComplexStructure<R>) -> Result<HodgeNumbers> {
    require_integrable(spec, j)?;
    let frame = j.frame();
    let images = frame.differential_images(spec);
    let n = frame.n;
    let mut h = vec![vec![0; n + 1]; n + 1];
    for (p, row) in h.iter_mut().enumerate() {
        let ranks: Vec<usize> = (0..n)
            .map(|q| dbar_matrix(&frame, &images, p, q).rank())
            .collect();
        for (q, entry) in row.iter_mut().enumerate() {
            let dim = frame.basis(p, q).len();
            let out = if q < n { ranks[q] } else { 0 };
            let inc = if q > 0 { ranks[q - 1] } else { 0 };
            *entry = dim - out - inc;
        }
    }
    Ok(HodgeNumbers { n, h })
}

/// `n - h^{n-1,0} + h^{n-1,1}`, cross-checked against the Serre-dual
/// expression `n - h^{1,n} + h^{1,n-1}`.
pub fn moduli_bound<R: Scalar>(spec: &LieAlgebraSpec, j: &AlmostComplexStructure<R>) -> Result<usize> {
    let hn = hodge_numbers(spec, j)?;
    let n = hn.n;
    if n < 2 {
        return Err(Error::DimensionOutOfRange(2 * n));
    }
    let a = n + hn.get(n - 1, 1) - hn.get(n - 1, 0);
    let b = n + hn.get(1, n - 1) - hn.get(1, n);
    if a != b {
        return Err(Error::Inconsistent(format!(
            "moduli bound {a} disagrees with its dual expression {b}"
        )));
    }
    Ok(a)
}
