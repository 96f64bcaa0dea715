//! Exact invariants of nilpotent Lie algebras given by structure constants:
//! Chevalley–Eilenberg cohomology, nilpotency filtrations, integrable complex
//! structures with their Dolbeault data, and symplectic forms.

pub mod algebra;
pub mod cohomology;
pub mod catalog;
pub mod complex;
pub mod error;
pub mod exterior;
pub mod fourdim;
pub mod linalg;
pub mod scalar;
pub mod search;
pub mod symplectic;

pub use algebra::{Filtration, LieAlgebraSpec};
pub use error::{Error, Result};
pub use exterior::{Form, Monomial};
pub use linalg::Matrix;
pub use scalar::{ComplexScalar, Gaussian, Rational, Scalar, Surd};

/// Gaussian rationals `p/q + r/s i`.
pub type GaussianRational = Gaussian<Rational>;
/// Complex numbers with real and imaginary parts in one real quadratic field.
pub type GaussianSurd = Gaussian<Surd>;
/// Real forms with rational coefficients.
pub type RealForm = Form<Rational>;
/// Complex forms with Gaussian rational coefficients.
pub type ComplexForm = Form<GaussianRational>;
