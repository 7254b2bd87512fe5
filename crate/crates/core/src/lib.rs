//! Gauss-Legendre polynomial bases and Gauss-Legendre curves.
//!
//! A Gauss-Legendre curve of degree `n` in `E^d` is `P(t) = Σ_{i=0}^{n} W_i F^n_i(t)`
//! on `t ∈ [-1, 1]`, where the basis functions `F^n_i` are built from the
//! zeros of the Legendre polynomial `P_n`. This crate provides
//!
//! * [`ortho`]: symmetric Jacobi recurrences, Clenshaw summation, Legendre roots;
//! * [`basis`]: the basis in shifted power, Legendre and symmetric-Jacobi form;
//! * [`curve`]: single-point and preprocessed multipoint curve evaluation;
//! * [`oracle`]: quadrature and double-double reference values;
//! * [`bench`]: the timing harness behind `glcurve bench`.

pub mod basis;
pub mod bench;
pub mod curve;
pub mod error;
pub mod oracle;
pub mod ortho;
pub mod scalar;

pub use basis::{
    eval_basis, eval_basis_all, eval_basis_derivative, BasisKind, BasisRep, Conditioning, GlBasis,
    Span,
};
pub use curve::{
    eval_many, eval_many_parallel, eval_point, prepare, CurvePreparer, GlCurve, PointSet,
    PreparedCurve,
};
pub use error::{GlError, Result};
pub use ortho::{legendre_roots, LegendreRootTable};
