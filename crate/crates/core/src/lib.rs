//! Numerical toolkit for the embedding of the Hardy space of Dirichlet series
//! into the conformally invariant Hardy space of the half-plane `Re(s) > 1/2`.
//!
//! The weighted norm
//!
//! ```text
//! ‖f‖²_{H²_i} = (1/π) ∫ |f(1/2 + it)|² dt / (1 + t²)
//! ```
//!
//! of a finite Dirichlet polynomial `f(s) = Σ aₙ n^{-s}` is computed two ways:
//! by quadrature on the critical line ([`quadrature`]) and as the quadratic
//! form of the kernel `√(mn) / max(m, n)²` ([`kernel`]). The kernel's largest
//! eigenvalue ([`spectral`]) and the shifted-zeta family ([`extremal`]) show
//! that the constant 2 in `‖f‖²_{H²_i} < 2 ‖f‖²_{ℋ²}` cannot be lowered.

pub mod error;
pub mod extremal;
pub mod kernel;
pub mod quadrature;
pub mod report;
pub mod sampling;
pub mod series;
pub mod spectral;
pub mod sum;
pub mod zeta;

pub use error::{Error, Result};
pub use extremal::{
    lower_bound_expression, optimality_ratio, optimality_sweep, truncated_rayleigh,
    OptimalitySweep, SweepOptions,
};
pub use kernel::{
    bilinear_form_naive, cauchy_schwarz_bound, kernel_entry, quadratic_form_fast, row_sum,
    weight_integral_closed, KernelEntryIndex, KernelScalar,
};
pub use num_complex::Complex64;
pub use quadrature::{
    h2i_sq_norm_quadrature, local_sq_integral, local_sweep, weight_integral_quadrature,
    LocalSweep, QuadratureRule, QuadratureValue,
};
pub use report::{Cell, SweepReport};
pub use series::{zeta_shift_coefficients, ComplexPoint, DirichletPolynomial};
pub use spectral::{
    kernel_matvec, operator_norm_estimate, spectral_growth_table, GrowthTable, KernelOperator,
    SpectralEstimate,
};
pub use zeta::{harmonic2, zeta_real, ZetaConfig};
