//! Largest eigenvalue of the truncated kernel `K_N = [√(mn)/max(m,n)²]_{m,n ≤ N}`.
//!
//! `λ_max(K_N)` is the squared best embedding constant over polynomials of
//! length `N`; it grows with `N` and stays below 2.

use crate::error::{Error, Result};
use crate::kernel::{apply_kernel, inv_pow32_table, kernel_value, sqrt_table};
use crate::report::{Cell, SweepReport};
use crate::sum::CompensatedSum;

/// Largest dimension [`KernelOperator::dense`] will materialize.
pub const DENSE_LIMIT: usize = 2000;
pub const DEFAULT_TOLERANCE: f64 = 1e-10;
pub const DEFAULT_MAX_ITER: usize = 10_000;

/// Matrix-free `K_N` with its index tables.
#[derive(Debug, Clone)]
pub struct KernelOperator {
    sqrt_n: Vec<f64>,
    inv_pow32: Vec<f64>,
}

impl KernelOperator {
    pub fn new(dimension: usize) -> Result<Self> {
        if dimension == 0 {
            return Err(Error::InvalidGrid("a positive operator dimension"));
        }
        let sqrt_n = sqrt_table(dimension);
        let inv_pow32 = inv_pow32_table(&sqrt_n);
        Ok(Self { sqrt_n, inv_pow32 })
    }

    pub fn dimension(&self) -> usize {
        self.sqrt_n.len()
    }

    pub fn apply_into(&self, v: &[f64], out: &mut [f64]) -> Result<()> {
        for len in [v.len(), out.len()] {
            if len != self.dimension() {
                return Err(Error::DimensionMismatch { expected: self.dimension(), found: len });
            }
        }
        apply_kernel(v, &self.sqrt_n, &self.inv_pow32, out);
        Ok(())
    }

    pub fn apply(&self, v: &[f64]) -> Result<Vec<f64>> {
        let mut out = vec![0.0; self.dimension()];
        self.apply_into(v, &mut out)?;
        Ok(out)
    }

    /// Row-major dense matrix, for oracle checks at small `N`.
    pub fn dense(&self) -> Result<Vec<Vec<f64>>> {
        let n = self.dimension();
        if n > DENSE_LIMIT {
            return Err(Error::TooLargeToDensify(n));
        }
        Ok((1..=n as u64)
            .map(|m| (1..=n as u64).map(|k| kernel_value(m, k)).collect())
            .collect())
    }
}

pub fn kernel_matvec(op: &KernelOperator, v: &[f64]) -> Result<Vec<f64>> {
    op.apply(v)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralEstimate {
    pub lambda_max: f64,
    pub iterations: usize,
    /// `‖Kv - λv‖ / ‖v‖` at the final iterate.
    pub residual: f64,
    /// Rayleigh quotient of the final iterate, a lower bound for `λ_max(K_N)`.
    pub certified_lower: f64,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).collect::<CompensatedSum>().value()
}

/// Power iteration from `vₙ ∝ n^{-1/2}` until the residual drops to `tol`.
pub fn operator_norm_estimate(n: usize, tol: f64, max_iter: usize) -> Result<SpectralEstimate> {
    crate::error::ensure_positive("tol", tol)?;
    let op = KernelOperator::new(n)?;
    let mut v: Vec<f64> = op.sqrt_n.iter().map(|s| 1.0 / s).collect();
    let norm = dot(&v, &v).sqrt();
    v.iter_mut().for_each(|x| *x /= norm);

    let mut w = vec![0.0; n];
    let mut residual = f64::INFINITY;
    for iteration in 1..=max_iter {
        op.apply_into(&v, &mut w)?;
        let lambda = dot(&v, &w);
        residual = v
            .iter()
            .zip(&w)
            .map(|(x, y)| (y - lambda * x).powi(2))
            .collect::<CompensatedSum>()
            .value()
            .sqrt();
        if residual <= tol {
            return Ok(SpectralEstimate {
                lambda_max: lambda,
                iterations: iteration,
                residual,
                certified_lower: lambda,
            });
        }
        let norm = dot(&w, &w).sqrt();
        for (x, y) in v.iter_mut().zip(&w) {
            *x = y / norm;
        }
    }
    Err(Error::NotConverged { iterations: max_iter, residual, tolerance: tol })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrowthRow {
    pub n: usize,
    pub estimate: SpectralEstimate,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GrowthTable {
    pub rows: Vec<GrowthRow>,
    pub tolerance: f64,
}

impl GrowthTable {
    /// `λ_max` never drops by more than the tolerance between consecutive rows.
    pub fn is_monotone(&self) -> bool {
        self.rows
            .windows(2)
            .all(|w| w[1].estimate.lambda_max >= w[0].estimate.lambda_max - self.tolerance)
    }

    /// Every `λ_max + residual` is strictly below 2.
    pub fn below_two(&self) -> bool {
        self.rows.iter().all(|r| r.estimate.lambda_max + r.estimate.residual < 2.0)
    }

    pub fn report(&self) -> SweepReport {
        let mut report = SweepReport::new("spectral", &["n", "lambda_max", "residual", "iterations"]);
        for row in &self.rows {
            report.push(vec![
                Cell::from(row.n),
                Cell::Float(row.estimate.lambda_max),
                Cell::Float(row.estimate.residual),
                Cell::from(row.estimate.iterations),
            ]);
        }
        report.set_meta("tolerance", self.tolerance);
        report.set_meta("method", "power iteration, start n^{-1/2}");
        report
    }
}

pub(crate) fn check_increasing(n_list: &[usize]) -> Result<()> {
    if n_list.contains(&0) || n_list.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidGrid("strictly increasing positive integers"));
    }
    Ok(())
}

/// `λ_max(K_N)` for each `N` in a strictly increasing list.
pub fn spectral_growth_table(n_list: &[usize], tol: f64) -> Result<GrowthTable> {
    check_increasing(n_list)?;
    let rows = n_list
        .iter()
        .map(|&n| {
            operator_norm_estimate(n, tol, DEFAULT_MAX_ITER).map(|estimate| GrowthRow { n, estimate })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GrowthTable { rows, tolerance: tol })
}
