//! The shifted-zeta family `f_ε(s) = ζ(1/2 + ε + s)` and the sharpness of the constant 2.
//!
//! `‖f_ε‖²_{ℋ²} = ζ(1+2ε)` while `‖f_ε‖²_{H²_i}` exceeds
//! `[ζ(1+2ε) − ζ(2+ε)]/(1−ε) + [ζ(1+2ε) − 1]/(1+ε)`; the ratio of the two
//! tends to 2 as `ε → 0⁺`. Rows are computed two ways: from that closed lower
//! bound (the `N → ∞` limit) and from the exact quadratic form of the
//! truncation to `n ≤ N`.

use crate::error::{Error, Result};
use crate::kernel::quadratic_form_fast;
use crate::report::{Cell, SweepReport};
use crate::series::zeta_shift_coefficients;
use crate::spectral::{check_increasing, operator_norm_estimate, SpectralEstimate, DEFAULT_MAX_ITER};
use crate::sum::CompensatedSum;
use crate::zeta::{zeta_real, ZetaConfig};

/// `ε ∈ {0.3, 0.1, 0.03, 0.01, 0.003, 0.001}`.
pub const DEFAULT_EPS_GRID: [f64; 6] = [0.3, 0.1, 0.03, 0.01, 0.003, 0.001];
/// `N ∈ {10², 10³, 10⁴, 10⁵}`.
pub const DEFAULT_N_GRID: [usize; 4] = [100, 1_000, 10_000, 100_000];

fn check_unit_interval(epsilon: f64) -> Result<()> {
    if epsilon > 0.0 && epsilon < 1.0 {
        Ok(())
    } else {
        Err(Error::EpsilonOutOfRange(epsilon))
    }
}

/// `[ζ(1+2ε) − ζ(2+ε)]/(1−ε) + [ζ(1+2ε) − 1]/(1+ε)` for `0 < ε < 1`.
pub fn lower_bound_expression(epsilon: f64) -> Result<f64> {
    check_unit_interval(epsilon)?;
    let cfg = ZetaConfig::default();
    let z_norm = zeta_real(1.0 + 2.0 * epsilon, &cfg)?;
    let z_shift = zeta_real(2.0 + epsilon, &cfg)?;
    Ok((z_norm - z_shift) / (1.0 - epsilon) + (z_norm - 1.0) / (1.0 + epsilon))
}

/// Lower bound divided by `‖f_ε‖²_{ℋ²} = ζ(1+2ε)`; below 2 and tending to 2.
pub fn optimality_ratio(epsilon: f64) -> Result<f64> {
    let bound = lower_bound_expression(epsilon)?;
    Ok(bound / zeta_real(1.0 + 2.0 * epsilon, &ZetaConfig::default())?)
}

/// Quadratic form and ℋ² mass of the length-`N` truncation of `f_ε`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RayleighCell {
    pub epsilon: f64,
    pub n: usize,
    /// `Q_N(ε) = Σ_{m,n ≤ N} (mn)^{-1/2-ε} K(m, n)`.
    pub quadratic_form: f64,
    /// `D_N(ε) = Σ_{n ≤ N} n^{-1-2ε}`.
    pub norm_sq: f64,
    pub rayleigh: f64,
}

pub fn rayleigh_cell(epsilon: f64, n: usize) -> Result<RayleighCell> {
    let f = zeta_shift_coefficients(epsilon, n)?;
    let a: Vec<f64> = f.coefficients().iter().map(|c| c.re).collect();
    let quadratic_form = quadratic_form_fast(&a);
    let norm_sq = a.iter().rev().map(|x| x * x).collect::<CompensatedSum>().value();
    Ok(RayleighCell { epsilon, n, quadratic_form, norm_sq, rayleigh: quadratic_form / norm_sq })
}

/// `Q_N(ε) / D_N(ε)`, the Rayleigh quotient of `K_N` at the truncated family.
pub fn truncated_rayleigh(epsilon: f64, n: usize) -> Result<f64> {
    Ok(rayleigh_cell(epsilon, n)?.rayleigh)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundRow {
    pub epsilon: f64,
    /// `ζ(1+2ε)`
    pub zeta_norm_sq: f64,
    pub lower_bound: f64,
    pub ratio: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepOptions {
    pub include_rayleigh: bool,
    /// Compute `λ_max(K_N)` for every `N` of the grid alongside the Rayleigh rows.
    pub spectral_check: bool,
    pub spectral_tolerance: f64,
}

impl Default for SweepOptions {
    fn default() -> Self {
        Self { include_rayleigh: true, spectral_check: true, spectral_tolerance: 1e-10 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimalitySweep {
    pub bounds: Vec<BoundRow>,
    /// Row-major over `(ε, N)` in grid order.
    pub rayleigh: Vec<RayleighCell>,
    /// `(N, estimate)` in grid order, when the spectral check ran.
    pub spectra: Vec<(usize, SpectralEstimate)>,
}

impl OptimalitySweep {
    pub fn spectrum_for(&self, n: usize) -> Option<&SpectralEstimate> {
        self.spectra.iter().find(|(k, _)| *k == n).map(|(_, e)| e)
    }

    /// Every ratio and Rayleigh value is strictly below 2.
    pub fn ratios_below_two(&self) -> bool {
        self.bounds.iter().all(|b| b.ratio < 2.0) && self.rayleigh.iter().all(|c| c.rayleigh < 2.0)
    }

    /// Rayleigh cells exceeding `λ_max(K_N) + slack`.
    pub fn spectral_violations(&self, slack: f64) -> Vec<RayleighCell> {
        self.rayleigh
            .iter()
            .filter(|c| {
                self.spectrum_for(c.n)
                    .is_some_and(|e| c.rayleigh > e.lambda_max + slack)
            })
            .copied()
            .collect()
    }

    pub fn report(&self) -> SweepReport {
        let mut report = SweepReport::new(
            "extremal",
            &["kind", "epsilon", "n", "rayleigh", "lower_bound", "ratio", "zeta_1p2eps", "lambda_max", "limit"],
        );
        for b in &self.bounds {
            report.push(vec![
                "bound".into(),
                Cell::Float(b.epsilon),
                "inf".into(),
                Cell::Empty,
                Cell::Float(b.lower_bound),
                Cell::Float(b.ratio),
                Cell::Float(b.zeta_norm_sq),
                Cell::Empty,
                "N->inf closed lower bound".into(),
            ]);
        }
        for c in &self.rayleigh {
            report.push(vec![
                "rayleigh".into(),
                Cell::Float(c.epsilon),
                Cell::from(c.n),
                Cell::Float(c.rayleigh),
                Cell::Empty,
                Cell::Float(c.rayleigh),
                Cell::Empty,
                self.spectrum_for(c.n).map(|e| e.lambda_max).into(),
                "fixed N truncation".into(),
            ]);
        }
        report
    }
}

/// Bound rows for each `ε` and Rayleigh rows for each `(ε, N)`.
pub fn optimality_sweep(eps_grid: &[f64], n_grid: &[usize], opts: &SweepOptions) -> Result<OptimalitySweep> {
    for &e in eps_grid {
        check_unit_interval(e)?;
    }
    if eps_grid.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::InvalidGrid("strictly decreasing in epsilon"));
    }
    check_increasing(n_grid)?;

    let bounds = eps_grid
        .iter()
        .map(|&epsilon| {
            let zeta_norm_sq = zeta_real(1.0 + 2.0 * epsilon, &ZetaConfig::default())?;
            let lower_bound = lower_bound_expression(epsilon)?;
            Ok(BoundRow { epsilon, zeta_norm_sq, lower_bound, ratio: lower_bound / zeta_norm_sq })
        })
        .collect::<Result<Vec<_>>>()?;

    let mut rayleigh = Vec::new();
    let mut spectra = Vec::new();
    if opts.include_rayleigh {
        for &epsilon in eps_grid {
            for &n in n_grid {
                rayleigh.push(rayleigh_cell(epsilon, n)?);
            }
        }
        if opts.spectral_check && !eps_grid.is_empty() {
            for &n in n_grid {
                spectra.push((n, operator_norm_estimate(n, opts.spectral_tolerance, DEFAULT_MAX_ITER)?));
            }
        }
    }
    Ok(OptimalitySweep { bounds, rayleigh, spectra })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::bilinear_form_naive;
    use crate::spectral::spectral_growth_table;
    use num_complex::Complex64;

    // Values below come from an independent mpmath evaluation of ζ.
    #[test]
    fn lower_bound_examples() {
        assert!((lower_bound_expression(0.5).unwrap() - 1.036_849_663_760_102_8).abs() < 1e-12);
        assert!((lower_bound_expression(0.01).unwrap() - 98.525_178_971_152_29).abs() < 1e-9);
        assert!((optimality_ratio(0.01).unwrap() - 1.947_959_068_343_544).abs() < 1e-12);
        assert!((optimality_ratio(0.001).unwrap() - 1.994_718_812_309_205).abs() < 1e-12);
        for bad in [0.0, 1.0, -0.2, 1.5, f64::NAN] {
            assert!(lower_bound_expression(bad).is_err(), "ε = {bad}");
        }
    }

    #[test]
    fn ratio_examples() {
        assert!((optimality_ratio(0.5).unwrap() - 0.630_329_011_148_001_3).abs() < 1e-12);
        assert!((optimality_ratio(0.1).unwrap() - 1.547_587_181_199_640_5).abs() < 1e-12);
    }

    #[test]
    fn ratio_increases_towards_two() {
        let r: Vec<f64> = DEFAULT_EPS_GRID.iter().map(|&e| optimality_ratio(e).unwrap()).collect();
        assert!(r.windows(2).all(|w| w[1] > w[0]));
        assert!(r.iter().all(|&x| x < 2.0));
        assert!(r[5] > 1.99);
    }

    #[test]
    fn rayleigh_examples() {
        for e in [0.001, 0.5, 3.0] {
            assert_eq!(truncated_rayleigh(e, 1).unwrap(), 1.0);
        }
        // (1 + 2·(√2/4)·½ + ½·¼) / (1 + ¼)
        let expected = (1.0 + 2f64.sqrt() / 4.0 + 0.125) / 1.25;
        assert!((truncated_rayleigh(0.5, 2).unwrap() - expected).abs() < 1e-15);
        assert!((expected - 1.182_842_712_474_619).abs() < 1e-15);
        assert!(truncated_rayleigh(0.0, 5).is_err());
    }

    #[test]
    fn rayleigh_grows_with_truncation() {
        let small = rayleigh_cell(0.01, 1_000).unwrap();
        let large = rayleigh_cell(0.01, 100_000).unwrap();
        assert!(small.rayleigh < large.rayleigh && large.rayleigh < 2.0);

        // fast form cross-checked against the naive double sum at N = 10³
        let a: Vec<Complex64> = zeta_shift_coefficients(0.01, 1_000).unwrap().coefficients().to_vec();
        let naive = bilinear_form_naive(&a, &a).re;
        assert!(((small.quadratic_form - naive) / naive).abs() < 1e-12);
    }

    #[test]
    fn truncations_approach_the_closed_bound() {
        // ε = 0.3: D_N(ε) ≥ 0.999 ζ(1.6) once N ≳ 6·10⁴.
        let eps = 0.3;
        let zeta_norm = zeta_real(1.6, &ZetaConfig::default()).unwrap();
        let bound = lower_bound_expression(eps).unwrap();
        let mut previous = 0.0;
        for n in [10usize, 100, 1_000, 10_000, 100_000, 1_000_000] {
            let cell = rayleigh_cell(eps, n).unwrap();
            assert!(cell.quadratic_form > previous);
            previous = cell.quadratic_form;
            if cell.norm_sq >= 0.999 * zeta_norm {
                assert!(cell.quadratic_form > 0.99 * bound, "N = {n}");
            }
        }
        assert!(rayleigh_cell(eps, 1_000_000).unwrap().norm_sq >= 0.999 * zeta_norm);
    }

    #[test]
    fn sweep_examples() {
        let s = optimality_sweep(&[0.5], &[1], &SweepOptions::default()).unwrap();
        assert_eq!(s.rayleigh.len(), 1);
        assert_eq!(s.rayleigh[0].rayleigh, 1.0);
        assert!((s.bounds[0].ratio - 0.630_329_011_148_001_3).abs() < 1e-12);

        let opts = SweepOptions { include_rayleigh: false, ..Default::default() };
        let s = optimality_sweep(&[0.5, 0.1, 0.01], &[], &opts).unwrap();
        assert_eq!(s.bounds.len(), 3);
        assert!(s.bounds.windows(2).all(|w| w[1].ratio > w[0].ratio));
        assert!(s.rayleigh.is_empty());

        let s = optimality_sweep(&[], &[], &SweepOptions::default()).unwrap();
        assert!(s.report().is_empty());

        assert!(optimality_sweep(&[0.1, 0.5], &[], &opts).is_err());
        assert!(optimality_sweep(&[1.2], &[], &opts).is_err());
        assert!(optimality_sweep(&[0.1], &[10, 5], &opts).is_err());
    }

    #[test]
    fn rayleigh_below_spectral_radius() {
        let eps = [0.3, 0.03, 0.003];
        let n_grid = [10usize, 100, 1_000];
        let s = optimality_sweep(&eps, &n_grid, &SweepOptions::default()).unwrap();
        assert!(s.spectral_violations(0.0).is_empty());
        assert!(s.ratios_below_two());
        let table = spectral_growth_table(&n_grid, 1e-10).unwrap();
        for c in &s.rayleigh {
            let row = table.rows.iter().find(|r| r.n == c.n).unwrap();
            assert!(c.rayleigh <= row.estimate.lambda_max + row.estimate.residual);
        }
        let report = s.report();
        assert_eq!(report.rows.len(), eps.len() * (1 + n_grid.len()));
    }
}
