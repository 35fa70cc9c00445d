//! Composite Gauss–Legendre quadrature of the weighted critical-line integrals.
//!
//! The weighted norm `(1/π) ∫ |f(1/2+it)|² dt/(1+t²)` is integrated on
//! `[-T, T]`. Outside, `|f|²` splits into its mean `Σ |aₙ|²/n`, whose tail is
//! exact (`(2/π) arctan(1/T)` times the mean), and oscillating cross terms
//! `aₘ conj(aₙ) (mn)^{-1/2} (n/m)^{it}`. Integrating by parts once bounds each
//! cross term's tail by `4 / (π (1+T²) |ln(n/m)|)`, which is the reported
//! certificate.

use std::f64::consts::{FRAC_2_PI, FRAC_PI_2, PI};

use num_complex::Complex64;

use crate::error::{ensure_positive, Error, Result};
use crate::report::{Cell, SweepReport};
use crate::series::DirichletPolynomial;
use crate::sum::CompensatedSum;

pub const DEFAULT_NODES_PER_PANEL: usize = 16;
/// Largest truncation height an automatic rule will pick.
pub const MAX_TRUNCATION_HEIGHT: f64 = 1e6;
const MIN_TRUNCATION_HEIGHT: f64 = 16.0;
/// Panel width cap from the weight itself (poles at `±i`).
const MAX_PANEL_WIDTH: f64 = 1.0;
/// Above this length the cross-term sum is replaced by a closed-form bound.
const EXACT_CROSS_SUM_LIMIT: usize = 2000;

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            // P_n(x) and P_{n-1}(x) by the three-term recurrence
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = nf * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// Widest panel that sees at most a quarter period of `e^{iωt}`.
pub fn oscillation_panel_width(max_frequency: f64) -> f64 {
    if max_frequency > 0.0 {
        FRAC_PI_2 / max_frequency
    } else {
        f64::INFINITY
    }
}

/// Highest frequency of `|f(1/2+it)|²` for a polynomial of length `n`, rounded up to `ln(n+1)`.
fn polynomial_frequency(n: usize) -> f64 {
    ((n + 1) as f64).ln()
}

/// Discretization of a weighted line integral on `[-T, T]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureRule {
    pub truncation_height: f64,
    pub panel_count: usize,
    pub nodes_per_panel: usize,
    pub abs_tolerance: f64,
}

impl QuadratureRule {
    pub fn new(
        truncation_height: f64,
        panel_count: usize,
        nodes_per_panel: usize,
        abs_tolerance: f64,
    ) -> Result<Self> {
        ensure_positive("truncation_height", truncation_height)?;
        ensure_positive("abs_tolerance", abs_tolerance)?;
        if panel_count == 0 || nodes_per_panel == 0 {
            return Err(Error::InvalidRule("panel and node counts must be positive".into()));
        }
        Ok(Self { truncation_height, panel_count, nodes_per_panel, abs_tolerance })
    }

    pub fn panel_width(&self) -> f64 {
        2.0 * self.truncation_height / self.panel_count as f64
    }

    /// Same rule with twice the panels.
    pub fn refined(&self) -> Self {
        Self { panel_count: 2 * self.panel_count, ..*self }
    }

    fn with_height(truncation_height: f64, max_frequency: f64, abs_tolerance: f64) -> Result<Self> {
        let width = oscillation_panel_width(max_frequency).min(MAX_PANEL_WIDTH);
        let panels = (2.0 * truncation_height / width).ceil() as usize;
        Self::new(truncation_height, panels.max(2), DEFAULT_NODES_PER_PANEL, abs_tolerance)
    }

    /// Rule whose tail certificate for `f` is at most half of `abs_tolerance`.
    pub fn for_polynomial(f: &DirichletPolynomial, abs_tolerance: f64) -> Result<Self> {
        ensure_positive("abs_tolerance", abs_tolerance)?;
        let cross = cross_term_sum(f);
        // (4/π) S / (1 + T²) ≤ tol / 2
        let height = (8.0 * cross / (PI * abs_tolerance) - 1.0).max(0.0).sqrt();
        let height = height.clamp(MIN_TRUNCATION_HEIGHT, MAX_TRUNCATION_HEIGHT);
        Self::with_height(height, polynomial_frequency(f.len()), abs_tolerance)
    }

    /// Rule whose tail certificate for `I(x)` is at most half of `abs_tolerance`.
    pub fn for_weight(x: f64, abs_tolerance: f64) -> Result<Self> {
        ensure_positive("x", x)?;
        ensure_positive("abs_tolerance", abs_tolerance)?;
        let freq = x.ln().abs();
        let height = if freq > 0.0 {
            (8.0 / (PI * freq * abs_tolerance) - 1.0).max(0.0).sqrt()
        } else {
            0.0
        };
        let height = height.clamp(MIN_TRUNCATION_HEIGHT, MAX_TRUNCATION_HEIGHT);
        Self::with_height(height, freq, abs_tolerance)
    }

    fn check_resolution(&self, max_frequency: f64) -> Result<()> {
        let limit = oscillation_panel_width(max_frequency);
        if self.panel_width() > limit * (1.0 + 1e-12) {
            return Err(Error::InvalidRule(format!(
                "panel width {} exceeds the oscillation limit {limit}",
                self.panel_width()
            )));
        }
        Ok(())
    }
}

/// A quadrature result with its certified tail bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureValue {
    pub value: f64,
    /// Bound on the part of the integral outside `[-T, T]` not included in `value`.
    pub tail_bound: f64,
    pub truncation_height: f64,
    pub panel_count: usize,
}

/// `S = Σ_{m≠n} |aₘ||aₙ| / (√(mn) |ln(n/m)|)`, or an upper bound for long polynomials.
fn cross_term_sum(f: &DirichletPolynomial) -> f64 {
    let support: Vec<(f64, f64)> = f
        .coefficients()
        .iter()
        .zip(f.logs())
        .filter(|(a, _)| a.norm() > 0.0)
        .map(|(a, &ln_n)| (a.norm() * (-0.5 * ln_n).exp(), ln_n))
        .collect();
    if support.len() < 2 {
        return 0.0;
    }
    if f.len() > EXACT_CROSS_SUM_LIMIT {
        // every |ln(n/m)| ≥ ln(N/(N-1))
        let n = f.len() as f64;
        let m_bound = f.critical_line_bound();
        return m_bound * m_bound / (n / (n - 1.0)).ln();
    }
    let mut acc = CompensatedSum::new();
    for (i, &(wi, li)) in support.iter().enumerate() {
        for &(wj, lj) in &support[i + 1..] {
            acc.add(2.0 * wi * wj / (lj - li));
        }
    }
    acc.value()
}

#[inline]
fn weight(t: f64) -> f64 {
    1.0 / (PI * (1.0 + t * t))
}

/// `∫_a^b |f(1/2+it)|² ω(t) dt` by composite Gauss–Legendre.
///
/// Within a panel centred at `c`, `n^{-it} = n^{-ic} n^{-i h x_j}`; the second
/// factor (times `aₙ n^{-1/2}`) is tabulated once per node, so each panel costs
/// one `sin_cos` per term.
fn integrate_sq_modulus(
    f: &DirichletPolynomial,
    lower: f64,
    upper: f64,
    panels: usize,
    nodes_per_panel: usize,
    omega: impl Fn(f64) -> f64,
) -> f64 {
    let support: Vec<(Complex64, f64)> = f
        .coefficients()
        .iter()
        .zip(f.logs())
        .filter(|(a, _)| **a != Complex64::default())
        .map(|(a, &ln_n)| (*a * (-0.5 * ln_n).exp(), ln_n))
        .collect();
    if support.is_empty() {
        return 0.0;
    }
    let (nodes, gl_weights) = gauss_legendre(nodes_per_panel);
    let half = 0.5 * (upper - lower) / panels as f64;
    let offsets: Vec<Vec<Complex64>> = nodes
        .iter()
        .map(|&x| {
            support
                .iter()
                .map(|&(coef, ln_n)| {
                    let (s, c) = (half * x * ln_n).sin_cos();
                    coef * Complex64::new(c, -s)
                })
                .collect()
        })
        .collect();
    let mut base = vec![Complex64::default(); support.len()];
    let mut total = CompensatedSum::new();
    for p in 0..panels {
        let centre = lower + (2 * p + 1) as f64 * half;
        for (b, &(_, ln_n)) in base.iter_mut().zip(&support) {
            let (s, c) = (centre * ln_n).sin_cos();
            *b = Complex64::new(c, -s);
        }
        let mut panel = 0.0;
        for ((&x, &w), row) in nodes.iter().zip(&gl_weights).zip(&offsets) {
            let value: Complex64 = base.iter().zip(row).map(|(b, r)| b * r).sum();
            panel += w * value.norm_sqr() * omega(centre + half * x);
        }
        total.add(panel * half);
    }
    total.value()
}

/// `‖f‖²_{H²_i} = (1/π) ∫ |f(1/2+it)|² dt/(1+t²)` by quadrature.
///
/// `value` holds the `[-T, T]` integral plus the exact tail of the mean of
/// `|f|²`; `tail_bound` certifies the remaining cross-term tail, so
/// `|value - ‖f‖²_{H²_i}| ≤ abs_tolerance + tail_bound` when the rule resolves `f`.
pub fn h2i_sq_norm_quadrature(f: &DirichletPolynomial, rule: &QuadratureRule) -> Result<QuadratureValue> {
    let height = rule.truncation_height;
    if f.coefficients().iter().all(|a| *a == Complex64::default()) {
        return Ok(QuadratureValue {
            value: 0.0,
            tail_bound: 0.0,
            truncation_height: height,
            panel_count: rule.panel_count,
        });
    }
    rule.check_resolution(polynomial_frequency(f.len()))?;
    let tail_bound = 4.0 * cross_term_sum(f) / (PI * (1.0 + height * height));
    if tail_bound > rule.abs_tolerance {
        return Err(Error::TailBoundExceeded {
            tail_bound,
            tolerance: rule.abs_tolerance,
            truncation_height: height,
        });
    }
    let mean: f64 = f
        .coefficients()
        .iter()
        .enumerate()
        .map(|(i, a)| a.norm_sqr() / (i + 1) as f64)
        .collect::<CompensatedSum>()
        .value();
    let outer = mean * FRAC_2_PI * (1.0 / height).atan();
    let inner = integrate_sq_modulus(f, -height, height, rule.panel_count, rule.nodes_per_panel, weight);
    Ok(QuadratureValue {
        value: inner + outer,
        tail_bound,
        truncation_height: height,
        panel_count: rule.panel_count,
    })
}

/// `I(x) = (1/π) ∫ cos(t ln x) dt/(1+t²)` by quadrature on `[-T, T]`.
pub fn weight_integral_quadrature(x: f64, rule: &QuadratureRule) -> Result<QuadratureValue> {
    ensure_positive("x", x)?;
    let freq = x.ln();
    rule.check_resolution(freq.abs())?;
    let height = rule.truncation_height;
    let (tail_bound, outer) = if freq == 0.0 {
        (0.0, FRAC_2_PI * (1.0 / height).atan())
    } else {
        (4.0 / (PI * freq.abs() * (1.0 + height * height)), 0.0)
    };
    if tail_bound > rule.abs_tolerance {
        return Err(Error::TailBoundExceeded {
            tail_bound,
            tolerance: rule.abs_tolerance,
            truncation_height: height,
        });
    }
    let (nodes, gl_weights) = gauss_legendre(rule.nodes_per_panel);
    let half = height / rule.panel_count as f64;
    let offsets: Vec<(f64, f64)> = nodes.iter().map(|&x| (half * x * freq).sin_cos()).collect();
    let mut total = CompensatedSum::new();
    for p in 0..rule.panel_count {
        let centre = -height + (2 * p + 1) as f64 * half;
        let (sc, cc) = (centre * freq).sin_cos();
        let mut panel = 0.0;
        for ((&x, &w), &(so, co)) in nodes.iter().zip(&gl_weights).zip(&offsets) {
            panel += w * (cc * co - sc * so) * weight(centre + half * x);
        }
        total.add(panel * half);
    }
    Ok(QuadratureValue {
        value: total.value() + outer,
        tail_bound,
        truncation_height: height,
        panel_count: rule.panel_count,
    })
}

/// `∫_τ^{τ+1} |f(1/2+it)|² dt` with panels no wider than the rule's.
pub fn local_sq_integral(f: &DirichletPolynomial, tau: f64, rule: &QuadratureRule) -> Result<f64> {
    if !tau.is_finite() {
        return Err(Error::InvalidGrid("finite window offsets"));
    }
    let width = rule
        .panel_width()
        .min(oscillation_panel_width(polynomial_frequency(f.len())));
    let panels = (1.0 / width).ceil().max(1.0) as usize;
    Ok(integrate_sq_modulus(f, tau, tau + 1.0, panels, rule.nodes_per_panel, |_| 1.0))
}

/// Unit-window integrals over a grid of offsets.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalSweep {
    /// `(τ, ∫_τ^{τ+1} |f|²)` in grid order.
    pub rows: Vec<(f64, f64)>,
    pub max_value: f64,
    pub argmax_tau: f64,
    pub h2_norm: f64,
    /// `max^{1/2} / ‖f‖_{ℋ²}`: an observed lower bound for the local constant.
    pub ratio: f64,
}

impl LocalSweep {
    pub fn report(&self) -> SweepReport {
        let mut report = SweepReport::new("local-sweep", &["tau", "local_sq_integral"]);
        for &(tau, value) in &self.rows {
            report.push(vec![Cell::Float(tau), Cell::Float(value)]);
        }
        report.set_meta("max_value", Cell::Float(self.max_value));
        report.set_meta("argmax_tau", Cell::Float(self.argmax_tau));
        report.set_meta("h2_norm", Cell::Float(self.h2_norm));
        report.set_meta("observed_ratio", Cell::Float(self.ratio));
        report
    }
}

pub fn local_sweep(f: &DirichletPolynomial, tau_grid: &[f64], rule: &QuadratureRule) -> Result<LocalSweep> {
    if tau_grid.is_empty() {
        return Err(Error::InvalidGrid("nonempty"));
    }
    let rows = tau_grid
        .iter()
        .map(|&tau| local_sq_integral(f, tau, rule).map(|v| (tau, v)))
        .collect::<Result<Vec<_>>>()?;
    let (argmax_tau, max_value) = rows
        .iter()
        .copied()
        .fold((rows[0].0, f64::NEG_INFINITY), |best, row| if row.1 > best.1 { row } else { best });
    let h2_norm = f.h2_norm();
    let ratio = if h2_norm > 0.0 { max_value.sqrt() / h2_norm } else { 0.0 };
    Ok(LocalSweep { rows, max_value, argmax_tau, h2_norm, ratio })
}
