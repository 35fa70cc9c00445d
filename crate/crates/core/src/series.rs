//! Finite Dirichlet polynomials `f(s) = Σ_{n=1}^N aₙ n^{-s}`.

use std::io::BufRead;

use num_complex::Complex64;

use crate::error::{ensure_positive, Error, Result};
use crate::sum::CompensatedSum;

/// A point `s = sigma + i t` of the complex plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexPoint {
    pub sigma: f64,
    pub t: f64,
}

impl ComplexPoint {
    pub fn new(sigma: f64, t: f64) -> Self {
        debug_assert!(sigma.is_finite() && t.is_finite());
        Self { sigma, t }
    }

    /// The point `1/2 + i t` on the critical line.
    pub fn critical(t: f64) -> Self {
        Self::new(0.5, t)
    }
}

/// Coefficients `(a₁, …, a_N)` with their index logarithms `ln n` cached.
#[derive(Debug, Clone, PartialEq)]
pub struct DirichletPolynomial {
    coefficients: Vec<Complex64>,
    logs: Vec<f64>,
}

impl DirichletPolynomial {
    pub fn new(coefficients: Vec<Complex64>) -> Result<Self> {
        if let Some(index) = coefficients.iter().position(|a| !(a.re.is_finite() && a.im.is_finite())) {
            return Err(Error::NonFiniteCoefficient { index: index + 1 });
        }
        let logs = (1..=coefficients.len()).map(|n| (n as f64).ln()).collect();
        Ok(Self { coefficients, logs })
    }

    pub fn from_real(coefficients: &[f64]) -> Result<Self> {
        Self::new(coefficients.iter().map(|&a| Complex64::new(a, 0.0)).collect())
    }

    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// `aₙ` stored at position `n - 1`.
    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    /// `ln n` for `n = 1..=N`.
    pub fn logs(&self) -> &[f64] {
        &self.logs
    }

    /// Appends `count` zero coefficients.
    pub fn padded(&self, count: usize) -> Self {
        let mut coefficients = self.coefficients.clone();
        coefficients.extend(std::iter::repeat_n(Complex64::default(), count));
        Self::new(coefficients).expect("zero padding keeps coefficients finite")
    }

    /// `Σ aₙ exp(-s ln n)`.
    pub fn evaluate(&self, s: ComplexPoint) -> Complex64 {
        let mut acc = CompensatedSum::<Complex64>::new();
        for (a, &ln_n) in self.coefficients.iter().zip(&self.logs) {
            if *a == Complex64::default() {
                continue;
            }
            let modulus = (-s.sigma * ln_n).exp();
            let (sin, cos) = (s.t * ln_n).sin_cos();
            acc.add(*a * Complex64::new(modulus * cos, -modulus * sin));
        }
        acc.value()
    }

    /// `(Σ |aₙ|²)^{1/2}`.
    pub fn h2_norm(&self) -> f64 {
        self.coefficients
            .iter()
            .map(|a| a.norm_sqr())
            .collect::<CompensatedSum>()
            .value()
            .sqrt()
    }

    /// `M = Σ |aₙ| n^{-1/2}`, a uniform bound for `|f(1/2 + it)|`.
    pub fn critical_line_bound(&self) -> f64 {
        self.coefficients
            .iter()
            .enumerate()
            .map(|(i, a)| a.norm() / ((i + 1) as f64).sqrt())
            .collect::<CompensatedSum>()
            .value()
    }

    /// Reads a one-column CSV with header `a_n`; values are `re`, `re+imi` or `re-imi`.
    pub fn from_csv_reader<R: BufRead>(reader: R) -> Result<Self> {
        let mut coefficients = Vec::new();
        let mut header_seen = false;
        for (i, line) in reader.lines().enumerate() {
            let line = line?;
            let field = line.trim();
            if field.is_empty() {
                continue;
            }
            if !header_seen {
                if field != "a_n" {
                    return Err(Error::Parse {
                        line: i + 1,
                        message: format!("expected header `a_n`, found `{field}`"),
                    });
                }
                header_seen = true;
                continue;
            }
            let value = parse_complex(field).ok_or_else(|| Error::Parse {
                line: i + 1,
                message: format!("cannot parse `{field}` as a complex number"),
            })?;
            coefficients.push(value);
        }
        if !header_seen {
            return Err(Error::Parse { line: 1, message: "missing header `a_n`".into() });
        }
        Self::new(coefficients)
    }

    pub fn from_csv_str(text: &str) -> Result<Self> {
        Self::from_csv_reader(text.as_bytes())
    }
}

/// Parses `re`, `re+imi`, `re-imi`, or a bare imaginary `imi`.
pub fn parse_complex(text: &str) -> Option<Complex64> {
    let text = text.trim();
    let Some(body) = text.strip_suffix('i') else {
        return text.parse::<f64>().ok().map(|re| Complex64::new(re, 0.0));
    };
    // Split at the last sign that is not a leading sign or part of an exponent.
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    match split {
        Some(k) => {
            let re = body[..k].parse::<f64>().ok()?;
            let im = body[k..].trim_start_matches('+').parse::<f64>().ok()?;
            Some(Complex64::new(re, im))
        }
        None => body.parse::<f64>().ok().map(|im| Complex64::new(0.0, im)),
    }
}

/// Truncation `aₙ = n^{-1/2-ε}`, `n ≤ N`, of the shifted zeta function `ζ(1/2 + ε + s)`.
pub fn zeta_shift_coefficients(epsilon: f64, n: usize) -> Result<DirichletPolynomial> {
    ensure_positive("epsilon", epsilon)?;
    if n == 0 {
        return Err(Error::InvalidGrid("a positive truncation length"));
    }
    let exponent = -0.5 - epsilon;
    DirichletPolynomial::new(
        (1..=n)
            .map(|k| Complex64::new((k as f64).powf(exponent), 0.0))
            .collect(),
    )
}
