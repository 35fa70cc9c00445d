//! The max-type Hilbert kernel `K(m, n) = √(mn) / max(m, n)²`.
//!
//! Expanding `|f(1/2 + it)|²` against the weight `dt / (π(1 + t²))` turns the
//! weighted norm into the quadratic form `Σ aₘ conj(aₙ) K(m, n)`, because
//! `(1/π) ∫ x^{it} dt / (1 + t²) = 1 / max(x, 1/x)`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::sum::{CompensatedSum, Summand};
use crate::zeta::power_tail;

/// Closed-form weight integral `I(x) = e^{-|ln x|} = 1 / max(x, 1/x)`.
pub fn weight_integral_closed(x: f64) -> Result<f64> {
    crate::error::ensure_positive("x", x)?;
    Ok(if x >= 1.0 { 1.0 / x } else { x })
}

/// A kernel position `(m, n)` with both indices at least 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct KernelEntryIndex {
    m: u64,
    n: u64,
}

impl KernelEntryIndex {
    pub fn new(m: u64, n: u64) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::InvalidIndex { m, n });
        }
        Ok(Self { m, n })
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn n(&self) -> u64 {
        self.n
    }
}

pub fn kernel_entry(idx: KernelEntryIndex) -> f64 {
    kernel_value(idx.m, idx.n)
}

/// `√(mn) / max(m, n)²`, symmetric bit for bit.
#[inline]
pub(crate) fn kernel_value(m: u64, n: u64) -> f64 {
    let (lo, hi) = if m <= n { (m as f64, n as f64) } else { (n as f64, m as f64) };
    lo.sqrt() * hi.sqrt() / (hi * hi)
}

/// Scalars the kernel acts on: real or complex coefficients.
pub trait KernelScalar: Summand {
    /// `Re(self · conj(other))`.
    fn dot_re(self, other: Self) -> f64;
    fn norm_sqr(self) -> f64;
}

impl KernelScalar for f64 {
    #[inline]
    fn dot_re(self, other: f64) -> f64 {
        self * other
    }
    #[inline]
    fn norm_sqr(self) -> f64 {
        self * self
    }
}

impl KernelScalar for Complex64 {
    #[inline]
    fn dot_re(self, other: Complex64) -> f64 {
        self.re * other.re + self.im * other.im
    }
    #[inline]
    fn norm_sqr(self) -> f64 {
        Complex64::norm_sqr(&self)
    }
}

/// Writes `Kv` into `out` in O(N):
/// `(Kv)ₘ = m^{-3/2} Σ_{n ≤ m} √n vₙ + √m Σ_{n > m} n^{-3/2} vₙ`.
///
/// The suffix sweep runs from the largest index down so the smallest terms
/// enter the accumulator first.
pub(crate) fn apply_kernel<T: KernelScalar>(
    v: &[T],
    sqrt_n: &[f64],
    inv_pow32: &[f64],
    out: &mut [T],
) {
    debug_assert!(v.len() == out.len() && sqrt_n.len() >= v.len() && inv_pow32.len() >= v.len());
    let mut suffix = CompensatedSum::<T>::new();
    for i in (0..v.len()).rev() {
        out[i] = suffix.value() * sqrt_n[i];
        suffix.add(v[i] * inv_pow32[i]);
    }
    let mut prefix = CompensatedSum::<T>::new();
    for i in 0..v.len() {
        prefix.add(v[i] * sqrt_n[i]);
        out[i] = out[i] + prefix.value() * inv_pow32[i];
    }
}

pub(crate) fn sqrt_table(n: usize) -> Vec<f64> {
    (1..=n).map(|k| (k as f64).sqrt()).collect()
}

pub(crate) fn inv_pow32_table(sqrt_n: &[f64]) -> Vec<f64> {
    sqrt_n
        .iter()
        .enumerate()
        .map(|(i, s)| 1.0 / ((i + 1) as f64 * s))
        .collect()
}

/// `Kv` for a vector of any length, without a prepared operator.
pub fn kernel_apply<T: KernelScalar>(v: &[T]) -> Vec<T> {
    let sqrt_n = sqrt_table(v.len());
    let inv = inv_pow32_table(&sqrt_n);
    let mut out = vec![T::default(); v.len()];
    apply_kernel(v, &sqrt_n, &inv, &mut out);
    out
}

/// `B(a, b) = Σₘ Σₙ aₘ bₙ K(m, n)` by the full double loop. No conjugation is
/// applied; pass `conj(a)` as `b` to recover the weighted norm. The shorter
/// sequence is treated as zero-padded.
pub fn bilinear_form_naive(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    let mut acc = CompensatedSum::<Complex64>::new();
    for (i, &am) in a.iter().enumerate() {
        if am == Complex64::default() {
            continue;
        }
        let mut row = CompensatedSum::<Complex64>::new();
        for (j, &bn) in b.iter().enumerate() {
            row.add(bn * kernel_value(i as u64 + 1, j as u64 + 1));
        }
        acc.add(am * row.value());
    }
    acc.value()
}

/// `Q(a) = Σₘ Σₙ aₘ conj(aₙ) K(m, n) = ‖f‖²_{H²_i}` in O(N) via prefix and
/// suffix sums.
pub fn quadratic_form_fast<T: KernelScalar>(a: &[T]) -> f64 {
    let ka = kernel_apply(a);
    a.iter()
        .zip(&ka)
        .map(|(&x, &y)| x.dot_re(y))
        .collect::<CompensatedSum>()
        .value()
}

/// Kernel row sum `Σₙ m / max(m, n)² = 1 + m Σ_{n > m} n⁻²`, in `(0, 2)`.
pub fn row_sum(m: u64) -> f64 {
    assert!(m >= 1, "row index starts at 1");
    1.0 + m as f64 * power_tail(2.0, m)
}

fn weighted_row_mass(a: &[Complex64], rows: &[f64]) -> f64 {
    a.iter()
        .zip(rows)
        .map(|(x, r)| x.norm_sqr() * r)
        .collect::<CompensatedSum>()
        .value()
}

/// Schur-test bound `(Σ |aₘ|² r(m))^{1/2} (Σ |bₙ|² r(n))^{1/2}` with `r` the row sums.
pub fn cauchy_schwarz_bound(a: &[Complex64], b: &[Complex64]) -> f64 {
    let rows: Vec<f64> = (1..=a.len().max(b.len()) as u64).map(row_sum).collect();
    (weighted_row_mass(a, &rows) * weighted_row_mass(b, &rows)).sqrt()
}
