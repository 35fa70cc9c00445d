//! Compensated (Neumaier) summation for real and complex terms.

use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

/// A value that can be accumulated with an error-free two-sum step.
pub trait Summand:
    Copy + Default + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self>
{
    /// Returns `(s + x, rounding error of that addition)`.
    fn two_sum(s: Self, x: Self) -> (Self, Self);
}

impl Summand for f64 {
    #[inline]
    fn two_sum(s: f64, x: f64) -> (f64, f64) {
        let t = s + x;
        let err = if s.abs() >= x.abs() { (s - t) + x } else { (x - t) + s };
        (t, err)
    }
}

impl Summand for Complex64 {
    #[inline]
    fn two_sum(s: Complex64, x: Complex64) -> (Complex64, Complex64) {
        let (re, re_err) = f64::two_sum(s.re, x.re);
        let (im, im_err) = f64::two_sum(s.im, x.im);
        (Complex64::new(re, im), Complex64::new(re_err, im_err))
    }
}

/// Running sum that carries the lost low-order bits separately.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum<T: Summand = f64> {
    sum: T,
    compensation: T,
}

impl<T: Summand> CompensatedSum<T> {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: T) {
        let (t, err) = T::two_sum(self.sum, x);
        self.sum = t;
        self.compensation = self.compensation + err;
    }

    #[inline]
    pub fn value(&self) -> T {
        self.sum + self.compensation
    }
}

impl<T: Summand> Extend<T> for CompensatedSum<T> {
    fn extend<I: IntoIterator<Item = T>>(&mut self, iter: I) {
        for x in iter {
            self.add(x);
        }
    }
}

impl<T: Summand> FromIterator<T> for CompensatedSum<T> {
    fn from_iter<I: IntoIterator<Item = T>>(iter: I) -> Self {
        let mut acc = Self::new();
        acc.extend(iter);
        acc
    }
}

/// Compensated sum of an iterator of terms.
pub fn compensated_sum<T: Summand, I: IntoIterator<Item = T>>(terms: I) -> T {
    terms.into_iter().collect::<CompensatedSum<T>>().value()
}
