//! Riemann zeta on the real half-line `σ > 1` by Euler–Maclaurin summation.

use crate::error::{Error, Result};
use crate::sum::CompensatedSum;

/// `ζ(2) = π²/6`.
pub const ZETA_2: f64 = std::f64::consts::PI * std::f64::consts::PI / 6.0;

/// `B_{2k} / (2k)!` for `k = 1..=5`.
const BERNOULLI_OVER_FACTORIAL: [f64; 5] = [
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30_240.0,
    -1.0 / 1_209_600.0,
    1.0 / 47_900_160.0,
];

const MAX_CORRECTION_TERMS: u8 = 4;
const MAX_CUTOFF: u64 = 1 << 24;
/// Upper limit for the automatic `1/(σ-1)` cutoff near the pole.
const POLE_CUTOFF_CAP: u64 = 1 << 20;
/// Above this index `harmonic2` switches from direct summation to `ζ(2) - tail`.
const HARMONIC_DIRECT_LIMIT: u64 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZetaConfig {
    /// Index `M` where the explicit sum stops and the Euler–Maclaurin tail takes over.
    pub cutoff: u64,
    /// Number of Bernoulli corrections, `0..=4`.
    pub correction_terms: u8,
    pub rel_tolerance: f64,
}

impl Default for ZetaConfig {
    fn default() -> Self {
        Self { cutoff: 50, correction_terms: 2, rel_tolerance: 1e-15 }
    }
}

impl ZetaConfig {
    pub fn new(cutoff: u64, correction_terms: u8, rel_tolerance: f64) -> Result<Self> {
        if cutoff < 2 {
            return Err(Error::InvalidGrid("a zeta cutoff of at least 2"));
        }
        if correction_terms > MAX_CORRECTION_TERMS {
            return Err(Error::InvalidGrid("at most 4 Euler-Maclaurin corrections"));
        }
        crate::error::ensure_positive("rel_tolerance", rel_tolerance)?;
        Ok(Self { cutoff, correction_terms, rel_tolerance })
    }
}

/// Euler–Maclaurin tail `Σ_{n ≥ m} n^{-σ}` with `terms` Bernoulli corrections.
///
/// Also returns the magnitude of the first omitted correction, which bounds
/// the truncation error for `σ > 0`.
fn em_tail(sigma: f64, m: u64, terms: u8) -> (f64, f64) {
    let m = m as f64;
    let m_pow = m.powf(-sigma);
    let mut acc = CompensatedSum::new();
    acc.add(m * m_pow / (sigma - 1.0));
    acc.add(0.5 * m_pow);
    // rising factorial σ(σ+1)…(σ+2k-2) times m^{-σ-2k+1}
    let mut factor = sigma * m_pow / m;
    let inv_m2 = 1.0 / (m * m);
    for (k, coeff) in BERNOULLI_OVER_FACTORIAL[..terms as usize].iter().enumerate() {
        acc.add(coeff * factor);
        let j = 2.0 * k as f64;
        factor *= (sigma + j + 1.0) * (sigma + j + 2.0) * inv_m2;
    }
    (acc.value(), (BERNOULLI_OVER_FACTORIAL[terms as usize] * factor).abs())
}

fn partial_power_sum(sigma: f64, from: u64, to_exclusive: u64) -> f64 {
    (from..to_exclusive)
        .map(|n| (n as f64).powf(-sigma))
        .collect::<CompensatedSum>()
        .value()
}

/// `ζ(σ)` for real `σ > 1`.
///
/// Sums `n < M` explicitly and adds the Euler–Maclaurin tail from `M`. The
/// cutoff starts at `max(cfg.cutoff, ⌈1/(σ-1)⌉)` and doubles until the first
/// omitted correction is below `rel_tolerance` relative to the result.
pub fn zeta_real(sigma: f64, cfg: &ZetaConfig) -> Result<f64> {
    if !(sigma.is_finite() && sigma > 1.0) {
        return Err(Error::ZetaDomain(sigma));
    }
    let pole_cutoff = (1.0 / (sigma - 1.0)).ceil().min(POLE_CUTOFF_CAP as f64) as u64;
    let mut cutoff = cfg.cutoff.max(2).max(pole_cutoff);
    let mut head = partial_power_sum(sigma, 1, cutoff);
    loop {
        let (tail, omitted) = em_tail(sigma, cutoff, cfg.correction_terms);
        let value = head + tail;
        if omitted <= cfg.rel_tolerance * value {
            return Ok(value);
        }
        if cutoff >= MAX_CUTOFF {
            return Err(Error::ZetaTolerance { sigma, tolerance: cfg.rel_tolerance, cutoff });
        }
        head += partial_power_sum(sigma, cutoff, 2 * cutoff);
        cutoff *= 2;
    }
}

/// `ζ(σ)` with the default configuration.
pub fn zeta(sigma: f64) -> Result<f64> {
    zeta_real(sigma, &ZetaConfig::default())
}

/// `Σ_{n > m} n^{-σ}` for `σ > 1`, computed without forming `ζ(σ) - H_m`.
pub fn power_tail(sigma: f64, m: u64) -> f64 {
    debug_assert!(sigma > 1.0);
    let start = (m + 1).max(64);
    let head = partial_power_sum(sigma, m + 1, start);
    head + em_tail(sigma, start, MAX_CORRECTION_TERMS).0
}

/// `H_m^{(2)} = Σ_{n ≤ m} n⁻²`.
pub fn harmonic2(m: u64) -> f64 {
    if m <= HARMONIC_DIRECT_LIMIT {
        // decreasing order: smallest terms first
        (1..=m)
            .rev()
            .map(|n| {
                let x = n as f64;
                1.0 / (x * x)
            })
            .collect::<CompensatedSum>()
            .value()
    } else {
        ZETA_2 - power_tail(2.0, m)
    }
}
