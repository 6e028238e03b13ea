//! Half-line harmonic-oscillator spectra under Dirichlet/Neumann walls and the
//! per-level force coefficients.
//!
//! A wall at the origin restricts the oscillator to one half line. The
//! Dirichlet side keeps the odd whole-line eigenfunctions (energies
//! `e_k = k + 3/4` in units of the energy scale), the Neumann side the even
//! ones (`e_k = k + 1/4`). The difference between the per-level forces the two
//! towers exert on the wall is the coefficient `delta_f_level(k)`, a ratio of
//! central binomial type that this module evaluates without materializing
//! factorials.

use crate::error::{Error, Result};

/// Boundary condition imposed by the wall on one half line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundaryCondition {
    Dirichlet,
    Neumann,
}

impl BoundaryCondition {
    /// Spectral offset: `3/4` for Dirichlet, `1/4` for Neumann.
    pub fn sigma(self) -> f64 {
        match self {
            BoundaryCondition::Dirichlet => 0.75,
            BoundaryCondition::Neumann => 0.25,
        }
    }
}

impl std::fmt::Display for BoundaryCondition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BoundaryCondition::Dirichlet => write!(f, "Dirichlet"),
            BoundaryCondition::Neumann => write!(f, "Neumann"),
        }
    }
}

/// Trap length and energy scales. All core results are dimensionless; these
/// only multiply dimensional outputs at the presentation edge.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalScales {
    /// Oscillator length `a = sqrt(hbar/(m omega))`.
    pub length: f64,
    /// Energy scale (twice the level spacing convention, `2 hbar omega`).
    pub energy: f64,
}

impl Default for PhysicalScales {
    fn default() -> Self {
        Self {
            length: 1.0,
            energy: 1.0,
        }
    }
}

impl PhysicalScales {
    pub fn new(length: f64, energy: f64) -> Result<Self> {
        if !(length > 0.0) || !(energy > 0.0) {
            return Err(Error::Domain(format!(
                "scales must be strictly positive, got a = {length}, E = {energy}"
            )));
        }
        Ok(Self { length, energy })
    }

    /// Multiplier converting the dimensionless net force to a dimensional one:
    /// `energy / (2 sqrt(pi) length)`.
    pub fn force_unit(&self) -> f64 {
        self.energy / (2.0 * std::f64::consts::PI.sqrt() * self.length)
    }
}

/// Dimensionless level energy `e_k = k + sigma(bc)`.
///
/// Exact half-integer arithmetic for every representable `k`.
pub fn level_energy(bc: BoundaryCondition, k: usize) -> f64 {
    k as f64 + bc.sigma()
}

/// Hermite polynomial value at the origin for even order `l = 2k`:
/// `H_{2k}(0) = (-1)^k (2k)!/k!`.
///
/// Evaluated by the ratio recurrence `|H_{2(k+1)}(0)| = 2(2k+1) |H_{2k}(0)|`,
/// which keeps the sign exact and avoids factorials. Overflows f64 near
/// `k = 134`; use [`hermite_at_zero_log`] past that.
pub fn hermite_at_zero(l: usize) -> Result<f64> {
    if !l.is_multiple_of(2) {
        return Err(Error::Domain(format!(
            "H_l(0) vanishes for odd l (got l = {l}); only even orders are supported"
        )));
    }
    let k = l / 2;
    let mut magnitude = 1.0_f64;
    for j in 0..k {
        magnitude *= 2.0 * (2 * j + 1) as f64;
        if !magnitude.is_finite() {
            return Err(Error::Overflow(format!(
                "|H_{l}(0)| exceeds f64 range; request the log-magnitude form"
            )));
        }
    }
    let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
    Ok(sign * magnitude)
}

/// Log-magnitude form of [`hermite_at_zero`]: returns `(sign, ln |H_{2k}(0)|)`.
pub fn hermite_at_zero_log(l: usize) -> Result<(f64, f64)> {
    if !l.is_multiple_of(2) {
        return Err(Error::Domain(format!(
            "H_l(0) vanishes for odd l (got l = {l}); only even orders are supported"
        )));
    }
    let k = l / 2;
    let mut ln_magnitude = 0.0_f64;
    for j in 0..k {
        ln_magnitude += (2.0 * (2 * j + 1) as f64).ln();
    }
    let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
    Ok((sign, ln_magnitude))
}

/// Per-level dimensionless force coefficient
/// `delta_f_k = (2k)! / (2^{2k} (k!)^2)`.
///
/// Computed by the running product `delta_f_{k+1} = delta_f_k (2k+1)/(2k+2)`
/// from `delta_f_0 = 1`; strictly decreasing, always in `(0, 1]`, and free of
/// factorial overflow for any practical `k`. Cost is O(k); use
/// [`delta_f_levels`] when consecutive values are needed.
pub fn delta_f_level(k: usize) -> f64 {
    let mut value = 1.0_f64;
    for j in 0..k {
        value *= (2 * j + 1) as f64 / (2 * j + 2) as f64;
    }
    value
}

/// Iterator over `delta_f_0, delta_f_1, ...` via the multiplicative recurrence.
pub fn delta_f_levels() -> impl Iterator<Item = f64> {
    let mut value = 1.0_f64;
    let mut k = 0usize;
    std::iter::from_fn(move || {
        let current = value;
        value *= (2 * k + 1) as f64 / (2 * k + 2) as f64;
        k += 1;
        Some(current)
    })
}

/// Closed-form approximants of `delta_f_k` for large `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeltaFApprox {
    /// Leading Stirling term `1/sqrt(pi k)`.
    Stirling0,
    /// Stirling with first correction `(1/sqrt(pi k)) (1 - 1/(8k))`.
    Stirling1,
    /// Rearranged form `1/sqrt(pi (k + 1/4))`, usable from `k = 0`.
    Rearranged,
}

/// Evaluate one of the closed-form approximants of `delta_f_k`.
///
/// The Stirling forms require `k >= 1`; the rearranged form is defined for all `k`.
pub fn delta_f_level_approx(k: usize, form: DeltaFApprox) -> Result<f64> {
    let pi = std::f64::consts::PI;
    match form {
        DeltaFApprox::Stirling0 | DeltaFApprox::Stirling1 if k == 0 => Err(Error::Domain(
            "Stirling forms of delta_f are undefined at k = 0".to_string(),
        )),
        DeltaFApprox::Stirling0 => Ok(1.0 / (pi * k as f64).sqrt()),
        DeltaFApprox::Stirling1 => {
            Ok((1.0 / (pi * k as f64).sqrt()) * (1.0 - 1.0 / (8.0 * k as f64)))
        }
        DeltaFApprox::Rearranged => Ok(1.0 / (pi * (k as f64 + 0.25)).sqrt()),
    }
}

/// Zero-temperature fermionic net force `2N delta_f_N`, the closed form of the
/// filled-Fermi-sea sum `sum_{k<N} delta_f_k`.
pub fn fermion_zero_t_force(n: u32) -> f64 {
    2.0 * n as f64 * delta_f_level(n as usize)
}
