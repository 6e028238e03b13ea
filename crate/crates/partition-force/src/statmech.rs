//! Exact finite-temperature statistics on the half-line spectrum: the
//! particle-number constraint, the reduced chemical constant, and the net
//! force on the wall by direct and resummed level sums.
//!
//! Everything is phrased in the reduced chemical constant `alpha_tilde`
//! (written `at` in formulas below), the boundary-condition-independent
//! combination for which the occupations read `N_k = 1/(exp(at + b k) - eta)`.
//! `exp(-at)` plays the role of a fugacity: for `at > 0` both the number and
//! the force sums admit an exact geometric resummation over powers of
//! `exp(-at)`, which is the cheap evaluation path at high temperature.

use crate::error::{Error, Result};
use crate::numeric::bisect_root;

/// Relative tolerance on the particle-number constraint.
pub const NUMBER_TOLERANCE: f64 = 1e-10;

/// Relative tail-bound target for truncated level and fugacity-power sums.
const TAIL_TOLERANCE: f64 = 1e-13;

/// Hard cap on summation indices.
const SUM_CAP: usize = 100_000_000;

/// Particle statistics: the sign in the occupation denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Statistics {
    Bose,
    Fermi,
}

impl Statistics {
    /// `+1` for bosons, `-1` for fermions.
    pub fn eta(self) -> f64 {
        match self {
            Statistics::Bose => 1.0,
            Statistics::Fermi => -1.0,
        }
    }
}

impl std::fmt::Display for Statistics {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Statistics::Bose => write!(f, "bose"),
            Statistics::Fermi => write!(f, "fermi"),
        }
    }
}

/// Ensemble specification: particle count and rescaled inverse temperature.
///
/// `b = 1/t` with `t` the temperature in units of the energy scale. The
/// inversion happens exactly once, in [`EnsembleParams::from_temperature`];
/// zero temperature is served by dedicated limit operations
/// ([`boson_zero_t_force`], [`crate::spectrum::fermion_zero_t_force`]) rather
/// than by a parameter value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnsembleParams {
    n: u32,
    b: f64,
}

impl EnsembleParams {
    /// Build from the inverse temperature `b`.
    pub fn new(n: u32, b: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("particle count must be at least 1".into()));
        }
        if !(b > 0.0) || !b.is_finite() {
            return Err(Error::Domain(format!(
                "inverse temperature must be positive and finite, got b = {b}"
            )));
        }
        Ok(Self { n, b })
    }

    /// Build from the temperature `t`, storing `b = 1/t`.
    pub fn from_temperature(n: u32, t: f64) -> Result<Self> {
        if !(t > 0.0) || !t.is_finite() {
            return Err(Error::Domain(format!(
                "temperature must be positive and finite, got t = {t}"
            )));
        }
        Self::new(n, 1.0 / t)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn n_f64(&self) -> f64 {
        self.n as f64
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn t(&self) -> f64 {
        1.0 / self.b
    }
}

/// Outcome of solving the particle-number constraint.
#[derive(Debug, Clone, Copy)]
pub struct FugacityResult {
    /// The reduced chemical constant (identical for both boundary conditions).
    pub alpha_tilde: f64,
    /// Achieved `|sum N_k - N| / N`.
    pub residual: f64,
    /// Bisection steps spent.
    pub iterations: u32,
    /// Final enclosing bracket in `alpha_tilde`.
    pub bracket: (f64, f64),
}

/// Evaluation path for the infinite sums.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SummationMode {
    /// Term-by-term sum over levels `k`.
    Direct,
    /// Geometric resummation over fugacity powers `l`; requires `alpha_tilde > 0`.
    Resummed,
}

impl SummationMode {
    /// The path used when the caller does not insist: resummation once the
    /// fugacity series is short (`alpha_tilde > ln 2`), direct otherwise.
    pub fn auto(alpha_tilde: f64) -> Self {
        if alpha_tilde > std::f64::consts::LN_2 {
            SummationMode::Resummed
        } else {
            SummationMode::Direct
        }
    }
}

/// A truncated sum together with the analytic bound on its discarded tail.
#[derive(Debug, Clone, Copy)]
pub struct SumResult {
    pub value: f64,
    pub tail_bound: f64,
    pub terms: usize,
}

/// Provenance tag for a force value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    ExactDirect,
    ExactResummed,
    HighTSeries { terms: u8 },
    HighTPade,
    LowTFermion { terms: u8 },
    LowTBoson { terms: u8 },
    MedTFermion,
    MedTBoson,
    Interpolated,
    ZeroTemperature,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Method::ExactDirect => write!(f, "exact-direct"),
            Method::ExactResummed => write!(f, "exact-resummed"),
            Method::HighTSeries { terms } => write!(f, "highT-{terms}"),
            Method::HighTPade => write!(f, "pade"),
            Method::LowTFermion { terms } => write!(f, "lowT-{terms}"),
            Method::LowTBoson { terms } => write!(f, "lowT-{terms}"),
            Method::MedTFermion => write!(f, "medT"),
            Method::MedTBoson => write!(f, "medT"),
            Method::Interpolated => write!(f, "interp"),
            Method::ZeroTemperature => write!(f, "zeroT"),
        }
    }
}

/// A dimensionless net-force value tagged with how it was obtained.
#[derive(Debug, Clone)]
pub struct ForceEstimate {
    pub value: f64,
    pub method: Method,
    /// Truncation-error bound, when the producing sum reports one.
    pub tail_bound: Option<f64>,
    /// Out-of-regime caveat, when the producing formula reports one.
    pub warning: Option<crate::error::RegimeWarning>,
}

impl ForceEstimate {
    pub fn new(value: f64, method: Method) -> Self {
        Self {
            value,
            method,
            tail_bound: None,
            warning: None,
        }
    }
}

/// Occupation of level `k`: `N_k = 1/(exp(at + b k) - eta)`.
///
/// Strictly decreasing in `k` and positive. For bosons `alpha_tilde <= 0`
/// would make the `k = 0` denominator nonpositive and is rejected.
pub fn occupation(
    k: usize,
    alpha_tilde: f64,
    params: &EnsembleParams,
    stats: Statistics,
) -> Result<f64> {
    if stats == Statistics::Bose && alpha_tilde <= 0.0 {
        return Err(Error::Domain(format!(
            "bosonic occupations require alpha_tilde > 0, got {alpha_tilde}"
        )));
    }
    Ok(occupation_unchecked(
        alpha_tilde + params.b * k as f64,
        stats.eta(),
    ))
}

/// `1/(e^x - eta)` evaluated without overflowing for large `x`.
#[inline]
fn occupation_unchecked(x: f64, eta: f64) -> f64 {
    if x > 0.0 {
        let e = (-x).exp();
        e / (1.0 - eta * e)
    } else {
        // Fermions only: 1/(e^x + 1) with e^x <= 1.
        1.0 / (x.exp() - eta)
    }
}

/// Geometric majorant of the level-sum tail past index `k_last`, for unit
/// weights. `x_next = at + b (k_last + 1)` must be positive.
fn direct_tail_bound(x_next: f64, b: f64, eta: f64) -> f64 {
    let z_next = (-x_next).exp();
    let one_minus_q = -(-b).exp_m1();
    if eta > 0.0 {
        // N_k <= z_k / (1 - z_next) for k > k_last.
        z_next / (one_minus_q * (1.0 - z_next))
    } else {
        // N_k <= z_k.
        z_next / one_minus_q
    }
}

/// Direct sum `sum_k w_k N_k` where `w_k` is produced by `weights`
/// (nonincreasing, bounded by 1). Used with unit weights for the number
/// constraint and with the per-level force coefficients for the net force.
fn direct_sum(
    alpha_tilde: f64,
    params: &EnsembleParams,
    stats: Statistics,
    mut weights: impl Iterator<Item = f64>,
) -> Result<SumResult> {
    let eta = stats.eta();
    if stats == Statistics::Bose && alpha_tilde <= 0.0 {
        return Err(Error::Domain(format!(
            "bosonic sums require alpha_tilde > 0, got {alpha_tilde}"
        )));
    }
    let b = params.b;
    let mut sum = 0.0_f64;
    for k in 0..SUM_CAP {
        let w = weights.next().expect("weight iterator is infinite");
        let x = alpha_tilde + b * k as f64;
        sum += w * occupation_unchecked(x, eta);
        let x_next = x + b;
        if x_next > 0.0 {
            // The next weight bounds all remaining ones.
            let tail = w * direct_tail_bound(x_next, b, eta);
            if tail <= TAIL_TOLERANCE * sum.abs() {
                return Ok(SumResult {
                    value: sum,
                    tail_bound: tail,
                    terms: k + 1,
                });
            }
        }
    }
    Err(Error::Convergence(format!(
        "direct level sum did not meet its tail bound within {SUM_CAP} terms \
         (alpha_tilde = {alpha_tilde}, b = {})",
        params.b
    )))
}

/// Resummed sum `eta sum_l (eta e^{-at})^l / d_l` with `d_l = 1 - q^l`
/// (number constraint) or `sqrt(1 - q^l)` (net force), `q = e^{-b}`.
fn resummed_sum(
    alpha_tilde: f64,
    params: &EnsembleParams,
    stats: Statistics,
    sqrt_denominator: bool,
) -> Result<SumResult> {
    if alpha_tilde <= 0.0 {
        return Err(Error::Domain(format!(
            "resummation requires alpha_tilde > 0 (fugacity below 1), got {alpha_tilde}"
        )));
    }
    let eta = stats.eta();
    let b = params.b;
    let z = (-alpha_tilde).exp();
    let mut power = 1.0_f64; // (eta z)^l, updated multiplicatively
    let mut sum = 0.0_f64;
    for l in 1..SUM_CAP {
        power *= eta * z;
        let one_minus_ql = -(-b * l as f64).exp_m1();
        let denom = if sqrt_denominator {
            one_minus_ql.sqrt()
        } else {
            one_minus_ql
        };
        sum += eta * power / denom;
        // 1 - q^l only grows with l, so the next denominator bounds the tail.
        let one_minus_q_next = -(-b * (l + 1) as f64).exp_m1();
        let denom_next = if sqrt_denominator {
            one_minus_q_next.sqrt()
        } else {
            one_minus_q_next
        };
        let tail = z.powi((l + 1) as i32) / ((1.0 - z) * denom_next);
        if tail <= TAIL_TOLERANCE * sum.abs() {
            return Ok(SumResult {
                value: sum,
                tail_bound: tail,
                terms: l,
            });
        }
    }
    Err(Error::Convergence(format!(
        "resummed series did not meet its tail bound within {SUM_CAP} terms \
         (alpha_tilde = {alpha_tilde}, b = {b})"
    )))
}

/// Total particle number `sum_k N_k` at the given reduced chemical constant.
pub fn total_number(
    alpha_tilde: f64,
    params: &EnsembleParams,
    stats: Statistics,
    mode: SummationMode,
) -> Result<SumResult> {
    match mode {
        SummationMode::Direct => direct_sum(alpha_tilde, params, stats, std::iter::repeat(1.0)),
        SummationMode::Resummed => resummed_sum(alpha_tilde, params, stats, false),
    }
}

fn total_number_auto(alpha_tilde: f64, params: &EnsembleParams, stats: Statistics) -> Result<f64> {
    total_number(alpha_tilde, params, stats, SummationMode::auto(alpha_tilde)).map(|s| s.value)
}

/// Stable `-ln(e^w - 1)`, the reduced chemical constant implied by
/// `e^{-at} = e^w - 1`.
pub(crate) fn neg_ln_expm1(w: f64) -> f64 {
    if w > 30.0 {
        // ln(e^w - 1) = w + ln(1 - e^{-w})
        -(w + (-(-w).exp()).ln_1p())
    } else {
        -w.exp_m1().ln()
    }
}

/// Solve the particle-number constraint for the reduced chemical constant.
///
/// The map `at -> sum_k N_k` is strictly decreasing, so a sign-changing
/// bracket refined by bisection is enough. Bosons are solved through
/// `z = e^{-at}` on `(0, 1)`; fermions directly in `at`, starting from the
/// high- and low-temperature closed forms and widening until the sign flips.
pub fn solve_fugacity(params: &EnsembleParams, stats: Statistics) -> Result<FugacityResult> {
    let n = params.n_f64();
    match stats {
        Statistics::Bose => {
            // f(z) = total(-ln z) - N is increasing in z on (0, 1).
            let f = |z: f64| {
                total_number_auto(-z.ln(), params, stats)
                    .map(|total| total - n)
                    .unwrap_or(f64::INFINITY)
            };
            let lo = 1e-12;
            let hi = 1.0 - 1e-16;
            if !(f(lo) < 0.0) {
                return Err(Error::Convergence(
                    "bosonic fugacity bracket failed at its lower edge".into(),
                ));
            }
            let (z, (z_lo, z_hi), iterations) = bisect_root(f, lo, hi, f64::MIN_POSITIVE, 200usize);
            let alpha_tilde = -z.ln();
            finish_solve(
                alpha_tilde,
                (-z_hi.ln(), -z_lo.ln()),
                iterations,
                params,
                stats,
            )
        }
        Statistics::Fermi => {
            // Regime guesses: high-T e^{-at} = e^{Nb} - 1, low-T at = -b(N - 1/2).
            let guess_high = neg_ln_expm1(n * params.b);
            let guess_low = -params.b * (n - 0.5);
            let mut lo = guess_high.min(guess_low) - 1.0;
            let mut hi = guess_high.max(guess_low) + 1.0;
            let f = |at: f64| {
                total_number_auto(at, params, stats)
                    .map(|total| total - n)
                    .unwrap_or(f64::NAN)
            };
            // f is decreasing: need f(lo) > 0 > f(hi).
            let mut width = hi - lo;
            let mut expansions = 0;
            while !(f(lo) > 0.0) {
                lo -= width;
                width *= 2.0;
                expansions += 1;
                if expansions > 60 {
                    return Err(Error::Convergence(
                        "fermionic fugacity bracket expansion failed (low side)".into(),
                    ));
                }
            }
            width = hi - lo;
            while !(f(hi) < 0.0) {
                hi += width;
                width *= 2.0;
                expansions += 1;
                if expansions > 60 {
                    return Err(Error::Convergence(
                        "fermionic fugacity bracket expansion failed (high side)".into(),
                    ));
                }
            }
            // bisect_root expects f(lo), f(hi) of opposite sign; sign of f at lo is +.
            let (at, bracket, iterations) = bisect_root(|x| -f(x), lo, hi, 0.0, 200usize);
            finish_solve(at, bracket, iterations, params, stats)
        }
    }
}

fn finish_solve(
    alpha_tilde: f64,
    bracket: (f64, f64),
    iterations: usize,
    params: &EnsembleParams,
    stats: Statistics,
) -> Result<FugacityResult> {
    let n = params.n_f64();
    let total = total_number_auto(alpha_tilde, params, stats)?;
    let residual = ((total - n) / n).abs();
    if residual > NUMBER_TOLERANCE {
        return Err(Error::Convergence(format!(
            "number constraint residual {residual:.3e} exceeds {NUMBER_TOLERANCE:.0e} \
             (N = {}, b = {}, alpha_tilde = {alpha_tilde})",
            params.n, params.b
        )));
    }
    Ok(FugacityResult {
        alpha_tilde,
        residual,
        iterations: iterations as u32,
        bracket,
    })
}

/// Net force `sum_k N_k delta_f_k` at the given reduced chemical constant.
pub fn net_force(
    alpha_tilde: f64,
    params: &EnsembleParams,
    stats: Statistics,
    mode: SummationMode,
) -> Result<ForceEstimate> {
    let sum = match mode {
        SummationMode::Direct => direct_sum(
            alpha_tilde,
            params,
            stats,
            crate::spectrum::delta_f_levels(),
        )?,
        SummationMode::Resummed => resummed_sum(alpha_tilde, params, stats, true)?,
    };
    let method = match mode {
        SummationMode::Direct => Method::ExactDirect,
        SummationMode::Resummed => Method::ExactResummed,
    };
    Ok(ForceEstimate {
        value: sum.value,
        method,
        tail_bound: Some(sum.tail_bound),
        warning: None,
    })
}

/// Solve the number constraint and evaluate the exact net force, picking the
/// summation path automatically.
pub fn exact_net_force(
    params: &EnsembleParams,
    stats: Statistics,
) -> Result<(FugacityResult, ForceEstimate)> {
    let fugacity = solve_fugacity(params, stats)?;
    let force = net_force(
        fugacity.alpha_tilde,
        params,
        stats,
        SummationMode::auto(fugacity.alpha_tilde),
    )?;
    Ok((fugacity, force))
}

/// Upper bounds on the net force: `(N, (N + N_0)/2)`.
pub fn force_bounds(
    alpha_tilde: f64,
    params: &EnsembleParams,
    stats: Statistics,
) -> Result<(f64, f64)> {
    let n0 = occupation(0, alpha_tilde, params, stats)?;
    let n = params.n_f64();
    Ok((n, 0.5 * (n + n0)))
}

/// Average-energy difference between the two sides of the wall, `N/2` in
/// units of the energy scale. Independent of temperature and statistics.
pub fn average_energy_difference(params: &EnsembleParams) -> f64 {
    0.5 * params.n_f64()
}

/// Zero-temperature bosonic net force: the fully condensed value `N`.
pub fn boson_zero_t_force(n: u32) -> f64 {
    n as f64
}
