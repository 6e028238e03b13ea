//! Closed-form regime approximations of the fugacity and the net force, their
//! Padé regularizations, and the interpolation machinery that stitches the
//! regimes into one curve.
//!
//! Regime boundaries are advisory: every formula evaluates wherever it is
//! mathematically defined and carries a [`RegimeWarning`] instead of failing,
//! with one exception — the bosonic Padé form has a genuine pole at
//! `t/N = (sqrt(2)-1)/2` and refuses evaluation at or below it.

use crate::error::{Error, RegimeWarning, Result};
use crate::numeric::{bisect_root, golden_min};
use crate::spectrum::fermion_zero_t_force;
use crate::statmech::{
    exact_net_force, neg_ln_expm1, EnsembleParams, ForceEstimate, Method, Statistics,
};

const PI: f64 = std::f64::consts::PI;

/// Coefficients of the high-temperature `(N/t)` expansion of the net force.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HighTSeries {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
}

impl Default for HighTSeries {
    fn default() -> Self {
        let sqrt2 = 2.0_f64.sqrt();
        let sqrt3 = 3.0_f64.sqrt();
        Self {
            c1: (sqrt2 - 1.0) / 2.0,
            c2: (1.0 - 3.0 * sqrt2 + 2.0 * sqrt3) / 6.0,
            c3: (11.0 + 7.0 * sqrt2 - 12.0 * sqrt3) / 24.0,
        }
    }
}

/// A closed-form fugacity value with its regime caveat.
#[derive(Debug, Clone)]
pub struct AlphaEstimate {
    /// The fugacity `e^{-alpha_tilde}`.
    pub exp_neg_alpha: f64,
    pub warning: Option<RegimeWarning>,
}

fn high_t_regime_warning(params: &EnsembleParams) -> Option<RegimeWarning> {
    let t_over_n = params.t() / params.n_f64();
    (t_over_n < 1.0).then(|| {
        RegimeWarning::new(format!(
            "high-temperature form evaluated at t/N = {t_over_n:.3} < 1"
        ))
    })
}

/// High-temperature closed form of the fugacity,
/// `e^{-at} = eta (1 - e^{-eta N/t})`.
///
/// With `refined` set, the logarithm replacement in the number sum is done to
/// one order better, which multiplies the result by `e^{-b/2}`.
pub fn high_t_alpha(params: &EnsembleParams, stats: Statistics, refined: bool) -> AlphaEstimate {
    let eta = stats.eta();
    let w = eta * params.n_f64() * params.b();
    // eta (1 - e^{-w}) for both signs of eta; expm1 keeps small-w precision.
    let mut value = -eta * (-w).exp_m1();
    if refined {
        value *= (-params.b() / 2.0).exp();
    }
    AlphaEstimate {
        exp_neg_alpha: value,
        warning: high_t_regime_warning(params),
    }
}

/// Truncated high-temperature force series
/// `sqrt(N) (N/t)^{1/2} [1 + eta c1 (N/t) + c2 (N/t)^2 + eta c3 (N/t)^3]`,
/// with 1 to 4 bracket terms.
pub fn high_t_force(
    params: &EnsembleParams,
    stats: Statistics,
    terms: u8,
) -> Result<ForceEstimate> {
    if !(1..=4).contains(&terms) {
        return Err(Error::Domain(format!(
            "high-temperature series supports 1..=4 bracket terms, got {terms}"
        )));
    }
    let coeffs = HighTSeries::default();
    let eta = stats.eta();
    let n = params.n_f64();
    let u = n * params.b(); // N/t
    let mut bracket = 1.0;
    if terms >= 2 {
        bracket += eta * coeffs.c1 * u;
    }
    if terms >= 3 {
        bracket += coeffs.c2 * u * u;
    }
    if terms >= 4 {
        bracket += eta * coeffs.c3 * u * u * u;
    }
    Ok(ForceEstimate::new(
        n.sqrt() * u.sqrt() * bracket,
        Method::HighTSeries { terms },
    ))
}

/// Padé form of the high-temperature force,
/// `sqrt(N) (t/N)^{1/2} / (t/N - eta (sqrt(2)-1)/2)`.
///
/// For bosons the denominator vanishes at `t/N = (sqrt(2)-1)/2`; evaluation at
/// or below the pole is refused.
pub fn high_t_force_pade(params: &EnsembleParams, stats: Statistics) -> Result<ForceEstimate> {
    let c1 = HighTSeries::default().c1;
    let n = params.n_f64();
    let x = params.t() / n; // t/N
    if stats == Statistics::Bose && x <= c1 {
        return Err(Error::Pole { t_over_n: x });
    }
    Ok(ForceEstimate::new(
        n.sqrt() * x.sqrt() / (x - stats.eta() * c1),
        Method::HighTPade,
    ))
}

/// Low-temperature fermionic force: the zero-temperature closed form minus an
/// expansion in `e^{-b/2}` with 1 to 5 exponential terms.
pub fn low_t_fermion_force(params: &EnsembleParams, exp_terms: u8) -> Result<ForceEstimate> {
    if !(1..=5).contains(&exp_terms) {
        return Err(Error::Domain(format!(
            "low-temperature fermion expansion supports 1..=5 terms, got {exp_terms}"
        )));
    }
    const COEFFS: [f64; 5] = [1.0, -1.0, 4.0, -1.0, 6.0];
    let n = params.n_f64();
    let b = params.b();
    let mut correction = 0.0;
    for (m, coeff) in COEFFS.iter().take(exp_terms as usize).enumerate() {
        correction += coeff * (-b * (m + 1) as f64 / 2.0).exp();
    }
    let value = fermion_zero_t_force(params.n()) - correction / (2.0 * PI.sqrt() * n.powf(1.5));
    Ok(ForceEstimate::new(
        value,
        Method::LowTFermion { terms: exp_terms },
    ))
}

/// Low-temperature bosonic force
/// `N - (1/2) e^{-b} - (9/8) e^{-2b} - (19/16) e^{-3b}`, truncated at
/// 1 to 3 exponential terms.
pub fn low_t_boson_force(params: &EnsembleParams, exp_terms: u8) -> Result<ForceEstimate> {
    if !(1..=3).contains(&exp_terms) {
        return Err(Error::Domain(format!(
            "low-temperature boson expansion supports 1..=3 terms, got {exp_terms}"
        )));
    }
    const COEFFS: [f64; 3] = [0.5, 9.0 / 8.0, 19.0 / 16.0];
    let b = params.b();
    let mut value = params.n_f64();
    for (m, coeff) in COEFFS.iter().take(exp_terms as usize).enumerate() {
        value -= coeff * (-b * (m + 1) as f64).exp();
    }
    Ok(ForceEstimate::new(
        value,
        Method::LowTBoson { terms: exp_terms },
    ))
}

/// Medium-temperature fermionic fugacity,
/// `e^{-at} = exp((N - (1 - e^{-N/t})/2)/t) - 1`.
///
/// The trapezoid correction makes this accurate over the whole temperature
/// range. The returned fugacity overflows to infinity once the exponent
/// exceeds f64 range (very low t); use [`med_t_fermion_alpha_tilde`] there.
pub fn med_t_fermion_alpha(params: &EnsembleParams) -> f64 {
    med_t_fermion_exponent(params).exp_m1()
}

/// Stable log form of [`med_t_fermion_alpha`]: returns `alpha_tilde` itself.
pub fn med_t_fermion_alpha_tilde(params: &EnsembleParams) -> f64 {
    neg_ln_expm1(med_t_fermion_exponent(params))
}

fn med_t_fermion_exponent(params: &EnsembleParams) -> f64 {
    let n = params.n_f64();
    let b = params.b();
    (n - (1.0 - (-n * b).exp()) / 2.0) * b
}

/// Medium-temperature fermionic force in Padé form,
/// `sqrt(N) (2/sqrt(pi)) / (1 + (pi^2/24)(t/N)^2 + (23 pi^4/1152)(t/N)^4)`.
///
/// Exact at `t = 0` in the large-N sense (returns `2 sqrt(N/pi)`).
pub fn med_t_fermion_force(params: &EnsembleParams) -> ForceEstimate {
    let n = params.n_f64();
    let x = params.t() / n;
    let (pi2, x2) = (PI * PI, x * x);
    let denom = 1.0 + pi2 / 24.0 * x2 + 23.0 * (pi2 * pi2) / 1152.0 * (x2 * x2);
    ForceEstimate::new(n.sqrt() * 2.0 / PI.sqrt() / denom, Method::MedTFermion)
}

/// The intermediate asymptotic series of the medium-temperature fermion force
/// in powers of `1/alpha_tilde^2`, for `alpha_tilde < 0`, and its Padé
/// regularization (`pade = true`), which extends validity toward
/// `alpha_tilde -> 0`.
pub fn med_t_fermion_force_from_alpha(alpha_tilde: f64, b: f64, pade: bool) -> Result<f64> {
    if alpha_tilde >= 0.0 {
        return Err(Error::Domain(format!(
            "the asymptotic series requires alpha_tilde < 0, got {alpha_tilde}"
        )));
    }
    if !(b > 0.0) {
        return Err(Error::Domain(format!("b must be positive, got {b}")));
    }
    let a2 = alpha_tilde * alpha_tilde;
    let pi2 = PI * PI;
    let prefactor = 2.0 / (PI * b).sqrt() * (-alpha_tilde).sqrt();
    let value = if pade {
        prefactor / (1.0 + pi2 / 24.0 / a2 + 23.0 * (pi2 * pi2) / 1152.0 / (a2 * a2))
    } else {
        prefactor * (1.0 - pi2 / 24.0 / a2 - 7.0 * (pi2 * pi2) / 384.0 / (a2 * a2))
    };
    Ok(value)
}

/// Medium-temperature bosonic condensate population,
/// `N0 = N - (2/5) t - t ln((4/5) t)`.
///
/// Negative output means the condensate is depleted and the formula is out of
/// its regime; the value is returned with a warning.
pub fn med_t_boson_n0(params: &EnsembleParams) -> (f64, Option<RegimeWarning>) {
    let t = params.t();
    let value = params.n_f64() - 0.4 * t - t * (0.8 * t).ln();
    let warning = (value <= 0.0).then(|| {
        RegimeWarning::new(format!(
            "condensate population {value:.3} <= 0 at t = {t}: formula out of regime"
        ))
    });
    (value, warning)
}

/// Medium-temperature bosonic force `N + t - t ln t + sqrt(4t/5)`.
///
/// Exact at `t -> 0` (tends to N); values above N are flagged as out of
/// regime rather than rejected.
pub fn med_t_boson_force(params: &EnsembleParams) -> ForceEstimate {
    let n = params.n_f64();
    let t = params.t();
    let value = n + t - t * t.ln() + (4.0 * t / 5.0).sqrt();
    let mut estimate = ForceEstimate::new(value, Method::MedTBoson);
    if value > n {
        estimate.warning = Some(RegimeWarning::new(format!(
            "medium-temperature boson force {value:.4} exceeds the bound N = {n}: \
             t = {t} is below the formula's regime"
        )));
    }
    estimate
}

/// Variant of [`med_t_boson_force`] before the final cosmetic simplifications:
/// the coefficient of `t` keeps its derived value 1.0324 and the constant
/// `-sqrt(2)` is retained. Kept for error studies.
pub fn med_t_boson_force_unsimplified(params: &EnsembleParams) -> ForceEstimate {
    let n = params.n_f64();
    let t = params.t();
    let coeff = -0.4 - 0.8_f64.ln() + 0.2 + 4.0 / (5.0 * PI).sqrt();
    let value = n + coeff * t - t * t.ln() + (4.0 * t / 5.0).sqrt() - 2.0_f64.sqrt();
    ForceEstimate::new(value, Method::MedTBoson)
}

/// Which variable the interpolation runs in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InterpVariable {
    /// `x = t/N`; the fermionic blend is N-independent in this variable.
    TOverN,
    /// `x = t`; the bosonic blend is fitted per N.
    T,
}

/// Diagnostics of the common-tangent construction used by the bosonic fit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TangentDiagnostics {
    /// Tangency point on the low-temperature side (abscissa, force).
    pub touch_low: (f64, f64),
    /// Tangency point on the high-temperature series (abscissa, force).
    pub touch_high: (f64, f64),
    /// Slope of the common tangent line.
    pub slope: f64,
}

/// A fitted crossover: abscissa `x_star`, sharpness `p`, and the variable the
/// blend runs in.
#[derive(Debug, Clone, PartialEq)]
pub struct InterpolationSpec {
    pub x_star: f64,
    pub p: f64,
    pub variable: InterpVariable,
    /// Fractional sharpness before rounding, when the fit derives one.
    pub raw_p: Option<f64>,
    /// Tangent diagnostics, when the fit computes them (bosonic branch).
    pub tangent: Option<TangentDiagnostics>,
}

/// Weighted blend of two curves:
/// `(g1(x) + (x/x*)^p g2(x)) / (1 + (x/x*)^p)`.
///
/// At `x = x_star` the weights are exactly 1/2 each for every `p`.
pub fn interpolate(
    g1: impl Fn(f64) -> f64,
    g2: impl Fn(f64) -> f64,
    spec: &InterpolationSpec,
    x: f64,
) -> f64 {
    let w = (x / spec.x_star).powf(spec.p);
    if w.is_infinite() {
        return g2(x);
    }
    (g1(x) + w * g2(x)) / (1.0 + w)
}

/// The normalized fermionic crossover curves in `x = t/N`: medium-temperature
/// Padé form and high-temperature Padé form, both divided by `sqrt(N)`.
fn fermion_curves() -> (impl Fn(f64) -> f64, impl Fn(f64) -> f64) {
    let c1 = HighTSeries::default().c1;
    let g1 = move |x: f64| {
        let (pi2, x2) = (PI * PI, x * x);
        2.0 / PI.sqrt() / (1.0 + pi2 / 24.0 * x2 + 23.0 * (pi2 * pi2) / 1152.0 * (x2 * x2))
    };
    let g2 = move |x: f64| x.sqrt() / (x + c1);
    (g1, g2)
}

/// The bosonic crossover curves in `t`: the medium-temperature closed form and
/// the three-term high-temperature series.
fn boson_curves(n: u32) -> (impl Fn(f64) -> f64, impl Fn(f64) -> f64) {
    let nf = n as f64;
    let coeffs = HighTSeries::default();
    let g1 = move |t: f64| nf + t - t * t.ln() + (4.0 * t / 5.0).sqrt();
    let g2 = move |t: f64| {
        let u = nf / t;
        nf.sqrt() * u.sqrt() * (1.0 + coeffs.c1 * u + coeffs.c2 * u * u)
    };
    (g1, g2)
}

fn boson_high_series_slope(n: f64, t: f64) -> f64 {
    // The series is N t^{-1/2} + c1 N^2 t^{-3/2} + c2 N^3 t^{-5/2}.
    let coeffs = HighTSeries::default();
    let a = n;
    let b = coeffs.c1 * n * n;
    let c = coeffs.c2 * n * n * n;
    -0.5 * a * t.powf(-1.5) - 1.5 * b * t.powf(-2.5) - 2.5 * c * t.powf(-3.5)
}

/// Fit the interpolation parameters for the given statistics and particle
/// count.
///
/// Fermions: both curves are N-independent functions of `x = t/N`; `x_star`
/// is their crossing (bisection on `[1e-3, 1e3]`) and `p = 5`, the smallest
/// exponent preserving the accuracy order of the medium-temperature form.
///
/// Bosons: `x_star` is where the medium-temperature closed form and the
/// three-term high-temperature series are closest in `t` on `[1, 1e3]` —
/// their first crossing when they intersect, else the golden-section minimum
/// of the gap. The sharpness comes from requiring the blend to leave each
/// curve practically intact (within 0.5%) a factor of two away from the
/// crossover on its own side; `p` is the smallest integer satisfying both
/// sides and `raw_p` the fractional threshold. Tangent diagnostics report the
/// common tangent between the exact force curve and the high-temperature
/// series.
pub fn fit_interpolation(stats: Statistics, n: u32) -> Result<InterpolationSpec> {
    if n < 2 {
        return Err(Error::Domain(format!(
            "interpolation fit requires N >= 2, got {n}"
        )));
    }
    match stats {
        Statistics::Fermi => {
            let (g1, g2) = fermion_curves();
            let diff = |x: f64| g1(x) - g2(x);
            let (lo, hi) = (1e-3, 1e3);
            if !(diff(lo) > 0.0 && diff(hi) < 0.0) {
                return Err(Error::Fit(
                    "fermion crossover curves do not bracket a crossing in [1e-3, 1e3]".into(),
                ));
            }
            let (x_star, _, _) = bisect_root(diff, lo, hi, 1e-14, 200);
            Ok(InterpolationSpec {
                x_star,
                p: 5.0,
                variable: InterpVariable::TOverN,
                raw_p: None,
                tangent: None,
            })
        }
        Statistics::Bose => fit_boson_interpolation(n),
    }
}

fn fit_boson_interpolation(n: u32) -> Result<InterpolationSpec> {
    let (g1, g2) = boson_curves(n);
    let diff = |t: f64| g1(t) - g2(t);
    let (window_lo, window_hi) = (1.0, 1e3);

    // Scan a log grid for a sign change; the curves may or may not cross.
    let scan_points = 600;
    let mut crossing_bracket = None;
    let mut previous = (window_lo, diff(window_lo));
    for i in 1..=scan_points {
        let t = window_lo * (window_hi / window_lo).powf(i as f64 / scan_points as f64);
        let d = diff(t);
        if d == 0.0 || (d > 0.0) != (previous.1 > 0.0) {
            crossing_bracket = Some((previous.0, t));
            break;
        }
        previous = (t, d);
    }

    let x_star = match crossing_bracket {
        Some((lo, hi)) => bisect_root(diff, lo, hi, 1e-12, 200).0,
        None => {
            let x = golden_min(|t| diff(t).abs(), window_lo, window_hi, 1e-9);
            if x <= window_lo * 1.01 || x >= window_hi * 0.99 {
                return Err(Error::Fit(format!(
                    "no interior gap minimum for the boson curves in [{window_lo}, {window_hi}]"
                )));
            }
            x
        }
    };

    let tangent = boson_common_tangent(n).ok();

    // Sharpness from the slope-matching condition at the crossover when it
    // admits a solution; the curves for moderate N overlap near x_star
    // (gap ~ 0 or of the wrong sign), in which case fall back to the
    // keep-curves-intact criterion.
    let mut raw_p = None;
    if let Some(diag) = &tangent {
        let gap = g2(x_star) - g1(x_star);
        let slope_condition =
            (diag.slope - boson_high_series_slope(n as f64, x_star)) * 4.0 * x_star / gap;
        if gap.abs() > 1e-3 * g1(x_star).abs() && (0.0..=64.0).contains(&slope_condition) {
            raw_p = Some(slope_condition);
        }
    }
    let raw_p = match raw_p {
        Some(v) => v,
        None => {
            // Smallest p such that the blend contaminates g1 at x*/2 and g2 at
            // 2 x* by less than 0.5% of the local curve value.
            let tol = 5e-3;
            let t_low = x_star / 2.0;
            let t_high = 2.0 * x_star;
            // weight w = (t/x*)^p = 2^{∓p}; contamination w |g2-g1|/(1+w).
            let need_low =
                ((g2(t_low) - g1(t_low)).abs() / (tol * g1(t_low).abs())).ln() / 2.0_f64.ln();
            let need_high =
                ((g1(t_high) - g2(t_high)).abs() / (tol * g2(t_high).abs())).ln() / 2.0_f64.ln();
            need_low.max(need_high).max(1.0)
        }
    };
    let p = raw_p.ceil().max(1.0);

    Ok(InterpolationSpec {
        x_star,
        p,
        variable: InterpVariable::T,
        raw_p: Some(raw_p),
        tangent,
    })
}

/// Common tangent between the exact bosonic force curve and the three-term
/// high-temperature series, solved on the steepening branch of the exact
/// curve (below its inflection).
fn boson_common_tangent(n: u32) -> Result<TangentDiagnostics> {
    let nf = n as f64;
    let (_, g2) = boson_curves(n);

    let exact = |t: f64| -> Result<f64> {
        let params = EnsembleParams::from_temperature(n, t)?;
        Ok(exact_net_force(&params, Statistics::Bose)?.1.value)
    };
    let exact_slope = |t: f64| -> Result<f64> {
        let h = 1e-5 * t;
        Ok((exact(t + h)? - exact(t - h)?) / (2.0 * h))
    };

    // Steepest point of the exact curve bounds the tangency branch.
    let t_steep = {
        let mut best = (0.0, f64::INFINITY);
        let lo = 0.05 * nf;
        let hi = 0.5 * nf;
        let steps = 40;
        for i in 0..=steps {
            let t = lo * (hi / lo).powf(i as f64 / steps as f64);
            let s = exact_slope(t)?;
            if s < best.1 {
                best = (t, s);
            }
        }
        best.0
    };

    // For a trial slope s, the tangency abscissa on the series side.
    let series_touch = |s: f64| -> f64 {
        let (mut lo, mut hi) = (1.0, 1e5);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if boson_high_series_slope(nf, mid) < s {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    };

    // Tangent-line mismatch as a function of the exact-side tangency point.
    let mismatch = |t_a: f64| -> Result<f64> {
        let s = exact_slope(t_a)?;
        let t_b = series_touch(s);
        Ok(exact(t_a)? + s * (t_b - t_a) - g2(t_b))
    };

    let lo0 = (0.02 * nf).max(0.5);
    let mut bracket = None;
    let steps = 30;
    let mut prev = (lo0, mismatch(lo0)?);
    for i in 1..=steps {
        let t = lo0 * (t_steep / lo0).powf(i as f64 / steps as f64);
        let m = mismatch(t)?;
        if (m > 0.0) != (prev.1 > 0.0) {
            bracket = Some((prev.0, t));
            break;
        }
        prev = (t, m);
    }
    let (mut lo, mut hi) =
        bracket.ok_or_else(|| Error::Fit("no common tangent bracket found".into()))?;
    let m_lo = mismatch(lo)?;
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if (mismatch(mid)? > 0.0) == (m_lo > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let t_a = 0.5 * (lo + hi);
    let slope = exact_slope(t_a)?;
    let t_b = series_touch(slope);
    Ok(TangentDiagnostics {
        touch_low: (t_a, exact(t_a)?),
        touch_high: (t_b, g2(t_b)),
        slope,
    })
}

/// Evaluate the blended force curve for the given statistics at the
/// ensemble's temperature.
pub fn interpolated_force(
    params: &EnsembleParams,
    stats: Statistics,
    spec: &InterpolationSpec,
) -> Result<ForceEstimate> {
    let n = params.n_f64();
    let value = match (stats, spec.variable) {
        (Statistics::Fermi, InterpVariable::TOverN) => {
            let (g1, g2) = fermion_curves();
            let x = params.t() / n;
            n.sqrt() * interpolate(g1, g2, spec, x)
        }
        (Statistics::Bose, InterpVariable::T) => {
            let (g1, g2) = boson_curves(params.n());
            interpolate(g1, g2, spec, params.t())
        }
        _ => {
            return Err(Error::Domain(format!(
                "interpolation spec variable {:?} does not match statistics {stats:?}",
                spec.variable
            )))
        }
    };
    Ok(ForceEstimate::new(value, Method::Interpolated))
}
