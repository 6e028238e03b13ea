//! Independent numerical check of the per-level force coefficients: computes
//! eigenvalues of the half-line oscillator with the wall displaced to
//! `x = dx` by ODE shooting, and finite-differences them to recover the
//! per-level forces that `delta_f_level` predicts analytically.
//!
//! Internally everything runs in oscillator units where the stationary
//! equation reads `psi'' = (xi^2 - 2 eps) psi` and the unperturbed spectrum is
//! `eps = 2k + 3/2` (Dirichlet) or `2k + 1/2` (Neumann). Results convert to
//! the doubled energy unit of the rest of the crate (`e = eps/2`) at the
//! boundary.

use crate::error::{Error, Result};
use crate::spectrum::{delta_f_level, BoundaryCondition};

/// Default relative tolerance of the adaptive integrator.
pub const DEFAULT_REL_TOL: f64 = 1e-11;
/// Default absolute tolerance of the adaptive integrator.
pub const DEFAULT_ABS_TOL: f64 = 1e-14;
/// Eigenvalue bisection refines until the bracket shrinks below this times
/// the eigenvalue scale.
const EIGENVALUE_REL_TOL: f64 = 1e-10;
/// Half-width of the eigenvalue scan window around the unperturbed level.
const SCAN_HALF_WIDTH: f64 = 0.9;

/// One displaced-wall eigenvalue computation.
#[derive(Debug, Clone)]
pub struct ShootingProblem {
    pub bc: BoundaryCondition,
    /// Wall displacement in units of the oscillator length; `|dx| <= 0.1`.
    pub wall_offset: f64,
    /// Level index within the boundary-condition tower.
    pub k: usize,
    /// Outer integration endpoint; defaults to `sqrt(2 eps) + 8`.
    pub xi_max: Option<f64>,
    pub rel_tol: f64,
    pub abs_tol: f64,
}

impl ShootingProblem {
    pub fn new(bc: BoundaryCondition, k: usize) -> Self {
        Self {
            bc,
            wall_offset: 0.0,
            k,
            xi_max: None,
            rel_tol: DEFAULT_REL_TOL,
            abs_tol: DEFAULT_ABS_TOL,
        }
    }

    pub fn with_offset(mut self, wall_offset: f64) -> Self {
        self.wall_offset = wall_offset;
        self
    }

    fn validate(&self) -> Result<()> {
        if !(self.wall_offset.abs() <= 0.1) {
            return Err(Error::Domain(format!(
                "wall offset {} outside the perturbative window |dx| <= 0.1",
                self.wall_offset
            )));
        }
        if !(self.rel_tol > 0.0) || !(self.abs_tol > 0.0) {
            return Err(Error::Domain(
                "integration tolerances must be positive".into(),
            ));
        }
        Ok(())
    }
}

/// One computed eigenvalue, in the doubled energy unit (`e_k = k + sigma` at
/// zero offset).
#[derive(Debug, Clone, Copy)]
pub struct ShootingResult {
    pub eigenvalue: f64,
    /// Boundary mismatch of the converged solution relative to the mismatch
    /// scale at the scan-window edges. Off an eigenvalue this ratio is O(1);
    /// it shrinks with the bracket as bisection converges.
    pub residual: f64,
    /// Width of the final eigenvalue bracket (same unit as `eigenvalue`).
    pub bracket_width: f64,
}

struct Integration {
    final_psi: f64,
    nodes: usize,
}

/// Cash-Karp 4(5) pair for `psi'' = (xi^2 - 2 eps) psi`, integrating outward
/// from the wall and counting nodes inside the classically allowed region.
fn integrate(
    eps: f64,
    xi0: f64,
    xi_max: f64,
    init: (f64, f64),
    rel_tol: f64,
    abs_tol: f64,
) -> Result<Integration> {
    const A: [f64; 5] = [0.2, 0.3, 0.6, 1.0, 0.875];
    const B: [[f64; 5]; 5] = [
        [0.2, 0.0, 0.0, 0.0, 0.0],
        [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0],
        [0.3, -0.9, 1.2, 0.0, 0.0],
        [-11.0 / 54.0, 2.5, -70.0 / 27.0, 35.0 / 27.0, 0.0],
        [
            1631.0 / 55296.0,
            175.0 / 512.0,
            575.0 / 13824.0,
            44275.0 / 110592.0,
            253.0 / 4096.0,
        ],
    ];
    const C5: [f64; 6] = [
        37.0 / 378.0,
        0.0,
        250.0 / 621.0,
        125.0 / 594.0,
        0.0,
        512.0 / 1771.0,
    ];
    const C4: [f64; 6] = [
        2825.0 / 27648.0,
        0.0,
        18575.0 / 48384.0,
        13525.0 / 55296.0,
        277.0 / 14336.0,
        0.25,
    ];

    let rhs = |xi: f64, y: [f64; 2]| [y[1], (xi * xi - 2.0 * eps) * y[0]];

    let node_limit = (2.0 * eps).max(0.0).sqrt();
    let mut xi = xi0;
    let mut y = [init.0, init.1];
    let mut h = 1e-4;
    let mut nodes = 0usize;
    let mut last_sign = if y[0] == 0.0 { 0.0 } else { y[0].signum() };
    let mut steps = 0usize;

    while xi < xi_max {
        if steps > 2_000_000 {
            return Err(Error::Stiffness(format!(
                "step budget exhausted at xi = {xi} (eps = {eps})"
            )));
        }
        if xi + h > xi_max {
            h = xi_max - xi;
        }
        let mut k = [[0.0_f64; 2]; 6];
        k[0] = rhs(xi, y);
        for stage in 1..6 {
            let mut y_stage = y;
            for (j, k_j) in k.iter().enumerate().take(stage) {
                y_stage[0] += h * B[stage - 1][j] * k_j[0];
                y_stage[1] += h * B[stage - 1][j] * k_j[1];
            }
            k[stage] = rhs(xi + A[stage - 1] * h, y_stage);
        }
        let mut y5 = y;
        let mut y4 = y;
        for j in 0..6 {
            y5[0] += h * C5[j] * k[j][0];
            y5[1] += h * C5[j] * k[j][1];
            y4[0] += h * C4[j] * k[j][0];
            y4[1] += h * C4[j] * k[j][1];
        }
        let mut err: f64 = 0.0;
        for i in 0..2 {
            let scale = abs_tol + rel_tol * y[i].abs().max(y5[i].abs());
            err = err.max(((y5[i] - y4[i]) / scale).abs());
        }
        if err <= 1.0 {
            xi += h;
            y = y5;
            if xi <= node_limit {
                let sign = if y[0] == 0.0 {
                    last_sign
                } else {
                    y[0].signum()
                };
                if last_sign != 0.0 && sign != 0.0 && sign != last_sign {
                    nodes += 1;
                }
                last_sign = sign;
            }
            steps += 1;
        }
        let factor = if err > 0.0 {
            (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
        } else {
            5.0
        };
        h *= factor;
        if h < 1e-13 {
            return Err(Error::Stiffness(format!(
                "step size underflow at xi = {xi} (eps = {eps})"
            )));
        }
    }
    Ok(Integration {
        final_psi: y[0],
        nodes,
    })
}

/// Compute one eigenvalue of the displaced-wall problem by outward shooting
/// with sign-change bisection.
///
/// The shooting function `S(eps) = psi(xi_max; eps)` changes sign across each
/// eigenvalue of the selected tower; the scan window around the unperturbed
/// level contains exactly one. Node counting confirms the level index.
pub fn shoot_eigenvalue(problem: &ShootingProblem) -> Result<ShootingResult> {
    problem.validate()?;
    let eps0 = 2.0 * (problem.k as f64 + problem.bc.sigma());
    let (eps_lo, eps_hi) = (eps0 - SCAN_HALF_WIDTH, eps0 + SCAN_HALF_WIDTH);
    let required_span = (2.0 * eps_hi).sqrt() + 8.0;
    let xi_max = match problem.xi_max {
        Some(user) => {
            if user < required_span {
                return Err(Error::Domain(format!(
                    "xi_max = {user} is below the required span {required_span:.2}"
                )));
            }
            user
        }
        None => required_span,
    };
    let init = match problem.bc {
        BoundaryCondition::Dirichlet => (0.0, 1.0),
        BoundaryCondition::Neumann => (1.0, 0.0),
    };
    let shoot = |eps: f64| -> Result<Integration> {
        integrate(
            eps,
            problem.wall_offset,
            xi_max,
            init,
            problem.rel_tol,
            problem.abs_tol,
        )
    };

    let s_lo = shoot(eps_lo)?.final_psi;
    let s_hi = shoot(eps_hi)?.final_psi;
    if s_lo == 0.0 || s_hi == 0.0 || (s_lo > 0.0) == (s_hi > 0.0) {
        return Err(Error::Bracket(format!(
            "no sign change of the shooting function in [{eps_lo}, {eps_hi}] \
             ({} k = {}, dx = {})",
            problem.bc, problem.k, problem.wall_offset
        )));
    }
    let mismatch_scale = s_lo.abs().max(s_hi.abs());

    let (mut lo, mut hi) = (eps_lo, eps_hi);
    while hi - lo > EIGENVALUE_REL_TOL * hi.abs() {
        let mid = 0.5 * (lo + hi);
        let s_mid = shoot(mid)?.final_psi;
        if s_mid == 0.0 {
            lo = mid;
            hi = mid;
            break;
        }
        if (s_mid > 0.0) == (s_lo > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let eps = 0.5 * (lo + hi);
    let converged = shoot(eps)?;
    if converged.nodes != problem.k {
        return Err(Error::Bracket(format!(
            "converged eigenfunction has {} interior nodes, expected {} \
             ({} dx = {})",
            converged.nodes, problem.k, problem.bc, problem.wall_offset
        )));
    }
    Ok(ShootingResult {
        eigenvalue: eps / 2.0,
        residual: converged.final_psi.abs() / mismatch_scale,
        bracket_width: (hi - lo) / 2.0,
    })
}

/// Central finite difference of the level energy with respect to the wall
/// position, `[e(+d) - e(-d)]/(2d)`, in energy-scale-per-length units.
pub fn per_level_slope(bc: BoundaryCondition, k: usize, delta: f64) -> Result<f64> {
    if !(1e-5..=1e-2).contains(&delta) {
        return Err(Error::Domain(format!(
            "finite-difference step {delta} outside [1e-5, 1e-2]"
        )));
    }
    let plus = shoot_eigenvalue(&ShootingProblem::new(bc, k).with_offset(delta))?;
    let minus = shoot_eigenvalue(&ShootingProblem::new(bc, k).with_offset(-delta))?;
    Ok((plus.eigenvalue - minus.eigenvalue) / (2.0 * delta))
}

/// One row of a force-coefficient verification.
#[derive(Debug, Clone, Copy)]
pub struct VerifyRow {
    pub k: usize,
    /// `2 sqrt(pi) (slope_dir - slope_neu)`, the measured coefficient.
    pub measured: f64,
    /// Analytic `delta_f_level(k)`.
    pub expected: f64,
    pub deviation: f64,
    pub pass: bool,
}

/// Verification report over a range of levels.
#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub rows: Vec<VerifyRow>,
    pub delta: f64,
    pub tol: f64,
}

impl VerifyReport {
    /// True when every level met the tolerance.
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|row| row.pass)
    }

    /// Levels that failed, for error reporting.
    pub fn failing_levels(&self) -> Vec<usize> {
        self.rows
            .iter()
            .filter(|row| !row.pass)
            .map(|row| row.k)
            .collect()
    }
}

/// Verify the analytic per-level force coefficients against the shooting
/// pipeline for `k = 0..=k_max`. Levels evaluate in parallel.
pub fn verify_delta_f(k_max: usize, delta: f64, tol: f64) -> Result<VerifyReport> {
    if k_max > 20 {
        return Err(Error::Domain(format!(
            "verification is supported for k <= 20, got k_max = {k_max}"
        )));
    }
    if !(tol > 0.0) {
        return Err(Error::Domain(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let ks: Vec<usize> = (0..=k_max).collect();
    let threads = crate::thread_count().min(ks.len()).max(1);
    let mut results: Vec<Option<Result<VerifyRow>>> = vec![None; ks.len()];
    let chunk = ks.len().div_ceil(threads);
    std::thread::scope(|scope| {
        for (worker, slot) in results.chunks_mut(chunk).enumerate() {
            let ks = &ks;
            scope.spawn(move || {
                for (offset, out) in slot.iter_mut().enumerate() {
                    let k = ks[worker * chunk + offset];
                    *out = Some(verify_one_level(k, delta, tol));
                }
            });
        }
    });
    let mut rows = Vec::with_capacity(ks.len());
    for r in results {
        rows.push(r.expect("all levels computed")?);
    }
    Ok(VerifyReport { rows, delta, tol })
}

fn verify_one_level(k: usize, delta: f64, tol: f64) -> Result<VerifyRow> {
    let slope_dir = per_level_slope(BoundaryCondition::Dirichlet, k, delta)?;
    let slope_neu = per_level_slope(BoundaryCondition::Neumann, k, delta)?;
    let measured = 2.0 * std::f64::consts::PI.sqrt() * (slope_dir - slope_neu);
    let expected = delta_f_level(k);
    let deviation = (measured - expected).abs();
    Ok(VerifyRow {
        k,
        measured,
        expected,
        deviation,
        pass: deviation <= tol,
    })
}
