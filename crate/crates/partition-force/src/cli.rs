//! Command-line front end: single-point solves, temperature sweeps,
//! exact-vs-approximation comparison tables, interpolation fitting, and the
//! shooting verification, with CSV or JSON output.
//!
//! Sweep and comparison grids evaluate in parallel; the worker count follows
//! `PARTITION_FORCE_THREADS` (0 or unset picks the available parallelism).
//! Output assembly is order-preserving, so a fixed configuration produces
//! byte-identical files regardless of the thread count.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::approx::{
    self, fit_interpolation, interpolated_force, med_t_fermion_alpha_tilde, InterpolationSpec,
};
use crate::error::{Error, Result};
use crate::spectrum::PhysicalScales;
use crate::statmech::{
    average_energy_difference, exact_net_force, force_bounds, net_force, occupation,
    solve_fugacity, EnsembleParams, Statistics, SummationMode,
};

/// Exit codes: 0 success, 1 verification failure, 2 configuration error,
/// 3 numerical failure.
pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAIL: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StatsArg {
    Bose,
    Fermi,
}

impl From<StatsArg> for Statistics {
    fn from(value: StatsArg) -> Self {
        match value {
            StatsArg::Bose => Statistics::Bose,
            StatsArg::Fermi => Statistics::Fermi,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Csv,
    Json,
}

/// Temperature-grid spacing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GridSpacing {
    Linear,
    Log,
}

/// A temperature grid `min:max:count:{lin,log}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TempGrid {
    pub min: f64,
    pub max: f64,
    pub count: usize,
    pub spacing: GridSpacing,
}

impl TempGrid {
    pub fn new(min: f64, max: f64, count: usize, spacing: GridSpacing) -> Result<Self> {
        if !(min > 0.0) || !(max > min) || count < 2 {
            return Err(Error::Domain(format!(
                "grid requires 0 < min < max and count >= 2, got {min}:{max}:{count}"
            )));
        }
        Ok(Self {
            min,
            max,
            count,
            spacing,
        })
    }

    /// The grid points, deterministically computed from the endpoints.
    pub fn points(&self) -> Vec<f64> {
        let n = self.count;
        (0..n)
            .map(|i| {
                let s = i as f64 / (n - 1) as f64;
                match self.spacing {
                    GridSpacing::Linear => self.min + s * (self.max - self.min),
                    GridSpacing::Log => self.min * (self.max / self.min).powf(s),
                }
            })
            .collect()
    }
}

impl FromStr for TempGrid {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 4 {
            return Err(Error::Domain(format!(
                "grid must be min:max:count:{{lin,log}}, got {s:?}"
            )));
        }
        let min: f64 = parts[0]
            .parse()
            .map_err(|_| Error::Domain(format!("bad grid minimum {:?}", parts[0])))?;
        let max: f64 = parts[1]
            .parse()
            .map_err(|_| Error::Domain(format!("bad grid maximum {:?}", parts[1])))?;
        let count: usize = parts[2]
            .parse()
            .map_err(|_| Error::Domain(format!("bad grid count {:?}", parts[2])))?;
        let spacing = match parts[3] {
            "lin" => GridSpacing::Linear,
            "log" => GridSpacing::Log,
            other => {
                return Err(Error::Domain(format!(
                    "grid spacing must be lin or log, got {other:?}"
                )))
            }
        };
        TempGrid::new(min, max, count, spacing)
    }
}

/// User-facing method tags selecting force evaluations for sweeps and
/// comparisons.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum MethodTag {
    Exact,
    HighT(u8),
    Pade,
    LowT(u8),
    MedT,
    Interp,
}

impl std::fmt::Display for MethodTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MethodTag::Exact => write!(f, "exact"),
            MethodTag::HighT(k) => write!(f, "highT-{k}"),
            MethodTag::Pade => write!(f, "pade"),
            MethodTag::LowT(k) => write!(f, "lowT-{k}"),
            MethodTag::MedT => write!(f, "medT"),
            MethodTag::Interp => write!(f, "interp"),
        }
    }
}

impl FromStr for MethodTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parse_terms = |rest: &str, max: u8, what: &str| -> Result<u8> {
            let k: u8 = rest
                .parse()
                .map_err(|_| Error::Domain(format!("bad {what} term count {rest:?}")))?;
            if k == 0 || k > max {
                return Err(Error::Domain(format!(
                    "{what} supports 1..={max} terms, got {k}"
                )));
            }
            Ok(k)
        };
        if s == "exact" {
            Ok(MethodTag::Exact)
        } else if s == "pade" {
            Ok(MethodTag::Pade)
        } else if s == "medT" {
            Ok(MethodTag::MedT)
        } else if s == "interp" {
            Ok(MethodTag::Interp)
        } else if let Some(rest) = s.strip_prefix("highT-") {
            Ok(MethodTag::HighT(parse_terms(rest, 4, "highT")?))
        } else if let Some(rest) = s.strip_prefix("lowT-") {
            Ok(MethodTag::LowT(parse_terms(rest, 5, "lowT")?))
        } else {
            Err(Error::Domain(format!(
                "unknown method tag {s:?} (expected exact, highT-1..4, pade, lowT-1..5, medT, interp)"
            )))
        }
    }
}

/// Sweep configuration: what to evaluate and where to write it.
#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub stats: Statistics,
    pub n: u32,
    pub grid: TempGrid,
    pub methods: Vec<MethodTag>,
    pub out: Option<PathBuf>,
    pub format: FormatArg,
}

impl SweepConfig {
    fn validate(&self) -> Result<()> {
        if self.methods.is_empty() {
            return Err(Error::Domain("method list must be nonempty".into()));
        }
        if self.n == 0 {
            return Err(Error::Domain("particle count must be at least 1".into()));
        }
        Ok(())
    }

    /// Requested methods, deduplicated and sorted by tag string.
    fn sorted_methods(&self) -> Vec<MethodTag> {
        let mut tags: Vec<MethodTag> = self.methods.clone();
        tags.sort_by_key(|t| t.to_string());
        tags.dedup();
        tags
    }
}

/// One evaluated grid point: per-method values in column order, failures as
/// `None`.
#[derive(Debug, Clone)]
pub struct SweepRow {
    pub t: f64,
    pub values: Vec<Option<f64>>,
}

/// An evaluated sweep, ready for serialization.
#[derive(Debug, Clone)]
pub struct SweepTable {
    pub stats: Statistics,
    pub n: u32,
    pub grid: TempGrid,
    pub columns: Vec<MethodTag>,
    pub rows: Vec<SweepRow>,
    pub failures: Vec<String>,
}

fn evaluate_method(
    tag: MethodTag,
    params: &EnsembleParams,
    stats: Statistics,
    fit: Option<&InterpolationSpec>,
) -> Result<f64> {
    match tag {
        MethodTag::Exact => Ok(exact_net_force(params, stats)?.1.value),
        MethodTag::HighT(terms) => Ok(approx::high_t_force(params, stats, terms)?.value),
        MethodTag::Pade => Ok(approx::high_t_force_pade(params, stats)?.value),
        MethodTag::LowT(terms) => match stats {
            Statistics::Fermi => Ok(approx::low_t_fermion_force(params, terms)?.value),
            Statistics::Bose => Ok(approx::low_t_boson_force(params, terms)?.value),
        },
        MethodTag::MedT => match stats {
            Statistics::Fermi => Ok(approx::med_t_fermion_force(params).value),
            Statistics::Bose => Ok(approx::med_t_boson_force(params).value),
        },
        MethodTag::Interp => {
            let spec = fit.ok_or_else(|| {
                Error::Fit("interpolation spec unavailable for this sweep".into())
            })?;
            Ok(interpolated_force(params, stats, spec)?.value)
        }
    }
}

/// Evaluate `worker(i)` for every index in parallel, preserving order.
fn parallel_map<T: Send, F: Fn(usize) -> T + Sync>(count: usize, worker: F) -> Vec<T> {
    let threads = crate::thread_count().clamp(1, count.max(1));
    let mut slots: Vec<Option<T>> = Vec::with_capacity(count);
    slots.resize_with(count, || None);
    let chunk = count.div_ceil(threads).max(1);
    std::thread::scope(|scope| {
        for (w, slice) in slots.chunks_mut(chunk).enumerate() {
            let worker = &worker;
            scope.spawn(move || {
                for (offset, slot) in slice.iter_mut().enumerate() {
                    *slot = Some(worker(w * chunk + offset));
                }
            });
        }
    });
    slots.into_iter().map(|s| s.expect("slot filled")).collect()
}

/// Run a sweep: one row per grid point, one column per requested method.
pub fn run_sweep(config: &SweepConfig) -> Result<SweepTable> {
    config.validate()?;
    let columns = config.sorted_methods();
    let fit = if columns.contains(&MethodTag::Interp) {
        Some(fit_interpolation(config.stats, config.n)?)
    } else {
        None
    };
    let points = config.grid.points();
    let evaluated = parallel_map(points.len(), |i| {
        let t = points[i];
        let mut values = Vec::with_capacity(columns.len());
        let mut failures = Vec::new();
        match EnsembleParams::from_temperature(config.n, t) {
            Ok(params) => {
                for &tag in &columns {
                    match evaluate_method(tag, &params, config.stats, fit.as_ref()) {
                        Ok(v) => values.push(Some(v)),
                        Err(e) => {
                            values.push(None);
                            failures.push(format!("t = {t}: {tag}: {e}"));
                        }
                    }
                }
            }
            Err(e) => {
                values.resize(columns.len(), None);
                failures.push(format!("t = {t}: {e}"));
            }
        }
        (SweepRow { t, values }, failures)
    });
    let mut rows = Vec::with_capacity(points.len());
    let mut failures = Vec::new();
    for (row, mut fails) in evaluated {
        rows.push(row);
        failures.append(&mut fails);
    }
    Ok(SweepTable {
        stats: config.stats,
        n: config.n,
        grid: config.grid,
        columns,
        rows,
        failures,
    })
}

/// 17-significant-digit float formatting used in all CSV output.
fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

fn csv_cell(v: Option<f64>) -> String {
    v.map(fmt_f64).unwrap_or_default()
}

impl SweepTable {
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str("t[dimensionless]");
        for tag in &self.columns {
            out.push_str(&format!(",delta_f[{tag}][dimensionless]"));
        }
        out.push('\n');
        for row in &self.rows {
            out.push_str(&fmt_f64(row.t));
            for v in &row.values {
                out.push(',');
                out.push_str(&csv_cell(*v));
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct JsonRow {
            t: f64,
            values: BTreeMap<String, Option<f64>>,
        }
        #[derive(Serialize)]
        struct JsonSweep<'a> {
            kind: &'static str,
            stats: String,
            particles: u32,
            grid: &'a TempGrid,
            columns: Vec<String>,
            rows: Vec<JsonRow>,
        }
        let doc = JsonSweep {
            kind: "sweep",
            stats: self.stats.to_string(),
            particles: self.n,
            grid: &self.grid,
            columns: self.columns.iter().map(|c| c.to_string()).collect(),
            rows: self
                .rows
                .iter()
                .map(|row| JsonRow {
                    t: row.t,
                    values: self
                        .columns
                        .iter()
                        .zip(&row.values)
                        .map(|(c, v)| (c.to_string(), *v))
                        .collect(),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
    }

    fn render(&self, format: FormatArg) -> String {
        match format {
            FormatArg::Csv => self.to_csv(),
            FormatArg::Json => self.to_json(),
        }
    }
}

fn write_output(path: Option<&Path>, content: &str) -> Result<()> {
    match path {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| Error::Domain(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{content}");
            std::io::stdout().flush().ok();
            Ok(())
        }
    }
}

/// `solve`: one ensemble point, printed with units spelled out.
pub fn cmd_solve(stats: Statistics, n: u32, t: f64, scales: PhysicalScales) -> Result<String> {
    let params = EnsembleParams::from_temperature(n, t)?;
    let fugacity = solve_fugacity(&params, stats)?;
    let at = fugacity.alpha_tilde;
    let direct = net_force(at, &params, stats, SummationMode::Direct)?;
    let resummed = if at > 0.0 {
        Some(net_force(at, &params, stats, SummationMode::Resummed)?)
    } else {
        None
    };
    let (bound_n, bound_improved) = force_bounds(at, &params, stats)?;
    let n0 = occupation(0, at, &params, stats)?;
    let unit = scales.force_unit();

    let mut out = String::new();
    out.push_str(&format!("statistics            : {stats}\n"));
    out.push_str(&format!("particles N           : {n}\n"));
    out.push_str(&format!("temperature t         : {t} [k_B T / E]\n"));
    out.push_str(&format!(
        "alpha_tilde           : {:.12e} (residual {:.2e}, {} iterations)\n",
        at, fugacity.residual, fugacity.iterations
    ));
    out.push_str(&format!("exp(-alpha_tilde)     : {:.12e}\n", (-at).exp()));
    out.push_str(&format!("ground occupation N_0 : {n0:.12e}\n"));
    out.push_str(&format!(
        "delta_f (direct)      : {:.12e} [dimensionless]\n",
        direct.value
    ));
    match &resummed {
        Some(r) => out.push_str(&format!(
            "delta_f (resummed)    : {:.12e} [dimensionless]\n",
            r.value
        )),
        None => out.push_str("delta_f (resummed)    : n/a (requires alpha_tilde > 0)\n"),
    }
    out.push_str(&format!(
        "bounds                : delta_f <= N = {bound_n}, delta_f <= (N+N_0)/2 = {bound_improved:.6}\n"
    ));
    out.push_str(&format!(
        "average energy diff   : {} [E]\n",
        average_energy_difference(&params)
    ));
    out.push_str(&format!(
        "force unit            : E/(2 sqrt(pi) a) = {unit:.12e}\n"
    ));
    out.push_str(&format!(
        "dimensional net force : {:.12e} [E/a]\n",
        direct.value * unit
    ));
    Ok(out)
}

/// One comparison row: exact force, per-method values and relative errors,
/// and (fermions) the medium-temperature fugacity error.
#[derive(Debug, Clone)]
pub struct CompareRow {
    pub t: f64,
    pub exact: Option<f64>,
    pub methods: Vec<(Option<f64>, Option<f64>)>,
    pub alpha_rel_err: Option<f64>,
}

/// An evaluated comparison table.
#[derive(Debug, Clone)]
pub struct CompareTable {
    pub stats: Statistics,
    pub n: u32,
    pub grid: TempGrid,
    pub columns: Vec<MethodTag>,
    pub rows: Vec<CompareRow>,
    pub max_rel_err: Vec<Option<f64>>,
    pub alpha_max_rel_err: Option<f64>,
    pub failures: Vec<String>,
}

/// The accuracy bound claimed for the medium-temperature fermionic fugacity
/// formula over the whole temperature range.
pub const MED_T_ALPHA_BOUND: f64 = 1e-5;

/// Run an exact-vs-approximations comparison over a grid.
pub fn run_compare(config: &SweepConfig) -> Result<CompareTable> {
    config.validate()?;
    let columns: Vec<MethodTag> = config
        .sorted_methods()
        .into_iter()
        .filter(|t| *t != MethodTag::Exact)
        .collect();
    let fit = if columns.contains(&MethodTag::Interp) {
        Some(fit_interpolation(config.stats, config.n)?)
    } else {
        None
    };
    let points = config.grid.points();
    let evaluated = parallel_map(points.len(), |i| {
        let t = points[i];
        let mut failures: Vec<String> = Vec::new();
        let params = match EnsembleParams::from_temperature(config.n, t) {
            Ok(p) => p,
            Err(e) => {
                failures.push(format!("t = {t}: {e}"));
                return (
                    CompareRow {
                        t,
                        exact: None,
                        methods: vec![(None, None); columns.len()],
                        alpha_rel_err: None,
                    },
                    failures,
                );
            }
        };
        let solved = solve_fugacity(&params, config.stats)
            .and_then(|f| {
                let force = net_force(
                    f.alpha_tilde,
                    &params,
                    config.stats,
                    SummationMode::auto(f.alpha_tilde),
                )?;
                Ok((f, force))
            })
            .map_err(|e| failures.push(format!("t = {t}: exact: {e}")))
            .ok();
        let exact = solved.as_ref().map(|(_, force)| force.value);
        let alpha_rel_err = match (&solved, config.stats) {
            (Some((fugacity, _)), Statistics::Fermi) => {
                let approx_at = med_t_fermion_alpha_tilde(&params);
                // Relative error of e^{-at}, evaluated in log space so that
                // low-temperature points do not overflow.
                Some(((fugacity.alpha_tilde - approx_at).exp() - 1.0).abs())
            }
            _ => None,
        };
        let methods = columns
            .iter()
            .map(
                |&tag| match evaluate_method(tag, &params, config.stats, fit.as_ref()) {
                    Ok(v) => {
                        let rel = exact.map(|e| ((v - e) / e).abs());
                        (Some(v), rel)
                    }
                    Err(e) => {
                        failures.push(format!("t = {t}: {tag}: {e}"));
                        (None, None)
                    }
                },
            )
            .collect();
        (
            CompareRow {
                t,
                exact,
                methods,
                alpha_rel_err,
            },
            failures,
        )
    });
    let mut rows = Vec::with_capacity(points.len());
    let mut failures = Vec::new();
    for (row, mut fails) in evaluated {
        rows.push(row);
        failures.append(&mut fails);
    }
    let max_rel_err = (0..columns.len())
        .map(|j| {
            rows.iter()
                .filter_map(|r| r.methods[j].1)
                .fold(None, |acc: Option<f64>, v| {
                    Some(acc.map_or(v, |a| a.max(v)))
                })
        })
        .collect();
    let alpha_max_rel_err = rows
        .iter()
        .filter_map(|r| r.alpha_rel_err)
        .fold(None, |acc: Option<f64>, v| {
            Some(acc.map_or(v, |a| a.max(v)))
        });
    Ok(CompareTable {
        stats: config.stats,
        n: config.n,
        grid: config.grid,
        columns,
        rows,
        max_rel_err,
        alpha_max_rel_err,
        failures,
    })
}

impl CompareTable {
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str("t[dimensionless],delta_f[exact][dimensionless]");
        for tag in &self.columns {
            out.push_str(&format!(
                ",delta_f[{tag}][dimensionless],rel_err[{tag}][dimensionless]"
            ));
        }
        if self.stats == Statistics::Fermi {
            out.push_str(",rel_err[alpha-medT][dimensionless]");
        }
        out.push('\n');
        for row in &self.rows {
            out.push_str(&fmt_f64(row.t));
            out.push(',');
            out.push_str(&csv_cell(row.exact));
            for (value, rel) in &row.methods {
                out.push(',');
                out.push_str(&csv_cell(*value));
                out.push(',');
                out.push_str(&csv_cell(*rel));
            }
            if self.stats == Statistics::Fermi {
                out.push(',');
                out.push_str(&csv_cell(row.alpha_rel_err));
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct JsonMethod {
            value: Option<f64>,
            rel_err: Option<f64>,
        }
        #[derive(Serialize)]
        struct JsonRow {
            t: f64,
            exact: Option<f64>,
            methods: BTreeMap<String, JsonMethod>,
            #[serde(skip_serializing_if = "Option::is_none")]
            alpha_rel_err: Option<f64>,
        }
        #[derive(Serialize)]
        struct JsonSummary {
            max_rel_err: BTreeMap<String, Option<f64>>,
            #[serde(skip_serializing_if = "Option::is_none")]
            alpha_max_rel_err: Option<f64>,
            #[serde(skip_serializing_if = "Option::is_none")]
            alpha_bound_holds: Option<bool>,
        }
        #[derive(Serialize)]
        struct JsonCompare<'a> {
            kind: &'static str,
            stats: String,
            particles: u32,
            grid: &'a TempGrid,
            columns: Vec<String>,
            rows: Vec<JsonRow>,
            summary: JsonSummary,
        }
        let doc = JsonCompare {
            kind: "compare",
            stats: self.stats.to_string(),
            particles: self.n,
            grid: &self.grid,
            columns: self.columns.iter().map(|c| c.to_string()).collect(),
            rows: self
                .rows
                .iter()
                .map(|row| JsonRow {
                    t: row.t,
                    exact: row.exact,
                    methods: self
                        .columns
                        .iter()
                        .zip(&row.methods)
                        .map(|(c, (value, rel))| {
                            (
                                c.to_string(),
                                JsonMethod {
                                    value: *value,
                                    rel_err: *rel,
                                },
                            )
                        })
                        .collect(),
                    alpha_rel_err: row.alpha_rel_err,
                })
                .collect(),
            summary: JsonSummary {
                max_rel_err: self
                    .columns
                    .iter()
                    .zip(&self.max_rel_err)
                    .map(|(c, v)| (c.to_string(), *v))
                    .collect(),
                alpha_max_rel_err: self.alpha_max_rel_err,
                alpha_bound_holds: self.alpha_max_rel_err.map(|v| v <= MED_T_ALPHA_BOUND),
            },
        };
        serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
    }

    fn render(&self, format: FormatArg) -> String {
        match format {
            FormatArg::Csv => self.to_csv(),
            FormatArg::Json => self.to_json(),
        }
    }

    /// Human-readable summary, printed to stderr alongside the table.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        for (tag, max) in self.columns.iter().zip(&self.max_rel_err) {
            match max {
                Some(v) => out.push_str(&format!("max rel. error [{tag}]: {v:.3e}\n")),
                None => out.push_str(&format!("max rel. error [{tag}]: n/a\n")),
            }
        }
        if let Some(v) = self.alpha_max_rel_err {
            let verdict = if v <= MED_T_ALPHA_BOUND {
                "HOLDS"
            } else {
                "EXCEEDED"
            };
            out.push_str(&format!(
                "max rel. error [alpha-medT]: {v:.3e} (bound {MED_T_ALPHA_BOUND:.0e}: {verdict})\n"
            ));
        }
        out
    }
}

fn render_fit(spec: &InterpolationSpec, stats: Statistics, n: u32) -> String {
    let mut out = String::new();
    out.push_str(&format!("statistics : {stats}\n"));
    out.push_str(&format!("particles  : {n}\n"));
    let variable = match spec.variable {
        approx::InterpVariable::TOverN => "t/N",
        approx::InterpVariable::T => "t",
    };
    out.push_str(&format!("variable   : {variable}\n"));
    out.push_str(&format!("x_star     : {:.6}\n", spec.x_star));
    match spec.raw_p {
        Some(raw) => out.push_str(&format!("p          : {} (raw {raw:.6})\n", spec.p)),
        None => out.push_str(&format!("p          : {}\n", spec.p)),
    }
    if let Some(tangent) = &spec.tangent {
        out.push_str(&format!(
            "tangent    : slope {:.5}, touches ({:.4}, {:.4}) and ({:.4}, {:.4})\n",
            tangent.slope,
            tangent.touch_low.0,
            tangent.touch_low.1,
            tangent.touch_high.0,
            tangent.touch_high.1
        ));
    }
    out
}

/// Verification output of `verify`.
#[derive(Debug, Clone)]
pub struct VerifyOutput {
    pub report: crate::oracle::VerifyReport,
}

impl VerifyOutput {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "k,measured[dimensionless],expected[dimensionless],deviation[dimensionless],pass\n",
        );
        for row in &self.report.rows {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                row.k,
                fmt_f64(row.measured),
                fmt_f64(row.expected),
                fmt_f64(row.deviation),
                row.pass
            ));
        }
        out
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct JsonRow {
            k: usize,
            measured: f64,
            expected: f64,
            deviation: f64,
            pass: bool,
        }
        #[derive(Serialize)]
        struct JsonVerify {
            kind: &'static str,
            delta: f64,
            tol: f64,
            rows: Vec<JsonRow>,
            passed: bool,
        }
        let doc = JsonVerify {
            kind: "verify",
            delta: self.report.delta,
            tol: self.report.tol,
            rows: self
                .report
                .rows
                .iter()
                .map(|r| JsonRow {
                    k: r.k,
                    measured: r.measured,
                    expected: r.expected,
                    deviation: r.deviation,
                    pass: r.pass,
                })
                .collect(),
            passed: self.report.passed(),
        };
        serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
    }

    fn render(&self, format: FormatArg) -> String {
        match format {
            FormatArg::Csv => self.to_csv(),
            FormatArg::Json => self.to_json(),
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "partition-force",
    about = "Net statistical force on a Dirichlet/Neumann partition wall in a harmonic trap",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve one ensemble point and print the fugacity, force, and bounds.
    Solve {
        #[arg(long = "stats", value_enum)]
        stats: StatsArg,
        #[arg(long = "particles")]
        particles: u32,
        /// Temperature t = k_B T / E (dimensionless).
        #[arg(long = "temp")]
        temp: f64,
        /// Oscillator length scale a (only scales the dimensional output).
        #[arg(long = "length", default_value_t = 1.0)]
        length: f64,
        /// Energy scale E (only scales the dimensional output).
        #[arg(long = "energy", default_value_t = 1.0)]
        energy: f64,
    },
    /// Evaluate force methods over a temperature grid and write a table.
    Sweep {
        #[arg(long = "stats", value_enum)]
        stats: StatsArg,
        #[arg(long = "particles")]
        particles: u32,
        /// Grid as min:max:count:{lin,log}.
        #[arg(long = "grid")]
        grid: String,
        /// Comma-separated method tags (exact, highT-1..4, pade, lowT-1..5, medT, interp).
        #[arg(long = "methods", value_delimiter = ',', default_value = "exact")]
        methods: Vec<String>,
        #[arg(long = "out")]
        out: Option<PathBuf>,
        #[arg(long = "format", value_enum, default_value = "csv")]
        format: FormatArg,
    },
    /// Compare approximations against the exact solver over a grid.
    Compare {
        #[arg(long = "stats", value_enum)]
        stats: StatsArg,
        #[arg(long = "particles")]
        particles: u32,
        /// Grid as min:max:count:{lin,log}.
        #[arg(long = "grid")]
        grid: String,
        /// Comma-separated method tags; defaults to every closed form.
        #[arg(long = "methods", value_delimiter = ',')]
        methods: Option<Vec<String>>,
        #[arg(long = "out")]
        out: Option<PathBuf>,
        #[arg(long = "format", value_enum, default_value = "csv")]
        format: FormatArg,
    },
    /// Fit the crossover interpolation and print its parameters.
    FitInterp {
        #[arg(long = "stats", value_enum)]
        stats: StatsArg,
        #[arg(long = "particles")]
        particles: u32,
    },
    /// Verify the per-level force coefficients against the shooting oracle.
    Verify {
        /// Highest level index to check.
        #[arg(long = "k-max", default_value_t = 5)]
        k_max: usize,
        /// Finite-difference step for the wall displacement.
        #[arg(long = "delta", default_value_t = 1e-3)]
        delta: f64,
        /// Absolute tolerance on each per-level coefficient.
        #[arg(long = "tol", default_value_t = 1e-3)]
        tol: f64,
        #[arg(long = "out")]
        out: Option<PathBuf>,
        #[arg(long = "format", value_enum, default_value = "csv")]
        format: FormatArg,
    },
}

fn parse_methods(raw: &[String]) -> Result<Vec<MethodTag>> {
    raw.iter().map(|s| s.parse()).collect()
}

fn default_compare_methods(stats: Statistics) -> Vec<MethodTag> {
    let low_terms = match stats {
        Statistics::Fermi => 5,
        Statistics::Bose => 3,
    };
    vec![
        MethodTag::HighT(1),
        MethodTag::HighT(2),
        MethodTag::HighT(3),
        MethodTag::Pade,
        MethodTag::LowT(low_terms),
        MethodTag::MedT,
        MethodTag::Interp,
    ]
}

fn exit_code_for(error: &Error) -> i32 {
    match error {
        Error::Domain(_) => EXIT_CONFIG,
        _ => EXIT_NUMERIC,
    }
}

/// Parse the process arguments, run the selected command, and return the
/// exit code.
pub fn main() -> i32 {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    }
}

/// Run a parsed command. Returns the process exit code.
pub fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Solve {
            stats,
            particles,
            temp,
            length,
            energy,
        } => {
            let scales = PhysicalScales::new(length, energy)?;
            let report = cmd_solve(stats.into(), particles, temp, scales)?;
            print!("{report}");
            Ok(EXIT_OK)
        }
        Command::Sweep {
            stats,
            particles,
            grid,
            methods,
            out,
            format,
        } => {
            let config = SweepConfig {
                stats: stats.into(),
                n: particles,
                grid: grid.parse()?,
                methods: parse_methods(&methods)?,
                out,
                format,
            };
            let table = run_sweep(&config)?;
            for failure in &table.failures {
                eprintln!("sweep: {failure}");
            }
            if !table.failures.is_empty() {
                eprintln!("sweep: {} cell(s) left empty", table.failures.len());
            }
            write_output(config.out.as_deref(), &table.render(config.format))?;
            Ok(EXIT_OK)
        }
        Command::Compare {
            stats,
            particles,
            grid,
            methods,
            out,
            format,
        } => {
            let stats: Statistics = stats.into();
            let methods = match methods {
                Some(raw) => parse_methods(&raw)?,
                None => default_compare_methods(stats),
            };
            let config = SweepConfig {
                stats,
                n: particles,
                grid: grid.parse()?,
                methods,
                out,
                format,
            };
            let table = run_compare(&config)?;
            for failure in &table.failures {
                eprintln!("compare: {failure}");
            }
            write_output(config.out.as_deref(), &table.render(config.format))?;
            eprint!("{}", table.summary());
            Ok(EXIT_OK)
        }
        Command::FitInterp { stats, particles } => {
            let stats: Statistics = stats.into();
            let spec = fit_interpolation(stats, particles)?;
            print!("{}", render_fit(&spec, stats, particles));
            Ok(EXIT_OK)
        }
        Command::Verify {
            k_max,
            delta,
            tol,
            out,
            format,
        } => {
            let report = crate::oracle::verify_delta_f(k_max, delta, tol)?;
            let output = VerifyOutput { report };
            write_output(out.as_deref(), &output.render(format))?;
            if output.report.passed() {
                eprintln!("verify: all {} level(s) within {tol:.1e}", k_max + 1);
                Ok(EXIT_OK)
            } else {
                let floor = delta * delta + 1e-9 / delta;
                eprintln!(
                    "verify: levels {:?} exceeded tolerance {tol:.1e}; the \
                     finite-difference floor is roughly delta^2 + eig_tol/delta \
                     ~ {floor:.1e}, so tolerances below it cannot pass",
                    output.report.failing_levels()
                );
                Ok(EXIT_VERIFY_FAIL)
            }
        }
    }
}
