//! Measure the accuracy of every closed-form approximation against the exact
//! solver, including the medium-temperature fermionic fugacity formula, whose
//! relative error stays at the 1e-5 level over the whole temperature range.
//!
//! Run with `cargo run --release --example compare_accuracy`.

use partition_force::cli::{
    run_compare, FormatArg, GridSpacing, MethodTag, SweepConfig, TempGrid, MED_T_ALPHA_BOUND,
};
use partition_force::statmech::Statistics;

fn main() -> partition_force::Result<()> {
    for stats in [Statistics::Fermi, Statistics::Bose] {
        let config = SweepConfig {
            stats,
            n: 100,
            grid: TempGrid::new(0.1, 1e4, 120, GridSpacing::Log)?,
            methods: vec![
                MethodTag::HighT(3),
                MethodTag::Pade,
                MethodTag::LowT(3),
                MethodTag::MedT,
                MethodTag::Interp,
            ],
            out: None,
            format: FormatArg::Csv,
        };
        let table = run_compare(&config)?;
        println!("== {stats} N = 100, t in [0.1, 1e4] ==");
        for (tag, max) in table.columns.iter().zip(&table.max_rel_err) {
            match max {
                Some(v) => println!("  max rel. error [{tag:>8}]: {v:.3e}"),
                None => println!("  max rel. error [{tag:>8}]: n/a (failed points)"),
            }
        }
        if let Some(alpha) = table.alpha_max_rel_err {
            let verdict = if alpha <= MED_T_ALPHA_BOUND {
                "holds"
            } else {
                "exceeded"
            };
            println!(
                "  fugacity formula max rel. error: {alpha:.3e} (bound {MED_T_ALPHA_BOUND:.0e} {verdict})"
            );
        }
        println!();
    }
    Ok(())
}
