//! Produce the N = 100 curve datasets: the exact force with the
//! high-temperature truncations and Padé form over a hot grid for both
//! statistics, the low-temperature expansions over a cold bosonic grid, and
//! the full-range curves with the crossover interpolation.
//!
//! Writes CSV files under `figures/`. Run with
//! `cargo run --release --example temperature_sweep`.

use partition_force::cli::{run_sweep, FormatArg, GridSpacing, MethodTag, SweepConfig, TempGrid};
use partition_force::statmech::Statistics;

fn write(config: &SweepConfig, path: &str) -> partition_force::Result<()> {
    let table = run_sweep(config)?;
    for failure in &table.failures {
        eprintln!("note: {failure}");
    }
    std::fs::write(path, table.to_csv()).expect("writable output directory");
    println!("wrote {path} ({} rows)", table.rows.len());
    Ok(())
}

fn main() -> partition_force::Result<()> {
    std::fs::create_dir_all("figures").expect("create figures/");

    // High-temperature regime: exact vs series truncations and the Padé form.
    for (stats, name) in [(Statistics::Fermi, "fermi"), (Statistics::Bose, "bose")] {
        let config = SweepConfig {
            stats,
            n: 100,
            grid: TempGrid::new(10.0, 1e4, 200, GridSpacing::Log)?,
            methods: vec![
                MethodTag::Exact,
                MethodTag::HighT(1),
                MethodTag::HighT(2),
                MethodTag::HighT(3),
                MethodTag::Pade,
            ],
            out: None,
            format: FormatArg::Csv,
        };
        write(&config, &format!("figures/high_t_{name}_n100.csv"))?;
    }

    // Low-temperature bosonic expansions near the condensed regime.
    let low = SweepConfig {
        stats: Statistics::Bose,
        n: 100,
        grid: TempGrid::new(0.2, 2.0, 100, GridSpacing::Linear)?,
        methods: vec![
            MethodTag::Exact,
            MethodTag::LowT(1),
            MethodTag::LowT(2),
            MethodTag::LowT(3),
        ],
        out: None,
        format: FormatArg::Csv,
    };
    write(&low, "figures/low_t_bose_n100.csv")?;

    // Whole-range curves with the medium-temperature forms and the blended
    // interpolation.
    for (stats, name) in [(Statistics::Fermi, "fermi"), (Statistics::Bose, "bose")] {
        let config = SweepConfig {
            stats,
            n: 100,
            grid: TempGrid::new(0.1, 1e4, 250, GridSpacing::Log)?,
            methods: vec![
                MethodTag::Exact,
                MethodTag::MedT,
                MethodTag::HighT(3),
                MethodTag::Interp,
            ],
            out: None,
            format: FormatArg::Csv,
        };
        write(&config, &format!("figures/full_range_{name}_n100.csv"))?;
    }

    Ok(())
}
