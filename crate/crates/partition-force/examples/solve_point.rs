//! Solve single ensemble points: the reduced chemical constant, the exact net
//! force by both summation routes, and the force bounds.
//!
//! Run with `cargo run --example solve_point`.

use partition_force::statmech::{
    force_bounds, net_force, solve_fugacity, EnsembleParams, Statistics, SummationMode,
};

fn main() -> partition_force::Result<()> {
    println!(
        "{:>6} {:>10} {:>14} {:>14} {:>14} {:>12}",
        "stats", "t", "alpha_tilde", "delta_f", "resummed", "(N+N0)/2"
    );
    for stats in [Statistics::Bose, Statistics::Fermi] {
        for t in [0.02, 1.0, 20.0, 1000.0, 1e4] {
            let params = EnsembleParams::from_temperature(100, t)?;
            let fugacity = solve_fugacity(&params, stats)?;
            let at = fugacity.alpha_tilde;
            let direct = net_force(at, &params, stats, SummationMode::Direct)?;
            let resummed = if at > 0.0 {
                format!(
                    "{:14.8}",
                    net_force(at, &params, stats, SummationMode::Resummed)?.value
                )
            } else {
                format!("{:>14}", "-")
            };
            let (_, improved) = force_bounds(at, &params, stats)?;
            println!(
                "{:>6} {:>10} {:>14.6e} {:>14.8} {} {:>12.6}",
                stats.to_string(),
                t,
                at,
                direct.value,
                resummed,
                improved
            );
        }
    }
    Ok(())
}
