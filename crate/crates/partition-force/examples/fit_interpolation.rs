//! Fit the crossover interpolation joining the medium- and high-temperature
//! force curves, then tabulate the blended curve against the exact one.
//!
//! Run with `cargo run --release --example fit_interpolation`.

use partition_force::approx::{fit_interpolation, interpolated_force};
use partition_force::statmech::{exact_net_force, EnsembleParams, Statistics};

fn main() -> partition_force::Result<()> {
    for (stats, n) in [(Statistics::Fermi, 100), (Statistics::Bose, 100)] {
        let spec = fit_interpolation(stats, n)?;
        println!("== {stats} N = {n} ==");
        println!("  crossover x* = {:.6}", spec.x_star);
        match spec.raw_p {
            Some(raw) => println!("  sharpness p = {} (raw {raw:.4})", spec.p),
            None => println!("  sharpness p = {}", spec.p),
        }
        if let Some(tangent) = &spec.tangent {
            println!(
                "  common tangent of exact curve and high-T series: slope {:.5}",
                tangent.slope
            );
            println!(
                "    touches ({:.4}, {:.4}) and ({:.4}, {:.4})",
                tangent.touch_low.0,
                tangent.touch_low.1,
                tangent.touch_high.0,
                tangent.touch_high.1
            );
        }
        println!(
            "  {:>10} {:>12} {:>12} {:>9}",
            "t", "blended", "exact", "rel"
        );
        for factor in [0.25, 0.5, 1.0, 2.0, 4.0] {
            let t = match spec.variable {
                partition_force::approx::InterpVariable::TOverN => factor * spec.x_star * n as f64,
                partition_force::approx::InterpVariable::T => factor * spec.x_star,
            };
            let params = EnsembleParams::from_temperature(n, t)?;
            let blended = interpolated_force(&params, stats, &spec)?.value;
            let exact = exact_net_force(&params, stats)?.1.value;
            println!(
                "  {t:>10.3} {blended:>12.5} {exact:>12.5} {:>+9.4}",
                blended / exact - 1.0
            );
        }
        println!();
    }
    Ok(())
}
