//! The zero-temperature limits and how fast the exact force saturates them:
//! bosons condense to delta_f = N, fermions fill the sea up to
//! 2N (2N)!/(2^{2N} N!^2), of order sqrt(N).
//!
//! Run with `cargo run --release --example zero_temperature_limits`.

use partition_force::spectrum::fermion_zero_t_force;
use partition_force::statmech::{boson_zero_t_force, exact_net_force, EnsembleParams, Statistics};

fn main() -> partition_force::Result<()> {
    println!("zero-temperature limits:");
    for n in [1u32, 2, 10, 100, 1000] {
        let stirling = 2.0 * (n as f64 / std::f64::consts::PI).sqrt();
        println!(
            "  N = {n:>4}: boson {:>6}, fermion {:>12.6} (Stirling {:.6}, rel {:+.2e})",
            boson_zero_t_force(n),
            fermion_zero_t_force(n),
            stirling,
            fermion_zero_t_force(n) / stirling - 1.0
        );
    }

    println!("\nsaturation of the limits as t -> 0 (N = 100):");
    println!(
        "  {:>8} {:>18} {:>18}",
        "t", "N - delta_f(bose)", "df(0) - delta_f(fermi)"
    );
    for t in [2.0, 1.0, 0.5, 0.2, 0.1, 0.02] {
        let params = EnsembleParams::from_temperature(100, t)?;
        let bose = exact_net_force(&params, Statistics::Bose)?.1.value;
        let fermi = exact_net_force(&params, Statistics::Fermi)?.1.value;
        println!(
            "  {t:>8} {:>18.3e} {:>18.3e}",
            100.0 - bose,
            fermion_zero_t_force(100) - fermi
        );
    }
    Ok(())
}
