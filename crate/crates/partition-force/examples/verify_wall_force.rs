//! Cross-check the analytic per-level force coefficients with the
//! eigenvalue-shooting pipeline: displace the wall by a small step, shoot the
//! perturbed eigenvalues under both boundary conditions, and finite-difference
//! them back into per-level forces.
//!
//! Run with `cargo run --release --example verify_wall_force`.

use partition_force::oracle::{shoot_eigenvalue, verify_delta_f, ShootingProblem};
use partition_force::spectrum::{level_energy, BoundaryCondition};

fn main() -> partition_force::Result<()> {
    // Unperturbed spectra: e_k = k + 3/4 (Dirichlet), k + 1/4 (Neumann).
    println!("unperturbed eigenvalues (shooting vs k + sigma):");
    for bc in [BoundaryCondition::Dirichlet, BoundaryCondition::Neumann] {
        for k in [0usize, 3, 10] {
            let shot = shoot_eigenvalue(&ShootingProblem::new(bc, k))?;
            println!(
                "  {bc:>9} k = {k:>2}: e = {:.10} (exact {:.2}, residual {:.1e})",
                shot.eigenvalue,
                level_energy(bc, k),
                shot.residual
            );
        }
    }

    println!("\nper-level force coefficients, central differences at dx = 1e-3:");
    let report = verify_delta_f(5, 1e-3, 1e-3)?;
    println!(
        "  {:>2} {:>14} {:>14} {:>10} {:>5}",
        "k", "measured", "analytic", "|dev|", "pass"
    );
    for row in &report.rows {
        println!(
            "  {:>2} {:>14.9} {:>14.9} {:>10.2e} {:>5}",
            row.k, row.measured, row.expected, row.deviation, row.pass
        );
    }
    println!(
        "\nverdict: {}",
        if report.passed() {
            "all levels pass"
        } else {
            "FAILED"
        }
    );
    Ok(())
}
