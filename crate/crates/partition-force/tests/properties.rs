//! Property tests for the structural invariants of the level sums and the
//! interpolation blend.

use proptest::prelude::*;

use partition_force::approx::{interpolate, InterpVariable, InterpolationSpec};
use partition_force::spectrum::{delta_f_level, delta_f_levels};
use partition_force::statmech::{
    net_force, occupation, solve_fugacity, total_number, EnsembleParams, Statistics, SummationMode,
};

fn spec(x_star: f64, p: f64) -> InterpolationSpec {
    InterpolationSpec {
        x_star,
        p,
        variable: InterpVariable::T,
        raw_p: None,
        tangent: None,
    }
}

proptest! {
    #[test]
    fn delta_f_decreasing_and_bounded(k in 0usize..3000) {
        let value = delta_f_level(k);
        prop_assert!(value > 0.0 && value <= 1.0);
        prop_assert!(delta_f_level(k + 1) < value);
    }

    #[test]
    fn partial_sum_identity_holds(n in 1usize..2000) {
        let sum: f64 = delta_f_levels().take(n).sum();
        let closed = 2.0 * n as f64 * delta_f_level(n);
        prop_assert!((sum - closed).abs() <= 1e-12 * closed);
    }

    #[test]
    fn interpolation_midpoint_is_mean(
        x_star in 1e-2f64..1e2,
        p in 0.5f64..40.0,
        a in -10.0f64..10.0,
        b in -10.0f64..10.0,
    ) {
        let g1 = move |x: f64| a * x + 1.0;
        let g2 = move |x: f64| b / (x + 1.0);
        let s = spec(x_star, p);
        let mid = interpolate(g1, g2, &s, x_star);
        let mean = 0.5 * (g1(x_star) + g2(x_star));
        prop_assert!((mid - mean).abs() <= 1e-12 * mean.abs().max(1.0));
    }

    #[test]
    fn occupations_positive_and_decreasing(
        fermi in any::<bool>(),
        alpha_tilde in 0.01f64..5.0,
        b in 0.01f64..5.0,
    ) {
        let stats = if fermi { Statistics::Fermi } else { Statistics::Bose };
        let params = EnsembleParams::new(10, b).unwrap();
        let mut previous = f64::INFINITY;
        for k in 0..40 {
            let nk = occupation(k, alpha_tilde, &params, stats).unwrap();
            prop_assert!(nk > 0.0);
            prop_assert!(nk < previous);
            previous = nk;
        }
    }
}

proptest! {
    // Solver-backed properties are slower; keep the case count modest.
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn solved_ensembles_satisfy_constraint_and_bounds(
        fermi in any::<bool>(),
        n in 2u32..60,
        t in 0.2f64..2e3,
    ) {
        let stats = if fermi { Statistics::Fermi } else { Statistics::Bose };
        let params = EnsembleParams::from_temperature(n, t).unwrap();
        let fugacity = solve_fugacity(&params, stats).unwrap();
        prop_assert!(fugacity.residual <= 1e-10);
        if stats == Statistics::Bose {
            prop_assert!(fugacity.alpha_tilde > 0.0);
        }
        let force = net_force(
            fugacity.alpha_tilde,
            &params,
            stats,
            SummationMode::auto(fugacity.alpha_tilde),
        )
        .unwrap();
        prop_assert!(force.value > 0.0);
        prop_assert!(force.value <= n as f64 * (1.0 + 1e-9));
    }

    #[test]
    fn direct_and_resummed_sums_agree(
        fermi in any::<bool>(),
        n in 2u32..60,
        t in 0.2f64..2e3,
    ) {
        let stats = if fermi { Statistics::Fermi } else { Statistics::Bose };
        let params = EnsembleParams::from_temperature(n, t).unwrap();
        let at = solve_fugacity(&params, stats).unwrap().alpha_tilde;
        prop_assume!(at > 0.0);
        let direct = total_number(at, &params, stats, SummationMode::Direct).unwrap();
        let resummed = total_number(at, &params, stats, SummationMode::Resummed).unwrap();
        let gap = (direct.value - resummed.value).abs();
        prop_assert!(gap <= direct.tail_bound + resummed.tail_bound + 1e-8 * direct.value);
        let fd = net_force(at, &params, stats, SummationMode::Direct).unwrap();
        let fr = net_force(at, &params, stats, SummationMode::Resummed).unwrap();
        prop_assert!(((fd.value - fr.value) / fd.value).abs() <= 1e-8);
    }
}
