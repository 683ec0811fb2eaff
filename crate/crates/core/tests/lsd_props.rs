mod common;

use bdconvex::convex::{
    check_slackness, duality_gap, lsd_as_sdp, lsd_lp_data, lsd_lp_over_separable, lp_residuals,
    solve_lp, solve_sdp, DEFAULT_TOL,
};
use bdconvex::lsd::{
    lambda_for_candidate, lambda_profile, optimal_lsd, profile_candidate, residual_spectrum,
};
use bdconvex::BDState;
use common::{any_state, entangled_state, permutations, simplex};
use proptest::prelude::*;

/// Entangled ρ together with an arbitrary separable σ.
fn separable_candidate() -> impl Strategy<Value = BDState> {
    simplex().prop_filter_map("separable", |p| {
        let s = BDState::from_probs(p).ok()?;
        s.classify().is_separable().then_some(s)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn no_candidate_beats_the_optimum(rho in entangled_state(), sigma in separable_candidate()) {
        let best = optimal_lsd(&rho).lambda;
        let lam = lambda_for_candidate(&rho, &sigma).unwrap();
        prop_assert!(lam <= best + 1e-12, "{lam} > {best}");
    }

    #[test]
    fn decomposition_recombines(rho in any_state()) {
        let d = optimal_lsd(&rho);
        prop_assert!((0.0..=1.0).contains(&d.lambda));
        prop_assert!(d.separable.classify().is_separable());
        for (a, b) in d.recombine().iter().zip(rho.probs()) {
            prop_assert!((a - b).abs() < 1e-14);
        }
        prop_assert!((d.lambda + d.entangled_weight - 1.0).abs() < 1e-15);
    }

    #[test]
    fn optimal_candidate_attains_lambda(rho in entangled_state()) {
        let d = optimal_lsd(&rho);
        prop_assert!((d.lambda - 2.0 * (1.0 - rho.max_prob())).abs() < 1e-15);
        let lam = lambda_for_candidate(&rho, &d.separable).unwrap();
        prop_assert!((lam - d.lambda).abs() < 1e-12);
        prop_assert!(d.separable.classify().is_separable());
        prop_assert!((d.separable.max_prob() - 0.5).abs() < 1e-14);
    }

    #[test]
    fn lsd_commutes_with_permutations(rho in entangled_state(), pi in 0..24usize) {
        let perm = permutations()[pi];
        let d = optimal_lsd(&rho);
        let dp = optimal_lsd(&rho.permuted(perm));
        prop_assert!((d.lambda - dp.lambda).abs() < 1e-15);
        prop_assert!(d.separable.permuted(perm).max_abs_diff(&dp.separable) < 1e-15);
        prop_assert_eq!(perm[dp.entangled_index - 1], d.entangled_index - 1);
    }

    #[test]
    fn residual_is_a_pure_bell_state(rho in entangled_state()) {
        let d = optimal_lsd(&rho);
        let eig = residual_spectrum(&rho, &d).unwrap();
        prop_assert!((eig[0] - 1.0).abs() < 1e-8);
        for e in &eig[1..] {
            prop_assert!(e.abs() < 1e-8);
        }
    }

    #[test]
    fn profile_is_nondecreasing_and_peaks_at_half(rho in entangled_state(), a in 0.01..0.5f64, b in 0.01..0.5f64) {
        let p1 = rho.max_prob();
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        prop_assert!(lambda_profile(p1, lo) <= lambda_profile(p1, hi));
        prop_assert!(lambda_profile(p1, hi) <= lambda_profile(p1, 0.5) + 1e-15);
        let sigma = profile_candidate(&rho, hi).unwrap();
        // a large second component can push the family outside the octahedron
        prop_assume!(sigma.classify().is_separable());
        let lam = lambda_for_candidate(&rho, &sigma).unwrap();
        prop_assert!((lam - lambda_profile(p1, hi)).abs() < 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sdp_lp_and_closed_form_agree(rho in entangled_state()) {
        let d = optimal_lsd(&rho);
        let prob = lsd_as_sdp(&rho, &d.separable).unwrap();
        let sol = solve_sdp(&prob, DEFAULT_TOL);
        prop_assert!(sol.is_optimal());
        prop_assert!((sol.x[0] - d.lambda).abs() <= 1e-6);

        let gap = duality_gap(&prob, &sol.x, &sol.z).unwrap();
        prop_assert!((0.0..=1e-6).contains(&gap));
        prop_assert!(check_slackness(&prob.eval(&sol.x), &sol.z, 1e-6));

        let (lam, sigma, lp) = lsd_lp_over_separable(&rho).unwrap();
        prop_assert!((lam - d.lambda).abs() <= 1e-8);
        prop_assert!(sigma.max_abs_diff(&d.separable) <= 1e-8);
        let (c, a, b) = lsd_lp_data(&rho);
        prop_assert!(lp_residuals(&c, &a, &b, &lp.x, &lp.zeta, &lp.y).max() <= 1e-9);
    }

    #[test]
    fn weak_duality_along_central_path(rho in entangled_state(), sigma in separable_candidate()) {
        let prob = lsd_as_sdp(&rho, &sigma).unwrap();
        let sol = solve_sdp(&prob, DEFAULT_TOL);
        prop_assert!(sol.is_optimal());
        prop_assert!((sol.x[0] - lambda_for_candidate(&rho, &sigma).unwrap()).abs() <= 1e-6);
        for cp in &sol.path {
            prop_assert!(cp.dual <= cp.primal + 1e-12);
        }
    }
}

#[test]
fn lp_crossover_reports_degenerate_optimum() {
    // minimize x₁ s.t. x₁ + x₂ = 1, x₂ + x₃ = 1
    let c = [1.0, 0.0, 0.0];
    let a = vec![vec![1.0, 1.0, 0.0], vec![0.0, 1.0, 1.0]];
    let sol = solve_lp(&c, &a, &[1.0, 1.0]).unwrap();
    assert!(sol.objective.abs() < 1e-12);
    assert!(!sol.strictly_complementary);
    assert!(lp_residuals(&c, &a, &[1.0, 1.0], &sol.x, &sol.zeta, &sol.y).max() <= 1e-9);
}
