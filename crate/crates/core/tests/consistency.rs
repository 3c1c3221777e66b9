//! Cross-module consistency: the analytic chain from channel parameters
//! to timing, resources, noise, and the independently derived inequality
//! constants all have to meet in the middle.

use ionmux::codecycle::{code_cycle_from_probability, ion_budget_without_repeaters};
use ionmux::entanglement::{attempt_success_probability, required_multiplex_product};
use ionmux::montecarlo::{simulate_bond, TrialConfig};
use ionmux::noise::{
    bell_coefficients, depolarizing_equivalent, ft_evaluate, NormalizationMode,
    FT_DECOHERENCE_COEFF, FT_DEPOL_COEFF, FT_RHS_DEFAULT,
};
use ionmux::params::{ChannelParams, Geometry, Params, Thresholds, TimingParams};
use ionmux::pauli::{
    build_unit_cell_circuit, derive_threshold_inequality, enumerate_first_order, Rational,
    StructuralCounts,
};

#[test]
fn inequality_constants_agree_across_modules() {
    // The rational identities behind the hard-coded constants.
    let c_eps = Rational::new(1152, 15);
    assert_eq!(Rational::new(168, 1) / c_eps, Rational::new(35, 16));
    assert_eq!(Rational::new(42, 1) / c_eps, Rational::new(35, 64));
    assert_eq!(
        (Rational::new(1, 1) - Rational::new(7, 10)) / c_eps,
        Rational::new(1, 256)
    );

    // The enumerated circuit reproduces them, and their f64 images are the
    // exact dyadics used by the noise module and the default thresholds.
    let report =
        enumerate_first_order(&build_unit_cell_circuit(StructuralCounts::default()).unwrap());
    let constants = derive_threshold_inequality(&report.total, Rational::new(7, 10));
    assert_eq!(constants.decoherence_coeff_f64(), FT_DECOHERENCE_COEFF);
    assert_eq!(constants.depol_coeff_f64(), FT_DEPOL_COEFF);
    assert_eq!(constants.rhs_f64(), FT_RHS_DEFAULT);
    assert_eq!(Thresholds::default().ft_rhs, FT_RHS_DEFAULT);
}

#[test]
fn channel_to_resources_pipeline() {
    let params = Params::preset_table2();
    let distance = 30.0;
    let p = attempt_success_probability(&params.channel, distance).p;
    assert!(p > 0.0 && p <= 0.5);

    // Attempt product, schedule, and ion budget consume the same p and
    // must agree on the temporal degree.
    let product = required_multiplex_product(p, params.thresholds.p_th).unwrap();
    let schedule =
        code_cycle_from_probability(&params.timing, &params.channel, distance, 5, 0.855).unwrap();
    assert!((schedule.temporal_m - product / 5.0).abs() < 1e-12 * product);
    let budget =
        ion_budget_without_repeaters(p, 5, 0.855, &params.timing, &params.geometry).unwrap();
    assert_eq!(budget.temporal_m, schedule.temporal_m);
    assert!((budget.memory_ions_real - 32.0 * product).abs() < 1e-9 * budget.memory_ions_real);

    // A seeded run at the ceiled degrees clears the threshold.
    let cfg = TrialConfig {
        p,
        temporal_m: schedule.temporal_m.ceil() as u32,
        spatial_m: 5,
        trials: 20_000,
        seed: 77,
        ..TrialConfig::default()
    };
    let est = simulate_bond(&cfg).unwrap();
    assert!(est.analytic >= 0.855);
    assert!(est.z_score.abs() < 4.0);
}

#[test]
fn heralded_state_feeds_the_inequality() {
    let timing = TimingParams::table2();
    let geometry = Geometry {
        inter_site_distance_km: 1e-9,
        ..Geometry::default()
    };
    let channel = ChannelParams::ideal();
    let p = attempt_success_probability(&channel, geometry.inter_site_distance_km).p;
    let schedule = code_cycle_from_probability(
        &timing,
        &channel,
        geometry.inter_site_distance_km,
        10,
        0.855,
    )
    .unwrap();
    let t_ratio = schedule.time_step / timing.tau_decoherence();

    // A nearly ideal heralded pair at adjacent-module distances keeps the
    // system inside the tolerance region for a 1e-4 gate error.
    let coeffs = bell_coefficients(0.999, 1e-4, NormalizationMode::Trace).unwrap();
    let eval = ft_evaluate(1e-4, t_ratio, coeffs.beta1, FT_RHS_DEFAULT);
    assert!(eval.satisfied, "lhs = {}", eval.lhs);
    assert!(p > 0.49);

    // Degrading the channel pushes it out.
    let coeffs = bell_coefficients(0.5, 0.2, NormalizationMode::Trace).unwrap();
    let eval = ft_evaluate(1e-4, t_ratio, coeffs.beta1, FT_RHS_DEFAULT);
    assert!(!eval.satisfied);
    let d = depolarizing_equivalent(&coeffs).unwrap();
    assert!(d.pauli_error_rate > 0.0);
}
