//! Python bindings: the analytic operations and the coefficient audit as
//! plain functions, plus dict-shaped reports for the composite results.
//!
//! Build with `cargo build -p ionmux-py --release`; the resulting
//! `libionmux_py.so` imports as the module `ionmux_py` (see
//! `python/smoke_test.py`).

use ionmux::codecycle;
use ionmux::entanglement;
use ionmux::montecarlo::{self, TrialConfig};
use ionmux::noise;
use ionmux::params::{ChannelParams, Geometry, Thresholds, TimingParams};
use ionmux::pauli;
use num_traits::ToPrimitive;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn value_err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn channel(eta_cc: f64, eta_det: f64, alpha_att_db_per_km: f64) -> ChannelParams {
    ChannelParams {
        eta_cc,
        eta_det,
        alpha_att_db_per_km,
        ..ChannelParams::ideal()
    }
}

fn timing(tau_us: f64, tau_b_us: f64, tau_d_us: f64) -> TimingParams {
    TimingParams {
        tau_us,
        tau_b_us,
        tau_d_us,
        ..TimingParams::table2()
    }
}

/// Success probability of one remote Bell-pair attempt over `distance_km`.
#[pyfunction]
#[pyo3(signature = (distance_km, eta_cc = 1.0, eta_det = 1.0, alpha_att_db_per_km = 0.2))]
fn attempt_success_probability(
    distance_km: f64,
    eta_cc: f64,
    eta_det: f64,
    alpha_att_db_per_km: f64,
) -> f64 {
    entanglement::attempt_success_probability(
        &channel(eta_cc, eta_det, alpha_att_db_per_km),
        distance_km,
    )
    .p
}

/// 1 − (1−p)^(m·M).
#[pyfunction]
fn multiplexed_success(p: f64, temporal_m: f64, spatial_m: f64) -> f64 {
    entanglement::multiplexed_success_product(p, temporal_m * spatial_m)
}

/// Attempt product m·M required to reach `p_th`.
#[pyfunction]
fn required_multiplex_product(p: f64, p_th: f64) -> PyResult<f64> {
    entanglement::required_multiplex_product(p, p_th).map_err(value_err)
}

/// Round-trip heralding delay n·L/c in seconds.
#[pyfunction]
fn heralding_time(distance_km: f64, refractive_index: f64) -> f64 {
    entanglement::heralding_time(distance_km, refractive_index)
}

/// (p0, p0_prime) for an n-repeater chain over `distance_km`.
#[pyfunction]
#[pyo3(signature = (distance_km, n_repeaters, eta_cc = 1.0, eta_det = 1.0, alpha_att_db_per_km = 0.2))]
fn per_hop_success_with_repeaters(
    distance_km: f64,
    n_repeaters: u32,
    eta_cc: f64,
    eta_det: f64,
    alpha_att_db_per_km: f64,
) -> (f64, f64) {
    let r = entanglement::per_hop_success_with_repeaters(
        &channel(eta_cc, eta_det, alpha_att_db_per_km),
        distance_km,
        n_repeaters,
    );
    (r.p0, r.p0_prime)
}

/// End-to-end chain success [1 − (1−p0')^(m·M')]^(n+1).
#[pyfunction]
fn chain_success(p0_prime: f64, temporal_m: f64, spatial_m_prime: f64, n_repeaters: u32) -> f64 {
    entanglement::chain_success(p0_prime, temporal_m, spatial_m_prime, n_repeaters)
}

/// Spatial degree M' so the n-repeater chain reaches p_th at temporal
/// degree m.
#[pyfunction]
fn repeater_spatial_multiplex(
    p0_prime: f64,
    temporal_m: f64,
    p_th: f64,
    n_repeaters: u32,
) -> PyResult<f64> {
    entanglement::repeater_spatial_multiplex(p0_prime, temporal_m, p_th, n_repeaters)
        .map_err(value_err)
}

/// Code-cycle stage times for attempt probability `p` at spatial degree
/// `spatial_m`: dict with time_step, tau1..tau4, temporal_m.
#[pyfunction]
#[pyo3(signature = (p, spatial_m, p_th = 0.855, tau_us = 10.0, tau_b_us = 10.0, tau_d_us = 30.0, tau_h_s = 0.0))]
#[allow(clippy::too_many_arguments)]
fn code_cycle<'py>(
    py: Python<'py>,
    p: f64,
    spatial_m: u32,
    p_th: f64,
    tau_us: f64,
    tau_b_us: f64,
    tau_d_us: f64,
    tau_h_s: f64,
) -> PyResult<Bound<'py, PyDict>> {
    let temporal_m =
        entanglement::required_multiplex_product(p, p_th).map_err(value_err)? / spatial_m as f64;
    let s =
        codecycle::code_cycle_schedule(&timing(tau_us, tau_b_us, tau_d_us), temporal_m, tau_h_s);
    let d = PyDict::new(py);
    d.set_item("time_step", s.time_step)?;
    d.set_item("tau1", s.tau1)?;
    d.set_item("tau2", s.tau2)?;
    d.set_item("tau3", s.tau3)?;
    d.set_item("tau4", s.tau4)?;
    d.set_item("temporal_m", s.temporal_m)?;
    Ok(d)
}

/// Memory/communication ion budget without repeaters.
#[pyfunction]
#[pyo3(signature = (p, spatial_m, p_th = 0.855, tau_us = 10.0, tau_b_us = 10.0))]
fn ion_budget<'py>(
    py: Python<'py>,
    p: f64,
    spatial_m: u32,
    p_th: f64,
    tau_us: f64,
    tau_b_us: f64,
) -> PyResult<Bound<'py, PyDict>> {
    let b = codecycle::ion_budget_without_repeaters(
        p,
        spatial_m,
        p_th,
        &timing(tau_us, tau_b_us, 30.0),
        &Geometry::default(),
    )
    .map_err(value_err)?;
    let d = PyDict::new(py);
    d.set_item("memory", b.memory_ions_real)?;
    d.set_item("communication", b.communication_ions_real)?;
    d.set_item("reuse_window_j", b.reuse_window_j)?;
    d.set_item("temporal_m", b.temporal_m)?;
    Ok(d)
}

/// Cumulative ion budget across an n-repeater chain.
#[pyfunction]
#[pyo3(signature = (distance_km, n_repeaters, temporal_m, p_th = 0.855))]
fn repeater_ion_budget<'py>(
    py: Python<'py>,
    distance_km: f64,
    n_repeaters: u32,
    temporal_m: f64,
    p_th: f64,
) -> PyResult<Bound<'py, PyDict>> {
    let b = codecycle::ion_budget_with_repeaters(
        &ChannelParams::ideal(),
        distance_km,
        n_repeaters,
        temporal_m,
        p_th,
        &TimingParams::table2(),
        &Geometry::default(),
    )
    .map_err(value_err)?;
    let d = PyDict::new(py);
    d.set_item("memory", b.memory_ions_real)?;
    d.set_item("communication", b.communication_ions_real)?;
    d.set_item("spatial_m_prime", b.spatial_m_real)?;
    Ok(d)
}

/// Heralded-state mixture weights (beta1, beta2, norm).
#[pyfunction]
#[pyo3(signature = (eta, pd, mode = "trace"))]
fn bell_coefficients(eta: f64, pd: f64, mode: &str) -> PyResult<(f64, f64, f64)> {
    let mode = match mode {
        "trace" => noise::NormalizationMode::Trace,
        "two-term" => noise::NormalizationMode::TwoTerm,
        other => return Err(PyValueError::new_err(format!("unknown mode '{other}'"))),
    };
    let c = noise::bell_coefficients(eta, pd, mode).map_err(value_err)?;
    Ok((c.beta1, c.beta2, c.norm))
}

/// (delta, per-Pauli error rate) of the equivalent depolarizing channel.
#[pyfunction]
fn depolarizing_equivalent(eta: f64, pd: f64) -> PyResult<(f64, f64)> {
    let c =
        noise::bell_coefficients(eta, pd, noise::NormalizationMode::Trace).map_err(value_err)?;
    let d = noise::depolarizing_equivalent(&c).map_err(value_err)?;
    Ok((d.delta, d.pauli_error_rate))
}

/// Evaluate the noise-tolerance inequality.
#[pyfunction]
#[pyo3(signature = (eps, t_over_tau_d, beta1, rhs = noise::FT_RHS_DEFAULT))]
fn ft_evaluate<'py>(
    py: Python<'py>,
    eps: f64,
    t_over_tau_d: f64,
    beta1: f64,
    rhs: f64,
) -> PyResult<Bound<'py, PyDict>> {
    let e = noise::ft_evaluate(eps, t_over_tau_d, beta1, rhs);
    let d = PyDict::new(py);
    d.set_item("lhs", e.lhs)?;
    d.set_item("rhs", e.rhs)?;
    d.set_item("satisfied", e.satisfied)?;
    d.set_item("eps_term", e.eps_term)?;
    d.set_item("decoherence_term", e.decoherence_term)?;
    d.set_item("depolarizing_term", e.depolarizing_term)?;
    Ok(d)
}

fn rational_tuple(r: pauli::Rational) -> (i64, i64) {
    (*r.numer(), *r.denom())
}

/// Run the unit-cell error enumeration and report the coefficient audit.
#[pyfunction]
fn verify_appendix(py: Python<'_>) -> PyResult<Bound<'_, PyDict>> {
    let circuit =
        pauli::build_unit_cell_circuit(pauli::StructuralCounts::default()).map_err(value_err)?;
    let report = pauli::enumerate_first_order(&circuit);
    let constants = pauli::derive_threshold_inequality(&report.total, pauli::Rational::new(7, 10));
    let d = PyDict::new(py);
    let vec_tuple = |v: &pauli::CoefficientVector| {
        (
            rational_tuple(v.eps),
            rational_tuple(v.decoherence),
            rational_tuple(v.depol),
        )
    };
    d.set_item("type1", vec_tuple(&report.type1))?;
    d.set_item("type2", vec_tuple(&report.type2))?;
    d.set_item("type3", vec_tuple(&report.type3))?;
    d.set_item("total", vec_tuple(&report.total))?;
    d.set_item("matches", report.matches_reference())?;
    d.set_item(
        "decoherence_coeff",
        rational_tuple(constants.decoherence_coeff),
    )?;
    d.set_item("depol_coeff", rational_tuple(constants.depol_coeff))?;
    d.set_item("rhs", rational_tuple(constants.rhs))?;
    d.set_item("rhs_float", constants.rhs.to_f64().unwrap())?;
    Ok(d)
}

fn estimate_dict<'py>(
    py: Python<'py>,
    e: &montecarlo::EstimateWithCI,
) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("p_hat", e.p_hat)?;
    d.set_item("ci_low", e.ci_low)?;
    d.set_item("ci_high", e.ci_high)?;
    d.set_item("analytic", e.analytic)?;
    d.set_item("z", e.z_score)?;
    d.set_item("trials", e.trials)?;
    d.set_item("seed", e.seed)?;
    Ok(d)
}

/// Seeded Monte Carlo estimate of the multiplexed bond success.
#[pyfunction]
#[pyo3(signature = (p, temporal_m = 1, spatial_m = 1, trials = 10_000, seed = 0))]
fn simulate_bond<'py>(
    py: Python<'py>,
    p: f64,
    temporal_m: u32,
    spatial_m: u32,
    trials: u64,
    seed: u64,
) -> PyResult<Bound<'py, PyDict>> {
    let cfg = TrialConfig {
        p,
        temporal_m,
        spatial_m,
        trials,
        seed,
        ..TrialConfig::default()
    };
    let e = montecarlo::simulate_bond(&cfg).map_err(value_err)?;
    estimate_dict(py, &e)
}

/// Seeded Monte Carlo estimate of the n-repeater chain success.
#[pyfunction]
#[pyo3(signature = (p, n_repeaters, temporal_m = 1, spatial_m = 1, trials = 10_000, seed = 0))]
fn simulate_chain<'py>(
    py: Python<'py>,
    p: f64,
    n_repeaters: u32,
    temporal_m: u32,
    spatial_m: u32,
    trials: u64,
    seed: u64,
) -> PyResult<Bound<'py, PyDict>> {
    let cfg = TrialConfig {
        p,
        temporal_m,
        spatial_m,
        n_repeaters,
        trials,
        seed,
        ..TrialConfig::default()
    };
    let e = montecarlo::simulate_chain(&cfg).map_err(value_err)?;
    estimate_dict(py, &e)
}

/// Seeded Monte Carlo of a full two-layer round of bond generation.
#[pyfunction]
#[pyo3(signature = (p, temporal_m = 1, spatial_m = 1, bond_count = 16, trials = 10_000, seed = 0))]
fn simulate_two_layer<'py>(
    py: Python<'py>,
    p: f64,
    temporal_m: u32,
    spatial_m: u32,
    bond_count: u32,
    trials: u64,
    seed: u64,
) -> PyResult<Bound<'py, PyDict>> {
    let cfg = TrialConfig {
        p,
        temporal_m,
        spatial_m,
        bond_count,
        trials,
        seed,
        ..TrialConfig::default()
    };
    let s = montecarlo::simulate_two_layer(&cfg, &Thresholds::default()).map_err(value_err)?;
    let d = PyDict::new(py);
    d.set_item("mean_failures", s.mean_failures)?;
    d.set_item("failure_counts", s.failure_counts)?;
    d.set_item("fraction_above_adaptive", s.fraction_above_adaptive)?;
    d.set_item("per_bond_failure", estimate_dict(py, &s.per_bond_failure)?)?;
    Ok(d)
}

#[pymodule]
fn ionmux_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(attempt_success_probability, m)?)?;
    m.add_function(wrap_pyfunction!(multiplexed_success, m)?)?;
    m.add_function(wrap_pyfunction!(required_multiplex_product, m)?)?;
    m.add_function(wrap_pyfunction!(heralding_time, m)?)?;
    m.add_function(wrap_pyfunction!(per_hop_success_with_repeaters, m)?)?;
    m.add_function(wrap_pyfunction!(chain_success, m)?)?;
    m.add_function(wrap_pyfunction!(repeater_spatial_multiplex, m)?)?;
    m.add_function(wrap_pyfunction!(code_cycle, m)?)?;
    m.add_function(wrap_pyfunction!(ion_budget, m)?)?;
    m.add_function(wrap_pyfunction!(repeater_ion_budget, m)?)?;
    m.add_function(wrap_pyfunction!(bell_coefficients, m)?)?;
    m.add_function(wrap_pyfunction!(depolarizing_equivalent, m)?)?;
    m.add_function(wrap_pyfunction!(ft_evaluate, m)?)?;
    m.add_function(wrap_pyfunction!(verify_appendix, m)?)?;
    m.add_function(wrap_pyfunction!(simulate_bond, m)?)?;
    m.add_function(wrap_pyfunction!(simulate_chain, m)?)?;
    m.add_function(wrap_pyfunction!(simulate_two_layer, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
