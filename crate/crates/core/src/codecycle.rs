//! Code-cycle timing schedule and ion resource counts for the bi-layered
//! lattice construction, with and without repeater chains.
//!
//! One code cycle is: build both layers (5 time steps), measure layer I,
//! rebuild the inter-layer connections (5 more time steps), measure
//! layer II. Stage times are computed from closed forms, not accumulated,
//! so the identity τ₄ = 10T + 2τ_d holds bit-exactly.

use crate::entanglement::{
    attempt_success_probability, heralding_time, per_hop_success_with_repeaters,
    required_multiplex_product, AnalyticsError,
};
use crate::params::{ChannelParams, Geometry, TimingParams};

/// One time step of the generation schedule: T = mτ + τ_H + 3τ_b.
///
/// The 3τ_b term is the SWAP (three CNOTs) that parks a freshly
/// entangled communication ion into a memory ion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeStep {
    pub seconds: f64,
    /// Set when a communication-ion lifetime is configured and does not
    /// exceed the step duration, breaking the protocol precondition.
    pub comm_lifetime_warning: bool,
}

/// Cumulative stage times of one code cycle.
#[derive(Debug, Clone, PartialEq)]
pub struct CodeCycleSchedule {
    /// Time-step duration T.
    pub time_step: f64,
    /// Both layers built: 5T.
    pub tau1: f64,
    /// Layer I measured: 5T + τ_d.
    pub tau2: f64,
    /// Layers reconnected: 10T + τ_d.
    pub tau3: f64,
    /// Layer II measured, cycle complete: 10T + 2τ_d.
    pub tau4: f64,
    /// Temporal multiplexing degree used for T.
    pub temporal_m: f64,
    /// Spatial multiplexing degree the temporal degree was derived from,
    /// when the schedule came from a success probability.
    pub spatial_m: Option<u32>,
    pub comm_lifetime_warning: bool,
}

/// Memory and communication ion counts supporting one two-layer build.
///
/// Real-valued analytic counts are kept alongside their ceilings: the
/// requirement curves are continuous in the multiplexing degrees, while an
/// allocation has to be integral.
#[derive(Debug, Clone, PartialEq)]
pub struct IonBudget {
    pub memory_ions_real: f64,
    pub memory_ions: u64,
    pub communication_ions_real: f64,
    pub communication_ions: u64,
    pub reuse_window_j: u32,
    pub with_repeaters: bool,
    pub n_repeaters: u32,
    /// Temporal degree m used by the budget.
    pub temporal_m: f64,
    /// Spatial degree (M, or M′ per repeater segment) used by the budget.
    pub spatial_m_real: f64,
}

/// One row of the with/without-repeater comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct RepeaterComparisonRow {
    pub distance_km: f64,
    pub n_repeaters: u32,
    pub memory_without: f64,
    pub memory_with: f64,
    pub communication_without: f64,
    pub communication_with: f64,
}

/// T = mτ + τ_H + 3τ_b, flagging a configured communication-ion lifetime
/// that fails to cover the step.
pub fn time_step_duration(timing: &TimingParams, temporal_m: f64, tau_h: f64) -> TimeStep {
    let seconds = temporal_m * timing.tau() + tau_h + 3.0 * timing.tau_b();
    let comm_lifetime_warning = match timing.tau_c() {
        Some(tau_c) => tau_c <= seconds,
        None => false,
    };
    TimeStep {
        seconds,
        comm_lifetime_warning,
    }
}

/// Stage times of one code cycle at temporal degree `temporal_m`.
pub fn code_cycle_schedule(
    timing: &TimingParams,
    temporal_m: f64,
    tau_h: f64,
) -> CodeCycleSchedule {
    let step = time_step_duration(timing, temporal_m, tau_h);
    let t = step.seconds;
    let tau_d = timing.tau_d();
    CodeCycleSchedule {
        time_step: t,
        tau1: 5.0 * t,
        tau2: 5.0 * t + tau_d,
        tau3: 10.0 * t + tau_d,
        tau4: 10.0 * t + 2.0 * tau_d,
        temporal_m,
        spatial_m: None,
        comm_lifetime_warning: step.comm_lifetime_warning,
    }
}

/// Schedule with the temporal degree m(M, p) = log(1−p_th)/(M·log(1−p))
/// substituted, where p is the attempt success probability over the given
/// distance.
pub fn code_cycle_from_probability(
    timing: &TimingParams,
    channel: &ChannelParams,
    distance_km: f64,
    spatial_m: u32,
    p_th: f64,
) -> Result<CodeCycleSchedule, AnalyticsError> {
    let p = attempt_success_probability(channel, distance_km).p;
    let temporal_m = required_multiplex_product(p, p_th)? / spatial_m as f64;
    let tau_h = heralding_time(distance_km, timing.refractive_index);
    let mut schedule = code_cycle_schedule(timing, temporal_m, tau_h);
    schedule.spatial_m = Some(spatial_m);
    Ok(schedule)
}

/// Clock cycles after which a batch of communication ions is free again:
/// j = ⌈3τ_b/τ⌉. The ceiling is the conservative reading for ratios that
/// are not integral.
pub fn reuse_window(timing: &TimingParams) -> u32 {
    (3.0 * timing.tau_b() / timing.tau()).ceil() as u32
}

/// Ion counts for direct site-to-site generation at per-attempt
/// probability `p` and spatial degree `spatial_m`.
///
/// Memory scales with the full attempt budget m·M (every attempted pair is
/// parked), so it is independent of how the product is split; the
/// communication count reuses ion batches after `j` cycles and scales with
/// M·min(j, m).
pub fn ion_budget_without_repeaters(
    p: f64,
    spatial_m: u32,
    p_th: f64,
    timing: &TimingParams,
    geometry: &Geometry,
) -> Result<IonBudget, AnalyticsError> {
    let product = required_multiplex_product(p, p_th)?;
    let temporal_m = product / spatial_m as f64;
    let j = reuse_window(timing);
    let pair_factor = geometry.site_pair_factor as f64;
    let memory = pair_factor * product;
    let communication = pair_factor * spatial_m as f64 * temporal_m.min(j as f64);
    Ok(IonBudget {
        memory_ions_real: memory,
        memory_ions: memory.ceil() as u64,
        communication_ions_real: communication,
        communication_ions: communication.ceil() as u64,
        reuse_window_j: j,
        with_repeaters: false,
        n_repeaters: 0,
        temporal_m,
        spatial_m_real: spatial_m as f64,
    })
}

/// Cumulative ion counts across an n-repeater chain at temporal degree
/// `temporal_m`: each of the n+1 hops runs its own multiplexed generation
/// at the per-hop target p_th^(1/(n+1)).
pub fn ion_budget_with_repeaters(
    channel: &ChannelParams,
    distance_km: f64,
    n_repeaters: u32,
    temporal_m: f64,
    p_th: f64,
    timing: &TimingParams,
    geometry: &Geometry,
) -> Result<IonBudget, AnalyticsError> {
    let hops = n_repeaters as f64 + 1.0;
    let hop = per_hop_success_with_repeaters(channel, distance_km, n_repeaters);
    let per_hop_target = p_th.powf(1.0 / hops);
    let product = required_multiplex_product(hop.p0_prime, per_hop_target)?;
    let spatial_m_prime = product / temporal_m;
    let j = reuse_window(timing);
    let pair_factor = geometry.site_pair_factor as f64;
    let memory = pair_factor * hops * product;
    let communication = pair_factor * hops * spatial_m_prime * temporal_m.min(j as f64);
    Ok(IonBudget {
        memory_ions_real: memory,
        memory_ions: memory.ceil() as u64,
        communication_ions_real: communication,
        communication_ions: communication.ceil() as u64,
        reuse_window_j: j,
        with_repeaters: n_repeaters > 0,
        n_repeaters,
        temporal_m,
        spatial_m_real: spatial_m_prime,
    })
}

/// With/without-repeater resource table over a distance grid.
pub fn repeater_comparison_table(
    distances_km: &[f64],
    n_list: &[u32],
    temporal_m: f64,
    p_th: f64,
    timing: &TimingParams,
    geometry: &Geometry,
    channel: &ChannelParams,
) -> Result<Vec<RepeaterComparisonRow>, AnalyticsError> {
    let mut rows = Vec::with_capacity(distances_km.len() * n_list.len());
    for &l in distances_km {
        let p0 = attempt_success_probability(channel, l).p;
        let product = required_multiplex_product(p0, p_th)?;
        let spatial_m = product / temporal_m;
        let j = reuse_window(timing) as f64;
        let pair_factor = geometry.site_pair_factor as f64;
        let memory_without = pair_factor * product;
        let communication_without = pair_factor * spatial_m * temporal_m.min(j);
        for &n in n_list {
            let with =
                ion_budget_with_repeaters(channel, l, n, temporal_m, p_th, timing, geometry)?;
            rows.push(RepeaterComparisonRow {
                distance_km: l,
                n_repeaters: n,
                memory_without,
                memory_with: with.memory_ions_real,
                communication_without,
                communication_with: with.communication_ions_real,
            });
        }
    }
    Ok(rows)
}

/// The default comparison grid: 20 evenly spaced distances in (0, 200] km.
pub fn default_distance_grid() -> Vec<f64> {
    (1..=20).map(|k| k as f64 * 10.0).collect()
}
