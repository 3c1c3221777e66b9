//! Validated physical parameters and named constants.
//!
//! Configuration files are plain TOML with four sections (`timing`,
//! `channel`, `geometry`, `thresholds`). Timings are written in
//! microseconds and distances in kilometres, which is how the quantities
//! are usually quoted; every formula in the crate consumes SI values
//! through the accessor methods (`tau()`, `inter_site_distance_m()`, ...)
//! so unit conversion happens in exactly one place per field.
//!
//! All parameter structs are plain data and immutable after validation;
//! they are safe to share across threads.

// Validators negate comparisons so that NaN fails every bound.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT_M_PER_S: f64 = 299_792_458.0;

const US_TO_S: f64 = 1e-6;

/// A parameter bundle failed validation. Collects every violated
/// invariant rather than stopping at the first.
#[derive(Debug, Clone, Error)]
#[error("invalid configuration:\n{}", .violations.join("\n"))]
pub struct ValidationError {
    pub violations: Vec<String>,
}

/// Configuration file errors: unreadable TOML or violated invariants.
#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("config parse error: {0}")]
    Parse(#[from] toml::de::Error),
    #[error(transparent)]
    Invalid(#[from] ValidationError),
}

/// Clock, gate, measurement, and lifetime durations of a trapped-ion module.
///
/// Stored in microseconds exactly as written in the config file; use the
/// second-valued accessors in formulas.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimingParams {
    /// Clock cycle duration (one entanglement attempt slot).
    pub tau_us: f64,
    /// Single-qubit gate time.
    pub tau_a_us: f64,
    /// Two-qubit gate time.
    pub tau_b_us: f64,
    /// Qubit measurement time.
    pub tau_d_us: f64,
    /// Memory-ion lifetime, if characterized.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau_m_us: Option<f64>,
    /// Communication-ion lifetime, if characterized. Only consumed by the
    /// precondition check that it exceeds one time step.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau_c_us: Option<f64>,
    /// Qubit decoherence time entering the fault-tolerance inequality.
    pub tau_decoherence_us: f64,
    /// Refractive index of the optical fiber between modules.
    pub refractive_index: f64,
}

impl TimingParams {
    /// Typical trapped-ion values: τ = 10 μs, τ_a = 1 μs, τ_b = 10 μs,
    /// τ_d = 30 μs, n = 1.5. The decoherence time defaults to 1 s, a
    /// round nominal value; override it when studying the decoherence
    /// term specifically.
    pub fn table2() -> Self {
        TimingParams {
            tau_us: 10.0,
            tau_a_us: 1.0,
            tau_b_us: 10.0,
            tau_d_us: 30.0,
            tau_m_us: None,
            tau_c_us: None,
            tau_decoherence_us: 1e6,
            refractive_index: 1.5,
        }
    }

    /// Clock cycle duration in seconds.
    pub fn tau(&self) -> f64 {
        self.tau_us * US_TO_S
    }

    /// Single-qubit gate time in seconds.
    pub fn tau_a(&self) -> f64 {
        self.tau_a_us * US_TO_S
    }

    /// Two-qubit gate time in seconds.
    pub fn tau_b(&self) -> f64 {
        self.tau_b_us * US_TO_S
    }

    /// Qubit measurement time in seconds.
    pub fn tau_d(&self) -> f64 {
        self.tau_d_us * US_TO_S
    }

    /// Memory-ion lifetime in seconds, if set.
    pub fn tau_m(&self) -> Option<f64> {
        self.tau_m_us.map(|v| v * US_TO_S)
    }

    /// Communication-ion lifetime in seconds, if set.
    pub fn tau_c(&self) -> Option<f64> {
        self.tau_c_us.map(|v| v * US_TO_S)
    }

    /// Qubit decoherence time in seconds.
    pub fn tau_decoherence(&self) -> f64 {
        self.tau_decoherence_us * US_TO_S
    }

    fn check(&self, out: &mut Vec<String>) {
        let durations = [
            ("timing.tau_us", self.tau_us),
            ("timing.tau_a_us", self.tau_a_us),
            ("timing.tau_b_us", self.tau_b_us),
            ("timing.tau_d_us", self.tau_d_us),
            ("timing.tau_decoherence_us", self.tau_decoherence_us),
        ];
        for (name, v) in durations {
            if !(v > 0.0 && v.is_finite()) {
                out.push(format!("{name}: duration must be > 0 (got {v})"));
            }
        }
        for (name, v) in [
            ("timing.tau_m_us", self.tau_m_us),
            ("timing.tau_c_us", self.tau_c_us),
        ] {
            if let Some(v) = v {
                if !(v > 0.0 && v.is_finite()) {
                    out.push(format!("{name}: duration must be > 0 (got {v})"));
                }
            }
        }
        if !(self.refractive_index >= 1.0 && self.refractive_index.is_finite()) {
            out.push(format!(
                "timing.refractive_index: must be >= 1 (got {})",
                self.refractive_index
            ));
        }
    }
}

impl Default for TimingParams {
    fn default() -> Self {
        Self::table2()
    }
}

/// Optical-link efficiencies and excess noise of the photonic channel.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChannelParams {
    /// Collection and coupling efficiency, in (0, 1].
    pub eta_cc: f64,
    /// Detection efficiency, in (0, 1].
    pub eta_det: f64,
    /// Fiber attenuation in dB/km.
    pub alpha_att_db_per_km: f64,
    /// Excess photons per mode (background, dark counts), in [0, 1).
    pub excess_noise_pd: f64,
    /// Interference visibility in [0, 1]. Stored and validated; the heralded
    /// state model in [`crate::noise`] assumes perfect visibility and does
    /// not consume it.
    pub visibility: f64,
}

impl ChannelParams {
    /// Ideal collection and detection, 0.2 dB/km fiber, no excess noise.
    pub fn ideal() -> Self {
        ChannelParams {
            eta_cc: 1.0,
            eta_det: 1.0,
            alpha_att_db_per_km: 0.2,
            excess_noise_pd: 0.0,
            visibility: 1.0,
        }
    }

    fn check(&self, out: &mut Vec<String>) {
        for (name, v) in [
            ("channel.eta_cc", self.eta_cc),
            ("channel.eta_det", self.eta_det),
        ] {
            if !(v > 0.0) {
                out.push(format!("{name}: efficiency must be > 0 (got {v})"));
            } else if !(v <= 1.0) {
                out.push(format!("{name}: efficiency must be <= 1 (got {v})"));
            }
        }
        if !(self.alpha_att_db_per_km >= 0.0 && self.alpha_att_db_per_km.is_finite()) {
            out.push(format!(
                "channel.alpha_att_db_per_km: must be >= 0 (got {})",
                self.alpha_att_db_per_km
            ));
        }
        if !(self.excess_noise_pd >= 0.0) {
            out.push(format!(
                "channel.excess_noise_pd: P_d must be >= 0 (got {})",
                self.excess_noise_pd
            ));
        } else if !(self.excess_noise_pd < 1.0) {
            out.push(format!(
                "channel.excess_noise_pd: P_d must be < 1 (got {})",
                self.excess_noise_pd
            ));
        }
        if !(self.visibility >= 0.0 && self.visibility <= 1.0) {
            out.push(format!(
                "channel.visibility: must be in [0, 1] (got {})",
                self.visibility
            ));
        }
    }
}

impl Default for ChannelParams {
    fn default() -> Self {
        Self::ideal()
    }
}

/// Site layout: inter-module distance, repeater count, and the number of
/// lattice bonds built per half cycle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Geometry {
    /// Distance between adjacent lattice sites (modules), km.
    pub inter_site_distance_km: f64,
    /// Number of repeaters inserted between adjacent sites.
    pub n_repeaters: u32,
    /// Remote bonds generated per two-layer half cycle.
    pub bond_count: u32,
    /// Ions engaged per bond across both endpoints; fixed at 2 × bond_count.
    pub site_pair_factor: u32,
}

impl Geometry {
    fn check(&self, out: &mut Vec<String>) {
        if !(self.inter_site_distance_km >= 0.0 && self.inter_site_distance_km.is_finite()) {
            out.push(format!(
                "geometry.inter_site_distance_km: must be >= 0 (got {})",
                self.inter_site_distance_km
            ));
        }
        if self.bond_count < 1 {
            out.push("geometry.bond_count: must be >= 1".to_string());
        }
        if self.site_pair_factor != 2 * self.bond_count {
            out.push(format!(
                "geometry.site_pair_factor: must equal 2 * bond_count = {} (got {})",
                2 * self.bond_count,
                self.site_pair_factor
            ));
        }
    }

    /// Distance between adjacent sites in meters.
    pub fn inter_site_distance_m(&self) -> f64 {
        self.inter_site_distance_km * 1e3
    }
}

impl Default for Geometry {
    fn default() -> Self {
        // Default distance is 1 μm: modules side by side, where the
        // heralding delay is negligible against every gate time.
        Geometry {
            inter_site_distance_km: 1e-9,
            n_repeaters: 0,
            bond_count: 16,
            site_pair_factor: 32,
        }
    }
}

/// Known tolerance thresholds of the lattice, consumed as constants.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Thresholds {
    /// Required bond success probability, 1 − bond_fail_adaptive.
    pub p_th: f64,
    /// Maximum tolerable heralded bond failure rate with adaptive
    /// measurement.
    pub bond_fail_adaptive: f64,
    /// Maximum tolerable bond failure rate without adaptive measurement.
    pub bond_fail_nonadaptive: f64,
    /// Measurement error threshold in the absence of bond failures.
    pub measurement_error: f64,
    /// Minimum check-operator expectation value for fault tolerance.
    pub stabilizer_floor: f64,
    /// Right-hand side of the normalized noise-tolerance inequality,
    /// (1 − stabilizer_floor) / (1152/15). Exactly 1/256 for the default
    /// floor of 0.70.
    pub ft_rhs: f64,
}

impl Thresholds {
    fn check(&self, out: &mut Vec<String>) {
        for (name, v) in [
            ("thresholds.p_th", self.p_th),
            ("thresholds.bond_fail_adaptive", self.bond_fail_adaptive),
            (
                "thresholds.bond_fail_nonadaptive",
                self.bond_fail_nonadaptive,
            ),
            ("thresholds.measurement_error", self.measurement_error),
            ("thresholds.ft_rhs", self.ft_rhs),
        ] {
            if !(v > 0.0 && v < 1.0) {
                out.push(format!("{name}: must be in (0, 1) (got {v})"));
            }
        }
        if !(self.stabilizer_floor > 0.0 && self.stabilizer_floor <= 1.0) {
            out.push(format!(
                "thresholds.stabilizer_floor: must be in (0, 1] (got {})",
                self.stabilizer_floor
            ));
        }
        if (self.p_th - (1.0 - self.bond_fail_adaptive)).abs() > 1e-12 {
            out.push(format!(
                "thresholds.p_th: must equal 1 - bond_fail_adaptive = {} (got {})",
                1.0 - self.bond_fail_adaptive,
                self.p_th
            ));
        }
        // 1152/15 = 76.8 is the gate-error coefficient of the un-normalized
        // inequality; see crate::pauli for the exact rational derivation.
        let expected_rhs = (1.0 - self.stabilizer_floor) / 76.8;
        if (self.ft_rhs - expected_rhs).abs() > 1e-12 {
            out.push(format!(
                "thresholds.ft_rhs: must equal (1 - stabilizer_floor)/76.8 = {expected_rhs} (got {})",
                self.ft_rhs
            ));
        }
    }
}

impl Default for Thresholds {
    fn default() -> Self {
        Thresholds {
            p_th: 0.855,
            bond_fail_adaptive: 0.145,
            bond_fail_nonadaptive: 0.065,
            measurement_error: 0.029,
            stabilizer_floor: 0.70,
            ft_rhs: 0.003_906_25,
        }
    }
}

/// Degrees of multiplexing for remote Bell-pair generation: `spatial_m_cap`
/// parallel attempts per clock cycle over `temporal_m` cycles. The temporal
/// degree is real-valued for analytics; simulation uses the integer ceiling.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MultiplexPlan {
    pub spatial_m_cap: u32,
    pub temporal_m: f64,
}

impl MultiplexPlan {
    pub fn new(spatial_m_cap: u32, temporal_m: f64) -> Result<Self, ValidationError> {
        let plan = MultiplexPlan {
            spatial_m_cap,
            temporal_m,
        };
        plan.validate()?;
        Ok(plan)
    }

    pub fn validate(&self) -> Result<(), ValidationError> {
        let mut violations = Vec::new();
        if self.spatial_m_cap < 1 {
            violations.push("multiplex.spatial_m_cap: must be >= 1".to_string());
        }
        if !(self.temporal_m > 0.0 && self.temporal_m.is_finite()) {
            violations.push(format!(
                "multiplex.temporal_m: must be > 0 (got {})",
                self.temporal_m
            ));
        }
        if violations.is_empty() {
            Ok(())
        } else {
            Err(ValidationError { violations })
        }
    }

    /// Integer temporal degree for simulation.
    pub fn temporal_m_ceil(&self) -> u64 {
        self.temporal_m.ceil() as u64
    }
}

/// The full validated parameter bundle.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Params {
    #[serde(default)]
    pub timing: TimingParams,
    #[serde(default)]
    pub channel: ChannelParams,
    #[serde(default)]
    pub geometry: Geometry,
    #[serde(default)]
    pub thresholds: Thresholds,
}

impl Params {
    /// The built-in preset: typical timings, ideal channel, adjacent
    /// modules, default thresholds.
    pub fn preset_table2() -> Self {
        Params::default()
    }

    /// Check every invariant, reporting all violations at once.
    pub fn validate(&self) -> Result<(), ValidationError> {
        let mut violations = Vec::new();
        self.timing.check(&mut violations);
        self.channel.check(&mut violations);
        self.geometry.check(&mut violations);
        self.thresholds.check(&mut violations);
        if violations.is_empty() {
            Ok(())
        } else {
            Err(ValidationError { violations })
        }
    }

    /// Parse a TOML config (missing sections and fields fall back to the
    /// preset defaults) and validate it.
    pub fn from_toml_str(s: &str) -> Result<Self, ConfigError> {
        let params: Params = toml::from_str(s)?;
        params.validate()?;
        Ok(params)
    }

    /// Canonical TOML form. Values round-trip exactly through
    /// [`Params::from_toml_str`].
    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("parameter bundle serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table2_preset_values() {
        let t = TimingParams::table2();
        assert_eq!(t.tau_us, 10.0);
        assert_eq!(t.tau_a_us, 1.0);
        assert_eq!(t.tau_b_us, 10.0);
        assert_eq!(t.tau_d_us, 30.0);
        assert_eq!(t.refractive_index, 1.5);
        Params::preset_table2().validate().unwrap();
    }

    #[test]
    fn si_accessors_convert_once() {
        let t = TimingParams::table2();
        assert!((t.tau() - 1e-5).abs() < 1e-20);
        assert!((t.tau_d() - 3e-5).abs() < 1e-20);
        assert_eq!(t.tau_m(), None);
    }

    #[test]
    fn zero_efficiency_rejected() {
        let mut p = Params::preset_table2();
        p.channel.eta_det = 0.0;
        let err = p.validate().unwrap_err();
        assert!(err.to_string().contains("efficiency must be > 0"), "{err}");
    }

    #[test]
    fn unit_excess_noise_rejected() {
        let mut p = Params::preset_table2();
        p.channel.excess_noise_pd = 1.0;
        let err = p.validate().unwrap_err();
        assert!(err.to_string().contains("P_d must be < 1"), "{err}");
    }

    #[test]
    fn violations_are_collected_not_short_circuited() {
        let mut p = Params::preset_table2();
        p.channel.eta_cc = 0.0;
        p.timing.tau_us = -1.0;
        p.geometry.site_pair_factor = 31;
        let err = p.validate().unwrap_err();
        assert_eq!(err.violations.len(), 3, "{err}");
    }

    #[test]
    fn threshold_consistency_enforced() {
        let mut p = Params::preset_table2();
        p.thresholds.p_th = 0.9; // no longer 1 - 0.145
        assert!(p.validate().is_err());

        let mut p = Params::preset_table2();
        p.thresholds.stabilizer_floor = 0.8; // ft_rhs must follow the floor
        assert!(p.validate().is_err());
        p.thresholds.ft_rhs = (1.0 - 0.8) / 76.8;
        p.validate().unwrap();
    }

    #[test]
    fn default_thresholds_satisfy_exact_identities() {
        let t = Thresholds::default();
        assert_eq!(t.p_th, 1.0 - t.bond_fail_adaptive);
        assert_eq!(t.ft_rhs, 0.00390625);
    }

    #[test]
    fn partial_config_fills_defaults() {
        let p = Params::from_toml_str("[timing]\ntau_us = 5.0\ntau_a_us = 1.0\ntau_b_us = 10.0\ntau_d_us = 30.0\ntau_decoherence_us = 1e6\nrefractive_index = 1.5\n").unwrap();
        assert_eq!(p.timing.tau_us, 5.0);
        assert_eq!(p.channel, ChannelParams::ideal());
        let p = Params::from_toml_str("").unwrap();
        assert_eq!(p, Params::preset_table2());
    }

    #[test]
    fn config_round_trip_is_identity() {
        // A sweep of awkward values, including ones that do not have short
        // decimal expansions.
        let mut rng_state = 0x12345u64;
        let mut next = move || {
            rng_state ^= rng_state << 13;
            rng_state ^= rng_state >> 7;
            rng_state ^= rng_state << 17;
            (rng_state >> 11) as f64 / (1u64 << 53) as f64
        };
        for _ in 0..200 {
            let mut p = Params::preset_table2();
            p.timing.tau_us = 0.1 + 100.0 * next();
            p.timing.tau_b_us = 0.1 + 100.0 * next();
            p.timing.tau_c_us = Some(1.0 + 1e6 * next());
            p.timing.tau_decoherence_us = 1.0 + 1e9 * next();
            p.channel.eta_cc = 0.01 + 0.99 * next();
            p.channel.excess_noise_pd = 0.999 * next();
            p.geometry.inter_site_distance_km = 200.0 * next();
            p.validate().unwrap();
            let text = p.to_toml_string();
            let back = Params::from_toml_str(&text).unwrap();
            assert_eq!(back, p, "round trip changed the bundle:\n{text}");
        }
    }

    #[test]
    fn unknown_keys_rejected() {
        assert!(Params::from_toml_str("[timing]\ntau_microsec = 10.0").is_err());
    }

    #[test]
    fn multiplex_plan_bounds() {
        assert!(MultiplexPlan::new(0, 1.0).is_err());
        assert!(MultiplexPlan::new(1, 0.0).is_err());
        let plan = MultiplexPlan::new(3, 2.4).unwrap();
        assert_eq!(plan.temporal_m_ceil(), 3);
    }
}
