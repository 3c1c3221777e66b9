//! Seeded stochastic validation of the closed-form success probabilities.
//!
//! Randomness contract: every trial draws from its own ChaCha8 stream
//! keyed by (master seed, trial index, lane index), where the lane is the
//! hop of a repeater chain or the bond of a two-layer round. Results are
//! therefore bit-reproducible for a given configuration and seed, no
//! matter how trials are ordered or distributed across workers.

use crate::entanglement::{chain_success, multiplexed_success};
use crate::params::Thresholds;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimulationError {
    #[error("invalid trial config: {0}")]
    InvalidConfig(String),
}

/// Inputs of one simulation run. `p` is the per-attempt success
/// probability (per hop when a repeater chain is simulated); `temporal_m`
/// and `spatial_m` are the integer multiplexing degrees.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialConfig {
    pub p: f64,
    pub temporal_m: u32,
    pub spatial_m: u32,
    pub n_repeaters: u32,
    pub bond_count: u32,
    pub trials: u64,
    pub seed: u64,
}

impl Default for TrialConfig {
    fn default() -> Self {
        TrialConfig {
            p: 0.5,
            temporal_m: 1,
            spatial_m: 1,
            n_repeaters: 0,
            bond_count: 16,
            trials: 10_000,
            seed: 0,
        }
    }
}

impl TrialConfig {
    fn validate(&self) -> Result<(), SimulationError> {
        if !(0.0..=1.0).contains(&self.p) {
            return Err(SimulationError::InvalidConfig(format!(
                "p must be in [0, 1], got {}",
                self.p
            )));
        }
        if self.trials < 1 {
            return Err(SimulationError::InvalidConfig("trials must be >= 1".into()));
        }
        if self.temporal_m < 1 || self.spatial_m < 1 {
            return Err(SimulationError::InvalidConfig(
                "multiplexing degrees must be >= 1".into(),
            ));
        }
        if self.bond_count < 1 {
            return Err(SimulationError::InvalidConfig(
                "bond_count must be >= 1".into(),
            ));
        }
        Ok(())
    }

    fn attempts(&self) -> u64 {
        self.temporal_m as u64 * self.spatial_m as u64
    }
}

/// Empirical estimate with a 95% Wilson score interval and the z-score
/// against the analytic reference.
#[derive(Debug, Clone, PartialEq)]
pub struct EstimateWithCI {
    pub p_hat: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub trials: u64,
    pub seed: u64,
    pub analytic: f64,
    pub z_score: f64,
}

/// Failed-bond statistics of repeated two-layer rounds.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoLayerStats {
    /// failure_counts[k] = number of trials with exactly k failed bonds.
    pub failure_counts: Vec<u64>,
    pub mean_failures: f64,
    /// Per-bond failure rate against the analytic (1−p)^(m·M).
    pub per_bond_failure: EstimateWithCI,
    /// Fraction of trials whose failure rate exceeded the adaptive
    /// tolerance threshold.
    pub fraction_above_adaptive: f64,
    pub adaptive_threshold: f64,
}

const Z_95: f64 = 1.959963984540054;

/// 95% Wilson score interval for `successes` out of `trials`.
pub fn wilson_interval(successes: u64, trials: u64) -> (f64, f64) {
    let n = trials as f64;
    let p_hat = successes as f64 / n;
    let z2 = Z_95 * Z_95;
    let denom = 1.0 + z2 / n;
    let center = (p_hat + z2 / (2.0 * n)) / denom;
    let half = Z_95 * (p_hat * (1.0 - p_hat) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    (center - half, center + half)
}

fn z_against(p_hat: f64, analytic: f64, trials: u64) -> f64 {
    if analytic <= 0.0 || analytic >= 1.0 {
        return if p_hat == analytic {
            0.0
        } else {
            f64::INFINITY
        };
    }
    let se = (analytic * (1.0 - analytic) / trials as f64).sqrt();
    (p_hat - analytic) / se
}

fn estimate(successes: u64, cfg: &TrialConfig, analytic: f64) -> EstimateWithCI {
    let (ci_low, ci_high) = wilson_interval(successes, cfg.trials);
    let p_hat = successes as f64 / cfg.trials as f64;
    EstimateWithCI {
        p_hat,
        ci_low,
        ci_high,
        trials: cfg.trials,
        seed: cfg.seed,
        analytic,
        z_score: z_against(p_hat, analytic, cfg.trials),
    }
}

fn lane_rng(seed: u64, trial: u64, lane: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[0..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&trial.to_le_bytes());
    key[16..24].copy_from_slice(&lane.to_le_bytes());
    key[24..32].copy_from_slice(&0x69_6f_6e_6d_75_78_2e_31u64.to_le_bytes());
    ChaCha8Rng::from_seed(key)
}

/// At least one success among the multiplexed attempts of one lane.
fn bond_succeeds(p: f64, attempts: u64, rng: &mut ChaCha8Rng) -> bool {
    for _ in 0..attempts {
        if rng.random::<f64>() < p {
            return true;
        }
    }
    false
}

/// Estimate the multiplexed bond success probability 1 − (1−p)^(m·M) by
/// direct Bernoulli sampling.
pub fn simulate_bond(cfg: &TrialConfig) -> Result<EstimateWithCI, SimulationError> {
    cfg.validate()?;
    let attempts = cfg.attempts();
    let mut successes = 0u64;
    for trial in 0..cfg.trials {
        let mut rng = lane_rng(cfg.seed, trial, 0);
        if bond_succeeds(cfg.p, attempts, &mut rng) {
            successes += 1;
        }
    }
    let analytic = multiplexed_success(cfg.p, cfg.temporal_m as f64, cfg.spatial_m);
    Ok(estimate(successes, cfg, analytic))
}

/// Estimate the end-to-end success of an (n+1)-hop chain with
/// deterministic swaps: all hops must produce a bond.
pub fn simulate_chain(cfg: &TrialConfig) -> Result<EstimateWithCI, SimulationError> {
    cfg.validate()?;
    let attempts = cfg.attempts();
    let hops = cfg.n_repeaters as u64 + 1;
    let mut successes = 0u64;
    for trial in 0..cfg.trials {
        let mut all = true;
        for hop in 0..hops {
            let mut rng = lane_rng(cfg.seed, trial, hop);
            if !bond_succeeds(cfg.p, attempts, &mut rng) {
                all = false;
                break;
            }
        }
        if all {
            successes += 1;
        }
    }
    let analytic = chain_success(
        cfg.p,
        cfg.temporal_m as f64,
        cfg.spatial_m as f64,
        cfg.n_repeaters,
    );
    Ok(estimate(successes, cfg, analytic))
}

/// Attempt all bonds of a two-layer round per trial and report the
/// failed-bond statistics.
pub fn simulate_two_layer(
    cfg: &TrialConfig,
    thresholds: &Thresholds,
) -> Result<TwoLayerStats, SimulationError> {
    cfg.validate()?;
    let attempts = cfg.attempts();
    let bonds = cfg.bond_count as u64;
    let mut failure_counts = vec![0u64; cfg.bond_count as usize + 1];
    let mut total_failures = 0u64;
    let mut above = 0u64;
    for trial in 0..cfg.trials {
        let mut failed = 0u64;
        for bond in 0..bonds {
            let mut rng = lane_rng(cfg.seed, trial, bond);
            if !bond_succeeds(cfg.p, attempts, &mut rng) {
                failed += 1;
            }
        }
        failure_counts[failed as usize] += 1;
        total_failures += failed;
        if failed as f64 / bonds as f64 > thresholds.bond_fail_adaptive {
            above += 1;
        }
    }
    let bond_success = multiplexed_success(cfg.p, cfg.temporal_m as f64, cfg.spatial_m);
    let analytic_failure = 1.0 - bond_success;
    let bond_trials = cfg.trials * bonds;
    let (ci_low, ci_high) = wilson_interval(total_failures, bond_trials);
    let p_hat = total_failures as f64 / bond_trials as f64;
    Ok(TwoLayerStats {
        failure_counts,
        mean_failures: total_failures as f64 / cfg.trials as f64,
        per_bond_failure: EstimateWithCI {
            p_hat,
            ci_low,
            ci_high,
            trials: bond_trials,
            seed: cfg.seed,
            analytic: analytic_failure,
            z_score: z_against(p_hat, analytic_failure, bond_trials),
        },
        fraction_above_adaptive: above as f64 / cfg.trials as f64,
        adaptive_threshold: thresholds.bond_fail_adaptive,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn certain_and_impossible_bonds() {
        let cfg = TrialConfig {
            p: 1.0,
            trials: 500,
            ..TrialConfig::default()
        };
        let e = simulate_bond(&cfg).unwrap();
        assert_eq!(e.p_hat, 1.0);
        assert_eq!(e.z_score, 0.0);

        let cfg = TrialConfig {
            p: 0.0,
            trials: 500,
            ..TrialConfig::default()
        };
        let e = simulate_bond(&cfg).unwrap();
        assert_eq!(e.p_hat, 0.0);
        assert_eq!(e.z_score, 0.0);
    }

    #[test]
    fn single_coin_within_interval() {
        let cfg = TrialConfig {
            p: 0.5,
            trials: 20_000,
            seed: 7,
            ..TrialConfig::default()
        };
        let e = simulate_bond(&cfg).unwrap();
        assert!(e.ci_low <= 0.5 && 0.5 <= e.ci_high, "{e:?}");
        assert!(e.z_score.abs() < 4.0);
    }

    #[test]
    fn bond_agrees_with_analytic_frozen_config() {
        let cfg = TrialConfig {
            p: 0.05,
            temporal_m: 38,
            spatial_m: 1,
            trials: 20_000,
            seed: 42,
            ..TrialConfig::default()
        };
        let e = simulate_bond(&cfg).unwrap();
        assert!((e.analytic - 0.8576042586536253).abs() < 1e-12);
        assert!(e.z_score.abs() < 4.0, "{e:?}");
    }

    #[test]
    fn identical_seeds_reproduce_bitwise() {
        let cfg = TrialConfig {
            p: 0.17,
            temporal_m: 5,
            spatial_m: 2,
            trials: 3_000,
            seed: 99,
            ..TrialConfig::default()
        };
        let a = simulate_bond(&cfg).unwrap();
        let b = simulate_bond(&cfg).unwrap();
        assert_eq!(a, b);
        let c = simulate_bond(&TrialConfig { seed: 100, ..cfg }).unwrap();
        assert_ne!(a.p_hat, c.p_hat);
    }

    #[test]
    fn chain_with_no_repeaters_matches_bond_exactly() {
        // Hop 0 of a one-hop chain uses the same lane streams as the bond
        // experiment, so the two runs see identical draws.
        let cfg = TrialConfig {
            p: 0.3,
            temporal_m: 2,
            spatial_m: 3,
            trials: 5_000,
            seed: 1234,
            ..TrialConfig::default()
        };
        let bond = simulate_bond(&cfg).unwrap();
        let chain = simulate_chain(&cfg).unwrap();
        assert_eq!(bond.p_hat, chain.p_hat);
    }

    #[test]
    fn chain_zero_hop_probability_kills_chain() {
        let cfg = TrialConfig {
            p: 0.0,
            n_repeaters: 2,
            trials: 200,
            ..TrialConfig::default()
        };
        let e = simulate_chain(&cfg).unwrap();
        assert_eq!(e.p_hat, 0.0);
    }

    #[test]
    fn chain_agrees_with_power_law() {
        let cfg = TrialConfig {
            p: 0.4,
            temporal_m: 3,
            spatial_m: 1,
            n_repeaters: 2,
            trials: 20_000,
            seed: 5,
            ..TrialConfig::default()
        };
        let e = simulate_chain(&cfg).unwrap();
        let per_hop = multiplexed_success(0.4, 3.0, 1);
        assert!((e.analytic - per_hop.powi(3)).abs() < 1e-12);
        assert!(e.z_score.abs() < 4.0, "{e:?}");
    }

    #[test]
    fn two_layer_perfect_bonds_never_fail() {
        let cfg = TrialConfig {
            p: 1.0,
            trials: 300,
            ..TrialConfig::default()
        };
        let s = simulate_two_layer(&cfg, &Thresholds::default()).unwrap();
        assert_eq!(s.failure_counts[0], 300);
        assert_eq!(s.mean_failures, 0.0);
        assert_eq!(s.fraction_above_adaptive, 0.0);
    }

    #[test]
    fn two_layer_failure_statistics_at_threshold() {
        // Per-bond success exactly at the tolerance point: 16 bonds at
        // p' = 0.855 fail 2.32 times per round on average.
        let cfg = TrialConfig {
            p: 0.855,
            trials: 30_000,
            seed: 11,
            ..TrialConfig::default()
        };
        let s = simulate_two_layer(&cfg, &Thresholds::default()).unwrap();
        assert!((s.per_bond_failure.analytic - 0.145).abs() < 1e-12);
        assert!(
            s.per_bond_failure.z_score.abs() < 4.0,
            "{:?}",
            s.per_bond_failure
        );
        let expected_mean = 16.0 * 0.145;
        assert!(
            (s.mean_failures - expected_mean).abs() < 0.05,
            "{}",
            s.mean_failures
        );
        let total: u64 = s.failure_counts.iter().sum();
        assert_eq!(total, 30_000);
        assert!(s.fraction_above_adaptive > 0.0 && s.fraction_above_adaptive < 1.0);
    }

    #[test]
    fn wilson_interval_frozen_value_and_ordering() {
        let (lo, hi) = wilson_interval(50, 100);
        assert!((lo - 0.4038315303659956).abs() < 1e-12, "{lo}");
        assert!((hi - 0.5961684696340044).abs() < 1e-12, "{hi}");
        let mut state = 0xabcu64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..300 {
            let n = 1 + next() % 10_000;
            let s = next() % (n + 1);
            let (lo, hi) = wilson_interval(s, n);
            let p_hat = s as f64 / n as f64;
            assert!(lo <= p_hat && p_hat <= hi);
            assert!(lo >= -1e-12 && hi <= 1.0 + 1e-12);
        }
    }

    #[test]
    fn invalid_configs_rejected() {
        let cfg = TrialConfig {
            p: 1.5,
            ..TrialConfig::default()
        };
        assert!(simulate_bond(&cfg).is_err());
        let cfg = TrialConfig {
            trials: 0,
            ..TrialConfig::default()
        };
        assert!(simulate_bond(&cfg).is_err());
        let cfg = TrialConfig {
            spatial_m: 0,
            ..TrialConfig::default()
        };
        assert!(simulate_bond(&cfg).is_err());
    }

    #[test]
    fn ci_coverage_near_nominal() {
        // 95% Wilson interval should cover the true value in roughly 95%
        // of repeated runs.
        let mut covered = 0u32;
        let reps = 1000;
        for rep in 0..reps {
            let cfg = TrialConfig {
                p: 0.3,
                trials: 1000,
                seed: 0x5eed_0000 + rep as u64,
                ..TrialConfig::default()
            };
            let e = simulate_bond(&cfg).unwrap();
            if e.ci_low <= 0.3 && 0.3 <= e.ci_high {
                covered += 1;
            }
        }
        let coverage = covered as f64 / reps as f64;
        assert!((coverage - 0.95).abs() <= 0.03, "coverage {coverage}");
    }
}
