//! Closed-form success probabilities for heralded remote Bell-pair
//! generation, with spatial/temporal multiplexing and repeater chains.
//!
//! All functions here are pure; the temporal and spatial multiplexing
//! degrees are real-valued so that requirement curves are continuous.
//! Integer allocation for simulation uses the explicit `*_ceil` helpers.

use crate::params::{ChannelParams, SPEED_OF_LIGHT_M_PER_S};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalyticsError {
    /// The target success probability cannot be reached by repetition
    /// because the per-attempt probability is zero (or numerically
    /// indistinguishable from it).
    #[error("unreachable threshold: per-attempt probability {p} cannot reach p_th = {p_th}")]
    UnreachableThreshold { p: f64, p_th: f64 },
    #[error("probability out of range: {name} = {value}")]
    OutOfRange { name: &'static str, value: f64 },
}

/// Success probability of a single remote Bell-pair generation attempt,
/// together with the factors that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct HopSuccess {
    /// p = ½ · η_cc · η_trans · η_det. The ½ is the linear-optics
    /// Bell-state-measurement ceiling, so p ≤ 0.5 always.
    pub p: f64,
    pub distance_km: f64,
    pub eta_cc: f64,
    pub eta_trans: f64,
    pub eta_det: f64,
}

/// Per-hop success when `n_repeaters` repeaters are inserted between two
/// sites, splitting the span into n+1 equal hops.
#[derive(Debug, Clone, PartialEq)]
pub struct RepeaterHopSuccess {
    /// End-to-end single-attempt probability with no repeaters.
    pub p0: f64,
    /// Single-attempt probability over one hop of length L/(n+1).
    pub p0_prime: f64,
    pub n_repeaters: u32,
}

/// Transmission efficiency of `distance_km` of fiber at `alpha_db_per_km`.
pub fn transmission_efficiency(alpha_db_per_km: f64, distance_km: f64) -> f64 {
    10f64.powf(-(alpha_db_per_km / 10.0) * distance_km)
}

/// Single-attempt success probability of heralded remote Bell-pair
/// generation over `distance_km`: ½ · η_cc · η_trans · η_det.
pub fn attempt_success_probability(channel: &ChannelParams, distance_km: f64) -> HopSuccess {
    let eta_trans = transmission_efficiency(channel.alpha_att_db_per_km, distance_km);
    HopSuccess {
        p: 0.5 * channel.eta_cc * eta_trans * channel.eta_det,
        distance_km,
        eta_cc: channel.eta_cc,
        eta_trans,
        eta_det: channel.eta_det,
    }
}

/// Probability that at least one of `m · spatial_m` independent attempts
/// at per-attempt probability `p` succeeds: 1 − (1−p)^(m·M).
pub fn multiplexed_success(p: f64, temporal_m: f64, spatial_m: u32) -> f64 {
    multiplexed_success_product(p, temporal_m * spatial_m as f64)
}

/// Same as [`multiplexed_success`] with the attempt budget given directly
/// as the (real-valued) product m·M.
pub fn multiplexed_success_product(p: f64, attempt_product: f64) -> f64 {
    1.0 - (1.0 - p).powf(attempt_product)
}

/// Required multiplexing product m·M so that the combined success reaches
/// `p_th`: log(1 − p_th) / log(1 − p).
///
/// Degenerate ends: p = 1 returns 1 (one attempt always succeeds); p = 0
/// is an unreachable threshold.
pub fn required_multiplex_product(p: f64, p_th: f64) -> Result<f64, AnalyticsError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(AnalyticsError::OutOfRange {
            name: "p",
            value: p,
        });
    }
    if !(p_th > 0.0 && p_th < 1.0) {
        return Err(AnalyticsError::OutOfRange {
            name: "p_th",
            value: p_th,
        });
    }
    if p == 1.0 {
        return Ok(1.0);
    }
    if p <= 0.0 {
        return Err(AnalyticsError::UnreachableThreshold { p, p_th });
    }
    Ok((1.0 - p_th).ln() / (1.0 - p).ln())
}

/// Smallest integer attempt budget meeting the threshold.
pub fn required_multiplex_product_ceil(p: f64, p_th: f64) -> Result<u64, AnalyticsError> {
    Ok(required_multiplex_product(p, p_th)?.ceil() as u64)
}

/// Round-trip heralding delay for a midpoint Bell-state measurement over
/// `distance_km` of fiber with refractive index `n`: τ_H = n·L/c.
pub fn heralding_time(distance_km: f64, refractive_index: f64) -> f64 {
    refractive_index * distance_km * 1e3 / SPEED_OF_LIGHT_M_PER_S
}

/// Per-hop single-attempt probability when `n_repeaters` repeaters divide
/// the span into equal hops of length L/(n+1).
pub fn per_hop_success_with_repeaters(
    channel: &ChannelParams,
    distance_km: f64,
    n_repeaters: u32,
) -> RepeaterHopSuccess {
    let p0 = attempt_success_probability(channel, distance_km).p;
    let hop_km = distance_km / (n_repeaters as f64 + 1.0);
    let p0_prime = attempt_success_probability(channel, hop_km).p;
    RepeaterHopSuccess {
        p0,
        p0_prime,
        n_repeaters,
    }
}

/// End-to-end success probability across an n-repeater chain with
/// deterministic swaps: [1 − (1 − p₀′)^(m·M′)]^(n+1).
pub fn chain_success(
    p0_prime: f64,
    temporal_m: f64,
    spatial_m_prime: f64,
    n_repeaters: u32,
) -> f64 {
    multiplexed_success_product(p0_prime, temporal_m * spatial_m_prime).powi(n_repeaters as i32 + 1)
}

/// Spatial multiplexing M′ so that the n-repeater chain reaches `p_th` at
/// temporal degree `m`: log(1 − p_th^(1/(n+1))) / (m · log(1 − p₀′)).
pub fn repeater_spatial_multiplex(
    p0_prime: f64,
    temporal_m: f64,
    p_th: f64,
    n_repeaters: u32,
) -> Result<f64, AnalyticsError> {
    let per_hop_target = p_th.powf(1.0 / (n_repeaters as f64 + 1.0));
    Ok(required_multiplex_product(p0_prime, per_hop_target)? / temporal_m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::ChannelParams;

    fn ideal() -> ChannelParams {
        ChannelParams::ideal()
    }

    #[test]
    fn attempt_probability_lossless_limit() {
        let h = attempt_success_probability(&ideal(), 0.0);
        assert_eq!(h.p, 0.5);
        assert_eq!(h.eta_trans, 1.0);
    }

    #[test]
    fn attempt_probability_50km() {
        // 0.2 dB/km over 50 km is exactly one order of magnitude.
        let h = attempt_success_probability(&ideal(), 50.0);
        assert!((h.p - 0.05).abs() < 1e-15, "{}", h.p);
    }

    #[test]
    fn attempt_probability_efficiency_product() {
        let ch = ChannelParams {
            eta_cc: 0.5,
            eta_det: 0.8,
            ..ideal()
        };
        let h = attempt_success_probability(&ch, 0.0);
        assert!((h.p - 0.2).abs() < 1e-15);
    }

    #[test]
    fn multiplexed_success_examples() {
        assert_eq!(multiplexed_success(0.37, 1.0, 1), 0.37);
        assert!((multiplexed_success(0.5, 2.0, 1) - 0.75).abs() < 1e-15);
        assert_eq!(multiplexed_success(0.0, 7.0, 9), 0.0);
    }

    #[test]
    fn required_product_frozen_values() {
        // ln(0.145)/ln(0.5) and ln(0.145)/ln(0.95), hand-evaluated.
        let v = required_multiplex_product(0.5, 0.855).unwrap();
        assert!((v - 2.7858751946471525).abs() < 1e-12, "{v}");
        let v = required_multiplex_product(0.05, 0.855).unwrap();
        assert!((v - 37.646666286855655).abs() < 1e-10, "{v}");
    }

    #[test]
    fn required_product_degenerate_ends() {
        assert_eq!(required_multiplex_product(0.855, 0.855).unwrap(), 1.0);
        assert_eq!(required_multiplex_product(1.0, 0.855).unwrap(), 1.0);
        assert!(matches!(
            required_multiplex_product(0.0, 0.855),
            Err(AnalyticsError::UnreachableThreshold { .. })
        ));
        assert!(required_multiplex_product(0.5, 1.0).is_err());
    }

    #[test]
    fn heralding_time_values() {
        assert_eq!(heralding_time(0.0, 1.5), 0.0);
        let t = heralding_time(200.0, 1.5);
        assert!((t - 1.0006922855944561e-3).abs() < 1e-15, "{t}");
        // 1 μm: effectively zero against any gate time.
        let t = heralding_time(1e-9, 1.5);
        assert!((t - 5.003461427972281e-15).abs() < 1e-27, "{t}");
    }

    #[test]
    fn per_hop_repeater_values() {
        let r = per_hop_success_with_repeaters(&ideal(), 37.0, 0);
        assert_eq!(r.p0, r.p0_prime);

        let r = per_hop_success_with_repeaters(&ideal(), 100.0, 1);
        assert!((r.p0_prime - 0.05).abs() < 1e-15);

        let r = per_hop_success_with_repeaters(&ideal(), 200.0, 3);
        assert!((r.p0_prime - 0.05).abs() < 1e-15);
    }

    #[test]
    fn per_hop_matches_closed_form_for_ideal_channel() {
        // With unit efficiencies and 0.2 dB/km, the per-hop probability
        // equals ½·(2p₀)^(1/(n+1)).
        for &l in &[1.0, 10.0, 50.0, 125.0, 200.0] {
            for n in 0..6u32 {
                let r = per_hop_success_with_repeaters(&ideal(), l, n);
                let closed = 0.5 * (2.0 * r.p0).powf(1.0 / (n as f64 + 1.0));
                assert!(
                    (r.p0_prime - closed).abs() <= 1e-12 * closed,
                    "L={l} n={n}: {} vs {closed}",
                    r.p0_prime
                );
            }
        }
    }

    #[test]
    fn chain_success_examples() {
        assert!((chain_success(0.05, 2.0, 1.0, 1) - 0.00950625).abs() < 1e-15);
        assert_eq!(chain_success(1.0, 1.0, 4.0, 5), 1.0);
        // n = 0 reduces to plain multiplexed success.
        let p = 0.123;
        assert_eq!(
            chain_success(p, 3.0, 2.0, 0),
            multiplexed_success_product(p, 6.0)
        );
    }

    #[test]
    fn repeater_spatial_multiplex_frozen_value() {
        let m_prime = repeater_spatial_multiplex(0.05, 1.0, 0.855, 3).unwrap();
        assert!((m_prime - 63.54688579923465).abs() < 1e-10, "{m_prime}");
        // n = 0, m = 1 degenerates to the plain requirement.
        let a = repeater_spatial_multiplex(0.05, 1.0, 0.855, 0).unwrap();
        let b = required_multiplex_product(0.05, 0.855).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn chain_round_trips_through_spatial_multiplex() {
        let mut state = 0xabcdefu64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        for _ in 0..200 {
            let p0_prime = 1e-4 + 0.4999 * next();
            let m = 0.25 + 8.0 * next();
            let p_th = 0.5 + 0.49 * next();
            let n = (next() * 5.0) as u32;
            let m_prime = repeater_spatial_multiplex(p0_prime, m, p_th, n).unwrap();
            let achieved = chain_success(p0_prime, m, m_prime, n);
            assert!(
                (achieved - p_th).abs() <= 1e-12 * p_th,
                "p0'={p0_prime} m={m} n={n}: {achieved} vs {p_th}"
            );
        }
    }

    #[test]
    fn monotonicity_properties() {
        let mut state = 0x5eedu64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        for _ in 0..500 {
            let p = next() * 0.999;
            let m = 0.1 + next() * 10.0;
            let big_m = 1 + (next() * 40.0) as u32;
            let base = multiplexed_success(p, m, big_m);
            assert!(multiplexed_success((p + 1e-3).min(1.0), m, big_m) >= base);
            assert!(multiplexed_success(p, m + 0.5, big_m) >= base);
            assert!(multiplexed_success(p, m, big_m + 1) >= base);
        }
        // Per-hop probability: non-increasing in L, non-decreasing in n.
        let ch = ideal();
        for _ in 0..200 {
            let l = next() * 200.0;
            let n = (next() * 5.0) as u32;
            let r = per_hop_success_with_repeaters(&ch, l, n);
            assert!(per_hop_success_with_repeaters(&ch, l + 1.0, n).p0_prime <= r.p0_prime);
            assert!(per_hop_success_with_repeaters(&ch, l, n + 1).p0_prime >= r.p0_prime);
        }
    }

    #[test]
    fn required_product_meets_threshold_when_ceiled() {
        let mut state = 0x777u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        for _ in 0..300 {
            let p = 1e-4 + next() * (0.5 - 1e-4);
            let p_th = 0.5 + 0.49 * next();
            let ceil = required_multiplex_product_ceil(p, p_th).unwrap();
            assert!(multiplexed_success_product(p, ceil as f64) >= p_th);
        }
    }
}
