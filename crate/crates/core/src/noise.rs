//! Heralded mixed-state model of the photonically mediated Bell pair, the
//! depolarizing-channel equivalence, and the noise-tolerance inequality.
//!
//! The heralded two-qubit state is a mixture β₁|Ψ⁺⟩⟨Ψ⁺| + β₂𝕀₄ whose
//! weights follow from the end-to-end transmissivity η and the excess
//! photons per mode P_d (dual-rail encoding, symmetric channel, perfect
//! detector efficiency and visibility). That state equals a perfect pair
//! sent through independent single-qubit depolarizing channels of
//! parameter δ = √β₁, which is how it enters the tolerance inequality
//!
//! ```text
//! ε + (35/16)·(T/τ_D) + (35/64)·(1 − √β₁) < 1/256
//! ```
//!
//! whose exact rational coefficients are derived independently in
//! [`crate::pauli`].

// Validators negate comparisons so that NaN fails every bound.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NoiseError {
    #[error("{name} out of range: {value}")]
    Domain { name: &'static str, value: f64 },
    #[error("heralded state undefined at eta = 0 (no transmitted photon component)")]
    UndefinedState,
    #[error("depolarizing extraction requires trace normalization; got two-term mode")]
    RequiresTraceMode,
    #[error("coefficients inconsistent with a two-sided depolarizing channel: beta2 = {beta2}, expected {expected}")]
    InconsistentCoefficients { beta2: f64, expected: f64 },
    #[error("invalid grid: {0}")]
    BadGrid(String),
}

/// How the mixture weights are normalized.
///
/// `Trace` divides by num₁ + 4·num₂ so that Tr(ρ) = β₁ + 4β₂ = 1; this is
/// the physical normalization and the one the depolarizing equivalence
/// requires. `TwoTerm` divides by num₁ + num₂, a normalization sometimes
/// quoted for this state; it does not produce a unit-trace mixture and is
/// kept for comparison only.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormalizationMode {
    Trace,
    TwoTerm,
}

/// Weights of the heralded mixed Bell state ρ = β₁|Ψ⁺⟩⟨Ψ⁺| + β₂𝕀₄.
#[derive(Debug, Clone, PartialEq)]
pub struct BellMixtureCoefficients {
    pub beta1: f64,
    pub beta2: f64,
    /// Normalization constant actually used.
    pub norm: f64,
    pub eta: f64,
    pub excess_noise_pd: f64,
    pub mode: NormalizationMode,
}

/// Single-qubit depolarizing channel equivalent to the heralded state:
/// ρ ↦ δρ + (1−δ)𝕀₂/2 on each qubit, or per-Pauli error rate p/3 with
/// p = 3(1−δ)/4.
#[derive(Debug, Clone, PartialEq)]
pub struct DepolarizingEquivalent {
    pub delta: f64,
    pub pauli_error_rate: f64,
}

impl DepolarizingEquivalent {
    /// Bloch-vector contraction factor of the per-Pauli form, 1 − 4p/3.
    /// Equals δ, which is the equivalence between the two channel
    /// definitions.
    pub fn bloch_scale(&self) -> f64 {
        1.0 - 4.0 * self.pauli_error_rate / 3.0
    }
}

/// Mixture weights of the heralded state at end-to-end transmissivity
/// `eta` and excess photons per mode `pd`.
pub fn bell_coefficients(
    eta: f64,
    pd: f64,
    mode: NormalizationMode,
) -> Result<BellMixtureCoefficients, NoiseError> {
    if !(0.0..=1.0).contains(&eta) {
        return Err(NoiseError::Domain {
            name: "eta",
            value: eta,
        });
    }
    if eta == 0.0 {
        return Err(NoiseError::UndefinedState);
    }
    if !(0.0..1.0).contains(&pd) {
        return Err(NoiseError::Domain {
            name: "pd",
            value: pd,
        });
    }
    let root_eta = eta.sqrt();
    let num1 = (1.0 - pd).powi(4) * eta / 2.0;
    let num2 = pd
        * (1.0 - pd).powi(2)
        * (0.5 * (1.0 - pd) * root_eta * (1.0 - root_eta) + pd * (1.0 - root_eta).powi(2));
    let norm = match mode {
        NormalizationMode::Trace => num1 + 4.0 * num2,
        NormalizationMode::TwoTerm => num1 + num2,
    };
    Ok(BellMixtureCoefficients {
        beta1: num1 / norm,
        beta2: num2 / norm,
        norm,
        eta,
        excess_noise_pd: pd,
        mode,
    })
}

/// Extract the two-sided depolarizing channel matching trace-normalized
/// mixture weights: δ = √β₁, p = 3(1−δ)/4. Checks that the weights really
/// are of the form (δ², (1−δ²)/4).
pub fn depolarizing_equivalent(
    coeffs: &BellMixtureCoefficients,
) -> Result<DepolarizingEquivalent, NoiseError> {
    if coeffs.mode != NormalizationMode::Trace {
        return Err(NoiseError::RequiresTraceMode);
    }
    let delta = coeffs.beta1.sqrt();
    let expected_beta2 = (1.0 - delta * delta) / 4.0;
    if (coeffs.beta2 - expected_beta2).abs() > 1e-12 {
        return Err(NoiseError::InconsistentCoefficients {
            beta2: coeffs.beta2,
            expected: expected_beta2,
        });
    }
    Ok(DepolarizingEquivalent {
        delta,
        pauli_error_rate: 3.0 * (1.0 - delta) / 4.0,
    })
}

/// Coefficient of T/τ_D in the normalized tolerance inequality, 35/16.
pub const FT_DECOHERENCE_COEFF: f64 = 35.0 / 16.0;
/// Coefficient of (1 − √β₁) in the normalized tolerance inequality, 35/64.
pub const FT_DEPOL_COEFF: f64 = 35.0 / 64.0;
/// Default right-hand side, (1 − 0.70)/(1152/15) = 1/256 exactly.
pub const FT_RHS_DEFAULT: f64 = 0.003_906_25;

/// One evaluation of the noise-tolerance inequality.
#[derive(Debug, Clone, PartialEq)]
pub struct FtEvaluation {
    pub lhs: f64,
    pub rhs: f64,
    pub satisfied: bool,
    pub eps_term: f64,
    pub decoherence_term: f64,
    pub depolarizing_term: f64,
}

/// Evaluate ε + (35/16)(T/τ_D) + (35/64)(1 − √β₁) against `rhs`.
pub fn ft_evaluate(eps: f64, t_over_tau_d: f64, beta1: f64, rhs: f64) -> FtEvaluation {
    let eps_term = eps;
    let decoherence_term = FT_DECOHERENCE_COEFF * t_over_tau_d;
    let depolarizing_term = FT_DEPOL_COEFF * (1.0 - beta1.sqrt());
    let lhs = eps_term + decoherence_term + depolarizing_term;
    FtEvaluation {
        lhs,
        rhs,
        satisfied: lhs < rhs,
        eps_term,
        decoherence_term,
        depolarizing_term,
    }
}

/// A sweepable quantity of the inequality.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridAxis {
    /// End-to-end transmissivity η (β₁ is derived from it).
    Eta,
    /// Excess photons per mode P_d (β₁ is derived from it).
    ExcessNoise,
    /// β₁ directly.
    Beta1,
    /// Gate error ε.
    GateError,
    /// T/τ_D.
    DecoherenceRatio,
}

impl GridAxis {
    pub fn name(self) -> &'static str {
        match self {
            GridAxis::Eta => "eta",
            GridAxis::ExcessNoise => "pd",
            GridAxis::Beta1 => "beta1",
            GridAxis::GateError => "eps",
            GridAxis::DecoherenceRatio => "t_over_tau_d",
        }
    }

    fn domain(self) -> (f64, f64) {
        match self {
            GridAxis::Eta => (f64::MIN_POSITIVE, 1.0),
            GridAxis::ExcessNoise => (0.0, 1.0 - 1e-12),
            GridAxis::Beta1 => (0.0, 1.0),
            GridAxis::GateError | GridAxis::DecoherenceRatio => (0.0, f64::INFINITY),
        }
    }
}

/// One swept axis with an inclusive range.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisRange {
    pub axis: GridAxis,
    pub min: f64,
    pub max: f64,
}

/// Values held fixed while two axes sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FixedInputs {
    pub eps: f64,
    pub t_over_tau_d: f64,
    /// Used when neither axis is η/P_d/β₁; otherwise β₁ comes from the
    /// axes (directly, or derived from η and P_d).
    pub beta1: f64,
    /// η used when P_d sweeps without η.
    pub eta: f64,
    /// P_d used when η sweeps without P_d.
    pub pd: f64,
}

impl Default for FixedInputs {
    fn default() -> Self {
        FixedInputs {
            eps: 1e-4,
            t_over_tau_d: 1e-4,
            beta1: 1.0,
            eta: 1.0,
            pd: 0.0,
        }
    }
}

/// A rectangular feasibility sweep of the inequality over two axes.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    pub x: AxisRange,
    pub y: AxisRange,
    /// Points per axis; the grid has resolution² cells.
    pub resolution: usize,
    pub fixed: FixedInputs,
    pub rhs: f64,
}

/// One grid node.
#[derive(Debug, Clone, PartialEq)]
pub struct GridCell {
    pub x: f64,
    pub y: f64,
    pub lhs: f64,
    pub satisfied: bool,
}

impl GridSpec {
    /// (η, P_d) sweep at fixed gate error and decoherence ratio.
    pub fn eta_pd(eps: f64, t_over_tau_d: f64, resolution: usize) -> GridSpec {
        GridSpec {
            x: AxisRange {
                axis: GridAxis::Eta,
                min: 1e-3,
                max: 1.0,
            },
            y: AxisRange {
                axis: GridAxis::ExcessNoise,
                min: 0.0,
                max: 0.99,
            },
            resolution,
            fixed: FixedInputs {
                eps,
                t_over_tau_d,
                ..FixedInputs::default()
            },
            rhs: FT_RHS_DEFAULT,
        }
    }

    /// (β₁, T/τ_D) sweep at fixed gate error.
    pub fn beta1_decoherence(eps: f64, resolution: usize) -> GridSpec {
        GridSpec {
            x: AxisRange {
                axis: GridAxis::Beta1,
                min: 0.98,
                max: 1.0,
            },
            y: AxisRange {
                axis: GridAxis::DecoherenceRatio,
                min: 0.0,
                max: 2e-3,
            },
            resolution,
            fixed: FixedInputs {
                eps,
                ..FixedInputs::default()
            },
            rhs: FT_RHS_DEFAULT,
        }
    }

    /// (β₁, ε) sweep at fixed decoherence ratio.
    pub fn beta1_gate_error(t_over_tau_d: f64, resolution: usize) -> GridSpec {
        GridSpec {
            x: AxisRange {
                axis: GridAxis::Beta1,
                min: 0.98,
                max: 1.0,
            },
            y: AxisRange {
                axis: GridAxis::GateError,
                min: 0.0,
                max: 4e-3,
            },
            resolution,
            fixed: FixedInputs {
                t_over_tau_d,
                ..FixedInputs::default()
            },
            rhs: FT_RHS_DEFAULT,
        }
    }

    fn validate(&self) -> Result<(), NoiseError> {
        if self.x.axis == self.y.axis {
            return Err(NoiseError::BadGrid("the two axes must differ".into()));
        }
        if self.resolution < 2 {
            return Err(NoiseError::BadGrid("resolution must be >= 2".into()));
        }
        for r in [&self.x, &self.y] {
            if !(r.min < r.max) {
                return Err(NoiseError::BadGrid(format!(
                    "{} range is empty or inverted: [{}, {}]",
                    r.axis.name(),
                    r.min,
                    r.max
                )));
            }
            let (lo, hi) = r.axis.domain();
            if r.min < lo || r.max > hi {
                return Err(NoiseError::BadGrid(format!(
                    "{} range [{}, {}] outside domain [{}, {}]",
                    r.axis.name(),
                    r.min,
                    r.max,
                    lo,
                    hi
                )));
            }
        }
        Ok(())
    }

    fn tick(&self, range: &AxisRange, k: usize) -> f64 {
        let t = k as f64 / (self.resolution - 1) as f64;
        range.min + t * (range.max - range.min)
    }
}

fn lhs_inputs(spec: &GridSpec, x: f64, y: f64) -> Result<(f64, f64, f64), NoiseError> {
    let mut eps = spec.fixed.eps;
    let mut t_ratio = spec.fixed.t_over_tau_d;
    let mut eta = None;
    let mut pd = None;
    let mut beta1_direct = None;
    for (range, v) in [(&spec.x, x), (&spec.y, y)] {
        match range.axis {
            GridAxis::Eta => eta = Some(v),
            GridAxis::ExcessNoise => pd = Some(v),
            GridAxis::Beta1 => beta1_direct = Some(v),
            GridAxis::GateError => eps = v,
            GridAxis::DecoherenceRatio => t_ratio = v,
        }
    }
    let beta1 = if let Some(b) = beta1_direct {
        b
    } else if eta.is_some() || pd.is_some() {
        bell_coefficients(
            eta.unwrap_or(spec.fixed.eta),
            pd.unwrap_or(spec.fixed.pd),
            NormalizationMode::Trace,
        )?
        .beta1
    } else {
        spec.fixed.beta1
    };
    Ok((eps, t_ratio, beta1))
}

/// Evaluate the inequality over the grid, row-major (y outer, x inner).
pub fn feasibility_grid(spec: &GridSpec) -> Result<Vec<GridCell>, NoiseError> {
    spec.validate()?;
    let mut cells = Vec::with_capacity(spec.resolution * spec.resolution);
    for iy in 0..spec.resolution {
        let y = spec.tick(&spec.y, iy);
        for ix in 0..spec.resolution {
            let x = spec.tick(&spec.x, ix);
            let (eps, t_ratio, beta1) = lhs_inputs(spec, x, y)?;
            let eval = ft_evaluate(eps, t_ratio, beta1, spec.rhs);
            cells.push(GridCell {
                x,
                y,
                lhs: eval.lhs,
                satisfied: eval.satisfied,
            });
        }
    }
    Ok(cells)
}

/// Boundary contour lhs = rhs, found by linear interpolation between
/// adjacent grid nodes whose residuals change sign. Points from the
/// horizontal scan come first, then the vertical scan, each in row-major
/// order.
pub fn boundary_points(spec: &GridSpec, cells: &[GridCell]) -> Vec<(f64, f64)> {
    let n = spec.resolution;
    let at = |ix: usize, iy: usize| &cells[iy * n + ix];
    let mut points = Vec::new();
    let crossing = |a: &GridCell, b: &GridCell| -> Option<f64> {
        let fa = a.lhs - spec.rhs;
        let fb = b.lhs - spec.rhs;
        if fa == 0.0 {
            return Some(0.0);
        }
        if fa * fb < 0.0 {
            return Some(fa / (fa - fb));
        }
        None
    };
    for iy in 0..n {
        for ix in 0..n - 1 {
            let (a, b) = (at(ix, iy), at(ix + 1, iy));
            if let Some(t) = crossing(a, b) {
                points.push((a.x + t * (b.x - a.x), a.y));
            }
        }
    }
    for ix in 0..n {
        for iy in 0..n - 1 {
            let (a, b) = (at(ix, iy), at(ix, iy + 1));
            if let Some(t) = crossing(a, b) {
                points.push((a.x, a.y + t * (b.y - a.y)));
            }
        }
    }
    points
}
