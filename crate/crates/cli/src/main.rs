//! Command-line front end: configuration loading, subcommand dispatch, and
//! report emission.
//!
//! Exit codes: 0 on success (and verified agreement), 1 when a
//! verification fails (coefficient audit mismatch, simulation/analytic
//! disagreement), 2 on invalid input.

mod figures;
mod output;

use clap::{Args, Parser, Subcommand, ValueEnum};
use figures::{FigureTag, SweepOptions};
use ionmux::codecycle::{
    code_cycle_from_probability, ion_budget_without_repeaters, repeater_comparison_table,
    reuse_window,
};
use ionmux::entanglement::attempt_success_probability;
use ionmux::montecarlo::{simulate_bond, simulate_chain, simulate_two_layer, TrialConfig};
use ionmux::noise::{AxisRange, FixedInputs, GridAxis, GridSpec, FT_RHS_DEFAULT};
use ionmux::params::Params;
use ionmux::pauli::{
    build_unit_cell_circuit, derive_threshold_inequality, enumerate_first_order,
    reference_coefficients, AuditReport, InequalityConstants, Rational, StructuralCounts,
};
use num_traits::ToPrimitive;
use output::{emit, write_file, NumberFormat, Table};
use std::path::PathBuf;
use std::process::ExitCode;

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser, Debug)]
#[command(
    name = "ionmux",
    version,
    about = "Resource, timing, and noise-threshold analysis for optically networked trapped-ion modules"
)]
struct Cli {
    /// TOML configuration file.
    #[arg(long, global = true, env = "IONMUX_CONFIG")]
    config: Option<PathBuf>,
    /// Write the primary output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Fractional digits in scientific notation (full round-trip precision
    /// when unset).
    #[arg(long, global = true)]
    precision: Option<usize>,
    /// Master seed for stochastic subcommands.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Trial count for stochastic subcommands.
    #[arg(long, global = true)]
    trials: Option<u64>,
    #[command(flatten)]
    overrides: Overrides,
    #[command(subcommand)]
    command: Command,
}

/// Per-key overrides of the configuration file.
#[derive(Args, Debug, Clone)]
struct Overrides {
    #[arg(long, global = true, help_heading = "Config overrides")]
    tau_us: Option<f64>,
    #[arg(long, global = true, help_heading = "Config overrides")]
    tau_a_us: Option<f64>,
    #[arg(long, global = true, help_heading = "Config overrides")]
    tau_b_us: Option<f64>,
    #[arg(long, global = true, help_heading = "Config overrides")]
    tau_d_us: Option<f64>,
    #[arg(long, global = true, help_heading = "Config overrides")]
    tau_m_us: Option<f64>,
    #[arg(long, global = true, help_heading = "Config overrides")]
    tau_c_us: Option<f64>,
    #[arg(long, global = true, help_heading = "Config overrides")]
    tau_decoherence_us: Option<f64>,
    #[arg(long, global = true, help_heading = "Config overrides")]
    refractive_index: Option<f64>,
    #[arg(long, global = true, help_heading = "Config overrides")]
    eta_cc: Option<f64>,
    #[arg(long, global = true, help_heading = "Config overrides")]
    eta_det: Option<f64>,
    #[arg(long, global = true, help_heading = "Config overrides")]
    alpha_att_db_per_km: Option<f64>,
    #[arg(long, global = true, help_heading = "Config overrides")]
    excess_noise_pd: Option<f64>,
    #[arg(long, global = true, help_heading = "Config overrides")]
    visibility: Option<f64>,
    #[arg(long, global = true, help_heading = "Config overrides")]
    inter_site_distance_km: Option<f64>,
    #[arg(long, global = true, help_heading = "Config overrides")]
    n_repeaters: Option<u32>,
    /// Also updates site_pair_factor = 2 × bond_count.
    #[arg(long, global = true, help_heading = "Config overrides")]
    bond_count: Option<u32>,
    /// Also updates bond_fail_adaptive = 1 − p_th.
    #[arg(long, global = true, help_heading = "Config overrides")]
    p_th: Option<f64>,
}

impl Overrides {
    fn apply(&self, params: &mut Params) {
        let t = &mut params.timing;
        if let Some(v) = self.tau_us {
            t.tau_us = v;
        }
        if let Some(v) = self.tau_a_us {
            t.tau_a_us = v;
        }
        if let Some(v) = self.tau_b_us {
            t.tau_b_us = v;
        }
        if let Some(v) = self.tau_d_us {
            t.tau_d_us = v;
        }
        if let Some(v) = self.tau_m_us {
            t.tau_m_us = Some(v);
        }
        if let Some(v) = self.tau_c_us {
            t.tau_c_us = Some(v);
        }
        if let Some(v) = self.tau_decoherence_us {
            t.tau_decoherence_us = v;
        }
        if let Some(v) = self.refractive_index {
            t.refractive_index = v;
        }
        let c = &mut params.channel;
        if let Some(v) = self.eta_cc {
            c.eta_cc = v;
        }
        if let Some(v) = self.eta_det {
            c.eta_det = v;
        }
        if let Some(v) = self.alpha_att_db_per_km {
            c.alpha_att_db_per_km = v;
        }
        if let Some(v) = self.excess_noise_pd {
            c.excess_noise_pd = v;
        }
        if let Some(v) = self.visibility {
            c.visibility = v;
        }
        let g = &mut params.geometry;
        if let Some(v) = self.inter_site_distance_km {
            g.inter_site_distance_km = v;
        }
        if let Some(v) = self.n_repeaters {
            g.n_repeaters = v;
        }
        if let Some(v) = self.bond_count {
            g.bond_count = v;
            g.site_pair_factor = 2 * v;
        }
        if let Some(v) = self.p_th {
            params.thresholds.p_th = v;
            params.thresholds.bond_fail_adaptive = 1.0 - v;
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Code-cycle timing and ion budget for one configuration.
    Estimate {
        /// Spatial multiplexing degree M.
        #[arg(long, default_value_t = 1)]
        spatial_m: u32,
        /// Inter-site distance, overriding the configured geometry.
        #[arg(long)]
        distance_km: Option<f64>,
    },
    /// Tabulated figure-reproduction sweeps (CSV).
    Sweep {
        #[arg(long, value_enum)]
        figure: FigureTag,
        /// Points along the probability axis.
        #[arg(long)]
        points: Option<usize>,
        /// Resolution of the feasibility grids.
        #[arg(long)]
        resolution: Option<usize>,
        /// Temporal degrees for fig6 (comma separated).
        #[arg(long, value_delimiter = ',')]
        m_list: Option<Vec<f64>>,
        /// Spatial degrees for fig9/fig10/fig11 (comma separated).
        #[arg(long, value_delimiter = ',')]
        spatial_m_list: Option<Vec<u32>>,
        /// Repeater counts for fig13/fig14 (comma separated).
        #[arg(long, value_delimiter = ',')]
        n_list: Option<Vec<u32>>,
        /// Temporal degree for fig13/fig14.
        #[arg(long)]
        temporal_m: Option<f64>,
        /// Fixed gate error of the feasibility sweeps.
        #[arg(long)]
        eps: Option<f64>,
        /// Fixed T/tau_D of the feasibility sweeps.
        #[arg(long)]
        t_ratio: Option<f64>,
    },
    /// With/without-repeater resource comparison table (CSV).
    Repeaters {
        #[arg(long, default_value_t = 10.0)]
        l_min: f64,
        #[arg(long, default_value_t = 200.0)]
        l_max: f64,
        #[arg(long, default_value_t = 20)]
        l_points: usize,
        #[arg(long, value_delimiter = ',', default_value = "1,2,3,4")]
        n_list: Vec<u32>,
        #[arg(long, default_value_t = 1.0)]
        temporal_m: f64,
    },
    /// Feasibility grid of the noise-tolerance inequality (CSV).
    FtRegion {
        #[arg(long, value_enum, default_value_t = AxisArg::Eta)]
        x_axis: AxisArg,
        #[arg(long, value_enum, default_value_t = AxisArg::Pd)]
        y_axis: AxisArg,
        #[arg(long)]
        x_min: Option<f64>,
        #[arg(long)]
        x_max: Option<f64>,
        #[arg(long)]
        y_min: Option<f64>,
        #[arg(long)]
        y_max: Option<f64>,
        #[arg(long, default_value_t = 200)]
        resolution: usize,
        /// Fixed gate error.
        #[arg(long, default_value_t = 1e-4)]
        eps: f64,
        /// Fixed T/tau_D.
        #[arg(long, default_value_t = 1e-4)]
        t_ratio: f64,
        /// Fixed beta1 (when neither axis determines it).
        #[arg(long, default_value_t = 1.0)]
        beta1: f64,
        /// Fixed transmissivity (when only excess noise sweeps).
        #[arg(long, default_value_t = 1.0)]
        eta: f64,
        /// Fixed excess noise (when only transmissivity sweeps).
        #[arg(long, default_value_t = 0.0)]
        pd: f64,
        /// Right-hand side of the inequality.
        #[arg(long, default_value_t = FT_RHS_DEFAULT)]
        rhs: f64,
        /// Also write the lhs = rhs contour to this file.
        #[arg(long)]
        boundary_out: Option<PathBuf>,
    },
    /// Monte Carlo validation of an analytic probability.
    Simulate {
        #[arg(long, value_enum)]
        experiment: ExperimentArg,
        /// Per-attempt (per-hop) success probability.
        #[arg(long)]
        p: f64,
        /// Temporal multiplexing degree (integer for simulation).
        #[arg(long, default_value_t = 1)]
        temporal_m: u32,
        /// Spatial multiplexing degree.
        #[arg(long, default_value_t = 1)]
        spatial_m: u32,
    },
    /// Re-derive the inequality coefficients by first-order error
    /// enumeration and audit them against the reference values.
    VerifyAppendix {
        /// Minimum check-operator expectation, as a decimal or a/b.
        #[arg(long, default_value = "0.7")]
        floor: String,
        #[arg(long)]
        initial_pairs: Option<u32>,
        /// Intra-cell teleported CNOT links.
        #[arg(long)]
        links: Option<u32>,
        #[arg(long)]
        neighbor_links: Option<u32>,
        /// Faces measured at the end of the cycle.
        #[arg(long)]
        faces: Option<u32>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AxisArg {
    Eta,
    Pd,
    Beta1,
    Eps,
    TRatio,
}

impl AxisArg {
    fn to_axis(self) -> GridAxis {
        match self {
            AxisArg::Eta => GridAxis::Eta,
            AxisArg::Pd => GridAxis::ExcessNoise,
            AxisArg::Beta1 => GridAxis::Beta1,
            AxisArg::Eps => GridAxis::GateError,
            AxisArg::TRatio => GridAxis::DecoherenceRatio,
        }
    }

    fn default_range(self) -> (f64, f64) {
        match self {
            AxisArg::Eta => (1e-3, 1.0),
            AxisArg::Pd => (0.0, 0.99),
            AxisArg::Beta1 => (0.98, 1.0),
            AxisArg::Eps => (0.0, 4e-3),
            AxisArg::TRatio => (0.0, 2e-3),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ExperimentArg {
    Bond,
    Chain,
    TwoLayer,
}

enum CmdError {
    Invalid(String),
    Verification(String),
}

impl From<std::io::Error> for CmdError {
    fn from(e: std::io::Error) -> Self {
        CmdError::Invalid(format!("i/o error: {e}"))
    }
}

impl From<figures::SweepError> for CmdError {
    fn from(e: figures::SweepError) -> Self {
        CmdError::Invalid(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CmdError::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(CmdError::Invalid(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn load_params(cli: &Cli) -> Result<Params, CmdError> {
    let mut params = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CmdError::Invalid(format!("cannot read {}: {e}", path.display())))?;
            Params::from_toml_str(&text).map_err(|e| CmdError::Invalid(e.to_string()))?
        }
        None => Params::preset_table2(),
    };
    cli.overrides.apply(&mut params);
    params
        .validate()
        .map_err(|e| CmdError::Invalid(e.to_string()))?;
    Ok(params)
}

fn run(cli: Cli) -> Result<(), CmdError> {
    let fmt = NumberFormat {
        precision: cli.precision,
    };
    let params = load_params(&cli)?;
    match &cli.command {
        Command::Estimate {
            spatial_m,
            distance_km,
        } => cmd_estimate(&cli, &params, fmt, *spatial_m, *distance_km),
        Command::Sweep {
            figure,
            points,
            resolution,
            m_list,
            spatial_m_list,
            n_list,
            temporal_m,
            eps,
            t_ratio,
        } => {
            let opts = SweepOptions {
                points: *points,
                resolution: *resolution,
                m_list: m_list.clone(),
                spatial_m_list: spatial_m_list.clone(),
                n_list: n_list.clone(),
                temporal_m: *temporal_m,
                eps: *eps,
                t_ratio: *t_ratio,
            };
            let mut table = figures::sweep(*figure, &params, &opts)?;
            table.comments.insert(0, format!("tool: ionmux v{VERSION}"));
            table
                .comments
                .insert(1, format!("subcommand: sweep {}", figure.label()));
            emit(&cli.out, &table.render(fmt))?;
            Ok(())
        }
        Command::Repeaters {
            l_min,
            l_max,
            l_points,
            n_list,
            temporal_m,
        } => {
            if *l_points < 2 || l_min.is_nan() || *l_min <= 0.0 || l_min >= l_max {
                return Err(CmdError::Invalid(
                    "distance grid needs 0 < l_min < l_max and at least 2 points".into(),
                ));
            }
            let distances: Vec<f64> = (0..*l_points)
                .map(|k| l_min + (l_max - l_min) * k as f64 / (*l_points as f64 - 1.0))
                .collect();
            let rows = repeater_comparison_table(
                &distances,
                n_list,
                *temporal_m,
                params.thresholds.p_th,
                &params.timing,
                &params.geometry,
                &params.channel,
            )
            .map_err(|e| CmdError::Invalid(e.to_string()))?;
            let mut table = Table::new(vec![
                "distance_km",
                "n_repeaters",
                "memory_without",
                "memory_with",
                "communication_without",
                "communication_with",
            ])
            .comment(format!("tool: ionmux v{VERSION}"))
            .comment("subcommand: repeaters");
            for r in rows {
                table.push(vec![
                    r.distance_km,
                    r.n_repeaters as f64,
                    r.memory_without,
                    r.memory_with,
                    r.communication_without,
                    r.communication_with,
                ]);
            }
            emit(&cli.out, &table.render(fmt))?;
            Ok(())
        }
        Command::FtRegion {
            x_axis,
            y_axis,
            x_min,
            x_max,
            y_min,
            y_max,
            resolution,
            eps,
            t_ratio,
            beta1,
            eta,
            pd,
            rhs,
            boundary_out,
        } => {
            let (xd, yd) = (x_axis.default_range(), y_axis.default_range());
            let spec = GridSpec {
                x: AxisRange {
                    axis: x_axis.to_axis(),
                    min: x_min.unwrap_or(xd.0),
                    max: x_max.unwrap_or(xd.1),
                },
                y: AxisRange {
                    axis: y_axis.to_axis(),
                    min: y_min.unwrap_or(yd.0),
                    max: y_max.unwrap_or(yd.1),
                },
                resolution: *resolution,
                fixed: FixedInputs {
                    eps: *eps,
                    t_over_tau_d: *t_ratio,
                    beta1: *beta1,
                    eta: *eta,
                    pd: *pd,
                },
                rhs: *rhs,
            };
            let mut table = figures::grid_table(&spec)?;
            table.comments.insert(0, format!("tool: ionmux v{VERSION}"));
            table
                .comments
                .insert(1, "subcommand: ft-region".to_string());
            emit(&cli.out, &table.render(fmt))?;
            if let Some(path) = boundary_out {
                let boundary = figures::boundary_table(&spec)?;
                write_file(path, &boundary.render(fmt))?;
            }
            Ok(())
        }
        Command::Simulate {
            experiment,
            p,
            temporal_m,
            spatial_m,
        } => cmd_simulate(&cli, &params, fmt, *experiment, *p, *temporal_m, *spatial_m),
        Command::VerifyAppendix {
            floor,
            initial_pairs,
            links,
            neighbor_links,
            faces,
        } => cmd_verify(
            &cli,
            fmt,
            floor,
            *initial_pairs,
            *links,
            *neighbor_links,
            *faces,
        ),
    }
}

fn cmd_estimate(
    cli: &Cli,
    params: &Params,
    fmt: NumberFormat,
    spatial_m: u32,
    distance_km: Option<f64>,
) -> Result<(), CmdError> {
    if spatial_m < 1 {
        return Err(CmdError::Invalid("spatial_m must be >= 1".into()));
    }
    let distance = distance_km.unwrap_or(params.geometry.inter_site_distance_km);
    let hop = attempt_success_probability(&params.channel, distance);
    if hop.p < f64::EPSILON {
        return Err(CmdError::Invalid(format!(
            "unreachable threshold: attempt probability {} is below machine epsilon",
            hop.p
        )));
    }
    let p_th = params.thresholds.p_th;
    let schedule =
        code_cycle_from_probability(&params.timing, &params.channel, distance, spatial_m, p_th)
            .map_err(|e| CmdError::Invalid(e.to_string()))?;
    let budget =
        ion_budget_without_repeaters(hop.p, spatial_m, p_th, &params.timing, &params.geometry)
            .map_err(|e| CmdError::Invalid(e.to_string()))?;

    let f = |v: f64| fmt.fmt(v);
    let mut text = String::new();
    text.push_str(&format!("ionmux v{VERSION} estimate\n"));
    text.push_str(&format!(
        "distance_km = {}, spatial_m = {spatial_m}, p_th = {}\n",
        f(distance),
        f(p_th)
    ));
    text.push_str(&format!("attempt_probability_p = {}\n", f(hop.p)));
    text.push_str(&format!(
        "  (eta_cc = {}, eta_trans = {}, eta_det = {})\n",
        f(hop.eta_cc),
        f(hop.eta_trans),
        f(hop.eta_det)
    ));
    text.push_str(&format!(
        "required_product_mM = {}\n",
        f(schedule.temporal_m * spatial_m as f64)
    ));
    text.push_str(&format!("temporal_m = {}\n", f(schedule.temporal_m)));
    if spatial_m == 1 {
        text.push_str("strategy = repeat until success (single communication ion per bond)\n");
    } else {
        text.push_str(&format!(
            "strategy = {spatial_m} parallel attempts per clock cycle\n"
        ));
    }
    text.push_str(&format!("time_step_T_s = {}\n", f(schedule.time_step)));
    if schedule.comm_lifetime_warning {
        text.push_str(
            "warning: configured communication-ion lifetime does not exceed the time step\n",
        );
    }
    text.push_str(&format!("tau1_s = {}\n", f(schedule.tau1)));
    text.push_str(&format!("tau2_s = {}\n", f(schedule.tau2)));
    text.push_str(&format!("tau3_s = {}\n", f(schedule.tau3)));
    text.push_str(&format!("tau4_s = {}\n", f(schedule.tau4)));
    text.push_str(&format!(
        "reuse_window_j = {}\n",
        reuse_window(&params.timing)
    ));
    text.push_str(&format!(
        "memory_ions = {} (ceil {})\n",
        f(budget.memory_ions_real),
        budget.memory_ions
    ));
    text.push_str(&format!(
        "communication_ions = {} (ceil {})\n",
        f(budget.communication_ions_real),
        budget.communication_ions
    ));
    emit(&cli.out, &text)?;
    Ok(())
}

fn cmd_simulate(
    cli: &Cli,
    params: &Params,
    fmt: NumberFormat,
    experiment: ExperimentArg,
    p: f64,
    temporal_m: u32,
    spatial_m: u32,
) -> Result<(), CmdError> {
    let cfg = TrialConfig {
        p,
        temporal_m,
        spatial_m,
        n_repeaters: params.geometry.n_repeaters,
        bond_count: params.geometry.bond_count,
        trials: cli.trials.unwrap_or(10_000),
        seed: cli.seed.unwrap_or(0),
    };
    let f = |v: f64| fmt.fmt(v);
    let mut text = String::new();
    let z = match experiment {
        ExperimentArg::Bond | ExperimentArg::Chain => {
            let est = if experiment == ExperimentArg::Bond {
                simulate_bond(&cfg)
            } else {
                simulate_chain(&cfg)
            }
            .map_err(|e| CmdError::Invalid(e.to_string()))?;
            text.push_str(&format!(
                "experiment = {}\n",
                if experiment == ExperimentArg::Bond {
                    "bond"
                } else {
                    "chain"
                }
            ));
            if experiment == ExperimentArg::Chain {
                text.push_str(&format!("hops = {}\n", cfg.n_repeaters + 1));
            }
            text.push_str(&format!(
                "p = {}, temporal_m = {temporal_m}, spatial_m = {spatial_m}, trials = {}, seed = {}\n",
                f(p), cfg.trials, cfg.seed
            ));
            text.push_str(&format!("p_hat = {}\n", f(est.p_hat)));
            text.push_str(&format!("ci95 = [{}, {}]\n", f(est.ci_low), f(est.ci_high)));
            text.push_str(&format!("analytic = {}\n", f(est.analytic)));
            text.push_str(&format!("z = {}\n", f(est.z_score)));
            est.z_score
        }
        ExperimentArg::TwoLayer => {
            let stats = simulate_two_layer(&cfg, &params.thresholds)
                .map_err(|e| CmdError::Invalid(e.to_string()))?;
            text.push_str("experiment = two-layer\n");
            text.push_str(&format!(
                "p = {}, temporal_m = {temporal_m}, spatial_m = {spatial_m}, bonds = {}, trials = {}, seed = {}\n",
                f(p), cfg.bond_count, cfg.trials, cfg.seed
            ));
            text.push_str(&format!("mean_failed_bonds = {}\n", f(stats.mean_failures)));
            text.push_str(&format!(
                "per_bond_failure_rate = {} (analytic {})\n",
                f(stats.per_bond_failure.p_hat),
                f(stats.per_bond_failure.analytic)
            ));
            text.push_str(&format!(
                "ci95 = [{}, {}]\n",
                f(stats.per_bond_failure.ci_low),
                f(stats.per_bond_failure.ci_high)
            ));
            text.push_str(&format!("z = {}\n", f(stats.per_bond_failure.z_score)));
            text.push_str(&format!(
                "fraction_of_rounds_above_adaptive_tolerance({}) = {}\n",
                f(stats.adaptive_threshold),
                f(stats.fraction_above_adaptive)
            ));
            text.push_str("failed_bonds,rounds\n");
            for (k, count) in stats.failure_counts.iter().enumerate() {
                if *count > 0 {
                    text.push_str(&format!("{k},{count}\n"));
                }
            }
            stats.per_bond_failure.z_score
        }
    };
    let agree = z.abs() < 4.0;
    text.push_str(&format!(
        "verdict = {}\n",
        if agree { "agree (|z| < 4)" } else { "DISAGREE" }
    ));
    emit(&cli.out, &text)?;
    if agree {
        Ok(())
    } else {
        Err(CmdError::Verification(format!(
            "|z| = {} >= 4 against the analytic value",
            z.abs()
        )))
    }
}

/// Parse a rational from "0.7", "7/10", or "1".
fn parse_rational(s: &str) -> Result<Rational, String> {
    let bad = |_| format!("cannot parse '{s}' as a rational");
    if let Some((n, d)) = s.split_once('/') {
        let n: i64 = n.trim().parse().map_err(bad)?;
        let d: i64 = d.trim().parse().map_err(bad)?;
        if d == 0 {
            return Err("zero denominator".into());
        }
        Ok(Rational::new(n, d))
    } else if let Some((int, frac)) = s.split_once('.') {
        let digits = format!("{int}{frac}");
        let n: i64 = digits.parse().map_err(bad)?;
        let d = 10i64
            .checked_pow(frac.len() as u32)
            .ok_or_else(|| "too many fractional digits".to_string())?;
        Ok(Rational::new(n, d))
    } else {
        let n: i64 = s.trim().parse().map_err(bad)?;
        Ok(Rational::from_integer(n))
    }
}

fn rational_line(label: &str, r: Rational) -> String {
    format!("{label} = {} ({})\n", r, r.to_f64().unwrap())
}

fn render_audit(report: &AuditReport, constants: &InequalityConstants, floor: Rational) -> String {
    let mut text = String::new();
    text.push_str(&format!(
        "ionmux v{VERSION} unit-cell check-operator error audit\n"
    ));
    text.push_str("\nfirst-order coefficients of (eps, T/tau_D, 1-delta):\n");
    for (label, v) in [
        ("category I   (initial pairs)   ", &report.type1),
        ("category II  (teleported links)", &report.type2),
        ("category III (face readout)    ", &report.type3),
        ("total                          ", &report.total),
    ] {
        text.push_str(&format!(
            "  {label}: {}, {}, {}\n",
            v.eps, v.decoherence, v.depol
        ));
    }
    text.push_str(&format!("\nnormalized inequality (floor = {floor}):\n"));
    text.push_str(&format!(
        "  eps + ({})*(T/tau_D) + ({})*(1 - sqrt(beta1)) < {}\n",
        constants.decoherence_coeff, constants.depol_coeff, constants.rhs
    ));
    text.push_str(&rational_line(
        "  decoherence_coeff",
        constants.decoherence_coeff,
    ));
    text.push_str(&rational_line("  depol_coeff", constants.depol_coeff));
    text.push_str(&rational_line("  rhs", constants.rhs));
    if report.matches_reference() {
        text.push_str("\nreference match: PASS\n");
    } else {
        text.push_str("\nreference match: FAIL\n");
        for d in &report.discrepancies {
            text.push_str(&format!("  DISCREPANCY {d}\n"));
        }
        let mut listed: Vec<&str> = report
            .discrepancies
            .iter()
            .map(|d| d.category)
            .filter(|c| *c != "total")
            .collect();
        listed.dedup();
        for category in listed {
            text.push_str(&format!("\nflipping locations, category {category}:\n"));
            for l in report.flipping_locations(category) {
                text.push_str(&format!(
                    "  gadget {} event {} {}: {} -> {}  weight {}\n",
                    l.gadget,
                    l.event,
                    l.source.label(),
                    l.inserted,
                    l.residual,
                    l.weight
                ));
            }
        }
    }
    text
}

fn cmd_verify(
    cli: &Cli,
    _fmt: NumberFormat,
    floor: &str,
    initial_pairs: Option<u32>,
    links: Option<u32>,
    neighbor_links: Option<u32>,
    faces: Option<u32>,
) -> Result<(), CmdError> {
    let floor = parse_rational(floor).map_err(CmdError::Invalid)?;
    if floor < Rational::new(0, 1) || floor > Rational::new(1, 1) {
        return Err(CmdError::Invalid(format!(
            "floor must be in [0, 1], got {floor}"
        )));
    }
    let defaults = StructuralCounts::default();
    let counts = StructuralCounts {
        initial_bell_pairs: initial_pairs.unwrap_or(defaults.initial_bell_pairs),
        intra_cell_links: links.unwrap_or(defaults.intra_cell_links),
        neighbor_links: neighbor_links.unwrap_or(defaults.neighbor_links),
        measured_faces: faces.unwrap_or(defaults.measured_faces),
    };
    let circuit = build_unit_cell_circuit(counts).map_err(|e| CmdError::Invalid(e.to_string()))?;
    let report = enumerate_first_order(&circuit);
    let constants = derive_threshold_inequality(&report.total, floor);
    let text = render_audit(&report, &constants, floor);
    emit(&cli.out, &text)?;

    let (_, _, _, reference_total) = reference_coefficients();
    let reference_constants = derive_threshold_inequality(&reference_total, Rational::new(7, 10));
    let constants_ok = constants.decoherence_coeff == reference_constants.decoherence_coeff
        && constants.depol_coeff == reference_constants.depol_coeff
        && (floor != Rational::new(7, 10) || constants.rhs == reference_constants.rhs);
    if report.matches_reference() && constants_ok {
        Ok(())
    } else {
        Err(CmdError::Verification(
            "enumerated coefficients deviate from the reference values".into(),
        ))
    }
}
