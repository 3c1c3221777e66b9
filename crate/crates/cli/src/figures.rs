//! Figure-reproduction sweeps: each tag produces the data behind one of
//! the standard plots, as a CSV table with fixed columns and documented
//! default grids. Every default can be overridden from the command line.

use crate::output::Table;
use ionmux::codecycle::{code_cycle_schedule, repeater_comparison_table, reuse_window};
use ionmux::entanglement::{heralding_time, required_multiplex_product, AnalyticsError};
use ionmux::noise::{boundary_points, feasibility_grid, GridSpec, NoiseError};
use ionmux::params::Params;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum FigureTag {
    /// Spatial multiplexing required vs attempt probability, per temporal degree.
    Fig6,
    /// Code-cycle duration vs attempt probability, per spatial degree.
    Fig9,
    /// Communication ions vs attempt probability, per spatial degree.
    Fig10,
    /// Code-cycle duration vs communication ions over a (p, M) grid.
    Fig11,
    /// Memory ions with vs without repeaters over distance.
    Fig13,
    /// Communication ions with vs without repeaters over distance.
    Fig14,
    /// Feasibility grid over (transmissivity, excess noise).
    Ft15,
    /// Feasibility grid over (beta1, T/tau_D).
    Ft16,
    /// Feasibility grid over (beta1, gate error).
    Ft17,
}

impl FigureTag {
    pub fn label(self) -> &'static str {
        match self {
            FigureTag::Fig6 => "fig6",
            FigureTag::Fig9 => "fig9",
            FigureTag::Fig10 => "fig10",
            FigureTag::Fig11 => "fig11",
            FigureTag::Fig13 => "fig13",
            FigureTag::Fig14 => "fig14",
            FigureTag::Ft15 => "ft15",
            FigureTag::Ft16 => "ft16",
            FigureTag::Ft17 => "ft17",
        }
    }
}

/// Sweep knobs; unset fields use the figure's documented defaults.
#[derive(Debug, Clone, Default)]
pub struct SweepOptions {
    /// Points along the probability axis.
    pub points: Option<usize>,
    /// Grid resolution of the feasibility sweeps.
    pub resolution: Option<usize>,
    /// Temporal degrees for fig6.
    pub m_list: Option<Vec<f64>>,
    /// Spatial degrees for fig9/fig10.
    pub spatial_m_list: Option<Vec<u32>>,
    /// Repeater counts for fig13/fig14.
    pub n_list: Option<Vec<u32>>,
    /// Temporal degree for fig14 (and fig13's communication columns).
    pub temporal_m: Option<f64>,
    /// Fixed gate error of the feasibility sweeps.
    pub eps: Option<f64>,
    /// Fixed decoherence ratio of the feasibility sweeps.
    pub t_ratio: Option<f64>,
}

pub fn log_spaced(min: f64, max: f64, points: usize) -> Vec<f64> {
    let (lmin, lmax) = (min.ln(), max.ln());
    (0..points)
        .map(|k| (lmin + (lmax - lmin) * k as f64 / (points - 1) as f64).exp())
        .collect()
}

/// 20 evenly spaced integers from 1 to 300.
fn spatial_grid_1_to_300() -> Vec<u32> {
    (0..20)
        .map(|k| (1.0 + k as f64 * 299.0 / 19.0).round() as u32)
        .collect()
}

pub fn sweep(tag: FigureTag, params: &Params, opts: &SweepOptions) -> Result<Table, SweepError> {
    let p_th = params.thresholds.p_th;
    let timing = &params.timing;
    let geometry = &params.geometry;
    let channel = &params.channel;
    let spf = geometry.site_pair_factor as f64;
    let tau_h = heralding_time(geometry.inter_site_distance_km, timing.refractive_index);
    let j = reuse_window(timing) as f64;

    let table = match tag {
        FigureTag::Fig6 => {
            let m_list = opts
                .m_list
                .clone()
                .unwrap_or_else(|| vec![1.0, 2.0, 3.0, 4.0, 5.0]);
            let p_grid = log_spaced(1e-4, 0.5, opts.points.unwrap_or(100));
            let mut t = Table::new(vec!["p", "m", "M_required"]);
            for &m in &m_list {
                for &p in &p_grid {
                    let product = required_multiplex_product(p, p_th)?;
                    t.push(vec![p, m, product / m]);
                }
            }
            t
        }
        FigureTag::Fig9 | FigureTag::Fig10 => {
            let m_list = opts
                .spatial_m_list
                .clone()
                .unwrap_or_else(|| vec![1, 5, 10, 20, 30, 50]);
            let p_grid = log_spaced(1e-4, 1e-1, opts.points.unwrap_or(100));
            let mut t = Table::new(if tag == FigureTag::Fig9 {
                vec!["p", "M", "tau4_s"]
            } else {
                vec!["p", "M", "communication_ions"]
            });
            for &spatial_m in &m_list {
                for &p in &p_grid {
                    let m = required_multiplex_product(p, p_th)? / spatial_m as f64;
                    let row = if tag == FigureTag::Fig9 {
                        let s = code_cycle_schedule(timing, m, tau_h);
                        vec![p, spatial_m as f64, s.tau4]
                    } else {
                        vec![p, spatial_m as f64, spf * spatial_m as f64 * m.min(j)]
                    };
                    t.push(row);
                }
            }
            t
        }
        FigureTag::Fig11 => {
            let m_list = opts
                .spatial_m_list
                .clone()
                .unwrap_or_else(spatial_grid_1_to_300);
            let p_grid = log_spaced(1e-4, 1e-1, opts.points.unwrap_or(20));
            let mut t = Table::new(vec!["p", "M", "communication_ions", "tau4_s"]);
            for &p in &p_grid {
                for &spatial_m in &m_list {
                    let m = required_multiplex_product(p, p_th)? / spatial_m as f64;
                    let s = code_cycle_schedule(timing, m, tau_h);
                    t.push(vec![
                        p,
                        spatial_m as f64,
                        spf * spatial_m as f64 * m.min(j),
                        s.tau4,
                    ]);
                }
            }
            t
        }
        FigureTag::Fig13 | FigureTag::Fig14 => {
            let n_list = opts.n_list.clone().unwrap_or_else(|| vec![1, 2, 3, 4]);
            let temporal_m =
                opts.temporal_m
                    .unwrap_or(if tag == FigureTag::Fig14 { 50.0 } else { 1.0 });
            let distances = ionmux::codecycle::default_distance_grid();
            let rows = repeater_comparison_table(
                &distances, &n_list, temporal_m, p_th, timing, geometry, channel,
            )?;
            let mut t = Table::new(if tag == FigureTag::Fig13 {
                vec![
                    "distance_km",
                    "n_repeaters",
                    "memory_without",
                    "memory_with",
                ]
            } else {
                vec![
                    "distance_km",
                    "n_repeaters",
                    "communication_without",
                    "communication_with",
                ]
            });
            for r in rows {
                let row = if tag == FigureTag::Fig13 {
                    vec![
                        r.distance_km,
                        r.n_repeaters as f64,
                        r.memory_without,
                        r.memory_with,
                    ]
                } else {
                    vec![
                        r.distance_km,
                        r.n_repeaters as f64,
                        r.communication_without,
                        r.communication_with,
                    ]
                };
                t.push(row);
            }
            t
        }
        FigureTag::Ft15 | FigureTag::Ft16 | FigureTag::Ft17 => {
            let res = opts.resolution.unwrap_or(200);
            let eps = opts.eps.unwrap_or(1e-4);
            let t_ratio = opts.t_ratio.unwrap_or(1e-4);
            let spec = match tag {
                FigureTag::Ft15 => GridSpec::eta_pd(eps, t_ratio, res),
                FigureTag::Ft16 => GridSpec::beta1_decoherence(eps, res),
                _ => GridSpec::beta1_gate_error(t_ratio, res),
            };
            grid_table(&spec)?
        }
    };
    Ok(table)
}

/// Feasibility grid as a table: (axis1, axis2, lhs, satisfied).
pub fn grid_table(spec: &GridSpec) -> Result<Table, SweepError> {
    let cells = feasibility_grid(spec)?;
    let mut t = Table::new(vec!["axis1", "axis2", "lhs", "satisfied"]);
    t.comments.push(format!("axis1: {}", spec.x.axis.name()));
    t.comments.push(format!("axis2: {}", spec.y.axis.name()));
    t.comments.push(format!("rhs: {}", spec.rhs));
    for c in cells {
        t.push(vec![c.x, c.y, c.lhs, if c.satisfied { 1.0 } else { 0.0 }]);
    }
    Ok(t)
}

/// Boundary contour of a feasibility grid as a two-column table.
pub fn boundary_table(spec: &GridSpec) -> Result<Table, SweepError> {
    let cells = feasibility_grid(spec)?;
    let pts = boundary_points(spec, &cells);
    let mut t = Table::new(vec!["axis1", "axis2"]);
    t.comments.push(format!("boundary of lhs = {}", spec.rhs));
    for (x, y) in pts {
        t.push(vec![x, y]);
    }
    Ok(t)
}

#[derive(Debug)]
pub enum SweepError {
    Analytics(AnalyticsError),
    Noise(NoiseError),
}

impl std::fmt::Display for SweepError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SweepError::Analytics(e) => write!(f, "{e}"),
            SweepError::Noise(e) => write!(f, "{e}"),
        }
    }
}

impl From<AnalyticsError> for SweepError {
    fn from(e: AnalyticsError) -> Self {
        SweepError::Analytics(e)
    }
}

impl From<NoiseError> for SweepError {
    fn from(e: NoiseError) -> Self {
        SweepError::Noise(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ionmux::params::Params;

    #[test]
    fn fig6_shape_and_columns() {
        let t = sweep(
            FigureTag::Fig6,
            &Params::preset_table2(),
            &SweepOptions::default(),
        )
        .unwrap();
        assert_eq!(t.columns, vec!["p", "m", "M_required"]);
        assert_eq!(t.rows.len(), 5 * 100);
    }

    #[test]
    fn fig11_spatial_grid_is_20_ints_1_to_300() {
        let g = spatial_grid_1_to_300();
        assert_eq!(g.len(), 20);
        assert_eq!(g[0], 1);
        assert_eq!(g[19], 300);
        assert!(g.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn fig13_grid_shape() {
        let t = sweep(
            FigureTag::Fig13,
            &Params::preset_table2(),
            &SweepOptions::default(),
        )
        .unwrap();
        assert_eq!(t.rows.len(), 20 * 4);
    }

    #[test]
    fn ft_grids_have_resolution_squared_cells() {
        let opts = SweepOptions {
            resolution: Some(21),
            ..SweepOptions::default()
        };
        for tag in [FigureTag::Ft15, FigureTag::Ft16, FigureTag::Ft17] {
            let t = sweep(tag, &Params::preset_table2(), &opts).unwrap();
            assert_eq!(t.rows.len(), 21 * 21, "{tag:?}");
        }
    }
}
