//! Analysis toolkit for fault-tolerant measurement-based quantum computation
//! over optically networked trapped-ion modules.
//!
//! The crate is organized around the questions an architecture study has to
//! answer before hardware is committed:
//!
//! - [`params`] — validated physical parameters (timings, optical channel,
//!   geometry, thresholds) with a named preset of typical trapped-ion values.
//! - [`entanglement`] — closed-form success probabilities for heralded remote
//!   Bell-pair generation, with spatial/temporal multiplexing and repeater
//!   chains.
//! - [`codecycle`] — code-cycle timing schedules and memory/communication ion
//!   budgets for the bi-layered lattice construction.
//! - [`noise`] — heralded mixed-state coefficients of the photonically
//!   mediated Bell pair, the depolarizing-channel equivalence, and the
//!   fault-tolerance inequality with feasibility-region grids.
//! - [`pauli`] — first-order Pauli error enumeration through the unit-cell
//!   generation circuit, reproducing the threshold inequality coefficients by
//!   independent counting in exact rational arithmetic.
//! - [`montecarlo`] — seeded stochastic validation of every analytic
//!   probability in [`entanglement`].

pub mod codecycle;
pub mod entanglement;
pub mod montecarlo;
pub mod noise;
pub mod params;
pub mod pauli;

pub use params::{ChannelParams, Geometry, MultiplexPlan, Params, Thresholds, TimingParams};
