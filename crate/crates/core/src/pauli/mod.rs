//! First-order Pauli error enumeration through the unit-cell generation
//! circuit.
//!
//! The check operator of a primal unit cell is the product of X over its
//! six face qubits, so its measured parity is flipped by any error whose
//! propagated Pauli string carries Z (or Y) on an odd number of faces.
//! [`string`] provides the sparse Pauli-string algebra and the CNOT
//! conjugation rules, [`circuit`] builds the per-gadget event list of one
//! unit cell's generation, and [`audit`] enumerates every first-order
//! error location, propagates it through the remaining circuit, and
//! accumulates exact rational coefficients of the three symbolic rates
//! (gate error ε, decoherence T/τ_D, remote-pair depolarization 1 − δ).
//!
//! The resulting totals normalize into the inequality consumed by
//! [`crate::noise`], and the audit compares every per-category
//! coefficient against the reference values, reporting any deviation with
//! per-location traces.

pub mod audit;
pub mod circuit;
pub mod string;

pub use audit::{
    bell_pair_class, derive_threshold_inequality, enumerate_first_order, reference_coefficients,
    stabilizer_expectation, AuditReport, BellClass, CoefficientVector, Discrepancy,
    InequalityConstants, LocationTrace, Rational, SourceTerm, StabilizerExpectation,
    BELL_PAIR_CLASS_TABLE,
};
pub use circuit::{
    build_unit_cell_circuit, CircuitError, Event, Gadget, GadgetKind, MeasBasis, StructuralCounts,
    UnitCellCircuit, FACE_COUNT,
};
pub use string::{
    cnot_propagate, flips_check_parity, symplectic_product, CellTag, Pauli, PauliString, QubitId,
    Role,
};
