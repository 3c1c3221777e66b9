//! Event-list model of one unit cell's generation circuit.
//!
//! The circuit is a sequence of gadgets of four kinds:
//!
//! - **Initial Bell pairs** seed the cell's own lattice qubits: one remote
//!   pair per owned face (three by default; the other faces are seeded by
//!   neighboring cells). The pair survives into the lattice, so the gadget
//!   ends with a [`Event::BellClassify`] that reduces any accumulated pair
//!   error to its single-qubit equivalence class.
//! - **Teleported CNOT links** fuse a face qubit (control) to an edge qubit
//!   (target) by consuming an ancilla Bell pair (f′, e′): local CNOTs
//!   f → f′ and e′ → e, then a Z measurement of f′ (outcome errors become X
//!   corrections on the edge) and an X measurement of e′ (outcome errors
//!   become Z corrections on the face). Each gadget carries one round of
//!   memory errors on its four qubits before the CNOTs and one after.
//!   Default: three links per face, 18 in-cell.
//! - **Neighbor links** are the same gadget owned by an adjacent cell: its
//!   face is foreign, but residual Z on the shared edge propagates once
//!   into this cell through the cell's own fusion, modeled by the terminal
//!   [`Event::LatticeFuse`]. Of the neighboring cells' links, six affect
//!   this cell's check parity; that count is a structural parameter, not
//!   re-derived from the 3D adjacency.
//! - **Face measurements** close the cycle: the six faces are read out, and
//!   an outcome-flipping error on a face flips the check directly.

use super::string::{CellTag, Pauli, QubitId, Role};
use thiserror::Error;

/// Faces of one unit cell.
pub const FACE_COUNT: u32 = 6;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CircuitError {
    #[error("inconsistent structural counts: {0}")]
    Inconsistent(String),
}

/// Measurement basis of an ancilla readout.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeasBasis {
    X,
    Z,
}

/// One scheduled operation. Variants without an error model
/// ([`Event::BellClassify`], [`Event::LatticeFuse`]) exist purely to define
/// how earlier errors keep propagating.
#[derive(Debug, Clone, PartialEq)]
pub enum Event {
    /// Remote Bell-pair preparation; reinitializes both qubits and carries
    /// single-qubit depolarizing noise of total strength 3(1−δ)/4 on each.
    BellPrep { a: QubitId, b: QubitId },
    /// One time step of storage on the listed qubits; per-Pauli error
    /// weight T/(3τ_D) on each.
    MemoryStep { qubits: Vec<QubitId> },
    /// Local CNOT followed by a two-qubit depolarizing channel (each of
    /// the 15 error patterns at weight ε/15).
    Cnot { control: QubitId, target: QubitId },
    /// Ancilla readout. A resident error anticommuting with the basis
    /// flips the classical outcome, which mis-applies the Pauli frame
    /// `correction` on `correction_target`; the measured qubit then leaves
    /// the propagation. Readout errors carry weight ε/3 per Pauli.
    AncillaMeasure {
        qubit: QubitId,
        basis: MeasBasis,
        correction: Pauli,
        correction_target: QubitId,
    },
    /// Final readout of a face qubit; readout errors carry weight ε/3 per
    /// Pauli, of which the outcome-flipping ones affect the check.
    FaceMeasure { qubit: QubitId },
    /// Reduce a surviving lattice Bell pair's accumulated two-qubit error
    /// to its equivalence class, applied as the class representative on
    /// the face.
    BellClassify { face: QubitId, edge: QubitId },
    /// Error-free bookkeeping CNOT (face → edge) standing for the single
    /// onward fusion an edge error can still reach.
    LatticeFuse { face: QubitId, edge: QubitId },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GadgetKind {
    InitialBellPair,
    IntraCellLink,
    NeighborLink,
    FaceMeasurement,
}

impl GadgetKind {
    /// Error-category label used in audit output.
    pub fn category(self) -> &'static str {
        match self {
            GadgetKind::InitialBellPair => "I",
            GadgetKind::IntraCellLink | GadgetKind::NeighborLink => "II",
            GadgetKind::FaceMeasurement => "III",
        }
    }
}

/// A statistically independent error source: one contiguous slice of the
/// event list.
#[derive(Debug, Clone, PartialEq)]
pub struct Gadget {
    pub kind: GadgetKind,
    pub index: usize,
    pub events: Vec<Event>,
}

/// Structural counts of the unit-cell circuit, each defaulting to the
/// geometry of the cubic-lattice cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StructuralCounts {
    /// Remote pairs seeding this cell's own lattice qubits.
    pub initial_bell_pairs: u32,
    /// Teleported CNOT links inside the cell (3 per face).
    pub intra_cell_links: u32,
    /// Neighbor-cell links whose edge error reaches an odd number of this
    /// cell's faces.
    pub neighbor_links: u32,
    /// Faces measured out at the end of the cycle.
    pub measured_faces: u32,
}

impl Default for StructuralCounts {
    fn default() -> Self {
        StructuralCounts {
            initial_bell_pairs: 3,
            intra_cell_links: 18,
            neighbor_links: 6,
            measured_faces: 6,
        }
    }
}

impl StructuralCounts {
    fn validate(&self) -> Result<(), CircuitError> {
        if self.initial_bell_pairs > FACE_COUNT {
            return Err(CircuitError::Inconsistent(format!(
                "initial_bell_pairs = {} exceeds the {} faces of a cell",
                self.initial_bell_pairs, FACE_COUNT
            )));
        }
        if self.measured_faces > FACE_COUNT {
            return Err(CircuitError::Inconsistent(format!(
                "measured_faces = {} exceeds the {} faces of a cell",
                self.measured_faces, FACE_COUNT
            )));
        }
        Ok(())
    }
}

/// The built circuit: six faces plus the gadget sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitCellCircuit {
    pub counts: StructuralCounts,
    pub faces: Vec<QubitId>,
    pub gadgets: Vec<Gadget>,
}

impl UnitCellCircuit {
    /// Flattened event list with the owning gadget of each event.
    pub fn flattened(&self) -> Vec<(usize, &Event)> {
        self.gadgets
            .iter()
            .flat_map(|g| g.events.iter().map(move |e| (g.index, e)))
            .collect()
    }

    /// Gadget counts per kind, in declaration order: (initial pairs,
    /// intra-cell links, neighbor links, face measurements).
    pub fn census(&self) -> (usize, usize, usize, usize) {
        let count = |k: GadgetKind| self.gadgets.iter().filter(|g| g.kind == k).count();
        (
            count(GadgetKind::InitialBellPair),
            count(GadgetKind::IntraCellLink),
            count(GadgetKind::NeighborLink),
            count(GadgetKind::FaceMeasurement),
        )
    }
}

/// Build the unit-cell circuit for the given structural counts.
pub fn build_unit_cell_circuit(counts: StructuralCounts) -> Result<UnitCellCircuit, CircuitError> {
    counts.validate()?;
    let faces: Vec<QubitId> = (0..FACE_COUNT).map(QubitId::face).collect();
    let mut gadgets = Vec::new();
    let mut edge_counter = 0u32;

    for k in 0..counts.initial_bell_pairs {
        let face = faces[(k % FACE_COUNT) as usize];
        let edge = QubitId::edge(edge_counter);
        edge_counter += 1;
        gadgets.push(Gadget {
            kind: GadgetKind::InitialBellPair,
            index: gadgets.len(),
            events: vec![
                Event::BellPrep { a: face, b: edge },
                Event::MemoryStep {
                    qubits: vec![face, edge],
                },
                Event::BellClassify { face, edge },
            ],
        });
    }

    for k in 0..counts.intra_cell_links {
        let face = faces[(k % FACE_COUNT) as usize];
        let edge = QubitId::edge(edge_counter);
        edge_counter += 1;
        gadgets.push(Gadget {
            kind: GadgetKind::IntraCellLink,
            index: gadgets.len(),
            events: link_events(face, edge, k, CellTag::ThisCell, None),
        });
    }

    for k in 0..counts.neighbor_links {
        let foreign_face = QubitId {
            cell: CellTag::Neighbor,
            role: Role::Face,
            index: k,
        };
        let edge = QubitId::edge(edge_counter);
        edge_counter += 1;
        let adjacent_face = faces[(k % FACE_COUNT) as usize];
        gadgets.push(Gadget {
            kind: GadgetKind::NeighborLink,
            index: gadgets.len(),
            events: link_events(
                foreign_face,
                edge,
                counts.intra_cell_links + k,
                CellTag::Neighbor,
                Some(adjacent_face),
            ),
        });
    }

    for k in 0..counts.measured_faces {
        gadgets.push(Gadget {
            kind: GadgetKind::FaceMeasurement,
            index: gadgets.len(),
            events: vec![Event::FaceMeasure {
                qubit: faces[k as usize],
            }],
        });
    }

    Ok(UnitCellCircuit {
        counts,
        faces,
        gadgets,
    })
}

/// Teleported CNOT gadget between `face` (control) and `edge` (target),
/// consuming the ancilla pair (f′, e′). `fuse_into` marks a neighbor-owned
/// link whose residual edge error still fuses once into the given adjacent
/// face.
fn link_events(
    face: QubitId,
    edge: QubitId,
    ancilla_index: u32,
    ancilla_cell: CellTag,
    fuse_into: Option<QubitId>,
) -> Vec<Event> {
    let f_anc = QubitId {
        cell: ancilla_cell,
        role: Role::AncillaFace,
        index: ancilla_index,
    };
    let e_anc = QubitId {
        cell: ancilla_cell,
        role: Role::AncillaEdge,
        index: ancilla_index,
    };
    let all = vec![face, edge, f_anc, e_anc];
    let mut events = vec![
        Event::BellPrep { a: f_anc, b: e_anc },
        Event::MemoryStep {
            qubits: all.clone(),
        },
        Event::Cnot {
            control: face,
            target: f_anc,
        },
        Event::Cnot {
            control: e_anc,
            target: edge,
        },
        Event::MemoryStep { qubits: all },
        Event::AncillaMeasure {
            qubit: f_anc,
            basis: MeasBasis::Z,
            correction: Pauli::X,
            correction_target: edge,
        },
        Event::AncillaMeasure {
            qubit: e_anc,
            basis: MeasBasis::X,
            correction: Pauli::Z,
            correction_target: face,
        },
    ];
    if let Some(adjacent) = fuse_into {
        events.push(Event::LatticeFuse {
            face: adjacent,
            edge,
        });
    }
    events
}
