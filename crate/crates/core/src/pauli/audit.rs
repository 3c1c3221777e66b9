//! First-order error enumeration, exact rational coefficient audit, and
//! the threshold inequality derivation.
//!
//! Every error location in the circuit is a (event, qubit-set, Pauli)
//! triple with a symbolic per-Pauli weight: ε/15 for two-qubit gate
//! errors, ε/3 for readout errors, T/(3τ_D) for one memory step, and
//! (1−δ)/4 for each Pauli of the remote-pair depolarizing channel. The
//! enumerator propagates each location through the remaining circuit and
//! accumulates the weights of the parity-flipping ones into the flip
//! probability p_E of its gadget. The check-operator expectation is then
//! Π_E (1 − 2 p_E), whose first-order expansion carries the coefficient
//! triple audited here. Everything is exact `i64` rational arithmetic;
//! floats only appear when a numeric evaluation is requested.

use super::circuit::{Event, GadgetKind, MeasBasis, UnitCellCircuit};
use super::string::{flips_check_parity, Pauli, PauliString, QubitId};
use num_rational::Rational64;
use num_traits::{Signed, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, AddAssign};

pub type Rational = Rational64;

/// Coefficients of the three symbolic rates: gate error ε, decoherence
/// ratio T/τ_D, and remote-pair depolarization (1 − δ).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoefficientVector {
    pub eps: Rational,
    pub decoherence: Rational,
    pub depol: Rational,
}

impl CoefficientVector {
    pub fn zero() -> CoefficientVector {
        CoefficientVector {
            eps: Rational::zero(),
            decoherence: Rational::zero(),
            depol: Rational::zero(),
        }
    }

    pub fn new(eps: Rational, decoherence: Rational, depol: Rational) -> CoefficientVector {
        CoefficientVector {
            eps,
            decoherence,
            depol,
        }
    }

    pub fn scaled(&self, k: Rational) -> CoefficientVector {
        CoefficientVector {
            eps: self.eps * k,
            decoherence: self.decoherence * k,
            depol: self.depol * k,
        }
    }

    /// Numeric value c_ε·ε + c_dec·(T/τ_D) + c_dep·(1−δ).
    pub fn evaluate(&self, eps: f64, t_over_tau_d: f64, one_minus_delta: f64) -> f64 {
        rational_to_f64(self.eps) * eps
            + rational_to_f64(self.decoherence) * t_over_tau_d
            + rational_to_f64(self.depol) * one_minus_delta
    }

    /// First-order expectation 1 − (this vector evaluated), for vectors
    /// that already carry the factor 2 of Π(1 − 2p_E).
    pub fn linearized_expectation(&self, eps: f64, t_over_tau_d: f64, one_minus_delta: f64) -> f64 {
        1.0 - self.evaluate(eps, t_over_tau_d, one_minus_delta)
    }

    pub fn is_zero(&self) -> bool {
        self.eps.is_zero() && self.decoherence.is_zero() && self.depol.is_zero()
    }
}

impl Add for CoefficientVector {
    type Output = CoefficientVector;
    fn add(self, other: CoefficientVector) -> CoefficientVector {
        CoefficientVector {
            eps: self.eps + other.eps,
            decoherence: self.decoherence + other.decoherence,
            depol: self.depol + other.depol,
        }
    }
}

impl AddAssign for CoefficientVector {
    fn add_assign(&mut self, other: CoefficientVector) {
        *self = *self + other;
    }
}

impl fmt::Display for CoefficientVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}·eps + {}·(T/tau_D) + {}·(1-delta)",
            self.eps, self.decoherence, self.depol
        )
    }
}

fn rational_to_f64(r: Rational) -> f64 {
    r.to_f64().expect("rational fits in f64")
}

/// Action of a two-qubit Pauli on a shared Bell pair, up to stabilizers of
/// the pair: every pattern is equivalent to I, X, or Z on the bond.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BellClass {
    Identity,
    BitFlip,
    PhaseFlip,
}

impl BellClass {
    /// Representative Pauli on the face qubit.
    pub fn representative(self) -> Pauli {
        match self {
            BellClass::Identity => Pauli::I,
            BellClass::BitFlip => Pauli::X,
            BellClass::PhaseFlip => Pauli::Z,
        }
    }
}

/// The 15 nontrivial two-qubit patterns (edge component, face component)
/// grouped into equivalence classes: 3 act trivially, 8 act as a phase
/// flip (Z on either half is Z on the bond), 4 act as a bit flip.
pub const BELL_PAIR_CLASS_TABLE: [(Pauli, Pauli, BellClass); 15] = [
    (Pauli::Z, Pauli::Z, BellClass::Identity),
    (Pauli::X, Pauli::X, BellClass::Identity),
    (Pauli::Y, Pauli::Y, BellClass::Identity),
    (Pauli::Z, Pauli::I, BellClass::PhaseFlip),
    (Pauli::I, Pauli::Z, BellClass::PhaseFlip),
    (Pauli::Y, Pauli::I, BellClass::PhaseFlip),
    (Pauli::I, Pauli::Y, BellClass::PhaseFlip),
    (Pauli::X, Pauli::Y, BellClass::PhaseFlip),
    (Pauli::Y, Pauli::X, BellClass::PhaseFlip),
    (Pauli::X, Pauli::Z, BellClass::PhaseFlip),
    (Pauli::Z, Pauli::X, BellClass::PhaseFlip),
    (Pauli::X, Pauli::I, BellClass::BitFlip),
    (Pauli::I, Pauli::X, BellClass::BitFlip),
    (Pauli::Y, Pauli::Z, BellClass::BitFlip),
    (Pauli::Z, Pauli::Y, BellClass::BitFlip),
];

/// Class of a two-qubit pattern on a Bell pair.
pub fn bell_pair_class(on_edge: Pauli, on_face: Pauli) -> BellClass {
    if on_edge == Pauli::I && on_face == Pauli::I {
        return BellClass::Identity;
    }
    BELL_PAIR_CLASS_TABLE
        .iter()
        .find(|(e, f, _)| *e == on_edge && *f == on_face)
        .map(|(_, _, c)| *c)
        .expect("all 15 nontrivial patterns are tabulated")
}

/// What produced an error location.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorSource {
    BellPrep,
    Memory,
    TwoQubitGate,
    AncillaReadout,
    FaceReadout,
}

impl ErrorSource {
    pub fn label(self) -> &'static str {
        match self {
            ErrorSource::BellPrep => "bell-prep",
            ErrorSource::Memory => "memory",
            ErrorSource::TwoQubitGate => "two-qubit-gate",
            ErrorSource::AncillaReadout => "ancilla-readout",
            ErrorSource::FaceReadout => "face-readout",
        }
    }
}

/// One enumerated error location with its verdict.
#[derive(Debug, Clone)]
pub struct LocationTrace {
    pub gadget: usize,
    pub kind: GadgetKind,
    pub event: usize,
    pub source: ErrorSource,
    /// Inserted error, e.g. "Z[e3]" or "Z[f0] X[fa2]".
    pub inserted: String,
    /// Residual string after propagation.
    pub residual: String,
    pub weight: CoefficientVector,
    pub flips: bool,
}

/// Total flip probability of one statistically independent source.
#[derive(Debug, Clone)]
pub struct SourceTerm {
    pub gadget: usize,
    pub kind: GadgetKind,
    pub p_flip: CoefficientVector,
}

/// A coefficient that deviates from the reference value.
#[derive(Debug, Clone)]
pub struct Discrepancy {
    pub category: &'static str,
    pub component: &'static str,
    pub found: Rational,
    pub expected: Rational,
}

impl fmt::Display for Discrepancy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "category {} coefficient of {}: found {}, expected {}",
            self.category, self.component, self.found, self.expected
        )
    }
}

/// Result of the first-order enumeration.
#[derive(Debug, Clone)]
pub struct AuditReport {
    /// Linearized coefficients per error category (already ×2 from the
    /// product form).
    pub type1: CoefficientVector,
    pub type2: CoefficientVector,
    pub type3: CoefficientVector,
    pub total: CoefficientVector,
    pub sources: Vec<SourceTerm>,
    pub locations: Vec<LocationTrace>,
    pub discrepancies: Vec<Discrepancy>,
}

impl AuditReport {
    pub fn matches_reference(&self) -> bool {
        self.discrepancies.is_empty()
    }

    /// Flipping locations of one category, for itemized mismatch reports.
    pub fn flipping_locations<'a>(
        &'a self,
        category: &'a str,
    ) -> impl Iterator<Item = &'a LocationTrace> + 'a {
        self.locations
            .iter()
            .filter(move |l| l.flips && l.kind.category() == category)
    }
}

/// Reference coefficient vectors: per-category and total, in the order
/// (category I, category II, category III, total).
pub fn reference_coefficients() -> (
    CoefficientVector,
    CoefficientVector,
    CoefficientVector,
    CoefficientVector,
) {
    let r = |n, d| Rational::new(n, d);
    let t1 = CoefficientVector::new(r(0, 1), r(8, 1), r(6, 1));
    let t2 = CoefficientVector::new(r(1032, 15), r(160, 1), r(36, 1));
    let t3 = CoefficientVector::new(r(8, 1), r(0, 1), r(0, 1));
    (t1, t2, t3, t1 + t2 + t3)
}

struct Location {
    start: usize,
    string: PauliString,
    source: ErrorSource,
    weight: CoefficientVector,
    inserted: String,
}

fn per_pauli_weight(source: ErrorSource) -> CoefficientVector {
    let r = |n, d| Rational::new(n, d);
    let zero = Rational::zero();
    match source {
        // Depolarizing strength 3(1−δ)/4 per qubit, so (1−δ)/4 per Pauli.
        ErrorSource::BellPrep => CoefficientVector::new(zero, zero, r(1, 4)),
        ErrorSource::Memory => CoefficientVector::new(zero, r(1, 3), zero),
        ErrorSource::TwoQubitGate => CoefficientVector::new(r(1, 15), zero, zero),
        ErrorSource::AncillaReadout | ErrorSource::FaceReadout => {
            CoefficientVector::new(r(1, 3), zero, zero)
        }
    }
}

/// Error locations spawned by the event at position `pos`.
fn locations_for(pos: usize, event: &Event) -> Vec<Location> {
    let mut out = Vec::new();
    let single = |q: QubitId, source: ErrorSource, start: usize, out: &mut Vec<Location>| {
        for p in Pauli::NON_IDENTITY {
            out.push(Location {
                start,
                string: PauliString::single(q, p),
                source,
                weight: per_pauli_weight(source),
                inserted: format!("{}[{q}]", p.label()),
            });
        }
    };
    match event {
        Event::BellPrep { a, b } => {
            single(*a, ErrorSource::BellPrep, pos + 1, &mut out);
            single(*b, ErrorSource::BellPrep, pos + 1, &mut out);
        }
        Event::MemoryStep { qubits } => {
            for q in qubits {
                single(*q, ErrorSource::Memory, pos + 1, &mut out);
            }
        }
        Event::Cnot { control, target } => {
            for pc in [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z] {
                for pt in [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z] {
                    if pc == Pauli::I && pt == Pauli::I {
                        continue;
                    }
                    let mut s = PauliString::new();
                    s.set(*control, pc);
                    s.set(*target, pt);
                    out.push(Location {
                        start: pos + 1,
                        string: s,
                        source: ErrorSource::TwoQubitGate,
                        weight: per_pauli_weight(ErrorSource::TwoQubitGate),
                        inserted: format!("{}[{control}] {}[{target}]", pc.label(), pt.label()),
                    });
                }
            }
        }
        // Readout errors act just before the measurement consumes them.
        Event::AncillaMeasure { qubit, .. } => {
            single(*qubit, ErrorSource::AncillaReadout, pos, &mut out);
        }
        Event::FaceMeasure { qubit } => {
            single(*qubit, ErrorSource::FaceReadout, pos, &mut out);
        }
        Event::BellClassify { .. } | Event::LatticeFuse { .. } => {}
    }
    out
}

/// Propagate a string through the event suffix starting at `start`.
fn propagate(events: &[(usize, &Event)], start: usize, s: &mut PauliString) {
    for (_, event) in &events[start..] {
        match event {
            Event::BellPrep { a, b } => {
                // Re-initialization erases any resident error.
                s.remove(*a);
                s.remove(*b);
            }
            Event::MemoryStep { .. } | Event::FaceMeasure { .. } => {}
            Event::Cnot { control, target } => s.apply_cnot(*control, *target),
            Event::AncillaMeasure {
                qubit,
                basis,
                correction,
                correction_target,
            } => {
                let resident = s.get(*qubit);
                let flips_outcome = match basis {
                    MeasBasis::X => resident.z_bit(),
                    MeasBasis::Z => resident.x_bit(),
                };
                if flips_outcome {
                    s.mul_on(*correction_target, *correction);
                }
                s.remove(*qubit);
            }
            Event::BellClassify { face, edge } => {
                let class = bell_pair_class(s.get(*edge), s.get(*face));
                s.remove(*edge);
                s.set(*face, class.representative());
            }
            Event::LatticeFuse { face, edge } => s.apply_cnot(*face, *edge),
        }
    }
}

/// Enumerate every first-order error location of the circuit, propagate
/// it, and accumulate exact per-category coefficients; compares them
/// against the reference values.
pub fn enumerate_first_order(circuit: &UnitCellCircuit) -> AuditReport {
    let events = circuit.flattened();
    let mut per_gadget: Vec<SourceTerm> = circuit
        .gadgets
        .iter()
        .map(|g| SourceTerm {
            gadget: g.index,
            kind: g.kind,
            p_flip: CoefficientVector::zero(),
        })
        .collect();
    let mut locations = Vec::new();

    for (pos, (gadget, event)) in events.iter().enumerate() {
        for loc in locations_for(pos, event) {
            let mut s = loc.string.clone();
            propagate(&events, loc.start, &mut s);
            let flips = flips_check_parity(&s, &circuit.faces);
            if flips {
                per_gadget[*gadget].p_flip += loc.weight;
            }
            locations.push(LocationTrace {
                gadget: *gadget,
                kind: circuit.gadgets[*gadget].kind,
                event: pos,
                source: loc.source,
                inserted: loc.inserted,
                residual: s.to_string(),
                weight: loc.weight,
                flips,
            });
        }
    }

    // Linearization of Π(1 − 2 p_E): each source contributes 2·p_E.
    let two = Rational::new(2, 1);
    let mut type1 = CoefficientVector::zero();
    let mut type2 = CoefficientVector::zero();
    let mut type3 = CoefficientVector::zero();
    for term in &per_gadget {
        let contribution = term.p_flip.scaled(two);
        match term.kind {
            GadgetKind::InitialBellPair => type1 += contribution,
            GadgetKind::IntraCellLink | GadgetKind::NeighborLink => type2 += contribution,
            GadgetKind::FaceMeasurement => type3 += contribution,
        }
    }
    let total = type1 + type2 + type3;

    let (r1, r2, r3, rt) = reference_coefficients();
    let mut discrepancies = Vec::new();
    let mut compare =
        |category: &'static str, found: CoefficientVector, expected: CoefficientVector| {
            for (component, f, e) in [
                ("eps", found.eps, expected.eps),
                ("T/tau_D", found.decoherence, expected.decoherence),
                ("1-delta", found.depol, expected.depol),
            ] {
                if f != e {
                    discrepancies.push(Discrepancy {
                        category,
                        component,
                        found: f,
                        expected: e,
                    });
                }
            }
        };
    compare("I", type1, r1);
    compare("II", type2, r2);
    compare("III", type3, r3);
    compare("total", total, rt);

    AuditReport {
        type1,
        type2,
        type3,
        total,
        sources: per_gadget,
        locations,
        discrepancies,
    }
}

/// Numeric check-operator expectation from per-source flip probabilities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StabilizerExpectation {
    /// Exact product Π(1 − 2 p_E).
    pub product: f64,
    /// First-order expansion 1 − 2 Σ p_E.
    pub linearized: f64,
    /// Set when some p_E ≥ ½, where the product's sign stops being
    /// meaningful.
    pub saturated: bool,
}

/// Evaluate both forms of the expectation at numeric rates.
pub fn stabilizer_expectation(
    sources: &[SourceTerm],
    eps: f64,
    t_over_tau_d: f64,
    one_minus_delta: f64,
) -> StabilizerExpectation {
    let mut product = 1.0;
    let mut sum = 0.0;
    let mut saturated = false;
    for term in sources {
        let p = term.p_flip.evaluate(eps, t_over_tau_d, one_minus_delta);
        if p >= 0.5 {
            saturated = true;
        }
        product *= 1.0 - 2.0 * p;
        sum += p;
    }
    StabilizerExpectation {
        product,
        linearized: 1.0 - 2.0 * sum,
        saturated,
    }
}

/// The inequality rearranged to unit gate-error coefficient:
/// ε + a·(T/τ_D) + b·(1−δ) < rhs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InequalityConstants {
    pub decoherence_coeff: Rational,
    pub depol_coeff: Rational,
    pub rhs: Rational,
}

impl InequalityConstants {
    pub fn decoherence_coeff_f64(&self) -> f64 {
        rational_to_f64(self.decoherence_coeff)
    }

    pub fn depol_coeff_f64(&self) -> f64 {
        rational_to_f64(self.depol_coeff)
    }

    pub fn rhs_f64(&self) -> f64 {
        rational_to_f64(self.rhs)
    }
}

/// Divide the floor constraint 1 − total(rates) > floor by the gate-error
/// coefficient. With δ = √β₁ the depolarizing coefficient applies to
/// (1 − √β₁).
pub fn derive_threshold_inequality(
    total: &CoefficientVector,
    floor: Rational,
) -> InequalityConstants {
    assert!(
        total.eps.is_positive(),
        "gate-error coefficient must be positive"
    );
    InequalityConstants {
        decoherence_coeff: total.decoherence / total.eps,
        depol_coeff: total.depol / total.eps,
        rhs: (Rational::new(1, 1) - floor) / total.eps,
    }
}
