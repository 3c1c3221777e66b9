//! Sparse Pauli strings over the unit cell's qubits.
//!
//! Phases are tracked modulo sign only: parity (commutation) questions
//! never need the global phase, so Y is handled as the product XZ.

use std::collections::BTreeMap;
use std::fmt;

/// Single-qubit Pauli, represented by its (x, z) symplectic bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const NON_IDENTITY: [Pauli; 3] = [Pauli::X, Pauli::Y, Pauli::Z];

    pub fn from_xz(x: bool, z: bool) -> Pauli {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    pub fn x_bit(self) -> bool {
        matches!(self, Pauli::X | Pauli::Y)
    }

    pub fn z_bit(self) -> bool {
        matches!(self, Pauli::Z | Pauli::Y)
    }

    /// Product up to phase.
    pub fn compose(self, other: Pauli) -> Pauli {
        Pauli::from_xz(self.x_bit() ^ other.x_bit(), self.z_bit() ^ other.z_bit())
    }

    pub fn anticommutes_with(self, other: Pauli) -> bool {
        (self.x_bit() & other.z_bit()) ^ (self.z_bit() & other.x_bit())
    }

    pub fn label(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

/// Which unit cell a qubit belongs to. Only this cell's faces support the
/// check operator; a neighbor cell's face qubit never affects it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CellTag {
    ThisCell,
    Neighbor,
}

/// Role of a qubit in the generation circuit. Face and edge qubits live on
/// as lattice qubits; the ancilla pair of a teleported CNOT is consumed by
/// its gadget's measurements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Role {
    Face,
    Edge,
    AncillaFace,
    AncillaEdge,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QubitId {
    pub cell: CellTag,
    pub role: Role,
    pub index: u32,
}

impl QubitId {
    pub fn face(index: u32) -> QubitId {
        QubitId {
            cell: CellTag::ThisCell,
            role: Role::Face,
            index,
        }
    }

    pub fn edge(index: u32) -> QubitId {
        QubitId {
            cell: CellTag::ThisCell,
            role: Role::Edge,
            index,
        }
    }

    pub fn is_own_face(&self) -> bool {
        self.cell == CellTag::ThisCell && self.role == Role::Face
    }
}

impl fmt::Display for QubitId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let role = match self.role {
            Role::Face => "f",
            Role::Edge => "e",
            Role::AncillaFace => "fa",
            Role::AncillaEdge => "ea",
        };
        match self.cell {
            CellTag::ThisCell => write!(f, "{role}{}", self.index),
            CellTag::Neighbor => write!(f, "n.{role}{}", self.index),
        }
    }
}

/// Sparse Pauli string; identity entries are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PauliString {
    support: BTreeMap<QubitId, Pauli>,
}

impl PauliString {
    pub fn new() -> PauliString {
        PauliString::default()
    }

    pub fn single(qubit: QubitId, p: Pauli) -> PauliString {
        let mut s = PauliString::new();
        s.set(qubit, p);
        s
    }

    pub fn get(&self, qubit: QubitId) -> Pauli {
        self.support.get(&qubit).copied().unwrap_or(Pauli::I)
    }

    pub fn set(&mut self, qubit: QubitId, p: Pauli) {
        if p == Pauli::I {
            self.support.remove(&qubit);
        } else {
            self.support.insert(qubit, p);
        }
    }

    /// Multiply the component on `qubit` by `p` (phase dropped).
    pub fn mul_on(&mut self, qubit: QubitId, p: Pauli) {
        let combined = self.get(qubit).compose(p);
        self.set(qubit, combined);
    }

    pub fn remove(&mut self, qubit: QubitId) {
        self.support.remove(&qubit);
    }

    pub fn is_identity(&self) -> bool {
        self.support.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.support.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&QubitId, &Pauli)> {
        self.support.iter()
    }

    /// Conjugate by CNOT: X on the control spreads to the target, Z on the
    /// target spreads to the control, everything else is fixed.
    pub fn apply_cnot(&mut self, control: QubitId, target: QubitId) {
        debug_assert_ne!(control, target);
        let c = self.get(control);
        let t = self.get(target);
        self.set(control, Pauli::from_xz(c.x_bit(), c.z_bit() ^ t.z_bit()));
        self.set(target, Pauli::from_xz(t.x_bit() ^ c.x_bit(), t.z_bit()));
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.support.is_empty() {
            return write!(f, "I");
        }
        let mut first = true;
        for (q, p) in &self.support {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{}[{q}]", p.label())?;
            first = false;
        }
        Ok(())
    }
}

/// Pure form of the CNOT conjugation: X_c → X_c X_t, X_t → X_t,
/// Z_c → Z_c, Z_t → Z_c Z_t (Y decomposed as XZ, phase dropped).
pub fn cnot_propagate(s: &PauliString, control: QubitId, target: QubitId) -> PauliString {
    assert_ne!(control, target, "CNOT needs distinct qubits");
    let mut out = s.clone();
    out.apply_cnot(control, target);
    out
}

/// Whether the string flips the parity of the cell's check operator: the
/// check is X-type on the given faces, so the string anticommutes with it
/// exactly when its {Z, Y} support hits an odd number of them.
pub fn flips_check_parity(s: &PauliString, faces: &[QubitId]) -> bool {
    faces.iter().filter(|q| s.get(**q).z_bit()).count() % 2 == 1
}

/// Symplectic inner product: parity of Σ (xₐ·z_b + zₐ·x_b). True means
/// the two strings anticommute.
pub fn symplectic_product(a: &PauliString, b: &PauliString) -> bool {
    let mut parity = false;
    for (q, pa) in a.iter() {
        let pb = b.get(*q);
        parity ^= (pa.x_bit() & pb.z_bit()) ^ (pa.z_bit() & pb.x_bit());
    }
    parity
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(i: u32) -> QubitId {
        QubitId::face(i)
    }

    #[test]
    fn cnot_rules() {
        let (c, t) = (q(0), q(1));
        // X on control spreads to the target.
        let s = cnot_propagate(&PauliString::single(c, Pauli::X), c, t);
        assert_eq!(s.get(c), Pauli::X);
        assert_eq!(s.get(t), Pauli::X);
        // X on target is fixed.
        let s = cnot_propagate(&PauliString::single(t, Pauli::X), c, t);
        assert_eq!(s.get(c), Pauli::I);
        assert_eq!(s.get(t), Pauli::X);
        // Z on control is fixed.
        let s = cnot_propagate(&PauliString::single(c, Pauli::Z), c, t);
        assert_eq!(s.get(c), Pauli::Z);
        assert_eq!(s.get(t), Pauli::I);
        // Z on target spreads to the control.
        let s = cnot_propagate(&PauliString::single(t, Pauli::Z), c, t);
        assert_eq!(s.get(c), Pauli::Z);
        assert_eq!(s.get(t), Pauli::Z);
        // Y on target: X part stays put, Z part spreads.
        let s = cnot_propagate(&PauliString::single(t, Pauli::Y), c, t);
        assert_eq!(s.get(c), Pauli::Z);
        assert_eq!(s.get(t), Pauli::Y);
    }

    #[test]
    fn cnot_is_an_involution() {
        let mut state = 0xc0ffeeu64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        let qubits: Vec<QubitId> = (0..8).map(q).collect();
        for _ in 0..500 {
            let mut s = PauliString::new();
            for &qb in &qubits {
                let p = match next() % 4 {
                    0 => Pauli::I,
                    1 => Pauli::X,
                    2 => Pauli::Y,
                    _ => Pauli::Z,
                };
                s.set(qb, p);
            }
            let c = qubits[(next() % 8) as usize];
            let mut t = qubits[(next() % 8) as usize];
            if t == c {
                t = qubits[((next() % 7) + 1) as usize % 8];
                if t == c {
                    continue;
                }
            }
            let twice = cnot_propagate(&cnot_propagate(&s, c, t), c, t);
            assert_eq!(twice, s);
        }
    }

    #[test]
    fn parity_examples() {
        let faces: Vec<QubitId> = (0..6).map(QubitId::face).collect();
        assert!(flips_check_parity(
            &PauliString::single(faces[0], Pauli::Z),
            &faces
        ));
        assert!(flips_check_parity(
            &PauliString::single(faces[3], Pauli::Y),
            &faces
        ));
        assert!(!flips_check_parity(
            &PauliString::single(faces[0], Pauli::X),
            &faces
        ));
        let mut two = PauliString::single(faces[0], Pauli::Z);
        two.set(faces[1], Pauli::Z);
        assert!(!flips_check_parity(&two, &faces));
        // Z on an edge or a neighbor's face does not touch the check.
        assert!(!flips_check_parity(
            &PauliString::single(QubitId::edge(0), Pauli::Z),
            &faces
        ));
        let foreign = QubitId {
            cell: CellTag::Neighbor,
            role: Role::Face,
            index: 0,
        };
        assert!(!flips_check_parity(
            &PauliString::single(foreign, Pauli::Z),
            &faces
        ));
    }

    #[test]
    fn parity_agrees_with_symplectic_product() {
        let faces: Vec<QubitId> = (0..6).map(QubitId::face).collect();
        let mut check = PauliString::new();
        for &f in &faces {
            check.set(f, Pauli::X);
        }
        let mut state = 0x5117u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..1000 {
            let mut s = PauliString::new();
            for i in 0..6 {
                let qb = if next() % 2 == 0 {
                    QubitId::face(i)
                } else {
                    QubitId::edge(i)
                };
                let p = match next() % 4 {
                    0 => Pauli::I,
                    1 => Pauli::X,
                    2 => Pauli::Y,
                    _ => Pauli::Z,
                };
                s.set(qb, p);
            }
            assert_eq!(
                flips_check_parity(&s, &faces),
                symplectic_product(&s, &check)
            );
        }
    }

    #[test]
    fn identity_entries_never_stored() {
        let mut s = PauliString::single(q(0), Pauli::X);
        s.mul_on(q(0), Pauli::X);
        assert!(s.is_identity());
        assert_eq!(s.weight(), 0);
        s.set(q(1), Pauli::I);
        assert_eq!(s.weight(), 0);
    }
}
