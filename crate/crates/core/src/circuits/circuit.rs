use serde::{Deserialize, Serialize};

use super::gate::{Gate, GateKind};
use crate::{Error, Result};

/// An ordered gate list on `n` qubits. Qubit 0 is the most significant bit.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "CircuitJson")]
pub struct Circuit {
    n: usize,
    gates: Vec<Gate>,
}

#[derive(Deserialize)]
struct CircuitJson {
    n: usize,
    #[serde(default)]
    gates: Vec<Gate>,
}

impl TryFrom<CircuitJson> for Circuit {
    type Error = Error;

    fn try_from(j: CircuitJson) -> Result<Circuit> {
        Circuit::from_gates(j.n, j.gates)
    }
}

impl Circuit {
    pub fn new(n: usize) -> Circuit {
        Circuit { n, gates: Vec::new() }
    }

    pub fn from_gates(n: usize, gates: Vec<Gate>) -> Result<Circuit> {
        let mut c = Circuit::new(n);
        for g in gates {
            c.push(g)?;
        }
        Ok(c)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn push(&mut self, g: Gate) -> Result<&mut Self> {
        g.check_shape()?;
        if let Some(&q) = g.targets.iter().find(|&&q| q >= self.n) {
            return Err(Error::invalid(format!("target {q} on a {}-qubit circuit", self.n)));
        }
        self.gates.push(g);
        Ok(self)
    }

    /// Append `other` with every target shifted by `offset`.
    pub fn append_shifted(&mut self, other: &Circuit, offset: usize) -> Result<&mut Self> {
        for g in &other.gates {
            let mut g = g.clone();
            for q in &mut g.targets {
                *q += offset;
            }
            self.push(g)?;
        }
        Ok(self)
    }

    /// Same gates on a wider register.
    pub fn widened(&self, n: usize, offset: usize) -> Result<Circuit> {
        let mut c = Circuit::new(n);
        c.append_shifted(self, offset)?;
        Ok(c)
    }

    pub fn inverse(&self) -> Result<Circuit> {
        let gates = self.gates.iter().rev().map(Gate::inverse).collect::<Result<Vec<_>>>()?;
        Ok(Circuit { n: self.n, gates })
    }

    pub fn has_rescaled(&self) -> bool {
        self.gates.iter().any(Gate::is_rescaled)
    }

    pub fn hadamard_toffoli_only(&self) -> bool {
        self.gates
            .iter()
            .all(|g| matches!(g.kind, GateKind::RescaledH | GateKind::Toffoli))
    }

    /// X gates preparing `|bits⟩` from `|0…0⟩`.
    pub fn basis_preparation(bits: &str) -> Result<Circuit> {
        let idx = parse_bits(bits, bits.len())?;
        let n = bits.len();
        let mut c = Circuit::new(n);
        for q in 0..n {
            if idx >> (n - 1 - q) & 1 == 1 {
                c.push(Gate::x(q))?;
            }
        }
        Ok(c)
    }
}

/// Parse a computational basis string into its index.
pub fn parse_bits(bits: &str, n: usize) -> Result<usize> {
    if bits.is_empty() {
        return Ok(0);
    }
    if bits.len() != n || !bits.bytes().all(|b| b == b'0' || b == b'1') {
        return Err(Error::invalid(format!("'{bits}' is not a {n}-bit basis string")));
    }
    if n > 63 {
        return Err(Error::invalid("basis strings are limited to 63 bits"));
    }
    Ok(bits.bytes().fold(0usize, |acc, b| acc << 1 | (b - b'0') as usize))
}
