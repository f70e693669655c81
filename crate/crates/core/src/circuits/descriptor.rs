use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::boolean::BooleanFunction;
use super::circuit::{parse_bits, Circuit};
use super::lrc;
use super::sim::{circuit_unitary, simulate_state};
use crate::designs::{self, SubsetPhaseSpec};
use crate::limits::{self, MAX_DESCRIPTOR_K, MAX_STATE_QUBITS, MAX_UNITARY_QUBITS};
use crate::numerics::{DenseOperator, DenseState};
use crate::reductions;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SetKind {
    State,
    Unitary,
}

impl SetKind {
    pub fn name(self) -> &'static str {
        match self {
            SetKind::State => "state",
            SetKind::Unitary => "unitary",
        }
    }
}

/// Rule mapping an index `j ∈ 1..=K` to a circuit.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum Resolver {
    #[serde(rename = "explicit")]
    Explicit { circuits: Vec<Circuit> },
    /// Computational basis, element `j` prepares `|j−1⟩`.
    #[serde(rename = "basis")]
    Basis,
    #[serde(rename = "pauli")]
    Pauli,
    #[serde(rename = "clifford")]
    Clifford,
    #[serde(rename = "phase")]
    Phase { m: usize },
    #[serde(rename = "subset_phase")]
    SubsetPhase { spec: SubsetPhaseSpec },
    #[serde(rename = "lrc")]
    Lrc { depth: usize, gateset: Vec<Circuit>, seed: u64 },
    #[serde(rename = "gadget:sfp")]
    Sfp { f: BooleanFunction, base: Box<SetDescriptor> },
    #[serde(rename = "gadget:ufp")]
    Ufp { f: BooleanFunction, base: Box<SetDescriptor> },
    #[serde(rename = "gadget:stdes")]
    StDes { f: BooleanFunction, base: Box<SetDescriptor> },
    #[serde(rename = "gadget:unides")]
    UniDes { f: BooleanFunction, base: Box<SetDescriptor> },
    #[serde(rename = "gadget:bqp")]
    Bqp { ux: Circuit },
}

impl Resolver {
    pub fn type_name(&self) -> &'static str {
        match self {
            Resolver::Explicit { .. } => "explicit",
            Resolver::Basis => "basis",
            Resolver::Pauli => "pauli",
            Resolver::Clifford => "clifford",
            Resolver::Phase { .. } => "phase",
            Resolver::SubsetPhase { .. } => "subset_phase",
            Resolver::Lrc { .. } => "lrc",
            Resolver::Sfp { .. } => "gadget:sfp",
            Resolver::Ufp { .. } => "gadget:ufp",
            Resolver::StDes { .. } => "gadget:stdes",
            Resolver::UniDes { .. } => "gadget:unides",
            Resolver::Bqp { .. } => "gadget:bqp",
        }
    }
}

/// An indexed multiset of circuits: states (applied to `initial_state`) or unitaries.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "DescriptorJson")]
pub struct SetDescriptor {
    pub kind: SetKind,
    pub n: usize,
    #[serde(rename = "K")]
    pub k: usize,
    pub resolver: Resolver,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub initial_state: Option<String>,
}

#[derive(Deserialize)]
struct DescriptorJson {
    kind: SetKind,
    n: usize,
    #[serde(rename = "K")]
    k: usize,
    resolver: Resolver,
    #[serde(default)]
    initial_state: Option<String>,
}

impl TryFrom<DescriptorJson> for SetDescriptor {
    type Error = Error;

    fn try_from(j: DescriptorJson) -> Result<Self> {
        let d = SetDescriptor {
            kind: j.kind,
            n: j.n,
            k: j.k,
            resolver: j.resolver,
            initial_state: j.initial_state,
        };
        d.validate()?;
        Ok(d)
    }
}

impl SetDescriptor {
    pub fn explicit(kind: SetKind, n: usize, circuits: Vec<Circuit>) -> Result<Self> {
        let d = SetDescriptor {
            kind,
            n,
            k: circuits.len(),
            resolver: Resolver::Explicit { circuits },
            initial_state: None,
        };
        d.validate()?;
        Ok(d)
    }

    pub fn with_initial_state(mut self, bits: impl Into<String>) -> Result<Self> {
        self.initial_state = Some(bits.into());
        self.validate()?;
        Ok(self)
    }

    fn expect_kind(&self, kind: SetKind) -> Result<()> {
        if self.kind != kind {
            return Err(Error::invalid(format!(
                "resolver '{}' builds {} sets, descriptor says {}",
                self.resolver.type_name(),
                kind.name(),
                self.kind.name()
            )));
        }
        Ok(())
    }

    fn expect_k(&self, k: usize) -> Result<()> {
        if self.k != k {
            return Err(Error::invalid(format!(
                "resolver '{}' on {} qubits has K = {k}, descriptor says {}",
                self.resolver.type_name(),
                self.n,
                self.k
            )));
        }
        Ok(())
    }

    fn expect_n(&self, n: usize) -> Result<()> {
        if self.n != n {
            return Err(Error::invalid(format!(
                "resolver '{}' needs n = {n}, descriptor says {}",
                self.resolver.type_name(),
                self.n
            )));
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::invalid("descriptor needs at least one qubit"));
        }
        if self.k == 0 {
            return Err(Error::invalid("descriptor cardinality K must be positive"));
        }
        limits::check(self.k <= MAX_DESCRIPTOR_K, "MAX_DESCRIPTOR_K", || {
            format!("K = {} exceeds {MAX_DESCRIPTOR_K}", self.k)
        })?;
        if let Some(bits) = &self.initial_state {
            if self.kind != SetKind::State {
                return Err(Error::invalid("initial_state is only meaningful for state sets"));
            }
            parse_bits(bits, self.n)?;
        }
        match &self.resolver {
            Resolver::Explicit { circuits } => {
                self.expect_k(circuits.len())?;
                if let Some(c) = circuits.iter().find(|c| c.n() != self.n) {
                    return Err(Error::invalid(format!("explicit circuit on {} qubits in an n = {} set", c.n(), self.n)));
                }
                if circuits.iter().any(Circuit::has_rescaled) {
                    return Err(Error::invalid("RESCALED_H is only legal in path-sum circuits"));
                }
            }
            Resolver::Basis => {
                self.expect_kind(SetKind::State)?;
                limits::check(self.n <= designs::MAX_BASIS_QUBITS, "MAX_BASIS_QUBITS", || {
                    format!("basis sets are limited to {} qubits", designs::MAX_BASIS_QUBITS)
                })?;
                self.expect_k(1 << self.n)?;
            }
            Resolver::Pauli => {
                self.expect_kind(SetKind::Unitary)?;
                limits::check(self.n <= designs::MAX_PAULI_QUBITS, "MAX_PAULI_QUBITS", || {
                    format!("Pauli sets are limited to {} qubits", designs::MAX_PAULI_QUBITS)
                })?;
                self.expect_k(1 << (2 * self.n))?;
            }
            Resolver::Clifford => {
                self.expect_kind(SetKind::Unitary)?;
                self.expect_k(designs::clifford_order(self.n)?)?;
            }
            Resolver::Phase { m } => {
                self.expect_kind(SetKind::State)?;
                designs::check_phase_params(self.n, *m)?;
            }
            Resolver::SubsetPhase { spec } => {
                self.expect_kind(SetKind::State)?;
                spec.validate()?;
                self.expect_n(spec.n)?;
                self.expect_k(spec.rows())?;
            }
            Resolver::Lrc { depth, gateset, .. } => {
                self.expect_kind(SetKind::Unitary)?;
                lrc::validate_params(self.n, *depth, gateset)?;
                if let Some(total) = lrc::lrc_total(self.n, *depth, gateset.len()) {
                    if self.k > total {
                        return Err(Error::invalid(format!("K = {} exceeds the {total} distinct circuits", self.k)));
                    }
                }
            }
            Resolver::Sfp { f, base } => {
                self.expect_kind(SetKind::State)?;
                reductions::check_gadget_base(base, SetKind::State, f.n_vars() + 1)?;
                self.expect_n(f.n_vars() + 2)?;
                self.expect_k(base.k + 2)?;
            }
            Resolver::Ufp { f, base } => {
                self.expect_kind(SetKind::Unitary)?;
                reductions::check_gadget_base(base, SetKind::Unitary, f.n_vars() + 1)?;
                self.expect_n(f.n_vars() + 2)?;
                self.expect_k(base.k + 2)?;
            }
            Resolver::StDes { f, base } => {
                self.expect_kind(SetKind::State)?;
                reductions::check_gadget_base(base, SetKind::State, f.n_vars() + 1)?;
                self.expect_n(f.n_vars() + 1)?;
                self.expect_k(base.k + 2)?;
            }
            Resolver::UniDes { f, base } => {
                self.expect_kind(SetKind::Unitary)?;
                reductions::check_gadget_base(base, SetKind::Unitary, f.n_vars() + 1)?;
                self.expect_n(f.n_vars() + 1)?;
                self.expect_k(base.k + 2)?;
            }
            Resolver::Bqp { ux } => {
                self.expect_kind(SetKind::State)?;
                if ux.n() < 2 {
                    return Err(Error::invalid("the BQP gadget needs U_x on at least 2 qubits"));
                }
                self.expect_n(ux.n() + 2)?;
                if !self.k.is_multiple_of(2) {
                    return Err(Error::invalid("the BQP gadget has an even number of states"));
                }
            }
        }
        Ok(())
    }

    /// The circuit for element `j`, 1-based.
    pub fn resolve(&self, j: usize) -> Result<Circuit> {
        if j == 0 || j > self.k {
            return Err(Error::IndexOutOfRange { index: j, k: self.k });
        }
        let n = self.n;
        match &self.resolver {
            Resolver::Explicit { circuits } => Ok(circuits[j - 1].clone()),
            Resolver::Basis => designs::basis_circuit(n, j - 1),
            Resolver::Pauli => designs::pauli_circuit(n, j - 1),
            Resolver::Clifford => designs::clifford_circuit(n, j - 1),
            Resolver::Phase { m } => designs::phase_circuit(n, self.k, *m, j),
            Resolver::SubsetPhase { spec } => spec.circuit(j),
            Resolver::Lrc { depth, gateset, seed } => lrc::resolve(n, self.k, *depth, gateset, *seed, j),
            Resolver::Sfp { f, base } => reductions::sfp_element(f, base, j),
            Resolver::Ufp { f, base } => reductions::ufp_element(f, base, j),
            Resolver::StDes { f, base } => reductions::stdes_element(f, base, j),
            Resolver::UniDes { f, base } => reductions::unides_element(f, base, j),
            Resolver::Bqp { ux } => reductions::bqp_element(ux, self.k / 2, j),
        }
    }

    pub fn initial_bits(&self) -> &str {
        self.initial_state.as_deref().unwrap_or("")
    }

    /// For state sets, the element circuit preceded by the X gates for `initial_state`.
    pub fn state_circuit(&self, j: usize) -> Result<Circuit> {
        let mut c = Circuit::basis_preparation(self.initial_bits())?.widened(self.n, 0)?;
        c.append_shifted(&self.resolve(j)?, 0)?;
        Ok(c)
    }

    pub fn state(&self, j: usize) -> Result<DenseState> {
        self.expect_kind(SetKind::State)?;
        simulate_state(&self.resolve(j)?, self.initial_bits())
    }

    pub fn unitary(&self, j: usize) -> Result<DenseOperator> {
        self.expect_kind(SetKind::Unitary)?;
        circuit_unitary(&self.resolve(j)?)
    }

    /// All states, in index order.
    pub fn states(&self) -> Result<Vec<DenseState>> {
        self.expect_kind(SetKind::State)?;
        limits::check(self.n <= MAX_STATE_QUBITS, "MAX_STATE_QUBITS", || {
            format!("{} qubits exceed the statevector limit of {MAX_STATE_QUBITS}", self.n)
        })?;
        (1..=self.k).into_par_iter().map(|j| self.state(j)).collect()
    }

    /// All unitaries, in index order.
    pub fn unitaries(&self) -> Result<Vec<DenseOperator>> {
        self.expect_kind(SetKind::Unitary)?;
        limits::check(self.n <= MAX_UNITARY_QUBITS, "MAX_UNITARY_QUBITS", || {
            format!("{} qubits exceed the dense-unitary limit of {MAX_UNITARY_QUBITS}", self.n)
        })?;
        (1..=self.k).into_par_iter().map(|j| self.unitary(j)).collect()
    }

    pub fn dim(&self) -> usize {
        1 << self.n
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("descriptor serialization is infallible")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn read_file(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn write_file(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_json())?;
        Ok(())
    }
}
