use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::circuits::{parse_bits, Circuit, Gate, Resolver, SetDescriptor, SetKind};
use crate::numerics::C64;
use crate::{Error, Result};

/// Largest register for which subset phase states are tabulated.
pub const MAX_SUBSET_QUBITS: usize = 20;

/// Subset phase states `χ^{−1/2} Σ_{x∈X} (−1)^{a_{jx}} |x⟩`, one per row of `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetPhaseSpec {
    pub n: usize,
    /// Sorted, distinct basis strings.
    pub x: Vec<String>,
    /// `K × χ` sign bits.
    pub a: Vec<Vec<bool>>,
}

impl SubsetPhaseSpec {
    pub fn new(n: usize, x: Vec<String>, a: Vec<Vec<bool>>) -> Result<Self> {
        let s = SubsetPhaseSpec { n, x, a };
        s.validate()?;
        Ok(s)
    }

    /// Random subset of size `chi` and random `k × chi` sign matrix.
    pub fn random(n: usize, chi: usize, k: usize, rng: &mut impl Rng) -> Result<Self> {
        if n > MAX_SUBSET_QUBITS || chi > 1 << n {
            return Err(Error::domain(format!("cannot pick {chi} strings of {n} bits")));
        }
        let mut idx = rand::seq::index::sample(rng, 1 << n, chi).into_vec();
        idx.sort_unstable();
        let x = idx.iter().map(|&i| format!("{i:0n$b}")).collect();
        let a = (0..k).map(|_| (0..chi).map(|_| rng.random_bool(0.5)).collect()).collect();
        Self::new(n, x, a)
    }

    pub fn chi(&self) -> usize {
        self.x.len()
    }

    pub fn rows(&self) -> usize {
        self.a.len()
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 || self.n > MAX_SUBSET_QUBITS {
            return Err(Error::domain(format!("subset phase states need 1 ≤ n ≤ {MAX_SUBSET_QUBITS}")));
        }
        if self.x.is_empty() {
            return Err(Error::domain("subset X must be nonempty"));
        }
        let idx = self.indices()?;
        if !idx.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::domain("subset X must be sorted and distinct"));
        }
        if self.a.is_empty() {
            return Err(Error::domain("phase matrix A needs at least one row"));
        }
        if let Some(r) = self.a.iter().position(|row| row.len() != self.chi()) {
            return Err(Error::domain(format!("row {} of A has the wrong length", r + 1)));
        }
        Ok(())
    }

    pub fn indices(&self) -> Result<Vec<usize>> {
        self.x.iter().map(|s| parse_bits(s, self.n)).collect()
    }

    /// Amplitudes of the row-`j` state (1-based).
    pub fn amplitudes(&self, j: usize) -> Result<Vec<C64>> {
        let row = self.a.get(j.wrapping_sub(1)).ok_or(Error::IndexOutOfRange { index: j, k: self.rows() })?;
        let norm = 1.0 / (self.chi() as f64).sqrt();
        let mut amps = vec![C64::new(0.0, 0.0); 1 << self.n];
        for (x, &bit) in self.indices()?.into_iter().zip(row) {
            amps[x] = C64::new(if bit { -norm } else { norm }, 0.0);
        }
        Ok(amps)
    }

    pub fn circuit(&self, j: usize) -> Result<Circuit> {
        let amps = self.amplitudes(j)?;
        Circuit::from_gates(self.n, vec![Gate::prepare((0..self.n).collect(), amps)?])
    }
}

fn row_hex(row: &[bool]) -> String {
    let mut bytes = vec![0u8; row.len().div_ceil(8)];
    for (i, &b) in row.iter().enumerate() {
        if b {
            bytes[i / 8] |= 1 << (i % 8);
        }
    }
    hex::encode(bytes)
}

fn row_from_hex(s: &str, chi: usize) -> Result<Vec<bool>> {
    let bytes = hex::decode(s).map_err(|e| Error::invalid(format!("bad hex row '{s}': {e}")))?;
    if bytes.len() != chi.div_ceil(8) {
        return Err(Error::invalid(format!("hex row '{s}' does not hold {chi} bits")));
    }
    let row: Vec<bool> = (0..chi).map(|i| bytes[i / 8] >> (i % 8) & 1 == 1).collect();
    if row_hex(&row) != s.to_ascii_lowercase() {
        return Err(Error::invalid(format!("hex row '{s}' sets bits beyond χ = {chi}")));
    }
    Ok(row)
}

#[derive(Serialize, Deserialize)]
struct SpecJson {
    n: usize,
    #[serde(rename = "X")]
    x: Vec<String>,
    #[serde(rename = "A")]
    a: Vec<String>,
}

impl Serialize for SubsetPhaseSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SpecJson {
            n: self.n,
            x: self.x.clone(),
            a: self.a.iter().map(|r| row_hex(r)).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SubsetPhaseSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = SpecJson::deserialize(d)?;
        let chi = j.x.len();
        let a = j
            .a
            .iter()
            .map(|r| row_from_hex(r, chi))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        SubsetPhaseSpec::new(j.n, j.x, a).map_err(D::Error::custom)
    }
}

pub fn subset_phase_set(spec: SubsetPhaseSpec) -> Result<SetDescriptor> {
    let d = SetDescriptor {
        kind: SetKind::State,
        n: spec.n,
        k: spec.rows(),
        resolver: Resolver::SubsetPhase { spec },
        initial_state: None,
    };
    d.validate()?;
    Ok(d)
}
