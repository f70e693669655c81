//! Gate-list circuits, dense simulation, set descriptors and truth tables.

mod boolean;
mod circuit;
mod descriptor;
mod gate;
mod lrc;
mod sim;

pub use boolean::BooleanFunction;
pub use circuit::{parse_bits, Circuit};
pub use descriptor::{Resolver, SetDescriptor, SetKind};
pub use gate::{Gate, GateKind};
pub use lrc::{brickwork_pairs, lrc_descriptor, lrc_total};
pub use sim::{circuit_unitary, simulate_from, simulate_state, simulate_unnormalized};

pub(crate) use sim::apply_circuit;
