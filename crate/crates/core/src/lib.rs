//! Frame potentials and t-designs for small quantum ensembles.
//!
//! The crate computes state and unitary frame potentials exactly, certifies
//! approximate designs against the Haar moments, simulates the purity-based
//! estimation circuit and the swap-test deciders, and builds the counting
//! gadgets that encode `#SAT` / `MAJ-SAT` instances into frame potentials.
//!
//! Everything is dense and desk scale. Size guards live in [`limits`].
//!
//! The runnable examples are the main tour:
//!
//! ```text
//! cargo run --example frame_potentials
//! cargo run --example certify_designs
//! cargo run --example haar_moments
//! cargo run --example encoded_state
//! cargo run --example swap_test
//! cargo run --example counting_gadgets
//! cargo run --example bqp_gadget
//! cargo run --example subset_phase_count
//! cargo run --example path_sum
//! cargo run --example otoc
//! cargo run --example synthesize
//! cargo run --example descriptor_files
//! ```

pub mod circuits;
pub mod cli;
pub mod designs;
mod error;
pub mod framepotential;
pub mod limits;
pub mod numerics;
pub mod otoc;
pub mod qalgsim;
pub mod reductions;
pub mod varopt;

pub use error::{Error, Result};
pub use numerics::C64;

/// Tool version embedded in every report.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
