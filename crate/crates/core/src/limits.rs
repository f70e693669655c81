//! Size guards.
//!
//! Dense objects grow like `d^{2t}` and Gram loops like `K^2`; these limits
//! keep every computation inside desk-scale memory and time.

use crate::{Error, Result};

/// Qubits in a simulated statevector.
pub const MAX_STATE_QUBITS: usize = 24;
/// Qubits in a full circuit unitary.
pub const MAX_UNITARY_QUBITS: usize = 12;
/// Elements in a Gram loop.
pub const MAX_GRAM_K: usize = 1 << 14;
/// Elements in any materialized descriptor.
pub const MAX_DESCRIPTOR_K: usize = 1 << 24;
/// Side length of a moment operator (`d^t` for states, `d^{2t}` for unitaries).
pub const MAX_MOMENT_DIM: usize = 1 << 12;
/// Side length of a dense permutation operator or symmetrizer (`d^t`).
pub const MAX_PERM_DIM: usize = 1 << 12;
/// Largest degree for moment-operator paths.
pub const MAX_MOMENT_T: usize = 4;
/// Truth tables.
pub const MAX_BOOL_VARS: usize = 24;

pub(crate) fn check(ok: bool, guard: &'static str, detail: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::SizeGuard {
            guard,
            detail: detail(),
        })
    }
}

/// `base^exp`, or `None` on overflow.
pub(crate) fn checked_pow(base: usize, exp: usize) -> Option<usize> {
    let mut acc: usize = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}
