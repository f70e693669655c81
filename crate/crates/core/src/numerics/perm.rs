use super::{binomial, factorial, DenseOperator, ONE};
use crate::limits::{self, MAX_PERM_DIM};
use crate::{Error, Result};

/// A permutation of `{0, …, t−1}`; `images[k]` is the image of `k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || seen[i] {
                return Err(Error::domain(format!("{images:?} is not a permutation")));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(t: usize) -> Self {
        Permutation {
            images: (0..t).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn image(&self, k: usize) -> usize {
        self.images[k]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `(self ∘ other)(k) = self(other(k))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.len(), other.len());
        Permutation {
            images: other.images.iter().map(|&k| self.images[k]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (k, &i) in self.images.iter().enumerate() {
            inv[i] = k;
        }
        Permutation { images: inv }
    }

    /// All of `S_t` in lexicographic order of the image lists.
    pub fn all(t: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (0..t).collect();
        loop {
            out.push(Permutation { images: cur.clone() });
            // next lexicographic permutation
            let Some(i) = (1..t).rev().find(|&i| cur[i - 1] < cur[i]) else {
                break;
            };
            let j = (i..t).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
        out
    }

    pub fn longest_increasing_subsequence(&self) -> usize {
        let mut tails: Vec<usize> = Vec::new();
        for &x in &self.images {
            match tails.binary_search(&x) {
                Ok(_) => {}
                Err(pos) if pos == tails.len() => tails.push(x),
                Err(pos) => tails[pos] = x,
            }
        }
        tails.len()
    }

    /// Where basis index `idx` of `(C^d)^{⊗t}` goes under `P_π`.
    ///
    /// The tensor factor at position `j` moves to position `π(j)`, so
    /// `|i₁…i_t⟩ ↦ |i_{π⁻¹(1)}…i_{π⁻¹(t)}⟩`. Position 0 is most significant.
    pub fn permute_index(&self, d: usize, idx: usize) -> usize {
        let t = self.len();
        let mut digits = vec![0usize; t];
        let mut rest = idx;
        for pos in (0..t).rev() {
            digits[pos] = rest % d;
            rest /= d;
        }
        let mut out_digits = vec![0usize; t];
        for (j, &dig) in digits.iter().enumerate() {
            out_digits[self.images[j]] = dig;
        }
        out_digits.iter().fold(0, |acc, &dig| acc * d + dig)
    }
}

fn perm_dim(d: usize, t: usize) -> Result<usize> {
    if d < 1 || t < 1 {
        return Err(Error::domain(format!("need d ≥ 1 and t ≥ 1, got d={d}, t={t}")));
    }
    let dim = limits::checked_pow(d, t);
    limits::check(dim.is_some_and(|x| x <= MAX_PERM_DIM), "MAX_PERM_DIM", || {
        format!("d^t = {d}^{t} exceeds {MAX_PERM_DIM}; dense permutation operators need (d^t)^2 entries")
    })?;
    Ok(dim.unwrap())
}

/// The `d^t × d^t` operator `P_π`.
pub fn perm_operator(d: usize, t: usize, pi: &Permutation) -> Result<DenseOperator> {
    if pi.len() != t {
        return Err(Error::domain(format!("permutation of {} elements used with t={t}", pi.len())));
    }
    let dim = perm_dim(d, t)?;
    let mut op = DenseOperator::zeros(dim, dim);
    for col in 0..dim {
        op.matrix_mut()[(pi.permute_index(d, col), col)] = ONE;
    }
    Ok(op)
}

/// `(1/t!) Σ_π P_π`, the projector onto the symmetric subspace.
pub fn sym_projector(d: usize, t: usize) -> Result<DenseOperator> {
    let dim = perm_dim(d, t)?;
    let perms = Permutation::all(t);
    let w = 1.0 / perms.len() as f64;
    let mut op = DenseOperator::zeros(dim, dim);
    for pi in &perms {
        for col in 0..dim {
            op.matrix_mut()[(pi.permute_index(d, col), col)] += w;
        }
    }
    Ok(op)
}

/// `d_t = C(d+t−1, t)`.
pub fn sym_dimension(d: usize, t: usize) -> f64 {
    binomial((d + t - 1) as u64, t as u64)
}

/// Haar value of the unitary frame potential, `∫ |Tr U|^{2t} dU` over `U(d)`.
///
/// Equals the number of permutations in `S_t` with no increasing subsequence
/// longer than `d`, which is `t!` whenever `t ≤ d`. Computed with the
/// hook-length formula as `Σ (f^λ)²` over partitions of `t` with at most `d`
/// rows.
pub fn haar_unitary_frame_potential(d: usize, t: usize) -> f64 {
    if t <= d {
        return factorial(t as u64);
    }
    let mut total = 0.0;
    let mut parts = Vec::new();
    partitions(t, t, d, &mut parts, &mut |lambda| {
        let f = standard_tableaux(lambda);
        total += f * f;
    });
    total
}

fn partitions(rest: usize, max_part: usize, max_rows: usize, cur: &mut Vec<usize>, visit: &mut impl FnMut(&[usize])) {
    if rest == 0 {
        visit(cur);
        return;
    }
    if cur.len() == max_rows {
        return;
    }
    for p in (1..=rest.min(max_part)).rev() {
        cur.push(p);
        partitions(rest - p, p, max_rows, cur, visit);
        cur.pop();
    }
}

/// Number of standard Young tableaux of shape `lambda` (hook-length formula).
fn standard_tableaux(lambda: &[usize]) -> f64 {
    let n: usize = lambda.iter().sum();
    let mut hooks = 1.0;
    for (i, &row) in lambda.iter().enumerate() {
        for j in 0..row {
            let arm = row - j - 1;
            let leg = lambda[i + 1..].iter().filter(|&&r| r > j).count();
            hooks *= (arm + leg + 1) as f64;
        }
    }
    factorial(n as u64) / hooks
}
