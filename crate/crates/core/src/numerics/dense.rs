use nalgebra::DMatrix;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{C64, ONE, ZERO};
use crate::{Error, Result};

/// A complex vector. Normalization is checked on demand, not enforced.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseState {
    amps: Vec<C64>,
}

impl DenseState {
    pub fn new(amps: Vec<C64>) -> Result<Self> {
        if amps.is_empty() {
            return Err(Error::domain("a state needs at least one amplitude"));
        }
        Ok(DenseState { amps })
    }

    pub(crate) fn from_vec_unchecked(amps: Vec<C64>) -> Self {
        DenseState { amps }
    }

    /// The computational basis vector `|index⟩` in dimension `dim`.
    pub fn basis(dim: usize, index: usize) -> Self {
        let mut amps = vec![ZERO; dim];
        amps[index] = ONE;
        DenseState { amps }
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub fn amplitudes_mut(&mut self) -> &mut [C64] {
        &mut self.amps
    }

    pub fn into_amplitudes(self) -> Vec<C64> {
        self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn is_normalized(&self, tol: f64) -> bool {
        (self.norm() - 1.0).abs() <= tol
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &DenseState) -> C64 {
        inner_slices(&self.amps, &other.amps)
    }

    pub fn kron(&self, other: &DenseState) -> DenseState {
        let mut amps = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.amps {
            for b in &other.amps {
                amps.push(a * b);
            }
        }
        DenseState { amps }
    }

    pub fn tensor_power(&self, t: usize) -> DenseState {
        let mut acc = DenseState { amps: vec![ONE] };
        for _ in 0..t {
            acc = acc.kron(self);
        }
        acc
    }

    /// `|ψ⟩⟨ψ|`.
    pub fn projector(&self) -> DenseOperator {
        let d = self.dim();
        DenseOperator::from_fn(d, d, |r, c| self.amps[r] * self.amps[c].conj())
    }

    /// Multiply every amplitude by a unit phase.
    pub fn with_phase(mut self, phase: C64) -> DenseState {
        for a in &mut self.amps {
            *a *= phase;
        }
        self
    }
}

/// `Σ conj(a_i) b_i`.
pub(crate) fn inner_slices(a: &[C64], b: &[C64]) -> C64 {
    debug_assert_eq!(a.len(), b.len());
    let mut re = 0.0;
    let mut im = 0.0;
    for (x, y) in a.iter().zip(b) {
        re += x.re * y.re + x.im * y.im;
        im += x.re * y.im - x.im * y.re;
    }
    C64::new(re, im)
}

/// A dense complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseOperator {
    m: DMatrix<C64>,
}

impl DenseOperator {
    pub fn from_matrix(m: DMatrix<C64>) -> Self {
        DenseOperator { m }
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl FnMut(usize, usize) -> C64) -> Self {
        DenseOperator {
            m: DMatrix::from_fn(rows, cols, f),
        }
    }

    pub fn from_row_major(rows: usize, cols: usize, data: &[C64]) -> Result<Self> {
        if rows == 0 || cols == 0 || data.len() != rows * cols {
            return Err(Error::domain(format!(
                "{} entries do not fill a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(DenseOperator {
            m: DMatrix::from_row_slice(rows, cols, data),
        })
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::domain("ragged rows"));
        }
        let data: Vec<C64> = rows.iter().flat_map(|row| row.iter().map(|&x| C64::new(x, 0.0))).collect();
        Self::from_row_major(r, c, &data)
    }

    pub fn identity(dim: usize) -> Self {
        DenseOperator {
            m: DMatrix::identity(dim, dim),
        }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseOperator {
            m: DMatrix::zeros(rows, cols),
        }
    }

    pub fn diagonal(entries: &[C64]) -> Self {
        let d = entries.len();
        DenseOperator::from_fn(d, d, |r, c| if r == c { entries[r] } else { ZERO })
    }

    pub fn rows(&self) -> usize {
        self.m.nrows()
    }

    pub fn cols(&self) -> usize {
        self.m.ncols()
    }

    pub fn is_square(&self) -> bool {
        self.rows() == self.cols()
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.m
    }

    pub fn matrix_mut(&mut self) -> &mut DMatrix<C64> {
        &mut self.m
    }

    pub fn into_matrix(self) -> DMatrix<C64> {
        self.m
    }

    pub fn get(&self, r: usize, c: usize) -> C64 {
        self.m[(r, c)]
    }

    /// Entries in row-major order.
    pub fn row_major(&self) -> Vec<C64> {
        self.m.transpose().as_slice().to_vec()
    }

    pub fn dagger(&self) -> Self {
        DenseOperator { m: self.m.adjoint() }
    }

    pub fn conj(&self) -> Self {
        DenseOperator { m: self.m.conjugate() }
    }

    pub fn transpose(&self) -> Self {
        DenseOperator { m: self.m.transpose() }
    }

    pub fn mul(&self, other: &DenseOperator) -> Self {
        DenseOperator { m: &self.m * &other.m }
    }

    pub fn add(&self, other: &DenseOperator) -> Self {
        DenseOperator { m: &self.m + &other.m }
    }

    pub fn sub(&self, other: &DenseOperator) -> Self {
        DenseOperator { m: &self.m - &other.m }
    }

    pub fn scale(&self, s: C64) -> Self {
        DenseOperator { m: &self.m * s }
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(C64::new(s, 0.0))
    }

    pub fn kron(&self, other: &DenseOperator) -> Self {
        DenseOperator {
            m: self.m.kronecker(&other.m),
        }
    }

    pub fn tensor_power(&self, t: usize) -> Self {
        let mut acc = DenseOperator::identity(1);
        for _ in 0..t {
            acc = acc.kron(self);
        }
        acc
    }

    pub fn trace(&self) -> C64 {
        self.m.trace()
    }

    /// `Tr(self† other)`.
    pub fn hs_inner(&self, other: &DenseOperator) -> C64 {
        inner_slices(self.m.as_slice(), other.m.as_slice())
    }

    pub fn apply(&self, psi: &DenseState) -> DenseState {
        let v = nalgebra::DVector::from_column_slice(psi.amplitudes());
        DenseState::from_vec_unchecked((&self.m * v).as_slice().to_vec())
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs_diff(&self, other: &DenseOperator) -> f64 {
        assert_eq!(self.m.shape(), other.m.shape(), "shape mismatch");
        self.m.iter().zip(other.m.iter()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.m.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.is_square() && self.max_abs_diff(&self.dagger()) <= tol
    }

    /// `‖U†U − I‖∞ ≤ tol`.
    pub fn is_unitary(&self, tol: f64) -> bool {
        if !self.is_square() {
            return false;
        }
        let defect = self.dagger().mul(self).sub(&DenseOperator::identity(self.rows()));
        if defect.frobenius_norm() <= tol {
            return true;
        }
        schatten_norm(&defect, SchattenP::Inf).is_ok_and(|n| n <= tol)
    }

    /// Hermitian within `1e-12` and unit trace within `1e-10`.
    pub fn is_density(&self) -> bool {
        self.is_hermitian(1e-12) && (self.trace() - ONE).norm() <= 1e-10
    }

    /// Eigenvalues of a Hermitian operator, ascending.
    pub fn hermitian_eigenvalues(&self) -> Result<Vec<f64>> {
        if !self.is_hermitian(1e-9) {
            return Err(Error::domain("operator is not Hermitian"));
        }
        let eig = nalgebra::SymmetricEigen::new(self.m.clone());
        let mut vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
        vals.sort_by(f64::total_cmp);
        Ok(vals)
    }
}

#[derive(Serialize, Deserialize)]
struct OperatorJson {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl Serialize for DenseOperator {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        OperatorJson {
            rows: self.rows(),
            cols: self.cols(),
            data: self.row_major(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for DenseOperator {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = OperatorJson::deserialize(d)?;
        DenseOperator::from_row_major(j.rows, j.cols, &j.data).map_err(serde::de::Error::custom)
    }
}

/// Which Schatten norm.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SchattenP {
    One,
    Two,
    Inf,
}

pub fn singular_values(m: &DenseOperator) -> Vec<f64> {
    m.m.clone().svd(false, false).singular_values.iter().copied().collect()
}

/// `(Σ σᵢᵖ)^{1/p}`; `max σᵢ` for `p = ∞`.
pub fn schatten_norm(m: &DenseOperator, p: SchattenP) -> Result<f64> {
    if !m.is_finite() {
        return Err(Error::domain("operator has non-finite entries"));
    }
    Ok(match p {
        SchattenP::Two => m.frobenius_norm(),
        SchattenP::One => singular_values(m).iter().sum(),
        SchattenP::Inf => singular_values(m).iter().copied().fold(0.0, f64::max),
    })
}

/// Index bookkeeping shared by both partial traces: `full[k * dt + r]` is the
/// index of kept digit string `k` combined with traced digit string `r`.
fn split_indices(dims: &[usize], keep: &[usize]) -> Result<(usize, usize, Vec<usize>)> {
    let mut kept: Vec<usize> = keep.to_vec();
    kept.sort_unstable();
    kept.dedup();
    if kept.len() != keep.len() || kept.iter().any(|&k| k >= dims.len()) {
        return Err(Error::domain(format!("bad keep set {keep:?} for {} subsystems", dims.len())));
    }
    if dims.contains(&0) {
        return Err(Error::domain("subsystem of dimension 0"));
    }
    let traced: Vec<usize> = (0..dims.len()).filter(|i| !kept.contains(i)).collect();
    let dk: usize = kept.iter().map(|&i| dims[i]).product();
    let dt: usize = traced.iter().map(|&i| dims[i]).product();
    let total: usize = dims.iter().product();

    let mut strides = vec![1usize; dims.len()];
    for i in (0..dims.len().saturating_sub(1)).rev() {
        strides[i] = strides[i + 1] * dims[i + 1];
    }
    let offsets = |subs: &[usize], mut idx: usize| -> usize {
        let mut off = 0;
        for &s in subs.iter().rev() {
            off += (idx % dims[s]) * strides[s];
            idx /= dims[s];
        }
        off
    };
    let kept_off: Vec<usize> = (0..dk).map(|k| offsets(&kept, k)).collect();
    let traced_off: Vec<usize> = (0..dt).map(|r| offsets(&traced, r)).collect();
    let mut full = vec![0usize; total];
    for (k, ko) in kept_off.iter().enumerate() {
        for (r, ro) in traced_off.iter().enumerate() {
            full[k * dt + r] = ko + ro;
        }
    }
    Ok((dk, dt, full))
}

/// Reduced operator on the subsystems in `keep`, ordered as in `dims`.
pub fn partial_trace(m: &DenseOperator, dims: &[usize], keep: &[usize]) -> Result<DenseOperator> {
    let total: usize = dims.iter().product();
    if !m.is_square() || m.rows() != total {
        return Err(Error::domain(format!(
            "dims {dims:?} do not match a {}x{} operator",
            m.rows(),
            m.cols()
        )));
    }
    let (dk, dt, full) = split_indices(dims, keep)?;
    Ok(DenseOperator::from_fn(dk, dk, |a, b| {
        let mut acc = ZERO;
        for r in 0..dt {
            acc += m.m[(full[a * dt + r], full[b * dt + r])];
        }
        acc
    }))
}

/// Reduced density operator of the pure state `|ψ⟩⟨ψ|`.
pub fn partial_trace_pure(psi: &DenseState, dims: &[usize], keep: &[usize]) -> Result<DenseOperator> {
    let total: usize = dims.iter().product();
    if psi.dim() != total {
        return Err(Error::domain(format!("dims {dims:?} do not match a state of dim {}", psi.dim())));
    }
    let (dk, dt, full) = split_indices(dims, keep)?;
    let amps = psi.amplitudes();
    let blocks: Vec<Vec<C64>> = (0..dk)
        .map(|k| (0..dt).map(|r| amps[full[k * dt + r]]).collect())
        .collect();
    Ok(gram_of_rows(&blocks))
}

/// `ρ[a][b] = Σ_r rows[a][r] conj(rows[b][r])`.
pub(crate) fn gram_of_rows(rows: &[Vec<C64>]) -> DenseOperator {
    use rayon::prelude::*;
    let n = rows.len();
    let upper: Vec<Vec<C64>> = (0..n)
        .into_par_iter()
        .map(|a| (a..n).map(|b| inner_slices(&rows[b], &rows[a])).collect())
        .collect();
    let mut out = DenseOperator::zeros(n, n);
    for (a, row) in upper.iter().enumerate() {
        for (off, v) in row.iter().enumerate() {
            let b = a + off;
            out.m[(a, b)] = *v;
            out.m[(b, a)] = v.conj();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::random::{haar_state, random_density};
    use crate::numerics::{random, sym_projector};

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn schatten_examples() {
        let id = DenseOperator::identity(4);
        assert!((schatten_norm(&id, SchattenP::One).unwrap() - 4.0).abs() < 1e-12);
        let d = DenseOperator::diagonal(&[c(3.0), c(4.0)]);
        assert!((schatten_norm(&d, SchattenP::Two).unwrap() - 5.0).abs() < 1e-12);
        let p = sym_projector(2, 2).unwrap();
        assert!((schatten_norm(&p, SchattenP::One).unwrap() - 3.0).abs() < 1e-10);
    }

    #[test]
    fn schatten_rejects_nan() {
        let d = DenseOperator::diagonal(&[c(f64::NAN)]);
        assert!(matches!(schatten_norm(&d, SchattenP::One), Err(Error::Domain(_))));
    }

    #[test]
    fn schatten_ordering_on_random_operators() {
        let mut rng = random::stream_rng(7, 0);
        for _ in 0..10 {
            let u = random::ginibre(5, &mut rng);
            let inf = schatten_norm(&u, SchattenP::Inf).unwrap();
            let two = schatten_norm(&u, SchattenP::Two).unwrap();
            let one = schatten_norm(&u, SchattenP::One).unwrap();
            assert!(inf <= two + 1e-12 && two <= one + 1e-12);
            let sv2: f64 = singular_values(&u).iter().map(|s| s * s).sum::<f64>().sqrt();
            assert!((sv2 - two).abs() < 1e-10);
        }
    }

    #[test]
    fn partial_trace_product_and_bell() {
        let zz = DenseState::basis(4, 0).projector();
        let r = partial_trace(&zz, &[2, 2], &[0]).unwrap();
        assert!(r.max_abs_diff(&DenseState::basis(2, 0).projector()) < 1e-15);

        let s = std::f64::consts::FRAC_1_SQRT_2;
        let bell = DenseState::new(vec![c(s), c(0.0), c(0.0), c(s)]).unwrap();
        let r = partial_trace(&bell.projector(), &[2, 2], &[0]).unwrap();
        assert!(r.max_abs_diff(&DenseOperator::identity(2).scale_real(0.5)) < 1e-15);
        let rp = partial_trace_pure(&bell, &[2, 2], &[1]).unwrap();
        assert!(rp.max_abs_diff(&r) < 1e-15);
    }

    #[test]
    fn partial_trace_matches_index_sum() {
        let mut rng = random::stream_rng(11, 0);
        let rho = random_density(4, &mut rng);
        let r = partial_trace(&rho, &[2, 2], &[1]).unwrap();
        for a in 0..2 {
            for b in 0..2 {
                let direct = rho.get(a, b) + rho.get(2 + a, 2 + b);
                assert!((r.get(a, b) - direct).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn partial_traces_compose_to_full_trace() {
        let mut rng = random::stream_rng(3, 1);
        let rho = random_density(12, &mut rng);
        let dims = [2, 3, 2];
        let r02 = partial_trace(&rho, &dims, &[0, 2]).unwrap();
        let r0 = partial_trace(&r02, &[2, 2], &[0]).unwrap();
        assert!((r0.trace() - rho.trace()).norm() < 1e-12);
        assert!((partial_trace(&rho, &dims, &[]).unwrap().get(0, 0) - rho.trace()).norm() < 1e-12);
    }

    #[test]
    fn pure_partial_trace_matches_mixed() {
        let mut rng = random::stream_rng(5, 2);
        let psi = haar_state(24, &mut rng);
        let dims = [2, 3, 4];
        for keep in [vec![0], vec![1], vec![2], vec![0, 2], vec![1, 2]] {
            let a = partial_trace(&psi.projector(), &dims, &keep).unwrap();
            let b = partial_trace_pure(&psi, &dims, &keep).unwrap();
            assert!(a.max_abs_diff(&b) < 1e-13, "keep {keep:?}");
        }
    }

    #[test]
    fn partial_trace_dimension_mismatch() {
        let rho = DenseOperator::identity(4);
        assert!(partial_trace(&rho, &[2, 3], &[0]).is_err());
        assert!(partial_trace(&rho, &[2, 2], &[2]).is_err());
    }

    #[test]
    fn operator_json_roundtrip() {
        let m = DenseOperator::from_fn(2, 3, |r, c| C64::new(r as f64, c as f64));
        let s = serde_json::to_string(&m).unwrap();
        let back: DenseOperator = serde_json::from_str(&s).unwrap();
        assert_eq!(m, back);
    }
}
