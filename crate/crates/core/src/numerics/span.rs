use super::dense::inner_slices;
use super::C64;
use crate::{Error, Result};

/// An orthonormal basis together with its size.
#[derive(Clone, Debug)]
pub struct Span {
    pub basis: Vec<Vec<C64>>,
    pub rank: usize,
}

const DEPENDENT: f64 = 1e-10;

/// Modified Gram–Schmidt with one re-orthogonalization pass. Vectors whose
/// residual norm drops below `1e-10` are treated as dependent.
pub fn orthonormal_span(vectors: &[Vec<C64>]) -> Result<Span> {
    let Some(first) = vectors.first() else {
        return Ok(Span { basis: Vec::new(), rank: 0 });
    };
    let dim = first.len();
    if vectors.iter().any(|v| v.len() != dim) {
        return Err(Error::domain("vectors of different dimensions"));
    }
    let mut basis: Vec<Vec<C64>> = Vec::new();
    for v in vectors {
        let mut w = v.clone();
        for _ in 0..2 {
            for q in &basis {
                let c = inner_slices(q, &w);
                for (wi, qi) in w.iter_mut().zip(q) {
                    *wi -= c * qi;
                }
            }
        }
        let norm = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm >= DEPENDENT {
            for wi in &mut w {
                *wi /= norm;
            }
            basis.push(w);
        }
    }
    let rank = basis.len();
    Ok(Span { basis, rank })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{perm_operator, Permutation};

    fn e(dim: usize, i: usize) -> Vec<C64> {
        let mut v = vec![C64::new(0.0, 0.0); dim];
        v[i] = C64::new(1.0, 0.0);
        v
    }

    #[test]
    fn trivial_spans() {
        assert_eq!(orthonormal_span(&[e(3, 0), e(3, 0)]).unwrap().rank, 1);
        let s = orthonormal_span(&[e(3, 0), e(3, 1)]).unwrap();
        assert_eq!(s.rank, 2);
        assert_eq!(s.basis, vec![e(3, 0), e(3, 1)]);
        assert_eq!(orthonormal_span(&[]).unwrap().rank, 0);
        assert!(orthonormal_span(&[e(3, 0), e(2, 0)]).is_err());
    }

    fn gram_rank(vs: &[Vec<C64>]) -> usize {
        let n = vs.len();
        let g = crate::numerics::DenseOperator::from_fn(n, n, |a, b| inner_slices(&vs[a], &vs[b]));
        g.hermitian_eigenvalues().unwrap().iter().filter(|&&x| x > 1e-8).count()
    }

    #[test]
    fn permutation_vectors_rank_against_gram_oracle() {
        for (d, t, expected) in [(2, 2, 2), (2, 3, 5), (3, 3, 6), (2, 4, 14), (3, 4, 23)] {
            let vs: Vec<Vec<C64>> = Permutation::all(t)
                .iter()
                .map(|p| perm_operator(d, t, p).unwrap().row_major())
                .collect();
            let span = orthonormal_span(&vs).unwrap();
            assert_eq!(span.rank, expected, "d={d} t={t}");
            assert_eq!(gram_rank(&vs), expected);
        }
    }
}
