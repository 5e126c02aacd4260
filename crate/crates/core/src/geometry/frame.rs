use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Gram–Schmidt at a point with respect to the bilinear form `metric`.
///
/// Vectors are processed in input order. A vector whose residual, relative
/// to its own length, drops below `tol` makes the family degenerate.
pub fn gram_schmidt_at(vectors: &[Vec<f64>], metric: &DMatrix<f64>, tol: f64) -> Result<Vec<Vec<f64>>> {
    let n = metric.nrows();
    let inner = |a: &DVector<f64>, b: &DVector<f64>| a.dot(&(metric * b));
    let mut out: Vec<DVector<f64>> = Vec::with_capacity(vectors.len());
    for v in vectors {
        if v.len() != n {
            return Err(Error::Dimension { expected: n, found: v.len() });
        }
        let v0 = DVector::from_column_slice(v);
        let scale = inner(&v0, &v0).sqrt();
        let mut r = v0.clone();
        // two passes keep the result orthogonal to working precision
        for _ in 0..2 {
            for e in &out {
                let c = inner(&r, e);
                r -= c * e;
            }
        }
        let norm = inner(&r, &r).max(0.0).sqrt();
        if scale == 0.0 || norm < tol * scale {
            return Err(Error::DegenerateFrame { residual: if scale == 0.0 { 0.0 } else { norm / scale }, tolerance: tol });
        }
        out.push(r / norm);
    }
    Ok(out.into_iter().map(|e| e.iter().copied().collect()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn id(n: usize) -> DMatrix<f64> {
        DMatrix::identity(n, n)
    }

    #[test]
    fn textbook_cases() {
        let e = gram_schmidt_at(&[vec![1.0, 0.0], vec![0.0, 2.0]], &id(2), 1e-10).unwrap();
        assert_eq!(e, vec![vec![1.0, 0.0], vec![0.0, 1.0]]);

        let e = gram_schmidt_at(&[vec![1.0, 1.0], vec![1.0, 0.0]], &id(2), 1e-10).unwrap();
        let s = 1.0 / 2f64.sqrt();
        let want = [[s, s], [s, -s]];
        for (a, b) in e.iter().zip(&want) {
            for (x, y) in a.iter().zip(b) {
                assert!((x - y).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn nearly_parallel_pair_is_degenerate() {
        let err = gram_schmidt_at(&[vec![1.0, 0.0], vec![1.0, 1e-12]], &id(2), 1e-9).unwrap_err();
        assert!(matches!(err, Error::DegenerateFrame { .. }));
    }

    #[test]
    fn weighted_metric() {
        let g = DMatrix::from_diagonal(&DVector::from_vec(vec![1.0, 0.25]));
        let e = gram_schmidt_at(&[vec![0.0, 1.0]], &g, 1e-10).unwrap();
        assert!((e[0][1] - 2.0).abs() < 1e-15);
    }
}
