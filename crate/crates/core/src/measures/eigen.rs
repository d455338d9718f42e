use ndarray::Array2;

use crate::scalar::{Scalar, C};

/// Eigenvalues of a Hermitian matrix, ascending.
///
/// 2×2 inputs use the closed form. Larger inputs go through the real
/// symmetric embedding `[[A, -B], [B, A]]` of `H = A + iB`, diagonalized by
/// cyclic Jacobi; every eigenvalue of `H` appears twice in the embedding.
pub fn hermitian_eigenvalues<T: Scalar>(h: &Array2<C<T>>) -> Vec<T> {
    let n = h.nrows();
    assert_eq!(n, h.ncols(), "square matrix required");
    match n {
        0 => Vec::new(),
        1 => vec![h[[0, 0]].re],
        2 => {
            let half = T::lit(0.5);
            let (a, d) = (h[[0, 0]].re, h[[1, 1]].re);
            let b = (h[[0, 1]] + h[[1, 0]].conj()) * half;
            let mean = (a + d) * half;
            let gap = (((a - d) * half).powi(2) + b.norm_sqr()).sqrt();
            vec![mean - gap, mean + gap]
        }
        _ => {
            let mut m = Array2::<T>::zeros((2 * n, 2 * n));
            for r in 0..n {
                for c in 0..n {
                    let z = h[[r, c]];
                    m[[r, c]] = z.re;
                    m[[r + n, c + n]] = z.re;
                    m[[r, c + n]] = -z.im;
                    m[[r + n, c]] = z.im;
                }
            }
            let mut ev = jacobi_eigenvalues(m);
            ev.sort_by(|a, b| a.partial_cmp(b).expect("finite eigenvalues"));
            ev.into_iter().step_by(2).collect()
        }
    }
}

fn jacobi_eigenvalues<T: Scalar>(mut a: Array2<T>) -> Vec<T> {
    let n = a.nrows();
    let scale = a.iter().fold(T::zero(), |acc, v| acc + *v * *v).sqrt();
    let eps = T::epsilon() * scale.max(T::min_positive_value());
    for _sweep in 0..64 {
        let mut off = T::zero();
        for p in 0..n {
            for q in p + 1..n {
                off += a[[p, q]] * a[[p, q]];
            }
        }
        if off.sqrt() <= eps {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[[p, q]];
                if apq.abs() <= T::min_positive_value() {
                    continue;
                }
                let theta = (a[[q, q]] - a[[p, p]]) / (T::lit(2.0) * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + T::one()).sqrt());
                let c = T::one() / (t * t + T::one()).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[[k, p]];
                    let akq = a[[k, q]];
                    a[[k, p]] = c * akp - s * akq;
                    a[[k, q]] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[[p, k]];
                    let aqk = a[[q, k]];
                    a[[p, k]] = c * apk - s * aqk;
                    a[[q, k]] = s * apk + c * aqk;
                }
            }
        }
    }
    (0..n).map(|i| a[[i, i]]).collect()
}
