//! Cyclic Jacobi eigenvalue iteration for dense real symmetric matrices.

use crate::error::{Error, Result};

pub const MAX_SWEEPS: usize = 100;
const REL_TOL: f64 = 1e-13;

/// Eigenvalues of the symmetric `n x n` matrix `a` (row-major), unsorted.
///
/// Converges when the off-diagonal Frobenius norm drops below
/// `1e-13 * ||a||_F`.
pub fn symmetric_eigenvalues(a: &[f64], n: usize) -> Result<Vec<f64>> {
    assert_eq!(a.len(), n * n);
    let mut m = a.to_vec();
    let total: f64 = m.iter().map(|x| x * x).sum::<f64>().sqrt();
    if total == 0.0 {
        return Ok(vec![0.0; n]);
    }
    let target = REL_TOL * total;
    for _ in 0..MAX_SWEEPS {
        let off = off_norm(&m, n);
        if off < target {
            return Ok((0..n).map(|i| m[i * n + i]).collect());
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                rotate(&mut m, n, p, q);
            }
        }
    }
    if off_norm(&m, n) < target {
        Ok((0..n).map(|i| m[i * n + i]).collect())
    } else {
        Err(Error::ConvergenceFailure(MAX_SWEEPS))
    }
}

fn off_norm(m: &[f64], n: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += m[i * n + j] * m[i * n + j];
            }
        }
    }
    s.sqrt()
}

/// Annihilates `m[p][q]` with a Givens rotation applied from both sides.
fn rotate(m: &mut [f64], n: usize, p: usize, q: usize) {
    let app = m[p * n + p];
    let aqq = m[q * n + q];
    let apq = m[p * n + q];
    let theta = (aqq - app) / (2.0 * apq);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let t = if theta == 0.0 { 1.0 } else { t };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    for k in 0..n {
        let akp = m[k * n + p];
        let akq = m[k * n + q];
        m[k * n + p] = c * akp - s * akq;
        m[k * n + q] = s * akp + c * akq;
    }
    for k in 0..n {
        let apk = m[p * n + k];
        let aqk = m[q * n + k];
        m[p * n + k] = c * apk - s * aqk;
        m[q * n + k] = s * apk + c * aqk;
    }
    m[p * n + p] = app - t * apq;
    m[q * n + q] = aqq + t * apq;
    m[p * n + q] = 0.0;
    m[q * n + p] = 0.0;
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sorted(mut v: Vec<f64>) -> Vec<f64> {
        v.sort_by(|a, b| a.partial_cmp(b).unwrap());
        v
    }

    #[test]
    fn two_by_two() {
        let ev = sorted(symmetric_eigenvalues(&[2.0, 1.0, 1.0, 2.0], 2).unwrap());
        assert!((ev[0] - 1.0).abs() < 1e-14);
        assert!((ev[1] - 3.0).abs() < 1e-14);
    }

    #[test]
    fn path_graph_spectrum() {
        // P_n has eigenvalues 2 cos(pi j / (n + 1)).
        let n = 9;
        let mut a = vec![0.0; n * n];
        for i in 1..n {
            a[i * n + i - 1] = 1.0;
            a[(i - 1) * n + i] = 1.0;
        }
        let ev = sorted(symmetric_eigenvalues(&a, n).unwrap());
        let mut expect: Vec<f64> =
            (1..=n).map(|j| 2.0 * (std::f64::consts::PI * j as f64 / (n as f64 + 1.0)).cos()).collect();
        expect.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (x, y) in ev.iter().zip(&expect) {
            assert!((x - y).abs() < 1e-12, "{x} vs {y}");
        }
    }

    #[test]
    fn zero_matrix() {
        assert_eq!(symmetric_eigenvalues(&[0.0; 9], 3).unwrap(), vec![0.0; 3]);
    }
}
