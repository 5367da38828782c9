//! Small dense linear-algebra routines sized for desk-scale matrices:
//! Gaussian elimination, cyclic Jacobi eigenvalues, and Durand-Kerner
//! polynomial roots.

use crate::banded::DenseMat;
use crate::error::{Error, Result};
use num_complex::Complex64;

/// Solves `a x = b` by Gaussian elimination with partial pivoting.
pub fn solve_dense(a: &DenseMat, b: &[f64]) -> Result<Vec<f64>> {
    if !a.is_square() || a.rows() != b.len() {
        return Err(Error::InvalidInput("solve requires a square system".into()));
    }
    let n = a.rows();
    let mut m: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            let mut row = a.row(i).to_vec();
            row.push(b[i]);
            row
        })
        .collect();
    for col in 0..n {
        let (pivot, pmax) = (col..n)
            .map(|r| (r, m[r][col].abs()))
            .max_by(|x, y| x.1.total_cmp(&y.1))
            .expect("non-empty column");
        if pmax == 0.0 {
            return Err(Error::Singular("zero pivot in elimination".into()));
        }
        m.swap(col, pivot);
        for r in col + 1..n {
            let f = m[r][col] / m[col][col];
            if f == 0.0 {
                continue;
            }
            for c in col..=n {
                let v = m[col][c];
                m[r][c] -= f * v;
            }
        }
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let mut acc = m[i][n];
        for j in i + 1..n {
            acc -= m[i][j] * x[j];
        }
        x[i] = acc / m[i][i];
    }
    Ok(x)
}

/// Eigenvalues of a symmetric matrix by the cyclic Jacobi method, sorted
/// ascending. The caller is responsible for symmetry.
pub fn symmetric_eigenvalues(m: &DenseMat) -> Vec<f64> {
    assert!(m.is_square(), "eigenvalues of a square matrix");
    let n = m.rows();
    let mut a: Vec<Vec<f64>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    let frob: f64 = a
        .iter()
        .flat_map(|r| r.iter())
        .map(|v| v * v)
        .sum::<f64>()
        .sqrt();
    if frob == 0.0 {
        return vec![0.0; n];
    }
    for _sweep in 0..100 {
        let mut off: f64 = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                off += a[i][j] * a[i][j];
            }
        }
        if off.sqrt() <= 1e-14 * frob {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p][q];
                if apq.abs() <= 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut eig: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    eig.sort_by(f64::total_cmp);
    eig
}

/// Smallest eigenvalue of a symmetric matrix.
pub fn min_symmetric_eigenvalue(m: &DenseMat) -> f64 {
    symmetric_eigenvalues(m)[0]
}

/// All complex roots of a real polynomial (ascending coefficients, nonzero
/// leading coefficient) by Durand-Kerner iteration.
pub fn complex_roots(coeffs: &[f64]) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    assert!(n >= 1 && coeffs[n] != 0.0, "nonconstant polynomial required");
    let monic: Vec<f64> = coeffs.iter().map(|c| c / coeffs[n]).collect();
    let eval = |z: Complex64| {
        let mut acc = Complex64::new(0.0, 0.0);
        for &c in monic.iter().rev() {
            acc = acc * z + c;
        }
        acc
    };
    let seed = Complex64::new(0.4, 0.9);
    let mut roots: Vec<Complex64> = (0..n).map(|j| seed.powu(j as u32 + 1)).collect();
    for _ in 0..500 {
        let mut worst: f64 = 0.0;
        for j in 0..n {
            let mut den = Complex64::new(1.0, 0.0);
            for k in 0..n {
                if k != j {
                    den *= roots[j] - roots[k];
                }
            }
            let delta = eval(roots[j]) / den;
            roots[j] -= delta;
            worst = worst.max(delta.norm() / (1.0 + roots[j].norm()));
        }
        if worst < 1e-13 {
            break;
        }
    }
    roots
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solve_small_system() {
        let a = DenseMat::new(2, 2, vec![2.0, 1.0, 1.0, 3.0]).unwrap();
        let x = solve_dense(&a, &[5.0, 10.0]).unwrap();
        assert!((x[0] - 1.0).abs() < 1e-12);
        assert!((x[1] - 3.0).abs() < 1e-12);

        let singular = DenseMat::new(2, 2, vec![1.0, 2.0, 2.0, 4.0]).unwrap();
        assert!(solve_dense(&singular, &[1.0, 2.0]).is_err());
    }

    #[test]
    fn jacobi_known_eigenvalues() {
        let m = DenseMat::new(2, 2, vec![1.0, -1.0, -1.0, 1.0]).unwrap();
        let e = symmetric_eigenvalues(&m);
        assert!((e[0] - 0.0).abs() < 1e-12);
        assert!((e[1] - 2.0).abs() < 1e-12);

        let m = DenseMat::new(2, 2, vec![1.0, 2.0, 2.0, 1.0]).unwrap();
        let e = symmetric_eigenvalues(&m);
        assert!((e[0] + 1.0).abs() < 1e-12);
        assert!((e[1] - 3.0).abs() < 1e-12);

        // trace and determinant cross-check on a 3x3
        let m = DenseMat::new(3, 3, vec![2.0, 1.0, 0.0, 1.0, 3.0, 0.5, 0.0, 0.5, 1.5]).unwrap();
        let e = symmetric_eigenvalues(&m);
        let trace: f64 = e.iter().sum();
        assert!((trace - 6.5).abs() < 1e-10);
        let det_expected = 2.0 * (3.0 * 1.5 - 0.25) - 1.0 * (1.5);
        let det: f64 = e.iter().product();
        assert!((det - det_expected).abs() < 1e-10);
    }

    #[test]
    fn durand_kerner_roots() {
        // (z - 2)(z + 3) = z^2 + z - 6
        let roots = complex_roots(&[-6.0, 1.0, 1.0]);
        let mut mods: Vec<f64> = roots.iter().map(|r| r.norm()).collect();
        mods.sort_by(f64::total_cmp);
        assert!((mods[0] - 2.0).abs() < 1e-9);
        assert!((mods[1] - 3.0).abs() < 1e-9);

        // z^4 + 1: all roots on the unit circle
        let roots = complex_roots(&[1.0, 0.0, 0.0, 0.0, 1.0]);
        for r in roots {
            assert!((r.norm() - 1.0).abs() < 1e-9);
        }
    }
}
