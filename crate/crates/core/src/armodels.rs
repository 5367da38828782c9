//! Autoregressive models: scaled inverse autocovariance matrices, the
//! Yule-Walker autocovariance oracle, stationarity tests, and closed-form
//! generating functions of the matrix diagonals.
//!
//! All matrices use unit innovation variance; under that normalization the
//! inverse autocovariance matrix already has unit corners, so no extra
//! scaling is applied.

use crate::banded::{DenseMat, SymBanded};
use crate::error::{Error, Result};
use crate::linalg;
use crate::poly::{ones_poly, Poly};

/// AR(p) parameters in both the regression form `phi_1..phi_p` and the
/// filter form `alpha_0 = 1, alpha_i = -phi_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct ArParams {
    phi: Vec<f64>,
    alpha: Vec<f64>,
}

impl ArParams {
    /// The order is exact: the last coefficient must be nonzero.
    pub fn new(phi: Vec<f64>) -> Result<Self> {
        if phi.is_empty() {
            return Err(Error::InvalidInput("AR order must be at least 1".into()));
        }
        if phi.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("AR coefficients must be finite".into()));
        }
        if *phi.last().expect("nonempty") == 0.0 {
            return Err(Error::InvalidInput(
                "phi_p must be nonzero (the order is exact)".into(),
            ));
        }
        let mut alpha = Vec::with_capacity(phi.len() + 1);
        alpha.push(1.0);
        alpha.extend(phi.iter().map(|p| -p));
        Ok(ArParams { phi, alpha })
    }

    /// Builds a stationary AR(p) model from reflection coefficients
    /// (partial autocorrelations), each in (-1, 1) with the last one
    /// nonzero. The inverse Levinson-Durbin map guarantees stationarity,
    /// which makes this the natural sampler for random stationary models.
    pub fn from_reflection_coefficients(kappa: &[f64]) -> Result<Self> {
        if kappa.is_empty() {
            return Err(Error::InvalidInput("AR order must be at least 1".into()));
        }
        if kappa.iter().any(|k| k.abs() >= 1.0) {
            return Err(Error::InvalidInput(
                "reflection coefficients must lie in (-1, 1)".into(),
            ));
        }
        let p = kappa.len();
        let mut phi = vec![0.0; p];
        for (k, &kap) in kappa.iter().enumerate() {
            let prev = phi.clone();
            phi[k] = kap;
            for j in 0..k {
                phi[j] = prev[j] - kap * prev[k - 1 - j];
            }
        }
        ArParams::new(phi)
    }

    pub fn order(&self) -> usize {
        self.phi.len()
    }

    pub fn phi(&self) -> &[f64] {
        &self.phi
    }

    pub fn alpha(&self) -> &[f64] {
        &self.alpha
    }
}

/// Stationarity test. Orders one and two use the closed-form conditions
/// (`|phi_1| < 1`; `phi_2 + |phi_1| < 1` and `|phi_2| < 1`); higher orders
/// check that every root of `1 - phi_1 z - ... - phi_p z^p` lies strictly
/// outside the unit circle.
pub fn is_stationary(ar: &ArParams) -> bool {
    match ar.phi() {
        [phi1] => phi1.abs() < 1.0,
        [phi1, phi2] => phi2 + phi1.abs() < 1.0 && phi2.abs() < 1.0,
        _ => linalg::complex_roots(ar.alpha())
            .iter()
            .all(|r| r.norm() > 1.0),
    }
}

/// Tridiagonal inverse autocovariance matrix of AR(1) on `W + 1` points:
/// unit corners, interior diagonal `1 + phi_1^2`, off-diagonal `-phi_1`.
/// Defined for any `phi_1`, stationary or not.
pub fn build_w_ar1(phi1: f64, w: usize) -> Result<SymBanded> {
    if w < 1 {
        return Err(Error::InvalidInput("AR(1) matrix requires W >= 1".into()));
    }
    let k0 = 1.0 + phi1 * phi1;
    let mut d0 = vec![k0; w + 1];
    d0[0] = 1.0;
    d0[w] = 1.0;
    let d1 = vec![-phi1; w];
    SymBanded::new(w + 1, 1, vec![d0, d1])
}

/// Five-diagonal inverse autocovariance matrix of AR(2) on `W + 1` points
/// with the exact boundary pattern: corners 1, next diagonal entries
/// `1 + phi_1^2`, interior `1 + phi_1^2 + phi_2^2`; first off-diagonal
/// boundary `-phi_1`, interior `-phi_1 + phi_1 phi_2`; second diagonal
/// constant `-phi_2`.
pub fn build_w_ar2(phi1: f64, phi2: f64, w: usize) -> Result<SymBanded> {
    if w < 3 {
        return Err(Error::InvalidInput("AR(2) matrix requires W >= 3".into()));
    }
    let k0 = 1.0 + phi1 * phi1 + phi2 * phi2;
    let k22 = 1.0 + phi1 * phi1;
    let k1 = -phi1 + phi1 * phi2;
    let k12 = -phi1;
    let k2 = -phi2;
    let mut d0 = vec![k0; w + 1];
    d0[0] = 1.0;
    d0[1] = k22;
    d0[w - 1] = k22;
    d0[w] = 1.0;
    let mut d1 = vec![k1; w];
    d1[0] = k12;
    d1[w - 1] = k12;
    let d2 = vec![k2; w - 1];
    SymBanded::new(w + 1, 2, vec![d0, d1, d2])
}

/// `(2p+1)`-diagonal inverse autocovariance matrix of AR(p) on `W + 1`
/// points, `W >= 2p`, from the three-case entry formula
/// `w_{i,j} = sum_m alpha_m alpha_{m+|i-j|}` with summation limits set by
/// the corner regions.
pub fn build_w_arp(ar: &ArParams, w: usize) -> Result<SymBanded> {
    let p = ar.order();
    if w < 2 * p {
        return Err(Error::InvalidInput(format!(
            "matrix too small for order {p}: W = {w} < {}",
            2 * p
        )));
    }
    let alpha = ar.alpha();
    let entry = |i: usize, j: usize| -> f64 {
        let d = i.abs_diff(j);
        let upper = if i.max(j) < p {
            i.min(j)
        } else if i.min(j) > w - p {
            (w - i).min(w - j)
        } else {
            p - d
        };
        (0..=upper).map(|m| alpha[m] * alpha[m + d]).sum()
    };
    let mut diagonals = Vec::with_capacity(p + 1);
    for k in 0..=p {
        diagonals.push((0..=(w - k)).map(|j| entry(j, j + k)).collect());
    }
    SymBanded::new(w + 1, p, diagonals)
}

/// Toeplitz autocovariance matrix of a stationary AR(p) process on `n + 1`
/// points, unit innovation variance. Lags `0..p` come from a dense solve of
/// the Yule-Walker system; later lags follow the AR recursion. This is the
/// independent oracle against which the banded inverses are checked.
pub fn autocov_ar(ar: &ArParams, n: usize) -> Result<DenseMat> {
    if !is_stationary(ar) {
        return Err(Error::InvalidInput(
            "autocovariances require stationary parameters".into(),
        ));
    }
    let p = ar.order();
    let phi = ar.phi();
    // Unknowns gamma_0..gamma_p: row k encodes
    // gamma_k - sum_i phi_i gamma_{|k-i|} = [k == 0].
    let mut sys = DenseMat::zeros(p + 1, p + 1);
    for k in 0..=p {
        let mut row = vec![0.0; p + 1];
        row[k] += 1.0;
        for (i, &ph) in phi.iter().enumerate() {
            row[k.abs_diff(i + 1)] -= ph;
        }
        for (j, v) in row.into_iter().enumerate() {
            sys.set(k, j, v);
        }
    }
    let mut rhs = vec![0.0; p + 1];
    rhs[0] = 1.0;
    let mut gamma = linalg::solve_dense(&sys, &rhs)?;
    for k in p + 1..=n {
        let g = (1..=p).map(|i| phi[i - 1] * gamma[k - i]).sum();
        gamma.push(g);
    }
    let mut out = DenseMat::zeros(n + 1, n + 1);
    for i in 0..=n {
        for j in 0..=n {
            out.set(i, j, gamma[i.abs_diff(j)]);
        }
    }
    Ok(out)
}

/// Closed-form generating function of diagonal `k` of the AR(p) inverse
/// autocovariance matrix:
/// `w_k(t) = sum_{i=0}^{p-k} alpha_i alpha_{i+k} t^i C_{W-2i-k}(t)`.
/// Size preconditions follow the corresponding builder (`W >= 1` for p = 1,
/// `W >= 3` for p = 2, `W >= 2p` otherwise).
pub fn diag_gf_closed(ar: &ArParams, w: usize, k: usize) -> Result<Poly> {
    let p = ar.order();
    if k > p {
        return Err(Error::InvalidInput(format!(
            "diagonal {k} is outside the band of an AR({p}) inverse"
        )));
    }
    let min_w = match p {
        1 => 1,
        2 => 3,
        _ => 2 * p,
    };
    if w < min_w {
        return Err(Error::InvalidInput(format!(
            "AR({p}) matrix requires W >= {min_w}, got {w}"
        )));
    }
    let alpha = ar.alpha();
    let mut acc = Poly::zero();
    for i in 0..=(p - k) {
        let coeff = alpha[i] * alpha[i + k];
        let term = ones_poly(w as i64 - 2 * i as i64 - k as i64)
            .shifted(i)
            .scale(coeff);
        acc = acc.add(&term);
    }
    Ok(acc)
}
