//! Trajectory matrices, weighted vector and matrix norms, and the numerical
//! check of the norm equivalence
//! `|| T_L(z) ||_{L,R}^2 = z' (L * R) z`
//! that ties the matrix form of Hankel structured low-rank approximation to
//! its vector form. The equality holds for every series exactly when the
//! weight matrix is the convolution of the two factor matrices; the reports
//! produced here quantify how far a candidate weight matrix is from that.

use crate::banded::{conv_dense, DenseMat};
use crate::error::{Error, Result};
use serde::ser::SerializeStruct;
use serde::Serialize;

/// A real series of length at least 2 with finite entries.
#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    values: Vec<f64>,
}

impl Series {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::InvalidInput("series must have length >= 2".into()));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("series values must be finite".into()));
        }
        Ok(Series { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// `L x K` Hankel trajectory matrix with `K = N - L + 1` and entry
/// `(l, k) = z_{l+k}`. Any `2 <= L <= N - 1` is accepted; window lengths
/// above `N / 2` fall outside the usual low-rank-approximation convention
/// but are still valid Hankel layouts.
pub fn trajectory_matrix(z: &Series, l: usize) -> Result<DenseMat> {
    let n = z.len();
    if l < 2 || l > n - 1 {
        return Err(Error::InvalidInput(format!(
            "window length must satisfy 2 <= L <= N - 1, got L = {l}, N = {n}"
        )));
    }
    let k = n - l + 1;
    let mut out = DenseMat::zeros(l, k);
    for row in 0..l {
        for col in 0..k {
            out.set(row, col, z.values[row + col]);
        }
    }
    Ok(out)
}

/// Weighted squared norm `z' W z`.
pub fn vec_norm_sq(z: &Series, w: &DenseMat) -> Result<f64> {
    let n = z.len();
    if w.rows() != n || w.cols() != n {
        return Err(Error::InvalidInput(format!(
            "weight matrix must be {n}x{n}, got {}x{}",
            w.rows(),
            w.cols()
        )));
    }
    let zs = z.values();
    let mut acc = 0.0;
    for i in 0..n {
        let mut row = 0.0;
        for j in 0..n {
            row += w.get(i, j) * zs[j];
        }
        acc += zs[i] * row;
    }
    Ok(acc)
}

/// Weighted squared matrix norm `tr(Lm X Rm X')`.
pub fn mat_norm_sq(x: &DenseMat, lm: &DenseMat, rm: &DenseMat) -> Result<f64> {
    if !lm.is_square() || !rm.is_square() || lm.rows() != x.rows() || rm.rows() != x.cols() {
        return Err(Error::InvalidInput(format!(
            "need Lm {l}x{l}, X {l}x{k}, Rm {k}x{k}; got Lm {}x{}, X {}x{}, Rm {}x{}",
            lm.rows(),
            lm.cols(),
            x.rows(),
            x.cols(),
            rm.rows(),
            rm.cols(),
            l = x.rows(),
            k = x.cols(),
        )));
    }
    let prod = lm.matmul(x)?.matmul(rm)?.matmul(&x.transpose())?;
    Ok((0..prod.rows()).map(|i| prod.get(i, i)).sum())
}

/// Outcome of a norm-equivalence check.
#[derive(Debug, Clone, PartialEq)]
pub struct NormCheckReport {
    pub lhs: f64,
    pub rhs: f64,
    pub abs_diff: f64,
    pub rel_diff: f64,
    pub w_used: DenseMat,
}

impl Serialize for NormCheckReport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("NormCheckReport", 5)?;
        st.serialize_field("lhs", &self.lhs)?;
        st.serialize_field("rhs", &self.rhs)?;
        st.serialize_field("abs_diff", &self.abs_diff)?;
        st.serialize_field("rel_diff", &self.rel_diff)?;
        st.serialize_field("w_used", &self.w_used)?;
        st.end()
    }
}

fn report(lhs: f64, rhs: f64, w_used: DenseMat) -> NormCheckReport {
    let abs_diff = (lhs - rhs).abs();
    let rel_diff = abs_diff / lhs.abs().max(rhs.abs()).max(1.0);
    NormCheckReport {
        lhs,
        rhs,
        abs_diff,
        rel_diff,
        w_used,
    }
}

/// Compares the matrix norm of the trajectory matrix against the vector
/// norm taken with `W = conv(Lm, Rm)`. The two agree for any series up to
/// roundoff; this is the constructive direction of the norm equivalence.
pub fn norm_equivalence_check(z: &Series, lm: &DenseMat, rm: &DenseMat) -> Result<NormCheckReport> {
    let w = conv_dense(lm, rm)?;
    norm_equivalence_check_against(z, lm, rm, &w)
}

/// Same comparison against a caller-supplied weight matrix. Disagreement
/// beyond roundoff certifies that `W` is not the convolution of the two
/// factors.
pub fn norm_equivalence_check_against(
    z: &Series,
    lm: &DenseMat,
    rm: &DenseMat,
    w: &DenseMat,
) -> Result<NormCheckReport> {
    let n = z.len();
    if !lm.is_square() || !rm.is_square() {
        return Err(Error::InvalidInput("Lm and Rm must be square".into()));
    }
    if lm.rows() + rm.rows() != n + 1 {
        return Err(Error::InvalidInput(format!(
            "need L + K - 1 = N: got L = {}, K = {}, N = {n}",
            lm.rows(),
            rm.rows()
        )));
    }
    let x = trajectory_matrix(z, lm.rows())?;
    let lhs = mat_norm_sq(&x, lm, rm)?;
    let rhs = vec_norm_sq(z, w)?;
    Ok(report(lhs, rhs, w.clone()))
}
