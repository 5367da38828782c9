//! Symmetric banded matrices stored by diagonals, dense matrices, 2-D
//! discrete convolution, and two-variable generating functions.
//!
//! `conv_dense` is the brute-force double-sum oracle and stays around
//! permanently as the reference for the diagonal-wise fast path
//! `conv_banded`.

use crate::error::{Error, Result};
use crate::poly::Poly;
use num_complex::Complex64;
use serde::ser::SerializeSeq;
use serde::{Deserialize, Serialize};

/// Absolute tolerance used when validating dense inputs (symmetry, band
/// support). Inputs here are constructed, not measured.
pub const BAND_TOL: f64 = 1e-12;

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMat {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl DenseMat {
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidInput("matrix dimensions must be positive".into()));
        }
        if data.len() != rows * cols {
            return Err(Error::InvalidInput(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(DenseMat { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMat {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = DenseMat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1.0);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> DenseMat {
        let mut out = DenseMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    pub fn matmul(&self, other: &DenseMat) -> Result<DenseMat> {
        if self.cols != other.rows {
            return Err(Error::InvalidInput(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = DenseMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        if !self.is_square() {
            return false;
        }
        for i in 0..self.rows {
            for j in (i + 1)..self.cols {
                if (self.get(i, j) - self.get(j, i)).abs() > tol {
                    return false;
                }
            }
        }
        true
    }

    pub fn max_abs_diff(&self, other: &DenseMat) -> Result<f64> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::InvalidInput("matrix size mismatch".into()));
        }
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max))
    }

    /// Direct double-sum generating function `sum m_ij t^i s^j`.
    pub fn gf_eval(&self, t: Complex64, s: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        let mut ti = Complex64::new(1.0, 0.0);
        for i in 0..self.rows {
            let mut sj = Complex64::new(1.0, 0.0);
            let mut row_acc = Complex64::new(0.0, 0.0);
            for j in 0..self.cols {
                row_acc += self.get(i, j) * sj;
                sj *= s;
            }
            acc += ti * row_acc;
            ti *= t;
        }
        acc
    }
}

impl Serialize for DenseMat {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.rows))?;
        for i in 0..self.rows {
            seq.serialize_element(self.row(i))?;
        }
        seq.end()
    }
}

/// 2-D discrete convolution of two square matrices (the dense oracle):
/// `c_{i,j} = sum_{k,l} a_{k,l} b_{i-k,j-l}` over all defined index pairs.
pub fn conv_dense(a: &DenseMat, b: &DenseMat) -> Result<DenseMat> {
    if !a.is_square() || !b.is_square() {
        return Err(Error::InvalidInput(
            "matrix convolution is defined here for square inputs".into(),
        ));
    }
    let na = a.rows();
    let nb = b.rows();
    let n = na + nb - 1;
    let mut out = DenseMat::zeros(n, n);
    for k in 0..na {
        for l in 0..na {
            let av = a.get(k, l);
            if av == 0.0 {
                continue;
            }
            for i in 0..nb {
                for j in 0..nb {
                    let v = out.get(k + i, l + j) + av * b.get(i, j);
                    out.set(k + i, l + j, v);
                }
            }
        }
    }
    Ok(out)
}

/// Symmetric `(2p+1)`-diagonal matrix stored as its upper diagonals
/// `d_0 .. d_p`, where `d_k[j]` is entry `(j, j+k)`.
///
/// Only the upper diagonals are stored; signed diagonal indices resolve by
/// symmetry.
#[derive(Debug, Clone, PartialEq)]
pub struct SymBanded {
    dim: usize,
    half_bw: usize,
    diagonals: Vec<Vec<f64>>,
}

impl SymBanded {
    pub fn new(dim: usize, half_bw: usize, diagonals: Vec<Vec<f64>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidInput("matrix dimension must be positive".into()));
        }
        if half_bw >= dim {
            return Err(Error::InvalidInput(format!(
                "half bandwidth {half_bw} must be smaller than dimension {dim}"
            )));
        }
        if diagonals.len() != half_bw + 1 {
            return Err(Error::InvalidInput(format!(
                "expected {} diagonals, got {}",
                half_bw + 1,
                diagonals.len()
            )));
        }
        for (k, d) in diagonals.iter().enumerate() {
            if d.len() != dim - k {
                return Err(Error::InvalidInput(format!(
                    "diagonal {k} must have length {}, got {}",
                    dim - k,
                    d.len()
                )));
            }
            if d.iter().any(|v| !v.is_finite()) {
                return Err(Error::InvalidInput(format!(
                    "diagonal {k} contains a non-finite value"
                )));
            }
        }
        Ok(SymBanded {
            dim,
            half_bw,
            diagonals,
        })
    }

    /// Builds from generating functions of the diagonals: `polys[k]` is the
    /// gf of diagonal `k`, zero-padded up to length `dim - k`.
    pub fn from_diag_polys(dim: usize, polys: &[Poly]) -> Result<Self> {
        if polys.is_empty() {
            return Err(Error::InvalidInput("at least the main diagonal is required".into()));
        }
        let half_bw = polys.len() - 1;
        let mut diagonals = Vec::with_capacity(polys.len());
        for (k, p) in polys.iter().enumerate() {
            if dim < k + 1 || p.coeffs().len() > dim - k {
                return Err(Error::InvalidInput(format!(
                    "diagonal {k} gf of degree {:?} does not fit dimension {dim}",
                    p.degree()
                )));
            }
            let mut d = p.coeffs().to_vec();
            d.resize(dim - k, 0.0);
            diagonals.push(d);
        }
        SymBanded::new(dim, half_bw, diagonals)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn half_bw(&self) -> usize {
        self.half_bw
    }

    pub fn diagonal(&self, k: usize) -> &[f64] {
        &self.diagonals[k]
    }

    /// Entry `(i, j)`; zero outside the band, symmetric inside.
    pub fn entry(&self, i: usize, j: usize) -> f64 {
        let (lo, hi) = if i <= j { (i, j) } else { (j, i) };
        let k = hi - lo;
        if k > self.half_bw {
            0.0
        } else {
            self.diagonals[k][lo]
        }
    }

    pub fn to_dense(&self) -> DenseMat {
        let mut out = DenseMat::zeros(self.dim, self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                out.set(i, j, self.entry(i, j));
            }
        }
        out
    }

    /// Rebuilds the banded form of a dense matrix, checking symmetry and
    /// that nothing lives outside the declared band (both within
    /// [`BAND_TOL`]).
    pub fn from_dense(d: &DenseMat, half_bw: usize) -> Result<Self> {
        if !d.is_square() {
            return Err(Error::InvalidInput("banded matrices are square".into()));
        }
        let n = d.rows();
        if half_bw >= n {
            return Err(Error::InvalidInput(format!(
                "half bandwidth {half_bw} must be smaller than dimension {n}"
            )));
        }
        if !d.is_symmetric(BAND_TOL) {
            return Err(Error::InvalidInput("matrix is not symmetric".into()));
        }
        for i in 0..n {
            for j in 0..n {
                if j > i + half_bw && d.get(i, j).abs() > BAND_TOL {
                    return Err(Error::InvalidInput(format!(
                        "nonzero entry ({i}, {j}) outside declared band"
                    )));
                }
            }
        }
        let mut diagonals = Vec::with_capacity(half_bw + 1);
        for k in 0..=half_bw {
            diagonals.push((0..n - k).map(|j| d.get(j, j + k)).collect());
        }
        SymBanded::new(n, half_bw, diagonals)
    }

    /// Generating function of diagonal `k` as a polynomial.
    pub fn diag_gf(&self, k: usize) -> Result<Poly> {
        if k > self.half_bw {
            return Err(Error::InvalidInput(format!(
                "diagonal {k} is outside the band (half bandwidth {})",
                self.half_bw
            )));
        }
        Ok(Poly::new(self.diagonals[k].clone()))
    }

    /// Two-variable generating function via the symmetric diagonal formula
    /// `u_0(ts) + sum_i (t^i + s^i) u_i(ts)`.
    pub fn gf_eval(&self, t: Complex64, s: Complex64) -> Complex64 {
        let ts = t * s;
        let horner = |d: &[f64]| {
            let mut acc = Complex64::new(0.0, 0.0);
            for &c in d.iter().rev() {
                acc = acc * ts + c;
            }
            acc
        };
        let mut acc = horner(&self.diagonals[0]);
        let mut ti = Complex64::new(1.0, 0.0);
        let mut si = Complex64::new(1.0, 0.0);
        for k in 1..=self.half_bw {
            ti *= t;
            si *= s;
            acc += (ti + si) * horner(&self.diagonals[k]);
        }
        acc
    }

    pub fn max_abs_diff(&self, other: &SymBanded) -> Result<f64> {
        if self.dim != other.dim {
            return Err(Error::InvalidInput("matrix size mismatch".into()));
        }
        let p = self.half_bw.max(other.half_bw);
        let mut worst: f64 = 0.0;
        for k in 0..=p {
            for j in 0..self.dim - k {
                let a = self.entry(j, j + k);
                let b = other.entry(j, j + k);
                worst = worst.max((a - b).abs());
            }
        }
        Ok(worst)
    }
}

/// `(|j| + |k| - |j+k|) / 2`, the zero-padding width used when assembling
/// diagonal `j + k` from diagonals `j` and `k`. Three-case form: 0 when
/// `jk >= 0`, else `min(|j|, |k|)`.
pub fn pad_width(j: isize, k: isize) -> usize {
    ((j.abs() + k.abs() - (j + k).abs()) / 2) as usize
}

fn conv_vec(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0.0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Diagonal-wise convolution of two symmetric banded matrices.
///
/// The result has half bandwidth `p1 + p2` and dimension
/// `dim_a + dim_b - 1`; diagonal `i` is assembled as the sum over
/// `j + k = i` of the zero-padded 1-D convolutions
/// `diag_j(a) * diag_k(b)`, padded by `pad_width(j, k)` on both ends.
pub fn conv_banded(a: &SymBanded, b: &SymBanded) -> SymBanded {
    let dim = a.dim() + b.dim() - 1;
    let p = a.half_bw() + b.half_bw();
    let pa = a.half_bw() as isize;
    let pb = b.half_bw() as isize;
    let mut diagonals = Vec::with_capacity(p + 1);
    for i in 0..=(p as isize) {
        let mut acc = vec![0.0; dim - i as usize];
        for j in -pa..=pa {
            let k = i - j;
            if k.abs() > pb {
                continue;
            }
            let v = conv_vec(a.diagonal(j.unsigned_abs()), b.diagonal(k.unsigned_abs()));
            let pad = pad_width(j, k);
            debug_assert_eq!(pad + v.len() + pad, acc.len());
            for (idx, val) in v.into_iter().enumerate() {
                acc[pad + idx] += val;
            }
        }
        diagonals.push(acc);
    }
    SymBanded::new(dim, p, diagonals).expect("convolution dimensions are consistent")
}

/// Convolution with a diagonal right factor: every diagonal of `a` is
/// convolved with the main diagonal `b_diag` of the (implicit) diagonal
/// matrix.
pub fn conv_diag_right(a: &SymBanded, b_diag: &[f64]) -> SymBanded {
    assert!(!b_diag.is_empty(), "diagonal factor must be non-empty");
    let dim = a.dim() + b_diag.len() - 1;
    let diagonals = (0..=a.half_bw())
        .map(|k| {
            let mut d = conv_vec(a.diagonal(k), b_diag);
            debug_assert_eq!(d.len(), dim - k);
            d.shrink_to_fit();
            d
        })
        .collect();
    SymBanded::new(dim, a.half_bw(), diagonals).expect("diagonal convolution dimensions")
}

#[derive(Deserialize)]
struct SymBandedRepr {
    dim: usize,
    half_bw: usize,
    diagonals: Vec<Vec<f64>>,
}

impl TryFrom<SymBandedRepr> for SymBanded {
    type Error = Error;
    fn try_from(r: SymBandedRepr) -> Result<Self> {
        SymBanded::new(r.dim, r.half_bw, r.diagonals)
    }
}

impl<'de> Deserialize<'de> for SymBanded {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = SymBandedRepr::deserialize(d)?;
        SymBanded::try_from(repr).map_err(serde::de::Error::custom)
    }
}

impl Serialize for SymBanded {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("SymBanded", 3)?;
        st.serialize_field("dim", &self.dim)?;
        st.serialize_field("half_bw", &self.half_bw)?;
        st.serialize_field("diagonals", &self.diagonals)?;
        st.end()
    }
}
