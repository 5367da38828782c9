//! Blind matrix deconvolution `W = A * B` for the banded inverse
//! autocovariance matrices of AR(1) and AR(2), non-negative-definite
//! variants, and the remainder-based non-existence test for general AR(p)
//! with a diagonal right factor.
//!
//! The case structure:
//!
//! - AR(1), `A` tridiagonal and `B` diagonal: a pair exists iff
//!   `|phi_1| = 1`; every split `C_{W-1} = p q` yields one via
//!   `a_0 = (t+1) p`, `a_1 = -phi_1 p`, `b_0 = q`.
//! - AR(2), both factors tridiagonal: exists iff `phi_2 = -1, |phi_1| >= 2`
//!   (two branch assignments built from the roots of `z^2 + phi_1 z + 1`)
//!   or `phi_1 = 0, phi_2 = 1`.
//! - AR(2), `A` five-diagonal and `B` diagonal of size > 2: exists iff
//!   `phi_2 = -1` (any `phi_1`) or `phi_1 = 0, phi_2 = 1`.
//! - AR(2), `B` diagonal of size exactly 2 and odd `W`: `b_0 = 1 + t`
//!   divides every diagonal gf iff `phi_2 = -1` or `phi_1 = 0`; notably
//!   `phi_1 = 0` with arbitrary stationary `phi_2` works here.
//! - AR(p), diagonal `B` larger than p: all division remainders of the
//!   diagonal gfs by the ones polynomial of degree `W - p` must vanish; the
//!   leading one equals `1 - phi_p^2`, so stationary models never qualify.
//!
//! Structural parameter comparisons (`|phi_1| = 1`, `phi_2 = -1`, ...) use
//! the absolute tolerance [`PARAM_TOL`]: callers supply exact parameters,
//! not estimates.

use crate::armodels::{build_w_ar1, build_w_ar2, ArParams};
use crate::banded::{conv_banded, SymBanded};
use crate::error::{Error, Result};
use crate::linalg;
use crate::poly::{factor_ones_poly, ones_poly, split_from_mask, Poly, SplitMask};
use serde::Serialize;

/// Tolerance for structural equalities on model parameters.
pub const PARAM_TOL: f64 = 1e-12;

/// Tolerance for the convolution residual of a certified pair.
pub const RESIDUAL_TOL: f64 = 1e-9;

/// Outcome of a deconvolution decision.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DeconvStatus {
    /// A constructive deconvolution exists.
    #[serde(rename = "EXISTS")]
    Exists,
    /// No deconvolution exists; a witness backs the refusal.
    #[serde(rename = "NOT_EXISTS")]
    NotExists,
    /// Every necessary condition in scope holds, but existence is not
    /// claimed (the AR(p) test proves necessity only).
    #[serde(rename = "NECESSARY_CONDITIONS_HOLD")]
    NecessaryConditionsHold,
}

/// Which constructive case a decision refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DeconvCase {
    #[serde(rename = "AR1_PHI_PM1")]
    Ar1PhiPm1,
    #[serde(rename = "AR2_TRI_PHI2_NEG1")]
    Ar2TriPhi2Neg1,
    #[serde(rename = "AR2_TRI_PHI1_0_PHI2_1")]
    Ar2TriPhi10Phi21,
    #[serde(rename = "AR2_PENTA_PHI2_NEG1")]
    Ar2PentaPhi2Neg1,
    #[serde(rename = "AR2_PENTA_PHI1_0_PHI2_1")]
    Ar2PentaPhi10Phi21,
    #[serde(rename = "AR2_B1")]
    Ar2B1,
    #[serde(rename = "ARP_DIAG_B_NONE")]
    ArpDiagBNone,
}

/// Decision record: whether a deconvolution exists, which case applies, and
/// a checkable witness when it does not.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DeconvDecision {
    pub status: DeconvStatus,
    pub case_tag: Option<DeconvCase>,
    pub reason: String,
    pub witness: Option<f64>,
}

impl DeconvDecision {
    pub fn exists(&self) -> bool {
        self.status == DeconvStatus::Exists
    }
}

/// Shape of a certified pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PairShape {
    #[serde(rename = "TRI_X_DIAG")]
    TriXDiag,
    #[serde(rename = "TRI_X_TRI")]
    TriXTri,
    #[serde(rename = "PENTA_X_DIAG")]
    PentaXDiag,
}

/// The two assignments of the tridiagonal-times-tridiagonal construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    One,
    Two,
}

impl Branch {
    pub fn as_u8(self) -> u8 {
        match self {
            Branch::One => 1,
            Branch::Two => 2,
        }
    }

    pub fn from_u8(v: u8) -> Result<Self> {
        match v {
            1 => Ok(Branch::One),
            2 => Ok(Branch::Two),
            other => Err(Error::InvalidInput(format!(
                "branch must be 1 or 2, got {other}"
            ))),
        }
    }
}

impl Serialize for Branch {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_u8(self.as_u8())
    }
}

/// A certified factor pair: `conv(A, B)` matches the target matrix within
/// [`RESIDUAL_TOL`] (exactly when all entries are integer-valued), and
/// `residual` records the achieved maximum absolute error.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DeconvPair {
    #[serde(rename = "A")]
    a: SymBanded,
    #[serde(rename = "B")]
    b: SymBanded,
    shape: PairShape,
    mask: Option<SplitMask>,
    branch: Option<Branch>,
    #[serde(skip)]
    nonneg_requested: bool,
    residual: f64,
}

impl DeconvPair {
    fn certify(
        a: SymBanded,
        b: SymBanded,
        shape: PairShape,
        mask: Option<SplitMask>,
        branch: Option<Branch>,
        nonneg_requested: bool,
        target: &SymBanded,
    ) -> DeconvPair {
        let conv = conv_banded(&a, &b);
        let residual = conv
            .max_abs_diff(target)
            .expect("construction produces the target dimensions");
        DeconvPair {
            a,
            b,
            shape,
            mask,
            branch,
            nonneg_requested,
            residual,
        }
    }

    pub fn a(&self) -> &SymBanded {
        &self.a
    }

    pub fn b(&self) -> &SymBanded {
        &self.b
    }

    pub fn shape(&self) -> PairShape {
        self.shape
    }

    pub fn mask(&self) -> Option<SplitMask> {
        self.mask
    }

    pub fn branch(&self) -> Option<Branch> {
        self.branch
    }

    pub fn nonneg_requested(&self) -> bool {
        self.nonneg_requested
    }

    /// Maximum absolute entry difference between `conv(A, B)` and the
    /// target.
    pub fn residual(&self) -> f64 {
        self.residual
    }
}

fn near(x: f64, target: f64) -> bool {
    (x - target).abs() <= PARAM_TOL
}

/// AR(1) existence: a symmetric pair with both factors of size >= 2 exists
/// iff `|phi_1| = 1`.
pub fn ar1_exists(phi1: f64) -> Result<DeconvDecision> {
    if phi1 == 0.0 {
        return Err(Error::InvalidInput("AR(1) requires phi_1 != 0".into()));
    }
    if near(phi1.abs(), 1.0) {
        Ok(DeconvDecision {
            status: DeconvStatus::Exists,
            case_tag: Some(DeconvCase::Ar1PhiPm1),
            reason: "|phi1| = 1".into(),
            witness: None,
        })
    } else {
        Ok(DeconvDecision {
            status: DeconvStatus::NotExists,
            case_tag: None,
            reason: "|phi1| != 1: the main-diagonal gf has remainder 1 - phi1^2 after \
                     division by the ones polynomial"
                .into(),
            witness: Some(1.0 - phi1 * phi1),
        })
    }
}

/// AR(1) constructor for `|phi_1| = 1`: split `C_{W-1} = p q` by the mask,
/// then `a_0 = (t+1) p`, `a_1 = -phi_1 p`, `b_0 = q`.
pub fn ar1_deconv(phi1: f64, w: usize, mask: SplitMask) -> Result<DeconvPair> {
    if !near(phi1.abs(), 1.0) {
        return Err(Error::NoDeconvolution {
            reason: "|phi1| != 1".into(),
            witness: Some(1.0 - phi1 * phi1),
        });
    }
    if w < 2 {
        return Err(Error::InvalidInput(
            "AR(1) deconvolution requires W >= 2".into(),
        ));
    }
    let fs = factor_ones_poly(w - 1)?;
    let (p, q) = split_from_mask(&fs, mask)?;
    let t1 = Poly::new(vec![1.0, 1.0]);
    let a0 = t1.mul(&p);
    let a1 = p.scale(-phi1);
    let a_dim = p.degree().expect("p is nonzero") + 2;
    let a = SymBanded::from_diag_polys(a_dim, &[a0, a1])?;
    let b_dim = q.degree().expect("q has degree >= 1") + 1;
    let b = SymBanded::from_diag_polys(b_dim, &[q])?;
    let target = build_w_ar1(phi1, w)?;
    Ok(DeconvPair::certify(
        a,
        b,
        PairShape::TriXDiag,
        Some(mask),
        None,
        false,
        &target,
    ))
}

/// AR(2) existence with both factors tridiagonal: iff `phi_2 = -1` with
/// `|phi_1| >= 2`, or `phi_1 = 0` with `phi_2 = 1`.
pub fn ar2_tri_exists(phi1: f64, phi2: f64) -> Result<DeconvDecision> {
    if phi2 == 0.0 {
        return Err(Error::InvalidInput("AR(2) requires phi_2 != 0".into()));
    }
    if near(phi2, -1.0) && phi1.abs() >= 2.0 - PARAM_TOL {
        Ok(DeconvDecision {
            status: DeconvStatus::Exists,
            case_tag: Some(DeconvCase::Ar2TriPhi2Neg1),
            reason: "phi2 = -1 and |phi1| >= 2".into(),
            witness: None,
        })
    } else if near(phi2, 1.0) && near(phi1, 0.0) {
        Ok(DeconvDecision {
            status: DeconvStatus::Exists,
            case_tag: Some(DeconvCase::Ar2TriPhi10Phi21),
            reason: "phi1 = 0 and phi2 = 1".into(),
            witness: None,
        })
    } else {
        Ok(DeconvDecision {
            status: DeconvStatus::NotExists,
            case_tag: None,
            reason: "requires phi2 = -1 with |phi1| >= 2, or phi1 = 0 with phi2 = 1".into(),
            witness: Some((1.0 - phi2 * phi2).abs().max((2.0 - phi1.abs()).max(0.0))),
        })
    }
}

/// AR(2) constructor with both factors tridiagonal.
///
/// For `phi_2 = -1, |phi_1| >= 2` let `z_1, z_2` solve
/// `z^2 + phi_1 z + 1 = 0`; then `a_1 = p`, `b_1 = q` and either
/// `a_0 = (z_2 + z_1 t) p, b_0 = (z_1 + z_2 t) q` (branch 1) or the swap
/// (branch 2). Here `a_{0,0} b_{0,0} = z_1 z_2 = 1` rather than each factor
/// having a unit corner. For `phi_1 = 0, phi_2 = 1`:
/// `a_0 = (1+t) p, a_1 = p, b_0 = (1+t) q, b_1 = -q` (no branch choice).
pub fn ar2_tri_deconv(
    phi1: f64,
    phi2: f64,
    w: usize,
    mask: SplitMask,
    branch: Branch,
) -> Result<DeconvPair> {
    let decision = ar2_tri_exists(phi1, phi2)?;
    if !decision.exists() {
        return Err(Error::NoDeconvolution {
            reason: decision.reason,
            witness: decision.witness,
        });
    }
    if w < 3 {
        return Err(Error::InvalidInput("AR(2) matrices require W >= 3".into()));
    }
    let fs = factor_ones_poly(w - 2)?;
    let (p, q) = split_from_mask(&fs, mask)?;
    let target = build_w_ar2(phi1, phi2, w)?;
    let (a_polys, b_polys, branch_used) = match decision.case_tag {
        Some(DeconvCase::Ar2TriPhi2Neg1) => {
            let disc = (phi1 * phi1 - 4.0).max(0.0);
            let root = disc.sqrt();
            let z1 = (-phi1 + root) / 2.0;
            let z2 = (-phi1 - root) / 2.0;
            let (fa, fb) = match branch {
                Branch::One => (Poly::new(vec![z2, z1]), Poly::new(vec![z1, z2])),
                Branch::Two => (Poly::new(vec![z1, z2]), Poly::new(vec![z2, z1])),
            };
            (
                vec![fa.mul(&p), p.clone()],
                vec![fb.mul(&q), q.clone()],
                Some(branch),
            )
        }
        Some(DeconvCase::Ar2TriPhi10Phi21) => {
            let t1 = Poly::new(vec![1.0, 1.0]);
            (
                vec![t1.mul(&p), p.clone()],
                vec![t1.mul(&q), q.scale(-1.0)],
                None,
            )
        }
        _ => unreachable!("existence established above"),
    };
    let a_dim = p.degree().expect("p nonzero") + 2;
    let b_dim = q.degree().expect("q has degree >= 1") + 2;
    let a = SymBanded::from_diag_polys(a_dim, &a_polys)?;
    let b = SymBanded::from_diag_polys(b_dim, &b_polys)?;
    Ok(DeconvPair::certify(
        a,
        b,
        PairShape::TriXTri,
        Some(mask),
        branch_used,
        false,
        &target,
    ))
}

/// AR(2) existence with `A` five-diagonal and `B` diagonal of size > 2:
/// iff `phi_2 = -1` (any `phi_1`) or `phi_1 = 0, phi_2 = 1`.
pub fn ar2_penta_exists(phi1: f64, phi2: f64) -> Result<DeconvDecision> {
    if phi2 == 0.0 {
        return Err(Error::InvalidInput("AR(2) requires phi_2 != 0".into()));
    }
    if near(phi2, -1.0) {
        Ok(DeconvDecision {
            status: DeconvStatus::Exists,
            case_tag: Some(DeconvCase::Ar2PentaPhi2Neg1),
            reason: "phi2 = -1".into(),
            witness: None,
        })
    } else if near(phi2, 1.0) && near(phi1, 0.0) {
        Ok(DeconvDecision {
            status: DeconvStatus::Exists,
            case_tag: Some(DeconvCase::Ar2PentaPhi10Phi21),
            reason: "phi1 = 0 and phi2 = 1".into(),
            witness: None,
        })
    } else {
        // at a common root of b_0 and the ones polynomial the off-diagonal
        // gf evaluates to -phi1 (1 + phi2) and the main one to a multiple
        // of 1 - phi2^2; one of the two is the nonzero obstruction
        Ok(DeconvDecision {
            status: DeconvStatus::NotExists,
            case_tag: None,
            reason: "requires phi2 = -1, or phi1 = 0 with phi2 = 1".into(),
            witness: Some(if (phi1 * (1.0 + phi2)).abs() > PARAM_TOL {
                -phi1 * (1.0 + phi2)
            } else {
                1.0 - phi2 * phi2
            }),
        })
    }
}

/// AR(2) constructor with `A` five-diagonal, `B` diagonal of size > 2.
///
/// Case `phi_2 = -1`: `b_0 = q`, `a_2 = p`, `a_1 = -phi_1 (t+1) p`,
/// `a_0 = (t^2 + phi_1^2 t + 1) p`. Case `phi_1 = 0, phi_2 = 1`:
/// `b_0 = q`, `a_2 = -p`, `a_1 = 0`, `a_0 = (t^2 + 1) p`. The mask must
/// leave `q` with degree at least 2.
pub fn ar2_penta_deconv(phi1: f64, phi2: f64, w: usize, mask: SplitMask) -> Result<DeconvPair> {
    let decision = ar2_penta_exists(phi1, phi2)?;
    if !decision.exists() {
        return Err(Error::NoDeconvolution {
            reason: decision.reason,
            witness: decision.witness,
        });
    }
    if w < 4 {
        return Err(Error::InvalidInput(
            "five-diagonal deconvolution requires W >= 4".into(),
        ));
    }
    let fs = factor_ones_poly(w - 2)?;
    let (p, q) = split_from_mask(&fs, mask)?;
    if q.degree().unwrap_or(0) < 2 {
        return Err(Error::InvalidInput(
            "B must have size > 2: the mask must leave q with degree >= 2".into(),
        ));
    }
    let target = build_w_ar2(phi1, phi2, w)?;
    let t1 = Poly::new(vec![1.0, 1.0]);
    let a_polys = match decision.case_tag {
        Some(DeconvCase::Ar2PentaPhi2Neg1) => vec![
            Poly::new(vec![1.0, phi1 * phi1, 1.0]).mul(&p),
            t1.mul(&p).scale(-phi1),
            p.clone(),
        ],
        Some(DeconvCase::Ar2PentaPhi10Phi21) => vec![
            Poly::new(vec![1.0, 0.0, 1.0]).mul(&p),
            Poly::zero(),
            p.scale(-1.0),
        ],
        _ => unreachable!("existence established above"),
    };
    let a_dim = p.degree().expect("p nonzero") + 3;
    let a = SymBanded::from_diag_polys(a_dim, &a_polys)?;
    let b_dim = q.degree().expect("q nonzero") + 1;
    let b = SymBanded::from_diag_polys(b_dim, &[q])?;
    Ok(DeconvPair::certify(
        a,
        b,
        PairShape::PentaXDiag,
        Some(mask),
        None,
        false,
        &target,
    ))
}

/// AR(2) with `B` diagonal of size exactly 2 and odd `W`: fixes
/// `b_0 = 1 + t` and divides every diagonal gf by it. Works iff
/// `phi_2 = -1` or `phi_1 = 0` (then `a_1 = 0`); any stationary `phi_2` is
/// allowed in the latter family.
pub fn ar2_b1_deconv(phi1: f64, phi2: f64, w: usize) -> Result<DeconvPair> {
    if phi2 == 0.0 {
        return Err(Error::InvalidInput("AR(2) requires phi_2 != 0".into()));
    }
    if w < 3 {
        return Err(Error::InvalidInput("AR(2) matrices require W >= 3".into()));
    }
    if w % 2 == 0 {
        return Err(Error::NoDeconvolution {
            reason: format!(
                "W = {w} is even: (1 + t) does not divide the ones polynomial of degree {}",
                w - 2
            ),
            witness: None,
        });
    }
    // the off-diagonal gf evaluated at -1 is the divisibility obstruction
    let w1_at_minus1 = -phi1 * (1.0 + phi2);
    if w1_at_minus1.abs() > PARAM_TOL {
        return Err(Error::NoDeconvolution {
            reason: "requires phi2 = -1 or phi1 = 0".into(),
            witness: Some(w1_at_minus1),
        });
    }
    let ar = ArParams::new(vec![phi1, phi2])?;
    let den = Poly::new(vec![1.0, 1.0]);
    let mut a_polys = Vec::with_capacity(3);
    for k in 0..=2 {
        let wk = crate::armodels::diag_gf_closed(&ar, w, k)?;
        let (quot, rem) = wk.divrem(&den)?;
        let worst = rem.coeffs().iter().fold(0.0f64, |m, c| m.max(c.abs()));
        if worst > RESIDUAL_TOL {
            return Err(Error::NoDeconvolution {
                reason: format!("diagonal {k} gf is not divisible by (1 + t)"),
                witness: Some(worst),
            });
        }
        a_polys.push(quot);
    }
    let target = build_w_ar2(phi1, phi2, w)?;
    let a = SymBanded::from_diag_polys(w, &a_polys)?;
    let b = SymBanded::from_diag_polys(2, &[Poly::new(vec![1.0, 1.0])])?;
    Ok(DeconvPair::certify(
        a,
        b,
        PairShape::PentaXDiag,
        None,
        None,
        false,
        &target,
    ))
}

/// Value of the quadratic form `z' A z` for the tridiagonal matrix with
/// `a_0 = (t+1) p` and `a_1 = beta p`, computed through the telescoping
/// identity `sum_i c_i (z_i + beta z_{i+1})^2`.
pub fn tridiag_quadform(p: &Poly, beta: f64, z: &[f64]) -> Result<f64> {
    let deg = p
        .degree()
        .ok_or_else(|| Error::InvalidInput("p must be nonzero".into()))?;
    if z.len() != deg + 2 {
        return Err(Error::InvalidInput(format!(
            "z must have length deg p + 2 = {}, got {}",
            deg + 2,
            z.len()
        )));
    }
    Ok(p.coeffs()
        .iter()
        .enumerate()
        .map(|(i, &c)| {
            let s = z[i] + beta * z[i + 1];
            c * s * s
        })
        .sum())
}

/// True iff the smallest eigenvalue of the dense form is at least `-tol`.
pub fn check_nonneg_definite(m: &SymBanded, tol: f64) -> bool {
    linalg::min_symmetric_eigenvalue(&m.to_dense()) >= -tol
}

/// Model selector for the non-negative-definite constructions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NonnegModel {
    Ar1 { phi1: f64 },
    Ar2Tri { phi1: f64, phi2: f64 },
    Ar2Penta { phi1: f64, phi2: f64 },
}

/// Builds a deconvolution whose factors are both non-negative definite.
///
/// The mask must describe a non-negative split of the appropriate ones
/// polynomial — one of the splits reported by
/// [`crate::poly::enumerate_nonneg_splits`], in either orientation — and
/// the parameters must lie in the range where a non-negative scheme is
/// known:
/// `|phi_1| = 1` (AR(1)); `|phi_1| = 2, phi_2 = -1` or
/// `phi_1 = 0, phi_2 = 1` (tridiagonal factors); `phi_2 = -1` with
/// `|phi_1| <= 1`, or `phi_1 = 0, phi_2 = 1` (five-diagonal times
/// diagonal).
pub fn nonneg_deconv(model: NonnegModel, w: usize, mask: SplitMask) -> Result<DeconvPair> {
    let m = match model {
        NonnegModel::Ar1 { .. } => {
            if w < 2 {
                return Err(Error::InvalidInput(
                    "AR(1) deconvolution requires W >= 2".into(),
                ));
            }
            w - 1
        }
        NonnegModel::Ar2Tri { .. } => {
            if w < 3 {
                return Err(Error::InvalidInput("AR(2) matrices require W >= 3".into()));
            }
            w - 2
        }
        NonnegModel::Ar2Penta { .. } => {
            if w < 4 {
                return Err(Error::InvalidInput(
                    "five-diagonal deconvolution requires W >= 4".into(),
                ));
            }
            w - 2
        }
    };
    let fs = factor_ones_poly(m)?;
    let (p, q) = split_from_mask(&fs, mask)?;
    let tol = crate::poly::DEFAULT_TOL;
    if p.min_coeff() < -tol || q.min_coeff() < -tol {
        return Err(Error::InvalidInput(format!(
            "mask {} is not in the non-negative split list for M = {m}: a factor side \
             has a negative coefficient",
            mask.bit_string()
        )));
    }
    match model {
        NonnegModel::Ar1 { phi1 } => {
            if !near(phi1.abs(), 1.0) {
                return Err(Error::NoDeconvolution {
                    reason: "no non-negative construction known: AR(1) requires |phi1| = 1"
                        .into(),
                    witness: Some(1.0 - phi1 * phi1),
                });
            }
            let mut pair = ar1_deconv(phi1, w, mask)?;
            pair.nonneg_requested = true;
            Ok(pair)
        }
        NonnegModel::Ar2Tri { phi1, phi2 } => {
            let t1 = Poly::new(vec![1.0, 1.0]);
            let (a_polys, b_polys) = if near(phi2, -1.0) && near(phi1.abs(), 2.0) {
                // beta = -phi1/2 = -sign(phi1): flips both factor signs
                // relative to the plain branch construction so each factor
                // is non-negative definite on its own
                let beta = -phi1 / 2.0;
                (
                    vec![t1.mul(&p), p.scale(beta)],
                    vec![t1.mul(&q), q.scale(beta)],
                )
            } else if near(phi2, 1.0) && near(phi1, 0.0) {
                (
                    vec![t1.mul(&p), p.clone()],
                    vec![t1.mul(&q), q.scale(-1.0)],
                )
            } else {
                return Err(Error::NoDeconvolution {
                    reason: "no non-negative construction known: tridiagonal factors require \
                             |phi1| = 2 with phi2 = -1, or phi1 = 0 with phi2 = 1"
                        .into(),
                    witness: None,
                });
            };
            let target = build_w_ar2(phi1, phi2, w)?;
            let a = SymBanded::from_diag_polys(p.degree().expect("p nonzero") + 2, &a_polys)?;
            let b = SymBanded::from_diag_polys(q.degree().expect("q nonzero") + 2, &b_polys)?;
            let mut pair = DeconvPair::certify(
                a,
                b,
                PairShape::TriXTri,
                Some(mask),
                None,
                true,
                &target,
            );
            pair.nonneg_requested = true;
            Ok(pair)
        }
        NonnegModel::Ar2Penta { phi1, phi2 } => {
            let in_range = (near(phi2, -1.0) && phi1.abs() <= 1.0 + PARAM_TOL)
                || (near(phi2, 1.0) && near(phi1, 0.0));
            if !in_range {
                return Err(Error::NoDeconvolution {
                    reason: "no non-negative construction known: five-diagonal factors require \
                             phi2 = -1 with |phi1| <= 1, or phi1 = 0 with phi2 = 1"
                        .into(),
                    witness: None,
                });
            }
            let mut pair = ar2_penta_deconv(phi1, phi2, w, mask)?;
            pair.nonneg_requested = true;
            Ok(pair)
        }
    }
}

/// Closed-form remainder of dividing the diagonal-`k` gf of the AR(p)
/// inverse by the ones polynomial of degree `W - p`:
/// `r_k = sum_{i=0}^{p-k} alpha_i alpha_{i+k} (C_{p-k-i-1} - C_{i-1})`,
/// independent of `W`. `r_p` is identically zero.
pub fn arp_remainder_closed(ar: &ArParams, k: usize) -> Result<Poly> {
    let p = ar.order();
    if k > p {
        return Err(Error::InvalidInput(format!(
            "remainder index {k} out of range for order {p}"
        )));
    }
    let alpha = ar.alpha();
    let mut acc = Poly::zero();
    for i in 0..=(p - k) {
        let coeff = alpha[i] * alpha[i + k];
        let diff = ones_poly(p as i64 - k as i64 - i as i64 - 1).sub(&ones_poly(i as i64 - 1));
        acc = acc.add(&diff.scale(coeff));
    }
    Ok(acc)
}

/// Necessity test for `W = A * B` with diagonal `B` larger than p: all
/// remainders `r_0 .. r_{p-1}` must vanish. The `t^{p-1}` coefficient of
/// `r_0` is `1 - phi_p^2`, so any model with `|phi_p| != 1` (in particular
/// every stationary one) is refused outright. When every remainder
/// vanishes the outcome is reported as "necessary conditions hold" — never
/// as existence, which this test cannot certify.
pub fn arp_diagb_decision(ar: &ArParams) -> DeconvDecision {
    let p = ar.order();
    let phi_p = ar.phi()[p - 1];
    let leading = 1.0 - phi_p * phi_p;
    if leading.abs() > PARAM_TOL {
        return DeconvDecision {
            status: DeconvStatus::NotExists,
            case_tag: Some(DeconvCase::ArpDiagBNone),
            reason: format!(
                "the t^{} coefficient of the order-0 remainder equals 1 - phi_{p}^2 and must vanish",
                p - 1
            ),
            witness: Some(leading),
        };
    }
    for k in 0..p {
        let r = arp_remainder_closed(ar, k).expect("k <= p");
        if let Some(&bad) = r.coeffs().iter().find(|c| c.abs() > PARAM_TOL) {
            return DeconvDecision {
                status: DeconvStatus::NotExists,
                case_tag: Some(DeconvCase::ArpDiagBNone),
                reason: format!("the order-{k} remainder does not vanish"),
                witness: Some(bad),
            };
        }
    }
    DeconvDecision {
        status: DeconvStatus::NecessaryConditionsHold,
        case_tag: Some(DeconvCase::ArpDiagBNone),
        reason: "all division remainders vanish; existence is not certified for p >= 3".into(),
        witness: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::armodels::{build_w_arp, diag_gf_closed};
    use crate::banded::conv_dense;
    use crate::poly::{count_real_splits, enumerate_nonneg_splits, ordered_factorizations};
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};
    use std::collections::HashSet;

    fn mask_of(bits: u64, width: usize) -> SplitMask {
        SplitMask::from_bits(bits, width).unwrap()
    }

    #[test]
    fn ar1_existence() {
        assert!(ar1_exists(1.0).unwrap().exists());
        assert!(ar1_exists(-1.0).unwrap().exists());
        let d = ar1_exists(0.99).unwrap();
        assert!(!d.exists());
        assert!(d.reason.contains("|phi1| != 1"));
        assert!((d.witness.unwrap() - (1.0 - 0.99f64 * 0.99)).abs() < 1e-15);
        assert!(ar1_exists(0.0).is_err());
    }

    #[test]
    fn ar1_constructions() {
        let pair = ar1_deconv(1.0, 2, mask_of(0, 1)).unwrap();
        assert_eq!(pair.a().diagonal(0), &[1.0, 1.0]);
        assert_eq!(pair.a().diagonal(1), &[-1.0]);
        assert_eq!(pair.b().diagonal(0), &[1.0, 1.0]);
        assert_eq!(pair.residual(), 0.0);
        let conv = conv_dense(&pair.a().to_dense(), &pair.b().to_dense()).unwrap();
        assert_eq!(conv, build_w_ar1(1.0, 2).unwrap().to_dense());

        let pair = ar1_deconv(-1.0, 4, mask_of(1, 2)).unwrap();
        assert_eq!(pair.a().diagonal(0), &[1.0, 2.0, 1.0]);
        assert_eq!(pair.a().diagonal(1), &[1.0, 1.0]);
        assert_eq!(pair.b().diagonal(0), &[1.0, 0.0, 1.0]);
        assert_eq!(pair.residual(), 0.0);

        assert!(ar1_deconv(1.0, 4, mask_of(3, 2)).is_err());
        assert!(ar1_deconv(0.5, 4, mask_of(0, 2)).is_err());
    }

    #[test]
    fn ar1_distinct_pairs_census() {
        for w in 2..=14usize {
            for phi1 in [1.0, -1.0] {
                let fs = factor_ones_poly(w - 1).unwrap();
                let nf = fs.factor_count();
                let mut seen = HashSet::new();
                for bits in 0..(1u64 << nf) {
                    let mask = mask_of(bits, nf);
                    if !fs.is_valid_mask(mask) {
                        continue;
                    }
                    let pair = ar1_deconv(phi1, w, mask).unwrap();
                    let key: Vec<u64> = pair
                        .a()
                        .diagonal(0)
                        .iter()
                        .chain(pair.a().diagonal(1))
                        .chain(pair.b().diagonal(0))
                        .map(|v| v.to_bits())
                        .collect();
                    seen.insert(key);
                    let integer_split = pair
                        .a()
                        .diagonal(0)
                        .iter()
                        .chain(pair.b().diagonal(0))
                        .all(|c| c.fract() == 0.0);
                    if integer_split {
                        assert_eq!(pair.residual(), 0.0, "W = {w}, mask {}", mask.bit_string());
                    } else {
                        assert!(pair.residual() <= RESIDUAL_TOL);
                    }
                }
                assert_eq!(seen.len() as u64, count_real_splits(w).unwrap(), "W = {w}");
            }
        }
    }

    #[test]
    fn ar2_tri_existence() {
        assert_eq!(
            ar2_tri_exists(2.5, -1.0).unwrap().case_tag,
            Some(DeconvCase::Ar2TriPhi2Neg1)
        );
        assert_eq!(
            ar2_tri_exists(0.0, 1.0).unwrap().case_tag,
            Some(DeconvCase::Ar2TriPhi10Phi21)
        );
        assert!(!ar2_tri_exists(0.5, 0.3).unwrap().exists());
        assert!(!ar2_tri_exists(1.9, -1.0).unwrap().exists());
        assert!(ar2_tri_exists(1.0, 0.0).is_err());
    }

    #[test]
    fn ar2_tri_constructions() {
        // phi = (2, -1): double root z = -1
        let pair = ar2_tri_deconv(2.0, -1.0, 4, mask_of(0, 1), Branch::One).unwrap();
        assert_eq!(pair.a().diagonal(0), &[-1.0, -1.0]);
        assert_eq!(pair.a().diagonal(1), &[1.0]);
        assert_eq!(pair.b().diagonal(0), &[-1.0, -2.0, -2.0, -1.0]);
        assert_eq!(pair.b().diagonal(1), &[1.0, 1.0, 1.0]);
        assert_eq!(pair.residual(), 0.0);

        // phi = (0, 1)
        let pair = ar2_tri_deconv(0.0, 1.0, 4, mask_of(0, 1), Branch::One).unwrap();
        assert_eq!(pair.a().diagonal(0), &[1.0, 1.0]);
        assert_eq!(pair.a().diagonal(1), &[1.0]);
        assert_eq!(pair.b().diagonal(0), &[1.0, 2.0, 2.0, 1.0]);
        assert_eq!(pair.b().diagonal(1), &[-1.0, -1.0, -1.0]);
        assert_eq!(pair.residual(), 0.0);

        // phi = (3, -1): irrational roots, both branches, every mask
        for branch in [Branch::One, Branch::Two] {
            let fs = factor_ones_poly(3).unwrap();
            for bits in 0..3u64 {
                let mask = mask_of(bits, fs.factor_count());
                let pair = ar2_tri_deconv(3.0, -1.0, 5, mask, branch).unwrap();
                assert!(pair.residual() <= RESIDUAL_TOL);
            }
        }

        assert!(ar2_tri_deconv(0.5, 0.5, 4, mask_of(0, 1), Branch::One).is_err());
    }

    #[test]
    fn ar2_tri_branches_differ_but_both_work() {
        let m = mask_of(1, 2);
        let p1 = ar2_tri_deconv(3.0, -1.0, 6, m, Branch::One).unwrap();
        let p2 = ar2_tri_deconv(3.0, -1.0, 6, m, Branch::Two).unwrap();
        assert!(p1.a() != p2.a());
        assert!(p1.residual() <= RESIDUAL_TOL);
        assert!(p2.residual() <= RESIDUAL_TOL);
    }

    #[test]
    fn ar2_penta_existence() {
        assert_eq!(
            ar2_penta_exists(0.7, -1.0).unwrap().case_tag,
            Some(DeconvCase::Ar2PentaPhi2Neg1)
        );
        assert_eq!(
            ar2_penta_exists(0.0, 1.0).unwrap().case_tag,
            Some(DeconvCase::Ar2PentaPhi10Phi21)
        );
        assert!(!ar2_penta_exists(1.0, 1.0).unwrap().exists());
        assert!(ar2_penta_exists(1.0, 0.0).is_err());
    }

    #[test]
    fn ar2_penta_constructions() {
        let pair = ar2_penta_deconv(2.0, -1.0, 4, mask_of(0, 1)).unwrap();
        assert_eq!(pair.a().diagonal(0), &[1.0, 4.0, 1.0]);
        assert_eq!(pair.a().diagonal(1), &[-2.0, -2.0]);
        assert_eq!(pair.a().diagonal(2), &[1.0]);
        assert_eq!(pair.b().diagonal(0), &[1.0, 1.0, 1.0]);
        assert_eq!(pair.residual(), 0.0);

        let pair = ar2_penta_deconv(0.0, 1.0, 4, mask_of(0, 1)).unwrap();
        assert_eq!(pair.a().diagonal(0), &[1.0, 0.0, 1.0]);
        assert_eq!(pair.a().diagonal(1), &[0.0, 0.0]);
        assert_eq!(pair.a().diagonal(2), &[-1.0]);
        assert_eq!(pair.residual(), 0.0);

        // p = 1 + t leaves q = 1 + t^2 of degree 2
        let pair = ar2_penta_deconv(0.5, -1.0, 5, mask_of(1, 2)).unwrap();
        assert!(pair.residual() <= RESIDUAL_TOL);
        assert_eq!(pair.b().diagonal(0), &[1.0, 0.0, 1.0]);

        // mask leaving deg q < 2 is refused
        let err = ar2_penta_deconv(0.5, -1.0, 5, mask_of(2, 2));
        assert!(matches!(err, Err(Error::InvalidInput(_))));
    }

    #[test]
    fn ar2_b1_cases() {
        // phi1 = 0 with arbitrary stationary phi2: the one stationary
        // family where a deconvolution exists at all
        let pair = ar2_b1_deconv(0.0, 0.5, 5).unwrap();
        assert!(pair.residual() <= 1e-12);
        assert!(pair.a().diagonal(1).iter().all(|&v| v == 0.0));
        assert_eq!(pair.b().dim(), 2);

        let pair = ar2_b1_deconv(1.0, -1.0, 5).unwrap();
        assert!(pair.residual() <= 1e-12);

        let err = ar2_b1_deconv(0.5, 0.5, 5);
        match err {
            Err(Error::NoDeconvolution { witness, .. }) => {
                let expected = -0.5f64 * 1.5;
                assert!((witness.unwrap() - expected).abs() < 1e-15);
            }
            other => panic!("expected a refusal with witness, got {other:?}"),
        }

        assert!(matches!(
            ar2_b1_deconv(0.0, 0.5, 6),
            Err(Error::NoDeconvolution { .. })
        ));
    }

    #[test]
    fn quadform_examples() {
        let p = Poly::one();
        assert_eq!(tridiag_quadform(&p, -1.0, &[1.0, 1.0]).unwrap(), 0.0);
        assert_eq!(tridiag_quadform(&p, -1.0, &[1.0, 0.0]).unwrap(), 1.0);

        let p = Poly::new(vec![1.0, 1.0]);
        let mut rng = StdRng::seed_from_u64(5);
        for _ in 0..20 {
            let z: Vec<f64> = (0..3).map(|_| rng.gen_range(-2.0..2.0)).collect();
            let fast = tridiag_quadform(&p, 1.0, &z).unwrap();
            let a = SymBanded::from_diag_polys(
                3,
                &[Poly::new(vec![1.0, 1.0]).mul(&p), p.scale(1.0)],
            )
            .unwrap()
            .to_dense();
            let mut slow = 0.0;
            for i in 0..3 {
                for j in 0..3 {
                    slow += z[i] * a.get(i, j) * z[j];
                }
            }
            assert!((fast - slow).abs() <= 1e-12);
        }

        assert!(tridiag_quadform(&p, 1.0, &[1.0, 2.0]).is_err());
        assert!(tridiag_quadform(&Poly::zero(), 1.0, &[1.0]).is_err());
    }

    #[test]
    fn quadform_matches_dense_and_characterizes_definiteness() {
        let mut rng = StdRng::seed_from_u64(9);
        for _ in 0..100 {
            let deg = rng.gen_range(0..=8);
            let coeffs: Vec<f64> = (0..=deg)
                .map(|i| {
                    if i == deg {
                        loop {
                            let v: f64 = rng.gen_range(-1.0..1.0);
                            if v.abs() > 0.05 {
                                break v;
                            }
                        }
                    } else {
                        loop {
                            let v: f64 = rng.gen_range(-1.0..1.0);
                            if v.abs() > 1e-3 {
                                break v;
                            }
                        }
                    }
                })
                .collect();
            let p = Poly::new(coeffs);
            let beta = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            let n = p.degree().unwrap() + 2;
            let z: Vec<f64> = (0..n).map(|_| rng.gen_range(-2.0..2.0)).collect();
            let fast = tridiag_quadform(&p, beta, &z).unwrap();
            let a = SymBanded::from_diag_polys(
                n,
                &[Poly::new(vec![1.0, 1.0]).mul(&p), p.scale(beta)],
            )
            .unwrap();
            let dense = a.to_dense();
            let mut slow = 0.0;
            for i in 0..n {
                for j in 0..n {
                    slow += z[i] * dense.get(i, j) * z[j];
                }
            }
            assert!((fast - slow).abs() <= 1e-10);

            // non-negative definite iff every coefficient of p is >= 0
            let all_nonneg = p.coeffs().iter().all(|&c| c >= 0.0);
            assert_eq!(
                check_nonneg_definite(&a, 1e-9),
                all_nonneg,
                "p = {:?}, beta = {beta}",
                p.coeffs()
            );
        }
    }

    #[test]
    fn nonneg_definite_examples() {
        let eye = SymBanded::from_diag_polys(3, &[Poly::new(vec![1.0, 1.0, 1.0])]).unwrap();
        assert!(check_nonneg_definite(&eye, 1e-9));
        let kernel = SymBanded::new(2, 1, vec![vec![1.0, 1.0], vec![-1.0]]).unwrap();
        assert!(check_nonneg_definite(&kernel, 1e-9));
        let indef = SymBanded::new(2, 1, vec![vec![1.0, 1.0], vec![2.0]]).unwrap();
        assert!(!check_nonneg_definite(&indef, 1e-9));
    }

    #[test]
    fn nonneg_constructions() {
        // AR(1), W = 4 with the split p = 1 + t^2, q = 1 + t
        let pair = nonneg_deconv(NonnegModel::Ar1 { phi1: 1.0 }, 4, mask_of(2, 2)).unwrap();
        assert!(pair.nonneg_requested());
        assert_eq!(pair.residual(), 0.0);
        assert!(check_nonneg_definite(pair.a(), 1e-9));
        assert!(check_nonneg_definite(pair.b(), 1e-9));

        // tridiagonal pair at phi = (-2, -1): beta = +1
        let pair = nonneg_deconv(
            NonnegModel::Ar2Tri {
                phi1: -2.0,
                phi2: -1.0,
            },
            4,
            mask_of(0, 1),
        )
        .unwrap();
        assert_eq!(pair.residual(), 0.0);
        assert!(check_nonneg_definite(pair.a(), 1e-9));
        assert!(check_nonneg_definite(pair.b(), 1e-9));
        assert_eq!(pair.a().diagonal(1), &[1.0]);

        // five-diagonal at phi = (0.5, -1), trivial split
        let pair = nonneg_deconv(
            NonnegModel::Ar2Penta {
                phi1: 0.5,
                phi2: -1.0,
            },
            5,
            mask_of(0, 2),
        )
        .unwrap();
        assert!(pair.residual() <= RESIDUAL_TOL);
        assert!(check_nonneg_definite(pair.a(), 1e-9));
        assert!(check_nonneg_definite(pair.b(), 1e-9));

        // |phi1| > 2 tridiagonal: plain constructor exists, non-negative
        // variant refuses
        assert!(ar2_tri_deconv(3.0, -1.0, 4, mask_of(0, 1), Branch::One).is_ok());
        assert!(matches!(
            nonneg_deconv(
                NonnegModel::Ar2Tri {
                    phi1: 3.0,
                    phi2: -1.0
                },
                4,
                mask_of(0, 1)
            ),
            Err(Error::NoDeconvolution { .. })
        ));

        // either orientation of a non-negative split is accepted
        let pair = nonneg_deconv(NonnegModel::Ar1 { phi1: 1.0 }, 4, mask_of(1, 2)).unwrap();
        assert!(check_nonneg_definite(pair.a(), 1e-9));
        assert!(check_nonneg_definite(pair.b(), 1e-9));

        // a split with a negative coefficient is rejected: for W = 6 the
        // lone factor t^2 - t + 1 cannot sit on either side by itself
        assert!(matches!(
            nonneg_deconv(NonnegModel::Ar1 { phi1: 1.0 }, 6, mask_of(2, 3)),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn remainder_closed_forms() {
        let ar = ArParams::new(vec![0.6]).unwrap();
        let r0 = arp_remainder_closed(&ar, 0).unwrap();
        assert_eq!(r0.coeffs(), &[1.0 - 0.36]);
        assert!(arp_remainder_closed(&ar, 1).unwrap().is_zero());

        let ar = ArParams::new(vec![0.3, -0.4]).unwrap();
        let r1 = arp_remainder_closed(&ar, 1).unwrap();
        assert!((r1.coeff(0) - (-0.3 * (1.0 - 0.4))).abs() < 1e-15);
        let r0 = arp_remainder_closed(&ar, 0).unwrap();
        let c = 1.0 - 0.16;
        assert!((r0.coeff(0) - c).abs() < 1e-15);
        assert!((r0.coeff(1) - c).abs() < 1e-15);
        assert!(arp_remainder_closed(&ar, 2).unwrap().is_zero());
        assert!(arp_remainder_closed(&ar, 3).is_err());
    }

    #[test]
    fn remainders_match_polynomial_division() {
        let mut rng = StdRng::seed_from_u64(21);
        for _ in 0..200 {
            let p = rng.gen_range(1..=6);
            let phi: Vec<f64> = (0..p)
                .map(|i| {
                    if i + 1 == p {
                        loop {
                            let v: f64 = rng.gen_range(-1.5..1.5);
                            if v.abs() > 1e-3 {
                                break v;
                            }
                        }
                    } else {
                        rng.gen_range(-1.5..1.5)
                    }
                })
                .collect();
            let ar = ArParams::new(phi).unwrap();
            let w = rng.gen_range(2 * p..=20);
            let den = ones_poly(w as i64 - p as i64);
            for k in 0..=p {
                let closed = arp_remainder_closed(&ar, k).unwrap();
                let wk = diag_gf_closed(&ar, w, k).unwrap();
                let (_, rem) = wk.divrem(&den).unwrap();
                let n = closed.coeffs().len().max(rem.coeffs().len());
                for c in 0..n {
                    assert!(
                        (closed.coeff(c) - rem.coeff(c)).abs() <= 1e-10,
                        "p = {p}, W = {w}, k = {k}"
                    );
                }
                if let Some(d) = closed.degree() {
                    assert!(k < p && d <= p - 1 - k);
                }
            }
        }
    }

    #[test]
    fn remainder_specializations_match_general_sum() {
        let mut rng = StdRng::seed_from_u64(25);
        for _ in 0..100 {
            let p = rng.gen_range(2..=6);
            let phi: Vec<f64> = (0..p)
                .map(|i| {
                    if i + 1 == p {
                        loop {
                            let v: f64 = rng.gen_range(-1.5..1.5);
                            if v.abs() > 1e-3 {
                                break v;
                            }
                        }
                    } else {
                        rng.gen_range(-1.5..1.5)
                    }
                })
                .collect();
            let ar = ArParams::new(phi).unwrap();
            let alpha = ar.alpha();

            // r_{p-1} = alpha_0 alpha_{p-1} - alpha_1 alpha_p
            let r = arp_remainder_closed(&ar, p - 1).unwrap();
            let expected = alpha[0] * alpha[p - 1] - alpha[1] * alpha[p];
            assert!((r.coeff(0) - expected).abs() <= 1e-12);
            assert!(r.degree().unwrap_or(0) == 0);

            // r_0 coefficients: sum_{i <= min(m, p-m-1)} (alpha_i^2 - alpha_{p-i}^2)
            let r0 = arp_remainder_closed(&ar, 0).unwrap();
            for m in 0..p {
                let mut expected = 0.0;
                for i in 0..=m.min(p - m - 1) {
                    expected += alpha[i] * alpha[i] - alpha[p - i] * alpha[p - i];
                }
                assert!((r0.coeff(m) - expected).abs() <= 1e-12, "p = {p}, m = {m}");
            }
        }
    }

    #[test]
    fn arp_decision_outcomes() {
        let ar = ArParams::new(vec![0.2, 0.1, 0.3]).unwrap();
        let d = arp_diagb_decision(&ar);
        assert_eq!(d.status, DeconvStatus::NotExists);
        assert!((d.witness.unwrap() - 0.91).abs() < 1e-12);

        let ar = ArParams::new(vec![1.0]).unwrap();
        let d = arp_diagb_decision(&ar);
        assert_eq!(d.status, DeconvStatus::NecessaryConditionsHold);

        let ar = ArParams::new(vec![0.0, 1.0]).unwrap();
        let d = arp_diagb_decision(&ar);
        assert_eq!(d.status, DeconvStatus::NecessaryConditionsHold);

        // |phi_p| = 1 but an intermediate remainder survives
        let ar = ArParams::new(vec![0.5, 0.5, 1.0]).unwrap();
        let d = arp_diagb_decision(&ar);
        assert_eq!(d.status, DeconvStatus::NotExists);
        assert!(d.witness.is_some());
    }

    #[test]
    fn soundness_against_arp_builder() {
        // a certified pair convolves back to the generic builder as well
        let pair = ar2_penta_deconv(0.5, -1.0, 6, mask_of(0, 2)).unwrap();
        let ar = ArParams::new(vec![0.5, -1.0]).unwrap();
        let target = build_w_arp(&ar, 6).unwrap();
        let conv = conv_banded(pair.a(), pair.b());
        assert!(conv.max_abs_diff(&target).unwrap() <= RESIDUAL_TOL);
    }

    #[test]
    fn stationary_draws_never_deconvolve() {
        let mut rng = StdRng::seed_from_u64(33);
        for _ in 0..1000 {
            let phi1 = loop {
                let v: f64 = rng.gen_range(-1.0..1.0);
                if v != 0.0 && (v.abs() - 1.0).abs() > 1e-9 {
                    break v;
                }
            };
            assert!(!ar1_exists(phi1).unwrap().exists());

            let phi2 = loop {
                let v: f64 = rng.gen_range(-1.0..1.0);
                if v.abs() > 1e-6 {
                    break v;
                }
            };
            let bound = 1.0 - phi2;
            let phi1b = loop {
                let v: f64 = rng.gen_range(-bound..bound);
                if v.abs() > 1e-9 {
                    break v;
                }
            };
            assert!(!ar2_tri_exists(phi1b, phi2).unwrap().exists());
            assert!(!ar2_penta_exists(phi1b, phi2).unwrap().exists());
        }
    }

    #[test]
    fn nonneg_split_count_is_ordered_factorizations() {
        for w in [4usize, 6, 8, 9, 12] {
            let masks = enumerate_nonneg_splits(w - 1, 1e-9).unwrap();
            assert_eq!(
                masks.len() as u64,
                ordered_factorizations(w as u64).unwrap()
            );
        }
    }
}
