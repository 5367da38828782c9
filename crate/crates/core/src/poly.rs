//! Dense real-coefficient polynomials, ones-polynomial factorization over the
//! reals, and enumeration of the splits that drive every deconvolution
//! constructor.
//!
//! A polynomial is the generating function of a vector: coefficient `k`
//! multiplies `t^k`. The ones polynomial of degree `M` (all coefficients 1)
//! is central here; its roots are the `(M+1)`-th roots of unity except 1, so
//! its real irreducible factors are `t + 1` (when `M` is odd) and quadratics
//! `t^2 - 2cos(theta_k) t + 1` with `theta_k = 2 pi k / (M+1)`.

use crate::error::{Error, Result};
use num_complex::Complex64;

/// Global comparison tolerance for coefficient checks.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Trailing coefficients at or below this magnitude are trimmed after
/// arithmetic.
pub const NORMALIZE_TOL: f64 = 1e-12;

/// Real polynomial, coefficients in ascending degree order.
///
/// The zero polynomial is the empty coefficient vector; otherwise the last
/// coefficient is nonzero after normalization.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly {
    coeffs: Vec<f64>,
}

impl Poly {
    /// Builds a polynomial from ascending coefficients, trimming trailing
    /// coefficients within [`NORMALIZE_TOL`] of zero.
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        debug_assert!(coeffs.iter().all(|c| c.is_finite()));
        while let Some(&last) = coeffs.last() {
            if last.abs() <= NORMALIZE_TOL {
                coeffs.pop();
            } else {
                break;
            }
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { coeffs: vec![1.0] }
    }

    pub fn constant(c: f64) -> Self {
        Poly::new(vec![c])
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Coefficient of `t^k` (zero beyond the stored degree).
    pub fn coeff(&self, k: usize) -> f64 {
        self.coeffs.get(k).copied().unwrap_or(0.0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    /// Horner evaluation at a complex point.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    /// Horner evaluation at a real point.
    pub fn eval_real(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for &c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Product of two polynomials (coefficient convolution).
    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![0.0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![0.0; n];
        for (i, &a) in self.coeffs.iter().enumerate() {
            out[i] += a;
        }
        for (i, &b) in other.coeffs.iter().enumerate() {
            out[i] += b;
        }
        Poly::new(out)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.scale(-1.0))
    }

    pub fn scale(&self, s: f64) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Multiplication by `t^k`.
    pub fn shifted(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![0.0; k];
        out.extend_from_slice(&self.coeffs);
        Poly { coeffs: out }
    }

    /// Synthetic long division: `self = den * quotient + remainder` with
    /// `deg remainder < deg den`.
    pub fn divrem(&self, den: &Poly) -> Result<(Poly, Poly)> {
        if den.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        let dn = den.coeffs.len() - 1;
        if self.coeffs.len() <= dn {
            return Ok((Poly::zero(), self.clone()));
        }
        let lead = *den.coeffs.last().expect("nonzero divisor");
        let mut rem = self.coeffs.clone();
        let qlen = self.coeffs.len() - dn;
        let mut quot = vec![0.0; qlen];
        for k in (0..qlen).rev() {
            let c = rem[k + dn] / lead;
            quot[k] = c;
            if c != 0.0 {
                for (j, &d) in den.coeffs.iter().enumerate() {
                    rem[k + j] -= c * d;
                }
            }
        }
        rem.truncate(dn);
        Ok((Poly::new(quot), Poly::new(rem)))
    }

    /// Smallest coefficient (0 for the zero polynomial).
    pub fn min_coeff(&self) -> f64 {
        if self.coeffs.is_empty() {
            0.0
        } else {
            self.coeffs.iter().copied().fold(f64::INFINITY, f64::min)
        }
    }
}

impl std::ops::Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        Poly::mul(self, rhs)
    }
}

impl std::ops::Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        Poly::add(self, rhs)
    }
}

impl std::ops::Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        Poly::sub(self, rhs)
    }
}

/// Generating function of a vector of `M+1` ones; negative `m` yields the
/// zero polynomial (the `C_{-1} = 0` convention used by the remainder
/// formulas).
pub fn ones_poly(m: i64) -> Poly {
    if m < 0 {
        Poly::zero()
    } else {
        Poly {
            coeffs: vec![1.0; m as usize + 1],
        }
    }
}

/// Real irreducible factorization of a ones polynomial.
///
/// Factors are ordered deterministically: `t + 1` first when present, then
/// quadratics by increasing angle. This order is the contract for
/// [`SplitMask`] bit positions.
#[derive(Debug, Clone)]
pub struct FactorSet {
    modulus: usize,
    linear_factor_present: bool,
    quadratic_angles: Vec<f64>,
    factors: Vec<Poly>,
}

impl FactorSet {
    pub fn modulus(&self) -> usize {
        self.modulus
    }

    pub fn linear_factor_present(&self) -> bool {
        self.linear_factor_present
    }

    pub fn quadratic_angles(&self) -> &[f64] {
        &self.quadratic_angles
    }

    pub fn factors(&self) -> &[Poly] {
        &self.factors
    }

    pub fn factor_count(&self) -> usize {
        self.factors.len()
    }

    /// A mask is usable when its width matches and it does not select every
    /// factor (so that `q` keeps degree at least 1).
    pub fn is_valid_mask(&self, mask: SplitMask) -> bool {
        mask.width() == self.factor_count() && !mask.is_full()
    }
}

/// Rational angles with rational cosine: snap `2cos(theta)` to the exact
/// integer when within 1e-12 (only 0 and +-1 occur for interior angles).
/// Neighbouring irrational values are separated by at least ~1.8/(M+1), so
/// the snap is unambiguous at any desk-scale modulus.
fn snapped_two_cos(theta: f64) -> f64 {
    let v = 2.0 * theta.cos();
    for target in [-1.0, 0.0, 1.0] {
        if (v - target).abs() < 1e-12 {
            return target;
        }
    }
    v
}

/// Factors the ones polynomial of degree `m >= 1` into its real irreducible
/// factors.
pub fn factor_ones_poly(m: usize) -> Result<FactorSet> {
    if m < 1 {
        return Err(Error::InvalidInput(format!(
            "factor_ones_poly requires M >= 1, got {m}"
        )));
    }
    let n = (m + 1) as f64;
    let mut factors = Vec::new();
    let linear = m % 2 == 1;
    if linear {
        factors.push(Poly::new(vec![1.0, 1.0]));
    }
    let mut angles = Vec::new();
    for k in 1..=(m / 2) {
        let theta = 2.0 * std::f64::consts::PI * k as f64 / n;
        angles.push(theta);
        let mid = -snapped_two_cos(theta);
        let mid = if mid == 0.0 { 0.0 } else { mid }; // avoid -0.0
        factors.push(Poly::new(vec![1.0, mid, 1.0]));
    }
    Ok(FactorSet {
        modulus: m,
        linear_factor_present: linear,
        quadratic_angles: angles,
        factors,
    })
}

/// Selection of factors routed to `p` in a split `C_M = p * q`.
///
/// Bit `i` corresponds to `FactorSet::factors()[i]`; a set bit sends the
/// factor to `p`, a clear bit to `q`. The bit-string form reads left to
/// right in factor order, so `"10"` selects exactly the first factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SplitMask {
    bits: u64,
    width: usize,
}

impl SplitMask {
    pub fn from_bits(bits: u64, width: usize) -> Result<Self> {
        if width > 63 {
            return Err(Error::InvalidInput(format!(
                "mask width {width} exceeds 63"
            )));
        }
        if bits >> width != 0 {
            return Err(Error::InvalidInput(format!(
                "mask bits {bits:#b} out of range for width {width}"
            )));
        }
        Ok(SplitMask { bits, width })
    }

    pub fn empty(width: usize) -> Self {
        SplitMask { bits: 0, width }
    }

    pub fn from_bit_string(s: &str) -> Result<Self> {
        let mut bits = 0u64;
        let width = s.len();
        if width > 63 {
            return Err(Error::InvalidInput(format!(
                "mask width {width} exceeds 63"
            )));
        }
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '1' => bits |= 1 << i,
                '0' => {}
                other => {
                    return Err(Error::InvalidInput(format!(
                        "mask must be a bit string of 0s and 1s, found {other:?}"
                    )))
                }
            }
        }
        Ok(SplitMask { bits, width })
    }

    pub fn bit_string(&self) -> String {
        (0..self.width)
            .map(|i| if self.selects(i) { '1' } else { '0' })
            .collect()
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn selects(&self, i: usize) -> bool {
        i < self.width && (self.bits >> i) & 1 == 1
    }

    pub fn is_full(&self) -> bool {
        self.bits == (1u64 << self.width) - 1
    }

    pub fn complement(&self) -> Self {
        SplitMask {
            bits: !self.bits & ((1u64 << self.width) - 1),
            width: self.width,
        }
    }
}

impl serde::Serialize for SplitMask {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.bit_string())
    }
}

/// Splits `C_M = p * q` according to a mask: `p` is the product of the
/// selected factors (the empty selection gives the constant 1), `q` the
/// product of the rest. Both sides keep constant term 1.
pub fn split_from_mask(fs: &FactorSet, mask: SplitMask) -> Result<(Poly, Poly)> {
    if mask.width() != fs.factor_count() {
        return Err(Error::InvalidInput(format!(
            "mask width {} does not match factor count {}",
            mask.width(),
            fs.factor_count()
        )));
    }
    if mask.is_full() {
        return Err(Error::InvalidInput(
            "q must have degree >= 1 (mask selects every factor)".into(),
        ));
    }
    let mut p = Poly::one();
    let mut q = Poly::one();
    for (i, f) in fs.factors().iter().enumerate() {
        if mask.selects(i) {
            p = p.mul(f);
        } else {
            q = q.mul(f);
        }
    }
    Ok((p, q))
}

/// Number of splits of the ones polynomial of degree `W-1` into real factor
/// pairs `(p, q)` with `p(0) = q(0) = 1` and `deg q >= 1`: `2^(W/2) - 1`.
pub fn count_real_splits(w: usize) -> Result<u64> {
    if w < 2 {
        return Err(Error::InvalidInput(format!(
            "split counting requires W >= 2, got {w}"
        )));
    }
    let m = w / 2;
    if m >= 63 {
        return Err(Error::InvalidInput(format!("W = {w} too large")));
    }
    Ok((1u64 << m) - 1)
}

/// Enumerates the splits of `C_M` in which both `p` and `q` have all
/// coefficients `>= -tol`.
///
/// Each unordered split is reported once: the complement of a returned mask
/// is never also returned, and the canonical representative keeps the first
/// factor on the `q` side. The census of these masks equals the number of
/// ordered factorizations of `M+1` into integers >= 2, and every returned
/// split has coefficients in {0, 1} up to `tol`.
pub fn enumerate_nonneg_splits(m: usize, tol: f64) -> Result<Vec<SplitMask>> {
    let fs = factor_ones_poly(m)?;
    let nf = fs.factor_count();
    let mut out = Vec::new();
    for bits in 0..(1u64 << nf) {
        if bits & 1 != 0 {
            continue;
        }
        let mask = SplitMask::from_bits(bits, nf)?;
        let (p, q) = split_from_mask(&fs, mask)?;
        if p.min_coeff() >= -tol && q.min_coeff() >= -tol {
            out.push(mask);
        }
    }
    Ok(out)
}

/// Number of ordered sequences of integers >= 2 whose product is `n`,
/// counting the single-term sequence `(n)` itself.
pub fn ordered_factorizations(n: u64) -> Result<u64> {
    if n < 2 {
        return Err(Error::InvalidInput(format!(
            "ordered factorizations require n >= 2, got {n}"
        )));
    }
    fn count(n: u64) -> u64 {
        let mut total = 1;
        let mut d = 2;
        while d * d <= n {
            if n % d == 0 {
                total += count(n / d);
                let other = n / d;
                if other != d {
                    total += count(d);
                }
            }
            d += 1;
        }
        total
    }
    Ok(count(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn poly(cs: &[f64]) -> Poly {
        Poly::new(cs.to_vec())
    }

    fn assert_poly_close(a: &Poly, b: &Poly, tol: f64) {
        let n = a.coeffs().len().max(b.coeffs().len());
        for k in 0..n {
            assert!(
                (a.coeff(k) - b.coeff(k)).abs() <= tol,
                "coefficient {k}: {} vs {}",
                a.coeff(k),
                b.coeff(k)
            );
        }
    }

    #[test]
    fn mul_identity_and_examples() {
        let one = Poly::one();
        assert_eq!(poly(&[1.0, 1.0]).mul(&one), poly(&[1.0, 1.0]));
        assert_eq!(
            poly(&[1.0, 1.0]).mul(&poly(&[1.0, 0.0, 1.0])),
            poly(&[1.0, 1.0, 1.0, 1.0])
        );
        assert_eq!(
            poly(&[1.0, 2.0]).mul(&poly(&[3.0, 1.0])),
            poly(&[3.0, 7.0, 2.0])
        );
        assert!(poly(&[1.0, 2.0]).mul(&Poly::zero()).is_zero());
    }

    #[test]
    fn divrem_examples() {
        let (q, r) = ones_poly(3).divrem(&poly(&[1.0, 1.0])).unwrap();
        assert_eq!(q, poly(&[1.0, 0.0, 1.0]));
        assert!(r.is_zero());

        // main-diagonal gf of the AR(1) matrix, phi = 0.5, W = 4, divided by
        // the ones polynomial of degree 3: remainder is 1 - phi^2 = 0.75
        let w0 = ones_poly(4).add(&ones_poly(2).shifted(1).scale(0.25));
        let (_, r) = w0.divrem(&ones_poly(3)).unwrap();
        assert_eq!(r, poly(&[0.75]));

        let p = poly(&[2.0, -1.0, 3.0]);
        let (q, r) = p.divrem(&p).unwrap();
        assert_eq!(q, Poly::one());
        assert!(r.is_zero());

        assert_eq!(p.divrem(&Poly::zero()), Err(Error::ZeroDivisor));
    }

    #[test]
    fn eval_examples() {
        for m in 0..6 {
            let v = ones_poly(m).eval(Complex64::new(1.0, 0.0));
            assert_eq!(v.re, (m + 1) as f64);
            assert_eq!(v.im, 0.0);
        }
        // i is a primitive 4th root of unity, so C_3(i) = 0
        let v = ones_poly(3).eval(Complex64::new(0.0, 1.0));
        assert!(v.norm() < 1e-15);
        assert_eq!(poly(&[1.0, 2.0]).eval_real(3.0), 7.0);
    }

    #[test]
    fn ones_poly_convention() {
        assert_eq!(ones_poly(0), poly(&[1.0]));
        assert_eq!(ones_poly(3), poly(&[1.0, 1.0, 1.0, 1.0]));
        assert!(ones_poly(-1).is_zero());
        assert!(ones_poly(-3).is_zero());
    }

    #[test]
    fn factorization_small_cases() {
        let fs = factor_ones_poly(1).unwrap();
        assert_eq!(fs.factors(), &[poly(&[1.0, 1.0])]);
        assert!(fs.linear_factor_present());

        let fs = factor_ones_poly(3).unwrap();
        assert_eq!(fs.factors().len(), 2);
        assert_eq!(fs.factors()[0], poly(&[1.0, 1.0]));
        assert_eq!(fs.factors()[1], poly(&[1.0, 0.0, 1.0]));

        let fs = factor_ones_poly(2).unwrap();
        assert!(!fs.linear_factor_present());
        assert_eq!(fs.factors(), &[poly(&[1.0, 1.0, 1.0])]);

        assert!(factor_ones_poly(0).is_err());
    }

    #[test]
    fn factor_product_reconstructs_ones() {
        for m in 1..=20 {
            let fs = factor_ones_poly(m).unwrap();
            let prod = fs
                .factors()
                .iter()
                .fold(Poly::one(), |acc, f| acc.mul(f));
            assert_poly_close(&prod, &ones_poly(m as i64), 1e-9);
            for quad in fs.factors().iter().filter(|f| f.degree() == Some(2)) {
                let disc = quad.coeff(1) * quad.coeff(1) - 4.0;
                assert!(disc < 0.0, "quadratic factor must have no real roots");
            }
        }
    }

    #[test]
    fn split_examples() {
        let fs = factor_ones_poly(3).unwrap();
        let (p, q) = split_from_mask(&fs, SplitMask::empty(2)).unwrap();
        assert_eq!(p, Poly::one());
        assert_eq!(q, ones_poly(3));

        let (p, q) = split_from_mask(&fs, SplitMask::from_bits(1, 2).unwrap()).unwrap();
        assert_eq!(p, poly(&[1.0, 1.0]));
        assert_eq!(q, poly(&[1.0, 0.0, 1.0]));

        assert!(split_from_mask(&fs, SplitMask::from_bits(3, 2).unwrap()).is_err());
        assert!(split_from_mask(&fs, SplitMask::empty(1)).is_err());
    }

    #[test]
    fn split_count_matches_valid_masks() {
        assert_eq!(count_real_splits(2).unwrap(), 1);
        assert_eq!(count_real_splits(4).unwrap(), 3);
        assert_eq!(count_real_splits(5).unwrap(), 3);
        assert!(count_real_splits(1).is_err());
        for w in 2..=20usize {
            let fs = factor_ones_poly(w - 1).unwrap();
            let nf = fs.factor_count();
            let valid = (0..(1u64 << nf))
                .filter(|&bits| {
                    let mask = SplitMask::from_bits(bits, nf).unwrap();
                    fs.is_valid_mask(mask)
                })
                .count() as u64;
            assert_eq!(valid, count_real_splits(w).unwrap(), "W = {w}");
        }
    }

    #[test]
    fn nonneg_split_enumeration() {
        // W = 4: the trivial split and {p = 1 + t^2, q = 1 + t}
        let masks = enumerate_nonneg_splits(3, 1e-9).unwrap();
        assert_eq!(masks.len(), 2);
        let fs = factor_ones_poly(3).unwrap();
        let ps: Vec<Poly> = masks
            .iter()
            .map(|&m| split_from_mask(&fs, m).unwrap().0)
            .collect();
        assert!(ps.contains(&Poly::one()));
        assert!(ps.contains(&poly(&[1.0, 0.0, 1.0])));

        // W = 5 is prime: only the trivial split survives
        let masks = enumerate_nonneg_splits(4, 1e-9).unwrap();
        assert_eq!(masks.len(), 1);
        assert_eq!(masks[0].bits(), 0);

        let masks = enumerate_nonneg_splits(1, 1e-9).unwrap();
        assert_eq!(masks.len(), 1);
    }

    #[test]
    fn nonneg_census_matches_ordered_factorizations() {
        for w in 2..=16usize {
            let masks = enumerate_nonneg_splits(w - 1, 1e-9).unwrap();
            let h = ordered_factorizations(w as u64).unwrap();
            assert_eq!(masks.len() as u64, h, "W = {w}");
            let fs = factor_ones_poly(w - 1).unwrap();
            let composite = (2..w).any(|d| w % d == 0);
            let has_nonconstant = masks.iter().any(|&m| {
                let (p, _) = split_from_mask(&fs, m).unwrap();
                p.degree().unwrap_or(0) > 0
            });
            assert_eq!(has_nonconstant, composite, "W = {w}");
            for &m in &masks {
                let (p, q) = split_from_mask(&fs, m).unwrap();
                for c in p.coeffs().iter().chain(q.coeffs()) {
                    assert!(
                        c.abs() < 1e-9 || (c - 1.0).abs() < 1e-9,
                        "split coefficients must be 0 or 1, found {c}"
                    );
                }
            }
        }
    }

    #[test]
    fn ordered_factorization_counts() {
        assert_eq!(ordered_factorizations(4).unwrap(), 2);
        assert_eq!(ordered_factorizations(6).unwrap(), 3);
        assert_eq!(ordered_factorizations(5).unwrap(), 1);
        assert_eq!(ordered_factorizations(8).unwrap(), 4);
        assert_eq!(ordered_factorizations(12).unwrap(), 8);
        assert!(ordered_factorizations(1).is_err());
    }

    #[test]
    fn ones_poly_shift_identity_exact() {
        // C_{M+k} = t^k C_M + C_{k-1}, exact in integer arithmetic
        for m in 0..=20i64 {
            for k in 1..=10i64 {
                let lhs = ones_poly(m + k);
                let rhs = ones_poly(m).shifted(k as usize).add(&ones_poly(k - 1));
                assert_eq!(lhs, rhs, "M = {m}, k = {k}");
            }
        }
    }

    #[test]
    fn mask_bit_strings() {
        let m = SplitMask::from_bit_string("10").unwrap();
        assert!(m.selects(0));
        assert!(!m.selects(1));
        assert_eq!(m.bit_string(), "10");
        assert_eq!(m.complement().bit_string(), "01");
        assert!(SplitMask::from_bit_string("12").is_err());
        assert!(SplitMask::from_bit_string("11").unwrap().is_full());
    }

    proptest! {
        #[test]
        fn mul_is_gf_product(
            a in proptest::collection::vec(-1.0f64..1.0, 0..13),
            b in proptest::collection::vec(-1.0f64..1.0, 0..13),
            zs in proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 20),
        ) {
            let pa = Poly::new(a);
            let pb = Poly::new(b);
            let prod = pa.mul(&pb);
            for (re, im) in zs {
                let z = Complex64::new(re, im);
                let lhs = prod.eval(z);
                let rhs = pa.eval(z) * pb.eval(z);
                let scale = lhs.norm().max(rhs.norm()).max(1.0);
                prop_assert!((lhs - rhs).norm() <= 1e-9 * scale);
            }
        }

        #[test]
        fn divrem_round_trip_by_ones(
            num in proptest::collection::vec(-2.0f64..2.0, 0..16),
            den_deg in 1i64..=8,
        ) {
            // divisors in actual use are ones polynomials: unit leading
            // coefficient, perfectly conditioned
            let num = Poly::new(num);
            let den = ones_poly(den_deg);
            let (q, r) = num.divrem(&den).unwrap();
            if let Some(dr) = r.degree() {
                prop_assert!(dr < den.degree().unwrap());
            }
            let back = den.mul(&q).add(&r);
            let n = num.coeffs().len().max(back.coeffs().len());
            for k in 0..n {
                prop_assert!((num.coeff(k) - back.coeff(k)).abs() <= 1e-9);
            }
        }

        #[test]
        fn divrem_round_trip_general(
            num in proptest::collection::vec(-2.0f64..2.0, 0..16),
            mut den in proptest::collection::vec(-1.0f64..1.0, 1..9),
        ) {
            den.push(1.0); // monic, arbitrary lower coefficients
            let num = Poly::new(num);
            let den = Poly::new(den);
            let (q, r) = num.divrem(&den).unwrap();
            // tolerance scales with the conditioning of the reconstruction
            let qmax = q.coeffs().iter().fold(0.0f64, |m, c| m.max(c.abs()));
            let densum: f64 = den.coeffs().iter().map(|c| c.abs()).sum();
            let tol = 1e-9 * (1.0 + qmax * densum);
            let back = den.mul(&q).add(&r);
            let n = num.coeffs().len().max(back.coeffs().len());
            for k in 0..n {
                prop_assert!((num.coeff(k) - back.coeff(k)).abs() <= tol);
            }
        }
    }
}
