//! Normalized truncated power series on the open unit disk.
//!
//! A series stores only its higher coefficients `a_2..a_N`; the leading
//! coefficient is implicitly 1 and the constant term implicitly 0, so
//! `f(0) = 0` and `f'(0) = 1` hold by construction and cannot be violated.
//! Two sign conventions exist: [`SignConvention::General`] represents
//! `f(z) = z + Σ a_n z^n` with complex `a_n`, and [`SignConvention::NegativeT`]
//! represents `f(z) = z − Σ a_n z^n` where the stored `a_n` are real and
//! non-negative.

use num_complex::Complex64;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};

/// How stored coefficients enter the series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SignConvention {
    /// `f(z) = z + Σ a_n z^n`, complex coefficients.
    General,
    /// `f(z) = z − Σ a_n z^n`, real coefficients with `a_n >= 0`.
    NegativeT,
}

impl SignConvention {
    /// Sign applied to stored coefficients during evaluation.
    pub fn sign(self) -> f64 {
        match self {
            SignConvention::General => 1.0,
            SignConvention::NegativeT => -1.0,
        }
    }
}

/// A point of the open unit disk `{ z : |z| < 1 }`.
///
/// Constructing one checks the modulus, so every evaluation routine can take
/// the strict-interior precondition for granted.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DiskPoint(Complex64);

impl DiskPoint {
    pub const ORIGIN: DiskPoint = DiskPoint(Complex64::new(0.0, 0.0));

    pub fn new(z: Complex64) -> Result<Self> {
        let modulus = z.norm();
        if modulus < 1.0 {
            Ok(DiskPoint(z))
        } else {
            // NaN moduli land here too: NaN < 1.0 is false.
            Err(Error::PointOutsideDisk { modulus })
        }
    }

    pub fn from_polar(r: f64, theta: f64) -> Result<Self> {
        Self::new(Complex64::from_polar(r, theta))
    }

    pub fn value(self) -> Complex64 {
        self.0
    }

    pub fn is_origin(self) -> bool {
        self.0.re == 0.0 && self.0.im == 0.0
    }
}

impl Serialize for DiskPoint {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("DiskPoint", 2)?;
        s.serialize_field("re", &self.0.re)?;
        s.serialize_field("im", &self.0.im)?;
        s.end()
    }
}

/// Truncated normalized power series `z ± Σ_{n=2}^{N} a_n z^n`.
///
/// `coeffs[k]` stores `a_{k+2}`; the truncation order is
/// `N = coeffs.len() + 1`, so the identity series `f(z) = z` has order 1 and
/// no stored coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct PowerSeries {
    convention: SignConvention,
    coeffs: Vec<Complex64>,
}

impl PowerSeries {
    /// The identity series `f(z) = z`.
    pub fn identity() -> Self {
        PowerSeries {
            convention: SignConvention::General,
            coeffs: Vec::new(),
        }
    }

    /// Build a general-convention series from complex coefficients `a_2..a_N`.
    pub fn general(coeffs: Vec<Complex64>) -> Result<Self> {
        Self::from_parts(SignConvention::General, coeffs)
    }

    /// Build a negative-convention series from real coefficients `a_2..a_N`.
    pub fn negative_t(coeffs: Vec<f64>) -> Result<Self> {
        Self::from_parts(
            SignConvention::NegativeT,
            coeffs.into_iter().map(|c| Complex64::new(c, 0.0)).collect(),
        )
    }

    /// Build a series from raw parts, validating the convention invariants.
    pub fn from_parts(convention: SignConvention, coeffs: Vec<Complex64>) -> Result<Self> {
        for (k, c) in coeffs.iter().enumerate() {
            let n = k + 2;
            if !c.re.is_finite() || !c.im.is_finite() {
                return Err(Error::NonFiniteCoefficient { n });
            }
            if convention == SignConvention::NegativeT && (c.im != 0.0 || c.re < 0.0) {
                return Err(Error::InvalidNegativeCoefficient {
                    n,
                    re: c.re,
                    im: c.im,
                });
            }
        }
        Ok(PowerSeries { convention, coeffs })
    }

    /// A series whose only nonzero coefficient is `a_n = magnitude`.
    pub fn single_term(convention: SignConvention, n: usize, magnitude: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::IndexBelowTwo { n });
        }
        let mut coeffs = vec![Complex64::new(0.0, 0.0); n - 1];
        coeffs[n - 2] = Complex64::new(magnitude, 0.0);
        Self::from_parts(convention, coeffs)
    }

    pub fn convention(&self) -> SignConvention {
        self.convention
    }

    /// Truncation order `N` (the highest represented power of `z`).
    pub fn order(&self) -> usize {
        self.coeffs.len() + 1
    }

    /// Stored coefficients `a_2..a_N` in index order.
    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Iterate `(n, a_n)` over the stored coefficients.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (usize, Complex64)> + '_ {
        self.coeffs.iter().enumerate().map(|(k, &c)| (k + 2, c))
    }

    /// `f(z) = z + σ Σ a_n z^n`, evaluated as `z · (1 + σ Σ a_n z^{n-1})`
    /// with a nested multiply-add scheme.
    pub fn evaluate(&self, z: DiskPoint) -> Complex64 {
        let z = z.value();
        let sign = self.convention.sign();
        let mut acc = Complex64::new(0.0, 0.0);
        for &a in self.coeffs.iter().rev() {
            acc = (acc + sign * a) * z;
        }
        z * (Complex64::new(1.0, 0.0) + acc)
    }

    /// `f'(z) = 1 + σ Σ n a_n z^{n-1}`.
    pub fn evaluate_d1(&self, z: DiskPoint) -> Complex64 {
        let z = z.value();
        let sign = self.convention.sign();
        let mut acc = Complex64::new(0.0, 0.0);
        for (n, a) in self.terms().rev() {
            acc = (acc + sign * n as f64 * a) * z;
        }
        Complex64::new(1.0, 0.0) + acc
    }

    /// `f''(z) = σ Σ n (n−1) a_n z^{n-2}`.
    pub fn evaluate_d2(&self, z: DiskPoint) -> Complex64 {
        let z = z.value();
        let sign = self.convention.sign();
        let mut acc = Complex64::new(0.0, 0.0);
        for (n, a) in self.terms().rev() {
            acc = acc * z + sign * (n * (n - 1)) as f64 * a;
        }
        acc
    }
}

/// On-disk JSON form of a series: `{"sign_convention": ..., "coeffs": [[re, im], ...]}`
/// where entry `k` holds `a_{k+2}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SeriesFile {
    pub sign_convention: SignConvention,
    pub coeffs: Vec<[f64; 2]>,
}

impl SeriesFile {
    pub fn from_series(series: &PowerSeries) -> Self {
        SeriesFile {
            sign_convention: series.convention(),
            coeffs: series.coeffs().iter().map(|c| [c.re, c.im]).collect(),
        }
    }

    /// Validates the convention invariants while converting.
    pub fn to_series(&self) -> Result<PowerSeries> {
        PowerSeries::from_parts(
            self.sign_convention,
            self.coeffs
                .iter()
                .map(|&[re, im]| Complex64::new(re, im))
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn identity_series_is_exact() {
        let f = PowerSeries::identity();
        let z = DiskPoint::new(c(0.3, 0.4)).unwrap();
        assert_eq!(f.evaluate(z), c(0.3, 0.4));
        assert_eq!(f.evaluate_d1(z), c(1.0, 0.0));
        assert_eq!(f.evaluate_d2(z), c(0.0, 0.0));
    }

    #[test]
    fn normalization_at_origin() {
        let f = PowerSeries::general(vec![c(0.1, -0.2), c(0.0, 0.3)]).unwrap();
        assert_eq!(f.evaluate(DiskPoint::ORIGIN), c(0.0, 0.0));
        assert_eq!(f.evaluate_d1(DiskPoint::ORIGIN), c(1.0, 0.0));
    }

    #[test]
    fn degree_two_negative_series_by_hand() {
        // f(z) = z - 0.5 z^2 at z = 0.5: 0.5 - 0.5 * 0.25 = 0.375
        let f = PowerSeries::negative_t(vec![0.5]).unwrap();
        let z = DiskPoint::new(c(0.5, 0.0)).unwrap();
        assert!((f.evaluate(z) - c(0.375, 0.0)).norm() < 1e-15);
        // f'(z) = 1 - 2 * 0.5 * 0.5 = 0.5
        assert!((f.evaluate_d1(z) - c(0.5, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn second_derivative_by_hand() {
        // a_2 = 0.5 general: f'' = 2 * 0.5 = 1 everywhere.
        let f = PowerSeries::general(vec![c(0.5, 0.0)]).unwrap();
        let z = DiskPoint::new(c(0.2, -0.7)).unwrap();
        assert!((f.evaluate_d2(z) - c(1.0, 0.0)).norm() < 1e-15);

        // a_3 = 0.2 general at z = 0.5: 6 * 0.2 * 0.5 = 0.6
        let f = PowerSeries::general(vec![c(0.0, 0.0), c(0.2, 0.0)]).unwrap();
        let z = DiskPoint::new(c(0.5, 0.0)).unwrap();
        assert!((f.evaluate_d2(z) - c(0.6, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn nested_evaluation_matches_naive_power_sum() {
        let f = PowerSeries::general(vec![c(0.1, 0.05), c(-0.07, 0.02), c(0.01, -0.3)]).unwrap();
        let z = DiskPoint::new(c(-0.6, 0.55)).unwrap();
        let zv = z.value();
        let mut naive = zv;
        for (n, a) in f.terms() {
            naive += a * zv.powu(n as u32);
        }
        assert!((f.evaluate(z) - naive).norm() < 1e-14);
    }

    #[test]
    fn disk_point_rejects_boundary_and_exterior() {
        assert!(DiskPoint::new(c(1.0, 0.0)).is_err());
        assert!(DiskPoint::new(c(0.8, 0.7)).is_err());
        assert!(DiskPoint::new(c(f64::NAN, 0.0)).is_err());
        assert!(DiskPoint::from_polar(0.999999, 1.0).is_ok());
    }

    #[test]
    fn negative_convention_rejects_bad_coefficients() {
        assert!(PowerSeries::negative_t(vec![0.2, -0.1]).is_err());
        assert!(PowerSeries::from_parts(SignConvention::NegativeT, vec![c(0.2, 0.1)]).is_err());
        assert!(PowerSeries::general(vec![c(f64::INFINITY, 0.0)]).is_err());
    }

    #[test]
    fn order_counts_implicit_leading_term() {
        assert_eq!(PowerSeries::identity().order(), 1);
        assert_eq!(
            PowerSeries::negative_t(vec![0.0, 0.0, 0.1])
                .unwrap()
                .order(),
            4
        );
    }

    #[test]
    fn series_file_round_trip() {
        let f = PowerSeries::general(vec![c(0.1, -0.2)]).unwrap();
        let file = SeriesFile::from_series(&f);
        assert_eq!(file.to_series().unwrap(), f);

        let bad = SeriesFile {
            sign_convention: SignConvention::NegativeT,
            coeffs: vec![[0.1, 0.2]],
        };
        assert!(bad.to_series().is_err());
    }
}
