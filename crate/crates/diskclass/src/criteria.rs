//! Coefficient criteria, sharp extremal functions, and coefficient bounds.
//!
//! The central object is the weighted coefficient sum
//! `Σ_{n≥2} w_n |a_n|` with weight `w_n = [n + (1−α)|τ| − 1]·[1 + (n−1)β]`,
//! compared against the bound `(1−α)|τ|`. For a general series the condition
//! is sufficient for class membership; for a negative-coefficient series with
//! real `τ` it is equivalent to membership, and the report's interpretation
//! field records which reading applies.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::series::{PowerSeries, SignConvention};

/// Slack applied when comparing the coefficient sum against its bound.
///
/// The underlying inequalities are non-strict, so extremal functions sit at
/// exact equality; the tolerance keeps them passing despite rounding in the
/// sum.
pub const PASS_TOLERANCE: f64 = 1e-12;

/// Parameters `(α, β, τ)` of a class, validated on construction.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClassParams {
    alpha: f64,
    beta: f64,
    tau: Complex64,
}

impl ClassParams {
    /// Requires `0 ≤ α < 1`, `0 ≤ β ≤ 1`, and finite nonzero `τ`.
    pub fn new(alpha: f64, beta: f64, tau: Complex64) -> Result<Self> {
        if !alpha.is_finite() || !(0.0..1.0).contains(&alpha) {
            return Err(Error::InvalidAlpha { value: alpha });
        }
        if !beta.is_finite() || !(0.0..=1.0).contains(&beta) {
            return Err(Error::InvalidBeta { value: beta });
        }
        if !tau.re.is_finite() || !tau.im.is_finite() || (tau.re == 0.0 && tau.im == 0.0) {
            return Err(Error::InvalidTau);
        }
        Ok(ClassParams { alpha, beta, tau })
    }

    /// Convenience constructor for real `τ`.
    pub fn real(alpha: f64, beta: f64, tau: f64) -> Result<Self> {
        Self::new(alpha, beta, Complex64::new(tau, 0.0))
    }

    pub fn alpha(self) -> f64 {
        self.alpha
    }

    pub fn beta(self) -> f64 {
        self.beta
    }

    pub fn tau(self) -> Complex64 {
        self.tau
    }

    pub fn tau_abs(self) -> f64 {
        self.tau.norm()
    }

    /// `τ` as a real number, if its imaginary part is exactly zero.
    pub fn real_tau(self) -> Option<f64> {
        (self.tau.im == 0.0).then_some(self.tau.re)
    }

    /// Real `τ` or an error naming the operation that needs it.
    pub fn require_real_tau(self, operation: &'static str) -> Result<f64> {
        self.real_tau().ok_or(Error::NonRealTau {
            operation,
            tau: self.tau,
        })
    }
}

/// Which way the criterion verdict may be read.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Interpretation {
    /// Passing implies membership; failing implies nothing.
    SufficientOnly,
    /// Passing and membership coincide (negative coefficients, real `τ`).
    Iff,
}

/// One row of the criterion sum.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct CriterionTerm {
    pub n: usize,
    pub weight: f64,
    pub contribution: f64,
}

/// Outcome of testing a series against the coefficient criterion.
#[derive(Clone, Debug, Serialize)]
pub struct CriterionReport {
    pub terms: Vec<CriterionTerm>,
    pub total: f64,
    pub bound: f64,
    pub margin: f64,
    pub passes: bool,
    pub interpretation: Interpretation,
}

/// Criterion weight `w_n = [n + (1−α)|τ| − 1]·[1 + (n−1)β]`.
pub fn term_weight(n: usize, params: ClassParams) -> Result<f64> {
    if n < 2 {
        return Err(Error::IndexBelowTwo { n });
    }
    let shift = criterion_bound(params);
    Ok((n as f64 - 1.0 + shift) * (1.0 + (n as f64 - 1.0) * params.beta))
}

/// Right-hand side of the criterion: `(1−α)|τ|`.
pub fn criterion_bound(params: ClassParams) -> f64 {
    (1.0 - params.alpha) * params.tau_abs()
}

/// Evaluate the weighted coefficient sum of `f` against the bound.
///
/// The interpretation is `Iff` exactly when `f` stores negative-convention
/// coefficients and `τ` is real; otherwise the verdict is one-directional.
pub fn coefficient_sum(f: &PowerSeries, params: ClassParams) -> CriterionReport {
    let bound = criterion_bound(params);
    let mut terms = Vec::with_capacity(f.coeffs().len());
    let mut total = 0.0;
    for (n, a) in f.terms() {
        let weight = term_weight(n, params).expect("terms start at n = 2");
        let contribution = weight * a.norm();
        total += contribution;
        terms.push(CriterionTerm {
            n,
            weight,
            contribution,
        });
    }
    let interpretation =
        if f.convention() == SignConvention::NegativeT && params.real_tau().is_some() {
            Interpretation::Iff
        } else {
            Interpretation::SufficientOnly
        };
    CriterionReport {
        terms,
        total,
        bound,
        margin: bound - total,
        passes: total <= bound + PASS_TOLERANCE,
        interpretation,
    }
}

/// The single-term series `a_n = (1−α)|τ| / w_n` attaining the bound exactly.
pub fn extremal_function(
    n: usize,
    params: ClassParams,
    convention: SignConvention,
) -> Result<PowerSeries> {
    let magnitude = criterion_bound(params) / term_weight(n, params)?;
    PowerSeries::single_term(convention, n, magnitude)
}

/// Sharp per-coefficient bound `|a_n| ≤ (1−α)|τ| / w_n` for the
/// negative-coefficient class; requires real `τ`.
pub fn coefficient_bound(n: usize, params: ClassParams) -> Result<f64> {
    params.require_real_tau("coefficient_bound")?;
    Ok(criterion_bound(params) / term_weight(n, params)?)
}

/// Aggregate bounds `(B1, B2)` with `B1 = (1−α)|τ| / ((1+β)(1+(1−α)|τ|))`
/// bounding `Σ a_n` and `B2 = 2·B1` bounding `Σ n·a_n`; requires real `τ`.
///
/// `B2` is sharp only at `n = 2`; single-term members at `n ≥ 3` exceed it
/// once `(1−α)|τ|·(1−β) > 1 + 5β`, so callers should treat it as valid for
/// `(1−α)|τ| ≤ 1` (see `sum_n_bound_needs_small_c` below).
pub fn aggregate_bounds(params: ClassParams) -> Result<(f64, f64)> {
    params.require_real_tau("aggregate_bounds")?;
    let c = criterion_bound(params);
    let b1 = c / ((1.0 + params.beta) * (1.0 + c));
    Ok((b1, 2.0 * b1))
}

/// Coefficient aggregates `A = Σ (n−1)[1+β(n−1)]|a_n|` and
/// `B = Σ [1+β(n−1)]|a_n|`.
///
/// The criterion total decomposes as `A + (1−α)|τ|·B`, which is what makes
/// the classification formulas linear in `(1−α)|τ|`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Moments {
    pub a: f64,
    pub b: f64,
}

/// Compute the aggregates `(A, B)` of a series at a given `β`.
pub fn coefficient_moments(f: &PowerSeries, beta: f64) -> Moments {
    let mut a = 0.0;
    let mut b = 0.0;
    for (n, coeff) in f.terms() {
        let base = 1.0 + beta * (n as f64 - 1.0);
        let magnitude = coeff.norm();
        a += (n as f64 - 1.0) * base * magnitude;
        b += base * magnitude;
    }
    Moments { a, b }
}

/// Named classical specializations of the parameter triple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Specialization {
    /// `τ = 1`, `β = 0`: starlike of order `α`.
    StarlikeAlpha,
    /// `τ = 1`, `β = 1`: convex of order `α`.
    ConvexAlpha,
    /// `τ = 1`, other `β`: the two-parameter unified class.
    ScAb,
    /// Anything else.
    GeneralTau,
}

/// Identify which classical class the parameters reduce to.
pub fn specialize(params: ClassParams) -> Specialization {
    if params.tau == Complex64::new(1.0, 0.0) {
        if params.beta == 0.0 {
            Specialization::StarlikeAlpha
        } else if params.beta == 1.0 {
            Specialization::ConvexAlpha
        } else {
            Specialization::ScAb
        }
    } else {
        Specialization::GeneralTau
    }
}

/// Classical starlike-order test `Σ (n−α)|a_n| ≤ 1−α`, coded directly as an
/// independent oracle for the `τ = 1`, `β = 0` reduction.
pub fn starlike_order_passes(f: &PowerSeries, alpha: f64) -> bool {
    let total: f64 = f.terms().map(|(n, a)| (n as f64 - alpha) * a.norm()).sum();
    total <= (1.0 - alpha) + PASS_TOLERANCE
}

/// Classical convex-order test `Σ n(n−α)|a_n| ≤ 1−α`, coded directly as an
/// independent oracle for the `τ = 1`, `β = 1` reduction.
pub fn convex_order_passes(f: &PowerSeries, alpha: f64) -> bool {
    let total: f64 = f
        .terms()
        .map(|(n, a)| n as f64 * (n as f64 - alpha) * a.norm())
        .sum();
    total <= (1.0 - alpha) + PASS_TOLERANCE
}
