//! Coefficient criteria for starlike/convex-type analytic function classes
//! on the unit disk, with numerical cross-validation.
//!
//! A normalized analytic function `f(z) = z + Σ_{n≥2} a_n z^n` belongs to
//! the class studied here when `Re{1 + (1/τ)(Q(z) − 1)} > α` throughout the
//! open disk, where `Q = [zf′ + βz²f″] / [βzf′ + (1−β)f]` interpolates the
//! starlike (`β = 0`) and convex (`β = 1`) quotients and `τ` is a nonzero
//! complex order. The weighted coefficient test
//!
//! ```text
//! Σ [n + (1−α)|τ| − 1]·[1 + (n−1)β]·|a_n|  ≤  (1−α)|τ|
//! ```
//!
//! is sufficient for membership in general and equivalent to it for series
//! with negative coefficients and real `τ`. This crate implements the test,
//! its sharp extremal functions and derived coefficient bounds
//! ([`criteria`]), direct evaluation of the analytic condition on disk
//! grids and along the real axis ([`operator`]), closed-form inversion for
//! extremal parameters plus seeded member generators ([`classify`]), and
//! randomized sweeps that hunt for disagreements between the algebra and
//! the analysis ([`falsify`]).
//!
//! # Example
//!
//! ```
//! use diskclass::{
//!     boundary_limit, coefficient_sum, extremal_function, ClassParams, SignConvention,
//! };
//!
//! let params = ClassParams::real(0.0, 0.0, 1.0)?;
//! let sharp = extremal_function(2, params, SignConvention::NegativeT)?;
//!
//! // The sharp function sits exactly on the criterion bound...
//! let report = coefficient_sum(&sharp, params);
//! assert!(report.passes);
//! assert_eq!(report.margin, 0.0);
//!
//! // ...and its boundary value attains the order alpha exactly.
//! assert_eq!(boundary_limit(&sharp, params)?, 0.0);
//! # Ok::<(), diskclass::Error>(())
//! ```
//!
//! The `parallel` feature (on by default) runs grid scans and sweeps on a
//! rayon pool; the sequential fallbacks are always compiled and return
//! bit-identical results.

pub mod classify;
pub mod criteria;
pub mod error;
pub mod falsify;
pub mod operator;
pub mod series;

pub use num_complex::Complex64;

pub use classify::{
    classify, max_alpha, min_tau, random_general_member, random_member, ClassificationResult,
};
pub use criteria::{
    aggregate_bounds, coefficient_bound, coefficient_moments, coefficient_sum, convex_order_passes,
    criterion_bound, extremal_function, specialize, starlike_order_passes, term_weight,
    ClassParams, CriterionReport, CriterionTerm, Interpretation, Moments, Specialization,
    PASS_TOLERANCE,
};
pub use error::{Error, Result};
pub use falsify::{
    necessity_sweep, soundness_sweep, soundness_sweep_sequential, Counterexample, SweepSummary,
};
pub use operator::{
    boundary_limit, grid_samples, min_re_on_grid, min_re_on_grid_sequential, refine_real_axis,
    sc_quotient, tau_map, DiskGrid, GridDump, GridSample, RealAxisMinimum, VerificationReport,
    DENOMINATOR_GUARD, GRID_PASS_TOLERANCE, MAX_RADIUS,
};
pub use series::{DiskPoint, PowerSeries, SeriesFile, SignConvention};
