//! Closed-form inversion of the coefficient criterion, plus seeded random
//! generation of members and non-members for falsification sweeps.
//!
//! The criterion total decomposes as `A + (1−α)|τ|·B` with the aggregates of
//! [`coefficient_moments`], so "largest admissible α" and "smallest
//! admissible |τ|" both reduce to one division. Everything here treats the
//! criterion as the membership definition; for general series the results
//! are therefore criterion-certified lower bounds, not exact class orders.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Exp1;
use serde::Serialize;

use crate::criteria::{coefficient_moments, criterion_bound, term_weight, ClassParams};
use crate::error::{Error, Result};
use crate::series::PowerSeries;

/// Extremal admissible parameters for a fixed series.
///
/// `alpha_star` of 1 is a supremum (the identity passes for every `α < 1`,
/// but `α = 1` itself is outside the parameter range); `tau_star` of 0 is an
/// infimum for the same reason. `None` means no admissible value exists.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ClassificationResult {
    pub alpha_star: Option<f64>,
    pub tau_star: Option<f64>,
    #[serde(rename = "A")]
    pub a: f64,
    #[serde(rename = "B")]
    pub b: f64,
    pub feasible: bool,
}

/// Largest `α ∈ [0, 1)` whose criterion the series satisfies at `|τ| =
/// tau_abs`: `α* = 1 − A/(|τ|·(1−B))`, `None` when `B ≥ 1` or the value is
/// negative. Fills only `alpha_star`.
pub fn max_alpha(f: &PowerSeries, beta: f64, tau_abs: f64) -> Result<ClassificationResult> {
    if !(0.0..=1.0).contains(&beta) {
        return Err(Error::InvalidBeta { value: beta });
    }
    if !tau_abs.is_finite() || tau_abs <= 0.0 {
        return Err(Error::InvalidTauMagnitude { value: tau_abs });
    }
    let moments = coefficient_moments(f, beta);
    let feasible = moments.b < 1.0;
    let alpha_star = if !feasible {
        None
    } else if moments.a == 0.0 {
        Some(1.0)
    } else {
        // The ratio form (headroom − A)/headroom is one rounding instead of
        // two, so clean anchors like a_2 = 1/4 ↦ 2/3 come out exact.
        let headroom = tau_abs * (1.0 - moments.b);
        let value = (headroom - moments.a) / headroom;
        (value >= 0.0).then_some(value)
    };
    Ok(ClassificationResult {
        alpha_star,
        tau_star: None,
        a: moments.a,
        b: moments.b,
        feasible,
    })
}

/// Smallest `|τ|` whose criterion the series satisfies at order `alpha`:
/// `|τ|* = A/((1−α)·(1−B))`, `None` when `B ≥ 1`. Fills only `tau_star`.
pub fn min_tau(f: &PowerSeries, alpha: f64, beta: f64) -> Result<ClassificationResult> {
    if !alpha.is_finite() || !(0.0..1.0).contains(&alpha) {
        return Err(Error::InvalidAlpha { value: alpha });
    }
    if !(0.0..=1.0).contains(&beta) {
        return Err(Error::InvalidBeta { value: beta });
    }
    let moments = coefficient_moments(f, beta);
    let feasible = moments.b < 1.0;
    let tau_star = feasible.then(|| moments.a / ((1.0 - alpha) * (1.0 - moments.b)));
    Ok(ClassificationResult {
        alpha_star: None,
        tau_star,
        a: moments.a,
        b: moments.b,
        feasible,
    })
}

/// Both inversions at once: `alpha_star` at the given `|τ|` and `tau_star`
/// at the given `α`.
pub fn classify(f: &PowerSeries, params: ClassParams) -> ClassificationResult {
    let by_alpha = max_alpha(f, params.beta(), params.tau_abs()).expect("params are validated");
    let by_tau = min_tau(f, params.alpha(), params.beta()).expect("params are validated");
    ClassificationResult {
        alpha_star: by_alpha.alpha_star,
        tau_star: by_tau.tau_star,
        a: by_alpha.a,
        b: by_alpha.b,
        feasible: by_alpha.feasible,
    }
}

/// Draw positive mass proportions for `n_terms` slots; exponential variates
/// normalized by their sum are uniform on the simplex.
fn mass_split(rng: &mut ChaCha8Rng, n_terms: usize) -> Vec<f64> {
    let weights: Vec<f64> = (0..n_terms).map(|_| rng.sample(Exp1)).collect();
    let total: f64 = weights.iter().sum();
    if total > 0.0 {
        weights.iter().map(|w| w / total).collect()
    } else {
        vec![1.0 / n_terms as f64; n_terms]
    }
}

fn validate_generator(n_terms: usize, fill: f64) -> Result<()> {
    if !fill.is_finite() || fill < 0.0 {
        return Err(Error::InvalidFill { value: fill });
    }
    if n_terms == 0 && fill > 0.0 {
        return Err(Error::EmptyGenerator);
    }
    Ok(())
}

/// Random negative-coefficient series with criterion total exactly
/// `fill·bound`: `fill ≤ 1` builds a member, `fill > 1` a non-member.
/// Deterministic per seed; requires real `τ`.
pub fn random_member(
    params: ClassParams,
    n_terms: usize,
    fill: f64,
    seed: u64,
) -> Result<PowerSeries> {
    params.require_real_tau("random_member")?;
    validate_generator(n_terms, fill)?;
    if fill == 0.0 {
        return PowerSeries::negative_t(vec![]);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let target = fill * criterion_bound(params);
    let coeffs = mass_split(&mut rng, n_terms)
        .into_iter()
        .enumerate()
        .map(|(i, p)| {
            let n = i + 2;
            target * p / term_weight(n, params).expect("n starts at 2")
        })
        .collect();
    PowerSeries::negative_t(coeffs)
}

/// Like [`random_member`] but with a uniformly random phase on every
/// coefficient and no reality constraint on `τ`; the criterion total is
/// unchanged because it only sees `|a_n|`.
pub fn random_general_member(
    params: ClassParams,
    n_terms: usize,
    fill: f64,
    seed: u64,
) -> Result<PowerSeries> {
    validate_generator(n_terms, fill)?;
    if fill == 0.0 {
        return PowerSeries::general(vec![]);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let target = fill * criterion_bound(params);
    let split = mass_split(&mut rng, n_terms);
    let coeffs = split
        .into_iter()
        .enumerate()
        .map(|(i, p)| {
            let n = i + 2;
            let magnitude = target * p / term_weight(n, params).expect("n starts at 2");
            let phase = rng.gen_range(0.0..std::f64::consts::TAU);
            Complex64::from_polar(magnitude, phase)
        })
        .collect();
    PowerSeries::general(coeffs)
}
