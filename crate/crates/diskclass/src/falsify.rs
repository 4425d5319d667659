//! Falsification sweeps cross-validating the algebraic criterion against
//! direct evaluation of the analytic condition.
//!
//! The soundness sweep drives random criterion-passing general members
//! through the grid scan: every one must keep `Re{tau_map} > α`. The
//! necessity sweep drives random negative-coefficient non-members through
//! the closed-form boundary value: every one must land below `α`. Both
//! report the smallest safety margin seen and the first counterexample, if
//! any; a correct implementation finds none.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::classify::{random_general_member, random_member};
use crate::criteria::{coefficient_moments, ClassParams};
use crate::error::{Error, Result};
use crate::operator::{boundary_limit, min_re_on_grid_sequential, DiskGrid};

#[cfg(feature = "parallel")]
use crate::operator::min_re_on_grid;

const ALPHAS: [f64; 4] = [0.0, 0.25, 0.5, 0.75];
const BETAS: [f64; 3] = [0.0, 0.5, 1.0];
const TAU_MAGNITUDES: [f64; 3] = [0.5, 1.0, 2.0];
const MAX_TERMS: usize = 8;

/// A sweep item where the algebraic test and the analytic condition
/// disagreed.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Counterexample {
    pub index: usize,
    pub alpha: f64,
    pub beta: f64,
    pub tau_re: f64,
    pub tau_im: f64,
    pub detail: String,
}

/// Aggregate outcome of a sweep. `worst_margin` is the smallest observed
/// safety margin (distance from violating), `None` when nothing was checked.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepSummary {
    pub checked: usize,
    pub counterexamples: usize,
    pub worst_margin: Option<f64>,
    pub counterexample: Option<Counterexample>,
}

struct ItemOutcome {
    margin: f64,
    counterexample: Option<Counterexample>,
}

fn summarize(items: Vec<Option<ItemOutcome>>) -> SweepSummary {
    let mut checked = 0;
    let mut counterexamples = 0;
    let mut worst_margin: Option<f64> = None;
    let mut first: Option<Counterexample> = None;
    for item in items.into_iter().flatten() {
        checked += 1;
        if worst_margin.is_none_or(|w| item.margin < w) {
            worst_margin = Some(item.margin);
        }
        if let Some(ce) = item.counterexample {
            counterexamples += 1;
            if first.is_none() {
                first = Some(ce);
            }
        }
    }
    SweepSummary {
        checked,
        counterexamples,
        worst_margin,
        counterexample: first,
    }
}

/// Deterministic per-index parameter choice walking the
/// `α × β × |τ|` sweep grid; `τ` gets a random phase for the general sweep
/// and an alternating sign for the real one.
fn sweep_params(index: usize, rng: &mut ChaCha8Rng, complex_tau: bool) -> ClassParams {
    let alpha = ALPHAS[index % ALPHAS.len()];
    let beta = BETAS[(index / ALPHAS.len()) % BETAS.len()];
    let magnitude = TAU_MAGNITUDES[(index / (ALPHAS.len() * BETAS.len())) % TAU_MAGNITUDES.len()];
    let combos = ALPHAS.len() * BETAS.len() * TAU_MAGNITUDES.len();
    let tau = if complex_tau {
        Complex64::from_polar(magnitude, rng.gen_range(0.0..std::f64::consts::TAU))
    } else if (index / combos).is_multiple_of(2) {
        Complex64::new(magnitude, 0.0)
    } else {
        Complex64::new(-magnitude, 0.0)
    };
    ClassParams::new(alpha, beta, tau).expect("sweep parameters are in range")
}

fn item_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

fn soundness_item(
    index: usize,
    seed: u64,
    grid: &DiskGrid,
    scan: fn(
        &crate::series::PowerSeries,
        ClassParams,
        &DiskGrid,
    ) -> Result<crate::operator::VerificationReport>,
) -> Result<Option<ItemOutcome>> {
    let mut rng = item_rng(seed, index);
    let params = sweep_params(index, &mut rng, true);
    let n_terms = 1 + index % MAX_TERMS;
    let fill = rng.gen_range(0.25..=1.0);
    let member_seed = rng.gen::<u64>();
    let f = random_general_member(params, n_terms, fill, member_seed)?;
    let report = scan(&f, params, grid)?;
    let margin = report.min_re - params.alpha();
    let counterexample = (!report.passes).then(|| Counterexample {
        index,
        alpha: params.alpha(),
        beta: params.beta(),
        tau_re: params.tau().re,
        tau_im: params.tau().im,
        detail: format!(
            "criterion-passing member (fill {fill}, {n_terms} terms, seed {member_seed}) \
             has min Re = {} at z = {:?}",
            report.min_re,
            report.witness.value()
        ),
    });
    Ok(Some(ItemOutcome {
        margin,
        counterexample,
    }))
}

fn necessity_item(index: usize, excess: f64, seed: u64) -> Result<Option<ItemOutcome>> {
    let mut rng = item_rng(seed, index);
    let params = sweep_params(index, &mut rng, false);
    let n_terms = 1 + index % MAX_TERMS;
    let member_seed = rng.gen::<u64>();
    let f = random_member(params, n_terms, 1.0 + excess, member_seed)?;
    // The boundary value certifies non-membership only on the B < 1 branch.
    if coefficient_moments(&f, params.beta()).b >= 1.0 {
        return Ok(None);
    }
    let limit = boundary_limit(&f, params)?;
    let margin = params.alpha() - limit;
    let counterexample = (limit >= params.alpha()).then(|| Counterexample {
        index,
        alpha: params.alpha(),
        beta: params.beta(),
        tau_re: params.tau().re,
        tau_im: params.tau().im,
        detail: format!(
            "criterion-failing series ({n_terms} terms, seed {member_seed}) has \
             boundary value {limit} >= alpha"
        ),
    });
    Ok(Some(ItemOutcome {
        margin,
        counterexample,
    }))
}

/// Check `members` random criterion-passing general members (complex
/// coefficients and `τ`) against the grid scan.
#[cfg(feature = "parallel")]
pub fn soundness_sweep(members: usize, seed: u64, grid: &DiskGrid) -> Result<SweepSummary> {
    use rayon::prelude::*;

    let items = (0..members)
        .into_par_iter()
        .map(|i| soundness_item(i, seed, grid, min_re_on_grid))
        .collect::<Result<Vec<_>>>()?;
    Ok(summarize(items))
}

/// Check `members` random criterion-passing general members (complex
/// coefficients and `τ`) against the grid scan.
#[cfg(not(feature = "parallel"))]
pub fn soundness_sweep(members: usize, seed: u64, grid: &DiskGrid) -> Result<SweepSummary> {
    soundness_sweep_sequential(members, seed, grid)
}

/// Single-threaded [`soundness_sweep`], for baseline comparisons.
pub fn soundness_sweep_sequential(
    members: usize,
    seed: u64,
    grid: &DiskGrid,
) -> Result<SweepSummary> {
    let items = (0..members)
        .map(|i| soundness_item(i, seed, grid, min_re_on_grid_sequential))
        .collect::<Result<Vec<_>>>()?;
    Ok(summarize(items))
}

/// Check `non_members` random negative-coefficient series overfilled by
/// `excess` (so the criterion fails by that fraction of the bound) against
/// the closed-form boundary value, which must fall below `α`.
pub fn necessity_sweep(non_members: usize, excess: f64, seed: u64) -> Result<SweepSummary> {
    if !excess.is_finite() || excess <= 0.0 {
        return Err(Error::InvalidMargin { value: excess });
    }
    let items = (0..non_members)
        .map(|i| necessity_item(i, excess, seed))
        .collect::<Result<Vec<_>>>()?;
    Ok(summarize(items))
}
