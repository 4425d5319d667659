//! Pointwise and grid evaluation of the defining analytic condition.
//!
//! The algebraic criteria in [`crate::criteria`] are cheap but indirect; this
//! module evaluates the quotient `[zf′ + βz²f″] / [βzf′ + (1−β)f]` and the
//! transformed map `1 + (1/τ)(Q − 1)` directly, scans disk grids for the
//! minimum real part, refines along the real axis, and computes the exact
//! real-axis boundary value for negative-coefficient series. Together these
//! provide the ground truth the criteria are validated against.

use num_complex::Complex64;
use serde::Serialize;

use crate::criteria::{coefficient_moments, ClassParams};
use crate::error::{Error, Result};
use crate::series::{DiskPoint, PowerSeries, SignConvention};

/// A quotient denominator with `|den| < guard·|z|` is treated as vanishing;
/// the point is skipped and counted instead of producing a huge quotient.
pub const DENOMINATOR_GUARD: f64 = 1e-9;

/// Grid verdicts use `min_re > α − tol` so boundary-sharp members whose
/// infimum equals `α` are not rejected over rounding.
pub const GRID_PASS_TOLERANCE: f64 = 1e-9;

/// A scan aborts when more than this fraction of samples trips the
/// denominator guard; the result would no longer describe the function.
pub const MAX_FAILURE_FRACTION: f64 = 0.01;

/// Largest radius a grid or refinement may use. Staying `1e-12` inside the
/// circle keeps polar-to-Cartesian rounding from producing `|z| ≥ 1`.
pub const MAX_RADIUS: f64 = 1.0 - 1e-12;

/// `|1 − B|` below this is reported as degenerate rather than divided by.
pub const DEGENERATE_GAP: f64 = 1e-12;

/// Polar sampling grid: concentric rings with equally spaced angles.
#[derive(Clone, Debug)]
pub struct DiskGrid {
    radii: Vec<f64>,
    angles_per_ring: usize,
}

impl DiskGrid {
    /// Build a grid from explicit radii (strictly increasing, inside the
    /// disk) and an angle count of at least 8.
    pub fn new(radii: Vec<f64>, angles_per_ring: usize) -> Result<Self> {
        if radii.is_empty() {
            return Err(Error::InvalidGrid {
                reason: "at least one radius is required".into(),
            });
        }
        if angles_per_ring < 8 {
            return Err(Error::InvalidGrid {
                reason: format!("angles_per_ring must be at least 8, got {angles_per_ring}"),
            });
        }
        for &r in &radii {
            if !r.is_finite() || r <= 0.0 || r > MAX_RADIUS {
                return Err(Error::InvalidGrid {
                    reason: format!("radius {r} must lie in (0, {MAX_RADIUS}]"),
                });
            }
        }
        for pair in radii.windows(2) {
            if pair[0] >= pair[1] {
                return Err(Error::InvalidGrid {
                    reason: "radii must be strictly increasing".into(),
                });
            }
        }
        Ok(DiskGrid {
            radii,
            angles_per_ring,
        })
    }

    /// Geometrically spaced radii `r_min·(r_max/r_min)^{(i+1)/n}`, so the
    /// rings concentrate near `r_max` where extremal minima live.
    pub fn geometric(
        n_radii: usize,
        r_min: f64,
        r_max: f64,
        angles_per_ring: usize,
    ) -> Result<Self> {
        if n_radii == 0 {
            return Err(Error::InvalidGrid {
                reason: "at least one radius is required".into(),
            });
        }
        if !(r_min > 0.0 && r_min < r_max) {
            return Err(Error::InvalidGrid {
                reason: format!("need 0 < r_min < r_max, got r_min={r_min}, r_max={r_max}"),
            });
        }
        let ratio = r_max / r_min;
        // The outermost power can round a hair above r_max; clamp it back.
        let radii = (0..n_radii)
            .map(|i| (r_min * ratio.powf((i + 1) as f64 / n_radii as f64)).min(r_max))
            .collect();
        Self::new(radii, angles_per_ring)
    }

    /// Default scan: 64 geometric radii in (0.01, 0.99], 256 angles per ring.
    pub fn standard() -> Self {
        Self::geometric(64, 0.01, 0.99, 256).expect("default grid parameters are valid")
    }

    /// Like [`DiskGrid::standard`] but with the outermost radius overridden.
    pub fn standard_with_rmax(r_max: f64) -> Result<Self> {
        Self::geometric(64, f64::min(0.01, r_max / 2.0), r_max, 256)
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn angles_per_ring(&self) -> usize {
        self.angles_per_ring
    }

    /// Number of grid cells, excluding the implicit origin sample.
    pub fn cell_count(&self) -> usize {
        self.radii.len() * self.angles_per_ring
    }

    /// The point on ring `i` at angle index `j`, i.e. angle `2πj/m`.
    pub fn point(&self, ring: usize, angle_idx: usize) -> DiskPoint {
        let theta = std::f64::consts::TAU * angle_idx as f64 / self.angles_per_ring as f64;
        DiskPoint::from_polar(self.radii[ring], theta)
            .expect("validated grid radii stay strictly inside the disk")
    }
}

/// The quotient `[zf′(z) + βz²f″(z)] / [βzf′(z) + (1−β)f(z)]`.
///
/// At `z = 0` both sides vanish; the normalized limit is 1 and is returned
/// exactly. Elsewhere a denominator with modulus below
/// [`DENOMINATOR_GUARD`]`·|z|` yields [`Error::DenominatorNearZero`].
pub fn sc_quotient(f: &PowerSeries, beta: f64, z: DiskPoint) -> Result<Complex64> {
    if !(0.0..=1.0).contains(&beta) {
        return Err(Error::InvalidBeta { value: beta });
    }
    if z.is_origin() {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let zv = z.value();
    let zd1 = zv * f.evaluate_d1(z);
    let numerator = zd1 + beta * zv * zv * f.evaluate_d2(z);
    let denominator = beta * zd1 + (1.0 - beta) * f.evaluate(z);
    if denominator.norm() < DENOMINATOR_GUARD * zv.norm() {
        return Err(Error::DenominatorNearZero { z: zv });
    }
    Ok(numerator / denominator)
}

/// The transformed map `1 + (1/τ)·(sc_quotient − 1)` whose real part defines
/// membership; equals the quotient itself at `τ = 1`.
pub fn tau_map(f: &PowerSeries, params: ClassParams, z: DiskPoint) -> Result<Complex64> {
    let q = sc_quotient(f, params.beta(), z)?;
    Ok(Complex64::new(1.0, 0.0) + (q - Complex64::new(1.0, 0.0)) / params.tau())
}

/// Result of scanning `Re{tau_map}` over a grid.
#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub min_re: f64,
    pub witness: DiskPoint,
    pub alpha: f64,
    pub passes: bool,
    pub samples: usize,
    pub denominator_failures: usize,
}

/// Grid minimum candidate; `ring` 0 is reserved for the origin sample so the
/// documented tie-break (smallest radius, then smallest angle) is a plain
/// lexicographic order on `(re, ring, angle)`.
#[derive(Clone, Copy, Debug)]
struct Candidate {
    re: f64,
    ring: usize,
    angle: usize,
}

fn better(a: Candidate, b: Candidate) -> Candidate {
    if (b.re, b.ring, b.angle) < (a.re, a.ring, a.angle) {
        b
    } else {
        a
    }
}

fn merge(a: Option<Candidate>, b: Option<Candidate>) -> Option<Candidate> {
    match (a, b) {
        (Some(x), Some(y)) => Some(better(x, y)),
        (x, None) => x,
        (None, y) => y,
    }
}

/// Evaluate one grid cell: a candidate on success, a counted skip when the
/// denominator guard trips, a hard error otherwise.
fn grid_cell(
    f: &PowerSeries,
    params: ClassParams,
    grid: &DiskGrid,
    ring: usize,
    angle: usize,
) -> Result<(Option<Candidate>, usize)> {
    match tau_map(f, params, grid.point(ring, angle)) {
        Ok(value) => Ok((
            Some(Candidate {
                re: value.re,
                ring: ring + 1,
                angle,
            }),
            0,
        )),
        Err(Error::DenominatorNearZero { .. }) => Ok((None, 1)),
        Err(e) => Err(e),
    }
}

fn finish_report(
    params: ClassParams,
    grid: &DiskGrid,
    scan: (Option<Candidate>, usize),
) -> Result<VerificationReport> {
    let (scanned, denominator_failures) = scan;
    let samples = grid.cell_count() + 1;
    if denominator_failures as f64 > MAX_FAILURE_FRACTION * samples as f64 {
        return Err(Error::ExcessiveDenominatorFailures {
            failures: denominator_failures,
            samples,
        });
    }
    let origin = Candidate {
        re: 1.0,
        ring: 0,
        angle: 0,
    };
    let best = merge(scanned, Some(origin)).expect("origin sample always present");
    let witness = if best.ring == 0 {
        DiskPoint::ORIGIN
    } else {
        grid.point(best.ring - 1, best.angle)
    };
    Ok(VerificationReport {
        min_re: best.re,
        witness,
        alpha: params.alpha(),
        passes: best.re > params.alpha() - GRID_PASS_TOLERANCE,
        samples,
        denominator_failures,
    })
}

/// Minimum of `Re{tau_map}` over the grid plus the origin sample (value 1).
///
/// The reduction is a lexicographic minimum over `(re, radius, angle)`, a
/// total order with no duplicate positions, so the parallel and sequential
/// scans return bit-identical reports.
#[cfg(feature = "parallel")]
pub fn min_re_on_grid(
    f: &PowerSeries,
    params: ClassParams,
    grid: &DiskGrid,
) -> Result<VerificationReport> {
    use rayon::prelude::*;

    let angles = grid.angles_per_ring();
    let scan = (0..grid.cell_count())
        .into_par_iter()
        .map(|idx| grid_cell(f, params, grid, idx / angles, idx % angles))
        .try_reduce(
            || (None, 0),
            |left, right| Ok((merge(left.0, right.0), left.1 + right.1)),
        )?;
    finish_report(params, grid, scan)
}

/// Minimum of `Re{tau_map}` over the grid plus the origin sample (value 1).
#[cfg(not(feature = "parallel"))]
pub fn min_re_on_grid(
    f: &PowerSeries,
    params: ClassParams,
    grid: &DiskGrid,
) -> Result<VerificationReport> {
    min_re_on_grid_sequential(f, params, grid)
}

/// Single-threaded variant of [`min_re_on_grid`]; always available for
/// baseline comparisons.
pub fn min_re_on_grid_sequential(
    f: &PowerSeries,
    params: ClassParams,
    grid: &DiskGrid,
) -> Result<VerificationReport> {
    let angles = grid.angles_per_ring();
    let mut scan: (Option<Candidate>, usize) = (None, 0);
    for idx in 0..grid.cell_count() {
        let cell = grid_cell(f, params, grid, idx / angles, idx % angles)?;
        scan = (merge(scan.0, cell.0), scan.1 + cell.1);
    }
    finish_report(params, grid, scan)
}

/// One evaluated grid point, for external plotting.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct GridSample {
    pub r: f64,
    pub theta: f64,
    pub re: f64,
}

/// Full grid dump of `Re{tau_map}`; guard-skipped points are omitted from
/// the rows but tallied.
#[derive(Clone, Debug)]
pub struct GridDump {
    pub samples: Vec<GridSample>,
    pub denominator_failures: usize,
}

/// Evaluate every grid point in ring-major order for CSV export.
pub fn grid_samples(f: &PowerSeries, params: ClassParams, grid: &DiskGrid) -> Result<GridDump> {
    let mut samples = Vec::with_capacity(grid.cell_count());
    let mut denominator_failures = 0;
    for ring in 0..grid.radii().len() {
        for angle in 0..grid.angles_per_ring() {
            let theta = std::f64::consts::TAU * angle as f64 / grid.angles_per_ring() as f64;
            match tau_map(f, params, grid.point(ring, angle)) {
                Ok(value) => samples.push(GridSample {
                    r: grid.radii()[ring],
                    theta,
                    re: value.re,
                }),
                Err(Error::DenominatorNearZero { .. }) => denominator_failures += 1,
                Err(e) => return Err(e),
            }
        }
    }
    Ok(GridDump {
        samples,
        denominator_failures,
    })
}

/// Result of the one-dimensional real-axis minimization.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct RealAxisMinimum {
    pub r: f64,
    pub re: f64,
}

const COARSE_STEPS: usize = 64;
const GOLDEN_ITERATIONS: usize = 80;
const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Minimize `Re{tau_map}` over real `z ∈ (0, r_max]`.
///
/// A coarse scan brackets the smallest sample, then golden-section search
/// tightens the bracket. For negative-coefficient members the real-axis
/// values decrease toward the boundary, so this localizes the infimum; for
/// general series it is a heuristic refinement of the grid minimum.
pub fn refine_real_axis(
    f: &PowerSeries,
    params: ClassParams,
    r_max: f64,
) -> Result<RealAxisMinimum> {
    if !r_max.is_finite() || r_max <= 0.0 || r_max > MAX_RADIUS {
        return Err(Error::InvalidGrid {
            reason: format!("refinement radius {r_max} must lie in (0, {MAX_RADIUS}]"),
        });
    }
    let re_at = |r: f64| -> Result<Option<f64>> {
        let z = DiskPoint::from_polar(r, 0.0)?;
        match tau_map(f, params, z) {
            Ok(value) => Ok(Some(value.re)),
            Err(Error::DenominatorNearZero { .. }) => Ok(None),
            Err(e) => Err(e),
        }
    };

    let mut best: Option<(f64, f64)> = None; // (re, r)
    let mut best_step = 0;
    let mut failures = 0;
    for k in 1..=COARSE_STEPS {
        let r = r_max * k as f64 / COARSE_STEPS as f64;
        match re_at(r)? {
            Some(re) => {
                if best.is_none_or(|(b, _)| re < b) {
                    best = Some((re, r));
                    best_step = k;
                }
            }
            None => failures += 1,
        }
    }
    let Some((mut best_re, mut best_r)) = best else {
        return Err(Error::ExcessiveDenominatorFailures {
            failures,
            samples: COARSE_STEPS,
        });
    };

    // Golden-section pass inside the bracket around the best coarse sample;
    // guard-skipped probes count as +inf so the search steers away from them.
    let mut lo = r_max * (best_step - 1) as f64 / COARSE_STEPS as f64;
    let mut hi = r_max * (best_step + 1).min(COARSE_STEPS) as f64 / COARSE_STEPS as f64;
    let probe = |r: f64, best_re: &mut f64, best_r: &mut f64| -> Result<f64> {
        let value = re_at(r)?.unwrap_or(f64::INFINITY);
        if value < *best_re {
            *best_re = value;
            *best_r = r;
        }
        Ok(value)
    };
    let mut c = hi - INV_PHI * (hi - lo);
    let mut d = lo + INV_PHI * (hi - lo);
    let mut fc = probe(c, &mut best_re, &mut best_r)?;
    let mut fd = probe(d, &mut best_re, &mut best_r)?;
    for _ in 0..GOLDEN_ITERATIONS {
        if fc < fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - INV_PHI * (hi - lo);
            fc = probe(c, &mut best_re, &mut best_r)?;
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + INV_PHI * (hi - lo);
            fd = probe(d, &mut best_re, &mut best_r)?;
        }
        if hi - lo < 1e-12 {
            break;
        }
    }
    Ok(RealAxisMinimum {
        r: best_r,
        re: best_re,
    })
}

/// Exact `z → 1⁻` real-axis boundary value of `Re{tau_map}` in the `|τ|`
/// normalization: `1 − A / (|τ|·(1 − B))` with `A = Σ(n−1)[1+β(n−1)]a_n`,
/// `B = Σ[1+β(n−1)]a_n`.
///
/// Requires a negative-coefficient series and real `τ`. Comparing the value
/// against `α` is equivalent to the coefficient criterion whenever `B < 1`,
/// which is what makes it a closed-form membership certificate: for `τ > 0`
/// it is the genuine limit of `Re{tau_map}` along `(0, 1)`, while for
/// `τ < 0` the pointwise limit is `2` minus this value and only the
/// criterion direction of the equivalence survives.
pub fn boundary_limit(f: &PowerSeries, params: ClassParams) -> Result<f64> {
    if f.convention() != SignConvention::NegativeT {
        return Err(Error::RequiresNegativeT {
            operation: "boundary_limit",
        });
    }
    params.require_real_tau("boundary_limit")?;
    let moments = coefficient_moments(f, params.beta());
    let gap = 1.0 - moments.b;
    if gap.abs() < DEGENERATE_GAP {
        return Err(Error::DegenerateBoundary { gap: gap.abs() });
    }
    Ok(1.0 - moments.a / (params.tau_abs() * gap))
}
