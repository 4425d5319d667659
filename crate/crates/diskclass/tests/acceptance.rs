//! Release gate. Each test is one acceptance criterion; the harness output
//! gives one pass/fail line per criterion, and `--nocapture` shows the
//! measured margins and timings.

use std::time::{Duration, Instant};

use diskclass::{
    aggregate_bounds, boundary_limit, coefficient_bound, coefficient_sum, convex_order_passes,
    extremal_function, max_alpha, min_tau, necessity_sweep, random_general_member, random_member,
    soundness_sweep, starlike_order_passes, tau_map, ClassParams, Complex64, DiskGrid, DiskPoint,
    PowerSeries, SignConvention,
};

const ALPHAS: [f64; 4] = [0.0, 0.25, 0.5, 0.75];
const BETAS: [f64; 3] = [0.0, 0.5, 1.0];
const TAU_MAGNITUDES: [f64; 3] = [0.5, 1.0, 2.0];

const SOUNDNESS_SEED: u64 = 11;
const NECESSITY_SEED: u64 = 17;

/// Deterministic walk over the real-parameter sweep grid.
fn sweep_real_params(i: usize) -> ClassParams {
    let alpha = ALPHAS[i % ALPHAS.len()];
    let beta = BETAS[(i / 4) % BETAS.len()];
    let magnitude = TAU_MAGNITUDES[(i / 12) % TAU_MAGNITUDES.len()];
    let tau = if (i / 36).is_multiple_of(2) {
        magnitude
    } else {
        -magnitude
    };
    ClassParams::real(alpha, beta, tau).unwrap()
}

fn assert_budget(elapsed: Duration, budget: Duration, what: &str) {
    assert!(
        elapsed < budget,
        "{what} took {elapsed:?}, budget is {budget:?}"
    );
}

#[test]
fn criterion_1_extremal_functions_are_sharp() {
    let start = Instant::now();
    let mut cases = 0usize;
    let mut worst_margin = 0.0f64;
    let mut worst_boundary_gap = 0.0f64;
    for n in 2..=16 {
        for &alpha in &ALPHAS {
            for &beta in &BETAS {
                for &magnitude in &TAU_MAGNITUDES {
                    for tau in [magnitude, -magnitude] {
                        let params = ClassParams::real(alpha, beta, tau).unwrap();
                        let f = extremal_function(n, params, SignConvention::NegativeT).unwrap();
                        let report = coefficient_sum(&f, params);
                        assert!(
                            report.passes,
                            "extremal function left the class at n={n}, alpha={alpha}, \
                             beta={beta}, tau={tau}"
                        );
                        worst_margin = worst_margin.max(report.margin.abs());
                        let limit = boundary_limit(&f, params).unwrap();
                        worst_boundary_gap = worst_boundary_gap.max((limit - alpha).abs());
                        cases += 1;
                    }
                }
            }
        }
    }
    assert!(
        worst_margin <= 1e-12,
        "worst extremal margin {worst_margin:e} exceeds 1e-12"
    );
    assert!(
        worst_boundary_gap <= 1e-10,
        "worst boundary gap {worst_boundary_gap:e} exceeds 1e-10"
    );
    let elapsed = start.elapsed();
    assert_budget(elapsed, Duration::from_secs(1), "sharpness sweep");
    println!(
        "criterion 1 PASS: {cases} extremal cases, worst margin {worst_margin:.2e}, \
         worst boundary gap {worst_boundary_gap:.2e}, {elapsed:?}"
    );
}

#[test]
fn criterion_2_members_pass_the_grid_scan() {
    let start = Instant::now();
    let grid = DiskGrid::standard();
    let summary = soundness_sweep(1000, SOUNDNESS_SEED, &grid).unwrap();
    assert_eq!(summary.checked, 1000);
    assert_eq!(
        summary.counterexamples, 0,
        "grid scan found a failing member: {:?}",
        summary.counterexample
    );
    let worst = summary.worst_margin.unwrap();
    assert!(worst > 0.0, "a member grazed alpha: margin {worst:e}");
    let elapsed = start.elapsed();
    assert_budget(elapsed, Duration::from_secs(30), "soundness sweep");
    println!(
        "criterion 2 PASS: 1000 members scanned on {} grid points each, \
         worst margin {worst:.3e}, {elapsed:?}",
        grid.cell_count() + 1
    );
}

#[test]
fn criterion_3_non_members_fail_at_the_boundary() {
    let start = Instant::now();
    let summary = necessity_sweep(1000, 0.05, NECESSITY_SEED).unwrap();
    assert_eq!(summary.checked, 1000, "a sweep item was skipped (B >= 1)");
    assert_eq!(
        summary.counterexamples, 0,
        "a criterion-failing series kept boundary value >= alpha: {:?}",
        summary.counterexample
    );
    let worst = summary.worst_margin.unwrap();
    assert!(worst > 0.0);
    let elapsed = start.elapsed();
    assert_budget(elapsed, Duration::from_secs(5), "necessity sweep");
    println!(
        "criterion 3 PASS: 1000 non-members, worst boundary shortfall {worst:.3e}, {elapsed:?}"
    );
}

#[test]
fn criterion_4_verdicts_match_the_classical_tests() {
    let mut starlike_passes = 0usize;
    let mut starlike_failures = 0usize;
    let mut convex_passes = 0usize;
    let mut convex_failures = 0usize;
    for i in 0..1000usize {
        let alpha = ALPHAS[i % ALPHAS.len()];
        let n_terms = 1 + i % 7;
        let u = i as f64 / 999.0;
        let f = match i % 3 {
            0 => {
                let gen = ClassParams::real(alpha, 0.0, 1.0).unwrap();
                random_member(gen, n_terms, 0.5 + 0.9 * u, i as u64).unwrap()
            }
            1 => {
                let gen = ClassParams::real(alpha, 1.0, 1.0).unwrap();
                random_general_member(gen, n_terms, u, i as u64).unwrap()
            }
            _ => {
                let coeffs = (0..n_terms)
                    .map(|k| {
                        let n = (k + 2) as f64;
                        Complex64::from_polar(
                            (0.1 + 0.4 * u) / n,
                            2.0 * std::f64::consts::PI * (i + k) as f64 / 97.0,
                        )
                    })
                    .collect();
                PowerSeries::general(coeffs).unwrap()
            }
        };

        let starlike = ClassParams::real(alpha, 0.0, 1.0).unwrap();
        let general_starlike = coefficient_sum(&f, starlike).passes;
        assert_eq!(
            general_starlike,
            starlike_order_passes(&f, alpha),
            "starlike verdict split on series {i}"
        );
        if general_starlike {
            starlike_passes += 1;
        } else {
            starlike_failures += 1;
        }

        let convex = ClassParams::real(alpha, 1.0, 1.0).unwrap();
        let general_convex = coefficient_sum(&f, convex).passes;
        assert_eq!(
            general_convex,
            convex_order_passes(&f, alpha),
            "convex verdict split on series {i}"
        );
        if general_convex {
            convex_passes += 1;
        } else {
            convex_failures += 1;
        }
    }
    // The agreement must be exercised from both sides.
    assert!(starlike_passes > 0 && starlike_failures > 0);
    assert!(convex_passes > 0 && convex_failures > 0);
    println!(
        "criterion 4 PASS: 1000 series, starlike verdicts {starlike_passes}/{starlike_failures} \
         (pass/fail), convex {convex_passes}/{convex_failures}, all matched"
    );
}

#[test]
fn criterion_5_members_respect_the_derived_bounds() {
    let mut checked_weighted = 0usize;
    for i in 0..1000usize {
        let params = sweep_real_params(i);
        let n_terms = 1 + i % 8;
        let fill = 0.25 + 0.75 * (i as f64 / 999.0);
        let f = random_member(params, n_terms, fill, 1000 + i as u64).unwrap();
        let (b1, b2) = aggregate_bounds(params).unwrap();

        let sum: f64 = f.terms().map(|(_, a)| a.norm()).sum();
        assert!(
            sum <= b1 + 1e-12,
            "member {i}: coefficient sum {sum} exceeds bound {b1}"
        );

        for (n, a) in f.terms() {
            let cap = coefficient_bound(n, params).unwrap();
            assert!(
                a.norm() <= cap + 1e-12,
                "member {i}: |a_{n}| = {} exceeds bound {cap}",
                a.norm()
            );
        }

        // The weighted-sum bound needs (1−α)|τ| ≤ 1; see below for a
        // witness that it genuinely fails outside that range.
        if (1.0 - params.alpha()) * params.tau_abs() <= 1.0 {
            let weighted: f64 = f.terms().map(|(n, a)| n as f64 * a.norm()).sum();
            assert!(
                weighted <= b2 + 1e-12,
                "member {i}: weighted sum {weighted} exceeds bound {b2}"
            );
            checked_weighted += 1;
        }
    }
    assert!(checked_weighted >= 400, "weighted-bound scope too thin");

    let wide = ClassParams::real(0.0, 0.0, 2.0).unwrap();
    let spike = extremal_function(3, wide, SignConvention::NegativeT).unwrap();
    let weighted: f64 = spike.terms().map(|(n, a)| n as f64 * a.norm()).sum();
    let (_, b2_wide) = aggregate_bounds(wide).unwrap();
    assert!(
        weighted > b2_wide + 0.1,
        "expected the weighted bound to fail at (1-alpha)|tau| = 2"
    );

    let spot = ClassParams::real(0.0, 0.0, 1.0).unwrap();
    assert_eq!(aggregate_bounds(spot).unwrap(), (0.5, 1.0));
    assert_eq!(coefficient_bound(2, spot).unwrap(), 0.5);

    println!(
        "criterion 5 PASS: 1000 members within aggregate and per-coefficient bounds \
         (weighted bound on the {checked_weighted} members with (1-alpha)|tau| <= 1, \
         failure outside that range witnessed), spot values exact"
    );
}

#[test]
fn criterion_6_classifier_round_trip() {
    let mut worst_duality = 0.0f64;
    for i in 0..500usize {
        let params = sweep_real_params(i);
        let n_terms = 1 + i % 8;
        let fill = 0.25 + 0.75 * (i as f64 / 499.0);
        let f = random_member(params, n_terms, fill, 2000 + i as u64).unwrap();

        let result = max_alpha(&f, params.beta(), params.tau_abs()).unwrap();
        assert!(result.feasible, "member {i} classified infeasible");
        let alpha_star = result.alpha_star.unwrap();
        assert!(alpha_star + 1e-6 < 1.0);

        let at_star = ClassParams::real(alpha_star, params.beta(), params.tau_abs()).unwrap();
        assert!(
            coefficient_sum(&f, at_star).passes,
            "member {i} fails at its own alpha_star"
        );
        let above = ClassParams::real(alpha_star + 1e-6, params.beta(), params.tau_abs()).unwrap();
        assert!(
            !coefficient_sum(&f, above).passes,
            "member {i} still passes just above alpha_star"
        );

        let dual = min_tau(&f, alpha_star, params.beta())
            .unwrap()
            .tau_star
            .unwrap();
        let gap = (dual - params.tau_abs()).abs();
        assert!(gap <= 1e-10, "member {i}: duality gap {gap:e}");
        worst_duality = worst_duality.max(gap);
    }

    let quarter = PowerSeries::negative_t(vec![0.25]).unwrap();
    let result = max_alpha(&quarter, 0.0, 1.0).unwrap();
    assert_eq!(result.alpha_star, Some(2.0 / 3.0));

    println!(
        "criterion 6 PASS: 500 round-trips, worst duality gap {worst_duality:.2e}, \
         alpha_star(a_2 = 1/4) = 2/3 exactly"
    );
}

#[test]
fn criterion_7_derivatives_and_limits() {
    // Finite-difference agreement on a deterministic family kept tame
    // enough that |f'| stays well away from zero.
    let mut worst_d1 = 0.0f64;
    let mut worst_d2 = 0.0f64;
    for i in 0..40usize {
        let params = sweep_real_params(i);
        let raw = if i % 2 == 0 {
            random_member(params, 1 + i % 6, 0.8, 3000 + i as u64).unwrap()
        } else {
            random_general_member(params, 1 + i % 6, 0.8, 3000 + i as u64).unwrap()
        };
        let mass: f64 = raw.terms().map(|(n, a)| n as f64 * a.norm()).sum();
        let scale = if mass > 0.4 { 0.4 / mass } else { 1.0 };
        let coeffs: Vec<Complex64> = raw.terms().map(|(_, a)| scale * a).collect();
        let f = PowerSeries::from_parts(raw.convention(), coeffs).unwrap();

        assert_eq!(
            tau_map(&f, params, DiskPoint::ORIGIN).unwrap(),
            Complex64::new(1.0, 0.0),
            "tau_map must be exactly 1 at the origin"
        );

        let z = DiskPoint::from_polar(0.3 + 0.012 * i as f64, 0.157 * i as f64).unwrap();
        let zv = z.value();

        let h = 1e-5;
        let plus = f.evaluate(DiskPoint::new(zv + h).unwrap());
        let minus = f.evaluate(DiskPoint::new(zv - h).unwrap());
        let d1 = f.evaluate_d1(z);
        let rel_d1 = ((plus - minus) / (2.0 * h) - d1).norm() / d1.norm();
        assert!(rel_d1 <= 1e-6, "series {i}: d1 relative error {rel_d1:e}");
        worst_d1 = worst_d1.max(rel_d1);

        let h = 1e-4;
        let plus = f.evaluate(DiskPoint::new(zv + h).unwrap());
        let minus = f.evaluate(DiskPoint::new(zv - h).unwrap());
        let center = f.evaluate(z);
        let d2 = f.evaluate_d2(z);
        let rel_d2 = ((plus - 2.0 * center + minus) / (h * h) - d2).norm() / (1.0 + d2.norm());
        assert!(rel_d2 <= 1e-6, "series {i}: d2 relative error {rel_d2:e}");
        worst_d2 = worst_d2.max(rel_d2);
    }

    // Real-axis values settle onto the closed-form boundary value with
    // monotone error decay (positive tau, so the limit is genuine).
    let mut worst_final_gap = 0.0f64;
    for i in 0..10usize {
        let alpha = ALPHAS[i % ALPHAS.len()];
        let beta = BETAS[i % BETAS.len()];
        let params = ClassParams::real(alpha, beta, TAU_MAGNITUDES[i % 3]).unwrap();
        let f = random_member(params, 1 + i % 5, 0.6, 4000 + i as u64).unwrap();
        let limit = boundary_limit(&f, params).unwrap();
        let mut previous = f64::INFINITY;
        let mut gap = f64::INFINITY;
        for k in 2..=6 {
            let r = 1.0 - 10f64.powi(-k);
            let z = DiskPoint::from_polar(r, 0.0).unwrap();
            gap = (tau_map(&f, params, z).unwrap().re - limit).abs();
            assert!(gap < previous, "series {i}: gap grew at k={k}");
            previous = gap;
        }
        assert!(gap < 1e-3, "series {i}: final gap {gap:e} still large");
        worst_final_gap = worst_final_gap.max(gap);
    }

    println!(
        "criterion 7 PASS: worst d1 error {worst_d1:.2e}, worst d2 error {worst_d2:.2e}, \
         boundary gaps decay monotonically (final gap <= {worst_final_gap:.2e})"
    );
}
