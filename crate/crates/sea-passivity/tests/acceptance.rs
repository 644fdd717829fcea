//! End-to-end acceptance checks, one test per criterion.
//!
//! Each test prints a single summary line, `criterion N: PASS - ...` or
//! `criterion N: FAIL - ...`, before asserting, so a full run (with
//! `--nocapture`) reads as a checklist. Two criteria are currently
//! expected to fail and are left failing on purpose; their summary lines
//! state the measured values so the gap is visible, and README.md points
//! here. Hiding the mismatch behind loosened tolerances would defeat the
//! point of an acceptance suite.

use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sea_passivity::bounds::{
    b_max, guideline_by_name, j_max_null, j_max_spring, kd_max, Bound, StiffnessBound,
};
use sea_passivity::freq::{bode, phase_extrema};
use sea_passivity::model::{
    assemble_block_diagram, build_impedance, build_null_impedance, build_spring_impedance,
};
use sea_passivity::nominal;
use sea_passivity::passivity::{
    agreement_sweep, check_closed_form, check_numeric, SweepConfig, SweepTargetKind,
};
use sea_passivity::{ControllerGains, PlantParams, RenderTarget};

fn log_uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    rng.random_range(lo.ln()..hi.ln()).exp()
}

fn plant(j: f64, b: f64, k: f64) -> PlantParams {
    PlantParams { j, b, k }
}

fn gains(pm: f64, im: f64, pt: f64, it: f64) -> ControllerGains {
    ControllerGains { pm, im, pt, it }
}

/// The two sweeps of criterion 1; criterion 5 runs over the same samples.
fn criterion_1_sweeps() -> (SweepConfig, SweepConfig) {
    (
        SweepConfig::new(SweepTargetKind::Null, 10_000, 2001),
        SweepConfig::new(SweepTargetKind::Spring, 10_000, 2002),
    )
}

#[test]
fn criterion_1_routes_agree_on_large_random_sweeps() {
    let t0 = Instant::now();
    let (null_cfg, spring_cfg) = criterion_1_sweeps();
    let null = agreement_sweep(&null_cfg).unwrap();
    let spring = agreement_sweep(&spring_cfg).unwrap();
    let elapsed = t0.elapsed().as_secs_f64();

    let ok = null.disagreements.is_empty() && spring.disagreements.is_empty() && elapsed < 60.0;
    println!(
        "criterion 1: {} - {} null + {} spring samples, {} disagreements, \
         {} marginal excluded, {elapsed:.1} s",
        if ok { "PASS" } else { "FAIL" },
        null.samples,
        spring.samples,
        null.disagreements.len() + spring.disagreements.len(),
        null.excluded_marginal + spring.excluded_marginal,
    );
    assert!(null.disagreements.is_empty(), "{:?}", null.disagreements.first());
    assert!(spring.disagreements.is_empty(), "{:?}", spring.disagreements.first());
    assert!(elapsed < 60.0, "sweep took {elapsed:.1} s");
}

#[test]
fn criterion_2_damping_counterexample_reproduction() {
    let t0 = Instant::now();
    let p = nominal::plant();

    let peak = |g: &ControllerGains| {
        let tf = build_impedance(&p, g, &RenderTarget::Null).unwrap();
        let samples = bode(&tf, 1e-3, 1e6, 200).unwrap();
        phase_extrema(&tf, &samples).unwrap().max_phase_deg
    };
    let peak_ok = peak(&nominal::damped_ok_gains());
    let peak_violating = peak(&nominal::damped_violating_gains());
    let elapsed = t0.elapsed().as_secs_f64();

    let first = peak_ok <= 90.000001;
    let second = (93.2..=93.8).contains(&peak_violating);
    let ok = first && second && elapsed < 1.0;
    println!(
        "criterion 2: {} - peak phase {peak_ok:.6} deg within bound at the lower \
         torque integral gain; {peak_violating:.6} deg at the higher one, expected \
         band [93.2, 93.8], {elapsed:.2} s",
        if ok { "PASS" } else { "FAIL" },
    );
    assert!(first, "peak phase {peak_ok} exceeds 90.000001 deg");
    assert!(elapsed < 1.0, "took {elapsed:.2} s");
    assert!(
        second,
        "peak phase {peak_violating} deg outside [93.2, 93.8]; the violation is real \
         but tops out at about 92.65 deg on this exact impedance"
    );
}

/// Bisects the boundary of the set where `passive_at` holds, assuming it
/// holds at `lo` and fails at `hi`.
fn bisect(mut lo: f64, mut hi: f64, passive_at: impl Fn(f64) -> bool) -> f64 {
    assert!(passive_at(lo), "search bracket not passive at its low end");
    assert!(!passive_at(hi), "search bracket still passive at its high end");
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if passive_at(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

#[test]
fn criterion_3_searched_boundaries_match_bound_formulas() {
    let t0 = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(3003);
    // Worst relative error per bound: damping, free inertia, stiffness,
    // spring inertia.
    let mut worst = [0.0f64; 4];

    for _ in 0..100 {
        let g = gains(
            log_uniform(&mut rng, 1e-1, 1e2),
            log_uniform(&mut rng, 1e-1, 1e2),
            log_uniform(&mut rng, 1e-1, 1e2),
            log_uniform(&mut rng, 1e-1, 1e2),
        );
        let k = log_uniform(&mut rng, 1e0, 1e3);
        let Bound::Finite(b_limit) = b_max(&g) else { unreachable!() };
        let b = 0.3 * b_limit;
        // Light enough to stay passive across the whole damping bracket.
        let j = 0.4 * j_max_null(0.0, &g).value().unwrap();
        let StiffnessBound::Limit(kd_limit) = kd_max(&plant(j, b, k), &g) else {
            unreachable!("damping below its bound leaves a renderable stiffness range")
        };
        let kd_mid = 0.5 * kd_limit;
        let j_limit = j_max_null(b, &g).value().unwrap();
        let j_spring_limit = j_max_spring(b, &g, k, kd_mid).unwrap().value().unwrap();

        let passive = |p: &PlantParams, target: &RenderTarget| {
            let tf = build_impedance(p, &g, target).unwrap();
            check_numeric(&tf).unwrap().passive
        };

        let found_b = bisect(0.0, 2.0 * b_limit, |bb| {
            passive(&plant(j, bb, k), &RenderTarget::Null)
        });
        let found_j = bisect(1e-9 * j_limit, 2.0 * j_limit, |jj| {
            passive(&plant(jj, b, k), &RenderTarget::Null)
        });
        let found_kd = bisect(0.0, k, |kd| {
            passive(&plant(j, b, k), &RenderTarget::Spring { kd })
        });
        let found_j_spring = bisect(1e-9 * j_spring_limit, 2.0 * j_spring_limit, |jj| {
            passive(&plant(jj, b, k), &RenderTarget::Spring { kd: kd_mid })
        });

        for (slot, (found, formula)) in [
            (found_b, b_limit),
            (found_j, j_limit),
            (found_kd, kd_limit),
            (found_j_spring, j_spring_limit),
        ]
        .into_iter()
        .enumerate()
        {
            worst[slot] = worst[slot].max((found - formula).abs() / formula);
        }
    }
    let elapsed = t0.elapsed().as_secs_f64();

    let max_err = worst.iter().fold(0.0f64, |m, &e| m.max(e));
    let ok = max_err <= 1e-3 && elapsed < 30.0;
    println!(
        "criterion 3: {} - worst relative gap formula vs search: damping {:.1e}, \
         inertia {:.1e}, stiffness {:.1e}, spring inertia {:.1e}, {elapsed:.1} s",
        if ok { "PASS" } else { "FAIL" },
        worst[0],
        worst[1],
        worst[2],
        worst[3],
    );
    assert!(max_err <= 1e-3, "worst relative error {max_err:.3e}");
    assert!(elapsed < 30.0, "took {elapsed:.1} s");
}

#[test]
fn criterion_4_reference_fixtures() {
    let p = nominal::plant();

    // Null rendering fixture.
    let ng = nominal::null_gains();
    assert!(check_closed_form(&p, &ng, &RenderTarget::Null).passive);
    let Bound::Finite(b_limit) = b_max(&ng) else { unreachable!() };
    let b_exact = b_limit == 10.0;
    let j_limit = j_max_null(p.b, &ng).value().unwrap();
    let j_err = (j_limit - 2323.0 / 150.0).abs() / (2323.0 / 150.0);

    // Spring rendering fixture.
    let sg = nominal::spring_gains();
    let target = RenderTarget::Spring { kd: nominal::SPRING_KD };
    assert!(check_closed_form(&p, &sg, &target).passive);
    let kd_limit = kd_max(&p, &sg).value().unwrap();
    let kd_err = (kd_limit - 74_625_000.0 / 1_073_500.0).abs() / (74_625_000.0 / 1_073_500.0);

    let tf = build_spring_impedance(&p, &sg, nominal::SPRING_KD).unwrap();
    let residue = tf.residue_at(Complex64::new(0.0, 0.0)).unwrap();
    let residue_err = (residue - Complex64::new(10.0, 0.0)).norm();

    let ok = b_exact && j_err <= 1e-12 && kd_err <= 1e-12 && residue_err <= 1e-9;
    println!(
        "criterion 4: {} - damping limit {b_limit} (exact), inertia limit off by \
         {j_err:.1e}, stiffness limit off by {kd_err:.1e}, origin residue \
         {:.1} vs expected 10",
        if ok { "PASS" } else { "FAIL" },
        residue.re,
    );
    assert!(b_exact, "damping limit {b_limit} is not exactly 10");
    assert!(j_err <= 1e-12, "inertia limit relative error {j_err:.3e}");
    assert!(kd_err <= 1e-12, "stiffness limit relative error {kd_err:.3e}");
    assert!(
        residue_err <= 1e-9,
        "origin residue {residue} vs expected 10: the low-frequency asymptote of \
         this impedance is Kd/s, so the residue equals the rendered stiffness 50"
    );
}

#[test]
fn criterion_5_published_guidelines_never_outrun_the_exact_conditions() {
    let t0 = Instant::now();
    let (null_cfg, spring_cfg) = criterion_1_sweeps();
    let vallery = guideline_by_name("vallery").unwrap();
    let accoto = guideline_by_name("accoto").unwrap();

    let mut vallery_violations = 0usize;
    let mut accoto_violations = 0usize;
    let mut example = None;
    for cfg in [&null_cfg, &spring_cfg] {
        for (p, g, target) in cfg.configurations() {
            let exact = check_closed_form(&p, &g, &target);
            if exact.passive {
                continue;
            }
            if vallery.evaluate(&p, &g, &target).unwrap().passed {
                vallery_violations += 1;
                example.get_or_insert((p, g, target));
            }
            if accoto.evaluate(&p, &g, &target).unwrap().passed {
                accoto_violations += 1;
            }
        }
    }
    let elapsed = t0.elapsed().as_secs_f64();

    let ok = vallery_violations == 0 && accoto_violations == 0;
    println!(
        "criterion 5: {} - over the criterion 1 samples, gain-ratio rule accepted \
         {vallery_violations} non-passive configurations, inertia-ratio rule \
         {accoto_violations}, {elapsed:.1} s",
        if ok { "PASS" } else { "FAIL" },
    );
    assert_eq!(accoto_violations, 0);
    assert_eq!(
        vallery_violations, 0,
        "the gain-ratio rule has no damping condition, so heavily damped samples \
         slip through; first example: {example:?}"
    );
}

#[test]
fn criterion_6_degenerate_families() {
    let mut rng = ChaCha8Rng::seed_from_u64(6006);

    // Pure proportional control renders null passively for any plant.
    for _ in 0..100 {
        let p = plant(
            log_uniform(&mut rng, 1e-2, 1e3),
            log_uniform(&mut rng, 1e-2, 1e3),
            log_uniform(&mut rng, 1e-2, 1e3),
        );
        let g = gains(
            log_uniform(&mut rng, 1e-2, 1e3),
            0.0,
            log_uniform(&mut rng, 1e-2, 1e3),
            0.0,
        );
        assert!(check_closed_form(&p, &g, &RenderTarget::Null).passive, "{p:?}");
        let tf = build_null_impedance(&p, &g).unwrap();
        assert!(check_numeric(&tf).unwrap().passive, "{p:?}");
    }

    // Without the velocity integrator no positive stiffness is renderable.
    for _ in 0..100 {
        let p = plant(
            log_uniform(&mut rng, 1e-2, 1e3),
            log_uniform(&mut rng, 1e-2, 1e3),
            log_uniform(&mut rng, 1e-2, 1e3),
        );
        let g = gains(
            log_uniform(&mut rng, 1e-2, 1e3),
            0.0,
            log_uniform(&mut rng, 1e-2, 1e3),
            log_uniform(&mut rng, 1e-2, 1e3),
        );
        let kd = rng.random_range(1e-3f64..2.0) * p.k;
        let target = RenderTarget::Spring { kd };
        assert!(!check_closed_form(&p, &g, &target).passive, "{p:?} Kd = {kd}");
        let tf = build_spring_impedance(&p, &g, kd).unwrap();
        assert!(!check_numeric(&tf).unwrap().passive, "{p:?} Kd = {kd}");
    }

    // A zero-stiffness spring target is the null target, verdict for verdict.
    for _ in 0..100 {
        let p = plant(
            log_uniform(&mut rng, 1e-2, 1e3),
            log_uniform(&mut rng, 1e-2, 1e3),
            log_uniform(&mut rng, 1e-2, 1e3),
        );
        let g = gains(
            log_uniform(&mut rng, 1e-2, 1e3),
            log_uniform(&mut rng, 1e-2, 1e3),
            log_uniform(&mut rng, 1e-2, 1e3),
            log_uniform(&mut rng, 1e-2, 1e3),
        );
        let as_spring = check_closed_form(&p, &g, &RenderTarget::Spring { kd: 0.0 });
        let as_null = check_closed_form(&p, &g, &RenderTarget::Null);
        assert_eq!(as_spring, as_null);
        let numeric_spring = check_numeric(&build_spring_impedance(&p, &g, 0.0).unwrap()).unwrap();
        let numeric_null = check_numeric(&build_null_impedance(&p, &g).unwrap()).unwrap();
        assert_eq!(numeric_spring, numeric_null);
    }

    println!(
        "criterion 6: PASS - 100 proportional-only null cases passive, 100 \
         integrator-free spring cases not passive, 100 zero-stiffness verdicts \
         identical to null"
    );
}

#[test]
fn criterion_7_assembled_diagram_matches_closed_forms() {
    let mut rng = ChaCha8Rng::seed_from_u64(7007);
    let mut worst = 0.0f64;
    for i in 0..1000 {
        let p = plant(
            log_uniform(&mut rng, 1e-2, 1e3),
            log_uniform(&mut rng, 1e-2, 1e3),
            log_uniform(&mut rng, 1e-2, 1e3),
        );
        let g = gains(
            log_uniform(&mut rng, 1e-2, 1e3),
            log_uniform(&mut rng, 1e-2, 1e3),
            log_uniform(&mut rng, 1e-2, 1e3),
            log_uniform(&mut rng, 1e-2, 1e3),
        );
        let target = if i % 2 == 0 {
            RenderTarget::Null
        } else {
            RenderTarget::Spring { kd: rng.random_range(0.0f64..2.0) * p.k }
        };
        let assembled = assemble_block_diagram(&p, &g, &target).unwrap();
        let closed = build_impedance(&p, &g, &target).unwrap();
        for (a, c) in [
            (assembled.num(), closed.num()),
            (assembled.den(), closed.den()),
        ] {
            assert_eq!(a.degree(), c.degree(), "{p:?} {g:?} {target:?}");
            let scale = c.coeffs().iter().fold(0.0f64, |m, &x| m.max(x.abs()));
            for (x, y) in a.coeffs().iter().zip(c.coeffs()) {
                let err = (x - y).abs() / scale;
                worst = worst.max(err);
                assert!(err <= 1e-9, "coefficient gap {err:.3e} at {p:?} {g:?} {target:?}");
            }
        }
    }
    println!(
        "criterion 7: PASS - 1000 assembled diagrams match the closed-form \
         coefficients, worst relative gap {worst:.1e}"
    );
}

#[test]
fn criterion_8_accepted_configurations_keep_phase_inside_ninety_degrees() {
    let t0 = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(8008);
    let mut accepted = 0usize;
    let mut drawn = 0usize;
    let mut worst_over = f64::NEG_INFINITY;
    let mut worst_under = f64::INFINITY;

    while accepted < 1000 {
        drawn += 1;
        assert!(drawn < 500_000, "only {accepted} accepted configurations found");
        let p = plant(
            log_uniform(&mut rng, 1e-2, 1e3),
            log_uniform(&mut rng, 1e-2, 1e3),
            log_uniform(&mut rng, 1e-2, 1e3),
        );
        let g = gains(
            log_uniform(&mut rng, 1e-2, 1e3),
            log_uniform(&mut rng, 1e-2, 1e3),
            log_uniform(&mut rng, 1e-2, 1e3),
            log_uniform(&mut rng, 1e-2, 1e3),
        );
        let target = if drawn % 2 == 0 {
            RenderTarget::Null
        } else {
            RenderTarget::Spring { kd: rng.random_range(0.0f64..2.0) * p.k }
        };
        let verdict = check_closed_form(&p, &g, &target);
        if !verdict.passive || verdict.marginal {
            continue;
        }
        accepted += 1;

        let tf = build_impedance(&p, &g, &target).unwrap();
        let samples = bode(&tf, 1e-3, 1e6, 200).unwrap();
        let extrema = phase_extrema(&tf, &samples).unwrap();
        worst_over = worst_over.max(extrema.max_phase_deg);
        worst_under = worst_under.min(extrema.min_phase_deg);
        assert!(
            extrema.max_phase_deg <= 90.0 + 1e-6,
            "accepted {p:?} {g:?} {target:?} peaks at {} deg",
            extrema.max_phase_deg
        );
        assert!(
            extrema.min_phase_deg >= -90.0 - 1e-6,
            "accepted {p:?} {g:?} {target:?} dips to {} deg",
            extrema.min_phase_deg
        );
    }
    let elapsed = t0.elapsed().as_secs_f64();
    println!(
        "criterion 8: PASS - 1000 accepted configurations (of {drawn} drawn) stay \
         within [{worst_under:.4}, {worst_over:.4}] deg, {elapsed:.1} s"
    );
}
