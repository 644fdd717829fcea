//! Frequency-response sweeps, phase extrema, and regime segmentation.
//!
//! The output impedance of a passive port keeps its phase inside
//! [-90, 90] degrees, so sweeping the phase and locating its extrema
//! gives an independent frequency-domain witness for the algebraic
//! passivity checks. The magnitude sweep additionally splits into three
//! slope regimes (inertia or virtual spring at low frequency, damping in
//! the middle, the physical spring at high frequency) whose crossover
//! frequencies summarize the rendered behavior.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::RenderTarget;
use crate::polyalg::{poly_eval_scale, RationalTransferFunction};

/// One point of a frequency sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BodeSample {
    /// Frequency in rad/s.
    pub w: f64,
    /// Magnitude in dB.
    pub magnitude_db: f64,
    /// Phase in degrees, unwrapped to be continuous along the sweep.
    pub phase_deg: f64,
}

/// Extreme phase values of a sweep, refined off the grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhaseExtrema {
    /// Largest unwrapped phase in degrees.
    pub max_phase_deg: f64,
    /// Frequency of the maximum in rad/s.
    pub argmax_w: f64,
    /// Smallest unwrapped phase in degrees.
    pub min_phase_deg: f64,
    /// Frequency of the minimum in rad/s.
    pub argmin_w: f64,
}

/// Three-regime split of a magnitude sweep.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegimeSegmentation {
    /// The two crossover frequencies, strictly increasing.
    pub boundaries: [f64; 2],
    /// Regime names from low to high frequency.
    pub labels: [&'static str; 3],
}

impl RegimeSegmentation {
    /// The regime name a frequency falls into.
    pub fn label_at(&self, w: f64) -> &'static str {
        if w < self.boundaries[0] {
            self.labels[0]
        } else if w < self.boundaries[1] {
            self.labels[1]
        } else {
            self.labels[2]
        }
    }
}

/// Relative magnitude below which an evaluation counts as sitting on a
/// root of the numerator or denominator.
const ROOT_COINCIDENCE_REL: f64 = 1e-12;

/// Sweeps a transfer function over a logarithmic frequency grid.
///
/// Samples are spaced `points_per_decade` per decade from `wmin` up, with
/// `wmax` itself appended as the final sample. A grid point that lands on
/// an imaginary-axis pole or zero is nudged by half a grid step so every
/// sample is finite. Phase is unwrapped cumulatively so adjacent samples
/// never jump by more than half a turn.
pub fn bode(
    tf: &RationalTransferFunction,
    wmin: f64,
    wmax: f64,
    points_per_decade: usize,
) -> Result<Vec<BodeSample>> {
    if !(wmin > 0.0 && wmax > wmin) {
        return Err(Error::InvalidParameter(format!(
            "frequency range must satisfy 0 < wmin < wmax, got [{wmin}, {wmax}]"
        )));
    }
    if points_per_decade == 0 {
        return Err(Error::InvalidParameter(
            "points_per_decade must be at least 1".into(),
        ));
    }

    let step = 10f64.powf(1.0 / points_per_decade as f64);
    let half_step = step.sqrt();
    let decades = (wmax / wmin).log10();
    let interior = (decades * points_per_decade as f64).ceil() as usize;

    let mut grid = Vec::with_capacity(interior + 1);
    for i in 0..interior {
        let w = wmin * 10f64.powf(i as f64 / points_per_decade as f64);
        if w < wmax * (1.0 - 1e-12) {
            grid.push(w);
        }
    }
    grid.push(wmax);

    let last = grid.len() - 1;
    let mut samples = Vec::with_capacity(grid.len());
    let mut prev_phase: Option<f64> = None;
    for (i, &w) in grid.iter().enumerate() {
        // Nudge away from axis roots: upward mid-step inside the grid,
        // downward for the final point so order is preserved.
        let mut wi = w;
        if on_axis_root(tf, wi) {
            wi = if i == last { w / half_step } else { w * half_step };
        }

        let n = tf.num().eval_complex(Complex64::new(0.0, wi));
        let d = tf.den().eval_complex(Complex64::new(0.0, wi));
        let magnitude_db = 20.0 * (n.norm().log10() - d.norm().log10());
        let principal = (n * d.conj()).arg().to_degrees();
        let phase_deg = match prev_phase {
            None => principal,
            Some(prev) => {
                let mut p = principal;
                while p - prev > 180.0 {
                    p -= 360.0;
                }
                while p - prev < -180.0 {
                    p += 360.0;
                }
                p
            }
        };
        prev_phase = Some(phase_deg);
        samples.push(BodeSample {
            w: wi,
            magnitude_db,
            phase_deg,
        });
    }
    Ok(samples)
}

fn on_axis_root(tf: &RationalTransferFunction, w: f64) -> bool {
    let s = Complex64::new(0.0, w);
    let num_low = tf.num().eval_complex(s).norm()
        <= ROOT_COINCIDENCE_REL * poly_eval_scale(tf.num(), s);
    let den_low = tf.den().eval_complex(s).norm()
        <= ROOT_COINCIDENCE_REL * poly_eval_scale(tf.den(), s);
    num_low || den_low
}

/// Locates the extreme phases of a sweep.
///
/// The discrete extrema are refined by a golden-section search between
/// their grid neighbors, down to a bracket a factor of about 1e-3 wide in
/// relative frequency, so the reported extremum does not depend on grid
/// alignment.
pub fn phase_extrema(
    tf: &RationalTransferFunction,
    samples: &[BodeSample],
) -> Result<PhaseExtrema> {
    if samples.is_empty() {
        return Err(Error::InvalidParameter(
            "phase extrema need at least one sample".into(),
        ));
    }

    let (imax, imin) = samples.iter().enumerate().fold((0, 0), |(ma, mi), (i, s)| {
        (
            if s.phase_deg > samples[ma].phase_deg { i } else { ma },
            if s.phase_deg < samples[mi].phase_deg { i } else { mi },
        )
    });

    let (max_phase_deg, argmax_w) = refine_extremum(tf, samples, imax, 1.0);
    let (min_phase_deg, argmin_w) = refine_extremum(tf, samples, imin, -1.0);
    Ok(PhaseExtrema {
        max_phase_deg,
        argmax_w,
        min_phase_deg,
        argmin_w,
    })
}

/// Golden-section refinement of a discrete phase extremum. `sign` is +1
/// to maximize, -1 to minimize.
fn refine_extremum(
    tf: &RationalTransferFunction,
    samples: &[BodeSample],
    i: usize,
    sign: f64,
) -> (f64, f64) {
    let anchor = &samples[i];
    // Phase reconstructed continuously near the anchor: principal values
    // drift by less than half a turn inside one grid cell, so wrapping
    // the difference to the anchor recovers the unwrapped branch.
    let anchor_principal = principal_phase(tf, anchor.w);
    let local = |w: f64| {
        let mut d = principal_phase(tf, w) - anchor_principal;
        while d > 180.0 {
            d -= 360.0;
        }
        while d < -180.0 {
            d += 360.0;
        }
        anchor.phase_deg + d
    };

    let lo = if i == 0 { anchor.w } else { samples[i - 1].w };
    let hi = if i + 1 == samples.len() {
        anchor.w
    } else {
        samples[i + 1].w
    };
    if lo == hi {
        return (anchor.phase_deg, anchor.w);
    }

    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (lo.ln(), hi.ln());
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (sign * local(c.exp()), sign * local(d.exp()));
    for _ in 0..60 {
        if b - a < 1e-3 {
            break;
        }
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = sign * local(c.exp());
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = sign * local(d.exp());
        }
    }
    let w_best = (0.5 * (a + b)).exp();
    let refined = local(w_best);
    // The grid value still wins if refinement did not improve on it.
    if sign * refined >= sign * anchor.phase_deg {
        (refined, w_best)
    } else {
        (anchor.phase_deg, anchor.w)
    }
}

fn principal_phase(tf: &RationalTransferFunction, w: f64) -> f64 {
    let s = Complex64::new(0.0, w);
    let n = tf.num().eval_complex(s);
    let d = tf.den().eval_complex(s);
    (n * d.conj()).arg().to_degrees()
}

/// Half-decade-scale smoothing window for local slope estimation, in
/// decades.
const SLOPE_WINDOW_DECADES: f64 = 0.1;

/// Splits a magnitude sweep into its three slope regimes.
///
/// The local log-log slope moves between +20, 0 and -20 dB/decade for
/// null rendering (inertia, damping, physical spring) and between -20, 0
/// and -20 for spring rendering (virtual spring, damping, physical
/// spring). Boundaries are placed where the smoothed slope crosses the
/// midpoint thresholds, +10 and -10 dB/decade, between adjacent regime
/// slopes.
pub fn segment_regimes(
    samples: &[BodeSample],
    target: &RenderTarget,
) -> Result<RegimeSegmentation> {
    if samples.len() < 3 {
        return Err(Error::InsufficientSpan(
            "regime segmentation needs at least three samples".into(),
        ));
    }

    let logw: Vec<f64> = samples.iter().map(|s| s.w.log10()).collect();
    let n = samples.len();
    let mean_spacing = (logw[n - 1] - logw[0]) / (n - 1) as f64;
    let half = ((SLOPE_WINDOW_DECADES / 2.0) / mean_spacing).round().max(1.0) as usize;

    let slope: Vec<f64> = (0..n)
        .map(|i| {
            let lo = i.saturating_sub(half);
            let hi = (i + half).min(n - 1);
            (samples[hi].magnitude_db - samples[lo].magnitude_db) / (logw[hi] - logw[lo])
        })
        .collect();

    let crossing = |i: usize, threshold: f64| -> f64 {
        let t = (threshold - slope[i]) / (slope[i + 1] - slope[i]);
        10f64.powf(logw[i] + t * (logw[i + 1] - logw[i]))
    };

    let (first, labels) = match target {
        RenderTarget::Null => {
            // Inertia to damping: slope falls through +10 dB/decade.
            let b1 = (0..n - 1)
                .find(|&i| slope[i] >= 10.0 && slope[i + 1] < 10.0)
                .map(|i| crossing(i, 10.0));
            (b1, ["inertial", "damping", "spring"])
        }
        RenderTarget::Spring { .. } => {
            // Virtual spring to damping: slope rises through -10 dB/decade.
            let b1 = (0..n - 1)
                .find(|&i| slope[i] <= -10.0 && slope[i + 1] > -10.0)
                .map(|i| crossing(i, -10.0));
            (b1, ["stiffness", "damping", "spring"])
        }
    };
    // Damping to physical spring: the last fall through -10 dB/decade.
    let second = (0..n - 1)
        .rev()
        .find(|&i| slope[i] >= -10.0 && slope[i + 1] < -10.0)
        .map(|i| crossing(i, -10.0));

    match (first, second) {
        (Some(b1), Some(b2)) if b1 < b2 => Ok(RegimeSegmentation {
            boundaries: [b1, b2],
            labels,
        }),
        (Some(b1), Some(b2)) => Err(Error::InsufficientSpan(format!(
            "regime boundaries out of order: {b1} >= {b2}; widen the sweep"
        ))),
        _ => Err(Error::InsufficientSpan(
            "sweep does not span both regime crossovers".into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{build_impedance, RenderTarget};
    use crate::nominal;
    use crate::polyalg::Polynomial;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn differentiator() -> RationalTransferFunction {
        RationalTransferFunction::new(Polynomial::new([0.0, 1.0]), Polynomial::constant(1.0))
            .unwrap()
    }

    fn reference_null() -> RationalTransferFunction {
        let (plant, gains) = (nominal::plant(), nominal::null_gains());
        build_impedance(&plant, &gains, &RenderTarget::Null).unwrap()
    }

    fn reference_spring() -> RationalTransferFunction {
        let (plant, gains) = (nominal::plant(), nominal::spring_gains());
        build_impedance(&plant, &gains, &RenderTarget::Spring { kd: nominal::SPRING_KD }).unwrap()
    }

    #[test]
    fn differentiator_sweep() {
        let samples = bode(&differentiator(), 1e-2, 1e2, 50).unwrap();
        for s in &samples {
            assert_abs_diff_eq!(s.phase_deg, 90.0, epsilon = 1e-9);
            assert_abs_diff_eq!(s.magnitude_db, 20.0 * s.w.log10(), epsilon = 1e-9);
        }
        assert!(samples.windows(2).all(|p| p[0].w < p[1].w));
        assert_relative_eq!(samples.last().unwrap().w, 1e2);
    }

    #[test]
    fn integrator_sweep() {
        let tf = RationalTransferFunction::new(
            Polynomial::constant(250.0),
            Polynomial::new([0.0, 1.0]),
        )
        .unwrap();
        let samples = bode(&tf, 1e-1, 1e3, 40).unwrap();
        for s in &samples {
            assert_abs_diff_eq!(s.phase_deg, -90.0, epsilon = 1e-9);
            assert_abs_diff_eq!(s.magnitude_db, 20.0 * (250.0 / s.w).log10(), epsilon = 1e-9);
        }
    }

    #[test]
    fn rejects_degenerate_ranges() {
        let tf = differentiator();
        assert!(bode(&tf, 0.0, 10.0, 10).is_err());
        assert!(bode(&tf, 10.0, 10.0, 10).is_err());
        assert!(bode(&tf, 1.0, 10.0, 0).is_err());
    }

    #[test]
    fn axis_pole_grid_point_is_nudged() {
        // Undamped resonator with poles at exactly 1 rad/s sits on the
        // sweep grid; the sample must move, not blow up.
        let tf = RationalTransferFunction::new(
            Polynomial::constant(1.0),
            Polynomial::new([1.0, 0.0, 1.0]),
        )
        .unwrap();
        let samples = bode(&tf, 1e-1, 1e1, 10).unwrap();
        assert!(samples.iter().all(|s| s.magnitude_db.is_finite()));
        assert!(samples.iter().all(|s| (s.w - 1.0).abs() > 1e-6));
        assert!(samples.windows(2).all(|p| p[0].w < p[1].w));
    }

    #[test]
    fn unwrapped_phase_has_no_big_jumps() {
        let samples = bode(&reference_spring(), 1e-3, 1e6, 200).unwrap();
        for pair in samples.windows(2) {
            assert!((pair[1].phase_deg - pair[0].phase_deg).abs() <= 180.0);
        }
    }

    #[test]
    fn null_impedance_slope_regimes() {
        let samples = bode(&reference_null(), 1e-3, 1e6, 200).unwrap();
        let seg = segment_regimes(&samples, &RenderTarget::Null).unwrap();
        assert!(seg.boundaries[0] < seg.boundaries[1]);
        assert_eq!(seg.labels, ["inertial", "damping", "spring"]);
        assert_eq!(seg.label_at(seg.boundaries[0] / 10.0), "inertial");
        assert_eq!(seg.label_at(seg.boundaries[1] * 10.0), "spring");

        // High band follows the physical spring line K/s within 1%.
        let high = samples.iter().find(|s| s.w >= 100.0 * seg.boundaries[1]).unwrap();
        let spring_db = 20.0 * (250.0 / high.w).log10();
        let level_ratio = 10f64.powf((high.magnitude_db - spring_db) / 20.0);
        assert!((level_ratio - 1.0).abs() < 0.01);
    }

    #[test]
    fn spring_impedance_low_band_renders_virtual_stiffness() {
        let tf = reference_spring();
        let z = tf.eval(num_complex::Complex64::new(0.0, 1e-3));
        assert_relative_eq!(z.norm(), nominal::SPRING_KD / 1e-3, max_relative = 1e-2);

        let samples = bode(&tf, 1e-3, 1e6, 200).unwrap();
        let seg = segment_regimes(&samples, &RenderTarget::Spring { kd: nominal::SPRING_KD })
            .unwrap();
        assert_eq!(seg.labels, ["stiffness", "damping", "spring"]);
        assert!(seg.boundaries[0] < seg.boundaries[1]);
    }

    #[test]
    fn narrow_sweep_cannot_be_segmented() {
        let samples = bode(&reference_null(), 1.0, 2.0, 200).unwrap();
        assert!(matches!(
            segment_regimes(&samples, &RenderTarget::Null),
            Err(Error::InsufficientSpan(_))
        ));
    }

    #[test]
    fn constant_phase_extrema() {
        let tf = differentiator();
        let samples = bode(&tf, 1e-2, 1e2, 50).unwrap();
        let ext = phase_extrema(&tf, &samples).unwrap();
        assert_abs_diff_eq!(ext.max_phase_deg, 90.0, epsilon = 1e-9);
        assert_abs_diff_eq!(ext.min_phase_deg, 90.0, epsilon = 1e-9);
    }

    #[test]
    fn passive_tuning_stays_inside_the_phase_band() {
        let plant = nominal::plant();
        let tf = build_impedance(&plant, &nominal::damped_ok_gains(), &RenderTarget::Null).unwrap();
        let samples = bode(&tf, 1e-3, 1e6, 200).unwrap();
        let ext = phase_extrema(&tf, &samples).unwrap();
        assert!(ext.max_phase_deg <= 90.0 + 1e-6);
        assert!(ext.min_phase_deg >= -90.0 - 1e-6);
    }

    #[test]
    fn violating_tuning_exceeds_ninety_degrees() {
        let plant = nominal::plant();
        let tf =
            build_impedance(&plant, &nominal::damped_violating_gains(), &RenderTarget::Null)
                .unwrap();
        let samples = bode(&tf, 1e-3, 1e6, 200).unwrap();
        let ext = phase_extrema(&tf, &samples).unwrap();
        assert!(ext.max_phase_deg > 90.5);
        assert!(ext.argmax_w > 0.0);
    }

    #[test]
    fn extrema_stable_under_grid_refinement() {
        let tf = reference_spring();
        let coarse = phase_extrema(&tf, &bode(&tf, 1e-3, 1e6, 200).unwrap()).unwrap();
        let fine = phase_extrema(&tf, &bode(&tf, 1e-3, 1e6, 400).unwrap()).unwrap();
        assert_relative_eq!(coarse.max_phase_deg, fine.max_phase_deg, max_relative = 1e-4);
        assert_relative_eq!(coarse.min_phase_deg, fine.min_phase_deg, max_relative = 1e-4);
    }
}
