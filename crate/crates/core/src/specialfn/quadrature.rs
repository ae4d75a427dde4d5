//! Globally adaptive Gauss-Kronrod (7, 15) quadrature.
//!
//! Every panel is integrated with the 15-point Kronrod rule and its embedded
//! 7-point Gauss rule. The panel error is the raw difference `|K15 - G7|`
//! (no QUADPACK-style rescaling), floored at a round-off bound and, after a
//! bisection, at half the change the bisection made to the panel value. The
//! panel with the largest error is bisected until the total error drops
//! below the requested tolerance.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

/// Upper bound on the number of live panels before giving up.
pub const MAX_PANELS: usize = 20_000;

/// Relative round-off floor applied per panel (times the panel's `int |f|`).
const ROUNDOFF_FLOOR: f64 = 50.0 * f64::EPSILON;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

// Gauss weights for the nodes XGK[1], XGK[3], XGK[5] and the centre.
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Outcome of a quadrature call.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gauss_kronrod<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Result<Panel> {
    let centre = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(centre);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    let mut abs_sum = WGK[7] * fc.abs();
    for i in 0..7 {
        let dx = half * XGK[i];
        let f1 = f(centre - dx);
        let f2 = f(centre + dx);
        kronrod += WGK[i] * (f1 + f2);
        abs_sum += WGK[i] * (f1.abs() + f2.abs());
        if i % 2 == 1 {
            gauss += WG[i / 2] * (f1 + f2);
        }
    }
    let value = kronrod * half;
    if !value.is_finite() {
        return Err(Error::domain(format!(
            "integrand is not finite on [{a}, {b}]"
        )));
    }
    let error = ((kronrod - gauss) * half)
        .abs()
        .max(ROUNDOFF_FLOOR * abs_sum * half.abs());
    Ok(Panel { a, b, value, error })
}

/// Integrates `f` over `[a, b]` to absolute tolerance `tol`.
pub fn integrate_adaptive<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<QuadratureResult> {
    integrate_with_breaks(f, &[a, b], tol)
}

/// Like [`integrate_adaptive`] but starts from the panels delimited by
/// `breaks` (sorted, at least two entries). Interior break points are where
/// the caller knows the integrand varies quickly.
pub fn integrate_with_breaks<F: Fn(f64) -> f64>(f: F, breaks: &[f64], tol: f64) -> Result<QuadratureResult> {
    if breaks.len() < 2 {
        return Err(Error::domain("need at least two break points"));
    }
    if !(tol > 0.0) {
        return Err(Error::domain(format!("tolerance must be positive, got {tol}")));
    }
    if breaks.iter().any(|b| !b.is_finite()) {
        return Err(Error::domain("integration limits must be finite"));
    }
    if breaks.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::domain("break points must be sorted"));
    }

    let mut heap = BinaryHeap::new();
    let mut evaluations = 0;
    for w in breaks.windows(2) {
        if w[1] > w[0] {
            heap.push(gauss_kronrod(&f, w[0], w[1])?);
            evaluations += 15;
        }
    }
    if heap.is_empty() {
        return Ok(QuadratureResult {
            value: 0.0,
            error_estimate: 0.0,
            evaluations: 0,
        });
    }

    let mut total_error: f64 = heap.iter().map(|p| p.error).sum();
    loop {
        if total_error <= tol {
            break;
        }
        if heap.len() >= MAX_PANELS {
            let value = heap.iter().map(|p| p.value).sum();
            return Err(Error::accuracy(
                format!(
                    "adaptive quadrature did not converge within {MAX_PANELS} panels \
                     (error estimate {total_error:e}, tolerance {tol:e})"
                ),
                value,
            ));
        }
        let worst = heap.pop().expect("heap is non-empty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // The panel cannot be split further in floating point.
            heap.push(worst);
            let value = heap.iter().map(|p| p.value).sum();
            return Err(Error::accuracy(
                format!("panel [{}, {}] cannot be bisected further", worst.a, worst.b),
                value,
            ));
        }
        let mut left = gauss_kronrod(&f, worst.a, mid)?;
        let mut right = gauss_kronrod(&f, mid, worst.b)?;
        evaluations += 30;
        // A refinement that moves the value by more than the children claim
        // means the children's rule pair is still pre-asymptotic.
        let shift = 0.5 * (worst.value - left.value - right.value).abs();
        left.error = left.error.max(shift);
        right.error = right.error.max(shift);
        total_error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        if total_error <= tol {
            // Running sums drift; confirm before stopping.
            total_error = heap.iter().map(|p| p.error).sum();
        }
    }

    let mut panels = heap.into_vec();
    panels.sort_by(|p, q| p.a.total_cmp(&q.a));
    Ok(QuadratureResult {
        value: panels.iter().map(|p| p.value).sum(),
        error_estimate: panels.iter().map(|p| p.error).sum(),
        evaluations,
    })
}

/// Integrates `f` over `[a, infinity)` given `|f(s)| <= C exp(-decay_rate (s - a))`.
///
/// `C` is estimated from a handful of samples; the range is truncated where
/// the tail bound drops below `tol / 10`.
pub fn integrate_damped_tail<F: Fn(f64) -> f64>(f: F, a: f64, decay_rate: f64, tol: f64) -> Result<QuadratureResult> {
    integrate_damped_tail_with_scale(f, a, decay_rate, tol, None)
}

/// Variant of [`integrate_damped_tail`] that also refines the initial panels
/// geometrically near `a` down to `inner_scale`, for integrands with a narrow
/// feature at the lower limit.
pub fn integrate_damped_tail_with_scale<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    decay_rate: f64,
    tol: f64,
    inner_scale: Option<f64>,
) -> Result<QuadratureResult> {
    if !(decay_rate > 0.0) || !decay_rate.is_finite() {
        return Err(Error::domain(format!(
            "decay rate must be positive and finite, got {decay_rate}"
        )));
    }
    if !(tol > 0.0) {
        return Err(Error::domain(format!("tolerance must be positive, got {tol}")));
    }
    let unit = 1.0 / decay_rate;
    let bound = [0.0, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0]
        .iter()
        .map(|k| {
            let s = a + k * unit;
            f(s).abs() * (k * 1.0f64).exp()
        })
        .fold(f64::MIN_POSITIVE, f64::max);
    if !bound.is_finite() {
        return Err(Error::domain("integrand is not finite on the sampled tail"));
    }
    let length = ((10.0 * bound / (decay_rate * tol)).ln().max(1.0) + 2.0) * unit;

    let mut breaks = vec![a];
    if let Some(scale) = inner_scale {
        let mut w = scale.max(length * 1e-12);
        while w < length.min(unit) {
            breaks.push(a + w);
            w *= 2.0;
        }
    }
    let mut w = unit;
    while w < length {
        if w > *breaks.last().unwrap() - a {
            breaks.push(a + w);
        }
        w *= 2.0;
    }
    breaks.push(a + length);
    integrate_with_breaks(f, &breaks, tol)
}
