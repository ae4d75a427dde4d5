//! Vacuum energy density `T00(x)` of a massless scalar field on the star.
//!
//! `T00(x)` is `-1/2` times the coefficient of `t` in the small-`t` expansion
//! of the cylinder kernel diagonal, after removing the free term `1/(pi t)`.
//! In closed form
//!
//! ```text
//! T00(x) = (1 - 2/N)/(8 pi x^2) + alpha/(2 pi N^2 x)
//!          + (alpha^2/(pi N^3)) exp(2 alpha x/N) Ei(-2 alpha x/N)
//! ```
//!
//! Two numerical routes are provided next to it: Richardson extraction of
//! the linear coefficient of the cylinder kernel, and the Laplace-damped
//! integral of the subtracted local density extrapolated to zero damping.

use std::f64::consts::{FRAC_1_PI, PI};

use crate::domain::{EdgePoint, StarGraphConfig, VertexCondition};
use crate::error::{Error, Result};
use crate::kernels::cylinder_kernel;
use crate::specialfn::{expint_e1_scaled, extract_linear_coefficient_with_floor, extrapolate_to_zero, integrate_with_breaks};
use crate::spectral::local_spectral_density;

/// Largest `t`, in units of [`ladder_scale`], used for the linear-coefficient
/// extraction. The ladder halves four times from here.
pub const EXTRACTION_TOP: f64 = 0.05;

/// Largest damping, in units of [`ladder_scale`], for the density route.
pub const DAMPING_TOP: f64 = 0.1;

/// Absolute tolerance of each damped density integral.
const DENSITY_TOL: f64 = 1e-11;

/// How a value of `T00` was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EnergyRoute {
    ClosedForm,
    SmallTExtraction,
    SubtractedDensity,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyDensityValue {
    pub value: f64,
    pub route: EnergyRoute,
}

fn check_x(x: f64) -> Result<()> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain(format!(
            "the energy density is singular at the vertex; need x > 0, got {x}"
        )));
    }
    Ok(())
}

/// Closed form of `T00(x)`; `1/(8 pi x^2)` for the Dirichlet vertex.
pub fn energy_density_closed(graph: &StarGraphConfig, x: f64) -> Result<f64> {
    check_x(x)?;
    let n = graph.n();
    match graph.condition() {
        VertexCondition::Dirichlet => Ok(1.0 / (8.0 * PI * x * x)),
        VertexCondition::Kirchhoff => Ok((1.0 - 2.0 / n) / (8.0 * PI * x * x)),
        VertexCondition::ExnerSeba { alpha } => {
            // exp(u) Ei(-u) = -exp(u) E1(u).
            let u = 2.0 * alpha * x / n;
            let scaled = expint_e1_scaled(u)?;
            Ok((1.0 - 2.0 / n) / (8.0 * PI * x * x) + alpha / (2.0 * PI * n * n * x)
                - alpha * alpha / (PI * n * n * n) * scaled)
        }
    }
}

/// Small-`alpha x` form:
/// `(1 - 2/N)/(8 pi x^2) + alpha/(2 pi N^2 x) + (alpha^2/(pi N^3)) ln(alpha x)`.
///
/// The expansion of `exp(u) Ei(-u)` also has a constant `gamma + ln(2/N)`
/// next to `ln(alpha x)`; it is part of the `O(alpha^2)` remainder here.
pub fn energy_density_near(graph: &StarGraphConfig, x: f64) -> Result<f64> {
    check_x(x)?;
    let n = graph.n();
    match graph.condition() {
        VertexCondition::Dirichlet => Err(Error::domain(
            "the small alpha x expansion does not apply to the Dirichlet vertex",
        )),
        VertexCondition::Kirchhoff => Ok((1.0 - 2.0 / n) / (8.0 * PI * x * x)),
        VertexCondition::ExnerSeba { alpha } => Ok((1.0 - 2.0 / n) / (8.0 * PI * x * x)
            + alpha / (2.0 * PI * n * n * x)
            + alpha * alpha / (PI * n * n * n) * (alpha * x).ln()),
    }
}

/// Large-`alpha x` form `1/(8 pi x^2)`, exact for Dirichlet.
pub fn energy_density_far(graph: &StarGraphConfig, x: f64) -> Result<f64> {
    let _ = graph;
    check_x(x)?;
    Ok(1.0 / (8.0 * PI * x * x))
}

/// Geometric scale below which the small-`t` expansions are trusted:
/// `min(1, x, N/alpha)`.
pub fn ladder_scale(graph: &StarGraphConfig, x: f64) -> f64 {
    let mut s = x.min(1.0);
    if let VertexCondition::ExnerSeba { alpha } = graph.condition() {
        s = s.min(graph.n() / alpha);
    }
    s
}

/// `(t_min, t_max)` of the default extraction ladder:
/// `t_max = EXTRACTION_TOP * min(1, x, N/alpha)`, `t_min = t_max / 16`.
pub fn default_extraction_range(graph: &StarGraphConfig, x: f64) -> (f64, f64) {
    let s = ladder_scale(graph, x);
    (EXTRACTION_TOP / 16.0 * s, EXTRACTION_TOP * s)
}

/// `T00` from the cylinder kernel: `g(t) = K(t; x, x) - 1/(pi t)`, then
/// `-1/2` times its linear coefficient.
pub fn energy_density_numeric(graph: &StarGraphConfig, edge: usize, x: f64) -> Result<f64> {
    let (t_min, t_max) = default_extraction_range(graph, x);
    energy_density_numeric_with_range(graph, edge, x, t_min, t_max)
}

pub fn energy_density_numeric_with_range(
    graph: &StarGraphConfig,
    edge: usize,
    x: f64,
    t_min: f64,
    t_max: f64,
) -> Result<f64> {
    check_x(x)?;
    let point = EdgePoint::new(edge, x)?;
    graph.check_point(point)?;
    graph.check_edge(edge)?;
    // Evaluation errors surface as NaN and are reported by the extractor.
    let g = |t: f64| match cylinder_kernel(graph, t, point, point) {
        Ok(k) => k - FRAC_1_PI / t,
        Err(_) => f64::NAN,
    };
    if !g(t_max).is_finite() {
        cylinder_kernel(graph, t_max, point, point)?;
    }
    // g is the difference of two terms of size 1/(pi t); their rounding sets
    // the noise floor of the extraction.
    match extract_linear_coefficient_with_floor(g, t_min, t_max, FRAC_1_PI / t_min) {
        Ok(c1) => Ok(-0.5 * c1),
        Err(Error::Accuracy { message, best_estimate }) => Err(Error::Accuracy {
            message,
            best_estimate: -0.5 * best_estimate,
        }),
        Err(e) => Err(e),
    }
}

/// Damping values used by [`energy_density_from_density`] by default:
/// `DAMPING_TOP * {1, 1/2, 1/4, 1/8} * min(1, x, N/alpha)`.
pub fn default_damping_ladder(graph: &StarGraphConfig, x: f64) -> Vec<f64> {
    let s = ladder_scale(graph, x);
    [1.0, 0.5, 0.25, 0.125].iter().map(|k| DAMPING_TOP * k * s).collect()
}

/// `F(t) = 1/2 int_0^inf omega exp(-omega t) [sigma(omega, x, x) - 1/pi] d omega`.
///
/// The range is cut at `Omega` where a bound on the remaining tail drops
/// below a tenth of the tolerance, and split at every half period of the
/// oscillation.
pub fn damped_subtracted_density(graph: &StarGraphConfig, edge: usize, x: f64, t: f64) -> Result<f64> {
    check_x(x)?;
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::domain(format!("damping must be positive, got {t}")));
    }
    let point = EdgePoint::new(edge, x)?;
    graph.check_point(point)?;
    graph.check_edge(edge)?;
    let n = graph.n();
    // |sigma - 1/pi| <= m(omega), nonincreasing in omega.
    let m = |w: f64| match graph.condition() {
        VertexCondition::ExnerSeba { alpha } => {
            FRAC_1_PI * ((2.0 / n - 1.0).abs() + 2.0 * alpha * (w + alpha / n) / (alpha * alpha + n * n * w * w))
        }
        _ => FRAC_1_PI,
    };
    let tail_bound = |w: f64| 0.5 * m(w) * (w / t + 1.0 / (t * t)) * (-w * t).exp();
    let mut omega_max = 1.0 / t;
    while tail_bound(omega_max) > 0.1 * DENSITY_TOL {
        omega_max *= 1.25;
    }
    let half_period = PI / (2.0 * x);
    let panels = (omega_max / half_period).ceil() as usize;
    let breaks: Vec<f64> = (0..=panels).map(|k| k as f64 * half_period).collect();
    let integrand = |w: f64| match local_spectral_density(graph, w, point) {
        Ok(s) => 0.5 * w * (-w * t).exp() * (s - FRAC_1_PI),
        Err(_) => f64::NAN,
    };
    // The integrand's total variation grows like 1/t^2; ask for no more than
    // round-off allows.
    let mass = 0.5 * m(1.0 / t) / (t * t);
    let tol = DENSITY_TOL.max(500.0 * f64::EPSILON * mass);
    Ok(integrate_with_breaks(integrand, &breaks, tol)?.value)
}

/// `T00` as the zero-damping limit of [`damped_subtracted_density`], using
/// polynomial extrapolation through the given damping values.
pub fn energy_density_from_density(graph: &StarGraphConfig, edge: usize, x: f64, t_damping: &[f64]) -> Result<f64> {
    let values = t_damping
        .iter()
        .map(|&t| damped_subtracted_density(graph, edge, x, t))
        .collect::<Result<Vec<f64>>>()?;
    extrapolate_to_zero(t_damping, &values)
}

/// `T00(x)` on edge `edge` by the requested route.
pub fn energy_density(graph: &StarGraphConfig, edge: usize, x: f64, route: EnergyRoute) -> Result<EnergyDensityValue> {
    graph.check_edge(edge)?;
    let value = match route {
        EnergyRoute::ClosedForm => energy_density_closed(graph, x)?,
        EnergyRoute::SmallTExtraction => energy_density_numeric(graph, edge, x)?,
        EnergyRoute::SubtractedDensity => {
            energy_density_from_density(graph, edge, x, &default_damping_ladder(graph, x))?
        }
    };
    Ok(EnergyDensityValue { value, route })
}
