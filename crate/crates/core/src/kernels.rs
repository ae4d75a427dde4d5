//! Free kernels on the line and star-graph Green functions.
//!
//! Every star kernel comes from the free kernel `G(t, z)` by
//!
//! ```text
//! G_S^{jl}(t,x,y) = d_jl G(t,|x-y|) + (2/N - d_jl) G(t,x+y)
//!                   - (2 alpha/N^2) int_x^inf exp(-alpha (s-x)/N) G(t,s+y) ds
//! ```
//!
//! with `d_jl` the Kronecker delta. For the Dirichlet vertex the kernel is
//! `d_jl [G(t,|x-y|) - G(t,x+y)]`.
//!
//! The integral term depends on `r = x + y` only. Closed forms are used for
//! heat (`erfc`) and cylinder (complex `Ei`); the Schrodinger kernel's
//! integral is computed along a rotated contour where it decays like a
//! Gaussian.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64;

use crate::bondurant::EdgeVectorFunction;
use crate::domain::{EdgePoint, StarGraphConfig, VertexCondition};
use crate::error::{Error, Result};
use crate::specialfn::{
    erfcx, expint_e1_complex_scaled, integrate_damped_tail_with_scale, integrate_with_breaks,
};

/// Tolerance for the quadrature inside [`quantum_kernel`] when it is reached
/// through [`star_kernel`].
pub const QUANTUM_TOL: f64 = 1e-10;

/// The four initial-value problems `u_tt = -Hu`, `u_t = -Hu`,
/// `i u_t = Hu`, `u_tt = Hu` (bounded as `t -> inf`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProblemKind {
    Wave,
    Heat,
    Quantum,
    Cylinder,
}

fn check_time(t: f64) -> Result<()> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::domain(format!("kernels need t > 0, got {t}")));
    }
    Ok(())
}

/// `(4 pi t)^{-1/2} exp(-z^2 / 4t)`.
pub fn free_heat(t: f64, z: f64) -> f64 {
    (-z * z / (4.0 * t)).exp() / (4.0 * PI * t).sqrt()
}

/// `(t/pi) / (t^2 + z^2)`.
pub fn free_cylinder(t: f64, z: f64) -> f64 {
    t / (PI * (t * t + z * z))
}

/// `(4 pi i t)^{-1/2} exp(i z^2 / 4t)`, principal square root.
pub fn free_quantum(t: f64, z: f64) -> Complex64 {
    let prefactor = Complex64::new(0.0, 4.0 * PI * t).sqrt().inv();
    prefactor * Complex64::from_polar(1.0, z * z / (4.0 * t))
}

/// The free kernel of `kind` on the whole line. Real kinds have zero
/// imaginary part.
pub fn free_kernel(kind: ProblemKind, t: f64, z: f64) -> Result<Complex64> {
    check_time(t)?;
    match kind {
        ProblemKind::Heat => Ok(free_heat(t, z).into()),
        ProblemKind::Cylinder => Ok(free_cylinder(t, z).into()),
        ProblemKind::Quantum => Ok(free_quantum(t, z)),
        ProblemKind::Wave => Err(Error::Contract(
            "the wave kernel is a distribution; use wave_kernel_slice".into(),
        )),
    }
}

struct Pair {
    same_edge: bool,
    diff: f64,
    sum: f64,
}

fn pair(graph: &StarGraphConfig, target: EdgePoint, source: EdgePoint) -> Result<Pair> {
    graph.check_edge(target.edge())?;
    graph.check_edge(source.edge())?;
    let (x, y) = (target.coordinate(), source.coordinate());
    Ok(Pair {
        same_edge: target.edge() == source.edge(),
        diff: (x - y).abs(),
        sum: x + y,
    })
}

/// Weights of the direct and image terms: `(d_jl, 2/N - d_jl)`, or
/// `(d_jl, -d_jl)` for Dirichlet.
fn image_weights(graph: &StarGraphConfig, same_edge: bool) -> (f64, f64) {
    let d = if same_edge { 1.0 } else { 0.0 };
    if graph.is_dirichlet() {
        (d, -d)
    } else {
        (d, 2.0 / graph.n() - d)
    }
}

fn positive_alpha(graph: &StarGraphConfig) -> Option<f64> {
    match graph.condition() {
        VertexCondition::ExnerSeba { alpha } => Some(alpha),
        _ => None,
    }
}

/// Star-graph heat kernel.
///
/// The vertex term is `-(alpha/N^2) exp(a r + a^2 t) erfc(r/(2 sqrt t) + a sqrt t)`
/// with `a = alpha/N`, evaluated as `exp(-r^2/4t) erfcx(...)` so that large
/// `alpha` does not overflow.
pub fn heat_kernel(graph: &StarGraphConfig, t: f64, target: EdgePoint, source: EdgePoint) -> Result<f64> {
    check_time(t)?;
    let p = pair(graph, target, source)?;
    let (direct, image) = image_weights(graph, p.same_edge);
    let mut value = direct * free_heat(t, p.diff) + image * free_heat(t, p.sum);
    if let Some(alpha) = positive_alpha(graph) {
        let n = graph.n();
        let a = alpha / n;
        let st = t.sqrt();
        let z = p.sum / (2.0 * st) + a * st;
        value -= alpha / (n * n) * (-p.sum * p.sum / (4.0 * t)).exp() * erfcx(z);
    }
    Ok(value)
}

/// Star-graph cylinder kernel.
///
/// The vertex term is `-(2 alpha/(pi N^2)) Im[exp(zeta) E1(zeta)]` with
/// `zeta = a (x + y) - i a t`. This equals
/// `(2 alpha/(pi N^2)) exp(a(x+y)) Im[exp(-i a t) Ei(i a t - a(x+y))]` with
/// `Ei(w) = -E1(-w)`, the branch continuous in `t > 0` that reduces to the
/// real `Ei` as `t -> 0+`.
pub fn cylinder_kernel(graph: &StarGraphConfig, t: f64, target: EdgePoint, source: EdgePoint) -> Result<f64> {
    check_time(t)?;
    let p = pair(graph, target, source)?;
    let (direct, image) = image_weights(graph, p.same_edge);
    let mut value = direct * free_cylinder(t, p.diff) + image * free_cylinder(t, p.sum);
    if let Some(alpha) = positive_alpha(graph) {
        let n = graph.n();
        let a = alpha / n;
        let zeta = Complex64::new(a * p.sum, -a * t);
        let scaled = expint_e1_complex_scaled(zeta)?;
        value -= 2.0 * alpha / (PI * n * n) * scaled.im;
    }
    Ok(value)
}

/// Star-graph Schrodinger kernel for `i u_t = H u`.
///
/// The vertex integral `int_r^inf exp(-a(u-r)) exp(i u^2/4t) du` is taken
/// along `u = r + exp(i pi/4) s`, where the integrand decays like
/// `exp(-s^2/4t)`; `tol` bounds the error of each of its two real parts.
pub fn quantum_kernel(
    graph: &StarGraphConfig,
    t: f64,
    target: EdgePoint,
    source: EdgePoint,
    tol: f64,
) -> Result<Complex64> {
    check_time(t)?;
    let p = pair(graph, target, source)?;
    let (direct, image) = image_weights(graph, p.same_edge);
    let mut value = free_quantum(t, p.diff) * direct + free_quantum(t, p.sum) * image;
    if let Some(alpha) = positive_alpha(graph) {
        let n = graph.n();
        let a = alpha / n;
        let integral = rotated_vertex_integral(a, p.sum, t, tol * n * n / (2.0 * alpha))?;
        let prefactor = Complex64::new(0.0, 4.0 * PI * t).sqrt().inv();
        value -= prefactor * integral * (2.0 * alpha / (n * n));
    }
    Ok(value)
}

/// `int_r^inf exp(-a (u - r) + i u^2/4t) du` along the ray `arg(u - r) = pi/4`.
fn rotated_vertex_integral(a: f64, r: f64, t: f64, tol: f64) -> Result<Complex64> {
    let dir = Complex64::new(FRAC_1_SQRT_2, FRAC_1_SQRT_2);
    let integrand = move |s: f64| {
        let u = Complex64::new(r, 0.0) + dir * s;
        (-a * dir * s + Complex64::i() * u * u / (4.0 * t)).exp() * dir
    };
    // |integrand| = exp(-(a + r/2t) s / sqrt 2 - s^2/4t).
    let linear = (a + r / (2.0 * t)) * FRAC_1_SQRT_2;
    let rate = linear.max(1.0 / t.sqrt());
    let scale = (1.0 / linear.max(1e-300)).min(t.sqrt());
    let re = integrate_damped_tail_with_scale(|s| integrand(s).re, 0.0, rate, tol, Some(scale * 1e-3))?;
    let im = integrate_damped_tail_with_scale(|s| integrand(s).im, 0.0, rate, tol, Some(scale * 1e-3))?;
    Ok(Complex64::new(re.value, im.value))
}

/// Dispatches to the closed-form or contour routines. The wave kernel is
/// not a function; see [`wave_kernel_slice`].
pub fn star_kernel(
    kind: ProblemKind,
    graph: &StarGraphConfig,
    t: f64,
    target: EdgePoint,
    source: EdgePoint,
) -> Result<Complex64> {
    match kind {
        ProblemKind::Heat => heat_kernel(graph, t, target, source).map(Complex64::from),
        ProblemKind::Cylinder => cylinder_kernel(graph, t, target, source).map(Complex64::from),
        ProblemKind::Quantum => quantum_kernel(graph, t, target, source, QUANTUM_TOL),
        ProblemKind::Wave => {
            check_time(t)?;
            Err(Error::Contract(
                "the wave kernel is a distribution; use wave_kernel_slice".into(),
            ))
        }
    }
}

/// The star kernel with the vertex integral computed by direct quadrature
/// along the real axis. Slow; used to cross-check the closed forms.
///
/// For `Quantum` the real-axis integrand oscillates and is damped only by
/// `exp(-alpha (s-x)/N)`, so this route is practical for moderate `t` only.
pub fn star_kernel_by_quadrature(
    kind: ProblemKind,
    graph: &StarGraphConfig,
    t: f64,
    target: EdgePoint,
    source: EdgePoint,
    tol: f64,
) -> Result<Complex64> {
    check_time(t)?;
    let p = pair(graph, target, source)?;
    let (direct, image) = image_weights(graph, p.same_edge);
    let g = |z: f64| free_kernel(kind, t, z);
    let mut value = g(p.diff)? * direct + g(p.sum)? * image;
    if let Some(alpha) = positive_alpha(graph) {
        let n = graph.n();
        let a = alpha / n;
        let weight = 2.0 * alpha / (n * n);
        let inner = match kind {
            ProblemKind::Heat => Some(t.sqrt()),
            ProblemKind::Cylinder => Some(t),
            _ => None,
        };
        let part = |f: &dyn Fn(f64) -> f64| -> Result<f64> {
            Ok(integrate_damped_tail_with_scale(f, 0.0, a, tol / weight, inner)?.value)
        };
        let re = part(&|s: f64| (-a * s).exp() * g(p.sum + s).map(|c| c.re).unwrap_or(f64::NAN))?;
        let im = if kind == ProblemKind::Quantum {
            part(&|s: f64| (-a * s).exp() * g(p.sum + s).map(|c| c.im).unwrap_or(f64::NAN))?
        } else {
            0.0
        };
        value -= Complex64::new(re, im) * weight;
    }
    Ok(value)
}

/// A point mass `weight * delta(y - location)` in the source variable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiracTerm {
    pub location: f64,
    pub weight: f64,
}

/// `amplitude * exp(-rate (t - x - y))` for `0 <= y <= upper`, zero elsewhere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExponentialTail {
    pub upper: f64,
    pub amplitude: f64,
    pub rate: f64,
}

/// The wave kernel `G_S^{jl}(t, x, y)` at fixed `(t, x, j, l)`, as a
/// distribution in `y`.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveKernelSlice {
    pub t: f64,
    pub x: f64,
    pub target_edge: usize,
    pub source_edge: usize,
    pub dirac_terms: Vec<DiracTerm>,
    pub tail: Option<ExponentialTail>,
}

/// Builds the wave kernel slice: `1/2 d_jl` at `y = x - t` (when `x >= t`) and
/// at `y = x + t`, `1/2 (2/N - d_jl)` at `y = t - x` (when `t >= x`), and for
/// `alpha > 0, t > x` the tail `-(alpha/N^2) exp(-alpha (t - x - y)/N)` on
/// `[0, t - x]`.
pub fn wave_kernel_slice(
    graph: &StarGraphConfig,
    t: f64,
    target_edge: usize,
    source_edge: usize,
    x: f64,
) -> Result<WaveKernelSlice> {
    check_time(t)?;
    graph.check_edge(target_edge)?;
    graph.check_edge(source_edge)?;
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::domain(format!("x must be finite and nonnegative, got {x}")));
    }
    let (direct, image) = image_weights(graph, target_edge == source_edge);
    let mut dirac_terms = Vec::with_capacity(3);
    if direct != 0.0 {
        if x - t >= 0.0 {
            dirac_terms.push(DiracTerm {
                location: x - t,
                weight: 0.5 * direct,
            });
        }
        dirac_terms.push(DiracTerm {
            location: x + t,
            weight: 0.5 * direct,
        });
    }
    if t - x >= 0.0 && image != 0.0 {
        dirac_terms.push(DiracTerm {
            location: t - x,
            weight: 0.5 * image,
        });
    }
    let tail = match positive_alpha(graph) {
        Some(alpha) if t > x => {
            let n = graph.n();
            Some(ExponentialTail {
                upper: t - x,
                amplitude: -alpha / (n * n),
                rate: alpha / n,
            })
        }
        _ => None,
    };
    Ok(WaveKernelSlice {
        t,
        x,
        target_edge,
        source_edge,
        dirac_terms,
        tail,
    })
}

impl WaveKernelSlice {
    /// `int_0^inf G(t, x, y) f_l(y) dy` with `l` the slice's source edge.
    pub fn apply(&self, f: &EdgeVectorFunction, tol: f64) -> Result<f64> {
        let l = self.source_edge;
        let mut value: f64 = self.dirac_terms.iter().map(|d| d.weight * f.value(l, d.location)).sum();
        if let Some(tail) = self.tail {
            let (mut lo, mut hi) = (0.0, tail.upper);
            if let Some((a, b)) = f.support() {
                lo = a.max(0.0);
                hi = hi.min(b);
            }
            if hi > lo {
                let d = self.t - self.x;
                let r = integrate_with_breaks(
                    |y| (-tail.rate * (d - y)).exp() * f.value(l, y),
                    &[lo, hi],
                    tol / tail.amplitude.abs(),
                )?;
                value += tail.amplitude * r.value;
            }
        }
        Ok(value)
    }
}

/// `u_j(t, x) = sum_l int G_S^{jl}(t, x, y) f_l(y) dy` for the wave problem
/// with zero initial velocity.
pub fn apply_wave_kernel(
    graph: &StarGraphConfig,
    t: f64,
    target: EdgePoint,
    f: &EdgeVectorFunction,
    tol: f64,
) -> Result<f64> {
    let mut value = 0.0;
    for l in 1..=graph.n_edges() {
        let slice = wave_kernel_slice(graph, t, target.edge(), l, target.coordinate())?;
        value += slice.apply(f, tol / graph.n())?;
    }
    Ok(value)
}

/// `sum_l int_0^inf G_S^{jl}(t, x, y) f_l(y) dy` for the heat or cylinder kernel.
pub fn apply_smooth_kernel(
    kind: ProblemKind,
    graph: &StarGraphConfig,
    t: f64,
    target: EdgePoint,
    f: &EdgeVectorFunction,
    tol: f64,
) -> Result<f64> {
    let kernel: fn(&StarGraphConfig, f64, EdgePoint, EdgePoint) -> Result<f64> = match kind {
        ProblemKind::Heat => heat_kernel,
        ProblemKind::Cylinder => cylinder_kernel,
        other => {
            return Err(Error::Contract(format!(
                "apply_smooth_kernel handles heat and cylinder kernels, not {other:?}"
            )))
        }
    };
    check_time(t)?;
    graph.check_edge(target.edge())?;
    let x = target.coordinate();
    let (lo, hi) = match f.support() {
        Some(s) => s,
        None => (0.0, x + (tol.recip().ln().max(0.0) + 40.0) / f.decay_rate()),
    };
    if hi <= lo {
        return Ok(0.0);
    }
    let width = match kind {
        ProblemKind::Heat => t.sqrt(),
        _ => t,
    };
    let mut breaks = vec![lo, hi];
    for k in [-16.0, -4.0, -1.0, 0.0, 1.0, 4.0, 16.0] {
        breaks.push(x + k * width);
    }
    breaks.retain(|b| *b >= lo && *b <= hi);
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();

    let n_edges = graph.n_edges();
    let mut total = 0.0;
    for l in 1..=n_edges {
        let integrand = |y: f64| {
            let source = EdgePoint::new(l, y).expect("y is nonnegative");
            kernel(graph, t, target, source).unwrap_or(f64::NAN) * f.value(l, y)
        };
        total += integrate_with_breaks(integrand, &breaks, tol / n_edges as f64)?.value;
    }
    if !total.is_finite() {
        return Err(Error::Range("kernel evaluation failed inside the integral".into()));
    }
    Ok(total)
}
