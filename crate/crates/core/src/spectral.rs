//! Spectral resolution of `H = -d^2/dx^2` on the star: the projection kernel
//! `sigma(omega, x, y)`, local and global densities, the vertex's staircase
//! increment and the incoming scattering basis.
//!
//! Frequencies are `omega = sqrt(lambda) >= 0`. Point masses at `omega = 0`
//! are kept as explicit weights ([`RegularPlusDelta`]) and never folded into
//! sampled values.

use std::f64::consts::{FRAC_1_PI, PI};

use num_complex::Complex64;

use crate::domain::{EdgePoint, StarGraphConfig, VertexCondition};
use crate::error::{Error, Result};

/// Largest imaginary part tolerated in [`scattering_reconstruction`].
pub const RECONSTRUCTION_IM_LIMIT: f64 = 1e-8;

/// A frequency `omega >= 0`; the eigenvalue is `omega^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralPoint {
    omega: f64,
}

impl SpectralPoint {
    pub fn new(omega: f64) -> Result<Self> {
        check_omega(omega)?;
        Ok(SpectralPoint { omega })
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn eigenvalue(&self) -> f64 {
        self.omega * self.omega
    }
}

fn check_omega(omega: f64) -> Result<()> {
    if !(omega >= 0.0) || !omega.is_finite() {
        return Err(Error::domain(format!("omega must be finite and nonnegative, got {omega}")));
    }
    Ok(())
}

/// A density `w delta(omega) + regular(omega)` on `omega >= 0`.
///
/// The regular part is either zero or the Lorentzian
/// `(N alpha/pi) / (alpha^2 + N^2 omega^2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegularPlusDelta {
    delta_weight_at_zero: f64,
    lorentzian: Option<(f64, f64)>,
}

impl RegularPlusDelta {
    pub fn delta_weight_at_zero(&self) -> f64 {
        self.delta_weight_at_zero
    }

    pub fn regular_at(&self, omega: f64) -> f64 {
        match self.lorentzian {
            Some((n, alpha)) => n * alpha * FRAC_1_PI / (alpha * alpha + n * n * omega * omega),
            None => 0.0,
        }
    }

    /// `true` when the regular part vanishes identically.
    pub fn regular_is_zero(&self) -> bool {
        self.lorentzian.is_none()
    }
}

/// `sigma^{jl}(omega, x, y)`, the derivative in `omega` of the spectral
/// projection kernel:
///
/// ```text
/// (2/pi) d_jl sin(omega x) sin(omega y)
///   + (2/pi) / (alpha^2 + N^2 omega^2) * (N omega^2 cos(omega(x+y)) + alpha omega sin(omega(x+y)))
/// ```
///
/// For the Dirichlet vertex only the first term remains.
pub fn spectral_projection_kernel(
    graph: &StarGraphConfig,
    omega: f64,
    target: EdgePoint,
    source: EdgePoint,
) -> Result<f64> {
    check_omega(omega)?;
    graph.check_edge(target.edge())?;
    graph.check_edge(source.edge())?;
    let (x, y) = (target.coordinate(), source.coordinate());
    let direct = if target.edge() == source.edge() {
        2.0 * FRAC_1_PI * (omega * x).sin() * (omega * y).sin()
    } else {
        0.0
    };
    let n = graph.n();
    let phase = omega * (x + y);
    let vertex = match graph.condition() {
        VertexCondition::Dirichlet => 0.0,
        VertexCondition::Kirchhoff => 2.0 * FRAC_1_PI / n * phase.cos(),
        VertexCondition::ExnerSeba { alpha } => {
            let denom = alpha * alpha + n * n * omega * omega;
            2.0 * FRAC_1_PI * omega * (n * omega * phase.cos() + alpha * phase.sin()) / denom
        }
    };
    Ok(direct + vertex)
}

/// `sigma^{jj}(omega, x, x)`:
///
/// ```text
/// 1/pi + (1/pi)(2/N - 1) cos(2 omega x)
///   + (2 alpha/pi) / (alpha^2 + N^2 omega^2) * (omega sin(2 omega x) - (alpha/N) cos(2 omega x))
/// ```
///
/// or `(1/pi)(1 - cos(2 omega x))` for Dirichlet. The value does not depend on
/// the edge.
pub fn local_spectral_density(graph: &StarGraphConfig, omega: f64, point: EdgePoint) -> Result<f64> {
    check_omega(omega)?;
    graph.check_edge(point.edge())?;
    let c = (2.0 * omega * point.coordinate()).cos();
    let n = graph.n();
    Ok(match graph.condition() {
        VertexCondition::Dirichlet => FRAC_1_PI * (1.0 - c),
        VertexCondition::Kirchhoff => FRAC_1_PI * (1.0 + (2.0 / n - 1.0) * c),
        VertexCondition::ExnerSeba { alpha } => {
            let s = (2.0 * omega * point.coordinate()).sin();
            let denom = alpha * alpha + n * n * omega * omega;
            FRAC_1_PI * (1.0 + (2.0 / n - 1.0) * c)
                + 2.0 * alpha * FRAC_1_PI * (omega * s - alpha / n * c) / denom
        }
    })
}

/// Global density of the vertex after subtracting the Weyl term on every
/// edge: `-N/4 delta(omega) + (N alpha/pi)/(alpha^2 + N^2 omega^2)` for
/// `alpha > 0`, `(2 - N)/4 delta(omega)` for Kirchhoff and
/// `-N/4 delta(omega)` for Dirichlet.
pub fn global_density_regular(graph: &StarGraphConfig) -> RegularPlusDelta {
    let n = graph.n();
    match graph.condition() {
        VertexCondition::ExnerSeba { alpha } => RegularPlusDelta {
            delta_weight_at_zero: -n / 4.0,
            lorentzian: Some((n, alpha)),
        },
        VertexCondition::Kirchhoff => RegularPlusDelta {
            delta_weight_at_zero: (2.0 - n) / 4.0,
            lorentzian: None,
        },
        VertexCondition::Dirichlet => RegularPlusDelta {
            delta_weight_at_zero: -n / 4.0,
            lorentzian: None,
        },
    }
}

/// The vertex's contribution to the counting function:
/// `theta(omega) [-N/4 + (1/pi) atan(N omega/alpha)]`.
///
/// Kirchhoff gives `(2 - N)/4` and Dirichlet `-N/4` for `omega >= 0`. The jump
/// at `omega = 0` is assigned to the right (the value at 0 includes it).
pub fn staircase_increment(graph: &StarGraphConfig, omega: f64) -> f64 {
    if omega < 0.0 {
        return 0.0;
    }
    let n = graph.n();
    match graph.condition() {
        VertexCondition::ExnerSeba { alpha } => -n / 4.0 + FRAC_1_PI * (n * omega).atan2(alpha),
        VertexCondition::Kirchhoff => (2.0 - n) / 4.0,
        VertexCondition::Dirichlet => -n / 4.0,
    }
}

/// `2 omega (N omega - i alpha) / (alpha^2 + N^2 omega^2)`, the common
/// amplitude of the outgoing wave; 0 for Dirichlet.
fn transmission_amplitude(graph: &StarGraphConfig, omega: f64) -> Complex64 {
    let n = graph.n();
    match graph.condition() {
        VertexCondition::Dirichlet => Complex64::new(0.0, 0.0),
        VertexCondition::Kirchhoff => Complex64::new(2.0 / n, 0.0),
        VertexCondition::ExnerSeba { alpha } => {
            Complex64::new(n * omega, -alpha) * (2.0 * omega / (alpha * alpha + n * n * omega * omega))
        }
    }
}

fn check_scattering_args(graph: &StarGraphConfig, omega: f64, edge: usize, channel: usize, x: f64) -> Result<()> {
    if !(omega > 0.0) || !omega.is_finite() {
        return Err(Error::domain(format!("scattering states need omega > 0, got {omega}")));
    }
    graph.check_edge(edge)?;
    graph.check_edge(channel)?;
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::domain(format!("x must be finite and nonnegative, got {x}")));
    }
    Ok(())
}

/// Incoming scattering state in channel `l`, evaluated on edge `j`:
/// `-2i d_jl sin(omega x) + 2 omega (N omega - i alpha)/(alpha^2 + N^2 omega^2) e^{i omega x}`.
pub fn scattering_eigenfunction(
    graph: &StarGraphConfig,
    omega: f64,
    edge: usize,
    channel: usize,
    x: f64,
) -> Result<Complex64> {
    check_scattering_args(graph, omega, edge, channel, x)?;
    let mut psi = transmission_amplitude(graph, omega) * Complex64::from_polar(1.0, omega * x);
    if edge == channel {
        psi += Complex64::new(0.0, -2.0 * (omega * x).sin());
    }
    Ok(psi)
}

/// The same state written as incident plus reflected/transmitted waves:
/// `d_jl e^{-i omega x} + [-d_jl + (1/N)(1 + e^{-2i atan(alpha/(N omega))})] e^{i omega x}`.
pub fn scattering_eigenfunction_incident_form(
    graph: &StarGraphConfig,
    omega: f64,
    edge: usize,
    channel: usize,
    x: f64,
) -> Result<Complex64> {
    check_scattering_args(graph, omega, edge, channel, x)?;
    let d = if edge == channel { 1.0 } else { 0.0 };
    let n = graph.n();
    let theta = match graph.condition() {
        VertexCondition::Dirichlet => PI / 2.0,
        VertexCondition::Kirchhoff => 0.0,
        VertexCondition::ExnerSeba { alpha } => alpha.atan2(n * omega),
    };
    let out = Complex64::new(-d, 0.0) + (Complex64::new(1.0, 0.0) + Complex64::from_polar(1.0, -2.0 * theta)) / n;
    Ok(Complex64::from_polar(d, -omega * x) + out * Complex64::from_polar(1.0, omega * x))
}

/// `d/dx` of [`scattering_eigenfunction`].
pub fn scattering_eigenfunction_derivative(
    graph: &StarGraphConfig,
    omega: f64,
    edge: usize,
    channel: usize,
    x: f64,
) -> Result<Complex64> {
    check_scattering_args(graph, omega, edge, channel, x)?;
    let mut d = transmission_amplitude(graph, omega) * Complex64::new(0.0, omega) * Complex64::from_polar(1.0, omega * x);
    if edge == channel {
        d += Complex64::new(0.0, -2.0 * omega * (omega * x).cos());
    }
    Ok(d)
}

/// `(1/2 pi) sum_l psi_j^l(x) conj(psi_j'^l(y))` before discarding the
/// imaginary part.
pub fn scattering_reconstruction_complex(
    graph: &StarGraphConfig,
    omega: f64,
    target: EdgePoint,
    source: EdgePoint,
) -> Result<Complex64> {
    let mut acc = Complex64::new(0.0, 0.0);
    for l in 1..=graph.n_edges() {
        let a = scattering_eigenfunction(graph, omega, target.edge(), l, target.coordinate())?;
        let b = scattering_eigenfunction(graph, omega, source.edge(), l, source.coordinate())?;
        acc += a * b.conj();
    }
    Ok(acc / (2.0 * PI))
}

/// Real part of [`scattering_reconstruction_complex`]; fails with a
/// consistency error if the imaginary part exceeds
/// [`RECONSTRUCTION_IM_LIMIT`].
pub fn scattering_reconstruction(
    graph: &StarGraphConfig,
    omega: f64,
    target: EdgePoint,
    source: EdgePoint,
) -> Result<f64> {
    let z = scattering_reconstruction_complex(graph, omega, target, source)?;
    if z.im.abs() > RECONSTRUCTION_IM_LIMIT {
        return Err(Error::Consistency(format!(
            "scattering reconstruction has imaginary part {:e}",
            z.im
        )));
    }
    Ok(z.re)
}
