//! Reference implementations used as oracles by the integration tests.
//!
//! Nothing here calls into the library: quadrature is a recursive
//! Gauss-Legendre rule with nodes computed by Newton iteration, the spectral
//! density is rebuilt from the scattering matrix, and the special functions
//! come from power series or integral representations.

#![allow(dead_code)]

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

const GL_ORDER: usize = 20;

/// Nodes and weights of the `GL_ORDER`-point Gauss-Legendre rule on [-1, 1].
fn gauss_legendre() -> &'static [(f64, f64)] {
    static RULE: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    RULE.get_or_init(|| {
        let n = GL_ORDER;
        let mut rule = Vec::with_capacity(n);
        for i in 0..n {
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=n {
                    let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            rule.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
        }
        rule
    })
}

fn gl_panel<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> f64 {
    let (c, h) = (0.5 * (a + b), 0.5 * (b - a));
    h * gauss_legendre().iter().map(|(x, w)| w * f(c + h * x)).sum::<f64>()
}

fn adapt<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, whole: f64, tol: f64, depth: u32) -> f64 {
    let m = 0.5 * (a + b);
    let (l, r) = (gl_panel(f, a, m), gl_panel(f, m, b));
    // The relative floor stops refinement once round-off dominates.
    if (l + r - whole).abs() <= tol.max(1e-15 * (l + r).abs()) || depth == 0 {
        return l + r;
    }
    adapt(f, a, m, l, 0.5 * tol, depth - 1) + adapt(f, m, b, r, 0.5 * tol, depth - 1)
}

/// Integral of `f` over `[a, b]` to absolute tolerance `tol`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    adapt(&f, a, b, gl_panel(&f, a, b), tol, 30)
}

/// Sum of [`integrate`] over consecutive break points.
pub fn integrate_panels<F: Fn(f64) -> f64>(f: F, breaks: &[f64], tol: f64) -> f64 {
    let per = tol / breaks.len().max(1) as f64;
    breaks.windows(2).map(|w| integrate(&f, w[0], w[1], per)).sum()
}

/// `int_0^inf f(s) ds` through `s = scale * u / (1 - u)`.
pub fn integrate_half_line<F: Fn(f64) -> f64>(f: F, scale: f64, tol: f64) -> f64 {
    let g = |u: f64| {
        if u >= 1.0 {
            return 0.0;
        }
        let s = scale * u / (1.0 - u);
        let jac = scale / ((1.0 - u) * (1.0 - u));
        let v = f(s) * jac;
        if v.is_finite() {
            v
        } else {
            0.0
        }
    };
    let breaks = [0.0, 0.25, 0.5, 0.75, 0.9, 0.99, 1.0];
    integrate_panels(g, &breaks, tol)
}

/// Star graph data as plain numbers: `alpha = None` means Dirichlet.
#[derive(Debug, Clone, Copy)]
pub struct Star {
    pub n: usize,
    pub alpha: Option<f64>,
}

impl Star {
    pub fn new(n: usize, alpha: f64) -> Self {
        Star { n, alpha: Some(alpha) }
    }

    pub fn dirichlet(n: usize) -> Self {
        Star { n, alpha: None }
    }

    /// Vertex scattering matrix `S(omega)`: `-I + (1 + e^{-2i theta})/N J`
    /// with `tan theta = alpha/(N omega)`; `-I` for Dirichlet.
    pub fn s_matrix(&self, omega: f64, j: usize, l: usize) -> Complex64 {
        let d = if j == l { 1.0 } else { 0.0 };
        match self.alpha {
            None => Complex64::new(-d, 0.0),
            Some(alpha) => {
                let n = self.n as f64;
                let theta = (alpha / (n * omega)).atan();
                Complex64::new(-d, 0.0) + (Complex64::new(1.0, 0.0) + Complex64::from_polar(1.0, -2.0 * theta)) / n
            }
        }
    }

    /// Incoming state in channel `l` on edge `j`: `d_jl e^{-i w x} + S_jl e^{i w x}`.
    pub fn psi(&self, omega: f64, j: usize, l: usize, x: f64) -> Complex64 {
        let d = if j == l { 1.0 } else { 0.0 };
        Complex64::from_polar(d, -omega * x) + self.s_matrix(omega, j, l) * Complex64::from_polar(1.0, omega * x)
    }

    /// `(1/2 pi) sum_l psi_j^l(x) conj(psi_k^l(y))`.
    pub fn sigma(&self, omega: f64, j: usize, x: f64, k: usize, y: f64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for l in 1..=self.n {
            acc += self.psi(omega, j, l, x) * self.psi(omega, k, l, y).conj();
        }
        acc / (2.0 * PI)
    }

    /// Vacuum energy density from `e^u E1(u)` by quadrature.
    pub fn t00(&self, x: f64) -> f64 {
        let n = self.n as f64;
        match self.alpha {
            None => 1.0 / (8.0 * PI * x * x),
            Some(0.0) => (1.0 - 2.0 / n) / (8.0 * PI * x * x),
            Some(a) => {
                let u = 2.0 * a * x / n;
                (1.0 - 2.0 / n) / (8.0 * PI * x * x) + a / (2.0 * PI * n * n * x)
                    - a * a / (PI * n * n * n) * e1_scaled(u)
            }
        }
    }
}

/// `e^u E1(u) = int_0^inf exp(-u (e^v - 1)) dv`, `u > 0`.
pub fn e1_scaled(u: f64) -> f64 {
    let f = |v: f64| (-u * v.exp_m1()).exp();
    // Breaks where u (e^v - 1) reaches 0.01 .. 40; beyond that f < 5e-18.
    let mut breaks = vec![0.0];
    breaks.extend([0.01, 0.1, 1.0, 3.0, 10.0, 40.0].iter().map(|c| (c / u).ln_1p()));
    let rough = integrate_panels(f, &breaks, 1e-6 * breaks[1]);
    integrate_panels(f, &breaks, 1e-17 * rough)
}

/// Real `Ei`: power series for `x > 0`, `-e^x (e^u E1(u))` with `u = -x` for `x < 0`.
pub fn ei_real(x: f64) -> f64 {
    if x > 0.0 {
        let mut sum = 0.0;
        let mut p = 1.0;
        for k in 1..1000 {
            p *= x / k as f64;
            let term = p / k as f64;
            sum += term;
            if term < 1e-18 * sum {
                break;
            }
        }
        return EULER_GAMMA + x.ln() + sum;
    }
    -x.exp() * e1_scaled(-x)
}

/// `Ei(z) = -E1(-z)` with the principal `E1`: series
/// `gamma + Ln(-z) + sum z^k/(k k!)` for `|z| <= 2`, otherwise the horizontal
/// ray integral `E1(w) = int_0^inf e^{-(w+s)}/(w+s) ds`.
pub fn ei_complex(z: Complex64) -> Complex64 {
    if z.norm() <= 2.0 {
        let mut sum = Complex64::new(0.0, 0.0);
        let mut p = Complex64::new(1.0, 0.0);
        for k in 1..200 {
            p *= z / k as f64;
            sum += p / k as f64;
        }
        return EULER_GAMMA + (-z).ln() + sum;
    }
    let w = -z;
    let f = |s: f64| (-(w + s)).exp() / (w + s);
    let pole = (-w.re).max(0.0);
    let width = w.im.abs().max(1e-3);
    let mut breaks = vec![0.0];
    let mut h = width;
    while h < pole + 60.0 {
        if pole - h > 0.0 {
            breaks.push(pole - h);
        }
        breaks.push(pole + h);
        h *= 2.0;
    }
    breaks.push(pole);
    breaks.push(pole + 60.0);
    breaks.sort_by(|a, b| a.partial_cmp(b).unwrap());
    breaks.dedup();
    let peak = f(pole).norm().max(f(0.0).norm());
    let re_rough = integrate_panels(|s| f(s).re, &breaks, 1e-6 * peak);
    let im_rough = integrate_panels(|s| f(s).im, &breaks, 1e-6 * peak);
    let tol = 1e-14 * Complex64::new(re_rough, im_rough).norm();
    let re = integrate_panels(|s| f(s).re, &breaks, tol);
    let im = integrate_panels(|s| f(s).im, &breaks, tol);
    -Complex64::new(re, im)
}

/// `erfc(x)`: `1 - erf(x)` from the Maclaurin series of `erf` for
/// `|x| < 0.5`, otherwise `(2/sqrt pi) e^{-x^2} int_0^inf e^{-2|x| s - s^2} ds`.
pub fn erfc(x: f64) -> f64 {
    let ax = x.abs();
    if ax < 0.5 {
        let mut sum = 0.0;
        let mut term = x;
        for k in 0..60 {
            sum += term / (2 * k + 1) as f64;
            term *= -x * x / (k + 1) as f64;
        }
        return 1.0 - 2.0 / PI.sqrt() * sum;
    }
    let tail = erfcx(ax) * exp_neg_sq(ax);
    if x > 0.0 {
        tail
    } else {
        2.0 - tail
    }
}

/// `e^{x^2} erfc(x)` for `x >= 0`.
pub fn erfcx(x: f64) -> f64 {
    let f = |s: f64| (-(2.0 * x + s) * s).exp();
    let scale = 1.0 / (2.0 * x + 1.0);
    2.0 / PI.sqrt() * integrate_half_line(f, scale, 1e-17 * scale)
}

/// `exp(-x^2)` keeping the rounding error of `x*x`.
fn exp_neg_sq(x: f64) -> f64 {
    let hi = x * x;
    let lo = x.mul_add(x, -hi);
    (-hi).exp() * (1.0 - lo)
}

/// Zero-velocity wave solution on the star for data `f_j(s) = w_j b(s)`,
/// from d'Alembert's formula plus the vertex memory term.
pub fn wave_exact<B: Fn(f64) -> f64>(star: Star, weights: &[f64], bump: &B, support: (f64, f64), t: f64, j: usize, x: f64) -> f64 {
    let f = |s: f64| if s < 0.0 { 0.0 } else { bump(s) };
    let big_f = |s: f64| weights.iter().sum::<f64>() * f(s);
    let w = weights[j - 1];
    let mut u = 0.5 * w * (f(x - t) + f(x + t));
    let d = t - x;
    if d > 0.0 {
        let n = star.n as f64;
        match star.alpha {
            None => u -= 0.5 * w * f(d),
            Some(alpha) => {
                u += -0.5 * w * f(d) + big_f(d) / n;
                if alpha > 0.0 {
                    let a = alpha / n;
                    let (lo, hi) = (support.0.max(0.0), support.1.min(d));
                    if hi > lo {
                        let mid = 0.5 * (lo + hi);
                        let jint = integrate_panels(|s| (-a * (d - s)).exp() * big_f(s), &[lo, mid, hi], 1e-15);
                        u -= alpha / (n * n) * jint;
                    }
                }
            }
        }
    }
    u
}
