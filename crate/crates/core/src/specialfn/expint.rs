//! Exponential integrals `Ei` and `E1` for real and complex arguments.
//!
//! The complex `Ei` used throughout the crate is `Ei(z) = -E1(-z)` with the
//! principal branch of `E1` (cut along the negative real axis of its
//! argument). It therefore has its cut along the positive real `z` axis and
//! coincides with the real-valued `Ei` on the negative real axis.
//!
//! Evaluation strategy for `E1(w)`:
//! * power series about the origin for small `|w|` (and for `Re w < 0`
//!   close to the negative axis, where the series does not cancel),
//! * the even continued fraction for `e^w E1(w)` (modified Lentz) elsewhere,
//! * the asymptotic series far out in the left half-plane.

use num_complex::Complex64;

use crate::error::{Error, Result};

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_606_512_090_082_402_43;

const MAX_TERMS: usize = 5_000;
const TINY: f64 = 1e-300;

/// Real exponential integral `Ei(x) = -PV int_{-x}^inf e^{-s}/s ds`.
pub fn expint_ei(x: f64) -> Result<f64> {
    if x.is_nan() {
        return Err(Error::domain("Ei(NaN)"));
    }
    if x == 0.0 {
        return Err(Error::domain("Ei has a logarithmic singularity at 0"));
    }
    if x < 0.0 {
        let u = -x;
        if u <= 1.0 {
            return Ok(-e1_series_real(u));
        }
        if u > 745.0 {
            return Ok(0.0);
        }
        return Ok(-e1_scaled_cf_real(u) * (-u).exp());
    }
    if x <= 40.0 {
        return Ok(ei_series_positive(x));
    }
    // Asymptotic e^x/x sum k!/x^k; the smallest term near k = x is far below eps.
    let mut sum = 1.0;
    let mut term = 1.0;
    for k in 1..MAX_TERMS {
        let next = term * k as f64 / x;
        if next > term {
            break;
        }
        term = next;
        sum += term;
        if term < f64::EPSILON * sum {
            break;
        }
    }
    let value = (x - x.ln()).exp() * sum;
    if !value.is_finite() {
        return Err(Error::Range(format!("Ei({x}) overflows")));
    }
    Ok(value)
}

/// `e^u E1(u)` for `u > 0`; equals `-e^u Ei(-u)` and stays O(1/u) for large `u`.
pub fn expint_e1_scaled(u: f64) -> Result<f64> {
    if !(u > 0.0) || !u.is_finite() {
        return Err(Error::domain(format!("scaled E1 needs finite u > 0, got {u}")));
    }
    if u <= 1.0 {
        Ok(u.exp() * e1_series_real(u))
    } else {
        Ok(e1_scaled_cf_real(u))
    }
}

fn e1_series_real(u: f64) -> f64 {
    // E1(u) = -gamma - ln u - sum_{k>=1} (-u)^k / (k k!)
    let mut sum = 0.0;
    let mut p = 1.0;
    for k in 1..MAX_TERMS {
        p *= -u / k as f64;
        let term = p / k as f64;
        sum += term;
        if term.abs() < f64::EPSILON * sum.abs().max(1e-300) {
            break;
        }
    }
    -EULER_GAMMA - u.ln() - sum
}

fn e1_scaled_cf_real(u: f64) -> f64 {
    let mut b = u + 1.0;
    let mut c = 1.0 / TINY;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..MAX_TERMS {
        let an = -((i * i) as f64);
        b += 2.0;
        d = 1.0 / (an * d + b);
        c = b + an / c;
        let del = c * d;
        h *= del;
        if (del - 1.0).abs() < f64::EPSILON {
            break;
        }
    }
    h
}

fn ei_series_positive(x: f64) -> f64 {
    let mut sum = 0.0;
    let mut p = 1.0;
    for k in 1..MAX_TERMS {
        p *= x / k as f64;
        let term = p / k as f64;
        sum += term;
        if term < f64::EPSILON * sum {
            break;
        }
    }
    EULER_GAMMA + x.ln() + sum
}

/// Complex exponential integral `Ei(z) = -E1(-z)`.
///
/// On the negative real axis this is the real `Ei`. On the positive real
/// axis (the cut) the value from the upper side, `Ei(x) + i pi`, is returned.
pub fn expint_ei_complex(z: Complex64) -> Result<Complex64> {
    Ok(-expint_e1_complex(-z)?)
}

/// `e^{-z} Ei(z)`, finite even when `e^{-z}` alone would overflow.
pub fn expint_ei_complex_scaled(z: Complex64) -> Result<Complex64> {
    Ok(-expint_e1_complex_scaled(-z)?)
}

/// Principal-branch `E1(w)`.
pub fn expint_e1_complex(w: Complex64) -> Result<Complex64> {
    check_complex(w)?;
    match region(w) {
        Region::Series => Ok(e1_series_complex(w)),
        Region::ContinuedFraction => Ok(e1_scaled_cf_complex(w)? * (-w).exp()),
        Region::Asymptotic => Ok(e1_scaled_asymptotic(w) * (-w).exp() - stokes_constant(w)),
    }
}

/// `e^w E1(w)`.
pub fn expint_e1_complex_scaled(w: Complex64) -> Result<Complex64> {
    check_complex(w)?;
    match region(w) {
        Region::Series => Ok(e1_series_complex(w) * w.exp()),
        Region::ContinuedFraction => e1_scaled_cf_complex(w),
        Region::Asymptotic => Ok(e1_scaled_asymptotic(w) - stokes_constant(w) * w.exp()),
    }
}

fn check_complex(w: Complex64) -> Result<()> {
    if w.re.is_nan() || w.im.is_nan() {
        return Err(Error::domain("E1 of NaN"));
    }
    if w.re == 0.0 && w.im == 0.0 {
        return Err(Error::domain("E1 has a logarithmic singularity at 0"));
    }
    if !w.re.is_finite() || !w.im.is_finite() {
        return Err(Error::domain("E1 of a non-finite argument"));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Region {
    Series,
    ContinuedFraction,
    Asymptotic,
}

fn region(w: Complex64) -> Region {
    let r = w.norm();
    if r <= 2.0 {
        return Region::Series;
    }
    if w.re >= 0.0 {
        return Region::ContinuedFraction;
    }
    // Left half-plane: the series is well conditioned when |w| + Re w is small
    // (cancellation grows like exp(|w| + Re w)); the continued fraction
    // converges slowly next to the negative axis.
    if r + w.re <= 4.0 {
        if r > 30.0 {
            Region::Asymptotic
        } else {
            Region::Series
        }
    } else {
        Region::ContinuedFraction
    }
}

fn e1_series_complex(w: Complex64) -> Complex64 {
    let mut sum = Complex64::new(0.0, 0.0);
    let mut p = Complex64::new(1.0, 0.0);
    for k in 1..MAX_TERMS {
        p *= -w / k as f64;
        let term = p / k as f64;
        sum += term;
        if term.norm() < f64::EPSILON * sum.norm().max(1e-300) && k as f64 > w.norm() {
            break;
        }
    }
    -EULER_GAMMA - w.ln() - sum
}

fn e1_scaled_cf_complex(w: Complex64) -> Result<Complex64> {
    let one = Complex64::new(1.0, 0.0);
    let mut b = w + 1.0;
    let mut c = Complex64::new(1.0 / TINY, 0.0);
    let mut d = one / b;
    let mut h = d;
    for i in 1..MAX_TERMS {
        let an = -((i * i) as f64);
        b += 2.0;
        d = an * d + b;
        if d.norm() < TINY {
            d = Complex64::new(TINY, 0.0);
        }
        c = b + an / c;
        if c.norm() < TINY {
            c = Complex64::new(TINY, 0.0);
        }
        d = one / d;
        let del = c * d;
        h *= del;
        if (del - one).norm() < 2.0 * f64::EPSILON {
            return Ok(h);
        }
    }
    Err(Error::accuracy(
        format!("E1 continued fraction did not converge at {w}"),
        h.re,
    ))
}

fn e1_scaled_asymptotic(w: Complex64) -> Complex64 {
    // e^w E1(w) ~ (1/w) sum_k (-1)^k k! / w^k
    let mut sum = Complex64::new(1.0, 0.0);
    let mut term = Complex64::new(1.0, 0.0);
    for k in 1..MAX_TERMS {
        let next = -term * (k as f64) / w;
        if next.norm() > term.norm() {
            break;
        }
        term = next;
        sum += term;
        if term.norm() < f64::EPSILON * sum.norm() {
            break;
        }
    }
    sum / w
}

// Jump of E1 across its cut, switched on in the left half-plane.
fn stokes_constant(w: Complex64) -> Complex64 {
    let sign = if w.im.is_sign_negative() { -1.0 } else { 1.0 };
    Complex64::new(0.0, sign * std::f64::consts::PI)
}
