//! Complementary error function and its scaled form `erfcx(x) = e^{x^2} erfc(x)`.

/// `erfc(x)`, backed by the `libm` port of the FreeBSD/musl routine.
pub fn erfc_real(x: f64) -> f64 {
    libm::erfc(x)
}

/// `e^{x^2} erfc(x)`.
///
/// For `x >= 25` the asymptotic series is summed directly so the result
/// never passes through an underflowing `erfc`. Overflows to `+inf` for
/// `x < -26.6`.
pub fn erfcx(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x < 0.0 {
        return 2.0 * exp_square(x) - erfcx(-x);
    }
    if x < 25.0 {
        return exp_square(x) * libm::erfc(x);
    }
    // 1/(x sqrt(pi)) * sum_k (-1)^k (2k-1)!! / (2x^2)^k
    let inv = 1.0 / (2.0 * x * x);
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..40 {
        term *= -((2 * k - 1) as f64) * inv;
        sum += term;
        if term.abs() < f64::EPSILON * sum {
            break;
        }
    }
    sum / (x * std::f64::consts::PI.sqrt())
}

/// `exp(x^2)` with the rounding error of `x*x` folded back in.
pub(crate) fn exp_square(x: f64) -> f64 {
    let hi = x * x;
    let lo = x.mul_add(x, -hi);
    hi.exp() * (1.0 + lo)
}
