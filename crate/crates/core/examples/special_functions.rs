//! Exponential integrals, erfc, adaptive quadrature and Richardson
//! extrapolation.
//!
//! Run with `cargo run --example special_functions`.

use vertexkernels::specialfn::{
    erfc_real, erfcx, expint_e1_scaled, expint_ei, expint_ei_complex, extract_linear_coefficient, integrate_adaptive,
};
use vertexkernels::{Complex64, Result};

fn main() -> Result<()> {
    for x in [-50.0, -2.0, -1e-8, 0.5, 10.0] {
        println!("Ei({x:e}) = {:.16e}", expint_ei(x)?);
    }
    println!("e^u E1(u) at u = 1e-3, 1, 100: {:.12} {:.12} {:.12}",
        expint_e1_scaled(1e-3)?, expint_e1_scaled(1.0)?, expint_e1_scaled(100.0)?);
    let z = Complex64::new(-1.0, 2.0);
    println!("Ei(-1 + 2i) = {:.14}", expint_ei_complex(z)?);

    println!("\nerfc(0.5) = {:.16e}, erfc(5) = {:.16e}", erfc_real(0.5), erfc_real(5.0));
    println!("erfcx(30) = {:.16e}", erfcx(30.0));

    let r = integrate_adaptive(|x| (1.0 + x * x).recip(), 0.0, 1.0, 1e-13)?;
    println!("\nint_0^1 dx/(1+x^2) = {:.16} (pi/4 = {:.16}), estimate {:.1e}, {} evaluations",
        r.value, std::f64::consts::FRAC_PI_4, r.error_estimate, r.evaluations);

    let c1 = extract_linear_coefficient(|t| (2.0 * t).cos() + 3.0 * t, 0.01, 0.16)?;
    println!("linear coefficient of cos 2t + 3t: {c1:.12}");
    Ok(())
}
