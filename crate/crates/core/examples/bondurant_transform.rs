//! The map `T` from Dirichlet-type data to solutions with the delta vertex,
//! and its integral inverse.
//!
//! Run with `cargo run --example bondurant_transform`.

use vertexkernels::bondurant::{apply_t, apply_t_inverse, roundtrip_residual, t_inverse_derivative, DEFAULT_TOL};
use vertexkernels::{EdgePoint, EdgeVectorFunction, Result, StarGraphConfig};

fn main() -> Result<()> {
    let n = 3;
    let alpha = 1.5;
    let g = StarGraphConfig::new(n, alpha)?;

    // v_j(x) = c_j (e^{-x} - e^{-2x}) vanishes at the vertex on every edge.
    let c = [1.0, -0.5, 2.0];
    let v = EdgeVectorFunction::new(n, 1.0, move |j, x| c[j - 1] * ((-x).exp() - (-2.0 * x).exp()))?
        .with_derivative(move |j, x| c[j - 1] * (2.0 * (-2.0 * x).exp() - (-x).exp()));

    println!("u = T^-1 v at the vertex:");
    let mut flux = 0.0;
    for j in 1..=n {
        let p = EdgePoint::new(j, 0.0)?;
        let u = apply_t_inverse(&v, &g, p, DEFAULT_TOL)?;
        let du = t_inverse_derivative(&v, &g, p, DEFAULT_TOL)?;
        flux += du;
        println!("  edge {j}: u(0) = {u:.12}  u'(0) = {du:.12}");
    }
    let u0 = apply_t_inverse(&v, &g, EdgePoint::new(1, 0.0)?, DEFAULT_TOL)?;
    println!("sum of u'(0) = {flux:.12}, alpha u(0) = {:.12}", alpha * u0);

    let points: Vec<EdgePoint> = (0..12)
        .map(|k| EdgePoint::new(1 + k % n, 0.4 * k as f64))
        .collect::<Result<_>>()?;
    println!("\nmax |T T^-1 v - v| over 12 points: {:.2e}", roundtrip_residual(&v, &g, &points)?);

    let w = EdgeVectorFunction::uniform(n, 1.0, |x| (-x).exp())?.with_derivative(|_, x| -(-x).exp());
    println!("(T e^-x)(x = 0) = {}", apply_t(&w, &g, EdgePoint::new(1, 0.0)?)?);
    Ok(())
}
