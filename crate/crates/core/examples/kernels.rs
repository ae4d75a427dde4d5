//! Heat, cylinder and quantum kernels on the star, and the structure of the
//! wave kernel.
//!
//! Run with `cargo run --example kernels`.

use vertexkernels::kernels::{
    apply_smooth_kernel, cylinder_kernel, free_heat, heat_kernel, quantum_kernel, wave_kernel_slice, ProblemKind,
    QUANTUM_TOL,
};
use vertexkernels::{EdgePoint, EdgeVectorFunction, Result, StarGraphConfig};

fn main() -> Result<()> {
    let g = StarGraphConfig::new(3, 2.0)?;
    let source = EdgePoint::new(2, 1.0)?;

    println!("heat kernel from (2, 1.0) at t = 0.5");
    for (j, x) in [(2, 1.0), (2, 0.5), (1, 0.5), (1, 0.0), (3, 0.0)] {
        let k = heat_kernel(&g, 0.5, EdgePoint::new(j, x)?, source)?;
        println!("  ({j}, {x})  {k:.10}");
    }
    println!("  free heat kernel at the same distance 0: {:.10}", free_heat(0.5, 0.0));

    let target = EdgePoint::new(1, 0.3)?;
    println!("\ncylinder kernel (1,0.3) <- (2,1.0):");
    for t in [0.1, 1.0, 10.0] {
        println!("  t = {t:5}  {:.10}", cylinder_kernel(&g, t, target, source)?);
    }
    let q = quantum_kernel(&g, 0.8, target, source, QUANTUM_TOL)?;
    println!("\nquantum kernel at t = 0.8: {:.10} + {:.10} i", q.re, q.im);

    // Heat flow of a profile supported on edge 1.
    let f = EdgeVectorFunction::new(3, 1.0, |j, y| if j == 1 { y * (-y).exp() } else { 0.0 })?;
    println!("\nheat flow of y e^-y on edge 1, observed on edge 3 at x = 0.5:");
    for t in [0.01, 0.1, 1.0] {
        let u = apply_smooth_kernel(ProblemKind::Heat, &g, t, EdgePoint::new(3, 0.5)?, &f, 1e-10)?;
        println!("  t = {t:5}  u = {u:.8}");
    }

    let slice = wave_kernel_slice(&g, 2.0, 1, 2, 0.5)?;
    println!("\nwave kernel G^(1,2)(t = 2, x = 0.5, y):");
    for d in &slice.dirac_terms {
        println!("  {:+.6} delta(y - {})", d.weight, d.location);
    }
    if let Some(tail) = slice.tail {
        println!("  {:+.6} exp(-{} (t - x - y)) on 0 <= y <= {}", tail.amplitude, tail.rate, tail.upper);
    }
    Ok(())
}
