//! Local spectral density, the spectral kernel, the global density of the
//! vertex and its staircase.
//!
//! Run with `cargo run --example spectral_densities`.

use vertexkernels::spectral::{
    global_density_regular, local_spectral_density, scattering_reconstruction, spectral_projection_kernel,
    staircase_increment,
};
use vertexkernels::{EdgePoint, Result, StarGraphConfig};

fn main() -> Result<()> {
    let g = StarGraphConfig::new(3, 1.0)?;

    println!("local density on edge 1 at omega = 2 (free value 1/pi = {:.6})", std::f64::consts::FRAC_1_PI);
    for x in [0.0, 0.25, 0.5, 1.0, 2.0, 4.0] {
        let rho = local_spectral_density(&g, 2.0, EdgePoint::new(1, x)?)?;
        println!("  x = {x:4}  rho = {rho:.6}");
    }

    let (a, b) = (EdgePoint::new(1, 0.7)?, EdgePoint::new(2, 1.3)?);
    let sigma = spectral_projection_kernel(&g, 1.5, a, b)?;
    let rebuilt = scattering_reconstruction(&g, 1.5, a, b)?;
    println!("\nsigma(1.5; (1,0.7), (2,1.3)) = {sigma:.15}");
    println!("from scattering states       = {rebuilt:.15}");

    let global = global_density_regular(&g);
    println!("\nglobal density: delta weight at omega = 0 is {}", global.delta_weight_at_zero());
    println!("{:>6} {:>12} {:>12}", "omega", "regular", "staircase");
    for omega in [0.1, 0.5, 1.0, 2.0, 5.0, 20.0] {
        println!("{omega:6} {:12.6} {:12.6}", global.regular_at(omega), staircase_increment(&g, omega));
    }

    let kirchhoff = StarGraphConfig::new(2, 0.0)?;
    println!("\nN = 2, alpha = 0: staircase {} (the vertex is invisible)", staircase_increment(&kirchhoff, 3.0));
    Ok(())
}
