//! Vacuum energy density near the vertex: closed form, asymptotic forms and
//! the two numerical routes.
//!
//! Run with `cargo run --release --example vacuum_energy`.

use std::f64::consts::PI;

use vertexkernels::vacuum::{energy_density, energy_density_closed, energy_density_far, energy_density_near, EnergyRoute};
use vertexkernels::{Result, StarGraphConfig};

fn main() -> Result<()> {
    let g = StarGraphConfig::new(3, 1.0)?;
    println!("N = 3, alpha = 1");
    println!("{:>6} {:>16} {:>16} {:>16} {:>10}", "x", "closed", "extraction", "density", "8 pi x^2 T");
    for x in [0.2, 0.5, 1.0, 2.0, 5.0] {
        let closed = energy_density_closed(&g, x)?;
        let ext = energy_density(&g, 1, x, EnergyRoute::SmallTExtraction)?.value;
        let den = energy_density(&g, 1, x, EnergyRoute::SubtractedDensity)?.value;
        println!("{x:6} {closed:16.10e} {ext:16.10e} {den:16.10e} {:10.6}", 8.0 * PI * x * x * closed);
    }

    println!("\nasymptotic forms (relative error against the closed form):");
    for x in [1e-4, 1e-3] {
        let c = energy_density_closed(&g, x)?;
        println!("  near, x = {x:e}: {:.3e}", (energy_density_near(&g, x)? / c - 1.0).abs());
    }
    for x in [1e2, 1e3] {
        let c = energy_density_closed(&g, x)?;
        println!("  far,  x = {x:e}: {:.3e}", (energy_density_far(&g, x)? / c - 1.0).abs());
    }

    let d = StarGraphConfig::dirichlet(1)?;
    println!("\nDirichlet half line at x = 1: {:.10} = 1/(8 pi)", energy_density_closed(&d, 1.0)?);
    let vacuous = StarGraphConfig::new(2, 0.0)?;
    println!("N = 2, alpha = 0 at x = 1: {}", energy_density_closed(&vacuous, 1.0)?);
    Ok(())
}
