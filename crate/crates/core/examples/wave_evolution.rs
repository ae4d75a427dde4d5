//! Exact wave evolution of a bump through the vertex, checked against the
//! leapfrog oracle, with the energy along the way.
//!
//! Run with `cargo run --release --example wave_evolution`.

use vertexkernels::wavesolve::{evolve_exact, evolve_fd_oracle, exact_snapshot, robin_energy, InitialData, SmoothBump};
use vertexkernels::{EdgePoint, Grid, Result, StarGraphConfig};

fn main() -> Result<()> {
    let g = StarGraphConfig::new(3, 2.0)?;
    let bump = SmoothBump::new(3.0, 1.0, 1.0)?;
    let data = InitialData::new(bump.on_edges(&[1.0, 0.0, 0.0])?);

    println!("u at x = 1 on each edge (bump starts on edge 1 at x = 3):");
    for t in [1.0, 3.0, 4.0, 5.0, 7.0] {
        let u: Vec<String> = (1..=3)
            .map(|j| evolve_exact(&g, &data, t, EdgePoint::new(j, 1.0)?).map(|v| format!("{v:+.6}")))
            .collect::<Result<_>>()?;
        println!("  t = {t}: {}", u.join("  "));
    }

    let t_final = 4.0;
    let grid = Grid::new(0.0, 9.0, 1801)?;
    let fd = evolve_fd_oracle(&g, &data, t_final, grid, 0.5)?;
    let exact = exact_snapshot(&g, &data, t_final, grid)?;
    let worst = fd
        .edges
        .iter()
        .zip(&exact.edges)
        .flat_map(|(a, b)| a.u.iter().zip(&b.u).map(|(x, y)| (x - y).abs()))
        .fold(0.0, f64::max);
    println!("\nleapfrog vs exact at t = {t_final}, h = {}: max |diff| = {worst:.2e}", grid.spacing());

    let grid = Grid::new(0.0, 15.0, 6001)?;
    println!("\nenergy (sum of edge integrals + alpha/2 u(0)^2):");
    for t in [0.0, 2.0, 3.0, 4.0, 8.0] {
        let e = robin_energy(&g, &exact_snapshot(&g, &data, t, grid)?)?;
        println!("  t = {t}: {:.12}", e.value);
    }
    Ok(())
}
