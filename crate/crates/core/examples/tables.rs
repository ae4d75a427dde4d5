//! Builds a table by hand and writes it as CSV and JSON, the formats used by
//! the command-line tool.
//!
//! Run with `cargo run --example tables`.

use vertexkernels::cli::{write_table, OutputFormat};
use vertexkernels::spectral::{global_density_regular, staircase_increment};
use vertexkernels::{Grid, Result, StarGraphConfig, TabulatedSweep};

fn main() -> Result<()> {
    let g = StarGraphConfig::new(4, 0.5)?;
    let density = global_density_regular(&g);
    let mut table = TabulatedSweep::new(["omega", "rho_regular", "delta_N"]);
    for omega in Grid::new(0.0, 2.0, 5)?.points() {
        table.push_row(vec![omega, density.regular_at(omega), staircase_increment(&g, omega)])?;
    }
    table.push_metadata("delta_weight_at_zero", density.delta_weight_at_zero());

    let stdout = std::io::stdout();
    write_table(&table, OutputFormat::Csv, stdout.lock())?;
    println!();
    write_table(&table, OutputFormat::Json, stdout.lock())?;
    Ok(())
}
