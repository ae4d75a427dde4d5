//! Runs the quick tier of the cross-check suite and prints its table.
//!
//! Run with `cargo run --release --example verify_suite`.

use vertexkernels::verify::{format_table, run_suite, Tier};

fn main() {
    let outcomes = run_suite(Tier::Quick);
    print!("{}", format_table(&outcomes));
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    println!("{} checks, {failed} failed", outcomes.len());
    if failed > 0 {
        std::process::exit(2);
    }
}
