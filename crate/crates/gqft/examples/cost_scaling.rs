//! Synthesis-only cost scaling across families, as CSV.
//!
//! ```sh
//! cargo run --release --example cost_scaling
//! ```

use gqft::verify::{self, fit};

fn main() {
    for (family, from, to) in [
        ("symmetric", 3, 6),
        ("cyclic-two-power", 2, 10),
        ("dihedral", 3, 13),
    ] {
        let rows = verify::cost_report(family, from, to).unwrap();
        println!("--- {family} ---");
        print!("{}", verify::cost_rows_to_csv(&rows));
        let xs: Vec<f64> = rows.iter().map(|r| r.parameter as f64).collect();
        let ys: Vec<f64> = rows.iter().map(|r| r.cost as f64).collect();
        let degree = 3.min(xs.len() - 1);
        let coeffs = fit::polyfit(&xs, &ys, degree);
        println!(
            "degree-{degree} fit residual: {:.2e}\n",
            fit::max_relative_residual(&coeffs, &xs, &ys)
        );
    }
}
