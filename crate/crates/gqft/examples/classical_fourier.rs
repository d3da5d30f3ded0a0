//! The classical side: Fourier coefficients of functions on a group,
//! Plancherel mass, and exact inversion.
//!
//! ```sh
//! cargo run --release --example classical_fourier
//! ```

use num_complex::Complex64;

use gqft::group::{Group, GroupSpec};
use gqft::rep::{fourier, Reps};
use gqft::rng::SplitMix64;

fn main() {
    let reps = Reps::build(Group::build(&GroupSpec::Symmetric { n: 3 }).unwrap()).unwrap();
    let group = reps.group();
    let order = group.order() as usize;
    let top = group.num_levels();

    // The delta at the identity spreads evenly: f̂(ρ) = √(d_ρ/|G|)·I.
    let mut delta = vec![Complex64::new(0.0, 0.0); order];
    delta[group.element_index(&group.identity()).unwrap()] = Complex64::new(1.0, 0.0);
    let coeffs = fourier::fourier(&reps, &delta).unwrap();
    println!("f = δ_e on S_3:");
    for (node, m) in coeffs.matrices.iter().enumerate() {
        println!(
            "  f̂({}) = {:.4}·I ({}x{})",
            reps.irreps(top)[node].label,
            m[(0, 0)].re,
            m.rows,
            m.cols
        );
    }

    // A random unit-norm function: Plancherel and round-trip.
    let mut rng = SplitMix64::new(42);
    let mut f: Vec<Complex64> = (0..order)
        .map(|_| Complex64::new(rng.next_f64() - 0.5, rng.next_f64() - 0.5))
        .collect();
    let norm = f.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    f.iter_mut().for_each(|z| *z /= norm);

    let coeffs = fourier::fourier(&reps, &f).unwrap();
    println!("\nrandom unit f: Σ_ρ ‖f̂(ρ)‖²_F = {:.12}", coeffs.total_mass());

    let back = fourier::inverse_fourier(&reps, &coeffs).unwrap();
    let dev = f
        .iter()
        .zip(&back)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    println!("inversion round-trip deviation: {dev:.3e}");

    // The reference unitary used by every circuit check.
    let matrix = fourier::dense_qft_matrix(&reps).unwrap();
    println!(
        "dense reference on S_3: {}x{}, unitarity residual {:.3e}",
        matrix.rows,
        matrix.cols,
        matrix.unitarity_residual()
    );
}
