//! Feed a hand-written function on a group through a synthesized circuit
//! and read the coefficients back off the output registers.
//!
//! ```sh
//! cargo run --release --example custom_input
//! ```

use num_complex::Complex64;

use gqft::group::{Group, GroupSpec};
use gqft::rep::{fourier, Reps};
use gqft::sim::{self, DEFAULT_AMP_CAP};
use gqft::synth::{self, PlanChoice};

fn main() {
    let reps = Reps::build(Group::build(&GroupSpec::Dihedral { p: 5 }).unwrap()).unwrap();
    let group = reps.group();
    let order = group.order() as usize;

    // A function supported on the two reflections t and t·x²:
    // f = (|t⟩ + |t x²⟩)/√2, written by element name.
    let mut f = vec![Complex64::new(0.0, 0.0); order];
    let half = Complex64::new(1.0 / 2.0f64.sqrt(), 0.0);
    for name in ["t", "t x^2"] {
        let el = group.parse(name).unwrap();
        f[group.element_index(&el).unwrap()] = half;
    }

    let (circuit, _) = synth::synthesize(&reps, PlanChoice::Auto).unwrap();
    let mut state = sim::encode_input(group, &circuit.layout, &f, DEFAULT_AMP_CAP).unwrap();
    sim::apply(&circuit, &mut state).unwrap();
    let decoded = sim::decode_output(&state);

    println!("transform of (|t⟩ + |t x²⟩)/√2 on D_5 (leakage {:.1e}):", decoded.leakage);
    for ((s, t), amp) in circuit.layout.output_pairs.iter().zip(&decoded.amplitudes) {
        if amp.norm() > 1e-12 {
            let (node, _) = reps.diagram().path_to_index(s).unwrap();
            println!(
                "  {:<10} s={s:?} t={t:?}  {:+.4} {:+.4}i",
                reps.irreps(2)[node].label.to_string(),
                amp.re,
                amp.im
            );
        }
    }

    // Cross-check against the classical coefficients.
    let coeffs = fourier::fourier(&reps, &f).unwrap();
    let mut worst: f64 = 0.0;
    for ((s, t), amp) in circuit.layout.output_pairs.iter().zip(&decoded.amplitudes) {
        let (node, row) = reps.diagram().path_to_index(s).unwrap();
        let (_, col) = reps.diagram().path_to_index(t).unwrap();
        worst = worst.max((coeffs.matrices[node][(row, col)] - amp).norm());
    }
    println!("max difference vs classical coefficients: {worst:.3e}");
}
