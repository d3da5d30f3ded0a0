//! Synthesize the Fourier transform circuit for S_4, run it on the
//! simulator, and compare every column against the dense reference.
//!
//! ```sh
//! cargo run --release --example symmetric_qft
//! ```

use num_complex::Complex64;

use gqft::group::{Group, GroupSpec};
use gqft::rep::{fourier, Reps};
use gqft::sim::{self, DEFAULT_AMP_CAP};
use gqft::synth::{self, PlanChoice};

fn main() {
    let reps = Reps::build(Group::build(&GroupSpec::Symmetric { n: 4 }).unwrap()).unwrap();
    let (circuit, plan) = synth::synthesize(&reps, PlanChoice::Auto).unwrap();
    println!(
        "S_4 circuit: {} gates, cost {}, state dimension {}",
        circuit.gates.len(),
        circuit.cost().unwrap(),
        circuit.layout.dimension()
    );
    for lp in &plan.levels {
        println!("  level {}: {:?} over {} cosets", lp.level, lp.strategy, lp.index);
    }

    let reference = fourier::dense_qft_matrix(&reps).unwrap();
    let order = reps.group().order() as usize;
    let mut worst: f64 = 0.0;
    let mut worst_leak: f64 = 0.0;
    for col in 0..order {
        let mut f = vec![Complex64::new(0.0, 0.0); order];
        f[col] = Complex64::new(1.0, 0.0);
        let mut state =
            sim::encode_input(reps.group(), &circuit.layout, &f, DEFAULT_AMP_CAP).unwrap();
        sim::apply(&circuit, &mut state).unwrap();
        let decoded = sim::decode_output(&state);
        worst_leak = worst_leak.max(decoded.leakage);
        for (row, amp) in decoded.amplitudes.iter().enumerate() {
            worst = worst.max((amp - reference[(row, col)]).norm());
        }
    }
    println!("max |circuit - reference| over all {order} columns: {worst:.3e}");
    println!("max leakage outside the output subspace: {worst_leak:.3e}");

    // One decoded column in detail: the transform of the delta at (1 2 3 4).
    let g = reps.group().parse("(1 2 3 4)").unwrap();
    let col = reps.group().element_index(&g).unwrap();
    let mut f = vec![Complex64::new(0.0, 0.0); order];
    f[col] = Complex64::new(1.0, 0.0);
    let mut state = sim::encode_input(reps.group(), &circuit.layout, &f, DEFAULT_AMP_CAP).unwrap();
    sim::apply(&circuit, &mut state).unwrap();
    let decoded = sim::decode_output(&state);
    println!("\ntransform of δ_(1 2 3 4), entries with |amp| > 0.2:");
    for ((s, t), amp) in circuit.layout.output_pairs.iter().zip(&decoded.amplitudes) {
        if amp.norm() > 0.2 {
            let (node, _) = reps.diagram().path_to_index(s).unwrap();
            println!(
                "  {} rows {:?}|{:?}: {:+.4} {:+.4}i",
                reps.irreps(3)[node].label,
                s,
                t,
                amp.re,
                amp.im
            );
        }
    }
}
