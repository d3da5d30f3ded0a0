//! The non-split two-power chain: print the Z_16 circuit's conditional
//! phase ladder and confirm the whole family reproduces the classical DFT.
//!
//! ```sh
//! cargo run --release --example two_power_ladder
//! ```

use gqft::group::{Group, GroupSpec};
use gqft::rep::Reps;
use gqft::synth::{self, PlanChoice};
use gqft::verify::{self, fit, VerifyOptions};

fn main() {
    let reps = Reps::build(Group::build(&GroupSpec::Cyclic { n: 16 }).unwrap()).unwrap();
    let (circuit, plan) = synth::synthesize(&reps, PlanChoice::Auto).unwrap();
    println!("Z_16 gate sequence ({} gates):", circuit.gates.len());
    for gate in &circuit.gates {
        println!("  {}", gate.note);
    }
    for lp in &plan.levels {
        println!("level {} strategy: {:?}", lp.level, lp.strategy);
    }

    println!("\nverifying Z_2 .. Z_256 against the discrete Fourier transform:");
    let options = VerifyOptions { tolerance: 1e-9, ..Default::default() };
    for n in 1..=8u32 {
        let report =
            verify::verify_group(&GroupSpec::Cyclic { n: 1 << n }, &options).unwrap();
        println!(
            "  Z_{:<4} deviation {:.2e}, {} gates{}  -> {}",
            1u64 << n,
            report.max_deviation,
            report.gate_count,
            if report.folded { " (folded run)" } else { "" },
            if report.passed { "PASS" } else { "FAIL" }
        );
    }

    let rows = verify::cost_report("cyclic-two-power", 1, 8).unwrap();
    let xs: Vec<f64> = rows.iter().map(|r| r.parameter as f64).collect();
    let ys: Vec<f64> = rows.iter().map(|r| r.gate_count as f64).collect();
    let coeffs = fit::polyfit(&xs, &ys, 2);
    println!(
        "\ngate counts {:?} fit {:.2} + {:.2}n + {:.2}n² (residual {:.1e})",
        rows.iter().map(|r| r.gate_count).collect::<Vec<_>>(),
        coeffs[0],
        coeffs[1],
        coeffs[2],
        fit::max_relative_residual(&coeffs, &xs, &ys)
    );
}
