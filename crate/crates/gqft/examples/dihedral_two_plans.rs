//! Synthesize the D_7 transform twice — once coset by coset, once with the
//! orbit-parallel stage — and check the two circuits agree on every input.
//!
//! ```sh
//! cargo run --release --example dihedral_two_plans
//! ```

use gqft::group::{Group, GroupSpec};
use gqft::rep::Reps;
use gqft::sim::DEFAULT_AMP_CAP;
use gqft::synth::{self, PlanChoice};
use gqft::verify;

fn main() {
    let reps = Reps::build(Group::build(&GroupSpec::Dihedral { p: 7 }).unwrap()).unwrap();

    let (serial, _) = synth::synthesize(&reps, PlanChoice::Beals).unwrap();
    let (parallel, plan) = synth::synthesize(&reps, PlanChoice::Homothetic).unwrap();
    println!("D_7 (order {}):", reps.group().order());
    println!(
        "  coset-serial plan:   {:3} gates, cost {}",
        serial.gates.len(),
        serial.cost().unwrap()
    );
    println!(
        "  orbit-parallel plan: {:3} gates, cost {}",
        parallel.gates.len(),
        parallel.cost().unwrap()
    );
    for lp in &plan.levels {
        println!(
            "    level {}: {:?}, split = {}, orbit sizes {:?}",
            lp.level, lp.strategy, lp.split, lp.orbit_sizes
        );
    }

    println!("\norbit-parallel gate sequence:");
    for gate in &parallel.gates {
        println!("  {}", gate.note);
    }

    let cross = verify::compare_plans(&reps, &serial, &parallel, DEFAULT_AMP_CAP).unwrap();
    println!("\nmax disagreement between the two circuits over all columns: {cross:.3e}");

    let report = verify::verify_group(
        &GroupSpec::Dihedral { p: 7 },
        &verify::VerifyOptions { plan: PlanChoice::Homothetic, ..Default::default() },
    )
    .unwrap();
    println!(
        "orbit-parallel vs dense reference: max deviation {:.3e}, leakage {:.3e} -> {}",
        report.max_deviation,
        report.max_leakage,
        if report.passed { "PASS" } else { "FAIL" }
    );
}
