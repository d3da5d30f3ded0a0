//! The diagonal-pair fold must be invisible: folded and unfolded runs of
//! the same circuit produce identical decoded outputs, and circuits that
//! could tell the registers apart are refused.

use num_complex::Complex64;

use gqft::group::{Group, GroupSpec};
use gqft::rep::Reps;
use gqft::sim::{self, DEFAULT_AMP_CAP};
use gqft::synth::{self, PlanChoice};
use gqft::verify::fold::fold_circuit;

fn reps(spec: GroupSpec) -> Reps {
    Reps::build(Group::build(&spec).unwrap()).unwrap()
}

fn decoded_outputs(
    reps: &Reps,
    circuit: &gqft::circuit::Circuit,
    col: usize,
) -> (Vec<Complex64>, f64) {
    let order = reps.group().order() as usize;
    let mut f = vec![Complex64::new(0.0, 0.0); order];
    f[col] = Complex64::new(1.0, 0.0);
    let mut state = sim::encode_input(reps.group(), &circuit.layout, &f, DEFAULT_AMP_CAP).unwrap();
    sim::apply(circuit, &mut state).unwrap();
    let d = sim::decode_output(&state);
    (d.amplitudes, d.leakage)
}

#[test]
fn folded_runs_agree_with_unfolded_runs() {
    // The coset-serial plan exercises every foldable gate kind: diagonal
    // structured twiddles, the embedding unitary, injection swaps; the
    // auto plan covers phases and the primitive transform.
    for (spec, plan) in [
        (GroupSpec::Cyclic { n: 8 }, PlanChoice::Beals),
        (GroupSpec::Cyclic { n: 16 }, PlanChoice::Auto),
        (GroupSpec::Cyclic { n: 12 }, PlanChoice::Auto),
    ] {
        let r = reps(spec.clone());
        let (circuit, _) = synth::synthesize(&r, plan).unwrap();
        let folded = fold_circuit(&circuit).expect("cyclic circuits must fold");
        assert!(folded.layout.dimension() < circuit.layout.dimension());
        for col in 0..r.group().order() as usize {
            let (a, leak_a) = decoded_outputs(&r, &circuit, col);
            let (b, leak_b) = decoded_outputs(&r, &folded, col);
            let dev = a
                .iter()
                .zip(&b)
                .map(|(x, y)| (x - y).norm())
                .fold(0.0, f64::max);
            assert!(dev < 1e-13, "fold changes output of {spec:?} col {col}: {dev:.2e}");
            assert!((leak_a - leak_b).abs() < 1e-13);
        }
    }
}

#[test]
fn circuits_with_genuine_row_action_are_refused() {
    // Nonabelian outputs occupy off-diagonal path pairs, which the fold
    // rejects before even looking at the gates.
    let r = reps(GroupSpec::Symmetric { n: 3 });
    let (circuit, _) = synth::synthesize(&r, PlanChoice::Beals).unwrap();
    let err = fold_circuit(&circuit).unwrap_err();
    assert!(err.contains("off-diagonal pairs"), "reason: {err}");

    let r = reps(GroupSpec::Dihedral { p: 5 });
    let (circuit, _) = synth::synthesize(&r, PlanChoice::Homothetic).unwrap();
    assert!(fold_circuit(&circuit).is_err());

    // A gate that moves row paths inside an otherwise foldable circuit is
    // caught by the per-gate diagonality check.
    let r = reps(GroupSpec::Cyclic { n: 8 });
    let (mut circuit, _) = synth::synthesize(&r, PlanChoice::Beals).unwrap();
    let swapped = circuit
        .gates
        .iter_mut()
        .find_map(|g| match &mut g.op {
            gqft::circuit::GateOp::StructuredUnitary { matrix, blocks, .. }
                if matrix.rows >= 2 =>
            {
                // Replace the diagonal by a two-path swap.
                let d = matrix.rows;
                *matrix = {
                    let mut m = gqft::linalg::Mat::identity(d);
                    m[(0, 0)] = Complex64::new(0.0, 0.0);
                    m[(1, 1)] = Complex64::new(0.0, 0.0);
                    m[(0, 1)] = Complex64::new(1.0, 0.0);
                    m[(1, 0)] = Complex64::new(1.0, 0.0);
                    m
                };
                blocks.clear();
                Some(())
            }
            _ => None,
        })
        .is_some();
    assert!(swapped, "expected a structured gate to tamper with");
    let err = fold_circuit(&circuit).unwrap_err();
    assert!(err.contains("not diagonal"), "reason: {err}");
}
