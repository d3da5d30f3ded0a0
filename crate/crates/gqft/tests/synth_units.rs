//! Unit-level checks of the synthesis building blocks: scale factors,
//! twiddle words, the embedding unitary's action, and gate adjoints.

use num_complex::Complex64;

use gqft::circuit::{Circuit, Gate, GateOp};
use gqft::group::{Group, GroupSpec};
use gqft::linalg::Mat;
use gqft::rep::Reps;
use gqft::rng::SplitMix64;
use gqft::sim::{self, StateVector, DEFAULT_AMP_CAP};
use gqft::synth::{self, PlanChoice, ScaleFactorTable, SynthCtx};

fn reps(spec: GroupSpec) -> Reps {
    Reps::build(Group::build(&spec).unwrap()).unwrap()
}

fn ctx(reps: &Reps, choice: PlanChoice) -> SynthCtx<'_> {
    let plan = synth::plan(reps, choice).unwrap();
    SynthCtx::new(reps, &plan).unwrap()
}

#[test]
fn scale_factors_frozen_examples() {
    // Z_3 < Z_6: every character extends along two edges with A = 1/√2.
    let r = reps(GroupSpec::Cyclic { n: 6 });
    let table = ScaleFactorTable::build(&r).unwrap();
    for node in 0..3 {
        let row = table.row(2, node);
        assert_eq!(row.len(), 2);
        for &a in row {
            assert!((a - 1.0 / 2.0f64.sqrt()).abs() < 1e-14);
        }
    }

    // S_3 < S_4, σ = (2,1): edges to (3,1), (2,2), (2,1,1) carry
    // √(3/8), 1/2, √(3/8).
    let r = reps(GroupSpec::Symmetric { n: 4 });
    let table = ScaleFactorTable::build(&r).unwrap();
    let row = table.row(3, 1);
    assert_eq!(row.len(), 3);
    assert!((row[0] - (3.0f64 / 8.0).sqrt()).abs() < 1e-14);
    assert!((row[1] - 0.5).abs() < 1e-14);
    assert!((row[2] - (3.0f64 / 8.0).sqrt()).abs() < 1e-14);

    // Root level: A = √(d_ρ / |G_1|).
    let row = table.row(1, 0);
    let total: f64 = row.iter().map(|a| a * a).sum();
    assert!((total - 1.0).abs() < 1e-14);
}

#[test]
fn scale_normalization_every_node_every_group() {
    for spec in [
        GroupSpec::Symmetric { n: 5 },
        GroupSpec::Cyclic { n: 24 },
        GroupSpec::Dihedral { p: 13 },
        GroupSpec::Metacyclic { p: 5, q: 4, r: 4 },
    ] {
        let r = reps(spec);
        let table = ScaleFactorTable::build(&r).unwrap();
        for level in 1..=r.group().num_levels() {
            for node in 0..r.irreps(level - 1).len() {
                let total: f64 = table.row(level, node).iter().map(|a| a * a).sum();
                assert!((total - 1.0).abs() < 1e-12);
            }
        }
    }
}

#[test]
fn coset_swap_is_an_involution() {
    let r = reps(GroupSpec::Symmetric { n: 3 });
    let c = ctx(&r, PlanChoice::Beals);
    let gate = synth::coset_swap_gate(&c, 2, 1, "test".into());
    let circuit = Circuit { layout: c.layout.clone(), gates: vec![gate; 2] };
    let mut rng = SplitMix64::new(3);
    let mut state = random_state(&c.layout, &mut rng);
    let before = state.amps.clone();
    sim::apply(&circuit, &mut state).unwrap();
    let dev = max_dev(&before, &state.amps);
    assert!(dev < 1e-14, "double swap deviates {dev}");
}

fn random_state(layout: &gqft::circuit::RegisterLayout, rng: &mut SplitMix64) -> StateVector {
    let mut state = StateVector::zero(layout, DEFAULT_AMP_CAP).unwrap();
    for amp in state.amps.iter_mut() {
        *amp = Complex64::new(rng.next_f64() - 0.5, rng.next_f64() - 0.5);
    }
    let norm = state.norm_sqr().sqrt();
    for amp in state.amps.iter_mut() {
        *amp /= norm;
    }
    state
}

fn max_dev(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// Builds the adjoint gate list of a gate: matrices are conjugate
/// transposed, permutations reversed, phases negated, and the cyclic
/// transform uses F⁴ = I, so its adjoint is three more applications.
fn adjoint_gates(gate: &Gate) -> Vec<Gate> {
    let op = match &gate.op {
        GateOp::ConditionedUnitary { targets, branches } => GateOp::ConditionedUnitary {
            targets: targets.clone(),
            branches: branches
                .iter()
                .map(|b| gqft::circuit::Branch {
                    condition: b.condition.clone(),
                    matrix: b.matrix.adjoint(),
                })
                .collect(),
        },
        GateOp::ClassicalPermutation { registers, map } => GateOp::ClassicalPermutation {
            registers: registers.clone(),
            map: map.iter().map(|(a, b)| (b.clone(), a.clone())).collect(),
        },
        GateOp::Phase { registers, modulus, entries } => GateOp::Phase {
            registers: registers.clone(),
            modulus: *modulus,
            entries: entries
                .iter()
                .map(|(t, e)| (t.clone(), (*modulus - *e % *modulus) % *modulus))
                .collect(),
        },
        GateOp::PrimitiveCyclicQft { .. } => {
            return vec![gate.clone(), gate.clone(), gate.clone()];
        }
        GateOp::StructuredUnitary { level, paths, matrix, blocks } => GateOp::StructuredUnitary {
            level: *level,
            paths: paths.clone(),
            matrix: matrix.adjoint(),
            blocks: blocks
                .iter()
                .map(|b| gqft::circuit::CertBlock {
                    spec: b.spec.clone(),
                    matrix: b.matrix.adjoint(),
                })
                .collect(),
        },
    };
    vec![Gate { op, note: format!("{}+adj", gate.note) }]
}

#[test]
fn every_gate_followed_by_its_adjoint_is_identity() {
    for (spec, plan) in [
        (GroupSpec::Symmetric { n: 4 }, PlanChoice::Beals),
        (GroupSpec::Dihedral { p: 5 }, PlanChoice::Homothetic),
        (GroupSpec::Cyclic { n: 8 }, PlanChoice::Auto),
    ] {
        let r = reps(spec.clone());
        let (circuit, _) = synth::synthesize(&r, plan).unwrap();
        let mut rng = SplitMix64::new(11);
        for gate in &circuit.gates {
            let mut gates = vec![gate.clone()];
            gates.extend(adjoint_gates(gate));
            let test_circuit = Circuit { layout: circuit.layout.clone(), gates };
            let mut state = random_state(&circuit.layout, &mut rng);
            let before = state.amps.clone();
            sim::apply(&test_circuit, &mut state).unwrap();
            let dev = max_dev(&before, &state.amps);
            assert!(
                dev < 1e-10,
                "gate '{}' in {spec:?} is not unitary (dev {dev:.2e})",
                gate.note
            );
        }
    }
}

#[test]
fn twiddle_words_compose_to_the_representative() {
    // The composed twiddle product must equal ⊕_ρ ρ(α) on the path space.
    let r = reps(GroupSpec::Symmetric { n: 4 });
    let c = ctx(&r, PlanChoice::Beals);
    let d = r.diagram();
    let level = 3;
    let n_paths = d.paths[level].len();
    for (digit, alpha) in r.group().tower().transversal(level).iter().enumerate() {
        let gates = synth::twiddle_gates(&c, level, digit, false, "t").unwrap();
        if digit == 0 {
            assert!(gates.is_empty(), "identity twiddle must be empty");
            continue;
        }
        // Dense product of the emitted structured matrices. Gates apply
        // first-to-last, so the operator product runs reversed.
        let mut product = Mat::identity(n_paths);
        for gate in gates.iter().rev() {
            let GateOp::StructuredUnitary { matrix, .. } = &gate.op else {
                panic!("twiddles must be structured gates")
            };
            product = product.mul(matrix);
        }
        // Expected: ⊕_ρ ρ(α) in path order.
        let mut expected = Mat::zeros(n_paths, n_paths);
        for node in 0..r.irreps(level).len() {
            let img = r.evaluate(level, node, alpha).unwrap();
            let rows = &d.node_paths[level][node];
            for (i, &ri) in rows.iter().enumerate() {
                for (j, &rj) in rows.iter().enumerate() {
                    expected[(ri, rj)] = img[(i, j)];
                }
            }
        }
        let dev = product.max_abs_diff(&expected);
        assert!(dev < 1e-10, "twiddle mismatch for digit {digit}: {dev:.2e}");
    }
}

#[test]
fn s4_top_transversal_words() {
    // (3 4) is one structured gate with blocks of size ≤ 2; (1 4) factors
    // through all three adjacent transpositions.
    let r = reps(GroupSpec::Symmetric { n: 4 });
    let c = ctx(&r, PlanChoice::Beals);
    let t = r.group().tower().transversal(3).to_vec();
    let pos34 = t.iter().position(|a| r.group().format(a) == "(3 4)").unwrap();
    let gates = synth::twiddle_gates(&c, 3, pos34, false, "t").unwrap();
    assert_eq!(gates.len(), 1);
    for gate in &gates {
        let GateOp::StructuredUnitary { blocks, .. } = &gate.op else { unreachable!() };
        assert!(blocks.iter().all(|b| b.spec.m <= 2));
    }

    let pos14 = t.iter().position(|a| r.group().format(a) == "(1 4)").unwrap();
    let gates = synth::twiddle_gates(&c, 3, pos14, false, "t").unwrap();
    assert_eq!(gates.len(), 5, "word (1 2)(2 3)(3 4)(2 3)(1 2)");
    let mut used: Vec<usize> = gates
        .iter()
        .map(|g| match &g.op {
            GateOp::StructuredUnitary { .. } => {
                // generator index is recorded in the note as g<idx>
                g.note.split('g').next_back().unwrap().parse().unwrap()
            }
            _ => unreachable!(),
        })
        .collect();
    used.sort_unstable();
    used.dedup();
    assert_eq!(used, vec![0, 1, 2], "three distinct generators");
}

#[test]
fn embedding_action_on_blank_edge_pairs() {
    // Applying the embedding to |0⟩|s,t⟩|0,0⟩ must give exactly
    // Σ_e A_{σ,ρ[se]} |0⟩|s,t⟩|e,e⟩, for every co-terminal prefix pair.
    for spec in [GroupSpec::Symmetric { n: 4 }, GroupSpec::Dihedral { p: 5 }] {
        let r = reps(spec.clone());
        let c = ctx(&r, PlanChoice::Beals);
        let d = r.diagram();
        let table = ScaleFactorTable::build(&r).unwrap();
        for level in 1..=r.group().num_levels() {
            let gate = synth::embedding_gate(&c, level, "embed".into());
            let circuit =
                Circuit { layout: c.layout.clone(), gates: vec![gate] };
            let strides = c.layout.strides();
            for node in 0..d.levels[level - 1].len() {
                for &sp in &d.node_paths[level - 1][node] {
                    for &tp in &d.node_paths[level - 1][node] {
                        let mut index = 0u64;
                        for (l, &dg) in d.paths[level - 1][sp].digits.iter().enumerate() {
                            index += dg as u64 * strides[c.layout.s_edge(l + 1)];
                        }
                        for (l, &dg) in d.paths[level - 1][tp].digits.iter().enumerate() {
                            index += dg as u64 * strides[c.layout.t_edge(l + 1)];
                        }
                        let mut state = StateVector::zero(&c.layout, DEFAULT_AMP_CAP).unwrap();
                        state.amps[index as usize] = Complex64::new(1.0, 0.0);
                        sim::apply(&circuit, &mut state).unwrap();
                        // Expected superposition over appended equal edges.
                        let amps = table.row(level, node);
                        let mut expected =
                            vec![Complex64::new(0.0, 0.0); state.amps.len()];
                        for (e, &a) in amps.iter().enumerate() {
                            let off = index
                                + (e as u64 + 1) * strides[c.layout.s_edge(level)]
                                + (e as u64 + 1) * strides[c.layout.t_edge(level)];
                            expected[off as usize] = Complex64::new(a, 0.0);
                        }
                        let dev = max_dev(&expected, &state.amps);
                        assert!(dev < 1e-12, "embedding at level {level} of {spec:?}: {dev:.2e}");
                    }
                }
            }
        }
    }
}

#[test]
fn synthesized_circuits_round_trip_through_json() {
    for (spec, plan) in [
        (GroupSpec::Symmetric { n: 3 }, PlanChoice::Beals),
        (GroupSpec::Dihedral { p: 5 }, PlanChoice::Homothetic),
        (GroupSpec::Cyclic { n: 8 }, PlanChoice::Auto),
    ] {
        let r = reps(spec);
        let (circuit, _) = synth::synthesize(&r, plan).unwrap();
        let text = circuit.serialize_json();
        let back = Circuit::deserialize_json(&text).unwrap();
        assert_eq!(circuit, back);
        assert_eq!(circuit.cost().unwrap(), back.cost().unwrap());
    }
}

#[test]
fn cost_is_additive_over_concatenation() {
    let r = reps(GroupSpec::Symmetric { n: 3 });
    let (circuit, _) = synth::synthesize(&r, PlanChoice::Beals).unwrap();
    let total = circuit.cost().unwrap();
    let split_at = circuit.gates.len() / 2;
    let first = Circuit {
        layout: circuit.layout.clone(),
        gates: circuit.gates[..split_at].to_vec(),
    };
    let second = Circuit {
        layout: circuit.layout.clone(),
        gates: circuit.gates[split_at..].to_vec(),
    };
    assert_eq!(total, first.cost().unwrap() + second.cost().unwrap());
}
