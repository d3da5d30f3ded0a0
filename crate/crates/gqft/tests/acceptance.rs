//! Acceptance suite: one test per criterion, each printing a pass line with
//! the measured quantities and asserting the pinned tolerances and budgets.
//!
//! Budgets assume an optimized test profile (the workspace sets
//! `profile.dev.opt-level = 2`); run with `cargo test --test acceptance`.

use std::time::Instant;

use num_complex::Complex64;

use gqft::circuit::Circuit;
use gqft::group::{Group, GroupSpec};
use gqft::linalg::root_of_unity;
use gqft::rep::{fourier, schur, IrrepLabel, Reps};
use gqft::rng::SplitMix64;
use gqft::sim::{self, DEFAULT_AMP_CAP};
use gqft::synth::{self, PlanChoice, ScaleFactorTable};
use gqft::verify::{self, fit, VerifyOptions};

fn reps(spec: GroupSpec) -> Reps {
    Reps::build(Group::build(&spec).unwrap()).unwrap()
}

fn rep_suite_specs() -> Vec<GroupSpec> {
    let mut specs: Vec<GroupSpec> = (1..=64).map(|n| GroupSpec::Cyclic { n }).collect();
    specs.extend((2..=5).map(|n| GroupSpec::Symmetric { n }));
    specs.extend((3..=13).map(|p| GroupSpec::Dihedral { p }));
    specs
}

#[test]
fn criterion_1_representation_suite() {
    let start = Instant::now();
    let mut worst_orth: f64 = 0.0;
    let mut worst_gt: f64 = 0.0;
    let mut worst_unitary: f64 = 0.0;
    for spec in rep_suite_specs() {
        let r = reps(spec.clone());
        for level in 0..=r.group().num_levels() {
            let sum_sq: u64 = r.irreps(level).iter().map(|x| (x.dim * x.dim) as u64).sum();
            assert_eq!(sum_sq, r.group().level_order(level), "Σd² in {spec:?}");
        }
        let f = fourier::dense_qft_matrix(&r).unwrap();
        worst_unitary = worst_unitary.max(f.unitarity_residual());
        worst_orth = worst_orth.max(fourier::orthogonality_residual(&f));
        for level in 1..=r.group().num_levels() {
            for node in 0..r.irreps(level).len() {
                worst_gt = worst_gt.max(r.gt_residual(level, node).unwrap());
            }
        }
    }
    let elapsed = start.elapsed();
    assert!(worst_orth <= 1e-10, "orthogonality residual {worst_orth:.3e}");
    assert!(worst_gt <= 1e-10, "GT residual {worst_gt:.3e}");
    assert!(worst_unitary <= 1e-10, "unitarity residual {worst_unitary:.3e}");
    assert!(elapsed.as_secs_f64() <= 30.0, "took {elapsed:?}, budget 30 s");
    println!(
        "PASS criterion 1: representation suite (orthogonality {worst_orth:.2e}, \
         GT {worst_gt:.2e}, unitarity {worst_unitary:.2e}) in {elapsed:?}"
    );
}

#[test]
fn criterion_2_bratteli_fidelity() {
    let start = Instant::now();

    // Z_6 > Z_3 > 1: three nodes over six, characters restricting mod 3.
    let r = reps(GroupSpec::Cyclic { n: 6 });
    let d = r.diagram();
    assert_eq!(d.levels.iter().map(|l| l.len()).collect::<Vec<_>>(), vec![1, 3, 6]);
    for node in 0..3 {
        let kids = &d.children[1][node];
        assert_eq!(kids.len(), 2);
        for &child in kids {
            assert_eq!(child % 3, node, "restriction must be child mod 3");
        }
    }

    // S_4 > S_3 > S_2 > 1: partition labels, decrement-rule edges, and
    // path counts equal to dimensions.
    let r = reps(GroupSpec::Symmetric { n: 4 });
    let d = r.diagram();
    let labels: Vec<Vec<String>> = d
        .levels
        .iter()
        .map(|nodes| nodes.iter().map(|n| n.label.to_string()).collect())
        .collect();
    assert_eq!(labels[0], vec!["(1)"]);
    assert_eq!(labels[1], vec!["(2)", "(1,1)"]);
    assert_eq!(labels[2], vec!["(3)", "(2,1)", "(1,1,1)"]);
    assert_eq!(
        labels[3],
        vec!["(4)", "(3,1)", "(2,2)", "(2,1,1)", "(1,1,1,1)"]
    );
    // Edges by the decrement rule: σ at level i connects to ρ at level i+1
    // exactly when σ is ρ with one part decremented (equivalently ρ is σ
    // plus one box).
    for level in 0..3 {
        for (node, kids) in d.children[level].iter().enumerate() {
            let IrrepLabel::Partition(ref sigma) = d.levels[level][node].label else {
                panic!("partition label expected")
            };
            for (child, info) in d.levels[level + 1].iter().enumerate() {
                let IrrepLabel::Partition(ref rho) = info.label else { unreachable!() };
                let decrement = is_one_box_extension(sigma, rho);
                assert_eq!(
                    kids.contains(&child),
                    decrement,
                    "edge {sigma:?} -> {rho:?}"
                );
            }
        }
    }
    let dims: Vec<usize> = d.levels[3].iter().map(|n| n.dim).collect();
    assert_eq!(dims, vec![1, 3, 2, 3, 1]);
    for (node, &dim) in dims.iter().enumerate() {
        assert_eq!(d.node_paths[3][node].len(), dim);
    }

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}, budget 1 s");
    println!("PASS criterion 2: diagram fidelity for Z_6 and S_4 in {elapsed:?}");
}

fn is_one_box_extension(sigma: &[u8], rho: &[u8]) -> bool {
    if rho.iter().map(|&x| x as usize).sum::<usize>()
        != sigma.iter().map(|&x| x as usize).sum::<usize>() + 1
    {
        return false;
    }
    let mut diffs = 0;
    for i in 0..rho.len() {
        let s = sigma.get(i).copied().unwrap_or(0);
        match rho[i].checked_sub(s) {
            Some(0) => {}
            Some(1) => diffs += 1,
            _ => return false,
        }
    }
    diffs == 1
}

#[test]
fn criterion_3_schur_certificates() {
    let start = Instant::now();
    for (spec, expected_m) in [
        (GroupSpec::Symmetric { n: 4 }, 2),
        (GroupSpec::Symmetric { n: 5 }, 2),
        (GroupSpec::Dihedral { p: 13 }, 1),
    ] {
        let r = reps(spec.clone());
        let mut max_block = 1usize;
        let mut annotated = 0;
        for (gen, info) in r.group().tower().generators().iter().enumerate() {
            if info.centralized_level == 0 {
                continue;
            }
            annotated += 1;
            for level in info.level..=r.group().num_levels() {
                for node in 0..r.irreps(level).len() {
                    let cert = schur::schur_blocks(&r, level, node, gen).unwrap();
                    assert!(
                        cert.off_block_residual <= 1e-10,
                        "off-block residual in {spec:?}"
                    );
                    max_block = max_block.max(cert.max_block_size());
                }
            }
        }
        assert!(annotated > 0, "no annotated generators in {spec:?}");
        assert_eq!(max_block, expected_m, "max block size in {spec:?}");
        assert_eq!(schur::max_multiplicity(&r), expected_m);
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 10.0, "took {elapsed:?}, budget 10 s");
    println!("PASS criterion 3: Schur certificates (M = 2 for S_4/S_5, 1 for D_13) in {elapsed:?}");
}

#[test]
fn criterion_4_end_to_end_coset_serial() {
    let options = VerifyOptions::default(); // tol 1e-8, leakage 1e-12
    let t_s4 = Instant::now();
    for n in [3, 4] {
        let report = verify::verify_group(&GroupSpec::Symmetric { n }, &options).unwrap();
        assert_eq!(report.columns.len() as u64, report_columns_expected(n));
        assert!(report.passed, "S_{n}: {report:?}");
    }
    let s4_elapsed = t_s4.elapsed();
    assert!(s4_elapsed.as_secs_f64() <= 60.0, "S_3+S_4 took {s4_elapsed:?}, budget 1 min");

    let t_s5 = Instant::now();
    let report = verify::verify_group(&GroupSpec::Symmetric { n: 5 }, &options).unwrap();
    assert!(report.passed, "S_5: deviation {:.3e}", report.max_deviation);
    assert!(report.columns.len() >= 25, "24 sampled columns + identity + uniform");
    let s5_elapsed = t_s5.elapsed();
    assert!(s5_elapsed.as_secs_f64() <= 900.0, "S_5 took {s5_elapsed:?}, budget 15 min");
    println!(
        "PASS criterion 4: coset-serial end-to-end (S_3, S_4 exhaustive in {s4_elapsed:?}; \
         S_5 sampled, deviation {:.2e}, in {s5_elapsed:?})",
        report.max_deviation
    );
}

fn report_columns_expected(n: u32) -> u64 {
    let order: u64 = (1..=n as u64).product();
    order + 1 // exhaustive columns plus the uniform input
}

#[test]
fn criterion_5_end_to_end_orbit_parallel() {
    let start = Instant::now();
    let options = VerifyOptions::default();
    for p in [3u64, 5, 7, 11, 13] {
        let spec = GroupSpec::Dihedral { p };
        let report = verify::verify_group(
            &spec,
            &VerifyOptions { plan: PlanChoice::Homothetic, ..options.clone() },
        )
        .unwrap();
        assert!(report.passed, "D_{p} orbit-parallel: {:.3e}", report.max_deviation);

        let r = reps(spec);
        let (serial, _) = synth::synthesize(&r, PlanChoice::Beals).unwrap();
        let (parallel, _) = synth::synthesize(&r, PlanChoice::Homothetic).unwrap();
        let cross = verify::compare_plans(&r, &serial, &parallel, DEFAULT_AMP_CAP).unwrap();
        assert!(cross <= 1e-9, "plans disagree by {cross:.3e} for D_{p}");
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() <= 120.0, "took {elapsed:?}, budget 2 min");
    println!("PASS criterion 5: orbit-parallel end-to-end for D_3..D_13 with plan cross-check in {elapsed:?}");
}

#[test]
fn criterion_6_two_power_correspondence() {
    let start = Instant::now();
    let options = VerifyOptions { tolerance: 1e-9, ..Default::default() };
    for n in 1..=8u32 {
        let spec = GroupSpec::Cyclic { n: 1 << n };
        let report = verify::verify_group(&spec, &options).unwrap();
        assert!(
            report.passed,
            "Z_{}: deviation {:.3e}",
            1 << n,
            report.max_deviation
        );
    }

    // The reference rows are plain DFT rows under the declared index map:
    // the pair of the unique path to character b holds row b.
    for n in [3u32, 4, 8] {
        let order = 1u64 << n;
        let r = reps(GroupSpec::Cyclic { n: order });
        let m = r.group().num_levels();
        let f = fourier::dense_qft_matrix(&r).unwrap();
        let d = r.diagram();
        let pairs = d.pair_table(m);
        let scale = 1.0 / (order as f64).sqrt();
        for (row, &(s, _)) in pairs.iter().enumerate() {
            let b = d.paths[m][s].node as u64;
            for (col, g) in r.group().elements().iter().enumerate() {
                let gqft::group::Element::Cyclic(x) = g else { unreachable!() };
                let want = root_of_unity(order, (b * x) as i64) * scale;
                assert!(
                    (f[(row, col)] - want).norm() < 1e-9,
                    "index map broken at Z_{order}"
                );
            }
        }
    }

    // Gate counts grow quadratically in n.
    let rows = verify::cost_report("cyclic-two-power", 1, 8).unwrap();
    let xs: Vec<f64> = rows.iter().map(|r| r.parameter as f64).collect();
    let ys: Vec<f64> = rows.iter().map(|r| r.gate_count as f64).collect();
    let coeffs = fit::polyfit(&xs, &ys, 2);
    let residual = fit::max_relative_residual(&coeffs, &xs, &ys);
    assert!(residual <= 0.10, "quadratic fit residual {residual:.3}");

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() <= 120.0, "took {elapsed:?}, budget 2 min");
    println!(
        "PASS criterion 6: two-power circuits equal the DFT through Z_256 \
         (quadratic gate fit residual {residual:.2e}) in {elapsed:?}"
    );
}

#[test]
fn criterion_7_cost_bound_shape() {
    let start = Instant::now();
    let rows = verify::cost_report("symmetric", 3, 6).unwrap();
    let csv = verify::cost_rows_to_csv(&rows);
    let out_path = concat!(env!("CARGO_TARGET_TMPDIR"), "/cost_symmetric.csv");
    std::fs::write(out_path, &csv).unwrap();

    assert!(rows.windows(2).all(|w| w[0].cost < w[1].cost), "cost must grow");
    let xs: Vec<f64> = rows.iter().map(|r| r.parameter as f64).collect();
    let ys: Vec<f64> = rows.iter().map(|r| r.cost as f64).collect();
    // Four samples pin an interpolating cubic (degree ≤ 6): the measured
    // costs are bounded by that polynomial with zero residual.
    let coeffs = fit::polyfit(&xs, &ys, 3);
    let residual = fit::max_relative_residual(&coeffs, &xs, &ys);
    assert!(residual <= 1e-6, "degree-3 fit residual {residual:.3e}");
    for row in &rows {
        let bound = fit::poly_eval(&coeffs, row.parameter as f64) * (1.0 + 1e-6);
        assert!(row.cost as f64 <= bound);
        assert_eq!(row.max_index, row.parameter as usize);
        assert_eq!(row.max_multiplicity, if row.parameter >= 4 { 2 } else { 1 });
    }

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() <= 300.0, "took {elapsed:?}, budget 5 min");
    println!(
        "PASS criterion 7: S_n costs {:?} bounded by a degree-3 polynomial \
         (residual {residual:.1e}), CSV at {out_path}, in {elapsed:?}",
        rows.iter().map(|r| r.cost).collect::<Vec<_>>()
    );
}

#[test]
fn criterion_8_invariant_suites() {
    let start = Instant::now();

    // (a) Coset-iteration invariant for the top stage of S_3: after each
    // injected coset, the consumed sector holds the transform of f
    // restricted to the processed cosets.
    let r = reps(GroupSpec::Symmetric { n: 3 });
    let (circuit, _) = synth::synthesize(&r, PlanChoice::Beals).unwrap();
    let reference = fourier::dense_qft_matrix(&r).unwrap();
    let mut rng = SplitMix64::new(20);
    let mut f: Vec<Complex64> = (0..6)
        .map(|_| Complex64::new(rng.next_f64() - 0.5, rng.next_f64() - 0.5))
        .collect();
    let norm = f.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    f.iter_mut().for_each(|z| *z /= norm);

    let transversal = r.group().tower().transversal(2).to_vec();
    for processed in 1..=transversal.len() {
        // Gates of the level-2 stage up to the end of coset `processed-1`.
        let boundary = circuit
            .gates
            .iter()
            .position(|g| g.note.starts_with(&format!("L2/coset{processed}/")))
            .unwrap_or(circuit.gates.len());
        let partial = Circuit {
            layout: circuit.layout.clone(),
            gates: circuit.gates[..boundary].to_vec(),
        };
        let mut state =
            sim::encode_input(r.group(), &circuit.layout, &f, DEFAULT_AMP_CAP).unwrap();
        sim::apply(&partial, &mut state).unwrap();
        let decoded = sim::decode_output(&state);
        // Expected: transform of f restricted to the processed cosets.
        let mut masked = vec![Complex64::new(0.0, 0.0); 6];
        for (gi, el) in r.group().elements().iter().enumerate() {
            let alphas = r.group().coset_factorize(el).unwrap();
            if transversal[..processed].contains(&alphas[1]) {
                masked[gi] = f[gi];
            }
        }
        let expected = reference.apply(&masked);
        let dev = decoded
            .amplitudes
            .iter()
            .zip(&expected)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        assert!(
            dev <= 1e-10,
            "coset invariant fails after {processed} cosets: {dev:.3e}"
        );
    }

    // (b) Embedding normalization for every node of every suite group.
    for spec in rep_suite_specs() {
        let r = reps(spec);
        let table = ScaleFactorTable::build(&r).unwrap();
        for level in 1..=r.group().num_levels() {
            for node in 0..r.irreps(level - 1).len() {
                let total: f64 = table.row(level, node).iter().map(|a| a * a).sum();
                assert!((total - 1.0).abs() <= 1e-12);
            }
        }
    }

    // (c) Mutation test: dropping any single gate from the S_3 circuit
    // must visibly corrupt the output.
    let mut undetected = Vec::new();
    for drop in 0..circuit.gates.len() {
        let mut gates = circuit.gates.clone();
        let removed = gates.remove(drop);
        let mutant = Circuit { layout: circuit.layout.clone(), gates };
        let mut worst_dev: f64 = 0.0;
        let mut worst_leak: f64 = 0.0;
        for col in 0..6 {
            let mut delta = vec![Complex64::new(0.0, 0.0); 6];
            delta[col] = Complex64::new(1.0, 0.0);
            let mut state =
                sim::encode_input(r.group(), &circuit.layout, &delta, DEFAULT_AMP_CAP).unwrap();
            sim::apply(&mutant, &mut state).unwrap();
            let decoded = sim::decode_output(&state);
            worst_leak = worst_leak.max(decoded.leakage);
            for (row, amp) in decoded.amplitudes.iter().enumerate() {
                worst_dev = worst_dev.max((amp - reference[(row, col)]).norm());
            }
        }
        if worst_dev <= 1e-3 && worst_leak <= 1e-3 {
            undetected.push(removed.note.clone());
        }
    }
    assert!(
        undetected.is_empty(),
        "dropping these gates went unnoticed: {undetected:?}"
    );

    let elapsed = start.elapsed();
    println!(
        "PASS criterion 8: coset-iteration invariant, embedding normalization, \
         and {}-gate mutation sweep in {elapsed:?}",
        circuit.gates.len()
    );
}
