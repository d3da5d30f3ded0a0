//! Coset-serial stage and its building blocks: the embedding unitary, the
//! coset-injection swap, and twiddle gates assembled from generator words.

use num_complex::Complex64;

use crate::circuit::{Branch, CertBlock, Condition, Gate, GateOp};
use crate::linalg::Mat;
use crate::rep::schur::{schur_blocks, BlockSpec};
use crate::tol;

use super::{SynthCtx, SynthError};

/// Condition tuples selecting co-terminal prefix pairs of one lower node:
/// `(alpha_level = 0, s_1..s_{level-1}, t_1..t_{level-1})`.
fn prefix_pair_condition(ctx: &SynthCtx, level: usize, node: usize) -> Condition {
    let diagram = ctx.reps.diagram();
    let mut registers = vec![ctx.layout.alpha(level)];
    for l in 1..level {
        registers.push(ctx.layout.s_edge(l));
    }
    for l in 1..level {
        registers.push(ctx.layout.t_edge(l));
    }
    let mut accepted = Vec::new();
    for &s in &diagram.node_paths[level - 1][node] {
        for &t in &diagram.node_paths[level - 1][node] {
            let mut tuple = vec![0u32];
            tuple.extend(diagram.paths[level - 1][s].digits.iter().map(|&d| d as u32));
            tuple.extend(diagram.paths[level - 1][t].digits.iter().map(|&d| d as u32));
            accepted.push(tuple);
        }
    }
    Condition { registers, accepted }
}

/// The embedding unitary of one step: conditioned on a consumed coset digit
/// and a co-terminal prefix pair ending at `σ`, it maps the blank edge pair
/// `|0,0⟩` to `Σ_e A_{σ,ρ[se]} |e,e⟩`. On the diagonal-pair subspace this
/// is the self-inverse exchange rotation (Householder completion); every
/// off-diagonal pair is left fixed.
pub fn embedding_gate(ctx: &SynthCtx, level: usize, note: String) -> Gate {
    let diagram = ctx.reps.diagram();
    let rs = ctx.layout.radix(ctx.layout.s_edge(level)) as usize;
    let rt = ctx.layout.radix(ctx.layout.t_edge(level)) as usize;
    let dim = rs * rt;
    let mut branches = Vec::new();
    for node in 0..diagram.levels[level - 1].len() {
        let amps = ctx.scale.row(level, node);
        let pair = |e: usize| e * rt + e;
        let mut m = Mat::identity(dim);
        // m = I - |00⟩⟨00| - |A⟩⟨A| + |00⟩⟨A| + |A⟩⟨00| with A real.
        let a = |e: usize| {
            if e == 0 {
                0.0
            } else {
                amps.get(e - 1).copied().unwrap_or(0.0)
            }
        };
        for e1 in 0..=amps.len() {
            for e2 in 0..=amps.len() {
                let mut v = if e1 == e2 { 1.0 } else { 0.0 };
                v -= if e1 == 0 { 1.0 } else { 0.0 } * if e2 == 0 { 1.0 } else { 0.0 };
                v -= a(e1) * a(e2);
                v += if e1 == 0 { a(e2) } else { 0.0 };
                v += if e2 == 0 { a(e1) } else { 0.0 };
                m[(pair(e1), pair(e2))] = Complex64::new(v, 0.0);
            }
        }
        debug_assert!(m.unitarity_residual() < tol::BUILD);
        branches.push(Branch {
            condition: prefix_pair_condition(ctx, level, node),
            matrix: m,
        });
    }
    Gate {
        op: GateOp::ConditionedUnitary {
            targets: vec![ctx.layout.s_edge(level), ctx.layout.t_edge(level)],
            branches,
        },
        note,
    }
}

/// Swaps coset digit `k` with the consumed marker on the blank-edge slice:
/// `(k+1, 0, 0) ↔ (0, 0, 0)` over `(alpha_level, s_level, t_level)`. The
/// edge conditioning keeps the already-accumulated transform (which lives
/// on written edges) in place.
pub fn coset_swap_gate(ctx: &SynthCtx, level: usize, digit: usize, note: String) -> Gate {
    let regs = vec![
        ctx.layout.alpha(level),
        ctx.layout.s_edge(level),
        ctx.layout.t_edge(level),
    ];
    let d = digit as u32 + 1;
    Gate {
        op: GateOp::ClassicalPermutation {
            registers: regs,
            map: vec![
                (vec![d, 0, 0], vec![0, 0, 0]),
                (vec![0, 0, 0], vec![d, 0, 0]),
            ],
        },
        note,
    }
}

/// Structured gate applying `⊕_ρ ρ(γ^{±1})` on the level's row paths, with
/// its Schur certificate (distinct blocks merged across nodes).
fn generator_gate(
    ctx: &SynthCtx,
    level: usize,
    gen: usize,
    inverted: bool,
    note: String,
) -> Result<Gate, SynthError> {
    let reps = ctx.reps;
    let diagram = reps.diagram();
    let paths: Vec<Vec<u8>> = diagram.paths[level].iter().map(|p| p.digits.clone()).collect();
    let n = paths.len();
    let mut matrix = Mat::zeros(n, n);
    let mut merged: std::collections::BTreeMap<(usize, usize), CertBlock> = Default::default();
    for node in 0..diagram.levels[level].len() {
        let rep = reps.rep(level, node);
        let img = rep.image(gen).ok_or_else(|| {
            SynthError::Synthesis(format!("generator {gen} has no image at level {level}"))
        })?;
        let img = if inverted { img.adjoint() } else { img.clone() };
        let rows = &diagram.node_paths[level][node];
        for (i, &ri) in rows.iter().enumerate() {
            for (j, &rj) in rows.iter().enumerate() {
                matrix[(ri, rj)] = img[(i, j)];
            }
        }
        let cert = schur_blocks(reps, level, node, gen)?;
        for block in cert.blocks {
            let mat = if inverted { block.matrix.adjoint() } else { block.matrix.clone() };
            let occurrences: Vec<Vec<usize>> = block
                .occurrences
                .iter()
                .map(|occ| occ.iter().map(|&r| rows[r]).collect())
                .collect();
            let entry = merged.entry((block.eta, block.mu)).or_insert_with(|| CertBlock {
                spec: BlockSpec { m: block.m, d_eta: block.d_eta, occurrences: Vec::new() },
                matrix: mat.clone(),
            });
            debug_assert!(entry.matrix.max_abs_diff(&mat) < tol::CROSS);
            entry.spec.occurrences.extend(occurrences);
        }
    }
    Ok(Gate {
        op: GateOp::StructuredUnitary {
            level,
            paths,
            matrix,
            blocks: merged.into_values().collect(),
        },
        note,
    })
}

/// Twiddle gates for one transversal representative: one structured gate
/// per letter of its cached generator word, emitted so the composite equals
/// `⊕_ρ ρ(α^{±1})` on the row register. The identity representative yields
/// an empty list.
pub fn twiddle_gates(
    ctx: &SynthCtx,
    level: usize,
    digit: usize,
    inverse: bool,
    note_prefix: &str,
) -> Result<Vec<Gate>, SynthError> {
    let word = ctx.reps.group().tower().word_for_digit(level, digit);
    let mut gates = Vec::with_capacity(word.len());
    // Applying gates in list order composes last-emitted ∘ … ∘ first, so
    // ρ(α) = ρ(w_1)···ρ(w_k) emits the word reversed; the inverse emits it
    // in order with every letter inverted.
    let letters: Vec<(usize, bool)> = if inverse {
        word.0.iter().map(|l| (l.gen, !l.inverse)).collect()
    } else {
        word.0.iter().rev().map(|l| (l.gen, l.inverse)).collect()
    };
    for (pos, (gen, inverted)) in letters.into_iter().enumerate() {
        let sign = if inverted { "-" } else { "+" };
        gates.push(generator_gate(
            ctx,
            level,
            gen,
            inverted,
            format!("{note_prefix}/w{pos}{sign}g{gen}"),
        )?);
    }
    Ok(gates)
}

/// The coset-serial stage: for each coset in transversal order, twiddle the
/// accumulator down, inject the coset's lower-level transform through the
/// embedding, and twiddle back up. The pre-embedding unitary of the
/// textbook `U⁻¹ V U` sandwich acts as the identity on every reachable
/// state (the accumulator is orthogonal to the embedding image), so only
/// the post-injection embedding is emitted and every emitted gate moves
/// amplitude.
pub fn beals_stage(ctx: &SynthCtx, level: usize) -> Result<Vec<Gate>, SynthError> {
    let transversal_len = ctx.reps.group().tower().transversal(level).len();
    let mut gates = Vec::new();
    for k in 0..transversal_len {
        let prefix = format!("L{level}/coset{k}");
        if k > 0 {
            gates.extend(twiddle_gates(ctx, level, k, true, &format!("{prefix}/tw-inv"))?);
        }
        gates.push(coset_swap_gate(ctx, level, k, format!("{prefix}/inject")));
        gates.push(embedding_gate(ctx, level, format!("{prefix}/embed")));
        if k > 0 {
            gates.extend(twiddle_gates(ctx, level, k, false, &format!("{prefix}/tw"))?);
        }
    }
    Ok(gates)
}
