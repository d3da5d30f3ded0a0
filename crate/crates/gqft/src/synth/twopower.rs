//! Non-split two-power cyclic stage: `Z_{2^i}` over `Z_{2^{i-1}}`.
//!
//! The transversal generator squares to a non-identity element of the
//! subgroup, so on top of the 2-point exponent transform the stage owes a
//! character-dependent phase `ω_{2^i}^{b·v}`, where `b` is the accumulated
//! frequency. In the path encoding `b`'s binary digits are the lower edge
//! digits minus one, so the phase splits into one two-register phase gate
//! per lower level — the familiar controlled-phase ladder, here written to
//! separate edge registers instead of reusing the coset qubit.

use crate::circuit::{Gate, GateOp};

use super::{SynthCtx, SynthError};

pub fn nonsplit_cyclic_stage(ctx: &SynthCtx, level: usize) -> Result<Vec<Gate>, SynthError> {
    let group = ctx.reps.group();
    let here = group.level_order(level);
    let below = group.level_order(level - 1);
    if here != 2 * below || !below.is_power_of_two() || here != 1u64 << level {
        return Err(SynthError::Plan(format!(
            "step {level} ({below} -> {here}) is not a two-power cyclic step"
        )));
    }
    if group.tower().is_split_step(level) {
        return Err(SynthError::Plan(format!(
            "step {level} is split; the non-split stage does not apply"
        )));
    }
    let layout = &ctx.layout;
    let alpha = layout.alpha(level);
    if !layout.regs[alpha].exponent_coded || layout.radix(alpha) != 2 {
        return Err(SynthError::Plan(format!(
            "step {level} must be laid out as an exponent-coded bit"
        )));
    }

    let mut gates = Vec::new();
    // Accumulated-frequency phases ω_{2^level}^{(e_j - 1)·2^{j-1}·v},
    // applied while the coset bit still holds v.
    for j in 1..level {
        let s_j = layout.s_edge(j);
        let entries: Vec<(Vec<u32>, u64)> = (2..layout.radix(s_j))
            .map(|e| {
                let exponent = ((e as u64 - 1) << (j - 1)) % here;
                (vec![1u32, e], exponent)
            })
            .filter(|(_, exp)| *exp != 0)
            .collect();
        if !entries.is_empty() {
            gates.push(Gate {
                op: GateOp::Phase { registers: vec![alpha, s_j], modulus: here, entries },
                note: format!("L{level}/freq-phase/s{j}"),
            });
        }
    }
    gates.push(Gate {
        op: GateOp::PrimitiveCyclicQft { register: alpha, order: 2, stride: 1, condition: None },
        note: format!("L{level}/bit-transform"),
    });
    gates.push(Gate {
        op: GateOp::ClassicalPermutation {
            registers: vec![alpha, layout.s_edge(level), layout.t_edge(level)],
            map: vec![
                (vec![0, 0, 0], vec![0, 1, 1]),
                (vec![0, 1, 1], vec![0, 0, 0]),
                (vec![1, 0, 0], vec![0, 2, 2]),
                (vec![0, 2, 2], vec![1, 0, 0]),
            ],
        },
        note: format!("L{level}/transfer"),
    });
    Ok(gates)
}
