//! Orbit-parallel stage for split steps with a cyclic transverse subgroup.
//!
//! With the coset register holding the exponent `v` of the transversal
//! generator and `v = q·j + k` split per the lower node's orbit size `q`,
//! the stage is:
//!
//! 1. a primitive cyclic transform of order `p^ℓ` on the `j` part,
//!    conditioned on the node's class;
//! 2. a transfer relabeling `(v, blank, blank) ↦ (k, j+1, j+1)` writing the
//!    transformed digit into the edge pair;
//! 3. a phase `ω_{|T|}^{(e-1)·k}` read off the new edge and the remaining
//!    exponent;
//! 4. an orbit-cycling relabeling sending the row prefix of `σ` to that of
//!    `σ^{γ^k}` while zeroing the exponent.
//!
//! Steps 3 and 4 are trivial on steps where conjugation fixes everything
//! (direct products and the bottom step), which recovers the plain
//! characterwise transform.

use std::collections::BTreeMap;

use crate::circuit::{Condition, Gate, GateOp};

use super::{certify_orbit_parallel, SynthCtx, SynthError};

pub fn homothetic_stage(ctx: &SynthCtx, level: usize) -> Result<Vec<Gate>, SynthError> {
    let data = certify_orbit_parallel(ctx.reps, level)?;
    let diagram = ctx.reps.diagram();
    let layout = &ctx.layout;
    let alpha = layout.alpha(level);
    if !layout.regs[alpha].exponent_coded || layout.radix(alpha) as u64 != data.gamma_order {
        return Err(SynthError::Plan(format!(
            "step {level} was not laid out exponent-coded for the orbit-parallel stage"
        )));
    }
    let prefix_regs = || {
        let mut regs = Vec::new();
        for l in 1..level {
            regs.push(layout.s_edge(l));
        }
        for l in 1..level {
            regs.push(layout.t_edge(l));
        }
        regs
    };
    let nodes_below = diagram.levels[level - 1].len();
    let pair_tuples = |node: usize| -> Vec<(Vec<u32>, Vec<u32>)> {
        // (s digits, t digits) of all co-terminal prefix pairs at σ.
        let mut out = Vec::new();
        for &s in &diagram.node_paths[level - 1][node] {
            for &t in &diagram.node_paths[level - 1][node] {
                out.push((
                    diagram.paths[level - 1][s].digits.iter().map(|&d| d as u32).collect(),
                    diagram.paths[level - 1][t].digits.iter().map(|&d| d as u32).collect(),
                ));
            }
        }
        out
    };

    let mut gates = Vec::new();

    // 1. Exponent transforms, one per (orbit size, stabilizer) class.
    let mut classes: BTreeMap<(u64, u64), Vec<usize>> = BTreeMap::new();
    for (node, orbit) in data.per_node.iter().enumerate() {
        classes
            .entry((orbit.orbit_size, orbit.stabilizer_order))
            .or_default()
            .push(node);
    }
    for (&(q, p_ell), members) in &classes {
        if p_ell < 2 {
            continue; // nothing to transform for fully shifted orbits
        }
        let condition = if members.len() == nodes_below {
            None
        } else {
            let registers = prefix_regs();
            let mut accepted = Vec::new();
            for &node in members {
                for (s, t) in pair_tuples(node) {
                    let mut tuple = s;
                    tuple.extend(t);
                    accepted.push(tuple);
                }
            }
            Some(Condition { registers, accepted })
        };
        gates.push(Gate {
            op: GateOp::PrimitiveCyclicQft {
                register: alpha,
                order: p_ell as u32,
                stride: q as u32,
                condition,
            },
            note: format!("L{level}/exp-transform/q{q}l{p_ell}"),
        });
    }

    // 2. Transfer into the edge pair: (prefix, v = q·j + k, 0, 0) ↦
    //    (prefix, k, j+1, j+1), completed by the reverse mappings.
    let mut registers = prefix_regs();
    registers.push(alpha);
    registers.push(layout.s_edge(level));
    registers.push(layout.t_edge(level));
    let mut map = Vec::new();
    for (node, orbit) in data.per_node.iter().enumerate() {
        let q = orbit.orbit_size as u32;
        for (s, t) in pair_tuples(node) {
            for j in 0..orbit.stabilizer_order as u32 {
                for k in 0..q {
                    let v = q * j + k;
                    let mut from: Vec<u32> = s.clone();
                    from.extend(&t);
                    from.extend([v, 0, 0]);
                    let mut to: Vec<u32> = s.clone();
                    to.extend(&t);
                    to.extend([k, j + 1, j + 1]);
                    if from != to {
                        map.push((from.clone(), to.clone()));
                        map.push((to, from));
                    }
                }
            }
        }
    }
    gates.push(Gate {
        op: GateOp::ClassicalPermutation { registers, map },
        note: format!("L{level}/transfer"),
    });

    // 3. Residual-exponent phase ω_{|T|}^{(e-1)·k}, emitted only for the
    //    (k, e) combinations some class can reach.
    let mut phase_entries: BTreeMap<Vec<u32>, u64> = BTreeMap::new();
    for &(q, p_ell) in classes.keys() {
        for k in 1..q {
            for e in 2..=p_ell {
                let exponent = (e - 1) * k % data.gamma_order;
                if exponent != 0 {
                    phase_entries.insert(vec![k as u32, e as u32], exponent);
                }
            }
        }
    }
    if !phase_entries.is_empty() {
        gates.push(Gate {
            op: GateOp::Phase {
                registers: vec![alpha, layout.s_edge(level)],
                modulus: data.gamma_order,
                entries: phase_entries.into_iter().collect(),
            },
            note: format!("L{level}/residual-phase"),
        });
    }

    // 4. Orbit cycling: (k, s-prefix of σ, t) ↦ (0, s-prefix of σ^{γ^k}, t).
    let mut cycle_map = Vec::new();
    for (node, orbit) in data.per_node.iter().enumerate() {
        if orbit.orbit_size < 2 {
            continue;
        }
        for k in 1..orbit.orbit_size as usize {
            let target = orbit.conjugates[k];
            let source_digits: Vec<u32> = {
                let p = diagram.node_paths[level - 1][node][0];
                diagram.paths[level - 1][p].digits.iter().map(|&d| d as u32).collect()
            };
            let target_digits: Vec<u32> = {
                let p = diagram.node_paths[level - 1][target][0];
                diagram.paths[level - 1][p].digits.iter().map(|&d| d as u32).collect()
            };
            for (_, t) in pair_tuples(node) {
                let mut from = vec![k as u32];
                from.extend(&source_digits);
                from.extend(&t);
                let mut to = vec![0u32];
                to.extend(&target_digits);
                to.extend(&t);
                cycle_map.push((from.clone(), to.clone()));
                cycle_map.push((to, from));
            }
        }
    }
    if !cycle_map.is_empty() {
        let mut regs = vec![alpha];
        for l in 1..level {
            regs.push(layout.s_edge(l));
        }
        for l in 1..level {
            regs.push(layout.t_edge(l));
        }
        gates.push(Gate {
            op: GateOp::ClassicalPermutation { registers: regs, map: cycle_map },
            note: format!("L{level}/orbit-cycle"),
        });
    }

    Ok(gates)
}
