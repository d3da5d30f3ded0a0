//! DOT output for a circuit's gate sequence.

use super::{Circuit, GateOp};

fn gate_label(op: &GateOp) -> String {
    match op {
        GateOp::ConditionedUnitary { targets, branches } => {
            format!("cond-unitary t={targets:?} b={}", branches.len())
        }
        GateOp::ClassicalPermutation { registers, map } => {
            format!("perm r={registers:?} |map|={}", map.len())
        }
        GateOp::Phase { registers, modulus, entries } => {
            format!("phase r={registers:?} mod={modulus} |t|={}", entries.len())
        }
        GateOp::PrimitiveCyclicQft { register, order, stride, .. } => {
            format!("cyclic-qft r={register} n={order} stride={stride}")
        }
        GateOp::StructuredUnitary { level, paths, .. } => {
            format!("structured L{level} dim={}", paths.len())
        }
    }
}

pub fn to_dot(circuit: &Circuit) -> String {
    let mut out = String::from("digraph circuit {\n  rankdir=LR;\n  node [shape=box];\n");
    out.push_str("  start [shape=point];\n");
    for (i, gate) in circuit.gates.iter().enumerate() {
        out.push_str(&format!(
            "  g{i} [label=\"{}: {}\\n{}\"];\n",
            i,
            gate_label(&gate.op).replace('"', "'"),
            gate.note.replace('"', "'")
        ));
        if i == 0 {
            out.push_str("  start -> g0;\n");
        } else {
            out.push_str(&format!("  g{} -> g{i};\n", i - 1));
        }
    }
    out.push_str("}\n");
    out
}
