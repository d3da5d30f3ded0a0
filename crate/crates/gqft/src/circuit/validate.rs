//! Structural and numerical validation of circuits. Returns diagnostics
//! naming the offending gate rather than failing fast, so a report can show
//! everything wrong at once.

use std::collections::HashSet;

use super::{Circuit, Condition, GateOp, RegRole, RegisterLayout};
use crate::tol;

#[derive(Debug, Clone, PartialEq)]
pub struct Diagnostic {
    /// Gate index, or `None` for layout-level problems.
    pub gate: Option<usize>,
    pub message: String,
}

impl std::fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.gate {
            Some(i) => write!(f, "gate {i}: {}", self.message),
            None => write!(f, "layout: {}", self.message),
        }
    }
}

pub fn validate(circuit: &Circuit) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    validate_layout(&circuit.layout, &mut out);
    for (idx, gate) in circuit.gates.iter().enumerate() {
        let before = out.len();
        validate_gate(&circuit.layout, &gate.op, idx, &mut out);
        let _ = before;
    }
    out
}

fn validate_layout(layout: &RegisterLayout, out: &mut Vec<Diagnostic>) {
    let mut seen = HashSet::new();
    for r in &layout.regs {
        if r.radix < 2 {
            out.push(Diagnostic {
                gate: None,
                message: format!("register {:?} level {} has radix {}", r.role, r.level, r.radix),
            });
        }
        if !seen.insert((r.role, r.level)) {
            out.push(Diagnostic {
                gate: None,
                message: format!("duplicate {:?} register for level {}", r.role, r.level),
            });
        }
    }
    for level in 1..=layout.num_levels() {
        for role in [RegRole::Alpha, RegRole::SEdge, RegRole::TEdge] {
            if !seen.contains(&(role, level)) {
                out.push(Diagnostic {
                    gate: None,
                    message: format!("missing {role:?} register for level {level}"),
                });
            }
        }
    }
}

fn check_condition(
    layout: &RegisterLayout,
    cond: &Condition,
    gate: usize,
    out: &mut Vec<Diagnostic>,
) {
    for &r in &cond.registers {
        if r >= layout.regs.len() {
            out.push(Diagnostic { gate: Some(gate), message: format!("unknown register {r}") });
            return;
        }
    }
    for tuple in &cond.accepted {
        if tuple.len() != cond.registers.len() {
            out.push(Diagnostic {
                gate: Some(gate),
                message: "condition tuple arity mismatch".into(),
            });
            return;
        }
        for (&v, &r) in tuple.iter().zip(&cond.registers) {
            if v >= layout.radix(r) {
                out.push(Diagnostic {
                    gate: Some(gate),
                    message: format!("condition value {v} exceeds radix of register {r}"),
                });
                return;
            }
        }
    }
}

fn validate_gate(layout: &RegisterLayout, op: &GateOp, idx: usize, out: &mut Vec<Diagnostic>) {
    let reg_ok = |r: usize| r < layout.regs.len();
    match op {
        GateOp::ConditionedUnitary { targets, branches } => {
            if targets.iter().any(|&r| !reg_ok(r)) {
                out.push(Diagnostic { gate: Some(idx), message: "unknown register".into() });
                return;
            }
            if targets.len() != targets.iter().collect::<HashSet<_>>().len() {
                out.push(Diagnostic { gate: Some(idx), message: "duplicate targets".into() });
            }
            let dim: usize = targets.iter().map(|&r| layout.radix(r) as usize).product();
            // Disjointness of branches is only decidable tuple-by-tuple when
            // they condition on the same registers.
            if let Some(first) = branches.first() {
                if branches
                    .iter()
                    .any(|b| b.condition.registers != first.condition.registers)
                {
                    out.push(Diagnostic {
                        gate: Some(idx),
                        message: "branches condition on different registers".into(),
                    });
                }
            }
            let mut all_tuples: HashSet<(Vec<usize>, Vec<u32>)> = HashSet::new();
            for b in branches {
                check_condition(layout, &b.condition, idx, out);
                if b.condition.registers.iter().any(|r| targets.contains(r)) {
                    out.push(Diagnostic {
                        gate: Some(idx),
                        message: "condition register overlaps targets".into(),
                    });
                }
                if b.matrix.rows != dim || b.matrix.cols != dim {
                    out.push(Diagnostic {
                        gate: Some(idx),
                        message: format!(
                            "branch matrix is {}x{}, targets span {dim}",
                            b.matrix.rows, b.matrix.cols
                        ),
                    });
                    continue;
                }
                let residual = b.matrix.unitarity_residual();
                if residual > tol::BUILD {
                    out.push(Diagnostic {
                        gate: Some(idx),
                        message: format!("branch matrix not unitary (residual {residual:.3e})"),
                    });
                }
                for t in &b.condition.accepted {
                    if !all_tuples.insert((b.condition.registers.clone(), t.clone())) {
                        out.push(Diagnostic {
                            gate: Some(idx),
                            message: "overlapping condition branches".into(),
                        });
                    }
                }
            }
        }
        GateOp::ClassicalPermutation { registers, map } => {
            if registers.iter().any(|&r| !reg_ok(r)) {
                out.push(Diagnostic { gate: Some(idx), message: "unknown register".into() });
                return;
            }
            let mut from = HashSet::new();
            let mut to = HashSet::new();
            for (a, b) in map {
                if a.len() != registers.len() || b.len() != registers.len() {
                    out.push(Diagnostic {
                        gate: Some(idx),
                        message: "permutation tuple arity mismatch".into(),
                    });
                    return;
                }
                let in_range = |t: &[u32]| {
                    t.iter().zip(registers).all(|(&v, &r)| v < layout.radix(r))
                };
                if !in_range(a) || !in_range(b) {
                    out.push(Diagnostic {
                        gate: Some(idx),
                        message: "permutation tuple out of range".into(),
                    });
                }
                if !from.insert(a.clone()) {
                    out.push(Diagnostic {
                        gate: Some(idx),
                        message: "permutation maps a label twice".into(),
                    });
                }
                if !to.insert(b.clone()) {
                    out.push(Diagnostic {
                        gate: Some(idx),
                        message: "permutation image collision".into(),
                    });
                }
            }
            if from != to {
                out.push(Diagnostic {
                    gate: Some(idx),
                    message: "permutation domain and image differ (not a bijection)".into(),
                });
            }
        }
        GateOp::Phase { registers, modulus, entries } => {
            if registers.iter().any(|&r| !reg_ok(r)) {
                out.push(Diagnostic { gate: Some(idx), message: "unknown register".into() });
                return;
            }
            if *modulus == 0 {
                out.push(Diagnostic { gate: Some(idx), message: "zero phase modulus".into() });
            }
            let mut seen = HashSet::new();
            for (tuple, _) in entries {
                if tuple.len() != registers.len() {
                    out.push(Diagnostic {
                        gate: Some(idx),
                        message: "phase tuple arity mismatch".into(),
                    });
                    return;
                }
                if tuple.iter().zip(registers).any(|(&v, &r)| v >= layout.radix(r)) {
                    out.push(Diagnostic {
                        gate: Some(idx),
                        message: "phase tuple out of range".into(),
                    });
                }
                if !seen.insert(tuple.clone()) {
                    out.push(Diagnostic {
                        gate: Some(idx),
                        message: "duplicate phase tuple".into(),
                    });
                }
            }
        }
        GateOp::PrimitiveCyclicQft { register, order, stride, condition } => {
            if !reg_ok(*register) {
                out.push(Diagnostic { gate: Some(idx), message: "unknown register".into() });
                return;
            }
            if order * stride != layout.radix(*register) {
                out.push(Diagnostic {
                    gate: Some(idx),
                    message: format!(
                        "order {order} × stride {stride} ≠ radix {}",
                        layout.radix(*register)
                    ),
                });
            }
            if let Some(c) = condition {
                check_condition(layout, c, idx, out);
                if c.registers.contains(register) {
                    out.push(Diagnostic {
                        gate: Some(idx),
                        message: "condition register overlaps transform register".into(),
                    });
                }
            }
        }
        GateOp::StructuredUnitary { level, paths, matrix, blocks } => {
            if *level == 0 || *level > layout.num_levels() {
                out.push(Diagnostic { gate: Some(idx), message: "bad structured level".into() });
                return;
            }
            let n = paths.len();
            if matrix.rows != n || matrix.cols != n {
                out.push(Diagnostic {
                    gate: Some(idx),
                    message: "matrix dimension differs from path count".into(),
                });
                return;
            }
            for p in paths {
                if p.len() != *level {
                    out.push(Diagnostic { gate: Some(idx), message: "path length mismatch".into() });
                    return;
                }
                for (l, &d) in p.iter().enumerate() {
                    if d == 0 || d as u32 >= layout.radix(layout.s_edge(l + 1)) {
                        out.push(Diagnostic {
                            gate: Some(idx),
                            message: format!("path digit {d} invalid at level {}", l + 1),
                        });
                        return;
                    }
                }
            }
            let residual = matrix.unitarity_residual();
            if residual > tol::BUILD {
                out.push(Diagnostic {
                    gate: Some(idx),
                    message: format!("structured matrix not unitary (residual {residual:.3e})"),
                });
            }
            // Certificate check: blocks must tile the rows and rebuild the
            // matrix within the cross-module tolerance.
            let mut assembled = crate::linalg::Mat::zeros(n, n);
            let mut covered = vec![false; n];
            let mut ok = true;
            for block in blocks {
                for occ in &block.spec.occurrences {
                    if occ.len() != block.spec.m || occ.iter().any(|&r| r >= n) {
                        out.push(Diagnostic {
                            gate: Some(idx),
                            message: "certificate occurrence malformed".into(),
                        });
                        ok = false;
                        continue;
                    }
                    for (i, &ri) in occ.iter().enumerate() {
                        covered[ri] = true;
                        for (j, &rj) in occ.iter().enumerate() {
                            assembled[(ri, rj)] = block.matrix[(i, j)];
                        }
                    }
                }
            }
            if ok {
                if !covered.iter().all(|&c| c) {
                    out.push(Diagnostic {
                        gate: Some(idx),
                        message: "certificate does not cover all rows".into(),
                    });
                } else {
                    let off = matrix.max_abs_diff(&assembled);
                    if off > tol::CROSS {
                        out.push(Diagnostic {
                            gate: Some(idx),
                            message: format!("certificate violated (off-block mass {off:.3e})"),
                        });
                    }
                }
            }
        }
    }
}
