//! Exact diagonal-pair folding.
//!
//! Circuits over towers whose irreducibles are all one-dimensional never
//! separate the row and column edge registers: every write targets the pair
//! `(e, e)` and the row register is only ever hit by diagonal matrices. On
//! such circuits the state stays supported on `t = s`, and the dynamics
//! restricted to that diagonal subspace is isomorphic to the same circuit
//! over a layout with one merged edge register per level. That halves the
//! exponent of the simulation dimension and is what lets the two-power
//! cyclic family be verified to `Z_{2^8}` inside the amplitude cap.
//!
//! Folding refuses (with a reason) any gate that could move amplitude off
//! the diagonal, so it is exactness-preserving by construction; the
//! unfolded and folded simulations are compared outright in tests at sizes
//! where both fit.

use crate::circuit::{Branch, Circuit, Condition, Gate, GateOp, RegId, RegRole, RegisterLayout};
use crate::linalg::Mat;

const EXACT: f64 = 1e-14;

struct Folder<'c> {
    old: &'c RegisterLayout,
    /// old register -> new register
    remap: Vec<RegId>,
}

impl<'c> Folder<'c> {
    fn role(&self, reg: RegId) -> RegRole {
        self.old.regs[reg].role
    }

    /// Folds a register list and its tuples. Positions of an s/t pair
    /// collapse onto the merged register; every tuple must carry equal
    /// digits on collapsed positions, or (for droppable contexts) the tuple
    /// is filtered out.
    fn fold_tuples(
        &self,
        registers: &[RegId],
        tuples: Vec<Vec<u32>>,
        drop_unequal: bool,
    ) -> Result<(Vec<RegId>, Vec<Vec<u32>>), String> {
        let mut new_regs: Vec<RegId> = Vec::new();
        let mut position_of: Vec<usize> = Vec::new();
        for &r in registers {
            let nr = self.remap[r];
            match new_regs.iter().position(|&x| x == nr) {
                Some(p) => position_of.push(p),
                None => {
                    new_regs.push(nr);
                    position_of.push(new_regs.len() - 1);
                }
            }
        }
        let mut out = Vec::new();
        'tuples: for tuple in tuples {
            let mut folded = vec![u32::MAX; new_regs.len()];
            for (pos, &v) in tuple.iter().enumerate() {
                let p = position_of[pos];
                if folded[p] == u32::MAX {
                    folded[p] = v;
                } else if folded[p] != v {
                    if drop_unequal {
                        continue 'tuples;
                    }
                    return Err("tuple differs across a folded register pair".into());
                }
            }
            out.push(folded);
        }
        Ok((new_regs, out))
    }
}

/// Returns the folded circuit, or the reason the circuit cannot be folded.
pub fn fold_circuit(circuit: &Circuit) -> Result<Circuit, String> {
    let old = &circuit.layout;
    let m = old.num_levels();
    let mut regs = Vec::new();
    let mut remap = vec![usize::MAX; old.regs.len()];
    for (i, desc) in old.regs.iter().enumerate() {
        match desc.role {
            RegRole::Alpha | RegRole::SEdge => {
                remap[i] = regs.len();
                regs.push(desc.clone());
            }
            RegRole::TEdge => {}
        }
    }
    for level in 1..=m {
        let s = old.s_edge(level);
        let t = old.t_edge(level);
        if old.regs[s].radix != old.regs[t].radix {
            return Err(format!("edge radices differ at level {level}"));
        }
        remap[t] = remap[s];
    }
    let mut output_pairs = Vec::new();
    for (s, t) in &old.output_pairs {
        if s != t {
            return Err("output basis contains off-diagonal pairs".into());
        }
        output_pairs.push((s.clone(), Vec::new()));
    }
    let folder = Folder { old, remap };

    let mut gates = Vec::new();
    for (idx, gate) in circuit.gates.iter().enumerate() {
        let fail = |msg: &str| format!("gate {idx}: {msg}");
        let op = match &gate.op {
            GateOp::Phase { registers, modulus, entries } => {
                if registers.iter().any(|&r| folder.role(r) == RegRole::TEdge) {
                    return Err(fail("phase reads a column register"));
                }
                let (regs2, tuples) = folder
                    .fold_tuples(
                        registers,
                        entries.iter().map(|(t, _)| t.clone()).collect(),
                        false,
                    )
                    .map_err(|e| fail(&e))?;
                let entries2 = tuples
                    .into_iter()
                    .zip(entries.iter().map(|(_, e)| *e))
                    .collect();
                GateOp::Phase { registers: regs2, modulus: *modulus, entries: entries2 }
            }
            GateOp::PrimitiveCyclicQft { register, order, stride, condition } => {
                if folder.role(*register) != RegRole::Alpha {
                    return Err(fail("cyclic transform off the coset register"));
                }
                let condition = match condition {
                    None => None,
                    Some(c) => {
                        let (regs2, accepted) = folder
                            .fold_tuples(&c.registers, c.accepted.clone(), true)
                            .map_err(|e| fail(&e))?;
                        Some(Condition { registers: regs2, accepted })
                    }
                };
                GateOp::PrimitiveCyclicQft {
                    register: folder.remap[*register],
                    order: *order,
                    stride: *stride,
                    condition,
                }
            }
            GateOp::ClassicalPermutation { registers, map } => {
                let froms: Vec<Vec<u32>> = map.iter().map(|(a, _)| a.clone()).collect();
                let tos: Vec<Vec<u32>> = map.iter().map(|(_, b)| b.clone()).collect();
                let (regs2, f2) = folder
                    .fold_tuples(registers, froms, false)
                    .map_err(|e| fail(&e))?;
                let (_, t2) = folder.fold_tuples(registers, tos, false).map_err(|e| fail(&e))?;
                let map2: Vec<(Vec<u32>, Vec<u32>)> = f2
                    .into_iter()
                    .zip(t2)
                    .filter(|(a, b)| a != b)
                    .collect();
                GateOp::ClassicalPermutation { registers: regs2, map: map2 }
            }
            GateOp::ConditionedUnitary { targets, branches } => {
                // Only the (s_i, t_i) pair-target form folds: the matrix
                // must never couple diagonal and off-diagonal pairs.
                if targets.len() != 2
                    || folder.role(targets[0]) != RegRole::SEdge
                    || folder.role(targets[1]) != RegRole::TEdge
                    || folder.remap[targets[0]] != folder.remap[targets[1]]
                {
                    return Err(fail("unitary targets are not one edge pair"));
                }
                let rt = old.regs[targets[1]].radix as usize;
                let rs = old.regs[targets[0]].radix as usize;
                let mut branches2 = Vec::new();
                for b in branches {
                    let diag = |v: usize| v * rt + v;
                    let mut folded = Mat::zeros(rs, rs);
                    for v in 0..rs {
                        for w in 0..rs {
                            folded[(v, w)] = b.matrix[(diag(v), diag(w))];
                        }
                    }
                    for row in 0..rs * rt {
                        for col in 0..rs * rt {
                            let dr = row % rt == row / rt;
                            let dc = col % rt == col / rt;
                            if dr != dc && b.matrix[(row, col)].norm() > EXACT {
                                return Err(fail("unitary couples diagonal to off-diagonal"));
                            }
                        }
                    }
                    let (regs2, accepted) = folder
                        .fold_tuples(&b.condition.registers, b.condition.accepted.clone(), true)
                        .map_err(|e| fail(&e))?;
                    branches2.push(Branch {
                        condition: Condition { registers: regs2, accepted },
                        matrix: folded,
                    });
                }
                GateOp::ConditionedUnitary {
                    targets: vec![folder.remap[targets[0]]],
                    branches: branches2,
                }
            }
            GateOp::StructuredUnitary { level, paths, matrix, blocks } => {
                for i in 0..matrix.rows {
                    for j in 0..matrix.cols {
                        if i != j && matrix[(i, j)].norm() > EXACT {
                            return Err(fail("structured matrix is not diagonal"));
                        }
                    }
                }
                GateOp::StructuredUnitary {
                    level: *level,
                    paths: paths.clone(),
                    matrix: matrix.clone(),
                    blocks: blocks.clone(),
                }
            }
        };
        gates.push(Gate { op, note: gate.note.clone() });
    }

    Ok(Circuit { layout: RegisterLayout { regs, output_pairs }, gates })
}
