//! Elementary-operation cost model.
//!
//! - A conditioned unitary of dimension `d` with `c` branches costs `c·d²`.
//! - Classical permutations and phase tables cost their table size (the
//!   number of non-fixed labels described).
//! - A primitive cyclic transform of order `n` costs
//!   `⌈log₂ n⌉ · ⌈log₂ log₂ (n + 2)⌉`; the constant is a stand-in pinned
//!   here so scaling shapes are reproducible.
//! - A structured unitary costs `Σ m²` over the distinct certificate
//!   blocks: each distinct block is implemented once and dispatched on the
//!   subspace label.

use super::GateOp;

pub fn gate_cost(op: &GateOp) -> u64 {
    match op {
        GateOp::ConditionedUnitary { targets: _, branches } => {
            let d = branches.first().map(|b| b.matrix.rows as u64).unwrap_or(0);
            branches.len() as u64 * d * d
        }
        GateOp::ClassicalPermutation { map, .. } => map.len() as u64,
        GateOp::Phase { entries, .. } => entries.len() as u64,
        GateOp::PrimitiveCyclicQft { order, .. } => {
            let n = *order as f64;
            let outer = n.log2().ceil() as u64;
            let inner = (n + 2.0).log2().log2().ceil() as u64;
            outer * inner
        }
        GateOp::StructuredUnitary { blocks, .. } => {
            blocks.iter().map(|b| (b.spec.m * b.spec.m) as u64).sum()
        }
    }
}
