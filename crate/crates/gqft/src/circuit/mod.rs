//! Mixed-radix quantum-circuit intermediate representation.
//!
//! The gate set is pitched at the granularity the synthesis algorithm
//! naturally emits: small conditioned unitaries, classical permutations,
//! phase tables, primitive cyclic Fourier transforms, and structured
//! unitaries acting on the path space of the row registers with a Schur
//! block certificate attached. Costs are charged per the model in
//! [`cost::gate_cost`] rather than by decomposition to two-level gates.
//!
//! # JSON schema
//!
//! A circuit serializes to one JSON document:
//!
//! ```json
//! {
//!   "layout": {
//!     "regs": [ {"role": "alpha|s_edge|t_edge", "level": 1,
//!                "radix": 3, "exponent_coded": false}, … ],
//!     "output_pairs": [ [[1,2],[2,1]], … ]
//!   },
//!   "gates": [ {"op": {"kind": "…", …}, "note": "L2/coset1/embed"}, … ]
//! }
//! ```
//!
//! Gate payloads follow the [`GateOp`] variants with snake_case `kind`
//! tags. Matrices appear as `{"rows": r, "cols": c, "data": [[re, im], …]}`
//! with decimal floats that re-parse to the identical bits, so
//! `deserialize(serialize(c))` is structurally equal to `c`. Condition and
//! permutation tables list explicit digit tuples over their registers;
//! registers are indices into `layout.regs`.

pub mod cost;
pub mod dot;
pub mod validate;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::Mat;
use crate::rep::schur::BlockSpec;

#[derive(Debug, Error)]
pub enum CircuitError {
    #[error("validation failed: {0}")]
    Invalid(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
}

pub type RegId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RegRole {
    /// Coset digit of one tower step.
    Alpha,
    /// Row-path edge digit (0 = unwritten).
    SEdge,
    /// Column-path edge digit (0 = unwritten).
    TEdge,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegDesc {
    pub role: RegRole,
    /// Tower step this register belongs to, 1-based.
    pub level: usize,
    pub radix: u32,
    /// Alpha digit coding: `false` means digit `k ≥ 1` is the k-th
    /// transversal element with 0 = consumed; `true` means the digit is the
    /// power of the step's transversal generator (identity shares 0 with
    /// "consumed", as the orbit-parallel stages require).
    #[serde(default)]
    pub exponent_coded: bool,
}

/// Register bank plus the output basis: one register per role per level,
/// listed alpha registers first, then row edges, then column edges.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegisterLayout {
    pub regs: Vec<RegDesc>,
    /// Co-terminal top-level path pairs `(s digits, t digits)` in output
    /// order; the decoded amplitude vector aligns with this list.
    pub output_pairs: Vec<(Vec<u8>, Vec<u8>)>,
}

impl RegisterLayout {
    pub fn num_levels(&self) -> usize {
        self.regs.iter().map(|r| r.level).max().unwrap_or(0)
    }

    fn find(&self, role: RegRole, level: usize) -> RegId {
        self.regs
            .iter()
            .position(|r| r.role == role && r.level == level)
            .unwrap_or_else(|| panic!("missing {role:?} register for level {level}"))
    }

    pub fn alpha(&self, level: usize) -> RegId {
        self.find(RegRole::Alpha, level)
    }

    pub fn s_edge(&self, level: usize) -> RegId {
        self.find(RegRole::SEdge, level)
    }

    pub fn t_edge(&self, level: usize) -> RegId {
        self.find(RegRole::TEdge, level)
    }

    pub fn radix(&self, reg: RegId) -> u32 {
        self.regs[reg].radix
    }

    /// Total Hilbert-space dimension (product of radices).
    pub fn dimension(&self) -> u128 {
        self.regs.iter().map(|r| r.radix as u128).product()
    }

    /// Row-major strides, last register fastest.
    pub fn strides(&self) -> Vec<u64> {
        let mut strides = vec![1u64; self.regs.len()];
        for i in (0..self.regs.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * self.regs[i + 1].radix as u64;
        }
        strides
    }
}

/// A conjunction-of-tuples condition: the gate branch fires on basis states
/// whose digits at `registers` match one of the accepted tuples.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Condition {
    pub registers: Vec<RegId>,
    pub accepted: Vec<Vec<u32>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Branch {
    pub condition: Condition,
    /// Unitary on the target registers, row-major over their digit tuples
    /// (first target most significant).
    pub matrix: Mat,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GateOp {
    /// Small unitary on `targets`, dispatched over disjoint condition
    /// branches; identity where no branch fires.
    ConditionedUnitary { targets: Vec<RegId>, branches: Vec<Branch> },
    /// Relabeling of basis states: an explicit bijection on digit tuples
    /// over `registers` (fixed tuples omitted).
    ClassicalPermutation {
        registers: Vec<RegId>,
        map: Vec<(Vec<u32>, Vec<u32>)>,
    },
    /// Diagonal gate multiplying matched tuples by `ω_modulus^exponent`.
    Phase {
        registers: Vec<RegId>,
        modulus: u64,
        entries: Vec<(Vec<u32>, u64)>,
    },
    /// Fourier transform of order `order` on the `j` part of a register
    /// holding `v = stride·j + k`; `k` is carried along untouched. An
    /// optional condition restricts which basis states participate.
    PrimitiveCyclicQft {
        register: RegId,
        order: u32,
        stride: u32,
        condition: Option<Condition>,
    },
    /// Unitary on the joint row-edge registers `1..=level`, given as a
    /// direct sum over irreducibles in path order. Basis states whose
    /// digits do not form one of `paths` are left fixed. The Schur block
    /// certificate must reassemble the matrix exactly.
    StructuredUnitary {
        level: usize,
        /// Valid paths (digit strings) in path order; the matrix is indexed
        /// by positions in this list.
        paths: Vec<Vec<u8>>,
        matrix: Mat,
        blocks: Vec<CertBlock>,
    },
}

/// Serializable certificate block: a distinct small unitary and every place
/// it occurs inside the structured matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertBlock {
    pub spec: BlockSpec,
    pub matrix: Mat,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Gate {
    pub op: GateOp,
    /// Which synthesis stage emitted this gate, e.g. `L2/coset1/embed`.
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Circuit {
    pub layout: RegisterLayout,
    pub gates: Vec<Gate>,
}

impl Circuit {
    pub fn empty(layout: RegisterLayout) -> Self {
        Circuit { layout, gates: Vec::new() }
    }

    pub fn serialize_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("circuit serialization cannot fail")
    }

    pub fn deserialize_json(text: &str) -> Result<Circuit, CircuitError> {
        serde_json::from_str(text).map_err(|e| CircuitError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn validate(&self) -> Vec<validate::Diagnostic> {
        validate::validate(self)
    }

    pub fn cost(&self) -> Result<u64, CircuitError> {
        let diags = self.validate();
        if let Some(d) = diags.first() {
            return Err(CircuitError::Invalid(d.to_string()));
        }
        Ok(self.gates.iter().map(|g| cost::gate_cost(&g.op)).sum())
    }
}


#[cfg(test)]
mod property_tests {
    use super::*;
    use crate::linalg::Mat;
    use crate::rng::SplitMix64;
    use num_complex::Complex64;

    fn random_unitary(n: usize, rng: &mut SplitMix64) -> Mat {
        // Gram-Schmidt on a random complex matrix.
        let mut cols: Vec<Vec<Complex64>> = (0..n)
            .map(|_| {
                (0..n)
                    .map(|_| Complex64::new(rng.next_f64() - 0.5, rng.next_f64() - 0.5))
                    .collect()
            })
            .collect();
        for i in 0..n {
            for j in 0..i {
                let proj: Complex64 = (0..n).map(|k| cols[j][k].conj() * cols[i][k]).sum();
                for k in 0..n {
                    let correction = proj * cols[j][k];
                    cols[i][k] -= correction;
                }
            }
            let norm: f64 = cols[i].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            for z in &mut cols[i] {
                *z /= norm;
            }
        }
        let mut m = Mat::zeros(n, n);
        for (j, col) in cols.iter().enumerate() {
            for (i, &v) in col.iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        m
    }

    fn random_layout(rng: &mut SplitMix64) -> RegisterLayout {
        let levels = 1 + rng.next_below(3);
        let mut regs = Vec::new();
        for role in [RegRole::Alpha, RegRole::SEdge, RegRole::TEdge] {
            for level in 1..=levels {
                regs.push(RegDesc {
                    role,
                    level,
                    radix: 2 + rng.next_below(3) as u32,
                    exponent_coded: role == RegRole::Alpha && rng.next_below(2) == 0,
                });
            }
        }
        RegisterLayout { regs, output_pairs: vec![] }
    }

    fn random_gate(layout: &RegisterLayout, rng: &mut SplitMix64) -> Gate {
        let pick_reg = |rng: &mut SplitMix64| rng.next_below(layout.regs.len());
        let op = match rng.next_below(3) {
            0 => {
                let target = pick_reg(rng);
                let cond = loop {
                    let r = pick_reg(rng);
                    if r != target {
                        break r;
                    }
                };
                let d = layout.radix(target) as usize;
                let mut branches = Vec::new();
                for v in 0..layout.radix(cond) {
                    if rng.next_below(2) == 0 {
                        branches.push(Branch {
                            condition: Condition {
                                registers: vec![cond],
                                accepted: vec![vec![v]],
                            },
                            matrix: random_unitary(d, rng),
                        });
                    }
                }
                GateOp::ConditionedUnitary { targets: vec![target], branches }
            }
            1 => {
                let reg = pick_reg(rng);
                let radix = layout.radix(reg) as usize;
                // random permutation of the digit values
                let mut values: Vec<u32> = (0..radix as u32).collect();
                for i in (1..radix).rev() {
                    values.swap(i, rng.next_below(i + 1));
                }
                let map = (0..radix as u32)
                    .zip(values)
                    .filter(|(a, b)| a != b)
                    .map(|(a, b)| (vec![a], vec![b]))
                    .collect();
                GateOp::ClassicalPermutation { registers: vec![reg], map }
            }
            _ => {
                let reg = pick_reg(rng);
                let modulus = 2 + rng.next_below(14) as u64;
                let mut entries = Vec::new();
                for v in 0..layout.radix(reg) {
                    if rng.next_below(2) == 0 {
                        entries.push((vec![v], 1 + rng.next_u64() % (modulus - 1)));
                    }
                }
                GateOp::Phase { registers: vec![reg], modulus, entries }
            }
        };
        Gate { op, note: format!("random/{}", rng.next_u64() % 1000) }
    }

    #[test]
    fn random_circuits_validate_and_round_trip() {
        let mut rng = SplitMix64::new(2024);
        for case in 0..40 {
            let layout = random_layout(&mut rng);
            let gates = (0..rng.next_below(8))
                .map(|_| random_gate(&layout, &mut rng))
                .collect();
            let circuit = Circuit { layout, gates };
            let diags = circuit.validate();
            assert!(diags.is_empty(), "case {case}: {diags:?}");
            let text = circuit.serialize_json();
            let back = Circuit::deserialize_json(&text).unwrap();
            assert_eq!(circuit, back, "round trip case {case}");
            assert_eq!(circuit.cost().unwrap(), back.cost().unwrap());
        }
    }
}
