//! Dense mixed-radix state-vector execution.
//!
//! The state is one complex amplitude per basis label of the full register
//! product space. Gates are applied by enumerating the digit patterns they
//! actually touch and sweeping the spectator registers, so a small gate
//! never materializes a full-space matrix.

use num_complex::Complex64;
use thiserror::Error;

use crate::circuit::{Circuit, Condition, Gate, GateOp, RegId, RegisterLayout};
use crate::group::Group;
use crate::linalg::Mat;

/// Default amplitude cap: layouts above this dimension refuse to simulate.
pub const DEFAULT_AMP_CAP: u128 = 1 << 24;

#[derive(Debug, Error)]
pub enum SimError {
    #[error("layout mismatch: {0}")]
    Layout(String),
    #[error("input function must have unit norm (got ‖f‖² = {0})")]
    Normalization(f64),
    #[error(
        "state space of dimension {dim} exceeds the amplitude cap {cap}; \
         raise the cap explicitly to proceed"
    )]
    DimensionCap { dim: u128, cap: u128 },
    #[error("execution error: {0}")]
    Execution(String),
}

#[derive(Debug, Clone)]
pub struct StateVector {
    pub layout: RegisterLayout,
    pub amps: Vec<Complex64>,
}

/// Decoded circuit output: amplitudes on the designated output subspace
/// (consumed coset registers, valid co-terminal path pairs) and the
/// probability mass everywhere else.
#[derive(Debug, Clone)]
pub struct DecodedOutput {
    /// Aligned with `layout.output_pairs`.
    pub amplitudes: Vec<Complex64>,
    pub leakage: f64,
}

impl StateVector {
    pub fn zero(layout: &RegisterLayout, cap: u128) -> Result<StateVector, SimError> {
        let dim = layout.dimension();
        if dim > cap {
            return Err(SimError::DimensionCap { dim, cap });
        }
        Ok(StateVector {
            layout: layout.clone(),
            amps: vec![Complex64::new(0.0, 0.0); dim as usize],
        })
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum()
    }
}

/// Writes `f` into the group-side basis: amplitude `f(g)` goes to the basis
/// label whose coset digits encode `g` and whose path registers are blank.
pub fn encode_input(
    group: &Group,
    layout: &RegisterLayout,
    f: &[Complex64],
    cap: u128,
) -> Result<StateVector, SimError> {
    if f.len() as u64 != group.order() {
        return Err(SimError::Layout(format!(
            "input function has {} values for a group of order {}",
            f.len(),
            group.order()
        )));
    }
    let norm: f64 = f.iter().map(|z| z.norm_sqr()).sum();
    if (norm - 1.0).abs() > 1e-9 {
        return Err(SimError::Normalization(norm));
    }
    let mut state = StateVector::zero(layout, cap)?;
    let strides = layout.strides();
    for (gi, el) in group.elements().iter().enumerate() {
        if f[gi].norm_sqr() == 0.0 {
            continue;
        }
        let digits = group
            .coset_digits(el)
            .map_err(|e| SimError::Layout(e.to_string()))?;
        let mut index = 0u64;
        for (level, &d) in digits.iter().enumerate() {
            let reg = layout.alpha(level + 1);
            let digit = if layout.regs[reg].exponent_coded { d } else { d + 1 };
            debug_assert!((digit as u32) < layout.radix(reg));
            index += digit as u64 * strides[reg];
        }
        state.amps[index as usize] = f[gi];
    }
    Ok(state)
}

/// Amplitudes on the output subspace plus the leakage outside it.
pub fn decode_output(state: &StateVector) -> DecodedOutput {
    let layout = &state.layout;
    let strides = layout.strides();
    let mut amplitudes = Vec::with_capacity(layout.output_pairs.len());
    let mut valid_mass = 0.0;
    for (s, t) in &layout.output_pairs {
        let mut index = 0u64;
        for (level, &d) in s.iter().enumerate() {
            index += d as u64 * strides[layout.s_edge(level + 1)];
        }
        for (level, &d) in t.iter().enumerate() {
            index += d as u64 * strides[layout.t_edge(level + 1)];
        }
        let amp = state.amps[index as usize];
        valid_mass += amp.norm_sqr();
        amplitudes.push(amp);
    }
    DecodedOutput { amplitudes, leakage: state.norm_sqr() - valid_mass }
}

pub fn apply(circuit: &Circuit, state: &mut StateVector) -> Result<(), SimError> {
    if circuit.layout != state.layout {
        return Err(SimError::Layout("circuit and state layouts differ".into()));
    }
    for gate in &circuit.gates {
        apply_gate(gate, state)?;
    }
    Ok(())
}

/// Like [`apply`], but verifies norm preservation after every gate; used by
/// the invariant suites.
pub fn apply_checked(circuit: &Circuit, state: &mut StateVector) -> Result<f64, SimError> {
    if circuit.layout != state.layout {
        return Err(SimError::Layout("circuit and state layouts differ".into()));
    }
    let mut worst: f64 = 0.0;
    for (i, gate) in circuit.gates.iter().enumerate() {
        apply_gate(gate, state)?;
        let drift = (state.norm_sqr() - 1.0).abs();
        worst = worst.max(drift);
        if drift > 1e-10 {
            return Err(SimError::Execution(format!(
                "norm drifted by {drift:.3e} after gate {i}"
            )));
        }
    }
    Ok(worst)
}

/// Enumerates base offsets of all assignments to the registers *not* in
/// `involved`, i.e. the spectator subspace.
struct SpectatorIter {
    radices: Vec<u64>,
    strides: Vec<u64>,
    digits: Vec<u64>,
    offset: u64,
    done: bool,
}

impl SpectatorIter {
    fn new(layout: &RegisterLayout, involved: &[RegId]) -> SpectatorIter {
        let strides = layout.strides();
        let (mut rad, mut str_) = (Vec::new(), Vec::new());
        for (r, desc) in layout.regs.iter().enumerate() {
            if !involved.contains(&r) {
                rad.push(desc.radix as u64);
                str_.push(strides[r]);
            }
        }
        SpectatorIter {
            digits: vec![0; rad.len()],
            radices: rad,
            strides: str_,
            offset: 0,
            done: false,
        }
    }
}

impl Iterator for SpectatorIter {
    type Item = u64;
    fn next(&mut self) -> Option<u64> {
        if self.done {
            return None;
        }
        let current = self.offset;
        // odometer increment
        let mut i = self.digits.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            self.digits[i] += 1;
            self.offset += self.strides[i];
            if self.digits[i] < self.radices[i] {
                break;
            }
            self.offset -= self.digits[i] * self.strides[i];
            self.digits[i] = 0;
        }
        Some(current)
    }
}

fn tuple_offset(tuple: &[u32], regs: &[RegId], strides: &[u64]) -> u64 {
    tuple
        .iter()
        .zip(regs)
        .map(|(&v, &r)| v as u64 * strides[r])
        .sum()
}

fn condition_offsets(cond: &Condition, strides: &[u64]) -> Vec<u64> {
    cond.accepted
        .iter()
        .map(|t| tuple_offset(t, &cond.registers, strides))
        .collect()
}

fn apply_gate(gate: &Gate, state: &mut StateVector) -> Result<(), SimError> {
    let layout = state.layout.clone();
    let strides = layout.strides();
    match &gate.op {
        GateOp::ConditionedUnitary { targets, branches } => {
            // Offsets of every target digit combination, matrix row order.
            let dim: usize = targets.iter().map(|&r| layout.radix(r) as usize).product();
            let mut combo_offsets = vec![0u64; dim];
            for (i, offset) in combo_offsets.iter_mut().enumerate() {
                let mut rest = i;
                for &r in targets.iter().rev() {
                    let radix = layout.radix(r) as usize;
                    *offset += (rest % radix) as u64 * strides[r];
                    rest /= radix;
                }
            }
            let mut scratch = vec![Complex64::new(0.0, 0.0); dim];
            for branch in branches {
                let cond_offsets = condition_offsets(&branch.condition, &strides);
                let mut involved = targets.clone();
                involved.extend(&branch.condition.registers);
                for spectator in SpectatorIter::new(&layout, &involved) {
                    for &cond in &cond_offsets {
                        let base = spectator + cond;
                        for (i, &off) in combo_offsets.iter().enumerate() {
                            scratch[i] = state.amps[(base + off) as usize];
                        }
                        for (i, &off) in combo_offsets.iter().enumerate() {
                            let mut acc = Complex64::new(0.0, 0.0);
                            for (j, &s) in scratch.iter().enumerate() {
                                acc += branch.matrix[(i, j)] * s;
                            }
                            state.amps[(base + off) as usize] = acc;
                        }
                    }
                }
            }
        }
        GateOp::ClassicalPermutation { registers, map } => {
            let cycles = permutation_cycles(map);
            let offsets: Vec<Vec<u64>> = cycles
                .iter()
                .map(|cycle| {
                    cycle
                        .iter()
                        .map(|t| tuple_offset(t, registers, &strides))
                        .collect()
                })
                .collect();
            for spectator in SpectatorIter::new(&layout, registers) {
                for cycle in &offsets {
                    // amplitude at cycle[i] moves to cycle[i+1]
                    let last = state.amps[(spectator + cycle[cycle.len() - 1]) as usize];
                    for i in (1..cycle.len()).rev() {
                        state.amps[(spectator + cycle[i]) as usize] =
                            state.amps[(spectator + cycle[i - 1]) as usize];
                    }
                    state.amps[(spectator + cycle[0]) as usize] = last;
                }
            }
        }
        GateOp::Phase { registers, modulus, entries } => {
            let pairs: Vec<(u64, Complex64)> = entries
                .iter()
                .map(|(t, e)| {
                    (
                        tuple_offset(t, registers, &strides),
                        crate::linalg::root_of_unity(*modulus, *e as i64),
                    )
                })
                .collect();
            for spectator in SpectatorIter::new(&layout, registers) {
                for &(off, phase) in &pairs {
                    state.amps[(spectator + off) as usize] *= phase;
                }
            }
        }
        GateOp::PrimitiveCyclicQft { register, order, stride, condition } => {
            let dft = Mat::dft(*order as usize);
            let reg_stride = strides[*register];
            let mut involved = vec![*register];
            let cond_offsets = match condition {
                Some(c) => {
                    involved.extend(&c.registers);
                    condition_offsets(c, &strides)
                }
                None => vec![0],
            };
            let n = *order as usize;
            let mut scratch = vec![Complex64::new(0.0, 0.0); n];
            for spectator in SpectatorIter::new(&layout, &involved) {
                for &cond in &cond_offsets {
                    for k in 0..*stride as u64 {
                        let base = spectator + cond + k * reg_stride;
                        for j in 0..n {
                            scratch[j] =
                                state.amps[(base + (j as u64) * (*stride as u64) * reg_stride)
                                    as usize];
                        }
                        for b in 0..n {
                            let mut acc = Complex64::new(0.0, 0.0);
                            for (j, &s) in scratch.iter().enumerate() {
                                acc += dft[(b, j)] * s;
                            }
                            state.amps
                                [(base + (b as u64) * (*stride as u64) * reg_stride) as usize] =
                                acc;
                        }
                    }
                }
            }
        }
        GateOp::StructuredUnitary { level, paths, matrix: _, blocks } => {
            let regs: Vec<RegId> = (1..=*level).map(|l| layout.s_edge(l)).collect();
            let path_offsets: Vec<u64> = paths
                .iter()
                .map(|p| {
                    p.iter()
                        .enumerate()
                        .map(|(l, &d)| d as u64 * strides[regs[l]])
                        .sum()
                })
                .collect();
            for spectator in SpectatorIter::new(&layout, &regs) {
                for block in blocks {
                    for occ in &block.spec.occurrences {
                        let m = occ.len();
                        let mut scratch = Vec::with_capacity(m);
                        for &row in occ {
                            scratch
                                .push(state.amps[(spectator + path_offsets[row]) as usize]);
                        }
                        for (i, &row) in occ.iter().enumerate() {
                            let mut acc = Complex64::new(0.0, 0.0);
                            for (j, &s) in scratch.iter().enumerate() {
                                acc += block.matrix[(i, j)] * s;
                            }
                            state.amps[(spectator + path_offsets[row]) as usize] = acc;
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// Cycle decomposition of an explicit tuple bijection.
fn permutation_cycles(map: &[(Vec<u32>, Vec<u32>)]) -> Vec<Vec<Vec<u32>>> {
    use std::collections::HashMap;
    let forward: HashMap<&Vec<u32>, &Vec<u32>> = map.iter().map(|(a, b)| (a, b)).collect();
    let mut seen: std::collections::HashSet<&Vec<u32>> = Default::default();
    let mut cycles = Vec::new();
    for (start, _) in map {
        if seen.contains(start) {
            continue;
        }
        let mut cycle = vec![start.clone()];
        seen.insert(start);
        let mut cur = &forward[start];
        while *cur != start {
            cycle.push((*cur).clone());
            seen.insert(cur);
            cur = &forward[*cur];
        }
        if cycle.len() > 1 {
            cycles.push(cycle);
        }
    }
    cycles
}
