//! Circuit synthesis: lowering a group with its tower and diagram into a
//! gate-level program that computes the Fourier transform.
//!
//! Each tower step is handled by one of three stage kinds:
//!
//! - **coset-serial** (`beals`): iterate over the step's cosets, injecting
//!   each coset's lower-level transform into the accumulator sector through
//!   the embedding unitary, conjugated by twiddle words. Always applicable.
//! - **orbit-parallel** (`homothetic`): for split steps with a cyclic
//!   prime-power transverse subgroup whose conjugation action permutes the
//!   lower representations exactly, all cosets are processed at once by a
//!   primitive cyclic transform on the coset exponent plus an orbit-cycling
//!   relabeling with a phase.
//! - **two-power-cyclic**: the non-split `Z_{2^i}` over `Z_{2^{i-1}}` step;
//!   a conditional-phase ladder followed by a 2-point transform.
//!
//! The stage plan also fixes the register layout: coset digits on
//! coset-serial levels are offset-coded (0 = consumed), while the other two
//! stage kinds store the bare exponent of the transversal generator.

mod orbit;
mod stages;
mod twopower;

use serde::Serialize;
use thiserror::Error;

use crate::circuit::{Circuit, Gate, RegDesc, RegRole, RegisterLayout};
use crate::group::family::OrbitData;
use crate::rep::{RepError, Reps};
use crate::tol;

#[derive(Debug, Error)]
pub enum SynthError {
    #[error("plan error: {0}")]
    Plan(String),
    #[error("capability error: {0}")]
    Capability(String),
    #[error("synthesis error: {0}")]
    Synthesis(String),
    #[error(transparent)]
    Rep(#[from] RepError),
}

/// Stage kind chosen for one tower step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    Beals,
    Homothetic,
    NonsplitCyclic,
}

/// User-facing plan selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlanChoice {
    Auto,
    Beals,
    Homothetic,
}

impl std::str::FromStr for PlanChoice {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "auto" => Ok(PlanChoice::Auto),
            "beals" => Ok(PlanChoice::Beals),
            "homothetic" => Ok(PlanChoice::Homothetic),
            other => Err(format!("unknown plan {other:?} (expected beals|homothetic|auto)")),
        }
    }
}

/// Per-level strategy with its justification record.
#[derive(Debug, Clone, Serialize)]
pub struct LevelPlan {
    pub level: usize,
    pub strategy: Strategy,
    pub index: usize,
    pub split: bool,
    /// Orbit sizes of the lower-level nodes under conjugation when the
    /// orbit-parallel data exists (empty otherwise).
    pub orbit_sizes: Vec<u64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct StagePlan {
    pub levels: Vec<LevelPlan>,
}

/// Scale factors `A_{σ,ρ} = √(|H|/|G| · d_ρ/d_σ)` of one step's embedding,
/// one row per lower node, aligned with its out-edges.
pub struct ScaleFactorTable {
    /// `rows[level - 1][node][edge]`.
    rows: Vec<Vec<Vec<f64>>>,
}

impl ScaleFactorTable {
    pub fn build(reps: &Reps) -> Result<ScaleFactorTable, SynthError> {
        let diagram = reps.diagram();
        let group = reps.group();
        let mut rows = Vec::new();
        for level in 1..=group.num_levels() {
            let ratio = group.level_order(level - 1) as f64 / group.level_order(level) as f64;
            let mut level_rows = Vec::new();
            for (node, info) in diagram.levels[level - 1].iter().enumerate() {
                let amps: Vec<f64> = diagram.children[level - 1][node]
                    .iter()
                    .map(|&child| {
                        let d_child = diagram.levels[level][child].dim as f64;
                        (ratio * d_child / info.dim as f64).sqrt()
                    })
                    .collect();
                let total: f64 = amps.iter().map(|a| a * a).sum();
                if (total - 1.0).abs() > tol::BUILD {
                    return Err(SynthError::Synthesis(format!(
                        "scale factors of node {node} at level {} sum to {total}, not 1",
                        level - 1
                    )));
                }
                level_rows.push(amps);
            }
            rows.push(level_rows);
        }
        Ok(ScaleFactorTable { rows })
    }

    pub fn row(&self, level: usize, node: usize) -> &[f64] {
        &self.rows[level - 1][node]
    }
}

/// Everything the stage emitters need: the representations, the plan's
/// register layout, and the embedding scale factors.
pub struct SynthCtx<'r> {
    pub reps: &'r Reps,
    pub layout: RegisterLayout,
    pub scale: ScaleFactorTable,
}

impl<'r> SynthCtx<'r> {
    pub fn new(reps: &'r Reps, plan: &StagePlan) -> Result<SynthCtx<'r>, SynthError> {
        Ok(SynthCtx {
            reps,
            layout: layout_for_plan(reps, plan),
            scale: ScaleFactorTable::build(reps)?,
        })
    }
}

/// Checks the orbit-parallel prerequisites for one step and returns the
/// family's orbit data once verified: the step must be split with a cyclic
/// prime-power transverse subgroup, conjugation must permute the lower
/// nodes exactly (checked numerically against the claimed orbit table), and
/// nodes in nontrivial orbits must be one-dimensional so paths can be
/// relabeled directly.
pub fn certify_orbit_parallel(reps: &Reps, level: usize) -> Result<OrbitData, SynthError> {
    let group = reps.group();
    let tower = group.tower();
    let t = tower.transversal(level);
    if t.len() < 2 {
        return Err(SynthError::Plan(format!("step {level} has index 1")));
    }
    if !tower.is_split_step(level) {
        return Err(SynthError::Plan(format!("step {level} is not split")));
    }
    if !crate::group::family::is_prime_power(t.len() as u64) {
        return Err(SynthError::Plan(format!(
            "step {level} has transverse order {} which is not a prime power",
            t.len()
        )));
    }
    let data = group
        .family()
        .orbit_data(level)
        .ok_or_else(|| SynthError::Plan(format!("no orbit data for step {level}")))?;
    if data.gamma_order != t.len() as u64 {
        return Err(SynthError::Plan("orbit data disagrees with transversal size".into()));
    }
    let diagram = reps.diagram();
    let nodes_below = diagram.levels[level - 1].len();
    if data.per_node.len() != nodes_below {
        return Err(SynthError::Plan("orbit table has wrong node count".into()));
    }

    let gamma = &t[1];
    let gamma_inv = group.inverse(gamma).map_err(RepError::Group)?;
    for (node, orbit) in data.per_node.iter().enumerate() {
        if orbit.orbit_size * orbit.stabilizer_order != data.gamma_order {
            return Err(SynthError::Plan(format!(
                "orbit {node}: q·p^ℓ ≠ |T| at step {level}"
            )));
        }
        if orbit.conjugates.len() != orbit.orbit_size as usize
            || orbit.conjugates[0] != node
        {
            return Err(SynthError::Plan(format!("orbit table malformed at node {node}")));
        }
        if orbit.orbit_size > 1 && diagram.levels[level - 1][node].dim != 1 {
            return Err(SynthError::Capability(format!(
                "node {node} at level {} sits in a nontrivial orbit but has dimension > 1; \
                 path relabeling is only implemented for one-dimensional nodes",
                level - 1
            )));
        }
        // σ^γ(h) = σ(γ⁻¹hγ) must equal the claimed conjugate node exactly.
        let target = orbit.conjugates.get(1).copied().unwrap_or(node);
        for info in tower.generators() {
            if info.level > level - 1 {
                continue;
            }
            let conj = group.m(&group.m(&gamma_inv, &info.element), gamma);
            if !group.contains(level - 1, &conj) {
                return Err(SynthError::Plan(format!(
                    "conjugation by the step-{level} transversal leaves level {}",
                    level - 1
                )));
            }
            let lhs = reps.evaluate(level - 1, node, &conj)?;
            let rhs = reps.evaluate(level - 1, target, &info.element)?;
            if lhs.max_abs_diff(&rhs) > tol::BUILD {
                return Err(SynthError::Plan(format!(
                    "conjugation does not permute nodes exactly at step {level} \
                     (node {node} vs {target})"
                )));
            }
        }
    }
    Ok(data)
}

fn two_power_eligible(reps: &Reps, level: usize) -> bool {
    let group = reps.group();
    let below = group.level_order(level - 1);
    let here = group.level_order(level);
    here == 2 * below
        && below.is_power_of_two()
        && here == 1u64 << level
        && !group.tower().is_split_step(level)
}

/// Chooses a strategy per level under the given plan selector.
pub fn plan(reps: &Reps, choice: PlanChoice) -> Result<StagePlan, SynthError> {
    let group = reps.group();
    let mut levels = Vec::new();
    for level in 1..=group.num_levels() {
        let index = group.tower().transversal(level).len();
        let split = group.tower().is_split_step(level);
        let orbit = certify_orbit_parallel(reps, level).ok();
        let orbit_sizes = orbit
            .as_ref()
            .map(|d| d.per_node.iter().map(|n| n.orbit_size).collect())
            .unwrap_or_default();
        let strategy = match choice {
            PlanChoice::Beals => Strategy::Beals,
            PlanChoice::Auto | PlanChoice::Homothetic => {
                if index == 1 {
                    Strategy::Beals
                } else if orbit.is_some() {
                    Strategy::Homothetic
                } else if two_power_eligible(reps, level) {
                    Strategy::NonsplitCyclic
                } else if choice == PlanChoice::Auto {
                    Strategy::Beals
                } else {
                    return Err(SynthError::Plan(format!(
                        "step {level} supports neither the orbit-parallel nor the \
                         two-power stage; use --plan beals or auto"
                    )));
                }
            }
        };
        levels.push(LevelPlan { level, strategy, index, split, orbit_sizes });
    }
    Ok(StagePlan { levels })
}

/// Register layout induced by a plan: per level one coset register (radix
/// and coding per the stage kind) and one row/column edge register pair.
pub fn layout_for_plan(reps: &Reps, plan: &StagePlan) -> RegisterLayout {
    let diagram = reps.diagram();
    let group = reps.group();
    let m = group.num_levels();
    let mut regs = Vec::new();
    for lp in &plan.levels {
        let t_len = group.tower().transversal(lp.level).len() as u32;
        let (radix, exponent_coded) = match lp.strategy {
            Strategy::Beals => (t_len + 1, false),
            Strategy::Homothetic | Strategy::NonsplitCyclic => (t_len, true),
        };
        regs.push(RegDesc { role: RegRole::Alpha, level: lp.level, radix, exponent_coded });
    }
    for level in 1..=m {
        let radix = diagram.max_out_degree(level - 1) as u32 + 1;
        regs.push(RegDesc { role: RegRole::SEdge, level, radix, exponent_coded: false });
    }
    for level in 1..=m {
        let radix = diagram.max_out_degree(level - 1) as u32 + 1;
        regs.push(RegDesc { role: RegRole::TEdge, level, radix, exponent_coded: false });
    }
    let output_pairs = diagram
        .pair_table(m)
        .into_iter()
        .map(|(s, t)| {
            (
                diagram.paths[m][s].digits.clone(),
                diagram.paths[m][t].digits.clone(),
            )
        })
        .collect();
    RegisterLayout { regs, output_pairs }
}

/// Synthesizes the full transform circuit under a plan selector.
pub fn synthesize(reps: &Reps, choice: PlanChoice) -> Result<(Circuit, StagePlan), SynthError> {
    let stage_plan = plan(reps, choice)?;
    let layout = layout_for_plan(reps, &stage_plan);
    let scale = ScaleFactorTable::build(reps)?;
    let ctx = SynthCtx { reps, layout: layout.clone(), scale };
    let mut gates: Vec<Gate> = Vec::new();
    for lp in &stage_plan.levels {
        let stage = match lp.strategy {
            Strategy::Beals => stages::beals_stage(&ctx, lp.level)?,
            Strategy::Homothetic => orbit::homothetic_stage(&ctx, lp.level)?,
            Strategy::NonsplitCyclic => twopower::nonsplit_cyclic_stage(&ctx, lp.level)?,
        };
        gates.extend(stage);
    }
    Ok((Circuit { layout, gates }, stage_plan))
}

pub use stages::{beals_stage, coset_swap_gate, embedding_gate, twiddle_gates};
pub use orbit::homothetic_stage;
pub use twopower::nonsplit_cyclic_stage;
