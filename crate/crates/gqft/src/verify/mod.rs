//! End-to-end verification against the dense reference transform, plus
//! cost-scaling reports.

pub mod fit;
pub mod fold;

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::circuit::Circuit;
use crate::group::{Group, GroupSpec};
use crate::linalg::Mat;
use crate::rep::{fourier, schur, RepError, Reps};
use crate::rng::SplitMix64;
use crate::sim::{self, SimError, DEFAULT_AMP_CAP};
use crate::synth::{self, PlanChoice, StagePlan, SynthError};
use crate::tol;

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Group(#[from] crate::group::GroupError),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Synth(#[from] SynthError),
    #[error(transparent)]
    Sim(#[from] SimError),
    #[error("circuit failed validation: {0}")]
    InvalidCircuit(String),
    #[error(
        "state space of dimension {dim} exceeds the cap {cap} and the circuit \
         cannot be folded: {reason}"
    )]
    BeyondCapability { dim: u128, cap: u128, reason: String },
}

impl VerifyError {
    /// Process exit code: 2 for capability problems, 1 for everything else
    /// (0 is a passing report).
    pub fn exit_code(&self) -> i32 {
        match self {
            VerifyError::Group(crate::group::GroupError::Unsupported(_))
            | VerifyError::Rep(RepError::Capability(_))
            | VerifyError::Synth(SynthError::Capability(_))
            | VerifyError::Synth(SynthError::Plan(_))
            | VerifyError::Sim(SimError::DimensionCap { .. })
            | VerifyError::BeyondCapability { .. } => 2,
            _ => 1,
        }
    }
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub plan: PlanChoice,
    pub tolerance: f64,
    pub leakage_bound: f64,
    pub seed: u64,
    pub cap: u128,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            plan: PlanChoice::Auto,
            tolerance: tol::END_TO_END,
            leakage_bound: tol::LEAKAGE,
            seed: 7,
            cap: DEFAULT_AMP_CAP,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ColumnCheck {
    pub input: String,
    pub deviation: f64,
    pub leakage: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct StageGateCount {
    pub level: usize,
    pub strategy: crate::synth::Strategy,
    pub gates: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub group: String,
    pub plan: StagePlan,
    pub columns: Vec<ColumnCheck>,
    pub max_deviation: f64,
    pub max_leakage: f64,
    pub reference_unitarity: f64,
    pub gate_count: usize,
    pub gates_per_stage: Vec<StageGateCount>,
    pub cost: u64,
    pub max_index: usize,
    pub adapted_diameter: usize,
    pub max_multiplicity: usize,
    pub log2_order: f64,
    pub folded: bool,
    pub tolerance: f64,
    pub leakage_bound: f64,
    pub passed: bool,
}

/// Runs the synthesized circuit on a set of basis columns (exhaustive for
/// small groups, a seeded sample plus the identity otherwise) and on the
/// uniform input, comparing decoded amplitudes against the dense reference.
pub fn verify_group(spec: &GroupSpec, options: &VerifyOptions) -> Result<VerificationReport, VerifyError> {
    let group = Group::build(spec)?;
    let reps = Reps::build(group)?;
    let (circuit, plan) = synth::synthesize(&reps, options.plan)?;
    verify_circuit(&reps, &circuit, plan, options)
}

/// Like [`verify_group`] for an already synthesized circuit.
pub fn verify_circuit(
    reps: &Reps,
    circuit: &Circuit,
    plan: StagePlan,
    options: &VerifyOptions,
) -> Result<VerificationReport, VerifyError> {
    let diagnostics = circuit.validate();
    if let Some(d) = diagnostics.first() {
        return Err(VerifyError::InvalidCircuit(d.to_string()));
    }
    let group = reps.group();
    let order = group.order() as usize;

    let reference = fourier::dense_qft_matrix(reps)?;
    let reference_unitarity = reference.unitarity_residual();

    // Fold away the column registers when the circuit allows it and the
    // full space would breach the cap.
    let (run_circuit, folded) = if circuit.layout.dimension() > options.cap {
        match fold::fold_circuit(circuit) {
            Ok(f) => (f, true),
            Err(reason) => {
                return Err(VerifyError::BeyondCapability {
                    dim: circuit.layout.dimension(),
                    cap: options.cap,
                    reason,
                })
            }
        }
    } else {
        (circuit.clone(), false)
    };
    let dim = run_circuit.layout.dimension();
    if dim > options.cap {
        return Err(VerifyError::Sim(SimError::DimensionCap { dim, cap: options.cap }));
    }

    let mut columns: Vec<usize> = if order <= 30 {
        (0..order).collect()
    } else {
        let mut rng = SplitMix64::new(options.seed);
        let mut sample = rng.sample_indices(order, 24);
        let id = group.element_index(&group.identity()).unwrap();
        if !sample.contains(&id) {
            sample.push(id);
        }
        sample
    };
    columns.sort_unstable();

    let mut checks = Vec::new();
    for &col in &columns {
        let mut f = vec![Complex64::new(0.0, 0.0); order];
        f[col] = Complex64::new(1.0, 0.0);
        let expected: Vec<Complex64> = (0..order).map(|row| reference[(row, col)]).collect();
        let (dev, leak) = run_column(reps, &run_circuit, &f, &expected, options.cap)?;
        checks.push(ColumnCheck {
            input: group.format(&group.elements()[col]),
            deviation: dev,
            leakage: leak,
        });
    }
    // Uniform input: expected = reference · f.
    {
        let amp = Complex64::new(1.0 / (order as f64).sqrt(), 0.0);
        let f = vec![amp; order];
        let expected = reference.apply(&f);
        let (dev, leak) = run_column(reps, &run_circuit, &f, &expected, options.cap)?;
        checks.push(ColumnCheck { input: "uniform".into(), deviation: dev, leakage: leak });
    }

    let max_deviation = checks.iter().map(|c| c.deviation).fold(0.0, f64::max);
    let max_leakage = checks.iter().map(|c| c.leakage).fold(0.0, f64::max);
    let (max_index, adapted_diameter) = group.tower_stats();
    let passed = max_deviation <= options.tolerance
        && max_leakage <= options.leakage_bound
        && reference_unitarity <= tol::CROSS;

    let gates_per_stage = plan
        .levels
        .iter()
        .map(|lp| StageGateCount {
            level: lp.level,
            strategy: lp.strategy,
            gates: circuit
                .gates
                .iter()
                .filter(|g| g.note.starts_with(&format!("L{}/", lp.level)))
                .count(),
        })
        .collect();

    Ok(VerificationReport {
        group: group.spec().id(),
        plan,
        columns: checks,
        max_deviation,
        max_leakage,
        reference_unitarity,
        gate_count: circuit.gates.len(),
        gates_per_stage,
        cost: circuit.cost().map_err(|e| VerifyError::InvalidCircuit(e.to_string()))?,
        max_index,
        adapted_diameter,
        max_multiplicity: schur::max_multiplicity(reps),
        log2_order: (group.order() as f64).log2(),
        folded,
        tolerance: options.tolerance,
        leakage_bound: options.leakage_bound,
        passed,
    })
}

fn run_column(
    reps: &Reps,
    circuit: &Circuit,
    f: &[Complex64],
    expected: &[Complex64],
    cap: u128,
) -> Result<(f64, f64), VerifyError> {
    let mut state = sim::encode_input(reps.group(), &circuit.layout, f, cap)?;
    sim::apply(circuit, &mut state)?;
    let decoded = sim::decode_output(&state);
    assert_eq!(decoded.amplitudes.len(), expected.len());
    let deviation = decoded
        .amplitudes
        .iter()
        .zip(expected)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    Ok((deviation, decoded.leakage))
}

#[derive(Debug, Clone, Serialize)]
pub struct CostRow {
    pub parameter: u64,
    pub group: String,
    pub order: u64,
    pub max_index: usize,
    pub adapted_diameter: usize,
    pub max_multiplicity: usize,
    pub log2_order: f64,
    pub gate_count: usize,
    pub cost: u64,
}

/// Synthesis-only cost table over a parameter range of one family.
/// `family` is one of `symmetric`, `cyclic`, `cyclic-two-power`, `dihedral`.
pub fn cost_report(family: &str, from: u64, to: u64) -> Result<Vec<CostRow>, VerifyError> {
    let mut rows = Vec::new();
    for p in from..=to {
        let spec = match family {
            "symmetric" => GroupSpec::Symmetric { n: p as u32 },
            "cyclic" => GroupSpec::Cyclic { n: p },
            "cyclic-two-power" => GroupSpec::Cyclic { n: 1u64 << p },
            "dihedral" => GroupSpec::Dihedral { p },
            other => {
                return Err(VerifyError::Group(crate::group::GroupError::Unsupported(
                    format!("unknown cost family {other:?}"),
                )))
            }
        };
        let group = Group::build(&spec)?;
        let reps = Reps::build(group)?;
        let (circuit, _) = synth::synthesize(&reps, PlanChoice::Auto)?;
        let (max_index, adapted_diameter) = reps.group().tower_stats();
        rows.push(CostRow {
            parameter: p,
            group: reps.group().spec().id(),
            order: reps.group().order(),
            max_index,
            adapted_diameter,
            max_multiplicity: schur::max_multiplicity(&reps),
            log2_order: (reps.group().order() as f64).log2(),
            gate_count: circuit.gates.len(),
            cost: circuit.cost().map_err(|e| VerifyError::InvalidCircuit(e.to_string()))?,
        });
    }
    Ok(rows)
}

pub fn cost_rows_to_csv(rows: &[CostRow]) -> String {
    let mut out =
        String::from("parameter,group,order,max_index,adapted_diameter,max_multiplicity,log2_order,gate_count,cost\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{:.6},{},{}\n",
            r.parameter,
            r.group,
            r.order,
            r.max_index,
            r.adapted_diameter,
            r.max_multiplicity,
            r.log2_order,
            r.gate_count,
            r.cost
        ));
    }
    out
}

/// Deviation between the decoded outputs of two circuits for the same
/// group on every basis column (used for plan cross-checks).
pub fn compare_plans(
    reps: &Reps,
    a: &Circuit,
    b: &Circuit,
    cap: u128,
) -> Result<f64, VerifyError> {
    let order = reps.group().order() as usize;
    let mut worst: f64 = 0.0;
    for col in 0..order {
        let mut f = vec![Complex64::new(0.0, 0.0); order];
        f[col] = Complex64::new(1.0, 0.0);
        let mut out = [Vec::new(), Vec::new()];
        for (i, c) in [a, b].into_iter().enumerate() {
            let mut state = sim::encode_input(reps.group(), &c.layout, &f, cap)?;
            sim::apply(c, &mut state)?;
            out[i] = sim::decode_output(&state).amplitudes;
        }
        let dev = out[0]
            .iter()
            .zip(&out[1])
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max);
        worst = worst.max(dev);
    }
    Ok(worst)
}

/// The dense reference matrix, re-exported here for report consumers.
pub fn reference_matrix(reps: &Reps) -> Result<Mat, RepError> {
    fourier::dense_qft_matrix(reps)
}
