//! Quantum Fourier transform circuits over finite groups.
//!
//! Builds explicit mixed-radix quantum circuits that compute the Fourier
//! transform over cyclic, symmetric, and metacyclic (e.g. dihedral) groups,
//! working level by level up a subgroup tower. Every circuit can be executed
//! on a dense state-vector simulator and checked column-by-column against a
//! classically computed reference Fourier unitary.
//!
//! The main pieces:
//!
//! - [`group`]: group arithmetic, subgroup towers, coset transversals, and
//!   generator-word factorization via Cayley-graph BFS.
//! - [`rep`]: tower-adapted irreducible representations, the Bratteli diagram
//!   with path indexing, the dense reference Fourier matrix, and Schur block
//!   certificates for centralizing generators.
//! - [`circuit`]: the gate-level intermediate representation with validation,
//!   a cost model, JSON serialization, and DOT output.
//! - [`synth`]: lowering a group to a circuit via coset-serial stages,
//!   orbit-parallel stages for split extensions, or the non-split two-power
//!   cyclic stage.
//! - [`sim`]: dense mixed-radix state-vector execution.
//! - [`verify`]: end-to-end verification against the dense reference and
//!   cost-scaling reports.
//!
//! See the `examples/` directory for one runnable program per capability and
//! the thin `gqft` binary for the command-line surface.
//!
//! # Quick start
//!
//! ```
//! use gqft::group::{Group, GroupSpec};
//! use gqft::rep::Reps;
//! use gqft::synth::{synthesize, PlanChoice};
//! use gqft::verify::{verify_circuit, VerifyOptions};
//!
//! let group = Group::build(&GroupSpec::Symmetric { n: 3 })?;
//! let reps = Reps::build(group)?;
//! let (circuit, plan) = synthesize(&reps, PlanChoice::Auto)?;
//! let report = verify_circuit(&reps, &circuit, plan, &VerifyOptions::default())?;
//! assert!(report.passed);
//! assert!(report.max_deviation < 1e-10);
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```

pub mod circuit;
pub mod group;
pub mod linalg;
pub mod rep;
pub mod rng;
pub mod sim;
pub mod synth;
pub mod verify;

/// Numerical tolerances, tiered so construction-time checks leave headroom
/// for cross-module and end-to-end checks.
pub mod tol {
    /// Construction-time assertions (unitarity of generator images, scale
    /// factor normalization, gate matrices).
    pub const BUILD: f64 = 1e-12;
    /// Cross-module verification (evaluated representations, block
    /// structure, reference-matrix unitarity, orthogonality relations).
    pub const CROSS: f64 = 1e-10;
    /// End-to-end circuit-vs-reference amplitude deviation.
    pub const END_TO_END: f64 = 1e-8;
    /// Agreement between two synthesis plans for the same group.
    pub const PLAN_AGREEMENT: f64 = 1e-9;
    /// Probability mass allowed outside the decoded output subspace.
    pub const LEAKAGE: f64 = 1e-12;
}

pub use circuit::Circuit;
pub use group::{Element, Group, GroupSpec};
pub use rep::{AdaptedRep, BratteliDiagram};
pub use sim::StateVector;
pub use synth::{synthesize, PlanChoice};
