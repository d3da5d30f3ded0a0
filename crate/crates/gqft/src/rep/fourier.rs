//! The classical Fourier transform on a group: per-representation
//! coefficient matrices, the dense reference unitary every circuit is
//! verified against, and the inversion and orthogonality checks.
//!
//! Normalization: `f̂(ρ) = √(d_ρ/|G|) Σ_g f(g) ρ(g)`, which makes the whole
//! transform unitary. Inversion uses the adjoint form
//! `f(g) = Σ_ρ √(d_ρ/|G|) tr(ρ(g)† f̂(ρ))`.

use num_complex::Complex64;

use super::{RepError, Reps};
use crate::linalg::Mat;

/// `ρ ↦ f̂(ρ)`, matrices aligned with the top-level node list.
#[derive(Debug, Clone)]
pub struct FourierCoefficients {
    pub matrices: Vec<Mat>,
}

impl FourierCoefficients {
    /// Plancherel mass `Σ_ρ ‖f̂(ρ)‖²_F`.
    pub fn total_mass(&self) -> f64 {
        self.matrices.iter().map(|m| m.frobenius_norm_sqr()).sum()
    }
}

/// Fourier transform of `f`, given as amplitudes aligned with the group's
/// element enumeration.
pub fn fourier(reps: &Reps, f: &[Complex64]) -> Result<FourierCoefficients, RepError> {
    let g = reps.group();
    let m = g.num_levels();
    assert_eq!(f.len() as u64, g.order());
    let scale = |d: usize| (d as f64 / g.order() as f64).sqrt();
    let mut matrices: Vec<Mat> = reps
        .irreps(m)
        .iter()
        .map(|r| Mat::zeros(r.dim, r.dim))
        .collect();
    for (gi, el) in g.elements().iter().enumerate() {
        if f[gi].norm_sqr() == 0.0 {
            continue;
        }
        for (node, acc) in matrices.iter_mut().enumerate() {
            let img = reps.evaluate(m, node, el)?;
            acc.add_assign(&img.scale(f[gi]));
        }
    }
    for (node, mat) in matrices.iter_mut().enumerate() {
        let d = reps.irreps(m)[node].dim;
        *mat = mat.scale(Complex64::new(scale(d), 0.0));
    }
    Ok(FourierCoefficients { matrices })
}

/// Pointwise inverse of [`fourier`].
pub fn inverse_fourier(reps: &Reps, coeffs: &FourierCoefficients) -> Result<Vec<Complex64>, RepError> {
    let g = reps.group();
    let m = g.num_levels();
    let mut out = Vec::with_capacity(g.order() as usize);
    for el in g.elements() {
        let mut acc = Complex64::new(0.0, 0.0);
        for (node, coeff) in coeffs.matrices.iter().enumerate() {
            let d = reps.irreps(m)[node].dim;
            let scale = (d as f64 / g.order() as f64).sqrt();
            let img = reps.evaluate(m, node, el)?;
            acc += img.adjoint().mul(coeff).trace() * scale;
        }
        out.push(acc);
    }
    Ok(out)
}

/// The `|G| × |G|` reference Fourier unitary: rows indexed by co-terminal
/// path pairs in pair-table order, columns by the element enumeration.
/// `F[(s,t), g] = √(d_ρ/|G|) ρ(g)[row(s), row(t)]`.
pub fn dense_qft_matrix(reps: &Reps) -> Result<Mat, RepError> {
    let g = reps.group();
    let m = g.num_levels();
    let d = reps.diagram();
    let pairs = d.pair_table(m);
    let n = g.order() as usize;
    assert_eq!(pairs.len(), n);
    let mut f = Mat::zeros(n, n);
    for (col, el) in g.elements().iter().enumerate() {
        let images: Vec<Mat> = (0..reps.irreps(m).len())
            .map(|node| reps.evaluate(m, node, el))
            .collect::<Result<_, _>>()?;
        for (row, &(si, ti)) in pairs.iter().enumerate() {
            let node = d.paths[m][si].node;
            let (n1, r) = d.path_to_index(&d.paths[m][si].digits).unwrap();
            let (n2, c) = d.path_to_index(&d.paths[m][ti].digits).unwrap();
            debug_assert_eq!(n1, node);
            debug_assert_eq!(n2, node);
            let scale = (reps.irreps(m)[node].dim as f64 / n as f64).sqrt();
            f[(row, col)] = images[node][(r, c)] * scale;
        }
    }
    Ok(f)
}

/// Largest violation of the matrix-element orthogonality relations:
/// `⟨ρ_ij, σ_kl⟩ = δ_ρσ δ_ik δ_jl / d_ρ` under
/// `⟨f1, f2⟩ = (1/|G|) Σ_g f1(g) f2(g)*`.
///
/// With the reference matrix's `√(d_ρ/|G|)` row scaling this is exactly
/// `F F† = I`, so the residual doubles as the unitarity residual of `F`.
pub fn orthogonality_residual(f: &Mat) -> f64 {
    f.mul(&f.adjoint()).max_abs_diff(&Mat::identity(f.rows))
}
