//! Tower-adapted irreducible representations, the Bratteli diagram with its
//! path indexing, the dense reference Fourier unitary, and Schur block
//! certificates.
//!
//! Everything downstream works with [`Reps`]: the group, one list of adapted
//! irreducibles per tower level, and the diagram built from the family's
//! edge lists. Construction verifies unitarity of every generator image, the
//! dimension count `Σ d² = |G_i|` at every level, and agreement between each
//! node's dimension and its path count.

pub mod bratteli;
pub mod fourier;
pub mod schur;
pub mod young;

use thiserror::Error;

use crate::group::{Element, Group, GroupError};
use crate::linalg::Mat;
use crate::tol;

pub use bratteli::BratteliDiagram;
pub use fourier::FourierCoefficients;
pub use schur::{CertBlock, SchurCert};

#[derive(Debug, Error)]
pub enum RepError {
    #[error("representation construction error: {0}")]
    Construction(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("capability error: {0}")]
    Capability(String),
    #[error("certification error: {0}")]
    Certification(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Label of an irreducible node in the diagram.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub enum IrrepLabel {
    /// Partition of `k` for the symmetric tower.
    Partition(Vec<u8>),
    /// Character index for a cyclic level.
    Char(u64),
    /// Induced representation of a metacyclic group: character orbit
    /// (by its smallest member) plus a stabilizer character.
    Induced { orbit_rep: u64, stab_char: u64 },
}

impl std::fmt::Display for IrrepLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            IrrepLabel::Partition(p) => {
                let parts: Vec<String> = p.iter().map(|x| x.to_string()).collect();
                write!(f, "({})", parts.join(","))
            }
            IrrepLabel::Char(b) => write!(f, "chi_{b}"),
            IrrepLabel::Induced { orbit_rep, stab_char } => {
                write!(f, "ind[{orbit_rep};{stab_char}]")
            }
        }
    }
}

/// An irreducible matrix representation in the Gel'fand-Tsetlin basis of its
/// tower level, evaluated through its generator images.
#[derive(Debug, Clone)]
pub struct AdaptedRep {
    pub level: usize,
    pub label: IrrepLabel,
    pub dim: usize,
    /// `(global generator index, unitary image)` for each generator in
    /// `S ∩ G_level`.
    pub images: Vec<(usize, Mat)>,
}

impl AdaptedRep {
    pub fn image(&self, gen: usize) -> Option<&Mat> {
        self.images.iter().find(|(g, _)| *g == gen).map(|(_, m)| m)
    }
}

/// One copy of a lower irreducible inside a restricted representation: the
/// global rows of the copy, in the parent's own row order.
#[derive(Debug, Clone)]
pub struct BranchEdge {
    /// Node index at the level below.
    pub parent: usize,
    /// Multiplicity of `parent` in the restriction (copies total).
    pub multiplicity: usize,
    /// Global row indices of this copy, length `d_parent`.
    pub rows: Vec<usize>,
}

/// Verifies every irreducible's generator images against the family's
/// defining relations, restricted to the relations whose generators all
/// live inside the level.
fn check_relations(group: &Group, level: usize, irreps: &[AdaptedRep]) -> Result<(), RepError> {
    let gens = group.tower().generators();
    for (lhs, rhs) in group.family().defining_relations() {
        if lhs
            .iter()
            .chain(&rhs)
            .any(|&(g, _)| gens[g].level > level)
        {
            continue;
        }
        for rep in irreps {
            let eval_word = |word: &[(usize, bool)]| -> Result<Mat, RepError> {
                let mut acc = Mat::identity(rep.dim);
                for &(g, inverted) in word {
                    let img = rep.image(g).ok_or_else(|| {
                        RepError::Construction(format!("missing image of generator {g}"))
                    })?;
                    acc = if inverted { acc.mul(&img.adjoint()) } else { acc.mul(img) };
                }
                Ok(acc)
            };
            let dev = eval_word(&lhs)?.max_abs_diff(&eval_word(&rhs)?);
            if dev > tol::BUILD {
                return Err(RepError::Construction(format!(
                    "images of {} violate a defining relation by {dev:.3e}",
                    rep.label
                )));
            }
        }
    }
    Ok(())
}

/// A group together with its adapted irreducibles at every level and the
/// Bratteli diagram tying them together.
pub struct Reps {
    group: Group,
    levels: Vec<Vec<AdaptedRep>>,
    diagram: BratteliDiagram,
}

impl Reps {
    pub fn build(group: Group) -> Result<Reps, RepError> {
        let m = group.num_levels();
        let mut levels = Vec::with_capacity(m + 1);
        for level in 0..=m {
            let irreps = group.family().irreps(level);
            let sum_sq: u64 = irreps.iter().map(|r| (r.dim * r.dim) as u64).sum();
            if sum_sq != group.level_order(level) {
                return Err(RepError::Construction(format!(
                    "Σ d² = {sum_sq} ≠ |G_{level}| = {}",
                    group.level_order(level)
                )));
            }
            for rep in &irreps {
                for (gen, img) in &rep.images {
                    if img.rows != rep.dim || img.cols != rep.dim {
                        return Err(RepError::Construction(format!(
                            "image of generator {gen} in {} has wrong shape",
                            rep.label
                        )));
                    }
                    let residual = img.unitarity_residual();
                    if residual > tol::BUILD {
                        return Err(RepError::Construction(format!(
                            "image of generator {gen} in {} is not unitary (residual {residual:.3e})",
                            rep.label
                        )));
                    }
                }
            }
            check_relations(&group, level, &irreps)?;
            levels.push(irreps);
        }
        let diagram = BratteliDiagram::build(&group, &levels)?;
        Ok(Reps { group, levels, diagram })
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn diagram(&self) -> &BratteliDiagram {
        &self.diagram
    }

    pub fn irreps(&self, level: usize) -> &[AdaptedRep] {
        &self.levels[level]
    }

    pub fn rep(&self, level: usize, node: usize) -> &AdaptedRep {
        &self.levels[level][node]
    }

    /// `ρ(g)` as a product of generator images along the coset factorization
    /// and the cached transversal words.
    pub fn evaluate(&self, level: usize, node: usize, g: &Element) -> Result<Mat, RepError> {
        if !self.group.contains(level, g) {
            return Err(RepError::Domain(format!(
                "element {} lies outside level {level}",
                self.group.format(g)
            )));
        }
        let rep = self.rep(level, node);
        let digits = self.group.coset_digits(g)?;
        let mut acc = Mat::identity(rep.dim);
        for i in (1..=level).rev() {
            let word = self.group.tower().word_for_digit(i, digits[i - 1]);
            for letter in &word.0 {
                let img = rep.image(letter.gen).ok_or_else(|| {
                    RepError::Construction(format!(
                        "missing image of generator {} at level {level}",
                        letter.gen
                    ))
                })?;
                acc = if letter.inverse { acc.mul(&img.adjoint()) } else { acc.mul(img) };
            }
        }
        Ok(acc)
    }

    /// Restriction layout of a node one level down: one entry per in-edge
    /// copy, ordered by the parent-path order that defines the node's rows.
    pub fn branching(&self, level: usize, node: usize) -> Vec<BranchEdge> {
        assert!(level >= 1, "the root has no restriction");
        let d = self.diagram.levels[level][node].dim;
        let paths = &self.diagram.node_paths[level][node];
        // Copy key: (parent node, prefix-to-parent path is irrelevant, the
        // appended edge occurrence). Rows of one copy share the final edge
        // digit and run over the parent's paths in order.
        let mut copies: Vec<(usize, u8, Vec<usize>)> = Vec::new();
        for (row, &pidx) in paths.iter().enumerate() {
            let digits = &self.diagram.paths[level][pidx].digits;
            let last = digits[level - 1];
            let parent_path = self.diagram.parent_of_path(level, pidx);
            let parent = self.diagram.paths[level - 1][parent_path].node;
            match copies.iter_mut().find(|(p, e, _)| *p == parent && *e == last) {
                Some((_, _, rows)) => rows.push(row),
                None => copies.push((parent, last, vec![row])),
            }
        }
        let mut mult = std::collections::HashMap::new();
        for (p, _, _) in &copies {
            *mult.entry(*p).or_insert(0usize) += 1;
        }
        let total: usize = copies
            .iter()
            .map(|(p, _, _)| self.diagram.levels[level - 1][*p].dim)
            .sum();
        debug_assert_eq!(total, d);
        copies
            .into_iter()
            .map(|(parent, _, rows)| BranchEdge { parent, multiplicity: mult[&parent], rows })
            .collect()
    }

    /// Largest deviation of `ρ(gh)` from `ρ(g)·ρ(h)` over the given pairs.
    pub fn homomorphism_residual(
        &self,
        level: usize,
        node: usize,
        pairs: &[(Element, Element)],
    ) -> Result<f64, RepError> {
        let mut worst: f64 = 0.0;
        for (g, h) in pairs {
            let gh = self.group.m(g, h);
            let lhs = self.evaluate(level, node, &gh)?;
            let rhs = self.evaluate(level, node, g)?.mul(&self.evaluate(level, node, h)?);
            worst = worst.max(lhs.max_abs_diff(&rhs));
        }
        Ok(worst)
    }

    /// Verifies the Gel'fand-Tsetlin property of one node: every `ρ(h)` for
    /// `h` one level down is block diagonal per [`Self::branching`], and
    /// copies of the same parent carry entrywise equal blocks. Returns the
    /// largest violation found.
    pub fn gt_residual(&self, level: usize, node: usize) -> Result<f64, RepError> {
        let edges = self.branching(level, node);
        let mut worst: f64 = 0.0;
        for h in self.group.level_elements(level - 1) {
            let m = self.evaluate(level, node, &h)?;
            let mut assembled = Mat::zeros(m.rows, m.cols);
            let mut per_parent: std::collections::HashMap<usize, Mat> =
                std::collections::HashMap::new();
            for edge in &edges {
                let block = m.submatrix(&edge.rows, &edge.rows);
                if let Some(prev) = per_parent.get(&edge.parent) {
                    worst = worst.max(block.max_abs_diff(prev));
                } else {
                    per_parent.insert(edge.parent, block.clone());
                }
                for (bi, &ri) in edge.rows.iter().enumerate() {
                    for (bj, &rj) in edge.rows.iter().enumerate() {
                        assembled[(ri, rj)] = block[(bi, bj)];
                    }
                }
            }
            worst = worst.max(m.max_abs_diff(&assembled));
        }
        Ok(worst)
    }
}
