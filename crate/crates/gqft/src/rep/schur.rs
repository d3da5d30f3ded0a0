//! Schur block certificates.
//!
//! A generator `γ` that centralizes the tower subgroup `G_k` has, in any
//! adapted representation, a very sparse image: it can only mix basis paths
//! that agree both below level `k` and above `γ`'s own level. Grouping rows
//! by that shared data cuts `ρ(γ)` into small blocks of shape
//! `(m × m) ⊗ I`, one distinct block per pair (irreducible `η` at level `k`,
//! irreducible `μ` at `γ`'s level), with `m` the number of diagram paths
//! from `η` up to `μ`. These certificates are what lets a twiddle gate be
//! charged for a handful of small matrices instead of a full-dimension one.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{RepError, Reps};
use crate::linalg::Mat;
use crate::tol;

/// One distinct block of a certificate, with every place it occurs.
#[derive(Debug, Clone)]
pub struct CertBlock {
    /// Node index at the centralized level.
    pub eta: usize,
    /// Node index at the generator's level.
    pub mu: usize,
    /// Block size = number of diagram paths from `eta` to `mu`.
    pub m: usize,
    /// Dimension of `eta` (the identity-factor size of the block).
    pub d_eta: usize,
    /// The `m × m` unitary.
    pub matrix: Mat,
    /// Row index sets, one per occurrence in the ambient matrix.
    pub occurrences: Vec<Vec<usize>>,
}

/// Certificate that a matrix on the level's path space decomposes into the
/// blocks of a centralizing generator.
#[derive(Debug, Clone)]
pub struct SchurCert {
    pub level: usize,
    pub node: usize,
    pub gen: usize,
    /// Centralized level `k` the decomposition is taken over.
    pub k_level: usize,
    pub blocks: Vec<CertBlock>,
    /// Largest entry found outside all blocks (must be ≈ 0).
    pub off_block_residual: f64,
}

impl SchurCert {
    pub fn max_block_size(&self) -> usize {
        self.blocks.iter().map(|b| b.m).max().unwrap_or(1)
    }

    /// Reassembles the ambient matrix from the blocks (identity off the
    /// occupied rows is not implied: every row of the node belongs to
    /// exactly one occurrence).
    pub fn assemble(&self, dim: usize) -> Mat {
        let mut m = Mat::zeros(dim, dim);
        for b in &self.blocks {
            for occ in &b.occurrences {
                for (i, &ri) in occ.iter().enumerate() {
                    for (j, &rj) in occ.iter().enumerate() {
                        m[(ri, rj)] = b.matrix[(i, j)];
                    }
                }
            }
        }
        m
    }
}

/// Serializable form carried inside structured gates.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct BlockSpec {
    pub m: usize,
    pub d_eta: usize,
    /// Row sets within the gate's path-order index space.
    pub occurrences: Vec<Vec<usize>>,
}

/// Decomposes `ρ(γ)` into its Schur blocks over `K = G_{k_level}` where
/// `k_level` is the generator's centralized-level annotation. Fails with a
/// certification error if mass appears outside the block structure (which
/// would indicate a representation-construction bug).
pub fn schur_blocks(
    reps: &Reps,
    level: usize,
    node: usize,
    gen: usize,
) -> Result<SchurCert, RepError> {
    let info = &reps.group().tower().generators()[gen];
    if info.level > level {
        return Err(RepError::Domain(format!(
            "generator {gen} lies above level {level}"
        )));
    }
    let k_level = info.centralized_level.min(level);
    let g_level = info.level;
    // A generator centralizing at or above its own level mixes nothing:
    // the key below covers every digit and all blocks are 1×1.
    let cut = k_level.min(g_level);
    let image = reps.evaluate(level, node, &info.element)?;
    let diagram = reps.diagram();
    let paths = &diagram.node_paths[level][node];

    // Rows sharing (digits below k_level, node at g_level, digits above
    // g_level) form one block occurrence; the free middle digits index the
    // block's rows.
    type OccurrenceKey = (Vec<u8>, usize, Vec<u8>);
    let mut groups: BTreeMap<OccurrenceKey, Vec<(Vec<u8>, usize)>> = BTreeMap::new();
    for (row, &pidx) in paths.iter().enumerate() {
        let digits = &diagram.paths[level][pidx].digits;
        let below = digits[..k_level].to_vec();
        let mid = digits[cut..g_level].to_vec();
        let above = digits[g_level..].to_vec();
        let mu_node = diagram.find_path(g_level, &digits[..g_level]).map(|p| {
            diagram.paths[g_level][p].node
        });
        let mu_node = mu_node.expect("every path prefix is a path");
        groups
            .entry((below, mu_node, above))
            .or_default()
            .push((mid, row));
    }

    // Distinct blocks keyed by (eta, mu); occurrences must agree entrywise.
    let mut blocks: BTreeMap<(usize, usize), CertBlock> = BTreeMap::new();
    let mut worst_equal: f64 = 0.0;
    for ((below, mu_node, _above), mut rows) in groups {
        rows.sort(); // middle digits ascending = path order within the block
        let eta_node = diagram
            .find_path(k_level, &below)
            .map(|p| diagram.paths[k_level][p].node)
            .expect("prefix is a path");
        let idx: Vec<usize> = rows.iter().map(|(_, r)| *r).collect();
        let sub = image.submatrix(&idx, &idx);
        let entry = blocks.entry((eta_node, mu_node)).or_insert_with(|| CertBlock {
            eta: eta_node,
            mu: mu_node,
            m: idx.len(),
            d_eta: diagram.levels[k_level][eta_node].dim,
            matrix: sub.clone(),
            occurrences: Vec::new(),
        });
        worst_equal = worst_equal.max(entry.matrix.max_abs_diff(&sub));
        entry.occurrences.push(idx);
    }

    let cert = SchurCert {
        level,
        node,
        gen,
        k_level,
        blocks: blocks.into_values().collect(),
        off_block_residual: 0.0,
    };
    let assembled = cert.assemble(image.rows);
    let off = image.max_abs_diff(&assembled);
    if off > tol::CROSS || worst_equal > tol::CROSS {
        return Err(RepError::Certification(format!(
            "block structure violated for generator {gen} in node {node} at level {level}: \
             off-block {off:.3e}, copy deviation {worst_equal:.3e}"
        )));
    }
    Ok(SchurCert { off_block_residual: off, ..cert })
}

/// Maximum Schur block size over the annotated generators (those
/// centralizing at least `G_1`) across all levels where they appear.
/// Computed from diagram path counts between levels.
pub fn max_multiplicity(reps: &Reps) -> usize {
    let diagram = reps.diagram();
    let mut best = 1usize;
    for info in reps.group().tower().generators() {
        if info.centralized_level == 0 {
            continue;
        }
        let k = info.centralized_level;
        let j = info.level;
        if j <= k {
            continue; // blocks are 1x1 when γ sits inside the level it centralizes
        }
        // Count paths from each eta at level k to each mu at level j.
        let eta_count = diagram.levels[k].len();
        let mut counts: Vec<Vec<usize>> =
            vec![(0..eta_count).map(|_| 0).collect(); diagram.levels[j].len()];
        for (mu, counts_mu) in counts.iter_mut().enumerate() {
            for &pidx in &diagram.node_paths[j][mu] {
                let digits = &diagram.paths[j][pidx].digits;
                let eta = diagram
                    .find_path(k, &digits[..k])
                    .map(|p| diagram.paths[k][p].node)
                    .unwrap();
                counts_mu[eta] += 1;
            }
        }
        // Each (eta, mu) path count divided by d_eta = the block size m.
        for (mu, counts_mu) in counts.iter().enumerate() {
            let _ = mu;
            for (eta, &c) in counts_mu.iter().enumerate() {
                if c > 0 {
                    best = best.max(c / diagram.levels[k][eta].dim);
                }
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{Group, GroupSpec};

    fn reps(spec: GroupSpec) -> Reps {
        Reps::build(Group::build(&spec).unwrap()).unwrap()
    }

    #[test]
    fn identity_like_blocks_for_level_one_generator() {
        // (1 2) centralizes S_2, so all its blocks are 1×1 signs.
        let r = reps(GroupSpec::Symmetric { n: 4 });
        for node in 0..r.irreps(3).len() {
            let cert = schur_blocks(&r, 3, node, 0).unwrap();
            assert_eq!(cert.max_block_size(), 1);
        }
    }

    #[test]
    fn s4_top_transposition_blocks_at_most_two() {
        // (3 4) ∈ Z(S_2): blocks over η at level 1, μ at level 3.
        let r = reps(GroupSpec::Symmetric { n: 4 });
        let standard = 1; // node (3,1)
        let cert = schur_blocks(&r, 3, standard, 2).unwrap();
        assert!(cert.max_block_size() <= 2);
        assert!(cert.off_block_residual <= 1e-12);
        // The whole image must be recoverable from the blocks.
        let img = r
            .evaluate(3, standard, &r.group().parse("(3 4)").unwrap())
            .unwrap();
        assert!(cert.assemble(3).max_abs_diff(&img) < 1e-12);
    }

    #[test]
    fn dihedral_rotation_blocks_are_phases() {
        let r = reps(GroupSpec::Dihedral { p: 5 });
        for node in 0..r.irreps(2).len() {
            let cert = schur_blocks(&r, 2, node, 0).unwrap();
            assert_eq!(cert.max_block_size(), 1, "rotation blocks must be 1×1");
        }
        assert_eq!(max_multiplicity(&r), 1);
    }

    #[test]
    fn symmetric_max_multiplicity_is_two() {
        for n in [4, 5] {
            let r = reps(GroupSpec::Symmetric { n });
            assert_eq!(max_multiplicity(&r), 2);
        }
    }

    #[test]
    fn cyclic_max_multiplicity_is_one() {
        for n in [6, 8, 12, 16] {
            let r = reps(GroupSpec::Cyclic { n });
            assert_eq!(max_multiplicity(&r), 1);
        }
    }
}
