//! The Bratteli diagram of a subgroup tower: one node per irreducible at
//! each level, ordered edges recording restriction branching, and the path
//! enumeration that indexes every adapted-basis row.
//!
//! Paths are sequences of 1-based out-edge digits from the root. They are
//! enumerated prefix-major, so all paths through a common prefix sit
//! together; a node's rows are its paths in that order.

use serde::Serialize;

use super::{AdaptedRep, IrrepLabel, RepError};
use crate::group::Group;

#[derive(Debug, Clone, Serialize)]
pub struct NodeInfo {
    pub label: IrrepLabel,
    /// Dimension of the irreducible = number of root paths to this node.
    pub dim: usize,
}

#[derive(Debug, Clone)]
pub struct PathData {
    /// 1-based edge digits, one per level.
    pub digits: Vec<u8>,
    /// Terminal node index at the path's level.
    pub node: usize,
}

pub struct BratteliDiagram {
    /// `levels[l][n]`: node `n` of level `l`.
    pub levels: Vec<Vec<NodeInfo>>,
    /// `children[l][n]`: ordered child node indices at level `l + 1`,
    /// repeated per multiplicity.
    pub children: Vec<Vec<Vec<usize>>>,
    /// `paths[l]`: every root path of length `l`, prefix-major order.
    pub paths: Vec<Vec<PathData>>,
    /// `node_paths[l][n]`: indices into `paths[l]` ending at node `n`.
    pub node_paths: Vec<Vec<Vec<usize>>>,
}

impl BratteliDiagram {
    pub fn build(group: &Group, irreps: &[Vec<AdaptedRep>]) -> Result<Self, RepError> {
        let m = group.num_levels();
        let mut levels: Vec<Vec<NodeInfo>> = Vec::with_capacity(m + 1);
        let mut children: Vec<Vec<Vec<usize>>> = Vec::with_capacity(m);
        for (level, reps) in irreps.iter().enumerate() {
            levels.push(
                reps.iter()
                    .map(|r| NodeInfo { label: r.label.clone(), dim: r.dim })
                    .collect(),
            );
            if level < m {
                let count_above = group.family().irreps(level + 1).len();
                let kids: Vec<Vec<usize>> = (0..reps.len())
                    .map(|n| group.family().children(level, n))
                    .collect();
                for (n, k) in kids.iter().enumerate() {
                    if k.is_empty() || k.iter().any(|&c| c >= count_above) {
                        return Err(RepError::Construction(format!(
                            "bad edge list out of node {n} at level {level}"
                        )));
                    }
                }
                children.push(kids);
            }
        }
        if levels[0].len() != 1 {
            return Err(RepError::Construction(
                "the diagram must be rooted at a single trivial node".into(),
            ));
        }

        let mut paths: Vec<Vec<PathData>> = vec![vec![PathData { digits: vec![], node: 0 }]];
        let mut node_paths: Vec<Vec<Vec<usize>>> = vec![vec![vec![0]]];
        for level in 1..=m {
            let mut level_paths = Vec::new();
            let mut grouped = vec![Vec::new(); levels[level].len()];
            for prefix in &paths[level - 1] {
                for (e, &child) in children[level - 1][prefix.node].iter().enumerate() {
                    let mut digits = prefix.digits.clone();
                    digits.push(e as u8 + 1);
                    grouped[child].push(level_paths.len());
                    level_paths.push(PathData { digits, node: child });
                }
            }
            for (n, g) in grouped.iter().enumerate() {
                if g.len() != levels[level][n].dim {
                    return Err(RepError::Construction(format!(
                        "node {} at level {level} has {} paths but dimension {}",
                        levels[level][n].label,
                        g.len(),
                        levels[level][n].dim
                    )));
                }
            }
            paths.push(level_paths);
            node_paths.push(grouped);
        }

        Ok(BratteliDiagram { levels, children, paths, node_paths })
    }

    pub fn num_levels(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn out_degree(&self, level: usize, node: usize) -> usize {
        self.children[level][node].len()
    }

    pub fn max_out_degree(&self, level: usize) -> usize {
        (0..self.levels[level].len())
            .map(|n| self.out_degree(level, n))
            .max()
            .unwrap_or(0)
    }

    /// Node and row index of a digit string; `None` if it is not a path.
    pub fn path_to_index(&self, digits: &[u8]) -> Option<(usize, usize)> {
        let level = digits.len();
        let pidx = self.find_path(level, digits)?;
        let node = self.paths[level][pidx].node;
        let row = self.node_paths[level][node].iter().position(|&p| p == pidx)?;
        Some((node, row))
    }

    /// The path indexing row `row` of node `node` at `level`.
    pub fn index_to_path(&self, level: usize, node: usize, row: usize) -> &PathData {
        &self.paths[level][self.node_paths[level][node][row]]
    }

    /// Position of a digit string inside `paths[level]`.
    pub fn find_path(&self, level: usize, digits: &[u8]) -> Option<usize> {
        if digits.len() != level {
            return None;
        }
        self.paths[level].iter().position(|p| p.digits == digits)
    }

    /// Parent path (one level down) of a path, by index.
    pub fn parent_of_path(&self, level: usize, path_idx: usize) -> usize {
        let digits = &self.paths[level][path_idx].digits;
        self.find_path(level - 1, &digits[..level - 1])
            .expect("every prefix of a path is a path")
    }

    /// All co-terminal path pairs `(s, t)` at a level, ordered by
    /// `(s digits, t digits)`; this is the row order of the reference
    /// Fourier matrix and the output order of every circuit.
    pub fn pair_table(&self, level: usize) -> Vec<(usize, usize)> {
        let mut pairs = Vec::new();
        for (si, s) in self.paths[level].iter().enumerate() {
            for (ti, t) in self.paths[level].iter().enumerate() {
                if s.node == t.node {
                    pairs.push((si, ti));
                }
            }
        }
        pairs
    }

    /// Serializable view: nodes with labels and dims, plus ordered edges.
    pub fn to_json(&self) -> serde_json::Value {
        let levels: Vec<serde_json::Value> = self
            .levels
            .iter()
            .enumerate()
            .map(|(l, nodes)| {
                serde_json::json!({
                    "level": l,
                    "nodes": nodes.iter().map(|n| serde_json::json!({
                        "label": n.label.to_string(),
                        "dim": n.dim,
                    })).collect::<Vec<_>>(),
                    "edges": if l < self.num_levels() {
                        self.children[l].iter().enumerate().map(|(n, kids)| {
                            serde_json::json!({ "from": n, "to": kids })
                        }).collect::<Vec<_>>()
                    } else {
                        vec![]
                    }
                })
            })
            .collect();
        serde_json::json!({ "levels": levels })
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph bratteli {\n  rankdir=BT;\n");
        for (l, nodes) in self.levels.iter().enumerate() {
            for (n, info) in nodes.iter().enumerate() {
                out.push_str(&format!(
                    "  n{l}_{n} [label=\"{} d={}\"];\n",
                    info.label, info.dim
                ));
            }
        }
        for (l, level_children) in self.children.iter().enumerate() {
            for (n, kids) in level_children.iter().enumerate() {
                for (e, child) in kids.iter().enumerate() {
                    out.push_str(&format!(
                        "  n{l}_{n} -> n{}_{child} [label=\"{}\"];\n",
                        l + 1,
                        e + 1
                    ));
                }
            }
        }
        out.push_str("}\n");
        out
    }
}
