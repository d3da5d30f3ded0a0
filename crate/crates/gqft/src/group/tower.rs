//! Subgroup tower data: transversals, annotated strong generating set, and
//! cached shortest generator words for every transversal representative,
//! computed once by breadth-first search over each level's Cayley graph.

use std::collections::HashMap;

use super::family::Family;
use super::{Element, GroupError};

/// One letter of a generator word: an index into the tower's generating set,
/// possibly inverted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct WordLetter {
    pub gen: usize,
    pub inverse: bool,
}

/// A product of generators, leftmost factor written first; the right factor
/// acts first, so evaluation folds from the right.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct Word(pub Vec<WordLetter>);

impl Word {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// A strong-set generator with its tower annotations.
#[derive(Debug, Clone)]
pub struct GenInfo {
    pub element: Element,
    /// Least `i` with `γ ∈ G_i`.
    pub level: usize,
    /// Greatest `j` with `γ` commuting with all of `G_j`; 0 when `γ`
    /// centralizes nothing beyond the trivial group.
    pub centralized_level: usize,
    pub order: u64,
}

pub struct Tower {
    num_levels: usize,
    level_orders: Vec<u64>,
    transversals: Vec<Vec<Element>>,
    words: Vec<Vec<Word>>,
    diameters: Vec<usize>,
    generators: Vec<GenInfo>,
    split: Vec<bool>,
}

impl Tower {
    pub fn build(family: &dyn Family) -> Result<Tower, GroupError> {
        let m = family.num_levels();
        let level_orders: Vec<u64> = (0..=m).map(|i| family.level_order(i)).collect();

        let generators = annotate_generators(family, m);
        let mut transversals = Vec::with_capacity(m);
        let mut words = Vec::with_capacity(m);
        let mut diameters = Vec::with_capacity(m);
        let mut split = Vec::with_capacity(m);

        for level in 1..=m {
            let t = family.transversal(level);
            if t.first() != Some(&family.identity()) {
                return Err(GroupError::Domain(format!(
                    "transversal at level {level} must start with the identity"
                )));
            }
            if t.len() as u64 * level_orders[level - 1] != level_orders[level] {
                return Err(GroupError::Domain(format!(
                    "transversal size mismatch at level {level}"
                )));
            }
            let table = bfs_words(family, &generators, level);
            let mut level_words = Vec::with_capacity(t.len());
            let mut d = 0;
            for alpha in &t {
                let w = table.get(alpha).ok_or_else(|| {
                    GroupError::Domain(format!(
                        "representative {} unreachable from the generators at level {level}",
                        family.format_element(alpha)
                    ))
                })?;
                d = d.max(w.len());
                level_words.push(w.clone());
            }
            transversals.push(t);
            words.push(level_words);
            diameters.push(d);
            split.push(family.split_step(level));
        }

        Ok(Tower {
            num_levels: m,
            level_orders,
            transversals,
            words,
            diameters,
            generators,
            split,
        })
    }

    pub fn num_levels(&self) -> usize {
        self.num_levels
    }

    pub fn level_order(&self, level: usize) -> u64 {
        self.level_orders[level]
    }

    pub fn transversal(&self, level: usize) -> &[Element] {
        &self.transversals[level - 1]
    }

    pub fn generators(&self) -> &[GenInfo] {
        &self.generators
    }

    pub fn is_split_step(&self, level: usize) -> bool {
        self.split[level - 1]
    }

    /// Max BFS word length over the level's transversal.
    pub fn step_diameter(&self, level: usize) -> usize {
        self.diameters[level - 1]
    }

    /// `D = Σ_i D_i`.
    pub fn adapted_diameter(&self) -> usize {
        self.diameters.iter().sum()
    }

    /// `I = max_i [G_i : G_{i-1}]`.
    pub fn max_index(&self) -> usize {
        self.transversals.iter().map(|t| t.len()).max().unwrap_or(1)
    }

    pub fn transversal_word(&self, alpha: &Element, level: usize) -> Result<&Word, GroupError> {
        let pos = self
            .transversal(level)
            .iter()
            .position(|t| t == alpha)
            .ok_or_else(|| {
                GroupError::Domain(format!("not a level-{level} transversal representative"))
            })?;
        Ok(&self.words[level - 1][pos])
    }

    pub fn word_for_digit(&self, level: usize, digit: usize) -> &Word {
        &self.words[level - 1][digit]
    }
}

fn annotate_generators(family: &dyn Family, m: usize) -> Vec<GenInfo> {
    family
        .generators()
        .into_iter()
        .map(|g| {
            let level = (0..=m)
                .find(|&i| family.contains(i, &g))
                .expect("generator lies in the group");
            let centralized_level = (0..=m)
                .rev()
                .find(|&j| {
                    family
                        .level_elements(j)
                        .iter()
                        .all(|h| family.mul(&g, h) == family.mul(h, &g))
                })
                .unwrap_or(0);
            let mut order = 1;
            let mut acc = g.clone();
            while acc != family.identity() {
                acc = family.mul(&acc, &g);
                order += 1;
            }
            GenInfo { element: g, level, centralized_level, order }
        })
        .collect()
}

/// Shortest, lexicographically-least words for every element of `G_level`
/// over `S ∩ G_level`. Appending letters in a fixed order during FIFO BFS
/// makes the first word found for an element the lexicographically least
/// among the shortest ones.
fn bfs_words(
    family: &dyn Family,
    generators: &[GenInfo],
    level: usize,
) -> HashMap<Element, Word> {
    let mut letters = Vec::new();
    for (idx, info) in generators.iter().enumerate() {
        if info.level > level {
            continue;
        }
        letters.push((WordLetter { gen: idx, inverse: false }, info.element.clone()));
        if info.order > 2 {
            letters.push((
                WordLetter { gen: idx, inverse: true },
                family.inverse(&info.element),
            ));
        }
    }

    let target = family.level_order(level);
    let mut table = HashMap::with_capacity(target as usize);
    let mut queue = std::collections::VecDeque::new();
    table.insert(family.identity(), Word::default());
    queue.push_back(family.identity());
    while let Some(cur) = queue.pop_front() {
        if table.len() as u64 == target {
            break;
        }
        let word = table[&cur].clone();
        for (letter, gen_el) in &letters {
            let next = family.mul(&cur, gen_el);
            if table.contains_key(&next) {
                continue;
            }
            let mut w = word.clone();
            w.0.push(*letter);
            table.insert(next.clone(), w);
            queue.push_back(next);
        }
    }
    table
}
