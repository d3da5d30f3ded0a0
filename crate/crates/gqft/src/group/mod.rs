//! Finite group arithmetic, subgroup towers, coset transversals, and
//! factorization of elements into transversal strings and generator words.
//!
//! Three families are built in: cyclic `Z_n`, symmetric `S_n`, and split
//! metacyclic `Z_q ⋉ Z_p` (which covers the dihedral groups at `q = 2`).
//! New families plug in through the [`family::Family`] trait.
//!
//! Conventions fixed here and used everywhere else:
//! - products compose with the **right factor acting first**;
//! - every transversal lists the identity first;
//! - transversal digit `k ≥ 1` means the `k`-th stored representative
//!   (identity is digit 1), digit `0` means "consumed" — except on levels a
//!   synthesis plan marks exponent-coded, where the digit is the power of the
//!   step's transversal generator.

pub mod family;
pub mod perm;
pub mod tower;

use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use family::Family;
pub use perm::Perm;
pub use tower::{Tower, Word, WordLetter};

#[derive(Debug, Error)]
pub enum GroupError {
    #[error("encoding error: {0}")]
    Encoding(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("unsupported group: {0}")]
    Unsupported(String),
}

/// Which finite group to build, as read from a group specification file.
///
/// `{"family":"dihedral","p":7}` is accepted as shorthand for
/// `{"family":"metacyclic","p":7,"q":2,"r":6}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum GroupSpec {
    Cyclic { n: u64 },
    Symmetric { n: u32 },
    Metacyclic { p: u64, q: u64, r: u64 },
    Dihedral { p: u64 },
}

impl GroupSpec {
    /// Resolves shorthand variants; `Dihedral { p }` becomes
    /// `Metacyclic { p, q: 2, r: p - 1 }`.
    pub fn normalized(&self) -> GroupSpec {
        match *self {
            GroupSpec::Dihedral { p } => GroupSpec::Metacyclic { p, q: 2, r: p - 1 },
            ref s => s.clone(),
        }
    }

    pub fn id(&self) -> String {
        match self.normalized() {
            GroupSpec::Cyclic { n } => format!("Z{n}"),
            GroupSpec::Symmetric { n } => format!("S{n}"),
            GroupSpec::Metacyclic { p, q, r } => format!("M({p},{q},{r})"),
            GroupSpec::Dihedral { .. } => unreachable!(),
        }
    }
}

/// A group element in the canonical encoding of its family.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Element {
    /// Residue in `Z_n`.
    Cyclic(u64),
    /// Permutation of the family's full degree.
    Perm(Perm),
    /// `t^a x^b` in `Z_q ⋉ Z_p`, with `t` transverse and `x` normal.
    Meta { t: u64, x: u64 },
}

/// A finite group together with its subgroup tower, transversals, strong
/// generating set, and cached generator-word tables.
pub struct Group {
    spec: GroupSpec,
    family: Arc<dyn Family>,
    tower: Tower,
    elements: Vec<Element>,
    index: HashMap<Element, usize>,
}

impl Group {
    pub fn build(spec: &GroupSpec) -> Result<Group, GroupError> {
        let spec = spec.normalized();
        let family: Arc<dyn Family> = match spec {
            GroupSpec::Cyclic { n } => Arc::new(family::cyclic::Cyclic::new(n)?),
            GroupSpec::Symmetric { n } => Arc::new(family::symmetric::Symmetric::new(n)?),
            GroupSpec::Metacyclic { p, q, r } => {
                Arc::new(family::metacyclic::Metacyclic::new(p, q, r)?)
            }
            GroupSpec::Dihedral { .. } => unreachable!(),
        };
        Group::from_family(spec, family)
    }

    /// Entry point for plugged-in families; the built-in constructors funnel
    /// through here as well.
    pub fn from_family(spec: GroupSpec, family: Arc<dyn Family>) -> Result<Group, GroupError> {
        let tower = Tower::build(family.as_ref())?;
        let elements = family.level_elements(tower.num_levels());
        let index = elements.iter().cloned().zip(0..).collect();
        Ok(Group { spec, family, tower, elements, index })
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn family(&self) -> &dyn Family {
        self.family.as_ref()
    }

    pub fn tower(&self) -> &Tower {
        &self.tower
    }

    pub fn order(&self) -> u64 {
        self.family.order()
    }

    /// Number of tower steps `m` in `G_0 = {1} < G_1 < … < G_m = G`.
    pub fn num_levels(&self) -> usize {
        self.tower.num_levels()
    }

    /// Canonical enumeration of the full group.
    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn element_index(&self, g: &Element) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn identity(&self) -> Element {
        self.family.identity()
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Result<Element, GroupError> {
        self.family.check_encoding(a)?;
        self.family.check_encoding(b)?;
        Ok(self.family.mul(a, b))
    }

    pub fn inverse(&self, g: &Element) -> Result<Element, GroupError> {
        self.family.check_encoding(g)?;
        Ok(self.family.inverse(g))
    }

    /// Infallible product for elements already known to be well-formed.
    pub(crate) fn m(&self, a: &Element, b: &Element) -> Element {
        self.family.mul(a, b)
    }

    pub(crate) fn inv(&self, g: &Element) -> Element {
        self.family.inverse(g)
    }

    pub fn contains(&self, level: usize, g: &Element) -> bool {
        self.family.contains(level, g)
    }

    pub fn level_order(&self, level: usize) -> u64 {
        self.family.level_order(level)
    }

    pub fn level_elements(&self, level: usize) -> Vec<Element> {
        self.family.level_elements(level)
    }

    /// Factors `g = α_m · … · α_1` with `α_i` in the level-`i` transversal.
    /// The returned vector is level-aligned: entry `i - 1` is `α_i`.
    pub fn coset_factorize(&self, g: &Element) -> Result<Vec<Element>, GroupError> {
        self.family.check_encoding(g)?;
        let mut residual = g.clone();
        let mut out = vec![self.identity(); self.num_levels()];
        for level in (1..=self.num_levels()).rev() {
            let t = self.tower.transversal(level);
            let found = t.iter().position(|alpha| {
                self.contains(level - 1, &self.m(&self.inv(alpha), &residual))
            });
            let pos = found.ok_or_else(|| {
                GroupError::Domain(format!("element {} not in level {level}", self.format(g)))
            })?;
            residual = self.m(&self.inv(&t[pos]), &residual);
            out[level - 1] = t[pos].clone();
        }
        Ok(out)
    }

    /// Transversal positions of [`Self::coset_factorize`]: entry `i - 1` is
    /// the index of `α_i` within `T_i` (0 = identity).
    pub fn coset_digits(&self, g: &Element) -> Result<Vec<usize>, GroupError> {
        let alphas = self.coset_factorize(g)?;
        Ok(alphas
            .iter()
            .enumerate()
            .map(|(i, a)| {
                self.tower
                    .transversal(i + 1)
                    .iter()
                    .position(|t| t == a)
                    .expect("factor comes from the transversal")
            })
            .collect())
    }

    /// Shortest cached generator word for a transversal representative,
    /// over `S ∩ G_level`.
    pub fn transversal_word(&self, alpha: &Element, level: usize) -> Result<&Word, GroupError> {
        self.tower.transversal_word(alpha, level)
    }

    /// Evaluates a word back to a group element.
    pub fn eval_word(&self, word: &Word) -> Element {
        word.0.iter().rev().fold(self.identity(), |acc, l| {
            let g = &self.tower.generators()[l.gen].element;
            let g = if l.inverse { self.inv(g) } else { g.clone() };
            self.m(&g, &acc)
        })
    }

    /// Adapted diameter `D = Σ_i D_i`.
    pub fn adapted_diameter(&self) -> usize {
        self.tower.adapted_diameter()
    }

    /// `(max index I, adapted diameter D)`.
    pub fn tower_stats(&self) -> (usize, usize) {
        (self.tower.max_index(), self.tower.adapted_diameter())
    }

    pub fn format(&self, g: &Element) -> String {
        self.family.format_element(g)
    }

    pub fn parse(&self, s: &str) -> Result<Element, GroupError> {
        self.family.parse_element(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> Group {
        Group::build(&GroupSpec::Symmetric { n: 3 }).unwrap()
    }

    #[test]
    fn identity_law_s3() {
        let g = s3();
        let t = g.parse("(1 2)").unwrap();
        assert_eq!(g.mul(&t, &g.identity()).unwrap(), t);
        assert_eq!(g.mul(&g.identity(), &t).unwrap(), t);
    }

    #[test]
    fn modular_addition_z6() {
        let g = Group::build(&GroupSpec::Cyclic { n: 6 }).unwrap();
        assert_eq!(
            g.mul(&Element::Cyclic(4), &Element::Cyclic(5)).unwrap(),
            Element::Cyclic(3)
        );
        assert!(g.mul(&Element::Cyclic(6), &Element::Cyclic(0)).is_err());
    }

    #[test]
    fn s3_composition_matches_function_composition_table() {
        // Independent oracle: multiply by composing image maps directly.
        let g = s3();
        for a in g.elements() {
            for b in g.elements() {
                let (Element::Perm(pa), Element::Perm(pb)) = (a, b) else { unreachable!() };
                let oracle = Perm((0..3).map(|x| pa.0[pb.0[x] as usize]).collect());
                assert_eq!(g.mul(a, b).unwrap(), Element::Perm(oracle));
            }
        }
        // Frozen from that table: (1 3) * (1 2 3) = (1 2).
        let x = g.parse("(1 3)").unwrap();
        let y = g.parse("(1 2 3)").unwrap();
        assert_eq!(g.mul(&x, &y).unwrap(), g.parse("(1 2)").unwrap());
    }

    #[test]
    fn group_axioms_exhaustive_small() {
        for spec in [
            GroupSpec::Cyclic { n: 12 },
            GroupSpec::Symmetric { n: 4 },
            GroupSpec::Dihedral { p: 5 },
            GroupSpec::Metacyclic { p: 7, q: 3, r: 2 },
        ] {
            let g = Group::build(&spec).unwrap();
            let els = g.elements().to_vec();
            assert_eq!(els.len() as u64, g.order());
            for a in &els {
                assert_eq!(g.m(a, &g.identity()), *a);
                assert_eq!(g.m(&g.inv(a), a), g.identity());
                for b in &els {
                    let ab = g.m(a, b);
                    assert!(g.element_index(&ab).is_some(), "closure fails in {spec:?}");
                    for c in &els {
                        if g.m(&ab, c) != g.m(a, &g.m(b, &c.clone())) {
                            panic!("associativity fails in {spec:?}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn metacyclic_action_exponent_validated() {
        // r^q must be 1 mod p.
        assert!(Group::build(&GroupSpec::Metacyclic { p: 7, q: 3, r: 3 }).is_err());
        assert!(Group::build(&GroupSpec::Metacyclic { p: 7, q: 3, r: 2 }).is_ok());
    }

    #[test]
    fn coset_factorization_reassembles_exhaustively() {
        // Every supported desk-scale group: the factorization map must be a
        // bijection onto the transversal-digit strings.
        let mut specs: Vec<GroupSpec> = (1..=64).map(|n| GroupSpec::Cyclic { n }).collect();
        specs.extend((2..=5).map(|n| GroupSpec::Symmetric { n }));
        specs.extend((3..=13).map(|p| GroupSpec::Dihedral { p }));
        specs.push(GroupSpec::Metacyclic { p: 5, q: 4, r: 4 });
        specs.push(GroupSpec::Metacyclic { p: 7, q: 3, r: 2 });
        specs.push(GroupSpec::Metacyclic { p: 9, q: 2, r: 8 });
        specs.push(GroupSpec::Metacyclic { p: 13, q: 12, r: 2 });
        for spec in specs {
            let g = Group::build(&spec).unwrap();
            let mut seen = std::collections::HashSet::new();
            for el in g.elements() {
                let alphas = g.coset_factorize(el).unwrap();
                let product = alphas
                    .iter()
                    .rev()
                    .fold(g.identity(), |acc, a| g.m(&acc, a));
                assert_eq!(product, *el, "reassembly in {spec:?}");
                assert!(seen.insert(g.coset_digits(el).unwrap()), "digits not unique");
            }
        }
    }

    #[test]
    fn s3_factorization_frozen_example() {
        // T_3 = {e, (1 3), (2 3)} in storage order e, (1 3), (2 3)? The
        // transversal stores e, (1 3), (2 3) as (k 3) for k = 1, 2.
        let g = s3();
        let el = g.parse("(1 2 3)").unwrap();
        let alphas = g.coset_factorize(&el).unwrap();
        // (1 2 3) sends 3 -> 1, so the top representative is (1 3).
        assert_eq!(alphas[1], g.parse("(1 3)").unwrap());
        assert_eq!(alphas[0], g.parse("(1 2)").unwrap());
    }

    #[test]
    fn z6_element_5_factorization() {
        let g = Group::build(&GroupSpec::Cyclic { n: 6 }).unwrap();
        let alphas = g.coset_factorize(&Element::Cyclic(5)).unwrap();
        // Tower Z_6 > Z_3 > 1 with top transversal {0, 3}: 5 = 3 + 2.
        assert_eq!(alphas[1], Element::Cyclic(3));
        assert_eq!(alphas[0], Element::Cyclic(2));
    }
}
