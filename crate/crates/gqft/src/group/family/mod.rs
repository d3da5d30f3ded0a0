//! The family plugin trait: everything a group family must provide for the
//! tower, representation, and synthesis machinery to run on top of it.
//!
//! Three families are implemented here. A new family plugs in by
//! implementing [`Family`] and calling [`crate::group::Group::from_family`];
//! nothing downstream is family-specific beyond what this trait carries.

use super::{Element, GroupError, GroupSpec};
use crate::rep::AdaptedRep;

/// Conjugation-orbit data for one tower step whose transversal is a cyclic
/// transverse subgroup `⟨γ⟩`. Describes how conjugation by `γ` permutes the
/// irreducible representations one level down; the orbit-parallel synthesis
/// stage is driven entirely by this table.
#[derive(Debug, Clone)]
pub struct OrbitData {
    /// `|T| = p^z`, the order of `γ`.
    pub gamma_order: u64,
    /// Per node at the level below, aligned with its node list.
    pub per_node: Vec<NodeOrbit>,
}

#[derive(Debug, Clone)]
pub struct NodeOrbit {
    /// Orbit size `q` of this node under `σ ↦ σ^γ`.
    pub orbit_size: u64,
    /// `p^ℓ = |T| / q`, the order of the stabilizer of `σ` in `⟨γ⟩`.
    pub stabilizer_order: u64,
    /// `conjugates[k]` is the node index of `σ^{γ^k}`, for `k < orbit_size`.
    pub conjugates: Vec<usize>,
}

/// A word over generator indices, each letter possibly inverted.
pub type RelationWord = Vec<(usize, bool)>;

/// `k` repetitions of plain generator `gen`.
pub(crate) fn power(gen: usize, k: u64) -> RelationWord {
    std::iter::repeat_n((gen, false), k as usize).collect()
}

/// A finite group family with a fixed subgroup tower
/// `G_0 = {1} < G_1 < … < G_m = G`.
///
/// Levels are numbered `0..=m`; *step* `i` goes from `G_{i-1}` to `G_i` and
/// carries a transversal of left cosets. All returned orders (element lists,
/// transversals, children, irreducibles) must be deterministic: path indexing
/// and circuit layouts are derived from them. Families are immutable after
/// construction and shared read-only across workers.
pub trait Family: Send + Sync {
    fn spec(&self) -> GroupSpec;
    fn order(&self) -> u64;
    /// Tower length `m`.
    fn num_levels(&self) -> usize;
    fn level_order(&self, level: usize) -> u64;

    fn identity(&self) -> Element;
    fn check_encoding(&self, g: &Element) -> Result<(), GroupError>;
    /// Product with the right factor acting first. Callers validate
    /// encodings; implementations may assume well-formed input.
    fn mul(&self, a: &Element, b: &Element) -> Element;
    fn inverse(&self, g: &Element) -> Element;

    fn contains(&self, level: usize, g: &Element) -> bool;
    /// All elements of `G_level` in a fixed enumeration order.
    fn level_elements(&self, level: usize) -> Vec<Element>;
    /// Left-coset representatives of `G_{level-1}` in `G_level`, identity
    /// first. When the step is split the list must be the powers
    /// `γ^0, γ^1, …` of the transverse generator in order.
    fn transversal(&self, level: usize) -> Vec<Element>;
    /// Strong generating set: `generators() ∩ G_i` generates `G_i`.
    fn generators(&self) -> Vec<Element>;
    /// Whether the transversal of this step is a transverse subgroup.
    fn split_step(&self, level: usize) -> bool;

    fn format_element(&self, g: &Element) -> String;
    fn parse_element(&self, s: &str) -> Result<Element, GroupError>;

    /// Defining relations of the generating set, each side a word over
    /// `(generator index, inverted)` letters. Representation construction
    /// checks every irreducible's images against this list.
    fn defining_relations(&self) -> Vec<(RelationWord, RelationWord)>;

    /// Complete list of inequivalent tower-adapted irreducibles of
    /// `G_level`, in the family's canonical node order.
    fn irreps(&self, level: usize) -> Vec<AdaptedRep>;
    /// Ordered out-edges of node `node` at `level`: indices into the node
    /// list at `level + 1`, repeated per multiplicity.
    fn children(&self, level: usize, node: usize) -> Vec<usize>;
    /// Conjugation-orbit data for step `level`, when the step admits the
    /// orbit-parallel stage (split, cyclic transverse subgroup, conjugation
    /// permuting the nodes below exactly). `None` disables that stage.
    fn orbit_data(&self, level: usize) -> Option<OrbitData>;
}

pub mod cyclic;
pub mod metacyclic;
pub mod symmetric;

/// Prime factors with multiplicity, descending, so towers put the largest
/// prime step at the bottom (`Z_6 > Z_3 > 1`).
pub(crate) fn primes_desc(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        while n.is_multiple_of(d) {
            out.push(d);
            n /= d;
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

pub(crate) fn is_prime_power(n: u64) -> bool {
    n >= 2 && {
        let ps = primes_desc(n);
        ps.iter().all(|&p| p == ps[0])
    }
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
    let mut acc: u64 = 1 % modulus;
    base %= modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % modulus;
        }
        base = base * base % modulus;
        exp >>= 1;
    }
    acc
}
