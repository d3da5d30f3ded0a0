//! Symmetric groups `S_n` with the tower `S_n > S_{n-1} > … > S_1 = 1`
//! (where `S_k` fixes all points beyond the first `k`), adjacent
//! transpositions as the strong generating set, and Young orthogonal form
//! for the adapted representations.

use super::{Family, OrbitData, RelationWord};
use crate::group::perm::Perm;
use crate::group::{Element, GroupError, GroupSpec};
use crate::rep::young;
use crate::rep::{AdaptedRep, IrrepLabel};

pub struct Symmetric {
    n: u32,
}

impl Symmetric {
    pub fn new(n: u32) -> Result<Symmetric, GroupError> {
        if n == 0 {
            return Err(GroupError::Unsupported("symmetric group needs n >= 1".into()));
        }
        if n > 8 {
            return Err(GroupError::Unsupported(
                "symmetric groups beyond S_8 exceed desk scale".into(),
            ));
        }
        Ok(Symmetric { n })
    }

    fn perm<'a>(&self, g: &'a Element) -> &'a Perm {
        match g {
            Element::Perm(p) => p,
            _ => panic!("permutation element expected"),
        }
    }
}

impl Family for Symmetric {
    fn spec(&self) -> GroupSpec {
        GroupSpec::Symmetric { n: self.n }
    }

    fn order(&self) -> u64 {
        (1..=self.n as u64).product()
    }

    fn num_levels(&self) -> usize {
        self.n as usize - 1
    }

    fn level_order(&self, level: usize) -> u64 {
        (1..=level as u64 + 1).product()
    }

    fn identity(&self) -> Element {
        Element::Perm(Perm::identity(self.n as usize))
    }

    fn check_encoding(&self, g: &Element) -> Result<(), GroupError> {
        match g {
            Element::Perm(p) if p.degree() == self.n as usize && p.is_valid() => Ok(()),
            Element::Perm(_) => Err(GroupError::Encoding(format!(
                "expected a permutation of degree {}",
                self.n
            ))),
            _ => Err(GroupError::Encoding("expected a permutation element".into())),
        }
    }

    fn mul(&self, a: &Element, b: &Element) -> Element {
        Element::Perm(self.perm(a).compose(self.perm(b)))
    }

    fn inverse(&self, g: &Element) -> Element {
        Element::Perm(self.perm(g).inverse())
    }

    fn contains(&self, level: usize, g: &Element) -> bool {
        self.perm(g).support_bound() <= level + 1
    }

    fn level_elements(&self, level: usize) -> Vec<Element> {
        // All permutations of the first level+1 points, lexicographic by
        // image vector, extended by fixed points to full degree.
        let k = level + 1;
        let mut out = Vec::new();
        let mut current: Vec<u8> = (0..k as u8).collect();
        loop {
            let mut img = current.clone();
            img.extend(k as u8..self.n as u8);
            out.push(Element::Perm(Perm(img)));
            // next lexicographic permutation
            let Some(i) = (0..k.saturating_sub(1)).rev().find(|&i| current[i] < current[i + 1])
            else {
                break;
            };
            let j = (i + 1..k).rev().find(|&j| current[j] > current[i]).unwrap();
            current.swap(i, j);
            current[i + 1..].reverse();
        }
        out
    }

    fn transversal(&self, level: usize) -> Vec<Element> {
        // {e} ∪ {(k, top)}: the representative is determined by where an
        // element sends the step's top point.
        let top = level;
        let mut t = vec![self.identity()];
        t.extend(
            (0..top).map(|k| Element::Perm(Perm::transposition(self.n as usize, k, top))),
        );
        t
    }

    fn generators(&self) -> Vec<Element> {
        (1..self.n as usize)
            .map(|j| Element::Perm(Perm::transposition(self.n as usize, j - 1, j)))
            .collect()
    }

    fn split_step(&self, level: usize) -> bool {
        level == 1 // T_1 = S_2 itself; higher transversals are not subgroups
    }

    fn format_element(&self, g: &Element) -> String {
        self.perm(g).to_cycles()
    }

    fn parse_element(&self, s: &str) -> Result<Element, GroupError> {
        Ok(Element::Perm(Perm::from_cycles(s, self.n as usize)?))
    }

    fn defining_relations(&self) -> Vec<(RelationWord, RelationWord)> {
        let k = self.n as usize - 1;
        let mut out = Vec::new();
        for i in 0..k {
            out.push((vec![(i, false), (i, false)], vec![]));
            for j in i + 1..k {
                if j == i + 1 {
                    // braid relation between adjacent transpositions
                    out.push((
                        vec![(i, false), (j, false), (i, false)],
                        vec![(j, false), (i, false), (j, false)],
                    ));
                } else {
                    out.push((
                        vec![(i, false), (j, false)],
                        vec![(j, false), (i, false)],
                    ));
                }
            }
        }
        out
    }

    fn irreps(&self, level: usize) -> Vec<AdaptedRep> {
        young::partitions(level + 1)
            .into_iter()
            .map(|lam| {
                let tabs = young::tableaux_in_path_order(&lam);
                let images = (1..=level)
                    .map(|j| (j - 1, young::yor_image(&tabs, j)))
                    .collect();
                AdaptedRep {
                    level,
                    dim: tabs.len(),
                    label: IrrepLabel::Partition(lam),
                    images,
                }
            })
            .collect()
    }

    fn children(&self, level: usize, node: usize) -> Vec<usize> {
        let here = young::partitions(level + 1);
        let above = young::partitions(level + 2);
        young::add_box_children(&here[node])
            .iter()
            .map(|c| above.iter().position(|p| p == c).expect("child is a partition"))
            .collect()
    }

    fn orbit_data(&self, _level: usize) -> Option<OrbitData> {
        None // coset-serial stages only
    }
}
