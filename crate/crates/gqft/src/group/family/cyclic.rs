//! Cyclic groups `Z_n` with the prime-step tower `Z_n > … > Z_{p} > 1`,
//! largest primes at the bottom (so `Z_6 > Z_3 > 1`, and `Z_{2^k}` descends
//! one factor of two per step).

use super::{power, primes_desc, Family, NodeOrbit, OrbitData, RelationWord};
use crate::group::{Element, GroupError, GroupSpec};
use crate::linalg::{root_of_unity, Mat};
use crate::rep::{AdaptedRep, IrrepLabel};

pub struct Cyclic {
    n: u64,
    /// Level orders `o_0 = 1 | o_1 | … | o_m = n`.
    orders: Vec<u64>,
}

impl Cyclic {
    pub fn new(n: u64) -> Result<Cyclic, GroupError> {
        if n == 0 {
            return Err(GroupError::Unsupported("cyclic group needs n >= 1".into()));
        }
        let mut orders = vec![1u64];
        for p in primes_desc(n) {
            orders.push(orders.last().unwrap() * p);
        }
        Ok(Cyclic { n, orders })
    }

    /// Index `p_i = [G_i : G_{i-1}]` of step `level`.
    fn step_index(&self, level: usize) -> u64 {
        self.orders[level] / self.orders[level - 1]
    }

    fn residue(&self, g: &Element) -> u64 {
        match g {
            Element::Cyclic(v) => *v,
            _ => panic!("cyclic element expected"),
        }
    }
}

impl Family for Cyclic {
    fn spec(&self) -> GroupSpec {
        GroupSpec::Cyclic { n: self.n }
    }

    fn order(&self) -> u64 {
        self.n
    }

    fn num_levels(&self) -> usize {
        self.orders.len() - 1
    }

    fn level_order(&self, level: usize) -> u64 {
        self.orders[level]
    }

    fn identity(&self) -> Element {
        Element::Cyclic(0)
    }

    fn check_encoding(&self, g: &Element) -> Result<(), GroupError> {
        match g {
            Element::Cyclic(v) if *v < self.n => Ok(()),
            Element::Cyclic(v) => Err(GroupError::Encoding(format!(
                "residue {v} out of range for Z_{}",
                self.n
            ))),
            _ => Err(GroupError::Encoding("expected a cyclic element".into())),
        }
    }

    fn mul(&self, a: &Element, b: &Element) -> Element {
        Element::Cyclic((self.residue(a) + self.residue(b)) % self.n)
    }

    fn inverse(&self, g: &Element) -> Element {
        Element::Cyclic((self.n - self.residue(g)) % self.n)
    }

    fn contains(&self, level: usize, g: &Element) -> bool {
        self.residue(g).is_multiple_of(self.n / self.orders[level])
    }

    fn level_elements(&self, level: usize) -> Vec<Element> {
        let step = self.n / self.orders[level];
        (0..self.orders[level]).map(|k| Element::Cyclic(k * step)).collect()
    }

    fn transversal(&self, level: usize) -> Vec<Element> {
        let p = self.step_index(level);
        let gamma = if self.split_step(level) {
            self.n / p // generates the transverse subgroup of order p
        } else {
            self.n / self.orders[level]
        };
        (0..p).map(|k| Element::Cyclic(k * gamma % self.n)).collect()
    }

    fn generators(&self) -> Vec<Element> {
        (1..self.orders.len())
            .map(|i| Element::Cyclic(self.n / self.orders[i]))
            .collect()
    }

    fn split_step(&self, level: usize) -> bool {
        !self.orders[level - 1].is_multiple_of(self.step_index(level))
    }

    fn format_element(&self, g: &Element) -> String {
        self.residue(g).to_string()
    }

    fn parse_element(&self, s: &str) -> Result<Element, GroupError> {
        let v: u64 = s
            .trim()
            .parse()
            .map_err(|_| GroupError::Encoding(format!("bad cyclic element {s:?}")))?;
        let el = Element::Cyclic(v);
        self.check_encoding(&el)?;
        Ok(el)
    }

    fn defining_relations(&self) -> Vec<(RelationWord, RelationWord)> {
        let mut out = Vec::new();
        for i in 1..self.orders.len() {
            let p = self.step_index(i);
            let rhs = if i == 1 { vec![] } else { vec![(i - 2, false)] };
            out.push((power(i - 1, p), rhs));
            for j in 0..i - 1 {
                out.push((
                    vec![(i - 1, false), (j, false)],
                    vec![(j, false), (i - 1, false)],
                ));
            }
        }
        out
    }

    fn irreps(&self, level: usize) -> Vec<AdaptedRep> {
        let o = self.orders[level];
        (0..o)
            .map(|b| {
                // χ_b(g_k) where g_k generates G_k: g_k = g_level^(o_level/o_k).
                let images = (0..level)
                    .map(|k| {
                        let exp = (b * (o / self.orders[k + 1])) as i64;
                        (k, Mat::from_rows(vec![vec![root_of_unity(o, exp)]]))
                    })
                    .collect();
                AdaptedRep {
                    level,
                    label: IrrepLabel::Char(b),
                    dim: 1,
                    images,
                }
            })
            .collect()
    }

    fn children(&self, level: usize, node: usize) -> Vec<usize> {
        let o = self.orders[level];
        let p = self.step_index(level + 1);
        let mut kids: Vec<u64> = (0..p).map(|c| node as u64 + c * o).collect();
        if self.split_step(level + 1) {
            // Order by the character of the transverse subgroup each child
            // restricts to; keeps the orbit-parallel stage phase-free.
            kids.sort_by_key(|b| b % p);
        }
        kids.into_iter().map(|b| b as usize).collect()
    }

    fn orbit_data(&self, level: usize) -> Option<OrbitData> {
        if !self.split_step(level) {
            return None;
        }
        let p = self.step_index(level);
        let per_node = (0..self.orders[level - 1])
            .map(|b| NodeOrbit {
                orbit_size: 1,
                stabilizer_order: p,
                conjugates: vec![b as usize],
            })
            .collect();
        Some(OrbitData { gamma_order: p, per_node })
    }
}
