//! Split metacyclic groups `Z_q ⋉ Z_p = ⟨x, t | x^p, t^q, t x t⁻¹ = x^r⟩`
//! with `r^q ≡ 1 (mod p)`. Dihedral groups are the case `q = 2, r = p − 1`.
//!
//! The tower refines the normal cyclic part prime step by prime step and
//! adds the transverse `Z_q` as the top step. Elements are stored in the
//! canonical form `t^a x^b`. Top-level irreducibles follow the usual orbit
//! picture: characters of `Z_p` fall into orbits under conjugation by `t`,
//! each orbit inducing one representation per character of its stabilizer.

use super::{power, primes_desc, Family, NodeOrbit, OrbitData, RelationWord};
use crate::group::{Element, GroupError, GroupSpec};
use crate::linalg::{root_of_unity, Mat};
use crate::rep::{AdaptedRep, IrrepLabel};

pub struct Metacyclic {
    p: u64,
    q: u64,
    r: u64,
    /// `r⁻¹ mod p`; conjugation sends the character `χ_a` to `χ_{a·s}`.
    s: u64,
    /// Chain orders inside the normal part: `1 | … | p`.
    orders: Vec<u64>,
    /// Orbits of `a ↦ a·s (mod p)`, each listed in cycle order from its
    /// smallest member, orbits sorted by smallest member.
    orbits: Vec<Vec<u64>>,
    /// `node_of[a] = (orbit index, cycle position)`.
    node_of: Vec<(usize, usize)>,
}

impl Metacyclic {
    pub fn new(p: u64, q: u64, r: u64) -> Result<Metacyclic, GroupError> {
        if p < 2 || q < 1 {
            return Err(GroupError::Unsupported(
                "metacyclic group needs p >= 2 and q >= 1".into(),
            ));
        }
        let r = r % p;
        if super::pow_mod(r, q, p) != 1 {
            return Err(GroupError::Unsupported(format!(
                "action exponent must satisfy r^q = 1 mod p; got r = {r}, q = {q}, p = {p}"
            )));
        }
        let s = super::pow_mod(r, q - 1, p); // r^{q-1} = r^{-1} mod p
        let mut orders = vec![1u64];
        for f in primes_desc(p) {
            orders.push(orders.last().unwrap() * f);
        }
        let mut orbits: Vec<Vec<u64>> = Vec::new();
        let mut node_of = vec![(usize::MAX, 0usize); p as usize];
        for a in 0..p {
            if node_of[a as usize].0 != usize::MAX {
                continue;
            }
            let mut orbit = vec![a];
            let mut cur = a * s % p;
            while cur != a {
                orbit.push(cur);
                cur = cur * s % p;
            }
            for (pos, &m) in orbit.iter().enumerate() {
                node_of[m as usize] = (orbits.len(), pos);
            }
            orbits.push(orbit);
        }
        Ok(Metacyclic { p, q, r, s, orders, orbits, node_of })
    }

    fn chain_len(&self) -> usize {
        self.orders.len() - 1
    }

    fn parts(&self, g: &Element) -> (u64, u64) {
        match g {
            Element::Meta { t, x } => (*t, *x),
            _ => panic!("metacyclic element expected"),
        }
    }

    fn chain_step_index(&self, level: usize) -> u64 {
        self.orders[level] / self.orders[level - 1]
    }

    fn chain_split(&self, level: usize) -> bool {
        !self.orders[level - 1].is_multiple_of(self.chain_step_index(level))
    }

    /// Ordered children of chain node `b` at chain level `j` (same
    /// convention as the cyclic family).
    fn chain_children(&self, j: usize, b: u64) -> Vec<u64> {
        let o = self.orders[j];
        let p = self.chain_step_index(j + 1);
        let mut kids: Vec<u64> = (0..p).map(|c| b + c * o).collect();
        if self.chain_split(j + 1) {
            kids.sort_by_key(|v| v % p);
        }
        kids
    }

    /// Bratteli path digits of the character `χ_a` down the normal chain.
    fn char_path_digits(&self, a: u64) -> Vec<u8> {
        (1..=self.chain_len())
            .map(|j| {
                let parent = a % self.orders[j - 1];
                let child = a % self.orders[j];
                let e = self
                    .chain_children(j - 1, parent)
                    .iter()
                    .position(|&k| k == child)
                    .expect("restriction is a child");
                e as u8 + 1
            })
            .collect()
    }

    /// Rows of an induced representation come in path order: orbit members
    /// sorted by their chain path digits. Returns `rows[r] = cycle position`.
    fn row_cycle_positions(&self, orbit: &[u64]) -> Vec<usize> {
        let mut rows: Vec<usize> = (0..orbit.len()).collect();
        rows.sort_by_key(|&i| self.char_path_digits(orbit[i]));
        rows
    }

    fn top_labels(&self) -> Vec<IrrepLabel> {
        let mut out = Vec::new();
        for orbit in &self.orbits {
            let stab = self.q / orbit.len() as u64;
            for b in 0..stab {
                out.push(IrrepLabel::Induced { orbit_rep: orbit[0], stab_char: b });
            }
        }
        out
    }
}

impl Family for Metacyclic {
    fn spec(&self) -> GroupSpec {
        GroupSpec::Metacyclic { p: self.p, q: self.q, r: self.r }
    }

    fn order(&self) -> u64 {
        self.p * self.q
    }

    fn num_levels(&self) -> usize {
        self.chain_len() + 1
    }

    fn level_order(&self, level: usize) -> u64 {
        if level <= self.chain_len() {
            self.orders[level]
        } else {
            self.p * self.q
        }
    }

    fn identity(&self) -> Element {
        Element::Meta { t: 0, x: 0 }
    }

    fn check_encoding(&self, g: &Element) -> Result<(), GroupError> {
        match g {
            Element::Meta { t, x } if *t < self.q && *x < self.p => Ok(()),
            Element::Meta { t, x } => Err(GroupError::Encoding(format!(
                "t^{t} x^{x} out of range for Z_{} ⋉ Z_{}",
                self.q, self.p
            ))),
            _ => Err(GroupError::Encoding("expected a metacyclic element".into())),
        }
    }

    fn mul(&self, a: &Element, b: &Element) -> Element {
        // x^c t^d = t^d x^{c s^d}, so (t^a x^b)(t^c x^d) = t^{a+c} x^{b s^c + d}.
        let (t1, x1) = self.parts(a);
        let (t2, x2) = self.parts(b);
        Element::Meta {
            t: (t1 + t2) % self.q,
            x: (x1 * super::pow_mod(self.s, t2, self.p) + x2) % self.p,
        }
    }

    fn inverse(&self, g: &Element) -> Element {
        let (t, x) = self.parts(g);
        Element::Meta {
            t: (self.q - t) % self.q,
            x: (self.p - x * super::pow_mod(self.r, t, self.p) % self.p) % self.p,
        }
    }

    fn contains(&self, level: usize, g: &Element) -> bool {
        let (t, x) = self.parts(g);
        if level > self.chain_len() {
            return true;
        }
        t == 0 && x % (self.p / self.orders[level]) == 0
    }

    fn level_elements(&self, level: usize) -> Vec<Element> {
        if level <= self.chain_len() {
            let step = self.p / self.orders[level];
            (0..self.orders[level])
                .map(|k| Element::Meta { t: 0, x: k * step })
                .collect()
        } else {
            let mut out = Vec::new();
            for t in 0..self.q {
                for x in 0..self.p {
                    out.push(Element::Meta { t, x });
                }
            }
            out
        }
    }

    fn transversal(&self, level: usize) -> Vec<Element> {
        if level > self.chain_len() {
            return (0..self.q).map(|k| Element::Meta { t: k, x: 0 }).collect();
        }
        let p = self.chain_step_index(level);
        let gamma = if self.chain_split(level) {
            self.p / p
        } else {
            self.p / self.orders[level]
        };
        (0..p)
            .map(|k| Element::Meta { t: 0, x: k * gamma % self.p })
            .collect()
    }

    fn generators(&self) -> Vec<Element> {
        let mut gens: Vec<Element> = (1..=self.chain_len())
            .map(|j| Element::Meta { t: 0, x: self.p / self.orders[j] })
            .collect();
        if self.q > 1 {
            gens.push(Element::Meta { t: 1, x: 0 });
        }
        gens
    }

    fn split_step(&self, level: usize) -> bool {
        level > self.chain_len() || self.chain_split(level)
    }

    fn format_element(&self, g: &Element) -> String {
        let (t, x) = self.parts(g);
        let mut parts = Vec::new();
        match t {
            0 => {}
            1 => parts.push("t".to_string()),
            _ => parts.push(format!("t^{t}")),
        }
        match x {
            0 => {}
            1 => parts.push("x".to_string()),
            _ => parts.push(format!("x^{x}")),
        }
        if parts.is_empty() {
            "e".to_string()
        } else {
            parts.join(" ")
        }
    }

    fn parse_element(&self, s: &str) -> Result<Element, GroupError> {
        let s = s.trim();
        if s == "e" {
            return Ok(self.identity());
        }
        let (mut t, mut x) = (None, None);
        for tok in s.split_whitespace() {
            let (name, exp) = match tok.split_once('^') {
                Some((n, e)) => {
                    let e: u64 = e.parse().map_err(|_| {
                        GroupError::Encoding(format!("bad exponent in {tok:?}"))
                    })?;
                    (n, e)
                }
                None => (tok, 1),
            };
            let slot = match name {
                "t" => &mut t,
                "x" => &mut x,
                _ => return Err(GroupError::Encoding(format!("bad factor {tok:?}"))),
            };
            if slot.replace(exp).is_some() {
                return Err(GroupError::Encoding(format!("repeated factor in {s:?}")));
            }
        }
        let el = Element::Meta { t: t.unwrap_or(0), x: x.unwrap_or(0) };
        self.check_encoding(&el)?;
        Ok(el)
    }

    fn defining_relations(&self) -> Vec<(RelationWord, RelationWord)> {
        let c = self.chain_len();
        let mut out = Vec::new();
        for j in 1..=c {
            let p = self.chain_step_index(j);
            let rhs = if j == 1 { vec![] } else { vec![(j - 2, false)] };
            out.push((power(j - 1, p), rhs));
            for i in 0..j - 1 {
                out.push((
                    vec![(j - 1, false), (i, false)],
                    vec![(i, false), (j - 1, false)],
                ));
            }
        }
        if self.q > 1 {
            let tau = c;
            out.push((power(tau, self.q), vec![]));
            // t x_j t^{-1} = x_j^r, with r reduced mod the factor's order
            for j in 1..=c {
                out.push((
                    vec![(tau, false), (j - 1, false), (tau, true)],
                    power(j - 1, self.r % self.orders[j]),
                ));
            }
        }
        out
    }

    fn irreps(&self, level: usize) -> Vec<AdaptedRep> {
        if level <= self.chain_len() {
            let o = self.orders[level];
            return (0..o)
                .map(|b| {
                    let images = (0..level)
                        .map(|k| {
                            let exp = (b * (o / self.orders[k + 1])) as i64;
                            (k, Mat::from_rows(vec![vec![root_of_unity(o, exp)]]))
                        })
                        .collect();
                    AdaptedRep { level, label: IrrepLabel::Char(b), dim: 1, images }
                })
                .collect();
        }

        // Top level: induced representations, realized directly on rows
        // indexed by orbit members in path order. In cycle order the image
        // of t is the orbit cycle with a uniform ω_q^b phase; x acts
        // diagonally by each member's character.
        let mut out = Vec::new();
        let tau_gen = self.chain_len(); // global generator index of t
        for orbit in &self.orbits {
            let q_o = orbit.len();
            let stab = self.q / q_o as u64;
            let rows = self.row_cycle_positions(orbit);
            for b in 0..stab {
                let mut images = Vec::new();
                for k in 0..self.chain_len() {
                    let step = self.p / self.orders[k + 1];
                    let mut m = Mat::zeros(q_o, q_o);
                    for (r, &i) in rows.iter().enumerate() {
                        m[(r, r)] = root_of_unity(self.p, (orbit[i] * step) as i64);
                    }
                    images.push((k, m));
                }
                if self.q > 1 {
                    let mut m = Mat::zeros(q_o, q_o);
                    let phase = root_of_unity(self.q, b as i64);
                    for (r1, &i1) in rows.iter().enumerate() {
                        for (r2, &i2) in rows.iter().enumerate() {
                            if i1 == (i2 + 1) % q_o {
                                m[(r1, r2)] = phase;
                            }
                        }
                    }
                    images.push((tau_gen, m));
                }
                out.push(AdaptedRep {
                    level,
                    label: IrrepLabel::Induced { orbit_rep: orbit[0], stab_char: b },
                    dim: q_o,
                    images,
                });
            }
        }
        out
    }

    fn children(&self, level: usize, node: usize) -> Vec<usize> {
        if level < self.chain_len() {
            return self
                .chain_children(level, node as u64)
                .into_iter()
                .map(|b| b as usize)
                .collect();
        }
        // Characters of the normal part embed in the representations
        // induced from their orbit, one edge per stabilizer character.
        let labels = self.top_labels();
        let (orbit_idx, _) = self.node_of[node];
        let rep = self.orbits[orbit_idx][0];
        let stab = self.q / self.orbits[orbit_idx].len() as u64;
        (0..stab)
            .map(|b| {
                labels
                    .iter()
                    .position(|l| {
                        matches!(l, IrrepLabel::Induced { orbit_rep, stab_char }
                            if *orbit_rep == rep && *stab_char == b)
                    })
                    .expect("induced label exists")
            })
            .collect()
    }

    fn orbit_data(&self, level: usize) -> Option<OrbitData> {
        if level <= self.chain_len() {
            if !self.chain_split(level) {
                return None;
            }
            let p = self.chain_step_index(level);
            let per_node = (0..self.orders[level - 1])
                .map(|b| NodeOrbit {
                    orbit_size: 1,
                    stabilizer_order: p,
                    conjugates: vec![b as usize],
                })
                .collect();
            return Some(OrbitData { gamma_order: p, per_node });
        }
        let per_node = (0..self.p)
            .map(|a| {
                let (orbit_idx, _) = self.node_of[a as usize];
                let q_o = self.orbits[orbit_idx].len();
                let conjugates = (0..q_o)
                    .map(|k| {
                        let mut v = a;
                        for _ in 0..k {
                            v = v * self.s % self.p;
                        }
                        v as usize
                    })
                    .collect();
                NodeOrbit {
                    orbit_size: q_o as u64,
                    stabilizer_order: self.q / q_o as u64,
                    conjugates,
                }
            })
            .collect();
        Some(OrbitData { gamma_order: self.q, per_node })
    }
}
