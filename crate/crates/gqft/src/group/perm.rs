//! Permutations as explicit image maps, with cycle-notation parsing and
//! printing. Points are 0-based internally and 1-based in cycle notation.

use super::GroupError;

/// A permutation of `{0, .., degree-1}` stored as its image vector:
/// `p.0[i]` is where point `i` goes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(pub Vec<u8>);

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm((0..degree as u8).collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, point: usize) -> usize {
        self.0[point] as usize
    }

    /// Transposition of `a` and `b`.
    pub fn transposition(degree: usize, a: usize, b: usize) -> Self {
        let mut img = Perm::identity(degree);
        img.0.swap(a, b);
        img
    }

    /// Group product with the right factor acting first:
    /// `(self * other)(x) = self(other(x))`.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.degree(), other.degree());
        Perm(other.0.iter().map(|&x| self.0[x as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u8; self.degree()];
        for (i, &img) in self.0.iter().enumerate() {
            inv[img as usize] = i as u8;
        }
        Perm(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &img)| i == img as usize)
    }

    /// Largest moved point plus one; 0 for the identity.
    pub fn support_bound(&self) -> usize {
        (0..self.degree())
            .rev()
            .find(|&i| self.apply(i) != i)
            .map_or(0, |i| i + 1)
    }

    pub fn is_valid(&self) -> bool {
        let mut seen = vec![false; self.degree()];
        for &img in &self.0 {
            let i = img as usize;
            if i >= self.degree() || seen[i] {
                return false;
            }
            seen[i] = true;
        }
        true
    }

    /// Disjoint-cycle form, e.g. `(1 2)(3 4)`; `e` for the identity.
    pub fn to_cycles(&self) -> String {
        let mut out = String::new();
        let mut seen = vec![false; self.degree()];
        for start in 0..self.degree() {
            if seen[start] || self.apply(start) == start {
                seen[start] = true;
                continue;
            }
            let mut cyc = vec![start];
            seen[start] = true;
            let mut cur = self.apply(start);
            while cur != start {
                seen[cur] = true;
                cyc.push(cur);
                cur = self.apply(cur);
            }
            out.push('(');
            out.push_str(
                &cyc.iter().map(|p| (p + 1).to_string()).collect::<Vec<_>>().join(" "),
            );
            out.push(')');
        }
        if out.is_empty() {
            out.push('e');
        }
        out
    }

    /// Parses cycle notation (`"(1 2 3)(4 5)"`, `"e"`, or `"()"`) into a
    /// permutation of the given degree.
    pub fn from_cycles(s: &str, degree: usize) -> Result<Perm, GroupError> {
        let s = s.trim();
        let mut perm = Perm::identity(degree);
        if s == "e" || s == "()" || s.is_empty() {
            return Ok(perm);
        }
        let bad = || GroupError::Encoding(format!("bad cycle notation: {s:?}"));
        let mut rest = s;
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        while !rest.is_empty() {
            let open = rest.find('(').ok_or_else(bad)?;
            if !rest[..open].trim().is_empty() {
                return Err(bad());
            }
            let close = rest.find(')').ok_or_else(bad)?;
            let body = &rest[open + 1..close];
            let mut cyc = Vec::new();
            for tok in body.split([' ', ',']).filter(|t| !t.is_empty()) {
                let p: usize = tok.parse().map_err(|_| bad())?;
                if p == 0 || p > degree {
                    return Err(GroupError::Encoding(format!(
                        "point {p} out of range 1..={degree}"
                    )));
                }
                cyc.push(p - 1);
            }
            if cyc.len() < 2 {
                return Err(bad());
            }
            cycles.push(cyc);
            rest = rest[close + 1..].trim_start();
        }
        let mut used = vec![false; degree];
        for cyc in cycles {
            for &p in &cyc {
                if used[p] {
                    return Err(GroupError::Encoding(format!(
                        "point {} appears in two cycles",
                        p + 1
                    )));
                }
                used[p] = true;
            }
            for w in cyc.windows(2) {
                perm.0[w[0]] = w[1] as u8;
            }
            perm.0[*cyc.last().unwrap()] = cyc[0] as u8;
        }
        Ok(perm)
    }
}
