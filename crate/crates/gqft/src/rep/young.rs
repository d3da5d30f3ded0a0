//! Partitions, standard Young tableaux, and the Young orthogonal form.
//!
//! Tableaux double as growth paths in the Young lattice; enumerating them by
//! walking add-a-box children in the diagram's edge order makes the tableau
//! order coincide with Bratteli path order, which the adapted-basis row
//! indexing depends on.

use crate::linalg::Mat;
use num_complex::Complex64;
use std::collections::HashMap;

/// Partitions of `k`, parts descending, listed in descending lexicographic
/// order (so `(k)` first and `(1,…,1)` last).
pub fn partitions(k: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(remaining: usize, max_part: usize, current: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if remaining == 0 {
            out.push(current.clone());
            return;
        }
        for part in (1..=remaining.min(max_part)).rev() {
            current.push(part as u8);
            rec(remaining - part, part, current, out);
            current.pop();
        }
    }
    rec(k, k, &mut current, &mut out);
    out
}

/// Partitions reachable by adding one box, in descending lexicographic
/// order (add to the first row first).
pub fn add_box_children(lam: &[u8]) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    for r in 0..lam.len() {
        if r == 0 || lam[r - 1] > lam[r] {
            let mut next = lam.to_vec();
            next[r] += 1;
            out.push(next);
        }
    }
    let mut next = lam.to_vec();
    next.push(1);
    out.push(next);
    debug_assert!(out.windows(2).all(|w| w[0] > w[1]), "children must be desc-lex");
    out
}

fn contained_in(mu: &[u8], lam: &[u8]) -> bool {
    mu.len() <= lam.len() && mu.iter().zip(lam).all(|(a, b)| a <= b)
}

/// A standard Young tableau, stored as the box position of each entry:
/// `tab[e] = (row, col)` of entry `e + 1`, 0-based coordinates.
pub type Tableau = Vec<(u8, u8)>;

/// All standard tableaux of shape `lam`, in Bratteli path order: depth-first
/// over add-a-box children restricted to shapes inside `lam`.
pub fn tableaux_in_path_order(lam: &[u8]) -> Vec<Tableau> {
    let mut out = Vec::new();
    let mut positions: Tableau = vec![(0, 0)];
    let start = vec![1u8];
    fn rec(
        shape: &[u8],
        lam: &[u8],
        positions: &mut Tableau,
        out: &mut Vec<Tableau>,
    ) {
        if shape == lam {
            out.push(positions.clone());
            return;
        }
        for child in add_box_children(shape) {
            if !contained_in(&child, lam) {
                continue;
            }
            let row = (0..child.len())
                .find(|&r| child[r] != *shape.get(r).unwrap_or(&0))
                .unwrap();
            positions.push((row as u8, child[row] - 1));
            rec(&child, lam, positions, out);
            positions.pop();
        }
    }
    rec(&start, lam, &mut positions, &mut out);
    out
}

/// Young orthogonal image of the adjacent transposition swapping entries
/// `k` and `k + 1` (1-based), on the span of the given tableaux.
pub fn yor_image(tabs: &[Tableau], k: usize) -> Mat {
    let lookup: HashMap<&Tableau, usize> =
        tabs.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let mut m = Mat::zeros(tabs.len(), tabs.len());
    for (idx, tab) in tabs.iter().enumerate() {
        let (r1, c1) = tab[k - 1];
        let (r2, c2) = tab[k];
        if r1 == r2 {
            m[(idx, idx)] = Complex64::new(1.0, 0.0);
            continue;
        }
        if c1 == c2 {
            m[(idx, idx)] = Complex64::new(-1.0, 0.0);
            continue;
        }
        // Axial distance between the two entries.
        let content = |r: u8, c: u8| c as f64 - r as f64;
        let d = content(r2, c2) - content(r1, c1);
        let mut swapped = tab.clone();
        swapped.swap(k - 1, k);
        let partner = lookup[&swapped];
        m[(idx, idx)] = Complex64::new(1.0 / d, 0.0);
        m[(idx, partner)] = Complex64::new((1.0 - 1.0 / (d * d)).sqrt(), 0.0);
    }
    m
}
