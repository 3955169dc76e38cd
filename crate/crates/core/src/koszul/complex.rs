use std::collections::HashMap;

use super::ring::QuotientRing;
use crate::exactalg::{ExactMatrix, Field, SparseVec};

/// Subsets of `{0..n}` grouped by size, each group in lexicographic order
/// of the sorted index lists. Subsets are bitmasks.
#[derive(Clone, Debug)]
pub struct Subsets {
    n: usize,
    by_size: Vec<Vec<u32>>,
    rank: Vec<HashMap<u32, usize>>,
}

impl Subsets {
    pub fn new(n: usize) -> Self {
        assert!(n <= 31, "at most 31 variables supported");
        let mut by_size = vec![Vec::new(); n + 1];
        for (p, group) in by_size.iter_mut().enumerate() {
            let mut combo: Vec<usize> = (0..p).collect();
            loop {
                group.push(combo.iter().fold(0u32, |m, &i| m | (1 << i)));
                // next combination in lex order
                let Some(k) = (0..p).rev().find(|&k| combo[k] < n - p + k) else {
                    break;
                };
                combo[k] += 1;
                for j in k + 1..p {
                    combo[j] = combo[j - 1] + 1;
                }
            }
        }
        let rank = by_size
            .iter()
            .map(|v| v.iter().enumerate().map(|(k, &m)| (m, k)).collect())
            .collect();
        Subsets { n, by_size, rank }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn count(&self, p: usize) -> usize {
        self.by_size.get(p).map_or(0, Vec::len)
    }

    pub fn mask(&self, p: usize, k: usize) -> u32 {
        self.by_size[p][k]
    }

    pub fn rank(&self, mask: u32) -> usize {
        self.rank[mask.count_ones() as usize][&mask]
    }
}

pub fn mask_indices(mask: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |i| mask & (1 << i) != 0)
}

/// Sign of `e_S ∧ e_T = ±e_{S∪T}` for disjoint `S`, `T`.
pub fn wedge_sign(s: u32, t: u32) -> bool {
    debug_assert_eq!(s & t, 0);
    let mut inversions = 0;
    for j in mask_indices(t) {
        inversions += (s >> (j + 1)).count_ones();
    }
    inversions % 2 == 1
}

/// Dimension of `K_{p,q} = Λ^p(k^n) ⊗ A_{q-p}`.
pub fn cell_dim<F: Field>(ring: &QuotientRing<F>, subsets: &Subsets, p: usize, q: usize) -> usize {
    if p > q || p > subsets.n() {
        return 0;
    }
    subsets.count(p) * ring.dim(q - p)
}

/// Image of the basis element with global index `g` of `K_{p,q}` under the
/// Koszul differential, as `(global index in K_{p-1,q}, coefficient)` pairs:
/// `d(e_S ⊗ m) = Σ_k (-1)^k e_{S∖s_k} ⊗ x_{s_k} m`.
pub fn boundary_of<F: Field>(
    ring: &QuotientRing<F>,
    subsets: &Subsets,
    p: usize,
    q: usize,
    g: usize,
) -> Vec<(usize, F)> {
    let d = q - p;
    let da = ring.dim(d);
    let next = ring.dim(d + 1);
    let mask = subsets.mask(p, g / da);
    let m = g % da;
    let mut out = Vec::new();
    for (k, i) in mask_indices(mask).enumerate() {
        let face = subsets.rank(mask & !(1 << i));
        for (t, c) in ring.times_var(d, m, i).entries() {
            let c = if k % 2 == 1 { -c.clone() } else { c.clone() };
            out.push((face * next + t, c));
        }
    }
    out
}

/// The full differential `d_p : K_{p,q} -> K_{p-1,q}` in the cell bases
/// (subsets in lex order, then standard monomials from largest to smallest).
/// Requires `ring.top() >= q`.
pub fn differential_matrix<F: Field>(
    ring: &QuotientRing<F>,
    subsets: &Subsets,
    p: usize,
    q: usize,
) -> ExactMatrix<F> {
    let cols = cell_dim(ring, subsets, p, q);
    if p == 0 {
        return ExactMatrix::zeros(0, cols, ring.mode());
    }
    assert!(
        ring.top() >= q,
        "ring materialized only through degree {}",
        ring.top()
    );
    let rows = cell_dim(ring, subsets, p - 1, q);
    let columns: Vec<SparseVec<F>> = (0..cols)
        .map(|g| SparseVec::from_unsorted(boundary_of(ring, subsets, p, q, g)))
        .collect();
    ExactMatrix::from_columns(rows, &columns, ring.mode())
}
