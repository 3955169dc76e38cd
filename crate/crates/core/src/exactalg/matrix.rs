//! Sparse exact linear algebra: vectors, triplet matrices, reduced row
//! echelon forms, rank and kernel.

use super::{Field, FieldMode};
use crate::error::{Error, Result};

/// A sparse vector: strictly increasing indices, nonzero values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseVec<F: Field> {
    entries: Vec<(usize, F)>,
}

impl<F: Field> Default for SparseVec<F> {
    fn default() -> Self {
        SparseVec {
            entries: Vec::new(),
        }
    }
}

impl<F: Field> SparseVec<F> {
    pub fn new() -> Self {
        Self::default()
    }

    /// Sorts, merges duplicates and drops zeros.
    pub fn from_unsorted(mut entries: Vec<(usize, F)>) -> Self {
        entries.sort_by_key(|e| e.0);
        let mut out: Vec<(usize, F)> = Vec::with_capacity(entries.len());
        for (i, v) in entries {
            match out.last_mut() {
                Some((j, w)) if *j == i => *w = w.clone() + v,
                _ => out.push((i, v)),
            }
        }
        out.retain(|(_, v)| !v.is_zero());
        SparseVec { entries: out }
    }

    pub fn unit(i: usize, one: F) -> Self {
        SparseVec {
            entries: vec![(i, one)],
        }
    }

    pub fn entries(&self) -> &[(usize, F)] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<(usize, F)> {
        self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn lead(&self) -> Option<&(usize, F)> {
        self.entries.first()
    }

    pub fn get(&self, i: usize) -> Option<&F> {
        self.entries
            .binary_search_by_key(&i, |e| e.0)
            .ok()
            .map(|k| &self.entries[k].1)
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return SparseVec::new();
        }
        SparseVec {
            entries: self
                .entries
                .iter()
                .map(|(i, v)| (*i, v.clone() * c.clone()))
                .collect(),
        }
    }

    /// `a*x + b*y`.
    pub fn combine(a: &F, x: &Self, b: &F, y: &Self) -> Self {
        let mut out = Vec::with_capacity(x.entries.len() + y.entries.len());
        let (mut i, mut j) = (0, 0);
        let (xs, ys) = (&x.entries, &y.entries);
        while i < xs.len() || j < ys.len() {
            let take_x = j >= ys.len() || (i < xs.len() && xs[i].0 < ys[j].0);
            let take_y = i >= xs.len() || (j < ys.len() && ys[j].0 < xs[i].0);
            if take_x {
                let v = a.clone() * xs[i].1.clone();
                if !v.is_zero() {
                    out.push((xs[i].0, v));
                }
                i += 1;
            } else if take_y {
                let v = b.clone() * ys[j].1.clone();
                if !v.is_zero() {
                    out.push((ys[j].0, v));
                }
                j += 1;
            } else {
                let v = a.clone() * xs[i].1.clone() + b.clone() * ys[j].1.clone();
                if !v.is_zero() {
                    out.push((xs[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
        SparseVec { entries: out }
    }

    fn canonicalize(&mut self) {
        let mut vals: Vec<F> = self.entries.iter().map(|e| e.1.clone()).collect();
        F::canonical_scale(&mut vals);
        for (e, v) in self.entries.iter_mut().zip(vals) {
            e.1 = v;
        }
    }

    fn make_monic(&mut self) {
        let Some((_, lead)) = self.entries.first() else {
            return;
        };
        if lead.is_one() {
            return;
        }
        let inv = lead.inv().expect("nonzero lead");
        for e in self.entries.iter_mut() {
            e.1 = e.1.clone() * inv.clone();
        }
    }

    /// Dot product with a dense vector.
    pub fn dot_dense(&self, dense: &[F], zero: &F) -> F {
        self.entries.iter().fold(zero.clone(), |acc, (i, v)| {
            acc + v.clone() * dense[*i].clone()
        })
    }
}

/// Incrementally built row echelon form over an exact field.
///
/// Forward elimination is fraction-free: pivot rows are kept in the field's
/// canonical scaling (primitive integer rows over Q, monic rows mod p) and a
/// new row `r` is reduced as `lead(p)*r - r[c]*p`.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    ncols: usize,
    rows: Vec<SparseVec<F>>,
    pivot_row: Vec<Option<usize>>,
    reduced: bool,
}

impl<F: Field> Echelon<F> {
    pub fn new(ncols: usize) -> Self {
        Echelon {
            ncols,
            rows: Vec::new(),
            pivot_row: vec![None; ncols],
            reduced: true,
        }
    }

    /// Reduced row echelon form of the span of `vectors`.
    pub fn rref_of(ncols: usize, vectors: impl IntoIterator<Item = SparseVec<F>>) -> Self {
        let mut e = Echelon::new(ncols);
        for v in vectors {
            e.insert(v);
        }
        e.into_rref()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec<F>] {
        &self.rows
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.lead().unwrap().0).collect()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_row[col].is_some()
    }

    /// Adds a vector to the row space. Returns `true` when it was independent.
    pub fn insert(&mut self, mut v: SparseVec<F>) -> bool {
        loop {
            let Some((c, vc)) = v.lead().cloned() else {
                return false;
            };
            debug_assert!(c < self.ncols);
            match self.pivot_row[c] {
                Some(r) => {
                    let p = &self.rows[r];
                    let plead = p.lead().unwrap().1.clone();
                    v = SparseVec::combine(&plead, &v, &(-vc), p);
                    v.canonicalize();
                }
                None => {
                    v.canonicalize();
                    self.pivot_row[c] = Some(self.rows.len());
                    self.rows.push(v);
                    self.reduced = false;
                    return true;
                }
            }
        }
    }

    /// Back-substitutes to reduced row echelon form with unit pivots and rows
    /// sorted by pivot column. RREF is unique, so the result does not depend
    /// on insertion order.
    pub fn into_rref(mut self) -> Self {
        if self.reduced {
            return self;
        }
        let mut rows = std::mem::take(&mut self.rows);
        rows.sort_by_key(|r| std::cmp::Reverse(r.lead().unwrap().0));
        let mut pivot_row = vec![None; self.ncols];
        let mut done: Vec<SparseVec<F>> = Vec::with_capacity(rows.len());
        for mut r in rows {
            let own = r.lead().unwrap().0;
            let targets: Vec<(usize, F)> = r
                .entries()
                .iter()
                .filter(|(c, _)| *c != own && pivot_row[*c].is_some())
                .cloned()
                .collect();
            let one = F::one(r.lead().unwrap().1.mode());
            for (c, coeff) in targets {
                let p: &SparseVec<F> = &done[pivot_row[c].unwrap()];
                r = SparseVec::combine(&one, &r, &(-coeff), p);
            }
            r.make_monic();
            pivot_row[own] = Some(done.len());
            done.push(r);
        }
        done.reverse();
        for (k, r) in done.iter().enumerate() {
            pivot_row[r.lead().unwrap().0] = Some(k);
        }
        self.rows = done;
        self.pivot_row = pivot_row;
        self.reduced = true;
        self
    }

    /// Reduces `v` modulo the row space (requires RREF). The result has zero
    /// entries in every pivot column.
    pub fn reduce(&self, v: &SparseVec<F>) -> SparseVec<F> {
        assert!(self.reduced, "reduce requires reduced row echelon form");
        let targets: Vec<(usize, F)> = v
            .entries()
            .iter()
            .filter(|(c, _)| self.pivot_row[*c].is_some())
            .cloned()
            .collect();
        let mut out = v.clone();
        if targets.is_empty() {
            return out;
        }
        let one = F::one(targets[0].1.mode());
        for (c, coeff) in targets {
            out = SparseVec::combine(
                &one,
                &out,
                &(-coeff),
                &self.rows[self.pivot_row[c].unwrap()],
            );
        }
        out
    }

    /// Coordinates of `v` in terms of the RREF rows, if `v` lies in the row
    /// space.
    pub fn coordinates(&self, v: &SparseVec<F>) -> Option<Vec<(usize, F)>> {
        assert!(self.reduced);
        let coords: Vec<(usize, F)> = v
            .entries()
            .iter()
            .filter_map(|(c, x)| self.pivot_row[*c].map(|r| (r, x.clone())))
            .collect();
        self.reduce(v).is_zero().then_some(coords)
    }
}

/// Sparse matrix in triplet form, row-major sorted, no zero entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix<F: Field> {
    rows: usize,
    cols: usize,
    mode: FieldMode,
    entries: Vec<(usize, usize, F)>,
}

impl<F: Field> ExactMatrix<F> {
    pub fn zeros(rows: usize, cols: usize, mode: FieldMode) -> Self {
        ExactMatrix {
            rows,
            cols,
            mode,
            entries: Vec::new(),
        }
    }

    pub fn from_triplets(
        rows: usize,
        cols: usize,
        mode: FieldMode,
        mut entries: Vec<(usize, usize, F)>,
    ) -> Self {
        entries.sort_by_key(|e| (e.0, e.1));
        let mut out: Vec<(usize, usize, F)> = Vec::with_capacity(entries.len());
        for (r, c, v) in entries {
            assert!(
                r < rows && c < cols,
                "entry ({r},{c}) outside {rows}x{cols}"
            );
            match out.last_mut() {
                Some((r2, c2, w)) if *r2 == r && *c2 == c => *w = w.clone() + v,
                _ => out.push((r, c, v)),
            }
        }
        out.retain(|e| !e.2.is_zero());
        ExactMatrix {
            rows,
            cols,
            mode,
            entries: out,
        }
    }

    pub fn from_dense(rows: &[Vec<F>], mode: FieldMode) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut t = Vec::new();
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), ncols);
            for (j, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    t.push((i, j, v.clone()));
                }
            }
        }
        ExactMatrix::from_triplets(nrows, ncols, mode, t)
    }

    /// Matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(rows: usize, columns: &[SparseVec<F>], mode: FieldMode) -> Self {
        let mut t = Vec::new();
        for (j, col) in columns.iter().enumerate() {
            for (i, v) in col.entries() {
                t.push((*i, j, v.clone()));
            }
        }
        ExactMatrix::from_triplets(rows, columns.len(), mode, t)
    }

    pub fn mode(&self) -> FieldMode {
        self.mode
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[(usize, usize, F)] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, r: usize, c: usize) -> Option<&F> {
        self.entries
            .binary_search_by_key(&(r, c), |e| (e.0, e.1))
            .ok()
            .map(|k| &self.entries[k].2)
    }

    pub fn row_vectors(&self) -> Vec<SparseVec<F>> {
        let mut rows: Vec<Vec<(usize, F)>> = vec![Vec::new(); self.rows];
        for (r, c, v) in &self.entries {
            rows[*r].push((*c, v.clone()));
        }
        rows.into_iter()
            .map(|entries| SparseVec { entries })
            .collect()
    }

    pub fn column_vectors(&self) -> Vec<SparseVec<F>> {
        self.transpose().row_vectors()
    }

    pub fn transpose(&self) -> Self {
        ExactMatrix::from_triplets(
            self.cols,
            self.rows,
            self.mode,
            self.entries
                .iter()
                .map(|(r, c, v)| (*c, *r, v.clone()))
                .collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::InvalidInput(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let other_rows = other.row_vectors();
        let mut t = Vec::new();
        for (r, k, v) in &self.entries {
            for (c, w) in other_rows[*k].entries() {
                t.push((*r, *c, v.clone() * w.clone()));
            }
        }
        Ok(ExactMatrix::from_triplets(
            self.rows, other.cols, self.mode, t,
        ))
    }

    pub fn apply(&self, v: &SparseVec<F>) -> SparseVec<F> {
        let mut t = Vec::new();
        for (r, c, a) in &self.entries {
            if let Some(x) = v.get(*c) {
                t.push((*r, a.clone() * x.clone()));
            }
        }
        SparseVec::from_unsorted(t)
    }

    /// Reinterprets integer entries in another field mode.
    pub fn convert<G: Field>(&self, mode: FieldMode) -> Result<ExactMatrix<G>> {
        let t = self
            .entries
            .iter()
            .map(|(r, c, v)| {
                let z = v
                    .to_integer()
                    .ok_or_else(|| Error::InvalidInput(format!("entry {v} is not an integer")))?;
                Ok((*r, *c, G::from_bigint(&z, mode)))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ExactMatrix::from_triplets(self.rows, self.cols, mode, t))
    }

    pub fn rank(&self) -> usize {
        let mut e = Echelon::new(self.cols);
        for r in self.row_vectors() {
            e.insert(r);
        }
        e.rank()
    }
}

/// Rank and an echelonized kernel basis of `m`.
///
/// The kernel basis is read off the reduced row echelon form: one vector per
/// free column `f`, with a 1 in position `f` and the negated RREF entries in
/// the pivot positions. Panics if `rank + nullity != cols`.
pub fn rank_and_kernel<F: Field>(m: &ExactMatrix<F>) -> (usize, Vec<SparseVec<F>>) {
    let cols = m.ncols();
    let ech = Echelon::rref_of(cols, m.row_vectors());
    let rank = ech.rank();
    let free: Vec<usize> = (0..cols).filter(|&c| !ech.is_pivot(c)).collect();
    let mut slot = vec![usize::MAX; cols];
    for (k, &f) in free.iter().enumerate() {
        slot[f] = k;
    }
    let one = F::one(m.mode());
    let mut kernel: Vec<Vec<(usize, F)>> = free.iter().map(|&f| vec![(f, one.clone())]).collect();
    for row in ech.rows() {
        let pc = row.lead().unwrap().0;
        for (c, v) in row.entries().iter().skip(1) {
            kernel[slot[*c]].push((pc, -v.clone()));
        }
    }
    let kernel: Vec<SparseVec<F>> = kernel.into_iter().map(SparseVec::from_unsorted).collect();
    assert_eq!(rank + kernel.len(), cols, "rank + nullity != cols");
    (rank, kernel)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{FieldMode, Rational, Zp};

    const Q: FieldMode = FieldMode::Rational;

    fn q(v: i64) -> Rational {
        Rational::from_i64(v, Q)
    }

    fn qm(rows: &[&[i64]]) -> ExactMatrix<Rational> {
        ExactMatrix::from_dense(
            &rows
                .iter()
                .map(|r| r.iter().map(|&v| q(v)).collect())
                .collect::<Vec<_>>(),
            Q,
        )
    }

    #[test]
    fn identity_has_trivial_kernel() {
        let (r, k) = rank_and_kernel(&qm(&[&[1, 0], &[0, 1]]));
        assert_eq!(r, 2);
        assert!(k.is_empty());
    }

    #[test]
    fn single_relation() {
        let (r, k) = rank_and_kernel(&qm(&[&[1, 1]]));
        assert_eq!(r, 1);
        assert_eq!(
            k,
            vec![SparseVec::from_unsorted(vec![(0, q(-1)), (1, q(1))])]
        );
    }

    #[test]
    fn zero_map_kernel_is_standard_basis() {
        let (r, k) = rank_and_kernel(&ExactMatrix::<Rational>::zeros(4, 4, Q));
        assert_eq!(r, 0);
        assert_eq!(k.len(), 4);
        for (i, v) in k.iter().enumerate() {
            assert_eq!(v, &SparseVec::unit(i, q(1)));
        }
    }

    #[test]
    fn empty_matrix() {
        let (r, k) = rank_and_kernel(&ExactMatrix::<Rational>::zeros(0, 0, Q));
        assert_eq!((r, k.len()), (0, 0));
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let m = qm(&[&[2, 4, 1, 0], &[1, 2, 3, 5], &[3, 6, 4, 5]]);
        let (r, k) = rank_and_kernel(&m);
        assert_eq!(r, 2);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.apply(v).is_zero());
        }
    }

    #[test]
    fn rref_independent_of_insertion_order() {
        let vs = vec![
            SparseVec::from_unsorted(vec![(0, q(2)), (2, q(3))]),
            SparseVec::from_unsorted(vec![(1, q(1)), (2, q(-1))]),
            SparseVec::from_unsorted(vec![(0, q(1)), (1, q(5))]),
        ];
        let a = Echelon::rref_of(3, vs.clone());
        let b = Echelon::rref_of(3, vs.into_iter().rev());
        assert_eq!(a.rows(), b.rows());
    }

    #[test]
    fn coordinates_in_row_space() {
        let e = Echelon::rref_of(
            3,
            vec![
                SparseVec::from_unsorted(vec![(0, q(1)), (2, q(1))]),
                SparseVec::from_unsorted(vec![(1, q(1))]),
            ],
        );
        let v = SparseVec::from_unsorted(vec![(0, q(2)), (1, q(3)), (2, q(2))]);
        assert_eq!(e.coordinates(&v).unwrap(), vec![(0, q(2)), (1, q(3))]);
        let w = SparseVec::from_unsorted(vec![(2, q(1))]);
        assert!(e.coordinates(&w).is_none());
    }

    #[test]
    fn prime_field_rank() {
        let m: ExactMatrix<Zp> = qm(&[&[1, 2], &[3, 6]])
            .convert(FieldMode::Prime(7))
            .unwrap();
        assert_eq!(m.rank(), 1);
        // 2x2 with determinant 7: full rank over Q, rank 1 mod 7
        let m = qm(&[&[1, 2], &[3, 13]]);
        assert_eq!(m.rank(), 2);
        assert_eq!(m.convert::<Zp>(FieldMode::Prime(7)).unwrap().rank(), 1);
    }
}
