use std::collections::{BTreeMap, HashMap};
use std::time::Instant;

use rayon::prelude::*;

use super::betti::BettiTable;
use super::complex::{boundary_of, mask_indices, wedge_sign, Subsets};
use super::ring::QuotientRing;
use crate::error::{Error, Result};
use crate::exactalg::{rank_and_kernel, Echelon, ExactMatrix, Field, Monomial, SparseVec};
use crate::groebner::{GroebnerBasis, HilbertNumerator};

/// Knobs for [`HomologyBasis::compute`].
#[derive(Clone, Debug)]
pub struct KoszulOptions {
    /// Fixed internal-degree bound; `None` applies the automatic rule
    /// (`deg N + 2`, extended while the last two slices carry homology).
    pub q_max: Option<usize>,
    pub deadline: Option<Instant>,
    /// Cap on the nonzeros of any single differential block.
    pub max_nonzeros: Option<usize>,
    /// Verify `d∘d = 0` block by block.
    pub check_dd: bool,
}

impl Default for KoszulOptions {
    fn default() -> Self {
        KoszulOptions {
            q_max: None,
            deadline: None,
            max_nonzeros: None,
            check_dd: true,
        }
    }
}

/// Homology classes of one multidegree block of `K_{p,q}`. Vectors are in
/// block-local coordinates; `members[i]` is the global cell index of local
/// coordinate `i`.
#[derive(Clone, Debug)]
struct Block<F: Field> {
    weight: Vec<i64>,
    members: Vec<usize>,
    boundaries: Echelon<F>,
    reps: Echelon<F>,
}

impl<F: Field> Block<F> {
    fn local(&self, g: usize) -> Option<usize> {
        self.members.binary_search(&g).ok()
    }

    fn decompose(&self, z: &SparseVec<F>) -> Option<Vec<(usize, F)>> {
        self.reps.coordinates(&self.boundaries.reduce(z))
    }
}

#[derive(Clone, Debug)]
struct Cell<F: Field> {
    blocks: Vec<Block<F>>,
    offsets: Vec<usize>,
    by_weight: HashMap<Vec<i64>, usize>,
}

impl<F: Field> Cell<F> {
    fn new(mut blocks: Vec<Block<F>>) -> Self {
        blocks.sort_by(|a, b| a.weight.cmp(&b.weight));
        let mut offsets = Vec::with_capacity(blocks.len());
        let mut acc = 0;
        for b in &blocks {
            offsets.push(acc);
            acc += b.reps.rank();
        }
        let by_weight = blocks
            .iter()
            .enumerate()
            .map(|(i, b)| (b.weight.clone(), i))
            .collect();
        Cell {
            blocks,
            offsets,
            by_weight,
        }
    }

    fn dim(&self) -> usize {
        self.blocks.iter().map(|b| b.reps.rank()).sum()
    }

    fn locate(&self, k: usize) -> (usize, usize) {
        let b = self.offsets.partition_point(|&o| o <= k) - 1;
        (b, k - self.offsets[b])
    }
}

/// A class `Σ c_k [z_k]` in `H_{p,q}`, in the chosen basis of that cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyElement<F: Field> {
    pub p: usize,
    pub q: usize,
    pub coefficients: Vec<(usize, F)>,
}

impl<F: Field> HomologyElement<F> {
    pub fn basis(p: usize, q: usize, k: usize, one: F) -> Self {
        HomologyElement {
            p,
            q,
            coefficients: vec![(k, one)],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }
}

/// The duality pairing `H_{p,*} × H_{c-p,*} -> H_{c,σ} ≅ k`.
#[derive(Clone, Debug)]
pub struct PairingMatrix<F: Field> {
    pub p: usize,
    /// `(q, class index)` for each row, `q` ascending.
    pub rows: Vec<(usize, usize)>,
    /// `(q, class index)` for each column, `q` descending.
    pub cols: Vec<(usize, usize)>,
    pub matrix: ExactMatrix<F>,
}

impl<F: Field> PairingMatrix<F> {
    pub fn is_perfect(&self) -> bool {
        self.rows.len() == self.cols.len() && self.matrix.rank() == self.rows.len()
    }
}

/// Explicit bases of the Koszul homology `H_{p,q}(A)` for `q <= q_max`,
/// with cycle representatives and the data needed to decompose arbitrary
/// cycles.
#[derive(Debug)]
pub struct HomologyBasis<F: Field> {
    ring: QuotientRing<F>,
    subsets: Subsets,
    q_max: usize,
    cells: BTreeMap<(usize, usize), Cell<F>>,
    betti: BettiTable,
}

struct Slice<F: Field> {
    cells: Vec<(usize, Vec<Block<F>>)>,
}

impl<F: Field> Slice<F> {
    fn is_zero(&self) -> bool {
        self.cells.is_empty()
    }
}

/// Convenience wrapper: homology through a fixed `q_max`.
pub fn homology_basis<F: Field>(gb: &GroebnerBasis<F>, q_max: usize) -> Result<HomologyBasis<F>> {
    HomologyBasis::compute(
        gb.clone(),
        None,
        &KoszulOptions {
            q_max: Some(q_max),
            ..KoszulOptions::default()
        },
    )
}

impl<F: Field> HomologyBasis<F> {
    /// Computes the homology through the internal degree selected by
    /// `options`. When `numerator` is given, the Euler identity is checked
    /// and a fixed `q_max` below `deg N` is rejected.
    pub fn compute(
        gb: GroebnerBasis<F>,
        numerator: Option<&HilbertNumerator>,
        options: &KoszulOptions,
    ) -> Result<Self> {
        let n = gb.nvars();
        if n > 31 {
            return Err(Error::Resource(format!(
                "{n} variables exceed the supported 31"
            )));
        }
        let deg_n = numerator.and_then(|num| num.degree()).unwrap_or(0);
        let (mut q_max, automatic) = match options.q_max {
            Some(q) if q < deg_n => {
                return Err(Error::QMaxTooSmall(format!(
                    "q_max={q} is below deg N = {deg_n}"
                )))
            }
            Some(q) => (q, false),
            None => (deg_n + 2, true),
        };
        let subsets = Subsets::new(n);
        let mut ring = QuotientRing::new(gb, q_max);
        let mut slices: Vec<Slice<F>> = (0..=q_max)
            .into_par_iter()
            .map(|q| compute_slice(&ring, &subsets, q, options))
            .collect::<Result<_>>()?;
        if automatic {
            let cap = 2 * (deg_n + n) + 4;
            while !slices[q_max].is_zero() || (q_max > 0 && !slices[q_max - 1].is_zero()) {
                if q_max >= cap {
                    return Err(Error::QMaxTooSmall(format!(
                        "homology persists through degree {q_max}"
                    )));
                }
                q_max += 1;
                ring.extend_to(q_max);
                slices.push(compute_slice(&ring, &subsets, q_max, options)?);
            }
        }
        let mut cells = BTreeMap::new();
        for (q, slice) in slices.into_iter().enumerate() {
            for (p, blocks) in slice.cells {
                cells.insert((p, q), Cell::new(blocks));
            }
        }
        let betti = BettiTable::new(
            n,
            q_max,
            cells
                .iter()
                .map(|(&k, c): (&(usize, usize), &Cell<F>)| (k, c.dim())),
        );
        if let Some(num) = numerator {
            betti.check_euler(num)?;
        }
        Ok(HomologyBasis {
            ring,
            subsets,
            q_max,
            cells,
            betti,
        })
    }

    pub fn ring(&self) -> &QuotientRing<F> {
        &self.ring
    }

    pub fn q_max(&self) -> usize {
        self.q_max
    }

    pub fn betti(&self) -> &BettiTable {
        &self.betti
    }

    pub fn dim(&self, p: usize, q: usize) -> usize {
        self.betti.get(p, q)
    }

    fn one(&self) -> F {
        F::one(self.ring.mode())
    }

    /// `(subset, monomial)` label of global cell index `g` in `K_{p,q}`.
    pub fn cell_label(&self, p: usize, q: usize, g: usize) -> (Vec<usize>, Monomial) {
        let d = q - p;
        let da = self.ring.dim(d);
        let mask = self.subsets.mask(p, g / da);
        (
            mask_indices(mask).collect(),
            self.ring.piece(d).monomials()[g % da].clone(),
        )
    }

    /// Cycle representative of the `k`-th basis class of `H_{p,q}`, over
    /// global cell indices.
    pub fn representative(&self, p: usize, q: usize, k: usize) -> SparseVec<F> {
        let cell = &self.cells[&(p, q)];
        let (b, r) = cell.locate(k);
        let block = &cell.blocks[b];
        SparseVec::from_unsorted(
            block.reps.rows()[r]
                .entries()
                .iter()
                .map(|(i, c)| (block.members[*i], c.clone()))
                .collect(),
        )
    }

    /// Human-readable cycle, e.g. `e1*x0 - e0*x1`.
    pub fn format_representative(&self, p: usize, q: usize, k: usize) -> String {
        let z = self.representative(p, q, k);
        let mut parts: Vec<String> = Vec::new();
        for (g, c) in z.entries() {
            let (s, m) = self.cell_label(p, q, *g);
            let mut basis: Vec<String> = Vec::new();
            if !s.is_empty() {
                basis.push(format!(
                    "e{}",
                    s.iter()
                        .map(|i| i.to_string())
                        .collect::<Vec<_>>()
                        .join("^e")
                ));
            }
            if !m.is_one() {
                basis.push(m.to_string());
            }
            let basis = if basis.is_empty() {
                "1".to_string()
            } else {
                basis.join("*")
            };
            let (neg, abs) = match c.to_integer() {
                Some(v) if v < 0.into() => (true, (-v).to_string()),
                Some(v) => (false, v.to_string()),
                None => (false, format!("({c})")),
            };
            let term = if abs == "1" {
                basis
            } else {
                format!("{abs}*{basis}")
            };
            match (parts.is_empty(), neg) {
                (true, true) => parts.push(format!("-{term}")),
                (true, false) => parts.push(term),
                (false, true) => parts.push(format!("- {term}")),
                (false, false) => parts.push(format!("+ {term}")),
            }
        }
        parts.join(" ")
    }

    /// Coordinates of the class of the cycle `z ∈ K_{p,q}` (global indices).
    /// Components in multidegrees without homology are boundaries and drop
    /// out.
    pub fn decompose(&self, p: usize, q: usize, z: &SparseVec<F>) -> Result<HomologyElement<F>> {
        let mut coefficients = Vec::new();
        if let Some(cell) = self.cells.get(&(p, q)) {
            let mut parts: Vec<Vec<(usize, F)>> = vec![Vec::new(); cell.blocks.len()];
            for (g, c) in z.entries() {
                let w = self.cell_weight(p, q, *g);
                if let Some(&b) = cell.by_weight.get(&w) {
                    let i = cell.blocks[b].local(*g).ok_or_else(|| {
                        Error::Internal("cell index missing from its block".into())
                    })?;
                    parts[b].push((i, c.clone()));
                }
            }
            for (b, part) in parts.into_iter().enumerate() {
                if part.is_empty() {
                    continue;
                }
                let coords = cell.blocks[b]
                    .decompose(&SparseVec::from_unsorted(part))
                    .ok_or_else(|| {
                        Error::Internal(format!("vector in K_{{{p},{q}}} is not a cycle"))
                    })?;
                coefficients.extend(coords.into_iter().map(|(k, c)| (cell.offsets[b] + k, c)));
            }
        }
        coefficients.sort_by_key(|e| e.0);
        Ok(HomologyElement { p, q, coefficients })
    }

    fn cell_weight(&self, p: usize, q: usize, g: usize) -> Vec<i64> {
        let d = q - p;
        let da = self.ring.dim(d);
        let mut w = self.ring.piece(d).weight(g % da).to_vec();
        for i in mask_indices(self.subsets.mask(p, g / da)) {
            for (a, b) in w.iter_mut().zip(&self.ring.weights()[i]) {
                *a += b;
            }
        }
        w
    }

    /// Product of two basis classes in the DG algebra `K ⊗ A`.
    pub fn class_product(
        &self,
        a: (usize, usize, usize),
        b: (usize, usize, usize),
    ) -> Result<HomologyElement<F>> {
        let (p1, q1, k1) = a;
        let (p2, q2, k2) = b;
        let (p, q) = (p1 + p2, q1 + q2);
        let zero = HomologyElement {
            p,
            q,
            coefficients: Vec::new(),
        };
        let Some(cell) = self.cells.get(&(p, q)) else {
            return Ok(zero);
        };
        let (ca, cb) = (&self.cells[&(p1, q1)], &self.cells[&(p2, q2)]);
        let (ba, ra) = ca.locate(k1);
        let (bb, rb) = cb.locate(k2);
        let (blk_a, blk_b) = (&ca.blocks[ba], &cb.blocks[bb]);
        let weight: Vec<i64> = blk_a
            .weight
            .iter()
            .zip(&blk_b.weight)
            .map(|(x, y)| x + y)
            .collect();
        let Some(&bt) = cell.by_weight.get(&weight) else {
            return Ok(zero);
        };
        let target = &cell.blocks[bt];
        let (d1, d2, d) = (q1 - p1, q2 - p2, q - p);
        let (da1, da2, da) = (self.ring.dim(d1), self.ring.dim(d2), self.ring.dim(d));
        let mut acc: HashMap<usize, F> = HashMap::new();
        for (ia, xa) in blk_a.reps.rows()[ra].entries() {
            let ga = blk_a.members[*ia];
            let (sa, ma) = (self.subsets.mask(p1, ga / da1), ga % da1);
            for (ib, xb) in blk_b.reps.rows()[rb].entries() {
                let gb = blk_b.members[*ib];
                let (sb, mb) = (self.subsets.mask(p2, gb / da2), gb % da2);
                if sa & sb != 0 {
                    continue;
                }
                let mut c = xa.clone() * xb.clone();
                if wedge_sign(sa, sb) {
                    c = -c;
                }
                let base = self.subsets.rank(sa | sb) * da;
                for (m, y) in self.ring.product(d1, ma, d2, mb).entries() {
                    let e = acc
                        .entry(base + m)
                        .or_insert_with(|| F::zero(self.ring.mode()));
                    *e = e.clone() + c.clone() * y.clone();
                }
            }
        }
        let local = acc
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(g, c)| {
                target
                    .local(g)
                    .map(|i| (i, c))
                    .ok_or_else(|| Error::Internal("product left its multidegree".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        let coords = target
            .decompose(&SparseVec::from_unsorted(local))
            .ok_or_else(|| Error::Internal("product of cycles is not a cycle".into()))?;
        Ok(HomologyElement {
            p,
            q,
            coefficients: coords
                .into_iter()
                .map(|(k, c)| (cell.offsets[bt] + k, c))
                .collect(),
        })
    }

    /// Bilinear extension of [`Self::class_product`].
    pub fn dg_product(
        &self,
        x: &HomologyElement<F>,
        y: &HomologyElement<F>,
    ) -> Result<HomologyElement<F>> {
        let mut acc: BTreeMap<usize, F> = BTreeMap::new();
        for (ka, ca) in &x.coefficients {
            for (kb, cb) in &y.coefficients {
                let prod = self.class_product((x.p, x.q, *ka), (y.p, y.q, *kb))?;
                for (k, c) in prod.coefficients {
                    let e = acc.entry(k).or_insert_with(|| F::zero(self.ring.mode()));
                    *e = e.clone() + ca.clone() * cb.clone() * c;
                }
            }
        }
        Ok(HomologyElement {
            p: x.p + y.p,
            q: x.q + y.q,
            coefficients: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        })
    }

    pub fn unit(&self) -> HomologyElement<F> {
        HomologyElement::basis(0, 0, 0, self.one())
    }

    /// `(c, σ)` of the one-dimensional top homology `H_{c,σ}`.
    pub fn top_class(&self) -> Result<(usize, usize)> {
        let t = self.betti.cm_type();
        if t != 1 {
            return Err(Error::TopClassNotOneDimensional(t));
        }
        Ok((self.betti.pd(), self.betti.socle_degree()))
    }

    /// Matrix of `(a, b) ↦ coefficient of [top] in a·b` for
    /// `a ∈ ⊕_q H_{p,q}`, `b ∈ ⊕_q H_{c-p,q}`.
    pub fn pairing_matrix(&self, p: usize) -> Result<PairingMatrix<F>> {
        let (c, sigma) = self.top_class()?;
        if p > c {
            return Err(Error::InvalidInput(format!("p={p} exceeds pd={c}")));
        }
        let classes = |pp: usize| -> Vec<(usize, usize)> {
            self.cells
                .keys()
                .filter(|k| k.0 == pp)
                .flat_map(|&(_, q)| (0..self.dim(pp, q)).map(move |k| (q, k)))
                .collect()
        };
        let rows = classes(p);
        let mut cols = classes(c - p);
        cols.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        let entries: Vec<(usize, usize, F)> = rows
            .par_iter()
            .enumerate()
            .map(|(i, &(qa, ka))| {
                let mut out = Vec::new();
                for (j, &(qb, kb)) in cols.iter().enumerate() {
                    if qa + qb != sigma {
                        continue;
                    }
                    let prod = self.class_product((p, qa, ka), (c - p, qb, kb))?;
                    if let Some((_, v)) = prod.coefficients.iter().find(|e| e.0 == 0) {
                        out.push((i, j, v.clone()));
                    }
                }
                Ok(out)
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .collect();
        let matrix = ExactMatrix::from_triplets(rows.len(), cols.len(), self.ring.mode(), entries);
        Ok(PairingMatrix {
            p,
            rows,
            cols,
            matrix,
        })
    }
}

fn check_deadline(options: &KoszulOptions) -> Result<()> {
    match options.deadline {
        Some(t) if Instant::now() > t => Err(Error::Resource("time limit exceeded".into())),
        _ => Ok(()),
    }
}

/// All homology in internal degree `q`, split into multidegree blocks.
fn compute_slice<F: Field>(
    ring: &QuotientRing<F>,
    subsets: &Subsets,
    q: usize,
    options: &KoszulOptions,
) -> Result<Slice<F>> {
    check_deadline(options)?;
    let n = subsets.n();
    let pmax = n.min(q);
    let mut blocks: BTreeMap<Vec<i64>, Vec<Vec<usize>>> = BTreeMap::new();
    for p in 0..=pmax {
        let d = q - p;
        let piece = ring.piece(d);
        let da = piece.dim();
        for s in 0..subsets.count(p) {
            let mut ws = vec![0i64; ring.weights().first().map_or(0, Vec::len)];
            for i in mask_indices(subsets.mask(p, s)) {
                for (a, b) in ws.iter_mut().zip(&ring.weights()[i]) {
                    *a += b;
                }
            }
            for m in 0..da {
                let w: Vec<i64> = ws.iter().zip(piece.weight(m)).map(|(a, b)| a + b).collect();
                blocks
                    .entry(w)
                    .or_insert_with(|| vec![Vec::new(); pmax + 1])[p]
                    .push(s * da + m);
            }
        }
    }
    let results: Vec<Vec<(usize, Block<F>)>> = blocks
        .into_par_iter()
        .map(|(w, members)| compute_block(ring, subsets, q, w, members, options))
        .collect::<Result<_>>()?;
    let mut by_p: BTreeMap<usize, Vec<Block<F>>> = BTreeMap::new();
    for (p, b) in results.into_iter().flatten() {
        by_p.entry(p).or_default().push(b);
    }
    Ok(Slice {
        cells: by_p.into_iter().collect(),
    })
}

fn compute_block<F: Field>(
    ring: &QuotientRing<F>,
    subsets: &Subsets,
    q: usize,
    weight: Vec<i64>,
    members: Vec<Vec<usize>>,
    options: &KoszulOptions,
) -> Result<Vec<(usize, Block<F>)>> {
    check_deadline(options)?;
    let pmax = members.len() - 1;
    let mode = ring.mode();
    // d[p] : block of K_{p,q} -> block of K_{p-1,q}, as columns
    let mut d: Vec<Option<ExactMatrix<F>>> = vec![None];
    for p in 1..=pmax {
        if members[p].is_empty() {
            d.push(None);
            continue;
        }
        let rows = &members[p - 1];
        let columns = members[p]
            .iter()
            .map(|&g| {
                let entries = boundary_of(ring, subsets, p, q, g)
                    .into_iter()
                    .map(|(t, c)| {
                        rows.binary_search(&t).map(|i| (i, c)).map_err(|_| {
                            Error::Internal("differential left its multidegree".into())
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(SparseVec::from_unsorted(entries))
            })
            .collect::<Result<Vec<_>>>()?;
        let m = ExactMatrix::from_columns(rows.len(), &columns, mode);
        if let Some(cap) = options.max_nonzeros {
            if m.nnz() > cap {
                return Err(Error::Resource(format!(
                    "differential block with {} nonzeros exceeds the cap of {cap}",
                    m.nnz()
                )));
            }
        }
        d.push(Some(m));
    }
    if options.check_dd {
        for p in 1..pmax {
            if let (Some(a), Some(b)) = (&d[p], &d[p + 1]) {
                if !a.mul(b)?.is_zero() {
                    return Err(Error::Internal(format!("d∘d != 0 at p={}, q={q}", p + 1)));
                }
            }
        }
    }
    let mut out = Vec::new();
    for p in 0..=pmax {
        let len = members[p].len();
        if len == 0 {
            continue;
        }
        let cycles: Vec<SparseVec<F>> = match &d[p] {
            Some(m) => rank_and_kernel(m).1,
            None => (0..len).map(|i| SparseVec::unit(i, F::one(mode))).collect(),
        };
        if cycles.is_empty() {
            continue;
        }
        let boundaries = match d.get(p + 1) {
            Some(Some(m)) => Echelon::rref_of(len, m.column_vectors()),
            _ => Echelon::new(len),
        };
        if cycles.len() == boundaries.rank() {
            continue;
        }
        let reps = Echelon::rref_of(len, cycles.iter().map(|z| boundaries.reduce(z)));
        if reps.rank() != cycles.len() - boundaries.rank() {
            return Err(Error::Internal(format!(
                "boundaries not contained in cycles at p={p}, q={q}"
            )));
        }
        out.push((
            p,
            Block {
                weight: weight.clone(),
                members: members[p].clone(),
                boundaries,
                reps,
            },
        ));
    }
    Ok(out)
}
