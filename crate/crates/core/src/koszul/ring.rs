use std::collections::HashMap;
use std::sync::RwLock;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};
use rayon::prelude::*;

use crate::exactalg::{
    rank_and_kernel, ExactMatrix, Field, FieldMode, Monomial, Rational, SparseVec,
};
use crate::groebner::{monomial_normal_form, standard_monomials, GroebnerBasis};

/// One graded piece `A_d` of `A = S/I`.
#[derive(Debug)]
pub struct GradedPiece<F: Field> {
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    weights: Vec<Vec<i64>>,
    /// `times_var[m][i]` = normal form of `x_i * m` in `A_{d+1}`
    times_var: Vec<Vec<SparseVec<F>>>,
}

impl<F: Field> GradedPiece<F> {
    pub fn dim(&self) -> usize {
        self.monomials.len()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Multidegree of the `k`-th basis monomial.
    pub fn weight(&self, k: usize) -> &[i64] {
        &self.weights[k]
    }
}

/// `A = S/I` with explicit standard-monomial bases of `A_0..A_top`, the
/// multiplication-by-variable maps between them and the finest grading by
/// `Z^r` for which the ideal is homogeneous.
#[derive(Debug)]
pub struct QuotientRing<F: Field> {
    gb: GroebnerBasis<F>,
    pieces: Vec<GradedPiece<F>>,
    weights: Vec<Vec<i64>>,
    products: RwLock<HashMap<Monomial, SparseVec<F>>>,
}

impl<F: Field> QuotientRing<F> {
    pub fn new(gb: GroebnerBasis<F>, top: usize) -> Self {
        let weights = finest_grading(&gb);
        let mut ring = QuotientRing {
            gb,
            pieces: Vec::new(),
            weights,
            products: RwLock::new(HashMap::new()),
        };
        ring.extend_to(top);
        ring
    }

    pub fn gb(&self) -> &GroebnerBasis<F> {
        &self.gb
    }

    pub fn nvars(&self) -> usize {
        self.gb.nvars()
    }

    pub fn mode(&self) -> FieldMode {
        self.gb.mode()
    }

    /// Highest degree with a materialized basis.
    pub fn top(&self) -> usize {
        self.pieces.len() - 1
    }

    pub fn piece(&self, d: usize) -> &GradedPiece<F> {
        &self.pieces[d]
    }

    pub fn dim(&self, d: usize) -> usize {
        self.pieces.get(d).map_or(0, |p| p.dim())
    }

    /// Per-variable weight vectors of the multigrading.
    pub fn weights(&self) -> &[Vec<i64>] {
        &self.weights
    }

    pub fn monomial_weight(&self, m: &Monomial) -> Vec<i64> {
        let r = self.weights.first().map_or(0, |w| w.len());
        let mut out = vec![0i64; r];
        for (i, &e) in m.exps().iter().enumerate() {
            if e > 0 {
                for (o, w) in out.iter_mut().zip(&self.weights[i]) {
                    *o += e as i64 * w;
                }
            }
        }
        out
    }

    /// Materializes `A_d` for all `d <= top`, together with the
    /// multiplication maps `A_{d-1} -> A_d`.
    pub fn extend_to(&mut self, top: usize) {
        while self.pieces.len() <= top {
            let d = self.pieces.len();
            let monomials = standard_monomials(&self.gb, d as u32);
            let index = monomials
                .iter()
                .enumerate()
                .map(|(k, m)| (m.clone(), k))
                .collect();
            let weights = monomials.iter().map(|m| self.monomial_weight(m)).collect();
            self.pieces.push(GradedPiece {
                monomials,
                index,
                weights,
                times_var: Vec::new(),
            });
            if d > 0 {
                let table = self.multiplication_table(d - 1);
                self.pieces[d - 1].times_var = table;
            }
        }
    }

    fn multiplication_table(&self, d: usize) -> Vec<Vec<SparseVec<F>>> {
        let n = self.nvars();
        let next = &self.pieces[d + 1];
        self.pieces[d]
            .monomials
            .par_iter()
            .map(|m| (0..n).map(|i| self.express(&m.mul_var(i), next)).collect())
            .collect()
    }

    fn express(&self, m: &Monomial, piece: &GradedPiece<F>) -> SparseVec<F> {
        let nf = monomial_normal_form(m, &self.gb);
        SparseVec::from_unsorted(
            nf.into_iter()
                .map(|(t, c)| {
                    let k = piece
                        .index_of(&t)
                        .expect("normal form has only standard monomials");
                    (k, c)
                })
                .collect(),
        )
    }

    /// Normal form of `x_i * m` for the `k`-th basis monomial of `A_d`.
    /// Requires `d < top`.
    pub fn times_var(&self, d: usize, k: usize, i: usize) -> &SparseVec<F> {
        &self.pieces[d].times_var[k][i]
    }

    /// Normal form of the product of basis monomials `a ∈ A_da`, `b ∈ A_db`,
    /// as a vector over `A_{da+db}`. Requires `da + db <= top`.
    pub fn product(&self, da: usize, a: usize, db: usize, b: usize) -> SparseVec<F> {
        let m = self.pieces[da].monomials[a].mul(&self.pieces[db].monomials[b]);
        if let Some(v) = self.products.read().unwrap().get(&m) {
            return v.clone();
        }
        let v = self.express(&m, &self.pieces[da + db]);
        self.products.write().unwrap().insert(m, v.clone());
        v
    }
}

/// Integer weights `w_i ∈ Z^r` on the variables spanning all gradings for
/// which every generator of `gb` is homogeneous: the rational kernel of the
/// matrix of exponent differences within each generator.
pub fn finest_grading<F: Field>(gb: &GroebnerBasis<F>) -> Vec<Vec<i64>> {
    let n = gb.nvars();
    let q = FieldMode::Rational;
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for g in gb.source().iter().chain(gb.generators()) {
        let terms = g.terms();
        let Some((first, _)) = terms.first() else {
            continue;
        };
        for (m, _) in &terms[1..] {
            rows.push(
                m.exps()
                    .iter()
                    .zip(first.exps())
                    .map(|(a, b)| Rational::from_i64(*a as i64 - *b as i64, q))
                    .collect(),
            );
        }
    }
    let kernel = if rows.is_empty() {
        (0..n)
            .map(|i| SparseVec::unit(i, Rational::from_i64(1, q)))
            .collect()
    } else {
        rank_and_kernel(&ExactMatrix::from_dense(&rows, q)).1
    };
    // integer scaling of each kernel vector
    let basis: Vec<Vec<i64>> = kernel
        .iter()
        .map(|v| {
            let mut den = num_bigint::BigInt::one();
            for (_, c) in v.entries() {
                den = den.lcm(c.denom());
            }
            let mut dense = vec![0i64; n];
            for (i, c) in v.entries() {
                let z = c.numer() * (&den / c.denom());
                dense[*i] = z.to_i64().expect("grading weight fits in i64");
            }
            if dense
                .iter()
                .find(|x| **x != 0)
                .is_some_and(|x| x.is_negative())
            {
                dense.iter_mut().for_each(|x| *x = -*x);
            }
            dense
        })
        .collect();
    (0..n)
        .map(|i| basis.iter().map(|w| w[i]).collect())
        .collect()
}
