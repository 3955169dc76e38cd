//! Buchberger's algorithm, normal forms and the graded pieces of `S/I`.

mod hilbert;
mod io;

use std::collections::{BTreeMap, BTreeSet, HashSet};

pub use hilbert::{hilbert_numerator, hilbert_numerator_auto, krull_dim, HilbertNumerator};
pub use io::{parse_ideal, write_ideal, IdealText};

use crate::error::{Error, Result};
use crate::exactalg::{Field, FieldMode, Homogeneity, Monomial, Polynomial};
pub use crate::exactalg::{MonomialOrder, OrderKind};

/// A reduced Gröbner basis of a homogeneous ideal.
#[derive(Clone, Debug)]
pub struct GroebnerBasis<F: Field> {
    nvars: usize,
    mode: FieldMode,
    order: MonomialOrder,
    /// monic, sorted by leading monomial, largest first
    generators: Vec<Polynomial<F>>,
    /// terms of each generator, largest first under `order`
    ordered: Vec<Vec<(Monomial, F)>>,
    source: Vec<Polynomial<F>>,
}

impl<F: Field> GroebnerBasis<F> {
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn mode(&self) -> FieldMode {
        self.mode
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn generators(&self) -> &[Polynomial<F>] {
        &self.generators
    }

    pub fn source(&self) -> &[Polynomial<F>] {
        &self.source
    }

    pub fn leading_monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.ordered.iter().map(|t| &t[0].0)
    }

    pub fn max_degree(&self) -> u32 {
        self.leading_monomials()
            .map(|m| m.degree())
            .max()
            .unwrap_or(0)
    }

    /// Whether `m` lies in the lead ideal.
    pub fn is_lead_multiple(&self, m: &Monomial) -> bool {
        self.ordered.iter().any(|t| t[0].0.divides(m))
    }

    fn divisor_of(&self, m: &Monomial) -> Option<usize> {
        self.ordered.iter().position(|t| t[0].0.divides(m))
    }

    /// Fully reduces `terms` modulo the basis.
    fn reduce_terms(&self, terms: impl IntoIterator<Item = (Monomial, F)>) -> Vec<(Monomial, F)> {
        reduce_with(&self.order, &self.ordered, terms, |m| self.divisor_of(m))
    }
}

fn insert_term<F: Field>(
    work: &mut BTreeMap<Vec<i32>, (Monomial, F)>,
    order: &MonomialOrder,
    m: Monomial,
    c: F,
) {
    let key = order.key(&m);
    match work.get_mut(&key) {
        Some(entry) => {
            let s = entry.1.clone() + c;
            if s.is_zero() {
                work.remove(&key);
            } else {
                entry.1 = s;
            }
        }
        None => {
            if !c.is_zero() {
                work.insert(key, (m, c));
            }
        }
    }
}

fn reduce_with<F: Field>(
    order: &MonomialOrder,
    basis: &[Vec<(Monomial, F)>],
    terms: impl IntoIterator<Item = (Monomial, F)>,
    divisor_of: impl Fn(&Monomial) -> Option<usize>,
) -> Vec<(Monomial, F)> {
    let mut work: BTreeMap<Vec<i32>, (Monomial, F)> = BTreeMap::new();
    for (m, c) in terms {
        insert_term(&mut work, order, m, c);
    }
    let mut rem = Vec::new();
    while let Some((_, (m, c))) = work.pop_last() {
        match divisor_of(&m) {
            Some(k) => {
                let g = &basis[k];
                let q = g[0].0.quotient_of(&m).unwrap();
                for (t, a) in &g[1..] {
                    insert_term(&mut work, order, t.mul(&q), -(c.clone() * a.clone()));
                }
            }
            None => rem.push((m, c)),
        }
    }
    rem
}

fn make_monic<F: Field>(terms: &mut [(Monomial, F)]) {
    let inv = terms[0].1.inv().expect("leading coefficient is nonzero");
    if !inv.is_one() {
        for t in terms.iter_mut() {
            t.1 = t.1.clone() * inv.clone();
        }
    }
}

fn check_ring<F: Field>(
    gens: &[Polynomial<F>],
    order: &MonomialOrder,
) -> Result<(usize, FieldMode)> {
    let nvars = order.nvars();
    let mut mode = None;
    for g in gens {
        if g.nvars() != nvars {
            return Err(Error::VariableMismatch(nvars, g.nvars()));
        }
        match mode {
            None => mode = Some(g.mode()),
            Some(m) if m != g.mode() => {
                return Err(Error::MixedFieldModes(m.to_string(), g.mode().to_string()))
            }
            _ => {}
        }
        match g.homogeneity() {
            Homogeneity::Homogeneous(_) => {}
            Homogeneity::Zero => {
                return Err(Error::InvalidInput("zero generator".into()));
            }
            Homogeneity::Inhomogeneous => return Err(Error::Inhomogeneous(g.to_text())),
        }
    }
    Ok((nvars, mode.unwrap_or(FieldMode::Rational)))
}

/// Reduced Gröbner basis of the ideal generated by `generators`.
///
/// Pairs are processed by the normal strategy (smallest lcm first, ties
/// broken by pair index) with Buchberger's coprime and chain criteria. The
/// result is monic, reduced and sorted by leading monomial, largest first.
pub fn buchberger<F: Field>(
    generators: &[Polynomial<F>],
    order: &MonomialOrder,
) -> Result<GroebnerBasis<F>> {
    let (nvars, mode) = check_ring(generators, order)?;
    buchberger_in(generators, order, nvars, mode)
}

/// Like [`buchberger`] but with an explicit field mode, so the empty ideal
/// gets the right mode.
pub fn buchberger_in<F: Field>(
    generators: &[Polynomial<F>],
    order: &MonomialOrder,
    nvars: usize,
    mode: FieldMode,
) -> Result<GroebnerBasis<F>> {
    let (_, gmode) = check_ring(generators, order)?;
    if !generators.is_empty() && gmode != mode {
        return Err(Error::MixedFieldModes(mode.to_string(), gmode.to_string()));
    }
    let mut basis: Vec<Vec<(Monomial, F)>> = Vec::new();
    for g in generators {
        let mut t = g.sorted_terms(order);
        make_monic(&mut t);
        basis.push(t);
    }

    let lcm_of = |b: &Vec<Vec<(Monomial, F)>>, i: usize, j: usize| b[i][0].0.lcm(&b[j][0].0);
    let mut queue: BTreeSet<(u32, Vec<i32>, usize, usize)> = BTreeSet::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();
    let push_pair = |b: &Vec<Vec<(Monomial, F)>>,
                     queue: &mut BTreeSet<(u32, Vec<i32>, usize, usize)>,
                     pending: &mut HashSet<(usize, usize)>,
                     i: usize,
                     j: usize| {
        let l = lcm_of(b, i, j);
        queue.insert((l.degree(), order.key(&l), j, i));
        pending.insert((i, j));
    };
    for j in 0..basis.len() {
        for i in 0..j {
            push_pair(&basis, &mut queue, &mut pending, i, j);
        }
    }

    while let Some((_, _, j, i)) = queue.pop_first() {
        pending.remove(&(i, j));
        let (li, lj) = (&basis[i][0].0, &basis[j][0].0);
        if li.is_coprime(lj) {
            continue;
        }
        let l = li.lcm(lj);
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k][0].0.divides(&l)
                && !pending.contains(&(i.min(k), i.max(k)))
                && !pending.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        let qi = li.quotient_of(&l).unwrap();
        let qj = lj.quotient_of(&l).unwrap();
        let mut spoly: Vec<(Monomial, F)> = basis[i][1..]
            .iter()
            .map(|(t, c)| (t.mul(&qi), c.clone()))
            .collect();
        spoly.extend(basis[j][1..].iter().map(|(t, c)| (t.mul(&qj), -c.clone())));
        let divisor = |m: &Monomial| basis.iter().position(|t| t[0].0.divides(m));
        let mut r = reduce_with(order, &basis, spoly, divisor);
        if r.is_empty() {
            continue;
        }
        r.sort_by(|a, b| order.cmp(&b.0, &a.0));
        make_monic(&mut r);
        basis.push(r);
        let new = basis.len() - 1;
        for k in 0..new {
            push_pair(&basis, &mut queue, &mut pending, k, new);
        }
    }

    // minimalize: drop elements whose lead is a multiple of another lead
    let mut keep: Vec<Vec<(Monomial, F)>> = Vec::new();
    for (k, g) in basis.iter().enumerate() {
        let redundant = basis
            .iter()
            .enumerate()
            .any(|(l, h)| l != k && h[0].0.divides(&g[0].0) && (h[0].0 != g[0].0 || l < k));
        if !redundant {
            keep.push(g.clone());
        }
    }
    // interreduce tails
    let reduced: Vec<Vec<(Monomial, F)>> = keep
        .iter()
        .map(|g| {
            let divisor = |m: &Monomial| keep.iter().position(|t| t[0].0.divides(m));
            let mut tail = reduce_with(order, &keep, g[1..].iter().cloned(), divisor);
            tail.sort_by(|a, b| order.cmp(&b.0, &a.0));
            let mut out = vec![g[0].clone()];
            out.extend(tail);
            out
        })
        .collect();
    let mut reduced = reduced;
    reduced.sort_by(|a, b| order.cmp(&b[0].0, &a[0].0));

    let polys = reduced
        .iter()
        .map(|t| Polynomial::from_terms(nvars, mode, t.clone()))
        .collect();
    Ok(GroebnerBasis {
        nvars,
        mode,
        order: order.clone(),
        generators: polys,
        ordered: reduced,
        source: generators.to_vec(),
    })
}

/// Remainder of `f` modulo the basis: no monomial of the result is divisible
/// by a leading monomial, and `f - result` lies in the ideal.
pub fn normal_form<F: Field>(f: &Polynomial<F>, gb: &GroebnerBasis<F>) -> Result<Polynomial<F>> {
    if f.nvars() != gb.nvars {
        return Err(Error::VariableMismatch(gb.nvars, f.nvars()));
    }
    if f.mode() != gb.mode {
        return Err(Error::MixedFieldModes(
            gb.mode.to_string(),
            f.mode().to_string(),
        ));
    }
    let rem = gb.reduce_terms(f.terms().iter().cloned());
    Ok(Polynomial::from_terms(gb.nvars, gb.mode, rem))
}

/// Normal form of a single monomial, returned as terms sorted largest first.
pub fn monomial_normal_form<F: Field>(m: &Monomial, gb: &GroebnerBasis<F>) -> Vec<(Monomial, F)> {
    if !gb.is_lead_multiple(m) {
        return vec![(m.clone(), F::one(gb.mode))];
    }
    let mut r = gb.reduce_terms(std::iter::once((m.clone(), F::one(gb.mode))));
    r.sort_by(|a, b| gb.order.cmp(&b.0, &a.0));
    r
}

fn for_each_standard(
    nvars: usize,
    q: u32,
    is_lead_multiple: &dyn Fn(&Monomial) -> bool,
    visit: &mut dyn FnMut(&[u16]),
) {
    fn go(
        k: usize,
        left: u32,
        exps: &mut Vec<u16>,
        is_lead_multiple: &dyn Fn(&Monomial) -> bool,
        visit: &mut dyn FnMut(&[u16]),
    ) {
        let n = exps.len();
        if k == n - 1 {
            exps[k] = left as u16;
            if !is_lead_multiple(&Monomial::new(exps.clone())) {
                visit(exps);
            }
            exps[k] = 0;
            return;
        }
        for e in (0..=left).rev() {
            exps[k] = e as u16;
            if e > 0 && is_lead_multiple(&Monomial::new(exps.clone())) {
                continue;
            }
            go(k + 1, left - e, exps, is_lead_multiple, visit);
        }
        exps[k] = 0;
    }
    if nvars == 0 {
        if q == 0 {
            visit(&[]);
        }
        return;
    }
    let mut exps = vec![0u16; nvars];
    go(0, q, &mut exps, is_lead_multiple, visit);
}

/// Degree-`q` monomials outside the lead ideal, largest first. Their count is
/// `dim A_q`.
pub fn standard_monomials<F: Field>(gb: &GroebnerBasis<F>, q: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for_each_standard(gb.nvars, q, &|m| gb.is_lead_multiple(m), &mut |e| {
        out.push(Monomial::new(e.to_vec()))
    });
    out.sort_by(|a, b| gb.order.cmp(b, a));
    out
}

/// `dim A_q` without materializing the monomials.
pub fn count_standard_monomials<F: Field>(gb: &GroebnerBasis<F>, q: u32) -> u64 {
    let mut count = 0u64;
    for_each_standard(gb.nvars, q, &|m| gb.is_lead_multiple(m), &mut |_| {
        count += 1
    });
    count
}
