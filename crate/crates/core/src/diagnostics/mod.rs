//! Cohen-Macaulay, Gorenstein and Frobenius verdicts, and the harness that
//! checks the three theorem statements on catalog entries.

mod pipeline;

use std::fmt;

use serde::Serialize;

pub use pipeline::{
    analyze, analyze_entry, analyze_ideal, compute_analysis, cross_check_prime, verify_all,
    verify_entry, Analysis, EntryError, Input, PrimeCheck, Report, RunOptions, SubcanonicalReport,
    Summary, TheoremCheck, Theorems, VerifyRun,
};

use crate::error::{Error, Result};
use crate::exactalg::Field;
use crate::koszul::{BettiTable, HomologyBasis};

/// A concrete, re-checkable reason for a negative verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Witness {
    NotCohenMacaulay {
        pd: usize,
        codim: usize,
    },
    TypeNotOne {
        cm_type: usize,
    },
    TopClassDimension {
        dim: usize,
    },
    /// The pairing `H_{p,*} × H_{c-p,*}` has rank below its size.
    DegeneratePairing {
        p: usize,
        rows: usize,
        cols: usize,
        rank: usize,
    },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::NotCohenMacaulay { pd, codim } => write!(f, "pd = {pd} != codim = {codim}"),
            Witness::TypeNotOne { cm_type } => write!(f, "type = {cm_type}"),
            Witness::TopClassDimension { dim } => write!(f, "dim H_top = {dim}"),
            Witness::DegeneratePairing {
                p,
                rows,
                cols,
                rank,
            } => {
                write!(
                    f,
                    "pairing at p={p} is degenerate: {rows}x{cols} of rank {rank}"
                )
            }
        }
    }
}

/// Auslander-Buchsbaum: `A` is Cohen-Macaulay iff `pd = n - dim A`.
pub fn is_cohen_macaulay(bt: &BettiTable, dim_a: usize, n: usize) -> Result<bool> {
    let pd = bt.pd();
    if pd > n || dim_a > n {
        return Err(Error::Internal(format!(
            "pd {pd} or dim {dim_a} exceeds {n} variables"
        )));
    }
    Ok(pd == n - dim_a)
}

/// Cohen-Macaulay of type one.
pub fn is_gorenstein(bt: &BettiTable, dim_a: usize, n: usize) -> Result<(bool, Vec<Witness>)> {
    let mut witnesses = Vec::new();
    if !is_cohen_macaulay(bt, dim_a, n)? {
        witnesses.push(Witness::NotCohenMacaulay {
            pd: bt.pd(),
            codim: n - dim_a,
        });
    }
    if bt.cm_type() != 1 {
        witnesses.push(Witness::TypeNotOne {
            cm_type: bt.cm_type(),
        });
    }
    Ok((witnesses.is_empty(), witnesses))
}

/// One-dimensional top class and a perfect pairing in every homological
/// degree. The pairing comes from the product, so `⟨ab,c⟩ = ⟨a,bc⟩` holds by
/// construction and only nondegeneracy is tested.
pub fn is_frobenius<F: Field>(hb: &HomologyBasis<F>) -> Result<(bool, Vec<Witness>)> {
    let bt = hb.betti();
    let top = bt.cm_type();
    if top != 1 {
        return Ok((false, vec![Witness::TopClassDimension { dim: top }]));
    }
    let mut witnesses = Vec::new();
    for p in 0..=bt.pd() {
        let m = hb.pairing_matrix(p)?;
        if !m.is_perfect() {
            witnesses.push(Witness::DegeneratePairing {
                p,
                rows: m.rows.len(),
                cols: m.cols.len(),
                rank: m.matrix.rank(),
            });
        }
    }
    Ok((witnesses.is_empty(), witnesses))
}

/// `β_{p,q} = β_{pd-p, σ-q}` for all entries.
pub fn betti_symmetric(bt: &BettiTable) -> bool {
    let (c, s) = (bt.pd(), bt.socle_degree());
    bt.entries()
        .all(|(p, q, b)| p <= c && q <= s && bt.get(c - p, s - q) == b)
}

/// Re-derives a witness from scratch; `true` when it still stands.
pub fn witness_holds<F: Field>(w: &Witness, hb: &HomologyBasis<F>, dim_a: usize) -> Result<bool> {
    let bt = hb.betti();
    let n = bt.nvars();
    Ok(match w {
        Witness::NotCohenMacaulay { pd, codim } => {
            bt.pd() == *pd && n - dim_a == *codim && pd != codim
        }
        Witness::TypeNotOne { cm_type } => bt.cm_type() == *cm_type && *cm_type != 1,
        Witness::TopClassDimension { dim } => bt.cm_type() == *dim && *dim != 1,
        Witness::DegeneratePairing { p, rank, .. } => {
            let m = hb.pairing_matrix(*p)?;
            m.matrix.rank() == *rank && !m.is_perfect()
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cohen_macaulay_from_numbers() {
        let cubic = BettiTable::new(4, 5, [((0, 0), 1), ((1, 2), 3), ((2, 3), 2)]);
        assert!(is_cohen_macaulay(&cubic, 2, 4).unwrap());
        let (g, w) = is_gorenstein(&cubic, 2, 4).unwrap();
        assert!(!g);
        assert_eq!(w, vec![Witness::TypeNotOne { cm_type: 2 }]);
        assert_eq!(w[0].to_string(), "type = 2");
        let poly = BettiTable::new(3, 2, [((0, 0), 1)]);
        assert!(is_cohen_macaulay(&poly, 3, 3).unwrap());
        assert!(is_gorenstein(&poly, 3, 3).unwrap().0);
        assert!(is_cohen_macaulay(&poly, 4, 3).is_err());
    }

    #[test]
    fn symmetry() {
        let ci = BettiTable::new(4, 6, [((0, 0), 1), ((1, 2), 2), ((2, 4), 1)]);
        assert!(betti_symmetric(&ci));
        let cubic = BettiTable::new(4, 5, [((0, 0), 1), ((1, 2), 3), ((2, 3), 2)]);
        assert!(!betti_symmetric(&cubic));
    }
}
