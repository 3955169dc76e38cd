use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::groebner::HilbertNumerator;

/// Graded Betti numbers `β_{p,q} = dim H_{p,q}` through internal degree
/// `q_max`. Only nonzero entries are stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    nvars: usize,
    q_max: usize,
    entries: BTreeMap<(usize, usize), usize>,
}

impl BettiTable {
    pub fn new(
        nvars: usize,
        q_max: usize,
        entries: impl IntoIterator<Item = ((usize, usize), usize)>,
    ) -> Self {
        BettiTable {
            nvars,
            q_max,
            entries: entries.into_iter().filter(|(_, b)| *b > 0).collect(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn q_max(&self) -> usize {
        self.q_max
    }

    pub fn get(&self, p: usize, q: usize) -> usize {
        self.entries.get(&(p, q)).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.entries.iter().map(|(&(p, q), &b)| (p, q, b))
    }

    /// `[p, q, β]` triples sorted by `(p, q)`.
    pub fn triples(&self) -> Vec<[usize; 3]> {
        self.entries().map(|(p, q, b)| [p, q, b]).collect()
    }

    /// Projective dimension: largest `p` with a nonzero entry.
    pub fn pd(&self) -> usize {
        self.entries.keys().map(|k| k.0).max().unwrap_or(0)
    }

    /// Castelnuovo-Mumford regularity `max(q - p)`.
    pub fn regularity(&self) -> usize {
        self.entries.keys().map(|&(p, q)| q - p).max().unwrap_or(0)
    }

    /// Largest `q` with `β_{pd,q} != 0`.
    pub fn socle_degree(&self) -> usize {
        let pd = self.pd();
        self.entries
            .keys()
            .filter(|k| k.0 == pd)
            .map(|k| k.1)
            .max()
            .unwrap_or(0)
    }

    /// Cohen-Macaulay type `Σ_q β_{pd,q}`.
    pub fn cm_type(&self) -> usize {
        self.row_total(self.pd())
    }

    pub fn row_total(&self, p: usize) -> usize {
        self.entries
            .iter()
            .filter(|(k, _)| k.0 == p)
            .map(|(_, b)| b)
            .sum()
    }

    /// Totals per homological degree `0..=pd`.
    pub fn totals(&self) -> Vec<usize> {
        (0..=self.pd()).map(|p| self.row_total(p)).collect()
    }

    pub fn euler_coefficient(&self, q: usize) -> i64 {
        self.entries
            .iter()
            .filter(|(k, _)| k.1 == q)
            .map(|(k, &b)| if k.0 % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum()
    }

    /// `Σ_p (-1)^p β_{p,q} = N_q` for every `q <= q_max`.
    pub fn check_euler(&self, numerator: &HilbertNumerator) -> Result<()> {
        for q in 0..=self.q_max {
            let betti = self.euler_coefficient(q);
            let expected = numerator.coefficient(q);
            if betti != expected {
                return Err(Error::EulerMismatch {
                    q,
                    betti,
                    numerator: expected,
                });
            }
        }
        Ok(())
    }

    /// Macaulay2-style grid: columns are `p`, rows are `q - p`.
    pub fn render(&self) -> String {
        let pd = self.pd();
        let reg = self.regularity();
        let cell = |p: usize, r: usize| match self.get(p, p + r) {
            0 => ".".to_string(),
            b => b.to_string(),
        };
        let totals = self.totals();
        let widths: Vec<usize> = (0..=pd)
            .map(|p| {
                let mut w = p.to_string().len().max(totals[p].to_string().len());
                for r in 0..=reg {
                    w = w.max(cell(p, r).len());
                }
                w
            })
            .collect();
        let label = "total:".len().max(format!("{reg}:").len());
        let mut out = String::new();
        let mut line = |head: String, row: &dyn Fn(usize) -> String| {
            let _ = write!(out, "{head:>label$}");
            for (p, w) in widths.iter().enumerate() {
                let _ = write!(out, " {:>w$}", row(p));
            }
            out.push('\n');
        };
        line(String::new(), &|p| p.to_string());
        line("total:".into(), &|p| totals[p].to_string());
        for r in 0..=reg {
            line(format!("{r}:"), &|p| cell(p, r));
        }
        out
    }
}
