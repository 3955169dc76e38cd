use serde::{Deserialize, Serialize};

use super::{count_standard_monomials, GroebnerBasis};
use crate::error::{Error, Result};
use crate::exactalg::Field;

/// Largest degree tried when searching for a stabilized numerator.
const HILBERT_SEARCH_LIMIT: usize = 400;

/// Numerator `N(t)` of the Hilbert series `N(t)/(1-t)^n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertNumerator {
    coefficients: Vec<i64>,
    nvars: usize,
}

impl HilbertNumerator {
    pub fn new(mut coefficients: Vec<i64>, nvars: usize) -> Self {
        while coefficients.last() == Some(&0) {
            coefficients.pop();
        }
        HilbertNumerator {
            coefficients,
            nvars,
        }
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.coefficients
    }

    pub fn coefficient(&self, q: usize) -> i64 {
        self.coefficients.get(q).copied().unwrap_or(0)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Degree of `N(t)`; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coefficients.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// Coefficients of `N(t)/(1-t)^n` up to `t^q_max`, i.e. the Hilbert
    /// function.
    pub fn series(&self, q_max: usize) -> Vec<i64> {
        let mut s: Vec<i64> = (0..=q_max).map(|q| self.coefficient(q)).collect();
        for _ in 0..self.nvars {
            for q in 1..=q_max {
                s[q] += s[q - 1];
            }
        }
        s
    }

    /// `t^deg N(1/t) = ±N(t)`.
    pub fn is_palindromic(&self) -> bool {
        let c = &self.coefficients;
        let rev: Vec<i64> = c.iter().rev().copied().collect();
        let neg: Vec<i64> = rev.iter().map(|v| -v).collect();
        *c == rev || *c == neg
    }
}

/// Multiplies the observed Hilbert function by `(1-t)^n` and checks that
/// the last `n` coefficients through `q_max` vanish.
pub fn hilbert_numerator<F: Field>(
    gb: &GroebnerBasis<F>,
    q_max: usize,
) -> Result<HilbertNumerator> {
    let hf: Vec<i64> = (0..=q_max)
        .map(|q| count_standard_monomials(gb, q as u32) as i64)
        .collect();
    numerator_from_function(&hf, gb.nvars())
}

fn numerator_from_function(hf: &[i64], n: usize) -> Result<HilbertNumerator> {
    let q_max = hf.len() - 1;
    let mut c = hf.to_vec();
    for _ in 0..n {
        for q in (1..=q_max).rev() {
            c[q] -= c[q - 1];
        }
    }
    let window = n.max(1);
    if q_max + 1 < window + 1 || c[q_max + 1 - window..].iter().any(|&v| v != 0) {
        return Err(Error::QMaxTooSmall(format!(
            "numerator has not stabilized by degree {q_max}"
        )));
    }
    Ok(HilbertNumerator::new(c, n))
}

/// Searches for the smallest workable `q_max`, starting at
/// `max generator degree + n`.
pub fn hilbert_numerator_auto<F: Field>(
    gb: &GroebnerBasis<F>,
) -> Result<(HilbertNumerator, usize)> {
    let n = gb.nvars();
    let mut hf: Vec<i64> = Vec::new();
    let mut q_max = gb.max_degree() as usize + n;
    loop {
        while hf.len() <= q_max {
            hf.push(count_standard_monomials(gb, hf.len() as u32) as i64);
        }
        match numerator_from_function(&hf, n) {
            Ok(num) => return Ok((num, q_max)),
            Err(_) if q_max < HILBERT_SEARCH_LIMIT => q_max += 1,
            Err(e) => return Err(e),
        }
    }
}

/// `n` minus the multiplicity of `t = 1` as a root of `N(t)`.
pub fn krull_dim(numerator: &HilbertNumerator, n: usize) -> Result<usize> {
    if numerator.is_zero() {
        return Err(Error::InvalidInput("Hilbert numerator is zero".into()));
    }
    let mut c = numerator.coefficients().to_vec();
    let mut mult = 0;
    while c.iter().sum::<i64>() == 0 {
        // c = (1 - t) * q
        let mut q = Vec::with_capacity(c.len() - 1);
        let mut acc = 0;
        for &v in &c[..c.len() - 1] {
            acc += v;
            q.push(acc);
        }
        c = q;
        mult += 1;
    }
    n.checked_sub(mult)
        .ok_or_else(|| Error::Internal(format!("root multiplicity {mult} exceeds {n}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{FieldMode, MonomialOrder, Polynomial, Rational};
    use crate::groebner::{buchberger, buchberger_in};

    const Q: FieldMode = FieldMode::Rational;

    #[test]
    fn polynomial_ring() {
        let gb = buchberger_in::<Rational>(&[], &MonomialOrder::grevlex(2), 2, Q).unwrap();
        let (num, _) = hilbert_numerator_auto(&gb).unwrap();
        assert_eq!(num.coefficients(), &[1]);
        assert_eq!(krull_dim(&num, 2).unwrap(), 2);
    }

    #[test]
    fn hypersurface() {
        for e in 1..5u16 {
            let f: Polynomial<Rational> =
                Polynomial::from_int_terms(3, Q, &[(1, &[e, 0, 0]), (-1, &[0, e - 1, 1])]);
            let gb = buchberger(&[f], &MonomialOrder::grevlex(3)).unwrap();
            let (num, _) = hilbert_numerator_auto(&gb).unwrap();
            let mut expect = vec![0i64; e as usize + 1];
            expect[0] = 1;
            expect[e as usize] = -1;
            assert_eq!(num.coefficients(), &expect[..]);
            assert_eq!(krull_dim(&num, 3).unwrap(), 2);
        }
    }

    #[test]
    fn twisted_cubic_numerator() {
        let gens = crate::groebner::tests::twisted_cubic();
        let gb = buchberger(&gens, &MonomialOrder::grevlex(4)).unwrap();
        let (num, _) = hilbert_numerator_auto(&gb).unwrap();
        assert_eq!(num.coefficients(), &[1, 0, -3, 2]);
        assert_eq!(krull_dim(&num, 4).unwrap(), 2);
        assert_eq!(num.series(6), vec![1, 4, 7, 10, 13, 16, 19]);
    }

    #[test]
    fn q_max_too_small() {
        let gens = crate::groebner::tests::twisted_cubic();
        let gb = buchberger(&gens, &MonomialOrder::grevlex(4)).unwrap();
        assert!(matches!(
            hilbert_numerator(&gb, 4),
            Err(Error::QMaxTooSmall(_))
        ));
        assert_eq!(
            hilbert_numerator(&gb, 7).unwrap().coefficients(),
            &[1, 0, -3, 2]
        );
    }

    #[test]
    fn krull_dim_values() {
        assert_eq!(
            krull_dim(&HilbertNumerator::new(vec![1, 0, -1], 3), 3).unwrap(),
            2
        );
        assert_eq!(
            krull_dim(&HilbertNumerator::new(vec![1, 0, -3, 2], 4), 4).unwrap(),
            2
        );
        assert!(krull_dim(&HilbertNumerator::new(vec![], 4), 4).is_err());
    }

    #[test]
    fn palindrome() {
        assert!(HilbertNumerator::new(vec![1, 0, -2, 0, 1], 4).is_palindromic());
        assert!(HilbertNumerator::new(vec![1, 0, -1], 3).is_palindromic());
        assert!(!HilbertNumerator::new(vec![1, 0, -3, 2], 4).is_palindromic());
    }
}
