use std::collections::BTreeMap;
use std::fmt;

use super::{Field, FieldMode, Monomial, MonomialOrder};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Homogeneity {
    Zero,
    Homogeneous(u32),
    Inhomogeneous,
}

/// Sparse multivariate polynomial. Terms are kept sorted by the canonical
/// (exponent-lexicographic) monomial order, largest first, with no zero
/// coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polynomial<F: Field> {
    nvars: usize,
    mode: FieldMode,
    terms: Vec<(Monomial, F)>,
}

impl<F: Field> Polynomial<F> {
    pub fn zero(nvars: usize, mode: FieldMode) -> Self {
        Polynomial {
            nvars,
            mode,
            terms: Vec::new(),
        }
    }

    pub fn constant(c: F, nvars: usize) -> Self {
        let mode = c.mode();
        Polynomial::from_terms(nvars, mode, vec![(Monomial::one(nvars), c)])
    }

    pub fn var(i: usize, nvars: usize, mode: FieldMode) -> Self {
        Polynomial::from_terms(nvars, mode, vec![(Monomial::var(nvars, i), F::one(mode))])
    }

    pub fn monomial(m: Monomial, c: F) -> Self {
        let mode = c.mode();
        Polynomial::from_terms(m.nvars(), mode, vec![(m, c)])
    }

    /// Collects terms, merging equal monomials and dropping zeros.
    pub fn from_terms(nvars: usize, mode: FieldMode, terms: Vec<(Monomial, F)>) -> Self {
        let mut acc: BTreeMap<Monomial, F> = BTreeMap::new();
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "monomial has wrong variable count");
            debug_assert_eq!(c.mode(), mode);
            match acc.remove(&m) {
                Some(prev) => {
                    let s = prev + c;
                    if !s.is_zero() {
                        acc.insert(m, s);
                    }
                }
                None => {
                    if !c.is_zero() {
                        acc.insert(m, c);
                    }
                }
            }
        }
        Polynomial {
            nvars,
            mode,
            terms: acc.into_iter().rev().collect(),
        }
    }

    /// Convenience constructor from integer-coefficient exponent lists.
    pub fn from_int_terms(nvars: usize, mode: FieldMode, terms: &[(i64, &[u16])]) -> Self {
        Polynomial::from_terms(
            nvars,
            mode,
            terms
                .iter()
                .map(|(c, e)| (Monomial::new(e.to_vec()), F::from_i64(*c, mode)))
                .collect(),
        )
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn mode(&self) -> FieldMode {
        self.mode
    }

    pub fn terms(&self) -> &[(Monomial, F)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn homogeneity(&self) -> Homogeneity {
        let Some((first, _)) = self.terms.first() else {
            return Homogeneity::Zero;
        };
        let d = first.degree();
        if self.terms.iter().all(|(m, _)| m.degree() == d) {
            Homogeneity::Homogeneous(d)
        } else {
            Homogeneity::Inhomogeneous
        }
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&F> {
        self.terms.iter().find(|(t, _)| t == m).map(|(_, c)| c)
    }

    /// Leading term under `order`.
    pub fn leading_term(&self, order: &MonomialOrder) -> Option<&(Monomial, F)> {
        self.terms.iter().max_by(|a, b| order.cmp(&a.0, &b.0))
    }

    /// Terms sorted from largest to smallest under `order`.
    pub fn sorted_terms(&self, order: &MonomialOrder) -> Vec<(Monomial, F)> {
        let mut t = self.terms.clone();
        t.sort_by(|a, b| order.cmp(&b.0, &a.0));
        t
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if self.mode != other.mode {
            return Err(Error::MixedFieldModes(
                self.mode.to_string(),
                other.mode.to_string(),
            ));
        }
        if self.nvars != other.nvars {
            return Err(Error::VariableMismatch(self.nvars, other.nvars));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let terms = self
            .terms
            .iter()
            .chain(other.terms.iter())
            .cloned()
            .collect();
        Ok(Polynomial::from_terms(self.nvars, self.mode, terms))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let terms = self
            .terms
            .iter()
            .cloned()
            .chain(other.terms.iter().map(|(m, c)| (m.clone(), -c.clone())))
            .collect();
        Ok(Polynomial::from_terms(self.nvars, self.mode, terms))
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Polynomial::zero(self.nvars, self.mode);
        }
        Polynomial {
            nvars: self.nvars,
            mode: self.mode,
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        let mut terms: Vec<(Monomial, F)> = self
            .terms
            .iter()
            .map(|(t, c)| (t.mul(m), c.clone()))
            .collect();
        // multiplication by a monomial can reorder terms
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        Polynomial {
            nvars: self.nvars,
            mode: self.mode,
            terms,
        }
    }

    /// Product with all cancellations performed.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                terms.push((ma.mul(mb), ca.clone() * cb.clone()));
            }
        }
        Ok(Polynomial::from_terms(self.nvars, self.mode, terms))
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        let mut acc = Polynomial::constant(F::one(self.mode), self.nvars);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Substitutes `images[i]` for `x_i`.
    pub fn substitute(&self, images: &[Polynomial<F>]) -> Result<Self> {
        if images.len() != self.nvars {
            return Err(Error::VariableMismatch(self.nvars, images.len()));
        }
        let target_vars = images.first().map_or(0, |p| p.nvars);
        let mut acc = Polynomial::zero(target_vars, self.mode);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(c.clone(), target_vars);
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    t = t.mul(&images[i].pow(e as u32)?)?;
                }
            }
            acc = acc.add(&t)?;
        }
        Ok(acc)
    }

    /// Reinterprets the coefficients in another field mode. Only polynomials
    /// with integer coefficients can be converted.
    pub fn convert<G: Field>(&self, mode: FieldMode) -> Result<Polynomial<G>> {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let z = c.to_integer().ok_or_else(|| {
                    Error::InvalidInput(format!("coefficient {c} is not an integer"))
                })?;
                Ok((m.clone(), G::from_bigint(&z, mode)))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Polynomial::from_terms(self.nvars, mode, terms))
    }

    /// Renders with terms in descending lex order, integer style:
    /// `x0*x2 - x1^2`.
    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let (neg, abs) = match c.to_integer() {
                Some(z) if z < 0.into() => (true, (-z).to_string()),
                Some(z) => (false, z.to_string()),
                None => (false, format!("({c})")),
            };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if m.is_one() {
                out.push_str(&abs);
            } else {
                if abs != "1" {
                    out.push_str(&abs);
                    out.push('*');
                }
                out.push_str(&m.to_string());
            }
        }
        out
    }
}

impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{Rational, Zp};

    const Q: FieldMode = FieldMode::Rational;

    fn x(i: usize, n: usize) -> Polynomial<Rational> {
        Polynomial::var(i, n, Q)
    }

    #[test]
    fn monomial_product() {
        let p = x(0, 3).mul(&x(1, 3)).unwrap();
        assert_eq!(p.to_text(), "x0*x1");
        assert_eq!(p.homogeneity(), Homogeneity::Homogeneous(2));
    }

    #[test]
    fn difference_of_squares() {
        let a = x(0, 2).add(&x(1, 2)).unwrap();
        let b = x(0, 2).sub(&x(1, 2)).unwrap();
        assert_eq!(a.mul(&b).unwrap().to_text(), "x0^2 - x1^2");
    }

    #[test]
    fn zero_absorbs() {
        let f = x(0, 3)
            .mul(&x(2, 3))
            .unwrap()
            .sub(&x(1, 3).pow(2).unwrap())
            .unwrap();
        let z = Polynomial::zero(3, Q);
        let p = f.mul(&z).unwrap();
        assert!(p.is_zero());
        assert_eq!(p.homogeneity(), Homogeneity::Zero);
        assert_eq!(f.to_text(), "x0*x2 - x1^2");
    }

    #[test]
    fn mixed_modes_rejected() {
        let a: Polynomial<Zp> = Polynomial::var(0, 2, FieldMode::Prime(7));
        let b: Polynomial<Zp> = Polynomial::var(0, 2, FieldMode::Prime(11));
        assert!(matches!(a.mul(&b), Err(Error::MixedFieldModes(_, _))));
        assert!(matches!(
            x(0, 2).mul(&x(0, 3)),
            Err(Error::VariableMismatch(2, 3))
        ));
    }

    #[test]
    fn inhomogeneous_marker() {
        let f = x(0, 2).add(&x(1, 2).pow(2).unwrap()).unwrap();
        assert_eq!(f.homogeneity(), Homogeneity::Inhomogeneous);
    }

    #[test]
    fn conversion_to_prime_field() {
        let f = x(0, 2).scale(&Rational::new(-3, 1).unwrap());
        let g: Polynomial<Zp> = f.convert(FieldMode::Prime(7)).unwrap();
        assert_eq!(g.terms()[0].1.value(), 4);
        let h = x(0, 2).scale(&Rational::new(1, 2).unwrap());
        assert!(h.convert::<Zp>(FieldMode::Prime(7)).is_err());
    }
}
