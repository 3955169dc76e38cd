use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::Monomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OrderKind {
    DegRevLex,
    Lex,
}

/// A monomial order together with a variable precedence.
///
/// `precedence[0]` is the largest variable. The identity precedence gives
/// `x0 > x1 > ... > x{n-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    kind: OrderKind,
    precedence: Vec<usize>,
}

impl MonomialOrder {
    pub fn grevlex(nvars: usize) -> Self {
        MonomialOrder {
            kind: OrderKind::DegRevLex,
            precedence: (0..nvars).collect(),
        }
    }

    pub fn lex(nvars: usize) -> Self {
        MonomialOrder {
            kind: OrderKind::Lex,
            precedence: (0..nvars).collect(),
        }
    }

    /// Panics unless `precedence` is a permutation of `0..n`.
    pub fn with_precedence(kind: OrderKind, precedence: Vec<usize>) -> Self {
        let mut seen = vec![false; precedence.len()];
        for &v in &precedence {
            assert!(
                v < seen.len() && !seen[v],
                "precedence must be a permutation"
            );
            seen[v] = true;
        }
        MonomialOrder { kind, precedence }
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn nvars(&self) -> usize {
        self.precedence.len()
    }

    pub fn precedence(&self) -> &[usize] {
        &self.precedence
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (ea, eb) = (a.exps(), b.exps());
        match self.kind {
            OrderKind::Lex => {
                for &v in &self.precedence {
                    match ea[v].cmp(&eb[v]) {
                        Ordering::Equal => continue,
                        o => return o,
                    }
                }
                Ordering::Equal
            }
            OrderKind::DegRevLex => {
                match a.degree().cmp(&b.degree()) {
                    Ordering::Equal => {}
                    o => return o,
                }
                for &v in self.precedence.iter().rev() {
                    match ea[v].cmp(&eb[v]) {
                        Ordering::Equal => continue,
                        o => return o.reverse(),
                    }
                }
                Ordering::Equal
            }
        }
    }

    /// A key whose lexicographic order agrees with [`MonomialOrder::cmp`].
    pub fn key(&self, m: &Monomial) -> Vec<i32> {
        let e = m.exps();
        match self.kind {
            OrderKind::Lex => self.precedence.iter().map(|&v| e[v] as i32).collect(),
            OrderKind::DegRevLex => std::iter::once(m.degree() as i32)
                .chain(self.precedence.iter().rev().map(|&v| -(e[v] as i32)))
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u16]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn grevlex_twisted_cubic_leads() {
        let o = MonomialOrder::grevlex(4);
        assert_eq!(
            o.cmp(&m(&[0, 2, 0, 0]), &m(&[1, 0, 1, 0])),
            Ordering::Greater
        );
        assert_eq!(
            o.cmp(&m(&[0, 1, 1, 0]), &m(&[1, 0, 0, 1])),
            Ordering::Greater
        );
        assert_eq!(
            o.cmp(&m(&[0, 0, 2, 0]), &m(&[0, 1, 0, 1])),
            Ordering::Greater
        );
        assert_eq!(o.cmp(&m(&[0, 0, 0, 0]), &m(&[0, 0, 0, 1])), Ordering::Less);
    }

    #[test]
    fn key_agrees_with_cmp() {
        let monos: Vec<Monomial> = (0..3u16)
            .flat_map(|a| (0..3u16).flat_map(move |b| (0..3u16).map(move |c| m(&[a, b, c]))))
            .collect();
        for o in [
            MonomialOrder::grevlex(3),
            MonomialOrder::lex(3),
            MonomialOrder::with_precedence(OrderKind::DegRevLex, vec![2, 0, 1]),
        ] {
            for a in &monos {
                for b in &monos {
                    assert_eq!(o.cmp(a, b), o.key(a).cmp(&o.key(b)));
                }
            }
        }
    }

    #[test]
    fn multiplicative() {
        let o = MonomialOrder::grevlex(3);
        let (a, b, c) = (m(&[2, 0, 1]), m(&[1, 2, 0]), m(&[0, 1, 3]));
        assert_eq!(o.cmp(&a, &b), o.cmp(&a.mul(&c), &b.mul(&c)));
    }
}
