//! Classical root systems, parabolic subgroups and the anticanonical weight
//! of `G/P`.
//!
//! Weights are written in the basis of fundamental weights `ω_1..ω_r`
//! (1-based in text), roots in the basis of simple roots. The Cartan matrix
//! entry `a_ij` is `⟨α_i^∨, α_j⟩`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    A,
    B,
    C,
    D,
}

/// A simple factor such as `B3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SimpleType {
    pub family: Family,
    pub rank: usize,
}

impl SimpleType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let min = match family {
            Family::A => 1,
            Family::B | Family::C => 2,
            Family::D => 3,
        };
        if rank < min {
            return Err(Error::InvalidInput(format!(
                "{family:?}{rank} needs rank at least {min}"
            )));
        }
        Ok(SimpleType { family, rank })
    }

    fn cartan(&self) -> Vec<Vec<i64>> {
        let r = self.rank;
        let mut a = vec![vec![0i64; r]; r];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        let chain = |a: &mut Vec<Vec<i64>>, upto: usize| {
            for i in 0..upto.saturating_sub(1) {
                a[i][i + 1] = -1;
                a[i + 1][i] = -1;
            }
        };
        match self.family {
            Family::A => chain(&mut a, r),
            Family::B => {
                chain(&mut a, r);
                a[r - 1][r - 2] = -2;
            }
            Family::C => {
                chain(&mut a, r);
                a[r - 2][r - 1] = -2;
            }
            Family::D => {
                chain(&mut a, r - 1);
                a[r - 1][r - 3] = -1;
                a[r - 3][r - 1] = -1;
            }
        }
        a
    }

    /// Squared lengths `(α_i, α_i)`, normalized so the short roots have 2.
    fn lengths(&self) -> Vec<i64> {
        let r = self.rank;
        match self.family {
            Family::A | Family::D => vec![2; r],
            Family::B => (0..r).map(|i| if i == r - 1 { 2 } else { 4 }).collect(),
            Family::C => (0..r).map(|i| if i == r - 1 { 4 } else { 2 }).collect(),
        }
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

/// A product of simple types, e.g. `A1xA2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct RootType(pub Vec<SimpleType>);

impl RootType {
    pub fn rank(&self) -> usize {
        self.0.iter().map(|t| t.rank).sum()
    }
}

impl FromStr for RootType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let factors = s
            .split(['x', 'X', '×'])
            .map(|part| {
                let part = part.trim();
                let mut chars = part.chars();
                let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
                    Some('A') => Family::A,
                    Some('B') => Family::B,
                    Some('C') => Family::C,
                    Some('D') => Family::D,
                    _ => return Err(Error::Parse(format!("unknown root type `{part}`"))),
                };
                let rank: usize = chars
                    .as_str()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad rank in `{part}`")))?;
                SimpleType::new(family, rank)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(RootType(factors))
    }
}

impl fmt::Display for RootType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|t| t.to_string()).collect();
        f.write_str(&parts.join("x"))
    }
}

/// Parses a weight such as `0,1,0` (fundamental-weight coordinates).
pub fn parse_weight(s: &str) -> Result<Vec<i64>> {
    s.split(',')
        .map(|c| {
            c.trim()
                .parse::<i64>()
                .map_err(|_| Error::Parse(format!("bad weight coordinate `{}`", c.trim())))
        })
        .collect()
}

/// Renders a weight as `2*w1 + 3*w2`.
pub fn format_weight(w: &[i64]) -> String {
    let mut out = String::new();
    for (i, &c) in w.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let sign = if c < 0 { "-" } else { "+" };
        if out.is_empty() {
            if c < 0 {
                out.push('-');
            }
        } else {
            out.push_str(&format!(" {sign} "));
        }
        if c.abs() != 1 {
            out.push_str(&format!("{}*", c.abs()));
        }
        out.push_str(&format!("w{}", i + 1));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    root_type: RootType,
    cartan: Vec<Vec<i64>>,
    lengths: Vec<i64>,
    factor_of: Vec<usize>,
    positive: Vec<Vec<i64>>,
}

pub fn build_root_system(root_type: &RootType) -> Result<RootSystem> {
    if root_type.0.is_empty() {
        return Err(Error::InvalidInput("empty root type".into()));
    }
    let r = root_type.rank();
    let mut cartan = vec![vec![0i64; r]; r];
    let mut lengths = Vec::with_capacity(r);
    let mut factor_of = Vec::with_capacity(r);
    let mut off = 0;
    for (f, t) in root_type.0.iter().enumerate() {
        for (i, row) in t.cartan().into_iter().enumerate() {
            for (j, v) in row.into_iter().enumerate() {
                cartan[off + i][off + j] = v;
            }
        }
        lengths.extend(t.lengths());
        factor_of.extend(std::iter::repeat_n(f, t.rank));
        off += t.rank;
    }
    let positive = positive_roots(&cartan);
    Ok(RootSystem {
        root_type: root_type.clone(),
        cartan,
        lengths,
        factor_of,
        positive,
    })
}

/// Closure of the simple roots under root strings, height by height: with
/// `p` the largest `k` such that `β - kα_i` is a root, `β + α_i` is a root
/// iff `p - ⟨β, α_i^∨⟩ > 0`.
fn positive_roots(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let r = cartan.len();
    let mut all: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut level: Vec<Vec<i64>> = (0..r)
        .map(|i| {
            let mut e = vec![0; r];
            e[i] = 1;
            e
        })
        .collect();
    all.extend(level.iter().cloned());
    while !level.is_empty() {
        let mut next: BTreeSet<Vec<i64>> = BTreeSet::new();
        for beta in &level {
            for i in 0..r {
                let pairing: i64 = (0..r).map(|j| cartan[i][j] * beta[j]).sum();
                let mut p = 0;
                let mut down = beta.clone();
                loop {
                    down[i] -= 1;
                    if all.contains(&down) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                if p - pairing > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if !all.contains(&up) {
                        next.insert(up);
                    }
                }
            }
        }
        all.extend(next.iter().cloned());
        level = next.into_iter().collect();
    }
    let mut roots: Vec<Vec<i64>> = all.into_iter().collect();
    roots.sort_by_key(|b| (b.iter().sum::<i64>(), std::cmp::Reverse(b.clone())));
    roots
}

impl RootSystem {
    pub fn root_type(&self) -> &RootType {
        &self.root_type
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// Positive roots in simple-root coordinates, by height.
    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive
    }

    /// Inverse Cartan matrix; row `i` gives `ω_i` in simple-root coordinates
    /// when the matrix is read as `A^{-1}` acting on columns.
    pub fn inverse_cartan(&self) -> Vec<Vec<BigRational>> {
        let r = self.rank();
        let mut m: Vec<Vec<BigRational>> = (0..r)
            .map(|i| {
                (0..2 * r)
                    .map(|j| {
                        let v = if j < r {
                            self.cartan[i][j]
                        } else {
                            (j - r == i) as i64
                        };
                        BigRational::from_integer(BigInt::from(v))
                    })
                    .collect()
            })
            .collect();
        for c in 0..r {
            let piv = (c..r)
                .find(|&i| !m[i][c].is_zero())
                .expect("Cartan matrix is invertible");
            m.swap(c, piv);
            let inv = m[c][c].recip();
            for v in m[c].iter_mut() {
                *v = &*v * &inv;
            }
            for i in 0..r {
                if i != c && !m[i][c].is_zero() {
                    let f = m[i][c].clone();
                    let row_c = m[c].clone();
                    for (v, w) in m[i].iter_mut().zip(row_c) {
                        *v = &*v - &f * w;
                    }
                }
            }
        }
        m.into_iter().map(|row| row[r..].to_vec()).collect()
    }

    /// `⟨β, α_i^∨⟩` for every `i`: the fundamental-weight coordinates of a
    /// root-lattice element.
    pub fn to_weight(&self, beta: &[i64]) -> Vec<i64> {
        self.cartan
            .iter()
            .map(|row| row.iter().zip(beta).map(|(a, b)| a * b).sum())
            .collect()
    }

    fn check_weight(&self, lambda: &[i64]) -> Result<()> {
        if lambda.len() != self.rank() {
            return Err(Error::InvalidInput(format!(
                "weight has {} coordinates, root system has rank {}",
                lambda.len(),
                self.rank()
            )));
        }
        if lambda.iter().any(|&c| c < 0) {
            return Err(Error::InvalidInput("weight is not dominant".into()));
        }
        for f in 0..self.root_type.0.len() {
            if (0..self.rank())
                .filter(|&i| self.factor_of[i] == f)
                .all(|i| lambda[i] == 0)
            {
                return Err(Error::IllPosed(format!(
                    "weight vanishes on factor {}",
                    self.root_type.0[f]
                )));
            }
        }
        Ok(())
    }

    /// Simple roots of the Levi factor of the parabolic defined by `λ`:
    /// those `α_i` with `λ_i = 0`.
    pub fn parabolic_levi(&self, lambda: &[i64]) -> Result<Vec<usize>> {
        self.check_weight(lambda)?;
        Ok((0..self.rank()).filter(|&i| lambda[i] == 0).collect())
    }

    /// Positive roots outside the Levi factor.
    pub fn nilradical(&self, lambda: &[i64]) -> Result<Vec<Vec<i64>>> {
        self.check_weight(lambda)?;
        Ok(self
            .positive
            .iter()
            .filter(|b| b.iter().zip(lambda).any(|(c, l)| *c > 0 && *l > 0))
            .cloned()
            .collect())
    }

    /// `dim G/P`.
    pub fn flag_dimension(&self, lambda: &[i64]) -> Result<usize> {
        Ok(self.nilradical(lambda)?.len())
    }

    /// Anticanonical weight `κ` of `G/P`: the sum of the nilradical roots,
    /// in fundamental-weight coordinates.
    pub fn canonical_weight(&self, lambda: &[i64]) -> Result<Vec<i64>> {
        let mut sum = vec![0i64; self.rank()];
        for b in self.nilradical(lambda)? {
            for (s, c) in sum.iter_mut().zip(&b) {
                *s += c;
            }
        }
        Ok(self.to_weight(&sum))
    }

    /// `κ = N·λ` with `N` a positive integer.
    pub fn subcanonicity_test(&self, lambda: &[i64]) -> Result<Subcanonicity> {
        let kappa = self.canonical_weight(lambda)?;
        let mut ratio: Option<BigRational> = None;
        let mut consistent = true;
        for (k, l) in kappa.iter().zip(lambda) {
            if *l == 0 {
                consistent &= *k == 0;
                continue;
            }
            let r = BigRational::new(BigInt::from(*k), BigInt::from(*l));
            match &ratio {
                None => ratio = Some(r),
                Some(prev) => consistent &= *prev == r,
            }
        }
        let n = ratio
            .filter(|r| consistent && r.is_integer() && *r >= BigRational::one())
            .and_then(|r| r.to_integer().to_u64());
        Ok(Subcanonicity { kappa, n })
    }

    /// Weyl dimension formula `Π_{β>0} (λ+ρ, β) / (ρ, β)`.
    pub fn weyl_dimension(&self, lambda: &[i64]) -> Result<BigInt> {
        if lambda.len() != self.rank() || lambda.iter().any(|&c| c < 0) {
            return Err(Error::InvalidInput(
                "weight must be dominant of full rank".into(),
            ));
        }
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for b in &self.positive {
            // (ω_j, α_j) = |α_j|^2 / 2; the common factor cancels
            let top: i64 = b
                .iter()
                .enumerate()
                .map(|(j, c)| c * (lambda[j] + 1) * self.lengths[j])
                .sum();
            let bottom: i64 = b.iter().enumerate().map(|(j, c)| c * self.lengths[j]).sum();
            num *= top;
            den *= bottom;
        }
        let q = BigRational::new(num, den);
        if !q.is_integer() {
            return Err(Error::Internal("Weyl dimension is not an integer".into()));
        }
        Ok(q.to_integer())
    }
}

/// Verdict of [`RootSystem::subcanonicity_test`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Subcanonicity {
    pub kappa: Vec<i64>,
    /// `Some(N)` when `κ = N·λ` with `N >= 1`.
    pub n: Option<u64>,
}

impl Subcanonicity {
    pub fn holds(&self) -> bool {
        self.n.is_some()
    }

    /// `subcanonical: yes, N=4, kappa=4*w2`.
    pub fn summary(&self) -> String {
        match self.n {
            Some(n) => format!(
                "subcanonical: yes, N={n}, kappa={}",
                format_weight(&self.kappa)
            ),
            None => format!("subcanonical: no, kappa={}", format_weight(&self.kappa)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn system(s: &str) -> RootSystem {
        build_root_system(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn root_counts() {
        for (t, count) in [
            ("A1", 1),
            ("A3", 6),
            ("A4", 10),
            ("B2", 4),
            ("B3", 9),
            ("C3", 9),
            ("C4", 16),
            ("D4", 12),
            ("D5", 20),
            ("A1xA2", 4),
        ] {
            assert_eq!(system(t).positive_roots().len(), count, "{t}");
        }
    }

    #[test]
    fn highest_roots() {
        assert_eq!(
            system("B3").positive_roots().last().unwrap(),
            &vec![1, 2, 2]
        );
        assert_eq!(
            system("C3").positive_roots().last().unwrap(),
            &vec![2, 2, 1]
        );
        assert_eq!(
            system("D4").positive_roots().last().unwrap(),
            &vec![1, 2, 1, 1]
        );
    }

    #[test]
    fn grassmannian_of_planes_in_four_space() {
        let s = system("A3");
        let v = s.subcanonicity_test(&[0, 1, 0]).unwrap();
        assert_eq!(v.kappa, vec![0, 4, 0]);
        assert_eq!(v.n, Some(4));
        assert_eq!(v.summary(), "subcanonical: yes, N=4, kappa=4*w2");
        assert_eq!(s.flag_dimension(&[0, 1, 0]).unwrap(), 4);
    }

    #[test]
    fn projective_plane_and_veronese() {
        let s = system("A2");
        assert_eq!(s.canonical_weight(&[1, 0]).unwrap(), vec![3, 0]);
        assert_eq!(
            s.subcanonicity_test(&[2, 0]).unwrap().summary(),
            "subcanonical: no, kappa=3*w1"
        );
        assert_eq!(s.subcanonicity_test(&[3, 0]).unwrap().n, Some(1));
    }

    #[test]
    fn segre_line_times_plane() {
        let s = system("A1xA2");
        let v = s.subcanonicity_test(&[1, 1, 0]).unwrap();
        assert_eq!(v.kappa, vec![2, 3, 0]);
        assert_eq!(v.n, None);
        assert!(matches!(
            s.subcanonicity_test(&[1, 0, 0]),
            Err(Error::IllPosed(_))
        ));
    }

    #[test]
    fn full_flags_are_twice_rho() {
        let s = system("B3");
        assert_eq!(s.canonical_weight(&[1, 1, 1]).unwrap(), vec![2, 2, 2]);
        assert_eq!(s.subcanonicity_test(&[1, 1, 1]).unwrap().n, Some(2));
    }

    #[test]
    fn weyl_dimensions() {
        assert_eq!(system("A2").weyl_dimension(&[2, 0]).unwrap(), 6.into());
        assert_eq!(
            system("A4").weyl_dimension(&[0, 1, 0, 0]).unwrap(),
            10.into()
        );
        assert_eq!(system("B3").weyl_dimension(&[0, 0, 1]).unwrap(), 8.into());
        assert_eq!(system("C3").weyl_dimension(&[1, 0, 0]).unwrap(), 6.into());
        assert_eq!(
            system("D4").weyl_dimension(&[0, 1, 0, 0]).unwrap(),
            28.into()
        );
    }

    #[test]
    fn inverse_cartan_times_cartan() {
        let s = system("D4");
        let inv = s.inverse_cartan();
        for (i, row) in inv.iter().enumerate() {
            for j in 0..4 {
                let v: BigRational = (0..4)
                    .map(|k| &row[k] * BigRational::from_integer(s.cartan()[k][j].into()))
                    .sum();
                assert_eq!(v, BigRational::from_integer(((i == j) as i64).into()));
            }
        }
    }

    #[test]
    fn parsing() {
        assert!("E6".parse::<RootType>().is_err());
        assert!("B1".parse::<RootType>().is_err());
        assert_eq!("a1xA2".parse::<RootType>().unwrap().to_string(), "A1xA2");
        assert_eq!(parse_weight("0, 1,0").unwrap(), vec![0, 1, 0]);
        assert!(parse_weight("0,a").is_err());
        assert_eq!(format_weight(&[2, -1, 0, 1]), "2*w1 - w2 + w4");
        assert_eq!(format_weight(&[0, 0]), "0");
        assert!(matches!(
            system("A2").parabolic_levi(&[1]),
            Err(Error::InvalidInput(_))
        ));
        assert!(matches!(
            system("A2").parabolic_levi(&[-1, 2]),
            Err(Error::InvalidInput(_))
        ));
    }
}
