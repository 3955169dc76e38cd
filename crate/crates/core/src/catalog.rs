//! Built-in embeddings: Veronese, Segre, Plücker `Gr(2,n)` and a
//! complete intersection of two quadrics.
//!
//! Variable orders are fixed so exported ideals are stable:
//! Veronese variables follow the degree-`d` exponent vectors in descending
//! lexicographic order (`x0 = t0^d`), Segre variables are the entries of the
//! generic matrix in row-major order, and Plücker coordinates `p_ij`
//! (`i < j`) are in lexicographic order of the pair.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::{Field, FieldMode, Monomial, Polynomial, Rational, DEFAULT_PRIME};
use crate::groebner::write_ideal;
use crate::rootsys::{Family as RootFamily, RootType, SimpleType};

const Q: FieldMode = FieldMode::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    Veronese {
        m: usize,
        d: usize,
    },
    Segre {
        m1: usize,
        m2: usize,
    },
    Plucker2 {
        nn: usize,
    },
    /// `x_i^{d_i} - x_{k+i}^{d_i}` in `2k` variables.
    CompleteIntersection {
        degrees: Vec<usize>,
    },
}

/// Closed-form answer to "is `K_X = O_X(-N)` for some `N >= 1`".
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ClassicalSubcanonical {
    pub applies: bool,
    pub holds: bool,
    #[serde(rename = "N")]
    pub n: Option<u64>,
}

impl ClassicalSubcanonical {
    pub fn not_applicable() -> Self {
        ClassicalSubcanonical {
            applies: false,
            holds: false,
            n: None,
        }
    }

    fn from_ratio(num: usize, den: usize) -> Self {
        let holds = num.is_multiple_of(den) && num >= den;
        ClassicalSubcanonical {
            applies: true,
            holds,
            n: holds.then(|| (num / den) as u64),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub id: String,
    pub family: Family,
    pub nvars: usize,
    pub generators: Vec<Polynomial<Rational>>,
    pub expected_dim: usize,
    pub classical: ClassicalSubcanonical,
    /// Semisimple type and highest weight for orbit entries.
    pub root_data: Option<(RootType, Vec<i64>)>,
    /// Field used by the standard verification run.
    pub default_field: FieldMode,
    pub note: Option<String>,
}

/// Core entries, verified over Q and mod p.
pub const CORE_IDS: [&str; 8] = [
    "veronese:1,2",
    "veronese:1,3",
    "veronese:1,4",
    "veronese:2,2",
    "segre:1,1",
    "segre:1,2",
    "plucker2:4",
    "ci:2,2",
];

/// Larger entries, verified mod p only.
pub const STRETCH_IDS: [&str; 2] = ["plucker2:5", "veronese:3,2"];

/// The standard catalog: core entries then stretch entries.
pub fn standard() -> Vec<CatalogEntry> {
    CORE_IDS
        .iter()
        .chain(STRETCH_IDS.iter())
        .map(|id| lookup(id).expect("built-in id parses"))
        .collect()
}

pub fn is_stretch(id: &str) -> bool {
    STRETCH_IDS.contains(&id)
}

fn parse_params(s: &str, count: usize, id: &str) -> Result<Vec<usize>> {
    let v = s
        .split(',')
        .map(|x| x.trim().parse::<usize>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|_| Error::Parse(format!("bad parameters in `{id}`")))?;
    if count > 0 && v.len() != count {
        return Err(Error::Parse(format!("`{id}` needs {count} parameters")));
    }
    Ok(v)
}

/// Builds an entry from an id such as `veronese:1,3`, `segre:1,2`,
/// `plucker2:5` or `ci:2,2`.
pub fn lookup(id: &str) -> Result<CatalogEntry> {
    let (family, params) = id
        .split_once(':')
        .ok_or_else(|| Error::Parse(format!("catalog id `{id}` needs `family:params`")))?;
    match family {
        "veronese" => {
            let p = parse_params(params, 2, id)?;
            veronese_ideal(p[0], p[1])
        }
        "segre" => {
            let p = parse_params(params, 2, id)?;
            segre_ideal(p[0], p[1])
        }
        "plucker2" => {
            let p = parse_params(params, 1, id)?;
            plucker2_ideal(p[0])
        }
        "ci" => complete_intersection(&parse_params(params, 0, id)?),
        _ => Err(Error::Parse(format!("unknown catalog family `{family}`"))),
    }
}

fn default_field(id: &str) -> FieldMode {
    if is_stretch(id) {
        FieldMode::Prime(DEFAULT_PRIME)
    } else {
        Q
    }
}

/// Exponent vectors of degree `d` in `k` variables, lex-descending.
pub fn multi_indices(k: usize, d: usize) -> Vec<Vec<u16>> {
    fn rec(k: usize, d: usize, prefix: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
        if k == 1 {
            prefix.push(d as u16);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=d).rev() {
            prefix.push(e as u16);
            rec(k - 1, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(k, d, &mut Vec::new(), &mut out);
    out
}

fn binomial(n: usize, a: usize, b: usize, c: usize, d: usize) -> Polynomial<Rational> {
    let mut e1 = vec![0u16; n];
    e1[a] += 1;
    e1[b] += 1;
    let mut e2 = vec![0u16; n];
    e2[c] += 1;
    e2[d] += 1;
    Polynomial::from_int_terms(n, Q, &[(1, &e1), (-1, &e2)])
}

pub fn veronese_ideal(m: usize, d: usize) -> Result<CatalogEntry> {
    if m < 1 || d < 1 {
        return Err(Error::InvalidInput(
            "veronese needs m >= 1 and d >= 1".into(),
        ));
    }
    let idx = multi_indices(m + 1, d);
    let n = idx.len();
    // all pairs {u, v} grouped by u + v
    let mut by_sum: BTreeMap<Vec<u16>, Vec<(usize, usize)>> = BTreeMap::new();
    for a in 0..n {
        for b in a..n {
            let s: Vec<u16> = idx[a].iter().zip(&idx[b]).map(|(x, y)| x + y).collect();
            by_sum.entry(s).or_default().push((a, b));
        }
    }
    let mut generators = Vec::new();
    for pairs in by_sum.values().rev() {
        for i in 0..pairs.len() {
            for j in i + 1..pairs.len() {
                let ((a, b), (c, e)) = (pairs[i], pairs[j]);
                generators.push(binomial(n, a, b, c, e));
            }
        }
    }
    let id = format!("veronese:{m},{d}");
    let mut lambda = vec![0i64; m];
    lambda[0] = d as i64;
    Ok(CatalogEntry {
        default_field: default_field(&id),
        id,
        family: Family::Veronese { m, d },
        nvars: n,
        generators,
        expected_dim: m + 1,
        classical: ClassicalSubcanonical::from_ratio(m + 1, d),
        root_data: Some((RootType(vec![SimpleType::new(RootFamily::A, m)?]), lambda)),
        note: None,
    })
}

pub fn segre_ideal(m1: usize, m2: usize) -> Result<CatalogEntry> {
    if m1 < 1 || m2 < 1 {
        return Err(Error::InvalidInput("segre needs m1, m2 >= 1".into()));
    }
    let (r, c) = (m1 + 1, m2 + 1);
    let n = r * c;
    let var = |i: usize, j: usize| i * c + j;
    let mut generators = Vec::new();
    for i in 0..r {
        for k in i + 1..r {
            for j in 0..c {
                for l in j + 1..c {
                    generators.push(binomial(n, var(i, j), var(k, l), var(i, l), var(k, j)));
                }
            }
        }
    }
    let id = format!("segre:{m1},{m2}");
    let classical = if m1 == m2 {
        ClassicalSubcanonical {
            applies: true,
            holds: true,
            n: Some(m1 as u64 + 1),
        }
    } else {
        ClassicalSubcanonical {
            applies: true,
            holds: false,
            n: None,
        }
    };
    let mut lambda = vec![0i64; m1 + m2];
    lambda[0] = 1;
    lambda[m1] = 1;
    Ok(CatalogEntry {
        default_field: default_field(&id),
        id,
        family: Family::Segre { m1, m2 },
        nvars: n,
        generators,
        expected_dim: m1 + m2 + 1,
        classical,
        root_data: Some((
            RootType(vec![
                SimpleType::new(RootFamily::A, m1)?,
                SimpleType::new(RootFamily::A, m2)?,
            ]),
            lambda,
        )),
        note: None,
    })
}

/// Index of `p_ij` (`i < j`) among the lexicographically ordered pairs.
pub fn plucker_index(nn: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < nn);
    i * nn - i * (i + 1) / 2 + (j - i - 1)
}

pub fn plucker2_ideal(nn: usize) -> Result<CatalogEntry> {
    if nn < 4 {
        return Err(Error::InvalidInput("plucker2 needs nn >= 4".into()));
    }
    let n = nn * (nn - 1) / 2;
    let p = |i: usize, j: usize| plucker_index(nn, i, j);
    let mut generators = Vec::new();
    for i in 0..nn {
        for j in i + 1..nn {
            for k in j + 1..nn {
                for l in k + 1..nn {
                    let term = |a: usize, b: usize| {
                        let mut e = vec![0u16; n];
                        e[a] += 1;
                        e[b] += 1;
                        e
                    };
                    let (t1, t2, t3) = (
                        term(p(i, j), p(k, l)),
                        term(p(i, k), p(j, l)),
                        term(p(i, l), p(j, k)),
                    );
                    generators.push(Polynomial::from_int_terms(
                        n,
                        Q,
                        &[(1, &t1), (-1, &t2), (1, &t3)],
                    ));
                }
            }
        }
    }
    let id = format!("plucker2:{nn}");
    let mut lambda = vec![0i64; nn - 1];
    lambda[1] = 1;
    Ok(CatalogEntry {
        default_field: default_field(&id),
        id,
        family: Family::Plucker2 { nn },
        nvars: n,
        generators,
        expected_dim: 2 * (nn - 2) + 1,
        classical: ClassicalSubcanonical {
            applies: true,
            holds: true,
            n: Some(nn as u64),
        },
        root_data: Some((
            RootType(vec![SimpleType::new(RootFamily::A, nn - 1)?]),
            lambda,
        )),
        note: None,
    })
}

pub fn complete_intersection(degrees: &[usize]) -> Result<CatalogEntry> {
    if degrees.is_empty() || degrees.iter().any(|&d| d < 1) {
        return Err(Error::InvalidInput("ci needs positive degrees".into()));
    }
    let k = degrees.len();
    let n = 2 * k;
    let generators = degrees
        .iter()
        .enumerate()
        .map(|(i, &d)| {
            let mut a = vec![0u16; n];
            a[i] = d as u16;
            let mut b = vec![0u16; n];
            b[k + i] = d as u16;
            Polynomial::from_int_terms(n, Q, &[(1, &a), (-1, &b)])
        })
        .collect();
    let id = format!(
        "ci:{}",
        degrees
            .iter()
            .map(|d| d.to_string())
            .collect::<Vec<_>>()
            .join(",")
    );
    let excess = n as i64 - degrees.iter().sum::<usize>() as i64;
    Ok(CatalogEntry {
        default_field: default_field(&id),
        id,
        family: Family::CompleteIntersection {
            degrees: degrees.to_vec(),
        },
        nvars: n,
        generators,
        expected_dim: n - k,
        classical: ClassicalSubcanonical::not_applicable(),
        root_data: None,
        note: Some(format!(
            "reducible complete intersection with K_X = O_X({}); no classical N >= 1 is recorded",
            -excess
        )),
    })
}

/// The closed-form subcanonicity data of a built-in entry.
pub fn classical_subcanonical(entry: &CatalogEntry) -> Result<(bool, Option<u64>)> {
    if !entry.classical.applies {
        return Err(Error::NotApplicable(format!(
            "{} has no classical subcanonicity data",
            entry.id
        )));
    }
    Ok((entry.classical.holds, entry.classical.n))
}

impl CatalogEntry {
    /// Monomial parameterization in an auxiliary polynomial ring; every
    /// generator vanishes after substitution.
    pub fn parameterization(&self) -> Option<Vec<Polynomial<Rational>>> {
        match &self.family {
            Family::Veronese { m, d } => {
                let k = m + 1;
                Some(
                    multi_indices(k, *d)
                        .into_iter()
                        .map(|u| Polynomial::monomial(Monomial::new(u), Rational::from_i64(1, Q)))
                        .collect(),
                )
            }
            Family::Segre { m1, m2 } => {
                let k = m1 + m2 + 2;
                let mut out = Vec::new();
                for i in 0..=*m1 {
                    for j in 0..=*m2 {
                        let mut e = vec![0u16; k];
                        e[i] = 1;
                        e[m1 + 1 + j] = 1;
                        out.push(Polynomial::monomial(
                            Monomial::new(e),
                            Rational::from_i64(1, Q),
                        ));
                    }
                }
                Some(out)
            }
            Family::Plucker2 { nn } => {
                let k = 2 * nn;
                let mut out = Vec::new();
                for i in 0..*nn {
                    for j in i + 1..*nn {
                        // a_i b_j - a_j b_i
                        let mut e1 = vec![0u16; k];
                        e1[i] = 1;
                        e1[nn + j] = 1;
                        let mut e2 = vec![0u16; k];
                        e2[j] = 1;
                        e2[nn + i] = 1;
                        out.push(Polynomial::from_int_terms(k, Q, &[(1, &e1), (-1, &e2)]));
                    }
                }
                Some(out)
            }
            Family::CompleteIntersection { .. } => None,
        }
    }

    pub fn export(&self) -> String {
        write_ideal(self.nvars, &self.generators)
    }

    /// `id  n  #gens  dim  subcanonical[N]`.
    pub fn list_line(&self) -> String {
        let sub = match (self.classical.applies, self.classical.n) {
            (false, _) => "n/a".to_string(),
            (true, Some(n)) => format!("yes[{n}]"),
            (true, None) => "no".to_string(),
        };
        format!(
            "{:<14} {:>3} {:>4} {:>3}  {}",
            self.id,
            self.nvars,
            self.generators.len(),
            self.expected_dim,
            sub
        )
    }
}

/// Text of `catalog list`.
pub fn list() -> String {
    let mut out = format!(
        "{:<14} {:>3} {:>4} {:>3}  {}\n",
        "id", "n", "gens", "dim", "subcanonical[N]"
    );
    for e in standard() {
        let _ = writeln!(out, "{}", e.list_line());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_counts() {
        for (id, n, gens, dim) in [
            ("veronese:1,2", 3, 1, 2),
            ("veronese:1,3", 4, 3, 2),
            ("veronese:2,2", 6, 6, 3),
            ("segre:1,1", 4, 1, 3),
            ("segre:1,2", 6, 3, 4),
            ("segre:2,2", 9, 9, 5),
            ("plucker2:4", 6, 1, 5),
            ("plucker2:5", 10, 5, 7),
            ("plucker2:6", 15, 15, 9),
            ("ci:2,2", 4, 2, 2),
        ] {
            let e = lookup(id).unwrap();
            assert_eq!(
                (e.nvars, e.generators.len(), e.expected_dim),
                (n, gens, dim),
                "{id}"
            );
        }
    }

    #[test]
    fn conic_and_twisted_cubic_text() {
        assert_eq!(
            lookup("veronese:1,2").unwrap().export(),
            "ring n=3\nx0*x2 - x1^2\n"
        );
        let cubic = lookup("veronese:1,3").unwrap().export();
        for g in ["x0*x2 - x1^2", "x0*x3 - x1*x2", "x1*x3 - x2^2"] {
            assert!(
                cubic.lines().any(|l| l == g) || cubic.lines().any(|l| l == format!("-{g}")),
                "{cubic}"
            );
        }
    }

    #[test]
    fn classical_answers() {
        assert_eq!(
            classical_subcanonical(&lookup("veronese:3,2").unwrap()).unwrap(),
            (true, Some(2))
        );
        assert_eq!(
            classical_subcanonical(&lookup("veronese:1,4").unwrap()).unwrap(),
            (false, None)
        );
        assert_eq!(
            classical_subcanonical(&lookup("segre:1,1").unwrap()).unwrap(),
            (true, Some(2))
        );
        assert_eq!(
            classical_subcanonical(&lookup("veronese:1,2").unwrap()).unwrap(),
            (true, Some(1))
        );
        assert!(matches!(
            classical_subcanonical(&lookup("ci:2,2").unwrap()),
            Err(Error::NotApplicable(_))
        ));
    }

    #[test]
    fn plucker_indexing() {
        let pairs: Vec<usize> = (0..5)
            .flat_map(|i| (i + 1..5).map(move |j| plucker_index(5, i, j)))
            .collect();
        assert_eq!(pairs, (0..10).collect::<Vec<_>>());
    }

    #[test]
    fn bad_ids() {
        assert!(lookup("veronese:1").is_err());
        assert!(lookup("grassmann:2,5").is_err());
        assert!(lookup("plucker2:3").is_err());
        assert!(lookup("segre").is_err());
    }

    #[test]
    fn list_shape() {
        let text = list();
        assert_eq!(text.lines().count(), 11);
        assert!(text.contains("plucker2:4       6    1   5  yes[4]"));
    }
}
