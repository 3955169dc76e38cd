//! Plain-text ideal format.
//!
//! ```text
//! ring n=4
//! x0*x2 - x1^2
//! x0*x3 - x1*x2
//! ```
//!
//! Blank lines and lines starting with `#` are ignored.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactalg::{Field, FieldMode, Monomial, Polynomial, Rational};

/// An ideal read from text, with integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealText {
    pub nvars: usize,
    pub generators: Vec<Polynomial<Rational>>,
}

pub fn parse_ideal(text: &str) -> Result<IdealText> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (lineno, header) = lines
        .next()
        .ok_or_else(|| Error::Parse("missing `ring n=<count>` header".into()))?;
    let nvars = header
        .strip_prefix("ring")
        .map(str::trim)
        .and_then(|r| r.strip_prefix("n"))
        .map(str::trim)
        .and_then(|r| r.strip_prefix('='))
        .map(str::trim)
        .and_then(|r| r.parse::<usize>().ok())
        .ok_or_else(|| Error::Parse(format!("line {lineno}: expected `ring n=<count>`")))?;
    let mut generators = Vec::new();
    for (lineno, line) in lines {
        let p = parse_polynomial(line, nvars)
            .map_err(|e| Error::Parse(format!("line {lineno}: {e}")))?;
        generators.push(p);
    }
    Ok(IdealText { nvars, generators })
}

pub fn write_ideal<F: Field>(nvars: usize, generators: &[Polynomial<F>]) -> String {
    let mut out = format!("ring n={nvars}\n");
    for g in generators {
        out.push_str(&g.to_text());
        out.push('\n');
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(BigInt),
    Var(usize),
    Star,
    Caret,
    Plus,
    Minus,
}

fn tokenize(s: &str) -> std::result::Result<Vec<Token>, String> {
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    let mut out = Vec::new();
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' => i += 1,
            '*' => {
                out.push(Token::Star);
                i += 1;
            }
            '^' => {
                out.push(Token::Caret);
                i += 1;
            }
            '+' => {
                out.push(Token::Plus);
                i += 1;
            }
            '-' => {
                out.push(Token::Minus);
                i += 1;
            }
            'x' => {
                let start = i + 1;
                i = start;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                if start == i {
                    return Err("variable `x` needs an index".into());
                }
                let idx: String = chars[start..i].iter().collect();
                out.push(Token::Var(idx.parse().map_err(|_| "bad variable index")?));
            }
            d if d.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let lit: String = chars[start..i].iter().collect();
                out.push(Token::Int(lit.parse().map_err(|_| "bad integer")?));
            }
            other => return Err(format!("unexpected character `{other}`")),
        }
    }
    Ok(out)
}

fn parse_polynomial(s: &str, nvars: usize) -> std::result::Result<Polynomial<Rational>, String> {
    let toks = tokenize(s)?;
    let mut pos = 0;
    let mut terms = Vec::new();
    let mut first = true;
    while pos < toks.len() || first {
        let mut sign = BigInt::one();
        match toks.get(pos) {
            Some(Token::Plus) => pos += 1,
            Some(Token::Minus) => {
                sign = -sign;
                pos += 1;
            }
            _ if !first => return Err("expected `+` or `-` between terms".into()),
            _ => {}
        }
        first = false;
        let (coef, exps) = parse_term(&toks, &mut pos, nvars)?;
        terms.push((Monomial::new(exps), sign * coef));
    }
    let mode = FieldMode::Rational;
    Ok(Polynomial::from_terms(
        nvars,
        mode,
        terms
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| (m, Rational::from_bigint(&c, mode)))
            .collect(),
    ))
}

fn parse_term(
    toks: &[Token],
    pos: &mut usize,
    nvars: usize,
) -> std::result::Result<(BigInt, Vec<u16>), String> {
    let mut coef = BigInt::one();
    let mut exps = vec![0u16; nvars];
    loop {
        match toks.get(*pos) {
            Some(Token::Int(v)) => {
                *pos += 1;
                let e = parse_exponent(toks, pos)?;
                coef *= num_traits::pow(v.clone(), e as usize);
            }
            Some(Token::Var(i)) => {
                if *i >= nvars {
                    return Err(format!("variable x{i} outside ring of {nvars} variables"));
                }
                let i = *i;
                *pos += 1;
                let e = parse_exponent(toks, pos)?;
                exps[i] = exps[i]
                    .checked_add(e)
                    .ok_or_else(|| "exponent overflow".to_string())?;
            }
            _ => return Err("expected a coefficient or variable".into()),
        }
        if toks.get(*pos) == Some(&Token::Star) {
            *pos += 1;
        } else {
            return Ok((coef, exps));
        }
    }
}

fn parse_exponent(toks: &[Token], pos: &mut usize) -> std::result::Result<u16, String> {
    if toks.get(*pos) != Some(&Token::Caret) {
        return Ok(1);
    }
    *pos += 1;
    match toks.get(*pos) {
        Some(Token::Int(v)) => {
            *pos += 1;
            u16::try_from(v.clone()).map_err(|_| "exponent too large".to_string())
        }
        _ => Err("expected an exponent after `^`".into()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_twisted_cubic() {
        let text = "ring n=4\nx0*x2 - x1^2\n# comment\n\nx0*x3 - x1*x2\nx1*x3-x2^2\n";
        let ideal = parse_ideal(text).unwrap();
        assert_eq!(ideal.nvars, 4);
        assert_eq!(ideal.generators.len(), 3);
        assert_eq!(ideal.generators[0].to_text(), "x0*x2 - x1^2");
        assert_eq!(
            write_ideal(4, &ideal.generators),
            "ring n=4\nx0*x2 - x1^2\nx0*x3 - x1*x2\nx1*x3 - x2^2\n"
        );
    }

    #[test]
    fn coefficients_and_powers() {
        let ideal = parse_ideal("ring n=2\n-3*x0^2*x1 + 2^3*x1^3\n").unwrap();
        assert_eq!(ideal.generators[0].to_text(), "-3*x0^2*x1 + 8*x1^3");
    }

    #[test]
    fn empty_ideal() {
        let ideal = parse_ideal("ring n=2\n").unwrap();
        assert_eq!(ideal.nvars, 2);
        assert!(ideal.generators.is_empty());
    }

    #[test]
    fn errors() {
        assert!(parse_ideal("").is_err());
        assert!(parse_ideal("ring 4\nx0").is_err());
        assert!(parse_ideal("ring n=2\nx2").is_err());
        assert!(parse_ideal("ring n=2\nx0 x1").is_err());
        assert!(parse_ideal("ring n=2\nx0 + y").is_err());
        assert!(parse_ideal("ring n=2\nx0^").is_err());
    }
}
