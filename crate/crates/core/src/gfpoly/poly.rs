use std::cmp::Ordering;
use std::fmt;

use super::field::{FieldElem, FieldSpec};
use crate::{Error, Result};

/// A univariate polynomial over `F_q`, coefficients stored constant term
/// first with no trailing zeros. The zero polynomial has no coefficients.
///
/// Ordering is by degree, then by coefficient codes read from the leading
/// term down; over a fixed degree this is the order in which
/// [`enumerate_monic`](super::enumerate_monic) yields polynomials.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<FieldElem>,
}

impl Poly {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self { coeffs: vec![1] }
    }

    pub fn x() -> Self {
        Self { coeffs: vec![0, 1] }
    }

    pub fn constant(c: FieldElem) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `x^k`.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = 1;
        Self { coeffs }
    }

    /// Builds a polynomial from coefficients, constant term first.
    pub fn from_coeffs(mut coeffs: Vec<FieldElem>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElem {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> FieldElem {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    /// `|f| = q^{deg f}` as a `u128`, or `None` on overflow or for zero.
    pub fn norm(&self, q: u32) -> Option<u128> {
        (q as u128).checked_pow(self.degree()? as u32)
    }

    /// Parses the text form `c*x^k + x^k + x + c ...`. Coefficients are
    /// decimal element codes in `[0, q)`; repeated degrees are summed.
    pub fn parse(text: &str, field: &FieldSpec) -> Result<Self> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty input".into()));
        }
        let mut coeffs: Vec<FieldElem> = Vec::new();
        for term in compact.split('+') {
            let (c, k) = parse_term(term, field.q())?;
            if coeffs.len() <= k {
                coeffs.resize(k + 1, 0);
            }
            coeffs[k] = field.add(coeffs[k], c);
        }
        Ok(Self::from_coeffs(coeffs))
    }
}

fn parse_term(term: &str, q: u32) -> Result<(FieldElem, usize)> {
    let bad = || Error::Parse(format!("malformed term {term:?}"));
    if term.is_empty() {
        return Err(bad());
    }
    let (coef_part, var_part) = match term.find('x') {
        None => (Some(term), None),
        Some(pos) => {
            let head = &term[..pos];
            let coef = if head.is_empty() {
                None
            } else {
                Some(head.strip_suffix('*').ok_or_else(bad)?)
            };
            (coef, Some(&term[pos + 1..]))
        }
    };
    let c = match coef_part {
        None => 1,
        Some(digits) => {
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let c: u64 = digits.parse().map_err(|_| bad())?;
            if c >= q as u64 {
                return Err(Error::Parse(format!(
                    "coefficient {c} is not an element code below q = {q}"
                )));
            }
            c as FieldElem
        }
    };
    let k = match var_part {
        None => 0,
        Some("") => 1,
        Some(rest) => {
            let exp = rest.strip_prefix('^').ok_or_else(bad)?;
            if exp.is_empty() || !exp.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            exp.parse::<usize>().map_err(|_| bad())?
        }
    };
    Ok((c, k))
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match (k, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (1, c) => write!(f, "{c}*x")?,
                (k, 1) => write!(f, "x^{k}")?,
                (k, c) => write!(f, "{c}*x^{k}")?,
            }
        }
        Ok(())
    }
}

impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32) -> FieldSpec {
        FieldSpec::new(p, 1).unwrap()
    }

    #[test]
    fn parse_and_print() {
        let f2 = f(2);
        let g = Poly::parse("x^3 + x + 1", &f2).unwrap();
        assert_eq!(g.coeffs(), &[1, 1, 0, 1]);
        assert_eq!(g.to_string(), "x^3+x+1");
        let f5 = f(5);
        let h = Poly::parse("3*x^2+4*x+2", &f5).unwrap();
        assert_eq!(h.to_string(), "3*x^2+4*x+2");
        assert_eq!(Poly::parse("0", &f5).unwrap(), Poly::zero());
        assert_eq!(Poly::zero().to_string(), "0");
        // x + x = 2x over F_3, cancels over F_2
        assert_eq!(Poly::parse("x+x", &f(3)).unwrap().to_string(), "2*x");
        assert_eq!(Poly::parse("x+x", &f2).unwrap(), Poly::zero());
        assert_eq!(Poly::parse("x^0", &f2).unwrap(), Poly::one());
    }

    #[test]
    fn parse_errors() {
        let f3 = f(3);
        for bad in ["", "x^", "3*x", "2x", "x^-1", "y", "1++x", "x^2*3", "*x"] {
            assert!(Poly::parse(bad, &f3).is_err(), "{bad:?} should fail");
        }
    }

    #[test]
    fn ordering_matches_enumeration() {
        let f2 = f(2);
        let names = ["x^2", "x^2+1", "x^2+x", "x^2+x+1"];
        let polys: Vec<Poly> = names.iter().map(|n| Poly::parse(n, &f2).unwrap()).collect();
        let mut sorted = polys.clone();
        sorted.sort();
        assert_eq!(sorted, polys);
        assert!(Poly::parse("x+1", &f2).unwrap() < polys[0]);
    }
}
