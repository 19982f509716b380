//! `Φ(f) = |(A/fA)^*|` and `σ(f) = Σ_{g | f monic} |g|`, together with the
//! data they factor through: the signature `(deg f, {m_d})` and the exponent
//! vector `{k_d}` of `σ` over the basis `q^d - 1`.
//!
//! Both functions are defined on non-constant polynomials only and are
//! computed on the monic associate.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::gfpoly::{Factorization, FieldSpec, Poly};
use crate::{Error, Result};

/// `(deg f, {d -> m_d(f)})`, where `m_d(f)` is the number of distinct monic
/// irreducible divisors of degree `d`. Zero counts are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signature {
    degree: usize,
    counts: BTreeMap<usize, usize>,
}

impl Signature {
    pub fn new(degree: usize, counts: BTreeMap<usize, usize>) -> Self {
        let counts = counts.into_iter().filter(|&(_, m)| m > 0).collect();
        Self { degree, counts }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn counts(&self) -> &BTreeMap<usize, usize> {
        &self.counts
    }

    pub fn m(&self, d: usize) -> usize {
        self.counts.get(&d).copied().unwrap_or(0)
    }

    /// `Σ d·m_d`.
    pub fn squarefree_degree(&self) -> usize {
        self.counts.iter().map(|(d, m)| d * m).sum()
    }

    /// Checks that some monic polynomial over `field` has this signature.
    pub fn validate(&self, field: &FieldSpec) -> Result<()> {
        if self.counts.is_empty() {
            return Err(Error::InvalidSignature("no irreducible factors".into()));
        }
        let base = self.squarefree_degree();
        if base > self.degree {
            return Err(Error::InvalidSignature(format!(
                "Σ d·m_d = {base} exceeds degree {}",
                self.degree
            )));
        }
        for (&d, &m) in &self.counts {
            if d == 0 || m as u64 > field.pi_cap(d as u32) {
                return Err(Error::InvalidSignature(format!(
                    "m_{d} = {m} exceeds π_q({d})"
                )));
            }
        }
        if !composable(self.degree - base, self.counts.keys().copied()) {
            return Err(Error::InvalidSignature(format!(
                "excess degree {} is not a sum of factor degrees",
                self.degree - base
            )));
        }
        Ok(())
    }
}

/// Whether `j = Σ d·j_d` has a non-negative solution using only the given
/// degrees.
pub(crate) fn composable(j: usize, degrees: impl IntoIterator<Item = usize>) -> bool {
    let mut reach = vec![false; j + 1];
    reach[0] = true;
    for d in degrees {
        for t in d..=j {
            if reach[t - d] {
                reach[t] = true;
            }
        }
    }
    reach[j]
}

/// A totient value in factored form `q^j · Π_d (q^d - 1)^{m_d}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PhiValue {
    pub j: usize,
    pub counts: BTreeMap<usize, usize>,
}

impl PhiValue {
    pub fn evaluate(&self, q: u32) -> BigUint {
        let qb = BigUint::from(q);
        let mut acc = qb.pow(self.j as u32);
        for (&d, &m) in &self.counts {
            acc *= (qb.pow(d as u32) - 1u32).pow(m as u32);
        }
        acc
    }
}

fn require_nonconstant(f: &Poly) -> Result<()> {
    match f.degree() {
        None => Err(Error::ZeroPolynomial),
        Some(0) => Err(Error::ConstantPolynomial),
        Some(_) => Ok(()),
    }
}

pub fn signature_of(fac: &Factorization) -> Signature {
    let mut counts = BTreeMap::new();
    for (p, _) in &fac.parts {
        *counts.entry(p.degree().expect("irreducible")).or_insert(0) += 1;
    }
    Signature::new(fac.degree(), counts)
}

pub fn signature(f: &Poly, field: &FieldSpec) -> Result<Signature> {
    require_nonconstant(f)?;
    Ok(signature_of(&field.factor(f)?))
}

fn phi_value_of(sig: &Signature) -> PhiValue {
    PhiValue {
        j: sig.degree() - sig.squarefree_degree(),
        counts: sig.counts().clone(),
    }
}

/// `Φ(f)` as a factored value and its exact evaluation.
pub fn phi(f: &Poly, field: &FieldSpec) -> Result<(PhiValue, BigUint)> {
    let sig = signature(f, field)?;
    let value = phi_value_of(&sig);
    let n = value.evaluate(field.q());
    Ok((value, n))
}

pub fn phi_from_signature(sig: &Signature, field: &FieldSpec) -> Result<(PhiValue, BigUint)> {
    sig.validate(field)?;
    let value = phi_value_of(sig);
    let n = value.evaluate(field.q());
    Ok((value, n))
}

/// `|f| Π_{P | f} (1 - 1/|P|)` evaluated as an exact fraction.
pub fn phi_direct(fac: &Factorization, q: u32) -> BigUint {
    let qb = BigUint::from(q);
    let mut num = qb.pow(fac.degree() as u32);
    let mut den = BigUint::one();
    for (p, _) in &fac.parts {
        let norm = qb.pow(p.degree().expect("irreducible") as u32);
        num *= &norm - 1u32;
        den *= norm;
    }
    debug_assert!((&num % &den).is_zero());
    num / den
}

/// `σ(g) = Π_{P^e || g} (|P|^{e+1} - 1)/(|P| - 1)`.
pub fn sigma(g: &Poly, field: &FieldSpec) -> Result<BigUint> {
    require_nonconstant(g)?;
    let fac = field.factor(g)?;
    let qb = BigUint::from(field.q());
    Ok(fac
        .parts
        .iter()
        .map(|(p, e)| {
            let norm = qb.pow(p.degree().expect("irreducible") as u32);
            (norm.pow(e + 1) - 1u32) / (norm - 1u32)
        })
        .product())
}

/// Signed exponents `k_d` with `σ(g) = Π_d (q^d - 1)^{k_d}` and `Σ k_d = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SigmaExponents {
    exps: BTreeMap<usize, i64>,
}

impl SigmaExponents {
    pub fn exps(&self) -> &BTreeMap<usize, i64> {
        &self.exps
    }

    pub fn k(&self, d: usize) -> i64 {
        self.exps.get(&d).copied().unwrap_or(0)
    }

    fn bump(&mut self, d: usize, by: i64) {
        let e = self.exps.entry(d).or_insert(0);
        *e += by;
        if *e == 0 {
            self.exps.remove(&d);
        }
    }

    /// Evaluates the product exactly. The result is an integer whenever
    /// the exponents came from an actual `σ(g)`.
    pub fn evaluate(&self, q: u32) -> BigUint {
        let qb = BigUint::from(q);
        let mut num = BigUint::one();
        let mut den = BigUint::one();
        for (&d, &k) in &self.exps {
            let base = qb.pow(d as u32) - 1u32;
            if k > 0 {
                num *= base.pow(k as u32);
            } else {
                den *= base.pow((-k) as u32);
            }
        }
        num / den
    }

    /// Checks `Σ k_d = 0`, `-k_d <= π_q(d)`, and that every negative `k_d`
    /// has some multiple `j` of `d` with `k_j > 0`.
    pub fn validate(&self, field: &FieldSpec) -> Result<()> {
        let total: i64 = self.exps.values().sum();
        if total != 0 {
            return Err(Error::InvariantViolation(format!("Σ k_d = {total}, expected 0")));
        }
        for (&d, &k) in &self.exps {
            if k < 0 {
                if BigInt::from(-k) > BigInt::from(field.pi(d as u32)) {
                    return Err(Error::InvariantViolation(format!(
                        "k_{d} = {k} is below -π_q({d})"
                    )));
                }
                let witnessed = self.exps.iter().any(|(&j, &kj)| j % d == 0 && kj > 0);
                if !witnessed {
                    return Err(Error::InvariantViolation(format!(
                        "k_{d} = {k} < 0 but no multiple j of {d} has k_j > 0"
                    )));
                }
            }
        }
        Ok(())
    }
}

pub fn sigma_exponents(g: &Poly, field: &FieldSpec) -> Result<SigmaExponents> {
    require_nonconstant(g)?;
    let fac = field.factor(g)?;
    let mut out = SigmaExponents::default();
    for (p, e) in &fac.parts {
        let d = p.degree().expect("irreducible");
        out.bump(d * (*e as usize + 1), 1);
        out.bump(d, -1);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gfpoly::field_make;

    fn parse(s: &str, f: &FieldSpec) -> Poly {
        Poly::parse(s, f).unwrap()
    }

    fn counts(pairs: &[(usize, usize)]) -> BTreeMap<usize, usize> {
        pairs.iter().copied().collect()
    }

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn phi_examples() {
        for (p, s) in [(2, 1), (3, 1), (2, 2), (5, 1)] {
            let field = field_make(p, s).unwrap();
            let (_, n) = phi(&Poly::x(), &field).unwrap();
            assert_eq!(n, big(field.q() as u64 - 1));
        }
        let f2 = field_make(2, 1).unwrap();
        let (v, n) = phi(&parse("x^3", &f2), &f2).unwrap();
        assert_eq!((v.j, v.counts.clone(), n), (2, counts(&[(1, 1)]), big(4)));
        let g = f2.poly_mul(&parse("x^2+x", &f2), &parse("x^2+x+1", &f2));
        let (v, n) = phi(&g, &f2).unwrap();
        assert_eq!((v.j, v.counts, n), (0, counts(&[(1, 2), (2, 1)]), big(3)));
        assert_eq!(phi(&Poly::one(), &f2), Err(Error::ConstantPolynomial));
        assert_eq!(phi(&Poly::zero(), &f2), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn phi_ignores_units() {
        let f5 = field_make(5, 1).unwrap();
        let f = parse("3*x^3+x+2", &f5);
        assert_eq!(phi(&f, &f5).unwrap(), phi(&f5.poly_monic(&f), &f5).unwrap());
    }

    #[test]
    fn signature_examples() {
        let f2 = field_make(2, 1).unwrap();
        let s = signature(&parse("x^3+x^2", &f2), &f2).unwrap();
        assert_eq!((s.degree(), s.counts().clone()), (3, counts(&[(1, 2)])));
        let s = signature(&parse("x^4+x^2+1", &f2), &f2).unwrap();
        assert_eq!((s.degree(), s.counts().clone()), (4, counts(&[(2, 1)])));
        let f3 = field_make(3, 1).unwrap();
        let s = signature(&parse("x^3+2*x", &f3), &f3).unwrap();
        assert_eq!((s.degree(), s.counts().clone()), (3, counts(&[(1, 3)])));
    }

    #[test]
    fn phi_from_signature_examples() {
        let f2 = field_make(2, 1).unwrap();
        let f3 = field_make(3, 1).unwrap();
        let sig = Signature::new(3, counts(&[(1, 1)]));
        assert_eq!(phi_from_signature(&sig, &f2).unwrap().1, big(4));
        let sig = Signature::new(2, counts(&[(2, 1)]));
        assert_eq!(phi_from_signature(&sig, &f3).unwrap().1, big(8));
        let f7 = field_make(7, 1).unwrap();
        let sig = Signature::new(1, counts(&[(1, 1)]));
        assert_eq!(phi_from_signature(&sig, &f7).unwrap().1, big(6));
    }

    #[test]
    fn invalid_signatures_rejected() {
        let f2 = field_make(2, 1).unwrap();
        let bad = [
            Signature::new(3, counts(&[(2, 2)])),       // m_2 > π_2(2) = 1
            Signature::new(1, counts(&[(1, 2)])),       // Σ d·m_d > degree
            Signature::new(3, counts(&[(2, 1)])),       // excess 1 not a multiple of 2
            Signature::new(2, BTreeMap::new()),         // no factors
        ];
        for sig in bad {
            assert!(matches!(phi_from_signature(&sig, &f2), Err(Error::InvalidSignature(_))), "{sig:?}");
        }
    }

    #[test]
    fn sigma_examples() {
        let f2 = field_make(2, 1).unwrap();
        assert_eq!(sigma(&Poly::x(), &f2).unwrap(), big(3));
        assert_eq!(sigma(&parse("x^2", &f2), &f2).unwrap(), big(7));
        assert_eq!(sigma(&parse("x^2+x", &f2), &f2).unwrap(), big(9));
        assert_eq!(sigma(&Poly::one(), &f2), Err(Error::ConstantPolynomial));
    }

    #[test]
    fn sigma_exponent_examples() {
        let f2 = field_make(2, 1).unwrap();
        let k = sigma_exponents(&parse("x^2", &f2), &f2).unwrap();
        assert_eq!(k.exps(), &[(1, -1), (3, 1)].into_iter().collect());
        let k = sigma_exponents(&parse("x^3+x+1", &f2), &f2).unwrap();
        assert_eq!(k.exps(), &[(3, -1), (6, 1)].into_iter().collect());
        let f3 = field_make(3, 1).unwrap();
        let g = parse("x^3+x^2", &f3); // x^2 (x+1)
        let k = sigma_exponents(&g, &f3).unwrap();
        assert_eq!(k.exps(), &[(1, -2), (2, 1), (3, 1)].into_iter().collect());
        assert_eq!(k.evaluate(3), sigma(&g, &f3).unwrap());
        k.validate(&f3).unwrap();
    }
}
