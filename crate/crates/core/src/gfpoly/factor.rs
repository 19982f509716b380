//! Irreducibility testing and factorization into monic irreducibles.
//!
//! `factor` runs the classical three stages: square-free decomposition
//! (with p-th root extraction when the derivative vanishes), distinct-degree
//! splitting, and Cantor-Zassenhaus equal-degree splitting driven by a
//! deterministic linear-congruential sequence.

use num_bigint::BigUint;

use super::field::{FieldElem, FieldSpec};
use super::poly::Poly;
use crate::numtheory::factor_int;
use crate::{Error, Result};

/// `unit · Π P^e` with every `P` monic irreducible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub unit: FieldElem,
    /// Sorted by `(deg P, P)`; the `P` are pairwise distinct.
    pub parts: Vec<(Poly, u32)>,
}

impl Factorization {
    /// Multiplies the factorization back out.
    pub fn expand(&self, field: &FieldSpec) -> Poly {
        let mut acc = Poly::constant(self.unit);
        for (p, e) in &self.parts {
            acc = field.poly_mul(&acc, &field.poly_pow(p, *e as u64));
        }
        acc
    }

    pub fn degree(&self) -> usize {
        self.parts
            .iter()
            .map(|(p, e)| p.degree().unwrap_or(0) * *e as usize)
            .sum()
    }
}

impl FieldSpec {
    /// Rabin's test: `f | x^{q^d} - x` and `gcd(f, x^{q^{d/r}} - x) = 1`
    /// for each prime `r | d`, where `d = deg f`.
    pub fn is_irreducible(&self, f: &Poly) -> Result<bool> {
        let d = match f.degree() {
            None => return Err(Error::ZeroPolynomial),
            Some(0) => return Err(Error::ConstantPolynomial),
            Some(d) => d,
        };
        if d == 1 {
            return Ok(true);
        }
        let f = self.poly_monic(f);
        let q = BigUint::from(self.q());
        let x = Poly::x();
        // frob[i] = x^{q^i} mod f
        let mut frob = Vec::with_capacity(d + 1);
        frob.push(self.poly_rem(&x, &f)?);
        for i in 0..d {
            let next = self.poly_powmod(&frob[i], &q, &f)?;
            frob.push(next);
        }
        if frob[d] != frob[0] {
            return Ok(false);
        }
        let primes = factor_int(&BigUint::from(d))
            .map(|fac| fac.primes().map(|r| r.to_u64_digits()[0] as usize).collect::<Vec<_>>())
            .unwrap_or_default();
        for r in primes {
            let h = self.poly_sub(&frob[d / r], &x);
            if !self.poly_gcd(&f, &h).is_one() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn factor(&self, f: &Poly) -> Result<Factorization> {
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let unit = f.leading();
        let monic = self.poly_monic(f);
        let mut parts = Vec::new();
        for (sqfree, mult) in self.square_free(&monic) {
            for (block, d) in self.distinct_degree(&sqfree) {
                for irr in self.equal_degree(&block, d) {
                    parts.push((irr, mult));
                }
            }
        }
        parts.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(Factorization { unit, parts })
    }

    /// Square-free decomposition of a monic polynomial: pairs `(g, m)` with
    /// `f = Π g^m`, every `g` square-free and the `g` pairwise coprime.
    fn square_free(&self, f: &Poly) -> Vec<(Poly, u32)> {
        let mut out = Vec::new();
        if f.degree().unwrap_or(0) == 0 {
            return out;
        }
        let p = self.p();
        let deriv = self.poly_derivative(f);
        if deriv.is_zero() {
            let root = self.poly_pth_root(f);
            for (g, m) in self.square_free(&root) {
                out.push((g, m * p));
            }
            return out;
        }
        let mut c = self.poly_gcd(f, &deriv);
        let mut w = self.poly_div_exact(f, &c);
        let mut i = 1;
        while !w.is_one() {
            let y = self.poly_gcd(&w, &c);
            let fac = self.poly_div_exact(&w, &y);
            if !fac.is_one() {
                out.push((fac, i));
            }
            c = self.poly_div_exact(&c, &y);
            w = y;
            i += 1;
        }
        if !c.is_one() {
            let root = self.poly_pth_root(&c);
            for (g, m) in self.square_free(&root) {
                out.push((g, m * p));
            }
        }
        out
    }

    /// Splits a square-free monic polynomial into blocks `(g, d)` where `g`
    /// is the product of all its irreducible factors of degree `d`.
    fn distinct_degree(&self, f: &Poly) -> Vec<(Poly, usize)> {
        let mut out = Vec::new();
        let q = BigUint::from(self.q());
        let x = Poly::x();
        let mut rest = f.clone();
        let mut h = x.clone();
        let mut d = 1;
        while rest.degree().unwrap_or(0) >= 2 * d {
            h = self.poly_powmod(&h, &q, &rest).expect("rest nonzero");
            let g = self.poly_gcd(&rest, &self.poly_sub(&h, &x));
            if !g.is_one() {
                rest = self.poly_div_exact(&rest, &g);
                h = self.poly_rem(&h, &rest).expect("rest nonzero");
                out.push((g, d));
            }
            d += 1;
        }
        if let Some(deg) = rest.degree().filter(|&deg| deg > 0) {
            out.push((rest, deg));
        }
        out
    }

    /// Cantor-Zassenhaus splitting of a product of distinct irreducibles
    /// that all have degree `d`.
    fn equal_degree(&self, f: &Poly, d: usize) -> Vec<Poly> {
        let n = f.degree().expect("nonzero");
        if n == d {
            return vec![f.clone()];
        }
        let mut rng = Lcg::seeded(self.q(), f);
        let odd_exp = (self.p() != 2).then(|| (BigUint::from(self.q()).pow(d as u32) - 1u32) / 2u32);
        loop {
            let a = Poly::from_coeffs((0..n).map(|_| rng.next_below(self.q())).collect());
            if a.is_constant() {
                continue;
            }
            let b = match &odd_exp {
                Some(e) => {
                    let t = self.poly_powmod(&a, e, f).expect("f nonzero");
                    self.poly_sub(&t, &Poly::one())
                }
                None => self.trace(&a, f, d),
            };
            let g = self.poly_gcd(f, &b);
            let dg = g.degree().unwrap_or(0);
            if dg > 0 && dg < n {
                let other = self.poly_div_exact(f, &g);
                let mut out = self.equal_degree(&g, d);
                out.extend(self.equal_degree(&other, d));
                return out;
            }
        }
    }

    /// Absolute trace `a + a^2 + a^4 + ... + a^{2^{sd-1}} mod f` for
    /// characteristic two.
    fn trace(&self, a: &Poly, f: &Poly, d: usize) -> Poly {
        let mut term = self.poly_rem(a, f).expect("f nonzero");
        let mut acc = term.clone();
        for _ in 1..(self.s() as usize * d) {
            term = self.poly_mulmod(&term, &term, f).expect("f nonzero");
            acc = self.poly_add(&acc, &term);
        }
        acc
    }
}

/// 64-bit LCG (Knuth's MMIX constants) seeded from the field order, the
/// degree and an FNV-1a hash of the coefficients, so splitting is
/// reproducible across runs.
struct Lcg(u64);

impl Lcg {
    fn seeded(q: u32, f: &Poly) -> Self {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for &c in f.coeffs() {
            for b in c.to_le_bytes() {
                h ^= b as u64;
                h = h.wrapping_mul(0x0100_0000_01b3);
            }
        }
        let deg = f.degree().unwrap_or(0) as u64;
        Lcg(h ^ ((q as u64) << 32) ^ deg)
    }

    fn next_below(&mut self, bound: u32) -> u32 {
        self.0 = self
            .0
            .wrapping_mul(6_364_136_223_846_793_005)
            .wrapping_add(1_442_695_040_888_963_407);
        ((self.0 >> 33) % bound as u64) as u32
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gfpoly::enumerate_monic;

    fn parse(s: &str, f: &FieldSpec) -> Poly {
        Poly::parse(s, f).unwrap()
    }

    fn parts_text(fac: &Factorization) -> Vec<(String, u32)> {
        fac.parts.iter().map(|(p, e)| (p.to_string(), *e)).collect()
    }

    #[test]
    fn irreducibility_examples() {
        let f2 = FieldSpec::new(2, 1).unwrap();
        let f3 = FieldSpec::new(3, 1).unwrap();
        assert!(f2.is_irreducible(&parse("x^2+x+1", &f2)).unwrap());
        assert!(!f2.is_irreducible(&parse("x^2+1", &f2)).unwrap());
        assert!(f3.is_irreducible(&parse("x^2+1", &f3)).unwrap());
        assert_eq!(f3.is_irreducible(&Poly::one()), Err(Error::ConstantPolynomial));
        // x^4+x^2+1 = (x^2+x+1)^2 has no roots but is reducible
        assert!(!f2.is_irreducible(&parse("x^4+x^2+1", &f2)).unwrap());
    }

    #[test]
    fn factor_examples() {
        let f2 = FieldSpec::new(2, 1).unwrap();
        let fac = f2.factor(&parse("x^2+x", &f2)).unwrap();
        assert_eq!(parts_text(&fac), vec![("x".into(), 1), ("x+1".into(), 1)]);

        let g = parse("x^6+x^5+x^3+x^2", &f2);
        let fac = f2.factor(&g).unwrap();
        assert_eq!(fac.expand(&f2), g);
        assert_eq!(
            parts_text(&fac),
            vec![("x".into(), 2), ("x+1".into(), 2), ("x^2+x+1".into(), 1)]
        );

        let f3 = FieldSpec::new(3, 1).unwrap();
        let fac = f3.factor(&parse("x^2+2", &f3)).unwrap();
        assert_eq!(parts_text(&fac), vec![("x+1".into(), 1), ("x+2".into(), 1)]);

        assert_eq!(f3.factor(&Poly::zero()), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn factor_keeps_unit_and_handles_pth_powers() {
        let f3 = FieldSpec::new(3, 1).unwrap();
        // 2·(x+1)^3·(x^2+1)^6
        let g = f3.poly_scale(
            &f3.poly_mul(
                &f3.poly_pow(&parse("x+1", &f3), 3),
                &f3.poly_pow(&parse("x^2+1", &f3), 6),
            ),
            2,
        );
        let fac = f3.factor(&g).unwrap();
        assert_eq!(fac.unit, 2);
        assert_eq!(parts_text(&fac), vec![("x+1".into(), 3), ("x^2+1".into(), 6)]);
        assert_eq!(fac.expand(&f3), g);
    }

    #[test]
    fn factor_round_trip_exhaustive() {
        for (p, s) in [(2, 1), (3, 1), (2, 2)] {
            let field = FieldSpec::new(p, s).unwrap();
            for d in 1..=6 {
                if field.q() == 4 && d > 5 {
                    continue;
                }
                for f in enumerate_monic(&field, d) {
                    let fac = field.factor(&f).unwrap();
                    assert_eq!(fac.expand(&field), f, "q={} f={f}", field.q());
                    assert_eq!(fac.unit, 1);
                    for w in fac.parts.windows(2) {
                        assert!(w[0].0 < w[1].0);
                    }
                    for (irr, e) in &fac.parts {
                        assert!(*e >= 1 && irr.is_monic());
                        assert!(field.is_irreducible(irr).unwrap(), "{irr} not irreducible");
                    }
                }
            }
        }
    }

    #[test]
    fn factor_round_trip_f4_degree_six() {
        let field = FieldSpec::new(2, 2).unwrap();
        for f in enumerate_monic(&field, 6).step_by(7) {
            let fac = field.factor(&f).unwrap();
            assert_eq!(fac.expand(&field), f);
            assert!(fac.parts.iter().all(|(irr, _)| field.is_irreducible(irr).unwrap()));
        }
    }

    #[test]
    fn irreducible_iff_no_lower_degree_divisor() {
        for p in [2, 3] {
            let field = FieldSpec::new(p, 1).unwrap();
            let small: Vec<Poly> = (1..=2).flat_map(|d| enumerate_monic(&field, d)).collect();
            for d in 1..=5 {
                for f in enumerate_monic(&field, d) {
                    let has_divisor = small.iter().any(|g| {
                        g.degree().unwrap() <= d / 2 && field.poly_rem(&f, g).unwrap().is_zero()
                    });
                    assert_eq!(field.is_irreducible(&f).unwrap(), !has_divisor, "p={p} f={f}");
                }
            }
        }
    }
}
