//! Ring arithmetic on [`Poly`] over a [`FieldSpec`].

use num_bigint::BigUint;

use super::field::{FieldElem, FieldSpec};
use super::poly::Poly;
use crate::{Error, Result};

impl FieldSpec {
    pub fn poly_add(&self, a: &Poly, b: &Poly) -> Poly {
        let n = a.coeffs().len().max(b.coeffs().len());
        Poly::from_coeffs((0..n).map(|i| self.add(a.coeff(i), b.coeff(i))).collect())
    }

    pub fn poly_sub(&self, a: &Poly, b: &Poly) -> Poly {
        let n = a.coeffs().len().max(b.coeffs().len());
        Poly::from_coeffs((0..n).map(|i| self.sub(a.coeff(i), b.coeff(i))).collect())
    }

    pub fn poly_scale(&self, a: &Poly, c: FieldElem) -> Poly {
        Poly::from_coeffs(a.coeffs().iter().map(|&x| self.mul(x, c)).collect())
    }

    pub fn poly_mul(&self, a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() || b.is_zero() {
            return Poly::zero();
        }
        let (ac, bc) = (a.coeffs(), b.coeffs());
        let mut out = vec![0; ac.len() + bc.len() - 1];
        for (i, &x) in ac.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in bc.iter().enumerate() {
                out[i + j] = self.add(out[i + j], self.mul(x, y));
            }
        }
        Poly::from_coeffs(out)
    }

    pub fn poly_pow(&self, a: &Poly, mut e: u64) -> Poly {
        let mut base = a.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.poly_mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.poly_mul(&base, &base);
            }
        }
        acc
    }

    /// Quotient and remainder of `a` by `b`.
    pub fn poly_divmod(&self, a: &Poly, b: &Poly) -> Result<(Poly, Poly)> {
        let Some(db) = b.degree() else {
            return Err(Error::DivisionByZero);
        };
        let Some(da) = a.degree().filter(|&da| da >= db) else {
            return Ok((Poly::zero(), a.clone()));
        };
        let lead_inv = self.inv(b.leading());
        let bc = b.coeffs();
        let mut rem = a.coeffs().to_vec();
        let mut quot = vec![0; da - db + 1];
        for k in (0..=da - db).rev() {
            let c = self.mul(rem[k + db], lead_inv);
            if c == 0 {
                continue;
            }
            quot[k] = c;
            for (i, &bi) in bc.iter().enumerate() {
                rem[k + i] = self.sub(rem[k + i], self.mul(c, bi));
            }
        }
        rem.truncate(db);
        Ok((Poly::from_coeffs(quot), Poly::from_coeffs(rem)))
    }

    pub fn poly_rem(&self, a: &Poly, b: &Poly) -> Result<Poly> {
        Ok(self.poly_divmod(a, b)?.1)
    }

    /// Exact quotient; the caller guarantees `b | a`.
    pub(crate) fn poly_div_exact(&self, a: &Poly, b: &Poly) -> Poly {
        let (q, r) = self.poly_divmod(a, b).expect("nonzero divisor");
        debug_assert!(r.is_zero(), "inexact division");
        q
    }

    /// Scales `a` to leading coefficient one; zero stays zero.
    pub fn poly_monic(&self, a: &Poly) -> Poly {
        if a.is_zero() || a.is_monic() {
            return a.clone();
        }
        self.poly_scale(a, self.inv(a.leading()))
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn poly_gcd(&self, a: &Poly, b: &Poly) -> Poly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = self.poly_rem(&a, &b).expect("b nonzero");
            a = b;
            b = r;
        }
        self.poly_monic(&a)
    }

    pub fn poly_mulmod(&self, a: &Poly, b: &Poly, m: &Poly) -> Result<Poly> {
        self.poly_rem(&self.poly_mul(a, b), m)
    }

    /// `a^e mod m`.
    pub fn poly_powmod(&self, a: &Poly, e: &BigUint, m: &Poly) -> Result<Poly> {
        if m.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut acc = self.poly_rem(&Poly::one(), m)?;
        let base = self.poly_rem(a, m)?;
        for i in (0..e.bits()).rev() {
            acc = self.poly_mulmod(&acc, &acc, m)?;
            if e.bit(i) {
                acc = self.poly_mulmod(&acc, &base, m)?;
            }
        }
        Ok(acc)
    }

    pub fn poly_derivative(&self, a: &Poly) -> Poly {
        let p = self.p() as usize;
        Poly::from_coeffs(
            a.coeffs()
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| {
                    // i·c computed as repeated addition of c, i mod p times.
                    (0..i % p).fold(0, |acc, _| self.add(acc, c))
                })
                .collect(),
        )
    }

    /// `a^{1/p}` for a polynomial whose exponents are all multiples of `p`.
    pub(crate) fn poly_pth_root(&self, a: &Poly) -> Poly {
        let p = self.p() as usize;
        debug_assert!(a.coeffs().iter().enumerate().all(|(i, &c)| c == 0 || i % p == 0));
        Poly::from_coeffs(a.coeffs().iter().step_by(p).map(|&c| self.pth_root(c)).collect())
    }

    pub fn poly_eval(&self, a: &Poly, x: FieldElem) -> FieldElem {
        a.coeffs()
            .iter()
            .rev()
            .fold(0, |acc, &c| self.add(self.mul(acc, x), c))
    }
}
