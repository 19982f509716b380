use std::collections::BTreeMap;
use std::fmt;
use std::sync::Mutex;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use super::pi::PiTable;
use crate::numtheory::{factor_int, is_prime_u64};
use crate::{Error, Result};

/// Field elements are integer codes in `[0, q)`. The base-`p` digits of a
/// code are the coordinates of the element on the power basis `1, t, t², ...`
/// of a root `t` of the field modulus.
pub type FieldElem = u32;

const MAX_ORDER: u64 = 1 << 16;

/// The finite field `F_q`, `q = p^s`.
///
/// For `s > 1` the field is modelled as `F_p[t]/(m(t))` where `m` is the
/// smallest monic irreducible of degree `s` over `F_p`, comparing
/// coefficient vectors lexicographically from the constant term upwards.
pub struct FieldSpec {
    p: u32,
    s: u32,
    q: u32,
    modulus: Option<Vec<u32>>,
    // exp has length 2(q-1) so products of logs never need reducing.
    exp: Vec<u32>,
    log: Vec<u32>,
    pi: Mutex<PiTable>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("p", &self.p)
            .field("s", &self.s)
            .field("q", &self.q)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.s == other.s && self.modulus == other.modulus
    }
}

impl Eq for FieldSpec {}

impl FieldSpec {
    pub fn new(p: u32, s: u32) -> Result<Self> {
        if !is_prime_u64(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if s == 0 {
            return Err(Error::InvalidArgument("field degree s must be >= 1".into()));
        }
        let q = (p as u64).checked_pow(s).filter(|&q| q <= MAX_ORDER);
        let Some(q) = q else {
            return Err(Error::FieldTooLarge((p as u64).saturating_pow(s)));
        };
        let q = q as u32;
        let modulus = if s > 1 {
            Some(smallest_irreducible(p, s as usize)?)
        } else {
            None
        };
        let slow = SlowField { p, s, modulus: modulus.as_deref() };
        let generator = slow.find_generator(q)?;
        let order = (q - 1) as usize;
        let mut exp = vec![0u32; 2 * order.max(1)];
        let mut log = vec![0u32; q as usize];
        let mut x = 1u32;
        for i in 0..order {
            exp[i] = x;
            exp[i + order] = x;
            log[x as usize] = i as u32;
            x = slow.mul(x, generator);
        }
        Ok(Self {
            p,
            s,
            q,
            modulus,
            exp,
            log,
            pi: Mutex::new(PiTable::new(q as u64)),
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Coefficients over `F_p` of the extension modulus, constant term
    /// first. `None` for prime fields.
    pub fn modulus(&self) -> Option<&[u32]> {
        self.modulus.as_deref()
    }

    #[inline]
    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if self.s == 1 {
            let c = a + b;
            if c >= self.p {
                c - self.p
            } else {
                c
            }
        } else if self.p == 2 {
            a ^ b
        } else {
            let (mut a, mut b) = (a, b);
            let (mut out, mut place) = (0, 1);
            while a > 0 || b > 0 {
                out += ((a % self.p + b % self.p) % self.p) * place;
                a /= self.p;
                b /= self.p;
                place *= self.p;
            }
            out
        }
    }

    #[inline]
    pub fn neg(&self, a: FieldElem) -> FieldElem {
        if self.s == 1 {
            if a == 0 {
                0
            } else {
                self.p - a
            }
        } else if self.p == 2 {
            a
        } else {
            let mut a = a;
            let (mut out, mut place) = (0, 1);
            while a > 0 {
                out += ((self.p - a % self.p) % self.p) * place;
                a /= self.p;
                place *= self.p;
            }
            out
        }
    }

    #[inline]
    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if a == 0 || b == 0 {
            return 0;
        }
        self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self, a: FieldElem) -> FieldElem {
        assert!(a != 0, "inverse of zero");
        let order = self.q - 1;
        self.exp[((order - self.log[a as usize]) % order) as usize]
    }

    pub fn pow(&self, a: FieldElem, e: u64) -> FieldElem {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let order = (self.q - 1) as u64;
        let l = (self.log[a as usize] as u64 * (e % order)) % order;
        self.exp[l as usize]
    }

    /// The unique `b` with `b^p = a`.
    pub fn pth_root(&self, a: FieldElem) -> FieldElem {
        self.pow(a, (self.q / self.p) as u64)
    }

    /// `π_q(d)`, memoized per field.
    pub fn pi(&self, d: u32) -> BigUint {
        self.pi.lock().expect("pi table lock").get(d)
    }

    /// `π_q(d)` saturated into a `u64`, for use as a multiplicity cap.
    pub fn pi_cap(&self, d: u32) -> u64 {
        self.pi(d).to_u64().unwrap_or(u64::MAX)
    }

    /// Snapshot of the memoized `π_q` values computed so far.
    pub fn pi_table(&self) -> BTreeMap<u32, BigUint> {
        self.pi.lock().expect("pi table lock").entries().clone()
    }
}

/// Arithmetic on codes without tables; used only while building a field.
struct SlowField<'a> {
    p: u32,
    s: u32,
    modulus: Option<&'a [u32]>,
}

impl SlowField<'_> {
    fn digits(&self, mut a: u32) -> Vec<u32> {
        let mut out = vec![0; self.s as usize];
        for d in out.iter_mut() {
            *d = a % self.p;
            a /= self.p;
        }
        out
    }

    fn code(&self, digits: &[u32]) -> u32 {
        digits.iter().rev().fold(0, |acc, &d| acc * self.p + d)
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        let p = self.p as u64;
        let Some(m) = self.modulus else {
            return ((a as u64 * b as u64) % p) as u32;
        };
        let s = self.s as usize;
        let (x, y) = (self.digits(a), self.digits(b));
        let mut prod = vec![0u64; 2 * s - 1];
        for (i, &xi) in x.iter().enumerate() {
            for (j, &yj) in y.iter().enumerate() {
                prod[i + j] = (prod[i + j] + xi as u64 * yj as u64) % p;
            }
        }
        // m is monic of degree s: t^s = -(m_0 + ... + m_{s-1} t^{s-1}).
        for k in (s..prod.len()).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for i in 0..s {
                prod[k - s + i] = (prod[k - s + i] + (p - m[i] as u64) * c) % p;
            }
        }
        let digits: Vec<u32> = prod[..s].iter().map(|&c| c as u32).collect();
        self.code(&digits)
    }

    fn pow(&self, a: u32, mut e: u64) -> u32 {
        let (mut base, mut acc) = (a, 1);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    fn find_generator(&self, q: u32) -> Result<u32> {
        if q == 2 {
            return Ok(1);
        }
        let order = (q - 1) as u64;
        let primes: Vec<u64> = factor_int(&BigUint::from(order))?
            .primes()
            .map(|r| r.to_u64().expect("small prime"))
            .collect();
        (2..q)
            .find(|&g| primes.iter().all(|&r| self.pow(g, order / r) != 1))
            .ok_or_else(|| Error::InvariantViolation(format!("no generator found for F_{q}")))
    }
}

/// Smallest monic irreducible of degree `s` over `F_p`, comparing
/// coefficient vectors from the constant term upwards.
fn smallest_irreducible(p: u32, s: usize) -> Result<Vec<u32>> {
    let prime_field = FieldSpec::new(p, 1)?;
    let mut low = vec![0u32; s];
    loop {
        let mut coeffs = low.clone();
        coeffs.push(1);
        let f = super::Poly::from_coeffs(coeffs.clone());
        if prime_field.is_irreducible(&f)? {
            return Ok(coeffs);
        }
        // Odometer with the constant term as the most significant digit.
        let mut i = s;
        loop {
            if i == 0 {
                return Err(Error::InvariantViolation(format!(
                    "no irreducible of degree {s} over F_{p}"
                )));
            }
            i -= 1;
            low[i] += 1;
            if low[i] < p {
                break;
            }
            low[i] = 0;
        }
    }
}
