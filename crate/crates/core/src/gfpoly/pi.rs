use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint, Sign};

use crate::numtheory::mobius;

/// Number of monic irreducible polynomials of degree `d >= 1` over `F_q`,
/// by Möbius inversion: `(1/d) Σ_{j|d} μ(j) q^{d/j}`.
pub fn pi_count(q: u64, d: u32) -> BigUint {
    assert!(d >= 1, "pi_count requires d >= 1");
    let qb = BigInt::from(q);
    let mut total = BigInt::from(0);
    for j in (1..=d).filter(|j| d.is_multiple_of(*j)) {
        match mobius(j as u64).expect("j >= 1") {
            1 => total += qb.pow(d / j),
            -1 => total -= qb.pow(d / j),
            _ => {}
        }
    }
    let (sign, mag) = (total / BigInt::from(d)).into_parts();
    debug_assert!(sign != Sign::Minus);
    mag
}

/// Memo of `π_q(d)` values for one field.
#[derive(Debug, Clone)]
pub struct PiTable {
    q: u64,
    entries: BTreeMap<u32, BigUint>,
}

impl PiTable {
    pub fn new(q: u64) -> Self {
        Self { q, entries: BTreeMap::new() }
    }

    pub fn get(&mut self, d: u32) -> BigUint {
        let q = self.q;
        self.entries.entry(d).or_insert_with(|| pi_count(q, d)).clone()
    }

    pub fn entries(&self) -> &BTreeMap<u32, BigUint> {
        &self.entries
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        let got: Vec<u64> = (1..=6).map(|d| pi_count(2, d).try_into().unwrap()).collect();
        assert_eq!(got, vec![2, 1, 2, 3, 6, 9]);
        assert_eq!(pi_count(3, 2), BigUint::from(3u32));
        assert_eq!(pi_count(3, 3), BigUint::from(8u32));
        assert_eq!(pi_count(5, 2), BigUint::from(10u32));
        for q in [2u64, 3, 4, 5, 7, 9, 16] {
            assert_eq!(pi_count(q, 1), BigUint::from(q));
        }
    }

    #[test]
    fn necklace_identity() {
        // Σ_{d|D} d·π_q(d) = q^D
        for q in [2u64, 3, 4, 5] {
            for big_d in 1..=12u32 {
                let sum: BigUint = (1..=big_d)
                    .filter(|d| big_d % d == 0)
                    .map(|d| pi_count(q, d) * d)
                    .sum();
                assert_eq!(sum, BigUint::from(q).pow(big_d), "q={q} D={big_d}");
            }
        }
    }
}
