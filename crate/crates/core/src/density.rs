//! The value set `𝒱(y) = Φ(A) ∩ [1, y]` and its size `V(y)`.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::gfpoly::FieldSpec;
use crate::numtheory::{floor_log, GUARD_BAND};
use crate::{Error, Result};

pub const CSV_HEADER: &str = "y,k,V,bound,ratio";

/// All totient values `<= y`, ascending.
///
/// Walks the factored forms `q^j Π (q^d - 1)^{m_d}` directly: a product of
/// basis factors is extended by every `q^j` that keeps it below `y` and whose
/// exponent can be spread over the degrees present.
pub fn phi_values_up_to(y: &BigUint, field: &FieldSpec) -> BTreeSet<BigUint> {
    let qb = BigUint::from(field.q());
    let mut basis = Vec::new();
    let mut d = 1u32;
    loop {
        let b = qb.pow(d) - 1u32;
        if b > *y {
            break;
        }
        basis.push((d as usize, b, field.pi_cap(d)));
        d += 1;
    }
    let mut out = BTreeSet::new();
    let mut support = Vec::new();
    collect(y, &qb, &basis, BigUint::from(1u32), &mut support, &mut out);
    out
}

fn collect(
    y: &BigUint,
    qb: &BigUint,
    basis: &[(usize, BigUint, u64)],
    prod: BigUint,
    support: &mut Vec<usize>,
    out: &mut BTreeSet<BigUint>,
) {
    let Some(((d, b, cap), rest)) = basis.split_first() else {
        if support.is_empty() {
            return;
        }
        let mut reach = vec![true];
        let mut value = prod;
        let mut j = 0usize;
        while value <= *y {
            if j > 0 {
                let ok = support.iter().any(|&d| d <= j && reach[j - d]);
                reach.push(ok);
            }
            if reach[j] {
                out.insert(value.clone());
            }
            value *= qb;
            j += 1;
        }
        return;
    };
    collect(y, qb, rest, prod.clone(), support, out);
    support.push(*d);
    let mut acc = prod;
    let mut m = 0u64;
    while m < *cap {
        acc *= b;
        if acc > *y {
            break;
        }
        m += 1;
        collect(y, qb, rest, acc.clone(), support, out);
    }
    support.pop();
}

/// `V(y)` together with the upper bound `2qk(e²/2)^{k/2}`, `k = ⌊log_q y⌋`.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityReport {
    pub y: BigUint,
    pub k: u32,
    pub v: BigUint,
    pub bound: f64,
    pub ratio: f64,
    /// False when `k = 0`: the bound is then 0 and says nothing.
    pub bound_checked: bool,
}

impl DensityReport {
    pub fn csv_row(&self) -> String {
        format!("{},{},{},{},{}", self.y, self.k, self.v, self.bound, self.ratio)
    }
}

pub fn value_bound(q: u32, k: u32) -> f64 {
    let e2 = std::f64::consts::E.powi(2);
    2.0 * q as f64 * k as f64 * (e2 / 2.0).powf(k as f64 / 2.0)
}

/// Computes `V(y)` and checks it against the bound. A violation is an error.
pub fn density_report(y: &BigUint, field: &FieldSpec) -> Result<DensityReport> {
    if *y < BigUint::from(1u32) {
        return Err(Error::InvalidArgument("y must be >= 1".into()));
    }
    let q = field.q();
    let k = floor_log(q as u64, y);
    let v = BigUint::from(phi_values_up_to(y, field).len());
    let bound = value_bound(q, k);
    let vf = v.to_f64().unwrap_or(f64::INFINITY);
    let ratio = vf / y.to_f64().unwrap_or(f64::INFINITY);
    let bound_checked = k >= 1;
    if bound_checked && vf > bound * (1.0 - GUARD_BAND) {
        return Err(Error::InvariantViolation(format!(
            "V({y}) = {v} exceeds the bound {bound} (k = {k})"
        )));
    }
    Ok(DensityReport { y: y.clone(), k, v, bound, ratio, bound_checked })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    fn values(y: u64, p: u32) -> Vec<u64> {
        let f = FieldSpec::new(p, 1).unwrap();
        phi_values_up_to(&big(y), &f).iter().map(|v| v.to_u64().unwrap()).collect()
    }

    #[test]
    fn value_examples() {
        assert_eq!(values(10, 2), [1, 2, 3, 4, 6, 7, 8]);
        assert_eq!(values(2, 3), [2]);
        assert_eq!(values(1, 2), [1]);
        assert_eq!(values(10, 3), [2, 4, 6, 8]);
    }

    #[test]
    fn report_examples() {
        let f2 = FieldSpec::new(2, 1).unwrap();
        let r = density_report(&big(10), &f2).unwrap();
        assert_eq!((r.k, r.v.clone()), (3, big(7)));
        assert!((r.bound - 85.2).abs() < 0.1, "{}", r.bound);
        assert_eq!(r.csv_row().split(',').count(), 5);

        let r = density_report(&big(1), &f2).unwrap();
        assert_eq!((r.k, r.v, r.bound_checked), (0, big(1), false));

        let f3 = FieldSpec::new(3, 1).unwrap();
        let r = density_report(&big(729), &f3).unwrap();
        assert!(r.bound_checked);
    }
}
