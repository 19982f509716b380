//! Finite fields `F_{p^s}` and univariate polynomials over them.

mod arith;
mod enumerate;
mod factor;
mod field;
mod pi;
mod poly;

use num_bigint::BigUint;

pub use enumerate::{enumerate_irreducibles, enumerate_monic, enumerate_monic_up_to, MonicPolys};
pub use factor::Factorization;
pub use field::{FieldElem, FieldSpec};
pub use pi::{pi_count, PiTable};
pub use poly::Poly;

use crate::{Error, Result};

/// Builds `F_{p^s}`; see [`FieldSpec::new`].
pub fn field_make(p: u32, s: u32) -> Result<FieldSpec> {
    FieldSpec::new(p, s)
}

/// `π_q(d)`, the number of monic irreducibles of degree `d`.
pub fn pi_q(field: &FieldSpec, d: u32) -> Result<BigUint> {
    if d == 0 {
        return Err(Error::InvalidArgument("pi_q requires d >= 1".into()));
    }
    Ok(field.pi(d))
}

/// Whether `p | π_q(d)` or `4 | π_q(d)`. Only meaningful for `q != 2`.
pub fn pi_divisibility_check(field: &FieldSpec, d: u32) -> Result<bool> {
    if field.q() == 2 {
        return Err(Error::InvalidArgument("divisibility check requires q != 2".into()));
    }
    let pi = pi_q(field, d)?;
    Ok((&pi % field.p()) == BigUint::from(0u32) || (&pi % 4u32) == BigUint::from(0u32))
}
