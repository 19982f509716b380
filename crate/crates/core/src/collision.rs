//! Deciding `Φ(f) = Φ(g)` from signatures, without evaluating either side.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;

use crate::gfpoly::{enumerate_monic_up_to, FieldSpec, Poly};
use crate::totient::{phi, Signature};
use crate::Result;

/// Whether two valid signatures over `field` give the same totient value.
///
/// Over `F_2` the linear factors contribute `2 - 1 = 1`, so only `deg - m_1`
/// and the higher counts matter. Over `F_3` a linear factor contributes `2`
/// and a quadratic one contributes `8 = 2^3` against an extra power of 3, so
/// `m_1 + 3 m_2` and `deg + m_2` are what survive. For larger `q` the
/// signature is determined by the value.
pub fn same_phi(a: &Signature, b: &Signature, field: &FieldSpec) -> bool {
    let from = match field.q() {
        2 => 2,
        3 => 3,
        _ => 1,
    };
    let tail_equal = {
        let tail = |s: &Signature| -> Vec<(usize, usize)> {
            s.counts().range(from..).map(|(&d, &m)| (d, m)).collect()
        };
        tail(a) == tail(b)
    };
    if !tail_equal {
        return false;
    }
    match field.q() {
        2 => a.degree() as i64 - a.m(1) as i64 == b.degree() as i64 - b.m(1) as i64,
        3 => a.m(1) + 3 * a.m(2) == b.m(1) + 3 * b.m(2) && a.degree() + a.m(2) == b.degree() + b.m(2),
        _ => a.degree() == b.degree(),
    }
}

/// Monic polynomials of degree `1..=max_deg` grouped by the exact value of
/// `Φ`. Each class is sorted.
pub fn phi_classes(field: &FieldSpec, max_deg: usize) -> Result<BTreeMap<BigUint, Vec<Poly>>> {
    let mut classes: BTreeMap<BigUint, Vec<Poly>> = BTreeMap::new();
    for f in enumerate_monic_up_to(field, max_deg) {
        let (_, n) = phi(&f, field)?;
        classes.entry(n).or_default().push(f);
    }
    Ok(classes)
}

/// Distinct signatures occurring in each class of [`phi_classes`]. Handy when
/// only the collision structure matters.
pub fn signature_classes(
    field: &FieldSpec,
    max_deg: usize,
) -> Result<BTreeMap<BigUint, BTreeSet<Signature>>> {
    let mut classes: BTreeMap<BigUint, BTreeSet<Signature>> = BTreeMap::new();
    for f in enumerate_monic_up_to(field, max_deg) {
        let sig = crate::totient::signature(&f, field)?;
        let (_, n) = crate::totient::phi_from_signature(&sig, field)?;
        classes.entry(n).or_default().insert(sig);
    }
    Ok(classes)
}
