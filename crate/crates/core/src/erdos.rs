//! Common values of `Φ` and `σ`.
//!
//! Only `q = 2` and `q = 3` have any. Over `F_3` they are the products
//! `(3^{d_1} - 1)(3^{d_2} - 1)`; over `F_2` they form the union of seven
//! explicit families, listed in [`Family`] in matching order.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;

use crate::gfpoly::{enumerate_monic_up_to, FieldSpec, Poly};
use crate::numtheory::floor_log;
use crate::preimage::preimage_list;
use crate::totient::sigma;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// `(3^{d1} - 1)(3^{d2} - 1)`, `d1, d2 >= 1`.
    Ternary,
    /// `2^d - 1`, `d >= 2`.
    Mersenne,
    /// `3(2^d - 1)`, `d >= 3`, `2 | d` or `3 | d`.
    ThreeMersenne,
    /// `21(2^d - 1)`, `d >= 3`.
    TwentyOneMersenne,
    /// `(2^{d1} - 1)(2^{d2} - 1)`, `d1 >= 2`, `d2 >= 3`.
    MersennePair,
    /// `21(2^{d1} - 1)(2^{d2} - 1)`, `d1 >= 3`, `d2 >= 4`.
    TwentyOnePair,
    /// `3(2^{d1} - 1)(2^{d2} - 1)`, `d1, d2 >= 4`, `2 | d1` or `3 | d1`.
    ThreePair,
    /// `3(2^{d1} - 1)(2^{d2} - 1)(2^{d3} - 1)`, all `>= 4`, `2 | d1` or `3 | d1`.
    ThreeTriple,
}

const BINARY_FAMILIES: [Family; 7] = [
    Family::Mersenne,
    Family::ThreeMersenne,
    Family::TwentyOneMersenne,
    Family::MersennePair,
    Family::TwentyOnePair,
    Family::ThreePair,
    Family::ThreeTriple,
];

impl Family {
    pub fn tag(self) -> &'static str {
        match self {
            Self::Ternary => "(3^d1-1)(3^d2-1)",
            Self::Mersenne => "2^d-1",
            Self::ThreeMersenne => "3(2^d-1)",
            Self::TwentyOneMersenne => "21(2^d-1)",
            Self::MersennePair => "(2^d1-1)(2^d2-1)",
            Self::TwentyOnePair => "21(2^d1-1)(2^d2-1)",
            Self::ThreePair => "3(2^d1-1)(2^d2-1)",
            Self::ThreeTriple => "3(2^d1-1)(2^d2-1)(2^d3-1)",
        }
    }

    fn arity(self) -> usize {
        match self {
            Self::Mersenne | Self::ThreeMersenne | Self::TwentyOneMersenne => 1,
            Self::Ternary | Self::MersennePair | Self::TwentyOnePair | Self::ThreePair => 2,
            Self::ThreeTriple => 3,
        }
    }

    fn base(self) -> u32 {
        if self == Self::Ternary {
            3
        } else {
            2
        }
    }

    fn multiplier(self) -> u32 {
        match self {
            Self::ThreeMersenne | Self::ThreePair | Self::ThreeTriple => 3,
            Self::TwentyOneMersenne | Self::TwentyOnePair => 21,
            _ => 1,
        }
    }

    /// Lower bound on each parameter, in order.
    fn minimums(self) -> &'static [u32] {
        match self {
            Self::Ternary => &[1, 1],
            Self::Mersenne => &[2],
            Self::ThreeMersenne | Self::TwentyOneMersenne => &[3],
            Self::MersennePair => &[2, 3],
            Self::TwentyOnePair => &[3, 4],
            Self::ThreePair => &[4, 4],
            Self::ThreeTriple => &[4, 4, 4],
        }
    }

    /// Whether `params` satisfies the family's constraints.
    pub fn admits(self, params: &[u32]) -> bool {
        if params.len() != self.arity() {
            return false;
        }
        if params.iter().zip(self.minimums()).any(|(d, lo)| d < lo) {
            return false;
        }
        match self {
            Self::ThreeMersenne | Self::ThreePair | Self::ThreeTriple => {
                params[0].is_multiple_of(2) || params[0].is_multiple_of(3)
            }
            _ => true,
        }
    }

    pub fn evaluate(self, params: &[u32]) -> BigUint {
        let b = BigUint::from(self.base());
        params
            .iter()
            .fold(BigUint::from(self.multiplier()), |acc, &d| acc * (b.pow(d) - 1u32))
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionVerdict {
    pub member: bool,
    pub family: Option<Family>,
    pub params: Vec<u32>,
}

impl IntersectionVerdict {
    fn none() -> Self {
        Self { member: false, family: None, params: Vec::new() }
    }
}

fn families_for(field: &FieldSpec) -> &'static [Family] {
    match field.q() {
        2 => &BINARY_FAMILIES,
        3 => &[Family::Ternary],
        _ => &[],
    }
}

/// Calls `visit` on every admissible parameter tuple of `family` whose value
/// is at most `limit`, in lexicographic order, until it returns `true`.
fn walk_family(family: Family, limit: &BigUint, visit: &mut dyn FnMut(&[u32], BigUint) -> bool) {
    let b = family.base();
    let dmax = floor_log(b as u64, &(limit + 1u32)) + 1;
    let mut params = Vec::with_capacity(family.arity());
    walk(family, dmax, limit, &mut params, BigUint::from(family.multiplier()), visit);
}

fn walk(
    family: Family,
    dmax: u32,
    limit: &BigUint,
    params: &mut Vec<u32>,
    acc: BigUint,
    visit: &mut dyn FnMut(&[u32], BigUint) -> bool,
) -> bool {
    if acc > *limit {
        return false;
    }
    let k = params.len();
    if k == family.arity() {
        return family.admits(params) && visit(params, acc);
    }
    let b = BigUint::from(family.base());
    for d in family.minimums()[k]..=dmax {
        let next = &acc * (b.pow(d) - 1u32);
        if next > *limit {
            break;
        }
        params.push(d);
        let stop = walk(family, dmax, limit, params, next, visit);
        params.pop();
        if stop {
            return true;
        }
    }
    false
}

/// Whether `n` is both a totient value and a divisor-sum value, with the
/// first matching family and its smallest parameters.
pub fn intersection_member(n: &BigUint, field: &FieldSpec) -> IntersectionVerdict {
    for &family in families_for(field) {
        let mut hit = None;
        walk_family(family, n, &mut |params, value| {
            if value == *n {
                hit = Some(params.to_vec());
                true
            } else {
                false
            }
        });
        if let Some(params) = hit {
            return IntersectionVerdict { member: true, family: Some(family), params };
        }
    }
    IntersectionVerdict::none()
}

/// Every common value `<= y`, ascending.
pub fn intersection_up_to(y: &BigUint, field: &FieldSpec) -> Vec<BigUint> {
    let mut out = BTreeSet::new();
    for &family in families_for(field) {
        walk_family(family, y, &mut |_, value| {
            out.insert(value);
            false
        });
    }
    out.into_iter().collect()
}

/// A pair `(f, g)` with `Φ(f) = σ(g) = n`, or `None` when `n` is not a
/// common value. `f` is the smallest preimage; `g` is the smallest monic
/// with `σ(g) = n`, searched up to degree `⌊log_q n⌋` since `σ(g) >= |g|`.
pub fn erdos_witness(n: &BigUint, field: &FieldSpec) -> Result<Option<(Poly, Poly)>> {
    if !intersection_member(n, field).member {
        return Ok(None);
    }
    let missing = |what: &str| Error::InvariantViolation(format!("{n} is a common value but no {what} was found"));
    let f = preimage_list(n, field)?.into_iter().next().ok_or_else(|| missing("Φ-preimage"))?;
    let g = sigma_preimage(n, field)?.ok_or_else(|| missing("σ-preimage"))?;
    Ok(Some((f, g)))
}

/// Smallest monic `g` with `σ(g) = n`.
pub fn sigma_preimage(n: &BigUint, field: &FieldSpec) -> Result<Option<Poly>> {
    if n.is_one() {
        return Ok(None);
    }
    let max_deg = floor_log(field.q() as u64, n) as usize;
    for g in enumerate_monic_up_to(field, max_deg) {
        if sigma(&g, field)? == *n {
            return Ok(Some(g));
        }
    }
    Ok(None)
}
