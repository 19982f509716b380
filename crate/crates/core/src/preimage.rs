//! Which integers are totient values, how many monic polynomials reach each
//! of them, and a brute-force enumerator to check the count against.
//!
//! A value is written `n = q^j · Π_d (q^d - 1)^{m_d}` with `m_d <= π_q(d)`.
//! For `q >= 4` this form is unique. For `q = 3` the factors `3 - 1 = 2` and
//! `3^2 - 1 = 2^3` merge into a single power `2^i` with `i = m_1 + 3 m_2`, and
//! for `q = 2` the linear factors contribute `2 - 1 = 1`, so `m_1` is not
//! visible in `n` at all. A [`Representation`] keeps the visible part and
//! expands into the concrete `(j, {m_d})` choices on demand.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::collision::phi_classes;
use crate::gfpoly::{enumerate_monic_up_to, FieldSpec, Poly};
use crate::numtheory::{binomial, valuation};
use crate::totient::{composable, phi, PhiValue};
use crate::{Error, Result};

/// Largest merged exponent `m_1 + 3 m_2` available over `F_3`.
const MAX_MERGED: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Representation {
    /// Exponent of `q`.
    pub j: usize,
    /// `d -> m_d` over the degrees visible in `n`: all `d` for `q >= 4`,
    /// `d >= 2` for `q = 2`, `d >= 3` for `q = 3`.
    pub counts: BTreeMap<usize, usize>,
    /// `i = m_1 + 3 m_2`, present only for `q = 3`.
    pub merged: Option<usize>,
}

impl Representation {
    /// `q^j · Π (q^d - 1)^{m_d}`, with `2^i` folded in for `q = 3`.
    pub fn evaluate(&self, q: u32) -> BigUint {
        let value = PhiValue { j: self.j, counts: self.counts.clone() }.evaluate(q);
        match self.merged {
            Some(i) => value << i,
            None => value,
        }
    }

    /// The concrete factored forms behind this representation that some
    /// monic polynomial actually attains.
    pub fn choices(&self, field: &FieldSpec) -> Vec<PhiValue> {
        let low: Vec<BTreeMap<usize, usize>> = match (field.q(), self.merged) {
            (3, Some(i)) => (0..=3usize)
                .filter_map(|m2| {
                    let m1 = i.checked_sub(3 * m2)?;
                    (m1 <= 3).then(|| BTreeMap::from([(1, m1), (2, m2)]))
                })
                .collect(),
            (2, _) => (0..=2).map(|m1| BTreeMap::from([(1, m1)])).collect(),
            _ => vec![BTreeMap::new()],
        };
        low.into_iter()
            .filter_map(|extra| {
                let mut counts = self.counts.clone();
                counts.extend(extra.into_iter().filter(|&(_, m)| m > 0));
                let value = PhiValue { j: self.j, counts };
                valid_choice(&value, field).then_some(value)
            })
            .collect()
    }
}

fn valid_choice(value: &PhiValue, field: &FieldSpec) -> bool {
    !value.counts.is_empty()
        && value.counts.iter().all(|(&d, &m)| m as u64 <= field.pi_cap(d as u32))
        && composable(value.j, value.counts.keys().copied())
}

fn smallest_visible_degree(q: u32) -> usize {
    match q {
        2 => 2,
        3 => 3,
        _ => 1,
    }
}

/// All representations of `n` that at least one monic polynomial attains.
/// Empty exactly when `n` is not a totient value.
pub fn represent(n: &BigUint, field: &FieldSpec) -> Vec<Representation> {
    if n.is_zero() {
        return Vec::new();
    }
    let (p, s, q) = (field.p(), field.s() as usize, field.q());
    let v = valuation(n, p as u64) as usize;
    if !v.is_multiple_of(s) {
        return Vec::new();
    }
    let j = v / s;
    let cofactor = n / BigUint::from(p).pow(v as u32);

    let qb = BigUint::from(q);
    let dmin = smallest_visible_degree(q);
    let mut basis = Vec::new();
    let mut d = dmin;
    loop {
        let b = qb.pow(d as u32) - 1u32;
        if b > cofactor {
            break;
        }
        basis.push((d, b));
        d += 1;
    }

    let mut found = Vec::new();
    let mut counts = BTreeMap::new();
    search(&cofactor, &basis, &mut counts, field, &mut |rest, counts| {
        let merged = if q == 3 {
            let i = rest.trailing_zeros().unwrap_or(0) as usize;
            if (rest >> i) != BigUint::one() || i > MAX_MERGED {
                return;
            }
            Some(i)
        } else if rest.is_one() {
            None
        } else {
            return;
        };
        let rep = Representation { j, counts: counts.clone(), merged };
        if !rep.choices(field).is_empty() {
            found.push(rep);
        }
    });
    found.sort();
    found
}

/// Depth-first over `basis`, largest degree first, dividing out each
/// feasible power of `q^d - 1`.
fn search(
    rest: &BigUint,
    basis: &[(usize, BigUint)],
    counts: &mut BTreeMap<usize, usize>,
    field: &FieldSpec,
    leaf: &mut dyn FnMut(&BigUint, &BTreeMap<usize, usize>),
) {
    let Some(((d, b), smaller)) = basis.split_last() else {
        leaf(rest, counts);
        return;
    };
    if b > rest {
        search(rest, smaller, counts, field, leaf);
        return;
    }
    let cap = field.pi_cap(*d as u32);
    let mut powers = vec![rest.clone()];
    while (powers.len() as u64) <= cap {
        let (quot, rem) = powers.last().expect("non-empty").div_rem(b);
        if !rem.is_zero() {
            break;
        }
        powers.push(quot);
    }
    for (m, r) in powers.iter().enumerate().rev() {
        if m > 0 {
            counts.insert(*d, m);
        } else {
            counts.remove(d);
        }
        search(r, smaller, counts, field, leaf);
    }
    counts.remove(d);
}

/// Whether `n` is a value of `Φ` on non-constant polynomials.
pub fn is_value(n: &BigUint, field: &FieldSpec) -> bool {
    !represent(n, field).is_empty()
}

/// `binom(n, k)` for a big `n` and small `k`.
fn binomial_big(n: &BigUint, k: usize) -> BigUint {
    if BigUint::from(k) > *n {
        return BigUint::zero();
    }
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Number of ways to spread `j` extra degrees over the chosen primes: the
/// coefficient of `t^j` in `Π_d (1 - t^d)^{-m_d}`.
fn excess_ways(j: usize, counts: &BTreeMap<usize, usize>) -> BigUint {
    let mut ways = vec![BigUint::zero(); j + 1];
    ways[0] = BigUint::one();
    for (&d, &m) in counts {
        for _ in 0..m {
            for t in d..=j {
                let add = ways[t - d].clone();
                ways[t] += add;
            }
        }
    }
    ways.swap_remove(j)
}

/// Monic polynomials whose factored totient is exactly `value`.
pub fn count_for_choice(value: &PhiValue, field: &FieldSpec) -> BigUint {
    let picks: BigUint = value
        .counts
        .iter()
        .map(|(&d, &m)| binomial_big(&field.pi(d as u32), m))
        .product();
    if picks.is_zero() {
        return picks;
    }
    picks * excess_ways(value.j, &value.counts)
}

/// `|Φ^{-1}(n) ∩ M|` from the representations of `n`.
pub fn preimage_count(n: &BigUint, field: &FieldSpec) -> BigUint {
    represent(n, field)
        .iter()
        .flat_map(|rep| rep.choices(field))
        .map(|value| count_for_choice(&value, field))
        .sum()
}

/// Degree `D*` such that every monic `f` with `Φ(f) = n` has `deg f <= D*`.
///
/// Two bounds are combined. First, `Φ(f) >= q^{deg f - r}` where `r` is the
/// number of distinct prime factors, and `deg f - r_max(deg f)` never
/// decreases, so past the first degree where `q^{D - r_max(D)} > n` nothing
/// qualifies. Below that degree `minΦ(D)` is bounded from beneath by a
/// bounded knapsack over the squarefree part, and `D*` is the largest degree
/// where that bound does not exceed `n`. Returns 0 when no degree qualifies.
pub fn degree_bound(n: &BigUint, field: &FieldSpec) -> usize {
    let q = field.q();
    let qb = BigUint::from(q);

    let mut tail_start = 1;
    loop {
        let r = max_distinct_primes(tail_start, field);
        if qb.pow((tail_start - r) as u32) > *n {
            break;
        }
        tail_start += 1;
    }

    let min_prod = min_squarefree_product(tail_start, field);
    (1..tail_start)
        .filter(|&big_d| {
            (1..=big_d).any(|t| match &min_prod[t] {
                Some(prod) => prod * qb.pow((big_d - t) as u32) <= *n,
                None => false,
            })
        })
        .max()
        .unwrap_or(0)
}

/// Most distinct monic irreducibles whose degrees sum to at most `budget`.
fn max_distinct_primes(budget: usize, field: &FieldSpec) -> usize {
    let mut left = budget;
    let mut count = 0;
    let mut d = 1;
    while d <= left {
        let take = (left / d).min(field.pi_cap(d as u32).min(usize::MAX as u64) as usize);
        count += take;
        left -= take * d;
        d += 1;
    }
    count
}

/// `min Π (q^d - 1)^{m_d}` over `Σ d m_d = t`, `m_d <= π_q(d)`, for
/// `t < limit`. `None` where no such choice exists.
fn min_squarefree_product(limit: usize, field: &FieldSpec) -> Vec<Option<BigUint>> {
    let qb = BigUint::from(field.q());
    let mut best: Vec<Option<BigUint>> = vec![None; limit.max(1)];
    best[0] = Some(BigUint::one());
    for d in 1..limit {
        let b = qb.pow(d as u32) - 1u32;
        let cap = field.pi_cap(d as u32).min((limit / d) as u64) as usize;
        let prev = best.clone();
        for t in 0..limit {
            let Some(base) = &prev[t] else { continue };
            let mut prod = base.clone();
            for m in 1..=cap {
                let t2 = t + m * d;
                if t2 >= limit {
                    break;
                }
                prod *= &b;
                if best[t2].as_ref().is_none_or(|cur| prod < *cur) {
                    best[t2] = Some(prod.clone());
                }
            }
        }
    }
    best
}

/// Brute-force preimages: every monic `f` with `deg f <= degree_bound(n)`
/// and `Φ(f) = n`, sorted.
pub fn preimage_list(n: &BigUint, field: &FieldSpec) -> Result<Vec<Poly>> {
    let bound = degree_bound(n, field);
    let mut out = Vec::new();
    for f in enumerate_monic_up_to(field, bound) {
        if phi(&f, field)?.1 == *n {
            out.push(f);
        }
    }
    Ok(out)
}

/// [`preimage_list`] for every `n <= n_max` at once, from a single
/// enumeration. Values with no preimage are absent.
pub fn preimage_lists_up_to(n_max: &BigUint, field: &FieldSpec) -> Result<BTreeMap<BigUint, Vec<Poly>>> {
    let mut classes = phi_classes(field, degree_bound(n_max, field))?;
    classes.retain(|n, _| n <= n_max);
    Ok(classes)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CountClass {
    Empty,
    Unique,
    /// Exactly `q` preimages (`q >= 4`).
    ExactlyQ,
    /// At least `binom(q, 2)` preimages (`q >= 4`).
    AtLeastBinom,
    /// Exactly three preimages (`q = 2`, only at `n = 1`).
    ExactlyThree,
    /// More than three preimages (`q = 2`).
    AboveThree,
    /// Two or more preimages (`q = 3`).
    Multiple,
}

impl CountClass {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Empty => "empty",
            Self::Unique => "unique",
            Self::ExactlyQ => "exactly-q",
            Self::AtLeastBinom => "at-least-binom",
            Self::ExactlyThree => "exactly-3",
            Self::AboveThree => "above-3",
            Self::Multiple => "multiple",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountProfile {
    pub n: BigUint,
    pub count: BigUint,
    pub class: CountClass,
}

/// Classifies `n` by its preimage count, failing if the count lands in one
/// of the excluded gaps or disagrees with the explicit uniqueness condition.
pub fn count_profile(n: &BigUint, field: &FieldSpec) -> Result<CountProfile> {
    let count = preimage_count(n, field);
    let class = classify(n, &count, field)?;
    if field.q() != 2 {
        let explicit = uniqueness_condition(n, field);
        if explicit != (class == CountClass::Unique) {
            return Err(Error::InvariantViolation(format!(
                "n = {n}: count {count} but explicit uniqueness condition says {explicit}"
            )));
        }
    }
    Ok(CountProfile { n: n.clone(), count, class })
}

/// [`count_profile`] plus a brute-force recount; any disagreement is an error
/// that reports both numbers.
pub fn count_profile_checked(n: &BigUint, field: &FieldSpec) -> Result<CountProfile> {
    let formula = preimage_count(n, field);
    let listed = preimage_list(n, field)?.len();
    if formula != BigUint::from(listed) {
        return Err(Error::InvariantViolation(format!(
            "n = {n}: formula count {formula}, enumerated count {listed}"
        )));
    }
    count_profile(n, field)
}

fn classify(n: &BigUint, count: &BigUint, field: &FieldSpec) -> Result<CountClass> {
    let q = field.q() as u64;
    let bad = |why: &str| {
        Err(Error::InvariantViolation(format!(
            "n = {n} has {count} preimages over F_{q}: {why}"
        )))
    };
    if count.is_zero() {
        return Ok(CountClass::Empty);
    }
    match q {
        2 => {
            let three = BigUint::from(3u32);
            if *count < three {
                bad("below the floor of 3")
            } else if *count == three {
                if n.is_one() {
                    Ok(CountClass::ExactlyThree)
                } else {
                    bad("exactly 3 away from n = 1")
                }
            } else if n.is_one() {
                bad("n = 1 must have exactly 3")
            } else {
                Ok(CountClass::AboveThree)
            }
        }
        3 => Ok(if count.is_one() { CountClass::Unique } else { CountClass::Multiple }),
        _ => {
            if count.is_one() {
                Ok(CountClass::Unique)
            } else if *count == BigUint::from(q) {
                Ok(CountClass::ExactlyQ)
            } else if *count >= binomial(q, 2) {
                Ok(CountClass::AtLeastBinom)
            } else {
                bad("inside an excluded gap")
            }
        }
    }
}

/// The explicit criterion for a unique preimage, read off a representation:
/// `j = 0` and every `m_d` is `0` or `π_q(d)`. Over `F_3` the linear and
/// quadratic counts must additionally be equal, which forces `i ∈ {0, 12}`.
pub fn representation_is_unique_form(rep: &Representation, field: &FieldSpec) -> bool {
    if rep.j != 0 {
        return false;
    }
    let full = |d: usize, m: usize| m == 0 || m as u64 == field.pi_cap(d as u32);
    if !rep.counts.iter().all(|(&d, &m)| full(d, m)) {
        return false;
    }
    match rep.merged {
        Some(i) => i == 0 || i == MAX_MERGED,
        None => true,
    }
}

/// Whether some representation of `n` has the unique-preimage form.
/// Not defined for `q = 2`, where it is always false.
pub fn uniqueness_condition(n: &BigUint, field: &FieldSpec) -> bool {
    field.q() != 2
        && represent(n, field)
            .iter()
            .any(|rep| representation_is_unique_form(rep, field))
}

/// Target counts for which an explicit `n` is known.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SierpinskiGoal {
    /// `q = 2`: exactly `l >= 3` preimages.
    Count(u32),
    /// `q != 2`: exactly `q^l` preimages, `l >= 1`.
    QPower(u32),
    /// `q != 2`: exactly `binom(q, 2)(l + 1)` preimages, `l >= 0`.
    BinomMultiple(u32),
}

/// An `n` with a prescribed preimage count, and that count.
pub fn sierpinski_witness(field: &FieldSpec, goal: SierpinskiGoal) -> Result<(BigUint, BigUint)> {
    let q = field.q();
    let qb = BigUint::from(q);
    match goal {
        SierpinskiGoal::Count(l) => {
            if q != 2 {
                return Err(Error::InvalidArgument("count goal l needs q = 2".into()));
            }
            if l < 3 {
                return Err(Error::InvalidArgument(format!("count goal needs l >= 3, got {l}")));
            }
            Ok((BigUint::one() << (l - 3), BigUint::from(l)))
        }
        SierpinskiGoal::QPower(l) => {
            if q == 2 {
                return Err(Error::InvalidArgument("q^l goal needs q != 2".into()));
            }
            if l < 1 {
                return Err(Error::InvalidArgument("q^l goal needs l >= 1".into()));
            }
            let mut n = qb.pow(l);
            for d in 1..=l {
                let pi = field.pi(d).to_u32().ok_or_else(|| {
                    Error::InvalidArgument(format!("π_q({d}) too large to use as an exponent"))
                })?;
                n *= (qb.pow(d) - 1u32).pow(pi);
            }
            Ok((n, qb.pow(l)))
        }
        SierpinskiGoal::BinomMultiple(l) => {
            if q == 2 {
                return Err(Error::InvalidArgument("binomial goal needs q != 2".into()));
            }
            let n = qb.pow(l) * BigUint::from(q - 1).pow(2);
            Ok((n, binomial(q as u64, 2) * (l + 1)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    fn field(p: u32, s: u32) -> FieldSpec {
        FieldSpec::new(p, s).unwrap()
    }

    #[test]
    fn represent_examples() {
        let f2 = field(2, 1);
        assert_eq!(
            represent(&big(3), &f2),
            vec![Representation { j: 0, counts: BTreeMap::from([(2, 1)]), merged: None }]
        );
        assert!(represent(&big(5), &f2).is_empty());
        let f3 = field(3, 1);
        assert_eq!(
            represent(&big(8), &f3),
            vec![Representation { j: 0, counts: BTreeMap::new(), merged: Some(3) }]
        );
        assert!(represent(&big(1), &f3).is_empty());
    }

    #[test]
    fn count_examples() {
        let f2 = field(2, 1);
        for (n, c) in [(1, 3), (3, 4), (12, 9), (2, 4)] {
            assert_eq!(preimage_count(&big(n), &f2), big(c), "q=2 n={n}");
        }
        assert_eq!(preimage_count(&big(4), &field(5, 1)), big(5));
        assert_eq!(preimage_count(&big(4), &field(3, 1)), big(3));
        assert_eq!(preimage_count(&big(24), &field(3, 1)), big(3));
        assert_eq!(preimage_count(&big(3), &field(2, 2)), big(4));
    }

    #[test]
    fn list_examples() {
        let f2 = field(2, 1);
        let names: Vec<String> = preimage_list(&big(1), &f2).unwrap().iter().map(|p| p.to_string()).collect();
        assert_eq!(names, ["x", "x+1", "x^2+x"]);
        let twelve = preimage_list(&big(12), &f2).unwrap();
        assert_eq!(twelve.len(), 9);
        assert!(twelve.contains(&Poly::parse("x^4+x^2+1", &f2).unwrap()));
        let f3 = field(3, 1);
        let four = preimage_list(&big(4), &f3).unwrap();
        assert_eq!(four.len(), 3);
        assert!(four.iter().all(|f| f.degree() == Some(2)));
    }

    #[test]
    fn degree_bound_examples() {
        assert_eq!(degree_bound(&big(1), &field(2, 1)), 2);
        assert_eq!(degree_bound(&big(3), &field(2, 1)), 4);
        assert_eq!(degree_bound(&big(4), &field(5, 1)), 1);
        assert_eq!(degree_bound(&big(3), &field(5, 1)), 0);
    }

    #[test]
    fn profile_examples() {
        let p = count_profile(&big(4), &field(5, 1)).unwrap();
        assert_eq!((p.count, p.class), (big(5), CountClass::ExactlyQ));
        let p = count_profile(&big(1), &field(2, 1)).unwrap();
        assert_eq!(p.class, CountClass::ExactlyThree);
        let p = count_profile(&big(3), &field(2, 2)).unwrap();
        assert_eq!((p.count, p.class), (big(4), CountClass::ExactlyQ));
        let p = count_profile(&big(7), &field(5, 1)).unwrap();
        assert_eq!(p.class, CountClass::Empty);
        let p = count_profile_checked(&big(16), &field(5, 1)).unwrap();
        assert_eq!(p.count, big(10));
    }

    #[test]
    fn sierpinski_examples() {
        let f2 = field(2, 1);
        assert_eq!(sierpinski_witness(&f2, SierpinskiGoal::Count(5)).unwrap(), (big(4), big(5)));
        assert!(sierpinski_witness(&f2, SierpinskiGoal::Count(2)).is_err());
        assert!(sierpinski_witness(&f2, SierpinskiGoal::QPower(1)).is_err());
        let f3 = field(3, 1);
        assert_eq!(sierpinski_witness(&f3, SierpinskiGoal::QPower(1)).unwrap(), (big(24), big(3)));
        assert_eq!(sierpinski_witness(&f3, SierpinskiGoal::BinomMultiple(0)).unwrap(), (big(4), big(3)));
    }

    #[test]
    fn excess_ways_counts_monics() {
        // Spreading l extra degrees over every prime of degree <= l, with each
        // prime present, is the same as choosing a monic of degree l.
        let f3 = field(3, 1);
        for l in 1..=4usize {
            let counts = (1..=l).map(|d| (d, f3.pi_cap(d as u32) as usize)).collect();
            assert_eq!(excess_ways(l, &counts), big(3u64.pow(l as u32)));
        }
    }
}
