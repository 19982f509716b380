//! Self-check suites. Each runs a group of exhaustive or randomized checks at
//! a fixed default scale, optionally capped by a [`Budget`], and reports one
//! [`Check`] per item.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::collision::same_phi;
use crate::density::{density_report, phi_values_up_to};
use crate::erdos::intersection_up_to;
use crate::gfpoly::{enumerate_irreducibles, enumerate_monic_up_to, pi_divisibility_check, pi_q, FieldSpec};
use crate::numtheory::{
    binomial, count_solutions, factorial, floor_log, stirling_bounds, triangular_bound,
    triangular_solution_count, zsigmondy_has_primitive, SolutionCountQuery, GUARD_BAND,
};
use crate::preimage::{
    count_profile, degree_bound, preimage_count, preimage_list, preimage_lists_up_to,
    sierpinski_witness, SierpinskiGoal,
};
use crate::totient::{phi, sigma, signature};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Collisions,
    Preimage,
    Sierpinski,
    Erdos,
    Density,
    Lemmas,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Collisions,
        Suite::Preimage,
        Suite::Sierpinski,
        Suite::Erdos,
        Suite::Density,
        Suite::Lemmas,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::Collisions => "collisions",
            Self::Preimage => "preimage",
            Self::Sierpinski => "sierpinski",
            Self::Erdos => "erdos",
            Self::Density => "density",
            Self::Lemmas => "lemmas",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite {s:?}")))
    }
}

/// Optional caps on the default scales. A cap never raises a scale.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Budget {
    pub degree: Option<usize>,
    pub n: Option<u64>,
    pub y: Option<u64>,
}

impl Budget {
    fn degree(&self, default: usize) -> usize {
        self.degree.map_or(default, |d| d.min(default))
    }

    fn n(&self, default: u64) -> u64 {
        self.n.map_or(default, |n| n.min(default))
    }

    fn y(&self, default: u64) -> u64 {
        self.y.map_or(default, |y| y.min(default))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Self { name: name.into(), passed, detail: detail.into() }
    }
}

pub fn run_suite(suite: Suite, budget: &Budget) -> Result<Vec<Check>> {
    match suite {
        Suite::Collisions => collisions(budget),
        Suite::Preimage => preimage(budget),
        Suite::Sierpinski => sierpinski(budget),
        Suite::Erdos => erdos(budget),
        Suite::Density => density(budget),
        Suite::Lemmas => lemmas(budget),
    }
}

fn field(p: u32, s: u32) -> Result<FieldSpec> {
    FieldSpec::new(p, s)
}

fn big(n: u64) -> BigUint {
    BigUint::from(n)
}

/// Mismatches between `same_phi` on signatures and equality of `Φ` values,
/// over every pair of monic polynomials up to `max_deg`.
pub fn collision_mismatches(field: &FieldSpec, max_deg: usize) -> Result<(usize, usize)> {
    let mut items = Vec::new();
    for f in enumerate_monic_up_to(field, max_deg) {
        let sig = signature(&f, field)?;
        let (_, value) = phi(&f, field)?;
        items.push((sig, value));
    }
    let mut mismatches = 0;
    for (sa, va) in &items {
        for (sb, vb) in &items {
            if same_phi(sa, sb, field) != (va == vb) {
                mismatches += 1;
            }
        }
    }
    Ok((items.len(), mismatches))
}

fn collisions(budget: &Budget) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for (p, s, deg) in [(2, 1, 7), (3, 1, 5), (2, 2, 4), (5, 1, 3)] {
        let f = field(p, s)?;
        let deg = budget.degree(deg);
        let (polys, mismatches) = collision_mismatches(&f, deg)?;
        out.push(Check::new(
            format!("same_phi exact, q={} deg<={deg}", f.q()),
            mismatches == 0,
            format!("{polys} monics, {mismatches} mismatched pairs"),
        ));
    }
    Ok(out)
}

/// Values `n <= n_max` whose formula count differs from the enumerated one.
pub fn count_mismatches(field: &FieldSpec, n_max: u64) -> Result<Vec<(u64, BigUint, usize)>> {
    let lists = preimage_lists_up_to(&big(n_max), field)?;
    let mut bad = Vec::new();
    for n in 1..=n_max {
        let nb = big(n);
        let formula = preimage_count(&nb, field);
        let listed = lists.get(&nb).map_or(0, Vec::len);
        if formula != BigUint::from(listed) {
            bad.push((n, formula, listed));
        }
    }
    Ok(bad)
}

fn preimage(budget: &Budget) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for (p, n_max) in [(2, 200), (3, 500), (5, 1000)] {
        let f = field(p, 1)?;
        let n_max = budget.n(n_max);
        let bad = count_mismatches(&f, n_max)?;
        out.push(Check::new(
            format!("count formula = enumeration, q={p} n<={n_max}"),
            bad.is_empty(),
            match bad.first() {
                None => format!("{n_max} values agree"),
                Some((n, a, b)) => format!("{} mismatches, first n={n}: formula {a}, listed {b}", bad.len()),
            },
        ));
    }

    let f2 = field(2, 1)?;
    let ones: Vec<String> = preimage_list(&big(1), &f2)?.iter().map(ToString::to_string).collect();
    let count = preimage_count(&big(1), &f2);
    out.push(Check::new(
        "q=2 preimages of 1",
        count == big(3) && ones == ["x", "x+1", "x^2+x"],
        format!("count {count}, list [{}]", ones.join(", ")),
    ));

    for (p, s, n_max) in [(2, 2, 10_000), (5, 1, 10_000), (2, 1, 1000)] {
        let f = field(p, s)?;
        let n_max = budget.n(n_max);
        let mut failure = None;
        for n in 1..=n_max {
            if let Err(e) = count_profile(&big(n), &f) {
                failure = Some(e.to_string());
                break;
            }
        }
        out.push(Check::new(
            format!("count gaps, q={} n<={n_max}", f.q()),
            failure.is_none(),
            failure.unwrap_or_else(|| "all counts in the allowed set".into()),
        ));
    }
    Ok(out)
}

fn sierpinski(budget: &Budget) -> Result<Vec<Check>> {
    let mut goals: Vec<(u32, SierpinskiGoal)> = Vec::new();
    let l_max = budget.degree(12).max(3) as u32;
    goals.extend((3..=l_max).map(|l| (2, SierpinskiGoal::Count(l))));
    goals.extend((1..=2).map(|l| (3, SierpinskiGoal::QPower(l))));
    for p in [3, 5] {
        goals.extend((0..=2).map(|l| (p, SierpinskiGoal::BinomMultiple(l))));
    }
    let mut out = Vec::new();
    for (p, goal) in goals {
        let f = field(p, 1)?;
        let (n, expected) = sierpinski_witness(&f, goal)?;
        let count = preimage_count(&n, &f);
        out.push(Check::new(
            format!("q={p} {goal:?}"),
            count == expected,
            format!("n={n}, expected {expected}, counted {count}"),
        ));
    }
    Ok(out)
}

/// Independently enumerated `Φ`-values and `σ`-values up to `y`, intersected.
pub fn enumerated_intersection(field: &FieldSpec, y: u64) -> Result<BTreeSet<BigUint>> {
    let yb = big(y);
    let mut phis = BTreeSet::new();
    for f in enumerate_monic_up_to(field, degree_bound(&yb, field)) {
        let (_, v) = phi(&f, field)?;
        if v <= yb {
            phis.insert(v);
        }
    }
    let mut sigmas = BTreeSet::new();
    for g in enumerate_monic_up_to(field, floor_log(field.q() as u64, &yb) as usize) {
        let v = sigma(&g, field)?;
        if v <= yb {
            sigmas.insert(v);
        }
    }
    Ok(phis.intersection(&sigmas).cloned().collect())
}

fn erdos(budget: &Budget) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for (p, y) in [(5, 10_000), (3, 1000), (2, 1000)] {
        let f = field(p, 1)?;
        let y = budget.y(y);
        let enumerated = enumerated_intersection(&f, y)?;
        let families: BTreeSet<BigUint> = intersection_up_to(&big(y), &f).into_iter().collect();
        let only_enum: Vec<_> = enumerated.difference(&families).collect();
        let only_fam: Vec<_> = families.difference(&enumerated).collect();
        out.push(Check::new(
            format!("Φ∩σ by enumeration = families, q={p} y<={y}"),
            only_enum.is_empty() && only_fam.is_empty(),
            format!(
                "{} common values; only enumerated {only_enum:?}; only in families {only_fam:?}",
                enumerated.len()
            ),
        ));
    }
    Ok(out)
}

/// `{Φ(f) <= y}` over monic `f` up to the degree bound.
pub fn enumerated_values(field: &FieldSpec, y: u64) -> Result<BTreeSet<BigUint>> {
    let yb = big(y);
    let mut out = BTreeSet::new();
    for f in enumerate_monic_up_to(field, degree_bound(&yb, field)) {
        let (_, v) = phi(&f, field)?;
        if v <= yb {
            out.insert(v);
        }
    }
    Ok(out)
}

fn density(budget: &Budget) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let f2 = field(2, 1)?;
    let v10 = phi_values_up_to(&big(10), &f2).len();
    out.push(Check::new("V(10) at q=2", v10 == 7, format!("V(10) = {v10}")));

    let y_max = budget.y(100_000);
    for (p, s) in [(2, 1), (3, 1), (2, 2), (5, 1)] {
        let f = field(p, s)?;
        let q = f.q() as u64;
        let mut y = q;
        let mut worst = 0.0f64;
        let mut failure = None;
        while y <= y_max {
            match density_report(&big(y), &f) {
                Ok(r) => worst = worst.max(r.v.to_f64().unwrap_or(f64::INFINITY) / r.bound),
                Err(e) => failure = Some(e.to_string()),
            }
            y *= q;
        }
        out.push(Check::new(
            format!("V(q^k) <= bound, q={q} y<={y_max}"),
            failure.is_none(),
            failure.unwrap_or_else(|| format!("largest V/bound = {worst:.4}")),
        ));
    }

    let y_dual = budget.y(1000);
    for p in [2, 3] {
        let f = field(p, 1)?;
        let direct = phi_values_up_to(&big(y_dual), &f);
        let enumerated = enumerated_values(&f, y_dual)?;
        out.push(Check::new(
            format!("value set by factored forms = by enumeration, q={p} y<={y_dual}"),
            direct == enumerated,
            format!("{} vs {} values", direct.len(), enumerated.len()),
        ));
    }

    let k_max = budget.degree(16) as u32;
    let mut ratios = Vec::new();
    for k in 0..=k_max {
        let y = big(1) << k;
        let v = phi_values_up_to(&y, &f2).len() as f64;
        ratios.push(v / 2f64.powi(k as i32));
    }
    let monotone = ratios.windows(2).all(|w| w[1] <= w[0]);
    out.push(Check::new(
        format!("V(2^k)/2^k non-increasing, k<={k_max}"),
        monotone,
        format!("last ratio {:.6}", ratios.last().copied().unwrap_or(0.0)),
    ));
    Ok(out)
}

fn lemmas(budget: &Budget) -> Result<Vec<Check>> {
    let mut out = Vec::new();

    let f2 = field(2, 1)?;
    let expected = [2u64, 1, 2, 3, 6, 9];
    let by_formula: Vec<BigUint> = (1..=6).map(|d| pi_q(&f2, d)).collect::<Result<_>>()?;
    let by_listing: Vec<usize> = (1..=6).map(|d| enumerate_irreducibles(&f2, d).count()).collect();
    out.push(Check::new(
        "π_2(1..6)",
        by_formula.iter().zip(&expected).all(|(a, &b)| *a == big(b))
            && by_listing.iter().zip(&expected).all(|(&a, &b)| a as u64 == b),
        format!("formula {by_formula:?}, listing {by_listing:?}"),
    ));

    let d_max = budget.degree(24) as u32;
    let mut failures = Vec::new();
    for (p, s) in [(3, 1), (2, 2), (5, 1), (7, 1), (3, 2)] {
        let f = field(p, s)?;
        for d in 1..=d_max {
            if !pi_divisibility_check(&f, d)? {
                failures.push((f.q(), d));
            }
        }
    }
    out.push(Check::new(
        format!("p | π_q(d) or 4 | π_q(d), d<={d_max}"),
        failures.is_empty(),
        format!("failures {failures:?}"),
    ));

    let mut exceptions = BTreeSet::new();
    for a in 2..=12u64 {
        for n in 2..=20u32 {
            if !zsigmondy_has_primitive(a, 1, n)? {
                exceptions.insert((a, n));
            }
        }
    }
    let predicted: BTreeSet<(u64, u32)> = (2..=12u64)
        .flat_map(|a| (2..=20u32).map(move |n| (a, n)))
        .filter(|&(a, n)| (a, n) == (2, 6) || (n == 2 && (a + 1).is_power_of_two()))
        .collect();
    out.push(Check::new(
        "primitive divisor exceptions, a<=12, n<=20",
        exceptions == predicted,
        format!("exceptions {exceptions:?}"),
    ));

    let mut stirling_bad = Vec::new();
    for n in 1..=30u32 {
        let (lo, hi) = stirling_bounds(n);
        let fact = factorial(n).to_f64().unwrap_or(f64::INFINITY);
        if !(fact > lo * (1.0 + GUARD_BAND) && fact < hi * (1.0 - GUARD_BAND)) {
            stirling_bad.push(n);
        }
    }
    out.push(Check::new(
        "factorial within Stirling bounds, n<=30",
        stirling_bad.is_empty(),
        format!("failures {stirling_bad:?}"),
    ));

    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut sandwich_bad = 0;
    for _ in 0..200 {
        let k = rng.gen_range(1..=5);
        let weights = (0..k).map(|_| rng.gen_range(1..=6)).collect();
        let query = SolutionCountQuery::new(weights, rng.gen_range(0..=60))?;
        if !query.sandwich_holds(&count_solutions(&query)) {
            sandwich_bad += 1;
        }
    }
    out.push(Check::new(
        "solution count sandwich, 200 random instances",
        sandwich_bad == 0,
        format!("{sandwich_bad} failures"),
    ));

    let mut tri_bad = Vec::new();
    for n in 1..=60u64 {
        let count = triangular_solution_count(n)?.to_f64().unwrap_or(f64::INFINITY);
        if count >= triangular_bound(n) * (1.0 - GUARD_BAND) {
            tri_bad.push(n);
        }
    }
    out.push(Check::new(
        "N(n) < 2(e²/2)^{n/2}, n<=60",
        tri_bad.is_empty(),
        format!("failures {tri_bad:?}"),
    ));

    // binom(q, 2) = π_q(2) is what makes the count gap line up
    let gap_ok = [(3, 1), (2, 2), (5, 1), (7, 1)].into_iter().all(|(p, s)| {
        let f = FieldSpec::new(p, s).expect("valid field");
        f.pi(2) == binomial(f.q() as u64, 2)
    });
    out.push(Check::new("π_q(2) = binom(q, 2)", gap_ok, ""));
    Ok(out)
}

/// Totals across checks: `(passed, failed)`.
pub fn tally(checks: &[Check]) -> (usize, usize) {
    let passed = checks.iter().filter(|c| c.passed).count();
    (passed, checks.len() - passed)
}

/// Groups failing checks by suite for summaries.
pub fn failures_by_suite(results: &BTreeMap<String, Vec<Check>>) -> BTreeMap<String, usize> {
    results
        .iter()
        .map(|(name, checks)| (name.clone(), checks.iter().filter(|c| !c.passed).count()))
        .filter(|&(_, n)| n > 0)
        .collect()
}
