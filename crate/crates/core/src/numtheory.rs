//! Integer-side utilities: Möbius function, prime factorization, primitive
//! prime divisors of `a^n - b^n`, Stirling bounds and counting of
//! non-negative solutions to `a_1 x_1 + ... + a_k x_k <= n`.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::{Error, Result};

/// Arbitrary-precision non-negative integer.
pub type BigNat = BigUint;

/// Relative guard band applied to every floating-point bound comparison.
/// Comparisons are always shifted in the direction that makes the check
/// harder to pass.
pub const GUARD_BAND: f64 = 1e-9;

const TRIAL_LIMIT: u32 = 1_000_000;

fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = TRIAL_LIMIT as usize;
        let mut composite = vec![false; n + 1];
        let mut primes = Vec::new();
        for i in 2..=n {
            if !composite[i] {
                primes.push(i as u32);
                let mut j = i * i;
                while j <= n {
                    composite[j] = true;
                    j += i;
                }
            }
        }
        primes
    })
}

/// `x < bound` with the guard band shrinking `bound`.
pub fn below_with_guard(x: f64, bound: f64) -> bool {
    x < bound * (1.0 - GUARD_BAND)
}

/// `x > bound` with the guard band inflating `bound`.
pub fn above_with_guard(x: f64, bound: f64) -> bool {
    x > bound * (1.0 + GUARD_BAND)
}

pub fn mobius(n: u64) -> Result<i8> {
    if n == 0 {
        return Err(Error::InvalidArgument("mobius(0) is undefined".into()));
    }
    let mut n = n;
    let mut sign = 1i8;
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return Ok(0);
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    Ok(sign)
}

pub fn is_prime_u64(n: u64) -> bool {
    is_prime(&BigUint::from(n))
}

/// Miller-Rabin with the first 25 primes as bases. Deterministic below
/// 3.3·10^24, which covers every quantity this crate factors in practice.
pub fn is_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        if small < 2 {
            return false;
        }
        if small <= TRIAL_LIMIT as u64 {
            return small_primes().binary_search(&(small as u32)).is_ok();
        }
    }
    const BASES: [u32; 25] = [
        2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83,
        89, 97,
    ];
    for &b in &BASES {
        if (n % b).is_zero() {
            return false;
        }
    }
    let one = BigUint::one();
    let n_minus_one = n - &one;
    let r = n_minus_one.trailing_zeros().unwrap_or(0);
    let d = &n_minus_one >> r;
    'witness: for &b in &BASES {
        let mut x = BigUint::from(b).modpow(&d, n);
        if x == one || x == n_minus_one {
            continue;
        }
        for _ in 1..r {
            x = (&x * &x) % n;
            if x == n_minus_one {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Prime factorization `prime -> exponent`, ordered by prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntFactorization {
    factors: BTreeMap<BigUint, u32>,
}

impl IntFactorization {
    pub fn iter(&self) -> impl Iterator<Item = (&BigUint, u32)> {
        self.factors.iter().map(|(p, &e)| (p, e))
    }

    pub fn primes(&self) -> impl Iterator<Item = &BigUint> {
        self.factors.keys()
    }

    pub fn exponent(&self, p: &BigUint) -> u32 {
        self.factors.get(p).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Multiplies the factorization back out.
    pub fn value(&self) -> BigUint {
        self.factors
            .iter()
            .fold(BigUint::one(), |acc, (p, &e)| acc * p.pow(e))
    }
}

/// Exact prime factorization of `n >= 2`.
///
/// Trial division by primes up to 10^6, then Pollard-Brent rho with the
/// increment sequence `c = 1, 2, 3, ...` on whatever cofactor remains.
pub fn factor_int(n: &BigUint) -> Result<IntFactorization> {
    if *n < BigUint::from(2u32) {
        return Err(Error::InvalidArgument(format!(
            "factor_int requires n >= 2, got {n}"
        )));
    }
    let mut factors = BTreeMap::new();
    let mut rest = n.clone();
    if is_prime(&rest) {
        factors.insert(rest, 1);
        return Ok(IntFactorization { factors });
    }
    for &p in small_primes() {
        let pb = BigUint::from(p);
        if &pb * &pb > rest {
            break;
        }
        if (&rest % p).is_zero() {
            let mut e = 0;
            while (&rest % p).is_zero() {
                rest /= p;
                e += 1;
            }
            factors.insert(pb, e);
            if rest.is_one() || is_prime(&rest) {
                break;
            }
        }
    }
    if !rest.is_one() {
        let mut stack = vec![rest];
        while let Some(m) = stack.pop() {
            if m.is_one() {
                continue;
            }
            if is_prime(&m) {
                *factors.entry(m).or_insert(0) += 1;
                continue;
            }
            let d = pollard_brent(&m);
            let other = &m / &d;
            stack.push(d);
            stack.push(other);
        }
    }
    Ok(IntFactorization { factors })
}

fn pollard_brent(n: &BigUint) -> BigUint {
    if n.is_even() {
        return BigUint::from(2u32);
    }
    let one = BigUint::one();
    let mut c = 1u32;
    loop {
        let cc = BigUint::from(c);
        let step = |x: &BigUint| (x * x + &cc) % n;
        let mut y = BigUint::from(2u32);
        let mut r = 1u64;
        let mut q = BigUint::one();
        let mut g = BigUint::one();
        let mut x = y.clone();
        let mut ys = y.clone();
        const BATCH: u64 = 64;
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = step(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                for _ in 0..BATCH.min(r - k) {
                    y = step(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = (q * diff) % n;
                }
                g = q.gcd(n);
                k += BATCH;
            }
            r *= 2;
        }
        if g == *n {
            loop {
                ys = step(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if g != one {
                    break;
                }
            }
        }
        if g != *n {
            return g;
        }
        c += 1;
    }
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Homogeneous cyclotomic value `Φ_n(a, b) = Π_{d|n} (a^d - b^d)^{μ(n/d)}`.
fn cyclotomic_value(a: u64, b: u64, n: u32) -> BigUint {
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    let (a, b) = (BigUint::from(a), BigUint::from(b));
    for d in divisors(n as u64) {
        let term = a.pow(d as u32) - b.pow(d as u32);
        match mobius(n as u64 / d).expect("n >= 1") {
            1 => num *= term,
            -1 => den *= term,
            _ => {}
        }
    }
    num / den
}

fn primitive_divisors_ab(a: u64, b: u64, n: u32) -> BTreeSet<BigUint> {
    let cyclo = cyclotomic_value(a, b, n);
    let mut out = BTreeSet::new();
    if cyclo < BigUint::from(2u32) {
        return out;
    }
    let fac = factor_int(&cyclo).expect("cyclotomic value >= 2");
    let (ab, bb) = (BigUint::from(a), BigUint::from(b));
    for p in fac.primes() {
        // Every prime of Φ_n(a,b) divides a^n - b^n; it is primitive iff
        // a^k ≢ b^k (mod p) for every proper divisor k of n.
        let primitive = divisors(n as u64)
            .into_iter()
            .filter(|&k| k < n as u64)
            .all(|k| {
                let e = BigUint::from(k);
                ab.modpow(&e, p) != bb.modpow(&e, p)
            });
        if primitive {
            out.insert(p.clone());
        }
    }
    out
}

/// Primes dividing `a^n - 1` that divide no `a^k - 1` with `1 <= k < n`.
pub fn primitive_prime_divisors(a: u64, n: u32) -> Result<BTreeSet<BigUint>> {
    if a < 2 || n < 1 {
        return Err(Error::InvalidArgument(format!(
            "primitive_prime_divisors requires a >= 2 and n >= 1, got a={a}, n={n}"
        )));
    }
    Ok(primitive_divisors_ab(a, 1, n))
}

/// Whether `a^n - b^n` has a primitive prime divisor.
pub fn zsigmondy_has_primitive(a: u64, b: u64, n: u32) -> Result<bool> {
    if a.gcd(&b) != 1 {
        return Err(Error::InvalidArgument(format!(
            "zsigmondy_has_primitive requires gcd(a, b) = 1, got a={a}, b={b}"
        )));
    }
    if b < 1 || a <= b || n < 2 {
        return Err(Error::InvalidArgument(format!(
            "zsigmondy_has_primitive requires a > b >= 1 and n >= 2, got a={a}, b={b}, n={n}"
        )));
    }
    Ok(!primitive_divisors_ab(a, b, n).is_empty())
}

/// Robbins' sharpening of Stirling: returns the lower and upper bounds
/// `√(2πn)(n/e)^n e^{1/(12n+1)}` and `√(2πn)(n/e)^n e^{1/(12n)}`.
pub fn stirling_bounds(n: u32) -> (f64, f64) {
    let nf = n as f64;
    let base = (2.0 * std::f64::consts::PI * nf).sqrt() * (nf / std::f64::consts::E).powf(nf);
    (
        base * (1.0 / (12.0 * nf + 1.0)).exp(),
        base * (1.0 / (12.0 * nf)).exp(),
    )
}

pub fn factorial(n: u32) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Query for the number of non-negative integer vectors `x` with
/// `Σ weights[i]·x[i] <= budget`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionCountQuery {
    weights: Vec<u64>,
    budget: u64,
}

impl SolutionCountQuery {
    pub fn new(weights: Vec<u64>, budget: u64) -> Result<Self> {
        if weights.is_empty() || weights.contains(&0) {
            return Err(Error::InvalidArgument(
                "weights must be non-empty and positive".into(),
            ));
        }
        Ok(Self { weights, budget })
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    /// Exact check of `n^k/(k!Πa) <= count <= (n+Σa)^k/(k!Πa)`, done by
    /// clearing denominators.
    pub fn sandwich_holds(&self, count: &BigUint) -> bool {
        let k = self.weights.len() as u32;
        let prod: BigUint = self.weights.iter().map(|&w| BigUint::from(w)).product();
        let scaled = count * factorial(k) * prod;
        let lower = BigUint::from(self.budget).pow(k);
        let upper = BigUint::from(self.budget + self.weights.iter().sum::<u64>()).pow(k);
        lower <= scaled && scaled <= upper
    }
}

/// Budget-indexed DP: `ways[b]` counts vectors hitting exactly `b`.
pub fn count_solutions(query: &SolutionCountQuery) -> BigUint {
    let n = query.budget as usize;
    let mut ways = vec![BigUint::zero(); n + 1];
    ways[0] = BigUint::one();
    for &w in &query.weights {
        let w = w as usize;
        for b in w..=n {
            let prev = ways[b - w].clone();
            ways[b] += prev;
        }
    }
    ways.into_iter().sum()
}

/// Number of non-negative solutions of `x_1 + 2x_2 + ... + n x_n <= n`.
pub fn triangular_solution_count(n: u64) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "triangular_solution_count requires n >= 1".into(),
        ));
    }
    let query = SolutionCountQuery::new((1..=n).collect(), n)?;
    Ok(count_solutions(&query))
}

/// `2 (e²/2)^{n/2}`.
pub fn triangular_bound(n: u64) -> f64 {
    let e2 = std::f64::consts::E * std::f64::consts::E;
    2.0 * (e2 / 2.0).powf(n as f64 / 2.0)
}

/// Largest `k` with `base^k <= y`, by exact comparison. Requires `base >= 2`
/// and `y >= 1`.
pub fn floor_log(base: u64, y: &BigUint) -> u32 {
    let b = BigUint::from(base);
    let mut k = 0;
    let mut pow = b.clone();
    while &pow <= y {
        k += 1;
        pow *= &b;
    }
    k
}

/// Multiplicity of the prime `p` in `n` (`n > 0`).
pub fn valuation(n: &BigUint, p: u64) -> u32 {
    let mut n = n.clone();
    let mut v = 0;
    while !n.is_zero() && (&n % p).is_zero() {
        n /= p;
        v += 1;
    }
    v
}
