//! Exhaustive checks at small scale.

use std::collections::BTreeMap;

use num_bigint::BigUint;

use fq_totient::collision::phi_classes;
use fq_totient::erdos::{erdos_witness, intersection_member, intersection_up_to};
use fq_totient::gfpoly::enumerate_monic_up_to;
use fq_totient::preimage::{
    count_profile, degree_bound, preimage_count, represent, uniqueness_condition, CountClass,
};
use fq_totient::totient::{phi, sigma, sigma_exponents};
use fq_totient::{FieldSpec, Poly};

fn field(p: u32, s: u32) -> FieldSpec {
    FieldSpec::new(p, s).unwrap()
}

fn big(n: u64) -> BigUint {
    BigUint::from(n)
}

#[test]
fn phi_counts_coprime_residues() {
    for (p, s) in [(2, 1), (3, 1), (2, 2)] {
        let f = field(p, s);
        let q = f.q() as u64;
        for g in enumerate_monic_up_to(&f, 4) {
            let d = g.degree().unwrap() as u32;
            let coprime = (0..q.pow(d))
                .map(|mut code| {
                    let coeffs = (0..d)
                        .map(|_| {
                            let c = (code % q) as u32;
                            code /= q;
                            c
                        })
                        .collect();
                    Poly::from_coeffs(coeffs)
                })
                .filter(|a| f.poly_gcd(a, &g).is_one())
                .count() as u64;
            assert_eq!(phi(&g, &f).unwrap().1, big(coprime), "{g} over q={q}");
        }
    }
}

#[test]
fn sigma_is_divisor_sum() {
    for p in [2, 3] {
        let f = field(p, 1);
        let q = f.q() as u64;
        for g in enumerate_monic_up_to(&f, 5) {
            let d = g.degree().unwrap();
            let mut total = big(1);
            for h in enumerate_monic_up_to(&f, d) {
                if f.poly_rem(&g, &h).unwrap().is_zero() {
                    total += big(q.pow(h.degree().unwrap() as u32));
                }
            }
            assert_eq!(sigma(&g, &f).unwrap(), total, "{g}");
            let k = sigma_exponents(&g, &f).unwrap();
            assert_eq!(k.exps().values().sum::<i64>(), 0);
            assert_eq!(k.evaluate(f.q()), total);
            k.validate(&f).unwrap();
        }
    }
}

#[test]
fn multiplicative_on_coprime_pairs() {
    for p in [2, 3] {
        let f = field(p, 1);
        let polys: Vec<Poly> = enumerate_monic_up_to(&f, 3).collect();
        for a in &polys {
            for b in &polys {
                if !f.poly_gcd(a, b).is_one() {
                    continue;
                }
                let ab = f.poly_mul(a, b);
                assert_eq!(phi(&ab, &f).unwrap().1, phi(a, &f).unwrap().1 * phi(b, &f).unwrap().1);
                assert_eq!(sigma(&ab, &f).unwrap(), sigma(a, &f).unwrap() * sigma(b, &f).unwrap());
            }
        }
    }
}

#[test]
fn at_most_one_representation_for_large_q() {
    for (p, s) in [(2, 2), (5, 1), (7, 1), (2, 3), (3, 2)] {
        let f = field(p, s);
        for n in 1..=10_000u64 {
            assert!(represent(&big(n), &f).len() <= 1, "n={n} q={}", f.q());
        }
    }
}

#[test]
fn uniqueness_condition_matches_count() {
    for (p, s) in [(2, 2), (5, 1), (3, 1)] {
        let f = field(p, s);
        let mut unique = 0;
        for n in 1..=10_000u64 {
            let profile = count_profile(&big(n), &f).unwrap();
            let is_unique = profile.class == CountClass::Unique;
            assert_eq!(is_unique, uniqueness_condition(&big(n), &f), "n={n} q={}", f.q());
            unique += is_unique as usize;
        }
        assert!(unique > 0, "q={} has unique values below 10^4", f.q());
    }
}

#[test]
fn degree_bound_covers_every_preimage() {
    for (p, max_deg) in [(2, 10), (3, 6), (5, 4)] {
        let f = field(p, 1);
        let classes = phi_classes(&f, max_deg).unwrap();
        for (n, polys) in classes.iter().take(200) {
            let bound = degree_bound(n, &f);
            let deepest = polys.iter().filter_map(Poly::degree).max().unwrap();
            assert!(deepest <= bound, "n={n}: preimage of degree {deepest} > bound {bound}");
        }
    }
}

#[test]
fn counts_at_f4_and_f9() {
    for (p, s, n_max) in [(2, 2, 300u64), (3, 2, 600)] {
        let f = field(p, s);
        let lists = phi_classes(&f, degree_bound(&big(n_max), &f)).unwrap();
        for n in 1..=n_max {
            let listed = lists.get(&big(n)).map_or(0, Vec::len);
            assert_eq!(preimage_count(&big(n), &f), big(listed as u64), "n={n} q={}", f.q());
        }
    }
}

#[test]
fn verdicts_and_witnesses() {
    for (p, y) in [(2, 2000u64), (3, 3000)] {
        let f = field(p, 1);
        let members = intersection_up_to(&big(y), &f);
        for n in &members {
            let v = intersection_member(n, &f);
            let family = v.family.unwrap();
            assert!(v.member && family.admits(&v.params));
            assert_eq!(&family.evaluate(&v.params), n);
        }
        let mut by_value: BTreeMap<BigUint, bool> = BTreeMap::new();
        for n in 1..=y.min(300) {
            by_value.insert(big(n), intersection_member(&big(n), &f).member);
        }
        for (n, member) in by_value {
            match erdos_witness(&n, &f).unwrap() {
                Some((pf, g)) => {
                    assert!(member);
                    assert_eq!(phi(&pf, &f).unwrap().1, n);
                    assert_eq!(sigma(&g, &f).unwrap(), n);
                }
                None => assert!(!member, "{n}"),
            }
        }
    }
}
