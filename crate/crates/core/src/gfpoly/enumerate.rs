use super::field::{FieldElem, FieldSpec};
use super::poly::Poly;

/// Iterator over the `q^d` monic polynomials of degree `d`, in ascending
/// [`Poly`] order (the lower coefficients read as a base-`q` counter with the
/// constant term least significant).
#[derive(Debug, Clone)]
pub struct MonicPolys {
    q: u32,
    low: Vec<FieldElem>,
    done: bool,
}

impl MonicPolys {
    /// Starts the stream at the polynomial whose highest lower coefficients
    /// equal `prefix` (given leading term down). Lets a caller partition a
    /// degree into independent blocks.
    pub fn with_prefix(field: &FieldSpec, degree: usize, prefix: &[FieldElem]) -> Self {
        assert!(prefix.len() <= degree, "prefix longer than degree");
        let mut low = vec![0; degree];
        for (i, &c) in prefix.iter().enumerate() {
            low[degree - 1 - i] = c;
        }
        Self { q: field.q(), low, done: false }
    }
}

impl Iterator for MonicPolys {
    type Item = Poly;

    fn next(&mut self) -> Option<Poly> {
        if self.done {
            return None;
        }
        let mut coeffs = self.low.clone();
        coeffs.push(1);
        let out = Poly::from_coeffs(coeffs);
        let mut i = 0;
        loop {
            if i == self.low.len() {
                self.done = true;
                break;
            }
            self.low[i] += 1;
            if self.low[i] < self.q {
                break;
            }
            self.low[i] = 0;
            i += 1;
        }
        Some(out)
    }
}

pub fn enumerate_monic(field: &FieldSpec, degree: usize) -> MonicPolys {
    MonicPolys::with_prefix(field, degree, &[])
}

/// All monic polynomials of degree `1..=max_degree`, in ascending order.
pub fn enumerate_monic_up_to(field: &FieldSpec, max_degree: usize) -> impl Iterator<Item = Poly> + '_ {
    (1..=max_degree).flat_map(move |d| enumerate_monic(field, d))
}

pub fn enumerate_irreducibles(field: &FieldSpec, degree: usize) -> impl Iterator<Item = Poly> + '_ {
    assert!(degree >= 1, "irreducibles have degree >= 1");
    enumerate_monic(field, degree).filter(move |f| field.is_irreducible(f).expect("non-constant"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    #[test]
    fn monic_examples() {
        let f2 = FieldSpec::new(2, 1).unwrap();
        let lin: Vec<String> = enumerate_monic(&f2, 1).map(|p| p.to_string()).collect();
        assert_eq!(lin, vec!["x", "x+1"]);
        assert_eq!(enumerate_monic(&f2, 2).count(), 4);
        let f3 = FieldSpec::new(3, 1).unwrap();
        assert_eq!(enumerate_monic(&f3, 2).count(), 9);
        let consts: Vec<Poly> = enumerate_monic(&f3, 0).collect();
        assert_eq!(consts, vec![Poly::one()]);
    }

    #[test]
    fn stream_is_sorted_and_prefix_blocks_partition_it() {
        let f3 = FieldSpec::new(3, 1).unwrap();
        let all: Vec<Poly> = enumerate_monic(&f3, 3).collect();
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        let blocks: Vec<Poly> = (0..3)
            .flat_map(|c| MonicPolys::with_prefix(&f3, 3, &[c]).take(9))
            .collect();
        assert_eq!(blocks, all);
    }

    #[test]
    fn irreducible_examples() {
        let f2 = FieldSpec::new(2, 1).unwrap();
        let quad: Vec<String> = enumerate_irreducibles(&f2, 2).map(|p| p.to_string()).collect();
        assert_eq!(quad, vec!["x^2+x+1"]);
        assert_eq!(enumerate_irreducibles(&f2, 3).count(), 2);
        let f3 = FieldSpec::new(3, 1).unwrap();
        let lin: Vec<String> = enumerate_irreducibles(&f3, 1).map(|p| p.to_string()).collect();
        assert_eq!(lin, vec!["x", "x+1", "x+2"]);
    }

    #[test]
    fn irreducible_counts_match_pi() {
        for (p, s) in [(2, 1), (3, 1), (2, 2), (5, 1)] {
            let field = FieldSpec::new(p, s).unwrap();
            let max_d = match field.q() {
                2 => 8,
                3 => 7,
                _ => 5,
            };
            for d in 1..=max_d {
                let count = enumerate_irreducibles(&field, d).count();
                assert_eq!(BigUint::from(count), field.pi(d as u32), "q={} d={d}", field.q());
            }
        }
    }
}
