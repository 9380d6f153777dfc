//! Exact normalized moments of monomials over the unit sphere `S^d` and
//! graded-lexicographic monomial enumeration.
//!
//! The normalized moment of `x^alpha` is zero whenever any exponent is
//! odd (sign symmetry). For an even multi-index it has the closed form
//!
//! ```text
//!   prod_i (alpha_i - 1)!!  /  prod_{j=0}^{|alpha|/2 - 1} (d + 1 + 2j)
//! ```
//!
//! which we always evaluate in exact rational arithmetic.

use std::cmp::Ordering;

use num::{BigInt, BigRational, One};

use crate::error::{Error, Result};

/// A monomial in the ambient coordinates, stored as its exponent
/// multi-index. Length equals the ambient dimension `d + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exponents: Vec<u32>,
}

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial { exponents }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn ambient_dim(&self) -> usize {
        self.exponents.len()
    }

    pub fn degree(&self) -> u32 {
        self.exponents.iter().sum()
    }

    pub fn is_constant(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }

    /// Key used by JSON reports: exponents joined by commas, e.g. "2,0,0".
    pub fn key(&self) -> String {
        self.exponents
            .iter()
            .map(|e| e.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    /// Graded lexicographic order: total degree first, then
    /// lexicographic comparison of the exponent vectors.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.exponents.cmp(&other.exponents))
    }
}

fn double_factorial(n: u32) -> BigInt {
    // (-1)!! = 1 by convention (n here is alpha_i - 1 for alpha_i >= 2,
    // callers pass only odd arguments or skip zero exponents).
    let mut acc = BigInt::one();
    let mut k = n;
    while k > 1 {
        acc *= BigInt::from(k);
        k -= 2;
    }
    acc
}

/// Normalized moment of `x^alpha` over `S^d`, where the sphere sits in
/// `R^{ambient_dim}` with `ambient_dim = d + 1`.
///
/// Returns an exact rational: 0 for any odd exponent, 1 for the constant
/// monomial, and the double-factorial closed form otherwise.
pub fn sphere_moment(alpha: &Monomial, ambient_dim: usize) -> Result<BigRational> {
    if alpha.ambient_dim() != ambient_dim {
        return Err(Error::DimensionMismatch {
            context: "sphere_moment",
            expected: ambient_dim,
            actual: alpha.ambient_dim(),
        });
    }
    if alpha.exponents().iter().any(|e| e % 2 == 1) {
        return Ok(BigRational::from(BigInt::from(0)));
    }
    let degree = alpha.degree();
    if degree == 0 {
        return Ok(BigRational::one());
    }
    let mut numer = BigInt::one();
    for &e in alpha.exponents() {
        if e >= 2 {
            numer *= double_factorial(e - 1);
        }
    }
    let mut denom = BigInt::one();
    for j in 0..degree / 2 {
        denom *= BigInt::from(ambient_dim as u32 + 2 * j);
    }
    Ok(BigRational::new(numer, denom))
}

/// All monomials in `ambient_dim` coordinates of total degree at most
/// `max_degree`, in graded lexicographic order. The count is
/// `C(max_degree + ambient_dim, ambient_dim)`.
pub fn enumerate_monomials(ambient_dim: usize, max_degree: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for degree in 0..=max_degree {
        let mut current = vec![0u32; ambient_dim];
        fill(&mut out, &mut current, 0, degree);
    }
    out
}

fn fill(out: &mut Vec<Monomial>, current: &mut Vec<u32>, pos: usize, remaining: u32) {
    if pos + 1 == current.len() {
        current[pos] = remaining;
        out.push(Monomial::new(current.clone()));
        current[pos] = 0;
        return;
    }
    for e in 0..=remaining {
        current[pos] = e;
        fill(out, current, pos + 1, remaining - e);
    }
    current[pos] = 0;
}

/// `C(n, k)` as an exact big integer.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::{FromPrimitive, Zero};
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from_i64(n).unwrap(), BigInt::from_i64(d).unwrap())
    }

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn constant_monomial_has_moment_one() {
        assert_eq!(sphere_moment(&m(&[0, 0, 0]), 3).unwrap(), q(1, 1));
    }

    #[test]
    fn odd_exponent_vanishes() {
        assert_eq!(sphere_moment(&m(&[1, 0, 0]), 3).unwrap(), q(0, 1));
        assert_eq!(sphere_moment(&m(&[2, 3, 0]), 3).unwrap(), q(0, 1));
    }

    #[test]
    fn quadratic_and_quartic_moments_on_s2() {
        assert_eq!(sphere_moment(&m(&[2, 0, 0]), 3).unwrap(), q(1, 3));
        assert_eq!(sphere_moment(&m(&[4, 0, 0]), 3).unwrap(), q(1, 5));
        assert_eq!(sphere_moment(&m(&[2, 2, 0]), 3).unwrap(), q(1, 15));
    }

    #[test]
    fn dimension_mismatch_rejected() {
        assert!(sphere_moment(&m(&[2, 0]), 3).is_err());
    }

    #[test]
    fn enumerate_degree_one_dim_two() {
        let ms = enumerate_monomials(2, 1);
        let expected: Vec<Monomial> = [&[0u32, 0][..], &[0, 1], &[1, 0]]
            .iter()
            .map(|e| m(e))
            .collect();
        assert_eq!(ms, expected);
    }

    #[test]
    fn enumerate_counts_match_binomial() {
        assert_eq!(enumerate_monomials(3, 2).len(), 10);
        assert_eq!(enumerate_monomials(2, 0), vec![m(&[0, 0])]);
        for dim in 1..5usize {
            for deg in 0..6u32 {
                let expect = binomial((deg as u64) + dim as u64, dim as u64);
                assert_eq!(
                    BigInt::from(enumerate_monomials(dim, deg).len()),
                    expect,
                    "dim={dim} deg={deg}"
                );
            }
        }
    }

    proptest! {
        #[test]
        fn moments_invariant_under_exponent_permutation(
            exps in proptest::collection::vec(0u32..5, 1..5),
            seed in 0u64..1000,
        ) {
            let dim = exps.len();
            let mut permuted = exps.clone();
            // Cheap deterministic shuffle.
            for i in (1..permuted.len()).rev() {
                permuted.swap(i, (seed as usize + i * 7) % (i + 1));
            }
            prop_assert_eq!(
                sphere_moment(&Monomial::new(exps), dim).unwrap(),
                sphere_moment(&Monomial::new(permuted), dim).unwrap()
            );
        }

        #[test]
        fn moment_sum_rule(exps in proptest::collection::vec(0u32..4, 1..5)) {
            // Multiplying the integrand by sum x_i^2 = 1 leaves the
            // moment unchanged.
            let dim = exps.len();
            let base = Monomial::new(exps.clone());
            let total: BigRational = (0..dim)
                .map(|i| {
                    let mut e = exps.clone();
                    e[i] += 2;
                    sphere_moment(&Monomial::new(e), dim).unwrap()
                })
                .fold(BigRational::zero(), |a, b| a + b);
            prop_assert_eq!(total, sphere_moment(&base, dim).unwrap());
        }

        #[test]
        fn enumeration_is_strictly_increasing(dim in 1usize..5, deg in 0u32..6) {
            let ms = enumerate_monomials(dim, deg);
            for pair in ms.windows(2) {
                prop_assert!(pair[0] < pair[1]);
            }
        }
    }
}
