//! Exact big-integer evaluation of the root-count bound
//! `t'(2t'-1)^{k-1}` against `(n-d-1)!`, and the largest configuration
//! size for which the inequality still holds.

use num::{BigInt, One};

/// Both sides of the inequality for one (t, d, n).
#[derive(Debug, Clone)]
pub struct BoundReport {
    pub t: u32,
    pub d: u32,
    pub n: u64,
    /// t' = max(t, 2).
    pub t_prime: u32,
    /// k = (d+1)(n-d-1), clamped at 0 for degenerate n.
    pub k: u64,
    pub lhs: BigInt,
    pub rhs: BigInt,
    pub holds: bool,
}

/// Upper bound on isolated common real roots of polynomials of degree at
/// most `degree` in `num_vars` variables: `degree * (2*degree - 1)^(num_vars - 1)`.
pub fn milnor_bound(degree: u32, num_vars: u64) -> BigInt {
    assert!(degree >= 1 && num_vars >= 1);
    BigInt::from(degree) * BigInt::from(2 * degree - 1).pow((num_vars - 1) as u32)
}

fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    acc
}

/// Checks the inequality for an n-point strength-t configuration on S^d.
/// A rigid n-sized t-design on S^d can exist only when `holds` is true.
/// For n <= d+1 the right side degenerates to 1 (with 0! = 1) and the
/// report holds trivially.
pub fn theorem_check(t: u32, d: u32, n: u64) -> BoundReport {
    assert!(t >= 1 && d >= 1);
    let t_prime = t.max(2);
    let free = n.saturating_sub(d as u64 + 1);
    let k = (d as u64 + 1) * free;
    let lhs = BigInt::from(t_prime) * BigInt::from(2 * t_prime - 1).pow(k.saturating_sub(1) as u32);
    let rhs = factorial(free);
    let holds = lhs >= rhs;
    BoundReport {
        t,
        d,
        n,
        t_prime,
        k,
        lhs,
        rhs,
        holds,
    }
}

/// Largest n >= d+2 for which [`theorem_check`] holds. The upward scan
/// terminates once a failing n satisfies `n - d - 1 > (2t'-1)^(d+1)`:
/// past that point the factorial side grows by a larger factor per step
/// than the bound side, so the inequality can never recover.
pub fn max_feasible_n(t: u32, d: u32) -> u64 {
    assert!(t >= 1 && d >= 1);
    let t_prime = t.max(2);
    let lhs_step = BigInt::from(2 * t_prime - 1).pow(d + 1);
    let mut best = d as u64 + 2; // holds here: rhs is 1! = 1
    let mut n = d as u64 + 2;
    loop {
        let report = theorem_check(t, d, n);
        if report.holds {
            best = n;
        } else if BigInt::from(n - d as u64 - 1) > lhs_step {
            return best;
        }
        n += 1;
    }
}
