//! Partition statistics and the two inequalities behind the closed-form
//! bound.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::exact_linalg::{frac, rat, Rational};

/// Weakly decreasing positive parts.
pub type Partition = Vec<usize>;

pub fn conjugate(lambda: &[usize]) -> Partition {
    let width = lambda.first().copied().unwrap_or(0);
    (0..width).map(|j| lambda.iter().take_while(|&&p| p > j).count()).collect()
}

/// `n(λ) = Σ (i−1) λ_i`.
pub fn n_of(lambda: &[usize]) -> usize {
    lambda.iter().enumerate().map(|(i, &p)| i * p).sum()
}

pub fn is_partition(lambda: &[usize]) -> bool {
    lambda.iter().all(|&p| p > 0) && lambda.windows(2).all(|w| w[0] >= w[1])
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionStats {
    pub lambda: Partition,
    pub size: usize,
    pub n: usize,
    pub conjugate: Partition,
    pub length: usize,
}

pub fn partition_props(lambda: &[usize]) -> PartitionStats {
    PartitionStats {
        lambda: lambda.to_vec(),
        size: lambda.iter().sum(),
        n: n_of(lambda),
        conjugate: conjugate(lambda),
        length: lambda.len(),
    }
}

/// Every partition of `size`, parts in decreasing lexicographic order.
pub fn partitions_of(size: usize) -> Vec<Partition> {
    fn rec(rem: usize, max: usize, prefix: &mut Partition, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(prefix.clone());
            return;
        }
        for p in (1..=rem.min(max)).rev() {
            prefix.push(p);
            rec(rem - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(size, size, &mut Vec::new(), &mut out);
    out
}

/// `⅛(|λ| + λ′₁ − λ₁)²`.
pub fn singlebound_rhs(lambda: &[usize]) -> Rational {
    let size: usize = lambda.iter().sum();
    let first = lambda.first().copied().unwrap_or(0);
    let e = size as i64 + lambda.len() as i64 - first as i64;
    frac(e * e, 8)
}

/// Two-row shapes with second row 2, where only the weak inequality holds.
pub fn singlebound_exempt(lambda: &[usize]) -> bool {
    lambda.len() == 2 && lambda[1] == 2
}

/// `n(λ) ≤ ⅛(|λ|+λ′₁−λ₁)² − ⅛` off the exempt shapes, without the `−⅛`
/// on them.
pub fn singlebound_check(lambda: &[usize]) -> bool {
    let lhs = rat(n_of(lambda) as i64);
    let rhs = singlebound_rhs(lambda);
    if singlebound_exempt(lambda) {
        lhs <= rhs
    } else {
        lhs <= rhs - frac(1, 8)
    }
}

/// `max_j ρ²C_j/(4j²) + ρD_j/j` with `C, D` the prefix sums of `c, d`.
pub fn opt_bound(c: &[Rational], d: &[Rational], rho: &Rational) -> Rational {
    assert_eq!(c.len(), d.len(), "coefficient lists differ in length");
    let mut cj = Rational::zero();
    let mut dj = Rational::zero();
    let mut best: Option<Rational> = None;
    for (j, (ci, di)) in c.iter().zip(d).enumerate() {
        cj += ci;
        dj += di;
        let j = rat(j as i64 + 1);
        let v = rho * rho * &cj / (rat(4) * &j * &j) + rho * &dj / &j;
        best = Some(match best {
            Some(b) if b >= v => b,
            _ => v,
        });
    }
    best.unwrap_or_default()
}

/// `min{Σ c_i x_i² + d_i(x_i+y_i), Σ c_i y_i² + d_i(x_i+y_i)}`.
pub fn opt_objective(c: &[Rational], d: &[Rational], x: &[Rational], y: &[Rational]) -> Rational {
    let mut left = Rational::zero();
    let mut right = Rational::zero();
    for i in 0..c.len() {
        let lin = &d[i] * (&x[i] + &y[i]);
        left += &c[i] * &x[i] * &x[i] + &lin;
        right += &c[i] * &y[i] * &y[i] + lin;
    }
    left.min(right)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conjugation_is_an_involution() {
        for size in 0..12 {
            for l in partitions_of(size) {
                assert!(is_partition(&l));
                assert_eq!(conjugate(&conjugate(&l)), l);
            }
        }
    }

    #[test]
    fn partition_counts() {
        let p: Vec<usize> = (0..10).map(|k| partitions_of(k).len()).collect();
        assert_eq!(p, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30]);
    }

    #[test]
    fn column_and_square() {
        assert_eq!(n_of(&[1; 6]), 15);
        assert!(singlebound_check(&[3, 3]));
        assert_eq!(singlebound_rhs(&[3, 3]) - frac(1, 8), rat(3));
        assert!(!singlebound_exempt(&[3, 3]));
        // the exempt shapes really do break the strict form
        let l = [3, 2];
        assert!(rat(n_of(&l) as i64) > singlebound_rhs(&l) - frac(1, 8));
    }
}
