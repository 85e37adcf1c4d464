//! Closed-form upper bounds on tableau sums, the asymptotic thresholds in
//! `ℚ(√d)`, and the Lickteig shift.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::contributions::ContributionTable;
use crate::exact_linalg::{frac, rat, Rational};

/// `a_j ρ²/(8j²) + (a_j + b_j)ρ/j` split as `ρ²·rho2 + ρ·(rho_const + n·rho_per_n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedTerm {
    pub j: usize,
    pub rho2: Rational,
    pub rho_const: Rational,
    pub rho_per_n: Rational,
}

impl ClosedTerm {
    pub fn eval(&self, n: usize, rho: usize) -> Rational {
        let rho = rat(rho as i64);
        &self.rho2 * &rho * &rho + (&self.rho_const + &self.rho_per_n * rat(n as i64)) * rho
    }
}

impl fmt::Display for ClosedTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // (p + q n)/den with a common denominator
        let den = self.rho_const.denom().lcm(self.rho_per_n.denom());
        let p = (&self.rho_const * Rational::from_integer(den.clone())).to_integer();
        let q = (&self.rho_per_n * Rational::from_integer(den.clone())).to_integer();
        let inner = match (p.is_zero(), q.is_zero()) {
            (_, true) => p.to_string(),
            (true, false) => format!("{}n", coef(&q)),
            (false, false) if q.is_negative() => format!("{p}-{}n", coef(&-q.clone())),
            (false, false) => format!("{p}+{}n", coef(&q)),
        };
        let lin = if den == BigInt::from(1) {
            if q.is_zero() {
                inner
            } else {
                format!("({inner})")
            }
        } else if q.is_zero() {
            format!("{inner}/{den}")
        } else {
            format!("({inner})/{den}")
        };
        write!(f, "{}ρ² + {}ρ", self.rho2, lin)
    }
}

fn coef(k: &BigInt) -> String {
    if *k == BigInt::from(1) {
        String::new()
    } else {
        k.to_string()
    }
}

/// The `k` terms whose maximum bounds `min(Σ210, Σ120)` over tableaux of
/// total label `ρ`.
pub fn closed_form_terms(table: &ContributionTable) -> Vec<ClosedTerm> {
    table
        .rows
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let j = i as i64 + 1;
            ClosedTerm {
                j: i + 1,
                rho2: frac(row.a, 8 * j * j),
                rho_const: frac(row.a + row.b.constant, j),
                rho_per_n: frac(row.b.per_n, j),
            }
        })
        .collect()
}

/// `max_j a_j ρ²/(8j²) + (a_j+b_j)ρ/j` at grid size `n`.
pub fn closed_form_bound(rho: usize, table: &ContributionTable, n: usize) -> Rational {
    closed_form_terms(table)
        .iter()
        .map(|t| t.eval(n, rho))
        .max()
        .expect("tables are nonempty")
}

/// `M⟨2,n,n⟩` or `M⟨3,n,n⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    #[serde(rename = "2nn")]
    TwoNN,
    #[serde(rename = "3nn")]
    ThreeNN,
}

impl Family {
    pub fn m(self) -> usize {
        match self {
            Family::TwoNN => 2,
            Family::ThreeNN => 3,
        }
    }

    pub fn table(self) -> ContributionTable {
        match self {
            Family::TwoNN => ContributionTable::sl2(),
            Family::ThreeNN => ContributionTable::sl3(),
        }
    }

    /// Open interval of admissible `ε`, as `(0, sup)`.
    pub fn epsilon_sup(self) -> Rational {
        match self {
            Family::TwoNN => frac(1, 4),
            Family::ThreeNN => frac(1, 2),
        }
    }

    /// `3√6 − 6` resp. `(16/21)√78 − 32/7`: the asymptotic slope.
    pub fn slope(self) -> QuadSurd {
        match self {
            Family::TwoNN => QuadSurd::new(rat(-6), rat(3), 6),
            Family::ThreeNN => QuadSurd::new(frac(-32, 7), frac(16, 21), 78),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::TwoNN => "2nn",
            Family::ThreeNN => "3nn",
        })
    }
}

impl FromStr for Family {
    type Err = BoundError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "2nn" => Ok(Family::TwoNN),
            "3nn" => Ok(Family::ThreeNN),
            other => Err(BoundError::UnknownFamily(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BoundError {
    #[error("epsilon {eps} outside (0, {sup})")]
    Epsilon { eps: String, sup: String },
    #[error("unknown family {0:?}; expected 2nn or 3nn")]
    UnknownFamily(String),
    #[error("cannot shift a bound for m={from} down to m={to}")]
    Shift { from: usize, to: usize },
}

/// `p + q√d` with rational `p, q` and square-free `d > 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadSurd {
    pub p: Rational,
    pub q: Rational,
    pub d: u64,
}

impl QuadSurd {
    pub fn new(p: Rational, q: Rational, d: u64) -> Self {
        QuadSurd { p, q, d }
    }

    pub fn rational(p: Rational, d: u64) -> Self {
        QuadSurd { p, q: Rational::zero(), d }
    }

    fn same(&self, other: &QuadSurd) {
        assert_eq!(self.d, other.d, "mixed quadratic fields");
    }

    pub fn add(&self, o: &QuadSurd) -> QuadSurd {
        self.same(o);
        QuadSurd::new(&self.p + &o.p, &self.q + &o.q, self.d)
    }

    pub fn sub(&self, o: &QuadSurd) -> QuadSurd {
        self.same(o);
        QuadSurd::new(&self.p - &o.p, &self.q - &o.q, self.d)
    }

    pub fn mul(&self, o: &QuadSurd) -> QuadSurd {
        self.same(o);
        let d = rat(self.d as i64);
        QuadSurd::new(&self.p * &o.p + &self.q * &o.q * d, &self.p * &o.q + &self.q * &o.p, self.d)
    }

    pub fn scale(&self, c: &Rational) -> QuadSurd {
        QuadSurd::new(&self.p * c, &self.q * c, self.d)
    }

    /// Panics on zero.
    pub fn inv(&self) -> QuadSurd {
        let norm = &self.p * &self.p - &self.q * &self.q * rat(self.d as i64);
        assert!(!norm.is_zero(), "inverse of zero");
        QuadSurd::new(&self.p / &norm, -&self.q / &norm, self.d)
    }

    pub fn div(&self, o: &QuadSurd) -> QuadSurd {
        self.mul(&o.inv())
    }

    /// Exact sign: compare `p²` with `q²d` when the signs of `p, q` differ.
    pub fn signum(&self) -> Ordering {
        let sp = self.p.cmp(&Rational::zero());
        let sq = self.q.cmp(&Rational::zero());
        match (sp, sq) {
            (a, Ordering::Equal) => a,
            (Ordering::Equal, b) => b,
            (a, b) if a == b => a,
            (a, _) => {
                let p2 = &self.p * &self.p;
                let q2d = &self.q * &self.q * rat(self.d as i64);
                match p2.cmp(&q2d) {
                    Ordering::Greater => a,
                    Ordering::Less => a.reverse(),
                    Ordering::Equal => Ordering::Equal,
                }
            }
        }
    }

    pub fn cmp_rational(&self, r: &Rational) -> Ordering {
        self.sub(&QuadSurd::rational(r.clone(), self.d)).signum()
    }

    pub fn to_f64(&self) -> f64 {
        self.p.to_f64().unwrap_or(f64::NAN) + self.q.to_f64().unwrap_or(f64::NAN) * (self.d as f64).sqrt()
    }

    /// `⌊x⌋`, found from a float guess and corrected exactly.
    pub fn floor(&self) -> BigInt {
        let mut k = BigInt::from(self.to_f64().floor() as i64);
        while self.cmp_rational(&Rational::from_integer(k.clone())) == Ordering::Less {
            k -= 1;
        }
        while self.cmp_rational(&Rational::from_integer(&k + 1)) != Ordering::Less {
            k += 1;
        }
        k
    }
}

impl fmt::Display for QuadSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}·√{}", self.p, self.q, self.d)
    }
}

fn check_eps(family: Family, eps: &Rational) -> Result<(), BoundError> {
    let sup = family.epsilon_sup();
    if !eps.is_positive() || *eps >= sup {
        return Err(BoundError::Epsilon { eps: eps.to_string(), sup: sup.to_string() });
    }
    Ok(())
}

/// The `n` beyond which the slope `slope − ε` is certified:
/// `(6/ε)(3√6+6−ε)/(6√6−ε)` resp. `(64/3ε)(16√78−96−21ε)/(32√78−21ε)`.
pub fn threshold(family: Family, eps: &Rational) -> Result<QuadSurd, BoundError> {
    check_eps(family, eps)?;
    Ok(match family {
        Family::TwoNN => {
            let num = QuadSurd::new(rat(6) - eps, rat(3), 6);
            let den = QuadSurd::new(-eps.clone(), rat(6), 6);
            num.div(&den).scale(&(rat(6) / eps))
        }
        Family::ThreeNN => {
            let num = QuadSurd::new(rat(-96) - rat(21) * eps, rat(16), 78);
            let den = QuadSurd::new(rat(-21) * eps, rat(32), 78);
            num.div(&den).scale(&(rat(64) / (rat(3) * eps)))
        }
    })
}

/// Smallest integer strictly above [`threshold`].
pub fn threshold_n0(family: Family, eps: &Rational) -> Result<usize, BoundError> {
    let t = threshold(family, eps)?;
    Ok((t.floor() + BigInt::from(1)).to_usize().expect("threshold fits in usize"))
}

/// `n² + ⌊(slope − ε)n⌋ + 1`: the asymptotic statement at a given `n`
/// (meaningful once `n` exceeds the threshold).
pub fn asymptotic_bound(family: Family, eps: &Rational, n: usize) -> Result<usize, BoundError> {
    check_eps(family, eps)?;
    let rate = family.slope().sub(&QuadSurd::rational(eps.clone(), family.slope().d));
    let lin = rate.scale(&rat(n as i64)).floor().to_usize().unwrap_or(0);
    Ok(n * n + lin + 1)
}

/// The ladder certified by the closed form alone: `n²` plus the first `ρ`
/// at which the closed form reaches `n² + ρ`.
pub fn bound_at(n: usize, family: Family) -> usize {
    let table = family.table();
    let mut rho = 0;
    while closed_form_bound(rho, &table, n) < rat((n * n + rho) as i64) {
        rho += 1;
    }
    n * n + rho
}

/// Published finite-`n` lower bounds for `M⟨2,n,n⟩`, `n = 4..=24`.
pub const TWO_NN_TABLE: [usize; 21] = [22, 32, 44, 58, 75, 93, 114, 136, 161, 187, 216, 246, 278, 312, 348, 387, 427, 470, 514, 561, 609];

/// The lower bound as stated in the theorems for this `n`, if one is stated.
pub fn theorem_bound(n: usize, family: Family) -> Option<usize> {
    match family {
        Family::TwoNN => match n {
            4..=24 => Some(TWO_NN_TABLE[n - 4]),
            // n² + 1.32n + 1, rounded to the integer it certifies
            25.. => Some(n * n + (33 * n) / 25 + 1),
            _ => None,
        },
        Family::ThreeNN => match n {
            4..=13 => Some(n * n + 2 * n - 1),
            14..=20 => Some(n * n + 2 * n),
            21.. => Some(n * n + 2 * n + 1),
            _ => None,
        },
    }
}

/// Border substitution adds one per extra row: a bound for `M⟨m₀,n,n⟩`
/// gives `bound + (m − m₀)` for `M⟨m,n,n⟩`.
pub fn lickteig_shift(base_bound: usize, base_m: usize, m: usize) -> Result<usize, BoundError> {
    if m < base_m {
        return Err(BoundError::Shift { from: base_m, to: m });
    }
    Ok(base_bound + (m - base_m))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl2_terms_display() {
        let t: Vec<String> = closed_form_terms(&ContributionTable::sl2()).iter().map(|t| t.to_string()).collect();
        assert_eq!(t, vec!["1/4ρ² + 2ρ", "3/32ρ² + (3+n)/2ρ", "1/18ρ² + (4+2n)/3ρ"]);
    }

    #[test]
    fn surd_sign_and_floor() {
        let s = QuadSurd::new(rat(-6), rat(3), 6); // 1.348...
        assert_eq!(s.floor(), BigInt::from(1));
        assert_eq!(s.cmp_rational(&frac(135, 100)), Ordering::Less);
        assert_eq!(s.cmp_rational(&frac(134, 100)), Ordering::Greater);
        let one = s.div(&s);
        assert_eq!(one, QuadSurd::rational(rat(1), 6));
    }

    #[test]
    fn epsilon_range() {
        assert!(threshold(Family::TwoNN, &frac(1, 4)).is_err());
        assert!(threshold(Family::ThreeNN, &rat(0)).is_err());
        assert!(threshold(Family::ThreeNN, &frac(1, 3)).is_ok());
    }

    #[test]
    fn shift() {
        assert_eq!(lickteig_shift(10, 3, 4), Ok(11));
        assert!(lickteig_shift(10, 3, 2).is_err());
    }
}
