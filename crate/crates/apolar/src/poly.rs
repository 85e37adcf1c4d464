//! Sparse multivariate polynomials with rational coefficients.
//!
//! Variables are numbered; names only matter for rendering and parsing.
//! Monomials are ordered graded-lexicographically with variable 0 largest.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exact_linalg::Rational;

pub type Var = u32;

/// A monomial as sorted `(variable, exponent)` pairs with positive exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn from_pairs(mut pairs: Vec<(Var, u32)>) -> Self {
        pairs.retain(|p| p.1 > 0);
        pairs.sort_unstable();
        let mut out: Vec<(Var, u32)> = Vec::with_capacity(pairs.len());
        for (v, e) in pairs {
            match out.last_mut() {
                Some(last) if last.0 == v => last.1 += e,
                _ => out.push((v, e)),
            }
        }
        Monomial(out)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|p| p.1).sum()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0.iter().find(|p| p.0 == v).map_or(0, |p| p.1)
    }

    pub fn factors(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() || j < other.0.len() {
            match (self.0.get(i), other.0.get(j)) {
                (Some(a), Some(b)) if a.0 == b.0 => {
                    out.push((a.0, a.1 + b.1));
                    i += 1;
                    j += 1;
                }
                (Some(a), Some(b)) if a.0 < b.0 => {
                    out.push(*a);
                    i += 1;
                }
                (Some(_), Some(b)) => {
                    out.push(*b);
                    j += 1;
                }
                (Some(a), None) => {
                    out.push(*a);
                    i += 1;
                }
                (None, Some(b)) => {
                    out.push(*b);
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        Monomial(out)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut j = 0;
        for &(v, e) in &self.0 {
            let d = match other.0.get(j) {
                Some(&(w, f)) if w == v => {
                    j += 1;
                    f
                }
                Some(&(w, _)) if w < v => return None,
                _ => 0,
            };
            if d > e {
                return None;
            }
            if e > d {
                out.push((v, e - d));
            }
        }
        if j < other.0.len() {
            return None;
        }
        Some(Monomial(out))
    }

    pub fn without(&self, v: Var) -> Monomial {
        Monomial(self.0.iter().copied().filter(|p| p.0 != v).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for (a, b) in self.0.iter().zip(other.0.iter()) {
            if a.0 != b.0 {
                // the smaller variable index is the larger variable
                return if a.0 < b.0 { Ordering::Greater } else { Ordering::Less };
            }
            if a.1 != b.1 {
                return a.1.cmp(&b.1);
            }
        }
        self.0.len().cmp(&other.0.len())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("no value assigned to variable {0}")]
    MissingVariable(String),
    #[error("cannot parse polynomial `{0}`")]
    Parse(String),
}

/// A polynomial; the map never stores zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        Poly { terms }
    }

    pub fn int(c: i64) -> Self {
        Poly::constant(Rational::from_integer(BigInt::from(c)))
    }

    pub fn var(v: Var) -> Self {
        Poly::monomial(Monomial::var(v), Rational::one())
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(it: I) -> Self {
        let mut p = Poly::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(x) => {
                *x += c;
                if x.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The value of a constant polynomial.
    pub fn as_constant(&self) -> Option<Rational> {
        if self.is_zero() {
            return Some(Rational::zero());
        }
        if self.is_constant() {
            return self.terms.values().next().cloned();
        }
        None
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.terms.keys().flat_map(|m| m.0.iter().map(|p| p.0)).collect()
    }

    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(n, x)| (n.mul(m), x * c)).collect() }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            for (n, d) in &other.terms {
                out.add_term(m.mul(n), c * d);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut out = Poly::int(1);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Replaces `v` by `q`.
    pub fn substitute(&self, v: Var, q: &Poly) -> Poly {
        if self.degree_in(v) == 0 {
            return self.clone();
        }
        let mut powers: Vec<Poly> = vec![Poly::int(1)];
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(v) as usize;
            if e == 0 {
                out.add_term(m.clone(), c.clone());
                continue;
            }
            while powers.len() <= e {
                let next = powers.last().expect("non-empty").mul(q);
                powers.push(next);
            }
            let rest = m.without(v);
            for (n, d) in &powers[e].terms {
                out.add_term(rest.mul(n), c * d);
            }
        }
        out
    }

    /// Substitutes every assigned variable; unassigned ones stay symbolic.
    pub fn partial_eval(&self, values: &HashMap<Var, Rational>) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut coef = c.clone();
            let mut rest = Vec::new();
            for &(v, e) in &m.0 {
                match values.get(&v) {
                    Some(x) => coef *= pow_rat(x, e),
                    None => rest.push((v, e)),
                }
            }
            out.add_term(Monomial(rest), coef);
        }
        out
    }

    /// Full evaluation; fails on an unassigned variable.
    pub fn eval(&self, values: &HashMap<Var, Rational>) -> Result<Rational, Var> {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(v, e) in &m.0 {
                t *= pow_rat(values.get(&v).ok_or(v)?, e);
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Remainder of multivariate division by `divisors` (grlex).
    pub fn remainder(&self, divisors: &[Poly]) -> Poly {
        let divs: Vec<(&Monomial, &Rational, &Poly)> =
            divisors.iter().filter_map(|g| g.leading().map(|(m, c)| (m, c, g))).collect();
        if divs.is_empty() {
            return self.clone();
        }
        let mut p = self.clone();
        let mut rem = Poly::zero();
        while let Some((lm, lc)) = p.leading().map(|(m, c)| (m.clone(), c.clone())) {
            let hit = divs.iter().find_map(|(gm, gc, g)| lm.div(gm).map(|q| (q, &lc / *gc, *g)));
            match hit {
                Some((q, c, g)) => p = p.sub(&g.mul_term(&q, &c)),
                None => {
                    p.terms.remove(&lm);
                    rem.add_term(lm, lc);
                }
            }
        }
        rem
    }

    /// Exact quotient `self / d`, if `d` divides `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        let (dm, dc) = d.leading()?;
        let mut p = self.clone();
        let mut q = Poly::zero();
        while let Some((lm, lc)) = p.leading().map(|(m, c)| (m.clone(), c.clone())) {
            let m = lm.div(dm)?;
            let c = &lc / dc;
            p = p.sub(&d.mul_term(&m, &c));
            q.add_term(m, c);
        }
        Some(q)
    }

    /// If `self = c·v + rest` with constant `c ≠ 0` and `v` absent from
    /// `rest`, returns `-rest / c`.
    pub fn solve_linear(&self, v: Var) -> Option<Poly> {
        if self.degree_in(v) != 1 {
            return None;
        }
        let mut coef = None;
        let mut rest = Poly::zero();
        for (m, c) in &self.terms {
            match m.exponent(v) {
                0 => rest.add_term(m.clone(), c.clone()),
                _ if m.degree() == 1 => coef = Some(c.clone()),
                _ => return None,
            }
        }
        let c = coef?;
        Some(rest.scale(&(-Rational::one() / c)))
    }

    /// Makes the leading coefficient one.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            Some((_, c)) => self.scale(&(Rational::one() / c.clone())),
            None => Poly::zero(),
        }
    }

    pub fn render(&self, names: &dyn Fn(Var) -> String) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let factors: Vec<String> = m
                .0
                .iter()
                .map(|&(v, e)| if e == 1 { names(v) } else { format!("{}^{}", names(v), e) })
                .collect();
            if m.is_one() {
                out.push_str(&abs.to_string());
            } else if abs.is_one() {
                out.push_str(&factors.join("*"));
            } else {
                out.push_str(&format!("{}*{}", abs, factors.join("*")));
            }
        }
        out
    }

    /// Parses the output of [`Poly::render`]; `lookup` maps names to variables.
    pub fn parse(text: &str, lookup: &mut dyn FnMut(&str) -> Var) -> Result<Poly, PolyError> {
        let err = || PolyError::Parse(text.to_string());
        let cleaned: String = text.split_whitespace().collect();
        if cleaned.is_empty() {
            return Err(err());
        }
        let mut pieces: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut neg = false;
        for (i, ch) in cleaned.chars().enumerate() {
            if (ch == '+' || ch == '-') && i > 0 && !cur.ends_with('^') {
                pieces.push((neg, std::mem::take(&mut cur)));
                neg = ch == '-';
            } else if ch == '-' && i == 0 {
                neg = true;
            } else {
                cur.push(ch);
            }
        }
        pieces.push((neg, cur));
        let mut p = Poly::zero();
        for (neg, piece) in pieces {
            if piece.is_empty() {
                return Err(err());
            }
            let mut coef = Rational::one();
            let mut mono = Vec::new();
            for factor in piece.split('*') {
                if factor.chars().next().is_some_and(|c| c.is_ascii_digit()) {
                    coef *= factor.parse::<Rational>().map_err(|_| err())?;
                } else {
                    let (name, exp) = match factor.split_once('^') {
                        Some((n, e)) => (n, e.parse::<u32>().map_err(|_| err())?),
                        None => (factor, 1),
                    };
                    if name.is_empty() {
                        return Err(err());
                    }
                    mono.push((lookup(name), exp));
                }
            }
            if neg {
                coef = -coef;
            }
            p.add_term(Monomial::from_pairs(mono), coef);
        }
        Ok(p)
    }
}

fn pow_rat(x: &Rational, e: u32) -> Rational {
    let mut out = Rational::one();
    for _ in 0..e {
        out *= x;
    }
    out
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(&|v| format!("x{v}")))
    }
}

/// Names for the variables of one computation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VarNames {
    names: Vec<String>,
}

impl VarNames {
    pub fn new() -> Self {
        VarNames::default()
    }

    pub fn from_names<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Self {
        VarNames { names: names.into_iter().map(Into::into).collect() }
    }

    pub fn fresh(&mut self, name: impl Into<String>) -> Var {
        self.names.push(name.into());
        (self.names.len() - 1) as Var
    }

    pub fn lookup_or_insert(&mut self, name: &str) -> Var {
        match self.names.iter().position(|n| n == name) {
            Some(i) => i as Var,
            None => self.fresh(name),
        }
    }

    pub fn name(&self, v: Var) -> String {
        self.names.get(v as usize).cloned().unwrap_or_else(|| format!("x{v}"))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn render(&self, p: &Poly) -> String {
        p.render(&|v| self.name(v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_linalg::{frac, rat};

    fn ts() -> (Poly, Poly) {
        (Poly::var(0), Poly::var(1))
    }

    #[test]
    fn grlex_orders_by_degree_then_variable() {
        let x = Monomial::var(0);
        let y = Monomial::var(1);
        assert!(x > y);
        assert!(y.mul(&y) > x);
        assert!(x.mul(&y) < x.mul(&x));
        assert!(Monomial::one() < y);
    }

    #[test]
    fn arithmetic_and_substitution() {
        let (t, s) = ts();
        let p = t.mul(&s).sub(&Poly::int(1));
        assert_eq!(p.total_degree(), 2);
        let q = p.substitute(0, &s);
        assert_eq!(q, s.mul(&s).sub(&Poly::int(1)));
        let vals: HashMap<Var, Rational> = [(0, rat(2)), (1, frac(1, 2))].into_iter().collect();
        assert_eq!(p.eval(&vals), Ok(rat(0)));
        assert_eq!(p.eval(&HashMap::new()), Err(0));
    }

    #[test]
    fn division_remainder_and_exact_quotient() {
        let (t, s) = ts();
        let p = t.mul(&t).mul(&s).add(&s);
        let g = t.mul(&s).sub(&Poly::int(1));
        assert_eq!(p.remainder(&[g.clone()]), t.add(&s));
        let prod = g.mul(&t.add(&Poly::int(3)));
        assert_eq!(prod.div_exact(&g), Some(t.add(&Poly::int(3))));
        assert_eq!(t.div_exact(&g), None);
    }

    #[test]
    fn linear_solve_requires_constant_coefficient() {
        let (t, s) = ts();
        let p = t.scale(&rat(2)).add(&s).sub(&Poly::int(4));
        assert_eq!(p.solve_linear(0), Some(s.scale(&frac(-1, 2)).add(&Poly::int(2))));
        assert_eq!(t.mul(&s).sub(&Poly::int(1)).solve_linear(0), None);
    }

    #[test]
    fn render_parse_round_trip() {
        let mut names = VarNames::from_names(["t", "s"]);
        let (t, s) = ts();
        let p = t.mul(&s).scale(&frac(-3, 2)).add(&s.pow(3)).sub(&Poly::int(7));
        let text = names.render(&p);
        assert_eq!(text, "s^3 - 3/2*t*s - 7");
        let back = Poly::parse(&text, &mut |n| names.lookup_or_insert(n)).unwrap();
        assert_eq!(back, p);
        assert!(Poly::parse("", &mut |n| names.lookup_or_insert(n)).is_err());
    }
}
