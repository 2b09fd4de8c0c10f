//! Sparse multivariate polynomials with rational coefficients.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// Terms are keyed by exponent vectors; `BTreeMap` order is lexicographic
/// with the first variable most significant, so the last key is the leading
/// monomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Term {
    pub exponents: Vec<u32>,
    #[serde(with = "rational::serde_str")]
    pub coefficient: Rational,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::from_terms(nvars, [(vec![0; nvars], c)])
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn variable(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::from_terms(nvars, [(e, Rational::one())])
    }

    pub fn from_terms<I: IntoIterator<Item = (Vec<u32>, Rational)>>(nvars: usize, terms: I) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length");
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: Vec<u32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: &[u32]) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading(&self) -> Option<(&Vec<u32>, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Total degrees of all monomials, ascending and deduplicated.
    pub fn degrees(&self) -> Vec<u32> {
        let mut d: Vec<u32> = self.terms.keys().map(|e| e.iter().sum()).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// `Some(d)` when every monomial has total degree `d`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        match self.degrees().as_slice() {
            [d] => Some(*d),
            _ => None,
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut p = self.clone();
        for (e, c) in &o.terms {
            p.add_term(e.clone(), c.clone());
        }
        p
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut p = Self::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                p.add_term(e, c1 * c2);
            }
        }
        p
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(self.nvars), |acc, _| acc.mul(self))
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        assert_eq!(x.len(), self.nvars, "point dimension");
        self.terms
            .iter()
            .map(|(e, c)| {
                e.iter()
                    .zip(x)
                    .fold(c.clone(), |acc, (&k, xi)| acc * num_traits::pow(xi.clone(), k as usize))
            })
            .sum()
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (de, dc) = d.leading()?;
        let (de, dc) = (de.clone(), dc.clone());
        let mut rem = self.clone();
        let mut q = Self::zero(self.nvars);
        while let Some((re, rc)) = rem.leading() {
            if re.iter().zip(&de).any(|(a, b)| a < b) {
                return None;
            }
            let e: Vec<u32> = re.iter().zip(&de).map(|(a, b)| a - b).collect();
            let t = Self::from_terms(self.nvars, [(e, rc / &dc)]);
            rem = rem.sub(&t.mul(d));
            q = q.add(&t);
        }
        Some(q)
    }

    pub fn to_terms(&self) -> Vec<Term> {
        self.terms
            .iter()
            .rev()
            .map(|(e, c)| Term {
                exponents: e.clone(),
                coefficient: c.clone(),
            })
            .collect()
    }

    pub fn from_term_list(nvars: usize, terms: &[Term]) -> Result<Self> {
        if let Some(t) = terms.iter().find(|t| t.exponents.len() != nvars) {
            return Err(Error::Parse(format!(
                "exponent vector {:?} has length {}, expected {nvars}",
                t.exponents,
                t.exponents.len()
            )));
        }
        Ok(Self::from_terms(
            nvars,
            terms.iter().map(|t| (t.exponents.clone(), t.coefficient.clone())),
        ))
    }
}

/// All exponent vectors of total degree `d` in `n` variables, in ascending
/// lexicographic order.
pub fn homogeneous_monomials(n: usize, d: u32) -> Vec<Vec<u32>> {
    fn rec(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 1 {
            prefix.push(d);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for k in 0..=d {
            prefix.push(k);
            rec(n - 1, d - k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(n, d, &mut Vec::new(), &mut out);
    out
}

/// Number of monomials of degree `d` in `n` variables, `C(d + n − 1, n − 1)`.
pub fn monomial_count(n: usize, d: u32) -> u128 {
    if n == 0 {
        return u128::from(d == 0);
    }
    let (top, k) = (d as u128 + n as u128 - 1, n as u128 - 1);
    (0..k).fold(1u128, |acc, i| acc * (top - i) / (i + 1))
}

/// Scales `ps` jointly so that all coefficients are coprime integers and the
/// leading coefficient of `ps[sign_ref]` is positive.
pub fn normalize_jointly(ps: &mut [Polynomial], sign_ref: usize) {
    let mut lcm = BigInt::one();
    let mut gcd = BigInt::zero();
    for p in ps.iter() {
        for c in p.terms.values() {
            lcm = lcm.lcm(c.denom());
        }
    }
    for p in ps.iter() {
        for c in p.terms.values() {
            gcd = gcd.gcd(&(c.numer() * (&lcm / c.denom())));
        }
    }
    if gcd.is_zero() {
        return;
    }
    let mut factor = Rational::new(lcm, gcd);
    if let Some((_, c)) = ps[sign_ref].leading() {
        if c.is_negative() {
            factor = -factor;
        }
    }
    for p in ps.iter_mut() {
        *p = p.scale(&factor);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn x(i: usize) -> Polynomial {
        Polynomial::variable(3, i)
    }

    #[test]
    fn arithmetic() {
        let p = x(0).add(&x(1));
        let sq = p.mul(&p);
        assert_eq!(sq.coefficient(&[1, 1, 0]), int(2));
        assert_eq!(sq.homogeneous_degree(), Some(2));
        assert_eq!(sq.eval(&[int(2), int(3), int(5)]), int(25));
        assert!(p.sub(&p).is_zero());
        assert_eq!(p.pow(3).eval(&[int(1), int(1), int(0)]), int(8));
        let mixed = p.add(&Polynomial::one(3));
        assert_eq!(mixed.homogeneous_degree(), None);
        assert_eq!(mixed.degrees(), vec![0, 1]);
    }

    #[test]
    fn exact_division() {
        let a = x(0).add(&x(1).scale(&ratio(1, 2)));
        let b = x(1).mul(&x(2)).sub(&x(0).mul(&x(0)));
        let prod = a.mul(&b);
        assert_eq!(prod.div_exact(&a).unwrap(), b);
        assert_eq!(prod.div_exact(&b).unwrap(), a);
        assert!(prod.add(&x(2)).div_exact(&a).is_none());
    }

    #[test]
    fn monomials() {
        let m = homogeneous_monomials(3, 2);
        assert_eq!(m.len(), 6);
        assert_eq!(monomial_count(3, 2), 6);
        assert_eq!(monomial_count(6, 7), 792);
        assert!(m.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(homogeneous_monomials(1, 4), vec![vec![4]]);
        assert_eq!(homogeneous_monomials(0, 0), vec![Vec::<u32>::new()]);
    }

    #[test]
    fn joint_normalization() {
        let mut ps = [
            x(0).scale(&ratio(-1, 4)),
            x(1).scale(&ratio(-3, 2)).add(&x(0).scale(&ratio(-1, 2))),
        ];
        normalize_jointly(&mut ps, 1);
        assert_eq!(ps[0], x(0));
        assert_eq!(ps[1], x(1).scale(&int(6)).add(&x(0).scale(&int(2))));
    }
}
