use std::cmp::Ordering;
use std::sync::Arc;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::space::{Point, Space, MAX_PARAMS};
use super::{ArithError, Integer as BigInt, Rational};

/// Exponent vector over the slots of a [`Space`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, Debug)]
pub struct Monomial([u16; MAX_PARAMS]);

impl Monomial {
    pub fn one() -> Self {
        Monomial([0; MAX_PARAMS])
    }

    pub fn var(slot: usize) -> Self {
        let mut e = [0; MAX_PARAMS];
        e[slot] = 1;
        Monomial(e)
    }

    pub fn from_exponents(exps: &[u16]) -> Self {
        let mut e = [0; MAX_PARAMS];
        e[..exps.len()].copy_from_slice(exps);
        Monomial(e)
    }

    pub fn exponent(&self, slot: usize) -> u16 {
        self.0[slot]
    }

    pub fn exponents(&self) -> &[u16; MAX_PARAMS] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0 == [0; MAX_PARAMS]
    }

    pub fn checked_mul(&self, other: &Monomial) -> Result<Monomial, ArithError> {
        let mut e = [0; MAX_PARAMS];
        for (i, slot) in e.iter_mut().enumerate() {
            *slot = self.0[i]
                .checked_add(other.0[i])
                .ok_or(ArithError::DegreeOverflow)?;
        }
        Ok(Monomial(e))
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`; caller guarantees divisibility.
    fn quotient_of(&self, other: &Monomial) -> Monomial {
        let mut e = [0; MAX_PARAMS];
        for (i, slot) in e.iter_mut().enumerate() {
            *slot = other.0[i] - self.0[i];
        }
        Monomial(e)
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut e = [0; MAX_PARAMS];
        for (i, slot) in e.iter_mut().enumerate() {
            *slot = self.0[i].min(other.0[i]);
        }
        Monomial(e)
    }

    fn without(&self, slot: usize) -> Monomial {
        let mut m = *self;
        m.0[slot] = 0;
        m
    }

    fn with_exponent(&self, slot: usize, e: u16) -> Monomial {
        let mut m = *self;
        m.0[slot] = e;
        m
    }

    fn var_mask(&self) -> u32 {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .fold(0, |acc, (i, _)| acc | (1 << i))
    }
}

/// Graded lexicographic order: total degree first, then earlier slots weigh more.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial over ℚ. Terms are kept strictly
/// descending in graded-lex order with no zero coefficients.
#[derive(Clone, Debug)]
pub struct Polynomial {
    space: Arc<Space>,
    terms: Vec<(Monomial, Rational)>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl Polynomial {
    pub fn zero(space: &Arc<Space>) -> Self {
        Polynomial {
            space: space.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(space: &Arc<Space>, c: Rational) -> Self {
        let terms = if c.is_zero() {
            Vec::new()
        } else {
            vec![(Monomial::one(), c)]
        };
        Polynomial {
            space: space.clone(),
            terms,
        }
    }

    pub fn one(space: &Arc<Space>) -> Self {
        Self::constant(space, Rational::one())
    }

    pub fn var(space: &Arc<Space>, slot: usize) -> Self {
        Self::monomial(space, Monomial::var(slot), Rational::one())
    }

    pub fn monomial(space: &Arc<Space>, m: Monomial, c: Rational) -> Self {
        if c.is_zero() {
            return Self::zero(space);
        }
        Polynomial {
            space: space.clone(),
            terms: vec![(m, c)],
        }
    }

    /// Builds a polynomial from arbitrary (possibly repeated, unsorted) terms.
    pub fn from_terms(space: &Arc<Space>, mut terms: Vec<(Monomial, Rational)>) -> Self {
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(Monomial, Rational)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc += c,
                _ => {
                    if let Some((_, lc)) = out.last() {
                        if lc.is_zero() {
                            out.pop();
                        }
                    }
                    out.push((m, c));
                }
            }
        }
        if let Some((_, lc)) = out.last() {
            if lc.is_zero() {
                out.pop();
            }
        }
        Polynomial {
            space: space.clone(),
            terms: out,
        }
    }

    pub fn space(&self) -> &Arc<Space> {
        &self.space
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Value of a constant polynomial.
    pub fn constant_value(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn leading(&self) -> Option<&(Monomial, Rational)> {
        self.terms.first()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, slot: usize) -> u16 {
        self.terms.iter().map(|(m, _)| m.exponent(slot)).max().unwrap_or(0)
    }

    /// Bit `i` set iff slot `i` occurs.
    pub fn var_mask(&self) -> u32 {
        self.terms.iter().fold(0, |acc, (m, _)| acc | m.var_mask())
    }

    pub(crate) fn check_space(&self, other: &Polynomial) -> Result<(), ArithError> {
        if Space::compatible(&self.space, &other.space) {
            Ok(())
        } else {
            Err(ArithError::ParameterMismatch)
        }
    }

    pub(crate) fn check_limit(self) -> Result<Self, ArithError> {
        let limit = self.space.term_limit();
        if self.terms.len() > limit {
            Err(ArithError::TermLimit {
                terms: self.terms.len(),
                limit,
            })
        } else {
            Ok(self)
        }
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            space: self.space.clone(),
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    pub fn scale(&self, k: &Rational) -> Polynomial {
        if k.is_zero() {
            return Polynomial::zero(&self.space);
        }
        Polynomial {
            space: self.space.clone(),
            terms: self.terms.iter().map(|(m, c)| (*m, c * k)).collect(),
        }
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial, ArithError> {
        self.check_space(other)?;
        self.add_raw(other, false).check_limit()
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial, ArithError> {
        self.check_space(other)?;
        self.add_raw(other, true).check_limit()
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial, ArithError> {
        self.check_space(other)?;
        self.mul_raw(other)?.check_limit()
    }

    /// Merge of two sorted term lists.
    pub(crate) fn add_raw(&self, other: &Polynomial, negate: bool) -> Polynomial {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0, c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate {
                        &a[i].1 - &b[j].1
                    } else {
                        &a[i].1 + &b[j].1
                    };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (*m, if negate { -c } else { c.clone() })));
        Polynomial {
            space: self.space.clone(),
            terms: out,
        }
    }

    pub(crate) fn mul_raw(&self, other: &Polynomial) -> Result<Polynomial, ArithError> {
        if self.is_zero() || other.is_zero() {
            return Ok(Polynomial::zero(&self.space));
        }
        if other.is_monomial() {
            let (m, c) = &other.terms[0];
            return self.mul_term(m, c);
        }
        if self.is_monomial() {
            let (m, c) = &self.terms[0];
            return other.mul_term(m, c);
        }
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                terms.push((ma.checked_mul(mb)?, ca * cb));
            }
        }
        Ok(Polynomial::from_terms(&self.space, terms))
    }

    /// Multiplication by a single term keeps the order, so no re-sort.
    pub(crate) fn mul_term(&self, m: &Monomial, c: &Rational) -> Result<Polynomial, ArithError> {
        if c.is_zero() {
            return Ok(Polynomial::zero(&self.space));
        }
        let terms = self
            .terms
            .iter()
            .map(|(tm, tc)| Ok((tm.checked_mul(m)?, tc * c)))
            .collect::<Result<Vec<_>, ArithError>>()?;
        Ok(Polynomial {
            space: self.space.clone(),
            terms,
        })
    }

    pub fn pow(&self, e: u32) -> Result<Polynomial, ArithError> {
        let mut result = Polynomial::one(&self.space);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(result)
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a remainder.
    pub fn exact_div(&self, divisor: &Polynomial) -> Option<Polynomial> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Polynomial::zero(&self.space));
        }
        let (lm, lc) = divisor.terms[0].clone();
        if divisor.is_monomial() {
            let mut terms = Vec::with_capacity(self.terms.len());
            for (m, c) in &self.terms {
                if !lm.divides(m) {
                    return None;
                }
                terms.push((lm.quotient_of(m), c / &lc));
            }
            return Some(Polynomial {
                space: self.space.clone(),
                terms,
            });
        }
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((rm, rc)) = rem.terms.first().cloned() {
            if !lm.divides(&rm) {
                return None;
            }
            let qm = lm.quotient_of(&rm);
            let qc = &rc / &lc;
            let sub = divisor.mul_term(&qm, &qc).ok()?;
            rem = rem.add_raw(&sub, true);
            quot.push((qm, qc));
        }
        Some(Polynomial {
            space: self.space.clone(),
            terms: quot,
        })
    }

    /// Divides every exponent vector by `m`; caller guarantees divisibility.
    pub(crate) fn div_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            space: self.space.clone(),
            terms: self
                .terms
                .iter()
                .map(|(tm, c)| (m.quotient_of(tm), c.clone()))
                .collect(),
        }
    }

    /// Largest monomial dividing every term.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.iter();
        match it.next() {
            None => Monomial::one(),
            Some((first, _)) => it.fold(*first, |acc, (m, _)| acc.gcd(m)),
        }
    }

    /// Positive rational `k` with `self / k` integral with coprime coefficients.
    pub fn rational_content(&self) -> Rational {
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for (_, c) in &self.terms {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        if num_gcd.is_zero() {
            return Rational::one();
        }
        Rational::new(num_gcd, den_lcm)
    }

    /// `self` scaled to integer coprime coefficients with positive leading coefficient.
    pub fn primitive(&self) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let mut k = self.rational_content();
        if self.terms[0].1.is_negative() {
            k = -k;
        }
        self.scale(&k.recip())
    }

    pub fn eval_at(&self, point: &Point) -> Result<Rational, ArithError> {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (slot, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t *= num_traits::pow(point.value(slot)?.clone(), e as usize);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Coefficients in `slot`, lowest degree first; each is free of `slot`.
    pub(crate) fn to_univariate(&self, slot: usize) -> Vec<Polynomial> {
        let deg = self.degree_in(slot) as usize;
        let mut buckets: Vec<Vec<(Monomial, Rational)>> = vec![Vec::new(); deg + 1];
        for (m, c) in &self.terms {
            buckets[m.exponent(slot) as usize].push((m.without(slot), c.clone()));
        }
        buckets
            .into_iter()
            .map(|terms| Polynomial::from_terms(&self.space, terms))
            .collect()
    }

    pub(crate) fn from_univariate(space: &Arc<Space>, coeffs: &[Polynomial], slot: usize) -> Polynomial {
        let mut terms = Vec::new();
        for (e, p) in coeffs.iter().enumerate() {
            for (m, c) in &p.terms {
                terms.push((m.with_exponent(slot, e as u16), c.clone()));
            }
        }
        Polynomial::from_terms(space, terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn grlex_orders_by_degree_then_slot() {
        let a2 = Monomial::from_exponents(&[2]);
        let ab = Monomial::from_exponents(&[1, 1]);
        let b2 = Monomial::from_exponents(&[0, 2]);
        let a = Monomial::var(0);
        assert!(a2 > ab && ab > b2 && b2 > a);
    }

    #[test]
    fn exact_division_detects_remainders() {
        let s = Space::standard();
        let a = Polynomial::var(&s, 0);
        let one = Polynomial::one(&s);
        let am1 = a.sub(&one).unwrap();
        let ap1 = a.add(&one).unwrap();
        let prod = am1.mul(&ap1).unwrap();
        assert_eq!(prod.exact_div(&am1).unwrap(), ap1);
        assert!(prod.exact_div(&a).is_none());
    }

    #[test]
    fn primitive_normalizes_sign_and_content() {
        let s = Space::standard();
        let p = Polynomial::from_terms(
            &s,
            vec![
                (Monomial::var(0), Rational::new((-3).into(), 2.into())),
                (Monomial::one(), q(3)),
            ],
        );
        let pp = p.primitive();
        assert_eq!(pp.terms()[0].1, q(1));
        assert_eq!(pp.terms()[1].1, q(-2));
    }

    #[test]
    fn term_limit_is_enforced() {
        let s = Space::standard_with_limit(3);
        let a = Polynomial::var(&s, 0);
        let b = Polynomial::var(&s, 1);
        let c = Polynomial::var(&s, 2);
        let sum = a.add(&b).unwrap().add(&c).unwrap();
        let err = sum.add(&Polynomial::one(&s)).unwrap_err();
        assert!(matches!(err, ArithError::TermLimit { terms: 4, limit: 3 }));
    }
}
