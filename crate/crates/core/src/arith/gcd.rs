//! Multivariate polynomial GCD over ℚ.
//!
//! Recursive primitive PRS: a polynomial is viewed as univariate in one
//! shared slot with coefficients in the remaining slots, contents are taken
//! recursively, and the primitive parts are reduced with pseudo-remainders.
//! Results are primitive (integer coprime coefficients, positive leading
//! coefficient); the GCD of anything with a nonzero constant is `1`.

use num_traits::Zero;

use super::poly::Polynomial;
use super::space::MAX_PARAMS;
use super::Rational;

pub fn gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
    if a.is_zero() {
        return b.primitive();
    }
    if b.is_zero() {
        return a.primitive();
    }
    let one = Polynomial::one(a.space());
    if a.is_constant() || b.is_constant() {
        return one;
    }
    let ma = a.monomial_content();
    let mb = b.monomial_content();
    let m = ma.gcd(&mb);
    if a.is_monomial() || b.is_monomial() {
        return Polynomial::monomial(a.space(), m, one_coeff());
    }
    let core = gcd_no_monomial(&a.div_monomial(&ma), &b.div_monomial(&mb));
    if m.is_one() {
        core
    } else {
        core.mul_term(&m, &one_coeff())
            .expect("gcd degree bounded by operands")
    }
}

fn one_coeff() -> super::Rational {
    super::Rational::from_integer(1.into())
}

/// GCD of two non-constant polynomials without a common monomial factor.
fn gcd_no_monomial(a: &Polynomial, b: &Polynomial) -> Polynomial {
    if a.is_constant() || b.is_constant() {
        return Polynomial::one(a.space());
    }
    if a == b {
        return a.primitive();
    }
    let (mask_a, mask_b) = (a.var_mask(), b.var_mask());
    // A slot present in only one operand divides out through that operand's content.
    if let Some(slot) = first_slot(mask_a & !mask_b) {
        return gcd(&content(a, slot), b);
    }
    if let Some(slot) = first_slot(mask_b & !mask_a) {
        return gcd(a, &content(b, slot));
    }
    let slot = pick_slot(a, b, mask_a & mask_b);
    let ca = content(a, slot);
    let cb = content(b, slot);
    let pa = a.exact_div(&ca).expect("content divides");
    let pb = b.exact_div(&cb).expect("content divides");
    let c = gcd(&ca, &cb);
    let p = match image_degree(&pa, &pb, slot) {
        // The gcd has no part in `slot`, so it divides both contents.
        Some(0) => return c,
        Some(d) if d == pb.degree_in(slot) && pa.exact_div(&pb).is_some() => pb,
        Some(d) if d == pa.degree_in(slot) && pb.exact_div(&pa).is_some() => pa,
        _ => prs(pa, pb, slot),
    };
    c.mul_raw(&p).expect("gcd degree bounded by operands").primitive()
}

/// Upper bound on the degree in `slot` of `gcd(a, b)`: the degree of the
/// univariate gcd after substituting fixed values for every other slot.
/// `None` if no tried point keeps both leading coefficients nonzero.
fn image_degree(a: &Polynomial, b: &Polynomial, slot: usize) -> Option<u16> {
    const PRIMES: [i64; 10] = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31];
    for shift in 0..4 {
        let vals: Vec<Rational> = (0..MAX_PARAMS)
            .map(|i| Rational::from_integer((PRIMES[(i + shift) % PRIMES.len()] + shift as i64).into()))
            .collect();
        let ia = image(a, slot, &vals);
        let ib = image(b, slot, &vals);
        if ia.len() != a.degree_in(slot) as usize + 1 || ib.len() != b.degree_in(slot) as usize + 1 {
            continue;
        }
        return Some(univariate_gcd_degree(ia, ib));
    }
    None
}

fn image(p: &Polynomial, slot: usize, vals: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); p.degree_in(slot) as usize + 1];
    for (m, c) in p.terms() {
        let mut t = c.clone();
        for (i, &e) in m.exponents().iter().enumerate() {
            if i != slot && e > 0 {
                t *= num_traits::pow(vals[i].clone(), e as usize);
            }
        }
        out[m.exponent(slot) as usize] += t;
    }
    while matches!(out.last(), Some(c) if c.is_zero()) {
        out.pop();
    }
    out
}

/// Euclid over ℚ on dense coefficient vectors (lowest degree first).
fn univariate_gcd_degree(mut a: Vec<Rational>, mut b: Vec<Rational>) -> u16 {
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let lb = b.last().expect("non-empty").clone();
        while a.len() >= b.len() && !a.is_empty() {
            let q = a.last().expect("non-empty") / &lb;
            let shift = a.len() - b.len();
            for (i, bi) in b.iter().enumerate() {
                a[i + shift] -= &q * bi;
            }
            while matches!(a.last(), Some(c) if c.is_zero()) {
                a.pop();
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1) as u16
}

fn first_slot(mask: u32) -> Option<usize> {
    if mask == 0 {
        None
    } else {
        Some(mask.trailing_zeros() as usize)
    }
}

/// Shared slot of smallest combined degree.
fn pick_slot(a: &Polynomial, b: &Polynomial, mask: u32) -> usize {
    (0..32)
        .filter(|i| mask & (1 << i) != 0)
        .min_by_key(|&i| a.degree_in(i) as u32 + b.degree_in(i) as u32)
        .expect("non-empty mask")
}

/// GCD of the coefficients of `p` viewed as a polynomial in `slot`.
pub(crate) fn content(p: &Polynomial, slot: usize) -> Polynomial {
    let coeffs = p.to_univariate(slot);
    let mut acc = Polynomial::zero(p.space());
    for c in coeffs.iter().rev().filter(|c| !c.is_zero()) {
        acc = gcd(&acc, c);
        if acc.is_one() {
            break;
        }
    }
    acc
}

fn primitive_part(p: &Polynomial, slot: usize) -> Polynomial {
    let c = content(p, slot);
    p.exact_div(&c).expect("content divides").primitive()
}

fn prs(mut a: Polynomial, mut b: Polynomial, slot: usize) -> Polynomial {
    if a.degree_in(slot) < b.degree_in(slot) {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_zero() {
        if b.degree_in(slot) == 0 {
            return Polynomial::one(a.space());
        }
        let r = pseudo_remainder(&a, &b, slot);
        a = b;
        b = if r.is_zero() { r } else { primitive_part(&r, slot) };
    }
    primitive_part(&a, slot)
}

/// `lc(b)^k · a mod b` in `slot`, with integer content removed as it goes.
fn pseudo_remainder(a: &Polynomial, b: &Polynomial, slot: usize) -> Polynomial {
    let space = a.space().clone();
    let bc = b.to_univariate(slot);
    let db = bc.len() - 1;
    let lb = &bc[db];
    let mut r = a.to_univariate(slot);
    trim(&mut r);
    while !r.is_empty() && r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c = c.mul_raw(lb).expect("bounded degree");
        }
        for (i, bi) in bc.iter().enumerate() {
            let t = lr.mul_raw(bi).expect("bounded degree");
            r[i + shift] = r[i + shift].add_raw(&t, true);
        }
        trim(&mut r);
        if !r.is_empty() {
            let whole = Polynomial::from_univariate(&space, &r, slot);
            let k = whole.rational_content();
            let inv = k.recip();
            for c in r.iter_mut() {
                *c = c.scale(&inv);
            }
        }
    }
    Polynomial::from_univariate(&space, &r, slot)
}

fn trim(r: &mut Vec<Polynomial>) {
    while matches!(r.last(), Some(p) if p.is_zero()) {
        r.pop();
    }
}
