//! Seeded draws of admissible rational parameter values.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::CatalogError;
use crate::arith::{Assignment, Point, Rational, RationalExpr, Space};
use crate::lie::{ParamDomain, Parameter};

/// Attempts per point before the domain is declared unsampleable.
pub const MAX_ATTEMPTS: usize = 10_000;

/// Independent stream per `(seed, label)`, so filtering entries does not
/// shift the samples of the remaining ones.
pub struct Sampler {
    rng: ChaCha8Rng,
}

fn fnv1a(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}

impl Sampler {
    pub fn new(seed: u64, label: &str) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed ^ fnv1a(label)),
        }
    }

    /// `p/q` with `p ∈ [−9, 9]`, `q ∈ [1, 9]`.
    pub fn small_rational(&mut self) -> Rational {
        let p: i64 = self.rng.gen_range(-9..=9);
        let q: i64 = self.rng.gen_range(1..=9);
        crate::arith::rational(p, q)
    }

    pub fn nonzero_small_rational(&mut self) -> Rational {
        loop {
            let v = self.small_rational();
            if v != Rational::from_integer(0.into()) {
                return v;
            }
        }
    }

    pub fn draw(&mut self, domain: &ParamDomain) -> Option<Rational> {
        (0..MAX_ATTEMPTS).map(|_| self.small_rational()).find(|v| domain.contains(v))
    }

    pub fn index(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }
}

/// `n` points where every parameter lies in its domain and every guard
/// evaluates to a nonzero value.
pub fn sample_points(
    space: &Arc<Space>,
    params: &[Parameter],
    guards: &[RationalExpr],
    seed: u64,
    label: &str,
    n: usize,
) -> Result<Vec<Point>, CatalogError> {
    let mut s = Sampler::new(seed, label);
    let fail = || CatalogError::Sampling {
        entry: label.to_string(),
        attempts: MAX_ATTEMPTS,
    };
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let mut found = None;
        for _ in 0..MAX_ATTEMPTS {
            let mut a = Assignment::new();
            for p in params {
                a.set(&p.name, s.draw(&p.domain).ok_or_else(fail)?);
            }
            let point = a.resolve(space).map_err(|e| CatalogError::Invalid {
                entry: label.to_string(),
                message: e.to_string(),
            })?;
            if guards.iter().all(|g| g.eval_at(&point).is_ok_and(|v| v != Rational::from_integer(0.into()))) {
                found = Some(point);
                break;
            }
        }
        out.push(found.ok_or_else(fail)?);
    }
    Ok(out)
}
