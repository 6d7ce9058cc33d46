//! Single-entry corruptions of `J` and whether the pipeline notices them.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::sample::Sampler;
use super::CatalogEntry;
use num_traits::Zero;

use crate::arith::{Matrix, Rational, RationalExpr};
use crate::curvature::{bundle, classify, CurvatureError, Label};
use crate::parakahler::{check_axioms, metric_from, Endomorphism, ParaKahlerError};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mutation {
    pub entry: String,
    /// 1-based position in `J`.
    pub row: usize,
    pub col: usize,
    pub delta: String,
    /// Axiom id, `metric_symmetry`, `metric` or `label`.
    pub detected_by: Option<String>,
    pub detail: Option<String>,
    /// The unmutated entry passes the check that caught the mutation.
    pub attributed: bool,
    pub error: Option<String>,
    /// A shift `p → p + k` of a free parameter turning the original `J`
    /// into the mutated one, when there is one.
    pub equivalence: Option<String>,
}

impl Mutation {
    pub fn detected(&self) -> bool {
        self.detected_by.is_some() && self.attributed
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FuzzReport {
    pub seed: u64,
    pub mutations: Vec<Mutation>,
    pub detected: usize,
    /// Mutations that left every axiom and the label intact.
    pub equivalent: Vec<String>,
}

impl FuzzReport {
    /// Undetected mutations with no reparametrization explaining them.
    pub fn unexplained(&self) -> Vec<&Mutation> {
        self.mutations.iter().filter(|m| !m.detected() && m.equivalence.is_none()).collect()
    }
}

/// Looks for a free structure parameter `p` and a constant `k` with
/// `J(p + k) = mutated`, with `ω` unaffected by the shift.
fn reparametrization(entry: &CatalogEntry, r: usize, c: usize, delta: &Rational, mutated: &Matrix<RationalExpr>) -> Option<String> {
    let s = &entry.structure;
    let space = entry.algebra().space();
    let orig = s.j.matrix().get(r, c);
    for p in &s.params {
        if s.algebra.params.iter().any(|q| q.name == p.name) {
            continue;
        }
        let slot = space.slot(&p.name)?;
        let x = RationalExpr::param(space, &p.name).ok()?;
        let step = orig.substitute(slot, &x.add(&RationalExpr::one(space)).ok()?).ok()?.sub(orig).ok()?;
        let Some(alpha) = step.as_constant().filter(|a| !a.is_zero()) else {
            continue;
        };
        let k = delta / alpha;
        let shifted = x.add(&RationalExpr::constant(space, k.clone())).ok()?;
        let moved = s.j.matrix().try_map(|e| e.substitute(slot, &shifted)).ok()?;
        let omega = s.omega.matrix().try_map(|e| e.substitute(slot, &shifted)).ok()?;
        if &moved == mutated && &omega == s.omega.matrix() {
            let (sign, mag) = if k < Rational::zero() { ('-', -k) } else { ('+', k) };
            return Some(format!("{} -> {} {sign} {mag}", p.name, p.name));
        }
    }
    None
}

/// The label, or the `(check, detail)` that rejected the structure; the
/// outer error is an infrastructure failure.
type Outcome = Result<Result<Label<RationalExpr>, (String, String)>, String>;

fn label_of(entry: &CatalogEntry, j: &Endomorphism<RationalExpr>) -> Outcome {
    let s = &entry.structure;
    let c = s.algebra.constants();
    let rep = check_axioms(c, &s.omega, j).map_err(|e| e.to_string())?;
    if let Some(x) = rep.findings().next() {
        return Ok(Err((x.axiom.id().to_string(), x.to_string())));
    }
    let g = match metric_from(&s.omega, j) {
        Ok(g) => g,
        Err(ParaKahlerError::Asymmetric { i, j, residual }) => {
            return Ok(Err(("metric_symmetry".into(), format!("g({i},{j}) − g({j},{i}) = {residual}"))))
        }
        Err(e) => return Err(e.to_string()),
    };
    let b = match bundle(c, g.matrix()) {
        Ok(b) => b,
        Err(CurvatureError::Singular) => return Ok(Err(("metric".into(), "g is singular".into()))),
        Err(e) => return Err(e.to_string()),
    };
    classify(&b, &g, j).map(Ok).map_err(|e| e.to_string())
}

/// `count` mutations, each adding a nonzero `p/q` (|p|, q ≤ 9) to one entry
/// of one structure's `J`, drawn from a stream seeded by `seed`.
pub fn run_fuzz(entries: &[CatalogEntry], count: usize, seed: u64) -> FuzzReport {
    if entries.is_empty() {
        return FuzzReport {
            seed,
            mutations: Vec::new(),
            detected: 0,
            equivalent: Vec::new(),
        };
    }
    let mut s = Sampler::new(seed, "fuzz");
    let plan: Vec<(usize, usize, usize, crate::arith::Rational)> = (0..count)
        .map(|_| {
            let e = s.index(entries.len());
            let n = entries[e].structure.j.dim();
            (e, s.index(n), s.index(n), s.nonzero_small_rational())
        })
        .collect();

    let mut used: Vec<usize> = plan.iter().map(|p| p.0).collect();
    used.sort_unstable();
    used.dedup();
    let baselines: Vec<(usize, Outcome)> = used
        .par_iter()
        .map(|&i| (i, label_of(&entries[i], &entries[i].structure.j)))
        .collect();
    let baseline = |i: usize| &baselines.iter().find(|(k, _)| *k == i).expect("every planned entry has a baseline").1;

    let mutations: Vec<Mutation> = plan
        .par_iter()
        .map(|(ei, r, c, delta)| {
            let entry = &entries[*ei];
            let space = entry.algebra().space();
            let mut m: Matrix<RationalExpr> = entry.structure.j.matrix().clone();
            let bumped = m.get(*r, *c).add(&RationalExpr::constant(space, delta.clone()));
            let mut out = Mutation {
                entry: entry.id().to_string(),
                row: r + 1,
                col: c + 1,
                delta: delta.to_string(),
                detected_by: None,
                detail: None,
                attributed: false,
                error: None,
                equivalence: None,
            };
            let bumped = match bumped {
                Ok(v) => v,
                Err(e) => {
                    out.error = Some(e.to_string());
                    return out;
                }
            };
            m.set(*r, *c, bumped);
            out.equivalence = reparametrization(entry, *r, *c, delta, &m);
            let j = Endomorphism::new(m).expect("square");
            let base = baseline(*ei);
            let base_label = match base {
                Ok(Ok(l)) => Some(l),
                _ => None,
            };
            match label_of(entry, &j) {
                Err(e) => out.error = Some(e),
                Ok(Err((check, detail))) => {
                    out.detected_by = Some(check);
                    out.detail = Some(detail);
                    out.attributed = base_label.is_some();
                }
                Ok(Ok(label)) => {
                    if base_label.is_some_and(|b| b != &label) {
                        out.detected_by = Some("label".into());
                        out.detail = Some(format!("{} became {}", base_label.expect("checked"), label));
                        out.attributed = true;
                    }
                }
            }
            out
        })
        .collect();
    let detected = mutations.iter().filter(|m| m.detected()).count();
    let equivalent = mutations
        .iter()
        .filter(|m| m.detected_by.is_none() && m.error.is_none())
        .map(|m| {
            let why = m.equivalence.as_deref().unwrap_or("no reparametrization found");
            format!("{} J[{}][{}] += {} ({})", m.entry, m.row, m.col, m.delta, why)
        })
        .collect();
    FuzzReport {
        seed,
        mutations,
        detected,
        equivalent,
    }
}
