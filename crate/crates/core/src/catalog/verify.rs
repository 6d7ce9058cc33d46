//! Re-derivation of every catalog claim and the resulting report.

use std::collections::HashMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::sample::sample_points;
use super::{matrix_strings, CatalogEntry};
use crate::arith::{ArithError, Point, Polynomial, RationalExpr};
use crate::curvature::{bundle, classify, compare_ric_operator, self_check, CurvatureBundle, CurvatureError, LabelKind};
use crate::extension::{verify_extension, SasakianFinding};
use crate::lie::{LieAlgebra, TwoForm};
use crate::parakahler::{
    check_axioms, check_metric_compat, eigen_split, metric_from, omega_from, signature_at, Axiom, Metric,
    ParaKahlerError,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    pub seed: u64,
    pub samples: usize,
    /// Also build the central extension and check both theorems.
    pub extension: bool,
    /// Record wall time per entry; breaks byte-identical output.
    pub timing: bool,
    /// Count printed-RIC mismatches as discrepancies.
    pub strict: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: 0,
            samples: 20,
            extension: false,
            timing: false,
            strict: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub check: String,
    pub detail: String,
}

impl Failure {
    fn new(check: impl Into<String>, detail: impl Into<String>) -> Self {
        Failure {
            check: check.into(),
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LabelMatch {
    Exact,
    /// The computed class is stronger and contains the expected one
    /// (flat ⊂ Ricci-flat ⊂ Hermitian Ricci).
    Implied,
    Mismatch,
    NotComputed,
}

impl LabelMatch {
    pub fn matched(self) -> bool {
        matches!(self, LabelMatch::Exact | LabelMatch::Implied)
    }
}

pub fn label_match(expected: LabelKind, computed: LabelKind) -> LabelMatch {
    use LabelKind::*;
    match (expected, computed) {
        (e, c) if e == c => LabelMatch::Exact,
        (RicciFlat, Flat) | (HermitianRicci, Flat | RicciFlat) => LabelMatch::Implied,
        _ => LabelMatch::Mismatch,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RicResidual {
    /// 1-based.
    pub row: usize,
    pub col: usize,
    pub expected: String,
    pub computed: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomTriple {
    /// `J² = Id` and `trace J = 0`.
    pub involution: bool,
    pub omega_compat: bool,
    pub nijenhuis: bool,
}

impl AxiomTriple {
    pub fn passed(&self) -> bool {
        self.involution && self.omega_compat && self.nijenhuis
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurvatureSummary {
    pub label: LabelKind,
    pub einstein_factor: Option<String>,
    pub scalar: String,
    pub ric_operator: Vec<Vec<String>>,
    /// First nonzero `R^s_ijk` as `(s, i, j, k)` 1-based with its value.
    pub first_curvature: Option<(Vec<usize>, String)>,
    /// `+1` if `Ric(JX, JY) = Ric(X, Y)`, `−1` if `Ric(JX, JY) = −Ric(X, Y)`,
    /// `0` if neither; `+1` when `Ric = 0`.
    pub ric_j_sign: i8,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EntryFinding {
    pub id: String,
    pub algebra: String,
    pub form: String,
    pub optional: bool,
    pub expected_label: LabelKind,
    pub axioms: AxiomTriple,
    pub metric: Option<Vec<Vec<String>>>,
    pub curvature: Option<CurvatureSummary>,
    pub label_match: LabelMatch,
    pub einstein_factor_match: Option<bool>,
    pub ric_compared: bool,
    pub ric_residuals: Vec<RicResidual>,
    pub samples_requested: usize,
    pub samples_corroborated: usize,
    pub failures: Vec<Failure>,
    pub infrastructure: Option<String>,
    pub sasakian: Option<SasakianFinding>,
    pub timing_ms: Option<u64>,
}

impl EntryFinding {
    /// Printed RIC differs while the label still agrees.
    pub fn documented_ric_discrepancy(&self) -> bool {
        !self.ric_residuals.is_empty() && self.label_match.matched()
    }

    pub fn is_discrepancy(&self, strict: bool) -> bool {
        !self.failures.is_empty()
            || self.infrastructure.is_some()
            || !self.label_match.matched()
            || self.einstein_factor_match == Some(false)
            || self.samples_corroborated < self.samples_requested
            || (!self.ric_residuals.is_empty() && (strict || !self.label_match.matched()))
    }
}

/// Jacobi and symplectic gates for one `(algebra, ω)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GateFinding {
    pub algebra: String,
    pub form: String,
    pub jacobi: Option<String>,
    pub closed: Option<String>,
    pub det: String,
    pub samples: usize,
    pub det_nonzero: usize,
    pub infrastructure: Option<String>,
}

impl GateFinding {
    pub fn passed(&self) -> bool {
        self.jacobi.is_none() && self.closed.is_none() && self.det_nonzero == self.samples && self.infrastructure.is_none()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    /// Entries passing all three axioms.
    pub passed: usize,
    pub label_matched: usize,
    pub discrepancies: usize,
    pub documented_ric_discrepancies: usize,
    pub gate_failures: usize,
    pub infrastructure_errors: usize,
    pub extension_checked: usize,
    pub extension_failures: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub seed: u64,
    pub samples: usize,
    pub strict: bool,
    pub gates: Vec<GateFinding>,
    pub entries: Vec<EntryFinding>,
    pub summary: Summary,
}

impl VerificationReport {
    pub fn from_parts(config: &VerifyConfig, gates: Vec<GateFinding>, entries: Vec<EntryFinding>) -> Self {
        let mut s = Summary {
            total: entries.len(),
            gate_failures: gates.iter().filter(|g| !g.passed()).count(),
            ..Summary::default()
        };
        for e in &entries {
            s.passed += e.axioms.passed() as usize;
            s.label_matched += e.label_match.matched() as usize;
            s.discrepancies += e.is_discrepancy(config.strict) as usize;
            s.documented_ric_discrepancies += e.documented_ric_discrepancy() as usize;
            s.infrastructure_errors += e.infrastructure.is_some() as usize;
            if let Some(x) = &e.sasakian {
                s.extension_checked += 1;
                s.extension_failures += !x.holds() as usize;
            }
        }
        s.infrastructure_errors += gates.iter().filter(|g| g.infrastructure.is_some()).count();
        VerificationReport {
            seed: config.seed,
            samples: config.samples,
            strict: config.strict,
            gates,
            entries,
            summary: s,
        }
    }
}

pub fn compute_gate(algebra: &LieAlgebra, form: &str, omega: &TwoForm<RationalExpr>, config: &VerifyConfig) -> GateFinding {
    let mut g = GateFinding {
        algebra: algebra.name.clone(),
        form: form.to_string(),
        jacobi: None,
        closed: None,
        det: String::new(),
        samples: config.samples,
        det_nonzero: 0,
        infrastructure: None,
    };
    let run = |g: &mut GateFinding| -> Result<(), String> {
        if let Some(v) = algebra.jacobi_check().map_err(|e| e.to_string())? {
            let (i, j, k) = v.triple;
            g.jacobi = Some(format!(
                "Jacobi fails on (e{},e{},e{}) in component {}: {}",
                i + 1,
                j + 1,
                k + 1,
                v.component + 1,
                v.residual
            ));
        }
        let chk = algebra.is_symplectic(omega).map_err(|e| e.to_string())?;
        if let Some(((i, j, k), r)) = &chk.closed_violation {
            g.closed = Some(format!("dω(e{},e{},e{}) = {r}", i + 1, j + 1, k + 1));
        }
        g.det = chk.det.to_string();
        let mut guards = Vec::new();
        for e in algebra.constants().components() {
            push_den(&mut guards, e);
        }
        for (_, _, e) in omega.matrix().iter() {
            push_den(&mut guards, e);
        }
        let guards = as_guards(guards);
        let label = format!("{}.{}", algebra.name, form);
        let points = sample_points(algebra.space(), &algebra.params, &guards, config.seed, &label, config.samples)
            .map_err(|e| e.to_string())?;
        for p in &points {
            if chk.det.eval_at(p).is_ok_and(|v| v != crate::arith::rational(0, 1)) {
                g.det_nonzero += 1;
            }
        }
        Ok(())
    };
    if let Err(e) = run(&mut g) {
        g.infrastructure = Some(e);
    }
    g
}

fn push_den(acc: &mut Vec<Polynomial>, e: &RationalExpr) {
    let d = e.den();
    if !d.is_constant() && !acc.contains(d) {
        acc.push(d.clone());
    }
}

fn as_guards(dens: Vec<Polynomial>) -> Vec<RationalExpr> {
    dens.into_iter().map(RationalExpr::from_polynomial).collect()
}

/// Runs every check on one entry, gates included.
pub fn verify_entry(entry: &CatalogEntry, config: &VerifyConfig) -> EntryFinding {
    let gate = compute_gate(entry.algebra(), &entry.form, &entry.structure.omega, config);
    verify_with_gate(entry, &gate, config)
}

fn infra(e: impl std::fmt::Display) -> String {
    e.to_string()
}

enum Stop {
    Infrastructure(String),
}

impl From<ArithError> for Stop {
    fn from(e: ArithError) -> Self {
        Stop::Infrastructure(infra(e))
    }
}

impl From<CurvatureError> for Stop {
    fn from(e: CurvatureError) -> Self {
        Stop::Infrastructure(infra(e))
    }
}

impl From<ParaKahlerError> for Stop {
    fn from(e: ParaKahlerError) -> Self {
        Stop::Infrastructure(infra(e))
    }
}

pub fn verify_with_gate(entry: &CatalogEntry, gate: &GateFinding, config: &VerifyConfig) -> EntryFinding {
    let start = Instant::now();
    let s = &entry.structure;
    let mut f = EntryFinding {
        id: s.id.clone(),
        algebra: s.algebra.name.clone(),
        form: entry.form.clone(),
        optional: entry.optional,
        expected_label: entry.expected.label,
        axioms: AxiomTriple {
            involution: false,
            omega_compat: false,
            nijenhuis: false,
        },
        metric: None,
        curvature: None,
        label_match: LabelMatch::NotComputed,
        einstein_factor_match: None,
        ric_compared: false,
        ric_residuals: Vec::new(),
        samples_requested: config.samples,
        samples_corroborated: 0,
        failures: Vec::new(),
        infrastructure: None,
        sasakian: None,
        timing_ms: None,
    };
    if let Some(j) = &gate.jacobi {
        f.failures.push(Failure::new("jacobi", j.clone()));
    }
    if let Some(c) = &gate.closed {
        f.failures.push(Failure::new("symplectic", c.clone()));
    }
    if gate.det_nonzero < gate.samples {
        f.failures.push(Failure::new(
            "symplectic",
            format!("det ω = {} vanishes at {} of {} samples", gate.det, gate.samples - gate.det_nonzero, gate.samples),
        ));
    }
    if let Some(e) = &gate.infrastructure {
        f.infrastructure = Some(e.clone());
    }
    if let Err(Stop::Infrastructure(e)) = run_pipeline(entry, config, &mut f) {
        f.infrastructure.get_or_insert(e);
    }
    if config.timing {
        f.timing_ms = Some(start.elapsed().as_millis() as u64);
    }
    f
}

fn run_pipeline(entry: &CatalogEntry, config: &VerifyConfig, f: &mut EntryFinding) -> Result<(), Stop> {
    let s = &entry.structure;
    let c = s.algebra.constants();
    let rep = check_axioms(c, &s.omega, &s.j)?;
    f.axioms = AxiomTriple {
        involution: rep.involution.is_none(),
        omega_compat: rep.omega_compat.is_none(),
        nijenhuis: rep.nijenhuis.is_none(),
    };
    for x in rep.findings() {
        f.failures.push(Failure::new(x.axiom.id(), x.to_string()));
    }
    if !rep.passed() {
        return Ok(());
    }

    let g = match metric_from(&s.omega, &s.j) {
        Ok(g) => g,
        Err(ParaKahlerError::Asymmetric { i, j, residual }) => {
            f.failures.push(Failure::new(Axiom::MetricSymmetry.id(), format!("g({i},{j}) − g({j},{i}) = {residual}")));
            return Ok(());
        }
        Err(e) => return Err(e.into()),
    };
    f.metric = Some(matrix_strings(g.matrix()));
    if let Some(x) = check_metric_compat(&g, &s.j)? {
        f.failures.push(Failure::new(x.axiom.id(), x.to_string()));
    }
    if &omega_from(&g, &s.j)? != s.omega.matrix() {
        f.failures.push(Failure::new(Axiom::RoundTrip.id(), "g·J differs from ω"));
    }

    let b = match bundle(c, g.matrix()) {
        Ok(b) => b,
        Err(CurvatureError::Singular) => {
            f.failures.push(Failure::new("metric", "g is singular"));
            return Ok(());
        }
        Err(e) => return Err(e.into()),
    };
    if let Some(v) = self_check(c, g.matrix(), &b)? {
        f.failures.push(Failure::new("connection", format!("{v:?}")));
    }
    let label = classify(&b, &g, &s.j)?;
    let jm = s.j.matrix();
    let ric = &b.ricci.ricci;
    let jrj = jm.transpose().try_mul(ric)?.try_mul(jm)?;
    let ric_j_sign = if &jrj == ric {
        1
    } else if jrj == ric.neg() {
        -1
    } else {
        0
    };
    f.curvature = Some(CurvatureSummary {
        label: label.kind(),
        einstein_factor: label.einstein_factor().map(|k| k.to_string()),
        scalar: b.ricci.scalar.to_string(),
        ric_operator: matrix_strings(&b.ricci.operator),
        first_curvature: b
            .curvature
            .first_nonzero()
            .map(|(idx, v)| (idx.iter().map(|i| i + 1).collect(), v.to_string())),
        ric_j_sign,
    });
    f.label_match = label_match(entry.expected.label, label.kind());
    if let Some(k) = &entry.expected.einstein_factor {
        f.einstein_factor_match = Some(label.einstein_factor() == Some(k));
    }
    if let Some(ric) = &entry.expected.ric {
        f.ric_compared = true;
        for (r, col, _) in compare_ric_operator(&b.ricci.operator, ric)? {
            f.ric_residuals.push(RicResidual {
                row: r + 1,
                col: col + 1,
                expected: ric.get(r, col).to_string(),
                computed: b.ricci.operator.get(r, col).to_string(),
            });
        }
    }

    corroborate(entry, &g, &b, config, f)?;

    if config.extension {
        match verify_extension(&s.id, &s.algebra, &s.omega, &s.j, &g, &b) {
            Ok(x) => f.sasakian = Some(x),
            Err(e) => f.failures.push(Failure::new("extension", e.to_string())),
        }
    }
    Ok(())
}

/// Numeric re-run of the pipeline at seeded samples, compared with the
/// symbolic results evaluated at the same points.
fn corroborate(
    entry: &CatalogEntry,
    g: &Metric<RationalExpr>,
    b: &CurvatureBundle<RationalExpr>,
    config: &VerifyConfig,
    f: &mut EntryFinding,
) -> Result<(), Stop> {
    let s = &entry.structure;
    let c = s.algebra.constants();
    let mut dens = Vec::new();
    for e in c.components() {
        push_den(&mut dens, e);
    }
    for m in [s.omega.matrix(), s.j.matrix(), g.matrix(), &b.g_inv, &b.ricci.ricci, &b.ricci.operator] {
        for (_, _, e) in m.iter() {
            push_den(&mut dens, e);
        }
    }
    for e in b.christoffel.components().iter().chain(b.curvature.components()) {
        push_den(&mut dens, e);
    }
    if let Some(k) = &entry.expected.einstein_factor {
        push_den(&mut dens, k);
    }
    if let Some(m) = &entry.expected.ric {
        for (_, _, e) in m.iter() {
            push_den(&mut dens, e);
        }
    }
    let mut guards = as_guards(dens);
    guards.push(g.matrix().det()?);
    let points = sample_points(s.algebra.space(), &s.all_params(), &guards, config.seed, &s.id, config.samples)
        .map_err(|e| Stop::Infrastructure(e.to_string()))?;
    let half = s.j.dim() / 2;
    for p in &points {
        match corroborate_at(entry, g, b, p, half)? {
            None => f.samples_corroborated += 1,
            Some(why) => f.failures.push(Failure::new(
                "corroboration",
                format!("at {}: {why}", p.to_assignment()),
            )),
        }
    }
    Ok(())
}

fn corroborate_at(
    entry: &CatalogEntry,
    g: &Metric<RationalExpr>,
    b: &CurvatureBundle<RationalExpr>,
    p: &Point,
    half: usize,
) -> Result<Option<String>, Stop> {
    let s = &entry.structure;
    let sig = signature_at(g, p)?;
    if sig != (half, half) {
        return Ok(Some(format!("signature {sig:?}")));
    }
    match eigen_split(&s.algebra, &s.j, p) {
        Ok(e) if e.plus_closed && e.minus_closed => {}
        Ok(_) => return Ok(Some("an eigenspace of J is not a subalgebra".into())),
        Err(e) => return Ok(Some(e.to_string())),
    }
    let cq = s.algebra.constants().eval_at(p)?;
    let wq = s.omega.eval_at(p)?;
    let jq = s.j.eval_at(p)?;
    if let Some(x) = check_axioms(&cq, &wq, &jq)?.findings().next() {
        return Ok(Some(format!("numeric {x}")));
    }
    let gq = metric_from(&wq, &jq)?;
    if gq.matrix() != &g.matrix().eval_at(p)? {
        return Ok(Some("numeric metric differs".into()));
    }
    let bq = bundle(&cq, gq.matrix())?;
    if bq != b.eval_at(p)? {
        return Ok(Some("numeric curvature differs from the evaluated symbolic one".into()));
    }
    Ok(None)
}

/// All entries, in order; gates computed once per `(algebra, ω)`.
pub fn verify_all(entries: &[CatalogEntry], config: &VerifyConfig) -> VerificationReport {
    let mut keys: Vec<(String, String)> = Vec::new();
    let mut reps: Vec<&CatalogEntry> = Vec::new();
    for e in entries {
        let k = (e.algebra().name.clone(), e.form.clone());
        if !keys.contains(&k) {
            keys.push(k);
            reps.push(e);
        }
    }
    let gates: Vec<GateFinding> = reps
        .par_iter()
        .map(|e| compute_gate(e.algebra(), &e.form, &e.structure.omega, config))
        .collect();
    let index: HashMap<(String, String), usize> = keys.into_iter().enumerate().map(|(i, k)| (k, i)).collect();
    let findings: Vec<EntryFinding> = entries
        .par_iter()
        .map(|e| {
            let gi = index[&(e.algebra().name.clone(), e.form.clone())];
            verify_with_gate(e, &gates[gi], config)
        })
        .collect();
    VerificationReport::from_parts(config, gates, findings)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::Catalog;

    fn entry(id: &str) -> CatalogEntry {
        Catalog::builtin().all_entries().into_iter().find(|e| e.id() == id).unwrap()
    }

    fn quick() -> VerifyConfig {
        VerifyConfig {
            samples: 4,
            ..VerifyConfig::default()
        }
    }

    #[test]
    fn label_matching_rules() {
        use LabelKind::*;
        assert_eq!(label_match(Flat, Flat), LabelMatch::Exact);
        assert_eq!(label_match(HermitianRicci, RicciFlat), LabelMatch::Implied);
        assert_eq!(label_match(RicciFlat, Flat), LabelMatch::Implied);
        assert_eq!(label_match(Flat, RicciFlat), LabelMatch::Mismatch);
        assert_eq!(label_match(Einstein, Generic), LabelMatch::Mismatch);
    }

    #[test]
    fn flat_and_ricci_flat_entries() {
        let f = verify_entry(&entry("r2r2.lambda0.J25"), &quick());
        assert!(f.axioms.passed());
        assert_eq!(f.curvature.as_ref().unwrap().label, LabelKind::Flat);
        assert!(!f.is_discrepancy(false), "{f:?}");
        assert_eq!(f.samples_corroborated, 4);

        let f = verify_entry(&entry("r4m1.omega.J"), &quick());
        assert_eq!(f.curvature.unwrap().label, LabelKind::RicciFlat);
        assert_eq!(f.label_match, LabelMatch::Exact);
    }

    #[test]
    fn lambda_positive_family_is_only_ricci_flat() {
        for id in ["r2r2.lambda_pos.J11", "r2r2.lambda_pos.J12", "r2r2.lambda_pos.J13"] {
            let f = verify_entry(&entry(id), &quick());
            assert!(f.axioms.passed(), "{id}");
            assert_eq!(f.curvature.as_ref().unwrap().label, LabelKind::RicciFlat, "{id}");
            assert_eq!(f.label_match, LabelMatch::Mismatch);
            assert!(f.is_discrepancy(false));
        }
    }

    #[test]
    fn einstein_factor_checked() {
        let f = verify_entry(&entry("d42.omega1.J11"), &quick());
        assert_eq!(f.einstein_factor_match, Some(true));
        let f = verify_entry(&entry("r2r2.lambda0.J24_b_eq_c"), &quick());
        assert_eq!(f.curvature.as_ref().unwrap().label, LabelKind::Einstein);
        assert_eq!(f.einstein_factor_match, Some(true));
    }

    #[test]
    fn corrupted_entry_names_axiom() {
        let mut e = entry("d4l.omega.J1");
        let mut m = e.structure.j.matrix().clone();
        let bumped = m.get(0, 1).add(&RationalExpr::one(e.algebra().space())).unwrap();
        m.set(0, 2, bumped);
        e.structure.j = crate::parakahler::Endomorphism::new(m).unwrap();
        let r = verify_all(&[e], &quick());
        assert_eq!(r.summary.discrepancies, 1);
        assert!(!r.entries[0].failures.is_empty());
        assert!(r.entries[0].failures[0].check == "involution" || r.entries[0].failures[0].check == "omega_compat");
    }

    #[test]
    fn empty_report() {
        let r = verify_all(&[], &quick());
        assert_eq!(r.summary, Summary::default());
        assert!(r.entries.is_empty() && r.gates.is_empty());
    }
}
