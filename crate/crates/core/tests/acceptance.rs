//! One PASS/FAIL line per acceptance criterion.
//!
//! Runs without the libtest harness so the lines always reach the output.
//! A criterion that fails for a reason already analysed is printed as
//! `FAIL (known)` with that reason and does not fail the target; any other
//! failure does.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use parakahler::arith::Space;
use parakahler::catalog::verify::compute_gate;
use parakahler::catalog::{render_report, run_fuzz, verify_all, Catalog, EntryFinding, Format, LabelMatch, VerifyConfig};
use parakahler::curvature::LabelKind;
use parakahler::parakahler::check_axioms;

const SAMPLES: usize = 20;

/// Entries whose `R` does not vanish although they are listed as flat; they
/// are Ricci-flat, with curvature proportional to `lambda`.
const NOT_FLAT: [&str; 3] = ["r2r2.lambda_pos.J11", "r2r2.lambda_pos.J12", "r2r2.lambda_pos.J13"];

enum Verdict {
    Pass(String),
    Known(String),
    Fail(String),
}

struct Line {
    n: usize,
    title: &'static str,
    verdict: Verdict,
    elapsed: Duration,
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t = Instant::now();
    let v = f();
    (v, t.elapsed())
}

fn criterion1(catalog: &Catalog, config: &VerifyConfig) -> Verdict {
    let (gates, dt) = timed(|| {
        let mut out = Vec::new();
        for rec in catalog.algebras() {
            for f in &rec.forms {
                out.push(compute_gate(&rec.algebra, &f.id, &f.omega, config));
            }
        }
        out
    });
    let algebras = catalog.algebras().len();
    let bad: Vec<String> = gates.iter().filter(|g| !g.passed()).map(|g| format!("{}.{}", g.algebra, g.form)).collect();
    let msg = format!("{algebras} algebras, {} forms, {} failing, {:.2?}", gates.len(), bad.len(), dt);
    if algebras == 15 && bad.is_empty() && gates.iter().all(|g| g.samples == SAMPLES) && dt < Duration::from_secs(2) {
        Verdict::Pass(msg)
    } else {
        Verdict::Fail(format!("{msg}: {bad:?}"))
    }
}

fn criterion2(catalog: &Catalog) -> Verdict {
    let entries = catalog.entries();
    let (bad, dt) = timed(|| {
        entries
            .iter()
            .filter(|e| {
                let s = &e.structure;
                !check_axioms(s.algebra.constants(), &s.omega, &s.j).is_ok_and(|r| r.passed())
            })
            .map(|e| e.id().to_string())
            .collect::<Vec<_>>()
    });
    // The h4 pair ω± is listed as two entries, hence 58 rather than 57.
    let msg = format!("{} entries, {} failing, {:.2?}", entries.len(), bad.len(), dt);
    if entries.len() >= 57 && bad.is_empty() && dt < Duration::from_secs(10) {
        Verdict::Pass(msg)
    } else {
        Verdict::Fail(format!("{msg}: {bad:?}"))
    }
}

fn criterion3(entries: &[EntryFinding]) -> Verdict {
    let metric_checks = ["metric_symmetry", "metric_compat", "round_trip", "metric", "corroboration"];
    let bad: Vec<&str> = entries
        .iter()
        .filter(|e| {
            e.metric.is_none()
                || e.failures.iter().any(|f| metric_checks.contains(&f.check.as_str()))
                || e.samples_corroborated != SAMPLES
        })
        .map(|e| e.id.as_str())
        .collect();
    let msg = format!("{} metrics symmetric, compatible, round-tripping, signature (2,2) at {SAMPLES} samples", entries.len() - bad.len());
    if bad.is_empty() {
        Verdict::Pass(msg)
    } else {
        Verdict::Fail(format!("{msg}; failing {bad:?}"))
    }
}

/// Ids failing the flat, Ricci-flat or Einstein claims.
fn scope_mismatches(entries: &[EntryFinding]) -> Vec<&EntryFinding> {
    entries
        .iter()
        .filter(|e| matches!(e.expected_label, LabelKind::Flat | LabelKind::RicciFlat | LabelKind::Einstein))
        .filter(|e| !e.label_match.matched() || e.einstein_factor_match == Some(false))
        .collect()
}

fn known_not_flat(bad: &[&EntryFinding]) -> bool {
    let ids: BTreeSet<&str> = bad.iter().map(|e| e.id.as_str()).collect();
    ids == NOT_FLAT.into_iter().collect()
        && bad.iter().all(|e| {
            e.label_match == LabelMatch::Mismatch
                && e.curvature
                    .as_ref()
                    .is_some_and(|c| c.label == LabelKind::RicciFlat && c.first_curvature.is_some())
        })
}

fn criterion4(entries: &[EntryFinding], dt: Duration) -> Verdict {
    let space = Space::standard();
    let b32 = "-3*b/2";
    let targets = [
        ("r2r2.lambda0.J22", b32),
        ("r2p.omega.J2", b32),
        ("d41.omega1.J13", b32),
        ("d4l.omega.J3", b32),
        ("d42.omega1.J11", "3*(a^2-1)/(2*b)"),
    ];
    let mut problems = Vec::new();
    for (id, k) in targets {
        let want = space.parse(k).expect("target factor parses");
        let got = entries
            .iter()
            .find(|e| e.id == id)
            .and_then(|e| e.curvature.as_ref())
            .and_then(|c| c.einstein_factor.as_deref())
            .map(|s| space.parse(s).expect("computed factor parses"));
        if got.as_ref() != Some(&want) {
            problems.push(format!("{id}: Einstein factor {got:?}"));
        }
    }
    let diag_bad: Vec<&str> = entries
        .iter()
        .filter(|e| e.ric_compared && !e.ric_residuals.is_empty())
        .map(|e| e.id.as_str())
        .collect();
    if !diag_bad.is_empty() {
        problems.push(format!("printed RIC differs for {diag_bad:?}"));
    }
    if dt >= Duration::from_secs(60) {
        problems.push(format!("pipeline took {dt:.2?}"));
    }
    let bad = scope_mismatches(entries);
    let in_scope = entries
        .iter()
        .filter(|e| matches!(e.expected_label, LabelKind::Flat | LabelKind::RicciFlat | LabelKind::Einstein))
        .count();
    let compared = entries.iter().filter(|e| e.ric_compared).count();
    let msg = format!(
        "{} of {in_scope} flat/Ricci-flat/Einstein claims reproduced, 5 Einstein factors exact, {compared} printed RIC matched, pipeline {dt:.2?}",
        in_scope - bad.len()
    );
    if !problems.is_empty() {
        return Verdict::Fail(format!("{msg}; {}", problems.join("; ")));
    }
    if bad.is_empty() {
        Verdict::Pass(msg)
    } else if known_not_flat(&bad) {
        Verdict::Known(format!(
            "{msg}; listed as flat but only Ricci-flat (R ≠ 0 for lambda ≠ 0): {}",
            NOT_FLAT.join(", ")
        ))
    } else {
        let ids: Vec<&str> = bad.iter().map(|e| e.id.as_str()).collect();
        Verdict::Fail(format!("{msg}; mismatched {ids:?}"))
    }
}

fn criterion5(report: &parakahler::catalog::VerificationReport) -> Verdict {
    let md = render_report(report, Format::Markdown);
    let mut unreported = Vec::new();
    for e in report.entries.iter().filter(|e| !e.ric_residuals.is_empty()) {
        if !md.contains(&format!("### {}\n", e.id)) || !md.contains("recomputed RIC") {
            unreported.push(e.id.as_str());
        }
    }
    let compared = report.entries.iter().filter(|e| e.ric_compared).count();
    let differing = report.entries.iter().filter(|e| !e.ric_residuals.is_empty()).count();
    let bad = scope_mismatches(&report.entries);
    let hermitian = report
        .entries
        .iter()
        .filter(|e| e.expected_label == LabelKind::HermitianRicci && !e.label_match.matched())
        .count();
    let msg = format!(
        "{compared} printed RIC compared, {differing} differ, all differences reported; {} label mismatches in scope ({hermitian} Hermitian-Ricci claims outside scope also fail)",
        bad.len()
    );
    if !unreported.is_empty() {
        Verdict::Fail(format!("{msg}; unreported {unreported:?}"))
    } else if bad.is_empty() {
        Verdict::Pass(msg)
    } else if known_not_flat(&bad) {
        Verdict::Known(format!("{msg}; the mismatches are the three non-flat entries of criterion 4"))
    } else {
        Verdict::Fail(msg)
    }
}

fn criterion6(entries: &[EntryFinding]) -> Verdict {
    let bad: Vec<&str> = entries
        .iter()
        .filter(|e| {
            let Some(x) = &e.sasakian else { return true };
            let rxx = x.theorem2.identities.iter().find(|i| i.identity == "R(X,xi)xi");
            !x.holds()
                || x.theorem2.identities.len() != 4
                || x.theorem3.identities.len() != 3
                || x.ric_xi_xi != "-1"
                || !rxx.is_some_and(|i| i.checked == 4 && i.holds())
        })
        .map(|e| e.id.as_str())
        .collect();
    let msg = format!(
        "{} extensions with zero residuals in 4 + 3 identities, Ric(ξ,ξ) = -1, R(X,ξ)ξ = -X/4",
        entries.len() - bad.len()
    );
    if bad.is_empty() {
        Verdict::Pass(msg)
    } else {
        Verdict::Fail(format!("{msg}; failing {bad:?}"))
    }
}

fn criterion7(entries: &[EntryFinding]) -> Verdict {
    let total: usize = entries.iter().map(|e| e.samples_corroborated).sum();
    let bad: Vec<&str> = entries
        .iter()
        .filter(|e| e.samples_corroborated != SAMPLES || e.failures.iter().any(|f| f.check == "corroboration"))
        .map(|e| e.id.as_str())
        .collect();
    let msg = format!("{total} numeric re-runs agree with the evaluated symbolic results");
    if bad.is_empty() {
        Verdict::Pass(msg)
    } else {
        Verdict::Fail(format!("{msg}; failing {bad:?}"))
    }
}

fn criterion8(catalog: &Catalog) -> Verdict {
    let f = run_fuzz(&catalog.entries(), 100, 0);
    let unexplained = f.unexplained();
    let msg = format!(
        "{}/100 detected and attributed, {} undetected, {} of them not a parameter shift",
        f.detected,
        f.equivalent.len(),
        unexplained.len()
    );
    for line in &f.equivalent {
        println!("    undetected: {line}");
    }
    if f.detected >= 95 {
        Verdict::Pass(msg)
    } else if unexplained.is_empty() && f.mutations.iter().all(|m| m.error.is_none()) {
        Verdict::Known(format!(
            "{msg}; every undetected mutation shifts a free parameter of J and yields the same family"
        ))
    } else {
        Verdict::Fail(msg)
    }
}

fn main() {
    let catalog = Catalog::builtin();
    let config = VerifyConfig {
        seed: 0,
        samples: SAMPLES,
        extension: true,
        timing: false,
        strict: false,
    };
    let mut lines = Vec::new();
    let mut push = |n, title, f: &mut dyn FnMut() -> Verdict| {
        let (verdict, elapsed) = timed(f);
        lines.push(Line { n, title, verdict, elapsed });
    };
    push(1, "algebra gates", &mut || criterion1(&catalog, &config));
    push(2, "axiom suite", &mut || criterion2(&catalog));
    let (report, pipeline) = timed(|| verify_all(&catalog.entries(), &config));
    push(3, "metric suite", &mut || criterion3(&report.entries));
    push(4, "curvature labels", &mut || criterion4(&report.entries, pipeline));
    push(5, "discrepancy budget", &mut || criterion5(&report));
    push(6, "extension suite", &mut || criterion6(&report.entries));
    push(7, "property corroboration", &mut || criterion7(&report.entries));
    push(8, "negative path", &mut || criterion8(&catalog));

    let mut unexpected = 0;
    for l in &lines {
        let (tag, msg) = match &l.verdict {
            Verdict::Pass(m) => ("PASS", m),
            Verdict::Known(m) => ("FAIL (known)", m),
            Verdict::Fail(m) => {
                unexpected += 1;
                ("FAIL", m)
            }
        };
        println!("criterion {} {}: {tag} [{:.2?}] {msg}", l.n, l.title, l.elapsed);
    }
    if unexpected > 0 {
        println!("{unexpected} criteria failed for unanalysed reasons");
        std::process::exit(1);
    }
}
