//! JSON and Markdown renderings of a [`VerificationReport`].

use std::fmt::Write;
use std::str::FromStr;

use super::verify::{EntryFinding, VerificationReport};
use crate::curvature::LabelKind;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Markdown,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(Format::Json),
            "markdown" | "md" => Ok(Format::Markdown),
            other => Err(format!("unknown format '{other}' (expected json or markdown)")),
        }
    }
}

pub fn render_report(r: &VerificationReport, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(r).expect("reports always serialize");
            s.push('\n');
            s
        }
        Format::Markdown => markdown(r),
    }
}

pub fn parse_report(json: &str) -> Result<VerificationReport, serde_json::Error> {
    serde_json::from_str(json)
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "NO"
    }
}

/// Table cells must not contain pipes.
fn cell(s: &str) -> String {
    s.replace('|', "\\|")
}

fn status(e: &EntryFinding, strict: bool) -> &'static str {
    if e.is_discrepancy(strict) {
        "discrepancy"
    } else if e.documented_ric_discrepancy() {
        "ok (printed RIC differs)"
    } else {
        "ok"
    }
}

fn markdown(r: &VerificationReport) -> String {
    let mut out = String::new();
    let s = &r.summary;
    let _ = writeln!(out, "# Verification report\n");
    let _ = writeln!(out, "seed {}, {} samples per entry, strict {}\n", r.seed, r.samples, r.strict);
    let _ = writeln!(out, "## Summary\n");
    let _ = writeln!(out, "| total | axioms pass | labels match | discrepancies | printed RIC differs | gate failures | infrastructure |");
    let _ = writeln!(out, "|---|---|---|---|---|---|---|");
    let _ = writeln!(
        out,
        "| {} | {} | {} | {} | {} | {} | {} |\n",
        s.total, s.passed, s.label_matched, s.discrepancies, s.documented_ric_discrepancies, s.gate_failures, s.infrastructure_errors
    );

    let _ = writeln!(out, "## Algebra gates\n");
    let _ = writeln!(out, "| algebra | form | Jacobi | closed | det ω | det ≠ 0 at samples |");
    let _ = writeln!(out, "|---|---|---|---|---|---|");
    for g in &r.gates {
        let _ = writeln!(
            out,
            "| {} | {} | {} | {} | {} | {}/{} |",
            g.algebra,
            g.form,
            yes(g.jacobi.is_none()),
            yes(g.closed.is_none()),
            cell(&g.det),
            g.det_nonzero,
            g.samples
        );
    }

    let _ = writeln!(out, "\n## Structures\n");
    let _ = writeln!(out, "| id | J² = Id | ω-compatible | N = 0 | computed | expected | label | RIC | samples | status |");
    let _ = writeln!(out, "|---|---|---|---|---|---|---|---|---|---|");
    for e in &r.entries {
        let computed = e.curvature.as_ref().map_or("-".to_string(), |c| match &c.einstein_factor {
            Some(k) => format!("einstein({})", cell(k)),
            None => c.label.to_string(),
        });
        let ric = if !e.ric_compared {
            "-".to_string()
        } else if e.ric_residuals.is_empty() {
            "match".to_string()
        } else {
            format!("{} entries differ", e.ric_residuals.len())
        };
        let mut line = format!(
            "| {} | {} | {} | {} | {} | {} | {:?} | {} | {}/{} | {} |",
            e.id,
            yes(e.axioms.involution),
            yes(e.axioms.omega_compat),
            yes(e.axioms.nijenhuis),
            computed,
            e.expected_label,
            e.label_match,
            ric,
            e.samples_corroborated,
            e.samples_requested,
            status(e, r.strict)
        );
        if let Some(t) = e.timing_ms {
            let _ = write!(line, " {t} ms |");
        }
        let _ = writeln!(out, "{line}");
    }

    let flagged: Vec<&EntryFinding> = r
        .entries
        .iter()
        .filter(|e| e.is_discrepancy(r.strict) || !e.ric_residuals.is_empty())
        .collect();
    if !flagged.is_empty() {
        let _ = writeln!(out, "\n## Discrepancies\n");
        for e in flagged {
            let _ = writeln!(out, "### {}\n", e.id);
            if !e.label_match.matched() {
                let got = e.curvature.as_ref().map_or("not computed".to_string(), |c| c.label.to_string());
                let _ = writeln!(out, "- label: expected {}, computed {}", e.expected_label, got);
                if let Some(c) = &e.curvature {
                    if let (LabelKind::Flat, Some((idx, v))) = (e.expected_label, &c.first_curvature) {
                        let idx: Vec<String> = idx.iter().map(|i| i.to_string()).collect();
                        let _ = writeln!(out, "- R^{} = {}", idx.join(","), v);
                    }
                    if e.expected_label == LabelKind::HermitianRicci && c.ric_j_sign == -1 {
                        let _ = writeln!(out, "- Ric(JX,JY) = -Ric(X,Y) identically, so Ric(JX,JY) = Ric(X,Y) would force Ric = 0");
                    }
                }
            }
            if e.einstein_factor_match == Some(false) {
                let _ = writeln!(out, "- Einstein factor differs from the expected one");
            }
            if let Some(i) = &e.infrastructure {
                let _ = writeln!(out, "- infrastructure: {i}");
            }
            for f in &e.failures {
                let _ = writeln!(out, "- {}: {}", f.check, f.detail);
            }
            for x in &e.ric_residuals {
                let _ = writeln!(out, "- RIC[{}][{}]: printed {}, computed {}", x.row, x.col, x.expected, x.computed);
            }
            if let (false, Some(c)) = (e.ric_residuals.is_empty(), &e.curvature) {
                let _ = writeln!(out, "- recomputed RIC:");
                for row in &c.ric_operator {
                    let _ = writeln!(out, "  - [{}]", row.join(", "));
                }
            }
            let _ = writeln!(out);
        }
    }

    let sas: Vec<&EntryFinding> = r.entries.iter().filter(|e| e.sasakian.is_some()).collect();
    if !sas.is_empty() {
        let _ = writeln!(out, "\n## Para-Sasakian extensions\n");
        let _ = writeln!(out, "| id | contact | Reeb | almost para-contact | compatible h | Φ = dη | h on D = g | curvature residuals | Ricci residuals | Ric(ξ,ξ) |");
        let _ = writeln!(out, "|---|---|---|---|---|---|---|---|---|---|");
        for e in sas {
            let x = e.sasakian.as_ref().expect("filtered");
            let c = &x.checks;
            let _ = writeln!(
                out,
                "| {} | {} | {} | {} | {} | {} | {} | {} | {} | {} |",
                e.id,
                yes(c.contact),
                yes(c.reeb),
                yes(c.almost_paracontact),
                yes(c.compatible_metric),
                yes(c.phi_sign == 1),
                yes(c.restriction),
                x.theorem2.nonzero(),
                x.theorem3.nonzero(),
                cell(&x.ric_xi_xi)
            );
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{verify_all, Catalog, VerifyConfig};

    fn small() -> VerificationReport {
        let entries = Catalog::builtin().filter("r4m1*", false).unwrap();
        let cfg = VerifyConfig {
            samples: 3,
            extension: true,
            ..VerifyConfig::default()
        };
        verify_all(&entries, &cfg)
    }

    #[test]
    fn json_round_trip() {
        let r = small();
        let back = parse_report(&render_report(&r, Format::Json)).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn markdown_rows_and_sections() {
        let r = small();
        let md = render_report(&r, Format::Markdown);
        for e in &r.entries {
            assert_eq!(md.lines().filter(|l| l.starts_with(&format!("| {} |", e.id))).count(), 2, "{}", e.id);
        }
        assert!(md.contains("## Para-Sasakian extensions"));
    }

    #[test]
    fn deterministic() {
        assert_eq!(render_report(&small(), Format::Json), render_report(&small(), Format::Json));
    }

    #[test]
    fn formats_parse() {
        assert_eq!("json".parse::<Format>(), Ok(Format::Json));
        assert_eq!("markdown".parse::<Format>(), Ok(Format::Markdown));
        assert!("xml".parse::<Format>().is_err());
    }
}
