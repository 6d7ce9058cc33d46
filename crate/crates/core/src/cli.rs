//! Command-line front end. [`run`] does everything but touch the process
//! streams, so it is usable from tests.

use std::ffi::OsString;
use std::fmt::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::arith::{RationalExpr, DEFAULT_TERM_LIMIT};
use crate::catalog::{render_report, run_fuzz, Catalog, CatalogEntry, Format, VerificationReport, VerifyConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DISCREPANCY: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INFRASTRUCTURE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "parakahler", version, about = "Exact verification of para-Kähler structures on 4D Lie algebras")]
struct Cli {
    #[command(flatten)]
    opts: RunOptions,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct RunOptions {
    /// Seed for parameter sampling.
    #[arg(long, global = true, env = "PARAKAHLER_SEED", default_value_t = 0)]
    seed: u64,
    /// Numeric corroboration samples per entry.
    #[arg(long, global = true, default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..))]
    samples: u64,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Markdown)]
    format: OutputFormat,
    /// Catalog file to use instead of the builtin one.
    #[arg(long, global = true)]
    catalog: Option<PathBuf>,
    /// Glob on structure ids, e.g. 'r2r2.*'.
    #[arg(long, global = true)]
    filter: Option<String>,
    /// Treat differences from printed Ricci operators as discrepancies.
    #[arg(long, global = true)]
    strict: bool,
    /// Write the document here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Largest polynomial (in terms) any intermediate result may reach.
    #[arg(long, global = true, default_value_t = DEFAULT_TERM_LIMIT)]
    term_limit: usize,
    /// Include constrained sub-case entries.
    #[arg(long, global = true)]
    include_optional: bool,
    /// Record per-entry wall time in reports.
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum OutputFormat {
    Json,
    Markdown,
}

impl From<OutputFormat> for Format {
    fn from(f: OutputFormat) -> Self {
        match f {
            OutputFormat::Json => Format::Json,
            OutputFormat::Markdown => Format::Markdown,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Algebras, forms and structures with their parameter domains.
    List,
    /// Axioms, metric, curvature and labels.
    Verify,
    /// Central extensions and their para-Sasakian curvature identities.
    Extend,
    /// Everything, written as one document.
    Report,
    /// Validate an external catalog file.
    CheckFile { path: PathBuf },
    /// Corrupt one entry of J at a time and count detections.
    Fuzz {
        #[arg(long, default_value_t = 100)]
        count: usize,
    },
}

/// Exit code and the text destined for each stream.
#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn fail(code: i32, msg: impl Into<String>) -> Self {
        let mut stderr = msg.into();
        if !stderr.ends_with('\n') {
            stderr.push('\n');
        }
        Outcome {
            code,
            stdout: String::new(),
            stderr,
        }
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome::fail(EXIT_USAGE, text)
            } else {
                Outcome {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let o = &cli.opts;
    if let Command::CheckFile { path } = &cli.command {
        return check_file(path, o.term_limit);
    }
    let catalog = match load(o) {
        Ok(c) => c,
        Err(out) => return out,
    };
    let entries = match &o.filter {
        None => {
            if o.include_optional {
                catalog.all_entries()
            } else {
                catalog.entries()
            }
        }
        Some(p) => match catalog.filter(p, o.include_optional) {
            Ok(e) => e,
            Err(e) => return Outcome::fail(EXIT_USAGE, format!("bad --filter pattern: {e}")),
        },
    };
    let config = VerifyConfig {
        seed: o.seed,
        samples: o.samples as usize,
        extension: false,
        timing: o.timing,
        strict: o.strict,
    };
    match cli.command {
        Command::List => emit(o, list(&catalog, &entries, o.format), EXIT_OK, String::new()),
        Command::Verify => {
            let r = crate::catalog::verify_all(&entries, &config);
            let code = if r.summary.infrastructure_errors > 0 {
                EXIT_INFRASTRUCTURE
            } else if r.summary.discrepancies > 0 {
                EXIT_DISCREPANCY
            } else {
                EXIT_OK
            };
            emit(o, render_report(&r, o.format.into()), code, summary_line(&r))
        }
        Command::Extend | Command::Report => {
            let config = VerifyConfig { extension: true, ..config };
            let r = crate::catalog::verify_all(&entries, &config);
            let ext_bad = r.entries.iter().filter(|e| !e.sasakian.as_ref().is_some_and(|x| x.holds())).count();
            let bad = match cli.command {
                Command::Extend => ext_bad > 0,
                _ => ext_bad > 0 || r.summary.discrepancies > 0,
            };
            let code = if r.summary.infrastructure_errors > 0 {
                EXIT_INFRASTRUCTURE
            } else if bad {
                EXIT_DISCREPANCY
            } else {
                EXIT_OK
            };
            let mut line = summary_line(&r);
            let _ = writeln!(
                line,
                "{} extensions checked, {} with nonzero residuals or missing",
                r.summary.extension_checked, ext_bad
            );
            emit(o, render_report(&r, o.format.into()), code, line)
        }
        Command::Fuzz { count } => {
            let f = run_fuzz(&entries, count, o.seed);
            let doc = match o.format {
                OutputFormat::Json => serde_json::to_string_pretty(&f).expect("fuzz reports serialize") + "\n",
                OutputFormat::Markdown => {
                    let mut s = String::from("| entry | position | delta | detected by |\n|---|---|---|---|\n");
                    for m in &f.mutations {
                        let by = match (&m.detected_by, &m.error, &m.equivalence) {
                            (Some(d), _, _) => d.clone(),
                            (None, Some(e), _) => format!("error: {e}"),
                            (None, None, Some(q)) => format!("not detected, equivalent via {q}"),
                            (None, None, None) => "not detected".to_string(),
                        };
                        let _ = writeln!(s, "| {} | ({},{}) | {} | {} |", m.entry, m.row, m.col, m.delta, by);
                    }
                    s
                }
            };
            let need = (count * 95).div_ceil(100);
            let code = if f.detected >= need { EXIT_OK } else { EXIT_DISCREPANCY };
            let line = format!(
                "{}/{} mutations detected, {} undetected ({} unexplained by a parameter shift)\n",
                f.detected,
                count,
                f.equivalent.len(),
                f.unexplained().len()
            );
            emit(o, doc, code, line)
        }
        Command::CheckFile { .. } => unreachable!("handled above"),
    }
}

fn load(o: &RunOptions) -> Result<Catalog, Outcome> {
    match &o.catalog {
        None => Ok(Catalog::builtin_with_limit(o.term_limit)),
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Outcome::fail(EXIT_INFRASTRUCTURE, format!("cannot read {}: {e}", path.display())))?;
            Catalog::load_with_limit(&text, o.term_limit)
                .map_err(|e| Outcome::fail(EXIT_USAGE, format!("invalid catalog {}: {e}", path.display())))
        }
    }
}

fn check_file(path: &PathBuf, term_limit: usize) -> Outcome {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => return Outcome::fail(EXIT_INFRASTRUCTURE, format!("cannot read {}: {e}", path.display())),
    };
    match Catalog::load_with_limit(&text, term_limit) {
        Ok(c) => {
            let all = c.all_entries();
            let optional = all.iter().filter(|e| e.optional).count();
            let forms: usize = c.algebras().iter().map(|a| a.forms.len()).sum();
            Outcome {
                code: EXIT_OK,
                stdout: format!(
                    "ok: {} algebras, {} forms, {} structures ({} optional)\n",
                    c.algebras().len(),
                    forms,
                    all.len(),
                    optional
                ),
                stderr: String::new(),
            }
        }
        Err(e) => Outcome::fail(EXIT_DISCREPANCY, format!("{}: {e}", path.display())),
    }
}

fn emit(o: &RunOptions, doc: String, code: i32, mut stderr: String) -> Outcome {
    match &o.out {
        None => Outcome { code, stdout: doc, stderr },
        Some(path) => match std::fs::write(path, doc) {
            Ok(()) => {
                let _ = writeln!(stderr, "wrote {}", path.display());
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr,
                }
            }
            Err(e) => Outcome::fail(EXIT_INFRASTRUCTURE, format!("cannot write {}: {e}", path.display())),
        },
    }
}

fn summary_line(r: &VerificationReport) -> String {
    let s = &r.summary;
    format!(
        "{} structures verified: {} pass all axioms, {} labels match, {} discrepancies, {} printed RIC differences\n",
        s.total, s.passed, s.label_matched, s.discrepancies, s.documented_ric_discrepancies
    )
}

/// `c·e_k` terms as `c e_k` with unit coefficients elided.
fn combination(terms: &[(RationalExpr, String)]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut s = String::new();
    for (i, (c, basis)) in terms.iter().enumerate() {
        let text = c.to_string();
        let (neg, body) = match text.strip_prefix('-') {
            Some(rest) if !rest.contains(['+', '-']) => (true, rest.to_string()),
            _ => (false, text),
        };
        let sep = match (i, neg) {
            (0, true) => "-",
            (0, false) => "",
            (_, true) => " - ",
            (_, false) => " + ",
        };
        let coef = if body == "1" {
            String::new()
        } else if body.contains(['+', '-', '/', '*']) {
            format!("({body}) ")
        } else {
            format!("{body} ")
        };
        let _ = write!(s, "{sep}{coef}{basis}");
    }
    s
}

fn list(catalog: &Catalog, entries: &[CatalogEntry], format: OutputFormat) -> String {
    if format == OutputFormat::Json {
        return catalog.to_json() + "\n";
    }
    let mut s = String::new();
    let optional = entries.iter().filter(|e| e.optional).count();
    let _ = writeln!(
        s,
        "# {} algebras, {} structures{}\n",
        catalog.algebras().len(),
        entries.len(),
        if optional > 0 { format!(" ({optional} optional)") } else { String::new() }
    );
    for rec in catalog.algebras() {
        let a = &rec.algebra;
        let _ = writeln!(s, "## {} (dim {})\n", a.name, a.dim());
        for p in &a.params {
            let _ = writeln!(s, "parameter {}: {}", p.name, p.domain);
        }
        let mut by_pair: Vec<((usize, usize), Vec<(RationalExpr, String)>)> = Vec::new();
        for (i, j, k, v) in a.brackets() {
            let term = (v, format!("e{}", k + 1));
            match by_pair.iter_mut().find(|(p, _)| *p == (i, j)) {
                Some((_, t)) => t.push(term),
                None => by_pair.push(((i, j), vec![term])),
            }
        }
        if by_pair.is_empty() {
            let _ = writeln!(s, "abelian");
        }
        for ((i, j), terms) in by_pair {
            let _ = writeln!(s, "[e{},e{}] = {}", i + 1, j + 1, combination(&terms));
        }
        for f in &rec.forms {
            let terms: Vec<(RationalExpr, String)> = f
                .omega
                .terms()
                .into_iter()
                .map(|(i, j, v)| (v, format!("e{}^e{}", i + 1, j + 1)))
                .collect();
            let _ = writeln!(s, "form {}: {}", f.id, combination(&terms));
        }
        let _ = writeln!(s);
        for e in entries.iter().filter(|e| &e.structure.algebra == a) {
            let params: Vec<String> = e.structure.params.iter().map(|p| format!("{} {}", p.name, p.domain)).collect();
            let params = if params.is_empty() { "no parameters".to_string() } else { params.join(", ") };
            let _ = writeln!(
                s,
                "- {} on {}: expected {}{}; {}",
                e.id(),
                e.form,
                e.expected.label,
                if e.optional { " (optional)" } else { "" },
                params
            );
        }
        let _ = writeln!(s);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn go(args: &[&str]) -> Outcome {
        run(std::iter::once("parakahler").chain(args.iter().copied()))
    }

    #[test]
    fn list_counts() {
        let o = go(&["list"]);
        assert_eq!(o.code, 0);
        assert!(o.stdout.starts_with("# 15 algebras, 58 structures"));
        assert!(o.stdout.contains("[e4,e3] = e2 - e3") || o.stdout.contains("[e3,e4] = -e2 + e3"), "{}", o.stdout);
        assert!(o.stdout.contains("parameter lambda: (1/2, inf) except 1, 2"));
    }

    #[test]
    fn usage_errors() {
        assert_eq!(go(&["frobnicate"]).code, EXIT_USAGE);
        assert_eq!(go(&["verify", "--samples", "0"]).code, EXIT_USAGE);
        assert_eq!(go(&["verify", "--filter", "["]).code, EXIT_USAGE);
        assert_eq!(go(&["--help"]).code, EXIT_OK);
    }

    #[test]
    fn missing_file_is_infrastructure() {
        assert_eq!(go(&["check-file", "/nonexistent/catalog.json"]).code, EXIT_INFRASTRUCTURE);
        assert_eq!(go(&["verify", "--catalog", "/nonexistent/catalog.json"]).code, EXIT_INFRASTRUCTURE);
    }

    #[test]
    fn combination_text() {
        let sp = crate::arith::Space::standard();
        let t = |s: &str, b: &str| (sp.parse(s).unwrap(), b.to_string());
        assert_eq!(combination(&[t("1", "e1"), t("-1", "e2")]), "e1 - e2");
        assert_eq!(combination(&[t("-1/2", "e1"), t("lambda", "e3")]), "-(1/2) e1 + lambda e3");
        let c = combination(&[t("1-lambda", "e2")]);
        assert!(c.starts_with('(') && c.ends_with(") e2"), "{c}");
    }
}
