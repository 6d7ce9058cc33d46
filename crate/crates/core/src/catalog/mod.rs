//! The classification as data: algebras, their symplectic forms and every
//! para-Kähler structure with its expected curvature, plus the driver that
//! re-derives all of it.

mod document;
pub mod fuzz;
pub mod report;
pub mod sample;
pub mod verify;

use std::collections::HashSet;
use std::sync::{Arc, OnceLock};

use thiserror::Error;

use crate::arith::{Matrix, ParseError, Rational, RationalExpr, Space, MAX_PARAMS};
use crate::curvature::LabelKind;
use crate::lie::{DomainKind, LieAlgebra, ParamDomain, Parameter, TwoForm};
use crate::parakahler::{Endomorphism, ParaKahlerStructure};

pub use document::{AlgebraDoc, CatalogDocument, DomainDoc, ExpectedDoc, FormDoc, ParamDoc, StructureDoc};
pub use fuzz::{run_fuzz, FuzzReport, Mutation};
pub use report::{render_report, Format};
pub use sample::{sample_points, Sampler};
pub use verify::{
    verify_all, verify_entry, EntryFinding, Failure, GateFinding, LabelMatch, RicResidual, VerificationReport,
    VerifyConfig,
};

const BUILTIN: &str = include_str!("../../data/builtin_catalog.json");

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("catalog JSON at {path} (line {line}, column {column}): {message}")]
    Json {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{entry}: bad expression in {field}: {source}")]
    Expression {
        entry: String,
        field: String,
        source: ParseError,
    },
    #[error("{entry}: unknown parameter '{name}' in {field}")]
    UnknownParameter { entry: String, field: String, name: String },
    #[error("{entry}: {message}")]
    Dimension { entry: String, message: String },
    #[error("{entry}: {message}")]
    Invalid { entry: String, message: String },
    #[error("{entry}: no admissible parameter sample after {attempts} attempts")]
    Sampling { entry: String, attempts: usize },
}

/// What the classification claims about one structure.
#[derive(Clone, Debug, PartialEq)]
pub struct Expected {
    pub label: LabelKind,
    pub einstein_factor: Option<RationalExpr>,
    /// Printed Ricci operator `RIC`.
    pub ric: Option<Matrix<RationalExpr>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CatalogEntry {
    pub structure: ParaKahlerStructure,
    pub form: String,
    pub expected: Expected,
    pub optional: bool,
}

impl CatalogEntry {
    pub fn id(&self) -> &str {
        &self.structure.id
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra> {
        &self.structure.algebra
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FormRecord {
    pub id: String,
    pub omega: TwoForm<RationalExpr>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraRecord {
    pub algebra: Arc<LieAlgebra>,
    pub forms: Vec<FormRecord>,
    pub entries: Vec<CatalogEntry>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Catalog {
    space: Arc<Space>,
    algebras: Vec<AlgebraRecord>,
}

/// Every non-optional entry of the builtin catalog.
pub fn builtin_catalog() -> Vec<CatalogEntry> {
    Catalog::builtin().entries()
}

pub fn load_catalog(document: &str) -> Result<Catalog, CatalogError> {
    Catalog::load(document)
}

impl Catalog {
    pub fn builtin() -> Catalog {
        static CACHE: OnceLock<Catalog> = OnceLock::new();
        CACHE
            .get_or_init(|| Catalog::load(BUILTIN).expect("builtin catalog is valid"))
            .clone()
    }

    /// The builtin catalog compiled under a custom expression-size guard.
    pub fn builtin_with_limit(term_limit: usize) -> Catalog {
        if term_limit == crate::arith::DEFAULT_TERM_LIMIT {
            return Self::builtin();
        }
        Catalog::load_with_limit(BUILTIN, term_limit).expect("builtin catalog is valid")
    }

    pub fn load(text: &str) -> Result<Catalog, CatalogError> {
        Self::load_with_limit(text, crate::arith::DEFAULT_TERM_LIMIT)
    }

    /// Loads with a custom bound on intermediate polynomial size.
    pub fn load_with_limit(text: &str, term_limit: usize) -> Result<Catalog, CatalogError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let doc: CatalogDocument = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            let inner = e.into_inner();
            CatalogError::Json {
                path,
                line: inner.line(),
                column: inner.column(),
                message: inner.to_string(),
            }
        })?;
        Self::from_document(&doc, term_limit)
    }

    pub fn from_document(doc: &CatalogDocument, term_limit: usize) -> Result<Catalog, CatalogError> {
        let space = build_space(doc, term_limit)?;
        let mut ids = HashSet::new();
        let mut names = HashSet::new();
        let mut algebras = Vec::with_capacity(doc.algebras.len());
        for a in &doc.algebras {
            if !names.insert(a.name.clone()) {
                return Err(invalid(&a.name, "duplicate algebra name"));
            }
            let rec = compile_algebra(&space, a)?;
            for e in &rec.entries {
                if !ids.insert(e.id().to_string()) {
                    return Err(invalid(e.id(), "duplicate structure id"));
                }
            }
            algebras.push(rec);
        }
        Ok(Catalog { space, algebras })
    }

    pub fn space(&self) -> &Arc<Space> {
        &self.space
    }

    pub fn algebras(&self) -> &[AlgebraRecord] {
        &self.algebras
    }

    /// Entries in catalog order, optional ones left out.
    pub fn entries(&self) -> Vec<CatalogEntry> {
        self.all_entries().into_iter().filter(|e| !e.optional).collect()
    }

    pub fn all_entries(&self) -> Vec<CatalogEntry> {
        self.algebras.iter().flat_map(|a| a.entries.iter().cloned()).collect()
    }

    /// Entries whose id matches `pattern`.
    pub fn filter(&self, pattern: &str, include_optional: bool) -> Result<Vec<CatalogEntry>, glob::PatternError> {
        let pat = glob::Pattern::new(pattern)?;
        let all = if include_optional { self.all_entries() } else { self.entries() };
        Ok(all.into_iter().filter(|e| pat.matches(e.id())).collect())
    }

    pub fn to_document(&self) -> CatalogDocument {
        CatalogDocument {
            algebras: self.algebras.iter().map(algebra_doc).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("catalog documents always serialize")
    }
}

fn invalid(entry: &str, message: impl Into<String>) -> CatalogError {
    CatalogError::Invalid {
        entry: entry.to_string(),
        message: message.into(),
    }
}

fn build_space(doc: &CatalogDocument, term_limit: usize) -> Result<Arc<Space>, CatalogError> {
    let standard = Space::standard();
    let mut names: Vec<String> = standard.names().to_vec();
    for a in &doc.algebras {
        let declared = a.params.iter().chain(a.structures.iter().flat_map(|s| &s.params));
        for p in declared {
            if !names.contains(&p.name) {
                names.push(p.name.clone());
            }
        }
    }
    if names.len() > MAX_PARAMS {
        return Err(invalid("catalog", format!("{} distinct parameters, at most {MAX_PARAMS} supported", names.len())));
    }
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    Space::with_limit(&refs, term_limit).map_err(|e| invalid("catalog", e.to_string()))
}

/// Parses `src`, then rejects parameters outside `allowed`.
fn parse_in(space: &Arc<Space>, allowed: &[String], entry: &str, field: &str, src: &str) -> Result<RationalExpr, CatalogError> {
    let e = space.parse(src).map_err(|err| match err.unknown_parameter.clone() {
        Some(name) => CatalogError::UnknownParameter {
            entry: entry.to_string(),
            field: field.to_string(),
            name,
        },
        None => CatalogError::Expression {
            entry: entry.to_string(),
            field: field.to_string(),
            source: err,
        },
    })?;
    if let Some(name) = e.parameters().into_iter().find(|p| !allowed.contains(p)) {
        return Err(CatalogError::UnknownParameter {
            entry: entry.to_string(),
            field: field.to_string(),
            name,
        });
    }
    Ok(e)
}

fn parse_rational(space: &Arc<Space>, entry: &str, field: &str, src: &str) -> Result<Rational, CatalogError> {
    parse_in(space, &[], entry, field, src)?
        .as_constant()
        .ok_or_else(|| invalid(entry, format!("{field} must be a rational constant")))
}

fn compile_params(space: &Arc<Space>, entry: &str, params: &[ParamDoc]) -> Result<Vec<Parameter>, CatalogError> {
    let mut out: Vec<Parameter> = Vec::new();
    for p in params {
        if out.iter().any(|q| q.name == p.name) {
            return Err(invalid(entry, format!("parameter '{}' declared twice", p.name)));
        }
        let field = format!("domain of {}", p.name);
        let d = &p.domain;
        let bound = |s: &Option<String>| s.as_deref().map(|s| parse_rational(space, entry, &field, s)).transpose();
        let mut domain = match d.kind.as_str() {
            "free" | "positive" if d.lo.is_some() || d.hi.is_some() => {
                return Err(invalid(entry, format!("{field}: bounds need kind \"interval\"")))
            }
            "free" => ParamDomain::free(),
            "positive" => ParamDomain::positive(),
            "interval" => ParamDomain::interval(bound(&d.lo)?, bound(&d.hi)?).map_err(|m| invalid(entry, format!("{field}: {m}")))?,
            other => return Err(invalid(entry, format!("{field}: unknown kind \"{other}\""))),
        };
        let excluded = d
            .excluded
            .iter()
            .map(|s| parse_rational(space, entry, &field, s))
            .collect::<Result<Vec<_>, _>>()?;
        domain = domain.excluding(excluded);
        out.push(Parameter {
            name: p.name.clone(),
            domain,
        });
    }
    Ok(out)
}

fn check_index(entry: &str, what: &str, dim: usize, idx: &[usize]) -> Result<(), CatalogError> {
    if idx.iter().any(|&i| i == 0 || i > dim) {
        return Err(CatalogError::Dimension {
            entry: entry.to_string(),
            message: format!("{what} index {idx:?} outside 1..={dim}"),
        });
    }
    Ok(())
}

fn compile_matrix(
    space: &Arc<Space>,
    allowed: &[String],
    entry: &str,
    field: &str,
    dim: usize,
    rows: &[Vec<String>],
) -> Result<Matrix<RationalExpr>, CatalogError> {
    if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
        let shape: Vec<usize> = rows.iter().map(Vec::len).collect();
        return Err(CatalogError::Dimension {
            entry: entry.to_string(),
            message: format!("{field} has row lengths {shape:?}, expected {dim}x{dim}"),
        });
    }
    let cells = rows
        .iter()
        .enumerate()
        .map(|(r, row)| {
            row.iter()
                .enumerate()
                .map(|(c, s)| parse_in(space, allowed, entry, &format!("{field}[{}][{}]", r + 1, c + 1), s))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Matrix::from_rows(cells).map_err(|e| CatalogError::Dimension {
        entry: entry.to_string(),
        message: e.to_string(),
    })
}

fn compile_algebra(space: &Arc<Space>, a: &AlgebraDoc) -> Result<AlgebraRecord, CatalogError> {
    let name = a.name.as_str();
    if a.dim == 0 || a.dim % 2 != 0 {
        return Err(CatalogError::Dimension {
            entry: name.to_string(),
            message: format!("dimension {} is not a positive even number", a.dim),
        });
    }
    let params = compile_params(space, name, &a.params)?;
    let alg_names: Vec<String> = params.iter().map(|p| p.name.clone()).collect();
    let mut seen = HashSet::new();
    let mut brackets = Vec::with_capacity(a.brackets.len());
    for (i, j, k, src) in &a.brackets {
        check_index(name, "bracket", a.dim, &[*i, *j, *k])?;
        if i >= j {
            return Err(invalid(name, format!("bracket [{i},{j}] must have i < j")));
        }
        if !seen.insert((*i, *j, *k)) {
            return Err(invalid(name, format!("bracket [{i},{j}] -> e{k} listed twice")));
        }
        let field = format!("bracket [e{i},e{j}] -> e{k}");
        brackets.push((i - 1, j - 1, k - 1, parse_in(space, &alg_names, name, &field, src)?));
    }
    let algebra = LieAlgebra::new(name, a.dim, params.clone(), space, &brackets).map_err(|e| invalid(name, e.to_string()))?;
    let algebra = Arc::new(algebra);
    let zero = RationalExpr::zero(space);

    let mut forms: Vec<FormRecord> = Vec::with_capacity(a.forms.len());
    for f in &a.forms {
        let fname = format!("{name}.{}", f.id);
        if forms.iter().any(|g| g.id == f.id) {
            return Err(invalid(&fname, "duplicate form id"));
        }
        let mut terms = Vec::with_capacity(f.terms.len());
        for (i, j, src) in &f.terms {
            check_index(&fname, "form term", a.dim, &[*i, *j])?;
            if i >= j {
                return Err(invalid(&fname, format!("term ({i},{j}) must have i < j")));
            }
            let field = format!("term e{i}^e{j}");
            terms.push((i - 1, j - 1, parse_in(space, &alg_names, &fname, &field, src)?));
        }
        let omega = TwoForm::from_terms(a.dim, &zero, &terms).map_err(|e| invalid(&fname, e.to_string()))?;
        forms.push(FormRecord { id: f.id.clone(), omega });
    }

    let mut entries = Vec::with_capacity(a.structures.len());
    for s in &a.structures {
        let id = s.id.as_str();
        let omega = forms
            .iter()
            .find(|f| f.id == s.form)
            .ok_or_else(|| invalid(id, format!("form '{}' is not defined on {name}", s.form)))?
            .omega
            .clone();
        let sparams = compile_params(space, id, &s.params)?;
        let mut allowed = alg_names.clone();
        for p in &sparams {
            if allowed.contains(&p.name) {
                return Err(invalid(id, format!("parameter '{}' shadows an algebra parameter", p.name)));
            }
            allowed.push(p.name.clone());
        }
        let jm = compile_matrix(space, &allowed, id, "J", a.dim, &s.j)?;
        let j = Endomorphism::new(jm).map_err(|e| invalid(id, e.to_string()))?;
        let label = LabelKind::parse(&s.expected.label).ok_or_else(|| invalid(id, format!("unknown label \"{}\"", s.expected.label)))?;
        let einstein_factor = s
            .expected
            .einstein_factor
            .as_deref()
            .map(|src| parse_in(space, &allowed, id, "einstein_factor", src))
            .transpose()?;
        let ric = s
            .expected
            .ric
            .as_ref()
            .map(|rows| compile_matrix(space, &allowed, id, "ric", a.dim, rows))
            .transpose()?;
        entries.push(CatalogEntry {
            structure: ParaKahlerStructure {
                id: id.to_string(),
                algebra: algebra.clone(),
                omega,
                j,
                params: sparams,
            },
            form: s.form.clone(),
            expected: Expected {
                label,
                einstein_factor,
                ric,
            },
            optional: s.optional,
        });
    }
    Ok(AlgebraRecord { algebra, forms, entries })
}

fn param_doc(p: &Parameter) -> ParamDoc {
    let (kind, lo, hi) = match &p.domain.kind {
        DomainKind::Free => ("free", None, None),
        DomainKind::Positive => ("positive", None, None),
        DomainKind::Interval { lo, hi } => ("interval", lo.as_ref().map(|q| q.to_string()), hi.as_ref().map(|q| q.to_string())),
    };
    ParamDoc {
        name: p.name.clone(),
        domain: DomainDoc {
            kind: kind.to_string(),
            lo,
            hi,
            excluded: p.domain.excluded.iter().map(|q| q.to_string()).collect(),
        },
    }
}

pub(crate) fn matrix_strings(m: &Matrix<RationalExpr>) -> Vec<Vec<String>> {
    m.to_rows().iter().map(|r| r.iter().map(|e| e.to_string()).collect()).collect()
}

fn algebra_doc(rec: &AlgebraRecord) -> AlgebraDoc {
    let alg = &rec.algebra;
    AlgebraDoc {
        name: alg.name.clone(),
        dim: alg.dim(),
        params: alg.params.iter().map(param_doc).collect(),
        brackets: alg
            .brackets()
            .into_iter()
            .map(|(i, j, k, v)| (i + 1, j + 1, k + 1, v.to_string()))
            .collect(),
        forms: rec
            .forms
            .iter()
            .map(|f| FormDoc {
                id: f.id.clone(),
                terms: f.omega.terms().into_iter().map(|(i, j, v)| (i + 1, j + 1, v.to_string())).collect(),
            })
            .collect(),
        structures: rec
            .entries
            .iter()
            .map(|e| StructureDoc {
                id: e.id().to_string(),
                form: e.form.clone(),
                j: matrix_strings(e.structure.j.matrix()),
                params: e.structure.params.iter().map(param_doc).collect(),
                expected: ExpectedDoc {
                    label: e.expected.label.id().to_string(),
                    einstein_factor: e.expected.einstein_factor.as_ref().map(|f| f.to_string()),
                    ric: e.expected.ric.as_ref().map(matrix_strings),
                },
                optional: e.optional,
            })
            .collect(),
    }
}
