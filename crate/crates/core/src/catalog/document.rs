//! On-disk shape of a catalog. Expressions stay as strings here; see
//! [`super::Catalog`] for the compiled form.

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatalogDocument {
    pub algebras: Vec<AlgebraDoc>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDoc {
    pub name: String,
    pub dim: usize,
    #[serde(default)]
    pub params: Vec<ParamDoc>,
    #[serde(default)]
    pub brackets: Vec<(usize, usize, usize, String)>,
    #[serde(default)]
    pub forms: Vec<FormDoc>,
    #[serde(default)]
    pub structures: Vec<StructureDoc>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamDoc {
    pub name: String,
    pub domain: DomainDoc,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DomainDoc {
    /// `free`, `positive` or `interval`.
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lo: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hi: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub excluded: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormDoc {
    pub id: String,
    pub terms: Vec<(usize, usize, String)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureDoc {
    pub id: String,
    pub form: String,
    #[serde(rename = "J")]
    pub j: Vec<Vec<String>>,
    #[serde(default)]
    pub params: Vec<ParamDoc>,
    pub expected: ExpectedDoc,
    /// Constrained sub-cases that are skipped unless asked for.
    #[serde(default, skip_serializing_if = "is_false")]
    pub optional: bool,
}

fn is_false(b: &bool) -> bool {
    !*b
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpectedDoc {
    pub label: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub einstein_factor: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ric: Option<Vec<Vec<String>>>,
}
