use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use super::{ArithError, Rational};

/// Maximum number of parameters a [`Space`] can carry.
pub const MAX_PARAMS: usize = 8;

/// Default bound on the number of terms of any intermediate polynomial.
pub const DEFAULT_TERM_LIMIT: usize = 100_000;

/// The ordered parameter list shared by every expression of one
/// verification context, together with its expression-size guard.
#[derive(Debug, PartialEq, Eq)]
pub struct Space {
    names: Vec<String>,
    term_limit: usize,
}

const STANDARD_NAMES: [&str; 7] = ["a", "b", "c", "d", "lambda", "alpha", "beta"];

impl Space {
    pub fn new(names: &[&str]) -> Result<Arc<Space>, ArithError> {
        Self::with_limit(names, DEFAULT_TERM_LIMIT)
    }

    pub fn with_limit(names: &[&str], term_limit: usize) -> Result<Arc<Space>, ArithError> {
        if names.len() > MAX_PARAMS {
            return Err(ArithError::TooManyParameters(names.len()));
        }
        for (i, n) in names.iter().enumerate() {
            if !is_identifier(n) || names[..i].contains(n) {
                return Err(ArithError::BadParameterName(n.to_string()));
            }
        }
        Ok(Arc::new(Space {
            names: names.iter().map(|s| s.to_string()).collect(),
            term_limit,
        }))
    }

    /// The universe `a, b, c, d, lambda, alpha, beta` with the default guard.
    pub fn standard() -> Arc<Space> {
        static STANDARD: OnceLock<Arc<Space>> = OnceLock::new();
        STANDARD
            .get_or_init(|| Space::new(&STANDARD_NAMES).expect("standard names are valid"))
            .clone()
    }

    /// The standard universe with a custom term-count guard.
    pub fn standard_with_limit(term_limit: usize) -> Arc<Space> {
        if term_limit == DEFAULT_TERM_LIMIT {
            return Self::standard();
        }
        Space::with_limit(&STANDARD_NAMES, term_limit).expect("standard names are valid")
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn term_limit(&self) -> usize {
        self.term_limit
    }

    /// Slot of a parameter; the Greek letters are accepted for their ASCII names.
    pub fn slot(&self, name: &str) -> Option<usize> {
        let canonical = match name {
            "λ" => "lambda",
            "α" => "alpha",
            "β" => "beta",
            other => other,
        };
        self.names.iter().position(|n| n == canonical)
    }

    pub fn name(&self, slot: usize) -> &str {
        &self.names[slot]
    }

    pub(crate) fn compatible(a: &Arc<Space>, b: &Arc<Space>) -> bool {
        Arc::ptr_eq(a, b) || **a == **b
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_alphanumeric() || c == '_')
}

/// A point of parameter space given by name.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Assignment {
    values: BTreeMap<String, Rational>,
}

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, name: &str, value: Rational) -> Self {
        self.set(name, value);
        self
    }

    pub fn set(&mut self, name: &str, value: Rational) {
        self.values.insert(name.to_string(), value);
    }

    pub fn get(&self, name: &str) -> Option<&Rational> {
        self.values.get(name)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &Rational)> {
        self.values.iter()
    }

    /// Binds the assignment to the slots of `space`.
    pub fn resolve(&self, space: &Arc<Space>) -> Result<Point, ArithError> {
        let mut values = vec![None; space.len()];
        for (name, v) in &self.values {
            let slot = space
                .slot(name)
                .ok_or_else(|| ArithError::UnknownParameter(name.clone()))?;
            values[slot] = Some(v.clone());
        }
        Ok(Point {
            space: space.clone(),
            values,
        })
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (k, v)) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{k}={v}")?;
        }
        write!(f, "}}")
    }
}

/// An [`Assignment`] resolved against a [`Space`]; cheap to evaluate at.
#[derive(Debug, Clone)]
pub struct Point {
    space: Arc<Space>,
    values: Vec<Option<Rational>>,
}

impl Point {
    pub fn space(&self) -> &Arc<Space> {
        &self.space
    }

    pub(crate) fn value(&self, slot: usize) -> Result<&Rational, ArithError> {
        self.values[slot]
            .as_ref()
            .ok_or_else(|| ArithError::Unassigned(self.space.name(slot).to_string()))
    }

    pub fn to_assignment(&self) -> Assignment {
        let mut a = Assignment::new();
        for (slot, v) in self.values.iter().enumerate() {
            if let Some(v) = v {
                a.set(self.space.name(slot), v.clone());
            }
        }
        a
    }
}
