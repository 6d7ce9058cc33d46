//! Lie algebras given by structure constants, their Chevalley–Eilenberg
//! differential on 1- and 2-forms, and symplectic-form checks.
//!
//! Conventions: `[e_i, e_j] = C^k_ij e_k`, `dα(X,Y) = −α([X,Y])` and
//! `dω(X,Y,Z) = −ω([X,Y],Z) − ω([Y,Z],X) − ω([Z,X],Y)`. Indices are 0-based
//! in the API and 1-based in anything printed.

use std::fmt;
use std::sync::Arc;

use num_traits::Zero;
use thiserror::Error;

use crate::arith::{ArithError, Field, Matrix, Point, Rational, RationalExpr, Space};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("bracket [e{i},e{j}] is not antisymmetric")]
    NotAntisymmetric { i: usize, j: usize },
    #[error("form is not antisymmetric at ({i},{j})")]
    NotSkew { i: usize, j: usize },
    #[error("symplectic forms need even dimension, got {0}")]
    OddDimension(usize),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// Structure constants `C^k_ij` of a Lie algebra, stored densely.
#[derive(Clone, Debug, PartialEq)]
pub struct StructureConstants<T> {
    dim: usize,
    c: Vec<T>,
}

impl<T: Field> StructureConstants<T> {
    /// All `n³` components in storage order.
    pub fn components(&self) -> &[T] {
        &self.c
    }

    pub fn zeros(dim: usize, proto: &T) -> Self {
        StructureConstants {
            dim,
            c: vec![proto.zero_like(); dim * dim * dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn idx(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.dim + j) * self.dim + k
    }

    /// `C^k_ij`.
    pub fn get(&self, i: usize, j: usize, k: usize) -> &T {
        &self.c[self.idx(i, j, k)]
    }

    /// Sets `C^k_ij = v` and `C^k_ji = −v`.
    pub fn set(&mut self, i: usize, j: usize, k: usize, v: T) {
        let (a, b) = (self.idx(i, j, k), self.idx(j, i, k));
        self.c[b] = v.neg();
        self.c[a] = v;
    }

    /// Coefficients of `[e_i, e_j]`.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &[T] {
        let start = self.idx(i, j, 0);
        &self.c[start..start + self.dim]
    }

    pub fn bracket(&self, x: &[T], y: &[T]) -> Result<Vec<T>, LieError> {
        if x.len() != self.dim || y.len() != self.dim {
            return Err(LieError::Dimension(format!(
                "vectors of length {} and {} in dimension {}",
                x.len(),
                y.len(),
                self.dim
            )));
        }
        let zero = self.c.first().map_or_else(|| x[0].zero_like(), T::zero_like);
        let mut out = vec![zero; self.dim];
        for i in 0..self.dim {
            if x[i].vanishes() {
                continue;
            }
            for j in 0..self.dim {
                if y[j].vanishes() || i == j {
                    continue;
                }
                let xy = x[i].try_mul(&y[j])?;
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.get(i, j, k);
                    if !c.vanishes() {
                        *o = o.try_add(&c.try_mul(&xy)?)?;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn is_abelian(&self) -> bool {
        self.c.iter().all(Field::vanishes)
    }

    pub fn check_antisymmetric(&self) -> Result<(), LieError> {
        for i in 0..self.dim {
            for j in i..self.dim {
                for k in 0..self.dim {
                    let s = self.get(i, j, k).try_add(self.get(j, i, k))?;
                    if !s.vanishes() {
                        return Err(LieError::NotAntisymmetric { i: i + 1, j: j + 1 });
                    }
                }
            }
        }
        Ok(())
    }

    /// First basis triple `(i<j<k)` and component where the cyclic sum
    /// `[e_i,[e_j,e_k]] + [e_j,[e_k,e_i]] + [e_k,[e_i,e_j]]` is nonzero.
    pub fn jacobi_check(&self) -> Result<Option<JacobiViolation<T>>, LieError> {
        let n = self.dim;
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let sum = self.jacobiator(i, j, k)?;
                    if let Some((m, r)) = sum.into_iter().enumerate().find(|(_, r)| !r.vanishes()) {
                        return Ok(Some(JacobiViolation {
                            triple: (i, j, k),
                            component: m,
                            residual: r,
                        }));
                    }
                }
            }
        }
        Ok(None)
    }

    fn jacobiator(&self, i: usize, j: usize, k: usize) -> Result<Vec<T>, LieError> {
        let n = self.dim;
        let mut acc = vec![self.c[0].zero_like(); n];
        for (x, y, z) in [(i, j, k), (j, k, i), (k, i, j)] {
            // [e_x, [e_y, e_z]]^m = Σ_p C^p_yz C^m_xp
            for (m, a) in acc.iter_mut().enumerate() {
                for p in 0..n {
                    let (c1, c2) = (self.get(y, z, p), self.get(x, p, m));
                    if !c1.vanishes() && !c2.vanishes() {
                        *a = a.try_add(&c1.try_mul(c2)?)?;
                    }
                }
            }
        }
        Ok(acc)
    }

    /// `dα` of a 1-form.
    pub fn d1(&self, alpha: &[T]) -> Result<TwoForm<T>, LieError> {
        self.check_len(alpha.len())?;
        let n = self.dim;
        let m = Matrix::try_from_fn(n, n, |i, j| -> Result<T, ArithError> {
            let mut acc = alpha[0].zero_like();
            for (k, a) in alpha.iter().enumerate() {
                let c = self.get(i, j, k);
                if !c.vanishes() && !a.vanishes() {
                    acc = acc.try_sub(&c.try_mul(a)?)?;
                }
            }
            Ok(acc)
        })?;
        Ok(TwoForm { m })
    }

    /// `dω` of a 2-form.
    pub fn d2(&self, omega: &TwoForm<T>) -> Result<ThreeForm<T>, LieError> {
        self.check_len(omega.dim())?;
        let n = self.dim;
        let mut out = ThreeForm::zeros(n, omega.m.get(0, 0));
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let mut acc = omega.m.get(0, 0).zero_like();
                    for (x, y, z) in [(i, j, k), (j, k, i), (k, i, j)] {
                        for p in 0..n {
                            let (c, w) = (self.get(x, y, p), omega.m.get(p, z));
                            if !c.vanishes() && !w.vanishes() {
                                acc = acc.try_sub(&c.try_mul(w)?)?;
                            }
                        }
                    }
                    out.set(i, j, k, acc);
                }
            }
        }
        Ok(out)
    }

    /// Closedness and nondegeneracy of `ω`; the determinant is reported so
    /// callers can check it on a parameter domain.
    pub fn symplectic_check(&self, omega: &TwoForm<T>) -> Result<SymplecticCheck<T>, LieError> {
        if self.dim % 2 == 1 {
            return Err(LieError::OddDimension(self.dim));
        }
        let d = self.d2(omega)?;
        let det = omega.matrix().det()?;
        Ok(SymplecticCheck {
            closed_violation: d.first_nonzero(),
            det,
        })
    }

    fn check_len(&self, len: usize) -> Result<(), LieError> {
        if len != self.dim {
            return Err(LieError::Dimension(format!(
                "form of dimension {len} on an algebra of dimension {}",
                self.dim
            )));
        }
        Ok(())
    }

    pub fn try_map<U>(&self, f: impl FnMut(&T) -> Result<U, ArithError>) -> Result<StructureConstants<U>, ArithError> {
        Ok(StructureConstants {
            dim: self.dim,
            c: self.c.iter().map(f).collect::<Result<_, _>>()?,
        })
    }
}

impl StructureConstants<RationalExpr> {
    pub fn eval_at(&self, point: &Point) -> Result<StructureConstants<Rational>, ArithError> {
        self.try_map(|e| e.eval_at(point))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct JacobiViolation<T> {
    /// 0-based basis triple.
    pub triple: (usize, usize, usize),
    pub component: usize,
    pub residual: T,
}

impl<T: fmt::Display> fmt::Display for JacobiViolation<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (i, j, k) = self.triple;
        write!(
            f,
            "Jacobi fails at (e{},e{},e{}): component e{} = {}",
            i + 1,
            j + 1,
            k + 1,
            self.component + 1,
            self.residual
        )
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SymplecticCheck<T> {
    /// First nonzero component `(i<j<k, value)` of `dω`, if any.
    pub closed_violation: Option<((usize, usize, usize), T)>,
    pub det: T,
}

impl<T: Field> SymplecticCheck<T> {
    pub fn closed(&self) -> bool {
        self.closed_violation.is_none()
    }

    pub fn passed(&self) -> bool {
        self.closed() && !self.det.vanishes()
    }
}

/// Antisymmetric bilinear form, `ω_ij = ω(e_i, e_j)`.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoForm<T> {
    m: Matrix<T>,
}

impl<T: Field> TwoForm<T> {
    pub fn new(m: Matrix<T>) -> Result<Self, LieError> {
        if !m.is_square() {
            return Err(LieError::Dimension(format!("{}x{} form", m.rows(), m.cols())));
        }
        for i in 0..m.rows() {
            for j in i..m.cols() {
                if !m.get(i, j).try_add(m.get(j, i))?.vanishes() {
                    return Err(LieError::NotSkew { i: i + 1, j: j + 1 });
                }
            }
        }
        Ok(TwoForm { m })
    }

    /// `Σ c · e^i∧e^j` over 0-based pairs; repeated pairs add up.
    pub fn from_terms(dim: usize, proto: &T, terms: &[(usize, usize, T)]) -> Result<Self, LieError> {
        let mut m = Matrix::zeros(dim, dim, proto);
        for (i, j, c) in terms {
            if *i >= dim || *j >= dim || i == j {
                return Err(LieError::Dimension(format!(
                    "term e{}∧e{} in dimension {dim}",
                    i + 1,
                    j + 1
                )));
            }
            let v = m.get(*i, *j).try_add(c)?;
            m.set(*j, *i, v.neg());
            m.set(*i, *j, v);
        }
        Ok(TwoForm { m })
    }

    pub fn dim(&self) -> usize {
        self.m.rows()
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.m
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        self.m.get(i, j)
    }

    pub fn neg(&self) -> Self {
        TwoForm { m: self.m.neg() }
    }

    /// Nonzero upper-triangle components.
    pub fn terms(&self) -> Vec<(usize, usize, T)> {
        let n = self.dim();
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| !self.m.get(i, j).vanishes())
            .map(|(i, j)| (i, j, self.m.get(i, j).clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.m.is_zero()
    }
}

impl TwoForm<RationalExpr> {
    pub fn eval_at(&self, point: &Point) -> Result<TwoForm<Rational>, ArithError> {
        Ok(TwoForm {
            m: self.m.eval_at(point)?,
        })
    }
}

/// Totally antisymmetric trilinear form.
#[derive(Clone, Debug, PartialEq)]
pub struct ThreeForm<T> {
    dim: usize,
    c: Vec<T>,
}

impl<T: Field> ThreeForm<T> {
    pub fn zeros(dim: usize, proto: &T) -> Self {
        ThreeForm {
            dim,
            c: vec![proto.zero_like(); dim * dim * dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &T {
        &self.c[(i * self.dim + j) * self.dim + k]
    }

    /// Sets the component and all its antisymmetric images.
    pub fn set(&mut self, i: usize, j: usize, k: usize, v: T) {
        let n = self.dim;
        let neg = v.neg();
        for (p, even) in [
            ((i, j, k), true),
            ((j, k, i), true),
            ((k, i, j), true),
            ((j, i, k), false),
            ((i, k, j), false),
            ((k, j, i), false),
        ] {
            self.c[(p.0 * n + p.1) * n + p.2] = if even { v.clone() } else { neg.clone() };
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Field::vanishes)
    }

    pub fn first_nonzero(&self) -> Option<((usize, usize, usize), T)> {
        let n = self.dim;
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let v = self.get(i, j, k);
                    if !v.vanishes() {
                        return Some(((i, j, k), v.clone()));
                    }
                }
            }
        }
        None
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, ArithError> {
        self.zip_with(other, T::try_add)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, ArithError> {
        self.zip_with(other, T::try_sub)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&T, &T) -> Result<T, ArithError>) -> Result<Self, ArithError> {
        Ok(ThreeForm {
            dim: self.dim,
            c: self
                .c
                .iter()
                .zip(&other.c)
                .map(|(a, b)| f(a, b))
                .collect::<Result<_, _>>()?,
        })
    }
}

/// `(α∧β)_ij = α_i β_j − α_j β_i`.
pub fn wedge11<T: Field>(alpha: &[T], beta: &[T]) -> Result<TwoForm<T>, ArithError> {
    let n = alpha.len();
    let m = Matrix::try_from_fn(n, n, |i, j| alpha[i].try_mul(&beta[j])?.try_sub(&alpha[j].try_mul(&beta[i])?))?;
    Ok(TwoForm { m })
}

/// `(ω∧γ)(X,Y,Z) = ω(X,Y)γ(Z) + ω(Y,Z)γ(X) + ω(Z,X)γ(Y)`.
pub fn wedge21<T: Field>(omega: &TwoForm<T>, gamma: &[T]) -> Result<ThreeForm<T>, ArithError> {
    let n = omega.dim();
    let mut out = ThreeForm::zeros(n, omega.get(0, 0));
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let v = omega
                    .get(i, j)
                    .try_mul(&gamma[k])?
                    .try_add(&omega.get(j, k).try_mul(&gamma[i])?)?
                    .try_add(&omega.get(k, i).try_mul(&gamma[j])?)?;
                out.set(i, j, k, v);
            }
        }
    }
    Ok(out)
}

/// Admissible values of one parameter. Denominators appearing in
/// expressions add further implicit exclusions, handled by the sampler.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DomainKind {
    Free,
    Positive,
    /// Open interval; a missing end is unbounded.
    Interval {
        lo: Option<Rational>,
        hi: Option<Rational>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamDomain {
    pub kind: DomainKind,
    pub excluded: Vec<Rational>,
}

impl ParamDomain {
    pub fn free() -> Self {
        ParamDomain {
            kind: DomainKind::Free,
            excluded: Vec::new(),
        }
    }

    pub fn positive() -> Self {
        ParamDomain {
            kind: DomainKind::Positive,
            excluded: Vec::new(),
        }
    }

    pub fn interval(lo: Option<Rational>, hi: Option<Rational>) -> Result<Self, String> {
        if let (Some(l), Some(h)) = (&lo, &hi) {
            if l >= h {
                return Err(format!("empty interval ({l}, {h})"));
            }
        }
        Ok(ParamDomain {
            kind: DomainKind::Interval { lo, hi },
            excluded: Vec::new(),
        })
    }

    pub fn excluding(mut self, values: Vec<Rational>) -> Self {
        self.excluded = values;
        self
    }

    pub fn contains(&self, q: &Rational) -> bool {
        let inside = match &self.kind {
            DomainKind::Free => true,
            DomainKind::Positive => q > &Rational::zero(),
            DomainKind::Interval { lo, hi } => {
                lo.as_ref().is_none_or(|l| q > l) && hi.as_ref().is_none_or(|h| q < h)
            }
        };
        inside && !self.excluded.contains(q)
    }

    /// A fixed admissible value unlikely to be special.
    pub fn generic_value(&self) -> Rational {
        let base = Rational::new(17.into(), 7.into());
        let mut v = match &self.kind {
            DomainKind::Free | DomainKind::Positive => base,
            DomainKind::Interval { lo: Some(l), hi: Some(h) } => l + (h - l) * Rational::new(3.into(), 7.into()),
            DomainKind::Interval { lo: Some(l), hi: None } => l + base,
            DomainKind::Interval { lo: None, hi: Some(h) } => h - base,
            DomainKind::Interval { lo: None, hi: None } => base,
        };
        let step = Rational::new(1.into(), 13.into());
        while !self.contains(&v) {
            v = match &self.kind {
                DomainKind::Interval { lo: Some(l), hi: Some(h) } => (&v + l) / Rational::from_integer(2.into()) + (h - l) * &step * &step,
                _ => v + &step,
            };
        }
        v
    }
}

impl fmt::Display for ParamDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            DomainKind::Free => write!(f, "free")?,
            DomainKind::Positive => write!(f, "> 0")?,
            DomainKind::Interval { lo, hi } => {
                let lo = lo.as_ref().map_or("-inf".to_string(), |l| l.to_string());
                let hi = hi.as_ref().map_or("inf".to_string(), |h| h.to_string());
                write!(f, "({lo}, {hi})")?;
            }
        }
        if !self.excluded.is_empty() {
            let ex: Vec<String> = self.excluded.iter().map(|q| q.to_string()).collect();
            write!(f, " except {}", ex.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Parameter {
    pub name: String,
    pub domain: ParamDomain,
}

/// A named Lie algebra over `ℚ(params)`.
#[derive(Clone, Debug, PartialEq)]
pub struct LieAlgebra {
    pub name: String,
    pub params: Vec<Parameter>,
    space: Arc<Space>,
    constants: StructureConstants<RationalExpr>,
}

impl LieAlgebra {
    /// Builds from nonzero brackets `(i, j, k, C^k_ij)` with 0-based indices.
    pub fn new(
        name: &str,
        dim: usize,
        params: Vec<Parameter>,
        space: &Arc<Space>,
        brackets: &[(usize, usize, usize, RationalExpr)],
    ) -> Result<Self, LieError> {
        let zero = RationalExpr::zero(space);
        let mut constants = StructureConstants::zeros(dim, &zero);
        for (i, j, k, v) in brackets {
            if *i >= dim || *j >= dim || *k >= dim {
                return Err(LieError::Dimension(format!(
                    "bracket [e{},e{}] → e{} in dimension {dim}",
                    i + 1,
                    j + 1,
                    k + 1
                )));
            }
            if i == j {
                if !v.is_zero() {
                    return Err(LieError::NotAntisymmetric { i: i + 1, j: j + 1 });
                }
                continue;
            }
            let cur = constants.get(*i, *j, *k).try_add(v)?;
            constants.set(*i, *j, *k, cur);
        }
        Ok(LieAlgebra {
            name: name.to_string(),
            params,
            space: space.clone(),
            constants,
        })
    }

    pub fn abelian(name: &str, dim: usize, space: &Arc<Space>) -> Self {
        Self::new(name, dim, Vec::new(), space, &[]).expect("no brackets to validate")
    }

    pub fn dim(&self) -> usize {
        self.constants.dim()
    }

    pub fn space(&self) -> &Arc<Space> {
        &self.space
    }

    pub fn constants(&self) -> &StructureConstants<RationalExpr> {
        &self.constants
    }

    pub fn param(&self, name: &str) -> Option<&Parameter> {
        self.params.iter().find(|p| p.name == name)
    }

    pub fn bracket(&self, x: &[RationalExpr], y: &[RationalExpr]) -> Result<Vec<RationalExpr>, LieError> {
        self.constants.bracket(x, y)
    }

    /// Nonzero brackets `(i<j, k, C^k_ij)`.
    pub fn brackets(&self) -> Vec<(usize, usize, usize, RationalExpr)> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in 0..n {
                    let c = self.constants.get(i, j, k);
                    if !c.is_zero() {
                        out.push((i, j, k, c.clone()));
                    }
                }
            }
        }
        out
    }

    pub fn jacobi_check(&self) -> Result<Option<JacobiViolation<RationalExpr>>, LieError> {
        self.constants.jacobi_check()
    }

    pub fn ce_differential_1(&self, alpha: &[RationalExpr]) -> Result<TwoForm<RationalExpr>, LieError> {
        self.constants.d1(alpha)
    }

    pub fn ce_differential_2(&self, omega: &TwoForm<RationalExpr>) -> Result<ThreeForm<RationalExpr>, LieError> {
        self.constants.d2(omega)
    }

    pub fn is_symplectic(&self, omega: &TwoForm<RationalExpr>) -> Result<SymplecticCheck<RationalExpr>, LieError> {
        self.constants.symplectic_check(omega)
    }

    /// A deterministic admissible point for the algebra's own parameters.
    pub fn generic_point(&self) -> Result<Point, ArithError> {
        let mut a = crate::arith::Assignment::new();
        for (slot, name) in self.space.names().iter().enumerate() {
            let v = match self.param(name) {
                Some(p) => p.domain.generic_value(),
                None => Rational::new((11 + 2 * slot as i64).into(), 5.into()),
            };
            a.set(name, v);
        }
        a.resolve(&self.space)
    }

    /// Center of the algebra: nullspace of `x ↦ ([x, e_j])_j` at `point`,
    /// then each returned vector is checked symbolically.
    pub fn center_at(&self, point: &Point) -> Result<Center, LieError> {
        let n = self.dim();
        let c = self.constants.eval_at(point)?;
        // Row (j, k), column i: C^k_ij.
        let m = Matrix::from_fn(n * n, n, |r, i| c.get(i, r / n, r % n).clone());
        let basis = m.nullspace();
        let mut verified = true;
        for v in &basis {
            let x: Vec<RationalExpr> = v.iter().map(|q| RationalExpr::constant(&self.space, q.clone())).collect();
            for j in 0..n {
                let mut e = vec![RationalExpr::zero(&self.space); n];
                e[j] = RationalExpr::one(&self.space);
                if self.bracket(&x, &e)?.iter().any(|t| !t.is_zero()) {
                    verified = false;
                }
            }
        }
        Ok(Center { basis, verified })
    }

    pub fn center(&self) -> Result<Center, LieError> {
        self.center_at(&self.generic_point()?)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Center {
    pub basis: Vec<Vec<Rational>>,
    /// Every basis vector is central identically in the parameters.
    pub verified: bool,
}

impl Center {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// The unit coefficient vector `e_i` over `proto`'s field.
pub fn basis_vector<T: Field>(dim: usize, i: usize, proto: &T) -> Vec<T> {
    let mut v = vec![proto.zero_like(); dim];
    v[i] = proto.one_like();
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational;

    fn space() -> Arc<Space> {
        Space::standard()
    }

    fn e(s: &str) -> RationalExpr {
        space().parse(s).unwrap()
    }

    fn alg(name: &str, br: &[(usize, usize, usize, &str)]) -> LieAlgebra {
        let br: Vec<_> = br.iter().map(|&(i, j, k, v)| (i - 1, j - 1, k - 1, e(v))).collect();
        LieAlgebra::new(name, 4, Vec::new(), &space(), &br).unwrap()
    }

    fn form(terms: &[(usize, usize, &str)]) -> TwoForm<RationalExpr> {
        let t: Vec<_> = terms.iter().map(|&(i, j, v)| (i - 1, j - 1, e(v))).collect();
        TwoForm::from_terms(4, &e("0"), &t).unwrap()
    }

    fn unit(i: usize) -> Vec<RationalExpr> {
        basis_vector(4, i - 1, &e("0"))
    }

    fn r2r2() -> LieAlgebra {
        alg("r2r2", &[(1, 2, 2, "1"), (3, 4, 4, "1")])
    }

    fn rh3() -> LieAlgebra {
        alg("rh3", &[(1, 2, 3, "1")])
    }

    #[test]
    fn brackets_of_basis_vectors() {
        assert_eq!(r2r2().bracket(&unit(1), &unit(2)).unwrap(), unit(2));
        let x: Vec<_> = ["1", "a", "-2", "b/3"].iter().map(|s| e(s)).collect();
        assert!(r2r2().bracket(&x, &x).unwrap().iter().all(RationalExpr::is_zero));
        let d42 = alg("d42", &[(1, 2, 3, "1"), (4, 3, 3, "1"), (4, 1, 1, "2"), (4, 2, 2, "-1")]);
        let two_e1: Vec<_> = unit(1).iter().map(|v| v.scale(&rational(2, 1))).collect();
        assert_eq!(d42.bracket(&unit(4), &unit(1)).unwrap(), two_e1);
        assert!(r2r2().bracket(&unit(1), &x[..3]).is_err());
    }

    #[test]
    fn jacobi() {
        assert!(LieAlgebra::abelian("R4", 4, &space()).jacobi_check().unwrap().is_none());
        let d4l = alg("d4l", &[(1, 2, 3, "1"), (4, 3, 3, "1"), (4, 1, 1, "lambda"), (4, 2, 2, "1-lambda")]);
        assert!(d4l.jacobi_check().unwrap().is_none());
        let broken = alg("broken", &[(1, 2, 3, "1"), (3, 4, 4, "1")]);
        // [e4,[e1,e2]] = [e4,e3] = −e4 is the only surviving cyclic term
        let v = broken.jacobi_check().unwrap().expect("must fail");
        assert_eq!(v.triple, (0, 1, 3), "{v}");
        assert_eq!((v.component, v.residual), (3, e("-1")));
    }

    #[test]
    fn differentials() {
        let h = rh3();
        let de3 = h.ce_differential_1(&unit(3)).unwrap();
        assert_eq!(de3, form(&[(1, 2, "-1")]));
        assert!(h.ce_differential_2(&form(&[(1, 4, "1"), (2, 3, "1")])).unwrap().is_zero());
        let r4 = LieAlgebra::abelian("R4", 4, &space());
        assert!(r4.ce_differential_2(&form(&[(1, 2, "a"), (1, 3, "b"), (2, 4, "c")])).unwrap().is_zero());
    }

    #[test]
    fn symplectic_forms() {
        let chk = r2r2().is_symplectic(&form(&[(1, 2, "1"), (1, 3, "lambda"), (3, 4, "1")])).unwrap();
        assert!(chk.passed());
        assert!(chk.det.is_one());
        let r4 = LieAlgebra::abelian("R4", 4, &space());
        let deg = r4.is_symplectic(&form(&[(1, 2, "1")])).unwrap();
        assert!(deg.closed() && deg.det.is_zero() && !deg.passed());
        let d41 = alg("d41", &[(1, 2, 3, "1"), (4, 3, 3, "1"), (4, 1, 1, "1")]);
        assert!(d41.is_symplectic(&form(&[(1, 2, "1"), (3, 4, "-1"), (2, 4, "1")])).unwrap().passed());
        let odd = LieAlgebra::abelian("R3", 3, &space());
        let w = TwoForm::from_terms(3, &e("0"), &[(0, 1, e("1"))]).unwrap();
        assert!(matches!(odd.is_symplectic(&w), Err(LieError::OddDimension(3))));
    }

    #[test]
    fn centers() {
        let c = rh3().center().unwrap();
        assert!(c.verified);
        let m = Matrix::from_rows(c.basis.clone()).unwrap();
        assert_eq!(m.rank(), 2);
        // span{e3, e4}: no component along e1, e2
        assert!(c.basis.iter().all(|v| v[0].is_zero() && v[1].is_zero()));
        assert_eq!(LieAlgebra::abelian("R4", 4, &space()).center().unwrap().dim(), 4);
        let r2p = alg("r2p", &[(1, 3, 3, "1"), (1, 4, 4, "1"), (2, 3, 4, "1"), (2, 4, 3, "-1")]);
        assert_eq!(r2p.center().unwrap().dim(), 0);
    }

    #[test]
    fn leibniz_rule_on_decomposables() {
        let h = alg("d42", &[(1, 2, 3, "1"), (4, 3, 3, "1"), (4, 1, 1, "2"), (4, 2, 2, "-1")]);
        for (i, j) in [(1, 2), (1, 3), (3, 4), (2, 4)] {
            let (a, b) = (unit(i), unit(j));
            let lhs = h.ce_differential_2(&wedge11(&a, &b).unwrap()).unwrap();
            let da = wedge21(&h.ce_differential_1(&a).unwrap(), &b).unwrap();
            let db = wedge21(&h.ce_differential_1(&b).unwrap(), &a).unwrap();
            assert!(lhs.try_sub(&da).unwrap().try_add(&db).unwrap().is_zero());
        }
    }

    #[test]
    fn domains() {
        let d = ParamDomain::interval(Some(rational(1, 2)), None).unwrap().excluding(vec![rational(1, 1), rational(2, 1)]);
        assert!(!d.contains(&rational(1, 2)));
        assert!(!d.contains(&rational(1, 1)));
        assert!(d.contains(&rational(3, 4)));
        assert!(d.contains(&d.generic_value()));
        let beta = ParamDomain::interval(Some(rational(-1, 1)), Some(rational(0, 1))).unwrap();
        assert!(beta.contains(&beta.generic_value()));
        assert!(ParamDomain::interval(Some(rational(1, 1)), Some(rational(0, 1))).is_err());
    }
}
