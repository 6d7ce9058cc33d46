//! Levi-Civita connection and curvature of a left-invariant metric,
//! computed in the left-invariant frame `e_1..e_n`.
//!
//! * `∇_{e_i} e_j = Γ^m_ij e_m` with
//!   `Γ^m_ij = ½ g^{km} (C^p_ij g_pk + C^p_ki g_pj + C^p_kj g_ip)`
//! * `R(e_i, e_j) e_k = R^s_ijk e_s` with
//!   `R^s_ijk = Γ^s_ip Γ^p_jk − Γ^s_jp Γ^p_ik − C^p_ij Γ^s_pk`
//! * `Ric_jk = R^i_ijk`, `RIC = Ric·g⁻¹`, `S = trace RIC`

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{ArithError, Field, Matrix, Point, Rational, RationalExpr};
use crate::lie::StructureConstants;
use crate::parakahler::{Endomorphism, Metric};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurvatureError {
    #[error("metric is singular")]
    Singular,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error(transparent)]
    Arith(ArithError),
}

impl From<ArithError> for CurvatureError {
    fn from(e: ArithError) -> Self {
        match e {
            ArithError::Singular => CurvatureError::Singular,
            other => CurvatureError::Arith(other),
        }
    }
}

/// An identity the pipeline checks on its own output.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Identity {
    /// `Γ^m_ij − Γ^m_ji = C^m_ij`
    Torsion,
    /// `g(∇_i e_j, e_k) + g(e_j, ∇_i e_k) = 0`
    ConnectionMetric,
    /// `R^s_ijk = −R^s_jik`
    Antisymmetry,
    /// `R^s_ijk + R^s_jki + R^s_kij = 0`
    Bianchi,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Violation<T> {
    pub identity: Identity,
    pub component: Vec<usize>,
    pub residual: T,
}

impl<T: fmt::Display> fmt::Display for Violation<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx: Vec<String> = self.component.iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "{:?} fails at ({}): {}", self.identity, idx.join(","), self.residual)
    }
}

/// `Γ^m_ij`.
#[derive(Clone, Debug, PartialEq)]
pub struct Christoffel<T> {
    dim: usize,
    c: Vec<T>,
}

impl<T: Field> Christoffel<T> {
    pub fn get(&self, i: usize, j: usize, m: usize) -> &T {
        &self.c[(i * self.dim + j) * self.dim + m]
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// All `n³` components in storage order.
    pub fn components(&self) -> &[T] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Field::vanishes)
    }
}

/// `R^s_ijk`.
#[derive(Clone, Debug, PartialEq)]
pub struct CurvatureTensor<T> {
    dim: usize,
    r: Vec<T>,
}

impl<T: Field> CurvatureTensor<T> {
    fn idx(&self, s: usize, i: usize, j: usize, k: usize) -> usize {
        ((i * self.dim + j) * self.dim + k) * self.dim + s
    }

    pub fn get(&self, s: usize, i: usize, j: usize, k: usize) -> &T {
        &self.r[self.idx(s, i, j, k)]
    }

    /// All `n⁴` components in storage order.
    pub fn components(&self) -> &[T] {
        &self.r
    }

    /// Coefficients of `R(e_i, e_j) e_k`.
    pub fn apply(&self, i: usize, j: usize, k: usize) -> &[T] {
        let start = self.idx(0, i, j, k);
        &self.r[start..start + self.dim]
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.r.iter().all(Field::vanishes)
    }

    /// First nonzero component as `(s, i, j, k)`.
    pub fn first_nonzero(&self) -> Option<([usize; 4], &T)> {
        let n = self.dim;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for s in 0..n {
                        let v = self.get(s, i, j, k);
                        if !v.vanishes() {
                            return Some(([s, i, j, k], v));
                        }
                    }
                }
            }
        }
        None
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RicciData<T> {
    /// `Ric_jk`.
    pub ricci: Matrix<T>,
    /// `RIC = Ric·g⁻¹`.
    pub operator: Matrix<T>,
    pub scalar: T,
}

/// Curvature classes, most specific first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LabelKind {
    Flat,
    RicciFlat,
    Einstein,
    HermitianRicci,
    Generic,
}

impl LabelKind {
    pub fn id(self) -> &'static str {
        match self {
            LabelKind::Flat => "flat",
            LabelKind::RicciFlat => "ricci_flat",
            LabelKind::Einstein => "einstein",
            LabelKind::HermitianRicci => "hermitian_ricci",
            LabelKind::Generic => "generic",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [
            LabelKind::Flat,
            LabelKind::RicciFlat,
            LabelKind::Einstein,
            LabelKind::HermitianRicci,
            LabelKind::Generic,
        ]
        .into_iter()
        .find(|k| k.id() == s)
    }
}

impl fmt::Display for LabelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Label<T> {
    Flat,
    RicciFlat,
    /// `Ric = factor · g`.
    Einstein(T),
    HermitianRicci,
    Generic,
}

impl<T> Label<T> {
    pub fn kind(&self) -> LabelKind {
        match self {
            Label::Flat => LabelKind::Flat,
            Label::RicciFlat => LabelKind::RicciFlat,
            Label::Einstein(_) => LabelKind::Einstein,
            Label::HermitianRicci => LabelKind::HermitianRicci,
            Label::Generic => LabelKind::Generic,
        }
    }

    pub fn einstein_factor(&self) -> Option<&T> {
        match self {
            Label::Einstein(f) => Some(f),
            _ => None,
        }
    }
}

impl<T: fmt::Display> fmt::Display for Label<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Einstein(k) => write!(f, "einstein({k})"),
            other => f.write_str(other.kind().id()),
        }
    }
}

/// Everything the pipeline derives from `(C, g)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CurvatureBundle<T> {
    pub g_inv: Matrix<T>,
    pub christoffel: Christoffel<T>,
    pub curvature: CurvatureTensor<T>,
    pub ricci: RicciData<T>,
}

fn check_dim<T: Field>(c: &StructureConstants<T>, g: &Matrix<T>) -> Result<(), CurvatureError> {
    if g.rows() != c.dim() || g.cols() != c.dim() {
        return Err(CurvatureError::Dimension(format!(
            "{}x{} metric on dimension {}",
            g.rows(),
            g.cols(),
            c.dim()
        )));
    }
    Ok(())
}

/// `g(∇_i e_j, e_k) = ½ (C^p_ij g_pk + C^p_ki g_pj + C^p_kj g_ip)`.
fn lowered<T: Field>(c: &StructureConstants<T>, g: &Matrix<T>) -> Result<Vec<T>, ArithError> {
    let n = c.dim();
    let half = crate::arith::rational(1, 2);
    let mut out = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut acc = g.get(0, 0).zero_like();
                for p in 0..n {
                    for (cc, gg) in [
                        (c.get(i, j, p), g.get(p, k)),
                        (c.get(k, i, p), g.get(p, j)),
                        (c.get(k, j, p), g.get(i, p)),
                    ] {
                        if !cc.vanishes() && !gg.vanishes() {
                            acc = acc.try_add(&cc.try_mul(gg)?)?;
                        }
                    }
                }
                out.push(acc.scale(&half));
            }
        }
    }
    Ok(out)
}

/// Christoffel symbols and `g⁻¹`.
pub fn christoffel<T: Field>(
    c: &StructureConstants<T>,
    g: &Matrix<T>,
) -> Result<(Christoffel<T>, Matrix<T>), CurvatureError> {
    check_dim(c, g)?;
    let n = c.dim();
    let g_inv = g.inverse()?;
    let low = lowered(c, g)?;
    let mut out = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for j in 0..n {
            for m in 0..n {
                let pairs = (0..n).map(|k| (&low[(i * n + j) * n + k], g_inv.get(k, m)));
                out.push(crate::arith::dot(pairs, g.get(0, 0))?);
            }
        }
    }
    Ok((Christoffel { dim: n, c: out }, g_inv))
}

pub fn curvature<T: Field>(
    c: &StructureConstants<T>,
    gamma: &Christoffel<T>,
) -> Result<CurvatureTensor<T>, CurvatureError> {
    let n = c.dim();
    let zero = gamma.c.first().map(T::zero_like).ok_or_else(|| CurvatureError::Dimension("empty".into()))?;
    let mut t = CurvatureTensor {
        dim: n,
        r: vec![zero.clone(); n * n * n * n],
    };
    for i in 0..n {
        for j in i + 1..n {
            for k in 0..n {
                for s in 0..n {
                    let mut acc = zero.clone();
                    for p in 0..n {
                        let terms = [
                            (gamma.get(i, p, s), gamma.get(j, k, p), false),
                            (gamma.get(j, p, s), gamma.get(i, k, p), true),
                            (c.get(i, j, p), gamma.get(p, k, s), true),
                        ];
                        for (a, b, minus) in terms {
                            if a.vanishes() || b.vanishes() {
                                continue;
                            }
                            let prod = a.try_mul(b)?;
                            acc = if minus { acc.try_sub(&prod)? } else { acc.try_add(&prod)? };
                        }
                    }
                    let (a, b) = (t.idx(s, i, j, k), t.idx(s, j, i, k));
                    t.r[b] = acc.neg();
                    t.r[a] = acc;
                }
            }
        }
    }
    Ok(t)
}

pub fn ricci<T: Field>(r: &CurvatureTensor<T>, g_inv: &Matrix<T>) -> Result<RicciData<T>, CurvatureError> {
    let n = r.dim();
    let proto = g_inv.get(0, 0);
    let ric = Matrix::try_from_fn(n, n, |j, k| -> Result<T, ArithError> {
        let mut acc = proto.zero_like();
        for i in 0..n {
            acc = acc.try_add(r.get(i, i, j, k))?;
        }
        Ok(acc)
    })?;
    let operator = ric.try_mul(g_inv)?;
    let scalar = operator.trace()?;
    Ok(RicciData {
        ricci: ric,
        operator,
        scalar,
    })
}

pub fn scalar_curvature<T: Field>(bundle: &CurvatureBundle<T>) -> &T {
    &bundle.ricci.scalar
}

/// Full pipeline from structure constants and metric.
pub fn bundle<T: Field>(c: &StructureConstants<T>, g: &Matrix<T>) -> Result<CurvatureBundle<T>, CurvatureError> {
    let (christoffel, g_inv) = christoffel(c, g)?;
    let curvature = curvature(c, &christoffel)?;
    let ricci = ricci(&curvature, &g_inv)?;
    Ok(CurvatureBundle {
        g_inv,
        christoffel,
        curvature,
        ricci,
    })
}

/// Einstein factor `S/n` if `Ric = (S/n)·g` identically.
pub fn einstein_factor<T: Field>(ricci: &RicciData<T>, g: &Matrix<T>) -> Result<Option<T>, CurvatureError> {
    let n = g.rows();
    let factor = ricci.scalar.scale(&crate::arith::rational(1, n as i64));
    let diff = ricci.ricci.try_sub(&g.try_scale_by(&factor)?)?;
    Ok(diff.is_zero().then_some(factor))
}

/// `Ric(JX, JY) = Ric(X, Y)`, i.e. `Jᵀ·Ric·J = Ric`.
pub fn is_hermitian_ricci<T: Field>(ric: &Matrix<T>, j: &Endomorphism<T>) -> Result<bool, CurvatureError> {
    let jm = j.matrix();
    Ok(jm.transpose().try_mul(ric)?.try_mul(jm)?.try_sub(ric)?.is_zero())
}

/// Most specific label.
pub fn classify<T: Field>(
    bundle: &CurvatureBundle<T>,
    g: &Metric<T>,
    j: &Endomorphism<T>,
) -> Result<Label<T>, CurvatureError> {
    if bundle.curvature.is_zero() {
        return Ok(Label::Flat);
    }
    if bundle.ricci.ricci.is_zero() {
        return Ok(Label::RicciFlat);
    }
    if let Some(k) = einstein_factor(&bundle.ricci, g.matrix())? {
        return Ok(Label::Einstein(k));
    }
    if is_hermitian_ricci(&bundle.ricci.ricci, j)? {
        return Ok(Label::HermitianRicci);
    }
    Ok(Label::Generic)
}

/// Nonzero entries `(i, j, computed − expected)`.
pub fn compare_ric_operator<T: Field>(
    computed: &Matrix<T>,
    expected: &Matrix<T>,
) -> Result<Vec<(usize, usize, T)>, CurvatureError> {
    if computed.rows() != expected.rows() || computed.cols() != expected.cols() {
        return Err(CurvatureError::Dimension("RIC shapes differ".into()));
    }
    let diff = computed.try_sub(expected)?;
    Ok(diff
        .iter()
        .filter(|(_, _, v)| !v.vanishes())
        .map(|(i, j, v)| (i, j, v.clone()))
        .collect())
}

pub fn check_torsion<T: Field>(
    c: &StructureConstants<T>,
    gamma: &Christoffel<T>,
) -> Result<Option<Violation<T>>, CurvatureError> {
    let n = c.dim();
    for i in 0..n {
        for j in i + 1..n {
            for m in 0..n {
                let r = gamma.get(i, j, m).try_sub(gamma.get(j, i, m))?.try_sub(c.get(i, j, m))?;
                if !r.vanishes() {
                    return Ok(Some(Violation {
                        identity: Identity::Torsion,
                        component: vec![i, j, m],
                        residual: r,
                    }));
                }
            }
        }
    }
    Ok(None)
}

/// Metric compatibility of `∇`, evaluated through the Christoffel symbols
/// rather than the lowered formula they came from.
pub fn check_connection_metric<T: Field>(
    gamma: &Christoffel<T>,
    g: &Matrix<T>,
) -> Result<Option<Violation<T>>, CurvatureError> {
    let n = gamma.dim();
    let proto = g.get(0, 0);
    for i in 0..n {
        for j in 0..n {
            for k in j..n {
                let a = crate::arith::dot((0..n).map(|m| (gamma.get(i, j, m), g.get(m, k))), proto)?;
                let b = crate::arith::dot((0..n).map(|m| (gamma.get(i, k, m), g.get(j, m))), proto)?;
                let r = a.try_add(&b)?;
                if !r.vanishes() {
                    return Ok(Some(Violation {
                        identity: Identity::ConnectionMetric,
                        component: vec![i, j, k],
                        residual: r,
                    }));
                }
            }
        }
    }
    Ok(None)
}

pub fn check_curvature_symmetries<T: Field>(r: &CurvatureTensor<T>) -> Result<Option<Violation<T>>, CurvatureError> {
    let n = r.dim();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for s in 0..n {
                    let anti = r.get(s, i, j, k).try_add(r.get(s, j, i, k))?;
                    if !anti.vanishes() {
                        return Ok(Some(Violation {
                            identity: Identity::Antisymmetry,
                            component: vec![s, i, j, k],
                            residual: anti,
                        }));
                    }
                    let b = r
                        .get(s, i, j, k)
                        .try_add(r.get(s, j, k, i))?
                        .try_add(r.get(s, k, i, j))?;
                    if !b.vanishes() {
                        return Ok(Some(Violation {
                            identity: Identity::Bianchi,
                            component: vec![s, i, j, k],
                            residual: b,
                        }));
                    }
                }
            }
        }
    }
    Ok(None)
}

/// Every self-check of the pipeline, first violation wins.
pub fn self_check<T: Field>(
    c: &StructureConstants<T>,
    g: &Matrix<T>,
    bundle: &CurvatureBundle<T>,
) -> Result<Option<Violation<T>>, CurvatureError> {
    if let Some(v) = check_torsion(c, &bundle.christoffel)? {
        return Ok(Some(v));
    }
    if let Some(v) = check_connection_metric(&bundle.christoffel, g)? {
        return Ok(Some(v));
    }
    check_curvature_symmetries(&bundle.curvature)
}

impl CurvatureBundle<RationalExpr> {
    /// Evaluates every component at `point`.
    pub fn eval_at(&self, point: &Point) -> Result<CurvatureBundle<Rational>, ArithError> {
        let ev = |v: &[RationalExpr]| v.iter().map(|e| e.eval_at(point)).collect::<Result<Vec<_>, _>>();
        Ok(CurvatureBundle {
            g_inv: self.g_inv.eval_at(point)?,
            christoffel: Christoffel {
                dim: self.christoffel.dim,
                c: ev(&self.christoffel.c)?,
            },
            curvature: CurvatureTensor {
                dim: self.curvature.dim,
                r: ev(&self.curvature.r)?,
            },
            ricci: RicciData {
                ricci: self.ricci.ricci.eval_at(point)?,
                operator: self.ricci.operator.eval_at(point)?,
                scalar: self.ricci.scalar.eval_at(point)?,
            },
        })
    }
}
