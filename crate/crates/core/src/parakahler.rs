//! Para-complex and para-Kähler conditions for a pair `(ω, J)`.
//!
//! `J` is stored with `J^i_j` at entry `(i, j)`, so column `j` is `J e_j`.
//! The metric is `g = ω·J`, i.e. `g_ij = ω(e_i, J e_j)`. Axiom checks never
//! fail on mathematics: a violated identity comes back as a [`Finding`].

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{ArithError, Field, Matrix, Point, Rational, RationalExpr};
use crate::lie::{LieAlgebra, Parameter, StructureConstants, TwoForm};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParaKahlerError {
    #[error("g = ω·J is not symmetric at ({i},{j}); ω and J are incompatible")]
    Asymmetric { i: usize, j: usize, residual: String },
    #[error("eigenspaces of J have dimensions ({plus}, {minus}), expected ({half}, {half})")]
    RankMismatch { plus: usize, minus: usize, half: usize },
    #[error("metric is singular at {0}")]
    SingularAt(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// Which identity a [`Finding`] refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    /// `J² = Id`
    Involution,
    /// `trace J = 0`
    Trace,
    /// `Jᵀω + ωJ = 0`
    OmegaCompat,
    /// `ω(JX, JY) + ω(X, Y) = 0`
    OmegaInvariance,
    /// `N_J = 0`
    Nijenhuis,
    /// `g = ω·J` symmetric
    MetricSymmetry,
    /// `Jᵀg + gJ = 0`
    MetricCompat,
    /// `ω(X, Y) = g(X, JY)` recovered from `g`
    RoundTrip,
}

impl Axiom {
    pub fn id(self) -> &'static str {
        match self {
            Axiom::Involution => "involution",
            Axiom::Trace => "trace",
            Axiom::OmegaCompat => "omega_compat",
            Axiom::OmegaInvariance => "omega_invariance",
            Axiom::Nijenhuis => "nijenhuis",
            Axiom::MetricSymmetry => "metric_symmetry",
            Axiom::MetricCompat => "metric_compat",
            Axiom::RoundTrip => "round_trip",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// A violated identity: the first nonzero component (0-based) and its value.
#[derive(Debug, Clone, PartialEq)]
pub struct Finding<T> {
    pub axiom: Axiom,
    pub component: Vec<usize>,
    pub residual: T,
}

impl<T: fmt::Display> fmt::Display for Finding<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx: Vec<String> = self.component.iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "{} fails at ({}): residual {}", self.axiom, idx.join(","), self.residual)
    }
}

fn first_in<T: Field>(axiom: Axiom, m: &Matrix<T>) -> Option<Finding<T>> {
    m.first_nonzero().map(|(i, j, v)| Finding {
        axiom,
        component: vec![i, j],
        residual: v.clone(),
    })
}

/// Endomorphism of the Lie algebra, `J^i_j` at entry `(i, j)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Endomorphism<T> {
    m: Matrix<T>,
}

impl<T: Field> Endomorphism<T> {
    pub fn new(m: Matrix<T>) -> Result<Self, ParaKahlerError> {
        if !m.is_square() {
            return Err(ParaKahlerError::Dimension(format!("{}x{} endomorphism", m.rows(), m.cols())));
        }
        Ok(Endomorphism { m })
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.m
    }

    pub fn dim(&self) -> usize {
        self.m.rows()
    }

    pub fn neg(&self) -> Self {
        Endomorphism { m: self.m.neg() }
    }

    /// `J x` for a coefficient vector.
    pub fn apply(&self, x: &[T]) -> Result<Vec<T>, ArithError> {
        self.m.apply(x)
    }

    /// `J e_j`.
    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.dim()).map(|i| self.m.get(i, j).clone()).collect()
    }
}

impl Endomorphism<RationalExpr> {
    pub fn eval_at(&self, point: &Point) -> Result<Endomorphism<Rational>, ArithError> {
        Ok(Endomorphism {
            m: self.m.eval_at(point)?,
        })
    }
}

/// Symmetric bilinear form `g_ij = g(e_i, e_j)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Metric<T> {
    m: Matrix<T>,
}

impl<T: Field> Metric<T> {
    pub fn new(m: Matrix<T>) -> Result<Self, ParaKahlerError> {
        if !m.is_symmetric()? {
            let (i, j, r) = (0..m.rows())
                .flat_map(|i| (0..m.cols()).map(move |j| (i, j)))
                .find_map(|(i, j)| {
                    let r = m.get(i, j).try_sub(m.get(j, i)).ok()?;
                    (!r.vanishes()).then_some((i, j, r))
                })
                .expect("asymmetric matrix has a witness");
            return Err(ParaKahlerError::Asymmetric {
                i: i + 1,
                j: j + 1,
                residual: r.to_string(),
            });
        }
        Ok(Metric { m })
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.m
    }

    pub fn dim(&self) -> usize {
        self.m.rows()
    }
}

impl Metric<RationalExpr> {
    pub fn eval_at(&self, point: &Point) -> Result<Metric<Rational>, ArithError> {
        Ok(Metric {
            m: self.m.eval_at(point)?,
        })
    }
}

/// `N^k_ij`, antisymmetric in `(i, j)`.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorValuedTwoForm<T> {
    dim: usize,
    c: Vec<T>,
}

impl<T: Field> VectorValuedTwoForm<T> {
    pub fn get(&self, i: usize, j: usize, k: usize) -> &T {
        &self.c[(i * self.dim + j) * self.dim + k]
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Field::vanishes)
    }

    pub fn first_nonzero(&self) -> Option<Finding<T>> {
        let n = self.dim;
        for i in 0..n {
            for j in i + 1..n {
                for k in 0..n {
                    let v = self.get(i, j, k);
                    if !v.vanishes() {
                        return Some(Finding {
                            axiom: Axiom::Nijenhuis,
                            component: vec![i, j, k],
                            residual: v.clone(),
                        });
                    }
                }
            }
        }
        None
    }
}

fn check_dims<T: Clone>(a: &Matrix<T>, b: &Matrix<T>) -> Result<(), ParaKahlerError> {
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return Err(ParaKahlerError::Dimension(format!(
            "{}x{} vs {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    Ok(())
}

/// `J² = Id` and `trace J = 0`.
pub fn check_involution<T: Field>(j: &Endomorphism<T>) -> Result<Option<Finding<T>>, ParaKahlerError> {
    let m = &j.m;
    let sq = m.try_mul(m)?;
    let id = Matrix::identity(m.rows(), m.get(0, 0));
    if let Some(f) = first_in(Axiom::Involution, &sq.try_sub(&id)?) {
        return Ok(Some(f));
    }
    let tr = m.trace()?;
    Ok((!tr.vanishes()).then(|| Finding {
        axiom: Axiom::Trace,
        component: Vec::new(),
        residual: tr,
    }))
}

/// `ω(JX, Y) + ω(X, JY) = 0`, cross-checked against `ω(JX, JY) + ω(X, Y) = 0`.
pub fn check_omega_compat<T: Field>(
    omega: &TwoForm<T>,
    j: &Endomorphism<T>,
) -> Result<Option<Finding<T>>, ParaKahlerError> {
    let (w, jm) = (omega.matrix(), &j.m);
    check_dims(w, jm)?;
    let jt = jm.transpose();
    let lhs = jt.try_mul(w)?.try_add(&w.try_mul(jm)?)?;
    if let Some(f) = first_in(Axiom::OmegaCompat, &lhs) {
        return Ok(Some(f));
    }
    let inv = jt.try_mul(w)?.try_mul(jm)?.try_add(w)?;
    Ok(first_in(Axiom::OmegaInvariance, &inv))
}

/// `N(e_i, e_j) = [e_i,e_j] + [Je_i,Je_j] − J[Je_i,e_j] − J[e_i,Je_j]`.
pub fn nijenhuis<T: Field>(
    c: &StructureConstants<T>,
    j: &Endomorphism<T>,
) -> Result<VectorValuedTwoForm<T>, ParaKahlerError> {
    let n = c.dim();
    if j.dim() != n {
        return Err(ParaKahlerError::Dimension(format!("J of size {} on dimension {n}", j.dim())));
    }
    let proto = j.m.get(0, 0);
    let cols: Vec<Vec<T>> = (0..n).map(|i| j.column(i)).collect();
    let unit = |i: usize| crate::lie::basis_vector(n, i, proto);
    let lie = |x: &[T], y: &[T]| c.bracket(x, y).map_err(lie_err);
    let mut out = vec![proto.zero_like(); n * n * n];
    for i in 0..n {
        for k in i + 1..n {
            let (ei, ek) = (unit(i), unit(k));
            let a = c.bracket_basis(i, k).to_vec();
            let b = lie(&cols[i], &cols[k])?;
            let x = j.apply(&lie(&cols[i], &ek)?)?;
            let y = j.apply(&lie(&ei, &cols[k])?)?;
            for m in 0..n {
                let v = a[m].try_add(&b[m])?.try_sub(&x[m])?.try_sub(&y[m])?;
                out[(k * n + i) * n + m] = v.neg();
                out[(i * n + k) * n + m] = v;
            }
        }
    }
    Ok(VectorValuedTwoForm { dim: n, c: out })
}

fn lie_err(e: crate::lie::LieError) -> ParaKahlerError {
    match e {
        crate::lie::LieError::Arith(a) => ParaKahlerError::Arith(a),
        other => ParaKahlerError::Dimension(other.to_string()),
    }
}

/// `g = ω·J`; asymmetry means `ω` and `J` are incompatible.
pub fn metric_from<T: Field>(omega: &TwoForm<T>, j: &Endomorphism<T>) -> Result<Metric<T>, ParaKahlerError> {
    check_dims(omega.matrix(), &j.m)?;
    Metric::new(omega.matrix().try_mul(&j.m)?)
}

/// `ω′(X, Y) = g(X, JY)`, i.e. `ω′ = g·J`.
pub fn omega_from<T: Field>(g: &Metric<T>, j: &Endomorphism<T>) -> Result<Matrix<T>, ParaKahlerError> {
    check_dims(&g.m, &j.m)?;
    Ok(g.m.try_mul(&j.m)?)
}

/// `g(JX, Y) + g(X, JY) = 0`.
pub fn check_metric_compat<T: Field>(g: &Metric<T>, j: &Endomorphism<T>) -> Result<Option<Finding<T>>, ParaKahlerError> {
    check_dims(&g.m, &j.m)?;
    let lhs = j.m.transpose().try_mul(&g.m)?.try_add(&g.m.try_mul(&j.m)?)?;
    Ok(first_in(Axiom::MetricCompat, &lhs))
}

/// Signature `(p, q)` of `g` at an admissible point.
pub fn signature_at(g: &Metric<RationalExpr>, point: &Point) -> Result<(usize, usize), ParaKahlerError> {
    let m = g.m.eval_at(point)?;
    m.signature().map_err(|e| match e {
        ArithError::Singular => ParaKahlerError::SingularAt(point.to_assignment().to_string()),
        other => ParaKahlerError::Arith(other),
    })
}

/// Eigenspaces of `J` at a sample and whether each is a subalgebra.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenSplit {
    pub plus_basis: Vec<Vec<Rational>>,
    pub minus_basis: Vec<Vec<Rational>>,
    pub plus_closed: bool,
    pub minus_closed: bool,
    /// Closure was established identically in the parameters rather than
    /// at the sample only.
    pub symbolic: bool,
}

pub fn eigen_split(
    algebra: &LieAlgebra,
    j: &Endomorphism<RationalExpr>,
    point: &Point,
) -> Result<EigenSplit, ParaKahlerError> {
    let n = j.dim();
    let jq = j.m.eval_at(point)?;
    let one = Rational::from_integer(1.into());
    let id = Matrix::identity(n, &one);
    let plus = jq.try_sub(&id)?.nullspace();
    let minus = jq.try_add(&id)?.nullspace();
    if plus.len() * 2 != n || minus.len() * 2 != n {
        return Err(ParaKahlerError::RankMismatch {
            plus: plus.len(),
            minus: minus.len(),
            half: n / 2,
        });
    }
    let symbolic = j.m.iter().all(|(_, _, e)| e.is_polynomial() && e.num().is_constant());
    let (plus_closed, minus_closed) = if symbolic {
        let space = algebra.space();
        let lift = |v: &Vec<Rational>| -> Vec<RationalExpr> {
            v.iter().map(|q| RationalExpr::constant(space, q.clone())).collect()
        };
        let c = algebra.constants();
        (
            closed(c, j, &plus.iter().map(lift).collect::<Vec<_>>(), false)?,
            closed(c, j, &minus.iter().map(lift).collect::<Vec<_>>(), true)?,
        )
    } else {
        let c = algebra.constants().eval_at(point)?;
        let jq = Endomorphism { m: jq };
        (closed(&c, &jq, &plus, false)?, closed(&c, &jq, &minus, true)?)
    };
    Ok(EigenSplit {
        plus_basis: plus,
        minus_basis: minus,
        plus_closed,
        minus_closed,
        symbolic,
    })
}

/// Whether `J[v, w] = ±[v, w]` for all pairs of `basis`.
fn closed<T: Field>(
    c: &StructureConstants<T>,
    j: &Endomorphism<T>,
    basis: &[Vec<T>],
    minus: bool,
) -> Result<bool, ParaKahlerError> {
    for (a, v) in basis.iter().enumerate() {
        for w in &basis[a + 1..] {
            let br = c.bracket(v, w).map_err(lie_err)?;
            let jb = j.apply(&br)?;
            for (x, y) in jb.iter().zip(&br) {
                let r = if minus { x.try_add(y)? } else { x.try_sub(y)? };
                if !r.vanishes() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Result of the full axiom sweep for one `(ω, J)`.
#[derive(Clone, Debug, PartialEq)]
pub struct AxiomReport<T> {
    pub involution: Option<Finding<T>>,
    pub omega_compat: Option<Finding<T>>,
    pub nijenhuis: Option<Finding<T>>,
}

impl<T: Field> AxiomReport<T> {
    pub fn passed(&self) -> bool {
        self.involution.is_none() && self.omega_compat.is_none() && self.nijenhuis.is_none()
    }

    pub fn findings(&self) -> impl Iterator<Item = &Finding<T>> {
        [&self.involution, &self.omega_compat, &self.nijenhuis]
            .into_iter()
            .flatten()
    }
}

pub fn check_axioms<T: Field>(
    c: &StructureConstants<T>,
    omega: &TwoForm<T>,
    j: &Endomorphism<T>,
) -> Result<AxiomReport<T>, ParaKahlerError> {
    Ok(AxiomReport {
        involution: check_involution(j)?,
        omega_compat: check_omega_compat(omega, j)?,
        nijenhuis: nijenhuis(c, j)?.first_nonzero(),
    })
}

/// A candidate para-Kähler structure `(ω, J)` on a Lie algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct ParaKahlerStructure {
    pub id: String,
    pub algebra: Arc<LieAlgebra>,
    pub omega: TwoForm<RationalExpr>,
    pub j: Endomorphism<RationalExpr>,
    pub params: Vec<Parameter>,
}

impl ParaKahlerStructure {
    pub fn check_axioms(&self) -> Result<AxiomReport<RationalExpr>, ParaKahlerError> {
        check_axioms(self.algebra.constants(), &self.omega, &self.j)
    }

    pub fn metric(&self) -> Result<Metric<RationalExpr>, ParaKahlerError> {
        metric_from(&self.omega, &self.j)
    }

    /// All parameter constraints in force: the algebra's, then the structure's.
    pub fn all_params(&self) -> Vec<Parameter> {
        let mut out = self.algebra.params.clone();
        for p in &self.params {
            if !out.iter().any(|q| q.name == p.name) {
                out.push(p.clone());
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rational, Assignment, Space};

    fn e(s: &str) -> RationalExpr {
        Space::standard().parse(s).unwrap()
    }

    fn mat(rows: &[&[&str]]) -> Matrix<RationalExpr> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|s| e(s)).collect()).collect()).unwrap()
    }

    fn endo(rows: &[&[&str]]) -> Endomorphism<RationalExpr> {
        Endomorphism::new(mat(rows)).unwrap()
    }

    fn diag(d: [&str; 4]) -> Endomorphism<RationalExpr> {
        let z = "0";
        endo(&[&[d[0], z, z, z], &[z, d[1], z, z], &[z, z, d[2], z], &[z, z, z, d[3]]])
    }

    fn form(terms: &[(usize, usize, &str)]) -> TwoForm<RationalExpr> {
        let t: Vec<_> = terms.iter().map(|&(i, j, v)| (i - 1, j - 1, e(v))).collect();
        TwoForm::from_terms(4, &e("0"), &t).unwrap()
    }

    fn alg(br: &[(usize, usize, usize, &str)]) -> LieAlgebra {
        let br: Vec<_> = br.iter().map(|&(i, j, k, v)| (i - 1, j - 1, k - 1, e(v))).collect();
        LieAlgebra::new("test", 4, Vec::new(), &Space::standard(), &br).unwrap()
    }

    fn std_omega() -> TwoForm<RationalExpr> {
        form(&[(1, 2, "1"), (3, 4, "1")])
    }

    fn rr3m1() -> LieAlgebra {
        alg(&[(1, 2, 2, "1"), (1, 3, 3, "-1")])
    }

    fn rr3m1_j3() -> Endomorphism<RationalExpr> {
        endo(&[&["-a", "0", "0", "-(a^2-1)/b"], &["0", "-1", "0", "0"], &["0", "0", "1", "0"], &["b", "0", "0", "a"]])
    }

    fn point(pairs: &[(&str, i64)]) -> Point {
        let mut a = Assignment::new();
        for (n, v) in pairs {
            a.set(n, rational(*v, 1));
        }
        for n in ["a", "b", "c", "d", "lambda", "alpha", "beta"] {
            if a.get(n).is_none() {
                a.set(n, rational(3, 1));
            }
        }
        a.resolve(&Space::standard()).unwrap()
    }

    #[test]
    fn involution() {
        assert!(check_involution(&diag(["1", "1", "-1", "-1"])).unwrap().is_none());
        let f = check_involution(&diag(["1", "1", "1", "1"])).unwrap().unwrap();
        assert_eq!((f.axiom, f.residual), (Axiom::Trace, e("4")));
        let j22 = endo(&[
            &["a+1", "b", "c-1", "b"],
            &["-a*(a+2)/b", "-a-1", "-(c-1)*a/b", "-a"],
            &["a", "b", "c", "b"],
            &["-(c-1)*a/b", "1-c", "-(c^2-1)/b", "-c"],
        ]);
        assert!(check_involution(&j22).unwrap().is_none());
    }

    #[test]
    fn omega_compatibility() {
        // With ω = e¹∧e² + e³∧e⁴, J must swap the sign across each pair.
        assert!(check_omega_compat(&std_omega(), &diag(["-1", "1", "1", "-1"])).unwrap().is_none());
        assert!(check_omega_compat(&std_omega(), &diag(["1", "-1", "1", "-1"])).unwrap().is_none());
        let f = check_omega_compat(&std_omega(), &diag(["1", "1", "-1", "-1"])).unwrap().unwrap();
        assert_eq!((f.axiom, f.component.clone(), f.residual), (Axiom::OmegaCompat, vec![0, 1], e("2")));
        assert!(check_omega_compat(&form(&[(1, 4, "1"), (2, 3, "1")]), &rr3m1_j3()).unwrap().is_none());
    }

    #[test]
    fn nijenhuis_tensor() {
        let r4 = LieAlgebra::abelian("R4", 4, &Space::standard());
        let any = endo(&[&["a", "b", "c", "d"], &["1", "2", "3", "4"], &["b", "a", "0", "1"], &["0", "0", "c", "d"]]);
        assert!(nijenhuis(r4.constants(), &any).unwrap().is_zero());
        let r2r2 = alg(&[(1, 2, 2, "1"), (3, 4, 4, "1")]);
        let j11 = endo(&[&["-1", "0", "0", "0"], &["a", "1", "0", "0"], &["0", "0", "1", "0"], &["0", "0", "b", "-1"]]);
        assert!(nijenhuis(r2r2.constants(), &j11).unwrap().is_zero());
        // b is free, so b ↦ b+1 stays inside the integrable family
        let shifted = endo(&[&["-1", "0", "0", "0"], &["a", "1", "0", "0"], &["0", "0", "1", "0"], &["0", "0", "b+1", "-1"]]);
        assert!(nijenhuis(r2r2.constants(), &shifted).unwrap().is_zero());
        // J²=Id survives a unit bump at (2,4), integrability does not
        let bad = endo(&[&["-1", "0", "0", "0"], &["a", "1", "0", "1"], &["0", "0", "1", "0"], &["0", "0", "b", "-1"]]);
        let at = point(&[("a", 0), ("b", 0)]);
        assert!(check_involution(&bad.eval_at(&at).unwrap()).unwrap().is_none());
        let cq = r2r2.constants().eval_at(&at).unwrap();
        let f = nijenhuis(&cq, &bad.eval_at(&at).unwrap()).unwrap().first_nonzero().unwrap();
        assert_eq!((f.component, f.residual), (vec![0, 3, 1], rational(-2, 1)));
        assert!(nijenhuis(r2r2.constants(), &bad).unwrap().first_nonzero().is_some());
    }

    #[test]
    fn metrics() {
        let g = metric_from(&form(&[(1, 4, "1"), (2, 3, "1")]), &rr3m1_j3()).unwrap();
        let printed = mat(&[&["b", "0", "0", "a"], &["0", "0", "1", "0"], &["0", "1", "0", "0"], &["a", "0", "0", "(a^2-1)/b"]]);
        assert_eq!(g.matrix(), &printed);
        let g4 = metric_from(&std_omega(), &diag(["-1", "1", "1", "-1"])).unwrap();
        let expect = mat(&[&["0", "1", "0", "0"], &["1", "0", "0", "0"], &["0", "0", "0", "-1"], &["0", "0", "-1", "0"]]);
        assert_eq!(g4.matrix(), &expect);
        assert!(matches!(
            metric_from(&std_omega(), &diag(["1", "1", "-1", "-1"])),
            Err(ParaKahlerError::Asymmetric { .. })
        ));
        assert!(check_metric_compat(&g, &rr3m1_j3()).unwrap().is_none());
        let id = Metric::new(Matrix::identity(4, &e("0"))).unwrap();
        assert!(check_metric_compat(&id, &diag(["1", "1", "-1", "-1"])).unwrap().is_some());
        assert_eq!(omega_from(&g, &rr3m1_j3()).unwrap(), form(&[(1, 4, "1"), (2, 3, "1")]).matrix().clone());
    }

    #[test]
    fn r2p_zero_curvature_metric() {
        let j3 = endo(&[&["-1", "0", "0", "0"], &["0", "-1", "0", "0"], &["a", "b", "1", "0"], &["-b", "a", "0", "1"]]);
        let g = metric_from(&form(&[(1, 4, "1"), (2, 3, "1")]), &j3).unwrap();
        let printed = mat(&[&["-b", "a", "0", "1"], &["a", "b", "1", "0"], &["0", "1", "0", "0"], &["1", "0", "0", "0"]]);
        assert_eq!(g.matrix(), &printed);
    }

    #[test]
    fn signatures() {
        let d = Metric::new(diag(["1", "1", "-1", "-1"]).matrix().clone()).unwrap();
        assert_eq!(signature_at(&d, &point(&[])).unwrap(), (2, 2));
        let g = metric_from(&form(&[(1, 4, "1"), (2, 3, "1")]), &rr3m1_j3()).unwrap();
        assert_eq!(signature_at(&g, &point(&[("a", 0), ("b", 1)])).unwrap(), (2, 2));
        let z = Metric::new(Matrix::zeros(4, 4, &e("0"))).unwrap();
        assert!(matches!(signature_at(&z, &point(&[])), Err(ParaKahlerError::SingularAt(_))));
    }

    #[test]
    fn eigenspaces() {
        let r4 = LieAlgebra::abelian("R4", 4, &Space::standard());
        let s = eigen_split(&r4, &diag(["1", "1", "-1", "-1"]), &point(&[])).unwrap();
        assert_eq!(s.plus_basis, vec![unit(0), unit(1)]);
        assert_eq!(s.minus_basis, vec![unit(2), unit(3)]);
        let r2r2 = alg(&[(1, 2, 2, "1"), (3, 4, 4, "1")]);
        let j11 = endo(&[&["-1", "0", "0", "0"], &["a", "1", "0", "0"], &["0", "0", "1", "0"], &["0", "0", "b", "-1"]]);
        let s = eigen_split(&r2r2, &j11, &point(&[("a", 0), ("b", 0)])).unwrap();
        assert_eq!(s.plus_basis, vec![unit(1), unit(2)]);
        assert_eq!(s.minus_basis, vec![unit(0), unit(3)]);
        assert!(s.plus_closed && s.minus_closed && !s.symbolic);
        assert!(matches!(
            eigen_split(&r4, &diag(["1", "1", "1", "1"]), &point(&[])),
            Err(ParaKahlerError::RankMismatch { plus: 4, minus: 0, .. })
        ));
    }

    fn unit(i: usize) -> Vec<Rational> {
        crate::lie::basis_vector(4, i, &rational(0, 1))
    }

    #[test]
    fn sign_flip_keeps_axioms() {
        let w = form(&[(1, 4, "1"), (2, 3, "1")]);
        let r = check_axioms(rr3m1().constants(), &w, &rr3m1_j3().neg()).unwrap();
        assert!(r.passed());
    }
}
