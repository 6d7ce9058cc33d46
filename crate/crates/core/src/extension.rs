//! One-dimensional central extensions `h = g ×_ω ℝ` of symplectic Lie
//! algebras and the para-contact metric structure they carry.
//!
//! The extension has basis `e_1..e_n, ξ` with `[X, Y]_h = [X, Y]_g + ω(X, Y) ξ`
//! and `ξ` central. With `η = ξ*` and `dη(x, y) = −η([x, y])`, `dη|_D = −ω`.
//! The structure is `φ = J ⊕ 0` and `h(x, y) = −dη(x, φy) + η(x)η(y)`.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{ArithError, Field, Matrix, RationalExpr};
use crate::curvature::{bundle, CurvatureBundle, CurvatureError};
use crate::lie::{LieAlgebra, LieError, TwoForm};
use crate::parakahler::{check_omega_compat, Endomorphism, Metric, ParaKahlerError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtensionError {
    #[error("ω is not symplectic: {0}")]
    NotSymplectic(String),
    #[error("J is not compatible with ω: {0}")]
    IncompatibleJ(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    ParaKahler(#[from] ParaKahlerError),
    #[error(transparent)]
    Curvature(#[from] CurvatureError),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

#[derive(Clone, Debug)]
pub struct CentralExtension {
    pub base: Arc<LieAlgebra>,
    pub extended: LieAlgebra,
    pub omega: TwoForm<RationalExpr>,
    /// Half the base dimension.
    pub n: usize,
}

impl CentralExtension {
    /// Index of `ξ` in the extended basis.
    pub fn xi(&self) -> usize {
        self.base.dim()
    }
}

pub fn central_extend(base: &Arc<LieAlgebra>, omega: &TwoForm<RationalExpr>) -> Result<CentralExtension, ExtensionError> {
    let chk = base.is_symplectic(omega)?;
    if let Some(((i, j, k), r)) = &chk.closed_violation {
        return Err(ExtensionError::NotSymplectic(format!(
            "dω(e{},e{},e{}) = {r}",
            i + 1,
            j + 1,
            k + 1
        )));
    }
    if chk.det.is_zero() {
        return Err(ExtensionError::NotSymplectic("det ω = 0".into()));
    }
    let dim = base.dim();
    let mut br = base.brackets();
    for (i, j, w) in omega.terms() {
        br.push((i, j, dim, w));
    }
    let extended = LieAlgebra::new(
        &format!("{} x_w R", base.name),
        dim + 1,
        base.params.clone(),
        base.space(),
        &br,
    )?;
    Ok(CentralExtension {
        base: base.clone(),
        extended,
        omega: omega.clone(),
        n: dim / 2,
    })
}

#[derive(Clone, Debug)]
pub struct ParacontactStructure {
    pub eta: Vec<RationalExpr>,
    pub xi: Vec<RationalExpr>,
    pub phi: Endomorphism<RationalExpr>,
    pub h: Metric<RationalExpr>,
    /// `Φ(X, Y) = h(φX, Y)`.
    pub fundamental: Matrix<RationalExpr>,
    pub d_eta: TwoForm<RationalExpr>,
}

pub fn build_paracontact(ext: &CentralExtension, j: &Endomorphism<RationalExpr>) -> Result<ParacontactStructure, ExtensionError> {
    let n = ext.base.dim();
    if j.dim() != n {
        return Err(ExtensionError::Dimension(format!("J of size {} on dimension {n}", j.dim())));
    }
    if let Some(f) = check_omega_compat(&ext.omega, j)? {
        return Err(ExtensionError::IncompatibleJ(f.to_string()));
    }
    let space = ext.base.space();
    let zero = RationalExpr::zero(space);
    let unit = crate::lie::basis_vector(n + 1, n, &zero);
    let phi = Matrix::from_fn(n + 1, n + 1, |r, c| {
        if r < n && c < n {
            j.matrix().get(r, c).clone()
        } else {
            zero.clone()
        }
    });
    let phi = Endomorphism::new(phi)?;
    let d_eta = ext.extended.ce_differential_1(&unit)?;
    let eta_eta = Matrix::try_from_fn(n + 1, n + 1, |r, c| unit[r].try_mul(&unit[c]))?;
    let h = d_eta.matrix().try_mul(phi.matrix())?.neg().try_add(&eta_eta)?;
    let h = Metric::new(h)?;
    let fundamental = phi.matrix().transpose().try_mul(h.matrix())?;
    Ok(ParacontactStructure {
        eta: unit.clone(),
        xi: unit,
        phi,
        h,
        fundamental,
        d_eta,
    })
}

/// Coefficient of `η∧dη∧…∧dη` on `(e_1, …, e_{2n+1})`, by direct expansion
/// over permutations.
pub fn contact_coefficient(eta: &[RationalExpr], d_eta: &TwoForm<RationalExpr>) -> Result<RationalExpr, ExtensionError> {
    let m = eta.len();
    if m % 2 == 0 || d_eta.dim() != m {
        return Err(ExtensionError::Dimension(format!("contact form on dimension {m}")));
    }
    let pairs = (m - 1) / 2;
    let mut acc = eta[0].zero_like();
    let mut perm: Vec<usize> = (0..m).collect();
    permutations(&mut perm, &mut |p, even| -> Result<(), ArithError> {
        let mut t = eta[p[0]].clone();
        if t.is_zero() {
            return Ok(());
        }
        for q in 0..pairs {
            t = t.mul(d_eta.get(p[1 + 2 * q], p[2 + 2 * q]))?;
            if t.is_zero() {
                return Ok(());
            }
        }
        acc = if even { acc.add(&t)? } else { acc.sub(&t)? };
        Ok(())
    })?;
    // 1!·(2!)^pairs normalization
    Ok(acc.scale(&crate::arith::rational(1, 1 << pairs)))
}

/// Heap's algorithm with parity tracking.
fn permutations<E>(
    p: &mut [usize],
    f: &mut impl FnMut(&[usize], bool) -> Result<(), E>,
) -> Result<(), E> {
    let n = p.len();
    let mut c = vec![0usize; n];
    let mut even = true;
    f(p, even)?;
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                p.swap(0, i);
            } else {
                p.swap(c[i], i);
            }
            even = !even;
            f(p, even)?;
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    Ok(())
}

/// Outcome of the structural checks on `(φ, ξ, η, h)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ContactChecks {
    /// Coefficient of `η∧dη∧dη` on the ordered basis.
    pub contact_coefficient: String,
    pub contact: bool,
    /// `dη(ξ, ·) = 0` and `η(ξ) = 1`.
    pub reeb: bool,
    /// `φ² = Id − η⊗ξ`, `η∘φ = 0`, `φξ = 0`.
    pub almost_paracontact: bool,
    /// `h(φX, φY) = −h(X, Y) + η(X)η(Y)` and `η = h(ξ, ·)`.
    pub compatible_metric: bool,
    /// `+1` if `Φ = dη`, `−1` if `Φ = −dη`, `0` otherwise.
    pub phi_sign: i8,
    /// `h|_D` equals the base metric `ω(·, J·)`.
    pub restriction: bool,
    /// Jacobi identity of the extension.
    pub jacobi: bool,
}

pub fn check_contact(ext: &CentralExtension, eta: &[RationalExpr]) -> Result<(bool, RationalExpr), ExtensionError> {
    let d_eta = ext.extended.ce_differential_1(eta)?;
    let k = contact_coefficient(eta, &d_eta)?;
    Ok((!k.is_zero(), k))
}

pub fn check_compatible_metric(ps: &ParacontactStructure) -> Result<bool, ExtensionError> {
    let (phi, h) = (ps.phi.matrix(), ps.h.matrix());
    let eta_eta = Matrix::try_from_fn(h.rows(), h.cols(), |r, c| ps.eta[r].try_mul(&ps.eta[c]))?;
    let lhs = phi.transpose().try_mul(h)?.try_mul(phi)?.try_add(h)?.try_sub(&eta_eta)?;
    let h_xi = h.apply(&ps.xi)?;
    Ok(lhs.is_zero() && h_xi == ps.eta)
}

fn check_almost_paracontact(ps: &ParacontactStructure) -> Result<bool, ExtensionError> {
    let phi = ps.phi.matrix();
    let m = phi.rows();
    let proto = &ps.eta[0];
    let xi_eta = Matrix::try_from_fn(m, m, |r, c| ps.xi[r].try_mul(&ps.eta[c]))?;
    let rhs = Matrix::identity(m, proto).try_sub(&xi_eta)?;
    let sq_ok = phi.try_mul(phi)? == rhs;
    let eta_phi = phi.transpose().apply(&ps.eta)?;
    let phi_xi = phi.apply(&ps.xi)?;
    let eta_xi = crate::arith::dot(ps.eta.iter().zip(&ps.xi), proto)?;
    Ok(sq_ok && eta_phi.iter().all(RationalExpr::is_zero) && phi_xi.iter().all(RationalExpr::is_zero) && eta_xi.is_one())
}

pub fn structural_checks(
    ext: &CentralExtension,
    ps: &ParacontactStructure,
    base_g: &Metric<RationalExpr>,
) -> Result<ContactChecks, ExtensionError> {
    let (contact, k) = check_contact(ext, &ps.eta)?;
    let xi = ext.xi();
    let reeb = (0..=xi).all(|c| ps.d_eta.get(xi, c).is_zero())
        && crate::arith::dot(ps.eta.iter().zip(&ps.xi), &ps.eta[0])?.is_one();
    let d = ps.d_eta.matrix();
    let phi_sign = if &ps.fundamental == d {
        1
    } else if ps.fundamental == d.neg() {
        -1
    } else {
        0
    };
    let n = ext.base.dim();
    let restriction = (0..n).all(|r| (0..n).all(|c| ps.h.matrix().get(r, c) == base_g.matrix().get(r, c)));
    Ok(ContactChecks {
        contact_coefficient: k.to_string(),
        contact,
        reeb,
        almost_paracontact: check_almost_paracontact(ps)?,
        compatible_metric: check_compatible_metric(ps)?,
        phi_sign,
        restriction,
        jacobi: ext.extended.jacobi_check()?.is_none(),
    })
}

/// How the base-curvature term of the first identity is interpreted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Reading {
    /// The base curvature `R_g` acting on `D`, zero on `ξ`.
    LiftedBase,
    /// The `D`-part of the extension's own curvature; only the `ξ`-components
    /// of the identity remain as content.
    ProjectedExtension,
}

impl fmt::Display for Reading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Reading::LiftedBase => "lifted_base",
            Reading::ProjectedExtension => "projected_extension",
        })
    }
}

/// Residuals of one identity over all basis arguments.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdentityResidual {
    pub identity: String,
    pub checked: usize,
    pub nonzero: usize,
    /// First nonzero residual as `(1-based arguments, component, value)`.
    pub first: Option<(Vec<usize>, usize, String)>,
}

impl IdentityResidual {
    fn new(identity: &str) -> Self {
        IdentityResidual {
            identity: identity.to_string(),
            checked: 0,
            nonzero: 0,
            first: None,
        }
    }

    fn record(&mut self, args: &[usize], lhs: &[RationalExpr], rhs: &[RationalExpr]) -> Result<(), ArithError> {
        self.checked += 1;
        for (c, (a, b)) in lhs.iter().zip(rhs).enumerate() {
            let r = a.sub(b)?;
            if !r.is_zero() {
                self.nonzero += 1;
                if self.first.is_none() {
                    self.first = Some((args.iter().map(|i| i + 1).collect(), c + 1, r.to_string()));
                }
                break;
            }
        }
        Ok(())
    }

    pub fn holds(&self) -> bool {
        self.nonzero == 0
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub reading: Option<Reading>,
    pub identities: Vec<IdentityResidual>,
}

impl TheoremReport {
    pub fn holds(&self) -> bool {
        self.identities.iter().all(IdentityResidual::holds)
    }

    pub fn nonzero(&self) -> usize {
        self.identities.iter().map(|r| r.nonzero).sum()
    }
}

/// Curvature of the extension with metric `h`.
pub fn extension_bundle(ext: &CentralExtension, ps: &ParacontactStructure) -> Result<CurvatureBundle<RationalExpr>, ExtensionError> {
    Ok(bundle(ext.extended.constants(), ps.h.matrix())?)
}

/// The four curvature identities of the extension. The first is tried
/// under [`Reading::LiftedBase`] and, only if that leaves residuals, under
/// [`Reading::ProjectedExtension`].
pub fn verify_theorem2(
    ext: &CentralExtension,
    ext_bundle: &CurvatureBundle<RationalExpr>,
    base_bundle: &CurvatureBundle<RationalExpr>,
    g: &Metric<RationalExpr>,
    j: &Endomorphism<RationalExpr>,
) -> Result<TheoremReport, ExtensionError> {
    let n = ext.base.dim();
    let xi = ext.xi();
    let space = ext.base.space();
    let zero = RationalExpr::zero(space);
    let quarter = crate::arith::rational(1, 4);
    let r5 = &ext_bundle.curvature;
    let lift = |v: &[RationalExpr]| -> Vec<RationalExpr> {
        let mut out = v.to_vec();
        out.push(zero.clone());
        out
    };
    // gj[a][b] = g(e_a, J e_b)
    let gj = g.matrix().try_mul(j.matrix())?;
    let jcol: Vec<Vec<RationalExpr>> = (0..n).map(|c| lift(&j.column(c))).collect();

    let first_identity = |reading: Reading| -> Result<IdentityResidual, ExtensionError> {
        let mut res = IdentityResidual::new("R(X,Y)Z");
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let mut rhs: Vec<RationalExpr> = match reading {
                        Reading::LiftedBase => lift(base_bundle.curvature.apply(a, b, c)),
                        Reading::ProjectedExtension => {
                            let mut v = r5.apply(a, b, c).to_vec();
                            v[xi] = zero.clone();
                            v
                        }
                    };
                    let terms = [
                        (gj.get(a, c).scale(&-quarter.clone()), &jcol[b]),
                        (gj.get(b, c).scale(&quarter), &jcol[a]),
                        (gj.get(a, b).scale(&crate::arith::rational(-1, 2)), &jcol[c]),
                    ];
                    for (k, v) in terms {
                        if k.is_zero() {
                            continue;
                        }
                        for (r, x) in rhs.iter_mut().zip(v) {
                            if !x.is_zero() {
                                *r = r.add(&k.mul(x)?)?;
                            }
                        }
                    }
                    res.record(&[a, b, c], r5.apply(a, b, c), &rhs)?;
                }
            }
        }
        Ok(res)
    };

    let mut reading = Reading::LiftedBase;
    let mut id1 = first_identity(reading)?;
    if !id1.holds() {
        let alt = first_identity(Reading::ProjectedExtension)?;
        if alt.holds() {
            reading = Reading::ProjectedExtension;
            id1 = alt;
        }
    }

    let mut id2 = IdentityResidual::new("R(X,Y)xi");
    let mut id3 = IdentityResidual::new("R(X,xi)Z");
    let mut id4 = IdentityResidual::new("R(X,xi)xi");
    let zeros = vec![zero.clone(); n + 1];
    for a in 0..n {
        for b in 0..n {
            id2.record(&[a, b], r5.apply(a, b, xi), &zeros)?;
            let mut rhs = zeros.clone();
            rhs[xi] = g.matrix().get(a, b).scale(&quarter);
            id3.record(&[a, b], r5.apply(a, xi, b), &rhs)?;
        }
        let mut rhs = zeros.clone();
        rhs[a] = RationalExpr::constant(space, -quarter.clone());
        id4.record(&[a], r5.apply(a, xi, xi), &rhs)?;
    }
    Ok(TheoremReport {
        reading: Some(reading),
        identities: vec![id1, id2, id3, id4],
    })
}

/// `Ric(Y, Z) = Ric_g(Y, Z) + ½ g(Y, Z)`, `Ric(Y, ξ) = 0`, `Ric(ξ, ξ) = −n/2`.
pub fn verify_theorem3(
    ext: &CentralExtension,
    ext_bundle: &CurvatureBundle<RationalExpr>,
    base_ricci: &Matrix<RationalExpr>,
    g: &Metric<RationalExpr>,
) -> Result<TheoremReport, ExtensionError> {
    let n = ext.base.dim();
    let xi = ext.xi();
    let ric = &ext_bundle.ricci.ricci;
    let half = crate::arith::rational(1, 2);
    let mut id1 = IdentityResidual::new("Ric(Y,Z)");
    let mut id2 = IdentityResidual::new("Ric(Y,xi)");
    let mut id3 = IdentityResidual::new("Ric(xi,xi)");
    let zero = RationalExpr::zero(ext.base.space());
    for a in 0..n {
        for b in 0..n {
            let rhs = base_ricci.get(a, b).add(&g.matrix().get(a, b).scale(&half))?;
            id1.record(&[a, b], std::slice::from_ref(ric.get(a, b)), &[rhs])?;
        }
        id2.record(&[a], std::slice::from_ref(ric.get(a, xi)), std::slice::from_ref(&zero))?;
    }
    let target = RationalExpr::constant(ext.base.space(), crate::arith::rational(-(ext.n as i64), 2));
    id3.record(&[xi], std::slice::from_ref(ric.get(xi, xi)), &[target])?;
    Ok(TheoremReport {
        reading: None,
        identities: vec![id1, id2, id3],
    })
}

/// Everything recorded for one base structure.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SasakianFinding {
    pub id: String,
    pub checks: ContactChecks,
    pub theorem2: TheoremReport,
    pub theorem3: TheoremReport,
    /// `Ric(ξ, ξ)` of the extension.
    pub ric_xi_xi: String,
}

impl SasakianFinding {
    pub fn holds(&self) -> bool {
        let c = &self.checks;
        c.contact
            && c.reeb
            && c.almost_paracontact
            && c.compatible_metric
            && c.phi_sign == 1
            && c.restriction
            && c.jacobi
            && self.theorem2.holds()
            && self.theorem3.holds()
    }
}

/// Extension, structure, checks and both theorems for one verified base.
pub fn verify_extension(
    id: &str,
    algebra: &Arc<LieAlgebra>,
    omega: &TwoForm<RationalExpr>,
    j: &Endomorphism<RationalExpr>,
    g: &Metric<RationalExpr>,
    base_bundle: &CurvatureBundle<RationalExpr>,
) -> Result<SasakianFinding, ExtensionError> {
    let ext = central_extend(algebra, omega)?;
    let ps = build_paracontact(&ext, j)?;
    let checks = structural_checks(&ext, &ps, g)?;
    let eb = extension_bundle(&ext, &ps)?;
    let theorem2 = verify_theorem2(&ext, &eb, base_bundle, g, j)?;
    let theorem3 = verify_theorem3(&ext, &eb, &base_bundle.ricci.ricci, g)?;
    let xi = ext.xi();
    Ok(SasakianFinding {
        id: id.to_string(),
        checks,
        theorem2,
        theorem3,
        ric_xi_xi: eb.ricci.ricci.get(xi, xi).to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Space;
    use crate::parakahler::metric_from;

    fn e(s: &str) -> RationalExpr {
        Space::standard().parse(s).unwrap()
    }

    fn mat(rows: &[&[&str]]) -> Matrix<RationalExpr> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|s| e(s)).collect()).collect()).unwrap()
    }

    fn alg(br: &[(usize, usize, usize, &str)]) -> Arc<LieAlgebra> {
        let br: Vec<_> = br.iter().map(|&(i, j, k, v)| (i - 1, j - 1, k - 1, e(v))).collect();
        Arc::new(LieAlgebra::new("t", 4, Vec::new(), &Space::standard(), &br).unwrap())
    }

    fn form(terms: &[(usize, usize, &str)]) -> TwoForm<RationalExpr> {
        let t: Vec<_> = terms.iter().map(|&(i, j, v)| (i - 1, j - 1, e(v))).collect();
        TwoForm::from_terms(4, &e("0"), &t).unwrap()
    }

    fn r4_witness() -> Endomorphism<RationalExpr> {
        Endomorphism::new(mat(&[&["-1", "0", "0", "0"], &["0", "1", "0", "0"], &["0", "0", "1", "0"], &["0", "0", "0", "-1"]])).unwrap()
    }

    fn run(a: &Arc<LieAlgebra>, w: &TwoForm<RationalExpr>, j: &Endomorphism<RationalExpr>) -> SasakianFinding {
        let g = metric_from(w, j).unwrap();
        let b = bundle(a.constants(), g.matrix()).unwrap();
        verify_extension("t", a, w, j, &g, &b).unwrap()
    }

    #[test]
    fn heisenberg_from_abelian() {
        let r4 = Arc::new(LieAlgebra::abelian("R4", 4, &Space::standard()));
        let ext = central_extend(&r4, &form(&[(1, 2, "1"), (3, 4, "1")])).unwrap();
        let br = ext.extended.brackets();
        assert_eq!(br, vec![(0, 1, 4, e("1")), (2, 3, 4, e("1"))]);
        assert!(ext.extended.jacobi_check().unwrap().is_none());
    }

    #[test]
    fn rh3_extension_brackets() {
        let rh3 = alg(&[(1, 2, 3, "1")]);
        let ext = central_extend(&rh3, &form(&[(1, 4, "1"), (2, 3, "1")])).unwrap();
        assert_eq!(ext.extended.brackets(), vec![(0, 1, 2, e("1")), (0, 3, 4, e("1")), (1, 2, 4, e("1"))]);
        // dη = −ω on the base
        let xi = crate::lie::basis_vector(5, 4, &e("0"));
        let d = ext.extended.ce_differential_1(&xi).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(d.get(i, j), &ext.omega.get(i, j).neg());
            }
        }
    }

    #[test]
    fn degenerate_form_is_rejected() {
        let r4 = Arc::new(LieAlgebra::abelian("R4", 4, &Space::standard()));
        assert!(matches!(central_extend(&r4, &form(&[(1, 2, "1")])), Err(ExtensionError::NotSymplectic(_))));
        // The 5-form itself vanishes when built on a degenerate ω.
        let mut br = Vec::new();
        br.push((0, 1, 4, e("1")));
        let heis = LieAlgebra::new("h", 5, Vec::new(), &Space::standard(), &br).unwrap();
        let xi = crate::lie::basis_vector(5, 4, &e("0"));
        let d = heis.ce_differential_1(&xi).unwrap();
        assert!(contact_coefficient(&xi, &d).unwrap().is_zero());
    }

    #[test]
    fn paracontact_structure_on_flat_base() {
        let r4 = Arc::new(LieAlgebra::abelian("R4", 4, &Space::standard()));
        let w = form(&[(1, 2, "1"), (3, 4, "1")]);
        let ext = central_extend(&r4, &w).unwrap();
        let ps = build_paracontact(&ext, &r4_witness()).unwrap();
        let h = ps.h.matrix();
        assert_eq!((h.get(0, 1), h.get(1, 0)), (&e("1"), &e("1")));
        assert_eq!((h.get(2, 3), h.get(3, 2)), (&e("-1"), &e("-1")));
        assert_eq!(h.get(4, 4), &e("1"));
        assert!(ps.phi.apply(&ps.xi).unwrap().iter().all(RationalExpr::is_zero));
        let (ok, k) = check_contact(&ext, &ps.eta).unwrap();
        assert!(ok, "{k}");
        assert!(check_compatible_metric(&ps).unwrap());
        let bad = ParacontactStructure {
            h: Metric::new(Matrix::identity(5, &e("0"))).unwrap(),
            ..ps.clone()
        };
        assert!(!check_compatible_metric(&bad).unwrap());
        let incompatible = Endomorphism::new(mat(&[&["1", "0", "0", "0"], &["0", "1", "0", "0"], &["0", "0", "-1", "0"], &["0", "0", "0", "-1"]])).unwrap();
        assert!(matches!(build_paracontact(&ext, &incompatible), Err(ExtensionError::IncompatibleJ(_))));

        let f = run(&r4, &w, &r4_witness());
        assert!(f.holds(), "{f:?}");
        assert_eq!(f.ric_xi_xi, "-1");
        assert_eq!(f.theorem2.reading, Some(Reading::LiftedBase));
    }

    #[test]
    fn einstein_bases() {
        let r2p = alg(&[(1, 3, 3, "1"), (1, 4, 4, "1"), (2, 3, 4, "1"), (2, 4, 3, "-1")]);
        let j2 = Endomorphism::new(mat(&[
            &["-(a*b+c^2+2)/2", "-c", "0", "b"],
            &["0", "-1", "0", "0"],
            &["-c*(a*b+c^2+4)/(2*b)", "a", "1", "c"],
            &["-(a^2*b^2+2*a*b*c^2+c^4+4*a*b+4*c^2)/(4*b)", "-c*(a*b+c^2+4)/(2*b)", "0", "(a*b+c^2+2)/2"],
        ]))
        .unwrap();
        let f = run(&r2p, &form(&[(1, 4, "1"), (2, 3, "1")]), &j2);
        assert!(f.holds(), "{f:?}");

        let d4l = alg(&[(1, 2, 3, "1"), (4, 3, 3, "1"), (4, 1, 1, "lambda"), (4, 2, 2, "1-lambda")]);
        let w = form(&[(1, 2, "1"), (3, 4, "-1")]);
        let j3 = Endomorphism::new(mat(&[&["1", "0", "0", "0"], &["0", "-1", "0", "0"], &["0", "0", "a", "-(a^2-1)/b"], &["0", "0", "b", "-a"]])).unwrap();
        let g = metric_from(&w, &j3).unwrap();
        let b = bundle(d4l.constants(), g.matrix()).unwrap();
        let ext = central_extend(&d4l, &w).unwrap();
        let ps = build_paracontact(&ext, &j3).unwrap();
        let eb = extension_bundle(&ext, &ps).unwrap();
        let expect = g.matrix().try_scale_by(&e("-3*b/2 + 1/2")).unwrap();
        for r in 0..4 {
            for c in 0..4 {
                assert_eq!(eb.ricci.ricci.get(r, c), expect.get(r, c));
            }
        }
        assert!(verify_theorem3(&ext, &eb, &b.ricci.ricci, &g).unwrap().holds());
    }

    #[test]
    fn permutation_parity() {
        let mut seen = 0;
        let mut even_count = 0;
        let mut p = vec![0, 1, 2, 3];
        permutations(&mut p, &mut |q: &[usize], even| -> Result<(), ()> {
            seen += 1;
            let inv = (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j))).filter(|&(i, j)| q[i] > q[j]).count();
            assert_eq!(inv % 2 == 0, even);
            if even {
                even_count += 1;
            }
            Ok(())
        })
        .unwrap();
        assert_eq!((seen, even_count), (24, 12));
    }
}
