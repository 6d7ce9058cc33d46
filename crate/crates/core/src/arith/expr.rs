use std::fmt;
use std::ops;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use super::gcd::gcd;
use super::poly::Polynomial;
use super::space::{Assignment, Point, Space};
use super::{ArithError, Field, Rational};

/// Exact rational function `num / den` over ℚ.
///
/// Kept in lowest terms: `gcd(num, den) = 1`, both sides have integer
/// coefficients with coprime content, and `den` has a positive leading
/// coefficient. Zero is `0 / 1`. With these rules the representation is
/// canonical, so structural equality coincides with equality of functions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalExpr {
    num: Polynomial,
    den: Polynomial,
}

impl RationalExpr {
    pub fn zero(space: &Arc<Space>) -> Self {
        RationalExpr {
            num: Polynomial::zero(space),
            den: Polynomial::one(space),
        }
    }

    pub fn one(space: &Arc<Space>) -> Self {
        Self::constant(space, Rational::one())
    }

    pub fn constant(space: &Arc<Space>, c: Rational) -> Self {
        Self::from_polynomial(Polynomial::constant(space, c))
    }

    pub fn integer(space: &Arc<Space>, n: i64) -> Self {
        Self::constant(space, Rational::from_integer(n.into()))
    }

    /// The parameter `name`, if it belongs to `space`.
    pub fn param(space: &Arc<Space>, name: &str) -> Result<Self, ArithError> {
        let slot = space
            .slot(name)
            .ok_or_else(|| ArithError::UnknownParameter(name.to_string()))?;
        Ok(Self::from_polynomial(Polynomial::var(space, slot)))
    }

    pub fn from_polynomial(p: Polynomial) -> Self {
        let den = Polynomial::one(p.space());
        Self::normalized(p, den)
    }

    /// `num / den` reduced to canonical form.
    pub fn from_parts(num: Polynomial, den: Polynomial) -> Result<Self, ArithError> {
        num.check_space(&den)?;
        if den.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_constant() {
            (num, den)
        } else {
            (
                num.exact_div(&g).expect("gcd divides"),
                den.exact_div(&g).expect("gcd divides"),
            )
        };
        Ok(Self::normalized(num, den))
    }

    /// Content normalization of an already coprime pair.
    fn normalized(num: Polynomial, den: Polynomial) -> Self {
        if num.is_zero() {
            return Self::zero(num.space());
        }
        if den.is_one() && num.terms().iter().all(|(_, c)| c.is_integer()) {
            return RationalExpr { num, den };
        }
        let cn = num.rational_content();
        let mut cd = den.rational_content();
        if den.leading().expect("nonzero den").1.is_negative() {
            cd = -cd;
        }
        let k = &cn / &cd;
        let num = num.scale(&(Rational::from_integer(k.numer().clone()) / &cn));
        let den = den.scale(&(Rational::from_integer(k.denom().clone()) / &cd));
        RationalExpr { num, den }
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn space(&self) -> &Arc<Space> {
        self.num.space()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The rational value when the expression is constant.
    pub fn as_constant(&self) -> Option<Rational> {
        let n = self.num.constant_value()?;
        let d = self.den.constant_value()?;
        Some(n / d)
    }

    /// Total number of polynomial terms, a rough size measure.
    pub fn size(&self) -> usize {
        self.num.num_terms() + self.den.num_terms()
    }

    /// Bit mask of the parameter slots that occur.
    pub fn var_mask(&self) -> u32 {
        self.num.var_mask() | self.den.var_mask()
    }

    /// Names of the parameters that occur, in slot order.
    pub fn parameters(&self) -> Vec<String> {
        let mask = self.var_mask();
        (0..self.space().len())
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| self.space().name(i).to_string())
            .collect()
    }

    pub fn add(&self, rhs: &Self) -> Result<Self, ArithError> {
        self.combine(rhs, false)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self, ArithError> {
        self.combine(rhs, true)
    }

    fn combine(&self, rhs: &Self, negate: bool) -> Result<Self, ArithError> {
        self.num.check_space(&rhs.num)?;
        if rhs.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(if negate { rhs.neg() } else { rhs.clone() });
        }
        let join = |x: &Polynomial, y: &Polynomial| {
            if negate {
                x.sub(y)
            } else {
                x.add(y)
            }
        };
        if self.den == rhs.den {
            let num = join(&self.num, &rhs.num)?;
            if self.den.is_one() {
                return Ok(Self::normalized(num, self.den.clone()));
            }
            return Self::from_parts(num, self.den.clone());
        }
        // Cross-multiply over the lcm of the denominators.
        let g = gcd(&self.den, &rhs.den);
        let (ls, rs) = if g.is_constant() {
            (rhs.den.clone(), self.den.clone())
        } else {
            (
                rhs.den.exact_div(&g).expect("gcd divides"),
                self.den.exact_div(&g).expect("gcd divides"),
            )
        };
        let num = join(&self.num.mul(&ls)?, &rhs.num.mul(&rs)?)?;
        let den = self.den.mul(&ls)?;
        if g.is_constant() {
            // Coprime denominators cannot share a factor with the new numerator.
            Ok(Self::normalized(num, den))
        } else {
            Self::from_parts(num, den)
        }
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self, ArithError> {
        self.num.check_space(&rhs.num)?;
        if self.is_zero() || rhs.is_zero() {
            return Ok(Self::zero(self.space()));
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Ok(Self::normalized(self.num.mul(&rhs.num)?, self.den.clone()));
        }
        let (n1, d2) = cancel(&self.num, &rhs.den);
        let (n2, d1) = cancel(&rhs.num, &self.den);
        let num = n1.mul(&n2)?;
        let den = d1.mul(&d2)?;
        Ok(Self::normalized(num, den))
    }

    pub fn div(&self, rhs: &Self) -> Result<Self, ArithError> {
        self.mul(&rhs.recip()?)
    }

    pub fn recip(&self) -> Result<Self, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn neg(&self) -> Self {
        RationalExpr {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn scale(&self, k: &Rational) -> Self {
        if Zero::is_zero(k) {
            return Self::zero(self.space());
        }
        Self::normalized(self.num.scale(k), self.den.clone())
    }

    pub fn pow(&self, e: u32) -> Result<Self, ArithError> {
        Ok(Self::normalized(self.num.pow(e)?, self.den.pow(e)?))
    }

    /// Replaces the parameter in `slot` by `value`.
    pub fn substitute(&self, slot: usize, value: &RationalExpr) -> Result<Self, ArithError> {
        let horner = |p: &Polynomial| -> Result<RationalExpr, ArithError> {
            let mut acc = RationalExpr::zero(self.space());
            for c in p.to_univariate(slot).iter().rev() {
                acc = acc.mul(value)?.add(&RationalExpr::from_polynomial(c.clone()))?;
            }
            Ok(acc)
        };
        horner(&self.num)?.div(&horner(&self.den)?)
    }

    /// Exact value at a named assignment.
    pub fn eval(&self, assignment: &Assignment) -> Result<Rational, ArithError> {
        self.eval_at(&assignment.resolve(self.space())?)
    }

    pub fn eval_at(&self, point: &Point) -> Result<Rational, ArithError> {
        let d = self.den.eval_at(point)?;
        if Zero::is_zero(&d) {
            return Err(ArithError::DenominatorVanishes {
                point: point.to_assignment().to_string(),
            });
        }
        Ok(self.num.eval_at(point)? / d)
    }
}

/// Strips the common factor of `a` and `b`.
fn cancel(a: &Polynomial, b: &Polynomial) -> (Polynomial, Polynomial) {
    if b.is_constant() || a.is_constant() {
        return (a.clone(), b.clone());
    }
    let g = gcd(a, b);
    if g.is_constant() {
        (a.clone(), b.clone())
    } else {
        (
            a.exact_div(&g).expect("gcd divides"),
            b.exact_div(&g).expect("gcd divides"),
        )
    }
}

impl Field for RationalExpr {
    fn zero_like(&self) -> Self {
        Self::zero(self.space())
    }
    fn one_like(&self) -> Self {
        Self::one(self.space())
    }
    fn from_rational_like(&self, q: &Rational) -> Self {
        Self::constant(self.space(), q.clone())
    }
    fn vanishes(&self) -> bool {
        RationalExpr::is_zero(self)
    }
    fn try_add(&self, rhs: &Self) -> Result<Self, ArithError> {
        self.add(rhs)
    }
    fn try_sub(&self, rhs: &Self) -> Result<Self, ArithError> {
        self.sub(rhs)
    }
    fn try_mul(&self, rhs: &Self) -> Result<Self, ArithError> {
        self.mul(rhs)
    }
    fn try_div(&self, rhs: &Self) -> Result<Self, ArithError> {
        self.div(rhs)
    }
    fn neg(&self) -> Self {
        RationalExpr::neg(self)
    }
    fn scale(&self, k: &Rational) -> Self {
        RationalExpr::scale(self, k)
    }
}

macro_rules! panicking_op {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl ops::$tr<&RationalExpr> for &RationalExpr {
            type Output = RationalExpr;
            fn $method(self, rhs: &RationalExpr) -> RationalExpr {
                self.$inner(rhs)
                    .unwrap_or_else(|e| panic!("rational expression {}: {e}", stringify!($method)))
            }
        }
        impl ops::$tr<RationalExpr> for RationalExpr {
            type Output = RationalExpr;
            fn $method(self, rhs: RationalExpr) -> RationalExpr {
                ops::$tr::$method(&self, &rhs)
            }
        }
    };
}

panicking_op!(Add, add, add);
panicking_op!(Sub, sub, sub);
panicking_op!(Mul, mul, mul);
panicking_op!(Div, div, div);

impl ops::Neg for &RationalExpr {
    type Output = RationalExpr;
    fn neg(self) -> RationalExpr {
        RationalExpr::neg(self)
    }
}

impl ops::Neg for RationalExpr {
    type Output = RationalExpr;
    fn neg(self) -> RationalExpr {
        RationalExpr::neg(&self)
    }
}

impl fmt::Display for RationalExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::parse::print_expr(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(s: &str) -> RationalExpr {
        Space::standard().parse(s).unwrap()
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn add_same_denominator() {
        assert_eq!(e("(a^2-1)/b").add(&e("1/b")).unwrap(), e("a^2/b"));
    }

    #[test]
    fn additive_identity() {
        let x = e("(a^2-1)/b");
        assert_eq!(x.add(&RationalExpr::zero(x.space())).unwrap(), x);
    }

    #[test]
    fn difference_of_squares_is_zero() {
        let lhs = e("a+1").mul(&e("a-1")).unwrap();
        let d = lhs.sub(&e("a^2-1")).unwrap();
        assert!(d.is_zero());
    }

    #[test]
    fn multiplication_cancels() {
        assert_eq!(e("b").mul(&e("(a^2-1)/b")).unwrap(), e("a^2-1"));
        assert!(e("a/b").div(&e("a/b")).unwrap().is_one());
        assert!(e("lambda").mul(&e("0")).unwrap().is_zero());
    }

    #[test]
    fn division_by_symbolic_zero() {
        let zero = e("a - a");
        assert!(matches!(e("b").div(&zero), Err(ArithError::DivisionByZero)));
    }

    #[test]
    fn evaluation() {
        let pt = Assignment::new().with("a", q(3, 1)).with("b", q(2, 1));
        assert_eq!(e("(a^2-1)/b").eval(&pt).unwrap(), q(4, 1));
        assert_eq!(e("-3*b/2").eval(&pt).unwrap(), q(-3, 1));
        let bad = Assignment::new().with("a", q(1, 1)).with("b", q(0, 1));
        let err = e("(a^2-1)/b").eval(&bad).unwrap_err();
        match err {
            ArithError::DenominatorVanishes { point } => assert!(point.contains("b=0")),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn canonical_form_puts_content_in_denominator() {
        let x = e("3*(a^2-1)/(2*b)");
        assert_eq!(x.to_string(), "(3*a^2 - 3)/(2*b)");
        assert_eq!(e("(6*a)/(4*b)"), e("3*a/(2*b)"));
        assert_eq!(e("1/(-b)"), e("-1/b"));
    }

    #[test]
    fn unrelated_denominators_combine() {
        let x = e("1/(c^2+d^2)").add(&e("1/b")).unwrap();
        assert_eq!(x, e("(b + c^2 + d^2)/(b*c^2 + b*d^2)"));
        let back = x.sub(&e("1/b")).unwrap();
        assert_eq!(back, e("1/(c^2+d^2)"));
    }

    #[test]
    fn substitution_shifts_a_parameter() {
        let b = Space::standard().slot("b").unwrap();
        assert_eq!(e("(a^2-1)/b").substitute(b, &e("b+2")).unwrap(), e("(a^2-1)/(b+2)"));
        assert_eq!(e("b^2*c").substitute(b, &e("a")).unwrap(), e("a^2*c"));
    }

    #[test]
    fn mismatched_spaces_are_rejected() {
        let other = Space::new(&["a", "b"]).unwrap();
        let x = other.parse("a").unwrap();
        assert!(matches!(x.add(&e("a")), Err(ArithError::ParameterMismatch)));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb() -> impl Strategy<Value = RationalExpr> {
            let leaf = prop_oneof![
                (-9i64..10).prop_map(|n| n.to_string()),
                prop::sample::select(vec!["a", "b", "c"]).prop_map(str::to_string),
            ];
            leaf.prop_recursive(3, 12, 2, |inner| {
                prop_oneof![
                    (inner.clone(), inner.clone()).prop_map(|(x, y)| format!("({x})+({y})")),
                    (inner.clone(), inner.clone()).prop_map(|(x, y)| format!("({x})*({y})")),
                    (inner.clone(), "[abc]").prop_map(|(x, v)| format!("({x})/({v}^2+1)")),
                ]
            })
            .prop_map(|s| e(&s))
        }

        fn point() -> impl Strategy<Value = Assignment> {
            (-9i64..10, -9i64..10, -9i64..10, 1i64..5).prop_map(|(a, b, c, d)| {
                Assignment::new().with("a", q(a, d)).with("b", q(b, 1)).with("c", q(c, d + 1))
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(200))]

            #[test]
            fn ring_axioms(x in arb(), y in arb(), z in arb()) {
                prop_assert_eq!(x.add(&y).unwrap(), y.add(&x).unwrap());
                prop_assert_eq!(x.mul(&y).unwrap(), y.mul(&x).unwrap());
                prop_assert_eq!(x.add(&y).unwrap().add(&z).unwrap(), x.add(&y.add(&z).unwrap()).unwrap());
                prop_assert_eq!(x.mul(&y).unwrap().mul(&z).unwrap(), x.mul(&y.mul(&z).unwrap()).unwrap());
                prop_assert_eq!(
                    x.mul(&y.add(&z).unwrap()).unwrap(),
                    x.mul(&y).unwrap().add(&x.mul(&z).unwrap()).unwrap()
                );
                prop_assert!(x.sub(&x).unwrap().is_zero());
                if !x.is_zero() {
                    prop_assert!(x.mul(&x.recip().unwrap()).unwrap().is_one());
                }
            }

            #[test]
            fn evaluation_is_a_homomorphism(x in arb(), y in arb(), p in point()) {
                let (xv, yv) = (x.eval(&p).unwrap(), y.eval(&p).unwrap());
                prop_assert_eq!(x.add(&y).unwrap().eval(&p).unwrap(), &xv + &yv);
                prop_assert_eq!(x.mul(&y).unwrap().eval(&p).unwrap(), &xv * &yv);
                prop_assert_eq!(x.neg().eval(&p).unwrap(), -xv);
            }
        }
    }
}
