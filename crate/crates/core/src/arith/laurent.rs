use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::{ArithError, ExactRational, Monomial, SparsePolynomial, VariableTable};

/// `numerator / x^denominator`, kept reduced.
///
/// Reduced means no variable with positive denominator exponent divides the
/// numerator. Frozen variables never appear in the denominator; constructors
/// reject that with [`ArithError::FrozenDenominator`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPolynomial {
    num: SparsePolynomial,
    den: Monomial,
}

impl LaurentPolynomial {
    pub fn new(num: SparsePolynomial, den: Monomial) -> Result<Self, ArithError> {
        assert_eq!(den.nvars(), num.vars().len(), "denominator length does not match table");
        let mut l = LaurentPolynomial { num, den };
        l.reduce();
        l.check_frozen()?;
        Ok(l)
    }

    pub fn from_poly(num: SparsePolynomial) -> Self {
        let den = Monomial::one(num.vars().len());
        LaurentPolynomial { num, den }
    }

    pub fn zero(vars: &Arc<VariableTable>) -> Self {
        Self::from_poly(SparsePolynomial::zero(vars))
    }

    pub fn one(vars: &Arc<VariableTable>) -> Self {
        Self::from_poly(SparsePolynomial::one(vars))
    }

    pub fn var(vars: &Arc<VariableTable>, i: usize) -> Self {
        Self::from_poly(SparsePolynomial::var(vars, i))
    }

    pub fn vars(&self) -> &Arc<VariableTable> {
        self.num.vars()
    }

    pub fn numerator(&self) -> &SparsePolynomial {
        &self.num
    }

    pub fn denominator(&self) -> &Monomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn into_polynomial(self) -> Result<SparsePolynomial, ArithError> {
        if self.is_polynomial() {
            Ok(self.num)
        } else {
            Err(ArithError::NotPolynomial)
        }
    }

    /// Cancels common monomial factors between numerator and denominator.
    /// Idempotent.
    pub fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den = Monomial::one(self.den.nvars());
            return;
        }
        if self.den.is_one() {
            return;
        }
        let common = self.num.monomial_content().gcd(&self.den);
        if common.is_one() {
            return;
        }
        self.num = self.num.div_monomial(&common).expect("content divides every term");
        self.den = self.den.checked_div(&common).expect("gcd divides denominator");
    }

    pub fn reduced(mut self) -> Self {
        self.reduce();
        self
    }

    /// True iff the denominator avoids every frozen variable.
    pub fn denominator_is_mutable(&self) -> bool {
        let t = self.vars();
        self.den.support().all(|i| !t.is_frozen(i))
    }

    fn check_frozen(&self) -> Result<(), ArithError> {
        let t = self.vars();
        match self.den.support().find(|&i| t.is_frozen(i)) {
            Some(i) => Err(ArithError::FrozenDenominator(t.name(i).to_string())),
            None => Ok(()),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, ArithError> {
        if self.den == other.den {
            let num = self.num.checked_add(&other.num)?;
            return Ok(LaurentPolynomial { num, den: self.den.clone() }.reduced());
        }
        let l = self.den.lcm(&other.den);
        let one = ExactRational::one();
        let a = self.num.mul_term(&l.checked_div(&self.den).unwrap(), &one);
        let b = other.num.mul_term(&l.checked_div(&other.den).unwrap(), &one);
        Ok(LaurentPolynomial { num: a.checked_add(&b)?, den: l }.reduced())
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, ArithError> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, ArithError> {
        let num = self.num.checked_mul(&other.num)?;
        Ok(LaurentPolynomial { num, den: self.den.mul(&other.den) }.reduced())
    }

    pub fn scale(&self, c: &ExactRational) -> Self {
        LaurentPolynomial { num: self.num.scale(c), den: self.den.clone() }.reduced()
    }

    pub fn pow(&self, e: u32) -> Self {
        LaurentPolynomial { num: self.num.pow(e), den: self.den.pow(e) }.reduced()
    }

    /// Exact quotient in the Laurent ring.
    ///
    /// The divisor's monomial content is split off first; what remains has no
    /// monomial factor, so it must divide the numerator as a polynomial.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self, ArithError> {
        if divisor.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        let content = divisor.num.monomial_content();
        let core = divisor.num.div_monomial(&content)?;
        let q = self.num.exact_div(&core)?;
        let num = q.mul_term(&divisor.den, &ExactRational::one());
        LaurentPolynomial::new(num, self.den.mul(&content))
    }

    /// Evaluates a polynomial at Laurent values, one per variable of `f`.
    pub fn substitute_poly(f: &SparsePolynomial, values: &[LaurentPolynomial]) -> Result<Self, ArithError> {
        assert_eq!(values.len(), f.vars().len(), "one value per variable required");
        let target = match values.first() {
            Some(v) => v.vars().clone(),
            None => return Err(ArithError::VariableMismatch),
        };
        let mut powers: Vec<Vec<LaurentPolynomial>> = vec![Vec::new(); values.len()];
        let mut acc = Self::zero(&target);
        for (m, c) in f.terms() {
            let mut t = Self::from_poly(SparsePolynomial::constant(&target, c.clone()));
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let pw = &mut powers[i];
                if pw.is_empty() {
                    pw.push(values[i].clone());
                }
                while pw.len() < e as usize {
                    let next = pw[pw.len() - 1].checked_mul(&values[i])?;
                    pw.push(next);
                }
                t = t.checked_mul(&pw[e as usize - 1])?;
            }
            acc = acc.checked_add(&t)?;
        }
        Ok(acc)
    }
}

impl fmt::Display for LaurentPolynomial {
    /// `num` when the denominator is trivial, otherwise `(num)/(den)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den.render(self.vars().names()))
        }
    }
}

macro_rules! laurent_op {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl<'a> $tr<&'a LaurentPolynomial> for &'a LaurentPolynomial {
            type Output = LaurentPolynomial;
            /// Panics if the operands use different variable tables.
            fn $m(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
                self.$checked(rhs).expect("Laurent operands over different variable tables")
            }
        }
    };
}
laurent_op!(Add, add, checked_add);
laurent_op!(Sub, sub, checked_sub);
laurent_op!(Mul, mul, checked_mul);

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        LaurentPolynomial { num: -&self.num, den: self.den.clone() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::parse_laurent;

    fn table() -> Arc<VariableTable> {
        VariableTable::new(["x", "y", "f"], [false, false, true]).unwrap().shared()
    }

    fn l(s: &str) -> LaurentPolynomial {
        parse_laurent(s, &table()).unwrap()
    }

    #[test]
    fn basic_identities() {
        let t = table();
        assert_eq!(&l("1/x") * &l("x"), LaurentPolynomial::one(&t));
        assert_eq!(&l("y/x") + &l("1/x"), l("(y+1)/x"));
        assert_eq!(l("(y+1)/x").to_string(), "(y + 1)/(x)");
    }

    #[test]
    fn reduction_cancels_common_factor() {
        let t = table();
        let num = crate::arith::parse_polynomial("x^2*y + x*y^2", &t).unwrap();
        let a = LaurentPolynomial::new(num, Monomial::from_exponents(vec![1, 3, 0])).unwrap();
        assert_eq!(a.denominator().exponents(), &[0, 2, 0]);
        assert_eq!(a.numerator().to_string(), "x + y");
        let mut b = a.clone();
        b.reduce();
        assert_eq!(a, b);
    }

    #[test]
    fn frozen_denominator_rejected() {
        let t = table();
        let r = LaurentPolynomial::new(SparsePolynomial::one(&t), Monomial::variable(3, 2, 1));
        assert_eq!(r, Err(ArithError::FrozenDenominator("f".into())));
        assert!(l("x").exact_div(&l("f")).is_err());
    }

    #[test]
    fn exact_division_exchange() {
        // x * x' = y + 1
        let xp = l("y + 1").exact_div(&l("x")).unwrap();
        assert_eq!(xp, l("(y+1)/x"));
        // dividing by a Laurent with monomial content
        let d = l("(x*y + x)/y");
        let q = l("x*y^2 + 2*x*y + x").exact_div(&d).unwrap();
        assert_eq!(q, l("y^2 + y"));
        assert_eq!(l("x + 2").exact_div(&l("y + 1")), Err(ArithError::Inexact));
    }
}
