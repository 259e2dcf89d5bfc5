use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::vars::same_table;
use super::{ArithError, ExactRational, Monomial, VariableTable};

/// Largest matrix accepted by [`poly_det`].
pub const DEFAULT_DET_BOUND: usize = 8;

/// A polynomial with exact rational coefficients over a [`VariableTable`].
///
/// Terms are kept in a `BTreeMap` keyed by degrevlex order, so the leading
/// term is the last entry and iteration order is canonical.
#[derive(Clone, Debug)]
pub struct SparsePolynomial {
    vars: Arc<VariableTable>,
    terms: BTreeMap<Monomial, ExactRational>,
}

impl PartialEq for SparsePolynomial {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && same_table(&self.vars, &other.vars)
    }
}

impl Eq for SparsePolynomial {}

impl Hash for SparsePolynomial {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.terms.len().hash(state);
        for (m, c) in &self.terms {
            m.hash(state);
            c.hash(state);
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coef: String,
    pub exps: Vec<u32>,
}

/// JSON shape `{vars, terms: [{coef: "p/q", exps}]}`, terms in descending order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub vars: Vec<String>,
    pub terms: Vec<TermJson>,
}

impl SparsePolynomial {
    pub fn zero(vars: &Arc<VariableTable>) -> Self {
        SparsePolynomial { vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn one(vars: &Arc<VariableTable>) -> Self {
        Self::constant(vars, ExactRational::one())
    }

    pub fn constant(vars: &Arc<VariableTable>, c: ExactRational) -> Self {
        Self::monomial(vars, Monomial::one(vars.len()), c)
    }

    pub fn monomial(vars: &Arc<VariableTable>, m: Monomial, c: ExactRational) -> Self {
        assert_eq!(m.nvars(), vars.len(), "monomial length does not match table");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        SparsePolynomial { vars: vars.clone(), terms }
    }

    pub fn var(vars: &Arc<VariableTable>, i: usize) -> Self {
        Self::monomial(vars, Monomial::variable(vars.len(), i, 1), ExactRational::one())
    }

    pub fn var_named(vars: &Arc<VariableTable>, name: &str) -> Result<Self, ArithError> {
        Ok(Self::var(vars, vars.require(name)?))
    }

    /// Sums like terms and drops zeros.
    pub fn from_terms(
        vars: &Arc<VariableTable>,
        terms: impl IntoIterator<Item = (Monomial, ExactRational)>,
    ) -> Self {
        let mut p = Self::zero(vars);
        for (m, c) in terms {
            assert_eq!(m.nvars(), vars.len(), "monomial length does not match table");
            p.add_term(m, &c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: &ExactRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                let s = o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn vars(&self) -> &Arc<VariableTable> {
        &self.vars
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &ExactRational)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    /// The value if the polynomial is constant (including zero).
    pub fn constant_value(&self) -> Option<ExactRational> {
        match self.terms.len() {
            0 => Some(ExactRational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &ExactRational)> {
        self.terms.last_key_value()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn coefficient(&self, m: &Monomial) -> ExactRational {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// The gcd of all monomials appearing; `1` for the zero polynomial.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        match it.next() {
            None => Monomial::one(self.vars.len()),
            Some(first) => it.fold(first.clone(), |acc, m| acc.gcd(m)),
        }
    }

    fn check_same(&self, other: &Self) -> Result<(), ArithError> {
        if same_table(&self.vars, &other.vars) {
            Ok(())
        } else {
            Err(ArithError::VariableMismatch)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, ArithError> {
        self.check_same(other)?;
        let (mut big, small) = if self.len() >= other.len() { (self.clone(), other) } else { (other.clone(), self) };
        for (m, c) in &small.terms {
            big.add_term(m.clone(), c);
        }
        Ok(big)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, ArithError> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), &-c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, ArithError> {
        self.check_same(other)?;
        let mut out = Self::zero(&self.vars);
        if self.is_zero() || other.is_zero() {
            return Ok(out);
        }
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), &(ca * cb));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &ExactRational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        let terms = self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect();
        SparsePolynomial { vars: self.vars.clone(), terms }
    }

    /// `self * c * m`.
    pub fn mul_term(&self, m: &Monomial, c: &ExactRational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        // Multiplying by a monomial preserves the relative order of terms.
        let terms = self.terms.iter().map(|(t, a)| (t.mul(m), a * c)).collect();
        SparsePolynomial { vars: self.vars.clone(), terms }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.vars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Divides every monomial by `m`; fails if some term is not divisible.
    pub fn div_monomial(&self, m: &Monomial) -> Result<Self, ArithError> {
        let mut terms = BTreeMap::new();
        for (t, c) in &self.terms {
            terms.insert(t.checked_div(m).ok_or(ArithError::Inexact)?, c.clone());
        }
        Ok(SparsePolynomial { vars: self.vars.clone(), terms })
    }

    /// Exact quotient `self / divisor`, or [`ArithError::Inexact`].
    ///
    /// Repeated leading-term division; stops at the first leading term of the
    /// remainder that the divisor's leading monomial does not divide.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self, ArithError> {
        self.check_same(divisor)?;
        let (lm, lc) = divisor.leading_term().ok_or(ArithError::DivisionByZero)?;
        if let Some(c) = divisor.constant_value() {
            return Ok(self.scale(&c.recip()?));
        }
        if divisor.len() == 1 {
            let inv = lc.recip()?;
            return Ok(self.div_monomial(lm)?.scale(&inv));
        }
        let lc_inv = lc.recip()?;
        let mut rem = self.clone();
        let mut quot = Self::zero(&self.vars);
        while let Some((rm, rc)) = rem.leading_term() {
            let qm = rm.checked_div(lm).ok_or(ArithError::Inexact)?;
            let qc = rc * &lc_inv;
            for (dm, dc) in divisor.terms.iter() {
                rem.add_term(dm.mul(&qm), &-(dc * &qc));
            }
            quot.add_term(qm, &qc);
        }
        Ok(quot)
    }

    /// Replaces variable `i` by `values[i]`; the result lives over the
    /// values' common table.
    pub fn substitute(&self, values: &[SparsePolynomial]) -> Result<Self, ArithError> {
        assert_eq!(values.len(), self.vars.len(), "one value per variable required");
        let target = match values.first() {
            Some(v) => v.vars.clone(),
            None => return Ok(self.clone()),
        };
        let mut cache: Vec<Vec<SparsePolynomial>> = vec![Vec::new(); values.len()];
        let mut out = Self::zero(&target);
        for (m, c) in &self.terms {
            let mut t = Self::constant(&target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                values[i].check_same(&t)?;
                let powers = &mut cache[i];
                if powers.is_empty() {
                    powers.push(values[i].clone());
                }
                while powers.len() < e as usize {
                    let next = &powers[powers.len() - 1] * &values[i];
                    powers.push(next);
                }
                t = &t * &powers[e as usize - 1];
            }
            out = out.checked_add(&t)?;
        }
        Ok(out)
    }

    pub fn evaluate(&self, point: &[ExactRational]) -> ExactRational {
        assert_eq!(point.len(), self.vars.len(), "one value per variable required");
        let mut acc = ExactRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t = &t * &point[i].pow(e);
                }
            }
            acc += &t;
        }
        acc
    }

    /// Moves the polynomial into `target`, sending variable `i` to `map[i]`.
    pub fn remap(&self, target: &Arc<VariableTable>, map: &[usize]) -> Self {
        assert_eq!(map.len(), self.vars.len());
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0u32; target.len()];
            for (i, &x) in m.exponents().iter().enumerate() {
                e[map[i]] += x;
            }
            out.add_term(Monomial::from_exponents(e), c);
        }
        out
    }

    /// Same terms over a table with identical names (e.g. different frozen flags).
    pub fn rebind(&self, target: &Arc<VariableTable>) -> Result<Self, ArithError> {
        if target.names() != self.vars.names() {
            return Err(ArithError::VariableMismatch);
        }
        Ok(SparsePolynomial { vars: target.clone(), terms: self.terms.clone() })
    }

    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            vars: self.vars.names().to_vec(),
            terms: self
                .terms
                .iter()
                .rev()
                .map(|(m, c)| TermJson { coef: c.to_string(), exps: m.exponents().to_vec() })
                .collect(),
        }
    }

    pub fn from_json(json: &PolyJson, vars: &Arc<VariableTable>) -> Result<Self, ArithError> {
        if json.vars != vars.names() {
            return Err(ArithError::VariableMismatch);
        }
        let mut terms = Vec::with_capacity(json.terms.len());
        for t in &json.terms {
            if t.exps.len() != vars.len() {
                return Err(ArithError::Parse("exponent vector has wrong length".into()));
            }
            terms.push((Monomial::from_exponents(t.exps.clone()), t.coef.parse()?));
        }
        Ok(Self::from_terms(vars, terms))
    }
}

/// Formats one signed term; `first` controls the leading separator.
pub(crate) fn write_term(out: &mut String, m: &Monomial, c: &ExactRational, names: &[String], first: bool) {
    let neg = c.is_negative();
    let abs = c.abs();
    if first {
        if neg {
            out.push('-');
        }
    } else {
        out.push_str(if neg { " - " } else { " + " });
    }
    if m.is_one() {
        out.push_str(&abs.to_string());
    } else if abs.is_one() {
        out.push_str(&m.render(names));
    } else {
        out.push_str(&abs.to_string());
        out.push('*');
        out.push_str(&m.render(names));
    }
}

impl fmt::Display for SparsePolynomial {
    /// Terms in descending degrevlex order, `c*x^e*...` joined by ` + `/` - `.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut s = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            write_term(&mut s, m, c, self.vars.names(), i == 0);
        }
        f.write_str(&s)
    }
}

macro_rules! poly_op {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl<'a> $tr<&'a SparsePolynomial> for &'a SparsePolynomial {
            type Output = SparsePolynomial;
            /// Panics if the operands use different variable tables.
            fn $m(self, rhs: &SparsePolynomial) -> SparsePolynomial {
                self.$checked(rhs).expect("polynomial operands over different variable tables")
            }
        }
        impl $tr<SparsePolynomial> for SparsePolynomial {
            type Output = SparsePolynomial;
            fn $m(self, rhs: SparsePolynomial) -> SparsePolynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
poly_op!(Add, add, checked_add);
poly_op!(Sub, sub, checked_sub);
poly_op!(Mul, mul, checked_mul);

impl Neg for &SparsePolynomial {
    type Output = SparsePolynomial;
    fn neg(self) -> SparsePolynomial {
        self.scale(&ExactRational::from_integer(-1))
    }
}

impl Neg for SparsePolynomial {
    type Output = SparsePolynomial;
    fn neg(self) -> SparsePolynomial {
        -&self
    }
}

/// Determinant with the default size bound.
pub fn poly_det(m: &[Vec<SparsePolynomial>]) -> Result<SparsePolynomial, ArithError> {
    poly_det_with_bound(m, DEFAULT_DET_BOUND)
}

/// Determinant by cofactor expansion along the row with the fewest nonzero
/// entries. The empty matrix has no table to return, so size 0 is rejected.
pub fn poly_det_with_bound(m: &[Vec<SparsePolynomial>], bound: usize) -> Result<SparsePolynomial, ArithError> {
    let n = m.len();
    for row in m {
        if row.len() != n {
            return Err(ArithError::NotSquare { rows: n, cols: row.len() });
        }
    }
    if n == 0 {
        return Err(ArithError::NotSquare { rows: 0, cols: 0 });
    }
    if n > bound {
        return Err(ArithError::TooLarge { size: n, bound });
    }
    let vars = m[0][0].vars.clone();
    for row in m {
        for e in row {
            if !same_table(&e.vars, &vars) {
                return Err(ArithError::VariableMismatch);
            }
        }
    }
    let rows: Vec<usize> = (0..n).collect();
    let cols: Vec<usize> = (0..n).collect();
    Ok(det_rec(m, &rows, &cols, &vars))
}

fn det_rec(m: &[Vec<SparsePolynomial>], rows: &[usize], cols: &[usize], vars: &Arc<VariableTable>) -> SparsePolynomial {
    match rows.len() {
        1 => return m[rows[0]][cols[0]].clone(),
        2 => {
            let (r0, r1, c0, c1) = (rows[0], rows[1], cols[0], cols[1]);
            return &(&m[r0][c0] * &m[r1][c1]) - &(&m[r0][c1] * &m[r1][c0]);
        }
        _ => {}
    }
    let pivot = (0..rows.len())
        .min_by_key(|&r| cols.iter().filter(|&&c| !m[rows[r]][c].is_zero()).count())
        .unwrap();
    let sub_rows: Vec<usize> = rows.iter().enumerate().filter(|(i, _)| *i != pivot).map(|(_, r)| *r).collect();
    let mut acc = SparsePolynomial::zero(vars);
    for (j, &c) in cols.iter().enumerate() {
        let entry = &m[rows[pivot]][c];
        if entry.is_zero() {
            continue;
        }
        let sub_cols: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let minor = det_rec(m, &sub_rows, &sub_cols, vars);
        let term = entry * &minor;
        acc = if (pivot + j) % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::parse_polynomial;

    fn table(names: &[&str]) -> Arc<VariableTable> {
        VariableTable::plain(names.iter().copied()).unwrap().shared()
    }

    fn p(t: &Arc<VariableTable>, s: &str) -> SparsePolynomial {
        parse_polynomial(s, t).unwrap()
    }

    #[test]
    fn add_cancels() {
        let t = table(&["x", "y"]);
        assert_eq!(&p(&t, "x+1") + &p(&t, "x-1"), p(&t, "2*x"));
        assert_eq!(&p(&t, "x+y") * &p(&t, "x-y"), p(&t, "x^2-y^2"));
        assert!((&SparsePolynomial::zero(&t) * &p(&t, "x^3+7*y")).is_zero());
    }

    #[test]
    fn mismatched_tables_rejected() {
        let a = table(&["x"]);
        let b = table(&["y"]);
        assert_eq!(p(&a, "x").checked_add(&p(&b, "y")), Err(ArithError::VariableMismatch));
    }

    #[test]
    fn exact_division() {
        let t = table(&["x", "y"]);
        assert_eq!(p(&t, "x^2-y^2").exact_div(&p(&t, "x-y")).unwrap(), p(&t, "x+y"));
        assert_eq!(p(&t, "x^2+1").exact_div(&p(&t, "x")), Err(ArithError::Inexact));
        assert_eq!(p(&t, "x").exact_div(&SparsePolynomial::zero(&t)), Err(ArithError::DivisionByZero));
        assert_eq!(p(&t, "2*x+4").exact_div(&p(&t, "2")).unwrap(), p(&t, "x+2"));
    }

    #[test]
    fn display_format() {
        let t = table(&["x", "y"]);
        assert_eq!(p(&t, "1 - x*y + 3*x^2 - 1/2*y").to_string(), "3*x^2 - x*y - 1/2*y + 1");
        assert_eq!(p(&t, "-x - 1").to_string(), "-x - 1");
        assert_eq!(SparsePolynomial::zero(&t).to_string(), "0");
    }

    #[test]
    fn json_round_trip() {
        let t = table(&["x", "y"]);
        let a = p(&t, "3/4*x^2*y - y + 2");
        let j = a.to_json();
        assert_eq!(j.terms[0].coef, "3/4");
        let s = serde_json::to_string(&j).unwrap();
        let back: PolyJson = serde_json::from_str(&s).unwrap();
        assert_eq!(SparsePolynomial::from_json(&back, &t).unwrap(), a);
    }

    #[test]
    fn determinants() {
        let t = table(&["a", "b", "c", "d"]);
        let m = vec![vec![p(&t, "a"), p(&t, "b")], vec![p(&t, "c"), p(&t, "d")]];
        assert_eq!(poly_det(&m).unwrap(), p(&t, "a*d - b*c"));
        let bad = vec![vec![p(&t, "a"), p(&t, "b")]];
        assert!(matches!(poly_det(&bad), Err(ArithError::NotSquare { .. })));
        let one = p(&t, "1");
        let zero = SparsePolynomial::zero(&t);
        let id: Vec<Vec<_>> =
            (0..3).map(|i| (0..3).map(|j| if i == j { one.clone() } else { zero.clone() }).collect()).collect();
        assert!(poly_det(&id).unwrap().is_one());
        let big: Vec<Vec<_>> = (0..9).map(|_| vec![one.clone(); 9]).collect();
        assert!(matches!(poly_det(&big), Err(ArithError::TooLarge { .. })));
    }

    #[test]
    fn substitute_and_evaluate() {
        let t = table(&["x", "y"]);
        let f = p(&t, "x^2*y + y");
        let g = f.substitute(&[p(&t, "x+y"), p(&t, "2")]).unwrap();
        assert_eq!(g, p(&t, "2*x^2 + 4*x*y + 2*y^2 + 2"));
        let v = f.evaluate(&[ExactRational::from_integer(3), ExactRational::new(1, 2).unwrap()]);
        assert_eq!(v, ExactRational::from_integer(5));
    }
}
