use std::cmp::Ordering;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::IdealError;
use crate::arith::{ExactRational, Monomial, SparsePolynomial, VariableTable};

/// Monomial orders available to Gröbner computations. Variable `0` is the
/// largest variable in each of them.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MonomialOrder {
    DegRevLex,
    Lex,
    /// Elimination order: degrevlex on the listed variables first, ties
    /// broken by degrevlex on the remaining ones.
    Block(Vec<usize>),
}

fn degrevlex_on(a: &Monomial, b: &Monomial, keep: impl Fn(usize) -> bool) -> Ordering {
    let (ea, eb) = (a.exponents(), b.exponents());
    let deg = |e: &[u32]| -> u64 { e.iter().enumerate().filter(|(i, _)| keep(*i)).map(|(_, &x)| x as u64).sum() };
    match deg(ea).cmp(&deg(eb)) {
        Ordering::Equal => {}
        o => return o,
    }
    for i in (0..ea.len()).rev() {
        if keep(i) && ea[i] != eb[i] {
            return eb[i].cmp(&ea[i]);
        }
    }
    Ordering::Equal
}

impl MonomialOrder {
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::DegRevLex => degrevlex_on(a, b, |_| true),
            MonomialOrder::Lex => a.exponents().cmp(b.exponents()),
            MonomialOrder::Block(first) => {
                degrevlex_on(a, b, |i| first.contains(&i)).then_with(|| degrevlex_on(a, b, |i| !first.contains(&i)))
            }
        }
    }
}

/// Terms in ascending order, so the leading term is the last one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct OrderedPoly(Vec<(Monomial, ExactRational)>);

impl OrderedPoly {
    pub(crate) fn from_sparse(f: &SparsePolynomial, order: &MonomialOrder) -> Self {
        let mut terms: Vec<(Monomial, ExactRational)> = f.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        terms.sort_by(|x, y| order.compare(&x.0, &y.0));
        OrderedPoly(terms)
    }

    pub(crate) fn to_sparse(&self, vars: &Arc<VariableTable>) -> SparsePolynomial {
        SparsePolynomial::from_terms(vars, self.0.iter().cloned())
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn lead(&self) -> &(Monomial, ExactRational) {
        self.0.last().expect("nonzero polynomial")
    }

    fn lm(&self) -> &Monomial {
        &self.lead().0
    }

    fn is_constant(&self) -> bool {
        self.0.len() == 1 && self.lm().is_one()
    }

    fn make_monic(&mut self) {
        let inv = self.lead().1.recip().expect("nonzero leading coefficient");
        for (_, c) in &mut self.0 {
            *c *= &inv;
        }
    }

    /// `self - c * m * g`.
    fn sub_scaled(&self, c: &ExactRational, m: &Monomial, g: &OrderedPoly, order: &MonomialOrder) -> OrderedPoly {
        let mut out = Vec::with_capacity(self.0.len() + g.0.len());
        let mut a = self.0.iter().peekable();
        let mut b = g.0.iter().map(|(gm, gc)| (gm.mul(m), gc * c)).peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(a.next().unwrap().clone()),
                (None, Some(_)) => {
                    let (m, c) = b.next().unwrap();
                    out.push((m, -c));
                }
                (Some(x), Some(y)) => match order.compare(&x.0, &y.0) {
                    Ordering::Less => out.push(a.next().unwrap().clone()),
                    Ordering::Greater => {
                        let (m, c) = b.next().unwrap();
                        out.push((m, -c));
                    }
                    Ordering::Equal => {
                        let (m, c) = b.next().unwrap();
                        let s = &a.next().unwrap().1 - &c;
                        if !s.is_zero() {
                            out.push((m, s));
                        }
                    }
                },
            }
        }
        OrderedPoly(out)
    }

    /// Full reduction modulo `basis`.
    fn reduce(&self, basis: &[OrderedPoly], order: &MonomialOrder) -> OrderedPoly {
        let mut p = self.clone();
        let mut rem: Vec<(Monomial, ExactRational)> = Vec::new();
        while let Some((lm, lc)) = p.0.last().cloned() {
            match basis.iter().find(|g| g.lm().divides(&lm)) {
                Some(g) => {
                    let q = lm.checked_div(g.lm()).expect("divisible");
                    let c = lc.checked_div(&g.lead().1).expect("nonzero");
                    p = p.sub_scaled(&c, &q, g, order);
                }
                None => {
                    rem.push(p.0.pop().unwrap());
                }
            }
        }
        rem.reverse();
        OrderedPoly(rem)
    }
}

/// Work limits for Buchberger's algorithm.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GroebnerBudget {
    pub max_pairs: usize,
    pub max_basis: usize,
    pub max_terms: usize,
}

impl Default for GroebnerBudget {
    fn default() -> Self {
        GroebnerBudget { max_pairs: 50_000, max_basis: 2_000, max_terms: 50_000 }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroebnerStats {
    pub pairs_created: usize,
    pub pairs_reduced: usize,
    pub skipped_coprime: usize,
    pub skipped_chain: usize,
    pub zero_reductions: usize,
    pub basis_peak: usize,
    pub largest_poly: usize,
}

/// A reduced Gröbner basis: monic, sorted by leading monomial, no leading
/// monomial divisible by another and no term reducible by another element.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    vars: Arc<VariableTable>,
    order: MonomialOrder,
    polys: Vec<OrderedPoly>,
    stats: GroebnerStats,
}

impl GroebnerBasis {
    pub fn vars(&self) -> &Arc<VariableTable> {
        &self.vars
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn stats(&self) -> GroebnerStats {
        self.stats
    }

    pub fn is_unit(&self) -> bool {
        self.polys.len() == 1 && self.polys[0].is_constant()
    }

    pub fn polynomials(&self) -> Vec<SparsePolynomial> {
        self.polys.iter().map(|p| p.to_sparse(&self.vars)).collect()
    }

    /// Leading monomials in basis order.
    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.polys.iter().map(|p| p.lm().clone()).collect()
    }

    /// Each element written from its leading term down.
    pub fn render(&self) -> Vec<String> {
        self.polys.iter().map(|p| render_ordered(p, &self.vars)).collect()
    }

    pub fn normal_form(&self, f: &SparsePolynomial) -> Result<SparsePolynomial, IdealError> {
        if f.vars() != &self.vars && **f.vars() != *self.vars {
            return Err(IdealError::VariableMismatch);
        }
        let p = OrderedPoly::from_sparse(f, &self.order);
        Ok(p.reduce(&self.polys, &self.order).to_sparse(&self.vars))
    }

    pub fn contains(&self, f: &SparsePolynomial) -> Result<bool, IdealError> {
        Ok(self.normal_form(f)?.is_zero())
    }
}

fn render_ordered(p: &OrderedPoly, vars: &Arc<VariableTable>) -> String {
    let mut out = String::new();
    for (k, (m, c)) in p.0.iter().rev().enumerate() {
        let neg = c.is_negative();
        let a = c.abs();
        let body = if m.is_one() {
            a.to_string()
        } else if a.is_one() {
            m.render(vars.names())
        } else {
            format!("{a}*{}", m.render(vars.names()))
        };
        match (k, neg) {
            (0, false) => out.push_str(&body),
            (0, true) => {
                out.push('-');
                out.push_str(&body);
            }
            (_, false) => {
                out.push_str(" + ");
                out.push_str(&body);
            }
            (_, true) => {
                out.push_str(" - ");
                out.push_str(&body);
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// Buchberger's algorithm with the normal selection strategy (smallest lcm
/// first, by degree and then by the order) and both of Buchberger's
/// criteria, followed by interreduction.
pub fn buchberger(
    vars: &Arc<VariableTable>,
    generators: &[SparsePolynomial],
    order: &MonomialOrder,
    budget: &GroebnerBudget,
) -> Result<GroebnerBasis, IdealError> {
    let mut stats = GroebnerStats::default();
    let mut g: Vec<OrderedPoly> = Vec::new();
    for f in generators {
        if f.vars() != vars && **f.vars() != **vars {
            return Err(IdealError::VariableMismatch);
        }
        if f.is_zero() {
            continue;
        }
        let mut p = OrderedPoly::from_sparse(f, order);
        p.make_monic();
        g.push(p);
    }
    let unit = |stats| {
        let one = OrderedPoly(vec![(Monomial::one(vars.len()), ExactRational::one())]);
        GroebnerBasis { vars: vars.clone(), order: order.clone(), polys: vec![one], stats }
    };
    if g.iter().any(|p| p.is_constant()) {
        return Ok(unit(stats));
    }
    let mut pairs: Vec<Pair> = Vec::new();
    for j in 0..g.len() {
        for i in 0..j {
            pairs.push(Pair { i, j, lcm: g[i].lm().lcm(g[j].lm()) });
            stats.pairs_created += 1;
        }
    }
    while !pairs.is_empty() {
        let pick = (0..pairs.len())
            .min_by(|&x, &y| {
                let (p, q) = (&pairs[x], &pairs[y]);
                p.lcm
                    .degree()
                    .cmp(&q.lcm.degree())
                    .then_with(|| order.compare(&p.lcm, &q.lcm))
                    .then_with(|| (p.j, p.i).cmp(&(q.j, q.i)))
            })
            .expect("nonempty");
        let Pair { i, j, lcm } = pairs.swap_remove(pick);
        if g[i].lm().is_coprime(g[j].lm()) {
            stats.skipped_coprime += 1;
            continue;
        }
        let pending = |a: usize, b: usize| pairs.iter().any(|p| (p.i, p.j) == (a.min(b), a.max(b)));
        if (0..g.len()).any(|k| k != i && k != j && g[k].lm().divides(&lcm) && !pending(i, k) && !pending(j, k)) {
            stats.skipped_chain += 1;
            continue;
        }
        stats.pairs_reduced += 1;
        if stats.pairs_reduced > budget.max_pairs {
            return Err(IdealError::BudgetExceeded(stats));
        }
        let ui = lcm.checked_div(g[i].lm()).expect("lcm");
        let uj = lcm.checked_div(g[j].lm()).expect("lcm");
        let zero = OrderedPoly(Vec::new());
        let s = zero.sub_scaled(&-ExactRational::one(), &ui, &g[i], order).sub_scaled(&ExactRational::one(), &uj, &g[j], order);
        let mut r = s.reduce(&g, order);
        if r.is_zero() {
            stats.zero_reductions += 1;
            continue;
        }
        stats.largest_poly = stats.largest_poly.max(r.0.len());
        if r.0.len() > budget.max_terms {
            return Err(IdealError::BudgetExceeded(stats));
        }
        r.make_monic();
        if r.is_constant() {
            return Ok(unit(stats));
        }
        let new = g.len();
        for k in 0..new {
            pairs.push(Pair { i: k, j: new, lcm: g[k].lm().lcm(r.lm()) });
            stats.pairs_created += 1;
        }
        g.push(r);
        stats.basis_peak = stats.basis_peak.max(g.len());
        if g.len() > budget.max_basis {
            return Err(IdealError::BudgetExceeded(stats));
        }
    }
    Ok(GroebnerBasis { vars: vars.clone(), order: order.clone(), polys: interreduce(g, order), stats })
}

fn interreduce(mut g: Vec<OrderedPoly>, order: &MonomialOrder) -> Vec<OrderedPoly> {
    g.sort_by(|a, b| order.compare(a.lm(), b.lm()));
    let mut minimal: Vec<OrderedPoly> = Vec::new();
    for p in g {
        if !minimal.iter().any(|q| q.lm().divides(p.lm())) {
            minimal.push(p);
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<OrderedPoly> =
            minimal.iter().enumerate().filter(|&(x, _)| x != k).map(|(_, p)| p.clone()).collect();
        let mut r = minimal[k].reduce(&others, order);
        r.make_monic();
        out.push(r);
    }
    out
}
