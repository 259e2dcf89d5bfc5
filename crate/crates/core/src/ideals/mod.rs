//! Polynomial ideals at desk scale: Buchberger bases, membership, monomial
//! saturation, and the exchange ideals attached to walks in the exchange tree.

mod exchange;
mod groebner;
mod gr36;

pub use exchange::{
    b2_presentation_report, b2_seed, crosscheck_samples, B2_WALKS,
    clusterradical_crosscheck, exchange_ideal, exchange_ideal_tree, formal_ring, mutable_product, present,
    random_polynomial, saturated_exchange_ideal, vanishes_on, vanishes_on_pattern, FormalVariableJson, Presentation,
};
pub use gr36::{gr36_certificate_check, in_linear_span};
pub use groebner::{buchberger, GroebnerBasis, GroebnerBudget, GroebnerStats, MonomialOrder};

use std::sync::{Arc, OnceLock};

use thiserror::Error;

use crate::arith::{ArithError, Monomial, SparsePolynomial, VariableTable};
use crate::models::ModelError;
use crate::quiver::QuiverError;
use crate::seed::SeedError;

/// Name of the auxiliary variable adjoined by [`saturate`].
pub const SATURATION_VARIABLE: &str = "__t";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdealError {
    #[error("Gröbner budget exceeded after {} reduced pairs (basis peak {}, largest polynomial {} terms)", .0.pairs_reduced, .0.basis_peak, .0.largest_poly)]
    BudgetExceeded(GroebnerStats),
    #[error("polynomials live over different variable tables")]
    VariableMismatch,
    #[error("variable name `{0}` is reserved")]
    ReservedName(String),
    #[error("{0}")]
    TooLarge(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Seed(#[from] SeedError),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// Generators of an ideal together with the monomial order used for its
/// Gröbner basis, which is computed once and cached.
#[derive(Clone, Debug)]
pub struct IdealBasis {
    vars: Arc<VariableTable>,
    generators: Vec<SparsePolynomial>,
    order: MonomialOrder,
    cache: OnceLock<GroebnerBasis>,
}

impl IdealBasis {
    pub fn new(
        vars: &Arc<VariableTable>,
        generators: Vec<SparsePolynomial>,
        order: MonomialOrder,
    ) -> Result<Self, IdealError> {
        if generators.iter().any(|g| **g.vars() != **vars) {
            return Err(IdealError::VariableMismatch);
        }
        Ok(IdealBasis { vars: vars.clone(), generators, order, cache: OnceLock::new() })
    }

    pub fn vars(&self) -> &Arc<VariableTable> {
        &self.vars
    }

    pub fn generators(&self) -> &[SparsePolynomial] {
        &self.generators
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn cached(&self) -> Option<&GroebnerBasis> {
        self.cache.get()
    }

    pub fn groebner(&self) -> Result<&GroebnerBasis, IdealError> {
        self.groebner_with(&GroebnerBudget::default())
    }

    pub fn groebner_with(&self, budget: &GroebnerBudget) -> Result<&GroebnerBasis, IdealError> {
        if let Some(g) = self.cache.get() {
            return Ok(g);
        }
        let g = buchberger(&self.vars, &self.generators, &self.order, budget)?;
        Ok(self.cache.get_or_init(|| g))
    }
}

/// The reduced Gröbner basis of `ideal` under its order.
pub fn groebner(ideal: &IdealBasis) -> Result<GroebnerBasis, IdealError> {
    ideal.groebner().cloned()
}

pub fn member(f: &SparsePolynomial, ideal: &IdealBasis) -> Result<bool, IdealError> {
    ideal.groebner()?.contains(f)
}

/// `(I : M^∞)`, computed by eliminating `__t` from `I + <1 - __t * M>` with a
/// block order. The result is returned as the reduced basis of the
/// elimination ideal, under the order of `ideal`.
pub fn saturate(ideal: &IdealBasis, m: &Monomial) -> Result<IdealBasis, IdealError> {
    let vars = ideal.vars();
    if vars.index_of(SATURATION_VARIABLE).is_some() {
        return Err(IdealError::ReservedName(SATURATION_VARIABLE.into()));
    }
    if m.nvars() != vars.len() {
        return Err(IdealError::VariableMismatch);
    }
    let names = std::iter::once(SATURATION_VARIABLE.to_string()).chain(vars.names().iter().cloned());
    let frozen = std::iter::once(false).chain(vars.frozen_mask().iter().copied());
    let big = VariableTable::new(names, frozen)?.shared();
    let shift: Vec<usize> = (1..=vars.len()).collect();
    let mut gens: Vec<SparsePolynomial> = ideal.generators().iter().map(|g| g.remap(&big, &shift)).collect();
    let mut e = vec![0u32; big.len()];
    e[0] = 1;
    e[1..].copy_from_slice(m.exponents());
    let tm = SparsePolynomial::monomial(&big, Monomial::from_exponents(e), 1.into());
    gens.push(&SparsePolynomial::one(&big) - &tm);
    let inner = match ideal.order() {
        MonomialOrder::Block(first) => first.iter().map(|&i| i + 1).collect(),
        _ => Vec::new(),
    };
    let elim = MonomialOrder::Block(std::iter::once(0).chain(inner).collect());
    let g = buchberger(&big, &gens, &elim, &GroebnerBudget::default())?;
    let back: Vec<usize> = std::iter::once(0).chain(0..vars.len()).collect();
    let kept: Vec<SparsePolynomial> = g
        .polynomials()
        .into_iter()
        .filter(|p| p.terms().all(|(mono, _)| mono.exp(0) == 0))
        .map(|p| p.remap(vars, &back))
        .collect();
    IdealBasis::new(vars, kept, ideal.order().clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::parse_polynomial;

    fn ring() -> Arc<VariableTable> {
        VariableTable::plain(["x", "y", "z"]).unwrap().shared()
    }

    fn ideal(v: &Arc<VariableTable>, gens: &[&str]) -> IdealBasis {
        let gens = gens.iter().map(|s| parse_polynomial(s, v).unwrap()).collect();
        IdealBasis::new(v, gens, MonomialOrder::DegRevLex).unwrap()
    }

    #[test]
    fn saturation_examples() {
        let v = ring();
        let x = Monomial::variable(3, 0, 1);
        let j = saturate(&ideal(&v, &["x*y"]), &x).unwrap();
        assert_eq!(j.groebner().unwrap().render(), ["y"]);
        let j = saturate(&ideal(&v, &["x^2"]), &x).unwrap();
        assert!(j.groebner().unwrap().is_unit());
        // Saturating by a monomial coprime to everything changes nothing.
        let i = ideal(&v, &["x*y - z^2", "y^2 - x"]);
        let j = saturate(&i, &Monomial::variable(3, 2, 1)).unwrap();
        assert_eq!(j.groebner().unwrap().render(), i.groebner().unwrap().render());
    }

    #[test]
    fn membership_and_cache() {
        let v = ring();
        let i = ideal(&v, &["x^2 - y", "y^2 - x"]);
        assert!(i.cached().is_none());
        assert!(member(&parse_polynomial("x^4 - x", &v).unwrap(), &i).unwrap());
        assert!(i.cached().is_some());
        assert!(!member(&parse_polynomial("x - 1", &v).unwrap(), &i).unwrap());
    }

    #[test]
    fn reserved_name_rejected() {
        let v = VariableTable::plain(["x", SATURATION_VARIABLE]).unwrap().shared();
        let i = IdealBasis::new(&v, vec![SparsePolynomial::var(&v, 0)], MonomialOrder::DegRevLex).unwrap();
        assert!(matches!(saturate(&i, &Monomial::variable(2, 0, 1)), Err(IdealError::ReservedName(_))));
    }

    #[test]
    fn mismatched_tables_rejected() {
        let v = ring();
        let w = VariableTable::plain(["a"]).unwrap().shared();
        assert!(IdealBasis::new(&v, vec![SparsePolynomial::var(&w, 0)], MonomialOrder::Lex).is_err());
    }
}
