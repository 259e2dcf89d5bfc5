//! Geometric realizations of seed patterns: cluster and frozen variables bound
//! to polynomials in the entries of generic matrices.
//!
//! Every model produces a [`ModelSeed`]. Checks return a [`Report`] with one
//! line per verified fact so that the CLI can print exactly what was tested.

mod classical;
mod grid;
mod minors;
mod quadric;
mod rectangles;
mod wiring;

pub use classical::{two_by_n_structure_check, two_by_n_seed, type_b_identity_suite, type_c_identity_suite, MAX_SUITE_RANK};
pub use grid::{grid_seed_k4, grid_seed_check};
pub use minors::{flag_minor, minor_of, plucker, subsets, GenericMatrix, PolyMatrix};
pub use quadric::{quadric_form, quadric_seed, quadric_check, verify_modulo};
pub use rectangles::{
    bordered_with_identity, cyclic_intervals, cyclic_shift_check, cyclic_shift_order, grassmannian_census,
    mat_seed, mat_transport, mat_transport_check, muir_embedding_check, rect_label, rectangles_label_check, rectangles_seed,
    GrassmannianCensus, MatTransport, RectLabel,
};
pub use wiring::{omega_identity_check, omega_report, sl5_catalog_check, special_wiring_seed};

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{ArithError, LaurentPolynomial, SparsePolynomial, VariableTable};
use crate::quiver::{ExtendedExchangeMatrix, QuiverError};
use crate::seed::{ClusterValue, Seed, SeedError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Seed(#[from] SeedError),
}

/// One verified (or refuted) fact.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckLine {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Outcome of a model verification.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub name: String,
    pub checks: Vec<CheckLine>,
    /// Informational lines, such as recorded signs. Never affect `passed`.
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(name: impl Into<String>) -> Self {
        Report { name: name.into(), ..Default::default() }
    }

    pub fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(CheckLine { name: name.into(), passed, detail: detail.into() });
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckLine> {
        self.checks.iter().filter(|c| !c.passed)
    }

    /// Appends the lines of `other`, prefixing their names with its report name.
    pub fn absorb(&mut self, other: Report) {
        for c in other.checks {
            self.checks.push(CheckLine { name: format!("{}: {}", other.name, c.name), ..c });
        }
        self.notes.extend(other.notes.into_iter().map(|n| format!("{}: {n}", other.name)));
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.name)?;
        for c in &self.checks {
            let tag = if c.passed { "PASS" } else { "FAIL" };
            if c.detail.is_empty() {
                writeln!(f, "  {tag} {}", c.name)?;
            } else {
                writeln!(f, "  {tag} {}: {}", c.name, c.detail)?;
            }
        }
        for n in &self.notes {
            writeln!(f, "  note: {n}")?;
        }
        write!(f, "{}", if self.passed() { "result: pass" } else { "result: FAIL" })
    }
}

/// A seed whose positions are bound to polynomials in some ambient ring.
///
/// `bindings[i]` is the value of row `i`; `layout` holds optional drawing
/// coordinates mirroring the figures (empty when there are none).
#[derive(Clone, Debug)]
pub struct ModelSeed {
    pub name: String,
    pub matrix: ExtendedExchangeMatrix,
    pub labels: Vec<String>,
    pub bindings: Vec<SparsePolynomial>,
    pub layout: Vec<(f64, f64)>,
}

impl ModelSeed {
    pub fn rank(&self) -> usize {
        self.matrix.n()
    }

    pub fn frozen_count(&self) -> usize {
        self.matrix.m() - self.matrix.n()
    }

    /// The ambient polynomial ring of the bindings.
    pub fn ring(&self) -> &Arc<VariableTable> {
        self.bindings[0].vars()
    }

    /// The abstract seed: labels become the initial variables.
    pub fn laurent_seed(&self) -> Result<Seed<LaurentPolynomial>, SeedError> {
        Seed::initial(self.matrix.clone(), self.labels.clone())
    }

    /// The seed with every position replaced by its binding.
    pub fn bound_seed(&self) -> Result<Seed<SparsePolynomial>, SeedError> {
        Seed::new(self.matrix.clone(), self.bindings.clone(), self.labels.clone())
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Arrows with at least one mutable endpoint, keyed by labels.
    pub fn labeled_arrows(&self) -> BTreeMap<(String, String), i64> {
        labeled_arrows(&self.matrix, &self.labels)
    }

    /// For each mutable position `k`, checks that `M1 + M2` is divisible by
    /// the binding of `k` in the ambient ring, and returns the quotients.
    pub fn exchange_check(&self, report: &mut Report) -> Vec<Option<SparsePolynomial>> {
        let seed = match self.bound_seed() {
            Ok(s) => s,
            Err(e) => {
                report.check("bound seed", false, e.to_string());
                return vec![None; self.rank()];
            }
        };
        (0..self.rank())
            .map(|k| {
                let res = seed
                    .exchange_monomials(k)
                    .map_err(|e| e.to_string())
                    .and_then(|(m1, m2)| m1.try_add(&m2).map_err(|e| e.to_string()))
                    .and_then(|s| s.exact_div(&self.bindings[k]).map_err(|e| e.to_string()));
                match res {
                    Ok(q) => {
                        report.check(format!("exchange at {}", self.labels[k]), true, "");
                        Some(q)
                    }
                    Err(e) => {
                        report.check(format!("exchange at {}", self.labels[k]), false, e);
                        None
                    }
                }
            })
            .collect()
    }
}

/// Arrows `(from, to) -> multiplicity` read from the positive entries,
/// skipping pairs of frozen vertices.
pub fn labeled_arrows(b: &ExtendedExchangeMatrix, labels: &[String]) -> BTreeMap<(String, String), i64> {
    let mut out = BTreeMap::new();
    for i in 0..b.m() {
        for j in 0..b.n() {
            let e = b.get(i, j);
            if e > 0 {
                out.insert((labels[i].clone(), labels[j].clone()), e);
            } else if e < 0 && i >= b.n() {
                out.insert((labels[j].clone(), labels[i].clone()), -e);
            }
        }
    }
    out
}

/// `P` followed by the indices, joined with `_` once any index has two digits.
pub fn subset_label(set: &[usize]) -> String {
    let sep = if set.iter().any(|&x| x >= 10) { "_" } else { "" };
    format!("P{}", set.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep))
}

/// Sign `s` with `a == s * b` for `s = ±1`, if any.
pub fn sign_relation(a: &SparsePolynomial, b: &SparsePolynomial) -> Option<i8> {
    if a == b {
        Some(1)
    } else if a == &-b {
        Some(-1)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_display_and_pass() {
        let mut r = Report::new("demo");
        assert!(!r.passed());
        r.check("one", true, "");
        r.note("sign +1");
        assert!(r.passed());
        r.check("two", false, "x != y");
        assert!(!r.passed());
        let s = r.to_string();
        assert!(s.contains("PASS one"));
        assert!(s.contains("FAIL two: x != y"));
        assert!(s.ends_with("result: FAIL"));
    }

    #[test]
    fn subset_labels() {
        assert_eq!(subset_label(&[1, 3, 5]), "P135");
        assert_eq!(subset_label(&[2, 10]), "P2_10");
    }
}
