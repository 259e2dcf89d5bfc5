//! Labeled seeds, seed mutation and seed-pattern enumeration.

mod enumerate;
mod formal;

pub use enumerate::{
    enumerate_pattern, enumerate_pattern_with, laurent_sharpness_check, FrontierOrder, PatternSummary, RelationRecord,
    DEFAULT_SEED_BUDGET,
};
pub use formal::{exchange_relations_along, FormalRelation, FormalTree, FormalVariableSet};

use std::fmt;
use std::hash::Hash;
use std::sync::Arc;

use thiserror::Error;

use crate::arith::{ArithError, LaurentPolynomial, SparsePolynomial, VariableTable};
use crate::quiver::{ExtendedExchangeMatrix, QuiverError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeedError {
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("exact division failed while mutating at vertex {vertex}: {source}")]
    ExactDivisionFailed { vertex: usize, source: ArithError },
    #[error("malformed seed: {0}")]
    Shape(String),
    #[error("seed budget must be at least 1")]
    InvalidBudget,
}

/// Values that can sit in an extended cluster.
///
/// Laurent polynomials in the initial variables are the generic choice;
/// polynomials in matrix entries serve bound models where every cluster
/// variable is known to be a genuine polynomial.
pub trait ClusterValue: Clone + Eq + Hash + Send + Sync + fmt::Display + fmt::Debug {
    fn one_like(&self) -> Self;
    fn try_mul(&self, other: &Self) -> Result<Self, ArithError>;
    fn try_add(&self, other: &Self) -> Result<Self, ArithError>;
    fn try_exact_div(&self, divisor: &Self) -> Result<Self, ArithError>;
    fn power(&self, e: u32) -> Self;
}

impl ClusterValue for LaurentPolynomial {
    fn one_like(&self) -> Self {
        LaurentPolynomial::one(self.vars())
    }
    fn try_mul(&self, other: &Self) -> Result<Self, ArithError> {
        self.checked_mul(other)
    }
    fn try_add(&self, other: &Self) -> Result<Self, ArithError> {
        self.checked_add(other)
    }
    fn try_exact_div(&self, divisor: &Self) -> Result<Self, ArithError> {
        self.exact_div(divisor)
    }
    fn power(&self, e: u32) -> Self {
        self.pow(e)
    }
}

impl ClusterValue for SparsePolynomial {
    fn one_like(&self) -> Self {
        SparsePolynomial::one(self.vars())
    }
    fn try_mul(&self, other: &Self) -> Result<Self, ArithError> {
        self.checked_mul(other)
    }
    fn try_add(&self, other: &Self) -> Result<Self, ArithError> {
        self.checked_add(other)
    }
    fn try_exact_div(&self, divisor: &Self) -> Result<Self, ArithError> {
        self.exact_div(divisor)
    }
    fn power(&self, e: u32) -> Self {
        self.pow(e)
    }
}

/// An extended cluster paired with an extended exchange matrix.
///
/// Position `i` of `cluster` and `labels` is row `i` of the matrix; positions
/// `n..m` are frozen and never change.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Seed<V> {
    matrix: ExtendedExchangeMatrix,
    cluster: Vec<V>,
    labels: Vec<String>,
}

impl<V: ClusterValue> Seed<V> {
    pub fn new(matrix: ExtendedExchangeMatrix, cluster: Vec<V>, labels: Vec<String>) -> Result<Self, SeedError> {
        if cluster.len() != matrix.m() || labels.len() != matrix.m() {
            return Err(SeedError::Shape(format!(
                "matrix has {} rows but cluster has {} entries and {} labels",
                matrix.m(),
                cluster.len(),
                labels.len()
            )));
        }
        Ok(Seed { matrix, cluster, labels })
    }

    pub fn matrix(&self) -> &ExtendedExchangeMatrix {
        &self.matrix
    }

    pub fn cluster(&self) -> &[V] {
        &self.cluster
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn rank(&self) -> usize {
        self.matrix.n()
    }

    /// The two monomials `M1 = ∏_{b_ik>0} x_i^{b_ik}` and `M2 = ∏_{b_ik<0} x_i^{-b_ik}`.
    pub fn exchange_monomials(&self, k: usize) -> Result<(V, V), SeedError> {
        if k >= self.matrix.n() {
            return Err(if k < self.matrix.m() {
                QuiverError::FrozenVertex { k: k + 1 }
            } else {
                QuiverError::IndexOutOfRange { k: k + 1, n: self.matrix.n() }
            }
            .into());
        }
        let one = self.cluster[0].one_like();
        let mut m1 = one.clone();
        let mut m2 = one;
        for (i, x) in self.cluster.iter().enumerate() {
            let b = self.matrix.get(i, k);
            if b > 0 {
                m1 = m1.try_mul(&x.power(b as u32))?;
            } else if b < 0 {
                m2 = m2.try_mul(&x.power((-b) as u32))?;
            }
        }
        Ok((m1, m2))
    }

    /// Seed mutation at mutable position `k` (0-based).
    pub fn mutate(&self, k: usize) -> Result<Self, SeedError> {
        let (m1, m2) = self.exchange_monomials(k)?;
        let matrix = self.matrix.mutate(k)?;
        let sum = m1.try_add(&m2)?;
        let new = sum
            .try_exact_div(&self.cluster[k])
            .map_err(|source| SeedError::ExactDivisionFailed { vertex: k + 1, source })?;
        let mut cluster = self.cluster.clone();
        cluster[k] = new;
        let mut labels = self.labels.clone();
        labels[k] = toggle_prime(&labels[k]);
        Ok(Seed { matrix, cluster, labels })
    }

    pub fn mutate_walk(&self, walk: &[usize]) -> Result<Self, SeedError> {
        let mut s = self.clone();
        for &k in walk {
            s = s.mutate(k)?;
        }
        Ok(s)
    }

    /// Equality of seeds after forgetting the order of positions: each
    /// mutable variable must carry the same column, read against the same
    /// row variables.
    pub fn same_up_to_relabeling(&self, other: &Self) -> bool {
        if self.matrix.n() != other.matrix.n() || self.matrix.m() != other.matrix.m() {
            return false;
        }
        let mut ids = std::collections::HashMap::new();
        let a = seed_key(self, &mut ids);
        let b = seed_key(other, &mut ids);
        a == b
    }

    pub fn map_values<W: ClusterValue>(&self, f: impl Fn(&V) -> W) -> Seed<W> {
        Seed { matrix: self.matrix.clone(), cluster: self.cluster.iter().map(f).collect(), labels: self.labels.clone() }
    }
}

impl Seed<LaurentPolynomial> {
    /// The initial seed whose cluster is the variables themselves, named by
    /// `labels`; rows `n..m` become frozen variables.
    pub fn initial(matrix: ExtendedExchangeMatrix, labels: Vec<String>) -> Result<Self, SeedError> {
        let n = matrix.n();
        let frozen: Vec<bool> = (0..labels.len()).map(|i| i >= n).collect();
        let table: Arc<VariableTable> = VariableTable::new(labels.iter().cloned(), frozen)?.shared();
        let cluster = (0..labels.len()).map(|i| LaurentPolynomial::var(&table, i)).collect();
        Seed::new(matrix, cluster, labels)
    }
}

fn toggle_prime(label: &str) -> String {
    match label.strip_suffix('\'') {
        Some(base) => base.to_string(),
        None => format!("{label}'"),
    }
}

/// Key identifying a seed up to reordering of positions. `ids` interns
/// values so that keys from the same map are comparable.
pub(crate) fn seed_key<V: ClusterValue>(
    seed: &Seed<V>,
    ids: &mut std::collections::HashMap<V, usize>,
) -> Vec<(usize, i64, Vec<(usize, i64)>)> {
    let mut intern = |v: &V| {
        let next = ids.len();
        *ids.entry(v.clone()).or_insert(next)
    };
    let row_ids: Vec<usize> = seed.cluster.iter().map(&mut intern).collect();
    key_from_ids(&seed.matrix, &row_ids)
}

pub(crate) fn key_from_ids(matrix: &ExtendedExchangeMatrix, row_ids: &[usize]) -> Vec<(usize, i64, Vec<(usize, i64)>)> {
    let mut key: Vec<(usize, i64, Vec<(usize, i64)>)> = (0..matrix.n())
        .map(|k| {
            let mut col: Vec<(usize, i64)> =
                (0..matrix.m()).filter(|&i| matrix.get(i, k) != 0).map(|i| (row_ids[i], matrix.get(i, k))).collect();
            col.sort_unstable();
            (row_ids[k], matrix.symmetrizer()[k], col)
        })
        .collect();
    key.sort_unstable();
    key
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::parse_laurent;

    fn labels(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn a2() -> Seed<LaurentPolynomial> {
        let b = ExtendedExchangeMatrix::from_rows(&[vec![0, 1], vec![-1, 0]], 2).unwrap();
        Seed::initial(b, labels(&["x1", "x2"])).unwrap()
    }

    #[test]
    fn rank_two_exchange() {
        let s = a2();
        let t = s.mutate(0).unwrap();
        let expect = parse_laurent("(x2 + 1)/x1", s.cluster()[0].vars()).unwrap();
        assert_eq!(t.cluster()[0], expect);
        assert_eq!(t.labels()[0], "x1'");
        assert_eq!(t.mutate(0).unwrap(), s);
    }

    #[test]
    fn five_periodicity() {
        let s = a2();
        let t = s.mutate_walk(&[0, 1, 0, 1, 0]).unwrap();
        assert!(t.same_up_to_relabeling(&s));
        assert!(!s.mutate(0).unwrap().same_up_to_relabeling(&s));
    }

    #[test]
    fn frozen_vertex_rejected() {
        let b = ExtendedExchangeMatrix::from_rows(&[vec![0], vec![1]], 1).unwrap();
        let s = Seed::initial(b, labels(&["x", "f"])).unwrap();
        assert!(matches!(s.mutate(1), Err(SeedError::Quiver(QuiverError::FrozenVertex { k: 2 }))));
        let t = s.mutate(0).unwrap();
        assert_eq!(t.cluster()[0].to_string(), "(f + 1)/(x)");
    }

    #[test]
    fn labels_must_match() {
        let b = ExtendedExchangeMatrix::zero(1, 1);
        let c = vec![LaurentPolynomial::one(&VariableTable::plain(["x"]).unwrap().shared())];
        assert!(Seed::new(b, c, vec![]).is_err());
    }
}
