use std::sync::Arc;

use super::ModelError;
use crate::arith::{poly_det, SparsePolynomial, VariableTable};

/// A matrix of polynomials over one variable table, row-major.
pub type PolyMatrix = Vec<Vec<SparsePolynomial>>;

/// An `rows × cols` matrix of independent indeterminates `z_ij`.
///
/// Entries are named `z{i}{j}` (1-based) when both dimensions are at most 9,
/// and `z{i}_{j}` otherwise.
#[derive(Clone, Debug)]
pub struct GenericMatrix {
    rows: usize,
    cols: usize,
    vars: Arc<VariableTable>,
    entries: PolyMatrix,
}

impl GenericMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        let sep = if rows > 9 || cols > 9 { "_" } else { "" };
        Self::with_names(rows, cols, |i, j| format!("z{i}{sep}{j}")).expect("generated names are distinct")
    }

    /// Entries named by `name(i, j)` for 1-based `i, j`.
    pub fn with_names(rows: usize, cols: usize, name: impl Fn(usize, usize) -> String) -> Result<Self, ModelError> {
        if rows == 0 || cols == 0 {
            return Err(ModelError::Argument("generic matrix needs positive dimensions".into()));
        }
        let names: Vec<String> = (1..=rows).flat_map(|i| (1..=cols).map(move |j| (i, j))).map(|(i, j)| name(i, j)).collect();
        let vars = VariableTable::plain(names)?.shared();
        let entries =
            (0..rows).map(|i| (0..cols).map(|j| SparsePolynomial::var(&vars, i * cols + j)).collect()).collect();
        Ok(GenericMatrix { rows, cols, vars, entries })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn vars(&self) -> &Arc<VariableTable> {
        &self.vars
    }

    /// Entry `z_ij`, 1-based.
    pub fn entry(&self, i: usize, j: usize) -> &SparsePolynomial {
        &self.entries[i - 1][j - 1]
    }

    pub fn entries(&self) -> &PolyMatrix {
        &self.entries
    }

    /// Minor on 1-based ascending row and column sets.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> Result<SparsePolynomial, ModelError> {
        minor_of(&self.entries, rows, cols)
    }

    /// Maximal minor on the columns `cols`.
    pub fn plucker(&self, cols: &[usize]) -> Result<SparsePolynomial, ModelError> {
        if cols.len() != self.rows {
            return Err(ModelError::Argument(format!("Plücker index set {cols:?} must have {} elements", self.rows)));
        }
        self.minor(&(1..=self.rows).collect::<Vec<_>>(), cols)
    }

    /// Minor on the columns `cols` and the top `|cols|` rows of a square matrix.
    pub fn flag_minor(&self, cols: &[usize]) -> Result<SparsePolynomial, ModelError> {
        if cols.is_empty() || cols.len() >= self.cols {
            return Err(ModelError::Argument(format!("flag minor index set {cols:?} must be a nonempty proper subset")));
        }
        self.minor(&(1..=cols.len()).collect::<Vec<_>>(), cols)
    }
}

/// Minor of `m` on 1-based strictly increasing `rows` and `cols`; the empty
/// minor is 1.
pub fn minor_of(m: &[Vec<SparsePolynomial>], rows: &[usize], cols: &[usize]) -> Result<SparsePolynomial, ModelError> {
    let nrows = m.len();
    let ncols = m.first().map_or(0, |r| r.len());
    check_index_set(rows, nrows, "row")?;
    check_index_set(cols, ncols, "column")?;
    if rows.len() != cols.len() {
        return Err(ModelError::Argument(format!("row set {rows:?} and column set {cols:?} differ in size")));
    }
    if rows.is_empty() {
        return Ok(SparsePolynomial::one(m[0][0].vars()));
    }
    let sub: PolyMatrix = rows.iter().map(|&i| cols.iter().map(|&j| m[i - 1][j - 1].clone()).collect()).collect();
    Ok(poly_det(&sub)?)
}

fn check_index_set(set: &[usize], bound: usize, what: &str) -> Result<(), ModelError> {
    if set.iter().any(|&x| x == 0 || x > bound) || set.windows(2).any(|w| w[0] >= w[1]) {
        return Err(ModelError::Argument(format!("{what} set {set:?} must be strictly increasing within 1..={bound}")));
    }
    Ok(())
}

/// `P_J` on a fresh generic `a × b` matrix.
pub fn plucker(a: usize, b: usize, j: &[usize]) -> Result<SparsePolynomial, ModelError> {
    GenericMatrix::new(a, b).plucker(j)
}

/// Flag minor `P_J` on a fresh generic `k × k` matrix.
pub fn flag_minor(k: usize, j: &[usize]) -> Result<SparsePolynomial, ModelError> {
    GenericMatrix::new(k, k).flag_minor(j)
}

/// All `r`-subsets of `1..=n` in lexicographic order.
pub fn subsets(n: usize, r: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for x in start..=n {
            if n + 1 - x < r - cur.len() {
                break;
            }
            cur.push(x);
            go(x + 1, n, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, n, r, &mut Vec::new(), &mut out);
    out
}
