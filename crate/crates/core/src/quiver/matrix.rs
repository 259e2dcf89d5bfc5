use rand::Rng;
use serde::{Deserialize, Serialize};

use super::QuiverError;

/// An `m × n` integer matrix whose top `n × n` block is skew-symmetrizable.
///
/// Rows `0..n` are the mutable vertices and rows `n..m` the frozen ones.
/// Columns are indexed by mutable vertices only, so arrows between two frozen
/// vertices have nowhere to live. Indices are 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtendedExchangeMatrix {
    n: usize,
    m: usize,
    entries: Vec<i64>,
    d: Vec<i64>,
}

/// Wire format `{n, m, d, entries, labels}` with `entries` as `m` rows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverJson {
    pub n: usize,
    pub m: usize,
    pub d: Vec<i64>,
    pub entries: Vec<Vec<i64>>,
    pub labels: Vec<String>,
}

impl ExtendedExchangeMatrix {
    pub fn new(n: usize, m: usize, entries: Vec<i64>, d: Vec<i64>) -> Result<Self, QuiverError> {
        if m < n {
            return Err(QuiverError::Shape(format!("m = {m} < n = {n}")));
        }
        if entries.len() != m * n {
            return Err(QuiverError::Shape(format!("expected {} entries, got {}", m * n, entries.len())));
        }
        if d.len() != n || d.iter().any(|&x| x <= 0) {
            return Err(QuiverError::Shape("symmetrizer must have n positive entries".into()));
        }
        let b = ExtendedExchangeMatrix { n, m, entries, d };
        if !b.is_skew_symmetrizable() {
            return Err(QuiverError::NotSkewSymmetrizable);
        }
        Ok(b)
    }

    /// Builds from `m` rows of length `n` with the symmetrizer all ones.
    pub fn from_rows(rows: &[Vec<i64>], n: usize) -> Result<Self, QuiverError> {
        Self::from_rows_with(rows, n, vec![1; n])
    }

    pub fn from_rows_with(rows: &[Vec<i64>], n: usize, d: Vec<i64>) -> Result<Self, QuiverError> {
        if let Some(r) = rows.iter().find(|r| r.len() != n) {
            return Err(QuiverError::Shape(format!("row of length {} in a matrix with {n} columns", r.len())));
        }
        Self::new(n, rows.len(), rows.concat(), d)
    }

    /// A quiver given by weighted arrows `(from, to, count)` on `m` vertices,
    /// the first `n` mutable. Arrows between two frozen vertices are dropped.
    pub fn from_arrows(n: usize, m: usize, arrows: &[(usize, usize, i64)]) -> Result<Self, QuiverError> {
        let mut entries = vec![0i64; m * n];
        for &(a, b, w) in arrows {
            if a >= m || b >= m || a == b {
                return Err(QuiverError::Shape(format!("bad arrow {a} -> {b}")));
            }
            if b < n {
                entries[a * n + b] += w;
            }
            if a < n {
                entries[b * n + a] -= w;
            }
        }
        Self::new(n, m, entries, vec![1; n])
    }

    pub fn zero(n: usize, m: usize) -> Self {
        ExtendedExchangeMatrix { n, m, entries: vec![0; m * n], d: vec![1; n] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn symmetrizer(&self) -> &[i64] {
        &self.d
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.n + j]
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        (0..self.m).map(|i| (0..self.n).map(|j| self.get(i, j)).collect()).collect()
    }

    /// Column `k` over all `m` rows.
    pub fn column(&self, k: usize) -> Vec<i64> {
        (0..self.m).map(|i| self.get(i, k)).collect()
    }

    pub fn is_skew_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| self.get(i, j) == -self.get(j, i)))
    }

    pub fn is_skew_symmetrizable(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| self.d[i] * self.get(i, j) == -self.d[j] * self.get(j, i)))
    }

    /// Matrix mutation at mutable vertex `k` (0-based).
    pub fn mutate(&self, k: usize) -> Result<Self, QuiverError> {
        if k >= self.m {
            return Err(QuiverError::IndexOutOfRange { k: k + 1, n: self.n });
        }
        if k >= self.n {
            return Err(QuiverError::FrozenVertex { k: k + 1 });
        }
        let n = self.n;
        let mut out = self.entries.clone();
        for i in 0..self.m {
            let bik = self.get(i, k);
            for j in 0..n {
                let idx = i * n + j;
                if i == k || j == k {
                    out[idx] = -self.entries[idx];
                } else if bik != 0 {
                    let bkj = self.get(k, j);
                    let prod = bik.checked_mul(bkj).ok_or(QuiverError::Overflow)?;
                    if prod > 0 {
                        let delta = bik.signum() * prod;
                        out[idx] = self.entries[idx].checked_add(delta).ok_or(QuiverError::Overflow)?;
                    }
                }
            }
        }
        Ok(ExtendedExchangeMatrix { n, m: self.m, entries: out, d: self.d.clone() })
    }

    /// Relabels the mutable vertices: new vertex `i` is old vertex `perm[i]`.
    /// Frozen rows keep their positions.
    pub fn permute_mutable(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n);
        let n = self.n;
        let row_of = |i: usize| if i < n { perm[i] } else { i };
        let mut entries = vec![0; self.m * n];
        for i in 0..self.m {
            for j in 0..n {
                entries[i * n + j] = self.get(row_of(i), perm[j]);
            }
        }
        let d = perm.iter().map(|&p| self.d[p]).collect();
        ExtendedExchangeMatrix { n, m: self.m, entries, d }
    }

    /// The `n × n` principal part as a matrix without frozen rows.
    pub fn principal(&self) -> Self {
        ExtendedExchangeMatrix {
            n: self.n,
            m: self.n,
            entries: self.entries[..self.n * self.n].to_vec(),
            d: self.d.clone(),
        }
    }

    pub fn to_json(&self, labels: &[String]) -> QuiverJson {
        QuiverJson {
            n: self.n,
            m: self.m,
            d: self.d.clone(),
            entries: self.rows(),
            labels: labels.to_vec(),
        }
    }

    pub fn from_json(json: &QuiverJson) -> Result<(Self, Vec<String>), QuiverError> {
        if json.entries.len() != json.m {
            return Err(QuiverError::Shape(format!("expected {} rows", json.m)));
        }
        let b = Self::from_rows_with(&json.entries, json.n, json.d.clone())?;
        let labels = if json.labels.is_empty() {
            (1..=json.m).map(|i| format!("x{i}")).collect()
        } else if json.labels.len() == json.m {
            json.labels.clone()
        } else {
            return Err(QuiverError::Shape("labels must have length m".into()));
        };
        Ok((b, labels))
    }
}

/// A random `n × n` skew-symmetrizable matrix with symmetrizer entries in
/// `{1, 2}` and `|b_ij| <= bound`.
pub fn random_skew_symmetrizable<R: Rng + ?Sized>(rng: &mut R, n: usize, bound: i64) -> ExtendedExchangeMatrix {
    let d: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=2)).collect();
    let mut entries = vec![0i64; n * n];
    for i in 0..n {
        for j in i + 1..n {
            let choices: Vec<i64> = (-bound..=bound)
                .filter(|&b| (d[i] * b) % d[j] == 0 && (d[i] * b / d[j]).abs() <= bound)
                .collect();
            let b = choices[rng.gen_range(0..choices.len())];
            entries[i * n + j] = b;
            entries[j * n + i] = -d[i] * b / d[j];
        }
    }
    ExtendedExchangeMatrix::new(n, n, entries, d).expect("constructed skew-symmetrizable")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_two_sign_flip() {
        let b = ExtendedExchangeMatrix::from_rows(&[vec![0, 1], vec![-1, 0]], 2).unwrap();
        let c = b.mutate(0).unwrap();
        assert_eq!(c.rows(), vec![vec![0, -1], vec![1, 0]]);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(
            ExtendedExchangeMatrix::from_rows(&[vec![0, 1], vec![1, 0]], 2),
            Err(QuiverError::NotSkewSymmetrizable)
        );
        let b = ExtendedExchangeMatrix::from_rows(&[vec![0], vec![1]], 1).unwrap();
        assert_eq!(b.mutate(1), Err(QuiverError::FrozenVertex { k: 2 }));
        assert_eq!(b.mutate(5), Err(QuiverError::IndexOutOfRange { k: 6, n: 1 }));
    }

    #[test]
    fn skew_symmetrizable_b2() {
        let b = ExtendedExchangeMatrix::from_rows_with(&[vec![0, 1], vec![-2, 0]], 2, vec![2, 1]).unwrap();
        let c = b.mutate(1).unwrap();
        assert!(c.is_skew_symmetrizable());
        assert_eq!(c.mutate(1).unwrap(), b);
    }

    #[test]
    fn frozen_rows_follow_rule() {
        // 1 -> 2, frozen 3 -> 1
        let b = ExtendedExchangeMatrix::from_arrows(2, 3, &[(0, 1, 1), (2, 0, 1)]).unwrap();
        let c = b.mutate(0).unwrap();
        // path 3 -> 1 -> 2 creates 3 -> 2
        assert_eq!(c.get(2, 1), 1);
        assert_eq!(c.get(2, 0), -1);
    }

    #[test]
    fn json_round_trip() {
        let b = ExtendedExchangeMatrix::from_arrows(2, 3, &[(0, 1, 2), (2, 0, 1)]).unwrap();
        let labels: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
        let j = b.to_json(&labels);
        let s = serde_json::to_string(&j).unwrap();
        let (b2, l2) = ExtendedExchangeMatrix::from_json(&serde_json::from_str(&s).unwrap()).unwrap();
        assert_eq!(b2, b);
        assert_eq!(l2, labels);
    }
}
