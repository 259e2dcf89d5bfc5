use std::collections::HashSet;

use rayon::prelude::*;

use super::{ExtendedExchangeMatrix, QuiverError};

/// Largest rank accepted by [`search_acyclic_in_mutation_class`].
pub const MAX_SEARCH_RANK: usize = 8;

/// True iff the mutable part has no directed cycle (`i -> j` iff `b_ij > 0`).
pub fn is_acyclic(b: &ExtendedExchangeMatrix) -> bool {
    let n = b.n();
    let mut indeg = vec![0usize; n];
    for i in 0..n {
        for j in 0..n {
            if b.get(i, j) > 0 {
                indeg[j] += 1;
            }
        }
    }
    let mut stack: Vec<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
    let mut seen = 0;
    while let Some(i) = stack.pop() {
        seen += 1;
        for j in 0..n {
            if b.get(i, j) > 0 {
                indeg[j] -= 1;
                if indeg[j] == 0 {
                    stack.push(j);
                }
            }
        }
    }
    seen == n
}

/// The 3-vertex quiver with `a` arrows 1→2, `b` arrows 2→3 and `c` arrows 3→1.
pub fn q_abc(a: i64, b: i64, c: i64) -> ExtendedExchangeMatrix {
    assert!(a >= 0 && b >= 0 && c >= 0, "arrow counts must be nonnegative");
    let rows = [vec![0, a, -c], vec![-a, 0, b], vec![c, -b, 0]];
    ExtendedExchangeMatrix::from_rows(&rows, 3).expect("skew-symmetric by construction")
}

/// `det [[2,a,c],[a,2,b],[c,b,2]] = 8 + 2abc - 2a² - 2b² - 2c²`.
pub fn bbh_determinant(a: i64, b: i64, c: i64) -> i64 {
    8 + 2 * a * b * c - 2 * a * a - 2 * b * b - 2 * c * c
}

/// Whether `Q(a,b,c)` is mutation-acyclic: false exactly when all of
/// `a, b, c >= 2` and the determinant above is nonnegative.
pub fn bbh_mutation_acyclic(a: i64, b: i64, c: i64) -> bool {
    !(a >= 2 && b >= 2 && c >= 2 && bbh_determinant(a, b, c) >= 0)
}

/// Minimum over all relabelings of the mutable vertices of the symmetrizer
/// followed by the row-major principal entries.
pub fn canonical_form(b: &ExtendedExchangeMatrix) -> Vec<i64> {
    let n = b.n();
    let key_for = |perm: &[usize]| -> Vec<i64> {
        let mut k = Vec::with_capacity(n + n * n);
        k.extend(perm.iter().map(|&p| b.symmetrizer()[p]));
        for &pi in perm {
            for &pj in perm {
                k.push(b.get(pi, pj));
            }
        }
        k
    };
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best = key_for(&perm);
    // Heap's algorithm, iterative.
    let mut c = vec![0usize; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            let k = key_for(&perm);
            if k < best {
                best = k;
            }
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    best
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    /// `path` lists 0-based mutation indices from the input to `matrix`.
    Found { matrix: ExtendedExchangeMatrix, depth: usize, path: Vec<usize> },
    /// No acyclic representative among the `visited` classes explored.
    /// `overflowed` counts mutations dropped because an entry left `i64`.
    Exhausted { visited: usize, depth_reached: usize, budget_hit: bool, overflowed: usize },
}

/// Breadth-first search of the mutation class for an acyclic quiver,
/// deduplicating by [`canonical_form`]. Children of one layer are computed in
/// parallel; dedup and selection run in a fixed order, so results are
/// deterministic.
pub fn search_acyclic_in_mutation_class(
    b: &ExtendedExchangeMatrix,
    depth: usize,
    node_budget: i64,
) -> Result<SearchOutcome, QuiverError> {
    if node_budget <= 0 {
        return Err(QuiverError::InvalidBudget);
    }
    if b.m() != b.n() || b.n() > MAX_SEARCH_RANK {
        return Err(QuiverError::UnsupportedSearch { max: MAX_SEARCH_RANK });
    }
    let budget = node_budget as usize;
    let mut visited: HashSet<Vec<i64>> = HashSet::new();
    visited.insert(canonical_form(b));
    let mut layer: Vec<(ExtendedExchangeMatrix, Vec<usize>)> = vec![(b.clone(), Vec::new())];
    let mut overflowed = 0;
    for d in 0..=depth {
        if let Some((m, path)) = layer.iter().find(|(m, _)| is_acyclic(m)) {
            return Ok(SearchOutcome::Found { matrix: m.clone(), depth: d, path: path.clone() });
        }
        if d == depth || layer.is_empty() {
            return Ok(SearchOutcome::Exhausted { visited: visited.len(), depth_reached: d, budget_hit: false, overflowed });
        }
        let n = b.n();
        let children: Vec<Result<(Vec<i64>, ExtendedExchangeMatrix, Vec<usize>), QuiverError>> = layer
            .par_iter()
            .flat_map_iter(|(m, path)| {
                (0..n).filter(move |&k| path.last() != Some(&k)).map(move |k| {
                    let c = m.mutate(k)?;
                    let mut p = path.clone();
                    p.push(k);
                    Ok((canonical_form(&c), c, p))
                })
            })
            .collect();
        let mut next = Vec::new();
        for child in children {
            let (key, c, p) = match child {
                Ok(x) => x,
                Err(QuiverError::Overflow) => {
                    overflowed += 1;
                    continue;
                }
                Err(e) => return Err(e),
            };
            if visited.insert(key) {
                if visited.len() > budget {
                    return Ok(SearchOutcome::Exhausted { visited: budget, depth_reached: d + 1, budget_hit: true, overflowed });
                }
                next.push((c, p));
            }
        }
        layer = next;
    }
    unreachable!("loop returns at d == depth")
}

/// All sources, then all sinks, of the mutable subquiver (0-based, ascending).
/// A vertex with no mutable neighbours counts as a source.
pub fn source_sink_sequence(b: &ExtendedExchangeMatrix) -> Result<Vec<usize>, QuiverError> {
    let n = b.n();
    let mut sources = Vec::new();
    let mut sinks = Vec::new();
    for i in 0..n {
        let out = (0..n).any(|j| b.get(i, j) > 0);
        let inc = (0..n).any(|j| b.get(i, j) < 0);
        match (out, inc) {
            (true, true) => return Err(QuiverError::NotBipartite(i + 1)),
            (_, false) => sources.push(i),
            (false, true) => sinks.push(i),
        }
    }
    sources.extend(sinks);
    Ok(sources)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn acyclicity() {
        assert!(!is_acyclic(&q_abc(3, 2, 1)));
        assert!(!is_acyclic(&q_abc(2, 2, 2)));
        let path = ExtendedExchangeMatrix::from_arrows(3, 3, &[(0, 1, 1), (1, 2, 1)]).unwrap();
        assert!(is_acyclic(&path));
        assert!(is_acyclic(&q_abc(0, 0, 0)));
    }

    #[test]
    fn q_abc_entries() {
        let q = q_abc(3, 2, 1);
        assert_eq!((q.get(0, 1), q.get(1, 2), q.get(2, 0)), (3, 2, 1));
        assert!(q.is_skew_symmetric());
    }

    #[test]
    fn bbh_examples() {
        assert!(!bbh_mutation_acyclic(2, 2, 2));
        assert_eq!(bbh_determinant(2, 2, 2), 0);
        assert!(bbh_mutation_acyclic(3, 2, 1));
        assert!(!bbh_mutation_acyclic(3, 3, 3));
        assert_eq!(bbh_determinant(3, 3, 3), 8);
    }

    #[test]
    fn markov_is_self_similar() {
        let q = q_abc(2, 2, 2);
        for k in 0..3 {
            let c = q.mutate(k).unwrap();
            assert_eq!(canonical_form(&c), canonical_form(&q));
        }
    }

    #[test]
    fn search_basics() {
        let path = ExtendedExchangeMatrix::from_arrows(2, 2, &[(0, 1, 1)]).unwrap();
        match search_acyclic_in_mutation_class(&path, 3, 10).unwrap() {
            SearchOutcome::Found { depth, path, .. } => {
                assert_eq!(depth, 0);
                assert!(path.is_empty());
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(search_acyclic_in_mutation_class(&path, 3, 0), Err(QuiverError::InvalidBudget));
        match search_acyclic_in_mutation_class(&q_abc(2, 2, 2), 6, 1000).unwrap() {
            SearchOutcome::Exhausted { visited, budget_hit, .. } => {
                assert_eq!(visited, 1);
                assert!(!budget_hit);
            }
            other => panic!("{other:?}"),
        }
        // Entries of Q(3,3,3) grow doubly exponentially along mutations.
        match search_acyclic_in_mutation_class(&q_abc(3, 3, 3), 9, 100_000).unwrap() {
            SearchOutcome::Exhausted { overflowed, .. } => assert!(overflowed > 0),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn found_path_replays() {
        let q = q_abc(3, 2, 1);
        if let SearchOutcome::Found { matrix, path, depth } = search_acyclic_in_mutation_class(&q, 8, 10_000).unwrap() {
            assert!(depth >= 1);
            let mut m = q.clone();
            for k in path {
                m = m.mutate(k).unwrap();
            }
            assert_eq!(m, matrix);
            assert!(is_acyclic(&m));
        } else {
            panic!("expected an acyclic representative");
        }
    }

    #[test]
    fn sources_then_sinks() {
        let b = ExtendedExchangeMatrix::from_arrows(3, 3, &[(0, 1, 1), (2, 1, 1)]).unwrap();
        assert_eq!(source_sink_sequence(&b).unwrap(), vec![0, 2, 1]);
        let single = ExtendedExchangeMatrix::zero(1, 1);
        assert_eq!(source_sink_sequence(&single).unwrap(), vec![0]);
        let path = ExtendedExchangeMatrix::from_arrows(3, 3, &[(0, 1, 1), (1, 2, 1)]).unwrap();
        assert_eq!(source_sink_sequence(&path), Err(QuiverError::NotBipartite(2)));
    }
}
