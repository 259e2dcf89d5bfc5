use std::collections::{BTreeSet, HashMap, HashSet};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{key_from_ids, ClusterValue, Seed, SeedError};
use crate::arith::LaurentPolynomial;

/// Default seed budget for [`enumerate_pattern`].
pub const DEFAULT_SEED_BUDGET: usize = 100_000;

/// Order in which each BFS layer is expanded.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum FrontierOrder {
    #[default]
    Deterministic,
    /// Shuffle every layer with a ChaCha stream seeded by the value.
    Shuffled(u64),
}

/// One exchange `z * z' = M1 + M2`, all in variable ids of the summary.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RelationRecord {
    pub z: usize,
    pub z_prime: usize,
    pub m1: Vec<(usize, u32)>,
    pub m2: Vec<(usize, u32)>,
}

/// Result of a breadth-first sweep over a seed pattern.
#[derive(Clone, Debug)]
pub struct PatternSummary<V> {
    /// Every distinct value met, frozen ones first; ids index this list.
    pub variables: Vec<V>,
    pub frozen: Vec<usize>,
    /// Ids of the non-frozen cluster variables, ascending.
    pub cluster_variables: Vec<usize>,
    /// Distinct clusters as ascending id lists, sorted.
    pub clusters: Vec<Vec<usize>>,
    pub seed_count: usize,
    pub closed: bool,
    /// Distinct exchange relations observed along BFS edges.
    pub relations: Vec<RelationRecord>,
}

impl<V: ClusterValue> PatternSummary<V> {
    pub fn cluster_variable_values(&self) -> impl Iterator<Item = &V> {
        self.cluster_variables.iter().map(|&i| &self.variables[i])
    }
}

pub fn enumerate_pattern<V: ClusterValue>(seed: &Seed<V>, max_seeds: usize) -> Result<PatternSummary<V>, SeedError> {
    enumerate_pattern_with(seed, max_seeds, FrontierOrder::Deterministic)
}

struct Node<V> {
    seed: Seed<V>,
    ids: Vec<usize>,
    from: Option<usize>,
}

/// Breadth-first enumeration of the seeds reachable from `seed`.
///
/// Seeds are identified up to reordering of positions (see
/// [`Seed::same_up_to_relabeling`]). Mutations of one layer run in parallel;
/// interning and dedup are sequential in frontier order. The sweep stops with
/// `closed = false` as soon as a new seed would exceed `max_seeds`.
pub fn enumerate_pattern_with<V: ClusterValue>(
    seed: &Seed<V>,
    max_seeds: usize,
    order: FrontierOrder,
) -> Result<PatternSummary<V>, SeedError> {
    if max_seeds == 0 {
        return Err(SeedError::InvalidBudget);
    }
    let n = seed.rank();
    let m = seed.matrix().m();
    let mut rng = match order {
        FrontierOrder::Shuffled(s) => Some(ChaCha8Rng::seed_from_u64(s)),
        FrontierOrder::Deterministic => None,
    };

    let mut variables: Vec<V> = Vec::new();
    let mut ids: HashMap<V, usize> = HashMap::new();
    let mut intern = |v: &V, variables: &mut Vec<V>| -> usize {
        if let Some(&i) = ids.get(v) {
            return i;
        }
        let i = variables.len();
        variables.push(v.clone());
        ids.insert(v.clone(), i);
        i
    };

    // Frozen values first so their ids are 0..m-n.
    let mut root_ids = vec![0; m];
    for i in n..m {
        root_ids[i] = intern(&seed.cluster()[i], &mut variables);
    }
    for i in 0..n {
        root_ids[i] = intern(&seed.cluster()[i], &mut variables);
    }
    let frozen: Vec<usize> = root_ids[n..].to_vec();

    let mut seen: HashSet<Vec<(usize, i64, Vec<(usize, i64)>)>> = HashSet::new();
    let mut clusters: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut relations: BTreeSet<RelationRecord> = BTreeSet::new();
    seen.insert(key_from_ids(seed.matrix(), &root_ids));
    clusters.insert(sorted(&root_ids[..n]));
    let mut layer = vec![Node { seed: seed.clone(), ids: root_ids, from: None }];
    let mut closed = true;

    'outer: while !layer.is_empty() {
        if let Some(r) = rng.as_mut() {
            layer.shuffle(r);
        }
        let jobs: Vec<(usize, usize)> = layer
            .iter()
            .enumerate()
            .flat_map(|(li, node)| (0..n).filter(move |&k| node.from != Some(k)).map(move |k| (li, k)))
            .collect();
        let results: Vec<Result<Seed<V>, SeedError>> =
            jobs.par_iter().map(|&(li, k)| layer[li].seed.mutate(k)).collect();
        let mut next = Vec::new();
        for (&(li, k), res) in jobs.iter().zip(results) {
            let child = res?;
            let parent = &layer[li];
            let new_id = intern(&child.cluster()[k], &mut variables);
            let mut child_ids = parent.ids.clone();
            child_ids[k] = new_id;
            relations.insert(relation_record(&parent.seed, &parent.ids, k, new_id));
            let key = key_from_ids(child.matrix(), &child_ids);
            if seen.contains(&key) {
                continue;
            }
            if seen.len() >= max_seeds {
                closed = false;
                break 'outer;
            }
            seen.insert(key);
            clusters.insert(sorted(&child_ids[..n]));
            next.push(Node { seed: child, ids: child_ids, from: Some(k) });
        }
        layer = next;
    }

    let frozen_set: HashSet<usize> = frozen.iter().copied().collect();
    let cluster_variables = (0..variables.len()).filter(|i| !frozen_set.contains(i)).collect();
    Ok(PatternSummary {
        variables,
        frozen,
        cluster_variables,
        clusters: clusters.into_iter().collect(),
        seed_count: seen.len(),
        closed,
        relations: relations.into_iter().collect(),
    })
}

fn sorted(v: &[usize]) -> Vec<usize> {
    let mut v = v.to_vec();
    v.sort_unstable();
    v
}

fn relation_record<V: ClusterValue>(seed: &Seed<V>, ids: &[usize], k: usize, new_id: usize) -> RelationRecord {
    let b = seed.matrix();
    let mut m1 = Vec::new();
    let mut m2 = Vec::new();
    for i in 0..b.m() {
        let e = b.get(i, k);
        if e > 0 {
            m1.push((ids[i], e as u32));
        } else if e < 0 {
            m2.push((ids[i], (-e) as u32));
        }
    }
    m1.sort_unstable();
    m2.sort_unstable();
    let (z, z_prime) = (ids[k].min(new_id), ids[k].max(new_id));
    // Orientation of the pair is irrelevant; normalize so the record is
    // independent of which side the edge was crossed from.
    let (m1, m2) = if m1 <= m2 { (m1, m2) } else { (m2, m1) };
    RelationRecord { z, z_prime, m1, m2 }
}

/// Re-checks every variable of a Laurent summary: nonzero numerator and a
/// denominator supported on mutable initial variables only.
pub fn laurent_sharpness_check(summary: &PatternSummary<LaurentPolynomial>) -> bool {
    summary.variables.iter().all(|v| !v.is_zero() && v.denominator_is_mutable())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::ExtendedExchangeMatrix;

    fn seed(rows: &[Vec<i64>], n: usize, d: Vec<i64>) -> Seed<LaurentPolynomial> {
        let b = ExtendedExchangeMatrix::from_rows_with(rows, n, d).unwrap();
        let labels = (1..=rows.len()).map(|i| format!("x{i}")).collect();
        Seed::initial(b, labels).unwrap()
    }

    #[test]
    fn a2_closes_with_five() {
        let s = seed(&[vec![0, 1], vec![-1, 0]], 2, vec![1, 1]);
        let p = enumerate_pattern(&s, 100).unwrap();
        assert!(p.closed);
        assert_eq!(p.cluster_variables.len(), 5);
        assert_eq!(p.clusters.len(), 5);
        assert_eq!(p.seed_count, 5);
        assert_eq!(p.relations.len(), 5);
        assert!(laurent_sharpness_check(&p));
    }

    #[test]
    fn budget_leaves_pattern_open() {
        let s = seed(&[vec![0, 2, -2], vec![-2, 0, 2], vec![2, -2, 0]], 3, vec![1, 1, 1]);
        let p = enumerate_pattern(&s, 20).unwrap();
        assert!(!p.closed);
        assert_eq!(p.seed_count, 20);
        assert!(matches!(enumerate_pattern(&s, 0), Err(SeedError::InvalidBudget)));
    }

    #[test]
    fn frozen_ids_come_first() {
        let s = seed(&[vec![0], vec![1]], 1, vec![1]);
        let p = enumerate_pattern(&s, 10).unwrap();
        assert_eq!(p.frozen, vec![0]);
        assert_eq!(p.cluster_variables, vec![1, 2]);
        assert_eq!(p.seed_count, 2);
    }
}
