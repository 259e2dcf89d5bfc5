use std::collections::BTreeMap;

use super::{Seed, SeedError};
use crate::arith::LaurentPolynomial;

/// The formal variables `z_T` of a finite subtree `T` of the exchange tree.
///
/// One variable per frozen position and one per connected component of `T`
/// with the edges labeled `i` removed, for each mutable position `i`.
#[derive(Clone, Debug)]
pub struct FormalVariableSet {
    pub names: Vec<String>,
    pub frozen: Vec<bool>,
    /// `(tree node, position)` where the variable first appears.
    pub provenance: Vec<(usize, usize)>,
    /// The cluster variable each formal variable stands for, in the initial variables.
    pub values: Vec<LaurentPolynomial>,
}

impl FormalVariableSet {
    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// Ids of the variables standing for mutable cluster variables.
    pub fn mutable_ids(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| !self.frozen[i]).collect()
    }
}

/// `z * z' - M1 - M2` for one edge of the tree, in formal variable ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalRelation {
    pub z: usize,
    pub z_prime: usize,
    pub m1: Vec<(usize, u32)>,
    pub m2: Vec<(usize, u32)>,
    pub parent: usize,
    pub child: usize,
    /// 0-based mutation direction of the edge.
    pub vertex: usize,
}

impl FormalRelation {
    pub fn render(&self, names: &[String]) -> String {
        let mono = |m: &[(usize, u32)]| -> String {
            if m.is_empty() {
                return "1".into();
            }
            m.iter()
                .map(|&(i, e)| if e == 1 { names[i].clone() } else { format!("{}^{}", names[i], e) })
                .collect::<Vec<_>>()
                .join("*")
        };
        format!("{}*{} - {} - {}", names[self.z], names[self.z_prime], mono(&self.m1), mono(&self.m2))
    }
}

struct TreeNode {
    parent: Option<usize>,
    via: Option<usize>,
    children: BTreeMap<usize, usize>,
    seed: Seed<LaurentPolynomial>,
    var_ids: Vec<usize>,
}

/// A finite subtree of the exchange tree, grown as the trie of reduced
/// mutation words starting at one root seed.
///
/// Formal variables are numbered in order of appearance: the root's
/// positions give `z1..zm`, and every new edge labeled `k` adds one variable
/// for position `k` of its child.
pub struct FormalTree {
    nodes: Vec<TreeNode>,
    vars: FormalVariableSet,
    relations: Vec<FormalRelation>,
}

impl FormalTree {
    pub fn new(root: &Seed<LaurentPolynomial>) -> Self {
        let m = root.matrix().m();
        let n = root.rank();
        let vars = FormalVariableSet {
            names: (1..=m).map(|i| format!("z{i}")).collect(),
            frozen: (0..m).map(|i| i >= n).collect(),
            provenance: (0..m).map(|i| (0, i)).collect(),
            values: root.cluster().to_vec(),
        };
        let node = TreeNode { parent: None, via: None, children: BTreeMap::new(), seed: root.clone(), var_ids: (0..m).collect() };
        FormalTree { nodes: vec![node], vars, relations: Vec::new() }
    }

    /// Adds every walk (0-based directions) from the root.
    pub fn from_walks(root: &Seed<LaurentPolynomial>, walks: &[Vec<usize>]) -> Result<Self, SeedError> {
        let mut t = Self::new(root);
        for w in walks {
            t.add_walk(w)?;
        }
        Ok(t)
    }

    /// Follows `walk` from the root, creating nodes as needed; a step back
    /// along the edge just taken returns to the parent. Returns the final node.
    pub fn add_walk(&mut self, walk: &[usize]) -> Result<usize, SeedError> {
        let mut cur = 0;
        for &k in walk {
            cur = self.step(cur, k)?;
        }
        Ok(cur)
    }

    fn step(&mut self, cur: usize, k: usize) -> Result<usize, SeedError> {
        if self.nodes[cur].via == Some(k) {
            return Ok(self.nodes[cur].parent.expect("non-root has parent"));
        }
        if let Some(&c) = self.nodes[cur].children.get(&k) {
            return Ok(c);
        }
        let parent = &self.nodes[cur];
        let child_seed = parent.seed.mutate(k)?;
        let new_id = self.vars.names.len();
        self.vars.names.push(format!("z{}", new_id + 1));
        self.vars.frozen.push(false);
        self.vars.provenance.push((self.nodes.len(), k));
        self.vars.values.push(child_seed.cluster()[k].clone());
        let mut var_ids = parent.var_ids.clone();
        var_ids[k] = new_id;

        let b = parent.seed.matrix();
        let mut m1 = Vec::new();
        let mut m2 = Vec::new();
        for i in 0..b.m() {
            let e = b.get(i, k);
            if e > 0 {
                m1.push((parent.var_ids[i], e as u32));
            } else if e < 0 {
                m2.push((parent.var_ids[i], (-e) as u32));
            }
        }
        let child = self.nodes.len();
        self.relations.push(FormalRelation { z: parent.var_ids[k], z_prime: new_id, m1, m2, parent: cur, child, vertex: k });
        self.nodes.push(TreeNode { parent: Some(cur), via: Some(k), children: BTreeMap::new(), seed: child_seed, var_ids });
        self.nodes[cur].children.insert(k, child);
        Ok(child)
    }

    pub fn variables(&self) -> &FormalVariableSet {
        &self.vars
    }

    pub fn relations(&self) -> &[FormalRelation] {
        &self.relations
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn seed(&self, node: usize) -> &Seed<LaurentPolynomial> {
        &self.nodes[node].seed
    }

    /// Formal variable ids of a node's extended cluster.
    pub fn node_variables(&self, node: usize) -> &[usize] {
        &self.nodes[node].var_ids
    }
}

/// The exchange relations met along `walk`, one per edge of the path it
/// traces in the exchange tree.
pub fn exchange_relations_along(seed: &Seed<LaurentPolynomial>, walk: &[usize]) -> Result<Vec<FormalRelation>, SeedError> {
    Ok(FormalTree::from_walks(seed, &[walk.to_vec()])?.relations)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::ExtendedExchangeMatrix;

    fn b2() -> Seed<LaurentPolynomial> {
        let b = ExtendedExchangeMatrix::from_rows_with(&[vec![0, 1], vec![-2, 0]], 2, vec![2, 1]).unwrap();
        Seed::initial(b, vec!["z1".into(), "z2".into()]).unwrap()
    }

    #[test]
    fn b2_walk_relations() {
        let s = b2();
        let t = FormalTree::from_walks(&s, &[vec![0, 1, 0]]).unwrap();
        let names = &t.variables().names;
        let r: Vec<String> = t.relations().iter().map(|r| r.render(names)).collect();
        assert_eq!(r, ["z1*z3 - 1 - z2^2", "z2*z4 - 1 - z3", "z3*z5 - 1 - z4^2"]);
        assert_eq!(t.variables().len(), 5);
    }

    #[test]
    fn empty_walk_and_backtracking() {
        let s = b2();
        assert!(exchange_relations_along(&s, &[]).unwrap().is_empty());
        let t = FormalTree::from_walks(&s, &[vec![0, 0, 1]]).unwrap();
        // 0,0 returns to the root, so only two nodes besides the root exist.
        assert_eq!(t.node_count(), 3);
        assert_eq!(t.relations()[1].z, 1);
    }
}
