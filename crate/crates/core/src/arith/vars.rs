use std::collections::HashMap;
use std::sync::Arc;

use super::ArithError;

/// Ordered variable names with a frozen flag per variable.
///
/// Index `i` is position `i` in every exponent vector built over this table.
#[derive(Debug, Clone)]
pub struct VariableTable {
    names: Vec<String>,
    frozen: Vec<bool>,
    index: HashMap<String, usize>,
}

impl PartialEq for VariableTable {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.frozen == other.frozen
    }
}

impl Eq for VariableTable {}

impl VariableTable {
    pub fn new<S: Into<String>>(
        names: impl IntoIterator<Item = S>,
        frozen: impl IntoIterator<Item = bool>,
    ) -> Result<Self, ArithError> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let mut frozen: Vec<bool> = frozen.into_iter().collect();
        frozen.resize(names.len(), false);
        let mut index = HashMap::with_capacity(names.len());
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() || !is_identifier(n) {
                return Err(ArithError::Parse(format!("invalid variable name `{n}`")));
            }
            if index.insert(n.clone(), i).is_some() {
                return Err(ArithError::DuplicateVariable(n.clone()));
            }
        }
        Ok(VariableTable { names, frozen, index })
    }

    /// All variables mutable.
    pub fn plain<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self, ArithError> {
        Self::new(names, std::iter::empty())
    }

    pub fn shared(self) -> Arc<Self> {
        Arc::new(self)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn frozen_mask(&self) -> &[bool] {
        &self.frozen
    }

    pub fn is_frozen(&self, i: usize) -> bool {
        self.frozen[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn require(&self, name: &str) -> Result<usize, ArithError> {
        self.index_of(name).ok_or_else(|| ArithError::UnknownVariable(name.to_string()))
    }

    /// A copy with `extra` prepended; used to adjoin elimination variables.
    pub fn with_prefix(&self, extra: &[&str]) -> Result<Self, ArithError> {
        let names = extra.iter().map(|s| s.to_string()).chain(self.names.iter().cloned());
        let frozen = extra.iter().map(|_| false).chain(self.frozen.iter().copied());
        Self::new(names, frozen)
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

/// True when both handles name the same table, by pointer or by content.
pub(crate) fn same_table(a: &Arc<VariableTable>, b: &Arc<VariableTable>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_duplicates_and_bad_names() {
        assert!(matches!(
            VariableTable::plain(["x", "y", "x"]),
            Err(ArithError::DuplicateVariable(_))
        ));
        assert!(VariableTable::plain(["1x"]).is_err());
        assert!(VariableTable::plain(["x+y"]).is_err());
    }

    #[test]
    fn lookup_and_frozen() {
        let t = VariableTable::new(["a", "b", "c"], [false, true]).unwrap();
        assert_eq!(t.index_of("b"), Some(1));
        assert!(t.is_frozen(1));
        assert!(!t.is_frozen(2));
        let u = t.with_prefix(&["__t"]).unwrap();
        assert_eq!(u.names()[0], "__t");
        assert!(u.is_frozen(2));
    }
}
