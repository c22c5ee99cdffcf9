use std::fmt;
use std::str::FromStr;

use super::parse::{format_canonical, parse_dynkin, ParseError};
use super::{Canonical, DualGraph, GraphError};

/// A multiset of chains and stars, kept sorted by canonical form so that
/// structural equality is multiset equality.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct DynkinType {
    keys: Vec<Canonical>,
    components: Vec<DualGraph>,
}

impl DynkinType {
    pub fn from_graphs(graphs: impl IntoIterator<Item = DualGraph>) -> Result<Self, GraphError> {
        let mut keys = graphs
            .into_iter()
            .map(|g| g.canonical())
            .collect::<Result<Vec<_>, _>>()?;
        keys.sort();
        let components = keys.iter().map(DualGraph::from_canonical).collect();
        Ok(DynkinType { keys, components })
    }

    pub fn components(&self) -> &[DualGraph] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Total number of exceptional curves over all components.
    pub fn vertex_count(&self) -> usize {
        self.components.iter().map(DualGraph::vertex_count).sum()
    }

    /// Multiset union.
    pub fn sum(&self, other: &DynkinType) -> DynkinType {
        Self::from_graphs(self.components.iter().chain(&other.components).cloned())
            .expect("components are already canonical")
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut i = 0;
        let mut first = true;
        while i < self.keys.len() {
            let mut j = i;
            while j < self.keys.len() && self.keys[j] == self.keys[i] {
                j += 1;
            }
            if !first {
                f.write_str("+")?;
            }
            first = false;
            if j - i > 1 {
                write!(f, "{}", j - i)?;
            }
            f.write_str(&format_canonical(&self.keys[i]))?;
            i = j;
        }
        Ok(())
    }
}

impl FromStr for DynkinType {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_dynkin(s)
    }
}

impl serde::Serialize for DynkinType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equality_is_multiset_equality() {
        let a: DynkinType = "[3,2^2]+2[3]+[2^5]".parse().unwrap();
        let b: DynkinType = "[3]+[2^5]+[2,2,3]+[3]".parse().unwrap();
        assert_eq!(a, b);
        assert_ne!(a, "[3,2^2]+[3]+[2^5]".parse().unwrap());
    }

    #[test]
    fn sum_and_counts() {
        let a: DynkinType = "[2,3,2^2]".parse().unwrap();
        let b: DynkinType = "[3,2^5]".parse().unwrap();
        let s = a.sum(&b);
        assert_eq!(s.len(), 2);
        assert_eq!(s.vertex_count(), 10);
        assert_eq!(s.to_string(), "[2^5,3]+[2^2,3,2]");
    }

    #[test]
    fn general_trees_are_rejected() {
        let t = DualGraph::from_edges(vec![2; 5], vec![(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        assert_eq!(DynkinType::from_graphs([t]), Err(GraphError::UnsupportedShape));
    }
}
