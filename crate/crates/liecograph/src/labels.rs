//! Graded generator labels.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

/// A homogeneous generator: an identifier together with its degree.
///
/// Labels compare by identifier first, which fixes the order used for
/// canonical forms and for the designated slot of bar words.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Label {
    pub id: u32,
    pub degree: i32,
}

impl Label {
    pub fn new(id: u32, degree: i32) -> Self {
        Label { id, degree }
    }

    pub fn is_odd(&self) -> bool {
        self.degree % 2 != 0
    }
}

pub fn degrees(labels: &[Label]) -> Vec<i32> {
    labels.iter().map(|l| l.degree).collect()
}

pub fn total_degree(labels: &[Label]) -> i32 {
    labels.iter().map(|l| l.degree).sum()
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum LabelError {
    #[error("generator `{0}` declared twice")]
    DuplicateGenerator(String),
    #[error("generator `{name}` has degree {degree}; degrees must be at least 1")]
    BadDegree { name: String, degree: i32 },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
}

/// Named generators in declaration order; the `k`-th declared generator has
/// identifier `k`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GeneratorTable {
    names: Vec<String>,
    degrees: Vec<i32>,
    lookup: BTreeMap<String, u32>,
}

impl GeneratorTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a table from `(name, degree)` pairs.
    pub fn from_pairs<'a>(pairs: impl IntoIterator<Item = (&'a str, i32)>) -> Result<Self, LabelError> {
        let mut t = Self::new();
        for (name, degree) in pairs {
            t.add(name, degree)?;
        }
        Ok(t)
    }

    pub fn add(&mut self, name: &str, degree: i32) -> Result<Label, LabelError> {
        if self.lookup.contains_key(name) {
            return Err(LabelError::DuplicateGenerator(name.to_string()));
        }
        if degree < 1 {
            return Err(LabelError::BadDegree { name: name.to_string(), degree });
        }
        let id = self.names.len() as u32;
        self.names.push(name.to_string());
        self.degrees.push(degree);
        self.lookup.insert(name.to_string(), id);
        Ok(Label { id, degree })
    }

    pub fn get(&self, name: &str) -> Result<Label, LabelError> {
        self.lookup
            .get(name)
            .map(|id| Label { id: *id, degree: self.degrees[*id as usize] })
            .ok_or_else(|| LabelError::UnknownGenerator(name.to_string()))
    }

    /// The name of a label, or `#id` if it is not from this table.
    pub fn name(&self, label: Label) -> String {
        self.names.get(label.id as usize).cloned().unwrap_or_else(|| alloc::format!("#{}", label.id))
    }

    pub fn labels(&self) -> impl ExactSizeIterator<Item = Label> + '_ {
        self.degrees.iter().enumerate().map(|(i, d)| Label { id: i as u32, degree: *d })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_lookup() {
        let t = GeneratorTable::from_pairs([("a", 2), ("b", 3)]).unwrap();
        assert_eq!(t.get("b").unwrap(), Label::new(1, 3));
        assert_eq!(t.name(Label::new(0, 2)), "a");
        assert!(matches!(t.get("c"), Err(LabelError::UnknownGenerator(_))));
        assert!(GeneratorTable::from_pairs([("a", 2), ("a", 2)]).is_err());
        assert!(GeneratorTable::from_pairs([("a", 0)]).is_err());
    }
}
