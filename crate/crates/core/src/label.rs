use std::collections::HashMap;
use std::fmt;

/// Dense identifier for an interned class label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClassId(u32);

impl ClassId {
    pub const fn new(index: u32) -> Self {
        ClassId(index)
    }

    pub const fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for ClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Maps label strings to dense [`ClassId`]s in order of first appearance.
///
/// The class universe is open: unseen labels receive the next free id.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LabelInterner {
    labels: Vec<String>,
    ids: HashMap<String, ClassId>,
}

impl LabelInterner {
    pub fn new() -> Self {
        Self::default()
    }

    /// Rebuilds an interner from labels listed in id order.
    ///
    /// Returns `None` if the list contains a duplicate.
    pub fn from_labels<I, S>(labels: I) -> Option<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut interner = Self::new();
        for label in labels {
            let label = label.into();
            if interner.ids.contains_key(&label) {
                return None;
            }
            interner.intern(&label);
        }
        Some(interner)
    }

    pub fn intern(&mut self, label: &str) -> ClassId {
        if let Some(&id) = self.ids.get(label) {
            return id;
        }
        let id = ClassId(u32::try_from(self.labels.len()).expect("more than u32::MAX labels"));
        self.labels.push(label.to_owned());
        self.ids.insert(label.to_owned(), id);
        id
    }

    pub fn get(&self, label: &str) -> Option<ClassId> {
        self.ids.get(label).copied()
    }

    pub fn label(&self, id: ClassId) -> Option<&str> {
        self.labels.get(id.index()).map(String::as_str)
    }

    /// Labels in id order.
    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }
}
