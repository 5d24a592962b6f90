use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// An ordered table of taxon labels. Taxa are addressed by their dense index.
#[derive(Clone, PartialEq, Eq)]
pub struct TaxaSet {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl TaxaSet {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.len() < 3 {
            return Err(Error::TooFewTaxa(names.len()));
        }
        let mut index = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() {
                return Err(Error::EmptyTaxonLabel);
            }
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::DuplicateTaxon(name.clone()));
            }
        }
        Ok(TaxaSet { names, index })
    }

    /// Taxa labelled `1..=n`.
    pub fn numbered(n: usize) -> Result<Self> {
        Self::new((1..=n).map(|i| i.to_string()))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    /// Always false: a taxa set has at least three members.
    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownTaxon(name.to_string()))
    }

    pub fn check(&self, i: usize) -> Result<()> {
        if i < self.len() {
            Ok(())
        } else {
            Err(Error::TaxonOutOfRange {
                index: i,
                n: self.len(),
            })
        }
    }
}

impl fmt::Debug for TaxaSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.names).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_small_and_duplicate() {
        assert_eq!(TaxaSet::new(["a", "b"]), Err(Error::TooFewTaxa(2)));
        assert_eq!(
            TaxaSet::new(["a", "b", "a"]),
            Err(Error::DuplicateTaxon("a".into()))
        );
        assert_eq!(TaxaSet::new(["a", "", "c"]), Err(Error::EmptyTaxonLabel));
    }

    #[test]
    fn lookup() {
        let t = TaxaSet::numbered(5).unwrap();
        assert_eq!(t.len(), 5);
        assert_eq!(t.index_of("3").unwrap(), 2);
        assert_eq!(t.name(4), "5");
        assert!(t.index_of("9").is_err());
        assert!(t.check(5).is_err());
    }
}
