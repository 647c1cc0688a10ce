use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::bits;
use crate::error::{Error, Result};

/// Default bound on universe size; keeps `2^|A|` node tables addressable.
pub const DEFAULT_MAX_UNIVERSE: usize = 24;

/// Absolute bound regardless of configuration. Dense node tables take
/// `2^n / 8` bytes.
pub const HARD_MAX_UNIVERSE: usize = 30;

struct Inner {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

/// An ordered finite set of sentence symbols. Cheap to clone.
#[derive(Clone)]
pub struct Universe(Arc<Inner>);

impl Universe {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Self::with_max(names, DEFAULT_MAX_UNIVERSE)
    }

    pub fn with_max<I, S>(names: I, max: usize) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let max = max.min(HARD_MAX_UNIVERSE);
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.len() > max {
            return Err(Error::UniverseTooLarge {
                size: names.len(),
                max,
            });
        }
        let mut index = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::DuplicateSymbol(name.clone()));
            }
        }
        Ok(Universe(Arc::new(Inner { names, index })))
    }

    pub fn size(&self) -> usize {
        self.0.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.0.names
    }

    pub fn name(&self, index: usize) -> &str {
        &self.0.names[index]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.index.get(name).copied()
    }

    pub fn full_mask(&self) -> u64 {
        bits::full_mask(self.size())
    }

    pub fn empty_set(&self) -> KSet {
        KSet {
            universe: self.clone(),
            bits: 0,
        }
    }

    pub fn full_set(&self) -> KSet {
        KSet {
            universe: self.clone(),
            bits: self.full_mask(),
        }
    }

    pub fn set_of<'a, I>(&self, names: I) -> Result<KSet>
    where
        I: IntoIterator<Item = &'a str>,
    {
        let mut bits = 0;
        for name in names {
            let i = self
                .index_of(name)
                .ok_or_else(|| Error::UnknownSymbol(name.to_string()))?;
            bits |= 1 << i;
        }
        Ok(KSet {
            universe: self.clone(),
            bits,
        })
    }

    pub fn set_from_indices<I>(&self, indices: I) -> Result<KSet>
    where
        I: IntoIterator<Item = usize>,
    {
        let mut bits = 0;
        for i in indices {
            if i >= self.size() {
                return Err(Error::IndexOutOfRange(i));
            }
            bits |= 1 << i;
        }
        Ok(KSet {
            universe: self.clone(),
            bits,
        })
    }

    pub fn set_from_mask(&self, bits: u64) -> Result<KSet> {
        if bits & !self.full_mask() != 0 {
            return Err(Error::IndexOutOfRange(
                (bits & !self.full_mask()).trailing_zeros() as usize,
            ));
        }
        Ok(KSet {
            universe: self.clone(),
            bits,
        })
    }

    /// Callers guarantee `bits` lies within the universe.
    pub(crate) fn set_unchecked(&self, bits: u64) -> KSet {
        debug_assert_eq!(bits & !self.full_mask(), 0);
        KSet {
            universe: self.clone(),
            bits,
        }
    }

    pub(crate) fn ensure_same(&self, other: &Universe) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::MixedUniverse)
        }
    }

    pub(crate) fn format_mask(&self, bits: u64) -> String {
        let names: Vec<&str> = bits::indices(bits).map(|i| self.name(i)).collect();
        format!("{{{}}}", names.join(" "))
    }
}

impl PartialEq for Universe {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.names == other.0.names
    }
}

impl Eq for Universe {}

impl Hash for Universe {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.names.hash(state);
    }
}

impl fmt::Debug for Universe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.names()).finish()
    }
}

/// A finite subset of a universe: a node of K(A), or a candidate model.
///
/// Ordered canonically (cardinality, then lexicographic on symbol indices).
#[derive(Clone)]
pub struct KSet {
    universe: Universe,
    bits: u64,
}

impl KSet {
    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn contains(&self, index: usize) -> bool {
        index < 64 && self.bits >> index & 1 == 1
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> {
        bits::indices(self.bits)
    }

    pub fn symbols(&self) -> impl Iterator<Item = &str> {
        self.indices().map(|i| self.universe.name(i))
    }

    pub fn is_subset(&self, other: &KSet) -> Result<bool> {
        self.universe.ensure_same(&other.universe)?;
        Ok(bits::is_subset(self.bits, other.bits))
    }

    pub fn union(&self, other: &KSet) -> Result<KSet> {
        self.universe.ensure_same(&other.universe)?;
        Ok(self.universe.set_unchecked(self.bits | other.bits))
    }

    pub fn with(&self, index: usize) -> Result<KSet> {
        if index >= self.universe.size() {
            return Err(Error::IndexOutOfRange(index));
        }
        Ok(self.universe.set_unchecked(self.bits | 1 << index))
    }
}

impl PartialEq for KSet {
    fn eq(&self, other: &Self) -> bool {
        self.bits == other.bits && self.universe == other.universe
    }
}

impl Eq for KSet {}

impl Hash for KSet {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.bits.hash(state);
    }
}

impl PartialOrd for KSet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for KSet {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        bits::canonical_cmp(self.bits, other.bits)
    }
}

impl fmt::Display for KSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.universe.format_mask(self.bits))
    }
}

impl fmt::Debug for KSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
