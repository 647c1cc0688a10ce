use std::collections::HashSet;

use crate::error::{Error, Result};

/// A total map between finite named sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteMap {
    domain: Vec<String>,
    codomain: Vec<String>,
    values: Vec<usize>,
}

impl FiniteMap {
    pub fn new(domain: Vec<String>, codomain: Vec<String>, values: Vec<usize>) -> Result<Self> {
        if codomain.is_empty() {
            return Err(Error::EmptyCodomain);
        }
        if values.len() != domain.len() {
            return Err(Error::InvalidMap("one value per domain element is required".into()));
        }
        if values.iter().any(|&v| v >= codomain.len()) {
            return Err(Error::InvalidMap("value outside the codomain".into()));
        }
        for names in [&domain, &codomain] {
            let mut seen = HashSet::new();
            if let Some(dup) = names.iter().find(|n| !seen.insert(n.as_str())) {
                return Err(Error::InvalidMap(format!("duplicate element `{dup}`")));
            }
        }
        Ok(FiniteMap {
            domain,
            codomain,
            values,
        })
    }

    /// Parses `a:b,a':b',...`, one `domain:codomain` pair per domain
    /// element. Both sides are listed in order of first appearance.
    pub fn parse(text: &str) -> Result<Self> {
        let mut domain: Vec<String> = Vec::new();
        let mut codomain: Vec<String> = Vec::new();
        let mut values = Vec::new();
        for pair in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (a, b) = pair
                .split_once(':')
                .ok_or_else(|| Error::InvalidMap(format!("`{pair}` is not of the form a:b")))?;
            let (a, b) = (a.trim(), b.trim());
            if a.is_empty() || b.is_empty() {
                return Err(Error::InvalidMap(format!("`{pair}` has an empty side")));
            }
            if domain.iter().any(|d| d == a) {
                return Err(Error::InvalidMap(format!("`{a}` is mapped twice")));
            }
            domain.push(a.to_string());
            let v = match codomain.iter().position(|c| c == b) {
                Some(v) => v,
                None => {
                    codomain.push(b.to_string());
                    codomain.len() - 1
                }
            };
            values.push(v);
        }
        Self::new(domain, codomain, values)
    }

    pub fn domain(&self) -> &[String] {
        &self.domain
    }

    pub fn codomain(&self) -> &[String] {
        &self.codomain
    }

    pub fn apply(&self, a: usize) -> usize {
        self.values[a]
    }

    pub fn is_surjective(&self) -> bool {
        let hit: HashSet<usize> = self.values.iter().copied().collect();
        hit.len() == self.codomain.len()
    }

    /// Errors unless the map is onto a nonempty codomain.
    pub fn ensure_surjective(&self) -> Result<()> {
        if self.codomain.is_empty() {
            return Err(Error::EmptyCodomain);
        }
        if !self.is_surjective() {
            return Err(Error::NotSurjective);
        }
        Ok(())
    }

    /// Renders in the [`FiniteMap::parse`] syntax.
    pub fn to_spec(&self) -> String {
        self.domain
            .iter()
            .zip(&self.values)
            .map(|(a, &b)| format!("{a}:{}", self.codomain[b]))
            .collect::<Vec<_>>()
            .join(",")
    }
}
