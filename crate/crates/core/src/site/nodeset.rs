use std::fmt;

use crate::bits::{self, NodeBits};
use crate::error::{Error, Result};
use crate::logic::{KSet, Universe};

/// A set of nodes of K(A), stored densely over all `2^|A|` nodes.
#[derive(Clone, PartialEq, Eq)]
pub struct NodeSet {
    universe: Universe,
    bits: NodeBits,
}

impl NodeSet {
    pub fn empty(universe: &Universe) -> Self {
        NodeSet {
            universe: universe.clone(),
            bits: NodeBits::new(universe.size()),
        }
    }

    /// Every node of K(A).
    pub fn full(universe: &Universe) -> Self {
        let mut s = Self::empty(universe);
        for m in 0..=universe.full_mask() {
            s.bits.insert(m);
        }
        s
    }

    pub fn from_nodes<I>(universe: &Universe, nodes: I) -> Result<Self>
    where
        I: IntoIterator<Item = KSet>,
    {
        let mut s = Self::empty(universe);
        for k in nodes {
            s.insert(&k)?;
        }
        Ok(s)
    }

    pub(crate) fn from_bits(universe: &Universe, bits: NodeBits) -> Self {
        NodeSet {
            universe: universe.clone(),
            bits,
        }
    }

    pub(crate) fn node_bits(&self) -> &NodeBits {
        &self.bits
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn insert(&mut self, node: &KSet) -> Result<bool> {
        self.universe.ensure_same(node.universe())?;
        Ok(self.bits.insert(node.bits()))
    }

    pub fn remove(&mut self, node: &KSet) -> Result<bool> {
        self.universe.ensure_same(node.universe())?;
        Ok(self.bits.remove(node.bits()))
    }

    pub fn contains(&self, node: &KSet) -> bool {
        node.universe() == &self.universe && self.bits.contains(node.bits())
    }

    pub(crate) fn contains_mask(&self, mask: u64) -> bool {
        self.bits.contains(mask)
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn union(&self, other: &NodeSet) -> Result<NodeSet> {
        self.universe.ensure_same(&other.universe)?;
        let mut bits = self.bits.clone();
        bits.union_with(&other.bits);
        Ok(NodeSet::from_bits(&self.universe, bits))
    }

    pub fn is_subset(&self, other: &NodeSet) -> Result<bool> {
        self.universe.ensure_same(&other.universe)?;
        Ok(self.bits.is_subset_of(&other.bits))
    }

    /// Member masks in canonical node order.
    pub(crate) fn canonical_masks(&self) -> Vec<u64> {
        let n = self.universe.size();
        let mut v: Vec<u64> = self.bits.iter().collect();
        v.sort_unstable_by_key(|&m| bits::canonical_key(m, n));
        v
    }

    /// Members in canonical order: cardinality, then lexicographic.
    pub fn iter(&self) -> impl Iterator<Item = KSet> + '_ {
        self.canonical_masks()
            .into_iter()
            .map(|m| self.universe.set_unchecked(m))
    }

    /// Members that no other member is contained in.
    pub fn minimal(&self) -> Vec<KSet> {
        let n = self.universe.size();
        let up = upward_closure(&self.bits, n, 0);
        self.canonical_masks()
            .into_iter()
            .filter(|&m| !bits::indices(m).any(|i| up.contains(m & !(1 << i))))
            .map(|m| self.universe.set_unchecked(m))
            .collect()
    }

    /// Whether `r ∈ self` and `r ⊆ r'` imply `r' ∈ self`.
    pub fn is_upward_closed(&self) -> bool {
        let n = self.universe.size();
        self.bits
            .iter()
            .all(|m| (0..n).all(|i| self.bits.contains(m | 1 << i)))
    }
}

impl fmt::Debug for NodeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Upward closure of `seeds` restricted to supersets of `floor`.
pub(crate) fn upward_closure(seeds: &NodeBits, n: usize, floor: u64) -> NodeBits {
    let mut out = NodeBits::new(n);
    // increasing numeric order visits every subset before its supersets
    for m in bits::supersets(floor, n) {
        if seeds.contains(m) || bits::indices(m & !floor).any(|i| out.contains(m & !(1 << i))) {
            out.insert(m);
        }
    }
    out
}

/// Nodes contained in some member of `set`.
pub(crate) fn downward_closure(set: &NodeBits, n: usize) -> NodeBits {
    let mut out = NodeBits::new(n);
    let full = bits::full_mask(n);
    for m in (0..=full).rev() {
        let free = full & !m;
        if set.contains(m) || bits::indices(free).any(|i| out.contains(m | 1 << i)) {
            out.insert(m);
        }
    }
    out
}

/// A sieve on `root`: an upward-closed set of supersets of `root`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Sieve {
    root: KSet,
    nodes: NodeSet,
}

impl Sieve {
    pub fn new(root: KSet, nodes: NodeSet) -> Result<Self> {
        root.universe().ensure_same(nodes.universe())?;
        let r = root.bits();
        if let Some(m) = nodes.bits.iter().find(|&m| !bits::is_subset(r, m)) {
            return Err(Error::NotASieve(format!(
                "{} does not contain the root {}",
                nodes.universe.format_mask(m),
                root
            )));
        }
        if !nodes.is_upward_closed() {
            return Err(Error::NotASieve("not closed under supersets".into()));
        }
        Ok(Sieve { root, nodes })
    }

    pub fn maximal(root: KSet) -> Self {
        let n = root.universe().size();
        let mut seeds = NodeBits::new(n);
        seeds.insert(root.bits());
        let bits = upward_closure(&seeds, n, root.bits());
        let nodes = NodeSet::from_bits(root.universe(), bits);
        Sieve { root, nodes }
    }

    pub fn empty(root: KSet) -> Self {
        let nodes = NodeSet::empty(root.universe());
        Sieve { root, nodes }
    }

    pub fn root(&self) -> &KSet {
        &self.root
    }

    pub fn nodes(&self) -> &NodeSet {
        &self.nodes
    }

    pub fn is_maximal(&self) -> bool {
        self.nodes.contains(&self.root)
    }
}

/// Smallest sieve on `root` containing every generator.
pub fn sieve_generated(root: &KSet, gens: &NodeSet) -> Result<Sieve> {
    root.universe().ensure_same(gens.universe())?;
    let r = root.bits();
    if gens.bits.iter().any(|m| !bits::is_subset(r, m)) {
        return Err(Error::GeneratorBelowRoot);
    }
    let n = root.universe().size();
    let bits = upward_closure(&gens.bits, n, r);
    Ok(Sieve {
        root: root.clone(),
        nodes: NodeSet::from_bits(root.universe(), bits),
    })
}
