use std::fmt;

use crate::bits;
use crate::error::Result;
use crate::logic::universe::{KSet, Universe};

/// A sequent `p -> \/ alpha`: a premise conjunction and a set of disjunct
/// conjunctions. The empty premise is top; the empty disjunct set is bottom.
///
/// Disjuncts are kept deduplicated in canonical node order, so equality is
/// extensional.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Sequent {
    universe: Universe,
    premise: u64,
    disjuncts: Vec<u64>,
}

impl Sequent {
    pub fn new<I>(premise: KSet, disjuncts: I) -> Result<Self>
    where
        I: IntoIterator<Item = KSet>,
    {
        let universe = premise.universe().clone();
        let mut masks = Vec::new();
        for q in disjuncts {
            universe.ensure_same(q.universe())?;
            masks.push(q.bits());
        }
        Ok(Self::from_masks(universe, premise.bits(), masks))
    }

    /// `p -> false`.
    pub fn refutation(premise: KSet) -> Self {
        Self::from_masks(premise.universe().clone(), premise.bits(), Vec::new())
    }

    pub(crate) fn from_masks(universe: Universe, premise: u64, mut disjuncts: Vec<u64>) -> Self {
        disjuncts.sort_by(|&a, &b| bits::canonical_cmp(a, b));
        disjuncts.dedup();
        Sequent {
            universe,
            premise,
            disjuncts,
        }
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn premise(&self) -> KSet {
        self.universe.set_unchecked(self.premise)
    }

    pub fn disjuncts(&self) -> impl ExactSizeIterator<Item = KSet> + '_ {
        self.disjuncts
            .iter()
            .map(|&q| self.universe.set_unchecked(q))
    }

    pub fn premise_bits(&self) -> u64 {
        self.premise
    }

    pub fn disjunct_bits(&self) -> &[u64] {
        &self.disjuncts
    }

    pub fn is_bottom(&self) -> bool {
        self.disjuncts.is_empty()
    }

    pub fn is_top_to_bottom(&self) -> bool {
        self.premise == 0 && self.disjuncts.is_empty()
    }

    pub fn is_normalized(&self) -> bool {
        self.disjuncts
            .iter()
            .all(|&q| bits::is_subset(self.premise, q))
    }

    /// Some disjunct is implied by the premise alone.
    pub fn is_trivially_true(&self) -> bool {
        self.disjuncts
            .iter()
            .any(|&q| bits::is_subset(q, self.premise))
    }

    /// Replace every disjunct `q` by `p ∪ q`. Satisfaction is unchanged.
    pub fn normalize(&self) -> Sequent {
        let p = self.premise;
        Self::from_masks(
            self.universe.clone(),
            p,
            self.disjuncts.iter().map(|&q| q | p).collect(),
        )
    }

    pub(crate) fn ensure_universe(&self, universe: &Universe) -> Result<()> {
        self.universe.ensure_same(universe)
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let u = &self.universe;
        write!(f, "{} -> ", u.format_mask(self.premise))?;
        if self.disjuncts.is_empty() {
            return f.write_str("false");
        }
        for (i, &q) in self.disjuncts.iter().enumerate() {
            if i > 0 {
                f.write_str(" | ")?;
            }
            f.write_str(&u.format_mask(q))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A finite, ordered list of normalized axioms over one universe.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Theory {
    universe: Universe,
    axioms: Vec<Sequent>,
}

impl Theory {
    /// Builds a theory, normalizing every axiom.
    pub fn new<I>(universe: Universe, axioms: I) -> Result<Self>
    where
        I: IntoIterator<Item = Sequent>,
    {
        let mut out = Vec::new();
        for s in axioms {
            s.ensure_universe(&universe)?;
            out.push(s.normalize());
        }
        Ok(Theory {
            universe,
            axioms: out,
        })
    }

    pub fn empty(universe: Universe) -> Self {
        Theory {
            universe,
            axioms: Vec::new(),
        }
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn axioms(&self) -> &[Sequent] {
        &self.axioms
    }

    pub fn len(&self) -> usize {
        self.axioms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.axioms.is_empty()
    }

    /// Position of an axiom equal to `s` after normalization.
    pub fn position_of(&self, s: &Sequent) -> Option<usize> {
        if s.universe() != &self.universe {
            return None;
        }
        let n = s.normalize();
        self.axioms.iter().position(|a| a == &n)
    }

    pub fn with_axioms_permuted(&self, order: &[usize]) -> Theory {
        Theory {
            universe: self.universe.clone(),
            axioms: order.iter().map(|&i| self.axioms[i].clone()).collect(),
        }
    }
}

impl fmt::Debug for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Theory")
            .field("universe", &self.universe)
            .field("axioms", &self.axioms)
            .finish()
    }
}

/// Accumulates axioms while dropping exact duplicates; used by generators.
pub(crate) struct TheoryBuilder {
    universe: Universe,
    axioms: Vec<Sequent>,
    seen: std::collections::HashSet<Sequent>,
}

impl TheoryBuilder {
    pub(crate) fn new(universe: Universe) -> Self {
        TheoryBuilder {
            universe,
            axioms: Vec::new(),
            seen: Default::default(),
        }
    }

    pub(crate) fn push(&mut self, premise: u64, disjuncts: Vec<u64>) {
        let s = Sequent::from_masks(self.universe.clone(), premise, disjuncts).normalize();
        if self.seen.insert(s.clone()) {
            self.axioms.push(s);
        }
    }

    pub(crate) fn finish(self) -> Theory {
        Theory {
            universe: self.universe,
            axioms: self.axioms,
        }
    }
}
