//! The classifying site K(A) of a theory: direct covers, covering closure,
//! the degeneracy decision, and dense subsites.
//!
//! A set `R ⊆ K(A)` directly covers `r` when either every superset of `r`
//! lies in `R` (the maximal sieve on `r`), or some axiom `p -> \/ alpha` has
//! `p ⊆ r` and `r ∪ q ∈ R` for every disjunct `q`. The first clause needs
//! `r ∈ R` already, so it never grows a closure; it is kept in
//! [`directly_covers`] for completeness and skipped by the fixpoint.
//!
//! The theory's classifying topos is degenerate exactly when the empty node
//! lies in the closure of the empty set.

mod engine;
mod nodeset;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bits::{self, NodeBits};
use crate::error::{Error, Result};
use crate::logic::{KSet, Theory};

pub(crate) use engine::Compiled;
pub use nodeset::{sieve_generated, NodeSet, Sieve};
pub(crate) use nodeset::{downward_closure, upward_closure};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Degenerate,
    Nondegenerate,
}

impl Verdict {
    pub fn is_degenerate(self) -> bool {
        self == Verdict::Degenerate
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Degenerate => "degenerate",
            Verdict::Nondegenerate => "nondegenerate",
        })
    }
}

/// One node entering the closure, justified by an axiom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub node: KSet,
    pub axiom: usize,
}

/// Result of the degeneracy decision: the closure of the empty set and how
/// it was built.
#[derive(Clone, Debug)]
pub struct DegeneracyTrace {
    pub verdict: Verdict,
    pub zset: NodeSet,
    pub steps: Vec<Step>,
    pub rounds: usize,
}

/// Least axiom index directly covering `r` from `z`, if any.
pub fn directly_covered(theory: &Theory, z: &NodeSet, r: &KSet) -> Result<Option<usize>> {
    theory.universe().ensure_same(z.universe())?;
    theory.universe().ensure_same(r.universe())?;
    let r = r.bits();
    Ok(theory.axioms().iter().position(|ax| {
        bits::is_subset(ax.premise_bits(), r)
            && ax.disjunct_bits().iter().all(|&q| z.contains_mask(r | q))
    }))
}

/// The maximal sieve on `r` is contained in `z`.
pub fn contains_maximal_sieve(z: &NodeSet, r: &KSet) -> Result<bool> {
    z.universe().ensure_same(r.universe())?;
    let n = z.universe().size();
    Ok(bits::supersets(r.bits(), n).all(|m| z.contains_mask(m)))
}

pub fn directly_covers(theory: &Theory, z: &NodeSet, r: &KSet) -> Result<bool> {
    Ok(contains_maximal_sieve(z, r)? || directly_covered(theory, z, r)?.is_some())
}

/// The smallest superset of `r` containing everything it directly covers.
pub fn covering_closure(theory: &Theory, r: &NodeSet) -> Result<NodeSet> {
    theory.universe().ensure_same(r.universe())?;
    let fix = Compiled::new(theory).run(r.node_bits().clone(), 0, None);
    Ok(NodeSet::from_bits(theory.universe(), fix.z))
}

pub fn degeneracy(theory: &Theory) -> Result<DegeneracyTrace> {
    let u = theory.universe();
    let fix = Compiled::new(theory).run(NodeBits::new(u.size()), 0, None);
    let verdict = if fix.z.contains(0) {
        Verdict::Degenerate
    } else {
        Verdict::Nondegenerate
    };
    let steps = fix
        .steps
        .iter()
        .map(|&(m, axiom)| Step {
            node: u.set_unchecked(m),
            axiom,
        })
        .collect();
    Ok(DegeneracyTrace {
        verdict,
        zset: NodeSet::from_bits(u, fix.z),
        steps,
        rounds: fix.rounds,
    })
}

/// Whether `sieve` belongs to J(p): `p` lies in the covering closure of the
/// sieve's nodes.
pub fn covers(theory: &Theory, p: &KSet, sieve: &Sieve) -> Result<bool> {
    theory.universe().ensure_same(p.universe())?;
    theory.universe().ensure_same(sieve.nodes().universe())?;
    let pm = p.bits();
    if sieve
        .nodes()
        .node_bits()
        .iter()
        .any(|m| !bits::is_subset(pm, m))
    {
        return Err(Error::NotASieve(format!("nodes outside the supersets of {p}")));
    }
    let fix = Compiled::new(theory).run(sieve.nodes().node_bits().clone(), pm, Some(pm));
    Ok(fix.z.contains(pm))
}

/// Whether every node `p` is covered by the sieve generated by the members
/// of `d` above it.
///
/// For poset sites the second density condition (factoring through `d`) is
/// the first condition again, since a composite lands in `d` exactly when its
/// domain does.
pub fn is_dense(theory: &Theory, d: &NodeSet) -> Result<bool> {
    theory.universe().ensure_same(d.universe())?;
    Ok(DenseCheck::new(theory, d).is_dense())
}

/// Degeneracy of the site restricted to the dense node set `d`.
///
/// The restricted topology covers `e ∈ d` by `R ∩ d` for each `R ∈ J(e)`, so
/// the empty `d`-sieve covers `e` exactly when the largest sieve on `e`
/// avoiding `d` (nodes with no superset in `d`) covers `e`. The restricted
/// topos is degenerate when every minimal member of `d` is so covered.
pub fn subsite_degeneracy(theory: &Theory, d: &NodeSet) -> Result<bool> {
    theory.universe().ensure_same(d.universe())?;
    let check = DenseCheck::new(theory, d);
    if !check.is_dense() {
        return Err(Error::NotDense);
    }
    let n = theory.universe().size();
    let below_d = downward_closure(d.node_bits(), n);
    for e in d.minimal() {
        let e = e.bits();
        let mut avoid = NodeBits::new(n);
        for r in bits::supersets(e, n) {
            if !below_d.contains(r) {
                avoid.insert(r);
            }
        }
        let fix = check.compiled.run(avoid, e, Some(e));
        if !fix.z.contains(e) {
            return Ok(false);
        }
    }
    Ok(true)
}

struct DenseCheck<'a> {
    compiled: Compiled,
    d: &'a NodeSet,
    n: usize,
}

impl<'a> DenseCheck<'a> {
    fn new(theory: &Theory, d: &'a NodeSet) -> Self {
        DenseCheck {
            compiled: Compiled::new(theory),
            d,
            n: theory.universe().size(),
        }
    }

    fn is_dense(&self) -> bool {
        let n = self.n;
        let members: Vec<u64> = self.d.node_bits().iter().collect();
        let mut empty_closure: Option<NodeBits> = None;
        for p in 0..=bits::full_mask(n) {
            if self.d.contains_mask(p) {
                continue;
            }
            let mut gens = NodeBits::new(n);
            for &q in &members {
                if bits::is_subset(p, q) {
                    gens.insert(q);
                }
            }
            let covered = if gens.is_empty() {
                // closure of the empty sieve above p is the global closure of
                // the empty set restricted to ↑p
                let z = empty_closure
                    .get_or_insert_with(|| self.compiled.run(NodeBits::new(n), 0, None).z);
                z.contains(p)
            } else {
                let sieve = upward_closure(&gens, n, p);
                self.compiled.run(sieve, p, Some(p)).z.contains(p)
            };
            if !covered {
                return false;
            }
        }
        true
    }
}
