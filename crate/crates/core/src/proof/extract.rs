use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::logic::Theory;
use crate::proof::derivation::{axiom, rule_compose, rule_weaken, Derivation};
use crate::site::DegeneracyTrace;

/// Builds a derivation of `⊤ -> ⊥` from a degenerate trace.
///
/// Each node `r` of the closure was added by an axiom `p -> \/ alpha` with
/// `p ⊆ r` and every `r ∪ q` already present. Its refutation weakens the
/// axiom to `r` and composes with the refutations of the `r ∪ q`. Only nodes
/// reachable from the empty node are built, each once.
pub fn extract_refutation(theory: &Theory, trace: &DegeneracyTrace) -> Result<Derivation> {
    if !trace.verdict.is_degenerate() {
        return Err(Error::NotDegenerate);
    }
    theory.universe().ensure_same(trace.zset.universe())?;
    let u = theory.universe();

    let mut justification: HashMap<u64, (usize, usize)> = HashMap::new();
    for (order, step) in trace.steps.iter().enumerate() {
        justification.insert(step.node.bits(), (order, step.axiom));
    }

    let extensions = |r: u64, ax: usize| -> Result<Vec<u64>> {
        let s = theory
            .axioms()
            .get(ax)
            .ok_or_else(|| Error::InvalidTrace(format!("axiom {ax} out of range")))?;
        Ok(s.disjunct_bits().iter().map(|&q| q | r).collect())
    };

    // nodes reachable from the empty node through justifications
    let mut needed: Vec<(usize, u64, usize)> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    let mut stack = vec![0u64];
    while let Some(r) = stack.pop() {
        if !seen.insert(r) {
            continue;
        }
        let &(order, ax) = justification.get(&r).ok_or_else(|| {
            Error::InvalidTrace(format!("{} has no justification", u.format_mask(r)))
        })?;
        for child in extensions(r, ax)? {
            match justification.get(&child) {
                Some(&(o, _)) if o < order => stack.push(child),
                _ => {
                    return Err(Error::InvalidTrace(format!(
                        "{} is not justified before {}",
                        u.format_mask(child),
                        u.format_mask(r)
                    )))
                }
            }
        }
        needed.push((order, r, ax));
    }
    needed.sort_unstable();

    let mut leaves: HashMap<usize, Derivation> = HashMap::new();
    let mut refuted: HashMap<u64, Derivation> = HashMap::new();
    for (_, r, ax) in needed {
        let leaf = leaves
            .entry(ax)
            .or_insert_with(|| axiom(theory, ax).expect("axiom index checked"))
            .clone();
        let weakened = rule_weaken(&leaf, &u.set_unchecked(r))?;
        let d = if weakened.conclusion().is_bottom() {
            weakened
        } else {
            let subs: BTreeMap<_, _> = weakened
                .conclusion()
                .disjuncts()
                .map(|q| {
                    let sub = refuted[&q.bits()].clone();
                    (q, sub)
                })
                .collect();
            rule_compose(&weakened, &subs)?
        };
        refuted.insert(r, d);
    }
    Ok(refuted.remove(&0).expect("empty node was reached"))
}

/// Number of distinct `r -> ⊥` sub-derivations in a refutation.
pub fn refuted_nodes(d: &Derivation) -> usize {
    d.postorder()
        .iter()
        .filter(|n| n.rule() != crate::proof::Rule::Axiom && n.conclusion().is_bottom())
        .map(|n| n.conclusion().premise_bits())
        .collect::<std::collections::HashSet<_>>()
        .len()
}
