use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::bits;
use crate::error::{Error, Result};
use crate::logic::{KSet, Sequent, Theory};

/// Inference rule at a derivation node.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    /// Leaf: an axiom of the theory.
    Axiom,
    /// `⊢ p -> p`.
    Identity,
    /// `p -> \/ alpha ⊢ p' -> \/ (q ∪ p')` for `p ⊆ p'`.
    Weaken,
    /// `p -> \/ alpha, {q -> \/ alpha_q} ⊢ p -> \/ alpha_q...`.
    Compose,
    /// `p -> ⊥, p -> \/ alpha ⊢ p -> \/ alpha`.
    Absorb,
}

impl Rule {
    pub fn name(self) -> &'static str {
        match self {
            Rule::Axiom => "axiom",
            Rule::Identity => "identity",
            Rule::Weaken => "rule2",
            Rule::Compose => "rule3",
            Rule::Absorb => "rule3b",
        }
    }

    pub fn from_name(name: &str) -> Option<Rule> {
        Some(match name {
            "axiom" => Rule::Axiom,
            "identity" => Rule::Identity,
            "rule2" => Rule::Weaken,
            "rule3" => Rule::Compose,
            "rule3b" => Rule::Absorb,
            _ => return None,
        })
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug)]
pub(crate) struct Node {
    pub conclusion: Sequent,
    pub rule: Rule,
    pub premises: Vec<Derivation>,
    pub enlarged: Option<KSet>,
}

/// A finite proof in the Grothendieck calculus. Sub-derivations are shared,
/// so a derivation is a DAG in memory.
///
/// For [`Rule::Compose`] the first premise is the main sequent `p -> \/ alpha`
/// and the remaining premises derive `q -> ...` for each `q ∈ alpha`, in the
/// canonical order of `alpha`.
#[derive(Clone)]
pub struct Derivation(pub(crate) Arc<Node>);

impl Derivation {
    /// Assembles a node without checking the rule schema; see
    /// [`check_derivation`](crate::proof::check_derivation).
    pub fn from_parts(
        rule: Rule,
        conclusion: Sequent,
        premises: Vec<Derivation>,
        enlarged: Option<KSet>,
    ) -> Self {
        Derivation(Arc::new(Node {
            conclusion,
            rule,
            premises,
            enlarged,
        }))
    }

    pub fn conclusion(&self) -> &Sequent {
        &self.0.conclusion
    }

    pub fn rule(&self) -> Rule {
        self.0.rule
    }

    pub fn premises(&self) -> &[Derivation] {
        &self.0.premises
    }

    /// The enlarged premise `p'` of a [`Rule::Weaken`] step.
    pub fn enlarged(&self) -> Option<&KSet> {
        self.0.enlarged.as_ref()
    }

    pub(crate) fn id(&self) -> *const Node {
        Arc::as_ptr(&self.0)
    }

    pub fn ptr_eq(&self, other: &Derivation) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    /// Longest root-to-leaf path, counting nodes.
    pub fn depth(&self) -> usize {
        let mut memo = std::collections::HashMap::new();
        for d in self.postorder() {
            let below = d
                .premises()
                .iter()
                .map(|p| memo[&p.id()])
                .max()
                .unwrap_or(0);
            memo.insert(d.id(), below + 1);
        }
        memo[&self.id()]
    }

    /// Distinct nodes, children before parents.
    pub fn postorder(&self) -> Vec<Derivation> {
        let mut seen = std::collections::HashSet::new();
        let mut out = Vec::new();
        let mut stack = vec![(self.clone(), false)];
        while let Some((d, expanded)) = stack.pop() {
            if expanded {
                out.push(d);
                continue;
            }
            if !seen.insert(d.id()) {
                continue;
            }
            stack.push((d.clone(), true));
            for p in d.premises().iter().rev() {
                if !seen.contains(&p.id()) {
                    stack.push((p.clone(), false));
                }
            }
        }
        out
    }

    /// Number of distinct nodes.
    pub fn size(&self) -> usize {
        self.postorder().len()
    }
}

impl fmt::Debug for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Derivation")
            .field("rule", &self.rule())
            .field("conclusion", self.conclusion())
            .field("premises", &self.premises().len())
            .finish()
    }
}

/// Leaf for axiom `index` of `theory`.
pub fn axiom(theory: &Theory, index: usize) -> Option<Derivation> {
    let s = theory.axioms().get(index)?;
    Some(Derivation::from_parts(Rule::Axiom, s.clone(), Vec::new(), None))
}

/// `⊢ p -> p`.
pub fn rule_identity(p: &KSet) -> Derivation {
    let s = Sequent::new(p.clone(), [p.clone()]).expect("single universe");
    Derivation::from_parts(Rule::Identity, s, Vec::new(), None)
}

/// From `p -> \/ alpha` derive `p' -> \/ (q ∪ p')` when `p ⊆ p'`.
pub fn rule_weaken(d: &Derivation, enlarged: &KSet) -> Result<Derivation> {
    let c = d.conclusion();
    c.universe().ensure_same(enlarged.universe())?;
    let p2 = enlarged.bits();
    if !bits::is_subset(c.premise_bits(), p2) {
        return Err(Error::PremiseNotContained);
    }
    let disjuncts = c.disjunct_bits().iter().map(|&q| q | p2).collect();
    let s = Sequent::from_masks(c.universe().clone(), p2, disjuncts);
    Ok(Derivation::from_parts(
        Rule::Weaken,
        s,
        vec![d.clone()],
        Some(enlarged.clone()),
    ))
}

/// From `p -> \/ alpha` and `q -> \/ alpha_q` for each `q ∈ alpha`, derive
/// `p -> \/ (union of the alpha_q)`.
pub fn rule_compose(d: &Derivation, subs: &BTreeMap<KSet, Derivation>) -> Result<Derivation> {
    let c = d.conclusion();
    let u = c.universe();
    let mut premises = vec![d.clone()];
    let mut out = Vec::new();
    for q in c.disjuncts() {
        let sub = subs
            .get(&q)
            .ok_or_else(|| Error::MissingSubderivation(q.to_string()))?;
        let sc = sub.conclusion();
        u.ensure_same(sc.universe())?;
        if sc.premise_bits() != q.bits() {
            return Err(Error::PremiseMismatch(format!("{} for {}", sc.premise(), q)));
        }
        out.extend_from_slice(sc.disjunct_bits());
        premises.push(sub.clone());
    }
    let s = Sequent::from_masks(u.clone(), c.premise_bits(), out);
    Ok(Derivation::from_parts(Rule::Compose, s, premises, None))
}

/// From `p -> ⊥` and `p -> \/ alpha`, conclude `p -> \/ alpha`.
pub fn rule_absorb(bottom: &Derivation, d: &Derivation) -> Result<Derivation> {
    let b = bottom.conclusion();
    let c = d.conclusion();
    b.universe().ensure_same(c.universe())?;
    if !b.is_bottom() || b.premise_bits() != c.premise_bits() {
        return Err(Error::PremiseMismatch(format!("{b} does not refute {}", c.premise())));
    }
    Ok(Derivation::from_parts(
        Rule::Absorb,
        c.clone(),
        vec![bottom.clone(), d.clone()],
        None,
    ))
}
