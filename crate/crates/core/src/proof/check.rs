//! Replays a derivation against the rule schemas. Shares nothing with
//! refutation extraction: every conclusion is recomputed from the premises'
//! conclusions and compared for exact equality.

use std::collections::HashSet;
use std::fmt;

use crate::logic::{Sequent, Theory};
use crate::proof::derivation::{Derivation, Rule};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FailureReason {
    UnknownAxiom(String),
    MixedUniverse,
    WrongPremiseCount { expected: usize, found: usize },
    MissingEnlargedPremise,
    UnexpectedEnlargedPremise,
    PremiseNotContained,
    SubderivationMismatch { position: usize },
    NotARefutation,
    ConclusionMismatch { expected: String, found: String },
}

impl fmt::Display for FailureReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FailureReason::UnknownAxiom(s) => write!(f, "UnknownAxiom: {s} is not an axiom"),
            FailureReason::MixedUniverse => f.write_str("MixedUniverse"),
            FailureReason::WrongPremiseCount { expected, found } => {
                write!(f, "WrongPremiseCount: expected {expected}, found {found}")
            }
            FailureReason::MissingEnlargedPremise => f.write_str("MissingEnlargedPremise"),
            FailureReason::UnexpectedEnlargedPremise => f.write_str("UnexpectedEnlargedPremise"),
            FailureReason::PremiseNotContained => f.write_str("PremiseNotContained"),
            FailureReason::SubderivationMismatch { position } => {
                write!(f, "SubderivationMismatch at premise {position}")
            }
            FailureReason::NotARefutation => f.write_str("NotARefutation: root is not ⊤ -> ⊥"),
            FailureReason::ConclusionMismatch { expected, found } => {
                write!(f, "ConclusionMismatch: expected {expected}, found {found}")
            }
        }
    }
}

/// Where replay failed: premise indices from the root, and why.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckFailure {
    pub path: Vec<usize>,
    pub reason: FailureReason,
}

impl fmt::Display for CheckFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let path: Vec<String> = self.path.iter().map(|i| i.to_string()).collect();
        write!(f, "at /{}: {}", path.join("/"), self.reason)
    }
}

impl std::error::Error for CheckFailure {}

pub fn check_derivation(theory: &Theory, d: &Derivation) -> Result<(), CheckFailure> {
    // iterative post-order; shared nodes are checked once
    let mut done: HashSet<*const ()> = HashSet::new();
    let mut stack: Vec<(Derivation, Vec<usize>, bool)> = vec![(d.clone(), Vec::new(), false)];
    while let Some((node, path, expanded)) = stack.pop() {
        let key = node.id() as *const ();
        if done.contains(&key) {
            continue;
        }
        if expanded {
            check_node(theory, &node).map_err(|reason| CheckFailure {
                path: path.clone(),
                reason,
            })?;
            done.insert(key);
            continue;
        }
        stack.push((node.clone(), path.clone(), true));
        for (i, p) in node.premises().iter().enumerate().rev() {
            let mut sub = path.clone();
            sub.push(i);
            stack.push((p.clone(), sub, false));
        }
    }
    Ok(())
}

/// A derivation of `⊤ -> ⊥` that replays.
pub fn check_refutation(theory: &Theory, d: &Derivation) -> Result<(), CheckFailure> {
    if !d.conclusion().is_top_to_bottom() {
        return Err(CheckFailure {
            path: Vec::new(),
            reason: FailureReason::NotARefutation,
        });
    }
    check_derivation(theory, d)
}

fn expect_premises(node: &Derivation, n: usize) -> Result<(), FailureReason> {
    if node.premises().len() != n {
        return Err(FailureReason::WrongPremiseCount {
            expected: n,
            found: node.premises().len(),
        });
    }
    Ok(())
}

fn expect_conclusion(node: &Derivation, premise: u64, disjuncts: Vec<u64>) -> Result<(), FailureReason> {
    let c = node.conclusion();
    let mut want = disjuncts;
    want.sort_unstable();
    want.dedup();
    let mut have = c.disjunct_bits().to_vec();
    have.sort_unstable();
    if c.premise_bits() != premise || have != want {
        let u = c.universe();
        let render = |p: u64, ds: &[u64]| {
            let parts: Vec<String> = ds.iter().map(|&q| u.format_mask(q)).collect();
            format!("{} -> [{}]", u.format_mask(p), parts.join(" | "))
        };
        return Err(FailureReason::ConclusionMismatch {
            expected: render(premise, &want),
            found: render(c.premise_bits(), &have),
        });
    }
    Ok(())
}

fn check_node(theory: &Theory, node: &Derivation) -> Result<(), FailureReason> {
    let c: &Sequent = node.conclusion();
    if c.universe() != theory.universe()
        || node.premises().iter().any(|p| p.conclusion().universe() != c.universe())
    {
        return Err(FailureReason::MixedUniverse);
    }
    if node.rule() != Rule::Weaken && node.enlarged().is_some() {
        return Err(FailureReason::UnexpectedEnlargedPremise);
    }
    match node.rule() {
        Rule::Axiom => {
            expect_premises(node, 0)?;
            let p = c.premise_bits();
            let normalized: Vec<u64> = c.disjunct_bits().iter().map(|&q| q | p).collect();
            let known = theory.axioms().iter().any(|ax| {
                let mut a = ax.disjunct_bits().to_vec();
                a.sort_unstable();
                let mut b = normalized.clone();
                b.sort_unstable();
                b.dedup();
                ax.premise_bits() == p && a == b
            });
            if !known {
                return Err(FailureReason::UnknownAxiom(c.to_string()));
            }
        }
        Rule::Identity => {
            expect_premises(node, 0)?;
            let p = c.premise_bits();
            expect_conclusion(node, p, vec![p])?;
        }
        Rule::Weaken => {
            expect_premises(node, 1)?;
            let enlarged = node
                .enlarged()
                .ok_or(FailureReason::MissingEnlargedPremise)?;
            if enlarged.universe() != c.universe() {
                return Err(FailureReason::MixedUniverse);
            }
            let from = node.premises()[0].conclusion();
            let p2 = enlarged.bits();
            if from.premise_bits() & !p2 != 0 {
                return Err(FailureReason::PremiseNotContained);
            }
            let ds = from.disjunct_bits().iter().map(|&q| q | p2).collect();
            expect_conclusion(node, p2, ds)?;
        }
        Rule::Compose => {
            let premises = node.premises();
            if premises.is_empty() {
                return Err(FailureReason::WrongPremiseCount {
                    expected: 1,
                    found: 0,
                });
            }
            let main = premises[0].conclusion();
            let alpha = main.disjunct_bits();
            expect_premises(node, 1 + alpha.len())?;
            let mut ds = Vec::new();
            for (i, &q) in alpha.iter().enumerate() {
                let sub = premises[i + 1].conclusion();
                if sub.premise_bits() != q {
                    return Err(FailureReason::SubderivationMismatch { position: i + 1 });
                }
                ds.extend_from_slice(sub.disjunct_bits());
            }
            expect_conclusion(node, main.premise_bits(), ds)?;
        }
        Rule::Absorb => {
            expect_premises(node, 2)?;
            let bot = node.premises()[0].conclusion();
            let other = node.premises()[1].conclusion();
            if !bot.is_bottom() || bot.premise_bits() != other.premise_bits() {
                return Err(FailureReason::SubderivationMismatch { position: 0 });
            }
            expect_conclusion(node, other.premise_bits(), other.disjunct_bits().to_vec())?;
        }
    }
    Ok(())
}
