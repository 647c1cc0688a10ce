//! Least-fixpoint computation of the covering closure on K(A).
//!
//! Rounds are evaluated against a snapshot of the closure taken at the start
//! of the round; the nodes covered in a round are merged in canonical node
//! order. A node can only become covered in round `k + 1` through an axiom
//! one of whose extensions `r ∪ q` was added in round `k`, so each round only
//! inspects the predecessors of the previous round's additions.

use rayon::prelude::*;

use crate::bits::{self, NodeBits};
use crate::logic::Theory;

const NONE: u32 = u32::MAX;
const PAR_THRESHOLD: usize = 2048;

struct Active {
    /// Position of the axiom in the theory.
    index: usize,
    premise: u64,
    disjuncts: Vec<u64>,
}

/// An axiom disjunct; adding a node that contains it may cover predecessors.
struct Trigger {
    active: u32,
    premise: u64,
    disjunct: u64,
}

pub(crate) struct Compiled {
    n: usize,
    active: Vec<Active>,
    triggers: Vec<Trigger>,
    bottoms: Vec<u32>,
}

pub(crate) struct Fixpoint {
    pub z: NodeBits,
    /// `(node, axiom index)` in addition order.
    pub steps: Vec<(u64, usize)>,
    pub rounds: usize,
}

impl Compiled {
    /// Trivially-true axioms (a disjunct contained in the premise) are
    /// dropped: they cover `r` only when `r` itself is already present.
    pub fn new(theory: &Theory) -> Self {
        let n = theory.universe().size();
        let mut active = Vec::new();
        let mut triggers = Vec::new();
        let mut bottoms = Vec::new();
        for (index, ax) in theory.axioms().iter().enumerate() {
            if ax.is_trivially_true() {
                continue;
            }
            let pos = active.len() as u32;
            let premise = ax.premise_bits();
            let disjuncts = ax.disjunct_bits().to_vec();
            if disjuncts.is_empty() {
                bottoms.push(pos);
            }
            for &q in &disjuncts {
                triggers.push(Trigger {
                    active: pos,
                    premise,
                    disjunct: q,
                });
            }
            active.push(Active {
                index,
                premise,
                disjuncts,
            });
        }
        Compiled {
            n,
            active,
            triggers,
            bottoms,
        }
    }

    #[inline]
    fn covers(&self, pos: u32, r: u64, z: &NodeBits) -> bool {
        let a = &self.active[pos as usize];
        bits::is_subset(a.premise, r) && a.disjuncts.iter().all(|&q| z.contains(r | q))
    }

    /// Covered predecessors of an added node `s`, as `(r, active position)`.
    fn expand(&self, s: u64, floor: u64, z: &NodeBits, out: &mut Vec<(u64, u32)>) {
        for t in &self.triggers {
            if !bits::is_subset(t.disjunct, s) {
                continue;
            }
            // r ∪ q = s with p ⊆ r: r = (s \ q) ∪ p ∪ u for u ⊆ q \ p
            let base = (s & !t.disjunct) | t.premise;
            for u in bits::submasks(t.disjunct & !t.premise) {
                let r = base | u;
                if r == s || !bits::is_subset(floor, r) || z.contains(r) {
                    continue;
                }
                if self.covers(t.active, r, z) {
                    out.push((r, t.active));
                }
            }
        }
    }

    /// Least superset of `initial` within `↑floor` containing every node it
    /// directly covers. Stops early once `target` is added.
    pub fn run(&self, initial: NodeBits, floor: u64, target: Option<u64>) -> Fixpoint {
        let n = self.n;
        let mut z = initial;
        let mut steps = Vec::new();
        let mut rounds = 0;
        if target.is_some_and(|t| z.contains(t)) {
            return Fixpoint { z, steps, rounds };
        }
        let mut best = vec![NONE; 1usize << n];
        let mut touched: Vec<u64> = Vec::new();
        let mut frontier: Vec<u64> = z.iter().filter(|&m| bits::is_subset(floor, m)).collect();
        let mut first = true;

        loop {
            let mut found: Vec<(u64, u32)> = Vec::new();
            if first {
                // with nothing else known, only bottom axioms fire; their
                // premise supersets are covered outright
                for &pos in &self.bottoms {
                    let p = self.active[pos as usize].premise | floor;
                    for r in bits::supersets(p, n) {
                        if !z.contains(r) {
                            found.push((r, pos));
                        }
                    }
                }
                first = false;
            }
            if frontier.len() >= PAR_THRESHOLD {
                let z_ref = &z;
                let parts: Vec<Vec<(u64, u32)>> = frontier
                    .par_chunks(256)
                    .map(|chunk| {
                        let mut local = Vec::new();
                        for &s in chunk {
                            self.expand(s, floor, z_ref, &mut local);
                        }
                        local
                    })
                    .collect();
                for p in parts {
                    found.extend(p);
                }
            } else {
                for &s in &frontier {
                    self.expand(s, floor, &z, &mut found);
                }
            }

            for (r, pos) in found {
                let slot = &mut best[r as usize];
                if *slot == NONE {
                    touched.push(r);
                    *slot = pos;
                } else if pos < *slot {
                    *slot = pos;
                }
            }
            if touched.is_empty() {
                break;
            }
            rounds += 1;
            touched.sort_unstable_by_key(|&m| bits::canonical_key(m, n));
            let mut hit = false;
            for &r in &touched {
                z.insert(r);
                let pos = std::mem::replace(&mut best[r as usize], NONE);
                steps.push((r, self.active[pos as usize].index));
                hit |= target == Some(r);
            }
            frontier = std::mem::take(&mut touched);
            if hit {
                break;
            }
        }
        Fixpoint { z, steps, rounds }
    }
}
