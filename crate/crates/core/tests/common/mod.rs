//! Brute-force reference implementations used as test oracles. They follow
//! the definitions literally and share no code with the library's engines.
#![allow(dead_code)]

use std::collections::BTreeSet;

use geosat::logic::{Sequent, Theory, Universe};

fn subset(a: u64, b: u64) -> bool {
    a & !b == 0
}

/// Every `X ⊆ A` such that each axiom with premise inside `X` has a
/// disjunct inside `X`.
pub fn models(t: &Theory) -> Vec<u64> {
    let n = t.universe().size();
    (0u64..1 << n)
        .filter(|&x| {
            t.axioms().iter().all(|s| {
                !subset(s.premise_bits(), x) || s.disjunct_bits().iter().any(|&q| subset(q, x))
            })
        })
        .collect()
}

/// Least `Z ⊇ r` containing every node it directly covers, iterating the
/// two-clause definition over all nodes until nothing changes.
pub fn closure(t: &Theory, r: &BTreeSet<u64>) -> BTreeSet<u64> {
    let n = t.universe().size();
    let all = (1u64 << n) - 1;
    let mut z = r.clone();
    loop {
        let mut changed = false;
        for node in 0u64..1 << n {
            if z.contains(&node) {
                continue;
            }
            let maximal = (0u64..1 << n)
                .filter(|&s| subset(node, s))
                .all(|s| z.contains(&s));
            let by_axiom = t.axioms().iter().any(|ax| {
                subset(ax.premise_bits(), node)
                    && ax
                        .disjunct_bits()
                        .iter()
                        .all(|&q| z.contains(&((q | node) & all)))
            });
            if maximal || by_axiom {
                z.insert(node);
                changed = true;
            }
        }
        if !changed {
            return z;
        }
    }
}

pub fn degenerate(t: &Theory) -> bool {
    closure(t, &BTreeSet::new()).contains(&0)
}

/// All normalized sequents over `n` symbols with at most `max_disjuncts`
/// disjuncts, in a fixed order (premise, then disjunct list).
pub fn all_sequents(u: &Universe, max_disjuncts: usize) -> Vec<Sequent> {
    let n = u.size();
    let mut out = Vec::new();
    for p in 0u64..1 << n {
        let sups: Vec<u64> = (0u64..1 << n).filter(|&s| subset(p, s)).collect();
        let mut lists: Vec<Vec<u64>> = vec![vec![]];
        let mut frontier: Vec<Vec<u64>> = vec![vec![]];
        for _ in 0..max_disjuncts {
            let mut next = Vec::new();
            for l in &frontier {
                let start = l.last().map_or(0, |&last| sups.iter().position(|&s| s == last).unwrap() + 1);
                for &s in &sups[start..] {
                    let mut m = l.clone();
                    m.push(s);
                    next.push(m);
                }
            }
            lists.extend(next.iter().cloned());
            frontier = next;
        }
        for l in lists {
            let ds = l.into_iter().map(|m| u.set_from_mask(m).unwrap());
            out.push(Sequent::new(u.set_from_mask(p).unwrap(), ds).unwrap());
        }
    }
    out
}

/// Every theory made of `0..=max_axioms` distinct sequents from `pool`,
/// visited in lexicographic order of index combinations.
pub fn for_each_theory(u: &Universe, pool: &[Sequent], max_axioms: usize, mut f: impl FnMut(Theory)) {
    fn rec(
        u: &Universe,
        pool: &[Sequent],
        start: usize,
        left: usize,
        chosen: &mut Vec<Sequent>,
        f: &mut dyn FnMut(Theory),
    ) {
        f(Theory::new(u.clone(), chosen.iter().cloned()).unwrap());
        if left == 0 {
            return;
        }
        for i in start..pool.len() {
            chosen.push(pool[i].clone());
            rec(u, pool, i + 1, left - 1, chosen, f);
            chosen.pop();
        }
    }
    rec(u, pool, 0, max_axioms, &mut Vec::new(), &mut f);
}

pub fn universe(n: usize) -> Universe {
    Universe::new((0..n).map(|i| ((b'a' + i as u8) as char).to_string())).unwrap()
}
