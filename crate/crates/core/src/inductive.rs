//! Finite inductive constructions `(X, S, P, C)`, their closures, and the
//! poset site induced by a downward-stratified construction.
//!
//! Elements of `X` are addressed by index; subsets are `BTreeSet<usize>`.

use std::collections::{BTreeSet, HashMap, HashSet};

use rand::Rng;

use crate::error::{Error, Result};

pub type Subset = BTreeSet<usize>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructionStep {
    pub name: String,
    /// Sorted, deduplicated prerequisite indices.
    pub prereqs: Vec<usize>,
    pub result: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InductiveConstruction {
    elements: Vec<String>,
    steps: Vec<ConstructionStep>,
}

impl InductiveConstruction {
    pub fn new(elements: Vec<String>, steps: Vec<ConstructionStep>) -> Result<Self> {
        let mut seen = HashSet::new();
        for e in &elements {
            if !seen.insert(e.as_str()) {
                return Err(Error::DuplicateSymbol(e.clone()));
            }
        }
        let mut names = HashSet::new();
        let n = elements.len();
        let mut steps = steps;
        for s in &mut steps {
            if !names.insert(s.name.clone()) {
                return Err(Error::InvalidConstruction(format!("duplicate step `{}`", s.name)));
            }
            if s.result >= n || s.prereqs.iter().any(|&x| x >= n) {
                return Err(Error::InvalidConstruction(format!(
                    "step `{}` refers to an element outside X",
                    s.name
                )));
            }
            s.prereqs.sort_unstable();
            s.prereqs.dedup();
        }
        Ok(InductiveConstruction { elements, steps })
    }

    /// Steps given as `(prerequisites, result)`, named `s0, s1, ...`.
    pub fn from_indices(n: usize, steps: &[(Vec<usize>, usize)]) -> Result<Self> {
        let elements = (0..n).map(|i| i.to_string()).collect();
        let steps = steps
            .iter()
            .enumerate()
            .map(|(i, (p, c))| ConstructionStep {
                name: format!("s{i}"),
                prereqs: p.clone(),
                result: *c,
            })
            .collect();
        Self::new(elements, steps)
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn steps(&self) -> &[ConstructionStep] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == name)
    }

    /// Least superset of `y` closed under the steps.
    pub fn closure(&self, y: &Subset) -> Subset {
        let n = self.len();
        let mut present = vec![false; n];
        for &x in y {
            if x < n {
                present[x] = true;
            }
        }
        let mut missing: Vec<usize> = self
            .steps
            .iter()
            .map(|s| s.prereqs.iter().filter(|&&x| !present[x]).count())
            .collect();
        let mut waiting: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (i, s) in self.steps.iter().enumerate() {
            for &x in &s.prereqs {
                if !present[x] {
                    waiting[x].push(i);
                }
            }
        }
        let mut work: Vec<usize> = (0..self.steps.len()).filter(|&i| missing[i] == 0).collect();
        while let Some(i) = work.pop() {
            let c = self.steps[i].result;
            if present[c] {
                continue;
            }
            present[c] = true;
            for &j in &waiting[c] {
                missing[j] -= 1;
                if missing[j] == 0 {
                    work.push(j);
                }
            }
        }
        (0..n).filter(|&x| present[x]).collect()
    }

    pub fn is_total(&self) -> bool {
        self.closure(&Subset::new()).len() == self.len()
    }

    /// Both stratification conditions for `order`: prerequisites lie below
    /// results, and every `y' <= C(s)` has a step `s'` producing it whose
    /// prerequisites lie in the down-closure of `P(s)`.
    pub fn is_downward_stratified(&self, order: &StratOrder) -> bool {
        if order.len() != self.len() {
            return false;
        }
        let below_result = self
            .steps
            .iter()
            .all(|s| s.prereqs.iter().all(|&x| order.le(x, s.result)));
        if !below_result {
            return false;
        }
        let by_result = self.steps_by_result();
        self.steps.iter().all(|s| {
            let down = order.down_of(&s.prereqs);
            (0..self.len())
                .filter(|&y2| order.le(y2, s.result))
                .all(|y2| {
                    by_result[y2]
                        .iter()
                        .any(|&t| self.steps[t].prereqs.iter().all(|x| down.contains(x)))
                })
        })
    }

    fn steps_by_result(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.len()];
        for (i, s) in self.steps.iter().enumerate() {
            out[s.result].push(i);
        }
        out
    }

    /// Covering closure `R̄` on the poset `(X, order)`: `R` directly covers
    /// `x` when it contains the down-closure of `P(s)` for a step producing `x`.
    pub fn site_closure(&self, order: &StratOrder, r: &Subset) -> Subset {
        let downs: Vec<Subset> = self
            .steps
            .iter()
            .map(|s| order.down_of(&s.prereqs))
            .collect();
        let mut z: Subset = r.iter().copied().filter(|&x| x < self.len()).collect();
        loop {
            let added: Vec<usize> = self
                .steps
                .iter()
                .zip(&downs)
                .filter(|(s, d)| !z.contains(&s.result) && d.is_subset(&z))
                .map(|(s, _)| s.result)
                .collect();
            if added.is_empty() {
                return z;
            }
            z.extend(added);
        }
    }

    /// Whether the empty sieve covers every element of the stratified site.
    pub fn stratified_degeneracy(&self, order: &StratOrder) -> Result<bool> {
        if !self.is_downward_stratified(order) {
            return Err(Error::NotStratified);
        }
        Ok(self.site_closure(order, &Subset::new()).len() == self.len())
    }
}

/// A partial order on `{0..n}`, stored as a dense relation matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratOrder {
    le: Vec<Vec<bool>>,
}

impl StratOrder {
    /// Validates reflexivity, antisymmetry and transitivity.
    pub fn new(le: Vec<Vec<bool>>) -> Result<Self> {
        let n = le.len();
        if le.iter().any(|row| row.len() != n) {
            return Err(Error::NotAPartialOrder("relation matrix is not square".into()));
        }
        for x in 0..n {
            if !le[x][x] {
                return Err(Error::NotAPartialOrder(format!("{x} <= {x} is missing")));
            }
            for y in 0..n {
                if x != y && le[x][y] && le[y][x] {
                    return Err(Error::NotAPartialOrder(format!("{x} and {y} are mutually below")));
                }
                for z in 0..n {
                    if le[x][y] && le[y][z] && !le[x][z] {
                        return Err(Error::NotAPartialOrder(format!(
                            "{x} <= {y} <= {z} but not {x} <= {z}"
                        )));
                    }
                }
            }
        }
        Ok(StratOrder { le })
    }

    /// Reflexive-transitive closure of the given pairs; fails on cycles.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut le = vec![vec![false; n]; n];
        for (x, row) in le.iter_mut().enumerate() {
            row[x] = true;
        }
        for &(x, y) in pairs {
            if x >= n || y >= n {
                return Err(Error::NotAPartialOrder(format!("pair ({x}, {y}) out of range")));
            }
            le[x][y] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if le[i][k] {
                    for j in 0..n {
                        if le[k][j] {
                            le[i][j] = true;
                        }
                    }
                }
            }
        }
        Self::new(le)
    }

    pub fn discrete(n: usize) -> Self {
        Self::from_pairs(n, &[]).expect("identity relation is a partial order")
    }

    /// `0 <= 1 <= ... <= n-1`.
    pub fn chain(n: usize) -> Self {
        let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_pairs(n, &pairs).expect("a chain is a partial order")
    }

    pub fn len(&self) -> usize {
        self.le.len()
    }

    pub fn is_empty(&self) -> bool {
        self.le.is_empty()
    }

    pub fn le(&self, x: usize, y: usize) -> bool {
        self.le[x][y]
    }

    pub fn down_of(&self, xs: &[usize]) -> Subset {
        (0..self.len())
            .filter(|&y| xs.iter().any(|&x| self.le[y][x]))
            .collect()
    }

    pub fn is_down_closed(&self, set: &Subset) -> bool {
        let xs: Vec<usize> = set.iter().copied().collect();
        self.down_of(&xs) == *set
    }
}

/// A random construction on `n` elements with up to `max_steps` steps, each
/// step taking a uniform random subset of `X` as prerequisites.
pub fn random_construction<R: Rng>(rng: &mut R, n: usize, max_steps: usize) -> InductiveConstruction {
    let count = rng.gen_range(0..=max_steps);
    let steps: Vec<(Vec<usize>, usize)> = if n == 0 {
        Vec::new()
    } else {
        (0..count)
            .map(|_| {
                let p = (0..n).filter(|_| rng.gen_bool(0.3)).collect();
                (p, rng.gen_range(0..n))
            })
            .collect()
    };
    InductiveConstruction::from_indices(n, &steps).expect("indices in range")
}

/// A random partial order on `n` elements: a random DAG over the natural
/// order, transitively closed.
pub fn random_order<R: Rng>(rng: &mut R, n: usize) -> StratOrder {
    let mut pairs = Vec::new();
    for y in 0..n {
        for x in 0..y {
            if rng.gen_bool(0.35) {
                pairs.push((x, y));
            }
        }
    }
    StratOrder::from_pairs(n, &pairs).expect("edges respect index order")
}

/// A random downward-stratified construction with `n` elements.
///
/// Steps take prerequisites below their result; the second stratification
/// condition is then repaired by adding, for each unmet `(s, y')`, a step
/// producing `y'` from a subset of `↓P(s) ∩ ↓y'`. Repair terminates since
/// only finitely many distinct steps exist.
pub fn random_stratified<R: Rng>(
    rng: &mut R,
    n: usize,
    max_steps: usize,
) -> (InductiveConstruction, StratOrder) {
    let order = random_order(rng, n);
    let mut steps: Vec<(Vec<usize>, usize)> = Vec::new();
    if n > 0 {
        for _ in 0..rng.gen_range(0..=max_steps) {
            let y = rng.gen_range(0..n);
            let p: Vec<usize> = (0..n)
                .filter(|&x| order.le(x, y) && rng.gen_bool(0.4))
                .collect();
            steps.push((p, y));
        }
    }
    let mut i = 0;
    while i < steps.len() {
        let (p, y) = steps[i].clone();
        let down = order.down_of(&p);
        for y2 in (0..n).filter(|&y2| order.le(y2, y)) {
            let met = steps
                .iter()
                .any(|(p2, c2)| *c2 == y2 && p2.iter().all(|x| down.contains(x)));
            if met {
                continue;
            }
            // any such step is new: it would otherwise have met the condition
            let p2: Vec<usize> = down
                .iter()
                .copied()
                .filter(|&x| order.le(x, y2) && rng.gen_bool(0.5))
                .collect();
            steps.push((p2, y2));
        }
        i += 1;
    }
    let ic = InductiveConstruction::from_indices(n, &steps).expect("indices in range");
    (ic, order)
}

/// Names for an order file's elements resolved against a construction.
pub(crate) fn resolve_pairs(
    ic: &InductiveConstruction,
    pairs: &[(String, String)],
) -> Result<Vec<(usize, usize)>> {
    let index: HashMap<&str, usize> = ic
        .elements()
        .iter()
        .enumerate()
        .map(|(i, e)| (e.as_str(), i))
        .collect();
    pairs
        .iter()
        .map(|(x, y)| {
            let get = |s: &String| {
                index
                    .get(s.as_str())
                    .copied()
                    .ok_or_else(|| Error::UnknownSymbol(s.clone()))
            };
            Ok((get(x)?, get(y)?))
        })
        .collect()
}
