//! Finite rings and the stock theory families: non-trivial ideals, splitting
//! epimorphisms, Dedekind finiteness, truncated monomorphisms from ℕ, and a
//! seeded random generator.
//!
//! Pair symbols `(x, y)` are named `x:y`. Generators admit universes up to
//! [`HARD_MAX_UNIVERSE`]; callers enforce any tighter limit.
//!
//! The equality shorthand `[[x = y]]` compiles to the disjunct equal to the
//! premise when `x = y` (a trivially true sequent, kept) and to `⊥` otherwise.

mod map;
mod ring;

pub use map::FiniteMap;
pub use ring::FiniteRing;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bits::full_mask;
use crate::error::Result;
use crate::logic::{Sequent, Theory, TheoryBuilder, Universe, HARD_MAX_UNIVERSE};
use crate::site::NodeSet;

fn universe(names: Vec<String>) -> Result<Universe> {
    Universe::with_max(names, HARD_MAX_UNIVERSE)
}

/// `a, b, c, ...` for up to 26 elements, `a0, a1, ...` beyond.
pub(crate) fn letters(n: usize) -> Vec<String> {
    if n <= 26 {
        (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
    } else {
        (0..n).map(|i| format!("a{i}")).collect()
    }
}

fn equal_or_bottom(b: &mut TheoryBuilder, premise: u64, equal: bool) {
    if equal {
        b.push(premise, vec![premise]);
    } else {
        b.push(premise, Vec::new());
    }
}

/// The theory of non-trivial ideals of `ring`, one symbol per element:
/// `a ∧ b -> a+b`, `a -> ab`, `⊤ -> 0`, `1 -> ⊥`, `⊤ -> \/_{a≠0} a`.
pub fn gen_nti(ring: &FiniteRing) -> Result<Theory> {
    let u = universe(ring.names().to_vec())?;
    let n = ring.len();
    let bit = |a: usize| 1u64 << a;
    let mut b = TheoryBuilder::new(u);
    for x in 0..n {
        for y in 0..n {
            b.push(bit(x) | bit(y), vec![bit(ring.add(x, y))]);
        }
    }
    for x in 0..n {
        for y in 0..n {
            b.push(bit(x), vec![bit(ring.mul(x, y))]);
        }
    }
    b.push(0, vec![bit(ring.zero())]);
    b.push(bit(ring.one()), Vec::new());
    b.push(
        0,
        (0..n).filter(|&a| a != ring.zero()).map(bit).collect(),
    );
    Ok(b.finish())
}

/// Symbol index of `(b, a)` in the universe `B × A` of [`gen_splitting_epi`].
fn pair_index(f: &FiniteMap, b: usize, a: usize) -> usize {
    b * f.domain().len() + a
}

fn epi_universe(f: &FiniteMap) -> Result<Universe> {
    let mut names = Vec::new();
    for b in f.codomain() {
        for a in f.domain() {
            names.push(format!("{b}:{a}"));
        }
    }
    universe(names)
}

/// The theory of sections of a surjection `p: A -> B`, over symbols `b:a`:
/// `⊤ -> \/_a (b,a)`, `(b,a) ∧ (b,a') -> [[a = a']]`, `(b,a) -> [[p(a) = b]]`.
pub fn gen_splitting_epi(f: &FiniteMap) -> Result<Theory> {
    f.ensure_surjective()?;
    let u = epi_universe(f)?;
    let (na, nb) = (f.domain().len(), f.codomain().len());
    let bit = |b: usize, a: usize| 1u64 << pair_index(f, b, a);
    let mut t = TheoryBuilder::new(u);
    for b in 0..nb {
        t.push(0, (0..na).map(|a| bit(b, a)).collect());
    }
    for b in 0..nb {
        for a in 0..na {
            for a2 in 0..na {
                equal_or_bottom(&mut t, bit(b, a) | bit(b, a2), a == a2);
            }
        }
    }
    for b in 0..nb {
        for a in 0..na {
            equal_or_bottom(&mut t, bit(b, a), f.apply(a) == b);
        }
    }
    Ok(t.finish())
}

/// Nodes of `K(B × A)` that are graphs of partial sections of `f`.
pub fn partial_sections_nodes(f: &FiniteMap) -> Result<NodeSet> {
    f.ensure_surjective()?;
    let u = epi_universe(f)?;
    let fibres: Vec<Vec<usize>> = (0..f.codomain().len())
        .map(|b| (0..f.domain().len()).filter(|&a| f.apply(a) == b).collect())
        .collect();
    let mut masks = vec![0u64];
    for (b, fibre) in fibres.iter().enumerate() {
        let mut next = Vec::with_capacity(masks.len() * (fibre.len() + 1));
        for &m in &masks {
            next.push(m);
            for &a in fibre {
                next.push(m | 1u64 << pair_index(f, b, a));
            }
        }
        masks = next;
    }
    NodeSet::from_nodes(&u, masks.into_iter().map(|m| u.set_unchecked(m)))
}

/// Dedekind finiteness for an `n`-element set `A`, over `A ⊔ (A × A)`:
/// a total injective relation `(a,b)` avoiding a marked element `b`.
pub fn gen_dedekind(n: usize) -> Result<Theory> {
    let elems = letters(n);
    let mut names = elems.clone();
    for a in &elems {
        for b in &elems {
            names.push(format!("{a}:{b}"));
        }
    }
    let u = universe(names)?;
    let el = |a: usize| 1u64 << a;
    let pr = |a: usize, b: usize| 1u64 << (n + a * n + b);
    let mut t = TheoryBuilder::new(u);
    for a in 0..n {
        t.push(0, (0..n).map(|b| pr(a, b)).collect());
    }
    for a in 0..n {
        for b in 0..n {
            for b2 in 0..n {
                equal_or_bottom(&mut t, pr(a, b) | pr(a, b2), b == b2);
            }
        }
    }
    for a in 0..n {
        for a2 in 0..n {
            for b in 0..n {
                equal_or_bottom(&mut t, pr(a, b) | pr(a2, b), a == a2);
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            t.push(el(b) | pr(a, b), Vec::new());
        }
    }
    t.push(0, (0..n).map(el).collect());
    Ok(t.finish())
}

/// Injections from `{0..k}` into an `n`-element set, over symbols `i:a`.
pub fn gen_mono(k: usize, n: usize) -> Result<Theory> {
    let elems = letters(n);
    let mut names = Vec::new();
    for i in 0..=k {
        for a in &elems {
            names.push(format!("{i}:{a}"));
        }
    }
    let u = universe(names)?;
    let pr = |i: usize, a: usize| 1u64 << (i * n + a);
    let mut t = TheoryBuilder::new(u);
    for i in 0..=k {
        for a in 0..n {
            for a2 in 0..n {
                equal_or_bottom(&mut t, pr(i, a) | pr(i, a2), a == a2);
            }
        }
    }
    for i in 0..=k {
        for i2 in 0..=k {
            for a in 0..n {
                equal_or_bottom(&mut t, pr(i, a) | pr(i2, a), i == i2);
            }
        }
    }
    for i in 0..=k {
        t.push(0, (0..n).map(|a| pr(i, a)).collect());
    }
    Ok(t.finish())
}

/// A seeded random theory over symbols `x0, x1, ...`.
///
/// Each axiom has a uniform random premise subset, a uniform disjunct count
/// in `0..=max_disjuncts`, and uniform random disjunct subsets; it is then
/// normalized. The same arguments always give the same theory.
pub fn gen_random(symbols: usize, axioms: usize, max_disjuncts: usize, seed: u64) -> Result<Theory> {
    let u = universe((0..symbols).map(|i| format!("x{i}")).collect())?;
    let full = full_mask(symbols);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(axioms);
    for _ in 0..axioms {
        let p = rng.gen::<u64>() & full;
        let count = rng.gen_range(0..=max_disjuncts);
        let ds = (0..count).map(|_| rng.gen::<u64>() & full).collect();
        out.push(Sequent::from_masks(u.clone(), p, ds));
    }
    Theory::new(u, out)
}
