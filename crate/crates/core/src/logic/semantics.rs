//! Two-valued semantics: a model is a subset `X` of the universe such that
//! every axiom whose premise lies inside `X` has some disjunct inside `X`.

use crate::bits;
use crate::error::Result;
use crate::logic::sequent::{Sequent, Theory};
use crate::logic::universe::KSet;

pub fn satisfies(x: &KSet, s: &Sequent) -> Result<bool> {
    x.universe().ensure_same(s.universe())?;
    Ok(satisfies_mask(x.bits(), s))
}

#[inline]
pub(crate) fn satisfies_mask(x: u64, s: &Sequent) -> bool {
    !bits::is_subset(s.premise_bits(), x)
        || s.disjunct_bits().iter().any(|&q| bits::is_subset(q, x))
}

pub fn is_model(x: &KSet, theory: &Theory) -> Result<bool> {
    x.universe().ensure_same(theory.universe())?;
    Ok(is_model_mask(x.bits(), theory))
}

#[inline]
pub(crate) fn is_model_mask(x: u64, theory: &Theory) -> bool {
    theory.axioms().iter().all(|s| satisfies_mask(x, s))
}

/// All models of `theory` in lexicographic subset order, stopping after
/// `limit` of them. Exhaustive: walks all `2^|A|` subsets in the worst case.
pub fn find_models(theory: &Theory, limit: Option<usize>) -> Vec<KSet> {
    let u = theory.universe();
    let n = u.size();
    let limit = limit.unwrap_or(usize::MAX);
    let mut out = Vec::new();
    if limit == 0 {
        return out;
    }
    let mut x = Some(0u64);
    while let Some(m) = x {
        if is_model_mask(m, theory) {
            out.push(u.set_unchecked(m));
            if out.len() >= limit {
                break;
            }
        }
        x = bits::lex_next(m, n);
    }
    out
}

pub fn has_model(theory: &Theory) -> bool {
    !find_models(theory, Some(1)).is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::universe::Universe;

    fn u2() -> Universe {
        Universe::new(["a", "b"]).unwrap()
    }

    #[test]
    fn satisfies_examples() {
        let u = Universe::new(["a"]).unwrap();
        let a = u.set_of(["a"]).unwrap();
        let a_bot = Sequent::refutation(a.clone());
        assert!(!satisfies(&a, &a_bot).unwrap());
        assert!(satisfies(&u.empty_set(), &a_bot).unwrap());
        let top_a = Sequent::new(u.empty_set(), [a.clone()]).unwrap();
        assert!(satisfies(&a, &top_a).unwrap());
    }

    #[test]
    fn find_models_two_exclusive_choices() {
        let u = u2();
        let a = u.set_of(["a"]).unwrap();
        let b = u.set_of(["b"]).unwrap();
        let t = Theory::new(
            u.clone(),
            [
                Sequent::new(u.empty_set(), [a.clone(), b.clone()]).unwrap(),
                Sequent::refutation(u.full_set()),
            ],
        )
        .unwrap();
        assert_eq!(find_models(&t, None), vec![a, b]);
    }

    #[test]
    fn find_models_unsatisfiable_and_vacuous() {
        let u = Universe::new(["a"]).unwrap();
        let t = Theory::new(u.clone(), [Sequent::refutation(u.empty_set())]).unwrap();
        assert!(find_models(&t, None).is_empty());
        let t = Theory::empty(u.clone());
        assert_eq!(find_models(&t, None), vec![u.empty_set(), u.full_set()]);
        assert_eq!(find_models(&t, Some(1)), vec![u.empty_set()]);
        assert!(is_model(&u.full_set(), &t).unwrap());
    }

    #[test]
    fn find_models_on_empty_universe() {
        let u = Universe::new(Vec::<String>::new()).unwrap();
        assert_eq!(find_models(&Theory::empty(u.clone()), None), vec![u.empty_set()]);
    }
}
