//! Bitmask helpers shared by the kernel and the site engine.
//!
//! A node of K(A) is a `u64` whose bit `i` is set when symbol `i` belongs to
//! it. Universes are capped well below 64 symbols so dense tables indexed by
//! mask stay addressable.

use std::cmp::Ordering;

#[inline]
pub fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

#[inline]
pub fn is_subset(a: u64, b: u64) -> bool {
    a & !b == 0
}

/// Sort key realising the canonical node order: cardinality ascending, then
/// lexicographic on the ascending index sequence.
///
/// For equal cardinality, the lexicographically smaller sequence is the one
/// holding the lowest differing index, which is the larger mask once bits are
/// reversed; hence the complement.
#[inline]
pub fn canonical_key(mask: u64, n: usize) -> u64 {
    debug_assert!(n <= 32);
    let rev = if n == 0 {
        0
    } else {
        mask.reverse_bits() >> (64 - n)
    };
    ((mask.count_ones() as u64) << 32) | (!rev & full_mask(n))
}

pub fn canonical_cmp(a: u64, b: u64) -> Ordering {
    a.count_ones().cmp(&b.count_ones()).then_with(|| lex_cmp(a, b))
}

/// Lexicographic comparison of the ascending index sequences, with a proper
/// prefix ordered first.
pub fn lex_cmp(a: u64, b: u64) -> Ordering {
    if a == b {
        return Ordering::Equal;
    }
    let diff = a ^ b;
    let low = diff & diff.wrapping_neg();
    // Below `low` both sequences agree. The one containing `low` has it at the
    // next position; the other either continues with a larger index or ends.
    let below = low - 1;
    if a & low != 0 {
        // a has the smaller element here unless b ended already.
        if b & !below == 0 {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    } else if a & !below == 0 {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

/// Successor of `mask` in lexicographic subset order over `n` symbols, or
/// `None` after the last subset. The first subset is the empty set.
pub fn lex_next(mask: u64, n: usize) -> Option<u64> {
    if n == 0 {
        return None;
    }
    if mask == 0 {
        return Some(1);
    }
    let last = 63 - mask.leading_zeros() as usize;
    if last + 1 < n {
        return Some(mask | (1u64 << (last + 1)));
    }
    let rest = mask & !(1u64 << last);
    if rest == 0 {
        return None;
    }
    let new_last = 63 - rest.leading_zeros() as usize;
    Some((rest & !(1u64 << new_last)) | (1u64 << (new_last + 1)))
}

/// All supersets of `base` within `n` symbols, in increasing mask order.
pub fn supersets(base: u64, n: usize) -> impl Iterator<Item = u64> {
    let free = full_mask(n) & !base;
    submasks(free).map(move |s| s | base)
}

/// All submasks of `mask`, in increasing numeric order, including 0 and `mask`.
pub fn submasks(mask: u64) -> impl Iterator<Item = u64> {
    let mut next = Some(0u64);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == mask {
            None
        } else {
            Some(((cur | !mask).wrapping_add(1)) & mask)
        };
        Some(cur)
    })
}

pub fn indices(mask: u64) -> impl Iterator<Item = usize> {
    let mut m = mask;
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        }
    })
}

/// Dense bitset over all `2^n` nodes.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NodeBits {
    words: Vec<u64>,
    len: usize,
}

impl NodeBits {
    pub fn new(n: usize) -> Self {
        let nodes = 1usize << n;
        NodeBits {
            words: vec![0; nodes.div_ceil(64)],
            len: 0,
        }
    }

    #[inline]
    pub fn contains(&self, mask: u64) -> bool {
        let m = mask as usize;
        self.words[m >> 6] >> (m & 63) & 1 == 1
    }

    /// Returns whether the node was newly inserted.
    #[inline]
    pub fn insert(&mut self, mask: u64) -> bool {
        let m = mask as usize;
        let w = &mut self.words[m >> 6];
        let bit = 1u64 << (m & 63);
        if *w & bit == 0 {
            *w |= bit;
            self.len += 1;
            true
        } else {
            false
        }
    }

    pub fn remove(&mut self, mask: u64) -> bool {
        let m = mask as usize;
        let w = &mut self.words[m >> 6];
        let bit = 1u64 << (m & 63);
        if *w & bit != 0 {
            *w &= !bit;
            self.len -= 1;
            true
        } else {
            false
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn union_with(&mut self, other: &NodeBits) {
        let mut len = 0;
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= *b;
            len += a.count_ones() as usize;
        }
        self.len = len;
    }

    pub fn is_subset_of(&self, other: &NodeBits) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    /// Members in increasing mask order.
    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let base = (wi as u64) << 6;
            indices(w).map(move |b| base | b as u64)
        })
    }
}

impl std::fmt::Debug for NodeBits {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
