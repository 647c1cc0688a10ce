use crate::error::{Error, Result};

/// A finite commutative unital ring with `0 != 1`, given by its tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteRing {
    names: Vec<String>,
    add: Vec<Vec<usize>>,
    mul: Vec<Vec<usize>>,
    zero: usize,
    one: usize,
}

impl FiniteRing {
    /// Validates every ring law over the tables; `O(n^3)`.
    pub fn new(
        names: Vec<String>,
        add: Vec<Vec<usize>>,
        mul: Vec<Vec<usize>>,
        zero: usize,
        one: usize,
    ) -> Result<Self> {
        let n = names.len();
        if n < 2 {
            return Err(Error::TrivialRing);
        }
        let square = |t: &Vec<Vec<usize>>| t.len() == n && t.iter().all(|r| r.len() == n && r.iter().all(|&v| v < n));
        if !square(&add) || !square(&mul) {
            return Err(Error::NotARing("tables must be n x n over the carrier".into()));
        }
        if zero >= n || one >= n {
            return Err(Error::NotARing("zero or one outside the carrier".into()));
        }
        if zero == one {
            return Err(Error::TrivialRing);
        }
        let fail = |what: &str| Err(Error::NotARing(what.to_string()));
        for a in 0..n {
            if add[zero][a] != a {
                return fail("0 is not an additive identity");
            }
            if mul[one][a] != a {
                return fail("1 is not a multiplicative identity");
            }
            if !(0..n).any(|b| add[a][b] == zero) {
                return fail("missing additive inverse");
            }
            for b in 0..n {
                if add[a][b] != add[b][a] {
                    return fail("addition is not commutative");
                }
                if mul[a][b] != mul[b][a] {
                    return fail("multiplication is not commutative");
                }
                for c in 0..n {
                    if add[add[a][b]][c] != add[a][add[b][c]] {
                        return fail("addition is not associative");
                    }
                    if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                        return fail("multiplication is not associative");
                    }
                    if mul[a][add[b][c]] != add[mul[a][b]][mul[a][c]] {
                        return fail("multiplication does not distribute");
                    }
                }
            }
        }
        Ok(FiniteRing {
            names,
            add,
            mul,
            zero,
            one,
        })
    }

    /// `Z/n`, elements named `0..n-1`.
    pub fn zmod(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::TrivialRing);
        }
        let table = |f: fn(usize, usize) -> usize| -> Vec<Vec<usize>> {
            (0..n).map(|a| (0..n).map(|b| f(a, b) % n).collect()).collect()
        };
        Self::new(
            (0..n).map(|i| i.to_string()).collect(),
            table(|a, b| a + b),
            table(|a, b| a * b),
            0,
            1,
        )
    }

    /// Componentwise product; element `(x, y)` is named `x:y`.
    pub fn product(r: &FiniteRing, s: &FiniteRing) -> Result<Self> {
        let m = s.len();
        let idx = |a: usize, b: usize| a * m + b;
        let mut names = Vec::new();
        for x in &r.names {
            for y in &s.names {
                names.push(format!("{x}:{y}"));
            }
        }
        let table = |ft: &dyn Fn(usize, usize, usize, usize) -> usize| -> Vec<Vec<usize>> {
            (0..names.len())
                .map(|i| {
                    (0..names.len())
                        .map(|j| ft(i / m, i % m, j / m, j % m))
                        .collect()
                })
                .collect()
        };
        let add = table(&|a, b, c, d| idx(r.add[a][c], s.add[b][d]));
        let mul = table(&|a, b, c, d| idx(r.mul[a][c], s.mul[b][d]));
        Self::new(names, add, mul, idx(r.zero, s.zero), idx(r.one, s.one))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a][b]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> usize {
        self.one
    }

    /// Every nonzero element has a multiplicative inverse.
    pub fn is_field(&self) -> bool {
        (0..self.len())
            .filter(|&a| a != self.zero)
            .all(|a| (0..self.len()).any(|b| self.mul[a][b] == self.one))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zmod_examples() {
        let r = FiniteRing::zmod(4).unwrap();
        assert_eq!(r.mul(2, 2), 0);
        assert_eq!(FiniteRing::zmod(1), Err(Error::TrivialRing));
        assert_eq!(FiniteRing::zmod(0), Err(Error::TrivialRing));
    }

    #[test]
    fn product_example() {
        let z2 = FiniteRing::zmod(2).unwrap();
        let p = FiniteRing::product(&z2, &z2).unwrap();
        let at = |s: &str| p.names().iter().position(|n| n == s).unwrap();
        assert_eq!(p.mul(at("1:0"), at("0:1")), at("0:0"));
        assert_eq!(p.one(), at("1:1"));
        assert!(!p.is_field());
    }

    #[test]
    fn fields_among_zmod() {
        let fields: Vec<usize> = (2..=12).filter(|&n| FiniteRing::zmod(n).unwrap().is_field()).collect();
        assert_eq!(fields, vec![2, 3, 5, 7, 11]);
    }

    #[test]
    fn rejects_broken_tables() {
        let names = vec!["0".to_string(), "1".to_string()];
        // 1 + 1 = 1 leaves 1 without an additive inverse
        let add = vec![vec![0, 1], vec![1, 1]];
        let mul = vec![vec![0, 0], vec![0, 1]];
        assert!(matches!(
            FiniteRing::new(names.clone(), add, mul.clone(), 0, 1),
            Err(Error::NotARing(_))
        ));
        let add = vec![vec![0, 1], vec![1, 0]];
        assert_eq!(
            FiniteRing::new(names, add, mul, 1, 1),
            Err(Error::TrivialRing)
        );
    }
}
