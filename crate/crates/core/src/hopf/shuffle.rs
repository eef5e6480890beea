//! The shuffle Hopf algebra on words in letters of positive degree, with the
//! deconcatenation coproduct. Its characters are the group-like series in
//! the completed free associative algebra.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use super::{ConnectedHopf, Lin, Tensor};
use crate::error::Result;

/// A word (k1, …, kn) of letter degrees; empty is the unit.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<u32>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    /// All words of total weight exactly `n`, in lexicographic order.
    pub fn of_weight(n: u32) -> Vec<Word> {
        if n == 0 {
            return vec![Word::empty()];
        }
        let mut out = Vec::new();
        for first in 1..=n {
            for rest in Word::of_weight(n - first) {
                let mut v = vec![first];
                v.extend(rest.0);
                out.push(Word(v));
            }
        }
        out
    }

    /// Words of weight 1..=n.
    pub fn up_to_weight(n: u32) -> Vec<Word> {
        (1..=n).flat_map(Word::of_weight).collect()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, k) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{k}")?;
        }
        write!(f, ")")
    }
}

fn shuffle_into(a: &[u32], b: &[u32], prefix: &mut Vec<u32>, out: &mut Lin<Word>) {
    if a.is_empty() || b.is_empty() {
        let mut w = prefix.clone();
        w.extend_from_slice(a);
        w.extend_from_slice(b);
        out.add_term(Word(w), BigInt::one());
        return;
    }
    prefix.push(a[0]);
    shuffle_into(&a[1..], b, prefix, out);
    prefix.pop();
    prefix.push(b[0]);
    shuffle_into(a, &b[1..], prefix, out);
    prefix.pop();
}

pub fn shuffle(a: &Word, b: &Word) -> Lin<Word> {
    let mut out = Lin::zero();
    shuffle_into(&a.0, &b.0, &mut Vec::new(), &mut out);
    out
}

/// Graded by weight.
#[derive(Clone, Copy, Debug, Default)]
pub struct ShuffleHopf;

impl ConnectedHopf for ShuffleHopf {
    type Basis = Word;

    fn unit(&self) -> Word {
        Word::empty()
    }

    fn degree(&self, b: &Word) -> usize {
        b.weight() as usize
    }

    fn product(&self, a: &Word, b: &Word) -> Result<Lin<Word>> {
        Ok(shuffle(a, b))
    }

    fn coproduct(&self, b: &Word) -> Result<Tensor<Word>> {
        let mut t = Lin::zero();
        for i in 0..=b.len() {
            t.add_term((Word(b.0[..i].to_vec()), Word(b.0[i..].to_vec())), BigInt::one());
        }
        Ok(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::{antipode_sides, coassociativity_sides, Antipode};

    #[test]
    fn shuffles() {
        let s = shuffle(&Word(vec![1]), &Word(vec![2]));
        assert_eq!(s.to_string(), "(1,2) + (2,1)");
        assert_eq!(shuffle(&Word(vec![1]), &Word(vec![1])).coeff(&Word(vec![1, 1])), BigInt::from(2));
        assert_eq!(Word::of_weight(3).len(), 4);
    }

    #[test]
    fn antipode_reverses_with_sign() {
        let h = ShuffleHopf;
        let s = Antipode::new(&h);
        for w in Word::up_to_weight(4) {
            let sign = if w.len() % 2 == 0 { 1 } else { -1 };
            let mut expected = Lin::zero();
            expected.add_term(w.reversed(), BigInt::from(sign));
            assert_eq!(s.basis(&w).unwrap(), expected, "{w}");
        }
    }

    #[test]
    fn axioms() {
        let h = ShuffleHopf;
        for w in Word::up_to_weight(4) {
            let (l, r) = coassociativity_sides(&h, &w).unwrap();
            assert_eq!(l, r);
            let (a, b) = antipode_sides(&h, &Lin::basis(w)).unwrap();
            assert!(a.is_zero() && b.is_zero());
        }
    }
}
