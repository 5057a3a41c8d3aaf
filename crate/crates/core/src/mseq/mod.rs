//! The multiplier sequence `M = (m_0 = 1, m_1, m_2, ...)` and the
//! elementary arithmetic used by every other module.
//!
//! Only `m_1, m_2, ...` are stored; `m_0 = 1` is implicit. The part sizes
//! are the partial products `M_r = m_0 m_1 ... m_r`.

mod arith;
mod parse;

pub use arith::{cal_m, d_r, lcm_up_to, mu, primorial, theorem_modulus};

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, ParseError, Result};

/// How a sequence continues past its explicit entries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Tail {
    /// The sequence ends after the explicit entries.
    Finite,
    /// Every entry past the explicit ones equals the given value.
    Constant(u64),
    /// Each entry past the explicit ones is one more than its predecessor.
    Successor,
}

/// A sequence `(m_1, m_2, ...)` with every `m_j >= 2`.
///
/// The representation is normalized on construction, so two values compare
/// equal exactly when they describe the same sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MSequence {
    entries: Vec<u64>,
    tail: Tail,
}

impl MSequence {
    pub fn new(entries: Vec<u64>, tail: Tail) -> Result<Self> {
        for (i, &value) in entries.iter().enumerate() {
            if value < 2 {
                return Err(Error::InvalidEntry {
                    position: i + 1,
                    value,
                });
            }
        }
        match tail {
            Tail::Constant(m) if m < 2 => {
                return Err(Error::InvalidEntry {
                    position: entries.len() + 1,
                    value: m,
                })
            }
            Tail::Successor if entries.is_empty() => {
                return Err(Error::InvalidParameter(
                    "a successor tail needs at least one explicit entry".into(),
                ))
            }
            _ => {}
        }
        let mut seq = MSequence { entries, tail };
        seq.normalize();
        Ok(seq)
    }

    /// `m_j = m` for every `j >= 1`.
    pub fn constant(m: u64) -> Result<Self> {
        Self::new(Vec::new(), Tail::Constant(m))
    }

    /// `len` copies of `m`, then nothing.
    pub fn constant_finite(m: u64, len: usize) -> Result<Self> {
        Self::new(vec![m; len], Tail::Finite)
    }

    /// `m_j = j + 1`, so the parts are the factorials `1, 2, 6, 24, ...`.
    pub fn factorial() -> Self {
        MSequence {
            entries: vec![2],
            tail: Tail::Successor,
        }
    }

    pub fn finite(entries: Vec<u64>) -> Result<Self> {
        Self::new(entries, Tail::Finite)
    }

    fn normalize(&mut self) {
        match self.tail {
            Tail::Finite => {}
            Tail::Constant(m) => {
                while self.entries.last() == Some(&m) {
                    self.entries.pop();
                }
            }
            Tail::Successor => {
                while self.entries.len() >= 2 {
                    let n = self.entries.len();
                    if self.entries[n - 1] == self.entries[n - 2] + 1 {
                        self.entries.pop();
                    } else {
                        break;
                    }
                }
            }
        }
    }

    pub fn explicit_entries(&self) -> &[u64] {
        &self.entries
    }

    pub fn tail(&self) -> Tail {
        self.tail
    }

    /// Number of entries `m_1..m_L` for a finite sequence, `None` otherwise.
    pub fn len(&self) -> Option<usize> {
        match self.tail {
            Tail::Finite => Some(self.entries.len()),
            _ => None,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == Some(0)
    }

    /// The entry `m_j`; `m_0 = 1`.
    pub fn entry(&self, j: usize) -> Result<u64> {
        if j == 0 {
            return Ok(1);
        }
        self.get(j).ok_or(Error::OutOfRange {
            index: j,
            len: self.entries.len(),
        })
    }

    /// Like [`entry`](Self::entry) for `j >= 1`, returning `None` past the
    /// end of a finite sequence.
    pub fn get(&self, j: usize) -> Option<u64> {
        if j == 0 {
            return Some(1);
        }
        if j <= self.entries.len() {
            return Some(self.entries[j - 1]);
        }
        match self.tail {
            Tail::Finite => None,
            Tail::Constant(m) => Some(m),
            Tail::Successor => {
                let last = *self.entries.last().expect("successor tail has an entry");
                Some(last + (j - self.entries.len()) as u64)
            }
        }
    }

    /// The first `r` entries `m_1..m_r`.
    pub fn prefix(&self, r: usize) -> Result<Vec<u64>> {
        (1..=r).map(|j| self.entry(j)).collect()
    }

    /// `M_r = m_0 m_1 ... m_r`.
    pub fn partial_product(&self, r: usize) -> Result<BigUint> {
        let mut acc = BigUint::one();
        for j in 1..=r {
            acc *= self.entry(j)?;
        }
        Ok(acc)
    }

    /// `M_r` as a machine integer, or `None` on overflow.
    pub fn partial_product_u64(&self, r: usize) -> Result<Option<u64>> {
        let mut acc: u64 = 1;
        for j in 1..=r {
            match acc.checked_mul(self.entry(j)?) {
                Some(v) => acc = v,
                None => return Ok(None),
            }
        }
        Ok(Some(acc))
    }

    /// The sequence `(m_{k+1}, m_{k+2}, ...)` obtained by dropping the first
    /// `k` entries. Dropping past the end of a finite sequence leaves the
    /// empty sequence, whose only part is 1.
    pub fn drop_front(&self, k: usize) -> MSequence {
        if k == 0 {
            return self.clone();
        }
        let tail_entries: Vec<u64> = self.entries.iter().skip(k).copied().collect();
        let (entries, tail) = match self.tail {
            Tail::Finite | Tail::Constant(_) => (tail_entries, self.tail),
            Tail::Successor if tail_entries.is_empty() => (
                vec![self.get(k + 1).expect("successor tail is infinite")],
                Tail::Successor,
            ),
            Tail::Successor => (tail_entries, Tail::Successor),
        };
        let mut seq = MSequence { entries, tail };
        seq.normalize();
        seq
    }

    /// Canonical sequence-spec text; re-parses to an equal sequence.
    pub fn to_spec(&self) -> String {
        let join = |v: &[u64]| {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        match self.tail {
            Tail::Finite => match self.entries.first() {
                Some(&m) if self.entries.iter().all(|&x| x == m) => {
                    format!("const:{},{}", m, self.entries.len())
                }
                _ => format!("list:{}", join(&self.entries)),
            },
            Tail::Constant(m) if self.entries.is_empty() => format!("const:{m}"),
            Tail::Constant(m) => format!("list:{},{},tail=const", join(&self.entries), m),
            Tail::Successor if self.entries == [2] => "fact".to_string(),
            Tail::Successor => format!("list:{},tail=succ", join(&self.entries)),
        }
    }
}

impl fmt::Display for MSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_spec())
    }
}

impl FromStr for MSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse::parse_spec(s)
    }
}

/// Parses a comma-separated list of entries such as `2,3,4`.
pub fn parse_entry_list(s: &str) -> Result<Vec<u64>, ParseError> {
    parse::parse_numbers(s, 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partial_products() {
        let two = MSequence::constant(2).unwrap();
        assert_eq!(two.partial_product(3).unwrap(), BigUint::from(8u32));
        assert_eq!(two.partial_product(0).unwrap(), BigUint::one());
        let fact = MSequence::factorial();
        assert_eq!(fact.partial_product(4).unwrap(), BigUint::from(120u32));
        assert_eq!(fact.partial_product(0).unwrap(), BigUint::one());
    }

    #[test]
    fn finite_out_of_range() {
        let seq = MSequence::finite(vec![2, 3]).unwrap();
        assert_eq!(seq.partial_product(2).unwrap(), BigUint::from(6u32));
        assert_eq!(
            seq.partial_product(3),
            Err(Error::OutOfRange { index: 3, len: 2 })
        );
    }

    #[test]
    fn rejects_small_entries() {
        assert!(matches!(
            MSequence::finite(vec![2, 1]),
            Err(Error::InvalidEntry {
                position: 2,
                value: 1
            })
        ));
        assert!(MSequence::constant(1).is_err());
        assert!(MSequence::new(vec![], Tail::Successor).is_err());
    }

    #[test]
    fn tails() {
        let s = MSequence::new(vec![3, 5], Tail::Successor).unwrap();
        assert_eq!(s.get(4), Some(7));
        let c = MSequence::new(vec![3], Tail::Constant(4)).unwrap();
        assert_eq!(c.get(1), Some(3));
        assert_eq!(c.get(9), Some(4));
    }

    #[test]
    fn normalization_makes_equal_sequences_equal() {
        let a = MSequence::new(vec![2, 2, 2], Tail::Constant(2)).unwrap();
        assert_eq!(a, MSequence::constant(2).unwrap());
        let b = MSequence::new(vec![2, 3, 4], Tail::Successor).unwrap();
        assert_eq!(b, MSequence::factorial());
    }

    #[test]
    fn drop_front_shifts_entries() {
        let f = MSequence::factorial().drop_front(3);
        assert_eq!(f.get(1), Some(5));
        assert_eq!(f.get(2), Some(6));
        let fin = MSequence::finite(vec![2, 3]).unwrap().drop_front(5);
        assert!(fin.is_empty());
        let c = MSequence::new(vec![3], Tail::Constant(2))
            .unwrap()
            .drop_front(4);
        assert_eq!(c, MSequence::constant(2).unwrap());
    }

    #[test]
    fn canonical_specs() {
        assert_eq!(MSequence::factorial().to_spec(), "fact");
        assert_eq!(MSequence::constant(3).unwrap().to_spec(), "const:3");
        assert_eq!(
            MSequence::constant_finite(2, 4).unwrap().to_spec(),
            "const:2,4"
        );
        assert_eq!(
            MSequence::new(vec![3, 2], Tail::Constant(5))
                .unwrap()
                .to_spec(),
            "list:3,2,5,tail=const"
        );
        assert_eq!(
            MSequence::new(vec![4, 7], Tail::Successor)
                .unwrap()
                .to_spec(),
            "list:4,7,tail=succ"
        );
        assert_eq!(MSequence::finite(vec![]).unwrap().to_spec(), "list:");
    }
}
