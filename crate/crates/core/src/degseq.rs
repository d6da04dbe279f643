//! Degree sequences and their forest realizability.
//!
//! A sequence `d` of non-negative integers is the degree sequence of a forest
//! exactly when its sum is even and at most `2(n - n0) - 2`, where `n0` counts
//! the zero entries. Every realization then has the same number `c` of
//! non-trivial components, fixed by `sum = 2(n - n0) - 2c`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A multiset of vertex degrees, stored non-increasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DegreeSequence(Vec<usize>);

impl DegreeSequence {
    /// Builds a sequence from degrees in any order.
    pub fn new(mut degrees: Vec<usize>) -> Self {
        degrees.sort_unstable_by(|a, b| b.cmp(a));
        DegreeSequence(degrees)
    }

    pub fn degrees(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Largest entry, or 0 for the empty sequence.
    pub fn max_degree(&self) -> usize {
        self.0.first().copied().unwrap_or(0)
    }

    pub fn count_of(&self, degree: usize) -> usize {
        self.0.iter().filter(|&&d| d == degree).count()
    }

    pub fn zero_count(&self) -> usize {
        self.count_of(0)
    }

    /// The same sequence with its zero entries removed.
    pub fn strip_zeros(&self) -> DegreeSequence {
        DegreeSequence(self.0.iter().copied().filter(|&d| d > 0).collect())
    }

    /// Checks forest realizability and derives the counting statistics.
    pub fn validate(&self) -> Result<SequenceStats> {
        SequenceStats::of(self)
    }

    /// Removes two 1-entries, i.e. splits off a `K2` component.
    pub fn peel_k2(&self) -> Result<DegreeSequence> {
        let stats = self.validate()?;
        if stats.n1 < 2 || stats.c < 2 {
            return Err(Error::NotPeelable(format!(
                "{self} has n1 = {} and c = {}",
                stats.n1, stats.c
            )));
        }
        let mut degrees = self.0.clone();
        // Ones sit just before the trailing zeros.
        let first_one = degrees.iter().position(|&d| d == 1).expect("n1 >= 2");
        degrees.drain(first_one..first_one + 2);
        Ok(DegreeSequence(degrees))
    }
}

impl From<Vec<usize>> for DegreeSequence {
    fn from(degrees: Vec<usize>) -> Self {
        DegreeSequence::new(degrees)
    }
}

impl From<&[usize]> for DegreeSequence {
    fn from(degrees: &[usize]) -> Self {
        DegreeSequence::new(degrees.to_vec())
    }
}

impl fmt::Display for DegreeSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, ")")
    }
}

/// Parses a comma- or whitespace-separated list of decimal integers.
/// Surrounding parentheses or brackets are tolerated.
impl FromStr for DegreeSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s
            .trim()
            .trim_start_matches(['(', '['])
            .trim_end_matches([')', ']']);
        let degrees = trimmed
            .split(|ch: char| ch == ',' || ch.is_whitespace())
            .filter(|tok| !tok.is_empty())
            .map(|tok| {
                tok.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("not a non-negative integer: {tok:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if degrees.is_empty() {
            return Err(Error::Empty);
        }
        Ok(DegreeSequence::new(degrees))
    }
}

/// Case split shared by the closed formulas for `gamma_max` and `alpha_min`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BranchTag {
    /// More leaves than non-leaves, and too few components to pair the surplus.
    A,
    /// More leaves than non-leaves, with enough components to absorb the surplus.
    B,
    /// At most as many leaves as non-leaves.
    C,
}

impl fmt::Display for BranchTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            BranchTag::A => "A",
            BranchTag::B => "B",
            BranchTag::C => "C",
        };
        f.write_str(s)
    }
}

/// Counting statistics of a forest-realizable degree sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceStats {
    pub n: usize,
    pub n0: usize,
    pub n1: usize,
    pub n_ge2: usize,
    pub n_ge3: usize,
    /// Number of non-trivial components of every realization.
    pub c: usize,
    pub degree_sum: usize,
}

impl SequenceStats {
    fn of(seq: &DegreeSequence) -> Result<SequenceStats> {
        let degrees = seq.degrees();
        if degrees.is_empty() {
            return Err(Error::Empty);
        }
        let n = degrees.len();
        let n0 = seq.count_of(0);
        let n1 = seq.count_of(1);
        let n_ge2 = degrees.iter().filter(|&&d| d >= 2).count();
        let n_ge3 = degrees.iter().filter(|&&d| d >= 3).count();
        let degree_sum: usize = degrees.iter().sum();
        if !degree_sum.is_multiple_of(2) {
            return Err(Error::OddSum(degree_sum));
        }
        let positive = n - n0;
        // An edgeless forest has no non-trivial component.
        let c = if positive == 0 {
            0
        } else {
            let bound = 2 * positive - 2;
            if degree_sum > bound {
                return Err(Error::TooManyEdges {
                    sum: degree_sum,
                    bound,
                });
            }
            positive - degree_sum / 2
        };
        Ok(SequenceStats {
            n,
            n0,
            n1,
            n_ge2,
            n_ge3,
            c,
            degree_sum,
        })
    }

    /// `ceil((n1 - n_ge2) / 2)` when leaves outnumber the rest, else 0.
    pub fn leaf_surplus_half(&self) -> usize {
        self.n1.saturating_sub(self.n_ge2).div_ceil(2)
    }

    /// Classifies a zero-free sequence with at least one entry `>= 2`.
    pub fn branch(&self) -> Result<BranchTag> {
        if self.n_ge2 == 0 || self.n0 != 0 {
            return Err(Error::PreconditionViolated(format!(
                "branch needs n_ge2 >= 1 and n0 = 0 (got n_ge2 = {}, n0 = {})",
                self.n_ge2, self.n0
            )));
        }
        Ok(if self.n1 <= self.n_ge2 {
            BranchTag::C
        } else if self.c - 1 < self.leaf_surplus_half() {
            BranchTag::A
        } else {
            BranchTag::B
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn seq(d: &[usize]) -> DegreeSequence {
        DegreeSequence::from(d)
    }

    #[test]
    fn validate_examples() {
        let s = seq(&[3, 2, 2, 1, 1, 1]).validate().unwrap();
        assert_eq!((s.n, s.n0, s.n1, s.n_ge2, s.c), (6, 0, 3, 3, 1));

        assert!(matches!(
            seq(&[3, 3]).validate(),
            Err(Error::TooManyEdges { sum: 6, bound: 2 })
        ));
        assert_eq!(seq(&[2, 1]).validate(), Err(Error::OddSum(3)));

        let s = seq(&[1, 1, 1, 1, 0]).validate().unwrap();
        assert_eq!((s.n, s.n0, s.n1, s.n_ge2, s.c), (5, 1, 4, 0, 2));
    }

    #[test]
    fn validate_rejects_empty_and_single_positive() {
        assert_eq!(DegreeSequence::new(vec![]).validate(), Err(Error::Empty));
        assert!(seq(&[2]).validate().is_err());
        assert!(seq(&[1]).validate().is_err());
    }

    #[test]
    fn edgeless_sequences_have_no_components() {
        let s = seq(&[0, 0, 0]).validate().unwrap();
        assert_eq!((s.n, s.n0, s.c), (3, 3, 0));
    }

    #[test]
    fn input_is_sorted() {
        assert_eq!(seq(&[1, 3, 1, 2, 1, 2]).degrees(), &[3, 2, 2, 1, 1, 1]);
    }

    #[test]
    fn branch_examples() {
        let tag = |d: &[usize]| seq(d).validate().unwrap().branch().unwrap();
        assert_eq!(tag(&[3, 1, 1, 1]), BranchTag::A);
        assert_eq!(tag(&[2, 2, 1, 1, 1, 1, 1, 1]), BranchTag::B);
        assert_eq!(tag(&[2, 2, 2, 1, 1]), BranchTag::C);
    }

    #[test]
    fn branch_rejects_zeros_and_all_ones() {
        let s = seq(&[1, 1, 1, 1]).validate().unwrap();
        assert!(s.branch().is_err());
        let s = seq(&[2, 1, 1, 0]).validate().unwrap();
        assert!(s.branch().is_err());
    }

    #[test]
    fn peel_examples() {
        assert_eq!(
            seq(&[2, 2, 1, 1, 1, 1, 1, 1]).peel_k2().unwrap(),
            seq(&[2, 2, 1, 1, 1, 1])
        );
        assert_eq!(seq(&[2, 1, 1, 1, 1]).peel_k2().unwrap(), seq(&[2, 1, 1]));
        assert!(matches!(
            seq(&[2, 2, 1, 1]).peel_k2(),
            Err(Error::NotPeelable(_))
        ));
    }

    #[test]
    fn peel_keeps_zeros() {
        assert_eq!(seq(&[1, 1, 1, 1, 0]).peel_k2().unwrap(), seq(&[1, 1, 0]));
    }

    #[test]
    fn parse_separators() {
        let expected = seq(&[3, 2, 2, 1, 1, 1]);
        assert_eq!("3,2,2,1,1,1".parse::<DegreeSequence>().unwrap(), expected);
        assert_eq!("3 2 2\t1 1 1".parse::<DegreeSequence>().unwrap(), expected);
        assert_eq!(
            "(1, 1, 1, 2, 2, 3)".parse::<DegreeSequence>().unwrap(),
            expected
        );
        assert!(matches!(
            "3,x".parse::<DegreeSequence>(),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            "-1,1".parse::<DegreeSequence>(),
            Err(Error::Parse(_))
        ));
        assert_eq!("  ".parse::<DegreeSequence>(), Err(Error::Empty));
    }

    fn valid_sequence() -> impl Strategy<Value = Vec<usize>> {
        prop::collection::vec(0usize..6, 1..14).prop_filter("forest realizable", |d| {
            DegreeSequence::from(d.as_slice()).validate().is_ok()
        })
    }

    proptest! {
        #[test]
        fn leaf_count_identity(d in valid_sequence()) {
            let s = DegreeSequence::from(d.as_slice());
            let stats = s.validate().unwrap();
            let excess: usize = s.degrees().iter().filter(|&&x| x >= 3).map(|&x| x - 2).sum();
            prop_assert_eq!(stats.n1, 2 * stats.c + excess);
            prop_assert!(stats.n1 >= 2 * stats.c);
            prop_assert_eq!(stats.n, stats.n0 + stats.n1 + stats.n_ge2);
            prop_assert_eq!(stats.degree_sum + 2 * stats.c, 2 * (stats.n - stats.n0));
        }

        #[test]
        fn validate_ignores_order(d in valid_sequence(), rot in 0usize..14) {
            let mut shuffled = d.clone();
            let k = rot % shuffled.len();
            shuffled.rotate_left(k);
            shuffled.reverse();
            prop_assert_eq!(
                DegreeSequence::from(d.as_slice()).validate(),
                DegreeSequence::new(shuffled).validate()
            );
        }

        #[test]
        fn peeling_never_leaves_branch_c(d in valid_sequence()) {
            let s = DegreeSequence::from(d.as_slice()).strip_zeros();
            let Ok(stats) = s.validate() else { return Ok(()) };
            if stats.n_ge2 == 0 || stats.n1 < 2 || stats.c < 2 {
                return Ok(());
            }
            let before = stats.branch().unwrap();
            let after_stats = s.peel_k2().unwrap().validate().unwrap();
            prop_assert_eq!(after_stats.n, stats.n - 2);
            prop_assert_eq!(after_stats.c, stats.c - 1);
            prop_assert_eq!(after_stats.n1, stats.n1 - 2);
            prop_assert_eq!(after_stats.n_ge2, stats.n_ge2);
            if before == BranchTag::C {
                prop_assert_eq!(after_stats.branch().unwrap(), BranchTag::C);
            }
        }
    }
}
