//! Closed formulas for the largest domination number and the smallest
//! independence number over all forests with a given degree sequence.
//!
//! Zero entries are stripped first; each contributes one isolated vertex and
//! therefore exactly one to both quantities. A stripped sequence consisting of
//! 1-entries only is a perfect matching, with both values equal to `n / 2`.
//! All arithmetic is exact integer arithmetic.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::degseq::{BranchTag, DegreeSequence, SequenceStats};
use crate::error::Result;

/// Which closed-form case produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FormulaBranch {
    Branch(BranchTag),
    /// Stripped sequence is empty or all ones.
    Reduced,
}

impl fmt::Display for FormulaBranch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormulaBranch::Branch(tag) => tag.fmt(f),
            FormulaBranch::Reduced => f.write_str("Reduced"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremalValues {
    pub gamma_max: usize,
    pub alpha_min: usize,
    pub branch: FormulaBranch,
    pub zeros_stripped: usize,
}

struct Reduced {
    zeros: usize,
    /// Statistics of the zero-free part; `None` when it is empty or all ones.
    stats: Option<SequenceStats>,
    stripped_len: usize,
}

fn reduce(seq: &DegreeSequence) -> Result<Reduced> {
    let full = seq.validate()?;
    let stripped = seq.strip_zeros();
    let stats = if full.n_ge2 == 0 {
        None
    } else {
        Some(stripped.validate()?)
    };
    Ok(Reduced {
        zeros: full.n0,
        stats,
        stripped_len: stripped.len(),
    })
}

/// Value for a zero-free sequence with `d1 >= 2`.
fn gamma_max_core(stats: &SequenceStats, branch: BranchTag) -> usize {
    let n = stats.n;
    match branch {
        BranchTag::A => n - stats.n1 + stats.c - 1,
        BranchTag::B => n / 2,
        BranchTag::C => (n + stats.n1 - 2).div_ceil(3),
    }
}

fn alpha_min_core(stats: &SequenceStats, branch: BranchTag) -> usize {
    match branch {
        BranchTag::A => stats.n1 - stats.c + 1,
        BranchTag::B | BranchTag::C => stats.n.div_ceil(2),
    }
}

/// Largest domination number of a forest with degree sequence `seq`.
pub fn gamma_max(seq: &DegreeSequence) -> Result<usize> {
    extremal_values(seq).map(|v| v.gamma_max)
}

/// Smallest independence number of a forest with degree sequence `seq`.
pub fn alpha_min(seq: &DegreeSequence) -> Result<usize> {
    extremal_values(seq).map(|v| v.alpha_min)
}

pub fn extremal_values(seq: &DegreeSequence) -> Result<ExtremalValues> {
    let reduced = reduce(seq)?;
    let zeros = reduced.zeros;
    let Some(stats) = reduced.stats else {
        let half = reduced.stripped_len / 2;
        return Ok(ExtremalValues {
            gamma_max: zeros + half,
            alpha_min: zeros + half,
            branch: FormulaBranch::Reduced,
            zeros_stripped: zeros,
        });
    };
    let branch = stats.branch()?;
    Ok(ExtremalValues {
        gamma_max: zeros + gamma_max_core(&stats, branch),
        alpha_min: zeros + alpha_min_core(&stats, branch),
        branch: FormulaBranch::Branch(branch),
        zeros_stripped: zeros,
    })
}
