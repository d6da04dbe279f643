//! Forest realizations of degree sequences.
//!
//! [`extremal_build`] emits one forest that attains both the largest
//! domination number and the smallest independence number allowed by its
//! degree sequence. It peels `K2` components while leaves outnumber the other
//! vertices and there is more than one component, then finishes with either
//! [`pendant_subdivision_build`] (leaves do not outnumber the rest) or
//! [`all_support_tree`] (a single tree in which every internal vertex
//! carries a leaf).
//!
//! Labels follow a fixed order: main structure first, then attached leaves in
//! attachment order, then any peeled `K2` components.

use rand::seq::index::sample;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::degseq::{BranchTag, DegreeSequence, SequenceStats};
use crate::error::{Error, Result};
use crate::forest::Forest;
use crate::formulas;

/// A realization together with its exactly computed domination and
/// independence numbers and the closed-form values they should match.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremalCertificate {
    pub forest: Forest,
    pub gamma: usize,
    pub alpha: usize,
    pub expected_gamma_max: usize,
    pub expected_alpha_min: usize,
    pub branch: BranchTag,
}

impl ExtremalCertificate {
    pub fn is_tight(&self) -> bool {
        self.gamma == self.expected_gamma_max && self.alpha == self.expected_alpha_min
    }
}

fn precondition(msg: impl Into<String>) -> Error {
    Error::PreconditionViolated(msg.into())
}

/// Validates and requires a zero-free sequence with some entry `>= 2`.
fn checked_stats(seq: &DegreeSequence) -> Result<SequenceStats> {
    let stats = seq.validate()?;
    if stats.n0 != 0 {
        return Err(precondition(format!("{seq} contains zero entries")));
    }
    if stats.n_ge2 == 0 {
        return Err(precondition(format!(
            "{seq} has no entry of degree at least 2"
        )));
    }
    Ok(stats)
}

/// Caterpillar on labels `0..degrees.len()` with exactly the given degrees.
///
/// Vertices of degree at least 2 form the spine in label order; leaves are
/// handed out in label order to spine vertices in spine order. The degrees
/// must describe a tree (positive, summing to `2m - 2`), or be `[0]`.
fn caterpillar(degrees: &[usize]) -> Vec<(usize, usize)> {
    let spine: Vec<usize> = (0..degrees.len()).filter(|&v| degrees[v] >= 2).collect();
    let leaves: Vec<usize> = (0..degrees.len()).filter(|&v| degrees[v] == 1).collect();
    if spine.is_empty() {
        debug_assert!(leaves.len() == 2 || degrees == [0]);
        return if leaves.len() == 2 {
            vec![(leaves[0], leaves[1])]
        } else {
            Vec::new()
        };
    }
    let mut edges: Vec<(usize, usize)> = spine.windows(2).map(|w| (w[0], w[1])).collect();
    let mut next_leaf = leaves.iter().copied();
    for (i, &v) in spine.iter().enumerate() {
        let on_spine = usize::from(i > 0) + usize::from(i + 1 < spine.len());
        for _ in on_spine..degrees[v] {
            let leaf = next_leaf
                .next()
                .expect("leaf count matches tree degree sum");
            edges.push((v, leaf));
        }
    }
    debug_assert!(next_leaf.next().is_none());
    edges
}

/// Any forest realizing a zero-free sequence: `c - 1` copies of `K2` plus a
/// caterpillar for the remaining tree sequence.
pub fn realize_any(seq: &DegreeSequence) -> Result<Forest> {
    let stats = seq.validate()?;
    if stats.n0 != 0 {
        return Err(precondition(format!("{seq} contains zero entries")));
    }
    let mut degrees = seq.degrees().to_vec();
    // Non-increasing order puts the ones last.
    degrees.truncate(stats.n - 2 * (stats.c - 1));
    let tree = Forest::from_edges(degrees.len(), &caterpillar(&degrees))?;
    Ok(append_k2s(tree, stats.c - 1))
}

fn append_k2s(mut forest: Forest, count: usize) -> Forest {
    let k2 = Forest::from_edges(2, &[(0, 1)]).expect("K2");
    for _ in 0..count {
        forest = forest.disjoint_union(&k2);
    }
    forest
}

/// Realization for sequences with at most as many leaves as non-leaves.
///
/// Realizes `(d_1 - 1, ..., d_{n1} - 1)` as a forest `F'`, hangs one new leaf
/// on every vertex of `F'`, then subdivides the smallest edge of `F'`
/// `n - 2 n1` times. The result has exactly `n1` support vertices, each with a
/// single leaf, and its remaining internal vertices have degree 2 and form one
/// path.
pub fn pendant_subdivision_build(seq: &DegreeSequence) -> Result<Forest> {
    let stats = checked_stats(seq)?;
    if stats.n1 > stats.n_ge2 {
        return Err(precondition(format!(
            "{seq} has n1 = {} > n_ge2 = {}",
            stats.n1, stats.n_ge2
        )));
    }
    let core = stats.n1;
    let reduced = DegreeSequence::new(seq.degrees()[..core].iter().map(|d| d - 1).collect());
    let inner = realize_any(&reduced)?;
    let subdivisions = stats.n - 2 * core;

    let (a, b) = inner.edges()[0];
    let mut edges: Vec<(usize, usize)> = inner.edges()[1..].to_vec();
    edges.extend((0..core).map(|v| (v, core + v)));
    let mut prev = a;
    for s in 2 * core..2 * core + subdivisions {
        edges.push((prev, s));
        prev = s;
    }
    edges.push((prev, b));
    Forest::from_edges(stats.n, &edges)
}

/// A tree in which every vertex of degree at least 2 has a leaf neighbor.
///
/// The `m` internal vertices get internal-tree degrees `1 <= e_i <= d_i - 1`
/// summing to `2m - 2`, grown from all-ones by repeatedly bumping the vertex
/// with the most spare capacity. That internal tree is realized as a
/// caterpillar and vertex `i` then receives `d_i - e_i` leaves.
pub fn all_support_tree(seq: &DegreeSequence) -> Result<Forest> {
    let stats = checked_stats(seq)?;
    if stats.c != 1 {
        return Err(precondition(format!(
            "{seq} is not a tree sequence (c = {})",
            stats.c
        )));
    }
    if stats.n1 <= stats.n_ge2 {
        return Err(precondition(format!(
            "{seq} has n1 = {} <= n_ge2 = {}",
            stats.n1, stats.n_ge2
        )));
    }
    let m = stats.n_ge2;
    let internal = &seq.degrees()[..m];
    let inner_degrees = if m == 1 {
        vec![0]
    } else {
        let mut e = vec![1usize; m];
        let mut spare: Vec<usize> = internal.iter().map(|d| d - 2).collect();
        for _ in 0..m - 2 {
            let (best, _) = spare
                .iter()
                .enumerate()
                .max_by_key(|&(i, &s)| (s, Reverse(i)))
                .expect("m >= 2");
            debug_assert!(spare[best] > 0);
            spare[best] -= 1;
            e[best] += 1;
        }
        e
    };
    let mut edges = caterpillar(&inner_degrees);
    let mut next = m;
    for (v, (&d, &e)) in internal.iter().zip(&inner_degrees).enumerate() {
        for _ in e..d {
            edges.push((v, next));
            next += 1;
        }
    }
    debug_assert_eq!(next, stats.n);
    Forest::from_edges(stats.n, &edges)
}

/// A forest attaining both closed-form extremes for a zero-free sequence with
/// `d1 >= 2`, with exact values from the tree solvers.
pub fn extremal_build(seq: &DegreeSequence) -> Result<ExtremalCertificate> {
    let stats = checked_stats(seq)?;
    let branch = stats.branch()?;
    let mut current = seq.clone();
    let mut peeled = 0;
    let base = loop {
        let s = current.validate()?;
        if s.n1 <= s.n_ge2 {
            break pendant_subdivision_build(&current)?;
        }
        if s.c == 1 {
            break all_support_tree(&current)?;
        }
        current = current.peel_k2()?;
        peeled += 1;
    };
    let forest = append_k2s(base, peeled);
    let values = formulas::extremal_values(seq)?;
    let (gamma, _) = forest.domination_number();
    let (alpha, _) = forest.independence_number();
    Ok(ExtremalCertificate {
        forest,
        gamma,
        alpha,
        expected_gamma_max: values.gamma_max,
        expected_alpha_min: values.alpha_min,
        branch,
    })
}

/// Decodes a Prüfer sequence over `0..size` into tree edges.
fn prufer_decode(code: &[usize], size: usize) -> Vec<(usize, usize)> {
    let mut degree = vec![1usize; size];
    for &x in code {
        degree[x] += 1;
    }
    let mut leaves: BinaryHeap<Reverse<usize>> =
        (0..size).filter(|&v| degree[v] == 1).map(Reverse).collect();
    let mut edges = Vec::with_capacity(size - 1);
    for &x in code {
        let Reverse(leaf) = leaves.pop().expect("Prüfer decoding keeps a leaf");
        edges.push((leaf, x));
        degree[x] -= 1;
        if degree[x] == 1 {
            leaves.push(Reverse(x));
        }
    }
    let Reverse(u) = leaves.pop().expect("two leaves remain");
    let Reverse(v) = leaves.pop().expect("two leaves remain");
    edges.push((u, v));
    edges
}

/// Seeded random forest of order `n` with exactly `components` components.
///
/// Component sizes come from a uniformly random composition of `n`; each
/// component is a uniformly random labeled tree from a Prüfer code; labels are
/// then shuffled.
pub fn random_forest(n: usize, components: usize, seed: u64) -> Result<Forest> {
    if components == 0 || components > n {
        return Err(Error::InfeasibleSplit { n, components });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cuts: Vec<usize> = sample(&mut rng, n - 1, components - 1)
        .into_iter()
        .map(|c| c + 1)
        .collect();
    cuts.sort_unstable();
    cuts.push(n);
    let mut labels: Vec<usize> = (0..n).collect();
    labels.shuffle(&mut rng);

    let mut edges = Vec::with_capacity(n - components);
    let mut start = 0;
    for end in cuts {
        let size = end - start;
        let part = &labels[start..end];
        if size >= 2 {
            let code: Vec<usize> = (0..size - 2).map(|_| rng.gen_range(0..size)).collect();
            edges.extend(
                prufer_decode(&code, size)
                    .into_iter()
                    .map(|(u, v)| (part[u], part[v])),
            );
        }
        start = end;
    }
    Forest::from_edges(n, &edges)
}
