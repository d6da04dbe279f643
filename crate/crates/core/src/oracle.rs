//! Brute-force ground truth over all forest realizations of a sequence.
//!
//! Realizations are enumerated by backtracking over degree stubs: the smallest
//! vertex with free stubs is saturated first, its new partners are picked in
//! increasing label order, and a rollback union-find rejects any edge that
//! would close a cycle. Every labeled realization is produced exactly once.
//!
//! In isomorphism mode two untouched vertices of equal degree are
//! interchangeable, so only the smaller one may be picked first; survivors are
//! then deduplicated by a canonical string (AHU encoding of each tree rooted
//! at its center, sorted across components).

use std::collections::{BTreeMap, HashSet};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::construct::realize_any;
use crate::degseq::DegreeSequence;
use crate::dsu::RollbackDsu;
use crate::error::{Error, Result};
use crate::forest::Forest;

/// Largest number of non-zero entries accepted by the enumerator.
pub const DEFAULT_SIZE_CAP: usize = 14;
/// Default bound for exhaustive sweeps.
pub const DEFAULT_SWEEP_MAX_N: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Enumeration {
    /// Every labeled realization on the sequence's vertex labels.
    Labeled,
    /// One realization per isomorphism class.
    Isomorphism,
}

struct Search<'a, F: FnMut(&Forest)> {
    target: &'a [usize],
    remaining: Vec<usize>,
    dsu: RollbackDsu,
    edges: Vec<(usize, usize)>,
    symmetric_pruning: bool,
    emit: F,
}

impl<F: FnMut(&Forest)> Search<'_, F> {
    fn run(&mut self) {
        match (0..self.target.len()).find(|&v| self.remaining[v] > 0) {
            Some(u) => self.saturate(u, u + 1),
            None => {
                let forest = Forest::from_edges(self.target.len(), &self.edges)
                    .expect("enumerator only builds forests");
                (self.emit)(&forest);
            }
        }
    }

    fn is_candidate(&self, u: usize, v: usize) -> bool {
        self.remaining[v] > 0 && self.dsu.find(u) != self.dsu.find(v)
    }

    fn untouched(&self, v: usize) -> bool {
        self.remaining[v] == self.target[v]
    }

    fn saturate(&mut self, u: usize, from: usize) {
        if self.remaining[u] == 0 {
            self.run();
            return;
        }
        let n = self.target.len();
        let available = (from..n).filter(|&v| self.is_candidate(u, v)).count();
        if available < self.remaining[u] {
            return;
        }
        for v in from..n {
            if !self.is_candidate(u, v) {
                continue;
            }
            if self.symmetric_pruning
                && v > u + 1
                && self.untouched(v)
                && self.untouched(v - 1)
                && self.target[v - 1] == self.target[v]
            {
                continue;
            }
            self.remaining[u] -= 1;
            self.remaining[v] -= 1;
            self.dsu.union(u, v);
            self.edges.push((u, v));
            self.saturate(u, v + 1);
            self.edges.pop();
            self.dsu.rollback();
            self.remaining[u] += 1;
            self.remaining[v] += 1;
        }
    }
}

fn check_cap(seq: &DegreeSequence, cap: usize) -> Result<()> {
    seq.validate()?;
    let len = seq.len() - seq.zero_count();
    if len > cap {
        return Err(Error::SizeCapExceeded { len, cap });
    }
    Ok(())
}

/// Calls `visit` once per realization; returns how many were visited.
pub fn visit_realizations(
    seq: &DegreeSequence,
    mode: Enumeration,
    cap: usize,
    mut visit: impl FnMut(&Forest),
) -> Result<usize> {
    check_cap(seq, cap)?;
    let target = seq.degrees();
    let mut count = 0;
    let mut seen = HashSet::new();
    let emit = |f: &Forest| {
        if mode == Enumeration::Isomorphism && !seen.insert(canonical_form(f)) {
            return;
        }
        count += 1;
        visit(f);
    };
    let mut search = Search {
        target,
        remaining: target.to_vec(),
        dsu: RollbackDsu::new(target.len()),
        edges: Vec::new(),
        symmetric_pruning: mode == Enumeration::Isomorphism,
        emit,
    };
    search.run();
    Ok(count)
}

pub fn enumerate_realizations(
    seq: &DegreeSequence,
    mode: Enumeration,
    cap: usize,
) -> Result<Vec<Forest>> {
    let mut out = Vec::new();
    visit_realizations(seq, mode, cap, |f| out.push(f.clone()))?;
    Ok(out)
}

/// AHU code and automorphism count of the subtree at `v` hanging away from
/// `parent`.
fn rooted_code(f: &Forest, v: usize, parent: usize) -> (String, u64) {
    let mut children: Vec<(String, u64)> = f
        .neighbors(v)
        .iter()
        .filter(|&&w| w != parent)
        .map(|&w| rooted_code(f, w, v))
        .collect();
    children.sort();
    let mut code = String::from("(");
    let mut aut = 1u64;
    let mut run = 0u64;
    for (i, (c, a)) in children.iter().enumerate() {
        code.push_str(c);
        aut *= a;
        run = if i > 0 && children[i - 1].0 == *c {
            run + 1
        } else {
            1
        };
        aut *= run;
    }
    code.push(')');
    (code, aut)
}

/// Canonical code and automorphism count of one tree component.
fn tree_code(f: &Forest, component: &[usize]) -> (String, u64) {
    if component.len() <= 2 {
        return if component.len() == 1 {
            ("()".into(), 1)
        } else {
            ("[()()]".into(), 2)
        };
    }
    // Strip leaves layer by layer until one or two centers remain.
    let mut degree: BTreeMap<usize, usize> = component.iter().map(|&v| (v, f.degree(v))).collect();
    let mut removed = HashSet::new();
    let mut layer: Vec<usize> = component
        .iter()
        .copied()
        .filter(|&v| degree[&v] == 1)
        .collect();
    let mut left = component.len();
    while left > 2 {
        left -= layer.len();
        let mut next = Vec::new();
        for &v in &layer {
            removed.insert(v);
        }
        for &v in &layer {
            for &w in f.neighbors(v) {
                if removed.contains(&w) {
                    continue;
                }
                let d = degree.get_mut(&w).expect("same component");
                *d -= 1;
                if *d == 1 {
                    next.push(w);
                }
            }
        }
        layer = next;
    }
    let centers: Vec<usize> = component
        .iter()
        .copied()
        .filter(|v| !removed.contains(v))
        .collect();
    match centers.as_slice() {
        [c] => rooted_code(f, *c, usize::MAX),
        [a, b] => {
            let (ca, aa) = rooted_code(f, *a, *b);
            let (cb, ab) = rooted_code(f, *b, *a);
            let swap = if ca == cb { 2 } else { 1 };
            let (lo, hi) = if ca <= cb { (ca, cb) } else { (cb, ca) };
            (format!("[{lo}{hi}]"), aa * ab * swap)
        }
        _ => unreachable!("a tree has one or two centers"),
    }
}

fn forest_code(f: &Forest) -> (String, u64) {
    let mut codes: Vec<(String, u64)> = f
        .components()
        .iter()
        .map(|c| tree_code(f, c.as_slice()))
        .collect();
    codes.sort();
    let mut aut = 1u64;
    let mut run = 0u64;
    for i in 0..codes.len() {
        aut *= codes[i].1;
        run = if i > 0 && codes[i - 1].0 == codes[i].0 {
            run + 1
        } else {
            1
        };
        aut *= run;
    }
    let joined = codes
        .into_iter()
        .map(|(c, _)| c)
        .collect::<Vec<_>>()
        .join(",");
    (joined, aut)
}

/// Isomorphism invariant string identifying a forest up to relabeling.
pub fn canonical_form(f: &Forest) -> String {
    forest_code(f).0
}

/// Size of the automorphism group of a forest.
pub fn automorphism_count(f: &Forest) -> u64 {
    forest_code(f).1
}

/// Number of labeled realizations isomorphic to `f` on a vertex set whose
/// labels carry the degrees of `f`: degree-preserving bijections modulo
/// automorphisms.
fn labeled_copies(f: &Forest) -> u64 {
    let seq = f.degree_sequence();
    let mut by_degree: BTreeMap<usize, u64> = BTreeMap::new();
    for &d in seq.degrees() {
        *by_degree.entry(d).or_default() += 1;
    }
    let bijections: u64 = by_degree
        .values()
        .map(|&m| (1..=m).product::<u64>())
        .product();
    bijections / automorphism_count(f)
}

/// Empirical extremes of the domination and independence numbers over all
/// realizations of a sequence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationReport {
    pub sequence: DegreeSequence,
    pub realization_count_labeled: u64,
    pub realization_count_iso: u64,
    pub gamma_min: usize,
    pub gamma_max: usize,
    pub alpha_min: usize,
    pub alpha_max: usize,
    pub witness_gamma_max: Forest,
    pub witness_alpha_min: Forest,
}

impl EnumerationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

struct Fold {
    labeled: u64,
    classes: u64,
    gamma: (usize, usize),
    alpha: (usize, usize),
    witness_gamma_max: Option<Forest>,
    witness_alpha_min: Option<Forest>,
}

impl Fold {
    fn new() -> Self {
        Fold {
            labeled: 0,
            classes: 0,
            gamma: (usize::MAX, 0),
            alpha: (usize::MAX, 0),
            witness_gamma_max: None,
            witness_alpha_min: None,
        }
    }

    fn add(&mut self, f: &Forest, labeled: u64) {
        let (g, _) = f.domination_number();
        let (a, _) = f.independence_number();
        self.labeled += labeled;
        self.classes += 1;
        self.gamma.0 = self.gamma.0.min(g);
        self.alpha.1 = self.alpha.1.max(a);
        if self.witness_gamma_max.is_none() || g > self.gamma.1 {
            self.gamma.1 = g;
            self.witness_gamma_max = Some(f.clone());
        }
        if self.witness_alpha_min.is_none() || a < self.alpha.0 {
            self.alpha.0 = a;
            self.witness_alpha_min = Some(f.clone());
        }
    }

    fn finish(self, sequence: DegreeSequence, classes: u64) -> EnumerationReport {
        EnumerationReport {
            sequence,
            realization_count_labeled: self.labeled,
            realization_count_iso: classes,
            gamma_min: self.gamma.0,
            gamma_max: self.gamma.1,
            alpha_min: self.alpha.0,
            alpha_max: self.alpha.1,
            witness_gamma_max: self
                .witness_gamma_max
                .expect("valid sequences have a realization"),
            witness_alpha_min: self
                .witness_alpha_min
                .expect("valid sequences have a realization"),
        }
    }
}

/// Folds the exact solvers over one representative per isomorphism class.
/// Labeled counts are recovered from automorphism group sizes.
pub fn empirical_extremes(seq: &DegreeSequence, cap: usize) -> Result<EnumerationReport> {
    let mut fold = Fold::new();
    let classes = visit_realizations(seq, Enumeration::Isomorphism, cap, |f| {
        fold.add(f, labeled_copies(f));
    })?;
    Ok(fold.finish(seq.clone(), classes as u64))
}

/// Same report, computed from the full labeled enumeration. Exponentially
/// slower; useful only to cross-check the isomorphism-reduced path.
pub fn empirical_extremes_labeled(seq: &DegreeSequence, cap: usize) -> Result<EnumerationReport> {
    let mut fold = Fold::new();
    let mut classes = HashSet::new();
    visit_realizations(seq, Enumeration::Labeled, cap, |f| {
        classes.insert(canonical_form(f));
        fold.add(f, 1);
    })?;
    Ok(fold.finish(seq.clone(), classes.len() as u64))
}

/// Every non-increasing positive sequence of length `3..=max_n` with
/// `d1 >= 2` that is the degree sequence of some forest, ordered by length
/// and then reverse-lexicographically.
pub fn sweep_sequences(max_n: usize) -> Vec<DegreeSequence> {
    fn extend(
        prefix: &mut Vec<usize>,
        n: usize,
        max: usize,
        sum: usize,
        out: &mut Vec<DegreeSequence>,
    ) {
        let left = n - prefix.len();
        if left == 0 {
            if sum.is_multiple_of(2) && prefix[0] >= 2 {
                out.push(DegreeSequence::new(prefix.clone()));
            }
            return;
        }
        let budget = 2 * n - 2;
        // Every remaining slot needs at least 1.
        for d in (1..=max).rev() {
            if sum + d + (left - 1) > budget {
                continue;
            }
            prefix.push(d);
            extend(prefix, n, d, sum + d, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    for n in 3..=max_n {
        extend(&mut Vec::with_capacity(n), n, n - 1, 0, &mut out);
    }
    out
}

/// All forests reachable from `f` by one degree-preserving two-edge swap:
/// `xx', yy'` are replaced by `xy, x'y'` or by `xy', x'y`.
pub fn swap_neighbors(f: &Forest) -> Vec<Forest> {
    let edges = f.edges();
    let mut out = Vec::new();
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            let (x, xp) = edges[i];
            let (y, yp) = edges[j];
            if x == y || x == yp || xp == y || xp == yp {
                continue;
            }
            for (e1, e2) in [((x, y), (xp, yp)), ((x, yp), (xp, y))] {
                if f.has_edge(e1.0, e1.1) || f.has_edge(e2.0, e2.1) {
                    continue;
                }
                let mut next: Vec<_> = edges
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| k != i && k != j)
                    .map(|(_, &e)| e)
                    .collect();
                next.push(e1);
                next.push(e2);
                if let Ok(g) = Forest::from_edges(f.order(), &next) {
                    debug_assert_eq!(g.degree_sequence(), f.degree_sequence());
                    out.push(g);
                }
            }
        }
    }
    out
}

/// Local search for a realization with large domination number.
///
/// Each restart starts from the caterpillar realization (restart 0) or a
/// random walk of swaps away from it, then repeatedly applies an improving
/// swap, or a neutral one while the neutral budget (`10 n` per restart)
/// lasts. Returns the best forest seen. Heuristic: the result never exceeds
/// the true maximum but may fall short of it.
pub fn swap_search_gamma(seq: &DegreeSequence, restarts: usize, seed: u64) -> Result<Forest> {
    let start = realize_any(seq)?;
    let n = start.order();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = start.clone();
    let mut best_gamma = start.domination_number().0;
    for restart in 0..restarts.max(1) {
        let mut current = start.clone();
        if restart > 0 {
            for _ in 0..2 * n {
                let moves = swap_neighbors(&current);
                match moves.choose(&mut rng) {
                    Some(next) => current = next.clone(),
                    None => break,
                }
            }
        }
        let mut gamma = current.domination_number().0;
        let mut neutral_left = 10 * n;
        loop {
            if gamma > best_gamma {
                best_gamma = gamma;
                best = current.clone();
            }
            let mut moves = swap_neighbors(&current);
            moves.shuffle(&mut rng);
            let scored: Vec<(usize, Forest)> = moves
                .into_iter()
                .map(|g| (g.domination_number().0, g))
                .collect();
            if let Some((g, next)) = scored.iter().find(|(g, _)| *g > gamma) {
                gamma = *g;
                current = next.clone();
                continue;
            }
            if neutral_left == 0 {
                break;
            }
            match scored.into_iter().find(|(g, _)| *g == gamma) {
                Some((_, next)) => {
                    current = next;
                    neutral_left -= 1;
                }
                None => break,
            }
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forest::{path, star};

    fn seq(d: &[usize]) -> DegreeSequence {
        DegreeSequence::from(d)
    }

    fn iso_count(d: &[usize]) -> usize {
        enumerate_realizations(&seq(d), Enumeration::Isomorphism, DEFAULT_SIZE_CAP)
            .unwrap()
            .len()
    }

    #[test]
    fn isomorphism_class_examples() {
        assert_eq!(iso_count(&[2, 1, 1]), 1);
        assert_eq!(iso_count(&[2, 1, 1, 1, 1]), 1);
        assert_eq!(iso_count(&[3, 2, 1, 1, 1, 1, 1]), 2);
    }

    #[test]
    fn labeled_enumeration_counts() {
        // Paths: the internal labels in any order, up to reversal, times 2 leaf placements.
        let labeled = |d: &[usize]| {
            enumerate_realizations(&seq(d), Enumeration::Labeled, DEFAULT_SIZE_CAP)
                .unwrap()
                .len()
        };
        assert_eq!(labeled(&[2, 1, 1]), 1);
        assert_eq!(labeled(&[2, 2, 1, 1]), 2);
        assert_eq!(labeled(&[2, 2, 2, 1, 1]), 6);
        // Stars K_{1,3} on 4 labels with the center fixed: 1.
        assert_eq!(labeled(&[3, 1, 1, 1]), 1);
        // Two K2's on 4 leaves: 3 perfect matchings.
        assert_eq!(labeled(&[1, 1, 1, 1]), 3);
    }

    #[test]
    fn labeled_enumeration_has_no_duplicates() {
        let all = enumerate_realizations(&seq(&[3, 2, 2, 1, 1, 1, 1, 1]), Enumeration::Labeled, 14)
            .unwrap();
        let distinct: HashSet<_> = all.iter().map(|f| f.edges().to_vec()).collect();
        assert_eq!(distinct.len(), all.len());
    }

    #[test]
    fn canonical_form_ignores_labels() {
        let a = Forest::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let b = Forest::from_edges(5, &[(4, 2), (2, 0), (0, 3), (3, 1)]).unwrap();
        assert_eq!(canonical_form(&a), canonical_form(&b));
        assert_ne!(canonical_form(&path(4)), canonical_form(&star(3)));
        assert_ne!(
            canonical_form(&path(3).disjoint_union(&path(3))),
            canonical_form(&path(4).disjoint_union(&path(2)))
        );
    }

    #[test]
    fn automorphism_examples() {
        assert_eq!(automorphism_count(&path(1)), 1);
        assert_eq!(automorphism_count(&path(2)), 2);
        assert_eq!(automorphism_count(&path(5)), 2);
        assert_eq!(automorphism_count(&path(6)), 2);
        assert_eq!(automorphism_count(&star(4)), 24);
        assert_eq!(automorphism_count(&path(2).disjoint_union(&path(2))), 8);
        assert_eq!(automorphism_count(&Forest::empty(3)), 6);
    }

    #[test]
    fn report_examples() {
        let r = empirical_extremes(&seq(&[2, 2, 1, 1, 1, 1, 1, 1]), DEFAULT_SIZE_CAP).unwrap();
        assert_eq!(
            (r.gamma_max, r.gamma_min, r.alpha_min, r.alpha_max),
            (4, 3, 4, 5)
        );
        assert_eq!(r.witness_gamma_max.domination_number().0, 4);
        assert_eq!(r.witness_alpha_min.independence_number().0, 4);

        let r = empirical_extremes(&seq(&[2, 2, 2, 1, 1]), DEFAULT_SIZE_CAP).unwrap();
        assert_eq!(
            (r.gamma_max, r.gamma_min, r.alpha_min, r.alpha_max),
            (2, 2, 3, 3)
        );
        assert_eq!(
            (r.realization_count_iso, r.realization_count_labeled),
            (1, 6)
        );

        let r = empirical_extremes(&seq(&[3, 1, 1, 1]), DEFAULT_SIZE_CAP).unwrap();
        assert_eq!((r.gamma_max, r.alpha_min), (1, 3));
    }

    #[test]
    fn reports_handle_zeros() {
        let r = empirical_extremes(&seq(&[2, 1, 1, 0, 0]), DEFAULT_SIZE_CAP).unwrap();
        assert_eq!((r.gamma_max, r.alpha_min), (3, 4));
        let r = empirical_extremes(&seq(&[0, 0]), DEFAULT_SIZE_CAP).unwrap();
        assert_eq!(
            (r.gamma_min, r.gamma_max, r.realization_count_iso),
            (2, 2, 1)
        );
    }

    #[test]
    fn cap_is_enforced() {
        let long = DegreeSequence::new([vec![2; 18], vec![1, 1]].concat());
        assert_eq!(
            empirical_extremes(&long, DEFAULT_SIZE_CAP),
            Err(Error::SizeCapExceeded { len: 20, cap: 14 })
        );
        assert!(empirical_extremes(&seq(&[3, 3]), DEFAULT_SIZE_CAP).is_err());
    }

    #[test]
    fn labeled_and_isomorphism_reports_agree() {
        for s in sweep_sequences(8) {
            let a = empirical_extremes(&s, DEFAULT_SIZE_CAP).unwrap();
            let b = empirical_extremes_labeled(&s, DEFAULT_SIZE_CAP).unwrap();
            assert_eq!(
                (a.gamma_min, a.gamma_max, a.alpha_min, a.alpha_max),
                (b.gamma_min, b.gamma_max, b.alpha_min, b.alpha_max),
                "{s}"
            );
            assert_eq!(
                a.realization_count_labeled, b.realization_count_labeled,
                "{s}"
            );
            assert_eq!(a.realization_count_iso, b.realization_count_iso, "{s}");
        }
    }

    #[test]
    fn sweep_examples() {
        assert!(sweep_sequences(2).is_empty());
        assert_eq!(sweep_sequences(3), vec![seq(&[2, 1, 1])]);
        assert_eq!(
            sweep_sequences(4),
            vec![seq(&[2, 1, 1]), seq(&[3, 1, 1, 1]), seq(&[2, 2, 1, 1])]
        );
        // counts from a direct combinations-with-replacement enumeration
        let counts: Vec<usize> = [6, 8, 9, 10, 12]
            .iter()
            .map(|&m| sweep_sequences(m).len())
            .collect();
        assert_eq!(counts, vec![14, 43, 69, 109, 247]);
        for s in sweep_sequences(9) {
            let stats = s.validate().unwrap();
            assert!(s.max_degree() >= 2 && stats.n0 == 0);
        }
    }

    #[test]
    fn swaps_preserve_degrees() {
        let f = realize_any(&seq(&[3, 2, 2, 2, 1, 1, 1])).unwrap();
        let moves = swap_neighbors(&f);
        assert!(!moves.is_empty());
        for g in moves {
            assert_eq!(g.degree_sequence(), f.degree_sequence());
            assert_eq!(g.component_count(), f.component_count());
        }
    }

    #[test]
    fn swap_search_examples() {
        let f = swap_search_gamma(&seq(&[2, 2, 2, 1, 1]), 3, 1).unwrap();
        assert_eq!(f.domination_number().0, 2);
        let f = swap_search_gamma(&seq(&[2, 2, 1, 1, 1, 1, 1, 1]), 20, 5).unwrap();
        assert_eq!(f.domination_number().0, 4);
        for seed in 0..5 {
            let f = swap_search_gamma(&seq(&[3, 2, 2, 2, 1, 1, 1]), 5, seed).unwrap();
            assert!(f.domination_number().0 <= 3);
        }
    }
}
