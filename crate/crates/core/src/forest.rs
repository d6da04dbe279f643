//! Labeled forests with exact linear-time solvers for the domination and
//! independence numbers.
//!
//! Vertices are labeled `0..n`. Edges are stored normalized (smaller endpoint
//! first) and sorted, so two forests with the same edge set compare equal.
//! Wherever a choice is free (roots, farthest vertices, witnesses) the
//! smallest label wins, which keeps every output deterministic.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::degseq::DegreeSequence;
use crate::dsu::RollbackDsu;
use crate::error::{Error, Result};

/// Sorted set of vertex labels.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new(mut labels: Vec<usize>) -> Self {
        labels.sort_unstable();
        labels.dedup();
        VertexSet(labels)
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        VertexSet::new(iter.into_iter().collect())
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// A simple undirected acyclic graph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Forest {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

/// On-disk shape of the structured forest document.
#[derive(Serialize, Deserialize)]
struct ForestDoc {
    n: usize,
    edges: Vec<[usize; 2]>,
}

impl Forest {
    /// Builds a forest, rejecting self-loops, parallel edges, cycles and
    /// out-of-range labels.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Forest> {
        let mut dsu = RollbackDsu::new(n);
        let mut normalized = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            for label in [u, v] {
                if label >= n {
                    return Err(Error::LabelOutOfRange { label, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            normalized.push((u.min(v), u.max(v)));
        }
        let mut sorted = normalized.clone();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge(w[0].0, w[0].1));
        }
        // Cycle check in input order so the reported edge is the one that closes it.
        for &(u, v) in &normalized {
            if !dsu.union(u, v) {
                return Err(Error::CycleDetected(u, v));
            }
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &sorted {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Forest {
            n,
            edges: sorted,
            adj,
        })
    }

    /// `n` isolated vertices.
    pub fn empty(n: usize) -> Forest {
        Forest {
            n,
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn degree_sequence(&self) -> DegreeSequence {
        DegreeSequence::new((0..self.n).map(|v| self.degree(v)).collect())
    }

    /// Places `other` next to `self`, shifting its labels by `self.order()`.
    pub fn disjoint_union(&self, other: &Forest) -> Forest {
        let shift = self.n;
        let edges: Vec<_> = self
            .edges
            .iter()
            .copied()
            .chain(other.edges.iter().map(|&(u, v)| (u + shift, v + shift)))
            .collect();
        Forest::from_edges(self.n + other.n, &edges).expect("union of forests is a forest")
    }

    /// Connected components, each sorted, ordered by their smallest vertex.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            let order = self.bfs_order(start, &mut seen);
            out.push(VertexSet::new(order));
        }
        out
    }

    pub fn component_count(&self) -> usize {
        self.n - self.edges.len()
    }

    pub fn is_connected(&self) -> bool {
        self.n > 0 && self.component_count() == 1
    }

    /// Vertices of degree at least 2 with a degree-1 neighbor.
    pub fn support_vertices(&self) -> VertexSet {
        (0..self.n)
            .filter(|&v| self.degree(v) >= 2 && self.adj[v].iter().any(|&w| self.degree(w) == 1))
            .collect()
    }

    pub fn is_dominating(&self, set: &VertexSet) -> bool {
        set.iter().all(|v| v < self.n)
            && (0..self.n).all(|v| set.contains(v) || self.adj[v].iter().any(|&w| set.contains(w)))
    }

    pub fn is_independent(&self, set: &VertexSet) -> bool {
        set.iter().all(|v| v < self.n)
            && self
                .edges
                .iter()
                .all(|&(u, v)| !(set.contains(u) && set.contains(v)))
    }

    /// True when every vertex of degree at least 2 outside `set` has a
    /// neighbor in `set`.
    pub fn dominates_internal_vertices(&self, set: &VertexSet) -> bool {
        (0..self.n).all(|v| {
            self.degree(v) < 2 || set.contains(v) || self.adj[v].iter().any(|&w| set.contains(w))
        })
    }

    /// BFS from `start`, marking `seen`; neighbors are visited in label order.
    fn bfs_order(&self, start: usize, seen: &mut [bool]) -> Vec<usize> {
        let mut order = vec![start];
        seen[start] = true;
        let mut head = 0;
        while head < order.len() {
            let v = order[head];
            head += 1;
            for &w in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    order.push(w);
                }
            }
        }
        order
    }

    /// Roots every component at its smallest vertex; returns a BFS order
    /// (parents before children) and the parent array.
    fn rooted(&self) -> (Vec<usize>, Vec<usize>) {
        let mut parent = vec![usize::MAX; self.n];
        let mut seen = vec![false; self.n];
        let mut order = Vec::with_capacity(self.n);
        for root in 0..self.n {
            if seen[root] {
                continue;
            }
            let start = order.len();
            order.extend(self.bfs_order(root, &mut seen));
            for &v in &order[start..] {
                for &w in &self.adj[v] {
                    if w != parent[v] {
                        parent[w] = v;
                    }
                }
            }
        }
        (order, parent)
    }

    /// Domination number with a minimum dominating set.
    ///
    /// Three-state tree DP per vertex: in the set, outside but dominated by a
    /// child, or outside and left for the parent to dominate.
    pub fn domination_number(&self) -> (usize, VertexSet) {
        const INF: usize = usize::MAX / 4;
        let (order, parent) = self.rooted();
        let mut take = vec![0usize; self.n];
        let mut covered = vec![0usize; self.n];
        let mut open = vec![0usize; self.n];
        for &v in order.iter().rev() {
            let children = self.adj[v].iter().copied().filter(|&c| c != parent[v]);
            let mut t = 1;
            let mut base = 0;
            let mut best_switch = INF;
            let mut o = 0;
            for c in children {
                t += take[c].min(covered[c]).min(open[c]);
                let m = take[c].min(covered[c]);
                base += m;
                best_switch = best_switch.min(take[c] - m);
                o = (o + covered[c]).min(INF);
            }
            take[v] = t.min(INF);
            covered[v] = (base + best_switch).min(INF);
            open[v] = o;
        }

        #[derive(Clone, Copy, PartialEq)]
        enum State {
            Take,
            Covered,
            Open,
        }
        let mut state = vec![State::Open; self.n];
        let mut size = 0;
        for &v in &order {
            let s = if parent[v] == usize::MAX {
                size += take[v].min(covered[v]);
                if take[v] <= covered[v] {
                    State::Take
                } else {
                    State::Covered
                }
            } else {
                state[v]
            };
            state[v] = s;
            let children: Vec<usize> = self.adj[v]
                .iter()
                .copied()
                .filter(|&c| c != parent[v])
                .collect();
            match s {
                State::Take => {
                    for &c in &children {
                        let best = take[c].min(covered[c]).min(open[c]);
                        state[c] = if take[c] == best {
                            State::Take
                        } else if covered[c] == best {
                            State::Covered
                        } else {
                            State::Open
                        };
                    }
                }
                State::Covered => {
                    let mut any_take = false;
                    for &c in &children {
                        state[c] = if take[c] <= covered[c] {
                            any_take = true;
                            State::Take
                        } else {
                            State::Covered
                        };
                    }
                    if !any_take {
                        let forced = children
                            .iter()
                            .copied()
                            .min_by_key(|&c| take[c] - take[c].min(covered[c]))
                            .expect("covered state needs a child");
                        state[forced] = State::Take;
                    }
                }
                State::Open => {
                    for &c in &children {
                        state[c] = State::Covered;
                    }
                }
            }
        }
        let witness: VertexSet = (0..self.n).filter(|&v| state[v] == State::Take).collect();
        debug_assert_eq!(witness.len(), size);
        (size, witness)
    }

    /// Independence number with a maximum independent set.
    pub fn independence_number(&self) -> (usize, VertexSet) {
        let (order, parent) = self.rooted();
        let mut with = vec![0usize; self.n];
        let mut without = vec![0usize; self.n];
        for &v in order.iter().rev() {
            let mut w = 1;
            let mut wo = 0;
            for &c in &self.adj[v] {
                if c != parent[v] {
                    w += without[c];
                    wo += with[c].max(without[c]);
                }
            }
            with[v] = w;
            without[v] = wo;
        }
        let mut chosen = vec![false; self.n];
        let mut size = 0;
        for &v in &order {
            let p = parent[v];
            chosen[v] = if p == usize::MAX {
                size += with[v].max(without[v]);
                with[v] >= without[v]
            } else {
                !chosen[p] && with[v] >= without[v]
            };
        }
        let witness: VertexSet = (0..self.n).filter(|&v| chosen[v]).collect();
        debug_assert_eq!(witness.len(), size);
        (size, witness)
    }

    /// Distances from `start` within its component, restricted to `alive`
    /// vertices; returns the farthest vertex (smallest label on ties) and the
    /// BFS parent array.
    fn farthest(&self, start: usize, alive: &[bool]) -> (usize, Vec<usize>) {
        let mut dist = vec![usize::MAX; self.n];
        let mut parent = vec![usize::MAX; self.n];
        dist[start] = 0;
        let mut queue = VecDeque::from([start]);
        let mut best = start;
        while let Some(v) = queue.pop_front() {
            if dist[v] > dist[best] || (dist[v] == dist[best] && v < best) {
                best = v;
            }
            for &w in &self.adj[v] {
                if alive[w] && dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    parent[w] = v;
                    queue.push_back(w);
                }
            }
        }
        (best, parent)
    }

    fn longest_path_within(&self, start: usize, alive: &[bool]) -> Vec<usize> {
        let (a, _) = self.farthest(start, alive);
        let (b, parent) = self.farthest(a, alive);
        let mut path = vec![b];
        let mut v = b;
        while v != a {
            v = parent[v];
            path.push(v);
        }
        path.reverse();
        path
    }

    /// A longest path in the component containing `vertex`, by double sweep.
    pub fn component_longest_path(&self, vertex: usize) -> Vec<usize> {
        self.longest_path_within(vertex, &vec![true; self.n])
    }

    /// A longest path of a tree, as an ordered vertex list.
    pub fn longest_path(&self) -> Result<Vec<usize>> {
        if !self.is_connected() {
            return Err(Error::NotConnected);
        }
        Ok(self.component_longest_path(0))
    }

    /// For a tree of order `n`, a set `D` with `|D| <= ceil((n - 2) / 3)`
    /// such that every vertex of degree at least 2 outside `D` has a neighbor
    /// in `D`.
    ///
    /// Repeatedly takes a longest path `u0 u1 u2 u3 ...`, puts `u2` into `D`
    /// and continues in the part hanging off `u3` once the edge `u2 u3` is
    /// cut. Stops at a tree of order at most 2 (nothing to add) or a star
    /// (add its center).
    pub fn internal_dominator(&self) -> Result<VertexSet> {
        if !self.is_connected() {
            return Err(Error::NotConnected);
        }
        let mut alive = vec![true; self.n];
        let mut root = 0;
        let mut chosen = Vec::new();
        loop {
            let path = self.longest_path_within(root, &alive);
            let length = path.len() - 1;
            if length <= 1 {
                // order at most 2
                break;
            }
            if length == 2 {
                chosen.push(path[1]);
                break;
            }
            let (u2, u3) = (path[2], path[3]);
            chosen.push(u2);
            // Drop the side of u2u3 that holds u2.
            alive[u3] = false;
            let mut stack = vec![u2];
            alive[u2] = false;
            while let Some(v) = stack.pop() {
                for &w in &self.adj[v] {
                    if alive[w] {
                        alive[w] = false;
                        stack.push(w);
                    }
                }
            }
            alive[u3] = true;
            root = u3;
        }
        Ok(VertexSet::new(chosen))
    }

    /// Compact structured document: `{"n":N,"edges":[[u,v],...]}` plus a
    /// trailing newline. Pairs are smaller-first and sorted.
    pub fn to_json(&self) -> String {
        let doc = ForestDoc {
            n: self.n,
            edges: self.edges.iter().map(|&(u, v)| [u, v]).collect(),
        };
        let mut s = serde_json::to_string(&doc).expect("forest document serializes");
        s.push('\n');
        s
    }

    /// Plain edge list: a header `n <count>` then one `u v` line per edge.
    pub fn to_edge_list(&self) -> String {
        let mut s = format!("n {}\n", self.n);
        for &(u, v) in &self.edges {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }

    pub fn from_json(text: &str) -> Result<Forest> {
        let doc: ForestDoc =
            serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        let edges: Vec<_> = doc.edges.iter().map(|e| (e[0], e[1])).collect();
        Forest::from_edges(doc.n, &edges)
    }

    /// Reads the plain edge-list format. Blank lines and `#` comments are
    /// skipped.
    pub fn from_edge_list(text: &str) -> Result<Forest> {
        let mut lines = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Format("missing header".into()))?;
        let n = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
            ["n", count] => count
                .parse::<usize>()
                .map_err(|_| Error::Format(format!("bad vertex count {count:?}")))?,
            _ => {
                return Err(Error::Format(format!(
                    "expected `n <count>`, got {header:?}"
                )))
            }
        };
        let mut edges = Vec::new();
        for line in lines {
            let parts: Vec<_> = line.split_whitespace().collect();
            let [u, v] = parts.as_slice() else {
                return Err(Error::Format(format!("expected `u v`, got {line:?}")));
            };
            let parse = |t: &str| {
                t.parse::<usize>()
                    .map_err(|_| Error::Format(format!("bad vertex label {t:?}")))
            };
            edges.push((parse(u)?, parse(v)?));
        }
        Forest::from_edges(n, &edges)
    }

    /// Accepts either file format, picked by the first non-blank character.
    pub fn parse(text: &str) -> Result<Forest> {
        if text.trim_start().starts_with('{') {
            Forest::from_json(text)
        } else {
            Forest::from_edge_list(text)
        }
    }
}

impl Serialize for Forest {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        ForestDoc {
            n: self.n,
            edges: self.edges.iter().map(|&(u, v)| [u, v]).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Forest {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let doc = ForestDoc::deserialize(deserializer)?;
        let edges: Vec<_> = doc.edges.iter().map(|e| (e[0], e[1])).collect();
        Forest::from_edges(doc.n, &edges).map_err(serde::de::Error::custom)
    }
}

/// Path on `n` vertices labeled along the path.
pub fn path(n: usize) -> Forest {
    let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
    Forest::from_edges(n, &edges).expect("path is a tree")
}

/// Star with center 0 and `leaves` leaves.
pub fn star(leaves: usize) -> Forest {
    let edges: Vec<_> = (1..=leaves).map(|v| (0, v)).collect();
    Forest::from_edges(leaves + 1, &edges).expect("star is a tree")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_gamma(f: &Forest) -> usize {
        (0u32..1 << f.order())
            .filter(|mask| {
                let set: VertexSet = (0..f.order()).filter(|v| mask >> v & 1 == 1).collect();
                f.is_dominating(&set)
            })
            .map(|mask| mask.count_ones() as usize)
            .min()
            .unwrap_or(0)
    }

    fn brute_alpha(f: &Forest) -> usize {
        (0u32..1 << f.order())
            .filter(|mask| {
                let set: VertexSet = (0..f.order()).filter(|v| mask >> v & 1 == 1).collect();
                f.is_independent(&set)
            })
            .map(|mask| mask.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    #[test]
    fn from_edges_examples() {
        let p3 = Forest::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(p3.edge_count(), 2);
        assert_eq!(
            Forest::from_edges(3, &[(0, 1), (1, 2), (0, 2)]),
            Err(Error::CycleDetected(0, 2))
        );
        assert_eq!(Forest::from_edges(2, &[(0, 0)]), Err(Error::SelfLoop(0)));
        assert_eq!(
            Forest::from_edges(3, &[(0, 1), (1, 0)]),
            Err(Error::DuplicateEdge(0, 1))
        );
        assert_eq!(
            Forest::from_edges(2, &[(0, 2)]),
            Err(Error::LabelOutOfRange { label: 2, n: 2 })
        );
    }

    #[test]
    fn degree_sequence_examples() {
        assert_eq!(path(3).degree_sequence().degrees(), &[2, 1, 1]);
        assert_eq!(star(3).degree_sequence().degrees(), &[3, 1, 1, 1]);
        assert_eq!(Forest::empty(2).degree_sequence().degrees(), &[0, 0]);
    }

    #[test]
    fn components_examples() {
        let f = path(3).disjoint_union(&path(2));
        let sizes: Vec<_> = f.components().iter().map(VertexSet::len).collect();
        assert_eq!(sizes, vec![3, 2]);
        assert_eq!(path(5).components().len(), 1);
        assert_eq!(Forest::empty(3).components().len(), 3);
    }

    #[test]
    fn solver_examples() {
        assert_eq!(path(3).domination_number().0, 1);
        assert_eq!(path(4).domination_number().0, 2);
        assert_eq!(path(2).disjoint_union(&path(2)).domination_number().0, 2);
        assert_eq!(Forest::empty(1).domination_number().0, 1);
        assert_eq!(path(4).independence_number().0, 2);
        assert_eq!(star(3).independence_number().0, 3);
        assert_eq!(Forest::empty(1).independence_number().0, 1);
        for n in 1..=30 {
            assert_eq!(path(n).domination_number().0, n.div_ceil(3));
            assert_eq!(path(n).independence_number().0, n.div_ceil(2));
        }
    }

    #[test]
    fn solver_on_empty_graph() {
        assert_eq!(Forest::empty(0).domination_number().0, 0);
        assert_eq!(Forest::empty(0).independence_number().0, 0);
    }

    #[test]
    fn solver_matches_subset_search_on_small_trees() {
        // All trees from a few Prüfer-free constructions: spiders and caterpillars.
        let mut forests = vec![
            Forest::from_edges(7, &[(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)]).unwrap(),
            Forest::from_edges(8, &[(0, 1), (1, 2), (2, 3), (1, 4), (2, 5), (5, 6), (5, 7)])
                .unwrap(),
            Forest::from_edges(6, &[(0, 1), (2, 3), (3, 4)]).unwrap(),
        ];
        forests.push(star(5).disjoint_union(&path(4)));
        for f in &forests {
            let (g, d) = f.domination_number();
            let (a, i) = f.independence_number();
            assert!(f.is_dominating(&d) && d.len() == g);
            assert!(f.is_independent(&i) && i.len() == a);
            assert_eq!(g, brute_gamma(f));
            assert_eq!(a, brute_alpha(f));
        }
    }

    #[test]
    fn support_vertices_examples() {
        assert_eq!(path(4).support_vertices().as_slice(), &[1, 2]);
        assert_eq!(star(3).support_vertices().as_slice(), &[0]);
        assert!(path(2).support_vertices().is_empty());
    }

    #[test]
    fn longest_path_examples() {
        assert_eq!(path(5).longest_path().unwrap().len() - 1, 4);
        let p = star(3).longest_path().unwrap();
        assert_eq!(p.len() - 1, 2);
        assert_eq!(p[1], 0);
        assert_eq!(Forest::empty(1).longest_path().unwrap(), vec![0]);
        assert_eq!(
            path(2).disjoint_union(&path(2)).longest_path(),
            Err(Error::NotConnected)
        );
    }

    #[test]
    fn internal_dominator_examples() {
        assert!(path(2).internal_dominator().unwrap().is_empty());
        assert_eq!(star(3).internal_dominator().unwrap().as_slice(), &[0]);
        let p7 = path(7);
        let d = p7.internal_dominator().unwrap();
        assert!(d.len() <= 2);
        assert!(p7.dominates_internal_vertices(&d));
        assert_eq!(
            Forest::empty(2).internal_dominator(),
            Err(Error::NotConnected)
        );
        assert!(Forest::empty(1).internal_dominator().unwrap().is_empty());
    }

    #[test]
    fn file_formats() {
        let f = Forest::from_edges(4, &[(2, 1), (0, 1), (3, 2)]).unwrap();
        assert_eq!(f.to_json(), "{\"n\":4,\"edges\":[[0,1],[1,2],[2,3]]}\n");
        assert_eq!(f.to_edge_list(), "n 4\n0 1\n1 2\n2 3\n");
        assert_eq!(Forest::parse(&f.to_json()).unwrap(), f);
        assert_eq!(Forest::parse(&f.to_edge_list()).unwrap(), f);
        assert_eq!(
            Forest::parse("# comment\nn 3\n\n1 0\n1 2 # tail\n").unwrap(),
            path(3)
        );
        assert!(matches!(
            Forest::parse("n 3\n0 1 2\n"),
            Err(Error::Format(_))
        ));
        assert!(matches!(Forest::parse("3\n0 1\n"), Err(Error::Format(_))));
        assert!(matches!(Forest::parse("{\"n\":3}"), Err(Error::Format(_))));
        assert_eq!(
            Forest::parse("n 3\n0 1\n1 2\n2 0\n"),
            Err(Error::CycleDetected(0, 2))
        );
    }
}
