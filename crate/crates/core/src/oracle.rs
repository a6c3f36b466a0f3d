//! Finite truncations of the continuum as graphs.
//!
//! Nodes are the eventually-constant sequences `w·c^∞` with `|w| ≤ N`. Edges
//! are the level-0 arcs between them and the level-`k` arcs for `k ≤ K` whose
//! both endpoints are nodes. Connectivity is answered by a union-find, and a
//! separate BFS produces minimum-hop chains.

use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::Serialize;

use crate::binseq::{e0star, witness_level, BinSeq};
use crate::continuum::{make_arc, Arc};
use crate::error::{Error, Result};

/// Default cap on the prefix bound accepted by [`check_theorem`].
pub const DEFAULT_MAX_N: usize = 7;

/// Environment variable overriding [`DEFAULT_MAX_N`].
pub const MAX_N_ENV: &str = "KNASTER_MAX_N";

#[derive(Debug, Clone)]
pub struct DisjointSet {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl DisjointSet {
    pub fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    /// Returns `false` if `x` and `y` were already together.
    pub fn union(&mut self, x: usize, y: usize) -> bool {
        let (mut rx, mut ry) = (self.find(x), self.find(y));
        if rx == ry {
            return false;
        }
        if self.size[rx] < self.size[ry] {
            std::mem::swap(&mut rx, &mut ry);
        }
        self.parent[ry] = rx;
        self.size[rx] += self.size[ry];
        true
    }

    /// Root of every element, with all paths fully compressed.
    pub fn roots(&mut self) -> Vec<usize> {
        (0..self.parent.len()).map(|x| self.find(x)).collect()
    }
}

#[derive(Debug, Clone)]
pub struct ConnGraph {
    prefix_bound: usize,
    level_bound: usize,
    nodes: Vec<BinSeq>,
    index: HashMap<BinSeq, usize>,
    edges: Vec<Arc>,
    adjacency: Vec<Vec<(usize, usize)>>,
    dsu: DisjointSet,
    roots: Vec<usize>,
}

/// Truncation with prefixes up to `prefix_bound` and arc levels up to
/// `level_bound`.
pub fn build(prefix_bound: usize, level_bound: usize) -> Result<ConnGraph> {
    if prefix_bound == 0 || level_bound == 0 {
        return Err(Error::InvalidParams(format!(
            "need N >= 1 and K >= 1, got N={prefix_bound}, K={level_bound}"
        )));
    }
    if prefix_bound >= usize::BITS as usize - 1 {
        return Err(Error::InvalidParams(format!(
            "N={prefix_bound} is too large"
        )));
    }
    let nodes = truncation_nodes(prefix_bound);
    let index: HashMap<BinSeq, usize> = nodes
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, s)| (s, i))
        .collect();

    let mut arcs = BTreeSet::new();
    for s in &nodes {
        arcs.insert(make_arc(0, s).expect("level-0 arcs always exist"));
        if let Some(k) = s.level().filter(|&k| k <= level_bound) {
            let arc = make_arc(k, s).expect("level matches");
            // the partner of 0^N(1) falls outside the truncation
            if index.contains_key(arc.left()) && index.contains_key(arc.right()) {
                arcs.insert(arc);
            }
        }
    }
    let edges: Vec<Arc> = arcs.into_iter().collect();

    let mut adjacency = vec![Vec::new(); nodes.len()];
    let mut dsu = DisjointSet::new(nodes.len());
    for (e, arc) in edges.iter().enumerate() {
        let (l, r) = (index[arc.left()], index[arc.right()]);
        adjacency[l].push((r, e));
        adjacency[r].push((l, e));
        dsu.union(l, r);
    }
    let roots = dsu.roots();
    Ok(ConnGraph {
        prefix_bound,
        level_bound,
        nodes,
        index,
        edges,
        adjacency,
        dsu,
        roots,
    })
}

/// All `w·c^∞` with `|w| ≤ n`, sorted. Enumerating `|w| = n` suffices since
/// shorter words pad with the tail symbol.
pub fn truncation_nodes(n: usize) -> Vec<BinSeq> {
    let mut out: Vec<BinSeq> = [false, true]
        .into_iter()
        .flat_map(|tail| {
            (0u64..1 << n).map(move |bits| {
                let word = (0..n).map(|i| bits >> (n - 1 - i) & 1 == 1).collect();
                BinSeq::eventually_constant(word, tail)
            })
        })
        .collect();
    out.sort();
    out
}

impl ConnGraph {
    pub fn prefix_bound(&self) -> usize {
        self.prefix_bound
    }

    pub fn level_bound(&self) -> usize {
        self.level_bound
    }

    pub fn nodes(&self) -> &[BinSeq] {
        &self.nodes
    }

    pub fn edges(&self) -> &[Arc] {
        &self.edges
    }

    pub fn contains(&self, s: &BinSeq) -> bool {
        self.index.contains_key(s)
    }

    fn node_index(&self, s: &BinSeq) -> Result<usize> {
        self.index
            .get(s)
            .copied()
            .ok_or_else(|| Error::NotANode(s.to_string()))
    }

    pub fn component_count(&self) -> usize {
        let mut roots = self.roots.clone();
        roots.sort_unstable();
        roots.dedup();
        roots.len()
    }

    pub fn connected(&self, a: &BinSeq, b: &BinSeq) -> Result<bool> {
        let (i, j) = (self.node_index(a)?, self.node_index(b)?);
        Ok(self.roots[i] == self.roots[j])
    }

    /// Minimum-hop arc chain from `a` to `b`, by BFS over the arcs only.
    pub fn shortest_chain(&self, a: &BinSeq, b: &BinSeq) -> Result<Option<Vec<Arc>>> {
        let (start, goal) = (self.node_index(a)?, self.node_index(b)?);
        let mut came_from: Vec<Option<(usize, usize)>> = vec![None; self.nodes.len()];
        let mut seen = vec![false; self.nodes.len()];
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            if v == goal {
                break;
            }
            for &(w, e) in &self.adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    came_from[w] = Some((v, e));
                    queue.push_back(w);
                }
            }
        }
        if !seen[goal] {
            return Ok(None);
        }
        let mut chain = Vec::new();
        let mut cur = goal;
        while let Some((prev, e)) = came_from[cur] {
            chain.push(self.edges[e].clone());
            cur = prev;
        }
        chain.reverse();
        Ok(Some(chain))
    }

    /// Merges the components of `a` and `b` in the union-find without adding
    /// an arc, inserting either as an isolated node if absent. Only useful for
    /// exercising the theorem checker: every pair of eventually-constant
    /// sequences is `E_0*`-related, so a bogus link has to involve a node from
    /// outside the truncation to be detectable.
    pub fn link_unchecked(&mut self, a: &BinSeq, b: &BinSeq) {
        let i = self.insert_isolated(a);
        let j = self.insert_isolated(b);
        self.dsu.union(i, j);
        self.roots = self.dsu.roots();
    }

    fn insert_isolated(&mut self, s: &BinSeq) -> usize {
        if let Some(&i) = self.index.get(s) {
            return i;
        }
        let i = self.nodes.len();
        self.nodes.push(s.clone());
        self.index.insert(s.clone(), i);
        self.adjacency.push(Vec::new());
        self.dsu.parent.push(i);
        self.dsu.size.push(1);
        i
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    #[serde(rename = "N")]
    pub prefix_bound: usize,
    #[serde(rename = "K")]
    pub level_bound: usize,
    pub nodes: usize,
    pub edges: usize,
    pub pairs_checked: usize,
    pub soundness_violations: Vec<[BinSeq; 2]>,
    pub completeness_violations: Vec<[BinSeq; 2]>,
}

impl TheoremReport {
    /// Compares graph connectivity with the `E_0*` decider over all
    /// unordered node pairs.
    ///
    /// Soundness: connected pairs are related. Completeness: related pairs
    /// with witness level `n ≤ N − 1` are connected, since their synthesized
    /// chains only use arcs of level `≤ n` through nodes of the truncation.
    pub fn check(g: &ConnGraph) -> Self {
        let mut soundness_violations = Vec::new();
        let mut completeness_violations = Vec::new();
        let mut pairs_checked = 0;
        for (i, a) in g.nodes.iter().enumerate() {
            for (j, b) in g.nodes.iter().enumerate().skip(i + 1) {
                pairs_checked += 1;
                let connected = g.roots[i] == g.roots[j];
                let related = e0star(a, b);
                if connected && !related {
                    soundness_violations.push([a.clone(), b.clone()]);
                }
                let within_reach = witness_level(a, b).is_some_and(|w| w.n < g.prefix_bound);
                if related && within_reach && !connected {
                    completeness_violations.push([a.clone(), b.clone()]);
                }
            }
        }
        Self {
            prefix_bound: g.prefix_bound,
            level_bound: g.level_bound,
            nodes: g.nodes.len(),
            edges: g.edges.len(),
            pairs_checked,
            soundness_violations,
            completeness_violations,
        }
    }

    pub fn is_clean(&self) -> bool {
        self.soundness_violations.is_empty() && self.completeness_violations.is_empty()
    }
}

/// Cap from `KNASTER_MAX_N`, falling back to [`DEFAULT_MAX_N`].
pub fn max_prefix_from_env() -> Result<usize> {
    match std::env::var(MAX_N_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::InvalidParams(format!("{MAX_N_ENV}={v:?} is not an integer"))),
        Err(_) => Ok(DEFAULT_MAX_N),
    }
}

/// Exhaustive check on `build(n, n + 1)`; level `n + 1` covers every arc a
/// synthesized witness of level `≤ n` can use.
pub fn check_theorem(n: usize) -> Result<TheoremReport> {
    check_theorem_with_cap(n, DEFAULT_MAX_N)
}

pub fn check_theorem_with_cap(n: usize, cap: usize) -> Result<TheoremReport> {
    if n > cap {
        return Err(Error::CapExceeded { n, cap });
    }
    let g = build(n, n + 1)?;
    Ok(TheoremReport::check(&g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::witness::{verify, PathWitness};
    use std::collections::HashSet;

    fn seq(s: &str) -> BinSeq {
        s.parse().unwrap()
    }

    #[test]
    fn dsu_basics() {
        let mut d = DisjointSet::new(5);
        assert!(d.union(0, 1));
        assert!(d.union(3, 4));
        assert!(!d.union(1, 0));
        assert_eq!(d.find(0), d.find(1));
        assert_ne!(d.find(0), d.find(3));
        d.union(1, 4);
        let roots = d.roots();
        assert!(roots[..2].iter().chain(&roots[3..]).all(|&r| r == roots[0]));
        assert_ne!(roots[2], roots[0]);
    }

    #[test]
    fn smallest_truncation() {
        let g = build(1, 1).unwrap();
        let expected: HashSet<BinSeq> = ["(0)", "(1)", "0(1)", "1(0)"].map(seq).into();
        assert_eq!(g.nodes().iter().cloned().collect::<HashSet<_>>(), expected);
        assert_eq!(g.component_count(), 1);
        // two level-0 arcs and (1) -- 1(0) at level 1
        assert_eq!(g.edges().len(), 3);
        assert_eq!(g.edges().iter().filter(|a| a.level() == 1).count(), 1);
    }

    #[test]
    fn node_count_matches_enumeration() {
        for n in 1..=6 {
            let mut brute = HashSet::new();
            for len in 0..=n {
                for bits in 0u32..1 << len {
                    let word: Vec<bool> = (0..len).map(|i| bits >> i & 1 == 1).collect();
                    brute.insert(BinSeq::new(word.clone(), vec![false]).unwrap());
                    brute.insert(BinSeq::new(word, vec![true]).unwrap());
                }
            }
            let g = build(n, n + 1).unwrap();
            assert_eq!(g.nodes().len(), 1 << (n + 1));
            assert_eq!(g.nodes().iter().cloned().collect::<HashSet<_>>(), brute);
        }
    }

    #[test]
    fn closure_under_complement_and_hat() {
        let g = build(6, 7).unwrap();
        for s in g.nodes() {
            assert!(g.contains(&s.complement()));
            if let Some(k) = s.level().filter(|&k| k <= 6) {
                assert!(g.contains(&s.hat().unwrap()), "{s} level {k}");
            }
        }
        for arc in g.edges() {
            assert!(g.contains(arc.left()) && g.contains(arc.right()));
        }
    }

    #[test]
    fn rejects_bad_params() {
        assert!(build(0, 1).is_err());
        assert!(build(1, 0).is_err());
        let g = build(2, 2).unwrap();
        assert!(matches!(
            g.connected(&seq("(01)"), &seq("(0)")),
            Err(Error::NotANode(_))
        ));
        assert!(g.shortest_chain(&seq("(0)"), &seq("0001(0)")).is_err());
    }

    #[test]
    fn worked_example_is_optimal() {
        let g = build(6, 7).unwrap();
        let (a, b) = (seq("0110(0)"), seq("0001(1)"));
        assert!(g.connected(&a, &b).unwrap());
        let chain = g.shortest_chain(&a, &b).unwrap().unwrap();
        assert_eq!(chain.len(), 3);
        assert!(verify(&PathWitness::from_arcs(a.clone(), chain).unwrap()));
        assert!(g.shortest_chain(&a, &a).unwrap().unwrap().is_empty());
        assert_eq!(
            g.shortest_chain(&a, &a.complement())
                .unwrap()
                .unwrap()
                .len(),
            1
        );
    }

    #[test]
    fn connected_agrees_with_decider() {
        let g = build(6, 7).unwrap();
        let z = BinSeq::zeros();
        let t = seq("000001(1)");
        assert_eq!(g.connected(&z, &t).unwrap(), e0star(&z, &t));
        assert!(g.connected(&z, &z).unwrap());
    }

    #[test]
    fn union_find_matches_bfs() {
        let g = build(4, 5).unwrap();
        for a in g.nodes() {
            for b in g.nodes() {
                assert_eq!(
                    g.connected(a, b).unwrap(),
                    g.shortest_chain(a, b).unwrap().is_some()
                );
            }
        }
    }

    #[test]
    fn build_is_deterministic() {
        let (g, h) = (build(5, 6).unwrap(), build(5, 6).unwrap());
        assert_eq!(g.nodes(), h.nodes());
        assert_eq!(g.edges(), h.edges());
    }

    #[test]
    fn small_theorem_checks() {
        for n in 1..=4 {
            let report = check_theorem(n).unwrap();
            assert!(report.is_clean(), "{report:?}");
            assert_eq!(report.nodes, 1 << (n + 1));
            assert_eq!(report.pairs_checked, report.nodes * (report.nodes - 1) / 2);
        }
    }

    #[test]
    fn eventually_constant_nodes_are_all_related() {
        let g = build(3, 4).unwrap();
        for a in g.nodes() {
            for b in g.nodes() {
                assert!(e0star(a, b));
            }
        }
    }

    #[test]
    fn injected_edge_is_flagged() {
        let mut g = build(3, 4).unwrap();
        let (a, b) = (BinSeq::zeros(), seq("(01)"));
        assert!(!e0star(&a, &b));
        g.link_unchecked(&a, &b);
        let report = TheoremReport::check(&g);
        assert!(!report.is_clean());
        assert!(report
            .soundness_violations
            .contains(&[a.clone(), b.clone()]));
        // everything connected to (0) is now wrongly joined to (01)
        assert_eq!(report.soundness_violations.len(), 16);
        assert!(report.completeness_violations.is_empty());
        assert!(g.connected(&a, &b).unwrap());
        assert!(g.shortest_chain(&a, &b).unwrap().is_none());
    }

    #[test]
    fn cap_is_enforced() {
        assert_eq!(
            check_theorem(8),
            Err(Error::CapExceeded {
                n: 8,
                cap: DEFAULT_MAX_N
            })
        );
        assert!(check_theorem_with_cap(3, 2).is_err());
    }

    #[test]
    fn report_json_keys() {
        let report = check_theorem(2).unwrap();
        let v: serde_json::Value = serde_json::to_value(&report).unwrap();
        let mut keys: Vec<_> = v.as_object().unwrap().keys().cloned().collect();
        keys.sort();
        assert_eq!(
            keys,
            [
                "K",
                "N",
                "completeness_violations",
                "edges",
                "nodes",
                "pairs_checked",
                "soundness_violations"
            ]
        );
        assert_eq!(v["N"], 2);
        assert_eq!(v["K"], 3);
    }
}
