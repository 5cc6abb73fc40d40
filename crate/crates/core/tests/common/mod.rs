//! Shared DAG generators and independent oracles for the integration
//! suites. The oracles deliberately use different algorithms from the
//! library (naive DFS closures, a layered breadth-first search) so the
//! two sides can disagree when one is wrong.

// each integration target compiles this module separately and uses a
// different subset of it
#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet, VecDeque};

use rand::rngs::StdRng;
use rand::Rng;

use taxsim_core::taxonomy::{LoadOptions, Taxonomy};

/// Parent lists per node; node indices are a topological order (parents
/// precede children), which every DAG admits.
#[derive(Clone, Debug)]
pub struct DagSpec {
    pub parents: Vec<Vec<usize>>,
    /// Word attached per node, `None` for wordless abstract nodes.
    pub words: Vec<Option<String>>,
}

impl DagSpec {
    pub fn n(&self) -> usize {
        self.parents.len()
    }

    pub fn node_id(i: usize) -> String {
        format!("N{i:02}")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (i, parents) in self.parents.iter().enumerate() {
            let plist: Vec<String> = parents.iter().map(|&p| Self::node_id(p)).collect();
            let words = self.words[i].clone().unwrap_or_default();
            out.push_str(&format!(
                "{}\t{}\t{}\n",
                Self::node_id(i),
                plist.join(","),
                words
            ));
        }
        out
    }

    pub fn build(&self, options: &LoadOptions) -> Taxonomy {
        Taxonomy::from_str(&self.to_text(), options).expect("generated DAG loads")
    }

    pub fn words(&self) -> Vec<String> {
        self.words.iter().flatten().cloned().collect()
    }
}

/// Every DAG on `n` labeled nodes whose edges respect the index order;
/// up to relabeling this covers every DAG shape of that size.
pub fn all_dags(n: usize) -> impl Iterator<Item = DagSpec> {
    let bits: usize = n * (n - 1) / 2;
    (0..(1u64 << bits)).map(move |mask| {
        let mut parents = Vec::with_capacity(n);
        let mut cursor = 0;
        for i in 0..n {
            let mut p = Vec::new();
            for j in 0..i {
                if mask >> (cursor + j) & 1 == 1 {
                    p.push(j);
                }
            }
            cursor += i;
            parents.push(p);
        }
        let words = (0..n).map(|i| Some(format!("w{i}"))).collect();
        DagSpec { parents, words }
    })
}

/// One random DAG with up to `max_parents` parents per node.
pub fn random_dag(rng: &mut StdRng, n: usize, max_parents: usize) -> DagSpec {
    let mut parents = Vec::with_capacity(n);
    parents.push(Vec::new());
    for i in 1..n {
        let k = rng.random_range(0..=max_parents.min(i));
        let mut chosen: BTreeSet<usize> = BTreeSet::new();
        while chosen.len() < k {
            chosen.insert(rng.random_range(0..i));
        }
        parents.push(chosen.into_iter().collect());
    }
    let words = (0..n)
        .map(|i| (rng.random_bool(0.7) || i >= n - 2).then(|| format!("w{i}")))
        .collect();
    DagSpec { parents, words }
}

/// Naive reflexive-transitive ancestor closure by DFS over parent lists.
pub fn oracle_ancestors(spec: &DagSpec, node: usize) -> HashSet<usize> {
    let mut seen = HashSet::new();
    let mut stack = vec![node];
    while let Some(i) = stack.pop() {
        if seen.insert(i) {
            stack.extend(spec.parents[i].iter().copied());
        }
    }
    seen
}

/// Shortest ascend-then-descend path length by breadth-first search over
/// (node, phase) states: phase 0 climbs parent edges, phase 1 descends
/// child edges, and the switch is free.
pub fn oracle_shortest_path(spec: &DagSpec, a: usize, b: usize) -> Option<u32> {
    let n = spec.n();
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, ps) in spec.parents.iter().enumerate() {
        for &p in ps {
            children[p].push(i);
        }
    }
    let mut dist = vec![[u32::MAX; 2]; n];
    let mut queue = VecDeque::new();
    dist[a][0] = 0;
    dist[a][1] = 0; // switching before moving is allowed
    queue.push_back((a, 0u8));
    queue.push_back((a, 1u8));
    while let Some((i, phase)) = queue.pop_front() {
        let d = dist[i][phase as usize];
        let next: &[usize] = if phase == 0 {
            &spec.parents[i]
        } else {
            &children[i]
        };
        for &j in next {
            for target_phase in [phase, 1] {
                if dist[j][target_phase as usize] > d + 1 {
                    dist[j][target_phase as usize] = d + 1;
                    queue.push_back((j, target_phase));
                }
            }
        }
    }
    let best = dist[b][0].min(dist[b][1]);
    (best != u32::MAX).then_some(best)
}
