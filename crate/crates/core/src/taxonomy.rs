//! The IS-A concept DAG: loading, validation, and structural queries.
//!
//! A taxonomy is immutable once loaded. Ancestor sets and depths are
//! precomputed so concurrent readers never observe partial state.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::io::BufRead;

use crate::error::{Error, Result};

/// Name of the synthetic root inserted by [`LoadOptions::virtual_root`].
pub const VIRTUAL_ROOT_ID: &str = "__TOP__";

/// Opaque identifier of a concept node, unique within one taxonomy.
///
/// Ordered lexicographically, which is the reporting order used by every
/// set-valued query.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ConceptId(String);

impl ConceptId {
    pub fn new(id: impl Into<String>) -> Result<Self> {
        let id = id.into();
        if id.is_empty() {
            return Err(Error::InvalidConceptId {
                id,
                reason: "empty".into(),
            });
        }
        if id.contains(['\t', ',', '\n']) {
            return Err(Error::InvalidConceptId {
                id,
                reason: "contains tab, comma, or newline".into(),
            });
        }
        Ok(ConceptId(id))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for ConceptId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl AsRef<str> for ConceptId {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

/// One node of the DAG as seen through the public API.
#[derive(Clone, Debug)]
pub struct Concept {
    pub id: ConceptId,
    pub parents: BTreeSet<ConceptId>,
    pub words: BTreeSet<String>,
}

#[derive(Clone, Debug, Default)]
pub struct LoadOptions {
    /// Insert a synthetic `__TOP__` node above all roots.
    pub virtual_root: bool,
    /// Concept standing in for words missing from the sense index.
    pub fallback: Option<String>,
}

#[derive(Debug)]
struct Node {
    id: ConceptId,
    parents: Vec<u32>,
    words: BTreeSet<String>,
    /// Reflexive-transitive ancestor set, as node indices.
    ancestors: BTreeSet<u32>,
    depth: u32,
}

/// Immutable IS-A DAG with a word -> senses index.
#[derive(Debug)]
pub struct Taxonomy {
    nodes: Vec<Node>,
    index: HashMap<String, u32>,
    sense_index: HashMap<String, BTreeSet<u32>>,
    roots: Vec<u32>,
    virtual_root: Option<u32>,
    fallback: Option<u32>,
    max_depth: u32,
}

impl Taxonomy {
    /// Parses the tab-separated taxonomy format from a reader.
    pub fn load(reader: impl BufRead, options: &LoadOptions) -> Result<Taxonomy> {
        let mut text = String::new();
        let mut reader = reader;
        reader
            .read_to_string(&mut text)
            .map_err(|e| Error::Malformed {
                line: 0,
                reason: e.to_string(),
            })?;
        Taxonomy::from_str(&text, options)
    }

    /// Parses the tab-separated taxonomy format.
    ///
    /// Each record is `concept_id<TAB>parent_ids<TAB>words` with
    /// comma-separated lists; `#` lines are comments and blank lines are
    /// skipped. Fields are taken verbatim, without whitespace trimming.
    pub fn from_str(text: &str, options: &LoadOptions) -> Result<Taxonomy> {
        let mut nodes: Vec<Node> = Vec::new();
        let mut index: HashMap<String, u32> = HashMap::new();
        // raw parent names per node, resolved after all ids are known
        let mut parent_names: Vec<(usize, Vec<String>)> = Vec::new();

        for (lineno, line) in text.lines().enumerate() {
            let lineno = lineno + 1;
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split('\t').collect();
            if fields.len() != 3 {
                return Err(Error::Malformed {
                    line: lineno,
                    reason: format!("expected 3 tab-separated fields, got {}", fields.len()),
                });
            }
            let id = ConceptId::new(fields[0]).map_err(|e| match e {
                Error::InvalidConceptId { id, reason } => Error::Malformed {
                    line: lineno,
                    reason: format!("bad concept id {id:?}: {reason}"),
                },
                other => other,
            })?;
            if index.contains_key(id.as_str()) {
                return Err(Error::DuplicateConcept {
                    line: lineno,
                    id: id.as_str().to_string(),
                });
            }
            let parents: Vec<String> = split_list(fields[1]);
            let words: BTreeSet<String> = split_list(fields[2]).into_iter().collect();
            let idx = nodes.len() as u32;
            index.insert(id.as_str().to_string(), idx);
            parent_names.push((lineno, parents));
            nodes.push(Node {
                id,
                parents: Vec::new(),
                words,
                ancestors: BTreeSet::new(),
                depth: 0,
            });
        }

        for (i, (lineno, names)) in parent_names.iter().enumerate() {
            let mut resolved = Vec::with_capacity(names.len());
            for name in names {
                let &p = index.get(name.as_str()).ok_or_else(|| Error::DanglingParent {
                    line: *lineno,
                    child: nodes[i].id.as_str().to_string(),
                    parent: name.clone(),
                })?;
                if p as usize == i {
                    return Err(Error::Cycle {
                        child: nodes[i].id.as_str().to_string(),
                        parent: name.clone(),
                    });
                }
                if !resolved.contains(&p) {
                    resolved.push(p);
                }
            }
            nodes[i].parents = resolved;
        }

        if options.virtual_root {
            let top_idx = nodes.len() as u32;
            let mut top_words = BTreeSet::new();
            top_words.clear();
            if index.contains_key(VIRTUAL_ROOT_ID) {
                return Err(Error::DuplicateConcept {
                    line: 0,
                    id: VIRTUAL_ROOT_ID.to_string(),
                });
            }
            for node in nodes.iter_mut() {
                if node.parents.is_empty() {
                    node.parents.push(top_idx);
                }
            }
            index.insert(VIRTUAL_ROOT_ID.to_string(), top_idx);
            nodes.push(Node {
                id: ConceptId::new(VIRTUAL_ROOT_ID).expect("static id is valid"),
                parents: Vec::new(),
                words: top_words,
                ancestors: BTreeSet::new(),
                depth: 0,
            });
        }

        let order = topological_order(&nodes)?;

        // Reflexive-transitive ancestors, computed parents-first.
        for &i in &order {
            let mut anc: BTreeSet<u32> = BTreeSet::new();
            anc.insert(i);
            for p in nodes[i as usize].parents.clone() {
                anc.extend(nodes[p as usize].ancestors.iter().copied());
            }
            nodes[i as usize].ancestors = anc;
        }

        let roots: Vec<u32> = (0..nodes.len() as u32)
            .filter(|&i| nodes[i as usize].parents.is_empty())
            .collect();

        // Min-edge depth from any root, by BFS over child edges.
        let mut children: Vec<Vec<u32>> = vec![Vec::new(); nodes.len()];
        for (i, node) in nodes.iter().enumerate() {
            for &p in &node.parents {
                children[p as usize].push(i as u32);
            }
        }
        let mut depth = vec![u32::MAX; nodes.len()];
        let mut queue: VecDeque<u32> = VecDeque::new();
        for &r in &roots {
            depth[r as usize] = 0;
            queue.push_back(r);
        }
        while let Some(i) = queue.pop_front() {
            for &c in &children[i as usize] {
                if depth[c as usize] == u32::MAX {
                    depth[c as usize] = depth[i as usize] + 1;
                    queue.push_back(c);
                }
            }
        }
        let mut max_depth = 0;
        for (i, node) in nodes.iter_mut().enumerate() {
            node.depth = depth[i];
            max_depth = max_depth.max(depth[i]);
        }

        let mut sense_index: HashMap<String, BTreeSet<u32>> = HashMap::new();
        for (i, node) in nodes.iter().enumerate() {
            for w in &node.words {
                sense_index.entry(w.clone()).or_default().insert(i as u32);
            }
        }

        let fallback = match &options.fallback {
            Some(f) => Some(
                *index
                    .get(f.as_str())
                    .ok_or_else(|| Error::UnknownFallback(f.clone()))?,
            ),
            None => None,
        };

        let virtual_root = options
            .virtual_root
            .then(|| *index.get(VIRTUAL_ROOT_ID).expect("inserted above"));

        Ok(Taxonomy {
            nodes,
            index,
            sense_index,
            roots,
            virtual_root,
            fallback,
            max_depth,
        })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn contains(&self, id: &str) -> bool {
        self.index.contains_key(id)
    }

    pub fn concept_ids(&self) -> impl Iterator<Item = &ConceptId> {
        self.nodes.iter().map(|n| &n.id)
    }

    pub fn concept(&self, id: &str) -> Result<Concept> {
        let i = self.resolve(id)?;
        let node = &self.nodes[i as usize];
        Ok(Concept {
            id: node.id.clone(),
            parents: node
                .parents
                .iter()
                .map(|&p| self.nodes[p as usize].id.clone())
                .collect(),
            words: node.words.clone(),
        })
    }

    pub fn virtual_root(&self) -> Option<&ConceptId> {
        self.virtual_root.map(|i| &self.nodes[i as usize].id)
    }

    pub fn fallback_concept(&self) -> Option<&ConceptId> {
        self.fallback.map(|i| &self.nodes[i as usize].id)
    }

    /// Parentless concepts, including the virtual root when present.
    pub fn roots(&self) -> BTreeSet<ConceptId> {
        self.roots
            .iter()
            .map(|&i| self.nodes[i as usize].id.clone())
            .collect()
    }

    /// s(w): senses of `word`, or the fallback concept for unknown words.
    pub fn senses(&self, word: &str) -> BTreeSet<ConceptId> {
        self.sense_idx(word)
            .into_iter()
            .map(|i| self.nodes[i as usize].id.clone())
            .collect()
    }

    /// Reflexive-transitive ancestors of `id`, lexicographically ordered.
    pub fn subsumers(&self, id: &str) -> Result<BTreeSet<ConceptId>> {
        let i = self.resolve(id)?;
        Ok(self.nodes[i as usize]
            .ancestors
            .iter()
            .map(|&a| self.nodes[a as usize].id.clone())
            .collect())
    }

    /// S(c1, c2): concepts subsuming both arguments.
    pub fn common_subsumers(&self, c1: &str, c2: &str) -> Result<BTreeSet<ConceptId>> {
        let a = self.resolve(c1)?;
        let b = self.resolve(c2)?;
        Ok(self
            .common_subsumers_idx(a, b)
            .into_iter()
            .map(|i| self.nodes[i as usize].id.clone())
            .collect())
    }

    /// Minimum IS-A edges on an ascend-then-descend path between the two
    /// concepts, or `None` when they share no ancestor.
    pub fn shortest_path_edges(&self, c1: &str, c2: &str) -> Result<Option<u32>> {
        let a = self.resolve(c1)?;
        let b = self.resolve(c2)?;
        Ok(self.shortest_path_idx(a, b))
    }

    /// Minimum edge count from any root down to `id`; roots are at 0.
    pub fn depth_edges(&self, id: &str) -> Result<u32> {
        let i = self.resolve(id)?;
        Ok(self.nodes[i as usize].depth)
    }

    /// Maximum of `depth_edges` over all concepts.
    pub fn max_depth(&self) -> u32 {
        self.max_depth
    }

    // ---- index-based internals shared with the other modules ----

    pub(crate) fn resolve(&self, id: &str) -> Result<u32> {
        self.index
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownConcept(id.to_string()))
    }

    pub(crate) fn id_of(&self, i: u32) -> &ConceptId {
        &self.nodes[i as usize].id
    }

    pub(crate) fn ancestors_idx(&self, i: u32) -> &BTreeSet<u32> {
        &self.nodes[i as usize].ancestors
    }

    pub(crate) fn parents_idx(&self, i: u32) -> &[u32] {
        &self.nodes[i as usize].parents
    }

    pub(crate) fn depth_idx(&self, i: u32) -> u32 {
        self.nodes[i as usize].depth
    }

    pub(crate) fn virtual_root_idx(&self) -> Option<u32> {
        self.virtual_root
    }

    /// Senses of a word as node indices, applying the fallback rule.
    pub(crate) fn sense_idx(&self, word: &str) -> Vec<u32> {
        match self.sense_index.get(word) {
            Some(s) if !s.is_empty() => s.iter().copied().collect(),
            _ => match self.fallback {
                Some(f) => vec![f],
                None => Vec::new(),
            },
        }
    }

    /// True if the word itself is indexed (fallback does not count).
    pub fn word_in_vocabulary(&self, word: &str) -> bool {
        self.sense_index
            .get(word)
            .is_some_and(|s| !s.is_empty())
    }

    pub(crate) fn common_subsumers_idx(&self, a: u32, b: u32) -> Vec<u32> {
        let (small, large) = {
            let sa = self.ancestors_idx(a);
            let sb = self.ancestors_idx(b);
            if sa.len() <= sb.len() {
                (sa, sb)
            } else {
                (sb, sa)
            }
        };
        small
            .iter()
            .copied()
            .filter(|i| large.contains(i))
            .collect()
    }

    /// Map of ancestor -> minimum ascent edges, by BFS over parent links.
    pub(crate) fn ascent_distances(&self, from: u32) -> BTreeMap<u32, u32> {
        use std::collections::btree_map::Entry;
        let mut dist = BTreeMap::new();
        dist.insert(from, 0u32);
        let mut queue = VecDeque::from([from]);
        while let Some(i) = queue.pop_front() {
            let d = dist[&i];
            for &p in self.parents_idx(i) {
                if let Entry::Vacant(e) = dist.entry(p) {
                    e.insert(d + 1);
                    queue.push_back(p);
                }
            }
        }
        dist
    }

    pub(crate) fn shortest_path_idx(&self, a: u32, b: u32) -> Option<u32> {
        let da = self.ascent_distances(a);
        let db = self.ascent_distances(b);
        da.iter()
            .filter_map(|(i, &ua)| db.get(i).map(|&ub| ua + ub))
            .min()
    }

    /// Minimum ascent distance from `i` to any root.
    pub(crate) fn min_root_distance(&self, i: u32) -> u32 {
        let d = self.ascent_distances(i);
        self.roots
            .iter()
            .filter_map(|r| d.get(r).copied())
            .min()
            .expect("every node reaches some root in a DAG")
    }
}

fn split_list(field: &str) -> Vec<String> {
    if field.is_empty() {
        Vec::new()
    } else {
        field.split(',').map(str::to_string).collect()
    }
}

/// Kahn's algorithm; reports one edge inside a cycle on failure.
fn topological_order(nodes: &[Node]) -> Result<Vec<u32>> {
    let n = nodes.len();
    let mut outstanding: Vec<usize> = nodes.iter().map(|x| x.parents.len()).collect();
    let mut children: Vec<Vec<u32>> = vec![Vec::new(); n];
    for (i, node) in nodes.iter().enumerate() {
        for &p in &node.parents {
            children[p as usize].push(i as u32);
        }
    }
    let mut queue: VecDeque<u32> = (0..n as u32)
        .filter(|&i| outstanding[i as usize] == 0)
        .collect();
    let mut order = Vec::with_capacity(n);
    while let Some(i) = queue.pop_front() {
        order.push(i);
        for &c in &children[i as usize] {
            outstanding[c as usize] -= 1;
            if outstanding[c as usize] == 0 {
                queue.push_back(c);
            }
        }
    }
    if order.len() < n {
        // every leftover node sits on or below a cycle; walk parent links
        // inside the leftover set until a node repeats
        let stuck: BTreeSet<u32> = (0..n as u32)
            .filter(|&i| outstanding[i as usize] > 0)
            .collect();
        let start = *stuck.iter().next().expect("nonempty by construction");
        let mut seen = BTreeSet::new();
        let mut cur = start;
        loop {
            seen.insert(cur);
            let next = nodes[cur as usize]
                .parents
                .iter()
                .copied()
                .find(|p| stuck.contains(p))
                .expect("stuck node has a stuck parent");
            if seen.contains(&next) {
                return Err(Error::Cycle {
                    child: nodes[cur as usize].id.as_str().to_string(),
                    parent: nodes[next as usize].id.as_str().to_string(),
                });
            }
            cur = next;
        }
    }
    Ok(order)
}
