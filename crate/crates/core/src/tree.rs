//! Edge-labeled trees.
//!
//! Node identifiers are arbitrary `u64`s supplied by the caller. Internally
//! nodes are remapped to dense indices in ascending identifier order, so
//! index `i` always refers to the `i`-th smallest identifier. The tree is
//! immutable once built; a rooted parent/depth table (rooted at index 0) is
//! computed up front and answers path queries in time proportional to the
//! path length.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt::Write as _;

use thiserror::Error;

use crate::word::{Letter, Word};

/// External node identifier.
pub type NodeId = u64;

/// An edge as `(u, v, letter)` in external identifiers.
pub type LabeledEdge = (NodeId, NodeId, Letter);

/// Dense internal node index, `0..node_count()`.
pub type NodeIndex = usize;

const NO_PARENT: NodeIndex = usize::MAX;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TreeError {
    #[error("a tree needs at least one node")]
    EmptyTree,
    #[error("self-loop at node {node} (label {letter})")]
    SelfLoop { node: NodeId, letter: Letter },
    #[error("more than one edge between nodes {u} and {v}")]
    DuplicateEdge { u: NodeId, v: NodeId },
    #[error("edge {u} -- {v} (label {letter}) closes a cycle")]
    CycleDetected {
        u: NodeId,
        v: NodeId,
        letter: Letter,
    },
    #[error(
        "graph has {components} components; node {detached} is not connected to node {anchor}"
    )]
    Disconnected {
        components: usize,
        anchor: NodeId,
        detached: NodeId,
    },
    #[error("unknown node {0}")]
    UnknownNode(NodeId),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// An undirected, connected, acyclic graph with letter-labeled edges.
#[derive(Debug, Clone)]
pub struct LabeledTree {
    ids: Vec<NodeId>,
    index: HashMap<NodeId, NodeIndex>,
    adj: Vec<Vec<(NodeIndex, Letter)>>,
    /// Edges in input order and orientation.
    edges: Vec<(NodeIndex, NodeIndex, Letter)>,
    alphabet: BTreeSet<Letter>,
    parent: Vec<NodeIndex>,
    parent_label: Vec<Option<Letter>>,
    depth: Vec<usize>,
}

/// The unique simple path between two nodes together with its label word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreePath {
    pub nodes: Vec<NodeId>,
    pub labels: Word,
}

/// Validates `edges` and builds the tree; the node set is exactly the nodes
/// mentioned by the edges.
pub fn build_tree(edges: &[(NodeId, NodeId, Letter)]) -> Result<LabeledTree, TreeError> {
    LabeledTree::new(std::iter::empty(), edges)
}

impl LabeledTree {
    /// Builds a tree from explicitly declared nodes plus an edge list. The
    /// declared nodes matter only for the edgeless single-node tree, or to
    /// surface a disconnected declaration as an error.
    pub fn new(
        nodes: impl IntoIterator<Item = NodeId>,
        edges: &[(NodeId, NodeId, Letter)],
    ) -> Result<Self, TreeError> {
        let mut id_set: BTreeSet<NodeId> = nodes.into_iter().collect();
        let mut seen_pairs = HashSet::new();
        for &(u, v, letter) in edges {
            if u == v {
                return Err(TreeError::SelfLoop { node: u, letter });
            }
            if !seen_pairs.insert((u.min(v), u.max(v))) {
                return Err(TreeError::DuplicateEdge { u, v });
            }
            id_set.insert(u);
            id_set.insert(v);
        }
        if id_set.is_empty() {
            return Err(TreeError::EmptyTree);
        }
        let ids: Vec<NodeId> = id_set.into_iter().collect();
        let index: HashMap<NodeId, NodeIndex> =
            ids.iter().enumerate().map(|(i, &id)| (id, i)).collect();

        let mut uf = UnionFind::new(ids.len());
        let mut adj = vec![Vec::new(); ids.len()];
        let mut dense_edges = Vec::with_capacity(edges.len());
        let mut alphabet = BTreeSet::new();
        for &(u, v, letter) in edges {
            let (a, b) = (index[&u], index[&v]);
            if !uf.union(a, b) {
                return Err(TreeError::CycleDetected { u, v, letter });
            }
            adj[a].push((b, letter));
            adj[b].push((a, letter));
            dense_edges.push((a, b, letter));
            alphabet.insert(letter);
        }
        if uf.components > 1 {
            let root0 = uf.find(0);
            let detached = (0..ids.len()).find(|&i| uf.find(i) != root0).unwrap();
            return Err(TreeError::Disconnected {
                components: uf.components,
                anchor: ids[0],
                detached: ids[detached],
            });
        }
        for list in &mut adj {
            list.sort_unstable();
        }

        let n = ids.len();
        let mut parent = vec![NO_PARENT; n];
        let mut parent_label = vec![None; n];
        let mut depth = vec![0; n];
        let mut visited = vec![false; n];
        let mut queue = VecDeque::from([0]);
        visited[0] = true;
        while let Some(x) = queue.pop_front() {
            for &(y, l) in &adj[x] {
                if !visited[y] {
                    visited[y] = true;
                    parent[y] = x;
                    parent_label[y] = Some(l);
                    depth[y] = depth[x] + 1;
                    queue.push_back(y);
                }
            }
        }

        Ok(LabeledTree {
            ids,
            index,
            adj,
            edges: dense_edges,
            alphabet,
            parent,
            parent_label,
            depth,
        })
    }

    pub fn single_node(id: NodeId) -> Self {
        Self::new([id], &[]).expect("a single node is a valid tree")
    }

    /// Threadlike tree `0 - 1 - ... - |w|` spelling `w`.
    pub fn from_word(w: &Word) -> Self {
        if w.is_empty() {
            return Self::single_node(0);
        }
        let edges: Vec<_> = w
            .letters()
            .iter()
            .enumerate()
            .map(|(i, &l)| (i as NodeId, i as NodeId + 1, l))
            .collect();
        build_tree(&edges).expect("a path is a tree")
    }

    /// Extends the alphabet with letters that need not occur on any edge.
    pub fn with_alphabet(mut self, letters: impl IntoIterator<Item = Letter>) -> Self {
        self.alphabet.extend(letters);
        self
    }

    /// Number of edges.
    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn node_count(&self) -> usize {
        self.ids.len()
    }

    pub fn alphabet(&self) -> &BTreeSet<Letter> {
        &self.alphabet
    }

    /// Letters that actually label an edge.
    pub fn used_letters(&self) -> BTreeSet<Letter> {
        self.edges.iter().map(|&(_, _, l)| l).collect()
    }

    /// Node identifiers in ascending order (the dense index order).
    pub fn node_ids(&self) -> &[NodeId] {
        &self.ids
    }

    pub fn id(&self, x: NodeIndex) -> NodeId {
        self.ids[x]
    }

    pub fn index_of(&self, id: NodeId) -> Result<NodeIndex, TreeError> {
        self.index
            .get(&id)
            .copied()
            .ok_or(TreeError::UnknownNode(id))
    }

    pub fn contains_node(&self, id: NodeId) -> bool {
        self.index.contains_key(&id)
    }

    /// Neighbors of a dense node, sorted by neighbor index.
    pub fn neighbors(&self, x: NodeIndex) -> &[(NodeIndex, Letter)] {
        &self.adj[x]
    }

    pub fn degree(&self, x: NodeIndex) -> usize {
        self.adj[x].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// True for path graphs, which are equivalent to a word and its reverse.
    pub fn is_threadlike(&self) -> bool {
        self.max_degree() <= 2
    }

    /// Edges in input order with external identifiers.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId, Letter)> + '_ {
        self.edges
            .iter()
            .map(|&(a, b, l)| (self.ids[a], self.ids[b], l))
    }

    pub fn dense_edges(&self) -> &[(NodeIndex, NodeIndex, Letter)] {
        &self.edges
    }

    /// Dense indices of the nodes of degree exactly one.
    pub fn leaf_indices(&self) -> Vec<NodeIndex> {
        (0..self.node_count())
            .filter(|&x| self.degree(x) == 1)
            .collect()
    }

    /// All nodes of degree exactly one, ascending.
    pub fn leaves(&self) -> Vec<NodeId> {
        self.leaf_indices()
            .into_iter()
            .map(|x| self.ids[x])
            .collect()
    }

    pub fn path(&self, x: NodeId, y: NodeId) -> Result<TreePath, TreeError> {
        let (a, b) = (self.index_of(x)?, self.index_of(y)?);
        let (nodes, labels) = self.path_dense(a, b);
        Ok(TreePath {
            nodes: nodes.into_iter().map(|i| self.ids[i]).collect(),
            labels: Word::from_letters(labels),
        })
    }

    /// Nodes and labels of the path from `x` to `y`, by walking both ends up
    /// to their lowest common ancestor.
    pub fn path_dense(&self, x: NodeIndex, y: NodeIndex) -> (Vec<NodeIndex>, Vec<Letter>) {
        let (mut a, mut b) = (x, y);
        let mut head_nodes = vec![a];
        let mut head_labels = Vec::new();
        let mut tail_nodes = vec![b];
        let mut tail_labels = Vec::new();
        while self.depth[a] > self.depth[b] {
            head_labels.push(self.parent_label[a].unwrap());
            a = self.parent[a];
            head_nodes.push(a);
        }
        while self.depth[b] > self.depth[a] {
            tail_labels.push(self.parent_label[b].unwrap());
            b = self.parent[b];
            tail_nodes.push(b);
        }
        while a != b {
            head_labels.push(self.parent_label[a].unwrap());
            a = self.parent[a];
            head_nodes.push(a);
            tail_labels.push(self.parent_label[b].unwrap());
            b = self.parent[b];
            tail_nodes.push(b);
        }
        // a == b is the common ancestor, present at the end of both lists
        tail_nodes.pop();
        head_nodes.extend(tail_nodes.into_iter().rev());
        head_labels.extend(tail_labels.into_iter().rev());
        (head_nodes, head_labels)
    }

    /// Label word of the path from `x` to `y`.
    pub fn path_labels(&self, x: NodeIndex, y: NodeIndex) -> Vec<Letter> {
        self.path_dense(x, y).1
    }

    pub fn distance(&self, x: NodeIndex, y: NodeIndex) -> usize {
        let (mut a, mut b) = (x, y);
        while a != b {
            if self.depth[a] >= self.depth[b] {
                a = self.parent[a];
            } else {
                b = self.parent[b];
            }
        }
        self.depth[x] + self.depth[y] - 2 * self.depth[a]
    }

    /// Length of the longest path, in edges.
    pub fn diameter(&self) -> usize {
        let (far, _) = self.farthest_from(0);
        self.farthest_from(far).1
    }

    fn farthest_from(&self, start: NodeIndex) -> (NodeIndex, usize) {
        let mut dist = vec![usize::MAX; self.node_count()];
        dist[start] = 0;
        let mut queue = VecDeque::from([start]);
        let mut best = (start, 0);
        while let Some(x) = queue.pop_front() {
            if dist[x] > best.1 {
                best = (x, dist[x]);
            }
            for &(y, _) in &self.adj[x] {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        best
    }

    /// Connected components of the subgraph made of the `letter`-labeled
    /// edges and their endpoints, ordered by smallest node identifier.
    pub fn restrict(&self, letter: Letter) -> Vec<LabeledTree> {
        let mut uf = UnionFind::new(self.node_count());
        let mut touched = vec![false; self.node_count()];
        for &(a, b, l) in &self.edges {
            if l == letter {
                uf.union(a, b);
                touched[a] = true;
                touched[b] = true;
            }
        }
        let mut groups: Vec<(NodeIndex, Vec<LabeledEdge>)> = Vec::new();
        let mut slot: HashMap<NodeIndex, usize> = HashMap::new();
        // visit roots in ascending node order so groups come out sorted
        for x in (0..self.node_count()).filter(|&x| touched[x]) {
            let r = uf.find(x);
            slot.entry(r).or_insert_with(|| {
                groups.push((r, Vec::new()));
                groups.len() - 1
            });
        }
        for &(a, b, l) in &self.edges {
            if l == letter {
                let g = slot[&uf.find(a)];
                groups[g].1.push((self.ids[a], self.ids[b], l));
            }
        }
        groups
            .into_iter()
            .map(|(_, edges)| build_tree(&edges).expect("subgraph of a tree component is a tree"))
            .collect()
    }

    /// Subtree spanned by a set of dense edges, or `None` if they do not form
    /// a connected subgraph.
    pub fn edge_subtree(&self, edge_set: &BTreeSet<(NodeIndex, NodeIndex)>) -> Option<LabeledTree> {
        let edges: Vec<_> = self
            .edges
            .iter()
            .filter(|&&(a, b, _)| edge_set.contains(&(a.min(b), a.max(b))))
            .map(|&(a, b, l)| (self.ids[a], self.ids[b], l))
            .collect();
        build_tree(&edges).ok()
    }

    /// Serializes to the edge-list text format.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        let used = self.used_letters();
        if self.alphabet != used {
            let letters: Vec<String> = self.alphabet.iter().map(|l| l.to_string()).collect();
            writeln!(out, "@alphabet {}", letters.join(" ")).unwrap();
        }
        if self.edges.is_empty() {
            writeln!(out, "{}", self.ids[0]).unwrap();
        }
        for (u, v, l) in self.edges() {
            writeln!(out, "{u} {v} {l}").unwrap();
        }
        out
    }

    /// Undirected Graphviz rendering with the letter as edge label.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph T {\n");
        if self.edges.is_empty() {
            writeln!(out, "  {};", self.ids[0]).unwrap();
        }
        for (u, v, l) in self.edges() {
            let label = l.to_string().replace('\\', "\\\\").replace('"', "\\\"");
            writeln!(out, "  {u} -- {v} [label=\"{label}\"];").unwrap();
        }
        out.push_str("}\n");
        out
    }
}

/// Parses the edge-list format: one `<node> <node> <letter>` edge per line,
/// a lone `<node>` declares a node, `@alphabet <letter>...` extends the
/// alphabet, and a token starting with `#` begins a comment.
pub fn parse_edge_list(text: &str) -> Result<LabeledTree, TreeError> {
    let mut nodes = Vec::new();
    let mut edges = Vec::new();
    let mut extra_letters = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let tokens: Vec<&str> = raw
            .split_whitespace()
            .take_while(|t| !t.starts_with('#'))
            .collect();
        let parse_err = |message: String| TreeError::Parse { line, message };
        let node = |t: &str| {
            t.parse::<NodeId>()
                .map_err(|_| parse_err(format!("invalid node identifier {t:?}")))
        };
        let letter = |t: &str| {
            let mut chars = t.chars();
            match (chars.next(), chars.next()) {
                (Some(c), None) => Ok(Letter(c)),
                _ => Err(parse_err(format!("label {t:?} is not a single character"))),
            }
        };
        match tokens.as_slice() {
            [] => {}
            ["@alphabet", rest @ ..] => {
                for t in rest {
                    extra_letters.push(letter(t)?);
                }
            }
            [x] => nodes.push(node(x)?),
            [u, v, l] => edges.push((node(u)?, node(v)?, letter(l)?)),
            _ => {
                return Err(parse_err(format!(
                    "expected `<node> <node> <letter>`, got {} tokens",
                    tokens.len()
                )))
            }
        }
    }
    Ok(LabeledTree::new(nodes, &edges)?.with_alphabet(extra_letters))
}

struct UnionFind {
    parent: Vec<usize>,
    components: usize,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            components: n,
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false if `a` and `b` were already joined.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        self.components -= 1;
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(c: char) -> Letter {
        Letter(c)
    }

    pub(crate) fn sample_tree() -> LabeledTree {
        build_tree(&[
            (0, 1, l('b')),
            (1, 2, l('a')),
            (2, 3, l('a')),
            (3, 4, l('a')),
            (4, 5, l('b')),
            (3, 6, l('b')),
        ])
        .unwrap()
    }

    /// Path search by exhaustive DFS, independent of the parent table.
    fn dfs_path(t: &LabeledTree, x: NodeIndex, y: NodeIndex) -> Vec<NodeIndex> {
        fn go(
            t: &LabeledTree,
            cur: NodeIndex,
            target: NodeIndex,
            stack: &mut Vec<NodeIndex>,
        ) -> bool {
            if cur == target {
                return true;
            }
            for &(nb, _) in t.neighbors(cur) {
                if stack.contains(&nb) {
                    continue;
                }
                stack.push(nb);
                if go(t, nb, target, stack) {
                    return true;
                }
                stack.pop();
            }
            false
        }
        let mut stack = vec![x];
        assert!(go(t, x, y, &mut stack));
        stack
    }

    #[test]
    fn builds_sample_tree() {
        let t = sample_tree();
        assert_eq!(t.size(), 6);
        assert_eq!(t.node_count(), 7);
        assert_eq!(t.alphabet().len(), 2);
    }

    #[test]
    fn single_edge_and_single_node() {
        let t = build_tree(&[(0, 1, l('a'))]).unwrap();
        assert_eq!(t.size(), 1);
        let s = LabeledTree::single_node(42);
        assert_eq!(s.size(), 0);
        assert_eq!(s.path(42, 42).unwrap().labels, Word::empty());
        assert!(s.leaves().is_empty());
    }

    #[test]
    fn rejects_bad_graphs() {
        assert_eq!(
            build_tree(&[(0, 1, l('a')), (1, 0, l('b'))]).unwrap_err(),
            TreeError::DuplicateEdge { u: 1, v: 0 }
        );
        assert_eq!(
            build_tree(&[(3, 3, l('a'))]).unwrap_err(),
            TreeError::SelfLoop {
                node: 3,
                letter: l('a')
            }
        );
        assert_eq!(
            build_tree(&[(0, 1, l('a')), (1, 2, l('a')), (2, 0, l('b'))]).unwrap_err(),
            TreeError::CycleDetected {
                u: 2,
                v: 0,
                letter: l('b')
            }
        );
        assert_eq!(
            build_tree(&[(0, 1, l('a')), (2, 3, l('a'))]).unwrap_err(),
            TreeError::Disconnected {
                components: 2,
                anchor: 0,
                detached: 2
            }
        );
        assert_eq!(build_tree(&[]).unwrap_err(), TreeError::EmptyTree);
    }

    #[test]
    fn paths_on_sample_tree() {
        let t = sample_tree();
        assert_eq!(t.path(0, 5).unwrap().labels, Word::from("baaab"));
        assert_eq!(t.path(6, 0).unwrap().labels, Word::from("baab"));
        assert_eq!(t.path(6, 1).unwrap().labels, Word::from("baa"));
        assert_eq!(t.path(6, 1).unwrap().nodes, vec![6, 3, 2, 1]);
        assert_eq!(t.path(4, 4).unwrap().labels, Word::empty());
        assert_eq!(t.path(4, 4).unwrap().nodes, vec![4]);
        assert_eq!(t.path(0, 9).unwrap_err(), TreeError::UnknownNode(9));
    }

    #[test]
    fn restrictions_of_sample_tree() {
        let t = sample_tree();
        let a = t.restrict(l('a'));
        assert_eq!(a.len(), 1);
        assert_eq!(a[0].size(), 3);
        assert!(a[0].is_threadlike());
        let b = t.restrict(l('b'));
        assert_eq!(b.len(), 3);
        assert!(b.iter().all(|c| c.size() == 1));
        assert_eq!(b[0].node_ids(), &[0, 1]);
        assert_eq!(b[1].node_ids(), &[3, 6]);
        assert_eq!(b[2].node_ids(), &[4, 5]);

        let single = build_tree(&[(0, 1, l('a'))]).unwrap();
        assert!(single.restrict(l('b')).is_empty());
    }

    #[test]
    fn leaves_examples() {
        assert_eq!(sample_tree().leaves(), vec![0, 5, 6]);
        assert_eq!(build_tree(&[(0, 1, l('a'))]).unwrap().leaves(), vec![0, 1]);
        let star = build_tree(&[(0, 1, l('a')), (0, 2, l('b')), (0, 3, l('a'))]).unwrap();
        assert_eq!(star.leaves(), vec![1, 2, 3]);
    }

    #[test]
    fn parent_walk_agrees_with_exhaustive_dfs() {
        let t = sample_tree();
        for x in 0..t.node_count() {
            for y in 0..t.node_count() {
                let (nodes, labels) = t.path_dense(x, y);
                assert_eq!(nodes, dfs_path(&t, x, y));
                let back = t.path_labels(y, x);
                assert_eq!(labels.iter().rev().copied().collect::<Vec<_>>(), back);
                assert_eq!(t.distance(x, y), labels.len());
            }
        }
        assert_eq!(t.diameter(), 5);
    }

    #[test]
    fn edge_list_round_trip() {
        let t = sample_tree();
        let text = t.to_edge_list();
        let back = parse_edge_list(&text).unwrap();
        assert_eq!(back.to_edge_list(), text);

        let ext = LabeledTree::single_node(7).with_alphabet([l('x'), l('y')]);
        let text = ext.to_edge_list();
        assert_eq!(text, "@alphabet x y\n7\n");
        let back = parse_edge_list(&text).unwrap();
        assert_eq!(back.size(), 0);
        assert_eq!(back.alphabet().len(), 2);
    }

    #[test]
    fn parses_comments_and_reports_bad_lines() {
        let t = parse_edge_list("# fig\n0 1 a  # first\n\n1 2 b\n").unwrap();
        assert_eq!(t.size(), 2);
        assert!(matches!(
            parse_edge_list("0 1 ab\n"),
            Err(TreeError::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_edge_list("0 1\n"),
            Err(TreeError::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_edge_list("0 x a\n"),
            Err(TreeError::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn dot_export() {
        let t = build_tree(&[(0, 1, l('a')), (1, 2, l('"'))]).unwrap();
        assert_eq!(
            t.to_dot(),
            "graph T {\n  0 -- 1 [label=\"a\"];\n  1 -- 2 [label=\"\\\"\"];\n}\n"
        );
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        /// Random labeled tree: node i attaches to a node in 0..i.
        fn arb_tree() -> impl Strategy<Value = LabeledTree> {
            proptest::collection::vec(
                (
                    any::<prop::sample::Index>(),
                    prop::sample::select(vec!['a', 'b', 'c']),
                ),
                0..25,
            )
            .prop_map(|spec| {
                let edges: Vec<_> = spec
                    .iter()
                    .enumerate()
                    .map(|(i, (idx, c))| {
                        (
                            (i + 1) as NodeId * 3,
                            idx.index(i + 1) as NodeId * 3,
                            Letter(*c),
                        )
                    })
                    .collect();
                LabeledTree::new([0], &edges).unwrap()
            })
        }

        proptest! {
            #[test]
            fn path_reversal_and_uniqueness(t in arb_tree()) {
                for x in 0..t.node_count() {
                    for y in 0..t.node_count() {
                        let (nodes, labels) = t.path_dense(x, y);
                        prop_assert_eq!(&nodes, &dfs_path(&t, x, y));
                        prop_assert_eq!(labels.len() + 1, nodes.len());
                        let mut back = t.path_labels(y, x);
                        back.reverse();
                        prop_assert_eq!(labels, back);
                    }
                }
            }

            #[test]
            fn restrictions_partition_letter_edges(t in arb_tree()) {
                for &letter in t.alphabet() {
                    let comps = t.restrict(letter);
                    let mut seen_nodes = HashSet::new();
                    let mut seen_edges = 0;
                    for c in &comps {
                        for &id in c.node_ids() {
                            prop_assert!(seen_nodes.insert(id), "components share node {}", id);
                        }
                        seen_edges += c.size();
                        prop_assert!(c.edges().all(|(_, _, l)| l == letter));
                    }
                    let expected = t.edges().filter(|&(_, _, l)| l == letter).count();
                    prop_assert_eq!(seen_edges, expected);
                }
            }

            #[test]
            fn edge_list_round_trips(t in arb_tree()) {
                let text = t.to_edge_list();
                let back = parse_edge_list(&text).unwrap();
                prop_assert_eq!(back.to_edge_list(), text);
            }
        }
    }
}
