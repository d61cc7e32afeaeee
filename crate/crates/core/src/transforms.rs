//! Structural reductions on trees with few blocks per factor, and the
//! analyzer for node triples whose pairwise paths are all palindromes.

use std::collections::{BTreeSet, HashSet};

use serde::Serialize;
use thiserror::Error;

use crate::language::{
    classify, contains_pattern, middle_letters, palindrome_set, tree_palindromes, Algorithm,
    BlockPattern, LanguageError, Shape,
};
use crate::tree::{build_tree, LabeledTree, NodeId, NodeIndex, TreeError};
use crate::word::{is_palindrome, primitive_root, Letter, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TransformError {
    #[error("tree has factors with {0} blocks, expected at most 4")]
    NotInT4(usize),
    #[error("tree has factors with {0} blocks, expected at most 3")]
    NotInT3(usize),
    #[error("expected at most two letters, found {0}")]
    NotBinary(usize),
    #[error("operation needs a tree with at least one edge")]
    EmptyTree,
    #[error("structural lemma violated: {0}")]
    LemmaViolation(String),
    #[error("splitting at node {node} on letter {letter} has fewer than two single-letter chains to leaves")]
    SplittingNotEliminable { node: NodeId, letter: Letter },
    #[error("path between {0} and {1} is not a palindrome")]
    NotPalindromicTriple(NodeId, NodeId),
    #[error("nodes {0}, {1}, {2} lie on a single path")]
    CollinearTriple(NodeId, NodeId, NodeId),
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Language(#[from] LanguageError),
}

type Result<T> = std::result::Result<T, TransformError>;

fn require_class(t: &LabeledTree, max: usize) -> Result<usize> {
    let k = classify(t);
    match (k > max, max) {
        (true, 3) => Err(TransformError::NotInT3(k)),
        (true, _) => Err(TransformError::NotInT4(k)),
        (false, _) => Ok(k),
    }
}

fn undirected(a: NodeIndex, b: NodeIndex) -> (NodeIndex, NodeIndex) {
    (a.min(b), a.max(b))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ReductionBranch {
    /// Edgeless input, returned as is.
    Trivial,
    /// No three-block palindrome: the longest single-letter path.
    LongestUnaryPath { letter: Letter },
    /// Union of all paths reading a palindrome in `outer+ inner+ outer+`.
    ThreeBlock { outer: Letter, inner: Letter },
}

/// Result of reducing a tree with at most four blocks per factor to a
/// binary tree with at most three. Palindrome counts include ε.
#[derive(Debug, Clone, Serialize)]
pub struct Reduction {
    #[serde(skip)]
    pub tree: LabeledTree,
    pub branch: ReductionBranch,
    pub alphabet_size: usize,
    pub size_t: usize,
    pub size_s: usize,
    pub palindromes_t: usize,
    pub palindromes_s: usize,
    pub classify_s: usize,
    pub letters_s: usize,
    /// `|Pal(T)| / |Σ|^2 - |T|`
    pub lower_bound: f64,
    pub sandwich_ok: bool,
}

impl Reduction {
    /// All post-conditions: size, family, alphabet and the count sandwich.
    pub fn holds(&self) -> bool {
        self.size_s <= self.size_t
            && self.classify_s <= 3
            && self.letters_s <= 2
            && self.sandwich_ok
    }
}

pub fn reduce_to_t3(t: &LabeledTree) -> Result<Reduction> {
    require_class(t, 4)?;
    let sigma = t.alphabet().len();
    if t.size() == 0 {
        return Ok(finish_reduction(
            t,
            t.clone(),
            ReductionBranch::Trivial,
            sigma,
            1,
            1,
        ));
    }
    let pal_t = palindrome_set(t);
    let total_t = pal_t.len() + 1;

    let mut best: Option<(usize, Letter, Letter)> = None;
    for &a in t.alphabet() {
        for &b in t.alphabet() {
            if a == b {
                continue;
            }
            let count = pal_t
                .iter()
                .filter(|w| Shape::of(w.letters()) == Shape::ThreeBlock(a, b))
                .count();
            if count > 0 && best.is_none_or(|(c, _, _)| count > c) {
                best = Some((count, a, b));
            }
        }
    }

    let (s, branch) = match best {
        None => {
            let (letter, x, y) = longest_unary_path(t);
            let (nodes, _) = t.path_dense(x, y);
            let edges: BTreeSet<_> = nodes.windows(2).map(|w| undirected(w[0], w[1])).collect();
            let s = t.edge_subtree(&edges).expect("a path is connected");
            (s, ReductionBranch::LongestUnaryPath { letter })
        }
        Some((_, outer, inner)) => {
            let target = Shape::ThreeBlock(outer, inner);
            let mut edges = BTreeSet::new();
            let n = t.node_count();
            for x in 0..n {
                for y in x + 1..n {
                    let (nodes, labels) = t.path_dense(x, y);
                    if is_palindrome(&labels) && Shape::of(&labels) == target {
                        edges.extend(nodes.windows(2).map(|w| undirected(w[0], w[1])));
                    }
                }
            }
            let s = t.edge_subtree(&edges).ok_or_else(|| {
                TransformError::LemmaViolation(format!(
                    "paths reading {target} palindromes are not connected"
                ))
            })?;
            (s, ReductionBranch::ThreeBlock { outer, inner })
        }
    };
    let total_s = palindrome_set(&s).len() + 1;
    Ok(finish_reduction(t, s, branch, sigma, total_t, total_s))
}

fn finish_reduction(
    t: &LabeledTree,
    s: LabeledTree,
    branch: ReductionBranch,
    sigma: usize,
    total_t: usize,
    total_s: usize,
) -> Reduction {
    let sigma2 = (sigma.max(1) * sigma.max(1)) as i64;
    // |Pal(T)|/σ² - |T| <= |Pal(S)|, cleared of the division
    let lower_ok = total_t as i64 - sigma2 * t.size() as i64 <= sigma2 * total_s as i64;
    Reduction {
        branch,
        alphabet_size: sigma,
        size_t: t.size(),
        size_s: s.size(),
        palindromes_t: total_t,
        palindromes_s: total_s,
        classify_s: classify(&s),
        letters_s: s.used_letters().len(),
        lower_bound: total_t as f64 / sigma2 as f64 - t.size() as f64,
        sandwich_ok: lower_ok && total_s <= total_t,
        tree: s,
    }
}

/// Longest path using a single letter: per letter and per restriction
/// component, a double BFS picks the diameter, preferring smaller node ids
/// among equally distant nodes. Ties between components go to the smaller
/// letter, then the component with the smaller node id.
fn longest_unary_path(t: &LabeledTree) -> (Letter, NodeIndex, NodeIndex) {
    let mut best: Option<(usize, Letter, NodeIndex, NodeIndex)> = None;
    for &letter in t.alphabet() {
        for comp in t.restrict(letter) {
            let (u, _) = farthest(&comp, 0);
            let (v, len) = farthest(&comp, u);
            if best.is_none_or(|b| len > b.0) {
                let (x, y) = (comp.id(u.min(v)), comp.id(u.max(v)));
                best = Some((len, letter, t.index_of(x).unwrap(), t.index_of(y).unwrap()));
            }
        }
    }
    let (_, letter, x, y) = best.expect("tree has at least one edge");
    (letter, x, y)
}

/// Farthest node from `start` (smallest index among ties) and its distance.
fn farthest(t: &LabeledTree, start: NodeIndex) -> (NodeIndex, usize) {
    let mut best = (start, 0);
    for y in 0..t.node_count() {
        let d = t.distance(start, y);
        if d > best.1 {
            best = (y, d);
        }
    }
    best
}

/// A node of degree at least 3 with at least two incident edges on `letter`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Splitting {
    pub node: NodeId,
    pub letter: Letter,
    /// Neighbors across the `letter` edges.
    pub branches: Vec<NodeId>,
}

/// All splittings, ordered by node id then letter.
pub fn find_splittings(t: &LabeledTree) -> Vec<Splitting> {
    let mut out = Vec::new();
    for x in 0..t.node_count() {
        if t.degree(x) < 3 {
            continue;
        }
        let letters: BTreeSet<Letter> = t.neighbors(x).iter().map(|&(_, l)| l).collect();
        for letter in letters {
            let branches: Vec<NodeId> = t
                .neighbors(x)
                .iter()
                .filter(|&&(_, l)| l == letter)
                .map(|&(y, _)| t.id(y))
                .collect();
            if branches.len() >= 2 {
                out.push(Splitting {
                    node: t.id(x),
                    letter,
                    branches,
                });
            }
        }
    }
    out
}

/// A single-letter chain hanging from a splitting node.
#[derive(Debug, Clone, Copy)]
struct Chain {
    len: usize,
    first: NodeIndex,
    tip: NodeIndex,
}

/// Follows the edge `v -> first` while the path stays on `letter` through
/// degree-2 nodes; `Some` if it ends in a leaf.
fn pure_chain(t: &LabeledTree, v: NodeIndex, first: NodeIndex, letter: Letter) -> Option<Chain> {
    let (mut prev, mut cur, mut len) = (v, first, 1);
    loop {
        match t.degree(cur) {
            1 => {
                return Some(Chain {
                    len,
                    first,
                    tip: cur,
                })
            }
            2 => {
                let &(next, l) = t.neighbors(cur).iter().find(|&&(y, _)| y != prev)?;
                if l != letter {
                    return None;
                }
                (prev, cur, len) = (cur, next, len + 1);
            }
            _ => return None,
        }
    }
}

/// Rewrites `t` so that every remaining splitting is on `keep`, moving the
/// shorter of two single-letter chains to the far end of the longer one.
/// The size is unchanged and the language can only grow.
pub fn eliminate_splittings(t: &LabeledTree, keep: Letter) -> Result<LabeledTree> {
    require_class(t, 3)?;
    let mut edges: Vec<(NodeId, NodeId, Letter)> = t.edges().collect();
    let mut cur = t.clone();
    loop {
        let pending: Vec<Splitting> = find_splittings(&cur)
            .into_iter()
            .filter(|s| s.letter != keep)
            .collect();
        let Some(first_pending) = pending.first() else {
            return Ok(cur.with_alphabet(t.alphabet().iter().copied()));
        };
        let mut applied = false;
        for sp in &pending {
            let v = cur.index_of(sp.node)?;
            let mut chains: Vec<Chain> = sp
                .branches
                .iter()
                .filter_map(|&y| pure_chain(&cur, v, cur.index_of(y).unwrap(), sp.letter))
                .collect();
            if chains.len() < 2 {
                continue;
            }
            // longest first, ties to the smaller tip id
            chains.sort_by_key(|c| (std::cmp::Reverse(c.len), c.tip));
            let x = chains[0];
            let y = *chains[1..].iter().min_by_key(|c| (c.len, c.tip)).unwrap();
            let (v_id, y_first, x_tip) = (cur.id(v), cur.id(y.first), cur.id(x.tip));
            let slot = edges
                .iter()
                .position(|&(a, b, _)| (a, b) == (v_id, y_first) || (a, b) == (y_first, v_id))
                .expect("splitting edge present");
            edges[slot] = (x_tip, y_first, sp.letter);
            cur = build_tree(&edges)?;
            applied = true;
            break;
        }
        if !applied {
            return Err(TransformError::SplittingNotEliminable {
                node: first_pending.node,
                letter: first_pending.letter,
            });
        }
    }
}

/// Letter to keep splittings on: the interior-block letter of some
/// three-block factor, or the smallest letter if there is none.
pub fn splitting_letter(t: &LabeledTree) -> Option<Letter> {
    middle_letters(t)
        .into_iter()
        .next()
        .or_else(|| t.alphabet().iter().next().copied())
}

/// A letter whose restriction is a single connected tree. When some factor
/// reads `b+a+b+`, that `a` is returned; otherwise the smallest letter with a
/// connected restriction.
pub fn check_restriction_connected(t: &LabeledTree) -> Result<Letter> {
    if t.size() == 0 {
        return Err(TransformError::EmptyTree);
    }
    require_class(t, 3)?;
    let letters = t.used_letters();
    for &a in &letters {
        for &b in &letters {
            if a != b && contains_pattern(t, &BlockPattern::three(b, a)?) {
                let parts = t.restrict(a).len();
                if parts == 1 {
                    return Ok(a);
                }
                return Err(TransformError::LemmaViolation(format!(
                    "factor {b}+{a}+{b}+ exists but the {a}-restriction has {parts} components"
                )));
            }
        }
    }
    letters
        .into_iter()
        .find(|&a| t.restrict(a).len() == 1)
        .ok_or_else(|| {
            TransformError::LemmaViolation("no letter has a connected restriction".into())
        })
}

/// Three-block palindrome count against `2 n^{3/2}`, with the two counting
/// bounds evaluated on the chain decomposition of the desplit tree.
#[derive(Debug, Clone, Serialize)]
pub struct C101Report {
    pub size: usize,
    /// Letter of the outer blocks; `None` for single-letter trees.
    pub outer: Option<Letter>,
    pub inner: Option<Letter>,
    pub c101: usize,
    pub bound: f64,
    pub ok: bool,
    /// `c101` of the tree after splitting elimination on the inner letter.
    pub c101_desplit: usize,
    /// Outer-letter chain lengths after splitting elimination.
    pub branches: Vec<usize>,
    /// Sum of `min(|b_i|, |b_j|)` over chain pairs joined by inner letters.
    pub pair_bound: usize,
    /// Sum over inner-block lengths of the largest `min(|b_i|, |b_j|)`.
    pub length_bound: usize,
    /// `pair_bound` restricted to chains of length at least `sqrt(n)`.
    pub long_pairs: usize,
    /// `length_bound` over pairs with at least one short chain.
    pub short_pairs: usize,
    /// `n sqrt(n)`, the cap on each of the two partial counts.
    pub half_bound: f64,
    pub counting_ok: bool,
}

pub fn verify_c101_bound(t: &LabeledTree) -> Result<C101Report> {
    require_class(t, 3)?;
    let letters: Vec<Letter> = t.used_letters().into_iter().collect();
    if letters.len() > 2 {
        return Err(TransformError::NotBinary(letters.len()));
    }
    let n = t.size();
    let nf = n as f64;
    let bound = 2.0 * nf * nf.sqrt();
    let half_bound = nf * nf.sqrt();

    let roles = match letters.as_slice() {
        [x, y] => {
            let xyx = contains_pattern(t, &BlockPattern::three(*x, *y)?);
            let yxy = contains_pattern(t, &BlockPattern::three(*y, *x)?);
            if xyx && yxy {
                return Err(TransformError::LemmaViolation(format!(
                    "both {x}+{y}+{x}+ and {y}+{x}+{y}+ occur"
                )));
            }
            // with neither pattern present the larger letter plays the outer role
            if xyx {
                Some((*x, *y))
            } else {
                Some((*y, *x))
            }
        }
        _ => None,
    };

    let report = tree_palindromes(t, Algorithm::Oracle)?;
    let Some((outer, inner)) = roles else {
        return Ok(C101Report {
            size: n,
            outer: None,
            inner: None,
            c101: 0,
            bound,
            ok: true,
            c101_desplit: 0,
            branches: Vec::new(),
            pair_bound: 0,
            length_bound: 0,
            long_pairs: 0,
            short_pairs: 0,
            half_bound,
            counting_ok: true,
        });
    };
    let c101 = report.three_block(outer, inner);

    let desplit = eliminate_splittings(t, inner)?;
    let c101_desplit = tree_palindromes(&desplit, Algorithm::Oracle)?.three_block(outer, inner);

    // chains of the outer letter, each attached to the inner-letter part at
    // one end
    let mut chains: Vec<(usize, Option<NodeIndex>)> = Vec::new();
    for comp in desplit.restrict(outer) {
        let anchor = comp
            .node_ids()
            .iter()
            .map(|&id| desplit.index_of(id).unwrap())
            .find(|&x| desplit.neighbors(x).iter().any(|&(_, l)| l == inner));
        chains.push((comp.size(), anchor));
    }
    let threshold = nf.sqrt();
    let mut pair_bound = 0;
    let mut long_pairs = 0;
    let mut by_length: std::collections::BTreeMap<usize, (usize, usize)> = Default::default();
    for i in 0..chains.len() {
        for j in i + 1..chains.len() {
            let ((li, ai), (lj, aj)) = (chains[i], chains[j]);
            let (Some(ai), Some(aj)) = (ai, aj) else {
                continue;
            };
            let gap = desplit.distance(ai, aj);
            if gap == 0 {
                continue;
            }
            let m = li.min(lj);
            pair_bound += m;
            let both_long = li as f64 >= threshold && lj as f64 >= threshold;
            if both_long {
                long_pairs += m;
            }
            let entry = by_length.entry(gap).or_default();
            entry.0 = entry.0.max(m);
            if !both_long {
                entry.1 = entry.1.max(m);
            }
        }
    }
    let length_bound = by_length.values().map(|e| e.0).sum();
    let short_pairs = by_length.values().map(|e| e.1).sum();
    let counting_ok = c101 <= c101_desplit
        && c101_desplit <= pair_bound
        && c101_desplit <= length_bound
        && c101_desplit <= long_pairs + short_pairs
        && long_pairs as f64 <= half_bound
        && (short_pairs as f64) < half_bound;

    Ok(C101Report {
        size: n,
        outer: Some(outer),
        inner: Some(inner),
        c101,
        bound,
        ok: (c101 as f64) < bound,
        c101_desplit,
        branches: chains.iter().map(|c| c.0).collect(),
        pair_bound,
        length_bound,
        long_pairs,
        short_pairs,
        half_bound,
        counting_ok,
    })
}

/// Decomposition of a node triple whose three pairwise paths are
/// palindromes. Arms are ordered by length: `U = π(u, x)`, `V = π(v, x)`,
/// `W = π(w, x)` with `|U| <= |V| <= |W|`, and `V = UA`, `W = UAB`,
/// `A = S^i`, `B = S^j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TripleAnalysis {
    /// `(u, v, w)` after ordering by arm length.
    pub nodes: [NodeId; 3],
    pub median: NodeId,
    #[serde(rename = "U")]
    pub u_arm: Word,
    #[serde(rename = "V")]
    pub v_arm: Word,
    #[serde(rename = "W")]
    pub w_arm: Word,
    #[serde(rename = "A")]
    pub a: Word,
    #[serde(rename = "B")]
    pub b: Word,
    #[serde(rename = "S")]
    pub root: Word,
    pub i: usize,
    pub j: usize,
    /// Lengths of `π(u, v)`, `π(u, w)`, `π(v, w)`.
    pub path_lengths: [usize; 3],
    /// gcd of the pairwise differences of `path_lengths`.
    pub p: usize,
    /// False when all three paths have equal length (`p = 0`), which puts
    /// no constraint on `|S|`.
    pub divisibility_checked: bool,
}

impl TripleAnalysis {
    /// `U S^i = V` and `U S^{i+j} = W`.
    pub fn reconstructs(&self) -> bool {
        self.u_arm.concat(&self.root.pow(self.i)) == self.v_arm
            && self.u_arm.concat(&self.root.pow(self.i + self.j)) == self.w_arm
    }

    pub fn commutes(&self) -> bool {
        self.a.concat(&self.b) == self.b.concat(&self.a)
    }

    pub fn root_divides_p(&self) -> bool {
        !self.divisibility_checked
            || (!self.root.is_empty() && self.p.is_multiple_of(self.root.len()))
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn analyze_triple(t: &LabeledTree, u: NodeId, v: NodeId, w: NodeId) -> Result<TripleAnalysis> {
    let idx = [t.index_of(u)?, t.index_of(v)?, t.index_of(w)?];
    let ids = [u, v, w];
    let mut paths = Vec::with_capacity(3);
    for (a, b) in [(0, 1), (0, 2), (1, 2)] {
        let (nodes, labels) = t.path_dense(idx[a], idx[b]);
        if !is_palindrome(&labels) {
            return Err(TransformError::NotPalindromicTriple(ids[a], ids[b]));
        }
        paths.push(nodes);
    }
    let sets: Vec<HashSet<NodeIndex>> = paths.iter().map(|p| p.iter().copied().collect()).collect();
    let median = paths[0]
        .iter()
        .copied()
        .find(|x| sets[1].contains(x) && sets[2].contains(x))
        .expect("three paths in a tree share their median");
    if idx.contains(&median) {
        return Err(TransformError::CollinearTriple(u, v, w));
    }

    let mut arms: Vec<(NodeId, Word)> = (0..3)
        .map(|k| (ids[k], Word::from_letters(t.path_labels(idx[k], median))))
        .collect();
    arms.sort_by_key(|(_, word)| word.len());
    let [(nu, uw), (nv, vw), (nw, ww)] = <[(NodeId, Word); 3]>::try_from(arms).unwrap();

    let violation =
        |what: &str| TransformError::LemmaViolation(format!("triple ({u}, {v}, {w}): {what}"));
    if !vw.starts_with(&uw) || !ww.starts_with(&vw) {
        return Err(violation("shorter arms are not prefixes of longer ones"));
    }
    let a = vw.suffix(vw.len() - uw.len());
    let b = ww.suffix(ww.len() - vw.len());
    let ab = a.concat(&b);
    if !is_palindrome(a.letters()) || !is_palindrome(b.letters()) || !is_palindrome(ab.letters()) {
        return Err(violation("A, B or AB is not a palindrome"));
    }
    let (root, i, j) = if ab.is_empty() {
        (Word::empty(), 0, 0)
    } else {
        let (root, _) = primitive_root(&ab).expect("nonempty");
        let (i, j) = (a.len() / root.len(), b.len() / root.len());
        if a.len() % root.len() != 0 || root.pow(i) != a || root.pow(j) != b {
            return Err(violation("A and B are not powers of a common root"));
        }
        (root, i, j)
    };

    let d = |x: NodeId, y: NodeId| t.distance(t.index_of(x).unwrap(), t.index_of(y).unwrap());
    let path_lengths = [d(nu, nv), d(nu, nw), d(nv, nw)];
    let [luv, luw, lvw] = path_lengths;
    let p = gcd(gcd(luw.abs_diff(luv), lvw.abs_diff(luv)), lvw.abs_diff(luw));
    let analysis = TripleAnalysis {
        nodes: [nu, nv, nw],
        median: t.id(median),
        u_arm: uw,
        v_arm: vw,
        w_arm: ww,
        a,
        b,
        root,
        i,
        j,
        path_lengths,
        p,
        divisibility_checked: p != 0,
    };
    if !analysis.root_divides_p() {
        return Err(violation("|S| does not divide p"));
    }
    Ok(analysis)
}

/// Analyzes every leaf triple whose pairwise paths are palindromes,
/// skipping collinear ones.
pub fn analyze_leaf_triples(t: &LabeledTree) -> Result<Vec<TripleAnalysis>> {
    let leaves = t.leaves();
    let mut out = Vec::new();
    for a in 0..leaves.len() {
        for b in a + 1..leaves.len() {
            for c in b + 1..leaves.len() {
                match analyze_triple(t, leaves[a], leaves[b], leaves[c]) {
                    Ok(r) => out.push(r),
                    Err(
                        TransformError::NotPalindromicTriple(..)
                        | TransformError::CollinearTriple(..),
                    ) => {}
                    Err(e) => return Err(e),
                }
            }
        }
    }
    Ok(out)
}
