//! Tree languages: the set of path label words of a tree, its palindromes,
//! the block-count family a tree belongs to, and block-pattern detection.
//!
//! Two palindrome enumerators are provided. The oracle extracts the label
//! word of every unordered node pair and tests it directly. The hashed
//! enumerator runs one depth-first traversal per source node, carrying a
//! forward and a backward polynomial hash of the current path label under
//! two independent 64-bit prime moduli, and deduplicates palindromes by
//! `(length, hash1, hash2)`.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::tree::{LabeledTree, NodeIndex};
use crate::word::{block_count, is_palindrome, run_length, Letter, Word};

/// Longest path (in edges) the hashed enumerator accepts by default.
pub const MAX_HASHED_PATH_LEN: usize = 1 << 24;

/// Trees with fewer nodes than this are enumerated on the calling thread.
const PARALLEL_THRESHOLD: usize = 128;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LanguageError {
    #[error("longest path has {path_len} edges, hashed enumeration supports at most {limit}; use the oracle")]
    HashWidthExceeded { path_len: usize, limit: usize },
    #[error("hash collision detected on a path of length {len}")]
    HashCollision { len: usize },
    #[error("invalid block pattern: {0}")]
    InvalidPattern(String),
}

#[derive(
    Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default, clap::ValueEnum,
)]
#[serde(rename_all = "snake_case")]
pub enum Algorithm {
    #[default]
    Oracle,
    Hashed,
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algorithm::Oracle => "oracle",
            Algorithm::Hashed => "hashed",
        })
    }
}

/// Block shape of a nonempty palindrome. Palindromes always have an odd
/// number of blocks, so the classes are one block, three blocks `a+b+a+`,
/// and everything longer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Shape {
    Unary(Letter),
    /// `outer+ inner+ outer+`
    ThreeBlock(Letter, Letter),
    Other,
}

impl Shape {
    pub fn of(word: &[Letter]) -> Shape {
        let rle = run_length(word);
        match rle.blocks.as_slice() {
            [(a, _)] => Shape::Unary(*a),
            [(a, _), (b, _), (c, _)] if a == c => Shape::ThreeBlock(*a, *b),
            _ => Shape::Other,
        }
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Shape::Unary(a) => write!(f, "{a}+"),
            Shape::ThreeBlock(a, b) => write!(f, "{a}+{b}+{a}+"),
            Shape::Other => f.write_str("other"),
        }
    }
}

impl Serialize for Shape {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Distinct palindromes of a tree language.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PalindromeReport {
    pub size: usize,
    /// Including the empty word.
    pub total: usize,
    pub nonempty: usize,
    pub by_shape: BTreeMap<Shape, usize>,
    pub algorithm: Algorithm,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witnesses: Option<BTreeSet<Word>>,
}

impl PalindromeReport {
    pub fn count(&self, shape: Shape) -> usize {
        self.by_shape.get(&shape).copied().unwrap_or(0)
    }

    /// Count of `outer+ inner+ outer+` palindromes.
    pub fn three_block(&self, outer: Letter, inner: Letter) -> usize {
        self.count(Shape::ThreeBlock(outer, inner))
    }

    /// True when the counts (not timing or witnesses) agree.
    pub fn same_counts(&self, other: &PalindromeReport) -> bool {
        self.size == other.size
            && self.total == other.total
            && self.nonempty == other.nonempty
            && self.by_shape == other.by_shape
    }

    /// `shape=count` pairs joined by `;`, for the CSV row form.
    pub fn shape_summary(&self) -> String {
        self.by_shape
            .iter()
            .map(|(s, n)| format!("{s}={n}"))
            .collect::<Vec<_>>()
            .join(";")
    }

    pub fn csv_header() -> &'static str {
        "size,total,nonempty,by_shape,algorithm,elapsed_ms"
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.size,
            self.total,
            self.nonempty,
            self.shape_summary(),
            self.algorithm,
            self.elapsed_ms
                .map(|t| format!("{t:.3}"))
                .unwrap_or_default()
        )
    }

    fn from_shapes(
        t: &LabeledTree,
        algorithm: Algorithm,
        shapes: impl IntoIterator<Item = Shape>,
        witnesses: Option<BTreeSet<Word>>,
    ) -> Self {
        let mut by_shape = BTreeMap::new();
        let mut nonempty = 0;
        for s in shapes {
            *by_shape.entry(s).or_insert(0) += 1;
            nonempty += 1;
        }
        PalindromeReport {
            size: t.size(),
            total: nonempty + 1,
            nonempty,
            by_shape,
            algorithm,
            elapsed_ms: None,
            witnesses,
        }
    }
}

#[derive(Debug, Clone)]
pub struct EnumerateOptions {
    pub algorithm: Algorithm,
    /// Keep the palindromes themselves in the report.
    pub witnesses: bool,
    /// Hashed mode only: compare every palindrome hit against the actual
    /// label word and fail on any collision.
    pub verify: bool,
    /// Hashed mode only: refuse trees with a longer path.
    pub max_path_len: usize,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions {
            algorithm: Algorithm::Oracle,
            witnesses: false,
            verify: false,
            max_path_len: MAX_HASHED_PATH_LEN,
        }
    }
}

impl EnumerateOptions {
    pub fn new(algorithm: Algorithm) -> Self {
        EnumerateOptions {
            algorithm,
            ..Default::default()
        }
    }

    pub fn with_witnesses(mut self) -> Self {
        self.witnesses = true;
        self
    }

    pub fn verified(mut self) -> Self {
        self.verify = true;
        self
    }
}

/// All distinct label words `π(x, y)` over ordered node pairs, with ε.
pub fn tree_language(t: &LabeledTree) -> HashSet<Word> {
    let mut out = HashSet::new();
    out.insert(Word::empty());
    for s in 0..t.node_count() {
        walk_from(t, s, |_, labels| {
            out.insert(Word::from(labels));
        });
    }
    out
}

/// Depth-first walk from `source`, calling `visit(node, labels)` for every
/// other node with the label word of the path from `source`.
fn walk_from(t: &LabeledTree, source: NodeIndex, mut visit: impl FnMut(NodeIndex, &[Letter])) {
    let mut stack: Vec<(NodeIndex, NodeIndex, usize)> = vec![(source, usize::MAX, 0)];
    let mut labels: Vec<Letter> = Vec::new();
    while let Some(top) = stack.last_mut() {
        let (x, parent, next) = *top;
        if next < t.degree(x) {
            top.2 += 1;
            let (y, l) = t.neighbors(x)[next];
            if y == parent {
                continue;
            }
            labels.push(l);
            visit(y, &labels);
            stack.push((y, x, 0));
        } else {
            stack.pop();
            labels.pop();
        }
    }
}

pub fn tree_palindromes(
    t: &LabeledTree,
    algorithm: Algorithm,
) -> Result<PalindromeReport, LanguageError> {
    tree_palindromes_with(t, &EnumerateOptions::new(algorithm))
}

pub fn tree_palindromes_with(
    t: &LabeledTree,
    opts: &EnumerateOptions,
) -> Result<PalindromeReport, LanguageError> {
    let start = Instant::now();
    let mut report = match opts.algorithm {
        Algorithm::Oracle => oracle_palindromes(t, opts.witnesses),
        Algorithm::Hashed => hashed_palindromes(t, opts)?,
    };
    report.elapsed_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    Ok(report)
}

/// Distinct nonempty palindromes by direct extraction over all node pairs.
pub fn palindrome_set(t: &LabeledTree) -> HashSet<Word> {
    let n = t.node_count();
    let mut set = HashSet::new();
    for x in 0..n {
        for y in x + 1..n {
            let labels = t.path_labels(x, y);
            if is_palindrome(&labels) {
                set.insert(Word::from_letters(labels));
            }
        }
    }
    set
}

fn oracle_palindromes(t: &LabeledTree, witnesses: bool) -> PalindromeReport {
    let set = palindrome_set(t);
    let shapes: Vec<Shape> = set.iter().map(|w| Shape::of(w.letters())).collect();
    let witnesses = witnesses.then(|| set.into_iter().collect());
    PalindromeReport::from_shapes(t, Algorithm::Oracle, shapes, witnesses)
}

const MOD1: u64 = (1 << 61) - 1;
const MOD2: u64 = 0xFFFF_FFFF_0000_0001;
const BASE1: u64 = 0x1F2E_3D4C_5B6A_7988 % MOD1;
const BASE2: u64 = 0x9E37_79B9_7F4A_7C15 % MOD2;

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn addmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 + b as u128) % m as u128) as u64
}

type HashKey = (u32, u64, u64);

#[derive(Clone, Copy)]
struct PathState {
    len: usize,
    fwd: (u64, u64),
    bwd: (u64, u64),
    blocks: usize,
    first: Option<Letter>,
    second: Option<Letter>,
    last: Option<Letter>,
}

impl PathState {
    const EMPTY: PathState = PathState {
        len: 0,
        fwd: (0, 0),
        bwd: (0, 0),
        blocks: 0,
        first: None,
        second: None,
        last: None,
    };

    fn extend(&self, l: Letter, pows: &[(u64, u64)]) -> PathState {
        let c = l.0 as u64 + 1;
        let (p1, p2) = pows[self.len];
        let new_block = self.last != Some(l);
        PathState {
            len: self.len + 1,
            fwd: (
                addmod(mulmod(self.fwd.0, BASE1, MOD1), c, MOD1),
                addmod(mulmod(self.fwd.1, BASE2, MOD2), c, MOD2),
            ),
            bwd: (
                addmod(self.bwd.0, mulmod(c, p1, MOD1), MOD1),
                addmod(self.bwd.1, mulmod(c, p2, MOD2), MOD2),
            ),
            blocks: self.blocks + new_block as usize,
            first: self.first.or(Some(l)),
            second: if self.blocks == 1 && new_block {
                Some(l)
            } else {
                self.second
            },
            last: Some(l),
        }
    }

    fn looks_palindromic(&self) -> bool {
        self.fwd == self.bwd
    }

    fn shape(&self) -> Shape {
        match self.blocks {
            1 => Shape::Unary(self.first.unwrap()),
            3 => Shape::ThreeBlock(self.first.unwrap(), self.second.unwrap()),
            _ => Shape::Other,
        }
    }

    fn key(&self) -> HashKey {
        (self.len as u32, self.fwd.0, self.fwd.1)
    }
}

#[derive(Clone)]
struct Entry {
    shape: Shape,
    word: Option<Word>,
}

type Found = HashMap<HashKey, Entry>;

fn hashed_palindromes(
    t: &LabeledTree,
    opts: &EnumerateOptions,
) -> Result<PalindromeReport, LanguageError> {
    let longest = t.diameter();
    let limit = opts.max_path_len.min(MAX_HASHED_PATH_LEN);
    if longest > limit {
        return Err(LanguageError::HashWidthExceeded {
            path_len: longest,
            limit,
        });
    }
    let mut pows = Vec::with_capacity(longest + 1);
    let mut p = (1u64, 1u64);
    for _ in 0..=longest {
        pows.push(p);
        p = (mulmod(p.0, BASE1, MOD1), mulmod(p.1, BASE2, MOD2));
    }
    let keep_words = opts.verify || opts.witnesses;
    let scan =
        |s: NodeIndex, found: &mut Found| scan_source(t, s, &pows, keep_words, opts.verify, found);

    let found = if t.node_count() < PARALLEL_THRESHOLD {
        let mut found = Found::new();
        for s in 0..t.node_count() {
            scan(s, &mut found)?;
        }
        found
    } else {
        (0..t.node_count())
            .into_par_iter()
            .try_fold(Found::new, |mut found, s| {
                scan(s, &mut found)?;
                Ok(found)
            })
            .try_reduce(Found::new, |a, b| merge(a, b, opts.verify))?
    };

    let witnesses = opts
        .witnesses
        .then(|| found.values().filter_map(|e| e.word.clone()).collect());
    Ok(PalindromeReport::from_shapes(
        t,
        Algorithm::Hashed,
        found.into_values().map(|e| e.shape),
        witnesses,
    ))
}

fn merge(mut a: Found, b: Found, verify: bool) -> Result<Found, LanguageError> {
    if a.len() < b.len() {
        return merge(b, a, verify);
    }
    for (k, e) in b {
        match a.get(&k) {
            Some(existing) => {
                if verify && existing.word != e.word {
                    return Err(LanguageError::HashCollision { len: k.0 as usize });
                }
            }
            None => {
                a.insert(k, e);
            }
        }
    }
    Ok(a)
}

fn scan_source(
    t: &LabeledTree,
    source: NodeIndex,
    pows: &[(u64, u64)],
    keep_words: bool,
    verify: bool,
    found: &mut Found,
) -> Result<(), LanguageError> {
    let mut stack: Vec<(NodeIndex, NodeIndex, usize)> = vec![(source, usize::MAX, 0)];
    let mut states = vec![PathState::EMPTY];
    let mut labels: Vec<Letter> = Vec::new();
    while let Some(top) = stack.last_mut() {
        let (x, parent, next) = *top;
        if next == t.degree(x) {
            stack.pop();
            states.pop();
            labels.pop();
            continue;
        }
        top.2 += 1;
        let (y, l) = t.neighbors(x)[next];
        if y == parent {
            continue;
        }
        let state = states.last().unwrap().extend(l, pows);
        labels.push(l);
        if state.looks_palindromic() {
            if verify && !is_palindrome(&labels) {
                return Err(LanguageError::HashCollision { len: labels.len() });
            }
            match found.get(&state.key()) {
                Some(e) => {
                    if verify && e.word.as_ref().map(Word::letters) != Some(&labels[..]) {
                        return Err(LanguageError::HashCollision { len: labels.len() });
                    }
                }
                None => {
                    found.insert(
                        state.key(),
                        Entry {
                            shape: state.shape(),
                            word: keep_words.then(|| Word::from(&labels[..])),
                        },
                    );
                }
            }
        }
        states.push(state);
        stack.push((y, x, 0));
    }
    Ok(())
}

/// Least `k` such that every factor of `t` has at most `k` blocks. Only
/// leaf-to-leaf paths are scanned: extending a path never lowers its block
/// count. The edgeless tree has only ε and gets 0.
pub fn classify(t: &LabeledTree) -> usize {
    let leaves = t.leaf_indices();
    let is_leaf: Vec<bool> = (0..t.node_count()).map(|x| t.degree(x) == 1).collect();
    let mut best = 0;
    for &s in &leaves {
        walk_blocks(t, s, |y, blocks| {
            if is_leaf[y] && y > s {
                best = best.max(blocks.len());
            }
            false
        });
    }
    best
}

/// Walk from `source` keeping the block-letter sequence of the current path.
/// `visit` returns true to stop the walk early; the return value reports
/// whether that happened.
fn walk_blocks(
    t: &LabeledTree,
    source: NodeIndex,
    mut visit: impl FnMut(NodeIndex, &[Letter]) -> bool,
) -> bool {
    // (node, parent, next neighbor, whether entering this node pushed a block)
    let mut stack: Vec<(NodeIndex, NodeIndex, usize, bool)> = vec![(source, usize::MAX, 0, false)];
    let mut blocks: Vec<Letter> = Vec::new();
    while let Some(top) = stack.last_mut() {
        let (x, parent, next, pushed) = *top;
        if next == t.degree(x) {
            if pushed {
                blocks.pop();
            }
            stack.pop();
            continue;
        }
        top.2 += 1;
        let (y, l) = t.neighbors(x)[next];
        if y == parent {
            continue;
        }
        let push = blocks.last() != Some(&l);
        if push {
            blocks.push(l);
        }
        if visit(y, &blocks) {
            return true;
        }
        stack.push((y, x, 0, push));
    }
    false
}

/// A sequence of block letters, adjacent letters distinct; `[a, b, a]`
/// stands for `a+b+a+`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockPattern(Vec<Letter>);

impl BlockPattern {
    pub fn new(letters: impl IntoIterator<Item = Letter>) -> Result<Self, LanguageError> {
        let letters: Vec<Letter> = letters.into_iter().collect();
        if letters.is_empty() {
            return Err(LanguageError::InvalidPattern("empty pattern".into()));
        }
        if let Some(w) = letters.windows(2).find(|w| w[0] == w[1]) {
            return Err(LanguageError::InvalidPattern(format!(
                "adjacent blocks share the letter {}",
                w[0]
            )));
        }
        Ok(BlockPattern(letters))
    }

    /// `outer+ inner+ outer+`
    pub fn three(outer: Letter, inner: Letter) -> Result<Self, LanguageError> {
        Self::new([outer, inner, outer])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }
}

impl fmt::Display for BlockPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{l}+")?;
        }
        Ok(())
    }
}

/// True iff some factor of `t` has exactly the block letters of `p`.
pub fn contains_pattern(t: &LabeledTree, p: &BlockPattern) -> bool {
    let p = p.letters();
    // every path extends to a leaf-to-leaf path, and every occurrence of p
    // in a block sequence is a suffix at the moment its last block opens
    t.leaf_indices()
        .into_iter()
        .any(|s| walk_blocks(t, s, |_, blocks| blocks.ends_with(p)))
}

/// Letters that label an interior block of some factor, i.e. the `a` of
/// some factor in `b+a+c+`.
pub fn middle_letters(t: &LabeledTree) -> BTreeSet<Letter> {
    let mut out = BTreeSet::new();
    for s in t.leaf_indices() {
        walk_blocks(t, s, |_, blocks| {
            if blocks.len() >= 3 {
                out.insert(blocks[blocks.len() - 2]);
            }
            false
        });
    }
    out
}

/// Block count of the longest factor, via all node pairs. Reference for
/// the leaf-pair shortcut in [`classify`].
pub fn classify_all_pairs(t: &LabeledTree) -> usize {
    let n = t.node_count();
    let mut best = 0;
    for x in 0..n {
        for y in x + 1..n {
            best = best.max(block_count(&t.path_labels(x, y)));
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::test_trees::*;
    use crate::tree::build_tree;
    use crate::word::palindrome_language;

    fn l(c: char) -> Letter {
        Letter(c)
    }

    /// Ordered-pair brute force over `TreePath` extraction.
    fn language_by_pairs(t: &LabeledTree) -> HashSet<Word> {
        let mut out = HashSet::new();
        for &x in t.node_ids() {
            for &y in t.node_ids() {
                out.insert(t.path(x, y).unwrap().labels);
            }
        }
        out
    }

    #[test]
    fn language_examples() {
        let single = build_tree(&[(0, 1, l('a'))]).unwrap();
        let lang = tree_language(&single);
        assert_eq!(lang, [Word::empty(), Word::from("a")].into_iter().collect());

        let w = Word::from("ababb");
        let thread = threadlike(&w);
        let mut expected: HashSet<Word> = HashSet::new();
        for word in [w.clone(), w.reversed()] {
            let s = word.letters();
            for i in 0..=s.len() {
                for j in i..=s.len() {
                    expected.insert(Word::from(&s[i..j]));
                }
            }
        }
        assert_eq!(tree_language(&thread), expected);

        let fig = sample_tree();
        let lang = tree_language(&fig);
        assert_eq!(lang, language_by_pairs(&fig));
        for f in ["baaab", "baab", "bab"] {
            assert!(lang.contains(&Word::from(f)));
        }
        assert!(lang.len() <= fig.size() * fig.size() + 1);
    }

    #[test]
    fn sample_tree_has_seven_nonempty_palindromes() {
        for alg in [Algorithm::Oracle, Algorithm::Hashed] {
            let r = tree_palindromes_with(&sample_tree(), &EnumerateOptions::new(alg).with_witnesses())
                .unwrap();
            assert_eq!(r.nonempty, 7);
            assert_eq!(r.total, 8);
            let w: Vec<String> = r
                .witnesses
                .as_ref()
                .unwrap()
                .iter()
                .map(|w| w.to_string())
                .collect();
            assert_eq!(w, ["a", "aa", "aaa", "b", "baaab", "baab", "bab"]);
            assert_eq!(r.three_block(l('b'), l('a')), 3);
        }
    }

    #[test]
    fn unary_path_palindromes() {
        for n in [1, 2, 5, 17] {
            let t = threadlike(&Word::power_of(l('a'), n));
            let r = tree_palindromes(&t, Algorithm::Oracle).unwrap();
            assert_eq!(r.nonempty, n);
            assert_eq!(r.count(Shape::Unary(l('a'))), n);
        }
        let single = LabeledTree::single_node(0);
        let r = tree_palindromes(&single, Algorithm::Hashed).unwrap();
        assert_eq!((r.total, r.nonempty), (1, 0));
    }

    #[test]
    fn hashed_refuses_overlong_paths() {
        let t = threadlike(&Word::power_of(l('a'), 10));
        let opts = EnumerateOptions {
            max_path_len: 9,
            ..EnumerateOptions::new(Algorithm::Hashed)
        };
        assert_eq!(
            tree_palindromes_with(&t, &opts).unwrap_err(),
            LanguageError::HashWidthExceeded {
                path_len: 10,
                limit: 9
            }
        );
        let opts = EnumerateOptions {
            max_path_len: 10,
            ..opts
        };
        assert_eq!(tree_palindromes_with(&t, &opts).unwrap().nonempty, 10);
    }

    #[test]
    fn verified_hashing_matches_oracle_witnesses() {
        let t = random_tree_fixture(300, 3, 11);
        let hashed = tree_palindromes_with(
            &t,
            &EnumerateOptions::new(Algorithm::Hashed)
                .verified()
                .with_witnesses(),
        )
        .unwrap();
        let oracle = tree_palindromes_with(
            &t,
            &EnumerateOptions::new(Algorithm::Oracle).with_witnesses(),
        )
        .unwrap();
        assert!(hashed.same_counts(&oracle));
        assert_eq!(hashed.witnesses, oracle.witnesses);
    }

    #[test]
    fn shapes() {
        assert_eq!(Shape::of(Word::from("aaa").letters()), Shape::Unary(l('a')));
        assert_eq!(
            Shape::of(Word::from("1001").letters()),
            Shape::ThreeBlock(l('1'), l('0'))
        );
        assert_eq!(Shape::of(Word::from("abcba").letters()), Shape::Other);
        assert_eq!(Shape::ThreeBlock(l('1'), l('0')).to_string(), "1+0+1+");
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(&threadlike(&Word::power_of(l('a'), 6))), 1);
        // every leaf pair of the sample tree reads a three-block word
        assert_eq!(classify(&sample_tree()), 3);
        assert_eq!(classify_all_pairs(&sample_tree()), 3);
        assert_eq!(classify(&LabeledTree::single_node(1)), 0);
        assert_eq!(classify(&threadlike(&Word::from("abcab"))), 5);
    }

    #[test]
    fn pattern_examples() {
        let single = build_tree(&[(0, 1, l('a'))]).unwrap();
        assert!(contains_pattern(
            &single,
            &BlockPattern::new([l('a')]).unwrap()
        ));
        assert!(!contains_pattern(
            &single,
            &BlockPattern::new([l('b')]).unwrap()
        ));
        let fig = sample_tree();
        assert!(contains_pattern(
            &fig,
            &BlockPattern::three(l('b'), l('a')).unwrap()
        ));
        assert!(!contains_pattern(
            &fig,
            &BlockPattern::three(l('a'), l('b')).unwrap()
        ));
        assert!(contains_pattern(
            &fig,
            &BlockPattern::new([l('a'), l('b')]).unwrap()
        ));
        assert!(BlockPattern::new([]).is_err());
        assert!(BlockPattern::new([l('a'), l('a')]).is_err());
    }

    #[test]
    fn threadlike_palindromes_match_word_palindromes() {
        for s in ["ababb", "aabbaabb", "abcacba", "0110100110010110"] {
            let w = Word::from(s);
            let mut expected = palindrome_language(&w);
            expected.remove(&Word::empty());
            assert_eq!(palindrome_set(&threadlike(&w)), expected, "{s}");
        }
    }

    #[test]
    fn report_serialization() {
        let mut r = tree_palindromes(&sample_tree(), Algorithm::Oracle).unwrap();
        r.elapsed_ms = None;
        assert_eq!(
            serde_json::to_string(&r).unwrap(),
            r#"{"size":6,"total":8,"nonempty":7,"by_shape":{"a+":3,"b+":1,"b+a+b+":3},"algorithm":"oracle"}"#
        );
        assert_eq!(r.csv_row(), "6,8,7,a+=3;b+=1;b+a+b+=3,oracle,");
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_tree(max_edges: usize, letters: Vec<char>) -> impl Strategy<Value = LabeledTree> {
            proptest::collection::vec(
                (any::<prop::sample::Index>(), prop::sample::select(letters)),
                0..max_edges,
            )
            .prop_map(|spec| {
                let edges: Vec<_> = spec
                    .iter()
                    .enumerate()
                    .map(|(i, (idx, c))| ((i + 1) as u64, idx.index(i + 1) as u64, Letter(*c)))
                    .collect();
                LabeledTree::new([0], &edges).unwrap()
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(200))]

            #[test]
            fn oracle_and_hashed_agree(t in arb_tree(40, vec!['a', 'b', 'c'])) {
                let o = tree_palindromes(&t, Algorithm::Oracle).unwrap();
                let h = tree_palindromes(&t, Algorithm::Hashed).unwrap();
                prop_assert!(o.same_counts(&h));
                prop_assert_eq!(o.by_shape.values().sum::<usize>(), o.nonempty);
                prop_assert!(o.nonempty <= t.size() * t.size());
            }

            #[test]
            fn language_bound(t in arb_tree(25, vec!['a', 'b'])) {
                let lang = tree_language(&t);
                prop_assert!(lang.len() <= t.size() * t.size() + 1);
            }

            #[test]
            fn leaf_pairs_classify_like_all_pairs(t in arb_tree(9, vec!['a', 'b', 'c'])) {
                prop_assert_eq!(classify(&t), classify_all_pairs(&t));
            }

            #[test]
            fn pattern_detection_matches_brute_force(t in arb_tree(14, vec!['a', 'b'])) {
                for pattern in [vec!['a'], vec!['a', 'b'], vec!['a', 'b', 'a'], vec!['b', 'a', 'b'], vec!['a', 'b', 'a', 'b']] {
                    let p = BlockPattern::new(pattern.iter().map(|&c| Letter(c))).unwrap();
                    let brute = tree_language(&t).iter().any(|w| run_length(w.letters()).letters() == p.letters());
                    prop_assert_eq!(contains_pattern(&t, &p), brute, "{}", p);
                }
            }
        }
    }
}
