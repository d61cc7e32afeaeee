//! Palindromic complexity of edge-labeled trees.
//!
//! A tree whose edges carry letters has a language: the words read along
//! its simple paths. This crate enumerates the palindromes in that language,
//! classifies trees by the largest number of blocks in any factor, builds the
//! hair-comb family whose palindrome count grows like `n^{3/2}`, and checks
//! the structural steps behind the matching upper bound.

pub mod comb;
pub mod experiments;
pub mod language;
pub mod sidon;
pub mod transforms;
pub mod tree;
pub mod word;

pub use comb::{build_comb, closed_form_counts, comb_size, CombCounts, CombSpec};
pub use language::{
    classify, tree_language, tree_palindromes, tree_palindromes_with, Algorithm, EnumerateOptions,
    PalindromeReport, Shape,
};
pub use sidon::{difference_sequence, erdos_turan, is_sidon};
pub use tree::{build_tree, parse_edge_list, LabeledTree, NodeId, TreeError};
pub use word::{
    block_count, is_palindrome, palindrome_language, primitive_root, run_length, Letter, Word,
};
