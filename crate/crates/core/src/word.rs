//! Words over a finite alphabet: reversal, palindromic factors, run-length
//! encoding and primitive roots.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A single alphabet symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Letter(pub char);

impl Letter {
    pub fn as_char(self) -> char {
        self.0
    }
}

impl From<char> for Letter {
    fn from(c: char) -> Self {
        Letter(c)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A finite sequence of letters. Equality is content equality.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Letter>);

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WordError {
    #[error("operation requires a nonempty word")]
    EmptyWord,
}

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    /// `letter` repeated `count` times.
    pub fn power_of(letter: Letter, count: usize) -> Self {
        Word(vec![letter; count])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.0);
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    /// `self` repeated `exponent` times.
    pub fn pow(&self, exponent: usize) -> Word {
        Word(self.0.repeat(exponent))
    }

    pub fn prefix(&self, len: usize) -> Word {
        Word(self.0[..len].to_vec())
    }

    pub fn suffix(&self, len: usize) -> Word {
        Word(self.0[self.len() - len..].to_vec())
    }

    pub fn starts_with(&self, other: &Word) -> bool {
        self.0.starts_with(&other.0)
    }
}

impl From<&[Letter]> for Word {
    fn from(letters: &[Letter]) -> Self {
        Word(letters.to_vec())
    }
}

impl From<&str> for Word {
    fn from(s: &str) -> Self {
        Word(s.chars().map(Letter).collect())
    }
}

impl FromStr for Word {
    type Err = std::convert::Infallible;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(Word::from(s))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{}", l.0)?;
        }
        Ok(())
    }
}

impl Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        Ok(Word::from(s.as_str()))
    }
}

pub fn is_palindrome(w: &[Letter]) -> bool {
    let n = w.len();
    (0..n / 2).all(|i| w[i] == w[n - 1 - i])
}

/// All distinct palindromic factors of `w`, including the empty word.
///
/// Expands around each of the `2|w| + 1` centers and keeps an occurrence
/// only if it is the first occurrence of its content, which is the case
/// exactly when it is longer than the longest common prefix of its suffix
/// with every earlier suffix. Quadratic time, linear extra space; used as
/// the reference oracle.
pub fn palindrome_language(w: &Word) -> HashSet<Word> {
    let s = w.letters();
    let n = s.len();
    // seen[i] = max over j < i of lcp(s[j..], s[i..])
    let mut seen = vec![0usize; n];
    for d in 1..n {
        let mut run = 0;
        for j in (0..n - d).rev() {
            run = if s[j] == s[j + d] { run + 1 } else { 0 };
            seen[j + d] = seen[j + d].max(run);
        }
    }
    let mut out = HashSet::new();
    out.insert(Word::empty());
    // center c in 0..2n-1: odd centers at letters, even centers between letters
    for c in 0..(2 * n).saturating_sub(1) {
        let (mut lo, mut hi) = if c % 2 == 0 {
            (c / 2, c / 2)
        } else {
            (c / 2, c / 2 + 1)
        };
        loop {
            if s[lo] != s[hi] {
                break;
            }
            if hi - lo + 1 > seen[lo] {
                out.insert(Word::from(&s[lo..=hi]));
            }
            if lo == 0 || hi + 1 == n {
                break;
            }
            lo -= 1;
            hi += 1;
        }
    }
    out
}

/// Maximal constant blocks of a word, in order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunLength {
    pub blocks: Vec<(Letter, usize)>,
}

impl RunLength {
    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn lengths(&self) -> Vec<usize> {
        self.blocks.iter().map(|&(_, n)| n).collect()
    }

    pub fn letters(&self) -> Vec<Letter> {
        self.blocks.iter().map(|&(l, _)| l).collect()
    }

    pub fn total_len(&self) -> usize {
        self.blocks.iter().map(|&(_, n)| n).sum()
    }
}

pub fn run_length(w: &[Letter]) -> RunLength {
    let mut blocks: Vec<(Letter, usize)> = Vec::new();
    for &l in w {
        match blocks.last_mut() {
            Some((last, n)) if *last == l => *n += 1,
            _ => blocks.push((l, 1)),
        }
    }
    RunLength { blocks }
}

/// Number of constant blocks, without materializing them.
pub fn block_count(w: &[Letter]) -> usize {
    if w.is_empty() {
        return 0;
    }
    1 + w.windows(2).filter(|p| p[0] != p[1]).count()
}

/// Shortest `S` and largest `e` with `w = S^e`.
pub fn primitive_root(w: &Word) -> Result<(Word, usize), WordError> {
    let s = w.letters();
    let n = s.len();
    if n == 0 {
        return Err(WordError::EmptyWord);
    }
    for d in (1..=n).filter(|d| n.is_multiple_of(*d)) {
        if (d..n).all(|i| s[i] == s[i - d]) {
            return Ok((Word::from(&s[..d]), n / d));
        }
    }
    unreachable!("d = n always succeeds")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::from(s)
    }

    /// Brute force over all (i, j) substrings.
    fn brute_palindromes(s: &Word) -> HashSet<Word> {
        let l = s.letters();
        let mut out = HashSet::new();
        out.insert(Word::empty());
        for i in 0..l.len() {
            for j in i + 1..=l.len() {
                if is_palindrome(&l[i..j]) {
                    out.insert(Word::from(&l[i..j]));
                }
            }
        }
        out
    }

    #[test]
    fn palindrome_predicate() {
        assert!(is_palindrome(w("baaab").letters()));
        assert!(is_palindrome(w("").letters()));
        assert!(!is_palindrome(w("ab").letters()));
    }

    #[test]
    fn palindrome_language_examples() {
        let aaa = palindrome_language(&w("aaa"));
        assert_eq!(aaa.len(), 4);
        for p in ["", "a", "aa", "aaa"] {
            assert!(aaa.contains(&w(p)));
        }

        let pal = palindrome_language(&w("ababb"));
        let expected: HashSet<Word> = ["", "a", "b", "aba", "bab", "bb"]
            .iter()
            .map(|s| w(s))
            .collect();
        assert_eq!(pal, expected);
        assert_eq!(brute_palindromes(&w("ababb")), expected);

        let ab = palindrome_language(&w("ab"));
        assert_eq!(ab.len(), 3);
        assert_eq!(palindrome_language(&w("")).len(), 1);
    }

    #[test]
    fn center_expansion_matches_brute_force_exhaustively() {
        for len in 0..=10u32 {
            for mask in 0..(1u32 << len) {
                let word: Word = Word::from_letters(
                    (0..len)
                        .map(|i| Letter(if mask >> i & 1 == 1 { 'b' } else { 'a' }))
                        .collect(),
                );
                assert_eq!(
                    palindrome_language(&word),
                    brute_palindromes(&word),
                    "{word}"
                );
            }
        }
    }

    #[test]
    fn run_length_examples() {
        assert_eq!(
            run_length(w("appelle").letters()).lengths(),
            vec![1, 2, 1, 2, 1]
        );
        assert_eq!(
            run_length(w("11112111211211").letters()).lengths(),
            vec![4, 1, 3, 1, 2, 1, 2]
        );
        assert!(run_length(&[]).blocks.is_empty());
        assert_eq!(block_count(w("appelle").letters()), 5);
        assert_eq!(block_count(&[]), 0);
    }

    #[test]
    fn primitive_root_examples() {
        assert_eq!(primitive_root(&w("0000000000")).unwrap(), (w("0"), 10));
        assert_eq!(primitive_root(&w("abab")).unwrap(), (w("ab"), 2));
        assert_eq!(primitive_root(&w("aab")).unwrap(), (w("aab"), 1));
        assert_eq!(primitive_root(&w("")), Err(WordError::EmptyWord));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn word_strategy(alphabet: &'static [char], max: usize) -> impl Strategy<Value = Word> {
            proptest::collection::vec(proptest::sample::select(alphabet), 0..max)
                .prop_map(|v| Word::from_letters(v.into_iter().map(Letter).collect()))
        }

        proptest! {
            #[test]
            fn reverse_is_involution(word in word_strategy(&['a', 'b', 'c'], 40)) {
                prop_assert_eq!(word.reversed().reversed(), word);
            }

            #[test]
            fn at_most_len_plus_one_palindromes(word in word_strategy(&['a', 'b', 'c'], 120)) {
                prop_assert!(palindrome_language(&word).len() <= word.len() + 1);
            }

            #[test]
            fn powers_of_a_common_root_commute(
                root in word_strategy(&['a', 'b'], 6),
                i in 0usize..5,
                j in 0usize..5,
            ) {
                let a = root.pow(i);
                let b = root.pow(j);
                prop_assert_eq!(a.concat(&b), b.concat(&a));
            }

            #[test]
            fn block_count_invariant_under_renaming(word in word_strategy(&['a', 'b', 'c'], 60)) {
                let renamed = Word::from_letters(
                    word.letters()
                        .iter()
                        .map(|l| Letter(match l.0 { 'a' => 'c', 'b' => 'a', _ => 'b' }))
                        .collect(),
                );
                prop_assert_eq!(
                    run_length(word.letters()).block_count(),
                    run_length(renamed.letters()).block_count()
                );
            }

            #[test]
            fn primitive_root_reconstructs(word in word_strategy(&['a', 'b'], 30)) {
                prop_assume!(!word.is_empty());
                let (root, e) = primitive_root(&word).unwrap();
                prop_assert_eq!(word.len() % root.len(), 0);
                prop_assert_eq!(root.pow(e), word.clone());
                // the root itself is primitive
                prop_assert_eq!(primitive_root(&root).unwrap().1, 1);
            }
        }

        #[test]
        fn unary_words_are_tight() {
            for n in 0..50 {
                let word = Word::power_of(Letter('a'), n);
                assert_eq!(palindrome_language(&word).len(), n + 1);
            }
        }
    }
}
