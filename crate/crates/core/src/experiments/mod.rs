//! Reproduction harness: counting-bound suites over batches of trees and
//! growth-exponent fits over the hair-comb family.

pub mod random;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::comb::{build_comb, closed_form_counts, comb_size, CombError};
use crate::language::{
    classify, tree_language, tree_palindromes_with, Algorithm, EnumerateOptions, LanguageError,
};
use crate::sidon::is_prime;
use crate::tree::LabeledTree;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExperimentError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("the comb family needs primes >= 5, got {0}")]
    PrimeTooSmall(u64),
    #[error("a fit needs at least 3 distinct primes, got {0}")]
    TooFewPoints(usize),
    #[error("prime {p} is above the enumeration cap {cap}")]
    AboveEnumerationCap { p: u64, cap: u64 },
    #[error(
        "p = {p}: enumeration found {enumerated} palindromes, closed form gives {closed_form}"
    )]
    CrossCheckMismatch {
        p: u64,
        enumerated: u64,
        closed_form: u64,
    },
    #[error(transparent)]
    Comb(#[from] CombError),
    #[error(transparent)]
    Language(#[from] LanguageError),
}

/// Per-tree outcome of [`run_bound_suite`].
#[derive(Debug, Clone, Serialize)]
pub struct TreeBounds {
    pub index: usize,
    pub size: usize,
    pub blocks: usize,
    pub alphabet: usize,
    pub language: usize,
    /// `|L(T)| <= |T|^2 + 1`
    pub language_ok: bool,
    /// Palindromes including ε.
    pub palindromes: usize,
    pub nonempty: usize,
    pub threadlike: bool,
    /// `|Pal| <= |T| + 1` for threadlike trees.
    pub word_bound_ok: Option<bool>,
    /// More nonempty palindromes than edges, which words never have.
    pub exceeds_word_bound: bool,
    /// `|Pal| <= |T| + 1` when every factor has at most two blocks.
    pub two_block_ok: Option<bool>,
    /// `2 |Σ|^2 |T|^{3/2} + |T|` when every factor has at most four blocks.
    pub four_block_bound: Option<f64>,
    pub four_block_ok: Option<bool>,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundSuiteReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub trees: Vec<TreeBounds>,
    pub pass: bool,
}

pub fn check_bounds(index: usize, t: &LabeledTree) -> TreeBounds {
    let n = t.size();
    let language = tree_language(t).len();
    let pal = tree_palindromes_with(t, &EnumerateOptions::new(Algorithm::Oracle))
        .expect("oracle enumeration cannot fail");
    let blocks = classify(t);
    let sigma = t.alphabet().len();
    let threadlike = t.is_threadlike();
    let language_ok = language <= n * n + 1;
    let word_bound_ok = threadlike.then_some(pal.total <= n + 1);
    let two_block_ok = (blocks <= 2).then_some(pal.total <= n + 1);
    let four_block_bound =
        (blocks <= 4).then(|| 2.0 * (sigma * sigma) as f64 * (n as f64).powf(1.5) + n as f64);
    let four_block_ok = four_block_bound.map(|b| (pal.total as f64) <= b);
    let pass = language_ok
        && word_bound_ok.unwrap_or(true)
        && two_block_ok.unwrap_or(true)
        && four_block_ok.unwrap_or(true);
    TreeBounds {
        index,
        size: n,
        blocks,
        alphabet: sigma,
        language,
        language_ok,
        palindromes: pal.total,
        nonempty: pal.nonempty,
        threadlike,
        word_bound_ok,
        exceeds_word_bound: pal.nonempty > n,
        two_block_ok,
        four_block_bound,
        four_block_ok,
        pass,
    }
}

/// Checks the language-size bound, the word palindrome bound on threadlike
/// trees, the two-block bound and the four-block bound on each tree.
/// Trees are checked in parallel; results keep input order.
pub fn run_bound_suite(trees: &[LabeledTree]) -> BoundSuiteReport {
    let trees: Vec<TreeBounds> = trees
        .par_iter()
        .enumerate()
        .map(|(i, t)| check_bounds(i, t))
        .collect();
    let pass = trees.iter().all(|t| t.pass);
    BoundSuiteReport {
        seed: None,
        trees,
        pass,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum FitMode {
    ClosedForm,
    Enumerate,
}

impl std::fmt::Display for FitMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            FitMode::ClosedForm => "closed_form",
            FitMode::Enumerate => "enumerate",
        })
    }
}

#[derive(Debug, Clone, Copy)]
pub struct FitOptions {
    pub mode: FitMode,
    /// Largest prime enumerated in `Enumerate` mode.
    pub enumerate_cap: u64,
    /// Primes up to this value use the oracle; above it the hashed
    /// enumerator with collision verification.
    pub oracle_cap: u64,
}

impl Default for FitOptions {
    fn default() -> Self {
        FitOptions {
            mode: FitMode::ClosedForm,
            enumerate_cap: 13,
            oracle_cap: 13,
        }
    }
}

impl FitOptions {
    pub fn new(mode: FitMode) -> Self {
        FitOptions {
            mode,
            ..Default::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FitPoint {
    pub p: u64,
    pub size: u64,
    pub palindromes: u64,
    pub mode: FitMode,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FitResult {
    pub points: Vec<FitPoint>,
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

impl FitResult {
    pub fn csv(&self) -> String {
        let mut out = String::from("p,size,palindromes,mode\n");
        for pt in &self.points {
            out.push_str(&format!(
                "{},{},{},{}\n",
                pt.p, pt.size, pt.palindromes, pt.mode
            ));
        }
        out
    }
}

/// Ordinary least squares `y = slope x + intercept`.
pub fn least_squares(xs: &[f64], ys: &[f64]) -> (f64, f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let r_squared = if syy == 0.0 {
        1.0
    } else {
        sxy * sxy / (sxx * syy)
    };
    (slope, intercept, r_squared)
}

/// Palindrome total of the comb for `p`, enumerated and cross-checked
/// against the closed form.
pub fn enumerate_comb_total(p: u64, opts: &FitOptions) -> Result<u64, ExperimentError> {
    if p > opts.enumerate_cap {
        return Err(ExperimentError::AboveEnumerationCap {
            p,
            cap: opts.enumerate_cap,
        });
    }
    let (tree, _) = build_comb(p)?;
    let enum_opts = if p <= opts.oracle_cap {
        EnumerateOptions::new(Algorithm::Oracle)
    } else {
        EnumerateOptions::new(Algorithm::Hashed).verified()
    };
    let enumerated = tree_palindromes_with(&tree, &enum_opts)?.total as u64;
    let closed_form = closed_form_counts(p)?.total;
    if enumerated != closed_form {
        return Err(ExperimentError::CrossCheckMismatch {
            p,
            enumerated,
            closed_form,
        });
    }
    Ok(enumerated)
}

/// Slope of log(palindromes) against log(size) across the comb family.
pub fn fit_exponent(primes: &[u64], opts: &FitOptions) -> Result<FitResult, ExperimentError> {
    let mut primes = primes.to_vec();
    primes.sort_unstable();
    primes.dedup();
    for &p in &primes {
        if !is_prime(p) {
            return Err(ExperimentError::NotPrime(p));
        }
        if p < 5 {
            return Err(ExperimentError::PrimeTooSmall(p));
        }
    }
    if primes.len() < 3 {
        return Err(ExperimentError::TooFewPoints(primes.len()));
    }
    let points = primes
        .iter()
        .map(|&p| {
            let palindromes = match opts.mode {
                FitMode::ClosedForm => closed_form_counts(p)?.total,
                FitMode::Enumerate => enumerate_comb_total(p, opts)?,
            };
            Ok(FitPoint {
                p,
                size: comb_size(p),
                palindromes,
                mode: opts.mode,
            })
        })
        .collect::<Result<Vec<_>, ExperimentError>>()?;
    let xs: Vec<f64> = points.iter().map(|pt| (pt.size as f64).ln()).collect();
    let ys: Vec<f64> = points
        .iter()
        .map(|pt| (pt.palindromes as f64).ln())
        .collect();
    let (slope, intercept, r_squared) = least_squares(&xs, &ys);
    Ok(FitResult {
        points,
        slope,
        intercept,
        r_squared,
    })
}
