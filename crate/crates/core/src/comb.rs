//! Hair-comb trees built from the Erdős–Turán Sidon set.
//!
//! The backbone is a path of `0`-labeled edges through `p - 1` junction
//! nodes, consecutive junctions being `b_1, ..., b_{p-2}` edges apart. Each
//! junction carries one tooth: a path of `p` edges labeled `1` ending in a
//! leaf. Because the backbone gaps have pairwise-distinct contiguous sums,
//! every pair of teeth contributes its own family of `1^x 0^y 1^x`
//! palindromes.

use serde::Serialize;
use thiserror::Error;

use crate::sidon::{difference_sequence, erdos_turan, DifferenceSequence, SidonError};
use crate::tree::{LabeledTree, NodeId};
use crate::word::Letter;

pub const BACKBONE: Letter = Letter('0');
pub const TOOTH: Letter = Letter('1');

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CombError {
    #[error(transparent)]
    Sidon(#[from] SidonError),
    #[error("the comb needs a prime p >= 5, got {0}")]
    PrimeTooSmall(u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CombSpec {
    pub p: u64,
    pub b: DifferenceSequence,
    pub tooth_length: u64,
    pub tooth_count: u64,
    /// Junction node ids, left to right.
    pub junctions: Vec<NodeId>,
    /// Leaf at the end of the tooth hanging from `junctions[i]`.
    pub tooth_tips: Vec<NodeId>,
}

impl CombSpec {
    pub fn edge_count(&self) -> u64 {
        self.b.total() + self.tooth_length * self.tooth_count
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CombCounts {
    pub c0: u64,
    pub c1: u64,
    pub c101: u64,
    pub total: u64,
}

fn check_prime(p: u64) -> Result<(), CombError> {
    // erdos_turan validates primality and the upper cap
    erdos_turan(p)?;
    if p < 5 {
        return Err(CombError::PrimeTooSmall(p));
    }
    Ok(())
}

pub fn build_comb(p: u64) -> Result<(LabeledTree, CombSpec), CombError> {
    check_prime(p)?;
    let b = difference_sequence(&erdos_turan(p)?)?;
    let (tree, junctions, tooth_tips) = comb_from_gaps(&b, p);
    let spec = CombSpec {
        p,
        b,
        tooth_length: p,
        tooth_count: p - 1,
        junctions,
        tooth_tips,
    };
    Ok((tree, spec))
}

/// Comb with backbone gaps `b` and one tooth of `tooth_length` edges per
/// junction. Node ids: junctions first, then backbone-internal nodes left to
/// right, then tooth nodes tooth by tooth.
pub fn comb_from_gaps(
    b: &DifferenceSequence,
    tooth_length: u64,
) -> (LabeledTree, Vec<NodeId>, Vec<NodeId>) {
    let junction_count = b.len() as u64 + 1;
    let junctions: Vec<NodeId> = (0..junction_count).collect();
    let mut next_id = junction_count;
    let mut fresh = || {
        let id = next_id;
        next_id += 1;
        id
    };
    let mut edges = Vec::new();
    for (i, &gap) in b.values().iter().enumerate() {
        let mut prev = junctions[i];
        for _ in 1..gap {
            let node = fresh();
            edges.push((prev, node, BACKBONE));
            prev = node;
        }
        edges.push((prev, junctions[i + 1], BACKBONE));
    }
    let mut tips = Vec::new();
    for &j in &junctions {
        let mut prev = j;
        for _ in 0..tooth_length {
            let node = fresh();
            edges.push((prev, node, TOOTH));
            prev = node;
        }
        tips.push(prev);
    }
    let tree = crate::tree::build_tree(&edges).expect("comb construction yields a tree");
    (tree, junctions, tips)
}

/// `c0 = 2p^2 - 4p`, `c1 = p`, `c101 = p(p-1)(p-2)/2`, `total = c0 + c1 + c101 + 1`.
pub fn closed_form_counts(p: u64) -> Result<CombCounts, CombError> {
    check_prime(p)?;
    let c0 = 2 * p * p - 4 * p;
    let c1 = p;
    let c101 = p * (p - 1) * (p - 2) / 2;
    Ok(CombCounts {
        c0,
        c1,
        c101,
        total: c0 + c1 + c101 + 1,
    })
}

/// `3p^2 - 5p`.
pub fn comb_size(p: u64) -> u64 {
    3 * p * p - 5 * p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::language::{classify, tree_palindromes, Algorithm, Shape};

    #[test]
    fn comb5_shape() {
        let (t, spec) = build_comb(5).unwrap();
        assert_eq!(t.size(), 50);
        assert_eq!(t.node_count(), 51);
        assert_eq!(t.edges().filter(|e| e.2 == BACKBONE).count(), 30);
        assert_eq!(t.edges().filter(|e| e.2 == TOOTH).count(), 20);
        assert_eq!(spec.b.values(), &[13, 10, 7]);
        assert_eq!(spec.junctions, vec![0, 1, 2, 3]);
        assert_eq!(spec.edge_count(), 50);
        assert_eq!(t.leaves(), spec.tooth_tips);
        assert_eq!(classify(&t), 3);
    }

    #[test]
    fn comb_sizes() {
        for p in [5, 7, 11, 13] {
            let (t, spec) = build_comb(p).unwrap();
            assert_eq!(t.size() as u64, comb_size(p));
            assert_eq!(spec.b.total(), 2 * p * p - 4 * p);
            assert_eq!(spec.tooth_count, p - 1);
        }
        assert_eq!(comb_size(7), 112);
    }

    #[test]
    fn rejects_bad_primes() {
        assert_eq!(
            build_comb(4).unwrap_err(),
            CombError::Sidon(SidonError::NotPrime(4))
        );
        assert_eq!(build_comb(3).unwrap_err(), CombError::PrimeTooSmall(3));
        assert_eq!(build_comb(2).unwrap_err(), CombError::PrimeTooSmall(2));
        assert_eq!(
            closed_form_counts(9).unwrap_err(),
            CombError::Sidon(SidonError::NotPrime(9))
        );
    }

    #[test]
    fn closed_forms() {
        assert_eq!(
            closed_form_counts(5).unwrap(),
            CombCounts {
                c0: 30,
                c1: 5,
                c101: 30,
                total: 66
            }
        );
        assert_eq!(closed_form_counts(7).unwrap().c101, 105);
        for p in [5, 7, 11, 13, 101] {
            assert_eq!(closed_form_counts(p).unwrap().c1, p);
        }
    }

    #[test]
    fn enumeration_matches_closed_form_for_small_primes() {
        for p in [5, 7] {
            let (t, _) = build_comb(p).unwrap();
            let r = tree_palindromes(&t, Algorithm::Oracle).unwrap();
            let c = closed_form_counts(p).unwrap();
            assert_eq!(r.total as u64, c.total);
            assert_eq!(r.count(Shape::Unary(BACKBONE)) as u64, c.c0);
            assert_eq!(r.count(Shape::Unary(TOOTH)) as u64, c.c1);
            assert_eq!(r.count(Shape::ThreeBlock(TOOTH, BACKBONE)) as u64, c.c101);
            assert_eq!(r.count(Shape::Other), 0);
        }
    }

    #[test]
    fn edge_list_is_deterministic() {
        let a = build_comb(7).unwrap().0.to_edge_list();
        let b = build_comb(7).unwrap().0.to_edge_list();
        assert_eq!(a, b);
        assert!(a.starts_with("0 6 0\n"));
    }
}
