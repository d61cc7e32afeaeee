//! Seeded random trees for property suites.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::tree::{build_tree, LabeledTree, NodeId};
use crate::word::Letter;

pub type TreeRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> TreeRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// The first `size` letters of `a, b, c, ...`.
pub fn alphabet(size: usize) -> Vec<Letter> {
    assert!((1..=26).contains(&size), "alphabet size must be in 1..=26");
    (b'a'..).take(size).map(|c| Letter(c as char)).collect()
}

/// Uniform labeled tree on `edges + 1` nodes, decoded from a random Prüfer
/// sequence, with independently uniform edge letters.
pub fn random_tree<R: Rng>(rng: &mut R, edges: usize, letters: &[Letter]) -> LabeledTree {
    let n = edges + 1;
    if n == 1 {
        return LabeledTree::single_node(0);
    }
    let pick = |rng: &mut R| *letters.choose(rng).expect("nonempty alphabet");
    if n == 2 {
        return build_tree(&[(0, 1, pick(rng))]).unwrap();
    }
    let code: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let pairs = decode_pruefer(&code, n);
    let labeled: Vec<(NodeId, NodeId, Letter)> = pairs
        .into_iter()
        .map(|(a, b)| (a as NodeId, b as NodeId, pick(rng)))
        .collect();
    build_tree(&labeled).expect("Prüfer decoding yields a tree")
}

fn decode_pruefer(code: &[usize], n: usize) -> Vec<(usize, usize)> {
    let mut degree = vec![1usize; n];
    for &c in code {
        degree[c] += 1;
    }
    let mut leaves: std::collections::BinaryHeap<std::cmp::Reverse<usize>> = (0..n)
        .filter(|&i| degree[i] == 1)
        .map(std::cmp::Reverse)
        .collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &c in code {
        let std::cmp::Reverse(leaf) = leaves.pop().unwrap();
        edges.push((leaf, c));
        degree[c] -= 1;
        if degree[c] == 1 {
            leaves.push(std::cmp::Reverse(c));
        }
    }
    let std::cmp::Reverse(a) = leaves.pop().unwrap();
    let std::cmp::Reverse(b) = leaves.pop().unwrap();
    edges.push((a, b));
    edges
}

/// Random tree of `edges` edges in which every factor has at most
/// `max_blocks` blocks. Nodes are attached one at a time to a uniformly
/// chosen earlier node with a uniform letter; an attachment that would create
/// a factor with too many blocks is rejected and redrawn.
pub fn random_tree_in_family<R: Rng>(
    rng: &mut R,
    edges: usize,
    letters: &[Letter],
    max_blocks: usize,
) -> LabeledTree {
    assert!(max_blocks >= 1);
    let mut adj: Vec<Vec<(usize, Letter)>> = vec![Vec::new()];
    let mut list = Vec::with_capacity(edges);
    for new in 1..=edges {
        let mut choice = None;
        for _ in 0..32 {
            let parent = rng.gen_range(0..new);
            let letter = *letters.choose(rng).unwrap();
            if max_blocks_through(&adj, parent, letter) <= max_blocks {
                choice = Some((parent, letter));
                break;
            }
        }
        let (parent, letter) = choice.unwrap_or_else(|| {
            // exhaustive fallback; extending a leaf with its own letter
            // never adds a block, so some candidate always fits
            let mut all: Vec<(usize, Letter)> = (0..new)
                .flat_map(|p| letters.iter().map(move |&l| (p, l)))
                .collect();
            all.shuffle(rng);
            all.into_iter()
                .find(|&(p, l)| max_blocks_through(&adj, p, l) <= max_blocks)
                .expect("a leaf extension always fits")
        });
        adj.push(Vec::new());
        adj[parent].push((new, letter));
        adj[new].push((parent, letter));
        list.push((parent as NodeId, new as NodeId, letter));
    }
    if list.is_empty() {
        LabeledTree::single_node(0)
    } else {
        build_tree(&list).unwrap()
    }
}

/// Largest block count among paths from a new leaf hung off `parent` by an
/// edge labeled `letter`.
fn max_blocks_through(adj: &[Vec<(usize, Letter)>], parent: usize, letter: Letter) -> usize {
    // (node, came from, last letter, blocks so far)
    let mut stack = vec![(parent, usize::MAX, letter, 1usize)];
    let mut best = 1;
    while let Some((x, from, last, blocks)) = stack.pop() {
        best = best.max(blocks);
        for &(y, l) in &adj[x] {
            if y != from {
                stack.push((y, x, l, blocks + (l != last) as usize));
            }
        }
    }
    best
}
