//! Deterministic test-graph corpora: every digraph on 3 and 4 nodes up to
//! isomorphism, plus seeded sparse random digraphs for larger N.

use crate::graph::DirectedGraph;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn ordered_pairs(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(n * (n - 1));
    for i in 1..=n {
        for j in 1..=n {
            if i != j {
                out.push((i, j));
            }
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    // perm[i-1] is the image of node i
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (1..=n).collect();
    fn heap(k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == 1 {
            out.push(cur.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, cur, out);
            if k % 2 == 0 {
                cur.swap(i, k - 1);
            } else {
                cur.swap(0, k - 1);
            }
        }
    }
    heap(n, &mut cur, &mut out);
    out.sort();
    out
}

/// Lexicographically minimal edge bitmask over all node relabelings.
fn canonical_mask(n: usize, mask: u64, pairs: &[(usize, usize)], perms: &[Vec<usize>]) -> u64 {
    let mut index = vec![vec![0usize; n + 1]; n + 1];
    for (t, &(i, j)) in pairs.iter().enumerate() {
        index[i][j] = t;
    }
    let mut best = u64::MAX;
    for perm in perms {
        let mut m = 0u64;
        for (t, &(i, j)) in pairs.iter().enumerate() {
            if mask >> t & 1 == 1 {
                m |= 1 << index[perm[i - 1]][perm[j - 1]];
            }
        }
        best = best.min(m);
    }
    best
}

/// All digraphs on n nodes up to isomorphism, as canonical representatives
/// in a deterministic order (edge count, then bitmask). Intended for small n
/// (the count is 16 for n=3 and 218 for n=4).
pub fn all_digraphs_up_to_iso(n: usize) -> Vec<DirectedGraph> {
    let pairs = ordered_pairs(n);
    let perms = permutations(n);
    assert!(pairs.len() <= 20, "enumeration is for small n only");
    let mut reps: Vec<u64> = (0..1u64 << pairs.len())
        .filter(|&mask| canonical_mask(n, mask, &pairs, &perms) == mask)
        .collect();
    reps.sort_by_key(|m| (m.count_ones(), *m));
    reps.into_iter()
        .map(|mask| {
            let edges: Vec<(usize, usize)> = pairs
                .iter()
                .enumerate()
                .filter(|(t, _)| mask >> t & 1 == 1)
                .map(|(_, e)| *e)
                .collect();
            DirectedGraph::new(n, &edges).expect("valid by construction")
        })
        .collect()
}

/// Seeded random digraphs over the node counts in `ns`, each with at most
/// `max_edges` edges. Deterministic for a fixed seed.
pub fn random_sparse_digraphs(
    seed: u64,
    count: usize,
    ns: &[usize],
    max_edges: usize,
) -> Vec<DirectedGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let n = ns[rng.random_range(0..ns.len())];
        let mut pairs = ordered_pairs(n);
        // Fisher-Yates, then take a prefix
        for i in (1..pairs.len()).rev() {
            let j = rng.random_range(0..=i);
            pairs.swap(i, j);
        }
        let m = rng.random_range(0..=max_edges.min(pairs.len()));
        let mut edges: Vec<(usize, usize)> = pairs[..m].to_vec();
        edges.sort();
        out.push(DirectedGraph::new(n, &edges).expect("valid by construction"));
    }
    out
}

/// The acceptance corpus: all digraphs with N=3,4 up to isomorphism plus 50
/// seeded random graphs with N in {5,6} and at most 12 edges. Names sort in
/// the order the graphs are generated.
pub fn acceptance_corpus(seed: u64) -> Vec<(String, DirectedGraph)> {
    let mut out = Vec::new();
    for n in [3, 4] {
        for (i, g) in all_digraphs_up_to_iso(n).into_iter().enumerate() {
            out.push((format!("iso_n{n}_{i:03}.json"), g));
        }
    }
    for (i, g) in random_sparse_digraphs(seed, 50, &[5, 6], 12)
        .into_iter()
        .enumerate()
    {
        out.push((format!("rand_{i:03}.json"), g));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn iso_counts_match_oeis() {
        // unlabeled digraphs (loops excluded): 3 on 2 nodes, 16 on 3, 218 on 4
        assert_eq!(all_digraphs_up_to_iso(2).len(), 3);
        assert_eq!(all_digraphs_up_to_iso(3).len(), 16);
        assert_eq!(all_digraphs_up_to_iso(4).len(), 218);
    }

    #[test]
    fn representatives_are_canonical_and_distinct() {
        let gs = all_digraphs_up_to_iso(3);
        let pairs = ordered_pairs(3);
        let perms = permutations(3);
        let mut masks: Vec<u64> = gs
            .iter()
            .map(|g| {
                let mut m = 0u64;
                for (t, &(i, j)) in pairs.iter().enumerate() {
                    if g.cost(i, j) == 1 {
                        m |= 1 << t;
                    }
                }
                m
            })
            .collect();
        for &m in &masks {
            assert_eq!(canonical_mask(3, m, &pairs, &perms), m);
        }
        masks.dedup();
        assert_eq!(masks.len(), gs.len());
    }

    #[test]
    fn random_graphs_deterministic_and_bounded() {
        let a = random_sparse_digraphs(42, 50, &[5, 6], 12);
        let b = random_sparse_digraphs(42, 50, &[5, 6], 12);
        assert_eq!(a.len(), 50);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.n(), y.n());
            assert_eq!(x.edges(), y.edges());
            assert!(x.edges().len() <= 12);
            assert!(x.n() == 5 || x.n() == 6);
        }
        let c = random_sparse_digraphs(43, 50, &[5, 6], 12);
        assert!(a.iter().zip(&c).any(|(x, y)| x.edges() != y.edges()));
    }

    #[test]
    fn corpus_names_are_sorted_and_unique() {
        let corpus = acceptance_corpus(1);
        assert_eq!(corpus.len(), 16 + 218 + 50);
        let mut names: Vec<&String> = corpus.iter().map(|(n, _)| n).collect();
        let orig = names.clone();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), corpus.len());
        assert_eq!(orig, names);
    }
}
