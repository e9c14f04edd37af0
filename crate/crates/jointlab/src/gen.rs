//! Seeded, reproducible graph generators. The generator is SplitMix64, a
//! 64-bit counter-based mixer, chosen so any other implementation can
//! reproduce instances bit-exactly from the written recipe:
//!
//!   state <- seed
//!   next(): state <- state + 0x9E3779B97F4A7C15 (mod 2^64)
//!           z <- state
//!           z <- (z XOR (z >> 30)) * 0xBF58476D1CE4E5B9 (mod 2^64)
//!           z <- (z XOR (z >> 27)) * 0x94D049BB133111EB (mod 2^64)
//!           return z XOR (z >> 31)
//!
//! Uniform draws below a bound use rejection on the top range so they are
//! exactly uniform: with rem = 2^64 mod bound, a word w is accepted iff
//! w <= 2^64 - 1 - rem, and the draw is w mod bound.
//!
//! Edge ranks live in [0, C(n,2)) and decode colexicographically:
//! rank e maps to the pair (u, v) with v the largest integer satisfying
//! C(v,2) <= e and u = e - C(v,2), giving 0 <= u < v < n.

use crate::graph::Graph;
use crate::turan::{turan_graph, TuranParams};
use crate::{Error, Result};
use std::collections::BTreeSet;

#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }

    /// Exactly uniform draw from [0, bound) by top-range rejection.
    pub fn next_below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "bound must be positive");
        let rem = (((u64::MAX % bound) + 1) % bound) as u128;
        let limit = (u64::MAX as u128 - rem) as u64;
        loop {
            let w = self.next_u64();
            if w <= limit {
                return w % bound;
            }
        }
    }
}

/// Colexicographic pair decoding: rank -> (u, v) with u < v.
pub fn unrank_pair(rank: u64) -> (usize, usize) {
    // largest v with v(v-1)/2 <= rank
    let mut v = ((1.0 + (1.0 + 8.0 * rank as f64).sqrt()) / 2.0) as u64;
    while v * (v - 1) / 2 > rank {
        v -= 1;
    }
    while (v + 1) * v / 2 <= rank {
        v += 1;
    }
    let u = rank - v * (v - 1) / 2;
    (u as usize, v as usize)
}

fn pair_count(n: usize) -> u64 {
    let n = n as u64;
    n * n.saturating_sub(1) / 2
}

/// Test helper: each of the C(n,2) pairs becomes an edge with one fresh
/// generator bit, most-significant first within each drawn word.
pub fn gnp_half(n: usize, rng: &mut SplitMix64) -> Graph {
    let mut edges = Vec::new();
    let mut bits = 0u64;
    let mut left = 0u32;
    for u in 0..n {
        for v in (u + 1)..n {
            if left == 0 {
                bits = rng.next_u64();
                left = 64;
            }
            if bits >> 63 == 1 {
                edges.push((u, v));
            }
            bits <<= 1;
            left -= 1;
        }
    }
    Graph::new(n, &edges).expect("generated pairs are valid")
}

/// G(n, m): m distinct edges drawn uniformly. Ranks are drawn with
/// `next_below(C(n,2))` and inserted into a set until m are distinct.
pub fn gnm(n: usize, m: u64, seed: u64) -> Result<Graph> {
    let total = pair_count(n);
    if m > total {
        return Err(Error::InvalidParam(format!(
            "m = {} exceeds C({}, 2) = {}",
            m, n, total
        )));
    }
    let mut rng = SplitMix64::new(seed);
    let mut ranks: BTreeSet<u64> = BTreeSet::new();
    while (ranks.len() as u64) < m {
        ranks.insert(rng.next_below(total));
    }
    let edges: Vec<(usize, usize)> = ranks.iter().map(|&r| unrank_pair(r)).collect();
    Graph::new(n, &edges)
}

fn intra_class_pairs(params: &TuranParams) -> Vec<(u64, usize)> {
    // cumulative rank space of within-class pairs: (space size, class start)
    let mut spans = Vec::new();
    let mut start = 0usize;
    for size in params.class_sizes() {
        spans.push((pair_count(size), start));
        start += size;
    }
    spans
}

fn decode_intra(spans: &[(u64, usize)], mut rank: u64) -> (usize, usize) {
    for &(span, start) in spans {
        if rank < span {
            let (u, v) = unrank_pair(rank);
            return (start + u, start + v);
        }
        rank -= span;
    }
    unreachable!("rank below total span");
}

/// The extremal r-partite graph plus `extra` distinct edges drawn uniformly
/// from the within-class pairs.
pub fn turan_plus_edges(n: usize, r: usize, extra: u64, seed: u64) -> Result<Graph> {
    let params = TuranParams::new(n, r)?;
    let spans = intra_class_pairs(&params);
    let total: u64 = spans.iter().map(|&(s, _)| s).sum();
    if extra > total {
        return Err(Error::InvalidParam(format!(
            "extra = {} exceeds the {} within-class pairs",
            extra, total
        )));
    }
    let mut edges = turan_graph(n, r)?.edges();
    if extra > 0 {
        let mut rng = SplitMix64::new(seed);
        let mut ranks: BTreeSet<u64> = BTreeSet::new();
        while (ranks.len() as u64) < extra {
            ranks.insert(rng.next_below(total));
        }
        edges.extend(ranks.iter().map(|&rank| decode_intra(&spans, rank)));
    }
    Graph::new(n, &edges)
}

/// The extremal r-partite graph with `add` within-class edges added and
/// `delete` of its own edges removed. Additions are drawn first (as in
/// `turan_plus_edges`), then deletions are drawn as pair ranks over the full
/// C(n,2) space, rejecting pairs that are not (remaining) original edges.
pub fn turan_perturbed(n: usize, r: usize, delete: u64, add: u64, seed: u64) -> Result<Graph> {
    let params = TuranParams::new(n, r)?;
    let base = turan_graph(n, r)?;
    if delete > base.edge_count() {
        return Err(Error::InvalidParam(format!(
            "cannot delete {} of {} edges",
            delete,
            base.edge_count()
        )));
    }
    let spans = intra_class_pairs(&params);
    let intra_total: u64 = spans.iter().map(|&(s, _)| s).sum();
    if add > intra_total {
        return Err(Error::InvalidParam(format!(
            "add = {} exceeds the {} within-class pairs",
            add, intra_total
        )));
    }
    let mut rng = SplitMix64::new(seed);
    let mut added: BTreeSet<u64> = BTreeSet::new();
    while (added.len() as u64) < add {
        added.insert(rng.next_below(intra_total));
    }
    let mut deleted: BTreeSet<(usize, usize)> = BTreeSet::new();
    let all_pairs = pair_count(n);
    while (deleted.len() as u64) < delete {
        let (u, v) = unrank_pair(rng.next_below(all_pairs));
        if base.has_edge(u, v) {
            deleted.insert((u, v));
        }
    }
    let mut edges = base.edges();
    edges.retain(|e| !deleted.contains(e));
    edges.extend(added.iter().map(|&rank| decode_intra(&spans, rank)));
    Graph::new(n, &edges)
}
