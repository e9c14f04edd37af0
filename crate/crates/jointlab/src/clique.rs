//! Exact clique counting and search. Counting uses a pivot-pruned recursion:
//! at each node one pivot vertex is made optional and only its non-neighbors
//! branch, so every clique of the graph is accounted for exactly once at a
//! leaf as "required set plus any subset of the accumulated pivots". Counts
//! come out as binomials of pivot counts, never by materializing cliques, so
//! even graphs whose clique counts overflow machine words are fine.

use crate::bitset::BitSet;
use crate::exact::{binomial, format_rational, rational_from_uint};
use crate::graph::Graph;
use crate::{Error, Result};
use num::{BigRational, BigUint, Zero};

/// All clique counts of a graph: `counts[s-1]` = number of s-cliques,
/// 1 <= s <= omega.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueSpectrum {
    pub counts: Vec<BigUint>,
    pub omega: usize,
}

impl CliqueSpectrum {
    /// k_s; 0 outside 1..=omega.
    pub fn k(&self, s: usize) -> BigUint {
        if s >= 1 && s <= self.omega {
            self.counts[s - 1].clone()
        } else {
            BigUint::zero()
        }
    }
}

struct Pivoter<'a> {
    g: &'a Graph,
    // per-size accumulators, index = clique size
    acc: Vec<BigUint>,
    // when Some(s), only size-s cliques are accumulated and branches that
    // cannot reach size s are pruned
    target: Option<usize>,
}

impl<'a> Pivoter<'a> {
    fn new(g: &'a Graph, target: Option<usize>) -> Self {
        Pivoter {
            g,
            acc: vec![BigUint::zero(); g.n() + 1],
            target,
        }
    }

    fn run(&mut self, cand: BitSet) {
        self.recurse(cand, 0, 0);
    }

    fn recurse(&mut self, cand: BitSet, required: usize, pivots: usize) {
        if let Some(s) = self.target {
            if required > s || required + pivots + cand.count() < s {
                return;
            }
        }
        if cand.is_empty() {
            match self.target {
                Some(s) => {
                    // required <= s holds here
                    let extra = (s - required) as u64;
                    self.acc[s] += binomial(pivots as u64, extra);
                }
                None => {
                    for j in 0..=pivots {
                        self.acc[required + j] += binomial(pivots as u64, j as u64);
                    }
                }
            }
            return;
        }
        // pivot = candidate with the most candidate neighbors, lowest index on ties
        let mut pivot = usize::MAX;
        let mut best = usize::MAX;
        for v in cand.iter() {
            let c = cand.and_count(self.g.row(v));
            if pivot == usize::MAX || c > best {
                pivot = v;
                best = c;
            }
        }
        self.recurse(cand.and_words(self.g.row(pivot)), required, pivots + 1);
        let mut rest = cand.clone();
        rest.diff_assign(&BitSet::from_words(
            cand.nbits(),
            self.g.row(pivot).to_vec(),
        ));
        rest.remove(pivot);
        let mut pool = cand;
        for v in rest.iter() {
            pool.remove(v);
            self.recurse(pool.and_words(self.g.row(v)), required + 1, pivots);
        }
    }
}

/// Exact number of s-cliques. s > n yields 0; s = 1 counts vertices.
pub fn count_cliques(g: &Graph, s: usize) -> BigUint {
    count_cliques_within(g, &BitSet::universe(g.n()), s)
}

/// Exact number of s-cliques of G[cand], counted in G's labeling.
pub fn count_cliques_within(g: &Graph, cand: &BitSet, s: usize) -> BigUint {
    if s == 0 {
        return BigUint::from(1u32);
    }
    if s > cand.count() {
        return BigUint::zero();
    }
    let mut p = Pivoter::new(g, Some(s));
    p.run(cand.clone());
    std::mem::take(&mut p.acc[s])
}

/// All of k_1..k_omega in one pivot-pruned traversal.
pub fn clique_spectrum(g: &Graph) -> CliqueSpectrum {
    let mut p = Pivoter::new(g, None);
    p.run(BitSet::universe(g.n()));
    let mut counts = p.acc.split_off(1);
    while counts.last().is_some_and(|c| c.is_zero()) {
        counts.pop();
    }
    let omega = counts.len();
    CliqueSpectrum { counts, omega }
}

/// Clique number ω(G).
pub fn clique_number(g: &Graph) -> usize {
    clique_spectrum(g).omega
}

/// Lexicographically smallest s-clique under increasing-index depth-first
/// search, or None.
pub fn find_clique(g: &Graph, s: usize) -> Option<Vec<usize>> {
    if s == 0 {
        return Some(Vec::new());
    }
    if s > g.n() {
        return None;
    }
    let mut current = Vec::with_capacity(s);
    if dfs_lex(g, &BitSet::universe(g.n()), s, &mut current) {
        Some(current)
    } else {
        None
    }
}

fn dfs_lex(g: &Graph, cand: &BitSet, s: usize, current: &mut Vec<usize>) -> bool {
    if current.len() == s {
        return true;
    }
    let need = s - current.len();
    if cand.count() < need {
        return false;
    }
    for v in cand.iter() {
        current.push(v);
        let mut next = cand.and_words(g.row(v));
        // only larger indices keep the output lexicographically minimal
        for w in next.clone().iter() {
            if w <= v {
                next.remove(w);
            } else {
                break;
            }
        }
        if dfs_lex(g, &next, s, current) {
            return true;
        }
        current.pop();
    }
    false
}

/// Number of q-cliques containing the edge uv: k_{q-2} of the subgraph
/// induced by Γ(u) ∩ Γ(v). q = 2 counts the edge itself.
pub fn edge_clique_count(g: &Graph, u: usize, v: usize, q: usize) -> Result<BigUint> {
    if q < 2 {
        return Err(Error::InvalidParam("clique order q must be >= 2".into()));
    }
    if !g.has_edge(u, v) {
        return Err(Error::NotAnEdge { u, v });
    }
    if q == 2 {
        return Ok(BigUint::from(1u32));
    }
    let common = g.common_neighborhood(u, v)?;
    Ok(count_cliques_within(g, &common, q - 2))
}

/// One row of the clique-ratio chain check: for clique orders q > s > t >= 1,
/// (s+1)k_{s+1}/(s·k_s) - n/s >= (t+1)k_{t+1}/(t·k_t) - n/t.
#[derive(Clone, Debug, PartialEq)]
pub struct MoonMoserRow {
    pub s: usize,
    pub t: usize,
    pub lhs: BigRational,
    pub rhs: BigRational,
    pub holds: bool,
}

impl MoonMoserRow {
    /// "s,t,lhs_num,lhs_den,rhs_num,rhs_den,holds"
    pub fn to_csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            self.s,
            self.t,
            self.lhs.numer(),
            self.lhs.denom(),
            self.rhs.numer(),
            self.rhs.denom(),
            self.holds
        )
    }

    pub fn display_values(&self) -> String {
        format!(
            "s={} t={} lhs={} rhs={} holds={}",
            self.s,
            self.t,
            format_rational(&self.lhs),
            format_rational(&self.rhs),
            self.holds
        )
    }
}

fn ratio_term(spec: &CliqueSpectrum, n: usize, s: usize) -> BigRational {
    let num = rational_from_uint(&spec.k(s + 1)) * BigRational::from_integer((s as i64 + 1).into());
    let den = rational_from_uint(&spec.k(s)) * BigRational::from_integer((s as i64).into());
    num / den - BigRational::new((n as i64).into(), (s as i64).into())
}

/// Evaluates the Moon–Moser inequality exactly for every pair
/// ω(G) > s > t >= 1. Empty when ω(G) <= 2.
pub fn moon_moser_report(g: &Graph) -> Vec<MoonMoserRow> {
    let spec = clique_spectrum(g);
    let n = g.n();
    let mut rows = Vec::new();
    for s in 2..spec.omega {
        for t in 1..s {
            let lhs = ratio_term(&spec, n, s);
            let rhs = ratio_term(&spec, n, t);
            let holds = lhs >= rhs;
            rows.push(MoonMoserRow {
                s,
                t,
                lhs,
                rhs,
                holds,
            });
        }
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::big_rational;
    use crate::turan::turan_graph;

    fn c5() -> Graph {
        Graph::new(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]).unwrap()
    }

    /// Independent oracle: enumerate all size-s subsets and test each.
    fn naive_count(g: &Graph, s: usize) -> u64 {
        fn rec(g: &Graph, start: usize, chosen: &mut Vec<usize>, s: usize, acc: &mut u64) {
            if chosen.len() == s {
                *acc += 1;
                return;
            }
            for v in start..g.n() {
                if chosen.iter().all(|&u| g.has_edge(u, v)) {
                    chosen.push(v);
                    rec(g, v + 1, chosen, s, acc);
                    chosen.pop();
                }
            }
        }
        let mut acc = 0;
        rec(g, 0, &mut Vec::new(), s, &mut acc);
        acc
    }

    #[test]
    fn count_small_cases() {
        assert_eq!(count_cliques(&Graph::complete(4), 3), BigUint::from(4u32));
        assert_eq!(
            count_cliques(&turan_graph(5, 3).unwrap(), 3),
            BigUint::from(4u32)
        );
        assert_eq!(count_cliques(&c5(), 4), BigUint::zero());
        assert_eq!(count_cliques(&c5(), 1), BigUint::from(5u32));
        assert_eq!(count_cliques(&Graph::empty(0), 1), BigUint::zero());
    }

    #[test]
    fn spectrum_small_cases() {
        let spec = clique_spectrum(&Graph::complete(4));
        assert_eq!(spec.omega, 4);
        assert_eq!(
            spec.counts,
            [4u32, 6, 4, 1].map(BigUint::from).to_vec()
        );

        let spec = clique_spectrum(&c5());
        assert_eq!(spec.omega, 2);
        assert_eq!(spec.counts, [5u32, 5].map(BigUint::from).to_vec());

        let spec = clique_spectrum(&turan_graph(4, 2).unwrap());
        assert_eq!(spec.counts, [4u32, 4].map(BigUint::from).to_vec());

        assert_eq!(clique_spectrum(&Graph::empty(0)).omega, 0);
    }

    #[test]
    fn spectrum_of_large_complete_graph_is_binomials() {
        // counting without materialization: K_40 has ~10^12 cliques
        let spec = clique_spectrum(&Graph::complete(40));
        assert_eq!(spec.omega, 40);
        for s in 1..=40 {
            assert_eq!(spec.k(s), binomial(40, s as u64));
        }
    }

    #[test]
    fn counts_agree_with_naive_oracle_on_random_graphs() {
        let mut rng = crate::gen::SplitMix64::new(0xC11E);
        for _ in 0..60 {
            let n = (rng.next_u64() % 9) as usize;
            let g = crate::gen::gnp_half(n, &mut rng);
            let spec = clique_spectrum(&g);
            for s in 1..=n.max(1) {
                assert_eq!(
                    spec.k(s),
                    BigUint::from(naive_count(&g, s)),
                    "graph {:?} s={}",
                    g.edges(),
                    s
                );
                assert_eq!(count_cliques(&g, s), BigUint::from(naive_count(&g, s)));
            }
        }
    }

    #[test]
    fn find_clique_is_lexicographically_smallest() {
        assert_eq!(find_clique(&Graph::complete(5), 3), Some(vec![0, 1, 2]));
        assert_eq!(find_clique(&c5(), 3), None);
        assert_eq!(find_clique(&c5(), 2), Some(vec![0, 1]));
        assert_eq!(find_clique(&Graph::empty(3), 1), Some(vec![0]));
        assert_eq!(find_clique(&Graph::empty(3), 4), None);

        // T_3(5) plus an intra-class edge on {0,1} holds a K_4 through it
        let mut edges = turan_graph(5, 3).unwrap().edges();
        edges.push((0, 1));
        let g = Graph::new(5, &edges).unwrap();
        let k4 = find_clique(&g, 4).unwrap();
        assert_eq!(k4, vec![0, 1, 2, 4]);
        for i in 0..4 {
            for j in i + 1..4 {
                assert!(g.has_edge(k4[i], k4[j]));
            }
        }
    }

    #[test]
    fn per_edge_counts() {
        let k5 = Graph::complete(5);
        assert_eq!(edge_clique_count(&k5, 0, 1, 4).unwrap(), BigUint::from(3u32));
        assert_eq!(edge_clique_count(&k5, 0, 1, 2).unwrap(), BigUint::from(1u32));
        assert_eq!(edge_clique_count(&c5(), 0, 1, 3).unwrap(), BigUint::zero());

        // T_2(4) plus the intra-class edge (0,1): two triangles through it
        let mut edges = turan_graph(4, 2).unwrap().edges();
        edges.push((0, 1));
        let g = Graph::new(4, &edges).unwrap();
        assert_eq!(edge_clique_count(&g, 0, 1, 3).unwrap(), BigUint::from(2u32));

        assert!(matches!(
            edge_clique_count(&c5(), 0, 2, 3),
            Err(Error::NotAnEdge { u: 0, v: 2 })
        ));
    }

    #[test]
    fn edge_count_identity() {
        // Σ_uv edge_clique_count(uv, q) = C(q,2) · k_q
        let mut rng = crate::gen::SplitMix64::new(7);
        for _ in 0..25 {
            let n = 4 + (rng.next_u64() % 6) as usize;
            let g = crate::gen::gnp_half(n, &mut rng);
            let spec = clique_spectrum(&g);
            for q in 2..=spec.omega.max(2) {
                let total: BigUint = g
                    .edges()
                    .iter()
                    .map(|&(u, v)| edge_clique_count(&g, u, v, q).unwrap())
                    .sum();
                assert_eq!(total, spec.k(q) * binomial(q as u64, 2));
            }
        }
    }

    #[test]
    fn turan_graph_clique_counts() {
        for (n, r) in [(6, 3), (8, 2), (9, 3), (10, 4)] {
            let g = turan_graph(n, r).unwrap();
            let sizes = crate::turan::TuranParams::new(n, r).unwrap().class_sizes();
            let product: u64 = sizes.iter().map(|&s| s as u64).product();
            assert_eq!(count_cliques(&g, r), BigUint::from(product));
            assert_eq!(count_cliques(&g, r + 1), BigUint::zero());
            assert_eq!(
                count_cliques(&g, 2),
                BigUint::from(crate::turan::turan_number(n, r).unwrap())
            );
        }
    }

    #[test]
    fn moon_moser_k4() {
        let rows = moon_moser_report(&Graph::complete(4));
        let row = rows.iter().find(|r| r.s == 2 && r.t == 1).unwrap();
        assert_eq!(row.lhs, big_rational(-1, 1));
        assert_eq!(row.rhs, big_rational(-1, 1));
        assert!(row.holds);
        assert_eq!(row.to_csv_row(), "2,1,-1,1,-1,1,true");
    }

    #[test]
    fn moon_moser_vacuous_below_omega_three() {
        assert!(moon_moser_report(&c5()).is_empty());
        assert!(moon_moser_report(&Graph::empty(4)).is_empty());
    }

    #[test]
    fn moon_moser_equality_on_turan_graph() {
        let rows = moon_moser_report(&turan_graph(6, 3).unwrap());
        let row = rows.iter().find(|r| r.s == 2 && r.t == 1).unwrap();
        assert_eq!(row.lhs, row.rhs);
        assert!(row.holds);
    }
}
