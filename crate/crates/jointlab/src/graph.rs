//! Dense simple graphs with one bit row per vertex. Graphs are immutable
//! after construction; "removing" vertices means taking an induced subgraph
//! or recording a peel trace.

use crate::bitset::{and_popcount, BitSet};
use crate::{Error, Result};
use std::io::{BufRead, Write};

#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    words_per_row: usize,
    rows: Vec<u64>,
    m: u64,
}

impl Graph {
    /// Builds a graph from unordered vertex pairs. Duplicate pairs collapse;
    /// out-of-range endpoints and self-loops are rejected.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let wpr = n.div_ceil(64);
        let mut rows = vec![0u64; n * wpr];
        for &(u, v) in edges {
            if u >= n {
                return Err(Error::InvalidVertex { vertex: u, order: n });
            }
            if v >= n {
                return Err(Error::InvalidVertex { vertex: v, order: n });
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            rows[u * wpr + v / 64] |= 1 << (v % 64);
            rows[v * wpr + u / 64] |= 1 << (u % 64);
        }
        let m = rows.iter().map(|w| w.count_ones() as u64).sum::<u64>() / 2;
        Ok(Graph {
            n,
            words_per_row: wpr,
            rows,
            m,
        })
    }

    pub fn empty(n: usize) -> Graph {
        Graph::new(n, &[]).expect("edgeless graph is always valid")
    }

    pub fn complete(n: usize) -> Graph {
        let mut edges = Vec::with_capacity(n * (n.saturating_sub(1)) / 2);
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::new(n, &edges).expect("complete graph is always valid")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// e(G).
    pub fn edge_count(&self) -> u64 {
        self.m
    }

    /// Neighborhood of `u` as a raw word row.
    #[inline]
    pub fn row(&self, u: usize) -> &[u64] {
        &self.rows[u * self.words_per_row..(u + 1) * self.words_per_row]
    }

    pub fn neighborhood(&self, u: usize) -> BitSet {
        BitSet::from_words(self.n, self.row(u).to_vec())
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && (self.row(u)[v / 64] >> (v % 64)) & 1 == 1
    }

    #[inline]
    pub fn degree(&self, u: usize) -> usize {
        self.row(u).iter().map(|w| w.count_ones() as usize).sum()
    }

    /// δ(G); `None` for the empty-order graph.
    pub fn min_degree(&self) -> Option<usize> {
        (0..self.n).map(|u| self.degree(u)).min()
    }

    pub fn max_degree(&self) -> Option<usize> {
        (0..self.n).map(|u| self.degree(u)).max()
    }

    /// Edges as (u, v) with u < v, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m as usize);
        for u in 0..self.n {
            let row = self.row(u);
            for w in (u + 1)..self.n {
                if (row[w / 64] >> (w % 64)) & 1 == 1 {
                    out.push((u, w));
                }
            }
        }
        out
    }

    /// Γ(u) ∩ Γ(v). Neither endpoint is a member. The pair need not be an
    /// edge; when it is, the count equals the number of triangles on it.
    pub fn common_neighborhood(&self, u: usize, v: usize) -> Result<BitSet> {
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        let mut out = self.neighborhood(u);
        out.and_assign(&self.neighborhood(v));
        Ok(out)
    }

    /// |Γ(u) ∩ Γ(v)| without allocation.
    pub fn common_degree(&self, u: usize, v: usize) -> usize {
        and_popcount(self.row(u), self.row(v))
    }

    fn check_vertex(&self, u: usize) -> Result<()> {
        if u >= self.n {
            Err(Error::InvalidVertex {
                vertex: u,
                order: self.n,
            })
        } else {
            Ok(())
        }
    }

    /// G[S], relabeled 0..|S|-1 in the sorted order of S. Returns the graph
    /// and the relabeling map (new index → original vertex).
    pub fn induced_subgraph(&self, s: &BitSet) -> Result<(Graph, Vec<usize>)> {
        if s.nbits() != self.n {
            return Err(Error::InvalidVertex {
                vertex: s.nbits(),
                order: self.n,
            });
        }
        let map = s.to_vec();
        let mut edges = Vec::new();
        for (i, &u) in map.iter().enumerate() {
            for (j, &v) in map.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    edges.push((i, j));
                }
            }
        }
        Ok((Graph::new(map.len(), &edges)?, map))
    }

    /// G[S] for S given as a vertex list (deduplicated, order-insensitive).
    pub fn induced_subgraph_from(&self, members: &[usize]) -> Result<(Graph, Vec<usize>)> {
        let mut s = BitSet::new(self.n);
        for &v in members {
            self.check_vertex(v)?;
            s.insert(v);
        }
        self.induced_subgraph(&s)
    }

    /// G - u as an induced subgraph with its relabeling map.
    pub fn remove_vertex(&self, u: usize) -> Result<(Graph, Vec<usize>)> {
        self.check_vertex(u)?;
        let mut s = BitSet::universe(self.n);
        s.remove(u);
        self.induced_subgraph(&s)
    }

    pub fn complement(&self) -> Graph {
        let mut edges = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    edges.push((u, v));
                }
            }
        }
        Graph::new(self.n, &edges).expect("complement of a valid graph is valid")
    }

    /// Checks symmetry, irreflexivity, absence of stray bits and the
    /// handshake identity; used by the randomized structural tests.
    pub fn check_invariants(&self) -> bool {
        let universe = BitSet::universe(self.n);
        let mut total = 0u64;
        for u in 0..self.n {
            if self.has_edge(u, u) {
                return false;
            }
            for (w, mask) in self.row(u).iter().zip(universe.words()) {
                if w & !mask != 0 {
                    return false;
                }
            }
            total += self.degree(u) as u64;
            for v in 0..self.n {
                if self.has_edge(u, v) != self.has_edge(v, u) {
                    return false;
                }
            }
        }
        total % 2 == 0 && total / 2 == self.m
    }

    /// Min-degree peel: repeatedly removes a minimum-degree vertex, lowest
    /// index first among ties, recording the degree at removal and the edge
    /// counts of the shrinking graphs.
    pub fn peel(&self) -> PeelTrace {
        let n = self.n;
        let mut alive = BitSet::universe(n);
        let mut deg: Vec<usize> = (0..n).map(|u| self.degree(u)).collect();
        let mut edges_left = self.m;
        let mut order = Vec::with_capacity(n);
        let mut degrees = Vec::with_capacity(n);
        let mut edges_remaining = Vec::with_capacity(n);
        for _ in 0..n {
            let u = alive
                .iter()
                .min_by_key(|&v| (deg[v], v))
                .expect("alive set is non-empty");
            edges_remaining.push(edges_left);
            degrees.push(deg[u]);
            edges_left -= deg[u] as u64;
            alive.remove(u);
            order.push(u);
            let nb = alive.and_words(self.row(u));
            for v in nb.iter() {
                deg[v] -= 1;
            }
        }
        PeelTrace {
            order,
            degrees,
            edges_remaining,
        }
    }

    /// Writes the edge-list format: "n m", then one "u v" line per edge with
    /// u < v, sorted lexicographically.
    pub fn write_edge_list<W: Write>(&self, w: &mut W) -> Result<()> {
        writeln!(w, "{} {}", self.n, self.m)?;
        for (u, v) in self.edges() {
            writeln!(w, "{} {}", u, v)?;
        }
        Ok(())
    }

    pub fn to_edge_list_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_edge_list(&mut buf).expect("writing to Vec");
        String::from_utf8(buf).expect("edge list is ASCII")
    }

    /// Reads the edge-list format. Blank lines and lines starting with '#'
    /// are ignored; the header "n m" must be followed by exactly m pair
    /// lines.
    pub fn read_edge_list<R: BufRead>(r: R) -> Result<Graph> {
        let mut header: Option<(usize, u64)> = None;
        let mut edges: Vec<(usize, usize)> = Vec::new();
        for (lineno, line) in r.lines().enumerate() {
            let line = line?;
            let t = line.trim();
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            let mut it = t.split_whitespace();
            let a = it.next();
            let b = it.next();
            let (a, b) = match (a, b, it.next()) {
                (Some(a), Some(b), None) => (a, b),
                _ => {
                    return Err(Error::Format(format!(
                        "line {}: expected two fields, got `{}`",
                        lineno + 1,
                        t
                    )))
                }
            };
            let pa: usize = a
                .parse()
                .map_err(|_| Error::Format(format!("line {}: bad integer `{}`", lineno + 1, a)))?;
            let pb: u64 = b
                .parse()
                .map_err(|_| Error::Format(format!("line {}: bad integer `{}`", lineno + 1, b)))?;
            if header.is_none() {
                header = Some((pa, pb));
            } else {
                edges.push((pa, pb as usize));
            }
        }
        let (n, m) = header.ok_or_else(|| Error::Format("missing `n m` header".into()))?;
        if edges.len() as u64 != m {
            return Err(Error::Format(format!(
                "header declares {} edges, found {}",
                m,
                edges.len()
            )));
        }
        Graph::new(n, &edges)
    }

    pub fn parse_edge_list(s: &str) -> Result<Graph> {
        Graph::read_edge_list(s.as_bytes())
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, m={})", self.n, self.m)
    }
}

/// Record of a full min-degree peel. With G_0 = G and G_{i+1} = G_i minus
/// its chosen minimum-degree vertex: `order[i]` is the vertex removed from
/// G_i, `degrees[i]` = δ(G_i) its degree at removal, and `edges_remaining[i]`
/// = e(G_i). Hence e(G_i) - e(G_{i+1}) = δ(G_i) and Σ degrees = e(G).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeelTrace {
    pub order: Vec<usize>,
    pub degrees: Vec<usize>,
    pub edges_remaining: Vec<u64>,
}

impl PeelTrace {
    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Re-checks the defining identities against the graph that produced it.
    pub fn verify(&self, g: &Graph) -> bool {
        let n = g.n();
        if self.order.len() != n || self.degrees.len() != n || self.edges_remaining.len() != n {
            return n == 0;
        }
        let mut seen = vec![false; n];
        for &u in &self.order {
            if u >= n || seen[u] {
                return false;
            }
            seen[u] = true;
        }
        let total: u64 = self.degrees.iter().map(|&d| d as u64).sum();
        if total != g.edge_count() {
            return false;
        }
        // degrees[i] must be the minimum degree of the remaining graph at
        // step i, and edge counts must telescope by exactly that much.
        let mut alive = BitSet::universe(n);
        let mut edges = g.edge_count();
        for i in 0..n {
            if self.edges_remaining[i] != edges {
                return false;
            }
            let min = alive
                .iter()
                .map(|v| alive.and_count(g.row(v)))
                .min()
                .expect("alive non-empty");
            let u = self.order[i];
            let du = alive.and_count(g.row(u));
            if du != self.degrees[i] || du != min {
                return false;
            }
            edges -= du as u64;
            alive.remove(u);
        }
        edges == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Graph {
        Graph::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    fn c5() -> Graph {
        Graph::new(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]).unwrap()
    }

    #[test]
    fn build_basic() {
        let g = triangle();
        assert_eq!(g.edge_count(), 3);
        assert!(g.check_invariants());

        let g = Graph::new(4, &[]).unwrap();
        assert_eq!(g.edge_count(), 0);
        assert_eq!(g.min_degree(), Some(0));

        // duplicates collapse
        let g = Graph::new(4, &[(0, 1), (0, 1), (1, 0)]).unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn build_rejects_bad_input() {
        assert!(matches!(
            Graph::new(3, &[(0, 3)]),
            Err(Error::InvalidVertex { vertex: 3, order: 3 })
        ));
        assert!(matches!(Graph::new(3, &[(1, 1)]), Err(Error::SelfLoop(1))));
    }

    #[test]
    fn induced_subgraph_relabels() {
        let k4 = Graph::complete(4);
        let (h, map) = k4.induced_subgraph_from(&[0, 1, 2]).unwrap();
        assert_eq!(h, Graph::complete(3));
        assert_eq!(map, vec![0, 1, 2]);

        let (h, map) = c5().induced_subgraph_from(&[0, 1, 2]).unwrap();
        assert_eq!(h.edge_count(), 2);
        assert!(h.has_edge(0, 1) && h.has_edge(1, 2) && !h.has_edge(0, 2));
        assert_eq!(map, vec![0, 1, 2]);

        let (h, map) = c5().induced_subgraph(&BitSet::new(5)).unwrap();
        assert_eq!(h.n(), 0);
        assert!(map.is_empty());

        // identity relabeling reproduces the graph
        let g = c5();
        let (h, map) = g.induced_subgraph(&BitSet::universe(5)).unwrap();
        assert_eq!(h, g);
        assert_eq!(map, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn common_neighborhoods() {
        let k5 = Graph::complete(5);
        assert_eq!(
            k5.common_neighborhood(0, 1).unwrap().to_vec(),
            vec![2, 3, 4]
        );
        assert!(c5().common_neighborhood(0, 1).unwrap().is_empty());
        // K_{2,2} with classes {0,1},{2,3}: adjacent pair across classes has
        // empty common neighborhood, non-adjacent same-class pair sees the
        // whole other class.
        let t22 = Graph::new(4, &[(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        assert!(t22.common_neighborhood(0, 2).unwrap().is_empty());
        assert_eq!(t22.common_neighborhood(0, 1).unwrap().to_vec(), vec![2, 3]);
        assert!(matches!(
            t22.common_neighborhood(2, 2),
            Err(Error::SelfLoop(2))
        ));
    }

    #[test]
    fn peel_star() {
        let star = Graph::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let t = star.peel();
        assert_eq!(t.degrees, vec![1, 1, 1, 0]);
        assert_eq!(t.edges_remaining, vec![3, 2, 1, 0]);
        // after two leaves go, the center ties at degree 1 and wins by index
        assert_eq!(t.order, vec![1, 2, 0, 3]);
        assert!(t.verify(&star));
    }

    #[test]
    fn peel_small_cases() {
        let t = triangle().peel();
        assert_eq!(t.degrees, vec![2, 1, 0]);
        assert!(t.verify(&triangle()));

        let e3 = Graph::empty(3);
        assert_eq!(e3.peel().degrees, vec![0, 0, 0]);

        let t = Graph::empty(0).peel();
        assert!(t.is_empty());
    }

    #[test]
    fn edge_list_roundtrip() {
        let g = c5();
        let s = g.to_edge_list_string();
        assert!(s.starts_with("5 5\n"));
        let h = Graph::parse_edge_list(&s).unwrap();
        assert_eq!(g, h);

        let with_comments = "# cycle\n\n5 5\n0 1\n0 4\n1 2\n2 3\n3 4\n";
        assert_eq!(Graph::parse_edge_list(with_comments).unwrap(), g);

        assert!(Graph::parse_edge_list("5 2\n0 1\n").is_err());
        assert!(Graph::parse_edge_list("").is_err());
        assert!(Graph::parse_edge_list("3 1\n0 zz\n").is_err());
    }
}
