//! Turán graphs T_r(n) and their exact edge counts. Class layout is fixed:
//! contiguous index ranges, larger classes first, so constructions are
//! reproducible. All identities are integer-exact.

use crate::graph::Graph;
use crate::{Error, Result};

/// Order and class count of a Turán graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TuranParams {
    pub n: usize,
    pub r: usize,
}

impl TuranParams {
    pub fn new(n: usize, r: usize) -> Result<Self> {
        if r < 1 {
            return Err(Error::InvalidParam("class count r must be >= 1".into()));
        }
        Ok(TuranParams { n, r })
    }

    /// Class sizes, largest first: t = n mod r classes of ⌈n/r⌉ followed by
    /// r - t classes of ⌊n/r⌋.
    pub fn class_sizes(&self) -> Vec<usize> {
        let t = self.n % self.r;
        let lo = self.n / self.r;
        (0..self.r)
            .map(|i| if i < t { lo + 1 } else { lo })
            .collect()
    }

    /// The class containing vertex v under the contiguous layout.
    pub fn class_of(&self, v: usize) -> usize {
        let t = self.n % self.r;
        let lo = self.n / self.r;
        let big_block = t * (lo + 1);
        if v < big_block {
            v / (lo + 1)
        } else {
            t + (v - big_block) / lo.max(1)
        }
    }
}

/// The complete r-partite graph on n vertices with classes as equal as
/// possible.
pub fn turan_graph(n: usize, r: usize) -> Result<Graph> {
    let params = TuranParams::new(n, r)?;
    let sizes = params.class_sizes();
    let mut starts = Vec::with_capacity(r);
    let mut acc = 0;
    for s in &sizes {
        starts.push(acc);
        acc += s;
    }
    let mut edges = Vec::new();
    for i in 0..r {
        for j in i + 1..r {
            for u in starts[i]..starts[i] + sizes[i] {
                for v in starts[j]..starts[j] + sizes[j] {
                    edges.push((u, v));
                }
            }
        }
    }
    Graph::new(n, &edges)
}

/// t_r(n) = e(T_r(n)) via the closed form ((r-1)/2r)(n² - t²) + C(t,2) with
/// t = n mod r, evaluated in exact integer arithmetic.
pub fn turan_number(n: usize, r: usize) -> Result<u64> {
    if r < 1 {
        return Err(Error::InvalidParam("class count r must be >= 1".into()));
    }
    let n = n as u128;
    let r = r as u128;
    let t = n % r;
    let quad = (r - 1) * (n * n - t * t);
    debug_assert_eq!(quad % (2 * r), 0);
    Ok((quad / (2 * r) + t * (t - t.min(1)) / 2) as u64)
}

/// δ(T_r(n)) = ⌊(r-1)n/r⌋.
pub fn turan_min_degree(n: usize, r: usize) -> Result<u64> {
    if r < 1 {
        return Err(Error::InvalidParam("class count r must be >= 1".into()));
    }
    Ok(((r as u128 - 1) * n as u128 / r as u128) as u64)
}

/// Recognizes the canonical extremal graph up to isomorphism without a
/// general isomorphism test: e(G) must equal t_r(n) and the complement must
/// be a disjoint union of r cliques whose sizes are the Turán class sizes.
pub fn is_turan_graph(g: &Graph, r: usize) -> Result<bool> {
    let n = g.n();
    if r < 1 {
        return Err(Error::InvalidParam("class count r must be >= 1".into()));
    }
    if g.edge_count() != turan_number(n, r)? {
        return Ok(false);
    }
    // Complement components, each of which must be a clique. A vertex of
    // complement-degree d lies in a component of exactly d+1 vertices iff its
    // closed complement neighborhood is a module of pairwise non-adjacent
    // (in G) vertices.
    let comp = g.complement();
    let mut seen = vec![false; n];
    let mut part_sizes = Vec::new();
    for v in 0..n {
        if seen[v] {
            continue;
        }
        let mut members = comp.neighborhood(v);
        members.insert(v);
        let size = members.count();
        for u in members.iter() {
            if seen[u] {
                return Ok(false);
            }
            seen[u] = true;
            // u's complement closed neighborhood must be the same set
            let mut nu = comp.neighborhood(u);
            nu.insert(u);
            if nu != members {
                return Ok(false);
            }
        }
        part_sizes.push(size);
    }
    let mut expect = TuranParams::new(n, r)?.class_sizes();
    expect.retain(|&s| s > 0);
    part_sizes.sort_unstable_by(|a, b| b.cmp(a));
    Ok(part_sizes == expect)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    #[test]
    fn small_graphs() {
        let t42 = turan_graph(4, 2).unwrap();
        assert_eq!(t42.edge_count(), 4);
        assert_eq!(t42.min_degree(), Some(2));

        let t53 = turan_graph(5, 3).unwrap();
        assert_eq!(t53.edge_count(), 8);
        // classes {0,1},{2,3},{4}
        assert!(!t53.has_edge(0, 1) && !t53.has_edge(2, 3));
        assert!(t53.has_edge(0, 2) && t53.has_edge(0, 4) && t53.has_edge(3, 4));

        assert_eq!(turan_graph(3, 3).unwrap(), Graph::complete(3));
        assert_eq!(turan_graph(0, 2).unwrap().n(), 0);
    }

    #[test]
    fn closed_form_values() {
        assert_eq!(turan_number(4, 2).unwrap(), 4);
        assert_eq!(turan_number(5, 3).unwrap(), 8);
        assert_eq!(turan_number(300, 2).unwrap(), 22500);
        for n in 0..40 {
            assert_eq!(turan_number(n, 1).unwrap(), 0);
        }
        assert!(turan_number(5, 0).is_err());
    }

    #[test]
    fn min_degree_values() {
        assert_eq!(turan_min_degree(5, 3).unwrap(), 3);
        assert_eq!(turan_min_degree(4, 2).unwrap(), 2);
        assert_eq!(turan_min_degree(7, 7).unwrap(), 6);
    }

    #[test]
    fn formula_matches_construction() {
        for n in 0..=60 {
            for r in 1..=6 {
                let g = turan_graph(n, r).unwrap();
                assert_eq!(g.edge_count(), turan_number(n, r).unwrap(), "n={n} r={r}");
                if n > 0 {
                    assert_eq!(
                        g.min_degree().unwrap() as u64,
                        turan_min_degree(n, r).unwrap(),
                        "n={n} r={r}"
                    );
                }
            }
        }
    }

    #[test]
    fn recurrence_holds() {
        for r in 1..=12 {
            for n in 1..=200 {
                assert_eq!(
                    turan_number(n, r).unwrap(),
                    turan_number(n - 1, r).unwrap() + turan_min_degree(n, r).unwrap(),
                    "n={n} r={r}"
                );
            }
        }
    }

    #[test]
    fn class_bookkeeping() {
        let p = TuranParams::new(11, 4).unwrap();
        assert_eq!(p.class_sizes(), vec![3, 3, 3, 2]);
        let mut per_class = vec![0usize; 4];
        for v in 0..11 {
            per_class[p.class_of(v)] += 1;
        }
        assert_eq!(per_class, p.class_sizes());
    }

    #[test]
    fn recognizer_accepts_relabelings_and_rejects_others() {
        let g = turan_graph(7, 3).unwrap();
        assert!(is_turan_graph(&g, 3).unwrap());
        assert!(!is_turan_graph(&g, 2).unwrap());

        // relabeled copy: swap vertices 0 and 6
        let swapped: Vec<(usize, usize)> = g
            .edges()
            .iter()
            .map(|&(u, v)| {
                let f = |x: usize| match x {
                    0 => 6,
                    6 => 0,
                    other => other,
                };
                (f(u), f(v))
            })
            .collect();
        let h = Graph::new(7, &swapped).unwrap();
        assert!(is_turan_graph(&h, 3).unwrap());

        // same edge count, different structure: move one edge
        let mut edges = g.edges();
        edges.retain(|&e| e != (0, 3));
        edges.push((0, 1));
        let h = Graph::new(7, &edges).unwrap();
        assert_eq!(h.edge_count(), g.edge_count());
        assert!(!is_turan_graph(&h, 3).unwrap());

        // complete graphs are T_n(n)
        assert!(is_turan_graph(&Graph::complete(5), 5).unwrap());
        // and also T_r(n) for n <= r
        assert!(is_turan_graph(&Graph::complete(3), 5).unwrap());
        assert!(is_turan_graph(&Graph::empty(0), 2).unwrap());
    }
}
