//! Joints: families of q-cliques sharing one common edge. The jointsize of a
//! graph (for the computed case: base cliques of order p = 2 overlapping in
//! r = 2 vertices) is the largest number of q-cliques through a single edge.
//! Besides the exact per-edge maximization this module carries the
//! constructive route: peel the graph to a core that either has high minimum
//! degree and a K_{r+1}, or is so dense that counting alone forces a large
//! joint, then extract a certified witness from the core.

use crate::bitset::BitSet;
use crate::bounds::{bound_report, BoundInputs, BoundName, BoundReport};
use crate::clique::{count_cliques_within, edge_clique_count, find_clique};
use crate::exact::rational_from_uint;
use crate::graph::{Graph, PeelTrace};
use crate::turan::{is_turan_graph, turan_min_degree, turan_number};
use crate::{Error, Result};
use num::{BigInt, BigRational, BigUint, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

/// Witness that some edge lies in `size` cliques of order `q`. The general
/// joint parameters are carried along; computation is specific to base
/// cliques of order `p = 2` with overlap `r_overlap = 2`, i.e. a shared edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JointCertificate {
    pub p: usize,
    pub q: usize,
    pub r_overlap: usize,
    pub base_edge: (usize, usize),
    pub size: BigUint,
    /// Up to a caller-chosen limit of explicitly listed q-cliques, each
    /// containing the base edge; `None` when materialization was not asked
    /// for.
    pub cliques: Option<Vec<Vec<usize>>>,
}

impl JointCertificate {
    /// Re-derives everything checkable against the graph the certificate is
    /// about: the base pair is an edge, the size equals the per-edge clique
    /// count, and every listed clique is a distinct q-clique through the
    /// base edge.
    pub fn verify(&self, g: &Graph) -> std::result::Result<(), String> {
        if self.p != 2 || self.r_overlap != 2 {
            return Err(format!(
                "only (2,q,2) certificates are computable, got ({},{},{})",
                self.p, self.q, self.r_overlap
            ));
        }
        let (u, v) = self.base_edge;
        if !g.has_edge(u, v) {
            return Err(format!("base pair {u}-{v} is not an edge"));
        }
        let expect = edge_clique_count(g, u, v, self.q).map_err(|e| e.to_string())?;
        if expect != self.size {
            return Err(format!(
                "declared size {} but the edge lies in {} cliques of order {}",
                self.size, expect, self.q
            ));
        }
        if let Some(cliques) = &self.cliques {
            if BigUint::from(cliques.len() as u64) > self.size {
                return Err("more cliques listed than the declared size".into());
            }
            let mut seen = std::collections::BTreeSet::new();
            for c in cliques {
                if c.len() != self.q {
                    return Err(format!("listed clique {:?} has wrong order", c));
                }
                if !c.contains(&u) || !c.contains(&v) {
                    return Err(format!("listed clique {:?} misses the base edge", c));
                }
                let mut sorted = c.clone();
                sorted.sort_unstable();
                sorted.dedup();
                if sorted.len() != self.q {
                    return Err(format!("listed clique {:?} repeats a vertex", c));
                }
                for i in 0..sorted.len() {
                    for j in i + 1..sorted.len() {
                        if !g.has_edge(sorted[i], sorted[j]) {
                            return Err(format!("listed set {:?} is not a clique", c));
                        }
                    }
                }
                if !seen.insert(sorted) {
                    return Err(format!("listed clique {:?} appears twice", c));
                }
            }
        }
        Ok(())
    }

    /// Relabels all vertices through `map` (new label = map[old]).
    fn relabel(&self, map: &[usize]) -> JointCertificate {
        let (u, v) = self.base_edge;
        let (u, v) = (map[u], map[v]);
        JointCertificate {
            p: self.p,
            q: self.q,
            r_overlap: self.r_overlap,
            base_edge: (u.min(v), u.max(v)),
            size: self.size.clone(),
            cliques: self.cliques.as_ref().map(|cs| {
                cs.iter()
                    .map(|c| {
                        let mut mapped: Vec<usize> = c.iter().map(|&x| map[x]).collect();
                        mapped.sort_unstable();
                        mapped
                    })
                    .collect()
            }),
        }
    }

    pub fn to_json(&self, bound: Option<&BoundReport>) -> Value {
        json!({
            "p": self.p,
            "q": self.q,
            "r_overlap": self.r_overlap,
            "base_edge": [self.base_edge.0, self.base_edge.1],
            "size": self.size.to_string(),
            "cliques": self.cliques,
            "bound": bound.map(|b| b.to_certificate_json()),
        })
    }
}

fn check_joint_order(q: usize) -> Result<()> {
    if q < 3 {
        Err(Error::InvalidParam(
            "jointsize is computed for clique order q >= 3".into(),
        ))
    } else {
        Ok(())
    }
}

/// Exact jointsize: the maximum over edges uv of the number of q-cliques
/// containing uv, with the lexicographically smallest maximizing edge as
/// witness. (0, None) when there is no edge or no K_q at all.
pub fn jointsize(g: &Graph, q: usize) -> Result<(BigUint, Option<(usize, usize)>)> {
    check_joint_order(q)?;
    let edges = g.edges();
    let per_edge = |&(u, v): &(usize, usize)| -> (BigUint, (usize, usize)) {
        let count = if q == 3 {
            BigUint::from(g.common_degree(u, v) as u64)
        } else {
            let common = g.common_neighborhood(u, v).expect("edge endpoints differ");
            count_cliques_within(g, &common, q - 2)
        };
        (count, (u, v))
    };
    let combine = |a: Option<(BigUint, (usize, usize))>, b: Option<(BigUint, (usize, usize))>| {
        match (a, b) {
            (None, x) | (x, None) => x,
            (Some(x), Some(y)) => Some(match x.0.cmp(&y.0) {
                std::cmp::Ordering::Greater => x,
                std::cmp::Ordering::Less => y,
                std::cmp::Ordering::Equal => {
                    if x.1 <= y.1 {
                        x
                    } else {
                        y
                    }
                }
            }),
        }
    };
    let best = if edges.len() >= 2048 {
        edges
            .par_iter()
            .map(|e| Some(per_edge(e)))
            .reduce(|| None, combine)
    } else {
        edges.iter().map(|e| Some(per_edge(e))).fold(None, combine)
    };
    Ok(match best {
        Some((count, edge)) if !count.is_zero() => (count, Some(edge)),
        _ => (BigUint::zero(), None),
    })
}

/// Lists up to `limit` s-cliques inside `cand`, lexicographically smallest
/// first.
fn enumerate_cliques_within(
    g: &Graph,
    cand: &BitSet,
    s: usize,
    limit: usize,
    out: &mut Vec<Vec<usize>>,
) {
    fn rec(
        g: &Graph,
        cand: &BitSet,
        s: usize,
        limit: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if out.len() == limit {
            return;
        }
        if cur.len() == s {
            out.push(cur.clone());
            return;
        }
        for v in cand.iter() {
            let mut next = cand.and_words(g.row(v));
            for w in next.clone().iter() {
                if w <= v {
                    next.remove(w);
                } else {
                    break;
                }
            }
            cur.push(v);
            rec(g, &next, s, limit, cur, out);
            cur.pop();
            if out.len() == limit {
                return;
            }
        }
    }
    if limit > 0 {
        rec(g, cand, s, limit, &mut Vec::new(), out);
    }
}

/// Builds the certificate for one edge: the exact per-edge count plus up to
/// `limit` explicitly listed q-cliques through it.
pub fn extract_joint(
    g: &Graph,
    q: usize,
    edge: (usize, usize),
    limit: usize,
) -> Result<JointCertificate> {
    let (u, v) = edge;
    if !g.has_edge(u, v) {
        return Err(Error::NotAnEdge { u, v });
    }
    let size = edge_clique_count(g, u, v, q)?;
    let mut listed = Vec::new();
    if q == 2 {
        if limit > 0 {
            listed.push(vec![u.min(v), u.max(v)]);
        }
    } else {
        let common = g.common_neighborhood(u, v)?;
        let mut inner = Vec::new();
        enumerate_cliques_within(g, &common, q - 2, limit, &mut inner);
        for mut c in inner {
            c.push(u);
            c.push(v);
            c.sort_unstable();
            listed.push(c);
        }
    }
    Ok(JointCertificate {
        p: 2,
        q,
        r_overlap: 2,
        base_edge: (u.min(v), u.max(v)),
        size,
        cliques: Some(listed),
    })
}

/// Which property the peeling reduction certifies about its core.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReductionCase {
    /// The core contains a K_{r+1} and has minimum degree above
    /// ((r-1)/r - beta)·n'.
    MinDegree,
    /// The core has edge density above (r-1)/2r + 1/(r^4(r^2-1)).
    Density,
}

impl std::fmt::Display for ReductionCase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ReductionCase::MinDegree => write!(f, "MinDegreeCase"),
            ReductionCase::Density => write!(f, "DensityCase"),
        }
    }
}

/// Core extracted by the min-degree peel, with enough bookkeeping to verify
/// the claimed property and lift witnesses back to the original labels.
#[derive(Clone, Debug)]
pub struct ReductionOutcome {
    pub subgraph: Graph,
    /// new index → original vertex
    pub vertex_map: Vec<usize>,
    pub n_original: usize,
    pub n_prime: usize,
    pub r: usize,
    pub case: ReductionCase,
    /// beta = 1/(r²(r²-1)), the slack in the peel threshold.
    pub beta: BigRational,
    /// First peel index whose minimum degree exceeded the threshold; the
    /// condition held at every earlier index.
    pub k: usize,
    pub trace: PeelTrace,
}

/// Exact verification verdicts for a reduction outcome.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReductionCheck {
    /// n' > (1 - 1/r²)·n
    pub order_ok: bool,
    /// the tagged case property, checked exactly on the core
    pub property_ok: bool,
}

impl ReductionOutcome {
    pub fn verify(&self) -> ReductionCheck {
        let r = self.r as u128;
        let n = self.n_original as u128;
        let np = self.n_prime as u128;
        let order_ok = np * r * r > (r * r - 1) * n;
        let property_ok = match self.case {
            ReductionCase::MinDegree => {
                let has_clique = find_clique(&self.subgraph, self.r + 1).is_some();
                let delta = self.subgraph.min_degree().unwrap_or(0) as u128;
                // delta > ((r-1)/r - beta)·n' with beta = 1/(r²(r²-1))
                let den = r * r * (r * r - 1);
                let num = (r - 1) * r * (r * r - 1) - 1;
                has_clique && delta * den > num * np
            }
            ReductionCase::Density => {
                // e > ((r-1)/2r + 1/(r^4(r²-1)))·n'²
                let e = self.subgraph.edge_count() as u128;
                let den = 2 * r.pow(5) * (r * r - 1);
                let num = (r - 1) * r.pow(4) * (r * r - 1) + 2 * r;
                e * den > num * np * np
            }
        };
        ReductionCheck {
            order_ok,
            property_ok,
        }
    }

    pub fn to_json(&self) -> Value {
        let check = self.verify();
        json!({
            "case": self.case.to_string(),
            "n": self.n_original,
            "n_prime": self.n_prime,
            "r": self.r,
            "k": self.k,
            "beta": crate::exact::format_rational(&self.beta),
            "edges_core": self.subgraph.edge_count(),
            "min_degree_core": self.subgraph.min_degree(),
            "order_ok": check.order_ok,
            "property_ok": check.property_ok,
        })
    }
}

/// Peels G by minimum degree and cuts at the first index whose minimum
/// degree clears ((r-1)/r - beta) times the remaining order. If that index
/// comes later than n/r², the core G_l with l = ⌊n/r²⌋ is returned as a
/// density case; otherwise the cut graph itself is returned as a min-degree
/// case (k = 0, i.e. an immediately high-min-degree graph, yields G itself).
pub fn peel_reduction(g: &Graph, r: usize) -> Result<ReductionOutcome> {
    if r < 2 {
        return Err(Error::InvalidParam("reduction requires r >= 2".into()));
    }
    let n = g.n();
    let threshold_edges = turan_number(n, r)?;
    if g.edge_count() <= threshold_edges {
        return Err(Error::HypothesisViolated(format!(
            "need e(G) > {} = extremal count, got {}",
            threshold_edges,
            g.edge_count()
        )));
    }
    let trace = g.peel();
    let r128 = r as u128;
    let den = r128 * r128 * (r128 * r128 - 1);
    let num = (r128 - 1) * r128 * (r128 * r128 - 1) - 1;
    let mut k = n;
    for i in 0..n {
        let low = trace.degrees[i] as u128 * den <= num * (n - i) as u128;
        if !low {
            k = i;
            break;
        }
    }
    let (case, cut) = if (k as u128) * r128 * r128 > n as u128 {
        (ReductionCase::Density, n / (r * r))
    } else {
        (ReductionCase::MinDegree, k)
    };
    let mut keep = BitSet::universe(n);
    for &v in &trace.order[..cut] {
        keep.remove(v);
    }
    let (subgraph, vertex_map) = g.induced_subgraph(&keep)?;
    Ok(ReductionOutcome {
        n_prime: subgraph.n(),
        subgraph,
        vertex_map,
        n_original: n,
        r,
        case,
        beta: BigRational::new(BigInt::from(1), BigInt::from(den)),
        k,
        trace,
    })
}

/// Within the vertex set of a K_{r+1}, picks the pair whose common
/// neighborhood is largest (lexicographic tie-break) and returns it with
/// that neighborhood. The averaging bound guarantees the best pair is large
/// whenever the minimum degree is; maximizing can only do better.
pub fn select_joint_edge(
    g: &Graph,
    r: usize,
    clique: &[usize],
) -> Result<(usize, usize, BitSet)> {
    if clique.len() != r + 1 {
        return Err(Error::NotAClique);
    }
    let mut sorted = clique.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != r + 1 {
        return Err(Error::NotAClique);
    }
    for (i, &u) in sorted.iter().enumerate() {
        if u >= g.n() {
            return Err(Error::InvalidVertex {
                vertex: u,
                order: g.n(),
            });
        }
        for &v in &sorted[i + 1..] {
            if !g.has_edge(u, v) {
                return Err(Error::NotAClique);
            }
        }
    }
    let mut best: Option<(usize, usize, usize)> = None;
    for (i, &u) in sorted.iter().enumerate() {
        for &v in &sorted[i + 1..] {
            let size = g.common_degree(u, v);
            if best.is_none() || size > best.unwrap().2 {
                best = Some((u, v, size));
            }
        }
    }
    let (u, v, _) = best.expect("a K_{r+1} with r >= 1 has a pair");
    Ok((u, v, g.common_neighborhood(u, v)?))
}

/// A certified large joint together with the headline bound evaluation.
#[derive(Clone, Debug)]
pub struct LargeJoint {
    pub certificate: JointCertificate,
    pub bound: BoundReport,
    /// Which reduction case produced the witness; None on the path that
    /// works on the input graph directly.
    pub case: Option<ReductionCase>,
    pub n_prime: Option<usize>,
}

impl LargeJoint {
    pub fn to_json(&self) -> Value {
        let mut v = self.certificate.to_json(Some(&self.bound));
        let obj = v.as_object_mut().expect("certificate serializes to object");
        obj.insert(
            "case".into(),
            match self.case {
                Some(c) => json!(c.to_string()),
                None => Value::Null,
            },
        );
        obj.insert("n_prime".into(), json!(self.n_prime));
        v
    }
}

fn certificate_from_core(
    core: &Graph,
    r: usize,
    case: ReductionCase,
    limit: usize,
) -> Result<JointCertificate> {
    let q = r + 1;
    match case {
        ReductionCase::MinDegree => {
            if let Some(clique) = find_clique(core, q) {
                let (u, v, _) = select_joint_edge(core, r, &clique)?;
                return extract_joint(core, q, (u, v), limit);
            }
            // Off the guaranteed regime a K_{r+1} may be missing; fall back
            // to the exact maximizer.
            certificate_by_maximum(core, q, limit)
        }
        ReductionCase::Density => certificate_by_maximum(core, q, limit),
    }
}

fn certificate_by_maximum(g: &Graph, q: usize, limit: usize) -> Result<JointCertificate> {
    let (_, witness) = jointsize(g, q)?;
    let edge = match witness {
        Some(e) => e,
        None => match g.edges().first() {
            Some(&e) => e,
            None => {
                return Err(Error::HypothesisViolated(
                    "graph has no edge to base a joint on".into(),
                ))
            }
        },
    };
    extract_joint(g, q, edge, limit)
}

/// Constructive large-joint search. Requires e(G) >= the extremal edge count
/// for r classes and G not the extremal graph itself; produces a certificate
/// in original labels (its size recomputed against G) and the comparison of
/// that size against n^(r-1)/r^(r+5).
pub fn find_large_joint(g: &Graph, r: usize, limit: usize) -> Result<LargeJoint> {
    if r < 2 {
        return Err(Error::InvalidParam("joint search requires r >= 2".into()));
    }
    let n = g.n();
    let extremal = turan_number(n, r)?;
    if g.edge_count() < extremal {
        return Err(Error::HypothesisViolated(format!(
            "need e(G) >= {} = extremal count, got {}",
            extremal,
            g.edge_count()
        )));
    }
    if g.edge_count() == extremal && is_turan_graph(g, r)? {
        return Err(Error::IsTuranGraph { n, r });
    }
    let q = r + 1;
    let (mut certificate, case, n_prime) = if g.edge_count() > extremal {
        let outcome = peel_reduction(g, r)?;
        let cert = certificate_from_core(&outcome.subgraph, r, outcome.case, limit)?;
        (
            cert.relabel(&outcome.vertex_map),
            Some(outcome.case),
            Some(outcome.n_prime),
        )
    } else {
        // e(G) equals the extremal count but G is not the extremal graph.
        let delta = g.min_degree().expect("order >= 2 here") as u64;
        if delta < turan_min_degree(n, r)? {
            // dropping a deficient vertex leaves a strict surplus one order
            // down, where the reduction applies
            let u = (0..n)
                .min_by_key(|&v| (g.degree(v), v))
                .expect("order >= 2 here");
            let (h, map1) = g.remove_vertex(u)?;
            let outcome = peel_reduction(&h, r)?;
            let composed: Vec<usize> = outcome.vertex_map.iter().map(|&x| map1[x]).collect();
            let cert = certificate_from_core(&outcome.subgraph, r, outcome.case, limit)?;
            (
                cert.relabel(&composed),
                Some(outcome.case),
                Some(outcome.n_prime),
            )
        } else {
            // minimum degree matches the extremal graph: a K_{r+1} exists
            // because only the extremal graph avoids one at this edge count
            let clique = find_clique(g, q).ok_or_else(|| {
                Error::HypothesisViolated(
                    "extremal edge count without K_{r+1} contradicts extremal uniqueness".into(),
                )
            })?;
            let (u, v, _) = select_joint_edge(g, r, &clique)?;
            (extract_joint(g, q, (u, v), limit)?, None, None)
        }
    };
    // the certificate now lives in G's labels; its size is re-anchored to G
    let (u, v) = certificate.base_edge;
    certificate.size = edge_clique_count(g, u, v, q)?;
    let bound = bound_report(
        BoundName::Ourb,
        &BoundInputs::nr(n as u64, r as u64),
        Some(rational_from_uint(&certificate.size)),
    )?;
    Ok(LargeJoint {
        certificate,
        bound,
        case,
        n_prime,
    })
}

/// Ratio of the jointsize of the extremal graph plus one inside-class edge
/// to n^(r-1)/r^(r+5); exactly r^6 whenever r divides n (and n >= 2r so the
/// class can host an edge).
pub fn tightness_ratio(n: usize, r: usize) -> Result<BigRational> {
    if r < 2 {
        return Err(Error::InvalidParam("tightness ratio requires r >= 2".into()));
    }
    if n % r != 0 {
        return Err(Error::IndivisibleOrder { n, r });
    }
    if n < 2 * r {
        return Err(Error::InvalidParam(
            "first class needs two vertices to host an extra edge".into(),
        ));
    }
    let mut edges = crate::turan::turan_graph(n, r)?.edges();
    edges.push((0, 1));
    let g = Graph::new(n, &edges)?;
    let (js, _) = jointsize(&g, r + 1)?;
    let denom = BigUint::from(n as u64).pow(r as u32 - 1);
    let scale = BigUint::from(r as u64).pow(r as u32 + 5);
    Ok(BigRational::new(
        BigInt::from(js * scale),
        BigInt::from(denom),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::big_rational;
    use crate::turan::turan_graph;

    fn turan_plus_edge(n: usize, r: usize) -> Graph {
        let mut edges = turan_graph(n, r).unwrap().edges();
        edges.push((0, 1));
        Graph::new(n, &edges).unwrap()
    }

    #[test]
    fn jointsize_small_cases() {
        let (size, witness) = jointsize(&Graph::complete(4), 3).unwrap();
        assert_eq!(size, BigUint::from(2u32));
        assert_eq!(witness, Some((0, 1)));

        let (size, witness) = jointsize(&turan_graph(10, 2).unwrap(), 3).unwrap();
        assert!(size.is_zero());
        assert_eq!(witness, None);

        let g = turan_plus_edge(9, 3);
        let (size, witness) = jointsize(&g, 4).unwrap();
        assert_eq!(size, BigUint::from(9u32));
        assert_eq!(witness, Some((0, 1)));

        assert!(jointsize(&Graph::complete(4), 2).is_err());
    }

    #[test]
    fn extract_small_cases() {
        let cert = extract_joint(&Graph::complete(4), 3, (0, 1), 10).unwrap();
        assert_eq!(cert.size, BigUint::from(2u32));
        assert_eq!(
            cert.cliques,
            Some(vec![vec![0, 1, 2], vec![0, 1, 3]])
        );
        cert.verify(&Graph::complete(4)).unwrap();

        let c5 = Graph::new(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]).unwrap();
        let cert = extract_joint(&c5, 3, (0, 1), 10).unwrap();
        assert!(cert.size.is_zero());
        assert_eq!(cert.cliques, Some(vec![]));
        cert.verify(&c5).unwrap();

        let cert = extract_joint(&Graph::complete(5), 4, (0, 1), 2).unwrap();
        assert_eq!(cert.size, BigUint::from(3u32));
        assert_eq!(cert.cliques.as_ref().unwrap().len(), 2);
        cert.verify(&Graph::complete(5)).unwrap();

        assert!(matches!(
            extract_joint(&c5, 3, (0, 2), 4),
            Err(Error::NotAnEdge { u: 0, v: 2 })
        ));
    }

    #[test]
    fn verify_rejects_tampering() {
        let g = Graph::complete(4);
        let good = extract_joint(&g, 3, (0, 1), 10).unwrap();

        let mut bad = good.clone();
        bad.size = BigUint::from(5u32);
        assert!(bad.verify(&g).is_err());

        let mut bad = good.clone();
        bad.cliques = Some(vec![vec![0, 1, 2], vec![0, 1, 2]]);
        assert!(bad.verify(&g).is_err());

        let mut bad = good.clone();
        bad.cliques = Some(vec![vec![0, 2, 3]]);
        assert!(bad.verify(&g).is_err());

        let mut bad = good;
        bad.base_edge = (0, 9);
        assert!(bad.verify(&g).is_err());
    }

    #[test]
    fn select_joint_edge_on_cliques() {
        let k5 = Graph::complete(5);
        let (u, v, m) = select_joint_edge(&k5, 2, &[0, 1, 2]).unwrap();
        assert_eq!((u, v), (0, 1));
        assert_eq!(m.count(), 3);

        let c5 = Graph::new(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]).unwrap();
        assert!(matches!(
            select_joint_edge(&c5, 2, &[0, 1, 2]),
            Err(Error::NotAClique)
        ));

        // the pair inside the doubled class dominates
        let g = turan_plus_edge(9, 3);
        let k4 = find_clique(&g, 4).unwrap();
        let (u, v, m) = select_joint_edge(&g, 3, &k4).unwrap();
        assert_eq!((u, v), (0, 1));
        assert_eq!(m.count(), 6);
    }

    #[test]
    fn reduction_rejects_extremal_edge_counts() {
        let g = turan_graph(10, 2).unwrap();
        assert!(matches!(
            peel_reduction(&g, 2),
            Err(Error::HypothesisViolated(_))
        ));
    }

    #[test]
    fn reduction_runs_on_small_graphs() {
        // K_4 with r=2: e = 6 > 4 = extremal; outside the guaranteed regime
        // the outcome exists and reports its own checks
        let out = peel_reduction(&Graph::complete(4), 2).unwrap();
        assert_eq!(out.n_original, 4);
        assert!(out.n_prime <= 4);
        out.verify();
    }

    #[test]
    fn reduction_on_turan_plus_edge() {
        let g = turan_plus_edge(300, 2);
        let out = peel_reduction(&g, 2).unwrap();
        let check = out.verify();
        assert!(check.order_ok, "n'={} case={}", out.n_prime, out.case);
        assert!(check.property_ok, "case {} k={}", out.case, out.k);
    }

    #[test]
    fn large_joint_on_turan_plus_edge() {
        let g = turan_plus_edge(300, 2);
        let res = find_large_joint(&g, 2, 4).unwrap();
        assert_eq!(res.certificate.size, BigUint::from(150u32));
        assert_eq!(res.bound.holds, Some(true));
        res.certificate.verify(&g).unwrap();
        // 150 * 2^7 = 19200 > 300
        let (js, _) = jointsize(&g, 3).unwrap();
        assert_eq!(js, BigUint::from(150u32));
    }

    #[test]
    fn large_joint_rejects_turan_graph_but_not_equality() {
        let g = turan_graph(10, 2).unwrap();
        assert!(matches!(
            find_large_joint(&g, 2, 4),
            Err(Error::IsTuranGraph { n: 10, r: 2 })
        ));

        // same edge count, not the extremal graph: certificate still comes out
        let mut edges = g.edges();
        edges.retain(|&e| e != (0, 5));
        edges.push((0, 1));
        let h = Graph::new(10, &edges).unwrap();
        assert_eq!(h.edge_count(), turan_number(10, 2).unwrap());
        let res = find_large_joint(&h, 2, 4).unwrap();
        res.certificate.verify(&h).unwrap();
        assert!(!res.certificate.size.is_zero());
    }

    #[test]
    fn large_joint_on_equal_count_low_degree_vertex() {
        // T_2(12) with an edge moved so some vertex drops below the extremal
        // minimum degree
        let g = turan_graph(12, 2).unwrap();
        let mut edges = g.edges();
        edges.retain(|&e| e != (0, 6) && e != (0, 7));
        edges.push((0, 1));
        edges.push((2, 3));
        let h = Graph::new(12, &edges).unwrap();
        assert_eq!(h.edge_count(), turan_number(12, 2).unwrap());
        assert!(h.min_degree().unwrap() < turan_min_degree(12, 2).unwrap() as usize);
        let res = find_large_joint(&h, 2, 4).unwrap();
        res.certificate.verify(&h).unwrap();
        assert!(!res.certificate.size.is_zero());
    }

    #[test]
    fn tightness_values() {
        assert_eq!(tightness_ratio(300, 2).unwrap(), big_rational(64, 1));
        assert_eq!(tightness_ratio(9, 3).unwrap(), big_rational(729, 1));
        assert_eq!(tightness_ratio(8, 2).unwrap(), big_rational(64, 1));
        assert!(matches!(
            tightness_ratio(10, 3),
            Err(Error::IndivisibleOrder { n: 10, r: 3 })
        ));
        assert!(tightness_ratio(3, 3).is_err());
    }

    #[test]
    fn certificate_never_exceeds_exact_jointsize() {
        let mut rng = crate::gen::SplitMix64::new(0xBEEF);
        for trial in 0..20 {
            let n = 12 + (rng.next_u64() % 8) as usize;
            let extremal = turan_number(n, 2).unwrap();
            let g = crate::gen::gnm(n, extremal + 1 + trial % 3, rng.next_u64()).unwrap();
            let res = match find_large_joint(&g, 2, 3) {
                Ok(r) => r,
                Err(Error::IsTuranGraph { .. }) => continue,
                Err(e) => panic!("unexpected error {e}"),
            };
            res.certificate.verify(&g).unwrap();
            let (js, _) = jointsize(&g, 3).unwrap();
            assert!(res.certificate.size <= js);
        }
    }
}
