//! Set systems over a finite ground set and the Bonferroni-type machinery:
//! k-fold intersection sums S_k, their convexity lower bound, and the
//! guaranteed large pairwise overlap among r+1 big subsets.

use crate::bitset::BitSet;
use crate::exact::{binomial, binomial_big, format_rational, rational_from_uint};
use crate::{Error, Result};
use num::{BigInt, BigRational, BigUint, One, Zero};

/// Ground set {0,..,n-1} with subsets A_1..A_r stored as bit rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetSystem {
    n: usize,
    sets: Vec<BitSet>,
}

impl SetSystem {
    pub fn new(n: usize, sets: Vec<BitSet>) -> Result<SetSystem> {
        if sets.is_empty() {
            return Err(Error::InvalidParam("a set system needs r >= 1 sets".into()));
        }
        for s in &sets {
            if s.nbits() != n {
                return Err(Error::InvalidParam(format!(
                    "set width {} does not match ground set size {}",
                    s.nbits(),
                    n
                )));
            }
        }
        Ok(SetSystem { n, sets })
    }

    pub fn from_slices(n: usize, sets: &[&[usize]]) -> Result<SetSystem> {
        let rows = sets
            .iter()
            .map(|members| {
                for &m in *members {
                    if m >= n {
                        return Err(Error::InvalidVertex {
                            vertex: m,
                            order: n,
                        });
                    }
                }
                Ok(BitSet::from_slice(n, members))
            })
            .collect::<Result<Vec<_>>>()?;
        SetSystem::new(n, rows)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.sets.len()
    }

    pub fn sets(&self) -> &[BitSet] {
        &self.sets
    }

    /// Incidence degree of each ground element: the number of sets containing
    /// it. This is the degree in the bipartite incidence graph between sets
    /// and ground elements.
    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n)
            .map(|u| self.sets.iter().filter(|s| s.contains(u)).count())
            .collect()
    }
}

/// S_k for k = 1..r, where S_k sums |A_{i1} ∩ .. ∩ A_{ik}| over all k-element
/// index sets. Computed through the degree identity S_k = Σ_u C(d(u), k); the
/// family-by-family definition is what the tests enumerate against.
pub fn intersection_sums(sys: &SetSystem) -> Vec<BigUint> {
    let degrees = sys.degrees();
    (1..=sys.r())
        .map(|k| {
            degrees
                .iter()
                .map(|&d| binomial(d as u64, k as u64))
                .sum()
        })
        .collect()
}

/// The convexity lower bound on S_k given S_1 and n:
/// C(⌊S_1/n⌋, k-1) · (S_1 - ((k-1)/k)·(⌊S_1/n⌋+1)·n).
pub fn intersection_lower_bound(s1: &BigUint, n: u64, k: u64) -> Result<BigRational> {
    if n < 1 {
        return Err(Error::InvalidParam("ground set must be non-empty".into()));
    }
    if k < 1 {
        return Err(Error::InvalidParam("k must be >= 1".into()));
    }
    let floor = s1 / BigUint::from(n);
    let coeff = rational_from_uint(&binomial_big(&floor, k - 1));
    let frac = BigRational::new(BigInt::from(k - 1), BigInt::from(k));
    let inner = rational_from_uint(s1)
        - frac * rational_from_uint(&((floor + BigUint::one()) * BigUint::from(n)));
    Ok(coeff * inner)
}

/// Verdict of the bound at one k.
#[derive(Clone, Debug)]
pub struct IntersectionVerdict {
    pub k: u64,
    pub s_k: BigUint,
    pub bound: BigRational,
    pub holds: bool,
}

impl IntersectionVerdict {
    pub fn to_csv_row(&self) -> String {
        format!(
            "{},{},{},{}",
            self.k,
            self.s_k,
            format_rational(&self.bound),
            self.holds
        )
    }
}

/// Checks S_k >= the convexity bound for every k = 1..r, exactly.
pub fn intersection_check(sys: &SetSystem) -> Result<Vec<IntersectionVerdict>> {
    if sys.n() == 0 {
        // S_k = 0 for all k and the bound is only defined for n >= 1;
        // an empty ground set trivially satisfies everything.
        return Ok((1..=sys.r() as u64)
            .map(|k| IntersectionVerdict {
                k,
                s_k: BigUint::zero(),
                bound: BigRational::zero(),
                holds: true,
            })
            .collect());
    }
    let sums = intersection_sums(sys);
    let s1 = sums[0].clone();
    (1..=sys.r() as u64)
        .map(|k| {
            let bound = intersection_lower_bound(&s1, sys.n() as u64, k)?;
            let s_k = sums[k as usize - 1].clone();
            let holds = rational_from_uint(&s_k) >= bound;
            Ok(IntersectionVerdict {
                k,
                s_k,
                bound,
                holds,
            })
        })
        .collect()
}

/// The pair of sets with the largest intersection, together with the
/// overlap the averaging argument guarantees.
#[derive(Clone, Debug)]
pub struct OverlapPair {
    pub i: usize,
    pub j: usize,
    pub overlap: u64,
    pub threshold: BigRational,
    pub holds: bool,
}

/// Among r+1 subsets of an n-element ground set whose sizes sum to at least
/// (r - 1/r - (r+1)a)·n, some two share at least
/// ((r-2)/r + 2/(r²(r+1)) - (2(r-1)/r)·a)·n elements. Returns the pair
/// maximizing the overlap (lexicographic tie-break) and that threshold.
pub fn largest_overlap_pair(sys: &SetSystem, r: usize, a: &BigRational) -> Result<OverlapPair> {
    if r < 2 {
        return Err(Error::InvalidParam("r must be >= 2".into()));
    }
    if sys.r() != r + 1 {
        return Err(Error::InvalidParam(format!(
            "need exactly r+1 = {} sets, got {}",
            r + 1,
            sys.r()
        )));
    }
    let ri = BigInt::from(r as u64);
    let cap = BigRational::new(BigInt::one(), &ri * BigInt::from(r as u64 + 1));
    if a <= &BigRational::zero() || a >= &cap {
        return Err(Error::HypothesisViolated(format!(
            "a = {} outside (0, 1/(r(r+1))) = (0, {})",
            format_rational(a),
            format_rational(&cap)
        )));
    }
    let n = BigRational::from_integer(BigInt::from(sys.n() as u64));
    let s1: u64 = sys.sets().iter().map(|s| s.count() as u64).sum();
    let required = (BigRational::new(&ri * &ri - BigInt::one(), ri.clone())
        - BigRational::from_integer(BigInt::from(r as u64 + 1)) * a)
        * n.clone();
    if BigRational::from_integer(BigInt::from(s1)) < required {
        return Err(Error::HypothesisViolated(format!(
            "sum of set sizes {} below required {}",
            s1,
            format_rational(&required)
        )));
    }
    let threshold = (BigRational::new(&ri - BigInt::from(2), ri.clone())
        + BigRational::new(
            BigInt::from(2),
            &ri * &ri * BigInt::from(r as u64 + 1),
        )
        - BigRational::new(BigInt::from(2) * (&ri - BigInt::one()), ri.clone()) * a)
        * n;
    let mut best: Option<(usize, usize, u64)> = None;
    for i in 0..sys.r() {
        for j in i + 1..sys.r() {
            let overlap = sys.sets()[i].and_count(sys.sets()[j].words()) as u64;
            if best.is_none() || overlap > best.unwrap().2 {
                best = Some((i, j, overlap));
            }
        }
    }
    let (i, j, overlap) = best.expect("r+1 >= 3 sets give at least one pair");
    let holds = BigRational::from_integer(BigInt::from(overlap)) >= threshold;
    debug_assert!(holds, "overlap {} below threshold {}", overlap, threshold);
    Ok(OverlapPair {
        i,
        j,
        overlap,
        threshold,
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::big_rational;

    /// Oracle: S_k by enumerating every k-element family of set indices.
    fn sums_by_enumeration(sys: &SetSystem) -> Vec<BigUint> {
        fn families(r: usize, k: usize) -> Vec<Vec<usize>> {
            let mut out = Vec::new();
            let mut cur = Vec::new();
            fn rec(start: usize, r: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
                if cur.len() == k {
                    out.push(cur.clone());
                    return;
                }
                for i in start..r {
                    cur.push(i);
                    rec(i + 1, r, k, cur, out);
                    cur.pop();
                }
            }
            rec(0, r, k, &mut cur, &mut out);
            out
        }
        (1..=sys.r())
            .map(|k| {
                families(sys.r(), k)
                    .iter()
                    .map(|f| {
                        let mut acc = sys.sets()[f[0]].clone();
                        for &i in &f[1..] {
                            acc.and_assign(&sys.sets()[i]);
                        }
                        BigUint::from(acc.count() as u64)
                    })
                    .sum()
            })
            .collect()
    }

    #[test]
    fn sums_small_example() {
        let sys = SetSystem::from_slices(3, &[&[0, 1], &[1, 2], &[0, 1, 2]]).unwrap();
        assert_eq!(
            intersection_sums(&sys),
            [7u32, 5, 1].map(BigUint::from).to_vec()
        );
        assert_eq!(intersection_sums(&sys), sums_by_enumeration(&sys));
    }

    #[test]
    fn sums_degenerate_systems() {
        let full = SetSystem::from_slices(4, &[&[0, 1, 2, 3][..]; 3]).unwrap();
        let sums = intersection_sums(&full);
        // all A_i = X: S_k = n * C(r, k)
        for (k, s) in sums.iter().enumerate() {
            assert_eq!(*s, BigUint::from(4u32) * binomial(3, k as u64 + 1));
        }
        let empty = SetSystem::from_slices(4, &[&[], &[], &[]]).unwrap();
        assert!(intersection_sums(&empty).iter().all(|s| s.is_zero()));
    }

    #[test]
    fn degree_identity_equals_enumeration_exhaustively() {
        // Every system with n <= 6, r <= 4. The sweep runs on raw masks so
        // 2^24 systems stay fast; the library API is exercised on the full
        // n <= 4, r <= 3 space and random larger systems below.
        let mut binom = [[0u64; 5]; 5];
        for (d, row) in binom.iter_mut().enumerate() {
            row[0] = 1;
            for k in 1..=d {
                row[k] = binomial(d as u64, k as u64).try_into().unwrap();
            }
        }
        for n in 1usize..=6 {
            for r in 1usize..=4 {
                let space = 1u64 << n;
                let mut masks = vec![0u64; r];
                loop {
                    // degree route
                    let mut by_degree = [0u64; 5];
                    for u in 0..n {
                        let d = masks.iter().filter(|&&m| (m >> u) & 1 == 1).count();
                        for k in 1..=r {
                            by_degree[k] += binom[d][k.min(4)];
                        }
                    }
                    // family-enumeration route
                    let mut by_family = [0u64; 5];
                    for fam in 1u32..(1 << r) {
                        let mut inter = u64::MAX;
                        for (i, &m) in masks.iter().enumerate() {
                            if (fam >> i) & 1 == 1 {
                                inter &= m;
                            }
                        }
                        by_family[fam.count_ones() as usize] += inter.count_ones() as u64;
                    }
                    assert_eq!(by_degree[1..=r], by_family[1..=r], "n={n} r={r} {masks:?}");
                    // odometer
                    let mut i = 0;
                    while i < r {
                        masks[i] += 1;
                        if masks[i] < space {
                            break;
                        }
                        masks[i] = 0;
                        i += 1;
                    }
                    if i == r {
                        break;
                    }
                }
            }
        }
    }

    #[test]
    fn library_sums_match_enumeration() {
        // full space for n <= 4, r <= 3 through the public API
        for n in 0usize..=4 {
            for r in 1usize..=3 {
                let space: u64 = 1 << n;
                let mut masks = vec![0u64; r];
                loop {
                    let sets: Vec<BitSet> = masks
                        .iter()
                        .map(|&m| {
                            BitSet::from_slice(
                                n,
                                &(0..n).filter(|&u| (m >> u) & 1 == 1).collect::<Vec<_>>(),
                            )
                        })
                        .collect();
                    let sys = SetSystem::new(n, sets).unwrap();
                    assert_eq!(intersection_sums(&sys), sums_by_enumeration(&sys));
                    let mut i = 0;
                    while i < r {
                        masks[i] += 1;
                        if masks[i] < space {
                            break;
                        }
                        masks[i] = 0;
                        i += 1;
                    }
                    if i == r {
                        break;
                    }
                }
            }
        }
        // random systems at the larger sizes
        let mut rng = crate::gen::SplitMix64::new(0x5E75);
        for _ in 0..2000 {
            let n = 5 + (rng.next_u64() % 2) as usize;
            let r = 1 + (rng.next_u64() % 4) as usize;
            let sets: Vec<BitSet> = (0..r)
                .map(|_| {
                    let m = rng.next_u64() & ((1 << n) - 1);
                    BitSet::from_slice(
                        n,
                        &(0..n).filter(|&u| (m >> u) & 1 == 1).collect::<Vec<_>>(),
                    )
                })
                .collect();
            let sys = SetSystem::new(n, sets).unwrap();
            assert_eq!(intersection_sums(&sys), sums_by_enumeration(&sys));
        }
    }

    #[test]
    fn lower_bound_examples() {
        assert_eq!(
            intersection_lower_bound(&BigUint::from(7u32), 3, 2).unwrap(),
            big_rational(5, 1)
        );
        // k = 1 collapses to S_1
        assert_eq!(
            intersection_lower_bound(&BigUint::from(123u32), 7, 1).unwrap(),
            big_rational(123, 1)
        );
        // empty system
        for k in 2..5 {
            assert_eq!(
                intersection_lower_bound(&BigUint::zero(), 5, k).unwrap(),
                BigRational::zero()
            );
        }
        assert!(intersection_lower_bound(&BigUint::one(), 0, 1).is_err());
    }

    #[test]
    fn check_small_example_is_tight_at_two() {
        let sys = SetSystem::from_slices(3, &[&[0, 1], &[1, 2], &[0, 1, 2]]).unwrap();
        let verdicts = intersection_check(&sys).unwrap();
        assert!(verdicts.iter().all(|v| v.holds));
        assert_eq!(verdicts[1].bound, big_rational(5, 1));
        assert_eq!(verdicts[1].s_k, BigUint::from(5u32));
    }

    #[test]
    fn constant_degree_systems_achieve_equality() {
        // all A_i = X gives a constant degree vector, where convexity is tight
        for n in 1usize..=5 {
            for r in 1usize..=4 {
                let all: Vec<usize> = (0..n).collect();
                let sys =
                    SetSystem::from_slices(n, &vec![all.as_slice(); r]).unwrap();
                for v in intersection_check(&sys).unwrap() {
                    assert!(v.holds);
                    assert_eq!(rational_from_uint(&v.s_k), v.bound, "n={n} r={r} k={}", v.k);
                }
            }
        }
    }

    #[test]
    fn overlap_pair_worked_example() {
        // three copies of {0..5} in a 12-element ground set
        let sys = SetSystem::from_slices(
            12,
            &[&[0, 1, 2, 3, 4, 5], &[0, 1, 2, 3, 4, 5], &[0, 1, 2, 3, 4, 5]],
        )
        .unwrap();
        let a = big_rational(1, 100);
        let pair = largest_overlap_pair(&sys, 2, &a).unwrap();
        assert_eq!((pair.i, pair.j), (0, 1));
        assert_eq!(pair.overlap, 6);
        // threshold = (1/6 - 1/100) * 12 = 47/25
        assert_eq!(pair.threshold, big_rational(47, 25));
        assert!(pair.holds);
    }

    #[test]
    fn overlap_pair_rejects_small_systems() {
        let sys =
            SetSystem::from_slices(12, &[&[0, 1, 2, 3], &[4, 5, 6, 7], &[8, 9, 10, 11]]).unwrap();
        let a = big_rational(1, 100);
        assert!(matches!(
            largest_overlap_pair(&sys, 2, &a),
            Err(Error::HypothesisViolated(_))
        ));
        // a out of range
        let sys2 = SetSystem::from_slices(12, &[&[0], &[0], &[0]]).unwrap();
        assert!(matches!(
            largest_overlap_pair(&sys2, 2, &big_rational(1, 6)),
            Err(Error::HypothesisViolated(_))
        ));
        // wrong set count
        let sys3 = SetSystem::from_slices(12, &[&[0], &[0]]).unwrap();
        assert!(matches!(
            largest_overlap_pair(&sys3, 2, &a),
            Err(Error::InvalidParam(_))
        ));
    }

    #[test]
    fn identical_full_sets_trivially_pass() {
        let all: Vec<usize> = (0..9).collect();
        let sys = SetSystem::from_slices(9, &vec![all.as_slice(); 4]).unwrap();
        let pair = largest_overlap_pair(&sys, 3, &big_rational(1, 1000)).unwrap();
        assert_eq!(pair.overlap, 9);
        assert!(pair.holds);
    }
}
