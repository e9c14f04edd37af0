//! Exact arithmetic helpers: big binomials, rational parsing/printing, and a
//! tiny quadratic extension a + b·√s used wherever a threshold involves a
//! square root. Comparisons against such values are decided by sign analysis
//! on squares, so every verdict stays exact.

use num::bigint::Sign;
use num::{BigInt, BigRational, BigUint, One, Signed, Zero};
use std::cmp::Ordering;

/// C(n, k) as an exact big integer; 0 when k > n.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// C(n, k) for a big `n`.
pub fn binomial_big(n: &BigUint, k: u64) -> BigUint {
    if BigUint::from(k) > *n {
        return BigUint::zero();
    }
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - BigUint::from(i)) / BigUint::from(i + 1);
    }
    acc
}

pub fn big_rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rational_from_uint(v: &BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from_biguint(Sign::Plus, v.clone()))
}

/// Parses "p/q" or "p" into an exact rational.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let num: BigInt = p.trim().parse().ok()?;
            let den: BigInt = q.trim().parse().ok()?;
            if den.is_zero() {
                None
            } else {
                Some(BigRational::new(num, den))
            }
        }
        None => {
            let num: BigInt = s.parse().ok()?;
            Some(BigRational::from_integer(num))
        }
    }
}

/// Renders a rational as "p/q" ("p" when integral).
pub fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// a + b·√s with rational a, b and rational radicand s ≥ 0.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadExt {
    pub a: BigRational,
    pub b: BigRational,
    pub radicand: BigRational,
}

impl QuadExt {
    pub fn new(a: BigRational, b: BigRational, radicand: BigRational) -> Self {
        assert!(!radicand.is_negative(), "radicand must be non-negative");
        QuadExt { a, b, radicand }
    }

    pub fn rational(a: BigRational) -> Self {
        QuadExt {
            a,
            b: BigRational::zero(),
            radicand: BigRational::zero(),
        }
    }

    /// Exact sign of a + b·√s.
    pub fn sign(&self) -> Ordering {
        if self.b.is_zero() || self.radicand.is_zero() {
            return self.a.cmp(&BigRational::zero());
        }
        let sa = self.a.cmp(&BigRational::zero());
        let sb = self.b.cmp(&BigRational::zero());
        match (sa, sb) {
            (Ordering::Equal, s) => s,
            (Ordering::Greater, Ordering::Greater) => Ordering::Greater,
            (Ordering::Less, Ordering::Less) => Ordering::Less,
            // Opposite signs: |a| vs |b|·√s, i.e. a² vs b²·s.
            (Ordering::Greater, Ordering::Less) => {
                let a2 = &self.a * &self.a;
                let b2s = &self.b * &self.b * &self.radicand;
                a2.cmp(&b2s)
            }
            (Ordering::Less, Ordering::Greater) => {
                let a2 = &self.a * &self.a;
                let b2s = &self.b * &self.b * &self.radicand;
                b2s.cmp(&a2)
            }
            _ => unreachable!(),
        }
    }

    /// Compares self with an exact rational.
    pub fn cmp_rational(&self, q: &BigRational) -> Ordering {
        QuadExt {
            a: &self.a - q,
            b: self.b.clone(),
            radicand: self.radicand.clone(),
        }
        .sign()
    }

    /// Decimal approximation for display only; verdicts never use this.
    pub fn to_f64(&self) -> f64 {
        let a = rational_to_f64(&self.a);
        let b = rational_to_f64(&self.b);
        let s = rational_to_f64(&self.radicand);
        a + b * s.sqrt()
    }
}

impl std::fmt::Display for QuadExt {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.b.is_zero() || self.radicand.is_zero() {
            write!(f, "{}", format_rational(&self.a))
        } else {
            write!(
                f,
                "{} + ({})*sqrt({})",
                format_rational(&self.a),
                format_rational(&self.b),
                format_rational(&self.radicand)
            )
        }
    }
}

pub fn rational_to_f64(q: &BigRational) -> f64 {
    let num = q.numer();
    let den = q.denom();
    // Scale down in tandem so huge integers still land in f64 range.
    let nb = num.bits().max(den.bits());
    if nb <= 52 {
        to_f64_raw(num) / to_f64_raw(den)
    } else {
        let shift = nb - 52;
        to_f64_raw(&(num >> shift)) / to_f64_raw(&(den >> shift))
    }
}

fn to_f64_raw(v: &BigInt) -> f64 {
    use num::ToPrimitive;
    v.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(0, 0), BigUint::one());
        assert_eq!(binomial(5, 2), BigUint::from(10u32));
        assert_eq!(binomial(5, 6), BigUint::zero());
        assert_eq!(binomial(52, 5), BigUint::from(2_598_960u32));
        assert_eq!(binomial_big(&BigUint::from(52u32), 5), binomial(52, 5));
    }

    #[test]
    fn rational_parse_format() {
        let q = parse_rational("75/32").unwrap();
        assert_eq!(format_rational(&q), "75/32");
        assert_eq!(parse_rational("  -3 "), Some(big_rational(-3, 1)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
    }

    #[test]
    fn quad_sign_analysis() {
        // 3 - 2·√2 > 0 since 9 > 8.
        let q = QuadExt::new(big_rational(3, 1), big_rational(-2, 1), big_rational(2, 1));
        assert_eq!(q.sign(), Ordering::Greater);
        // 2 - 2·√2 < 0 since 4 < 8.
        let q = QuadExt::new(big_rational(2, 1), big_rational(-2, 1), big_rational(2, 1));
        assert_eq!(q.sign(), Ordering::Less);
        // 2 - 2·√1 = 0.
        let q = QuadExt::new(big_rational(2, 1), big_rational(-2, 1), big_rational(1, 1));
        assert_eq!(q.sign(), Ordering::Equal);
        // -1 + 3·√(1/4) = 1/2 > 0.
        let q = QuadExt::new(big_rational(-1, 1), big_rational(3, 1), big_rational(1, 4));
        assert_eq!(q.sign(), Ordering::Greater);
        assert_eq!(q.cmp_rational(&big_rational(1, 2)), Ordering::Equal);
    }
}
