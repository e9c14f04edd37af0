//! The named bound formulas, evaluated in exact arithmetic. Each bound is a
//! threshold some measured quantity (jointsize, clique count, minimum
//! degree) is compared against; the comparison is exact, including the one
//! formula whose threshold involves a square root.

use crate::exact::{format_rational, QuadExt};
use crate::{Error, Result};
use num::{BigInt, BigRational, BigUint, One, Zero};
use serde_json::{json, Value};
use std::cmp::Ordering;

/// Whether the parameters sit where the worst-case statements are asserted
/// (n > r^8, and for the stability bounds also alpha < r^-8 / 36) or outside,
/// where measurements are reported but nothing is claimed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regime {
    Guaranteed,
    Empirical,
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Regime::Guaranteed => write!(f, "Guaranteed"),
            Regime::Empirical => write!(f, "Empirical"),
        }
    }
}

pub fn compute_regime(n: u64, r: u64, alpha: Option<&BigRational>) -> Regime {
    let r8 = BigUint::from(r).pow(8);
    if BigUint::from(n) <= r8 {
        return Regime::Empirical;
    }
    if let Some(alpha) = alpha {
        let cap = BigRational::new(BigInt::one(), BigInt::from(36u32) * BigInt::from(r8));
        if alpha.is_zero() || alpha < &BigRational::zero() || alpha >= &cap {
            return Regime::Empirical;
        }
    }
    Regime::Guaranteed
}

/// Stable identifiers of the bound formulas.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundName {
    /// n^(r-1) / (10r)^(6r): the older jointsize guarantee.
    Erdb,
    /// 2c · (r/(r+1)) · (n/r)^(r+1): clique-count lower bound at edge surplus c.
    Lok,
    /// 2c · (n/r)^(r-1): jointsize lower bound at edge surplus c.
    Loj,
    /// c · (n/r)^(r-2): jointsize lower bound at min-degree surplus c,
    /// as printed (see the `note` on its reports).
    Cor,
    /// c · (r/(r+1)) · (n/r)^(r+1): clique-count lower bound at min-degree
    /// surplus c.
    CorK,
    /// n^(r-1) / r^(r+3): jointsize under the high-min-degree hypothesis.
    Lekd,
    /// n^(r-1) / r^(r+5): the headline jointsize guarantee.
    Ourb,
    /// (1 - 1/r^3) · n^(r-1) / r^(r+5): jointsize branch of the stability
    /// dichotomy.
    Minjs,
    /// (1 - 1/r - 6·sqrt(alpha)) · n: min-degree branch of the stability
    /// dichotomy.
    Mindg,
}

pub const ALL_BOUNDS: [BoundName; 9] = [
    BoundName::Erdb,
    BoundName::Lok,
    BoundName::Loj,
    BoundName::Cor,
    BoundName::CorK,
    BoundName::Lekd,
    BoundName::Ourb,
    BoundName::Minjs,
    BoundName::Mindg,
];

impl BoundName {
    pub fn id(&self) -> &'static str {
        match self {
            BoundName::Erdb => "erdb",
            BoundName::Lok => "lok",
            BoundName::Loj => "loj",
            BoundName::Cor => "cor",
            BoundName::CorK => "cor_k",
            BoundName::Lekd => "lekd",
            BoundName::Ourb => "ourb",
            BoundName::Minjs => "minjs",
            BoundName::Mindg => "mindg",
        }
    }

    pub fn parse(s: &str) -> Result<BoundName> {
        ALL_BOUNDS
            .iter()
            .copied()
            .find(|b| b.id() == s)
            .ok_or_else(|| Error::UnknownBound(s.to_string()))
    }

    /// The measured quantity must exceed the bound strictly, except for the
    /// oldest one which is stated non-strictly.
    pub fn strict(&self) -> bool {
        !matches!(self, BoundName::Erdb)
    }

    fn needs_c(&self) -> bool {
        matches!(
            self,
            BoundName::Lok | BoundName::Loj | BoundName::Cor | BoundName::CorK
        )
    }

    fn needs_alpha(&self) -> bool {
        matches!(self, BoundName::Mindg)
    }
}

/// Free symbols a formula may consume.
#[derive(Clone, Debug, Default)]
pub struct BoundInputs {
    pub n: u64,
    pub r: u64,
    pub c: Option<BigRational>,
    pub alpha: Option<BigRational>,
}

impl BoundInputs {
    pub fn nr(n: u64, r: u64) -> Self {
        BoundInputs {
            n,
            r,
            c: None,
            alpha: None,
        }
    }

    pub fn with_c(n: u64, r: u64, c: BigRational) -> Self {
        BoundInputs {
            n,
            r,
            c: Some(c),
            alpha: None,
        }
    }

    pub fn with_alpha(n: u64, r: u64, alpha: BigRational) -> Self {
        BoundInputs {
            n,
            r,
            c: None,
            alpha: Some(alpha),
        }
    }
}

/// An exactly-represented bound value: rational, or rational plus a rational
/// multiple of a square root.
#[derive(Clone, Debug, PartialEq)]
pub enum BoundValue {
    Rational(BigRational),
    WithSqrt(QuadExt),
}

impl BoundValue {
    pub fn cmp_measured(&self, measured: &BigRational) -> Ordering {
        match self {
            BoundValue::Rational(v) => measured.cmp(v),
            BoundValue::WithSqrt(q) => q.cmp_rational(measured).reverse(),
        }
    }

    pub fn display(&self) -> String {
        match self {
            BoundValue::Rational(v) => format_rational(v),
            BoundValue::WithSqrt(q) => q.to_string(),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            BoundValue::Rational(v) => json!({
                "numerator": v.numer().to_string(),
                "denominator": v.denom().to_string(),
            }),
            BoundValue::WithSqrt(q) => json!({
                "a": format_rational(&q.a),
                "b": format_rational(&q.b),
                "radicand": format_rational(&q.radicand),
            }),
        }
    }
}

/// Evaluation record of one named bound, optionally compared against a
/// measurement.
#[derive(Clone, Debug)]
pub struct BoundReport {
    pub name: &'static str,
    pub inputs: Vec<(String, String)>,
    pub value: BoundValue,
    pub measured: Option<BigRational>,
    pub holds: Option<bool>,
    pub regime: Regime,
    pub note: Option<String>,
}

impl BoundReport {
    pub fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "inputs": self.inputs.iter().map(|(k, v)| (k.clone(), Value::String(v.clone()))).collect::<serde_json::Map<_, _>>(),
            "value": self.value.to_json(),
            "measured": self.measured.as_ref().map(format_rational),
            "holds": self.holds,
            "regime": self.regime.to_string(),
            "note": self.note,
        })
    }

    /// Compact form embedded in joint certificates; only rational-valued
    /// bounds appear there.
    pub fn to_certificate_json(&self) -> Value {
        let (num, den) = match &self.value {
            BoundValue::Rational(v) => (v.numer().to_string(), v.denom().to_string()),
            BoundValue::WithSqrt(q) => (q.to_string(), "1".to_string()),
        };
        json!({
            "name": self.name,
            "numerator": num,
            "denominator": den,
            "holds": self.holds,
            "regime": self.regime.to_string(),
        })
    }

    pub fn to_csv_row(&self) -> String {
        format!(
            "{},{},{},{},{}",
            self.name,
            self.value.display(),
            self.measured.as_ref().map(format_rational).unwrap_or_default(),
            self.holds.map(|h| h.to_string()).unwrap_or_default(),
            self.regime
        )
    }
}

fn pow_rat(base: BigRational, exp: u32) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..exp {
        acc *= base.clone();
    }
    acc
}

fn int(v: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Evaluates a named bound formula at the given inputs, exactly.
pub fn eval_bound(name: BoundName, inputs: &BoundInputs) -> Result<BoundValue> {
    let n = inputs.n;
    let r = inputs.r;
    if r < 2 {
        return Err(Error::InvalidParam("bounds require r >= 2".into()));
    }
    let missing = |what: &str| Error::MissingInput {
        bound: name.id().to_string(),
        input: what.to_string(),
    };
    let c = if name.needs_c() {
        Some(inputs.c.clone().ok_or_else(|| missing("c"))?)
    } else {
        None
    };
    let alpha = if name.needs_alpha() {
        Some(inputs.alpha.clone().ok_or_else(|| missing("alpha"))?)
    } else {
        None
    };
    let n_over_r = BigRational::new(BigInt::from(n), BigInt::from(r));
    let val = match name {
        BoundName::Erdb => {
            let num = BigUint::from(n).pow(r as u32 - 1);
            let den = BigUint::from(10 * r).pow(6 * r as u32);
            BoundValue::Rational(BigRational::new(num.into(), den.into()))
        }
        BoundName::Lok => {
            let c = c.unwrap();
            let factor = BigRational::new(BigInt::from(r), BigInt::from(r + 1));
            BoundValue::Rational(int(2) * c * factor * pow_rat(n_over_r, r as u32 + 1))
        }
        BoundName::Loj => {
            let c = c.unwrap();
            BoundValue::Rational(int(2) * c * pow_rat(n_over_r, r as u32 - 1))
        }
        BoundName::Cor => {
            let c = c.unwrap();
            BoundValue::Rational(c * pow_rat(n_over_r, r as u32 - 2))
        }
        BoundName::CorK => {
            let c = c.unwrap();
            let factor = BigRational::new(BigInt::from(r), BigInt::from(r + 1));
            BoundValue::Rational(c * factor * pow_rat(n_over_r, r as u32 + 1))
        }
        BoundName::Lekd => {
            let num = BigUint::from(n).pow(r as u32 - 1);
            let den = BigUint::from(r).pow(r as u32 + 3);
            BoundValue::Rational(BigRational::new(num.into(), den.into()))
        }
        BoundName::Ourb => {
            let num = BigUint::from(n).pow(r as u32 - 1);
            let den = BigUint::from(r).pow(r as u32 + 5);
            BoundValue::Rational(BigRational::new(num.into(), den.into()))
        }
        BoundName::Minjs => {
            let num = BigUint::from(n).pow(r as u32 - 1);
            let den = BigUint::from(r).pow(r as u32 + 5);
            let shrink = BigRational::one()
                - BigRational::new(BigInt::one(), BigInt::from(r).pow(3));
            BoundValue::Rational(shrink * BigRational::new(num.into(), den.into()))
        }
        BoundName::Mindg => {
            let alpha = alpha.unwrap();
            let a = (BigRational::one() - BigRational::new(BigInt::one(), BigInt::from(r)))
                * int(n);
            let b = -(int(6) * int(n));
            BoundValue::WithSqrt(QuadExt::new(a, b, alpha))
        }
    };
    Ok(val)
}

/// Evaluates a bound and, when a measurement is supplied, records the exact
/// verdict `measured > value` (>= for the one non-strict bound).
pub fn bound_report(
    name: BoundName,
    inputs: &BoundInputs,
    measured: Option<BigRational>,
) -> Result<BoundReport> {
    let value = eval_bound(name, inputs)?;
    let holds = measured.as_ref().map(|m| {
        let ord = value.cmp_measured(m);
        if name.strict() {
            ord == Ordering::Greater
        } else {
            ord != Ordering::Less
        }
    });
    let mut rendered = vec![
        ("n".to_string(), inputs.n.to_string()),
        ("r".to_string(), inputs.r.to_string()),
    ];
    if name.needs_c() {
        rendered.push((
            "c".to_string(),
            inputs.c.as_ref().map(format_rational).unwrap_or_default(),
        ));
    }
    if name.needs_alpha() {
        rendered.push((
            "alpha".to_string(),
            inputs.alpha.as_ref().map(format_rational).unwrap_or_default(),
        ));
    }
    let note = match name {
        BoundName::Cor => Some(
            "exponent r-2 as printed; the chain it follows from would give (n/r)^(r-1) with c/2"
                .to_string(),
        ),
        _ => None,
    };
    Ok(BoundReport {
        name: name.id(),
        inputs: rendered,
        value,
        measured,
        holds,
        regime: compute_regime(inputs.n, inputs.r, inputs.alpha.as_ref()),
        note,
    })
}
