//! Monomial orders: lex, grlex, grevlex and rational weight orders with a
//! tie-break. Variables compare in ring order, the first variable largest.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::ring::{Monomial, Ring};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TieBreak {
    Lex,
    Grlex,
    Grevlex,
}

impl TieBreak {
    fn cmp_exps(self, a: &[u32], b: &[u32]) -> Ordering {
        match self {
            TieBreak::Lex => cmp_lex(a, b),
            TieBreak::Grlex => cmp_grlex(a, b),
            TieBreak::Grevlex => cmp_grevlex(a, b),
        }
    }

    fn name(self) -> &'static str {
        match self {
            TieBreak::Lex => "lex",
            TieBreak::Grlex => "grlex",
            TieBreak::Grevlex => "grevlex",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrderKind {
    Lex,
    Grlex,
    Grevlex,
    Weighted { weights: Vec<BigRational>, tie: TieBreak },
}

/// A monomial order bound to a ring.
#[derive(Clone)]
pub struct MonomialOrder {
    kind: OrderKind,
    ring: Ring,
    /// Weights scaled to a common denominator; comparing scaled dot products
    /// is equivalent to comparing the rational ones.
    scaled: Vec<u64>,
}

impl MonomialOrder {
    pub fn lex(ring: &Ring) -> Self {
        Self::simple(OrderKind::Lex, ring)
    }

    pub fn grlex(ring: &Ring) -> Self {
        Self::simple(OrderKind::Grlex, ring)
    }

    pub fn grevlex(ring: &Ring) -> Self {
        Self::simple(OrderKind::Grevlex, ring)
    }

    fn simple(kind: OrderKind, ring: &Ring) -> Self {
        MonomialOrder {
            kind,
            ring: ring.clone(),
            scaled: Vec::new(),
        }
    }

    pub fn weighted(ring: &Ring, weights: Vec<BigRational>, tie: TieBreak) -> Result<Self> {
        if weights.len() != ring.len() {
            return Err(Error::ArityMismatch {
                expected: ring.len(),
                got: weights.len(),
            });
        }
        if weights.iter().any(|w| w.is_negative()) {
            return Err(Error::BadWeight("order weights must be nonnegative".into()));
        }
        let denom = weights.iter().fold(BigInt::one(), |acc, w| acc.lcm(w.denom()));
        let scaled = weights
            .iter()
            .map(|w| (w.numer() * (&denom / w.denom())).to_u64().ok_or(Error::Overflow))
            .collect::<Result<_>>()?;
        Ok(MonomialOrder {
            kind: OrderKind::Weighted { weights, tie },
            ring: ring.clone(),
            scaled,
        })
    }

    pub fn kind(&self) -> &OrderKind {
        &self.kind
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// Parses `lex`, `grlex`, `grevlex` or `weighted:w1,w2,...` (grevlex
    /// tie-break), optionally `weighted:w1,...;lex` to pick the tie-break.
    pub fn parse(text: &str, ring: &Ring) -> Result<Self> {
        match text.trim() {
            "lex" => Ok(Self::lex(ring)),
            "grlex" => Ok(Self::grlex(ring)),
            "grevlex" => Ok(Self::grevlex(ring)),
            other => {
                let body = other
                    .strip_prefix("weighted:")
                    .ok_or_else(|| Error::parse(0, format!("unknown order `{other}`")))?;
                let (list, tie) = match body.split_once(';') {
                    Some((l, "lex")) => (l, TieBreak::Lex),
                    Some((l, "grlex")) => (l, TieBreak::Grlex),
                    Some((l, "grevlex")) => (l, TieBreak::Grevlex),
                    Some((_, t)) => return Err(Error::parse(0, format!("unknown tie-break `{t}`"))),
                    None => (body, TieBreak::Grevlex),
                };
                let weights = list
                    .split(',')
                    .map(|w| parse_rational(w.trim()).ok_or_else(|| Error::parse(0, format!("bad weight `{w}`"))))
                    .collect::<Result<Vec<_>>>()?;
                Self::weighted(ring, weights, tie)
            }
        }
    }

    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Result<Ordering> {
        if !a.ring().same_as(&self.ring) || !b.ring().same_as(&self.ring) {
            return Err(Error::RingMismatch);
        }
        Ok(self.cmp_exps(a.exponents(), b.exponents()))
    }

    /// Compares raw exponent vectors of this order's ring.
    pub fn cmp_exps(&self, a: &[u32], b: &[u32]) -> Ordering {
        match &self.kind {
            OrderKind::Lex => cmp_lex(a, b),
            OrderKind::Grlex => cmp_grlex(a, b),
            OrderKind::Grevlex => cmp_grevlex(a, b),
            OrderKind::Weighted { tie, .. } => {
                let wa = weigh(&self.scaled, a);
                let wb = weigh(&self.scaled, b);
                wa.cmp(&wb).then_with(|| tie.cmp_exps(a, b))
            }
        }
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            OrderKind::Lex => f.write_str("lex"),
            OrderKind::Grlex => f.write_str("grlex"),
            OrderKind::Grevlex => f.write_str("grevlex"),
            OrderKind::Weighted { weights, tie } => {
                let list: Vec<String> = weights.iter().map(|w| w.to_string()).collect();
                write!(f, "weighted:{}", list.join(","))?;
                if *tie != TieBreak::Grevlex {
                    write!(f, ";{}", tie.name())?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Debug for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MonomialOrder({self})")
    }
}

/// Parses `p`, `p/q` (and `-p/q`, rejected later where negatives are invalid).
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let (n, d) = match text.split_once('/') {
        Some((n, d)) => (n.trim().parse::<BigInt>().ok()?, d.trim().parse::<BigInt>().ok()?),
        None => (text.trim().parse::<BigInt>().ok()?, BigInt::one()),
    };
    if d.is_zero() {
        return None;
    }
    Some(BigRational::new(n, d))
}

fn weigh(weights: &[u64], e: &[u32]) -> u128 {
    weights.iter().zip(e).map(|(&w, &x)| w as u128 * x as u128).sum()
}

fn degree(e: &[u32]) -> u64 {
    e.iter().map(|&x| x as u64).sum()
}

pub(crate) fn cmp_lex(a: &[u32], b: &[u32]) -> Ordering {
    a.cmp(b)
}

pub(crate) fn cmp_grlex(a: &[u32], b: &[u32]) -> Ordering {
    degree(a).cmp(&degree(b)).then_with(|| a.cmp(b))
}

pub(crate) fn cmp_grevlex(a: &[u32], b: &[u32]) -> Ordering {
    degree(a).cmp(&degree(b)).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                // smaller exponent in the last differing variable wins
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}
