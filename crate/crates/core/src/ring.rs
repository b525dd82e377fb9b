//! Polynomial ring contexts and dense exponent-vector monomials.
//!
//! A [`Ring`] is an ordered list of named variables. Names may carry a
//! display index tuple (for `u_j^{(i)}`, `y_{i1...ir}`, `z_j^{(i)}`), which is
//! metadata only: all algebra is positional.
//!
//! Monomial text syntax is a `*`-separated product of `name` or `name^k`
//! factors, with `1` for the unit. Variable names may contain `*` and `^`
//! inside balanced braces, so `x_{u1^2*u2}^3` parses as the cube of the
//! variable `x_{u1^2*u2}`.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};

/// A ring variable with optional display indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Variable {
    pub name: String,
    pub indices: Vec<u32>,
}

impl Variable {
    pub fn new(name: impl Into<String>) -> Self {
        Variable {
            name: name.into(),
            indices: Vec::new(),
        }
    }

    pub fn with_indices(name: impl Into<String>, indices: Vec<u32>) -> Self {
        Variable {
            name: name.into(),
            indices,
        }
    }
}

struct RingData {
    vars: Vec<Variable>,
    lookup: HashMap<String, usize>,
}

/// Ordered set of distinct named variables. Cheap to clone.
#[derive(Clone)]
pub struct Ring(Arc<RingData>);

impl Ring {
    pub fn new<I, S>(names: I) -> Result<Ring>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Ring::with_variables(names.into_iter().map(Variable::new).collect())
    }

    pub fn with_variables(vars: Vec<Variable>) -> Result<Ring> {
        let mut lookup = HashMap::with_capacity(vars.len());
        for (i, v) in vars.iter().enumerate() {
            validate_name(&v.name)?;
            if lookup.insert(v.name.clone(), i).is_some() {
                return Err(Error::DuplicateVariable(v.name.clone()));
            }
        }
        Ok(Ring(Arc::new(RingData { vars, lookup })))
    }

    pub fn len(&self) -> usize {
        self.0.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.vars.is_empty()
    }

    pub fn variables(&self) -> &[Variable] {
        &self.0.vars
    }

    pub fn name(&self, i: usize) -> &str {
        &self.0.vars[i].name
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.0.vars.iter().map(|v| v.name.as_str())
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.lookup.get(name).copied()
    }

    pub fn unit(&self) -> Monomial {
        Monomial {
            ring: self.clone(),
            exps: vec![0; self.len()],
        }
    }

    /// The monomial consisting of the single variable at position `i`.
    pub fn var(&self, i: usize) -> Monomial {
        let mut exps = vec![0; self.len()];
        exps[i] = 1;
        Monomial {
            ring: self.clone(),
            exps,
        }
    }

    pub fn monomial(&self, exps: Vec<u32>) -> Result<Monomial> {
        if exps.len() != self.len() {
            return Err(Error::ArityMismatch {
                expected: self.len(),
                got: exps.len(),
            });
        }
        Ok(Monomial {
            ring: self.clone(),
            exps,
        })
    }

    /// Parses the monomial text syntax. Unknown names are errors.
    pub fn parse_monomial(&self, text: &str) -> Result<Monomial> {
        let text = text.trim();
        let mut exps = vec![0u32; self.len()];
        if text == "1" {
            return Ok(Monomial {
                ring: self.clone(),
                exps,
            });
        }
        if text.is_empty() {
            return Err(Error::parse(0, "empty monomial"));
        }
        for factor in split_top_level(text, '*') {
            let factor = factor.trim();
            let (name, power) = match rfind_top_level(factor, '^') {
                Some(pos) => {
                    let power: u32 = factor[pos + 1..]
                        .trim()
                        .parse()
                        .map_err(|_| Error::parse(0, format!("bad exponent in `{factor}`")))?;
                    if power == 0 {
                        return Err(Error::parse(0, format!("zero exponent in `{factor}`")));
                    }
                    (factor[..pos].trim(), power)
                }
                None => (factor, 1),
            };
            let idx = self
                .index_of(name)
                .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
            exps[idx] = exps[idx].checked_add(power).ok_or(Error::Overflow)?;
        }
        Ok(Monomial {
            ring: self.clone(),
            exps,
        })
    }

    /// True when both handles describe the same variable list.
    pub fn same_as(&self, other: &Ring) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.len() == other.len() && self.names().eq(other.names()))
    }
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

impl Eq for Ring {}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.names()).finish()
    }
}

fn validate_name(name: &str) -> Result<()> {
    let bad = || Error::InvalidVariableName(name.to_string());
    if name.is_empty() || name == "1" || name.contains('#') {
        return Err(bad());
    }
    let mut depth = 0i32;
    for c in name.chars() {
        match c {
            '{' => depth += 1,
            '}' => {
                depth -= 1;
                if depth < 0 {
                    return Err(bad());
                }
            }
            c if c.is_whitespace() => return Err(bad()),
            '*' | '^' | '-' | '>' | ':' if depth == 0 => return Err(bad()),
            _ => {}
        }
    }
    if depth != 0 {
        return Err(bad());
    }
    Ok(())
}

pub(crate) fn split_top_level(text: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '{' => depth += 1,
            '}' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&text[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&text[start..]);
    out
}

fn rfind_top_level(text: &str, needle: char) -> Option<usize> {
    let mut depth = 0i32;
    let mut found = None;
    for (i, c) in text.char_indices() {
        match c {
            '{' => depth += 1,
            '}' => depth -= 1,
            c if c == needle && depth == 0 => found = Some(i),
            _ => {}
        }
    }
    found
}

/// A monomial of a [`Ring`], stored as a dense exponent vector.
#[derive(Clone)]
pub struct Monomial {
    ring: Ring,
    exps: Vec<u32>,
}

impl Monomial {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn into_exponents(self) -> Vec<u32> {
        self.exps
    }

    pub fn degree(&self) -> u64 {
        self.exps.iter().map(|&e| e as u64).sum()
    }

    pub fn is_unit(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn is_squarefree(&self) -> bool {
        self.exps.iter().all(|&e| e <= 1)
    }

    fn check_ring(&self, other: &Monomial) -> Result<()> {
        if self.ring.same_as(&other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn mul(&self, other: &Monomial) -> Result<Monomial> {
        self.check_ring(other)?;
        let exps = add_exps(&self.exps, &other.exps)?;
        Ok(Monomial {
            ring: self.ring.clone(),
            exps,
        })
    }

    pub fn pow(&self, k: u32) -> Result<Monomial> {
        let exps = self
            .exps
            .iter()
            .map(|&e| e.checked_mul(k).ok_or(Error::Overflow))
            .collect::<Result<_>>()?;
        Ok(Monomial {
            ring: self.ring.clone(),
            exps,
        })
    }

    /// Whether `self` divides `other`.
    pub fn divides(&self, other: &Monomial) -> Result<bool> {
        self.check_ring(other)?;
        Ok(divides_exps(&self.exps, &other.exps))
    }

    /// `self / divisor`, failing when the division is not exact.
    pub fn quotient(&self, divisor: &Monomial) -> Result<Monomial> {
        if !divisor.divides(self)? {
            return Err(Error::NotDivisible {
                divisor: divisor.to_string(),
                dividend: self.to_string(),
            });
        }
        let exps = self.exps.iter().zip(&divisor.exps).map(|(a, b)| a - b).collect();
        Ok(Monomial {
            ring: self.ring.clone(),
            exps,
        })
    }

    pub fn lcm(&self, other: &Monomial) -> Result<Monomial> {
        self.check_ring(other)?;
        Ok(Monomial {
            ring: self.ring.clone(),
            exps: lcm_exps(&self.exps, &other.exps),
        })
    }

    pub fn gcd(&self, other: &Monomial) -> Result<Monomial> {
        self.check_ring(other)?;
        let exps = self.exps.iter().zip(&other.exps).map(|(a, b)| *a.min(b)).collect();
        Ok(Monomial {
            ring: self.ring.clone(),
            exps,
        })
    }
}

impl PartialEq for Monomial {
    fn eq(&self, other: &Self) -> bool {
        self.exps == other.exps && self.ring.same_as(&other.ring)
    }
}

impl Eq for Monomial {}

impl Hash for Monomial {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.exps.hash(state);
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unit() {
            return f.write_str("1");
        }
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            f.write_str(self.ring.name(i))?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Monomial({self})")
    }
}

pub(crate) fn add_exps(a: &[u32], b: &[u32]) -> Result<Vec<u32>> {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.checked_add(*y).ok_or(Error::Overflow))
        .collect()
}

pub(crate) fn divides_exps(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub(crate) fn lcm_exps(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

pub(crate) fn coprime_exps(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}
