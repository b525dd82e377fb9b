//! Line-based text formats.
//!
//! Configuration: `ring: t1 t2 ...`, one member per line, optional
//! `weight: w1 w2 ...` with rationals `p/q`. Basis: optional `ring:` line,
//! then one `LEAD -> TAIL` per line. Nested system: a `base:` section and
//! `inner i:` sections, each holding a configuration block and an optional
//! `order:` line. Segre-Veronese spec: `sv: d=4 tau=2` followed by
//! `range p..q min c max b` lines. `#` starts a comment everywhere.

use std::fmt::Write as _;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::groebner::{Binomial, MarkedBasis};
use crate::order::{parse_rational, MonomialOrder, OrderKind};
use crate::ring::{Monomial, Ring};
use crate::segre_veronese::{RangeConstraint, SegreVeroneseSpec};
use crate::toric::{check_configuration, Configuration};

/// Non-empty, comment-stripped lines with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

fn at(line: usize) -> impl Fn(Error) -> Error {
    move |e| match e {
        Error::Parse { line: 0, message } => Error::parse(line, message),
        Error::Parse { .. } => e,
        other => Error::parse(line, other.to_string()),
    }
}

fn format_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// A parsed configuration file.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigFile {
    pub ring: Ring,
    pub members: Vec<Monomial>,
    pub weight: Option<Vec<BigRational>>,
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self> {
        let lines: Vec<(usize, &str)> = content_lines(text).collect();
        parse_config_block(&lines, 0)
    }

    pub fn to_configuration(&self) -> Result<Configuration> {
        match &self.weight {
            Some(w) => Configuration::with_weight(&self.ring, self.members.clone(), w.clone()),
            None => check_configuration(&self.ring, self.members.clone()),
        }
    }

    pub fn from_configuration(c: &Configuration, with_weight: bool) -> Self {
        ConfigFile {
            ring: c.ring().clone(),
            members: c.members().to_vec(),
            weight: with_weight.then(|| c.weight().to_vec()),
        }
    }

    pub fn format(&self) -> String {
        let mut out = String::new();
        writeln!(out, "ring: {}", self.ring.names().collect::<Vec<_>>().join(" ")).unwrap();
        for m in &self.members {
            writeln!(out, "{m}").unwrap();
        }
        if let Some(w) = &self.weight {
            let w: Vec<String> = w.iter().map(format_rational).collect();
            writeln!(out, "weight: {}", w.join(" ")).unwrap();
        }
        out
    }
}

fn parse_ring_line(line: usize, rest: &str) -> Result<Ring> {
    Ring::new(rest.split_whitespace()).map_err(at(line))
}

/// Parses a configuration block; `header_line` is used for errors when the
/// block is empty.
fn parse_config_block(lines: &[(usize, &str)], header_line: usize) -> Result<ConfigFile> {
    let Some(&(first, head)) = lines.first() else {
        return Err(Error::parse(header_line, "missing `ring:` line"));
    };
    let rest = head
        .strip_prefix("ring:")
        .ok_or_else(|| Error::parse(first, "expected `ring:` line"))?;
    let ring = parse_ring_line(first, rest)?;
    let mut members = Vec::new();
    let mut weight = None;
    for &(n, l) in &lines[1..] {
        if let Some(rest) = l.strip_prefix("weight:") {
            if weight.is_some() {
                return Err(Error::parse(n, "duplicate `weight:` line"));
            }
            let w = rest
                .split_whitespace()
                .map(|t| parse_rational(t).ok_or_else(|| Error::parse(n, format!("bad rational `{t}`"))))
                .collect::<Result<Vec<_>>>()?;
            if w.len() != ring.len() {
                return Err(Error::parse(
                    n,
                    format!("expected {} weights, got {}", ring.len(), w.len()),
                ));
            }
            weight = Some(w);
        } else {
            members.push(ring.parse_monomial(l).map_err(at(n))?);
        }
    }
    Ok(ConfigFile { ring, members, weight })
}

/// Parses a basis file over `ring`. A `ring:` line, if present, must list
/// exactly the variables of `ring`.
pub fn parse_basis(text: &str, ring: &Ring) -> Result<Vec<Binomial>> {
    let mut out = Vec::new();
    for (n, l) in content_lines(text) {
        if let Some(rest) = l.strip_prefix("ring:") {
            let names: Vec<&str> = rest.split_whitespace().collect();
            if names != ring.names().collect::<Vec<_>>() {
                return Err(Error::parse(n, "ring does not match the configuration"));
            }
            continue;
        }
        out.push(Binomial::parse(l, ring).map_err(at(n))?);
    }
    Ok(out)
}

/// Parses a basis file carrying its own `ring:` line.
pub fn parse_basis_with_ring(text: &str) -> Result<(Ring, Vec<Binomial>)> {
    let (n, head) = content_lines(text)
        .next()
        .ok_or_else(|| Error::parse(1, "missing `ring:` line"))?;
    let rest = head
        .strip_prefix("ring:")
        .ok_or_else(|| Error::parse(n, "expected `ring:` line"))?;
    let ring = parse_ring_line(n, rest)?;
    let gens = parse_basis(text, &ring)?;
    Ok((ring, gens))
}

/// Canonical basis text: `ring:` line, then elements sorted by lead
/// ascending under `order`.
pub fn format_basis(basis: &MarkedBasis, order: &MonomialOrder) -> String {
    let sorted = basis.sorted_by(order);
    let mut out = String::new();
    writeln!(out, "ring: {}", basis.ring().names().collect::<Vec<_>>().join(" ")).unwrap();
    for b in sorted.elements() {
        writeln!(out, "{b}").unwrap();
    }
    out
}

type Section<'a> = (usize, usize, Vec<(usize, &'a str)>);

/// A parsed nested-system file.
#[derive(Debug, Clone, PartialEq)]
pub struct NestedFile {
    pub base: ConfigFile,
    pub base_order: Option<OrderKind>,
    pub inner: Vec<(ConfigFile, Option<OrderKind>)>,
}

impl NestedFile {
    pub fn parse(text: &str) -> Result<Self> {
        // (header line, section index with 0 for base, body lines)
        let mut sections: Vec<Section> = Vec::new();
        for (n, l) in content_lines(text) {
            if l == "base:" {
                sections.push((n, 0, Vec::new()));
            } else if let Some(idx) = l.strip_prefix("inner").and_then(|r| r.strip_suffix(':')) {
                let i: usize = idx
                    .trim()
                    .parse()
                    .map_err(|_| Error::parse(n, format!("bad section header `{l}`")))?;
                if i == 0 {
                    return Err(Error::parse(n, "inner sections are numbered from 1"));
                }
                sections.push((n, i, Vec::new()));
            } else {
                let Some(last) = sections.last_mut() else {
                    return Err(Error::parse(n, "expected `base:` section"));
                };
                last.2.push((n, l));
            }
        }
        let mut base = None;
        let mut inner: Vec<Option<(ConfigFile, Option<OrderKind>)>> = Vec::new();
        for (n, i, body) in sections {
            let (order, body): (Vec<_>, Vec<_>) = body.into_iter().partition(|(_, l)| l.starts_with("order:"));
            if order.len() > 1 {
                return Err(Error::parse(order[1].0, "duplicate `order:` line"));
            }
            let cfg = parse_config_block(&body, n)?;
            let order = match order.first() {
                Some(&(m, l)) => Some(parse_order_kind(l["order:".len()..].trim()).map_err(at(m))?),
                None => None,
            };
            if i == 0 {
                if base.is_some() {
                    return Err(Error::parse(n, "duplicate `base:` section"));
                }
                base = Some((cfg, order));
            } else {
                if inner.len() < i {
                    inner.resize(i, None);
                }
                if inner[i - 1].is_some() {
                    return Err(Error::parse(n, format!("duplicate `inner {i}:` section")));
                }
                inner[i - 1] = Some((cfg, order));
            }
        }
        let (base, base_order) = base.ok_or_else(|| Error::parse(1, "missing `base:` section"))?;
        let inner = inner
            .into_iter()
            .enumerate()
            .map(|(i, s)| s.ok_or_else(|| Error::parse(0, format!("missing `inner {}:` section", i + 1))))
            .collect::<Result<Vec<_>>>()?;
        Ok(NestedFile {
            base,
            base_order,
            inner,
        })
    }

    pub fn format(&self) -> String {
        let mut out = String::from("base:\n");
        write_section(&mut out, &self.base, &self.base_order);
        for (i, (c, o)) in self.inner.iter().enumerate() {
            writeln!(out, "inner {}:", i + 1).unwrap();
            write_section(&mut out, c, o);
        }
        out
    }
}

fn write_section(out: &mut String, c: &ConfigFile, order: &Option<OrderKind>) {
    out.push_str(&c.format());
    if let Some(o) = order {
        writeln!(out, "order: {}", order_kind_text(o)).unwrap();
    }
}

/// Parses an order name without a ring. Section orders apply to
/// presentation rings that do not exist yet, so weights are only checked
/// against the target ring when the order is built.
pub fn parse_order_kind(text: &str) -> Result<OrderKind> {
    let arity = text
        .strip_prefix("weighted:")
        .map(|w| w.split(';').next().unwrap_or("").split(',').count())
        .unwrap_or(0);
    let dummy = Ring::new((0..arity).map(|i| format!("v{i}")))?;
    Ok(MonomialOrder::parse(text, &dummy)?.kind().clone())
}

pub fn order_kind_text(kind: &OrderKind) -> String {
    let arity = match kind {
        OrderKind::Weighted { weights, .. } => weights.len(),
        _ => 0,
    };
    let dummy = Ring::new((0..arity).map(|i| format!("v{i}"))).expect("valid names");
    crate::nested::order_on(kind, &dummy).expect("valid order").to_string()
}

/// Parses an `sv:` spec file.
pub fn parse_sv(text: &str) -> Result<SegreVeroneseSpec> {
    let mut lines = content_lines(text);
    let (n, head) = lines.next().ok_or_else(|| Error::parse(1, "missing `sv:` line"))?;
    let rest = head
        .strip_prefix("sv:")
        .ok_or_else(|| Error::parse(n, "expected `sv: d=<d> tau=<tau>`"))?;
    let (mut d, mut tau) = (None, None);
    for tok in rest.split_whitespace() {
        match tok.split_once('=') {
            Some(("d", v)) => d = v.parse::<usize>().ok(),
            Some(("tau", v)) => tau = v.parse::<u32>().ok(),
            _ => return Err(Error::parse(n, format!("unexpected `{tok}`"))),
        }
    }
    let (Some(d), Some(tau)) = (d, tau) else {
        return Err(Error::parse(n, "expected `sv: d=<d> tau=<tau>`"));
    };
    let mut constraints = Vec::new();
    for (n, l) in lines {
        let toks: Vec<&str> = l.split_whitespace().collect();
        let bad = || Error::parse(n, format!("expected `range p..q min c max b`, got `{l}`"));
        let ["range", span, "min", c, "max", b] = toks.as_slice() else {
            return Err(bad());
        };
        let (p, q) = span.split_once("..").ok_or_else(bad)?;
        constraints.push(RangeConstraint {
            from: p.parse().map_err(|_| bad())?,
            to: q.parse().map_err(|_| bad())?,
            min: c.parse().map_err(|_| bad())?,
            max: b.parse().map_err(|_| bad())?,
        });
    }
    SegreVeroneseSpec::new(d, tau, constraints).map_err(at(n))
}

pub fn format_sv(spec: &SegreVeroneseSpec) -> String {
    let mut out = format!("sv: d={} tau={}\n", spec.d, spec.tau);
    for c in &spec.constraints {
        writeln!(out, "range {}..{} min {} max {}", c.from, c.to, c.min, c.max).unwrap();
    }
    out
}
