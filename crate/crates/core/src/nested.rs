//! Nested configurations `A(B_1, ..., B_d)`.
//!
//! Each member of the nested configuration is a product of inner members
//! `m_{j_1}^{(i_1)} ... m_{j_r}^{(i_r)}` whose type `t_{i_1} ... t_{i_r}` lies in
//! the base configuration `A`. Members are stored with their standard
//! expression: for every group `j`, the multiset of group-`j` factors read as
//! a monomial in `z^{(j)}` is a normal form modulo the inner basis `G_j`.
//!
//! Presentation rings: `y_{i_1...i_r}` for `A`, `z<i>_{j}` for `B_i`, and
//! `x_{<member>}` for the nested configuration.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::groebner::{buchberger, Binomial, MarkedBasis};
use crate::order::{MonomialOrder, OrderKind};
use crate::ring::{Monomial, Ring, Variable};
use crate::toric::{check_configuration, toric_generators, Configuration};

/// Orders for `G_0` (base) and `G_1..G_d` (inner). Defaults to lex.
#[derive(Debug, Clone)]
pub struct NestedOrders {
    pub base: OrderKind,
    pub inner: Vec<OrderKind>,
}

impl NestedOrders {
    pub fn lex(d: usize) -> Self {
        NestedOrders {
            base: OrderKind::Lex,
            inner: vec![OrderKind::Lex; d],
        }
    }
}

/// Builds `order` on `ring`.
pub fn order_on(kind: &OrderKind, ring: &Ring) -> Result<MonomialOrder> {
    Ok(match kind {
        OrderKind::Lex => MonomialOrder::lex(ring),
        OrderKind::Grlex => MonomialOrder::grlex(ring),
        OrderKind::Grevlex => MonomialOrder::grevlex(ring),
        OrderKind::Weighted { weights, tie } => MonomialOrder::weighted(ring, weights.clone(), *tie)?,
    })
}

#[derive(Debug, Clone)]
struct MemberRecord {
    /// index of the type in the base configuration
    type_index: usize,
    /// per group, the standard z-exponent vector
    parts: Vec<Vec<u32>>,
}

#[derive(Debug, Clone)]
pub struct NestedSystem {
    base: Configuration,
    inner: Vec<Configuration>,
    base_basis: MarkedBasis,
    inner_bases: Vec<MarkedBasis>,
    result: Configuration,
    records: Vec<MemberRecord>,
    /// start of each group's variables in the union ring
    offsets: Vec<usize>,
}

/// Name of the `A` presentation variable for a member: `y_{` + sorted index
/// string + `}`.
fn y_name(member: &Monomial) -> (String, Vec<u32>) {
    let idx = index_string(member.exponents());
    let sep = if member.ring().len() >= 10 { "," } else { "" };
    let text: Vec<String> = idx.iter().map(u32::to_string).collect();
    (format!("y_{{{}}}", text.join(sep)), idx)
}

/// Weakly increasing 1-based variable indices of a monomial.
pub(crate) fn index_string(e: &[u32]) -> Vec<u32> {
    e.iter()
        .enumerate()
        .flat_map(|(i, &p)| std::iter::repeat_n(i as u32 + 1, p as usize))
        .collect()
}

fn check_disjoint(inner: &[Configuration]) -> Result<()> {
    let mut seen = HashSet::new();
    for c in inner {
        for name in c.ring().names() {
            if !seen.insert(name.to_string()) {
                return Err(Error::SharedVariables(name.to_string()));
            }
        }
    }
    Ok(())
}

/// Builds the nested configuration, computing `G_0..G_d` from the toric
/// oracle under `orders`.
pub fn build_nested(base: Configuration, inner: Vec<Configuration>, orders: &NestedOrders) -> Result<NestedSystem> {
    check_disjoint(&inner)?;
    if inner.len() != base.ring().len() {
        return Err(Error::Precondition(format!(
            "{} inner configurations for a base ring with {} variables",
            inner.len(),
            base.ring().len()
        )));
    }
    if orders.inner.len() != inner.len() {
        return Err(Error::Precondition("one inner order per inner configuration".into()));
    }
    let ynames: Vec<Variable> = base
        .members()
        .iter()
        .map(|m| {
            let (name, idx) = y_name(m);
            Variable::with_indices(name, idx)
        })
        .collect();
    let base = base.with_source_names(ynames)?;
    let inner = inner
        .into_iter()
        .enumerate()
        .map(|(i, c)| {
            let names = (1..=c.len())
                .map(|j| Variable::with_indices(format!("z{}_{{{}}}", i + 1, j), vec![i as u32 + 1, j as u32]))
                .collect();
            c.with_source_names(names)
        })
        .collect::<Result<Vec<_>>>()?;
    let base_basis = buchberger(&toric_generators(&base)?, &order_on(&orders.base, base.source())?)?;
    let inner_bases = inner
        .iter()
        .zip(&orders.inner)
        .map(|(c, k)| buchberger(&toric_generators(c)?, &order_on(k, c.source())?))
        .collect::<Result<Vec<_>>>()?;
    NestedSystem::with_bases(base, inner, base_basis, inner_bases)
}

impl NestedSystem {
    /// Builds the nested configuration from precomputed reduced Gröbner
    /// bases over the configurations' own presentation rings.
    pub fn with_bases(
        base: Configuration,
        inner: Vec<Configuration>,
        base_basis: MarkedBasis,
        inner_bases: Vec<MarkedBasis>,
    ) -> Result<Self> {
        check_disjoint(&inner)?;
        let d = base.ring().len();
        if inner.len() != d || inner_bases.len() != d {
            return Err(Error::Precondition(
                "need one inner configuration and basis per base variable".into(),
            ));
        }
        if !base_basis.ring().same_as(base.source()) {
            return Err(Error::RingMismatch);
        }
        for (c, g) in inner.iter().zip(&inner_bases) {
            if !g.ring().same_as(c.source()) {
                return Err(Error::RingMismatch);
            }
        }
        let mut vars = Vec::new();
        let mut offsets = Vec::with_capacity(d);
        for c in &inner {
            offsets.push(vars.len());
            vars.extend(c.ring().variables().iter().cloned());
        }
        let union = Ring::with_variables(vars)?;

        let mut seen: HashMap<Vec<u32>, usize> = HashMap::new();
        let mut found: Vec<(Vec<u32>, MemberRecord)> = Vec::new();
        for (type_index, ty) in base.members().iter().enumerate() {
            // per group, every multiset of c_i inner members as a z-exponent vector
            let choices: Vec<Vec<Vec<u32>>> = ty
                .exponents()
                .iter()
                .zip(&inner)
                .map(|(&c, b)| crate::toric::compositions(b.len(), c))
                .collect();
            for combo in cartesian(&choices) {
                let mut exps = vec![0u32; union.len()];
                let mut parts = Vec::with_capacity(d);
                for (i, z) in combo.iter().enumerate() {
                    let zm = inner[i].source().monomial(z.clone())?;
                    let image = inner[i].presentation().evaluate(&zm)?;
                    for (k, &e) in image.exponents().iter().enumerate() {
                        exps[offsets[i] + k] = e;
                    }
                    parts.push(inner_bases[i].normal_form(&zm)?.into_exponents());
                }
                match seen.get(&exps) {
                    Some(&k) => {
                        if found[k].1.type_index != type_index {
                            return Err(Error::ClaimFailed(format!(
                                "member {} arises from two types",
                                union.monomial(exps)?
                            )));
                        }
                    }
                    None => {
                        seen.insert(exps.clone(), found.len());
                        found.push((exps, MemberRecord { type_index, parts }));
                    }
                }
            }
        }
        // member order: types lex-descending, ties by the member lex-descending
        found.sort_by(|(ea, ra), (eb, rb)| {
            let ta = base.members()[ra.type_index].exponents();
            let tb = base.members()[rb.type_index].exponents();
            tb.cmp(ta).then_with(|| eb.cmp(ea))
        });
        let mut weight = Vec::with_capacity(union.len());
        for (i, c) in inner.iter().enumerate() {
            for w in c.weight() {
                weight.push(&base.weight()[i] * w);
            }
        }
        let members = found
            .iter()
            .map(|(e, _)| union.monomial(e.clone()))
            .collect::<Result<Vec<_>>>()?;
        let result = Configuration::with_weight(&union, members, weight)?;
        let records = found.into_iter().map(|(_, r)| r).collect();
        Ok(NestedSystem {
            base,
            inner,
            base_basis,
            inner_bases,
            result,
            records,
            offsets,
        })
    }

    pub fn base(&self) -> &Configuration {
        &self.base
    }

    pub fn inner(&self) -> &[Configuration] {
        &self.inner
    }

    pub fn base_basis(&self) -> &MarkedBasis {
        &self.base_basis
    }

    pub fn inner_bases(&self) -> &[MarkedBasis] {
        &self.inner_bases
    }

    pub fn result(&self) -> &Configuration {
        &self.result
    }

    /// Number of groups `d`.
    pub fn groups(&self) -> usize {
        self.inner.len()
    }

    /// Index into the base configuration of member `k`'s type.
    pub fn type_of(&self, k: usize) -> usize {
        self.records[k].type_index
    }

    /// Standard expression of member `k` as sorted 1-based `(group, index)`
    /// pairs, one per factor.
    pub fn factorization(&self, k: usize) -> Vec<(usize, usize)> {
        parts_to_factors(&self.records[k].parts)
    }

    pub(crate) fn parts(&self, k: usize) -> &[Vec<u32>] {
        &self.records[k].parts
    }

    /// Member index of the product of the given per-group z-exponent vectors.
    pub(crate) fn member_from_parts(&self, parts: &[Vec<u32>]) -> Result<Option<usize>> {
        let mut exps = vec![0u32; self.result.ring().len()];
        for (i, z) in parts.iter().enumerate() {
            let img = self.inner[i].presentation().evaluate_exps(z)?;
            for (k, e) in img.into_iter().enumerate() {
                exps[self.offsets[i] + k] = e;
            }
        }
        Ok(self.result.index_of_exps(&exps))
    }

    /// Group-`i` part of a monomial of the union ring (`i` zero-based).
    fn group_part(&self, e: &[u32], i: usize) -> Vec<u32> {
        let len = self.inner[i].ring().len();
        e[self.offsets[i]..self.offsets[i] + len].to_vec()
    }

    /// Standard expression of any product `M` of inner members whose type is
    /// in the base configuration.
    pub fn standard_expression(&self, m: &Monomial) -> Result<Vec<(usize, usize)>> {
        if !m.ring().same_as(self.result.ring()) {
            return Err(Error::RingMismatch);
        }
        let fail = || Error::NoFactorization(m.to_string());
        let mut parts = Vec::with_capacity(self.groups());
        let mut ty = Vec::with_capacity(self.groups());
        for (i, b) in self.inner.iter().enumerate() {
            let part = self.group_part(m.exponents(), i);
            let count = b.factor_count(&part).ok_or_else(fail)?;
            let z = factor_as_members(b, &part, count).ok_or_else(fail)?;
            let zm = b.source().monomial(z)?;
            parts.push(self.inner_bases[i].normal_form(&zm)?.into_exponents());
            ty.push(count);
        }
        if self.base.index_of_exps(&ty).is_none() {
            return Err(fail());
        }
        Ok(parts_to_factors(&parts))
    }

    /// `phi_0` (group 0, into the `y` ring) or `phi_j` (into `z^{(j)}`).
    pub fn phi(&self, group: usize, m: &Monomial) -> Result<Monomial> {
        if !m.ring().same_as(self.result.source()) {
            return Err(Error::RingMismatch);
        }
        if group > self.groups() {
            return Err(Error::IndexOutOfRange {
                index: group,
                max: self.groups(),
            });
        }
        let target = if group == 0 {
            self.base.source()
        } else {
            self.inner[group - 1].source()
        };
        let mut out = vec![0u32; target.len()];
        for (k, &p) in m.exponents().iter().enumerate() {
            if p == 0 {
                continue;
            }
            if group == 0 {
                let t = self.records[k].type_index;
                out[t] = out[t].checked_add(p).ok_or(Error::Overflow)?;
            } else {
                for (o, &z) in out.iter_mut().zip(&self.records[k].parts[group - 1]) {
                    *o = z.checked_mul(p).and_then(|v| o.checked_add(v)).ok_or(Error::Overflow)?;
                }
            }
        }
        target.monomial(out)
    }

    /// Decides membership of `lhs - rhs` in the nested toric ideal directly
    /// and through the inner toric ideals, erroring if the routes disagree.
    /// For members, also checks that the `phi_0` image lies in the base ideal.
    pub fn keylemma_test(&self, lhs: &Monomial, rhs: &Monomial) -> Result<KeyLemmaOutcome> {
        let pres = self.result.presentation();
        let direct = pres.evaluate(lhs)? == pres.evaluate(rhs)?;
        let mut failing_group = None;
        for j in 1..=self.groups() {
            let a = self.phi(j, lhs)?;
            let b = self.phi(j, rhs)?;
            let by_basis = self.inner_bases[j - 1].reduces_to_zero(&a, &b)?;
            let p = self.inner[j - 1].presentation();
            let by_image = p.evaluate(&a)? == p.evaluate(&b)?;
            if by_basis != by_image {
                return Err(Error::LemmaDisagreement(format!(
                    "group {j} basis versus image for {lhs} - {rhs}"
                )));
            }
            if !by_basis && failing_group.is_none() {
                failing_group = Some(j);
            }
        }
        if direct != failing_group.is_none() {
            return Err(Error::LemmaDisagreement(format!("{lhs} - {rhs}")));
        }
        if direct {
            let a = self.phi(0, lhs)?;
            let b = self.phi(0, rhs)?;
            if !self.base_basis.reduces_to_zero(&a, &b)? {
                return Err(Error::LemmaDisagreement(format!("phi_0 image of {lhs} - {rhs}")));
            }
        }
        Ok(KeyLemmaOutcome {
            member: direct,
            failing_group,
        })
    }

    /// The quadratic Gröbner basis assembled from `G_0, ..., G_d`.
    ///
    /// For each pair of members, the `phi_0` image reduced by `G_0` fixes the
    /// types of the tail, each `phi_j` image reduced by `G_j` fixes the
    /// group-`j` factors, and within each group the smallest lower indices go
    /// to the tail member that comes first in member order.
    pub fn main1_basis(&self) -> Result<MarkedBasis> {
        let quadratic = |g: &MarkedBasis| g.is_quadratic();
        if !quadratic(&self.base_basis) || !self.inner_bases.iter().all(quadratic) {
            return Err(Error::Precondition("main1 needs quadratic bases G_0..G_d".into()));
        }
        let x = self.result.source();
        let ymembers = self.base.members();
        let n = self.result.len();
        let mut elements = Vec::new();
        for alpha in 0..n {
            for beta in alpha..n {
                let mut y = vec![0u32; self.base.len()];
                y[self.type_of(alpha)] += 1;
                y[self.type_of(beta)] += 1;
                let y = self.base_basis.normal_form(&self.base.source().monomial(y)?)?;
                let mut types: Vec<usize> = index_string(y.exponents()).iter().map(|&t| t as usize - 1).collect();
                if types.len() != 2 {
                    return Err(Error::ClaimFailed(format!("phi_0 normal form {y} is not quadratic")));
                }
                // the lex-larger type comes first in member order
                if ymembers[types[0]].exponents() < ymembers[types[1]].exponents() {
                    types.swap(0, 1);
                }
                let (gamma_type, delta_type) = (ymembers[types[0]].exponents(), ymembers[types[1]].exponents());
                let mut gamma = Vec::with_capacity(self.groups());
                let mut delta = Vec::with_capacity(self.groups());
                for j in 0..self.groups() {
                    let z: Vec<u32> = self.parts(alpha)[j]
                        .iter()
                        .zip(&self.parts(beta)[j])
                        .map(|(a, b)| a + b)
                        .collect();
                    let z = self.inner_bases[j].normal_form(&self.inner[j].source().monomial(z)?)?;
                    let lower = index_string(z.exponents());
                    let take = gamma_type[j] as usize;
                    if lower.len() != take + delta_type[j] as usize {
                        return Err(Error::ClaimFailed(format!("group {} degree mismatch", j + 1)));
                    }
                    let lambda = self.inner[j].len();
                    gamma.push(counts(&lower[..take], lambda));
                    delta.push(counts(&lower[take..], lambda));
                }
                let g = self.member_from_parts(&gamma)?;
                let d = self.member_from_parts(&delta)?;
                let (Some(g), Some(d)) = (g, d) else {
                    return Err(Error::ClaimFailed("rewritten factors are not a member".into()));
                };
                let (g, d) = if g <= d { (g, d) } else { (d, g) };
                if (g, d) != (alpha, beta) {
                    elements.push(Binomial::new(
                        quadratic_monomial(x, alpha, beta)?,
                        quadratic_monomial(x, g, d)?,
                    )?);
                }
            }
        }
        MarkedBasis::marked(x, elements)
    }
}

/// Result of [`NestedSystem::keylemma_test`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KeyLemmaOutcome {
    pub member: bool,
    /// first group whose image is not in the inner ideal
    pub failing_group: Option<usize>,
}

pub(crate) fn quadratic_monomial(ring: &Ring, a: usize, b: usize) -> Result<Monomial> {
    let mut e = vec![0u32; ring.len()];
    e[a] += 1;
    e[b] += 1;
    ring.monomial(e)
}

/// Counts of 1-based indices as an exponent vector of length `len`.
pub(crate) fn counts(indices: &[u32], len: usize) -> Vec<u32> {
    let mut e = vec![0u32; len];
    for &i in indices {
        e[i as usize - 1] += 1;
    }
    e
}

fn parts_to_factors(parts: &[Vec<u32>]) -> Vec<(usize, usize)> {
    parts
        .iter()
        .enumerate()
        .flat_map(|(i, z)| index_string(z).into_iter().map(move |j| (i + 1, j as usize)))
        .collect()
}

/// Some z-exponent vector of `count` members of `b` whose product is `target`.
fn factor_as_members(b: &Configuration, target: &[u32], count: u32) -> Option<Vec<u32>> {
    fn rec(b: &Configuration, rest: &mut Vec<u32>, left: u32, from: usize, z: &mut Vec<u32>) -> bool {
        if left == 0 {
            return rest.iter().all(|&e| e == 0);
        }
        for k in from..b.len() {
            let m = b.members()[k].exponents();
            if m.iter().zip(rest.iter()).all(|(a, r)| a <= r) {
                for (r, a) in rest.iter_mut().zip(m) {
                    *r -= a;
                }
                z[k] += 1;
                if rec(b, rest, left - 1, k, z) {
                    return true;
                }
                z[k] -= 1;
                for (r, a) in rest.iter_mut().zip(m) {
                    *r += a;
                }
            }
        }
        false
    }
    let mut rest = target.to_vec();
    let mut z = vec![0u32; b.len()];
    if rec(b, &mut rest, count, 0, &mut z) {
        Some(z)
    } else {
        None
    }
}

fn cartesian(choices: &[Vec<Vec<u32>>]) -> Vec<Vec<Vec<u32>>> {
    let mut out: Vec<Vec<Vec<u32>>> = vec![Vec::new()];
    for options in choices {
        let mut next = Vec::with_capacity(out.len() * options.len());
        for prefix in &out {
            for o in options {
                let mut p = prefix.clone();
                p.push(o.clone());
                next.push(p);
            }
        }
        out = next;
    }
    out
}

/// All products of inner members whose type lies in `base`, over the union
/// of the inner rings merged by variable name. No disjointness check: this
/// is how the shared-variable counterexample is built.
pub fn merged_configuration(base: &Configuration, inner: &[Configuration]) -> Result<Configuration> {
    if inner.len() != base.ring().len() {
        return Err(Error::Precondition(
            "need one inner configuration per base variable".into(),
        ));
    }
    let mut names: Vec<String> = Vec::new();
    for c in inner {
        for n in c.ring().names() {
            if !names.iter().any(|m| m == n) {
                names.push(n.to_string());
            }
        }
    }
    let union = Ring::new(names)?;
    let lift = |c: &Configuration, m: &Monomial| -> Vec<u32> {
        let mut e = vec![0u32; union.len()];
        for (i, &p) in m.exponents().iter().enumerate() {
            e[union.index_of(c.ring().name(i)).expect("merged name")] += p;
        }
        e
    };
    let mut members: Vec<Monomial> = Vec::new();
    let mut seen = HashSet::new();
    for ty in base.members() {
        let choices: Vec<Vec<Vec<u32>>> = ty
            .exponents()
            .iter()
            .zip(inner)
            .map(|(&c, b)| crate::toric::compositions(b.len(), c))
            .collect();
        for combo in cartesian(&choices) {
            let mut e = vec![0u32; union.len()];
            for (i, z) in combo.iter().enumerate() {
                for (k, &p) in z.iter().enumerate() {
                    for _ in 0..p {
                        for (x, y) in e.iter_mut().zip(lift(&inner[i], &inner[i].members()[k])) {
                            *x += y;
                        }
                    }
                }
            }
            if seen.insert(e.clone()) {
                members.push(union.monomial(e)?);
            }
        }
    }
    check_configuration(&union, members)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(names: &[&str], members: &[&str]) -> Configuration {
        let ring = Ring::new(names.iter().copied()).unwrap();
        let ms = members.iter().map(|m| ring.parse_monomial(m).unwrap()).collect();
        check_configuration(&ring, ms).unwrap()
    }

    /// `A = {t1^2, t1 t2, t2^2}` with two disjoint Veronese copies inside.
    pub(crate) fn veronese_system() -> NestedSystem {
        let a = config(&["t1", "t2"], &["t1^2", "t1*t2", "t2^2"]);
        let b1 = config(&["u1_1", "u1_2"], &["u1_1^2", "u1_1*u1_2", "u1_2^2"]);
        let b2 = config(&["u2_1", "u2_2"], &["u2_1^2", "u2_1*u2_2", "u2_2^2"]);
        build_nested(a, vec![b1, b2], &NestedOrders::lex(2)).unwrap()
    }

    /// Member index of a product of inner members given as `(group, index)`.
    fn member(s: &NestedSystem, factors: &[(usize, usize)]) -> usize {
        let mut m = s.result().ring().unit();
        for &(g, j) in factors {
            let inner = &s.inner()[g - 1].members()[j - 1];
            let mut e = vec![0u32; s.result().ring().len()];
            e[s.offsets[g - 1]..s.offsets[g - 1] + inner.ring().len()].copy_from_slice(inner.exponents());
            m = m.mul(&s.result().ring().monomial(e).unwrap()).unwrap();
        }
        s.result().index_of(&m).unwrap()
    }

    fn x(s: &NestedSystem, a: usize, b: usize) -> Monomial {
        quadratic_monomial(s.result().source(), a, b).unwrap()
    }

    #[test]
    fn nineteen_members_in_convention_order() {
        let s = veronese_system();
        let shown: Vec<String> = s.result().members().iter().map(|m| m.to_string()).collect();
        let expected = [
            "u1_1^4",
            "u1_1^3*u1_2",
            "u1_1^2*u1_2^2",
            "u1_1*u1_2^3",
            "u1_2^4",
            "u1_1^2*u2_1^2",
            "u1_1^2*u2_1*u2_2",
            "u1_1^2*u2_2^2",
            "u1_1*u1_2*u2_1^2",
            "u1_1*u1_2*u2_1*u2_2",
            "u1_1*u1_2*u2_2^2",
            "u1_2^2*u2_1^2",
            "u1_2^2*u2_1*u2_2",
            "u1_2^2*u2_2^2",
            "u2_1^4",
            "u2_1^3*u2_2",
            "u2_1^2*u2_2^2",
            "u2_1*u2_2^3",
            "u2_2^4",
        ];
        assert_eq!(shown, expected);
    }

    #[test]
    fn inner_bases_are_the_single_quadric() {
        let s = veronese_system();
        let g0: Vec<String> = s.base_basis().elements().iter().map(|b| b.to_string()).collect();
        assert_eq!(g0, ["y_{11}*y_{22} -> y_{12}^2"]);
        let g1: Vec<String> = s.inner_bases()[0].elements().iter().map(|b| b.to_string()).collect();
        assert_eq!(g1, ["z1_{1}*z1_{3} -> z1_{2}^2"]);
    }

    #[test]
    fn standard_expression_prefers_square_of_middle() {
        let s = veronese_system();
        let m = s.result().ring().parse_monomial("u1_1^2*u1_2^2").unwrap();
        assert_eq!(s.standard_expression(&m).unwrap(), vec![(1, 2), (1, 2)]);
        let k = s.result().index_of(&m).unwrap();
        assert_eq!(s.factorization(k), vec![(1, 2), (1, 2)]);
        let z = s.phi(1, &s.result().source().var(k)).unwrap();
        assert_eq!(z.to_string(), "z1_{2}^2");
        let y = s.phi(0, &s.result().source().var(k)).unwrap();
        assert_eq!(y.to_string(), "y_{11}");
        let bad = s.result().ring().parse_monomial("u1_1*u2_1").unwrap();
        assert!(matches!(s.standard_expression(&bad), Err(Error::NoFactorization(_))));
    }

    #[test]
    fn main1_has_105_binomials_including_the_displayed_ones() {
        let s = veronese_system();
        let g = s.main1_basis().unwrap();
        assert_eq!(g.len(), 105);
        let m = |f: &[(usize, usize)]| member(&s, f);
        let displayed = [
            (
                (m(&[(1, 2), (1, 2)]), m(&[(2, 2), (2, 2)])),
                (m(&[(1, 2), (2, 2)]), m(&[(1, 2), (2, 2)])),
            ),
            (
                (m(&[(1, 1), (1, 1)]), m(&[(1, 3), (2, 2)])),
                (m(&[(1, 1), (1, 2)]), m(&[(1, 2), (2, 2)])),
            ),
            (
                (m(&[(1, 2), (1, 2)]), m(&[(1, 1), (2, 2)])),
                (m(&[(1, 1), (1, 2)]), m(&[(1, 2), (2, 2)])),
            ),
            (
                (m(&[(1, 1), (1, 2)]), m(&[(1, 1), (1, 2)])),
                (m(&[(1, 1), (1, 1)]), m(&[(1, 2), (1, 2)])),
            ),
        ];
        for ((a, b), (c, d)) in displayed {
            let want = Binomial::new(x(&s, a, b), x(&s, c, d)).unwrap();
            assert!(g.elements().contains(&want), "missing {want}");
        }
    }

    #[test]
    fn single_square_type_gives_six_binomials() {
        let a = config(&["t1"], &["t1^2"]);
        let b = config(&["u1", "u2", "u3"], &["u1", "u2", "u3"]);
        let s = build_nested(a, vec![b], &NestedOrders::lex(1)).unwrap();
        assert_eq!(s.result().len(), 6);
        let g = s.main1_basis().unwrap();
        let r = s.result().ring();
        let xm = |p: &str, q: &str| {
            let i = s.result().index_of(&r.parse_monomial(p).unwrap()).unwrap();
            let j = s.result().index_of(&r.parse_monomial(q).unwrap()).unwrap();
            x(&s, i, j)
        };
        let expected = [
            (("u1*u2", "u1*u2"), ("u1^2", "u2^2")),
            (("u1*u3", "u1*u3"), ("u1^2", "u3^2")),
            (("u2*u3", "u2*u3"), ("u2^2", "u3^2")),
            (("u1*u2", "u1*u3"), ("u1^2", "u2*u3")),
            (("u1*u3", "u2^2"), ("u1*u2", "u2*u3")),
            (("u1*u3", "u2*u3"), ("u1*u2", "u3^2")),
        ];
        assert_eq!(g.len(), 6);
        for ((a, b), (c, d)) in expected {
            let want = Binomial::new(xm(a, b), xm(c, d)).unwrap();
            assert!(g.elements().contains(&want), "missing {want}");
        }
    }

    #[test]
    fn singleton_inner_configurations_reproduce_the_base() {
        let a = config(&["t1", "t2", "t3"], &["t1*t2", "t1*t3", "t2*t3"]);
        let inner = (1..=3)
            .map(|i| config(&[&format!("s{i}")], &[&format!("s{i}")]))
            .collect();
        let s = build_nested(a.clone(), inner, &NestedOrders::lex(3)).unwrap();
        assert_eq!(s.result().len(), a.len());
        for k in 0..s.result().len() {
            assert_eq!(
                s.result().members()[k].exponents(),
                s.base().members()[s.type_of(k)].exponents()
            );
        }
    }

    #[test]
    fn exam_system_has_27_members() {
        let a = config(&["t1", "t2", "t3"], &["t1*t2", "t1*t3", "t2*t3"]);
        let inner = (1..=3)
            .map(|i| {
                let n: Vec<String> = (1..=3).map(|j| format!("u{i}_{j}")).collect();
                let names: Vec<&str> = n.iter().map(String::as_str).collect();
                let ms = [
                    format!("{}*{}", n[0], n[1]),
                    format!("{}*{}", n[0], n[2]),
                    format!("{}*{}", n[1], n[2]),
                ];
                let ms: Vec<&str> = ms.iter().map(String::as_str).collect();
                config(&names, &ms)
            })
            .collect();
        let s = build_nested(a, inner, &NestedOrders::lex(3)).unwrap();
        assert_eq!(s.result().len(), 27);
    }

    #[test]
    fn shared_variables_are_rejected() {
        let a = config(&["t1", "t2", "t3"], &["t1*t2*t3"]);
        let b1 = config(&["u1", "v1"], &["u1*v1"]);
        let b2 = config(&["u1", "v2"], &["u1*v2"]);
        let b3 = config(&["u3", "v3"], &["u3*v3"]);
        let err = build_nested(a, vec![b1, b2, b3], &NestedOrders::lex(3)).unwrap_err();
        assert_eq!(err, Error::SharedVariables("u1".into()));
    }

    #[test]
    fn shared_variables_give_a_principal_cubic() {
        let a = config(&["t1", "t2", "t3", "t4", "t5", "t6"], &["t1*t4", "t2*t5", "t3*t6"]);
        let inner = [
            config(&["u1"], &["u1"]),
            config(&["u2"], &["u2"]),
            config(&["u3"], &["u3"]),
            config(&["v1", "v2"], &["v1", "v2"]),
            config(&["v2", "v3"], &["v2", "v3"]),
            config(&["v1", "v3"], &["v1", "v3"]),
        ];
        let merged = merged_configuration(&a, &inner).unwrap();
        assert_eq!(merged.len(), 6);
        let gb = buchberger(
            &toric_generators(&merged).unwrap(),
            &MonomialOrder::grevlex(merged.source()),
        )
        .unwrap();
        assert_eq!(gb.len(), 1);
        assert_eq!(gb.elements()[0].lead().degree(), 3);
        assert!(matches!(
            build_nested(a, inner.to_vec(), &NestedOrders::lex(6)),
            Err(Error::SharedVariables(_))
        ));
    }

    #[test]
    fn keylemma_agrees_with_direct_membership() {
        let s = veronese_system();
        let n = s.result().len();
        for a in 0..n {
            for b in a..n {
                for c in 0..n {
                    for d in c..n {
                        let out = s.keylemma_test(&x(&s, a, b), &x(&s, c, d)).unwrap();
                        assert_eq!(out.member, out.failing_group.is_none());
                    }
                }
            }
        }
    }
}
