//! Configurations, their presentations, and toric ideal generators.
//!
//! A configuration is a finite set of monomials admitting a nonnegative
//! rational weight `w` with `w.a = 1` for every member exponent `a`. Its
//! presentation ring has one variable per member, and the toric ideal is the
//! kernel of the evaluation map sending each variable to its member.

use std::cmp::Ordering;
use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::groebner::{reduced_basis_raw, Binomial};
use crate::lattice::integer_kernel;
use crate::lp::{simplex_feasible, Constraint, Relation};
use crate::ring::{Monomial, Ring, Variable};

/// Default presentation variable name for a member: `x_{<member text>}`.
pub fn default_source_name(member: &Monomial) -> String {
    format!("x_{{{member}}}")
}

/// The evaluation map from a presentation ring onto a configuration.
#[derive(Clone, Debug)]
pub struct Presentation {
    source: Ring,
    target: Ring,
    images: Vec<Vec<u32>>,
}

impl Presentation {
    pub fn source(&self) -> &Ring {
        &self.source
    }

    pub fn target(&self) -> &Ring {
        &self.target
    }

    /// Image of source variable `k`.
    pub fn image(&self, k: usize) -> Monomial {
        self.target.monomial(self.images[k].clone()).expect("image arity")
    }

    pub fn evaluate(&self, m: &Monomial) -> Result<Monomial> {
        if !m.ring().same_as(&self.source) {
            return Err(Error::RingMismatch);
        }
        self.target.monomial(self.evaluate_exps(m.exponents())?)
    }

    pub(crate) fn evaluate_exps(&self, e: &[u32]) -> Result<Vec<u32>> {
        let mut out = vec![0u32; self.target.len()];
        for (k, &power) in e.iter().enumerate() {
            if power == 0 {
                continue;
            }
            for (o, &x) in out.iter_mut().zip(&self.images[k]) {
                let add = x.checked_mul(power).ok_or(Error::Overflow)?;
                *o = o.checked_add(add).ok_or(Error::Overflow)?;
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Debug)]
pub struct Configuration {
    ring: Ring,
    members: Vec<Monomial>,
    weight: Vec<BigRational>,
    presentation: Presentation,
    index: HashMap<Vec<u32>, usize>,
}

/// Validates `members` and finds a weight certificate by exact LP.
pub fn check_configuration(ring: &Ring, members: Vec<Monomial>) -> Result<Configuration> {
    let index = member_index(ring, &members)?;
    let constraints: Vec<Constraint> = members
        .iter()
        .map(|m| {
            let coeffs = m
                .exponents()
                .iter()
                .map(|&e| BigRational::from_integer(e.into()))
                .collect();
            Constraint::new(coeffs, Relation::Eq, BigRational::one())
        })
        .collect();
    let weight = simplex_feasible(ring.len(), &constraints).ok_or(Error::NotAConfiguration)?;
    Configuration::assemble(ring, members, weight, index)
}

fn member_index(ring: &Ring, members: &[Monomial]) -> Result<HashMap<Vec<u32>, usize>> {
    if members.is_empty() {
        return Err(Error::EmptyConfiguration);
    }
    let mut index = HashMap::with_capacity(members.len());
    for (k, m) in members.iter().enumerate() {
        if !m.ring().same_as(ring) {
            return Err(Error::RingMismatch);
        }
        if index.insert(m.exponents().to_vec(), k).is_some() {
            return Err(Error::DuplicateMember(m.to_string()));
        }
    }
    Ok(index)
}

impl Configuration {
    /// Builds a configuration from a caller-supplied weight, checking
    /// `w.a = 1` exactly for every member.
    pub fn with_weight(ring: &Ring, members: Vec<Monomial>, weight: Vec<BigRational>) -> Result<Self> {
        let index = member_index(ring, &members)?;
        if weight.len() != ring.len() {
            return Err(Error::ArityMismatch {
                expected: ring.len(),
                got: weight.len(),
            });
        }
        if weight.iter().any(|w| w.is_negative()) {
            return Err(Error::BadWeight("negative entry".into()));
        }
        for m in &members {
            if weighted_degree(&weight, m.exponents()) != BigRational::one() {
                return Err(Error::BadWeight(format!("w.a != 1 for member {m}")));
            }
        }
        Self::assemble(ring, members, weight, index)
    }

    fn assemble(
        ring: &Ring,
        members: Vec<Monomial>,
        weight: Vec<BigRational>,
        index: HashMap<Vec<u32>, usize>,
    ) -> Result<Self> {
        let names = members.iter().map(|m| Variable::new(default_source_name(m))).collect();
        let source = Ring::with_variables(names)?;
        let presentation = Presentation {
            source,
            target: ring.clone(),
            images: members.iter().map(|m| m.exponents().to_vec()).collect(),
        };
        Ok(Configuration {
            ring: ring.clone(),
            members,
            weight,
            presentation,
            index,
        })
    }

    /// Renames the presentation variables.
    pub fn with_source_names(mut self, names: Vec<Variable>) -> Result<Self> {
        if names.len() != self.members.len() {
            return Err(Error::ArityMismatch {
                expected: self.members.len(),
                got: names.len(),
            });
        }
        self.presentation.source = Ring::with_variables(names)?;
        Ok(self)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn members(&self) -> &[Monomial] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn weight(&self) -> &[BigRational] {
        &self.weight
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    /// The presentation ring.
    pub fn source(&self) -> &Ring {
        &self.presentation.source
    }

    pub fn index_of(&self, member: &Monomial) -> Option<usize> {
        self.index_of_exps(member.exponents())
    }

    pub(crate) fn index_of_exps(&self, e: &[u32]) -> Option<usize> {
        self.index.get(e).copied()
    }

    /// Number of members a product of members must have to equal `e`, when
    /// that is an integer (the weighted degree).
    pub(crate) fn factor_count(&self, e: &[u32]) -> Option<u32> {
        let d = weighted_degree(&self.weight, e);
        if d.is_integer() {
            u32::try_from(d.to_integer()).ok()
        } else {
            None
        }
    }
}

fn weighted_degree(w: &[BigRational], e: &[u32]) -> BigRational {
    w.iter()
        .zip(e)
        .map(|(w, &x)| w * BigRational::from_integer(x.into()))
        .sum()
}

/// Evaluation map of `c`.
pub fn evaluate(c: &Configuration, m: &Monomial) -> Result<Monomial> {
    c.presentation.evaluate(m)
}

/// A generating set of the toric ideal of `c`, over `c.source()`.
///
/// A Z-basis of the integer kernel of the exponent matrix gives a lattice
/// basis ideal; saturating it by every presentation variable in turn (each
/// time via a Gröbner basis under a graded reverse lexicographic order with
/// that variable cheapest, then dividing out the variable) yields the toric
/// ideal.
pub fn toric_generators(c: &Configuration) -> Result<Vec<Binomial>> {
    let n = c.len();
    let d = c.ring.len();
    let rows: Vec<Vec<i64>> = (0..d)
        .map(|i| c.members.iter().map(|m| m.exponents()[i] as i64).collect())
        .collect();
    let kernel = integer_kernel(&rows, n)?;
    let mut gens: Vec<(Vec<u32>, Vec<u32>)> = kernel
        .iter()
        .map(|v| {
            let pos = v.iter().map(|&x| x.max(0) as u32).collect();
            let neg = v.iter().map(|&x| (-x).max(0) as u32).collect();
            (pos, neg)
        })
        .collect();
    for k in 0..n {
        if !gens.iter().any(|(a, b)| a[k] > 0 || b[k] > 0) {
            continue;
        }
        let perm: Vec<usize> = (0..n).filter(|&i| i != k).chain(std::iter::once(k)).collect();
        let cmp = |a: &[u32], b: &[u32]| -> Ordering {
            let da: u64 = a.iter().map(|&x| x as u64).sum();
            let db: u64 = b.iter().map(|&x| x as u64).sum();
            da.cmp(&db).then_with(|| {
                for &i in perm.iter().rev() {
                    if a[i] != b[i] {
                        return b[i].cmp(&a[i]);
                    }
                }
                Ordering::Equal
            })
        };
        let gb = reduced_basis_raw(gens, cmp)?;
        gens = gb
            .into_iter()
            .map(|(mut a, mut b)| {
                let common = a[k].min(b[k]);
                a[k] -= common;
                b[k] -= common;
                (a, b)
            })
            .collect();
        gens.sort();
        gens.dedup();
    }
    let source = c.source();
    gens.into_iter()
        .map(|(a, b)| Binomial::new(source.monomial(a)?, source.monomial(b)?))
        .collect()
}

/// Upper bound on monomials visited by [`kernel_enumerate`].
pub const ENUMERATION_CAP: usize = 2_000_000;

/// All binomials `rep - other` where `rep` and `other` are presentation
/// monomials of degree at most `degree_bound` with the same image, `rep`
/// the first monomial met in each image class.
pub fn kernel_enumerate(c: &Configuration, degree_bound: u32) -> Result<Vec<Binomial>> {
    let n = c.len();
    let mut count: usize = 0;
    for k in 1..=degree_bound as usize {
        count = count.saturating_add(binomial_coefficient(n + k - 1, k));
    }
    if count > ENUMERATION_CAP {
        return Err(Error::TooLarge(format!(
            "{count} monomials up to degree {degree_bound}"
        )));
    }
    let mut buckets: HashMap<Vec<u32>, usize> = HashMap::new();
    let mut classes: Vec<Vec<Vec<u32>>> = Vec::new();
    for k in 1..=degree_bound {
        for e in compositions(n, k) {
            let img = c.presentation.evaluate_exps(&e)?;
            match buckets.get(&img) {
                Some(&b) => classes[b].push(e),
                None => {
                    buckets.insert(img, classes.len());
                    classes.push(vec![e]);
                }
            }
        }
    }
    let source = c.source();
    let mut out = Vec::new();
    for class in classes {
        let rep = &class[0];
        for other in &class[1..] {
            out.push(Binomial::new(
                source.monomial(rep.clone())?,
                source.monomial(other.clone())?,
            )?);
        }
    }
    Ok(out)
}

fn binomial_coefficient(n: usize, k: usize) -> usize {
    let mut acc: usize = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

/// Exponent vectors of length `n` summing to `k`, lex-descending.
pub(crate) fn compositions(n: usize, k: u32) -> Vec<Vec<u32>> {
    fn rec(pos: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if pos + 1 == cur.len() {
            cur[pos] = left;
            out.push(cur.clone());
            return;
        }
        for v in (0..=left).rev() {
            cur[pos] = v;
            rec(pos + 1, left - v, cur, out);
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if k == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(0, k, &mut vec![0; n], &mut out);
    out
}
