//! Binomial Gröbner bases.
//!
//! Every polynomial handled here is a pure difference `lead - tail` of two
//! monomials. Reducing a binomial by a binomial rewrites one of its monomials
//! into another monomial, so normal forms of binomials are computed by
//! normalizing each side independently and comparing the results.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lp::{self, Constraint, Relation};
use crate::order::{MonomialOrder, TieBreak};
use crate::ring::{coprime_exps, divides_exps, lcm_exps, Monomial, Ring};
use crate::toric::Presentation;

/// Default rewrite bound for [`MarkedBasis::normal_form`].
pub const DEFAULT_STEP_BOUND: u64 = 1_000_000;

/// A binomial `lead - tail`. When marked, `lead` is the initial term.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Binomial {
    lead: Monomial,
    tail: Monomial,
}

impl Binomial {
    pub fn new(lead: Monomial, tail: Monomial) -> Result<Self> {
        if !lead.ring().same_as(tail.ring()) {
            return Err(Error::RingMismatch);
        }
        if lead == tail {
            return Err(Error::ZeroBinomial);
        }
        Ok(Binomial { lead, tail })
    }

    /// Parses `LEAD -> TAIL`.
    pub fn parse(text: &str, ring: &Ring) -> Result<Self> {
        let (l, t) = text
            .split_once("->")
            .ok_or_else(|| Error::parse(0, format!("expected `LEAD -> TAIL`, got `{}`", text.trim())))?;
        Binomial::new(ring.parse_monomial(l)?, ring.parse_monomial(t)?)
    }

    pub fn lead(&self) -> &Monomial {
        &self.lead
    }

    pub fn tail(&self) -> &Monomial {
        &self.tail
    }

    pub fn ring(&self) -> &Ring {
        self.lead.ring()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.lead.degree() == self.tail.degree()
    }

    /// Same binomial with the sides swapped if needed so `lead > tail`.
    pub fn oriented(&self, order: &MonomialOrder) -> Result<Binomial> {
        Ok(match order.compare(&self.lead, &self.tail)? {
            Ordering::Less => Binomial {
                lead: self.tail.clone(),
                tail: self.lead.clone(),
            },
            _ => self.clone(),
        })
    }

    /// The sides as an unordered pair, for comparisons that ignore marking.
    pub fn unordered(&self) -> (Monomial, Monomial) {
        if self.lead.exponents() <= self.tail.exponents() {
            (self.lead.clone(), self.tail.clone())
        } else {
            (self.tail.clone(), self.lead.clone())
        }
    }

    fn raw(&self) -> Rule {
        Rule::new(self.lead.exponents().to_vec(), self.tail.exponents().to_vec())
    }
}

impl fmt::Display for Binomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.lead, self.tail)
    }
}

impl fmt::Debug for Binomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Binomial({self})")
    }
}

/// The S-binomial `(L/lead f) tail f - (L/lead g) tail g`, `L` the lcm of the
/// leads, or `None` when the two products coincide.
pub fn s_pair(f: &Binomial, g: &Binomial) -> Result<Option<Binomial>> {
    let l = f.lead.lcm(&g.lead)?;
    let a = l.quotient(&f.lead)?.mul(&f.tail)?;
    let b = l.quotient(&g.lead)?.mul(&g.tail)?;
    if a == b {
        Ok(None)
    } else {
        Binomial::new(a, b).map(Some)
    }
}

#[derive(Clone, Debug)]
pub enum Provenance {
    Constructed(MonomialOrder),
    MarkedOnly,
}

/// A list of marked binomials used as rewrite rules `lead -> tail`.
#[derive(Clone, Debug)]
pub struct MarkedBasis {
    ring: Ring,
    elements: Vec<Binomial>,
    provenance: Provenance,
    rules: Vec<Rule>,
}

impl MarkedBasis {
    pub fn new(ring: &Ring, elements: Vec<Binomial>, provenance: Provenance) -> Result<Self> {
        for e in &elements {
            if !e.ring().same_as(ring) {
                return Err(Error::RingMismatch);
            }
            if let Provenance::Constructed(order) = &provenance {
                if order.compare(&e.lead, &e.tail)? != Ordering::Greater {
                    return Err(Error::Precondition(format!("{e} is not marked by {order}")));
                }
            }
        }
        let rules = elements.iter().map(Binomial::raw).collect();
        Ok(MarkedBasis {
            ring: ring.clone(),
            elements,
            provenance,
            rules,
        })
    }

    pub fn marked(ring: &Ring, elements: Vec<Binomial>) -> Result<Self> {
        Self::new(ring, elements, Provenance::MarkedOnly)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn elements(&self) -> &[Binomial] {
        &self.elements
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn leads(&self) -> impl Iterator<Item = &Monomial> {
        self.elements.iter().map(|e| &e.lead)
    }

    fn check(&self, m: &Monomial) -> Result<()> {
        if m.ring().same_as(&self.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn normal_form(&self, m: &Monomial) -> Result<Monomial> {
        self.normal_form_bounded(m, DEFAULT_STEP_BOUND)
    }

    /// Rewrites with the first applicable rule in basis order until no lead
    /// divides. Exceeding `bound` rewrites is reported as an error.
    pub fn normal_form_bounded(&self, m: &Monomial, bound: u64) -> Result<Monomial> {
        self.check(m)?;
        let mut e = m.exponents().to_vec();
        let rules: Vec<&Rule> = self.rules.iter().collect();
        normal_form_raw(&mut e, &rules, bound)?;
        self.ring.monomial(e)
    }

    /// Like [`normal_form_bounded`](Self::normal_form_bounded) but lets `pick`
    /// choose among the indices of all applicable rules at each step.
    pub fn normal_form_by<F>(&self, m: &Monomial, bound: u64, mut pick: F) -> Result<Monomial>
    where
        F: FnMut(&[usize]) -> usize,
    {
        self.check(m)?;
        let mut e = m.exponents().to_vec();
        let mut steps = 0;
        loop {
            let applicable: Vec<usize> = (0..self.rules.len())
                .filter(|&i| self.rules[i].divides(&e, support_mask(&e)))
                .collect();
            if applicable.is_empty() {
                return self.ring.monomial(e);
            }
            let r = &self.rules[applicable[pick(&applicable)]];
            r.rewrite(&mut e)?;
            steps += 1;
            if steps > bound {
                return Err(Error::ReductionBound(bound));
            }
        }
    }

    /// True iff no lead divides `m`.
    pub fn is_standard(&self, m: &Monomial) -> bool {
        let mask = support_mask(m.exponents());
        m.ring().same_as(&self.ring) && !self.rules.iter().any(|r| r.divides(m.exponents(), mask))
    }

    /// Normal form of `f` as a binomial ordered by `order`, `None` for zero.
    pub fn normal_form_binomial(&self, f: &Binomial, order: &MonomialOrder) -> Result<Option<Binomial>> {
        let a = self.normal_form(&f.lead)?;
        let b = self.normal_form(&f.tail)?;
        if a == b {
            return Ok(None);
        }
        Binomial::new(a, b)?.oriented(order).map(Some)
    }

    /// Whether `a - b` reduces to zero.
    pub fn reduces_to_zero(&self, a: &Monomial, b: &Monomial) -> Result<bool> {
        Ok(self.normal_form(a)? == self.normal_form(b)?)
    }

    /// No lead divides another element's lead or tail.
    pub fn is_reduced(&self) -> bool {
        self.elements.iter().enumerate().all(|(i, e)| {
            self.elements.iter().enumerate().all(|(j, f)| {
                let lead_ok = i == j || !divides_exps(e.lead.exponents(), f.lead.exponents());
                lead_ok && !divides_exps(e.lead.exponents(), f.tail.exponents())
            })
        })
    }

    /// Minimal generators of the ideal generated by the leads.
    pub fn minimal_leads(&self) -> Vec<Monomial> {
        let mut out: Vec<Monomial> = Vec::new();
        for (i, l) in self.leads().enumerate() {
            let redundant = self
                .leads()
                .enumerate()
                .any(|(j, k)| j != i && divides_exps(k.exponents(), l.exponents()) && (k != l || j < i));
            if !redundant {
                out.push(l.clone());
            }
        }
        out
    }

    pub fn initial_ideal_is_squarefree(&self) -> bool {
        self.minimal_leads().iter().all(Monomial::is_squarefree)
    }

    pub fn is_quadratic(&self) -> bool {
        self.elements
            .iter()
            .all(|e| e.lead.degree() == 2 && e.tail.degree() == 2)
    }

    /// Equality as sets of marked binomials.
    pub fn same_marked_set(&self, other: &MarkedBasis) -> bool {
        let a: HashSet<(Vec<u32>, Vec<u32>)> = self.marked_pairs().collect();
        let b: HashSet<(Vec<u32>, Vec<u32>)> = other.marked_pairs().collect();
        self.ring.same_as(&other.ring) && a.len() == self.len() && a == b
    }

    fn marked_pairs(&self) -> impl Iterator<Item = (Vec<u32>, Vec<u32>)> + '_ {
        self.elements
            .iter()
            .map(|e| (e.lead.exponents().to_vec(), e.tail.exponents().to_vec()))
    }

    /// Elements sorted by lead ascending under `order`.
    pub fn sorted_by(&self, order: &MonomialOrder) -> MarkedBasis {
        let mut elements = self.elements.clone();
        elements.sort_by(|a, b| {
            order
                .cmp_exps(a.lead.exponents(), b.lead.exponents())
                .then_with(|| order.cmp_exps(a.tail.exponents(), b.tail.exponents()))
        });
        let rules = elements.iter().map(Binomial::raw).collect();
        MarkedBasis {
            ring: self.ring.clone(),
            elements,
            provenance: self.provenance.clone(),
            rules,
        }
    }
}

/// Strictly separating weights: `w.lead > w.tail` for every element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightCertificate {
    pub weights: Vec<BigRational>,
}

impl WeightCertificate {
    pub fn separates(&self, basis: &MarkedBasis) -> bool {
        let dot = |m: &Monomial| -> BigRational {
            self.weights
                .iter()
                .zip(m.exponents())
                .map(|(w, &e)| w * BigRational::from_integer(e.into()))
                .sum()
        };
        self.weights.len() == basis.ring.len()
            && self.weights.iter().all(|w| *w >= BigRational::zero())
            && basis.elements.iter().all(|e| dot(&e.lead) > dot(&e.tail))
    }

    /// The weight order refined by `tie`, under which every separated
    /// element is marked by its lead.
    pub fn to_order(&self, ring: &Ring, tie: TieBreak) -> Result<MonomialOrder> {
        MonomialOrder::weighted(ring, self.weights.clone(), tie)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MarkingSolver {
    Simplex,
    FourierMotzkin { max_rows: usize },
}

/// Looks for a nonnegative rational weight with `w.(lead - tail) >= 1` for
/// every element, by exact simplex.
pub fn verify_marking(basis: &MarkedBasis) -> Option<WeightCertificate> {
    verify_marking_with(basis, MarkingSolver::Simplex).ok().flatten()
}

pub fn verify_marking_with(basis: &MarkedBasis, solver: MarkingSolver) -> Result<Option<WeightCertificate>> {
    let n = basis.ring.len();
    let constraints: Vec<Constraint> = basis
        .elements
        .iter()
        .map(|e| {
            let coeffs = e
                .lead
                .exponents()
                .iter()
                .zip(e.tail.exponents())
                .map(|(&a, &b)| BigRational::from_integer((a as i64 - b as i64).into()))
                .collect();
            Constraint::new(coeffs, Relation::Ge, BigRational::one())
        })
        .collect();
    let solution = match solver {
        MarkingSolver::Simplex => lp::simplex_feasible(n, &constraints),
        MarkingSolver::FourierMotzkin { max_rows } => lp::fourier_motzkin_feasible(n, &constraints, max_rows)?,
    };
    Ok(solution
        .map(|weights| WeightCertificate { weights })
        .filter(|c| c.separates(basis)))
}

/// Verdicts of [`check_groebner_basis`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerCheck {
    pub certificate: WeightCertificate,
    /// Every element lies in the ideal.
    pub elements_in_ideal: bool,
    /// Every S-pair reduces to zero modulo the basis.
    pub s_pairs_reduce: bool,
    /// Every ideal generator reduces to zero modulo the basis.
    pub generators_reduce: bool,
}

impl GroebnerCheck {
    pub fn holds(&self) -> bool {
        self.elements_in_ideal && self.s_pairs_reduce && self.generators_reduce
    }
}

/// Checks that `basis` is a Gröbner basis of the ideal generated by
/// `ideal_gens`. Membership of the elements is decided through `evaluation`
/// when given, otherwise by reduction modulo an independently computed basis.
pub fn check_groebner_basis(
    basis: &MarkedBasis,
    ideal_gens: &[Binomial],
    evaluation: Option<&Presentation>,
) -> Result<GroebnerCheck> {
    let certificate = verify_marking(basis).ok_or(Error::IncoherentMarking)?;
    let elements_in_ideal = match evaluation {
        Some(p) => {
            let mut ok = true;
            for e in &basis.elements {
                ok &= p.evaluate(&e.lead)? == p.evaluate(&e.tail)?;
            }
            ok
        }
        None => {
            let order = certificate.to_order(&basis.ring, TieBreak::Grevlex)?;
            let oracle = buchberger(ideal_gens, &order)?;
            let mut ok = true;
            for e in &basis.elements {
                ok &= oracle.reduces_to_zero(&e.lead, &e.tail)?;
            }
            ok
        }
    };
    let mut s_pairs_reduce = true;
    'outer: for (i, f) in basis.elements.iter().enumerate() {
        for g in &basis.elements[i + 1..] {
            if coprime_exps(f.lead.exponents(), g.lead.exponents()) {
                continue;
            }
            if let Some(s) = s_pair(f, g)? {
                if !basis.reduces_to_zero(&s.lead, &s.tail)? {
                    s_pairs_reduce = false;
                    break 'outer;
                }
            }
        }
    }
    let mut generators_reduce = true;
    for g in ideal_gens {
        if !g.ring().same_as(&basis.ring) {
            return Err(Error::RingMismatch);
        }
        if !basis.reduces_to_zero(&g.lead, &g.tail)? {
            generators_reduce = false;
            break;
        }
    }
    Ok(GroebnerCheck {
        certificate,
        elements_in_ideal,
        s_pairs_reduce,
        generators_reduce,
    })
}

pub fn is_groebner_basis_of(
    basis: &MarkedBasis,
    ideal_gens: &[Binomial],
    evaluation: Option<&Presentation>,
) -> Result<bool> {
    check_groebner_basis(basis, ideal_gens, evaluation).map(|c| c.holds())
}

/// Reduced Gröbner basis of the ideal generated by `gens` under `order`,
/// sorted by lead ascending.
pub fn buchberger(gens: &[Binomial], order: &MonomialOrder) -> Result<MarkedBasis> {
    let ring = order.ring();
    let mut raw = Vec::with_capacity(gens.len());
    for g in gens {
        if !g.ring().same_as(ring) {
            return Err(Error::RingMismatch);
        }
        raw.push((g.lead.exponents().to_vec(), g.tail.exponents().to_vec()));
    }
    let reduced = reduced_basis_raw(raw, |a, b| order.cmp_exps(a, b))?;
    let elements = reduced
        .into_iter()
        .map(|(l, t)| Binomial::new(ring.monomial(l)?, ring.monomial(t)?))
        .collect::<Result<Vec<_>>>()?;
    MarkedBasis::new(ring, elements, Provenance::Constructed(order.clone()))
}

// ---------------------------------------------------------------------------
// raw engine over exponent vectors

#[derive(Clone, Debug)]
pub(crate) struct Rule {
    lead: Vec<u32>,
    tail: Vec<u32>,
    mask: u64,
}

impl Rule {
    fn new(lead: Vec<u32>, tail: Vec<u32>) -> Self {
        let mask = support_mask(&lead);
        Rule { lead, tail, mask }
    }

    #[inline]
    fn divides(&self, e: &[u32], mask: u64) -> bool {
        self.mask & !mask == 0 && divides_exps(&self.lead, e)
    }

    fn rewrite(&self, e: &mut [u32]) -> Result<()> {
        for ((x, l), t) in e.iter_mut().zip(&self.lead).zip(&self.tail) {
            *x = (*x - l).checked_add(*t).ok_or(Error::Overflow)?;
        }
        Ok(())
    }
}

fn support_mask(e: &[u32]) -> u64 {
    e.iter()
        .enumerate()
        .filter(|(_, &x)| x > 0)
        .fold(0u64, |m, (i, _)| m | (1u64 << (i % 64)))
}

fn normal_form_raw(e: &mut [u32], rules: &[&Rule], bound: u64) -> Result<()> {
    let mut steps = 0u64;
    loop {
        let mask = support_mask(e);
        let Some(r) = rules.iter().find(|r| r.divides(e, mask)) else {
            return Ok(());
        };
        r.rewrite(e)?;
        steps += 1;
        if steps > bound {
            return Err(Error::ReductionBound(bound));
        }
    }
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Vec<u32>,
}

struct Engine<F> {
    cmp: F,
    polys: Vec<Rule>,
    active: Vec<usize>,
    /// sorted descending by lcm so the smallest is popped first
    pairs: Vec<Pair>,
}

impl<F: Fn(&[u32], &[u32]) -> Ordering> Engine<F> {
    fn reduce(&self, e: &mut [u32]) -> Result<()> {
        let rules: Vec<&Rule> = self.active.iter().map(|&i| &self.polys[i]).collect();
        normal_form_raw(e, &rules, u64::MAX)
    }

    fn insert(&mut self, mut a: Vec<u32>, mut b: Vec<u32>) -> Result<()> {
        self.reduce(&mut a)?;
        self.reduce(&mut b)?;
        let (lead, tail) = match (self.cmp)(&a, &b) {
            Ordering::Equal => return Ok(()),
            Ordering::Greater => (a, b),
            Ordering::Less => (b, a),
        };
        self.polys.push(Rule::new(lead, tail));
        self.update(self.polys.len() - 1);
        Ok(())
    }

    /// Gebauer-Möller pair update for the new element `h`.
    fn update(&mut self, h: usize) {
        let lh = self.polys[h].lead.clone();
        let candidates: Vec<(usize, Vec<u32>)> = self
            .active
            .iter()
            .map(|&g| (g, lcm_exps(&lh, &self.polys[g].lead)))
            .collect();
        let mut kept: Vec<(usize, Vec<u32>, bool)> = Vec::new();
        for (idx, (g, l)) in candidates.iter().enumerate() {
            let coprime = coprime_exps(&lh, &self.polys[*g].lead);
            let dominated = candidates[idx + 1..].iter().any(|(_, l2)| divides_exps(l2, l))
                || kept.iter().any(|(_, l2, _)| divides_exps(l2, l));
            if coprime || !dominated {
                kept.push((*g, l.clone(), coprime));
            }
        }
        let polys = &self.polys;
        self.pairs.retain(|p| {
            !(divides_exps(&lh, &p.lcm)
                && lcm_exps(&polys[p.i].lead, &lh) != p.lcm
                && lcm_exps(&polys[p.j].lead, &lh) != p.lcm)
        });
        self.active.retain(|&g| !divides_exps(&lh, &polys[g].lead));
        self.active.push(h);
        for (g, lcm, coprime) in kept {
            if coprime {
                continue;
            }
            let cmp = &self.cmp;
            let at = self.pairs.partition_point(|q| cmp(&q.lcm, &lcm) == Ordering::Greater);
            self.pairs.insert(at, Pair { i: g, j: h, lcm });
        }
    }
}

/// Reduced Gröbner basis of the binomial ideal generated by `gens`, as
/// `(lead, tail)` exponent pairs sorted by lead ascending under `cmp`.
pub(crate) fn reduced_basis_raw<F>(gens: Vec<(Vec<u32>, Vec<u32>)>, cmp: F) -> Result<Vec<(Vec<u32>, Vec<u32>)>>
where
    F: Fn(&[u32], &[u32]) -> Ordering,
{
    let mut engine = Engine {
        cmp,
        polys: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
    };
    for (a, b) in gens {
        engine.insert(a, b)?;
    }
    while let Some(p) = engine.pairs.pop() {
        let (f, g) = (&engine.polys[p.i], &engine.polys[p.j]);
        let mut a = p.lcm.clone();
        let mut b = p.lcm.clone();
        for k in 0..a.len() {
            a[k] = (a[k] - f.lead[k]).checked_add(f.tail[k]).ok_or(Error::Overflow)?;
            b[k] = (b[k] - g.lead[k]).checked_add(g.tail[k]).ok_or(Error::Overflow)?;
        }
        engine.insert(a, b)?;
    }
    // minimalize, then reduce tails
    let active: Vec<usize> = engine.active.clone();
    let minimal: Vec<usize> = active
        .iter()
        .copied()
        .filter(|&i| {
            !active.iter().any(|&j| {
                j != i
                    && divides_exps(&engine.polys[j].lead, &engine.polys[i].lead)
                    && (engine.polys[j].lead != engine.polys[i].lead || j < i)
            })
        })
        .collect();
    let rules: Vec<Rule> = minimal.iter().map(|&i| engine.polys[i].clone()).collect();
    let refs: Vec<&Rule> = rules.iter().collect();
    let mut out = Vec::with_capacity(rules.len());
    for r in &rules {
        let mut t = r.tail.clone();
        normal_form_raw(&mut t, &refs, u64::MAX)?;
        debug_assert_eq!((engine.cmp)(&r.lead, &t), Ordering::Greater);
        out.push((r.lead.clone(), t));
    }
    out.sort_by(|a, b| (engine.cmp)(&a.0, &b.0));
    Ok(out)
}
