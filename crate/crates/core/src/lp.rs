//! Exact rational feasibility for systems `A x (<=|=|>=) b, x >= 0`.
//!
//! Two independent solvers: a dense phase-one simplex with Bland's rule, and
//! Fourier-Motzkin elimination with back-substitution. Both return a
//! nonnegative rational point satisfying every constraint, or `None`.

use std::collections::HashSet;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Debug, Clone)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

impl Constraint {
    pub fn new(coeffs: Vec<Rational>, relation: Relation, rhs: Rational) -> Self {
        Constraint { coeffs, relation, rhs }
    }

    pub fn holds(&self, x: &[Rational]) -> bool {
        let lhs: Rational = self.coeffs.iter().zip(x).map(|(a, b)| a * b).sum();
        match self.relation {
            Relation::Le => lhs <= self.rhs,
            Relation::Eq => lhs == self.rhs,
            Relation::Ge => lhs >= self.rhs,
        }
    }
}

/// Phase-one simplex. Every variable is implicitly nonnegative.
pub fn simplex_feasible(nvars: usize, constraints: &[Constraint]) -> Option<Vec<Rational>> {
    let m = constraints.len();
    if m == 0 {
        return Some(vec![Rational::zero(); nvars]);
    }
    let nslack = constraints.iter().filter(|c| c.relation != Relation::Eq).count();
    // columns: structural | slack | artificial | rhs
    let ncols = nvars + nslack + m;
    let mut tab: Vec<Vec<Rational>> = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let mut slack = nvars;
    for (i, c) in constraints.iter().enumerate() {
        let mut row = vec![Rational::zero(); ncols + 1];
        for (j, a) in c.coeffs.iter().enumerate().take(nvars) {
            row[j] = a.clone();
        }
        match c.relation {
            Relation::Le => {
                row[slack] = Rational::from_integer(1.into());
                slack += 1;
            }
            Relation::Ge => {
                row[slack] = Rational::from_integer((-1).into());
                slack += 1;
            }
            Relation::Eq => {}
        }
        row[ncols] = c.rhs.clone();
        if row[ncols].is_negative() {
            for v in row.iter_mut() {
                *v = -v.clone();
            }
        }
        row[nvars + nslack + i] = Rational::from_integer(1.into());
        basis.push(nvars + nslack + i);
        tab.push(row);
    }
    // reduced costs of the phase-one objective (sum of artificials)
    let first_art = nvars + nslack;
    let mut cost = vec![Rational::zero(); ncols + 1];
    for row in &tab {
        for j in 0..first_art {
            cost[j] -= &row[j];
        }
        cost[ncols] -= &row[ncols];
    }
    while let Some(enter) = (0..ncols).find(|&j| cost[j].is_negative()) {
        let mut leave: Option<(usize, Rational)> = None;
        for (i, row) in tab.iter().enumerate() {
            if row[enter].is_positive() {
                let ratio = &row[ncols] / &row[enter];
                let better = match &leave {
                    None => true,
                    Some((l, r)) => ratio < *r || (ratio == *r && basis[i] < basis[*l]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        // phase one is bounded below by zero, so a pivot row always exists
        let (pr, _) = leave?;
        let piv = tab[pr][enter].clone();
        for v in tab[pr].iter_mut() {
            *v /= &piv;
        }
        let pivot_row = tab[pr].clone();
        for (i, row) in tab.iter_mut().enumerate() {
            if i == pr || row[enter].is_zero() {
                continue;
            }
            let f = row[enter].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &f * p;
                }
            }
        }
        let f = cost[enter].clone();
        for (v, p) in cost.iter_mut().zip(&pivot_row) {
            if !p.is_zero() {
                *v -= &f * p;
            }
        }
        basis[pr] = enter;
    }
    if !cost[ncols].is_zero() {
        return None;
    }
    let mut x = vec![Rational::zero(); nvars];
    for (i, &b) in basis.iter().enumerate() {
        if b < nvars {
            x[b] = tab[i][ncols].clone();
        }
    }
    debug_assert!(constraints.iter().all(|c| c.holds(&x)));
    Some(x)
}

/// Fourier-Motzkin elimination. Fails with [`Error::TooLarge`] when the
/// intermediate system exceeds `max_rows`.
pub fn fourier_motzkin_feasible(
    nvars: usize,
    constraints: &[Constraint],
    max_rows: usize,
) -> Result<Option<Vec<Rational>>> {
    // normalize everything to `a.x >= b`
    let mut rows: Vec<(Vec<Rational>, Rational)> = Vec::new();
    for c in constraints {
        let mut a = c.coeffs.clone();
        a.resize(nvars, Rational::zero());
        match c.relation {
            Relation::Ge => rows.push((a, c.rhs.clone())),
            Relation::Le => rows.push((a.iter().map(|v| -v).collect(), -c.rhs.clone())),
            Relation::Eq => {
                rows.push((a.iter().map(|v| -v).collect(), -c.rhs.clone()));
                rows.push((a, c.rhs.clone()));
            }
        }
    }
    for j in 0..nvars {
        let mut a = vec![Rational::zero(); nvars];
        a[j] = Rational::from_integer(1.into());
        rows.push((a, Rational::zero()));
    }
    let mut stages = Vec::with_capacity(nvars + 1);
    let mut current = dedup(rows);
    for k in (0..nvars).rev() {
        let mut next = Vec::new();
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        for (a, b) in &current {
            if a[k].is_positive() {
                pos.push((a, b));
            } else if a[k].is_negative() {
                neg.push((a, b));
            } else {
                next.push((a.clone(), b.clone()));
            }
        }
        if next.len() + pos.len() * neg.len() > max_rows {
            return Err(Error::TooLarge(format!(
                "Fourier-Motzkin system would exceed {max_rows} rows"
            )));
        }
        for (pa, pb) in &pos {
            for (na, nb) in &neg {
                let sp = -&na[k];
                let sn = pa[k].clone();
                let a: Vec<Rational> = pa.iter().zip(na.iter()).map(|(x, y)| x * &sp + y * &sn).collect();
                let b = *pb * &sp + *nb * &sn;
                next.push((a, b));
            }
        }
        stages.push(current);
        current = dedup(next);
    }
    // only constant rows remain
    if current.iter().any(|(_, b)| b.is_positive()) {
        return Ok(None);
    }
    // back-substitute, stage for variable k is stages[nvars - 1 - k]
    let mut x = vec![Rational::zero(); nvars];
    for k in 0..nvars {
        let stage = &stages[nvars - 1 - k];
        let mut lower: Option<Rational> = None;
        let mut upper: Option<Rational> = None;
        for (a, b) in stage {
            if a[k].is_zero() {
                continue;
            }
            let rest: Rational = (0..k).map(|j| &a[j] * &x[j]).sum();
            let bound = (b - rest) / &a[k];
            if a[k].is_positive() {
                if lower.as_ref().is_none_or(|l| bound > *l) {
                    lower = Some(bound);
                }
            } else if upper.as_ref().is_none_or(|u| bound < *u) {
                upper = Some(bound);
            }
        }
        let v = lower.unwrap_or_else(Rational::zero);
        if let Some(u) = upper {
            if v > u {
                return Ok(None);
            }
        }
        x[k] = v;
    }
    debug_assert!(constraints.iter().all(|c| c.holds(&x)));
    Ok(Some(x))
}

/// Scales each row so its first nonzero coefficient has absolute value one,
/// then drops exact duplicates and trivially true rows.
fn dedup(rows: Vec<(Vec<Rational>, Rational)>) -> Vec<(Vec<Rational>, Rational)> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for (a, b) in rows {
        let Some(lead) = a.iter().find(|v| !v.is_zero()).map(|v| v.abs()) else {
            if !b.is_positive() {
                continue;
            }
            // infeasible constant row: keep one copy
            if seen.insert((Vec::new(), b.clone())) {
                out.push((a, b));
            }
            continue;
        };
        let a: Vec<Rational> = a.iter().map(|v| v / &lead).collect();
        let b = b / &lead;
        if seen.insert((a.clone(), b.clone())) {
            out.push((a, b));
        }
    }
    out
}
