//! Configurations of Segre-Veronese type and their sorting Gröbner bases.
//!
//! A spec fixes a degree `tau` and interval constraints
//! `c_i <= f_{p_i} + ... + f_{q_i} <= b_i`; the configuration is every
//! degree-`tau` monomial `t^f` meeting them. Presentation variables are named
//! by sorted index strings, `x_{112}` (comma separated once `d >= 10`).

use crate::error::{Error, Result};
use crate::groebner::{Binomial, MarkedBasis};
use crate::nested::{counts, index_string, quadratic_monomial, NestedSystem};
use crate::ring::{Ring, Variable};
use crate::toric::{check_configuration, compositions, Configuration};

/// `min <= f_from + ... + f_to <= max` over 1-based variable indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RangeConstraint {
    pub from: usize,
    pub to: usize,
    pub min: u32,
    pub max: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SegreVeroneseSpec {
    pub d: usize,
    pub tau: u32,
    pub constraints: Vec<RangeConstraint>,
}

impl SegreVeroneseSpec {
    pub fn new(d: usize, tau: u32, constraints: Vec<RangeConstraint>) -> Result<Self> {
        if d == 0 {
            return Err(Error::Precondition("need at least one variable".into()));
        }
        if tau < 2 {
            return Err(Error::Precondition(format!("degree {tau} is below 2")));
        }
        for c in &constraints {
            if c.min > c.max {
                return Err(Error::Precondition(format!("min {} exceeds max {}", c.min, c.max)));
            }
            if c.from < 1 || c.from > c.to || c.to > d {
                return Err(Error::Precondition(format!(
                    "range {}..{} outside 1..{d}",
                    c.from, c.to
                )));
            }
        }
        Ok(SegreVeroneseSpec { d, tau, constraints })
    }

    /// Classical Veronese: every monomial of degree `tau`.
    pub fn veronese(d: usize, tau: u32) -> Result<Self> {
        let cs = (1..=d)
            .map(|i| RangeConstraint {
                from: i,
                to: i,
                min: 0,
                max: tau,
            })
            .collect();
        Self::new(d, tau, cs)
    }

    /// Squarefree Veronese: squarefree monomials of degree `tau`.
    pub fn squarefree_veronese(d: usize, tau: u32) -> Result<Self> {
        let cs = (1..=d)
            .map(|i| RangeConstraint {
                from: i,
                to: i,
                min: 0,
                max: 1,
            })
            .collect();
        Self::new(d, tau, cs)
    }

    /// Segre product of polynomial rings in `first` and `d - first` variables.
    pub fn segre(first: usize, d: usize) -> Result<Self> {
        let cs = vec![
            RangeConstraint {
                from: 1,
                to: first,
                min: 1,
                max: 1,
            },
            RangeConstraint {
                from: first + 1,
                to: d,
                min: 1,
                max: 1,
            },
        ];
        Self::new(d, 2, cs)
    }

    pub fn admits(&self, f: &[u32]) -> bool {
        f.iter().sum::<u32>() == self.tau
            && self.constraints.iter().all(|c| {
                let s: u32 = f[c.from - 1..c.to].iter().sum();
                c.min <= s && s <= c.max
            })
    }
}

/// Presentation name of a sorted index string.
pub fn index_name(prefix: &str, indices: &[u32], d: usize) -> String {
    let text: Vec<String> = indices.iter().map(u32::to_string).collect();
    let sep = if d >= 10 { "," } else { "" };
    format!("{prefix}_{{{}}}", text.join(sep))
}

/// The configuration on `t1..td`, members lex-descending.
pub fn sv_configuration(spec: &SegreVeroneseSpec) -> Result<Configuration> {
    let ring = Ring::new((1..=spec.d).map(|i| format!("t{i}")))?;
    let members = compositions(spec.d, spec.tau)
        .into_iter()
        .filter(|f| spec.admits(f))
        .map(|f| ring.monomial(f))
        .collect::<Result<Vec<_>>>()?;
    if members.is_empty() {
        return Err(Error::EmptySegreVeronese);
    }
    let names = members
        .iter()
        .map(|m| {
            let idx = index_string(m.exponents());
            Variable::with_indices(index_name("x", &idx, spec.d), idx)
        })
        .collect();
    check_configuration(&ring, members)?.with_source_names(names)
}

/// Sorts a string over `1..=d` into weakly increasing order.
pub fn sort_string(s: &[u32], d: usize) -> Result<Vec<u32>> {
    if let Some(&bad) = s.iter().find(|&&v| v == 0 || v as usize > d) {
        return Err(Error::IndexOutOfRange {
            index: bad as usize,
            max: d,
        });
    }
    let mut out = s.to_vec();
    out.sort_unstable();
    Ok(out)
}

fn interleave_split(l: &[u32], m: &[u32]) -> (Vec<u32>, Vec<u32>) {
    let mut n: Vec<u32> = l.iter().zip(m).flat_map(|(a, b)| [*a, *b]).collect();
    n.sort_unstable();
    let odd = n.iter().step_by(2).copied().collect();
    let even = n.iter().skip(1).step_by(2).copied().collect();
    (odd, even)
}

/// The sorting basis: `x_l x_m -> x_{n1 n3 ...} x_{n2 n4 ...}` for every
/// nonsorted pair, where `n = sort(l1 m1 l2 m2 ...)`.
pub fn sorting_gb(c: &Configuration) -> Result<MarkedBasis> {
    let tau = c.members().first().map(|m| m.degree()).unwrap_or(0);
    if c.members().iter().any(|m| m.degree() != tau) {
        return Err(Error::Precondition("members of differing degree".into()));
    }
    let d = c.ring().len();
    let strings: Vec<Vec<u32>> = c.members().iter().map(|m| index_string(m.exponents())).collect();
    let mut elements = Vec::new();
    for a in 0..c.len() {
        for b in a..c.len() {
            let (odd, even) = interleave_split(&strings[a], &strings[b]);
            let find = |s: &[u32]| {
                c.index_of_exps(&counts(s, d))
                    .ok_or_else(|| Error::SortClosure(index_name("x", s, d)))
            };
            let (g, h) = (find(&odd)?, find(&even)?);
            let (g, h) = if g <= h { (g, h) } else { (h, g) };
            if (g, h) != (a, b) {
                elements.push(Binomial::new(
                    quadratic_monomial(c.source(), a, b)?,
                    quadratic_monomial(c.source(), g, h)?,
                )?);
            }
        }
    }
    let basis = MarkedBasis::marked(c.source(), elements)?;
    if !basis.is_reduced() {
        return Err(Error::ClaimFailed("sorting basis is not reduced".into()));
    }
    Ok(basis)
}

impl NestedSystem {
    /// The quadratic Gröbner basis for a base configuration closed under
    /// sorting: upper indices of the combined factors are sorted, each
    /// group's lower indices are reduced by `G_j` and sorted, and the
    /// combined `(upper, lower)` sequence is dealt alternately to the two
    /// tail members.
    pub fn main2_basis(&self) -> Result<MarkedBasis> {
        let base = self.base();
        let tau = base.members()[0].degree();
        if base.members().iter().any(|m| m.degree() != tau) {
            return Err(Error::Precondition(
                "base configuration is not of Segre-Veronese type".into(),
            ));
        }
        if !self.inner_bases().iter().all(MarkedBasis::is_quadratic) {
            return Err(Error::Precondition("main2 needs quadratic inner bases".into()));
        }
        let x = self.result().source();
        let n = self.result().len();
        let mut elements = Vec::new();
        for alpha in 0..n {
            for beta in alpha..n {
                // combined (group, lower index) list with reduced, sorted lowers
                let mut combined: Vec<(u32, u32)> = Vec::with_capacity(2 * tau as usize);
                for j in 0..self.groups() {
                    let z: Vec<u32> = self.parts(alpha)[j]
                        .iter()
                        .zip(&self.parts(beta)[j])
                        .map(|(a, b)| a + b)
                        .collect();
                    let z = self.inner_bases()[j].normal_form(&self.inner()[j].source().monomial(z)?)?;
                    combined.extend(index_string(z.exponents()).into_iter().map(|l| (j as u32 + 1, l)));
                }
                // groups are visited in order and lowers come out ascending
                debug_assert!(combined.windows(2).all(|w| w[0] <= w[1]));
                let mut gamma: Vec<Vec<u32>> = self.inner().iter().map(|c| vec![0; c.len()]).collect();
                let mut delta = gamma.clone();
                let mut types = (Vec::new(), Vec::new());
                for (pos, &(g, l)) in combined.iter().enumerate() {
                    let (side, ty) = if pos % 2 == 0 {
                        (&mut gamma, &mut types.0)
                    } else {
                        (&mut delta, &mut types.1)
                    };
                    side[g as usize - 1][l as usize - 1] += 1;
                    ty.push(g);
                }
                let d = base.ring().len();
                for ty in [&types.0, &types.1] {
                    if base.index_of_exps(&counts(ty, d)).is_none() {
                        return Err(Error::SortClosure(index_name("y", ty, d)));
                    }
                }
                let (Some(g), Some(h)) = (self.member_from_parts(&gamma)?, self.member_from_parts(&delta)?) else {
                    return Err(Error::ClaimFailed("rewritten factors are not a member".into()));
                };
                let (g, h) = if g <= h { (g, h) } else { (h, g) };
                if (g, h) != (alpha, beta) {
                    elements.push(Binomial::new(
                        quadratic_monomial(x, alpha, beta)?,
                        quadratic_monomial(x, g, h)?,
                    )?);
                }
            }
        }
        let basis = MarkedBasis::marked(x, elements)?;
        if self.inner_bases().iter().all(MarkedBasis::initial_ideal_is_squarefree)
            && !basis.initial_ideal_is_squarefree()
        {
            return Err(Error::ClaimFailed("initial ideal is not squarefree".into()));
        }
        Ok(basis)
    }
}
