//! Random walk on a fiber `{ v >= 0 : pi(x^v) = pi(x^start) }` using the
//! elements of a basis as moves.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::groebner::MarkedBasis;
use crate::toric::Configuration;

/// Visited states, starting with `start`, one per step. Each step draws an
/// element and a direction uniformly; a move that would make a coordinate
/// negative is rejected and the walk stays put.
///
/// With `check_image` set, every state is re-evaluated and compared with the
/// image of `start`.
pub fn fiber_walk(
    c: &Configuration,
    basis: &MarkedBasis,
    start: &[u32],
    steps: usize,
    seed: u64,
    check_image: bool,
) -> Result<Vec<Vec<u32>>> {
    if !basis.ring().same_as(c.source()) {
        return Err(Error::RingMismatch);
    }
    if start.len() != c.len() {
        return Err(Error::ArityMismatch {
            expected: c.len(),
            got: start.len(),
        });
    }
    let pres = c.presentation();
    let image = pres.evaluate_exps(start)?;
    let moves: Vec<Vec<i64>> = basis
        .elements()
        .iter()
        .map(|b| {
            b.tail()
                .exponents()
                .iter()
                .zip(b.lead().exponents())
                .map(|(&t, &l)| t as i64 - l as i64)
                .collect()
        })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut state = start.to_vec();
    let mut out = Vec::with_capacity(steps + 1);
    out.push(state.clone());
    for _ in 0..steps {
        if !moves.is_empty() {
            let k = rng.gen_range(0..2 * moves.len());
            let sign = if k % 2 == 0 { 1 } else { -1 };
            let mv = &moves[k / 2];
            let next: Option<Vec<u32>> = state
                .iter()
                .zip(mv)
                .map(|(&s, &m)| u32::try_from(s as i64 + sign * m).ok())
                .collect();
            if let Some(next) = next {
                state = next;
            }
        }
        if check_image && pres.evaluate_exps(&state)? != image {
            return Err(Error::ClaimFailed("walk left the fiber".into()));
        }
        out.push(state.clone());
    }
    Ok(out)
}
