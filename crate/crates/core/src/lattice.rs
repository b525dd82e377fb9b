//! Integer kernels of integer matrices.
//!
//! The kernel is computed by unimodular column elimination: Euclidean column
//! operations bring the matrix to column echelon form while the same
//! operations are applied to an identity matrix. The trailing columns of the
//! transform are a Z-basis of the integer kernel (not merely of a finite-index
//! sublattice, which is what clearing denominators of a rational basis gives).

use crate::error::{Error, Result};

/// Z-basis of `{ v in Z^ncols : rows * v = 0 }`, size-reduced.
pub fn integer_kernel(rows: &[Vec<i64>], ncols: usize) -> Result<Vec<Vec<i64>>> {
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| {
            let mut r: Vec<i128> = r.iter().map(|&v| v as i128).collect();
            r.resize(ncols, 0);
            r
        })
        .collect();
    let mut u: Vec<Vec<i128>> = (0..ncols)
        .map(|c| {
            let mut col = vec![0i128; ncols];
            col[c] = 1;
            col
        })
        .collect();
    // `u[c]` is column c of the transform; `m` is kept row-major
    let mut next = 0;
    for r in 0..m.len() {
        loop {
            let nonzero: Vec<usize> = (next..ncols).filter(|&c| m[r][c] != 0).collect();
            if nonzero.is_empty() {
                break;
            }
            let piv = *nonzero.iter().min_by_key(|&&c| m[r][c].unsigned_abs()).unwrap();
            swap_cols(&mut m, &mut u, piv, next);
            if nonzero.len() == 1 {
                next += 1;
                break;
            }
            for c in next + 1..ncols {
                if m[r][c] != 0 {
                    let q = m[r][c].div_euclid(m[r][next]);
                    sub_col(&mut m, &mut u, c, next, q)?;
                }
            }
        }
        if next == ncols {
            break;
        }
    }
    let mut basis: Vec<Vec<i128>> = u[next..].to_vec();
    size_reduce(&mut basis)?;
    basis
        .into_iter()
        .map(|v| {
            v.into_iter()
                .map(|x| i64::try_from(x).map_err(|_| Error::Overflow))
                .collect()
        })
        .collect()
}

fn swap_cols(m: &mut [Vec<i128>], u: &mut [Vec<i128>], a: usize, b: usize) {
    if a == b {
        return;
    }
    for row in m.iter_mut() {
        row.swap(a, b);
    }
    u.swap(a, b);
}

/// column `c` -= q * column `p`
fn sub_col(m: &mut [Vec<i128>], u: &mut [Vec<i128>], c: usize, p: usize, q: i128) -> Result<()> {
    for row in m.iter_mut() {
        row[c] = checked_axpy(row[c], q, row[p])?;
    }
    let (pc, cc) = if p < c {
        let (lo, hi) = u.split_at_mut(c);
        (&lo[p], &mut hi[0])
    } else {
        let (lo, hi) = u.split_at_mut(p);
        (&hi[0], &mut lo[c])
    };
    for (x, y) in cc.iter_mut().zip(pc.iter()) {
        *x = checked_axpy(*x, q, *y)?;
    }
    Ok(())
}

fn checked_axpy(x: i128, q: i128, y: i128) -> Result<i128> {
    q.checked_mul(y).and_then(|p| x.checked_sub(p)).ok_or(Error::Overflow)
}

fn norm2(v: &[i128]) -> Result<i128> {
    v.iter().try_fold(0i128, |acc, &x| {
        x.checked_mul(x).and_then(|s| acc.checked_add(s)).ok_or(Error::Overflow)
    })
}

/// Greedy pairwise reduction: replace `b_i` by `b_i - k b_j` whenever that
/// shortens it. Unimodular, so the lattice is unchanged.
fn size_reduce(basis: &mut [Vec<i128>]) -> Result<()> {
    let n = basis.len();
    let mut changed = true;
    let mut rounds = 0;
    while changed && rounds < 1000 {
        changed = false;
        rounds += 1;
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let nj = norm2(&basis[j])?;
                if nj == 0 {
                    continue;
                }
                let dot = basis[i].iter().zip(&basis[j]).try_fold(0i128, |acc, (a, b)| {
                    a.checked_mul(*b)
                        .and_then(|p| acc.checked_add(p))
                        .ok_or(Error::Overflow)
                })?;
                // nearest integer to dot / nj
                let k = (2 * dot + nj).div_euclid(2 * nj);
                if k == 0 {
                    continue;
                }
                let candidate: Vec<i128> = basis[i]
                    .iter()
                    .zip(&basis[j])
                    .map(|(a, b)| checked_axpy(*a, k, *b))
                    .collect::<Result<_>>()?;
                if norm2(&candidate)? < norm2(&basis[i])? {
                    basis[i] = candidate;
                    changed = true;
                }
            }
        }
    }
    Ok(())
}
