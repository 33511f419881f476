//! Dense exact linear algebra: ranks and kernels over a [`Field`], and
//! fraction-free (Bareiss) elimination over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::scalar::{Field, Fp};

pub type Matrix<F> = Vec<Vec<F>>;

/// Strips rows with a single nonzero entry. Such a row is a pivot on its own
/// and kills its column everywhere else. Returns the number of pivots found
/// and the remaining rows restricted to the surviving columns.
pub fn singleton_prepass<F: Field>(rows: Matrix<F>) -> (usize, Matrix<F>) {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut live_col = vec![true; ncols];
    let mut live_row = vec![true; rows.len()];
    let mut found = 0;
    loop {
        let mut progress = false;
        for (i, row) in rows.iter().enumerate() {
            if !live_row[i] {
                continue;
            }
            let mut nz = row
                .iter()
                .enumerate()
                .filter(|(j, v)| live_col[*j] && !v.is_zero())
                .map(|(j, _)| j);
            match (nz.next(), nz.next()) {
                (None, _) => live_row[i] = false,
                (Some(j), None) => {
                    live_row[i] = false;
                    live_col[j] = false;
                    found += 1;
                    progress = true;
                }
                _ => {}
            }
        }
        if !progress {
            break;
        }
    }
    let rest = rows
        .into_iter()
        .zip(live_row)
        .filter(|(_, keep)| *keep)
        .map(|(row, _)| {
            row.into_iter()
                .zip(live_col.iter())
                .filter(|(_, &k)| k)
                .map(|(v, _)| v)
                .collect()
        })
        .collect();
    (found, rest)
}

/// Rank by Gaussian elimination with field inverses.
pub fn gauss_rank<F: Field>(rows: Matrix<F>) -> usize {
    let (found, mut m) = singleton_prepass(rows);
    let nrows = m.len();
    let ncols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for col in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][col].inv().expect("pivot is nonzero");
        let pivot_row: Vec<F> = m[r][col..].iter().map(|v| v.clone() * inv.clone()).collect();
        for row in m.iter_mut().skip(r + 1) {
            if row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, p) in row[col..].iter_mut().zip(&pivot_row) {
                *x = x.clone() - f.clone() * p.clone();
            }
        }
        r += 1;
    }
    found + r
}

/// Rank of an integer matrix by fraction-free elimination.
pub fn bareiss_rank(mut m: Matrix<BigInt>) -> usize {
    let nrows = m.len();
    let ncols = m.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut r = 0;
    for col in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let (top, bottom) = m.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let piv = pivot_row[col].clone();
        for row in bottom.iter_mut() {
            let f = row[col].clone();
            for j in col + 1..ncols {
                let v = &piv * &row[j] - &f * &pivot_row[j];
                row[j] = v / &prev;
            }
            row[col] = BigInt::zero();
        }
        prev = piv;
        r += 1;
    }
    r
}

/// Clears denominators row by row and runs fraction-free elimination.
pub fn bareiss_rank_rational(rows: Matrix<BigRational>) -> usize {
    let (found, m) = singleton_prepass(rows);
    let ints = m
        .into_iter()
        .map(|row| {
            let l = row
                .iter()
                .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
            row.into_iter()
                .map(|v| (v * BigRational::from_integer(l.clone())).to_integer())
                .collect()
        })
        .collect();
    found + bareiss_rank(ints)
}

/// Rank of the reduction mod `p`, or `None` when some entry has a
/// denominator divisible by `p`.
pub fn rank_mod_p<F: Field>(rows: &[Vec<F>]) -> Option<usize> {
    let m = rows
        .iter()
        .map(|row| row.iter().map(Field::to_fp).collect::<Option<Vec<Fp>>>())
        .collect::<Option<Matrix<Fp>>>()?;
    Some(gauss_rank(m))
}

/// Rank of `rows`, given a proven upper bound `ceiling`. The mod-`p` rank
/// never exceeds the true rank, so when it reaches the ceiling the answer
/// is certified without exact elimination.
pub fn rank_with_ceiling<F: Field>(rows: Matrix<F>, ceiling: usize) -> usize {
    if !F::MODULAR && rank_mod_p(&rows) == Some(ceiling) {
        return ceiling;
    }
    F::rank(rows)
}

/// Basis of the right kernel of `rows` (each vector has `ncols` entries).
/// Vectors come from the reduced row echelon form: each has a 1 in its own
/// free column and 0 in every other free column.
pub fn kernel_basis<F: Field>(rows: &[Vec<F>], ncols: usize) -> Matrix<F> {
    // columns forced to zero by single-entry rows
    let mut forced = vec![false; ncols];
    let mut live_row = vec![true; rows.len()];
    loop {
        let mut progress = false;
        for (i, row) in rows.iter().enumerate() {
            if !live_row[i] {
                continue;
            }
            let mut nz = row
                .iter()
                .enumerate()
                .filter(|(j, v)| !forced[*j] && !v.is_zero())
                .map(|(j, _)| j);
            match (nz.next(), nz.next()) {
                (None, _) => live_row[i] = false,
                (Some(j), None) => {
                    forced[j] = true;
                    live_row[i] = false;
                    progress = true;
                }
                _ => {}
            }
        }
        if !progress {
            break;
        }
    }
    let cols: Vec<usize> = (0..ncols).filter(|&j| !forced[j]).collect();
    let mut m: Matrix<F> = rows
        .iter()
        .zip(&live_row)
        .filter(|(_, &k)| k)
        .map(|(row, _)| cols.iter().map(|&j| row[j].clone()).collect())
        .collect();

    let n = cols.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv().expect("pivot is nonzero");
        for x in m[r][c..].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                *x = x.clone() - f.clone() * p.clone();
            }
        }
        pivots.push(c);
        r += 1;
    }

    let is_pivot = {
        let mut v = vec![false; n];
        for &p in &pivots {
            v[p] = true;
        }
        v
    };
    let mut basis = Vec::new();
    for free in (0..n).filter(|&c| !is_pivot[c]) {
        let mut v = vec![F::zero(); ncols];
        v[cols[free]] = F::one();
        for (row, &p) in pivots.iter().enumerate() {
            v[cols[p]] = -m[row][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Coordinates of `v` with respect to the independent rows `basis`, or
/// `None` when `v` is outside their span.
pub fn coordinates<F: Field>(basis: &[Vec<F>], v: &[F]) -> Option<Vec<F>> {
    let k = basis.len();
    let n = v.len();
    // [B | I], reduced on the first n columns
    let mut m: Matrix<F> = basis
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..k).map(|j| if i == j { F::one() } else { F::zero() }));
            r
        })
        .collect();
    let mut pivots = Vec::new();
    for c in 0..n {
        let r = pivots.len();
        if r == k {
            break;
        }
        let Some(p) = (r..k).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv().expect("pivot is nonzero");
        for x in m[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x = x.clone() - f.clone() * p.clone();
                }
            }
        }
        pivots.push(c);
    }
    if pivots.len() < k {
        return None;
    }
    let mut rest = v.to_vec();
    let mut coords = vec![F::zero(); k];
    for (row, &c) in pivots.iter().enumerate() {
        let f = rest[c].clone();
        if f.is_zero() {
            continue;
        }
        for (x, p) in rest.iter_mut().zip(&m[row][..n]) {
            *x = x.clone() - f.clone() * p.clone();
        }
        for (x, t) in coords.iter_mut().zip(&m[row][n..]) {
            *x = x.clone() + f.clone() * t.clone();
        }
    }
    rest.iter().all(Zero::is_zero).then_some(coords)
}

/// `rows * v`.
pub fn apply<F: Field>(rows: &[Vec<F>], v: &[F]) -> Vec<F> {
    rows.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(F::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
        })
        .collect()
}
