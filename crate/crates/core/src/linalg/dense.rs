use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::scalars::{Field, Rational};

/// Reduced row echelon form: nonzero rows only, with their pivot columns.
#[derive(Clone, Debug, PartialEq)]
pub struct Rref<F> {
    pub ncols: usize,
    pub rows: Vec<Vec<F>>,
    pub pivots: Vec<usize>,
}

/// Row-reduce a dense matrix. Pivot columns are the lexicographically first
/// maximal independent set of columns.
pub fn rref<F: Field>(mut m: Vec<Vec<F>>, ncols: usize) -> Rref<F> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv().expect("nonzero pivot");
        for x in m[r].iter_mut().skip(c) {
            *x = x.mul(&inv);
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row).skip(c) {
                if !y.is_zero() {
                    *x = x.sub(&f.mul(y));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    Rref { ncols, rows: m, pivots }
}

impl<F: Field> Rref<F> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Basis of the right kernel, one vector per non-pivot column `w`:
    /// e_w − Σ rref[row(p)][w]·e_p.
    pub fn kernel(&self) -> Vec<Vec<F>> {
        let mut is_pivot = vec![None; self.ncols];
        for (r, &p) in self.pivots.iter().enumerate() {
            is_pivot[p] = Some(r);
        }
        let mut out = Vec::new();
        for w in 0..self.ncols {
            if is_pivot[w].is_some() {
                continue;
            }
            let mut v = vec![F::zero(); self.ncols];
            v[w] = F::one();
            for (r, &p) in self.pivots.iter().enumerate() {
                v[p] = self.rows[r][w].neg();
            }
            out.push(v);
        }
        out
    }
}

pub fn rank<F: Field>(m: Vec<Vec<F>>) -> usize {
    let nc = m.first().map_or(0, |r| r.len());
    rref(m, nc).rank()
}

/// Right kernel basis of a dense matrix with `ncols` columns.
pub fn kernel<F: Field>(m: Vec<Vec<F>>, ncols: usize) -> Vec<Vec<F>> {
    rref(m, ncols).kernel()
}

/// Fraction-free Gaussian elimination (Bareiss) over the integers.
/// Every intermediate entry is a minor of the input, so growth stays
/// polynomial.
pub fn bareiss_rank(mut m: Vec<Vec<BigInt>>) -> usize {
    let nrows = m.len();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut prev = BigInt::from(1);
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).filter(|&i| !m[i][c].is_zero()).min_by_key(|&i| m[i][c].abs()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..nrows {
            for j in c + 1..ncols {
                let v = (&m[r][c] * &m[i][j] - &m[i][c] * &m[r][j]) / &prev;
                m[i][j] = v;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        r += 1;
    }
    r
}

/// Rank of a rational matrix by clearing denominators row by row and
/// running Bareiss elimination.
pub fn rational_rank_fraction_free(m: &[Vec<Rational>]) -> usize {
    let int_rows = m
        .iter()
        .map(|row| {
            let lcm = row.iter().fold(BigInt::from(1), |acc, x| {
                let d = x.denom();
                num_integer::Integer::lcm(&acc, &d)
            });
            row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
        })
        .collect();
    bareiss_rank(int_rows)
}
