use crate::scalars::Ring;

/// Sparse vector: entries sorted by index, no stored zeros.
pub type SparseVec<R> = Vec<(usize, R)>;

/// Column-compressed sparse matrix over a ring. Columns are sorted by row
/// and never store zeros, so structural equality is value equality.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix<R> {
    rows: usize,
    cols: usize,
    columns: Vec<SparseVec<R>>,
}

/// Dense scratch accumulator for building one sparse column.
pub struct Accumulator<R> {
    values: Vec<Option<R>>,
    touched: Vec<usize>,
}

impl<R: Ring> Accumulator<R> {
    pub fn new(len: usize) -> Self {
        Accumulator { values: vec![None; len], touched: Vec::new() }
    }

    pub fn add(&mut self, i: usize, v: &R) {
        match &mut self.values[i] {
            Some(x) => *x = x.add(v),
            slot @ None => {
                *slot = Some(v.clone());
                self.touched.push(i);
            }
        }
    }

    pub fn add_scaled(&mut self, vec: &[(usize, R)], s: &R) {
        for (i, v) in vec {
            self.add(*i, &v.mul(s));
        }
    }

    /// Extract the accumulated vector and reset.
    pub fn drain(&mut self) -> SparseVec<R> {
        self.touched.sort_unstable();
        let mut out = Vec::with_capacity(self.touched.len());
        for &i in &self.touched {
            if let Some(v) = self.values[i].take() {
                if !v.is_zero() {
                    out.push((i, v));
                }
            }
        }
        self.touched.clear();
        out
    }
}

/// Sort, merge duplicates and drop zeros.
pub fn normalize_vec<R: Ring>(mut v: Vec<(usize, R)>) -> SparseVec<R> {
    v.sort_by_key(|e| e.0);
    let mut out: SparseVec<R> = Vec::with_capacity(v.len());
    for (i, x) in v {
        match out.last_mut() {
            Some((j, y)) if *j == i => *y = y.add(&x),
            _ => out.push((i, x)),
        }
    }
    out.retain(|e| !e.1.is_zero());
    out
}

pub fn vec_add<R: Ring>(a: &[(usize, R)], b: &[(usize, R)]) -> SparseVec<R> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push(b[j].clone());
            j += 1;
        } else {
            let s = a[i].1.add(&b[j].1);
            if !s.is_zero() {
                out.push((a[i].0, s));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn vec_scale<R: Ring>(a: &[(usize, R)], s: &R) -> SparseVec<R> {
    if s.is_zero() {
        return Vec::new();
    }
    a.iter().map(|(i, v)| (*i, v.mul(s))).filter(|e| !e.1.is_zero()).collect()
}

pub fn vec_sub<R: Ring>(a: &[(usize, R)], b: &[(usize, R)]) -> SparseVec<R> {
    vec_add(a, &vec_scale(b, &R::one().neg()))
}

impl<R: Ring> SparseMatrix<R> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, columns: vec![Vec::new(); cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::diagonal((0..n).map(|_| R::one()).collect())
    }

    pub fn diagonal(d: Vec<R>) -> Self {
        let n = d.len();
        let columns = d.into_iter().enumerate().map(|(i, v)| if v.is_zero() { vec![] } else { vec![(i, v)] }).collect();
        SparseMatrix { rows: n, cols: n, columns }
    }

    /// Build from columns; each column is normalized.
    pub fn from_columns(rows: usize, columns: Vec<Vec<(usize, R)>>) -> Self {
        let cols = columns.len();
        let columns = columns
            .into_iter()
            .map(|c| {
                let c = normalize_vec(c);
                assert!(c.last().is_none_or(|e| e.0 < rows), "row index out of range");
                c
            })
            .collect();
        SparseMatrix { rows, cols, columns }
    }

    pub fn from_triplets(rows: usize, cols: usize, entries: &[(usize, usize, R)]) -> Self {
        let mut columns = vec![Vec::new(); cols];
        for (r, c, v) in entries {
            columns[*c].push((*r, v.clone()));
        }
        Self::from_columns(rows, columns)
    }

    pub fn from_dense(rows: &[Vec<R>]) -> Self {
        let nr = rows.len();
        let nc = rows.first().map_or(0, |r| r.len());
        let mut columns = vec![Vec::new(); nc];
        for (i, row) in rows.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    columns[j].push((i, v.clone()));
                }
            }
        }
        SparseMatrix { rows: nr, cols: nc, columns }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> &[(usize, R)] {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[SparseVec<R>] {
        &self.columns
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(|c| c.len()).sum()
    }

    pub fn get(&self, i: usize, j: usize) -> R {
        match self.columns[j].binary_search_by_key(&i, |e| e.0) {
            Ok(k) => self.columns[j][k].1.clone(),
            Err(_) => R::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.is_empty())
    }

    pub fn to_dense(&self) -> Vec<Vec<R>> {
        let mut out = vec![vec![R::zero(); self.cols]; self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for (i, v) in col {
                out[*i][j] = v.clone();
            }
        }
        out
    }

    pub fn apply(&self, v: &[(usize, R)]) -> SparseVec<R> {
        let mut acc = Accumulator::new(self.rows);
        for (j, x) in v {
            acc.add_scaled(&self.columns[*j], x);
        }
        acc.drain()
    }

    /// Matrix product `self · other`.
    pub fn mul(&self, other: &SparseMatrix<R>) -> SparseMatrix<R> {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut acc = Accumulator::new(self.rows);
        let columns = other
            .columns
            .iter()
            .map(|col| {
                for (k, x) in col {
                    acc.add_scaled(&self.columns[*k], x);
                }
                acc.drain()
            })
            .collect();
        SparseMatrix { rows: self.rows, cols: other.cols, columns }
    }

    pub fn add(&self, other: &SparseMatrix<R>) -> SparseMatrix<R> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "dimension mismatch in sum");
        let columns = self.columns.iter().zip(&other.columns).map(|(a, b)| vec_add(a, b)).collect();
        SparseMatrix { rows: self.rows, cols: self.cols, columns }
    }

    pub fn sub(&self, other: &SparseMatrix<R>) -> SparseMatrix<R> {
        self.add(&other.scale(&R::one().neg()))
    }

    pub fn scale(&self, s: &R) -> SparseMatrix<R> {
        let columns = self.columns.iter().map(|c| vec_scale(c, s)).collect();
        SparseMatrix { rows: self.rows, cols: self.cols, columns }
    }

    pub fn transpose(&self) -> SparseMatrix<R> {
        let mut columns = vec![Vec::new(); self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for (i, v) in col {
                columns[*i].push((j, v.clone()));
            }
        }
        SparseMatrix { rows: self.cols, cols: self.rows, columns }
    }

    /// Kronecker product `self ⊗ other`; index (i, k) ↦ i·dim(other) + k.
    pub fn kron(&self, other: &SparseMatrix<R>) -> SparseMatrix<R> {
        let mut columns = Vec::with_capacity(self.cols * other.cols);
        for a in &self.columns {
            for b in &other.columns {
                let mut col = Vec::with_capacity(a.len() * b.len());
                for (i, x) in a {
                    for (k, y) in b {
                        let v = x.mul(y);
                        if !v.is_zero() {
                            col.push((i * other.rows + k, v));
                        }
                    }
                }
                columns.push(col);
            }
        }
        SparseMatrix { rows: self.rows * other.rows, cols: self.cols * other.cols, columns }
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> SparseMatrix<S> {
        let columns = self
            .columns
            .iter()
            .map(|c| c.iter().map(|(i, v)| (*i, f(v))).filter(|e| !e.1.is_zero()).collect())
            .collect();
        SparseMatrix { rows: self.rows, cols: self.cols, columns }
    }

    pub fn try_map<S: Ring, E>(&self, f: impl Fn(&R) -> Result<S, E>) -> Result<SparseMatrix<S>, E> {
        let mut columns = Vec::with_capacity(self.cols);
        for c in &self.columns {
            let mut col = Vec::with_capacity(c.len());
            for (i, v) in c {
                let s = f(v)?;
                if !s.is_zero() {
                    col.push((*i, s));
                }
            }
            columns.push(col);
        }
        Ok(SparseMatrix { rows: self.rows, cols: self.cols, columns })
    }

    /// Keep only the columns selected by `keep`; others become zero.
    pub fn restrict_columns(&self, keep: impl Fn(usize) -> bool) -> SparseMatrix<R> {
        let columns =
            self.columns.iter().enumerate().map(|(j, c)| if keep(j) { c.clone() } else { Vec::new() }).collect();
        SparseMatrix { rows: self.rows, cols: self.cols, columns }
    }

    /// First column index where the two matrices differ.
    pub fn first_difference(&self, other: &SparseMatrix<R>) -> Option<usize> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "dimension mismatch in comparison");
        (0..self.cols).find(|&j| self.columns[j] != other.columns[j])
    }

    /// True when the matrix sends every basis vector to a multiple of a
    /// single basis vector.
    pub fn is_monomial(&self) -> bool {
        self.columns.iter().all(|c| c.len() <= 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Rational;

    fn m(rows: &[&[i64]]) -> SparseMatrix<Rational> {
        let d: Vec<Vec<Rational>> = rows.iter().map(|r| r.iter().map(|&x| Rational::from_int(x)).collect()).collect();
        SparseMatrix::from_dense(&d)
    }

    #[test]
    fn product_and_transpose() {
        let a = m(&[&[1, 2], &[0, 3]]);
        let b = m(&[&[4, 0], &[1, -1]]);
        assert_eq!(a.mul(&b), m(&[&[6, -2], &[3, -3]]));
        assert_eq!(a.mul(&b).transpose(), b.transpose().mul(&a.transpose()));
        assert_eq!(a.sub(&a), SparseMatrix::zeros(2, 2));
    }

    #[test]
    fn kron_indexing() {
        let a = m(&[&[0, 1], &[1, 0]]);
        let i = SparseMatrix::<Rational>::identity(3);
        let k = a.kron(&i);
        assert_eq!(k.get(3, 0), Rational::from_int(1));
        assert_eq!(k.get(2, 5), Rational::from_int(1));
        assert_eq!(k.nnz(), 6);
    }
}
