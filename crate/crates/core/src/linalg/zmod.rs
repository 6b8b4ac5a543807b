//! Linear algebra over Z/m: row echelon insertion with unimodular 2×2
//! steps, diagonalization with transforms, solving and kernels.

use std::collections::BTreeMap;

/// (g, s, t) with s·a + t·b = g = gcd(a, b) ≥ 0.
pub fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i64, 0i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

pub fn gcd(a: i64, b: i64) -> i64 {
    ext_gcd(a, b).0
}

fn md(x: i64, m: i64) -> i64 {
    x.rem_euclid(m)
}

// Moduli are below 2^31, so products of reduced values fit in i64.
const MAX_MODULUS: i64 = 1 << 31;

fn mulmod(a: i64, b: i64, m: i64) -> i64 {
    (md(a, m) * md(b, m)) % m
}

// Replace (x, y) by (s·x + t·y, u·x + v·y) entrywise.
fn combine(x: &mut [i64], y: &mut [i64], s: i64, t: i64, u: i64, v: i64, m: i64) {
    let (s, t, u, v) = (md(s, m), md(t, m), md(u, m), md(v, m));
    for (a, b) in x.iter_mut().zip(y.iter_mut()) {
        let (p, q) = (*a, *b);
        if p == 0 && q == 0 {
            continue;
        }
        *a = (s * p + t * q) % m;
        *b = (u * p + v * q) % m;
    }
}

// y ← y − q·x for reduced rows.
fn subtract_multiple(x: &[i64], y: &mut [i64], q: i64, m: i64) {
    let q = md(q, m);
    if q == 0 {
        return;
    }
    let nq = m - q;
    for (a, b) in x.iter().zip(y.iter_mut()) {
        if *a != 0 {
            *b = (*b + nq * a) % m;
        }
    }
}

/// Coefficients (s, t, u, v) of a unimodular step sending (p, b) to
/// (gcd, 0), or None when p already divides b.
fn elimination_step(p: i64, b: i64) -> Option<(i64, i64, i64, i64)> {
    if b % p == 0 {
        return None;
    }
    let (g, s, t) = ext_gcd(p, b);
    Some((s, t, -(b / g), p / g))
}

/// Row-echelon accumulator: every stored row has a distinct leading column.
/// Inserting a row preserves the row span exactly.
#[derive(Clone, Debug)]
pub struct Echelon {
    modulus: i64,
    ncols: usize,
    rows: BTreeMap<usize, Vec<i64>>,
}

impl Echelon {
    pub fn new(modulus: i64, ncols: usize) -> Echelon {
        assert!((2..MAX_MODULUS).contains(&modulus), "modulus out of range");
        Echelon { modulus, ncols, rows: BTreeMap::new() }
    }

    pub fn insert(&mut self, row: &[i64]) {
        assert_eq!(row.len(), self.ncols, "row length mismatch");
        let m = self.modulus;
        let mut r: Vec<i64> = row.iter().map(|&x| md(x, m)).collect();
        loop {
            let Some(c) = r.iter().position(|&x| x != 0) else {
                return;
            };
            let Some(p) = self.rows.get_mut(&c) else {
                self.rows.insert(c, r);
                return;
            };
            match elimination_step(p[c], r[c]) {
                None => {
                    let q = r[c] / p[c];
                    subtract_multiple(p, &mut r, q, m)
                }
                Some((s, t, u, v)) => combine(p, &mut r, s, t, u, v, m),
            }
        }
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.rows.values().cloned().collect()
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}

/// Diagonal form U·A·V = D over Z/m with invertible U, V (and V⁻¹ tracked).
#[derive(Clone, Debug)]
pub struct Diagonalization {
    pub modulus: i64,
    /// D[i][i] for i < min(rows, cols); other entries are zero.
    pub diag: Vec<i64>,
    pub u: Vec<Vec<i64>>,
    pub v: Vec<Vec<i64>>,
    pub v_inv: Vec<Vec<i64>>,
}

fn identity(n: usize) -> Vec<Vec<i64>> {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

// Column operation on a row-major matrix: (col_i, col_j) ← (s·ci + t·cj, u·ci + v·cj).
fn combine_cols(a: &mut [Vec<i64>], i: usize, j: usize, s: i64, t: i64, u: i64, v: i64, m: i64) {
    for row in a.iter_mut() {
        let (p, q) = (row[i], row[j]);
        row[i] = md(mulmod(s, p, m) + mulmod(t, q, m), m);
        row[j] = md(mulmod(u, p, m) + mulmod(v, q, m), m);
    }
}

fn combine_rows(a: &mut [Vec<i64>], i: usize, j: usize, s: i64, t: i64, u: i64, v: i64, m: i64) {
    assert!(i != j);
    let (lo, hi) = if i < j { (i, j) } else { (j, i) };
    let (head, tail) = a.split_at_mut(hi);
    let (ri, rj) = if i < j { (&mut head[lo], &mut tail[0]) } else { (&mut tail[0], &mut head[lo]) };
    combine(ri, rj, s, t, u, v, m);
}

/// Diagonalize an `nrows × ncols` matrix over Z/m.
pub fn diagonalize(a: &[Vec<i64>], ncols: usize, m: i64) -> Diagonalization {
    let nrows = a.len();
    let mut a: Vec<Vec<i64>> = a.iter().map(|r| r.iter().map(|&x| md(x, m)).collect()).collect();
    let mut u = identity(nrows);
    let mut v = identity(ncols);
    let mut v_inv = identity(ncols);
    let steps = nrows.min(ncols);
    let mut diag = Vec::with_capacity(steps);
    for k in 0..steps {
        // Pivot: entry generating the largest ideal (smallest gcd with m).
        let mut best: Option<(i64, usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(k) {
            for (j, &x) in row.iter().enumerate().skip(k) {
                if x != 0 {
                    let g = gcd(x, m);
                    if best.is_none_or(|b| g < b.0) {
                        best = Some((g, i, j));
                    }
                }
            }
        }
        let Some((_, pi, pj)) = best else {
            diag.extend(std::iter::repeat_n(0, steps - k));
            break;
        };
        if pi != k {
            a.swap(pi, k);
            u.swap(pi, k);
        }
        if pj != k {
            for row in a.iter_mut() {
                row.swap(pj, k);
            }
            for row in v.iter_mut() {
                row.swap(pj, k);
            }
            v_inv.swap(pj, k);
        }
        loop {
            let mut changed = false;
            for i in k + 1..nrows {
                if a[i][k] == 0 {
                    continue;
                }
                let (p, b) = (a[k][k], a[i][k]);
                let (s, t, x, y) = elimination_step(p, b).unwrap_or((1, 0, -(b / p), 1));
                combine_rows(&mut a, k, i, s, t, x, y, m);
                combine_rows(&mut u, k, i, s, t, x, y, m);
                changed = true;
            }
            for j in k + 1..ncols {
                if a[k][j] == 0 {
                    continue;
                }
                let (p, b) = (a[k][k], a[k][j]);
                let (s, t, x, y) = elimination_step(p, b).unwrap_or((1, 0, -(b / p), 1));
                combine_cols(&mut a, k, j, s, t, x, y, m);
                combine_cols(&mut v, k, j, s, t, x, y, m);
                // V⁻¹ picks up the inverse operation on rows.
                combine_rows(&mut v_inv, k, j, y, -x, -t, s, m);
                changed = true;
            }
            if !changed || (a.iter().skip(k + 1).all(|r| r[k] == 0) && a[k].iter().skip(k + 1).all(|&x| x == 0)) {
                break;
            }
        }
        diag.push(a[k][k]);
    }
    Diagonalization { modulus: m, diag, u, v, v_inv }
}

fn mat_vec(a: &[Vec<i64>], x: &[i64], m: i64) -> Vec<i64> {
    a.iter().map(|row| row.iter().zip(x).fold(0i64, |acc, (p, q)| md(acc + mulmod(*p, *q, m), m))).collect()
}

/// Solve A·x ≡ b (mod m); `a` has `ncols` columns.
pub fn solve(a: &[Vec<i64>], b: &[i64], ncols: usize, m: i64) -> Option<Vec<i64>> {
    let mut ech = Echelon::new(m, ncols + 1);
    for (row, &rhs) in a.iter().zip(b) {
        let mut r = row.clone();
        r.push(rhs);
        ech.insert(&r);
    }
    let rows = ech.rows();
    let lhs: Vec<Vec<i64>> = rows.iter().map(|r| r[..ncols].to_vec()).collect();
    let rhs: Vec<i64> = rows.iter().map(|r| r[ncols]).collect();
    let d = diagonalize(&lhs, ncols, m);
    let ub = mat_vec(&d.u, &rhs, m);
    let mut y = vec![0i64; ncols];
    for (i, &c) in ub.iter().enumerate() {
        let di = d.diag.get(i).copied().unwrap_or(0);
        if di == 0 {
            if c != 0 {
                return None;
            }
            continue;
        }
        let g = gcd(di, m);
        if c % g != 0 {
            return None;
        }
        let mg = m / g;
        let inv = modinv(md(di / g, mg), mg);
        y[i] = mulmod(c / g, inv, mg);
    }
    let x = mat_vec(&d.v, &y, m);
    debug_assert!(a.iter().zip(b).all(|(row, &r)| mat_vec(std::slice::from_ref(row), &x, m)[0] == md(r, m)));
    Some(x)
}

/// Inverse of `a` modulo `n` (a must be a unit; n = 1 gives 0).
pub fn modinv(a: i64, n: i64) -> i64 {
    if n == 1 {
        return 0;
    }
    let (g, s, _) = ext_gcd(md(a, n), n);
    assert_eq!(g, 1, "{a} is not invertible modulo {n}");
    md(s, n)
}

/// Abelian group ⊕ Z/g_i presented as a quotient of (Z/m)^n by the row
/// span of `relations`; returns the nontrivial cyclic orders g_i.
pub fn quotient_orders(relations: &[Vec<i64>], ncols: usize, m: i64) -> Vec<i64> {
    let mut ech = Echelon::new(m, ncols);
    for r in relations {
        ech.insert(r);
    }
    let d = diagonalize(&ech.rows(), ncols, m);
    let mut out = Vec::new();
    for i in 0..ncols {
        let di = d.diag.get(i).copied().unwrap_or(0);
        let g = if di == 0 { m } else { gcd(di, m) };
        if g > 1 {
            out.push(g);
        }
    }
    out
}

/// Split cyclic orders into prime-power elementary divisors, sorted.
pub fn elementary_divisors(orders: &[i64]) -> Vec<i64> {
    let mut out = Vec::new();
    for &n in orders {
        let mut n = n;
        let mut p = 2;
        while p * p <= n {
            if n % p == 0 {
                let mut q = 1;
                while n % p == 0 {
                    n /= p;
                    q *= p;
                }
                out.push(q);
            }
            p += 1;
        }
        if n > 1 {
            out.push(n);
        }
    }
    out.sort_unstable();
    out
}

/// Subquotient Z/B where Z = {x : C·x ≡ 0} and B ⊆ Z is spanned by
/// `boundaries` (vectors in the ambient (Z/m)^n). Returns cyclic orders.
pub fn homology_orders(constraints: &[Vec<i64>], boundaries: &[Vec<i64>], ncols: usize, m: i64) -> Vec<i64> {
    let mut ech = Echelon::new(m, ncols);
    for r in constraints {
        ech.insert(r);
    }
    let d = diagonalize(&ech.rows(), ncols, m);
    // Kernel in y = V⁻¹x coordinates: y_i ∈ (m/g_i)·Z/m, i.e. y_i = (m/g_i)·w_i.
    let gs: Vec<i64> = (0..ncols)
        .map(|i| {
            let di = d.diag.get(i).copied().unwrap_or(0);
            if di == 0 {
                m
            } else {
                gcd(di, m)
            }
        })
        .collect();
    let mut relations = Vec::with_capacity(boundaries.len() + ncols);
    for b in boundaries {
        let y = mat_vec(&d.v_inv, b, m);
        let w: Vec<i64> = y
            .iter()
            .zip(&gs)
            .map(|(&yi, &g)| {
                let step = m / g;
                assert!(yi % step == 0, "boundary vector is not a cycle");
                yi / step
            })
            .collect();
        relations.push(w);
    }
    for (i, &g) in gs.iter().enumerate() {
        let mut e = vec![0i64; ncols];
        e[i] = g % m;
        relations.push(e);
    }
    quotient_orders(&relations, ncols, m)
}

/// Generators of {x : A·x ≡ 0 (mod m)}.
pub fn kernel_generators(a: &[Vec<i64>], ncols: usize, m: i64) -> Vec<Vec<i64>> {
    let mut ech = Echelon::new(m, ncols);
    for r in a {
        ech.insert(r);
    }
    let d = diagonalize(&ech.rows(), ncols, m);
    let mut out = Vec::new();
    for i in 0..ncols {
        let di = d.diag.get(i).copied().unwrap_or(0);
        let step = if di == 0 { 1 } else { m / gcd(di, m) };
        if step == m {
            continue;
        }
        let col: Vec<i64> = d.v.iter().map(|row| mulmod(row[i], step, m)).collect();
        out.push(col);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn matmul(a: &[Vec<i64>], b: &[Vec<i64>], m: i64) -> Vec<Vec<i64>> {
        let nc = b.first().map_or(0, |r| r.len());
        a.iter()
            .map(|r| (0..nc).map(|j| r.iter().enumerate().fold(0, |acc, (k, x)| md(acc + x * b[k][j], m))).collect())
            .collect()
    }

    #[test]
    fn diagonalization_identity_holds() {
        let m = 12;
        let a = vec![vec![4, 6, 3], vec![8, 2, 9], vec![0, 10, 6]];
        let d = diagonalize(&a, 3, m);
        let uav = matmul(&matmul(&d.u, &a, m), &d.v, m);
        for (i, row) in uav.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                let want = if i == j { d.diag[i] } else { 0 };
                assert_eq!(x, want);
            }
        }
        assert_eq!(matmul(&d.v, &d.v_inv, m), identity(3));
    }

    #[test]
    fn equal_entries_terminate() {
        let d = diagonalize(&[vec![1, 1, 1], vec![1, 1, 0]], 3, 2);
        assert_eq!(d.diag, vec![1, 1]);
        assert_eq!(solve(&[vec![1, 1, 1], vec![1, 1, 0]], &[1, 0], 3, 2).map(|x| x.len()), Some(3));
    }

    #[test]
    fn solve_mod_four() {
        // 2x = 2 has x = 1 (or 3); 2x = 1 has none.
        assert!(solve(&[vec![2]], &[2], 1, 4).is_some());
        assert!(solve(&[vec![2]], &[1], 1, 4).is_none());
        let x = solve(&[vec![1, 1], vec![1, 3]], &[3, 1], 2, 4).unwrap();
        assert_eq!(md(x[0] + x[1], 4), 3);
        assert_eq!(md(x[0] + 3 * x[1], 4), 1);
    }

    #[test]
    fn quotients_and_divisors() {
        assert_eq!(quotient_orders(&[vec![2, 0]], 2, 4), vec![2, 4]);
        assert_eq!(elementary_divisors(&[6, 4]), vec![2, 3, 4]);
        // Cycles of x ↦ (x0 + x1) over Z/2 modulo the span of (1, 1).
        assert_eq!(homology_orders(&[vec![1, 1]], &[vec![1, 1]], 2, 2), Vec::<i64>::new());
        assert_eq!(homology_orders(&[vec![1, 1]], &[], 2, 2), vec![2]);
    }

    #[test]
    fn kernel_mod_six() {
        let ker = kernel_generators(&[vec![2, 3]], 2, 6);
        for k in &ker {
            assert_eq!(md(2 * k[0] + 3 * k[1], 6), 0);
        }
        // Kernel of (2 3) in (Z/6)^2 has order 6.
        let orders = homology_orders(&[vec![2, 3]], &[], 2, 6);
        assert_eq!(orders.iter().product::<i64>(), 6);
    }
}
