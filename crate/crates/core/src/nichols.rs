//! Braided integers, factorials and binomials, degree-truncated Nichols
//! algebras B(V, Ψ) = T(V)/ker Wor(Ψ) and their Hilbert series.
//!
//! Tensor words of degree d are indexed in base r with the first letter most
//! significant, which matches `SparseMatrix::kron`.

use std::collections::HashMap;
use std::fmt::Display;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::cohomology::ZmCocycle;
use crate::groups::{FiniteGroup, TranspositionClass};
use crate::linalg::{normalize_vec, rational_rank_fraction_free, rref, SparseMatrix, SparseVec};
use crate::scalars::{Field, GroupRingScalar, Rational, Ring, ScalarError};
use crate::yd::{braid_equation_witness, YDModule, YdError};

/// Default bound on n!·r^n, the number of word terms a factorial touches.
pub const DEFAULT_BUDGET: usize = 50_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NicholsError {
    #[error("braiding must be a {0}x{0} matrix")]
    Shape(usize),
    #[error("braid equation fails on basis triple {0:?}")]
    BraidEquation((usize, usize, usize)),
    #[error("degree {degree} needs {needed} word terms, budget is {budget}")]
    Budget { degree: usize, needed: usize, budget: usize },
    #[error("degree {0} exceeds the truncation degree {1}")]
    DegreeOverflow(usize, usize),
    #[error("componentwise computations are implemented for k[C_2] only, got modulus {0}")]
    Modulus(u32),
    #[error("binomial coefficient needs k <= n, got ({0}, {1})")]
    Binomial(usize, usize),
    #[error("cache: {0}")]
    Cache(String),
    #[error(transparent)]
    Module(#[from] YdError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FactorialMethod {
    /// ([1]⊗id)([2]⊗id)⋯[n].
    Product,
    /// Σ_σ Ψ_σ along lex-min reduced words.
    WordSum,
}

/// A solution Ψ of the braid equation on V ⊗ V, dim V = r.
#[derive(Clone, Debug, PartialEq)]
pub struct Braiding<R> {
    psi: SparseMatrix<R>,
    dim: usize,
    budget: usize,
}

fn checked_pow(r: usize, d: usize) -> Option<usize> {
    (0..d).try_fold(1usize, |acc, _| acc.checked_mul(r))
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

impl<R: Ring> Braiding<R> {
    pub fn new(psi: SparseMatrix<R>, dim: usize) -> Result<Braiding<R>, NicholsError> {
        if psi.rows() != dim * dim || psi.cols() != dim * dim {
            return Err(NicholsError::Shape(dim * dim));
        }
        if let Some(w) = braid_equation_witness(&psi, dim) {
            return Err(NicholsError::BraidEquation(w));
        }
        Ok(Braiding { psi, dim, budget: DEFAULT_BUDGET })
    }

    pub fn from_module(y: &YDModule<R>) -> Result<Braiding<R>, NicholsError> {
        Braiding::new(y.braiding(), y.rank())
    }

    pub fn with_budget(mut self, budget: usize) -> Braiding<R> {
        self.budget = budget;
        self
    }

    pub fn matrix(&self) -> &SparseMatrix<R> {
        &self.psi
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// r^d, or a budget error if it overflows.
    pub fn tensor_dim(&self, d: usize) -> Result<usize, NicholsError> {
        checked_pow(self.dim, d).ok_or(NicholsError::Budget { degree: d, needed: usize::MAX, budget: self.budget })
    }

    fn check_budget(&self, d: usize) -> Result<usize, NicholsError> {
        let size = self.tensor_dim(d)?;
        let needed = size.saturating_mul(factorial(d));
        if needed > self.budget {
            return Err(NicholsError::Budget { degree: d, needed, budget: self.budget });
        }
        Ok(size)
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Braiding<S> {
        Braiding { psi: self.psi.map(f), dim: self.dim, budget: self.budget }
    }

    /// Ψ_{k,k+1} (1-based k) applied to a vector of V^{⊗d}.
    pub fn apply_leg(&self, d: usize, k: usize, v: &[(usize, R)]) -> SparseVec<R> {
        debug_assert!(k >= 1 && k < d);
        let r = self.dim;
        let tail = checked_pow(r, d - k - 1).expect("tensor dimension");
        let mut out = Vec::with_capacity(v.len());
        for (x, c) in v {
            let (head, rest) = (x / (tail * r * r), x % (tail * r * r));
            let (pair, low) = (rest / tail, rest % tail);
            for (p, e) in self.psi.column(pair) {
                out.push((head * tail * r * r + p * tail + low, e.mul(c)));
            }
        }
        normalize_vec(out)
    }

    /// Ψ_{k,k+1} as a matrix on V^{⊗d}.
    pub fn leg(&self, d: usize, k: usize) -> Result<SparseMatrix<R>, NicholsError> {
        let size = self.tensor_dim(d)?;
        Ok(SparseMatrix::from_columns(size, (0..size).map(|w| self.apply_leg(d, k, &[(w, R::one())])).collect()))
    }

    /// Applies Ψ_{a_1}⋯Ψ_{a_l}, rightmost first.
    fn apply_word(&self, d: usize, word: &[usize], v: SparseVec<R>) -> SparseVec<R> {
        word.iter().rev().fold(v, |acc, &k| self.apply_leg(d, k, &acc))
    }

    /// [n]_Ψ = id + Ψ_{n−1,n} + Ψ_{n−1,n}Ψ_{n−2,n−1} + … + Ψ_{n−1,n}⋯Ψ_{1,2}.
    pub fn integer(&self, n: usize) -> Result<SparseMatrix<R>, NicholsError> {
        let size = self.tensor_dim(n)?;
        let columns = (0..size)
            .into_par_iter()
            .map(|w| self.integer_column(n, w))
            .collect();
        Ok(SparseMatrix::from_columns(size, columns))
    }

    fn integer_column(&self, n: usize, w: usize) -> SparseVec<R> {
        let mut terms = vec![(w, R::one())];
        for k in 1..n {
            let word: Vec<usize> = (n - k..n).rev().collect();
            terms.extend(self.apply_word(n, &word, vec![(w, R::one())]));
        }
        normalize_vec(terms)
    }

    /// [n]!_Ψ by either construction; the identity on V^{⊗0} = k for n = 0.
    pub fn factorial(&self, n: usize, method: FactorialMethod) -> Result<SparseMatrix<R>, NicholsError> {
        let size = self.check_budget(n)?;
        if n <= 1 {
            return Ok(SparseMatrix::identity(size));
        }
        match method {
            FactorialMethod::Product => {
                let mut f: SparseMatrix<R> = SparseMatrix::identity(self.dim);
                for d in 2..=n {
                    let prev = f;
                    let dim = self.tensor_dim(d)?;
                    let r = self.dim;
                    let columns = (0..dim)
                        .into_par_iter()
                        .map(|w| {
                            let mut out = Vec::new();
                            for (u, c) in self.integer_column(d, w) {
                                for (p, e) in prev.column(u / r) {
                                    out.push((p * r + u % r, e.mul(&c)));
                                }
                            }
                            normalize_vec(out)
                        })
                        .collect();
                    f = SparseMatrix::from_columns(dim, columns);
                }
                Ok(f)
            }
            FactorialMethod::WordSum => {
                let sn = FiniteGroup::symmetric(n);
                let words: Vec<&[usize]> = (0..sn.order()).map(|g| sn.reduced_word(g)).collect();
                let columns = (0..size)
                    .into_par_iter()
                    .map(|w| {
                        let mut out = Vec::new();
                        for word in &words {
                            out.extend(self.apply_word(n, word, vec![(w, R::one())]));
                        }
                        normalize_vec(out)
                    })
                    .collect();
                Ok(SparseMatrix::from_columns(size, columns))
            }
        }
    }

    /// Braided binomial coefficient [n k]_Ψ on V^{⊗n}, by the recursion
    /// [n k] = Ψ_{k,k+1}⋯Ψ_{n−1,n}([n−1 k−1] ⊗ id) + [n−1 k] ⊗ id.
    pub fn binomial(&self, n: usize, k: usize) -> Result<SparseMatrix<R>, NicholsError> {
        if k > n {
            return Err(NicholsError::Binomial(n, k));
        }
        self.check_budget(n)?;
        let mut memo = HashMap::new();
        Ok(self.binomial_rec(n, k, &mut memo))
    }

    fn binomial_rec(&self, n: usize, k: usize, memo: &mut HashMap<(usize, usize), SparseMatrix<R>>) -> SparseMatrix<R> {
        let size = checked_pow(self.dim, n).expect("budget checked");
        if k == 0 {
            return SparseMatrix::identity(size);
        }
        if k > n {
            return SparseMatrix::zeros(size, size);
        }
        if let Some(m) = memo.get(&(n, k)) {
            return m.clone();
        }
        let a = extend_right(&self.binomial_rec(n - 1, k - 1, memo), self.dim);
        let b = extend_right(&self.binomial_rec(n - 1, k, memo), self.dim);
        let word: Vec<usize> = (k..n).collect();
        let columns = (0..size).map(|w| self.apply_word(n, &word, a.column(w).to_vec())).collect();
        let m = SparseMatrix::from_columns(size, columns).add(&b);
        memo.insert((n, k), m.clone());
        m
    }
}

/// M ⊗ id_V for M on V^{⊗d}.
pub fn extend_right<R: Ring>(m: &SparseMatrix<R>, r: usize) -> SparseMatrix<R> {
    m.kron(&SparseMatrix::identity(r))
}

/// Rank data of one symmetrizer: lex-first pivot words, the expansion of
/// every word's image in terms of pivot images, and a kernel basis.
#[derive(Clone, Debug, PartialEq)]
pub struct Symmetrizer<F> {
    pub size: usize,
    /// Pivot words in increasing order: a normal basis of the quotient.
    pub normal: Vec<usize>,
    /// Per word: coordinates of its class in the normal basis.
    pub reduce: Vec<SparseVec<F>>,
    /// Kernel basis, one vector per non-pivot word.
    pub kernel: Vec<SparseVec<F>>,
}

impl<F: Field> Symmetrizer<F> {
    pub fn rank(&self) -> usize {
        self.normal.len()
    }

    /// Class of a tensor in the normal basis.
    pub fn reduce_vec(&self, v: &[(usize, F)]) -> SparseVec<F> {
        let mut out = Vec::new();
        for (w, c) in v {
            out.extend(self.reduce[*w].iter().map(|(i, e)| (*i, e.mul(c))));
        }
        normalize_vec(out)
    }
}

/// Connected components of the row/column support graph of a square matrix.
pub fn support_blocks<R: Ring>(m: &SparseMatrix<R>) -> Vec<Vec<usize>> {
    let n = m.cols();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for j in 0..n {
        for (i, _) in m.column(j) {
            let (a, b) = (find(&mut parent, *i), find(&mut parent, j));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut blocks: HashMap<usize, Vec<usize>> = HashMap::new();
    for j in 0..n {
        let root = find(&mut parent, j);
        blocks.entry(root).or_default().push(j);
    }
    let mut out: Vec<Vec<usize>> = blocks.into_values().collect();
    out.sort_by_key(|b| b[0]);
    out
}

fn dense_block<F: Field>(m: &SparseMatrix<F>, block: &[usize]) -> Vec<Vec<F>> {
    let pos: HashMap<usize, usize> = block.iter().enumerate().map(|(k, &w)| (w, k)).collect();
    let mut dense = vec![vec![F::zero(); block.len()]; block.len()];
    for (c, &w) in block.iter().enumerate() {
        for (i, e) in m.column(w) {
            dense[pos[i]][c] = e.clone();
        }
    }
    dense
}

/// Rank, normal words and kernel of a square matrix by dense RREF on each
/// support block.
pub fn analyse<F: Field>(m: &SparseMatrix<F>) -> Symmetrizer<F> {
    let size = m.cols();
    let blocks = support_blocks(m);
    let results: Vec<(Vec<usize>, Vec<(usize, SparseVec<F>)>, Vec<SparseVec<F>>)> = blocks
        .par_iter()
        .map(|block| {
            let rr = rref(dense_block(m, block), block.len());
            let pivots: Vec<usize> = rr.pivots.iter().map(|&c| block[c]).collect();
            // Coordinates refer to positions among this block's pivots for now.
            let reduce = block
                .iter()
                .enumerate()
                .map(|(c, &w)| {
                    let v = (0..rr.rank()).filter(|&r| !rr.rows[r][c].is_zero()).map(|r| (r, rr.rows[r][c].clone()));
                    (w, v.collect())
                })
                .collect();
            let kernel = rr
                .kernel()
                .into_iter()
                .map(|v| v.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (block[k], c)).collect())
                .collect();
            (pivots, reduce, kernel)
        })
        .collect();
    let mut normal: Vec<usize> = results.iter().flat_map(|r| r.0.iter().copied()).collect();
    normal.sort_unstable();
    let index: HashMap<usize, usize> = normal.iter().enumerate().map(|(k, &w)| (w, k)).collect();
    let mut reduce = vec![Vec::new(); size];
    let mut kernel = Vec::new();
    for (pivots, red, ker) in results {
        for (w, v) in red {
            reduce[w] = normalize_vec(v.into_iter().map(|(r, c)| (index[&pivots[r]], c)).collect());
        }
        kernel.extend(ker.into_iter().map(normalize_vec));
    }
    kernel.sort_by_key(|v| v.last().map(|e| e.0));
    Symmetrizer { size, normal, reduce, kernel }
}

/// Rank by dense elimination on each support block.
pub fn block_rank<F: Field>(m: &SparseMatrix<F>) -> usize {
    support_blocks(m).par_iter().map(|b| rref(dense_block(m, b), b.len()).rank()).sum()
}

/// Rank of the whole matrix by fraction-free elimination, without blocks.
pub fn dense_rank_oracle(m: &SparseMatrix<Rational>) -> usize {
    rational_rank_fraction_free(&m.to_dense())
}

/// A homogeneous element of a truncated Nichols algebra in normal-basis
/// coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct Homogeneous<F> {
    pub degree: usize,
    pub coords: SparseVec<F>,
}

/// B(V, Ψ) up to degree D with normal bases from pivot words.
#[derive(Clone, Debug)]
pub struct NicholsTruncation<F> {
    braiding: Braiding<F>,
    max_degree: usize,
    degrees: Vec<Symmetrizer<F>>,
}

impl<F: Field> NicholsTruncation<F> {
    pub fn build(braiding: &Braiding<F>, max_degree: usize) -> Result<NicholsTruncation<F>, NicholsError> {
        let degrees = (0..=max_degree)
            .map(|d| Ok(analyse(&braiding.factorial(d, FactorialMethod::Product)?)))
            .collect::<Result<Vec<_>, NicholsError>>()?;
        Ok(NicholsTruncation { braiding: braiding.clone(), max_degree, degrees })
    }

    pub fn braiding(&self) -> &Braiding<F> {
        &self.braiding
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn hilbert(&self) -> Vec<usize> {
        self.degrees.iter().map(|s| s.rank()).collect()
    }

    pub fn dim(&self, d: usize) -> usize {
        self.degrees[d].rank()
    }

    pub fn symmetrizer(&self, d: usize) -> &Symmetrizer<F> {
        &self.degrees[d]
    }

    pub fn normal_words(&self, d: usize) -> &[usize] {
        &self.degrees[d].normal
    }

    pub fn kernel(&self, d: usize) -> &[SparseVec<F>] {
        &self.degrees[d].kernel
    }

    /// Letters of word `w` of degree d, first letter first.
    pub fn letters(&self, d: usize, mut w: usize) -> Vec<usize> {
        let r = self.braiding.dim;
        let mut out = vec![0; d];
        for k in (0..d).rev() {
            out[k] = w % r;
            w /= r;
        }
        out
    }

    pub fn word_label(&self, d: usize, w: usize, labels: &[String]) -> String {
        if d == 0 {
            return "1".into();
        }
        self.letters(d, w).iter().map(|&a| labels[a].as_str()).collect::<Vec<_>>().join("·")
    }

    pub fn one(&self) -> Homogeneous<F> {
        Homogeneous { degree: 0, coords: vec![(0, F::one())] }
    }

    /// A degree-one element from coordinates in the basis of V.
    pub fn from_degree1(&self, v: SparseVec<F>) -> Homogeneous<F> {
        Homogeneous { degree: 1, coords: self.degrees[1].reduce_vec(&v) }
    }

    pub fn generator(&self, i: usize) -> Homogeneous<F> {
        self.from_degree1(vec![(i, F::one())])
    }

    /// Class of a tensor of degree d.
    pub fn reduce(&self, d: usize, v: &[(usize, F)]) -> Result<Homogeneous<F>, NicholsError> {
        if d > self.max_degree {
            return Err(NicholsError::DegreeOverflow(d, self.max_degree));
        }
        Ok(Homogeneous { degree: d, coords: self.degrees[d].reduce_vec(v) })
    }

    /// Normal-basis coordinates as a tensor.
    pub fn lift(&self, a: &Homogeneous<F>) -> SparseVec<F> {
        let normal = &self.degrees[a.degree].normal;
        normalize_vec(a.coords.iter().map(|(i, c)| (normal[*i], c.clone())).collect())
    }

    /// Concatenate lifts and reduce.
    pub fn multiply(&self, a: &Homogeneous<F>, b: &Homogeneous<F>) -> Result<Homogeneous<F>, NicholsError> {
        let d = a.degree + b.degree;
        if d > self.max_degree {
            return Err(NicholsError::DegreeOverflow(d, self.max_degree));
        }
        let shift = checked_pow(self.braiding.dim, b.degree).expect("within truncation");
        let (la, lb) = (self.lift(a), self.lift(b));
        let mut out = Vec::new();
        for (u, c) in &la {
            for (v, e) in &lb {
                out.push((u * shift + v, c.mul(e)));
            }
        }
        self.reduce(d, &normalize_vec(out))
    }

    pub fn add(&self, a: &Homogeneous<F>, b: &Homogeneous<F>) -> Homogeneous<F> {
        assert_eq!(a.degree, b.degree, "adding elements of different degrees");
        Homogeneous { degree: a.degree, coords: crate::linalg::vec_add(&a.coords, &b.coords) }
    }

    pub fn scale(&self, a: &Homogeneous<F>, s: &F) -> Homogeneous<F> {
        Homogeneous { degree: a.degree, coords: crate::linalg::vec_scale(&a.coords, s) }
    }
}

/// ρ(g)^{⊗d} applied to a tensor of degree d.
pub fn tensor_action<R: Ring>(y: &YDModule<R>, g: usize, d: usize, v: &[(usize, R)]) -> SparseVec<R> {
    let r = y.rank();
    let m = y.action(g);
    let mut out = Vec::new();
    for (w, c) in v {
        let mut terms: Vec<(usize, R)> = vec![(0, c.clone())];
        let mut rest = *w;
        let mut place = 1;
        for _ in 0..d {
            let a = rest % r;
            rest /= r;
            let mut next = Vec::new();
            for (x, s) in &terms {
                for (b, e) in m.column(a) {
                    next.push((x + b * place, s.mul(e)));
                }
            }
            terms = next;
            place *= r;
        }
        out.extend(terms);
    }
    normalize_vec(out)
}

/// Iterated cocycle on V^{⊗d}: a word of degrees g_1,…,g_d gets
/// embed^{Σ_i μ(g_1⋯g_{i−1}, g_i)}.
pub fn iterated_cocycle<R: Ring>(degrees: &[usize], mu: &ZmCocycle, embed: &R, d: usize) -> SparseMatrix<R> {
    let r = degrees.len();
    let g = mu.group();
    let size = checked_pow(r, d).expect("tensor dimension");
    let powers: Vec<R> = (0..mu.modulus() as u64).map(|e| embed.powu(e)).collect();
    let diag = (0..size)
        .map(|mut w| {
            let mut letters = vec![0; d];
            for k in (0..d).rev() {
                letters[k] = w % r;
                w /= r;
            }
            let mut prefix = g.identity();
            let mut e = 0;
            for &a in &letters {
                e += mu.get(prefix, degrees[a]);
                prefix = g.mul(prefix, degrees[a]);
            }
            powers[e % mu.modulus()].clone()
        })
        .collect();
    SparseMatrix::diagonal(diag)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistEquivalence {
    pub max_degree: usize,
    /// [d]!_{Ψ_μ} = μ_d [d]!_Ψ μ_d⁻¹ as matrices over k[C_m], per degree.
    pub conjugate: Vec<bool>,
    /// Ranks of [d]!_Ψ and of both components of [d]!_{Ψ_μ}.
    pub base_ranks: Vec<usize>,
    pub twisted_ranks: [Vec<usize>; 2],
}

impl TwistEquivalence {
    pub fn passed(&self) -> bool {
        self.conjugate.iter().all(|&b| b) && self.twisted_ranks.iter().all(|r| *r == self.base_ranks)
    }
}

/// Checks that twisting by μ conjugates every symmetrizer by the iterated
/// cocycle, so ker [d]!_{Ψ_μ} = μ_d(ker [d]!_Ψ) and ranks agree.
pub fn twist_equivalence_check(
    y: &YDModule<Rational>,
    mu: &ZmCocycle,
    max_degree: usize,
) -> Result<TwistEquivalence, NicholsError> {
    let m = mu.modulus() as u32;
    if m != 2 {
        return Err(NicholsError::Modulus(m));
    }
    let base = Braiding::from_module(y)?;
    let lifted = base.map(|c| GroupRingScalar::constant(c.clone()));
    let twisted = Braiding::from_module(&y.extend(mu)?)?;
    let z = GroupRingScalar::z(m);
    let zinv = z.inv()?;
    let mut report = TwistEquivalence {
        max_degree,
        conjugate: Vec::new(),
        base_ranks: Vec::new(),
        twisted_ranks: [Vec::new(), Vec::new()],
    };
    for d in 0..=max_degree {
        let f = lifted.factorial(d, FactorialMethod::Product)?;
        let ft = twisted.factorial(d, FactorialMethod::Product)?;
        let md = iterated_cocycle(y.degrees(), mu, &z, d);
        let md_inv = iterated_cocycle(y.degrees(), mu, &zinv, d);
        report.conjugate.push(ft == md.mul(&f).mul(&md_inv));
        report.base_ranks.push(block_rank(&base.factorial(d, FactorialMethod::Product)?));
        let [plus, minus] = split_components(&ft)?;
        report.twisted_ranks[0].push(block_rank(&plus));
        report.twisted_ranks[1].push(block_rank(&minus));
    }
    Ok(report)
}

/// The rational matrices at z = 1 and z = −1 of a matrix over k[C_2].
pub fn split_components(m: &SparseMatrix<GroupRingScalar>) -> Result<[SparseMatrix<Rational>; 2], NicholsError> {
    let modulus = m.columns().iter().flatten().map(|(_, c)| c.modulus()).max().unwrap_or(1);
    if modulus > 2 {
        return Err(NicholsError::Modulus(modulus));
    }
    let plus = m.try_map(|c| c.specialize_rational(2, &Rational::one()))?;
    let minus = m.try_map(|c| c.specialize_rational(2, &Rational::from_int(-1)))?;
    Ok([plus, minus])
}

/// The two rational braidings at z = ±1.
pub fn split_braiding(b: &Braiding<GroupRingScalar>) -> Result<[Braiding<Rational>; 2], NicholsError> {
    let [p, m] = split_components(&b.psi)?;
    Ok([
        Braiding { psi: p, dim: b.dim, budget: b.budget },
        Braiding { psi: m, dim: b.dim, budget: b.budget },
    ])
}

/// Persistent per-(braiding, degree) rank cache. Files are named by a
/// SHA-256 of the braiding's entries and the degree.
#[derive(Debug)]
pub struct RankCache {
    dir: PathBuf,
    write_lock: Mutex<()>,
    hits: AtomicUsize,
}

#[derive(Serialize, Deserialize)]
struct CacheEntry {
    rank: usize,
}

impl RankCache {
    pub fn new(dir: impl AsRef<Path>) -> Result<RankCache, NicholsError> {
        let dir = dir.as_ref().to_path_buf();
        fs::create_dir_all(&dir).map_err(|e| NicholsError::Cache(format!("{}: {e}", dir.display())))?;
        Ok(RankCache { dir, write_lock: Mutex::new(()), hits: AtomicUsize::new(0) })
    }

    pub fn hits(&self) -> usize {
        self.hits.load(Ordering::Relaxed)
    }

    pub fn key<R: Ring + Display>(b: &Braiding<R>, degree: usize) -> String {
        let mut h = Sha256::new();
        h.update(format!("symmetrizer-rank v1 dim={} degree={degree}\n", b.dim));
        for (j, col) in b.psi.columns().iter().enumerate() {
            for (i, c) in col {
                h.update(format!("{i} {j} {c}\n"));
            }
        }
        hex::encode(h.finalize())
    }

    pub fn get(&self, key: &str) -> Option<usize> {
        let text = fs::read_to_string(self.dir.join(format!("{key}.json"))).ok()?;
        let entry: CacheEntry = serde_json::from_str(&text).ok()?;
        self.hits.fetch_add(1, Ordering::Relaxed);
        Some(entry.rank)
    }

    pub fn put(&self, key: &str, rank: usize) -> Result<(), NicholsError> {
        let _guard = self.write_lock.lock().expect("cache lock");
        let tmp = self.dir.join(format!("{key}.json.tmp"));
        let text = serde_json::to_string(&CacheEntry { rank }).expect("serializable");
        fs::write(&tmp, text)
            .and_then(|_| fs::rename(&tmp, self.dir.join(format!("{key}.json"))))
            .map_err(|e| NicholsError::Cache(e.to_string()))
    }
}

/// [rank [d]!_Ψ for d = 0..=D].
pub fn hilbert_prefix<F: Field + Display>(
    b: &Braiding<F>,
    max_degree: usize,
    cache: Option<&RankCache>,
) -> Result<Vec<usize>, NicholsError> {
    let mut ranks = Vec::with_capacity(max_degree + 1);
    for d in 0..=max_degree {
        let key = cache.map(|_| RankCache::key(b, d));
        if let (Some(c), Some(k)) = (cache, &key) {
            if let Some(rank) = c.get(k) {
                ranks.push(rank);
                continue;
            }
        }
        let rank = block_rank(&b.factorial(d, FactorialMethod::Product)?);
        if let (Some(c), Some(k)) = (cache, &key) {
            c.put(k, rank)?;
        }
        ranks.push(rank);
    }
    Ok(ranks)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertReport {
    pub degrees: Vec<usize>,
    /// Ranks over the field, or of the z = 1 component over k[C_2].
    pub ranks: Vec<usize>,
    /// Component prefixes at z = 1 and z = −1 (over k[C_2] only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub components: Option<[Vec<usize>; 2]>,
    pub flat: bool,
}

impl HilbertReport {
    pub fn over_field(ranks: Vec<usize>) -> HilbertReport {
        HilbertReport { degrees: (0..ranks.len()).collect(), ranks, components: None, flat: true }
    }
}

/// Hilbert prefixes of both components of a braiding over k[C_2].
pub fn hilbert_prefix_split(
    b: &Braiding<GroupRingScalar>,
    max_degree: usize,
    cache: Option<&RankCache>,
) -> Result<HilbertReport, NicholsError> {
    let [plus, minus] = split_braiding(b)?;
    let p = hilbert_prefix(&plus, max_degree, cache)?;
    let m = hilbert_prefix(&minus, max_degree, cache)?;
    Ok(HilbertReport { degrees: (0..=max_degree).collect(), ranks: p.clone(), flat: p == m, components: Some([p, m]) })
}

/// The displayed quadratic relations of B(RX_n, q_z), as tensors of degree 2:
/// e_(ij)², e_(ij)e_(st) − z e_(st)e_(ij) for disjoint pairs (ij) < (st), and
/// e_(ij)e_(jk) − z e_(jk)e_(ik) − z e_(ik)e_(ij) for i < j < k.
pub fn qz_quadratic_relations(n: usize) -> Vec<SparseVec<GroupRingScalar>> {
    let x = TranspositionClass::new(n);
    let r = x.len();
    let z = GroupRingScalar::z(2);
    let one = GroupRingScalar::one();
    let mut rels = Vec::new();
    for a in 0..r {
        rels.push(vec![(a * r + a, one.clone())]);
    }
    for a in 0..r {
        for b in a + 1..r {
            let ((i, j), (s, t)) = (x.pair(a), x.pair(b));
            if i != s && i != t && j != s && j != t {
                rels.push(normalize_vec(vec![(a * r + b, one.clone()), (b * r + a, z.neg())]));
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let (ij, jk, ik) = (x.index(i, j), x.index(j, k), x.index(i, k));
                rels.push(normalize_vec(vec![
                    (ij * r + jk, one.clone()),
                    (jk * r + ik, z.neg()),
                    (ik * r + ij, z.neg()),
                ]));
            }
        }
    }
    rels
}

/// Closure of a set of degree-d tensors under the group action.
pub fn group_closure<R: Ring>(y: &YDModule<R>, d: usize, vs: &[SparseVec<R>]) -> Vec<SparseVec<R>> {
    let mut out = Vec::new();
    for g in 0..y.group().order() {
        for v in vs {
            let w = tensor_action(y, g, d, v);
            if !w.is_empty() && !out.contains(&w) {
                out.push(w);
            }
        }
    }
    out
}

/// Rank of a list of sparse vectors of length `len`.
pub fn span_rank<F: Field>(vs: &[SparseVec<F>], len: usize) -> usize {
    let dense: Vec<Vec<F>> = vs
        .iter()
        .map(|v| {
            let mut row = vec![F::zero(); len];
            for (i, c) in v {
                row[*i] = c.clone();
            }
            row
        })
        .collect();
    if dense.is_empty() {
        return 0;
    }
    rref(dense, len).rank()
}
