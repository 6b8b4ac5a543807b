//! Algebras graded by a finite group, given by structure constants, and
//! their cocycle twists and cocycle extensions.

use std::fmt::Display;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cohomology::{OneCochain, ZmCocycle};
use crate::groups::FiniteGroup;
use crate::linalg::{normalize_vec, vec_scale, Accumulator, SparseMatrix, SparseVec};
use crate::scalars::{Cyclotomic, GroupRingScalar, Rational, Ring, ScalarError};

/// Associativity is checked on construction up to this rank.
pub const ASSOCIATIVITY_CHECK_RANK: usize = 200;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GradedError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("structure constant c[{i}][{j}] has a term of degree {found}, expected {expected}")]
    Grading { i: usize, j: usize, found: usize, expected: usize },
    #[error("basis element {0} does not act as the identity")]
    Unit(usize),
    #[error("associativity fails at ({0}, {1}, {2})")]
    Associativity(usize, usize, usize),
    #[error("grading groups differ")]
    GroupMismatch,
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Finite-rank algebra with a G-degree per basis element. `products[i·r+j]`
/// holds e_i·e_j as a sparse vector.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedAlgebra<R> {
    group: Arc<FiniteGroup>,
    labels: Vec<String>,
    degrees: Vec<usize>,
    products: Vec<SparseVec<R>>,
    unit: usize,
}

impl<R: Ring> GradedAlgebra<R> {
    /// Validates shape, grading and the unit; associativity is checked for
    /// rank ≤ [`ASSOCIATIVITY_CHECK_RANK`].
    pub fn new(
        group: Arc<FiniteGroup>,
        labels: Vec<String>,
        degrees: Vec<usize>,
        products: Vec<SparseVec<R>>,
        unit: usize,
    ) -> Result<GradedAlgebra<R>, GradedError> {
        let r = labels.len();
        if degrees.len() != r || products.len() != r * r || unit >= r.max(1) {
            return Err(GradedError::Shape(format!("rank {r}: need {r} degrees and {} products", r * r)));
        }
        if degrees.iter().any(|&d| d >= group.order()) {
            return Err(GradedError::Shape("degree outside the group".into()));
        }
        let products: Vec<SparseVec<R>> = products.into_iter().map(normalize_vec).collect();
        let a = GradedAlgebra { group, labels, degrees, products, unit };
        a.check_grading()?;
        a.check_unit()?;
        if r <= ASSOCIATIVITY_CHECK_RANK {
            a.check_associativity()?;
        }
        Ok(a)
    }

    /// The group algebra kG with basis in group order.
    pub fn group_algebra(group: Arc<FiniteGroup>) -> GradedAlgebra<R> {
        let n = group.order();
        let labels = group.labels().to_vec();
        let products = (0..n * n).map(|x| vec![(group.mul(x / n, x % n), R::one())]).collect();
        let unit = group.identity();
        GradedAlgebra { degrees: (0..n).collect(), group, labels, products, unit }
    }

    fn check_grading(&self) -> Result<(), GradedError> {
        let r = self.rank();
        for i in 0..r {
            for j in 0..r {
                let expected = self.group.mul(self.degrees[i], self.degrees[j]);
                if let Some(&(k, _)) = self.product(i, j).iter().find(|(k, _)| self.degrees[*k] != expected) {
                    return Err(GradedError::Grading { i, j, found: self.degrees[k], expected });
                }
            }
        }
        Ok(())
    }

    fn check_unit(&self) -> Result<(), GradedError> {
        if self.degrees[self.unit] != self.group.identity() {
            return Err(GradedError::Unit(self.unit));
        }
        for i in 0..self.rank() {
            let e = vec![(i, R::one())];
            if self.product(self.unit, i) != e.as_slice() || self.product(i, self.unit) != e.as_slice() {
                return Err(GradedError::Unit(self.unit));
            }
        }
        Ok(())
    }

    /// First basis triple with (e_i e_j) e_k ≠ e_i (e_j e_k).
    pub fn check_associativity(&self) -> Result<(), GradedError> {
        let r = self.rank();
        let bad = (0..r * r).into_par_iter().find_first(|&x| {
            let (i, j) = (x / r, x % r);
            (0..r).any(|k| {
                let left = self.mul_vec_basis(self.product(i, j), k);
                let right = self.mul_basis_vec(i, self.product(j, k));
                left != right
            })
        });
        match bad {
            None => Ok(()),
            Some(x) => {
                let (i, j) = (x / r, x % r);
                let k = (0..r)
                    .find(|&k| self.mul_vec_basis(self.product(i, j), k) != self.mul_basis_vec(i, self.product(j, k)))
                    .expect("witness");
                Err(GradedError::Associativity(i, j, k))
            }
        }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn degree(&self, i: usize) -> usize {
        self.degrees[i]
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn product(&self, i: usize, j: usize) -> &[(usize, R)] {
        &self.products[i * self.rank() + j]
    }

    fn mul_vec_basis(&self, a: &[(usize, R)], k: usize) -> SparseVec<R> {
        let mut acc = Accumulator::new(self.rank());
        for (i, c) in a {
            acc.add_scaled(self.product(*i, k), c);
        }
        acc.drain()
    }

    fn mul_basis_vec(&self, i: usize, b: &[(usize, R)]) -> SparseVec<R> {
        let mut acc = Accumulator::new(self.rank());
        for (j, c) in b {
            acc.add_scaled(self.product(i, *j), c);
        }
        acc.drain()
    }

    /// Product of two elements given in the basis.
    pub fn mul(&self, a: &[(usize, R)], b: &[(usize, R)]) -> SparseVec<R> {
        let mut acc = Accumulator::new(self.rank());
        for (i, x) in a {
            for (j, y) in b {
                acc.add_scaled(self.product(*i, *j), &x.mul(y));
            }
        }
        acc.drain()
    }

    /// Same basis and degrees, products rescaled by f(deg i, deg j).
    fn rescaled(&self, f: impl Fn(usize, usize) -> R) -> GradedAlgebra<R> {
        let r = self.rank();
        let products = (0..r * r)
            .map(|x| {
                let (i, j) = (x / r, x % r);
                vec_scale(&self.products[x], &f(self.degrees[i], self.degrees[j]))
            })
            .collect();
        GradedAlgebra { products, ..self.clone() }
    }

    /// a ⋆ b = embed^{μ(deg a, deg b)}·ab. The result is re-verified.
    pub fn twist(&self, mu: &ZmCocycle, embed: &R) -> Result<GradedAlgebra<R>, GradedError> {
        if mu.group().as_ref() != self.group.as_ref() {
            return Err(GradedError::GroupMismatch);
        }
        let powers: Vec<R> = (0..mu.modulus() as u64).map(|e| embed.powu(e)).collect();
        let t = self.rescaled(|g, h| powers[mu.get(g, h)].clone());
        GradedAlgebra::new(t.group, t.labels, t.degrees, t.products, t.unit)
    }

    /// Change of coefficients along a ring map.
    pub fn map_coefficients<S: Ring>(&self, f: impl Fn(&R) -> S) -> GradedAlgebra<S> {
        let products = self
            .products
            .iter()
            .map(|v| normalize_vec(v.iter().map(|(k, c)| (*k, f(c))).collect()))
            .collect();
        GradedAlgebra {
            group: self.group.clone(),
            labels: self.labels.clone(),
            degrees: self.degrees.clone(),
            products,
            unit: self.unit,
        }
    }

    pub fn try_map_coefficients<S: Ring, E>(
        &self,
        f: impl Fn(&R) -> Result<S, E>,
    ) -> Result<GradedAlgebra<S>, E> {
        let mut products = Vec::with_capacity(self.products.len());
        for v in &self.products {
            let mut w = Vec::with_capacity(v.len());
            for (k, c) in v {
                w.push((*k, f(c)?));
            }
            products.push(normalize_vec(w));
        }
        Ok(GradedAlgebra {
            group: self.group.clone(),
            labels: self.labels.clone(),
            degrees: self.degrees.clone(),
            products,
            unit: self.unit,
        })
    }

    /// Left multiplication by e_i as a matrix.
    pub fn left_multiplication(&self, i: usize) -> SparseMatrix<R> {
        let r = self.rank();
        SparseMatrix::from_columns(r, (0..r).map(|j| self.product(i, j).to_vec()).collect())
    }

    pub fn to_json(&self, ring: &str) -> GradedAlgebraJson
    where
        R: Display,
    {
        let r = self.rank();
        let mut triplets = Vec::new();
        for i in 0..r {
            for j in 0..r {
                for (k, c) in self.product(i, j) {
                    triplets.push((i, j, *k, c.to_string()));
                }
            }
        }
        GradedAlgebraJson {
            ring: ring.to_string(),
            basis: self.labels.clone(),
            degrees: self.degrees.clone(),
            structure_constants: triplets,
            unit: self.unit,
        }
    }
}

/// a ↦ embed^{φ(deg a)}·a is an isomorphism from the twist by μ·dφ onto
/// the twist by μ. Checks this on all structure constants.
pub fn cochain_rescaling_check<R: Ring>(
    twisted_mu: &GradedAlgebra<R>,
    twisted_nu: &GradedAlgebra<R>,
    phi: &OneCochain,
    embed: &R,
) -> bool {
    let r = twisted_mu.rank();
    if twisted_nu.rank() != r || twisted_mu.degrees != twisted_nu.degrees {
        return false;
    }
    let f = |i: usize| embed.powu(phi.get(twisted_mu.degree(i)) as u64);
    (0..r).all(|i| {
        (0..r).all(|j| {
            // f(e_i ⋆_ν e_j) = f(e_i) ⋆_μ f(e_j)
            let lhs: SparseVec<R> = twisted_nu.product(i, j).iter().map(|(k, c)| (*k, c.mul(&f(*k)))).collect();
            let rhs = vec_scale(twisted_mu.product(i, j), &f(i).mul(&f(j)));
            normalize_vec(lhs) == rhs
        })
    })
}

impl GradedAlgebra<Rational> {
    /// Scalar extension to Q[C_m] followed by the twist with z itself.
    pub fn extend(&self, mu: &ZmCocycle) -> Result<GradedAlgebra<GroupRingScalar>, GradedError> {
        let m = mu.modulus() as u32;
        self.map_coefficients(|c| GroupRingScalar::constant(c.clone())).twist(mu, &GroupRingScalar::z(m))
    }

    pub fn from_json(group: Arc<FiniteGroup>, j: &GradedAlgebraJson) -> Result<GradedAlgebra<Rational>, GradedError> {
        let r = j.basis.len();
        let mut products = vec![Vec::new(); r * r];
        for (i, jj, k, c) in &j.structure_constants {
            if *i >= r || *jj >= r || *k >= r {
                return Err(GradedError::Shape("structure constant index out of range".into()));
            }
            let c: Rational = c.parse()?;
            products[i * r + jj].push((*k, c));
        }
        GradedAlgebra::new(group, j.basis.clone(), j.degrees.clone(), products, j.unit)
    }
}

impl GradedAlgebra<GroupRingScalar> {
    /// z ↦ q for a rational q with q^m = 1.
    pub fn specialize_rational(&self, m: u32, q: &Rational) -> Result<GradedAlgebra<Rational>, GradedError> {
        Ok(self.try_map_coefficients(|c| c.specialize_rational(m, q))?)
    }

    /// z ↦ q in a cyclotomic field.
    pub fn specialize(&self, m: u32, q: &Cyclotomic) -> Result<GradedAlgebra<Cyclotomic>, GradedError> {
        Ok(self.try_map_coefficients(|c| c.specialize(m, q))?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedAlgebraJson {
    pub ring: String,
    pub basis: Vec<String>,
    pub degrees: Vec<usize>,
    /// (i, j, k, c): e_i·e_j has coefficient c at e_k.
    pub structure_constants: Vec<(usize, usize, usize, String)>,
    pub unit: usize,
}

/// δ: B → A ⊗ k_μG, b ↦ b ⊗ u_{deg b}, where k_μG has u_g u_h =
/// embed^{μ(g,h)} u_{gh}. Returns true when δ is multiplicative for the
/// product of `twisted`, i.e. `twisted` is the twist of `a` by μ.
pub fn coaction_realization_check<R: Ring>(
    a: &GradedAlgebra<R>,
    twisted: &GradedAlgebra<R>,
    mu: &ZmCocycle,
    embed: &R,
) -> bool {
    let r = a.rank();
    let n = a.group.order();
    if twisted.rank() != r || twisted.degrees != a.degrees || mu.group().order() != n {
        return false;
    }
    let powers: Vec<R> = (0..mu.modulus() as u64).map(|e| embed.powu(e)).collect();
    // Elements of A ⊗ k_μG are sparse over the index k·|G| + g.
    let delta = |v: &[(usize, R)]| -> SparseVec<R> {
        normalize_vec(v.iter().map(|(k, c)| (k * n + a.degrees[*k], c.clone())).collect())
    };
    let tensor_mul = |x: &[(usize, R)], y: &[(usize, R)]| -> SparseVec<R> {
        let mut acc = Accumulator::new(r * n);
        for (p, c) in x {
            for (q, d) in y {
                let (i, g, j, h) = (p / n, p % n, q / n, q % n);
                let s = c.mul(d).mul(&powers[mu.get(g, h)]);
                let gh = a.group.mul(g, h);
                for (k, e) in a.product(i, j) {
                    acc.add(k * n + gh, &e.mul(&s));
                }
            }
        }
        acc.drain()
    };
    (0..r).into_par_iter().all(|i| {
        (0..r).all(|j| {
            let lhs = delta(twisted.product(i, j));
            let rhs = tensor_mul(&delta(&[(i, R::one())]), &delta(&[(j, R::one())]));
            lhs == rhs
        })
    })
}

/// A free module with a G-degree per basis vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedModule {
    pub degrees: Vec<usize>,
}

impl GradedModule {
    /// The monoidal unit: one basis vector of degree 1.
    pub fn unit(group: &FiniteGroup) -> GradedModule {
        GradedModule { degrees: vec![group.identity()] }
    }

    /// k G with its grading by elements.
    pub fn regular(group: &FiniteGroup) -> GradedModule {
        GradedModule { degrees: (0..group.order()).collect() }
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    /// X ⊗ Y with basis index i·dim(Y) + j.
    pub fn tensor(&self, other: &GradedModule, group: &FiniteGroup) -> GradedModule {
        let degrees = self.degrees.iter().flat_map(|&a| other.degrees.iter().map(move |&b| group.mul(a, b))).collect();
        GradedModule { degrees }
    }
}

/// The natural automorphism μ_{X,Y} of X ⊗ Y: x ⊗ y ↦ embed^{μ(deg x, deg y)} x ⊗ y.
pub fn laycle_component<R: Ring>(mu: &ZmCocycle, embed: &R, x: &GradedModule, y: &GradedModule) -> SparseMatrix<R> {
    let powers: Vec<R> = (0..mu.modulus() as u64).map(|e| embed.powu(e)).collect();
    let powers = &powers;
    let d = x.degrees.iter().flat_map(|&a| y.degrees.iter().map(move |&b| powers[mu.get(a, b)].clone())).collect();
    SparseMatrix::diagonal(d)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LaycleReport {
    /// μ_{X,Y⊗Z}(id ⊗ μ_{Y,Z}) = μ_{X⊗Y,Z}(μ_{X,Y} ⊗ id).
    pub cocycle_identity: bool,
    /// μ_{X,1} = μ_{1,X} = id for X, Y and Z.
    pub normalized: bool,
}

impl LaycleReport {
    pub fn passed(&self) -> bool {
        self.cocycle_identity && self.normalized
    }
}

/// Checks the laycle identities for μ acting on graded modules, as matrix
/// identities on X ⊗ Y ⊗ Z.
pub fn laycle_check<R: Ring>(
    mu: &ZmCocycle,
    embed: &R,
    x: &GradedModule,
    y: &GradedModule,
    z: &GradedModule,
) -> LaycleReport {
    let g = mu.group();
    let xy = x.tensor(y, g);
    let yz = y.tensor(z, g);
    let lhs = laycle_component(mu, embed, x, &yz).mul(&SparseMatrix::identity(x.dim()).kron(&laycle_component(
        mu, embed, y, z,
    )));
    let rhs = laycle_component(mu, embed, &xy, z).mul(&laycle_component(mu, embed, x, y).kron(&SparseMatrix::identity(z.dim())));
    let one = GradedModule::unit(g);
    let normalized = [x, y, z].iter().all(|m| {
        let id = SparseMatrix::identity(m.dim());
        laycle_component(mu, embed, m, &one) == id && laycle_component(mu, embed, &one, m) == id
    });
    LaycleReport { cocycle_identity: lhs == rhs, normalized }
}

/// Index of γ_i (1-based) in the elementary abelian group C_2^n, whose
/// elements are bit vectors with γ_1 as the leading digit.
pub fn clifford_generator(n: usize, i: usize) -> usize {
    assert!((1..=n).contains(&i), "generator index out of range");
    1 << (n - i)
}

/// ∏_{i<j} b_ij on C_2^n: the bicharacter with μ(γ_k, γ_l) = z iff k > l.
pub fn clifford_cocycle(group: Arc<FiniteGroup>, n: usize) -> ZmCocycle {
    assert_eq!(group.order(), 1 << n, "expected C_2^n");
    let bit = |x: usize, i: usize| (x >> (n - i)) & 1;
    ZmCocycle::from_fn(group, 2, |x, y| {
        let mut e = 0;
        for i in 1..=n {
            for j in i + 1..=n {
                e += bit(x, j) * bit(y, i);
            }
        }
        e as i64
    })
}

/// The element γ_i as a sparse vector of k[C_2^n].
pub fn clifford_gamma<R: Ring>(n: usize, i: usize) -> SparseVec<R> {
    vec![(clifford_generator(n, i), R::one())]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::FiniteGroup;

    fn q(v: i64) -> Rational {
        Rational::from_int(v)
    }

    #[test]
    fn group_algebra_is_associative() {
        let g = Arc::new(FiniteGroup::symmetric(3));
        let a: GradedAlgebra<Rational> = GradedAlgebra::group_algebra(g);
        assert!(a.check_associativity().is_ok());
        assert_eq!(a.rank(), 6);
    }

    #[test]
    fn clifford_relations_for_three_generators() {
        let g = Arc::new(FiniteGroup::elementary_abelian(2, 3));
        let a: GradedAlgebra<Rational> = GradedAlgebra::group_algebra(g.clone());
        let c = a.twist(&clifford_cocycle(g, 3), &q(-1)).unwrap();
        let gamma = |i| clifford_gamma::<Rational>(3, i);
        for i in 1..=3 {
            assert_eq!(c.mul(&gamma(i), &gamma(i)), vec![(c.unit(), q(1))]);
            for j in i + 1..=3 {
                assert_eq!(c.mul(&gamma(j), &gamma(i)), vec_scale(&c.mul(&gamma(i), &gamma(j)), &q(-1)));
            }
        }
    }

    #[test]
    fn broken_grading_is_rejected() {
        let g = Arc::new(FiniteGroup::cyclic(2));
        let labels = vec!["1".to_string(), "x".to_string()];
        let products = vec![vec![(0, q(1))], vec![(1, q(1))], vec![(1, q(1))], vec![(1, q(1))]];
        let err = GradedAlgebra::new(g, labels, vec![0, 1], products, 0).unwrap_err();
        assert!(matches!(err, GradedError::Grading { .. }));
    }
}
