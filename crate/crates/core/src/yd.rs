//! Yetter–Drinfeld modules over a finite group with coefficients in k or
//! k[C_m]: a grading plus a compatible action, the braiding, duals, the rack
//! modules (X_n, q) and the cocycle twist of modules.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cohomology::{chi_from_cocycle, ZmCocycle};
use crate::groups::{FiniteGroup, TranspositionClass};
use crate::linalg::{normalize_vec, SparseMatrix, SparseVec};
use crate::scalars::{GroupRingScalar, Rational, Ring, ScalarError};

/// Rack modules are built for S_n with n up to this bound.
pub const MAX_RACK_DEGREE: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum YdError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("rho(g{0}) rho(g{1}) != rho(g{0} g{1})")]
    NotRepresentation(usize, usize),
    #[error("the identity does not act trivially")]
    IdentityAction,
    #[error("g{g} moves basis vector {basis} outside degree g h g^-1")]
    Compatibility { g: usize, basis: usize },
    #[error("generators do not reach every group element")]
    NotGenerated,
    #[error("rack cocycle identity fails at (rho, sigma, tau) = ({0}, {1}, {2})")]
    RackCocycle(usize, usize, usize),
    #[error("rack modules need 2 <= n <= {MAX_RACK_DEGREE}, got {0}")]
    Degree(usize),
    #[error("variant {0} needs coefficients in k[C_2]")]
    NeedsGroupRing(RackVariant),
    #[error("groups differ")]
    GroupMismatch,
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// A YD module: basis vector i has degree `degrees[i]` and g acts by
/// `action[g]`, one matrix per group element.
#[derive(Clone, Debug, PartialEq)]
pub struct YDModule<R> {
    group: Arc<FiniteGroup>,
    labels: Vec<String>,
    degrees: Vec<usize>,
    action: Vec<SparseMatrix<R>>,
}

impl<R: Ring> YDModule<R> {
    /// Checks the representation property on all pairs and the compatibility
    /// g ▷ Y_h ⊆ Y_{ghg⁻¹}. Invertibility follows from ρ(1) = id.
    pub fn new(
        group: Arc<FiniteGroup>,
        labels: Vec<String>,
        degrees: Vec<usize>,
        action: Vec<SparseMatrix<R>>,
    ) -> Result<YDModule<R>, YdError> {
        let r = labels.len();
        if degrees.len() != r || action.len() != group.order() {
            return Err(YdError::Shape(format!("rank {r}, {} degrees, {} action matrices", degrees.len(), action.len())));
        }
        if degrees.iter().any(|&d| d >= group.order()) {
            return Err(YdError::Shape("degree outside the group".into()));
        }
        if action.iter().any(|m| m.rows() != r || m.cols() != r) {
            return Err(YdError::Shape(format!("action matrices must be {r}x{r}")));
        }
        let y = YDModule { group, labels, degrees, action };
        y.check()?;
        Ok(y)
    }

    /// Extends generator matrices to the whole group along a breadth-first
    /// search of the Cayley graph, then checks everything.
    pub fn from_generators(
        group: Arc<FiniteGroup>,
        labels: Vec<String>,
        degrees: Vec<usize>,
        generators: &[(usize, SparseMatrix<R>)],
    ) -> Result<YDModule<R>, YdError> {
        let r = labels.len();
        let mut action: Vec<Option<SparseMatrix<R>>> = vec![None; group.order()];
        action[group.identity()] = Some(SparseMatrix::identity(r));
        let mut queue = VecDeque::from([group.identity()]);
        while let Some(g) = queue.pop_front() {
            for (s, m) in generators {
                let gs = group.mul(g, *s);
                if action[gs].is_none() {
                    action[gs] = Some(action[g].as_ref().expect("visited").mul(m));
                    queue.push_back(gs);
                }
            }
        }
        let action = action.into_iter().collect::<Option<Vec<_>>>().ok_or(YdError::NotGenerated)?;
        YDModule::new(group, labels, degrees, action)
    }

    pub fn check(&self) -> Result<(), YdError> {
        let n = self.group.order();
        let e = self.group.identity();
        if self.action[e] != SparseMatrix::identity(self.rank()) {
            return Err(YdError::IdentityAction);
        }
        for g in 0..n {
            for i in 0..self.rank() {
                let target = self.group.conj(g, self.degrees[i]);
                if self.action[g].column(i).iter().any(|(k, _)| self.degrees[*k] != target) {
                    return Err(YdError::Compatibility { g, basis: i });
                }
            }
        }
        let bad = (0..n * n).into_par_iter().find_first(|&x| {
            let (g, h) = (x / n, x % n);
            self.action[g].mul(&self.action[h]) != self.action[self.group.mul(g, h)]
        });
        match bad {
            Some(x) => Err(YdError::NotRepresentation(x / n, x % n)),
            None => Ok(()),
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

    pub fn action(&self, g: usize) -> &SparseMatrix<R> {
        &self.action[g]
    }

    /// Ψ(e_i ⊗ e_j) = (deg e_i ▷ e_j) ⊗ e_i on the basis i·r + j.
    pub fn braiding(&self) -> SparseMatrix<R> {
        let r = self.rank();
        let columns = (0..r * r)
            .map(|x| {
                let (i, j) = (x / r, x % r);
                let mut col: Vec<(usize, R)> =
                    self.action[self.degrees[i]].column(j).iter().map(|(k, c)| (k * r + i, c.clone())).collect();
                col.sort_by_key(|(k, _)| *k);
                col
            })
            .collect();
        SparseMatrix::from_columns(r * r, columns)
    }

    /// (Y*)_g = (Y_{g⁻¹})* with g acting by ρ(g⁻¹)ᵀ.
    pub fn dual(&self) -> YDModule<R> {
        let g = &self.group;
        YDModule {
            group: g.clone(),
            labels: self.labels.iter().map(|l| format!("{l}*")).collect(),
            degrees: self.degrees.iter().map(|&d| g.inv(d)).collect(),
            action: (0..g.order()).map(|x| self.action[g.inv(x)].transpose()).collect(),
        }
    }

    /// ⟨g ▷ f, g ▷ v⟩ = ⟨f, v⟩ for the evaluation pairing with the dual basis,
    /// for every g.
    pub fn pairing_invariant(&self, dual: &YDModule<R>) -> bool {
        let id = SparseMatrix::identity(self.rank());
        dual.rank() == self.rank()
            && (0..self.group.order()).all(|g| dual.action[g].transpose().mul(&self.action[g]) == id)
    }

    /// Twist by μ: g ▷_χ x = embed^{χ(g,k)}·(g ▷ x) for x of degree k.
    pub fn twist(&self, mu: &ZmCocycle, embed: &R) -> Result<YDModule<R>, YdError> {
        if mu.group().as_ref() != self.group.as_ref() {
            return Err(YdError::GroupMismatch);
        }
        let chi = chi_from_cocycle(mu);
        let powers: Vec<R> = (0..mu.modulus() as u64).map(|e| embed.powu(e)).collect();
        let action = (0..self.group.order())
            .map(|g| {
                let d = (0..self.rank()).map(|i| powers[chi.get(g, self.degrees[i])].clone()).collect();
                self.action[g].mul(&SparseMatrix::diagonal(d))
            })
            .collect();
        YDModule::new(self.group.clone(), self.labels.clone(), self.degrees.clone(), action)
    }

    pub fn map_coefficients<S: Ring>(&self, f: impl Fn(&R) -> S) -> YDModule<S> {
        YDModule {
            group: self.group.clone(),
            labels: self.labels.clone(),
            degrees: self.degrees.clone(),
            action: self.action.iter().map(|m| m.map(&f)).collect(),
        }
    }

    pub fn try_map_coefficients<S: Ring, E>(&self, f: impl Fn(&R) -> Result<S, E>) -> Result<YDModule<S>, E> {
        let action = self.action.iter().map(|m| m.try_map(&f)).collect::<Result<Vec<_>, E>>()?;
        Ok(YDModule { group: self.group.clone(), labels: self.labels.clone(), degrees: self.degrees.clone(), action })
    }

    /// Whether x_i ↦ scales[i]·x_i is a module map onto `other` (same degrees).
    pub fn diagonal_isomorphism(&self, other: &YDModule<R>, scales: &[R]) -> bool {
        if other.degrees != self.degrees || scales.len() != self.rank() {
            return false;
        }
        let s = SparseMatrix::diagonal(scales.to_vec());
        (0..self.group.order()).all(|g| s.mul(&self.action[g]) == other.action[g].mul(&s))
    }

    /// Diagonal matrix of μ on Y ⊗ Y: e_i ⊗ e_j ↦ embed^{μ(deg i, deg j)} e_i ⊗ e_j.
    pub fn cocycle_on_square(&self, mu: &ZmCocycle, embed: &R) -> SparseMatrix<R> {
        let powers: Vec<R> = (0..mu.modulus() as u64).map(|e| embed.powu(e)).collect();
        let d = self
            .degrees
            .iter()
            .flat_map(|&a| self.degrees.iter().map(|&b| powers[mu.get(a, b)].clone()).collect::<Vec<_>>())
            .collect();
        SparseMatrix::diagonal(d)
    }

    pub fn to_json(&self, group_id: &str, ring: &str) -> YdModuleJson
    where
        R: fmt::Display,
    {
        YdModuleJson {
            group_id: group_id.to_string(),
            ring: ring.to_string(),
            basis: self.labels.clone(),
            degrees: self.degrees.iter().map(|&d| self.group.label(d).to_string()).collect(),
            action_matrices: self
                .action
                .iter()
                .map(|m| {
                    (0..m.cols())
                        .flat_map(|j| m.column(j).iter().map(move |(i, c)| (*i, j, c.to_string())))
                        .collect()
                })
                .collect(),
        }
    }
}

/// (Ψ⊗1)(1⊗Ψ)(Ψ⊗1) = (1⊗Ψ)(Ψ⊗1)(1⊗Ψ) on V^{⊗3} for a matrix on V ⊗ V,
/// applied column by column. Returns the first failing basis triple.
pub fn braid_equation_witness<R: Ring>(psi: &SparseMatrix<R>, dim: usize) -> Option<(usize, usize, usize)> {
    let r = dim;
    let apply = |v: &[(usize, R)], first: bool| -> SparseVec<R> {
        let mut out = Vec::new();
        for (x, c) in v {
            let (i, j, k) = (x / (r * r), (x / r) % r, x % r);
            if first {
                for (p, d) in psi.column(i * r + j) {
                    out.push((p * r + k, d.mul(c)));
                }
            } else {
                for (p, d) in psi.column(j * r + k) {
                    out.push((i * r * r + p, d.mul(c)));
                }
            }
        }
        normalize_vec(out)
    };
    (0..r * r * r)
        .into_par_iter()
        .find_first(|&x| {
            let e = vec![(x, R::one())];
            let lhs = apply(&apply(&apply(&e, true), false), true);
            let rhs = apply(&apply(&apply(&e, false), true), false);
            lhs != rhs
        })
        .map(|x| (x / (r * r), (x / r) % r, x % r))
}

pub fn braid_equation_holds<R: Ring>(psi: &SparseMatrix<R>, dim: usize) -> bool {
    braid_equation_witness(psi, dim).is_none()
}

impl YDModule<Rational> {
    /// The adjoint module kG with δ(g) = g ⊗ g and conjugation action.
    pub fn adjoint(group: Arc<FiniteGroup>) -> YDModule<Rational> {
        let n = group.order();
        let action = (0..n)
            .map(|h| SparseMatrix::from_columns(n, (0..n).map(|g| vec![(group.conj(h, g), Rational::one())]).collect()))
            .collect();
        YDModule { labels: group.labels().to_vec(), degrees: (0..n).collect(), action, group }
    }

    /// Scalar extension to Q[C_m] followed by the twist by μ with z itself.
    pub fn extend(&self, mu: &ZmCocycle) -> Result<YDModule<GroupRingScalar>, YdError> {
        let m = mu.modulus() as u32;
        self.map_coefficients(|c| GroupRingScalar::constant(c.clone())).twist(mu, &GroupRingScalar::z(m))
    }
}

impl YDModule<GroupRingScalar> {
    pub fn specialize_rational(&self, m: u32, q: &Rational) -> Result<YDModule<Rational>, YdError> {
        Ok(self.try_map_coefficients(|c| c.specialize_rational(m, q))?)
    }
}

/// A trivially graded module with trivial action.
pub fn trivial_module<R: Ring>(group: Arc<FiniteGroup>, rank: usize) -> YDModule<R> {
    let e = group.identity();
    YDModule {
        labels: (1..=rank).map(|i| format!("v{i}")).collect(),
        degrees: vec![e; rank],
        action: vec![SparseMatrix::identity(rank); group.order()],
        group,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct YdModuleJson {
    pub group_id: String,
    pub ring: String,
    pub basis: Vec<String>,
    pub degrees: Vec<String>,
    /// Per group element, entries (row, col, value).
    pub action_matrices: Vec<Vec<(usize, usize, String)>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RackVariant {
    Q1,
    Qm1,
    Qz,
}

impl fmt::Display for RackVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RackVariant::Q1 => "q1",
            RackVariant::Qm1 => "qm1",
            RackVariant::Qz => "qz",
        })
    }
}

impl FromStr for RackVariant {
    type Err = String;

    fn from_str(s: &str) -> Result<RackVariant, String> {
        match s {
            "q1" => Ok(RackVariant::Q1),
            "qm1" | "q-1" => Ok(RackVariant::Qm1),
            "qz" => Ok(RackVariant::Qz),
            _ => Err(format!("unknown rack cocycle {s:?} (expected q1, qm1 or qz)")),
        }
    }
}

/// A rack cocycle q: S_n × X_n → R^× with q(ρσ,τ) = q(ρ,στσ⁻¹)·q(σ,τ).
/// `values[σ][τ]` over group indices σ and class positions τ.
#[derive(Clone, Debug, PartialEq)]
pub struct RackCocycle<R> {
    group: Arc<FiniteGroup>,
    class: TranspositionClass,
    values: Vec<Vec<R>>,
}

impl<R: Ring> RackCocycle<R> {
    /// Values on the simple transpositions s_k (1-based k), extended along
    /// lex-min reduced words and verified on all triples.
    pub fn from_simple(n: usize, on_simple: impl Fn(usize, (usize, usize)) -> R) -> Result<RackCocycle<R>, YdError> {
        if !(2..=MAX_RACK_DEGREE).contains(&n) {
            return Err(YdError::Degree(n));
        }
        let group = Arc::new(FiniteGroup::symmetric(n));
        let class = TranspositionClass::new(n);
        let simple: Vec<Vec<R>> = (1..n).map(|k| class.pairs().iter().map(|&p| on_simple(k, p)).collect()).collect();
        // Elements sorted by length so σ' is always filled before σ = s_a σ'.
        let mut order: Vec<usize> = (0..group.order()).collect();
        order.sort_by_key(|&g| group.length(g));
        let mut values: Vec<Vec<R>> = vec![Vec::new(); group.order()];
        for g in order {
            let word = group.reduced_word(g);
            values[g] = if word.is_empty() {
                vec![R::one(); class.len()]
            } else {
                let a = word[0];
                let rest = group.mul(group.simple_index(a), g);
                let sigma = group.perm(rest);
                (0..class.len()).map(|t| simple[a - 1][class.conjugate(sigma, t)].mul(&values[rest][t])).collect()
            };
        }
        let q = RackCocycle { group, class, values };
        q.check()?;
        Ok(q)
    }

    /// Values on every σ from a closed formula, then verified.
    pub fn from_fn(n: usize, f: impl Fn(&[usize], (usize, usize)) -> R) -> Result<RackCocycle<R>, YdError> {
        if !(2..=MAX_RACK_DEGREE).contains(&n) {
            return Err(YdError::Degree(n));
        }
        let group = Arc::new(FiniteGroup::symmetric(n));
        let class = TranspositionClass::new(n);
        let values = (0..group.order())
            .map(|g| {
                let images = group.perm(g).images();
                class.pairs().iter().map(|&p| f(&images, p)).collect()
            })
            .collect();
        let q = RackCocycle { group, class, values };
        q.check()?;
        Ok(q)
    }

    /// q₁(σ,(i j)) = 1 if σ(i) < σ(j), else −1, for every σ.
    pub fn q1(n: usize) -> Result<RackCocycle<R>, YdError> {
        RackCocycle::from_fn(n, |s, (i, j)| if s[i] < s[j] { R::one() } else { R::one().neg() })
    }

    /// q₋₁(σ, τ) = −1 on transpositions σ; on all of S_n it is the sign.
    pub fn qm1(n: usize) -> Result<RackCocycle<R>, YdError> {
        RackCocycle::from_simple(n, |_, _| R::one().neg())
    }

    /// q_z(σ,(i j)) = z if σ(i) < σ(j), else −1, on simple transpositions.
    pub fn qz(n: usize, z: &R) -> Result<RackCocycle<R>, YdError> {
        RackCocycle::from_simple(n, |k, (i, j)| {
            let s = |x: usize| if x == k - 1 { k } else if x == k { k - 1 } else { x };
            if s(i) < s(j) {
                z.clone()
            } else {
                R::one().neg()
            }
        })
    }

    pub fn check(&self) -> Result<(), YdError> {
        let g = &self.group;
        let n = g.order();
        let t = self.class.len();
        let bad = (0..n * n).into_par_iter().find_first(|&x| {
            let (rho, sigma) = (x / n, x % n);
            let rs = g.mul(rho, sigma);
            (0..t).any(|tau| {
                let moved = self.class.conjugate(g.perm(sigma), tau);
                self.values[rs][tau] != self.values[rho][moved].mul(&self.values[sigma][tau])
            })
        });
        match bad {
            None => Ok(()),
            Some(x) => {
                let (rho, sigma) = (x / n, x % n);
                let rs = g.mul(rho, sigma);
                let tau = (0..t)
                    .find(|&tau| {
                        let moved = self.class.conjugate(g.perm(sigma), tau);
                        self.values[rs][tau] != self.values[rho][moved].mul(&self.values[sigma][tau])
                    })
                    .expect("witness");
                Err(YdError::RackCocycle(rho, sigma, tau))
            }
        }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn class(&self) -> &TranspositionClass {
        &self.class
    }

    pub fn get(&self, sigma: usize, tau: usize) -> &R {
        &self.values[sigma][tau]
    }

    /// The module k X_n with σ ▷ e_τ = q(σ,τ) e_{στσ⁻¹}.
    pub fn module(&self) -> Result<YDModule<R>, YdError> {
        let g = &self.group;
        let x = &self.class;
        let degrees = x.group_indices(g);
        let action = (0..g.order())
            .map(|s| {
                let sigma = g.perm(s);
                SparseMatrix::from_columns(
                    x.len(),
                    (0..x.len()).map(|t| vec![(x.conjugate(sigma, t), self.values[s][t].clone())]).collect(),
                )
            })
            .collect();
        let labels = (0..x.len()).map(|t| x.label(t)).collect();
        YDModule::new(g.clone(), labels, degrees, action)
    }
}

/// (X_n, q₁) or (X_n, q₋₁) over Q.
pub fn rack_module(n: usize, variant: RackVariant) -> Result<YDModule<Rational>, YdError> {
    match variant {
        RackVariant::Q1 => RackCocycle::q1(n)?.module(),
        RackVariant::Qm1 => RackCocycle::qm1(n)?.module(),
        RackVariant::Qz => Err(YdError::NeedsGroupRing(variant)),
    }
}

/// (RX_n, q_z) over R = Q[C_2].
pub fn rack_module_qz(n: usize) -> Result<YDModule<GroupRingScalar>, YdError> {
    RackCocycle::qz(n, &GroupRingScalar::z(2))?.module()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rack_examples() {
        let x = TranspositionClass::new(3);
        let y = rack_module(3, RackVariant::Q1).unwrap();
        let g = y.group().clone();
        let s12 = g.simple_index(1);
        let col = y.action(s12).column(x.index(0, 2)).to_vec();
        assert_eq!(col, vec![(x.index(1, 2), Rational::one())]);
        let m = rack_module(3, RackVariant::Qm1).unwrap();
        assert_eq!(m.action(s12).column(x.index(0, 2)).to_vec(), vec![(x.index(1, 2), Rational::from_int(-1))]);
        let z = rack_module_qz(3).unwrap();
        assert_eq!(z.action(s12).column(x.index(1, 2)).to_vec(), vec![(x.index(0, 2), GroupRingScalar::z(2))]);
    }

    #[test]
    fn q1_from_simple_matches_formula() {
        for n in 2..=5 {
            let formula = RackCocycle::<Rational>::q1(n).unwrap();
            let simple = RackCocycle::<Rational>::qz(n, &Rational::one()).unwrap();
            assert_eq!(formula, simple);
        }
    }

    #[test]
    fn broken_generator_is_rejected() {
        let g = Arc::new(FiniteGroup::cyclic(2));
        let gen = g.generators()[0];
        let bad = SparseMatrix::from_dense(&[vec![Rational::from_int(2)]]);
        let err = YDModule::from_generators(g.clone(), vec!["v".into()], vec![g.identity()], &[(gen, bad)]).unwrap_err();
        assert!(matches!(err, YdError::NotRepresentation(..)));
    }
}
