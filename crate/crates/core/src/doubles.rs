//! Braided Heisenberg doubles realized on induced Fock modules
//! B(Y)_{≤D} ⊗ kG, the braided Weyl relation, Dunkl elements and the
//! (covering) rational Cherednik relations.
//!
//! Basis vector `b·|G| + h` of the Fock module is (normal word b) ⊗ u_h.
//! L_v multiplies on the left, ρ(g) acts diagonally and
//! D_{e*_b}(m ⊗ u_h) = ∂_b m ⊗ u_{deg b} u_h with
//! ∂_b(e_a m) = δ_{ab} (deg a ▷ m) + e_a ∂_b m.
//! Over k[C_2] everything is computed at z = 1 and z = −1 separately.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cohomology::ZmCocycle;
use crate::groups::{FiniteGroup, TranspositionClass};
use crate::linalg::{normalize_vec, rref, SparseMatrix, SparseVec};
use crate::nichols::{tensor_action, Braiding, NicholsError, NicholsTruncation};
use crate::scalars::{GroupRingScalar, Rational, Ring, ScalarError};
use crate::spin::{cocycle_family_on, compare_with_vendramin, CocycleClass, SpinError, VendraminMatch};
use crate::yd::{rack_module, rack_module_qz, RackVariant, YDModule, YdError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DoubleError {
    #[error(transparent)]
    Nichols(#[from] NicholsError),
    #[error(transparent)]
    Module(#[from] YdError),
    #[error(transparent)]
    Spin(#[from] SpinError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("twisted Fock modules need a C_2-valued cocycle, got modulus {0}")]
    Modulus(usize),
    #[error("z must specialize to 1 or -1")]
    BadPoint,
    #[error("the Fock module needs max degree >= {needed}, got {got}")]
    Degree { needed: usize, got: usize },
    #[error("the derivation does not preserve the relations in degree {0}")]
    NotWellDefined(usize),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

/// The induced module B(Y)_{≤D} ⊗ k_εG at one value ε of z. For an untwisted
/// model ε = 1 and the cocycle is trivial.
#[derive(Clone, Debug)]
pub struct FockModel {
    base: YDModule<Rational>,
    module: YDModule<Rational>,
    cocycle: Option<ZmCocycle>,
    epsilon: Rational,
    truncation: NicholsTruncation<Rational>,
    offsets: Vec<usize>,
    degree_of: Vec<usize>,
    creation_b: Vec<SparseMatrix<Rational>>,
    derivation_b: Vec<SparseMatrix<Rational>>,
}

fn sign_pow(epsilon: &Rational, e: usize) -> Rational {
    if e % 2 == 0 {
        Rational::one()
    } else {
        epsilon.clone()
    }
}

impl FockModel {
    pub fn build(module: &YDModule<Rational>, max_degree: usize) -> Result<FockModel, DoubleError> {
        FockModel::assemble(module.clone(), module.clone(), None, Rational::one(), max_degree)
    }

    /// Creations from the twist Y_ε of `base`, group part k_εG with
    /// u_g u_h = ε^{μ(g,h)} u_{gh}.
    pub fn twisted(
        base: &YDModule<Rational>,
        mu: &ZmCocycle,
        epsilon: &Rational,
        max_degree: usize,
    ) -> Result<FockModel, DoubleError> {
        if mu.modulus() != 2 {
            return Err(DoubleError::Modulus(mu.modulus()));
        }
        if epsilon.mul(epsilon) != Rational::one() {
            return Err(DoubleError::BadPoint);
        }
        let module = base.twist(mu, epsilon)?;
        FockModel::assemble(base.clone(), module, Some(mu.clone()), epsilon.clone(), max_degree)
    }

    fn assemble(
        base: YDModule<Rational>,
        module: YDModule<Rational>,
        cocycle: Option<ZmCocycle>,
        epsilon: Rational,
        max_degree: usize,
    ) -> Result<FockModel, DoubleError> {
        if max_degree < 1 {
            return Err(DoubleError::Degree { needed: 1, got: max_degree });
        }
        let braiding = Braiding::from_module(&module)?;
        let truncation = NicholsTruncation::build(&braiding, max_degree)?;
        let mut offsets = vec![0];
        let mut degree_of = Vec::new();
        for d in 0..=max_degree {
            offsets.push(offsets[d] + truncation.dim(d));
            degree_of.extend(std::iter::repeat_n(d, truncation.dim(d)));
        }
        let mut model = FockModel {
            base,
            module,
            cocycle,
            epsilon,
            truncation,
            offsets,
            degree_of,
            creation_b: Vec::new(),
            derivation_b: Vec::new(),
        };
        let r = model.module.rank();
        model.creation_b = (0..r).map(|a| model.creation_on_b(a)).collect::<Result<_, _>>()?;
        model.derivation_b = (0..r).map(|b| model.derivation_on_b(b)).collect::<Result<_, _>>()?;
        if let Some(d) = model.derivation_defect() {
            return Err(DoubleError::NotWellDefined(d));
        }
        Ok(model)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.module.group()
    }

    /// The module whose elements are created by L.
    pub fn module(&self) -> &YDModule<Rational> {
        &self.module
    }

    /// The untwisted module; annihilators transform by its dual.
    pub fn base(&self) -> &YDModule<Rational> {
        &self.base
    }

    pub fn epsilon(&self) -> &Rational {
        &self.epsilon
    }

    pub fn truncation(&self) -> &NicholsTruncation<Rational> {
        &self.truncation
    }

    pub fn max_degree(&self) -> usize {
        self.truncation.max_degree()
    }

    pub fn dim_b(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    pub fn dim(&self) -> usize {
        self.dim_b() * self.group().order()
    }

    /// Nichols degree of a Fock basis vector.
    pub fn degree_of(&self, i: usize) -> usize {
        self.degree_of[i / self.group().order()]
    }

    pub fn basis_label(&self, i: usize) -> String {
        let order = self.group().order();
        let (b, h) = (i / order, i % order);
        let d = self.degree_of[b];
        let w = self.truncation.normal_words(d)[b - self.offsets[d]];
        format!("{} ⊗ u{}", self.truncation.word_label(d, w, self.module.labels()), self.group().label(h))
    }

    fn lift_b(&self, b: usize) -> (usize, usize) {
        let d = self.degree_of[b];
        (d, self.truncation.normal_words(d)[b - self.offsets[d]])
    }

    fn embed_b(&self, d: usize, coords: &[(usize, Rational)]) -> SparseVec<Rational> {
        coords.iter().map(|(k, c)| (self.offsets[d] + k, c.clone())).collect()
    }

    fn creation_on_b(&self, a: usize) -> Result<SparseMatrix<Rational>, DoubleError> {
        let r = self.module.rank();
        let top = self.max_degree();
        let mut cols = Vec::with_capacity(self.dim_b());
        for b in 0..self.dim_b() {
            let (d, w) = self.lift_b(b);
            if d == top {
                cols.push(Vec::new());
                continue;
            }
            let word = a * r.pow(d as u32) + w;
            let h = self.truncation.reduce(d + 1, &[(word, Rational::one())])?;
            cols.push(self.embed_b(d + 1, &h.coords));
        }
        Ok(SparseMatrix::from_columns(self.dim_b(), cols))
    }

    /// ∂_b on a tensor of degree d, as a tensor of degree d − 1.
    pub fn derivation_tensor(&self, b: usize, d: usize, v: &[(usize, Rational)]) -> SparseVec<Rational> {
        let r = self.module.rank();
        let mut out = Vec::new();
        for (w, c) in v {
            let letters = self.truncation.letters(d, *w);
            for k in 0..d {
                if letters[k] != b {
                    continue;
                }
                let prefix = letters[..k].iter().fold(0, |acc, &a| acc * r + a);
                let suffix = letters[k + 1..].iter().fold(0, |acc, &a| acc * r + a);
                let rest = d - k - 1;
                let moved = tensor_action(&self.module, self.module.degree(b), rest, &[(suffix, c.clone())]);
                let shift = r.pow(rest as u32);
                out.extend(moved.into_iter().map(|(x, e)| (prefix * shift + x, e)));
            }
        }
        normalize_vec(out)
    }

    fn derivation_on_b(&self, b: usize) -> Result<SparseMatrix<Rational>, DoubleError> {
        let mut cols = Vec::with_capacity(self.dim_b());
        for i in 0..self.dim_b() {
            let (d, w) = self.lift_b(i);
            if d == 0 {
                cols.push(Vec::new());
                continue;
            }
            let t = self.derivation_tensor(b, d, &[(w, Rational::one())]);
            let h = self.truncation.reduce(d - 1, &t)?;
            cols.push(self.embed_b(d - 1, &h.coords));
        }
        Ok(SparseMatrix::from_columns(self.dim_b(), cols))
    }

    /// First degree in which some ∂_b sends a relation to a non-relation.
    pub fn derivation_defect(&self) -> Option<usize> {
        let r = self.module.rank();
        for d in 2..=self.max_degree() {
            let sym = self.truncation.symmetrizer(d - 1);
            for k in self.truncation.kernel(d) {
                for b in 0..r {
                    if !sym.reduce_vec(&self.derivation_tensor(b, d, k)).is_empty() {
                        return Some(d);
                    }
                }
            }
        }
        None
    }

    fn group_on_b(&self, g: usize) -> SparseMatrix<Rational> {
        let cols = (0..self.dim_b())
            .map(|i| {
                let (d, w) = self.lift_b(i);
                let t = tensor_action(&self.module, g, d, &[(w, Rational::one())]);
                let h = self.truncation.reduce(d, &t).expect("degree within truncation");
                self.embed_b(d, &h.coords)
            })
            .collect();
        SparseMatrix::from_columns(self.dim_b(), cols)
    }

    /// Left multiplication by u_g on k_εG.
    fn translation(&self, g: usize) -> SparseMatrix<Rational> {
        let group = self.group();
        let cols = (0..group.order())
            .map(|h| {
                let e = self.cocycle.as_ref().map_or(0, |mu| mu.get(g, h));
                vec![(group.mul(g, h), sign_pow(&self.epsilon, e))]
            })
            .collect();
        SparseMatrix::from_columns(group.order(), cols)
    }

    pub fn identity(&self) -> SparseMatrix<Rational> {
        SparseMatrix::identity(self.dim())
    }

    /// L_v for v given in the basis of the creation module.
    pub fn creation(&self, v: &[(usize, Rational)]) -> SparseMatrix<Rational> {
        let mut acc = SparseMatrix::zeros(self.dim_b(), self.dim_b());
        for (a, c) in v {
            acc = acc.add(&self.creation_b[*a].scale(c));
        }
        acc.kron(&SparseMatrix::identity(self.group().order()))
    }

    /// D_f for f given in the dual basis e*_b.
    pub fn annihilation(&self, f: &[(usize, Rational)]) -> SparseMatrix<Rational> {
        let order = self.group().order();
        let mut acc = SparseMatrix::zeros(self.dim(), self.dim());
        for (b, c) in f {
            let op = self.derivation_b[*b].kron(&self.translation(self.module.degree(*b)));
            acc = acc.add(&op.scale(c));
        }
        debug_assert_eq!(acc.rows(), self.dim_b() * order);
        acc
    }

    /// ρ(u_g).
    pub fn group_op(&self, g: usize) -> SparseMatrix<Rational> {
        self.group_on_b(g).kron(&self.translation(g))
    }

    /// ρ(u_g)⁻¹ = ε^{μ(g,g⁻¹)} ρ(u_{g⁻¹}) for a normalized cocycle.
    pub fn group_op_inverse(&self, g: usize) -> SparseMatrix<Rational> {
        let gi = self.group().inv(g);
        let e = self.cocycle.as_ref().map_or(0, |mu| mu.get(g, gi));
        self.group_op(gi).scale(&sign_pow(&self.epsilon, e))
    }

    /// Keep only the columns of Nichols degree ≤ k.
    pub fn restrict(&self, m: &SparseMatrix<Rational>, k: usize) -> SparseMatrix<Rational> {
        m.restrict_columns(|j| self.degree_of(j) <= k)
    }

    /// A basis vector of degree ≤ k on which the two operators differ.
    pub fn disagreement(&self, a: &SparseMatrix<Rational>, b: &SparseMatrix<Rational>, k: usize) -> Option<usize> {
        self.restrict(a, k).first_difference(&self.restrict(b, k))
    }
}

fn unit(i: usize) -> SparseVec<Rational> {
    vec![(i, Rational::one())]
}

fn commutator(a: &SparseMatrix<Rational>, b: &SparseMatrix<Rational>) -> SparseMatrix<Rational> {
    a.mul(b).sub(&b.mul(a))
}

/// Outcome of one operator identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationResult {
    pub name: String,
    pub status: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl RelationResult {
    fn new(name: impl Into<String>, witness: Option<String>) -> RelationResult {
        RelationResult { name: name.into(), status: witness.is_none(), witness }
    }
}

fn first_witness(model: &FockModel, found: Option<(String, usize)>) -> Option<String> {
    found.map(|(what, col)| format!("{what} on {}", model.basis_label(col)))
}

/// [D_{e*_b}, L_{e_a}] = δ_{ab} ρ(u_{deg a}) on inputs of degree ≤ D − 1.
pub fn heisenberg_check(model: &FockModel) -> RelationResult {
    let r = model.module().rank();
    let k = model.max_degree() - 1;
    let zero = SparseMatrix::zeros(model.dim(), model.dim());
    let mut found = None;
    'outer: for a in 0..r {
        let l = model.creation(&unit(a));
        for b in 0..r {
            let lhs = commutator(&model.annihilation(&unit(b)), &l);
            let rhs = if a == b { model.group_op(model.module().degree(a)) } else { zero.clone() };
            if let Some(col) = model.disagreement(&lhs, &rhs, k) {
                found = Some((format!("a={a}, b={b}"), col));
                break 'outer;
            }
        }
    }
    RelationResult::new("[D_f, L_v] = <f,v> rho(deg v)", first_witness(model, found))
}

/// W_b L_a − L_{x ▷ e_a} W_b = δ_{ab} with W_b = ρ(u_{deg b})⁻¹ D_{e*_b} and
/// x = (deg b)⁻¹, on inputs of degree ≤ D − 1.
pub fn weyl_check(model: &FockModel) -> RelationResult {
    let r = model.module().rank();
    let k = model.max_degree() - 1;
    let id = model.identity();
    let zero = SparseMatrix::zeros(model.dim(), model.dim());
    let mut found = None;
    'outer: for b in 0..r {
        let y = model.module().degree(b);
        let x = model.group().inv(y);
        let w = model.group_op_inverse(y).mul(&model.annihilation(&unit(b)));
        let action = model.module().action(x);
        for a in 0..r {
            let moved = model.creation(action.column(a));
            let lhs = w.mul(&model.creation(&unit(a))).sub(&moved.mul(&w));
            let rhs = if a == b { id.clone() } else { zero.clone() };
            if let Some(col) = model.disagreement(&lhs, &rhs, k) {
                found = Some((format!("a={a}, b={b}"), col));
                break 'outer;
            }
        }
    }
    RelationResult::new("W_f L_v - L_{x.v} W_f = <f,v>", first_witness(model, found))
}

/// ρ(u_g) L_v ρ(u_g)⁻¹ = L_{g▷v} and ρ(u_g) D_f ρ(u_g)⁻¹ = D_{g▷f} for the
/// generators g, where f transforms by the dual of the untwisted module.
pub fn covariance_check(model: &FockModel) -> RelationResult {
    let r = model.module().rank();
    let dual = model.base().dual();
    let mut found = None;
    'outer: for g in model.group().generators() {
        let p = model.group_op(g);
        let pi = model.group_op_inverse(g);
        for a in 0..r {
            let lhs = p.mul(&model.creation(&unit(a))).mul(&pi);
            let rhs = model.creation(model.module().action(g).column(a));
            if let Some(col) = lhs.first_difference(&rhs) {
                found = Some((format!("L, g={g}, a={a}"), col));
                break 'outer;
            }
            let lhs = p.mul(&model.annihilation(&unit(a))).mul(&pi);
            let rhs = model.annihilation(dual.action(g).column(a));
            if let Some(col) = lhs.first_difference(&rhs) {
                found = Some((format!("D, g={g}, b={a}"), col));
                break 'outer;
            }
        }
    }
    RelationResult::new("rho(g) L_v rho(g)^-1 = L_{g.v}, rho(g) D_f rho(g)^-1 = D_{g.f}", first_witness(model, found))
}

/// δ̃(Ψ ⊗ id)δ̃⁻¹ = τΨτ ⊗ id on Y ⊗ Y ⊗ kG, where δ̃(u⊗v⊗g) = u ⊗ x▷v ⊗ xyg
/// for u of degree x, v of degree y, and τ is the flip.
pub fn shift_check<R: Ring>(y: &YDModule<R>) -> bool {
    let r = y.rank();
    let group = y.group();
    let order = group.order();
    let size = r * r * order;
    let index = |u: usize, v: usize, g: usize| (u * r + v) * order + g;
    let mut delta = Vec::with_capacity(size);
    let mut delta_inv = Vec::with_capacity(size);
    for u in 0..r {
        let x = y.degree(u);
        let xi = group.inv(x);
        for v in 0..r {
            let yv = y.degree(v);
            for g in 0..order {
                let fwd = y.action(x).column(v).iter().map(|(w, c)| (index(u, *w, group.mul(group.mul(x, yv), g)), c.clone()));
                delta.push(normalize_vec(fwd.collect()));
                let target = group.mul(group.mul(xi, group.inv(yv)), g);
                let back = y.action(xi).column(v).iter().map(|(w, c)| (index(u, *w, target), c.clone()));
                delta_inv.push(normalize_vec(back.collect()));
            }
        }
    }
    let delta = SparseMatrix::from_columns(size, delta);
    let delta_inv = SparseMatrix::from_columns(size, delta_inv);
    if delta.mul(&delta_inv) != SparseMatrix::identity(size) {
        return false;
    }
    let psi = y.braiding();
    let flip = SparseMatrix::from_columns(r * r, (0..r * r).map(|i| vec![(i % r * r + i / r, R::one())]).collect());
    let id = SparseMatrix::identity(order);
    let lhs = delta.mul(&psi.kron(&id)).mul(&delta_inv);
    let rhs = flip.mul(&psi).mul(&flip).kron(&id);
    lhs == rhs
}

/// The Fock module over k[C_2] as its components at z = 1 and z = −1, or a
/// single untwisted component at z = 1.
#[derive(Clone, Debug)]
pub struct FockFamily {
    points: Vec<Rational>,
    models: Vec<FockModel>,
}

/// An operator on a `FockFamily`, one matrix per component.
#[derive(Clone, Debug, PartialEq)]
pub struct Operator {
    comps: Vec<SparseMatrix<Rational>>,
}

impl Operator {
    pub fn components(&self) -> &[SparseMatrix<Rational>] {
        &self.comps
    }

    fn zip(&self, o: &Operator, f: impl Fn(&SparseMatrix<Rational>, &SparseMatrix<Rational>) -> SparseMatrix<Rational>) -> Operator {
        Operator { comps: self.comps.iter().zip(&o.comps).map(|(a, b)| f(a, b)).collect() }
    }

    pub fn mul(&self, o: &Operator) -> Operator {
        self.zip(o, |a, b| a.mul(b))
    }

    pub fn add(&self, o: &Operator) -> Operator {
        self.zip(o, |a, b| a.add(b))
    }

    pub fn sub(&self, o: &Operator) -> Operator {
        self.zip(o, |a, b| a.sub(b))
    }

    pub fn commutator(&self, o: &Operator) -> Operator {
        self.mul(o).sub(&o.mul(self))
    }

    /// Scale component i by s[i].
    pub fn scale(&self, s: &[Rational]) -> Operator {
        Operator { comps: self.comps.iter().zip(s).map(|(a, c)| a.scale(c)).collect() }
    }
}

impl FockFamily {
    pub fn untwisted(module: &YDModule<Rational>, max_degree: usize) -> Result<FockFamily, DoubleError> {
        Ok(FockFamily { points: vec![Rational::one()], models: vec![FockModel::build(module, max_degree)?] })
    }

    pub fn twisted(base: &YDModule<Rational>, mu: &ZmCocycle, max_degree: usize) -> Result<FockFamily, DoubleError> {
        let points = vec![Rational::one(), Rational::from_int(-1)];
        let models = points.iter().map(|p| FockModel::twisted(base, mu, p, max_degree)).collect::<Result<_, _>>()?;
        Ok(FockFamily { points, models })
    }

    pub fn points(&self) -> &[Rational] {
        &self.points
    }

    pub fn components(&self) -> &[FockModel] {
        &self.models
    }

    pub fn max_degree(&self) -> usize {
        self.models[0].max_degree()
    }

    pub fn scalar(&self, s: &GroupRingScalar) -> Result<Vec<Rational>, DoubleError> {
        Ok(self.points.iter().map(|p| s.specialize_rational(2, p)).collect::<Result<_, _>>()?)
    }

    fn split(&self, v: &[(usize, GroupRingScalar)]) -> Result<Vec<SparseVec<Rational>>, DoubleError> {
        self.points
            .iter()
            .map(|p| {
                let c = v.iter().map(|(i, s)| Ok((*i, s.specialize_rational(2, p)?))).collect::<Result<Vec<_>, ScalarError>>()?;
                Ok(normalize_vec(c))
            })
            .collect()
    }

    pub fn identity(&self) -> Operator {
        Operator { comps: self.models.iter().map(|m| m.identity()).collect() }
    }

    pub fn scalar_op(&self, s: &GroupRingScalar) -> Result<Operator, DoubleError> {
        Ok(self.identity().scale(&self.scalar(s)?))
    }

    pub fn creation(&self, v: &[(usize, GroupRingScalar)]) -> Result<Operator, DoubleError> {
        let parts = self.split(v)?;
        Ok(Operator { comps: self.models.iter().zip(&parts).map(|(m, v)| m.creation(v)).collect() })
    }

    pub fn annihilation(&self, f: &[(usize, GroupRingScalar)]) -> Result<Operator, DoubleError> {
        let parts = self.split(f)?;
        Ok(Operator { comps: self.models.iter().zip(&parts).map(|(m, f)| m.annihilation(f)).collect() })
    }

    /// s · ρ(u_g).
    pub fn lift(&self, g: usize, s: &GroupRingScalar) -> Result<Operator, DoubleError> {
        let op = Operator { comps: self.models.iter().map(|m| m.group_op(g)).collect() };
        Ok(op.scale(&self.scalar(s)?))
    }

    /// Where a and b differ on inputs of degree ≤ k, if anywhere.
    pub fn disagreement(&self, a: &Operator, b: &Operator, k: usize) -> Option<String> {
        for ((m, p), (x, y)) in self.models.iter().zip(&self.points).zip(a.comps.iter().zip(&b.comps)) {
            if let Some(col) = m.disagreement(x, y, k) {
                return Some(format!("z={p}: {}", m.basis_label(col)));
            }
        }
        None
    }
}

/// The component of a family at z = point.
pub fn specialize_double<'a>(family: &'a FockFamily, point: &Rational) -> Result<&'a FockModel, DoubleError> {
    family.points.iter().position(|p| p == point).map(|i| &family.models[i]).ok_or(DoubleError::BadPoint)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CherednikParams {
    pub n: usize,
    pub t: Rational,
    pub c: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CherednikReport {
    pub n: usize,
    pub c: String,
    pub cocycle: String,
    pub max_degree: usize,
    pub relations: Vec<RelationResult>,
    pub dependency_rank: usize,
    pub specializations: BTreeMap<String, bool>,
    /// The exchange of t_i with x_i and θ_i without the factor z. Conjugating
    /// θ̃_i by t_i rescales every term by z, so these fail at z = −1.
    pub z_free: Vec<RelationResult>,
}

impl CherednikReport {
    pub fn passed(&self) -> bool {
        self.relations.iter().all(|r| r.status) && self.specializations.values().all(|&b| b)
    }
}

/// ψ with ψ(s_1) = 0 such that e_τ ↦ z^{ψ(τ)} e_τ identifies the twist of
/// (X_n, q₁) by μ with (X_n, q_z).
pub fn rescaling_exponents(mu: &ZmCocycle) -> Result<Vec<u32>, DoubleError> {
    let n = mu.group().perm(0).images().len();
    let r = TranspositionClass::new(n).len();
    let mut psi = match compare_with_vendramin(mu)? {
        VendraminMatch::Exact => vec![0; r],
        VendraminMatch::Coboundary { psi } => psi,
        VendraminMatch::Mismatch { mismatches } => {
            return Err(DoubleError::Unsupported(format!("cocycle does not produce q_z ({mismatches} mismatches)")))
        }
    };
    if psi[0] == 1 {
        psi.iter_mut().for_each(|p| *p ^= 1);
    }
    Ok(psi)
}

/// Coordinates of θ̃_j = −Σ_{i<j} e_(ij) + z Σ_{j<i} e_(ji) in the basis of
/// X_n (0-based j). At z = 1 these are θ_j, at z = −1 the α_j.
pub fn theta_tilde(n: usize, j: usize) -> SparseVec<GroupRingScalar> {
    let x = TranspositionClass::new(n);
    let mut v: Vec<(usize, GroupRingScalar)> = (0..n)
        .filter(|&i| i != j)
        .map(|i| {
            if i < j {
                (x.index(i, j), GroupRingScalar::constant(Rational::from_int(-1)))
            } else {
                (x.index(j, i), GroupRingScalar::z(2))
            }
        })
        .collect();
    v.sort_by_key(|p| p.0);
    v
}

/// θ̃*_j = −Σ_{i<j} e*_(ij) + Σ_{j<i} e*_(ji).
pub fn theta_tilde_dual(n: usize, j: usize) -> SparseVec<GroupRingScalar> {
    let x = TranspositionClass::new(n);
    let mut v: Vec<(usize, GroupRingScalar)> = (0..n)
        .filter(|&i| i != j)
        .map(|i| {
            let (k, s) = if i < j { (x.index(i, j), -1) } else { (x.index(j, i), 1) };
            (k, GroupRingScalar::constant(Rational::from_int(s)))
        })
        .collect();
    v.sort_by_key(|p| p.0);
    v
}

/// Relations of the (covering) rational Cherednik algebra on the Fock module
/// of (X_n, q₁) with x̃_j = L_{θ̃_j}, ỹ_j = −c D_{θ̃*_j}. With the trivial
/// class only z = 1 is modelled and the relations are those of H_{0,c}.
pub fn cherednik_relations_check(
    params: &CherednikParams,
    class: CocycleClass,
    max_degree: usize,
) -> Result<CherednikReport, DoubleError> {
    if !params.t.is_zero() {
        return Err(DoubleError::Unsupported("the Fock model of the double realizes t = 0 only".into()));
    }
    if max_degree < 2 {
        return Err(DoubleError::Degree { needed: 2, got: max_degree });
    }
    let n = params.n;
    let base = rack_module(n, RackVariant::Q1)?;
    let group = base.group().clone();
    let x = TranspositionClass::new(n);
    let (family, psi) = match class {
        CocycleClass::Trivial => (FockFamily::untwisted(&base, max_degree)?, vec![0; x.len()]),
        CocycleClass::Spin => {
            let mu = cocycle_family_on(&group, class)?;
            let psi = rescaling_exponents(&mu)?;
            (FockFamily::twisted(&base, &mu, max_degree)?, psi)
        }
        other => return Err(DoubleError::Unsupported(format!("cocycle class {other}"))),
    };
    let z = GroupRingScalar::z(2);
    let one = GroupRingScalar::one();
    let zero = GroupRingScalar::zero();
    let gidx = x.group_indices(&group);
    let zpow = |e: u32| GroupRingScalar::z_pow(2, e as i64);
    // Rescaled generators f_τ = z^{ψ(τ)} e_τ.
    let rescale = |v: SparseVec<GroupRingScalar>| -> SparseVec<GroupRingScalar> {
        v.into_iter().map(|(k, s)| (k, s.mul(&zpow(psi[k])))).collect()
    };
    let theta: Vec<Operator> = (0..n).map(|j| family.creation(&rescale(theta_tilde(n, j)))).collect::<Result<_, _>>()?;
    let theta_star: Vec<Operator> = (0..n).map(|j| family.annihilation(&theta_tilde_dual(n, j))).collect::<Result<_, _>>()?;
    let minus_c = family.scalar(&GroupRingScalar::constant(params.c.neg()))?;
    let xs = theta.clone();
    let ys: Vec<Operator> = theta_star.iter().map(|d| d.scale(&minus_c)).collect();
    // t_ij = z^{ψ(ij)} u_(ij) for i < j and t_ji = z t_ij.
    let t_pair = |i: usize, j: usize| -> Result<Operator, DoubleError> {
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        let k = x.index(a, b);
        let coeff = if i < j { zpow(psi[k]) } else { zpow(psi[k] + 1) };
        family.lift(gidx[k], &coeff)
    };
    let ts: Vec<Operator> = (0..n - 1).map(|i| t_pair(i, i + 1)).collect::<Result<_, _>>()?;
    let zop = family.scalar_op(&z)?;
    let id = family.identity();
    let zero_op = family.scalar_op(&zero)?;
    let cz = |op: &Operator| op.scale(&family.scalar(&z).unwrap());
    let c_scale = family.scalar(&GroupRingScalar::constant(params.c.clone()))?;
    let d = max_degree;
    let mut relations = Vec::new();

    // (i)
    let mut w = family.disagreement(&zop.mul(&zop), &id, d);
    for op in xs.iter().chain(&ys).chain(&ts) {
        w = w.or_else(|| family.disagreement(&zop.mul(op), &op.mul(&zop), d));
    }
    relations.push(RelationResult::new("(i) z central, z^2 = 1", w));
    // (ii)
    let mut w = None;
    for i in 0..n - 1 {
        w = w.or_else(|| family.disagreement(&ts[i].mul(&ts[i]), &id, d));
        if i + 1 < n - 1 {
            let l = ts[i].mul(&ts[i + 1]).mul(&ts[i]);
            let r = ts[i + 1].mul(&ts[i]).mul(&ts[i + 1]);
            w = w.or_else(|| family.disagreement(&l, &r, d));
        }
        for j in i + 2..n - 1 {
            w = w.or_else(|| family.disagreement(&ts[i].mul(&ts[j]), &cz(&ts[j].mul(&ts[i])), d));
        }
    }
    relations.push(RelationResult::new("(ii) t_i^2 = 1, t_i t_j = z t_j t_i, braid", w));
    // (iii), (iv)
    let mut w3 = None;
    let mut w4 = None;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                w3 = w3.or_else(|| family.disagreement(&xs[i].mul(&xs[j]), &cz(&xs[j].mul(&xs[i])), d - 2));
                w4 = w4.or_else(|| family.disagreement(&ys[i].mul(&ys[j]), &ys[j].mul(&ys[i]), d));
            }
        }
    }
    relations.push(RelationResult::new("(iii) x_i x_j = z x_j x_i", w3));
    relations.push(RelationResult::new("(iv) y_i y_j = y_j y_i", w4));
    // (v), (vi) and theta relations (a), (b)
    let mut w5 = None;
    let mut w6 = None;
    let mut wa = None;
    let mut wb = None;
    let mut printed_x = None;
    let mut printed_theta = None;
    for i in 0..n - 1 {
        let t = &ts[i];
        for j in (0..n).filter(|&j| j != i && j != i + 1) {
            w5 = w5.or_else(|| family.disagreement(&t.mul(&xs[j]), &cz(&xs[j].mul(t)), d - 1));
            w5 = w5.or_else(|| family.disagreement(&t.mul(&ys[j]), &ys[j].mul(t), d));
            wa = wa.or_else(|| family.disagreement(&t.mul(&theta[j]), &cz(&theta[j].mul(t)), d - 1));
            wa = wa.or_else(|| family.disagreement(&t.mul(&theta_star[j]), &theta_star[j].mul(t), d));
        }
        w6 = w6.or_else(|| family.disagreement(&t.mul(&xs[i]), &cz(&xs[i + 1].mul(t)), d - 1));
        printed_x = printed_x.or_else(|| family.disagreement(&t.mul(&xs[i]), &xs[i + 1].mul(t), d - 1));
        printed_theta = printed_theta.or_else(|| family.disagreement(&t.mul(&theta[i]), &theta[i + 1].mul(t), d - 1));
        w6 = w6.or_else(|| family.disagreement(&t.mul(&ys[i]), &ys[i + 1].mul(t), d));
        wb = wb.or_else(|| family.disagreement(&t.mul(&theta[i]), &cz(&theta[i + 1].mul(t)), d - 1));
        wb = wb.or_else(|| family.disagreement(&t.mul(&theta_star[i]), &theta_star[i + 1].mul(t), d));
    }
    relations.push(RelationResult::new("(v) t_i x_j = z x_j t_i, t_i y_j = y_j t_i", w5));
    relations.push(RelationResult::new("(vi) t_i x_i = z x_{i+1} t_i, t_i y_i = y_{i+1} t_i", w6));
    // (vii), (viii) and theta relations (c), (d)
    let mut w7 = None;
    let mut w8 = None;
    let mut wc = None;
    let mut wd = None;
    let neg = family.scalar(&GroupRingScalar::constant(Rational::from_int(-1)))?;
    for i in 0..n {
        let mut sum = zero_op.clone();
        for k in (0..n).filter(|&k| k != i) {
            sum = sum.add(&t_pair(k, i)?);
        }
        for j in 0..n {
            if j == i {
                w8 = w8.or_else(|| family.disagreement(&ys[i].commutator(&xs[i]), &sum.scale(&c_scale).scale(&neg), d - 1));
                wd = wd.or_else(|| family.disagreement(&theta_star[i].commutator(&theta[i]), &sum, d - 1));
            } else {
                let tij = t_pair(i, j)?;
                w7 = w7.or_else(|| family.disagreement(&ys[i].commutator(&xs[j]), &tij.scale(&c_scale), d - 1));
                wc = wc.or_else(|| family.disagreement(&theta_star[i].commutator(&theta[j]), &tij.scale(&neg), d - 1));
            }
        }
    }
    relations.push(RelationResult::new("(vii) y_i x_j - x_j y_i = c t_ij", w7));
    relations.push(RelationResult::new("(viii) y_i x_i - x_i y_i = -c sum_k t_ki", w8));
    relations.push(RelationResult::new("(a) t_i th_j = z th_j t_i, t_i th*_j = th*_j t_i", wa));
    relations.push(RelationResult::new("(b) t_i th_i = z th_{i+1} t_i, t_i th*_i = th*_{i+1} t_i", wb));
    let z_free = vec![
        RelationResult::new("(vi) t_i x_i = x_{i+1} t_i", printed_x),
        RelationResult::new("(b) t_i th_i = th_{i+1} t_i", printed_theta),
    ];
    relations.push(RelationResult::new("(c) th*_i th_j - th_j th*_i = -t_ij", wc));
    relations.push(RelationResult::new("(d) th*_i th_i - th_i th*_i = sum_k t_ki", wd));
    // (1 + z) Σ x̃_j = 0.
    let mut total = zero_op.clone();
    for op in &xs {
        total = total.add(op);
    }
    let one_plus_z = family.scalar(&one.add(&z))?;
    relations.push(RelationResult::new("(1+z) sum_j x_j = 0", family.disagreement(&total.scale(&one_plus_z), &zero_op, d)));

    let dependency = kernel_dependency_check(n)?;
    let mut specializations = BTreeMap::new();
    for (idx, p) in family.points().iter().enumerate() {
        let m = &family.components()[idx];
        let sign = if p.is_one() { 1 } else { -1 };
        let q = Rational::from_int(sign);
        let mut ok = true;
        for i in 0..n {
            for j in i + 1..n {
                let (a, b) = (&xs[i].comps[idx], &xs[j].comps[idx]);
                ok &= m.disagreement(&a.mul(b), &b.mul(a).scale(&q), d - 2).is_none();
            }
        }
        let key = if sign == 1 { "z=1: x commute" } else { "z=-1: x anticommute" };
        specializations.insert(key.to_string(), ok);
        if sign == -1 {
            let mut ok = true;
            for i in 0..n - 1 {
                let t = &ts[i].comps[idx];
                ok &= t.mul(t) == m.identity();
                for j in i + 2..n - 1 {
                    let u = &ts[j].comps[idx];
                    ok &= t.mul(u) == u.mul(t).scale(&q);
                }
            }
            specializations.insert("z=-1: spin group relations".into(), ok);
        }
    }
    specializations.insert("kernel dependency (1+z) sum theta".into(), dependency.passed());
    Ok(CherednikReport {
        n,
        c: params.c.to_string(),
        cocycle: class.to_string(),
        max_degree,
        relations,
        dependency_rank: dependency.component_kernel_dims.iter().sum(),
        specializations,
        z_free,
    })
}

/// R-linear relations among θ̃_1, …, θ̃_n in RX_n.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelDependency {
    pub n: usize,
    /// Dimension of the relation space at z = 1 and at z = −1.
    pub component_kernel_dims: [usize; 2],
    /// (1+z) Σ_j θ̃_j vanishes.
    pub generator_vanishes: bool,
    /// Its image spans every component kernel.
    pub generator_spans: bool,
}

impl KernelDependency {
    pub fn passed(&self) -> bool {
        self.generator_vanishes && self.generator_spans
    }
}

pub fn kernel_dependency_check(n: usize) -> Result<KernelDependency, DoubleError> {
    let r = n * (n - 1) / 2;
    let rows: Vec<SparseVec<GroupRingScalar>> = (0..n).map(|j| theta_tilde(n, j)).collect();
    let mut total = vec![GroupRingScalar::zero(); r];
    let factor = GroupRingScalar::one().add(&GroupRingScalar::z(2));
    for row in &rows {
        for (k, s) in row {
            total[*k] = total[*k].add(&s.mul(&factor));
        }
    }
    let generator_vanishes = total.iter().all(|s| s.is_zero());
    let mut dims = [0; 2];
    let mut generator_spans = true;
    for (slot, point) in [Rational::one(), Rational::from_int(-1)].iter().enumerate() {
        // Columns are the θ̃_j; the kernel holds the relation coefficients.
        let mut m = vec![vec![Rational::zero(); n]; r];
        for (j, row) in rows.iter().enumerate() {
            for (k, s) in row {
                m[*k][j] = s.specialize_rational(2, point)?;
            }
        }
        let kernel = rref(m, n).kernel();
        dims[slot] = kernel.len();
        let image = factor.specialize_rational(2, point)?;
        // The generator's coefficient vector is image·(1,…,1).
        generator_spans &= if image.is_zero() {
            kernel.is_empty()
        } else {
            kernel.len() == 1 && {
                let k = &kernel[0];
                k.iter().all(|c| *c == k[0]) && !k[0].is_zero()
            }
        };
    }
    Ok(KernelDependency { n, component_kernel_dims: dims, generator_vanishes, generator_spans })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DunklFamily {
    /// θ_j in B(X_n, q₁): pairwise commuting.
    Theta,
    /// α_j = −Σ_{i≠j} e_(ij) in B(X_n, q₋₁): pairwise anticommuting.
    Alpha,
    /// θ̃_j in B(RX_n, q_z): pairwise z-commuting.
    ThetaTilde,
}

impl std::fmt::Display for DunklFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            DunklFamily::Theta => "theta",
            DunklFamily::Alpha => "alpha",
            DunklFamily::ThetaTilde => "theta-tilde",
        })
    }
}

impl std::str::FromStr for DunklFamily {
    type Err = String;

    fn from_str(s: &str) -> Result<DunklFamily, String> {
        match s {
            "theta" => Ok(DunklFamily::Theta),
            "alpha" => Ok(DunklFamily::Alpha),
            "theta-tilde" | "theta_tilde" => Ok(DunklFamily::ThetaTilde),
            _ => Err(format!("unknown Dunkl family '{s}' (theta, alpha, theta-tilde)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DunklReport {
    pub family: DunklFamily,
    pub n: usize,
    pub relation: String,
    pub holds: bool,
    pub failures: Vec<(usize, usize)>,
}

/// The Dunkl elements of a family in the basis of X_n, together with the
/// module they live in and the commutation factor q (ab = q ba).
pub fn dunkl_elements(
    family: DunklFamily,
    n: usize,
) -> Result<(YDModule<GroupRingScalar>, Vec<SparseVec<GroupRingScalar>>, GroupRingScalar), DoubleError> {
    let constant = |v: i64| GroupRingScalar::constant(Rational::from_int(v));
    let embed = |y: YDModule<Rational>| y.map_coefficients(|c| GroupRingScalar::constant(c.clone()));
    let x = TranspositionClass::new(n);
    Ok(match family {
        DunklFamily::Theta => {
            let at_one = |s: &GroupRingScalar| GroupRingScalar::constant(s.coeffs_in(2).iter().fold(Rational::zero(), |a, c| a.add(c)));
            let els = (0..n).map(|j| theta_tilde(n, j).iter().map(|(k, s)| (*k, at_one(s))).collect()).collect();
            (embed(rack_module(n, RackVariant::Q1)?), els, constant(1))
        }
        DunklFamily::Alpha => {
            let els = (0..n)
                .map(|j| {
                    let mut v: Vec<_> = (0..n).filter(|&i| i != j).map(|i| (x.index(i.min(j), i.max(j)), constant(-1))).collect();
                    v.sort_by_key(|p| p.0);
                    v
                })
                .collect();
            (embed(rack_module(n, RackVariant::Qm1)?), els, constant(-1))
        }
        DunklFamily::ThetaTilde => {
            (rack_module_qz(n)?, (0..n).map(|j| theta_tilde(n, j)).collect(), GroupRingScalar::z(2))
        }
    })
}

/// Checks a_i a_j = q a_j a_i in degree 2 at z = 1 and z = −1.
pub fn dunkl_commute_check(family: DunklFamily, n: usize) -> Result<DunklReport, DoubleError> {
    let (module, elements, q) = dunkl_elements(family, n)?;
    let mut failures = Vec::new();
    for point in [Rational::one(), Rational::from_int(-1)] {
        let y = module.specialize_rational(2, &point)?;
        let trunc = NicholsTruncation::build(&Braiding::from_module(&y)?, 2)?;
        let qv = q.specialize_rational(2, &point)?;
        let els: Vec<_> = elements
            .iter()
            .map(|v| {
                let c = v.iter().map(|(k, s)| Ok((*k, s.specialize_rational(2, &point)?))).collect::<Result<Vec<_>, ScalarError>>()?;
                Ok(trunc.from_degree1(normalize_vec(c)))
            })
            .collect::<Result<Vec<_>, DoubleError>>()?;
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let ab = trunc.multiply(&els[i], &els[j])?;
                let ba = trunc.multiply(&els[j], &els[i])?;
                let diff = trunc.add(&ab, &trunc.scale(&ba, &qv.neg()));
                if !diff.coords.is_empty() && !failures.contains(&(i, j)) {
                    failures.push((i, j));
                }
            }
        }
    }
    let relation = match family {
        DunklFamily::Theta => "a_i a_j = a_j a_i",
        DunklFamily::Alpha => "a_i a_j = -a_j a_i",
        DunklFamily::ThetaTilde => "a_i a_j = z a_j a_i",
    };
    Ok(DunklReport { family, n, relation: relation.into(), holds: failures.is_empty(), failures })
}

/// A bilinear map β: Y* ⊗ Y → kG; `values[f·v_dim + v]` is β(e*_f ⊗ e_v) as
/// a vector over the group elements.
#[derive(Clone, Debug, PartialEq)]
pub struct Pairing {
    pub f_dim: usize,
    pub v_dim: usize,
    pub group_order: usize,
    pub values: Vec<SparseVec<Rational>>,
}

/// β(e*_a ⊗ e_b) = δ_{ab} deg(b), the degree-one part of the double.
pub fn heisenberg_pairing(y: &YDModule<Rational>) -> Pairing {
    let r = y.rank();
    let values = (0..r * r).map(|i| if i / r == i % r { vec![(y.degree(i % r), Rational::one())] } else { Vec::new() }).collect();
    Pairing { f_dim: r, v_dim: r, group_order: y.group().order(), values }
}

impl Pairing {
    pub fn get(&self, f: usize, v: usize) -> &SparseVec<Rational> {
        &self.values[f * self.v_dim + v]
    }

    /// β on the spans of given vectors: new basis f'_i = fs[i], v'_j = vs[j].
    pub fn restrict(&self, fs: &[SparseVec<Rational>], vs: &[SparseVec<Rational>]) -> Pairing {
        let mut values = Vec::with_capacity(fs.len() * vs.len());
        for f in fs {
            for v in vs {
                let mut acc = Vec::new();
                for (a, c) in f {
                    for (b, e) in v {
                        let s = c.mul(e);
                        acc.extend(self.get(*a, *b).iter().map(|(g, x)| (*g, x.mul(&s))));
                    }
                }
                values.push(normalize_vec(acc));
            }
        }
        Pairing { f_dim: fs.len(), v_dim: vs.len(), group_order: self.group_order, values }
    }

    /// β(g▷f ⊗ g▷v) = g β(f ⊗ v) g⁻¹ for the dual action on f.
    pub fn is_equivariant(&self, y: &YDModule<Rational>) -> bool {
        let group = y.group();
        let dual = y.dual();
        group.generators().into_iter().all(|g| {
            (0..self.f_dim).all(|f| {
                (0..self.v_dim).all(|v| {
                    let mut lhs = Vec::new();
                    for (a, c) in dual.action(g).column(f) {
                        for (b, e) in y.action(g).column(v) {
                            let s = c.mul(e);
                            lhs.extend(self.get(*a, *b).iter().map(|(h, x)| (*h, x.mul(&s))));
                        }
                    }
                    let rhs = normalize_vec(self.get(f, v).iter().map(|(h, x)| (group.conj(g, *h), x.clone())).collect());
                    normalize_vec(lhs) == rhs
                })
            })
        })
    }
}

/// Relations among degree-one generators forced by β.
#[derive(Clone, Debug, PartialEq)]
pub struct Degree1Relations {
    /// {v : β(f ⊗ v) = 0 for all f}.
    pub v_kernel: Vec<Vec<Rational>>,
    /// {f : β(f ⊗ v) = 0 for all v}.
    pub f_kernel: Vec<Vec<Rational>>,
}

pub fn minimal_degree1_relations(beta: &Pairing) -> Degree1Relations {
    let order = beta.group_order;
    let mut on_v = vec![vec![Rational::zero(); beta.v_dim]; beta.f_dim * order];
    let mut on_f = vec![vec![Rational::zero(); beta.f_dim]; beta.v_dim * order];
    for f in 0..beta.f_dim {
        for v in 0..beta.v_dim {
            for (g, c) in beta.get(f, v) {
                on_v[f * order + g][v] = c.clone();
                on_f[v * order + g][f] = c.clone();
            }
        }
    }
    Degree1Relations { v_kernel: rref(on_v, beta.v_dim).kernel(), f_kernel: rref(on_f, beta.f_dim).kernel() }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_module_fock_is_a_weyl_algebra() {
        let g = Arc::new(FiniteGroup::symmetric(2));
        let y = crate::yd::trivial_module::<Rational>(g, 2);
        let m = FockModel::build(&y, 3).unwrap();
        assert_eq!(m.truncation().hilbert(), vec![1, 2, 3, 4]);
        assert!(heisenberg_check(&m).status);
        assert!(weyl_check(&m).status);
        assert!(shift_check(&y));
    }

    #[test]
    fn theta_tilde_coefficients() {
        let th = theta_tilde(3, 1);
        // θ̃_2 = −e_(12) + z e_(23).
        assert_eq!(th.len(), 2);
        assert_eq!(th[0].1, GroupRingScalar::constant(Rational::from_int(-1)));
        assert_eq!(th[1].1, GroupRingScalar::z(2));
    }

    #[test]
    fn dependency_for_small_n() {
        for n in 3..=5 {
            let d = kernel_dependency_check(n).unwrap();
            assert_eq!(d.component_kernel_dims, [1, 0]);
            assert!(d.passed());
        }
    }
}
