//! An explicit cocycle for the Schur cover class [1,z] of S_n, built from
//! the integer Clifford algebra, and the four-element family [α,β].

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cohomology::{chi_from_cocycle, CohomologyError, ZmCocycle};
use crate::groups::{central_extension, factorial, FiniteGroup, GroupError, TranspositionClass};
use crate::linalg::zmod;

/// Largest degree accepted by [`spin_cocycle`].
pub const MAX_SPIN_DEGREE: usize = 7;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpinError {
    #[error("degree {0} is outside 1..={MAX_SPIN_DEGREE}")]
    Degree(usize),
    #[error("expected a full symmetric group")]
    NotSymmetric,
    #[error("T(g)T(h) is not a multiple of T(gh) at ({0}, {1})")]
    Inconsistent(usize, usize),
    #[error("unknown cocycle class {0:?}; expected one of 11, z1, 1z, zz")]
    UnknownClass(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
}

/// Sign of e_S·e_T: (−1)^{#{(s,t) ∈ S×T : s > t}}.
pub fn monomial_sign(s: u32, t: u32) -> i64 {
    let mut swaps = 0;
    let mut rest = s;
    while rest != 0 {
        let bit = rest.trailing_zeros();
        swaps += (t & ((1u32 << bit) - 1)).count_ones();
        rest &= rest - 1;
    }
    if swaps % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Element of the Clifford algebra on e_1, …, e_n with e_i² = 1, as a map
/// from subsets (bit i−1 for e_i) to integer coefficients.
///
/// Coefficients are i64 with checked arithmetic; for n ≤ 7 the section
/// below never exceeds 2^21 in absolute value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliffordElement {
    n: usize,
    terms: BTreeMap<u32, i64>,
}

impl CliffordElement {
    pub fn zero(n: usize) -> CliffordElement {
        assert!(n <= 31, "too many Clifford generators");
        CliffordElement { n, terms: BTreeMap::new() }
    }

    pub fn scalar(n: usize, c: i64) -> CliffordElement {
        Self::monomial(n, 0, c)
    }

    pub fn one(n: usize) -> CliffordElement {
        Self::scalar(n, 1)
    }

    pub fn monomial(n: usize, subset: u32, c: i64) -> CliffordElement {
        let mut x = Self::zero(n);
        assert!(n == 31 || subset >> n == 0, "subset outside the generator range");
        if c != 0 {
            x.terms.insert(subset, c);
        }
        x
    }

    /// The generator e_i, 1-based.
    pub fn generator(n: usize, i: usize) -> CliffordElement {
        assert!((1..=n).contains(&i), "generator index out of range");
        Self::monomial(n, 1 << (i - 1), 1)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<u32, i64> {
        &self.terms
    }

    pub fn coefficient(&self, subset: u32) -> i64 {
        self.terms.get(&subset).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn accumulate(&mut self, subset: u32, c: i64) {
        let e = self.terms.entry(subset).or_insert(0);
        *e = e.checked_add(c).expect("Clifford coefficient overflow");
        if *e == 0 {
            self.terms.remove(&subset);
        }
    }

    pub fn add(&self, other: &CliffordElement) -> CliffordElement {
        assert_eq!(self.n, other.n, "Clifford algebras of different rank");
        let mut out = self.clone();
        for (&s, &c) in &other.terms {
            out.accumulate(s, c);
        }
        out
    }

    pub fn scale(&self, c: i64) -> CliffordElement {
        let mut out = Self::zero(self.n);
        if c != 0 {
            for (&s, &x) in &self.terms {
                out.terms.insert(s, x.checked_mul(c).expect("Clifford coefficient overflow"));
            }
        }
        out
    }

    pub fn sub(&self, other: &CliffordElement) -> CliffordElement {
        self.add(&other.scale(-1))
    }

    pub fn mul(&self, other: &CliffordElement) -> CliffordElement {
        assert_eq!(self.n, other.n, "Clifford algebras of different rank");
        let mut out = Self::zero(self.n);
        for (&s, &a) in &self.terms {
            for (&t, &b) in &other.terms {
                let c = a.checked_mul(b).expect("Clifford coefficient overflow");
                out.accumulate(s ^ t, monomial_sign(s, t) * c);
            }
        }
        out
    }

    /// Coefficient of e_S in self·other without forming the whole product.
    pub fn product_coefficient(&self, other: &CliffordElement, subset: u32) -> i64 {
        self.terms
            .iter()
            .filter_map(|(&s, &a)| {
                let t = s ^ subset;
                other.terms.get(&t).map(|&b| monomial_sign(s, t) * a * b)
            })
            .sum()
    }

    /// Parity of the subsets in the support, if they all agree.
    pub fn parity(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|s| s.count_ones() % 2);
        let first = it.next()?;
        it.all(|p| p == first).then_some(first)
    }
}

impl fmt::Display for CliffordElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (&s, &c)) in self.terms.iter().enumerate() {
            let sign = if c < 0 { "-" } else if k > 0 { "+" } else { "" };
            let sep = if k > 0 { " " } else { "" };
            let idx: Vec<String> = (0..32).filter(|b| s >> b & 1 == 1).map(|b| (b + 1).to_string()).collect();
            let mono = if idx.is_empty() { String::new() } else { format!("e{{{}}}", idx.join(",")) };
            match (c.abs(), mono.is_empty()) {
                (1, false) => write!(f, "{sep}{sign}{}{mono}", if k > 0 { " " } else { "" })?,
                (a, _) => write!(f, "{sep}{sign}{}{a}{mono}", if k > 0 { " " } else { "" })?,
            }
        }
        Ok(())
    }
}

/// T(σ) = ∏ (e_k − e_{k+1}) along the lex-min reduced word of σ, for every
/// element of S_n. Each factor squares to 2, so T(σ)/2^{ℓ(σ)/2} is a
/// lift of σ to the Pin group.
#[derive(Clone, Debug)]
pub struct SpinSection {
    group: Arc<FiniteGroup>,
    elements: Vec<CliffordElement>,
}

fn check_symmetric(group: &FiniteGroup) -> Result<usize, SpinError> {
    let n = group.degree();
    if !group.is_permutation_group() || group.order() != factorial(n) {
        return Err(SpinError::NotSymmetric);
    }
    if !(1..=MAX_SPIN_DEGREE).contains(&n) {
        return Err(SpinError::Degree(n));
    }
    Ok(n)
}

impl SpinSection {
    pub fn new(group: Arc<FiniteGroup>) -> Result<SpinSection, SpinError> {
        let n = check_symmetric(&group)?;
        let factors: Vec<CliffordElement> = (1..n)
            .map(|k| CliffordElement::generator(n, k).sub(&CliffordElement::generator(n, k + 1)))
            .collect();
        let elements = (0..group.order())
            .map(|g| {
                group
                    .reduced_word(g)
                    .iter()
                    .fold(CliffordElement::one(n), |acc, &k| acc.mul(&factors[k - 1]))
            })
            .collect();
        Ok(SpinSection { group, elements })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn get(&self, g: usize) -> &CliffordElement {
        &self.elements[g]
    }

    /// Sign ε with T(g)T(h) = ε·2^{(ℓ(g)+ℓ(h)−ℓ(gh))/2}·T(gh). With `full`
    /// the whole product is compared; otherwise one coefficient is used.
    fn sign(&self, g: usize, h: usize, full: bool) -> Result<i64, SpinError> {
        let grp = &self.group;
        let gh = grp.mul(g, h);
        let excess = grp.length(g) + grp.length(h) - grp.length(gh);
        if excess % 2 != 0 {
            return Err(SpinError::Inconsistent(g, h));
        }
        let scale = 1i64 << (excess / 2);
        let target = &self.elements[gh];
        let (&lead, &c) = target.terms.iter().next().ok_or(SpinError::Inconsistent(g, h))?;
        let p = self.elements[g].product_coefficient(&self.elements[h], lead);
        let eps = if p == scale * c {
            1
        } else if p == -scale * c {
            -1
        } else {
            return Err(SpinError::Inconsistent(g, h));
        };
        if full && self.elements[g].mul(&self.elements[h]) != target.scale(eps * scale) {
            return Err(SpinError::Inconsistent(g, h));
        }
        Ok(eps)
    }
}

/// The class [1,z] on S_n as a C_2-valued cocycle: μ(g,h) is the sign in
/// T(g)T(h) = ±2^{(ℓ(g)+ℓ(h)−ℓ(gh))/2}·T(gh).
pub fn spin_cocycle(n: usize) -> Result<ZmCocycle, SpinError> {
    if !(1..=MAX_SPIN_DEGREE).contains(&n) {
        return Err(SpinError::Degree(n));
    }
    spin_cocycle_on(&Arc::new(FiniteGroup::symmetric(n)))
}

/// [`spin_cocycle`] on a given copy of S_n (elements in canonical order).
pub fn spin_cocycle_on(group: &Arc<FiniteGroup>) -> Result<ZmCocycle, SpinError> {
    let section = SpinSection::new(group.clone())?;
    let order = group.order();
    // Full products are cheap up to n = 6.
    let full = group.degree() <= 6;
    let rows: Vec<Vec<u32>> = (0..order)
        .into_par_iter()
        .map(|g| {
            (0..order)
                .map(|h| section.sign(g, h, full).map(|eps| u32::from(eps < 0)))
                .collect::<Result<Vec<u32>, SpinError>>()
        })
        .collect::<Result<_, _>>()?;
    Ok(ZmCocycle::from_table(group.clone(), 2, &rows)?)
}

/// The classes [α,β] ∈ H²(S_n, C_2), α = square of a transposition lift,
/// β = commutator of disjoint lifts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CocycleClass {
    /// [1,1]: the trivial cocycle.
    #[serde(rename = "11")]
    Trivial,
    /// [z,1]: z^{(ℓ(g)+ℓ(h)−ℓ(gh))/2}.
    #[serde(rename = "z1")]
    Length,
    /// [1,z]: the spin cocycle.
    #[serde(rename = "1z")]
    Spin,
    /// [z,z]: pointwise product of [z,1] and [1,z].
    #[serde(rename = "zz")]
    LengthSpin,
}

impl CocycleClass {
    pub const ALL: [CocycleClass; 4] =
        [CocycleClass::Trivial, CocycleClass::Length, CocycleClass::Spin, CocycleClass::LengthSpin];

    pub fn from_bits(alpha: bool, beta: bool) -> CocycleClass {
        match (alpha, beta) {
            (false, false) => CocycleClass::Trivial,
            (true, false) => CocycleClass::Length,
            (false, true) => CocycleClass::Spin,
            (true, true) => CocycleClass::LengthSpin,
        }
    }

    /// (α, β) as exponents of z.
    pub fn bits(self) -> (u32, u32) {
        match self {
            CocycleClass::Trivial => (0, 0),
            CocycleClass::Length => (1, 0),
            CocycleClass::Spin => (0, 1),
            CocycleClass::LengthSpin => (1, 1),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CocycleClass::Trivial => "11",
            CocycleClass::Length => "z1",
            CocycleClass::Spin => "1z",
            CocycleClass::LengthSpin => "zz",
        }
    }
}

impl fmt::Display for CocycleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = self.bits();
        let s = |x| if x == 1 { "z" } else { "1" };
        write!(f, "[{},{}]", s(a), s(b))
    }
}

impl FromStr for CocycleClass {
    type Err = SpinError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t: String = s.chars().filter(|c| !matches!(c, '[' | ']' | ',' | ' ')).collect();
        match t.as_str() {
            "11" => Ok(CocycleClass::Trivial),
            "z1" => Ok(CocycleClass::Length),
            "1z" => Ok(CocycleClass::Spin),
            "zz" => Ok(CocycleClass::LengthSpin),
            _ => Err(SpinError::UnknownClass(s.to_string())),
        }
    }
}

/// The length cocycle z^{(ℓ(g)+ℓ(h)−ℓ(gh))/2}; the parity of the excess is
/// checked for every pair.
pub fn length_cocycle(group: &Arc<FiniteGroup>) -> Result<ZmCocycle, SpinError> {
    check_symmetric(group)?;
    let n = group.order();
    let mut rows = vec![vec![0u32; n]; n];
    for (g, row) in rows.iter_mut().enumerate() {
        for (h, x) in row.iter_mut().enumerate() {
            let excess = group.length(g) + group.length(h) - group.length(group.mul(g, h));
            if excess % 2 != 0 {
                return Err(SpinError::Inconsistent(g, h));
            }
            *x = ((excess / 2) % 2) as u32;
        }
    }
    Ok(ZmCocycle::from_table(group.clone(), 2, &rows)?)
}

pub fn cocycle_family(n: usize, class: CocycleClass) -> Result<ZmCocycle, SpinError> {
    if !(1..=MAX_SPIN_DEGREE).contains(&n) {
        return Err(SpinError::Degree(n));
    }
    cocycle_family_on(&Arc::new(FiniteGroup::symmetric(n)), class)
}

pub fn cocycle_family_on(group: &Arc<FiniteGroup>, class: CocycleClass) -> Result<ZmCocycle, SpinError> {
    check_symmetric(group)?;
    Ok(match class {
        CocycleClass::Trivial => ZmCocycle::trivial(group.clone(), 2),
        CocycleClass::Length => length_cocycle(group)?,
        CocycleClass::Spin => spin_cocycle_on(group)?,
        CocycleClass::LengthSpin => length_cocycle(group)?.product(&spin_cocycle_on(group)?)?,
    })
}

/// Invariants of the extension by a C_2-valued cocycle on S_n, read off in
/// the extension group itself.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverInvariants {
    pub order: usize,
    /// Exponent a with (lift of τ)² = z^a, if the same for all transpositions.
    pub transposition_square: Option<u32>,
    /// Exponent b with x·y = z^b·y·x for lifts of disjoint transpositions,
    /// if the same for all such pairs (None also when n < 4).
    pub disjoint_commutator: Option<u32>,
    /// Whether the projection is a homomorphism with central kernel C_2.
    pub projection_ok: bool,
}

impl CoverInvariants {
    pub fn class(&self) -> Option<CocycleClass> {
        Some(CocycleClass::from_bits(self.transposition_square? == 1, self.disjoint_commutator? == 1))
    }
}

fn uniform(values: impl IntoIterator<Item = u32>) -> Option<u32> {
    let mut it = values.into_iter();
    let first = it.next()?;
    it.all(|v| v == first).then_some(first)
}

pub fn cover_invariants(mu: &ZmCocycle) -> Result<CoverInvariants, SpinError> {
    let base = mu.group();
    let n = check_symmetric(base)?;
    let ext = central_extension(mu)?;
    let g = &ext.group;
    let x = TranspositionClass::new(n);
    let lifts: Vec<usize> = x.group_indices(base).into_iter().map(|t| ext.lift(0, t)).collect();
    let exponent_of = |y: usize| -> u32 {
        debug_assert_eq!(ext.project(y), base.identity());
        (y / base.order()) as u32
    };
    let squares = lifts.iter().map(|&t| exponent_of(g.mul(t, t)));
    let transposition_square = uniform(squares);
    let mut commutators = Vec::new();
    for (a, &(i, j)) in x.pairs().iter().enumerate() {
        for (b, &(k, l)) in x.pairs().iter().enumerate() {
            if [i, j].iter().any(|p| *p == k || *p == l) {
                continue;
            }
            let (s, t) = (lifts[a], lifts[b]);
            // s·t·s⁻¹·t⁻¹ is central.
            let c = g.mul(g.mul(s, t), g.mul(g.inv(s), g.inv(t)));
            commutators.push(exponent_of(c));
        }
    }
    Ok(CoverInvariants {
        order: ext.order(),
        transposition_square,
        disjoint_commutator: uniform(commutators),
        projection_ok: ext.check_projection(),
    })
}

/// Outcome of comparing χ_{[1,z]} on pairs of transpositions with the rule
/// χ(σ,(i j)) = z iff σ(i) < σ(j).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "branch", rename_all = "snake_case")]
pub enum VendraminMatch {
    /// The table agrees on the nose.
    Exact,
    /// It agrees after χ(σ,τ) ↦ χ(σ,τ) + ψ(στσ⁻¹) − ψ(τ), i.e. after
    /// replacing μ by μ·dφ for any φ extending ψ.
    Coboundary { psi: Vec<u32> },
    /// Neither; `mismatches` counts the disagreeing pairs.
    Mismatch { mismatches: usize },
}

/// Exponent of the rule: 1 iff σ(i) < σ(j) for τ = (i j), i < j.
pub fn vendramin_rule(x: &TranspositionClass, sigma: usize, tau: usize) -> u32 {
    let (s, (i, j)) = (x.perm(sigma), x.pair(tau));
    u32::from(s.apply(i) < s.apply(j))
}

pub fn compare_with_vendramin(mu: &ZmCocycle) -> Result<VendraminMatch, SpinError> {
    let group = mu.group();
    let n = check_symmetric(group)?;
    if mu.modulus() != 2 {
        return Err(CohomologyError::Mismatch("expected a C_2-valued cocycle".into()).into());
    }
    let chi = chi_from_cocycle(mu);
    let x = TranspositionClass::new(n);
    let idx = x.group_indices(group);
    let r = x.len();
    // Unknowns ψ(τ); one congruence per (σ, τ).
    let mut lhs = Vec::with_capacity(r * r);
    let mut rhs = Vec::with_capacity(r * r);
    let mut mismatches = 0;
    for s in 0..r {
        for t in 0..r {
            let have = chi.get(idx[s], idx[t]) as u32;
            let want = vendramin_rule(&x, s, t);
            if have != want {
                mismatches += 1;
            }
            let conj = x.conjugate(&x.perm(s), t);
            let mut row = vec![0i64; r];
            row[conj] += 1;
            row[t] -= 1;
            lhs.push(row);
            rhs.push(want as i64 - have as i64);
        }
    }
    if mismatches == 0 {
        return Ok(VendraminMatch::Exact);
    }
    Ok(match zmod::solve(&lhs, &rhs, r, 2) {
        Some(psi) => VendraminMatch::Coboundary { psi: psi.into_iter().map(|v| v as u32).collect() },
        None => VendraminMatch::Mismatch { mismatches },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_relations() {
        let e = |i| CliffordElement::generator(3, i);
        assert_eq!(e(1).mul(&e(2)), CliffordElement::monomial(3, 0b011, 1));
        assert_eq!(e(2).mul(&e(1)), CliffordElement::monomial(3, 0b011, -1));
        assert_eq!(e(1).mul(&e(1)), CliffordElement::one(3));
    }

    #[test]
    fn section_factors_square_to_two() {
        let f = CliffordElement::generator(4, 1).sub(&CliffordElement::generator(4, 2));
        assert_eq!(f.mul(&f), CliffordElement::scalar(4, 2));
        let g = CliffordElement::generator(4, 3).sub(&CliffordElement::generator(4, 4));
        assert_eq!(f.mul(&g), g.mul(&f).scale(-1));
    }

    #[test]
    fn section_parity_and_inverse_norm() {
        let s = SpinSection::new(Arc::new(FiniteGroup::symmetric(4))).unwrap();
        let grp = s.group().clone();
        for g in 0..grp.order() {
            let t = s.get(g);
            assert_eq!(t.parity(), Some((grp.length(g) % 2) as u32));
            let prod = t.mul(s.get(grp.inv(g)));
            let norm = 1i64 << grp.length(g);
            assert!(prod == CliffordElement::scalar(4, norm) || prod == CliffordElement::scalar(4, -norm));
        }
    }

    #[test]
    fn class_names_round_trip() {
        for c in CocycleClass::ALL {
            assert_eq!(c.name().parse::<CocycleClass>().unwrap(), c);
        }
        assert_eq!("[1,z]".parse::<CocycleClass>().unwrap(), CocycleClass::Spin);
        assert!("2z".parse::<CocycleClass>().is_err());
    }

    #[test]
    fn display() {
        let x = CliffordElement::generator(3, 1).sub(&CliffordElement::generator(3, 2).scale(2));
        assert_eq!(x.to_string(), "e{1} - 2e{2}");
    }
}
