use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::CohomologyError;
use crate::groups::FiniteGroup;
use crate::linalg::zmod;

/// Normalized 2-cocycle G × G → C_m stored as exponents: the value at
/// (g, h) is z^table[g][h].
#[derive(Clone, Debug)]
pub struct ZmCocycle {
    group: Arc<FiniteGroup>,
    modulus: usize,
    table: Vec<u32>,
}

/// 1-cochain G → C_m as exponents, zero at the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneCochain {
    group: Arc<FiniteGroup>,
    modulus: usize,
    values: Vec<u32>,
}

/// First failure found by [`ZmCocycle::check`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CocycleViolation {
    /// μ(g,h) + μ(gh,k) ≠ μ(g,hk) + μ(h,k).
    Identity { g: usize, h: usize, k: usize },
    /// μ(1,g) or μ(g,1) is nonzero.
    Normalization { g: usize },
}

impl fmt::Display for CocycleViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CocycleViolation::Identity { g, h, k } => write!(f, "cocycle identity fails at ({g}, {h}, {k})"),
            CocycleViolation::Normalization { g } => write!(f, "not normalized at {g}"),
        }
    }
}

/// JSON form {m, group_id, exponents}.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CocycleJson {
    pub m: usize,
    pub group_id: String,
    pub exponents: Vec<Vec<u32>>,
}

impl ZmCocycle {
    pub fn trivial(group: Arc<FiniteGroup>, modulus: usize) -> ZmCocycle {
        let n = group.order();
        ZmCocycle { group, modulus, table: vec![0; n * n] }
    }

    pub fn from_fn(group: Arc<FiniteGroup>, modulus: usize, f: impl Fn(usize, usize) -> i64) -> ZmCocycle {
        assert!(modulus >= 1, "modulus must be positive");
        let n = group.order();
        let mut table = Vec::with_capacity(n * n);
        for g in 0..n {
            for h in 0..n {
                table.push(f(g, h).rem_euclid(modulus as i64) as u32);
            }
        }
        ZmCocycle { group, modulus, table }
    }

    /// From a full exponent table; the cocycle identity is not checked here.
    pub fn from_table(group: Arc<FiniteGroup>, modulus: usize, rows: &[Vec<u32>]) -> Result<ZmCocycle, CohomologyError> {
        let n = group.order();
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(CohomologyError::Shape(format!("expected a {n}×{n} exponent table")));
        }
        Ok(Self::from_fn(group, modulus, |g, h| rows[g][h] as i64))
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn modulus(&self) -> usize {
        self.modulus
    }

    #[inline]
    pub fn get(&self, g: usize, h: usize) -> usize {
        self.table[g * self.group.order() + h] as usize
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        self.table.chunks(self.group.order()).map(|r| r.to_vec()).collect()
    }

    /// Copy with one entry replaced (used to build perturbed tables).
    pub fn with_entry(&self, g: usize, h: usize, exponent: usize) -> ZmCocycle {
        let mut c = self.clone();
        let n = self.group.order();
        c.table[g * n + h] = (exponent % self.modulus) as u32;
        c
    }

    /// Exhaustive check over all triples, scanning lexicographically.
    pub fn check(&self) -> Result<(), CocycleViolation> {
        let g = &self.group;
        let n = g.order();
        let m = self.modulus;
        let e = g.identity();
        if let Some(x) = (0..n).find(|&x| self.get(e, x) != 0 || self.get(x, e) != 0) {
            return Err(CocycleViolation::Normalization { g: x });
        }
        let found = (0..n).into_par_iter().find_first(|&a| {
            (0..n).any(|b| {
                let ab = g.mul(a, b);
                let left0 = self.get(a, b);
                (0..n).any(|c| {
                    let left = (left0 + self.get(ab, c)) % m;
                    let right = (self.get(a, g.mul(b, c)) + self.get(b, c)) % m;
                    left != right
                })
            })
        });
        if let Some(a) = found {
            for b in 0..n {
                for c in 0..n {
                    let left = (self.get(a, b) + self.get(g.mul(a, b), c)) % m;
                    let right = (self.get(a, g.mul(b, c)) + self.get(b, c)) % m;
                    if left != right {
                        return Err(CocycleViolation::Identity { g: a, h: b, k: c });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_cocycle(&self) -> bool {
        self.check().is_ok()
    }

    fn same_domain(&self, other: &ZmCocycle) -> Result<(), CohomologyError> {
        if !Arc::ptr_eq(&self.group, &other.group) && self.group != other.group {
            return Err(CohomologyError::Mismatch("cocycles live on different groups".into()));
        }
        if self.modulus != other.modulus {
            return Err(CohomologyError::Mismatch(format!(
                "moduli differ ({} and {})",
                self.modulus, other.modulus
            )));
        }
        Ok(())
    }

    /// Pointwise product μ·ν (sum of exponents).
    pub fn product(&self, other: &ZmCocycle) -> Result<ZmCocycle, CohomologyError> {
        self.same_domain(other)?;
        let m = self.modulus as u32;
        let table = self.table.iter().zip(&other.table).map(|(a, b)| (a + b) % m).collect();
        Ok(ZmCocycle { group: self.group.clone(), modulus: self.modulus, table })
    }

    /// Pointwise inverse μ⁻¹.
    pub fn inverse(&self) -> ZmCocycle {
        let m = self.modulus as u32;
        let table = self.table.iter().map(|a| (m - a) % m).collect();
        ZmCocycle { group: self.group.clone(), modulus: self.modulus, table }
    }

    /// Push forward along C_m → C_{m'} sending z to z^{m'/m}.
    pub fn embed(&self, new_modulus: usize) -> Result<ZmCocycle, CohomologyError> {
        if new_modulus % self.modulus != 0 {
            return Err(CohomologyError::Mismatch(format!(
                "{} does not divide {new_modulus}",
                self.modulus
            )));
        }
        let k = (new_modulus / self.modulus) as u32;
        let table = self.table.iter().map(|a| a * k).collect();
        Ok(ZmCocycle { group: self.group.clone(), modulus: new_modulus, table })
    }

    /// The same cocycle on a relabelled copy of the group
    /// (new index i is old element perm[i]).
    pub fn relabel(&self, relabelled: Arc<FiniteGroup>, perm: &[usize]) -> ZmCocycle {
        Self::from_fn(relabelled, self.modulus, |a, b| self.get(perm[a], perm[b]) as i64)
    }

    /// Cocycle twisted by a coboundary: μ·dφ.
    pub fn times_coboundary(&self, phi: &OneCochain) -> ZmCocycle {
        self.product(&phi.coboundary()).expect("same domain")
    }

    pub fn to_json(&self, group_id: &str) -> CocycleJson {
        CocycleJson { m: self.modulus, group_id: group_id.to_string(), exponents: self.rows() }
    }

    /// Witness φ with ν = μ·dφ, if the two cocycles are cohomologous.
    ///
    /// Solved over Z/m with unknowns φ(g), g ≠ 1, one congruence per pair.
    pub fn cohomologous(&self, nu: &ZmCocycle) -> Result<Option<OneCochain>, CohomologyError> {
        self.same_domain(nu)?;
        let g = &self.group;
        let (n, m) = (g.order(), self.modulus);
        let e = g.identity();
        if m == 1 {
            return Ok(Some(OneCochain::zero(self.group.clone(), 1)));
        }
        // Unknown slot for each non-identity element.
        let slot: Vec<Option<usize>> = {
            let mut k = 0;
            (0..n)
                .map(|x| {
                    if x == e {
                        None
                    } else {
                        k += 1;
                        Some(k - 1)
                    }
                })
                .collect()
        };
        let nvars = n - 1;
        let mut ech = zmod::Echelon::new(m as i64, nvars + 1);
        let mut row = vec![0i64; nvars + 1];
        for a in 0..n {
            for b in 0..n {
                if a == e || b == e {
                    continue;
                }
                row.iter_mut().for_each(|x| *x = 0);
                // dφ(a,b) = φ(a) + φ(b) − φ(ab)
                for (x, c) in [(a, 1i64), (b, 1), (g.mul(a, b), -1)] {
                    if let Some(s) = slot[x] {
                        row[s] += c;
                    }
                }
                row[nvars] = nu.get(a, b) as i64 - self.get(a, b) as i64;
                ech.insert(&row);
            }
        }
        let rows = ech.rows();
        let lhs: Vec<Vec<i64>> = rows.iter().map(|r| r[..nvars].to_vec()).collect();
        let rhs: Vec<i64> = rows.iter().map(|r| r[nvars]).collect();
        let Some(sol) = zmod::solve(&lhs, &rhs, nvars, m as i64) else {
            return Ok(None);
        };
        let mut values = vec![0u32; n];
        for x in 0..n {
            if let Some(s) = slot[x] {
                values[x] = sol[s] as u32;
            }
        }
        let phi = OneCochain { group: self.group.clone(), modulus: m, values };
        debug_assert!(self.times_coboundary(&phi).table == nu.table);
        Ok(Some(phi))
    }
}

impl PartialEq for ZmCocycle {
    fn eq(&self, other: &Self) -> bool {
        self.modulus == other.modulus && self.table == other.table && self.group.order() == other.group.order()
    }
}

impl OneCochain {
    pub fn zero(group: Arc<FiniteGroup>, modulus: usize) -> OneCochain {
        let n = group.order();
        OneCochain { group, modulus, values: vec![0; n] }
    }

    /// Values are reduced mod m; the value at the identity is forced to 0.
    pub fn from_fn(group: Arc<FiniteGroup>, modulus: usize, f: impl Fn(usize) -> i64) -> OneCochain {
        let e = group.identity();
        let values =
            (0..group.order()).map(|g| if g == e { 0 } else { f(g).rem_euclid(modulus as i64) as u32 }).collect();
        OneCochain { group, modulus, values }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn modulus(&self) -> usize {
        self.modulus
    }

    pub fn get(&self, g: usize) -> usize {
        self.values[g] as usize
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    /// dφ(g,h) = φ(h) − φ(gh) + φ(g).
    pub fn coboundary(&self) -> ZmCocycle {
        let g = &self.group;
        ZmCocycle::from_fn(self.group.clone(), self.modulus, |a, b| {
            self.values[b] as i64 - self.values[g.mul(a, b)] as i64 + self.values[a] as i64
        })
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }
}
