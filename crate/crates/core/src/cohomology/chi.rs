use std::sync::Arc;

use super::ZmCocycle;
use crate::groups::FiniteGroup;

/// Exponent table of the 1-cocycle χ(g,k) = μ(gkg⁻¹, g) − μ(g,k) attached
/// to a 2-cocycle μ. It rescales the conjugation action: g ▷_χ x =
/// z^{χ(g,k)} (g ▷ x) for x of degree k.
#[derive(Clone, Debug, PartialEq)]
pub struct ChiTable {
    group: Arc<FiniteGroup>,
    modulus: usize,
    table: Vec<u32>,
}

pub fn chi_from_cocycle(mu: &ZmCocycle) -> ChiTable {
    let g = mu.group();
    let n = g.order();
    let m = mu.modulus();
    let mut table = Vec::with_capacity(n * n);
    for a in 0..n {
        for k in 0..n {
            let v = mu.get(g.conj(a, k), a) + m - mu.get(a, k);
            table.push((v % m) as u32);
        }
    }
    ChiTable { group: g.clone(), modulus: m, table }
}

impl ChiTable {
    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn modulus(&self) -> usize {
        self.modulus
    }

    #[inline]
    pub fn get(&self, g: usize, k: usize) -> usize {
        self.table[g * self.group.order() + k] as usize
    }

    /// First (g, h, k) violating χ(gh,k) = χ(g, hkh⁻¹) + χ(h,k).
    pub fn check_z1(&self) -> Result<(), (usize, usize, usize)> {
        let g = &self.group;
        let n = g.order();
        for a in 0..n {
            for b in 0..n {
                let ab = g.mul(a, b);
                for k in 0..n {
                    let lhs = self.get(ab, k);
                    let rhs = (self.get(a, g.conj(b, k)) + self.get(b, k)) % self.modulus;
                    if lhs != rhs {
                        return Err((a, b, k));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_trivial(&self) -> bool {
        self.table.iter().all(|&v| v == 0)
    }
}
