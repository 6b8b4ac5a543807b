use std::sync::Arc;

use super::{FiniteGroup, GroupError};
use crate::cohomology::ZmCocycle;

/// The group C_m × G with (z^a, g)(z^b, h) = (z^{a+b+μ(g,h)}, gh).
/// Element (z^a, g) has index a·|G| + g.
#[derive(Clone, Debug)]
pub struct CentralExtension {
    pub group: FiniteGroup,
    pub base: Arc<FiniteGroup>,
    pub modulus: usize,
}

pub fn central_extension(mu: &ZmCocycle) -> Result<CentralExtension, GroupError> {
    if let Err(v) = mu.check() {
        return Err(GroupError::NotACocycle(v.to_string()));
    }
    let base = mu.group().clone();
    let (n, m) = (base.order(), mu.modulus());
    let table = (0..m * n)
        .map(|x| {
            let (a, g) = (x / n, x % n);
            (0..m * n)
                .map(|y| {
                    let (b, h) = (y / n, y % n);
                    let c = (a + b + mu.get(g, h)) % m;
                    c * n + base.mul(g, h)
                })
                .collect()
        })
        .collect();
    let labels = (0..m * n)
        .map(|x| {
            let (a, g) = (x / n, x % n);
            match a {
                0 => base.label(g).to_string(),
                1 => format!("z·{}", base.label(g)),
                _ => format!("z^{a}·{}", base.label(g)),
            }
        })
        .collect();
    let group = FiniteGroup::from_table(labels, table)?;
    Ok(CentralExtension { group, base, modulus: m })
}

impl CentralExtension {
    pub fn lift(&self, a: usize, g: usize) -> usize {
        (a % self.modulus) * self.base.order() + g
    }

    pub fn project(&self, x: usize) -> usize {
        x % self.base.order()
    }

    /// The central generator z = (z, 1).
    pub fn z(&self) -> usize {
        self.lift(1, self.base.identity())
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    /// Projection is a homomorphism whose kernel {(z^a, 1)} is central and
    /// of order m.
    pub fn check_projection(&self) -> bool {
        let g = &self.group;
        let hom = (0..g.order())
            .all(|x| (0..g.order()).all(|y| self.project(g.mul(x, y)) == self.base.mul(self.project(x), self.project(y))));
        let kernel: Vec<usize> = (0..g.order()).filter(|&x| self.project(x) == self.base.identity()).collect();
        let central = kernel.iter().all(|&k| (0..g.order()).all(|x| g.mul(k, x) == g.mul(x, k)));
        hom && central && kernel.len() == self.modulus
    }
}
