use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::CohomologyError;
use crate::groups::FiniteGroup;
use crate::linalg::zmod;

/// Which computation produced an H² report.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum H2Method {
    /// Normalized bar complex C¹ → C² → C³.
    Bar,
    /// Edge labels of the Cayley graph modulo translation-invariant loops.
    Cayley,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct H2Report {
    pub modulus: usize,
    pub group_order: usize,
    pub elementary_divisors: Vec<i64>,
    pub method: H2Method,
}

/// Largest group order handled by the bar-complex route by default.
pub const BAR_ROUTE_LIMIT: usize = 24;
/// Hard limit for H² computations.
pub const H2_ORDER_LIMIT: usize = 720;

/// H²(G, C_m) as a list of prime-power elementary divisors.
pub fn h2_structure(g: &FiniteGroup, m: usize) -> Result<H2Report, CohomologyError> {
    if g.order() <= BAR_ROUTE_LIMIT {
        h2_bar(g, m)
    } else {
        h2_cayley(g, m)
    }
}

fn check_sizes(g: &FiniteGroup, m: usize) -> Result<(), CohomologyError> {
    if m < 2 {
        return Err(CohomologyError::Mismatch("coefficient modulus must be at least 2".into()));
    }
    if g.order() > H2_ORDER_LIMIT {
        return Err(CohomologyError::ResourceLimit(format!("group order {} exceeds {H2_ORDER_LIMIT}", g.order())));
    }
    Ok(())
}

/// Z²/B² from the normalized bar complex: unknowns μ(g,h) with g,h ≠ 1.
pub fn h2_bar(g: &FiniteGroup, m: usize) -> Result<H2Report, CohomologyError> {
    check_sizes(g, m)?;
    let n = g.order();
    let e = g.identity();
    let others: Vec<usize> = (0..n).filter(|&x| x != e).collect();
    let mut pos = vec![usize::MAX; n];
    for (i, &x) in others.iter().enumerate() {
        pos[x] = i;
    }
    let k = others.len();
    let nvars = k * k;
    if nvars > 40_000 {
        return Err(CohomologyError::ResourceLimit(format!("bar complex with {nvars} unknowns")));
    }
    let var = |a: usize, b: usize| -> Option<usize> {
        if a == e || b == e {
            None
        } else {
            Some(pos[a] * k + pos[b])
        }
    };
    let mi = m as i64;
    let mut ech = zmod::Echelon::new(mi, nvars);
    let mut row = vec![0i64; nvars];
    for &a in &others {
        for &b in &others {
            for &c in &others {
                row.iter_mut().for_each(|x| *x = 0);
                // (δμ)(a,b,c) = μ(b,c) − μ(ab,c) + μ(a,bc) − μ(a,b)
                for (x, y, s) in [(b, c, 1i64), (g.mul(a, b), c, -1), (a, g.mul(b, c), 1), (a, b, -1)] {
                    if let Some(v) = var(x, y) {
                        row[v] += s;
                    }
                }
                if row.iter().any(|&x| x.rem_euclid(mi) != 0) {
                    ech.insert(&row);
                }
            }
        }
    }
    let constraints = ech.rows();
    let mut boundaries = Vec::with_capacity(k);
    for &x in &others {
        let mut b = vec![0i64; nvars];
        // dδ_x(a,b) = δ_x(a) + δ_x(b) − δ_x(ab)
        for &a in &others {
            for &c in &others {
                let v = var(a, c).unwrap();
                let mut s = 0;
                if a == x {
                    s += 1;
                }
                if c == x {
                    s += 1;
                }
                if g.mul(a, c) == x {
                    s -= 1;
                }
                b[v] = s;
            }
        }
        boundaries.push(b);
    }
    let orders = zmod::homology_orders(&constraints, &boundaries, nvars, mi);
    Ok(H2Report {
        modulus: m,
        group_order: n,
        elementary_divisors: zmod::elementary_divisors(&orders),
        method: H2Method::Bar,
    })
}

/// Cayley-graph route. A normalized cocycle is determined by the phases
/// x(g,s) in T(g)T(s) = z^{x(g,s)}T(gs) for generators s. Edge labellings
/// arising this way are those whose loop holonomies are invariant under
/// left translation; coboundaries are potentials ψ(g) − ψ(gs) together with
/// constant rescalings of each generator.
pub fn h2_cayley(g: &FiniteGroup, m: usize) -> Result<H2Report, CohomologyError> {
    check_sizes(g, m)?;
    let n = g.order();
    let gens = g.generators();
    let ns = gens.len();
    let nvars = n * ns;
    let edge = |x: usize, si: usize| x * ns + si;
    // BFS spanning tree from the identity.
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut tree_edge = vec![false; nvars];
    let mut seen = vec![false; n];
    let mut queue = VecDeque::new();
    seen[g.identity()] = true;
    queue.push_back(g.identity());
    while let Some(x) = queue.pop_front() {
        for (si, &s) in gens.iter().enumerate() {
            let y = g.mul(x, s);
            if !seen[y] {
                seen[y] = true;
                parent[y] = Some((x, si));
                tree_edge[edge(x, si)] = true;
                queue.push_back(y);
            }
        }
    }
    // Tree path from the identity to x, as a signed edge chain.
    let path = |mut x: usize| -> Vec<(usize, i64)> {
        let mut out = Vec::new();
        while let Some((p, si)) = parent[x] {
            out.push((edge(p, si), 1));
            x = p;
        }
        out
    };
    let paths: Vec<Vec<(usize, i64)>> = (0..n).map(path).collect();
    let mi = m as i64;
    let mut ech = zmod::Echelon::new(mi, nvars);
    let mut row = vec![0i64; nvars];
    for x in 0..n {
        for (si, &s) in gens.iter().enumerate() {
            if tree_edge[edge(x, si)] {
                continue;
            }
            // Fundamental cycle: path(x) + (x → xs) − path(xs).
            let mut cycle: Vec<(usize, i64)> = paths[x].clone();
            cycle.push((edge(x, si), 1));
            cycle.extend(paths[g.mul(x, s)].iter().map(|&(e, c)| (e, -c)));
            for &t in &gens {
                row.iter_mut().for_each(|v| *v = 0);
                for &(e, c) in &cycle {
                    let (src, sj) = (e / ns, e % ns);
                    row[edge(g.mul(t, src), sj)] += c;
                    row[e] -= c;
                }
                if row.iter().any(|&v| v.rem_euclid(mi) != 0) {
                    ech.insert(&row);
                }
            }
        }
    }
    let constraints = ech.rows();
    let mut boundaries = Vec::with_capacity(n + ns);
    for h in 0..n {
        if h == g.identity() {
            continue;
        }
        let mut b = vec![0i64; nvars];
        for (si, &s) in gens.iter().enumerate() {
            b[edge(h, si)] += 1;
            b[edge(g.mul(h, g.inv(s)), si)] -= 1;
        }
        boundaries.push(b);
    }
    for si in 0..ns {
        let mut b = vec![0i64; nvars];
        for x in 0..n {
            b[edge(x, si)] = 1;
        }
        boundaries.push(b);
    }
    let orders = zmod::homology_orders(&constraints, &boundaries, nvars, mi);
    Ok(H2Report {
        modulus: m,
        group_order: n,
        elementary_divisors: zmod::elementary_divisors(&orders),
        method: H2Method::Cayley,
    })
}

/// Schur multiplier of an elementary abelian p-group, computed as
/// bicharacters G × G → Z/p modulo the symmetric ones. Returns the
/// elementary divisors (all equal to p).
pub fn schur_multiplier_abelian(g: &FiniteGroup, p: usize) -> Result<Vec<i64>, CohomologyError> {
    if !g.is_abelian() || (0..g.order()).any(|x| x != g.identity() && g.element_order(x) != p) || p < 2 {
        return Err(CohomologyError::NotElementaryAbelian);
    }
    let n = g.order();
    let nvars = n * n;
    let var = |a: usize, b: usize| a * n + b;
    let mut bilinear = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                // β(a+b, c) = β(a,c) + β(b,c) and β(c, a+b) = β(c,a) + β(c,b)
                let mut r = vec![0i64; nvars];
                r[var(g.mul(a, b), c)] += 1;
                r[var(a, c)] -= 1;
                r[var(b, c)] -= 1;
                bilinear.push(r);
                let mut r = vec![0i64; nvars];
                r[var(c, g.mul(a, b))] += 1;
                r[var(c, a)] -= 1;
                r[var(c, b)] -= 1;
                bilinear.push(r);
            }
        }
    }
    let mut symmetric = bilinear.clone();
    for a in 0..n {
        for b in a + 1..n {
            let mut r = vec![0i64; nvars];
            r[var(a, b)] += 1;
            r[var(b, a)] -= 1;
            symmetric.push(r);
        }
    }
    let pi = p as i64;
    let sym_basis = zmod::kernel_generators(&symmetric, nvars, pi);
    let orders = zmod::homology_orders(&bilinear, &sym_basis, nvars, pi);
    Ok(zmod::elementary_divisors(&orders))
}
