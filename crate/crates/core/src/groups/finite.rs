use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use super::{GroupError, Perm};

/// A finite group given by its multiplication table over a canonically
/// ordered element list. Permutation groups also keep their elements.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    labels: Vec<String>,
    table: Vec<u32>,
    identity: usize,
    inverses: Vec<usize>,
    perms: Vec<Perm>,
    perm_index: HashMap<Perm, usize>,
    words: Vec<Vec<usize>>,
}

/// Serialized form of a group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupJson {
    pub order: usize,
    pub element_labels: Vec<String>,
    pub multiplication_table: Vec<Vec<usize>>,
}

// splitmix64, used only to pick deterministic sample triples.
fn splitmix(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Groups up to this order get an exhaustive associativity check.
pub const EXHAUSTIVE_ASSOCIATIVITY_LIMIT: usize = 256;
const ASSOCIATIVITY_SAMPLES: usize = 200_000;

impl FiniteGroup {
    /// Build from labels and a row-major table `table[i][j] = i·j`,
    /// verifying the group axioms.
    pub fn from_table(labels: Vec<String>, table: Vec<Vec<usize>>) -> Result<FiniteGroup, GroupError> {
        let n = labels.len();
        if n == 0 || table.len() != n || table.iter().any(|r| r.len() != n) {
            return Err(GroupError::Axiom("table shape does not match the element count".into()));
        }
        let flat: Vec<u32> = table.iter().flatten().map(|&x| x as u32).collect();
        if flat.iter().any(|&x| x as usize >= n) {
            return Err(GroupError::Axiom("table entry out of range".into()));
        }
        let mut g = FiniteGroup {
            labels,
            table: flat,
            identity: 0,
            inverses: Vec::new(),
            perms: Vec::new(),
            perm_index: HashMap::new(),
            words: Vec::new(),
        };
        g.identity = (0..n)
            .find(|&e| (0..n).all(|x| g.mul(e, x) == x && g.mul(x, e) == x))
            .ok_or_else(|| GroupError::Axiom("no identity element".into()))?;
        let mut inverses = vec![usize::MAX; n];
        for (x, slot) in inverses.iter_mut().enumerate() {
            *slot = (0..n)
                .find(|&y| g.mul(x, y) == g.identity && g.mul(y, x) == g.identity)
                .ok_or_else(|| GroupError::Axiom(format!("element {x} has no inverse")))?;
        }
        g.inverses = inverses;
        g.check_associativity()?;
        Ok(g)
    }

    fn check_associativity(&self) -> Result<(), GroupError> {
        let n = self.order();
        let bad = |a: usize, b: usize, c: usize| self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c));
        if n <= EXHAUSTIVE_ASSOCIATIVITY_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if bad(a, b, c) {
                            return Err(GroupError::Axiom(format!("associativity fails at ({a}, {b}, {c})")));
                        }
                    }
                }
            }
        } else {
            let mut state = n as u64;
            for _ in 0..ASSOCIATIVITY_SAMPLES {
                let a = (splitmix(&mut state) % n as u64) as usize;
                let b = (splitmix(&mut state) % n as u64) as usize;
                let c = (splitmix(&mut state) % n as u64) as usize;
                if bad(a, b, c) {
                    return Err(GroupError::Axiom(format!("associativity fails at ({a}, {b}, {c})")));
                }
            }
        }
        Ok(())
    }

    /// The group generated by the given permutations, elements sorted
    /// lexicographically by one-line notation.
    pub fn from_generators(degree: usize, gens: &[Perm]) -> Result<FiniteGroup, GroupError> {
        for g in gens {
            if g.degree() != degree {
                return Err(GroupError::SizeMismatch(degree, g.degree()));
            }
        }
        let mut seen: BTreeSet<Perm> = BTreeSet::new();
        let mut frontier = vec![Perm::identity(degree)];
        seen.insert(Perm::identity(degree));
        while let Some(p) = frontier.pop() {
            for g in gens {
                let q = p.compose(g);
                if seen.insert(q.clone()) {
                    frontier.push(q);
                }
            }
        }
        Self::from_perms(seen.into_iter().collect())
    }

    /// Build from a list of permutations closed under multiplication; the
    /// list is sorted into canonical order.
    pub fn from_perms(mut perms: Vec<Perm>) -> Result<FiniteGroup, GroupError> {
        perms.sort();
        perms.dedup();
        let index: HashMap<Perm, usize> = perms.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let n = perms.len();
        let mut table = vec![vec![0usize; n]; n];
        for (i, p) in perms.iter().enumerate() {
            for (j, q) in perms.iter().enumerate() {
                table[i][j] = *index
                    .get(&p.compose(q))
                    .ok_or_else(|| GroupError::Axiom("permutation set is not closed".into()))?;
            }
        }
        let labels = perms.iter().map(|p| p.cycle_string()).collect();
        let mut g = Self::from_table(labels, table)?;
        g.words = perms.iter().map(|p| p.reduced_word()).collect();
        g.perms = perms;
        g.perm_index = index;
        Ok(g)
    }

    pub fn symmetric(n: usize) -> FiniteGroup {
        assert!((1..=8).contains(&n), "symmetric group degree out of supported range");
        let gens: Vec<Perm> = (1..n).map(|k| Perm::simple(n, k)).collect();
        Self::from_generators(n, &gens).expect("symmetric group")
    }

    pub fn cyclic(m: usize) -> FiniteGroup {
        let table = (0..m).map(|a| (0..m).map(|b| (a + b) % m).collect()).collect();
        Self::from_table((0..m).map(|a| a.to_string()).collect(), table).expect("cyclic group")
    }

    /// (Z/p)^k with elements as exponent vectors in lexicographic order.
    pub fn elementary_abelian(p: usize, k: usize) -> FiniteGroup {
        let n = p.pow(k as u32);
        let digits = |x: usize| -> Vec<usize> {
            let mut d = vec![0; k];
            let mut y = x;
            for i in (0..k).rev() {
                d[i] = y % p;
                y /= p;
            }
            d
        };
        let encode = |d: &[usize]| d.iter().fold(0, |acc, &x| acc * p + x);
        let table = (0..n)
            .map(|a| {
                let da = digits(a);
                (0..n)
                    .map(|b| {
                        let db = digits(b);
                        let s: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                        encode(&s)
                    })
                    .collect()
            })
            .collect();
        let labels = (0..n)
            .map(|a| format!("({})", digits(a).iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        Self::from_table(labels, table).expect("elementary abelian group")
    }

    /// Parse "S4", "C6", "C2^3", "C2xC3".
    pub fn from_spec(spec: &str) -> Result<FiniteGroup, GroupError> {
        let s = spec.trim();
        let bad = || GroupError::UnknownSpec(spec.to_string());
        if let Some(rest) = s.strip_prefix('S') {
            let n: usize = rest.parse().map_err(|_| bad())?;
            if !(1..=7).contains(&n) {
                return Err(bad());
            }
            return Ok(Self::symmetric(n));
        }
        let factors: Vec<&str> = s.split('x').collect();
        let mut orders = Vec::new();
        for f in factors {
            let f = f.strip_prefix('C').ok_or_else(bad)?;
            let (base, exp) = match f.split_once('^') {
                Some((b, e)) => (b, e.parse::<usize>().map_err(|_| bad())?),
                None => (f, 1),
            };
            let m: usize = base.parse().map_err(|_| bad())?;
            if m == 0 {
                return Err(bad());
            }
            orders.extend(std::iter::repeat_n(m, exp));
        }
        if orders.is_empty() || orders.iter().product::<usize>() > 4096 {
            return Err(bad());
        }
        if orders.len() > 1 && orders.iter().all(|&m| m == orders[0]) && is_prime(orders[0]) {
            return Ok(Self::elementary_abelian(orders[0], orders.len()));
        }
        let mut g = Self::cyclic(orders[0]);
        for &m in &orders[1..] {
            g = g.direct_product(&Self::cyclic(m));
        }
        Ok(g)
    }

    /// Direct product with pairs (a, b) ordered lexicographically.
    pub fn direct_product(&self, other: &FiniteGroup) -> FiniteGroup {
        let (n, k) = (self.order(), other.order());
        let table = (0..n * k)
            .map(|x| (0..n * k).map(|y| self.mul(x / k, y / k) * k + other.mul(x % k, y % k)).collect())
            .collect();
        let labels = (0..n * k).map(|x| format!("({},{})", self.labels[x / k], other.labels[x % k])).collect();
        Self::from_table(labels, table).expect("direct product")
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.labels.len() + b] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    /// a·b·a⁻¹.
    pub fn conj(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(a, b), self.inverses[a])
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_permutation_group(&self) -> bool {
        !self.perms.is_empty()
    }

    pub fn perm(&self, a: usize) -> &Perm {
        &self.perms[a]
    }

    pub fn perms(&self) -> &[Perm] {
        &self.perms
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.perm_index.get(p).copied()
    }

    pub fn degree(&self) -> usize {
        self.perms.first().map_or(0, |p| p.degree())
    }

    /// Cached lex-min reduced word of a permutation element.
    pub fn reduced_word(&self, a: usize) -> &[usize] {
        &self.words[a]
    }

    pub fn length(&self, a: usize) -> usize {
        self.words[a].len()
    }

    /// Index of the Coxeter generator s_k (1-based k).
    pub fn simple_index(&self, k: usize) -> usize {
        self.index_of(&Perm::simple(self.degree(), k)).expect("simple reflection")
    }

    /// Indices of the given element conjugacy class.
    pub fn conjugacy_class(&self, a: usize) -> Vec<usize> {
        let set: BTreeSet<usize> = (0..self.order()).map(|g| self.conj(g, a)).collect();
        set.into_iter().collect()
    }

    /// Elements generating the group; Coxeter generators for permutation
    /// groups of full symmetric type, otherwise a greedy generating set.
    pub fn generators(&self) -> Vec<usize> {
        if self.is_permutation_group() && self.order() == factorial(self.degree()) {
            return (1..self.degree()).map(|k| self.simple_index(k)).collect();
        }
        let mut gens = Vec::new();
        let mut span: BTreeSet<usize> = [self.identity].into_iter().collect();
        for a in 0..self.order() {
            if span.contains(&a) {
                continue;
            }
            gens.push(a);
            span = self.closure(&gens);
        }
        gens
    }

    fn closure(&self, gens: &[usize]) -> BTreeSet<usize> {
        let mut seen: BTreeSet<usize> = [self.identity].into_iter().collect();
        let mut frontier = vec![self.identity];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if seen.insert(y) {
                    frontier.push(y);
                }
            }
        }
        seen
    }

    /// The same abstract group with elements listed in the order `perm`
    /// (new index i holds old element perm[i]).
    pub fn relabel(&self, perm: &[usize]) -> FiniteGroup {
        let n = self.order();
        let mut pos = vec![0; n];
        for (i, &old) in perm.iter().enumerate() {
            pos[old] = i;
        }
        let table = (0..n).map(|i| (0..n).map(|j| pos[self.mul(perm[i], perm[j])]).collect()).collect();
        let labels = perm.iter().map(|&o| self.labels[o].clone()).collect();
        Self::from_table(labels, table).expect("relabelled group")
    }

    pub fn to_json(&self) -> GroupJson {
        let n = self.order();
        GroupJson {
            order: n,
            element_labels: self.labels.clone(),
            multiplication_table: (0..n).map(|a| (0..n).map(|b| self.mul(a, b)).collect()).collect(),
        }
    }

    pub fn from_json(j: &GroupJson) -> Result<FiniteGroup, GroupError> {
        if j.order != j.element_labels.len() {
            return Err(GroupError::Axiom("order does not match label count".into()));
        }
        Self::from_table(j.element_labels.clone(), j.multiplication_table.clone())
    }
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.table == other.table
    }
}

impl Eq for FiniteGroup {}

pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}

fn is_prime(p: usize) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_group_basics() {
        let g = FiniteGroup::symmetric(4);
        assert_eq!(g.order(), 24);
        assert_eq!(g.identity(), 0);
        assert_eq!(g.perm(23).images(), vec![3, 2, 1, 0]);
        assert_eq!(g.length(23), 6);
        assert_eq!(g.generators().len(), 3);
        let t = g.index_of(&Perm::transposition(4, 0, 1)).unwrap();
        assert_eq!(g.conjugacy_class(t).len(), 6);
    }

    #[test]
    fn words_reproduce_elements() {
        for n in 1..=6 {
            let g = FiniteGroup::symmetric(n);
            for a in 0..g.order() {
                assert_eq!(&Perm::from_word(n, g.reduced_word(a)), g.perm(a));
                assert_eq!(g.reduced_word(a).len(), g.perm(a).length());
            }
        }
    }

    #[test]
    fn specs_parse() {
        assert_eq!(FiniteGroup::from_spec("C2^3").unwrap().order(), 8);
        assert_eq!(FiniteGroup::from_spec("C2xC3").unwrap().order(), 6);
        assert!(FiniteGroup::from_spec("C2xC3").unwrap().is_abelian());
        assert!(FiniteGroup::from_spec("Q8").is_err());
        assert_eq!(FiniteGroup::from_spec("S3").unwrap().order(), 6);
    }

    #[test]
    fn broken_table_is_rejected() {
        let table = vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 0]];
        assert!(FiniteGroup::from_table(vec!["a".into(), "b".into(), "c".into()], table).is_err());
    }

    #[test]
    fn json_round_trip() {
        let g = FiniteGroup::symmetric(3);
        let j = g.to_json();
        let h = FiniteGroup::from_json(&j).unwrap();
        assert_eq!(h.to_json(), j);
    }
}
