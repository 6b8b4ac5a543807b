use super::{FiniteGroup, Perm};

/// The conjugacy class X_n of transpositions (i j), i < j, listed
/// lexicographically. Points are 0-based internally.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranspositionClass {
    n: usize,
    pairs: Vec<(usize, usize)>,
}

impl TranspositionClass {
    pub fn new(n: usize) -> TranspositionClass {
        let pairs = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        TranspositionClass { n, pairs }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn pair(&self, k: usize) -> (usize, usize) {
        self.pairs[k]
    }

    /// Position of (i j) for 0-based points in either order.
    pub fn index(&self, i: usize, j: usize) -> usize {
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        assert!(a != b && b < self.n, "not a transposition of the class");
        // Pairs starting with x < a contribute n−1−x entries each.
        a * (2 * self.n - a - 1) / 2 + (b - a - 1)
    }

    pub fn perm(&self, k: usize) -> Perm {
        let (i, j) = self.pairs[k];
        Perm::transposition(self.n, i, j)
    }

    pub fn index_of_perm(&self, p: &Perm) -> Option<usize> {
        p.as_transposition().map(|(i, j)| self.index(i, j))
    }

    /// Position of σ·(i j)·σ⁻¹ = (σ(i) σ(j)).
    pub fn conjugate(&self, sigma: &Perm, k: usize) -> usize {
        let (i, j) = self.pairs[k];
        self.index(sigma.apply(i), sigma.apply(j))
    }

    /// Group-element indices of the class inside S_n.
    pub fn group_indices(&self, g: &FiniteGroup) -> Vec<usize> {
        (0..self.len()).map(|k| g.index_of(&self.perm(k)).expect("transposition in group")).collect()
    }

    /// Label "(i j)" with 1-based points.
    pub fn label(&self, k: usize) -> String {
        let (i, j) = self.pairs[k];
        format!("({} {})", i + 1, j + 1)
    }
}
