use std::fmt;

use serde::{Deserialize, Serialize};

use super::GroupError;

/// Permutation of {0, …, n−1} in one-line notation: `images[i]` is the image
/// of `i`. Products compose right to left: (p·q)(i) = p(q(i)).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Perm {
    images: Vec<u8>,
}

impl Perm {
    pub fn new(images: Vec<usize>) -> Result<Perm, GroupError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(GroupError::NotAPermutation(images.clone()));
            }
            seen[x] = true;
        }
        Ok(Perm { images: images.into_iter().map(|x| x as u8).collect() })
    }

    pub fn identity(n: usize) -> Perm {
        Perm { images: (0..n as u8).collect() }
    }

    /// The transposition exchanging the 0-based points `i` and `j`.
    pub fn transposition(n: usize, i: usize, j: usize) -> Perm {
        let mut p = Self::identity(n);
        p.images.swap(i, j);
        p
    }

    /// The Coxeter generator s_k = (k k+1) in 1-based notation, k = 1..n−1.
    pub fn simple(n: usize, k: usize) -> Perm {
        assert!(k >= 1 && k < n, "simple reflection index out of range");
        Self::transposition(n, k - 1, k)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize).collect()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    pub fn mul(&self, other: &Perm) -> Result<Perm, GroupError> {
        if self.degree() != other.degree() {
            return Err(GroupError::SizeMismatch(self.degree(), other.degree()));
        }
        Ok(self.compose(other))
    }

    /// Product without the size check (callers guarantee equal degree).
    pub(crate) fn compose(&self, other: &Perm) -> Perm {
        Perm { images: other.images.iter().map(|&x| self.images[x as usize]).collect() }
    }

    pub fn inv(&self) -> Perm {
        let mut out = vec![0u8; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            out[x as usize] = i as u8;
        }
        Perm { images: out }
    }

    /// p·q·p⁻¹.
    pub fn conj(&self, q: &Perm) -> Result<Perm, GroupError> {
        Ok(self.mul(q)?.compose(&self.inv()))
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let n = self.images.len();
        let mut count = 0;
        for i in 0..n {
            for j in i + 1..n {
                if self.images[i] > self.images[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// Lexicographically smallest reduced word [k₁, …, k_ℓ] (1-based
    /// generator indices) with p = s_{k₁}·…·s_{k_ℓ}.
    ///
    /// A reduced word may start with s_k exactly when k is a left descent,
    /// so the greedy choice of the smallest descent gives the lex-min word.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut p = self.clone();
        let mut word = Vec::with_capacity(p.length());
        loop {
            let pos = p.inv();
            // s_k·p swaps the values k−1 and k; it is shorter exactly when
            // value k sits to the left of value k−1.
            let Some(k) = (1..p.degree()).find(|&k| pos.images[k] < pos.images[k - 1]) else {
                break;
            };
            word.push(k);
            p = Perm::simple(p.degree(), k).compose(&p);
        }
        word
    }

    /// Product s_{k₁}·…·s_{k_ℓ} in S_n.
    pub fn from_word(n: usize, word: &[usize]) -> Perm {
        word.iter().fold(Perm::identity(n), |acc, &k| acc.compose(&Perm::simple(n, k)))
    }

    /// If this is a transposition, its 0-based pair (i, j), i < j.
    pub fn as_transposition(&self) -> Option<(usize, usize)> {
        let moved: Vec<usize> = (0..self.degree()).filter(|&i| self.apply(i) != i).collect();
        match moved[..] {
            [i, j] => Some((i, j)),
            _ => None,
        }
    }

    /// Cycle notation with 1-based points, e.g. "(1 3)(2 4)"; "()" for the
    /// identity.
    pub fn cycle_string(&self) -> String {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = String::new();
        for i in 0..n {
            if seen[i] || self.apply(i) == i {
                continue;
            }
            let mut cycle = Vec::new();
            let mut j = i;
            while !seen[j] {
                seen[j] = true;
                cycle.push((j + 1).to_string());
                j = self.apply(j);
            }
            out.push('(');
            out.push_str(&cycle.join(" "));
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.images)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.cycle_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Perm {
        Perm::new(v.to_vec()).unwrap()
    }

    #[test]
    fn basic_operations() {
        let s1 = Perm::simple(3, 1);
        let s2 = Perm::simple(3, 2);
        assert_eq!(s1.conj(&s2).unwrap(), Perm::transposition(3, 0, 2));
        assert!(s1.mul(&s1).unwrap().is_identity());
        assert_eq!(p(&[1, 2, 0]).inv(), p(&[2, 0, 1]));
        assert!(Perm::identity(3).mul(&Perm::identity(4)).is_err());
        assert!(Perm::new(vec![0, 0, 1]).is_err());
    }

    #[test]
    fn lengths() {
        assert_eq!(Perm::identity(5).length(), 0);
        assert_eq!(p(&[3, 2, 1, 0]).length(), 6);
        assert_eq!(p(&[2, 1, 0]).length(), 3);
    }

    #[test]
    fn reduced_words() {
        assert_eq!(Perm::identity(4).reduced_word(), Vec::<usize>::new());
        assert_eq!(Perm::simple(3, 2).reduced_word(), vec![2]);
        assert_eq!(p(&[2, 1, 0]).reduced_word(), vec![1, 2, 1]);
        assert_eq!(Perm::from_word(3, &[1, 2, 1]), p(&[2, 1, 0]));
    }

    #[test]
    fn cycle_strings() {
        assert_eq!(p(&[1, 0, 3, 2]).cycle_string(), "(1 2)(3 4)");
        assert_eq!(Perm::identity(2).to_string(), "()");
    }
}
