use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Cyclotomic, Field, Rational, Ring, ScalarError};

/// Element Σ aᵢ zⁱ of the group ring Q[C_m] = Q[z]/(z^m − 1).
///
/// Modulus 1 is used for constants, which mix with any modulus.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupRingScalar {
    modulus: u32,
    coeffs: Vec<Rational>,
}

impl GroupRingScalar {
    pub fn new(modulus: u32, coeffs: Vec<Rational>) -> GroupRingScalar {
        assert!(modulus >= 1, "modulus must be positive");
        let mut c = vec![Rational::zero(); modulus as usize];
        for (i, a) in coeffs.into_iter().enumerate() {
            let k = i % modulus as usize;
            c[k] = c[k].add(&a);
        }
        GroupRingScalar { modulus, coeffs: c }.canonical()
    }

    pub fn constant(q: Rational) -> GroupRingScalar {
        GroupRingScalar { modulus: 1, coeffs: vec![q] }
    }

    /// z^k in Q[C_m].
    pub fn z_pow(modulus: u32, k: i64) -> GroupRingScalar {
        let mut c = vec![Rational::zero(); modulus as usize];
        c[k.rem_euclid(modulus as i64) as usize] = Rational::one();
        GroupRingScalar { modulus, coeffs: c }.canonical()
    }

    pub fn z(modulus: u32) -> GroupRingScalar {
        Self::z_pow(modulus, 1)
    }

    /// Sum of `(coefficient, exponent)` pairs.
    pub fn from_terms(modulus: u32, terms: &[(i64, i64)]) -> GroupRingScalar {
        let mut c = vec![Rational::zero(); modulus as usize];
        for &(a, k) in terms {
            let i = k.rem_euclid(modulus as i64) as usize;
            c[i] = c[i].add(&Rational::from_int(a));
        }
        GroupRingScalar { modulus, coeffs: c }.canonical()
    }

    // Elements supported on z^0 are stored with modulus 1 so that equality
    // does not depend on how a constant was produced.
    fn canonical(self) -> GroupRingScalar {
        if self.modulus > 1 && self.coeffs.iter().skip(1).all(|c| c.is_zero()) {
            GroupRingScalar { modulus: 1, coeffs: vec![self.coeffs[0].clone()] }
        } else {
            self
        }
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// Coefficient vector of length `m` for the given modulus.
    pub fn coeffs_in(&self, m: u32) -> Vec<Rational> {
        self.widen(m).coeffs
    }

    fn widen(&self, m: u32) -> GroupRingScalar {
        if self.modulus == m {
            return self.clone();
        }
        assert!(self.modulus == 1, "mixing group rings of moduli {} and {m}", self.modulus);
        let mut c = vec![Rational::zero(); m as usize];
        c[0] = self.coeffs[0].clone();
        GroupRingScalar { modulus: m, coeffs: c }
    }

    fn common(&self, other: &GroupRingScalar) -> u32 {
        match (self.modulus, other.modulus) {
            (1, m) | (m, 1) => m,
            (a, b) if a == b => a,
            (a, b) => panic!("mixing group rings of moduli {a} and {b}"),
        }
    }

    /// Evaluate at z = q. Requires q^m = 1 for the element's modulus `m`
    /// (pass `m` explicitly so constants specialize consistently).
    pub fn specialize(&self, m: u32, q: &Cyclotomic) -> Result<Cyclotomic, ScalarError> {
        if !q.pow(m as i64)?.is_one() {
            return Err(ScalarError::InvalidRoot);
        }
        let c = self.coeffs_in(m);
        let mut acc = Cyclotomic::zero();
        let mut p = Cyclotomic::one();
        for a in &c {
            if !a.is_zero() {
                acc = acc.add(&p.mul(&Cyclotomic::from_rational(a.clone())));
            }
            p = p.mul(q);
        }
        Ok(acc)
    }

    /// Specialization at a rational root of unity (z = ±1) of Q[C_m].
    pub fn specialize_rational(&self, m: u32, q: &Rational) -> Result<Rational, ScalarError> {
        if q.pow(m) != Rational::one() {
            return Err(ScalarError::InvalidRoot);
        }
        let mut acc = Rational::zero();
        let mut p = Rational::one();
        for a in &self.coeffs_in(m) {
            acc = acc.add(&a.mul(&p));
            p = p.mul(q);
        }
        Ok(acc)
    }

    /// Values at z = ζ_m^k for k = 0..m.
    pub fn idempotent_split(&self, m: u32) -> Vec<Cyclotomic> {
        (0..m)
            .map(|k| self.specialize(m, &Cyclotomic::zeta_pow(m, k as i64)).expect("root of unity"))
            .collect()
    }

    /// Inverse of [`idempotent_split`]: the element whose value at ζ_m^k is
    /// `values[k]`. Fails if the result has non-rational coefficients.
    pub fn recombine(values: &[Cyclotomic]) -> Result<GroupRingScalar, ScalarError> {
        let m = values.len() as u32;
        assert!(m >= 1, "recombine needs at least one component");
        let inv_m = Cyclotomic::from_rational(Rational::new(1, m as i64));
        let mut coeffs = Vec::with_capacity(m as usize);
        for i in 0..m as i64 {
            let mut acc = Cyclotomic::zero();
            for (k, v) in values.iter().enumerate() {
                acc = acc.add(&v.mul(&Cyclotomic::zeta_pow(m, -i * k as i64)));
            }
            let c = acc.mul(&inv_m).to_rational().ok_or(ScalarError::NotRational)?;
            coeffs.push(c);
        }
        Ok(GroupRingScalar { modulus: m, coeffs }.canonical())
    }

    /// Rational components at z = 1 and z = −1 (modulus at most 2).
    pub fn split2(&self) -> [Rational; 2] {
        let c = self.coeffs_in(2);
        [c[0].add(&c[1]), c[0].sub(&c[1])]
    }

    /// a(1+z)/2 + b(1−z)/2: the element with components a at z=1, b at z=−1.
    pub fn recombine2(plus: &Rational, minus: &Rational) -> GroupRingScalar {
        let half = Rational::new(1, 2);
        GroupRingScalar {
            modulus: 2,
            coeffs: vec![plus.add(minus).mul(&half), plus.sub(minus).mul(&half)],
        }
        .canonical()
    }

    pub fn is_unit(&self) -> bool {
        self.idempotent_split(self.modulus).iter().all(|v| !v.is_zero())
    }
}

impl Ring for GroupRingScalar {
    fn zero() -> Self {
        GroupRingScalar::constant(Rational::zero())
    }

    fn one() -> Self {
        GroupRingScalar::constant(Rational::one())
    }

    fn from_i64(v: i64) -> Self {
        GroupRingScalar::constant(Rational::from_int(v))
    }

    fn add(&self, other: &Self) -> Self {
        let m = self.common(other);
        let (a, b) = (self.widen(m), other.widen(m));
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x.add(y)).collect();
        GroupRingScalar { modulus: m, coeffs }.canonical()
    }

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    fn mul(&self, other: &Self) -> Self {
        if self.modulus == 1 || other.modulus == 1 {
            let (c, x) = if self.modulus == 1 { (&self.coeffs[0], other) } else { (&other.coeffs[0], self) };
            let coeffs = x.coeffs.iter().map(|a| a.mul(c)).collect();
            return GroupRingScalar { modulus: x.modulus, coeffs }.canonical();
        }
        let m = self.common(other) as usize;
        let mut out = vec![Rational::zero(); m];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    let k = (i + j) % m;
                    out[k] = out[k].add(&a.mul(b));
                }
            }
        }
        GroupRingScalar { modulus: m as u32, coeffs: out }.canonical()
    }

    fn neg(&self) -> Self {
        GroupRingScalar { modulus: self.modulus, coeffs: self.coeffs.iter().map(|c| c.neg()).collect() }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}

impl GroupRingScalar {
    /// Inverse in Q[C_m]; fails with `NonUnit` when some component vanishes.
    pub fn inv(&self) -> Result<GroupRingScalar, ScalarError> {
        let m = self.modulus;
        let parts = self.idempotent_split(m);
        let inv: Result<Vec<Cyclotomic>, ScalarError> = parts.iter().map(|v| v.inv()).collect();
        Self::recombine(&inv?)
    }
}

impl fmt::Debug for GroupRingScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for GroupRingScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            terms.push(match i {
                0 => format!("{c}"),
                1 => format!("{c}*z"),
                _ => format!("{c}*z^{i}"),
            });
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn half_one_plus_z_is_idempotent() {
        let e = GroupRingScalar::new(2, vec![r(1, 2), r(1, 2)]);
        assert_eq!(e.mul(&e), e);
    }

    #[test]
    fn one_plus_z_is_not_a_unit() {
        let x = GroupRingScalar::from_terms(2, &[(1, 0), (1, 1)]);
        assert_eq!(x.inv(), Err(ScalarError::NonUnit));
        let y = GroupRingScalar::from_terms(2, &[(2, 0), (1, 1)]);
        assert_eq!(y.mul(&y.inv().unwrap()), GroupRingScalar::one());
    }

    #[test]
    fn split_and_recombine() {
        let x = GroupRingScalar::from_terms(2, &[(1, 0), (1, 1)]);
        let parts = x.idempotent_split(2);
        assert_eq!(parts, vec![Cyclotomic::from_i64(2), Cyclotomic::from_i64(0)]);
        assert_eq!(GroupRingScalar::recombine(&parts).unwrap(), x);
        let z = GroupRingScalar::z(2);
        assert_eq!(z.idempotent_split(2), vec![Cyclotomic::from_i64(1), Cyclotomic::from_i64(-1)]);
        assert_eq!(z.split2(), [r(1, 1), r(-1, 1)]);
        assert_eq!(GroupRingScalar::recombine2(&r(1, 1), &r(-1, 1)), z);
    }

    #[test]
    fn specialize_examples() {
        let (a, b) = (r(3, 1), r(5, 7));
        let x = GroupRingScalar::new(2, vec![a.clone(), b.clone()]);
        let at = |q: i64| x.specialize(2, &Cyclotomic::from_i64(q)).unwrap().to_rational().unwrap();
        assert_eq!(at(-1), a.sub(&b));
        assert_eq!(at(1), a.add(&b));
        let y = GroupRingScalar::new(2, vec![r(1, 2), r(-1, 2)]);
        assert!(y.specialize(2, &Cyclotomic::from_i64(-1)).unwrap().is_one());
        assert_eq!(x.specialize(2, &Cyclotomic::zeta(3)), Err(ScalarError::InvalidRoot));
    }

    #[test]
    fn order_three_round_trip() {
        let x = GroupRingScalar::from_terms(3, &[(2, 0), (-1, 1), (5, 2)]);
        let parts = x.idempotent_split(3);
        assert_eq!(GroupRingScalar::recombine(&parts).unwrap(), x);
        let y = x.inv().unwrap();
        assert_eq!(x.mul(&y), GroupRingScalar::one());
    }
}
