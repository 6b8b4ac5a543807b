use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use super::{Field, Rational, Ring, ScalarError};

/// Element of the cyclotomic field Q(ζ_m), stored as a polynomial in ζ_m of
/// degree below φ(m), reduced modulo the m-th cyclotomic polynomial.
///
/// Elements of different orders can be mixed freely; the result lives in the
/// field of the least common multiple of the orders.
#[derive(Clone, Serialize, Deserialize)]
pub struct Cyclotomic {
    order: u32,
    coeffs: Vec<Rational>,
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u32, b: u32) -> u32 {
    a / gcd(a, b) * b
}

/// Integer coefficients of Φ_m, lowest degree first.
pub fn cyclotomic_polynomial(m: u32) -> Arc<Vec<i64>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&m) {
        return p.clone();
    }
    assert!(m >= 1, "cyclotomic order must be positive");
    // x^m - 1 divided by every Φ_d with d a proper divisor of m.
    let mut num = vec![0i64; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    for d in 1..m {
        if m % d == 0 {
            let phi = cyclotomic_polynomial(d);
            num = exact_divide_monic(&num, &phi);
        }
    }
    let p = Arc::new(num);
    cache.lock().unwrap().insert(m, p.clone());
    p
}

fn exact_divide_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![0i64; num.len() - dn];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dn];
        quot[i] = c;
        for (j, &b) in den.iter().enumerate() {
            rem[i + j] -= c * b;
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    quot
}

pub fn euler_phi(m: u32) -> usize {
    cyclotomic_polynomial(m).len() - 1
}

fn reduce(mut poly: Vec<Rational>, m: u32) -> Vec<Rational> {
    let phi = cyclotomic_polynomial(m);
    let d = phi.len() - 1;
    for i in (d..poly.len()).rev() {
        let c = poly[i].clone();
        if c.is_zero() {
            continue;
        }
        for (j, &b) in phi.iter().enumerate() {
            if b != 0 {
                let t = c.mul(&Rational::from_int(b));
                poly[i - d + j] = poly[i - d + j].sub(&t);
            }
        }
    }
    poly.resize(d, Rational::zero());
    poly
}

fn poly_trim(p: &mut Vec<Rational>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] = out[i + j].add(&x.mul(y));
            }
        }
    }
    out
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_else(Rational::zero);
        let y = b.get(i).cloned().unwrap_or_else(Rational::zero);
        out.push(x.sub(&y));
    }
    poly_trim(&mut out);
    out
}

/// Quotient and remainder of `a` by nonzero trimmed `b`.
fn poly_divmod(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut rem = a.to_vec();
    poly_trim(&mut rem);
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let lead_inv = b.last().unwrap().recip().unwrap();
    let mut quot = vec![Rational::zero(); rem.len() - b.len() + 1];
    while rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let c = rem.last().unwrap().mul(&lead_inv);
        for (j, y) in b.iter().enumerate() {
            rem[shift + j] = rem[shift + j].sub(&c.mul(y));
        }
        quot[shift] = c;
        rem.pop();
        poly_trim(&mut rem);
    }
    (quot, rem)
}

impl Cyclotomic {
    /// Build from an arbitrary polynomial in ζ_m (any length).
    pub fn from_poly(order: u32, poly: Vec<Rational>) -> Cyclotomic {
        assert!(order >= 1, "cyclotomic order must be positive");
        Cyclotomic { order, coeffs: reduce(poly, order) }
    }

    pub fn from_rational(q: Rational) -> Cyclotomic {
        Cyclotomic { order: 1, coeffs: vec![q] }
    }

    pub fn zeta(order: u32) -> Cyclotomic {
        Self::zeta_pow(order, 1)
    }

    /// ζ_m^k for any integer k.
    pub fn zeta_pow(order: u32, k: i64) -> Cyclotomic {
        let e = k.rem_euclid(order as i64) as usize;
        let mut poly = vec![Rational::zero(); e + 1];
        poly[e] = Rational::one();
        Self::from_poly(order, poly)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// The same number written in Q(ζ_target); `target` must be a multiple
    /// of the current order.
    pub fn embed(&self, target: u32) -> Cyclotomic {
        assert!(target % self.order == 0, "embedding target must be a multiple of the order");
        if target == self.order {
            return self.clone();
        }
        let step = (target / self.order) as usize;
        let mut poly = vec![Rational::zero(); step * self.coeffs.len().max(1)];
        for (i, c) in self.coeffs.iter().enumerate() {
            poly[i * step] = c.clone();
        }
        Self::from_poly(target, poly)
    }

    fn align(&self, other: &Cyclotomic) -> (Vec<Rational>, Vec<Rational>, u32) {
        let l = lcm(self.order, other.order);
        (self.embed(l).coeffs, other.embed(l).coeffs, l)
    }

    /// The rational value, if this element lies in Q.
    pub fn to_rational(&self) -> Option<Rational> {
        if self.coeffs.iter().skip(1).all(|c| c.is_zero()) {
            Some(self.coeffs.first().cloned().unwrap_or_else(Rational::zero))
        } else {
            None
        }
    }

    pub fn pow(&self, e: i64) -> Result<Cyclotomic, ScalarError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Cyclotomic::one();
        let mut b = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&b);
            }
            b = b.mul(&b);
            k >>= 1;
        }
        Ok(acc)
    }

    pub fn is_one(&self) -> bool {
        self.to_rational().is_some_and(|q| q == Rational::one())
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        let (a, b, _) = self.align(other);
        a == b
    }
}

impl Ring for Cyclotomic {
    fn zero() -> Self {
        Cyclotomic::from_rational(Rational::zero())
    }

    fn one() -> Self {
        Cyclotomic::from_rational(Rational::one())
    }

    fn from_i64(v: i64) -> Self {
        Cyclotomic::from_rational(Rational::from_int(v))
    }

    fn add(&self, other: &Self) -> Self {
        let (a, b, l) = self.align(other);
        let coeffs = a.iter().zip(&b).map(|(x, y)| x.add(y)).collect();
        Cyclotomic { order: l, coeffs }
    }

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    fn mul(&self, other: &Self) -> Self {
        let (a, b, l) = self.align(other);
        Cyclotomic::from_poly(l, poly_mul(&a, &b))
    }

    fn neg(&self) -> Self {
        Cyclotomic { order: self.order, coeffs: self.coeffs.iter().map(|c| c.neg()).collect() }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}

impl Field for Cyclotomic {
    fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::NonUnit);
        }
        // Extended Euclid in Q[x]: find u with u·a ≡ 1 modulo Φ_m.
        let modulus: Vec<Rational> =
            cyclotomic_polynomial(self.order).iter().map(|&c| Rational::from_int(c)).collect();
        let mut a = self.coeffs.clone();
        poly_trim(&mut a);
        let (mut r0, mut r1) = (modulus, a);
        let (mut s0, mut s1) = (Vec::<Rational>::new(), vec![Rational::one()]);
        while !r1.is_empty() {
            let (q, r) = poly_divmod(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r0 is a nonzero constant because Φ_m is irreducible.
        if r0.len() != 1 {
            return Err(ScalarError::NonUnit);
        }
        let c = r0[0].recip().ok_or(ScalarError::NonUnit)?;
        let u: Vec<Rational> = s0.iter().map(|x| x.mul(&c)).collect();
        Ok(Cyclotomic::from_poly(self.order, u))
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            terms.push(match i {
                0 => format!("{c}"),
                1 => format!("{c}*ζ{}", self.order),
                _ => format!("{c}*ζ{}^{i}", self.order),
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

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(*cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(*cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(euler_phi(105), 48);
    }

    #[test]
    fn zeta4_squared_is_minus_one() {
        let i = Cyclotomic::zeta(4);
        assert_eq!(i.mul(&i), Cyclotomic::from_i64(-1));
        assert_eq!(i.mul(&i).to_rational(), Some(Rational::from_int(-1)));
    }

    #[test]
    fn mixed_orders_embed_into_lcm() {
        let w = Cyclotomic::zeta(3);
        let i = Cyclotomic::zeta(4);
        let p = w.mul(&i);
        assert_eq!(p.order(), 12);
        assert_eq!(p, Cyclotomic::zeta_pow(12, 7));
        assert_eq!(Cyclotomic::zeta_pow(6, 2), w);
        assert_eq!(Cyclotomic::zeta(2), Cyclotomic::from_i64(-1));
    }

    #[test]
    fn inverse_round_trip() {
        let x = Cyclotomic::from_poly(
            5,
            vec![Rational::new(1, 2), Rational::from_int(3), Rational::zero(), Rational::new(-2, 7)],
        );
        let y = x.inv().unwrap();
        assert!(x.mul(&y).is_one());
        assert!(Cyclotomic::zero().inv().is_err());
        assert_eq!(Cyclotomic::zeta(7).pow(7).unwrap(), Cyclotomic::one());
        assert_eq!(Cyclotomic::zeta(7).pow(-1).unwrap(), Cyclotomic::zeta_pow(7, 6));
    }
}
