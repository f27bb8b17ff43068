//! Exact arithmetic in the cyclotomic fields `Q(zeta_N)`.
//!
//! Elements are stored in the power basis `1, zeta, ..., zeta^(phi(N)-1)`
//! modulo the N-th cyclotomic polynomial, so equality is coefficient-wise at
//! a common order. Mixed-order operands are merged to the lcm of the orders
//! before operating. Inverses go through the extended Euclidean algorithm in
//! `Q[x]` against the cyclotomic polynomial. There is no epsilon anywhere.

use crate::rational::{rat, Rational};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

pub fn euler_phi(n: u64) -> u64 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

fn divisors(n: u64) -> Vec<u64> {
    let mut ds = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            ds.push(d);
            if d != n / d {
                ds.push(n / d);
            }
        }
        d += 1;
    }
    ds.sort_unstable();
    ds
}

// --- dense polynomial helpers over Q, lowest degree first ---

fn poly_trim(p: &mut Vec<Rational>) {
    while p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                out[i + j] += ai * bj;
            }
        }
    }
    poly_trim(&mut out);
    out
}

/// Euclidean division; the divisor must be nonzero.
fn poly_divmod(num: &[Rational], den: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    assert!(!den.is_empty(), "division by zero polynomial");
    let mut rem: Vec<Rational> = num.to_vec();
    poly_trim(&mut rem);
    let dd = den.len() - 1;
    let lead = &den[dd];
    if rem.len() <= dd {
        return (Vec::new(), rem);
    }
    let mut quo = vec![Rational::zero(); rem.len() - dd];
    while rem.len() > dd {
        let k = rem.len() - 1 - dd;
        let c = rem.last().unwrap() / lead;
        for (i, di) in den.iter().enumerate() {
            if !di.is_zero() {
                let v = &c * di;
                rem[k + i] -= v;
            }
        }
        quo[k] = c;
        poly_trim(&mut rem);
        // the loop makes progress because the top coefficient is cancelled
        if rem.len() > k + dd {
            // numerical impossibility over exact arithmetic
            unreachable!("leading term did not cancel");
        }
    }
    poly_trim(&mut quo);
    (quo, rem)
}

/// Cyclotomic polynomial `Phi_n`, lowest degree first, integer coefficients
/// stored as rationals. Memoized: reduction hits this on every product.
pub fn cyclotomic_poly(n: u64) -> Vec<Rational> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Vec<Rational>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    let p = if n == 1 {
        vec![rat(-1), rat(1)]
    } else {
        // Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d
        let mut num = vec![Rational::zero(); (n + 1) as usize];
        num[0] = rat(-1);
        num[n as usize] = rat(1);
        let mut den = vec![rat(1)];
        for d in divisors(n) {
            if d < n {
                den = poly_mul(&den, &cyclotomic_poly(d));
            }
        }
        let (quo, rem) = poly_divmod(&num, &den);
        debug_assert!(rem.is_empty());
        quo
    };
    cache.lock().unwrap().insert(n, p.clone());
    p
}

/// Element of `Q(zeta_order)` in the power basis mod `Phi_order`.
#[derive(Debug, Clone)]
pub struct CycloNum {
    order: u64,
    /// exactly `phi(order)` coefficients, constant term first
    coeffs: Vec<Rational>,
}

impl CycloNum {
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    fn from_poly(order: u64, mut poly: Vec<Rational>) -> Self {
        let deg = euler_phi(order) as usize;
        if poly.len() > deg {
            let (_, rem) = poly_divmod(&poly, &cyclotomic_poly(order));
            poly = rem;
        }
        poly.resize(deg, Rational::zero());
        let c = CycloNum {
            order,
            coeffs: poly,
        };
        c.shrink()
    }

    /// Collapses to order 1 when the value is rational; keeps mixed-order
    /// expressions from dragging every operand up to a huge lcm.
    fn shrink(self) -> Self {
        if self.order > 1 && self.coeffs[1..].iter().all(|c| c.is_zero()) {
            CycloNum {
                order: 1,
                coeffs: vec![self.coeffs[0].clone()],
            }
        } else {
            self
        }
    }

    pub fn zero() -> Self {
        CycloNum {
            order: 1,
            coeffs: vec![Rational::zero()],
        }
    }

    pub fn one() -> Self {
        CycloNum {
            order: 1,
            coeffs: vec![Rational::one()],
        }
    }

    pub fn from_rational(r: Rational) -> Self {
        CycloNum {
            order: 1,
            coeffs: vec![r],
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(rat(n))
    }

    pub fn from_bigint(n: &BigInt) -> Self {
        Self::from_rational(Rational::from_integer(n.clone()))
    }

    /// Element from explicit power-basis coefficients; reduces mod the
    /// cyclotomic polynomial and canonicalizes.
    pub fn from_coeffs(order: u64, coeffs: Vec<Rational>) -> crate::Result<Self> {
        if order == 0 {
            return Err(crate::Error::Invalid("cyclotomic order must be positive".into()));
        }
        Ok(Self::from_poly(order, coeffs))
    }

    /// `zeta_order ^ exponent`, canonical.
    pub fn root_of_unity(order: u64, exponent: i64) -> Self {
        assert!(order >= 1, "order must be positive");
        let e = exponent.rem_euclid(order as i64) as u64;
        let mut poly = vec![Rational::zero(); e as usize + 1];
        poly[e as usize] = Rational::one();
        Self::from_poly(order, poly)
    }

    /// Re-expresses the element in `Q(zeta_m)`; requires `order | m`.
    pub fn promote(&self, m: u64) -> Self {
        assert!(m % self.order == 0, "promotion target must be a multiple");
        if m == self.order {
            return self.clone();
        }
        let step = (m / self.order) as usize;
        let mut poly = vec![Rational::zero(); (self.coeffs.len() - 1) * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                poly[i * step] = c.clone();
            }
        }
        Self::from_poly(m, poly)
    }

    fn merged(&self, other: &Self) -> (Self, Self, u64) {
        let m = self.order.lcm(&other.order);
        (self.promote(m), other.promote(m), m)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    pub fn as_rational(&self) -> Option<Rational> {
        if self.is_rational() {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b, m) = self.merged(other);
        // a or b may have collapsed to a shorter rational representation
        // during promotion; pad instead of zipping.
        let len = a.coeffs.len().max(b.coeffs.len());
        let mut poly = vec![Rational::zero(); len];
        for (i, c) in a.coeffs.iter().enumerate() {
            poly[i] += c;
        }
        for (i, c) in b.coeffs.iter().enumerate() {
            poly[i] += c;
        }
        Self::from_poly(m, poly)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        CycloNum {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b, m) = self.merged(other);
        Self::from_poly(m, poly_mul(&a.coeffs, &b.coeffs))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        CycloNum {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
        .shrink()
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(Self::from_rational(r.recip()));
        }
        // extended Euclid: u * self + v * Phi = gcd = const
        let modulus = cyclotomic_poly(self.order);
        let mut r0 = modulus.clone();
        let mut r1 = self.coeffs.clone();
        poly_trim(&mut r1);
        let mut u0: Vec<Rational> = Vec::new();
        let mut u1 = vec![Rational::one()];
        while !r1.is_empty() {
            let (q, r) = poly_divmod(&r0, &r1);
            let qu = poly_mul(&q, &u1);
            let mut u2 = u0.clone();
            u2.resize(u2.len().max(qu.len()), Rational::zero());
            for (i, c) in qu.iter().enumerate() {
                u2[i] -= c;
            }
            poly_trim(&mut u2);
            r0 = r1;
            r1 = r;
            u0 = u1;
            u1 = u2;
        }
        // r0 is the gcd; since Phi_n is irreducible over Q it is a nonzero constant
        debug_assert_eq!(r0.len(), 1);
        let g = r0[0].recip();
        let inv = u0.iter().map(|c| c * &g).collect();
        Ok(Self::from_poly(self.order, inv))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut exp = e.unsigned_abs();
        let mut acc = Self::one();
        let mut sq = base;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&sq);
            }
            sq = sq.mul(&sq);
            exp >>= 1;
        }
        Ok(acc)
    }

    /// Complex value, for the floating-point cross-check oracles only.
    pub fn to_complex(&self) -> (f64, f64) {
        let theta = 2.0 * std::f64::consts::PI / self.order as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (i, c) in self.coeffs.iter().enumerate() {
            let cf = rational_to_f64(c);
            re += cf * (theta * i as f64).cos();
            im += cf * (theta * i as f64).sin();
        }
        (re, im)
    }
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    let n = r.numer();
    let d = r.denom();
    // good enough for cross-check tolerances; values in tests are small
    let nf: f64 = n.to_string().parse().unwrap();
    let df: f64 = d.to_string().parse().unwrap();
    let _ = n.is_negative();
    nf / df
}

impl PartialEq for CycloNum {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        let (a, b, _) = self.merged(other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CycloNum {}

impl std::fmt::Display for CycloNum {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if i == 0 {
                write!(f, "{}", c)?;
            } else if c.is_one() {
                write!(f, "z{}^{}", self.order, i)?;
            } else {
                write!(f, "{}*z{}^{}", c, self.order, i)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat2;

    #[test]
    fn cyclotomic_polys() {
        // Phi_6 = x^2 - x + 1
        assert_eq!(cyclotomic_poly(6), vec![rat(1), rat(-1), rat(1)]);
        // Phi_12 = x^4 - x^2 + 1
        assert_eq!(
            cyclotomic_poly(12),
            vec![rat(1), rat(0), rat(-1), rat(0), rat(1)]
        );
        assert_eq!(cyclotomic_poly(7).len(), 7);
    }

    #[test]
    fn embed_cases() {
        // identity case
        assert!(CycloNum::root_of_unity(1, 0).is_one());
        // zeta_6^2 = zeta_6 - 1 in the power basis
        let z62 = CycloNum::root_of_unity(6, 2);
        assert_eq!(z62.coeffs(), &[rat(-1), rat(1)]);
        // periodicity
        assert_eq!(
            CycloNum::root_of_unity(6, 7),
            CycloNum::root_of_unity(6, 1)
        );
    }

    #[test]
    fn roots_of_unity_multiply() {
        let z = CycloNum::root_of_unity(6, 1);
        let z5 = CycloNum::root_of_unity(6, 5);
        assert!(z.mul(&z5).is_one());
    }

    #[test]
    fn sum_of_primitive_fifth_roots() {
        let mut acc = CycloNum::zero();
        for e in 1..5 {
            acc = acc.add(&CycloNum::root_of_unity(5, e));
        }
        assert_eq!(acc, CycloNum::from_int(-1));
    }

    #[test]
    fn inverse_of_one_minus_zeta3() {
        let z3 = CycloNum::root_of_unity(3, 1);
        let a = CycloNum::one().sub(&z3);
        let inv = a.inv().unwrap();
        // multiply-back oracle
        assert!(a.mul(&inv).is_one());
        // closed form (2 + zeta_3)/3
        let expected = CycloNum::from_int(2).add(&z3).scale(&rat2(1, 3));
        assert_eq!(inv, expected);
    }

    #[test]
    fn cross_order_equality() {
        // zeta_6^3 = -1 = zeta_2
        assert_eq!(
            CycloNum::root_of_unity(6, 3),
            CycloNum::from_int(-1)
        );
        // zeta_4 = zeta_12^3
        assert_eq!(
            CycloNum::root_of_unity(4, 1),
            CycloNum::root_of_unity(12, 3)
        );
    }

    #[test]
    fn division_by_zero() {
        assert!(matches!(
            CycloNum::one().div(&CycloNum::zero()),
            Err(Error::DivisionByZero)
        ));
    }
}
