//! Integer-coefficient Laurent polynomials in the line parameters.
//!
//! Every symbolic matrix entry in this crate (transport, monodromy, boundary)
//! lives here: a canonical sorted sum of monomials `c * prod s_i^a t_j^b`.
//! Rational coefficients only ever appear after evaluation at a torus point.

use crate::cyclo::CycloNum;
use crate::point::ParameterPoint;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// A line parameter: `S(i)` for the i-th horizontal line, `T(j)` for the
/// j-th vertical line, both 1-based in the `x0`-fiber ordering.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Param {
    S(usize),
    T(usize),
}

impl std::fmt::Display for Param {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Param::S(i) => write!(f, "s{}", i),
            Param::T(j) => write!(f, "t{}", j),
        }
    }
}

/// Exponent map of one monomial; zero exponents are never stored.
pub type Mono = BTreeMap<Param, i64>;

fn mono_mul(a: &Mono, b: &Mono) -> Mono {
    let mut out = a.clone();
    for (p, e) in b {
        let entry = out.entry(*p).or_insert(0);
        *entry += e;
        if *entry == 0 {
            out.remove(p);
        }
    }
    out
}

fn mono_div(a: &Mono, b: &Mono) -> Mono {
    let mut out = a.clone();
    for (p, e) in b {
        let entry = out.entry(*p).or_insert(0);
        *entry -= e;
        if *entry == 0 {
            out.remove(p);
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    /// canonical: sorted by monomial, no zero coefficients
    terms: BTreeMap<Mono, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Mono::new(), c);
        }
        LaurentPoly { terms }
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(BigInt::from(c))
    }

    pub fn param(p: Param) -> Self {
        Self::monomial([(p, 1)].into_iter().collect(), BigInt::one())
    }

    pub fn monomial(m: Mono, c: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        LaurentPoly { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&Mono::new())
                .map_or(false, |c| c.is_one())
    }

    /// Nonzero single term, i.e. a unit of the Laurent ring up to the
    /// integer coefficient.
    pub fn as_monomial(&self) -> Option<(&Mono, &BigInt)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    fn add_term(&mut self, m: Mono, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = LaurentPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(mono_mul(ma, mb), ca * cb);
            }
        }
        out
    }

    pub fn scale_int(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul_mono(&self, m: &Mono) -> Self {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(mm, c)| (mono_mul(mm, m), c.clone()))
                .collect(),
        }
    }

    /// Exact division by a nonzero integer; panics if any coefficient is not
    /// divisible (the Faddeev-LeVerrier divisions are provably exact).
    pub fn div_exact_int(&self, k: &BigInt) -> Self {
        assert!(!k.is_zero());
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let (q, r) = c.div_rem(k);
                    assert!(r.is_zero(), "inexact integer division in Laurent ring");
                    (m.clone(), q)
                })
                .collect(),
        }
    }

    /// Leading term under dense lexicographic order on the exponent vectors
    /// over `params`; translation-invariant, so multiplicative.
    fn leading<'a>(&'a self, params: &[Param]) -> (&'a Mono, &'a BigInt, Vec<i64>) {
        let key = |m: &Mono| -> Vec<i64> {
            params.iter().map(|p| *m.get(p).unwrap_or(&0)).collect()
        };
        let mut best: Option<(&Mono, &BigInt, Vec<i64>)> = None;
        for (m, c) in &self.terms {
            let k = key(m);
            if best.as_ref().map_or(true, |(_, _, bk)| k > *bk) {
                best = Some((m, c, k));
            }
        }
        best.expect("leading term of zero polynomial")
    }

    /// Exact division in the Laurent ring; `None` when the division is not
    /// exact (detected via coefficient divisibility or a step cap).
    pub fn exact_div(&self, den: &Self) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let mut params: Vec<Param> = Vec::new();
        for (m, _) in self.terms.iter().chain(den.terms.iter()) {
            for p in m.keys() {
                if !params.contains(p) {
                    params.push(*p);
                }
            }
        }
        params.sort_unstable();
        let (dm, dc, _) = den.leading(&params);
        let (dm, dc) = (dm.clone(), dc.clone());
        let mut rem = self.clone();
        let mut quo = LaurentPoly::zero();
        let cap = 16 * (self.terms.len() + den.terms.len() + 4);
        for _ in 0..cap {
            if rem.is_zero() {
                return Some(quo);
            }
            let (rm, rc, _) = rem.leading(&params);
            let (q, r) = rc.div_rem(&dc);
            if !r.is_zero() {
                return None;
            }
            let tm = mono_div(rm, &dm);
            let term = LaurentPoly::monomial(tm, q);
            rem = rem.sub(&term.mul(den));
            quo = quo.add(&term);
        }
        None
    }

    /// Evaluation homomorphism at a torus point; negative exponents use
    /// field inverses.
    pub fn eval(&self, point: &ParameterPoint) -> Result<CycloNum> {
        let mut acc = CycloNum::zero();
        for (m, c) in &self.terms {
            let mut v = CycloNum::from_bigint(c);
            for (p, e) in m {
                let base = point.get(*p).ok_or_else(|| {
                    Error::UnassignedParameter(p.to_string())
                })?;
                if base.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                v = v.mul(&base.pow(*e)?);
            }
            acc = acc.add(&v);
        }
        Ok(acc)
    }

    /// Floating-point evaluation, cross-check oracle only.
    pub fn eval_complex(&self, point: &ParameterPoint) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (m, c) in &self.terms {
            let cf: f64 = c.to_string().parse().unwrap();
            let (mut tre, mut tim) = (cf, 0.0);
            for (p, e) in m {
                let (br, bi) = point.get(*p).unwrap().to_complex();
                let norm2 = br * br + bi * bi;
                let (br, bi) = if *e < 0 {
                    (br / norm2, -bi / norm2)
                } else {
                    (br, bi)
                };
                for _ in 0..e.unsigned_abs() {
                    let nre = tre * br - tim * bi;
                    tim = tre * bi + tim * br;
                    tre = nre;
                }
            }
            re += tre;
            im += tim;
        }
        (re, im)
    }
}

impl std::fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if m.is_empty() {
                write!(f, "{}", c)?;
                continue;
            }
            if !c.is_one() {
                write!(f, "{}*", c)?;
            }
            let mut inner = true;
            for (p, e) in m {
                if !inner {
                    write!(f, "*")?;
                }
                inner = false;
                if *e == 1 {
                    write!(f, "{}", p)?;
                } else {
                    write!(f, "{}^{}", p, e)?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::CycloNum;
    use crate::point::ParameterPoint;

    fn s(i: usize) -> LaurentPoly {
        LaurentPoly::param(Param::S(i))
    }

    #[test]
    fn ring_basics() {
        let p = s(1).mul(&s(2)).sub(&LaurentPoly::one());
        assert_eq!(p.num_terms(), 2);
        assert!(p.sub(&p).is_zero());
        // (s1 s2 - 1) evaluated at s1 = s2 = 1 is 0
        let pt = ParameterPoint::new(
            vec![CycloNum::one(), CycloNum::one()],
            vec![],
            None,
        );
        assert!(p.eval(&pt).unwrap().is_zero());
    }

    #[test]
    fn exact_division() {
        // (1 - s1)(1 - s2) / (1 - s1)
        let a = LaurentPoly::one().sub(&s(1));
        let b = LaurentPoly::one().sub(&s(2));
        let prod = a.mul(&b);
        assert_eq!(prod.exact_div(&a).unwrap(), b);
        // inexact division is rejected
        assert!(b.add(&LaurentPoly::one()).exact_div(&a).is_none());
    }

    #[test]
    fn division_with_negative_exponents() {
        let m = LaurentPoly::monomial([(Param::S(1), -2)].into_iter().collect(), 3.into());
        let p = m.mul(&s(2).add(&LaurentPoly::one()));
        let q = p.exact_div(&m).unwrap();
        assert_eq!(q, s(2).add(&LaurentPoly::one()));
    }

    #[test]
    fn eval_with_inverse() {
        // t1 * s1^-1 at s1 = zeta_6, t1 = zeta_6^4  ->  zeta_6^3 = -1
        let p = LaurentPoly::monomial(
            [(Param::T(1), 1), (Param::S(1), -1)].into_iter().collect(),
            1.into(),
        );
        let pt = ParameterPoint::new(
            vec![CycloNum::root_of_unity(6, 1)],
            vec![CycloNum::root_of_unity(6, 4)],
            None,
        );
        assert_eq!(p.eval(&pt).unwrap(), CycloNum::from_int(-1));
    }

    #[test]
    fn unassigned_parameter() {
        let p = s(3);
        let pt = ParameterPoint::new(vec![CycloNum::one()], vec![], None);
        assert!(p.eval(&pt).is_err());
    }
}
