//! Torus points: exact parameter assignments for the local system.

use crate::cyclo::CycloNum;
use crate::laurent::Param;
use crate::{Error, Result};

/// A point of `(C*)^(n+m)` with exact cyclotomic coordinates, in the affine
/// labeling: `s[i]` for horizontal line `i+1`, `t[j]` for vertical `j+1`.
/// `t_inf`, when present, is the parameter of the line at infinity and must
/// satisfy `prod(s) * prod(t) * t_inf = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct ParameterPoint {
    pub s: Vec<CycloNum>,
    pub t: Vec<CycloNum>,
    pub t_inf: Option<CycloNum>,
}

impl ParameterPoint {
    pub fn new(s: Vec<CycloNum>, t: Vec<CycloNum>, t_inf: Option<CycloNum>) -> Self {
        ParameterPoint { s, t, t_inf }
    }

    pub fn get(&self, p: Param) -> Option<&CycloNum> {
        match p {
            Param::S(i) => self.s.get(i.checked_sub(1)?),
            Param::T(j) => self.t.get(j.checked_sub(1)?),
        }
    }

    /// All coordinates must be nonzero for a valid torus point.
    pub fn validate_nonzero(&self) -> Result<()> {
        for (i, v) in self.s.iter().enumerate() {
            if v.is_zero() {
                return Err(Error::Invalid(format!("s{} is zero", i + 1)));
            }
        }
        for (j, v) in self.t.iter().enumerate() {
            if v.is_zero() {
                return Err(Error::Invalid(format!("t{} is zero", j + 1)));
            }
        }
        if let Some(v) = &self.t_inf {
            if v.is_zero() {
                return Err(Error::Invalid("t_inf is zero".into()));
            }
        }
        Ok(())
    }

    /// The normalized basis requires every `s_i != 1`; callers on the exact
    /// path reject the excluded stratum with this check.
    pub fn check_off_stratum(&self) -> Result<()> {
        for (i, v) in self.s.iter().enumerate() {
            if v.is_one() {
                return Err(Error::UnsupportedStratum(format!("s{}", i + 1)));
            }
        }
        Ok(())
    }

    /// `prod(s) * prod(t) * t_inf`, for projective consistency checks.
    pub fn total_product(&self) -> CycloNum {
        let mut acc = CycloNum::one();
        for v in self.s.iter().chain(self.t.iter()) {
            acc = acc.mul(v);
        }
        if let Some(v) = &self.t_inf {
            acc = acc.mul(v);
        }
        acc
    }
}

/// A point in the projective cyclic labeling of the polygon arrangement:
/// `s[i]` for edge `l_i`, `t[j]` for diagonal `l'_j`, `i, j = 0..n-1`,
/// subject to `prod(s) * prod(t) = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjPoint {
    pub s: Vec<CycloNum>,
    pub t: Vec<CycloNum>,
}

impl ProjPoint {
    pub fn new(s: Vec<CycloNum>, t: Vec<CycloNum>) -> Result<Self> {
        if s.len() != t.len() {
            return Err(Error::Invalid("projective point needs n edges and n diagonals".into()));
        }
        let p = ProjPoint { s, t };
        if !p.product().is_one() {
            return Err(Error::ProductRelation);
        }
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.s.len()
    }

    pub fn product(&self) -> CycloNum {
        let mut acc = CycloNum::one();
        for v in self.s.iter().chain(self.t.iter()) {
            acc = acc.mul(v);
        }
        acc
    }

    /// Image under the cyclic generator: `s_i -> s_{i+1}`, `t_j -> t_{j+2}`
    /// (indices mod n).
    pub fn cyclic_shift(&self) -> Self {
        let n = self.n();
        ProjPoint {
            s: (0..n).map(|i| self.s[(i + 1) % n].clone()).collect(),
            t: (0..n).map(|j| self.t[(j + 2) % n].clone()).collect(),
        }
    }
}
