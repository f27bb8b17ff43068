//! The boundary operator of the fibration complex and first
//! characteristic-variety membership.
//!
//! `H_1(M(A); L)` is the cokernel of `∂₁ = (t_p μ([γ_p]) − Id)_p`, one
//! block per vertical line, all in the basepoint basis. Membership of a
//! torus point in `V_1` is decided by the exact rank of `∂₁` there; the
//! common-eigenvector criterion and the triple-point factor products are
//! computed alongside as cross-checks.

use crate::arrangement::Arrangement;
use crate::cyclo::CycloNum;
use crate::laurent::{LaurentPoly, Param};
use crate::matrix::{ExactMatrix, LaurentMatrix, Mat};
use crate::monodromy;
use crate::point::ParameterPoint;
use crate::{Error, Result};

#[derive(Debug, Clone)]
pub struct BoundaryOperator {
    n: usize,
    /// per vertical: label and the (n-1)x(n-1) block t_p mu([gamma_p]) - Id
    blocks: Vec<(String, LaurentMatrix)>,
    /// the gamma monodromies themselves, kept for eigenvector work
    monodromies: Vec<LaurentMatrix>,
    /// all blocks side by side: (n-1) x m(n-1)
    matrix: LaurentMatrix,
}

impl BoundaryOperator {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[(String, LaurentMatrix)] {
        &self.blocks
    }

    pub fn monodromies(&self) -> &[LaurentMatrix] {
        &self.monodromies
    }

    pub fn matrix(&self) -> &LaurentMatrix {
        &self.matrix
    }
}

pub fn boundary_operator(a: &Arrangement) -> Result<BoundaryOperator> {
    let n = a.n();
    let mut blocks = Vec::with_capacity(a.m());
    let mut monodromies = Vec::with_capacity(a.m());
    for p in 1..=a.m() {
        let mu = monodromy::global_monodromy_gamma(a, p)?;
        let t_p = LaurentPoly::param(Param::T(p));
        let block = mu.scale(&t_p).sub(&Mat::identity(n - 1));
        blocks.push((a.vertical_label(p).to_string(), block));
        monodromies.push(mu);
    }
    let matrix = if blocks.is_empty() {
        LaurentMatrix::zero(n - 1, 0)
    } else {
        let refs: Vec<&LaurentMatrix> = blocks.iter().map(|(_, b)| b).collect();
        LaurentMatrix::hstack(&refs)
    };
    Ok(BoundaryOperator {
        n,
        blocks,
        monodromies,
        matrix,
    })
}

fn check_point(a: &Arrangement, pt: &ParameterPoint) -> Result<()> {
    if pt.s.len() != a.n() || pt.t.len() != a.m() {
        return Err(Error::Invalid(format!(
            "point has {} s and {} t coordinates, arrangement needs {} and {}",
            pt.s.len(),
            pt.t.len(),
            a.n(),
            a.m()
        )));
    }
    pt.validate_nonzero()?;
    pt.check_off_stratum()
}

/// `dim H_1(M(A); L)` at the point: `(n-1) - rank(∂₁)`.
pub fn h1_dimension(op: &BoundaryOperator, a: &Arrangement, pt: &ParameterPoint) -> Result<usize> {
    check_point(a, pt)?;
    Ok(op.n - 1 - op.matrix.eval(pt)?.rank())
}

/// One triple-point factor of the product defining `W(A)`: the lines
/// through the point and the value of `∏ ρ_ℓ − 1` there.
#[derive(Debug, Clone)]
pub struct WFactor {
    pub vertical: String,
    pub triple: Vec<String>,
    pub value: CycloNum,
}

#[derive(Debug, Clone)]
pub struct MembershipReport {
    pub point: ParameterPoint,
    pub rank: usize,
    pub h1_dim: usize,
    pub in_variety: bool,
    pub w_factors: Vec<WFactor>,
    /// basis of the common t_p^{-1}-eigenspace of the transposed
    /// monodromies, when nonzero
    pub eigenvector: Option<Vec<Vec<CycloNum>>>,
}

/// Basis of the common eigenspace of all `ᵗμ([γ_p])` for the eigenvalues
/// `t_p⁻¹`, or `None` when it is zero. Equivalent to the left kernel of
/// `∂₁` up to transposition.
pub fn common_eigenvector(
    op: &BoundaryOperator,
    a: &Arrangement,
    pt: &ParameterPoint,
) -> Result<Option<Vec<Vec<CycloNum>>>> {
    check_point(a, pt)?;
    let n1 = op.n - 1;
    let mut stacked: Vec<ExactMatrix> = Vec::with_capacity(op.monodromies.len());
    for (p, mu) in op.monodromies.iter().enumerate() {
        let tinv = pt.t[p].inv()?;
        let m = mu.eval(pt)?.transpose();
        stacked.push(m.sub(&ExactMatrix::identity(n1).scale(&tinv)));
    }
    let kernel = if stacked.is_empty() {
        ExactMatrix::zero(0, n1).right_kernel()
    } else {
        let refs: Vec<&ExactMatrix> = stacked.iter().collect();
        ExactMatrix::vstack(&refs).right_kernel()
    };
    Ok(if kernel.is_empty() { None } else { Some(kernel) })
}

/// Full membership verdict for a point, decided by exact rank, with the
/// `W(A)` restriction and the common-eigenvector criterion verified as
/// theorems on the way out.
pub fn membership(
    op: &BoundaryOperator,
    a: &Arrangement,
    pt: &ParameterPoint,
) -> Result<MembershipReport> {
    check_point(a, pt)?;
    let rank = op.matrix.eval(pt)?.rank();
    let h1_dim = op.n - 1 - rank;
    let in_variety = h1_dim > 0;

    let mut w_factors = Vec::new();
    for p in 1..=a.m() {
        for ((_, _), lines) in a.triple_points_on(p) {
            let mut prod = pt.t[p - 1].clone();
            for &g in &lines {
                prod = prod.mul(&pt.s[g]);
            }
            w_factors.push(WFactor {
                vertical: a.vertical_label(p).to_string(),
                triple: lines.iter().map(|&g| a.horizontal_label(g)).collect(),
                value: prod.sub(&CycloNum::one()),
            });
        }
    }
    if in_variety {
        // Thm: V(A) is contained in W(A) — every vertical must have t_p = 1
        // or a vanishing triple-point factor
        for p in 1..=a.m() {
            let label = a.vertical_label(p);
            let ok = pt.t[p - 1].is_one()
                || w_factors
                    .iter()
                    .any(|f| f.vertical == label && f.value.is_zero());
            if !ok {
                return Err(Error::GeometryMismatch(format!(
                    "point in variety but no vanishing factor on vertical {label}"
                )));
            }
        }
    }

    let eigenvector = common_eigenvector(op, a, pt)?;
    if eigenvector.is_some() != in_variety {
        return Err(Error::GeometryMismatch(
            "rank-drop and common-eigenvector criteria disagree".into(),
        ));
    }
    Ok(MembershipReport {
        point: pt.clone(),
        rank,
        h1_dim,
        in_variety,
        w_factors,
        eigenvector,
    })
}
