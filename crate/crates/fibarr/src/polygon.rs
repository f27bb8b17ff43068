//! The regular-polygon arrangements R(2n): the n lines spanned by the
//! edges of a regular n-gon together with its n main diagonals, one
//! diagonal sent to infinity.
//!
//! The affine wiring is built two independent ways — the closed
//! block-pattern lemma and a floating-point projective-chart model of the
//! actual polygon — and the two must agree. The geometric route is what
//! pins down the labeling bridge between the affine parameters
//! (s_1..s_n, t_1..t_{n-1}, t_inf) and the cyclic projective labels
//! (edges e_0..e_{n-1}, diagonals d_0..d_{n-1} with d_0 orthogonal to e_0),
//! under which double points are (i, (2i)') and triple points (i, j, (i+j)').

use crate::arrangement::{Arrangement, BlockPartition, Wiring, WiringVertical};
use crate::charvar::BoundaryOperator;
use crate::cyclo::CycloNum;
use crate::matrix::ExactMatrix;
use crate::point::{ParameterPoint, ProjPoint};
use crate::{Error, Result};
use std::f64::consts::PI;

/// Bridge between affine and projective labels. All projective indices are
/// 0-based mod n; affine sides are 0-based vectors (`edges[i]` belongs to
/// `s_{i+1}`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labeling {
    pub edges: Vec<usize>,
    pub diagonals: Vec<usize>,
    pub infinity: usize,
}

#[derive(Debug, Clone)]
pub struct PolygonModel {
    pub n: usize,
    pub arrangement: Arrangement,
    pub labeling: Labeling,
}

/// Block pattern of the i-th vertical (1-based) from the parity lemma:
/// pairs start at index 1 for odd i when n is odd and for even i when n is
/// even; otherwise index 1 is a singleton.
pub fn lemma_blocks(n: usize, i: usize) -> Vec<Vec<usize>> {
    let pairs_first = if n % 2 == 1 { i % 2 == 1 } else { i % 2 == 0 };
    let mut blocks = Vec::new();
    let mut start = 1;
    if !pairs_first {
        blocks.push(vec![1]);
        start = 2;
    }
    while start + 1 <= n {
        blocks.push(vec![start, start + 1]);
        start += 2;
    }
    if start == n {
        blocks.push(vec![n]);
    }
    blocks
}

/// Floating-point chart model: send diagonal `inf` to infinity and read the
/// wiring off the picture. Returns the wiring (verticals labeled by their
/// projective diagonal) and the labeling, or `None` when the attempt is
/// numerically ambiguous or fails a cross-check.
fn geometric_attempt(
    n: usize,
    inf: usize,
    uflip: bool,
    vflip: bool,
    theta0: f64,
) -> Option<(Wiring, Labeling)> {
    let nf = n as f64;
    let psi = |j: usize| PI * (j as f64 + 1.0) / nf + theta0;
    let phi = |e: usize| PI * (2.0 * e as f64 + 1.0) / nf + theta0;
    let c = (PI / nf).cos();
    let psi_inf = psi(inf);
    if psi_inf.cos().abs() < 0.05 {
        return None; // chart degenerates; try another rotation
    }

    // vertical abscissae of the remaining diagonals
    let mut diags: Vec<(usize, f64)> = (0..n)
        .filter(|&j| j != inf)
        .map(|j| {
            let u = psi(j).cos() / (psi(j) - psi_inf).sin();
            (j, if uflip { -u } else { u })
        })
        .collect();
    diags.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap());
    for w in diags.windows(2) {
        if (w[0].1 - w[1].1).abs() < 1e-6 {
            return None;
        }
    }

    // edges as chart lines v = A u + B
    let lines: Vec<(f64, f64)> = (0..n)
        .map(|e| {
            let mut a = (phi(e) - psi_inf).cos() / (c * psi_inf.cos());
            let mut b = phi(e).sin() / (c * psi_inf.cos());
            if uflip {
                a = -a;
            }
            if vflip {
                a = -a;
                b = -b;
            }
            (a, b)
        })
        .collect();

    // basepoint ordering fixes the s labels
    let x0 = diags[0].1 + 1.0;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        let (vi, vj) = (lines[i].0 * x0 + lines[i].1, lines[j].0 * x0 + lines[j].1);
        vi.partial_cmp(&vj).unwrap()
    });
    for w in order.windows(2) {
        let (va, vb) = (
            lines[w[0]].0 * x0 + lines[w[0]].1,
            lines[w[1]].0 * x0 + lines[w[1]].1,
        );
        if (va - vb).abs() < 1e-6 {
            return None;
        }
    }
    let edges = order; // global index -> projective edge

    // wiring: per vertical, sort edges by (height, slope), snap equal
    // heights into blocks
    let mut verticals = Vec::with_capacity(n - 1);
    let mut sorted_orders: Vec<Vec<usize>> = Vec::with_capacity(n - 1);
    for &(d, u) in &diags {
        let mut idx: Vec<usize> = (0..n).collect();
        let h = |g: usize| {
            let e = edges[g];
            lines[e].0 * u + lines[e].1
        };
        idx.sort_by(|&i, &j| h(i).partial_cmp(&h(j)).unwrap());
        // snap near-equal heights into blocks, then order each block by
        // slope: the lines crossing at the vertical have equal exact
        // heights, so the raw float comparison above is noise within a
        // block and the slope decides the order just on the basepoint side
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut run = vec![0usize];
        for k in 1..n {
            let gap = (h(idx[k]) - h(idx[k - 1])).abs();
            let scale = h(idx[k]).abs().max(1.0);
            if gap < 1e-9 * scale {
                run.push(k);
            } else if gap < 1e-5 * scale {
                return None; // too close to snap safely
            } else {
                blocks.push(std::mem::replace(&mut run, vec![k]));
            }
        }
        blocks.push(run);
        for b in &blocks {
            if b.len() > 1 {
                let mut members: Vec<usize> = b.iter().map(|&k| idx[k]).collect();
                members.sort_by(|&i, &j| {
                    lines[edges[i]].0.partial_cmp(&lines[edges[j]].0).unwrap()
                });
                for (&k, &g) in b.iter().zip(&members) {
                    idx[k] = g;
                }
            }
        }
        let blocks: Vec<Vec<usize>> = blocks
            .into_iter()
            .map(|b| b.into_iter().map(|k| k + 1).collect())
            .collect();
        // census check from the cyclic labeling: singletons are (i,(2i)'),
        // pairs are (i,j,(i+j)')
        for b in &blocks {
            match b.len() {
                1 => {
                    let e = edges[idx[b[0] - 1]];
                    if (2 * e) % n != d {
                        return None;
                    }
                }
                2 => {
                    let (e1, e2) = (edges[idx[b[0] - 1]], edges[idx[b[1] - 1]]);
                    if (e1 + e2) % n != d {
                        return None;
                    }
                }
                _ => return None,
            }
        }
        verticals.push(WiringVertical {
            label: format!("d{d}"),
            blocks: BlockPartition::from_lists(&blocks, n).ok()?,
        });
        sorted_orders.push(idx);
    }
    let wiring = Wiring { n, verticals };

    // the sorted order at each vertical must match the composed reversals
    let arr = Arrangement::from_wiring(wiring.clone()).ok()?;
    for (i, idx) in sorted_orders.iter().enumerate() {
        if arr.ordering_at_slot(i) != idx.as_slice() {
            return None;
        }
    }

    let labeling = Labeling {
        edges,
        diagonals: diags.iter().map(|&(d, _)| d).collect(),
        infinity: inf,
    };
    Some((wiring, labeling))
}

/// Build the R(2n) model: geometric wiring and lemma wiring must coincide.
pub fn build_r2n(n: usize) -> Result<PolygonModel> {
    if n < 3 {
        return Err(Error::Invalid("polygon needs n >= 3".into()));
    }
    let lemma: Vec<Vec<Vec<usize>>> = (1..n).map(|i| lemma_blocks(n, i)).collect();
    let matches_lemma = |w: &Wiring| {
        w.verticals
            .iter()
            .zip(&lemma)
            .all(|(v, l)| {
                BlockPartition::from_lists(l, n)
                    .map(|b| b == v.blocks)
                    .unwrap_or(false)
            })
    };
    // prefer the vertex diagonal n-1 at infinity, then search the dihedral
    // relabelings (other infinity choices, both orientations)
    for &theta0 in &[0.37, 0.59, 0.83] {
        for inf in std::iter::once(n - 1).chain((0..n - 1).rev()) {
            for uflip in [false, true] {
                for vflip in [false, true] {
                    if let Some((w, labeling)) = geometric_attempt(n, inf, uflip, vflip, theta0)
                    {
                        if matches_lemma(&w) {
                            let arrangement = Arrangement::from_wiring(w)?;
                            return Ok(PolygonModel {
                                n,
                                arrangement,
                                labeling,
                            });
                        }
                    }
                }
            }
        }
    }
    Err(Error::GeometryMismatch(format!(
        "no chart of the {n}-gon reproduces the lemma wiring"
    )))
}

impl PolygonModel {
    /// Affine point from projective cyclic coordinates.
    pub fn to_affine(&self, p: &ProjPoint) -> Result<ParameterPoint> {
        if p.n() != self.n {
            return Err(Error::Invalid("projective point size mismatch".into()));
        }
        let s = self.labeling.edges.iter().map(|&e| p.s[e].clone()).collect();
        let t = self
            .labeling
            .diagonals
            .iter()
            .map(|&d| p.t[d].clone())
            .collect();
        Ok(ParameterPoint::new(
            s,
            t,
            Some(p.t[self.labeling.infinity].clone()),
        ))
    }

    /// Projective coordinates of an affine point; requires `t_inf`.
    pub fn to_projective(&self, p: &ParameterPoint) -> Result<ProjPoint> {
        let t_inf = p
            .t_inf
            .clone()
            .ok_or_else(|| Error::Invalid("projective conversion needs t_inf".into()))?;
        let mut s = vec![CycloNum::zero(); self.n];
        let mut t = vec![CycloNum::zero(); self.n];
        for (i, &e) in self.labeling.edges.iter().enumerate() {
            s[e] = p.s[i].clone();
        }
        for (j, &d) in self.labeling.diagonals.iter().enumerate() {
            t[d] = p.t[j].clone();
        }
        t[self.labeling.infinity] = t_inf;
        ProjPoint::new(s, t)
    }
}

/// The point P_{n,k}: every edge parameter `zeta_n^k`, every diagonal
/// parameter `zeta_n^{k(n-2)}` (including the one at infinity).
pub fn pnk_point(n: usize, k: usize) -> ParameterPoint {
    let s = CycloNum::root_of_unity(n as u64, k as i64);
    let t = CycloNum::root_of_unity(n as u64, (k * (n - 2)) as i64);
    ParameterPoint::new(vec![s; n], vec![t.clone(); n - 1], Some(t))
}

/// P_{n,k} in the projective cyclic labeling.
pub fn pnk_proj(n: usize, k: usize) -> Result<ProjPoint> {
    let s = CycloNum::root_of_unity(n as u64, k as i64);
    let t = CycloNum::root_of_unity(n as u64, (k * (n - 2)) as i64);
    ProjPoint::new(vec![s; n], vec![t; n])
}

/// The common-eigenvector candidate: entries `(-1)^j (w^j - 1)/(w - 1)`
/// for `j = n-1` down to `1`, with `w = zeta_n^k`.
pub fn vn_vector(n: usize, k: usize) -> Result<Vec<CycloNum>> {
    if k == 0 || k % n == 0 {
        return Err(Error::Invalid("v_n needs a nontrivial root".into()));
    }
    let w = CycloNum::root_of_unity(n as u64, k as i64);
    let denom_inv = w.sub(&CycloNum::one()).inv()?;
    let mut v = Vec::with_capacity(n - 1);
    for j in (1..n).rev() {
        let num = w.pow(j as i64)?.sub(&CycloNum::one());
        let mut entry = num.mul(&denom_inv);
        if j % 2 == 1 {
            entry = entry.neg();
        }
        v.push(entry);
    }
    Ok(v)
}

/// Exponent rows of the monomial ideal generators `t_{i+j} s_i s_j = 1`
/// over (s_0..s_{n-1}, t_0..t_{n-1}); one row per unordered pair i < j.
fn ideal_exponent_rows(n: usize) -> Vec<Vec<i64>> {
    let mut rows = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let mut row = vec![0i64; 2 * n];
            row[i] += 1;
            row[j] += 1;
            row[n + (i + j) % n] += 1;
            rows.push(row);
        }
    }
    rows
}

fn int_rank(rows: &[Vec<i64>]) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let m = ExactMatrix::from_fn(rows.len(), cols, |i, j| CycloNum::from_int(rows[i][j]));
    m.rank()
}

#[derive(Debug, Clone)]
pub struct IsolationCertificate {
    pub n: usize,
    pub k: usize,
    pub point: ParameterPoint,
    /// rank of the boundary operator equals n-2
    pub rank_drop_ok: bool,
    /// every coordinate of v_n is nonzero
    pub eigenvector_nonvanishing: bool,
    /// the point satisfies every triple-point generator and the product
    /// relation
    pub ideal_point_ok: bool,
    /// rank of the exponent rows of the triple-point generators alone;
    /// 2n-1 means full rank transverse to the simultaneous-scaling
    /// direction, and together with the product relation the log-Jacobian
    /// is onto, certifying local zero-dimensionality on the torus
    pub log_jacobian_rank: usize,
    pub certified: bool,
}

pub fn certify_isolated(
    model: &PolygonModel,
    op: &BoundaryOperator,
    k: usize,
) -> Result<IsolationCertificate> {
    let n = model.n;
    if n < 5 || k == 0 || k >= n {
        return Err(Error::Invalid("certification needs n >= 5, 1 <= k < n".into()));
    }
    let point = pnk_point(n, k);
    let rank = op.matrix().eval(&point)?.rank();
    let rank_drop_ok = rank == n - 2;

    let vn = vn_vector(n, k)?;
    let eigenvector_nonvanishing = vn.iter().all(|c| !c.is_zero());

    let proj = pnk_proj(n, k)?;
    let mut ideal_point_ok = true;
    for i in 0..n {
        for j in i + 1..n {
            let val = proj.t[(i + j) % n].mul(&proj.s[i]).mul(&proj.s[j]);
            if !val.is_one() {
                ideal_point_ok = false;
            }
        }
    }
    if !proj.product().is_one() {
        ideal_point_ok = false;
    }

    let rows = ideal_exponent_rows(n);
    let log_jacobian_rank = int_rank(&rows);
    let mut with_relation = rows.clone();
    with_relation.push(vec![1i64; 2 * n]);
    let sliced_rank = int_rank(&with_relation);

    let certified = rank_drop_ok
        && eigenvector_nonvanishing
        && ideal_point_ok
        && log_jacobian_rank == 2 * n - 1
        && sliced_rank == 2 * n;
    Ok(IsolationCertificate {
        n,
        k,
        point,
        rank_drop_ok,
        eigenvector_nonvanishing,
        ideal_point_ok,
        log_jacobian_rank,
        certified,
    })
}

#[derive(Debug, Clone)]
pub struct LemmaReport {
    pub n: usize,
    pub points_total: usize,
    pub points_ok: usize,
    /// rank of the exponent rows of J (pair generators plus the product
    /// relation); 2n certifies local zero-dimensionality at every point
    pub jacobian_rank: usize,
    pub jacobian_full: bool,
    /// the one-dimensional components I_h satisfy the ideal I at sampled
    /// values of s_0
    pub components_ok: bool,
}

/// Verify the zero-dimensionality lemma: all n^2 points P_{n,h,k} satisfy
/// J, the log-Jacobian has full rank 2n, and each component I_h satisfies
/// I at sampled base values.
pub fn lemma_zerodim_check(n: usize) -> Result<LemmaReport> {
    if n < 5 {
        return Err(Error::Invalid("lemma check needs n >= 5".into()));
    }
    let zeta = |e: i64| CycloNum::root_of_unity(n as u64, e);
    let mut points_ok = 0;
    for h in 0..n as i64 {
        for k in 0..n as i64 {
            // s_i = zeta^{h i + k}, t_i = (s_0 s_i)^{-1}
            let s: Vec<CycloNum> = (0..n as i64).map(|i| zeta(h * i + k)).collect();
            let t: Vec<CycloNum> = (0..n as i64).map(|i| zeta(-(h * i + 2 * k))).collect();
            let mut ok = true;
            for i in 0..n {
                for j in i + 1..n {
                    if !t[(i + j) % n].mul(&s[i]).mul(&s[j]).is_one() {
                        ok = false;
                    }
                }
            }
            let mut prod = CycloNum::one();
            for v in s.iter().chain(t.iter()) {
                prod = prod.mul(v);
            }
            if !prod.is_one() {
                ok = false;
            }
            if ok {
                points_ok += 1;
            }
        }
    }

    let mut rows = ideal_exponent_rows(n);
    rows.push(vec![1i64; 2 * n]);
    let jacobian_rank = int_rank(&rows);

    // components of I: s_i = zeta^{h i} s_0 satisfies s_i s_j = s_l s_m
    // whenever i + j = l + m mod n, for arbitrary s_0; check at samples
    let samples = [
        CycloNum::from_rational(crate::rational::rat(2)),
        CycloNum::from_rational(crate::rational::rat2(3, 2)),
        CycloNum::root_of_unity(8, 1),
    ];
    let mut components_ok = true;
    for h in 0..n as i64 {
        for s0 in &samples {
            let s: Vec<CycloNum> = (0..n as i64).map(|i| zeta(h * i).mul(s0)).collect();
            // products within a residue class of i + j must agree
            for r in 0..n {
                let mut class_val: Option<CycloNum> = None;
                for i in 0..n {
                    for j in i + 1..n {
                        if (i + j) % n != r {
                            continue;
                        }
                        let v = s[i].mul(&s[j]);
                        match &class_val {
                            None => class_val = Some(v),
                            Some(c) => {
                                if *c != v {
                                    components_ok = false;
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    Ok(LemmaReport {
        n,
        points_total: n * n,
        points_ok,
        jacobian_rank,
        jacobian_full: jacobian_rank == 2 * n,
        components_ok,
    })
}

#[derive(Debug, Clone)]
pub struct ComponentSample {
    pub n: usize,
    pub x: CycloNum,
    pub proj: ProjPoint,
    pub point: ParameterPoint,
}

/// One point of the translated one-dimensional component for `n = 4m`:
/// `s_{2i} = x`, `s_{2i+1} = -x^{-1}`, `t_odd = -1`, `t_{0 mod 4} = x^2`,
/// `t_{2 mod 4} = x^{-2}`, converted to affine labels through the model.
pub fn component_point(model: &PolygonModel, x: &CycloNum) -> Result<ComponentSample> {
    let n = model.n;
    if n % 4 != 0 {
        return Err(Error::Invalid("translated component needs n = 4m".into()));
    }
    if x.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let minus_one = CycloNum::from_int(-1);
    let x_inv = x.inv()?;
    let s: Vec<CycloNum> = (0..n)
        .map(|i| {
            if i % 2 == 0 {
                x.clone()
            } else {
                x_inv.neg()
            }
        })
        .collect();
    let t: Vec<CycloNum> = (0..n)
        .map(|i| {
            if i % 2 == 1 {
                minus_one.clone()
            } else if i % 4 == 0 {
                x.mul(x)
            } else {
                x_inv.mul(&x_inv)
            }
        })
        .collect();
    let proj = ProjPoint::new(s, t)?;
    let point = model.to_affine(&proj)?;
    Ok(ComponentSample {
        n,
        x: x.clone(),
        proj,
        point,
    })
}

/// Orbit of a projective point under the cyclic relabeling
/// `s_i -> s_{i+1}`, `t_j -> t_{j+2}`; stops at the first repeat.
pub fn symmetry_orbit(model: &PolygonModel, pt: &ProjPoint) -> Result<Vec<ProjPoint>> {
    if pt.n() != model.n {
        return Err(Error::Invalid("point size does not match model".into()));
    }
    let mut orbit = vec![pt.clone()];
    let mut cur = pt.cyclic_shift();
    while cur != *pt && orbit.len() < model.n {
        orbit.push(cur.clone());
        cur = cur.cyclic_shift();
    }
    Ok(orbit)
}
