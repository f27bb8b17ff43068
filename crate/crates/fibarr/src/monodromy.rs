//! Twisted parallel transport and fiber monodromy.
//!
//! Matrices act on the column vector of normalized generators
//! `alpha_{1,2}, ..., alpha_{n-1,n}` of `H_1` of the fiber: column `i` holds
//! the image of the `i`-th generator, so composing paths left-multiplies.
//! All parameter subscripts in the formulas refer to positions in the
//! fiber ordering local to the path segment; entries are produced in the
//! global (basepoint-fiber) labeling through the slot orderings.

use crate::arrangement::Arrangement;
use crate::laurent::{LaurentPoly, Param};
use crate::matrix::LaurentMatrix;
use crate::Result;

fn s_at(ord: &[usize], pos1: usize) -> LaurentPoly {
    LaurentPoly::param(Param::S(ord[pos1 - 1] + 1))
}

fn prod_s(ord: &[usize], positions: impl Iterator<Item = usize>) -> LaurentPoly {
    let mut acc = LaurentPoly::one();
    for p in positions {
        acc = acc.mul(&s_at(ord, p));
    }
    acc
}

/// Transport across a single vertical `v` (1-based): from slot `v-1` to
/// slot `v` when `reverse` is false, the opposite way when true. The path
/// leaves the real axis on the left.
pub fn transport_step(arr: &Arrangement, v: usize, reverse: bool) -> LaurentMatrix {
    let n = arr.n();
    // position involution of the crossing; identical seen from either side
    // because each block reverses in place
    let (sigma, _) = arr.local_permutation(v);
    let ord_x = arr.ordering_at_slot(if reverse { v } else { v - 1 });
    let mut m = LaurentMatrix::zero(n - 1, n - 1);
    for i in 1..n {
        let si = sigma.apply(i - 1) + 1;
        let si1 = sigma.apply(i) + 1;
        let (lo, hi) = (si.min(si1), si.max(si1));
        let negate = si1 < si;
        for j in lo..hi {
            let coeff = prod_s(
                ord_x,
                (i + 1..=n).filter(|&k| sigma.apply(k - 1) + 1 <= j),
            );
            let coeff = if negate { coeff.neg() } else { coeff };
            m.set(j - 1, i - 1, coeff);
        }
    }
    m
}

/// Transport between two slots, composed step by step. `from == to` gives
/// the identity.
pub fn transport(arr: &Arrangement, from: usize, to: usize) -> LaurentMatrix {
    let n = arr.n();
    let mut acc = LaurentMatrix::identity(n - 1);
    if from <= to {
        for v in from + 1..=to {
            acc = transport_step(arr, v, false).matmul(&acc);
        }
    } else {
        for v in (to + 1..=from).rev() {
            acc = transport_step(arr, v, true).matmul(&acc);
        }
    }
    acc
}

/// Local monodromy around vertical `p` (1-based), written in the basis of
/// the fiber at slot `p-1` (the basepoint side of `p`), by the closed
/// block formula.
pub fn local_monodromy(arr: &Arrangement, p: usize) -> LaurentMatrix {
    let n = arr.n();
    let ord = arr.ordering_at_slot(p - 1);
    let (_, blocks) = arr.local_permutation(p);
    let mut m = LaurentMatrix::zero(n - 1, n - 1);
    for i in 1..n {
        let (a, b) = blocks.block_of(i);
        let (a2, b2) = blocks.block_of(i + 1);
        let col = i - 1;
        if (a, b) == (a2, b2) {
            // interior generator: scaled by the product over the block
            m.set(col, col, prod_s(ord, a..=b));
            continue;
        }
        debug_assert!(b == i && a2 == i + 1);
        m.set(col, col, LaurentPoly::one());
        for k in a..i {
            // 1 - s_a ... s_k  on alpha_{k,k+1}
            let c = LaurentPoly::one().sub(&prod_s(ord, a..=k));
            m.set(k - 1, col, c);
        }
        for k in i + 2..=b2 {
            // s_{i+1} ... s_{k-1} (1 - s_k ... s_b)  on alpha_{k-1,k}
            let head = prod_s(ord, i + 1..k);
            let tail = LaurentPoly::one().sub(&prod_s(ord, k..=b2));
            m.set(k - 2, col, head.mul(&tail));
        }
    }
    m
}

/// The same operator as the composition of the two half-turn transports,
/// an independent route used for cross-checks.
pub fn local_monodromy_via_transport(arr: &Arrangement, p: usize) -> LaurentMatrix {
    let fwd = transport_step(arr, p, false);
    let back = transport_step(arr, p, true);
    back.matmul(&fwd)
}

/// Characteristic polynomial of the local monodromy at `p` in factored
/// form: pairs (eigenvalue, multiplicity). The eigenvalue 1 appears with
/// multiplicity `h - 1` for `h` singular points on the vertical; each
/// point of multiplicity `r + 1 >= 3` contributes its block product with
/// multiplicity `r - 1`.
pub fn local_charpoly_factors(arr: &Arrangement, p: usize) -> Vec<(LaurentPoly, usize)> {
    let ord = arr.ordering_at_slot(p - 1);
    let (_, blocks) = arr.local_permutation(p);
    let mut out = Vec::new();
    let h = blocks.num_blocks();
    if h > 1 {
        out.push((LaurentPoly::one(), h - 1));
    }
    for &(a, b) in blocks.blocks() {
        if b > a {
            out.push((prod_s(ord, a..=b), b - a));
        }
    }
    out
}

/// Expand factored eigenvalues into monic coefficients, highest degree
/// first, matching `Mat::char_poly`.
pub fn expand_charpoly(factors: &[(LaurentPoly, usize)]) -> Vec<LaurentPoly> {
    let mut coeffs = vec![LaurentPoly::one()];
    for (ev, mult) in factors {
        for _ in 0..*mult {
            let mut next = vec![LaurentPoly::zero(); coeffs.len() + 1];
            for (k, c) in coeffs.iter().enumerate() {
                next[k] = next[k].add(c);
                next[k + 1] = next[k + 1].sub(&c.mul(ev));
            }
            coeffs = next;
        }
    }
    coeffs
}

/// Global monodromy along the elementary generator `gamma_p`, expressed in
/// the basepoint basis: conjugate of the local monodromy by the transport
/// to the near side of `p`.
pub fn global_monodromy_gamma(arr: &Arrangement, p: usize) -> Result<LaurentMatrix> {
    let tau = transport(arr, 0, p - 1);
    let tau_inv = tau.laurent_inverse()?;
    Ok(tau_inv.matmul(&local_monodromy(arr, p)).matmul(&tau))
}

/// Global monodromy along `delta_p`, the loop around all projections up to
/// and including `p`: out past `p` and back, each leg by transport.
pub fn global_monodromy_delta(arr: &Arrangement, p: usize) -> LaurentMatrix {
    transport(arr, p, 0).matmul(&transport(arr, 0, p))
}

/// The closed single-sum formula for `mu([delta_p])`, entirely in basepoint
/// labels; an independent cross-check of the transport-product route.
pub fn global_monodromy_delta_formula(arr: &Arrangement, p: usize) -> LaurentMatrix {
    let n = arr.n();
    // sigma: position in the x0-ordering -> position in the slot-p ordering
    let sigma = arr.slot_permutation(0, p);
    let sigma_inv = sigma.inverse();
    let ord_far = arr.ordering_at_slot(p);
    let sg = |a: usize, b: usize| b > a; // positive orientation
    let mut m = LaurentMatrix::zero(n - 1, n - 1);
    for i in 1..n {
        let (si, si1) = (sigma.apply(i - 1) + 1, sigma.apply(i) + 1);
        let outer_neg = !sg(si, si1);
        for k in si.min(si1)..si.max(si1) {
            let (ri, ri1) = (sigma_inv.apply(k - 1) + 1, sigma_inv.apply(k) + 1);
            let inner_neg = !sg(ri, ri1);
            // product over the outbound leg, in x0 labels
            let head = prod_s(
                arr.ordering_at_slot(0),
                (i + 1..=n).filter(|&h| sigma.apply(h - 1) + 1 <= k),
            );
            for j in ri.min(ri1)..ri.max(ri1) {
                let tail = prod_s(
                    ord_far,
                    (k + 1..=n).filter(|&l| sigma_inv.apply(l - 1) + 1 <= j),
                );
                let mut term = head.mul(&tail);
                if outer_neg != inner_neg {
                    term = term.neg();
                }
                let cur = m.get(j - 1, i - 1).add(&term);
                m.set(j - 1, i - 1, cur);
            }
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::wiring_from_lists;
    use crate::laurent::Param;
    use crate::matrix::Mat;

    fn arr(n: usize, verts: &[(&str, Vec<Vec<usize>>)]) -> Arrangement {
        Arrangement::from_wiring(wiring_from_lists(n, verts).unwrap()).unwrap()
    }

    fn s(i: usize) -> LaurentPoly {
        LaurentPoly::param(Param::S(i))
    }

    fn t(j: usize) -> LaurentPoly {
        LaurentPoly::param(Param::T(j))
    }

    fn one() -> LaurentPoly {
        LaurentPoly::one()
    }

    fn z() -> LaurentPoly {
        LaurentPoly::zero()
    }

    #[test]
    fn trivial_crossing_is_identity_transport() {
        let a = arr(3, &[("v1", vec![vec![1], vec![2], vec![3]])]);
        assert!(transport_step(&a, 1, false).is_identity());
    }

    #[test]
    fn local_monodromy_agrees_with_transport_product() {
        let cases: Vec<Vec<Vec<usize>>> = vec![
            vec![vec![1, 2]],
            vec![vec![1, 2, 3]],
            vec![vec![1], vec![2, 3]],
            vec![vec![1, 2], vec![3]],
            vec![vec![1], vec![2, 3], vec![4, 5], vec![6]],
            vec![vec![1, 2, 3], vec![4, 5]],
        ];
        for blocks in cases {
            let n = blocks.iter().map(|b| b.len()).sum();
            let a = arr(n, &[("v1", blocks)]);
            assert_eq!(
                local_monodromy(&a, 1),
                local_monodromy_via_transport(&a, 1)
            );
        }
    }

    #[test]
    fn first_polygon_vertical_matches_printed_matrix() {
        // hexagon first vertical: blocks {1}{2,3}{4,5}{6}; the published
        // operator t1*mu - Id is printed with rows and columns swapped
        // relative to the column-image convention used here
        let a = arr(6, &[("v1", vec![vec![1], vec![2, 3], vec![4, 5], vec![6]])]);
        let mu = local_monodromy(&a, 1);
        let op = mu.scale(&t(1)).sub(&Mat::identity(5));
        let tm1 = t(1).sub(&one());
        let expected = Mat::from_rows(vec![
            vec![tm1.clone(), t(1).mul(&s(2)).mul(&one().sub(&s(3))), z(), z(), z()],
            vec![z(), t(1).mul(&s(2)).mul(&s(3)).sub(&one()), z(), z(), z()],
            vec![z(), t(1).mul(&one().sub(&s(2))), tm1.clone(), t(1).mul(&s(4)).mul(&one().sub(&s(5))), z()],
            vec![z(), z(), z(), t(1).mul(&s(4)).mul(&s(5)).sub(&one()), z()],
            vec![z(), z(), z(), t(1).mul(&one().sub(&s(4))), tm1],
        ]);
        assert_eq!(op.transpose(), expected);
    }

    #[test]
    fn heptagon_first_vertical_matches_printed_matrix() {
        // blocks {1,2}{3,4}{5,6}{7}
        let a = arr(7, &[("v1", vec![vec![1, 2], vec![3, 4], vec![5, 6], vec![7]])]);
        let op = local_monodromy(&a, 1).scale(&t(1)).sub(&Mat::identity(6));
        let tm1 = t(1).sub(&one());
        let expected = Mat::from_rows(vec![
            vec![t(1).mul(&s(1)).mul(&s(2)).sub(&one()), z(), z(), z(), z(), z()],
            vec![t(1).mul(&one().sub(&s(1))), tm1.clone(), t(1).mul(&s(3)).mul(&one().sub(&s(4))), z(), z(), z()],
            vec![z(), z(), t(1).mul(&s(3)).mul(&s(4)).sub(&one()), z(), z(), z()],
            vec![z(), z(), t(1).mul(&one().sub(&s(3))), tm1.clone(), t(1).mul(&s(5)).mul(&one().sub(&s(6))), z()],
            vec![z(), z(), z(), z(), t(1).mul(&s(5)).mul(&s(6)).sub(&one()), z()],
            vec![z(), z(), z(), z(), t(1).mul(&one().sub(&s(5))), tm1],
        ]);
        assert_eq!(op.transpose(), expected);
    }

    #[test]
    fn charpoly_factors_match_matrix_charpoly() {
        for blocks in [
            vec![vec![1], vec![2, 3], vec![4, 5], vec![6]],
            vec![vec![1, 2, 3], vec![4]],
            vec![vec![1], vec![2], vec![3]],
        ] {
            let n = blocks.iter().map(|b| b.len()).sum();
            let a = arr(n, &[("v1", blocks)]);
            let expanded = expand_charpoly(&local_charpoly_factors(&a, 1));
            assert_eq!(local_monodromy(&a, 1).char_poly().unwrap(), expanded);
        }
    }

    #[test]
    fn delta_product_matches_closed_formula() {
        let a = arr(
            4,
            &[
                ("v1", vec![vec![1, 2], vec![3, 4]]),
                ("v2", vec![vec![1], vec![2, 3], vec![4]]),
            ],
        );
        for p in 1..=2 {
            assert_eq!(
                global_monodromy_delta(&a, p),
                global_monodromy_delta_formula(&a, p)
            );
        }
    }

    #[test]
    fn gamma_from_deltas() {
        // mu([gamma_p]) = mu([delta_{p-1}])^{-1} mu([delta_p])
        let a = arr(
            4,
            &[
                ("v1", vec![vec![1, 2], vec![3, 4]]),
                ("v2", vec![vec![1], vec![2, 3], vec![4]]),
            ],
        );
        let d1 = global_monodromy_delta(&a, 1);
        let d2 = global_monodromy_delta(&a, 2);
        assert_eq!(global_monodromy_gamma(&a, 1).unwrap(), d1);
        let g2 = global_monodromy_gamma(&a, 2).unwrap();
        assert_eq!(d1.laurent_inverse().unwrap().matmul(&d2), g2);
    }

    #[test]
    fn transport_round_trip_is_local_monodromy_conjugate() {
        // tau(0, m) then back equals the product of all delta loops' effect
        let a = arr(3, &[("v1", vec![vec![1, 2], vec![3]]), ("v2", vec![vec![1], vec![2, 3]])]);
        let full = global_monodromy_delta(&a, 2);
        let det = full.det().unwrap();
        assert!(det.as_monomial().is_some());
    }
}
