//! Independent transport oracle through the fundamental group.
//!
//! Instead of the closed transport formula, this route tracks the honest
//! `pi_1` images of the fiber generators along the path (each one stays a
//! conjugate of a single generator), applies Fox calculus to the commutator
//! `[a_i, a_{i+1}]`, and changes basis to the normalized `H_1` generators.
//! Agreement of the two routes on a crossing-by-crossing basis is the main
//! correctness evidence for the matrix formulas.

use crate::arrangement::Arrangement;
use crate::laurent::{LaurentPoly, Mono, Param};
use crate::matrix::LaurentMatrix;
use crate::{Error, Result};
use num_bigint::BigInt;

/// A letter of the free group on the fiber punctures: 1-based position in
/// the current fiber ordering, plus inversion flag.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Letter {
    pub pos: usize,
    pub inv: bool,
}

/// Freely reduced word.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn push(&mut self, l: Letter) {
        if let Some(last) = self.0.last() {
            if last.pos == l.pos && last.inv != l.inv {
                self.0.pop();
                return;
            }
        }
        self.0.push(l);
    }

    pub fn extend(&mut self, other: &Word) {
        for &l in &other.0 {
            self.push(l);
        }
    }

    pub fn extend_inverse(&mut self, other: &Word) {
        for &l in other.0.iter().rev() {
            self.push(Letter {
                pos: l.pos,
                inv: !l.inv,
            });
        }
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }
}

/// Image of one fiber generator along a path: `prefix . a_target . prefix^-1`.
#[derive(Debug, Clone)]
pub struct ConjImage {
    pub prefix: Word,
    pub target: usize,
}

/// One crossing of vertical `v`: `a_k` goes to `P a'_{sigma(k)} P^{-1}`,
/// with `P` the increasing product of the far-side generators that the
/// strand passes over. `reverse` crosses right-to-left instead.
fn step_images(arr: &Arrangement, v: usize, images: &mut [ConjImage], _reverse: bool) {
    let n = arr.n();
    let (sigma, _) = arr.local_permutation(v);
    // the position involution is side-symmetric, and so is the passing rule
    let prefix_of = |k: usize| -> Word {
        let mut w = Word::default();
        for j in 1..sigma.apply(k - 1) + 1 {
            if sigma.apply(j - 1) + 1 > k {
                w.push(Letter { pos: j, inv: false });
            }
        }
        w
    };
    // substitute each letter of each stored image, then fold the target
    for img in images.iter_mut() {
        let mut new_prefix = Word::default();
        for &l in img.prefix.letters() {
            let p = prefix_of(l.pos);
            let mid = Letter {
                pos: sigma.apply(l.pos - 1) + 1,
                inv: l.inv,
            };
            new_prefix.extend(&p);
            new_prefix.push(mid);
            new_prefix.extend_inverse(&p);
        }
        new_prefix.extend(&prefix_of(img.target));
        img.target = sigma.apply(img.target - 1) + 1;
        img.prefix = new_prefix;
        let _ = n;
    }
}

/// Fox derivative coefficients `c_j = phi(d w / d a_j)` of a word, with the
/// valuation sending position `l` to the parameter of the line at that
/// position in `ord`.
fn fox_coeffs(word: &Word, ord: &[usize], n: usize) -> Vec<LaurentPoly> {
    let mut c = vec![LaurentPoly::zero(); n];
    let mut running = Mono::new();
    for &l in word.letters() {
        let p = Param::S(ord[l.pos - 1] + 1);
        if !l.inv {
            c[l.pos - 1] = c[l.pos - 1].add(&LaurentPoly::monomial(running.clone(), BigInt::from(1)));
            *running.entry(p).or_insert(0) += 1;
        } else {
            let e = running.entry(p).or_insert(0);
            *e -= 1;
            if *e == 0 {
                running.remove(&p);
            }
            c[l.pos - 1] = c[l.pos - 1].sub(&LaurentPoly::monomial(running.clone(), BigInt::from(1)));
        }
    }
    c
}

fn one_minus_s(ord: &[usize], pos1: usize) -> LaurentPoly {
    LaurentPoly::one().sub(&LaurentPoly::param(Param::S(ord[pos1 - 1] + 1)))
}

/// Transport matrix along a slot path (consecutive entries must be adjacent
/// slots), computed purely through `pi_1` and Fox calculus. Entries are the
/// coefficients on the normalized generators; the final divisions are exact
/// whenever the formulas are consistent, so a failed division is reported
/// as a mismatch.
pub fn fox_path_matrix(arr: &Arrangement, slot_path: &[usize]) -> Result<LaurentMatrix> {
    let n = arr.n();
    if slot_path.is_empty() {
        return Err(Error::Invalid("empty slot path".into()));
    }
    let mut images: Vec<ConjImage> = (1..=n)
        .map(|i| ConjImage {
            prefix: Word::default(),
            target: i,
        })
        .collect();
    for w in slot_path.windows(2) {
        let (a, b) = (w[0], w[1]);
        let (v, reverse) = if b == a + 1 {
            (b, false)
        } else if a == b + 1 {
            (a, true)
        } else {
            return Err(Error::Invalid("slot path must move one crossing at a time".into()));
        };
        step_images(arr, v, &mut images, reverse);
    }
    let ord_from = arr.ordering_at_slot(slot_path[0]);
    let ord_to = arr.ordering_at_slot(*slot_path.last().unwrap());
    let mut m = LaurentMatrix::zero(n - 1, n - 1);
    for i in 1..n {
        // commutator [w_i, w_{i+1}] as a freely reduced word
        let (wi, wi1) = (&images[i - 1], &images[i]);
        let mut u = Word::default();
        let append_conj = |u: &mut Word, img: &ConjImage, inv: bool| {
            u.extend(&img.prefix);
            u.push(Letter {
                pos: img.target,
                inv,
            });
            u.extend_inverse(&img.prefix);
        };
        append_conj(&mut u, wi, false);
        append_conj(&mut u, wi1, false);
        append_conj(&mut u, wi, true);
        append_conj(&mut u, wi1, true);
        let c = fox_coeffs(&u, ord_to, n);
        // change of basis: nu_j = sum_{k<=j} c_k (1 - s'_k); the telescoping
        // kernel relation forces nu_n = 0
        let mut nu = LaurentPoly::zero();
        let denom = one_minus_s(ord_from, i).mul(&one_minus_s(ord_from, i + 1));
        for j in 1..=n {
            nu = nu.add(&c[j - 1].mul(&one_minus_s(ord_to, j)));
            if j < n {
                let entry = nu.exact_div(&denom).ok_or_else(|| {
                    Error::GeometryMismatch(format!(
                        "fox image of generator {i} is not integral in the normalized basis"
                    ))
                })?;
                m.set(j - 1, i - 1, entry);
            } else if !nu.is_zero() {
                return Err(Error::GeometryMismatch(format!(
                    "fox image of generator {i} violates the kernel relation"
                )));
            }
        }
    }
    Ok(m)
}

/// Oracle for the local monodromy at vertical `p`: out across the crossing
/// and back.
pub fn fox_local_monodromy(arr: &Arrangement, p: usize) -> Result<LaurentMatrix> {
    fox_path_matrix(arr, &[p - 1, p, p - 1])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::wiring_from_lists;
    use crate::monodromy;

    fn arr(n: usize, verts: &[(&str, Vec<Vec<usize>>)]) -> Arrangement {
        Arrangement::from_wiring(wiring_from_lists(n, verts).unwrap()).unwrap()
    }

    #[test]
    fn identity_path() {
        let a = arr(3, &[("v1", vec![vec![1, 2, 3]])]);
        let m = fox_path_matrix(&a, &[0]).unwrap();
        assert!(m.is_identity());
    }

    #[test]
    fn single_crossing_matches_transport_formula() {
        for blocks in [
            vec![vec![1, 2]],
            vec![vec![1, 2, 3]],
            vec![vec![1], vec![2, 3]],
            vec![vec![1, 2], vec![3, 4]],
            vec![vec![1], vec![2, 3], vec![4, 5], vec![6]],
        ] {
            let n = blocks.iter().map(|b| b.len()).sum();
            let a = arr(n, &[("v1", blocks)]);
            let fox = fox_path_matrix(&a, &[0, 1]).unwrap();
            assert_eq!(fox, monodromy::transport(&a, 0, 1));
            let back = fox_path_matrix(&a, &[1, 0]).unwrap();
            assert_eq!(back, monodromy::transport(&a, 1, 0));
        }
    }

    #[test]
    fn loop_matches_local_monodromy() {
        for blocks in [
            vec![vec![1, 2, 3]],
            vec![vec![1], vec![2, 3], vec![4, 5], vec![6]],
            vec![vec![1, 2], vec![3, 4], vec![5, 6], vec![7]],
        ] {
            let n = blocks.iter().map(|b| b.len()).sum();
            let a = arr(n, &[("v1", blocks)]);
            assert_eq!(
                fox_local_monodromy(&a, 1).unwrap(),
                monodromy::local_monodromy(&a, 1)
            );
        }
    }

    #[test]
    fn multi_crossing_composition() {
        let a = arr(
            4,
            &[
                ("v1", vec![vec![1, 2], vec![3, 4]]),
                ("v2", vec![vec![1], vec![2, 3], vec![4]]),
            ],
        );
        let fox = fox_path_matrix(&a, &[0, 1, 2]).unwrap();
        assert_eq!(fox, monodromy::transport(&a, 0, 2));
        // a full out-and-back loop reproduces mu([delta_2])
        let loopm = fox_path_matrix(&a, &[0, 1, 2, 1, 0]).unwrap();
        assert_eq!(loopm, monodromy::global_monodromy_delta(&a, 2));
    }
}
