//! Fibered affine real line arrangements.
//!
//! The canonical internal form is the wiring: for each vertical line, in
//! order of decreasing abscissa (nearest the basepoint first), the block
//! partition of the fiber indices that collide on that vertical. Every
//! monodromy formula downstream consumes only orderings and blocks;
//! coordinates are optional metadata used for construction and cross-checks.
//!
//! Fiber positions are addressed by *slots*: slot 0 is the basepoint side
//! (right of the first vertical), slot i lies between vertical i and
//! vertical i+1, slot m is left of the last vertical.

use crate::rational::{rat, Rational};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum Line {
    Horizontal {
        label: String,
        /// y = a x + b
        a: Rational,
        b: Rational,
    },
    Vertical {
        label: String,
        /// x = p
        p: Rational,
    },
}

impl Line {
    pub fn label(&self) -> &str {
        match self {
            Line::Horizontal { label, .. } | Line::Vertical { label, .. } => label,
        }
    }
}

/// A permutation of `{0..n-1}` as a position map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Perm(pub Vec<usize>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n).collect())
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v] = i;
        }
        Perm(inv)
    }

    /// `self` after `first`: `(self . first)(i) = self(first(i))`.
    pub fn compose_after(&self, first: &Perm) -> Self {
        Perm(first.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn is_involution(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &v)| self.0[v] == i)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &v)| i == v)
    }
}

/// Ordered intervals of consecutive 1-based indices partitioning `{1..n}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockPartition {
    /// inclusive 1-based (start, end) intervals, in order
    blocks: Vec<(usize, usize)>,
}

impl BlockPartition {
    pub fn new(blocks: Vec<(usize, usize)>, n: usize) -> Result<Self> {
        let mut expect = 1;
        for &(a, b) in &blocks {
            if a != expect || b < a {
                return Err(Error::MalformedPartition(format!(
                    "block ({a},{b}) breaks the consecutive cover of 1..{n}"
                )));
            }
            expect = b + 1;
        }
        if expect != n + 1 {
            return Err(Error::MalformedPartition(format!(
                "blocks cover 1..{} instead of 1..{n}",
                expect - 1
            )));
        }
        Ok(BlockPartition { blocks })
    }

    /// From explicit index lists, e.g. `[[1],[2,3],[4,5],[6]]`.
    pub fn from_lists(lists: &[Vec<usize>], n: usize) -> Result<Self> {
        let mut blocks = Vec::new();
        for l in lists {
            if l.is_empty() {
                return Err(Error::MalformedPartition("empty block".into()));
            }
            for w in l.windows(2) {
                if w[1] != w[0] + 1 {
                    return Err(Error::MalformedPartition(format!(
                        "block {:?} is not a run of consecutive indices",
                        l
                    )));
                }
            }
            blocks.push((l[0], *l.last().unwrap()));
        }
        Self::new(blocks, n)
    }

    pub fn blocks(&self) -> &[(usize, usize)] {
        &self.blocks
    }

    pub fn n(&self) -> usize {
        self.blocks.last().map_or(0, |&(_, b)| b)
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// The 1-based block interval containing index `i`.
    pub fn block_of(&self, i: usize) -> (usize, usize) {
        *self
            .blocks
            .iter()
            .find(|&&(a, b)| a <= i && i <= b)
            .expect("index within partition")
    }

    /// The local permutation: each block reversed in place (an involution).
    pub fn permutation(&self) -> Perm {
        let n = self.n();
        let mut p = vec![0; n];
        for &(a, b) in &self.blocks {
            for i in a..=b {
                p[i - 1] = (a + b - i) - 1;
            }
        }
        Perm(p)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WiringVertical {
    pub label: String,
    pub blocks: BlockPartition,
}

/// Wiring data: verticals ordered nearest-to-basepoint first (decreasing
/// abscissa), each with its block partition in the fiber ordering just on
/// the basepoint side of that vertical.
#[derive(Debug, Clone, PartialEq)]
pub struct Wiring {
    pub n: usize,
    pub verticals: Vec<WiringVertical>,
}

#[derive(Debug, Clone)]
pub struct Coords {
    /// horizontals sorted by increasing y at the basepoint fiber
    pub horizontals: Vec<Line>,
    /// verticals sorted by decreasing abscissa
    pub verticals: Vec<Line>,
    pub x0: Rational,
    /// slot x-values: grid[0] = x0, grid[i] = midpoint between verticals i
    /// and i+1, grid[m] = last abscissa - 1
    pub grid: Vec<Rational>,
}

#[derive(Debug, Clone)]
pub struct Arrangement {
    wiring: Wiring,
    coords: Option<Coords>,
    /// per slot: local position (0-based) -> global horizontal index (0-based)
    orderings: Vec<Vec<usize>>,
}

fn orderings_from_wiring(w: &Wiring) -> Vec<Vec<usize>> {
    let mut ords = Vec::with_capacity(w.verticals.len() + 1);
    ords.push((0..w.n).collect::<Vec<_>>());
    for v in &w.verticals {
        let sigma = v.blocks.permutation();
        let prev: &Vec<usize> = ords.last().unwrap();
        let next = (0..w.n).map(|j| prev[sigma.apply(j)]).collect();
        ords.push(next);
    }
    ords
}

impl Arrangement {
    pub fn from_wiring(wiring: Wiring) -> Result<Self> {
        if wiring.n == 0 {
            return Err(Error::Invalid("need at least one horizontal line".into()));
        }
        let mut labels: Vec<&str> = wiring.verticals.iter().map(|v| v.label.as_str()).collect();
        labels.sort_unstable();
        labels.dedup();
        if labels.len() != wiring.verticals.len() {
            return Err(Error::DuplicateLine("repeated vertical label".into()));
        }
        for v in &wiring.verticals {
            if v.blocks.n() != wiring.n {
                return Err(Error::MalformedPartition(format!(
                    "vertical {} partitions 1..{} instead of 1..{}",
                    v.label,
                    v.blocks.n(),
                    wiring.n
                )));
            }
        }
        let orderings = orderings_from_wiring(&wiring);
        Ok(Arrangement {
            wiring,
            coords: None,
            orderings,
        })
    }

    pub fn from_coords(lines: Vec<Line>) -> Result<Self> {
        let mut horizontals = Vec::new();
        let mut verticals = Vec::new();
        for l in &lines {
            match l {
                Line::Horizontal { .. } => horizontals.push(l.clone()),
                Line::Vertical { .. } => verticals.push(l.clone()),
            }
        }
        if horizontals.is_empty() {
            return Err(Error::Invalid("need at least one horizontal line".into()));
        }
        // label and coincidence checks
        let mut labels: Vec<&str> = lines.iter().map(|l| l.label()).collect();
        labels.sort_unstable();
        labels.dedup();
        if labels.len() != lines.len() {
            return Err(Error::DuplicateLine("repeated label".into()));
        }
        for i in 0..horizontals.len() {
            for j in i + 1..horizontals.len() {
                if h_coeffs(&horizontals[i]) == h_coeffs(&horizontals[j]) {
                    return Err(Error::DuplicateLine(format!(
                        "{} and {} are coincident",
                        horizontals[i].label(),
                        horizontals[j].label()
                    )));
                }
            }
        }
        let mut abscissae: Vec<Rational> = verticals.iter().map(v_abscissa).collect();
        abscissae.sort();
        abscissae.dedup();
        if abscissae.len() != verticals.len() {
            return Err(Error::DuplicateLine("two verticals share an abscissa".into()));
        }

        // verticals in decreasing abscissa
        verticals.sort_by(|a, b| v_abscissa(b).cmp(&v_abscissa(a)));
        let x0 = verticals
            .first()
            .map(|v| v_abscissa(v) + rat(1))
            .unwrap_or_else(|| rat(0));

        // fiberedness: every horizontal-horizontal crossing must sit on a vertical
        for i in 0..horizontals.len() {
            for j in i + 1..horizontals.len() {
                let (a1, b1) = h_coeffs(&horizontals[i]);
                let (a2, b2) = h_coeffs(&horizontals[j]);
                if a1 == a2 {
                    continue; // parallel, no affine intersection
                }
                let x = (&b2 - &b1) / (&a1 - &a2);
                if !verticals.iter().any(|v| v_abscissa(v) == x) {
                    let y = &a1 * &x + &b1;
                    return Err(Error::NotFibered { x, y });
                }
            }
        }

        // basepoint ordering: increasing y at x0 (ties impossible: a crossing
        // at x0 would be off every vertical, caught above)
        horizontals.sort_by(|l, r| {
            let (a1, b1) = h_coeffs(l);
            let (a2, b2) = h_coeffs(r);
            (&a1 * &x0 + &b1).cmp(&(&a2 * &x0 + &b2))
        });
        let n = horizontals.len();

        // slot grid
        let m = verticals.len();
        let mut grid = Vec::with_capacity(m + 1);
        grid.push(x0.clone());
        for i in 0..m {
            let p = v_abscissa(&verticals[i]);
            if i + 1 < m {
                let q = v_abscissa(&verticals[i + 1]);
                grid.push((&p + &q) / rat(2));
            } else {
                grid.push(&p - rat(1));
            }
        }

        // wiring: per vertical, order by (y at p, slope) just right of p;
        // blocks are maximal runs of equal y at p
        let mut wire_verticals = Vec::with_capacity(m);
        for v in &verticals {
            let p = v_abscissa(v);
            let mut idx: Vec<usize> = (0..n).collect();
            let key = |i: usize| {
                let (a, b) = h_coeffs(&horizontals[i]);
                (&a * &p + &b, a)
            };
            idx.sort_by(|&i, &j| key(i).cmp(&key(j)));
            let mut blocks = Vec::new();
            let mut start = 0usize;
            for k in 1..=n {
                let split = k == n || key(idx[k]).0 != key(idx[k - 1]).0;
                if split {
                    blocks.push((start + 1, k));
                    start = k;
                }
            }
            wire_verticals.push((
                WiringVertical {
                    label: v.label().to_string(),
                    blocks: BlockPartition::new(blocks, n)?,
                },
                idx,
            ));
        }

        let wiring = Wiring {
            n,
            verticals: wire_verticals.iter().map(|(w, _)| w.clone()).collect(),
        };
        let orderings = orderings_from_wiring(&wiring);
        // the sorted local orderings must agree with the composed reversals
        for (i, (_, idx)) in wire_verticals.iter().enumerate() {
            if orderings[i] != *idx {
                return Err(Error::GeometryMismatch(format!(
                    "ordering at slot {i} disagrees with composed block reversals"
                )));
            }
        }
        Ok(Arrangement {
            wiring,
            coords: Some(Coords {
                horizontals,
                verticals,
                x0,
                grid,
            }),
            orderings,
        })
    }

    pub fn n(&self) -> usize {
        self.wiring.n
    }

    /// number of vertical lines
    pub fn m(&self) -> usize {
        self.wiring.verticals.len()
    }

    pub fn wiring(&self) -> &Wiring {
        &self.wiring
    }

    pub fn coords(&self) -> Option<&Coords> {
        self.coords.as_ref()
    }

    pub fn num_slots(&self) -> usize {
        self.m() + 1
    }

    /// local position (0-based) -> global horizontal index (0-based)
    pub fn ordering_at_slot(&self, slot: usize) -> &[usize] {
        &self.orderings[slot]
    }

    /// Local permutation of vertical `v` (1-based) with its block partition.
    pub fn local_permutation(&self, v: usize) -> (Perm, &BlockPartition) {
        let blocks = &self.wiring.verticals[v - 1].blocks;
        (blocks.permutation(), blocks)
    }

    pub fn vertical_label(&self, v: usize) -> &str {
        &self.wiring.verticals[v - 1].label
    }

    /// Label of the horizontal with global index `i` (0-based); synthetic
    /// `l{i+1}` for wiring-only arrangements.
    pub fn horizontal_label(&self, i: usize) -> String {
        match &self.coords {
            Some(c) => c.horizontals[i].label().to_string(),
            None => format!("l{}", i + 1),
        }
    }

    /// Crossing permutation between two slots: position in the `from`
    /// ordering to position in the `to` ordering.
    pub fn slot_permutation(&self, from: usize, to: usize) -> Perm {
        let ord_from = Perm(self.orderings[from].clone());
        let ord_to = Perm(self.orderings[to].clone());
        ord_to.inverse().compose_after(&ord_from)
    }

    /// Crossing permutation between two regular values of the projection,
    /// composed from the local permutations of the verticals strictly
    /// between them. Requires coordinates.
    pub fn crossing_permutation(&self, x: &Rational, x2: &Rational) -> Result<Perm> {
        let coords = self
            .coords
            .as_ref()
            .ok_or_else(|| Error::Invalid("crossing_permutation needs coordinates".into()))?;
        for v in &coords.verticals {
            let p = v_abscissa(v);
            if p == *x || p == *x2 {
                return Err(Error::BasepointOnSingular(p));
            }
        }
        let slot_of = |val: &Rational| -> usize {
            coords
                .verticals
                .iter()
                .take_while(|v| v_abscissa(v) > *val)
                .count()
        };
        Ok(self.slot_permutation(slot_of(x), slot_of(x2)))
    }

    /// Direct coordinate computation of the same permutation by re-sorting
    /// y-values; an independent cross-check of the wiring route.
    pub fn crossing_permutation_from_coords(&self, x: &Rational, x2: &Rational) -> Result<Perm> {
        let coords = self
            .coords
            .as_ref()
            .ok_or_else(|| Error::Invalid("needs coordinates".into()))?;
        let order_at = |val: &Rational| -> Vec<usize> {
            let mut idx: Vec<usize> = (0..coords.horizontals.len()).collect();
            idx.sort_by(|&i, &j| {
                let (a1, b1) = h_coeffs(&coords.horizontals[i]);
                let (a2, b2) = h_coeffs(&coords.horizontals[j]);
                (&a1 * val + &b1).cmp(&(&a2 * val + &b2))
            });
            idx
        };
        let ord_x = Perm(order_at(x));
        let ord_x2 = Perm(order_at(x2));
        Ok(ord_x2.inverse().compose_after(&ord_x))
    }

    /// `1 - #lines + sum over singular points of (m(P) - 1)`; equals
    /// `(1-n)(1-m)` exactly when the bundle structure holds.
    pub fn euler_characteristic(&self) -> i64 {
        let n = self.n() as i64;
        let m = self.m() as i64;
        let mut chi = 1 - (n + m);
        for v in &self.wiring.verticals {
            for &(a, b) in v.blocks.blocks() {
                // block of size r: singular point of multiplicity r+1
                chi += (b - a + 1) as i64;
            }
        }
        chi
    }

    /// Global (0-based) horizontal indices incident to each singular point
    /// of multiplicity >= 3 on vertical `v` (1-based), with the point's
    /// block interval in the local ordering.
    pub fn triple_points_on(&self, v: usize) -> Vec<((usize, usize), Vec<usize>)> {
        let ord = &self.orderings[v - 1];
        self.wiring.verticals[v - 1]
            .blocks
            .blocks()
            .iter()
            .filter(|&&(a, b)| b > a)
            .map(|&(a, b)| ((a, b), (a..=b).map(|k| ord[k - 1]).collect()))
            .collect()
    }
}

fn h_coeffs(l: &Line) -> (Rational, Rational) {
    match l {
        Line::Horizontal { a, b, .. } => (a.clone(), b.clone()),
        Line::Vertical { .. } => unreachable!("horizontal expected"),
    }
}

fn v_abscissa(l: &Line) -> Rational {
    match l {
        Line::Vertical { p, .. } => p.clone(),
        Line::Horizontal { .. } => unreachable!("vertical expected"),
    }
}

/// Convenience for tests and generators: wiring from block index lists.
pub fn wiring_from_lists(n: usize, verticals: &[(&str, Vec<Vec<usize>>)]) -> Result<Wiring> {
    let mut vs = Vec::new();
    for (label, lists) in verticals {
        vs.push(WiringVertical {
            label: label.to_string(),
            blocks: BlockPartition::from_lists(lists, n)?,
        });
    }
    Ok(Wiring {
        n,
        verticals: vs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat2};

    fn h(label: &str, a: i64, b: i64) -> Line {
        Line::Horizontal {
            label: label.into(),
            a: rat(a),
            b: rat(b),
        }
    }

    fn v(label: &str, p: i64) -> Line {
        Line::Vertical {
            label: label.into(),
            p: rat(p),
        }
    }

    #[test]
    fn smallest_fibered_example() {
        // y = 0, y = x, vertical x = 0: triple point at the origin
        let a = Arrangement::from_coords(vec![h("l1", 0, 0), h("l2", 1, 0), v("v1", 0)]).unwrap();
        assert_eq!(a.n(), 2);
        assert_eq!(a.m(), 1);
        assert_eq!(a.wiring().verticals[0].blocks.blocks(), &[(1, 2)]);
    }

    #[test]
    fn not_fibered_detected() {
        // crossing at x = 1, vertical only at x = 0
        let err = Arrangement::from_coords(vec![h("l1", 0, 0), h("l2", 1, -1), v("v1", 0)]);
        assert!(matches!(err, Err(Error::NotFibered { .. })));
    }

    #[test]
    fn from_wiring_and_permutations() {
        let w = wiring_from_lists(3, &[("v1", vec![vec![1], vec![2, 3]])]).unwrap();
        let a = Arrangement::from_wiring(w).unwrap();
        let (p, blocks) = a.local_permutation(1);
        assert!(p.is_involution());
        assert_eq!(p.0, vec![0, 2, 1]);
        assert_eq!(blocks.num_blocks(), 2);
    }

    #[test]
    fn nonconsecutive_block_rejected() {
        assert!(BlockPartition::from_lists(&[vec![1, 3]], 3).is_err());
    }

    #[test]
    fn all_singletons_identity() {
        let w = wiring_from_lists(3, &[("v1", vec![vec![1], vec![2], vec![3]])]).unwrap();
        let a = Arrangement::from_wiring(w).unwrap();
        assert!(a.local_permutation(1).0.is_identity());
    }

    #[test]
    fn crossing_permutation_routes_agree() {
        // crossings at x = 0 (l1,l2) and x = 1 (l1,l3); l2 || l3
        let lines = vec![
            h("l1", 1, 0),
            h("l2", -1, 0),
            h("l3", -1, 2),
            v("v1", 0),
            v("v2", 1),
        ];
        let a = Arrangement::from_coords(lines).unwrap();
        let x = rat(2);
        let xp = rat2(-3, 1);
        let p1 = a.crossing_permutation(&x, &xp).unwrap();
        let p2 = a.crossing_permutation_from_coords(&x, &xp).unwrap();
        assert_eq!(p1, p2);
        // no vertical between two nearby points: identity
        let q = a.crossing_permutation(&rat(2), &rat(3)).unwrap();
        assert!(q.is_identity());
    }

    #[test]
    fn euler_characteristic_multiplicative() {
        let lines = vec![
            h("l1", 1, 0),
            h("l2", -1, 0),
            h("l3", -1, 2),
            v("v1", 0),
            v("v2", 1),
        ];
        let a = Arrangement::from_coords(lines).unwrap();
        assert_eq!(
            a.euler_characteristic(),
            (1 - a.n() as i64) * (1 - a.m() as i64)
        );
        // one horizontal, no verticals: chi of C* x C
        let single = Arrangement::from_coords(vec![h("l1", 0, 0)]).unwrap();
        assert_eq!(single.euler_characteristic(), 0);
    }

    #[test]
    fn basepoint_on_singular_projection_rejected() {
        let lines = vec![h("l1", 0, 0), h("l2", 1, 0), v("v1", 0)];
        let a = Arrangement::from_coords(lines).unwrap();
        assert!(matches!(
            a.crossing_permutation(&rat(0), &rat(1)),
            Err(Error::BasepointOnSingular(_))
        ));
    }
}
