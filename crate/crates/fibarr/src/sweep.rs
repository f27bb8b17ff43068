//! Point sweeps: evaluate the boundary operator at many torus points.
//!
//! The data-parallel path (rayon, behind the default `parallel` feature)
//! and the sequential path are both always compiled, so the benchmark
//! suite can compare them; the `parallel` feature only decides which one
//! the convenience wrappers use.

use crate::arrangement::{Arrangement, BlockPartition, Wiring, WiringVertical};
use crate::charvar::{self, BoundaryOperator};
use crate::cyclo::CycloNum;
use crate::point::ParameterPoint;
use crate::rational::Rational;
use crate::Result;
use num_bigint::BigInt;
use rand::Rng;

/// Sequential sweep of `h1` dimensions.
pub fn h1_sweep_seq(
    op: &BoundaryOperator,
    a: &Arrangement,
    pts: &[ParameterPoint],
) -> Result<Vec<usize>> {
    pts.iter()
        .map(|p| charvar::h1_dimension(op, a, p))
        .collect()
}

/// Data-parallel sweep of `h1` dimensions.
#[cfg(feature = "parallel")]
pub fn h1_sweep_par(
    op: &BoundaryOperator,
    a: &Arrangement,
    pts: &[ParameterPoint],
) -> Result<Vec<usize>> {
    use rayon::prelude::*;
    pts.par_iter()
        .map(|p| charvar::h1_dimension(op, a, p))
        .collect()
}

/// Default sweep: parallel when the feature is on.
pub fn h1_sweep(
    op: &BoundaryOperator,
    a: &Arrangement,
    pts: &[ParameterPoint],
) -> Result<Vec<usize>> {
    #[cfg(feature = "parallel")]
    {
        h1_sweep_par(op, a, pts)
    }
    #[cfg(not(feature = "parallel"))]
    {
        h1_sweep_seq(op, a, pts)
    }
}

/// Sequential membership sweep.
pub fn membership_sweep_seq(
    op: &BoundaryOperator,
    a: &Arrangement,
    pts: &[ParameterPoint],
) -> Result<Vec<charvar::MembershipReport>> {
    pts.iter().map(|p| charvar::membership(op, a, p)).collect()
}

/// Data-parallel membership sweep.
#[cfg(feature = "parallel")]
pub fn membership_sweep_par(
    op: &BoundaryOperator,
    a: &Arrangement,
    pts: &[ParameterPoint],
) -> Result<Vec<charvar::MembershipReport>> {
    use rayon::prelude::*;
    pts.par_iter()
        .map(|p| charvar::membership(op, a, p))
        .collect()
}

pub fn membership_sweep(
    op: &BoundaryOperator,
    a: &Arrangement,
    pts: &[ParameterPoint],
) -> Result<Vec<charvar::MembershipReport>> {
    #[cfg(feature = "parallel")]
    {
        membership_sweep_par(op, a, pts)
    }
    #[cfg(not(feature = "parallel"))]
    {
        membership_sweep_seq(op, a, pts)
    }
}

fn random_nonone_rational(rng: &mut impl Rng) -> Rational {
    loop {
        let p = rng.gen_range(-9i64..=9);
        let q = rng.gen_range(1i64..=9);
        if p == 0 || p == q {
            continue;
        }
        return Rational::new(BigInt::from(p), BigInt::from(q));
    }
}

/// A random rational torus point off the excluded stratum: coordinates in
/// `Q* \ {1}`.
pub fn random_rational_point(n: usize, m: usize, rng: &mut impl Rng) -> ParameterPoint {
    let s = (0..n)
        .map(|_| CycloNum::from_rational(random_nonone_rational(rng)))
        .collect();
    let t = (0..m)
        .map(|_| CycloNum::from_rational(random_nonone_rational(rng)))
        .collect();
    ParameterPoint::new(s, t, None)
}

/// A random fibered arrangement as a wiring: every block partition is
/// fibered by construction.
pub fn random_wiring(n: usize, m: usize, rng: &mut impl Rng) -> Wiring {
    let verticals = (0..m)
        .map(|i| {
            let mut lists: Vec<Vec<usize>> = Vec::new();
            let mut start = 1;
            while start <= n {
                let max_len = n - start + 1;
                let len = 1 + rng.gen_range(0..max_len.min(3));
                lists.push((start..start + len).collect());
                start += len;
            }
            WiringVertical {
                label: format!("v{}", i + 1),
                blocks: BlockPartition::from_lists(&lists, n).expect("partition by construction"),
            }
        })
        .collect();
    Wiring { n, verticals }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::Arrangement;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn sequential_and_parallel_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let a = Arrangement::from_wiring(random_wiring(4, 3, &mut rng)).unwrap();
        let op = charvar::boundary_operator(&a).unwrap();
        let pts: Vec<ParameterPoint> =
            (0..8).map(|_| random_rational_point(4, 3, &mut rng)).collect();
        let seq = h1_sweep_seq(&op, &a, &pts).unwrap();
        #[cfg(feature = "parallel")]
        assert_eq!(seq, h1_sweep_par(&op, &a, &pts).unwrap());
        assert_eq!(seq, h1_sweep(&op, &a, &pts).unwrap());
    }

    #[test]
    fn random_generators_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let w = random_wiring(6, 5, &mut rng);
            let a = Arrangement::from_wiring(w).unwrap();
            assert_eq!(a.n(), 6);
            let pt = random_rational_point(6, 5, &mut rng);
            pt.validate_nonzero().unwrap();
            pt.check_off_stratum().unwrap();
        }
    }
}
