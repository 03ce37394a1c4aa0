//! Deterministic rational sample points in shrinking coordinate balls.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::deform::q_at;
use crate::exactalg::{frac, RationalScalar};
use crate::linalg::MatrixQ;
use crate::model::ChartPoint;

/// Numerators range over `-16..=16`; a point in the ball of radius `2^{−r}`
/// has coordinates `k / 2^{r+5}`, so every coordinate is at most `2^{−r−1}`.
const NUMERATOR_BOUND: i64 = 16;

/// Generic points for the torsion criterion with row `s`: off `SF`, with
/// `x11`, `x12` nonzero and some `x_{k1}` nonzero for `k ∉ {1, s}`.
pub fn is_generic(x: &ChartPoint<RationalScalar>, s: usize) -> bool {
    !q_at(x).is_zero()
        && !x.get(0, 0).is_zero()
        && !x.get(0, 1).is_zero()
        && (1..x.rows()).any(|k| k != s && !x.get(k, 0).is_zero())
}

fn rng_for(seed: u64, r: u32) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ u64::from(r))
}

/// `count` generic points of the open Euclidean ball of radius `2^{−r}`
/// around the origin, by rejection sampling.
pub fn sample_ball(n: usize, r: u32, count: usize, s: usize, seed: u64) -> Vec<ChartPoint<RationalScalar>> {
    let mut rng = rng_for(seed, r);
    let den = 1i64 << (r + 5);
    // |x|² < 2^{−2r} in units of 1/den²: Σ k² < 2^{10}.
    let bound = (den * den) >> (2 * r);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let ks: Vec<i64> = (0..2 * n)
            .map(|_| rng.gen_range(-NUMERATOR_BOUND..=NUMERATOR_BOUND))
            .collect();
        if ks.iter().map(|k| k * k).sum::<i64>() >= bound {
            continue;
        }
        let x = MatrixQ::new(n, 2, ks.into_iter().map(|k| frac(k, den)).collect())
            .expect("2n coordinates");
        if is_generic(&x, s) {
            out.push(x);
        }
    }
    out
}

/// Generic points with small coordinates for plain randomized checks.
pub fn sample_points(n: usize, count: usize, seed: u64) -> Vec<ChartPoint<RationalScalar>> {
    let mut rng = rng_for(seed, u32::MAX);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let data = (0..2 * n)
            .map(|_| frac(rng.gen_range(-9..=9), rng.gen_range(1..=7)))
            .collect();
        let x = MatrixQ::new(n, 2, data).expect("2n coordinates");
        if (1..n).all(|s| is_generic(&x, s)) || (n == 2 && !q_at(&x).is_zero()) {
            out.push(x);
        }
    }
    out
}
