//! Seeded random instances for the verification suite.

use absorbing::exactalg::{int, rat};
use absorbing::{AbsorbingGame, QuadraticTarget, Rational, StarCell};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Deterministic star game with integer payoffs in `[-5, 5]`, shaped
/// 2×2, 2×3 or 3×2 by `seed mod 3`.
pub fn star_game(seed: u64) -> AbsorbingGame {
    let (m, n) = [(2, 2), (2, 3), (3, 2)][(seed % 3) as usize];
    let mut r = rng(seed);
    let cells: Vec<Vec<StarCell>> = (0..m)
        .map(|_| (0..n).map(|_| StarCell::new(int(r.random_range(-5..=5)), r.random_bool(0.5))).collect())
        .collect();
    AbsorbingGame::from_star_matrix(&cells).expect("rectangular grid")
}

/// General game up to 3×3; absorption probabilities are 0, 1 or `a/6`.
pub fn general_game(r: &mut impl Rng) -> AbsorbingGame {
    let m = r.random_range(1..=3);
    let n = r.random_range(1..=3);
    let mut g = vec![vec![int(0); n]; m];
    let mut q = g.clone();
    let mut w = g.clone();
    for i in 0..m {
        for j in 0..n {
            g[i][j] = int(r.random_range(-5..=5));
            q[i][j] = match r.random_range(0..4) {
                0 => int(0),
                1 => int(1),
                _ => rat(r.random_range(1..=5), 6),
            };
            if q[i][j] != int(0) {
                w[i][j] = int(r.random_range(-5..=5));
            }
        }
    }
    AbsorbingGame::new(g, q, w).expect("valid by construction")
}

/// Matrix up to 4×4 with entries in `[-9, 9]`.
pub fn int_matrix(r: &mut impl Rng) -> Vec<Vec<Rational>> {
    let m = r.random_range(1..=4);
    let n = r.random_range(1..=4);
    (0..m).map(|_| (0..n).map(|_| int(r.random_range(-9..=9))).collect()).collect()
}

pub const NON_SQUARES: [u32; 13] = [2, 3, 5, 6, 7, 8, 10, 11, 12, 13, 14, 15, 17];

pub fn quadratic_target(r: &mut impl Rng) -> QuadraticTarget {
    let p = rat(r.random_range(-9..=9), r.random_range(1..=6));
    let mut a = 0;
    while a == 0 {
        a = r.random_range(-5..=5);
    }
    let qcoef = rat(a, r.random_range(1..=4));
    let k = NON_SQUARES[r.random_range(0..NON_SQUARES.len())];
    QuadraticTarget { p, qcoef, k }
}
