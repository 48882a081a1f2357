//! The auxiliary matrix
//!
//! ```text
//! W_λ(z)_ij = λ·g_ij + (1−λ)·q_ij·w_ij − z·(λ + (1−λ)·q_ij)
//! ```
//!
//! whose one-shot value vanishes exactly at `z = v_λ`. Every entry is affine
//! in `z` with slope at most `−λ`, so the value is strictly decreasing in `z`.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactalg::{BiPoly, Rational, UniPoly};
use crate::game::AbsorbingGame;

/// `W_λ(z)` with both `λ` and `z` symbolic.
#[derive(Debug, Clone, PartialEq)]
pub struct WMatrix {
    entries: Vec<Vec<BiPoly>>,
}

impl WMatrix {
    pub fn symbolic(game: &AbsorbingGame) -> Self {
        let entries = (0..game.rows())
            .map(|i| {
                (0..game.cols())
                    .map(|j| {
                        let g = &game.g()[i][j];
                        let q = &game.q()[i][j];
                        let qw = game.absorbing_payoff(i, j).map_or_else(Rational::zero, |w| q * w);
                        let mut e = BiPoly::constant(qw.clone());
                        e.add_term(1, 0, g - &qw);
                        e.add_term(0, 1, -q.clone());
                        e.add_term(1, 1, q - Rational::one());
                        e
                    })
                    .collect()
            })
            .collect();
        WMatrix { entries }
    }

    pub fn entries(&self) -> &[Vec<BiPoly>] {
        &self.entries
    }

    /// `W_λ(z)` with `λ` fixed.
    pub fn at_lambda(&self, lambda: &Rational) -> Vec<Vec<UniPoly>> {
        self.entries.iter().map(|r| r.iter().map(|e| e.eval_lambda(lambda)).collect()).collect()
    }

    /// The `λ → 0` limit matrix with entries `q_ij·(w_ij − z)`.
    pub fn limit_matrix(&self) -> Vec<Vec<UniPoly>> {
        self.at_lambda(&Rational::zero())
    }

    pub fn eval(&self, lambda: &Rational, z: &Rational) -> Vec<Vec<Rational>> {
        self.entries.iter().map(|r| r.iter().map(|e| e.eval(lambda, z)).collect()).collect()
    }
}

pub(crate) fn check_lambda(lambda: &Rational) -> Result<()> {
    if !lambda.is_positive() || lambda >= &Rational::one() {
        return Err(Error::domain(format!("discount factor λ = {lambda} is outside (0, 1)")));
    }
    Ok(())
}

/// `W_λ(z)` for fixed `λ` as a pair of matrices `(A, B)` with `W = A − z·B`.
#[derive(Debug, Clone)]
pub(crate) struct AffineW {
    intercept: Vec<Vec<Rational>>,
    slope: Vec<Vec<Rational>>,
}

impl AffineW {
    pub(crate) fn new(game: &AbsorbingGame, lambda: &Rational) -> Self {
        let rest = Rational::one() - lambda;
        let mut intercept = Vec::with_capacity(game.rows());
        let mut slope = Vec::with_capacity(game.rows());
        for i in 0..game.rows() {
            let mut a = Vec::with_capacity(game.cols());
            let mut b = Vec::with_capacity(game.cols());
            for j in 0..game.cols() {
                let q = &game.q()[i][j];
                let mut ai = lambda * &game.g()[i][j];
                if let Some(w) = game.absorbing_payoff(i, j) {
                    ai += &rest * q * w;
                }
                a.push(ai);
                b.push(lambda + &rest * q);
            }
            intercept.push(a);
            slope.push(b);
        }
        AffineW { intercept, slope }
    }

    pub(crate) fn at(&self, z: &Rational) -> Vec<Vec<Rational>> {
        self.intercept
            .iter()
            .zip(&self.slope)
            .map(|(a, b)| a.iter().zip(b).map(|(a, b)| a - z * b).collect())
            .collect()
    }
}

/// Numeric `W_λ(z)` for `λ ∈ (0, 1)`.
pub fn build_w(game: &AbsorbingGame, lambda: &Rational, z: &Rational) -> Result<Vec<Vec<Rational>>> {
    check_lambda(lambda)?;
    Ok(AffineW::new(game, lambda).at(z))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{int, rat};
    use crate::game::Builtin;

    fn lin(c: i64, z: i64) -> BiPoly {
        &BiPoly::constant(int(c)) + &BiPoly::z().scale(&int(z))
    }

    fn neg_lz() -> BiPoly {
        -(&BiPoly::lambda() * &BiPoly::z())
    }

    #[test]
    fn big_match_symbolic() {
        let w = WMatrix::symbolic(&Builtin::BigMatch.game());
        let lam_one_minus_z = &BiPoly::lambda() * &lin(1, -1);
        assert_eq!(
            w.entries(),
            &[vec![lin(1, -1), lin(0, -1)], vec![neg_lz(), lam_one_minus_z]]
        );
    }

    #[test]
    fn cubic_game_symbolic() {
        let w = WMatrix::symbolic(&Builtin::CubicLimit.game());
        assert_eq!(
            w.entries(),
            &[
                vec![lin(1, -1), lin(1, -1), lin(2, -1)],
                vec![lin(1, -1), lin(2, -1), neg_lz()],
                vec![lin(2, -1), neg_lz(), lin(1, -1)],
            ]
        );
    }

    #[test]
    fn sqrt_k_corner_entry() {
        let k = 5;
        let w = WMatrix::symbolic(&Builtin::SqrtK(k).game());
        let lam = rat(1, 3);
        let z = rat(7, 4);
        let rest = int(1) - &lam;
        let expected = &rest - &z * (&lam + &rest * rat(1, k as i64));
        assert_eq!(w.entries()[0][0].eval(&lam, &z), expected);
        assert_eq!(build_w(&Builtin::SqrtK(k).game(), &lam, &z).unwrap()[0][0], expected);
    }

    #[test]
    fn placeholder_w_is_ignored() {
        let g = Builtin::BigMatch.game();
        let mut w = g.w().clone();
        w[1][0] = int(99);
        w[1][1] = rat(-13, 2);
        let noisy = AbsorbingGame::new(g.g().clone(), g.q().clone(), w).unwrap();
        assert_eq!(WMatrix::symbolic(&noisy), WMatrix::symbolic(&g));
        assert_eq!(
            build_w(&noisy, &rat(1, 10), &rat(1, 3)).unwrap(),
            build_w(&g, &rat(1, 10), &rat(1, 3)).unwrap()
        );
    }

    #[test]
    fn numeric_matches_symbolic_and_checks_lambda() {
        let game = Builtin::CubicLimit.game();
        let sym = WMatrix::symbolic(&game);
        let (lam, z) = (rat(2, 9), rat(-3, 5));
        assert_eq!(build_w(&game, &lam, &z).unwrap(), sym.eval(&lam, &z));
        assert!(build_w(&game, &int(0), &z).is_err());
        assert!(build_w(&game, &int(1), &z).is_err());
    }

    #[test]
    fn limit_matrix_is_q_times_w_minus_z() {
        let a = WMatrix::symbolic(&Builtin::SqrtK(3).game()).limit_matrix();
        assert_eq!(a[0][0], UniPoly::new(vec![int(1), rat(-1, 3)]));
        assert_eq!(a[1][1], UniPoly::from_ints(&[3, -1]));
        let b = WMatrix::symbolic(&Builtin::BigMatch.game()).limit_matrix();
        assert!(b[1][0].is_zero() && b[1][1].is_zero());
    }
}
