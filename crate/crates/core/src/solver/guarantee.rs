//! What a player secures with a fixed stationary strategy as `λ → 0`.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactalg::{half, int, Interval, Rational};
use crate::exec::Execution;
use crate::game::{AbsorbingGame, Player, StationaryStrategy};
use crate::matrixgame::maximize;

/// Support enumeration is exponential in the number of actions.
pub const MAX_GUARANTEE_ACTIONS: usize = 12;

/// `lim_{λ→0} γ_λ(x, j)`: the absorption-weighted average of `w` in column
/// `j` when `x` can absorb there, the non-absorbing payoff otherwise.
pub fn limit_payoff(game: &AbsorbingGame, x: &StationaryStrategy, j: usize) -> Result<Rational> {
    if x.owner() != Player::One || x.len() != game.rows() {
        return Err(Error::dimension("limit payoff needs a row-player strategy"));
    }
    if j >= game.cols() {
        return Err(Error::dimension(format!("column {j} out of range")));
    }
    let mut mass = Rational::zero();
    let mut weighted = Rational::zero();
    let mut stage = Rational::zero();
    for (i, xi) in x.probs().iter().enumerate() {
        stage += xi * &game.g()[i][j];
        if let Some(w) = game.absorbing_payoff(i, j) {
            let m = xi * &game.q()[i][j];
            weighted += &m * w;
            mass += m;
        }
    }
    Ok(if mass.is_zero() { stage } else { weighted / mass })
}

#[derive(Debug, Clone, PartialEq)]
pub struct Guarantee {
    /// Bracket of `sup_x min_j lim γ_λ(x, j)` in the original game's payoff
    /// units; for player 2 this is the level they can hold player 1 down to.
    pub value: Interval,
    /// Strategy securing `value.lo` (player 1) or `value.hi` (player 2).
    pub strategy: StationaryStrategy,
    pub support: Vec<usize>,
}

/// Full-support feasibility at level `z` for rows `support`: is there `x`
/// with every `x_i > 0` whose limit payoff is at least `z` in every column?
///
/// Columns that some row of the support can absorb in give
/// `Σ x_i q_ij (w_ij − z) ≥ 0`; the others give `Σ x_i (g_ij − z) ≥ 0`.
/// Both are homogeneous in `x`, so the program `max t` subject to those
/// constraints, `x_i ≥ t` and `Σ x_i ≤ 1` has `t > 0` exactly when such an
/// `x` exists. Returns the normalized `x`.
fn feasible_at(game: &AbsorbingGame, support: &[usize], z: &Rational) -> Option<Vec<Rational>> {
    let k = support.len();
    let vars = k + 1; // x over the support, then t
    let mut a: Vec<Vec<Rational>> = Vec::new();
    let mut b: Vec<Rational> = Vec::new();
    for j in 0..game.cols() {
        let absorbing = support.iter().any(|&i| game.absorbing_payoff(i, j).is_some());
        let mut row = vec![Rational::zero(); vars];
        for (pos, &i) in support.iter().enumerate() {
            let c = if absorbing {
                match game.absorbing_payoff(i, j) {
                    Some(w) => &game.q()[i][j] * (w - z),
                    None => Rational::zero(),
                }
            } else {
                &game.g()[i][j] - z
            };
            row[pos] = -c;
        }
        a.push(row);
        b.push(Rational::zero());
    }
    for pos in 0..k {
        let mut row = vec![Rational::zero(); vars];
        row[pos] = -Rational::one();
        row[k] = Rational::one();
        a.push(row);
        b.push(Rational::zero());
    }
    let mut total = vec![Rational::one(); vars];
    total[k] = Rational::zero();
    a.push(total);
    b.push(Rational::one());

    let mut c = vec![Rational::zero(); vars];
    c[k] = Rational::one();
    let sol = maximize(&c, &a, &b)?;
    if !sol.objective.is_positive() {
        return None;
    }
    let mass: Rational = sol.x[..k].iter().sum();
    Some(sol.x[..k].iter().map(|v| v / &mass).collect())
}

struct SupportResult {
    support: Vec<usize>,
    lo: Rational,
    hi: Rational,
    x: Vec<Rational>,
}

fn bisect_support(game: &AbsorbingGame, support: Vec<usize>, width: &Rational) -> SupportResult {
    let (min, max) = game.payoff_range();
    let mut lo = min - int(1);
    let mut hi = max + int(1);
    let mut x = feasible_at(game, &support, &lo).expect("every support clears the minimum payoff");
    while &(&hi - &lo) > width {
        let mid = (&lo + &hi) * half();
        match feasible_at(game, &support, &mid) {
            Some(sol) => {
                lo = mid;
                x = sol;
            }
            None => hi = mid,
        }
    }
    SupportResult { support, lo, hi, x }
}

/// `sup_x min_j limit_payoff(x, j)` over stationary strategies, bracketed to
/// within `width`, by enumerating exact supports and bisecting a linear
/// feasibility program on each. Player 2 is handled through the dual game.
pub fn stationary_guarantee(game: &AbsorbingGame, player: Player, width: &Rational) -> Result<Guarantee> {
    stationary_guarantee_with(game, player, width, Execution::default())
}

pub fn stationary_guarantee_with(
    game: &AbsorbingGame,
    player: Player,
    width: &Rational,
    exec: Execution,
) -> Result<Guarantee> {
    if !width.is_positive() {
        return Err(Error::domain("guarantee width must be positive"));
    }
    match player {
        Player::One => player_one(game, width, exec),
        Player::Two => {
            let g = player_one(&game.dual(), width, exec)?;
            Ok(Guarantee {
                value: g.value.neg(),
                strategy: StationaryStrategy::new(Player::Two, g.strategy.probs().to_vec())?,
                support: g.support,
            })
        }
    }
}

fn player_one(game: &AbsorbingGame, width: &Rational, exec: Execution) -> Result<Guarantee> {
    let m = game.rows();
    if m > MAX_GUARANTEE_ACTIONS {
        return Err(Error::dimension(format!(
            "stationary guarantee enumerates supports; {m} actions exceeds the cap of {MAX_GUARANTEE_ACTIONS}"
        )));
    }
    let supports: Vec<Vec<usize>> =
        (1u32..(1 << m)).map(|mask| (0..m).filter(|i| mask & (1 << i) != 0).collect()).collect();
    let results = exec.map(&supports, |s| bisect_support(game, s.clone(), width));
    let best = results
        .iter()
        .enumerate()
        .max_by(|(ia, a), (ib, b)| a.lo.cmp(&b.lo).then(ib.cmp(ia)))
        .map(|(_, r)| r)
        .unwrap();
    let hi = results.iter().map(|r| &r.hi).max().unwrap().clone();
    let mut probs = vec![Rational::zero(); m];
    for (&i, p) in best.support.iter().zip(&best.x) {
        probs[i] = p.clone();
    }
    Ok(Guarantee {
        value: Interval::new(best.lo.clone(), hi),
        strategy: StationaryStrategy::new(Player::One, probs)?,
        support: best.support.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{rat, to_f64};
    use crate::game::Builtin;

    fn w() -> Rational {
        rat(1, 1_000_000_000)
    }

    #[test]
    fn uniform_against_first_column() {
        let g = Builtin::CubicLimit.game();
        let x = StationaryStrategy::uniform(Player::One, 3);
        assert_eq!(limit_payoff(&g, &x, 0).unwrap(), rat(4, 3));
    }

    #[test]
    fn ratio_in_partially_absorbing_column() {
        let g = Builtin::CubicLimit.game();
        let x = StationaryStrategy::new(Player::One, vec![rat(1, 2), rat(1, 3), rat(1, 6)]).unwrap();
        // (x1 + 2 x2) / (x1 + x2)
        assert_eq!(limit_payoff(&g, &x, 1).unwrap(), rat(1, 2) * rat(6, 5) + rat(2, 3) * rat(6, 5));
    }

    #[test]
    fn non_absorbing_play() {
        let g = Builtin::BigMatch.game();
        let x = StationaryStrategy::pure(Player::One, 2, 1);
        assert_eq!(limit_payoff(&g, &x, 0).unwrap(), int(0));
        assert!(limit_payoff(&g, &x, 2).is_err());
    }

    #[test]
    fn big_match_guarantees_zero() {
        let r = stationary_guarantee(&Builtin::BigMatch.game(), Player::One, &w()).unwrap();
        assert!(r.value.contains(&int(0)), "{}", r.value);
    }

    #[test]
    fn sqrt_four_equalizer() {
        let r = stationary_guarantee(&Builtin::SqrtK(4).game(), Player::One, &w()).unwrap();
        assert_eq!(r.value.lo, int(2));
        assert_eq!(r.strategy.probs(), &[rat(2, 3), rat(1, 3)]);
        assert_eq!(r.support, vec![0, 1]);
    }

    #[test]
    fn cubic_full_support() {
        let r = stationary_guarantee(&Builtin::CubicLimit.game(), Player::One, &w()).unwrap();
        assert_eq!(r.support, vec![0, 1, 2]);
        assert!((to_f64(&r.value.lo) - 1.4301597).abs() < 1e-6);
        let p2 = stationary_guarantee(&Builtin::CubicLimit.game(), Player::Two, &w()).unwrap();
        assert!((to_f64(&p2.value.hi) - 1.4301597).abs() < 1e-6);
        assert_eq!(p2.strategy.owner(), Player::Two);
    }
}
