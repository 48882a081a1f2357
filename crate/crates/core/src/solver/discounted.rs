use num_traits::{One, Signed};

use super::wmatrix::{check_lambda, AffineW};
use crate::error::{Error, Result};
use crate::exactalg::{half, int, Interval, Rational};
use crate::exec::Execution;
use crate::game::{AbsorbingGame, Player, StationaryStrategy};
use crate::matrixgame::{solve_exact, value_sign, Sign};

/// Discounted value bracket at one discount factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TracePoint {
    pub lambda: Rational,
    pub interval: Interval,
}

struct Bisection {
    interval: Interval,
    w: AffineW,
}

fn bisect(game: &AbsorbingGame, lambda: &Rational, width: &Rational) -> Result<Bisection> {
    check_lambda(lambda)?;
    if !width.is_positive() {
        return Err(Error::domain("bisection width must be positive"));
    }
    let w = AffineW::new(game, lambda);
    let (min, max) = game.payoff_range();
    let mut lo = min - int(1);
    let mut hi = max + int(1);
    debug_assert_eq!(value_sign(&w.at(&lo))?, Sign::Positive);
    debug_assert_eq!(value_sign(&w.at(&hi))?, Sign::Negative);
    while &(&hi - &lo) > width {
        let mid = (&lo + &hi) * half();
        match value_sign(&w.at(&mid))? {
            Sign::Zero => {
                return Ok(Bisection { interval: Interval::point(mid), w });
            }
            Sign::Positive => lo = mid,
            Sign::Negative => hi = mid,
        }
    }
    Ok(Bisection { interval: Interval::new(lo, hi), w })
}

/// Interval of width at most `width` containing the λ-discounted value,
/// found by bisection on the sign of `val(W_λ(z))`. A bisection point where
/// the sign is exactly zero yields a degenerate interval holding `v_λ`.
pub fn discounted_value(game: &AbsorbingGame, lambda: &Rational, width: &Rational) -> Result<Interval> {
    Ok(bisect(game, lambda, width)?.interval)
}

/// Stationary strategies that secure the ends of the bisection interval.
///
/// The row strategy is optimal in `W_λ(lo)`, whose value is nonnegative, so
/// it guarantees `γ_λ(x, j) ≥ lo` against every column. The column strategy
/// is optimal in `W_λ(hi)` and holds every row to `γ_λ(i, y) ≤ hi`. Both are
/// exactly optimal when `v_λ` was hit.
pub fn discounted_optimal(
    game: &AbsorbingGame,
    lambda: &Rational,
    width: &Rational,
) -> Result<(StationaryStrategy, StationaryStrategy)> {
    let b = bisect(game, lambda, width)?;
    let row = solve_exact(&b.w.at(&b.interval.lo))?;
    let col = if b.interval.is_point() { row.clone() } else { solve_exact(&b.w.at(&b.interval.hi))? };
    Ok((row.row_strategy, col.col_strategy))
}

/// Discounted values along a list of discount factors, in input order.
pub fn lambda_sweep(
    game: &AbsorbingGame,
    lambdas: &[Rational],
    width: &Rational,
    exec: Execution,
) -> Result<Vec<TracePoint>> {
    for l in lambdas {
        check_lambda(l)?;
    }
    exec.map(lambdas, |l| {
        discounted_value(game, l, width).map(|interval| TracePoint { lambda: l.clone(), interval })
    })
    .into_iter()
    .collect()
}

fn check_strategy(s: &StationaryStrategy, owner: Player, len: usize) -> Result<()> {
    if s.owner() != owner || s.len() != len {
        return Err(Error::dimension(format!(
            "expected a strategy for {owner:?} over {len} actions, got {:?} over {}",
            s.owner(),
            s.len()
        )));
    }
    Ok(())
}

/// Closed-form expected discounted payoff of a stationary pair:
///
/// ```text
/// γ_λ(x, y) = (λ·g(x,y) + (1−λ)·Σ x_i y_j q_ij w_ij) / (λ + (1−λ)·Σ x_i y_j q_ij)
/// ```
pub fn discounted_payoff(
    game: &AbsorbingGame,
    lambda: &Rational,
    x: &StationaryStrategy,
    y: &StationaryStrategy,
) -> Result<Rational> {
    check_lambda(lambda)?;
    check_strategy(x, Player::One, game.rows())?;
    check_strategy(y, Player::Two, game.cols())?;
    let mut stage = Rational::from_integer(0.into());
    let mut absorbed = stage.clone();
    let mut prob = stage.clone();
    for (i, xi) in x.probs().iter().enumerate() {
        for (j, yj) in y.probs().iter().enumerate() {
            let p = xi * yj;
            stage += &p * &game.g()[i][j];
            if let Some(w) = game.absorbing_payoff(i, j) {
                let pq = &p * &game.q()[i][j];
                absorbed += &pq * w;
                prob += pq;
            }
        }
    }
    let rest = Rational::one() - lambda;
    Ok((lambda * stage + &rest * absorbed) / (lambda + rest * prob))
}
