//! Monte Carlo playouts of stationary strategy pairs.
//!
//! Floating point throughout; nothing in the exact pipeline consumes these
//! numbers. Sample `i` draws from its own ChaCha stream (`seed`, stream `i`),
//! so results do not depend on how samples are spread over threads.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactalg::{to_f64, Rational};
use crate::exec::Execution;
use crate::game::{AbsorbingGame, Player, StationaryStrategy};
use crate::solver::wmatrix::check_lambda;

#[derive(Debug, Clone, PartialEq)]
pub struct PlayoutConfig {
    pub lambda: Rational,
    /// Runs that never absorb are cut once the remaining weight
    /// `(1−λ)^T` drops below this.
    pub tail_eps: f64,
    pub samples: usize,
    pub seed: u64,
    pub exec: Execution,
}

impl PlayoutConfig {
    pub fn new(lambda: Rational, samples: usize, seed: u64) -> Self {
        PlayoutConfig { lambda, tail_eps: 1e-9, samples, seed, exec: Execution::default() }
    }

    fn validate(&self) -> Result<()> {
        check_lambda(&self.lambda)?;
        if !(self.tail_eps > 0.0 && self.tail_eps < 1.0) {
            return Err(Error::domain("truncation tail must lie in (0, 1)"));
        }
        if self.samples == 0 {
            return Err(Error::domain("need at least one sample"));
        }
        Ok(())
    }

    /// Smallest `T` with `(1−λ)^T < tail_eps`.
    pub fn horizon(&self) -> u64 {
        let l = to_f64(&self.lambda);
        let t = (self.tail_eps.ln() / (1.0 - l).ln()).floor() as u64 + 1;
        t.max(1)
    }
}

/// Sampling tables for one strategy pair.
#[derive(Debug, Clone)]
pub struct Playout<'g> {
    game: &'g AbsorbingGame,
    x_cdf: Vec<f64>,
    y_cdf: Vec<f64>,
    lambda: f64,
    horizon: u64,
}

fn cdf(s: &StationaryStrategy) -> Vec<f64> {
    let mut acc = 0.0;
    let mut out: Vec<f64> = s
        .probs()
        .iter()
        .map(|p| {
            acc += to_f64(p);
            acc
        })
        .collect();
    // the last action absorbs any rounding deficit
    if let Some(last) = out.last_mut() {
        *last = f64::INFINITY;
    }
    out
}

fn draw(cdf: &[f64], u: f64) -> usize {
    cdf.iter().position(|&c| u < c).unwrap_or(cdf.len() - 1)
}

impl<'g> Playout<'g> {
    pub fn new(
        game: &'g AbsorbingGame,
        x: &StationaryStrategy,
        y: &StationaryStrategy,
        config: &PlayoutConfig,
    ) -> Result<Self> {
        config.validate()?;
        if x.owner() != Player::One || x.len() != game.rows() {
            return Err(Error::dimension("x must be a row-player strategy for this game"));
        }
        if y.owner() != Player::Two || y.len() != game.cols() {
            return Err(Error::dimension("y must be a column-player strategy for this game"));
        }
        Ok(Playout {
            game,
            x_cdf: cdf(x),
            y_cdf: cdf(y),
            lambda: to_f64(&config.lambda),
            horizon: config.horizon(),
        })
    }

    /// One discounted-payoff sample. Stage `t` pays `λ(1−λ)^{t−1} g_ij`;
    /// absorption at stage `t` adds the closed-form tail `(1−λ)^t w_ij`.
    pub fn sample<R: Rng>(&self, rng: &mut R) -> f64 {
        let keep = 1.0 - self.lambda;
        let mut weight = 1.0;
        let mut total = 0.0;
        for _ in 0..self.horizon {
            let i = draw(&self.x_cdf, rng.random());
            let j = draw(&self.y_cdf, rng.random());
            total += self.lambda * weight * to_f64(&self.game.g()[i][j]);
            weight *= keep;
            if let Some(w) = self.game.absorbing_payoff(i, j) {
                let q = &self.game.q()[i][j];
                let absorbs = num_traits::One::is_one(q) || rng.random::<f64>() < to_f64(q);
                if absorbs {
                    return total + weight * to_f64(w);
                }
            }
        }
        total
    }
}

/// A single playout with a caller-provided generator.
pub fn playout<R: Rng>(
    game: &AbsorbingGame,
    x: &StationaryStrategy,
    y: &StationaryStrategy,
    config: &PlayoutConfig,
    rng: &mut R,
) -> Result<f64> {
    Ok(Playout::new(game, x, y, config)?.sample(rng))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub mean: f64,
    pub std_error: f64,
    pub samples: usize,
}

fn sample_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

/// Mean and standard error of `config.samples` independent playouts.
pub fn estimate_gamma(
    game: &AbsorbingGame,
    x: &StationaryStrategy,
    y: &StationaryStrategy,
    config: &PlayoutConfig,
) -> Result<Estimate> {
    let engine = Playout::new(game, x, y, config)?;
    let samples = config.exec.map_range(config.samples, |i| engine.sample(&mut sample_rng(config.seed, i)));
    let n = samples.len() as f64;
    let mean = samples.iter().sum::<f64>() / n;
    let var = if samples.len() > 1 {
        samples.iter().map(|s| (s - mean).powi(2)).sum::<f64>() / (n - 1.0)
    } else {
        0.0
    };
    Ok(Estimate { mean, std_error: (var / n).sqrt(), samples: samples.len() })
}
