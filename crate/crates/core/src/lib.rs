//! Exact and numeric solver for two-player zero-sum absorbing games with
//! rational data.
//!
//! The pipeline is: model a game ([`game`]), build its auxiliary matrix
//! `W_λ(z)` ([`solver::wmatrix`]), compute discounted values by bisection on
//! the sign of the one-shot value of `W_λ(z)` ([`matrixgame`]), enumerate the
//! determinants of all square sub-matrices as candidate limit polynomials and
//! match their real roots against a shrinking-λ trace ([`solver::limit`]).
//! Everything except the Monte Carlo engine in [`simulate`] is exact.

pub mod error;
pub mod exactalg;
pub mod exec;
pub mod game;
pub mod matrixgame;
pub mod simulate;
pub mod solver;

pub use error::{Error, Result};
pub use exactalg::{AlgebraicNumber, BiPoly, Interval, Rational, UniPoly};
pub use exec::Execution;
pub use game::{AbsorbingGame, Builtin, Player, QuadraticTarget, StarCell, StationaryStrategy};
pub use matrixgame::{KernelCandidate, MatrixGameSolution, Sign};
pub use solver::{
    Candidate, Guarantee, LimitOptions, LimitResult, LimitValue, RationalCheck, TracePoint,
};
