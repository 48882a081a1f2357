//! Exact rational and polynomial arithmetic.

mod algebraic;
mod bipoly;
pub(crate) mod det;
mod rational;
mod roots;
mod unipoly;

pub use algebraic::{minimal_poly_candidate, AlgebraicNumber, RealRoot};
pub use bipoly::BiPoly;
pub use det::{det_poly, det_rational, square_minors, Ring};
pub use rational::{
    format_decimal, int, parse_number, parse_rational, rat, to_f64, Interval, ParseRationalError,
    Rational,
};
pub(crate) use rational::half;
pub use roots::{count_roots_closed, isolate_real_roots, rational_roots, refine_root, SturmSequence};
pub use unipoly::UniPoly;
