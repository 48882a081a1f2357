//! Limit values.
//!
//! At every discount factor some square sub-matrix of `W_λ(z)` (the support
//! of a pair of extreme optimal strategies) has a determinant vanishing at
//! `z = v_λ`. Dividing each such determinant by its lowest power of `λ` and
//! letting `λ → 0` leaves finitely many polynomials in `z`, and the limit
//! value is a root of one of them. The pipeline enumerates all of them,
//! then picks the root the discounted values converge to along a
//! decreasing λ-schedule.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::discounted::{lambda_sweep, TracePoint};
use super::wmatrix::WMatrix;
use crate::error::{Error, Result};
use crate::exactalg::{
    det::mask_indices, isolate_real_roots, minimal_poly_candidate, rational_roots, square_minors, to_f64,
    AlgebraicNumber, Interval, Rational, RealRoot, UniPoly,
};
use crate::exec::Execution;
use crate::game::AbsorbingGame;

/// Candidate limit polynomial: the λ-normalized determinant of the square
/// sub-matrix `rows × cols` of `W_λ(z)`, square-free and primitive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Candidate {
    pub poly: UniPoly,
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

/// Every distinct candidate polynomial of positive degree, ordered by kernel
/// size and then by kernel position; the first kernel producing a
/// polynomial is kept as its provenance.
pub fn limit_candidates(game: &AbsorbingGame) -> Result<Vec<Candidate>> {
    let w = WMatrix::symbolic(game);
    let minors = square_minors(w.entries())?;
    let mut keys: Vec<(u32, u32)> = minors.keys().copied().collect();
    keys.sort_by_key(|&(r, c)| (r.count_ones(), r, c));
    let mut out: Vec<Candidate> = Vec::new();
    for key in keys {
        let det = &minors[&key];
        if det.is_zero() {
            continue;
        }
        let poly = det.lambda_normalize()?.square_free();
        if poly.degree().unwrap_or(0) == 0 || out.iter().any(|c| c.poly == poly) {
            continue;
        }
        out.push(Candidate { poly, rows: mask_indices(key.0), cols: mask_indices(key.1) });
    }
    Ok(out)
}

/// Certified (or best-guess) limit value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LimitValue {
    Rational(Rational),
    Algebraic(AlgebraicNumber),
}

impl LimitValue {
    pub fn is_rational(&self) -> bool {
        matches!(self, LimitValue::Rational(_))
    }

    /// Primitive polynomial annihilating the value (`z − r` when rational).
    pub fn poly(&self) -> UniPoly {
        match self {
            LimitValue::Rational(r) => UniPoly::linear_root(r).primitive(),
            LimitValue::Algebraic(a) => a.poly().clone(),
        }
    }

    pub fn refine(&self, width: &Rational) -> Interval {
        match self {
            LimitValue::Rational(r) => Interval::point(r.clone()),
            LimitValue::Algebraic(a) => a.refine(width),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            LimitValue::Rational(r) => to_f64(r),
            LimitValue::Algebraic(a) => a.to_f64(),
        }
    }
}

impl fmt::Display for LimitValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LimitValue::Rational(r) => write!(f, "{r}"),
            LimitValue::Algebraic(a) => write!(f, "{a}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LimitOptions {
    /// Largest accepted distance between the chosen root and the discounted
    /// value at the smallest λ.
    pub tol: Rational,
    /// Strictly decreasing discount factors in `(0, 1)`.
    pub schedule: Vec<Rational>,
    /// Bisection width of each discounted value.
    pub width: Rational,
    /// How many further decades may be appended while the distances are
    /// still shrinking but above `tol`.
    pub extra_decades: u32,
    pub exec: Execution,
}

fn pow10_inv(e: u32) -> Rational {
    Rational::new(BigInt::one(), num_traits::pow(BigInt::from(10), e as usize))
}

impl LimitOptions {
    /// `λ = 10⁻¹, …, 10⁻ᵉ`
    pub fn decades(last_exponent: u32) -> Vec<Rational> {
        (1..=last_exponent).map(pow10_inv).collect()
    }
}

impl Default for LimitOptions {
    fn default() -> Self {
        LimitOptions {
            tol: pow10_inv(3),
            schedule: Self::decades(7),
            width: pow10_inv(12),
            extra_decades: 5,
            exec: Execution::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LimitResult {
    /// Root that the discounted values approach; `None` when no candidate
    /// has a real root or the closest two are equidistant.
    pub value: Option<LimitValue>,
    pub candidates: Vec<Candidate>,
    pub lambda_trace: Vec<TracePoint>,
    /// Distance from `value` to each trace interval. The trace may be
    /// longer than the requested schedule; see [`LimitOptions::extra_decades`].
    pub distances: Vec<Rational>,
    pub certified: bool,
    /// Why certification failed, if it did.
    pub reason: Option<String>,
}

/// Discounted values along `opts.schedule` matched against the real roots of
/// every candidate polynomial.
///
/// The root nearest the last discounted value is selected. It is certified
/// when that distance is within `opts.tol` and the distances over the second
/// half of the trace never increase by more than the bisection noise.
/// Equidistant nearest roots are never certified. When the distances are
/// still shrinking but not yet within `opts.tol`, the schedule is extended
/// by up to `opts.extra_decades` further factors of ten.
pub fn limit_value(game: &AbsorbingGame, opts: &LimitOptions) -> Result<LimitResult> {
    if opts.schedule.is_empty() {
        return Err(Error::domain("empty λ-schedule"));
    }
    if opts.schedule.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::domain("λ-schedule must be strictly decreasing"));
    }
    if opts.tol <= Rational::zero() {
        return Err(Error::domain("tolerance must be positive"));
    }
    let candidates = limit_candidates(game)?;
    let mut trace = lambda_sweep(game, &opts.schedule, &opts.width, opts.exec)?;

    let root_width = (&opts.width).min(&opts.tol) / Rational::from_integer(BigInt::from(1 << 10));
    let mut roots: Vec<RealRoot> = Vec::new();
    for c in &candidates {
        // rational roots become exact point intervals
        let rational = rational_roots(&c.poly)?;
        for iv in isolate_real_roots(&c.poly)? {
            let iv = match rational.iter().find(|r| iv.contains(r)) {
                Some(r) => Interval::point(r.clone()),
                None => iv,
            };
            let r = RealRoot::new(&c.poly, iv)?;
            if !roots.iter().any(|o| o.same_as(&r)) {
                roots.push(r);
            }
        }
    }
    for r in &mut roots {
        r.refine(&root_width);
    }

    let mut extra = 0;
    let assessment = loop {
        let a = assess(&roots, &trace, opts, &root_width);
        let extendable = matches!(&a, Assessment::Selected { close: false, monotone: true, .. });
        if !extendable || extra >= opts.extra_decades {
            break a;
        }
        let next = &trace.last().unwrap().lambda / Rational::from_integer(BigInt::from(10));
        let interval = super::discounted::discounted_value(game, &next, &opts.width)?;
        trace.push(TracePoint { lambda: next, interval });
        extra += 1;
    };

    let mut result = LimitResult {
        value: None,
        candidates,
        lambda_trace: trace,
        distances: Vec::new(),
        certified: false,
        reason: None,
    };
    let (index, distances, close, monotone) = match assessment {
        Assessment::NoRoots => {
            result.reason = Some("no candidate polynomial has a real root".into());
            return Ok(result);
        }
        Assessment::Tie => {
            result.reason = Some("two candidate roots are equally close to the last discounted value".into());
            return Ok(result);
        }
        Assessment::Selected { index, distances, close, monotone } => (index, distances, close, monotone),
    };
    result.certified = close && monotone;
    if !close {
        result.reason = Some(format!(
            "nearest candidate root is {} away from the last discounted value (tol {})",
            crate::exactalg::format_decimal(distances.last().unwrap(), 4),
            crate::exactalg::format_decimal(&opts.tol, 4)
        ));
    } else if !monotone {
        result.reason = Some("distances to the nearest root do not shrink along the schedule".into());
    }
    result.distances = distances;

    let chosen = &roots[index];
    let rational = rational_roots(chosen.poly())?.into_iter().find(|r| chosen.interval().contains(r));
    result.value = Some(match rational {
        Some(r) => LimitValue::Rational(r),
        None => LimitValue::Algebraic(minimal_poly_candidate(chosen.poly(), chosen.interval())?),
    });
    Ok(result)
}

enum Assessment {
    NoRoots,
    Tie,
    Selected { index: usize, distances: Vec<Rational>, close: bool, monotone: bool },
}

fn assess(roots: &[RealRoot], trace: &[TracePoint], opts: &LimitOptions, root_width: &Rational) -> Assessment {
    if roots.is_empty() {
        return Assessment::NoRoots;
    }
    let two = Rational::from_integer(2.into());
    let last = &trace.last().unwrap().interval;
    let mut ranked: Vec<(Rational, usize)> = roots
        .iter()
        .enumerate()
        .map(|(i, r)| (last.distance_to(&r.interval().midpoint()), i))
        .collect();
    ranked.sort();
    if ranked.len() > 1 && &ranked[1].0 - &ranked[0].0 <= root_width * &two {
        return Assessment::Tie;
    }
    let index = ranked[0].1;
    let mid = roots[index].interval().midpoint();
    let distances: Vec<Rational> = trace.iter().map(|t| t.interval.distance_to(&mid)).collect();
    let n = distances.len();
    let tail = n.min(3.max(n.div_ceil(2)));
    let slack = (&opts.width + root_width) * &two;
    let monotone = distances[n - tail..].windows(2).all(|w| w[1] <= &w[0] + &slack);
    let close = ranked[0].0 <= opts.tol;
    Assessment::Selected { index, distances, close, monotone }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RationalCheck {
    Rational(Rational),
    /// Transitions are not deterministic, or both players have 3+ actions.
    NotApplicable,
}

/// For a deterministic-transition game where one player has at most two
/// actions, certifies the limit value and checks that it is rational.
///
/// An uncertified limit is reported as a domain error; a certified
/// irrational limit is an [`Error::InvariantViolation`], since such games
/// always have rational limit values.
pub fn rational_limit_certificate(game: &AbsorbingGame) -> Result<RationalCheck> {
    rational_limit_certificate_with(game, &LimitOptions::default())
}

pub fn rational_limit_certificate_with(game: &AbsorbingGame, opts: &LimitOptions) -> Result<RationalCheck> {
    if !game.is_deterministic() || game.rows().min(game.cols()) >= 3 {
        return Ok(RationalCheck::NotApplicable);
    }
    let res = limit_value(game, opts)?;
    if !res.certified {
        return Err(Error::domain(format!(
            "limit value not certified: {}",
            res.reason.unwrap_or_default()
        )));
    }
    match res.value {
        Some(LimitValue::Rational(r)) => Ok(RationalCheck::Rational(r)),
        Some(LimitValue::Algebraic(a)) => Err(Error::InvariantViolation(format!(
            "deterministic game with a player of at most two actions has irrational limit {a}"
        ))),
        None => unreachable!("certified results carry a value"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{int, rat};
    use crate::game::Builtin;

    fn polys(game: &AbsorbingGame) -> Vec<UniPoly> {
        limit_candidates(game).unwrap().into_iter().map(|c| c.poly).collect()
    }

    #[test]
    fn big_match_candidates() {
        let ps = polys(&Builtin::BigMatch.game());
        // 1 - z, -z (twice, deduplicated), 1 - 2z
        assert!(ps.contains(&UniPoly::from_ints(&[-1, 1])));
        assert!(ps.contains(&UniPoly::from_ints(&[0, 1])));
        assert!(ps.contains(&UniPoly::from_ints(&[-1, 2])));
        assert_eq!(ps.len(), 3);
    }

    #[test]
    fn cubic_candidate_present() {
        let cs = limit_candidates(&Builtin::CubicLimit.game()).unwrap();
        let c = cs.iter().find(|c| c.poly == UniPoly::from_ints(&[-7, 10, -5, 1])).unwrap();
        assert_eq!((c.rows.len(), c.cols.len()), (3, 3));
    }

    #[test]
    fn sqrt_k_candidate_present() {
        for k in [2i64, 3, 5] {
            let ps = polys(&Builtin::SqrtK(k as u32).game());
            assert!(ps.contains(&UniPoly::from_ints(&[-k, 0, 1])), "k = {k}");
        }
    }

    #[test]
    fn big_match_limit() {
        let r = limit_value(&Builtin::BigMatch.game(), &LimitOptions::default()).unwrap();
        assert!(r.certified, "{:?}", r.reason);
        assert_eq!(r.value, Some(LimitValue::Rational(rat(1, 2))));
        assert!(r.distances.iter().all(Zero::is_zero));
    }

    #[test]
    fn sqrt_two_limit() {
        let r = limit_value(&Builtin::SqrtK(2).game(), &LimitOptions::default()).unwrap();
        assert!(r.certified, "{:?}", r.reason);
        let Some(LimitValue::Algebraic(a)) = &r.value else { panic!("{:?}", r.value) };
        assert_eq!(a.poly(), &UniPoly::from_ints(&[-2, 0, 1]));
        assert!((a.to_f64() - std::f64::consts::SQRT_2).abs() < 1e-12);
    }

    #[test]
    fn schedule_validation() {
        let g = Builtin::BigMatch.game();
        let bad = LimitOptions { schedule: vec![rat(1, 100), rat(1, 10)], ..Default::default() };
        assert!(limit_value(&g, &bad).is_err());
        let bad = LimitOptions { schedule: vec![], ..Default::default() };
        assert!(limit_value(&g, &bad).is_err());
        let bad = LimitOptions { tol: int(0), ..Default::default() };
        assert!(limit_value(&g, &bad).is_err());
    }

    #[test]
    fn theorem_scope() {
        assert_eq!(rational_limit_certificate(&Builtin::CubicLimit.game()).unwrap(), RationalCheck::NotApplicable);
        assert_eq!(rational_limit_certificate(&Builtin::SqrtK(2).game()).unwrap(), RationalCheck::NotApplicable);
        assert_eq!(
            rational_limit_certificate(&Builtin::BigMatch.game()).unwrap(),
            RationalCheck::Rational(rat(1, 2))
        );
    }
}
