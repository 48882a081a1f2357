use std::fmt;


use super::rational::{to_f64, Interval, Rational};
use super::roots::{count_roots_closed, rational_roots, refine_root};
use super::unipoly::UniPoly;
use crate::error::{Error, Result};

/// A real root of a rational polynomial, identified by an isolating interval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealRoot {
    poly: UniPoly,
    interval: Interval,
}

impl RealRoot {
    /// `interval` must contain exactly one root of `poly`.
    pub fn new(poly: &UniPoly, interval: Interval) -> Result<Self> {
        let poly = poly.square_free();
        if count_roots_closed(&poly, &interval)? != 1 {
            return Err(Error::domain(format!("{interval} does not isolate a root of {poly}")));
        }
        Ok(RealRoot { poly, interval })
    }

    pub fn poly(&self) -> &UniPoly {
        &self.poly
    }

    pub fn interval(&self) -> &Interval {
        &self.interval
    }

    pub fn refine(&mut self, width: &Rational) {
        if &self.interval.width() > width {
            self.interval = refine_root(&self.poly, &self.interval, width)
                .expect("interval isolates by construction");
        }
    }

    /// Exact equality test: two isolated roots coincide iff the gcd of their
    /// polynomials vanishes somewhere in the intersection of their intervals.
    pub fn same_as(&self, other: &RealRoot) -> bool {
        if !self.interval.overlaps(&other.interval) {
            return false;
        }
        let g = self.poly.gcd(&other.poly);
        if g.degree().unwrap_or(0) == 0 {
            return false;
        }
        let lo = (&self.interval.lo).max(&other.interval.lo).clone();
        let hi = (&self.interval.hi).min(&other.interval.hi).clone();
        count_roots_closed(&g, &Interval::new(lo, hi)).is_ok_and(|c| c > 0)
    }

    pub fn to_f64(&self) -> f64 {
        to_f64(&self.interval.midpoint())
    }
}

/// Real algebraic number: a square-free primitive polynomial together with
/// an interval isolating one of its real roots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraicNumber {
    poly: UniPoly,
    interval: Interval,
    minimality_certified: bool,
}

impl AlgebraicNumber {
    pub fn poly(&self) -> &UniPoly {
        &self.poly
    }

    pub fn interval(&self) -> &Interval {
        &self.interval
    }

    /// True when `poly` is known to be the minimal polynomial.
    pub fn minimality_certified(&self) -> bool {
        self.minimality_certified
    }

    pub fn degree(&self) -> usize {
        self.poly.degree().unwrap_or(0)
    }

    /// Interval of width at most `width` around the number.
    pub fn refine(&self, width: &Rational) -> Interval {
        refine_root(&self.poly, &self.interval, width).expect("interval isolates by construction")
    }

    pub fn to_f64(&self) -> f64 {
        let w = Rational::new(1.into(), num_bigint::BigInt::from(10).pow(20));
        to_f64(&self.refine(&w).midpoint())
    }
}

impl fmt::Display for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "root of {} in {}", self.poly, self.interval)
    }
}

/// Minimal-polynomial candidate for the root of `p` isolated by `interval`.
///
/// The square-free part of `p` is stripped of every rational linear factor.
/// Minimality is certified for degree one, and for degree two or three,
/// where irreducibility over ℚ is equivalent to having no rational root.
/// Higher degrees are returned uncertified.
pub fn minimal_poly_candidate(p: &UniPoly, interval: &Interval) -> Result<AlgebraicNumber> {
    if count_roots_closed(p, interval)? != 1 {
        return Err(Error::domain(format!("{interval} does not isolate a root of {p}")));
    }
    let sf = p.square_free();
    let rational = rational_roots(&sf)?;
    if let Some(r) = rational.iter().find(|r| interval.contains(r)) {
        return Ok(AlgebraicNumber {
            poly: UniPoly::linear_root(r).primitive(),
            interval: Interval::point(r.clone()),
            minimality_certified: true,
        });
    }
    let mut reduced = sf;
    for r in &rational {
        reduced = reduced.div_rem(&UniPoly::linear_root(r)).0;
    }
    let reduced = reduced.primitive();
    let degree = reduced.degree().unwrap_or(0);
    debug_assert!(degree >= 2);
    Ok(AlgebraicNumber {
        poly: reduced,
        interval: interval.clone(),
        minimality_certified: degree <= 3,
    })
}
