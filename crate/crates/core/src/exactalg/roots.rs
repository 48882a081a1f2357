//! Real root isolation by Sturm sequences and exact bisection.

use std::cmp::Ordering;

use num_traits::{One, Signed, Zero};

use super::rational::{abs, half, int, Interval, Rational};
use super::unipoly::UniPoly;
use crate::error::{Error, Result};

/// Sturm sequence of a square-free polynomial. Every member is rescaled by a
/// positive constant, which leaves sign variations unchanged.
#[derive(Debug, Clone)]
pub struct SturmSequence {
    seq: Vec<UniPoly>,
}

impl SturmSequence {
    /// `p` should be square-free; otherwise counts refer to distinct roots
    /// of `p / gcd(p, p')` only where that quotient is passed in.
    pub fn new(p: &UniPoly) -> Self {
        let mut seq = vec![p.clone()];
        if p.degree().unwrap_or(0) == 0 {
            return SturmSequence { seq };
        }
        seq.push(p.derivative());
        loop {
            let n = seq.len();
            let r = seq[n - 2].div_rem(&seq[n - 1]).1;
            if r.is_zero() {
                break;
            }
            let lead = abs(r.leading().unwrap());
            seq.push(r.scale(&(-Rational::one() / lead)));
        }
        SturmSequence { seq }
    }

    pub fn variations(&self, x: &Rational) -> usize {
        count_changes(self.seq.iter().map(|p| p.sign_at(x)))
    }

    fn variations_at_infinity(&self, positive: bool) -> usize {
        count_changes(self.seq.iter().map(|p| {
            let s = p.leading().unwrap().cmp(&Rational::zero());
            if !positive && p.degree().unwrap() % 2 == 1 {
                s.reverse()
            } else {
                s
            }
        }))
    }

    /// Number of distinct roots in the half-open interval `(lo, hi]`.
    pub fn count_half_open(&self, lo: &Rational, hi: &Rational) -> usize {
        self.variations(lo).saturating_sub(self.variations(hi))
    }

    pub fn count_real(&self) -> usize {
        self.variations_at_infinity(false) - self.variations_at_infinity(true)
    }
}

fn count_changes(signs: impl Iterator<Item = Ordering>) -> usize {
    let mut last = Ordering::Equal;
    let mut changes = 0;
    for s in signs.filter(|s| *s != Ordering::Equal) {
        if last != Ordering::Equal && s != last {
            changes += 1;
        }
        last = s;
    }
    changes
}

fn nonzero(p: &UniPoly) -> Result<()> {
    if p.is_zero() {
        Err(Error::domain("the zero polynomial has no isolated roots"))
    } else {
        Ok(())
    }
}

/// Integer bound strictly exceeding the modulus of every root.
fn root_bound(p: &UniPoly) -> Rational {
    let lead = abs(p.leading().unwrap());
    let max = p
        .coeffs()
        .iter()
        .map(|c| abs(c) / &lead)
        .max()
        .unwrap_or_else(Rational::zero);
    (max + int(1)).ceil() + int(1)
}

/// A point of `(lo, hi)` that is not a root of `p`, as close to the midpoint
/// as the search allows.
fn split_point(p: &UniPoly, lo: &Rational, hi: &Rational) -> Rational {
    let mid = (lo + hi) * half();
    if !p.eval(&mid).is_zero() {
        return mid;
    }
    let w = hi - lo;
    for d in 3i64.. {
        for j in 1..d {
            let x = lo + &w * Rational::new(j.into(), d.into());
            if !p.eval(&x).is_zero() {
                return x;
            }
        }
    }
    unreachable!()
}

/// Disjoint isolating intervals, sorted, one per distinct real root. Interval
/// endpoints are never roots, so each root lies strictly inside its interval.
pub fn isolate_real_roots(p: &UniPoly) -> Result<Vec<Interval>> {
    nonzero(p)?;
    let sf = p.square_free();
    if sf.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let sturm = SturmSequence::new(&sf);
    let b = root_bound(&sf);
    let mut out = Vec::new();
    let mut stack = vec![(-b.clone(), b)];
    while let Some((lo, hi)) = stack.pop() {
        match sturm.count_half_open(&lo, &hi) {
            0 => {}
            1 => out.push(Interval::new(lo, hi)),
            _ => {
                let mid = split_point(&sf, &lo, &hi);
                stack.push((lo, mid.clone()));
                stack.push((mid, hi));
            }
        }
    }
    out.sort_by(|a, b| a.lo.cmp(&b.lo));
    Ok(out)
}

/// Number of distinct roots of `p` in the closed interval.
pub fn count_roots_closed(p: &UniPoly, interval: &Interval) -> Result<usize> {
    nonzero(p)?;
    let sf = p.square_free();
    if sf.degree() == Some(0) {
        return Ok(0);
    }
    let sturm = SturmSequence::new(&sf);
    let at_lo = usize::from(sf.eval(&interval.lo).is_zero());
    Ok(sturm.count_half_open(&interval.lo, &interval.hi) + at_lo)
}

/// Shrinks an isolating interval to width at most `width` by exact bisection.
/// Lands on a degenerate interval when a bisection point hits the root.
pub fn refine_root(p: &UniPoly, interval: &Interval, width: &Rational) -> Result<Interval> {
    if !width.is_positive() {
        return Err(Error::domain("refinement width must be positive"));
    }
    if count_roots_closed(p, interval)? != 1 {
        return Err(Error::domain(format!("{interval} does not isolate a single root of {p}")));
    }
    let sf = p.square_free();
    let (mut lo, mut hi) = (interval.lo.clone(), interval.hi.clone());
    let mut s_lo = sf.sign_at(&lo);
    if s_lo == Ordering::Equal {
        return Ok(Interval::point(lo));
    }
    if sf.sign_at(&hi) == Ordering::Equal {
        return Ok(Interval::point(hi));
    }
    while &(&hi - &lo) > width {
        let mid = (&lo + &hi) * half();
        match sf.sign_at(&mid) {
            Ordering::Equal => return Ok(Interval::point(mid)),
            s if s == s_lo => {
                lo = mid;
                s_lo = s;
            }
            _ => hi = mid,
        }
    }
    Ok(Interval::new(lo, hi))
}

/// The rational with the smallest denominator in `[lo, hi]`.
pub(crate) fn simplest_between(lo: &Rational, hi: &Rational) -> Rational {
    debug_assert!(lo <= hi);
    if !lo.is_positive() && !hi.is_negative() {
        return Rational::zero();
    }
    if hi.is_negative() {
        return -simplest_between(&-hi.clone(), &-lo.clone());
    }
    let c = lo.ceil();
    if &c <= hi {
        return c;
    }
    let fl = lo.floor();
    let inner = simplest_between(&(Rational::one() / (hi - &fl)), &(Rational::one() / (lo - &fl)));
    fl + Rational::one() / inner
}

/// All rational roots, ascending.
///
/// By the rational root theorem a root `r/s` in lowest terms of the primitive
/// integer polynomial has `s` dividing the leading coefficient `a`. Two such
/// fractions are at least `1/a²` apart, so once an isolating interval is that
/// narrow its simplest fraction is the only possible rational root in it.
pub fn rational_roots(p: &UniPoly) -> Result<Vec<Rational>> {
    nonzero(p)?;
    let sf = p.square_free();
    let lead = Rational::from_integer(sf.integer_coeffs().last().unwrap().abs());
    let width = Rational::one() / (&lead * &lead * int(2));
    let mut out = Vec::new();
    for iv in isolate_real_roots(&sf)? {
        let iv = refine_root(&sf, &iv, &width)?;
        let r = simplest_between(&iv.lo, &iv.hi);
        if sf.eval(&r).is_zero() {
            out.push(r);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{rat, to_f64};

    fn cubic() -> UniPoly {
        UniPoly::from_ints(&[-7, 10, -5, 1])
    }

    #[test]
    fn cubic_has_one_real_root_in_unit_window() {
        let ivs = isolate_real_roots(&cubic()).unwrap();
        assert_eq!(ivs.len(), 1);
        let r = refine_root(&cubic(), &ivs[0], &rat(1, 1_000_000)).unwrap();
        assert!(r.lo > int(1) && r.hi < int(2));
        assert!((to_f64(&r.midpoint()) - 1.430160).abs() < 1e-6);
    }

    #[test]
    fn two_roots_and_none() {
        let ivs = isolate_real_roots(&UniPoly::from_ints(&[-2, 0, 1])).unwrap();
        assert_eq!(ivs.len(), 2);
        assert!(ivs[0].hi < int(0) && ivs[1].lo > int(0) || ivs[0].hi <= ivs[1].lo);
        assert!(isolate_real_roots(&UniPoly::from_ints(&[1, 0, 1])).unwrap().is_empty());
        assert!(isolate_real_roots(&UniPoly::zero()).is_err());
    }

    #[test]
    fn refine_hits_rational_root_exactly() {
        let p = UniPoly::new(vec![rat(-1, 2), int(1)]);
        let r = refine_root(&p, &Interval::new(int(0), int(1)), &rat(1, 1_000_000_000)).unwrap();
        assert_eq!(r, Interval::point(rat(1, 2)));
    }

    #[test]
    fn refine_rejects_non_isolating_interval() {
        let p = UniPoly::from_ints(&[-2, 0, 1]);
        let err = refine_root(&p, &Interval::new(int(-2), int(2)), &rat(1, 10));
        assert!(matches!(err, Err(Error::Domain(_))));
        let err = refine_root(&p, &Interval::new(int(2), int(3)), &rat(1, 10));
        assert!(matches!(err, Err(Error::Domain(_))));
    }

    #[test]
    fn rational_roots_examples() {
        assert!(rational_roots(&cubic()).unwrap().is_empty());
        assert_eq!(rational_roots(&UniPoly::from_ints(&[-4, 0, 1])).unwrap(), vec![int(-2), int(2)]);
        assert_eq!(rational_roots(&UniPoly::from_ints(&[1, -2])).unwrap(), vec![rat(1, 2)]);
        // 6z^3 - 5z^2 - 2z + 1 = (z - 1)(2z + 1)(3z - 1)
        assert_eq!(
            rational_roots(&UniPoly::from_ints(&[1, -2, -5, 6])).unwrap(),
            vec![rat(-1, 2), rat(1, 3), int(1)]
        );
    }

    #[test]
    fn simplest_fraction() {
        assert_eq!(simplest_between(&rat(3, 10), &rat(2, 5)), rat(1, 3));
        assert_eq!(simplest_between(&rat(-2, 5), &rat(-3, 10)), rat(-1, 3));
        assert_eq!(simplest_between(&rat(-1, 5), &rat(1, 5)), int(0));
        assert_eq!(simplest_between(&rat(7, 2), &rat(9, 2)), int(4));
    }

    #[test]
    fn sturm_counts() {
        let s = SturmSequence::new(&UniPoly::from_ints(&[0, -1, 0, 1])); // z^3 - z
        assert_eq!(s.count_real(), 3);
        assert_eq!(s.count_half_open(&int(-1), &int(1)), 2);
        assert_eq!(s.count_half_open(&rat(-1, 2), &rat(1, 2)), 1);
    }
}
