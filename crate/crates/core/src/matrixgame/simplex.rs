//! Dense tableau simplex over the rationals with Bland's rule.

use num_traits::{One, Signed, Zero};

use crate::exactalg::Rational;

#[derive(Debug, Clone)]
pub(crate) struct LpSolution {
    pub x: Vec<Rational>,
    /// Optimal dual value of each `≤` constraint.
    pub duals: Vec<Rational>,
    pub objective: Rational,
    /// Basic variable of each tableau row; indices `≥ x.len()` are slacks.
    pub basis: Vec<usize>,
}

/// Maximizes `c·x` subject to `A x ≤ b`, `x ≥ 0`, for `b ≥ 0` (so the slack
/// basis is feasible and no first phase is needed). `None` if unbounded.
pub(crate) fn maximize(c: &[Rational], a: &[Vec<Rational>], b: &[Rational]) -> Option<LpSolution> {
    let m = a.len();
    let n = c.len();
    debug_assert!(b.iter().all(|v| !v.is_negative()));
    let width = n + m + 1;
    let rhs = n + m;
    let mut t: Vec<Vec<Rational>> = (0..m)
        .map(|i| {
            let mut row = vec![Rational::zero(); width];
            row[..n].clone_from_slice(&a[i]);
            row[n + i] = Rational::one();
            row[rhs] = b[i].clone();
            row
        })
        .collect();
    let mut basis: Vec<usize> = (n..n + m).collect();
    let mut reduced: Vec<Rational> = c.iter().cloned().chain((0..m).map(|_| Rational::zero())).collect();
    let mut objective = Rational::zero();

    loop {
        let Some(enter) = reduced.iter().position(|d| d.is_positive()) else { break };
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..m {
            if !t[i][enter].is_positive() {
                continue;
            }
            let ratio = &t[i][rhs] / &t[i][enter];
            let better = match &leave {
                None => true,
                Some((r, best)) => ratio < *best || (ratio == *best && basis[i] < basis[*r]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        let (r, _) = leave?;

        let pivot = t[r][enter].clone();
        for v in t[r].iter_mut() {
            *v /= &pivot;
        }
        let pivot_row = t[r].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i == r || row[enter].is_zero() {
                continue;
            }
            let f = row[enter].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &f * p;
                }
            }
        }
        let f = reduced[enter].clone();
        objective += &f * &pivot_row[rhs];
        for (d, p) in reduced.iter_mut().zip(&pivot_row) {
            if !p.is_zero() {
                *d -= &f * p;
            }
        }
        basis[r] = enter;
    }

    let mut x = vec![Rational::zero(); n];
    for (i, &bv) in basis.iter().enumerate() {
        if bv < n {
            x[bv] = t[i][rhs].clone();
        }
    }
    let duals = (0..m).map(|i| -reduced[n + i].clone()).collect();
    Some(LpSolution { x, duals, objective, basis })
}
