#![allow(dead_code)]

use absorbing::exactalg::{int, rat};
use absorbing::{AbsorbingGame, Rational};
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

pub fn matrix(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
    rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect()
}

/// Solves `M u = rhs` by Gauss–Jordan elimination; `None` when singular.
pub fn solve_linear(mut m: Vec<Vec<Rational>>, mut rhs: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = rhs.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        rhs.swap(col, pivot);
        let p = m[col][col].clone();
        for c in 0..n {
            m[col][c] = &m[col][c] / &p;
        }
        rhs[col] = &rhs[col] / &p;
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in 0..n {
                    let sub = &f * &m[col][c];
                    m[r][c] -= sub;
                }
                let sub = &f * &rhs[col];
                rhs[r] -= sub;
            }
        }
    }
    Some(rhs)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect())
        .collect()
}

/// Indifference system on supports `rows`×`cols`: weights on `rows` that
/// make every column of `cols` pay the same amount `v`.
fn equalize(a: &[Vec<Rational>], rows: &[usize], cols: &[usize]) -> Option<(Vec<Rational>, Rational)> {
    let k = rows.len();
    let mut m = vec![vec![Rational::zero(); k + 1]; k + 1];
    let mut rhs = vec![Rational::zero(); k + 1];
    for (e, &j) in cols.iter().enumerate() {
        for (u, &i) in rows.iter().enumerate() {
            m[e][u] = a[i][j].clone();
        }
        m[e][k] = -Rational::one();
    }
    for u in 0..k {
        m[k][u] = Rational::one();
    }
    rhs[k] = Rational::one();
    let sol = solve_linear(m, rhs)?;
    let v = sol[k].clone();
    Some((sol[..k].to_vec(), v))
}

/// Exhaustive support-enumeration oracle: value and an optimal pair.
pub fn oracle_solve(a: &[Vec<Rational>]) -> (Rational, Vec<Rational>, Vec<Rational>) {
    let m = a.len();
    let n = a[0].len();
    let at: Vec<Vec<Rational>> = (0..n).map(|j| (0..m).map(|i| a[i][j].clone()).collect()).collect();
    for k in 1..=m.min(n) {
        for rows in subsets(m, k) {
            for cols in subsets(n, k) {
                let Some((xs, v)) = equalize(a, &rows, &cols) else { continue };
                let Some((ys, v2)) = equalize(&at, &cols, &rows) else { continue };
                if v != v2 || xs.iter().chain(&ys).any(|p| p.is_negative()) {
                    continue;
                }
                let mut x = vec![Rational::zero(); m];
                for (u, &i) in rows.iter().enumerate() {
                    x[i] = xs[u].clone();
                }
                let mut y = vec![Rational::zero(); n];
                for (u, &j) in cols.iter().enumerate() {
                    y[j] = ys[u].clone();
                }
                let col_ok = (0..n).all(|j| (0..m).map(|i| &x[i] * &a[i][j]).sum::<Rational>() >= v);
                let row_ok = (0..m).all(|i| (0..n).map(|j| &y[j] * &a[i][j]).sum::<Rational>() <= v);
                if col_ok && row_ok {
                    return (v, x, y);
                }
            }
        }
    }
    panic!("support enumeration found no equilibrium");
}

pub fn oracle_value(a: &[Vec<Rational>]) -> Rational {
    oracle_solve(a).0
}

fn round(r: &Rational, bits: u32) -> Rational {
    let scale = Rational::from_integer(num_bigint::BigInt::one() << bits);
    (r * &scale).round() / scale
}

/// Discounted value by iterating the Shapley operator
/// `v ↦ val[λg + (1−λ)(q·w + (1−q)·v)]`, rounding to 2⁻⁶⁰ each step.
/// Returns the iterate and a bound on its distance to `v_λ`.
pub fn shapley_value(game: &AbsorbingGame, lambda: &Rational, iterations: usize) -> (Rational, f64) {
    let one = Rational::one();
    let (mut v, hi) = game.payoff_range();
    let span = absorbing::exactalg::to_f64(&(&hi - &v)).abs() + 1.0;
    let mut delta = f64::INFINITY;
    for _ in 0..iterations {
        let a: Vec<Vec<Rational>> = (0..game.rows())
            .map(|i| {
                (0..game.cols())
                    .map(|j| {
                        let q = &game.q()[i][j];
                        let cont = match game.absorbing_payoff(i, j) {
                            Some(w) => q * w + (&one - q) * &v,
                            None => v.clone(),
                        };
                        lambda * &game.g()[i][j] + (&one - lambda) * cont
                    })
                    .collect()
            })
            .collect();
        let next = round(&oracle_value(&a), 60);
        delta = absorbing::exactalg::to_f64(&(&next - &v)).abs();
        v = next;
    }
    let l = absorbing::exactalg::to_f64(lambda);
    // contraction with factor (1−λ), plus rounding
    let bound = delta * (1.0 - l) / l + 1e-15 * span / l;
    (v, bound)
}

pub fn small_int() -> impl Strategy<Value = i64> {
    -9i64..=9
}

pub fn int_matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = Vec<Vec<Rational>>> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(m, n)| {
        prop::collection::vec(prop::collection::vec(small_int().prop_map(int), n), m)
    })
}

fn rational_in_unit() -> impl Strategy<Value = Rational> {
    prop_oneof![Just(int(0)), Just(int(1)), (1i64..=5, 2i64..=6).prop_map(|(a, b)| rat(a.min(b), b))]
}

/// Random general absorbing game up to `max`×`max` with small payoffs.
pub fn game(max: usize) -> impl Strategy<Value = AbsorbingGame> {
    (1..=max, 1..=max).prop_flat_map(|(m, n)| {
        let cell = (-5i64..=5, rational_in_unit(), -5i64..=5);
        prop::collection::vec(prop::collection::vec(cell, n), m).prop_map(|cells| {
            let g = cells.iter().map(|r| r.iter().map(|c| int(c.0)).collect()).collect();
            let q = cells.iter().map(|r| r.iter().map(|c| c.1.clone()).collect()).collect();
            let w = cells
                .iter()
                .map(|r| r.iter().map(|c| if c.1.is_zero() { int(0) } else { int(c.2) }).collect())
                .collect();
            AbsorbingGame::new(g, q, w).unwrap()
        })
    })
}

pub fn lambda() -> impl Strategy<Value = Rational> {
    (1i64..=9, 2i64..=40).prop_filter_map("λ in (0,1)", |(a, b)| (a < b).then(|| rat(a, b)))
}
