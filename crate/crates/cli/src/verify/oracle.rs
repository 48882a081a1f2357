//! Exhaustive support enumeration for small matrix games.
//!
//! Shares no code with the simplex solver: every pair of equal-size
//! supports is tried, the indifference equations are solved by
//! Gauss–Jordan elimination, and the first pair whose strategies are
//! nonnegative and mutually optimal yields the value.

use absorbing::Rational;
use num_traits::{One, Signed, Zero};

fn solve_linear(mut m: Vec<Vec<Rational>>, mut rhs: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = rhs.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        rhs.swap(col, pivot);
        let p = m[col][col].clone();
        for c in col..n {
            m[col][c] = &m[col][c] / &p;
        }
        rhs[col] = &rhs[col] / &p;
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone();
            for c in col..n {
                let sub = &f * &m[col][c];
                m[r][c] -= sub;
            }
            let sub = &f * &rhs[col];
            rhs[r] -= sub;
        }
    }
    Some(rhs)
}

fn subsets(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u32..1 << n)
        .filter(move |m| m.count_ones() as usize == k)
        .map(move |m| (0..n).filter(|i| m >> i & 1 == 1).collect())
}

// weights on `rows` equalizing the payoff over `cols`, and that payoff
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
    let mut sol = solve_linear(m, rhs)?;
    let v = sol.pop()?;
    Some((sol, v))
}

pub fn support_enumeration_value(a: &[Vec<Rational>]) -> Rational {
    let (m, n) = (a.len(), a[0].len());
    let at: Vec<Vec<Rational>> = (0..n).map(|j| (0..m).map(|i| a[i][j].clone()).collect()).collect();
    for k in 1..=m.min(n) {
        for rows in subsets(m, k) {
            for cols in subsets(n, k) {
                let Some((xs, v)) = equalize(a, &rows, &cols) else { continue };
                let Some((ys, v2)) = equalize(&at, &cols, &rows) else { continue };
                if v != v2 || xs.iter().chain(&ys).any(Signed::is_negative) {
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
                let secures = (0..n).all(|j| (0..m).map(|i| &x[i] * &a[i][j]).sum::<Rational>() >= v);
                let caps = (0..m).all(|i| (0..n).map(|j| &y[j] * &a[i][j]).sum::<Rational>() <= v);
                if secures && caps {
                    return v;
                }
            }
        }
    }
    unreachable!("every finite matrix game has an equilibrium on square supports")
}

#[cfg(test)]
mod tests {
    use super::*;
    use absorbing::exactalg::{int, rat};

    #[test]
    fn small_games() {
        let a = vec![vec![int(3), int(1)], vec![int(0), int(2)]];
        assert_eq!(support_enumeration_value(&a), rat(3, 2));
        let b = vec![vec![int(1), int(-1)], vec![int(-1), int(1)]];
        assert_eq!(support_enumeration_value(&b), int(0));
        // saddle point
        let c = vec![vec![int(4), int(5)], vec![int(1), int(7)]];
        assert_eq!(support_enumeration_value(&c), int(4));
    }
}
