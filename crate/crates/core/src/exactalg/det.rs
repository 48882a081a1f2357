use std::collections::HashMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::bipoly::BiPoly;
use super::rational::Rational;
use crate::error::{Error, Result};

/// Commutative ring operations needed for cofactor expansion.
pub trait Ring:
    Clone + Zero + One + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
}

impl<T> Ring for T where
    T: Clone + Zero + One + Add<Output = T> + Sub<Output = T> + Mul<Output = T> + Neg<Output = T>
{
}

fn check_square<T>(matrix: &[Vec<T>]) -> Result<usize> {
    let n = matrix.len();
    if n == 0 {
        return Err(Error::dimension("determinant of an empty matrix"));
    }
    if let Some(row) = matrix.iter().position(|r| r.len() != n) {
        return Err(Error::dimension(format!(
            "matrix is not square: row {} has {} entries, expected {n}",
            row + 1,
            matrix[row].len()
        )));
    }
    if n > 24 {
        return Err(Error::dimension(format!("matrix side {n} is too large")));
    }
    Ok(n)
}

/// Laplace expansion along rows, memoized on the set of remaining columns:
/// `O(n·2ⁿ)` ring multiplications and no division.
pub fn det_generic<T: Ring>(matrix: &[Vec<T>]) -> Result<T> {
    let n = check_square(matrix)?;
    let full = (1usize << n) - 1;
    let mut memo: Vec<T> = Vec::with_capacity(full + 1);
    memo.push(T::one());
    for mask in 1..=full {
        let row = n - mask.count_ones() as usize;
        let mut acc = T::zero();
        let mut rank = 0;
        for c in 0..n {
            if mask & (1 << c) == 0 {
                continue;
            }
            let entry = &matrix[row][c];
            if !entry.is_zero() {
                let term = entry.clone() * memo[mask & !(1 << c)].clone();
                acc = if rank % 2 == 0 { acc + term } else { acc - term };
            }
            rank += 1;
        }
        memo.push(acc);
    }
    Ok(memo.pop().unwrap())
}

/// Exact determinant of a square matrix of bivariate polynomials.
pub fn det_poly(matrix: &[Vec<BiPoly>]) -> Result<BiPoly> {
    det_generic(matrix)
}

/// Exact determinant of a rational matrix by fraction-free (Bareiss)
/// elimination on the row-wise denominator-cleared integer matrix.
pub fn det_rational(matrix: &[Vec<Rational>]) -> Result<Rational> {
    let n = check_square(matrix)?;
    let mut scale = BigInt::one();
    let mut a: Vec<Vec<BigInt>> = matrix
        .iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            let out = row
                .iter()
                .map(|x| x.numer() * (&l / x.denom()))
                .collect::<Vec<_>>();
            scale *= l;
            out
        })
        .collect();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(p) => {
                    a.swap(k, p);
                    negate = !negate;
                }
                None => return Ok(Rational::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let det = Rational::new(a[n - 1][n - 1].clone(), scale);
    Ok(if negate { -det } else { det })
}

/// Determinants of every nonempty square sub-matrix of an `m×n` matrix,
/// keyed by `(row bitmask, column bitmask)`.
///
/// Each minor is expanded along its first row, reusing the minors one size
/// smaller, so the whole table costs `Σ_k C(m,k)·C(n,k)·k` multiplications.
pub fn square_minors<T: Ring>(matrix: &[Vec<T>]) -> Result<HashMap<(u32, u32), T>> {
    let m = matrix.len();
    let n = matrix.first().map_or(0, Vec::len);
    if m == 0 || n == 0 || matrix.iter().any(|r| r.len() != n) {
        return Err(Error::dimension("minors need a nonempty rectangular matrix"));
    }
    if m > 16 || n > 16 {
        return Err(Error::dimension("minor enumeration is limited to 16×16"));
    }
    let masks_of = |len: usize, k: u32| -> Vec<u32> {
        (1u32..(1 << len)).filter(|s| s.count_ones() == k).collect()
    };
    let mut out: HashMap<(u32, u32), T> = HashMap::new();
    for k in 1..=m.min(n) as u32 {
        let rows = masks_of(m, k);
        let cols = masks_of(n, k);
        for &rs in &rows {
            let r0 = rs.trailing_zeros() as usize;
            let rest = rs & (rs - 1);
            for &cs in &cols {
                let mut acc = T::zero();
                let mut rank = 0;
                for c in 0..n {
                    if cs & (1 << c) == 0 {
                        continue;
                    }
                    let entry = &matrix[r0][c];
                    if !entry.is_zero() {
                        let sub = if k == 1 { T::one() } else { out[&(rest, cs & !(1 << c))].clone() };
                        let term = entry.clone() * sub;
                        acc = if rank % 2 == 0 { acc + term } else { acc - term };
                    }
                    rank += 1;
                }
                out.insert((rs, cs), acc);
            }
        }
    }
    Ok(out)
}

pub(crate) fn mask_indices(mask: u32) -> Vec<usize> {
    (0..32).filter(|i| mask & (1 << i) != 0).collect()
}
