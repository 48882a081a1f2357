//! One-shot zero-sum matrix games, solved exactly.

mod simplex;

pub(crate) use simplex::maximize;

use std::cmp::Ordering;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactalg::{square_minors, Rational};
use crate::game::{Player, StationaryStrategy};

/// Exact solution of a matrix game where the row player maximizes.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixGameSolution {
    pub value: Rational,
    pub row_strategy: StationaryStrategy,
    pub col_strategy: StationaryStrategy,
    /// Rows and columns of a square kernel containing both supports.
    pub kernel: (Vec<usize>, Vec<usize>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl From<Ordering> for Sign {
    fn from(o: Ordering) -> Self {
        match o {
            Ordering::Less => Sign::Negative,
            Ordering::Equal => Sign::Zero,
            Ordering::Greater => Sign::Positive,
        }
    }
}

fn dims(a: &[Vec<Rational>]) -> Result<(usize, usize)> {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    if m == 0 || n == 0 {
        return Err(Error::dimension("matrix game needs at least one row and column"));
    }
    if a.iter().any(|r| r.len() != n) {
        return Err(Error::dimension("matrix game payoffs are ragged"));
    }
    Ok((m, n))
}

/// Value and a pair of optimal strategies, by the simplex method on the
/// column player's program `max Σy s.t. A'y ≤ 1` for the shifted matrix
/// `A' = A + s ≥ 1`. The row strategy is read off the optimal duals and the
/// kernel off the final basis.
pub fn solve_exact(a: &[Vec<Rational>]) -> Result<MatrixGameSolution> {
    let (m, n) = dims(a)?;
    let min = a.iter().flatten().min().unwrap();
    let shift = Rational::one() - min;
    let shifted: Vec<Vec<Rational>> =
        a.iter().map(|r| r.iter().map(|v| v + &shift).collect()).collect();
    let ones_n = vec![Rational::one(); n];
    let ones_m = vec![Rational::one(); m];
    let lp = maximize(&ones_n, &shifted, &ones_m).expect("bounded: every entry of A' is at least 1");
    let shifted_value = Rational::one() / &lp.objective;
    let y: Vec<Rational> = lp.x.iter().map(|v| v * &shifted_value).collect();
    let x: Vec<Rational> = lp.duals.iter().map(|v| v * &shifted_value).collect();
    let kernel_cols: Vec<usize> = (0..n).filter(|j| lp.basis.contains(j)).collect();
    let kernel_rows: Vec<usize> = (0..m).filter(|i| !lp.basis.contains(&(n + i))).collect();
    debug_assert_eq!(kernel_rows.len(), kernel_cols.len());
    Ok(MatrixGameSolution {
        value: shifted_value - shift,
        row_strategy: StationaryStrategy::new(Player::One, x)?,
        col_strategy: StationaryStrategy::new(Player::Two, y)?,
        kernel: (kernel_rows, kernel_cols),
    })
}

/// Sign of the value. Pure-strategy security levels settle most calls
/// without running the simplex method.
pub fn value_sign(a: &[Vec<Rational>]) -> Result<Sign> {
    let (m, n) = dims(a)?;
    let maximin = (0..m).map(|i| a[i].iter().min().unwrap()).max().unwrap();
    if maximin.is_positive() {
        return Ok(Sign::Positive);
    }
    let minimax = (0..n).map(|j| (0..m).map(|i| &a[i][j]).max().unwrap()).min().unwrap();
    if minimax.is_negative() {
        return Ok(Sign::Negative);
    }
    if maximin.is_zero() && minimax.is_zero() {
        return Ok(Sign::Zero);
    }
    Ok(solve_exact(a)?.value.cmp(&Rational::zero()).into())
}

/// One square sub-matrix `B = A[rows, cols]` with its Shapley–Snow data.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelCandidate {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub det: Rational,
    /// Sum of all cofactors of `B`.
    pub cofactor_sum: Rational,
    /// `det(B) / cofactor_sum`, when the sum is nonzero.
    pub value: Option<Rational>,
    /// The induced strategies are nonnegative and optimal in the full game.
    pub verified: bool,
}

/// Every square sub-matrix with its candidate value `det(B) / Σ cofactors(B)`.
///
/// Candidates whose strategies `1ᵀadj(B)/c` and `adj(B)1/c` extend by zeros
/// to optimal strategies of the whole game are flagged as verified.
pub fn enumerate_kernels(a: &[Vec<Rational>]) -> Result<Vec<KernelCandidate>> {
    let (m, n) = dims(a)?;
    let minors = square_minors(a)?;
    let mut keys: Vec<(u32, u32)> = minors.keys().copied().collect();
    keys.sort_by_key(|&(r, c)| (r.count_ones(), r, c));
    let mut out = Vec::with_capacity(keys.len());
    for (rs, cs) in keys {
        let rows = bits(rs);
        let cols = bits(cs);
        let k = rows.len();
        // cofactor[a][b] = (-1)^(a+b) det(B without row a, column b)
        let cof = |ra: usize, cb: usize| -> Rational {
            if k == 1 {
                return Rational::one();
            }
            let minor = &minors[&(rs & !(1 << rows[ra]), cs & !(1 << cols[cb]))];
            if (ra + cb) % 2 == 0 {
                minor.clone()
            } else {
                -minor.clone()
            }
        };
        let table: Vec<Vec<Rational>> = (0..k).map(|ra| (0..k).map(|cb| cof(ra, cb)).collect()).collect();
        let cofactor_sum: Rational = table.iter().flatten().sum();
        let det = minors[&(rs, cs)].clone();
        let (value, verified) = if cofactor_sum.is_zero() {
            (None, false)
        } else {
            let v = &det / &cofactor_sum;
            let x: Vec<Rational> = table.iter().map(|r| r.iter().sum::<Rational>() / &cofactor_sum).collect();
            let y: Vec<Rational> =
                (0..k).map(|cb| table.iter().map(|r| &r[cb]).sum::<Rational>() / &cofactor_sum).collect();
            let nonneg = x.iter().chain(&y).all(|p| !p.is_negative());
            let row_ok = (0..n).all(|j| {
                let pay: Rational = rows.iter().zip(&x).map(|(&i, p)| p * &a[i][j]).sum();
                pay >= v
            });
            let col_ok = (0..m).all(|i| {
                let pay: Rational = cols.iter().zip(&y).map(|(&j, p)| p * &a[i][j]).sum();
                pay <= v
            });
            (Some(v), nonneg && row_ok && col_ok)
        };
        out.push(KernelCandidate { rows, cols, det, cofactor_sum, value, verified });
    }
    Ok(out)
}

fn bits(mask: u32) -> Vec<usize> {
    (0..32).filter(|i| mask & (1 << i) != 0).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{int, rat};

    fn ints(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect()
    }

    #[test]
    fn matching_pennies_like() {
        let s = solve_exact(&ints(&[&[1, 0], &[0, 1]])).unwrap();
        assert_eq!(s.value, rat(1, 2));
        assert_eq!(s.row_strategy.probs(), &[rat(1, 2), rat(1, 2)]);
        assert_eq!(s.col_strategy.probs(), &[rat(1, 2), rat(1, 2)]);
        assert_eq!(s.kernel, (vec![0, 1], vec![0, 1]));
    }

    #[test]
    fn constant_game() {
        let s = solve_exact(&[vec![rat(-7, 3)]]).unwrap();
        assert_eq!(s.value, rat(-7, 3));
        assert_eq!(s.row_strategy.probs(), &[int(1)]);
    }

    #[test]
    fn mixed_two_by_two() {
        let s = solve_exact(&ints(&[&[3, 1], &[0, 2]])).unwrap();
        assert_eq!(s.value, rat(3, 2));
        assert_eq!(s.row_strategy.probs(), &[rat(1, 2), rat(1, 2)]);
        assert_eq!(s.col_strategy.probs(), &[rat(1, 4), rat(3, 4)]);
    }

    #[test]
    fn signs() {
        let w = vec![vec![rat(1, 2), rat(-1, 2)], vec![rat(-1, 20), rat(1, 20)]];
        assert_eq!(value_sign(&w).unwrap(), Sign::Zero);
        // same W matrix at z = 2/5, λ = 1/10
        let w = vec![vec![rat(3, 5), rat(-2, 5)], vec![rat(-1, 25), rat(3, 50)]];
        assert_eq!(value_sign(&w).unwrap(), Sign::Positive);
        assert_eq!(value_sign(&ints(&[&[-1, -2], &[-3, -1]])).unwrap(), Sign::Negative);
        assert!(value_sign(&[]).is_err());
    }

    #[test]
    fn kernels() {
        let k = enumerate_kernels(&ints(&[&[1, 0], &[0, 1]])).unwrap();
        let full = k.iter().find(|c| c.rows.len() == 2).unwrap();
        assert_eq!((full.det.clone(), full.cofactor_sum.clone()), (int(1), int(2)));
        assert_eq!(full.value, Some(rat(1, 2)));
        assert!(full.verified);

        let k = enumerate_kernels(&[vec![int(4)]]).unwrap();
        assert_eq!(k.len(), 1);
        assert_eq!(k[0].value, Some(int(4)));
        assert!(k[0].verified);

        let k = enumerate_kernels(&ints(&[&[3, 1], &[0, 2]])).unwrap();
        assert_eq!(k.len(), 5);
        let full = k.iter().find(|c| c.rows.len() == 2).unwrap();
        assert_eq!(full.value, Some(rat(3, 2)));
        assert_eq!(full.cofactor_sum, int(4));
        assert!(full.verified);
        assert!(k.iter().filter(|c| c.rows.len() == 1).all(|c| !c.verified));
    }

    #[test]
    fn singular_kernel_has_no_value() {
        let k = enumerate_kernels(&ints(&[&[1, 1], &[1, 1]])).unwrap();
        let full = k.iter().find(|c| c.rows.len() == 2).unwrap();
        assert_eq!(full.cofactor_sum, int(0));
        assert_eq!(full.value, None);
    }
}
