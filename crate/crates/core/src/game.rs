//! Absorbing-game data model.
//!
//! A game is three `m×n` rational matrices: non-absorbing stage payoffs `g`,
//! absorption probabilities `q` and absorbing payoffs `w`. The absorbing
//! payoff of a cell with `q = 0` is a placeholder and is never read by any
//! algorithm.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactalg::{int, Rational};

pub type Matrix = Vec<Vec<Rational>>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Empty,
    Ragged { matrix: char, row: usize },
    DimensionMismatch { matrix: char, rows: usize, cols: usize, expected_rows: usize, expected_cols: usize },
    QOutOfRange { row: usize, col: usize, value: Rational },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Empty => write!(f, "game has no rows or no columns"),
            Violation::Ragged { matrix, row } => write!(f, "{matrix} is ragged at row {row}"),
            Violation::DimensionMismatch { matrix, rows, cols, expected_rows, expected_cols } => write!(
                f,
                "dimension mismatch: {matrix} is {rows}x{cols}, expected {expected_rows}x{expected_cols}"
            ),
            Violation::QOutOfRange { row, col, value } => {
                write!(f, "q out of range at ({row},{col}): {value}")
            }
        }
    }
}

fn shape(m: &Matrix, name: char, out: &mut Vec<Violation>) -> Option<(usize, usize)> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    if let Some(r) = m.iter().position(|r| r.len() != cols) {
        out.push(Violation::Ragged { matrix: name, row: r + 1 });
        return None;
    }
    Some((rows, cols))
}

/// Every violated game invariant; empty means the parts form a valid game.
pub fn validate_parts(g: &Matrix, q: &Matrix, w: &Matrix) -> Vec<Violation> {
    let mut out = Vec::new();
    let Some((m, n)) = shape(g, 'g', &mut out) else { return out };
    if m == 0 || n == 0 {
        out.push(Violation::Empty);
        return out;
    }
    for (mat, name) in [(q, 'q'), (w, 'w')] {
        if let Some((r, c)) = shape(mat, name, &mut out) {
            if (r, c) != (m, n) {
                out.push(Violation::DimensionMismatch {
                    matrix: name,
                    rows: r,
                    cols: c,
                    expected_rows: m,
                    expected_cols: n,
                });
            }
        }
    }
    for (i, row) in q.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            if v.is_negative() || v > &Rational::one() {
                out.push(Violation::QOutOfRange { row: i + 1, col: j + 1, value: v.clone() });
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AbsorbingGame {
    g: Matrix,
    q: Matrix,
    w: Matrix,
}

/// One cell of the star notation: `value*` absorbs with payoff `value`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarCell {
    pub value: Rational,
    pub starred: bool,
}

impl StarCell {
    pub fn new(value: Rational, starred: bool) -> Self {
        StarCell { value, starred }
    }
}

impl AbsorbingGame {
    pub fn new(g: Matrix, q: Matrix, w: Matrix) -> Result<Self> {
        let violations = validate_parts(&g, &q, &w);
        if !violations.is_empty() {
            return Err(Error::InvalidGame(violations));
        }
        Ok(AbsorbingGame { g, q, w })
    }

    /// Starred cells absorb (`q = 1`, `g = w = value`); unstarred cells never
    /// absorb and store the placeholder `w = 0`.
    pub fn from_star_matrix(cells: &[Vec<StarCell>]) -> Result<Self> {
        if cells.is_empty() || cells[0].is_empty() {
            return Err(Error::dimension("star matrix is empty"));
        }
        let n = cells[0].len();
        if let Some(r) = cells.iter().position(|r| r.len() != n) {
            return Err(Error::dimension(format!("star matrix is ragged at row {}", r + 1)));
        }
        let map = |f: &dyn Fn(&StarCell) -> Rational| -> Matrix {
            cells.iter().map(|r| r.iter().map(f).collect()).collect()
        };
        let g = map(&|c| c.value.clone());
        let q = map(&|c| if c.starred { Rational::one() } else { Rational::zero() });
        let w = map(&|c| if c.starred { c.value.clone() } else { Rational::zero() });
        AbsorbingGame::new(g, q, w)
    }

    pub fn rows(&self) -> usize {
        self.g.len()
    }

    pub fn cols(&self) -> usize {
        self.g[0].len()
    }

    pub fn g(&self) -> &Matrix {
        &self.g
    }

    pub fn q(&self) -> &Matrix {
        &self.q
    }

    /// Raw absorbing payoffs, placeholders included. Prefer
    /// [`absorbing_payoff`](Self::absorbing_payoff).
    pub fn w(&self) -> &Matrix {
        &self.w
    }

    /// `Some(w_ij)` iff cell `(i, j)` can absorb.
    pub fn absorbing_payoff(&self, i: usize, j: usize) -> Option<&Rational> {
        (!self.q[i][j].is_zero()).then(|| &self.w[i][j])
    }

    pub fn validate(&self) -> std::result::Result<(), Vec<Violation>> {
        let v = validate_parts(&self.g, &self.q, &self.w);
        if v.is_empty() {
            Ok(())
        } else {
            Err(v)
        }
    }

    /// All `q_ij ∈ {0, 1}`.
    pub fn is_deterministic(&self) -> bool {
        self.q.iter().flatten().all(|q| q.is_zero() || q.is_one())
    }

    /// Star-notation view, available when transitions are deterministic,
    /// absorbing cells have `g = w`, and every placeholder is zero.
    pub fn to_star_matrix(&self) -> Option<Vec<Vec<StarCell>>> {
        let mut out = Vec::with_capacity(self.rows());
        for i in 0..self.rows() {
            let mut row = Vec::with_capacity(self.cols());
            for j in 0..self.cols() {
                let (g, q, w) = (&self.g[i][j], &self.q[i][j], &self.w[i][j]);
                if q.is_one() && g == w {
                    row.push(StarCell::new(g.clone(), true));
                } else if q.is_zero() && w.is_zero() {
                    row.push(StarCell::new(g.clone(), false));
                } else {
                    return None;
                }
            }
            out.push(row);
        }
        Some(out)
    }

    /// Smallest and largest payoff that can ever be received: all of `g`
    /// and `w` on absorbing cells.
    pub fn payoff_range(&self) -> (Rational, Rational) {
        let mut vals = self.g.iter().flatten().collect::<Vec<_>>();
        for i in 0..self.rows() {
            for j in 0..self.cols() {
                vals.extend(self.absorbing_payoff(i, j));
            }
        }
        let lo = vals.iter().min().map(|v| (*v).clone()).unwrap();
        let hi = vals.iter().max().map(|v| (*v).clone()).unwrap();
        (lo, hi)
    }

    /// Payoffs mapped by `x ↦ a·x + b` (`a > 0`); `q` is unchanged. Discounted
    /// and limit values transform the same way.
    pub fn affine(&self, a: &Rational, b: &Rational) -> Result<Self> {
        if !a.is_positive() {
            return Err(Error::domain(format!("affine scale must be positive, got {a}")));
        }
        let f = |x: &Rational| a * x + b;
        let g = self.g.iter().map(|r| r.iter().map(f).collect()).collect();
        let w = (0..self.rows())
            .map(|i| {
                (0..self.cols())
                    .map(|j| match self.absorbing_payoff(i, j) {
                        Some(w) => f(w),
                        None => self.w[i][j].clone(),
                    })
                    .collect()
            })
            .collect();
        Ok(AbsorbingGame { g, q: self.q.clone(), w })
    }

    /// The game seen from player 2: transpose everything, negate payoffs.
    pub fn dual(&self) -> Self {
        let t = |m: &Matrix, neg: bool| -> Matrix {
            (0..self.cols())
                .map(|j| {
                    (0..self.rows())
                        .map(|i| if neg { -m[i][j].clone() } else { m[i][j].clone() })
                        .collect()
                })
                .collect()
        };
        AbsorbingGame { g: t(&self.g, true), q: t(&self.q, false), w: t(&self.w, true) }
    }
}

impl fmt::Display for AbsorbingGame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cell = |i: usize, j: usize| -> String {
            let (g, q, w) = (&self.g[i][j], &self.q[i][j], &self.w[i][j]);
            if q.is_zero() {
                g.to_string()
            } else if q.is_one() && g == w {
                format!("{g}*")
            } else {
                format!("{g};({q},{w}*)")
            }
        };
        for i in 0..self.rows() {
            let row: Vec<String> = (0..self.cols()).map(|j| cell(i, j)).collect();
            writeln!(f, "[ {} ]", row.join("  "))?;
        }
        Ok(())
    }
}

/// The example games shipped with the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Builtin {
    /// `[[1*, 0*], [0, 1]]`
    BigMatch,
    /// 3×3 deterministic game whose limit value is the real root of
    /// `z³ − 5z² + 10z − 7`.
    CubicLimit,
    /// 2×2 game with limit value `√k`.
    SqrtK(u32),
}

impl Builtin {
    pub const NAMES: [&'static str; 3] = ["big-match", "theorem2", "sqrt-k"];

    /// Parses `big-match`, `theorem2` and `sqrt-k` (which needs `k`).
    pub fn from_name(name: &str, k: Option<u32>) -> Result<Self> {
        match (name, k) {
            ("big-match", None) => Ok(Builtin::BigMatch),
            ("theorem2", None) => Ok(Builtin::CubicLimit),
            ("sqrt-k", Some(k)) if k >= 1 => Ok(Builtin::SqrtK(k)),
            ("sqrt-k", Some(_)) => Err(Error::domain("sqrt-k needs k >= 1")),
            ("sqrt-k", None) => Err(Error::domain("sqrt-k needs a parameter k")),
            ("big-match" | "theorem2", Some(_)) => {
                Err(Error::domain(format!("{name} takes no parameter k")))
            }
            _ => Err(Error::domain(format!(
                "unknown example `{name}` (expected one of {})",
                Builtin::NAMES.join(", ")
            ))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Builtin::BigMatch => "big-match",
            Builtin::CubicLimit => "theorem2",
            Builtin::SqrtK(_) => "sqrt-k",
        }
    }

    pub fn game(&self) -> AbsorbingGame {
        let star = |rows: &[&[(i64, bool)]]| -> AbsorbingGame {
            let cells: Vec<Vec<StarCell>> = rows
                .iter()
                .map(|r| r.iter().map(|&(v, s)| StarCell::new(int(v), s)).collect())
                .collect();
            AbsorbingGame::from_star_matrix(&cells).expect("builtin games are valid")
        };
        match *self {
            Builtin::BigMatch => star(&[&[(1, true), (0, true)], &[(0, false), (1, false)]]),
            Builtin::CubicLimit => star(&[
                &[(1, true), (1, true), (2, true)],
                &[(1, true), (2, true), (0, false)],
                &[(2, true), (0, false), (1, true)],
            ]),
            Builtin::SqrtK(k) => {
                let k = int(k as i64);
                let one = int(1);
                let g = vec![vec![int(0), one.clone()], vec![one.clone(), k.clone()]];
                let q = vec![vec![Rational::one() / &k, one.clone()], vec![one.clone(), one.clone()]];
                let w = vec![vec![k.clone(), one.clone()], vec![one, k]];
                AbsorbingGame::new(g, q, w).expect("builtin games are valid")
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Player {
    One,
    Two,
}

/// Mixed action played at every stage before absorption.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StationaryStrategy {
    owner: Player,
    probs: Vec<Rational>,
}

impl StationaryStrategy {
    pub fn new(owner: Player, probs: Vec<Rational>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::domain("strategy over no actions"));
        }
        if let Some(p) = probs.iter().find(|p| p.is_negative()) {
            return Err(Error::domain(format!("negative probability {p}")));
        }
        let total: Rational = probs.iter().sum();
        if !total.is_one() {
            return Err(Error::domain(format!("probabilities sum to {total}, not 1")));
        }
        Ok(StationaryStrategy { owner, probs })
    }

    /// Strategy for `owner` in `game`, checked against its action count.
    pub fn for_game(game: &AbsorbingGame, owner: Player, probs: Vec<Rational>) -> Result<Self> {
        let expected = match owner {
            Player::One => game.rows(),
            Player::Two => game.cols(),
        };
        if probs.len() != expected {
            return Err(Error::dimension(format!(
                "strategy has {} entries, player has {expected} actions",
                probs.len()
            )));
        }
        Self::new(owner, probs)
    }

    pub fn pure(owner: Player, len: usize, action: usize) -> Self {
        let probs = (0..len).map(|i| if i == action { Rational::one() } else { Rational::zero() }).collect();
        StationaryStrategy { owner, probs }
    }

    pub fn uniform(owner: Player, len: usize) -> Self {
        StationaryStrategy { owner, probs: vec![Rational::new(1.into(), (len as i64).into()); len] }
    }

    pub fn owner(&self) -> Player {
        self.owner
    }

    pub fn probs(&self) -> &[Rational] {
        &self.probs
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.probs.len()).filter(|&i| !self.probs[i].is_zero()).collect()
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }
}

impl fmt::Display for StationaryStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.probs.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// The real number `p + qcoef·√k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticTarget {
    pub p: Rational,
    pub qcoef: Rational,
    pub k: u32,
}

impl QuadraticTarget {
    pub fn to_f64(&self) -> f64 {
        use crate::exactalg::to_f64;
        to_f64(&self.p) + to_f64(&self.qcoef) * (self.k as f64).sqrt()
    }

    /// `(z − p)² − qcoef²·k`, which vanishes at the target.
    pub fn annihilator(&self) -> crate::exactalg::UniPoly {
        use crate::exactalg::UniPoly;
        let shifted = UniPoly::linear_root(&self.p);
        let c = &self.qcoef * &self.qcoef * int(self.k as i64);
        &(&shifted * &shifted) - &UniPoly::constant(c)
    }
}

/// A 2×2 game whose limit value is `p + qcoef·√k`, built from the `√k`
/// example by an affine payoff map (preceded by [`AbsorbingGame::dual`] when
/// `qcoef < 0`). `qcoef = 0` gives the 1×1 game that absorbs at payoff `p`.
pub fn represent_quadratic(t: &QuadraticTarget) -> Result<AbsorbingGame> {
    if t.k == 0 {
        return Err(Error::domain("k must be at least 1"));
    }
    if t.qcoef.is_zero() {
        let one = vec![vec![Rational::one()]];
        return AbsorbingGame::new(vec![vec![t.p.clone()]], one, vec![vec![t.p.clone()]]);
    }
    let base = Builtin::SqrtK(t.k).game();
    if t.qcoef.is_positive() {
        base.affine(&t.qcoef, &t.p)
    } else {
        base.dual().affine(&-t.qcoef.clone(), &t.p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;

    fn ints(rows: &[&[i64]]) -> Matrix {
        rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect()
    }

    #[test]
    fn big_match_from_stars() {
        let g = Builtin::BigMatch.game();
        assert!(g.validate().is_ok());
        assert_eq!(g.q(), &ints(&[&[1, 1], &[0, 0]]));
        assert_eq!(g.g(), &ints(&[&[1, 0], &[0, 1]]));
        assert_eq!(g.w(), &ints(&[&[1, 0], &[0, 0]]));
        assert!(g.is_deterministic());
    }

    #[test]
    fn unstarred_singleton() {
        let g = AbsorbingGame::from_star_matrix(&[vec![StarCell::new(int(5), false)]]).unwrap();
        assert_eq!(g.q(), &ints(&[&[0]]));
        assert_eq!(g.g(), &ints(&[&[5]]));
        assert!(AbsorbingGame::from_star_matrix(&[]).is_err());
    }

    #[test]
    fn validation_reports_violations() {
        let mut q = ints(&[&[1, 0], &[0, 0]]);
        q[0][0] = rat(3, 2);
        let v = validate_parts(&ints(&[&[0, 0], &[0, 0]]), &q, &ints(&[&[0, 0], &[0, 0]]));
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].to_string(), "q out of range at (1,1): 3/2");

        let v = validate_parts(&ints(&[&[0, 0], &[0, 0]]), &ints(&[&[0, 0, 0], &[0, 0, 0]]), &ints(&[&[0, 0], &[0, 0]]));
        assert!(matches!(v[0], Violation::DimensionMismatch { matrix: 'q', .. }));
        assert!(matches!(AbsorbingGame::new(vec![], vec![], vec![]), Err(Error::InvalidGame(_))));
    }

    #[test]
    fn sqrt_k_builtin() {
        let g = Builtin::SqrtK(4).game();
        assert_eq!(g.q(), &vec![vec![rat(1, 4), int(1)], vec![int(1), int(1)]]);
        assert_eq!(g.w(), &ints(&[&[4, 1], &[1, 4]]));
        assert_eq!(g.g()[0][0], int(0));
        assert!(Builtin::from_name("sqrt-k", None).is_err());
        assert!(Builtin::from_name("sqrt-k", Some(0)).is_err());
        assert!(Builtin::from_name("nope", None).is_err());
        assert_eq!(Builtin::from_name("theorem2", None).unwrap(), Builtin::CubicLimit);
    }

    #[test]
    fn affine_and_dual() {
        let bm = Builtin::BigMatch.game();
        assert_eq!(bm.affine(&int(1), &int(0)).unwrap(), bm);
        assert!(bm.affine(&int(0), &int(1)).is_err());
        let t2 = Builtin::CubicLimit.game();
        let doubled = t2.affine(&int(2), &int(0)).unwrap();
        assert_eq!(doubled.g(), &ints(&[&[2, 2, 4], &[2, 4, 0], &[4, 0, 2]]));
        assert_eq!(bm.dual().dual(), bm);
        assert_eq!(bm.dual().g(), &ints(&[&[-1, 0], &[0, -1]]));
        assert_eq!(bm.dual().q(), &ints(&[&[1, 0], &[1, 0]]));
    }

    #[test]
    fn star_view_round_trips() {
        let t2 = Builtin::CubicLimit.game();
        let stars = t2.to_star_matrix().unwrap();
        assert_eq!(AbsorbingGame::from_star_matrix(&stars).unwrap(), t2);
        assert!(Builtin::SqrtK(2).game().to_star_matrix().is_none());
    }

    #[test]
    fn quadratic_builder_shapes() {
        let t = QuadraticTarget { p: int(0), qcoef: int(1), k: 2 };
        assert_eq!(represent_quadratic(&t).unwrap(), Builtin::SqrtK(2).game());
        let t = QuadraticTarget { p: rat(1, 2), qcoef: int(0), k: 2 };
        assert_eq!(represent_quadratic(&t).unwrap().rows(), 1);
        let t = QuadraticTarget { p: int(0), qcoef: int(-1), k: 3 };
        assert_eq!(represent_quadratic(&t).unwrap(), Builtin::SqrtK(3).game().dual());
        assert!(represent_quadratic(&QuadraticTarget { p: int(0), qcoef: int(1), k: 0 }).is_err());
    }
}
