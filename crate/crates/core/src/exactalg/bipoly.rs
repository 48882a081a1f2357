use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::rational::Rational;
use super::unipoly::UniPoly;
use crate::error::{Error, Result};

/// Sparse polynomial in `(λ, z)`: a map from `(deg_λ, deg_z)` to a nonzero
/// rational coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl BiPoly {
    pub fn constant(c: Rational) -> Self {
        let mut p = BiPoly::default();
        p.add_term(0, 0, c);
        p
    }

    pub fn lambda() -> Self {
        Self::monomial(1, 0, Rational::one())
    }

    pub fn z() -> Self {
        Self::monomial(0, 1, Rational::one())
    }

    pub fn monomial(a: u32, b: u32, c: Rational) -> Self {
        let mut p = BiPoly::default();
        p.add_term(a, b, c);
        p
    }

    pub fn add_term(&mut self, a: u32, b: u32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((a, b)).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(a, b));
        }
    }

    pub fn coeff(&self, a: u32, b: u32) -> Rational {
        self.terms.get(&(a, b)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &Rational)> {
        self.terms.iter().map(|(k, v)| (*k, v))
    }

    pub fn z_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(_, b)| b).max()
    }

    /// Smallest power of λ carrying a nonzero coefficient.
    pub fn lambda_valuation(&self) -> Option<u32> {
        self.terms.keys().map(|&(a, _)| a).min()
    }

    pub fn eval(&self, lambda: &Rational, z: &Rational) -> Rational {
        self.eval_lambda(lambda).eval(z)
    }

    /// Substitute a value for λ, leaving a polynomial in `z`.
    pub fn eval_lambda(&self, lambda: &Rational) -> UniPoly {
        let deg = self.z_degree().map_or(0, |d| d as usize + 1);
        let mut coeffs = vec![Rational::zero(); deg];
        for (&(a, b), c) in &self.terms {
            coeffs[b as usize] += c * num_traits::pow(lambda.clone(), a as usize);
        }
        UniPoly::new(coeffs)
    }

    /// Divide by `λ^v` for the λ-valuation `v`, then set `λ = 0`.
    ///
    /// This is the meaningful `λ → 0` limit of the equation `P(λ, z) = 0`
    /// when `P(0, z)` vanishes identically.
    pub fn lambda_normalize(&self) -> Result<UniPoly> {
        let v = self
            .lambda_valuation()
            .ok_or_else(|| Error::domain("cannot normalize the zero polynomial"))?;
        let deg = self.z_degree().unwrap() as usize + 1;
        let mut coeffs = vec![Rational::zero(); deg];
        for (&(a, b), c) in &self.terms {
            if a == v {
                coeffs[b as usize] = c.clone();
            }
        }
        Ok(UniPoly::new(coeffs))
    }

    pub fn scale(&self, s: &Rational) -> Self {
        let mut out = BiPoly::default();
        for (&(a, b), c) in &self.terms {
            out.add_term(a, b, c * s);
        }
        out
    }
}

impl Zero for BiPoly {
    fn zero() -> Self {
        BiPoly::default()
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for BiPoly {
    fn one() -> Self {
        BiPoly::constant(Rational::one())
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (&(a, b), c) in &rhs.terms {
            out.add_term(a, b, c.clone());
        }
        out
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (&(a, b), c) in &rhs.terms {
            out.add_term(a, b, -c.clone());
        }
        out
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        let mut out = BiPoly::default();
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &rhs.terms {
                out.add_term(a1 + a2, b1 + b2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        self.scale(&-Rational::one())
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for BiPoly {
            type Output = BiPoly;
            fn $m(self, rhs: BiPoly) -> BiPoly {
                (&self).$m(&rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        -&self
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (&(a, b), c)) in self.terms.iter().enumerate() {
            if idx > 0 {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let mag = c.abs();
            let mut parts = Vec::new();
            if !mag.is_one() || (a == 0 && b == 0) {
                parts.push(if mag.is_integer() { mag.to_string() } else { format!("({mag})") });
            }
            match a {
                0 => {}
                1 => parts.push("λ".into()),
                _ => parts.push(format!("λ^{a}")),
            }
            match b {
                0 => {}
                1 => parts.push("z".into()),
                _ => parts.push(format!("z^{b}")),
            }
            write!(f, "{}", parts.join("·"))?;
        }
        Ok(())
    }
}
