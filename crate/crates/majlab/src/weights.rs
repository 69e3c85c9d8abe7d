//! Skew-symmetric matrices of exact rational pair weights, and the strict
//! majority rounding back to a choice function.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::arith::{Rational, Scalar};
use crate::choice::{pair_count, pairs, ChoiceFunction, MIN_CANDIDATES};
use crate::error::{Error, Result};

/// Exact rational weight per unordered pair, stored once for `(i, j)` with
/// `i < j`; reading the reversed pair negates. Entries stay in `[-1, 1]`.
#[derive(Clone, PartialEq, Eq)]
pub struct WeightMatrix<I: Scalar> {
    n: usize,
    entries: Vec<Rational<I>>,
}

impl<I: Scalar> WeightMatrix<I> {
    pub fn zero(n: usize) -> Result<Self> {
        if n < MIN_CANDIDATES {
            return Err(Error::TooFewCandidates(n));
        }
        Ok(WeightMatrix { n, entries: vec![Rational::zero(); pair_count(n)] })
    }

    /// The signed pair weights of a choice function: `+1`, `-1`, or `0`.
    pub fn of_choice(c: &ChoiceFunction) -> Self {
        let mut m = WeightMatrix {
            n: c.n(),
            entries: vec![Rational::zero(); pair_count(c.n())],
        };
        for (k, (i, j)) in pairs(c.n()).enumerate() {
            m.entries[k] = Rational::from_integer(I::from(c.weight(i, j) as i32));
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn pair_index(&self, x: usize, y: usize) -> usize {
        debug_assert!(x < y && y < self.n);
        x * (2 * self.n - x - 1) / 2 + (y - x - 1)
    }

    fn check_pair(&self, x: usize, y: usize) {
        assert!(x < self.n && y < self.n && x != y, "valid candidate pair");
    }

    pub fn get(&self, x: usize, y: usize) -> Rational<I> {
        self.check_pair(x, y);
        if x < y {
            self.entries[self.pair_index(x, y)].clone()
        } else {
            -self.entries[self.pair_index(y, x)].clone()
        }
    }

    pub fn set(&mut self, x: usize, y: usize, value: Rational<I>) -> Result<()> {
        self.check_pair(x, y);
        if value.abs() > Rational::one() {
            return Err(Error::WeightOutOfRange);
        }
        let (i, j, v) = if x < y { (x, y, value) } else { (y, x, -value) };
        let idx = self.pair_index(i, j);
        self.entries[idx] = v;
        Ok(())
    }

    /// Sum of signed weights in row `x`.
    pub fn row_sum(&self, x: usize) -> Rational<I> {
        (0..self.n)
            .filter(|&y| y != x)
            .fold(Rational::zero(), |acc, y| acc + self.get(x, y))
    }

    /// Round by strict sign: the pair goes to `x` exactly when its weight
    /// toward `x` is positive; zero weight is an abstention.
    pub fn majority(&self) -> ChoiceFunction {
        let mut c = ChoiceFunction::new(self.n).expect("n checked at construction");
        for (k, (i, j)) in pairs(self.n).enumerate() {
            let e = &self.entries[k];
            if e.is_positive() {
                c.set(i, j);
            } else if e.is_negative() {
                c.set(j, i);
            }
        }
        c
    }

    /// `sum of coeff * part` for nonnegative coefficients summing to 1.
    pub fn convex_combination(parts: &[(&WeightMatrix<I>, Rational<I>)]) -> Result<Self> {
        let n = match parts.first() {
            Some((m, _)) => m.n,
            None => return Err(Error::CoefficientSumNotOne),
        };
        let mut total = Rational::zero();
        let mut out = WeightMatrix::zero(n)?;
        for (m, coeff) in parts {
            if m.n != n {
                return Err(Error::CandidateCountMismatch { left: n, right: m.n });
            }
            if coeff.is_negative() {
                return Err(Error::NegativeWeight);
            }
            total = total + coeff.clone();
            for k in 0..out.entries.len() {
                out.entries[k] = out.entries[k].clone() + m.entries[k].clone() * coeff.clone();
            }
        }
        if !total.is_one() {
            return Err(Error::CoefficientSumNotOne);
        }
        Ok(out)
    }
}

impl<I: Scalar> fmt::Debug for WeightMatrix<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeightMatrix(n={};", self.n)?;
        for (k, (i, j)) in pairs(self.n).enumerate() {
            if !self.entries[k].is_zero() {
                write!(f, " ({},{})={}", i, j, self.entries[k])?;
            }
        }
        write!(f, ")")
    }
}
