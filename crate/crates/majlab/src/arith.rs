//! Scalar bounds and small exact-arithmetic helpers.
//!
//! Everything downstream counts votes in an integer type `I` and weighs
//! voters with `Ratio<I>`. `BigInt` is the default (synthesized electorates
//! reach factorial scale); machine-width types work for small instances.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Integer scalar backing tallies, multiplicities, and rational weights.
pub trait Scalar:
    Integer + Signed + Clone + Hash + Debug + Display + From<i32> + Send + Sync + 'static
{
}

impl<T> Scalar for T where
    T: Integer + Signed + Clone + Hash + Debug + Display + From<i32> + Send + Sync + 'static
{
}

/// Exact rational over a [`Scalar`] integer. Always kept reduced with a
/// positive denominator by `num_rational`.
pub type Rational<I> = num_rational::Ratio<I>;

pub fn int<I: Scalar>(v: i32) -> I {
    I::from(v)
}

pub fn rat<I: Scalar>(num: i32, den: i32) -> Rational<I> {
    Rational::new(int(num), int(den))
}

pub fn rat_int<I: Scalar>(v: i32) -> Rational<I> {
    Rational::from_integer(int(v))
}

pub fn factorial<I: Scalar>(n: usize) -> I {
    let mut acc = I::one();
    for k in 2..=n {
        acc = acc * int::<I>(k as i32);
    }
    acc
}

/// Binomial coefficient; zero outside `0 <= k <= n`.
pub fn binomial<I: Scalar>(n: usize, k: isize) -> I {
    if k < 0 || k as usize > n {
        return I::zero();
    }
    let k = (k as usize).min(n - k as usize);
    let mut acc = I::one();
    for j in 0..k {
        acc = acc * int::<I>((n - j) as i32) / int::<I>((j + 1) as i32);
    }
    acc
}

/// Least common multiple of the denominators of `values`; 1 for an empty list.
pub fn denominator_lcm<I: Scalar>(values: impl IntoIterator<Item = Rational<I>>) -> I {
    let mut acc = I::one();
    for v in values {
        acc = acc.lcm(v.denom());
    }
    acc
}

pub fn is_zero<I: Scalar>(v: &Rational<I>) -> bool {
    v.is_zero()
}

pub fn sign<I: Scalar>(v: &Rational<I>) -> i8 {
    if v.is_zero() {
        0
    } else if v.is_positive() {
        1
    } else {
        -1
    }
}
